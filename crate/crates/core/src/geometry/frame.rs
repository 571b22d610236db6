//! The intrinsic `T^{1,0}M` frame from Cramer's rule, the real 1-forms
//! `rho0_j`, and constant/functional changes of frame.

use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::gcd::register_factor_hint;
use crate::geometry::fields::{OneForm, VectorField};
use crate::linalg::{self, ExprMatrix};
use crate::manifold::{frame_matrix, ValidatedSpec};
use crate::poly::{Dims, VarId};

/// `L_i = ∂z_i + Σ_l A_i^l ∂u_l` and conjugates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSet {
    pub l: Vec<VectorField>,
    pub lbar: Vec<VectorField>,
    /// `a[i][l]` is `A_{i+1}^{l+1}`.
    pub a: Vec<Vec<RationalExpr>>,
}

/// Any `T^{1,0}M` frame together with its conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub l: Vec<VectorField>,
    pub lbar: Vec<VectorField>,
}

impl FrameSet {
    pub fn dims(&self) -> Dims {
        self.l[0].dims()
    }

    pub fn as_frame(&self) -> Frame {
        Frame { l: self.l.clone(), lbar: self.lbar.clone() }
    }

    /// Conjugate coefficient `conj(A_i^l)`.
    pub fn a_bar(&self, i: usize, l: usize) -> RationalExpr {
        self.a[i][l].conj()
    }
}

/// Solves `Σ_l (i δ_jl + φ_{j,u_l}) A_i^l = -φ_{j,z_i}` for every `i`.
pub fn cramer_frame(spec: &ValidatedSpec) -> Result<FrameSet> {
    let dims = spec.dims();
    let m = frame_matrix(dims, spec.phi());
    let det = linalg::det(&m);
    if det.is_zero() {
        return Err(CrError::FrameSingular("vanishes identically".to_string()));
    }
    for p in spec.phi().iter().map(RationalExpr::den).chain([det.num(), det.den()]) {
        register_factor_hint(p);
        register_factor_hint(&p.conj());
    }
    let mut a = Vec::with_capacity(dims.n);
    let mut l = Vec::with_capacity(dims.n);
    for i in 1..=dims.n {
        let rhs: Vec<RationalExpr> = spec.phi().iter().map(|p| -p.diff(VarId::z(i))).collect();
        let ai = if dims.c == 1 { vec![rhs[0].checked_div(&m[0][0])?] } else { linalg::solve_cramer(&m, &rhs)? };
        let mut coeffs = vec![RationalExpr::zero(dims); dims.nvars()];
        coeffs[dims.slot(VarId::z(i))] = RationalExpr::one(dims);
        for (k, al) in ai.iter().enumerate() {
            coeffs[dims.slot(VarId::u(k + 1))] = al.clone();
        }
        for al in &ai {
            register_factor_hint(al.den());
            register_factor_hint(&al.den().conj());
        }
        l.push(VectorField::new(coeffs));
        a.push(ai);
    }
    let lbar = l.iter().map(VectorField::conj).collect();
    Ok(FrameSet { l, lbar, a })
}

/// `rho0_j = du_j - Σ_i A_i^j dz_i - Σ_i conj(A_i^j) dzb_i`.
pub fn rho0(frame: &FrameSet) -> Vec<OneForm> {
    let dims = frame.dims();
    (0..dims.c)
        .map(|j| {
            let mut coeffs = vec![RationalExpr::zero(dims); dims.nvars()];
            coeffs[dims.slot(VarId::u(j + 1))] = RationalExpr::one(dims);
            for i in 0..dims.n {
                coeffs[dims.slot(VarId::z(i + 1))] = -&frame.a[i][j];
                coeffs[dims.slot(VarId::zbar(i + 1))] = -frame.a_bar(i, j);
            }
            OneForm::new(coeffs)
        })
        .collect()
}

/// `L#_i = Σ_j M_ij L_j`, with conjugates.
pub fn change_frame(frame: &Frame, m: &[Vec<RationalExpr>]) -> Result<Frame> {
    let n = frame.l.len();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(CrError::DimensionMismatch(format!("change-of-frame matrix must be {n}x{n}")));
    }
    if linalg::det(m).is_zero() {
        return Err(CrError::SingularMatrix);
    }
    let dims = frame.l[0].dims();
    let l: Vec<VectorField> = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(&frame.l)
                .filter(|(c, _)| !c.is_zero())
                .fold(VectorField::zero(dims), |acc, (c, f)| acc.add(&f.scale(c)))
        })
        .collect();
    let lbar = l.iter().map(VectorField::conj).collect();
    Ok(Frame { l, lbar })
}

/// Constant matrix helper for `change_frame`.
pub fn constant_matrix(dims: Dims, entries: &[Vec<crate::arith::GaussianRational>]) -> ExprMatrix {
    entries.iter().map(|r| r.iter().map(|c| RationalExpr::constant(dims, c.clone())).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;
    use crate::geometry::fields::{lie_bracket, one_form_apply};
    use crate::manifold::{validate_manifold, ManifoldSpec};
    use crate::parser::parse_expr;

    fn spec(n: usize, c: usize, phi: &[&str]) -> ValidatedSpec {
        validate_manifold(ManifoldSpec::parse(n, c, phi).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_frame() {
        let f = cramer_frame(&spec(1, 1, &["z*zb"])).unwrap();
        assert_eq!(f.a[0][0], parse_expr("I*zb1", 1, 1).unwrap());
        assert_eq!(f.l[0].to_string(), "d/dz1 + (I*zb1) d/du1");
        assert_eq!(f.lbar[0].to_string(), "d/dzb1 + (-I*z1) d/du1");
        let r = rho0(&f);
        assert_eq!(r[0].to_string(), "(-I*zb1) dz1 + (I*z1) dzb1 + du1");
    }

    #[test]
    fn codimension_two_u_independent() {
        // A^j = i φ_{j,z} when φ does not depend on u
        let f = cramer_frame(&spec(1, 2, &["z*zb", "z*zb*(z + zb)"])).unwrap();
        assert_eq!(f.a[0][0], parse_expr("I*zb1", 1, 2).unwrap());
        assert_eq!(f.a[0][1], parse_expr("I*(2*z1*zb1 + zb1^2)", 1, 2).unwrap());
    }

    #[test]
    fn rigid_frame() {
        let phi = "z1*zb1 + z2^2*zb2^2 + z1*zb2 + zb1*z2";
        let s = spec(2, 1, &[phi]);
        let f = cramer_frame(&s).unwrap();
        for i in 0..2 {
            let expect = &RationalExpr::i(s.dims()) * &s.phi()[0].diff(VarId::z(i + 1));
            assert_eq!(f.a[i][0], expect);
        }
    }

    #[test]
    fn u_dependent_single_equation_matches_quotient() {
        let s = spec(2, 1, &["z1*zb1*u1 + z2*zb2"]);
        let f = cramer_frame(&s).unwrap();
        let phi = &s.phi()[0];
        let expect =
            (-phi.diff(VarId::z(1))).checked_div(&(&RationalExpr::i(s.dims()) + &phi.diff(VarId::u(1)))).unwrap();
        assert_eq!(f.a[0][0], expect);
    }

    #[test]
    fn rho0_annihilates_frame_and_is_real() {
        let s = spec(1, 3, &["z*zb", "z*zb*(z + zb) + u1*z*zb", "u2*u1*z*zb"]);
        let f = cramer_frame(&s).unwrap();
        for r in rho0(&f) {
            assert_eq!(r.conj(), r);
            for x in f.l.iter().chain(&f.lbar) {
                assert!(one_form_apply(&r, x).is_zero());
            }
        }
    }

    #[test]
    fn frame_commutes() {
        let s = spec(2, 1, &["z1*zb1*u1 + z2*zb2 + z1^2*zb2 + zb1^2*z2"]);
        let f = cramer_frame(&s).unwrap();
        assert!(lie_bracket(&f.l[0], &f.l[1]).is_zero());
    }

    #[test]
    fn change_frame_identity_and_swap() {
        let s = spec(2, 1, &["z1*zb1 + z2*zb2"]);
        let f = cramer_frame(&s).unwrap().as_frame();
        let d = s.dims();
        let one = GaussianRational::from_int(1);
        let zero = GaussianRational::from_int(0);
        let id = constant_matrix(d, &[vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]);
        assert_eq!(change_frame(&f, &id).unwrap(), f);
        let sw = constant_matrix(d, &[vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]);
        let g = change_frame(&f, &sw).unwrap();
        assert_eq!(g.l, vec![f.l[1].clone(), f.l[0].clone()]);
        let sing = constant_matrix(d, &[vec![one.clone(), one.clone()], vec![one.clone(), one]]);
        assert_eq!(change_frame(&f, &sing), Err(CrError::SingularMatrix));
    }
}
