use std::fmt;

use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::poly::Dims;

/// A complex vector field on M in intrinsic coordinates. Coefficient `d` is
/// the component along the derivation of variable slot `d`
/// (`∂z_1..∂z_n, ∂zb_1..∂zb_n, ∂u_1..∂u_c`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    coeffs: Vec<RationalExpr>,
}

impl VectorField {
    pub fn new(coeffs: Vec<RationalExpr>) -> Self {
        assert!(!coeffs.is_empty());
        let d = coeffs[0].dims();
        assert_eq!(coeffs.len(), d.nvars(), "one coefficient per direction");
        assert!(coeffs.iter().all(|c| c.dims() == d));
        VectorField { coeffs }
    }

    pub fn zero(dims: Dims) -> Self {
        VectorField { coeffs: vec![RationalExpr::zero(dims); dims.nvars()] }
    }

    /// The coordinate field `∂/∂(slot)`.
    pub fn coordinate(dims: Dims, slot: usize) -> Self {
        let mut v = Self::zero(dims);
        v.coeffs[slot] = RationalExpr::one(dims);
        v
    }

    pub fn dims(&self) -> Dims {
        self.coeffs[0].dims()
    }

    pub fn coeffs(&self) -> &[RationalExpr] {
        &self.coeffs
    }

    pub fn coeff(&self, slot: usize) -> &RationalExpr {
        &self.coeffs[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Derivation `X(f) = Σ X_d ∂f/∂x_d`.
    pub fn apply(&self, f: &RationalExpr) -> RationalExpr {
        let mut acc = RationalExpr::zero(self.dims());
        for (slot, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let df = f.diff_slot(slot);
            if df.is_zero() {
                continue;
            }
            acc = &acc + &(c * &df);
        }
        acc
    }

    pub fn scale(&self, f: &RationalExpr) -> Self {
        VectorField { coeffs: self.coeffs.iter().map(|c| c * f).collect() }
    }

    pub fn add(&self, other: &VectorField) -> Self {
        VectorField { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &VectorField) -> Self {
        VectorField { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// Complex conjugate field: swaps the `∂z_k` and `∂zb_k` components and
    /// conjugates every coefficient.
    pub fn conj(&self) -> Self {
        let d = self.dims();
        VectorField { coeffs: (0..d.nvars()).map(|s| self.coeffs[d.conj_slot(s)].conj()).collect() }
    }

    pub(crate) fn render(&self, name_of: impl Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| if c.is_one() { name_of(s) } else { format!("({c}) {}", name_of(s)) })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn check_dims(a: Dims, b: Dims) -> Result<()> {
    crate::poly::check_same_dims(a, b)
}

/// Lie bracket `[X, Y]_d = X(Y_d) - Y(X_d)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    assert_eq!(x.dims(), y.dims(), "bracket of fields on different spaces");
    let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(xd, yd)| &x.apply(yd) - &y.apply(xd)).collect();
    VectorField { coeffs }
}

pub fn try_lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    check_dims(x.dims(), y.dims())?;
    Ok(lie_bracket(x, y))
}

pub fn vf_conj(x: &VectorField) -> VectorField {
    x.conj()
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dims();
        write!(f, "{}", self.render(|s| format!("d/d{}", d.var(s))))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A complex 1-form; coefficient `d` multiplies the differential of slot `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OneForm {
    coeffs: Vec<RationalExpr>,
}

impl OneForm {
    pub fn new(coeffs: Vec<RationalExpr>) -> Self {
        assert!(!coeffs.is_empty());
        assert_eq!(coeffs.len(), coeffs[0].dims().nvars());
        OneForm { coeffs }
    }

    pub fn zero(dims: Dims) -> Self {
        OneForm { coeffs: vec![RationalExpr::zero(dims); dims.nvars()] }
    }

    /// The coordinate differential `d(slot)`.
    pub fn coordinate(dims: Dims, slot: usize) -> Self {
        let mut w = Self::zero(dims);
        w.coeffs[slot] = RationalExpr::one(dims);
        w
    }

    pub fn dims(&self) -> Dims {
        self.coeffs[0].dims()
    }

    pub fn coeffs(&self) -> &[RationalExpr] {
        &self.coeffs
    }

    pub fn coeff(&self, slot: usize) -> &RationalExpr {
        &self.coeffs[slot]
    }

    pub fn conj(&self) -> Self {
        let d = self.dims();
        OneForm { coeffs: (0..d.nvars()).map(|s| self.coeffs[d.conj_slot(s)].conj()).collect() }
    }

    pub fn apply(&self, x: &VectorField) -> RationalExpr {
        one_form_apply(self, x)
    }
}

/// Pairing `ω(X) = Σ ω_d X_d`.
pub fn one_form_apply(w: &OneForm, x: &VectorField) -> RationalExpr {
    assert_eq!(w.dims(), x.dims());
    let mut acc = RationalExpr::zero(w.dims());
    for (a, b) in w.coeffs.iter().zip(x.coeffs()) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = &acc + &(a * b);
    }
    acc
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dims();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| if c.is_one() { format!("d{}", d.var(s)) } else { format!("({c}) d{}", d.var(s)) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error-returning variant of [`one_form_apply`] for mixed-dimension input.
pub fn try_one_form_apply(w: &OneForm, x: &VectorField) -> Result<RationalExpr> {
    if w.dims() != x.dims() {
        return Err(CrError::DimensionMismatch(format!("{:?} form on {:?} field", w.dims(), x.dims())));
    }
    Ok(one_form_apply(w, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use crate::poly::VarId;

    fn e(s: &str) -> RationalExpr {
        parse_expr(s, 1, 1).unwrap()
    }

    fn heis_l() -> VectorField {
        VectorField::new(vec![e("1"), e("0"), e("I*zb1")])
    }

    #[test]
    fn constant_fields_commute() {
        let d = Dims::new(1, 1);
        let dz = VectorField::coordinate(d, 0);
        let dzb = VectorField::coordinate(d, 1);
        assert!(lie_bracket(&dz, &dzb).is_zero());
    }

    #[test]
    fn heisenberg_bracket() {
        let l = heis_l();
        let lb = l.conj();
        assert_eq!(lb, VectorField::new(vec![e("0"), e("1"), e("-I*z1")]));
        let br = lie_bracket(&l, &lb);
        assert_eq!(br, VectorField::new(vec![e("0"), e("0"), e("-2*I")]));
        let t = br.scale(&e("I"));
        assert_eq!(t.conj(), t);
        let du = OneForm::coordinate(Dims::new(1, 1), 2);
        assert_eq!(one_form_apply(&du, &t), e("2"));
    }

    #[test]
    fn pairing_table() {
        let d = Dims::new(2, 1);
        for a in 0..5 {
            for b in 0..5 {
                let v = one_form_apply(&OneForm::coordinate(d, a), &VectorField::coordinate(d, b));
                assert_eq!(v.is_one(), a == b);
                assert_eq!(v.is_zero(), a != b);
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(heis_l().to_string(), "d/dz1 + (I*zb1) d/du1");
        let _ = VarId::z(1);
    }

    #[test]
    fn mismatched_dimensions() {
        let a = VectorField::zero(Dims::new(1, 1));
        let b = VectorField::zero(Dims::new(1, 2));
        assert!(try_lie_bracket(&a, &b).is_err());
        assert!(try_one_form_apply(&OneForm::zero(Dims::new(2, 1)), &a).is_err());
    }
}
