//! Levi matrix, Levi determinant, the slant function `k` of the Levi kernel,
//! the Freeman invariant and the CR-function test.
//!
//! Everything here goes through the bracket engine; the `*_closed_form`
//! functions transcribe the explicit formulas in terms of derivatives of the
//! graphing function and serve as an independent check on hypersurfaces
//! `M^5 ⊂ ℂ^3`.
//!
//! Index convention: `entry(r, c) = rho0(i [L_c, Lbar_r])`, so row 1 holds
//! `l11 = rho0(i[L1, Lbar1])` and `l12 = rho0(i[L2, Lbar1])`. The slant
//! function is `k = -l12 / l11` and `K = k L1 + L2` spans the kernel.
//!
//! Freeman sign: for `kappa0` vanishing on `K` with `kappa0(L1) = 1`,
//! `[K, Lbar1] = k [L1, Lbar1] - Lbar1(k) L1 + [L2, Lbar1]`, and the two
//! brackets have no `dz` part, so `kappa0([K, Lbar1]) = -Lbar1(k)`.

use num_traits::{One, Zero};

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::geometry::{
    change_frame, constant_matrix, cramer_frame, lie_bracket, matrix_generic_rank, rho0, Frame, FrameSet, OneForm,
    RankWitness, VectorField,
};
use crate::manifold::ValidatedSpec;
use crate::poly::{Dims, VarId};

/// Hermitian `n x n` Levi matrix of a hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviMatrix {
    pub entries: Vec<Vec<RationalExpr>>,
}

impl LeviMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &RationalExpr {
        &self.entries[r][c]
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.size();
        (0..n).all(|r| (0..n).all(|c| self.entries[r][c] == self.entries[c][r].conj()))
    }

    pub fn det(&self) -> RationalExpr {
        crate::linalg::det(&self.entries)
    }

    pub fn generic_rank(&self) -> RankWitness {
        matrix_generic_rank(&self.entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(RationalExpr::is_zero)
    }
}

/// Kernel generator and Freeman data for Levi rank 1 on `M^5 ⊂ ℂ^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelData {
    /// Slant function `k = -l12/l11` in the (possibly adjusted) frame.
    pub k: RationalExpr,
    /// `K = k L1' + L2'`.
    pub kernel_field: VectorField,
    /// `(1,0)`-form with `kappa0(L1') = 1` and `kappa0(K) = 0`; equals
    /// `dz1 - k dz2` when no adjustment was applied.
    pub kappa0: OneForm,
    /// Constant matrix `M` with `L' = M L`; the identity if none was needed.
    pub frame_adjust: Vec<Vec<GaussianRational>>,
    /// The adjusted frame itself.
    pub frame: Frame,
    /// Levi matrix in the adjusted frame.
    pub levi: LeviMatrix,
    /// `kappa0([K, Lbar1'])`.
    pub freeman: RationalExpr,
}

impl KernelData {
    pub fn adjusted(&self) -> bool {
        let id = identity2();
        self.frame_adjust != id
    }

    /// `∂u` coefficient of `L_i'`.
    pub fn a_coeff(&self, i: usize) -> RationalExpr {
        let dims = self.k.dims();
        self.frame.l[i].coeff(dims.slot(VarId::u(1))).clone()
    }
}

fn require_hypersurface(spec: &ValidatedSpec) -> Result<()> {
    if spec.dims().c != 1 {
        return Err(CrError::DimensionMismatch("Levi matrix requires codimension 1".to_string()));
    }
    Ok(())
}

fn require_c3(spec: &ValidatedSpec) -> Result<()> {
    let d = spec.dims();
    if (d.n, d.c) != (2, 1) {
        return Err(CrError::DimensionMismatch("this operation requires (n, c) = (2, 1)".to_string()));
    }
    Ok(())
}

/// `i [X, Y]`.
pub fn i_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let br = lie_bracket(x, y);
    br.scale(&RationalExpr::i(br.dims()))
}

/// Levi matrix of any frame against a given `rho0`.
pub fn levi_matrix_in(frame: &Frame, rho: &OneForm) -> LeviMatrix {
    let n = frame.l.len();
    let entries =
        (0..n).map(|r| (0..n).map(|c| rho.apply(&i_bracket(&frame.l[c], &frame.lbar[r]))).collect()).collect();
    LeviMatrix { entries }
}

pub fn levi_matrix(spec: &ValidatedSpec) -> Result<LeviMatrix> {
    require_hypersurface(spec)?;
    let fs = cramer_frame(spec)?;
    Ok(levi_matrix_in(&fs.as_frame(), &rho0(&fs)[0]))
}

pub fn levi_det(spec: &ValidatedSpec) -> Result<RationalExpr> {
    require_c3(spec)?;
    Ok(levi_matrix(spec)?.det())
}

/// Engine value of `L1(conj(A1))`.
pub fn l1a1_engine(spec: &ValidatedSpec) -> Result<RationalExpr> {
    require_c3(spec)?;
    let fs = cramer_frame(spec)?;
    Ok(fs.l[0].apply(&fs.a_bar(0, 0)))
}

/// Derivatives of a single graphing function in `(z1, z2, zb1, zb2, u)`.
struct PhiJet {
    z: [RationalExpr; 2],
    zb: [RationalExpr; 2],
    u: RationalExpr,
    /// `zzb[a][b] = phi_{z_a zb_b}`
    zzb: [[RationalExpr; 2]; 2],
    zu: [RationalExpr; 2],
    zbu: [RationalExpr; 2],
    uu: RationalExpr,
}

impl PhiJet {
    fn new(phi: &RationalExpr) -> Self {
        let z = [phi.diff(VarId::z(1)), phi.diff(VarId::z(2))];
        let zb = [phi.diff(VarId::zbar(1)), phi.diff(VarId::zbar(2))];
        let u = phi.diff(VarId::u(1));
        let zzb = [
            [z[0].diff(VarId::zbar(1)), z[0].diff(VarId::zbar(2))],
            [z[1].diff(VarId::zbar(1)), z[1].diff(VarId::zbar(2))],
        ];
        let zu = [z[0].diff(VarId::u(1)), z[1].diff(VarId::u(1))];
        let zbu = [zb[0].diff(VarId::u(1)), zb[1].diff(VarId::u(1))];
        let uu = u.diff(VarId::u(1));
        PhiJet { z, zb, u, zzb, zu, zbu, uu }
    }
}

fn prod(fs: &[&RationalExpr]) -> RationalExpr {
    let mut acc = RationalExpr::one(fs[0].dims());
    for f in fs {
        acc = &acc * f;
    }
    acc
}

/// `L1(conj(A1))` from the explicit formula
/// `[-φ_{z1 zb1}(1 + φ_u²) + φ_{zb1} φ_{z1 u}(i + φ_u) + φ_{z1} φ_{zb1 u}(-i + φ_u) - φ_{z1} φ_{zb1} φ_{uu}]
///   / [(i + φ_u)(-i + φ_u)²]`.
pub fn l1a1_closed_form(spec: &ValidatedSpec) -> Result<RationalExpr> {
    require_c3(spec)?;
    let dims = spec.dims();
    let j = PhiJet::new(&spec.phi()[0]);
    let i = RationalExpr::i(dims);
    let one = RationalExpr::one(dims);
    let ip = &i + &j.u;
    let im = &(-&i) + &j.u;
    let num = &(&(&(-&j.zzb[0][0]) * &(&one + &j.u.pow(2))) + &prod(&[&j.zb[0], &j.zu[0], &ip]))
        + &(&prod(&[&j.z[0], &j.zbu[0], &im]) - &prod(&[&j.z[0], &j.zb[0], &j.uu]));
    let den = &ip * &im.pow(2);
    num.checked_div(&den)
}

/// The Levi determinant from the explicit closed formula
/// `4 / ((i + φ_u)^3 (-i + φ_u)^3) · {...}`.
pub fn levi_det_closed_form(spec: &ValidatedSpec) -> Result<RationalExpr> {
    require_c3(spec)?;
    let dims = spec.dims();
    let j = PhiJet::new(&spec.phi()[0]);
    let (z1, z2) = (&j.z[0], &j.z[1]);
    let (zb1, zb2) = (&j.zb[0], &j.zb[1]);
    let u = &j.u;
    let uu = &j.uu;
    let z1zb1 = &j.zzb[0][0];
    let z1zb2 = &j.zzb[0][1];
    let z2zb1 = &j.zzb[1][0];
    let z2zb2 = &j.zzb[1][1];
    let (z1u, z2u) = (&j.zu[0], &j.zu[1]);
    let (zb1u, zb2u) = (&j.zbu[0], &j.zbu[1]);

    // (sign, factors) for the real part of the braces, in display order
    let real_terms: Vec<(i64, Vec<&RationalExpr>)> = vec![
        (1, vec![z2zb2, z1zb1]),
        (-1, vec![z2zb1, z1zb2]),
        (1, vec![z2zb1, zb2, z1u, u]),
        (-1, vec![z2zb1, zb2, z1, uu]),
        (-1, vec![zb1, z2u, z1, zb2u]),
        (1, vec![zb1, z2u, u, z1zb2]),
        (-1, vec![z2, zb1u, zb2, z1u]),
        (-1, vec![z2, zb1, uu, z1zb2]),
        (1, vec![z2, zb1u, u, z1zb2]),
        (-1, vec![z2zb2, zb1, z1u, u]),
        (1, vec![z2zb2, z1, zb1, uu]),
        (-1, vec![z2zb2, z1, zb1u, u]),
        (1, vec![z2zb1, z1, zb2u, u]),
        (1, vec![z2, zb2u, zb1, z1u]),
        (-1, vec![z2, zb2u, z1zb1, u]),
        (1, vec![zb2, z2u, z1, zb1u]),
        (-1, vec![zb2, z2u, u, z1zb1]),
        (1, vec![zb2, z2, uu, z1zb1]),
        (-1, vec![z2zb1, z1zb2, u, u]),
        (1, vec![z2zb2, z1zb1, u, u]),
    ];
    let plus_i: Vec<Vec<&RationalExpr>> =
        vec![vec![z2zb2, z1, zb1u], vec![zb1, z2u, z1zb2], vec![z2zb1, zb2, z1u], vec![z2, zb2u, z1zb1]];
    let minus_i: Vec<Vec<&RationalExpr>> =
        vec![vec![zb2, z2u, z1zb1], vec![z2zb1, z1, zb2u], vec![z2, zb1u, z1zb2], vec![z2zb2, zb1, z1u]];

    let mut braces = RationalExpr::zero(dims);
    for (sign, fs) in &real_terms {
        let t = prod(fs);
        braces = if *sign > 0 { &braces + &t } else { &braces - &t };
    }
    let i = RationalExpr::i(dims);
    let mut ip_sum = RationalExpr::zero(dims);
    for fs in &plus_i {
        ip_sum = &ip_sum + &prod(fs);
    }
    let mut im_sum = RationalExpr::zero(dims);
    for fs in &minus_i {
        im_sum = &im_sum + &prod(fs);
    }
    braces = &braces + &(&i * &(&ip_sum - &im_sum));

    let ip = &i + u;
    let im = &(-&i) + u;
    let den = &ip.pow(3) * &im.pow(3);
    (&RationalExpr::int(dims, 4) * &braces).checked_div(&den)
}

fn identity2() -> Vec<Vec<GaussianRational>> {
    let (o, z) = (GaussianRational::one(), GaussianRational::zero());
    vec![vec![o.clone(), z.clone()], vec![z, o]]
}

/// Ordered candidates tried when `l11` vanishes identically:
/// swap, `L1 -> L1 + L2`, `L1 -> L1 + i L2`.
pub fn frame_adjust_candidates() -> Vec<Vec<Vec<GaussianRational>>> {
    let (o, z, i) = (GaussianRational::one(), GaussianRational::zero(), GaussianRational::i());
    vec![
        vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
        vec![vec![o.clone(), o.clone()], vec![z.clone(), o.clone()]],
        vec![vec![o.clone(), i], vec![z, o]],
    ]
}

/// Levi matrix of the Cramer frame after the constant change `L' = M L`.
pub fn levi_after_change(fs: &FrameSet, m: &[Vec<GaussianRational>]) -> Result<(Frame, LeviMatrix)> {
    let dims = fs.dims();
    let frame = change_frame(&fs.as_frame(), &constant_matrix(dims, m))?;
    let levi = levi_matrix_in(&frame, &rho0(fs)[0]);
    Ok((frame, levi))
}

/// Kernel generator, slant function and Freeman value when the generic Levi
/// rank is 1.
pub fn slant_k(spec: &ValidatedSpec) -> Result<KernelData> {
    require_c3(spec)?;
    let dims = spec.dims();
    let fs = cramer_frame(spec)?;
    let base = levi_matrix_in(&fs.as_frame(), &rho0(&fs)[0]);
    let rank = base.generic_rank().rank;
    if rank != 1 {
        return Err(CrError::RankMismatch { rank });
    }
    let mut chosen = None;
    if !base.entry(0, 0).is_zero() {
        chosen = Some((identity2(), fs.as_frame(), base));
    } else {
        for m in frame_adjust_candidates() {
            let (frame, levi) = levi_after_change(&fs, &m)?;
            if !levi.entry(0, 0).is_zero() {
                chosen = Some((m, frame, levi));
                break;
            }
        }
    }
    let (m, frame, levi) = chosen.ok_or(CrError::NormalizationFailure)?;
    let k = -(levi.entry(0, 1).checked_div(levi.entry(0, 0))?);
    let kernel_field = frame.l[0].scale(&k).add(&frame.l[1]);

    // kappa0 = alpha dz1 + beta dz2 with M (alpha, beta)^T = (1, -k)^T
    let mm = constant_matrix(dims, &m);
    let coef = crate::linalg::solve_cramer(&mm, &[RationalExpr::one(dims), -&k])?;
    let mut kc = vec![RationalExpr::zero(dims); dims.nvars()];
    kc[dims.slot(VarId::z(1))] = coef[0].clone();
    kc[dims.slot(VarId::z(2))] = coef[1].clone();
    let kappa0 = OneForm::new(kc);

    let freeman = kappa0.apply(&lie_bracket(&kernel_field, &frame.lbar[0]));
    Ok(KernelData { k, kernel_field, kappa0, frame_adjust: m, frame, levi, freeman })
}

/// `kappa0([K, Lbar1])`, through the bracket engine.
pub fn freeman(spec: &ValidatedSpec) -> Result<RationalExpr> {
    Ok(slant_k(spec)?.freeman)
}

/// The three quotients for `k` in the Cramer frame:
/// `-(L2(Ā1) - L̄1(A2))/(L1(Ā1) - L̄1(A1))`, `-L2(Ā1)/L1(Ā1)`, `-L̄1(A2)/L̄1(A1)`.
pub fn k_quotients(spec: &ValidatedSpec) -> Result<[RationalExpr; 3]> {
    require_c3(spec)?;
    let fs = cramer_frame(spec)?;
    let a1 = &fs.a[0][0];
    let a2 = &fs.a[1][0];
    let a1b = fs.a_bar(0, 0);
    let l1_a1b = fs.l[0].apply(&a1b);
    let l2_a1b = fs.l[1].apply(&a1b);
    let lb1_a1 = fs.lbar[0].apply(a1);
    let lb1_a2 = fs.lbar[0].apply(a2);
    let main = -((&l2_a1b - &lb1_a2).checked_div(&(&l1_a1b - &lb1_a1))?);
    let second = -(l2_a1b.checked_div(&l1_a1b)?);
    let third = -(lb1_a2.checked_div(&lb1_a1)?);
    Ok([main, second, third])
}

/// A function is CR when every `Lbar_i` kills it.
pub fn is_cr_function(f: &RationalExpr, spec: &ValidatedSpec) -> Result<bool> {
    let fs = cramer_frame(spec)?;
    Ok(is_cr_in_frame(f, &fs.as_frame()))
}

pub fn is_cr_in_frame(f: &RationalExpr, frame: &Frame) -> bool {
    frame.lbar.iter().all(|lb| lb.apply(f).is_zero())
}

/// Entry-wise `conj(M) · Λ · Mᵀ` for the row convention of [`LeviMatrix`].
pub fn transform_levi(levi: &LeviMatrix, m: &[Vec<GaussianRational>], dims: Dims) -> LeviMatrix {
    let n = levi.size();
    let mut out = vec![vec![RationalExpr::zero(dims); n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mut acc = RationalExpr::zero(dims);
            for a in 0..n {
                for b in 0..n {
                    let coef = &m[r][a].conj() * &m[c][b];
                    if coef.is_zero() {
                        continue;
                    }
                    acc = &acc + &levi.entries[a][b].scale(&coef);
                }
            }
            *cell = acc;
        }
    }
    LeviMatrix { entries: out }
}
