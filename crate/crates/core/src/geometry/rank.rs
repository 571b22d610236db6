//! Generic and pointwise rank of a family of vector fields, with witness
//! minors, and decomposition of a field in a frame.
//!
//! The coefficient matrix has one row per direction and one column per
//! field. For the generic rank each column is multiplied by the lcm of its
//! denominators (this does not change which minors vanish) and the resulting
//! polynomial matrix is reduced by fraction-free elimination with full
//! pivoting. Every intermediate entry is itself a minor, so the last pivot is
//! the witness minor.

#![allow(clippy::needless_range_loop)]

use num_traits::Zero;

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::gcd::gcd;
use crate::geometry::fields::VectorField;
use crate::linalg;
use crate::manifold::PointAssignment;
use crate::poly::{Dims, MultiPoly};

/// A nonvanishing `rank x rank` minor: direction indices (rows), field
/// indices (columns), and its value as a rational expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankWitness {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: RationalExpr,
}

fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

fn inversions(v: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                n += 1;
            }
        }
    }
    n
}

/// Generic rank over the function field with a witness minor.
pub fn generic_rank(fields: &[VectorField]) -> RankWitness {
    if fields.is_empty() {
        return RankWitness { rank: 0, rows: vec![], cols: vec![], minor: RationalExpr::zero(Dims::new(0, 0)) };
    }
    let nrows = fields[0].dims().nvars();
    let m: Vec<Vec<RationalExpr>> = (0..nrows).map(|r| fields.iter().map(|f| f.coeff(r).clone()).collect()).collect();
    matrix_generic_rank(&m)
}

/// Generic rank of a row-major matrix of rational expressions.
pub fn matrix_generic_rank(m: &[Vec<RationalExpr>]) -> RankWitness {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    if ncols == 0 {
        return RankWitness { rank: 0, rows: vec![], cols: vec![], minor: RationalExpr::zero(Dims::new(0, 0)) };
    }
    let dims = m[0][0].dims();
    let scales: Vec<MultiPoly> =
        (0..ncols).map(|c| (0..nrows).fold(MultiPoly::one(dims), |acc, r| lcm(&acc, m[r][c].den()))).collect();
    let mut a: Vec<Vec<MultiPoly>> = (0..nrows)
        .map(|r| {
            (0..ncols)
                .map(|c| {
                    let e = &m[r][c];
                    if e.is_zero() {
                        MultiPoly::zero(dims)
                    } else {
                        e.num() * &scales[c].div_exact(e.den()).expect("lcm is a multiple")
                    }
                })
                .collect()
        })
        .collect();
    let mut row_perm: Vec<usize> = (0..nrows).collect();
    let mut col_perm: Vec<usize> = (0..ncols).collect();
    let mut prev = MultiPoly::one(dims);
    let mut k = 0;
    while k < nrows.min(ncols) {
        // simplest nonzero entry, first in column-major order on ties
        let mut best: Option<(usize, usize, usize)> = None;
        for c in k..ncols {
            for r in k..nrows {
                let w = a[r][c].num_terms();
                if w > 0 && best.is_none_or(|(_, _, bw)| w < bw) {
                    best = Some((r, c, w));
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        a.swap(k, pr);
        row_perm.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }
        col_perm.swap(k, pc);
        let piv = a[k][k].clone();
        for r in k + 1..nrows {
            for c in k + 1..ncols {
                let t = &(&piv * &a[r][c]) - &(&a[r][k] * &a[k][c]);
                a[r][c] = if prev.is_one() { t } else { t.div_exact(&prev).expect("Bareiss division is exact") };
            }
            a[r][k] = MultiPoly::zero(dims);
        }
        prev = piv;
        k += 1;
    }
    if k == 0 {
        return RankWitness { rank: 0, rows: vec![], cols: vec![], minor: RationalExpr::zero(dims) };
    }
    let rows_perm = row_perm[..k].to_vec();
    let cols_perm = col_perm[..k].to_vec();
    let negative = (inversions(&rows_perm) + inversions(&cols_perm)) % 2 == 1;
    let scale = cols_perm.iter().fold(MultiPoly::one(dims), |acc, &c| &acc * &scales[c]);
    let mut minor = RationalExpr::from_parts(prev, scale).expect("nonzero scale");
    if negative {
        minor = -minor;
    }
    let mut rows = rows_perm;
    let mut cols = cols_perm;
    rows.sort_unstable();
    cols.sort_unstable();
    RankWitness { rank: k, rows, cols, minor }
}

/// Recomputes the witness minor directly from the fields.
pub fn witness_minor(fields: &[VectorField], rows: &[usize], cols: &[usize]) -> RationalExpr {
    let m: Vec<Vec<RationalExpr>> =
        rows.iter().map(|&r| cols.iter().map(|&c| fields[c].coeff(r).clone()).collect()).collect();
    linalg::det(&m)
}

/// Recomputes a witness minor of a row-major matrix.
pub fn matrix_minor(m: &[Vec<RationalExpr>], rows: &[usize], cols: &[usize]) -> RationalExpr {
    let sub: Vec<Vec<RationalExpr>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
    linalg::det(&sub)
}

/// Coefficient matrix (rows = directions) evaluated at a point.
pub fn eval_matrix(fields: &[VectorField], p: &PointAssignment) -> Result<Vec<Vec<GaussianRational>>> {
    let dims = fields[0].dims();
    let values = p.slot_values(dims)?;
    (0..dims.nvars())
        .map(|r| fields.iter().map(|f| f.coeff(r).eval_slots(&values)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Exact rank of the coefficient matrix at `p`, with the pivot rows/columns.
pub fn rank_at_point(fields: &[VectorField], p: &PointAssignment) -> Result<RankWitness> {
    if fields.is_empty() {
        return Ok(RankWitness { rank: 0, rows: vec![], cols: vec![], minor: RationalExpr::zero(Dims::new(0, 0)) });
    }
    let dims = fields[0].dims();
    let m = eval_matrix(fields, p)?;
    let (rank, rows, mut cols) = linalg::rank_numeric(&m);
    cols.sort_unstable();
    let sub: Vec<Vec<GaussianRational>> =
        rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
    let value = if rank == 0 { GaussianRational::zero() } else { linalg::det_numeric(&sub) };
    Ok(RankWitness { rank, rows, cols, minor: RationalExpr::constant(dims, value) })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficients `λ` with `x = Σ λ_m frame_m`, solved on the
/// lexicographically first set of directions giving an invertible system,
/// then checked on all directions.
pub fn decompose_in_frame(x: &VectorField, frame: &[VectorField]) -> Result<Vec<RationalExpr>> {
    let dims = x.dims();
    let k = frame.len();
    if k == 0 || k > dims.nvars() {
        return Err(CrError::DependentFrame);
    }
    for rows in subsets(dims.nvars(), k) {
        let m: Vec<Vec<RationalExpr>> =
            rows.iter().map(|&r| frame.iter().map(|f| f.coeff(r).clone()).collect()).collect();
        if linalg::det(&m).is_zero() {
            continue;
        }
        let rhs: Vec<RationalExpr> = rows.iter().map(|&r| x.coeff(r).clone()).collect();
        let lambda = linalg::solve_cramer(&m, &rhs)?;
        for r in 0..dims.nvars() {
            let mut acc = x.coeff(r).clone();
            for (l, f) in lambda.iter().zip(frame) {
                acc = &acc - &(l * f.coeff(r));
            }
            if !acc.is_zero() {
                return Err(CrError::NotInSpan);
            }
        }
        return Ok(lambda);
    }
    Err(CrError::DependentFrame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use num_traits::One;

    fn e(s: &str) -> RationalExpr {
        parse_expr(s, 2, 1).unwrap()
    }

    fn vf(c: &[&str]) -> VectorField {
        VectorField::new(c.iter().map(|s| e(s)).collect())
    }

    #[test]
    fn duplicated_field() {
        let x = vf(&["1", "0", "z1", "0", "1/(1 - u1)"]);
        let w = generic_rank(&[x.clone(), x.clone()]);
        assert_eq!(w.rank, 1);
        assert_eq!(generic_rank(&[x]).rank, 1);
    }

    #[test]
    fn witness_matches_direct_minor() {
        let fields = vec![
            vf(&["1", "0", "0", "0", "I*zb1"]),
            vf(&["0", "1", "0", "0", "I*zb2/(1 + u1^2)"]),
            vf(&["0", "0", "z1", "zb2", "1"]),
            vf(&["z2", "0", "z1*z2", "zb2*z2", "z2 + I*z2*zb1"]),
        ];
        let w = generic_rank(&fields);
        assert_eq!(w.rank, 3);
        assert!(!w.minor.is_zero());
        assert_eq!(w.minor, witness_minor(&fields, &w.rows, &w.cols));
    }

    #[test]
    fn rank_at_point_drops() {
        let fields = vec![vf(&["1", "0", "0", "0", "0"]), vf(&["0", "z2*zb2", "0", "0", "0"])];
        assert_eq!(generic_rank(&fields).rank, 2);
        let origin = PointAssignment::origin(Dims::new(2, 1));
        assert_eq!(rank_at_point(&fields, &origin).unwrap().rank, 1);
        let p = PointAssignment { z: vec![GaussianRational::zero(), GaussianRational::one()], u: vec![Zero::zero()] };
        assert_eq!(rank_at_point(&fields, &p).unwrap().rank, 2);
    }

    #[test]
    fn pole_propagates() {
        let fields = vec![vf(&["1/(1 - z2*zb2)", "0", "0", "0", "0"])];
        let p = PointAssignment { z: vec![GaussianRational::zero(), GaussianRational::one()], u: vec![Zero::zero()] };
        assert!(matches!(rank_at_point(&fields, &p), Err(CrError::Pole { .. })));
    }

    #[test]
    fn decomposition() {
        let l1 = vf(&["1", "0", "0", "0", "I*zb1"]);
        let l2 = vf(&["0", "1", "0", "0", "I*zb2"]);
        assert_eq!(decompose_in_frame(&l1, &[l1.clone(), l2.clone()]).unwrap(), vec![e("1"), e("0")]);
        let du = VectorField::coordinate(Dims::new(2, 1), 4);
        assert_eq!(decompose_in_frame(&du, std::slice::from_ref(&l1)), Err(CrError::NotInSpan));
        assert_eq!(decompose_in_frame(&l1, &[l1.clone(), l1.clone()]), Err(CrError::DependentFrame));
    }
}
