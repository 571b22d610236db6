//! Small dense linear algebra over the function field and over ℚ(i).

#![allow(clippy::needless_range_loop)]

use num_traits::Zero;

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};
use crate::expr::RationalExpr;

pub type ExprMatrix = Vec<Vec<RationalExpr>>;

/// Determinant of a square matrix of rational expressions.
pub fn det(m: &[Vec<RationalExpr>]) -> RationalExpr {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    match n {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
            let t0 = &m[0][0] * &minor(1, 2, 2, 1);
            let t1 = &m[0][1] * &minor(0, 2, 2, 0);
            let t2 = &m[0][2] * &minor(0, 1, 1, 0);
            &(&t0 - &t1) + &t2
        }
        _ => det_elimination(m),
    }
}

fn det_elimination(m: &[Vec<RationalExpr>]) -> RationalExpr {
    let dims = m[0][0].dims();
    let n = m.len();
    let mut a: ExprMatrix = m.to_vec();
    let mut acc = RationalExpr::one(dims);
    for k in 0..n {
        let pivot = (k..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].weight());
        let Some(p) = pivot else {
            return RationalExpr::zero(dims);
        };
        if p != k {
            a.swap(p, k);
            acc = -acc;
        }
        acc = &acc * &a[k][k];
        let inv = a[k][k].inv().expect("nonzero pivot");
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] * &inv;
            for c in k + 1..n {
                let t = &f * &a[k][c];
                a[r][c] = &a[r][c] - &t;
            }
            a[r][k] = RationalExpr::zero(dims);
        }
    }
    acc
}

/// Solves `m x = rhs` by Cramer's rule; `m` must be square with nonzero
/// determinant.
pub fn solve_cramer(m: &[Vec<RationalExpr>], rhs: &[RationalExpr]) -> Result<Vec<RationalExpr>> {
    let n = m.len();
    let d = det(m);
    if d.is_zero() {
        return Err(CrError::SingularMatrix);
    }
    (0..n)
        .map(|col| {
            let replaced: ExprMatrix = (0..n)
                .map(|r| (0..n).map(|c| if c == col { rhs[r].clone() } else { m[r][c].clone() }).collect())
                .collect();
            det(&replaced).checked_div(&d)
        })
        .collect()
}

/// Exact rank over ℚ(i), returning the pivot rows and columns.
pub fn rank_numeric(m: &[Vec<GaussianRational>]) -> (usize, Vec<usize>, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (0, vec![], vec![]);
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    let mut row_ids: Vec<usize> = (0..rows).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        row_ids.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
        pivot_rows.push(row_ids[r]);
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivot_rows.sort_unstable();
    (r, pivot_rows, pivot_cols)
}

pub fn det_numeric(m: &[Vec<GaussianRational>]) -> GaussianRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut acc = GaussianRational::from_int(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != k {
            a.swap(p, k);
            acc = -acc;
        }
        acc = &acc * &a[k][k];
        let inv = a[k][k].inv().expect("nonzero");
        for r in k + 1..n {
            let f = &a[r][k] * &inv;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn e(s: &str) -> RationalExpr {
        parse_expr(s, 2, 1).unwrap()
    }

    #[test]
    fn det_small_and_elimination_agree() {
        let m: ExprMatrix = vec![
            vec![e("z1"), e("1"), e("0"), e("u1")],
            vec![e("zb1"), e("z2"), e("I"), e("0")],
            vec![e("1"), e("0"), e("zb2"), e("1")],
            vec![e("0"), e("u1"), e("1"), e("z1*zb1")],
        ];
        // cofactor expansion along the first row using 3x3 determinants
        let minor = |skip: usize| -> ExprMatrix {
            (1..4).map(|r| (0..4).filter(|&c| c != skip).map(|c| m[r][c].clone()).collect()).collect()
        };
        let mut expect = RationalExpr::zero(m[0][0].dims());
        for c in 0..4 {
            let t = &m[0][c] * &det(&minor(c));
            expect = if c % 2 == 0 { &expect + &t } else { &expect - &t };
        }
        assert_eq!(det(&m), expect);
    }

    #[test]
    fn cramer_solves() {
        let m: ExprMatrix = vec![vec![e("I + u1"), e("z1")], vec![e("zb1"), e("1")]];
        let rhs = vec![e("1"), e("z2")];
        let x = solve_cramer(&m, &rhs).unwrap();
        for r in 0..2 {
            let lhs = &(&m[r][0] * &x[0]) + &(&m[r][1] * &x[1]);
            assert_eq!(lhs, rhs[r]);
        }
        let sing: ExprMatrix = vec![vec![e("z1"), e("z1")], vec![e("1"), e("1")]];
        assert_eq!(solve_cramer(&sing, &rhs), Err(CrError::SingularMatrix));
    }

    #[test]
    fn numeric_rank() {
        let g = |a: i64| GaussianRational::from_int(a);
        let m = vec![vec![g(1), g(2), g(3)], vec![g(2), g(4), g(6)], vec![g(0), g(1), g(1)]];
        let (r, rows, cols) = rank_numeric(&m);
        assert_eq!(r, 2);
        assert_eq!(rows, vec![0, 2]);
        assert_eq!(cols, vec![0, 1]);
        assert!(det_numeric(&m).is_zero());
    }
}
