//! Multivariate polynomial gcd over ℚ(i).
//!
//! Recursive content/primitive-part scheme: pick a variable, split off the
//! content (gcd of the coefficients, one variable fewer), and run a primitive
//! pseudo-remainder sequence on the primitive parts. A cheap evaluation test
//! detects the common coprime case before any of that runs.
//!
//! Callers that know likely factors (frame determinants, denominators of the
//! graphing functions) can register them with [`register_factor_hint`]. Any
//! hint dividing both arguments is split off by exact division first, which
//! leaves a much smaller remainder for the general algorithm. Hints only
//! affect speed: `gcd(a, b) = f * gcd(a/f, b/f)` whenever `f` divides both.

use std::cell::RefCell;

use num_traits::{One, Zero};

use crate::arith::GaussianRational;
use crate::poly::MultiPoly;

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.dims());
    }
    if a.num_terms() <= b.num_terms() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }
    if images_coprime(a, b) {
        return MultiPoly::one(a.dims());
    }
    if let Some((f, a1, b1)) = split_hint(a, b) {
        return (&f * &gcd(&a1, &b1)).monic();
    }
    gcd_rec(a, b)
}

const MAX_HINTS: usize = 64;

thread_local! {
    static HINTS: RefCell<Vec<MultiPoly>> = const { RefCell::new(Vec::new()) };
}

/// Remembers `p` (made monic) as a likely common factor for later gcds on
/// this thread. Constants and duplicates are ignored; the oldest hints are
/// dropped beyond a fixed capacity.
pub fn register_factor_hint(p: &MultiPoly) {
    if p.is_zero() || p.is_constant() {
        return;
    }
    let m = p.monic();
    HINTS.with(|h| {
        let mut h = h.borrow_mut();
        if h.contains(&m) {
            return;
        }
        if h.len() == MAX_HINTS {
            h.remove(0);
        }
        h.push(m);
    });
}

pub fn clear_factor_hints() {
    HINTS.with(|h| h.borrow_mut().clear());
}

fn split_hint(a: &MultiPoly, b: &MultiPoly) -> Option<(MultiPoly, MultiPoly, MultiPoly)> {
    HINTS.with(|h| {
        for f in h.borrow().iter() {
            if f.dims() != a.dims() || f.total_degree() > a.total_degree().min(b.total_degree()) {
                continue;
            }
            if let Some(a1) = a.div_exact(f) {
                if let Some(b1) = b.div_exact(f) {
                    return Some((f.clone(), a1, b1));
                }
            }
        }
        None
    })
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let dims = a.dims();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(dims);
    }
    let sa = a.support();
    let sb = b.support();
    // A variable present in only one argument can only enter through that
    // argument's content.
    if let Some(&s) = sa.iter().find(|s| !sb.contains(s)) {
        return gcd_with_coeffs(b, a.to_univariate(s));
    }
    if let Some(&s) = sb.iter().find(|s| !sa.contains(s)) {
        return gcd_with_coeffs(a, b.to_univariate(s));
    }
    // main variable: the shared one of smallest combined degree keeps the PRS short
    let slot = *sa.iter().min_by_key(|&&s| (a.degree_in(s).max(b.degree_in(s)), s)).expect("nonconstant");
    let ua = a.to_univariate(slot);
    let ub = b.to_univariate(slot);
    let ca = content(&ua);
    let cb = content(&ub);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);
    let gc = gcd_rec(&ca, &cb);
    let gp = primitive_prs(pa, pb);
    (&gc * &MultiPoly::from_univariate(dims, slot, &gp)).monic()
}

fn gcd_with_coeffs(other: &MultiPoly, coeffs: Vec<MultiPoly>) -> MultiPoly {
    let mut g = other.clone();
    let mut coeffs: Vec<MultiPoly> = coeffs.into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.num_terms());
    for c in coeffs {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(other.dims());
        }
    }
    g.monic()
}

fn content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut nz: Vec<&MultiPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.num_terms());
    let dims = nz[0].dims();
    let mut g = nz[0].monic();
    for c in &nz[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, c);
    }
    if g.is_constant() {
        MultiPoly::one(dims)
    } else {
        g
    }
}

fn divide_coeffs(coeffs: &[MultiPoly], d: &MultiPoly) -> Vec<MultiPoly> {
    if d.is_one() {
        return coeffs.to_vec();
    }
    coeffs.iter().map(|c| c.div_exact(d).expect("content divides every coefficient")).collect()
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.len() == 1 && v[0].is_zero() {
        v.clear();
    }
}

/// Primitive part with a monic leading coefficient (as a polynomial in the
/// other variables).
fn normalize_primitive(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let c = content(&v);
    let mut v = divide_coeffs(&v, &c);
    let lc = v.last().unwrap().leading_coeff();
    if !lc.is_one() {
        let inv = lc.inv().expect("nonzero");
        v = v.iter().map(|p| p.scale(&inv)).collect();
    }
    v
}

fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<MultiPoly> = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MultiPoly> = r.iter().map(|c| c * lcb).collect();
        for (k, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            next[k + shift] = &next[k + shift] - &t;
        }
        debug_assert!(next[dr].is_zero());
        next.pop();
        trim(&mut next);
        r = next;
    }
    r
}

fn primitive_prs(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    r0 = normalize_primitive(r0);
    r1 = normalize_primitive(r1);
    loop {
        if r1.is_empty() {
            return r0;
        }
        if r1.len() == 1 {
            // nonzero constant in the main variable: primitive parts are coprime
            return vec![MultiPoly::one(r1[0].dims())];
        }
        let r = normalize_primitive(pseudo_rem(&r0, &r1));
        r0 = r1;
        r1 = r;
    }
}

/// Evaluation points for the coprimality screen. Any values work for
/// correctness; these just avoid 0 and ±1.
const PROBES: [(i64, i64); 8] = [(3, 1), (-5, 2), (7, -3), (2, 5), (-11, 4), (13, 1), (-4, -7), (6, 9)];

/// True only if `gcd(a, b)` is certainly constant: for every variable, some
/// evaluation of the others preserving both leading degrees gives coprime
/// univariate images. A `false` answer is inconclusive.
fn images_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    let nv = a.dims().nvars();
    for slot in 0..nv {
        let (da, db) = (a.degree_in(slot), b.degree_in(slot));
        if da == 0 || db == 0 {
            continue;
        }
        let mut decided = false;
        for attempt in 0..2 {
            let values: Vec<GaussianRational> = (0..nv)
                .map(|s| {
                    let (re, im) = PROBES[(s + attempt * 3) % PROBES.len()];
                    GaussianRational::from_parts((re, 1), (im, 1))
                })
                .collect();
            let ia = a.univariate_image(slot, &values);
            let ib = b.univariate_image(slot, &values);
            if ia[da as usize].is_zero() || ib[db as usize].is_zero() {
                continue;
            }
            if univariate_gcd_degree(ia, ib) == 0 {
                decided = true;
                break;
            }
            return false;
        }
        if !decided {
            return false;
        }
    }
    true
}

fn univariate_gcd_degree(a: Vec<GaussianRational>, b: Vec<GaussianRational>) -> usize {
    let mut r0 = strip(a);
    let mut r1 = strip(b);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let r = uni_rem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    r0.len().saturating_sub(1)
}

fn strip(mut v: Vec<GaussianRational>) -> Vec<GaussianRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn uni_rem(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero");
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] * &inv;
        for (k, bc) in b.iter().enumerate() {
            let t = &q * bc;
            r[k + dr - db] = &r[k + dr - db] - &t;
        }
        r.pop();
        r = strip(r);
    }
    // keep sizes small
    if let Some(lc) = r.last() {
        let inv = lc.inv().expect("nonzero");
        r = r.iter().map(|c| c * &inv).collect();
    }
    if r.iter().all(|c| c.is_zero()) {
        r.clear();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Dims, VarId};

    fn dims() -> Dims {
        Dims::new(2, 1)
    }

    fn v(x: VarId) -> MultiPoly {
        MultiPoly::var(dims(), x)
    }

    fn c(re: i64, im: i64) -> MultiPoly {
        MultiPoly::constant(dims(), GaussianRational::from_parts((re, 1), (im, 1)))
    }

    #[test]
    fn planted_common_factor() {
        let z1 = v(VarId::z(1));
        let zb2 = v(VarId::zbar(2));
        let u = v(VarId::u(1));
        let g = &(&z1 * &zb2) + &(&u * &c(0, 1));
        let a = &g * &(&z1 + &c(1, 0));
        let b = &g * &(&(&u * &u) - &zb2);
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn coprime_inputs() {
        let z1 = v(VarId::z(1));
        let zb1 = v(VarId::zbar(1));
        let a = &(&z1 * &zb1) + &c(1, 0);
        let b = &z1 - &zb1;
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn repeated_factor_powers() {
        let u = v(VarId::u(1));
        let z2 = v(VarId::z(2));
        let d = &(&u * &z2) + &c(0, 1);
        let e = &(&u * &u) + &c(1, 0);
        let a = &(&d.pow(3) * &e) * &z2;
        let b = &d.pow(2) * &e.pow(2);
        assert_eq!(gcd(&a, &b), (&d.pow(2) * &e).monic());
    }

    #[test]
    fn gcd_of_univariate_images() {
        let z1 = v(VarId::z(1));
        let a = &(&z1 - &c(1, 0)) * &(&z1 + &c(0, 2));
        let b = &(&z1 - &c(1, 0)) * &(&z1 - &c(3, 0));
        assert_eq!(gcd(&a, &b), &z1 - &c(1, 0));
    }

    #[test]
    fn hints_do_not_change_results() {
        let z1 = v(VarId::z(1));
        let zb1 = v(VarId::zbar(1));
        let u = v(VarId::u(1));
        let d = &(&z1 * &zb1) + &(&u * &c(0, 1));
        let e = &(&u * &z1) - &c(2, 1);
        let a = &(&d.pow(2) * &e) * &zb1;
        let b = &d.pow(3) * &(&zb1 + &c(1, 0));
        let plain = gcd(&a, &b);
        register_factor_hint(&d);
        register_factor_hint(&e);
        register_factor_hint(&(&e * &zb1));
        let hinted = gcd(&a, &b);
        clear_factor_hints();
        assert_eq!(plain, hinted);
        assert_eq!(hinted, d.pow(2).monic());
    }
}
