//! Sparse multivariate polynomials over ℚ(i) in the intrinsic coordinates
//! `z_1..z_n, zb_1..zb_n, u_1..u_c`.
//!
//! Terms are kept in a `BTreeMap` under graded-lex order with variable order
//! `Z_1 < .. < Z_n < Zbar_1 < .. < Zbar_n < U_1 < .. < U_c`; the leading term
//! is the last entry. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Z,
    Zbar,
    U,
}

/// One intrinsic coordinate; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub kind: VarKind,
    pub index: usize,
}

impl VarId {
    pub fn z(index: usize) -> Self {
        VarId { kind: VarKind::Z, index }
    }
    pub fn zbar(index: usize) -> Self {
        VarId { kind: VarKind::Zbar, index }
    }
    pub fn u(index: usize) -> Self {
        VarId { kind: VarKind::U, index }
    }

    /// The variable that conjugation maps this one to.
    pub fn conj(self) -> Self {
        match self.kind {
            VarKind::Z => VarId::zbar(self.index),
            VarKind::Zbar => VarId::z(self.index),
            VarKind::U => self,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Z => write!(f, "z{}", self.index),
            VarKind::Zbar => write!(f, "zb{}", self.index),
            VarKind::U => write!(f, "u{}", self.index),
        }
    }
}

/// CR dimension `n` and codimension `c`; fixes the variable layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub n: usize,
    pub c: usize,
}

impl Dims {
    pub fn new(n: usize, c: usize) -> Self {
        Dims { n, c }
    }

    /// Number of intrinsic coordinates, `2n + c`.
    pub fn nvars(&self) -> usize {
        2 * self.n + self.c
    }

    pub fn contains(&self, v: VarId) -> bool {
        let bound = if v.kind == VarKind::U { self.c } else { self.n };
        v.index >= 1 && v.index <= bound
    }

    pub fn slot(&self, v: VarId) -> usize {
        debug_assert!(self.contains(v), "{v} outside {self:?}");
        match v.kind {
            VarKind::Z => v.index - 1,
            VarKind::Zbar => self.n + v.index - 1,
            VarKind::U => 2 * self.n + v.index - 1,
        }
    }

    pub fn var(&self, slot: usize) -> VarId {
        if slot < self.n {
            VarId::z(slot + 1)
        } else if slot < 2 * self.n {
            VarId::zbar(slot - self.n + 1)
        } else {
            VarId::u(slot - 2 * self.n + 1)
        }
    }

    pub fn conj_slot(&self, slot: usize) -> usize {
        self.slot(self.var(slot).conj())
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.nvars()).map(move |s| self.var(s))
    }
}

/// Exponent vector, one entry per slot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, slot: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[slot] = e;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    dims: Dims,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(dims: Dims) -> Self {
        MultiPoly { dims, terms: BTreeMap::new() }
    }

    pub fn constant(dims: Dims, c: GaussianRational) -> Self {
        let mut p = Self::zero(dims);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(dims.nvars()), c);
        }
        p
    }

    pub fn one(dims: Dims) -> Self {
        Self::constant(dims, GaussianRational::one())
    }

    pub fn var(dims: Dims, v: VarId) -> Self {
        Self::monomial(dims, Monomial::var(dims.nvars(), dims.slot(v), 1), GaussianRational::one())
    }

    pub fn monomial(dims: Dims, m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(dims);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(dims: Dims, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = Self::zero(dims);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms.get(&Monomial::one(self.dims.nvars())).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, slot: usize) -> u16 {
        self.terms.keys().map(|m| m.0[slot]).max().unwrap_or(0)
    }

    pub fn has_var(&self, slot: usize) -> bool {
        self.terms.keys().any(|m| m.0[slot] > 0)
    }

    /// Slots of variables actually occurring.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.nvars()).filter(|&s| self.has_var(s)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dims);
        }
        MultiPoly { dims: self.dims, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Self {
        MultiPoly { dims: self.dims, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.dims);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in the given slot.
    pub fn diff(&self, slot: usize) -> Self {
        let mut out = Self::zero(self.dims);
        for (m, c) in &self.terms {
            let e = m.0[slot];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[slot] = e - 1;
            out.terms.insert(nm, c * &GaussianRational::from_int(i64::from(e)));
        }
        out
    }

    /// Conjugates coefficients and swaps `z_k <-> zb_k`.
    pub fn conj(&self) -> Self {
        let nv = self.dims.nvars();
        let perm: Vec<usize> = (0..nv).map(|s| self.dims.conj_slot(s)).collect();
        let mut out = Self::zero(self.dims);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; nv];
            for (s, &x) in m.0.iter().enumerate() {
                e[perm[s]] = x;
            }
            out.terms.insert(Monomial(e), c.conj());
        }
        out
    }

    /// Substitutes a value for every slot.
    pub fn eval(&self, values: &[GaussianRational]) -> GaussianRational {
        assert_eq!(values.len(), self.dims.nvars());
        let mut powers: Vec<Vec<GaussianRational>> = Vec::with_capacity(values.len());
        for (s, v) in values.iter().enumerate() {
            let d = self.degree_in(s) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(GaussianRational::one());
            for k in 1..=d {
                let next = &row[k - 1] * v;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[s][e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes values for every slot except `keep`, giving dense
    /// univariate coefficients (index = degree).
    pub(crate) fn univariate_image(&self, keep: usize, values: &[GaussianRational]) -> Vec<GaussianRational> {
        let deg = self.degree_in(keep) as usize;
        let mut out = vec![GaussianRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, &e) in m.0.iter().enumerate() {
                if s != keep && e > 0 {
                    t = &t * &values[s].pow(u32::from(e));
                }
            }
            let k = m.0[keep] as usize;
            out[k] = &out[k] + &t;
        }
        out
    }

    /// View as a polynomial in `slot` with coefficients free of it.
    pub(crate) fn to_univariate(&self, slot: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(slot) as usize;
        let mut out = vec![Self::zero(self.dims); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[slot] as usize;
            let mut nm = m.clone();
            nm.0[slot] = 0;
            out[k].terms.insert(nm, c.clone());
        }
        out
    }

    pub(crate) fn from_univariate(dims: Dims, slot: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(dims);
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut nm = m.clone();
                nm.0[slot] += k as u16;
                out.terms.insert(nm, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        if d.terms.len() == 1 {
            let inv = dc.inv().ok()?;
            let mut out = Self::zero(self.dims);
            for (m, c) in &self.terms {
                out.terms.insert(m.div(dm)?, c * &inv);
            }
            return Some(out);
        }
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.dims);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc * &dc_inv;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    pub fn substitute_slot(&self, slot: usize, value: &MultiPoly) -> MultiPoly {
        let coeffs = self.to_univariate(slot);
        let mut acc = Self::zero(self.dims);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.dims);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.leading().unwrap();
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.leading().unwrap();
            return rhs.mul_term(m, c);
        }
        let mut acc: std::collections::HashMap<Monomial, GaussianRational> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let t = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &t,
                    None => {
                        acc.insert(m, t);
                    }
                }
            }
        }
        MultiPoly { dims: self.dims, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { dims: self.dims, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl MultiPoly {
    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (s, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = self.dims.var(s);
            if e == 1 {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        parts.join("*")
    }
}

/// Canonical rendering: terms in descending monomial order.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = c.split_sign();
            let body = if m.is_one() {
                mag
            } else if mag == "1" {
                self.fmt_monomial(m)
            } else {
                format!("{}*{}", mag, self.fmt_monomial(m))
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn check_same_dims(a: Dims, b: Dims) -> Result<()> {
    if a != b {
        return Err(CrError::DimensionMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d22() -> Dims {
        Dims::new(2, 1)
    }

    fn v(x: VarId) -> MultiPoly {
        MultiPoly::var(d22(), x)
    }

    #[test]
    fn slot_layout() {
        let d = Dims::new(2, 1);
        assert_eq!(d.slot(VarId::z(2)), 1);
        assert_eq!(d.slot(VarId::zbar(1)), 2);
        assert_eq!(d.slot(VarId::u(1)), 4);
        assert_eq!(d.var(3), VarId::zbar(2));
        assert_eq!(d.conj_slot(0), 2);
        assert_eq!(d.conj_slot(4), 4);
    }

    #[test]
    fn graded_lex_leading_term() {
        // u1 is the largest variable, so z1*u1 beats z1*zb1 at equal degree
        let p = &(&v(VarId::z(1)) * &v(VarId::zbar(1))) + &(&v(VarId::z(1)) * &v(VarId::u(1)));
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.exps(), &[1, 0, 0, 0, 1]);
    }

    #[test]
    fn exact_division() {
        let a = &v(VarId::z(1)) + &v(VarId::zbar(2));
        let b = &v(VarId::u(1)) - &MultiPoly::one(d22());
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod.div_exact(&(&b + &v(VarId::z(2)))).is_none());
    }

    #[test]
    fn derivative_and_conj() {
        let z = v(VarId::z(1));
        let zb = v(VarId::zbar(1));
        let p = &(&z * &z) * &zb;
        assert_eq!(p.diff(0), (&z * &zb).scale(&GaussianRational::from_int(2)));
        let q = p.scale(&GaussianRational::i());
        assert_eq!(q.conj(), (&(&zb * &zb) * &z).scale(&-GaussianRational::i()));
    }

    #[test]
    fn display_is_deterministic() {
        let z = v(VarId::z(1));
        let zb = v(VarId::zbar(1));
        let p = &(&z * &zb).scale(&GaussianRational::from_parts((1, 2), (1, 1))) - &zb.scale(&GaussianRational::i());
        assert_eq!(p.to_string(), "(1/2 + I)*z1*zb1 - I*zb1");
    }
}
