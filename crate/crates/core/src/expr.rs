//! Reduced rational functions over ℚ(i): the function field every frame
//! coefficient, Levi entry and minor lives in.
//!
//! Canonical form: `gcd(num, den) = 1`, `den` monic under the graded-lex
//! order, zero is `0/1`. Two expressions are equal as rational functions iff
//! they are structurally equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{ArithOp, GaussianRational};
use crate::error::{CrError, Result};
use crate::gcd::gcd;
use crate::poly::{Dims, MultiPoly, VarId};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalExpr {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalExpr {
    pub fn zero(dims: Dims) -> Self {
        RationalExpr { num: MultiPoly::zero(dims), den: MultiPoly::one(dims) }
    }

    pub fn one(dims: Dims) -> Self {
        Self::from_poly(MultiPoly::one(dims))
    }

    pub fn constant(dims: Dims, c: GaussianRational) -> Self {
        Self::from_poly(MultiPoly::constant(dims, c))
    }

    pub fn int(dims: Dims, n: i64) -> Self {
        Self::constant(dims, GaussianRational::from_int(n))
    }

    /// `√−1` as an expression.
    pub fn i(dims: Dims) -> Self {
        Self::constant(dims, GaussianRational::i())
    }

    pub fn var(dims: Dims, v: VarId) -> Self {
        Self::from_poly(MultiPoly::var(dims, v))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let den = MultiPoly::one(num.dims());
        RationalExpr { num, den }
    }

    /// Builds `num / den` and reduces it.
    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(CrError::DivisionByZero);
        }
        let g = gcd(&num, &den);
        Ok(Self::normalized(num, den, &g))
    }

    fn normalized(num: MultiPoly, den: MultiPoly, g: &MultiPoly) -> Self {
        let dims = num.dims();
        if num.is_zero() {
            return Self::zero(dims);
        }
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(g).expect("gcd divides numerator"), den.div_exact(g).expect("gcd divides denominator"))
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RationalExpr { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RationalExpr { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn dims(&self) -> Dims {
        self.num.dims()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    /// Rough size measure used for pivot selection.
    pub fn weight(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(CrError::DivisionByZero);
        }
        let inv = RationalExpr::normalized(rhs.den.clone(), rhs.num.clone(), &MultiPoly::one(self.dims()));
        Ok(self * &inv)
    }

    pub fn inv(&self) -> Result<Self> {
        RationalExpr::one(self.dims()).checked_div(self)
    }

    pub fn apply(&self, rhs: &Self, op: ArithOp) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dims());
        }
        RationalExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalExpr { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Formal partial derivative, treating `z`, `zb`, `u` as independent.
    pub fn diff(&self, v: VarId) -> Self {
        let slot = self.dims().slot(v);
        self.diff_slot(slot)
    }

    pub fn diff_slot(&self, slot: usize) -> Self {
        let dn = self.num.diff(slot);
        if self.den.is_one() {
            return RationalExpr::from_poly(dn);
        }
        let dd = self.den.diff(slot);
        if dd.is_zero() {
            return RationalExpr::from_parts(dn, self.den.clone()).expect("nonzero den");
        }
        // (n/d)' = (n' d - n d') / d^2; with g = gcd(d, d') the result
        // can be written over d * (d/g) with numerator n' (d/g) - n (d'/g).
        let g = gcd(&self.den, &dd);
        let dg = self.den.div_exact(&g).expect("gcd divides");
        let ddg = dd.div_exact(&g).expect("gcd divides");
        let num = &(&dn * &dg) - &(&self.num * &ddg);
        let den = &self.den * &dg;
        RationalExpr::from_parts(num, den).expect("nonzero den")
    }

    /// Conjugates coefficients and swaps `z_k <-> zb_k`.
    pub fn conj(&self) -> Self {
        let num = self.num.conj();
        let den = self.den.conj();
        RationalExpr::normalized(num, den, &MultiPoly::one(self.dims()))
    }

    /// Whether `conj(self) == self`.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Exact value at a point given as one value per slot.
    pub fn eval_slots(&self, values: &[GaussianRational]) -> Result<GaussianRational> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(CrError::Pole { denominator: self.den.to_string() });
        }
        self.num.eval(values).checked_div(&d)
    }
}

impl<'a> Add<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalExpr::from_poly(num);
            }
            let g = gcd(&num, &self.den);
            return RationalExpr::normalized(num, self.den.clone(), &g);
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RationalExpr::normalized(num, rhs.den.clone(), &MultiPoly::one(self.dims()));
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RationalExpr::normalized(num, self.den.clone(), &MultiPoly::one(self.dims()));
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = gcd(&self.den, &rhs.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let den = &(&b1 * &d1) * &g;
        if g.is_one() {
            return RationalExpr::normalized(num, den, &g);
        }
        let h = gcd(&num, &g);
        RationalExpr::normalized(num, den, &h)
    }
}

impl<'a> Sub<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        let dims = self.dims();
        if self.is_zero() || rhs.is_zero() {
            return RationalExpr::zero(dims);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalExpr::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), rhs.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        RationalExpr::normalized(&a * &c, &b * &d, &MultiPoly::one(dims))
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        -&self
    }
}

impl Add for RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

fn wrap(p: &MultiPoly) -> String {
    if p.num_terms() <= 1 && !p.constant_term().is_compound() {
        p.to_string()
    } else {
        format!("({p})")
    }
}

/// Canonical text: `num` or `(num)/(den)`; parseable back to the same value.
impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let den = if self.den.num_terms() == 1 && self.den.support().len() == 1 {
                self.den.to_string()
            } else {
                format!("({})", self.den)
            };
            write!(f, "{}/{den}", wrap(&self.num))
        }
    }
}

impl fmt::Debug for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
