//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | 'I' | VARIABLE | '(' expr ')'
//! ```
//!
//! Variables are `z1..zN`, `zb1..zbN`, `u1..uC`; the unindexed `z`, `zb`, `u`
//! are accepted when the corresponding dimension is 1.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::GaussianRational;
use crate::error::{CrError, Result};
use crate::expr::RationalExpr;
use crate::poly::{Dims, VarId};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

pub fn parse_expr(text: &str, n: usize, c: usize) -> Result<RationalExpr> {
    parse_with_dims(text, Dims::new(n, c))
}

pub fn parse_with_dims(text: &str, dims: Dims) -> Result<RationalExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, dims };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected `{}`", p.peek_char())));
    }
    Ok(e)
}

/// Parses a numeric constant such as `1/2 - 3*I`. Variables are rejected.
pub fn parse_number(text: &str) -> Result<GaussianRational> {
    let e = parse_with_dims(text, Dims::new(0, 0))?;
    e.as_constant().ok_or_else(|| CrError::Syntax { offset: 0, message: format!("`{text}` is not a constant") })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dims: Dims,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()).unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> CrError {
        CrError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<RationalExpr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalExpr> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| CrError::Syntax { offset: at, message: "division by zero".to_string() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalExpr> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalExpr> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        let e: u32 = match digits.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(CrError::ExponentOverflow { offset: at, max: MAX_EXPONENT }),
        };
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RationalExpr> {
        self.skip_ws();
        let dims = self.dims;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0'..=b'9') => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(RationalExpr::constant(dims, GaussianRational::from_real(BigRational::from_integer(n))))
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "I" {
                    return Ok(RationalExpr::i(dims));
                }
                match lookup_var(name, dims) {
                    Some(v) => Ok(RationalExpr::var(dims, v)),
                    None => Err(CrError::UnknownVariable { name: name.to_string(), offset: start }),
                }
            }
            Some(_) => Err(self.error(&format!("unexpected `{}`", self.peek_char()))),
        }
    }
}

fn lookup_var(name: &str, dims: Dims) -> Option<VarId> {
    let (ctor, rest): (fn(usize) -> VarId, &str) = if let Some(r) = name.strip_prefix("zb") {
        (VarId::zbar, r)
    } else if let Some(r) = name.strip_prefix('z') {
        (VarId::z, r)
    } else {
        let r = name.strip_prefix('u')?;
        (VarId::u, r)
    };
    let index = if rest.is_empty() {
        1
    } else if rest.starts_with('0') {
        return None;
    } else {
        rest.parse::<usize>().ok()?
    };
    let v = ctor(index);
    let bound = if v.kind == crate::poly::VarKind::U { dims.c } else { dims.n };
    if rest.is_empty() && bound != 1 {
        return None;
    }
    dims.contains(v).then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn product_of_conjugates() {
        let e = parse_expr("z1*zb1", 1, 1).unwrap();
        assert_eq!(e.to_string(), "z1*zb1");
    }

    #[test]
    fn iii2_model_right_hand_side() {
        let e = parse_expr("2*I*z1*zb1*(z1 + zb1)", 1, 3).unwrap();
        let d = Dims::new(1, 3);
        let z = RationalExpr::var(d, VarId::z(1));
        let zb = RationalExpr::var(d, VarId::zbar(1));
        let two_i = RationalExpr::constant(d, GaussianRational::from_parts((0, 1), (2, 1)));
        assert_eq!(e, &(&two_i * &(&z * &zb)) * &(&z + &zb));
    }

    #[test]
    fn syntax_error_position() {
        match parse_expr("z1*zb1/(1 - )", 1, 1) {
            Err(CrError::Syntax { offset, .. }) => assert_eq!(offset, 12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(parse_expr("z2", 1, 1), Err(CrError::UnknownVariable { offset: 0, .. })));
        assert!(matches!(parse_expr("1 + u4", 1, 3), Err(CrError::UnknownVariable { offset: 4, .. })));
        assert!(matches!(parse_expr("x", 1, 1), Err(CrError::UnknownVariable { .. })));
        // unindexed names only when the dimension is one
        assert!(parse_expr("z*zb + u", 1, 1).is_ok());
        assert!(parse_expr("u", 1, 2).is_err());
    }

    #[test]
    fn exponent_overflow() {
        assert!(matches!(parse_expr("z1^100000", 1, 1), Err(CrError::ExponentOverflow { offset: 3, .. })));
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than unary minus
        let a = parse_expr("-z1^2", 1, 1).unwrap();
        let b = parse_expr("-(z1*z1)", 1, 1).unwrap();
        assert_eq!(a, b);
        let c = parse_expr("1/2*z1 - 3/4", 1, 1).unwrap();
        assert_eq!(c.to_string(), "1/2*z1 - 3/4");
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1/2 - 3/4*I").unwrap(), GaussianRational::from_parts((1, 2), (-3, 4)));
        assert!(parse_number("0").unwrap().is_zero());
        assert!(parse_number("(1)").unwrap().is_one());
        assert!(parse_number("z1").is_err());
    }
}
