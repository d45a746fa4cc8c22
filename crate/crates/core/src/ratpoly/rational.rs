//! Reduced rational functions in `u`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntPolyU, RatPolyError};

/// A fraction `num/den` of integer polynomials in canonical form:
/// coprime over Q, joint integer content 1, positive leading denominator
/// coefficient. Zero is `0/1`.
///
/// Canonical form makes derived `PartialEq`/`Hash` agree with equality in
/// the fraction field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionU {
    num: IntPolyU,
    den: IntPolyU,
}

/// Operation selector for [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RationalFunctionU {
    /// Builds the canonical representative of `num/den`.
    pub fn new(num: IntPolyU, den: IntPolyU) -> Result<Self, RatPolyError> {
        if den.is_zero() {
            return Err(RatPolyError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: IntPolyU, den: IntPolyU) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).primitive_part();
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        } else {
            (num, den)
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self {
            num: IntPolyU::zero(),
            den: IntPolyU::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolyU::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPolyU::constant(BigInt::from(c)))
    }

    pub fn from_poly(p: IntPolyU) -> Self {
        Self::normalize(p, IntPolyU::one())
    }

    /// `u^k` for any integer `k`.
    pub fn u_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(IntPolyU::monomial(BigInt::one(), k as usize))
        } else {
            Self {
                num: IntPolyU::one(),
                den: IntPolyU::monomial(BigInt::one(), k.unsigned_abs() as usize),
            }
        }
    }

    /// `(u - 1)^m`.
    pub fn u_minus_one_pow(m: u32) -> Self {
        Self::from_poly(IntPolyU::u_minus_one().pow(m))
    }

    pub fn num(&self) -> &IntPolyU {
        &self.num
    }

    pub fn den(&self) -> &IntPolyU {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RatPolyError> {
        if rhs.is_zero() {
            return Err(RatPolyError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Top exponent of the expansion in descending powers of `u`
    /// (`deg num - deg den`); `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    /// Coefficients of `u^k` for `k` from the top exponent down to `k_min`
    /// in the expansion as a Laurent series in `u^{-1}`.
    ///
    /// Fails with [`RatPolyError::NonIntegral`] if a coefficient in that
    /// range is not an integer.
    pub fn laurent(&self, k_min: i64) -> Result<LaurentExpansion, RatPolyError> {
        let Some(top) = self.top_exponent() else {
            return Ok(LaurentExpansion {
                top: k_min,
                coeffs: vec![BigInt::zero()],
            });
        };
        if k_min > top {
            return Ok(LaurentExpansion {
                top,
                coeffs: Vec::new(),
            });
        }
        // In v = 1/u: num = u^n N(v), den = u^m D(v) with D(0) = lc(den).
        let n_rev: Vec<BigInt> = self.num.coeffs().iter().rev().cloned().collect();
        let d_rev: Vec<BigInt> = self.den.coeffs().iter().rev().cloned().collect();
        let d0 = &d_rev[0];
        let len = (top - k_min + 1) as usize;
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for j in 0..len {
            let mut acc = n_rev.get(j).cloned().unwrap_or_default();
            for i in 1..=j.min(d_rev.len() - 1) {
                acc -= &d_rev[i] * &out[j - i];
            }
            let (q, r) = acc.div_rem(d0);
            if !r.is_zero() {
                return Err(RatPolyError::NonIntegral {
                    exponent: top - j as i64,
                });
            }
            out.push(q);
        }
        Ok(LaurentExpansion { top, coeffs: out })
    }

    /// Value at an integer point, as a reduced fraction of integers, or
    /// `None` where the denominator vanishes.
    pub fn eval(&self, u: &BigInt) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval(u);
        if d.is_zero() {
            return None;
        }
        Some((self.num.eval(u), d))
    }
}

/// Descending-power expansion produced by [`RationalFunctionU::laurent`]:
/// `coeffs[i]` is the coefficient of `u^(top - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub top: i64,
    pub coeffs: Vec<BigInt>,
}

impl LaurentExpansion {
    /// `(exponent, coefficient)` pairs from the top down.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.top - i as i64, c))
    }
}

/// `rf_make`: canonical fraction from ascending coefficient lists.
pub fn rf_make(num: &[BigInt], den: &[BigInt]) -> Result<RationalFunctionU, RatPolyError> {
    RationalFunctionU::new(IntPolyU::new(num.to_vec()), IntPolyU::new(den.to_vec()))
}

pub fn rf_arith(
    op: ArithOp,
    a: &RationalFunctionU,
    b: &RationalFunctionU,
) -> Result<RationalFunctionU, RatPolyError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Equality in the fraction field by cross-multiplication, valid for
/// non-canonical inputs too.
pub fn rf_eq(a: &RationalFunctionU, b: &RationalFunctionU) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl Default for RationalFunctionU {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RationalFunctionU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionU({self})")
    }
}

fn needs_parens(p: &IntPolyU) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
}

impl fmt::Display for RationalFunctionU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl Add for &RationalFunctionU {
    type Output = RationalFunctionU;
    fn add(self, rhs: &RationalFunctionU) -> RationalFunctionU {
        if self.den == rhs.den {
            return RationalFunctionU::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunctionU::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunctionU {
    type Output = RationalFunctionU;
    fn sub(self, rhs: &RationalFunctionU) -> RationalFunctionU {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunctionU {
    type Output = RationalFunctionU;
    fn neg(self) -> RationalFunctionU {
        RationalFunctionU {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunctionU {
    type Output = RationalFunctionU;
    fn mul(self, rhs: &RationalFunctionU) -> RationalFunctionU {
        RationalFunctionU::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunctionU::checked_div`] for a
/// fallible version.
impl Div for &RationalFunctionU {
    type Output = RationalFunctionU;
    fn div(self, rhs: &RationalFunctionU) -> RationalFunctionU {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunctionU {
            type Output = RationalFunctionU;
            fn $m(self, rhs: RationalFunctionU) -> RationalFunctionU {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunctionU {
    type Output = RationalFunctionU;
    fn neg(self) -> RationalFunctionU {
        -&self
    }
}

impl std::iter::Sum for RationalFunctionU {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}
