//! Dense univariate polynomials in `u` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in `u`, coefficients in ascending order of degree.
///
/// The highest stored coefficient is never zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolyU {
    coeffs: Vec<BigInt>,
}

impl IntPolyU {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * u^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The polynomial `u`.
    pub fn u() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `u - 1`.
    pub fn u_minus_one() -> Self {
        Self::from_i64s(&[-1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of leading zero coefficients from the bottom, i.e. the
    /// largest `k` with `u^k` dividing `self` (zero for the zero polynomial).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Gcd of all coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        debug_assert!(!c.is_zero());
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Content divided out, leading coefficient made positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self` modulo `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let d_deg = divisor.degree().expect("pseudo_rem by zero");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(r_deg) = r.degree() {
            if r_deg < d_deg {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = &r.scale(&lc) - &divisor.scale(&lr).shift(r_deg - d_deg);
        }
        r
    }

    /// Exact quotient in `Z[u]`; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let d_deg = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        let s_deg = self.degree().unwrap();
        if s_deg < d_deg {
            return None;
        }
        let mut q = vec![BigInt::zero(); s_deg - d_deg + 1];
        while let Some(r_deg) = r.degree() {
            if r_deg < d_deg {
                return None;
            }
            let (c, rem) = r.leading().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            q[r_deg - d_deg] = c.clone();
            r = &r - &divisor.scale(&c).shift(r_deg - d_deg);
        }
        Some(Self::new(q))
    }

    /// Greatest common divisor in `Z[u]`, primitive with positive leading
    /// coefficient (zero only if both inputs are zero). Uses the primitive
    /// remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        let content = self.content().gcd(&other.content());
        if a.is_zero() {
            return a;
        }
        // Gcd over Z includes the integer content part; callers wanting the
        // gcd over Q use `primitive_part` on the result.
        a.scale(&content)
    }

    /// Least common multiple of two primitive polynomials, primitive with
    /// positive leading coefficient.
    pub fn lcm_primitive(&self, other: &Self) -> Self {
        let a = self.primitive_part();
        let b = other.primitive_part();
        let g = a.gcd(&b).primitive_part();
        (&a * &b.div_exact(&g).expect("gcd divides")).primitive_part()
    }
}

impl fmt::Debug for IntPolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolyU({self})")
    }
}

/// Writes the polynomial in descending powers, e.g. `u^2-u+1`.
impl fmt::Display for IntPolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolyU {
    type Output = IntPolyU;
    fn add(self, rhs: &IntPolyU) -> IntPolyU {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolyU::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k);
                    let b = rhs.coeffs.get(k);
                    match (a, b) {
                        (Some(a), Some(b)) => a + b,
                        (Some(a), None) => a.clone(),
                        (None, Some(b)) => b.clone(),
                        (None, None) => BigInt::zero(),
                    }
                })
                .collect(),
        )
    }
}

impl Sub for &IntPolyU {
    type Output = IntPolyU;
    fn sub(self, rhs: &IntPolyU) -> IntPolyU {
        self + &(-rhs)
    }
}

impl Neg for &IntPolyU {
    type Output = IntPolyU;
    fn neg(self) -> IntPolyU {
        IntPolyU {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolyU {
    type Output = IntPolyU;
    fn mul(self, rhs: &IntPolyU) -> IntPolyU {
        if self.is_zero() || rhs.is_zero() {
            return IntPolyU::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolyU::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolyU {
            type Output = IntPolyU;
            fn $m(self, rhs: IntPolyU) -> IntPolyU {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
