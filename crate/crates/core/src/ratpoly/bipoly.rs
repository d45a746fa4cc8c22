//! Sparse integer polynomials in `(u, T)` and uncancelled fractions of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::{IntPolyU, RationalFunctionU};

/// Polynomial in `u` and `T`, keyed by `(u-exponent, T-exponent)`.
/// No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPolyUT {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPolyUT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: BigInt, u_exp: u32, t_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((u_exp, t_exp), c);
        }
        Self { terms }
    }

    /// Builds from arbitrary `(u, t, c)` triples, summing repeats and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    /// Embeds a polynomial in `u` as the `T^0` part.
    pub fn from_poly_u(p: &IntPolyU) -> Self {
        Self::from_poly_u_times_t(p, 0)
    }

    /// `p(u) * T^t_exp`.
    pub fn from_poly_u_times_t(p: &IntPolyU, t_exp: u32) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, t_exp), c.clone())),
        )
    }

    /// `u^nu - T^n`.
    pub fn u_pow_minus_t_pow(nu: u32, n: u32) -> Self {
        Self::from_terms([((nu, 0), BigInt::one()), ((0, n), -BigInt::one())])
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, t)| t).max()
    }

    /// Coefficient of `T^t` as a polynomial in `u`.
    pub fn t_coeff(&self, t: u32) -> IntPolyU {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (&(ue, te), c) in &self.terms {
            if te == t {
                let ue = ue as usize;
                if coeffs.len() <= ue {
                    coeffs.resize(ue + 1, BigInt::zero());
                }
                coeffs[ue] = c.clone();
            }
        }
        IntPolyU::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, u: &BigInt, t: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(ue, te), c)| c * Pow::pow(u, ue) * Pow::pow(t, te))
            .sum()
    }
}

impl fmt::Debug for BiPolyUT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPolyUT({self})")
    }
}

impl fmt::Display for BiPolyUT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Ascending in T, descending in u within each T-degree.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let abs = c.abs();
            let (ue, te) = *key;
            if !abs.is_one() || (ue == 0 && te == 0) {
                write!(f, "{abs}")?;
            }
            match ue {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{ue}")?,
            }
            match te {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{te}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BiPolyUT {
    type Output = BiPolyUT;
    fn add(self, rhs: &BiPolyUT) -> BiPolyUT {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &BiPolyUT {
    type Output = BiPolyUT;
    fn sub(self, rhs: &BiPolyUT) -> BiPolyUT {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &BiPolyUT {
    type Output = BiPolyUT;
    fn neg(self) -> BiPolyUT {
        BiPolyUT {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &BiPolyUT {
    type Output = BiPolyUT;
    fn mul(self, rhs: &BiPolyUT) -> BiPolyUT {
        let mut out = BiPolyUT::zero();
        for (&(a_u, a_t), a) in &self.terms {
            for (&(b_u, b_t), b) in &rhs.terms {
                out.add_term((a_u + b_u, a_t + b_t), a * b);
            }
        }
        out
    }
}

/// A fraction of polynomials in `(u, T)`. Not reduced: equality is by
/// cross-multiplication ([`birat_eq`]).
#[derive(Clone, PartialEq, Eq)]
pub struct ZetaRational {
    pub num: BiPolyUT,
    pub den: BiPolyUT,
}

impl ZetaRational {
    pub fn new(num: BiPolyUT, den: BiPolyUT) -> Self {
        assert!(!den.is_zero(), "zero denominator in ZetaRational");
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self::new(BiPolyUT::zero(), BiPolyUT::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// A rational function of `u` alone.
    pub fn from_rf(r: &RationalFunctionU) -> Self {
        Self::new(
            BiPolyUT::from_poly_u(r.num()),
            BiPolyUT::from_poly_u(r.den()),
        )
    }

    /// `u^{-nu} T^n / (1 - u^{-nu} T^n)`, stored cleared as `T^n / (u^nu - T^n)`.
    pub fn geometric_factor(nu: u32, n: u32) -> Self {
        Self::new(
            BiPolyUT::monomial(BigInt::one(), 0, n),
            BiPolyUT::u_pow_minus_t_pow(nu, n),
        )
    }

    /// `c * u^u_exp * T^t_exp` with `u_exp` possibly negative.
    pub fn monomial(c: i64, u_exp: i64, t_exp: u32) -> Self {
        let (ne, de) = if u_exp >= 0 {
            (u_exp as u32, 0)
        } else {
            (0, (-u_exp) as u32)
        };
        Self::new(
            BiPolyUT::monomial(BigInt::from(c), ne, t_exp),
            BiPolyUT::monomial(BigInt::one(), de, 0),
        )
    }
}

impl fmt::Debug for ZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZetaRational(({}) / ({}))", self.num, self.den)
    }
}

impl fmt::Display for ZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl Add for &ZetaRational {
    type Output = ZetaRational;
    fn add(self, rhs: &ZetaRational) -> ZetaRational {
        if self.den == rhs.den {
            return ZetaRational::new(&self.num + &rhs.num, self.den.clone());
        }
        ZetaRational::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &ZetaRational {
    type Output = ZetaRational;
    fn mul(self, rhs: &ZetaRational) -> ZetaRational {
        ZetaRational::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for ZetaRational {
    type Output = ZetaRational;
    fn add(self, rhs: ZetaRational) -> ZetaRational {
        &self + &rhs
    }
}

impl Mul for ZetaRational {
    type Output = ZetaRational;
    fn mul(self, rhs: ZetaRational) -> ZetaRational {
        &self * &rhs
    }
}

impl std::iter::Sum for ZetaRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

/// `a.num * b.den == b.num * a.den`.
pub fn birat_eq(a: &ZetaRational, b: &ZetaRational) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2_over() -> ZetaRational {
        // T^2/(u^2 - T^2)
        ZetaRational::geometric_factor(2, 2)
    }

    #[test]
    fn eq_reflexive_example() {
        assert!(birat_eq(&t2_over(), &t2_over()));
    }

    #[test]
    fn eq_clearing_invariance() {
        // uT/(u-T) against T/(1-u^{-1}T) cleared by hand: multiply by u/u.
        let a = ZetaRational::new(
            BiPolyUT::monomial(BigInt::one(), 1, 1),
            BiPolyUT::u_pow_minus_t_pow(1, 1),
        );
        let b = ZetaRational::new(
            BiPolyUT::monomial(BigInt::from(3), 2, 1),
            &BiPolyUT::monomial(BigInt::from(3), 1, 0) * &BiPolyUT::u_pow_minus_t_pow(1, 1),
        );
        assert!(birat_eq(&a, &b));
        assert!(!birat_eq(&a, &t2_over()));
    }

    #[test]
    fn t_coeff_extraction() {
        let p = &BiPolyUT::u_pow_minus_t_pow(3, 2) * &BiPolyUT::monomial(BigInt::from(2), 1, 1);
        assert_eq!(p.t_coeff(1), IntPolyU::from_i64s(&[0, 0, 0, 0, 2]));
        assert_eq!(p.t_coeff(3), IntPolyU::from_i64s(&[0, -2]));
        assert!(p.t_coeff(0).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(BiPolyUT::u_pow_minus_t_pow(2, 4).to_string(), "u^2-T^4");
        assert_eq!(BiPolyUT::one().to_string(), "1");
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = BiPolyUT::u_pow_minus_t_pow(1, 1);
        assert!((&p - &p).is_zero());
        assert_eq!((&p + &p).len(), 2);
    }
}
