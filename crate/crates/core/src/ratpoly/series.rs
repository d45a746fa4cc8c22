//! Truncated power series in `T` with coefficients in `Q(u)`.

use super::{BiPolyUT, RatPolyError, RationalFunctionU, ZetaRational};

/// Coefficients of `T^0 ..= T^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeriesU {
    coeffs: Vec<RationalFunctionU>,
}

impl TSeriesU {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![RationalFunctionU::zero(); order + 1],
        }
    }

    /// From an explicit coefficient list; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<RationalFunctionU>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series has at least the T^0 coefficient"
        );
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunctionU] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &RationalFunctionU {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RationalFunctionU::is_zero)
    }

    /// First index at which two series differ, comparing up to the smaller
    /// order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

fn t_coeffs_as_rf(p: &BiPolyUT, upto: usize) -> Vec<RationalFunctionU> {
    (0..=upto)
        .map(|t| RationalFunctionU::from_poly(p.t_coeff(t as u32)))
        .collect()
}

/// Expands `z` as a power series in `T` up to `T^order`.
///
/// With `den = Σ D_j T^j` and `num = Σ P_j T^j`, the coefficients satisfy
/// `c_n = (P_n - Σ_{j=1..n} D_j c_{n-j}) / D_0`.
pub fn ts_expand(z: &ZetaRational, order: usize) -> Result<TSeriesU, RatPolyError> {
    let d = t_coeffs_as_rf(&z.den, order);
    if d[0].is_zero() {
        return Err(RatPolyError::NotSeriesExpandable);
    }
    let p = t_coeffs_as_rf(&z.num, order);
    let mut out: Vec<RationalFunctionU> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = p[n].clone();
        for j in 1..=n {
            if d[j].is_zero() || out[n - j].is_zero() {
                continue;
            }
            acc = &acc - &(&d[j] * &out[n - j]);
        }
        out.push(&acc / &d[0]);
    }
    Ok(TSeriesU { coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn x2k_closed_form_k1() {
        // u T^2 / (u - T^2)
        let z = ZetaRational::new(
            BiPolyUT::monomial(BigInt::one(), 1, 2),
            BiPolyUT::u_pow_minus_t_pow(1, 2),
        );
        let s = ts_expand(&z, 4).unwrap();
        let expect = [
            RationalFunctionU::zero(),
            RationalFunctionU::zero(),
            RationalFunctionU::one(),
            RationalFunctionU::zero(),
            RationalFunctionU::u_pow(-1),
        ];
        assert_eq!(s.coeffs(), &expect);
    }

    #[test]
    fn geometric_series() {
        let z = ZetaRational::geometric_factor(1, 1);
        let s = ts_expand(&z, 2).unwrap();
        assert_eq!(
            s.coeffs(),
            &[
                RationalFunctionU::zero(),
                RationalFunctionU::u_pow(-1),
                RationalFunctionU::u_pow(-2)
            ]
        );
    }

    #[test]
    fn order_zero_is_constant_term() {
        let z = ZetaRational::new(
            BiPolyUT::from_terms([((1, 0), BigInt::from(3)), ((0, 1), BigInt::one())]),
            BiPolyUT::monomial(BigInt::one(), 1, 0),
        );
        let s = ts_expand(&z, 0).unwrap();
        assert_eq!(s.coeffs(), &[RationalFunctionU::from_int(3)]);
    }

    #[test]
    fn not_expandable() {
        let z = ZetaRational::new(BiPolyUT::one(), BiPolyUT::monomial(BigInt::one(), 0, 1));
        assert_eq!(ts_expand(&z, 3), Err(RatPolyError::NotSeriesExpandable));
    }

    #[test]
    fn truncation_and_difference() {
        let z = ZetaRational::geometric_factor(1, 1);
        let long = ts_expand(&z, 6).unwrap();
        assert_eq!(long.truncate(3), ts_expand(&z, 3).unwrap());
        let other = ts_expand(&ZetaRational::geometric_factor(2, 1), 6).unwrap();
        assert_eq!(long.first_difference(&other), Some(1));
        assert_eq!(long.first_difference(&long), None);
    }
}
