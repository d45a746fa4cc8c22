//! Direct computation of the series of truncated arc strata for monomial
//! germs `f = sign · Π x_i^{N_i}` under a `Z/2` sign action.
//!
//! Arcs with `f∘γ` of order exactly `n` split by the orders `k_i` of their
//! coordinates on the support of `f`. Each such piece is a product of
//! punctured lines (the leading coefficients) and affine spaces (the
//! remaining truncated coefficients), so its series follows from the affine
//! and punctured-line product rules alone.

use thiserror::Error;

use crate::ratpoly::{RationalFunctionU, TSeriesU};
use crate::zeta::ZetaVariant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("germ is not invariant under the action")]
    NotInvariant,
    #[error("action has {action} coordinates, germ has {germ}")]
    DimensionMismatch { germ: usize, action: usize },
    #[error("germ needs at least one positive exponent")]
    NoSupport,
    #[error("sign values must be +1 or -1, got {0}")]
    BadSign(i64),
}

/// `sign · Π x_i^{N_i}` on `R^d`, `d = exponents.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialGerm {
    exponents: Vec<u32>,
    sign: i8,
}

impl MonomialGerm {
    pub fn new(exponents: Vec<u32>, sign: i64) -> Result<Self, ArcError> {
        if exponents.iter().all(|&n| n == 0) {
            return Err(ArcError::NoSupport);
        }
        Ok(Self {
            exponents,
            sign: unit_sign(sign)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.exponents[i] > 0).collect()
    }
}

fn unit_sign(s: i64) -> Result<i8, ArcError> {
    match s {
        1 => Ok(1),
        -1 => Ok(-1),
        other => Err(ArcError::BadSign(other)),
    }
}

/// The generator acts by `x_i ↦ eps_i x_i`; `trivial` stands for the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAction {
    eps: Vec<i8>,
    trivial: bool,
}

impl SignAction {
    pub fn new(eps: &[i64]) -> Result<Self, ArcError> {
        Ok(Self {
            eps: eps
                .iter()
                .map(|&e| unit_sign(e))
                .collect::<Result<_, _>>()?,
            trivial: false,
        })
    }

    pub fn trivial_group(d: usize) -> Self {
        Self {
            eps: vec![1; d],
            trivial: true,
        }
    }

    pub fn is_trivial_group(&self) -> bool {
        self.trivial
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }
}

pub fn check_invariance(g: &MonomialGerm, a: &SignAction) -> bool {
    if a.trivial {
        return true;
    }
    a.eps.len() == g.dim()
        && g.exponents
            .iter()
            .zip(&a.eps)
            .filter(|&(&n, &e)| e < 0 && n % 2 == 1)
            .count()
            % 2
            == 0
}

fn check(g: &MonomialGerm, a: &SignAction) -> Result<(), ArcError> {
    if !a.trivial && a.eps.len() != g.dim() {
        return Err(ArcError::DimensionMismatch {
            germ: g.dim(),
            action: a.eps.len(),
        });
    }
    if !check_invariance(g, a) {
        return Err(ArcError::NotInvariant);
    }
    Ok(())
}

/// Calls `visit` with every `k` (indexed like `weights`) with
/// `1 <= k_i <= cap` and `Σ k_i w_i = total`.
fn for_each_order_vector(weights: &[u32], total: u64, cap: u64, visit: &mut dyn FnMut(&[u64])) {
    fn go(weights: &[u32], rest: u64, cap: u64, k: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
        let Some((&w, tail)) = weights.split_first() else {
            if rest == 0 {
                visit(k);
            }
            return;
        };
        let w = w as u64;
        let tail_min: u64 = tail.iter().map(|&x| x as u64).sum();
        let mut ki = 1;
        while ki <= cap && ki * w + tail_min <= rest {
            k.push(ki);
            go(tail, rest - ki * w, cap, k, visit);
            k.pop();
            ki += 1;
        }
    }
    go(weights, total, cap, &mut Vec::new(), visit);
}

/// `Σ_k u^{Σ_{i∈S}(n-k_i) + n(d-|S|)}` over admissible order vectors.
fn order_vector_sum(g: &MonomialGerm, n: u64) -> RationalFunctionU {
    let support = g.support();
    let weights: Vec<u32> = support.iter().map(|&i| g.exponents[i]).collect();
    let free = n * (g.dim() - support.len()) as u64;
    let mut total = RationalFunctionU::zero();
    for_each_order_vector(&weights, n, n, &mut |k| {
        let e: u64 = k.iter().map(|&ki| n - ki).sum::<u64>() + free;
        total = &total + &RationalFunctionU::u_pow(e as i64);
    });
    total
}

fn point_value(a: &SignAction) -> RationalFunctionU {
    if a.trivial {
        RationalFunctionU::one()
    } else {
        crate::evps::Atom::PointFixed.beta()
    }
}

/// Series of `A_n(f)`.
pub fn arc_beta_naive(
    g: &MonomialGerm,
    a: &SignAction,
    n: u64,
) -> Result<RationalFunctionU, ArcError> {
    check(g, a)?;
    let s = g.support().len() as u32;
    let leading = &RationalFunctionU::u_minus_one_pow(s) * &point_value(a);
    Ok(&leading * &order_vector_sum(g, n))
}

/// Series of the leading-coefficient set `{ρ ∈ (R^*)^S : sign·Π ρ_i^{N_i} = target}`,
/// by orthants: each solvable orthant is a copy of `R^{|S|-1}`, the
/// generator permutes the orthants.
fn leading_set_value(g: &MonomialGerm, a: &SignAction, target: i8) -> RationalFunctionU {
    let support = g.support();
    let s = support.len();
    let flips: u64 = if a.trivial {
        0
    } else {
        support
            .iter()
            .enumerate()
            .filter(|&(_, &i)| a.eps[i] < 0)
            .fold(0, |m, (j, _)| m | 1 << j)
    };
    let solvable = |orthant: u64| {
        let negative = support
            .iter()
            .enumerate()
            .filter(|&(j, &i)| orthant >> j & 1 == 1 && g.exponents[i] % 2 == 1)
            .count();
        let value = if negative % 2 == 0 { g.sign } else { -g.sign };
        value == target
    };
    let count = (0..1u64 << s).filter(|&o| solvable(o)).count() as i64;
    let line = RationalFunctionU::u_pow(s as i64 - 1);
    if a.trivial {
        return &RationalFunctionU::from_int(count) * &line;
    }
    if flips == 0 {
        // every orthant is fixed
        let fixed = &RationalFunctionU::u_pow(s as i64) / &RationalFunctionU::u_minus_one_pow(1);
        return &RationalFunctionU::from_int(count) * &fixed;
    }
    &RationalFunctionU::from_int(count / 2) * &line
}

/// Series of `A_n^±(f)`.
pub fn arc_beta_signed(
    g: &MonomialGerm,
    a: &SignAction,
    n: u64,
    plus: bool,
) -> Result<RationalFunctionU, ArcError> {
    check(g, a)?;
    let w = leading_set_value(g, a, if plus { 1 } else { -1 });
    Ok(&w * &order_vector_sum(g, n))
}

/// `Σ_{1<=n<=order} β(A_n) u^{-nd} T^n` for the requested variant.
pub fn oracle_series(
    g: &MonomialGerm,
    a: &SignAction,
    variant: ZetaVariant,
    order: usize,
) -> Result<TSeriesU, ArcError> {
    check(g, a)?;
    let mut coeffs = vec![RationalFunctionU::zero()];
    for n in 1..=order as u64 {
        let beta = match variant {
            ZetaVariant::Naive => arc_beta_naive(g, a, n)?,
            ZetaVariant::Plus => arc_beta_signed(g, a, n, true)?,
            ZetaVariant::Minus => arc_beta_signed(g, a, n, false)?,
        };
        let scale = RationalFunctionU::u_pow(-((n as i64) * g.dim() as i64));
        coeffs.push(&beta * &scale);
    }
    Ok(TSeriesU::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{ts_expand, IntPolyU, ZetaRational};
    use proptest::prelude::*;

    fn upow(e: i64) -> RationalFunctionU {
        RationalFunctionU::u_pow(e)
    }

    fn x2k(k: u32) -> (MonomialGerm, SignAction) {
        (
            MonomialGerm::new(vec![2 * k], 1).unwrap(),
            SignAction::new(&[-1]).unwrap(),
        )
    }

    #[test]
    fn invariance() {
        let (g, a) = x2k(3);
        assert!(check_invariance(&g, &a));
        let xy = MonomialGerm::new(vec![1, 1], 1).unwrap();
        assert!(!check_invariance(&xy, &SignAction::new(&[-1, 1]).unwrap()));
        assert!(check_invariance(&xy, &SignAction::new(&[-1, -1]).unwrap()));
        assert!(check_invariance(&xy, &SignAction::trivial_group(2)));
        assert_eq!(
            arc_beta_naive(&xy, &SignAction::new(&[-1, 1]).unwrap(), 2),
            Err(ArcError::NotInvariant)
        );
    }

    #[test]
    fn bad_input() {
        assert_eq!(MonomialGerm::new(vec![0, 0], 1), Err(ArcError::NoSupport));
        assert_eq!(MonomialGerm::new(vec![2], 2), Err(ArcError::BadSign(2)));
        let g = MonomialGerm::new(vec![2, 2], 1).unwrap();
        assert!(matches!(
            arc_beta_naive(&g, &SignAction::new(&[-1]).unwrap(), 4),
            Err(ArcError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn even_power_naive() {
        for k in 1..=3u32 {
            let (g, a) = x2k(k);
            for m in 1..=3u64 {
                let n = 2 * k as u64 * m;
                assert_eq!(arc_beta_naive(&g, &a, n).unwrap(), upow((n - m + 1) as i64));
            }
            for n in (1..12u64).filter(|n| n % (2 * k as u64) != 0) {
                assert!(arc_beta_naive(&g, &a, n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn even_power_signed() {
        let (g, a) = x2k(2);
        for m in 1..=3u64 {
            let n = 4 * m;
            assert_eq!(
                arc_beta_signed(&g, &a, n, true).unwrap(),
                upow((n - m) as i64)
            );
            assert!(arc_beta_signed(&g, &a, n, false).unwrap().is_zero());
        }
    }

    #[test]
    fn two_variable_examples() {
        let g = MonomialGerm::new(vec![2, 2], 1).unwrap();
        let a = SignAction::new(&[-1, 1]).unwrap();
        let u_minus_one = RationalFunctionU::from_poly(IntPolyU::u_minus_one());
        assert_eq!(arc_beta_naive(&g, &a, 4).unwrap(), &u_minus_one * &upow(7));
        let two = RationalFunctionU::from_int(2);
        assert_eq!(arc_beta_signed(&g, &a, 4, true).unwrap(), &two * &upow(7));
        assert!(arc_beta_signed(&g, &a, 4, false).unwrap().is_zero());
    }

    #[test]
    fn below_smallest_exponent_is_zero() {
        let g = MonomialGerm::new(vec![3, 5], -1).unwrap();
        let a = SignAction::trivial_group(2);
        assert!(arc_beta_naive(&g, &a, 4).unwrap().is_zero());
    }

    #[test]
    fn series_matches_closed_form() {
        for k in 1..=3u32 {
            let (g, a) = x2k(k);
            let order = 4 * k as usize;
            let naive = oracle_series(&g, &a, ZetaVariant::Naive, order).unwrap();
            let z = &ZetaRational::monomial(1, 1, 0) * &ZetaRational::geometric_factor(1, 2 * k);
            assert_eq!(naive, ts_expand(&z, order).unwrap());
            let plus = oracle_series(&g, &a, ZetaVariant::Plus, order).unwrap();
            assert_eq!(
                plus,
                ts_expand(&ZetaRational::geometric_factor(1, 2 * k), order).unwrap()
            );
            assert!(oracle_series(&g, &a, ZetaVariant::Minus, order)
                .unwrap()
                .is_zero());
        }
        let (g, a) = x2k(1);
        assert!(oracle_series(&g, &a, ZetaVariant::Naive, 0)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn trivial_group_power() {
        for big_n in 1..=4u32 {
            let g = MonomialGerm::new(vec![big_n], 1).unwrap();
            let a = SignAction::trivial_group(1);
            for m in 1..=3u64 {
                let n = big_n as u64 * m;
                let expected =
                    &RationalFunctionU::from_poly(IntPolyU::u_minus_one()) * &upow((n - m) as i64);
                assert_eq!(arc_beta_naive(&g, &a, n).unwrap(), expected);
            }
        }
    }

    fn arb_germ() -> impl Strategy<Value = (Vec<u32>, i64, Vec<i64>, bool)> {
        (1usize..=3).prop_flat_map(|d| {
            (
                proptest::collection::vec(0u32..4, d),
                prop_oneof![Just(1i64), Just(-1i64)],
                proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], d),
                any::<bool>(),
            )
        })
    }

    proptest! {
        #[test]
        fn coordinate_permutation_symmetry((exps, sign, eps, trivial) in arb_germ(), n in 1u64..9, rot in 0usize..3) {
            prop_assume!(exps.iter().any(|&x| x > 0));
            let g = MonomialGerm::new(exps.clone(), sign).unwrap();
            let a = if trivial { SignAction::trivial_group(exps.len()) } else { SignAction::new(&eps).unwrap() };
            prop_assume!(check_invariance(&g, &a));
            let r = rot % exps.len();
            let mut e2 = exps.clone();
            e2.rotate_left(r);
            let mut eps2 = eps.clone();
            eps2.rotate_left(r);
            let g2 = MonomialGerm::new(e2, sign).unwrap();
            let a2 = if trivial { SignAction::trivial_group(exps.len()) } else { SignAction::new(&eps2).unwrap() };
            prop_assert_eq!(arc_beta_naive(&g, &a, n).unwrap(), arc_beta_naive(&g2, &a2, n).unwrap());
            for plus in [true, false] {
                prop_assert_eq!(
                    arc_beta_signed(&g, &a, n, plus).unwrap(),
                    arc_beta_signed(&g2, &a2, n, plus).unwrap()
                );
            }
        }

        /// Every orthant solves exactly one of the two sign equations.
        #[test]
        fn signs_partition_orthants((exps, sign, eps, trivial) in arb_germ(), n in 1u64..9) {
            prop_assume!(exps.iter().any(|&x| x > 0));
            let g = MonomialGerm::new(exps.clone(), sign).unwrap();
            let a = if trivial { SignAction::trivial_group(exps.len()) } else { SignAction::new(&eps).unwrap() };
            prop_assume!(check_invariance(&g, &a));
            let both = &arc_beta_signed(&g, &a, n, true).unwrap() + &arc_beta_signed(&g, &a, n, false).unwrap();
            let s = g.support().len() as i64;
            let flips = !a.is_trivial_group() && g.support().iter().any(|&i| a.eps()[i] < 0);
            let all_orthants = if a.is_trivial_group() || flips {
                let count = if a.is_trivial_group() { 1i64 << s } else { 1i64 << (s - 1) };
                &RationalFunctionU::from_int(count) * &upow(s - 1)
            } else {
                &(&RationalFunctionU::from_int(1i64 << s) * &upow(s)) / &RationalFunctionU::u_minus_one_pow(1)
            };
            prop_assert_eq!(both, &all_orthants * &order_vector_sum(&g, n));
        }

        /// The naive value vanishes exactly when no order vector exists.
        #[test]
        fn naive_vanishes_iff_no_order_vector((exps, sign, _eps, _t) in arb_germ(), n in 1u64..10) {
            prop_assume!(exps.iter().any(|&x| x > 0));
            let g = MonomialGerm::new(exps.clone(), sign).unwrap();
            let a = SignAction::trivial_group(exps.len());
            let support: Vec<u32> = exps.iter().copied().filter(|&x| x > 0).collect();
            let mut any = false;
            for_each_order_vector(&support, n, n, &mut |_| any = true);
            prop_assert_eq!(arc_beta_naive(&g, &a, n).unwrap().is_zero(), !any);
        }
    }
}
