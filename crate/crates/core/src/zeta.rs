//! The Denef–Loeser formula: naive and signed equivariant zeta functions
//! from resolution data, their T-expansions and comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evps::{beta_eval, GSpaceExpr};
use crate::ratpoly::{
    birat_eq, ts_expand, BiPolyUT, IntPolyU, RatPolyError, RationalFunctionU, TSeriesU,
    ZetaRational,
};
use crate::resolution::{validate_resolution, Diagnostic, ResolutionData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZetaVariant {
    Naive,
    Plus,
    Minus,
}

impl fmt::Display for ZetaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZetaVariant::Naive => "naive",
            ZetaVariant::Plus => "plus",
            ZetaVariant::Minus => "minus",
        })
    }
}

impl FromStr for ZetaVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(ZetaVariant::Naive),
            "plus" => Ok(ZetaVariant::Plus),
            "minus" => Ok(ZetaVariant::Minus),
            _ => Err(format!("unknown variant {s:?}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("invalid resolution: {}", join(.0))]
    InvalidResolution(Vec<Diagnostic>),
    #[error(transparent)]
    Arithmetic(#[from] RatPolyError),
}

fn join(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.0.as_str())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One summand: `coeff * Π T^{N}/(u^{ν} - T^{N})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumTerm {
    pub ids: Vec<u32>,
    pub coeff: RationalFunctionU,
    /// `(ν, N)` per divisor of the stratum, in id order.
    pub factors: Vec<(u32, u32)>,
}

fn checked(res: &ResolutionData) -> Result<(), ZetaError> {
    let diags = validate_resolution(res);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(ZetaError::InvalidResolution(diags))
    }
}

/// The nonzero summands of the requested variant, in stratum order.
pub fn stratum_terms(
    res: &ResolutionData,
    variant: ZetaVariant,
) -> Result<Vec<StratumTerm>, ZetaError> {
    checked(res)?;
    let mut terms = Vec::new();
    for entry in &res.strata {
        let (expr, shift): (Option<&GSpaceExpr>, u32) = match variant {
            ZetaVariant::Naive => (Some(&entry.beta), 0),
            ZetaVariant::Plus => (entry.beta_plus.as_ref(), 1),
            ZetaVariant::Minus => (entry.beta_minus.as_ref(), 1),
        };
        let Some(expr) = expr else { continue };
        let beta = beta_eval(expr).expect("validated");
        let exponent = entry.ids.len() as u32 - shift;
        let coeff = &RationalFunctionU::u_minus_one_pow(exponent) * &beta;
        if coeff.is_zero() {
            continue;
        }
        let mut ids = entry.ids.clone();
        ids.sort_unstable();
        let factors = ids
            .iter()
            .map(|&id| {
                let d = res.divisor(id).expect("validated");
                (d.nu, d.n)
            })
            .collect();
        terms.push(StratumTerm {
            ids,
            coeff,
            factors,
        });
    }
    Ok(terms)
}

fn content_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b).abs()
}

/// Sums the terms over the common denominator
/// `L(u) · Π (u^ν - T^N)^{m(ν,N)}`, where `L` is the lcm of the
/// coefficient denominators and `m(ν,N)` the largest multiplicity of the
/// factor within one term.
pub fn combine_terms(terms: &[StratumTerm]) -> ZetaRational {
    if terms.is_empty() {
        return ZetaRational::zero();
    }
    let mut lcm_poly = IntPolyU::one();
    let mut lcm_content = BigInt::one();
    for t in terms {
        let den = t.coeff.den();
        lcm_poly = lcm_poly.lcm_primitive(&den.primitive_part());
        lcm_content = content_lcm(&lcm_content, &den.content());
    }
    let common_u = lcm_poly.scale(&lcm_content);

    let multiplicities = |t: &StratumTerm| {
        let mut m: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for &f in &t.factors {
            *m.entry(f).or_insert(0) += 1;
        }
        m
    };
    let mut max_mult: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for t in terms {
        for (f, k) in multiplicities(t) {
            let e = max_mult.entry(f).or_insert(0);
            *e = (*e).max(k);
        }
    }

    let mut den = BiPolyUT::from_poly_u(&common_u);
    for (&(nu, n), &m) in &max_mult {
        den = &den * &BiPolyUT::u_pow_minus_t_pow(nu, n).pow(m);
    }

    let mut num = BiPolyUT::zero();
    for t in terms {
        let scale = common_u
            .div_exact(t.coeff.den())
            .expect("denominator divides the lcm");
        let t_exp: u32 = t.factors.iter().map(|&(_, n)| n).sum();
        let mut term = BiPolyUT::from_poly_u_times_t(&(t.coeff.num() * &scale), t_exp);
        let own = multiplicities(t);
        for (&f, &m) in &max_mult {
            let missing = m - own.get(&f).copied().unwrap_or(0);
            if missing > 0 {
                term = &term * &BiPolyUT::u_pow_minus_t_pow(f.0, f.1).pow(missing);
            }
        }
        num = &num + &term;
    }
    if num.is_zero() {
        return ZetaRational::zero();
    }
    ZetaRational::new(num, den)
}

/// `Σ (u-1)^{|I|} β(E⁰_I) Π T^{N_i}/(u^{ν_i} - T^{N_i})` over the declared strata.
pub fn dl_naive(res: &ResolutionData) -> Result<ZetaRational, ZetaError> {
    Ok(combine_terms(&stratum_terms(res, ZetaVariant::Naive)?))
}

/// As [`dl_naive`] with `(u-1)^{|I|-1}` and the covering values for the
/// requested sign. Strata without that value contribute zero.
pub fn dl_signed(res: &ResolutionData, plus: bool) -> Result<ZetaRational, ZetaError> {
    let variant = if plus {
        ZetaVariant::Plus
    } else {
        ZetaVariant::Minus
    };
    Ok(combine_terms(&stratum_terms(res, variant)?))
}

pub fn dl_variant(res: &ResolutionData, variant: ZetaVariant) -> Result<ZetaRational, ZetaError> {
    Ok(combine_terms(&stratum_terms(res, variant)?))
}

pub fn zeta_expand(z: &ZetaRational, order: usize) -> Result<TSeriesU, RatPolyError> {
    ts_expand(z, order)
}

pub fn zeta_eq(a: &ZetaRational, b: &ZetaRational) -> bool {
    birat_eq(a, b)
}

fn u_power_text(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "u".into(),
        _ => format!("u^{e}"),
    }
}

fn factor_text(nu: u32, n: u32) -> String {
    let mono = |nu: u32| {
        let u = u_power_text(-(nu as i64));
        let t = match n {
            1 => "T".to_string(),
            _ => format!("T^{n}"),
        };
        if u.is_empty() {
            t
        } else {
            format!("{u} {t}")
        }
    };
    format!("{}/(1-{})", mono(nu), mono(nu))
}

/// Sum-of-products form, one summand per stratum, e.g.
/// `(u^2) * u^-2 T^2/(1-u^-2 T^2) + ...`; `0` when there are no terms.
pub fn display_terms(terms: &[StratumTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| {
            let mut parts = Vec::new();
            if t.coeff != RationalFunctionU::one() {
                parts.push(format!("({})", t.coeff));
            }
            parts.extend(t.factors.iter().map(|&(nu, n)| factor_text(nu, n)));
            parts.join(" * ")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct ComparisonReport {
    pub equal: bool,
    pub variant: ZetaVariant,
    pub first_differing_T_order: Option<usize>,
    pub lhs_coeff: Option<RationalFunctionU>,
    pub rhs_coeff: Option<RationalFunctionU>,
}

/// Compares the requested variant of two resolutions. When they differ,
/// reports the lowest power of `T` up to `order` whose coefficients differ.
pub fn distinguish(
    a: &ResolutionData,
    b: &ResolutionData,
    variant: ZetaVariant,
    order: usize,
) -> Result<ComparisonReport, ZetaError> {
    let za = dl_variant(a, variant)?;
    let zb = dl_variant(b, variant)?;
    let equal = zeta_eq(&za, &zb);
    let mut report = ComparisonReport {
        equal,
        variant,
        first_differing_T_order: None,
        lhs_coeff: None,
        rhs_coeff: None,
    };
    if !equal {
        let sa = zeta_expand(&za, order)?;
        let sb = zeta_expand(&zb, order)?;
        if let Some(n) = sa.first_difference(&sb) {
            report.first_differing_T_order = Some(n);
            report.lhs_coeff = Some(sa.coeff(n).clone());
            report.rhs_coeff = Some(sb.coeff(n).clone());
        }
    }
    Ok(report)
}

/// Machine-readable result of one evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaOutput {
    pub variant: ZetaVariant,
    pub rational: ZetaRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<TSeriesU>,
    pub display: String,
}

pub fn evaluate(
    res: &ResolutionData,
    variant: ZetaVariant,
    expand: Option<usize>,
) -> Result<ZetaOutput, ZetaError> {
    let terms = stratum_terms(res, variant)?;
    let rational = combine_terms(&terms);
    let series = expand.map(|n| zeta_expand(&rational, n)).transpose()?;
    Ok(ZetaOutput {
        variant,
        rational,
        series,
        display: display_terms(&terms),
    })
}
