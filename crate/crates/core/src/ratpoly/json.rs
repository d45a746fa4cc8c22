//! JSON encodings.
//!
//! * polynomials in `u`: arrays of decimal integer strings, ascending powers;
//! * rational functions: `{"num": [...], "den": [...]}`;
//! * polynomials in `(u, T)`: arrays of `{"u": k, "t": m, "c": "int"}`;
//! * zeta fractions: `{"num": <bipoly>, "den": <bipoly>}`;
//! * T-series: `{"order": n, "coeffs": [<rational>, ...]}`.
//!
//! Integer coefficients are also accepted as bare JSON numbers on input.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BiPolyUT, IntPolyU, RationalFunctionU, TSeriesU, ZetaRational};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Str(String),
    Num(i64),
}

impl IntRepr {
    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Num(n) => Ok(BigInt::from(n)),
            IntRepr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("invalid integer string {s:?}"))),
        }
    }
}

fn big_to_string(c: &BigInt) -> String {
    c.to_str_radix(10)
}

impl Serialize for IntPolyU {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs().iter().map(big_to_string))
    }
}

impl<'de> Deserialize<'de> for IntPolyU {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<IntRepr>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(IntRepr::into_bigint)
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(IntPolyU::new(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct FractionRepr<P> {
    num: P,
    den: P,
}

impl Serialize for RationalFunctionU {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FractionRepr {
            num: self.num(),
            den: self.den(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunctionU {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FractionRepr::<IntPolyU>::deserialize(d)?;
        RationalFunctionU::new(raw.num, raw.den).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct BiTerm {
    u: u32,
    t: u32,
    c: serde_json::Value,
}

impl Serialize for BiPolyUT {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(&(u, t), c)| BiTerm {
            u,
            t,
            c: serde_json::Value::String(big_to_string(c)),
        }))
    }
}

impl<'de> Deserialize<'de> for BiPolyUT {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<BiTerm>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for term in raw {
            let c = IntRepr::deserialize(term.c)
                .map_err(D::Error::custom)?
                .into_bigint::<D::Error>()?;
            terms.push(((term.u, term.t), c));
        }
        Ok(BiPolyUT::from_terms(terms))
    }
}

impl Serialize for ZetaRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FractionRepr {
            num: &self.num,
            den: &self.den,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FractionRepr::<BiPolyUT>::deserialize(d)?;
        if raw.den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(ZetaRational::new(raw.num, raw.den))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<RationalFunctionU>,
}

impl Serialize for TSeriesU {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TSeriesU {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SeriesRepr::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TSeriesU::from_coeffs(raw.coeffs))
    }
}
