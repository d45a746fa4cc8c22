//! Equivariant virtual Poincaré series of symbolic G-AS sets.
//!
//! A [`GSpaceExpr`] is built from catalogued atoms with known series and
//! the operations the series is known to respect: disjoint union, removal
//! of a closed invariant subset, product with an affine space, and product
//! with punctured lines. There is deliberately no general product node.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::ratpoly::{IntPolyU, RationalFunctionU};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvpsError {
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
}

/// Catalogued G-AS sets. Names carry the action; the engine never looks at
/// actions, only at the series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// A point (necessarily fixed).
    PointFixed,
    /// Two points exchanged by an involution.
    PointPairSwapped,
    /// `R^n` with any linear action.
    Affine(u32),
    /// A circle with an involution fixing at least one point.
    CircleWithFixedPoint,
    /// The projective line, as the exceptional divisor of an equivariant
    /// point blow-up of the plane.
    ProjectiveLineG,
    /// The 2-sphere with the central symmetry.
    SphereFree,
    /// The 2-sphere with an involution fixing at least one point.
    SphereWithFixedPoint,
    /// Trivial-group counterparts (virtual Poincaré polynomials).
    PointTrivial,
    CircleTrivial,
    AffineTrivial(u32),
}

impl Atom {
    pub fn beta(self) -> RationalFunctionU {
        let u = || RationalFunctionU::u_pow(1);
        let point = || {
            RationalFunctionU::new(IntPolyU::u(), IntPolyU::u_minus_one())
                .expect("nonzero denominator")
        };
        match self {
            Atom::PointFixed => point(),
            Atom::PointPairSwapped => RationalFunctionU::one(),
            Atom::Affine(n) => &RationalFunctionU::u_pow(n as i64) * &point(),
            Atom::CircleWithFixedPoint | Atom::ProjectiveLineG => &u() + &(&point() + &point()),
            Atom::SphereFree => RationalFunctionU::from_poly(IntPolyU::from_i64s(&[1, 1, 1])),
            Atom::SphereWithFixedPoint => {
                &RationalFunctionU::from_poly(IntPolyU::from_i64s(&[0, 1, 1]))
                    + &(&point() + &point())
            }
            Atom::PointTrivial => RationalFunctionU::one(),
            Atom::CircleTrivial => RationalFunctionU::from_poly(IntPolyU::from_i64s(&[1, 1])),
            Atom::AffineTrivial(n) => RationalFunctionU::u_pow(n as i64),
        }
    }

    /// The fixed (non-parametric) atoms in catalog order.
    const FIXED: [Atom; 8] = [
        Atom::PointFixed,
        Atom::PointPairSwapped,
        Atom::CircleWithFixedPoint,
        Atom::ProjectiveLineG,
        Atom::SphereFree,
        Atom::SphereWithFixedPoint,
        Atom::PointTrivial,
        Atom::CircleTrivial,
    ];
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::PointFixed => write!(f, "point_fixed"),
            Atom::PointPairSwapped => write!(f, "point_pair_swapped"),
            Atom::Affine(n) => write!(f, "affine({n})"),
            Atom::CircleWithFixedPoint => write!(f, "circle_with_fixed_point"),
            Atom::ProjectiveLineG => write!(f, "projective_line_G"),
            Atom::SphereFree => write!(f, "sphere_free"),
            Atom::SphereWithFixedPoint => write!(f, "sphere_with_fixed_point"),
            Atom::PointTrivial => write!(f, "point_trivial"),
            Atom::CircleTrivial => write!(f, "circle_trivial"),
            Atom::AffineTrivial(n) => write!(f, "affine_trivial({n})"),
        }
    }
}

fn parse_param(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()
}

impl FromStr for Atom {
    type Err = EvpsError;

    fn from_str(name: &str) -> Result<Self, Self::Err> {
        if let Some(a) = Atom::FIXED.iter().find(|a| a.to_string() == name) {
            return Ok(*a);
        }
        if let Some(n) = parse_param(name, "affine_trivial") {
            return Ok(Atom::AffineTrivial(n));
        }
        if let Some(n) = parse_param(name, "affine") {
            return Ok(Atom::Affine(n));
        }
        Err(EvpsError::UnknownAtom(name.to_string()))
    }
}

/// Catalog listing in a fixed order. Parametric families are listed for
/// `n = 0..=3`; any `n` is accepted by lookup.
pub fn atom_table() -> Vec<(String, RationalFunctionU)> {
    let mut atoms: Vec<Atom> = Atom::FIXED.to_vec();
    atoms.extend((0..=3).map(Atom::Affine));
    atoms.extend((0..=3).map(Atom::AffineTrivial));
    atoms
        .into_iter()
        .map(|a| (a.to_string(), a.beta()))
        .collect()
}

/// Symbolic G-AS set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GSpaceExpr {
    Atom {
        name: String,
    },
    Rational {
        value: RationalFunctionU,
    },
    DisjointUnion {
        parts: Vec<GSpaceExpr>,
    },
    ClosedComplement {
        whole: Box<GSpaceExpr>,
        closed_part: Box<GSpaceExpr>,
    },
    ProductWithAffine {
        base: Box<GSpaceExpr>,
        n: u32,
    },
    ProductWithPuncturedLines {
        base: Box<GSpaceExpr>,
        m: u32,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum TaggedExpr {
    Atom {
        name: String,
    },
    Rational {
        value: RationalFunctionU,
    },
    DisjointUnion {
        parts: Vec<GSpaceExpr>,
    },
    ClosedComplement {
        whole: Box<GSpaceExpr>,
        closed_part: Box<GSpaceExpr>,
    },
    ProductWithAffine {
        base: Box<GSpaceExpr>,
        n: u32,
    },
    ProductWithPuncturedLines {
        base: Box<GSpaceExpr>,
        m: u32,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExprRepr {
    Name(String),
    Node(TaggedExpr),
}

/// Accepts the tagged object form and, for atoms, a bare name string.
impl<'de> Deserialize<'de> for GSpaceExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match ExprRepr::deserialize(d)? {
            ExprRepr::Name(name) => GSpaceExpr::Atom { name },
            ExprRepr::Node(node) => match node {
                TaggedExpr::Atom { name } => GSpaceExpr::Atom { name },
                TaggedExpr::Rational { value } => GSpaceExpr::Rational { value },
                TaggedExpr::DisjointUnion { parts } => GSpaceExpr::DisjointUnion { parts },
                TaggedExpr::ClosedComplement { whole, closed_part } => {
                    GSpaceExpr::ClosedComplement { whole, closed_part }
                }
                TaggedExpr::ProductWithAffine { base, n } => {
                    GSpaceExpr::ProductWithAffine { base, n }
                }
                TaggedExpr::ProductWithPuncturedLines { base, m } => {
                    GSpaceExpr::ProductWithPuncturedLines { base, m }
                }
            },
        })
    }
}

impl GSpaceExpr {
    pub fn atom(a: Atom) -> Self {
        GSpaceExpr::Atom {
            name: a.to_string(),
        }
    }

    pub fn rational(value: RationalFunctionU) -> Self {
        GSpaceExpr::Rational { value }
    }

    pub fn union(parts: Vec<GSpaceExpr>) -> Self {
        GSpaceExpr::DisjointUnion { parts }
    }

    pub fn empty() -> Self {
        GSpaceExpr::DisjointUnion { parts: Vec::new() }
    }

    /// `whole` minus the disjoint union of `removed`.
    pub fn minus(whole: GSpaceExpr, removed: Vec<GSpaceExpr>) -> Self {
        GSpaceExpr::ClosedComplement {
            whole: Box::new(whole),
            closed_part: Box::new(GSpaceExpr::union(removed)),
        }
    }

    pub fn times_affine(self, n: u32) -> Self {
        GSpaceExpr::ProductWithAffine {
            base: Box::new(self),
            n,
        }
    }

    pub fn times_punctured_lines(self, m: u32) -> Self {
        GSpaceExpr::ProductWithPuncturedLines {
            base: Box::new(self),
            m,
        }
    }

    /// Names of all atoms referenced, in traversal order.
    pub fn atom_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            GSpaceExpr::Atom { name } => out.push(name),
            GSpaceExpr::Rational { .. } => {}
            GSpaceExpr::DisjointUnion { parts } => parts.iter().for_each(|p| p.collect_atoms(out)),
            GSpaceExpr::ClosedComplement { whole, closed_part } => {
                whole.collect_atoms(out);
                closed_part.collect_atoms(out);
            }
            GSpaceExpr::ProductWithAffine { base, .. }
            | GSpaceExpr::ProductWithPuncturedLines { base, .. } => base.collect_atoms(out),
        }
    }
}

/// Evaluates the series of `x` by structural recursion.
pub fn beta_eval(x: &GSpaceExpr) -> Result<RationalFunctionU, EvpsError> {
    Ok(match x {
        GSpaceExpr::Atom { name } => name.parse::<Atom>()?.beta(),
        GSpaceExpr::Rational { value } => value.clone(),
        GSpaceExpr::DisjointUnion { parts } => parts
            .iter()
            .map(beta_eval)
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .sum(),
        GSpaceExpr::ClosedComplement { whole, closed_part } => {
            &beta_eval(whole)? - &beta_eval(closed_part)?
        }
        GSpaceExpr::ProductWithAffine { base, n } => {
            &RationalFunctionU::u_pow(*n as i64) * &beta_eval(base)?
        }
        GSpaceExpr::ProductWithPuncturedLines { base, m } => {
            &RationalFunctionU::u_minus_one_pow(*m) * &beta_eval(base)?
        }
    })
}
