//! Equivariant resolution data: divisors with multiplicities, a finite group
//! permuting them, and the series of the strata orbits.

mod catalog;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evps::{beta_eval, GSpaceExpr};

pub use catalog::{catalog_get, catalog_instances, catalog_names};

/// Maximum number of divisors in one resolution.
pub const MAX_DIVISORS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Divisor {
    pub id: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub nu: u32,
    pub zero_fiber: bool,
}

/// Generators are listed as the images of the divisor ids taken in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: u32,
    #[serde(default)]
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumEntry {
    #[serde(rename = "I")]
    pub ids: Vec<u32>,
    pub beta: GSpaceExpr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_plus: Option<GSpaceExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_minus: Option<GSpaceExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionData {
    pub name: String,
    pub group: GroupSpec,
    pub divisors: Vec<Divisor>,
    pub strata: Vec<StratumEntry>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("parse error at line {line}, column {column} (at {path}): {message}")]
    Parse {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

/// One violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic(pub String);

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A permutation of divisor positions (indices in ascending-id order).
type Perm = Vec<usize>;

impl ResolutionData {
    pub fn divisor(&self, id: u32) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.id == id)
    }

    /// Divisor ids in ascending order.
    pub fn sorted_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.divisors.iter().map(|d| d.id).collect();
        ids.sort_unstable();
        ids
    }

    fn position_map(&self) -> BTreeMap<u32, usize> {
        self.sorted_ids()
            .into_iter()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect()
    }

    /// Generators as permutations of positions. `None` if any generator
    /// is malformed.
    fn generator_perms(&self) -> Option<Vec<Perm>> {
        let pos = self.position_map();
        self.group
            .generators
            .iter()
            .map(|g| {
                if g.len() != pos.len() {
                    return None;
                }
                let perm: Option<Perm> = g.iter().map(|id| pos.get(id).copied()).collect();
                let perm = perm?;
                let distinct: HashSet<_> = perm.iter().collect();
                (distinct.len() == perm.len()).then_some(perm)
            })
            .collect()
    }

    /// All elements of the generated group, as position permutations.
    fn group_elements(&self) -> Option<Vec<Perm>> {
        let gens = self.generator_perms()?;
        let n = self.divisors.len();
        let identity: Perm = (0..n).collect();
        let mut seen: BTreeSet<Perm> = BTreeSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q: Perm = p.iter().map(|&i| g[i]).collect();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Some(seen.into_iter().collect())
    }

    fn mask_of(&self, ids: &[u32]) -> Option<u64> {
        let pos = self.position_map();
        ids.iter()
            .try_fold(0u64, |m, id| pos.get(id).map(|&p| m | 1 << p))
    }

    fn ids_of(&self, mask: u64) -> Vec<u32> {
        self.sorted_ids()
            .into_iter()
            .enumerate()
            .filter(|(p, _)| mask >> p & 1 == 1)
            .map(|(_, id)| id)
            .collect()
    }

    /// Members of the orbit of the subset `ids`, each sorted, in
    /// lexicographic order.
    pub fn orbit_members(&self, ids: &[u32]) -> Vec<Vec<u32>> {
        let (Some(group), Some(mask)) = (self.group_elements(), self.mask_of(ids)) else {
            return vec![sorted(ids)];
        };
        let images: BTreeSet<Vec<u32>> = group
            .iter()
            .map(|g| self.ids_of(apply_perm(g, mask)))
            .collect();
        images.into_iter().collect()
    }
}

fn sorted(ids: &[u32]) -> Vec<u32> {
    let mut v = ids.to_vec();
    v.sort_unstable();
    v
}

fn apply_perm(g: &Perm, mask: u64) -> u64 {
    g.iter()
        .enumerate()
        .filter(|(p, _)| mask >> p & 1 == 1)
        .fold(0, |m, (_, &q)| m | 1 << q)
}

fn check_expr(label: &str, expr: &GSpaceExpr, out: &mut Vec<Diagnostic>) {
    if let Err(e) = beta_eval(expr) {
        out.push(Diagnostic(format!("{label}: {e}")));
    }
}

/// Reports every violated invariant. An empty result means `res` is valid.
pub fn validate_resolution(res: &ResolutionData) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |s: String| out.push(Diagnostic(s));

    if res.divisors.len() > MAX_DIVISORS {
        push(format!(
            "{} divisors exceed the limit of {MAX_DIVISORS}",
            res.divisors.len()
        ));
    }
    let mut ids = HashSet::new();
    for d in &res.divisors {
        if !ids.insert(d.id) {
            push(format!("duplicate divisor id {}", d.id));
        }
        if d.n == 0 {
            push(format!("divisor E{}: N must be positive", d.id));
        }
        if d.nu == 0 {
            push(format!("divisor E{}: nu must be positive", d.id));
        }
    }
    if res.group.order == 0 {
        push("group order must be positive".into());
    }

    let sorted_ids = res.sorted_ids();
    let mut generators_ok = ids.len() == res.divisors.len() && res.divisors.len() <= MAX_DIVISORS;
    for (k, g) in res.group.generators.iter().enumerate() {
        if g.len() != sorted_ids.len() {
            push(format!(
                "generator {k} lists {} images for {} divisors",
                g.len(),
                sorted_ids.len()
            ));
            generators_ok = false;
            continue;
        }
        if let Some(bad) = g.iter().find(|id| !ids.contains(id)) {
            push(format!("generator {k} maps to unknown divisor id {bad}"));
            generators_ok = false;
            continue;
        }
        if g.iter().collect::<HashSet<_>>().len() != g.len() {
            push(format!("generator {k} is not a bijection"));
            generators_ok = false;
            continue;
        }
        for (&src, &dst) in sorted_ids.iter().zip(g) {
            let (a, b) = (res.divisor(src).unwrap(), res.divisor(dst).unwrap());
            if a.n != b.n {
                push(format!(
                    "generator does not preserve N: generator {k} maps E{src} (N={}) to E{dst} (N={})",
                    a.n, b.n
                ));
            }
            if a.nu != b.nu {
                push(format!(
                    "generator does not preserve nu: generator {k} maps E{src} (nu={}) to E{dst} (nu={})",
                    a.nu, b.nu
                ));
            }
            if a.zero_fiber != b.zero_fiber {
                push(format!(
                    "generator does not preserve zero_fiber: generator {k} maps E{src} to E{dst}"
                ));
            }
        }
        if res.group.order > 0 {
            let pos = res.position_map();
            let perm: Perm = g.iter().map(|id| pos[id]).collect();
            let mut power: Perm = (0..perm.len()).collect();
            for _ in 0..res.group.order {
                power = power.iter().map(|&i| perm[i]).collect();
            }
            if power.iter().enumerate().any(|(i, &j)| i != j) {
                push(format!(
                    "generator {k} has order not dividing the group order {}",
                    res.group.order
                ));
            }
        }
    }

    let mut strata_ok = true;
    for (s, entry) in res.strata.iter().enumerate() {
        let label = format!("stratum {s} {:?}", entry.ids);
        if entry.ids.is_empty() {
            push(format!("{label}: empty divisor set"));
            strata_ok = false;
            continue;
        }
        if entry.ids.iter().collect::<HashSet<_>>().len() != entry.ids.len() {
            push(format!("{label}: repeated divisor id"));
            strata_ok = false;
        }
        let unknown: Vec<_> = entry.ids.iter().filter(|id| !ids.contains(id)).collect();
        if !unknown.is_empty() {
            push(format!("{label}: unknown divisor ids {unknown:?}"));
            strata_ok = false;
            continue;
        }
        if !entry
            .ids
            .iter()
            .any(|&id| res.divisor(id).is_some_and(|d| d.zero_fiber))
        {
            push(format!("{label}: does not meet the zero fiber"));
        }
    }
    for (s, entry) in res.strata.iter().enumerate() {
        let label = format!("stratum {s} {:?}", entry.ids);
        check_expr(&format!("{label} beta"), &entry.beta, &mut out);
        if let Some(x) = &entry.beta_plus {
            check_expr(&format!("{label} beta_plus"), x, &mut out);
        }
        if let Some(x) = &entry.beta_minus {
            check_expr(&format!("{label} beta_minus"), x, &mut out);
        }
    }

    if generators_ok && strata_ok {
        let mut seen: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for (s, entry) in res.strata.iter().enumerate() {
            let rep = res.orbit_members(&entry.ids).swap_remove(0);
            if let Some(first) = seen.insert(rep, s) {
                out.push(Diagnostic(format!(
                    "duplicate orbit: strata {first} and {s} lie in the same orbit"
                )));
            }
        }
    }
    out
}

/// For each declared stratum, the lexicographically least member of its
/// orbit and the orbit size.
pub fn subset_orbits(res: &ResolutionData) -> Vec<(Vec<u32>, usize)> {
    res.strata
        .iter()
        .map(|entry| {
            let members = res.orbit_members(&entry.ids);
            (members[0].clone(), members.len())
        })
        .collect()
}

fn classify(err: serde_path_to_error::Error<serde_json::Error>) -> ResolutionError {
    let path = err.path().to_string();
    let inner = err.into_inner();
    match inner.classify() {
        serde_json::error::Category::Data => ResolutionError::Schema {
            path,
            message: inner.to_string(),
        },
        _ => ResolutionError::Parse {
            line: inner.line(),
            column: inner.column(),
            path,
            message: inner.to_string(),
        },
    }
}

/// Parses resolution JSON. Syntax errors are [`ResolutionError::Parse`];
/// wrong types, unknown atoms and unknown divisor ids are
/// [`ResolutionError::Schema`].
pub fn res_parse(text: &[u8]) -> Result<ResolutionData, ResolutionError> {
    let mut de = serde_json::Deserializer::from_slice(text);
    let res: ResolutionData = serde_path_to_error::deserialize(&mut de).map_err(classify)?;
    de.end().map_err(|e| ResolutionError::Parse {
        line: e.line(),
        column: e.column(),
        path: ".".into(),
        message: e.to_string(),
    })?;
    let ids: HashSet<u32> = res.divisors.iter().map(|d| d.id).collect();
    for (s, entry) in res.strata.iter().enumerate() {
        if let Some(bad) = entry.ids.iter().find(|id| !ids.contains(id)) {
            return Err(ResolutionError::Schema {
                path: format!("strata[{s}].I"),
                message: format!("unknown divisor id {bad}"),
            });
        }
        let exprs = [
            ("beta", Some(&entry.beta)),
            ("beta_plus", entry.beta_plus.as_ref()),
            ("beta_minus", entry.beta_minus.as_ref()),
        ];
        for (field, expr) in exprs {
            if let Some(Err(e)) = expr.map(beta_eval) {
                return Err(ResolutionError::Schema {
                    path: format!("strata[{s}].{field}"),
                    message: e.to_string(),
                });
            }
        }
    }
    Ok(res)
}

pub fn res_serialize(res: &ResolutionData) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(res).expect("resolution data serializes");
    bytes.push(b'\n');
    bytes
}
