//! Cohomology of cyclic groups with GF(2) coefficients, Hochschild–Serre
//! pages, and assembly of equivariant Betti series.
//!
//! Differentials are never computed here: callers declare their ranks, as
//! they come from geometric arguments outside linear algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratpoly::{IntPolyU, RationalFunctionU};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("action matrix must be {dim}x{dim}")]
    BadDimensions { dim: usize },
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("action raised to the group order {order} is not the identity")]
    ActionOrder { order: u32 },
    #[error("invalid bit string {0:?}")]
    BadBits(String),
    #[error("d^{r} from ({p},{q}) declares rank {rank}, but only {available} is available")]
    RankTooLarge {
        r: u32,
        p: i64,
        q: i64,
        rank: u64,
        available: u64,
    },
    #[error("differential d^{r} must have r >= 2")]
    BadPageIndex { r: u32 },
    #[error("degree {degree}: page gives {found}, tail specification expects {expected}")]
    TailMismatch {
        degree: i64,
        expected: u64,
        found: u64,
    },
}

/// Dense matrix over GF(2), rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            bits: vec![vec![0; cols.div_ceil(64)]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Parses row-major bit strings such as `["01", "10"]`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, CohomologyError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(CohomologyError::BadBits(row.to_string()));
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(CohomologyError::BadBits(row.to_string())),
                }
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i][j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().flatten().all(|&w| w == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, o) in out.bits.iter_mut().zip(&other.bits) {
            for (w, x) in r.iter_mut().zip(o) {
                *w ^= x;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for (w, x) in out.bits[i].iter_mut().zip(&other.bits[k]) {
                        *w ^= x;
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.bits.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[word] & bit != 0 {
                    for (w, x) in row.iter_mut().zip(&pivot_row) {
                        *w ^= x;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix{:?}", self.to_rows())
    }
}

/// A GF(2)-module with an action of the cyclic group of order
/// `group_order`, given by the matrix of a generator `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGModule {
    action: F2Matrix,
    group_order: u32,
}

impl CyclicGModule {
    pub fn new(action: F2Matrix, group_order: u32) -> Result<Self, CohomologyError> {
        if action.rows() != action.cols() {
            return Err(CohomologyError::BadDimensions { dim: action.rows() });
        }
        if group_order == 0 {
            return Err(CohomologyError::ZeroOrder);
        }
        let mut power = F2Matrix::identity(action.rows());
        for _ in 0..group_order {
            power = power.mul(&action);
        }
        if power != F2Matrix::identity(action.rows()) {
            return Err(CohomologyError::ActionOrder { order: group_order });
        }
        Ok(Self {
            action,
            group_order,
        })
    }

    pub fn trivial(dim: usize, group_order: u32) -> Self {
        Self::new(F2Matrix::identity(dim), group_order).expect("identity has any order")
    }

    pub fn dim(&self) -> usize {
        self.action.rows()
    }

    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    pub fn action(&self) -> &F2Matrix {
        &self.action
    }
}

/// `N = s + s^2 + ... + s^d`.
pub fn norm_element(m: &CyclicGModule) -> F2Matrix {
    let n = m.dim();
    let mut power = F2Matrix::identity(n);
    let mut sum = F2Matrix::zeros(n, n);
    for _ in 0..m.group_order {
        power = power.mul(&m.action);
        sum = sum.add(&power);
    }
    sum
}

/// `dim H^n(G, M)` over GF(2) for cyclic `G`:
/// `H^0 = M^G`, `H^{even>0} = M^G / N M`, `H^{odd} = ker N / (1+s) M`.
pub fn group_cohomology_dim(m: &CyclicGModule, n: u32) -> u64 {
    let one_plus_s = m.action.add(&F2Matrix::identity(m.dim()));
    let invariants = one_plus_s.nullity();
    if n == 0 {
        return invariants as u64;
    }
    let norm = norm_element(m);
    if n.is_multiple_of(2) {
        (invariants - norm.rank()) as u64
    } else {
        (norm.nullity() - one_plus_s.rank()) as u64
    }
}

/// Entries `E_{p,q}` with `p <= 0`, `q >= 0`. Missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectralPage {
    dims: BTreeMap<(i64, i64), u64>,
}

impl SpectralPage {
    pub fn get(&self, p: i64, q: i64) -> u64 {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: i64, q: i64, dim: u64) {
        if dim == 0 {
            self.dims.remove(&(p, q));
        } else {
            self.dims.insert((p, q), dim);
        }
    }

    /// Nonzero entries as `(p, q, dim)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.dims.iter().map(|(&(p, q), &d)| (p, q, d))
    }

    /// Sum of the entries on the anti-diagonal `p + q = n`.
    pub fn total_degree_dim(&self, n: i64) -> u64 {
        self.entries()
            .filter(|&(p, q, _)| p + q == n)
            .map(|(_, _, d)| d)
            .sum()
    }
}

/// `E^2_{p,q} = H^{-p}(G, H_q)` for `p_min <= p <= 0`.
pub fn hs_e2_page(homology: &[(i64, CyclicGModule)], p_min: i64) -> SpectralPage {
    let mut page = SpectralPage::default();
    for (q, module) in homology {
        for p in p_min..=0 {
            page.set(p, *q, group_cohomology_dim(module, (-p) as u32));
        }
    }
    page
}

/// A declared differential `d^r : E_{p,q} -> E_{p-r, q+r-1}` of the given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRank {
    pub r: u32,
    pub p: i64,
    pub q: i64,
    pub rank: u64,
}

impl DifferentialRank {
    pub fn target(&self) -> (i64, i64) {
        (self.p - self.r as i64, self.q + self.r as i64 - 1)
    }
}

/// Subtracts each declared rank from its source and target, in ascending
/// `r` (declaration order kept within a page).
pub fn apply_differentials(
    page: &SpectralPage,
    ranks: &[DifferentialRank],
) -> Result<SpectralPage, CohomologyError> {
    let mut sorted = ranks.to_vec();
    sorted.sort_by_key(|d| d.r);
    let mut out = page.clone();
    for d in sorted {
        if d.r < 2 {
            return Err(CohomologyError::BadPageIndex { r: d.r });
        }
        let (tp, tq) = d.target();
        let available = out.get(d.p, d.q).min(out.get(tp, tq));
        if d.rank > available {
            return Err(CohomologyError::RankTooLarge {
                r: d.r,
                p: d.p,
                q: d.q,
                rank: d.rank,
                available,
            });
        }
        out.set(d.p, d.q, out.get(d.p, d.q) - d.rank);
        out.set(tp, tq, out.get(tp, tq) - d.rank);
    }
    Ok(out)
}

/// Below `stable_below` every total degree has dimension `tail_dim`.
/// `explicit`, when non-empty, lists the expected dimensions from
/// `stable_below` upward and is checked against the page.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailSpec {
    pub stable_below: i64,
    pub tail_dim: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub explicit: BTreeMap<i64, u64>,
}

/// Width of the window below `stable_below` on which the tail is checked.
const TAIL_WINDOW: i64 = 3;

fn checked_degrees(
    page: &SpectralPage,
    tail: &TailSpec,
) -> Result<BTreeMap<i64, u64>, CohomologyError> {
    for degree in (tail.stable_below - TAIL_WINDOW)..tail.stable_below {
        let found = page.total_degree_dim(degree);
        if found != tail.tail_dim {
            return Err(CohomologyError::TailMismatch {
                degree,
                expected: tail.tail_dim,
                found,
            });
        }
    }
    let mut degrees = BTreeMap::new();
    for (p, q, d) in page.entries() {
        if p + q >= tail.stable_below {
            *degrees.entry(p + q).or_insert(0) += d;
        }
    }
    for (&degree, &expected) in &tail.explicit {
        let found = degrees.get(&degree).copied().unwrap_or(0);
        if found != expected {
            return Err(CohomologyError::TailMismatch {
                degree,
                expected,
                found,
            });
        }
    }
    Ok(degrees)
}

/// `Σ_{n >= n0} dim_n u^n + tail_dim · u^{n0} / (u - 1)`.
pub fn betti_series(
    page: &SpectralPage,
    tail: &TailSpec,
) -> Result<RationalFunctionU, CohomologyError> {
    let degrees = checked_degrees(page, tail)?;
    let head: RationalFunctionU = degrees
        .iter()
        .map(|(&n, &d)| &RationalFunctionU::from_int(d as i64) * &RationalFunctionU::u_pow(n))
        .sum();
    let tail_part = &(&RationalFunctionU::from_int(tail.tail_dim as i64)
        * &RationalFunctionU::u_pow(tail.stable_below))
        / &RationalFunctionU::from_poly(IntPolyU::u_minus_one());
    Ok(&head + &tail_part)
}

fn monomial_text(c: u64, e: i64) -> String {
    let coeff = if c == 1 && e != 0 {
        String::new()
    } else {
        c.to_string()
    };
    match e {
        0 => coeff,
        1 => format!("{coeff}u"),
        _ => format!("{coeff}u^{e}"),
    }
}

/// The series as an explicit head plus geometric tail, e.g.
/// `u^2+u+2u/(u-1)`.
pub fn betti_series_display(
    page: &SpectralPage,
    tail: &TailSpec,
) -> Result<String, CohomologyError> {
    let degrees = checked_degrees(page, tail)?;
    let mut parts: Vec<String> = degrees
        .iter()
        .rev()
        .filter(|(_, &d)| d > 0)
        .map(|(&n, &d)| monomial_text(d, n))
        .collect();
    if tail.tail_dim > 0 {
        parts.push(format!(
            "{}/(u-1)",
            monomial_text(tail.tail_dim, tail.stable_below)
        ));
    }
    Ok(if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    })
}

/// JSON form of a module: `{dim, group_order, action: [bit rows]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dim: usize,
    pub group_order: u32,
    pub action: Vec<String>,
}

impl TryFrom<ModuleJson> for CyclicGModule {
    type Error = CohomologyError;
    fn try_from(j: ModuleJson) -> Result<Self, CohomologyError> {
        let action = if j.dim == 0 {
            F2Matrix::zeros(0, 0)
        } else {
            F2Matrix::from_rows(&j.action)?
        };
        if action.rows() != j.dim || action.cols() != j.dim {
            return Err(CohomologyError::BadDimensions { dim: j.dim });
        }
        CyclicGModule::new(action, j.group_order)
    }
}

impl From<&CyclicGModule> for ModuleJson {
    fn from(m: &CyclicGModule) -> Self {
        ModuleJson {
            dim: m.dim(),
            group_order: m.group_order,
            action: m.action.to_rows(),
        }
    }
}

/// Page JSON: sparse `(p, q, dim)` triples.
pub fn page_to_triples(page: &SpectralPage) -> Vec<(i64, i64, u64)> {
    page.entries().collect()
}

pub fn page_from_triples(triples: &[(i64, i64, u64)]) -> SpectralPage {
    let mut page = SpectralPage::default();
    for &(p, q, d) in triples {
        page.set(p, q, page.get(p, q) + d);
    }
    page
}

/// A declared differential that may cover a range of source columns.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DifferentialDecl {
    pub r: u32,
    pub q: i64,
    pub rank: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    /// Inclusive `[lo, hi]` range of source columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_range: Option<(i64, i64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub q: i64,
    pub module: ModuleJson,
}

/// Input of the full pipeline E² → declared differentials → Betti series.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CohomologyJob {
    pub homology: Vec<HomologyEntry>,
    pub p_min: i64,
    #[serde(default)]
    pub differentials: Vec<DifferentialDecl>,
    pub tail: TailSpec,
}

/// Output of [`run_job`].
#[derive(Clone, Debug)]
pub struct JobResult {
    pub e2: SpectralPage,
    pub e_infinity: SpectralPage,
    pub series: RationalFunctionU,
    pub display: String,
}

pub fn run_job(job: &CohomologyJob) -> Result<JobResult, CohomologyError> {
    let homology = job
        .homology
        .iter()
        .map(|h| Ok((h.q, CyclicGModule::try_from(h.module.clone())?)))
        .collect::<Result<Vec<_>, CohomologyError>>()?;
    let e2 = hs_e2_page(&homology, job.p_min);
    let mut ranks = Vec::new();
    for d in &job.differentials {
        let (lo, hi) = match (d.p, d.p_range) {
            (_, Some(range)) => range,
            (Some(p), None) => (p, p),
            (None, None) => (0, 0),
        };
        ranks.extend((lo..=hi).map(|p| DifferentialRank {
            r: d.r,
            p,
            q: d.q,
            rank: d.rank,
        }));
    }
    let e_infinity = apply_differentials(&e2, &ranks)?;
    let series = betti_series(&e_infinity, &job.tail)?;
    let display = betti_series_display(&e_infinity, &job.tail)?;
    Ok(JobResult {
        e2,
        e_infinity,
        series,
        display,
    })
}

/// Built-in jobs reproducing the catalogued sphere and circle series.
pub mod fixtures {
    use super::*;

    fn trivial_entry(q: i64) -> HomologyEntry {
        HomologyEntry {
            q,
            module: ModuleJson::from(&CyclicGModule::trivial(1, 2)),
        }
    }

    /// Sphere with the central symmetry: `d^3` of rank one from every
    /// `(p, 0)` to `(p - 3, 2)` inside the window.
    pub fn sphere_free() -> CohomologyJob {
        let p_min = -12;
        CohomologyJob {
            homology: vec![trivial_entry(0), trivial_entry(2)],
            p_min,
            differentials: vec![DifferentialDecl {
                r: 3,
                q: 0,
                rank: 1,
                p: None,
                p_range: Some((p_min + 3, 0)),
            }],
            tail: TailSpec {
                stable_below: 0,
                tail_dim: 0,
                explicit: BTreeMap::new(),
            },
        }
    }

    /// Sphere with an involution fixing a point: all differentials vanish.
    pub fn sphere_fixed() -> CohomologyJob {
        CohomologyJob {
            homology: vec![trivial_entry(0), trivial_entry(2)],
            p_min: -12,
            differentials: Vec::new(),
            tail: TailSpec {
                stable_below: 1,
                tail_dim: 2,
                explicit: [(2, 1), (1, 1)].into_iter().collect(),
            },
        }
    }

    /// Circle with an involution fixing a point.
    pub fn circle_fixed() -> CohomologyJob {
        CohomologyJob {
            homology: vec![trivial_entry(0), trivial_entry(1)],
            p_min: -12,
            differentials: Vec::new(),
            tail: TailSpec {
                stable_below: 1,
                tail_dim: 2,
                explicit: [(1, 1)].into_iter().collect(),
            },
        }
    }
}
