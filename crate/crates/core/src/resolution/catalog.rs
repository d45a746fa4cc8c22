//! Built-in resolution fixtures.

use std::collections::BTreeMap;

use super::{Divisor, GroupSpec, ResolutionData, ResolutionError, StratumEntry};
use crate::evps::{Atom, GSpaceExpr};

const FIXED_NAMES: [&str; 7] = [
    "y4-x2_Z2",
    "x4-y2_Z2",
    "y4-x2_trivial",
    "x4-y2_trivial",
    "x2+y2_Z2",
    "-x2-y4_Z2",
    "A-boundary_f",
];

const FAMILY_NAMES: [&str; 3] = ["x2k_Z2(k)", "gk(k,s1,s2)", "hk(k,s)"];

/// Catalog names; parametric families are shown with their parameters.
pub fn catalog_names() -> Vec<String> {
    FIXED_NAMES
        .iter()
        .chain(FAMILY_NAMES.iter())
        .map(|s| s.to_string())
        .collect()
}

/// Concrete names covering every fixture and small family members.
pub fn catalog_instances() -> Vec<String> {
    let mut out: Vec<String> = FIXED_NAMES.iter().map(|s| s.to_string()).collect();
    out.extend((1..=4).map(|k| format!("x2k_Z2({k})")));
    for k in 2..=6 {
        for (a, b) in [('+', '+'), ('+', '-'), ('-', '+'), ('-', '-')] {
            out.push(format!("gk({k},{a},{b})"));
        }
    }
    for k in 2..=7 {
        out.push(format!("hk({k},+)"));
        out.push(format!("hk({k},-)"));
    }
    out
}

pub fn catalog_get(name: &str) -> Result<ResolutionData, ResolutionError> {
    let unknown = || ResolutionError::UnknownFixture(name.to_string());
    let fixture = match name {
        "y4-x2_Z2" => y4_minus_x2(),
        "x4-y2_Z2" => x4_minus_y2(),
        "y4-x2_trivial" => trivial_pair("y4-x2_trivial"),
        "x4-y2_trivial" => trivial_pair("x4-y2_trivial"),
        "x2+y2_Z2" => x2_plus_y2(),
        "-x2-y4_Z2" => minus_x2_minus_y4(),
        "A-boundary_f" => a_boundary(),
        _ => {
            let (family, args) = split_call(name).ok_or_else(unknown)?;
            match (family, args.as_slice()) {
                ("x2k_Z2", [k]) => x2k(parse_k(k, 1).ok_or_else(unknown)?),
                ("gk", [k, s2]) => gk(
                    parse_k(k, 2).ok_or_else(unknown)?,
                    true,
                    parse_sign(s2).ok_or_else(unknown)?,
                    name,
                ),
                ("gk", [k, s1, s2]) => gk(
                    parse_k(k, 2).ok_or_else(unknown)?,
                    parse_sign(s1).ok_or_else(unknown)?,
                    parse_sign(s2).ok_or_else(unknown)?,
                    name,
                ),
                ("hk", [k, s]) => hk(
                    parse_k(k, 2).ok_or_else(unknown)?,
                    parse_sign(s).ok_or_else(unknown)?,
                    name,
                ),
                _ => return Err(unknown()),
            }
        }
    };
    Ok(fixture)
}

fn split_call(name: &str) -> Option<(&str, Vec<&str>)> {
    let (family, rest) = name.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    Some((family, inner.split(',').map(str::trim).collect()))
}

fn parse_k(s: &str, min: u32) -> Option<u32> {
    s.parse().ok().filter(|&k| k >= min && k <= 30)
}

/// `true` for a plus sign.
fn parse_sign(s: &str) -> Option<bool> {
    match s {
        "+" => Some(true),
        "-" | "\u{2212}" => Some(false),
        _ => None,
    }
}

fn fixed() -> GSpaceExpr {
    GSpaceExpr::atom(Atom::PointFixed)
}

fn swapped() -> GSpaceExpr {
    GSpaceExpr::atom(Atom::PointPairSwapped)
}

fn circle() -> GSpaceExpr {
    GSpaceExpr::atom(Atom::CircleWithFixedPoint)
}

fn circle_minus(removed: Vec<GSpaceExpr>) -> GSpaceExpr {
    GSpaceExpr::minus(circle(), removed)
}

fn fixed_points(k: usize) -> Vec<GSpaceExpr> {
    vec![fixed(); k]
}

fn div(id: u32, n: u32, nu: u32, zero_fiber: bool) -> Divisor {
    Divisor {
        id,
        n,
        nu,
        zero_fiber,
    }
}

fn stratum(ids: &[u32], beta: GSpaceExpr) -> StratumEntry {
    StratumEntry {
        ids: ids.to_vec(),
        beta,
        beta_plus: None,
        beta_minus: None,
    }
}

fn signed(ids: &[u32], beta: GSpaceExpr, plus: GSpaceExpr, minus: GSpaceExpr) -> StratumEntry {
    StratumEntry {
        ids: ids.to_vec(),
        beta,
        beta_plus: Some(plus),
        beta_minus: Some(minus),
    }
}

fn z2(generators: Vec<Vec<u32>>) -> GroupSpec {
    GroupSpec {
        order: 2,
        generators,
    }
}

fn identity_on(divisors: &[Divisor]) -> Vec<Vec<u32>> {
    let mut ids: Vec<u32> = divisors.iter().map(|d| d.id).collect();
    ids.sort_unstable();
    vec![ids]
}

/// Strata of a tree whose intersection points are all fixed: each
/// exceptional curve is a circle with its intersection points removed, and
/// each edge meeting the zero fiber is a fixed point.
fn fixed_tree(divisors: &[Divisor], edges: &[(u32, u32)]) -> Vec<StratumEntry> {
    let zero_fiber: BTreeMap<u32, bool> = divisors.iter().map(|d| (d.id, d.zero_fiber)).collect();
    let mut strata = Vec::new();
    for d in divisors.iter().filter(|d| d.zero_fiber) {
        let degree = edges
            .iter()
            .filter(|&&(a, b)| a == d.id || b == d.id)
            .count();
        strata.push(stratum(&[d.id], circle_minus(fixed_points(degree))));
    }
    for &(a, b) in edges {
        if zero_fiber[&a] || zero_fiber[&b] {
            strata.push(stratum(&[a.min(b), a.max(b)], fixed()));
        }
    }
    strata
}

fn quartic_divisors() -> Vec<Divisor> {
    vec![
        div(1, 2, 2, true),
        div(2, 4, 3, true),
        div(3, 1, 1, false),
        div(4, 1, 1, false),
    ]
}

fn y4_minus_x2() -> ResolutionData {
    ResolutionData {
        name: "y4-x2_Z2".into(),
        group: z2(vec![vec![1, 2, 4, 3]]),
        divisors: quartic_divisors(),
        strata: vec![
            stratum(&[1], circle_minus(vec![fixed()])),
            stratum(&[2], circle_minus(vec![fixed(), swapped()])),
            stratum(&[1, 2], fixed()),
            stratum(&[2, 3], swapped()),
        ],
    }
}

fn x4_minus_y2() -> ResolutionData {
    let divisors = quartic_divisors();
    ResolutionData {
        name: "x4-y2_Z2".into(),
        group: z2(identity_on(&divisors)),
        strata: fixed_tree(&divisors, &[(1, 2), (2, 3), (2, 4)]),
        divisors,
    }
}

/// Both quartic germs forget to the same non-equivariant data.
fn trivial_pair(name: &str) -> ResolutionData {
    let pt = || GSpaceExpr::atom(Atom::PointTrivial);
    let circle = || GSpaceExpr::atom(Atom::CircleTrivial);
    ResolutionData {
        name: name.into(),
        group: GroupSpec {
            order: 1,
            generators: Vec::new(),
        },
        divisors: quartic_divisors(),
        strata: vec![
            stratum(&[1], GSpaceExpr::minus(circle(), vec![pt()])),
            stratum(&[2], GSpaceExpr::minus(circle(), vec![pt(), pt(), pt()])),
            stratum(&[1, 2], pt()),
            stratum(&[2, 3], pt()),
            stratum(&[2, 4], pt()),
        ],
    }
}

fn x2_plus_y2() -> ResolutionData {
    let divisors = vec![div(1, 2, 2, true)];
    ResolutionData {
        name: "x2+y2_Z2".into(),
        group: z2(identity_on(&divisors)),
        divisors,
        strata: vec![signed(&[1], circle(), circle(), GSpaceExpr::empty())],
    }
}

fn minus_x2_minus_y4() -> ResolutionData {
    let divisors = vec![div(1, 2, 2, true), div(2, 4, 3, true)];
    let single = |id| {
        signed(
            &[id],
            circle_minus(vec![fixed()]),
            GSpaceExpr::empty(),
            circle_minus(fixed_points(2)),
        )
    };
    ResolutionData {
        name: "-x2-y4_Z2".into(),
        group: z2(identity_on(&divisors)),
        divisors,
        strata: vec![
            single(1),
            single(2),
            signed(
                &[1, 2],
                fixed(),
                GSpaceExpr::empty(),
                GSpaceExpr::union(fixed_points(2)),
            ),
        ],
    }
}

fn x2k(k: u32) -> ResolutionData {
    let divisors = vec![div(1, 2 * k, 1, true)];
    ResolutionData {
        name: format!("x2k_Z2({k})"),
        group: z2(identity_on(&divisors)),
        divisors,
        strata: vec![signed(&[1], fixed(), swapped(), GSpaceExpr::empty())],
    }
}

/// `f = ±x^4 + y^3`. The strict transform meets `E4` only.
fn a_boundary() -> ResolutionData {
    let divisors = vec![
        div(1, 3, 2, true),
        div(2, 4, 3, true),
        div(3, 8, 5, true),
        div(4, 12, 7, true),
        div(5, 1, 1, false),
    ];
    ResolutionData {
        name: "A-boundary_f".into(),
        group: z2(identity_on(&divisors)),
        strata: fixed_tree(&divisors, &[(1, 4), (2, 3), (3, 4), (4, 5)]),
        divisors,
    }
}

/// `g_k = ±x^{2k} ± y^2`: a chain `E_j(2j, j+1)`. With opposite signs the
/// strict transform meets `E_k` in two points, swapped when `k` is odd.
fn gk(k: u32, s1: bool, s2: bool, name: &str) -> ResolutionData {
    let mut divisors: Vec<Divisor> = (1..=k).map(|j| div(j, 2 * j, j + 1, true)).collect();
    let edges: Vec<(u32, u32)> = (1..k).map(|j| (j, j + 1)).collect();
    let strict = s1 != s2;
    if !strict || k.is_multiple_of(2) {
        if strict {
            divisors.push(div(k + 1, 1, 1, false));
            divisors.push(div(k + 2, 1, 1, false));
        }
        let mut all_edges = edges;
        if strict {
            all_edges.extend([(k, k + 1), (k, k + 2)]);
        }
        return ResolutionData {
            name: name.into(),
            group: z2(identity_on(&divisors)),
            strata: fixed_tree(&divisors, &all_edges),
            divisors,
        };
    }
    divisors.push(div(k + 1, 1, 1, false));
    divisors.push(div(k + 2, 1, 1, false));
    let mut strata = fixed_tree(&divisors[..k as usize], &edges);
    let last = strata.iter_mut().find(|s| s.ids == [k]).unwrap();
    last.beta = circle_minus(vec![fixed(), swapped()]);
    strata.push(stratum(&[k, k + 1], swapped()));
    let mut generator: Vec<u32> = (1..=k).collect();
    generator.extend([k + 2, k + 1]);
    ResolutionData {
        name: name.into(),
        group: z2(vec![generator]),
        divisors,
        strata,
    }
}

/// `h_k = x^2 y ± y^k`. The strict transform of the axis `y = 0` is
/// always present and meets the first exceptional divisor.
fn hk(k: u32, plus: bool, name: &str) -> ResolutionData {
    if k % 2 == 1 {
        // chain E_j(2j+1, j+1), j = 1..p
        let p = k / 2;
        let axis = p + 1;
        let mut divisors: Vec<Divisor> = (1..=p).map(|j| div(j, 2 * j + 1, j + 1, true)).collect();
        divisors.push(div(axis, 1, 1, false));
        let mut edges: Vec<(u32, u32)> = (1..p).map(|j| (j, j + 1)).collect();
        edges.push((1, axis));
        if plus {
            return ResolutionData {
                name: name.into(),
                group: z2(identity_on(&divisors)),
                strata: fixed_tree(&divisors, &edges),
                divisors,
            };
        }
        let mut strata = fixed_tree(&divisors, &edges);
        let last = strata.iter_mut().find(|s| s.ids == [p]).unwrap();
        let degree = edges.iter().filter(|&&(a, b)| a == p || b == p).count();
        let mut removed = fixed_points(degree);
        removed.push(swapped());
        last.beta = circle_minus(removed);
        divisors.push(div(p + 2, 1, 1, false));
        divisors.push(div(p + 3, 1, 1, false));
        strata.push(stratum(&[p, p + 2], swapped()));
        let mut generator: Vec<u32> = (1..=p + 1).collect();
        generator.extend([p + 3, p + 2]);
        return ResolutionData {
            name: name.into(),
            group: z2(vec![generator]),
            divisors,
            strata,
        };
    }
    // E_j(2j+1, j+1) for j < p, then E_p(k, p+1) and E_{p+1}(2k, k+1);
    // chain axis - E_1 - ... - E_{p-1} - E_{p+1} - E_p, strict transform on E_{p+1}
    let p = k / 2;
    let (axis, strict) = (p + 2, p + 3);
    let mut divisors: Vec<Divisor> = (1..p).map(|j| div(j, 2 * j + 1, j + 1, true)).collect();
    divisors.push(div(p, k, p + 1, true));
    divisors.push(div(p + 1, 2 * k, k + 1, true));
    divisors.push(div(axis, 1, 1, false));
    divisors.push(div(strict, 1, 1, false));
    let mut chain: Vec<u32> = vec![axis];
    chain.extend(1..p);
    chain.extend([p + 1, p]);
    let mut edges: Vec<(u32, u32)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    edges.push((p + 1, strict));
    ResolutionData {
        name: name.into(),
        group: z2(identity_on(&divisors)),
        strata: fixed_tree(&divisors, &edges),
        divisors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evps::beta_eval;
    use crate::ratpoly::{IntPolyU, RationalFunctionU};

    fn beta_of(res: &ResolutionData, ids: &[u32]) -> RationalFunctionU {
        let entry = res.strata.iter().find(|s| s.ids == ids).unwrap();
        beta_eval(&entry.beta).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunctionU {
        RationalFunctionU::new(IntPolyU::from_i64s(num), IntPolyU::from_i64s(den)).unwrap()
    }

    #[test]
    fn quartic_stratum_values() {
        let f = catalog_get("y4-x2_Z2").unwrap();
        assert_eq!(beta_of(&f, &[1]), rf(&[0, 0, 1], &[-1, 1]));
        assert_eq!(beta_of(&f, &[2]), rf(&[1, -1, 1], &[-1, 1]));
        let h = catalog_get("x4-y2_Z2").unwrap();
        assert_eq!(beta_of(&h, &[2]), rf(&[0, -2, 1], &[-1, 1]));
        assert_eq!(beta_of(&h, &[2, 4]), rf(&[0, 1], &[-1, 1]));
    }

    #[test]
    fn unknown_names() {
        for name in [
            "nope",
            "gk(1,-)",
            "gk(3,*)",
            "hk(x,+)",
            "x2k_Z2(0)",
            "gk(3,+,+,+)",
        ] {
            assert!(
                matches!(catalog_get(name), Err(ResolutionError::UnknownFixture(_))),
                "{name}"
            );
        }
    }

    #[test]
    fn short_gk_name_means_positive_leading_sign() {
        let a = catalog_get("gk(5,-)").unwrap();
        let b = catalog_get("gk(5,+,-)").unwrap();
        assert_eq!(a.strata, b.strata);
        assert_eq!(a.name, "gk(5,-)");
    }

    #[test]
    fn gk_parity_split() {
        let odd = catalog_get("gk(3,-)").unwrap();
        assert_eq!(odd.group.generators, vec![vec![1, 2, 3, 5, 4]]);
        assert_eq!(beta_of(&odd, &[3]), rf(&[1, -1, 1], &[-1, 1]));
        let even = catalog_get("gk(4,-)").unwrap();
        assert_eq!(beta_of(&even, &[4]), rf(&[0, -2, 1], &[-1, 1]));
        assert_eq!(even.strata.len(), 4 + 3 + 2);
        let no_strict = catalog_get("gk(4,+)").unwrap();
        assert_eq!(no_strict.divisors.len(), 4);
        assert_eq!(beta_of(&no_strict, &[4]), rf(&[0, 0, 1], &[-1, 1]));
    }

    #[test]
    fn g2_minus_matches_x4_minus_y2() {
        let g = catalog_get("gk(2,-)").unwrap();
        let h = catalog_get("x4-y2_Z2").unwrap();
        assert_eq!(g.divisors, h.divisors);
        assert_eq!(g.strata, h.strata);
    }

    #[test]
    fn hk_trees() {
        let odd = catalog_get("hk(5,-)").unwrap();
        // E1(3,2), E2(5,3), axis, strict pair
        assert_eq!(odd.divisors.len(), 5);
        assert_eq!(beta_of(&odd, &[1]), rf(&[0, 1], &[1]));
        assert_eq!(beta_of(&odd, &[2]), rf(&[1, -1, 1], &[-1, 1]));
        let even = catalog_get("hk(6,+)").unwrap();
        // E1(3,2), E2(5,3), E3(6,4), E4(12,7), axis, strict
        let ns: Vec<_> = even.divisors.iter().map(|d| (d.n, d.nu)).collect();
        assert_eq!(&ns[..4], &[(3, 2), (5, 3), (6, 4), (12, 7)]);
        assert_eq!(beta_of(&even, &[4]), rf(&[0, -2, 1], &[-1, 1]));
        assert_eq!(beta_of(&even, &[3]), rf(&[0, 0, 1], &[-1, 1]));
        assert_eq!(beta_of(&even, &[2]), rf(&[0, 1], &[1]));
    }

    #[test]
    fn names_listed() {
        let names = catalog_names();
        for expected in ["y4-x2_Z2", "x2+y2_Z2", "gk(k,s1,s2)", "hk(k,s)"] {
            assert!(names.iter().any(|n| n == expected));
        }
    }
}
