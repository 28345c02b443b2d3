//! Recognizers for the structure of colorings without short rainbow paths,
//! plus the recoloring and partition-balancing procedures built on top of
//! that structure.
//!
//! A coloring of `K_n` (n >= 4) with no rainbow path on 4 vertices either
//! uses at most two colors (case A) or is the 3-coloring of `K_4` by
//! perfect matchings (case B). With no rainbow path on 5 vertices (n >= 5)
//! one of six shapes applies after renumbering colors: (A) at most three
//! colors; (B) a dominant color whose rivals have pairwise disjoint
//! incidence sets; (C) one vertex away from monochromatic; (D) two
//! singleton classes at a hub vertex; (E) two opposite matchings on four
//! special vertices; (F) a sporadic 4-coloring of `K_5`. The recognizers
//! report the first matching case in order and can also list every
//! matching case.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::coloring::{pairs_lex, Color, ColoringError, EdgeColoring};
use crate::detect::{find_rainbow_path, DetectError, Embedding, EmbeddingColors};

/// Exact subset enumeration bound for [`balance_partition`].
pub const BALANCE_PART_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the structure statement needs at least {required} vertices, got {actual}")]
    OrderTooSmall { required: usize, actual: usize },
    #[error("no rainbow path, but no structure case matched; this refutes the classification")]
    Unclassified,
    #[error("grouping does not cover used color {0}")]
    GroupingNotTotal(Color),
    #[error("part size list is empty")]
    EmptyPartList,
    #[error("{0} parts exceed the exact enumeration cap of {BALANCE_PART_CAP}")]
    TooManyParts(usize),
    #[error(transparent)]
    Detect(#[from] DetectError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Partition witnessing a dominant color: every other used color touches
/// its own private vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantPartition {
    /// the color playing the dominant role (color 1 after renumbering)
    pub dominant: Color,
    /// one part per non-dominant used color, ascending by color
    pub parts: Vec<Part>,
    /// vertices incident to no non-dominant color; by convention these are
    /// appended to the first part (or form the only part)
    pub isolated: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub color: Color,
    pub vertices: Vec<usize>,
}

impl DominantPartition {
    /// The partition as plain vertex sets, with the isolated vertices
    /// folded into the first part.
    pub fn materialized_parts(&self) -> Vec<Vec<usize>> {
        if self.parts.is_empty() {
            return vec![self.isolated.clone()];
        }
        let mut out: Vec<Vec<usize>> = self.parts.iter().map(|p| p.vertices.clone()).collect();
        out[0].extend(self.isolated.iter().copied());
        out[0].sort_unstable();
        out
    }
}

/// Output of [`balance_partition`]: a subset of parts forming the heavier
/// side with minimum feasible imbalance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedSplit {
    /// indices into the input size list, ascending; these parts form A1
    pub chosen: Vec<usize>,
    pub a1: u64,
    pub a2: u64,
    /// `a1 - a2`, minimal subject to `a1 >= a2`
    pub deficiency: u64,
}

impl BalancedSplit {
    /// The half bound: with two or more chosen parts the light side holds
    /// at least half of the heavy side.
    pub fn satisfies_half_bound(&self) -> bool {
        self.chosen.len() < 2 || 2 * self.a2 >= self.a1
    }
}

/// Which structure statement a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    P4,
    P5,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CaseLabel {
    P4(P4Case),
    P5(P5Case),
}

#[derive(Debug, Clone, PartialEq)]
pub enum P4Case {
    /// a rainbow path on 4 vertices exists; no structure case applies
    Rainbow(Embedding),
    /// (A) at most two colors are used
    AtMostTwoColors { used: Vec<Color> },
    /// (B) n = 4 and the three color classes are perfect matchings
    ThreeMatchings { roles: [Color; 3] },
}

#[derive(Debug, Clone, PartialEq)]
pub enum P5Case {
    /// a rainbow path on 5 vertices exists; no structure case applies
    Rainbow(Embedding),
    /// (A) at most three colors are used
    AtMostThreeColors { used: Vec<Color> },
    /// (B) some color is dominant
    Dominant(DominantPartition),
    /// (C) deleting `vertex` leaves everything in `color`
    NearMonochromatic { vertex: usize, color: Color },
    /// (D) singleton classes hub-v1-to-v2 and hub-v1-to-v3, a fourth class
    /// holding v2v3 plus possibly more edges at v1, the rest in one color
    HubPair {
        special: [usize; 3],
        roles: [Color; 4],
    },
    /// (E) classes {v1v3, v2v4} and {v1v4, v2v3}, a class between {v1v2}
    /// and {v1v2, v3v4}, the rest in one color
    MatchedQuad {
        special: [usize; 4],
        roles: [Color; 4],
    },
    /// (F) the sporadic 4-coloring of K5 with class sizes 3/3/3/1
    SporadicFive {
        special: [usize; 5],
        roles: [Color; 4],
    },
}

impl CaseLabel {
    pub fn theorem(&self) -> Theorem {
        match self {
            CaseLabel::P4(_) => Theorem::P4,
            CaseLabel::P5(_) => Theorem::P5,
        }
    }

    pub fn case_letter(&self) -> &'static str {
        match self {
            CaseLabel::P4(P4Case::Rainbow(_)) | CaseLabel::P5(P5Case::Rainbow(_)) => "NONE",
            CaseLabel::P4(P4Case::AtMostTwoColors { .. })
            | CaseLabel::P5(P5Case::AtMostThreeColors { .. }) => "A",
            CaseLabel::P4(P4Case::ThreeMatchings { .. })
            | CaseLabel::P5(P5Case::Dominant(_)) => "B",
            CaseLabel::P5(P5Case::NearMonochromatic { .. }) => "C",
            CaseLabel::P5(P5Case::HubPair { .. }) => "D",
            CaseLabel::P5(P5Case::MatchedQuad { .. }) => "E",
            CaseLabel::P5(P5Case::SporadicFive { .. }) => "F",
        }
    }

    /// True when a structure case applies (no rainbow path was found).
    pub fn is_structured(&self) -> bool {
        self.case_letter() != "NONE"
    }

    pub fn to_json(&self) -> Value {
        let theorem = match self.theorem() {
            Theorem::P4 => "P4",
            Theorem::P5 => "P5",
        };
        let mut obj = json!({
            "theorem": theorem,
            "case": self.case_letter(),
        });
        let map = obj.as_object_mut().unwrap();
        match self {
            CaseLabel::P4(P4Case::Rainbow(e)) | CaseLabel::P5(P5Case::Rainbow(e)) => {
                let colors = match &e.colors {
                    EmbeddingColors::Rainbow(cs) => cs.clone(),
                    EmbeddingColors::Mono(c) => vec![*c],
                };
                map.insert(
                    "witness".into(),
                    json!({ "vertices": e.hosts, "colors": colors }),
                );
            }
            CaseLabel::P4(P4Case::AtMostTwoColors { used })
            | CaseLabel::P5(P5Case::AtMostThreeColors { used }) => {
                map.insert("used".into(), json!(used));
            }
            CaseLabel::P4(P4Case::ThreeMatchings { roles }) => {
                map.insert("renumbering".into(), json!(roles));
            }
            CaseLabel::P5(P5Case::Dominant(dp)) => {
                let mut renumbering = vec![dp.dominant];
                renumbering.extend(dp.parts.iter().map(|p| p.color));
                map.insert("renumbering".into(), json!(renumbering));
                map.insert("parts".into(), json!(dp.materialized_parts()));
                map.insert("appended".into(), json!(dp.isolated));
            }
            CaseLabel::P5(P5Case::NearMonochromatic { vertex, color }) => {
                map.insert("vertex".into(), json!(vertex));
                map.insert("color".into(), json!(color));
            }
            CaseLabel::P5(P5Case::HubPair { special, roles }) => {
                map.insert("special".into(), json!(special));
                map.insert("renumbering".into(), json!(roles));
            }
            CaseLabel::P5(P5Case::MatchedQuad { special, roles }) => {
                map.insert("special".into(), json!(special));
                map.insert("renumbering".into(), json!(roles));
            }
            CaseLabel::P5(P5Case::SporadicFive { special, roles }) => {
                map.insert("special".into(), json!(special));
                map.insert("renumbering".into(), json!(roles));
            }
        }
        obj
    }
}

/// Classifies a coloring of `K_n` (n >= 4) against the rainbow-P4-free
/// structure: NONE with a witness path, else the first of cases A, B.
pub fn classify_p4(g: &EdgeColoring) -> Result<CaseLabel, ClassifyError> {
    let all = classify_p4_cases(g)?;
    Ok(CaseLabel::P4(all.into_iter().next().unwrap()))
}

/// Every matching case in order; a rainbow witness is reported alone.
pub fn classify_p4_all(g: &EdgeColoring) -> Result<Vec<CaseLabel>, ClassifyError> {
    Ok(classify_p4_cases(g)?.into_iter().map(CaseLabel::P4).collect())
}

fn classify_p4_cases(g: &EdgeColoring) -> Result<Vec<P4Case>, ClassifyError> {
    if g.order() < 4 {
        return Err(ClassifyError::OrderTooSmall {
            required: 4,
            actual: g.order(),
        });
    }
    if let Some(e) = find_rainbow_path(g, 4)? {
        return Ok(vec![P4Case::Rainbow(e)]);
    }
    let mut out = Vec::new();
    let used = g.used_colors();
    if used.len() <= 2 {
        out.push(P4Case::AtMostTwoColors { used: used.clone() });
    }
    if let Some(roles) = p4_three_matchings(g) {
        out.push(P4Case::ThreeMatchings { roles });
    }
    if out.is_empty() {
        return Err(ClassifyError::Unclassified);
    }
    Ok(out)
}

fn p4_three_matchings(g: &EdgeColoring) -> Option<[Color; 3]> {
    if g.order() != 4 {
        return None;
    }
    let used = g.used_colors();
    if used.len() != 3 {
        return None;
    }
    for &c in &used {
        let edges = g.edges_of_color(c);
        if edges.len() != 2 {
            return None;
        }
        let (a, b) = (edges[0], edges[1]);
        if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
            return None;
        }
    }
    Some([used[0], used[1], used[2]])
}

/// Classifies a coloring of `K_n` (n >= 5) against the rainbow-P5-free
/// structure: NONE with a witness path, else the first of cases A-F.
pub fn classify_p5(g: &EdgeColoring) -> Result<CaseLabel, ClassifyError> {
    let all = classify_p5_cases(g, true)?;
    Ok(CaseLabel::P5(all.into_iter().next().unwrap()))
}

/// Every matching case in order; a rainbow witness is reported alone.
pub fn classify_p5_all(g: &EdgeColoring) -> Result<Vec<CaseLabel>, ClassifyError> {
    Ok(classify_p5_cases(g, false)?
        .into_iter()
        .map(CaseLabel::P5)
        .collect())
}

fn classify_p5_cases(g: &EdgeColoring, first_only: bool) -> Result<Vec<P5Case>, ClassifyError> {
    if g.order() < 5 {
        return Err(ClassifyError::OrderTooSmall {
            required: 5,
            actual: g.order(),
        });
    }
    if let Some(e) = find_rainbow_path(g, 5)? {
        return Ok(vec![P5Case::Rainbow(e)]);
    }
    let mut out = Vec::new();
    let used = g.used_colors();
    if used.len() <= 3 {
        out.push(P5Case::AtMostThreeColors { used: used.clone() });
        if first_only {
            return Ok(out);
        }
    }
    if let Some(dp) = dominant_partition(g) {
        out.push(P5Case::Dominant(dp));
        if first_only {
            return Ok(out);
        }
    }
    if let Some((vertex, color)) = p5_near_monochromatic(g) {
        out.push(P5Case::NearMonochromatic { vertex, color });
        if first_only {
            return Ok(out);
        }
    }
    if let Some((special, roles)) = p5_hub_pair(g) {
        out.push(P5Case::HubPair { special, roles });
        if first_only {
            return Ok(out);
        }
    }
    if let Some((special, roles)) = p5_matched_quad(g) {
        out.push(P5Case::MatchedQuad { special, roles });
        if first_only {
            return Ok(out);
        }
    }
    if let Some((special, roles)) = p5_sporadic_five(g) {
        out.push(P5Case::SporadicFive { special, roles });
        if first_only {
            return Ok(out);
        }
    }
    if out.is_empty() {
        return Err(ClassifyError::Unclassified);
    }
    Ok(out)
}

/// Tries every used color as the dominant candidate: the remaining colors'
/// incidence sets must be pairwise disjoint. Vertices touched by no
/// non-dominant color are recorded separately (they conventionally join the
/// first part).
pub fn dominant_partition(g: &EdgeColoring) -> Option<DominantPartition> {
    let used = g.used_colors();
    if used.is_empty() {
        // no edges at all; a single trivial part
        return Some(DominantPartition {
            dominant: 1,
            parts: Vec::new(),
            isolated: (0..g.order()).collect(),
        });
    }
    'candidate: for &d in &used {
        let mut covered = 0u64;
        let mut parts = Vec::new();
        for &c in &used {
            if c == d {
                continue;
            }
            let verts = g.vertices_touching(c);
            let mut mask = 0u64;
            for &v in &verts {
                mask |= 1 << v;
            }
            if covered & mask != 0 {
                continue 'candidate;
            }
            covered |= mask;
            parts.push(Part {
                color: c,
                vertices: verts,
            });
        }
        let isolated = (0..g.order()).filter(|&v| covered & (1 << v) == 0).collect();
        return Some(DominantPartition {
            dominant: d,
            parts,
            isolated,
        });
    }
    None
}

fn p5_near_monochromatic(g: &EdgeColoring) -> Option<(usize, Color)> {
    let n = g.order();
    'vertex: for v in 0..n {
        let mut color = None;
        for (a, b) in pairs_lex(n) {
            if a == v || b == v {
                continue;
            }
            let c = g.color(a, b);
            match color {
                None => color = Some(c),
                Some(cc) if cc != c => continue 'vertex,
                Some(_) => {}
            }
        }
        if let Some(c) = color {
            return Some((v, c));
        }
    }
    None
}

fn p5_hub_pair(g: &EdgeColoring) -> Option<([usize; 3], [Color; 4])> {
    let used = g.used_colors();
    if used.len() != 4 {
        return None;
    }
    for &c2 in &used {
        for &c3 in &used {
            if c3 <= c2 {
                continue;
            }
            let e2 = g.edges_of_color(c2);
            let e3 = g.edges_of_color(c3);
            if e2.len() != 1 || e3.len() != 1 {
                continue;
            }
            let (a, b) = e2[0];
            let (c, d) = e3[0];
            // the two singleton edges share exactly the hub vertex
            let (v1, v2, v3) = if a == c {
                (a, b, d)
            } else if a == d {
                (a, b, c)
            } else if b == c {
                (b, a, d)
            } else if b == d {
                (b, a, c)
            } else {
                continue;
            };
            for &c4 in &used {
                if c4 == c2 || c4 == c3 {
                    continue;
                }
                let e4 = g.edges_of_color(c4);
                let pair = (v2.min(v3), v2.max(v3));
                if !e4.contains(&pair) {
                    continue;
                }
                if e4
                    .iter()
                    .all(|&(x, y)| (x, y) == pair || x == v1 || y == v1)
                {
                    let c1 = *used.iter().find(|&&c| ![c2, c3, c4].contains(&c)).unwrap();
                    return Some(([v1, v2, v3], [c1, c2, c3, c4]));
                }
            }
        }
    }
    None
}

fn p5_matched_quad(g: &EdgeColoring) -> Option<([usize; 4], [Color; 4])> {
    let used = g.used_colors();
    if used.len() != 4 {
        return None;
    }
    let matching_on_four = |edges: &[(usize, usize)]| -> Option<[usize; 4]> {
        if edges.len() != 2 {
            return None;
        }
        let (a, b) = edges[0];
        let (c, d) = edges[1];
        let mut vs = [a, b, c, d];
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(vs)
    };
    for &c3 in &used {
        for &c4 in &used {
            if c4 <= c3 {
                continue;
            }
            let e3 = g.edges_of_color(c3);
            let e4 = g.edges_of_color(c4);
            let (vs3, vs4) = match (matching_on_four(&e3), matching_on_four(&e4)) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            if vs3 != vs4 {
                continue;
            }
            let partner = |edges: &[(usize, usize)], v: usize| -> Option<usize> {
                edges.iter().find_map(|&(x, y)| {
                    if x == v {
                        Some(y)
                    } else if y == v {
                        Some(x)
                    } else {
                        None
                    }
                })
            };
            for &v1 in &vs3 {
                let v3 = partner(&e3, v1).unwrap();
                let v4 = partner(&e4, v1).unwrap();
                let v2 = *vs3
                    .iter()
                    .find(|&&v| v != v1 && v != v3 && v != v4)
                    .unwrap();
                let c2 = g.color(v1, v2);
                if c2 == c3 || c2 == c4 {
                    continue;
                }
                let e2 = g.edges_of_color(c2);
                let m1a = (v1.min(v2), v1.max(v2));
                let m1b = (v3.min(v4), v3.max(v4));
                if e2.iter().all(|&e| e == m1a || e == m1b) {
                    let c1 = *used
                        .iter()
                        .find(|&&c| ![c2, c3, c4].contains(&c))
                        .unwrap();
                    return Some(([v1, v2, v3, v4], [c1, c2, c3, c4]));
                }
            }
        }
    }
    None
}

fn p5_sporadic_five(g: &EdgeColoring) -> Option<([usize; 5], [Color; 4])> {
    if g.order() != 5 {
        return None;
    }
    let used = g.used_colors();
    if used.len() != 4 {
        return None;
    }
    let mut sizes: Vec<(usize, Color)> = used
        .iter()
        .map(|&c| (g.edges_of_color(c).len(), c))
        .collect();
    sizes.sort_unstable();
    if sizes.iter().map(|&(s, _)| s).collect::<Vec<_>>() != vec![1, 3, 3, 3] {
        return None;
    }
    let c4 = sizes[0].1;
    let (v4, v5) = g.edges_of_color(c4)[0];
    let rest: Vec<usize> = (0..5).filter(|&v| v != v4 && v != v5).collect();
    let triple = [sizes[1].1, sizes[2].1, sizes[3].1];
    // try all assignments of the three big classes to roles 1..3 and all
    // labelings of the remaining vertices
    let perms3 = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for cp in &perms3 {
        let roles = [triple[cp[0]], triple[cp[1]], triple[cp[2]]];
        for vp in &perms3 {
            let (x, y, z) = (rest[vp[0]], rest[vp[1]], rest[vp[2]]);
            let expected = |i: usize| -> [(usize, usize); 3] {
                let (hub, other) = match i {
                    0 => (x, (y.min(z), y.max(z))),
                    1 => (y, (x.min(z), x.max(z))),
                    _ => (z, (x.min(y), x.max(y))),
                };
                [
                    (hub.min(v4), hub.max(v4)),
                    (hub.min(v5), hub.max(v5)),
                    other,
                ]
            };
            let ok = (0..3).all(|i| {
                let mut want = expected(i).to_vec();
                want.sort_unstable();
                let mut got = g.edges_of_color(roles[i]);
                got.sort_unstable();
                want == got
            });
            if ok {
                return Some(([x, y, z, v4, v5], [roles[0], roles[1], roles[2], c4]));
            }
        }
    }
    None
}

/// Merges color classes: every edge of color `c` becomes `grouping[c]`.
/// The grouping must cover every used color; monochromatic subgraphs stay
/// monochromatic because classes only merge.
pub fn merge_colors(
    g: &EdgeColoring,
    grouping: &BTreeMap<Color, Color>,
) -> Result<EdgeColoring, ClassifyError> {
    let used = g.used_colors();
    let mut new_k = 1;
    for &c in &used {
        match grouping.get(&c) {
            None => return Err(ClassifyError::GroupingNotTotal(c)),
            Some(&t) => new_k = new_k.max(t),
        }
    }
    Ok(g.recolor(new_k, |c| grouping[&c])?)
}

/// Chooses the part subset whose total is at least half of the whole and as
/// close to the other side as possible, by exact subset enumeration. Ties
/// break to the lexicographically smallest index set.
pub fn balance_partition(part_sizes: &[u64]) -> Result<BalancedSplit, ClassifyError> {
    if part_sizes.is_empty() {
        return Err(ClassifyError::EmptyPartList);
    }
    if part_sizes.len() > BALANCE_PART_CAP {
        return Err(ClassifyError::TooManyParts(part_sizes.len()));
    }
    let total: u64 = part_sizes.iter().sum();
    let p = part_sizes.len();
    let mut best: Option<BalancedSplit> = None;
    for mask in 0u32..(1u32 << p) {
        let a1: u64 = (0..p)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| part_sizes[i])
            .sum();
        let a2 = total - a1;
        if a1 < a2 {
            continue;
        }
        let deficiency = a1 - a2;
        let better = match &best {
            None => true,
            Some(b) if deficiency < b.deficiency => true,
            Some(b) if deficiency == b.deficiency => {
                let chosen: Vec<usize> = (0..p).filter(|&i| mask & (1 << i) != 0).collect();
                chosen < b.chosen
            }
            _ => false,
        };
        if better {
            best = Some(BalancedSplit {
                chosen: (0..p).filter(|&i| mask & (1 << i) != 0).collect(),
                a1,
                a2,
                deficiency,
            });
        }
    }
    Ok(best.expect("the full set always satisfies a1 >= a2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{matching_k4, sporadic_k5};

    #[test]
    fn two_colored_k6_is_case_a() {
        let g = EdgeColoring::build(6, 2, |u, v| if (u + v) % 2 == 0 { 1 } else { 2 }).unwrap();
        let label = classify_p4(&g).unwrap();
        assert_eq!(label.case_letter(), "A");
    }

    #[test]
    fn matching_k4_is_case_b() {
        let label = classify_p4(&matching_k4()).unwrap();
        assert_eq!(label.case_letter(), "B");
        assert!(matches!(
            label,
            CaseLabel::P4(P4Case::ThreeMatchings { roles: [1, 2, 3] })
        ));
    }

    #[test]
    fn planted_rainbow_p4_reports_none() {
        // path 0-1-2-3 in colors 1,2,3 inside a K5 otherwise colored 4
        let g = EdgeColoring::build(5, 4, |u, v| match (u, v) {
            (0, 1) => 1,
            (1, 2) => 2,
            (2, 3) => 3,
            _ => 4,
        })
        .unwrap();
        let label = classify_p4(&g).unwrap();
        assert_eq!(label.case_letter(), "NONE");
        if let CaseLabel::P4(P4Case::Rainbow(e)) = &label {
            crate::detect::validate_embedding(&g, e).unwrap();
        } else {
            panic!("expected rainbow witness");
        }
    }

    #[test]
    fn p4_requires_four_vertices() {
        let g = EdgeColoring::monochromatic(3, 1, 1).unwrap();
        assert!(matches!(
            classify_p4(&g),
            Err(ClassifyError::OrderTooSmall {
                required: 4,
                actual: 3
            })
        ));
    }

    #[test]
    fn three_colored_k7_is_case_a() {
        let g = EdgeColoring::build(7, 3, |u, v| ((u + v) % 3 + 1) as Color).unwrap();
        let label = classify_p5(&g).unwrap();
        assert_eq!(label.case_letter(), "A");
    }

    /// The case B example: triangle in color 2, triangle in color 3, edge in
    /// color 4, all cross edges color 1.
    fn case_b_graph() -> EdgeColoring {
        EdgeColoring::build(8, 4, |u, v| {
            let part = |x: usize| match x {
                0..=2 => 2,
                3..=5 => 3,
                _ => 4,
            };
            if part(u) == part(v) {
                part(u) as Color
            } else {
                1
            }
        })
        .unwrap()
    }

    #[test]
    fn dominant_structure_is_case_b() {
        let g = case_b_graph();
        let label = classify_p5(&g).unwrap();
        assert_eq!(label.case_letter(), "B");
        if let CaseLabel::P5(P5Case::Dominant(dp)) = &label {
            assert_eq!(dp.dominant, 1);
            let sizes: Vec<usize> = dp.parts.iter().map(|p| p.vertices.len()).collect();
            assert_eq!(sizes, vec![3, 3, 2]);
            assert_eq!(
                dp.parts.iter().map(|p| p.color).collect::<Vec<_>>(),
                vec![2, 3, 4]
            );
            assert!(dp.isolated.is_empty());
        } else {
            panic!("expected dominant partition");
        }
    }

    #[test]
    fn sporadic_k5_is_case_f() {
        let label = classify_p5(&sporadic_k5()).unwrap();
        assert_eq!(label.case_letter(), "F");
    }

    #[test]
    fn sporadic_k5_has_no_dominant_partition() {
        assert!(dominant_partition(&sporadic_k5()).is_none());
    }

    #[test]
    fn monochromatic_k5_partition_is_one_part() {
        let g = EdgeColoring::monochromatic(5, 1, 1).unwrap();
        let dp = dominant_partition(&g).unwrap();
        assert_eq!(dp.dominant, 1);
        assert!(dp.parts.is_empty());
        assert_eq!(dp.materialized_parts(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn near_monochromatic_is_case_c() {
        // K6 - vertex 0 in color 1; edges at 0 use colors 2..6
        let g = EdgeColoring::build(6, 6, |u, v| {
            if u == 0 {
                (v + 1) as Color
            } else {
                1
            }
        })
        .unwrap();
        let label = classify_p5(&g).unwrap();
        assert_eq!(label.case_letter(), "C");
        assert!(matches!(
            label,
            CaseLabel::P5(P5Case::NearMonochromatic { vertex: 0, color: 1 })
        ));
        // sanity: such a coloring can never have a rainbow P5
        assert!(find_rainbow_path(&g, 5).unwrap().is_none());
    }

    #[test]
    fn hub_pair_is_case_d() {
        // v1=0, v2=1, v3=2; E2={01}, E3={02}, E4={12, 03}, rest color 1
        let g = EdgeColoring::build(6, 4, |u, v| match (u, v) {
            (0, 1) => 2,
            (0, 2) => 3,
            (1, 2) | (0, 3) => 4,
            _ => 1,
        })
        .unwrap();
        let label = classify_p5(&g).unwrap();
        assert_eq!(label.case_letter(), "D");
        if let CaseLabel::P5(P5Case::HubPair { special, roles }) = label {
            assert_eq!(special, [0, 1, 2]);
            assert_eq!(roles, [1, 2, 3, 4]);
        } else {
            panic!("expected hub pair");
        }
    }

    #[test]
    fn matched_quad_is_case_e() {
        // v1..v4 = 0..3; E3={02,13}, E4={03,12}, E2={01}, rest color 1
        let g = EdgeColoring::build(6, 4, |u, v| match (u, v) {
            (0, 2) | (1, 3) => 3,
            (0, 3) | (1, 2) => 4,
            (0, 1) => 2,
            _ => 1,
        })
        .unwrap();
        let label = classify_p5(&g).unwrap();
        assert_eq!(label.case_letter(), "E");
        // the variant where E2 also holds {v3,v4}
        let g2 = EdgeColoring::build(6, 4, |u, v| match (u, v) {
            (0, 2) | (1, 3) => 3,
            (0, 3) | (1, 2) => 4,
            (0, 1) | (2, 3) => 2,
            _ => 1,
        })
        .unwrap();
        assert_eq!(classify_p5(&g2).unwrap().case_letter(), "E");
    }

    #[test]
    fn dominant_partition_implies_case_a_or_b() {
        for g in crate::enumerate::ColoringEnumerator::new(5, 5, true).unwrap() {
            if dominant_partition(&g).is_some() {
                if let Ok(label) = classify_p5(&g) {
                    assert!(matches!(label.case_letter(), "A" | "B"), "{}", g.to_cg1());
                }
            }
        }
    }

    #[test]
    fn merge_identity_is_identity() {
        let g = sporadic_k5();
        let grouping: BTreeMap<Color, Color> = (1..=4).map(|c| (c, c)).collect();
        assert_eq!(merge_colors(&g, &grouping).unwrap(), g);
    }

    #[test]
    fn merge_to_three_colors() {
        let g = case_b_graph();
        let grouping: BTreeMap<Color, Color> =
            [(1, 1), (2, 2), (3, 3), (4, 3)].into_iter().collect();
        let h = merge_colors(&g, &grouping).unwrap();
        assert_eq!(h.used_colors(), vec![1, 2, 3]);
        // a monochromatic triangle in color 2 survives
        let k3 = crate::pattern::Pattern::parse("K3").unwrap();
        assert!(crate::detect::find_mono_embedding(&h, &k3)
            .unwrap()
            .is_some());
    }

    #[test]
    fn merge_everything_gives_monochromatic() {
        let g = sporadic_k5();
        let grouping: BTreeMap<Color, Color> = (1..=4).map(|c| (c, 1)).collect();
        let h = merge_colors(&g, &grouping).unwrap();
        assert_eq!(h.used_colors(), vec![1]);
    }

    #[test]
    fn merge_requires_total_grouping() {
        let g = sporadic_k5();
        let grouping: BTreeMap<Color, Color> = [(1, 1), (2, 1)].into_iter().collect();
        assert!(matches!(
            merge_colors(&g, &grouping),
            Err(ClassifyError::GroupingNotTotal(3))
        ));
    }

    #[test]
    fn merge_preserves_monochromatic_embeddings() {
        use crate::detect::find_mono_embedding;
        use crate::pattern::Pattern;
        let g = case_b_graph();
        let grouping: BTreeMap<Color, Color> =
            [(1, 2), (2, 1), (3, 1), (4, 2)].into_iter().collect();
        let h = merge_colors(&g, &grouping).unwrap();
        for expr in ["P3", "K3", "P4", "2K2"] {
            let p = Pattern::parse(expr).unwrap();
            if find_mono_embedding(&g, &p).unwrap().is_some() {
                assert!(find_mono_embedding(&h, &p).unwrap().is_some(), "{expr}");
            }
        }
    }

    #[test]
    fn balance_examples() {
        let s = balance_partition(&[5, 5]).unwrap();
        assert_eq!(s.chosen, vec![0]);
        assert_eq!(s.deficiency, 0);

        let s = balance_partition(&[4, 3, 3]).unwrap();
        assert_eq!(s.chosen, vec![1, 2]);
        assert_eq!((s.a1, s.a2), (6, 4));
        assert_eq!(s.deficiency, 2);

        let s = balance_partition(&[6]).unwrap();
        assert_eq!(s.chosen, vec![0]);
        assert_eq!(s.a2, 0);
        assert_eq!(s.deficiency, 6);
    }

    #[test]
    fn balance_matches_exhaustive_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..1000 {
            let p = rng.random_range(1..=12);
            let sizes: Vec<u64> = (0..p).map(|_| rng.random_range(1..=30)).collect();
            let split = balance_partition(&sizes).unwrap();
            let oracle = {
                let total: u64 = sizes.iter().sum();
                let mut best: Option<u64> = None;
                for mask in 0u32..(1 << p) {
                    let a1: u64 = (0..p)
                        .filter(|&i| mask & (1 << i) != 0)
                        .map(|i| sizes[i])
                        .sum();
                    if 2 * a1 >= total {
                        let d = 2 * a1 - total;
                        best = Some(best.map_or(d, |b: u64| b.min(d)));
                    }
                }
                best.unwrap()
            };
            assert_eq!(split.deficiency, oracle, "{sizes:?}");
            assert!(split.satisfies_half_bound(), "{sizes:?}");
            assert_eq!(split.a1 + split.a2, sizes.iter().sum::<u64>());
        }
    }

    #[test]
    fn balance_rejects_bad_inputs() {
        assert!(matches!(
            balance_partition(&[]),
            Err(ClassifyError::EmptyPartList)
        ));
        assert!(matches!(
            balance_partition(&[1; 21]),
            Err(ClassifyError::TooManyParts(21))
        ));
    }

    #[test]
    fn p5_requires_five_vertices() {
        assert!(classify_p5(&matching_k4()).is_err());
    }

    #[test]
    fn case_label_json_shape() {
        let g = case_b_graph();
        let v = classify_p5(&g).unwrap().to_json();
        assert_eq!(v["theorem"], "P5");
        assert_eq!(v["case"], "B");
        assert_eq!(v["renumbering"][0], 1);
        assert!(v["parts"].is_array());
    }
}
