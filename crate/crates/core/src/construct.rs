//! Generators for the extremal block colorings used as lower-bound
//! witnesses, each paired with a machine-checkable claim list, plus the
//! closed-form bound formulas they certify.
//!
//! Every generator numbers vertices block-contiguously in ascending order,
//! so outputs are deterministic and their canonical keys are stable
//! regression anchors. A generator output that fails [`validate`] is a bug,
//! not a warning.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_key;
use crate::classify::{classify_p5, ClassifyError};
use crate::coloring::{Color, ColoringError, EdgeColoring};
use crate::detect::{
    connected_super_in_color, find_disjoint_packing, find_mono_embedding, find_rainbow_path,
    PackingSpec,
};
use crate::pattern::{Pattern, PatternError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("preset parameter out of range: {0}")]
    PresetParameter(String),
    #[error("base coloring uses color {0}, only 1 and 2 are allowed")]
    BaseUsesWrongColors(Color),
    #[error("part color {0} appears twice")]
    OverlappingPartColors(Color),
    #[error("part color {0} is reserved; parts use colors 2 and up")]
    PartColorReserved(Color),
    #[error("inner coloring {0} does not match its part")]
    InnerMismatch(usize),
    #[error("pattern is not a disjoint union of equal complete graphs")]
    NotCliquePacking,
    #[error("pattern is not two disjoint copies of one graph")]
    NotTwoCopies,
    #[error("formula needs a connected pattern with at least one edge")]
    NotConnected,
    #[error("no known 2-color Ramsey value for {0}; pass an override")]
    MissingRamseyValue(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// What a constructed coloring must avoid (or satisfy); validated by the
/// detectors right after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Claim {
    /// no rainbow path on this many vertices
    NoRainbowPath { vertices: usize },
    /// no monochromatic copy of the pattern in any color
    NoMonoPattern { pattern: Pattern },
    /// no monochromatic copy of the pattern in one specific color
    NoMonoPatternInColor { pattern: Pattern, color: Color },
    /// no connected subgraph of the given color packing `multiplicity`
    /// disjoint copies of `base`
    NoConnectedSuperInColor {
        base: Pattern,
        multiplicity: usize,
        color: Color,
    },
    /// the rainbow-P5-free classification lands in one of these cases
    ClassifiesAmong { letters: Vec<String> },
}

/// A generated coloring plus the claims it must satisfy.
#[derive(Debug, Clone)]
pub struct Construction {
    pub coloring: EdgeColoring,
    pub claims: Vec<Claim>,
}

impl Construction {
    /// Canonical key under vertex+color symmetry; stable across releases.
    pub fn canonical_key(&self) -> Vec<u8> {
        canonical_key(&self.coloring, true)
    }
}

#[derive(Debug, Error)]
#[error("claim {index} ({claim:?}) failed: {detail}")]
pub struct ClaimFailure {
    pub index: usize,
    pub claim: Claim,
    pub detail: String,
}

/// Runs every claim through the detect (and classify) machinery.
pub fn validate(c: &Construction) -> Result<(), ClaimFailure> {
    for (index, claim) in c.claims.iter().enumerate() {
        let fail = |detail: String| ClaimFailure {
            index,
            claim: claim.clone(),
            detail,
        };
        match claim {
            Claim::NoRainbowPath { vertices } => {
                match find_rainbow_path(&c.coloring, *vertices) {
                    Err(e) => return Err(fail(format!("detector error: {e}"))),
                    Ok(Some(e)) => {
                        return Err(fail(format!("rainbow path through {:?}", e.hosts)))
                    }
                    Ok(None) => {}
                }
            }
            Claim::NoMonoPattern { pattern } => match find_mono_embedding(&c.coloring, pattern) {
                Err(e) => return Err(fail(format!("detector error: {e}"))),
                Ok(Some(e)) => {
                    return Err(fail(format!(
                        "monochromatic copy on {:?} in {:?}",
                        e.hosts, e.colors
                    )))
                }
                Ok(None) => {}
            },
            Claim::NoMonoPatternInColor { pattern, color } => {
                let all: Vec<usize> = (0..c.coloring.order()).collect();
                let m = pattern_copies(pattern);
                match find_disjoint_packing(&c.coloring, *color, Some(&all), &m.0, m.1) {
                    Err(e) => return Err(fail(format!("detector error: {e}"))),
                    Ok(Some(packing)) => {
                        return Err(fail(format!(
                            "copy in color {color} on {:?}",
                            packing.iter().map(|e| e.hosts.clone()).collect::<Vec<_>>()
                        )))
                    }
                    Ok(None) => {}
                }
            }
            Claim::NoConnectedSuperInColor {
                base,
                multiplicity,
                color,
            } => {
                let spec = match PackingSpec::new(base.clone(), *multiplicity, true) {
                    Ok(s) => s,
                    Err(e) => return Err(fail(format!("bad spec: {e}"))),
                };
                match connected_super_in_color(&c.coloring, &spec, *color) {
                    Err(e) => return Err(fail(format!("detector error: {e}"))),
                    Ok(Some(w)) => {
                        return Err(fail(format!(
                            "connected component {:?} of color {} packs the copies",
                            w.component, w.color
                        )))
                    }
                    Ok(None) => {}
                }
            }
            Claim::ClassifiesAmong { letters } => match classify_p5(&c.coloring) {
                Err(ClassifyError::OrderTooSmall { .. }) => {}
                Err(e) => return Err(fail(format!("classifier error: {e}"))),
                Ok(label) => {
                    if !letters.iter().any(|l| l == label.case_letter()) {
                        return Err(fail(format!("classified as {}", label.case_letter())));
                    }
                }
            },
        }
    }
    Ok(())
}

/// Splits `mH`-shaped patterns into `(H, m)` for the packing detector; a
/// pattern that is not a uniform repetition is passed through whole.
fn pattern_copies(p: &Pattern) -> (Pattern, usize) {
    let comps = p.components();
    if comps.len() > 1 && comps.iter().all(|c| c == &comps[0]) {
        (comps[0].clone(), comps.len())
    } else {
        (p.clone(), 1)
    }
}

// ---------------------------------------------------------------------------
// generators

/// The 3-coloring of `K_4` in which each color class is a perfect matching.
/// Avoids rainbow paths on 4 vertices and monochromatic paths on 3.
pub fn build_matching_k4() -> Construction {
    let coloring = EdgeColoring::from_edges(
        4,
        3,
        &[
            (0, 1, 1),
            (2, 3, 1),
            (0, 2, 2),
            (1, 3, 2),
            (0, 3, 3),
            (1, 2, 3),
        ],
    )
    .expect("fixed edge list is complete");
    Construction {
        coloring,
        claims: vec![
            Claim::NoRainbowPath { vertices: 4 },
            Claim::NoMonoPattern {
                pattern: Pattern::path(3).unwrap(),
            },
        ],
    }
}

/// Two cliques of order `a` in colors 1 and 2, one clique of order `b` in
/// color 3, all cross edges color 3. Claims are attached by the presets.
pub fn three_block(a: usize, b: usize) -> Construction {
    assert!(a >= 1, "first two blocks need at least one vertex");
    let n = 2 * a + b;
    let block = move |v: usize| -> usize {
        if v < a {
            0
        } else if v < 2 * a {
            1
        } else {
            2
        }
    };
    let coloring = EdgeColoring::build(n, 3, |u, v| {
        if block(u) == block(v) {
            (block(u) + 1) as Color
        } else {
            3
        }
    })
    .expect("block orders are valid");
    Construction {
        coloring,
        claims: Vec::new(),
    }
}

/// Order `7m - 3` coloring with no monochromatic `m` disjoint triangles.
pub fn preset_blocks_triangles(m: usize) -> Result<Construction, ConstructError> {
    if m < 2 {
        return Err(ConstructError::PresetParameter(
            "triangle blocks need m >= 2".into(),
        ));
    }
    let mut c = three_block(3 * m - 1, m - 1);
    c.claims.push(Claim::NoMonoPattern {
        pattern: Pattern::complete(3)?.repeated(m)?,
    });
    Ok(c)
}

/// Order `11m - 3` coloring with no monochromatic `m` disjoint 5-cycles.
pub fn preset_blocks_pentagons(m: usize) -> Result<Construction, ConstructError> {
    if m < 2 {
        return Err(ConstructError::PresetParameter(
            "pentagon blocks need m >= 2".into(),
        ));
    }
    let mut c = three_block(5 * m - 1, m - 1);
    c.claims.push(Claim::NoMonoPattern {
        pattern: Pattern::cycle(5)?.repeated(m)?,
    });
    Ok(c)
}

/// A clique of `order1` in color 1 and a clique of `order2` in color 2 with
/// all cross edges color 2.
pub fn two_block(order1: usize, order2: usize) -> Construction {
    assert!(order1 >= 1, "first block needs at least one vertex");
    let n = order1 + order2;
    let coloring = EdgeColoring::build(n, 2, |u, v| if u < order1 && v < order1 { 1 } else { 2 })
        .expect("block orders are valid");
    Construction {
        coloring,
        claims: Vec::new(),
    }
}

/// Order `5m + n - 2` coloring with no color-1 connected subgraph packing
/// `m` pentagons and no color-2 matching of `n` edges.
pub fn preset_two_block_pentagons(m: usize, n: usize) -> Result<Construction, ConstructError> {
    if m < n || n < 1 {
        return Err(ConstructError::PresetParameter(
            "pentagon/matching blocks need m >= n >= 1".into(),
        ));
    }
    let mut c = two_block(5 * m - 1, n - 1);
    c.claims.push(Claim::NoConnectedSuperInColor {
        base: Pattern::cycle(5)?,
        multiplicity: m,
        color: 1,
    });
    c.claims.push(Claim::NoMonoPatternInColor {
        pattern: Pattern::complete(2)?.repeated(n)?,
        color: 2,
    });
    Ok(c)
}

/// Order `m|H| + n - 2` coloring with no color-1 copy of `m` disjoint `H`
/// and no color-2 matching of `n` edges.
pub fn preset_two_block_base(
    base: &Pattern,
    m: usize,
    n: usize,
) -> Result<Construction, ConstructError> {
    if m < n || n < 1 {
        return Err(ConstructError::PresetParameter(
            "base/matching blocks need m >= n >= 1".into(),
        ));
    }
    let mut c = two_block(m * base.order() - 1, n - 1);
    c.claims.push(Claim::NoMonoPatternInColor {
        pattern: base.repeated(m)?,
        color: 1,
    });
    c.claims.push(Claim::NoMonoPatternInColor {
        pattern: Pattern::complete(2)?.repeated(n)?,
        color: 2,
    });
    Ok(c)
}

/// Three cliques of order `part_order` with inner colors 1, 2, 3 and cross
/// colors rotated: (U1,U2) in 3, (U2,U3) in 1, (U3,U1) in 2.
pub fn cyclic_three(part_order: usize) -> Construction {
    assert!(part_order >= 1, "parts need at least one vertex");
    let p = part_order;
    let coloring = EdgeColoring::build(3 * p, 3, |u, v| {
        let (bu, bv) = (u / p, v / p);
        if bu == bv {
            (bu + 1) as Color
        } else {
            match (bu.min(bv), bu.max(bv)) {
                (0, 1) => 3,
                (1, 2) => 1,
                _ => 2,
            }
        }
    })
    .expect("part order is valid");
    Construction {
        coloring,
        claims: Vec::new(),
    }
}

/// Order `3(m|H| - 1)` coloring with no monochromatic `m` disjoint `H`.
pub fn preset_cyclic_three(base: &Pattern, m: usize) -> Result<Construction, ConstructError> {
    if m < 1 {
        return Err(ConstructError::PresetParameter(
            "cyclic blocks need m >= 1".into(),
        ));
    }
    if m * base.order() < 2 {
        return Err(ConstructError::PresetParameter(
            "cyclic blocks need m|H| >= 2".into(),
        ));
    }
    let mut c = cyclic_three(m * base.order() - 1);
    c.claims.push(Claim::NoMonoPattern {
        pattern: base.repeated(m)?,
    });
    Ok(c)
}

/// `copies` disjoint copies of a 2-colored base plus a green clique of
/// `green_order`, with all cross edges green (color 3).
pub fn build_disjoint_union_plus_green(
    base: &EdgeColoring,
    copies: usize,
    green_order: usize,
) -> Result<Construction, ConstructError> {
    if copies < 1 {
        return Err(ConstructError::PresetParameter(
            "at least one base copy is required".into(),
        ));
    }
    for c in base.used_colors() {
        if c > 2 {
            return Err(ConstructError::BaseUsesWrongColors(c));
        }
    }
    let nb = base.order();
    let n = copies * nb + green_order;
    let coloring = EdgeColoring::build(n, 3, |u, v| {
        let cu = u / nb;
        let cv = v / nb;
        if cu == cv && cu < copies {
            base.color(u % nb, v % nb)
        } else {
            3
        }
    })?;
    Ok(Construction {
        coloring,
        claims: Vec::new(),
    })
}

/// The 2-coloring of `K_5` by two edge-disjoint pentagons; it has no
/// monochromatic triangle.
pub fn pentagon_k5() -> EdgeColoring {
    // color 1: the cycle 0-1-2-3-4-0; color 2: the complement (also a C5)
    EdgeColoring::build(5, 2, |u, v| {
        let d = (v + 5 - u) % 5;
        if d == 1 || d == 4 {
            1
        } else {
            2
        }
    })
    .expect("fixed pentagon coloring")
}

/// Order `(r-1)|base| + n - 1` style witness for clique packings: `r - 1`
/// copies of a triangle-free 2-coloring plus a green `K_{n-1}`. The default
/// instance (r=3, n=2) has order 11 and no monochromatic pair of disjoint
/// triangles in any color.
pub fn preset_union_green_triangles() -> Result<Construction, ConstructError> {
    let mut c = build_disjoint_union_plus_green(&pentagon_k5(), 2, 1)?;
    c.claims.push(Claim::NoMonoPattern {
        pattern: Pattern::complete(3)?.repeated(2)?,
    });
    Ok(c)
}

/// Inner coloring choice for [`build_case_b`] parts.
#[derive(Debug, Clone)]
pub enum InnerColoring {
    /// all inner edges in the dominant color 1
    Dominant,
    /// all inner edges in the part's own color
    OwnColor,
    /// explicit sub-colorings, one per part, using only color 1 and the
    /// part's own color
    Given(Vec<EdgeColoring>),
}

/// A dominant-structure coloring: one part per `(order, color)` entry, all
/// cross edges in color 1, inner edges per `inner`. The output never has a
/// rainbow path on 5 vertices.
pub fn build_case_b(
    parts: &[(usize, Color)],
    inner: InnerColoring,
) -> Result<Construction, ConstructError> {
    let mut seen = Vec::new();
    for &(order, color) in parts {
        if color < 2 {
            return Err(ConstructError::PartColorReserved(color));
        }
        if seen.contains(&color) {
            return Err(ConstructError::OverlappingPartColors(color));
        }
        if order == 0 {
            return Err(ConstructError::PresetParameter(
                "parts need at least one vertex".into(),
            ));
        }
        seen.push(color);
    }
    if let InnerColoring::Given(subs) = &inner {
        if subs.len() != parts.len() {
            return Err(ConstructError::PresetParameter(
                "one sub-coloring per part is required".into(),
            ));
        }
        for (i, ((order, color), sub)) in parts.iter().zip(subs).enumerate() {
            if sub.order() != *order {
                return Err(ConstructError::InnerMismatch(i));
            }
            for c in sub.used_colors() {
                if c != 1 && c != *color {
                    return Err(ConstructError::InnerMismatch(i));
                }
            }
        }
    }
    let n: usize = parts.iter().map(|&(o, _)| o).sum();
    let k = parts.iter().map(|&(_, c)| c).max().unwrap_or(1);
    let part_of = |v: usize| -> (usize, usize) {
        let mut acc = 0;
        for (i, &(o, _)) in parts.iter().enumerate() {
            if v < acc + o {
                return (i, v - acc);
            }
            acc += o;
        }
        unreachable!("vertex within total order")
    };
    let coloring = EdgeColoring::build(n, k, |u, v| {
        let (pu, lu) = part_of(u);
        let (pv, lv) = part_of(v);
        if pu != pv {
            return 1;
        }
        match &inner {
            InnerColoring::Dominant => 1,
            InnerColoring::OwnColor => parts[pu].1,
            InnerColoring::Given(subs) => subs[pu].color(lu, lv),
        }
    })?;
    let mut claims = vec![Claim::NoRainbowPath { vertices: 5 }];
    if n >= 5 {
        claims.push(Claim::ClassifiesAmong {
            letters: vec!["A".into(), "B".into()],
        });
    }
    Ok(Construction { coloring, claims })
}

// ---------------------------------------------------------------------------
// bound formulas

/// Closed-form bounds evaluated from pattern attributes and known 2-color
/// Ramsey values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFormula {
    /// lower bound on the 2-color Ramsey number of a connected graph:
    /// `(chi - 1)(|G| - 1) + s`, with `s` the minimum color class size
    ChromaticLower,
    /// upper bound for connected supergraphs of `n` disjoint `K_r`:
    /// `(r - 1)(R2(K_r) - 1) + n`
    CliquePackingUpper,
    /// upper bound for connected supergraphs of two disjoint copies of a
    /// connected `G`: `(chi(G) - 1)(R2(G) - 1) + 2 s(G)`
    TwoCopiesUpper,
}

/// Known 2-color Ramsey values shipped as data. Only the bound formulas
/// consult this table; the search module never does.
pub fn known_r2(p: &Pattern) -> Option<u64> {
    if p.is_complete() {
        match p.order() {
            3 => Some(6),
            4 => Some(18),
            _ => None,
        }
    } else {
        None
    }
}

/// Evaluates `which` on `pattern`, taking `R2` dependencies from
/// `r2_override` or the known-values table.
pub fn bound_formula(
    pattern: &Pattern,
    which: BoundFormula,
    r2_override: Option<u64>,
) -> Result<u64, ConstructError> {
    match which {
        BoundFormula::ChromaticLower => {
            if !pattern.is_connected() || pattern.size() == 0 {
                return Err(ConstructError::NotConnected);
            }
            let chi = pattern.chromatic_number()? as u64;
            let s = pattern.min_color_class()? as u64;
            Ok((chi - 1) * (pattern.order() as u64 - 1) + s)
        }
        BoundFormula::CliquePackingUpper => {
            let comps = pattern.components();
            let r = comps[0].order();
            if !comps.iter().all(|c| c.is_complete() && c.order() == r) || r < 2 {
                return Err(ConstructError::NotCliquePacking);
            }
            let n = comps.len() as u64;
            let r2 = r2_override
                .or_else(|| known_r2(&comps[0]))
                .ok_or_else(|| ConstructError::MissingRamseyValue(format!("K{r}")))?;
            Ok((r as u64 - 1) * (r2 - 1) + n)
        }
        BoundFormula::TwoCopiesUpper => {
            let comps = pattern.components();
            if comps.len() != 2 || !isomorphic(&comps[0], &comps[1]) {
                return Err(ConstructError::NotTwoCopies);
            }
            let g = &comps[0];
            if g.size() == 0 {
                return Err(ConstructError::NotConnected);
            }
            let chi = g.chromatic_number()? as u64;
            let s = g.min_color_class()? as u64;
            let r2 = r2_override
                .or_else(|| known_r2(g))
                .ok_or_else(|| ConstructError::MissingRamseyValue(g.to_string()))?;
            Ok((chi - 1) * (r2 - 1) + 2 * s)
        }
    }
}

/// Pattern isomorphism via the canonical form of the edge/non-edge
/// 2-coloring; fine for the small orders the formulas accept.
fn isomorphic(a: &Pattern, b: &Pattern) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    if a.order() == 1 {
        return true;
    }
    let encode = |p: &Pattern| {
        EdgeColoring::build(p.order(), 2, |u, v| if p.has_edge(u, v) { 1 } else { 2 })
            .expect("order checked above")
    };
    canonical_key(&encode(a), false) == canonical_key(&encode(b), false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(expr: &str) -> Pattern {
        Pattern::parse(expr).unwrap()
    }

    #[test]
    fn matching_k4_validates() {
        let c = build_matching_k4();
        assert_eq!(c.coloring.order(), 4);
        assert_eq!(c.coloring.used_colors(), vec![1, 2, 3]);
        for color in 1..=3 {
            assert_eq!(c.coloring.edges_of_color(color).len(), 2);
        }
        validate(&c).unwrap();
    }

    #[test]
    fn triangle_blocks_preset_orders() {
        let c = preset_blocks_triangles(2).unwrap();
        assert_eq!(c.coloring.order(), 11);
        validate(&c).unwrap();
        assert!(preset_blocks_triangles(1).is_err());
    }

    #[test]
    fn pentagon_blocks_preset_orders() {
        let c = preset_blocks_pentagons(2).unwrap();
        assert_eq!(c.coloring.order(), 19);
        validate(&c).unwrap();
    }

    #[test]
    fn degenerate_three_block() {
        let c = three_block(1, 0);
        assert_eq!(c.coloring.order(), 2);
        assert_eq!(c.coloring.color(0, 1), 3);
    }

    #[test]
    fn two_block_presets_validate() {
        for (m, n) in [(1, 1), (2, 1), (2, 2)] {
            let c = preset_two_block_pentagons(m, n).unwrap();
            assert_eq!(c.coloring.order(), 5 * m + n - 2);
            validate(&c).unwrap();
        }
        assert!(preset_two_block_pentagons(1, 2).is_err());
    }

    #[test]
    fn two_block_degenerate() {
        let c = two_block(1, 1);
        assert_eq!(c.coloring.color(0, 1), 2);
    }

    #[test]
    fn generic_two_block_base() {
        // base = triangle with a pendant edge: |H| = 4
        let h = Pattern::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let c = preset_two_block_base(&h, 2, 1).unwrap();
        assert_eq!(c.coloring.order(), 2 * 4 + 1 - 2);
        validate(&c).unwrap();
    }

    #[test]
    fn cyclic_three_part_five_avoids_double_triangle() {
        let c = preset_cyclic_three(&pat("K3"), 2).unwrap();
        assert_eq!(c.coloring.order(), 15);
        validate(&c).unwrap();
    }

    #[test]
    fn cyclic_three_degenerate_is_rainbow_triangle() {
        let c = cyclic_three(1);
        assert_eq!(c.coloring.order(), 3);
        let used = c.coloring.used_colors();
        assert_eq!(used, vec![1, 2, 3]);
    }

    #[test]
    fn pentagon_base_has_no_mono_triangle() {
        let base = pentagon_k5();
        assert!(find_mono_embedding(&base, &pat("K3")).unwrap().is_none());
        // both classes are pentagons
        assert_eq!(base.edges_of_color(1).len(), 5);
        assert_eq!(base.edges_of_color(2).len(), 5);
    }

    #[test]
    fn union_green_triangles_validates() {
        let c = preset_union_green_triangles().unwrap();
        assert_eq!(c.coloring.order(), 11);
        validate(&c).unwrap();
    }

    #[test]
    fn union_green_single_copy_keeps_base() {
        let base = pentagon_k5();
        let c = build_disjoint_union_plus_green(&base, 1, 0).unwrap();
        assert_eq!(c.coloring.order(), 5);
        for u in 0..5 {
            for v in u + 1..5 {
                assert_eq!(c.coloring.color(u, v), base.color(u, v));
            }
        }
    }

    #[test]
    fn union_green_rejects_wrong_base_colors() {
        let base = EdgeColoring::monochromatic(4, 3, 3).unwrap();
        assert!(matches!(
            build_disjoint_union_plus_green(&base, 2, 1),
            Err(ConstructError::BaseUsesWrongColors(3))
        ));
    }

    #[test]
    fn case_b_own_color_classifies_b() {
        let c = build_case_b(&[(3, 2), (3, 3), (2, 4)], InnerColoring::OwnColor).unwrap();
        validate(&c).unwrap();
        let label = classify_p5(&c.coloring).unwrap();
        assert_eq!(label.case_letter(), "B");
    }

    #[test]
    fn case_b_single_part_is_monochromatic() {
        let c = build_case_b(&[(6, 2)], InnerColoring::OwnColor).unwrap();
        assert_eq!(c.coloring.used_colors(), vec![2]);
        validate(&c).unwrap();
    }

    #[test]
    fn case_b_rejects_duplicate_colors() {
        assert!(matches!(
            build_case_b(&[(3, 2), (4, 2)], InnerColoring::Dominant),
            Err(ConstructError::OverlappingPartColors(2))
        ));
        assert!(matches!(
            build_case_b(&[(3, 1)], InnerColoring::Dominant),
            Err(ConstructError::PartColorReserved(1))
        ));
    }

    #[test]
    fn case_b_with_given_inner_colorings() {
        let sub = EdgeColoring::build(3, 2, |_, _| 1).unwrap();
        let c = build_case_b(&[(3, 2), (2, 3)], InnerColoring::Given(vec![
            sub,
            EdgeColoring::monochromatic(2, 3, 3).unwrap(),
        ]))
        .unwrap();
        validate(&c).unwrap();
    }

    #[test]
    fn bound_formula_examples() {
        assert_eq!(
            bound_formula(&pat("K3"), BoundFormula::ChromaticLower, None).unwrap(),
            5
        );
        assert_eq!(
            bound_formula(&pat("P2"), BoundFormula::ChromaticLower, None).unwrap(),
            2
        );
        assert_eq!(
            bound_formula(&pat("2K4"), BoundFormula::CliquePackingUpper, None).unwrap(),
            53
        );
        assert_eq!(
            bound_formula(&pat("2K3"), BoundFormula::CliquePackingUpper, None).unwrap(),
            2 * 5 + 2
        );
        assert_eq!(
            bound_formula(&pat("2K3"), BoundFormula::TwoCopiesUpper, None).unwrap(),
            (3 - 1) * (6 - 1) + 2
        );
    }

    #[test]
    fn bound_formula_dependencies() {
        // K5 has no shipped value
        assert!(matches!(
            bound_formula(&pat("2K5"), BoundFormula::CliquePackingUpper, None),
            Err(ConstructError::MissingRamseyValue(_))
        ));
        assert_eq!(
            bound_formula(&pat("2K5"), BoundFormula::CliquePackingUpper, Some(45)).unwrap(),
            4 * 44 + 2
        );
        assert!(matches!(
            bound_formula(&pat("K3+K4"), BoundFormula::CliquePackingUpper, None),
            Err(ConstructError::NotCliquePacking)
        ));
        assert!(matches!(
            bound_formula(&pat("K3+C5"), BoundFormula::TwoCopiesUpper, Some(9)),
            Err(ConstructError::NotTwoCopies)
        ));
        assert!(matches!(
            bound_formula(&pat("2K2"), BoundFormula::ChromaticLower, None),
            Err(ConstructError::NotConnected)
        ));
    }

    #[test]
    fn preset_keys_are_stable_anchors() {
        // regression anchors: equivalent presets produce identical keys
        let a = build_matching_k4().canonical_key();
        let b = build_matching_k4().canonical_key();
        assert_eq!(a, b);
        let c = preset_blocks_triangles(2).unwrap().canonical_key();
        let d = three_block(5, 1).canonical_key();
        assert_eq!(c, d);
    }
}
