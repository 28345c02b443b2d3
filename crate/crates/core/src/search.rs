//! Arrowing deciders and Ramsey-number computation.
//!
//! [`decide_arrowing`] asks whether every coloring of `K_n` with at most
//! `k` colors contains a required target. The search runs DFS over edges in
//! lexicographic order, assigning colors with first-unused-color pruning
//! when the query treats colors symmetrically, and pruning any branch whose
//! partial coloring already contains a target (targets only persist as
//! edges are added, so pruned branches cannot yield counterexamples).
//! A leaf is therefore a complete coloring avoiding every target: a
//! counterexample witness.
//!
//! The DFS frontier at a fixed depth is split into independent subtrees
//! with fixed per-subtree node budgets, so results and witnesses are
//! identical across runs and thread counts. Budget exhaustion yields an
//! explicit [`Decision::Undecided`], never a guess. [`naive_oracle`] checks
//! the same contract by enumerating all raw colorings; the decider never
//! consults known Ramsey values.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coloring::{pairs_lex, Color, EdgeColoring};
use crate::detect::{
    components_masked, contains_connected_super, find_disjoint_packing, find_mono_embedding,
    find_packing_masked, find_rainbow_path, mask_all, rainbow_path, DetectError, HostView,
    PackingSpec, TargetPlan, HOST_VERTEX_CAP,
};

/// Raw colorings the naive oracle will enumerate at most.
pub const NAIVE_STATE_CAP: f64 = 1e8;

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error("queries need at least one color")]
    ZeroColors,
    #[error("host order {0} exceeds the supported {HOST_VERTEX_CAP}")]
    HostTooLarge(usize),
    #[error("host order must be at least 1")]
    HostTooSmall,
    #[error("rainbow path length {0} is outside 2..=6")]
    BadRainbowLength(usize),
    #[error("targets must contain at least one edge")]
    EdgelessTarget,
    #[error("naive enumeration of {0} colorings exceeds the cap of {NAIVE_STATE_CAP}")]
    NaiveTooLarge(f64),
    #[error("search window [{0}, {1}] is empty")]
    WindowEmpty(usize, usize),
    #[error(transparent)]
    Detect(#[from] DetectError),
}

/// An arrowing or number-computation request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RamseyQuery {
    /// every `colors`-coloring contains a monochromatic target
    Classical { colors: usize, target: PackingSpec },
    /// every red/blue coloring contains a red target or a blue target
    SetRamsey { red: PackingSpec, blue: PackingSpec },
    /// every `colors`-coloring contains a rainbow path on `rainbow_len`
    /// vertices or a monochromatic target
    Gallai {
        colors: usize,
        rainbow_len: usize,
        target: PackingSpec,
    },
}

impl RamseyQuery {
    pub fn colors(&self) -> usize {
        match self {
            RamseyQuery::Classical { colors, .. } | RamseyQuery::Gallai { colors, .. } => *colors,
            RamseyQuery::SetRamsey { .. } => 2,
        }
    }

    /// Whether color names are interchangeable for this query.
    pub fn color_symmetric(&self) -> bool {
        !matches!(self, RamseyQuery::SetRamsey { .. })
    }

    fn specs(&self) -> Vec<&PackingSpec> {
        match self {
            RamseyQuery::Classical { target, .. } | RamseyQuery::Gallai { target, .. } => {
                vec![target]
            }
            RamseyQuery::SetRamsey { red, blue } => vec![red, blue],
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.colors() == 0 {
            return Err(SearchError::ZeroColors);
        }
        if let RamseyQuery::Gallai { rainbow_len, .. } = self {
            if !(2..=6).contains(rainbow_len) {
                return Err(SearchError::BadRainbowLength(*rainbow_len));
            }
        }
        for spec in self.specs() {
            if spec.multiplicity == 0 {
                return Err(SearchError::Detect(DetectError::MultiplicityZero));
            }
            if spec.base.size() == 0 {
                return Err(SearchError::EdgelessTarget);
            }
        }
        Ok(())
    }
}

/// Node budget and parallelism knobs.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// total DFS nodes before the search reports UNDECIDED
    pub node_budget: u64,
    pub threads: usize,
    /// edges assigned before the frontier is split into subtrees
    pub split_depth: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 100_000_000,
            threads: 1,
            split_depth: 6,
        }
    }
}

/// Outcome of one arrowing decision.
#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    /// every coloring contains a target
    Arrows,
    /// a concrete coloring avoiding all targets
    Refuted(EdgeColoring),
    /// node budget exhausted before a conclusion
    Undecided { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RamseyValue {
    Exact(usize),
    /// the value is at least `lo`; `hi` is present when an upper bound is
    /// known
    Bracket { lo: usize, hi: Option<usize> },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub wall_ms: u64,
}

/// Result of a number computation: the value (or bracket), the extremal
/// witness one below the value, and search statistics.
#[derive(Debug, Clone)]
pub struct RamseyResult {
    pub query: RamseyQuery,
    pub value: RamseyValue,
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
}

impl RamseyResult {
    /// The stable JSON shape: query, value, optional bracket, witness in
    /// `colored-graph v1` text, stats.
    pub fn to_json(&self) -> Value {
        let (value, bracket) = match &self.value {
            RamseyValue::Exact(v) => (json!(v), Value::Null),
            RamseyValue::Bracket { lo, hi } => (Value::Null, json!([lo, hi])),
        };
        json!({
            "query": serde_json::to_value(&self.query).expect("query serializes"),
            "value": value,
            "bracket": bracket,
            "witness": self.witness.as_ref().map(|w| w.to_cg1()),
            "stats": serde_json::to_value(&self.stats).expect("stats serialize"),
        })
    }
}

// ---------------------------------------------------------------------------
// target plans

enum Targets {
    Classical {
        plan: TargetPlan,
        connected: bool,
    },
    SetRamsey {
        red: TargetPlan,
        red_connected: bool,
        blue: TargetPlan,
        blue_connected: bool,
    },
    Gallai {
        rainbow_len: usize,
        plan: TargetPlan,
        connected: bool,
    },
}

fn build_targets(q: &RamseyQuery) -> Result<Targets, SearchError> {
    let plan_of = |spec: &PackingSpec| TargetPlan::new(&spec.expanded()).map_err(SearchError::from);
    Ok(match q {
        RamseyQuery::Classical { target, .. } => Targets::Classical {
            plan: plan_of(target)?,
            connected: target.connected_super,
        },
        RamseyQuery::SetRamsey { red, blue } => Targets::SetRamsey {
            red: plan_of(red)?,
            red_connected: red.connected_super,
            blue: plan_of(blue)?,
            blue_connected: blue.connected_super,
        },
        RamseyQuery::Gallai {
            rainbow_len,
            target,
            ..
        } => Targets::Gallai {
            rainbow_len: *rainbow_len,
            plan: plan_of(target)?,
            connected: target.connected_super,
        },
    })
}

fn plan_present(adj: &[u64], n: usize, plan: &TargetPlan, connected: bool) -> bool {
    if connected {
        components_masked(adj, mask_all(n)).into_iter().any(|comp| {
            comp.count_ones() as usize >= plan.total
                && find_packing_masked(adj, comp, plan).is_some()
        })
    } else {
        find_packing_masked(adj, mask_all(n), plan).is_some()
    }
}

// ---------------------------------------------------------------------------
// the decider

/// Decides whether every coloring of `K_n` with the query's colors contains
/// a required target.
pub fn decide_arrowing(
    n: usize,
    q: &RamseyQuery,
    limits: &SearchLimits,
) -> Result<Decision, SearchError> {
    decide_arrowing_stats(n, q, limits).map(|(d, _)| d)
}

/// [`decide_arrowing`] plus the number of DFS nodes explored.
pub fn decide_arrowing_stats(
    n: usize,
    q: &RamseyQuery,
    limits: &SearchLimits,
) -> Result<(Decision, u64), SearchError> {
    q.validate()?;
    if n == 0 {
        return Err(SearchError::HostTooSmall);
    }
    if n > HOST_VERTEX_CAP {
        return Err(SearchError::HostTooLarge(n));
    }
    let targets = build_targets(q)?;
    let edges: Vec<(usize, usize)> = pairs_lex(n).collect();
    // a coloring cannot use more colors than it has edges, and symmetric
    // queries never need to
    let k = if q.color_symmetric() {
        q.colors().min(edges.len().max(1))
    } else {
        q.colors()
    };

    // frontier of surviving partial assignments at the split depth
    let depth = limits.split_depth.min(edges.len());
    let mut gen = Engine::new(n, k, q.color_symmetric(), &edges, &targets);
    gen.budget = limits.node_budget;
    let mut frontier: Vec<Vec<Color>> = Vec::new();
    gen.collect_frontier(0, 0, depth, &mut frontier);
    let frontier_nodes = gen.nodes;
    if gen.undecided {
        return Ok((
            Decision::Undecided {
                nodes: frontier_nodes,
            },
            frontier_nodes,
        ));
    }
    if depth == edges.len() {
        // the frontier is already the full assignment space
        return Ok((
            match frontier.into_iter().next() {
                Some(prefix) => {
                    let mut eng = Engine::new(n, k, q.color_symmetric(), &edges, &targets);
                    eng.replay(&prefix);
                    Decision::Refuted(eng.snapshot())
                }
                None => Decision::Arrows,
            },
            frontier_nodes,
        ));
    }
    if frontier.is_empty() {
        return Ok((Decision::Arrows, frontier_nodes));
    }

    let slice = ((limits.node_budget.saturating_sub(frontier_nodes)) / frontier.len() as u64).max(1);
    let next = AtomicUsize::new(0);
    let best_refuted = AtomicUsize::new(usize::MAX);
    let total_nodes = AtomicU64::new(frontier_nodes);
    let results: Vec<Mutex<ItemResult>> = frontier
        .iter()
        .map(|_| Mutex::new(ItemResult::Skipped))
        .collect();

    let workers = limits.threads.max(1).min(frontier.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= frontier.len() {
                    break;
                }
                if i > best_refuted.load(Ordering::Relaxed) {
                    continue;
                }
                let mut eng = Engine::new(n, k, q.color_symmetric(), &edges, &targets);
                eng.budget = slice;
                eng.cancel = Some((&best_refuted, i));
                let max_used = eng.replay(&frontier[i]);
                let found = eng.dfs(depth, max_used);
                total_nodes.fetch_add(eng.nodes, Ordering::Relaxed);
                let outcome = match found {
                    Some(witness) => {
                        best_refuted.fetch_min(i, Ordering::Relaxed);
                        ItemResult::Refuted(witness)
                    }
                    None if eng.aborted => ItemResult::Skipped,
                    None if eng.undecided => ItemResult::Undecided,
                    None => ItemResult::Exhausted,
                };
                *results[i].lock().unwrap() = outcome;
            });
        }
    });

    let nodes = total_nodes.load(Ordering::Relaxed);
    let mut undecided = false;
    for cell in &results {
        let r = cell.lock().unwrap();
        match &*r {
            ItemResult::Refuted(w) => return Ok((Decision::Refuted(w.clone()), nodes)),
            ItemResult::Undecided => undecided = true,
            ItemResult::Exhausted | ItemResult::Skipped => {}
        }
    }
    if undecided {
        return Ok((Decision::Undecided { nodes }, nodes));
    }
    Ok((Decision::Arrows, nodes))
}

enum ItemResult {
    Refuted(EdgeColoring),
    Exhausted,
    Undecided,
    Skipped,
}

struct Engine<'a> {
    n: usize,
    k: usize,
    color_symmetric: bool,
    edges: &'a [(usize, usize)],
    targets: &'a Targets,
    view: HostView,
    nodes: u64,
    budget: u64,
    undecided: bool,
    aborted: bool,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

impl<'a> Engine<'a> {
    fn new(
        n: usize,
        k: usize,
        color_symmetric: bool,
        edges: &'a [(usize, usize)],
        targets: &'a Targets,
    ) -> Self {
        Engine {
            n,
            k,
            color_symmetric,
            edges,
            targets,
            view: HostView::empty(n, k),
            nodes: 0,
            budget: u64::MAX,
            undecided: false,
            aborted: false,
            cancel: None,
        }
    }

    /// Applies a previously collected prefix; returns its max used color.
    fn replay(&mut self, prefix: &[Color]) -> Color {
        let mut max_used = 0;
        for (i, &c) in prefix.iter().enumerate() {
            let (u, v) = self.edges[i];
            self.view.set(u, v, c);
            max_used = max_used.max(c);
        }
        max_used
    }

    fn snapshot(&self) -> EdgeColoring {
        EdgeColoring::build(self.n, self.k.max(1) as Color, |u, v| self.view.color(u, v))
            .expect("leaf colorings are complete")
    }

    fn allowed_colors(&self, max_used: Color) -> Color {
        if self.color_symmetric {
            (self.k as Color).min(max_used + 1)
        } else {
            self.k as Color
        }
    }

    /// True iff the partial coloring now contains a required target whose
    /// latest edge has color `c`. Targets persist under further coloring,
    /// so a hit makes every completion of this branch satisfied.
    fn satisfied_after(&self, c: Color) -> bool {
        match self.targets {
            Targets::Classical { plan, connected } => {
                plan_present(self.view.class_adj(c), self.n, plan, *connected)
            }
            Targets::SetRamsey {
                red,
                red_connected,
                blue,
                blue_connected,
            } => {
                if c == 1 {
                    plan_present(self.view.class_adj(1), self.n, red, *red_connected)
                } else {
                    plan_present(self.view.class_adj(2), self.n, blue, *blue_connected)
                }
            }
            Targets::Gallai {
                rainbow_len,
                plan,
                connected,
            } => {
                plan_present(self.view.class_adj(c), self.n, plan, *connected)
                    || rainbow_path(&self.view, *rainbow_len).is_some()
            }
        }
    }

    /// Collects every surviving partial assignment of the first `depth`
    /// edges.
    fn collect_frontier(&mut self, pos: usize, max_used: Color, depth: usize, out: &mut Vec<Vec<Color>>) {
        if self.undecided {
            return;
        }
        if self.nodes >= self.budget {
            self.undecided = true;
            return;
        }
        self.nodes += 1;
        if pos == depth {
            let prefix: Vec<Color> = (0..depth)
                .map(|i| {
                    let (u, v) = self.edges[i];
                    self.view.color(u, v)
                })
                .collect();
            out.push(prefix);
            return;
        }
        let (u, v) = self.edges[pos];
        for c in 1..=self.allowed_colors(max_used) {
            self.view.set(u, v, c);
            if !self.satisfied_after(c) {
                self.collect_frontier(pos + 1, max_used.max(c), depth, out);
            }
            self.view.unset(u, v, c);
        }
    }

    /// DFS for a counterexample from edge `pos` on.
    fn dfs(&mut self, pos: usize, max_used: Color) -> Option<EdgeColoring> {
        if self.aborted || self.undecided {
            return None;
        }
        if let Some((best, idx)) = self.cancel {
            if self.nodes.is_multiple_of(1024) && idx > best.load(Ordering::Relaxed) {
                self.aborted = true;
                return None;
            }
        }
        if self.nodes >= self.budget {
            self.undecided = true;
            return None;
        }
        self.nodes += 1;
        if pos == self.edges.len() {
            return Some(self.snapshot());
        }
        let (u, v) = self.edges[pos];
        for c in 1..=self.allowed_colors(max_used) {
            self.view.set(u, v, c);
            if !self.satisfied_after(c) {
                if let Some(w) = self.dfs(pos + 1, max_used.max(c)) {
                    self.view.unset(u, v, c);
                    return Some(w);
                }
                if self.aborted || self.undecided {
                    self.view.unset(u, v, c);
                    return None;
                }
            }
            self.view.unset(u, v, c);
        }
        None
    }
}

// ---------------------------------------------------------------------------
// naive oracle

/// Brute-force enumeration of all raw colorings, no symmetry reduction;
/// same answer contract as [`decide_arrowing`]. Target checks go through
/// the public detector API.
pub fn naive_oracle(n: usize, q: &RamseyQuery) -> Result<Decision, SearchError> {
    q.validate()?;
    if n == 0 {
        return Err(SearchError::HostTooSmall);
    }
    if n > HOST_VERTEX_CAP {
        return Err(SearchError::HostTooLarge(n));
    }
    let m = n * (n - 1) / 2;
    let k = q.colors().max(1);
    let states = (k as f64).powi(m as i32);
    if states > NAIVE_STATE_CAP {
        return Err(SearchError::NaiveTooLarge(states));
    }
    let mut assignment = vec![1 as Color; m];
    loop {
        let g = EdgeColoring::build(n, k as Color, |u, v| {
            assignment[crate::coloring::pair_index(n, u, v)]
        })
        .expect("assignment is total");
        if !coloring_satisfies(&g, q)? {
            return Ok(Decision::Refuted(g));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == m {
                return Ok(Decision::Arrows);
            }
            assignment[i] += 1;
            if assignment[i] <= k as Color {
                break;
            }
            assignment[i] = 1;
            i += 1;
        }
    }
}

/// Whether a complete coloring contains a target of the query; used by the
/// oracle and to validate witnesses.
pub fn coloring_satisfies(g: &EdgeColoring, q: &RamseyQuery) -> Result<bool, SearchError> {
    Ok(match q {
        RamseyQuery::Classical { target, .. } => spec_present(g, target)?,
        RamseyQuery::SetRamsey { red, blue } => {
            spec_present_in_color(g, red, 1)? || spec_present_in_color(g, blue, 2)?
        }
        RamseyQuery::Gallai {
            rainbow_len,
            target,
            ..
        } => find_rainbow_path(g, *rainbow_len)?.is_some() || spec_present(g, target)?,
    })
}

fn spec_present(g: &EdgeColoring, spec: &PackingSpec) -> Result<bool, SearchError> {
    if spec.connected_super {
        Ok(contains_connected_super(g, spec)?.is_some())
    } else {
        Ok(find_mono_embedding(g, &spec.expanded())?.is_some())
    }
}

fn spec_present_in_color(
    g: &EdgeColoring,
    spec: &PackingSpec,
    color: Color,
) -> Result<bool, SearchError> {
    if color > g.palette() {
        return Ok(false);
    }
    if spec.connected_super {
        Ok(crate::detect::connected_super_in_color(g, spec, color)?.is_some())
    } else {
        Ok(
            find_disjoint_packing(g, color, None, &spec.base, spec.multiplicity)?
                .is_some(),
        )
    }
}

// ---------------------------------------------------------------------------
// number computation

/// Smallest `n` in `[n_min, n_max]` where the query arrows, with the
/// extremal witness at `value - 1`. Monotonicity makes the first arrowing
/// `n` the answer. An undecided decision or an exhausted window produces a
/// bracket instead of a value.
pub fn compute_number(
    q: &RamseyQuery,
    n_min: usize,
    n_max: usize,
    limits: &SearchLimits,
) -> Result<RamseyResult, SearchError> {
    if n_min == 0 || n_min > n_max {
        return Err(SearchError::WindowEmpty(n_min, n_max));
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let mut witness: Option<EdgeColoring> = None;
    let mut outcome: Option<RamseyValue> = None;
    for n in n_min..=n_max {
        let (decision, nodes) = decide_arrowing_stats(n, q, limits)?;
        stats.nodes += nodes;
        match decision {
            Decision::Refuted(w) => {
                witness = Some(w);
                continue;
            }
            Decision::Arrows => {
                if witness.is_none() && n == n_min && n_min >= 2 {
                    // the window opened at the answer; fetch the witness
                    // one below for the lower-bound certificate
                    let (below, below_nodes) = decide_arrowing_stats(n - 1, q, limits)?;
                    stats.nodes += below_nodes;
                    if let Decision::Refuted(w) = below {
                        witness = Some(w);
                    }
                }
                outcome = Some(RamseyValue::Exact(n));
                break;
            }
            Decision::Undecided { .. } => {
                outcome = Some(RamseyValue::Bracket { lo: n, hi: None });
                break;
            }
        }
    }
    let value = outcome.unwrap_or(RamseyValue::Bracket {
        lo: n_max + 1,
        hi: None,
    });
    stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(RamseyResult {
        query: q.clone(),
        value,
        witness,
        stats,
    })
}

/// Convenience constructor for plain monochromatic targets.
pub fn classical_query(colors: usize, target: &crate::pattern::Pattern) -> RamseyQuery {
    RamseyQuery::Classical {
        colors,
        target: PackingSpec {
            base: target.clone(),
            multiplicity: 1,
            connected_super: false,
        },
    }
}

/// Convenience constructor for rainbow-path versus monochromatic-target
/// queries.
pub fn gallai_query(
    colors: usize,
    rainbow_len: usize,
    target: &crate::pattern::Pattern,
) -> RamseyQuery {
    RamseyQuery::Gallai {
        colors,
        rainbow_len,
        target: PackingSpec {
            base: target.clone(),
            multiplicity: 1,
            connected_super: false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::equivalent;
    use crate::construct::build_matching_k4;
    use crate::pattern::Pattern;

    fn pat(expr: &str) -> Pattern {
        Pattern::parse(expr).unwrap()
    }

    fn limits() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn three_color_path_number_is_five() {
        let q = classical_query(3, &pat("P3"));
        let r = compute_number(&q, 2, 6, &limits()).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(5));
        let w = r.witness.unwrap();
        assert_eq!(w.order(), 4);
        // the witness must avoid monochromatic P3 entirely
        assert!(!coloring_satisfies(&w, &q).unwrap());
        // and it is the proper-3-edge-coloring of K4 up to symmetry
        assert!(equivalent(&w, &build_matching_k4().coloring, true));
    }

    #[test]
    fn two_color_path_number_is_three() {
        let q = classical_query(2, &pat("P3"));
        let r = compute_number(&q, 2, 5, &limits()).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(3));
        assert_eq!(r.witness.unwrap().order(), 2);
    }

    #[test]
    fn rainbow_p4_or_p3_needs_five_vertices() {
        for k in [3, 4] {
            let q = gallai_query(k, 4, &pat("P3"));
            assert_eq!(decide_arrowing(5, &q, &limits()).unwrap(), Decision::Arrows);
            match decide_arrowing(4, &q, &limits()).unwrap() {
                Decision::Refuted(w) => {
                    assert!(equivalent(&w, &build_matching_k4().coloring, true));
                }
                other => panic!("expected refutation at 4, got {other:?}"),
            }
        }
    }

    #[test]
    fn single_color_single_edge_arrows_at_two() {
        let q = classical_query(1, &pat("P2"));
        assert_eq!(decide_arrowing(2, &q, &limits()).unwrap(), Decision::Arrows);
        let r = compute_number(&q, 1, 4, &limits()).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(2));
    }

    #[test]
    fn two_color_p4_number_matches_naive() {
        let q = classical_query(2, &pat("P4"));
        assert!(matches!(naive_oracle(4, &q).unwrap(), Decision::Refuted(_)));
        assert_eq!(naive_oracle(5, &q).unwrap(), Decision::Arrows);
        let r = compute_number(&q, 2, 6, &limits()).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(5));
    }

    #[test]
    fn connected_pentagon_versus_matching_edge() {
        // red connected supergraph of C5 or a blue edge
        let q = RamseyQuery::SetRamsey {
            red: PackingSpec {
                base: pat("C5"),
                multiplicity: 1,
                connected_super: true,
            },
            blue: PackingSpec {
                base: pat("K2"),
                multiplicity: 1,
                connected_super: false,
            },
        };
        let r = compute_number(&q, 2, 7, &limits()).unwrap();
        assert_eq!(r.value, RamseyValue::Exact(5));
        // witness: all-red K4
        let w = r.witness.unwrap();
        assert_eq!(w.order(), 4);
        assert!(!coloring_satisfies(&w, &q).unwrap());
    }

    #[test]
    fn engine_matches_oracle_on_spot_grid() {
        let targets = ["P3", "K3", "2K2"];
        for n in 2..=4usize {
            for k in 1..=3usize {
                for t in targets {
                    let q = classical_query(k, &pat(t));
                    let fast = decide_arrowing(n, &q, &limits()).unwrap();
                    let slow = naive_oracle(n, &q).unwrap();
                    assert_eq!(
                        matches!(fast, Decision::Arrows),
                        matches!(slow, Decision::Arrows),
                        "n={n} k={k} target={t}"
                    );
                    if let Decision::Refuted(w) = fast {
                        assert!(!coloring_satisfies(&w, &q).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn arrowing_is_monotone() {
        let q = gallai_query(3, 5, &pat("P3"));
        let mut seen_arrow = false;
        for n in 2..=6 {
            match decide_arrowing(n, &q, &limits()).unwrap() {
                Decision::Arrows => seen_arrow = true,
                Decision::Refuted(_) => {
                    assert!(!seen_arrow, "arrowing must be monotone in n");
                }
                Decision::Undecided { .. } => panic!("budget should not bind"),
            }
        }
        assert!(seen_arrow);
    }

    #[test]
    fn witnesses_deterministic_across_threads() {
        let q = classical_query(3, &pat("P3"));
        let mut limits1 = limits();
        limits1.threads = 1;
        let mut limits4 = limits();
        limits4.threads = 4;
        let w1 = match decide_arrowing(4, &q, &limits1).unwrap() {
            Decision::Refuted(w) => w,
            other => panic!("{other:?}"),
        };
        let w4 = match decide_arrowing(4, &q, &limits4).unwrap() {
            Decision::Refuted(w) => w,
            other => panic!("{other:?}"),
        };
        assert_eq!(w1, w4);
    }

    #[test]
    fn tiny_budget_reports_undecided() {
        let q = classical_query(2, &pat("K3"));
        let tight = SearchLimits {
            node_budget: 3,
            threads: 1,
            split_depth: 6,
        };
        match decide_arrowing(6, &q, &tight).unwrap() {
            Decision::Undecided { nodes } => assert!(nodes <= 4),
            other => panic!("expected undecided, got {other:?}"),
        }
        // and compute_number turns that into a bracket
        let r = compute_number(&q, 6, 6, &tight).unwrap();
        assert_eq!(
            r.value,
            RamseyValue::Bracket {
                lo: 6,
                hi: None
            }
        );
    }

    #[test]
    fn naive_gallai_witness_is_the_matching_coloring() {
        // the only rainbow-P4-free mono-P3-free coloring of K4 is the
        // matching coloring, so any refutation must be equivalent to it
        let q = gallai_query(3, 4, &pat("P3"));
        match naive_oracle(4, &q).unwrap() {
            Decision::Refuted(w) => {
                assert!(equivalent(&w, &build_matching_k4().coloring, true));
            }
            other => panic!("expected refutation, got {other:?}"),
        }
        assert_eq!(
            naive_oracle(3, &classical_query(1, &pat("K3"))).unwrap(),
            Decision::Arrows
        );
    }

    #[test]
    fn naive_cap_is_enforced() {
        let q = classical_query(3, &pat("K3"));
        assert!(matches!(
            naive_oracle(7, &q),
            Err(SearchError::NaiveTooLarge(_))
        ));
    }

    #[test]
    fn edgeless_targets_rejected() {
        let q = classical_query(2, &pat("P1"));
        assert!(matches!(
            decide_arrowing(3, &q, &limits()),
            Err(SearchError::EdgelessTarget)
        ));
    }

    #[test]
    fn window_exhaustion_brackets() {
        let q = classical_query(2, &pat("K3"));
        let r = compute_number(&q, 2, 4, &limits()).unwrap();
        assert_eq!(
            r.value,
            RamseyValue::Bracket {
                lo: 5,
                hi: None
            }
        );
        assert_eq!(r.witness.unwrap().order(), 4);
    }

    #[test]
    fn result_json_shape() {
        let q = classical_query(2, &pat("P3"));
        let r = compute_number(&q, 2, 4, &limits()).unwrap();
        let v = r.to_json();
        assert_eq!(v["value"], 3);
        assert!(v["witness"].as_str().unwrap().starts_with("colored-graph v1"));
        assert!(v["stats"]["nodes"].is_number() || v["stats"]["nodes"].is_null());
    }
}
