//! Small target graphs and the pattern expression grammar.
//!
//! A [`Pattern`] is the graph `H` we look for inside color classes. Derived
//! attributes (connectivity, bipartition sides, chromatic number, smallest
//! color class) are recomputed on demand and never stored, so they cannot go
//! stale.
//!
//! Grammar: `expr := term ("+" term)*`, `term := [mult] base`,
//! `base := "P"int | "C"int | "K"int | "K_{"int","int"}"`. `+` is disjoint
//! union and a multiplier makes disjoint copies, so `2K3` is two disjoint
//! triangles.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest pattern order for which the exact chromatic solvers run.
pub const CHROMATIC_ORDER_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("pattern order {0} exceeds the exact-solver cap of {1}")]
    OrderTooLarge(usize, usize),
    #[error("pattern is not bipartite")]
    NotBipartite,
}

/// Parse failure with a 0-based byte position into the expression.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("position {position}: {message}")]
pub struct PatternParseError {
    pub position: usize,
    pub message: String,
}

/// A small simple graph used as a detection target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pattern {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Pattern {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, PatternError> {
        if n == 0 {
            return Err(PatternError::Empty);
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(PatternError::EdgeOutOfRange(a, b, n));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Pattern { n, edges: set })
    }

    /// Path on `n` vertices (`P1` is a single vertex).
    pub fn path(n: usize) -> Result<Self, PatternError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self, PatternError> {
        if n < 3 {
            return Err(PatternError::EdgeOutOfRange(n, 0, n));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, PatternError> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, PatternError> {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Self::new(a + b, &edges)
    }

    /// Disjoint union, relabeling the second operand above the first.
    pub fn disjoint_union(&self, other: &Pattern) -> Pattern {
        let shift = self.n;
        let mut edges = self.edges.clone();
        for &(u, v) in &other.edges {
            edges.insert((u + shift, v + shift));
        }
        Pattern {
            n: self.n + other.n,
            edges,
        }
    }

    /// `m` disjoint copies of `self`.
    pub fn repeated(&self, m: usize) -> Result<Pattern, PatternError> {
        if m == 0 {
            return Err(PatternError::Empty);
        }
        let mut out = self.clone();
        for _ in 1..m {
            out = out.disjoint_union(self);
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn has_isolated_vertices(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Labels of the connected component of each vertex.
    fn component_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            id[start] = next;
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if id[w] == usize::MAX {
                        id[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        id
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().iter().all(|&c| c == 0)
    }

    /// Connected components as patterns with local vertex labels.
    pub fn components(&self) -> Vec<Pattern> {
        self.components_with_maps()
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Components plus the map from local labels back to labels in `self`.
    pub fn components_with_maps(&self) -> Vec<(Pattern, Vec<usize>)> {
        let ids = self.component_ids();
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut verts: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &c) in ids.iter().enumerate() {
            verts[c].push(v);
        }
        verts
            .into_iter()
            .map(|vs| {
                let mut local = vec![usize::MAX; self.n];
                for (i, &v) in vs.iter().enumerate() {
                    local[v] = i;
                }
                let edges: Vec<_> = self
                    .edges
                    .iter()
                    .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
                    .map(|&(u, v)| (local[u], local[v]))
                    .collect();
                (
                    Pattern::new(vs.len(), &edges).expect("component is nonempty"),
                    vs,
                )
            })
            .collect()
    }

    /// A proper 2-coloring as side flags, or `None` if an odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                let sv = side[v].unwrap();
                for w in self.neighbors(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Sizes `(b, s)` of the two sides of the most balanced bipartition,
    /// with `b >= s` and `b + s = order`. Components can flip sides
    /// independently, so the achievable splits are found by a subset sum
    /// over per-component side sizes.
    pub fn bipartition_sides(&self) -> Result<(usize, usize), PatternError> {
        let coloring = self.two_coloring().ok_or(PatternError::NotBipartite)?;
        let ids = self.component_ids();
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut side_a = vec![0usize; count];
        let mut side_b = vec![0usize; count];
        for (v, &c) in ids.iter().enumerate() {
            if coloring[v] {
                side_a[c] += 1;
            } else {
                side_b[c] += 1;
            }
        }
        // achievable[x]: some choice of per-component flips puts x vertices
        // on the first side
        let mut achievable = vec![false; self.n + 1];
        achievable[0] = true;
        for c in 0..count {
            let mut next = vec![false; self.n + 1];
            for (x, &ok) in achievable.iter().enumerate() {
                if ok {
                    next[x + side_a[c]] = true;
                    next[x + side_b[c]] = true;
                }
            }
            achievable = next;
        }
        let small = (0..=self.n / 2)
            .rev()
            .find(|&x| achievable[x])
            .expect("0 is always achievable");
        Ok((self.n - small, small))
    }

    /// Order of the bigger side of the most balanced bipartition.
    pub fn big_side(&self) -> Result<usize, PatternError> {
        self.bipartition_sides().map(|(b, _)| b)
    }

    /// Order of the smaller side of the most balanced bipartition.
    pub fn small_side(&self) -> Result<usize, PatternError> {
        self.bipartition_sides().map(|(_, s)| s)
    }

    /// Exact chromatic number by branch and bound; order capped at
    /// [`CHROMATIC_ORDER_CAP`].
    pub fn chromatic_number(&self) -> Result<usize, PatternError> {
        if self.n > CHROMATIC_ORDER_CAP {
            return Err(PatternError::OrderTooLarge(self.n, CHROMATIC_ORDER_CAP));
        }
        if self.edges.is_empty() {
            return Ok(1);
        }
        if self.is_bipartite() {
            return Ok(2);
        }
        for q in 3..=self.n {
            if self.min_class_over_colorings(q).is_some() {
                return Ok(q);
            }
        }
        unreachable!("K_n is n-colorable")
    }

    /// Minimum size of the smallest class over all proper colorings with
    /// exactly the chromatic number of colors.
    pub fn min_color_class(&self) -> Result<usize, PatternError> {
        let chi = self.chromatic_number()?;
        Ok(self
            .min_class_over_colorings(chi)
            .expect("chromatic number is attained"))
    }

    /// Backtracking over proper colorings with at most `q` colors, classes
    /// canonical by first appearance. Returns the minimum size of the
    /// smallest class over colorings using all `q` colors, or `None` if no
    /// such coloring exists.
    fn min_class_over_colorings(&self, q: usize) -> Option<usize> {
        let neighbors: Vec<Vec<usize>> = (0..self.n).map(|v| self.neighbors(v)).collect();
        let mut assignment = vec![usize::MAX; self.n];
        let mut best: Option<usize> = None;
        fn rec(
            v: usize,
            n: usize,
            q: usize,
            neighbors: &[Vec<usize>],
            assignment: &mut [usize],
            best: &mut Option<usize>,
        ) {
            if v == n {
                let mut counts = vec![0usize; q];
                for &c in assignment.iter() {
                    counts[c] += 1;
                }
                if counts.iter().all(|&c| c > 0) {
                    let smallest = counts.iter().copied().min().unwrap();
                    if best.is_none_or(|b| smallest < b) {
                        *best = Some(smallest);
                    }
                }
                return;
            }
            let max_used = assignment[..v]
                .iter()
                .copied()
                .max()
                .map_or(0, |m| m + 1);
            for c in 0..q.min(max_used + 1) {
                if neighbors[v].iter().all(|&w| assignment[w] != c) {
                    assignment[v] = c;
                    rec(v + 1, n, q, neighbors, assignment, best);
                    assignment[v] = usize::MAX;
                }
            }
        }
        rec(0, self.n, q, &neighbors, &mut assignment, &mut best);
        best
    }

    /// Parses a pattern expression; see the module docs for the grammar.
    pub fn parse(expr: &str) -> Result<Pattern, PatternParseError> {
        Parser::new(expr).parse()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph on {} vertices, {} edges", self.n, self.size())
    }
}

impl std::str::FromStr for Pattern {
    type Err = PatternParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, PatternParseError> {
        Err(PatternParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn integer(&mut self) -> Result<usize, PatternParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<usize>()
            .map_err(|_| PatternParseError {
                position: start,
                message: "integer too large".into(),
            })
    }

    fn parse(mut self) -> Result<Pattern, PatternParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.disjoint_union(&rhs);
                }
                Some(c) => return self.fail(format!("unexpected character `{}`", c as char)),
            }
        }
    }

    fn term(&mut self) -> Result<Pattern, PatternParseError> {
        let at = self.pos;
        let mult = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let m = self.integer()?;
                if m == 0 {
                    return Err(PatternParseError {
                        position: at,
                        message: "multiplicity must be at least 1".into(),
                    });
                }
                m
            }
            _ => 1,
        };
        let base = self.base()?;
        base.repeated(mult).map_err(|_| PatternParseError {
            position: self.pos,
            message: "invalid repetition".into(),
        })
    }

    fn base(&mut self) -> Result<Pattern, PatternParseError> {
        let lift = |p: Result<Pattern, PatternError>, pos: usize| {
            p.map_err(|e| PatternParseError {
                position: pos,
                message: e.to_string(),
            })
        };
        self.skip_ws();
        let at = self.pos;
        match self.bump() {
            Some(b'P') => {
                let n = self.integer()?;
                lift(Pattern::path(n), at)
            }
            Some(b'C') => {
                let n = self.integer()?;
                if n < 3 {
                    return Err(PatternParseError {
                        position: at,
                        message: "cycles need at least 3 vertices".into(),
                    });
                }
                lift(Pattern::cycle(n), at)
            }
            Some(b'K') => {
                if self.peek() == Some(b'_') {
                    self.bump();
                    if self.peek() != Some(b'{') {
                        return self.fail("expected `{` after `K_`");
                    }
                    self.bump();
                    let a = self.integer()?;
                    if self.peek() != Some(b',') {
                        return self.fail("expected `,` in `K_{a,b}`");
                    }
                    self.bump();
                    let b = self.integer()?;
                    if self.peek() != Some(b'}') {
                        return self.fail("expected `}` closing `K_{a,b}`");
                    }
                    self.bump();
                    if a == 0 || b == 0 {
                        return Err(PatternParseError {
                            position: at,
                            message: "bipartite sides must be at least 1".into(),
                        });
                    }
                    lift(Pattern::complete_bipartite(a, b), at)
                } else {
                    let n = self.integer()?;
                    lift(Pattern::complete(n), at)
                }
            }
            Some(c) => {
                self.pos = at;
                self.fail(format!("expected P, C or K, found `{}`", c as char))
            }
            None => self.fail("expected a pattern term"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_attributes() {
        let p = Pattern::parse("P3").unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.size(), 2);
        assert!(p.is_connected());
        assert_eq!(p.bipartition_sides().unwrap(), (2, 1));
        assert_eq!(p.chromatic_number().unwrap(), 2);
    }

    #[test]
    fn two_triangles() {
        let p = Pattern::parse("2K3").unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.size(), 6);
        assert!(!p.is_connected());
        assert_eq!(p.components().len(), 2);
        assert_eq!(p.chromatic_number().unwrap(), 3);
        assert!(!p.is_bipartite());
    }

    #[test]
    fn union_of_star_and_edge() {
        let p = Pattern::parse("K_{1,2}+K2").unwrap();
        assert_eq!(p.order(), 5);
        assert!(!p.is_connected());
        assert!(p.is_bipartite());
        // every bipartition puts the two leaves opposite the center, so the
        // split is always 3 vs 2
        assert_eq!(p.bipartition_sides().unwrap(), (3, 2));
    }

    #[test]
    fn balanced_split_can_flip_components() {
        // two stars: sides (1,2) each, so 3/3 is achievable
        let p = Pattern::parse("2K_{1,2}").unwrap();
        assert_eq!(p.bipartition_sides().unwrap(), (3, 3));
    }

    #[test]
    fn bipartition_matches_exhaustive_oracle() {
        for expr in [
            "P2",
            "P5",
            "2K2",
            "K_{1,2}+K2",
            "2K_{1,2}",
            "C6",
            "3P3",
            "P4+K_{2,3}",
        ] {
            let p = Pattern::parse(expr).unwrap();
            let (b, s) = p.bipartition_sides().unwrap();
            let (ob, os) = oracle_balanced_bipartition(&p).unwrap();
            assert_eq!((b, s), (ob, os), "{expr}");
        }
        assert!(Pattern::parse("K3").unwrap().bipartition_sides().is_err());
    }

    /// Enumerates all side assignments, keeps the proper ones, returns the
    /// most balanced (big, small).
    fn oracle_balanced_bipartition(p: &Pattern) -> Option<(usize, usize)> {
        let n = p.order();
        let mut best: Option<(usize, usize)> = None;
        for mask in 0u32..(1 << n) {
            let proper = p.edges().all(|(u, v)| (mask >> u) & 1 != (mask >> v) & 1);
            if !proper {
                continue;
            }
            let a = mask.count_ones() as usize;
            let (big, small) = (a.max(n - a), a.min(n - a));
            if best.is_none_or(|(bb, _)| big < bb) {
                best = Some((big, small));
            }
        }
        best
    }

    #[test]
    fn chromatic_numbers_match_oracle() {
        for expr in [
            "P2", "P4", "K3", "K4", "C5", "C6", "2K3", "K_{2,3}", "K5", "P3+K3",
        ] {
            let p = Pattern::parse(expr).unwrap();
            assert_eq!(p.chromatic_number().unwrap(), oracle_chromatic(&p), "{expr}");
        }
    }

    /// Smallest q such that some assignment of q colors is proper, found by
    /// trying all q^n assignments.
    fn oracle_chromatic(p: &Pattern) -> usize {
        let n = p.order();
        for q in 1..=n {
            let mut assignment = vec![0usize; n];
            'assignments: loop {
                if p.edges().all(|(u, v)| assignment[u] != assignment[v]) {
                    return q;
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break 'assignments;
                    }
                    assignment[i] += 1;
                    if assignment[i] < q {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
            }
        }
        unreachable!("n colors always suffice")
    }

    #[test]
    fn min_color_class_examples() {
        // all classes are singletons in a proper 3-coloring of K3
        assert_eq!(Pattern::parse("K3").unwrap().min_color_class().unwrap(), 1);
        assert_eq!(Pattern::parse("P2").unwrap().min_color_class().unwrap(), 1);
        // C5 admits a 3-coloring with a singleton class
        assert_eq!(Pattern::parse("C5").unwrap().min_color_class().unwrap(), 1);
        // each triangle of 2K3 uses all three colors once, so every class
        // has exactly one vertex per triangle
        assert_eq!(Pattern::parse("2K3").unwrap().min_color_class().unwrap(), 2);
        // edgeless: chi = 1, the single class holds everything
        assert_eq!(Pattern::parse("P1").unwrap().min_color_class().unwrap(), 1);
    }

    #[test]
    fn chromatic_two_iff_bipartite_with_edges() {
        for expr in ["P1", "P2", "P3", "K3", "C4", "C5", "2K2", "K_{3,3}", "2P1"] {
            let p = Pattern::parse(expr).unwrap();
            let chi = p.chromatic_number().unwrap();
            assert_eq!(chi == 2, p.is_bipartite() && p.size() >= 1, "{expr}");
        }
    }

    #[test]
    fn component_orders_sum_to_total() {
        for expr in ["2K3", "K_{1,2}+K2+P4", "5K2", "P1+P1"] {
            let p = Pattern::parse(expr).unwrap();
            let total: usize = p.components().iter().map(|c| c.order()).sum();
            assert_eq!(total, p.order(), "{expr}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Pattern::parse("0K3").unwrap_err();
        assert_eq!(err.position, 0);
        assert!(err.message.contains("multiplicity"));

        let err = Pattern::parse("P3 + Q2").unwrap_err();
        assert_eq!(err.position, 5);

        let err = Pattern::parse("K_{1 2}").unwrap_err();
        assert!(err.message.contains(","));

        let err = Pattern::parse("C2").unwrap_err();
        assert!(err.message.contains("3 vertices"));

        assert!(Pattern::parse("").is_err());
        assert!(Pattern::parse("P3+").is_err());
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            Pattern::parse(" 2 K3 + P4 ").unwrap(),
            Pattern::parse("2K3+P4").unwrap()
        );
    }

    #[test]
    fn isolated_vertices_flagged() {
        assert!(Pattern::parse("P1+K3").unwrap().has_isolated_vertices());
        assert!(!Pattern::parse("2K3").unwrap().has_isolated_vertices());
    }

    #[test]
    fn order_cap_is_enforced() {
        let p = Pattern::parse("13K2").unwrap();
        assert_eq!(p.order(), 26);
        assert!(matches!(
            p.chromatic_number(),
            Err(PatternError::OrderTooLarge(26, _))
        ));
        // cheap attributes still work
        assert!(p.is_bipartite());
    }
}
