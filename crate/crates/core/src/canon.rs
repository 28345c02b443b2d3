//! Canonical forms for edge colorings under vertex (and optionally color)
//! permutations.
//!
//! The canonical key of a coloring is the lexicographically smallest color
//! sequence over all vertex orderings, edges enumerated in colex order
//! (pairs sorted by higher endpoint first: 01, 02, 12, 03, 13, 23, ...).
//! In color-symmetric mode the sequence is additionally renamed so colors
//! appear in first-use order, which makes every canonical sequence a
//! restricted growth string; the enumeration module exploits this to filter
//! candidates without any shared seen-set.
//!
//! Two colorings get equal keys iff they differ by a vertex permutation
//! (plus a color permutation in color-symmetric mode). The key is computed
//! by backtracking over vertex orderings with prefix pruning; no
//! compatibility with external canonical-labeling tools is promised, only
//! self-consistency.

use crate::coloring::{Color, EdgeColoring};

/// Colex index of pair `{i, j}` with `i < j`.
#[inline]
pub fn colex_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Color sequence of `g` in colex pair order.
pub fn colex_sequence(g: &EdgeColoring) -> Vec<Color> {
    let n = g.order();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for i in 0..j {
            out.push(g.color(i, j));
        }
    }
    out
}

/// Builds a coloring from a colex color sequence.
pub fn from_colex(n: usize, k: Color, seq: &[Color]) -> EdgeColoring {
    assert_eq!(seq.len(), n * (n - 1) / 2);
    EdgeColoring::build(n, k, |u, v| seq[colex_index(u, v)])
        .expect("colex sequence must hold palette colors")
}

/// Canonical key bytes: vertex count, then the minimized color sequence.
pub fn canonical_key(g: &EdgeColoring, color_symmetric: bool) -> Vec<u8> {
    let n = g.order();
    let seq = colex_sequence(g);
    let min_seq = minimize(n, &seq, color_symmetric);
    let mut bytes = Vec::with_capacity(4 + 2 * min_seq.len());
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for c in min_seq {
        bytes.extend_from_slice(&c.to_be_bytes());
    }
    bytes
}

/// True iff the two colorings differ by a vertex permutation (and a color
/// permutation when `color_symmetric`).
pub fn equivalent(a: &EdgeColoring, b: &EdgeColoring, color_symmetric: bool) -> bool {
    a.order() == b.order()
        && canonical_key(a, color_symmetric) == canonical_key(b, color_symmetric)
}

/// First-use renaming of a color sequence (colors become 1, 2, ... in order
/// of first appearance).
pub fn normalize_colors(seq: &[Color]) -> Vec<Color> {
    let mut rename: Vec<Color> = Vec::new();
    let mut out = Vec::with_capacity(seq.len());
    for &c in seq {
        match rename.iter().position(|&r| r == c) {
            Some(i) => out.push(i as Color + 1),
            None => {
                rename.push(c);
                out.push(rename.len() as Color);
            }
        }
    }
    out
}

/// True iff no vertex reordering (with first-use color renaming when
/// `color_symmetric`) produces a strictly smaller colex sequence than `seq`
/// itself. In color-symmetric mode `seq` must already be first-use
/// normalized.
pub(crate) fn is_canonical_colex(n: usize, seq: &[Color], color_symmetric: bool) -> bool {
    let mut search = Search::new(n, seq, color_symmetric, seq.to_vec(), true);
    search.dfs();
    !search.improved
}

fn minimize(n: usize, seq: &[Color], color_symmetric: bool) -> Vec<Color> {
    let start = if color_symmetric {
        normalize_colors(seq)
    } else {
        seq.to_vec()
    };
    let mut search = Search::new(n, seq, color_symmetric, start, false);
    search.dfs();
    search.best
}

/// Backtracking over vertex orderings. `order[p]` is the original vertex
/// placed at position `p`; placing position `p` appends the colors of pairs
/// (0,p)..(p-1,p), exactly the next colex column.
///
/// `best` is improved in place: whenever the current prefix goes strictly
/// below it, the deviating position is lowered and everything after is reset
/// to the max sentinel. Depth-first order then completes that same path to a
/// leaf before any sibling is compared, so `best` is always a concrete
/// achievable sequence outside the active improving path.
struct Search<'a> {
    n: usize,
    seq: &'a [Color],
    color_symmetric: bool,
    best: Vec<Color>,
    order: Vec<usize>,
    used: u64,
    rename: Vec<Color>,
    next_color: Color,
    /// accept mode: abort as soon as any strictly smaller prefix exists
    accept_mode: bool,
    improved: bool,
}

impl<'a> Search<'a> {
    fn new(
        n: usize,
        seq: &'a [Color],
        color_symmetric: bool,
        best: Vec<Color>,
        accept_mode: bool,
    ) -> Self {
        assert!(n <= 64, "canonical forms support at most 64 vertices");
        let max_color = seq.iter().copied().max().unwrap_or(0);
        Search {
            n,
            seq,
            color_symmetric,
            best,
            order: Vec::with_capacity(n),
            used: 0,
            rename: vec![0; max_color as usize + 1],
            next_color: 0,
            accept_mode,
            improved: false,
        }
    }

    #[inline]
    fn raw_color(&self, a: usize, b: usize) -> Color {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.seq[colex_index(i, j)]
    }

    fn dfs(&mut self) {
        if self.accept_mode && self.improved {
            return;
        }
        let p = self.order.len();
        if p == self.n {
            return;
        }
        let base = p * p.saturating_sub(1) / 2;
        for w in 0..self.n {
            if self.used & (1 << w) != 0 {
                continue;
            }
            let mut renamed_here: Vec<Color> = Vec::new();
            let mut prune = false;
            for q in 0..p {
                let mut c = self.raw_color(self.order[q], w);
                if self.color_symmetric {
                    let slot = &mut self.rename[c as usize];
                    if *slot == 0 {
                        self.next_color += 1;
                        *slot = self.next_color;
                        renamed_here.push(c);
                    }
                    c = *slot;
                }
                let pos = base + q;
                if c > self.best[pos] {
                    prune = true;
                    break;
                }
                if c < self.best[pos] {
                    if self.accept_mode {
                        self.improved = true;
                        prune = true;
                        break;
                    }
                    self.best[pos] = c;
                    for slot in &mut self.best[pos + 1..] {
                        *slot = Color::MAX;
                    }
                }
            }
            if !prune {
                self.order.push(w);
                self.used |= 1 << w;
                self.dfs();
                self.used &= !(1 << w);
                self.order.pop();
            }
            for c in renamed_here.into_iter().rev() {
                self.rename[c as usize] = 0;
                self.next_color -= 1;
            }
            if self.accept_mode && self.improved {
                return;
            }
        }
    }
}
