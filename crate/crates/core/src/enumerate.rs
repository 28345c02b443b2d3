//! Enumeration of edge colorings of `K_n` up to symmetry.
//!
//! Candidates are colex color sequences. In color-symmetric mode only
//! restricted growth strings are generated (each new color is the smallest
//! unused one), which enumerates set partitions of the edge set into at most
//! `max_colors` blocks; otherwise all raw assignments are generated. A
//! candidate is yielded iff it is its own canonical form, so the stream
//! contains exactly one representative per equivalence class and needs no
//! shared seen-set. That also makes splitting trivial: sub-streams partition
//! the candidate space by prefix and stay independently filterable.

use thiserror::Error;

use crate::canon::{from_colex, is_canonical_colex};
use crate::coloring::{Color, EdgeColoring};

/// Default cap on the vertex count.
pub const DEFAULT_VERTEX_CAP: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("vertex count {0} exceeds the enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("max_colors must be at least 1")]
    NoColors,
}

/// Streaming enumerator over canonical colorings; see the module docs.
#[derive(Debug, Clone)]
pub struct ColoringEnumerator {
    n: usize,
    max_colors: Color,
    color_symmetric: bool,
    /// how many leading positions are frozen by the active prefix
    frozen: usize,
    /// prefixes still to be processed after the active one runs out
    pending: Vec<Vec<Color>>,
    /// the full candidate sequence; None once this prefix is exhausted
    full: Option<Vec<Color>>,
    started: bool,
}

impl ColoringEnumerator {
    /// One representative per class of colorings of `K_n` with at most
    /// `max_colors` colors, modulo vertex permutations (and color
    /// permutations when `color_symmetric`).
    pub fn new(n: usize, max_colors: Color, color_symmetric: bool) -> Result<Self, EnumerateError> {
        Self::with_cap(n, max_colors, color_symmetric, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(
        n: usize,
        max_colors: Color,
        color_symmetric: bool,
        cap: usize,
    ) -> Result<Self, EnumerateError> {
        if n > cap {
            return Err(EnumerateError::CapExceeded(n, cap));
        }
        if max_colors == 0 {
            return Err(EnumerateError::NoColors);
        }
        Ok(ColoringEnumerator {
            n,
            max_colors,
            color_symmetric,
            frozen: 0,
            pending: Vec::new(),
            full: Some(Vec::new()),
            started: false,
        })
    }

    fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Highest color allowed at `pos` given the values before it.
    fn limit_at(&self, full: &[Color], pos: usize) -> Color {
        if self.color_symmetric {
            let prev_max = full[..pos].iter().copied().max().unwrap_or(0);
            self.max_colors.min(prev_max + 1)
        } else {
            self.max_colors
        }
    }

    /// Advances to the next raw candidate under the active prefix.
    fn next_candidate(&mut self) -> bool {
        let m = self.edge_count();
        if self.full.is_none() {
            return false;
        }
        if !self.started {
            self.started = true;
            self.full.as_mut().unwrap().resize(m, 1);
            return true;
        }
        let mut pos = m;
        loop {
            if pos == self.frozen {
                self.full = None;
                return false;
            }
            pos -= 1;
            let limit = self.limit_at(self.full.as_ref().unwrap(), pos);
            let full = self.full.as_mut().unwrap();
            if full[pos] < limit {
                full[pos] += 1;
                for slot in &mut full[pos + 1..] {
                    *slot = 1;
                }
                return true;
            }
        }
    }

    fn advance_prefix(&mut self) -> bool {
        match self.pending.pop() {
            Some(p) => {
                self.frozen = p.len();
                self.full = Some(p);
                self.started = false;
                true
            }
            None => false,
        }
    }

    /// Splits the remaining stream into at most `pieces` independent
    /// streams whose disjoint union equals this stream. Call before
    /// iterating.
    pub fn split(self, pieces: usize) -> Vec<ColoringEnumerator> {
        assert!(!self.started, "split before iterating");
        let pieces = pieces.max(1);
        let m = self.edge_count();
        if pieces == 1 || m == 0 {
            return vec![self];
        }
        let mut depth = 1;
        while depth < m && self.prefixes_of_len(depth).len() < 4 * pieces {
            depth += 1;
        }
        let prefixes = self.prefixes_of_len(depth);
        let buckets = pieces.min(prefixes.len());
        let mut sets: Vec<Vec<Vec<Color>>> = vec![Vec::new(); buckets];
        for (i, p) in prefixes.into_iter().enumerate() {
            sets[i % buckets].push(p);
        }
        sets.into_iter()
            .map(|mut pending| {
                pending.reverse();
                let mut e = ColoringEnumerator {
                    n: self.n,
                    max_colors: self.max_colors,
                    color_symmetric: self.color_symmetric,
                    frozen: 0,
                    pending,
                    full: None,
                    started: true,
                };
                e.advance_prefix();
                e
            })
            .collect()
    }

    fn prefixes_of_len(&self, depth: usize) -> Vec<Vec<Color>> {
        let mut out = Vec::new();
        let mut cur: Vec<Color> = Vec::new();
        self.gen_prefixes(depth, &mut cur, &mut out);
        out
    }

    fn gen_prefixes(&self, depth: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        let limit = self.limit_at(cur, cur.len());
        for c in 1..=limit {
            cur.push(c);
            self.gen_prefixes(depth, cur, out);
            cur.pop();
        }
    }
}

impl Iterator for ColoringEnumerator {
    type Item = EdgeColoring;

    fn next(&mut self) -> Option<EdgeColoring> {
        loop {
            if self.full.is_none() && !self.advance_prefix() {
                return None;
            }
            if !self.next_candidate() {
                continue;
            }
            let seq = self.full.as_ref().unwrap();
            if is_canonical_colex(self.n, seq, self.color_symmetric) {
                let k = seq.iter().copied().max().unwrap_or(1);
                return Some(from_colex(self.n, k, seq));
            }
        }
    }
}
