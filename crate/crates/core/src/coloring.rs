//! Edge colorings of complete graphs and the `colored-graph v1` text format.
//!
//! An [`EdgeColoring`] assigns one color out of a palette `1..=k` to every
//! unordered pair of distinct vertices of `K_n`. Values are immutable after
//! construction and safe to share across threads.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Edge colors are 1-based palette indices; 0 never names a color.
pub type Color = u16;

/// Fixed palette for DOT export, cycled when a coloring uses more colors.
pub const DOT_PALETTE: [&str; 12] = [
    "red", "blue", "green3", "orange", "purple", "brown", "cyan3", "magenta", "olive", "navy",
    "teal", "maroon",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex count must be at least 1")]
    EmptyGraph,
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("edge ({0}, {1}) is out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("color {0} is outside the palette 1..={1}")]
    ColorOutOfRange(Color, Color),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("missing edge ({0}, {1})")]
    MissingEdge(usize, usize),
}

/// Parse failure for the `colored-graph v1` format, with a 1-based line number.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed header: expected `colored-graph v1`")]
    MalformedMagic,
    #[error("malformed header: expected `n=<N> k=<K>`")]
    MalformedHeader,
    #[error("malformed edge line: expected `<u> <v> <c>`")]
    MalformedEdge,
    #[error("{0}")]
    Invalid(ColoringError),
}

/// A k-coloring of the edges of the complete graph `K_n`.
///
/// Colors are stored in a flat upper-triangular array indexed by the pair
/// `{u, v}` with `u < v`. Every pair has exactly one color in `1..=k`; the
/// palette size `k` may exceed the number of colors actually used.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: Color,
    colors: Vec<Color>,
}

/// Index of pair `{u, v}` (`u < v`) in row-major upper-triangular order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// All pairs `u < v` in the order used by the flat array.
pub fn pairs_lex(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

impl EdgeColoring {
    /// Builds a coloring from a function on pairs, validating the palette.
    pub fn build(
        n: usize,
        k: Color,
        mut color_of: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self, ColoringError> {
        if n == 0 {
            return Err(ColoringError::EmptyGraph);
        }
        if k == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        let mut colors = Vec::with_capacity(n * (n - 1) / 2);
        for (u, v) in pairs_lex(n) {
            let c = color_of(u, v);
            if c == 0 || c > k {
                return Err(ColoringError::ColorOutOfRange(c, k));
            }
            colors.push(c);
        }
        Ok(EdgeColoring { n, k, colors })
    }

    /// Builds a coloring from an explicit edge list; every pair must appear
    /// exactly once.
    pub fn from_edges(
        n: usize,
        k: Color,
        edges: &[(usize, usize, Color)],
    ) -> Result<Self, ColoringError> {
        if n == 0 {
            return Err(ColoringError::EmptyGraph);
        }
        if k == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        let mut colors = vec![0 as Color; n * (n - 1) / 2];
        for &(a, b, c) in edges {
            if a == b || a >= n || b >= n {
                return Err(ColoringError::EdgeOutOfRange(a, b, n));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if c == 0 || c > k {
                return Err(ColoringError::ColorOutOfRange(c, k));
            }
            let idx = pair_index(n, u, v);
            if colors[idx] != 0 {
                return Err(ColoringError::DuplicateEdge(u, v));
            }
            colors[idx] = c;
        }
        for (u, v) in pairs_lex(n) {
            if colors[pair_index(n, u, v)] == 0 {
                return Err(ColoringError::MissingEdge(u, v));
            }
        }
        Ok(EdgeColoring { n, k, colors })
    }

    /// The coloring of `K_n` with every edge in one color.
    pub fn monochromatic(n: usize, color: Color, k: Color) -> Result<Self, ColoringError> {
        Self::build(n, k, |_, _| color)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Palette size; colors range over `1..=palette()`.
    pub fn palette(&self) -> Color {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_index(self.n, u, v)]
    }

    /// Flat color array in lexicographic pair order.
    pub fn colors_flat(&self) -> &[Color] {
        &self.colors
    }

    /// Distinct colors appearing on at least one edge, ascending.
    pub fn used_colors(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.colors.iter().copied().collect();
        set.into_iter().collect()
    }

    /// The edge set of color `c`.
    pub fn edges_of_color(&self, c: Color) -> Vec<(usize, usize)> {
        pairs_lex(self.n)
            .filter(|&(u, v)| self.color(u, v) == c)
            .collect()
    }

    /// The vertex set incident to at least one edge of color `c`.
    pub fn vertices_touching(&self, c: Color) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for (u, v) in pairs_lex(self.n) {
            if self.color(u, v) == c {
                seen[u] = true;
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    /// Applies a vertex relabeling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut colors = vec![0 as Color; self.colors.len()];
        for (u, v) in pairs_lex(self.n) {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            colors[pair_index(self.n, a, b)] = self.color(u, v);
        }
        EdgeColoring {
            n: self.n,
            k: self.k,
            colors,
        }
    }

    /// Applies a color relabeling: color `c` becomes `map(c)`.
    pub fn recolor(&self, k: Color, map: impl Fn(Color) -> Color) -> Result<Self, ColoringError> {
        Self::build(self.n, k, |u, v| map(self.color(u, v)))
    }

    /// Returns the same coloring with a (weakly) larger palette.
    pub fn widen_palette(&self, k: Color) -> Result<Self, ColoringError> {
        if k < self.k {
            for &c in &self.colors {
                if c > k {
                    return Err(ColoringError::ColorOutOfRange(c, k));
                }
            }
        }
        Ok(EdgeColoring {
            n: self.n,
            k,
            colors: self.colors.clone(),
        })
    }

    /// Parses the `colored-graph v1` text format.
    ///
    /// ```text
    /// colored-graph v1
    /// n=<N> k=<K>
    /// <u> <v> <c>      (one line per edge, 0 <= u < v < N, 1 <= c <= K)
    /// ```
    ///
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let fail = |line, kind| Err(ParseError { line, kind });
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty());

        let (magic_line, magic) = match lines.next() {
            Some(x) => x,
            None => return fail(1, ParseErrorKind::MalformedMagic),
        };
        if magic != "colored-graph v1" {
            return fail(magic_line, ParseErrorKind::MalformedMagic);
        }

        let (hdr_line, hdr) = match lines.next() {
            Some(x) => x,
            None => return fail(magic_line + 1, ParseErrorKind::MalformedHeader),
        };
        let (n, k) = match parse_header(hdr) {
            Some(nk) => nk,
            None => return fail(hdr_line, ParseErrorKind::MalformedHeader),
        };
        if n == 0 {
            return fail(hdr_line, ParseErrorKind::Invalid(ColoringError::EmptyGraph));
        }
        if k == 0 {
            return fail(
                hdr_line,
                ParseErrorKind::Invalid(ColoringError::EmptyPalette),
            );
        }

        let mut colors = vec![0 as Color; n * (n - 1) / 2];
        let mut last_line = hdr_line;
        for (line, body) in lines {
            last_line = line;
            let mut it = body.split_whitespace();
            let (a, b, c) = match (it.next(), it.next(), it.next(), it.next()) {
                (Some(a), Some(b), Some(c), None) => (a, b, c),
                _ => return fail(line, ParseErrorKind::MalformedEdge),
            };
            let (u, v, c) = match (a.parse::<usize>(), b.parse::<usize>(), c.parse::<Color>()) {
                (Ok(u), Ok(v), Ok(c)) => (u, v, c),
                _ => return fail(line, ParseErrorKind::MalformedEdge),
            };
            if u >= v || v >= n {
                return fail(
                    line,
                    ParseErrorKind::Invalid(ColoringError::EdgeOutOfRange(u, v, n)),
                );
            }
            if c == 0 || c > k {
                return fail(
                    line,
                    ParseErrorKind::Invalid(ColoringError::ColorOutOfRange(c, k)),
                );
            }
            let idx = pair_index(n, u, v);
            if colors[idx] != 0 {
                return fail(
                    line,
                    ParseErrorKind::Invalid(ColoringError::DuplicateEdge(u, v)),
                );
            }
            colors[idx] = c;
        }
        for (u, v) in pairs_lex(n) {
            if colors[pair_index(n, u, v)] == 0 {
                return fail(
                    last_line,
                    ParseErrorKind::Invalid(ColoringError::MissingEdge(u, v)),
                );
            }
        }
        Ok(EdgeColoring { n, k, colors })
    }

    /// Serializes to the `colored-graph v1` format, edges in lexicographic
    /// order. `parse(to_cg1(g)) == g` for every coloring.
    pub fn to_cg1(&self) -> String {
        let mut out = String::new();
        out.push_str("colored-graph v1\n");
        out.push_str(&format!("n={} k={}\n", self.n, self.k));
        for (u, v) in pairs_lex(self.n) {
            out.push_str(&format!("{} {} {}\n", u, v, self.color(u, v)));
        }
        out
    }

    /// DOT export; each color maps to a fixed palette entry, cycling past 12.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("graph coloring {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {};\n", v));
        }
        for (u, v) in pairs_lex(self.n) {
            let c = self.color(u, v);
            let name = DOT_PALETTE[(c as usize - 1) % DOT_PALETTE.len()];
            out.push_str(&format!("  {} -- {} [color={}];\n", u, v, name));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{} with palette {}", self.n, self.k)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

fn parse_header(s: &str) -> Option<(usize, Color)> {
    let mut it = s.split_whitespace();
    let n_part = it.next()?;
    let k_part = it.next()?;
    if it.next().is_some() {
        return None;
    }
    let n = n_part.strip_prefix("n=")?.parse::<usize>().ok()?;
    let k = k_part.strip_prefix("k=")?.parse::<Color>().ok()?;
    Some((n, k))
}
