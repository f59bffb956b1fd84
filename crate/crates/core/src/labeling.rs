//! Labelings, validity checks and per-edge color lists.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{edge, Edge, Graph, Path};

/// Largest color count supported by [`ColorSet`].
pub const MAX_LIST_COLORS: u32 = 64;

/// Subset of the strong colors `1..=64`; color `i` is bit `i - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(c: u32) -> ColorSet {
        assert!(c <= MAX_LIST_COLORS);
        if c == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << c) - 1)
        }
    }

    pub fn single(color: u32) -> ColorSet {
        ColorSet(1u64 << (color - 1))
    }

    pub fn from_colors(colors: impl IntoIterator<Item = u32>) -> ColorSet {
        colors.into_iter().fold(ColorSet::EMPTY, |s, x| s.with(x))
    }

    #[inline]
    pub fn contains(self, color: u32) -> bool {
        (1..=64).contains(&color) && self.0 >> (color - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, color: u32) -> ColorSet {
        ColorSet(self.0 | 1u64 << (color - 1))
    }

    #[inline]
    pub fn without(self, color: u32) -> ColorSet {
        ColorSet(self.0 & !(1u64 << (color - 1)))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    #[inline]
    pub fn symmetric_difference(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 ^ o.0)
    }

    /// Smallest color, if any.
    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(i + 1)
        })
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Allowed strong colors per edge. Edges without an entry allow every color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeLists {
    pub c: u32,
    pub allowed: BTreeMap<Edge, ColorSet>,
}

impl EdgeLists {
    pub fn full(c: u32) -> EdgeLists {
        EdgeLists {
            c,
            allowed: BTreeMap::new(),
        }
    }

    pub fn get(&self, e: Edge) -> ColorSet {
        self.allowed
            .get(&e)
            .copied()
            .unwrap_or_else(|| ColorSet::full(self.c))
    }

    pub fn set(&mut self, e: Edge, s: ColorSet) {
        self.allowed.insert(e, s);
    }

    /// Checks the color range and that every entry names an edge of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.c > MAX_LIST_COLORS {
            return input(format!("edge lists support at most {MAX_LIST_COLORS} colors"));
        }
        let full = ColorSet::full(self.c);
        for (&(a, b), s) in &self.allowed {
            if !g.has_edge(a, b) {
                return input(format!("list given for non-edge ({a},{b})"));
            }
            if !s.difference(full).is_empty() {
                return input(format!("list of ({a},{b}) has a color outside 1..={}", self.c));
            }
        }
        Ok(())
    }

    /// One explicit list per edge of `g`, in edge order.
    pub fn dense(&self, g: &Graph) -> Vec<ColorSet> {
        g.edges().iter().map(|&e| self.get(e)).collect()
    }
}

/// Color per edge, aligned with [`Graph::edges`]; 0 is weak.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    pub c: u32,
    pub colors: Vec<u32>,
}

/// Colors along consecutive path edges.
pub type ColorSequence = Vec<u32>;

impl Labeling {
    pub fn all_weak(g: &Graph, c: u32) -> Labeling {
        Labeling {
            c,
            colors: vec![0; g.m()],
        }
    }

    pub fn weak_count(&self) -> usize {
        self.colors.iter().filter(|&&x| x == 0).count()
    }

    /// Color of edge `{a, b}`.
    pub fn color_of(&self, g: &Graph, a: usize, b: usize) -> Option<u32> {
        g.edge_index(a, b).map(|i| self.colors[i])
    }

    /// Number of distinct strong colors in use.
    pub fn strong_colors_used(&self) -> usize {
        let mut v: Vec<u32> = self.colors.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    fn check_cover(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.m() {
            return input(format!(
                "labeling has {} entries, graph has {} edges",
                self.colors.len(),
                g.m()
            ));
        }
        if let Some(&x) = self.colors.iter().find(|&&x| x > self.c) {
            return input(format!("color {x} exceeds c = {}", self.c));
        }
        Ok(())
    }
}

/// No two incident edges share a strong color.
pub fn check_proper(g: &Graph, l: &Labeling) -> Result<bool> {
    l.check_cover(g)?;
    for v in 0..g.n() {
        let mut seen: Vec<u32> = g
            .neighbors(v)
            .iter()
            .map(|&w| l.colors[g.edge_index(v, w).unwrap()])
            .filter(|&x| x > 0)
            .collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No induced P₃ has both edges in the same strong color.
pub fn check_stc(g: &Graph, l: &Labeling) -> Result<bool> {
    l.check_cover(g)?;
    Ok(first_stc_violation(g, l).is_none())
}

/// Some induced P₃ `(u, v, w)` with center `v` whose edges share a strong color.
pub fn first_stc_violation(g: &Graph, l: &Labeling) -> Option<(usize, usize, usize)> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            let cu = l.colors[g.edge_index(u, v).unwrap()];
            if cu == 0 {
                continue;
            }
            for &w in &nb[i + 1..] {
                if l.colors[g.edge_index(v, w).unwrap()] == cu && !g.has_edge(u, w) {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// Every edge is weak or colored from its list.
pub fn check_psi_satisfying(g: &Graph, l: &Labeling, psi: &EdgeLists) -> Result<bool> {
    l.check_cover(g)?;
    Ok(g
        .edges()
        .iter()
        .zip(&l.colors)
        .all(|(&e, &x)| x == 0 || psi.get(e).contains(x)))
}

pub fn color_sequence(g: &Graph, l: &Labeling, p: &Path) -> Result<ColorSequence> {
    l.check_cover(g)?;
    p.validate(g)?;
    Ok(p
        .vertices
        .windows(2)
        .map(|w| l.colors[g.edge_index(w[0], w[1]).unwrap()])
        .collect())
}

/// Writes `seq` onto E(p); other edges keep their colors.
pub fn apply_sequence(g: &Graph, l: &Labeling, p: &Path, seq: &[u32]) -> Result<Labeling> {
    l.check_cover(g)?;
    p.validate(g)?;
    if seq.len() != p.len() {
        return input(format!("sequence has {} entries, path has {} edges", seq.len(), p.len()));
    }
    let mut out = l.clone();
    for (w, &x) in p.vertices.windows(2).zip(seq) {
        if x > l.c {
            return input(format!("color {x} exceeds c = {}", l.c));
        }
        out.colors[g.edge_index(w[0], w[1]).unwrap()] = x;
    }
    Ok(out)
}

/// Labeling from explicit `(u, v, color)` triples that must cover E(g) exactly.
pub fn labeling_from_triples(g: &Graph, c: u32, triples: &[(usize, usize, u32)]) -> Result<Labeling> {
    let mut colors = vec![u32::MAX; g.m()];
    for &(a, b, x) in triples {
        let Some(i) = g.edge_index(a, b) else {
            let (a, b) = edge(a, b);
            return input(format!("({a},{b}) is not an edge"));
        };
        if colors[i] != u32::MAX {
            return input(format!("edge ({a},{b}) labeled twice"));
        }
        if x > c {
            return input(format!("color {x} exceeds c = {c}"));
        }
        colors[i] = x;
    }
    if let Some(i) = colors.iter().position(|&x| x == u32::MAX) {
        let (a, b) = g.edges()[i];
        return input(format!("edge ({a},{b}) has no label"));
    }
    Ok(Labeling { c, colors })
}
