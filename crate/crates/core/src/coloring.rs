//! Constructive Δ+1 edge coloring (Misra–Gries).

use crate::error::{contract, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;

const NONE: usize = usize::MAX;

struct State<'g> {
    g: &'g Graph,
    palette: usize,
    // at[v * (palette + 1) + color] = neighbor joined to v by an edge of that color
    at: Vec<usize>,
    colors: Vec<u32>,
}

impl<'g> State<'g> {
    fn slot(&self, v: usize, col: u32) -> usize {
        v * (self.palette + 1) + col as usize
    }

    fn is_free(&self, v: usize, col: u32) -> bool {
        self.at[self.slot(v, col)] == NONE
    }

    fn free_color(&self, v: usize) -> u32 {
        (1..=self.palette as u32)
            .find(|&x| self.is_free(v, x))
            .expect("a vertex of degree ≤ Δ always misses one of Δ+1 colors")
    }

    fn color(&self, a: usize, b: usize) -> u32 {
        self.colors[self.g.edge_index(a, b).unwrap()]
    }

    fn set(&mut self, a: usize, b: usize, col: u32) {
        let i = self.g.edge_index(a, b).unwrap();
        let old = self.colors[i];
        if old != 0 {
            let (sa, sb) = (self.slot(a, old), self.slot(b, old));
            self.at[sa] = NONE;
            self.at[sb] = NONE;
        }
        self.colors[i] = col;
        if col != 0 {
            let (sa, sb) = (self.slot(a, col), self.slot(b, col));
            debug_assert!(self.at[sa] == NONE && self.at[sb] == NONE);
            self.at[sa] = b;
            self.at[sb] = a;
        }
    }

    fn maximal_fan(&self, u: usize, v: usize) -> Vec<usize> {
        let mut fan = vec![v];
        let mut in_fan = vec![false; self.g.n()];
        in_fan[v] = true;
        loop {
            let last = *fan.last().unwrap();
            let next = self.g.neighbors(u).iter().copied().find(|&w| {
                if in_fan[w] {
                    return false;
                }
                let col = self.color(u, w);
                col != 0 && self.is_free(last, col)
            });
            match next {
                Some(w) => {
                    in_fan[w] = true;
                    fan.push(w);
                }
                None => return fan,
            }
        }
    }

    // swaps c and d on the maximal path from u that starts with a d-edge
    fn invert_cd_path(&mut self, u: usize, c: u32, d: u32) {
        if c == d {
            return;
        }
        let mut path = Vec::new();
        let (mut cur, mut col) = (u, d);
        loop {
            let w = self.at[self.slot(cur, col)];
            if w == NONE {
                break;
            }
            path.push((cur, w, col));
            cur = w;
            col = if col == c { d } else { c };
        }
        for &(a, b, _) in &path {
            self.set(a, b, 0);
        }
        for &(a, b, col) in &path {
            self.set(a, b, if col == c { d } else { c });
        }
    }

    fn color_edge(&mut self, u: usize, v: usize) {
        let fan = self.maximal_fan(u, v);
        let c = self.free_color(u);
        let d = self.free_color(*fan.last().unwrap());
        self.invert_cd_path(u, c, d);
        let w = fan
            .iter()
            .position(|&x| self.is_free(x, d))
            .expect("some fan vertex misses d after the inversion");
        let shifted: Vec<u32> = (0..w).map(|j| self.color(u, fan[j + 1])).collect();
        for &x in &fan[..=w] {
            self.set(u, x, 0);
        }
        for (j, &col) in shifted.iter().enumerate() {
            self.set(u, fan[j], col);
        }
        self.set(u, fan[w], d);
    }
}

/// Proper edge coloring with colors `1..=Δ+1`, no weak edges.
///
/// `colors` is the color count of the returned labeling and must be at least Δ+1.
pub fn vizing_color(g: &Graph, colors: u32) -> Result<Labeling> {
    let delta = g.max_degree();
    if (colors as usize) < delta + 1 {
        return contract(format!("{colors} colors requested, Δ+1 = {}", delta + 1));
    }
    let palette = delta + 1;
    let mut st = State {
        g,
        palette,
        at: vec![NONE; g.n() * (palette + 1)],
        colors: vec![0; g.m()],
    };
    for &(u, v) in g.edges() {
        st.color_edge(u, v);
    }
    Ok(Labeling {
        c: colors,
        colors: st.colors,
    })
}

/// A weak-free proper labeling with at most `c` colors, found when Δ ≤ c − 1 or
/// when `g` is bipartite with Δ ≤ c. `None` says nothing about colorability.
pub fn try_color_exactly(g: &Graph, c: u32) -> Option<Labeling> {
    let delta = g.max_degree();
    if delta < c as usize {
        return Some(vizing_color(g, c).expect("Δ+1 ≤ c"));
    }
    if delta == c as usize && is_bipartite(g) {
        return Some(bipartite_color(g, c));
    }
    None
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for comp in g.connected_components() {
        side[comp[0]] = 0;
        let mut stack = vec![comp[0]];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

// Kőnig: alternating-path recoloring with exactly Δ colors
fn bipartite_color(g: &Graph, c: u32) -> Labeling {
    let palette = c as usize;
    let mut st = State {
        g,
        palette,
        at: vec![NONE; g.n() * (palette + 1)],
        colors: vec![0; g.m()],
    };
    for &(u, v) in g.edges() {
        let a = st.free_color(u);
        if !st.is_free(v, a) {
            let b = st.free_color(v);
            // the a/b path from v cannot reach u in a bipartite graph
            st.invert_cd_path(v, b, a);
        }
        st.set(u, v, a);
    }
    Labeling { c, colors: st.colors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::check_proper;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::new(10, e).unwrap()
    }

    #[test]
    fn small_cases() {
        let l = vizing_color(&Graph::empty(3), 1).unwrap();
        assert!(l.colors.is_empty());
        let star = Graph::star(5);
        let l = vizing_color(&star, 6).unwrap();
        assert!(check_proper(&star, &l).unwrap());
        assert_eq!(l.strong_colors_used(), 5);
        assert_eq!(l.weak_count(), 0);
        assert!(vizing_color(&star, 5).is_err());
    }

    #[test]
    fn petersen_four_colors() {
        let g = petersen();
        let l = vizing_color(&g, 4).unwrap();
        assert!(check_proper(&g, &l).unwrap());
        assert_eq!(l.weak_count(), 0);
        assert!(l.colors.iter().all(|&x| (1..=4).contains(&x)));
    }

    #[test]
    fn exact_wrapper() {
        let p4 = Graph::path(4);
        let l = try_color_exactly(&p4, 2).unwrap();
        assert!(check_proper(&p4, &l).unwrap());
        assert!(try_color_exactly(&Graph::complete(3), 3).is_some());
        assert!(try_color_exactly(&Graph::complete(4), 3).is_none());
    }
}
