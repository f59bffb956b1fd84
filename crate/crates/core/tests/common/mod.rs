//! Exhaustive reference implementations used by the integration tests.
#![allow(dead_code)]

use edgekernel::{ColorSet, Graph, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut es = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                es.push((a, b));
            }
        }
    }
    Graph::new(n, es).unwrap()
}

/// Minimum weak count over all labelings, by depth-first enumeration with
/// pairwise conflict checks only.
pub fn brute_min_weak(inst: &Instance) -> usize {
    let g = &inst.graph;
    let m = g.m();
    let lists = inst.lists();
    let proper = inst.kind.is_proper();
    // conflicting earlier edges per edge
    let mut conf: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..i {
            let (a, b) = g.edges()[i];
            let (x, y) = g.edges()[j];
            let shared = [a, b].iter().find(|&&v| v == x || v == y).copied();
            if let Some(s) = shared {
                let o1 = if a == s { b } else { a };
                let o2 = if x == s { y } else { x };
                if proper || !g.has_edge(o1, o2) {
                    conf[i].push(j);
                }
            }
        }
    }
    let mut colors = vec![0u32; m];
    let mut best = m;
    fn go(i: usize, weak: usize, colors: &mut [u32], lists: &[ColorSet], conf: &[Vec<usize>], c: u32, best: &mut usize) {
        if weak >= *best {
            return;
        }
        if i == colors.len() {
            *best = weak;
            return;
        }
        for col in 1..=c {
            if lists[i].contains(col) && conf[i].iter().all(|&j| colors[j] != col) {
                colors[i] = col;
                go(i + 1, weak, colors, lists, conf, c, best);
            }
        }
        colors[i] = 0;
        go(i + 1, weak + 1, colors, lists, conf, c, best);
    }
    go(0, 0, &mut colors, &lists, &conf, inst.c, &mut best);
    best
}

/// ξ_t by trying edge subsets in order of size.
pub fn brute_xi(g: &Graph, t: usize) -> usize {
    let m = g.m();
    let mut best = m;
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[a] -= 1;
                deg[b] -= 1;
            }
        }
        if deg.iter().all(|&d| d <= t) {
            best = size;
        }
    }
    best
}

/// λ_t by trying vertex subsets.
pub fn brute_lambda(g: &Graph, t: usize) -> usize {
    let n = g.n();
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let comps = g.components_where(|v| mask >> v & 1 == 0);
        if comps.iter().all(|c| c.len() <= t) {
            best = size;
        }
    }
    best
}

pub fn random_list(rng: &mut ChaCha8Rng, c: u32) -> ColorSet {
    ColorSet::from_colors((1..=c).filter(|_| rng.random_bool(0.5)))
}
