//! Edge-list kernel for ξ₂: BDP rules 9–16, isolated triangles (Rule 17) for
//! EL-Multi-STC, and the exact subroutines for isolated paths and cycles.

use std::collections::BTreeMap;

use crate::error::{contract, Result};
use crate::graph::{edge, enumerate_bdps_and_isolated_cycles, BoundedDegreePath, Edge, Graph};
use crate::instance::{Instance, Kind};
use crate::labeling::{ColorSet, EdgeLists};
use crate::params::greedy_deletion_set;

use super::{check_kind, finish, KernelOutcome, Reduced, RuleApplication};

/// Orients a BDP so that deg(first) ≥ deg(last); ties put the lower id first.
pub fn ordered_bdp(g: &Graph, p: &BoundedDegreePath) -> BoundedDegreePath {
    let (a, b) = (p.first(), p.last());
    let (da, db) = (g.degree(a), g.degree(b));
    if da > db || da == db && a <= b {
        p.clone()
    } else {
        BoundedDegreePath {
            path: p.path.reversed(),
            open: p.open,
        }
    }
}

#[derive(Debug, Clone)]
struct State {
    n: usize,
    lists: BTreeMap<Edge, ColorSet>,
    k: i64,
}

impl State {
    fn from_lists(g: &Graph, psi: &EdgeLists, k: i64) -> State {
        State {
            n: g.n(),
            lists: g.edges().iter().map(|&e| (e, psi.get(e))).collect(),
            k,
        }
    }

    fn graph(&self) -> Graph {
        Graph::new(self.n, self.lists.keys().copied()).expect("reduced edges stay simple")
    }

    fn psi(&self, a: usize, b: usize) -> ColorSet {
        self.lists[&edge(a, b)]
    }

    fn set(&mut self, a: usize, b: usize, s: ColorSet) {
        self.lists.insert(edge(a, b), s);
    }

    fn remove(&mut self, a: usize, b: usize) {
        self.lists.remove(&edge(a, b));
    }

    fn fresh(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RuleSet {
    /// Rules 9–12 only, for isolated paths.
    Path,
    Full { stc: bool },
}

fn app(rule: &str, mut vertices: Vec<usize>, edges: Vec<Edge>, k_delta: i64) -> RuleApplication {
    vertices.sort_unstable();
    vertices.dedup();
    RuleApplication::new(rule, vertices, edges, k_delta)
}

fn path_edges(vs: &[usize]) -> Vec<Edge> {
    vs.windows(2).map(|w| edge(w[0], w[1])).collect()
}

/// Finds and applies the highest-priority applicable rule.
fn step(s: &mut State, g: &Graph, rules: RuleSet) -> Result<Option<RuleApplication>> {
    let (bdps, cycles) = enumerate_bdps_and_isolated_cycles(g);
    if let RuleSet::Full { stc: true } = rules {
        if let Some(cyc) = cycles.iter().find(|c| c.len() == 3) {
            let es = cyc.edges();
            let empty = es.iter().filter(|e| s.psi(e.0, e.1).is_empty()).count() as i64;
            es.iter().for_each(|e| s.remove(e.0, e.1));
            s.k -= empty;
            return Ok(Some(app("rule-17", cyc.vertices.clone(), es, -empty)));
        }
    }
    let paths: Vec<(Vec<usize>, bool)> = bdps
        .iter()
        .map(|p| (ordered_bdp(g, p).path.vertices, p.open))
        .collect();

    // Rule 9, cases 1 and 2 before case 3
    for (vs, open) in &paths {
        if !open && vs.len() < 3 {
            continue;
        }
        for (a, b) in path_edges(vs) {
            let list = s.psi(a, b);
            let around = g.incident_edges(g.edge_index(a, b).unwrap()).len();
            if list.is_empty() || list.len() > around {
                let dk = if list.is_empty() { -1 } else { 0 };
                s.remove(a, b);
                s.k += dk;
                return Ok(Some(app("rule-9", vec![a, b], vec![edge(a, b)], dk)));
            }
        }
    }
    for (vs, open) in &paths {
        let r = vs.len();
        if !open && r < 3 || r < 4 {
            continue;
        }
        for i in 1..r - 2 {
            let (a, b) = (vs[i], vs[i + 1]);
            let others = g
                .incident_edges(g.edge_index(a, b).unwrap())
                .into_iter()
                .fold(ColorSet::EMPTY, |acc, f| {
                    let (x, y) = g.edges()[f];
                    acc.union(s.psi(x, y))
                });
            if !s.psi(a, b).difference(others).is_empty() {
                s.remove(a, b);
                return Ok(Some(app("rule-9", vec![a, b], vec![edge(a, b)], 0)));
            }
        }
    }

    // Rule 10
    for (vs, _) in &paths {
        for w in vs.windows(3) {
            let (s1, s2) = (s.psi(w[0], w[1]), s.psi(w[1], w[2]));
            if s1.intersection(s2).is_empty() {
                s.remove(w[0], w[1]);
                s.remove(w[1], w[2]);
                let u = s.fresh();
                let x = s.fresh();
                s.set(w[0], u, s1);
                s.set(x, w[2], s2);
                let es = vec![edge(w[0], w[1]), edge(w[1], w[2])];
                return Ok(Some(app("rule-10", vec![w[0], w[1], w[2], u, x], es, 0)));
            }
        }
    }

    // Rule 11
    for (vs, _) in &paths {
        for w in vs.windows(3) {
            let (s1, s2) = (s.psi(w[0], w[1]), s.psi(w[1], w[2]));
            if s1.len() == 2 && s2.len() == 1 && s2.difference(s1).is_empty() {
                s.set(w[0], w[1], s1.difference(s2));
                s.set(w[1], w[2], s1);
                let es = vec![edge(w[0], w[1]), edge(w[1], w[2])];
                return Ok(Some(app("rule-11", w.to_vec(), es, 0)));
            }
        }
    }

    // Rule 12
    for (vs, _) in &paths {
        let r = vs.len();
        if r < 3 {
            continue;
        }
        let ends = [
            (vs[r - 3], vs[r - 2], vs[r - 1]),
            (vs[2], vs[1], vs[0]),
        ];
        for (a, b, c) in ends {
            let (s1, s2) = (s.psi(a, b), s.psi(b, c));
            if g.degree(c) == 1 && s1 == s2 && s1.len() == 1 {
                s.remove(a, b);
                s.remove(b, c);
                s.k -= 1;
                return Ok(Some(app("rule-12", vec![a, b, c], vec![edge(a, b), edge(b, c)], -1)));
            }
        }
    }

    if rules == RuleSet::Path {
        return Ok(None);
    }

    // Rule 13
    if let Some(cyc) = cycles.first() {
        let ring = &cyc.vertices[..cyc.len()];
        let (h, map) = g.induced_subgraph(ring)?;
        let mut lists = EdgeLists::full(64);
        for &(a, b) in h.edges() {
            lists.set((a, b), s.psi(map[a], map[b]));
        }
        let weak = optimal_weak_on_cycle(&h, &lists)? as i64;
        let es = cyc.edges();
        es.iter().for_each(|e| s.remove(e.0, e.1));
        s.k -= weak;
        return Ok(Some(app("rule-13", ring.to_vec(), es, -weak)));
    }

    let long: Vec<&Vec<usize>> = paths.iter().map(|(vs, _)| vs).filter(|vs| vs.len() >= 5).collect();

    // Rule 14
    for vs in &long {
        for w in vs.windows(4) {
            let l = s.psi(w[0], w[1]);
            if (1..=2).contains(&l.len())
                && s.psi(w[1], w[2]) == l
                && s.psi(w[2], w[3]) == l
                && !g.has_edge(w[0], w[3])
            {
                let es = path_edges(w);
                es.iter().for_each(|e| s.remove(e.0, e.1));
                s.set(w[0], w[3], l);
                let dk = if l.len() == 1 { -1 } else { 0 };
                s.k += dk;
                return Ok(Some(app("rule-14", w.to_vec(), es, dk)));
            }
        }
    }

    let windows: Vec<[usize; 4]> = long
        .iter()
        .flat_map(|vs| {
            let fwd = vs.windows(4).map(|w| [w[0], w[1], w[2], w[3]]);
            let bwd = vs.windows(4).map(|w| [w[3], w[2], w[1], w[0]]);
            fwd.chain(bwd).collect::<Vec<_>>()
        })
        .collect();

    // Rule 15
    for &[a, b, c, d] in &windows {
        let (p1, p2, p3) = (s.psi(a, b), s.psi(b, c), s.psi(c, d));
        if !(p1.len() == 2 && p2.len() == 2 && p3.len() == 2 && p1 != p3 && p2 != p3) {
            continue;
        }
        let es = path_edges(&[a, b, c, d]);
        if p1 == p2 {
            let x = p2.intersection(p3);
            if x.len() != 1 {
                continue;
            }
            s.set(a, b, x);
            s.set(b, c, x);
        } else if p1.intersection(p3).is_empty() {
            let (x, y) = (p1.intersection(p2), p3.difference(p2));
            if x.len() != 1 || y.len() != 1 {
                continue;
            }
            s.set(a, b, x);
            s.set(b, c, x);
            s.set(c, d, x.union(y));
        } else {
            let x = p1.intersection(p3);
            if x.len() != 1 || g.has_edge(b, d) {
                continue;
            }
            s.remove(b, c);
            s.remove(c, d);
            s.set(a, b, x);
            s.set(b, d, x);
        }
        s.k += 1;
        return Ok(Some(app("rule-15", vec![a, b, c, d], es, 1)));
    }

    // Rule 16
    for &[a, b, c, d] in &windows {
        let (p1, p2, p3) = (s.psi(a, b), s.psi(b, c), s.psi(c, d));
        if !(p1.len() == 1 && p2.len() == 2 && p3.len() == 2 && p1.difference(p2).is_empty()) {
            continue;
        }
        let es = path_edges(&[a, b, c, d]);
        if p2 == p3 {
            if g.has_edge(a, d) {
                continue;
            }
            es.iter().for_each(|e| s.remove(e.0, e.1));
            s.set(a, d, p1);
        } else {
            if !p1.intersection(p3).is_empty() || p2.intersection(p3).len() != 1 || g.has_edge(b, d) {
                continue;
            }
            s.remove(b, c);
            s.remove(c, d);
            s.set(b, d, p2.symmetric_difference(p3));
        }
        return Ok(Some(app("rule-16", vec![a, b, c, d], es, 0)));
    }
    Ok(None)
}

/// Applies `rules` to a fixpoint, stopping early once k < 0.
fn run(s: &mut State, rules: RuleSet, trace: &mut Vec<RuleApplication>) -> Result<()> {
    let size = s.lists.len() + s.n + 2;
    let budget = 64 * size * size;
    for _ in 0..budget {
        if s.k < 0 {
            return Ok(());
        }
        let g = s.graph();
        match step(s, &g, rules)? {
            Some(a) => trace.push(a),
            None => return Ok(()),
        }
    }
    contract(format!("edge-list rules exceeded {budget} applications"))
}

/// Non-isolated vertices of `g`, checked to form one connected component.
fn single_component(g: &Graph) -> Option<Vec<usize>> {
    let mut comps = g.components_where(|v| g.degree(v) > 0);
    (comps.len() == 1).then(|| comps.pop().unwrap())
}

/// Minimum number of weak edges of a Ψ-satisfying proper labeling of a graph
/// that is a single path plus isolated vertices.
pub fn optimal_weak_on_isolated_path(g: &Graph, psi: &EdgeLists) -> Result<usize> {
    if g.m() == 0 {
        return Ok(0);
    }
    match single_component(g) {
        Some(vs) if g.max_degree() <= 2 && g.m() + 1 == vs.len() => {}
        _ => return contract("graph is not a single path"),
    }
    let m = g.m() as i64;
    let mut s = State::from_lists(g, psi, m);
    run(&mut s, RuleSet::Path, &mut Vec::new())?;
    if !s.lists.is_empty() {
        return contract("path rules left edges behind");
    }
    Ok((m - s.k) as usize)
}

/// Minimum number of weak edges of a Ψ-satisfying proper labeling of a graph
/// that is a single cycle plus isolated vertices.
pub fn optimal_weak_on_cycle(g: &Graph, psi: &EdgeLists) -> Result<usize> {
    match single_component(g) {
        Some(vs) if vs.len() >= 3 && vs.iter().all(|&v| g.degree(v) == 2) => {}
        _ => return contract("graph is not a single cycle"),
    }
    let (_, cycles) = enumerate_bdps_and_isolated_cycles(g);
    let ring = &cycles[0].vertices;
    let (v1, v2) = (ring[0], ring[1]);
    let ex = edge(v1, v2);
    let rest = g.spanning_subgraph(|e| e != ex);
    let lx = psi.get(ex);
    let path_opt = |lists: &EdgeLists| optimal_weak_on_isolated_path(&rest, lists);
    if lx.len() >= 3 {
        return path_opt(psi);
    }
    let mut best = 1 + path_opt(psi)?;
    let around: Vec<Edge> = g
        .incident_edges(g.edge_index(v1, v2).unwrap())
        .into_iter()
        .map(|f| g.edges()[f])
        .collect();
    for alpha in lx.iter() {
        let mut lists = psi.clone();
        for &f in &around {
            lists.set(f, psi.get(f).without(alpha));
        }
        best = best.min(path_opt(&lists)?);
    }
    Ok(best)
}

fn in_triangle(g: &Graph, v: usize) -> bool {
    let nb = g.neighbors(v);
    nb.iter()
        .enumerate()
        .any(|(i, &a)| nb[i + 1..].iter().any(|&b| g.has_edge(a, b)))
}

/// No BDP vertex lies on a triangle unless its BDP is non-open with two
/// vertices.
pub fn k3_safe(g: &Graph) -> bool {
    let (bdps, _) = enumerate_bdps_and_isolated_cycles(g);
    bdps.iter()
        .filter(|p| p.open || p.path.vertices.len() != 2)
        .all(|p| p.path.vertices.iter().all(|&v| !in_triangle(g, v)))
}

/// Shape left by the edge-list rules: no isolated cycles, open BDPs with at
/// most two vertices, other BDPs with at most four.
pub fn check_el_structure(g: &Graph) -> Result<()> {
    let (bdps, cycles) = enumerate_bdps_and_isolated_cycles(g);
    if let Some(c) = cycles.first() {
        return contract(format!("isolated cycle through {}", c.vertices[0]));
    }
    for p in &bdps {
        let r = p.path.vertices.len();
        if p.open && r > 2 || r > 4 {
            return contract(format!(
                "{} BDP from {} has {r} vertices",
                if p.open { "open" } else { "non-open" },
                p.first()
            ));
        }
    }
    Ok(())
}

pub fn kernel_el(inst: &Instance) -> Result<KernelOutcome> {
    check_kind(inst, &[Kind::ElEcs, Kind::ElMstc], "the edge-list kernel")?;
    let g = &inst.graph;
    let psi = inst.psi.clone().unwrap_or_else(|| EdgeLists::full(inst.c));
    psi.validate(g)?;
    let mut s = State::from_lists(g, &psi, inst.k as i64);
    let mut trace = Vec::new();
    run(&mut s, RuleSet::Full { stc: inst.kind == Kind::ElMstc }, &mut trace)?;

    let full = s.graph();
    let keep: Vec<usize> = (0..full.n()).filter(|&v| full.degree(v) > 0).collect();
    let (graph, map) = full.induced_subgraph(&keep)?;
    let mut lists = EdgeLists::full(inst.c);
    for &(a, b) in graph.edges() {
        lists.set((a, b), s.psi(map[a], map[b]));
    }
    let origin = map
        .iter()
        .map(|&v| (v < g.n()).then_some(v))
        .collect();
    let d = greedy_deletion_set(g, 2).len();
    let bound_holds = graph.m() <= 11 * d && graph.n() <= 10 * d;
    let r = Reduced {
        graph,
        psi: Some(lists),
        k: s.k,
        origin,
        deletion_set_size: d,
        bound: 10 * d,
        edge_bound: Some(11 * d),
        bound_holds,
    };
    finish(inst, r, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Path, PathKind};
    use crate::instance::Kind;
    use crate::kernel::Decision;

    fn lists(g: &Graph, c: u32, sets: &[&[u32]]) -> EdgeLists {
        let mut p = EdgeLists::full(c);
        for (&e, s) in g.edges().iter().zip(sets) {
            p.set(e, ColorSet::from_colors(s.iter().copied()));
        }
        p
    }

    #[test]
    fn path_values() {
        let g = Graph::path(2);
        assert_eq!(optimal_weak_on_isolated_path(&g, &lists(&g, 2, &[&[1]])).unwrap(), 0);
        let g = Graph::path(3);
        assert_eq!(optimal_weak_on_isolated_path(&g, &lists(&g, 2, &[&[1], &[1]])).unwrap(), 1);
        assert!(optimal_weak_on_isolated_path(&Graph::cycle(4), &EdgeLists::full(2)).is_err());
    }

    #[test]
    fn cycle_values() {
        let c3 = Graph::cycle(3);
        assert_eq!(optimal_weak_on_cycle(&c3, &lists(&c3, 3, &[&[1], &[1], &[1]])).unwrap(), 2);
        assert_eq!(optimal_weak_on_cycle(&c3, &lists(&c3, 3, &[&[1], &[2], &[3]])).unwrap(), 0);
        assert_eq!(optimal_weak_on_cycle(&Graph::cycle(4), &EdgeLists::full(2)).unwrap(), 0);
        assert_eq!(optimal_weak_on_cycle(&Graph::cycle(5), &EdgeLists::full(2)).unwrap(), 1);
        assert!(optimal_weak_on_cycle(&Graph::path(4), &EdgeLists::full(2)).is_err());
    }

    #[test]
    fn orientation() {
        // 0 has degree 3; BDP 1-4-5 hangs off it
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)]).unwrap();
        let (b, _) = enumerate_bdps_and_isolated_cycles(&g);
        let p = ordered_bdp(&g, &b[0]);
        assert_eq!(p.path.vertices, vec![1, 4, 5]);
        let rev = BoundedDegreePath {
            path: Path::new(vec![5, 4, 1], PathKind::VertexSimple),
            open: true,
        };
        assert_eq!(ordered_bdp(&g, &rev).path.vertices, vec![1, 4, 5]);
        let (b, _) = enumerate_bdps_and_isolated_cycles(&Graph::path(3));
        assert_eq!(ordered_bdp(&Graph::path(3), &b[0]).path.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn examples() {
        let c4 = Instance::plain(Kind::ElEcs, Graph::cycle(4), 2, 0).unwrap();
        assert_eq!(kernel_el(&c4).unwrap().decision, Decision::Yes);

        let c5 = Instance::plain(Kind::ElEcs, Graph::cycle(5), 2, 1).unwrap();
        let out = kernel_el(&c5).unwrap();
        assert_eq!(out.stats.k_out, 0);
        assert_eq!(out.trace[0].rule, "rule-13");

        let tri = Graph::cycle(3);
        let psi = lists(&tri, 2, &[&[], &[1], &[1]]);
        let inst = Instance::new(Kind::ElMstc, tri, 2, 1, Some(psi)).unwrap();
        let out = kernel_el(&inst).unwrap();
        assert_eq!(out.trace[0].rule, "rule-17");
        assert_eq!(out.stats.k_out, 0);
        assert_eq!(out.decision, Decision::Yes);
    }

    #[test]
    fn pendant_edge_removed() {
        // K_{1,3} center 0, pendant 3-4 with a two-color list
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let mut psi = EdgeLists::full(2);
        psi.set((3, 4), ColorSet::from_colors([1, 2]));
        let inst = Instance::new(Kind::ElEcs, g, 2, 0, Some(psi)).unwrap();
        let out = kernel_el(&inst).unwrap();
        assert_eq!(out.trace[0].rule, "rule-9");
        assert_eq!(out.trace[0].edges, vec![(3, 4)]);
        assert_eq!(out.trace[0].k_delta, 0);
    }
}
