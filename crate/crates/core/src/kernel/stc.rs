//! Multi-STC kernel for ξ_{⌊c/2⌋+1} and the constructive labeling moves on
//! periphery paths and cycles.

use crate::error::{contract, Result};
use crate::graph::{Graph, Path, PathKind};
use crate::instance::{Instance, Kind};
use crate::labeling::{check_stc, Labeling};
use crate::params::{core_periphery, greedy_deletion_set};

use super::{check_kind, finish, restrict, KernelOutcome, Reduced, RuleApplication};

pub fn kernel_stc(inst: &Instance) -> Result<KernelOutcome> {
    check_kind(inst, &[Kind::Mstc], "the Multi-STC kernel")?;
    let g = &inst.graph;
    let c = inst.c as usize;
    let mut trace = Vec::new();
    let (t, bound_of): (usize, fn(usize, usize) -> usize) = match c {
        1 => (0, |_, _| 0),
        2 => (1, |d, _| 4 * d),
        c if c % 2 == 1 => (c / 2 + 1, |d, c| 2 * d * (c / 2 + 2)),
        _ => (c / 2 + 1, |d, c| (c + 7) * d),
    };
    let d = greedy_deletion_set(g, t);
    let cp = core_periphery(g, &d);
    let alive = match c {
        1 => vec![true; g.n()],
        2 => {
            let mut alive = vec![true; g.n()];
            for comp in g.connected_components() {
                if comp.iter().all(|&v| !cp.in_core[v]) {
                    let es = removed_edges(g, &comp, &alive);
                    comp.iter().for_each(|&v| alive[v] = false);
                    trace.push(RuleApplication::new("isolated-component", comp, es, 0));
                }
            }
            alive
        }
        c if c % 2 == 1 => {
            let keep = cp.core_and_neighbors(g);
            let mut alive = vec![false; g.n()];
            keep.iter().for_each(|&v| alive[v] = true);
            if keep.len() < g.n() {
                let removed: Vec<usize> = (0..g.n()).filter(|&v| !alive[v]).collect();
                let es = g.edges().iter().copied().filter(|&(a, b)| !alive[a] || !alive[b]).collect();
                trace.push(RuleApplication::new("rule-4", removed, es, 0));
            }
            alive
        }
        _ => even_rules(g, &cp.in_core, t, &mut trace),
    };
    let keep: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let (graph, psi, origin) = restrict(inst, &keep)?;
    let (bound, edge_bound, bound_holds) = if c == 1 {
        (g.n(), Some(d.len()), graph.m() <= d.len())
    } else {
        let b = bound_of(d.len(), c);
        (b, None, graph.n() <= b)
    };
    let r = Reduced {
        graph,
        psi,
        k: inst.k as i64,
        origin,
        deletion_set_size: d.len(),
        bound,
        edge_bound,
        bound_holds,
    };
    finish(inst, r, trace)
}

/// Rules 5–8 to a fixpoint, applied in rounds with priority 5, 6, 7, 8.
/// Periphery components never touch each other and core vertices are never
/// deleted, so applications inside one round are independent.
fn even_rules(g: &Graph, in_core: &[bool], t: usize, trace: &mut Vec<RuleApplication>) -> Vec<bool> {
    let mut alive = vec![true; g.n()];
    loop {
        let comps = g.components_where(|v| alive[v] && !in_core[v]);
        let deg: Vec<usize> = (0..g.n())
            .map(|v| g.neighbors(v).iter().filter(|&&w| alive[w]).count())
            .collect();
        let close = |v: usize| g.neighbors(v).iter().any(|&w| in_core[w]);
        let mut changed = false;
        for rule in 5..=8 {
            for comp in &comps {
                if !comp.iter().all(|&v| alive[v]) {
                    continue;
                }
                let far: Vec<usize> = comp.iter().copied().filter(|&v| !close(v)).collect();
                let fires = match rule {
                    5 => far.len() == comp.len(),
                    _ if far.is_empty() => false,
                    6 => comp.iter().any(|&v| deg[v] < t),
                    7 => comp_has_triangle_edge(g, comp, &alive),
                    _ => {
                        let internal: usize = comp
                            .iter()
                            .map(|&v| g.neighbors(v).iter().filter(|&&w| !in_core[w] && alive[w]).count())
                            .sum::<usize>()
                            / 2;
                        internal >= comp.len()
                    }
                };
                if fires {
                    let es = removed_edges(g, &far, &alive);
                    far.iter().for_each(|&v| alive[v] = false);
                    trace.push(RuleApplication::new(&format!("rule-{rule}"), far, es, 0));
                    changed = true;
                }
            }
            if changed {
                break;
            }
        }
        if !changed {
            return alive;
        }
    }
}

/// Some edge inside the component lies on a triangle of the current graph.
fn comp_has_triangle_edge(g: &Graph, comp: &[usize], alive: &[bool]) -> bool {
    let mut inside = vec![false; g.n()];
    comp.iter().for_each(|&v| inside[v] = true);
    comp.iter().any(|&u| {
        g.neighbors(u).iter().any(|&v| {
            inside[v]
                && u < v
                && g.neighbors(u)
                    .iter()
                    .any(|&w| w != v && alive[w] && g.has_edge(v, w))
        })
    })
}

/// Live edges touching `vs`.
fn removed_edges(g: &Graph, vs: &[usize], alive: &[bool]) -> Vec<(usize, usize)> {
    let mut es: Vec<(usize, usize)> = vs
        .iter()
        .flat_map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| alive[w])
                .map(move |&w| crate::graph::edge(v, w))
        })
        .collect();
    es.sort_unstable();
    es.dedup();
    es
}

/// Checks the shape left by Rules 5–8 for even c ≥ 4: every periphery
/// component with a non-close vertex induces a tree whose vertices all have
/// degree ⌊c/2⌋+1 in `g`. `in_core` marks the core of the deletion set used.
pub fn check_stc_structure(g: &Graph, c: u32, in_core: &[bool]) -> Result<()> {
    if c < 4 || c % 2 == 1 {
        return Ok(());
    }
    let t = c as usize / 2 + 1;
    for comp in g.components_where(|v| !in_core[v]) {
        let has_far = comp
            .iter()
            .any(|&v| !g.neighbors(v).iter().any(|&w| in_core[w]));
        if !has_far {
            continue;
        }
        if let Some(&v) = comp.iter().find(|&&v| g.degree(v) != t) {
            return contract(format!("periphery vertex {v} has degree {} ≠ {t}", g.degree(v)));
        }
        let internal: usize = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| !in_core[w]).count())
            .sum::<usize>()
            / 2;
        if internal + 1 != comp.len() {
            return contract(format!("periphery component at {} is not a tree", comp[0]));
        }
    }
    Ok(())
}

fn check_move_preconditions(g: &Graph, l: &Labeling, p: &Path) -> Result<Vec<usize>> {
    p.validate(g).or_else(|e| contract(e.to_string()))?;
    if !check_stc(g, l).or_else(|e| contract(e.to_string()))? {
        return contract("labeling is not an STC-labeling");
    }
    let t = l.c as usize / 2 + 1;
    if let Some(&v) = p.vertices.iter().find(|&&v| g.degree(v) > t) {
        return contract(format!("path vertex {v} has degree above {t}"));
    }
    Ok(p.vertices
        .windows(2)
        .map(|w| g.edge_index(w[0], w[1]).unwrap())
        .collect())
}

/// Shifts the weak first edge of an edge-simple path to its end, moving every
/// other color one edge towards the start, or returns a labeling with fewer
/// weak edges. Edges off the path keep their colors.
pub fn move_weak_edge_along_path(g: &Graph, l: &Labeling, p: &Path) -> Result<Labeling> {
    if p.kind == PathKind::VertexSimple || p.kind == PathKind::EdgeSimple {
    } else {
        return contract("move_weak_edge_along_path needs an open path");
    }
    let idx = check_move_preconditions(g, l, p)?;
    if idx.is_empty() {
        return contract("path has no edges");
    }
    if l.colors[idx[0]] != 0 {
        return contract("first path edge is not weak");
    }
    let mut out = l.clone();
    for s in 1..idx.len() {
        let q = out.colors[idx[s]];
        if q == 0 {
            continue;
        }
        let prev = idx[s - 1];
        let (a, b) = g.edges()[prev];
        let around: Vec<usize> = [a, b]
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().map(move |&y| g.edge_index(x, y).unwrap()))
            .filter(|&f| f != prev)
            .collect();
        if around.iter().any(|&f| f != idx[s] && out.colors[f] == q) {
            // two incident edges share q, so some color is free at prev
            let free = (1..=out.c).find(|&x| around.iter().all(|&f| out.colors[f] != x));
            let Some(x) = free else {
                return contract("no free color although degrees are bounded");
            };
            out.colors[prev] = x;
            return Ok(out);
        }
        out.colors[prev] = q;
        out.colors[idx[s]] = 0;
    }
    Ok(out)
}

/// Rotates the color sequence of a cycle by `i` positions, so that edge `j`
/// receives the old color of edge `(i + j) mod r`, or returns a labeling with
/// fewer weak edges.
pub fn rotate_cycle(g: &Graph, l: &Labeling, cycle: &Path, i: usize) -> Result<Labeling> {
    if cycle.kind != PathKind::Cycle {
        return contract("rotate_cycle needs a cycle");
    }
    let idx = check_move_preconditions(g, l, cycle)?;
    if idx.iter().all(|&e| l.colors[e] != 0) {
        return contract("cycle has no weak edge");
    }
    let r = idx.len();
    let ring = &cycle.vertices[..r];
    let mut out = l.clone();
    for _ in 0..i % r {
        let w = (0..r).find(|&j| out.colors[idx[j]] == 0).unwrap();
        let walk: Vec<usize> = (0..=r).map(|j| ring[(w + j) % r]).collect();
        let next = move_weak_edge_along_path(g, &out, &Path::new(walk, PathKind::EdgeSimple))?;
        if next.weak_count() < out.weak_count() {
            return Ok(next);
        }
        out = next;
    }
    Ok(out)
}

/// Moves the strong color of cycle edge `e2` onto cycle edge `e1` by rotating,
/// or returns a labeling with fewer weak edges.
pub fn move_strong_color_in_cycle(
    g: &Graph,
    l: &Labeling,
    cycle: &Path,
    e1: (usize, usize),
    e2: (usize, usize),
) -> Result<Labeling> {
    if cycle.kind != PathKind::Cycle {
        return contract("move_strong_color_in_cycle needs a cycle");
    }
    let edges = cycle.edges();
    let pos = |e: (usize, usize)| {
        let e = crate::graph::edge(e.0, e.1);
        edges.iter().position(|&f| f == e)
    };
    let (Some(j), Some(t)) = (pos(e1), pos(e2)) else {
        return contract("edge not on the cycle");
    };
    let Some(i2) = g.edge_index(e2.0, e2.1) else {
        return contract("e2 is not an edge");
    };
    if l.colors.get(i2).copied().unwrap_or(0) == 0 {
        return contract("e2 is not strong");
    }
    let r = edges.len();
    rotate_cycle(g, l, cycle, (t + r - j) % r)
}
