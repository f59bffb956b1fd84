//! ECS kernels: Rule 1 for ξ_{c−1}, Rules 2–3 for λ_c, and the
//! edge-coloring variant of Rule 1.

use crate::error::{input, Result};
use crate::graph::{edge, Edge, Graph};
use crate::instance::{Instance, Kind};
use crate::matching::maximum_matching;
use crate::params::{approx_component_cover, core_periphery, ecs_expansion, greedy_deletion_set, saturate, ComponentCover};

use super::{check_kind, finish, restrict, KernelOutcome, Reduced, RuleApplication};

/// c = 1: the strong edges form a matching, so the optimum is m − ν(G).
fn solve_by_matching(inst: &Instance) -> Result<KernelOutcome> {
    let g = &inst.graph;
    let weak = g.m() - maximum_matching(g).len();
    let k = inst.k as i64 - weak as i64;
    let trace = vec![RuleApplication::new("matching", Vec::new(), Vec::new(), -(weak as i64))];
    let r = Reduced {
        graph: Graph::empty(0),
        psi: None,
        k,
        origin: Vec::new(),
        deletion_set_size: g.m(),
        bound: 0,
        edge_bound: Some(0),
        bound_holds: true,
    };
    finish(inst, r, trace)
}

/// Keeps G[𝒞 ∪ N(𝒞)] for the greedy D′_t. Returns the kept graph data and
/// |D′|.
fn rule1(inst: &Instance, t: usize, trace: &mut Vec<RuleApplication>) -> Result<(Reduced, usize)> {
    let g = &inst.graph;
    let d = greedy_deletion_set(g, t);
    let keep = core_periphery(g, &d).core_and_neighbors(g);
    if keep.len() < g.n() {
        let mut kept = vec![false; g.n()];
        keep.iter().for_each(|&v| kept[v] = true);
        let removed: Vec<usize> = (0..g.n()).filter(|&v| !kept[v]).collect();
        let edges = g
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| !kept[a] || !kept[b])
            .collect();
        trace.push(RuleApplication::new("rule-1", removed, edges, 0));
    }
    let (graph, psi, origin) = restrict(inst, &keep)?;
    let r = Reduced {
        graph,
        psi,
        k: inst.k as i64,
        origin,
        deletion_set_size: d.len(),
        bound: 0,
        edge_bound: None,
        bound_holds: true,
    };
    Ok((r, d.len()))
}

/// Rule 1 with the greedy D′_{c−1}; c = 1 is answered through maximum matching.
pub fn kernel_ecs_xi(inst: &Instance) -> Result<KernelOutcome> {
    check_kind(inst, &[Kind::Ecs], "the ECS ξ kernel")?;
    if inst.c == 1 {
        return solve_by_matching(inst);
    }
    let c = inst.c as usize;
    let mut trace = Vec::new();
    let (mut r, d) = rule1(inst, c - 1, &mut trace)?;
    let vb = 2 * d * c;
    let eb = d + r.graph.n() * (c - 1);
    r.bound = vb;
    r.edge_bound = Some(eb);
    r.bound_holds = r.graph.n() <= vb && r.graph.m() <= eb;
    finish(inst, r, trace)
}

/// Edge coloring with c colors: reject when Δ > c, otherwise Rule 1.
pub fn kernel_edge_coloring(inst: &Instance) -> Result<KernelOutcome> {
    check_kind(inst, &[Kind::Ecs], "the edge-coloring kernel")?;
    if inst.k != 0 {
        return input("the edge-coloring kernel needs k = 0");
    }
    let g = &inst.graph;
    let c = inst.c as usize;
    if g.max_degree() > c {
        let v = (0..g.n()).find(|&v| g.degree(v) > c).unwrap();
        let trace = vec![RuleApplication::new("reject-degree", vec![v], Vec::new(), -1)];
        let r = Reduced {
            graph: g.clone(),
            psi: None,
            k: -1,
            origin: Vec::new(),
            deletion_set_size: 0,
            bound: 0,
            edge_bound: None,
            bound_holds: true,
        };
        return finish(inst, r, trace);
    }
    let h = (0..g.n()).filter(|&v| g.degree(v) == c).count();
    let mut trace = Vec::new();
    let (mut r, d) = rule1(inst, c - 1, &mut trace)?;
    r.bound = 2 * h * c;
    r.edge_bound = Some(d + r.graph.n() * (c - 1));
    r.bound_holds = d <= h && r.graph.n() <= r.bound && r.graph.m() <= d + r.graph.n() * (c - 1);
    finish(inst, r, trace)
}

/// Rules 2 and 3 on a saturated (c+1)-approximate order-c component cover.
pub fn kernel_ecs_coc(inst: &Instance) -> Result<KernelOutcome> {
    check_kind(inst, &[Kind::Ecs], "the ECS component-order kernel")?;
    if inst.c == 1 {
        return solve_by_matching(inst);
    }
    let g = &inst.graph;
    let c = inst.c as usize;
    let mut alive = vec![true; g.n()];
    let mut in_d = approx_component_cover(g, c).membership(g.n());
    let mut k = inst.k as i64;
    let mut trace = Vec::new();
    loop {
        let ids: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
        let (h, map) = g.induced_subgraph(&ids)?;
        let local = ComponentCover {
            t: c,
            vertices: (0..h.n()).filter(|&v| in_d[map[v]]).collect(),
            saturated: false,
        };
        let cover = saturate(&h, &local);
        in_d.iter_mut().for_each(|x| *x = false);
        cover.vertices.iter().for_each(|&v| in_d[map[v]] = true);

        let mut removed_any = false;
        for comp in h.connected_components() {
            if comp.iter().all(|&v| !in_d[map[v]]) {
                let vs: Vec<usize> = comp.iter().map(|&v| map[v]).collect();
                let es = lifted_edges(&h, &map, &comp);
                vs.iter().for_each(|&v| alive[v] = false);
                trace.push(RuleApplication::new("rule-2", vs, es, 0));
                removed_any = true;
            }
        }
        if removed_any {
            continue;
        }
        let Some(exp) = ecs_expansion(&h, &cover, c)? else {
            break;
        };
        let delta = (h.edges_touching(&exp.x) - c * exp.x.len()) as i64;
        k -= delta;
        let local_gone: Vec<usize> = exp.x.iter().chain(&exp.y).copied().collect();
        let es = lifted_edges(&h, &map, &local_gone);
        let mut gone: Vec<usize> = local_gone.iter().map(|&v| map[v]).collect();
        gone.sort_unstable();
        for &v in &gone {
            alive[v] = false;
            in_d[v] = false;
        }
        trace.push(RuleApplication::new("rule-3", gone, es, -delta));
        if k < 0 {
            break;
        }
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let d = keep.iter().filter(|&&v| in_d[v]).count();
    let (graph, psi, origin) = restrict(inst, &keep)?;
    let strict = (c * c + 1) * d;
    let bound_holds = graph.n() == 0 || graph.n() < strict;
    let r = Reduced {
        graph,
        psi,
        k,
        origin,
        deletion_set_size: d,
        bound: strict.saturating_sub(1),
        edge_bound: None,
        bound_holds,
    };
    finish(inst, r, trace)
}

/// Edges of `h` touching `vs`, in the ids of the original graph.
fn lifted_edges(h: &Graph, map: &[usize], vs: &[usize]) -> Vec<Edge> {
    let mut es: Vec<Edge> = vs
        .iter()
        .flat_map(|&v| h.neighbors(v).iter().map(move |&w| edge(map[v], map[w])))
        .collect();
    es.sort_unstable();
    es.dedup();
    es
}
