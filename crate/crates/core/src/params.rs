//! Edge-deletion sets, core/periphery decomposition, component covers and the
//! expansion lemma.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};
use crate::flow::FlowNet;
use crate::graph::{edge, Edge, Graph};

/// Edges whose removal leaves maximum degree at most `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionSet {
    pub t: usize,
    /// Sorted ascending.
    pub edges: Vec<Edge>,
}

impl DeletionSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        for &(a, b) in &self.edges {
            if !g.has_edge(a, b) {
                return false;
            }
            deg[a] -= 1;
            deg[b] -= 1;
        }
        deg.iter().all(|&d| d <= self.t)
    }
}

/// 2-approximate edge-deletion set: every vertex gives up its excess over `t`,
/// preferring edges towards vertices that still have excess.
pub fn greedy_deletion_set(g: &Graph, t: usize) -> DeletionSet {
    let mut chosen = vec![false; g.m()];
    let mut resid: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    for v in 0..g.n() {
        if resid[v] <= t {
            continue;
        }
        let need = resid[v] - t;
        let mut cand: Vec<(bool, usize, usize)> = g
            .neighbors(v)
            .iter()
            .map(|&w| (w, g.edge_index(v, w).unwrap()))
            .filter(|&(_, i)| !chosen[i])
            .map(|(w, i)| (resid[w] <= t, w, i))
            .collect();
        cand.sort_unstable();
        for &(_, w, i) in cand.iter().take(need) {
            chosen[i] = true;
            resid[v] -= 1;
            resid[w] -= 1;
        }
    }
    let edges = g
        .edges()
        .iter()
        .zip(&chosen)
        .filter(|(_, &c)| c)
        .map(|(&e, _)| e)
        .collect();
    DeletionSet { t, edges }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheryComponent {
    pub vertices: Vec<usize>,
    /// Vertices with a core neighbor.
    pub close: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorePeriphery {
    pub t: usize,
    pub core: Vec<usize>,
    pub periphery: Vec<usize>,
    pub in_core: Vec<bool>,
    pub components: Vec<PeripheryComponent>,
}

impl CorePeriphery {
    /// 𝒞 ∪ N(𝒞), ascending.
    pub fn core_and_neighbors(&self, g: &Graph) -> Vec<usize> {
        let mut keep = self.in_core.clone();
        for &v in &self.core {
            for &w in g.neighbors(v) {
                keep[w] = true;
            }
        }
        (0..g.n()).filter(|&v| keep[v]).collect()
    }
}

pub fn core_periphery(g: &Graph, d: &DeletionSet) -> CorePeriphery {
    let mut in_core = vec![false; g.n()];
    for &(a, b) in &d.edges {
        in_core[a] = true;
        in_core[b] = true;
    }
    let core: Vec<usize> = (0..g.n()).filter(|&v| in_core[v]).collect();
    let periphery: Vec<usize> = (0..g.n()).filter(|&v| !in_core[v]).collect();
    let components = g
        .components_where(|v| !in_core[v])
        .into_iter()
        .map(|vertices| {
            let close = vertices
                .iter()
                .copied()
                .filter(|&v| g.neighbors(v).iter().any(|&w| in_core[w]))
                .collect();
            PeripheryComponent { vertices, close }
        })
        .collect();
    CorePeriphery {
        t: d.t,
        core,
        periphery,
        in_core,
        components,
    }
}

/// Vertex set D such that every component of G − D has at most `t` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCover {
    pub t: usize,
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    pub saturated: bool,
}

impl ComponentCover {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.vertices {
            m[v] = true;
        }
        m
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let ind = self.membership(g.n());
        g.components_where(|v| !ind[v]).iter().all(|c| c.len() <= self.t)
    }

    /// Every cover vertex has a neighbor outside the cover.
    pub fn is_saturated_in(&self, g: &Graph) -> bool {
        let ind = self.membership(g.n());
        self.vertices
            .iter()
            .all(|&v| g.neighbors(v).iter().any(|&w| !ind[w]))
    }
}

/// (t+1)-approximate order-`t` component cover: repeatedly take t+1 vertices
/// of a connected piece of G − D that is still too large.
pub fn approx_component_cover(g: &Graph, t: usize) -> ComponentCover {
    assert!(t >= 1, "component order bound must be positive");
    let mut in_d = vec![false; g.n()];
    let mut mark = vec![usize::MAX; g.n()];
    for s in 0..g.n() {
        if in_d[s] {
            continue;
        }
        // BFS in G − D from s, stopping after t+1 vertices
        let mut found = vec![s];
        mark[s] = s;
        let mut q = VecDeque::from([s]);
        'bfs: while let Some(v) = q.pop_front() {
            for &w in g.neighbors(v) {
                if !in_d[w] && mark[w] != s {
                    mark[w] = s;
                    found.push(w);
                    if found.len() > t {
                        break 'bfs;
                    }
                    q.push_back(w);
                }
            }
        }
        if found.len() > t {
            for v in found {
                in_d[v] = true;
            }
        }
    }
    ComponentCover {
        t,
        vertices: (0..g.n()).filter(|&v| in_d[v]).collect(),
        saturated: false,
    }
}

/// Drops cover vertices whose whole neighborhood lies in the cover.
pub fn saturate(g: &Graph, cover: &ComponentCover) -> ComponentCover {
    let mut in_d = cover.membership(g.n());
    for &v in &cover.vertices {
        if g.neighbors(v).iter().all(|&w| in_d[w]) {
            in_d[v] = false;
        }
    }
    ComponentCover {
        t: cover.t,
        vertices: (0..g.n()).filter(|&v| in_d[v]).collect(),
        saturated: true,
    }
}

/// q-expansion of `x` into `y` over bipartite sides indexed `0..na`, `0..nb`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// Pairs `(a, b)`.
    pub matching: Vec<(usize, usize)>,
}

/// Expansion lemma: for |B| ≥ q|A| and no isolated B-vertex, finds nonempty
/// X ⊆ A, Y ⊆ B with N(Y) ⊆ X and a q-expansion of X into Y.
pub fn expansion(na: usize, nb: usize, edges: &[(usize, usize)], q: usize) -> Result<Expansion> {
    if na == 0 {
        return contract("expansion needs a nonempty A side");
    }
    if q == 0 {
        return contract("expansion needs q ≥ 1");
    }
    if nb < q * na {
        return contract(format!("|B| = {nb} < q·|A| = {}", q * na));
    }
    let mut b_deg = vec![0usize; nb];
    for &(a, b) in edges {
        if a >= na || b >= nb {
            return contract(format!("bipartite edge ({a},{b}) out of range"));
        }
        b_deg[b] += 1;
    }
    if let Some(b) = b_deg.iter().position(|&d| d == 0) {
        return contract(format!("B-vertex {b} is isolated"));
    }
    let mut alive_a = vec![true; na];
    let mut alive_b = vec![true; nb];
    loop {
        let (s, t) = (na + nb, na + nb + 1);
        let mut net = FlowNet::new(na + nb + 2);
        let mut arcs = Vec::new();
        let mut size_a = 0;
        for a in (0..na).filter(|&a| alive_a[a]) {
            net.add_arc(s, a, q as i64);
            size_a += 1;
        }
        for &(a, b) in edges {
            if alive_a[a] && alive_b[b] {
                arcs.push((net.add_arc(a, na + b, 1), a, b));
            }
        }
        for b in (0..nb).filter(|&b| alive_b[b]) {
            net.add_arc(na + b, t, 1);
        }
        let f = net.max_flow(s, t);
        if f == (q * size_a) as i64 {
            let mut matching: Vec<(usize, usize)> = arcs
                .iter()
                .filter(|&&(arc, _, _)| net.flow_on(arc) == 1)
                .map(|&(_, a, b)| (a, b))
                .collect();
            matching.sort_unstable();
            return Ok(Expansion {
                x: (0..na).filter(|&a| alive_a[a]).collect(),
                y: (0..nb).filter(|&b| alive_b[b]).collect(),
                matching,
            });
        }
        // the A-vertices on the source side of a minimum cut violate Hall's
        // condition with multiplicity q; drop them with their neighbors
        let reach = net.residual_reach(s);
        let z: Vec<usize> = (0..na).filter(|&a| alive_a[a] && reach[a]).collect();
        if z.is_empty() {
            return contract("no deficient set found");
        }
        for &a in &z {
            alive_a[a] = false;
        }
        for &(a, b) in edges {
            if z.binary_search(&a).is_ok() {
                alive_b[b] = false;
            }
        }
        if !alive_a.iter().any(|&x| x) {
            return contract("expansion preconditions do not hold");
        }
    }
}

/// Expansion lifted back to the graph: X ⊆ D, Y ⊆ I, M ⊆ E(X, Y).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub m: Vec<Edge>,
}

/// Applies the expansion lemma with q = c to the graph whose B side consists
/// of the components of G[I], I = V ∖ D. `None` when |I| < c²|D|.
pub fn ecs_expansion(g: &Graph, cover: &ComponentCover, c: usize) -> Result<Option<ExpansionResult>> {
    if !cover.saturated || !cover.is_saturated_in(g) {
        return contract("cover is not saturated");
    }
    let d = &cover.vertices;
    let in_d = cover.membership(g.n());
    let i_size = g.n() - d.len();
    if d.is_empty() || i_size < c * c * d.len() {
        return Ok(None);
    }
    let classes = g.components_where(|v| !in_d[v]);
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in d.iter().enumerate() {
        pos[v] = i;
    }
    let mut bip = Vec::new();
    for (j, class) in classes.iter().enumerate() {
        let mut touched: Vec<usize> = class
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().copied())
            .filter(|&w| in_d[w])
            .map(|w| pos[w])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        if touched.is_empty() {
            return contract("a component of G[I] is a component of G; remove it first");
        }
        bip.extend(touched.into_iter().map(|a| (a, j)));
    }
    let exp = expansion(d.len(), classes.len(), &bip, c)?;
    let x: Vec<usize> = exp.x.iter().map(|&a| d[a]).collect();
    let mut y: Vec<usize> = exp.y.iter().flat_map(|&j| classes[j].iter().copied()).collect();
    y.sort_unstable();
    let mut m: Vec<Edge> = exp
        .matching
        .iter()
        .map(|&(a, j)| {
            let xv = d[a];
            let rep = classes[j]
                .iter()
                .copied()
                .find(|&u| g.has_edge(u, xv))
                .expect("matched class touches its partner");
            edge(xv, rep)
        })
        .collect();
    m.sort_unstable();
    Ok(Some(ExpansionResult { x, y, m }))
}

/// Checks the invariants of an [`ExpansionResult`] for cover vertices `d`.
pub fn validate_ecs_expansion(g: &Graph, d: &[usize], c: usize, r: &ExpansionResult) -> Result<()> {
    let n = g.n();
    let mut in_d = vec![false; n];
    d.iter().for_each(|&v| in_d[v] = true);
    let mut in_x = vec![false; n];
    let mut in_y = vec![false; n];
    r.x.iter().for_each(|&v| in_x[v] = true);
    r.y.iter().for_each(|&v| in_y[v] = true);
    if r.x.is_empty() || r.y.is_empty() {
        return contract("X or Y empty");
    }
    if r.x.iter().any(|&v| !in_d[v]) || r.y.iter().any(|&v| in_d[v]) {
        return contract("X ⊄ D or Y ⊄ I");
    }
    for &v in &r.y {
        if g.neighbors(v).iter().any(|&w| !in_x[w] && !in_y[w]) {
            return contract(format!("N({v}) leaves X ∪ Y"));
        }
    }
    let mut per_x = vec![0usize; n];
    let mut ends = Vec::new();
    for &(a, b) in &r.m {
        if !g.has_edge(a, b) {
            return contract("M contains a non-edge");
        }
        let (xv, yv) = if in_x[a] { (a, b) } else { (b, a) };
        if !in_x[xv] || !in_y[yv] {
            return contract("M edge not between X and Y");
        }
        per_x[xv] += 1;
        ends.push(yv);
    }
    if r.x.iter().any(|&v| per_x[v] != c) {
        return contract("some X vertex is not incident with exactly c edges of M");
    }
    ends.sort_unstable();
    ends.dedup();
    if ends.len() != c * r.x.len() {
        return contract("M endpoints in Y are not distinct");
    }
    let mut is_end = vec![false; n];
    ends.iter().for_each(|&v| is_end[v] = true);
    for comp in g.components_where(|v| in_y[v]) {
        if comp.iter().filter(|&&v| is_end[v]).count() > 1 {
            return contract("a component of G[Y] holds two M endpoints");
        }
    }
    Ok(())
}
