//! Kernelization: reduction rules that shrink an instance to an equivalent one
//! whose size is bounded by a structural parameter.

mod ecs;
mod el;
mod stc;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::graph::{Edge, Graph};
use crate::instance::{Instance, Kind};
use crate::labeling::EdgeLists;

pub use ecs::{kernel_ecs_coc, kernel_ecs_xi, kernel_edge_coloring};
pub use el::{
    check_el_structure, k3_safe, kernel_el, optimal_weak_on_cycle, optimal_weak_on_isolated_path,
    ordered_bdp,
};
pub use stc::{
    check_stc_structure, kernel_stc, move_strong_color_in_cycle, move_weak_edge_along_path,
    rotate_cycle,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Open,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Open => "open",
        })
    }
}

/// Which parameter the kernel is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Param {
    /// Edge-deletion distance to bounded degree.
    Xi,
    /// Component order connectivity (ECS only).
    Coc,
    /// ξ_{c−1} for the edge-coloring question (ECS with k = 0).
    EdgeColoring,
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Param> {
        match s {
            "xi" => Ok(Param::Xi),
            "coc" => Ok(Param::Coc),
            "edge-coloring" => Ok(Param::EdgeColoring),
            _ => input(format!("unknown parameter `{s}`")),
        }
    }
}

/// One rule application that changed the instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: String,
    /// Removed or touched vertices, in input ids (fresh vertices continue
    /// after the input's last id).
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub k_delta: i64,
}

impl RuleApplication {
    pub(crate) fn new(rule: &str, vertices: Vec<usize>, edges: Vec<Edge>, k_delta: i64) -> Self {
        RuleApplication {
            rule: rule.to_string(),
            vertices,
            edges,
            k_delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    pub rule: String,
    pub count: usize,
}

/// Summary of one kernel run. `n_out`/`m_out` refer to the graph the rules
/// produced; a `no` decision then swaps in a canonical no-instance as the
/// reduced instance. Decided outcomes count as meeting the size bound, since
/// their output has constant size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStats {
    pub kind: Kind,
    pub c: u32,
    pub k_in: u64,
    pub k_out: i64,
    pub n_in: usize,
    pub m_in: usize,
    pub n_out: usize,
    pub m_out: usize,
    pub deletion_set_size: usize,
    /// Vertex bound.
    pub bound: usize,
    pub edge_bound: Option<usize>,
    pub bound_holds: bool,
    pub decision: Decision,
    pub rules: Vec<RuleCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelOutcome {
    pub reduced: Instance,
    pub decision: Decision,
    pub trace: Vec<RuleApplication>,
    pub stats: KernelStats,
    /// Input vertex of each reduced vertex; `None` for fresh vertices.
    pub origin: Vec<Option<usize>>,
}

impl KernelOutcome {
    /// Budget of the reduced instance relative to the input.
    pub fn k_delta(&self) -> i64 {
        self.stats.k_out - self.stats.k_in as i64
    }
}

/// Runs the kernel matching the instance kind and `param`.
pub fn kernelize(inst: &Instance, param: Param) -> Result<KernelOutcome> {
    match (inst.kind, param) {
        (Kind::Ecs, Param::Xi) => kernel_ecs_xi(inst),
        (Kind::Ecs, Param::Coc) => kernel_ecs_coc(inst),
        (Kind::Ecs, Param::EdgeColoring) => kernel_edge_coloring(inst),
        (Kind::Mstc, Param::Xi) => kernel_stc(inst),
        (Kind::ElEcs | Kind::ElMstc, Param::Xi) => kernel_el(inst),
        (kind, p) => input(format!("no {p:?} kernel for {kind}")),
    }
}

/// Inputs for [`finish`] describing the graph the rules left behind.
pub(crate) struct Reduced {
    pub graph: Graph,
    pub psi: Option<EdgeLists>,
    pub k: i64,
    pub origin: Vec<Option<usize>>,
    pub deletion_set_size: usize,
    pub bound: usize,
    pub edge_bound: Option<usize>,
    /// Whether the size bound is met (callers may use a stricter test than
    /// `n ≤ bound`).
    pub bound_holds: bool,
}

pub(crate) fn finish(inst: &Instance, r: Reduced, trace: Vec<RuleApplication>) -> Result<KernelOutcome> {
    let (n_out, m_out) = (r.graph.n(), r.graph.m());
    let (decision, reduced, origin) = if r.k < 0 {
        (Decision::No, Instance::canonical_no(inst.kind, inst.c), Vec::new())
    } else if r.graph.m() == 0 {
        (
            Decision::Yes,
            Instance::canonical_yes(inst.kind, inst.c, r.k as u64),
            Vec::new(),
        )
    } else {
        let reduced = Instance::new(inst.kind, r.graph, inst.c, r.k as u64, r.psi)?;
        (Decision::Open, reduced, r.origin)
    };
    let mut rules: Vec<RuleCount> = Vec::new();
    for a in &trace {
        match rules.iter_mut().find(|rc| rc.rule == a.rule) {
            Some(rc) => rc.count += 1,
            None => rules.push(RuleCount {
                rule: a.rule.clone(),
                count: 1,
            }),
        }
    }
    let stats = KernelStats {
        kind: inst.kind,
        c: inst.c,
        k_in: inst.k,
        k_out: r.k,
        n_in: inst.n(),
        m_in: inst.m(),
        n_out,
        m_out,
        deletion_set_size: r.deletion_set_size,
        bound: r.bound,
        edge_bound: r.edge_bound,
        bound_holds: r.bound_holds || decision != Decision::Open,
        decision,
        rules,
    };
    Ok(KernelOutcome {
        reduced,
        decision,
        trace,
        stats,
        origin,
    })
}

/// Induced subgraph on `keep` with lists carried over.
pub(crate) fn restrict(inst: &Instance, keep: &[usize]) -> Result<(Graph, Option<EdgeLists>, Vec<Option<usize>>)> {
    let (g, map) = inst.graph.induced_subgraph(keep)?;
    let psi = inst.psi.as_ref().map(|p| {
        let mut q = EdgeLists::full(p.c);
        for &(a, b) in g.edges() {
            q.set((a, b), p.get(crate::graph::edge(map[a], map[b])));
        }
        q
    });
    Ok((g, psi, map.into_iter().map(Some).collect()))
}

pub(crate) fn check_kind(inst: &Instance, allowed: &[Kind], what: &str) -> Result<()> {
    if allowed.contains(&inst.kind) {
        Ok(())
    } else {
        input(format!("{what} does not apply to {} instances", inst.kind))
    }
}
