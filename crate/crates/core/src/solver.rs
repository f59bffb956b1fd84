//! Exact minimum weak-edge count by branch and bound.
//!
//! Connected components are solved independently. Within a component the
//! search picks the unassigned edge with the fewest usable colors, tries its
//! strong colors and then weak, and prunes with a lower bound built from edges
//! that have no usable color left and from groups of pairwise conflicting
//! edges that need more colors than they can still get.

use crate::coloring::try_color_exactly;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Kind};
use crate::labeling::Labeling;
use crate::matching::maximum_matching;

pub const DEFAULT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub weak: usize,
    pub witness: Labeling,
}

/// Minimum number of weak edges over all valid labelings, with a witness.
/// Refuses instances with more than `limit` edges.
pub fn min_weak(inst: &Instance, limit: usize) -> Result<Solution> {
    if inst.m() > limit {
        return Err(Error::Size {
            m: inst.m(),
            limit,
        });
    }
    let sol = match fast_path(inst) {
        Some(s) => s,
        None => {
            let colors = solve_components(inst, None)?.expect("unbounded search always succeeds");
            Solution {
                weak: colors.iter().filter(|&&x| x == 0).count(),
                witness: Labeling { c: inst.c, colors },
            }
        }
    };
    check_witness(inst, &sol.witness)?;
    Ok(sol)
}

/// Whether some valid labeling has at most `k` weak edges.
pub fn decide(inst: &Instance, limit: usize) -> Result<bool> {
    if inst.k as usize >= inst.m() {
        return Ok(true);
    }
    if let Some(s) = fast_path(inst) {
        return Ok(s.weak as u64 <= inst.k);
    }
    if inst.m() > limit {
        return Err(Error::Size {
            m: inst.m(),
            limit,
        });
    }
    match solve_components(inst, Some(inst.k as usize))? {
        Some(colors) => {
            check_witness(inst, &Labeling { c: inst.c, colors })?;
            Ok(true)
        }
        None => Ok(false),
    }
}

fn check_witness(inst: &Instance, l: &Labeling) -> Result<()> {
    if inst.is_valid_labeling(l)? {
        Ok(())
    } else {
        Err(Error::Contract("solver produced an invalid witness".into()))
    }
}

fn fast_path(inst: &Instance) -> Option<Solution> {
    let g = &inst.graph;
    if g.m() == 0 {
        return Some(Solution {
            weak: 0,
            witness: Labeling::all_weak(g, inst.c),
        });
    }
    if inst.kind.has_lists() {
        return None;
    }
    if let Some(l) = try_color_exactly(g, inst.c) {
        return Some(Solution { weak: 0, witness: l });
    }
    if inst.kind == Kind::Ecs && inst.c == 1 {
        let mut l = Labeling::all_weak(g, 1);
        for (a, b) in maximum_matching(g) {
            l.colors[g.edge_index(a, b).unwrap()] = 1;
        }
        return Some(Solution {
            weak: l.weak_count(),
            witness: l,
        });
    }
    None
}

/// Full labeling (edge order of `inst.graph`) with the minimum weak count, or
/// with at most `budget` weak edges when a budget is given; `None` if the
/// budget cannot be met.
fn solve_components(inst: &Instance, budget: Option<usize>) -> Result<Option<Vec<u32>>> {
    let g = &inst.graph;
    let lists = inst.lists();
    let mut colors = vec![0u32; g.m()];
    let mut used = 0usize;
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&comp)?;
        let sub_lists: Vec<u64> = sub
            .edges()
            .iter()
            .map(|&(a, b)| lists[g.edge_index(map[a], map[b]).unwrap()].0)
            .collect();
        let p = Problem::new(&sub, inst.kind, inst.c, sub_lists)?;
        let ub = budget.map(|b| b - used);
        let Some(sub_colors) = p.solve(ub) else {
            return Ok(None);
        };
        for (i, &(a, b)) in sub.edges().iter().enumerate() {
            colors[g.edge_index(map[a], map[b]).unwrap()] = sub_colors[i];
        }
        used += sub_colors.iter().filter(|&&x| x == 0).count();
    }
    Ok(Some(colors))
}

const UNSET: u8 = u8::MAX;

struct Problem {
    m: usize,
    palette: u32,
    lists: Vec<u64>,
    conflicts: Vec<Vec<usize>>,
    // sets of pairwise conflicting edges; each edge is in at most two
    groups: Vec<Vec<usize>>,
    weight: Vec<usize>,
    symmetric: bool,
}

impl Problem {
    fn new(g: &Graph, kind: Kind, c: u32, lists: Vec<u64>) -> Result<Problem> {
        let m = g.m();
        let symmetric = !kind.has_lists();
        let palette = if symmetric { c.min(m as u32) } else { c };
        if palette > 63 {
            return Err(Error::Input(format!(
                "exact search supports at most 63 effective colors, got {palette}"
            )));
        }
        let mask = (1u64 << palette) - 1;
        let lists: Vec<u64> = lists.into_iter().map(|s| s & mask).collect();
        let mut conflicts = vec![Vec::new(); m];
        let mut groups = Vec::new();
        for v in 0..g.n() {
            let nb = g.neighbors(v);
            let ids: Vec<usize> = nb.iter().map(|&w| g.edge_index(v, w).unwrap()).collect();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if kind.is_proper() || !g.has_edge(nb[i], nb[j]) {
                        conflicts[ids[i]].push(ids[j]);
                        conflicts[ids[j]].push(ids[i]);
                    }
                }
            }
            // greedy independent set in G[N(v)]; all of N(v) for proper kinds
            let mut chosen: Vec<usize> = Vec::new();
            let mut group = Vec::new();
            for (i, &u) in nb.iter().enumerate() {
                if kind.is_proper() || chosen.iter().all(|&w| !g.has_edge(u, w)) {
                    chosen.push(u);
                    group.push(ids[i]);
                }
            }
            if group.len() >= 2 {
                groups.push(group);
            }
        }
        let weight = conflicts.iter().map(Vec::len).collect();
        Ok(Problem {
            m,
            palette,
            lists,
            conflicts,
            groups,
            weight,
            symmetric,
        })
    }

    fn greedy(&self) -> Vec<u8> {
        let mut order: Vec<usize> = (0..self.m).collect();
        order.sort_by_key(|&e| std::cmp::Reverse(self.weight[e]));
        let mut col = vec![0u8; self.m];
        for &e in &order {
            let mut dom = self.lists[e];
            for &f in &self.conflicts[e] {
                if col[f] != 0 {
                    dom &= !(1u64 << (col[f] - 1));
                }
            }
            if dom != 0 {
                col[e] = dom.trailing_zeros() as u8 + 1;
            }
        }
        col
    }

    /// Best labeling with fewer than `ub + 1` weak edges, or the optimum.
    fn solve(&self, budget: Option<usize>) -> Option<Vec<u32>> {
        let greedy = self.greedy();
        let gw = greedy.iter().filter(|&&x| x == 0).count();
        let mut s = Search {
            p: self,
            color: vec![UNSET; self.m],
            cnt: vec![0u16; self.m * 64],
            blocked: vec![0u64; self.m],
            best: gw,
            best_colors: greedy,
            stop_at: 0,
            found: true,
        };
        match budget {
            Some(b) if gw <= b => {}
            Some(b) => {
                s.best = b + 1;
                s.found = false;
                s.stop_at = b;
            }
            None => {}
        }
        s.dfs(0, 0, 0);
        s.found
            .then(|| s.best_colors.iter().map(|&x| x as u32).collect())
    }
}

struct Search<'p> {
    p: &'p Problem,
    color: Vec<u8>,
    cnt: Vec<u16>,
    blocked: Vec<u64>,
    best: usize,
    best_colors: Vec<u8>,
    // any solution with at most this many weak edges ends the search
    stop_at: usize,
    found: bool,
}

impl<'p> Search<'p> {
    fn assign(&mut self, e: usize, x: u8) {
        self.color[e] = x;
        if x == 0 {
            return;
        }
        let bit = 1u64 << (x - 1);
        for &f in &self.p.conflicts[e] {
            let slot = f * 64 + x as usize - 1;
            self.cnt[slot] += 1;
            if self.cnt[slot] == 1 {
                self.blocked[f] |= bit;
            }
        }
    }

    fn unassign(&mut self, e: usize) {
        let x = self.color[e];
        self.color[e] = UNSET;
        if x == 0 {
            return;
        }
        let bit = 1u64 << (x - 1);
        for &f in &self.p.conflicts[e] {
            let slot = f * 64 + x as usize - 1;
            self.cnt[slot] -= 1;
            if self.cnt[slot] == 0 {
                self.blocked[f] &= !bit;
            }
        }
    }

    #[inline]
    fn domain(&self, e: usize) -> u64 {
        self.p.lists[e] & !self.blocked[e]
    }

    /// Lower bound on further weak edges, and the next edge to branch on.
    fn bound(&self) -> (usize, Option<usize>) {
        let mut forced = 0;
        let mut pick: Option<(u32, std::cmp::Reverse<usize>, usize)> = None;
        for e in 0..self.p.m {
            if self.color[e] != UNSET {
                continue;
            }
            let d = self.domain(e);
            if d == 0 {
                forced += 1;
            }
            let key = (d.count_ones(), std::cmp::Reverse(self.p.weight[e]), e);
            if pick.is_none_or(|k| key < k) {
                pick = Some(key);
            }
        }
        let mut excess = 0;
        for group in &self.p.groups {
            let mut open = 0usize;
            let mut avail = 0u64;
            for &e in group {
                if self.color[e] == UNSET {
                    let d = self.domain(e);
                    if d != 0 {
                        open += 1;
                        avail |= d;
                    }
                }
            }
            excess += open.saturating_sub(avail.count_ones() as usize);
        }
        (forced + excess.div_ceil(2), pick.map(|k| k.2))
    }

    // returns true when the search should stop
    fn dfs(&mut self, assigned: usize, weak: usize, max_used: u32) -> bool {
        if assigned == self.p.m {
            if weak < self.best {
                self.best = weak;
                self.best_colors = self.color.clone();
                self.found = true;
            }
            return self.found && self.best <= self.stop_at;
        }
        let (lb, pick) = self.bound();
        if weak + lb >= self.best {
            return false;
        }
        let e = pick.expect("unassigned edge exists");
        let mut dom = self.domain(e);
        if self.p.symmetric {
            let cap = (max_used + 1).min(self.p.palette);
            dom &= (1u64 << cap) - 1;
        }
        while dom != 0 {
            let x = dom.trailing_zeros() + 1;
            dom &= dom - 1;
            self.assign(e, x as u8);
            let stop = self.dfs(assigned + 1, weak, max_used.max(x));
            self.unassign(e);
            if stop {
                return true;
            }
            if weak + lb >= self.best {
                return false;
            }
        }
        if weak + 1 < self.best {
            self.assign(e, 0);
            let stop = self.dfs(assigned + 1, weak + 1, max_used);
            self.unassign(e);
            if stop {
                return true;
            }
        }
        false
    }
}
