//! Random instances, equivalence suites against the exact solver, and the
//! Gadget showing why Rule 1 is unsafe for Multi-STC.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::serialize_instance;
use crate::graph::Graph;
use crate::instance::{Instance, Kind};
use crate::kernel::{check_el_structure, check_stc_structure, kernel_ecs_xi, kernelize, Decision, KernelOutcome, Param};
use crate::labeling::{ColorSet, EdgeLists};
use crate::params::{core_periphery, greedy_deletion_set};
use crate::solver::{decide, min_weak};

/// G(n, p) with independent random lists (each color kept with probability ½)
/// when `lists` is set and the kind has lists.
pub fn random_instance(kind: Kind, n: usize, p: f64, c: u32, k: u64, seed: u64, lists: bool) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let g = Graph::new(n, edges).expect("generated edges are simple");
    let psi = kind.has_lists().then(|| {
        let mut psi = EdgeLists::full(c);
        if lists {
            for &e in g.edges() {
                let s = ColorSet::from_colors((1..=c).filter(|_| rng.random_bool(0.5)));
                psi.set(e, s);
            }
        }
        psi
    });
    Instance::new(kind, g, c, k, psi).expect("generated instance is valid")
}

/// Gadget-built graph: one or two hubs of degree above `t`, with pendant
/// paths, hub-to-hub paths, isolated cycles and small blobs of degree at most
/// `t` hanging off them. Exercises the path and periphery rules that sparse
/// G(n, p) samples rarely reach.
pub fn gadget_graph(t: usize, max_m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hubs = rng.random_range(1..=2usize);
    let mut n = hubs;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if hubs == 2 && rng.random_bool(0.5) {
        edges.push((0, 1));
    }
    let path = |n: &mut usize, edges: &mut Vec<(usize, usize)>, from: usize, len: usize| {
        let mut prev = from;
        for _ in 0..len {
            edges.push((prev, *n));
            prev = *n;
            *n += 1;
        }
        prev
    };
    while edges.len() + 2 < max_m {
        let hub = rng.random_range(0..hubs);
        let room = max_m - edges.len();
        match rng.random_range(0..5) {
            0 => {
                path(&mut n, &mut edges, hub, rng.random_range(1..=7.min(room)));
            }
            1 => {
                let len = rng.random_range(2..=8.min(room));
                let end = path(&mut n, &mut edges, hub, len - 1);
                let other = rng.random_range(0..hubs);
                if other != end && !edges.contains(&(other.min(end), other.max(end))) {
                    edges.push((other.min(end), other.max(end)));
                }
            }
            2 => {
                let len = rng.random_range(3..=7.min(room.max(3)));
                let start = n;
                n += 1;
                let end = path(&mut n, &mut edges, start, len - 1);
                edges.push((start, end));
            }
            3 => {
                // blob of degree ≤ t attached to a hub
                let size = rng.random_range(3..=6);
                let base = n;
                n += size;
                let mut deg = vec![0usize; size];
                let mut local = Vec::new();
                for i in 1..size {
                    let j = rng.random_range(0..i);
                    if deg[j] < t && deg[i] < t {
                        local.push((base + j, base + i));
                        deg[i] += 1;
                        deg[j] += 1;
                    }
                }
                for _ in 0..size {
                    let (i, j) = (rng.random_range(0..size), rng.random_range(0..size));
                    let e = (base + i.min(j), base + i.max(j));
                    if i != j && deg[i] < t && deg[j] < t && !local.contains(&e) {
                        local.push(e);
                        deg[i] += 1;
                        deg[j] += 1;
                    }
                }
                let spare: Vec<usize> = (0..size).filter(|&i| deg[i] < t).collect();
                for &i in spare.iter().take(rng.random_range(1..=2)) {
                    local.push((hub, base + i));
                }
                edges.extend(local);
            }
            _ => {
                path(&mut n, &mut edges, hub, 1);
            }
        }
    }
    edges.truncate(max_m.max(1));
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, edges).expect("gadget edges are simple")
}

/// Graph family a suite draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Gnp,
    Gadget,
}

/// Wraps `g` as an instance of `kind`, drawing lists like [`random_instance`].
pub fn with_random_lists(kind: Kind, g: Graph, c: u32, seed: u64, lists: bool) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let psi = kind.has_lists().then(|| {
        let mut psi = EdgeLists::full(c);
        if lists {
            for &e in g.edges() {
                psi.set(e, ColorSet::from_colors((1..=c).filter(|_| rng.random_bool(0.5))));
            }
        }
        psi
    });
    Instance::new(kind, g, c, 0, psi).expect("valid instance")
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub kind: Kind,
    pub param: Param,
    pub cs: Vec<u32>,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Cycled through by trial index.
    pub ps: Vec<f64>,
    pub lists: bool,
    pub shape: Shape,
    pub seed: u64,
    /// Solver edge limit; larger instances are skipped and counted.
    pub limit: usize,
}

impl SuiteConfig {
    pub fn new(kind: Kind, param: Param, cs: Vec<u32>, trials: usize, n_max: usize) -> SuiteConfig {
        SuiteConfig {
            kind,
            param,
            cs,
            trials,
            n_min: 1,
            n_max,
            ps: vec![0.3, 0.6],
            lists: kind.has_lists(),
            shape: Shape::Gnp,
            seed: 1,
            limit: 40,
        }
    }
}

/// Outcome of one random instance, checked for every k in 0..=m.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub c: u32,
    pub n: usize,
    pub m: usize,
    pub skipped: bool,
    /// Budgets where the kernel changed the answer.
    pub mismatches: Vec<u64>,
    pub bound_violations: Vec<u64>,
    pub structure_violations: Vec<String>,
    pub min_weak: Option<usize>,
    /// Largest graph the rules produced over all budgets.
    pub n_out_max: usize,
    pub m_out_max: usize,
    /// Deletion set or cover size reported with the largest output.
    pub deletion_set_size: usize,
    /// Rule applications summed over all budgets.
    pub rules: BTreeMap<String, usize>,
    /// Input instance text, present when something failed.
    pub replay: Option<String>,
}

impl TrialRecord {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.bound_violations.is_empty() && self.structure_violations.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub kind: Kind,
    pub param: Param,
    pub trials: usize,
    pub skipped: usize,
    pub failures: usize,
    pub records: Vec<TrialRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Total applications per rule across all trials.
    pub fn rule_totals(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            for (rule, n) in &r.rules {
                *out.entry(rule.clone()).or_default() += n;
            }
        }
        out
    }

    /// One JSON object per trial followed by a summary line.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "summary": true,
            "kind": self.kind,
            "param": self.param,
            "trials": self.trials,
            "skipped": self.skipped,
            "failures": self.failures,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Runs the kernel on every trial and budget and compares answers with the
/// exact solver. Trials run in parallel; records come back sorted by (c, seed).
pub fn equivalence_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let jobs: Vec<(u32, u64)> = cfg
        .cs
        .iter()
        .flat_map(|&c| (0..cfg.trials as u64).map(move |t| (c, t)))
        .collect();
    let mut records = jobs
        .par_iter()
        .map(|&(c, t)| {
            let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(t).wrapping_add(u64::from(c) << 40);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(cfg.n_min..=cfg.n_max.max(cfg.n_min));
            let p = cfg.ps[t as usize % cfg.ps.len().max(1)];
            let inst = match cfg.shape {
                Shape::Gnp => random_instance(cfg.kind, n, p, c, 0, seed, cfg.lists),
                Shape::Gadget => {
                    let t = match (cfg.kind, cfg.param) {
                        (Kind::Ecs, Param::Coc) => c as usize,
                        (Kind::Ecs, _) => c.saturating_sub(1).max(1) as usize,
                        (Kind::Mstc, _) => c as usize / 2 + 1,
                        _ => 2,
                    };
                    let g = gadget_graph(t, cfg.n_max.max(4) * 3, seed);
                    with_random_lists(cfg.kind, g, c, seed, cfg.lists)
                }
            };
            run_trial(&inst, cfg.param, seed, cfg.limit)
        })
        .collect::<Result<Vec<TrialRecord>>>()?;
    records.sort_by_key(|r| (r.c, r.seed));
    let skipped = records.iter().filter(|r| r.skipped).count();
    let failures = records.iter().filter(|r| !r.passed()).count();
    Ok(SuiteReport {
        kind: cfg.kind,
        param: cfg.param,
        trials: records.len(),
        skipped,
        failures,
        records,
    })
}

/// Checks one instance for all budgets 0..=m.
pub fn run_trial(inst: &Instance, param: Param, seed: u64, limit: usize) -> Result<TrialRecord> {
    let mut rec = TrialRecord {
        seed,
        c: inst.c,
        n: inst.n(),
        m: inst.m(),
        skipped: false,
        mismatches: Vec::new(),
        bound_violations: Vec::new(),
        structure_violations: Vec::new(),
        min_weak: None,
        n_out_max: 0,
        m_out_max: 0,
        deletion_set_size: 0,
        rules: BTreeMap::new(),
        replay: None,
    };
    let opt = match min_weak(inst, limit) {
        Ok(s) => s.weak,
        Err(Error::Size { .. }) => {
            rec.skipped = true;
            return Ok(rec);
        }
        Err(e) => return Err(e),
    };
    rec.min_weak = Some(opt);
    let mut cache: HashMap<String, usize> = HashMap::new();
    for k in 0..=inst.m() as u64 {
        let kin = inst.with_k(k);
        let out = kernelize(&kin, param)?;
        let expected = opt as u64 <= k;
        let got = match out.decision {
            Decision::Yes => true,
            Decision::No => false,
            Decision::Open => {
                let key = serialize_instance(&out.reduced.with_k(0));
                let w = match cache.get(&key) {
                    Some(&w) => w,
                    None => match min_weak(&out.reduced, limit) {
                        Ok(s) => {
                            cache.insert(key, s.weak);
                            s.weak
                        }
                        Err(Error::Size { .. }) => {
                            rec.skipped = true;
                            return Ok(rec);
                        }
                        Err(e) => return Err(e),
                    },
                };
                w as u64 <= out.reduced.k
            }
        };
        for rc in &out.stats.rules {
            *rec.rules.entry(rc.rule.clone()).or_default() += rc.count;
        }
        if out.decision == Decision::Open && out.stats.n_out >= rec.n_out_max {
            rec.n_out_max = out.stats.n_out;
            rec.m_out_max = rec.m_out_max.max(out.stats.m_out);
            rec.deletion_set_size = out.stats.deletion_set_size;
        }
        if got != expected {
            rec.mismatches.push(k);
        }
        if !out.stats.bound_holds {
            rec.bound_violations.push(k);
        }
        if let Err(e) = structure_check(&kin, &out) {
            rec.structure_violations.push(format!("k={k}: {e}"));
        }
    }
    if !rec.passed() {
        rec.replay = Some(serialize_instance(inst));
    }
    Ok(rec)
}

/// Shape checks on the graph the rules produced (only meaningful when the
/// outcome is still open).
fn structure_check(inst: &Instance, out: &KernelOutcome) -> Result<()> {
    if out.decision != Decision::Open {
        return Ok(());
    }
    let g = &out.reduced.graph;
    match inst.kind {
        Kind::ElEcs | Kind::ElMstc => {
            check_el_structure(g)?;
            if inst.kind == Kind::ElMstc && !crate::kernel::k3_safe(g) {
                return Err(Error::Contract("reduced graph is not K3-safe".into()));
            }
            Ok(())
        }
        Kind::Mstc if inst.c >= 4 && inst.c.is_multiple_of(2) => {
            let t = inst.c as usize / 2 + 1;
            let cp = core_periphery(&inst.graph, &greedy_deletion_set(&inst.graph, t));
            let in_core: Vec<bool> = out.origin.iter().map(|o| o.is_some_and(|v| cp.in_core[v])).collect();
            check_stc_structure(g, inst.c, &in_core)
        }
        _ => Ok(()),
    }
}

/// Hub 0 with `leaves` pendant vertices plus the edges in `rest`, which use
/// ids from `leaves + 1` on.
fn hub_with(leaves: usize, rest: &[(usize, usize)]) -> Graph {
    let mut es: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
    es.extend_from_slice(rest);
    let n = es.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
    Graph::new(n, es).expect("fixture is simple")
}

/// Named small instances aimed at single rules, checked like suite trials.
pub fn fixtures() -> Vec<(String, Instance, Param)> {
    let mut out = Vec::new();
    for c in [2u32, 3] {
        for leaves in [5, 9, 12] {
            let star = Graph::star(leaves);
            out.push((
                format!("star K1,{leaves} c={c}"),
                Instance::plain(Kind::Ecs, star, c, 0).unwrap(),
                Param::Coc,
            ));
        }
        // spider: legs of length two, plus a few single leaves
        let mut es = Vec::new();
        for leg in 0..6 {
            es.push((0, 1 + 2 * leg));
            es.push((1 + 2 * leg, 2 + 2 * leg));
        }
        es.extend([(0, 13), (0, 14), (0, 15)]);
        let spider = Graph::new(16, es).unwrap();
        out.push((format!("spider c={c}"), Instance::plain(Kind::Ecs, spider, c, 0).unwrap(), Param::Coc));
        // two hubs sharing leaves
        let mut es = vec![(0, 1)];
        for v in 2..10 {
            es.push((v % 2, v));
        }
        let double = Graph::new(10, es).unwrap();
        out.push((format!("double star c={c}"), Instance::plain(Kind::Ecs, double, c, 0).unwrap(), Param::Coc));
    }
    // c = 4, t = 3: hub 0 of degree 5; periphery blobs of degree-3 vertices
    // cube on 4..11 without edge {4,5}; 4 and 5 hang off the hub (Rule 8)
    let cube: Vec<(usize, usize)> = [
        (0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6), (6, 4), (0, 4), (1, 5), (2, 6), (3, 7),
    ]
    .iter()
    .filter(|&&e| e != (0, 1))
    .map(|&(a, b)| (a + 4, b + 4))
    .chain([(0, 4), (0, 5)])
    .collect();
    out.push(("cube blob c=4".into(), Instance::plain(Kind::Mstc, hub_with(3, &cube), 4, 0).unwrap(), Param::Xi));
    // K4 on 4..7 without {4,5}; 4 and 5 hang off the hub (Rule 7)
    let k4 = [(4, 6), (4, 7), (5, 6), (5, 7), (6, 7), (0, 4), (0, 5)];
    out.push(("K4 blob c=4".into(), Instance::plain(Kind::Mstc, hub_with(3, &k4), 4, 0).unwrap(), Param::Xi));
    // 4-cycle blob of degree-2 vertices (Rule 6)
    let c4 = [(4, 5), (5, 6), (6, 7), (7, 4), (0, 4)];
    out.push(("C4 blob c=4".into(), Instance::plain(Kind::Mstc, hub_with(3, &c4), 4, 0).unwrap(), Param::Xi));
    // isolated C5 with lists
    let c5 = Graph::cycle(5);
    let mut psi = EdgeLists::full(2);
    for (i, &e) in c5.edges().iter().enumerate() {
        psi.set(e, if i == 0 { ColorSet::single(1) } else { ColorSet::from_colors([1, 2]) });
    }
    for kind in [Kind::ElEcs, Kind::ElMstc] {
        let inst = Instance::new(kind, c5.clone(), 2, 0, Some(psi.clone())).unwrap();
        out.push((format!("isolated C5 {kind}"), inst, Param::Xi));
    }
    // long bridge between two hubs with repeating lists (Rules 14–16)
    let mut es = vec![(0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)];
    let bridge: Vec<usize> = [0].into_iter().chain(8..15).chain([1]).collect();
    es.extend(bridge.windows(2).map(|w| (w[0], w[1])));
    let g = Graph::new(15, es).unwrap();
    for pattern in [[1u32, 1, 1, 1, 1, 1, 1, 1], [3, 3, 3, 3, 3, 3, 3, 3], [1, 3, 3, 3, 5, 5, 6, 6]] {
        let mut psi = EdgeLists::full(3);
        for (w, &code) in bridge.windows(2).zip(&pattern) {
            let set = match code {
                1 => ColorSet::single(1),
                3 => ColorSet::from_colors([1, 2]),
                5 => ColorSet::from_colors([2, 3]),
                _ => ColorSet::from_colors([1, 3]),
            };
            psi.set(crate::graph::edge(w[0], w[1]), set);
        }
        let inst = Instance::new(Kind::ElEcs, g.clone(), 3, 0, Some(psi)).unwrap();
        out.push((format!("bridge {pattern:?}"), inst, Param::Xi));
    }
    out
}

/// Vertex roles in the Rule-1 gadget.
#[derive(Debug, Clone)]
pub struct Rule1Gadget {
    pub instance: Instance,
    /// Shared degree-two vertex joining the two gadget copies.
    pub hub: usize,
    /// Shared pendant vertices g5j of both copies.
    pub shared: Vec<usize>,
    /// Vertex joined to every shared pendant by the dotted edges.
    pub apex: usize,
}

/// The Rule-1 counterexample Multi-STC instance with c = 4, k = 0, built from two copies of
/// the gadget that forces its pendant edges into one common strong color.
/// `width` is the size of each layer (3 in the original drawing).
pub fn rule1_gadget(width: usize) -> Rule1Gadget {
    let w = width;
    let hub = 0;
    let shared: Vec<usize> = (1..=w).collect();
    let mut next = w + 1;
    let mut edges = Vec::new();
    for _ in 0..2 {
        let mut layer = |len: usize| {
            let vs: Vec<usize> = (next..next + len).collect();
            next += len;
            vs
        };
        let g1 = layer(1)[0];
        let l2 = layer(w);
        let l3 = layer(w);
        let l4 = layer(w);
        edges.push((hub, g1));
        for &x in &l2 {
            edges.push((g1, x));
        }
        for (a, b) in [(&l2, &l3), (&l3, &l4)] {
            for &x in a {
                for &y in b {
                    edges.push((x, y));
                }
            }
        }
        for i in 0..w {
            for j in i + 1..w {
                edges.push((l4[i], l4[j]));
            }
            edges.push((l4[i], shared[i]));
        }
    }
    let apex = next;
    for &s in &shared {
        edges.push((s, apex));
    }
    let g = Graph::new(apex + 1, edges).expect("gadget is simple");
    Rule1Gadget {
        instance: Instance::plain(Kind::Mstc, g, 4, 0).expect("valid"),
        hub,
        shared,
        apex,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Rule1GadgetReport {
    pub width: usize,
    pub n: usize,
    pub m: usize,
    /// kernel_stc keeps the apex and its dotted edges.
    pub kernel_keeps_apex: bool,
    /// Rule 1 (the ECS rule with ξ_{c−1}) deletes the apex.
    pub rule1_deletes_apex: bool,
    /// Oracle answer for the instance; `None` if the solver refused it.
    pub original_yes: Option<bool>,
    pub kernel_yes: Option<bool>,
    pub after_rule1_yes: Option<bool>,
}

impl Rule1GadgetReport {
    /// The kernel preserves the answer and Rule 1 turns a no into a yes.
    pub fn demonstrates_unsafety(&self) -> bool {
        self.kernel_keeps_apex
            && self.rule1_deletes_apex
            && self.original_yes == Some(false)
            && self.kernel_yes == Some(false)
            && self.after_rule1_yes == Some(true)
    }
}

pub fn rule1_gadget_report(width: usize, limit: usize) -> Result<Rule1GadgetReport> {
    let fig = rule1_gadget(width);
    let inst = &fig.instance;
    let out = kernelize(inst, Param::Xi)?;
    let kernel_keeps_apex = out.origin.contains(&Some(fig.apex));
    let ecs = Instance::plain(Kind::Ecs, inst.graph.clone(), inst.c, inst.k)?;
    let r1 = kernel_ecs_xi(&ecs)?;
    let rule1_deletes_apex = !r1.origin.contains(&Some(fig.apex));
    let answer = |i: &Instance| match decide(i, limit) {
        Ok(b) => Ok(Some(b)),
        Err(Error::Size { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let kernel_yes = match out.decision {
        Decision::Yes => Some(true),
        Decision::No => Some(false),
        Decision::Open => answer(&out.reduced)?,
    };
    let after = match r1.decision {
        Decision::Yes => Some(true),
        Decision::No => Some(false),
        Decision::Open => {
            let stc = Instance::plain(Kind::Mstc, r1.reduced.graph.clone(), inst.c, r1.reduced.k)?;
            answer(&stc)?
        }
    };
    Ok(Rule1GadgetReport {
        width,
        n: inst.n(),
        m: inst.m(),
        kernel_keeps_apex,
        rule1_deletes_apex,
        original_yes: answer(inst)?,
        kernel_yes,
        after_rule1_yes: after,
    })
}
