use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::labeling::{check_proper, check_psi_satisfying, check_stc, EdgeLists, Labeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Ecs,
    Mstc,
    ElEcs,
    ElMstc,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Ecs, Kind::Mstc, Kind::ElEcs, Kind::ElMstc];

    pub fn has_lists(self) -> bool {
        matches!(self, Kind::ElEcs | Kind::ElMstc)
    }

    /// Whether strong classes must be matchings (otherwise only induced P₃s
    /// are forbidden).
    pub fn is_proper(self) -> bool {
        matches!(self, Kind::Ecs | Kind::ElEcs)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Ecs => "ecs",
            Kind::Mstc => "mstc",
            Kind::ElEcs => "el-ecs",
            Kind::ElMstc => "el-mstc",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Ok(match s {
            "ecs" => Kind::Ecs,
            "mstc" => Kind::Mstc,
            "el-ecs" => Kind::ElEcs,
            "el-mstc" => Kind::ElMstc,
            _ => return input(format!("unknown problem kind `{s}`")),
        })
    }
}

/// Graph, color count, weak-edge budget and problem kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub kind: Kind,
    pub graph: Graph,
    pub c: u32,
    pub k: u64,
    /// Present exactly for the list kinds.
    pub psi: Option<EdgeLists>,
}

impl Instance {
    pub fn new(kind: Kind, graph: Graph, c: u32, k: u64, psi: Option<EdgeLists>) -> Result<Instance> {
        if c == 0 {
            return input("c must be at least 1");
        }
        match (&psi, kind.has_lists()) {
            (Some(p), true) => {
                if p.c != c {
                    return input("edge lists use a different c");
                }
                p.validate(&graph)?;
            }
            (None, false) => {}
            (None, true) => return input(format!("{kind} instance needs edge lists")),
            (Some(_), false) => return input(format!("{kind} instance cannot carry edge lists")),
        }
        Ok(Instance {
            kind,
            graph,
            c,
            k,
            psi,
        })
    }

    /// Instance without lists; list kinds get full lists.
    pub fn plain(kind: Kind, graph: Graph, c: u32, k: u64) -> Result<Instance> {
        let psi = kind.has_lists().then(|| EdgeLists::full(c));
        Instance::new(kind, graph, c, k, psi)
    }

    pub fn with_k(&self, k: u64) -> Instance {
        Instance { k, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    /// Allowed colors per edge in edge order (full sets for the plain kinds).
    pub fn lists(&self) -> Vec<crate::labeling::ColorSet> {
        match &self.psi {
            Some(p) => p.dense(&self.graph),
            None => {
                let full = if self.c <= crate::labeling::MAX_LIST_COLORS {
                    crate::labeling::ColorSet::full(self.c)
                } else {
                    crate::labeling::ColorSet::full(crate::labeling::MAX_LIST_COLORS)
                };
                vec![full; self.m()]
            }
        }
    }

    /// Whether `l` is a valid labeling for this kind (budget not checked).
    pub fn is_valid_labeling(&self, l: &Labeling) -> Result<bool> {
        let ok = if self.kind.is_proper() {
            check_proper(&self.graph, l)?
        } else {
            check_stc(&self.graph, l)?
        };
        Ok(ok
            && match &self.psi {
                Some(p) => check_psi_satisfying(&self.graph, l, p)?,
                None => true,
            })
    }

    /// Canonical small no-instance of the same kind and c.
    pub fn canonical_no(kind: Kind, c: u32) -> Instance {
        if kind.has_lists() {
            let g = Graph::path(2);
            let mut psi = EdgeLists::full(c);
            psi.set((0, 1), crate::labeling::ColorSet::EMPTY);
            Instance::new(kind, g, c, 0, Some(psi)).expect("valid")
        } else {
            // pairwise conflicting edges, one more than there are colors
            Instance::new(kind, Graph::star(c as usize + 1), c, 0, None).expect("valid")
        }
    }

    /// Edgeless yes-instance on zero vertices.
    pub fn canonical_yes(kind: Kind, c: u32, k: u64) -> Instance {
        Instance::plain(kind, Graph::empty(0), c, k).expect("valid")
    }
}
