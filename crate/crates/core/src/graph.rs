//! Simple undirected graphs with dense vertex ids.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Normalized unordered pair `(min, max)`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair.
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut list: Vec<Edge> = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return input(format!("edge ({a},{b}) out of range for {n} vertices"));
            }
            if a == b {
                return input(format!("self-loop at vertex {a}"));
            }
            list.push(edge(a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return input(format!("duplicate edge ({},{})", w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::from_sorted(n, edges)
    }

    pub fn path(n: usize) -> Graph {
        Self::from_sorted(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<Edge> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Self::from_sorted(n, edges)
    }

    /// Star with center 0 and leaves 1..=leaves.
    pub fn star(leaves: usize) -> Graph {
        Self::from_sorted(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    // edges must be normalized, sorted and distinct
    fn from_sorted(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// N[v] in ascending order.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.partition_point(|&w| w < v);
        out.insert(pos, v);
        out
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    #[inline]
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&edge(a, b)).ok()
    }

    /// Indices of the edges incident with edge `i`, excluding `i`.
    pub fn incident_edges(&self, i: usize) -> Vec<usize> {
        let (a, b) = self.edges[i];
        let mut out = Vec::with_capacity(self.degree(a) + self.degree(b));
        for &x in [a, b].iter() {
            for &w in &self.adj[x] {
                let j = self.edge_index(x, w).expect("adjacency matches edges");
                if j != i {
                    out.push(j);
                }
            }
        }
        out
    }

    /// True iff some vertex is adjacent to both endpoints.
    pub fn edge_in_triangle(&self, a: usize, b: usize) -> Result<bool> {
        if !self.has_edge(a, b) {
            return input(format!("({a},{b}) is not an edge"));
        }
        Ok(self.common_neighbor(a, b).is_some())
    }

    /// Lowest common neighbor of `a` and `b`.
    pub fn common_neighbor(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (&self.adj[a], &self.adj[b]);
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(x[i]),
            }
        }
        None
    }

    /// G[S]. Returns the subgraph and the table mapping new ids to old ids.
    /// New ids follow the ascending order of `s`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep = vec![usize::MAX; self.n];
        let mut old: Vec<usize> = s.to_vec();
        old.sort_unstable();
        old.dedup();
        for (i, &v) in old.iter().enumerate() {
            if v >= self.n {
                return input(format!("vertex {v} out of range"));
            }
            keep[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| keep[a] != usize::MAX && keep[b] != usize::MAX)
            .map(|&(a, b)| (keep[a], keep[b]))
            .collect();
        // monotone remap keeps the edge list sorted
        Ok((Self::from_sorted(old.len(), edges), old))
    }

    /// G − S, with the new-to-old id table.
    pub fn remove_vertices(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut drop = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return input(format!("vertex {v} out of range"));
            }
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Same vertex set, edge subset.
    pub fn spanning_subgraph(&self, keep: impl Fn(Edge) -> bool) -> Graph {
        let edges = self.edges.iter().copied().filter(|&e| keep(e)).collect();
        Self::from_sorted(self.n, edges)
    }

    /// Components in order of their smallest vertex; each sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_where(|_| true)
    }

    /// Components of G[{v : member(v)}].
    pub fn components_where(&self, member: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] || !member(s) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] && member(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// |E(X, V)|: edges with at least one endpoint in X.
    pub fn edges_touching(&self, x: &[usize]) -> usize {
        let mut inx = vec![false; self.n];
        for &v in x {
            inx[v] = true;
        }
        self.edges.iter().filter(|&&(a, b)| inx[a] || inx[b]).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    VertexSimple,
    EdgeSimple,
    /// First vertex equals the last, otherwise vertex-simple.
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub kind: PathKind,
}

impl Path {
    pub fn new(vertices: Vec<usize>, kind: PathKind) -> Path {
        Path { vertices, kind }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.vertices.windows(2).map(|w| edge(w[0], w[1])).collect()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path {
            vertices,
            kind: self.kind,
        }
    }

    /// Checks adjacency and the simplicity condition of `kind` against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.vertices.is_empty() {
            return input("path without vertices");
        }
        for w in self.vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return input(format!("({},{}) is not an edge", w[0], w[1]));
            }
        }
        let mut es = self.edges();
        es.sort_unstable();
        let repeated_edge = es.windows(2).any(|w| w[0] == w[1]);
        match self.kind {
            PathKind::EdgeSimple => {
                if repeated_edge {
                    return input("edge-simple path repeats an edge");
                }
            }
            PathKind::VertexSimple => {
                let mut vs = self.vertices.clone();
                vs.sort_unstable();
                if vs.windows(2).any(|w| w[0] == w[1]) {
                    return input("vertex-simple path repeats a vertex");
                }
            }
            PathKind::Cycle => {
                let r = self.vertices.len();
                if r < 4 || self.vertices[0] != self.vertices[r - 1] {
                    return input("cycle must close and have at least 3 edges");
                }
                let mut vs = self.vertices[..r - 1].to_vec();
                vs.sort_unstable();
                if vs.windows(2).any(|w| w[0] == w[1]) {
                    return input("cycle repeats a vertex");
                }
            }
        }
        Ok(())
    }
}

/// Inclusion-maximal path of vertices of degree at most two that is not part of
/// an isolated cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedDegreePath {
    pub path: Path,
    /// Some endpoint has degree one.
    pub open: bool,
}

impl BoundedDegreePath {
    pub fn first(&self) -> usize {
        self.path.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.path.vertices.last().expect("non-empty path")
    }
}

/// All BDPs and isolated cycles of `g`.
///
/// BDPs start at their lower-id endpoint and are listed by that vertex.
/// Cycles start and end at their smallest vertex and continue towards its
/// smaller neighbor.
pub fn enumerate_bdps_and_isolated_cycles(g: &Graph) -> (Vec<BoundedDegreePath>, Vec<Path>) {
    let low = |v: usize| (1..=2).contains(&g.degree(v));
    let low_nbrs = |v: usize| g.neighbors(v).iter().copied().filter(move |&w| low(w));
    let mut bdps = Vec::new();
    let mut cycles = Vec::new();
    for comp in g.components_where(low) {
        if comp.len() < 2 {
            continue;
        }
        let ends: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| low_nbrs(v).count() < 2)
            .collect();
        if ends.is_empty() {
            let start = comp[0];
            let mut vertices = vec![start];
            let mut prev = start;
            let mut cur = low_nbrs(start).min().expect("cycle vertex has neighbors");
            while cur != start {
                vertices.push(cur);
                let next = low_nbrs(cur).find(|&w| w != prev).expect("cycle continues");
                prev = cur;
                cur = next;
            }
            vertices.push(start);
            cycles.push(Path::new(vertices, PathKind::Cycle));
            continue;
        }
        let start = ends[0];
        let mut vertices = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = low_nbrs(cur).find(|&w| w != prev);
            match next {
                Some(w) => {
                    vertices.push(w);
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        let open = g.degree(start) == 1 || g.degree(cur) == 1;
        bdps.push(BoundedDegreePath {
            path: Path::new(vertices, PathKind::VertexSimple),
            open,
        });
    }
    (bdps, cycles)
}
