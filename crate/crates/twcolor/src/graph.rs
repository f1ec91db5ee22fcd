//! Simple undirected graphs over dense integer vertex ids, plus colorings.
//!
//! Vertices are `0..n-1`; adjacency is stored as one sorted neighbor set per
//! vertex. External 1-indexed formats are translated at the I/O boundary.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A set of vertex ids. Ordered so that iteration is deterministic.
pub type VertexSet = BTreeSet<usize>;

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Creates an edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Adds the undirected edge `{u, v}`. Idempotent for existing edges.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(VertexSet::new());
        self.adj.len() - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Induced subgraph on `verts`, with vertices relabeled to `0..k-1` in
    /// ascending order of original id. Returns the subgraph and the map from
    /// new id to original id.
    pub fn induced(&self, verts: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        let order: Vec<usize> = verts.iter().copied().collect();
        for &v in &order {
            self.check_vertex(v)?;
        }
        let index: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(order.len());
        for (i, &v) in order.iter().enumerate() {
            for w in self.adj[v].iter() {
                if let Some(&j) = index.get(w) {
                    if i < j {
                        g.add_edge(i, j)?;
                    }
                }
            }
        }
        Ok((g, order))
    }

    /// True iff no edge of the graph has both endpoints in `s`.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        for &v in s {
            self.check_vertex(v)?;
        }
        for &v in s {
            if self.adj[v].iter().any(|u| s.contains(u)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the graph contains no clique on `k` vertices. `k = 3` is the
    /// triangle-freeness predicate.
    pub fn is_clique_free(&self, k: usize) -> Result<bool> {
        if k < 2 {
            return Err(Error::Domain(format!("clique size {k} < 2")));
        }
        let verts: Vec<usize> = self.vertices().collect();
        Ok(!self.extends_to_clique(&[], &verts, k))
    }

    pub fn is_triangle_free(&self) -> bool {
        self.is_clique_free(3).expect("k=3 is always in domain")
    }

    fn extends_to_clique(&self, clique: &[usize], candidates: &[usize], k: usize) -> bool {
        if clique.len() == k {
            return true;
        }
        if clique.len() + candidates.len() < k {
            return false;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let mut next = Vec::with_capacity(candidates.len() - i);
            for &u in &candidates[i + 1..] {
                if self.adj[v].contains(&u) {
                    next.push(u);
                }
            }
            let mut extended = clique.to_vec();
            extended.push(v);
            if self.extends_to_clique(&extended, &next, k) {
                return true;
            }
        }
        false
    }

    /// True iff `c` is a proper coloring of the whole graph. Every vertex
    /// must be colored.
    pub fn is_proper(&self, c: &Coloring) -> Result<bool> {
        for v in self.vertices() {
            if c.get(v).is_none() {
                return Err(Error::UncoloredVertex(v));
            }
        }
        Ok(self.is_proper_on_colored(c))
    }

    /// Properness restricted to the colored vertices: no edge with both ends
    /// colored is monochromatic.
    pub fn is_proper_on_colored(&self, c: &Coloring) -> bool {
        self.edges().all(|(u, v)| match (c.get(u), c.get(v)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }
}

/// A (possibly partial) assignment of positive integer colors to vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coloring {
    assignment: BTreeMap<usize, u32>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `color` to `vertex`; colors must be positive.
    pub fn set(&mut self, vertex: usize, color: u32) -> Result<()> {
        if color == 0 {
            return Err(Error::Domain(format!(
                "color 0 assigned to vertex {vertex}; colors are positive"
            )));
        }
        self.assignment.insert(vertex, color);
        Ok(())
    }

    pub fn get(&self, vertex: usize) -> Option<u32> {
        self.assignment.get(&vertex).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.keys().copied()
    }

    /// Number of distinct colors used.
    pub fn colors_used(&self) -> usize {
        self.color_set().len()
    }

    pub fn color_set(&self) -> BTreeSet<u32> {
        self.assignment.values().copied().collect()
    }

    /// Restriction of the coloring to `verts`.
    pub fn restrict(&self, verts: &VertexSet) -> Coloring {
        Coloring {
            assignment: self
                .assignment
                .iter()
                .filter(|(v, _)| verts.contains(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        }
    }

    /// Colors appearing on `verts` (uncolored members contribute nothing).
    pub fn colors_on(&self, verts: &VertexSet) -> BTreeSet<u32> {
        verts.iter().filter_map(|&v| self.get(v)).collect()
    }
}

impl FromIterator<(usize, u32)> for Coloring {
    fn from_iter<T: IntoIterator<Item = (usize, u32)>>(iter: T) -> Self {
        Coloring {
            assignment: iter.into_iter().collect(),
        }
    }
}

/// Convenience constructors for graphs used throughout the tests.
pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        if n > 2 || i + 1 < n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i).unwrap();
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}
