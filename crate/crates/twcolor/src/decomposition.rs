//! Tree and path decompositions, validation, and normalization to the nice
//! form in which bags start empty and every step introduces exactly one new
//! vertex (vertices may leave at the same step).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A tree decomposition: a tree over bag nodes plus one vertex set per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Builds a decomposition from bags and tree edges over node indices.
    /// Node indices are range-checked; tree shape is checked by `validate`.
    pub fn new(bags: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = bags.len();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::Domain(format!(
                    "tree edge ({a},{b}) references a node outside 0..{n}"
                )));
            }
        }
        Ok(TreeDecomposition { bags, edges })
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, z: usize) -> &VertexSet {
        &self.bags[z]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Max bag size minus one; a single empty bag has width -1.
    pub fn width(&self) -> isize {
        width_of(&self.bags)
    }

    fn node_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

pub(crate) fn width_of(bags: &[VertexSet]) -> isize {
    bags.iter()
        .map(|b| b.len() as isize - 1)
        .max()
        .unwrap_or(-1)
}

/// Outcome of checking the three decomposition conditions, with a concrete
/// witness for each failure. Bags referencing vertices outside the host
/// graph are reported as a range failure.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub vertex_range_ok: bool,
    pub out_of_range: Option<(usize, usize)>,
    pub tree_shape_ok: bool,
    pub tree_shape_witness: Option<String>,
    pub edge_coverage_ok: bool,
    pub uncovered_edge: Option<(usize, usize)>,
    pub connectivity_ok: bool,
    pub disconnected_vertex: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.vertex_range_ok && self.tree_shape_ok && self.edge_coverage_ok && self.connectivity_ok
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDecomposition(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let item = |ok: bool| if ok { "pass" } else { "FAIL" };
        if !self.vertex_range_ok {
            if let Some((z, v)) = self.out_of_range {
                write!(
                    f,
                    "vertex-range=FAIL (bag {z} holds vertex {v} outside the graph) "
                )?;
            }
        }
        write!(f, "tree-shape={}", item(self.tree_shape_ok))?;
        if let Some(w) = &self.tree_shape_witness {
            write!(f, " ({w})")?;
        }
        write!(f, " edge-coverage={}", item(self.edge_coverage_ok))?;
        if let Some((u, v)) = self.uncovered_edge {
            write!(f, " (edge {u}-{v} uncovered)")?;
        }
        write!(f, " connectivity={}", item(self.connectivity_ok))?;
        if let Some(v) = self.disconnected_vertex {
            write!(f, " (vertex {v})")?;
        }
        Ok(())
    }
}

/// Checks the three conditions of a tree decomposition of `g`: the node graph
/// is a tree, every edge of `g` lies inside some bag, and every vertex's
/// occurrence set induces a non-empty connected subtree.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> ValidationReport {
    let mut report = ValidationReport {
        vertex_range_ok: true,
        out_of_range: None,
        tree_shape_ok: true,
        tree_shape_witness: None,
        edge_coverage_ok: true,
        uncovered_edge: None,
        connectivity_ok: true,
        disconnected_vertex: None,
    };

    'bags: for (z, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                report.vertex_range_ok = false;
                report.out_of_range = Some((z, v));
                break 'bags;
            }
        }
    }

    let nodes = td.num_nodes();
    if nodes == 0 {
        report.tree_shape_ok = false;
        report.tree_shape_witness = Some("decomposition has no bags".into());
        return report;
    }
    if td.edges.len() != nodes - 1 {
        report.tree_shape_ok = false;
        report.tree_shape_witness = Some(format!(
            "{} nodes need {} tree edges, found {}",
            nodes,
            nodes - 1,
            td.edges.len()
        ));
    } else {
        let adj = td.node_adjacency();
        let mut seen = vec![false; nodes];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(z) = stack.pop() {
            for &w in &adj[z] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != nodes {
            report.tree_shape_ok = false;
            report.tree_shape_witness = Some(format!(
                "node graph disconnected ({reached}/{nodes} reachable)"
            ));
        }
    }

    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            report.edge_coverage_ok = false;
            report.uncovered_edge = Some((u, v));
            break;
        }
    }

    if report.tree_shape_ok {
        let adj = td.node_adjacency();
        'vertices: for v in g.vertices() {
            let occ: Vec<usize> = (0..nodes).filter(|&z| td.bags[z].contains(&v)).collect();
            if occ.is_empty() {
                report.connectivity_ok = false;
                report.disconnected_vertex = Some(v);
                break 'vertices;
            }
            let occ_set: BTreeSet<usize> = occ.iter().copied().collect();
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            let mut stack = vec![occ[0]];
            seen.insert(occ[0]);
            while let Some(z) = stack.pop() {
                for &w in &adj[z] {
                    if occ_set.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if seen.len() != occ.len() {
                report.connectivity_ok = false;
                report.disconnected_vertex = Some(v);
                break 'vertices;
            }
        }
    }

    report
}

/// A path decomposition: the bag sequence along a path of nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<VertexSet>) -> Self {
        PathDecomposition { bags }
    }

    pub fn width(&self) -> isize {
        width_of(&self.bags)
    }

    pub fn as_tree(&self) -> TreeDecomposition {
        let edges = (1..self.bags.len()).map(|i| (i - 1, i)).collect();
        TreeDecomposition {
            bags: self.bags.clone(),
            edges,
        }
    }

    pub fn validate(&self, g: &Graph) -> ValidationReport {
        validate(g, &self.as_tree())
    }
}

/// A nice path decomposition: bags start empty and step `i` introduces the
/// single new vertex `introduced[i-1]` (other vertices may leave at the same
/// step).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePathDecomposition {
    bags: Vec<VertexSet>,
    introduced: Vec<usize>,
}

impl NicePathDecomposition {
    /// The trivial decomposition consisting of one empty bag.
    pub fn empty() -> Self {
        NicePathDecomposition {
            bags: vec![VertexSet::new()],
            introduced: Vec::new(),
        }
    }

    /// Builds from a bag sequence, deriving the introduced vertices and
    /// checking the nice-form invariants.
    pub fn from_bags(bags: Vec<VertexSet>) -> Result<Self> {
        if bags.is_empty() {
            return Err(Error::NotNice {
                step: 0,
                detail: "no bags".into(),
            });
        }
        if !bags[0].is_empty() {
            return Err(Error::NotNice {
                step: 0,
                detail: "first bag is not empty".into(),
            });
        }
        let mut npd = NicePathDecomposition::empty();
        for (i, bag) in bags.into_iter().enumerate().skip(1) {
            let new: Vec<usize> = bag.difference(&npd.bags[i - 1]).copied().collect();
            if new.len() != 1 {
                return Err(Error::NotNice {
                    step: i,
                    detail: format!("step introduces {} vertices, expected 1", new.len()),
                });
            }
            npd.push_step(new[0], bag)?;
        }
        Ok(npd)
    }

    /// Appends one step. `bag` must contain `vertex`, must not re-introduce a
    /// previously introduced vertex, and all of `bag` minus `vertex` must come
    /// from the previous bag.
    pub fn push_step(&mut self, vertex: usize, bag: VertexSet) -> Result<()> {
        let step = self.bags.len();
        if !bag.contains(&vertex) {
            return Err(Error::NotNice {
                step,
                detail: format!("introduced vertex {vertex} missing from its bag"),
            });
        }
        let prev = self.bags.last().expect("bags never empty");
        for &u in &bag {
            if u != vertex && !prev.contains(&u) {
                return Err(Error::NotNice {
                    step,
                    detail: format!("vertex {u} appears without being introduced"),
                });
            }
        }
        if self.introduced.contains(&vertex) || prev.contains(&vertex) {
            return Err(Error::NotNice {
                step,
                detail: format!("vertex {vertex} introduced twice"),
            });
        }
        self.bags.push(bag);
        self.introduced.push(vertex);
        Ok(())
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn introduced(&self) -> &[usize] {
        &self.introduced
    }

    /// Number of reveal steps (one per introduced vertex).
    pub fn num_steps(&self) -> usize {
        self.introduced.len()
    }

    pub fn last_bag(&self) -> &VertexSet {
        self.bags.last().expect("bags never empty")
    }

    pub fn width(&self) -> isize {
        width_of(&self.bags)
    }

    /// Steps in reveal order as `(introduced vertex, bag after the step)`.
    pub fn steps(&self) -> impl Iterator<Item = (usize, &VertexSet)> + '_ {
        self.introduced
            .iter()
            .copied()
            .zip(self.bags.iter().skip(1))
    }

    /// All vertices appearing in some bag (equals the introduced set).
    pub fn covered_vertices(&self) -> VertexSet {
        self.introduced.iter().copied().collect()
    }

    pub fn as_path(&self) -> PathDecomposition {
        PathDecomposition::new(self.bags.clone())
    }

    /// Validates this decomposition against the subgraph of `g` induced on
    /// the covered vertices: every induced edge must lie in some bag and
    /// every covered vertex's occurrence interval must be contiguous.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        let covered = self.covered_vertices();
        for &v in &covered {
            g.check_vertex(v)?;
        }
        for (u, v) in g.edges() {
            if covered.contains(&u)
                && covered.contains(&v)
                && !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v))
            {
                return Err(Error::InvalidDecomposition(format!(
                    "edge {u}-{v} not inside any bag"
                )));
            }
        }
        for &v in &covered {
            let occ: Vec<usize> = (0..self.bags.len())
                .filter(|&i| self.bags[i].contains(&v))
                .collect();
            let contiguous = occ.windows(2).all(|w| w[1] == w[0] + 1);
            if !contiguous {
                return Err(Error::InvalidDecomposition(format!(
                    "occurrence interval of vertex {v} is not contiguous"
                )));
            }
        }
        Ok(())
    }
}

/// Transforms a valid path decomposition into a nice one of the same width.
/// Every original bag appears as a subset of some output bag.
pub fn make_nice(g: &Graph, pd: &PathDecomposition) -> Result<NicePathDecomposition> {
    pd.validate(g).into_result()?;

    let mut npd = NicePathDecomposition::empty();
    let mut prev_original = VertexSet::new();
    for bag in &pd.bags {
        let new: Vec<usize> = bag.difference(&prev_original).copied().collect();
        // A bag introducing nothing is a subset of its predecessor and is
        // already represented.
        let keep: VertexSet = bag.intersection(&prev_original).copied().collect();
        let mut current = keep;
        for (idx, &v) in new.iter().enumerate() {
            current.insert(v);
            let step_bag = if idx + 1 == new.len() {
                bag.clone()
            } else {
                current.clone()
            };
            npd.push_step(v, step_bag)?;
        }
        prev_original = bag.clone();
    }

    debug_assert_eq!(npd.width(), pd.width());
    Ok(npd)
}

/// A tree decomposition rooted at an empty bag in which every non-root node
/// introduces exactly one vertex relative to its parent.
#[derive(Debug, Clone)]
pub struct RootedNiceTreeDecomposition {
    bags: Vec<VertexSet>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    introduced: Vec<Option<usize>>,
    root: usize,
}

impl RootedNiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, z: usize) -> &VertexSet {
        &self.bags[z]
    }

    pub fn parent(&self, z: usize) -> Option<usize> {
        self.parent[z]
    }

    /// Children ordered by ascending introduced vertex id.
    pub fn children(&self, z: usize) -> &[usize] {
        &self.children[z]
    }

    /// The unique vertex new at `z` relative to its parent; `None` at the root.
    pub fn introduced(&self, z: usize) -> Option<usize> {
        self.introduced[z]
    }

    pub fn width(&self) -> isize {
        width_of(&self.bags)
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.dfs_order()
            .into_iter()
            .filter(|&z| self.children[z].is_empty())
            .collect()
    }

    /// Depth-first order from the root, children in ascending introduced id.
    pub fn dfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.num_nodes());
        let mut stack = vec![self.root];
        while let Some(z) = stack.pop() {
            order.push(z);
            for &c in self.children[z].iter().rev() {
                stack.push(c);
            }
        }
        order
    }

    pub fn as_tree(&self) -> TreeDecomposition {
        let edges = (0..self.num_nodes())
            .filter_map(|z| self.parent[z].map(|p| (p, z)))
            .collect();
        TreeDecomposition {
            bags: self.bags.clone(),
            edges,
        }
    }
}

/// Normalizes a valid tree decomposition to rooted nice form of the same
/// width: an empty root bag is added, nodes introducing nothing are merged
/// upward, and nodes introducing m >= 2 vertices are split into a chain
/// introducing them one at a time in ascending id order.
pub fn normalize_rooted(g: &Graph, td: &TreeDecomposition) -> Result<RootedNiceTreeDecomposition> {
    validate(g, td).into_result()?;

    let orig_adj = td.node_adjacency();
    let mut out = RootedNiceTreeDecomposition {
        bags: vec![VertexSet::new()],
        parent: vec![None],
        children: vec![Vec::new()],
        introduced: vec![None],
        root: 0,
    };

    // (original node, original parent, attach point in the output tree)
    let mut work: Vec<(usize, Option<usize>, usize)> = vec![(0, None, out.root)];
    while let Some((z, from, attach)) = work.pop() {
        let bag = &td.bags[z];
        let parent_bag = out.bags[attach].clone();
        let new: Vec<usize> = bag.difference(&parent_bag).copied().collect();

        let anchor = if new.is_empty() {
            attach // merge upward: children re-attach to the parent
        } else {
            let shared: VertexSet = bag.intersection(&parent_bag).copied().collect();
            let mut current = shared;
            let mut at = attach;
            for (idx, &v) in new.iter().enumerate() {
                current.insert(v);
                let node_bag = if idx + 1 == new.len() {
                    bag.clone()
                } else {
                    current.clone()
                };
                let id = out.bags.len();
                out.bags.push(node_bag);
                out.parent.push(Some(at));
                out.children.push(Vec::new());
                out.introduced.push(Some(v));
                out.children[at].push(id);
                at = id;
            }
            at
        };

        for &w in &orig_adj[z] {
            if Some(w) != from {
                work.push((w, Some(z), anchor));
            }
        }
    }

    for z in 0..out.num_nodes() {
        out.children[z].sort_by_key(|&c| out.introduced[c]);
    }

    // the construction preserves all three conditions; re-check the result
    validate(g, &out.as_tree()).into_result().map_err(|e| {
        Error::InvalidDecomposition(format!("normalization produced an invalid result: {e}"))
    })?;
    for z in 0..out.num_nodes() {
        if let Some(p) = out.parent[z] {
            let new: Vec<usize> = out.bags[z].difference(&out.bags[p]).copied().collect();
            if new.len() != 1 {
                return Err(Error::InvalidDecomposition(format!(
                    "node {z} introduces {} vertices after normalization",
                    new.len()
                )));
            }
        }
    }
    debug_assert_eq!(out.width(), td.width());
    Ok(out)
}

/// One nice path decomposition per leaf: the bags along the root-leaf path.
/// Outputs agree on shared prefixes and their introduced vertices cover all
/// vertices of the host graph.
pub fn root_leaf_paths(rntd: &RootedNiceTreeDecomposition) -> Vec<NicePathDecomposition> {
    rntd.leaves()
        .into_iter()
        .map(|leaf| {
            let mut chain = Vec::new();
            let mut z = Some(leaf);
            while let Some(node) = z {
                chain.push(rntd.bag(node).clone());
                z = rntd.parent(node);
            }
            chain.reverse();
            NicePathDecomposition::from_bags(chain)
                .expect("root-leaf chains of a rooted nice decomposition are nice")
        })
        .collect()
}
