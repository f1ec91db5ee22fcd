//! Exhaustive desk-scale oracles: independent-set enumeration, exact
//! chromatic number, and exact tree-width. Exceeding a cap is a reported
//! error, never silent truncation.

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Size caps for the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Max size of the `within` set for independent-set enumeration.
    pub subset_enum: usize,
    /// Max vertex count for the exact chromatic number.
    pub chromatic: usize,
    /// Max vertex count for the exact tree-width.
    pub treewidth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subset_enum: 24,
            chromatic: 16,
            treewidth: 14,
        }
    }
}

/// Iterator over exactly the independent subsets of a fixed vertex set,
/// including the empty set.
pub struct IndependentSets {
    verts: Vec<usize>,
    /// Adjacency restricted to `verts`, as index bitmasks.
    local_adj: Vec<u64>,
    next_mask: u64,
    end: u64,
}

impl Iterator for IndependentSets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            if mask_independent(mask, &self.local_adj) {
                return Some(mask_to_set(mask, &self.verts));
            }
        }
        None
    }
}

fn mask_independent(mask: u64, local_adj: &[u64]) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if local_adj[i] & mask != 0 {
            return false;
        }
    }
    true
}

fn mask_to_set(mask: u64, verts: &[usize]) -> VertexSet {
    let mut set = VertexSet::new();
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        set.insert(verts[i]);
    }
    set
}

pub(crate) fn local_adjacency(g: &Graph, verts: &[usize]) -> Vec<u64> {
    verts
        .iter()
        .map(|&v| {
            let mut mask = 0u64;
            for (j, &u) in verts.iter().enumerate() {
                if g.has_edge(v, u) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect()
}

/// Yields exactly the subsets of `within` that are independent in `g`.
pub fn independent_sets(g: &Graph, within: &VertexSet, cap: usize) -> Result<IndependentSets> {
    for &v in within {
        g.check_vertex(v)?;
    }
    // the mask representation tops out at 63 members regardless of the cap
    if within.len() > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "independent-set enumeration domain",
            size: within.len(),
            cap: cap.min(63),
        });
    }
    let verts: Vec<usize> = within.iter().copied().collect();
    let local_adj = local_adjacency(g, &verts);
    Ok(IndependentSets {
        end: 1u64 << verts.len(),
        verts,
        local_adj,
        next_mask: 0,
    })
}

/// Exact chromatic number by iterative deepening on the palette size with a
/// greedy clique lower bound. Returns 0 for the null graph.
pub fn chromatic_number_exact(g: &Graph, caps: &Caps) -> Result<usize> {
    let n = g.n();
    if n > caps.chromatic {
        return Err(Error::CapExceeded {
            what: "chromatic-number oracle input",
            size: n,
            cap: caps.chromatic,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    if g.m() == 0 {
        return Ok(1);
    }

    let lower = greedy_clique_size(g);
    let upper = greedy_coloring_count(g);
    for k in lower..=upper {
        if k_colorable(g, k) {
            return Ok(k);
        }
    }
    unreachable!("greedy coloring always succeeds at its own color count")
}

fn greedy_clique_size(g: &Graph) -> usize {
    // Grow a clique by repeatedly taking the highest-degree candidate.
    let mut best = 1;
    for start in g.vertices() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = g.neighbors(start).iter().copied().collect();
        while !candidates.is_empty() {
            let &v = candidates
                .iter()
                .max_by_key(|&&v| g.degree(v))
                .expect("non-empty");
            clique.push(v);
            candidates.retain(|&u| u != v && g.has_edge(u, v));
        }
        best = best.max(clique.len());
    }
    best
}

fn greedy_coloring_count(g: &Graph) -> usize {
    let mut colors = vec![0usize; g.n()];
    let mut used = 0;
    for v in g.vertices() {
        let taken: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
        let mut c = 1;
        while taken.contains(&c) {
            c += 1;
        }
        colors[v] = c;
        used = used.max(c);
    }
    used
}

fn k_colorable(g: &Graph, k: usize) -> bool {
    let mut colors = vec![0usize; g.n()];
    try_color(g, 0, k, 0, &mut colors)
}

fn try_color(g: &Graph, v: usize, k: usize, max_used: usize, colors: &mut [usize]) -> bool {
    if v == g.n() {
        return true;
    }
    // Symmetry breaking: a fresh color may only be the next unused one.
    let limit = k.min(max_used + 1);
    for c in 1..=limit {
        if g.neighbors(v).iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if try_color(g, v + 1, k, max_used.max(c), colors) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}

/// Exact tree-width via dynamic programming over vertex subsets in the
/// elimination-ordering formulation, together with a witness decomposition of
/// that width. The null graph has tree-width 0 by convention (its witness is
/// the single empty bag, of width -1).
pub fn treewidth_exact(g: &Graph, caps: &Caps) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    // the subset DP tables top out at 26 vertices regardless of the cap
    if n > caps.treewidth.min(26) {
        return Err(Error::CapExceeded {
            what: "tree-width oracle input",
            size: n,
            cap: caps.treewidth.min(26),
        });
    }
    if n == 0 {
        let td = TreeDecomposition::new(vec![VertexSet::new()], vec![])?;
        return Ok((0, td));
    }

    let adj: Vec<u32> = (0..n)
        .map(|v| {
            let mut mask = 0u32;
            for &u in g.neighbors(v) {
                mask |= 1 << u;
            }
            mask
        })
        .collect();

    // f[s] = least achievable max elimination degree when the vertices of s
    // are eliminated first; choice[s] = the vertex eliminated last among s.
    let full: u32 = (1 << n) - 1;
    let mut f = vec![u8::MAX; (full as usize) + 1];
    let mut choice = vec![u8::MAX; (full as usize) + 1];
    f[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut best_v = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let deg = elimination_degree(&adj, prev, v) as u8;
            let value = f[prev as usize].max(deg);
            if value < best {
                best = value;
                best_v = v as u8;
            }
        }
        f[s as usize] = best;
        choice[s as usize] = best_v;
    }
    let width = f[full as usize] as usize;

    // Recover the elimination order (choice holds the last-eliminated vertex).
    let mut order = vec![0usize; n];
    let mut s = full;
    for slot in (0..n).rev() {
        let v = choice[s as usize] as usize;
        order[slot] = v;
        s &= !(1 << v);
    }

    let td = decomposition_from_elimination(g, &order)?;
    debug_assert_eq!(td.width(), width as isize);
    Ok((width, td))
}

/// Number of vertices outside `eliminated + {v}` reachable from `v` via paths
/// whose internal vertices are all in `eliminated`. This is v's degree in the
/// fill graph once `eliminated` is gone.
fn elimination_degree(adj: &[u32], eliminated: u32, v: usize) -> u32 {
    let mut seen: u32 = 1 << v;
    let mut frontier: u32 = 1 << v;
    while frontier != 0 {
        let mut reach = 0u32;
        let mut rest = frontier;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            reach |= adj[x];
        }
        let new = reach & !seen;
        seen |= new;
        frontier = new & eliminated;
    }
    (seen & !eliminated & !(1 << v)).count_ones()
}

/// Standard construction: eliminate vertices in order, each bag is the vertex
/// plus its not-yet-eliminated fill neighbors, attached to the bag of its
/// earliest-eliminated such neighbor.
fn decomposition_from_elimination(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }

    let mut fill: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut bags = vec![VertexSet::new(); n];
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = fill[v]
            .iter()
            .copied()
            .filter(|&u| position[u] > i)
            .collect();
        let mut bag: VertexSet = later.iter().copied().collect();
        bag.insert(v);
        bags[i] = bag;

        if let Some(&anchor) = later.iter().min_by_key(|&&u| position[u]) {
            edges.push((i, position[anchor]));
        } else if i + 1 < n {
            edges.push((i, i + 1));
        }
        for &a in &later {
            for &b in &later {
                if a < b {
                    fill[a].insert(b);
                    fill[b].insert(a);
                }
            }
        }
    }
    TreeDecomposition::new(bags, edges)
}
