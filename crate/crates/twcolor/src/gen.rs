//! Seeded sampler of triangle-free partial k-trees together with a witness
//! tree decomposition, used to exercise the width-t hypothesis class.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{validate, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub td: TreeDecomposition,
}

/// Grows a random tree of bags of size <= t+1, each sharing t vertices with
/// its parent, then samples edges inside bags with probability `density`,
/// skipping any edge that would close a triangle. The output always
/// validates, is triangle-free, has width <= t, and is bit-identical for a
/// fixed seed.
pub fn gen_random_instance(
    t: usize,
    n: usize,
    density: f64,
    seed: u64,
) -> Result<GeneratedInstance> {
    if t < 1 {
        return Err(Error::Domain(format!("t must be >= 1, got {t}")));
    }
    if n < 1 {
        return Err(Error::Domain(format!("n must be >= 1, got {n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Domain(format!(
            "density must lie in [0,1], got {density}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::new(n);

    let first = (t + 1).min(n);
    let mut bags: Vec<VertexSet> = vec![(0..first).collect()];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for v in first..n {
        let parent = rng.random_range(0..bags.len());
        let mut pool: Vec<usize> = bags[parent].iter().copied().collect();
        pool.shuffle(&mut rng);
        pool.truncate(t.min(pool.len()));
        let mut bag: VertexSet = pool.into_iter().collect();
        bag.insert(v);
        bags.push(bag);
        tree_edges.push((parent, bags.len() - 1));
    }

    for bag in &bags {
        let members: Vec<usize> = bag.iter().copied().collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let (u, w) = (members[i], members[j]);
                if graph.has_edge(u, w) || !rng.random_bool(density) {
                    continue;
                }
                let closes_triangle = graph
                    .neighbors(u)
                    .intersection(graph.neighbors(w))
                    .next()
                    .is_some();
                if !closes_triangle {
                    graph.add_edge(u, w)?;
                }
            }
        }
    }

    let td = TreeDecomposition::new(bags, tree_edges)?;
    validate(&graph, &td).into_result()?;
    if !graph.is_triangle_free() {
        return Err(Error::Domain(
            "generator produced a triangle, which should be impossible".into(),
        ));
    }
    Ok(GeneratedInstance { graph, td })
}
