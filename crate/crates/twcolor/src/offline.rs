//! Offline coloring through an online algorithm: normalize the tree
//! decomposition to rooted nice form and walk it depth-first, forking the
//! algorithm state at branch points so each root-leaf path sees exactly the
//! reveal sequence of its own nice path decomposition.

use crate::decomposition::{normalize_rooted, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, VertexSet};
use crate::online::{OnlineAlgorithm, RevealStep};

#[derive(Debug, Clone)]
pub struct OfflineOutcome {
    pub coloring: Coloring,
    pub colors_used: usize,
}

/// Colors `g` by driving a fresh instance of the algorithm along every
/// root-leaf path of the normalized decomposition, coloring each vertex at
/// the node that introduces it. Determinism on shared prefixes makes the
/// branch colorings consistent; the result is a proper coloring of all of
/// `g`.
pub fn color_via_tree_decomposition(
    factory: impl Fn() -> Box<dyn OnlineAlgorithm>,
    g: &Graph,
    td: &TreeDecomposition,
) -> Result<OfflineOutcome> {
    let rntd = normalize_rooted(g, td)?;
    let mut coloring = Coloring::new();

    // Depth-first with the algorithm state carried along; children are
    // processed in ascending introduced-vertex order. Single children take
    // the state by move, siblings get forks.
    let mut stack: Vec<(usize, Box<dyn OnlineAlgorithm>)> = vec![(rntd.root(), factory())];
    while let Some((z, mut state)) = stack.pop() {
        if let Some(v) = rntd.introduced(z) {
            if coloring.get(v).is_some() {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex {v} introduced a second time at node {z}"
                )));
            }
            let bag = rntd.bag(z);
            let neighbors_in_bag: VertexSet = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|u| bag.contains(u) && *u != v)
                .collect();
            let step = RevealStep {
                vertex: v,
                bag: bag.clone(),
                neighbors_in_bag,
            };
            let color = state.choose(&step).map_err(|e| annotate(e, z, v))?;
            if color == 0 {
                return Err(violation(z, v, "algorithm returned color 0"));
            }
            if let Some(&u) = step
                .neighbors_in_bag
                .iter()
                .find(|&&u| coloring.get(u) == Some(color))
            {
                return Err(violation(
                    z,
                    v,
                    &format!("color {color} clashes with bag neighbor {u}"),
                ));
            }
            coloring.set(v, color)?;
        }

        let children = rntd.children(z);
        match children {
            [] => {}
            [only] => stack.push((*only, state)),
            many => {
                for &c in many.iter().rev() {
                    stack.push((c, state.fork()));
                }
            }
        }
    }

    for v in g.vertices() {
        if coloring.get(v).is_none() {
            return Err(Error::InvalidDecomposition(format!(
                "vertex {v} was never introduced"
            )));
        }
    }
    if !g.is_proper(&coloring)? {
        return Err(Error::ContractViolation {
            step: 0,
            vertex: 0,
            detail: "offline driver produced an improper coloring".into(),
        });
    }
    Ok(OfflineOutcome {
        colors_used: coloring.colors_used(),
        coloring,
    })
}

fn annotate(e: Error, node: usize, vertex: usize) -> Error {
    match e {
        Error::ContractViolation { step, detail, .. } => Error::ContractViolation {
            step,
            vertex,
            detail: format!("at tree node {node}: {detail}"),
        },
        other => other,
    }
}

fn violation(node: usize, vertex: usize, detail: &str) -> Error {
    Error::ContractViolation {
        step: node,
        vertex,
        detail: format!("at tree node {node}: {detail}"),
    }
}
