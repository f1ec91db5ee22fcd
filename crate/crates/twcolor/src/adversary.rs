//! Adaptive adversary constructions that force any online coloring algorithm
//! to spend colors: the forcing extension (growing an independent set with
//! pairwise-distinct victim colors), its iteration, and the recursive
//! clique-free construction joining a forced witness to a smaller instance.

use std::collections::BTreeSet;

use crate::decomposition::NicePathDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, VertexSet};
use crate::online::{OnlineAlgorithm, RevealStep, TranscriptStep};

/// The lower-bound recurrence: g(t,2) = g(0,k) = 1 and
/// g(t,k) = ceil((t+1)/2) + g(floor((t-1)/2), k-1) for t >= 1, k >= 3.
pub fn g(t: usize, k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::Domain(format!("g(t,k) needs k >= 2, got k={k}")));
    }
    if k == 2 || t == 0 {
        return Ok(1);
    }
    Ok((t + 1).div_ceil(2) + g((t - 1) / 2, k - 1)?)
}

/// The adversary's growing position against one victim: the graph and nice
/// path decomposition revealed so far, the victim's coloring of it, and an
/// ordered witness: an independent set inside the last bag whose members
/// hold pairwise-distinct colors.
pub struct ForcingState {
    pub graph: Graph,
    pub npd: NicePathDecomposition,
    pub coloring: Coloring,
    pub witness: Vec<usize>,
    pub victim: Box<dyn OnlineAlgorithm>,
    pub transcript: Vec<TranscriptStep>,
}

impl ForcingState {
    pub fn fresh(victim: Box<dyn OnlineAlgorithm>) -> Self {
        ForcingState {
            graph: Graph::new(0),
            npd: NicePathDecomposition::empty(),
            coloring: Coloring::new(),
            witness: Vec::new(),
            victim,
            transcript: Vec::new(),
        }
    }

    /// Reveals a fresh vertex adjacent to `neighbors`, inside `bag` (which
    /// must not yet contain the vertex; it is inserted here). Returns the
    /// vertex id and the victim's color, enforcing the properness contract.
    fn reveal(&mut self, neighbors: &VertexSet, mut bag: VertexSet) -> Result<(usize, u32)> {
        let v = self.graph.add_vertex();
        for &u in neighbors {
            self.graph.add_edge(v, u)?;
        }
        bag.insert(v);
        let step = RevealStep {
            vertex: v,
            bag: bag.clone(),
            neighbors_in_bag: neighbors.clone(),
        };
        step.check()?;
        let color = self.victim.choose(&step)?;
        let step_no = self.transcript.len();
        if color == 0 {
            return Err(Error::ContractViolation {
                step: step_no,
                vertex: v,
                detail: "victim returned color 0".into(),
            });
        }
        if let Some(&u) = neighbors
            .iter()
            .find(|&&u| self.coloring.get(u) == Some(color))
        {
            return Err(Error::ContractViolation {
                step: step_no,
                vertex: v,
                detail: format!("victim color {color} clashes with neighbor {u}"),
            });
        }
        self.npd.push_step(v, bag.clone())?;
        self.coloring.set(v, color)?;
        self.transcript.push(TranscriptStep {
            step: step_no,
            vertex: v,
            bag: bag.iter().copied().collect(),
            neighbors: neighbors.iter().copied().collect(),
            color,
        });
        Ok((v, color))
    }

    /// Colors currently held by the witness vertices.
    fn witness_colors(&self) -> BTreeSet<u32> {
        self.witness
            .iter()
            .filter_map(|&v| self.coloring.get(v))
            .collect()
    }

    /// Re-verifies the witness invariants at runtime: contained in the last
    /// bag, independent, and injectively colored.
    pub fn verify_witness(&self) -> Result<()> {
        let set: VertexSet = self.witness.iter().copied().collect();
        if set.len() != self.witness.len() {
            return Err(Error::Domain("witness has repeated vertices".into()));
        }
        if !set.is_subset(self.npd.last_bag()) {
            return Err(Error::Domain("witness not inside the last bag".into()));
        }
        if !self.graph.is_independent(&set)? {
            return Err(Error::Domain("witness is not independent".into()));
        }
        if self.witness_colors().len() != self.witness.len() {
            return Err(Error::Domain(
                "witness colors are not pairwise distinct".into(),
            ));
        }
        Ok(())
    }
}

/// One forcing round: starting from a state whose witness has size c0 <= c-1,
/// appends new vertices v'_1, v'_2, ... (v'_j adjacent to the first j-1
/// witness vertices) until the victim answers with a color outside the
/// witness colors, which properness forces by step j = c0+1. The returned
/// state's witness has size c0+1; every appended bag has size at most
/// 2*c0+1 <= 2c-1, keeping the width at most 2c-2; the graph stays
/// triangle-free.
pub fn extend_forcing(mut state: ForcingState, c: usize) -> Result<ForcingState> {
    let c0 = state.witness.len();
    if c == 0 || c0 > c - 1 {
        return Err(Error::Domain(format!(
            "forcing round needs |witness| = {c0} <= c-1 with c = {c}"
        )));
    }
    if state.npd.width() > 2 * c as isize - 2 {
        return Err(Error::Domain(format!(
            "width {} exceeds the forcing budget {}",
            state.npd.width(),
            2 * c as isize - 2
        )));
    }
    if !state.graph.is_triangle_free() {
        return Err(Error::Domain("forcing state contains a triangle".into()));
    }
    state.verify_witness()?;

    let mut appended: Vec<usize> = Vec::with_capacity(c0 + 1);
    for j in 1..=c0 + 1 {
        let neighbors: VertexSet = state.witness[..j - 1].iter().copied().collect();
        let mut bag: VertexSet = state.witness.iter().copied().collect();
        bag.extend(appended.iter().copied());
        let (v, color) = state.reveal(&neighbors, bag)?;
        debug_assert!(state.npd.last_bag().len() <= 2 * c0 + 1);
        appended.push(v);

        if !state.witness_colors().contains(&color) {
            // Deviation: the first j-1 appended vertices carry the first j-1
            // witness colors, the untouched witness tail carries the rest,
            // and v brings the fresh color.
            let mut next = appended[..j - 1].to_vec();
            next.extend_from_slice(&state.witness[j - 1..]);
            next.push(v);
            state.witness = next;
            state.verify_witness()?;
            debug_assert_eq!(state.witness.len(), c0 + 1);
            debug_assert!(state.graph.is_triangle_free());
            return Ok(state);
        }

        // The victim echoed a witness color; properness puts it at position
        // >= j. Move that witness vertex to position j so v'_{j+1}'s
        // neighborhood pins it down. Only the adversary's bookkeeping moves,
        // never the victim's colors.
        let m = state
            .witness
            .iter()
            .position(|&w| state.coloring.get(w) == Some(color))
            .expect("color is in the witness color set");
        debug_assert!(m >= j - 1, "reveal() rejects neighbor-color clashes");
        state.witness.swap(j - 1, m);
    }
    Err(Error::ContractViolation {
        step: state.transcript.len(),
        vertex: usize::MAX,
        detail: "victim repeated a witness color while adjacent to the whole witness".into(),
    })
}

/// Iterates forcing rounds from the empty position until the witness reaches
/// size ceil((t+1)/2). The resulting graph is triangle-free with a nice path
/// decomposition of width at most t.
pub fn build_forced(t: usize, victim: Box<dyn OnlineAlgorithm>) -> Result<ForcingState> {
    let c = (t + 1).div_ceil(2);
    let mut state = ForcingState::fresh(victim);
    while state.witness.len() < c {
        state = extend_forcing(state, c)?;
    }
    if state.npd.width() > t as isize {
        return Err(Error::Domain(format!(
            "forced decomposition has width {} > t = {t}",
            state.npd.width()
        )));
    }
    Ok(state)
}

/// Presents every step of an inner construction with the join set added to
/// the bag and to the new vertex's neighborhood, over shifted vertex ids.
/// This is the wrapped victim of the recursive construction: it holds the
/// victim state already fed the outer history.
struct JoinedVictim {
    inner: Box<dyn OnlineAlgorithm>,
    join: VertexSet,
    offset: usize,
}

impl JoinedVictim {
    fn translate(&self, step: &RevealStep) -> RevealStep {
        let mut bag: VertexSet = step.bag.iter().map(|&u| u + self.offset).collect();
        bag.extend(self.join.iter().copied());
        let mut neighbors: VertexSet = step
            .neighbors_in_bag
            .iter()
            .map(|&u| u + self.offset)
            .collect();
        neighbors.extend(self.join.iter().copied());
        RevealStep {
            vertex: step.vertex + self.offset,
            bag,
            neighbors_in_bag: neighbors,
        }
    }
}

impl OnlineAlgorithm for JoinedVictim {
    fn choose(&mut self, step: &RevealStep) -> Result<u32> {
        self.inner.choose(&self.translate(step))
    }

    fn fork(&self) -> Box<dyn OnlineAlgorithm> {
        Box::new(JoinedVictim {
            inner: self.inner.fork(),
            join: self.join.clone(),
            offset: self.offset,
        })
    }

    fn name(&self) -> String {
        format!("joined({})", self.inner.name())
    }
}

/// A finished adversary game: the constructed instance, the victim's
/// coloring and full reveal/response transcript, and the guarantee it was
/// checked against.
#[derive(Debug, Clone)]
pub struct AdversaryRun {
    pub graph: Graph,
    pub npd: NicePathDecomposition,
    pub coloring: Coloring,
    pub transcript: Vec<TranscriptStep>,
    /// Distinct colors the victim spent.
    pub colors_used: usize,
    /// The guaranteed lower bound g(t, k).
    pub bound: usize,
    /// Top-level forced witness joined to the recursive part (empty in the
    /// base case).
    pub join_witness: Vec<usize>,
    /// Global ids of the recursive part (empty in the base case).
    pub inner_vertices: VertexSet,
}

/// Builds a K_k-free graph of width at most t on which the victim is forced
/// to use at least g(t,k) colors: a forced triangle-free graph whose witness
/// is completely joined to a recursively constructed K_{k-1}-free instance
/// played against the join-wrapped victim. All guarantees (clique-freeness,
/// decomposition validity and width, properness, color-set disjointness
/// across the join, and the color count) are verified before returning.
pub fn build_kfree_adversary(
    t: usize,
    k: usize,
    victim: Box<dyn OnlineAlgorithm>,
) -> Result<AdversaryRun> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be >= 2, got {k}")));
    }
    let run = build_rec(t, k, victim)?;

    run.npd.validate_for(&run.graph)?;
    if run.npd.covered_vertices().len() != run.graph.n() {
        return Err(Error::Domain(
            "adversary decomposition does not cover the whole graph".into(),
        ));
    }
    if run.npd.width() > t as isize {
        return Err(Error::Domain(format!(
            "adversary decomposition has width {} > t = {t}",
            run.npd.width()
        )));
    }
    if !run.graph.is_clique_free(k)? {
        return Err(Error::Domain(format!("adversary graph contains a K_{k}")));
    }
    if !run.graph.is_proper(&run.coloring)? {
        return Err(Error::Domain("victim coloring is not proper".into()));
    }
    let join_colors: BTreeSet<u32> = run
        .join_witness
        .iter()
        .filter_map(|&v| run.coloring.get(v))
        .collect();
    let inner_colors: BTreeSet<u32> = run
        .inner_vertices
        .iter()
        .filter_map(|&v| run.coloring.get(v))
        .collect();
    if join_colors.intersection(&inner_colors).next().is_some() {
        return Err(Error::Domain(
            "join and inner color sets overlap despite the complete join".into(),
        ));
    }
    if run.colors_used < run.bound {
        return Err(Error::Domain(format!(
            "victim used {} colors, below the guaranteed g({t},{k}) = {}",
            run.colors_used, run.bound
        )));
    }
    Ok(run)
}

fn build_rec(t: usize, k: usize, victim: Box<dyn OnlineAlgorithm>) -> Result<AdversaryRun> {
    if k == 2 || t == 0 {
        let mut state = ForcingState::fresh(victim);
        state.reveal(&VertexSet::new(), VertexSet::new())?;
        return Ok(AdversaryRun {
            colors_used: state.coloring.colors_used(),
            bound: 1,
            graph: state.graph,
            npd: state.npd,
            coloring: state.coloring,
            transcript: state.transcript,
            join_witness: Vec::new(),
            inner_vertices: VertexSet::new(),
        });
    }

    let c1 = (t + 1).div_ceil(2);
    let t2 = (t - 1) / 2;
    let forced = build_forced(t, victim)?;
    debug_assert_eq!(forced.witness.len(), c1);
    let ForcingState {
        graph: mut merged,
        mut npd,
        mut coloring,
        witness,
        victim,
        mut transcript,
    } = forced;

    let join: VertexSet = witness.iter().copied().collect();
    let offset = merged.n();
    let wrapped = JoinedVictim {
        inner: victim,
        join: join.clone(),
        offset,
    };
    let sub = build_rec(t2, k - 1, Box::new(wrapped))?;

    for _ in 0..sub.graph.n() {
        merged.add_vertex();
    }
    for (a, b) in sub.graph.edges() {
        merged.add_edge(a + offset, b + offset)?;
    }
    for &i in &join {
        for u in 0..sub.graph.n() {
            merged.add_edge(i, u + offset)?;
        }
    }

    for (v, bag) in sub.npd.steps() {
        let mut shifted: VertexSet = bag.iter().map(|&u| u + offset).collect();
        shifted.extend(join.iter().copied());
        npd.push_step(v + offset, shifted)?;
    }
    for (v, c) in sub.coloring.iter() {
        coloring.set(v + offset, c)?;
    }
    for ts in &sub.transcript {
        let mut bag: BTreeSet<usize> = ts.bag.iter().map(|&u| u + offset).collect();
        bag.extend(join.iter().copied());
        let mut neighbors: BTreeSet<usize> = ts.neighbors.iter().map(|&u| u + offset).collect();
        neighbors.extend(join.iter().copied());
        transcript.push(TranscriptStep {
            step: transcript.len(),
            vertex: ts.vertex + offset,
            bag: bag.into_iter().collect(),
            neighbors: neighbors.into_iter().collect(),
            color: ts.color,
        });
    }

    Ok(AdversaryRun {
        colors_used: coloring.colors_used(),
        bound: g(t, k)?,
        graph: merged,
        npd,
        coloring,
        transcript,
        join_witness: witness,
        inner_vertices: (offset..offset + sub.graph.n()).collect(),
    })
}
