//! The online-coloring contract and the bounded-palette coloring rule for
//! triangle-free graphs revealed along a nice path decomposition, together
//! with the no-rainbow-independent-set machinery it rests on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, VertexSet};
use crate::oracle::local_adjacency;

/// Hard ceiling on vertex counts for the rainbow/forbidden enumerations,
/// which scan every subset of the input.
const VALIDITY_ENUM_CAP: usize = 24;

/// One reveal: a new vertex, the bag after the step, and the already-revealed
/// neighbors of the vertex inside that bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealStep {
    pub vertex: usize,
    pub bag: VertexSet,
    pub neighbors_in_bag: VertexSet,
}

impl RevealStep {
    pub fn check(&self) -> Result<()> {
        if !self.bag.contains(&self.vertex) {
            return Err(Error::Domain(format!(
                "revealed vertex {} not in its own bag",
                self.vertex
            )));
        }
        for &u in &self.neighbors_in_bag {
            if u == self.vertex || !self.bag.contains(&u) {
                return Err(Error::Domain(format!(
                    "neighbor {u} is not a bag member distinct from the revealed vertex"
                )));
            }
        }
        Ok(())
    }
}

/// One line of a reveal/response history, serializable for replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptStep {
    pub step: usize,
    pub vertex: usize,
    pub bag: Vec<usize>,
    pub neighbors: Vec<usize>,
    pub color: u32,
}

impl TranscriptStep {
    pub fn to_reveal(&self) -> RevealStep {
        RevealStep {
            vertex: self.vertex,
            bag: self.bag.iter().copied().collect(),
            neighbors_in_bag: self.neighbors.iter().copied().collect(),
        }
    }
}

/// A deterministic online coloring algorithm. Implementations keep their own
/// record of past reveals; two instances fed identical step sequences must
/// return identical colors, and `fork` must produce a fully independent copy.
pub trait OnlineAlgorithm: Send {
    /// Picks a positive color for the revealed vertex, never one held by a
    /// member of `neighbors_in_bag`, and advances internal state.
    fn choose(&mut self, step: &RevealStep) -> Result<u32>;

    /// An independent copy; diverging suffixes fed to the two copies never
    /// affect each other.
    fn fork(&self) -> Box<dyn OnlineAlgorithm>;

    fn name(&self) -> String;
}

fn color_bit(color: u32, palette: u32) -> Result<u64> {
    if color == 0 || color > palette {
        Err(Error::Domain(format!(
            "color {color} outside palette 1..={palette}"
        )))
    } else {
        Ok(1u64 << (color - 1))
    }
}

struct ValidityScan {
    verts: Vec<usize>,
    color_bits: Vec<u64>,
    local_adj: Vec<u64>,
    full: u64,
    palette: u32,
}

impl ValidityScan {
    fn new(f: &Graph, phi: &Coloring, c_prime: u32) -> Result<Self> {
        if c_prime == 0 {
            return Err(Error::Domain("palette size must be positive".into()));
        }
        if c_prime > 64 {
            return Err(Error::PaletteTooLarge(c_prime));
        }
        if f.n() > VALIDITY_ENUM_CAP {
            return Err(Error::CapExceeded {
                what: "rainbow-set enumeration input",
                size: f.n(),
                cap: VALIDITY_ENUM_CAP,
            });
        }
        let verts: Vec<usize> = f.vertices().collect();
        let mut color_bits = Vec::with_capacity(verts.len());
        for &v in &verts {
            let color = phi.get(v).ok_or(Error::UncoloredVertex(v))?;
            if color > c_prime {
                return Err(Error::ColorOutOfPalette {
                    vertex: v,
                    color,
                    palette: c_prime,
                });
            }
            color_bits.push(color_bit(color, c_prime)?);
        }
        let local_adj = local_adjacency(f, &verts);
        Ok(ValidityScan {
            full: if c_prime == 64 {
                u64::MAX
            } else {
                (1u64 << c_prime) - 1
            },
            verts,
            color_bits,
            local_adj,
            palette: c_prime,
        })
    }

    /// Visits every independent subset with its set of colors.
    fn scan(&self, mut visit: impl FnMut(u64, u64)) {
        let n = self.verts.len();
        'masks: for mask in 0..(1u64 << n) {
            let mut colors = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.local_adj[i] & mask != 0 {
                    continue 'masks;
                }
                colors |= self.color_bits[i];
            }
            visit(mask, colors);
        }
    }

    fn mask_to_set(&self, mask: u64) -> VertexSet {
        let mut set = VertexSet::new();
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            set.insert(self.verts[i]);
        }
        set
    }
}

/// True iff no independent set of `f` carries all `c_prime` palette colors.
/// `phi` must color every vertex of `f` with a color in `1..=c_prime`.
pub fn is_valid_coloring(f: &Graph, phi: &Coloring, c_prime: u32) -> Result<bool> {
    let scan = ValidityScan::new(f, phi, c_prime)?;
    let mut valid = true;
    scan.scan(|_, colors| {
        if colors == scan.full {
            valid = false;
        }
    });
    Ok(valid)
}

/// The forbidden colors of `(f, phi)`: colors `a` for which some independent
/// set carries exactly the palette minus `a`, each with one witness set.
#[derive(Debug, Clone)]
pub struct ForbiddenReport {
    pub palette: u32,
    pub forbidden: Vec<u32>,
    pub witnesses: BTreeMap<u32, VertexSet>,
}

pub fn forbidden_colors(f: &Graph, phi: &Coloring, c_prime: u32) -> Result<ForbiddenReport> {
    let scan = ValidityScan::new(f, phi, c_prime)?;
    let mut witness_masks: BTreeMap<u32, u64> = BTreeMap::new();
    scan.scan(|mask, colors| {
        let missing = scan.full & !colors;
        if missing.count_ones() == 1 {
            let a = missing.trailing_zeros() + 1;
            witness_masks.entry(a).or_insert(mask);
        }
    });
    Ok(ForbiddenReport {
        palette: scan.palette,
        forbidden: witness_masks.keys().copied().collect(),
        witnesses: witness_masks
            .into_iter()
            .map(|(a, mask)| (a, scan.mask_to_set(mask)))
            .collect(),
    })
}

/// Probe for the forbidden-count bound |forbidden| <= max(|V(f)| - c' + 2, 0).
/// When `phi` is not `f`-valid the bound claim is vacuous and flagged.
#[derive(Debug, Clone, Copy)]
pub struct BoundCheck {
    pub holds: bool,
    pub input_valid: bool,
    pub forbidden_count: usize,
    pub bound: usize,
}

pub fn count_bound_check(f: &Graph, phi: &Coloring, c_prime: u32) -> Result<BoundCheck> {
    let input_valid = is_valid_coloring(f, phi, c_prime)?;
    if !input_valid {
        return Ok(BoundCheck {
            holds: true,
            input_valid: false,
            forbidden_count: 0,
            bound: 0,
        });
    }
    let report = forbidden_colors(f, phi, c_prime)?;
    let bound = (f.n() as isize - c_prime as isize + 2).max(0) as usize;
    Ok(BoundCheck {
        holds: report.forbidden.len() <= bound,
        input_valid: true,
        forbidden_count: report.forbidden.len(),
        bound,
    })
}

/// Palette size used by the bounded-palette rule at width parameter `t`.
pub fn palette_for_width(t: usize) -> u32 {
    ((t + 3).div_ceil(2)) as u32
}

/// Outcome of one application of the bounded-palette coloring rule.
#[derive(Debug, Clone)]
pub struct PaletteChoice {
    pub color: u32,
    /// All qualifying colors, ascending (not on N and not forbidden).
    pub qualifying: Vec<u32>,
    /// The counting argument's lower bound on `qualifying.len()`, clamped
    /// at 1.
    pub guaranteed: usize,
}

/// The per-step counting bound c' - min(|N|, c'-1) - max(t - |N| - c' + 2, 0),
/// clamped at a minimum of 1.
pub fn availability_floor(t: usize, n_size: usize, c_prime: u32) -> usize {
    let c = c_prime as isize;
    let n = n_size as isize;
    let t = t as isize;
    let value = c - n.min(c - 1) - (t - n - c + 2).max(0);
    value.max(1) as usize
}

/// Applies the coloring rule for one reveal step against host adjacency `g`:
/// picks the smallest color in `1..=palette_for_width(t)` that neither
/// appears on the revealed neighbors nor is forbidden for the rest of the
/// bag. Fails if the bag is oversized or no color qualifies, which on
/// triangle-free width-t input cannot happen.
pub fn palette_choose(g: &Graph, step: &RevealStep, phi: &Coloring, t: usize) -> Result<u32> {
    step.check()?;
    let choice = palette_choice(|u, v| g.has_edge(u, v), step, phi, t, &[])?;
    Ok(choice.color)
}

/// Rule core shared by `palette_choose` and the stateful algorithm; `history`
/// is only attached to failure reports.
fn palette_choice(
    has_edge: impl Fn(usize, usize) -> bool,
    step: &RevealStep,
    phi: &Coloring,
    t: usize,
    history: &[TranscriptStep],
) -> Result<PaletteChoice> {
    let c_prime = palette_for_width(t);
    if step.bag.len() > t + 1 {
        return Err(Error::Domain(format!(
            "bag of size {} exceeds t+1 = {}",
            step.bag.len(),
            t + 1
        )));
    }

    let rest: Vec<usize> = step
        .bag
        .iter()
        .copied()
        .filter(|u| *u != step.vertex && !step.neighbors_in_bag.contains(u))
        .collect();
    let mut f = Graph::new(rest.len());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if has_edge(rest[i], rest[j]) {
                f.add_edge(i, j)?;
            }
        }
    }
    let f_phi: Coloring = rest
        .iter()
        .enumerate()
        .map(|(i, &v)| phi.get(v).map(|c| (i, c)).ok_or(Error::UncoloredVertex(v)))
        .collect::<Result<_>>()?;

    let forbidden = forbidden_colors(&f, &f_phi, c_prime)?;
    let on_neighbors = phi.colors_on(&step.neighbors_in_bag);
    let qualifying: Vec<u32> = (1..=c_prime)
        .filter(|c| !on_neighbors.contains(c) && !forbidden.forbidden.contains(c))
        .collect();

    let guaranteed = availability_floor(t, step.neighbors_in_bag.len(), c_prime);
    let Some(&color) = qualifying.first() else {
        return Err(Error::NoQualifyingColor {
            step: history.len(),
            vertex: step.vertex,
            palette: c_prime,
            t,
            history: Box::new(history.to_vec()),
        });
    };
    if qualifying.len() < guaranteed {
        return Err(Error::AvailabilityBound {
            step: history.len(),
            vertex: step.vertex,
            count: qualifying.len(),
            bound: guaranteed,
            history: Box::new(history.to_vec()),
        });
    }
    Ok(PaletteChoice {
        color,
        qualifying,
        guaranteed,
    })
}

/// The bounded-palette online algorithm. In strict mode it hard-fails when
/// its hypotheses break (oversized bag or no qualifying color), attaching the
/// reveal history. With `with_fallback` it instead degrades to first-fit on
/// such steps, staying total so it can serve as an adversary victim on inputs
/// with triangles.
#[derive(Debug, Clone)]
pub struct BoundedPalette {
    t: usize,
    adj: BTreeMap<usize, VertexSet>,
    phi: Coloring,
    history: Vec<TranscriptStep>,
    strict: bool,
    fallbacks: usize,
    hypothesis_ok: bool,
}

impl BoundedPalette {
    pub fn new(t: usize) -> Self {
        BoundedPalette {
            t,
            adj: BTreeMap::new(),
            phi: Coloring::new(),
            history: Vec::new(),
            strict: true,
            fallbacks: 0,
            hypothesis_ok: true,
        }
    }

    pub fn with_fallback(t: usize) -> Self {
        BoundedPalette {
            strict: false,
            ..BoundedPalette::new(t)
        }
    }

    pub fn palette(&self) -> u32 {
        palette_for_width(self.t)
    }

    /// Number of steps served by the first-fit fallback (0 on any run whose
    /// input satisfies the triangle-free width-t hypothesis).
    pub fn fallbacks(&self) -> usize {
        self.fallbacks
    }

    fn record(&mut self, step: &RevealStep, color: u32) {
        self.adj.insert(step.vertex, step.neighbors_in_bag.clone());
        for &u in &step.neighbors_in_bag {
            self.adj.entry(u).or_default().insert(step.vertex);
        }
        self.history.push(TranscriptStep {
            step: self.history.len(),
            vertex: step.vertex,
            bag: step.bag.iter().copied().collect(),
            neighbors: step.neighbors_in_bag.iter().copied().collect(),
            color,
        });
    }

    fn neighbors_independent(&self, step: &RevealStep) -> bool {
        let nb: Vec<usize> = step.neighbors_in_bag.iter().copied().collect();
        nb.iter().enumerate().all(|(i, &u)| {
            nb[i + 1..]
                .iter()
                .all(|&w| !self.adj.get(&u).is_some_and(|s| s.contains(&w)))
        })
    }

    /// The invariant behind the counting bound: after each step the bag's
    /// coloring stays valid for the revealed subgraph on the bag.
    fn audit_bag_validity(&self, step: &RevealStep) -> Result<()> {
        let verts: Vec<usize> = step.bag.iter().copied().collect();
        let mut f = Graph::new(verts.len());
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if self
                    .adj
                    .get(&verts[i])
                    .is_some_and(|s| s.contains(&verts[j]))
                {
                    f.add_edge(i, j)?;
                }
            }
        }
        let f_phi: Coloring = verts
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| self.phi.get(v).map(|c| (i, c)))
            .collect();
        if f_phi.len() != verts.len() {
            return Ok(()); // partially colored bags cannot be audited
        }
        if !is_valid_coloring(&f, &f_phi, self.palette())? {
            return Err(Error::ContractViolation {
                step: self.history.len(),
                vertex: step.vertex,
                detail: "bag-validity invariant broken after step".into(),
            });
        }
        Ok(())
    }
}

impl OnlineAlgorithm for BoundedPalette {
    fn choose(&mut self, step: &RevealStep) -> Result<u32> {
        step.check()?;
        for &u in &step.neighbors_in_bag {
            if self.phi.get(u).is_none() {
                return Err(Error::ContractViolation {
                    step: self.history.len(),
                    vertex: step.vertex,
                    detail: format!("neighbor {u} was never revealed"),
                });
            }
        }

        let oversized = step.bag.len() > self.t + 1;
        let independent = self.neighbors_independent(step);
        if oversized || !independent {
            self.hypothesis_ok = false;
        }

        let color = if self.strict || (!oversized && self.hypothesis_ok) {
            let adj = &self.adj;
            let result = palette_choice(
                |u, v| adj.get(&u).is_some_and(|s| s.contains(&v)),
                step,
                &self.phi,
                self.t,
                &self.history,
            );
            match result {
                Ok(choice) => choice.color,
                Err(e) if self.strict => return Err(e),
                Err(_) => {
                    self.fallbacks += 1;
                    first_fit_choose(step, &self.phi)
                }
            }
        } else {
            self.fallbacks += 1;
            first_fit_choose(step, &self.phi)
        };

        self.phi.set(step.vertex, color)?;
        self.record(step, color);
        if self.hypothesis_ok && self.fallbacks == 0 {
            self.audit_bag_validity(step)?;
        }
        Ok(color)
    }

    fn fork(&self) -> Box<dyn OnlineAlgorithm> {
        Box::new(self.clone())
    }

    fn name(&self) -> String {
        format!("bounded-palette(t={})", self.t)
    }
}

/// Smallest positive color absent from the revealed neighbors.
pub fn first_fit_choose(step: &RevealStep, phi: &Coloring) -> u32 {
    let taken = phi.colors_on(&step.neighbors_in_bag);
    let mut c = 1;
    while taken.contains(&c) {
        c += 1;
    }
    c
}

/// Greedy first-fit baseline.
#[derive(Debug, Clone, Default)]
pub struct FirstFit {
    phi: Coloring,
}

impl FirstFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineAlgorithm for FirstFit {
    fn choose(&mut self, step: &RevealStep) -> Result<u32> {
        step.check()?;
        let color = first_fit_choose(step, &self.phi);
        self.phi.set(step.vertex, color)?;
        Ok(color)
    }

    fn fork(&self) -> Box<dyn OnlineAlgorithm> {
        Box::new(self.clone())
    }

    fn name(&self) -> String {
        "first-fit".into()
    }
}

/// Result of driving an algorithm along a nice path decomposition.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub coloring: Coloring,
    pub colors_used: usize,
    pub transcript: Vec<TranscriptStep>,
}

/// Feeds the reveal steps of `npd` to `alg` in order. The decomposition must
/// be valid for the subgraph of `g` induced on its covered vertices; the
/// returned coloring is proper there. A color clashing with a bag neighbor is
/// a contract violation naming the step.
pub fn run_online(
    alg: &mut dyn OnlineAlgorithm,
    g: &Graph,
    npd: &crate::decomposition::NicePathDecomposition,
) -> Result<RunOutcome> {
    npd.validate_for(g)?;
    let mut coloring = Coloring::new();
    let mut transcript = Vec::with_capacity(npd.num_steps());
    for (i, (v, bag)) in npd.steps().enumerate() {
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
        let color = alg.choose(&step)?;
        if color == 0 {
            return Err(Error::ContractViolation {
                step: i,
                vertex: v,
                detail: "algorithm returned color 0".into(),
            });
        }
        if let Some(&u) = step
            .neighbors_in_bag
            .iter()
            .find(|&&u| coloring.get(u) == Some(color))
        {
            return Err(Error::ContractViolation {
                step: i,
                vertex: v,
                detail: format!("color {color} clashes with bag neighbor {u}"),
            });
        }
        coloring.set(v, color)?;
        transcript.push(TranscriptStep {
            step: i,
            vertex: v,
            bag: step.bag.iter().copied().collect(),
            neighbors: step.neighbors_in_bag.iter().copied().collect(),
            color,
        });
    }
    debug_assert!(g.is_proper_on_colored(&coloring));
    Ok(RunOutcome {
        colors_used: coloring.colors_used(),
        coloring,
        transcript,
    })
}
