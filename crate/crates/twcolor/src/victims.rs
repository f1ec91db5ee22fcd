//! Additional deterministic victims for the adversary constructions, and a
//! registry mapping names to constructors. The forcing guarantees hold
//! against every online algorithm, so adding a victim only requires
//! implementing the contract.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Coloring;
use crate::online::{BoundedPalette, FirstFit, OnlineAlgorithm, RevealStep};

/// Prefers the color used least often so far among `1..=max_used+1`, breaking
/// ties toward the smaller color.
#[derive(Debug, Clone, Default)]
pub struct LeastUsedFit {
    phi: Coloring,
    max_used: u32,
}

impl LeastUsedFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineAlgorithm for LeastUsedFit {
    fn choose(&mut self, step: &RevealStep) -> Result<u32> {
        step.check()?;
        let taken = self.phi.colors_on(&step.neighbors_in_bag);
        let mut usage = vec![0usize; self.max_used as usize + 2];
        for (_, c) in self.phi.iter() {
            if (c as usize) < usage.len() {
                usage[c as usize] += 1;
            }
        }
        let color = (1..=self.max_used + 1)
            .filter(|c| !taken.contains(c))
            .min_by_key(|&c| (usage[c as usize], c))
            .expect("1..=max_used+1 always contains a free color");
        self.max_used = self.max_used.max(color);
        self.phi.set(step.vertex, color)?;
        Ok(color)
    }

    fn fork(&self) -> Box<dyn OnlineAlgorithm> {
        Box::new(self.clone())
    }

    fn name(&self) -> String {
        "least-used".into()
    }
}

/// First-fit over a seeded random permutation of the low colors, falling back
/// to ascending order above them. Deterministic given the seed.
#[derive(Debug, Clone)]
pub struct ShuffleFit {
    seed: u64,
    preference: Vec<u32>,
    phi: Coloring,
}

const SHUFFLE_RANGE: u32 = 64;

impl ShuffleFit {
    pub fn new(seed: u64) -> Self {
        let mut preference: Vec<u32> = (1..=SHUFFLE_RANGE).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        preference.shuffle(&mut rng);
        ShuffleFit {
            seed,
            preference,
            phi: Coloring::new(),
        }
    }
}

impl OnlineAlgorithm for ShuffleFit {
    fn choose(&mut self, step: &RevealStep) -> Result<u32> {
        step.check()?;
        let taken = self.phi.colors_on(&step.neighbors_in_bag);
        let color = self
            .preference
            .iter()
            .copied()
            .find(|c| !taken.contains(c))
            .unwrap_or_else(|| {
                let mut c = SHUFFLE_RANGE + 1;
                while taken.contains(&c) {
                    c += 1;
                }
                c
            });
        self.phi.set(step.vertex, color)?;
        Ok(color)
    }

    fn fork(&self) -> Box<dyn OnlineAlgorithm> {
        Box::new(self.clone())
    }

    fn name(&self) -> String {
        format!("shuffle(seed={})", self.seed)
    }
}

/// Names accepted by `make_victim`.
pub const VICTIM_NAMES: &[&str] = &["first-fit", "bounded-palette", "least-used", "shuffle"];

/// Instantiates a registered victim. `t` parameterizes the bounded-palette algorithm
/// (its palette); `seed` parameterizes the shuffled victim; both are ignored
/// by victims that do not need them. The bounded-palette victim is constructed in
/// fallback mode so it stays total on inputs outside its hypothesis class.
pub fn make_victim(name: &str, t: usize, seed: u64) -> Result<Box<dyn OnlineAlgorithm>> {
    match name {
        "first-fit" => Ok(Box::new(FirstFit::new())),
        "bounded-palette" => Ok(Box::new(BoundedPalette::with_fallback(t))),
        "least-used" => Ok(Box::new(LeastUsedFit::new())),
        "shuffle" => Ok(Box::new(ShuffleFit::new(seed))),
        other => Err(Error::Domain(format!(
            "unknown victim '{other}'; registered: {}",
            VICTIM_NAMES.join(", ")
        ))),
    }
}
