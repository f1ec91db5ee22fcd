//! Experiment orchestration: seeded instance batches reproducing the upper
//! bound, adversary grids reproducing the lower bound, and machine-readable
//! reports (JSON and plot-ready CSV).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adversary::{build_kfree_adversary, g};
use crate::decomposition::validate;
use crate::error::{Error, Result};
use crate::gen::gen_random_instance;
use crate::offline::color_via_tree_decomposition;
use crate::online::{palette_for_width, BoundedPalette};
use crate::par::map_collect;
use crate::victims::{make_victim, VICTIM_NAMES};

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct SuiteConfig {
    #[serde(default)]
    pub upper: Option<UpperConfig>,
    #[serde(default)]
    pub adversary: Option<AdversaryConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UpperConfig {
    pub t_values: Vec<usize>,
    #[serde(default = "default_instances")]
    pub instances_per_t: usize,
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    /// Fixed edge density; when absent each instance draws its own.
    #[serde(default)]
    pub density: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

fn default_instances() -> usize {
    100
}

fn default_max_n() -> usize {
    14
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdversaryConfig {
    pub t_values: Vec<usize>,
    pub k_values: Vec<usize>,
    #[serde(default = "default_victims")]
    pub victims: Vec<String>,
    #[serde(default)]
    pub seed: u64,
}

fn default_victims() -> Vec<String> {
    VICTIM_NAMES.iter().map(|s| s.to_string()).collect()
}

impl SuiteConfig {
    /// A modest full matrix exercising both directions; finishes in seconds.
    pub fn default_matrix() -> Self {
        SuiteConfig {
            upper: Some(UpperConfig {
                t_values: (1..=5).collect(),
                instances_per_t: 100,
                max_n: 14,
                density: None,
                seed: 1,
            }),
            adversary: Some(AdversaryConfig {
                t_values: (0..=6).collect(),
                k_values: vec![3, 4],
                victims: default_victims(),
                seed: 1,
            }),
        }
    }
}

/// One generated upper-bound instance, fully determined by its fields.
#[derive(Debug, Clone, Serialize)]
pub struct UpperSpec {
    pub t: usize,
    pub n: usize,
    pub density: f64,
    pub seed: u64,
}

pub fn upper_specs(cfg: &UpperConfig) -> Vec<UpperSpec> {
    let mut out = Vec::new();
    for &t in &cfg.t_values {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((t as u64) << 32));
        for _ in 0..cfg.instances_per_t {
            let lo = (t + 2).min(cfg.max_n);
            let hi = cfg.max_n.max(lo);
            let n = rng.random_range(lo..=hi);
            let density = cfg.density.unwrap_or_else(|| rng.random_range(0.1..0.9));
            let seed = rng.random::<u64>();
            out.push(UpperSpec {
                t,
                n,
                density,
                seed,
            });
        }
    }
    out
}

/// One adversary game, fully determined by its fields.
#[derive(Debug, Clone, Serialize)]
pub struct AdversaryCell {
    pub t: usize,
    pub k: usize,
    pub victim: String,
    pub seed: u64,
}

pub fn adversary_cells(cfg: &AdversaryConfig) -> Vec<AdversaryCell> {
    let mut out = Vec::new();
    for &t in &cfg.t_values {
        for &k in &cfg.k_values {
            for victim in &cfg.victims {
                out.push(AdversaryCell {
                    t,
                    k,
                    victim: victim.clone(),
                    seed: cfg.seed,
                });
            }
        }
    }
    out
}

/// Flat per-run record; every row carries all verification flags.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceRecord {
    pub kind: String,
    pub t: usize,
    pub k: Option<usize>,
    pub victim: String,
    pub seed: u64,
    pub n: usize,
    pub width: i64,
    pub colors_used: usize,
    pub bound: usize,
    pub proper: bool,
    pub clique_free: bool,
    pub decomp_valid: bool,
    pub pass: bool,
    pub note: String,
}

/// Generates one instance, colors it offline through the strict
/// bounded-palette algorithm, and verifies every guarantee.
pub fn run_upper_instance(spec: &UpperSpec) -> InstanceRecord {
    let bound = palette_for_width(spec.t) as usize;
    let base = InstanceRecord {
        kind: "upper".into(),
        t: spec.t,
        k: None,
        victim: "bounded-palette".into(),
        seed: spec.seed,
        n: 0,
        width: -1,
        colors_used: 0,
        bound,
        proper: false,
        clique_free: false,
        decomp_valid: false,
        pass: false,
        note: String::new(),
    };
    let inst = match gen_random_instance(spec.t, spec.n, spec.density, spec.seed) {
        Ok(inst) => inst,
        Err(e) => {
            return InstanceRecord {
                note: format!("generation failed: {e}"),
                ..base
            }
        }
    };
    let decomp_valid = validate(&inst.graph, &inst.td).is_valid();
    let clique_free = inst.graph.is_triangle_free();
    let t = spec.t;
    match color_via_tree_decomposition(|| Box::new(BoundedPalette::new(t)), &inst.graph, &inst.td) {
        Ok(out) => {
            let proper = inst.graph.is_proper(&out.coloring).unwrap_or(false);
            InstanceRecord {
                n: inst.graph.n(),
                width: inst.td.width() as i64,
                colors_used: out.colors_used,
                proper,
                clique_free,
                decomp_valid,
                pass: proper && clique_free && decomp_valid && out.colors_used <= bound,
                ..base
            }
        }
        Err(e) => InstanceRecord {
            n: inst.graph.n(),
            width: inst.td.width() as i64,
            clique_free,
            decomp_valid,
            note: format!("run failed: {e}"),
            ..base
        },
    }
}

/// Plays one adversary game and independently re-verifies all flags on the
/// produced instance.
pub fn run_adversary_cell(cell: &AdversaryCell) -> InstanceRecord {
    let bound = g(cell.t, cell.k).unwrap_or(0);
    let base = InstanceRecord {
        kind: "adversary".into(),
        t: cell.t,
        k: Some(cell.k),
        victim: cell.victim.clone(),
        seed: cell.seed,
        n: 0,
        width: -1,
        colors_used: 0,
        bound,
        proper: false,
        clique_free: false,
        decomp_valid: false,
        pass: false,
        note: String::new(),
    };
    let victim = match make_victim(&cell.victim, cell.t, cell.seed) {
        Ok(v) => v,
        Err(e) => {
            return InstanceRecord {
                note: format!("victim construction failed: {e}"),
                ..base
            }
        }
    };
    match build_kfree_adversary(cell.t, cell.k, victim) {
        Ok(run) => {
            let proper = run.graph.is_proper(&run.coloring).unwrap_or(false);
            let clique_free = run.graph.is_clique_free(cell.k).unwrap_or(false);
            let decomp_valid = run.npd.validate_for(&run.graph).is_ok()
                && run.npd.covered_vertices().len() == run.graph.n()
                && run.npd.width() <= cell.t as isize;
            // determinism audit: a fresh victim replaying the transcript
            // must reproduce every color
            let mut replay = make_victim(&cell.victim, cell.t, cell.seed).expect("known victim");
            let deterministic = run.transcript.iter().all(|ts| {
                replay
                    .choose(&ts.to_reveal())
                    .is_ok_and(|color| color == ts.color)
            });
            InstanceRecord {
                n: run.graph.n(),
                width: run.npd.width() as i64,
                colors_used: run.colors_used,
                proper,
                clique_free,
                decomp_valid,
                pass: proper
                    && clique_free
                    && decomp_valid
                    && deterministic
                    && run.colors_used >= bound,
                note: if deterministic {
                    String::new()
                } else {
                    "transcript replay diverged".into()
                },
                ..base
            }
        }
        Err(e) => InstanceRecord {
            note: format!("adversary run failed: {e}"),
            ..base
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: SuiteConfig,
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Runs the configured matrix. Instances are independent and run through the
/// data-parallel executor; record order is the spec order regardless of mode.
pub fn run_suite(cfg: &SuiteConfig) -> ExperimentReport {
    let mut records = Vec::new();
    if let Some(upper) = &cfg.upper {
        let specs = upper_specs(upper);
        records.extend(map_collect(&specs, run_upper_instance));
    }
    if let Some(adversary) = &cfg.adversary {
        let cells = adversary_cells(adversary);
        records.extend(map_collect(&cells, run_adversary_cell));
    }
    let passed = records.iter().filter(|r| r.pass).count();
    ExperimentReport {
        config: cfg.clone(),
        summary: Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        },
        records,
    }
}

pub fn report_to_json(report: &ExperimentReport) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Domain(format!("json: {e}")))
}

/// One CSV row per record, suitable for plotting colors-used against the
/// bound curves.
pub fn report_to_csv(report: &ExperimentReport) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in &report.records {
        writer
            .serialize(record)
            .map_err(|e| Error::Domain(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Domain(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Domain(format!("csv: {e}")))
}
