use std::fs;
use std::path::{Path, PathBuf};

use twcolor::adversary::{build_kfree_adversary, g};
use twcolor::decomposition::{validate, TreeDecomposition};
use twcolor::experiments::{report_to_csv, report_to_json, run_suite, SuiteConfig};
use twcolor::gen::gen_random_instance;
use twcolor::graph::Graph;
use twcolor::offline::color_via_tree_decomposition;
use twcolor::online::palette_for_width;
use twcolor::oracle::{chromatic_number_exact, treewidth_exact, Caps};
use twcolor::pace::{read_gr, read_td, write_gr, write_td};
use twcolor::victims::make_victim;

/// Failures sorted by their exit code: input problems exit 2, broken
/// invariants exit 1.
#[derive(Debug)]
pub enum CmdError {
    Input(String),
    Invariant(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Input(_) => 2,
            CmdError::Invariant(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Input(m) | CmdError::Invariant(m) => m,
        }
    }
}

pub type CmdResult<T> = Result<T, CmdError>;

fn input<T>(msg: impl Into<String>) -> CmdResult<T> {
    Err(CmdError::Input(msg.into()))
}

fn read_file(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CmdResult<()> {
    fs::write(path, contents)
        .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Parses the TWCOLOR_CAPS override, e.g. "subset=24,chi=16,tw=14". Missing
/// keys keep their defaults.
pub fn parse_caps(spec: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((key, value)) = part.split_once('=') else {
            return Err(format!("expected key=value, got '{part}'"));
        };
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("'{value}' is not a number"))?;
        match key.trim() {
            "subset" => caps.subset_enum = value,
            "chi" => caps.chromatic = value,
            "tw" => caps.treewidth = value,
            other => return Err(format!("unknown cap '{other}' (subset, chi, tw)")),
        }
    }
    Ok(caps)
}

pub fn caps_from_env() -> CmdResult<Caps> {
    match std::env::var("TWCOLOR_CAPS") {
        Err(_) => Ok(Caps::default()),
        Ok(s) => parse_caps(&s).map_err(|e| CmdError::Input(format!("TWCOLOR_CAPS: {e}"))),
    }
}

fn load_graph(path: &Path) -> CmdResult<Graph> {
    let file = read_gr(&read_file(path)?)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    for w in &file.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(file.graph)
}

fn load_td(path: &Path) -> CmdResult<TreeDecomposition> {
    let file = read_td(&read_file(path)?)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    for w in &file.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(file.td)
}

#[derive(Debug)]
pub struct ColorReport {
    pub colors: usize,
    pub bound: usize,
    pub proper: bool,
    pub bound_checked: bool,
}

pub fn cmd_color(
    graph_path: &Path,
    td_path: &Path,
    t_override: Option<usize>,
    algorithm: &str,
    seed: u64,
) -> CmdResult<ColorReport> {
    let graph = load_graph(graph_path)?;
    let td = load_td(td_path)?;

    let report = validate(&graph, &td);
    if !report.is_valid() {
        return input(format!("invalid decomposition: {report}"));
    }
    let t = t_override.unwrap_or(td.width().max(0) as usize);
    let bound = palette_for_width(t) as usize;
    let triangle_free = graph.is_triangle_free();
    if !triangle_free {
        eprintln!("warning: graph is not triangle-free; palette bound check skipped");
    }

    // validate the victim name before running
    make_victim(algorithm, t, seed).map_err(|e| CmdError::Input(e.to_string()))?;
    let factory = || make_victim(algorithm, t, seed).expect("name validated above");
    let outcome = color_via_tree_decomposition(factory, &graph, &td)
        .map_err(|e| CmdError::Invariant(e.to_string()))?;
    let proper = graph
        .is_proper(&outcome.coloring)
        .map_err(|e| CmdError::Invariant(e.to_string()))?;

    println!(
        "colors={} bound={} proper={}",
        outcome.colors_used,
        bound,
        if proper { "yes" } else { "no" }
    );
    if !proper {
        return Err(CmdError::Invariant("coloring is not proper".into()));
    }
    if triangle_free && outcome.colors_used > bound {
        return Err(CmdError::Invariant(format!(
            "used {} colors, above the bound {bound}",
            outcome.colors_used
        )));
    }
    Ok(ColorReport {
        colors: outcome.colors_used,
        bound,
        proper,
        bound_checked: triangle_free,
    })
}

#[derive(Debug)]
pub struct AdversaryReport {
    pub forced: usize,
    pub bound: usize,
    pub n: usize,
    pub width: isize,
    pub files: Vec<PathBuf>,
}

pub fn cmd_adversary(
    t: usize,
    k: usize,
    victim: &str,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult<AdversaryReport> {
    let bound = g(t, k).map_err(|e| CmdError::Input(e.to_string()))?;
    let boxed = make_victim(victim, t, seed).map_err(|e| CmdError::Input(e.to_string()))?;
    let run = build_kfree_adversary(t, k, boxed).map_err(|e| CmdError::Invariant(e.to_string()))?;

    // the constructor verified everything; re-derive the flags for the report
    let proper = run.graph.is_proper(&run.coloring).unwrap_or(false);
    let clique_free = run.graph.is_clique_free(k).unwrap_or(false);
    let decomp_valid = run.npd.validate_for(&run.graph).is_ok()
        && run.npd.covered_vertices().len() == run.graph.n()
        && run.npd.width() <= t as isize;

    let mut files = Vec::new();
    if let Some(prefix) = out {
        let gr_path = prefix.with_extension("gr");
        let td_path = prefix.with_extension("td");
        let tr_path = prefix.with_extension("transcript.json");
        write_file(&gr_path, &write_gr(&run.graph))?;
        write_file(
            &td_path,
            &write_td(&run.npd.as_path().as_tree(), run.graph.n()),
        )?;
        let json = serde_json::to_string_pretty(&run.transcript)
            .map_err(|e| CmdError::Invariant(format!("transcript serialization: {e}")))?;
        write_file(&tr_path, &json)?;
        files.extend([gr_path, td_path, tr_path]);
    }

    println!(
        "forced={} g({t},{k})={} n={} width={} k_free={} proper={} decomposition={}",
        run.colors_used,
        bound,
        run.graph.n(),
        run.npd.width(),
        yes_no(clique_free),
        yes_no(proper),
        if decomp_valid { "valid" } else { "INVALID" },
    );
    for f in &files {
        println!("wrote {}", f.display());
    }

    if run.colors_used < bound || !proper || !clique_free || !decomp_valid {
        return Err(CmdError::Invariant(format!(
            "adversary guarantees not met: forced={} bound={bound}",
            run.colors_used
        )));
    }
    Ok(AdversaryReport {
        forced: run.colors_used,
        bound,
        n: run.graph.n(),
        width: run.npd.width(),
        files,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug)]
pub struct VerifyReport {
    pub n: usize,
    pub m: usize,
    pub triangle_free: bool,
    pub chromatic: Option<usize>,
    pub treewidth: Option<usize>,
    pub td_valid: Option<bool>,
}

pub fn cmd_verify(
    graph_path: &Path,
    td_path: Option<&Path>,
    caps: &Caps,
) -> CmdResult<VerifyReport> {
    let graph = load_graph(graph_path)?;
    let triangle_free = graph.is_triangle_free();
    println!("graph: n={} m={}", graph.n(), graph.m());
    println!("triangle-free: {}", yes_no(triangle_free));
    if graph.n() <= caps.subset_enum {
        // largest k with a K_k present; the graph is K_{k+1}-free
        let omega = (2..=graph.n())
            .take_while(|&k| !graph.is_clique_free(k).unwrap_or(true))
            .last()
            .unwrap_or(usize::from(graph.n() > 0));
        println!("clique number: {omega}");
    } else {
        println!("clique number: skipped (cap {})", caps.subset_enum);
    }

    let chromatic = match chromatic_number_exact(&graph, caps) {
        Ok(chi) => {
            println!("chromatic number: {chi}");
            Some(chi)
        }
        Err(twcolor::Error::CapExceeded { cap, .. }) => {
            println!("chromatic number: skipped (cap {cap})");
            None
        }
        Err(e) => return Err(CmdError::Invariant(e.to_string())),
    };
    let treewidth = match treewidth_exact(&graph, caps) {
        Ok((tw, _)) => {
            println!("tree-width: {tw}");
            Some(tw)
        }
        Err(twcolor::Error::CapExceeded { cap, .. }) => {
            println!("tree-width: skipped (cap {cap})");
            None
        }
        Err(e) => return Err(CmdError::Invariant(e.to_string())),
    };

    let mut td_valid = None;
    if let Some(td_path) = td_path {
        let td = load_td(td_path)?;
        let report = validate(&graph, &td);
        println!("decomposition: width={} {report}", td.width());
        td_valid = Some(report.is_valid());
    }

    let report = VerifyReport {
        n: graph.n(),
        m: graph.m(),
        triangle_free,
        chromatic,
        treewidth,
        td_valid,
    };
    if td_valid == Some(false) {
        return Err(CmdError::Invariant("decomposition is invalid".into()));
    }
    Ok(report)
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub total: usize,
    pub passed: usize,
    pub files: Vec<PathBuf>,
}

pub fn cmd_suite(
    config_path: Option<&Path>,
    out: Option<&Path>,
    format: &str,
) -> CmdResult<SuiteOutcome> {
    let config: SuiteConfig = match config_path {
        None => SuiteConfig::default_matrix(),
        Some(path) => serde_json::from_str(&read_file(path)?)
            .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?,
    };

    let report = run_suite(&config);
    let json = report_to_json(&report).map_err(|e| CmdError::Invariant(e.to_string()))?;
    let csv = report_to_csv(&report).map_err(|e| CmdError::Invariant(e.to_string()))?;

    let mut files = Vec::new();
    if let Some(prefix) = out {
        let json_path = prefix.with_extension("json");
        let csv_path = prefix.with_extension("csv");
        write_file(&json_path, &json)?;
        write_file(&csv_path, &csv)?;
        files.extend([json_path, csv_path]);
        for f in &files {
            eprintln!("wrote {}", f.display());
        }
    } else if format == "csv" {
        print!("{csv}");
    } else {
        println!("{json}");
    }
    eprintln!(
        "suite: {} records, {} passed, {} failed",
        report.summary.total, report.summary.passed, report.summary.failed
    );

    if !report.all_passed() {
        return Err(CmdError::Invariant(format!(
            "{} of {} records failed",
            report.summary.failed, report.summary.total
        )));
    }
    Ok(SuiteOutcome {
        total: report.summary.total,
        passed: report.summary.passed,
        files,
    })
}

pub fn cmd_gen(
    t: usize,
    n: usize,
    density: f64,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult<Vec<PathBuf>> {
    let inst =
        gen_random_instance(t, n, density, seed).map_err(|e| CmdError::Input(e.to_string()))?;
    let gr = write_gr(&inst.graph);
    let td = write_td(&inst.td, inst.graph.n());
    let mut files = Vec::new();
    match out {
        Some(prefix) => {
            let gr_path = prefix.with_extension("gr");
            let td_path = prefix.with_extension("td");
            write_file(&gr_path, &gr)?;
            write_file(&td_path, &td)?;
            println!("wrote {}", gr_path.display());
            println!("wrote {}", td_path.display());
            files.extend([gr_path, td_path]);
        }
        None => {
            print!("{gr}");
            print!("{td}");
        }
    }
    Ok(files)
}
