use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use addemu_core::emulator::ProvenanceCounts;
use addemu_core::verify::{density_ratios, size_scaling_probe, ProbeRow};
use addemu_core::{
    build_emulator, load_edge_list, load_weighted_edge_list, verify_emulator, Emulator,
    EmulatorConfig, GeneratorSpec, Graph, VerificationReport, VerifyOptions,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "addemu", version, about = "Build and certify additive graph emulators")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// er:<n>:<p>, grid:<w>:<h>, cycle:<n>, tree:<n> or geo:<n>:<radius>
        spec: GeneratorSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build an emulator and write it as a `u v w` edge list plus a JSON sidecar.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: PathBuf,
        /// Sidecar path (default: <out>.json).
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Include wall-clock timings in the sidecar.
        #[arg(long)]
        timings: bool,
    },
    /// Check an emulator against the graph with exact all-pairs distances.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Emulator edge list from `build`; rebuilt in process when omitted.
        #[arg(long)]
        emulator: Option<PathBuf>,
        /// Additive error bound (default: the sidecar's, i.e. 16 * r_hat).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = addemu_core::verify::DEFAULT_MAX_VERIFY_N)]
        max_n: usize,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Emulator size across graph sizes, as CSV plus JSON.
    Bench {
        /// Generator family; its size is replaced by each of --sizes.
        #[arg(long, default_value = "er:256:0.03125")]
        family: GeneratorSpec,
        #[arg(long, value_delimiter = ',', default_value = "256,512,1024")]
        sizes: Vec<usize>,
        #[command(flatten)]
        params: ParamArgs,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// JSON output path (default: <out> with a .json extension).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include build times.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Edge-list file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator spec, e.g. grid:32:32.
    #[arg(long = "gen")]
    generator: Option<GeneratorSpec>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 3)]
    levels: usize,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    #[arg(long, default_value_t = 3.0)]
    sample_const: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Error out when r_hat is below 4 * max r_i * log n instead of raising it.
    #[arg(long)]
    strict_r_hat: bool,
}

impl ParamArgs {
    fn config(&self) -> EmulatorConfig {
        EmulatorConfig {
            epsilon: self.epsilon,
            c: self.c,
            sample_const: self.sample_const,
            seed: self.seed,
            strict_r_hat: self.strict_r_hat,
            ..EmulatorConfig::default()
        }
    }
}

impl InputArgs {
    fn load(&self, seed: u64) -> Result<Graph> {
        if let Some(path) = &self.input {
            let text = read(path)?;
            return load_edge_list(&text).with_context(|| format!("parsing {}", path.display()));
        }
        let spec = self.generator.as_ref().expect("clap enforces one input");
        Ok(spec.generate(seed)?)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn with_extension_appended(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn build(g: &Graph, params: &ParamArgs) -> Result<Emulator> {
    build_emulator(g, params.levels, &params.config()).context("building emulator")
}

fn max_overlap(emu: &Emulator) -> Option<f64> {
    emu.components
        .iter()
        .filter(|c| c.clusters > 0)
        .map(|c| c.overlap_ratio)
        .reduce(f64::max)
}

fn cmd_verify(
    input: &InputArgs,
    params: &ParamArgs,
    emulator: Option<&Path>,
    bound: Option<u64>,
    report_path: Option<&Path>,
    max_n: usize,
    timings: bool,
) -> Result<bool> {
    let g = input.load(params.seed)?;
    let (h, default_bound, counts, overlap) = match emulator {
        Some(path) => {
            let h = load_weighted_edge_list(&read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            let sidecar_path = with_extension_appended(path, ".json");
            let sidecar: Option<serde_json::Value> = match fs::read_to_string(&sidecar_path) {
                Ok(text) => Some(
                    serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", sidecar_path.display()))?,
                ),
                Err(_) => None,
            };
            let sidecar_bound = sidecar.as_ref().and_then(|s| s["error_bound"].as_u64());
            let counts: Option<ProvenanceCounts> = sidecar
                .as_ref()
                .and_then(|s| serde_json::from_value(s["provenance"].clone()).ok());
            let overlap = sidecar.as_ref().and_then(|s| {
                s["components"]
                    .as_array()?
                    .iter()
                    .filter(|c| c["clusters"].as_u64().unwrap_or(0) > 0)
                    .filter_map(|c| c["overlap_ratio"].as_f64())
                    .reduce(f64::max)
            });
            (h, sidecar_bound, counts, overlap)
        }
        None => {
            let emu = build(&g, params)?;
            (emu.graph(), Some(emu.error_bound()), Some(emu.counts()), max_overlap(&emu))
        }
    };
    let Some(bound) = bound.or(default_bound) else {
        bail!("no --bound given and no sidecar next to the emulator to read it from");
    };
    let mut report: VerificationReport =
        verify_emulator(&g, &h, bound, VerifyOptions { max_n }).context("verifying emulator")?;
    report.edge_counts = counts;
    report.overlap_ratio = overlap;
    if !timings {
        report.runtime_ms = None;
    }
    let json = to_json(&report)?;
    match report_path {
        Some(path) => write(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(v) = &report.first_violation {
        let dh = v.dist_h.map_or("unreachable".to_string(), |d| d.to_string());
        eprintln!(
            "verification failed: {} violating pairs at bound {bound}; first ({}, {}): d_G = {}, d_H = {dh}",
            report.violating_pairs, v.u, v.v, v.dist_g
        );
        return Ok(false);
    }
    eprintln!(
        "verified: {} pairs, max additive error {:?} <= {bound}",
        report.pairs_checked, report.max_additive_error
    );
    Ok(true)
}

fn bench_csv(rows: &[ProbeRow], timings: bool) -> String {
    let mut out = String::from("spec,n,graph_edges,edges,density,components,r_hat,greedy_rounds");
    if timings {
        out.push_str(",build_ms");
    }
    out.push('\n');
    for r in rows {
        let r_hat = r.r_hat.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{:.6},{},{},{}",
            r.spec, r.n, r.graph_edges, r.edges, r.density, r.components, r_hat, r.greedy_rounds
        ));
        if timings {
            out.push_str(&format!(",{:.3}", r.build_ms));
        }
        out.push('\n');
    }
    out
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }
    match cli.command {
        Command::Gen { spec, seed, out } => {
            let g = spec.generate(seed)?;
            write(&out, &g.to_edge_list())?;
            eprintln!("{spec}: {} vertices, {} edges -> {}", g.n(), g.edge_count(), out.display());
        }
        Command::Build { input, params, out, sidecar, timings } => {
            let g = input.load(params.seed)?;
            let emu = build(&g, &params)?;
            write(&out, &emu.to_weighted_edge_list())?;
            let sidecar = sidecar.unwrap_or_else(|| with_extension_appended(&out, ".json"));
            write(&sidecar, &to_json(&emu.sidecar(timings))?)?;
            let c = emu.counts();
            eprintln!(
                "{} edges ({} spanner, {} small_cluster, {} recursive, {} greedy), bound {} -> {}",
                emu.edge_count(),
                c.spanner,
                c.small_cluster,
                c.recursive,
                c.greedy,
                emu.error_bound(),
                out.display()
            );
        }
        Command::Verify { input, params, emulator, bound, report, max_n, timings } => {
            return cmd_verify(
                &input,
                &params,
                emulator.as_deref(),
                bound,
                report.as_deref(),
                max_n,
                timings,
            );
        }
        Command::Bench { family, sizes, params, out, json, timings } => {
            let mut rows = size_scaling_probe(&family, &sizes, params.levels, &params.config())?;
            if !timings {
                rows.iter_mut().for_each(|r| r.build_ms = 0.0);
            }
            write(&out, &bench_csv(&rows, timings))?;
            let json_path = json.unwrap_or_else(|| out.with_extension("json"));
            let doc = serde_json::json!({
                "schema": 1,
                "family": family.to_string(),
                "levels": params.levels,
                "config": params.config(),
                "rows": rows,
                "density_ratios": density_ratios(&rows),
            });
            write(&json_path, &to_json(&doc)?)?;
            for r in &rows {
                eprintln!("{:>8} {:>8} edges  density {:.4}", r.n, r.edges, r.density);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
