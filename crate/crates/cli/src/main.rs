mod dot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use contig_core::collapse;
use contig_core::complex::SimplicialComplex;
use contig_core::constructions;
use contig_core::contiguity::{self, ClassOutcome};
use contig_core::distance::{self, DistanceResult};
use contig_core::io::{load_complex, load_map, serialize_complex, MapFile};
use contig_core::oracle;
use contig_core::verify::{run_verify, VerifyConfig};
use contig_core::{EngineConfig, Error};

use report::{Report, ResultPayload};

/// Exit codes: 0 success, 1 negative decision or failed verification,
/// 2 input error, 3 cap exceeded / unknown outcome.
const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "contig",
    about = "Contiguity distance between simplicial maps, simplicial LS-category and discrete topological complexity",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Emit the run report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// State cap for contiguity-class searches.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Worker threads for independent goodness evaluations.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Byte-reproducible reports (omits timing).
    #[arg(long, global = true)]
    deterministic: bool,

    /// Rerun the decision through the brute-force oracle and report
    /// agreement (same-class and distance only).
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print basic facts about a complex.
    Info {
        complex: PathBuf,
        /// Write the 1-skeleton as a DOT document.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the strong-collapse core.
    Core {
        complex: PathBuf,
        /// Write the core as .cplx (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the retraction as .map JSON (requires --out).
        #[arg(long)]
        retraction: Option<PathBuf>,
        /// Write the elimination trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide strong collapsibility (exit 0 yes / 1 no).
    Collapsible { complex: PathBuf },
    /// Barycentric subdivision.
    Sd {
        complex: PathBuf,
        /// Write the subdivision as .cplx (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also subdivide this map.
        #[arg(long)]
        with_map: Option<PathBuf>,
        /// Where to write the subdivided map (requires --out and --with-map).
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Categorical product of two complexes.
    Product {
        left: PathBuf,
        right: PathBuf,
        /// Write the product as .cplx (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also emit the projections (requires --out).
        #[arg(long)]
        with_maps: bool,
        #[arg(long)]
        p1_out: Option<PathBuf>,
        #[arg(long)]
        p2_out: Option<PathBuf>,
    },
    /// Decide one-step contiguity (exit 0 yes / 1 no).
    Contiguous { f: PathBuf, g: PathBuf },
    /// Decide contiguity-class membership (exit 0 same / 1 different /
    /// 3 unknown).
    SameClass {
        f: PathBuf,
        g: PathBuf,
        /// Write the certificate chain as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Contiguity distance SD(φ, ψ).
    Distance {
        f: PathBuf,
        g: PathBuf,
        /// Write the witness cover and certificates as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Simplicial LS-category of a complex.
    Scat {
        complex: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Discrete topological complexity of a complex.
    Tc {
        complex: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Simplicial LS-category of a map.
    ScatMap {
        f: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run the theorem-verification suite over a corpus directory.
    Verify {
        corpus_dir: PathBuf,
        /// Number of randomly generated complexes.
        #[arg(long, default_value_t = 200)]
        complexes: usize,
        /// Number of randomly generated map pairs.
        #[arg(long, default_value_t = 500)]
        map_pairs: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 0x5d15_7a9c)]
        seed: u64,
    },
}

fn engine_config(global: &GlobalArgs) -> EngineConfig {
    let mut cfg = EngineConfig::default();
    if let Some(cap) = global.cap {
        cfg.class_state_cap = cap;
    }
    cfg.threads = global.threads.max(1);
    cfg
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut report = Report::new(&cli.global);
    let code = match run(&cli, &mut report) {
        Ok(code) => code,
        Err(err) => {
            report.error = Some(err.to_string());
            match err {
                Error::CapExceeded { .. } | Error::SizeGuard { .. } => EXIT_CAP,
                _ => EXIT_INPUT,
            }
        }
    };
    if !cli.global.deterministic {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    report.exit = code;
    if cli.global.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for line in &report.lines {
            println!("{line}");
        }
        if let Some(err) = &report.error {
            eprintln!("error: {err}");
        }
    }
    ExitCode::from(code)
}

fn load(path: &PathBuf) -> Result<Arc<SimplicialComplex>, Error> {
    Ok(Arc::new(load_complex(path)?))
}

fn write_or_print(out: &Option<PathBuf>, text: &str, report: &mut Report) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => report.lines.push(text.trim_end().to_string()),
    }
    Ok(())
}

fn distance_lines(label: &str, res: &DistanceResult, report: &mut Report) {
    report.lines.push(format!(
        "{label} = {} ({})",
        res.value,
        if res.exact { "exact" } else { "upper bound" }
    ));
    if !res.undecided.is_empty() {
        report
            .lines
            .push(format!("undecided masks: {:?}", res.undecided));
    }
    report.result = Some(ResultPayload::Distance {
        value: res.value,
        exact: res.exact,
        witness: res.witness.clone(),
        undecided: res.undecided.clone(),
    });
}

fn write_witness(path: &Option<PathBuf>, res: &DistanceResult) -> Result<(), Error> {
    if let Some(path) = path {
        std::fs::write(path, serde_json::to_string_pretty(&report::witness_json(res))?)?;
    }
    Ok(())
}

fn run(cli: &Cli, report: &mut Report) -> Result<u8, Error> {
    let cfg = engine_config(&cli.global);
    match &cli.command {
        Command::Info { complex, dot } => {
            let k = load(complex)?;
            report.record_input(complex)?;
            report.lines.push(format!(
                "vertices {}  facets {}  dim {}  connected {}",
                k.vertex_count(),
                k.facet_count(),
                k.dim(),
                k.is_connected()
            ));
            report.result = Some(ResultPayload::Info {
                vertices: k.vertex_count(),
                facets: k.facet_count(),
                dim: k.dim(),
                connected: k.is_connected(),
            });
            if let Some(dot_path) = dot {
                std::fs::write(dot_path, dot::emit_dot(&k))?;
            }
            Ok(EXIT_OK)
        }
        Command::Core {
            complex,
            out,
            retraction,
            trace,
        } => {
            let k = load(complex)?;
            report.record_input(complex)?;
            let res = collapse::core(&k)?;
            write_or_print(out, &serialize_complex(&res.core), report)?;
            if let Some(map_path) = retraction {
                let out_path = out.as_ref().ok_or_else(|| {
                    Error::DomainMismatch("--retraction requires --out".into())
                })?;
                let file = MapFile::from_map(
                    &res.retraction,
                    &complex.display().to_string(),
                    &out_path.display().to_string(),
                );
                std::fs::write(map_path, serde_json::to_string_pretty(&file)?)?;
            }
            if let Some(trace_path) = trace {
                let mut text = String::new();
                for (dominated, by) in &res.elimination_trace {
                    text.push_str(&serde_json::to_string(&serde_json::json!({
                        "dominated": dominated,
                        "by": by,
                    }))?);
                    text.push('\n');
                }
                std::fs::write(trace_path, text)?;
            }
            report.result = Some(ResultPayload::Core {
                core_vertices: res.core.vertex_count(),
                core_facets: res.core.facet_count(),
                eliminations: res.elimination_trace.len(),
            });
            Ok(EXIT_OK)
        }
        Command::Collapsible { complex } => {
            let k = load(complex)?;
            report.record_input(complex)?;
            let yes = collapse::is_strongly_collapsible(&k)?;
            report.lines.push(
                if yes {
                    "strongly collapsible"
                } else {
                    "not strongly collapsible"
                }
                .to_string(),
            );
            report.result = Some(ResultPayload::Decision { answer: yes });
            Ok(if yes { EXIT_OK } else { EXIT_NO })
        }
        Command::Sd {
            complex,
            out,
            with_map,
            map_out,
        } => {
            let k = load(complex)?;
            report.record_input(complex)?;
            let sd = constructions::barycentric_subdivision(&k, &cfg)?;
            write_or_print(out, &serialize_complex(&sd.complex), report)?;
            if let Some(map_path) = with_map {
                let loaded = load_map(map_path)?;
                report.record_input(map_path)?;
                let sd_cod = constructions::barycentric_subdivision(loaded.map.codomain(), &cfg)?;
                let sd_dom = constructions::barycentric_subdivision(loaded.map.domain(), &cfg)?;
                let sdf = constructions::sd_map(&loaded.map, &sd_dom, &sd_cod)?;
                let out_path = map_out.as_ref().ok_or_else(|| {
                    Error::DomainMismatch("--with-map requires --map-out".into())
                })?;
                let file = MapFile::from_map(&sdf, "sd-domain.cplx", "sd-codomain.cplx");
                std::fs::write(out_path, serde_json::to_string_pretty(&file)?)?;
            }
            report.result = Some(ResultPayload::Info {
                vertices: sd.complex.vertex_count(),
                facets: sd.complex.facet_count(),
                dim: sd.complex.dim(),
                connected: sd.complex.is_connected(),
            });
            Ok(EXIT_OK)
        }
        Command::Product {
            left,
            right,
            out,
            with_maps,
            p1_out,
            p2_out,
        } => {
            let a = load(left)?;
            let b = load(right)?;
            report.record_input(left)?;
            report.record_input(right)?;
            let prod = constructions::categorical_product(&a, &b, &cfg)?;
            write_or_print(out, &serialize_complex(&prod.complex), report)?;
            if *with_maps {
                let out_path = out
                    .as_ref()
                    .ok_or_else(|| Error::DomainMismatch("--with-maps requires --out".into()))?
                    .display()
                    .to_string();
                if let Some(p) = p1_out {
                    let file =
                        MapFile::from_map(&prod.p1, &out_path, &left.display().to_string());
                    std::fs::write(p, serde_json::to_string_pretty(&file)?)?;
                }
                if let Some(p) = p2_out {
                    let file =
                        MapFile::from_map(&prod.p2, &out_path, &right.display().to_string());
                    std::fs::write(p, serde_json::to_string_pretty(&file)?)?;
                }
            }
            report.result = Some(ResultPayload::Info {
                vertices: prod.complex.vertex_count(),
                facets: prod.complex.facet_count(),
                dim: prod.complex.dim(),
                connected: prod.complex.is_connected(),
            });
            Ok(EXIT_OK)
        }
        Command::Contiguous { f, g } => {
            let mf = load_map(f)?;
            let mg = load_map(g)?;
            report.record_input(f)?;
            report.record_input(g)?;
            let yes = contiguity::is_contiguous(&mf.map, &mg.map)?;
            report
                .lines
                .push(if yes { "contiguous" } else { "not contiguous" }.to_string());
            report.result = Some(ResultPayload::Decision { answer: yes });
            Ok(if yes { EXIT_OK } else { EXIT_NO })
        }
        Command::SameClass { f, g, certificate } => {
            let mf = load_map(f)?;
            let mg = load_map(g)?;
            report.record_input(f)?;
            report.record_input(g)?;
            let outcome = contiguity::same_contiguity_class(&mf.map, &mg.map, &cfg)?;
            if cli.global.oracle {
                match oracle::exhaustive_same_class(&mf.map, &mg.map, &cfg) {
                    Ok(expected) => {
                        let agree = match &outcome {
                            ClassOutcome::Same(_) => expected,
                            ClassOutcome::Different { .. } => !expected,
                            ClassOutcome::Unknown { .. } => true,
                        };
                        report
                            .lines
                            .push(format!("oracle agreement: {}", if agree { "yes" } else { "NO" }));
                        if !agree {
                            return Ok(EXIT_NO);
                        }
                    }
                    Err(Error::CapExceeded { .. }) => {
                        report.lines.push("oracle: skipped (cap exceeded)".into())
                    }
                    Err(e) => return Err(e),
                }
            }
            match outcome {
                ClassOutcome::Same(chain) => {
                    report
                        .lines
                        .push(format!("same contiguity class (chain length {})", chain.len()));
                    if let Some(path) = certificate {
                        std::fs::write(
                            path,
                            serde_json::to_string_pretty(&report::chain_json(&chain))?,
                        )?;
                    }
                    report.result = Some(ResultPayload::SameClass {
                        same: Some(true),
                        explored: chain.len(),
                    });
                    Ok(EXIT_OK)
                }
                ClassOutcome::Different { explored } => {
                    report
                        .lines
                        .push(format!("different contiguity classes (explored {explored} maps)"));
                    report.result = Some(ResultPayload::SameClass {
                        same: Some(false),
                        explored,
                    });
                    Ok(EXIT_NO)
                }
                ClassOutcome::Unknown { explored } => {
                    report
                        .lines
                        .push(format!("unknown (state cap after {explored} maps)"));
                    report.result = Some(ResultPayload::SameClass {
                        same: None,
                        explored,
                    });
                    Ok(EXIT_CAP)
                }
            }
        }
        Command::Distance { f, g, witness } => {
            let mf = load_map(f)?;
            let mg = load_map(g)?;
            report.record_input(f)?;
            report.record_input(g)?;
            let res = distance::contiguity_distance(&mf.map, &mg.map, &cfg)?;
            if cli.global.oracle {
                match oracle::exhaustive_distance(&mf.map, &mg.map, &cfg) {
                    Ok(expected) => {
                        let agree = !res.exact || res.value == expected;
                        report
                            .lines
                            .push(format!("oracle agreement: {}", if agree { "yes" } else { "NO" }));
                        if !agree {
                            return Ok(EXIT_NO);
                        }
                    }
                    Err(Error::CapExceeded { .. }) => {
                        report.lines.push("oracle: skipped (cap exceeded)".into())
                    }
                    Err(e) => return Err(e),
                }
            }
            distance_lines("SD", &res, report);
            write_witness(witness, &res)?;
            Ok(if res.exact { EXIT_OK } else { EXIT_CAP })
        }
        Command::Scat { complex, witness } => {
            let k = load(complex)?;
            report.record_input(complex)?;
            let res = distance::scat(&k, &cfg)?;
            distance_lines("scat", &res, report);
            write_witness(witness, &res)?;
            Ok(if res.exact { EXIT_OK } else { EXIT_CAP })
        }
        Command::Tc { complex, witness } => {
            let k = load(complex)?;
            report.record_input(complex)?;
            let res = distance::tc(&k, &cfg)?;
            distance_lines("TC", &res, report);
            write_witness(witness, &res)?;
            Ok(if res.exact { EXIT_OK } else { EXIT_CAP })
        }
        Command::ScatMap { f, witness } => {
            let mf = load_map(f)?;
            report.record_input(f)?;
            let res = distance::scat_map(&mf.map, &cfg)?;
            distance_lines("scat(map)", &res, report);
            write_witness(witness, &res)?;
            Ok(if res.exact { EXIT_OK } else { EXIT_CAP })
        }
        Command::Verify {
            corpus_dir,
            complexes,
            map_pairs,
            seed,
        } => {
            let mut extra: Vec<(String, Arc<SimplicialComplex>)> = Vec::new();
            let mut entries: Vec<PathBuf> = std::fs::read_dir(corpus_dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "cplx"))
                .collect();
            entries.sort();
            for path in entries {
                report.record_input(&path)?;
                extra.push((path.display().to_string(), Arc::new(load_complex(&path)?)));
            }
            let vcfg = VerifyConfig {
                engine: cfg,
                seed: *seed,
                random_complexes: *complexes,
                random_map_pairs: *map_pairs,
                ..VerifyConfig::default()
            };
            let rep = run_verify(&extra, &vcfg)?;
            for line in rep.summary_lines() {
                report.lines.push(line);
            }
            for check in &rep.checks {
                for v in &check.violations {
                    report.lines.push(format!("VIOLATION [{}]: {v}", check.name));
                }
            }
            let pass = rep.pass();
            report.result = Some(ResultPayload::Verify(rep));
            Ok(if pass { EXIT_OK } else { EXIT_NO })
        }
    }
}
