mod resolve;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperramsey::arrowing::{self, ArrowError, ArrowInstance, ArrowOutcome, SearchConfig};
use hyperramsey::classes::{self, Denseness};
use hyperramsey::containment::{self, ContainmentError, Cor71Item};
use hyperramsey::density::{self, Rational};
use hyperramsey::randlab::{self, ExperimentConfig, FitConfig, RandError, SampleConfig};
use hyperramsey::{catalog, Hypergraph};

#[derive(Parser)]
#[command(name = "hyperramsey", version, about = "Ramsey properties of small r-uniform hypergraphs")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Master seed for random experiments.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for each arrowing search.
    #[arg(long, global = true, default_value_t = arrowing::DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Maximum density e/v.
    M,
    /// Maximum r-density.
    Mr,
    /// Asymmetric maximum r-density of (input, second).
    Asym,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density parameters.
    Density {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "mr")]
        kind: Kind,
        #[arg(long)]
        second: Option<String>,
    },
    /// Asymmetric density, strict balance and heart of a pair (T, F).
    Asym {
        #[arg(long)]
        t: String,
        #[arg(long)]
        f: String,
    },
    /// The parameters mu, sigma and delta of a target tuple.
    Delta {
        #[arg(long)]
        qs: String,
        #[arg(long)]
        s: usize,
    },
    /// Membership in X_r and Y_r.
    Classes {
        #[arg(long)]
        input: String,
    },
    /// Sufficient condition for (T, F) to be Ramsey-dense.
    Dense {
        #[arg(long)]
        t: String,
        #[arg(long)]
        f: String,
    },
    /// Decide host -> (F_1, ..., F_s).
    Arrow {
        #[arg(long)]
        host: String,
        #[arg(long)]
        targets: String,
    },
    /// Smallest complete host arrowing the targets.
    Ramsey {
        #[arg(long)]
        targets: String,
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
    /// Ramsey-class containment R(fs) in R(qs).
    Contain {
        #[arg(long)]
        fs: String,
        #[arg(long)]
        qs: String,
    },
    /// Ramsey equivalence of two tuples.
    Equiv {
        #[arg(long)]
        fs: String,
        #[arg(long)]
        qs: String,
    },
    /// Arrowing-gap instances built from complete hypergraphs.
    Cor71 {
        #[arg(long)]
        item: Cor71Item,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
    },
    /// Draw one random hypergraph H(n, p).
    Sample {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Estimate an event's probability over a grid of p (CSV).
    Sweep {
        /// contains:F, arrows:F1,F2 or contain:S:Q1,Q2,...
        #[arg(long)]
        event: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated values or start:stop:step.
        #[arg(long)]
        p_grid: String,
        #[arg(long, default_value_t = randlab::DEFAULT_TRIALS)]
        trials: usize,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the threshold exponent of an event.
    Fit {
        #[arg(long)]
        event: String,
        #[arg(long)]
        n_list: String,
        #[arg(long, default_value_t = randlab::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = randlab::DEFAULT_TOL)]
        tol: f64,
        /// Also write every bisection probe as CSV.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// List the named hypergraphs, or print one.
    Catalog { name: Option<String> },
}

/// A command's result in both output forms; `unknown` marks budget exhaustion.
struct Report {
    text: String,
    json: serde_json::Value,
    unknown: bool,
}

impl Report {
    fn new(text: impl Into<String>, json: serde_json::Value) -> Self {
        Report {
            text: text.into(),
            json,
            unknown: false,
        }
    }

    fn unknown(text: impl Into<String>, json: serde_json::Value) -> Self {
        Report {
            unknown: true,
            ..Report::new(text, json)
        }
    }
}

fn frac(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn search(cli: &Cli) -> SearchConfig {
    SearchConfig {
        node_budget: cli.budget,
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Density {
            input,
            kind,
            second,
        } => {
            let f = resolve::hypergraph(input)?;
            let rep = match (kind, second) {
                (Kind::M, _) => density::max_density(&f)?,
                (Kind::Mr, _) => density::max_r_density(&f)?,
                (Kind::Asym, Some(s)) => density::asym_density(&f, &resolve::hypergraph(s)?)?,
                (Kind::Asym, None) => bail!("--kind asym needs --second F"),
            };
            Ok(Report::new(
                frac(rep.value),
                json!({
                    "value": frac(rep.value),
                    "maximizer": rep.maximizer.to_vec(),
                    "uniqueAtWhole": rep.unique_at_whole,
                }),
            ))
        }
        Command::Asym { t, f } => {
            let (t, f) = (resolve::hypergraph(t)?, resolve::hypergraph(f)?);
            let value = density::asym_density(&t, &f)?.value;
            let balanced = density::is_strictly_f_balanced(&t, &f)?;
            let heart = density::find_heart(&t, &f)?;
            Ok(Report::new(
                format!(
                    "m_r(T,F) = {}\nstrictly F-balanced: {balanced}\nheart T' = {} on {}\nheart F' = {} on {}",
                    frac(value),
                    heart.t_prime,
                    heart.t_vertices,
                    heart.f_prime,
                    heart.f_vertices
                ),
                json!({
                    "value": frac(value),
                    "strictlyFBalanced": balanced,
                    "heart": {
                        "tPrime": heart.t_prime.to_json(),
                        "tVertices": heart.t_vertices.to_vec(),
                        "fPrime": heart.f_prime.to_json(),
                        "fVertices": heart.f_vertices.to_vec(),
                    },
                }),
            ))
        }
        Command::Delta { qs, s } => {
            let d = density::delta_parameter(&resolve::tuple(qs)?, *s)?;
            Ok(Report::new(
                format!(
                    "mu = {}\nsigma = {} (i = {})\ndelta = {}",
                    frac(d.mu),
                    frac(d.sigma),
                    d.sigma_index + 1,
                    frac(d.delta)
                ),
                json!({
                    "mu": frac(d.mu),
                    "sigma": frac(d.sigma),
                    "sigmaIndex": d.sigma_index,
                    "delta": frac(d.delta),
                }),
            ))
        }
        Command::Classes { input } => {
            let rep = classes::classify(&resolve::hypergraph(input)?)?;
            let xw = rep.xr_witness.map(|s| s.to_string());
            let yw = rep.yr_witness.map(|(u, v)| format!("{u} {v}"));
            Ok(Report::new(
                format!(
                    "inXr: {}\ninYr: {}\nXr witness: {}\nYr witness: {}",
                    rep.in_xr,
                    rep.in_yr,
                    xw.as_deref().unwrap_or("none"),
                    yw.as_deref().unwrap_or("none"),
                ),
                json!({
                    "inXr": rep.in_xr,
                    "inYr": rep.in_yr,
                    "xrWitness": rep.xr_witness.map(|s| s.to_vec()),
                    "yrWitness": rep.yr_witness.map(|(u, v)| [u, v]),
                }),
            ))
        }
        Command::Dense { t, f } => {
            let (t, f) = (resolve::hypergraph(t)?, resolve::hypergraph(f)?);
            Ok(match classes::ramsey_dense_sufficient(&t, &f)? {
                Denseness::ProvenGraphCase => Report::new(
                    "RAMSEY-DENSE (graph case)",
                    json!({"verdict": "proven", "reason": "graphCase"}),
                ),
                Denseness::Proven {
                    vertices,
                    edges,
                    chromatic,
                } => Report::new(
                    format!("RAMSEY-DENSE: F' on {vertices} ({} edges) has chromatic number {chromatic}", edges.len()),
                    json!({
                        "verdict": "proven",
                        "reason": "chromatic",
                        "vertices": vertices.to_vec(),
                        "edges": edges,
                        "chromatic": chromatic,
                    }),
                ),
                Denseness::Inconclusive => {
                    Report::new("INCONCLUSIVE", json!({"verdict": "inconclusive"}))
                }
            })
        }
        Command::Arrow { host, targets } => {
            let host = resolve::hypergraph(host)?;
            let inst = ArrowInstance::new(host.clone(), resolve::tuple(targets)?)?;
            let (outcome, stats) = arrowing::arrows_with_stats(&inst, &search(cli));
            Ok(match outcome {
                ArrowOutcome::Arrows => Report::new(
                    "ARROWS",
                    json!({"verdict": "arrows", "nodes": stats.nodes}),
                ),
                ArrowOutcome::NotArrows(w) => {
                    let wj = w.to_json(&host);
                    Report::new(
                        format!("DOES NOT ARROW\n{wj}"),
                        json!({"verdict": "notArrows", "nodes": stats.nodes, "witness": wj}),
                    )
                }
                ArrowOutcome::Unknown => Report::unknown(
                    format!("UNKNOWN (budget of {} nodes exhausted)", cli.budget),
                    json!({"verdict": "unknown", "nodes": stats.nodes}),
                ),
            })
        }
        Command::Ramsey { targets, cap } => {
            let res = arrowing::ramsey_number(&resolve::tuple(targets)?, *cap, &search(cli))?;
            let wj = res.witness.to_json(&res.witness_host);
            Ok(Report::new(
                format!("{}\nrefuting coloring of K_{}:\n{wj}", res.value, res.value - 1),
                json!({"value": res.value, "witnessHost": res.witness_host.to_json(), "witness": wj}),
            ))
        }
        Command::Contain { fs, qs } => {
            let fs = resolve::tuple(fs)?;
            let qs = resolve::tuple(qs)?;
            let v = containment::containment_decision(&fs, &qs, &search(cli))?;
            let vj = v.to_json(&fs);
            let text = match &v.certificate {
                Some(c) => format!("HOLDS\nassignment (target -> source): {:?}", c.assignment),
                None => format!("DOES NOT HOLD\n{}", serde_json::to_string_pretty(&vj["refutations"])?),
            };
            Ok(Report::new(text, vj))
        }
        Command::Equiv { fs, qs } => {
            let e = containment::equivalence_decision(&resolve::tuple(fs)?, &resolve::tuple(qs)?)?;
            let text = match &e.mapping {
                Some(m) => format!("EQUIVALENT\nmapping: {m:?}"),
                None => "NOT EQUIVALENT".to_string(),
            };
            Ok(Report::new(text, serde_json::to_value(&e)?))
        }
        Command::Cor71 { item, r, k, l } => {
            let rep = containment::corollary71_verify(*item, *r, *k, *l, &search(cli))?;
            let rj = rep.to_json();
            let mut text = String::new();
            if let Some(q) = rep.q {
                text.push_str(&format!("q = {q}\n"));
            }
            let names = |hs: &[Hypergraph]| {
                hs.iter()
                    .map(|h| format!("K{}", h.n()))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            text.push_str(&format!("fs = ({})\nqs = ({})\n", names(&rep.fs), names(&rep.qs)));
            for rf in &rep.verdict.refutations {
                text.push_str(&format!(
                    "assignment {:?}: F{} does not arrow targets {:?}{}\n",
                    rf.assignment,
                    rf.source + 1,
                    rf.targets.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    if rf.by_missing_copy { " (missing copy)" } else { "" }
                ));
            }
            text.push_str(if rep.separated {
                "SEPARATED: no partition exists"
            } else {
                "NOT SEPARATED: a partition exists"
            });
            Ok(Report::new(text, rj))
        }
        Command::Sample { r, n, p } => {
            let h = randlab::sample(&SampleConfig::new(*r, *n, *p, cli.seed)?);
            Ok(Report::new(h.serialize(), h.to_json()))
        }
        Command::Sweep {
            event,
            n,
            p_grid,
            trials,
            out,
        } => {
            let ev = resolve::event(event)?;
            let cfg = ExperimentConfig {
                r: resolve::event_uniformity(&ev),
                n: *n,
                seed: cli.seed,
                budget: cli.budget,
            };
            let recs = randlab::sweep(&cfg, &ev, &resolve::p_grid(p_grid)?, *trials)?;
            let mut buf = Vec::new();
            randlab::write_csv(&recs, &mut buf)?;
            let csv_text = String::from_utf8(buf)?;
            if let Some(path) = out {
                std::fs::write(path, &csv_text)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(Report::new(csv_text.trim_end(), serde_json::to_value(&recs)?))
        }
        Command::Fit {
            event,
            n_list,
            trials,
            tol,
            probes,
        } => {
            let ev = resolve::event(event)?;
            let cfg = FitConfig {
                r: resolve::event_uniformity(&ev),
                seed: cli.seed,
                budget: cli.budget,
                trials: *trials,
                tol: *tol,
            };
            let fit = randlab::fit_threshold(&cfg, &ev, &resolve::usize_list(n_list)?)?;
            if let Some(path) = probes {
                let file = File::create(path)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                randlab::write_csv(&fit.probes, file)?;
            }
            let fj = fit.to_json();
            Ok(Report::new(serde_json::to_string_pretty(&fj)?, fj))
        }
        Command::Catalog { name: Some(name) } => {
            let h = catalog::get(name).with_context(|| format!("no catalog entry {name:?}"))?;
            Ok(Report::new(h.serialize(), h.to_json()))
        }
        Command::Catalog { name: None } => {
            let entries = catalog::entries();
            let text = entries
                .iter()
                .map(|e| format!("{:<6} {}", e.name, e.hypergraph))
                .collect::<Vec<_>>()
                .join("\n");
            let list: serde_json::Map<String, serde_json::Value> = entries
                .iter()
                .map(|e| (e.name.clone(), e.hypergraph.to_json()))
                .collect();
            Ok(Report::new(text, serde_json::Value::Object(list)))
        }
    }
}

/// Budget exhaustion anywhere in the error chain.
fn is_unknown(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        matches!(e.downcast_ref(), Some(ArrowError::Unknown { .. }))
            || matches!(e.downcast_ref(), Some(ContainmentError::Unknown))
            || matches!(e.downcast_ref(), Some(RandError::Unknown { .. }))
            || matches!(
                e.downcast_ref(),
                Some(RandError::Containment(ContainmentError::Unknown))
            )
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            let printed = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                writeln!(out, "{}", report.text)
            };
            if printed.is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if report.unknown { 2 } else { 0 })
        }
        Err(err) => {
            let unknown = is_unknown(&err);
            if cli.json {
                println!("{}", json!({"error": format!("{err:#}"), "unknown": unknown}));
            }
            eprintln!("error: {err:#}");
            ExitCode::from(if unknown { 2 } else { 1 })
        }
    }
}
