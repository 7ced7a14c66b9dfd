//! `sgd` — synthesize, measure, and verify short first-order descriptions
//! of finite groups.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sgd_cli::{bench, catalog};
use sgd_core::check::{check_sentence, describes_uniquely, CheckOptions, MemoPolicy};
use sgd_core::files::{self, LoadedGroup};
use sgd_core::formula::length;
use sgd_core::group::{
    alternating, bfs_words, cayley_diameter, express_three_cycle, psl, three_cycle_decompose,
    Group, GroupError, Permutation,
};
use sgd_core::synth::{
    delta_formula, describing_sentence, psl_row_reduction_check, verify_presentation,
    SYNTH_CONSTANTS,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "sgd",
    version,
    about = "Short first-order descriptions of finite groups"
)]
struct Cli {
    /// Node budget for model checking (SGD_BUDGET overrides).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for sweeps and outermost quantifiers.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for sampled validation of large tables.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format. Defaults to json for report commands, text for
    /// `catalog list` and `bench`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the generation formula delta_{v,k}.
    SynthDelta {
        v: u32,
        k: u32,
        /// Write the formula to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize a describing sentence from a job file.
    SynthDescribe {
        job: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the synthesis report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Verify a job's presentation: relators, generation, diameter vs 2^v.
    VerifyPres { job: PathBuf },
    /// Model-check a sentence file against a group file.
    Check { sentence: PathBuf, group: PathBuf },
    /// Evaluate a sentence on every group in a catalog directory.
    Sweep {
        sentence: PathBuf,
        catalog_dir: PathBuf,
        /// Compare truth against isomorphism with this target group.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Exact Cayley diameter of a group over its generators.
    Diameter {
        group: PathBuf,
        /// Override generators: JSON list of generators in cycle notation.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Express every 3-cycle of A_k as a word in generators containing (0 1 2).
    ThreeCycles {
        k: usize,
        /// Decompose this even permutation (JSON cycles) into 3-cycles instead.
        #[arg(long)]
        decompose: Option<String>,
    },
    /// Automorphism group of a finite group.
    Aut {
        group: PathBuf,
        /// Raise the order cap from 64 to 720.
        #[arg(long)]
        allow_large: bool,
    },
    /// Outer automorphism group order.
    Out {
        group: PathBuf,
        #[arg(long)]
        allow_large: bool,
    },
    /// Normaliser of the group's regular image in Sym(G), via the holomorph.
    Normalizer {
        group: PathBuf,
        /// Cross-check with the exhaustive sweep (degree ≤ 8).
        #[arg(long)]
        brute: bool,
    },
    /// Centre/orbit-count bound report for a permutation group.
    CentreBound { group: PathBuf },
    /// List or build the default group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run describing-sentence benchmarks over job files.
    Bench {
        jobs_files: Vec<PathBuf>,
        /// Output directory for bench.csv, bench.json, and sentences.
        #[arg(short, long)]
        output: PathBuf,
        /// Cap on the uniqueness-sweep order.
        #[arg(long)]
        sweep_cap: Option<usize>,
    },
    /// Row-reduction check for PSL(n,q): max elementary factors vs n².
    PslCheck { n: usize, q: usize },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print entry names and orders.
    List,
    /// Write one group file per entry plus index.json.
    Build {
        #[arg(short, long, default_value = "catalog")]
        output: PathBuf,
        /// Build from a JSON config instead of the default catalog.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn check_options(cli: &Cli) -> CheckOptions {
    let mut budget = cli.budget.unwrap_or(sgd_core::check::DEFAULT_BUDGET);
    if let Ok(env) = std::env::var("SGD_BUDGET") {
        if let Ok(value) = env.trim().parse::<u64>() {
            budget = value;
        }
    }
    CheckOptions {
        budget,
        memo: MemoPolicy::Auto,
        jobs: cli.jobs,
    }
}

fn emit(format: Format, value: serde_json::Value, text: String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        ),
        _ => println!("{text}"),
    }
}

fn ok_or_fail(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn load_group(path: &Path, seed: Option<u64>) -> Result<(Option<String>, LoadedGroup)> {
    let (file, group) = files::read_group_seeded(path, seed)
        .with_context(|| format!("loading group {}", path.display()))?;
    Ok((file.name().map(str::to_string), group))
}

fn parse_cycles_list(src: &str, degree: usize) -> Result<Vec<Permutation>> {
    let raw: Vec<Vec<Vec<usize>>> = serde_json::from_str(src)
        .context("generators must be JSON: a list of generators, each a list of cycles")?;
    raw.iter()
        .map(|cycles| Permutation::from_cycles(degree, cycles).map_err(|e| anyhow!(e)))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let options = check_options(&cli);
    let format = cli.format.unwrap_or(match &cli.command {
        Command::Catalog { action: CatalogAction::List } | Command::Bench { .. } => Format::Text,
        _ => Format::Json,
    });
    match &cli.command {
        Command::SynthDelta { v, k, output } => {
            let f = delta_formula(*v, *k);
            let report = length(&f);
            if let Some(path) = output {
                files::write_sentence(
                    path,
                    &f,
                    &[
                        format!("generation formula: v={v} k={k}"),
                        format!("free variables: v0 (subject), v1..v{k} (generators)"),
                    ],
                )?;
            } else {
                println!("{}", f.render());
            }
            emit(
                format,
                json!({
                    "v": v, "k": k,
                    "length": report,
                    "bound": sgd_core::synth::delta_length_bound(*v, *k),
                    "constants": SYNTH_CONSTANTS,
                }),
                format!(
                    "delta(v={v}, k={k}): {} symbols (bound {}), {} quantifiers",
                    report.symbol_count,
                    sgd_core::synth::delta_length_bound(*v, *k),
                    report.quantifier_count
                ),
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::SynthDescribe {
            job,
            output,
            report,
        } => {
            let (file, description) = files::read_job(job)?;
            let name = file
                .name
                .clone()
                .unwrap_or_else(|| job.display().to_string());
            match describing_sentence(&description) {
                Err(err) => {
                    eprintln!("{name}: {err}");
                    Ok(ExitCode::FAILURE)
                }
                Ok((psi, synth)) => {
                    if let Some(path) = output {
                        files::write_sentence(
                            path,
                            &psi,
                            &[
                                format!("describing sentence for {name}"),
                                format!(
                                    "symbols {} (bound {}), v={}, presentation length {}",
                                    synth.length.symbol_count,
                                    synth.length_bound,
                                    synth.v,
                                    synth.presentation_length
                                ),
                            ],
                        )?;
                    } else {
                        println!("{}", psi.render());
                    }
                    let value = serde_json::to_value(&synth)?;
                    if let Some(path) = report {
                        files::write_atomic(
                            path,
                            serde_json::to_string_pretty(&value)?.as_bytes(),
                        )?;
                    }
                    emit(
                        format,
                        value,
                        format!(
                            "{name}: {} symbols (bound {}), diameter {}, v={}",
                            synth.length.symbol_count, synth.length_bound, synth.diameter, synth.v
                        ),
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }

        Command::VerifyPres { job } => {
            let (file, description) = files::read_job(job)?;
            let report = verify_presentation(
                &description.presentation,
                &description.target,
                &description.assignment,
                description.v,
            )?;
            let name = file.name.unwrap_or_else(|| job.display().to_string());
            emit(
                format,
                serde_json::to_value(&report)?,
                format!(
                    "{name}: relators_ok={} generates={} ({} of {}) diameter={} v_ok={}",
                    report.relators_ok,
                    report.generates,
                    report.reached,
                    report.order,
                    report.diameter,
                    report.v_ok
                ),
            );
            Ok(ok_or_fail(report.all_ok()))
        }

        Command::Check { sentence, group } => {
            let s = files::read_sentence(sentence)?;
            let (_, g) = load_group(group, cli.seed)?;
            let table = g.to_table();
            let outcome = check_sentence(&s, &table, options)?;
            emit(
                format,
                json!({
                    "value": outcome.value,
                    "nodes_visited": outcome.nodes_visited,
                    "elapsed_ms": outcome.elapsed.as_secs_f64() * 1e3,
                }),
                format!(
                    "{} ({} nodes, {:.1} ms)",
                    outcome.value,
                    outcome.nodes_visited,
                    outcome.elapsed.as_secs_f64() * 1e3
                ),
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            sentence,
            catalog_dir,
            target,
        } => {
            let s = files::read_sentence(sentence)?;
            let mut paths: Vec<PathBuf> = std::fs::read_dir(catalog_dir)
                .with_context(|| format!("reading {}", catalog_dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    p.extension().is_some_and(|x| x == "json")
                        && p.file_name().is_some_and(|n| n != "index.json")
                })
                .collect();
            paths.sort();
            let mut groups = Vec::new();
            for path in &paths {
                let (name, g) = load_group(path, cli.seed)?;
                let name = name.unwrap_or_else(|| {
                    path.file_stem()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .to_string()
                });
                groups.push((name, g.to_table()));
            }
            match target {
                Some(target_path) => {
                    let (_, target_group) = load_group(target_path, cli.seed)?;
                    let report =
                        describes_uniquely(&s, &target_group.to_table(), &groups, options)?;
                    let rows: Vec<serde_json::Value> = report
                        .entries
                        .iter()
                        .map(|e| {
                            json!({
                                "name": e.name, "order": e.order, "value": e.value,
                                "isomorphic_to_target": e.isomorphic_to_target,
                            })
                        })
                        .collect();
                    let text = report
                        .entries
                        .iter()
                        .map(|e| {
                            format!(
                                "{:12} order {:4} value {:5} iso {}",
                                e.name, e.order, e.value, e.isomorphic_to_target
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("\n");
                    emit(
                        format,
                        json!({
                            "entries": rows,
                            "violators": report.violators,
                            "unique": report.unique(),
                            "target_in_catalog": report.target_in_catalog,
                        }),
                        format!(
                            "{text}\nunique: {} violators: {:?}",
                            report.unique(),
                            report.violators
                        ),
                    );
                    Ok(ok_or_fail(report.unique()))
                }
                None => {
                    let mut rows = Vec::new();
                    let mut text = String::new();
                    for (name, table) in &groups {
                        let outcome = check_sentence(&s, table, options)?;
                        rows.push(
                            json!({"name": name, "order": table.order(), "value": outcome.value}),
                        );
                        text.push_str(&format!(
                            "{:12} order {:4} {}\n",
                            name,
                            table.order(),
                            outcome.value
                        ));
                    }
                    emit(
                        format,
                        json!({ "entries": rows }),
                        text.trim_end().to_string(),
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }

        Command::Diameter { group, gens } => {
            let (_, g) = load_group(group, cli.seed)?;
            let (indices, order): (Vec<usize>, usize) = match (&g, gens) {
                (LoadedGroup::Perm(p), Some(src)) => {
                    let perms = parse_cycles_list(src, p.degree())?;
                    let idx = perms
                        .iter()
                        .map(|perm| {
                            p.element_index(perm)
                                .ok_or_else(|| anyhow!("generator {perm} not in the group"))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (idx, p.order())
                }
                (LoadedGroup::Perm(p), None) => (p.generator_indices(), p.order()),
                (LoadedGroup::Table(t), None) => (sgd_core::group::greedy_generators(t), t.order()),
                (LoadedGroup::Table(_), Some(_)) => {
                    bail!("--gens needs a permutation group file")
                }
            };
            let table = g.to_table();
            match cayley_diameter(&table, &indices) {
                Ok(diameter) => {
                    let hist = bfs_words(&table, &indices)?.distance_histogram();
                    emit(
                        format,
                        json!({"order": order, "diameter": diameter, "distance_histogram": hist}),
                        format!(
                            "diameter {diameter} over {} elements (histogram {:?})",
                            order, hist
                        ),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(GroupError::NotGenerating { reached, order }) => {
                    eprintln!("generators reach only {reached} of {order} elements");
                    Ok(ExitCode::FAILURE)
                }
                Err(e) => Err(e.into()),
            }
        }

        Command::ThreeCycles { k, decompose } => {
            if let Some(src) = decompose {
                let cycles: Vec<Vec<usize>> = serde_json::from_str(src)
                    .context("expected JSON cycles, e.g. [[0,1],[2,3]]")?;
                let p = Permutation::from_cycles(*k, &cycles)?;
                let parts = three_cycle_decompose(&p)?;
                let rendered: Vec<String> = parts.iter().map(|c| c.to_string()).collect();
                emit(
                    format,
                    json!({"input": p.to_string(), "three_cycles": rendered, "count": parts.len()}),
                    format!(
                        "{p} = {}",
                        if rendered.is_empty() {
                            "()".into()
                        } else {
                            rendered.join(" · ")
                        }
                    ),
                );
                return Ok(ExitCode::SUCCESS);
            }
            let g = alternating(*k)?;
            let gens: Vec<Permutation> = g.generators().to_vec();
            let mut max_len = 0usize;
            let mut count = 0usize;
            for target in g.elements() {
                if !sgd_core::group::is_three_cycle(target) {
                    continue;
                }
                let word = express_three_cycle(target, &gens)?;
                if word.eval_perms(&gens)? != *target {
                    bail!("word for {target} does not evaluate back");
                }
                max_len = max_len.max(word.len());
                count += 1;
            }
            let bound = k * k * k;
            emit(
                format,
                json!({
                    "k": k, "three_cycles": count, "max_word_length": max_len,
                    "bound_k3": bound, "within_bound": max_len <= bound,
                }),
                format!("A{k}: {count} 3-cycles, max word length {max_len} ≤ k³ = {bound}"),
            );
            Ok(ok_or_fail(max_len <= bound))
        }

        Command::Aut { group, allow_large } | Command::Out { group, allow_large } => {
            let (name, g) = load_group(group, cli.seed)?;
            let aut = sgd_core::aut::automorphisms(&g.to_table(), *allow_large)?;
            let name = name.unwrap_or_else(|| group.display().to_string());
            if matches!(cli.command, Command::Out { .. }) {
                emit(
                    format,
                    json!({"name": name, "out_order": aut.out_order}),
                    format!("{name}: |Out| = {}", aut.out_order),
                );
            } else {
                emit(
                    format,
                    json!({
                        "name": name,
                        "aut_order": aut.order(),
                        "inner_order": aut.inner_order(),
                        "out_order": aut.out_order,
                    }),
                    format!(
                        "{name}: |Aut| = {}, |Inn| = {}, |Out| = {}",
                        aut.order(),
                        aut.inner_order(),
                        aut.out_order
                    ),
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Normalizer { group, brute } => {
            let (name, g) = load_group(group, cli.seed)?;
            let table = g.to_table();
            let name = name.unwrap_or_else(|| group.display().to_string());
            let aut = sgd_core::aut::automorphisms(&table, false)?;
            let hol = sgd_core::aut::holomorph(&table, &aut)?;
            let mut value = json!({
                "name": name,
                "group_order": table.order(),
                "normalizer_order": hol.order(),
                "out_order": aut.out_order,
                "quotient_order": hol.order() / table.order(),
            });
            let mut agree = true;
            if *brute {
                let rep = sgd_core::aut::regular_representation(&table);
                let norm = sgd_core::aut::brute_normalizer(&rep.image)?;
                agree = norm.elements() == hol.elements();
                value["brute_order"] = json!(norm.order());
                value["brute_matches_holomorph"] = json!(agree);
            }
            emit(
                format,
                value,
                format!(
                    "{name}: |N| = {}, |N|/|G| = {} = |Out|{}",
                    hol.order(),
                    hol.order() / table.order(),
                    if *brute {
                        format!(" (brute agreement: {agree})")
                    } else {
                        String::new()
                    }
                ),
            );
            Ok(ok_or_fail(agree))
        }

        Command::CentreBound { group } => {
            let (name, g) = load_group(group, cli.seed)?;
            let perm = g
                .as_perm()
                .ok_or_else(|| anyhow!("centre-bound needs a permutation group file"))?;
            let report = sgd_core::aut::centre_bound_report(perm);
            let name = name.unwrap_or_else(|| group.display().to_string());
            emit(
                format,
                serde_json::to_value(&report)?,
                format!(
                    "{name}: |centre| = {} ≤ ∏ k₂ = {} over reps {:?} (k₂ values {:?}): {}",
                    report.centre_order,
                    report.bound,
                    report.orbit_reps,
                    report.k2_values,
                    if report.holds { "holds" } else { "VIOLATED" }
                ),
            );
            Ok(ok_or_fail(report.holds))
        }

        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let rows: Vec<serde_json::Value> = catalog::default_catalog()
                    .iter()
                    .map(|e| json!({"name": e.name, "order": e.order()}))
                    .collect();
                let text = catalog::default_catalog()
                    .iter()
                    .map(|e| format!("{:12} {}", e.name, e.order()))
                    .collect::<Vec<_>>()
                    .join("\n");
                emit(format, json!(rows), text);
                Ok(ExitCode::SUCCESS)
            }
            CatalogAction::Build { output, config } => {
                let built;
                let entries = match config {
                    Some(path) => {
                        let text = std::fs::read_to_string(path)
                            .with_context(|| format!("reading {}", path.display()))?;
                        let config: catalog::CatalogConfig = serde_json::from_str(&text)
                            .with_context(|| format!("parsing {}", path.display()))?;
                        built = catalog::build_catalog(&config)?;
                        &built[..]
                    }
                    None => catalog::default_catalog(),
                };
                let index = catalog::write_catalog_dir(entries, output)?;
                emit(
                    format,
                    json!({"dir": output, "entries": index.len()}),
                    format!("wrote {} group files to {}", index.len(), output.display()),
                );
                Ok(ExitCode::SUCCESS)
            }
        },

        Command::Bench {
            jobs_files,
            output,
            sweep_cap,
        } => {
            if jobs_files.is_empty() {
                bail!("bench needs at least one job file");
            }
            let mut jobs = Vec::new();
            for path in jobs_files {
                let (file, job) = files::read_job(path)?;
                let name = file.name.unwrap_or_else(|| {
                    path.file_stem()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .to_string()
                });
                jobs.push((name, job));
            }
            let bench_options = bench::BenchOptions {
                check: options,
                sweep_cap: sweep_cap.unwrap_or(bench::DEFAULT_SWEEP_CAP),
            };
            let (outcome, sentences) = bench::bench_family(&jobs, &bench_options);
            bench::write_outputs(&outcome, &sentences, output)?;
            let all_ok = outcome.records.iter().all(bench::BenchRecord::ok);
            match format {
                Format::Csv => print!("{}", bench::to_csv(&outcome)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome)?),
                Format::Text => {
                    for r in &outcome.records {
                        println!(
                            "{:10} order {:4} ℓ={:3} diam={:3} v={} symbols={:4} unique={} {}",
                            r.name,
                            r.order,
                            r.presentation_length,
                            r.diameter,
                            r.v,
                            r.symbol_count,
                            r.unique,
                            r.status
                        );
                    }
                    println!(
                        "ratio symbol/(v+ℓ): min {:.2} max {:.2} mean {:.2}; within bound: {}",
                        outcome.summary.ratio_min,
                        outcome.summary.ratio_max,
                        outcome.summary.ratio_mean,
                        outcome.summary.all_within_bound
                    );
                }
            }
            Ok(ok_or_fail(all_ok))
        }

        Command::PslCheck { n, q } => {
            let p = psl(*n, *q)?;
            let report = psl_row_reduction_check(&p)?;
            emit(
                format,
                serde_json::to_value(&report)?,
                format!(
                    "PSL({n},{q}): order {}, max elementary factors {} ≤ n² = {}: {}",
                    report.group_order,
                    report.max_factors,
                    report.bound,
                    if report.within_bound {
                        "holds"
                    } else {
                        "VIOLATED"
                    }
                ),
            );
            Ok(ok_or_fail(report.within_bound))
        }
    }
}
