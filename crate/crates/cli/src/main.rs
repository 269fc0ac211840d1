use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qsg_cli::verify::{self, Suite, VerifyConfig};
use qsg_core::generic_cbar::{check_corollaries, export_lifts, validate, CbarPresentation};
use qsg_core::homology::{
    h2_conj_sn_with, stabilizer_ab_closed, stabilizer_ab_snf, stabilizer_presentation, Limits,
    Method,
};
use qsg_core::quandle::FiniteQuandle;
use qsg_core::structure_group::{evaluate, express, AElement};
use qsg_core::{AbelianGroup, Error, Partition};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qsg",
    version,
    about = "Structure groups and second homology of conjugation quandles"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Snf,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Snf => Method::Snf,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// H2(Conj(S_n)).
    H2 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// H2(Conj(S_n)) for n = 1..=max-n.
    Table {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Stabilizer relation matrix with both readings of its cokernel.
    Stab {
        #[arg(long)]
        n: usize,
        /// Decreasing parts, e.g. "2,2,1".
        #[arg(long)]
        partition: String,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Corrupt one SNF pivot; the homology suite must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Finite quandles given as operation tables.
    Quandle {
        #[command(subcommand)]
        action: QuandleAction,
    },
    /// Finite groups given by generating permutations and relations.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Write an element of A(S_n) as a word in the generators.
    Express {
        #[arg(long)]
        n: usize,
        /// {"perm": [images], "vec": {"3,2": 1, ...}}
        #[arg(long)]
        elem: String,
    },
}

#[derive(Subcommand)]
enum QuandleAction {
    /// Validate a quandle table file.
    Check(FileArg),
}

#[derive(Subcommand)]
enum GroupAction {
    /// Validate a presentation and enumerate the group.
    Check(FileArg),
    /// Check the structure-group corollaries.
    Corollaries(FileArg),
    /// Export the Artin and Dehn lifts.
    Lifts(FileArg),
}

#[derive(Args)]
struct FileArg {
    #[arg(long)]
    file: PathBuf,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::OutOfRange { .. })
            | Some(Error::InvalidArgument(_))
            | Some(Error::InvalidPartition(_))
            | Some(Error::PartitionSize { .. })
            | Some(Error::Parse(_)) => Failure::Usage(e),
            _ => Failure::Check(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Guards, optionally raised through `QSG_MAX_N`.
fn limits() -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var("QSG_MAX_N") {
        let m: usize = raw.trim().parse().map_err(|_| {
            Failure::Usage(anyhow::anyhow!(
                "QSG_MAX_N={raw:?} is not a non-negative integer"
            ))
        })?;
        limits.closed = limits.closed.max(m);
        limits.snf = limits.snf.max(m);
    }
    Ok(limits)
}

fn group_json(g: &AbelianGroup) -> serde_json::Value {
    json!({
        "free_rank": g.free_rank,
        "invariant_factors": g.invariant_factors,
        "primary": g.primary_string(),
        "invariant": g.invariant_factor_string(),
    })
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::H2 { n, method } => {
            let method = Method::from(method);
            let g = h2_conj_sn_with(n, method, &limits()?)?;
            match format {
                Format::Text => {
                    println!("{g}");
                    println!("invariant factors: {}", g.invariant_factor_string());
                }
                Format::Json => print_json(&json!({
                    "n": n,
                    "method": method.to_string(),
                    "group": group_json(&g),
                })),
            }
        }
        Command::Table { max_n } => {
            let limits = limits()?;
            if max_n == 0 || max_n > limits.snf {
                return Err(Failure::Usage(anyhow::anyhow!(
                    "--max-n must lie in 1..={} (QSG_MAX_N raises the bound)",
                    limits.snf
                )));
            }
            let mut rows = Vec::new();
            for n in 1..=max_n {
                let g = h2_conj_sn_with(n, Method::Both, &limits)?;
                match format {
                    Format::Text => println!("n = {n}: {g}"),
                    Format::Json => rows.push(json!({"n": n, "group": group_json(&g)})),
                }
            }
            if format == Format::Json {
                print_json(&json!(rows));
            }
        }
        Command::Stab { n, partition } => {
            let lambda: Partition = partition
                .parse()
                .map_err(|e: Error| Failure::Usage(anyhow::Error::new(e)))?;
            let pres = stabilizer_presentation(&lambda, n)?;
            let snf = stabilizer_ab_snf(&lambda, n)?;
            let closed = stabilizer_ab_closed(&lambda, n)?;
            match format {
                Format::Text => {
                    println!("partition: {lambda}");
                    print!("{pres}");
                    println!("snf:    {snf}");
                    println!("closed: {closed}");
                    println!("agree:  {}", snf == closed);
                }
                Format::Json => {
                    let labels: Vec<String> =
                        pres.generators.iter().map(|g| g.to_string()).collect();
                    let rows: Vec<Vec<String>> = (0..pres.relations.rows())
                        .map(|i| {
                            pres.relations
                                .row(i)
                                .iter()
                                .map(|x| x.to_string())
                                .collect()
                        })
                        .collect();
                    print_json(&json!({
                        "partition": lambda.to_csv(),
                        "generators": labels,
                        "relations": rows,
                        "snf": group_json(&snf),
                        "closed": group_json(&closed),
                        "agree": snf == closed,
                    }));
                }
            }
            if snf != closed {
                return Err(Failure::Check(anyhow::anyhow!(
                    "methods disagree for {lambda}"
                )));
            }
        }
        Command::Verify {
            suite,
            n,
            seed,
            samples,
            inject_fault,
        } => {
            let suite: Suite = suite
                .parse()
                .map_err(|e: String| Failure::Usage(anyhow::anyhow!(e)))?;
            let cfg = VerifyConfig {
                n,
                seed,
                samples,
                inject_fault,
                limits: limits()?,
            };
            let results =
                verify::run(suite, &cfg).map_err(|e| Failure::Usage(anyhow::anyhow!(e)))?;
            match format {
                Format::Text => {
                    for r in &results {
                        println!("{r}");
                    }
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = results
                        .iter()
                        .map(|r| match &r.outcome {
                            Ok(s) => json!({"suite": r.suite, "check": r.check, "passed": true, "detail": s}),
                            Err(s) => json!({"suite": r.suite, "check": r.check, "passed": false, "detail": s}),
                        })
                        .collect();
                    print_json(&json!({"n": n, "seed": seed, "results": items}));
                }
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(Failure::Check(anyhow::anyhow!("{failed} check(s) failed")));
            }
        }
        Command::Quandle {
            action: QuandleAction::Check(f),
        } => {
            let text = read(&f.file)?;
            let q = FiniteQuandle::from_text(&text)?;
            match q.check_axioms() {
                Ok(()) => {
                    let orbits = q.orbits();
                    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
                    match format {
                        Format::Text => {
                            println!("valid quandle of size {}", q.size());
                            println!("{} orbit(s) of sizes {sizes:?}", orbits.len());
                        }
                        Format::Json => print_json(&json!({
                            "valid": true,
                            "size": q.size(),
                            "orbits": orbits.iter().map(|o| o.iter().map(|a| a + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        })),
                    }
                }
                Err(v) => {
                    if format == Format::Json {
                        print_json(
                            &json!({"valid": false, "size": q.size(), "violation": v.to_string()}),
                        );
                    }
                    return Err(Failure::Check(anyhow::Error::new(Error::Axiom(v))));
                }
            }
        }
        Command::Group { action } => {
            let (kind, file) = match &action {
                GroupAction::Check(f) => ("check", &f.file),
                GroupAction::Corollaries(f) => ("corollaries", &f.file),
                GroupAction::Lifts(f) => ("lifts", &f.file),
            };
            let text = read(file)?;
            let pres = CbarPresentation::from_json(&text)?;
            match kind {
                "lifts" => {
                    let (artin, dehn) = export_lifts(&pres);
                    match format {
                        Format::Text => {
                            println!("artin lift:");
                            print!("{artin}");
                            println!("dehn lift:");
                            print!("{dehn}");
                        }
                        Format::Json => print_json(&json!({"artin": artin, "dehn": dehn})),
                    }
                }
                "check" => {
                    let table = validate(&pres)?;
                    let ab = table.ab_group()?;
                    match format {
                        Format::Text => {
                            println!("order: {}", table.order());
                            println!(
                                "classes: {} ({} generator)",
                                table.class_count(),
                                table.generator_classes().len()
                            );
                            println!("Ab(G): {ab}");
                        }
                        Format::Json => print_json(&json!({
                            "order": table.order(),
                            "classes": table.class_count(),
                            "generator_classes": table.generator_classes().len(),
                            "ab": group_json(&ab),
                        })),
                    }
                }
                _ => {
                    let table = validate(&pres)?;
                    let report = check_corollaries(&table)?;
                    match format {
                        Format::Text => println!("{report}"),
                        Format::Json => {
                            print_json(&serde_json::to_value(&report).expect("serializable"))
                        }
                    }
                }
            }
        }
        Command::Express { n, elem } => {
            let f = AElement::from_json(&elem)?;
            if f.degree_n() != n {
                return Err(Failure::Usage(anyhow::anyhow!(
                    "element has degree {}, but --n is {n}",
                    f.degree_n()
                )));
            }
            let word = express(&f)?;
            let back = evaluate(&word, n)?;
            match format {
                Format::Text => {
                    let letters: Vec<String> = word
                        .letters
                        .iter()
                        .map(|l| {
                            if l.exp > 0 {
                                format!("e{}", l.perm)
                            } else {
                                format!("e{}^-1", l.perm)
                            }
                        })
                        .collect();
                    println!(
                        "{}",
                        if letters.is_empty() {
                            "1".to_string()
                        } else {
                            letters.join(" ")
                        }
                    );
                    println!("length: {}", word.len());
                }
                Format::Json => print_json(&json!({"word": word.to_json(), "length": word.len()})),
            }
            if back != f {
                bail_check(format!("word evaluates to {back}, not {f}"))?;
            }
        }
    }
    Ok(())
}

fn bail_check(msg: String) -> Outcome {
    Err(Failure::Check(anyhow::anyhow!(msg)))
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)
}
