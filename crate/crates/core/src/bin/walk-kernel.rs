use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use walk_kernel::arith::Rat;
use walk_kernel::classify::{classify_named, reproduce_four_model_table, ClassifyOptions};
use walk_kernel::curve::{Curve, CurvePoint};
use walk_kernel::kernel::build_kernel;
use walk_kernel::model::{builtin_model, ModelFile, StepWeights, BUILTINS};
use walk_kernel::series::enumerate;
use walk_kernel::verify::{verify_all, DEFAULT_ORDER};

#[derive(Parser)]
#[command(name = "walk-kernel", version, about = "Exact tools for weighted walks in the three-quarter plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
    /// Print the kernel and its coefficient polynomials.
    Info {
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "1/2")]
        t: Rat,
        /// Use the kernel after the change of variables.
        #[arg(long)]
        transformed: bool,
    },
    /// Weighted walk counts as CSV rows `n,i,j,"p/q"`.
    Enumerate {
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check that the three functional equations hold up to the given order.
    Verify {
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "1/2")]
        t: Rat,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Follow a pole of y through the involutions.
    Orbit {
        #[arg(long)]
        model: String,
        #[arg(long)]
        t: Rat,
        #[arg(long, value_enum, default_value_t = Start::P1)]
        from: Start,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Work on the curve of the untransformed kernel.
        #[arg(long)]
        plain: bool,
    },
    /// Order of the QRT map at a generic point, if at most `max`.
    ProbeGroup {
        #[arg(long)]
        model: String,
        #[arg(long)]
        t: Rat,
        #[arg(long, default_value_t = 200)]
        max: u32,
    },
    /// Classify the generating series of a model.
    Classify {
        #[arg(long)]
        model: String,
        #[arg(long, value_delimiter = ',')]
        t_samples: Option<Vec<Rat>>,
        #[arg(long, default_value_t = 25)]
        k_max: u32,
        #[arg(long, default_value_t = 200)]
        n_max: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-derive a published classification table.
    Reproduce {
        #[arg(value_enum)]
        which: Reproducible,
    },
}

#[derive(Subcommand)]
enum ModelsAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Start {
    #[value(name = "P1")]
    P1,
    #[value(name = "P2")]
    P2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reproducible {
    /// The four unweighted symmetric models with an infinite group.
    #[value(name = "thm4.15")]
    FourModels,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<walk_kernel::Error> for Failure {
    fn from(e: walk_kernel::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load_model(arg: &str) -> Result<StepWeights, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return Ok(text.parse::<ModelFile>()?.weights()?);
    }
    Ok(builtin_model(arg)?)
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n"
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Models { action: ModelsAction::List } => {
            for b in BUILTINS {
                println!("{:<14} {}", b.name, b.description);
            }
        }
        Command::Info { model, t, transformed } => {
            let w = load_model(&model)?;
            println!("weights: {w}");
            println!("{}", build_kernel(&w, &t, transformed)?);
        }
        Command::Enumerate { model, n, csv } => {
            let table = enumerate(&load_model(&model)?, n);
            match csv {
                Some(path) => write_out(&path, &table.to_csv())?,
                None => print!("{}", table.to_csv()),
            }
        }
        Command::Verify { model, t, order } => {
            let report = verify_all(&load_model(&model)?, &t, order)?;
            let mut failed = Vec::new();
            for (name, res) in &report.residuals {
                match res.first_nonzero() {
                    None => println!("{name}: zero residual up to t^{order}"),
                    Some(term) => {
                        println!(
                            "{name}: nonzero residual, first at t^{} x^{} y^{}: {}",
                            term.n, term.i, term.j, term.coeff
                        );
                        failed.push(*name);
                    }
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Check(format!("nonzero residual in {}", failed.join(", "))));
            }
        }
        Command::Orbit { model, t, from, steps, json, plain } => {
            let w = load_model(&model)?;
            let curve = Curve::new(&build_kernel(&w, &t, !plain)?);
            let start = match from {
                Start::P1 => CurvePoint::ints((0, 1), (1, 0)),
                Start::P2 => curve
                    .poles()?
                    .p2
                    .ok_or_else(|| Failure::Usage("y has a double pole: there is no P2".into()))?,
            };
            let nodes = curve.orbit(&start, steps)?;
            for node in &nodes {
                println!("{:>3} {:<6} {}", node.step, node.map, node.point);
            }
            if let Some(path) = json {
                let arr: Vec<_> = nodes.iter().map(|n| n.to_json()).collect();
                write_out(&path, &pretty(&serde_json::to_value(arr).expect("plain data")))?;
            }
        }
        Command::ProbeGroup { model, t, max } => {
            let curve = Curve::new(&build_kernel(&load_model(&model)?, &t, true)?);
            match curve.group_order_probe(max)? {
                Some(n) => println!("closure: sigma^{n} = id at a generic point"),
                None => println!("no closure up to n = {max}"),
            }
        }
        Command::Classify { model, t_samples, k_max, n_max, json } => {
            let w = load_model(&model)?;
            let mut opts = ClassifyOptions { k_max, n_max, ..ClassifyOptions::default() };
            if let Some(ts) = t_samples {
                opts.t_samples = ts;
            }
            let text = pretty(&classify_named(&w, &model, &opts)?.to_json());
            print!("{text}");
            if let Some(path) = json {
                write_out(&path, &text)?;
            }
        }
        Command::Reproduce { which: Reproducible::FourModels } => {
            let table = reproduce_four_model_table(&ClassifyOptions::default())?;
            print!("{}", table.render());
            if !table.matches() {
                return Err(Failure::Check("verdicts differ from the expected table".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
