use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use tableaux_core::check::{dnf_report, entails_report, sat_report, valid_report};
use tableaux_core::formula::{parse, Formula, ParseError};
use tableaux_core::render::{render_ascii, render_dot, venn_regions};
use tableaux_core::{complete_dnf, rewrite_to_dnf, Tableau, TruthTable};

/// Propositional logic workbench: semantic tableaux, truth tables and DNF.
///
/// Formulas use `~ & | ->` or `¬ ∧ ∨ →`; pass `-` to read a formula from stdin.
/// Exit status: 0 when the queried property holds, 1 when it fails, 2 on bad
/// input.
#[derive(Debug, Parser)]
#[command(name = "tableaux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide satisfiability of one or more formulas and extract a model
    Sat {
        #[arg(required = true)]
        formulas: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide validity; prints a counter-model when the formula is not valid
    Valid {
        formula: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether the premises entail the formula given by --then
    Entails {
        premises: Vec<String>,
        #[arg(long = "then", value_name = "FORMULA")]
        conclusion: String,
        #[command(flatten)]
        out: Output,
    },
    /// Disjunctive normal form, read off the tableau by default
    Dnf {
        formula: String,
        /// One full clause per satisfying truth-table row
        #[arg(long, conflicts_with = "trace")]
        complete: bool,
        /// Rewrite syntactically and print every step
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Truth table, rows from all-true to all-false
    Truthtable {
        formula: String,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Draw the fully expanded tableau
    Render {
        formula: String,
        /// Graphviz DOT output
        #[arg(long, conflicts_with = "ascii")]
        dot: bool,
        /// Indented text tree (the default)
        #[arg(long)]
        ascii: bool,
        /// Render the tableau of the negated formula
        #[arg(long)]
        negated: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Venn-region shading as JSON (at most three atoms)
    Venn { formula: String },
    /// Run the HTTP service
    Serve {
        #[arg(long, env = "TABLEAUX_HOST", default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, env = "TABLEAUX_PORT", default_value_t = 7070)]
        port: u16,
        /// Directory with the built web UI, served under /
        #[arg(long)]
        ui_dir: Option<PathBuf>,
        /// Origin allowed to call the API cross-site; repeatable, `*` for any
        #[arg(long = "cors-origin", value_name = "ORIGIN")]
        cors_origins: Vec<String>,
        /// Persist sessions as JSON files in this directory
        #[arg(long)]
        snapshot_dir: Option<PathBuf>,
    },
}

enum Failure {
    Parse { text: String, error: ParseError },
    Usage(String),
}

type Outcome = Result<bool, Failure>;

fn read_formula(arg: &str) -> Result<Formula, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        buf.trim().to_string()
    } else {
        arg.to_string()
    };
    parse(&text).map_err(|error| Failure::Parse { text, error })
}

fn read_all(args: &[String]) -> Result<Vec<Formula>, Failure> {
    args.iter().map(|a| read_formula(a)).collect()
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Sat { formulas, out } => {
            let report =
                sat_report(&read_all(&formulas)?).map_err(|e| Failure::Usage(e.to_string()))?;
            if out.json {
                print_json(&report);
            } else if let Some(model) = &report.model {
                println!("satisfiable\n{model}\nDNF: {}", report.dnf);
            } else {
                println!("unsatisfiable\nDNF: {}", report.dnf);
            }
            Ok(report.satisfiable)
        }
        Command::Valid { formula, out } => {
            let report = valid_report(&read_formula(&formula)?);
            if out.json {
                print_json(&report);
            } else if let Some(model) = &report.counter_model {
                println!("not valid\ncounter-model:\n{model}");
            } else {
                println!("valid");
            }
            Ok(report.valid)
        }
        Command::Entails {
            premises,
            conclusion,
            out,
        } => {
            let report = entails_report(&read_all(&premises)?, &read_formula(&conclusion)?);
            if out.json {
                print_json(&report);
            } else if let Some(model) = &report.counter_model {
                println!("does not entail\ncounter-model:\n{model}");
            } else {
                println!("entails");
            }
            Ok(report.entails)
        }
        Command::Dnf {
            formula,
            complete,
            trace,
            out,
        } => {
            let f = read_formula(&formula)?;
            if out.json {
                let report = dnf_report(&f).map_err(|e| Failure::Usage(e.to_string()))?;
                if complete {
                    print_json(&report.complete);
                } else if trace {
                    print_json(&report.rewrite);
                } else {
                    print_json(&json!({ "dnf": report.dnf, "clauses": report.clauses }));
                }
            } else if complete {
                let dnf = complete_dnf(&f).map_err(|e| Failure::Usage(e.to_string()))?;
                println!("{dnf}");
            } else if trace {
                let rewrite = rewrite_to_dnf(&f);
                println!("{f}");
                for step in &rewrite.trace {
                    println!("  ⇒ {}    [{}]", step.after, step.rule.describe());
                }
                println!("DNF: {}", rewrite.dnf);
            } else {
                let t = Tableau::build(&[f]).expect("one formula");
                println!("{}", tableaux_core::dnf_from_tableau(&t).expect("finished"));
            }
            Ok(true)
        }
        Command::Truthtable { formula, csv, out } => {
            let table = TruthTable::new(&read_formula(&formula)?)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            if out.json {
                print_json(&table);
            } else if csv {
                print!("{}", table.to_csv());
            } else {
                print!("{}", table.to_text());
            }
            Ok(true)
        }
        Command::Render {
            formula,
            dot,
            ascii: _,
            negated,
            out,
        } => {
            let mut f = read_formula(&formula)?;
            if negated {
                f = Formula::not(f);
            }
            let t = Tableau::build(&[f]).expect("one formula");
            if out.json {
                print_json(&t);
            } else if dot {
                print!("{}", render_dot(&t));
            } else {
                print!("{}", render_ascii(&t));
            }
            Ok(true)
        }
        Command::Venn { formula } => {
            let map = venn_regions(&read_formula(&formula)?)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            print_json(&map);
            Ok(true)
        }
        Command::Serve {
            host,
            port,
            ui_dir,
            cors_origins,
            snapshot_dir,
        } => {
            let config = tableaux_service::Config {
                cors_origins,
                ui_dir,
                snapshot_dir,
            };
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| Failure::Usage(format!("starting runtime: {e}")))?;
            runtime
                .block_on(tableaux_service::serve(SocketAddr::new(host, port), config))
                .map_err(|e| Failure::Usage(format!("serve: {e}")))?;
            Ok(true)
        }
    }
}

fn report_parse_error(text: &str, error: &ParseError) {
    let mut err = io::stderr().lock();
    let _ = writeln!(err, "error: {error}");
    let _ = writeln!(err, "  {text}");
    let _ = writeln!(err, "  {}^", " ".repeat(error.position().saturating_sub(1)));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Parse { text, error }) => {
            report_parse_error(&text, &error);
            ExitCode::from(2)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
