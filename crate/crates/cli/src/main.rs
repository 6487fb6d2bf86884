use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fieldsep::FactorConfig;
use fieldsep_cli::commands::{self, CliError, Command, Output};
use fieldsep_cli::parse::parse_tower;

#[derive(Parser)]
#[command(name = "fieldsep", version, about = "Separability workbench for towers over F_p and F_p(t)")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Height bound for the fallback divisor search over F_p(t).
    #[arg(long, global = true, default_value_t = 6)]
    height_bound: usize,
    /// Seed for randomized factoring.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct TowerArg {
    /// Tower file; standard input when omitted or `-`.
    file: Option<String>,
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|n| !n.is_empty()).map(String::from).collect()
}

#[derive(Subcommand)]
enum Cmd {
    /// Separability report for the extension or one named element.
    Check {
        #[command(flatten)]
        tower: TowerArg,
        #[arg(long)]
        element: Option<String>,
    },
    /// Number of embeddings into the splitting field, optionally fixing a subfield.
    HomCount {
        #[command(flatten)]
        tower: TowerArg,
        /// Comma-separated generators of the fixed subfield.
        #[arg(long, default_value = "")]
        over: String,
    },
    /// Lists the embeddings into the splitting field.
    Embeddings {
        #[command(flatten)]
        tower: TowerArg,
    },
    /// A primitive element of a separable extension.
    Primitive {
        #[command(flatten)]
        tower: TowerArg,
    },
    /// The separable closure of the base field.
    Closure {
        #[command(flatten)]
        tower: TowerArg,
    },
    /// Intermediate fields, where they can be listed.
    Subfields {
        #[command(flatten)]
        tower: TowerArg,
    },
    /// Compares containment of two subfields with agreement of embeddings.
    L1l2 {
        #[command(flatten)]
        tower: TowerArg,
        #[arg(long, default_value = "")]
        left: String,
        #[arg(long, default_value = "")]
        right: String,
    },
    /// Runs the builtin verification corpus.
    VerifyPaper {
        #[arg(long, default_value = "builtin")]
        corpus: String,
    },
}

fn read_tower(arg: &TowerArg) -> Result<String, CliError> {
    let io = |path: &str, e: std::io::Error| CliError::Io { path: path.into(), message: e.to_string() };
    match arg.file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| io("standard input", e))?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| io(path, e)),
    }
}

fn execute(cli: &Cli, cfg: &FactorConfig) -> Result<Output, CliError> {
    let (tower, cmd) = match &cli.command {
        Cmd::VerifyPaper { corpus } => {
            if corpus != "builtin" {
                return Err(CliError::Usage(format!("unknown corpus `{corpus}`")));
            }
            return Ok(commands::verify(cfg));
        }
        Cmd::Check { tower, element } => (tower, Command::Check { element: element.clone() }),
        Cmd::HomCount { tower, over } => (tower, Command::HomCount { over: split_names(over) }),
        Cmd::Embeddings { tower } => (tower, Command::Embeddings),
        Cmd::Primitive { tower } => (tower, Command::Primitive),
        Cmd::Closure { tower } => (tower, Command::Closure),
        Cmd::Subfields { tower } => (tower, Command::Subfields),
        Cmd::L1l2 { tower, left, right } => {
            (tower, Command::L1L2 { left: split_names(left), right: split_names(right) })
        }
    };
    let loaded = parse_tower(&read_tower(tower)?, cfg)?;
    commands::run(&loaded, &cmd, cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = FactorConfig { height_bound: cli.height_bound, seed: cli.seed };
    match execute(&cli, &cfg) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else if matches!(cli.command, Cmd::VerifyPaper { .. }) {
                print!("{}", commands::render_verify(&out.json));
            } else {
                print!("{}", commands::render_text(&out.json));
            }
            ExitCode::from(u8::from(out.violated))
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
