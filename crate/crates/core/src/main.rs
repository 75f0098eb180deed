use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use brauer_b::admissible::{orbit_size, OrbitRep};
use brauer_b::combinat::rank_formula;
use brauer_b::connector::{class_formula, render_ascii, ConnectorClass};
use brauer_b::normalform::{AlgebraElement, BrauerAlgebra};
use brauer_b::verify::{self, Suite};
use brauer_b::Error;

#[derive(Parser)]
#[command(name = "brauer-b", version, about = "Exact computations in the Brauer algebra of type B_n")]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RankArg {
    /// Rank, 1 ≤ n ≤ 6.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    n: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension f(n) and its split over the three kinds of symmetric diagrams.
    Rank {
        #[command(flatten)]
        rank: RankArg,
    },
    /// Normal form of a word such as "e0 r1 e0".
    Normalize {
        word: String,
        #[command(flatten)]
        rank: RankArg,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; prints a JSON report.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        rank: RankArg,
    },
    /// Orbit sizes of the admissible-set representatives under W(B_n).
    Orbits {
        #[command(flatten)]
        rank: RankArg,
    },
    /// Stream every basis monomial with its diagram.
    Basis {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Verification,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Rank(_) | Error::RankMismatch(..) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cmd {
        Command::Rank { rank } => {
            let n = rank.n as usize;
            writeln!(out, "{}", rank_formula(n as u64))?;
            for (name, c) in [
                ("through-1", ConnectorClass::TBar),
                ("through-1-horizontal", ConnectorClass::TBarEq),
                ("undecorated-horizontal", ConnectorClass::TeqT0),
            ] {
                writeln!(out, "{name} {}", class_formula(n, c))?;
            }
        }
        Command::Normalize { word, rank, json } => {
            let n = rank.n as usize;
            let alg = BrauerAlgebra::get(n)?;
            let x = alg.normalize_str(&word)?;
            if json {
                let e = AlgebraElement::monomial(n, &x);
                writeln!(out, "{}", alg.element_json(&e))?;
            } else {
                writeln!(out, "{}", alg.pretty(&x)?)?;
            }
        }
        Command::Verify { suite, rank } => {
            let report = verify::run(suite, rank.n as usize)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| Failure::Other(e.to_string()))?)?;
            out.flush()?;
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
        Command::Orbits { rank } => {
            let n = rank.n as usize;
            writeln!(out, "t\tZ\tZ~\tZ-")?;
            for t in 0..=(n + 1) / 2 {
                let cell = |kind: OrbitRep| -> Result<String, Failure> {
                    if kind.t_range(n).contains(&t) {
                        Ok(orbit_size(kind, t, n)?.to_string())
                    } else {
                        Ok("-".into())
                    }
                };
                writeln!(out, "{t}\t{}\t{}\t{}", cell(OrbitRep::Z)?, cell(OrbitRep::ZTilde)?, cell(OrbitRep::ZBar)?)?;
            }
        }
        Command::Basis { rank, format } => {
            let alg = BrauerAlgebra::get(rank.n as usize)?;
            for x in alg.enumerate_basis() {
                let word = alg.pretty(&x)?;
                let d = alg.phi_index(&x)?;
                match format {
                    Format::Json => {
                        let line = serde_json::json!({ "word": word, "class": x.class_i, "t": x.t, "diagram": d });
                        writeln!(out, "{line}")?;
                    }
                    Format::Ascii => {
                        writeln!(out, "{word}")?;
                        writeln!(out, "{}", render_ascii(&d))?;
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}
