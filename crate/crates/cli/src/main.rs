//! Command-line pipeline for pulling subdivisions: pull, cartier,
//! idealize, newton-fan, verify, and a golden-checked reference run.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 domain error,
//! 3 infeasible (not coherent), 4 verification failure.

mod json;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;
use toricsub::cartier::{cartier_from_subdivision, ideal_from_cartier, integralize, support_from_heights};
use toricsub::exactq::Int;
use toricsub::newton::{newton, normal_fan, verify_blowup};
use toricsub::pulling::{pull, pull_with_hyperplane};
use toricsub::Error;

use json::DocError;

const GOLDEN: &str = include_str!("../data/golden.json");

#[derive(Parser)]
#[command(name = "toricsub", version, about = "Pulling subdivisions of rational cones, Cartier data, and blowup fans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pulling subdivision of a cone along a contained cone
    Pull {
        /// Cone document for the subdivided cone
        #[arg(long)]
        sigma: PathBuf,
        /// Cone document for the cone pulled along
        #[arg(long)]
        tau: PathBuf,
        /// Admissible hyperplane as comma-separated "a_1,...,a_n,c"
        #[arg(long)]
        hyperplane: Option<String>,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral Cartier data of a subdivision relative to an ambient fan
    Cartier {
        /// Fan document for the subdivision, with ray heights
        #[arg(long)]
        subdivision: PathBuf,
        /// Fan document for the ambient fan
        #[arg(long)]
        ambient: PathBuf,
        /// Interpolate the stored ray heights instead of solving inequalities
        #[arg(long)]
        from_heights: bool,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monomial ideals whose blowups realize the Cartier data
    Idealize {
        /// Cartier data document
        #[arg(long)]
        cartier: PathBuf,
        /// Fan document for the ambient fan
        #[arg(long)]
        ambient: PathBuf,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inner normal fan of the Newton polyhedron of a monomial ideal
    NewtonFan {
        /// Ideal document
        #[arg(long)]
        ideal: PathBuf,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the ideals' blowup fans reproduce the subdivision
    Verify {
        /// Fan document for the subdivision
        #[arg(long)]
        sigma: PathBuf,
        /// Fan document for the ambient fan
        #[arg(long)]
        ambient: PathBuf,
        /// Ideal-list document, one ideal per ambient maximal cone
        #[arg(long)]
        ideals: PathBuf,
    },
    /// Re-run the reference example and compare against golden values
    ReproducePaper {
        /// Alternative golden file
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Emit the machine-readable report instead of text
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Io(String),
    Doc(DocError),
    Domain(Error),
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Doc(DocError::Malformed(_)) => 1,
            CliError::Doc(DocError::Domain(e)) | CliError::Domain(e) => match e {
                Error::NotCoherent => 3,
                _ => 2,
            },
            CliError::Verification(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(msg) => msg.clone(),
            CliError::Doc(e) => e.to_string(),
            CliError::Domain(e) => e.to_string(),
            CliError::Verification(msg) => msg.clone(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Doc(e)
    }
}

fn read_value(path: &PathBuf) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_hyperplane(text: &str, rank: usize) -> Result<(Vec<Int>, Int), CliError> {
    let parts: Result<Vec<Int>, _> = text.split(',').map(|p| p.trim().parse::<Int>()).collect();
    let parts = parts.map_err(|_| CliError::Io(format!("bad hyperplane {text:?}")))?;
    if parts.len() != rank + 1 {
        return Err(CliError::Io(format!(
            "hyperplane needs {} entries, got {}",
            rank + 1,
            parts.len()
        )));
    }
    let c = parts[rank].clone();
    Ok((parts[..rank].to_vec(), c))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Pull { sigma, tau, hyperplane, out } => {
            let sigma = json::value_to_cone(&read_value(&sigma)?)?;
            let tau = json::value_to_cone(&read_value(&tau)?)?;
            let sub = match hyperplane {
                Some(text) => {
                    let h = parse_hyperplane(&text, sigma.rank())?;
                    pull_with_hyperplane(&sigma, &tau, &h)?
                }
                None => pull(&sigma, &tau)?,
            };
            emit(&json::subdivision_to_value(&sub), &out)
        }
        Command::Cartier { subdivision, ambient, from_heights, out } => {
            let delta = json::value_to_fan(&read_value(&ambient)?)?;
            let doc = read_value(&subdivision)?;
            let cd = if from_heights {
                let sub = json::value_to_subdivision(&doc)?;
                integralize(&support_from_heights(&sub)?)
            } else {
                let fan = json::value_to_fan(&doc)?;
                cartier_from_subdivision(&fan, &delta)?
            };
            emit(&json::cartier_to_value(&cd), &out)
        }
        Command::Idealize { cartier, ambient, out } => {
            let cd = json::value_to_cartier(&read_value(&cartier)?)?;
            let delta = json::value_to_fan(&read_value(&ambient)?)?;
            let ideals = ideal_from_cartier(&cd, &delta)?;
            emit(&json::ideals_to_value(&ideals), &out)
        }
        Command::NewtonFan { ideal, out } => {
            let ideal = json::value_to_ideal(&read_value(&ideal)?)?;
            let nf = normal_fan(&newton(&ideal)?)?;
            emit(&json::fan_to_value(&nf, None), &out)
        }
        Command::Verify { sigma, ambient, ideals } => {
            let sigma = json::value_to_fan(&read_value(&sigma)?)?;
            let delta = json::value_to_fan(&read_value(&ambient)?)?;
            let docs = json::value_to_ideals(&read_value(&ideals)?)?;
            let tagged: Vec<_> = docs
                .into_iter()
                .map(|ideal| (ideal.ambient.clone(), ideal))
                .collect();
            if verify_blowup(&sigma, &delta, &tagged)? {
                println!("verified: blowup fans reproduce the subdivision");
                Ok(())
            } else {
                Err(CliError::Verification(
                    "blowup fans do not reproduce the subdivision".into(),
                ))
            }
        }
        Command::ReproducePaper { golden, json: as_json } => {
            let golden_text = match &golden {
                Some(path) => fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => GOLDEN.to_string(),
            };
            let golden_value: Value = serde_json::from_str(&golden_text)
                .map_err(|e| CliError::Io(format!("bad golden file: {e}")))?;
            let computed = report::compute_report()?;
            if as_json {
                print!("{}\n", serde_json::to_string_pretty(&computed).expect("report serializes"));
            } else {
                print!("{}", report::render_text(&computed));
            }
            if computed == golden_value {
                println!("all values match");
                Ok(())
            } else {
                let keys = report::diff_keys(&computed, &golden_value);
                for k in &keys {
                    eprintln!("mismatch at {k}:");
                    eprintln!("  computed: {}", computed.get(k.as_str()).unwrap_or(&Value::Null));
                    eprintln!("  golden:   {}", golden_value.get(k.as_str()).unwrap_or(&Value::Null));
                }
                Err(CliError::Verification(format!(
                    "{} report section(s) differ from golden values",
                    keys.len()
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
