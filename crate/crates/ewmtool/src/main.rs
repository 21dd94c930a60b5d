use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ewm_core::morph::{classify_subset, combinations, minimal_parabolic_subsets, SubsetVerdict};
use ewm_core::oracle::crosscheck;
use ewm_core::well::{chi_well, chi_well_with_bottom};
use ewmtool::case::{case_paths, load_case, CaseFile};
use ewmtool::regress::{compute_generators, run_all, well_case};
use ewmtool::render;

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "ewmtool", version, about = "Extended weight monoids of spherical homogeneous spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Distinguished,
    Parabolic,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generators of the extended weight monoid.
    Generators {
        /// Case file.
        case: PathBuf,
    },
    /// Classify subsets of colors.
    Subsets {
        /// Case file.
        case: PathBuf,
        /// Property to report.
        #[arg(long, value_enum, default_value_t = Kind::Parabolic)]
        kind: Kind,
        /// Only minimal subsets with the property (non-empty ones for
        /// distinguished subsets).
        #[arg(long)]
        minimal: bool,
        /// Query one subset, given as comma-separated color ids.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Enumerate a chi-well.
    Well {
        /// Case file.
        case: PathBuf,
        /// The character, e.g. "3*w1".
        #[arg(long)]
        chi: String,
        /// Bound on the coefficient sum.
        #[arg(long, default_value_t = 6)]
        bound: u64,
        /// Also compute the bottom and d_chi.
        #[arg(long)]
        bottom: bool,
    },
    /// Compare the generator table with the branching oracle.
    Verify {
        /// Case file.
        case: PathBuf,
        /// The character, e.g. "w1".
        #[arg(long, default_value = "0")]
        chi: String,
        /// Bound on the coordinate sum of the weights checked.
        #[arg(long, default_value_t = 4)]
        bound: u64,
    },
    /// Run the regression on every case of a directory.
    Regress {
        /// Case directory.
        #[arg(env = "EWMTOOL_CASE_DIR", default_value = "cases")]
        dir: PathBuf,
    },
}

struct Failure(u8, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(INPUT_ERROR, e.to_string())
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("serializable")),
    }
}

fn load(path: &PathBuf) -> Result<CaseFile, Failure> {
    load_case(path).map_err(input)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Generators { case } => {
            let c = load(&case)?;
            let comp = compute_generators(&c).map_err(input)?;
            emit(
                format,
                render::generators_text(&c.ambient, &comp.table, &comp.delta_prime),
                render::generators_json(&c.id, &comp.table, &comp.delta_prime),
            );
            Ok(OK)
        }
        Command::Subsets { case, kind, minimal, subset } => {
            let c = load(&case)?;
            let d = c.datum.as_ref().ok_or_else(|| input("case has no spherical datum"))?;
            let kind_name = match kind {
                Kind::Distinguished => "distinguished",
                Kind::Parabolic => "parabolic",
            };
            let has = |v: &SubsetVerdict| match kind {
                Kind::Distinguished => v.distinguished,
                Kind::Parabolic => v.parabolic,
            };
            let verdicts: Vec<SubsetVerdict> = if let Some(s) = subset {
                let ids: Vec<&str> = s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
                vec![classify_subset(d, &ids).map_err(input)?]
            } else if minimal && kind == Kind::Parabolic {
                minimal_parabolic_subsets(d, false)
                    .iter()
                    .map(|s| classify_subset(d, &s.iter().map(String::as_str).collect::<Vec<_>>()))
                    .collect::<Result<_, _>>()
                    .map_err(input)?
            } else {
                let n = d.colors.len();
                let mut all = Vec::new();
                for k in 0..=n {
                    for idx in combinations(n, k) {
                        let ids: Vec<&str> = idx.iter().map(|&i| d.colors[i].id.as_str()).collect();
                        let v = classify_subset(d, &ids).map_err(input)?;
                        if has(&v) {
                            all.push(v);
                        }
                    }
                }
                if minimal {
                    let sets: Vec<_> = all.iter().map(|v| v.subset.clone()).collect();
                    all.retain(|v| {
                        !v.subset.is_empty()
                            && !sets.iter().any(|s| {
                                !s.is_empty() && s.len() < v.subset.len() && s.iter().all(|x| v.subset.contains(x))
                            })
                    });
                }
                all
            };
            emit(format, render::subsets_text(&verdicts, kind_name), render::subsets_json(&verdicts));
            Ok(OK)
        }
        Command::Well { case, chi, bound, bottom } => {
            let c = load(&case)?;
            let chi = c.space.parse(&chi).map_err(input)?;
            let comp = compute_generators(&c).map_err(input)?;
            let w = well_case(&c, &comp.table)
                .map_err(input)?
                .ok_or_else(|| input("case declares no well generator classes"))?;
            let r = if bottom { chi_well_with_bottom(&w, &chi, bound) } else { chi_well(&w, &chi, bound) }
                .map_err(input)?;
            emit(format, render::well_text(&c.ambient, &comp.table, &r), render::well_json(&comp.table, &r));
            Ok(OK)
        }
        Command::Verify { case, chi, bound } => {
            let c = load(&case)?;
            let chi = c.space.parse(&chi).map_err(input)?;
            let comp = compute_generators(&c).map_err(input)?;
            let w = well_case(&c, &comp.table)
                .map_err(input)?
                .ok_or_else(|| input("case declares no well generator classes"))?;
            let s = c.branching.as_ref().ok_or_else(|| input("case has no branching setup"))?;
            let rep = crosscheck(s, &w, &chi, bound).map_err(input)?;
            emit(format, render::crosscheck_text(&c.ambient, &rep), render::crosscheck_json(&rep));
            Ok(if rep.clean() { OK } else { MISMATCH })
        }
        Command::Regress { dir } => {
            let paths = case_paths(&dir).map_err(input)?;
            if paths.is_empty() {
                return Err(input(format!("{}: no case files", dir.display())));
            }
            let cases = paths.iter().map(|p| load_case(p)).collect::<Result<Vec<_>, _>>().map_err(input)?;
            let reports = run_all(&cases);
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let text = reports.iter().map(ToString::to_string).collect::<String>()
                + &format!("{} cases, {} passed, {} failed\n", reports.len(), reports.len() - failed, failed);
            let json = serde_json::json!({
                "cases": reports.iter().map(|r| serde_json::json!({
                    "id": r.id,
                    "passed": r.passed(),
                    "checks": r.checks.iter().map(|c| serde_json::json!({
                        "name": c.name, "passed": c.passed, "detail": c.detail,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "failed": failed,
            });
            emit(format, text, json);
            Ok(if failed == 0 { OK } else { MISMATCH })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
