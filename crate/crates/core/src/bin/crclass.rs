use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crclass_core::classify::{classify, lie_hull_rank};
use crclass_core::manifold::{ManifoldFile, PointFile};
use crclass_core::parser::parse_with_dims;
use crclass_core::report;
use crclass_core::{CrError, Dims, ValidatedSpec};

#[derive(Debug, Parser)]
#[command(name = "crclass", version, about = "Exact classification of CR-generic manifolds of dimension at most 5")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Manifold description (JSON with n, c, phi and optional point)
    #[arg(long)]
    input: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Base point override (JSON with z and u)
    #[arg(long)]
    point: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide the class and print rank certificates
    Classify(Common),
    /// Print the intrinsic frame L_i and the forms rho0_j
    Frame(Common),
    /// Print the Levi matrix, its determinant and kernel data
    Levi(Common),
    /// Print the named bracket fields
    Brackets(Common),
    /// Print generic ranks of the iterated bracket filtration
    Hull {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl From<CrError> for Failure {
    fn from(e: CrError) -> Self {
        match e {
            CrError::Internal(m) => Failure::Internal(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load(common: &Common) -> Result<ValidatedSpec, Failure> {
    let text = read(&common.input)?;
    let mut file = ManifoldFile::from_json(&text)?;
    if let Some(p) = &common.point {
        let ptext = read(p)?;
        let point: PointFile =
            serde_json::from_str(&ptext).map_err(|e| Failure::Validation(format!("invalid point file: {e}")))?;
        file.point = Some(point);
    }
    let spec = file.to_spec().map_err(|e| locate(&file, e))?;
    Ok(crclass_core::validate_manifold(spec)?)
}

/// Prefixes parse errors with the index of the offending graphing function.
fn locate(file: &ManifoldFile, e: CrError) -> Failure {
    if matches!(e, CrError::Syntax { .. } | CrError::UnknownVariable { .. } | CrError::ExponentOverflow { .. }) {
        let dims = Dims::new(file.n, file.c);
        for (j, text) in file.phi.iter().enumerate() {
            if let Err(err) = parse_with_dims(text, dims) {
                return Failure::Validation(format!("phi[{j}] = \"{text}\": {err}"));
            }
        }
    }
    Failure::from(e)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Classify(c) => {
            let spec = load(&c)?;
            let r = classify(&spec)?;
            Ok(if c.json {
                report::to_json_string(&report::classification_json(&r))
            } else {
                report::classification_text(&r)
            })
        }
        Command::Frame(c) => {
            let spec = load(&c)?;
            Ok(if c.json { report::to_json_string(&report::frame_json(&spec)?) } else { report::frame_text(&spec)? })
        }
        Command::Levi(c) => {
            let spec = load(&c)?;
            let l = report::levi_summary(&spec)?;
            Ok(if c.json { report::to_json_string(&report::levi_json(&l)) } else { report::levi_text(&l) })
        }
        Command::Brackets(c) => {
            let spec = load(&c)?;
            Ok(if c.json {
                report::to_json_string(&report::brackets_json(&spec)?)
            } else {
                report::brackets_text(&spec)?
            })
        }
        Command::Hull { common, depth } => {
            let spec = load(&common)?;
            let h = lie_hull_rank(&spec, depth as usize)?;
            Ok(if common.json {
                report::to_json_string(&report::hull_json(&spec, &h))
            } else {
                report::hull_text(&spec, &h)
            })
        }
    }
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
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}
