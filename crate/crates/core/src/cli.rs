//! Command-line front end for the `tensorcalc` binary.
//!
//! Exit codes: 0 on success, 1 for usage, parse and validation errors (and
//! for a failed `verify-law` or `check-exercises`), 2 for numeric failures
//! such as singular frames or superluminal velocities.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::document::{
    format_number, parse_basis, parse_bindings, parse_frame, parse_tensor, tensor_to_string,
};
use crate::einsum::{self, Mode};
use crate::error::Error;
use crate::exercises::{self, Config};
use crate::frames::{transform, verify_transform_law};
use crate::metric::{cross, inner, inner_covariant, metric_from_basis, triple, Metric};
use crate::minkowski::{boost, rapidity};
use crate::tensor::{TensorObject, Variance};

#[derive(Parser, Debug)]
#[command(name = "tensorcalc", version, about = "Coordinate tensor algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an index expression against tensor documents.
    Eval {
        /// Tensor files. A file holding one document binds it under its file
        /// stem; `NAME=FILE` binds it explicitly; a JSON object of named
        /// documents binds each entry.
        #[arg(long, num_args = 1.., required = true)]
        bindings: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        /// Index expression. May also follow the binding files directly.
        expr: Option<String>,
    },
    /// Apply the change-of-frame law to a tensor document.
    Transform {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Overrides the weight stored in the input document.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<i32>,
    },
    /// Check whether OLD and NEW are related by the law of the given weight.
    VerifyLaw {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        old: PathBuf,
        #[arg(long)]
        new: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        weight: i32,
    },
    /// Scalar product of two vectors (both contravariant or both covariant).
    Dot(ProductArgs),
    /// Cross product of two contravariant vectors (dimension 3).
    Cross(ProductArgs),
    /// Triple product of three contravariant vectors (dimension 3).
    Triple(ProductArgs),
    /// Boost matrix along the first spatial axis.
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
    /// Rapidity artanh(beta).
    Rapidity {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
    /// Run the built-in verification suite.
    CheckExercises {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=6))]
        dim: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Only run checks whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
        /// Include per-check elapsed times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("geometry").required(true).args(["metric", "basis"])))]
struct ProductArgs {
    /// Metric tensor document with slots ["down","down"].
    #[arg(long)]
    metric: Option<PathBuf>,
    /// Basis document `{"dim": d, "vectors": [[..]]}`.
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(required = true)]
    vectors: Vec<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Strict,
    Orthogonal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Orthogonal => Mode::Orthogonal,
        }
    }
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams and returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numeric() {
                2
            } else {
                1
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Keeps the numeric classification of document errors while prefixing the
/// file name for everything else.
fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, crate::DocumentError>) -> Result<T, Error> {
    let text = read(path)?;
    match parse(&text) {
        Ok(v) => Ok(v),
        Err(crate::DocumentError::Tensor(t)) if t.is_numeric() => Err(Error::Tensor(t)),
        Err(e) => Err(Error::Usage(format!("{}: {e}", path.display()))),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn load_bindings(specs: &[String]) -> Result<BTreeMap<String, TensorObject>, Error> {
    let mut map = BTreeMap::new();
    for spec in specs {
        let (explicit, file) = match spec.split_once('=') {
            Some((name, file)) if !name.is_empty() && !Path::new(spec).exists() => {
                (Some(name.to_string()), file)
            }
            _ => (None, spec.as_str()),
        };
        let path = Path::new(file);
        let docs = load(path, parse_bindings)?;
        for (name, t) in docs {
            let name = match (name, &explicit) {
                (Some(n), None) => n,
                (None, Some(n)) => n.clone(),
                (None, None) => path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .ok_or_else(|| Error::Usage(format!("{}: cannot derive a binding name", path.display())))?
                    .to_string(),
                (Some(_), Some(_)) => {
                    return Err(Error::Usage(format!(
                        "{spec}: NAME= applies only to files holding a single document"
                    )))
                }
            };
            if map.insert(name.clone(), t).is_some() {
                return Err(Error::Usage(format!("binding `{name}` given more than once")));
            }
        }
    }
    Ok(map)
}

fn load_geometry(args: &ProductArgs) -> Result<Metric, Error> {
    if let Some(p) = &args.metric {
        let g = load(p, parse_tensor)?;
        return Ok(Metric::new(g)?);
    }
    let p = args.basis.as_ref().expect("clap enforces the group");
    let basis = load(p, parse_basis)?;
    Ok(metric_from_basis(&basis)?)
}

fn load_vectors(args: &ProductArgs, count: usize) -> Result<Vec<TensorObject>, Error> {
    if args.vectors.len() != count {
        return Err(Error::Usage(format!(
            "expected {count} vector files, got {}",
            args.vectors.len()
        )));
    }
    args.vectors.iter().map(|p| load(p, parse_tensor)).collect()
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Eval {
            mut bindings,
            mode,
            expr,
        } => {
            // `--bindings a.json b.json "EXPR"` hands the expression to the list
            let expr = match expr {
                Some(e) => e,
                None if bindings.len() >= 2 => bindings.pop().expect("non-empty"),
                None => return Err(Error::Usage("missing index expression".into())),
            };
            let map = load_bindings(&bindings)?;
            let t = einsum::evaluate(&expr, &map, mode.into())?;
            out.write_all(tensor_to_string(&t).as_bytes()).map_err(io)?;
        }
        Command::Transform { frame, input, weight } => {
            let f = load(&frame, parse_frame)?;
            let mut t = load(&input, parse_tensor)?;
            if let Some(w) = weight {
                t = t.with_weight(w);
            }
            out.write_all(tensor_to_string(&transform(&t, &f)?).as_bytes())
                .map_err(io)?;
        }
        Command::VerifyLaw {
            frame,
            old,
            new,
            weight,
        } => {
            let f = load(&frame, parse_frame)?;
            let old = load(&old, parse_tensor)?;
            let new = load(&new, parse_tensor)?;
            let ok = verify_transform_law(&old, &new, &f, weight)?;
            writeln!(out, "{}", if ok { "pass" } else { "fail" }).map_err(io)?;
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Dot(args) => {
            let m = load_geometry(&args)?;
            let v = load_vectors(&args, 2)?;
            let value = match (v[0].slots(), v[1].slots()) {
                ([Variance::Up], [Variance::Up]) => inner(&v[0], &v[1], &m)?,
                ([Variance::Down], [Variance::Down]) => inner_covariant(&v[0], &v[1], &m)?,
                _ => {
                    return Err(Error::Usage(
                        "dot needs two contravariant or two covariant vectors".into(),
                    ))
                }
            };
            let s = TensorObject::scalar(m.dim(), value);
            out.write_all(tensor_to_string(&s).as_bytes()).map_err(io)?;
        }
        Command::Cross(args) => {
            let m = load_geometry(&args)?;
            let v = load_vectors(&args, 2)?;
            out.write_all(tensor_to_string(&cross(&v[0], &v[1], &m)?).as_bytes())
                .map_err(io)?;
        }
        Command::Triple(args) => {
            let m = load_geometry(&args)?;
            let v = load_vectors(&args, 3)?;
            let s = TensorObject::scalar(m.dim(), triple(&v[0], &v[1], &v[2], &m)?);
            out.write_all(tensor_to_string(&s).as_bytes()).map_err(io)?;
        }
        Command::Boost { beta } => {
            let b = boost(beta)?;
            out.write_all(tensor_to_string(&b.to_tensor()).as_bytes())
                .map_err(io)?;
        }
        Command::Rapidity { beta } => {
            let psi = rapidity(beta)?;
            let s = TensorObject::scalar(4, psi.psi);
            out.write_all(tensor_to_string(&s).as_bytes()).map_err(io)?;
        }
        Command::CheckExercises {
            dim,
            seed,
            tol,
            filter,
            json,
            timings,
        } => {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Error::Usage(format!(
                    "--tol must be positive, got {}",
                    format_number(tol)
                )));
            }
            let report = exercises::run(&Config {
                dim: dim as usize,
                seed,
                tol,
                filter,
            });
            let text = if json {
                report.to_json(timings)
            } else {
                report.to_table(timings)
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}
