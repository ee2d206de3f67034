//! Command-line surface of the engine: load a model file, run computations
//! and verification suites, print text or JSON, and exit 0 only when every
//! gating check passed (1 on check failures, 2 on usage or parse errors).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rhocalc::error::Error;
use rhocalc::model::Model;
use rhocalc::parse::{parse_derivation, parse_element};
use rhocalc::report::Report;
use rhocalc::scalar::Rat;

#[derive(Parser)]
#[command(
    name = "rhocalc",
    about = "Exact computations on graded algebras with commutation factors",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampling subcommands
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Substitute a rational constant (like 2 or -1/3) for the formal
    /// parameter before running
    #[arg(long, global = true, value_name = "RATIONAL")]
    set_q: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SpecArg {
    /// Path to the model file
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run the cocycle, structure, basis, metric, and symplectic suites
    Validate(SpecArg),
    /// Compute the Levi-Civita coefficient table
    Christoffel(SpecArg),
    /// Run the connection identity suite (torsion, compatibility, Bianchi,
    /// curvature identities)
    ConnectionCheck(SpecArg),
    /// Evaluate the curvature on basis derivations
    Curvature {
        #[command(flatten)]
        spec: SpecArg,
        /// 1-based basis indices i j k for R(d_i, d_j) d_k
        #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
        indices: Option<Vec<usize>>,
    },
    /// Check that the coboundary squares to zero on random compatible
    /// cochains
    D2 {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Check the Cartan identity on random (derivation, cochain) pairs
    Cartan {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Compute the Hamiltonian derivation of an element
    Hamiltonian {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(short = 'f', value_name = "EXPR")]
        f: String,
    },
    /// Compute the Poisson bracket of two elements
    Poisson {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(short = 'f', value_name = "EXPR")]
        f: String,
        #[arg(short = 'g', value_name = "EXPR")]
        g: String,
    },
    /// Run the Poisson axiom suite on sampled triples
    PoissonCheck {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Apply a derivation expression to an element expression
    Apply {
        #[command(flatten)]
        spec: SpecArg,
        /// Derivation like "x * d/dx + d/dy"
        #[arg(short = 'd', value_name = "EXPR")]
        derivation: String,
        #[arg(short = 'f', value_name = "EXPR")]
        f: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Structure(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn parse_rat(text: &str) -> Result<Rat, Error> {
    let parts: Vec<&str> = text.split('/').collect();
    let parse_int = |s: &str| -> Result<i64, Error> {
        s.trim()
            .parse::<i64>()
            .map_err(|_| Error::structure(format!("invalid rational '{text}'")))
    };
    match parts.as_slice() {
        [n] => Ok(Rat::from_integer(parse_int(n)?.into())),
        [n, d] => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err(Error::structure("zero denominator"));
            }
            Ok(Rat::new(parse_int(n)?.into(), d.into()))
        }
        _ => Err(Error::structure(format!("invalid rational '{text}'"))),
    }
}

fn load_model(cli: &Cli, spec: &SpecArg) -> Result<Model, Error> {
    let model = Model::from_file(&spec.spec)?;
    match &cli.set_q {
        None => Ok(model),
        Some(text) => model.specialize(&parse_rat(text)?),
    }
}

fn emit_report(cli: &Cli, report: &Report) -> bool {
    match cli.format {
        Format::Text => print!("{report}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).expect("report serializes")
        ),
    }
    report.all_passed()
}

fn emit_value(cli: &Cli, text: String, json: serde_json::Value) {
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&json).expect("serializes"))
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Validate(spec) => {
            let model = load_model(cli, spec)?;
            let report = model.validate(cli.seed);
            Ok(emit_report(cli, &report))
        }
        Command::Christoffel(spec) => {
            let model = load_model(cli, spec)?;
            let basis = model.require_basis()?;
            let metric = model.require_metric()?;
            let gamma = rhocalc::christoffel(&model.algebra, basis, metric)?;
            let alg = &model.algebra;
            let mut obj = serde_json::Map::new();
            let mut lines = vec![];
            for (t, i, j, e) in gamma.nonzero_entries() {
                let key = format!("{},{},{}", t + 1, i + 1, j + 1);
                let val = alg.render(e);
                lines.push(format!("Gamma[{}][{}][{}] = {}", t + 1, i + 1, j + 1, val));
                obj.insert(key, val.into());
            }
            if lines.is_empty() {
                lines.push("all coefficients vanish".into());
            }
            emit_value(cli, lines.join("\n"), serde_json::Value::Object(obj));
            Ok(true)
        }
        Command::ConnectionCheck(spec) => {
            let model = load_model(cli, spec)?;
            let basis = model.require_basis()?;
            let metric = model.require_metric()?;
            let (_, conn) = model.levi_civita()?;
            let report =
                rhocalc::check_connection(&model.algebra, basis, &conn, metric, cli.seed);
            Ok(emit_report(cli, &report))
        }
        Command::Curvature { spec, indices } => {
            let model = load_model(cli, spec)?;
            let basis = model.require_basis()?;
            let (_, conn) = model.levi_civita()?;
            let alg = &model.algebra;
            let n = alg.rank();
            let tuples: Vec<(usize, usize, usize)> = match indices {
                Some(v) => {
                    let bad = v.iter().any(|&i| i == 0 || i > n);
                    if v.len() != 3 || bad {
                        return Err(Error::structure(format!(
                            "indices must be three values in 1..={n}"
                        )));
                    }
                    vec![(v[0] - 1, v[1] - 1, v[2] - 1)]
                }
                None => {
                    let mut out = vec![];
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                out.push((i, j, k));
                            }
                        }
                    }
                    out
                }
            };
            let mut lines = vec![];
            let mut obj = serde_json::Map::new();
            for (i, j, k) in tuples {
                let r = rhocalc::curvature(
                    alg,
                    basis,
                    &conn,
                    &rhocalc::Derivation::basis(alg, i),
                    &rhocalc::Derivation::basis(alg, j),
                    &rhocalc::Derivation::basis(alg, k),
                )?;
                let rendered = rhocalc::render::render_derivation(alg, &r);
                lines.push(format!(
                    "R(d_{}, d_{}) d_{} = {rendered}",
                    i + 1,
                    j + 1,
                    k + 1
                ));
                obj.insert(format!("{},{},{}", i + 1, j + 1, k + 1), rendered.into());
            }
            emit_value(cli, lines.join("\n"), serde_json::Value::Object(obj));
            Ok(true)
        }
        Command::D2 {
            spec,
            max_arity,
            samples,
        } => {
            let model = load_model(cli, spec)?;
            let basis = model.require_basis()?;
            let report = rhocalc::suites::d_squared_suite(
                &model.algebra,
                basis,
                *max_arity,
                *samples,
                cli.seed,
            );
            Ok(emit_report(cli, &report))
        }
        Command::Cartan { spec, samples } => {
            let model = load_model(cli, spec)?;
            let basis = model.require_basis()?;
            let report =
                rhocalc::suites::cartan_suite(&model.algebra, basis, *samples, cli.seed);
            Ok(emit_report(cli, &report))
        }
        Command::Hamiltonian { spec, f } => {
            let model = load_model(cli, spec)?;
            let basis = model.require_basis()?;
            let sympl = model.require_symplectic()?;
            let alg = &model.algebra;
            let fe = parse_element(alg, f)?;
            let x = sympl.hamiltonian_vf(alg, basis, &fe)?;
            let rendered = rhocalc::render::render_derivation(alg, &x);
            emit_value(
                cli,
                format!("X_f = {rendered}"),
                serde_json::json!({ "f": alg.render(&fe), "vector_field": rendered }),
            );
            Ok(true)
        }
        Command::Poisson { spec, f, g } => {
            let model = load_model(cli, spec)?;
            let alg = &model.algebra;
            let fe = parse_element(alg, f)?;
            let ge = parse_element(alg, g)?;
            let structure = model.poisson_structure()?;
            let out = structure.bracket(alg, model.basis.as_ref(), &fe, &ge)?;
            let rendered = alg.render(&out);
            emit_value(
                cli,
                rendered.clone(),
                serde_json::json!({
                    "f": alg.render(&fe),
                    "g": alg.render(&ge),
                    "bracket": rendered
                }),
            );
            Ok(true)
        }
        Command::PoissonCheck { spec, samples } => {
            let model = load_model(cli, spec)?;
            let structure = model.poisson_structure()?;
            let mut report = rhocalc::suites::poisson_suite(
                &model.algebra,
                model.basis.as_ref(),
                &structure,
                *samples,
                cli.seed,
            );
            if let (rhocalc::PoissonStructure::Symplectic(s), Some(basis)) =
                (&structure, model.basis.as_ref())
            {
                report.merge(rhocalc::suites::hamiltonian_correspondence_suite(
                    &model.algebra,
                    basis,
                    s,
                    (*samples).min(25),
                    cli.seed,
                ));
            }
            Ok(emit_report(cli, &report))
        }
        Command::Apply {
            spec,
            derivation,
            f,
        } => {
            let model = load_model(cli, spec)?;
            let alg = &model.algebra;
            let d = parse_derivation(alg, derivation)?;
            let fe = parse_element(alg, f)?;
            let out = rhocalc::apply_derivation(alg, &d, &fe)?;
            let rendered = alg.render(&out);
            emit_value(
                cli,
                rendered.clone(),
                serde_json::json!({ "result": rendered }),
            );
            Ok(true)
        }
    }
}
