//! `eirep`: generate truncations, apply the Nakayama functor, build injective
//! resolutions and run the property suites. All output is JSON.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or input
//! error (reported on stderr as a JSON object).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use eirep::eicat::FiniteEICategory;
use eirep::instances::InstanceSpec;
use eirep::json::{
    category_to_json, certificate_to_json, complex_to_json, dims_to_json, hom_to_json,
    module_digest, module_to_json, CategoryJson, ModuleJson,
};
use eirep::nakayama::{inverse_nakayama, locally_self_injective_audit, nakayama};
use eirep::repmod::{CatModule, HomSpace, Side};
use eirep::resolve::{injective_resolution, verify_resolution};
use eirep::suite::{run_suites, SuiteConfig, SuiteSelection};

#[derive(Parser)]
#[command(
    name = "eirep",
    version,
    about = "Finite EI-category representations over the rationals"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest hom-set allowed when generating a truncation.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Output file, or `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a truncation of FI_G or VI_q from a TOML or JSON spec.
    Gen { spec: PathBuf },
    /// Apply the Nakayama functor (or its inverse) to a left module.
    Nakayama {
        category: PathBuf,
        module: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Build and certify an injective resolution of a left module.
    Resolve { category: PathBuf, module: PathBuf },
    /// Run property suites against a category.
    Check {
        category: PathBuf,
        #[arg(long, default_value = "all")]
        suite: SuiteSelection,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Basis of the space of module maps from SOURCE to TARGET.
    Hom {
        category: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// Which free left modules are injective.
    Audit { category: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Io { path: PathBuf, message: String },
    Input { kind: &'static str, message: String },
}

impl CliError {
    fn input(kind: &'static str, e: impl ToString) -> Self {
        CliError::Input {
            kind,
            message: e.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Io { path, message } => {
                json!({"error": "io", "path": path.display().to_string(), "message": message})
            }
            CliError::Input { kind, message } => json!({"error": kind, "message": message}),
        }
    }
}

/// Output value and whether every checked property held.
struct Outcome {
    value: Value,
    passed: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome {
            value,
            passed: true,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_category(path: &Path, validate: bool) -> Result<Arc<FiniteEICategory>, CliError> {
    let parsed: CategoryJson =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::input("parse", e))?;
    let cat = if validate {
        parsed.build()
    } else {
        parsed.build_unchecked()
    };
    cat.map(Arc::new)
        .map_err(|e| CliError::input("validation", e))
}

fn load_module(path: &Path, cat: &Arc<FiniteEICategory>) -> Result<CatModule, CliError> {
    let parsed: ModuleJson =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::input("parse", e))?;
    parsed
        .build(cat)
        .map_err(|e| CliError::input("validation", e))
}

fn require_left(m: &CatModule, what: &str) -> Result<(), CliError> {
    m.require_side(Side::Left)
        .map_err(|e| CliError::input("validation", format!("{what}: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen { spec } => {
            let spec = InstanceSpec::parse(&read(spec)?).map_err(|e| CliError::input("spec", e))?;
            let built = match cli.cap {
                Some(cap) => spec.build_with_cap(cap),
                None => spec.build(),
            };
            let cat = built.map_err(|e| CliError::input("spec", e))?;
            Ok(category_to_json(&cat).into())
        }
        Command::Nakayama {
            category,
            module,
            inverse,
        } => {
            let cat = load_category(category, true)?;
            let v = load_module(module, &cat)?;
            let (what, result) = if *inverse {
                require_left(&v, "the inverse Nakayama functor takes left modules")?;
                ("inverse_nakayama", inverse_nakayama(&v))
            } else {
                require_left(&v, "the Nakayama functor takes left modules")?;
                ("nakayama", nakayama(&v))
            };
            let out = result.map_err(|e| CliError::input("validation", e))?;
            let provenance = json!({"construction": what, "input_digest": module_digest(&v)});
            Ok(json!({
                "module": module_to_json(&out, Some(provenance)),
                "dims": dims_to_json(&out),
            })
            .into())
        }
        Command::Resolve { category, module } => {
            let cat = load_category(category, true)?;
            let u = load_module(module, &cat)?;
            require_left(&u, "injective resolutions are built for left modules")?;
            let res = injective_resolution(&u).map_err(|e| CliError::input("validation", e))?;
            let cert = verify_resolution(&res.complex);
            Ok(Outcome {
                value: json!({
                    "length": res.length(),
                    "complex": complex_to_json(&res.complex),
                    "certificate": certificate_to_json(&cat, &cert),
                }),
                passed: cert.passed(),
            })
        }
        Command::Check {
            category,
            suite,
            timing,
        } => {
            let cat = load_category(category, false)?;
            let config = SuiteConfig {
                seed: cli.seed,
                timing: *timing,
                ..SuiteConfig::default()
            };
            let report = run_suites(&cat, *suite, &config);
            Ok(Outcome {
                value: report.to_json(),
                passed: report.passed,
            })
        }
        Command::Hom {
            category,
            source,
            target,
        } => {
            let cat = load_category(category, true)?;
            let a = load_module(source, &cat)?;
            let b = load_module(target, &cat)?;
            let space = HomSpace::new(&a, &b).map_err(|e| CliError::input("validation", e))?;
            let basis: Vec<Value> = space.basis().iter().map(hom_to_json).collect();
            Ok(json!({"dim": space.dim(), "basis": basis}).into())
        }
        Command::Audit { category } => {
            let cat = load_category(category, true)?;
            let audit = locally_self_injective_audit(&cat);
            let objects: Vec<Value> = audit
                .objects
                .iter()
                .map(|&(i, ok)| json!({"object": cat.object_id(i), "free_is_injective": ok}))
                .collect();
            Ok(json!({
                "locally_self_injective": audit.verdict(),
                "objects": objects,
            })
            .into())
        }
    }
}

fn emit(out: &str, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    if out == "-" {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io {
                path: "-".into(),
                message: e.to_string(),
            })
    } else {
        fs::write(out, text).map_err(|e| CliError::Io {
            path: out.into(),
            message: e.to_string(),
        })
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::input("usage", e.to_string().trim_end())),
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&cli.out, &outcome.value) {
        return fail(&e);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
