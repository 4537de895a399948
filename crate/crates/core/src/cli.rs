//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 resource cap,
//! 3 self-test mismatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::Error;
use crate::input::StructureSpec;
use crate::limits::Limits;
use crate::oracle::selftest;
use crate::report::{self, Analysis, AnalyzeOptions, CombineOp, PoolPreset};
use crate::solver::Mode;
use crate::{dot, input};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "stonelab",
    version,
    about = "Separating families, orders and free sequences on finite Stone duals"
)]
pub struct Cli {
    /// Largest atom count for Boolean algebras.
    #[arg(long, global = true, env = "STONELAB_CAP_ATOMS", default_value_t = Limits::default().atoms)]
    pub cap_atoms: usize,
    /// Largest poset or semilattice whose up-sets or filters are enumerated.
    #[arg(long, global = true, env = "STONELAB_CAP_ENUM", default_value_t = Limits::default().enumeration)]
    pub cap_enum: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "STONELAB_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Algebra,
    Chain,
    Poset,
    Semilattice,
    Tree,
    Free,
}

/// A structure from a JSON file or from inline flags.
#[derive(Debug, Args)]
pub struct StructureArgs {
    /// JSON structure file.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Atom count or chain length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Generator count of a free algebra.
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one analysis on a structure.
    Analyze {
        #[command(flatten)]
        structure: StructureArgs,
        #[arg(long, value_enum, default_value_t = Analysis::Auto)]
        analysis: Analysis,
        #[arg(long, value_enum)]
        pool: Option<PoolPreset>,
        /// Formula over g0, g1, … for the minsupport analysis.
        #[arg(long)]
        clopen: Option<String>,
        /// Sample count for randomized analyses.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Minimize the maximum order of a separating subfamily of a pool.
    Solve {
        #[command(flatten)]
        structure: StructureArgs,
        #[arg(long, value_enum, default_value_t = PoolPreset::Auto)]
        pool: PoolPreset,
        #[arg(long, value_enum, default_value_t = SolveMode::Exact)]
        mode: SolveMode,
        /// Only decide whether max order ≤ k is achievable.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = Limits::default().exact_points)]
        cap_exact_points: usize,
        #[arg(long, default_value_t = Limits::default().exact_pool)]
        cap_exact_pool: usize,
    },
    /// Build a product, sum, duplication or porcupine from system files.
    Combine {
        #[arg(long, value_enum)]
        op: CombineOp,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Points to duplicate, comma separated.
        #[arg(long, value_delimiter = ',')]
        points: Vec<usize>,
    },
    /// Write a Graphviz drawing of a structure.
    ExportDot {
        #[command(flatten)]
        structure: StructureArgs,
        #[arg(long, value_enum, default_value_t = DotStyle::Auto)]
        style: DotStyle,
        /// Output file; stdout when absent.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare every fast routine against its brute-force oracle.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotStyle {
    Auto,
    Hasse,
    Tree,
    Paths,
    Family,
}

fn read_spec(path: &Path) -> Result<StructureSpec, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display())))?;
    StructureSpec::from_json(&text)
}

impl StructureArgs {
    fn resolve(&self) -> Result<StructureSpec, Error> {
        if let Some(path) = &self.input {
            if self.kind.is_some() {
                return Err(Error::validation(
                    "give either an input file or --kind, not both",
                ));
            }
            return read_spec(path);
        }
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| Error::validation(format!("--{flag} is required for this kind")))
        };
        match self.kind {
            None => Err(Error::validation("an input file or --kind is required")),
            Some(Kind::Algebra) => Ok(StructureSpec::Algebra {
                n: need(self.n, "n")?,
                generators: None,
            }),
            Some(Kind::Chain) => Ok(StructureSpec::Chain {
                n: need(self.n, "n")?,
            }),
            Some(Kind::Poset) => Ok(StructureSpec::Poset {
                n: need(self.n, "n")?,
                le: Vec::new(),
            }),
            Some(Kind::Free) => Ok(StructureSpec::Free {
                s: need(self.s, "s")?,
            }),
            Some(Kind::Tree) => {
                let n = need(self.n, "n")?;
                Ok(StructureSpec::Tree {
                    parent: (0..n).map(|i| i.checked_sub(1)).collect(),
                })
            }
            Some(Kind::Semilattice) => {
                let n = need(self.n, "n")?;
                Ok(StructureSpec::Semilattice {
                    meet: (0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect(),
                })
            }
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_cap() {
        EXIT_CAP
    } else {
        EXIT_INVALID
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match &cli.out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::validation(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::validation(format!("cannot write output: {e}"))),
    }
}

fn render(cli: &Cli, report: &Value) -> String {
    match cli.format {
        Format::Json => serde_json::to_string_pretty(report).expect("values serialize") + "\n",
        Format::Table => report::table(report),
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, Error> {
    let mut limits = Limits {
        atoms: cli.cap_atoms,
        enumeration: cli.cap_enum,
        ..Limits::default()
    };
    if limits.atoms > crate::limits::MAX_ATOM_CAP {
        return Err(Error::cap(
            "atom cap",
            limits.atoms,
            crate::limits::MAX_ATOM_CAP,
        ));
    }
    match &cli.command {
        Command::Analyze {
            structure,
            analysis,
            pool,
            clopen,
            samples,
        } => {
            let spec = structure.resolve()?;
            let opts = AnalyzeOptions {
                pool: *pool,
                clopen: clopen.clone(),
                samples: *samples,
                seed: cli.seed,
            };
            let r = report::analyze(&spec, *analysis, &opts, &limits)?;
            emit(cli, &render(cli, &r), stdout)?;
        }
        Command::Solve {
            structure,
            pool,
            mode,
            k,
            cap_exact_points,
            cap_exact_pool,
        } => {
            limits.exact_points = *cap_exact_points;
            limits.exact_pool = *cap_exact_pool;
            let spec = structure.resolve()?;
            let mode = match mode {
                SolveMode::Exact => Mode::Exact,
                SolveMode::Greedy => Mode::Greedy,
            };
            let r = report::solve(&spec, *pool, mode, *k, &limits)?;
            emit(cli, &render(cli, &r), stdout)?;
        }
        Command::Combine { op, inputs, points } => {
            let specs = inputs
                .iter()
                .map(|p| read_spec(p))
                .collect::<Result<Vec<_>, _>>()?;
            let r = report::combine(*op, &specs, points, &limits)?;
            emit(cli, &render(cli, &r), stdout)?;
        }
        Command::ExportDot {
            structure,
            style,
            dot,
        } => {
            let spec = structure.resolve()?;
            let text = export_dot(&spec, *style, &limits)?;
            match dot {
                Some(p) => std::fs::write(p, text)
                    .map_err(|e| Error::validation(format!("cannot write {}: {e}", p.display())))?,
                None => emit(cli, &text, stdout)?,
            }
        }
        Command::Selftest => {
            let r = selftest(cli.seed, &limits)?;
            let passed = r.passed();
            let v = report::envelope(
                "selftest",
                serde_json::json!({"seed": cli.seed}),
                "oracles",
                serde_json::to_value(&r).expect("reports serialize"),
                vec!["each check compares a fast routine with a brute-force oracle".into()],
            );
            emit(cli, &render(cli, &v), stdout)?;
            if !passed {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(EXIT_OK)
}

fn export_dot(spec: &StructureSpec, style: DotStyle, limits: &Limits) -> Result<String, Error> {
    let family_of = |spec: &StructureSpec| -> Result<String, Error> {
        let r = report::build_pool(spec, PoolPreset::Auto, limits)
            .or_else(|_| report::build_pool(spec, PoolPreset::Custom, limits))?;
        Ok(dot::family(&r.family(&(0..r.len()).collect::<Vec<_>>())))
    };
    match (spec, style) {
        (StructureSpec::Poset { n, le }, DotStyle::Auto | DotStyle::Hasse) => Ok(
            dot::final_segments(&input::poset(*n, le)?.final_segments(limits)?),
        ),
        (StructureSpec::Chain { n }, DotStyle::Hasse) => Ok(dot::final_segments(
            &crate::order::FinitePoset::chain(*n).final_segments(limits)?,
        )),
        (StructureSpec::Semilattice { meet }, DotStyle::Auto | DotStyle::Hasse) => {
            Ok(dot::filters(&input::semilattice(meet)?.filters(limits)?))
        }
        (StructureSpec::Tree { parent }, DotStyle::Auto | DotStyle::Tree) => {
            Ok(dot::forest(&input::forest(parent, limits)?))
        }
        (StructureSpec::Tree { parent }, DotStyle::Paths) => {
            Ok(dot::paths(&input::forest(parent, limits)?.paths()))
        }
        (
            StructureSpec::Porcupine {
                index,
                fibers,
                section,
            },
            DotStyle::Auto | DotStyle::Family,
        ) => {
            let r = crate::combinators::porcupine(
                &input::porcupine_spec(index, fibers, section)?,
                limits,
            )?;
            Ok(dot::family(&r.system.family))
        }
        (StructureSpec::Algebra { n, generators }, DotStyle::Auto | DotStyle::Family) => {
            let (b, gens) = input::algebra_with_generators(*n, generators.as_deref(), limits)?;
            Ok(dot::family(
                &crate::family::SeparatingFamily::from_elements(&b, &gens)?,
            ))
        }
        (_, DotStyle::Auto | DotStyle::Family) => family_of(spec),
        _ => Err(Error::validation(format!(
            "dot style does not apply to kind '{}'",
            spec.kind()
        ))),
    }
}
