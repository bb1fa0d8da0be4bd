//! The `fktree` command line.
//!
//! Exit codes: 0 on success or when every certificate passes, 1 when some
//! certificate fails, 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::enumerate::{self, ClassKey, ExtremalCertificate, Theorem, VerifyConfig, HARD_CAP};
use crate::error::{Error, Result};
use crate::families;
use crate::io;
use crate::json;
use crate::spectral::{self, COMPARE_TOL, DEFAULT_TOL};
use crate::transforms;
use crate::tree::{CanonicalCode, Edge, TreeInvariants, TreeWithBoundary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fktree",
    version,
    about = "Dirichlet eigenvalues of trees and exhaustive minimizer checks"
)]
pub struct Cli {
    /// Output format. Only JSON is meant for scripts.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Largest tree order that may be enumerated (at most 20).
    #[arg(long, default_value_t = enumerate::DEFAULT_CAP, global = true)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First Dirichlet eigenpair of a tree.
    Eigen {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Build a named family member.
    Family {
        #[arg(long, value_enum, default_value_t = Emit::Edges, global = true)]
        emit: Emit,
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Apply a switching, shifting or jumping move.
    Transform {
        #[arg(long)]
        tree: PathBuf,
        /// e.g. "switch v1 v2 u1 u2", "shift v1 v2 u", "jump v1 v2 u"
        #[arg(long = "move")]
        mv: String,
        /// Values of f, one per vertex or one per interior vertex. Defaults
        /// to the first eigenfunction.
        #[arg(long)]
        function: Option<PathBuf>,
    },
    /// Sweep every class of one kind up to an order.
    Verify {
        /// matching, matching-leaves, interior, diameter4 or diameter
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = COMPARE_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Certify one class, e.g. --key "NMB 8 3 3".
    VerifyClass {
        #[arg(long)]
        key: ClassKey,
        #[arg(long, default_value_t = COMPARE_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List all free trees of order n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        classify: bool,
    },
    /// Inscribed-radius lower bound, |B|/|Ω| upper bound and λ₁.
    Bounds {
        #[arg(long)]
        tree: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// T(p,q,b)
    #[command(name = "T")]
    T {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        b: usize,
    },
    Comet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Fork {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Star {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Edges,
    Json,
}

impl FamilyCmd {
    fn build(&self) -> Result<TreeWithBoundary> {
        match *self {
            FamilyCmd::T { p, q, b } => families::build_t(p, q, b),
            FamilyCmd::Comet { n, k } => families::build_comet(n, k),
            FamilyCmd::Fork { a, r, n } => families::build_fork(a, r, n),
            FamilyCmd::Path { n } => families::build_path(n),
            FamilyCmd::Star { n } => families::build_star(n),
        }
    }
}

#[derive(Serialize)]
struct TreeJson {
    n: usize,
    edges: Vec<Edge>,
    boundary: Vec<usize>,
    code: CanonicalCode,
    invariants: TreeInvariants,
    graph6: String,
}

impl TreeJson {
    fn new(tree: &TreeWithBoundary) -> Self {
        let edges = tree.edges();
        TreeJson {
            n: tree.n(),
            graph6: io::to_graph6(tree.n(), &edges),
            edges,
            boundary: tree.boundary(),
            code: tree.canonical_code(),
            invariants: tree.invariants(),
        }
    }
}

#[derive(Serialize)]
struct EnumeratedTree {
    #[serde(flatten)]
    tree: TreeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassKey>>,
}

#[derive(Serialize)]
struct TransformJson {
    #[serde(flatten)]
    rewrite: transforms::EdgeRewrite,
    #[serde(serialize_with = "json::f64")]
    delta_numerator: f64,
    hypothesis_holds: bool,
    tree: TreeJson,
}

#[derive(Serialize)]
struct BoundsJson {
    #[serde(serialize_with = "json::f64")]
    lower: f64,
    #[serde(serialize_with = "json::f64")]
    lambda1: f64,
    #[serde(serialize_with = "json::f64")]
    upper: f64,
    inscribed_radius: usize,
    holds: bool,
}

/// Parses `argv` (including the program name), runs one subcommand and
/// returns the exit code. Results go to `out` unless `--output` is given.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.output {
        Some(path) => match fs::File::create(path) {
            Ok(mut f) => execute(&cli, &mut f),
            Err(e) => Err(Error::Parse(format!("{}: {e}", path.display()))),
        },
        None => execute(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_tree(path: &Path) -> Result<TreeWithBoundary> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_edge_list(&text)
}

fn read_function(path: &Path, tree: &TreeWithBoundary) -> Result<Vec<f64>> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let values = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let interior = tree.interior();
    if values.len() == tree.n() {
        Ok(values)
    } else if values.len() == interior.len() {
        Ok(spectral::zero_extend(tree, &values))
    } else {
        Err(Error::DimensionMismatch {
            expected: interior.len(),
            got: values.len(),
        })
    }
}

fn line<S: Serialize>(out: &mut dyn Write, value: &S) -> Result<()> {
    let s = serde_json::to_string(value).map_err(|e| Error::Parse(e.to_string()))?;
    write_str(out, &format!("{s}\n"))
}

fn write_str(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())
        .map_err(|e| Error::Parse(format!("write failed: {e}")))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

fn verify_config(cli: &Cli, tol: f64, jobs: usize) -> Result<VerifyConfig> {
    check_tol(tol)?;
    if jobs == 0 {
        return Err(Error::InvalidParameters("--jobs must be at least 1".into()));
    }
    Ok(VerifyConfig {
        tol,
        cap: cli.cap,
        jobs,
    })
}

fn certificate_text(c: &ExtremalCertificate) -> String {
    let lambda = c
        .lambda_min
        .map(json::format_f64)
        .unwrap_or_else(|| "-".into());
    format!(
        "{:<16} {:<20} population {:>6}  lambda_min {}  minimizers {}\n",
        c.key.to_string(),
        serde_json::to_value(c.verdict)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default(),
        c.population,
        lambda,
        c.minimizers.len()
    )
}

fn emit_certificates(cli: &Cli, certs: &[ExtremalCertificate], out: &mut dyn Write) -> Result<i32> {
    for c in certs {
        match cli.format {
            Format::Json => line(out, c)?,
            Format::Text => write_str(out, &certificate_text(c))?,
        }
    }
    Ok(if certs.iter().all(|c| c.verdict.passed()) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.cap > HARD_CAP {
        return Err(Error::CapExceeded {
            n: cli.cap,
            cap: HARD_CAP,
        });
    }
    match &cli.command {
        Command::Eigen { tree, tol } => {
            check_tol(*tol)?;
            let tree = read_tree(tree)?;
            let spectrum = spectral::first_eigenpair(&tree, *tol)?;
            match cli.format {
                Format::Json => line(out, &spectrum)?,
                Format::Text => {
                    let f: Vec<String> = spectrum
                        .eigenfunction
                        .iter()
                        .map(|&x| json::format_f64(x))
                        .collect();
                    write_str(
                        out,
                        &format!(
                            "lambda1 {}\nresidual {}\ninterior {:?}\neigenfunction {}\n",
                            json::format_f64(spectrum.lambda1),
                            json::format_f64(spectrum.residual),
                            tree.interior(),
                            f.join(" ")
                        ),
                    )?
                }
            }
        }
        Command::Family { emit, family } => {
            let tree = family.build()?;
            match emit {
                Emit::Edges => write_str(out, &io::write_edge_list(&tree))?,
                Emit::Json => line(out, &TreeJson::new(&tree))?,
            }
        }
        Command::Transform { tree, mv, function } => {
            let tree = read_tree(tree)?;
            let fhat = match function {
                Some(path) => read_function(path, &tree)?,
                None => spectral::first_eigenpair(&tree, DEFAULT_TOL)?.extended(&tree),
            };
            let rewritten = transforms::apply_move(&tree, mv)?;
            let report = TransformJson {
                delta_numerator: rewritten.rewrite.numerator_delta(&fhat),
                hypothesis_holds: rewritten.rewrite.hypothesis_holds(&fhat),
                tree: TreeJson::new(&rewritten.tree),
                rewrite: rewritten.rewrite,
            };
            match cli.format {
                Format::Json => line(out, &report)?,
                Format::Text => write_str(
                    out,
                    &format!(
                        "delta_numerator {}\nhypothesis_holds {}\n{}",
                        json::format_f64(report.delta_numerator),
                        report.hypothesis_holds,
                        io::write_edge_list(&rewritten.tree)
                    ),
                )?,
            }
        }
        Command::Verify {
            theorem,
            n_max,
            tol,
            jobs,
        } => {
            let config = verify_config(cli, *tol, *jobs)?;
            let certs = enumerate::verify_theorem_sweep(*theorem, *n_max, &config)?;
            return emit_certificates(cli, &certs, out);
        }
        Command::VerifyClass { key, tol, jobs } => {
            let config = verify_config(cli, *tol, *jobs)?;
            let cert = enumerate::verify_class(*key, &config)?;
            return emit_certificates(cli, &[cert], out);
        }
        Command::Enumerate { n, classify } => {
            for tree in enumerate::free_trees(*n, cli.cap)? {
                match cli.format {
                    Format::Json => {
                        let classes = classify.then(|| enumerate::classify(&tree));
                        line(
                            out,
                            &EnumeratedTree {
                                tree: TreeJson::new(&tree),
                                classes,
                            },
                        )?
                    }
                    Format::Text => {
                        let mut s = io::to_graph6(tree.n(), &tree.edges());
                        if *classify {
                            for k in enumerate::classify(&tree) {
                                s.push_str(&format!("  [{k}]"));
                            }
                        }
                        s.push('\n');
                        write_str(out, &s)?
                    }
                }
            }
        }
        Command::Bounds { tree } => {
            let tree = read_tree(tree)?;
            let bounds = spectral::eigenvalue_bounds(&tree);
            let lambda1 = spectral::lambda1(&tree)?;
            let report = BoundsJson {
                lower: bounds.lower,
                lambda1,
                upper: bounds.upper,
                inscribed_radius: tree.inscribed_radius(),
                holds: bounds.lower <= lambda1 + 1e-10 && lambda1 <= bounds.upper + 1e-10,
            };
            match cli.format {
                Format::Json => line(out, &report)?,
                Format::Text => write_str(
                    out,
                    &format!(
                        "{} <= {} <= {}  (r = {})\n",
                        json::format_f64(report.lower),
                        json::format_f64(report.lambda1),
                        json::format_f64(report.upper),
                        report.inscribed_radius
                    ),
                )?,
            }
        }
    }
    Ok(EXIT_OK)
}
