//! The `catena` command line.
//!
//! Exit codes: 0 on success, 2 on invalid input or usage, 3 when a resource
//! budget is exceeded. The environment variable `CATENA_BUDGET` replaces the
//! solver and completion budgets.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catenary::{self, ChainVariant};
use crate::error::{Error, Result};
use crate::fibers;
use crate::invariants;
use crate::report::InvariantReport;
use crate::semigroup::{self, format_generators, format_point, AffineSemigroup, Limits};
use crate::toric;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "catena", version, about = "Factorization invariants of affine semigroups")]
struct Cli {
    #[command(flatten)]
    input: Input,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Generators: "31,47,57", "1 0; 1 3; 1 5" or {"generators": [[..], ..]}.
    #[arg(long, global = true)]
    gens: Option<String>,
    /// JSON file of the form {"generators": [[..], ..]}.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Replace the generators by the atoms they contain.
    #[arg(long, global = true)]
    auto_minimize: bool,
}

#[derive(Args, Debug)]
struct ElementArg {
    /// Element: "564", or "2 17" for several coordinates.
    #[arg(long)]
    element: Option<String>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LiftKind {
    Eq,
    Hom,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All factorizations of an element.
    Factorizations {
        #[arg(long)]
        element: String,
    },
    /// Distance between two factorizations.
    Distance {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The support graph of a fiber.
    Nabla {
        #[arg(long)]
        element: String,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
        /// Draw absent pairs as dashed edges.
        #[arg(long)]
        show_missing: bool,
    },
    /// Betti elements.
    Betti,
    /// A minimal binomial generating set of the toric ideal.
    Presentation,
    /// Catenary degree of an element, or of the monoid.
    Catenary(ElementArg),
    /// Equal catenary degree.
    CatenaryEq(ElementArg),
    /// Monotone catenary degree (bounded scan for the monoid).
    CatenaryMon {
        #[command(flatten)]
        element: ElementArg,
        /// Degree bound of the scan; default 20 times the largest generator degree.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Homogeneous catenary degree.
    CatenaryHom(ElementArg),
    /// Omega-primality of an element, or of the monoid.
    Omega(ElementArg),
    /// Tame degree of an element, or of the monoid.
    Tame(ElementArg),
    /// Whether every element has a single factorization length.
    HalfFactorial,
    /// Generators of a lift.
    Lift {
        #[arg(long, value_enum, default_value = "hom")]
        kind: LiftKind,
    },
    /// The full invariant panel.
    Report {
        #[arg(long)]
        bound: Option<i64>,
        /// Include relations and catenary chains.
        #[arg(long)]
        witnesses: bool,
    },
}

fn limits_from_env() -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("CATENA_BUDGET") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("CATENA_BUDGET must be a positive integer, got {v:?}")))?;
        limits.solver_nodes = n;
        limits.completion_steps = n;
    }
    Ok(limits)
}

fn load(input: &Input) -> Result<AffineSemigroup> {
    let text = match (&input.gens, &input.file) {
        (Some(g), None) => g.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        (Some(_), Some(_)) => return Err(Error::Parse("give either --gens or --file, not both".into())),
        (None, None) => return Err(Error::Parse("missing --gens or --file".into())),
    };
    let s = AffineSemigroup::with_limits(semigroup::parse_generators(&text)?, limits_from_env()?)?;
    if input.auto_minimize {
        s.minimized()
    } else {
        Ok(s)
    }
}

fn element(s: &AffineSemigroup, text: &str) -> Result<Vec<i64>> {
    let x = semigroup::parse_point(text)?;
    s.check_width(&x)?;
    Ok(x)
}

fn factorization(s: &AffineSemigroup, text: &str) -> Result<Vec<i64>> {
    let u = semigroup::parse_point(text)?;
    if u.len() != s.len() {
        return Err(Error::DimensionMismatch {
            expected: s.len(),
            found: u.len(),
        });
    }
    if u.iter().any(|x| *x < 0) {
        return Err(Error::Parse(format!("factorization {text:?} has a negative entry")));
    }
    Ok(u)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

fn rows_text(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|u| u.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn points_text(points: &[Vec<i64>]) -> String {
    points.iter().map(|b| format_point(b)).collect::<Vec<_>>().join(" ")
}

fn variant_command(
    s: &AffineSemigroup,
    variant: ChainVariant,
    element_text: Option<&str>,
    json: bool,
) -> Result<String> {
    if let Some(e) = element_text {
        let x = element(s, e)?;
        let r = catenary::catenary_variant_element(s, &x, variant)?;
        return Ok(if json { to_json(&r) } else { r.value.to_string() });
    }
    let value = match variant {
        ChainVariant::Ordinary => catenary::catenary_monoid(s)?,
        ChainVariant::Equal => catenary::equal_catenary_monoid(s)?,
        ChainVariant::Homogeneous => catenary::homogeneous_catenary_monoid(s)?,
        ChainVariant::Monotone => unreachable!("monotone monoid value is a scan"),
    };
    Ok(if json {
        to_json(&json!({ "variant": variant, "value": value }))
    } else {
        value.to_string()
    })
}

fn execute(cli: &Cli) -> Result<String> {
    let s = load(&cli.input)?;
    let json = cli.json;
    let default_bound = 20 * s.max_generator_degree();
    Ok(match &cli.command {
        Command::Factorizations { element: e } => {
            let x = element(&s, e)?;
            let z = fibers::factorizations(&s, &x)?;
            if json {
                to_json(&json!({ "element": x, "factorizations": z }))
            } else {
                rows_text(&z)
            }
        }
        Command::Distance { from, to } => {
            let (u, v) = (factorization(&s, from)?, factorization(&s, to)?);
            if s.evaluate(&u)? != s.evaluate(&v)? {
                return Err(Error::Parse("the two factorizations are of different elements".into()));
            }
            let d = fibers::distance(&u, &v);
            if json {
                to_json(&json!({ "from": u, "to": v, "distance": d }))
            } else {
                d.to_string()
            }
        }
        Command::Nabla {
            element: e,
            dot,
            show_missing,
        } => {
            let g = fibers::nabla_graph(&s, &element(&s, e)?)?;
            if *dot {
                g.to_dot(*show_missing)
            } else if json {
                to_json(&json!({
                    "element": g.element,
                    "vertices": g.vertices,
                    "edges": g.edges,
                    "missing": if *show_missing { Some(g.missing_pairs()) } else { None },
                    "components": g.components,
                }))
            } else {
                let mut out = format!("vertices: {}\n", g.vertices.len());
                for (i, v) in g.vertices.iter().enumerate() {
                    out.push_str(&format!("  v{i} {}\n", format_point(v)));
                }
                for (i, j, d) in &g.edges {
                    out.push_str(&format!("  v{i} -- v{j} distance {d}\n"));
                }
                if *show_missing {
                    for (i, j, d) in g.missing_pairs() {
                        out.push_str(&format!("  v{i} .. v{j} distance {d} (missing)\n"));
                    }
                }
                out.push_str(&format!("components: {}", g.components.len()));
                out
            }
        }
        Command::Betti => {
            let b: Vec<Vec<i64>> = toric::betti_elements(&s)?.into_iter().map(|b| b.element).collect();
            if json {
                to_json(&json!({ "betti": b }))
            } else {
                points_text(&b)
            }
        }
        Command::Presentation => {
            let p = toric::minimal_generators(&s)?;
            if json {
                to_json(&p)
            } else {
                let mut lines: Vec<String> = p.relations.iter().map(|r| r.display(&s)).collect();
                lines.push(format!("max total degree: {}", p.max_total_degree()));
                lines.join("\n")
            }
        }
        Command::Catenary(a) => variant_command(&s, ChainVariant::Ordinary, a.element.as_deref(), json)?,
        Command::CatenaryEq(a) => variant_command(&s, ChainVariant::Equal, a.element.as_deref(), json)?,
        Command::CatenaryHom(a) => variant_command(&s, ChainVariant::Homogeneous, a.element.as_deref(), json)?,
        Command::CatenaryMon { element: a, bound } => match a.element.as_deref() {
            Some(_) => variant_command(&s, ChainVariant::Monotone, a.element.as_deref(), json)?,
            None => {
                let scan = catenary::monotone_catenary_monoid_bounded(&s, bound.unwrap_or(default_bound))?;
                if json {
                    to_json(&json!({
                        "value": scan.value,
                        "method": "bounded-scan",
                        "bound": scan.bound,
                        "elements_scanned": scan.elements_scanned,
                        "attained_at": scan.attained_at,
                    }))
                } else {
                    format!("{} (bounded scan, degree <= {})", scan.value, scan.bound)
                }
            }
        },
        Command::Omega(a) => {
            let (value, method) = match a.element.as_deref() {
                Some(e) => (invariants::omega_element(&s, &element(&s, e)?)?, "minimal-fiber-cover"),
                None => (invariants::omega_monoid(&s)?, "max-over-atoms"),
            };
            if json {
                to_json(&json!({ "omega": value, "method": method }))
            } else {
                value.to_string()
            }
        }
        Command::Tame(a) => {
            let (value, method) = match a.element.as_deref() {
                Some(e) => (invariants::tame_element(&s, &element(&s, e)?)?, "fiber"),
                None => (invariants::tame_monoid(&s)?, "candidate-set"),
            };
            if json {
                to_json(&json!({ "tame": value, "method": method }))
            } else {
                value.to_string()
            }
        }
        Command::HalfFactorial => {
            let omega = s.omega().map(|w| w.iter().map(crate::diophantine::rational::format).collect::<Vec<_>>());
            if json {
                to_json(&json!({ "half_factorial": omega.is_some(), "omega": omega }))
            } else {
                match omega {
                    Some(w) => format!("true (omega = ({}))", w.join(",")),
                    None => "false".into(),
                }
            }
        }
        Command::Lift { kind } => {
            let lifted = match kind {
                LiftKind::Eq => s.lift_eq()?,
                LiftKind::Hom => s.lift_hom()?,
            };
            let rows = lifted.generators().rows().to_vec();
            if json {
                to_json(&json!({ "generators": rows }))
            } else {
                format_generators(&rows)
            }
        }
        Command::Report { bound, witnesses } => {
            let r = InvariantReport::compute(&s, bound.unwrap_or(default_bound), *witnesses)?;
            if json {
                r.to_json()
            } else {
                r.to_text().trim_end().to_string()
            }
        }
    })
}

/// Runs the command line on `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            let _ = writeln!(err, "catena: cannot configure {k} threads: {e}");
        }
    }
    match execute(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "catena: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_INVALID
            }
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
