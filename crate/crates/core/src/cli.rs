//! Command-line front end. [`run`] parses arguments, writes the report and
//! returns the process exit code: 0 on success, 1 when a checked claim fails,
//! 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{build_dihedral_pair, certify_counterexample, obstruction_report, verify_pair, CertificateFile};
use crate::error::{Error, Result};
use crate::f2core::{standard_symplectic, F2Matrix};
use crate::localglobal::{
    analyze_conic, cubic_local_global_verdict, hilbert_symbol, nontrivial_places, parse_rational, quartic_point_check,
    rational::parse_rational_list, Place, Poly3, TernaryQuadraticForm, WeierstrassCubic,
};
use crate::matgroups::{all_transvections, orthogonal_group, subgroup_census, symplectic_group, symplectic_group_order};
use crate::quadforms::{all_forms, arf_by_count, forms_census, orbits, standard_base_form};
use crate::reproduce::{reproduce, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "symdet", version, about = "Symplectic F2 geometry and local-global checks for symmetric determinantal representations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order of Sp_{2m}(F2) by closing all transvections (m <= 3).
    Order {
        #[arg(long)]
        m: usize,
    },
    /// Conjugacy classes of subgroups of Sp_{2m}(F2) and how many satisfy
    /// both conditions on Arf-0 forms (m = 1, 2).
    Census {
        #[arg(long)]
        m: usize,
        /// Accepted for m = 3, which is not implemented.
        #[arg(long)]
        i_have_hours: bool,
    },
    /// Counts of quadratic forms by Arf invariant and their orbits.
    FormsCensus {
        #[arg(long)]
        m: usize,
    },
    /// Orbits of quadratic forms under a group given by generators
    /// (default: all transvections).
    Orbits {
        #[arg(long)]
        m: usize,
        /// JSON file {"generators": [matrix, ...]} with matrices as row-string arrays.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Orthogonal group of the standard Arf-1 form inside Sp_{2m}(F2) (m <= 3).
    OGroup {
        #[arg(long)]
        m: usize,
    },
    /// Builds and checks the dihedral pair from F(2^{2m}).
    Lemma51 {
        #[arg(long)]
        m: usize,
    },
    /// Builds the obstruction subgroup and checks both conditions (m >= 3).
    Lemma52 {
        #[arg(long)]
        m: usize,
    },
    /// Evaluates an obstruction certificate file.
    Certify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Local obstructions, a rational point and a 2x2 pencil for a conic.
    Conic {
        /// a,b,c,d,e,f of a X0^2 + b X1^2 + c X2^2 + d X0X1 + e X0X2 + f X1X2.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Accepted for compatibility; output is JSON unless --format text.
        #[arg(long)]
        json: bool,
    },
    /// Two-torsion field and root densities of y^2 = x^3 + a x + b.
    Cubic {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 100_000)]
        primes: u64,
    },
    /// Hilbert symbol (a, b)_v, or all places where it is -1.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// A prime or "inf".
        #[arg(long)]
        place: Option<String>,
    },
    /// Exact check that a quartic vanishes at a point.
    QuarticCheck {
        /// File with a polynomial expression or a JSON term list.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Runs every reproduction check and prints a pass/fail table.
    Reproduce {
        /// Also scan all order-6 subgroup classes of Sp_6(F2).
        #[arg(long)]
        extended: bool,
    },
}

struct Output {
    value: Value,
    passed: bool,
}

fn ok<T: Serialize>(v: &T) -> Result<Output> {
    Ok(Output { value: serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))?, passed: true })
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Order { m } => {
            if !(1..=3).contains(m) {
                return Err(Error::Unsupported(format!("order by closure is available for m = 1..3 (got {m})")));
            }
            let g = symplectic_group(&standard_symplectic(*m)?)?;
            let expected = symplectic_group_order(*m as u32);
            Ok(Output {
                value: json!({"schema": "symdet.order.v1", "m": m, "order": g.order(), "formula": expected as u64}),
                passed: g.order() as u128 == expected,
            })
        }
        Command::Census { m, i_have_hours } => {
            if *m == 3 {
                let note = if *i_have_hours { " even with --i-have-hours" } else { "" };
                return Err(Error::Unsupported(format!("the full census for m = 3 is not implemented{note}")));
            }
            let c = subgroup_census(*m)?;
            Ok(Output {
                value: json!({
                    "schema": "symdet.census.v1",
                    "m": c.m,
                    "ambient_order": c.ambient_order,
                    "classes": c.classes.len(),
                    "satisfying": c.satisfying,
                    "total_subgroups": c.total_subgroups,
                    "representatives": c.classes,
                }),
                passed: true,
            })
        }
        Command::FormsCensus { m } => {
            if !(1..=3).contains(m) {
                return Err(Error::Unsupported(format!("forms census is available for m = 1..3 (got {m})")));
            }
            ok(&forms_census(*m)?)
        }
        Command::Orbits { m, generators } => {
            let space = standard_symplectic(*m)?;
            let base = standard_base_form(&space)?;
            let forms = all_forms(&space, &base)?;
            let gens: Vec<F2Matrix> = match generators {
                Some(path) => {
                    #[derive(serde::Deserialize)]
                    struct Gens {
                        generators: Vec<F2Matrix>,
                    }
                    let g: Gens =
                        serde_json::from_str(&read_file(path)?).map_err(|e| Error::Parse(e.to_string()))?;
                    g.generators
                }
                None => all_transvections(&space)?,
            };
            let mut list = Vec::new();
            for orbit in orbits(&gens, &forms, &space)? {
                let arf = arf_by_count(&forms[orbit[0]])?;
                let members: Vec<String> = orbit.iter().map(|&i| forms[i].v().to_string()).collect();
                list.push(json!({"size": orbit.len(), "arf_of_first": arf, "members": members}));
            }
            Ok(Output {
                value: json!({"schema": "symdet.orbits.v1", "m": m, "orbit_count": list.len(), "orbits": list}),
                passed: true,
            })
        }
        Command::OGroup { m } => {
            if !(1..=3).contains(m) {
                return Err(Error::Unsupported(format!("orthogonal group is available for m = 1..3 (got {m})")));
            }
            let space = standard_symplectic(*m)?;
            let base = standard_base_form(&space)?;
            let g = symplectic_group(&space)?;
            let o = orthogonal_group(&base, &g)?;
            Ok(Output {
                value: json!({
                    "schema": "symdet.o-group.v1",
                    "m": m,
                    "order": o.order(),
                    "index": g.order() / o.order(),
                    "generators": o.generators(),
                }),
                passed: true,
            })
        }
        Command::Lemma51 { m } => {
            let pair = build_dihedral_pair(*m)?;
            match verify_pair(&pair) {
                Ok(report) => Ok(Output { passed: report.all_pass(), ..ok(&report)? }),
                Err(e @ Error::ConditionFailed { .. }) => Ok(Output {
                    value: json!({"schema": "symdet.dihedral-pair.v1", "m": m, "failure": e.to_string()}),
                    passed: false,
                }),
                Err(e) => Err(e),
            }
        }
        Command::Lemma52 { m } => {
            let report = obstruction_report(*m)?;
            Ok(Output { passed: report.conditions.both() && report.preserves_base_form, ..ok(&report)? })
        }
        Command::Certify { cert } => {
            let file: CertificateFile =
                serde_json::from_str(&read_file(cert)?).map_err(|e| Error::Parse(e.to_string()))?;
            let verdict = certify_counterexample(&file.materialize()?)?;
            Ok(Output { passed: verdict.certified, ..ok(&verdict)? })
        }
        Command::Conic { coeffs, .. } => {
            let form = TernaryQuadraticForm::from_slice(&parse_rational_list(coeffs)?)?;
            ok(&analyze_conic(&form)?)
        }
        Command::Cubic { a, b, primes } => {
            if *primes < 1000 {
                return Err(Error::Unsupported("prime bound must be at least 1000".into()));
            }
            let e = WeierstrassCubic::new(parse_rational(a)?, parse_rational(b)?)?;
            let v = cubic_local_global_verdict(&e, *primes)?;
            Ok(Output { passed: v.implication_holds, ..ok(&v)? })
        }
        Command::Hilbert { a, b, place } => {
            let (a, b) = (parse_rational(a)?, parse_rational(b)?);
            match place {
                Some(p) => {
                    let v: Place = p.parse()?;
                    let s = hilbert_symbol(&a, &b, v)?;
                    Ok(Output {
                        value: json!({"schema": "symdet.hilbert.v1", "a": fmt(&a), "b": fmt(&b), "place": v, "symbol": s}),
                        passed: true,
                    })
                }
                None => {
                    let places = nontrivial_places(&a, &b)?;
                    Ok(Output {
                        value: json!({
                            "schema": "symdet.hilbert.v1",
                            "a": fmt(&a),
                            "b": fmt(&b),
                            "nontrivial_places": places,
                            "reciprocity": places.len() % 2 == 0,
                        }),
                        passed: places.len() % 2 == 0,
                    })
                }
            }
        }
        Command::QuarticCheck { poly, point } => {
            let p = Poly3::parse_any(&read_file(poly)?)?;
            let coords = parse_rational_list(point)?;
            let coords: [BigRational; 3] =
                coords.try_into().map_err(|_| Error::Parse("point needs three coordinates".into()))?;
            let check = quartic_point_check(&p, &coords)?;
            Ok(Output { passed: check.on_curve, ..ok(&check)? })
        }
        Command::Reproduce { extended } => {
            let report = reproduce(cli.seed, *extended);
            Ok(Output { passed: report.all_passed, ..ok(&report)? })
        }
    }
}

fn fmt(x: &BigRational) -> String {
    crate::localglobal::format_rational(x)
}

fn render_text(value: &Value, out: &mut dyn Write) -> std::io::Result<()> {
    if let Some(criteria) = value.get("criteria").and_then(Value::as_array) {
        for c in criteria {
            writeln!(
                out,
                "[{}] {:>2}  {}  ({}s)\n        {}",
                if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                c["id"],
                c["claim"].as_str().unwrap_or_default(),
                c["seconds"].as_str().unwrap_or_default(),
                c["detail"].as_str().unwrap_or_default()
            )?;
        }
        return Ok(());
    }
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::String(s) => writeln!(out, "{k}: {s}")?,
                    Value::Array(a) if a.len() > 8 => writeln!(out, "{k}: [{} entries]", a.len())?,
                    other => writeln!(out, "{k}: {other}")?,
                }
            }
            Ok(())
        }
        other => writeln!(out, "{other}"),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::ConditionFailed { .. } => 1,
        _ => 2,
    }
}

/// Runs the CLI with explicit arguments (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let written = match cli.format {
                Format::Json => serde_json::to_string_pretty(&output.value)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}")),
                Format::Text => render_text(&output.value, out),
            };
            if written.is_err() {
                return 1;
            }
            if output.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}
