//! `rlab`: command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a verification or conjecture
//! failure, 2 on usage or I/O errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rlab_core::conjectures::{self, Conjecture};
use rlab_core::elliptic::{self, CurvePoint, CurveSpec};
use rlab_core::hankel::{self, JFraction};
use rlab_core::oeis;
use rlab_core::rational::{format_list, parse_list, Rational};
use rlab_core::recurrences;
use rlab_core::repro;
use rlab_core::riordan::{self, RiordanPair};
use rlab_core::series::{catalan_gf, TruncatedSeries};
use rlab_core::somos;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rlab", version, about = "Exact series, Riordan arrays, Hankel transforms and Somos-4 checks")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Power series arithmetic. Series are `order; c0, c1, ...` or a bare list.
    Series {
        #[arg(value_enum)]
        op: SeriesOp,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Riordan array of a pair `(g, f)`.
    Riordan {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Rows `0..=n` of the matrix.
        #[arg(long, default_value_t = 6)]
        rows: usize,
        /// Apply the pair to this series instead of printing the matrix.
        #[arg(long, allow_hyphen_values = true)]
        apply: Option<String>,
        /// Apply the pair to the Catalan generating function.
        #[arg(long)]
        catalan: bool,
        /// Check whether `(g, x g)` is a pseudo-involution (uses `--g` only).
        #[arg(long)]
        pseudo_involution: bool,
    },
    /// Convolution recurrences: iterate, closed form, Riordan pair.
    Recur {
        /// Family name; `list` prints the registry.
        family: String,
        #[arg(allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Hankel transform of a sequence.
    Hankel {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        /// Number of determinants; defaults to all the window supports.
        #[arg(long)]
        count: Option<usize>,
        /// Also run Somos-4 detection on the transform.
        #[arg(long)]
        somos: bool,
    },
    /// Jacobi continued fractions.
    Jfrac {
        /// Moment sequence to expand into `(alpha; beta)`.
        #[arg(allow_hyphen_values = true)]
        seq: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alphas: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        betas: Option<String>,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Point multiples, continued fraction and pipeline for a Weierstrass curve.
    Curve {
        /// `a1,a2,a3,a4,a6`.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        point: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Somos-4 detection, or verification of a given law.
    Somos {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        /// `alpha,beta` to verify instead of detecting.
        #[arg(long, allow_hyphen_values = true)]
        law: Option<String>,
    },
    /// Conjecture harness.
    Conjecture {
        #[command(subcommand)]
        action: ConjectureAction,
    },
    /// Golden reproduction suite.
    Repro {
        /// Run only these cases.
        #[arg(long)]
        case: Vec<String>,
        /// List case names and references.
        #[arg(long)]
        list: bool,
    },
    /// Identify a window in a local OEIS stripped file.
    Oeis {
        #[arg(allow_hyphen_values = true)]
        seq: String,
        #[arg(long, env = oeis::OEIS_PATH_ENV)]
        oeis: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 5)]
        min_match: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesOp {
    Show,
    Add,
    Mul,
    Div,
    Inverse,
    Sqrt,
    Revert,
    Compose,
    Catalan,
}

#[derive(Subcommand)]
enum ConjectureAction {
    /// Registered conjectures and their parameters.
    List,
    /// Evaluate one parameter point.
    Run {
        name: String,
        #[arg(allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Evaluate every point of a grid in parallel.
    Sweep {
        name: String,
        /// Points separated by `;`, e.g. `1,2,1;2,1,1`. Defaults to the built-in grid.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

struct Out {
    records: bool,
}

impl Out {
    fn kv(&self, key: &str, value: impl std::fmt::Display) {
        if self.records {
            println!("{key}={value}");
        } else {
            println!("{key}: {value}");
        }
    }

    fn list(&self, key: &str, values: &[Rational]) {
        if self.records {
            println!("{key}={}", values.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        } else {
            println!("{key}: {}", format_list(values));
        }
    }
}

fn series(text: &str) -> Result<TruncatedSeries> {
    text.parse().with_context(|| format!("cannot parse series `{text}`"))
}

fn list(text: &str) -> Result<Vec<Rational>> {
    parse_list(text).with_context(|| format!("cannot parse list `{text}`"))
}

fn pair(text: &str, what: &str) -> Result<(Rational, Rational)> {
    match list(text)?.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => bail!("{what} needs two values, got `{text}`"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out {
        records: cli.format == Format::Records,
    };
    match run(cli.command, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a check failed.
fn run(command: Command, out: &Out) -> Result<bool> {
    match command {
        Command::Series { op, a, b } => series_cmd(op, &a, b.as_deref(), out),
        Command::Riordan { g, f, rows, apply, catalan, pseudo_involution } => {
            let g = series(&g)?;
            if pseudo_involution {
                let ok = riordan::pseudo_involution_check(&g, rows)?;
                out.kv("pseudo_involution", ok);
                return Ok(true);
            }
            let p = RiordanPair::new(g, series(&f)?)?;
            let h = match (apply, catalan) {
                (Some(h), _) => Some(series(&h)?),
                (None, true) => Some(catalan_gf(p.order())),
                _ => None,
            };
            match h {
                Some(h) => {
                    let order = p.order().min(h.order());
                    out.kv("series", p.apply(&h, order)?);
                }
                None => {
                    let m = p.matrix(rows)?;
                    if out.records {
                        for i in 0..m.rows() {
                            out.list(&format!("row{i}"), &m.row(i)[..=i]);
                        }
                    } else {
                        print!("{m}");
                    }
                }
            }
            Ok(true)
        }
        Command::Recur { family, params, terms } => recur_cmd(&family, params.as_deref(), terms, out),
        Command::Hankel { seq, count, somos } => {
            let a = list(&seq)?;
            let h = match count {
                Some(c) => hankel::hankel_transform_n(&a, c)?,
                None => hankel::hankel_transform(&a)?,
            };
            out.list("hankel", &h);
            if somos {
                report_detection(&somos::detect_somos4(&h), out);
            }
            Ok(true)
        }
        Command::Jfrac { seq, alphas, betas, order } => {
            if let Some(seq) = seq {
                let j = hankel::jfraction_from_moments(&list(&seq)?)?;
                print_jfraction(&j, out);
                return Ok(true);
            }
            let (Some(a), Some(b)) = (alphas, betas) else {
                bail!("give a moment sequence or both --alphas and --betas");
            };
            let j = JFraction::new(Rational::from_integer(1.into()), list(&a)?, list(&b)?);
            out.kv("series", hankel::jfraction_to_series(&j, order));
            out.list("hankel", &hankel::heilermann_hankel(&j, j.alphas.len().min(j.betas.len() + 1).saturating_sub(1))?);
            Ok(true)
        }
        Command::Curve { curve, point, order } => curve_cmd(&curve, &point, order, out),
        Command::Somos { seq, law } => {
            let e = list(&seq)?;
            match law {
                Some(law) => {
                    let (alpha, beta) = pair(&law, "--law")?;
                    let r = somos::verify_somos4(&e, &alpha, &beta);
                    print_report(&r, out);
                    Ok(r.passed())
                }
                None => {
                    let d = somos::detect_somos4(&e);
                    report_detection(&d, out);
                    Ok(d.witness().is_some())
                }
            }
        }
        Command::Conjecture { action } => conjecture_cmd(action, out),
        Command::Repro { case, list } => {
            let mut suite = repro::golden_suite();
            if list {
                for c in &suite {
                    out.kv(&c.name, &c.reference);
                }
                return Ok(true);
            }
            if !case.is_empty() {
                if let Some(missing) = case.iter().find(|n| !suite.iter().any(|c| &c.name == *n)) {
                    bail!("unknown case `{missing}`");
                }
                suite.retain(|c| case.contains(&c.name));
            }
            let report = repro::repro_run(&suite);
            if out.records {
                for r in &report.results {
                    let status = if r.passed() { "pass" } else { "fail" };
                    println!("case={} ref={} status={status}", r.name, r.reference);
                }
            } else {
                println!("{report}");
            }
            Ok(report.passed())
        }
        Command::Oeis { seq, oeis: path, min_match } => {
            let path = path.ok_or_else(|| anyhow!("no database: pass --oeis or set {}", oeis::OEIS_PATH_ENV))?;
            let db = oeis::oeis_load(&path).with_context(|| format!("cannot read {}", path.display()))?;
            let window = list(&seq)?;
            let hits = oeis::oeis_identify(&db, &window, min_match);
            out.kv("entries", db.entries.len());
            out.kv("malformed", db.malformed);
            for h in &hits {
                if out.records {
                    println!("match={} offset={} matched={}", h.id, h.offset, h.matched);
                } else {
                    println!("{} offset {} ({} terms)", h.id, h.offset, h.matched);
                }
            }
            if hits.is_empty() {
                out.kv("matches", "none");
            }
            Ok(true)
        }
    }
}

fn series_cmd(op: SeriesOp, a: &str, b: Option<&str>, out: &Out) -> Result<bool> {
    let second = || -> Result<TruncatedSeries> { series(b.ok_or_else(|| anyhow!("this operation needs a second series"))?) };
    let result = match op {
        SeriesOp::Catalan => {
            let order: usize = a.trim().parse().context("catalan takes an order")?;
            catalan_gf(order)
        }
        SeriesOp::Show => series(a)?,
        SeriesOp::Add => &series(a)? + &second()?,
        SeriesOp::Mul => series(a)?.mul(&second()?),
        SeriesOp::Div => series(a)?.div(&second()?)?,
        SeriesOp::Inverse => series(a)?.inverse()?,
        SeriesOp::Sqrt => series(a)?.sqrt()?,
        SeriesOp::Revert => series(a)?.revert()?,
        SeriesOp::Compose => series(a)?.compose(&second()?)?,
    };
    out.kv("series", result);
    Ok(true)
}

fn recur_cmd(family: &str, params: Option<&str>, terms: usize, out: &Out) -> Result<bool> {
    if family == "list" {
        for e in recurrences::registry() {
            out.kv(e.name, format!("({}) {}", e.params.join(", "), e.summary));
        }
        return Ok(true);
    }
    let params = list(params.ok_or_else(|| anyhow!("parameters required"))?)?;
    let r = recurrences::build(family, &params)?;
    let order = terms.max(1) - 1;
    let iterated = r.iterate(order);
    out.list("iterate", &iterated);
    let mut ok = true;
    match r.generating_function(order) {
        Ok(gf) => {
            let agree = gf.coeffs() == iterated.as_slice();
            out.list("closed_form", gf.coeffs());
            out.kv("agree", agree);
            ok &= agree;
        }
        Err(e) => out.kv("closed_form", format!("unavailable ({e})")),
    }
    if let Ok(p) = r.riordan_pair(order) {
        out.kv("riordan_g", p.g());
        out.kv("riordan_f", p.f());
    }
    Ok(ok)
}

fn curve_cmd(curve: &str, point: &str, order: usize, out: &Out) -> Result<bool> {
    let e = CurveSpec::parse(curve, true)?;
    if e.is_singular() {
        eprintln!("note: singular cubic; the group law is used on nonsingular points only");
    }
    let (x, y) = pair(point, "--point")?;
    let p = CurvePoint::affine(x, y);
    out.kv("curve", &e);
    let levels = order / 2 + 2;
    let table = e.point_multiples(&p, levels)?;
    if out.records {
        for r in &table.rows {
            println!("n={} x={} y={}", r.n, r.x, r.y);
        }
    } else {
        print!("{table}");
    }
    match e.division_polynomial_values(&p, levels) {
        Ok(psi) => out.list("psi", &psi),
        Err(err) => out.kv("psi", format!("unavailable ({err})")),
    }
    let (usable, obstruction) = elliptic::max_moment_order(&e, &p, order);
    match elliptic::curve_moment_gf(&e, &p, usable) {
        Ok(m) => out.kv("moments", m),
        Err(err) => out.kv("moments", format!("unavailable ({err})")),
    }
    if let Some(err) = obstruction {
        out.kv("moments_stop", err);
    }
    if p == CurvePoint::origin() {
        match elliptic::curve_pipeline(&e, order + 2) {
            Ok(r) => {
                out.kv("y_minus", &r.y_minus);
                out.kv("y_plus", &r.y_plus);
                out.kv("tail", &r.f);
                out.kv("a", r.a.truncate(order));
                out.list("hankel", &r.hankel[..r.hankel.len().min(order / 2 + 1)]);
            }
            Err(err) => out.kv("pipeline", format!("unavailable ({err})")),
        }
    }
    Ok(true)
}

fn conjecture_cmd(action: ConjectureAction, out: &Out) -> Result<bool> {
    match action {
        ConjectureAction::List => {
            for c in conjectures::conjectures() {
                out.kv(c.name(), format!("({}) {}", c.parameters().join(", "), c.summary()));
            }
            Ok(true)
        }
        ConjectureAction::Run { name, params, depth } => {
            let c = conjectures::conjecture(&name)?;
            let r = c.evaluate(&list(&params)?, depth)?;
            print_report(&r, out);
            Ok(r.passed())
        }
        ConjectureAction::Sweep { name, grid, depth } => {
            let c: &dyn Conjecture = conjectures::conjecture(&name)?;
            let grid = match grid {
                Some(g) => g.split(';').map(list).collect::<Result<Vec<_>>>()?,
                None => c.default_grid(),
            };
            let results = conjectures::sweep(&name, &grid, depth)?;
            let mut ok = true;
            let mut failed = 0;
            for (point, r) in grid.iter().zip(&results) {
                match r {
                    Ok(r) => {
                        ok &= r.passed();
                        failed += usize::from(!r.passed());
                        print_report(r, out);
                    }
                    Err(e) => {
                        ok = false;
                        failed += 1;
                        out.kv("error", format!("[{}] {e}", format_list(point)));
                    }
                }
            }
            out.kv("points", grid.len());
            out.kv("failing_points", failed);
            Ok(ok)
        }
    }
}

fn print_report(r: &rlab_core::report::ConjectureReport, out: &Out) {
    if out.records {
        print!("{}", r.to_records());
    } else {
        print!("{r}");
    }
}

fn print_jfraction(j: &JFraction, out: &Out) {
    out.kv("mu0", &j.mu0);
    out.list("alpha", &j.alphas);
    out.list("beta", &j.betas);
}

fn report_detection(d: &somos::SomosDetection, out: &Out) {
    match d {
        somos::SomosDetection::Witness(w) => {
            out.kv("somos", format!("({}, {})", w.alpha, w.beta));
            out.kv("window", format!("{}..={}", w.verified_window.0, w.verified_window.1));
            if w.degenerate {
                out.kv("degenerate", true);
            }
            if !w.skipped.is_empty() {
                out.kv("skipped", w.skipped.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            }
        }
        somos::SomosDetection::NoWitness { first_violation, reason } => {
            out.kv("somos", "none");
            out.kv("reason", reason);
            if let Some(n) = first_violation {
                out.kv("first_violation", n);
            }
        }
    }
}

