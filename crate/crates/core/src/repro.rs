//! Golden reproduction suite.
//!
//! Each `golden/*.golden` file holds a case name, a topic reference and the
//! expected window. The build script embeds them; [`compute`] maps a case
//! name to the code that recomputes the window.

use crate::elliptic::{curve_moment_gf, curve_moment_jfraction, curve_pipeline, CurvePoint, CurveSpec};
use crate::hankel::hankel_transform_n;
use crate::matrix::Matrix;
use crate::orthopoly::{coefficient_array, moment_matrix, production_matrix, ThreeTermRecurrence};
use crate::rational::{self, format_list, int, ints, parse_list, Rational};
use crate::recurrences::{self, riordan7_to_params};
use crate::riordan::{binomial_transform, RiordanPair};
use crate::series::{catalan_gf, TruncatedSeries};
use crate::somos::detect_somos4;
use num_traits::{One, Zero};
use std::fmt;

/// A golden file as embedded at build time.
#[derive(Debug, Clone, Copy)]
pub struct GoldenCase {
    pub name: &'static str,
    pub reference: &'static str,
    pub expect: &'static str,
}

static GOLDEN: &[GoldenCase] = include!(concat!(env!("OUT_DIR"), "/golden_cases.rs"));

pub fn golden_cases() -> &'static [GoldenCase] {
    GOLDEN
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproCase {
    pub name: String,
    pub reference: String,
    pub expect: Vec<Rational>,
}

impl ReproCase {
    pub fn from_golden(g: &GoldenCase) -> Result<Self, String> {
        let expect = parse_list(g.expect).map_err(|e| format!("{}: {e}", g.name))?;
        Ok(Self {
            name: g.name.to_string(),
            reference: g.reference.to_string(),
            expect,
        })
    }
}

/// The embedded suite. Panics only if a golden file has an unparsable window,
/// which the unit tests rule out.
pub fn golden_suite() -> Vec<ReproCase> {
    GOLDEN
        .iter()
        .map(|g| ReproCase::from_golden(g).expect("golden windows parse"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseStatus {
    Pass,
    Mismatch { index: usize, expected: Rational, actual: Option<Rational> },
    NoCompute,
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub reference: String,
    pub status: CaseStatus,
    pub actual: Vec<Rational>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            CaseStatus::Pass => write!(f, "PASS {} [{}]", self.name, self.reference),
            CaseStatus::Mismatch { index, expected, actual } => {
                let got = actual.as_ref().map_or("nothing".to_string(), ToString::to_string);
                write!(
                    f,
                    "FAIL {} [{}]: index {index} expected {expected}, got {got}; computed {}",
                    self.name,
                    self.reference,
                    format_list(&self.actual)
                )
            }
            CaseStatus::NoCompute => write!(f, "FAIL {} [{}]: no computation registered", self.name, self.reference),
            CaseStatus::Error(e) => write!(f, "FAIL {} [{}]: {e}", self.name, self.reference),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReproReport {
    pub results: Vec<CaseResult>,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let pass = self.results.iter().filter(|r| r.passed()).count();
        write!(f, "{pass}/{} cases pass", self.results.len())
    }
}

pub fn run_case(case: &ReproCase) -> CaseResult {
    let n = case.expect.len();
    let (status, actual) = match compute(&case.name) {
        None => (CaseStatus::NoCompute, Vec::new()),
        Some(run) => match run(n) {
            Err(e) => (CaseStatus::Error(e), Vec::new()),
            Ok(actual) => {
                let bad = (0..n).find(|&i| actual.get(i) != Some(&case.expect[i]));
                let status = match bad {
                    None => CaseStatus::Pass,
                    Some(i) => CaseStatus::Mismatch {
                        index: i,
                        expected: case.expect[i].clone(),
                        actual: actual.get(i).cloned(),
                    },
                };
                (status, actual)
            }
        },
    };
    CaseResult {
        name: case.name.clone(),
        reference: case.reference.clone(),
        status,
        actual,
    }
}

pub fn repro_run(suite: &[ReproCase]) -> ReproReport {
    ReproReport {
        results: suite.iter().map(run_case).collect(),
    }
}

type Out = Result<Vec<Rational>, String>;

/// Recomputes the first `n` values of a named case.
pub type Compute = fn(usize) -> Out;

pub fn compute(name: &str) -> Option<Compute> {
    COMPUTE.iter().find(|(k, _)| *k == name).map(|(_, f)| *f)
}

pub fn compute_names() -> impl Iterator<Item = &'static str> {
    COMPUTE.iter().map(|(k, _)| *k)
}

fn msg(e: impl fmt::Display) -> String {
    e.to_string()
}

fn iterate(family: &str, params: &[i64], n: usize) -> Out {
    let r = recurrences::build(family, &ints(params)).map_err(msg)?;
    Ok(r.iterate(n.max(1) - 1))
}

fn closed(family: &str, params: &[i64], n: usize) -> Out {
    let r = recurrences::build(family, &ints(params)).map_err(msg)?;
    Ok(r.generating_function(n.max(1) - 1).map_err(msg)?.into_coeffs())
}

fn hankel(a: &[Rational], n: usize) -> Out {
    hankel_transform_n(a, n).map_err(msg)
}

/// Hankel transform of `a_{shift}, a_{shift+1}, ...` scaled by `scale`.
fn iterate_hankel(family: &str, params: &[i64], n: usize, shift: usize, scale: i64) -> Out {
    let a = iterate(family, params, 2 * n - 1 + shift)?;
    let s = int(scale);
    let tail: Vec<Rational> = a[shift..].iter().map(|v| v * &s).collect();
    hankel(&tail, n)
}

fn witness(h: &[Rational]) -> Out {
    let w = detect_somos4(h);
    let w = w.witness().ok_or("no Somos-4 witness")?;
    Ok(vec![w.alpha.clone(), w.beta.clone()])
}

fn poly(c: &[i64], n: usize) -> TruncatedSeries {
    TruncatedSeries::from_ints(c, n)
}

fn ratio(num: &[i64], den: &[i64], n: usize) -> Result<TruncatedSeries, String> {
    poly(num, n).div(&poly(den, n)).map_err(msg)
}

fn catalan_image(g: TruncatedSeries, f: TruncatedSeries, n: usize) -> Out {
    let order = n.max(1) - 1;
    let pair = RiordanPair::new(g, f).map_err(msg)?;
    Ok(pair.apply(&catalan_gf(order), order).map_err(msg)?.into_coeffs())
}

fn flatten(m: &Matrix, rows: usize, cols: usize) -> Vec<Rational> {
    (0..rows).flat_map(|i| (0..cols).map(move |j| m.get(i, j).clone())).collect()
}

fn nodal() -> CurveSpec {
    CurveSpec::from_ints_with_singular([-1, -2, 1, 1, 0])
}

fn section_curve() -> CurveSpec {
    CurveSpec::from_ints_with_singular([-3, 0, -1, -1, 0])
}

fn family(t: i64) -> CurveSpec {
    crate::conjectures::curve_family_member(&int(t))
}

fn moments(e: &CurveSpec, n: usize) -> Out {
    Ok(curve_moment_gf(e, &CurvePoint::origin(), n.max(1) - 1).map_err(msg)?.into_coeffs())
}

fn pipeline_a(e: &CurveSpec, n: usize) -> Out {
    Ok(curve_pipeline(e, n + 2).map_err(msg)?.a.truncate(n - 1).into_coeffs())
}

fn pipeline_hankel(e: &CurveSpec, n: usize) -> Out {
    let a = curve_pipeline(e, 2 * n + 2).map_err(msg)?.a;
    hankel(a.coeffs(), n)
}

fn branches(e: &CurveSpec, n: usize, plus: bool) -> Out {
    let (minus, up) = crate::elliptic::solve_curve_for_y(e, n - 1).map_err(msg)?;
    Ok(if plus { up } else { minus }.into_coeffs())
}

fn tail(e: &CurveSpec, n: usize) -> Result<TruncatedSeries, String> {
    Ok(curve_pipeline(e, n + 2).map_err(msg)?.f)
}

fn recurrence_data(e: &CurveSpec, levels: usize) -> Result<ThreeTermRecurrence, String> {
    let j = curve_moment_jfraction(e, &CurvePoint::origin(), 2 * levels).map_err(msg)?;
    Ok(ThreeTermRecurrence::from_jfraction(&j))
}

fn coefficient_rows(e: &CurveSpec) -> Result<Matrix, String> {
    coefficient_array(&recurrence_data(e, 6)?, 6).map_err(msg)
}

fn moment_rows(e: &CurveSpec, size: usize) -> Result<Matrix, String> {
    moment_matrix(&recurrence_data(e, size)?, size - 1).map_err(msg)
}

fn coordinates(e: &CurveSpec, n: usize, ys: bool) -> Out {
    let t = e.point_multiples(&CurvePoint::origin(), n).map_err(msg)?;
    Ok(if ys { t.ys() } else { t.xs() })
}

/// `F_{2n+1}` through `(1 - x, x (1 - x/3)) . 1/(1 - 3x)`.
fn fibonacci_bisection(n: usize) -> Out {
    let order = n - 1;
    let g = poly(&[1, -1], order);
    let f = TruncatedSeries::from_poly(&[Rational::zero(), Rational::one(), rational::frac(-1, 3)], order);
    let h = ratio(&[1], &[1, -3], order)?;
    let pair = RiordanPair::new(g, f).map_err(msg)?;
    Ok(pair.apply(&h, order).map_err(msg)?.into_coeffs())
}

static COMPUTE: &[(&str, Compute)] = &[
    ("nodal-moments", |n| moments(&nodal(), n)),
    ("nodal-moments-recurrence", |n| iterate("fourth-order", &[-1, -1, 2, -1, -2, -2, -1], n)),
    ("nodal-moment-hankel", |n| hankel(&moments(&nodal(), 2 * n)?, n)),
    ("nodal-psi-hankel", |n| {
        // the printed identity uses psi at -P
        let e = nodal();
        let psi = e.division_polynomial_values(&e.negate(&CurvePoint::origin()), n + 1).map_err(msg)?;
        Ok((0..n).map(|k| rational::sign_pow(k as i64 + 1) * &psi[k + 2]).collect())
    }),
    ("nodal-branch-plus", |n| branches(&nodal(), n, true)),
    ("nodal-branch-minus", |n| branches(&nodal(), n, false)),
    ("nodal-common-tail", |n| Ok(tail(&nodal(), n)?.truncate(n - 1).into_coeffs())),
    ("nodal-a", |n| pipeline_a(&nodal(), n)),
    ("nodal-a-recurrence", |n| iterate("fourth-order", &[-1, -1, 8, -3, -4, 2, 1], n)),
    ("nodal-a-hankel", |n| pipeline_hankel(&nodal(), n)),
    ("nodal-coefficient-array", |_| Ok(flatten(&coefficient_rows(&nodal())?, 7, 7))),
    ("nodal-moment-matrix", |_| Ok(flatten(&moment_rows(&nodal(), 7)?, 7, 7))),
    ("nodal-integer-array", |_| {
        let c = coefficient_rows(&nodal())?;
        Ok((0..7)
            .flat_map(|i| {
                let (_, mut row) = c.row_scaled_to_integers(i);
                row.resize(7, 0.into());
                row.into_iter().map(Rational::from_integer)
            })
            .collect())
    }),
    ("catalan", |n| Ok(catalan_gf(n - 1).into_coeffs())),
    ("large-schroeder", |n| closed("catalan-schroeder", &[2, 3, 1], n)),
    ("catalan-even-aerated", |n| {
        let c = catalan_gf(n - 1);
        let sum = &c + &c.scale_var(&int(-1));
        Ok(sum.scale(&rational::frac(1, 2)).into_coeffs())
    }),
    ("little-schroeder-via-array", |n| {
        let order = n - 1;
        let c = catalan_gf(order);
        let even = (&c + &c.scale_var(&int(-1))).scale(&rational::frac(1, 2));
        let g = ratio(&[1], &[1, -1], order)?;
        let f = ratio(&[0, 1], &[1, -2, 1], order)?;
        let pair = RiordanPair::new(g, f).map_err(msg)?;
        Ok(pair.apply(&even, order).map_err(msg)?.into_coeffs())
    }),
    ("little-schroeder", |n| closed("catalan-schroeder", &[1, 3, 2], n)),
    ("motzkin-prepended", |n| iterate("catalan-schroeder", &[1, 1, 1], n)),
    ("motzkin-prepended-hankel", |n| iterate_hankel("catalan-schroeder", &[1, 1, 1], n, 0, 1)),
    ("motzkin-two-colour", |n| iterate("catalan-schroeder", &[1, 1, 2], n)),
    ("motzkin-two-colour-hankel", |n| iterate_hankel("catalan-schroeder", &[1, 1, 2], n, 0, 1)),
    ("signed-fibonacci-source", |n| iterate("catalan-schroeder", &[1, -1, -1], n)),
    ("signed-fibonacci-hankel", |n| iterate_hankel("catalan-schroeder", &[1, -1, -1], n, 0, 1)),
    ("schroeder-211", |n| closed("catalan-schroeder", &[2, 1, 1], n)),
    ("schroeder-211-hankel", |n| iterate_hankel("catalan-schroeder", &[2, 1, 1], n, 0, 1)),
    ("schroeder-211-somos", |_| witness(&iterate_hankel("catalan-schroeder", &[2, 1, 1], 10, 0, 1)?)),
    ("third-12211", |n| closed("third-order", &[1, 2, 2, 1, 1], n)),
    ("third-12222", |n| closed("third-order", &[1, 2, 2, 2, 1], n)),
    ("third-12222-shift-hankel", |n| iterate_hankel("third-order", &[1, 2, 2, 2, 1], n, 1, 1)),
    ("third-12222-somos", |_| witness(&iterate_hankel("third-order", &[1, 2, 2, 2, 1], 11, 1, 1)?)),
    ("third-signed-shift", |n| {
        Ok(iterate("third-order", &[-1, 2, -2, -1, -1], n + 1)?[1..].iter().map(|v| -v).collect())
    }),
    ("third-signed-shift-hankel", |n| iterate_hankel("third-order", &[-1, 2, -2, -1, -1], n, 1, -1)),
    ("third-signed", |n| iterate("third-order", &[-1, 2, -2, -1, -1], n)),
    ("third-signed-hankel", |n| iterate_hankel("third-order", &[-1, 2, -2, -1, -1], n, 0, 1)),
    ("third-second-signed", |n| closed("third-order", &[-1, -2, 2, -1, -1], n)),
    ("third-second-signed-hankel", |n| iterate_hankel("third-order", &[-1, -2, 2, -1, -1], n, 0, 1)),
    ("third-second-signed-shift-hankel", |n| iterate_hankel("third-order", &[-1, -2, 2, -1, -1], n, 1, -1)),
    ("alpha-one", |n| {
        let order = n - 1;
        let g = TruncatedSeries::one(order);
        catalan_image(g, ratio(&[0, 0, 1], &[1, -1, -1], order)?, n)
    }),
    ("alpha-one-hankel", |n| iterate_hankel("third-order", &[0, 1, 1, 3, 1], n, 0, 1)),
    ("fibonacci-bisection", fibonacci_bisection),
    ("alpha-minus-one", |n| iterate("third-order", &[0, 3, 1, 3, 1], n)),
    ("alpha-minus-one-hankel", |n| iterate_hankel("third-order", &[0, 3, 1, 3, 1], n, 0, 1)),
    ("alpha-minus-one-normalised", |n| {
        let h = iterate_hankel("third-order", &[0, 3, 1, 3, 1], n, 0, 1)?;
        Ok(h.iter()
            .enumerate()
            .map(|(k, v)| v / rational::pow(&int(3), ((k + 1) * (k + 1) / 4) as i64))
            .collect())
    }),
    ("alpha-minus-one-undoubled", |n| Ok(ratio(&[1, -3], &[1, -3, 3], n - 1)?.into_coeffs())),
    ("alpha-two-trivial", |n| closed("third-order", &[0, 0, 1, 3, 1], n)),
    ("fourth-a004149", |n| closed("fourth-order", &[1, 1, 2, 1, 1, 1, 1], n)),
    ("fourth-a162985", |n| closed("fourth-order", &[1, 2, 3, 1, 1, 1, 1], n)),
    ("fourth-a023431", |n| closed("fourth-order", &[1, 1, 2, 1, 0, 2, 1], n)),
    ("fourth-a091561-hankel", |n| iterate_hankel("fourth-order", &[2, 4, 9, 2, 0, 2, 1], n, 0, 1)),
    ("fourth-a004148", |n| closed("fourth-order", &[1, 2, 4, 1, 1, 2, 1], n)),
    ("fourth-rna-related", catalan_rna_related),
    ("fourth-rna-related-hankel", |n| hankel(&catalan_rna_related(2 * n - 1)?, n)),
    ("fourth-rna-related-somos", |_| witness(&hankel(&catalan_rna_related(21)?, 11)?)),
    ("fourth-1361221", |n| closed("fourth-order", &[1, 3, 6, 1, 2, 2, 1], n)),
    ("fourth-1361221-hankel", |n| iterate_hankel("fourth-order", &[1, 3, 6, 1, 2, 2, 1], n, 0, 1)),
    ("fourth-b-exponents", |n| {
        Ok(ratio(&[0, 1, -1, 2, -2, 3, -3, 1], &[1, -2, 1, -1, 2, -1], n - 1)?.into_coeffs())
    }),
    ("fourth-alpha-minus-one", |n| closed("fourth-order", &[0, 0, 3, 1, 1, 3, 1], n)),
    ("fourth-alpha-minus-one-hankel", |n| iterate_hankel("fourth-order", &[0, 0, 3, 1, 1, 3, 1], n, 0, 1)),
    ("fourth-alpha-two-trivial", |n| closed("fourth-order", &[0, 0, 0, 1, 1, 3, 1], n)),
    ("conversion-doubly-aerated-params", |_| {
        // (1 + a x + b x^2 + c x^3)/(1 + d x + e x^2 + f x^3) = 1/(1 - x^3), m = 1
        Ok(riordan7_to_params(&[int(0), int(0), int(0), int(0), int(0), int(-1), int(1)]).to_vec())
    }),
    ("conversion-doubly-aerated", |n| iterate("fourth-order", &[0, 0, 2, 0, 0, 3, 1], n)),
    ("conversion-doubly-aerated-hankel", |n| iterate_hankel("fourth-order", &[0, 0, 2, 0, 0, 3, 1], n, 0, 1)),
    ("curve-y-minus", |n| branches(&section_curve(), n, false)),
    ("curve-y-plus", |n| branches(&section_curve(), n, true)),
    // read off the upper branch here, i.e. the negated pipeline tail
    ("curve-common-tail", |n| Ok((-&tail(&section_curve(), n)?).truncate(n - 1).into_coeffs())),
    ("curve-common-tail-hankel", |n| hankel((-&tail(&section_curve(), 2 * n)?).coeffs(), n)),
    ("curve-common-tail-somos", |_| witness(&hankel((-&tail(&section_curve(), 22)?).coeffs(), 10)?)),
    ("curve-shifted-tail-hankel", |n| {
        let f = -&tail(&section_curve(), 2 * n + 1)?;
        hankel(&f.coeffs()[1..], n)
    }),
    ("curve-a", |n| pipeline_a(&section_curve(), n)),
    ("curve-a-recurrence", |n| iterate("fourth-order", &[-1, 3, -8, -3, 0, 2, 1], n)),
    ("curve-moments", |n| moments(&section_curve(), n)),
    ("curve-a-hankel", |n| pipeline_hankel(&section_curve(), n)),
    ("curve-a-somos", |_| witness(&pipeline_hankel(&section_curve(), 11)?)),
    ("curve-second-binomial", |n| {
        let a = curve_pipeline(&section_curve(), n + 2).map_err(msg)?.a.truncate(n - 1);
        Ok(binomial_transform(&a, &int(2)).into_coeffs())
    }),
    ("curve-x-table", |n| coordinates(&section_curve(), n, false)),
    ("curve-y-table", |n| coordinates(&section_curve(), n, true)),
    ("family-t0-a", |n| pipeline_a(&family(0), n)),
    ("family-t0-hankel", |n| pipeline_hankel(&family(0), n)),
    ("family-tm3-a", |n| pipeline_a(&family(-3), n)),
    ("family-tm3-a-recurrence", |n| iterate("fourth-order", &[-1, 0, 1, 0, 0, 2, 1], n)),
    ("family-tm3-hankel", |n| pipeline_hankel(&family(-3), n)),
    ("family-tm3-moments", |n| moments(&family(-3), n)),
    ("family-tm3-x-table", |n| coordinates(&family(-3), n, false)),
    ("family-tm3-y-table", |n| coordinates(&family(-3), n, true)),
    ("family-tm3-coefficient-array", |_| Ok(flatten(&coefficient_rows(&family(-3))?, 7, 7))),
    ("family-tm3-moment-matrix", |_| Ok(flatten(&moment_rows(&family(-3), 7)?, 7, 7))),
    ("family-tm3-production-matrix", |_| {
        let p = production_matrix(&moment_rows(&family(-3), 8)?).map_err(msg)?;
        Ok(flatten(&p, 7, 7))
    }),
];

/// `(1 - x)/(1 - x - x^2) c(x^3 (1 - x)/(1 - x - x^2)^2)` to `n` terms.
fn catalan_rna_related(n: usize) -> Out {
    let order = n - 1;
    let g = ratio(&[1, -1], &[1, -1, -1], order)?;
    let f = ratio(&[0, 0, 0, 1, -1], &[1, -2, -1, 2, 1], order)?;
    catalan_image(g, f, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_has_a_computation() {
        let suite = golden_suite();
        assert!(!suite.is_empty());
        for c in &suite {
            assert!(compute(&c.name).is_some(), "{} has no computation", c.name);
            assert!(!c.reference.is_empty());
        }
        for name in compute_names() {
            assert!(suite.iter().any(|c| c.name == name), "{name} has no golden file");
        }
    }

    #[test]
    fn golden_suite_passes() {
        let report = repro_run(&golden_suite());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn mismatch_is_reported() {
        let case = ReproCase {
            name: "catalan".into(),
            reference: "test".into(),
            expect: ints(&[1, 1, 2, 6]),
        };
        let r = run_case(&case);
        assert_eq!(
            r.status,
            CaseStatus::Mismatch { index: 3, expected: int(6), actual: Some(int(5)) }
        );
        assert!(r.to_string().starts_with("FAIL catalan"));
        let missing = ReproCase { name: "nope".into(), reference: "x".into(), expect: ints(&[1]) };
        assert_eq!(run_case(&missing).status, CaseStatus::NoCompute);
    }
}
