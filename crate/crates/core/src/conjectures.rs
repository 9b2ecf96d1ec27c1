//! Named conjectures on Hankel transforms and Somos-4 laws, evaluated exactly
//! at concrete parameter points. Failures are data in the report.

use crate::elliptic::{curve_pipeline, general_formula_check, CurveSpec};
use crate::hankel::hankel_transform_n;
use crate::rational::{binomial_q, int, pow, Rational};
use crate::recurrences::{ConvolutionRecurrence, FullConvolutionSpec, Recurrence2Spec, Recurrence3Spec, Recurrence4Spec};
use crate::report::{Claim, ConjectureReport};
use crate::riordan::RiordanPair;
use crate::series::{catalan_gf, TruncatedSeries};
use crate::somos::somos_claim;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjectureError {
    #[error("unknown conjecture `{0}`")]
    Unknown(String),
    #[error("`{name}` takes parameters ({expected}), got {got}")]
    Arity {
        name: String,
        expected: String,
        got: usize,
    },
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error("depth must be at least {0}")]
    Depth(usize),
    #[error("{0}")]
    Compute(String),
}

pub trait Conjecture: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn parameters(&self) -> &'static [&'static str];
    /// Parameter points used by a default sweep.
    fn default_grid(&self) -> Vec<Vec<Rational>>;
    /// Evaluates every claim with Hankel indices `0..=depth`.
    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError>;
}

fn compute<E: std::fmt::Display>(e: E) -> ConjectureError {
    ConjectureError::Compute(e.to_string())
}

fn check_arity(c: &dyn Conjecture, params: &[Rational]) -> Result<(), ConjectureError> {
    if params.len() != c.parameters().len() {
        return Err(ConjectureError::Arity {
            name: c.name().into(),
            expected: c.parameters().join(", "),
            got: params.len(),
        });
    }
    Ok(())
}

fn new_report(c: &dyn Conjecture, params: &[Rational]) -> ConjectureReport {
    let named = c
        .parameters()
        .iter()
        .zip(params)
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    ConjectureReport::new(c.name(), named)
}

/// Polynomial with integer coefficients by increasing power, evaluated at `x`.
fn poly(coeffs: &[i64], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, &c| acc * x + int(c))
}

fn hankel(seq: &[Rational], depth: usize) -> Result<Vec<Rational>, ConjectureError> {
    hankel_transform_n(seq, depth + 1).map_err(compute)
}

/// `[x^n] num/den` for `n = 0..=order`.
fn ratio(num: &[Rational], den: &[Rational], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_poly(num, order)
        .div(&TruncatedSeries::from_poly(den, order))
        .expect("unit constant term")
}

/// `(num/den, m x^k num/den^2) . c(x)` to `order`.
fn catalan_form(num: &[Rational], den: &[Rational], m: &Rational, k: usize, order: usize) -> Result<TruncatedSeries, ConjectureError> {
    let g = ratio(num, den, order);
    let d = TruncatedSeries::from_poly(den, order);
    let f = TruncatedSeries::from_poly(num, order)
        .mul_x_pow(k)
        .truncate(order)
        .scale(m)
        .div(&d.mul(&d))
        .map_err(compute)?;
    let pair = RiordanPair::new(g, f).map_err(compute)?;
    pair.apply(&catalan_gf(order), order).map_err(compute)
}

fn compare_claim(name: &str, expected: &[Rational], actual: &[Rational]) -> Claim {
    let mut claim = Claim::new(name);
    claim.compare(0, expected, actual);
    claim
}

fn triangular(n: usize) -> i64 {
    (n * (n + 1) / 2) as i64
}

fn rs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn grid(values: &[i64], dims: usize, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().filter(|p| keep(p)).map(|p| rs(&p)).collect()
}

struct SchroederHankel;

impl SchroederHankel {
    /// `t^{C(n,2)} p^{C(n+1,2)} [x^n] (1 - p x)/(1 - s x + p t x^2)`.
    pub fn closed_form(p: &Rational, s: &Rational, t: &Rational, depth: usize) -> Vec<Rational> {
        let one = Rational::one();
        let series = ratio(&[one.clone(), -p.clone()], &[one, -s.clone(), p * t], depth);
        (0..=depth)
            .map(|n| pow(t, triangular(n) - n as i64) * pow(p, triangular(n)) * series.coeff(n))
            .collect()
    }

    /// The same value through the explicit double sum.
    pub fn explicit_sum(p: &Rational, s: &Rational, t: &Rational, n: usize) -> Rational {
        let n = n as i64;
        let mpt = -(p * t);
        let mut first = Rational::zero();
        for i in 0..=n {
            let b = binomial_q(i, n - i);
            if !b.is_zero() {
                first += b * pow(&mpt, n - i) * pow(s, 2 * i - n);
            }
        }
        let mut second = Rational::zero();
        for i in 0..n {
            let b = binomial_q(i, n - i - 1);
            if !b.is_zero() {
                second += b * pow(&mpt, n - i - 1) * pow(s, 2 * i - n + 1);
            }
        }
        pow(t, triangular(n as usize) - n) * pow(p, triangular(n as usize)) * (first - p * second)
    }
}

impl Conjecture for SchroederHankel {
    fn name(&self) -> &'static str {
        "schroeder-hankel"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of a_n(p,s,t) is t^C(n,2) p^C(n+1,2) [x^n](1-px)/(1-sx+ptx^2)"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["p", "s", "t"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-2, -1, 1, 2], 3, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let (p, s, t) = (&params[0], &params[1], &params[2]);
        let seq = Recurrence2Spec::new(p.clone(), s.clone(), t.clone()).iterate(2 * depth);
        let h = hankel(&seq, depth)?;
        let mut report = new_report(self, params);
        report.push(compare_claim("closed-form", &Self::closed_form(p, s, t, depth), &h));
        let sums: Vec<Rational> = (0..=depth).map(|n| Self::explicit_sum(p, s, t, n)).collect();
        report.push(compare_claim("explicit-sum", &sums, &h));
        Ok(report)
    }
}

struct SchroederSomos;

impl Conjecture for SchroederSomos {
    fn name(&self) -> &'static str {
        "schroeder-somos"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of a_n(p,s,t) is a ((pst)^2, (pt)^3 (pt - s^2)) Somos-4 sequence"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["p", "s", "t"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-2, -1, 1, 2], 3, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let (p, s, t) = (&params[0], &params[1], &params[2]);
        let seq = Recurrence2Spec::new(p.clone(), s.clone(), t.clone()).iterate(2 * depth);
        let h = hankel(&seq, depth)?;
        let pst = p * s * t;
        let pt = p * t;
        let alpha = &pst * &pst;
        let beta = pow(&pt, 3) * (&pt - s * s);
        let mut report = new_report(self, params);
        report.push(somos_claim("somos", &h, &alpha, &beta));
        Ok(report)
    }
}

struct ThirdOrderSomos;

impl Conjecture for ThirdOrderSomos {
    fn name(&self) -> &'static str {
        "third-order-somos"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of a_{n+1}(p,q,r,s,t)/p is a ((pt)^2, -t^2(p^2 s + pqr - q^2)) Somos-4 sequence"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["p", "q", "r", "s", "t"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-1, 1, 2], 5, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let (p, q, r, s, t) = (&params[0], &params[1], &params[2], &params[3], &params[4]);
        if p.is_zero() {
            return Err(ConjectureError::Precondition("p != 0".into()));
        }
        let seq = Recurrence3Spec::new(p.clone(), q.clone(), r.clone(), s.clone(), t.clone()).iterate(2 * depth + 1);
        let shifted: Vec<Rational> = seq[1..].iter().map(|v| v / p).collect();
        let h = hankel(&shifted, depth)?;
        let pt = p * t;
        let beta = -(t * t) * (p * p * s + p * q * r - q * q);
        let mut report = new_report(self, params);
        report.push(somos_claim("somos", &h, &(&pt * &pt), &beta));
        Ok(report)
    }
}

struct ThirdOrderSpecial;

impl Conjecture for ThirdOrderSpecial {
    fn name(&self) -> &'static str {
        "third-order-special"
    }

    fn summary(&self) -> &'static str {
        "r = t = 1, s = q - p + 1: Hankel transform of a_n is a (p^2, p^3 - pq + q^2 - p^2(1+q)) Somos-4 sequence"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["p", "q"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-2, -1, 0, 1, 2], 2, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let (p, q) = (&params[0], &params[1]);
        let one = Rational::one();
        let spec = Recurrence3Spec::new(p.clone(), q.clone(), one.clone(), q - p + &one, one.clone());
        let seq = spec.iterate(2 * depth);
        let h = hankel(&seq, depth)?;
        let alpha = p * p;
        let beta = pow(p, 3) - p * q + q * q - p * p * (&one + q);
        let mut report = new_report(self, params);
        report.push(somos_claim("somos", &h, &alpha, &beta));
        let num = [one.clone(), -(&one - p)];
        let den = [one.clone(), -one.clone(), p + q - &one];
        let printed = catalan_form(&num, &den, &one, 2, 2 * depth)?;
        let mut claim = compare_claim("printed-gf", printed.coeffs(), &seq);
        claim.note("pair ((1-(1-p)x)/(1-x+(p+q-1)x^2), x^2(1-(1-p)x)/(1-x+(p+q-1)x^2)^2)");
        report.push(claim);
        Ok(report)
    }
}

fn floor_sq(n: usize) -> i64 {
    ((n + 1) * (n + 1) / 4) as i64
}

struct AlphaHankel;

impl AlphaHankel {
    fn sequence(alpha: &Rational, order: usize) -> Vec<Rational> {
        let one = Rational::one();
        Recurrence3Spec::new(Rational::zero(), int(2) - alpha, one.clone(), int(3), one).iterate(order)
    }

    /// `d_n = sum_k (C(k, n-k) + 3 C(k, n-k-1)) (alpha-2)^{n-k} 3^{2k-n}`.
    fn d(alpha: &Rational, n: usize) -> Rational {
        let n = n as i64;
        let am2 = alpha - int(2);
        (0..=n)
            .map(|k| (binomial_q(k, n - k) + int(3) * binomial_q(k, n - k - 1)) * pow(&am2, n - k) * pow(&int(3), 2 * k - n))
            .sum()
    }
}

impl Conjecture for AlphaHankel {
    fn name(&self) -> &'static str {
        "alpha-hankel"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of (1-x-ax^2)/(1-x-x^2) c(x^2(1-x-ax^2)/(1-x-x^2)^2) is (2-a)^floor((n+1)^2/4) [x^n](1+x)(1+(a-2)x^2)/(1-3x^2-(a-2)x^4)"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["alpha"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-1, 0, 1, 2, 3], 1, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let alpha = &params[0];
        let one = Rational::one();
        let seq = Self::sequence(alpha, 2 * depth);
        let mut report = new_report(self, params);
        let num = [one.clone(), -one.clone(), -alpha.clone()];
        let den = [one.clone(), -one.clone(), -one.clone()];
        let gf = catalan_form(&num, &den, &one, 2, 2 * depth)?;
        report.push(compare_claim("recurrence-parameters", gf.coeffs(), &seq));
        let h = hankel(&seq, depth)?;
        let am2 = alpha - int(2);
        let tm = int(2) - alpha;
        let series = ratio(
            &[one.clone(), one.clone(), am2.clone(), am2.clone()],
            &[one.clone(), Rational::zero(), int(-3), Rational::zero(), -am2.clone()],
            depth,
        );
        let closed: Vec<Rational> = (0..=depth).map(|n| pow(&tm, floor_sq(n)) * series.coeff(n)).collect();
        report.push(compare_claim("closed-form", &closed, &h));
        let via_d: Vec<Rational> = (0..=depth).map(|n| pow(&tm, floor_sq(n)) * Self::d(alpha, n / 2)).collect();
        report.push(compare_claim("d-form", &via_d, &h));
        Ok(report)
    }
}

struct BetaHankel;

impl Conjecture for BetaHankel {
    fn name(&self) -> &'static str {
        "beta-hankel"
    }

    fn summary(&self) -> &'static str {
        "a_n = a_{n-1} + 3a_{n-2} + sum a_k a_{n-k-2}, a = 1, 0, b: Hankel is b^floor((n+1)^2/4) [x^n](1+x)(1-bx^2)/(1-3x^2+bx^4)"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["beta"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-1, 0, 1, 2, 3], 1, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let beta = &params[0];
        let one = Rational::one();
        let seq = Recurrence3Spec::new(Rational::zero(), beta.clone(), one.clone(), int(3), one.clone()).iterate(2 * depth);
        let h = hankel(&seq, depth)?;
        let series = ratio(
            &[one.clone(), one.clone(), -beta.clone(), -beta.clone()],
            &[one, Rational::zero(), int(-3), Rational::zero(), beta.clone()],
            depth,
        );
        let closed: Vec<Rational> = (0..=depth).map(|n| pow(beta, floor_sq(n)) * series.coeff(n)).collect();
        let mut report = new_report(self, params);
        report.push(compare_claim("closed-form", &closed, &h));
        Ok(report)
    }
}

struct FullConvolutionSomos;

impl Conjecture for FullConvolutionSomos {
    fn name(&self) -> &'static str {
        "full-convolution-somos"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of a_n = r a_{n-1} + s a_{n-2} + t sum a_i a_{n-2-i}, a_1 = p, is a ((pt)^2, t^2((t+s)^2 - p^2 s + prs + prt - 2p^2 t)) Somos-4 sequence"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["r", "s", "t", "p"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-2, -1, 1, 2], 3, |_| true)
            .into_iter()
            .map(|mut v| {
                v.push(v[0].clone());
                v
            })
            .collect()
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let (r, s, t, p) = (&params[0], &params[1], &params[2], &params[3]);
        let spec = FullConvolutionSpec::new(r.clone(), s.clone(), t.clone(), Some(p.clone()));
        let seq = spec.iterate(2 * depth);
        let h = hankel(&seq, depth)?;
        let pt = p * t;
        let alpha = &pt * &pt;
        let ts = t + s;
        let general = t * t * (&ts * &ts - p * p * s + p * r * s + p * r * t - int(2) * p * p * t);
        let first = t * t * &ts * &ts - r * r * pow(t, 3);
        let mut report = new_report(self, params);
        report.push(somos_claim("somos", &h, &alpha, &general));
        let mut claim = somos_claim("somos-first-form", &h, &alpha, &first);
        claim.note("((pt)^2, t^2(t+s)^2 - r^2 t^3) with p = a_1; stated for a_1 = r");
        report.push(claim);
        let one = Rational::one();
        let closed = catalan_form(&[one.clone(), p - r], &[one, -r.clone(), -s.clone()], t, 2, 2 * depth);
        match closed {
            Ok(c) => report.push(compare_claim("closed-form", c.coeffs(), &seq)),
            Err(e) => report.notes.push(format!("closed form unavailable: {e}")),
        }
        Ok(report)
    }
}

struct QuarticSomos;

impl QuarticSomos {
    /// Printed Hankel prefix polynomials in alpha, by increasing power.
    const PREFIX: [&'static [i64]; 8] = [
        &[1],
        &[0, 1],
        &[-1, 1],
        &[-1, 1, 0, -1],
        &[0, -2, 3, -1, -1],
        &[1, -3, 3, -2, 1, 0, -1],
        &[1, -3, 3, 3, -9, 6, 1, -2],
        &[0, 3, -12, 19, -11, -3, 5, 2, -3, 0, 1],
    ];
}

impl Conjecture for QuarticSomos {
    fn name(&self) -> &'static str {
        "fourth-order-somos"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of 1/(1-x-ax^2) c(x^3/(1-x-ax^2)^2) is a (1, -a) Somos-4 sequence"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["alpha"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-2, -1, 0, 1, 2, 3], 1, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let alpha = &params[0];
        let one = Rational::one();
        let spec = Recurrence4Spec::new(
            one.clone(),
            alpha + &one,
            int(2) * alpha + int(2),
            one.clone(),
            alpha.clone(),
            int(2),
            one.clone(),
        );
        let seq = spec.iterate(2 * depth);
        let mut report = new_report(self, params);
        let gf = catalan_form(std::slice::from_ref(&one), &[one.clone(), -one.clone(), -alpha.clone()], &one, 3, 2 * depth)?;
        report.push(compare_claim("recurrence-parameters", gf.coeffs(), &seq));
        let h = hankel(&seq, depth)?;
        report.push(somos_claim("somos", &h, &one, &-alpha.clone()));
        let prefix: Vec<Rational> = Self::PREFIX.iter().map(|c| poly(c, alpha)).collect();
        let n = prefix.len().min(h.len());
        report.push(compare_claim("printed-prefix", &prefix[..n], &h[..n]));
        Ok(report)
    }
}

struct QuarticHankel;

impl QuarticHankel {
    /// `B_n = [x^n] x(1-x+2x^2-2x^3+3x^4-3x^5+x^6)/((1-x)^2(1-x^3))`.
    pub fn b_series(order: usize) -> Vec<i64> {
        let num = rs(&[0, 1, -1, 2, -2, 3, -3, 1]);
        let den = rs(&[1, -2, 1, -1, 2, -1]);
        ratio(&num, &den, order)
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).expect("small"))
            .collect()
    }
}

impl Conjecture for QuarticHankel {
    fn name(&self) -> &'static str {
        "fourth-order-hankel"
    }

    fn summary(&self) -> &'static str {
        "Hankel transform of (1-x-x^2-ax^3)/(1-x-x^2-x^3) c(x^3(...)/(...)^2) is A_n(a)(2-a)^B_n"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["alpha"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-1, 0, 1, 2, 3], 1, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let alpha = &params[0];
        let one = Rational::one();
        let z = Rational::zero();
        let spec = Recurrence4Spec::new(z.clone(), z.clone(), int(2) - alpha, one.clone(), one.clone(), int(3), one.clone());
        let seq = spec.iterate(2 * depth);
        let mut report = new_report(self, params);
        let num = [one.clone(), -one.clone(), -one.clone(), -alpha.clone()];
        let den = [one.clone(), -one.clone(), -one.clone(), -one.clone()];
        let gf = catalan_form(&num, &den, &one, 3, 2 * depth)?;
        report.push(compare_claim("recurrence-parameters", gf.coeffs(), &seq));
        let h = hankel(&seq, depth)?;
        let am2 = alpha - int(2);
        let mut a_num = vec![z.clone(); 9];
        a_num[0] = one.clone();
        a_num[2] = am2.clone();
        a_num[3] = -am2.clone();
        a_num[5] = int(4) * alpha - int(5);
        a_num[8] = -((alpha - &one) * &am2);
        let mut a_den = vec![z.clone(); 7];
        a_den[0] = one.clone();
        a_den[3] = int(3);
        a_den[6] = -am2.clone();
        let a_n = ratio(&a_num, &a_den, depth);
        let b_n = Self::b_series(depth);
        let tm = int(2) - alpha;
        let closed: Vec<Rational> = (0..=depth).map(|n| a_n.coeff(n) * pow(&tm, b_n[n])).collect();
        report.push(compare_claim("closed-form", &closed, &h));
        Ok(report)
    }
}

/// `y^2 + 4xy + y = x^3 + (t-1)x^2 + tx`.
pub fn curve_family_member(t: &Rational) -> CurveSpec {
    CurveSpec::with_singular(int(4), t - int(1), int(1), t.clone(), Rational::zero())
}

struct CurveFamily;

impl Conjecture for CurveFamily {
    fn name(&self) -> &'static str {
        "curve-family"
    }

    fn summary(&self) -> &'static str {
        "for y^2+4xy+y = x^3+(t-1)x^2+tx, the reverted sequence a_n has a (1, t^2+3t+1) Somos-4 Hankel transform"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["t"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-3, -2, -1, 0, 1, 2, 3], 1, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let t = &params[0];
        let e = curve_family_member(t);
        let order = 2 * depth;
        let pipe = curve_pipeline(&e, order).map_err(compute)?;
        let a = pipe.a.coeffs();
        let mut report = new_report(self, params);
        if e.is_singular() {
            report.notes.push("singular cubic (discriminant 0)".into());
        }
        let one = Rational::one();
        let t2 = int(2) * t + int(5);
        let den = [one.clone(), int(2) * (t + int(3)), (t + int(2)) * (t + int(3))];
        let closed = catalan_form(&[one.clone(), t2], &den, &one, 3, order)?;
        report.push(compare_claim("a-closed-form", closed.coeffs(), a));
        let prefix = [
            one.clone(),
            -one.clone(),
            -(t * (t + int(3))),
            poly(&[7, 23, 13, 2], t),
            poly(&[-44, -134, -103, -30, -3], t),
        ];
        let n = prefix.len().min(a.len());
        report.push(compare_claim("a-prefix", &prefix[..n], &a[..n]));
        let mut rec = Claim::new("a-recurrence");
        for n in 4..a.len() {
            let mut v = -(int(2) * (t + int(3))) * &a[n - 1] - (t + int(2)) * (t + int(3)) * &a[n - 2] + int(2) * &a[n - 3];
            for k in 1..=n - 4 {
                v += &a[k] * &a[n - k - 3];
            }
            rec.record(n, v, a[n].clone());
        }
        report.push(rec);
        let h = hankel(a, depth)?;
        report.push(somos_claim("somos", &h, &one, &poly(&[1, 3, 1], t)));
        Ok(report)
    }
}

struct CurveFamilyB;

impl Conjecture for CurveFamilyB {
    fn name(&self) -> &'static str {
        "curve-family-b"
    }

    fn summary(&self) -> &'static str {
        "for y^2+4xy+y = x^3+(t-1)x^2+tx, the common branch tail b_n has a ((2t^3+10t^2+14t+5)^2, -3t^8-...-29(8t+1)) Somos-4 Hankel transform"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["t"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-3, -2, -1, 0, 1, 2, 3], 1, |_| true)
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        let t = &params[0];
        let order = 2 * depth;
        // the branch tail loses two orders to the shift
        let pipe = curve_pipeline(&curve_family_member(t), order + 2).map_err(compute)?;
        let b = pipe.f.coeffs();
        let one = Rational::one();
        let mut report = new_report(self, params);
        let c0 = poly(&[1, 3, 1], t);
        let den = [one.clone(), int(2) * (t + int(2))];
        let closed = catalan_form(&[c0.clone(), -one.clone()], &den, &one, 2, order)?;
        report.push(compare_claim("b-closed-form", closed.coeffs(), b));
        // 1/(1 - 2(t+3)x) c(-x(x^2 - (t+2)(t+3)x + 2t + 5)/(1 - 2(t+3)x)^2)
        let d = [one.clone(), -(int(2) * (t + int(3)))];
        let inner = [-(int(2) * t + int(5)), (t + int(2)) * (t + int(3)), -one.clone()];
        let g = ratio(std::slice::from_ref(&one), &d, order);
        let dd = TruncatedSeries::from_poly(&d, order);
        let f = TruncatedSeries::from_poly(&inner, order)
            .mul_x_pow(1)
            .truncate(order)
            .div(&dd.mul(&dd))
            .map_err(compute)?;
        let f1 = RiordanPair::new(g, f)
            .and_then(|pair| pair.apply(&catalan_gf(order), order))
            .map_err(compute)?;
        let n = order.min(pipe.f1.order());
        report.push(compare_claim("f1-closed-form", &f1.coeffs()[..=n], &pipe.f1.coeffs()[..=n]));
        let h = hankel(b, depth)?;
        let alpha = pow(&poly(&[5, 14, 10, 2], t), 2);
        let beta = poly(&[-29, -232, -740, -1230, -1173, -666, -222, -40, -3], t);
        report.push(somos_claim("somos", &h, &alpha, &beta));
        Ok(report)
    }
}

struct GeneralCurve;

impl Conjecture for GeneralCurve {
    fn name(&self) -> &'static str {
        "general-curve"
    }

    fn summary(&self) -> &'static str {
        "closed forms, recurrences and Somos laws for y^2 + axy + y = x^3 + bx^2 + cx at P = (0,0)"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["a", "b", "c"]
    }

    fn default_grid(&self) -> Vec<Vec<Rational>> {
        grid(&[-2, -1, 0, 1, 2], 2, |_| true)
            .into_iter()
            .map(|mut v| {
                v.push(int(1));
                v
            })
            .collect()
    }

    fn evaluate(&self, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
        check_arity(self, params)?;
        Ok(general_formula_check(&params[0], &params[1], &params[2], 2 * depth))
    }
}

static CONJECTURES: [&dyn Conjecture; 12] = [
    &SchroederHankel,
    &SchroederSomos,
    &ThirdOrderSomos,
    &ThirdOrderSpecial,
    &AlphaHankel,
    &BetaHankel,
    &FullConvolutionSomos,
    &QuarticSomos,
    &QuarticHankel,
    &CurveFamily,
    &CurveFamilyB,
    &GeneralCurve,
];

pub fn conjectures() -> &'static [&'static dyn Conjecture] {
    &CONJECTURES
}

pub fn conjecture(name: &str) -> Result<&'static dyn Conjecture, ConjectureError> {
    CONJECTURES
        .iter()
        .copied()
        .find(|c| c.name() == name)
        .ok_or_else(|| ConjectureError::Unknown(name.into()))
}

/// Evaluates `name` at every point of `grid` in parallel; results keep grid order.
pub fn sweep(name: &str, grid: &[Vec<Rational>], depth: usize) -> Result<Vec<Result<ConjectureReport, ConjectureError>>, ConjectureError> {
    let c = conjecture(name)?;
    Ok(grid.par_iter().map(|p| c.evaluate(p, depth)).collect())
}

fn keep_claims(mut report: ConjectureReport, pred: impl Fn(&str) -> bool) -> ConjectureReport {
    report.claims.retain(|c| pred(&c.name));
    report
}

/// The Somos-law claims of `name`.
pub fn verify_somos_conjecture(name: &str, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
    if depth < 4 {
        return Err(ConjectureError::Depth(4));
    }
    let report = conjecture(name)?.evaluate(params, depth)?;
    Ok(keep_claims(report, |c| c.contains("somos")))
}

/// The Hankel closed-form claims of `name`.
pub fn verify_hankel_formula_conjectures(name: &str, params: &[Rational], depth: usize) -> Result<ConjectureReport, ConjectureError> {
    if depth < 1 {
        return Err(ConjectureError::Depth(1));
    }
    let report = conjecture(name)?.evaluate(params, depth)?;
    Ok(keep_claims(report, |c| c == "closed-form" || c == "explicit-sum" || c == "d-form"))
}
