//! Convolution-recurrence families: direct iteration, closed-form generating
//! functions through the Catalan g.f., and parameter conversions.
//!
//! Each family is a [`ConvolutionRecurrence`] trait object, built by name from
//! the [`registry`].

use crate::rational::{int, Rational};
use crate::riordan::{RiordanError, RiordanPair};
use crate::series::{solve_quadratic_gf, solve_quadratic_radical, QuadraticGf, SeriesError, TruncatedSeries};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("t = 0: the generating function is rational, not of Catalan type")]
    DegenerateT,
    #[error("unknown recurrence family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` takes {expected} parameters, got {got}")]
    Arity {
        family: String,
        expected: String,
        got: usize,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

/// A recurrence whose generating function `u` satisfies `A u^2 + B u + C = 0`
/// with polynomial `A = t x^k`, so that `u = (-C/B) c(A C / B^2)`.
pub trait ConvolutionRecurrence: fmt::Debug + Send + Sync {
    fn family(&self) -> &'static str;
    fn params(&self) -> Vec<(&'static str, Rational)>;
    /// The coefficient of the convolution sum.
    fn t(&self) -> &Rational;
    /// `a_0..=a_n` by the defining recurrence.
    fn iterate(&self, n: usize) -> Vec<Rational>;
    /// Polynomial coefficients `(A, B, C)` of the functional equation.
    fn quadratic_polys(&self) -> [Vec<Rational>; 3];

    fn quadratic(&self, order: usize) -> QuadraticGf {
        let [a, b, c] = self.quadratic_polys();
        QuadraticGf::new(
            TruncatedSeries::from_poly(&a, order),
            TruncatedSeries::from_poly(&b, order),
            TruncatedSeries::from_poly(&c, order),
        )
    }

    /// `(-C/B, A C/B^2)`, the pair whose action on `c(x)` gives the solution.
    fn riordan_pair(&self, order: usize) -> Result<RiordanPair, RecurrenceError> {
        if self.t().is_zero() {
            return Err(RecurrenceError::DegenerateT);
        }
        let q = self.quadratic(order);
        let binv = q.b.inverse()?;
        let g = -&q.c.mul(&binv);
        let f = q.a.mul(&q.c).mul(&binv).mul(&binv);
        Ok(RiordanPair::new(g, f)?)
    }

    /// Closed-form expansion; `t = 0` falls back to `-C/B`.
    fn generating_function(&self, order: usize) -> Result<TruncatedSeries, RecurrenceError> {
        let q = self.quadratic(order);
        if self.t().is_zero() {
            return Ok(-&q.c.div(&q.b)?);
        }
        Ok(solve_quadratic_gf(&q, order)?)
    }

    /// The explicit radical solution `(-B - sqrt(B^2 - 4AC))/(2A)`.
    fn radical_form(&self, order: usize) -> Result<TruncatedSeries, RecurrenceError> {
        if self.t().is_zero() {
            return Err(RecurrenceError::DegenerateT);
        }
        let shift = self.quadratic_polys()[0].len() - 1;
        let u = solve_quadratic_radical(&self.quadratic(order + shift))?;
        Ok(u.truncate(order))
    }
}

fn conv(a: &[Rational], lo: usize, hi: usize, total: usize) -> Rational {
    // sum_{k=lo}^{hi} a_k a_{total-k}
    let mut s = Rational::zero();
    if hi >= lo {
        for k in lo..=hi {
            s += &a[k] * &a[total - k];
        }
    }
    s
}

fn seed(init: &[&Rational], n: usize) -> Vec<Rational> {
    init.iter().take(n + 1).map(|v| (*v).clone()).collect()
}

/// `a_0 = 1, a_1 = p; a_n = s a_{n-1} + t sum_{k=0}^{n-3} a_{k+1} a_{n-k-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence2Spec {
    pub p: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Recurrence2Spec {
    pub fn new(p: Rational, s: Rational, t: Rational) -> Self {
        Self { p, s, t }
    }

    pub fn from_ints(p: i64, s: i64, t: i64) -> Self {
        Self::new(int(p), int(s), int(t))
    }
}

impl ConvolutionRecurrence for Recurrence2Spec {
    fn family(&self) -> &'static str {
        "catalan-schroeder"
    }

    fn params(&self) -> Vec<(&'static str, Rational)> {
        vec![("p", self.p.clone()), ("s", self.s.clone()), ("t", self.t.clone())]
    }

    fn t(&self) -> &Rational {
        &self.t
    }

    fn iterate(&self, n: usize) -> Vec<Rational> {
        let mut a = seed(&[&Rational::one(), &self.p], n);
        for m in 2..=n {
            // a_{k+1} a_{m-k-2}, k = 0..m-3, i.e. indices 1..=m-2 pairing to m-1
            let v = &self.s * &a[m - 1] + &self.t * conv(&a, 1, m - 2, m - 1);
            a.push(v);
        }
        a
    }

    fn quadratic_polys(&self) -> [Vec<Rational>; 3] {
        let (p, s, t) = (&self.p, &self.s, &self.t);
        [
            vec![Rational::zero(), t.clone()],
            vec![-Rational::one(), s - int(2) * t],
            vec![Rational::one(), p - s + t],
        ]
    }
}

/// `a_0 = 1, a_1 = p, a_2 = q; a_n = r a_{n-1} + s a_{n-2} + t sum_{k=1}^{n-3} a_k a_{n-k-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence3Spec {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Recurrence3Spec {
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational, t: Rational) -> Self {
        Self { p, q, r, s, t }
    }

    pub fn from_ints(p: i64, q: i64, r: i64, s: i64, t: i64) -> Self {
        Self::new(int(p), int(q), int(r), int(s), int(t))
    }
}

impl ConvolutionRecurrence for Recurrence3Spec {
    fn family(&self) -> &'static str {
        "third-order"
    }

    fn params(&self) -> Vec<(&'static str, Rational)> {
        vec![
            ("p", self.p.clone()),
            ("q", self.q.clone()),
            ("r", self.r.clone()),
            ("s", self.s.clone()),
            ("t", self.t.clone()),
        ]
    }

    fn t(&self) -> &Rational {
        &self.t
    }

    fn iterate(&self, n: usize) -> Vec<Rational> {
        let mut a = seed(&[&Rational::one(), &self.p, &self.q], n);
        for m in 3..=n {
            let v = &self.r * &a[m - 1] + &self.s * &a[m - 2] + &self.t * conv(&a, 1, m - 3, m - 2);
            a.push(v);
        }
        a
    }

    fn quadratic_polys(&self) -> [Vec<Rational>; 3] {
        let (p, q, r, s, t) = (&self.p, &self.q, &self.r, &self.s, &self.t);
        [
            vec![Rational::zero(), Rational::zero(), t.clone()],
            vec![-Rational::one(), r.clone(), s - int(2) * t],
            vec![Rational::one(), p - r, q - p * r - s + t],
        ]
    }
}

/// `a_0..a_3 = 1, p, q, s; a_n = u a_{n-1} + v a_{n-2} + w a_{n-3} + t sum_{k=1}^{n-4} a_k a_{n-k-3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence4Spec {
    pub p: Rational,
    pub q: Rational,
    pub s: Rational,
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub t: Rational,
}

impl Recurrence4Spec {
    pub fn new(p: Rational, q: Rational, s: Rational, u: Rational, v: Rational, w: Rational, t: Rational) -> Self {
        Self { p, q, s, u, v, w, t }
    }

    pub fn from_ints(v: [i64; 7]) -> Self {
        let [p, q, s, u, vv, w, t] = v.map(int);
        Self::new(p, q, s, u, vv, w, t)
    }
}

impl ConvolutionRecurrence for Recurrence4Spec {
    fn family(&self) -> &'static str {
        "fourth-order"
    }

    fn params(&self) -> Vec<(&'static str, Rational)> {
        vec![
            ("p", self.p.clone()),
            ("q", self.q.clone()),
            ("s", self.s.clone()),
            ("u", self.u.clone()),
            ("v", self.v.clone()),
            ("w", self.w.clone()),
            ("t", self.t.clone()),
        ]
    }

    fn t(&self) -> &Rational {
        &self.t
    }

    fn iterate(&self, n: usize) -> Vec<Rational> {
        let mut a = seed(&[&Rational::one(), &self.p, &self.q, &self.s], n);
        for m in 4..=n {
            let v = &self.u * &a[m - 1]
                + &self.v * &a[m - 2]
                + &self.w * &a[m - 3]
                + &self.t * conv(&a, 1, m - 4, m - 3);
            a.push(v);
        }
        a
    }

    fn quadratic_polys(&self) -> [Vec<Rational>; 3] {
        let (p, q, s, u, v, w, t) = (&self.p, &self.q, &self.s, &self.u, &self.v, &self.w, &self.t);
        let z = Rational::zero();
        [
            vec![z.clone(), z.clone(), z, t.clone()],
            vec![-Rational::one(), u.clone(), v.clone(), w - int(2) * t],
            vec![Rational::one(), p - u, q - u * p - v, s - u * q - v * p - w + t],
        ]
    }
}

/// `a_0 = 1, a_1 = p; a_n = r a_{n-1} + s a_{n-2} + t sum_{i=0}^{n-2} a_i a_{n-2-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullConvolutionSpec {
    pub p: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl FullConvolutionSpec {
    /// `p = None` means `a_1 = r`.
    pub fn new(r: Rational, s: Rational, t: Rational, p: Option<Rational>) -> Self {
        let p = p.unwrap_or_else(|| r.clone());
        Self { p, r, s, t }
    }

    pub fn from_ints(r: i64, s: i64, t: i64) -> Self {
        Self::new(int(r), int(s), int(t), None)
    }
}

impl ConvolutionRecurrence for FullConvolutionSpec {
    fn family(&self) -> &'static str {
        "full-convolution"
    }

    fn params(&self) -> Vec<(&'static str, Rational)> {
        vec![
            ("r", self.r.clone()),
            ("s", self.s.clone()),
            ("t", self.t.clone()),
            ("p", self.p.clone()),
        ]
    }

    fn t(&self) -> &Rational {
        &self.t
    }

    fn iterate(&self, n: usize) -> Vec<Rational> {
        let mut a = seed(&[&Rational::one(), &self.p], n);
        for m in 2..=n {
            let v = &self.r * &a[m - 1] + &self.s * &a[m - 2] + &self.t * conv(&a, 0, m - 2, m - 2);
            a.push(v);
        }
        a
    }

    fn quadratic_polys(&self) -> [Vec<Rational>; 3] {
        let (p, r, s, t) = (&self.p, &self.r, &self.s, &self.t);
        [
            vec![Rational::zero(), Rational::zero(), t.clone()],
            vec![-Rational::one(), r.clone(), s.clone()],
            vec![Rational::one(), p - r],
        ]
    }
}

/// Registry entry: a family name, its parameter names, and a constructor.
pub struct FamilyEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    /// Number of trailing parameters that may be omitted.
    pub optional: usize,
    pub summary: &'static str,
    build: fn(&[Rational]) -> Box<dyn ConvolutionRecurrence>,
}

impl FamilyEntry {
    pub fn build(&self, params: &[Rational]) -> Result<Box<dyn ConvolutionRecurrence>, RecurrenceError> {
        let max = self.params.len();
        let min = max - self.optional;
        if params.len() < min || params.len() > max {
            let expected = if min == max { max.to_string() } else { format!("{min}..={max}") };
            return Err(RecurrenceError::Arity {
                family: self.name.into(),
                expected,
                got: params.len(),
            });
        }
        Ok((self.build)(params))
    }
}

static REGISTRY: [FamilyEntry; 4] = [
    FamilyEntry {
        name: "catalan-schroeder",
        params: &["p", "s", "t"],
        optional: 0,
        summary: "a_n = s a_{n-1} + t sum_{k=0}^{n-3} a_{k+1} a_{n-k-2}; a_0 = 1, a_1 = p",
        build: |v| Box::new(Recurrence2Spec::new(v[0].clone(), v[1].clone(), v[2].clone())),
    },
    FamilyEntry {
        name: "third-order",
        params: &["p", "q", "r", "s", "t"],
        optional: 0,
        summary: "a_n = r a_{n-1} + s a_{n-2} + t sum_{k=1}^{n-3} a_k a_{n-k-2}; a_0..a_2 = 1, p, q",
        build: |v| Box::new(Recurrence3Spec::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone())),
    },
    FamilyEntry {
        name: "fourth-order",
        params: &["p", "q", "s", "u", "v", "w", "t"],
        optional: 0,
        summary: "a_n = u a_{n-1} + v a_{n-2} + w a_{n-3} + t sum_{k=1}^{n-4} a_k a_{n-k-3}; a_0..a_3 = 1, p, q, s",
        build: |v| {
            Box::new(Recurrence4Spec::new(
                v[0].clone(),
                v[1].clone(),
                v[2].clone(),
                v[3].clone(),
                v[4].clone(),
                v[5].clone(),
                v[6].clone(),
            ))
        },
    },
    FamilyEntry {
        name: "full-convolution",
        params: &["r", "s", "t", "p"],
        optional: 1,
        summary: "a_n = r a_{n-1} + s a_{n-2} + t sum_{i=0}^{n-2} a_i a_{n-2-i}; a_0 = 1, a_1 = p (default r)",
        build: |v| Box::new(FullConvolutionSpec::new(v[0].clone(), v[1].clone(), v[2].clone(), v.get(3).cloned())),
    },
];

pub fn registry() -> &'static [FamilyEntry] {
    &REGISTRY
}

pub fn family(name: &str) -> Result<&'static FamilyEntry, RecurrenceError> {
    REGISTRY
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| RecurrenceError::UnknownFamily(name.into()))
}

pub fn build(name: &str, params: &[Rational]) -> Result<Box<dyn ConvolutionRecurrence>, RecurrenceError> {
    family(name)?.build(params)
}

pub fn iterate_recurrence(spec: &dyn ConvolutionRecurrence, n: usize) -> Vec<Rational> {
    spec.iterate(n)
}

pub fn gf_recurrence2(spec: &Recurrence2Spec, order: usize) -> Result<TruncatedSeries, RecurrenceError> {
    spec.generating_function(order)
}

pub fn gf_recurrence3(spec: &Recurrence3Spec, order: usize) -> Result<TruncatedSeries, RecurrenceError> {
    spec.generating_function(order)
}

pub fn gf_recurrence4(spec: &Recurrence4Spec, order: usize) -> Result<TruncatedSeries, RecurrenceError> {
    spec.generating_function(order)
}

pub fn gf_full_convolution(spec: &FullConvolutionSpec, order: usize) -> Result<TruncatedSeries, RecurrenceError> {
    spec.generating_function(order)
}

/// Third-order parameters `(p,q,r,s,t)` to the pair data `(a,b,c,d,m)` of
/// `((1+ax+bx^2)/(1+cx+dx^2), m x^2 (1+ax+bx^2)/(1+cx+dx^2)^2)`.
pub fn params_to_riordan(p: &Rational, q: &Rational, r: &Rational, s: &Rational, t: &Rational) -> [Rational; 5] {
    [p - r, q - p * r - s + t, -r.clone(), -s + int(2) * t, t.clone()]
}

pub fn riordan_to_params(a: &Rational, b: &Rational, c: &Rational, d: &Rational, m: &Rational) -> [Rational; 5] {
    [a - c, -(a * c) + b + c * c - d + m, -c.clone(), -d + int(2) * m, m.clone()]
}

/// Fourth-order parameters `(p,q,s,u,v,w,t)` to `(a,b,c,d,e,f,m)` of
/// `((1+ax+bx^2+cx^3)/(1+dx+ex^2+fx^3), m x^3 (1+ax+bx^2+cx^3)/(1+dx+ex^2+fx^3)^2)`.
pub fn params7_to_riordan(v: &[Rational; 7]) -> [Rational; 7] {
    let [p, q, s, u, vv, w, t] = v;
    [
        p - u,
        q - u * p - vv,
        s - u * q - vv * p - w + t,
        -u.clone(),
        -vv.clone(),
        int(2) * t - w,
        t.clone(),
    ]
}

pub fn riordan7_to_params(x: &[Rational; 7]) -> [Rational; 7] {
    let [a, b, c, d, e, f, m] = x;
    [
        a - d,
        -(a * d) + b + d * d - e,
        a * (d * d - e) + c - b * d - d * d * d + int(2) * d * e - f + m,
        -d.clone(),
        -e.clone(),
        -f + int(2) * m,
        m.clone(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ints};

    #[test]
    fn iteration_examples() {
        assert_eq!(Recurrence2Spec::from_ints(1, 1, 1).iterate(7), ints(&[1, 1, 1, 2, 4, 9, 21, 51]));
        assert_eq!(Recurrence3Spec::from_ints(1, 2, 2, 1, 1).iterate(6), ints(&[1, 1, 2, 5, 13, 35, 97]));
        assert_eq!(Recurrence4Spec::from_ints([1, 1, 2, 1, 1, 1, 1]).iterate(7), ints(&[1, 1, 1, 2, 4, 8, 16, 33]));
        assert_eq!(Recurrence2Spec::from_ints(2, 3, 1).iterate(1), ints(&[1, 2]));
    }

    #[test]
    fn closed_forms_match_iteration() {
        let specs: Vec<Box<dyn ConvolutionRecurrence>> = vec![
            Box::new(Recurrence2Spec::from_ints(1, -1, -1)),
            Box::new(Recurrence3Spec::from_ints(-1, 2, -2, -1, -1)),
            Box::new(Recurrence4Spec::from_ints([0, 0, 2, 0, 0, 3, 1])),
            Box::new(FullConvolutionSpec::new(frac(1, 2), int(-3), int(2), Some(int(5)))),
        ];
        for spec in &specs {
            let it = spec.iterate(14);
            assert_eq!(spec.generating_function(14).unwrap().coeffs(), &it[..], "{spec:?}");
            assert_eq!(spec.radical_form(14).unwrap().coeffs(), &it[..], "{spec:?}");
            let pair = spec.riordan_pair(14).unwrap();
            let via = pair.apply(&crate::series::catalan_gf(14), 14).unwrap();
            assert_eq!(via.coeffs(), &it[..]);
        }
    }

    #[test]
    fn degenerate_t_is_linear() {
        let f = FullConvolutionSpec::from_ints(1, 1, 0);
        assert_eq!(f.generating_function(6).unwrap().coeffs(), &ints(&[1, 1, 2, 3, 5, 8, 13])[..]);
        assert_eq!(f.riordan_pair(6).unwrap_err(), RecurrenceError::DegenerateT);
    }

    #[test]
    fn registry_lookup() {
        let spec = build("full-convolution", &ints(&[1, 1, 1])).unwrap();
        assert_eq!(spec.iterate(4), ints(&[1, 1, 3, 6, 16]));
        assert!(matches!(build("third-order", &ints(&[1])), Err(RecurrenceError::Arity { .. })));
        assert!(matches!(build("nope", &[]), Err(RecurrenceError::UnknownFamily(_))));
        assert_eq!(registry().len(), 4);
    }

    #[test]
    fn conversions() {
        let x = params_to_riordan(&int(1), &int(2), &int(2), &int(1), &int(1));
        assert_eq!(riordan_to_params(&x[0], &x[1], &x[2], &x[3], &x[4]), ints(&[1, 2, 2, 1, 1])[..]);
        assert_eq!(riordan_to_params(&int(0), &int(0), &int(0), &int(0), &int(1)), ints(&[0, 1, 0, 2, 1])[..]);
        let seven: [Rational; 7] = ints(&[0, 0, 0, 0, 0, 0, 1]).try_into().unwrap();
        let p = riordan7_to_params(&seven);
        assert_eq!(p, ints(&[0, 0, 1, 0, 0, 2, 1])[..]);
        assert_eq!(params7_to_riordan(&p), seven);
    }
}
