//! Truncated formal power series over the rationals.
//!
//! A series carries its truncation order explicitly: `order() == N` means the
//! coefficients `c_0..c_N` are known and everything from `x^{N+1}` on is not.
//! Binary operations truncate to the smaller order of their inputs.

use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series of a composition has nonzero constant term")]
    NonzeroConstantInner,
    #[error("series is not revertible (needs f(0) = 0 and f'(0) != 0)")]
    NotRevertible,
    #[error("constant term has no rational square root")]
    NonSquareConstant,
    #[error("linear coefficient b has zero constant term")]
    ZeroLinearCoefficient,
    #[error("no branch of the quadratic is finite at x = 0")]
    BranchUndefined,
    #[error("series is not divisible by x^{0}")]
    NotDivisible(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coefficients `c_0..c_N` of a power series known to order `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series whose order is `coeffs.len() - 1`. Panics on an empty list.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    /// Polynomial (or prefix) padded with zeros or cut to the given order.
    pub fn from_poly(coeffs: &[Rational], order: usize) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, Rational::zero());
        Self { coeffs: c }
    }

    pub fn from_ints(values: &[i64], order: usize) -> Self {
        Self::from_poly(&rational::ints(values), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_poly(&[], order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&[Rational::one()], order)
    }

    /// The series `x` (order at least 1 is useful, order 0 gives `0`).
    pub fn x(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// `c * x^k` to the given order.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^n`; panics past the order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn constant(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient within the known window.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same series known to a smaller order. Panics when `order` exceeds the current one.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// `p(c x)`.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|v| {
                let out = v * &pw;
                pw *= c;
                out
            })
            .collect();
        Self { coeffs }
    }

    /// `x^k p(x)`; the order grows by `k`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// `p(x) / x^k`; the order drops by `k`.
    pub fn div_x_pow(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible(k));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Formal derivative; the order drops by one (order 0 gives the zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        }
    }

    /// Convolution truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse `1/q`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let q0 = &self.coeffs[0];
        if q0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = q0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, q: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&q.inverse()?))
    }

    /// `p(q(x))` by Horner's rule. Requires `q(0) = 0`.
    ///
    /// When `q` has valuation `v` the result is known to order
    /// `min(order q, v (order p + 1) - 1)`.
    pub fn compose(&self, q: &Self) -> Result<Self, SeriesError> {
        if !q.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantInner);
        }
        let n = match q.valuation() {
            Some(v) => q.order().min(v * (self.order() + 1) - 1),
            None => q.order(),
        };
        let q = q.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&q);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse `w` with `f(w(x)) = x`, by Newton iteration
    /// `w <- w - (f(w) - x) / f'(w)` with doubling precision.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotRevertible);
        }
        let df = self.derivative();
        let mut w = Self::monomial(self.coeffs[1].recip(), 1, 1);
        let mut known = 1;
        while known < n {
            let m = (2 * known + 1).min(n);
            let wm = Self::from_poly(&w.coeffs, m);
            // f(w) - x vanishes through x^known
            let mut err = self.truncate(m).compose(&wm)?;
            err.coeffs[1] -= Rational::one();
            let shift = known + 1;
            let err = err.div_x_pow(shift)?;
            let slope = df.truncate(m - shift).compose(&wm.truncate(m - shift))?;
            let step = err.div(&slope)?.mul_x_pow(shift);
            w = &wm - &step;
            known = m;
        }
        Ok(w.truncate(n))
    }

    /// Square root with positive constant term, by Newton iteration
    /// `s <- (s + p/s) / 2` seeded with the rational root of `p(0)`.
    ///
    /// A leading zero block of even length `2v` is factored out, which lowers the
    /// order by `v`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let v = match self.valuation() {
            None => return Ok(Self::zero(self.order())),
            Some(v) => v,
        };
        if v > 0 {
            if v % 2 == 1 {
                return Err(SeriesError::NonSquareConstant);
            }
            let root = self.div_x_pow(v)?.sqrt()?;
            return Ok(root.mul_x_pow(v / 2).truncate(self.order() - v / 2));
        }
        let s0 = rational::sqrt(&self.coeffs[0]).ok_or(SeriesError::NonSquareConstant)?;
        let n = self.order();
        let half = Rational::new(1.into(), 2.into());
        let mut s = Self::new(vec![s0]);
        let mut known = 0;
        while known < n {
            let m = (2 * known + 1).min(n);
            let sm = Self::from_poly(&s.coeffs, m);
            let quotient = self.truncate(m).div(&sm)?;
            s = (&sm + &quotient).scale(&half);
            known = m;
        }
        Ok(s)
    }

    /// Evaluates the known coefficients as a polynomial at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

fn zip_with(p: &TruncatedSeries, q: &TruncatedSeries, op: impl Fn(&Rational, &Rational) -> Rational) -> TruncatedSeries {
    let n = p.order().min(q.order());
    TruncatedSeries {
        coeffs: (0..=n).map(|i| op(&p.coeffs[i], &q.coeffs[i])).collect(),
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.order(), rational::format_list(&self.coeffs))
    }
}

impl FromStr for TruncatedSeries {
    type Err = SeriesError;

    /// Accepts `order; c0, c1, ...` (missing trailing coefficients are zero) or a
    /// bare list whose length fixes the order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| rational::parse_list(t).map_err(|e| SeriesError::Parse(e.to_string()));
        match s.split_once(';') {
            Some((order, body)) => {
                let order: usize = order
                    .trim()
                    .parse()
                    .map_err(|_| SeriesError::Parse(format!("bad order `{}`", order.trim())))?;
                let coeffs = parse(body)?;
                if coeffs.len() > order + 1 {
                    return Err(SeriesError::Parse(format!(
                        "{} coefficients exceed order {order}",
                        coeffs.len()
                    )));
                }
                Ok(Self::from_poly(&coeffs, order))
            }
            None => Ok(Self::new(parse(s)?)),
        }
    }
}

/// The Catalan generating function `c(x) = (1 - sqrt(1 - 4x)) / (2x)`.
pub fn catalan_gf(order: usize) -> TruncatedSeries {
    TruncatedSeries::new(
        (0..=order)
            .map(|n| Rational::from_integer(rational::catalan(n)))
            .collect(),
    )
}

/// Coefficients of `a u^2 + b u + c = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticGf {
    pub a: TruncatedSeries,
    pub b: TruncatedSeries,
    pub c: TruncatedSeries,
}

impl QuadraticGf {
    pub fn new(a: TruncatedSeries, b: TruncatedSeries, c: TruncatedSeries) -> Self {
        Self { a, b, c }
    }

    /// Coefficientwise residual `a u^2 + b u + c`.
    pub fn residual(&self, u: &TruncatedSeries) -> TruncatedSeries {
        let au2 = self.a.mul(&u.mul(u));
        let bu = self.b.mul(u);
        &(&au2 + &bu) + &self.c
    }
}

/// Solves `a u^2 + b u + c = 0` as `u = (-c/b) c(a c / b^2)`, the branch finite at 0.
pub fn solve_quadratic_gf(q: &QuadraticGf, order: usize) -> Result<TruncatedSeries, SeriesError> {
    let n = order
        .min(q.a.order())
        .min(q.b.order())
        .min(q.c.order());
    let (a, b, c) = (q.a.truncate(n), q.b.truncate(n), q.c.truncate(n));
    if b.constant().is_zero() {
        return Err(SeriesError::ZeroLinearCoefficient);
    }
    let binv = b.inverse()?;
    let z = a.mul(&c).mul(&binv).mul(&binv);
    if !z.constant().is_zero() {
        return Err(SeriesError::BranchUndefined);
    }
    let g = (-&c).mul(&binv);
    Ok(g.mul(&catalan_gf(n).compose(&z)?))
}

/// Independent radical route `u = (-b + sgn(b0) sqrt(b^2 - 4ac)) / (2a)`.
///
/// `a` must be `x^v` times a unit; the result loses `v` orders.
pub fn solve_quadratic_radical(q: &QuadraticGf) -> Result<TruncatedSeries, SeriesError> {
    let b0 = q.b.constant().clone();
    if b0.is_zero() {
        return Err(SeriesError::ZeroLinearCoefficient);
    }
    let v = q.a.valuation().ok_or(SeriesError::BranchUndefined)?;
    let four = Rational::from_integer(4.into());
    let disc = &q.b.mul(&q.b) - &q.a.mul(&q.c).scale(&four);
    let mut root = disc.sqrt()?;
    if b0.is_negative() {
        root = -&root;
    }
    let numer = (&root - &q.b).div_x_pow(v).map_err(|_| SeriesError::BranchUndefined)?;
    let denom = q.a.div_x_pow(v)?.scale(&Rational::from_integer(2.into()));
    numer.div(&denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    fn s(values: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(ints(values))
    }

    #[test]
    fn product_of_binomials() {
        assert_eq!(s(&[1, 1, 0]).mul(&s(&[1, 1, 0])), s(&[1, 2, 1]));
    }

    #[test]
    fn catalan_square_is_shifted_catalan() {
        let c = catalan_gf(4);
        assert_eq!(c.mul(&c), s(&[1, 2, 5, 14, 42]));
    }

    #[test]
    fn catalan_satisfies_functional_equation() {
        let c = catalan_gf(20);
        let rhs = &TruncatedSeries::one(20) + &c.mul(&c).mul_x_pow(1).truncate(20);
        assert_eq!(c, rhs);
        assert_eq!(catalan_gf(0), s(&[1]));
    }

    #[test]
    fn division_examples() {
        let geo = TruncatedSeries::one(5).div(&s(&[1, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!(geo, s(&[1, 1, 1, 1, 1, 1]));
        let fib = s(&[1, -1, 0, 0, 0]).div(&s(&[1, -3, 1, 0, 0])).unwrap();
        assert_eq!(fib, s(&[1, 2, 5, 13, 34]));
        assert_eq!(s(&[0, 1]).inverse(), Err(SeriesError::ZeroConstantTerm));
    }

    #[test]
    fn composition_examples() {
        let c = catalan_gf(3);
        let x2 = TruncatedSeries::monomial(int(1), 2, 6);
        assert_eq!(c.compose(&x2).unwrap(), s(&[1, 0, 1, 0, 2, 0, 5]));
        let geo = TruncatedSeries::one(4).div(&s(&[1, -1, 0, 0, 0])).unwrap();
        let inner = TruncatedSeries::x(4).div(&s(&[1, -1, 0, 0, 0])).unwrap();
        assert_eq!(geo.compose(&inner).unwrap(), s(&[1, 1, 2, 4, 8]));
        assert_eq!(
            geo.compose(&s(&[1, 1, 0, 0, 0])),
            Err(SeriesError::NonzeroConstantInner)
        );
    }

    #[test]
    fn composition_order_is_honest() {
        // c(x) known to order 3 composed with x^2 is known through x^7.
        let c = catalan_gf(3);
        let x2 = TruncatedSeries::monomial(int(1), 2, 20);
        assert_eq!(c.compose(&x2).unwrap().order(), 7);
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(s(&[0, 1, 0, 0]).revert().unwrap(), s(&[0, 1, 0, 0]));
        assert_eq!(
            s(&[0, 1, -1, 0, 0, 0]).revert().unwrap(),
            s(&[0, 1, 1, 2, 5, 14])
        );
        let mobius = TruncatedSeries::x(6).div(&TruncatedSeries::from_ints(&[1, -1], 6)).unwrap();
        assert_eq!(mobius.revert().unwrap(), s(&[0, 1, -1, 1, -1, 1, -1]));
        assert_eq!(s(&[1, 1]).revert(), Err(SeriesError::NotRevertible));
        assert_eq!(s(&[0, 0, 1]).revert(), Err(SeriesError::NotRevertible));
    }

    #[test]
    fn square_root_examples() {
        assert_eq!(s(&[1, -4, 0, 0, 0]).sqrt().unwrap(), s(&[1, -2, -2, -4, -10]));
        assert_eq!(s(&[1]).sqrt().unwrap(), s(&[1]));
        assert_eq!(s(&[1, 2, 1, 0]).sqrt().unwrap(), s(&[1, 1, 0, 0]));
        assert_eq!(s(&[2, 1]).sqrt(), Err(SeriesError::NonSquareConstant));
        assert_eq!(s(&[0, 0, 4, 4, 1]).sqrt().unwrap(), s(&[0, 2, 1, 0]));
        let q = TruncatedSeries::new(vec![frac(9, 4), int(1)]);
        assert_eq!(q.sqrt().unwrap().coeffs()[0], frac(3, 2));
    }

    #[test]
    fn quadratic_solver_examples() {
        let n = 6;
        let q = QuadraticGf::new(
            TruncatedSeries::x(n),
            TruncatedSeries::from_ints(&[-1], n),
            TruncatedSeries::one(n),
        );
        let u = solve_quadratic_gf(&q, 4).unwrap();
        assert_eq!(u, s(&[1, 1, 2, 5, 14]));
        let lin = QuadraticGf::new(
            TruncatedSeries::zero(3),
            TruncatedSeries::one(3),
            TruncatedSeries::from_ints(&[-1, -1], 3),
        );
        assert_eq!(solve_quadratic_gf(&lin, 3).unwrap(), s(&[1, 1, 0, 0]));
        let bad = QuadraticGf::new(
            TruncatedSeries::one(3),
            TruncatedSeries::one(3),
            TruncatedSeries::one(3),
        );
        assert_eq!(solve_quadratic_gf(&bad, 3), Err(SeriesError::BranchUndefined));
        let zero_b = QuadraticGf::new(
            TruncatedSeries::x(3),
            TruncatedSeries::x(3),
            TruncatedSeries::one(3),
        );
        assert_eq!(
            solve_quadratic_gf(&zero_b, 3),
            Err(SeriesError::ZeroLinearCoefficient)
        );
    }

    #[test]
    fn radical_route_matches_catalan_route() {
        let n = 12;
        let q = QuadraticGf::new(
            TruncatedSeries::from_ints(&[0, 0, 3], n + 2),
            TruncatedSeries::from_ints(&[-1, 2, -1], n + 2),
            TruncatedSeries::from_ints(&[1, -2], n + 2),
        );
        let u = solve_quadratic_gf(&q, n).unwrap();
        let r = solve_quadratic_radical(&q).unwrap();
        assert_eq!(r.truncate(n), u);
        assert!(q.residual(&u).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let p = TruncatedSeries::new(vec![int(1), frac(-1, 2), int(0)]);
        assert_eq!(p.to_string(), "2; 1, -1/2, 0");
        assert_eq!("2; 1, -1/2".parse::<TruncatedSeries>().unwrap(), p);
        assert_eq!("1, -1/2, 0".parse::<TruncatedSeries>().unwrap(), p);
        assert!("1; 1, 2, 3".parse::<TruncatedSeries>().is_err());
    }
}
