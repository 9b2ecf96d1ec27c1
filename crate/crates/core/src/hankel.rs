//! Hankel transforms, Jacobi continued fractions and the Heilermann formula.

use crate::matrix::{exact_determinant, Matrix};
use crate::rational::{self, Rational};
use crate::series::TruncatedSeries;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

/// A finite window `a_0..a_m` of a sequence.
pub type SequenceWindow = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HankelError {
    #[error("insufficient terms: need {needed}, have {have}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error("Hankel determinant Delta_{index} vanishes")]
    SingularHankelBlock { index: usize, partial: Box<JFraction> },
    #[error("continued fraction too shallow: need order {needed}, determined to {have}")]
    InsufficientDepth { needed: usize, have: usize },
}

/// `(n+1) x (n+1)` matrix with entry `(i, j) = a_{i+j+shift}`.
pub fn hankel_matrix(a: &[Rational], n: usize, shift: usize) -> Matrix {
    Matrix::from_fn(n + 1, n + 1, |i, j| a[i + j + shift].clone())
}

/// `h_0..h_{count-1}`, determinants computed in parallel.
pub fn hankel_transform_n(a: &[Rational], count: usize) -> Result<SequenceWindow, HankelError> {
    let needed = (2 * count).saturating_sub(1);
    if a.len() < needed || count == 0 {
        return Err(HankelError::InsufficientTerms {
            needed: needed.max(1),
            have: a.len(),
        });
    }
    Ok((0..count)
        .into_par_iter()
        .map(|n| exact_determinant(&hankel_matrix(a, n, 0)))
        .collect())
}

/// Every Hankel determinant the window supports: `h_0..h_m` with `2m + 1 <= len`.
pub fn hankel_transform(a: &[Rational]) -> Result<SequenceWindow, HankelError> {
    hankel_transform_n(a, a.len().div_ceil(2))
}

/// Jacobi continued fraction `mu0 / (1 - alpha_0 x - beta_1 x^2 / (1 - alpha_1 x - ...))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFraction {
    pub mu0: Rational,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

impl JFraction {
    pub fn new(mu0: Rational, alphas: Vec<Rational>, betas: Vec<Rational>) -> Self {
        Self { mu0, alphas, betas }
    }

    /// Constant coefficients: `levels` alphas and `levels - 1` betas after the leading ones.
    pub fn periodic(mu0: Rational, alpha0: Rational, alpha: Rational, beta1: Rational, beta: Rational, levels: usize) -> Self {
        let mut alphas = vec![alpha0];
        alphas.extend(std::iter::repeat_n(alpha, levels.saturating_sub(1)));
        let mut betas = vec![beta1];
        betas.extend(std::iter::repeat_n(beta, levels.saturating_sub(2)));
        Self::new(mu0, alphas, betas)
    }

    /// Highest coefficient index fixed by the available levels regardless of
    /// how the fraction continues.
    pub fn determined_order(&self) -> usize {
        let a = self.alphas.len();
        let b = self.betas.len();
        if a == 0 {
            0
        } else {
            (2 * a).min(2 * b + 1)
        }
    }
}

impl fmt::Display for JFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu0 = {}\nalpha = {}\nbeta = {}",
            self.mu0,
            rational::format_list(&self.alphas),
            rational::format_list(&self.betas)
        )
    }
}

/// Extracts `(alpha; beta)` from the determinant formulas
/// `alpha_n = D'_n/D_n - D'_{n-1}/D_{n-1}` and `beta_n = D_{n-2} D_n / D_{n-1}^2`,
/// where `D'_n` replaces the last column of the Hankel block by `a_{i+n+1}`.
pub fn jfraction_from_moments(a: &[Rational]) -> Result<JFraction, HankelError> {
    let len = a.len();
    if len == 0 {
        return Err(HankelError::InsufficientTerms { needed: 1, have: 0 });
    }
    let n_alpha = len / 2;
    let n_delta = len.div_ceil(2);
    let deltas: Vec<Rational> = (0..n_delta)
        .into_par_iter()
        .map(|n| exact_determinant(&hankel_matrix(a, n, 0)))
        .collect();
    let primes: Vec<Rational> = (0..n_alpha)
        .into_par_iter()
        .map(|n| {
            let m = Matrix::from_fn(n + 1, n + 1, |i, j| {
                if j < n {
                    a[i + j].clone()
                } else {
                    a[i + n + 1].clone()
                }
            });
            exact_determinant(&m)
        })
        .collect();
    let mut out = JFraction::new(a[0].clone(), Vec::new(), Vec::new());
    let delta = |k: isize| -> Rational {
        if k < 0 {
            Rational::one()
        } else {
            deltas[k as usize].clone()
        }
    };
    let prime = |k: isize| -> Rational {
        if k < 0 {
            Rational::zero()
        } else {
            primes[k as usize].clone()
        }
    };
    let max_level = n_alpha.max(n_delta);
    for n in 0..max_level {
        let k = n as isize;
        if n < n_delta && deltas[n].is_zero() {
            return Err(HankelError::SingularHankelBlock {
                index: n,
                partial: Box::new(out),
            });
        }
        if n >= 1 && n < n_delta {
            out.betas
                .push(delta(k - 2) * delta(k) / (delta(k - 1) * delta(k - 1)));
        }
        if n < n_alpha {
            out.alphas
                .push(prime(k) / delta(k) - prime(k - 1) / delta(k - 1));
        }
    }
    Ok(out)
}

/// Expands the finite continued fraction to `order`. Missing alphas count as 0;
/// the fraction ends after the last available beta.
pub fn jfraction_to_series(j: &JFraction, order: usize) -> TruncatedSeries {
    let levels = j.betas.len();
    let alpha = |k: usize| j.alphas.get(k).cloned().unwrap_or_else(Rational::zero);
    let one = TruncatedSeries::one(order);
    let mut tail: Option<TruncatedSeries> = None;
    for k in (0..=levels).rev() {
        let mut denom = &one - &TruncatedSeries::monomial(alpha(k), 1, order);
        if let Some(t) = tail {
            let term = t.mul_x_pow(2).truncate(order).scale(&j.betas[k]);
            denom = &denom - &term;
        }
        tail = Some(denom.inverse().expect("unit constant term"));
    }
    tail.expect("at least one level").scale(&j.mu0)
}

/// As `jfraction_to_series`, but refuses orders the levels do not determine.
pub fn jfraction_to_series_strict(j: &JFraction, order: usize) -> Result<TruncatedSeries, HankelError> {
    let have = j.determined_order();
    if order > have || j.alphas.is_empty() {
        return Err(HankelError::InsufficientDepth { needed: order, have });
    }
    Ok(jfraction_to_series(j, order))
}

/// `h_k = mu0^{k+1} prod_{i=1..k} beta_i^{k+1-i}` for `k = 0..=n`.
pub fn heilermann_hankel(j: &JFraction, n: usize) -> Result<SequenceWindow, HankelError> {
    if n > j.betas.len() {
        return Err(HankelError::InsufficientDepth {
            needed: n,
            have: j.betas.len(),
        });
    }
    Ok((0..=n)
        .map(|k| {
            let mut h = rational::pow(&j.mu0, k as i64 + 1);
            for (i, b) in j.betas.iter().take(k).enumerate() {
                h *= rational::pow(b, (k - i) as i64);
            }
            h
        })
        .collect())
}

/// Divides `x g(x) - y g(y)` by `x - y` as bivariate polynomials and checks that
/// the coefficient of `x^i y^j` is `a_{i+j}` for `i, j <= n`.
pub fn bivariate_hankel_gf_check(g: &TruncatedSeries, n: usize) -> bool {
    let d = 2 * n;
    if g.order() < d {
        return false;
    }
    let a = g.coeffs();
    // numerator coefficient of x^i y^j, for total degree <= d + 1
    let numer = |i: usize, j: usize| -> Rational {
        match (i, j) {
            (0, 0) => Rational::zero(),
            (i, 0) => a[i - 1].clone(),
            (0, j) => -a[j - 1].clone(),
            _ => Rational::zero(),
        }
    };
    // quotient by total degree: q[s][i] = Q_{i, s-i}
    let mut q: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    for s in 0..=d {
        let mut row = vec![Rational::zero(); s + 1];
        for i in (0..=s).rev() {
            let j = s - i;
            let carry = if j >= 1 { row[i + 1].clone() } else { Rational::zero() };
            row[i] = numer(i + 1, j) + carry;
        }
        // exactness: N_{0, s+1} = -Q_{0, s}
        if numer(0, s + 1) != -row[0].clone() {
            return false;
        }
        q.push(row);
    }
    (0..=n).all(|i| (0..=n).all(|j| q[i + j][i] == a[i + j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};
    use crate::series::catalan_gf;

    #[test]
    fn transform_examples() {
        let cat = ints(&[1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(hankel_transform(&cat).unwrap(), ints(&[1, 1, 1, 1]));
        let at = ints(&[1, -1, -1, 2, 2, -5, -5, 14, 14]);
        assert_eq!(hankel_transform(&at).unwrap(), ints(&[1, -2, -3, 5, 8]));
        let c = ints(&[7, 7, 7, 7, 7]);
        assert_eq!(hankel_transform(&c).unwrap(), ints(&[7, 0, 0]));
        assert!(hankel_transform_n(&cat, 5).is_err());
        assert!(hankel_transform(&[]).is_err());
    }

    #[test]
    fn extraction_examples() {
        let motzkin = ints(&[1, 1, 2, 4, 9, 21, 51, 127]);
        let j = jfraction_from_moments(&motzkin).unwrap();
        assert_eq!(j.alphas, ints(&[1, 1, 1, 1]));
        assert_eq!(j.betas, ints(&[1, 1, 1]));
        let large = ints(&[1, 2, 6, 22, 90, 394, 1806]);
        let j = jfraction_from_moments(&large).unwrap();
        assert_eq!(j.alphas, ints(&[2, 3, 3]));
        assert_eq!(j.betas, ints(&[2, 2, 2]));
        let little = ints(&[1, 1, 3, 11, 45, 197, 903]);
        let j = jfraction_from_moments(&little).unwrap();
        assert_eq!(j.alphas, ints(&[1, 3, 3]));
        assert_eq!(j.betas, ints(&[2, 2, 2]));
        assert_eq!(jfraction_to_series(&j, 6).coeffs(), &little[..]);
    }

    #[test]
    fn extraction_stops_at_vanishing_block() {
        let a = ints(&[1, 1, 1, 1, 1, 1]);
        match jfraction_from_moments(&a) {
            Err(HankelError::SingularHankelBlock { index, partial }) => {
                assert_eq!(index, 1);
                assert_eq!(partial.alphas, ints(&[1]));
                assert!(partial.betas.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn expansion_examples() {
        let j = JFraction::new(int(1), vec![int(0); 4], vec![int(1); 4]);
        let aerated = catalan_gf(3).compose(&TruncatedSeries::monomial(int(1), 2, 8)).unwrap();
        assert_eq!(jfraction_to_series(&j, 6), aerated.truncate(6));
        let geo = JFraction::new(int(1), ints(&[3]), vec![]);
        assert_eq!(jfraction_to_series(&geo, 3).coeffs(), &ints(&[1, 3, 9, 27])[..]);
        assert!(jfraction_to_series_strict(&geo, 2).is_err());
        assert!(jfraction_to_series_strict(&geo, 1).is_ok());
        let s = JFraction::periodic(int(1), int(2), int(3), int(2), int(2), 6);
        assert_eq!(
            jfraction_to_series_strict(&s, 6).unwrap().coeffs(),
            &ints(&[1, 2, 6, 22, 90, 394, 1806])[..]
        );
    }

    #[test]
    fn heilermann_examples() {
        let j = JFraction::new(int(1), vec![int(0); 4], vec![int(2); 3]);
        assert_eq!(heilermann_hankel(&j, 3).unwrap(), ints(&[1, 2, 8, 64]));
        let ones = JFraction::new(int(1), vec![int(0); 4], vec![int(1); 3]);
        assert_eq!(heilermann_hankel(&ones, 3).unwrap(), ints(&[1, 1, 1, 1]));
        assert!(heilermann_hankel(&ones, 4).is_err());
        let scaled = JFraction::new(frac(1, 2), vec![], vec![int(3)]);
        assert_eq!(heilermann_hankel(&scaled, 1).unwrap(), vec![frac(1, 2), frac(3, 4)]);
    }

    #[test]
    fn bivariate_examples() {
        let geo = TruncatedSeries::from_ints(&[1; 9], 8);
        assert!(bivariate_hankel_gf_check(&geo, 4));
        assert!(bivariate_hankel_gf_check(&catalan_gf(8), 4));
        assert!(!bivariate_hankel_gf_check(&catalan_gf(5), 4));
    }
}
