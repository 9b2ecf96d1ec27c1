//! Riordan pairs `(g, f)`, their matrices, and the usual transform toolbox.
//!
//! A pair acts on a series by `(g, f) . h = g * (h o f)`. Pairs with
//! `f'(0) = 0` ("stretched") are allowed everywhere except inversion.

use crate::matrix::{LowerTriangularMatrix, Matrix};
use crate::rational::Rational;
use crate::series::{SeriesError, TruncatedSeries};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("invalid pair: need g(0) != 0 and f(0) = 0")]
    InvalidPair,
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("stretched pair (f'(0) = 0) has no inverse")]
    StretchedNotInvertible,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanPair {
    g: TruncatedSeries,
    f: TruncatedSeries,
    stretched: bool,
}

impl RiordanPair {
    pub fn new(g: TruncatedSeries, f: TruncatedSeries) -> Result<Self, RiordanError> {
        if g.constant().is_zero() || !f.constant().is_zero() {
            return Err(RiordanError::InvalidPair);
        }
        let stretched = f.get(1).is_none_or(Zero::is_zero);
        Ok(Self { g, f, stretched })
    }

    /// The identity pair `(1, x)`.
    pub fn identity(order: usize) -> Self {
        Self::new(TruncatedSeries::one(order), TruncatedSeries::x(order))
            .expect("identity pair is valid")
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn is_stretched(&self) -> bool {
        self.stretched
    }

    /// Smaller of the two series orders.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    /// `T[i][k] = [x^i] g f^k` for `0 <= i, k <= n`.
    pub fn matrix(&self, n: usize) -> Result<LowerTriangularMatrix, RiordanError> {
        if self.order() < n {
            return Err(RiordanError::InsufficientOrder {
                needed: n,
                have: self.order(),
            });
        }
        let f = self.f.truncate(n);
        let mut col = self.g.truncate(n);
        let mut m = Matrix::zeros(n + 1, n + 1);
        for k in 0..=n {
            for i in 0..=n {
                m.set(i, k, col.coeff(i).clone());
            }
            col = col.mul(&f);
        }
        Ok(m)
    }

    /// Fundamental-theorem action `g * (h o f)`, returned to the requested order.
    pub fn apply(&self, h: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, RiordanError> {
        let out = self.g.mul(&h.compose(&self.f)?);
        if out.order() < order {
            return Err(RiordanError::InsufficientOrder {
                needed: order,
                have: out.order(),
            });
        }
        Ok(out.truncate(order))
    }

    /// Group product: matrix of the result is `matrix(self) * matrix(other)`.
    pub fn mul(&self, other: &Self) -> Result<Self, RiordanError> {
        let g = self.g.mul(&other.g.compose(&self.f)?);
        let f = other.f.compose(&self.f)?;
        Self::new(g, f)
    }

    /// Inverse `(1 / (g o fbar), fbar)` with `fbar` the reversion of `f`.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        if self.stretched {
            return Err(RiordanError::StretchedNotInvertible);
        }
        let fbar = self.f.truncate(self.order()).revert()?;
        let g = self.g.compose(&fbar)?.inverse()?;
        Self::new(g, fbar)
    }
}

/// True iff `(M S)^2 = I` to size `n + 1`, where `M` is the matrix of `(g, x g)`
/// and `S = diag((-1)^k)`.
pub fn pseudo_involution_check(g: &TruncatedSeries, n: usize) -> Result<bool, RiordanError> {
    let xg = g.mul_x_pow(1).truncate(g.order());
    let m = RiordanPair::new(g.clone(), xg)?.matrix(n)?;
    let ms = Matrix::from_fn(n + 1, n + 1, |i, j| {
        if j % 2 == 0 {
            m.get(i, j).clone()
        } else {
            -m.get(i, j)
        }
    });
    let sq = ms.mul(&ms).expect("square matrices");
    Ok(sq == Matrix::identity(n + 1))
}

/// `r`-th binomial transform `(1/(1 - r x)) a(x/(1 - r x))`.
pub fn binomial_transform(a: &TruncatedSeries, r: &Rational) -> TruncatedSeries {
    let n = a.order();
    let denom = TruncatedSeries::from_poly(&[Rational::one(), -r], n);
    let inv = denom.inverse().expect("unit constant term");
    let inner = TruncatedSeries::x(n).mul(&inv);
    inv.mul(&a.compose(&inner).expect("inner has zero constant term"))
}

/// INVERT transform `a / (1 - t x a)`.
pub fn invert_transform(a: &TruncatedSeries, t: &Rational) -> TruncatedSeries {
    let n = a.order();
    let denom = &TruncatedSeries::one(n) - &a.mul_x_pow(1).truncate(n).scale(t);
    a.div(&denom).expect("unit constant term")
}

/// `1 / (1 - x - x^2 g)`; the result is known to `order g + 2`.
pub fn prepend_one_gf(g: &TruncatedSeries) -> TruncatedSeries {
    let n = g.order() + 2;
    let denom = &(&TruncatedSeries::one(n) - &TruncatedSeries::x(n)) - &g.mul_x_pow(2);
    denom.inverse().expect("unit constant term")
}

/// Puts `k - 1` zeros between consecutive coefficients; order becomes `k N + k - 1`.
pub fn aerate(a: &TruncatedSeries, k: usize) -> TruncatedSeries {
    assert!(k >= 1, "aeration factor must be positive");
    let n = k * a.order() + k - 1;
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (i, c) in a.coeffs().iter().enumerate() {
        coeffs[k * i] = c.clone();
    }
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial_q, int, ints};
    use crate::series::catalan_gf;

    fn s(values: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(ints(values))
    }

    fn over(num: &[i64], den: &[i64], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(num, n)
            .div(&TruncatedSeries::from_ints(den, n))
            .unwrap()
    }

    fn schroeder_pair(n: usize) -> RiordanPair {
        RiordanPair::new(over(&[1], &[1, -1], n), over(&[0, 1], &[1, -2, 1], n)).unwrap()
    }

    #[test]
    fn pascal_like_matrix() {
        let m = schroeder_pair(4).matrix(4).unwrap();
        for i in 0..=4 {
            for k in 0..=4 {
                assert_eq!(*m.get(i, k), binomial_q((i + k) as i64, 2 * k as i64));
            }
        }
        assert_eq!(RiordanPair::identity(5).matrix(5).unwrap(), Matrix::identity(6));
        assert!(matches!(
            schroeder_pair(3).matrix(4),
            Err(RiordanError::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn stretched_matrix() {
        let p = RiordanPair::new(over(&[1], &[1, 0, 0, -1], 6), over(&[0, 0, 1], &[1, 0, 0, -2, 0, 0, 1], 6)).unwrap();
        assert!(p.is_stretched());
        let m = p.matrix(6).unwrap();
        assert_eq!(*m.get(2, 1), int(1));
        assert!((1..=6).all(|k| m.get(0, k).is_zero()));
        assert!(m.is_lower_triangular());
        assert_eq!(p.inverse(), Err(RiordanError::StretchedNotInvertible));
    }

    #[test]
    fn schroeder_numbers_from_catalan() {
        let p = schroeder_pair(12);
        let c = catalan_gf(12);
        assert_eq!(p.apply(&c, 4).unwrap(), s(&[1, 2, 6, 22, 90]));
        let even = (&c + &c.scale_var(&int(-1))).scale(&crate::rational::frac(1, 2));
        assert_eq!(p.apply(&even, 4).unwrap(), s(&[1, 1, 3, 11, 45]));
        assert_eq!(RiordanPair::identity(6).apply(&c.truncate(6), 6).unwrap(), c.truncate(6));
    }

    #[test]
    fn product_and_inverse() {
        let n = 8;
        let p = RiordanPair::new(over(&[1], &[1, -1], n), over(&[0, 1], &[1, -1], n)).unwrap();
        let pp = p.mul(&p).unwrap();
        assert_eq!(pp.g(), &over(&[1], &[1, -2], n));
        assert_eq!(pp.f(), &over(&[0, 1], &[1, -2], n));
        assert_eq!(p.mul(&RiordanPair::identity(n)).unwrap(), p);
        let id = RiordanPair::identity(n);
        assert_eq!(id.inverse().unwrap(), id);
        let q = RiordanPair::new(over(&[1], &[1, 1], n), over(&[0, 1], &[1, 2, 1], n)).unwrap();
        assert_eq!(q.mul(&q.inverse().unwrap()).unwrap(), id);
        assert_eq!(q.inverse().unwrap().mul(&q).unwrap(), id);
    }

    #[test]
    fn pseudo_involutions() {
        // A023431: (1/(1-x), x^3/(1-x)^2) . c(x)
        let n = 12;
        let g = RiordanPair::new(over(&[1], &[1, -1], n), over(&[0, 0, 0, 1], &[1, -2, 1], n))
            .unwrap()
            .apply(&catalan_gf(n), n)
            .unwrap();
        assert!(pseudo_involution_check(&g, 8).unwrap());
        // the Pascal array (1/(1-x), x/(1-x)) is one as well
        assert!(pseudo_involution_check(&over(&[1], &[1, -1], n), 8).unwrap());
        // g for A004149 is not: (1/(1-x), x^3/((1-x)^2 (1-x^2))) . c(x)
        let h = RiordanPair::new(over(&[1], &[1, -1], n), over(&[0, 0, 0, 1], &[1, -2, 0, 2, -1], n))
            .unwrap()
            .apply(&catalan_gf(n), n)
            .unwrap();
        assert!(!pseudo_involution_check(&h, 8).unwrap());
    }

    #[test]
    fn transforms() {
        let a = s(&[1, -1, 3, -8, 22, -59]);
        assert_eq!(binomial_transform(&a, &int(2)), s(&[1, 1, 3, 6, 14, 33]));
        assert_eq!(binomial_transform(&s(&[1, 1, 1, 1, 1]), &int(1)), s(&[1, 2, 4, 8, 16]));
        assert_eq!(binomial_transform(&a, &int(0)), a);
        assert_eq!(invert_transform(&a, &int(0)), a);
        assert_eq!(invert_transform(&s(&[1, 1, 1, 1]), &int(1)), s(&[1, 2, 4, 8]));
        assert_eq!(prepend_one_gf(&TruncatedSeries::zero(3)), s(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn aeration() {
        assert_eq!(aerate(&s(&[1, 2, 14, 132]), 2).truncate(6), s(&[1, 0, 2, 0, 14, 0, 132]));
        let a = s(&[1, 2, 6, 22]);
        assert_eq!(aerate(&a, 1), a);
        assert_eq!(aerate(&a, 3).truncate(9), s(&[1, 0, 0, 2, 0, 0, 6, 0, 0, 22]));
        assert_eq!(aerate(&a, 3).order(), 11);
    }

    #[test]
    fn general_term_double_sum() {
        // ((1 + a x)/(1 + b x), m x (1 + a x)/(1 + b x)^2) with binomials vanishing off range;
        // no 0^k correction is needed under that convention
        let (a, b, m) = (3i64, -2i64, 5i64);
        let n = 7;
        let g = TruncatedSeries::from_ints(&[1, a], n).div(&TruncatedSeries::from_ints(&[1, b], n)).unwrap();
        let f = TruncatedSeries::from_ints(&[0, m, m * a], n)
            .div(&TruncatedSeries::from_ints(&[1, 2 * b, b * b], n))
            .unwrap();
        let t = RiordanPair::new(g, f).unwrap().matrix(n).unwrap();
        for row in 0..=n as i64 {
            for k in 0..=row {
                let mut v = Rational::zero();
                for j in 0..=(k + 1).min(row - k) {
                    v += binomial_q(k + 1, j)
                        * binomial_q(row + k - j, 2 * k)
                        * crate::rational::pow(&int(a), j)
                        * crate::rational::pow(&int(-b), row - k - j);
                }
                v *= crate::rational::pow(&int(m), k);
                assert_eq!(t.get(row as usize, k as usize), &v, "T({row},{k})");
            }
        }
    }
}
