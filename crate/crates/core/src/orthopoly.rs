//! Monic orthogonal polynomials from three-term recurrence data.
//!
//! Convention: `p_{n+1} = (x - alpha_n) p_n - beta_n p_{n-1}`, with `betas[0] = beta_1`,
//! matching [`JFraction`].

use crate::hankel::JFraction;
use crate::matrix::{LowerTriangularMatrix, Matrix, MatrixError};
use crate::rational::{self, Rational};
use crate::riordan::{RiordanError, RiordanPair};
use crate::series::TruncatedSeries;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthoError {
    #[error("recurrence data too short: need {needed} levels, have {have}")]
    InsufficientDepth { needed: usize, have: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeTermRecurrence {
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

impl ThreeTermRecurrence {
    pub fn new(alphas: Vec<Rational>, betas: Vec<Rational>) -> Self {
        Self { alphas, betas }
    }

    /// `alpha_0, alpha, alpha, ...` and `beta_1, beta, beta, ...`, `levels` of each.
    pub fn constant(alpha0: Rational, alpha: Rational, beta1: Rational, beta: Rational, levels: usize) -> Self {
        let mut alphas = vec![alpha0];
        alphas.resize(levels.max(1), alpha);
        let mut betas = vec![beta1];
        betas.resize(levels.max(1), beta);
        Self { alphas, betas }
    }

    pub fn from_jfraction(j: &JFraction) -> Self {
        Self::new(j.alphas.clone(), j.betas.clone())
    }

    pub fn to_jfraction(&self) -> JFraction {
        JFraction::new(Rational::one(), self.alphas.clone(), self.betas.clone())
    }

    /// Largest `n` for which the `(n+1) x (n+1)` arrays are determined.
    pub fn depth(&self) -> usize {
        self.alphas.len().min(self.betas.len() + 1)
    }

    fn require(&self, n: usize) -> Result<(), OrthoError> {
        if self.depth() < n {
            return Err(OrthoError::InsufficientDepth {
                needed: n,
                have: self.depth(),
            });
        }
        Ok(())
    }
}

/// Rows `0..=n` of the coefficient array: row `k` holds `p_k` by increasing power.
pub fn coefficient_array(r: &ThreeTermRecurrence, n: usize) -> Result<LowerTriangularMatrix, OrthoError> {
    r.require(n)?;
    let mut m = Matrix::zeros(n + 1, n + 1);
    m.set(0, 0, Rational::one());
    for i in 0..n {
        for k in 0..=i + 1 {
            let mut v = if k > 0 { m.get(i, k - 1).clone() } else { Rational::zero() };
            v -= &r.alphas[i] * m.get(i, k);
            if i > 0 {
                v -= &r.betas[i - 1] * m.get(i - 1, k);
            }
            m.set(i + 1, k, v);
        }
    }
    Ok(m)
}

/// Inverse of the coefficient array; its first column is the moment sequence.
pub fn moment_matrix(r: &ThreeTermRecurrence, n: usize) -> Result<LowerTriangularMatrix, OrthoError> {
    Ok(coefficient_array(r, n)?.lower_triangular_inverse()?)
}

/// `P` with `M P = M` shifted up one row, for `M` of size `(n+1) x (n+1)`:
/// the `n x (n+1)` block that is fully determined.
pub fn production_matrix(m: &Matrix) -> Result<Matrix, OrthoError> {
    let size = m.rows();
    if !m.is_square() || size < 2 {
        return Err(MatrixError::Dimension(format!("need a square matrix of size >= 2, got {}x{}", m.rows(), m.cols())).into());
    }
    let n = size - 1;
    let head = m.block(0, n, 0, n).lower_triangular_inverse()?;
    Ok(head.mul(&m.block(1, size, 0, size))?)
}

/// Recurrence data read off a tridiagonal production matrix.
pub fn recurrence_from_production(p: &Matrix) -> Option<ThreeTermRecurrence> {
    let n = p.rows();
    let tri = (0..n).all(|i| (0..p.cols()).all(|j| j + 1 >= i && j <= i + 1 || p.get(i, j).is_zero()));
    let unit = (0..n).all(|i| i + 1 >= p.cols() || p.get(i, i + 1).is_one());
    (tri && unit).then(|| ThreeTermRecurrence::new(p.diagonal(0), p.diagonal(-1)))
}

/// The Riordan array `((1 - lambda x - mu x^2)/(1 + r x + s x^2), x/(1 + r x + s x^2))`, rows `0..=n`.
pub fn chebyshev_riordan_array(r: &Rational, s: &Rational, lambda: &Rational, mu: &Rational, n: usize) -> LowerTriangularMatrix {
    let one = Rational::one();
    let den = TruncatedSeries::from_poly(&[one.clone(), r.clone(), s.clone()], n);
    let inv = den.inverse().expect("unit constant term");
    let g = TruncatedSeries::from_poly(&[one, -lambda.clone(), -mu.clone()], n).mul(&inv);
    let f = inv.mul_x_pow(1).truncate(n);
    RiordanPair::new(g, f)
        .and_then(|p| p.matrix(n))
        .expect("f has unit linear term")
}

/// Recurrence data of the array above: `alpha = (r + lambda, r, r, ...)`, `beta = (s + mu, s, s, ...)`.
pub fn chebyshev_recurrence(r: &Rational, s: &Rational, lambda: &Rational, mu: &Rational, levels: usize) -> ThreeTermRecurrence {
    ThreeTermRecurrence::constant(r + lambda, r.clone(), s + mu, s.clone(), levels)
}

/// `Q_n(x) = sqrt(s)^n U_n(y) - lambda sqrt(s)^{n-1} U_{n-1}(y) - mu sqrt(s)^{n-2} U_{n-2}(y)`,
/// `y = (x - r)/(2 sqrt(s))`, expanded in `x`. `None` unless `s` is a nonzero rational square.
pub fn chebyshev_u_polynomials(r: &Rational, s: &Rational, lambda: &Rational, mu: &Rational, n: usize) -> Option<Vec<Vec<Rational>>> {
    let sigma = rational::sqrt(s).filter(|v| !v.is_zero())?;
    // U_k as polynomials in y
    let mut u: Vec<Vec<Rational>> = vec![vec![Rational::one()], vec![Rational::zero(), rational::int(2)]];
    while u.len() <= n {
        let k = u.len();
        let mut next = vec![Rational::zero(); k + 1];
        for (i, c) in u[k - 1].iter().enumerate() {
            next[i + 1] += c * rational::int(2);
        }
        for (i, c) in u[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        u.push(next);
    }
    // sigma^k U_k((x - r)/(2 sigma)) in x
    let y = [-r / (rational::int(2) * &sigma), Rational::one() / (rational::int(2) * &sigma)];
    let scaled: Vec<Vec<Rational>> = u
        .iter()
        .enumerate()
        .map(|(k, poly)| {
            let mut acc = vec![Rational::zero()];
            for c in poly.iter().rev() {
                acc = poly_mul(&acc, &y);
                acc[0] += c;
            }
            let factor = rational::pow(&sigma, k as i64);
            acc.iter().map(|c| c * &factor).collect()
        })
        .collect();
    let out = (0..=n)
        .map(|k| {
            let mut q = vec![Rational::zero(); k + 1];
            add_scaled(&mut q, &scaled[k], &Rational::one());
            if k >= 1 {
                add_scaled(&mut q, &scaled[k - 1], &-lambda.clone());
            }
            if k >= 2 {
                add_scaled(&mut q, &scaled[k - 2], &-mu.clone());
            }
            q
        })
        .collect();
    Some(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_scaled(acc: &mut [Rational], p: &[Rational], c: &Rational) {
    for (slot, v) in acc.iter_mut().zip(p) {
        *slot += v * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::jfraction_to_series;
    use crate::rational::{frac, int, ints};

    #[test]
    fn identity_recurrence() {
        let r = ThreeTermRecurrence::constant(int(0), int(0), int(0), int(0), 5);
        assert_eq!(coefficient_array(&r, 4).unwrap(), Matrix::identity(5));
        assert_eq!(moment_matrix(&r, 4).unwrap(), Matrix::identity(5));
        let p = production_matrix(&Matrix::identity(4)).unwrap();
        assert_eq!(p.diagonal(1), ints(&[1, 1, 1]));
        assert!(p.diagonal(0).iter().all(Zero::is_zero));
    }

    #[test]
    fn constant_data_production() {
        let r = ThreeTermRecurrence::constant(int(2), int(2), int(3), int(3), 7);
        let p = production_matrix(&moment_matrix(&r, 6).unwrap()).unwrap();
        assert_eq!(recurrence_from_production(&p).unwrap(), ThreeTermRecurrence::new(vec![int(2); 6], vec![int(3); 5]));
    }

    #[test]
    fn chebyshev_forms_agree() {
        let (r, s, l, m) = (int(3), int(2), int(1), int(0));
        let array = chebyshev_riordan_array(&r, &s, &l, &m, 6);
        let rec = chebyshev_recurrence(&r, &s, &l, &m, 6);
        assert_eq!(coefficient_array(&rec, 6).unwrap(), array);
        let moments = moment_matrix(&rec, 6).unwrap().column(0);
        assert_eq!(moments, jfraction_to_series(&rec.to_jfraction(), 6).into_coeffs());
        let u = chebyshev_riordan_array(&int(0), &int(1), &int(0), &int(0), 2);
        assert_eq!(u.row(2), &ints(&[-1, 0, 1])[..]);
    }

    #[test]
    fn chebyshev_u_needs_square() {
        assert!(chebyshev_u_polynomials(&int(3), &int(2), &int(0), &int(0), 4).is_none());
        let q = chebyshev_u_polynomials(&int(1), &int(4), &frac(1, 2), &int(3), 5).unwrap();
        let m = chebyshev_riordan_array(&int(1), &int(4), &frac(1, 2), &int(3), 5);
        for (k, row) in q.iter().enumerate() {
            assert_eq!(&m.row(k)[..=k], &row[..]);
        }
    }

    #[test]
    fn depth_is_checked() {
        let r = ThreeTermRecurrence::new(ints(&[1, 2]), ints(&[1]));
        assert!(coefficient_array(&r, 2).is_ok());
        assert_eq!(
            coefficient_array(&r, 3),
            Err(OrthoError::InsufficientDepth { needed: 3, have: 2 })
        );
    }

    #[test]
    fn nodal_curve_arrays() {
        use crate::elliptic::{curve_moment_jfraction, CurvePoint, CurveSpec};
        let e = CurveSpec::from_ints_with_singular([-1, -2, 1, 1, 0]);
        let j = curve_moment_jfraction(&e, &CurvePoint::origin(), 12).unwrap();
        let rec = ThreeTermRecurrence::from_jfraction(&j);
        let c = coefficient_array(&rec, 6).unwrap();
        assert_eq!(&c.row(3)[..4], &[int(1), frac(7, 3), frac(2, 3), int(1)]);
        assert_eq!(c.row(6), &[frac(21, 13), frac(31, 13), frac(95, 13), frac(35, 13), frac(70, 13), frac(8, 13), int(1)]);
        let m = moment_matrix(&rec, 6).unwrap();
        assert_eq!(m.column(0), ints(&[1, -1, -1, 2, 2, -5, -5]));
        assert_eq!(m.row(6), &[int(-5), frac(-9, 2), int(9), int(3), int(-5), frac(-8, 13), int(1)]);
    }
}
