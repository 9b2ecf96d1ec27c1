//! Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over the
//! rationals: chord-tangent group law, multiples of a point and division
//! polynomial values.

mod pipeline;

pub use pipeline::{
    curve_moment_gf, curve_moment_jfraction, curve_pipeline, general_formula_check,
    max_moment_order, solve_curve_for_y, PipelineResult,
};

use crate::hankel::HankelError;
use crate::rational::{self, Rational};
use crate::series::SeriesError;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("singular cubic (discriminant 0)")]
    SingularCurve,
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("point {0} is the singular point of the cubic")]
    SingularPoint(String),
    #[error("operation needs an affine point")]
    PointAtInfinity,
    #[error("psi_2 vanishes at the point; even division polynomials are not evaluated")]
    TwoTorsion,
    #[error("x({0}P) = 0")]
    ZeroXCoordinate(usize),
    #[error("{0}P is the point at infinity")]
    InsufficientRank(usize),
    #[error("discriminant of the quadratic in y is not a square at x = 0")]
    NonSquareDiscriminant,
    #[error("no common tail between the two branches within shift 3")]
    CommonPartNotFound,
    #[error("invalid curve specification: {0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Hankel(#[from] HankelError),
}

/// Weierstrass coefficients. `singular` records a zero discriminant, which is
/// only allowed through [`CurveSpec::with_singular`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
    singular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(Rational, Rational),
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        Self::Affine(x, y)
    }

    pub fn origin() -> Self {
        Self::Affine(Rational::zero(), Rational::zero())
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            Self::Affine(x, _) => Some(x),
            Self::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            Self::Affine(_, y) => Some(y),
            Self::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "O"),
            Self::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl CurveSpec {
    /// Nonsingular curve; rejects a zero discriminant.
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Result<Self, EllipticError> {
        let c = Self::with_singular(a1, a2, a3, a4, a6);
        if c.singular {
            Err(EllipticError::SingularCurve)
        } else {
            Ok(c)
        }
    }

    /// Accepts singular cubics too. The group law then works on the
    /// nonsingular points and errors on the singular one.
    pub fn with_singular(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        let mut c = Self { a1, a2, a3, a4, a6, singular: false };
        c.singular = c.discriminant().is_zero();
        c
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, EllipticError> {
        let [a1, a2, a3, a4, a6] = a.map(rational::int);
        Self::new(a1, a2, a3, a4, a6)
    }

    pub fn from_ints_with_singular(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(rational::int);
        Self::with_singular(a1, a2, a3, a4, a6)
    }

    /// Parses `a1,a2,a3,a4,a6`.
    pub fn parse(text: &str, allow_singular: bool) -> Result<Self, EllipticError> {
        let v = rational::parse_list(text).map_err(|e| EllipticError::Parse(e.to_string()))?;
        let [a1, a2, a3, a4, a6]: [Rational; 5] = v
            .try_into()
            .map_err(|_| EllipticError::Parse("need five coefficients a1,a2,a3,a4,a6".into()))?;
        if allow_singular {
            Ok(Self::with_singular(a1, a2, a3, a4, a6))
        } else {
            Self::new(a1, a2, a3, a4, a6)
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> (Rational, Rational, Rational, Rational) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let four = rational::int(4);
        let b2 = a1 * a1 + &four * a2;
        let b4 = rational::int(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + &four * a6;
        let b8 = a1 * a1 * a6 + &four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> Rational {
        let (b2, b4, b6, b8) = self.b_invariants();
        -(&b2 * &b2 * &b8) - rational::int(8) * &b4 * &b4 * &b4 - rational::int(27) * &b6 * &b6
            + rational::int(9) * &b2 * &b4 * &b6
    }

    /// `F(x, y) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6`.
    pub fn equation(&self, x: &Rational, y: &Rational) -> Rational {
        y * y + &self.a1 * x * y + &self.a3 * y
            - (x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.equation(x, y).is_zero(),
        }
    }

    fn is_singular_point(&self, x: &Rational, y: &Rational) -> bool {
        let fy = rational::int(2) * y + &self.a1 * x + &self.a3;
        let fx = &self.a1 * y - rational::int(3) * x * x - rational::int(2) * &self.a2 * x - &self.a4;
        fx.is_zero() && fy.is_zero()
    }

    fn check(&self, p: &CurvePoint) -> Result<(), EllipticError> {
        if let CurvePoint::Affine(x, y) = p {
            if !self.contains(p) {
                return Err(EllipticError::PointNotOnCurve(format!("({x}, {y})")));
            }
            if self.is_singular_point(x, y) {
                return Err(EllipticError::SingularPoint(format!("({x}, {y})")));
            }
        }
        Ok(())
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3)
            }
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, EllipticError> {
        self.check(p)?;
        self.check(q)?;
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let denom = y1 + y2 + &self.a1 * x2 + &self.a3;
            if denom.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let d = rational::int(2) * y1 + &self.a1 * x1 + &self.a3;
            let lambda = (rational::int(3) * x1 * x1 + rational::int(2) * &self.a2 * x1 + &self.a4
                - &self.a1 * y1)
                / &d;
            let nu = (-(x1 * x1 * x1) + &self.a4 * x1 + rational::int(2) * &self.a6 - &self.a3 * y1) / &d;
            (lambda, nu)
        } else {
            let d = x2 - x1;
            ((y2 - y1) / &d, (y1 * x2 - y2 * x1) / &d)
        };
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - nu - &self.a3;
        Ok(CurvePoint::Affine(x3, y3))
    }

    /// `n P` by repeated addition (`0 P = O`).
    pub fn multiple(&self, p: &CurvePoint, n: usize) -> Result<CurvePoint, EllipticError> {
        let mut acc = CurvePoint::Infinity;
        for _ in 0..n {
            acc = self.add(&acc, p)?;
        }
        Ok(acc)
    }

    /// Division polynomial values `psi_0..psi_m` at an affine point, by the
    /// standard recursion over `b2, b4, b6, b8`.
    pub fn division_polynomial_values(&self, p: &CurvePoint, m: usize) -> Result<Vec<Rational>, EllipticError> {
        let CurvePoint::Affine(x, y) = p else {
            return Err(EllipticError::PointAtInfinity);
        };
        self.check(p)?;
        let (b2, b4, b6, b8) = self.b_invariants();
        let xp = |k: i64| rational::pow(x, k);
        let psi2 = rational::int(2) * y + &self.a1 * x + &self.a3;
        let psi3 = rational::int(3) * xp(4) + &b2 * xp(3) + rational::int(3) * &b4 * xp(2)
            + rational::int(3) * &b6 * x
            + &b8;
        let psi4 = &psi2
            * (rational::int(2) * xp(6) + &b2 * xp(5) + rational::int(5) * &b4 * xp(4)
                + rational::int(10) * &b6 * xp(3)
                + rational::int(10) * &b8 * xp(2)
                + (&b2 * &b8 - &b4 * &b6) * x
                + (&b4 * &b8 - &b6 * &b6));
        let mut psi = vec![Rational::zero(), Rational::one(), psi2.clone(), psi3, psi4];
        for n in 5..=m {
            let k = n / 2;
            let v = if n % 2 == 1 {
                &psi[k + 2] * rational::pow(&psi[k], 3) - &psi[k - 1] * rational::pow(&psi[k + 1], 3)
            } else {
                if psi2.is_zero() {
                    return Err(EllipticError::TwoTorsion);
                }
                (&psi[k + 2] * &psi[k - 1] * &psi[k - 1] - &psi[k - 2] * &psi[k + 1] * &psi[k + 1])
                    * &psi[k]
                    / &psi2
            };
            psi.push(v);
        }
        psi.truncate(m + 1);
        Ok(psi)
    }

    /// Table of `nP` for `n = 1..=m`, stopping early at the point at infinity.
    pub fn point_multiples(&self, p: &CurvePoint, m: usize) -> Result<CoordinateTable, EllipticError> {
        let mut rows = Vec::new();
        let mut acc = CurvePoint::Infinity;
        let mut stopped = None;
        for n in 1..=m {
            acc = self.add(&acc, p)?;
            match &acc {
                CurvePoint::Infinity => {
                    stopped = Some(n);
                    break;
                }
                CurvePoint::Affine(x, y) => rows.push(CoordinateRow {
                    n,
                    x: x.clone(),
                    y: y.clone(),
                    ratio: (!x.is_zero()).then(|| y / x),
                }),
            }
        }
        Ok(CoordinateTable { rows, reached_infinity: stopped })
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 + ({})xy + ({})y = x^3 + ({})x^2 + ({})x + ({})",
            self.a1, self.a3, self.a2, self.a4, self.a6
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateRow {
    pub n: usize,
    pub x: Rational,
    pub y: Rational,
    /// `y/x`, absent when `x = 0`.
    pub ratio: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateTable {
    pub rows: Vec<CoordinateRow>,
    /// `Some(n)` when `nP` is the point at infinity and the table stops there.
    pub reached_infinity: Option<usize>,
}

impl CoordinateTable {
    pub fn xs(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.x.clone()).collect()
    }

    pub fn ys(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.y.clone()).collect()
    }
}

impl fmt::Display for CoordinateTable {
    /// One line per quantity, one column per multiple.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.n.to_string(),
                    r.x.to_string(),
                    r.y.to_string(),
                    r.ratio.as_ref().map_or("-".into(), ToString::to_string),
                ]
            })
            .collect();
        let labels = ["n", "x(nP)", "y(nP)", "y/x"];
        for (k, label) in labels.iter().enumerate() {
            let cells: Vec<String> = cols
                .iter()
                .map(|c| {
                    let w = c.iter().map(String::len).max().unwrap_or(1);
                    format!("{:>w$}", c[k])
                })
                .collect();
            writeln!(f, "{label:<6} {}", cells.join("  "))?;
        }
        if let Some(n) = self.reached_infinity {
            writeln!(f, "{n}P = O")?;
        }
        Ok(())
    }
}

/// `x(nP) = x(P) - psi_{n-1} psi_{n+1} / psi_n^2`.
pub fn x_from_psi(x: &Rational, psi: &[Rational], n: usize) -> Option<Rational> {
    let d = &psi[n] * &psi[n];
    (!d.is_zero()).then(|| x - &psi[n - 1] * &psi[n + 1] / d)
}

/// `y(nP)` from `2y + a1 x + a3 = psi_{2n} / psi_n^4`.
pub fn y_from_psi(e: &CurveSpec, x: &Rational, psi: &[Rational], n: usize) -> Option<Rational> {
    let xn = x_from_psi(x, psi, n)?;
    let lhs = &psi[2 * n] / rational::pow(&psi[n], 4);
    Some((lhs - &e.a1 * xn - &e.a3) / rational::int(2))
}
