//! Series built from a curve: the continued fraction in the multiples of a
//! point, and the solve-for-y construction of a recurrence solution.

use super::{CurvePoint, CurveSpec, EllipticError};
use crate::hankel::{self, JFraction};
use crate::rational::{self, binomial_q, int, pow, Rational};
use crate::report::{Claim, ConjectureReport};
use crate::riordan::{binomial_transform, invert_transform, prepend_one_gf, RiordanPair};
use crate::series::{catalan_gf, TruncatedSeries};
use crate::somos::somos_claim;
use num_traits::{One, Zero};

/// Continued-fraction data for `order` coefficients:
/// `alpha_0 = -1`, `alpha_k = -y((k+1)P)/x((k+1)P)`, `beta_k = -x((k+1)P)`.
pub fn curve_moment_jfraction(e: &CurveSpec, p: &CurvePoint, order: usize) -> Result<JFraction, EllipticError> {
    let n_alpha = order.div_ceil(2);
    let n_beta = order / 2;
    let top = n_beta + 1;
    let mut alphas = vec![-Rational::one()];
    let mut betas = Vec::with_capacity(n_beta);
    let mut acc = p.clone();
    for m in 2..=top {
        acc = e.add(&acc, p)?;
        let CurvePoint::Affine(x, y) = &acc else {
            return Err(EllipticError::InsufficientRank(m));
        };
        if x.is_zero() {
            return Err(EllipticError::ZeroXCoordinate(m));
        }
        let k = m - 1;
        if k < n_alpha {
            alphas.push(-(y / x));
        }
        if k <= n_beta {
            betas.push(-x.clone());
        }
    }
    Ok(JFraction::new(Rational::one(), alphas, betas))
}

/// The moment series `1/(1 + t + x_2 t^2/(1 + (y_2/x_2) t + x_3 t^2/(...)))`,
/// with `x_n, y_n` the coordinates of `nP`.
pub fn curve_moment_gf(e: &CurveSpec, p: &CurvePoint, order: usize) -> Result<TruncatedSeries, EllipticError> {
    let j = curve_moment_jfraction(e, p, order)?;
    Ok(hankel::jfraction_to_series_strict(&j, order)?)
}

/// Largest order `<= limit` for which the moment series is defined, with the
/// obstruction met when it is smaller than `limit`.
pub fn max_moment_order(e: &CurveSpec, p: &CurvePoint, limit: usize) -> (usize, Option<EllipticError>) {
    let mut acc = p.clone();
    for m in 2..=(limit / 2 + 1) {
        let reason = match e.add(&acc, p) {
            Ok(CurvePoint::Infinity) => Some(EllipticError::InsufficientRank(m)),
            Ok(q) => {
                let zero = q.x().is_some_and(Zero::is_zero);
                acc = q;
                zero.then_some(EllipticError::ZeroXCoordinate(m))
            }
            Err(err) => Some(err),
        };
        if let Some(r) = reason {
            return ((2 * m - 3).min(limit), Some(r));
        }
    }
    (limit, None)
}

/// Both roots `y = (-(a1 x + a3) -/+ S)/2` of the curve equation as series in `x`,
/// with `S` the square root of the discriminant having positive constant term.
pub fn solve_curve_for_y(e: &CurveSpec, order: usize) -> Result<(TruncatedSeries, TruncatedSeries), EllipticError> {
    let n = order;
    let lin = TruncatedSeries::from_poly(&[e.a3.clone(), e.a1.clone()], n);
    let cubic = TruncatedSeries::from_poly(
        &[e.a6.clone(), e.a4.clone(), e.a2.clone(), Rational::one()],
        n,
    );
    let disc = &lin.mul(&lin) + &cubic.scale(&int(4));
    let s = disc.sqrt().map_err(|_| EllipticError::NonSquareDiscriminant)?;
    let half = rational::frac(1, 2);
    let minus = (&(-&lin) - &s).scale(&half);
    let plus = (&s - &lin).scale(&half);
    Ok((minus, plus))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub y_minus: TruncatedSeries,
    pub y_plus: TruncatedSeries,
    /// Index from which `y_plus = -y_minus` is used (always 2).
    pub offset: usize,
    /// Tail of `y_minus` from `offset`, divided by `x^offset`.
    pub f: TruncatedSeries,
    /// `1/(1 - x - x^2 f)`.
    pub f1: TruncatedSeries,
    /// `revert(x f1) / x`.
    pub a: TruncatedSeries,
    pub hankel: Vec<Rational>,
}

/// Solve for `y`, keep the common tail, prepend a one, revert.
pub fn curve_pipeline(e: &CurveSpec, order: usize) -> Result<PipelineResult, EllipticError> {
    let (y_minus, y_plus) = solve_curve_for_y(e, order)?;
    // The branches differ by -(a1 x + a3); the common part starts after its two slots,
    // even when a1 = 0 makes them agree earlier.
    let offset = 2.min(order);
    if (offset..=order).any(|i| *y_plus.coeff(i) != -y_minus.coeff(i)) {
        return Err(EllipticError::CommonPartNotFound);
    }
    let mut head = y_minus.coeffs().to_vec();
    head.iter_mut().take(offset).for_each(|c| *c = Rational::zero());
    let f = TruncatedSeries::new(head).div_x_pow(offset)?;
    let f1 = prepend_one_gf(&f);
    let a = f1.mul_x_pow(1).revert()?.div_x_pow(1)?;
    let hankel = hankel::hankel_transform(a.coeffs())?;
    Ok(PipelineResult {
        y_minus,
        y_plus,
        offset,
        f,
        f1,
        a,
        hankel,
    })
}

fn over(num: &[Rational], den: &[Rational], n: usize) -> TruncatedSeries {
    TruncatedSeries::from_poly(num, n)
        .div(&TruncatedSeries::from_poly(den, n))
        .expect("unit constant term")
}

fn riordan_catalan(g: TruncatedSeries, f: TruncatedSeries, n: usize) -> Option<TruncatedSeries> {
    let pair = RiordanPair::new(g, f).ok()?;
    pair.apply(&catalan_gf(n), n).ok()
}

/// Conjectured closed form of the moment series for general `c`, with `gamma = c - 1`.
fn gamma_closed_form(a: &Rational, b: &Rational, c: &Rational, n: usize) -> Option<TruncatedSeries> {
    let one = Rational::one();
    let g1 = c - &one;
    let ac = a + c;
    let den = [one.clone(), -(a + int(2) * &g1), -(b - int(2) * &g1 * &ac)];
    let x3 = &ac * (&g1 * &g1 * &ac - b * &g1 + &one);
    let x2 = -(int(2) * c * &g1 * &g1 + &g1 * (a * a + a * (int(3) * c - int(2)) - b) + &one);
    let x1 = &g1 * (int(2) * a + int(2) * c - &one);
    let x0 = -g1.clone();
    let dd = TruncatedSeries::from_poly(&den, n);
    let g = dd.inverse().ok()?;
    let numer = TruncatedSeries::from_poly(&[Rational::zero(), x0, x1, x2, x3], n);
    let f = numer.div(&dd.mul(&dd)).ok()?;
    riordan_catalan(g, f, n)
}

/// `c = 1` closed form `(1-(a+1)x)/(1-ax-bx^2) c(-x^3(1-(a+1)x)/(1-ax-bx^2)^2)`.
fn c1_closed_form(a: &Rational, b: &Rational, n: usize) -> Option<TruncatedSeries> {
    let one = Rational::one();
    let num = [one.clone(), -(a + &one)];
    let den = [one, -a.clone(), -b.clone()];
    let g = over(&num, &den, n);
    let d = TruncatedSeries::from_poly(&den, n);
    let f = TruncatedSeries::from_poly(&num, n)
        .mul_x_pow(3)
        .truncate(n)
        .scale(&int(-1))
        .div(&d.mul(&d))
        .ok()?;
    riordan_catalan(g, f, n)
}

/// Explicit `c = 1` coefficient formula as a triple sum.
fn c1_term(a: &Rational, b: &Rational, n: usize) -> Rational {
    let n = n as i64;
    let mut total = Rational::zero();
    for k in 0..=n {
        let mut inner = Rational::zero();
        for j in 0..=k + 1 {
            let mut s = Rational::zero();
            for i in 0..=(n - 3 * k - j).max(-1) {
                let e = n - 3 * k - i - j;
                let bin = binomial_q(2 * k + i, i) * binomial_q(i, e);
                if bin.is_zero() {
                    continue;
                }
                s += bin * pow(b, e) * pow(a, 2 * i + 3 * k + j - n);
            }
            inner += binomial_q(k + 1, j) * pow(&(-(a + Rational::one())), j) * s;
        }
        total += inner * rational::sign_pow(k) * Rational::from_integer(rational::catalan(k as usize));
    }
    total
}

fn c1_prefix(a: &Rational, b: &Rational) -> Vec<Rational> {
    let p = |k: i64| pow(a, k);
    let q = |k: i64| pow(b, k);
    let one = Rational::one();
    vec![
        one.clone(),
        -one.clone(),
        b - a,
        -p(2) + a * b - b - &one,
        -p(3) + p(2) * b - a * (int(2) * b + &one) + q(2) + int(2),
        -p(4) + p(3) * b - p(2) * (int(3) * b + &one) + a * (int(2) * q(2) + int(4)) - q(2) - int(3) * b - &one,
    ]
}

fn c1_hankel_prefix(a: &Rational, b: &Rational) -> Vec<Rational> {
    let p = |k: i64| pow(a, k);
    let q = |k: i64| pow(b, k);
    let one = Rational::one();
    vec![
        one.clone(),
        -a + b - &one,
        -p(2) + a * (b - int(3)) + int(2) * b - int(3),
        p(3) + p(2) * (int(2) - int(3) * b) + a * (int(3) * q(2) - int(5) * b) - q(3) + int(3) * q(2) - b - int(2),
    ]
}

/// Conjectured closed form for the pipeline output `a`.
fn pipeline_closed_form(a: &Rational, b: &Rational, c: &Rational, n: usize) -> Option<TruncatedSeries> {
    let one = Rational::one();
    let c1 = c + &one;
    let num = [one.clone(), &one + a + int(2) * c];
    let den = [one.clone(), a + int(2) * c + int(2), a * &c1 + &c1 * &c1 - b];
    let g = over(&num, &den, n);
    let d = TruncatedSeries::from_poly(&den, n);
    let f = TruncatedSeries::from_poly(&num, n)
        .mul_x_pow(3)
        .truncate(n)
        .div(&d.mul(&d))
        .ok()?;
    riordan_catalan(g, f, n)
}

fn moment_recurrence_claim(t: &[Rational], a: &Rational, b: &Rational) -> Claim {
    let mut claim = Claim::new("c1-moment-recurrence");
    for n in 4..t.len() {
        let mut v = a * &t[n - 1] + b * &t[n - 2] - int(2) * &t[n - 3];
        for k in 1..=n - 4 {
            v -= &t[k] * &t[n - k - 3];
        }
        claim.record(n, v, t[n].clone());
    }
    claim
}

fn pipeline_recurrence_claim(s: &[Rational], a: &Rational, b: &Rational, c: &Rational) -> Claim {
    let mut claim = Claim::new("a-recurrence");
    let one = Rational::one();
    let c1 = c + &one;
    let init = [
        one.clone(),
        -one.clone(),
        &one + b - a * c - c * c,
        (int(3) + a + int(2) * c) * (-b + c * (a + c)),
    ];
    for (n, v) in init.iter().enumerate().take(s.len()) {
        claim.record(n, v.clone(), s[n].clone());
    }
    for n in 4..s.len() {
        let mut v = -(a + int(2) * &c1) * &s[n - 1] + (b - a * &c1 - &c1 * &c1) * &s[n - 2]
            + int(2) * &s[n - 3];
        for k in 1..=n - 4 {
            v += &s[k] * &s[n - k - 3];
        }
        claim.record(n, v, s[n].clone());
    }
    claim
}

fn compare_window(name: &str, expected: Option<&TruncatedSeries>, actual: &[Rational], requested: usize, reason: &str) -> Claim {
    let mut claim = Claim::new(name);
    match expected {
        Some(exp) => {
            for n in 0..=requested {
                match (exp.get(n), actual.get(n)) {
                    (Some(e), Some(a)) => claim.record(n, e.clone(), a.clone()),
                    _ => claim.skip(n, reason),
                }
            }
        }
        None => claim.note("closed form undefined at these parameters"),
    }
    claim
}

/// Checks the conjectured formulas for the curve `y^2 + a xy + y = x^3 + b x^2 + c x`
/// at `P = (0, 0)`: closed forms of the moment series, the `c = 1` prefixes,
/// recurrence and Somos law, the pipeline closed form and recurrence, and the
/// INVERT/binomial relations between the moment series and the pipeline output.
///
/// Singular cubics are accepted with a note. Terms needing a multiple of `P`
/// that is the point at infinity or has `x = 0` are reported as skipped.
pub fn general_formula_check(a: &Rational, b: &Rational, c: &Rational, order: usize) -> ConjectureReport {
    let one = Rational::one();
    let mut report = ConjectureReport::new(
        "general-curve",
        vec![("a".into(), a.clone()), ("b".into(), b.clone()), ("c".into(), c.clone())],
    );
    let e = CurveSpec::with_singular(a.clone(), b.clone(), one.clone(), c.clone(), Rational::zero());
    if e.is_singular() {
        report.notes.push("singular cubic (discriminant 0)".into());
    }
    let p = CurvePoint::origin();
    let (avail, obstruction) = max_moment_order(&e, &p, order);
    let reason = match &obstruction {
        Some(err) => {
            report.notes.push(format!("moment series defined to order {avail}: {err}"));
            err.to_string()
        }
        None => String::new(),
    };
    let moments = curve_moment_gf(&e, &p, avail)
        .map(TruncatedSeries::into_coeffs)
        .unwrap_or_default();
    let hankel = hankel::hankel_transform(&moments).unwrap_or_default();
    let n = order;
    let gamma = gamma_closed_form(a, b, c, n);
    report.push(compare_window("gamma-closed-form", gamma.as_ref(), &moments, n, &reason));
    if *c == one {
        let closed = c1_closed_form(a, b, n);
        report.push(compare_window("c1-closed-form", closed.as_ref(), &moments, n, &reason));
        let terms = TruncatedSeries::new((0..=n).map(|k| c1_term(a, b, k)).collect());
        report.push(compare_window("c1-term-formula", Some(&terms), &moments, n, &reason));
        let prefix = TruncatedSeries::new(c1_prefix(a, b));
        report.push(compare_window("c1-symbolic-prefix", Some(&prefix), &moments, 5, &reason));
        let hp = TruncatedSeries::new(c1_hankel_prefix(a, b));
        report.push(compare_window("c1-hankel-prefix", Some(&hp), &hankel, 3, &reason));
        let mut somos = somos_claim("c1-somos", &hankel, &one, &(a - b + &one));
        if let Some(err) = &obstruction {
            somos.note(format!("Hankel window limited to {} terms: {err}", hankel.len()));
        }
        report.push(somos);
        report.push(moment_recurrence_claim(&moments, a, b));
    } else {
        report.notes.push("c != 1: c = 1 claims not evaluated".into());
    }
    match curve_pipeline(&e, n) {
        Ok(pipe) => {
            let closed = pipeline_closed_form(a, b, c, n);
            report.push(compare_window("a-closed-form", closed.as_ref(), pipe.a.coeffs(), n, "pipeline order"));
            report.push(pipeline_recurrence_claim(pipe.a.coeffs(), a, b, c));
            let reflected = pipe.a.scale_var(&-one.clone());
            let printed = invert_transform(&binomial_transform(&reflected, &(c + &one)), &-(c + &one));
            report.push(compare_window("printed-relation", Some(&printed), &moments, n, &reason));
            let observed = invert_transform(&binomial_transform(&reflected, &-(c + &one)), &(c - &one));
            report.push(compare_window("observed-relation", Some(&observed), &moments, n, &reason));
        }
        Err(err) => report.notes.push(format!("pipeline unavailable: {err}")),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ints};

    #[test]
    fn branches_of_section7_curve() {
        let e = CurveSpec::from_ints([-3, 0, -1, -1, 0]).unwrap();
        let (m, p) = solve_curve_for_y(&e, 10).unwrap();
        assert_eq!(m.coeffs(), &ints(&[0, 1, -2, 1, 3, -7, -4, 38, -27, -175, 384])[..]);
        assert_eq!(p.coeffs(), &ints(&[1, 2, 2, -1, -3, 7, 4, -38, 27, 175, -384])[..]);
        let sum = &m + &p;
        assert_eq!(sum.coeffs()[..2], ints(&[1, 3])[..]);
    }

    #[test]
    fn moment_fraction_levels() {
        let e = CurveSpec::from_ints([-3, 0, -1, -1, 0]).unwrap();
        let j = curve_moment_jfraction(&e, &CurvePoint::origin(), 6).unwrap();
        assert_eq!(j.alphas, vec![int(-1), frac(-3, 2), frac(5, 2)]);
        assert_eq!(j.betas, vec![int(2), frac(1, 4), int(-14)]);
    }

    #[test]
    fn obstruction_is_reported() {
        // (a, b) = (-1, 0): x(2P) = 0
        let e = CurveSpec::from_ints([-1, 0, 1, 1, 0]).unwrap();
        let p = CurvePoint::origin();
        assert_eq!(
            curve_moment_gf(&e, &p, 6),
            Err(EllipticError::ZeroXCoordinate(2))
        );
        let (n, why) = max_moment_order(&e, &p, 10);
        assert_eq!(n, 1);
        assert_eq!(why, Some(EllipticError::ZeroXCoordinate(2)));
    }

    #[test]
    fn pipeline_on_nodal_curve() {
        let e = CurveSpec::from_ints_with_singular([-1, -2, 1, 1, 0]);
        let r = curve_pipeline(&e, 20).unwrap();
        assert_eq!(r.offset, 2);
        assert_eq!(r.a.coeffs()[..11], ints(&[1, -1, -1, 8, -22, 33, 7, -212, 702, -1202, -58])[..]);
        assert_eq!(r.hankel[..11], ints(&[1, -2, -3, 5, 8, -13, -21, 34, 55, -89, -144])[..]);
    }

    #[test]
    fn general_check_claims() {
        for (a, b, c) in [(2, 1, 1), (-1, -2, 1), (3, -2, 1), (-3, 0, -1), (1, 1, 2)] {
            let r = general_formula_check(&int(a), &int(b), &int(c), 14);
            for claim in &r.claims {
                // the gamma form only gets the linear term right when a + c = 0
                let expect = match claim.name.as_str() {
                    "gamma-closed-form" => a + c == 0,
                    "printed-relation" => false,
                    _ => true,
                };
                assert_eq!(claim.passed(), expect, "{r}");
            }
        }
        let r = general_formula_check(&int(2), &int(1), &int(1), 14);
        assert_eq!(r.claim("c1-somos").unwrap().passes(), 4);
    }
}
