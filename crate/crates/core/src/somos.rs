//! Somos-4 detection and verification.
//!
//! The relation `e_n e_{n-4} = alpha e_{n-1} e_{n-3} + beta e_{n-2}^2` is always
//! checked in product form. Windows with `e_{n-4} = 0` are skipped.

use crate::rational::{self, Rational};
use crate::report::{Claim, ConjectureReport};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SomosWitness {
    pub alpha: Rational,
    pub beta: Rational,
    /// First and last `n` at which the relation was checked.
    pub verified_window: (usize, usize),
    /// True when every usable pair of windows gave a singular system.
    pub degenerate: bool,
    /// Windows skipped because `e_{n-4} = 0`.
    pub skipped: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SomosDetection {
    Witness(SomosWitness),
    NoWitness {
        /// First window violating the candidate law, if a candidate existed.
        first_violation: Option<usize>,
        reason: String,
    },
}

impl SomosDetection {
    pub fn witness(&self) -> Option<&SomosWitness> {
        match self {
            Self::Witness(w) => Some(w),
            Self::NoWitness { .. } => None,
        }
    }
}

struct Row {
    n: usize,
    a: Rational,
    b: Rational,
    c: Rational,
}

fn rows(e: &[Rational]) -> (Vec<Row>, Vec<usize>) {
    let mut usable = Vec::new();
    let mut skipped = Vec::new();
    for n in 4..e.len() {
        if e[n - 4].is_zero() {
            skipped.push(n);
            continue;
        }
        usable.push(Row {
            n,
            a: &e[n - 1] * &e[n - 3],
            b: &e[n - 2] * &e[n - 2],
            c: &e[n] * &e[n - 4],
        });
    }
    (usable, skipped)
}

fn holds(r: &Row, alpha: &Rational, beta: &Rational) -> bool {
    alpha * &r.a + beta * &r.b == r.c
}

/// Solves for `(alpha, beta)` from the first nonsingular pair of windows and
/// verifies the law on every usable window.
///
/// When no pair is nonsingular the equations are all proportional and the
/// witness is the representative with `beta = 0` if possible, else `alpha = 0`.
pub fn detect_somos4(e: &[Rational]) -> SomosDetection {
    if e.len() < 6 {
        return SomosDetection::NoWitness {
            first_violation: None,
            reason: format!("need at least 6 terms, have {}", e.len()),
        };
    }
    let (rows, skipped) = rows(e);
    if rows.len() < 2 {
        return SomosDetection::NoWitness {
            first_violation: None,
            reason: "fewer than two usable windows".into(),
        };
    }
    let mut candidate = None;
    'search: for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (p, q) = (&rows[i], &rows[j]);
            let det = &p.a * &q.b - &q.a * &p.b;
            if !det.is_zero() {
                let alpha = (&p.c * &q.b - &q.c * &p.b) / &det;
                let beta = (&p.a * &q.c - &q.a * &p.c) / &det;
                candidate = Some((alpha, beta, false));
                break 'search;
            }
        }
    }
    let candidate = candidate.or_else(|| {
        let r = rows.iter().find(|r| !r.a.is_zero() || !r.b.is_zero());
        match r {
            Some(r) if !r.a.is_zero() => Some((&r.c / &r.a, Rational::zero(), true)),
            Some(r) => Some((Rational::zero(), &r.c / &r.b, true)),
            None => rows
                .iter()
                .all(|r| r.c.is_zero())
                .then(|| (Rational::zero(), Rational::zero(), true)),
        }
    });
    let Some((alpha, beta, degenerate)) = candidate else {
        return SomosDetection::NoWitness {
            first_violation: None,
            reason: "inconsistent windows with vanishing coefficients".into(),
        };
    };
    if let Some(r) = rows.iter().find(|r| !holds(r, &alpha, &beta)) {
        return SomosDetection::NoWitness {
            first_violation: Some(r.n),
            reason: format!("candidate ({alpha}, {beta}) fails at n = {}", r.n),
        };
    }
    SomosDetection::Witness(SomosWitness {
        alpha,
        beta,
        verified_window: (rows[0].n, rows[rows.len() - 1].n),
        degenerate,
        skipped,
    })
}

/// Window-by-window check of a given `(alpha, beta)` law.
pub fn verify_somos4(e: &[Rational], alpha: &Rational, beta: &Rational) -> ConjectureReport {
    let mut report = ConjectureReport::new(
        "somos4",
        vec![("alpha".into(), alpha.clone()), ("beta".into(), beta.clone())],
    );
    report.push(somos_claim("somos4", e, alpha, beta));
    report
}

/// The product-form Somos-4 checks as a named claim.
pub fn somos_claim(name: &str, e: &[Rational], alpha: &Rational, beta: &Rational) -> Claim {
    let mut claim = Claim::new(name);
    if e.len() < 5 {
        claim.note(format!("need at least 5 terms, have {}", e.len()));
    }
    for n in 4..e.len() {
        if e[n - 4].is_zero() {
            claim.skip(n, "e_{n-4} = 0");
            continue;
        }
        let rhs = alpha * &e[n - 1] * &e[n - 3] + beta * &e[n - 2] * &e[n - 2];
        claim.record(n, rhs, &e[n] * &e[n - 4]);
    }
    claim
}

/// `s_n = s_0 (s_0 / s_{-1})^n prod_{k<n} (xbar - x_k)^{n-k}` for `n = 0..x.len()`,
/// where `x_k` are the x-coordinates of `Q + kP` and `xbar = x(P)`.
pub fn somos_from_coordinates(xbar: &Rational, xs: &[Rational], s0: &Rational, s_minus1: &Rational) -> Vec<Rational> {
    let ratio = s0 / s_minus1;
    (0..=xs.len())
        .map(|n| {
            let mut v = s0 * rational::pow(&ratio, n as i64);
            for (k, xk) in xs.iter().take(n).enumerate() {
                v *= rational::pow(&(xbar - xk), (n - k) as i64);
            }
            v
        })
        .collect()
}

impl SomosWitness {
    pub fn is_law(&self, alpha: i64, beta: i64) -> bool {
        self.alpha == rational::int(alpha) && self.beta == rational::int(beta)
    }
}

/// Convenience: does `e` satisfy `(alpha, beta)` on every usable window?
pub fn satisfies(e: &[Rational], alpha: &Rational, beta: &Rational) -> bool {
    somos_claim("somos4", e, alpha, beta).passed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints};

    #[test]
    fn detects_printed_laws() {
        let e = ints(&[1, 2, 3, -5, -28, -67, -411, -506]);
        assert!(detect_somos4(&e).witness().unwrap().is_law(1, -2));
        let f = ints(&[1, -2, -3, 5, 8, -13, -21, 34]);
        let w = detect_somos4(&f);
        assert!(w.witness().unwrap().is_law(1, 2));
        assert!(!w.witness().unwrap().degenerate);
    }

    #[test]
    fn constant_sequence_is_degenerate() {
        let w = detect_somos4(&ints(&[1, 1, 1, 1, 1, 1])).witness().cloned().unwrap();
        assert!(w.degenerate);
        assert_eq!(&w.alpha + &w.beta, int(1));
        assert_eq!((w.alpha, w.beta), (int(1), int(0)));
    }

    #[test]
    fn rejects_non_somos() {
        let e = ints(&[1, 3, 2, 7, 1, 8, 2, 8, 1, 8]);
        match detect_somos4(&e) {
            SomosDetection::NoWitness { first_violation, .. } => assert!(first_violation.is_some()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(detect_somos4(&ints(&[1, 2, 3])).witness().is_none());
    }

    #[test]
    fn verification_reports() {
        let h = ints(&[1, 2, 1, -7, -16, -57, -113, 670, 3983]);
        assert!(verify_somos4(&h, &int(1), &int(-2)).passed());
        let b = ints(&[2, -7, -57, 670, 23647]);
        assert!(verify_somos4(&b, &int(1), &int(16)).passed());
        let r = verify_somos4(&h, &int(1), &int(-3));
        assert_eq!(r.first_failure().unwrap().1.index, 4);
        let z = ints(&[0, 1, 1, 1, 1, 1]);
        let r = verify_somos4(&z, &int(1), &int(0));
        assert_eq!(r.claims[0].skips(), 1);
    }
}
