use num_traits::{One, Zero};
use proptest::prelude::*;
use rlab_core::hankel::{self, JFraction};
use rlab_core::matrix::{exact_determinant, Matrix};
use rlab_core::oeis::{oeis_identify, parse_stripped};
use rlab_core::rational::{format_list, frac, int, parse_list, Rational};
use rlab_core::riordan::{binomial_transform, RiordanPair};
use rlab_core::series::TruncatedSeries;
use rlab_core::somos::{detect_somos4, satisfies};

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=5, any::<bool>(), 1i64..=3).prop_map(|(n, neg, d)| frac(if neg { -n } else { n }, d))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rat(), order + 1).prop_map(TruncatedSeries::new)
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (nonzero(), prop::collection::vec(rat(), order)).prop_map(|(c0, rest)| {
        let mut v = vec![c0];
        v.extend(rest);
        TruncatedSeries::new(v)
    })
}

/// `x * unit`.
fn shift_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    unit_series(order - 1).prop_map(move |u| u.mul_x_pow(1).truncate(order))
}

fn schoolbook(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    (0..a.len().min(b.len()))
        .map(|n| (0..=n).fold(Rational::zero(), |s, k| s + &a[k] * &b[n - k]))
        .collect()
}

fn leibniz_det(m: &[Vec<Rational>]) -> Rational {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        perms(n - 1)
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    q
                })
            })
            .collect()
    }
    let n = m.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let prod = (0..n).fold(Rational::one(), |acc, i| acc * &m[i][p[i]]);
            if inversions % 2 == 0 { prod } else { -prod }
        })
        .fold(Rational::zero(), |s, v| s + v)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_matches_schoolbook(a in series(8), b in series(8)) {
        prop_assert_eq!(a.mul(&b).into_coeffs(), schoolbook(a.coeffs(), b.coeffs()));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn inverse_is_two_sided(u in unit_series(9)) {
        let inv = u.inverse().unwrap();
        prop_assert_eq!(u.mul(&inv), TruncatedSeries::one(9));
    }

    #[test]
    fn reversion_is_an_involution(f in shift_series(8)) {
        let g = f.revert().unwrap();
        prop_assert_eq!(g.revert().unwrap(), f.clone());
        prop_assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::x(8));
    }

    #[test]
    fn composition_is_associative(a in series(6), f in shift_series(6), g in shift_series(6)) {
        let left = a.compose(&f).unwrap().compose(&g).unwrap();
        let right = a.compose(&f.compose(&g).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn riordan_product_is_matrix_product(g1 in unit_series(6), f1 in shift_series(6), g2 in unit_series(6), f2 in shift_series(6)) {
        let a = RiordanPair::new(g1, f1).unwrap();
        let b = RiordanPair::new(g2, f2).unwrap();
        let ab = a.mul(&b).unwrap();
        let m = a.matrix(6).unwrap().mul(&b.matrix(6).unwrap()).unwrap();
        prop_assert_eq!(ab.matrix(6).unwrap(), m);
        let id = a.mul(&a.inverse().unwrap()).unwrap();
        prop_assert_eq!(id.matrix(6).unwrap(), Matrix::identity(7));
    }

    #[test]
    fn determinant_matches_leibniz(rows in prop::collection::vec(prop::collection::vec(rat(), 5), 5)) {
        let m = Matrix::from_rows(rows.clone());
        prop_assert_eq!(exact_determinant(&m), leibniz_det(&rows));
    }

    #[test]
    fn heilermann_matches_determinants(alphas in prop::collection::vec(rat(), 4), betas in prop::collection::vec(nonzero(), 4)) {
        let j = JFraction::new(int(1), alphas, betas);
        let moments = hankel::jfraction_to_series(&j, 8).into_coeffs();
        let via = hankel::heilermann_hankel(&j, 4).unwrap();
        let direct = hankel::hankel_transform_n(&moments, 5).unwrap();
        prop_assert_eq!(&via, &direct);
        let back = hankel::jfraction_from_moments(&moments).unwrap();
        prop_assert_eq!(&back.alphas[..4], &j.alphas[..]);
        prop_assert_eq!(&back.betas[..4], &j.betas[..]);
    }

    #[test]
    fn binomial_transform_keeps_hankel(a in prop::collection::vec(-5i64..=5, 9), r in -3i64..=3) {
        let s = TruncatedSeries::from_ints(&a, 8);
        let b = binomial_transform(&s, &int(r));
        prop_assert_eq!(
            hankel::hankel_transform_n(b.coeffs(), 5).unwrap(),
            hankel::hankel_transform_n(s.coeffs(), 5).unwrap()
        );
    }

    #[test]
    fn somos_detection_recovers_the_law(alpha in -3i64..=3, beta in -3i64..=3, seed in prop::collection::vec(1i64..=3, 4)) {
        let (al, be) = (int(alpha), int(beta));
        let mut e: Vec<Rational> = seed.iter().map(|&v| int(v)).collect();
        for n in 4..10 {
            let next = (&al * &e[n - 1] * &e[n - 3] + &be * &e[n - 2] * &e[n - 2]) / &e[n - 4];
            if next.is_zero() {
                break;
            }
            e.push(next);
        }
        prop_assume!(e.len() == 10);
        prop_assert!(satisfies(&e, &al, &be));
        if let Some(w) = detect_somos4(&e).witness() {
            prop_assert!(satisfies(&e, &w.alpha, &w.beta));
        }
    }

    #[test]
    fn list_format_round_trips(v in prop::collection::vec(rat(), 1..8)) {
        prop_assert_eq!(parse_list(&format_list(&v)).unwrap(), v);
    }

    #[test]
    fn stripped_lines_round_trip(terms in prop::collection::vec(-1000i64..1000, 6..15), start in 0usize..3) {
        let body: Vec<String> = terms.iter().map(ToString::to_string).collect();
        let db = parse_stripped(&format!("A123456 ,{},\n", body.join(",")));
        prop_assert_eq!(db.entries.len(), 1);
        let window: Vec<Rational> = terms[start..start + 4].iter().map(|&v| int(v)).collect();
        prop_assume!(window.iter().any(|v| !v.is_zero()));
        let hits = oeis_identify(&db, &window, 4);
        prop_assert!(hits.iter().any(|h| h.offset == start && h.matched == 4));
    }
}
