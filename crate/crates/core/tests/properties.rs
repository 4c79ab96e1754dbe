use mlq::macdonald::{cherednik_y, hecke_t, hecke_t_inverse, shift_omega};
use mlq::mlq::{enumerate_mlq, Composition, MultilineQueue, QueueJson};
use mlq::ring::{int, rat, BigRat, Factor, QTPoly, QTRational, XPolynomial};
use proptest::prelude::*;

const N: usize = 3;

fn qtpoly() -> impl Strategy<Value = QTPoly> {
    prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4)
        .prop_map(|ts| QTPoly::from_terms(ts.into_iter().map(|(a, b, c)| ((a, b), int(c)))))
}

fn qtrational() -> impl Strategy<Value = QTRational> {
    (qtpoly(), 0u32..2, 0u32..2, prop::collection::vec((0u32..3, 1u32..3), 0..3)).prop_map(|(p, a, b, fs)| {
        QTRational::new(p, (a, b), fs.into_iter().map(|(q, t)| Factor::new(q, t).unwrap()).collect())
    })
}

fn xpoly() -> impl Strategy<Value = XPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, N), qtrational()), 0..4)
        .prop_map(|ts| XPolynomial::from_terms(N, ts))
}

fn point() -> impl Strategy<Value = (BigRat, BigRat)> {
    (1i64..9, 1i64..9).prop_map(|(a, b)| (rat(a, 11), rat(b, 13)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in qtrational(), b in qtrational(), c in qtrational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_unique(a in qtrational(), b in qtrational()) {
        let s = &a + &b;
        let mut c = s.clone();
        c.canonicalize();
        prop_assert_eq!(&c, &s);
        prop_assert_eq!(format!("{}", c), format!("{}", s));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in qtrational(), b in qtrational(), (q, t) in point()) {
        let (ea, eb) = (a.eval(&q, &t).unwrap(), b.eval(&q, &t).unwrap());
        prop_assert_eq!((&a + &b).eval(&q, &t).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval(&q, &t).unwrap(), &ea * &eb);
    }

    #[test]
    fn exact_division(p in qtpoly(), a in 0u32..3, b in 1u32..3) {
        let prod = &p * &QTPoly::one_minus(a, b);
        prop_assert_eq!(prod.div_one_minus(a, b), Some(p));
    }

    #[test]
    fn divided_difference_round_trip(f in xpoly(), i in 0usize..N - 1) {
        let g = &f - &f.swap_vars(i);
        prop_assert_eq!(g.divide_by_xdiff(i).unwrap(), f.divided_difference(i));
    }

    #[test]
    fn hecke_quadratic(f in xpoly(), i in 0usize..N - 1) {
        // (T - t)(T + 1) = 0
        let t = QTRational::qt(0, 1);
        let tf = hecke_t(&f, i);
        let lhs = &hecke_t(&tf, i) - &(&tf.scale(&(&t - &QTRational::one())) + &f.scale(&t));
        prop_assert!(lhs.is_zero());
        prop_assert_eq!(hecke_t_inverse(&tf, i), f);
    }

    #[test]
    fn hecke_braid(f in xpoly()) {
        let a = hecke_t(&hecke_t(&hecke_t(&f, 0), 1), 0);
        let b = hecke_t(&hecke_t(&hecke_t(&f, 1), 0), 1);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn omega_power(f in xpoly()) {
        let mut g = f.clone();
        for _ in 0..N {
            g = shift_omega(&g);
        }
        let expect = XPolynomial::from_terms(N, f.terms().map(|(e, c)| (e.clone(), c.shift(e.iter().sum(), 0))));
        prop_assert_eq!(g, expect);
    }

    #[test]
    fn cherednik_commute(f in xpoly()) {
        prop_assert_eq!(cherednik_y(&cherednik_y(&f, 0), 2), cherednik_y(&cherednik_y(&f, 2), 0));
    }

    #[test]
    fn poly_json_round_trip(f in xpoly()) {
        let json = serde_json::to_string(&f.to_json()).unwrap();
        prop_assert_eq!(XPolynomial::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), f);
    }

    #[test]
    fn queue_json_round_trip(parts in prop::collection::vec(0u32..3, 2..5), k in 0usize..64) {
        let mu = Composition::new(parts).unwrap();
        let queues = enumerate_mlq(&mu);
        let q: &MultilineQueue = &queues[k % queues.len()];
        let json: QueueJson = serde_json::from_str(&serde_json::to_string(&q.to_json()).unwrap()).unwrap();
        prop_assert_eq!(&json.to_queue().unwrap(), q);
    }
}
