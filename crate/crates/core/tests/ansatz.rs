use mlq::ansatz::*;
use mlq::macdonald::{check_family, fmu, QkzFamily};
use mlq::mlq::{partitions_inside, Composition};
use mlq::ring::{Factor, QTPoly, QTRational, XPolynomial};
use proptest::prelude::*;

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

#[test]
fn base_cases() {
    assert_eq!(build_x(1, 1), vec![TensorOp { x_power: 1, factors: vec![] }]);
    assert_eq!(build_x(0, 1), vec![TensorOp { x_power: 0, factors: vec![] }]);
    assert!(build_s(1).is_empty());
    assert_eq!(build_s(2), vec![1]);
    assert_eq!(build_s(3), vec![2, 1, 1]);
    let mut diag = TruncOp::zero(2);
    diag.entries[0][0] = QTPoly::one();
    diag.entries[1][1] = QTPoly::qt(1, 0);
    assert_eq!(TruncOp::twist(build_s(2)[0], 2), diag);
}

#[test]
fn vanishing_blocks() {
    for l in 2..6 {
        for j in 0..=l {
            for m in 0..l {
                let a = a_factors(j, m, l);
                if 0 < m && m < j {
                    assert!(a.is_none());
                } else {
                    assert_eq!(a.map(|f| f.len()), Some(l as usize - 1), "{j} {m} {l}");
                }
            }
        }
    }
}

#[test]
fn level_two_hole() {
    let x = build_x(0, 2);
    assert_eq!(
        x,
        vec![
            TensorOp { x_power: 0, factors: vec![ModeOp::I] },
            TensorOp { x_power: 1, factors: vec![ModeOp::Eps] },
        ]
    );
}

#[test]
fn geometric_twist() {
    let one_over = QTRational::over_factor(QTPoly::one(), Factor::new(1, 0).unwrap());
    assert_eq!(mode_trace_exact(&[ModeOp::I], 1), one_over);
    assert_eq!(mode_trace_exact(&[ModeOp::Eps], 1), QTRational::zero());
    // Σ_j (1 - t^{j+1}) q^{j+1} for ε then δ: q/(1-q) - qt/(1-qt).
    let ed = mode_trace_exact(&[ModeOp::Delta, ModeOp::Eps], 1);
    let expect = &QTRational::over_factor(QTPoly::qt(1, 0), Factor::new(1, 0).unwrap())
        - &QTRational::over_factor(QTPoly::qt(1, 1), Factor::new(1, 1).unwrap());
    assert_eq!(ed, expect);
}

#[test]
fn binary_compositions() {
    for mu in ["1,0,1", "0,0,0", "1,1"] {
        let mu = comp(mu);
        let e: Vec<u32> = mu.parts().to_vec();
        let y = Ansatz::new().y(&mu, default_dimension(mu.len())).unwrap();
        assert_eq!(y, XPolynomial::term(e, QTRational::one()));
    }
}

#[test]
fn proportional_to_f() {
    let ans = Ansatz::new();
    for lam in partitions_inside(&[2, 2, 1], 4).into_iter().chain([comp("3,2,1,0")]) {
        let mus = lam.rearrangements();
        let ys: Vec<_> = mus.iter().map(|m| ans.y(m, default_dimension(m.len())).unwrap()).collect();
        let fs: Vec<_> = mus.iter().map(fmu).collect();
        assert!(proportional(&ys, &fs), "{lam}");
    }
}

#[test]
fn exchange_relations() {
    let lam = comp("2,1,0");
    let ans = Ansatz::new();
    let members = lam.rearrangements().into_iter().map(|m| (m.clone(), ans.y_exact(&m))).collect();
    let report = check_family(&QkzFamily { lambda: lam, members });
    assert!(report.all_passed(), "{report}");
}

#[test]
fn truncation_certificate() {
    let mu = comp("2,1,0");
    let ans = Ansatz::new();
    assert!(ans.y(&mu, 1).is_ok());
    assert_eq!(ans.y(&mu, 0), Err(AnsatzError::ZeroDimension));
    let gap = &ans.y_exact(&mu) - &ans.y_truncated(&mu, 6);
    assert!(!gap.is_zero());
}

fn word() -> impl Strategy<Value = Vec<ModeOp>> {
    prop::collection::vec(prop::sample::select(vec![ModeOp::I, ModeOp::A, ModeOp::Eps, ModeOp::Delta]), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn truncated_walk_matches_dense(w in word(), s in 1u32..3, d in 1usize..5) {
        let dense = w.iter().fold(TruncOp::identity(d), |acc, &op| acc.matmul(&TruncOp::mode(op, d)));
        prop_assert_eq!(dense.matmul(&TruncOp::twist(s, d)).trace(), mode_trace_truncated(&w, s, d));
    }

    #[test]
    fn truncation_converges_q_adically(w in word(), s in 1u32..3, d in 1usize..7) {
        let gap = &mode_trace_exact(&w, s) - &QTRational::from_poly(mode_trace_truncated(&w, s, d));
        prop_assert!(q_valuation(&gap) >= d as i64 - w.len() as i64);
    }
}
