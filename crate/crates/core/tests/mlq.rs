use mlq::mlq::{count_mlq, enumerate_mlq, label_and_audit, BallSystem, Composition, MultilineQueue};
use mlq::ring::{int, Factor, QTPoly, QTRational, XMonomial};

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

fn row(n: usize, cols: &[usize]) -> Vec<bool> {
    (1..=n).map(|c| cols.contains(&c)).collect()
}

/// The three-row queue on eight columns with type (2,2,0,0,0,3,2,1).
fn eight_column_queue() -> MultilineQueue {
    let n = 8;
    let system = BallSystem::new(vec![row(n, &[1, 2, 6, 7, 8]), row(n, &[2, 4, 5, 6]), row(n, &[3])]).unwrap();
    let mut m = vec![vec![None; n]; 3];
    m[2][2] = Some(4);
    m[1][4] = Some(5);
    m[1][5] = Some(0);
    m[1][3] = Some(6);
    m[1][1] = Some(1);
    MultilineQueue::new(system, m).unwrap()
}

#[test]
fn eight_column_queue_type_and_x_weight() {
    let q = eight_column_queue();
    assert_eq!(q.type_(), comp("2,2,0,0,0,3,2,1"));
    assert_eq!(q.wt_x(), XMonomial::from([1, 2, 1, 1, 1, 2, 1, 1]));
}

#[test]
fn eight_column_queue_events() {
    let q = eight_column_queue();
    let nontrivial: Vec<(u32, u32)> =
        q.events().iter().filter(|e| !e.trivial).map(|e| (e.skipped, e.free)).collect();
    assert_eq!(nontrivial, vec![(1, 4), (0, 5), (2, 3), (0, 2)]);
    let wrapped: Vec<bool> = q.events().iter().filter(|e| !e.trivial).map(|e| e.wrapped).collect();
    assert_eq!(wrapped, vec![false, false, true, false]);
}

#[test]
fn single_row_queue_has_no_events() {
    let system = BallSystem::new(vec![row(4, &[1, 3])]).unwrap();
    let (labels, events) = label_and_audit(&system, &[vec![None; 4]]).unwrap();
    assert_eq!(labels, vec![vec![1, 0, 1, 0]]);
    assert!(events.is_empty());
}

#[test]
fn straight_down_pairing_is_trivial() {
    let system = BallSystem::new(vec![row(2, &[1]), row(2, &[1])]).unwrap();
    let q = MultilineQueue::new(system, vec![vec![None; 2], vec![Some(0), None]]).unwrap();
    assert_eq!(q.events().len(), 1);
    assert!(q.events()[0].trivial);
    assert!(q.wt_qt().is_one());
}

#[test]
fn single_diagonal_pairing_weight() {
    let system = BallSystem::new(vec![row(2, &[2]), row(2, &[1])]).unwrap();
    let q = MultilineQueue::new(system, vec![vec![None; 2], vec![Some(1), None]]).unwrap();
    let e = &q.events()[0];
    assert_eq!((e.skipped, e.free, e.wrapped, e.trivial), (0, 1, false, false));
    let expected = QTRational::over_factor(QTPoly::one_minus(0, 1), Factor::new(1, 1).unwrap());
    assert_eq!(q.wt_qt(), expected);
}

#[test]
fn skipping_a_free_ball_below_is_rejected() {
    let system = BallSystem::new(vec![row(2, &[1, 2]), row(2, &[1])]).unwrap();
    let err = MultilineQueue::new(system, vec![vec![None; 2], vec![Some(1), None]]);
    assert!(err.is_err());
}

#[test]
fn table_counts() {
    for (mu, count) in [
        ("2,1,1,0,0", 3),
        ("2,2,1,1,0,0", 7),
        ("2,2,2,1,1,0,0", 13),
        ("2,2,2,2,1,1,0,0", 21),
        ("3,2,2,1,1,0,0", 105),
        ("3,3,2,2,1,1,0,0", 1029),
    ] {
        assert_eq!(count_mlq(&comp(mu)), count, "{mu}");
    }
}

#[test]
fn counts_are_permutation_sensitive_but_zero_one_types_are_single() {
    assert_eq!(count_mlq(&comp("0,1,2,2")), 3);
    assert_eq!(count_mlq(&comp("1,0,1,1,0")), 1);
    assert_eq!(count_mlq(&comp("0,0,0")), 1);
}

#[test]
fn enumeration_is_sorted_and_duplicate_free() {
    let qs = enumerate_mlq(&comp("2,0,1,2"));
    for w in qs.windows(2) {
        assert!((w[0].system(), w[0].matching()) < (w[1].system(), w[1].matching()));
    }
}

#[test]
fn enumerated_queues_audit_to_their_type() {
    for mu in ["3,1,2,0", "2,2,1,0", "0,3,1,1"] {
        let mu = comp(mu);
        for q in enumerate_mlq(&mu) {
            let (labels, events) = label_and_audit(q.system(), q.matching()).unwrap();
            assert_eq!(labels.as_slice(), q.labels());
            assert_eq!(events.as_slice(), q.events());
            assert_eq!(q.type_(), mu);
        }
    }
}

#[test]
fn labels_weakly_decrease_upwards() {
    for q in enumerate_mlq(&comp("3,2,1,0")).iter().chain(enumerate_mlq(&comp("1,3,3,2")).iter()) {
        let l = q.labels();
        for r in 1..l.len() {
            for c in 0..q.n() {
                let (above, below) = (l[r][c], l[r - 1][c]);
                if above > 0 && below > 0 {
                    assert!(above <= below);
                    if above == below {
                        assert_eq!(q.matching()[r][c], Some(c));
                    }
                }
            }
        }
    }
}

#[test]
fn cyclic_shift_rotates_type_and_weight() {
    for mu in Composition::new(vec![2, 1, 0]).unwrap().rearrangements() {
        for q in enumerate_mlq(&mu) {
            let s = q.cyclic_shift().unwrap();
            assert_eq!(s.type_(), mu.rotate());
            let mut w = q.wt_x();
            w.rotate_right(1);
            assert_eq!(s.wt_x(), w);
            let mut back = s.clone();
            for _ in 1..q.n() {
                back = back.cyclic_shift().unwrap();
            }
            assert_eq!(back, q);
        }
    }
}

fn wrap_exponent(q: &MultilineQueue) -> u32 {
    q.events().iter().filter(|e| e.wrapped).map(|e| e.q_exponent()).sum()
}

#[test]
fn cyclic_shift_q_identity_per_queue() {
    // μ_n + wrap(Q) = wrap(Q') + #balls in the wrapped column
    for lam in mlq::mlq::partitions_inside(&[3, 2, 1], 4) {
        for mu in lam.rearrangements() {
            for q in enumerate_mlq(&mu) {
                let s = q.cyclic_shift().unwrap();
                let balls = q.wt_x()[q.n() - 1];
                assert_eq!(mu.parts()[q.n() - 1] + wrap_exponent(&q), wrap_exponent(&s) + balls, "{mu}");
            }
        }
    }
}

#[test]
fn cyclic_shift_weight_identity_per_ball_system() {
    use std::collections::BTreeMap;
    for lam in mlq::mlq::partitions_inside(&[3, 2, 1], 4) {
        for mu in lam.rearrangements() {
            let mut lhs: BTreeMap<BallSystem, Vec<QTRational>> = BTreeMap::new();
            let mut rhs: BTreeMap<BallSystem, Vec<QTRational>> = BTreeMap::new();
            for q in enumerate_mlq(&mu) {
                let s = q.cyclic_shift().unwrap();
                let balls = q.wt_x()[q.n() - 1];
                lhs.entry(s.system().clone()).or_default().push(q.wt_qt().shift(mu.parts()[q.n() - 1], 0));
                rhs.entry(s.system().clone()).or_default().push(s.wt_qt().shift(balls, 0));
            }
            for (sys, l) in lhs {
                let r = rhs.remove(&sys).unwrap();
                assert_eq!(QTRational::sum_grouped(l), QTRational::sum_grouped(r), "{mu}");
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let q = eight_column_queue();
    let j = serde_json::to_string(&q.to_json()).unwrap();
    let back: mlq::mlq::QueueJson = serde_json::from_str(&j).unwrap();
    assert_eq!(back.to_queue().unwrap(), q);
}

#[test]
fn weights_normalise_per_ball_system_at_q_one() {
    let one = int(1);
    let t = mlq::ring::rat(1, 3);
    let lam = comp("3,2,1,0");
    let mut by_system = std::collections::BTreeMap::new();
    for mu in lam.rearrangements() {
        for q in enumerate_mlq(&mu) {
            *by_system.entry(q.system().clone()).or_insert_with(|| int(0)) += q.wt_qt().eval(&one, &t).unwrap();
        }
    }
    assert_eq!(by_system.len(), 4 * 6 * 4);
    assert!(by_system.values().all(|v| *v == one));
}

