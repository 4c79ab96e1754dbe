use mlq::asep::*;
use mlq::mlq::{partitions_inside, Composition};
use mlq::ring::{int, rat};
use num_traits::ToPrimitive;

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

#[test]
fn two_site_chain() {
    let p = build_chain(&comp("1,0"), &rat(1, 3)).unwrap();
    assert_eq!(p.entry(&comp("1,0"), &comp("0,1")), Some(&rat(2, 3)));
    assert_eq!(p.entry(&comp("0,1"), &comp("1,0")), Some(&rat(2, 3)));
    assert!(p.is_stochastic());
    let pi = stationary(&comp("1,0"), &rat(1, 3)).unwrap();
    assert_eq!(pi.pi, vec![rat(1, 2), rat(1, 2)]);
}

#[test]
fn trivial_chains() {
    let p = build_chain(&comp("1,1"), &rat(1, 2)).unwrap();
    assert_eq!(p.entries, vec![vec![int(1)]]);
    let pi = stationary(&comp("1,1,0"), &rat(1, 2)).unwrap();
    assert_eq!(pi.pi, vec![rat(1, 3); 3]);
}

#[test]
fn tasep_off_diagonals() {
    let p = build_chain(&comp("2,1,0"), &int(0)).unwrap();
    assert_eq!(p.space.len(), 6);
    for (i, row) in p.entries.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                assert!(*v == int(0) || *v == rat(1, 3));
            }
        }
    }
    assert!(p.is_stochastic());
}

#[test]
fn rates_follow_the_larger_entry() {
    let t = rat(1, 5);
    let p = build_chain(&comp("2,1,0"), &t).unwrap();
    // Left entry smaller: rate 1/n; larger: t/n.
    assert_eq!(p.entry(&comp("0,1,2"), &comp("1,0,2")), Some(&rat(1, 3)));
    assert_eq!(p.entry(&comp("1,0,2"), &comp("0,1,2")), Some(&rat(1, 15)));
    assert_eq!(p.entry(&comp("0,1,2"), &comp("2,1,0")), Some(&rat(1, 15)));
}

#[test]
fn stationary_is_positive_and_balanced() {
    for lam in ["2,1,0", "2,1,1,0", "3,1,0,0"] {
        let st = stationary(&comp(lam), &rat(2, 3)).unwrap();
        let p = build_chain(&comp(lam), &rat(2, 3)).unwrap();
        assert!(st.pi.iter().all(|v| *v > int(0)));
        for j in 0..st.pi.len() {
            let flow: mlq::ring::BigRat = (0..st.pi.len()).map(|i| &st.pi[i] * &p.entries[i][j]).sum();
            assert_eq!(flow, st.pi[j]);
        }
    }
}

#[test]
fn martin_small() {
    for t in [int(0), rat(1, 2), rat(1, 3)] {
        assert!(martin_check(&comp("2,1,0"), &t).unwrap().passed());
    }
    assert!(martin_check(&comp("2,1,1,0"), &rat(1, 2)).unwrap().passed());
    assert!(martin_check(&comp("1,1,0"), &rat(1, 2)).unwrap().passed());
}

#[test]
fn martin_symbolic() {
    assert!(martin_check_symbolic(&comp("2,1,0")).unwrap());
    assert!(martin_check_symbolic(&comp("1,1,0,0")).unwrap());
    assert!(matches!(martin_check_symbolic(&comp("2,1,1,0")), Ok(true)));
    assert_eq!(stationary_symbolic(&comp("2,1,0,0,0")).unwrap_err(), AsepError::TooLarge(20));
}

#[test]
fn not_partition() {
    assert!(matches!(build_chain(&comp("0,1"), &int(1)), Err(AsepError::NotPartition(_))));
}

#[test]
fn simulation_matches_exact() {
    let a = simulate(&comp("1,0"), 0.3, 1_000_000, 7).unwrap();
    assert!((a[0] - 0.5).abs() < 0.01);
    let a = simulate(&comp("2,1,0"), 0.5, 10_000_000, 11).unwrap();
    let exact: Vec<f64> = stationary(&comp("2,1,0"), &rat(1, 2)).unwrap().pi.iter().map(|v| v.to_f64().unwrap()).collect();
    assert!(total_variation(&a, &exact) < 0.01);
    assert_eq!(simulate(&comp("2,1,0"), 0.5, 10_000, 3), simulate(&comp("2,1,0"), 0.5, 10_000, 3));
    let runs = simulate_many(&comp("2,1,0"), 0.5, 10_000, &[3, 4]).unwrap();
    assert_eq!(runs[0], simulate(&comp("2,1,0"), 0.5, 10_000, 3).unwrap());
}

#[test]
fn martin_up_to_five_sites() {
    for n in 1..=5 {
        for lam in partitions_inside(&[3, 2, 1, 1], n) {
            for t in [int(0), rat(1, 3), rat(1, 2), rat(2, 3)] {
                let r = martin_check(&lam, &t).unwrap();
                assert!(r.passed(), "{lam} t={t}");
            }
        }
    }
}
