use mlq::macdonald::fmu;
use mlq::mlq::{enumerate_mlq, partitions_inside, Composition};
use mlq::tableaux::*;

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

#[test]
fn four_column_basement_and_count() {
    let d = AugmentedDiagram::for_type(&comp("0,1,2,2"));
    assert_eq!(d.basement(), &[3, 4, 2, 1]);
    assert_eq!(d.heights(), &[2, 2, 1, 0]);
    assert_eq!(enumerate_qt(&d).len(), 3);
    assert_eq!(tableaux_polynomial(&d), fmu(&comp("0,1,2,2")));
}

#[test]
fn tableaux_formula_and_bijection() {
    for lam in partitions_inside(&[3, 2, 1], 4) {
        for mu in lam.rearrangements() {
            let d = AugmentedDiagram::for_type(&mu);
            let qt = enumerate_qt(&d);
            let queues = enumerate_mlq(&mu);
            assert_eq!(qt.len(), queues.len(), "{mu}");
            let mut images: Vec<QueueTableau> = queues.iter().map(tab_bijection).collect();
            for (q, t) in queues.iter().zip(&images) {
                assert!(t.is_nonattacking(), "{mu}");
                assert_eq!(t.x_monomial(), q.wt_x(), "{mu}");
            }
            images.sort_by_key(|t| format!("{:?}", t.to_json().fill));
            images.dedup();
            assert_eq!(images.len(), qt.len(), "{mu}");
            assert_eq!(tableaux_polynomial(&d), fmu(&mu), "{mu}");
        }
    }
}
