//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::Instant;

use mlq::ansatz::{default_dimension, proportional, Ansatz};
use mlq::asep::{martin_check, martin_check_symbolic};
use mlq::macdonald::{check_family, check_qkz, e_nonsymmetric, fmu, recursion_holds, schur_oracle, specialize_qt, zlambda, QkzFamily};
use mlq::mlq::{count_mlq, enumerate_mlq, partitions_inside, BallSystem, Composition, MultilineQueue};
use mlq::ring::{int, rat, Factor, QTPoly, QTRational, XMonomial, XPolynomial};
use mlq::tableaux::{enumerate_qt, tableaux_polynomial, AugmentedDiagram};

type Outcome = Result<String, String>;

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factor(q: u32, t: u32) -> Factor {
    Factor::new(q, t).unwrap()
}

fn term_counts() -> Outcome {
    let table = [
        ("2,1,1,0,0", 3),
        ("2,2,1,1,0,0", 7),
        ("2,2,2,1,1,0,0", 13),
        ("2,2,2,2,1,1,0,0", 21),
        ("3,2,2,1,1,0,0", 105),
        ("3,3,2,2,1,1,0,0", 1029),
    ];
    for (mu, want) in table {
        let got = count_mlq(&comp(mu));
        ensure(got == want, || format!("{mu}: {got} queues, expected {want}"))?;
    }
    Ok("6 table entries".into())
}

fn eight_column_queue() -> MultilineQueue {
    let n = 8;
    let row = |cols: &[usize]| (1..=n).map(|c| cols.contains(&c)).collect::<Vec<bool>>();
    let system = BallSystem::new(vec![row(&[1, 2, 6, 7, 8]), row(&[2, 4, 5, 6]), row(&[3])]).unwrap();
    let mut m = vec![vec![None; n]; 3];
    m[2][2] = Some(4);
    m[1][4] = Some(5);
    m[1][5] = Some(0);
    m[1][3] = Some(6);
    m[1][1] = Some(1);
    MultilineQueue::new(system, m).unwrap()
}

fn eight_column_weight() -> Outcome {
    let q = eight_column_queue();
    let one_minus_t = QTPoly::one_minus(0, 1);
    let num = (0..4).fold(QTPoly::one(), |acc, _| &acc * &one_minus_t).shift(1, 3);
    let want = QTRational::new(num, (0, 0), vec![factor(1, 4), factor(2, 4), factor(1, 3), factor(1, 2)]);
    let want_x = XMonomial::from([1, 2, 1, 1, 1, 2, 1, 1]);
    ensure(q.wt_x() == want_x, || format!("x-weight {:?}", q.wt_x()))?;
    let got = q.wt_qt();
    ensure(got == want, || format!("weight {got}, expected {want}"))?;
    Ok("weight matches".into())
}

fn four_column_golden() -> XPolynomial {
    let c = QTRational::over_factor(&QTPoly::qt(0, 1) - &QTPoly::qt(0, 2), factor(1, 2));
    XPolynomial::from_terms(
        4,
        [
            (vec![0, 1, 2, 2], QTRational::one()),
            (vec![1, 1, 2, 1], c.clone()),
            (vec![1, 1, 1, 2], c),
        ],
    )
}

fn four_column_f() -> Outcome {
    let f = fmu(&comp("0,1,2,2"));
    ensure(f == four_column_golden(), || format!("F = {f}"))?;
    Ok(format!("{} queues", enumerate_mlq(&comp("0,1,2,2")).len()))
}

fn qkz_suite() -> Outcome {
    let mut checks = 0;
    let mut families = 0;
    for n in 1..=6 {
        for lam in partitions_inside(&[3, 2, 1], n) {
            let r = check_qkz(&lam);
            if let Some(f) = r.failures().next() {
                return Err(format!("{:?} fails for mu={} index={:?}", f.relation, f.mu, f.index));
            }
            checks += r.checks.len();
            families += 1;
        }
    }
    Ok(format!("{checks} relations over {families} partitions"))
}

fn nonsymmetric() -> Outcome {
    let mut k = 0;
    for n in 1..=4 {
        for lam in partitions_inside(&[3, 2, 1], n) {
            e_nonsymmetric(&lam).map_err(|e| format!("{lam}: {e}"))?;
            k += 1;
        }
    }
    Ok(format!("{k} partitions"))
}

fn symmetric() -> Outcome {
    let zero = int(0);
    let mut k = 0;
    for n in 1..=4 {
        for lam in partitions_inside(&vec![6; n], n).into_iter().filter(|l| l.size() <= 6) {
            let z = zlambda(&lam).map_err(|e| e.to_string())?;
            ensure(z.is_symmetric(), || format!("Z_{lam} not symmetric"))?;
            ensure(z.coeff(lam.parts()).is_one(), || format!("Z_{lam} not monic"))?;
            let s = specialize_qt(&z, &zero, &zero).map_err(|e| e.to_string())?;
            ensure(s == schur_oracle(lam.parts(), n), || format!("Z_{lam}(x;0,0) is not the Schur polynomial"))?;
            k += 1;
        }
    }
    Ok(format!("{k} partitions"))
}

fn asep_agreement() -> Outcome {
    for lam in ["2,1,0", "2,1,1,0", "3,1,0", "2,2,1,0"] {
        for t in [int(0), rat(1, 3), rat(1, 2)] {
            let r = martin_check(&comp(lam), &t).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{lam} at t={t}: discrepancy {}", r.max_discrepancy))?;
        }
    }
    ensure(martin_check_symbolic(&comp("2,1,0")).map_err(|e| e.to_string())?, || "symbolic (2,1,0)".into())?;
    Ok("12 exact checks and one symbolic".into())
}

fn tableaux_equivalence() -> Outcome {
    let mut k = 0;
    for lam in partitions_inside(&[3, 2, 1], 4) {
        for mu in lam.rearrangements() {
            let d = AugmentedDiagram::for_type(&mu);
            let (qt, mlq) = (enumerate_qt(&d).len(), count_mlq(&mu));
            ensure(qt == mlq, || format!("{mu}: {qt} tableaux vs {mlq} queues"))?;
            ensure(tableaux_polynomial(&d) == fmu(&mu), || format!("{mu}: tableau sum differs from F"))?;
            k += 1;
        }
    }
    let d = AugmentedDiagram::for_type(&comp("0,1,2,2"));
    let ts = enumerate_qt(&d);
    ensure(ts.len() == 3, || format!("{} tableaux of type (0,1,2,2)", ts.len()))?;
    ensure(tableaux_polynomial(&d) == four_column_golden(), || "(0,1,2,2) tableau total".into())?;
    Ok(format!("{k} compositions; (0,1,2,2) has 3 tableaux"))
}

fn matrix_ansatz() -> Outcome {
    let ans = Ansatz::new();
    let mut k = 0;
    for lam in partitions_inside(&[2, 2, 1], 4) {
        let mus = lam.rearrangements();
        let ys = mus.iter().map(|m| ans.y(m, default_dimension(m.len()))).collect::<Result<Vec<_>, _>>();
        let ys = ys.map_err(|e| format!("{lam}: {e}"))?;
        let fs: Vec<_> = mus.iter().map(fmu).collect();
        ensure(proportional(&ys, &fs), || format!("Y/F depends on mu for {lam}"))?;
        k += 1;
    }
    let lam = comp("2,1,0");
    let members = lam.rearrangements().into_iter().map(|m| (m.clone(), ans.y_exact(&m))).collect();
    let report = check_family(&QkzFamily { lambda: lam, members });
    if let Some(f) = report.failures().next() {
        return Err(format!("Y: {:?} fails for mu={}", f.relation, f.mu));
    }
    Ok(format!("{k} partitions proportional; {} relations for Y", report.checks.len()))
}

fn recursion() -> Outcome {
    let mut k = 0;
    for lam in ["2,2,1,0", "3,1,1,0"] {
        for mu in comp(lam).rearrangements() {
            ensure(recursion_holds(&mu), || format!("recursion fails for {mu}"))?;
            k += 1;
        }
    }
    Ok(format!("{k} compositions"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("term counts", term_counts),
        ("eight-column queue weight", eight_column_weight),
        ("F_(0,1,2,2) golden", four_column_f),
        ("qKZ relations", qkz_suite),
        ("nonsymmetric characterization", nonsymmetric),
        ("symmetric characterization", symmetric),
        ("ASEP agreement", asep_agreement),
        ("queue tableaux", tableaux_equivalence),
        ("matrix ansatz", matrix_ansatz),
        ("two-row recursion", recursion),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name} ({detail}) [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
