use super::*;
use crate::complex::{direct_sum, shift, Presentation};
use crate::presentation::builtin_model;
use crate::twists::full_generator;

fn gen(p: &Presentation, name: &str, n: i64) -> TwistedComplex {
    TwistedComplex::generator_by_name(p.clone(), name, n).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn grid_parsing() {
    assert_eq!(TGrid::default().values().len(), 9);
    let g: TGrid = "-1:1:0.5".parse().unwrap();
    assert_eq!(g.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    let g: TGrid = "-0.3:0.3:0.1".parse().unwrap();
    assert_eq!(g.values().len(), 7);
    assert_eq!(g.values()[3], 0.0);
    assert!("1:0:0.5".parse::<TGrid>().unwrap().values().is_empty());
    for bad in ["1:2", "a:1:1", "0:1:0", "0:1:-1"] {
        assert!(bad.parse::<TGrid>().is_err(), "{bad}");
    }
}

#[test]
fn slot_weight_examples() {
    let p = builtin_model("orthogonal-p1").unwrap();
    let e = gen(&p, "E", 0);
    for t in [-1.0, 0.0, 0.7] {
        assert_eq!(slot_weight(&e, t), 1.0);
    }
    let b = gen(&p, "B", 3);
    let s = direct_sum(&e, &b).unwrap();
    assert!(close(slot_weight(&s, 0.5), slot_weight(&e, 0.5) + slot_weight(&b, 0.5), 1e-15));
    assert_eq!(TowerCertificate::of(&shift(&s, -2)), TowerCertificate::of(&s).shifted(-2));
    assert_eq!(TowerCertificate::of(&s).steps(), 2);
    assert_eq!(TowerCertificate::of(&s).weight(0.0), 2.0);
}

#[test]
fn log_weighted_dims_matches_direct_sum() {
    let d = GradedDims::from_pairs(&[(-2, 3), (0, 1), (5, 2)]);
    for t in [-1.0, 0.0, 0.25, 2.0] {
        let direct: f64 = d.iter().map(|(m, k)| k as f64 * (-(m as f64) * t).exp()).sum();
        assert!(close(log_weighted_dims(&d, t).unwrap(), direct.ln(), 1e-12));
    }
    assert_eq!(log_weighted_dims(&GradedDims::new(), 0.0), None);
}

#[test]
fn tower_bound_examples() {
    let da = 2.5;
    let b1 = tower_bound(da, 1, 1, 0.3).unwrap();
    assert!(close(b1.sum, 1.0 + da * 0.3f64.exp(), 1e-12));
    assert!(close(tower_bound(da, 2, 7, 0.0).unwrap().sum, 1.0 + 7.0 * da, 1e-12));
    assert!(tower_bound(da, 1, 0, 0.0).is_err());
    let b = tower_bound(da, 1, 5, 0.5).unwrap();
    assert!(b.sum <= b.majorant.unwrap());
    assert!(tower_bound(da, 1, 5, -0.5).unwrap().majorant.is_none());
}

#[test]
fn orthogonal_slopes() {
    let p = builtin_model("orthogonal-p1").unwrap();
    let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
    let g = full_generator(&p).unwrap();
    let grid: TGrid = "-1:1:0.5".parse().unwrap();
    let r = entropy_estimate(&pe, &g, 6, &grid, Execution::Sequential).unwrap();
    assert!(r.degenerate().is_empty());
    assert!(close(r.slope(r.grid_index(-1.0).unwrap()).unwrap(), 2.0, 0.01));
    assert!(close(r.slope(r.grid_index(0.0).unwrap()).unwrap(), 0.0, 0.01));
    assert!(close(r.slope(r.grid_index(0.5).unwrap()).unwrap(), 0.0, 0.01));
    // closed form: a_n = log(1 + e^{−2nt}(1 + e^{−2t}))
    for n in 0..=6 {
        for (k, &t) in r.grid.iter().enumerate() {
            let want = (1.0 + (-2.0 * n as f64 * t).exp() * (1.0 + (-2.0 * t).exp())).ln();
            assert!(close(r.a(n, k).unwrap(), want, 1e-12), "n={n} t={t}");
        }
    }
    assert!(r.iterates.iter().all(|i| i.slot_count() == 2));
}

#[test]
fn local_model_slope_at_positive_t() {
    let p = builtin_model("local-p1").unwrap();
    let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
    let r = entropy_estimate(&pe, &gen(&p, "E", 0), 6, &TGrid::single(0.5), Execution::Sequential).unwrap();
    assert!(close(r.slope(0).unwrap(), -1.0, 1e-9));
}

#[test]
fn shift_estimator_is_linear() {
    let p = builtin_model("orthogonal-p2").unwrap();
    let g = full_generator(&p).unwrap();
    let r = entropy_estimate(&TwistFunctor::Shift(3), &g, 4, &TGrid::default(), Execution::Sequential).unwrap();
    for (k, &t) in r.grid.iter().enumerate() {
        for n in 0..=4 {
            assert!(close(r.a(n, k).unwrap(), r.a(0, k).unwrap() + 3.0 * n as f64 * t, 1e-12));
        }
        assert!(close(r.slope(k).unwrap(), 3.0 * t, 1e-12));
    }
    assert!(r.tower.is_none());
}

#[test]
fn estimate_requires_split_generator() {
    let p = builtin_model("orthogonal-p1").unwrap();
    let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
    let e = gen(&p, "E", 0);
    assert!(matches!(
        entropy_estimate(&pe, &e, 3, &TGrid::default(), Execution::Sequential),
        Err(Error::Contract(_))
    ));
    let g = full_generator(&p).unwrap();
    assert!(entropy_estimate(&pe, &g, 1, &TGrid::default(), Execution::Sequential).is_err());
}

#[test]
fn parallel_matches_sequential_bitwise() {
    let p = builtin_model("nonortho-p1").unwrap();
    let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
    let g = full_generator(&p).unwrap();
    let a = entropy_estimate(&pe, &g, 4, &TGrid::default(), Execution::Sequential).unwrap();
    let b = entropy_estimate(&pe, &g, 4, &TGrid::default(), Execution::Parallel).unwrap();
    let bits = |r: &EntropyReport| -> Vec<Option<u64>> { r.a.iter().flatten().map(|x| x.map(f64::to_bits)).collect() };
    assert_eq!(bits(&a), bits(&b));
    assert_eq!(a.tower, b.tower);
}

#[test]
fn certification_on_p1_models() {
    for name in ["local-p1", "orthogonal-p1", "nonortho-p1"] {
        let p = builtin_model(name).unwrap();
        let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
        let g = full_generator(&p).unwrap();
        let r = entropy_estimate(&pe, &g, 4, &TGrid::default(), Execution::Sequential).unwrap();
        let rows = certify(&r).unwrap();
        assert_eq!(rows.len(), 4 * 9);
        assert!(rows.iter().all(|row| row.holds), "{name}: {rows:?}");
    }
}

#[test]
fn gy_examples() {
    let p = builtin_model("orthogonal-p1").unwrap();
    let g = full_generator(&p).unwrap();
    let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
    let r = gy_check(&pe, &g, 8, 1e-9, Execution::Sequential).unwrap();
    assert_eq!(r.log_rho, 0.0);
    assert!(r.h0_estimate.abs() <= 0.01 && r.gap <= 0.01);

    let r = gy_check(&TwistFunctor::Shift(2), &g, 4, 1e-9, Execution::Sequential).unwrap();
    assert_eq!(r.log_rho, 0.0);
    assert!(r.h0_estimate.abs() < 1e-12);

    let pl = builtin_model("local-p1").unwrap();
    let te = TwistFunctor::spherical(pl.clone(), "E").unwrap();
    let r = gy_check(&te, &gen(&pl, "E", 0), 6, 1e-9, Execution::Sequential).unwrap();
    assert_eq!(r.log_rho, 0.0);
    assert!(r.h0_estimate.abs() <= 0.01);
}
