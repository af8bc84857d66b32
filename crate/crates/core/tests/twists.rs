use catent::complex::{is_homotopy_equivalent, k0_class, EquivalenceSearch};
use catent::entropy::{certify, entropy_estimate, TGrid};
use catent::exec::Execution;
use catent::presentation::{builtin_model, infer_p_object, BUILTIN_MODELS};
use catent::sample::random_complex;
use catent::twists::{full_generator, is_right_orthogonal, K0Matrix, PTwistConstruction, TwistFunctor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn p_twist_fixes_right_orthogonal_objects() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut tested = 0;
    for name in ["orthogonal-p1", "orthogonal-p2", "nonortho-p1"] {
        let p = builtin_model(name).unwrap();
        let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
        let e = p.object_by_name("E").unwrap();
        for _ in 0..800 {
            let x = random_complex(&p, 4, &mut rng).unwrap();
            if !is_right_orthogonal(e, &x).unwrap() {
                continue;
            }
            tested += 1;
            let y = pe.apply(&x).unwrap();
            let v = is_homotopy_equivalent(&x, &y, &EquivalenceSearch::default()).unwrap();
            assert!(!v.is_distinct(), "{name}: {x:?} ↦ {y:?}: {v:?}");
        }
    }
    assert!(tested >= 100, "only {tested} orthogonal samples");
}

#[test]
fn triangle_class_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for name in BUILTIN_MODELS {
        let p = builtin_model(name).unwrap();
        let cert = infer_p_object(&p, "E").unwrap().unwrap();
        for _ in 0..30 {
            let x = random_complex(&p, 4, &mut rng).unwrap();
            let c = PTwistConstruction::new(&cert, &x).unwrap();
            assert_eq!(k0_class(&c.unreduced), k0_class(&x).minus(&k0_class(&c.q)));
        }
        let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
        assert_eq!(pe.k0_matrix(&p).unwrap(), K0Matrix::identity(p.object_count()), "{name}");
    }
}

#[test]
fn iterates_stay_one_slot() {
    for d in 1..=3u32 {
        let p = builtin_model(&format!("local-p{d}")).unwrap();
        let pe = TwistFunctor::p_twist(p.clone(), "E", Some(d)).unwrap();
        let e = full_generator(&p).unwrap();
        for (k, x) in pe.iterate(&e, 20).unwrap().iter().enumerate() {
            assert_eq!(x.display_slots(), format!("(E,{})", -2 * d as i64 * (k as i64 + 1)));
        }
    }
}

#[test]
fn certification_on_every_builtin() {
    let grid: TGrid = "-1:0:0.25".parse().unwrap();
    for name in BUILTIN_MODELS {
        let p = builtin_model(name).unwrap();
        let pe = TwistFunctor::p_twist(p.clone(), "E", None).unwrap();
        let r = entropy_estimate(&pe, &full_generator(&p).unwrap(), 6, &grid, Execution::default()).unwrap();
        for row in certify(&r).unwrap() {
            assert!(row.holds, "{name}: {row:?}");
        }
    }
}

#[test]
fn shift_functor_slopes_are_exact() {
    for name in BUILTIN_MODELS {
        let p = builtin_model(name).unwrap();
        let g = full_generator(&p).unwrap();
        for m in [-2, 1, 3] {
            let r = entropy_estimate(&TwistFunctor::Shift(m), &g, 3, &TGrid::default(), Execution::default()).unwrap();
            for (k, &t) in r.grid.iter().enumerate() {
                assert!((r.slope(k).unwrap() - m as f64 * t).abs() < 1e-12);
                assert!((r.slope_ratio(3, k).unwrap() - (m as f64 * t + r.a(0, k).unwrap() / 3.0)).abs() < 1e-12);
            }
        }
    }
}
