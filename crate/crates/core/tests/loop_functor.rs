use std::sync::Arc;

use colour_loop::abelian::{AbelianGroup, Subgroup};
use colour_loop::colouralg::{BasisElement, ColourAlgebra};
use colour_loop::gmodule::{
    coarsen, decompose, is_graded_irreducible, is_isomorphic, parity_shift, restrict, twist, GradedModule,
};
use colour_loop::grading::CommutationFactor;
use colour_loop::linalg::Matrix;
use colour_loop::loopfunctor::*;
use colour_loop::workbench::*;
use colour_loop::Error;

fn graded(lambda: u32, v: Sl2Variant) -> GradedModule {
    make_sl2_graded(lambda, &v).unwrap()
}

fn trivial_module() -> GradedModule {
    let g = AbelianGroup::new(vec![2, 2]).unwrap();
    let alg = ColourAlgebra::new(
        g.clone(),
        CommutationFactor::trivial(&g),
        vec![BasisElement {
            name: "x".into(),
            degree: g.identity(),
        }],
        &[],
    )
    .unwrap();
    let f = alg.field();
    GradedModule::new(Arc::new(alg), &Subgroup::whole(&g), vec![g.identity()], vec![Matrix::zeros(f, 1, 1)]).unwrap()
}

#[test]
fn loop_of_odd_e_has_one_vector_per_sector() {
    let lm = loop_module(&graded(1, Sl2Variant::E), &Subgroup::trivial(&klein())).unwrap();
    assert_eq!(lm.module.dim(), 4);
    assert_eq!(lm.module.sector_dims(), vec![1, 1, 1, 1]);
    assert_eq!(lm.refined_from, h2());
}

#[test]
fn loop_dimension_is_index_times_dimension() {
    let g = klein();
    for lambda in 0..=4 {
        for v in Sl2Variant::catalog(lambda) {
            let m = graded(lambda, v.clone());
            let h = m.subgroup().clone();
            for k in [Subgroup::trivial(&g), h2()] {
                if k.is_subgroup_of(&h) && k != h {
                    let lm = loop_module(&m, &k).unwrap();
                    assert_eq!(lm.module.dim(), m.dim() * h.order() / k.order(), "{v} at {lambda}");
                    lm.module.validate().unwrap();
                }
            }
        }
    }
}

#[test]
fn loop_is_invariant_under_shifts_by_the_coarse_subgroup() {
    let g = klein();
    for (lambda, v) in [(1, Sl2Variant::E), (2, Sl2Variant::E), (2, Sl2Variant::V), (3, Sl2Variant::O)] {
        let m = graded(lambda, v);
        let lm = loop_module(&m, &Subgroup::trivial(&g)).unwrap().module;
        for h in m.subgroup().elements() {
            assert!(is_isomorphic(&parity_shift(&lm, h).unwrap(), &lm).unwrap());
        }
    }
}

#[test]
fn loop_requires_a_proper_subgroup() {
    let m = graded(2, Sl2Variant::E);
    assert!(matches!(loop_module(&m, &h2()), Err(Error::InvalidSubgroupStep(_))));
    let v = graded(2, Sl2Variant::V);
    let r = bijection_f(&v, &Subgroup::trivial(&klein()));
    assert!(matches!(r, Err(Error::InvalidSubgroupStep(_))));
}

#[test]
fn even_e_is_gradable_to_e_plus() {
    let out = bijection_f(&graded(2, Sl2Variant::E), &Subgroup::trivial(&klein())).unwrap();
    let BijectionOutcome::Gradable { module, basis } = &out else {
        panic!("expected a grading");
    };
    let classes = distinct_classes(vec![graded(2, Sl2Variant::EPlus), graded(2, Sl2Variant::EMinus)]).unwrap();
    assert_eq!(classes.len(), 2);
    let g = klein();
    assert!(g
        .elements()
        .iter()
        .any(|h| is_isomorphic(&parity_shift(&graded(2, Sl2Variant::EPlus), h).unwrap(), module).unwrap()));
    let v = graded(2, Sl2Variant::E);
    let binv = basis.inverse().unwrap();
    for (a, b) in v.action().iter().zip(module.action()) {
        assert_eq!(&binv.mul(a).mul(basis), b);
    }
    assert_eq!(out.iso_classes().unwrap().len(), 4);
}

#[test]
fn odd_e_is_not_gradable() {
    let out = bijection_f(&graded(1, Sl2Variant::E), &Subgroup::trivial(&klein())).unwrap();
    assert!(!out.is_gradable());
    assert_eq!(out.module().dim(), 4);
    assert!(is_graded_irreducible(out.module()).unwrap().is_irreducible());
    // LoopE and LoopO are isomorphic, so the shifts give a single class.
    assert_eq!(out.iso_classes().unwrap().len(), 1);
    assert!(is_isomorphic(out.module(), &graded(1, Sl2Variant::LoopE)).unwrap());
}

#[test]
fn first_step_splits_into_even_and_odd() {
    for lambda in 0..=3 {
        let out = bijection_f(&graded(lambda, Sl2Variant::V), &h2()).unwrap();
        assert!(out.is_gradable());
        let m = out.module();
        assert!(
            is_isomorphic(m, &graded(lambda, Sl2Variant::E)).unwrap()
                || is_isomorphic(m, &graded(lambda, Sl2Variant::O)).unwrap()
        );
    }
}

#[test]
fn iterate_lift_on_small_weights() {
    let r2 = iterate_lift_along(&graded(2, Sl2Variant::V), &sl2_chain()).unwrap();
    assert_eq!(r2.steps.iter().map(|s| s.outcome).collect::<Vec<_>>(), vec![StepKind::Gradable; 2]);
    assert_eq!(r2.final_module.dim(), 3);
    assert_eq!(r2.classes.len(), 4);

    let r1 = iterate_lift_along(&graded(1, Sl2Variant::V), &sl2_chain()).unwrap();
    assert_eq!(r1.steps.iter().map(|s| s.outcome).collect::<Vec<_>>(), vec![StepKind::Gradable, StepKind::Loop]);
    assert_eq!(r1.final_module.dim(), 4);

    let json = serde_json::to_value(&r1).unwrap();
    assert_eq!(json["steps"][1]["outcome"], "loop");
    assert_eq!(json["steps"][1]["dim"], 4);
    assert_eq!(json["final"][0]["dim"], 4);
    assert_eq!(json["chain"].as_array().unwrap().len(), 3);
}

#[test]
fn trivial_module_lifts_through_every_step() {
    let t = trivial_module();
    let r = iterate_lift(&t).unwrap();
    assert!(r.steps.iter().all(|s| s.outcome == StepKind::Gradable));
    assert_eq!(r.final_module.dim(), 1);
    assert_eq!(r.classes.len(), 4);
    assert_eq!(twist_orbit(&t).unwrap().len(), 1);
    let at_start = BijectionOutcome::Gradable {
        module: t.clone(),
        basis: Matrix::identity(t.field(), 1),
    };
    assert_eq!(at_start.iso_classes().unwrap().len(), 1);
}

#[test]
fn twist_orbits() {
    assert_eq!(twist_orbit(&graded(2, Sl2Variant::E)).unwrap().len(), 1);
    let u = graded(3, Sl2Variant::U { zeta: 1, xi: 1 });
    let orbit = twist_orbit(&u).unwrap();
    assert_eq!(orbit.len(), 4);
    let u_minus = graded(3, Sl2Variant::U { zeta: 1, xi: -1 });
    assert!(orbit.iter().any(|w| is_isomorphic(w, &u_minus).unwrap()));
}

#[test]
fn coarsened_loop_is_a_sum_of_twists() {
    let g = klein();
    let cases = [
        (graded(2, Sl2Variant::E), Subgroup::trivial(&g)),
        (graded(3, Sl2Variant::V), h2()),
        (graded(2, Sl2Variant::V), Subgroup::trivial(&g)),
    ];
    for (v, k) in cases {
        let lm = loop_module(&v, &k).unwrap().module;
        let back = coarsen(&lm, v.subgroup()).unwrap();
        let parts = decompose(&back).unwrap();
        assert_eq!(parts.len(), v.subgroup().order() / k.order());
        let twists: Vec<GradedModule> = colour_loop::abelian::twist_reps(&g, v.subgroup())
            .iter()
            .map(|f| twist(&v, f).unwrap())
            .collect();
        for p in &parts {
            let w = restrict(&back, p).unwrap();
            assert!(twists.iter().any(|t| is_isomorphic(t, &w).unwrap()));
        }
    }
}
