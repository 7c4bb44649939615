//! Worked examples through the public API. Each value below was recomputed by an oracle in
//! `common` (or by hand from the definition) before being fixed here.

mod common;

use common::{brute_force_holes, ideal, monoid, power_oracle, v};
use malachite::{Integer, Rational};
use rees_lab::cone::{
    asymptotic_value, cone_contains, dualize, enumerate_faces, lattice_points_in_box, relint_contains,
    AsymptoticValue,
};
use rees_lab::ideal::{integral_closure_contains, is_normal_ideal, ord, power_membership};
use rees_lab::lattice::{group_contains, hnf, solve_nonneg_integer};
use rees_lab::monoid::{
    is_normal, is_seminormal, is_weakly_normal, monoid_contains, seminormal_fixpoint_oracle,
    verify_certificate, Certificate, CertificateContext, Verdict,
};
use rees_lab::rees::{
    gr_additive, gr_as_monoid, gr_reduced, gr_seminormal, graph_generators, rees_monoid, GradedModel,
    ReesVariant,
};
use rees_lab::{Error, IntMatrix, IntVector};

fn rows(m: &IntMatrix) -> Vec<IntVector> {
    m.rows().to_vec()
}

fn vs(xs: &[&[i64]]) -> Vec<IntVector> {
    xs.iter().map(|x| v(x)).collect()
}

fn ints(xs: &[i64]) -> Vec<Integer> {
    xs.iter().map(|&x| Integer::from(x)).collect()
}

#[test]
fn hermite_bases() {
    let g = hnf(&IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap()).unwrap();
    assert_eq!(rows(g.basis()), vs(&[&[1, 0], &[0, 1]]));
    let g = hnf(&IntMatrix::from_i64_rows(&[&[2, 0], &[3, 0]]).unwrap()).unwrap();
    assert_eq!(rows(g.basis()), vs(&[&[1, 0]]));
    assert!(group_contains(&g, &v(&[1, 0])).unwrap());
    assert!(!group_contains(&g, &v(&[0, 1])).unwrap());
    assert!(group_contains(&g, &v(&[0, 0])).unwrap());
    assert!(matches!(group_contains(&g, &v(&[1])), Err(Error::InvalidInput(_))));
    let g = hnf(&IntMatrix::from_i64_rows(&[&[2, 4]]).unwrap()).unwrap();
    assert_eq!(rows(g.basis()), vs(&[&[2, 4]]));
}

#[test]
fn nonnegative_solutions() {
    let gens = IntMatrix::from_i64_rows(&[&[2], &[3]]).unwrap();
    let w = v(&[1]);
    assert_eq!(solve_nonneg_integer(&gens, &v(&[7]), &w).unwrap(), Some(ints(&[2, 1])));
    assert_eq!(solve_nonneg_integer(&gens, &v(&[1]), &w).unwrap(), None);
    assert_eq!(solve_nonneg_integer(&gens, &v(&[0]), &w).unwrap(), Some(ints(&[0, 0])));
}

#[test]
fn dual_cones() {
    let quadrant = dualize(&IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap()).unwrap();
    assert_eq!(rows(quadrant.facet_normals()), vs(&[&[0, 1], &[1, 0]]));
    let c = dualize(&IntMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap()).unwrap();
    assert_eq!(rows(c.facet_normals()), vs(&[&[-1, 2], &[2, -1]]));
    let line = dualize(&IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 0]]).unwrap()).unwrap();
    assert_eq!(rows(line.facet_normals()), vs(&[&[0, -1], &[0, 1]]));
    assert_eq!(line.lineality_dim(), 1);

    assert!(cone_contains(&quadrant, &v(&[3, 5])));
    assert!(cone_contains(&c, &v(&[1, 1])));
    assert!(!cone_contains(&c, &v(&[1, 0])));
}

#[test]
fn face_lattices() {
    let quadrant = dualize(&IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap()).unwrap();
    let faces = enumerate_faces(&quadrant).unwrap();
    assert_eq!(faces.len(), 4);
    let ray = dualize(&IntMatrix::from_i64_rows(&[&[1]]).unwrap()).unwrap();
    assert_eq!(enumerate_faces(&ray).unwrap().len(), 2);
    let wedge = dualize(&IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]).unwrap()).unwrap();
    assert_eq!(enumerate_faces(&wedge).unwrap().len(), 4);
    let line = dualize(&IntMatrix::from_i64_rows(&[&[1, 0], &[-1, 0]]).unwrap()).unwrap();
    assert!(matches!(enumerate_faces(&line), Err(Error::UnsupportedInput(_))));

    // the x-axis ray is the face on which the normal (0,1) is tight
    let x_axis = faces
        .iter()
        .find(|f| f.dim == 1 && relint_contains(&quadrant, f, &v(&[1, 0])))
        .unwrap();
    assert!(relint_contains(&quadrant, x_axis, &v(&[3, 0])));
    assert!(!relint_contains(&quadrant, x_axis, &v(&[0, 0])));
    let full = faces.iter().find(|f| f.dim == 2).unwrap();
    assert!(relint_contains(&quadrant, full, &v(&[1, 1])));
}

#[test]
fn box_enumeration() {
    let b = |lo: i64, hi: i64| (Integer::from(lo), Integer::from(hi));
    assert_eq!(
        lattice_points_in_box(&[b(0, 1), b(0, 1)], |_| true),
        vs(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
    );
    let even = lattice_points_in_box(&[b(0, 2)], |p| p.coords()[0].clone() % Integer::from(2) == 0);
    assert_eq!(even, vs(&[&[0], &[2]]));
    let c = dualize(&IntMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]).unwrap()).unwrap();
    let mut inside = lattice_points_in_box(&[b(0, 3), b(0, 3)], |p| cone_contains(&c, p));
    inside.sort_by_key(|p| (p.coords().iter().sum::<Integer>(), p.clone()));
    let mut expected = vs(&[&[0, 0], &[1, 1], &[2, 1], &[1, 2], &[2, 2], &[3, 2], &[2, 3], &[3, 3]]);
    expected.sort_by_key(|p| (p.coords().iter().sum::<Integer>(), p.clone()));
    assert_eq!(inside, expected);
}

#[test]
fn asymptotic_orders() {
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    let c = linear.rees_plus().cone();
    assert_eq!(asymptotic_value(c, &v(&[3, 2])).unwrap(), AsymptoticValue::Finite(Rational::from(5)));
    assert_eq!(asymptotic_value(c, &v(&[0, 0])).unwrap(), AsymptoticValue::Finite(Rational::from(0)));
    assert!(matches!(asymptotic_value(c, &v(&[-1, 0])), Err(Error::InvalidInput(_))));
    let squares = ideal(&n2, &[&[2, 0], &[0, 2]]);
    assert_eq!(
        asymptotic_value(squares.rees_plus().cone(), &v(&[1, 1])).unwrap(),
        AsymptoticValue::Finite(Rational::from(1))
    );
}

#[test]
fn monoid_membership_and_normality() {
    let cusp = monoid(&[&[2], &[3]]);
    assert!(monoid_contains(&cusp, &v(&[7])));
    assert!(!monoid_contains(&cusp, &v(&[1])));
    assert!(monoid_contains(&cusp, &v(&[0])));

    assert_eq!(is_normal(&monoid(&[&[1, 0], &[0, 1]])), Verdict::Holds);
    assert_eq!(is_normal(&cusp), Verdict::Fails(Certificate::NotNormal { v: v(&[1]) }));
    let plane = monoid(&[&[1, 0], &[1, 1], &[0, 2]]);
    assert_eq!(is_normal(&plane), Verdict::Fails(Certificate::NotNormal { v: v(&[0, 1]) }));
    assert_eq!(brute_force_holes(&plane, 5), vs(&[&[0, 1], &[0, 3], &[0, 5]]));
}

#[test]
fn seminormality_and_weak_normality() {
    let cusp = monoid(&[&[2], &[3]]);
    let plane = monoid(&[&[1, 0], &[1, 1], &[0, 2]]);
    assert_eq!(is_seminormal(&cusp, 10), Verdict::Fails(Certificate::NotSeminormal { v: v(&[1]) }));
    assert_eq!(
        is_seminormal(&monoid(&[&[3], &[4], &[5]]), 10),
        Verdict::Fails(Certificate::NotSeminormal { v: v(&[2]) })
    );
    assert_eq!(is_seminormal(&plane, 12), Verdict::Unknown(12));

    assert_eq!(
        is_weakly_normal(&cusp, 2, 10).unwrap(),
        Verdict::Fails(Certificate::NotWeaklyNormal { v: v(&[1]), p: 2 })
    );
    for p in [0, 2, 3, 5] {
        assert_eq!(is_weakly_normal(&monoid(&[&[1, 0], &[0, 1]]), p, 10).unwrap(), Verdict::Holds);
    }
    assert_eq!(
        is_weakly_normal(&plane, 2, 12).unwrap(),
        Verdict::Fails(Certificate::NotWeaklyNormal { v: v(&[0, 1]), p: 2 })
    );
    assert!(matches!(is_weakly_normal(&cusp, 4, 10), Err(Error::InvalidInput(_))));
}

#[test]
fn fixpoint_oracle() {
    assert_eq!(seminormal_fixpoint_oracle(&monoid(&[&[2], &[3]]), 10).added(), vs(&[&[1]]));
    assert!(seminormal_fixpoint_oracle(&monoid(&[&[1, 0], &[0, 1]]), 10).is_empty());
    // 2 enters first (4, 6 in S), then 1 (2 and 3 now present)
    let gap = seminormal_fixpoint_oracle(&monoid(&[&[3], &[4], &[5]]), 10);
    assert_eq!(gap.rounds, vec![vs(&[&[2]]), vs(&[&[1]])]);
    assert!(seminormal_fixpoint_oracle(&monoid(&[&[1, 0], &[1, 1], &[0, 2]]), 12).is_empty());
}

#[test]
fn certificates_replay() {
    let cusp = monoid(&[&[2], &[3]]);
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let plane = monoid(&[&[1, 0], &[1, 1], &[0, 2]]);
    let ok = |s, c| verify_certificate(CertificateContext::Monoid(s), &c).unwrap();
    assert!(ok(&cusp, Certificate::NotSeminormal { v: v(&[1]) }));
    assert!(!ok(&n2, Certificate::NotNormal { v: v(&[1, 1]) }));
    assert!(ok(&plane, Certificate::NotNormal { v: v(&[0, 1]) }));
    assert!(verify_certificate(CertificateContext::Monoid(&n2), &Certificate::NotNormal { v: v(&[1]) }).is_err());
}

#[test]
fn powers_and_orders() {
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    let squares = ideal(&n2, &[&[2, 0], &[0, 2]]);
    assert!(power_membership(&linear, &v(&[3, 2]), 5));
    assert!(!power_membership(&linear, &v(&[3, 2]), 6));
    assert!(!power_membership(&squares, &v(&[1, 1]), 1));
    assert!(power_membership(&squares, &v(&[1, 1]), 0));
    assert!(!power_membership(&squares, &v(&[-1, 1]), 0));

    assert_eq!(ord(&linear, &v(&[3, 2])).unwrap(), 5);
    assert_eq!(ord(&linear, &v(&[0, 0])).unwrap(), 0);
    assert_eq!(ord(&squares, &v(&[1, 1])).unwrap(), 0);
    assert!(matches!(ord(&linear, &v(&[-1, 0])), Err(Error::InvalidInput(_))));
}

#[test]
fn integral_closures() {
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    let squares = ideal(&n2, &[&[2, 0], &[0, 2]]);
    let all_quadratics = ideal(&n2, &[&[2, 0], &[1, 1], &[0, 2]]);

    assert!(integral_closure_contains(&squares, &v(&[1, 1]), 1));
    assert_eq!(power_oracle(&squares, &v(&[1, 1]), 1, 12), Some(2));
    assert!(!integral_closure_contains(&squares, &v(&[1, 0]), 1));
    assert_eq!(power_oracle(&squares, &v(&[1, 0]), 1, 12), None);
    assert!(integral_closure_contains(&linear, &v(&[2, 0]), 1));

    assert_eq!(is_normal_ideal(&linear, 6), Verdict::Holds);
    assert_eq!(
        is_normal_ideal(&squares, 6),
        Verdict::Fails(Certificate::NotIntegrallyClosedPower { a: v(&[1, 1]), n: 1, k: 2 })
    );
    assert_eq!(is_normal_ideal(&all_quadratics, 6), Verdict::Holds);
}

#[test]
fn rees_monoids() {
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    let mut plus = rows(rees_monoid(&linear, ReesVariant::Plus).unwrap().monoid.generators());
    plus.sort();
    let mut expected = vs(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
    expected.sort();
    assert_eq!(plus, expected);
    let mut ext = rows(rees_monoid(&linear, ReesVariant::Extended).unwrap().monoid.generators());
    ext.sort();
    expected.push(v(&[0, 0, -1]));
    expected.sort();
    assert_eq!(ext, expected);
    assert!(monoid_contains(linear.rees_plus(), &v(&[1, 1, 2])));
}

#[test]
fn graded_reducedness() {
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    assert_eq!(gr_reduced(&GradedModel::new(&linear), 8, 8), Verdict::Holds);

    // the listed witnesses verify; the checker reports the minimal one
    for (gens, listed) in [
        (&[&[2, 0][..], &[1, 1], &[0, 2]][..], v(&[1, 0])),
        (&[&[2, 0][..], &[0, 2]][..], v(&[1, 1])),
    ] {
        let i = ideal(&n2, gens);
        let listed = Certificate::GrNilpotent { a: listed, k: 2 };
        assert!(verify_certificate(CertificateContext::Graded(&i), &listed).unwrap());
        let verdict = gr_reduced(&GradedModel::new(&i), 8, 8);
        let found = verdict.certificate().expect("non-reduced");
        assert!(matches!(found, Certificate::GrNilpotent { .. }));
        assert!(verify_certificate(CertificateContext::Graded(&i), found).unwrap());
    }
}

#[test]
fn graded_additivity_and_graph_monoids() {
    let n1 = monoid(&[&[1]]);
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    assert!(!gr_additive(&GradedModel::new(&linear), 8).is_fails());
    let squares = ideal(&n2, &[&[2, 0], &[0, 2]]);
    let listed = Certificate::GrNonAdditive { a: v(&[1, 1]), b: v(&[1, 1]) };
    assert!(verify_certificate(CertificateContext::Graded(&squares), &listed).unwrap());
    assert!(gr_additive(&GradedModel::new(&squares), 8).is_fails());
    let x = ideal(&n1, &[&[1]]);
    assert_eq!(gr_additive(&GradedModel::new(&x), 8), Verdict::Holds);

    let mut sg = rows(gr_as_monoid(&GradedModel::new(&linear), 8).unwrap().generators());
    sg.sort();
    assert_eq!(sg, vs(&[&[0, 1, 1], &[1, 0, 1]]));
    assert_eq!(rows(gr_as_monoid(&GradedModel::new(&x), 8).unwrap().generators()), vs(&[&[1, 1]]));

    // t^2 on <2,3>: 3 is not in 2 + S, so ord(3) = 0 and G is not additive (ord(6) = 3)
    let cusp = monoid(&[&[2], &[3]]);
    let t2 = ideal(&cusp, &[&[2]]);
    let g = GradedModel::new(&t2);
    assert_eq!(rows(&graph_generators(&g)), vs(&[&[2, 1], &[3, 0]]));
    assert!(matches!(gr_as_monoid(&g, 8), Err(Error::InvalidState(_))));
}

#[test]
fn graded_seminormality() {
    let n2 = monoid(&[&[1, 0], &[0, 1]]);
    let linear = ideal(&n2, &[&[1, 0], &[0, 1]]);
    assert!(!gr_seminormal(&GradedModel::new(&linear), 0, 8, 8).unwrap().is_fails());
    let squares = ideal(&n2, &[&[2, 0], &[0, 2]]);
    let v = gr_seminormal(&GradedModel::new(&squares), 0, 8, 8).unwrap();
    assert!(matches!(v.certificate(), Some(Certificate::GrNilpotent { .. })));

    // (t^2, t^3) on <2,3> is the maximal ideal: G is the graph monoid of ord = weight class
    let cusp = monoid(&[&[2], &[3]]);
    let m = ideal(&cusp, &[&[2], &[3]]);
    let g = GradedModel::new(&m);
    let direct = gr_seminormal(&g, 0, 12, 8).unwrap();
    if let Ok(sg) = gr_as_monoid(&g, 12) {
        let via_graph = is_seminormal(&sg, 12);
        assert_eq!(direct.is_fails(), via_graph.is_fails());
    }
    if let Some(c) = direct.certificate() {
        assert!(verify_certificate(CertificateContext::Graded(&m), c).unwrap());
    }
}
