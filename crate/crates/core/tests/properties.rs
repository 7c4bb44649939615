mod common;

use common::{brute_force_holes, power_oracle, random_monoid, rng, v};
use malachite::{Integer, Rational};
use proptest::prelude::*;
use rees_lab::cone::{asymptotic_value, conic_combination, cone_contains, dualize};
use rees_lab::harness::{generate_instance, Instance, Profile};
use rees_lab::ideal::{asymptotic_order, cone_multiplier, integral_closure_contains, ord, power_membership};
use rees_lab::io::{render, InstanceDocument, VerdictDocument};
use rees_lab::lattice::{group_contains, hnf};
use rees_lab::monoid::{is_normal, is_seminormal, Verdict};
use rees_lab::{IntMatrix, IntVector};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn instance(seed: u64) -> Instance {
    generate_instance(seed, Profile::Tiny).expect("tiny instances always generate")
}

/// Elements of `S` with weight at most `w`.
fn probes(inst: &Instance, w: i64) -> Vec<IntVector> {
    inst.monoid.elements_up_to(&Integer::from(w))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hnf_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5)) {
        let m = IntMatrix::new(3, rows.iter().map(|r| v(r)).collect()).unwrap();
        let g = hnf(&m).unwrap();
        let again = hnf(g.basis()).unwrap();
        prop_assert_eq!(again.basis().rows(), g.basis().rows());
        for r in m.rows() {
            prop_assert!(group_contains(&g, r).unwrap());
        }
    }

    #[test]
    fn group_membership_in_rank_one(gens in prop::collection::vec(-9i64..=9, 1..4), x in -30i64..=30) {
        prop_assume!(gens.iter().any(|&g| g != 0));
        let m = IntMatrix::new(1, gens.iter().map(|&g| v(&[g])).collect()).unwrap();
        let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
        prop_assert_eq!(group_contains(&hnf(&m).unwrap(), &v(&[x])).unwrap(), x % d == 0);
    }

    #[test]
    fn group_membership_in_full_rank_plane(
        a in prop::collection::vec(-5i64..=5, 2),
        b in prop::collection::vec(-5i64..=5, 2),
        x in prop::collection::vec(-12i64..=12, 2),
    ) {
        let det = a[0] * b[1] - a[1] * b[0];
        prop_assume!(det != 0);
        // Cramer: x = s a + t b with s, t integral
        let s = x[0] * b[1] - x[1] * b[0];
        let t = a[0] * x[1] - a[1] * x[0];
        let expected = s % det == 0 && t % det == 0;
        let g = hnf(&IntMatrix::new(2, vec![v(&a), v(&b)]).unwrap()).unwrap();
        prop_assert_eq!(group_contains(&g, &v(&x)).unwrap(), expected);
    }

    #[test]
    fn dualize_round_trips(seed in 0u64..100_000) {
        let s = random_monoid(&mut rng(seed));
        let gens = s.generators().rows().to_vec();
        let c = s.cone();
        let back = dualize(c.facet_normals()).unwrap();
        // the normals of the dual cone generate the original cone, and vice versa
        for r in back.facet_normals().rows() {
            prop_assert!(conic_combination(&gens, r).is_some());
        }
        for g in &gens {
            prop_assert!(cone_contains(c, g));
            prop_assert!(conic_combination(back.facet_normals().rows(), g).is_some());
        }
        let d = s.ambient_dim();
        let mut p = vec![-3i64; d];
        loop {
            let q = v(&p);
            prop_assert_eq!(cone_contains(c, &q), conic_combination(&gens, &q).is_some());
            let mut j = 0;
            while j < d && p[j] == 3 {
                p[j] = -3;
                j += 1;
            }
            if j == d {
                break;
            }
            p[j] += 1;
        }
    }

    #[test]
    fn normality_matches_brute_force(seed in 0u64..100_000) {
        let s = random_monoid(&mut rng(seed));
        let w = i64::try_from(&s.max_generator_weight()).unwrap() * s.ambient_dim() as i64;
        let holes = brute_force_holes(&s, w);
        match is_normal(&s) {
            Verdict::Holds => prop_assert!(holes.is_empty()),
            Verdict::Fails(c) => {
                let first = holes.first().cloned();
                prop_assert_eq!(c.clone(), rees_lab::monoid::Certificate::NotNormal { v: first.unwrap() });
            }
            Verdict::Unknown(_) => prop_assert!(false, "normality is exact"),
        }
    }

    #[test]
    fn seminormal_witnesses_are_minimal_among_holes(seed in 0u64..100_000) {
        let s = random_monoid(&mut rng(seed));
        let b = s.default_bound();
        let holes = brute_force_holes(&s, b as i64);
        let members = |x: &IntVector| s.elements_up_to(&s.weight_of(x)).contains(x);
        let expected = holes.iter().find(|h| members(&h.scale_i64(2)) && members(&h.scale_i64(3)));
        match is_seminormal(&s, b) {
            Verdict::Fails(rees_lab::monoid::Certificate::NotSeminormal { v }) => {
                prop_assert_eq!(Some(&v), expected)
            }
            Verdict::Holds => prop_assert!(holes.is_empty()),
            Verdict::Unknown(_) => prop_assert!(expected.is_none()),
            other => prop_assert!(false, "unexpected verdict {:?}", other),
        }
    }

    #[test]
    fn orders_are_consistent(seed in 0u64..100_000) {
        let inst = instance(seed);
        for a in probes(&inst, 8) {
            let n = ord(&inst.ideal, &a).unwrap();
            prop_assert!(power_membership(&inst.ideal, &a, n));
            prop_assert!(!power_membership(&inst.ideal, &a, n + 1));
            prop_assert_eq!(power_membership(&inst.ideal, &a, 0), true);
        }
    }

    #[test]
    fn asymptotic_order_is_superadditive_and_homogeneous(seed in 0u64..100_000) {
        let inst = instance(seed);
        let ps = probes(&inst, 6);
        let nu = |a: &IntVector| asymptotic_order(&inst.ideal, a).unwrap().finite().cloned().unwrap();
        for a in &ps {
            prop_assert_eq!(nu(&a.scale_i64(2)), nu(a) * Rational::from(2));
            prop_assert!(nu(a) >= Rational::from(ord(&inst.ideal, a).unwrap()));
            for b in ps.iter().take(6) {
                prop_assert!(nu(&(a + b)) >= nu(a) + nu(b));
            }
        }
        let c = inst.ideal.rees_plus().cone();
        prop_assert_eq!(asymptotic_value(c, &IntVector::zero(inst.monoid.ambient_dim())).unwrap().finite().cloned(),
            Some(Rational::from(0)));
    }

    #[test]
    fn closure_matches_power_oracle(seed in 0u64..100_000) {
        let inst = instance(seed);
        let w = i64::try_from(&inst.ideal.max_generator_weight()).unwrap() * 2;
        for a in probes(&inst, w) {
            for n in 1..=2u64 {
                let closed = integral_closure_contains(&inst.ideal, &a, n);
                prop_assert_eq!(closed, asymptotic_order(&inst.ideal, &a).unwrap().at_least(&Integer::from(n)));
                match power_oracle(&inst.ideal, &a, n, 12) {
                    Some(_) => prop_assert!(closed),
                    None => prop_assert!(!closed || cone_multiplier(&inst.ideal, &a, n).unwrap() > 12),
                }
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in 0u64..100_000) {
        let inst = instance(seed);
        let doc = InstanceDocument::from_instance(&inst);
        let back = InstanceDocument::parse(&render(&doc)).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.digest(), doc.digest());
        let model = back.to_model().unwrap();
        prop_assert_eq!(model.monoid.generators().rows(), inst.monoid.generators().rows());
        prop_assert_eq!(model.bounds, inst.bounds);

        let verdict = is_normal(&inst.monoid);
        let vd = VerdictDocument::new("normal", &verdict, doc.digest(), None);
        let parsed = VerdictDocument::parse(&render(&vd)).unwrap();
        prop_assert_eq!(&parsed, &vd);
        prop_assert!(parsed.replay(&doc).unwrap());
    }
}
