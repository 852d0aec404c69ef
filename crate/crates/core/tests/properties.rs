mod common;

use common::{instance, rel};
use kronecker_quintic::brioschi::phi_of_roots;
use kronecker_quintic::family::{a5_orbit, eval_f, f_family};
use kronecker_quintic::matching::matched_distance;
use kronecker_quintic::perm::{all_a5, all_s5, apply, compose, Perm5};
use kronecker_quintic::poly::{
    elementary_from_power_sums, elementary_symmetric, find_roots, poly_from_roots, power_sums,
    sqrt_discriminant, RootTuple,
};
use kronecker_quintic::resolvent::{degree12_poly, expand_form_i, fit_abc, resolvent_coeffs};
use kronecker_quintic::{tolerance, C64};
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = C64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| C64::new(re, im))
}

fn disk(radius: f64) -> impl Strategy<Value = C64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn tuple() -> impl Strategy<Value = RootTuple> {
    prop::array::uniform5(complex(1.5)).prop_map(RootTuple::new)
}

fn perm() -> impl Strategy<Value = Perm5> {
    (0usize..120).prop_map(|i| all_s5()[i])
}

proptest! {
    #[test]
    fn root_round_trip(seed in any::<u64>(), index in 0u64..1000) {
        let rt = instance(seed, index);
        let found = find_roots(&poly_from_roots(rt.roots()).unwrap()).unwrap();
        prop_assert!(matched_distance(&found, rt.roots()).unwrap() < 1e-9);
    }

    #[test]
    fn newton_consistency(values in prop::collection::vec(complex(2.0), 1..10)) {
        let e = elementary_symmetric(&values);
        let from_p = elementary_from_power_sums(&power_sums(&values, values.len()));
        let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for (k, (a, b)) in e.iter().zip(&from_p).enumerate() {
            let mag = scale.powi(k as i32 + 1) * (1u64 << values.len()) as f64;
            prop_assert!((a - b).norm() <= 1e-11 * mag, "k={} {} {}", k, a, b);
        }
    }

    #[test]
    fn action_is_compatible_with_composition(p in perm(), q in perm(), rt in tuple()) {
        prop_assert_eq!(apply(&compose(&p, &q), &rt), apply(&p, &apply(&q, &rt)));
    }

    #[test]
    fn discriminant_sign_tracks_parity(p in perm(), rt in tuple()) {
        let d = sqrt_discriminant(&rt);
        let moved = sqrt_discriminant(&apply(&p, &rt));
        let expected = d * f64::from(p.parity());
        prop_assert!((moved - expected).norm() <= 1e-12 * d.norm().max(1e-300));
    }

    #[test]
    fn f_is_homogeneous_of_degree_five(rt in tuple(), lambda in complex(2.0)) {
        let lhs = eval_f(&rt.scaled(lambda));
        let rhs = eval_f(&rt) * lambda.powi(5);
        let mag = rt.scale().powi(5) * lambda.norm().powi(5) * 20.0;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * mag.max(1.0));
    }

    #[test]
    fn expand_then_fit_recovers_coefficients(a in disk(10.0), b in disk(10.0), c in disk(10.0)) {
        let fit = fit_abc(&expand_form_i(a, b, c)).unwrap();
        // a, b, c are weighted-homogeneous of degrees 1, 3, 5 in F; each is
        // compared on the scale of the terms it is solved from.
        let (na, nb) = (a.norm(), b.norm());
        let scales = [
            na.max(1.0),
            nb.max(na.powi(3)).max(1.0),
            c.norm().max(na.powi(5)).max(na * na * nb).max(1.0),
        ];
        for ((got, want), scale) in fit.triple().iter().zip([a, b, c]).zip(scales) {
            prop_assert!((got - want).norm() <= 1e-9 * scale, "{} vs {}", got, want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orbit_values_are_signed_family_members(seed in any::<u64>()) {
        let rt = instance(seed, 0);
        let fam = f_family(&rt).values();
        for p in all_a5() {
            let v = eval_f(&apply(&p, &rt));
            let hit = fam.iter().any(|w| rel(v, *w) < 1e-7 || rel(v, -*w) < 1e-7);
            prop_assert!(hit);
        }
    }

    #[test]
    fn s5_images_stay_in_the_two_orbits(seed in any::<u64>()) {
        let rt = instance(seed, 1);
        let even = a5_orbit(&rt, tolerance::DEDUP).unwrap();
        let odd = a5_orbit(&apply(&Perm5::transposition(0, 1), &rt), tolerance::DEDUP).unwrap();
        prop_assert_eq!(odd.values.len(), 12);
        let distinct = odd.values.iter().any(|v| even.values.iter().all(|w| rel(*v, *w) > 1e-7));
        prop_assert!(distinct);
        for p in all_s5() {
            let v = eval_f(&apply(&p, &rt));
            let found = even.values.iter().chain(&odd.values).any(|w| rel(v, *w) < 1e-7);
            prop_assert!(found);
        }
    }

    #[test]
    fn every_signed_family_value_is_a_degree12_root(seed in any::<u64>()) {
        let rt = instance(seed, 2);
        let p = degree12_poly(&resolvent_coeffs(&rt));
        for v in f_family(&rt).values() {
            for s in [v, -v] {
                // The twelve terms are bounded by Σ|c_k||f|^k.
                let mag: f64 = (0..=12).map(|k| p.coeff(k).norm() * s.norm().powi(k as i32)).sum();
                prop_assert!(p.eval(s).norm() <= 1e-6 * mag.max(1.0));
            }
        }
    }

    #[test]
    fn phi_is_homogeneous_of_degree_fifteen(seed in any::<u64>()) {
        let rt = instance(seed, 3);
        let lhs = phi_of_roots(&rt.scaled(C64::new(2.0, 0.0)));
        let rhs = phi_of_roots(&rt) * 2f64.powi(15);
        prop_assert!(rel(lhs, rhs) < 1e-9);
    }
}

#[test]
fn compose_consistency_on_seeded_triples() {
    let s5 = all_s5();
    for i in 0..1000u64 {
        let rt = instance(4242, i);
        let p = s5[(i * 37 % 120) as usize];
        let q = s5[((i * 91 + 7) % 120) as usize];
        assert_eq!(apply(&compose(&p, &q), &rt), apply(&p, &apply(&q, &rt)));
    }
}
