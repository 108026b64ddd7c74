use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubic_monodromy::flexes::{
    collinear_triples, hesse_flexes, hesse_form, hessian_coefficients, preserves_triples, solve_flexes,
    PlaneCubicForm, HESSE_LINES,
};
use cubic_monodromy::homotopy::TrackOptions;
use cubic_monodromy::linesolver::{match_lines, solve_lines, SolveReport};
use cubic_monodromy::monodromy::solve_base;
use cubic_monodromy::numeric::{random_complex, SymTensor, C};
use cubic_monodromy::permgrp::{asl2_f3, Permutation};
use cubic_monodromy::schlafli::{canonical_incidence, weyl_e6, SchlafliLabeling};
use cubic_monodromy::surfaces::{invariance_residual, CubicForm, Family, INVARIANCE_TOL};
use cubic_monodromy::tracker::{random_polygon_loop, track_loop, LoopSpec};

fn complex() -> impl Strategy<Value = C> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C::new(re, im))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn weyl_element() -> impl Strategy<Value = Permutation> {
    (0..51840usize).prop_map(|k| weyl_e6().elements().unwrap()[k].clone())
}

struct Base {
    point: Vec<C>,
    report: SolveReport,
    labeling: SchlafliLabeling,
}

fn generic_base() -> &'static Base {
    static BASE: OnceLock<Base> = OnceLock::new();
    BASE.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let point = CubicForm::random(&mut rng).coefficients().to_vec();
        let (report, labeling) = solve_base(Family::Generic20, &point, 1).unwrap();
        Base {
            point,
            report,
            labeling,
        }
    })
}

fn track(l: &LoopSpec) -> Permutation {
    let b = generic_base();
    track_loop(l, &b.report, &b.labeling, &TrackOptions::default()).unwrap().perm
}

proptest! {
    #[test]
    fn composition_is_associative(p in perm(27), q in perm(27), r in perm(27)) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert_eq!(p.then(&q), q.compose(&p));
    }

    #[test]
    fn inverse_and_order(p in perm(12)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.pow(p.order() as i64).is_identity());
        prop_assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn weyl_group_preserves_incidence(g in weyl_element(), h in weyl_element()) {
        prop_assert!(canonical_incidence().is_automorphism(&g));
        prop_assert!(weyl_e6().contains(&g.compose(&h)));
        prop_assert!(weyl_e6().contains(&g.inverse()));
    }

    #[test]
    fn tensor_composition_matches_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<C> = (0..20).map(|_| random_complex(&mut rng)).collect();
        let t = SymTensor::<4>::from_coeffs(&coeffs);
        let m: [[C; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| random_complex(&mut rng)));
        let x: [C; 4] = std::array::from_fn(|_| random_complex(&mut rng));
        let mx: [C; 4] = std::array::from_fn(|i| (0..4).map(|j| m[i][j] * x[j]).sum());
        let lhs = t.compose_linear(&m).eval(&x);
        let rhs = t.eval(&mx);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        let back = SymTensor::<4>::from_coeffs(&t.to_coeffs()).to_coeffs();
        prop_assert!(back.iter().zip(&coeffs).all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn family_symmetries_hold_at_random_parameters(a in complex(), b in complex()) {
        prop_assume!(a.norm() > 0.1 && (a + 0.5).norm() > 0.1);
        for (family, params) in [(Family::S4, vec![a]), (Family::S3, vec![a, b]), (Family::S3xC2, vec![a])] {
            let form = family.form(&params).unwrap();
            for (name, m) in family.symmetry_generators() {
                let r = invariance_residual(&form, &m);
                prop_assert!(r < INVARIANCE_TOL, "{:?} {} residual {}", family, name, r);
            }
        }
    }

    #[test]
    fn hesse_flexes_are_independent_of_k(k in complex()) {
        prop_assume!((k * k * k - 1.0).norm() > 1e-3);
        let f = hesse_form(k).unwrap();
        let res = hesse_flexes().residuals_on(&f).unwrap();
        prop_assert!(res.iter().all(|&r| r < 1e-12));
    }

    #[test]
    fn hessian_is_equivariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PlaneCubicForm::random(&mut rng);
        let a: [[C; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| random_complex(&mut rng)));
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        let fa = PlaneCubicForm::new(&f.tensor().compose_linear(&a).to_coeffs()).unwrap();
        // fa is rescaled by its largest coefficient, which scales the Hessian by its cube
        let s = f.tensor().compose_linear(&a).to_coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lhs: Vec<C> = hessian_coefficients(&fa).iter().map(|z| z * s * s * s).collect();
        let hf = SymTensor::<3>::from_coeffs(&hessian_coefficients(&f));
        let rhs: Vec<C> = hf.compose_linear(&a).to_coeffs().iter().map(|z| z * det * det).collect();
        let size = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(lhs.iter().zip(&rhs).all(|(x, y)| (x - y).norm() <= 1e-9 * size));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn flexes_of_random_cubics_form_the_hesse_configuration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = solve_flexes(&PlaneCubicForm::random(&mut rng), seed).unwrap();
        let triples = collinear_triples(&set.points);
        prop_assert_eq!(triples.len(), HESSE_LINES);
        for p in 0..9 {
            prop_assert_eq!(triples.iter().filter(|t| t.contains(&p)).count(), 4);
        }
    }

    #[test]
    fn affine_maps_preserve_f3_lines(g in (0..216usize).prop_map(|k| asl2_f3().elements().unwrap()[k].clone())) {
        let lines: Vec<[usize; 3]> = collinear_triples(&hesse_flexes().points);
        let beta = cubic_monodromy::flexes::f3_bijections(&lines)[0].clone();
        prop_assert!(preserves_triples(&g.relabel(&beta.inverse()), &lines));
    }

    #[test]
    fn solves_are_chart_independent(seed in 0..1000u64) {
        let b = generic_base();
        let form = CubicForm::new(&b.point).unwrap();
        let other = solve_lines(&form, seed + 10).unwrap();
        prop_assert!(match_lines(&other.lines, &b.report.lines).is_ok());
    }

    #[test]
    fn constant_loop_is_identity(_k in 0..2u8) {
        let b = generic_base();
        prop_assert!(track(&LoopSpec::constant(Family::Generic20, b.point.clone())).is_identity());
    }

    #[test]
    fn reversed_loop_gives_inverse(seed in any::<u64>()) {
        let l = random_polygon_loop(Family::Generic20, &generic_base().point, 1.0, seed);
        prop_assert_eq!(track(&l.reversed()), track(&l).inverse());
    }

    #[test]
    fn concatenation_composes(s1 in any::<u64>(), s2 in any::<u64>()) {
        let base = &generic_base().point;
        let l1 = random_polygon_loop(Family::Generic20, base, 1.0, s1);
        let l2 = random_polygon_loop(Family::Generic20, base, 1.0, s2);
        prop_assert_eq!(track(&l1.then(&l2)), track(&l1).then(&track(&l2)));
    }

    #[test]
    fn refinement_does_not_change_the_permutation(seed in any::<u64>()) {
        let l = random_polygon_loop(Family::Generic20, &generic_base().point, 1.0, seed);
        let p = track(&l);
        prop_assert!(weyl_e6().contains(&p));
        prop_assert_eq!(track(&l.refined()), p);
    }
}
