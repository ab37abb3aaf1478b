//! Randomized checks of the contraction, Jacobian, stochasticity, sign and
//! Newton-step identities.

mod common;

use common::{apply_by_definition, l1, prob_vector, tensor, transition_tensor};
use proptest::prelude::*;
use zeig::builtin::BuiltinExample;
use zeig::newton::{intervene_sign, newton_oracle_step, solve_shifted, update_x};
use zeig::tensor::{DEFAULT_STOCHASTIC_TOL, DEFAULT_ZERO_TOL};
use zeig::{DenseTensor, ProbVector};

const CASES: u32 = 160;

fn sparse_tensor(zero_weight: u32) -> impl Strategy<Value = DenseTensor> {
    (2usize..=3, 2usize..=4).prop_flat_map(move |(m, n)| {
        let len = n.pow(m as u32);
        prop::collection::vec(
            prop_oneof![zero_weight => Just(0.0), 10 => 0.1..1.0f64],
            len,
        )
        .prop_map(move |v| DenseTensor::new(m, n, v).unwrap())
    })
}

fn with_point<S: Strategy<Value = DenseTensor>>(
    s: S,
) -> impl Strategy<Value = (DenseTensor, ProbVector)> {
    s.prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), prob_vector(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn apply_matches_definition_and_semisymmetric_form((a, x) in with_point(tensor(3..=4, 2..=6))) {
        let direct = apply_by_definition(&a, &x);
        let y = a.apply(&x).unwrap();
        let ys = a.semisymmetrize().apply(&x).unwrap();
        let scale = 1.0 + direct.iter().sum::<f64>();
        prop_assert!(l1(&y, &direct) <= 1e-12 * scale);
        prop_assert!(l1(&ys, &direct) <= 1e-12 * scale);
    }

    #[test]
    fn semisymmetrize_is_idempotent_and_flagged(a in tensor(3..=4, 2..=4)) {
        let s = a.semisymmetrize();
        prop_assert!(s.is_semisymmetric());
        let ss = s.semisymmetrize();
        prop_assert!(l1(s.values(), ss.values()) <= 1e-14 * s.values().len() as f64);
    }

    #[test]
    fn jacobian_times_point_is_apply((a, x) in with_point(tensor(2..=4, 2..=6))) {
        let t = a.jacobian(&x).unwrap();
        let y = a.apply(&x).unwrap();
        let scale = 1.0 + y.iter().sum::<f64>();
        prop_assert!(l1(&t.mul_vec(&x), &y) <= 1e-12 * scale);
        prop_assert!(t.data().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn jacobian_matches_central_differences((a, x) in with_point(tensor(3..=4, 2..=4))) {
        let (m, n) = (a.order(), a.dim());
        let t = a.jacobian(&x).unwrap();
        let h = 1e-6;
        for j in 0..n {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[j] += h;
            xm[j] -= h;
            let yp = a.apply(&xp).unwrap();
            let ym = a.apply(&xm).unwrap();
            for i in 0..n {
                let fd = (yp[i] - ym[i]) / (2.0 * h) / (m - 1) as f64;
                prop_assert!((t.get(i, j) - fd).abs() < 1e-6, "T[{i},{j}] = {} vs {fd}", t.get(i, j));
            }
        }
    }

    #[test]
    fn transition_jacobian_is_column_stochastic((a, x) in with_point(transition_tensor(2..=4, 2..=5))) {
        prop_assert!(a.is_transition_probability(DEFAULT_STOCHASTIC_TOL));
        let t = a.jacobian(&x).unwrap();
        for s in t.column_sums() {
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn transition_rayleigh_bounds_bracket_one((a, x) in with_point(transition_tensor(2..=4, 2..=5))) {
        let (lo, hi) = a.rayleigh_bounds(&x, DEFAULT_ZERO_TOL).unwrap();
        prop_assert!(lo <= 1.0 + 1e-14 && 1.0 - 1e-14 <= hi, "[{lo}, {hi}]");
    }

    #[test]
    fn semisymmetrize_keeps_transition_form(a in transition_tensor(3..=4, 2..=4)) {
        prop_assert!(a.semisymmetrize().is_transition_probability(DEFAULT_STOCHASTIC_TOL));
    }

    #[test]
    fn shift_above_order_minus_one_gives_positive_solve(
        (a, x) in with_point(transition_tensor(3..=4, 2..=5)),
        gap in 0.05..5.0f64,
    ) {
        let m = a.order();
        let t = a.jacobian(&x).unwrap();
        let s = solve_shifted((m - 1) as f64 + gap, &t, &x, m).unwrap();
        prop_assume!(!s.singular);
        prop_assert!(s.w.iter().all(|&v| v > 0.0), "{:?}", s.w);
    }

    #[test]
    fn shift_below_order_minus_one_gives_negative_sum(
        (a, x) in with_point(transition_tensor(3..=4, 2..=5)),
        frac in 0.0..0.98f64,
    ) {
        let m = a.order();
        let t = a.jacobian(&x).unwrap();
        let s = solve_shifted(frac * (m - 1) as f64, &t, &x, m).unwrap();
        prop_assume!(!s.singular);
        prop_assert!(s.w.iter().sum::<f64>() < 0.0, "{:?}", s.w);
    }

    #[test]
    fn sign_laws_on_stochastic_examples(which in 0usize..2, xs in prob_vector(3), sigma in 0.0..8.0f64) {
        let ex = [BuiltinExample::Ex4, BuiltinExample::Ex5][which];
        let a = ex.tensor();
        let m = a.order();
        let x = ProbVector::normalize(xs[..a.dim()].to_vec()).unwrap();
        prop_assume!((sigma - (m - 1) as f64).abs() > 0.02);
        let s = solve_shifted(sigma, &a.jacobian(&x).unwrap(), &x, m).unwrap();
        prop_assume!(!s.singular);
        if sigma > (m - 1) as f64 {
            prop_assert!(s.w.iter().all(|&v| v > 0.0));
        } else {
            prop_assert!(s.w.iter().sum::<f64>() < 0.0);
        }
    }

    #[test]
    fn block_elimination_agrees_with_bordered_oracle(which in 0usize..5, xs in prob_vector(3)) {
        let ex = BuiltinExample::ALL[which];
        let a = ex.tensor();
        let m = a.order();
        let x = ProbVector::normalize(xs[..a.dim()].to_vec()).unwrap();
        let (_, hi) = a.rayleigh_bounds(&x, DEFAULT_ZERO_TOL).unwrap();
        let s = solve_shifted(hi, &a.jacobian(&x).unwrap(), &x, m).unwrap();
        prop_assume!(!s.singular);
        let ew: f64 = s.w.iter().sum();
        prop_assume!(ew.abs() > 1e-8);
        let Ok((x_hat, lambda_hat)) = newton_oracle_step(&x, hi, &a) else {
            return Err(TestCaseError::reject("bordered system singular"));
        };
        let k = (m - 1) as f64;
        for i in 0..a.dim() {
            let formula = ((m - 2) as f64 * x[i] + s.w[i] / ew) / k;
            prop_assert!((x_hat[i] - formula).abs() <= 1e-9 * (1.0 + formula.abs()), "{} vs {formula}", x_hat[i]);
        }
        let formula = (hi - 1.0 / ew) / k;
        prop_assert!((lambda_hat - formula).abs() <= 1e-9 * (1.0 + formula.abs()));
    }

    #[test]
    fn intervention_is_idempotent_and_single_signed(w in prop::collection::vec(-10.0..10.0f64, 1..8)) {
        prop_assume!(w.iter().any(|&v| v != 0.0));
        let (once, hit) = intervene_sign(&w).unwrap();
        let (twice, again) = intervene_sign(&once).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(!again);
        prop_assert!(once.iter().all(|&v| v >= 0.0) || once.iter().all(|&v| v <= 0.0));
        prop_assert!(once.iter().any(|&v| v != 0.0));
        if !hit {
            prop_assert_eq!(&once, &w);
        }
    }

    #[test]
    fn update_stays_on_open_simplex(x in prob_vector(4), w in prop::collection::vec(0.01..5.0f64, 4), neg in any::<bool>(), m in 2usize..=5) {
        let w: Vec<f64> = if neg { w.iter().map(|v| -v).collect() } else { w };
        let next = update_x(&x, &w, m).unwrap();
        prop_assert!(next.iter().all(|&v| v > 0.0));
        prop_assert!((next.iter().sum::<f64>() - 1.0).abs() <= 16.0 * f64::EPSILON);
    }

    #[test]
    fn weak_irreducibility_digraph_matches_subset_definition(a in sparse_tensor(14)) {
        prop_assert_eq!(a.is_weakly_irreducible(), a.is_weakly_irreducible_by_subsets().unwrap());
    }

    #[test]
    fn weakly_irreducible_tensors_have_irreducible_jacobians((a, x) in with_point(sparse_tensor(6))) {
        prop_assume!(a.is_weakly_irreducible());
        prop_assert!(a.jacobian(&x).unwrap().is_irreducible());
    }
}
