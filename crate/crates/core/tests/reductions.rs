mod common;

use common::{random, random_dims, random_mixed};
use proptest::prelude::*;
use qsylv_core::genval::{gen_consistent, gen_inconsistent, CoefRank, GenKind, GenSpec};
use qsylv_core::{
    check_main, solve_axyb, solve_four_term, solve_main_with, solve_three_term, Branch, FreeParameters, MainDims,
    MainInstance, ParamMode, QMatrix, QsError, Tolerances, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mixed_instance(seed: u64) -> MainInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = random_dims(&mut rng, 4);
    let spec = GenSpec::new(dims, seed).with_coef_rank(CoefRank::Random);
    if seed % 2 == 1 {
        if let Ok(inst) = gen_inconsistent(&spec.with_kind(GenKind::Inconsistent)) {
            return inst;
        }
    }
    gen_consistent(&spec).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_and_projector_forms_agree(seed in any::<u64>()) {
        let inst = mixed_instance(seed);
        let (report, _) = check_main(&inst, &Tolerances::for_inputs(inst.matrices())).unwrap();
        let (r, p) = (report.rank_verdict(), report.projector_verdict());
        if r != Verdict::Indeterminate && p != Verdict::Indeterminate {
            prop_assert_eq!(r, p, "{:?}", report.failing());
        }
    }

    #[test]
    fn three_term_matches_padded_main(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_dims(&mut rng, 4);
        let dims = MainDims { p: 0, q: 0, ..d };
        let (inst, _) = gen_consistent(&GenSpec::new(dims, seed).with_coef_rank(CoefRank::Random));
        let tol = Tolerances::for_inputs(inst.matrices());
        let params = FreeParameters::for_instance(&inst, ParamMode::Random { seed });
        for branch in [Branch::F1, Branch::F2] {
            let three = solve_three_term(&inst.a2, &inst.b2, &inst.a3, &inst.b3, &inst.a4, &inst.b4, &inst.b, &params, branch, &tol)
                .unwrap();
            let (main, sol) = solve_main_with(&inst, &params, branch, &tol).unwrap();
            prop_assert_eq!(three.report.verdict, main.verdict);
            prop_assert_eq!(three.report.rank_verdict(), Verdict::Consistent);
            for (a, b) in [(&three.y1, &sol.y1), (&three.y2, &sol.y2), (&three.y3, &sol.y3)] {
                prop_assert!((a - b).max_entry_norm() <= 1e-10 * tol.scale);
            }
        }
    }

    #[test]
    fn main_without_middle_terms_matches_two_term(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dim = || rng.random_range(1..=5usize);
        let (m, n, p, q) = (dim(), dim(), dim(), dim());
        let a1 = random_mixed(&mut rng, m, p);
        let b1 = random_mixed(&mut rng, q, n);
        let c = if seed % 2 == 0 {
            &(&a1 * &random(&mut rng, p, n)) + &(&random(&mut rng, m, q) * &b1)
        } else {
            random(&mut rng, m, n)
        };
        let mut inst = MainInstance::zeros(MainDims { m, n, p, q, k2: 0, l2: 0, k3: 0, l3: 0, k4: 0, l4: 0 });
        inst.a1 = a1.clone();
        inst.b1 = b1.clone();
        inst.b = c.clone();
        let tol = Tolerances::for_inputs(inst.matrices());
        let params = FreeParameters::for_instance(&inst, ParamMode::Random { seed });
        let two = solve_axyb(&a1, &b1, &c, [&params.u[0], &params.u[1], &params.u[2]], &tol).unwrap();
        match solve_main_with(&inst, &params, Branch::F1, &tol) {
            Ok((report, sol)) => {
                prop_assert!(two.consistent());
                prop_assert_eq!(report.verdict, Verdict::Consistent);
                prop_assert!((&sol.x1 - &two.x).max_entry_norm() <= 1e-10 * tol.scale);
                prop_assert!((&sol.x2 - &two.y).max_entry_norm() <= 1e-10 * tol.scale);
            }
            Err(QsError::Inconsistent { .. }) => prop_assert!(!two.consistent()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn four_term_without_middle_terms_matches_two_term(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dim = || rng.random_range(1..=5usize);
        let (m, n, p, q, k, l) = (dim(), dim(), dim(), dim(), dim(), dim());
        let a1 = random_mixed(&mut rng, m, p);
        let b1 = random_mixed(&mut rng, q, n);
        let e1 = if seed % 2 == 0 {
            &(&a1 * &random(&mut rng, p, n)) + &(&random(&mut rng, m, q) * &b1)
        } else {
            random(&mut rng, m, n)
        };
        let (c, d) = (QMatrix::zeros(m, k), QMatrix::zeros(l, n));
        let tol = Tolerances::for_inputs([&a1, &b1, &e1]);
        let zu = [QMatrix::zeros(m, q), QMatrix::zeros(p, n), QMatrix::zeros(m, q)];
        let two = solve_axyb(&a1, &b1, &e1, [&zu[0], &zu[1], &zu[2]], &tol).unwrap();
        let four = solve_four_term(&a1, &b1, &c, &d, &c, &d, &e1, None, &tol);
        prop_assert_eq!(four.is_ok(), two.consistent());
    }
}
