mod common;

use common::{random, random_rank};
use proptest::prelude::*;
use qsylv_core::{pinv, projectors, qrank, EtaAxis, QMatrix, Tol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scale(a: &QMatrix) -> f64 {
    1.0 + a.max_entry_norm()
}

fn close(a: &QMatrix, b: &QMatrix, tol: f64) -> bool {
    (a - b).max_entry_norm() <= tol
}

/// Random `rows × cols` matrix of random rank, aspect ratio within 1:3 .. 3:1.
fn draw(seed: u64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rand::Rng::random_range(&mut rng, 1..=6usize);
    let lo = rows.div_ceil(3);
    let cols = rand::Rng::random_range(&mut rng, lo..=(3 * rows).min(6).max(lo));
    let rank = rand::Rng::random_range(&mut rng, 0..=rows.min(cols));
    if rank == rows.min(cols) {
        random(&mut rng, rows, cols)
    } else {
        random_rank(&mut rng, rows, cols, rank)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn penrose_conditions(seed in any::<u64>()) {
        let a = draw(seed);
        let y = pinv(&a, Tol::Auto).unwrap().pinv;
        let t = 1e-10 * scale(&a);
        let ay = &a * &y;
        let ya = &y * &a;
        prop_assert!(close(&(&ay * &a), &a, t));
        prop_assert!(close(&(&ya * &y), &y, t));
        prop_assert!(close(&ay.conj_transpose(), &ay, t));
        prop_assert!(close(&ya.conj_transpose(), &ya, t));
    }

    #[test]
    fn eta_identities(seed in any::<u64>(), axis in 0usize..3) {
        let eta = EtaAxis::ALL[axis];
        let a = draw(seed);
        let t = 1e-10 * scale(&a);
        let ad = pinv(&a, Tol::Auto).unwrap().pinv;
        let a_eta = a.eta_transform(eta);
        let a_es = a.eta_conj_transpose(eta);

        // (1)
        prop_assert!(close(&pinv(&a_eta, Tol::Auto).unwrap().pinv, &ad.eta_transform(eta), t));
        prop_assert!(close(&pinv(&a_es, Tol::Auto).unwrap().pinv, &ad.eta_conj_transpose(eta), t));

        // (2)
        let r = qrank(&a, Tol::Auto).unwrap();
        prop_assert_eq!(qrank(&a_es, Tol::Auto).unwrap(), r);
        prop_assert_eq!(qrank(&a_eta, Tol::Auto).unwrap(), r);
        prop_assert_eq!(qrank(&(&a_eta * &a_es), Tol::Auto).unwrap(), r);
        prop_assert_eq!(qrank(&(&a_es * &a_eta), Tol::Auto).unwrap(), r);

        // (3) (L_A)^{η*} = −η L_A η = (L_A)^η = L_{A^η} = R_{A^{η*}}
        let p = projectors(&a).unwrap();
        let l = &p.left;
        let l_es = l.eta_conj_transpose(eta);
        prop_assert!(close(&l_es, &l.eta_transform(eta), t));
        prop_assert!(close(&l_es, &projectors(&a_eta).unwrap().left, t));
        prop_assert!(close(&l_es, &projectors(&a_es).unwrap().right, t));

        // (4) (R_A)^{η*} = (R_A)^η = R_{A^η} = L_{A^{η*}}
        let rr = &p.right;
        let r_es = rr.eta_conj_transpose(eta);
        prop_assert!(close(&r_es, &rr.eta_transform(eta), t));
        prop_assert!(close(&r_es, &projectors(&a_eta).unwrap().right, t));
        prop_assert!(close(&r_es, &projectors(&a_es).unwrap().left, t));

        // (5) (AA†)^{η*} = (A†)^{η*} A^{η*} = (AA†)^η = A^η (A†)^η
        let aad = &a * &ad;
        let lhs = aad.eta_conj_transpose(eta);
        prop_assert!(close(&lhs, &(&ad.eta_conj_transpose(eta) * &a_es), t));
        prop_assert!(close(&lhs, &aad.eta_transform(eta), t));
        prop_assert!(close(&lhs, &(&a_eta * &ad.eta_transform(eta)), t));

        // (6) (A†A)^{η*} = A^{η*} (A†)^{η*} = (A†A)^η = (A†)^η A^η
        let ada = &ad * &a;
        let lhs = ada.eta_conj_transpose(eta);
        prop_assert!(close(&lhs, &(&a_es * &ad.eta_conj_transpose(eta)), t));
        prop_assert!(close(&lhs, &ada.eta_transform(eta), t));
        prop_assert!(close(&lhs, &(&ad.eta_transform(eta) * &a_eta), t));
    }

    #[test]
    fn projectors_annihilate(seed in any::<u64>()) {
        let a = draw(seed);
        let p = projectors(&a).unwrap();
        let t = 1e-10 * scale(&a);
        prop_assert!((&a * &p.left).max_entry_norm() <= t);
        prop_assert!((&p.right * &a).max_entry_norm() <= t);
        prop_assert!(close(&(&p.left * &p.left), &p.left, t));
        prop_assert!(close(&p.right.conj_transpose(), &p.right, t));
    }

    #[test]
    fn embedded_singular_values_pair_up(seed in any::<u64>()) {
        let a = draw(seed);
        let info = qsylv_core::rank_info(&a, Tol::Auto).unwrap();
        prop_assert!(info.pair_defect <= 1e-10 * info.sigma_max().max(1.0));
    }
}
