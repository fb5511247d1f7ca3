mod common;

use common::*;
use proptest::prelude::*;
use qmask::{
    angles_to_bloch, extract_constraints, f01_coefficients, maskable_set, product_form_diagnosis, reduced_pair_raw,
    Complex, GeneralLinearOp, MaskableClass,
};

proptest! {
    #[test]
    fn constraints_reproduce_every_entry(op in operator(), s in state()) {
        let pair = reduced_pair_raw(&op, &s);
        let p = angles_to_bloch(&s);
        for c in extract_constraints(&op).unwrap() {
            prop_assert!((c.evaluate(&p) - c.entry.read(&pair)).abs() < 1e-12);
        }
    }

    #[test]
    fn f01_closed_form_matches_state(op in operator(), s in state()) {
        let [p, q, h, r] = f01_coefficients(&op);
        let b = angles_to_bloch(&s);
        let want = p * b.z() + q * b.x() + h * b.y() + r;
        let got = reduced_pair_raw(&op, &s).0.get(0, 1);
        prop_assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn never_full_sphere_and_anchor_included(op in operator(), anchor in state()) {
        let class = maskable_set(&op, &anchor).unwrap();
        prop_assert!(!matches!(class, MaskableClass::FullSphere));
        prop_assert!(class.contains(&angles_to_bloch(&anchor), 1e-9));
    }

    #[test]
    fn classified_members_share_marginals(op in operator(), anchor in state()) {
        let class = maskable_set(&op, &anchor).unwrap();
        let reference = reduced_pair_raw(&op, &anchor);
        let members: Vec<_> = match class {
            MaskableClass::Circle(c) => qmask::sample_circle(&c, 12),
            MaskableClass::PointPair(a, b) => vec![a.to_angles(), b.to_angles()],
            MaskableClass::SinglePoint(p) => vec![p.to_angles()],
            MaskableClass::FullSphere => unreachable!(),
        };
        let tol = 1e-9 * op.scale().max(1.0);
        for m in members {
            let pair = reduced_pair_raw(&op, &m);
            prop_assert!((pair.0 - reference.0).frobenius() < tol);
            prop_assert!((pair.1 - reference.1).frobenius() < tol);
        }
    }

    #[test]
    fn planted_product_form_recovers_lambda(mu in proptest::array::uniform2(complex()), nu in proptest::array::uniform2(complex()), lambda in complex()) {
        // Orthogonal ν₀ ⟂ μ₀, then μ₁ = λμ₀, ν₁ = λν₀.
        let m0 = qmask::CVec2::new(mu[0], mu[1]);
        prop_assume!(m0.norm() > 0.1);
        let n0 = qmask::CVec2::new(-mu[1].conj(), mu[0].conj()).scale(nu[0]);
        prop_assume!(n0.norm() > 0.01 || nu[1].norm() > 0.0);
        let op = GeneralLinearOp::from_blocks(m0, m0.scale(lambda), n0, n0.scale(lambda)).unwrap();
        let report = product_form_diagnosis(&op);
        prop_assert!(report.is_product_form);
        prop_assert!((report.lambda.unwrap() - lambda).norm() < 1e-10);
    }
}

#[test]
fn zero_operator_rejected() {
    assert!(GeneralLinearOp::<f64>::from_coefficients([Complex::new(0.0, 0.0); 8]).is_err());
}
