mod common;

use common::*;
use proptest::prelude::*;
use qmask::{mat_distance, partial_trace_a, partial_trace_b, CMat2, CVec2, CVec4, Complex};

fn vec4() -> impl Strategy<Value = CVec4<f64>> {
    proptest::array::uniform4(complex()).prop_map(CVec4::new)
}

proptest! {
    #[test]
    fn partial_traces_are_hermitian_psd_with_shared_trace(psi in vec4()) {
        let a = partial_trace_b(&psi).unwrap();
        let b = partial_trace_a(&psi).unwrap();
        let n = psi.norm_sqr();
        for m in [a, b] {
            prop_assert!(m.is_hermitian(1e-14));
            prop_assert!((m.trace().re - n).abs() < 1e-13);
            prop_assert!(m.trace().im.abs() < 1e-14);
            let (lo, _) = m.hermitian_eigenvalues();
            prop_assert!(lo > -1e-13);
        }
        // Both marginals of a pure state have the same spectrum.
        let (la, ha) = a.hermitian_eigenvalues();
        let (lb, hb) = b.hermitian_eigenvalues();
        prop_assert!((la - lb).abs() < 1e-12 && (ha - hb).abs() < 1e-12);
    }

    #[test]
    fn product_states_have_pure_marginals(u in proptest::array::uniform2(complex()), v in proptest::array::uniform2(complex())) {
        let u = CVec2::new(u[0], u[1]);
        let v = CVec2::new(v[0], v[1]);
        prop_assume!(u.norm() > 1e-3 && v.norm() > 1e-3);
        let psi = u.tensor(&v);
        let a = partial_trace_b(&psi).unwrap();
        let b = partial_trace_a(&psi).unwrap();
        prop_assert!(mat_distance(&a, &CMat2::outer(&u).scale(v.norm_sqr())) < 1e-13);
        prop_assert!(mat_distance(&b, &CMat2::outer(&v).scale(u.norm_sqr())) < 1e-13);
    }

    #[test]
    fn marginals_scale_quadratically(psi in vec4(), k in complex()) {
        let a = partial_trace_b(&psi.scale(k)).unwrap();
        let want = partial_trace_b(&psi).unwrap().scale(k.norm_sqr());
        prop_assert!(mat_distance(&a, &want) < 1e-13);
    }
}

#[test]
fn non_finite_amplitudes_rejected() {
    let mut amps = [Complex::new(0.5, 0.0); 4];
    amps[2] = Complex::new(f64::INFINITY, 0.0);
    assert!(partial_trace_a(&CVec4::new(amps)).is_err());
    assert!(partial_trace_b(&CVec4::new(amps)).is_err());
}
