mod common;

use common::*;
use proptest::prelude::*;
use qmask::{angles_to_bloch, decode, encode, share_constraint, AngleState, DecodeResult, Scheme};
use std::f64::consts::{PI, TAU};

fn near(a: &AngleState<f64>, b: &AngleState<f64>, tol: f64) -> bool {
    angles_to_bloch(a).distance(&angles_to_bloch(b)) <= tol
}

fn scheme() -> impl Strategy<Value = Scheme<f64>> {
    prop_oneof![
        Just(Scheme::fig1_axes()),
        (3usize..10).prop_map(|n| Scheme::fig3_pole(n).unwrap()),
        (4usize..10).prop_map(|n| Scheme::fig2_vertical(n).unwrap()),
        (4usize..10).prop_map(|n| Scheme::general(n).unwrap()),
    ]
}

// Candidate set of a result, as Bloch points.
fn candidates(r: &DecodeResult<f64>) -> Option<Vec<AngleState<f64>>> {
    match r {
        DecodeResult::AmbiguousCircle(_) => None,
        _ => Some(r.candidates()),
    }
}

proptest! {
    #[test]
    fn message_satisfies_every_share(msg in state(), s in scheme()) {
        let p = angles_to_bloch(&msg);
        for share in encode(&msg, &s) {
            prop_assert!(share_constraint(&share).unwrap().residual(&p).abs() < 1e-10);
        }
    }

    #[test]
    fn decoding_is_sound(msg in interior_state(), s in scheme()) {
        let res = decode(&encode(&msg, &s)).unwrap();
        match res {
            DecodeResult::Unique(c) => prop_assert!(near(&c, &msg, 1e-8)),
            DecodeResult::TwoCandidates(a, b) => prop_assert!(near(&a, &msg, 1e-8) || near(&b, &msg, 1e-8)),
            DecodeResult::AmbiguousCircle(c) => prop_assert!(c.residual(&angles_to_bloch(&msg)).abs() < 1e-10),
            DecodeResult::Inconsistent => prop_assert!(false, "honest shares decoded as inconsistent"),
        }
    }

    #[test]
    fn order_does_not_matter(msg in interior_state(), s in scheme(), seed in 0u64..1000) {
        let mut shares = encode(&msg, &s);
        let forward = decode(&shares).unwrap();
        // Deterministic shuffle.
        let n = shares.len();
        for i in (1..n).rev() {
            shares.swap(i, (seed as usize * 31 + i * 17) % (i + 1));
        }
        let shuffled = decode(&shares).unwrap();
        prop_assert_eq!(forward.name(), shuffled.name());
        if let (Some(a), Some(b)) = (candidates(&forward), candidates(&shuffled)) {
            for c in &a {
                prop_assert!(b.iter().any(|d| near(c, d, 1e-8)));
            }
        }
    }

    #[test]
    fn more_shares_never_add_candidates(msg in interior_state(), s in scheme()) {
        let shares = encode(&msg, &s);
        let mut previous: Option<Vec<AngleState<f64>>> = None;
        for k in 1..=shares.len() {
            let current = candidates(&decode(&shares[..k]).unwrap());
            if let (Some(prev), Some(cur)) = (&previous, &current) {
                prop_assert!(cur.len() <= prev.len());
                for c in cur {
                    prop_assert!(prev.iter().any(|p| near(c, p, 1e-8)));
                }
            }
            if current.is_some() {
                previous = current;
            }
        }
    }

    #[test]
    fn vertical_schemes_never_decode(x in 0.05..PI - 0.05, y in 0.0..TAU, n in 4usize..10) {
        prop_assume!((x - PI / 2.0).abs() > 0.05);
        let msg = st(x, y);
        let mirror = st(PI - x, y);
        let shares = encode(&msg, &Scheme::fig2_vertical(n).unwrap());
        for k in 2..=shares.len() {
            match decode(&shares[..k]).unwrap() {
                DecodeResult::TwoCandidates(a, b) => {
                    prop_assert!(near(&a, &msg, 1e-8) || near(&b, &msg, 1e-8));
                    prop_assert!(near(&a, &mirror, 1e-8) || near(&b, &mirror, 1e-8));
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
