use num::{BigInt, BigRational, One};
use proptest::prelude::*;

use zkgames::alternation::{PredicateAssignment, StageState};
use zkgames::signaling::{
    invert_strategy, lambda_product, rounds_for_tolerance, zk_limit_satisfied, zk_threshold,
    Decision, LambdaVector, RoundRecord, SignalingSession,
};

/// `1 - 2^(k+1) / 3^k` from integer powers.
fn threshold_oracle(k: u32) -> BigRational {
    let num = num::pow(BigInt::from(2), k as usize + 1);
    let den = num::pow(BigInt::from(3), k as usize);
    BigRational::one() - BigRational::new(num, den)
}

fn session(p_u: f64, p_i: f64, rounds: u32) -> SignalingSession {
    let mut s = SignalingSession::new(0.001).unwrap().with_stage_probabilities(p_u, p_i).unwrap();
    for r in 1..=rounds {
        let stage = if r % 2 == 1 { StageState::P0 } else { StageState::V0 };
        s.push_round(RoundRecord {
            round_index: r,
            prover_passed: true,
            stage_emitted: stage,
            assignment: PredicateAssignment::for_stage(stage),
        })
        .unwrap();
    }
    s
}

#[test]
fn threshold_matches_oracle_and_increases() {
    let mut prev = zk_threshold(2).unwrap();
    assert_eq!(prev, threshold_oracle(2));
    for k in 3..=80 {
        let h = zk_threshold(k).unwrap();
        assert_eq!(h, threshold_oracle(k));
        assert!(h > prev && h < BigRational::one());
        prev = h;
    }
    assert!(zk_threshold(0).is_err());
    assert!(zk_threshold(1).is_err());
}

#[test]
fn rounds_for_tolerance_is_first_crossing() {
    for eps in [0.5, 0.1, 0.01, 0.001, 1e-6] {
        let k = rounds_for_tolerance(eps).unwrap();
        assert!(zk_limit_satisfied(k, eps).unwrap());
        if k > 2 {
            assert!(!zk_limit_satisfied(k - 1, eps).unwrap());
        }
    }
}

#[test]
fn inverted_vectors_give_the_other_product() {
    let p = LambdaVector::proposition();
    let v = LambdaVector::verification();
    assert_eq!(lambda_product(invert_strategy(v), invert_strategy(p)).unwrap(), lambda_product(p, v).unwrap());
}

proptest! {
    #[test]
    fn mode_follows_threshold(k in 2u32..40, eps in 0.0001f64..0.49) {
        let s = SignalingSession::new(eps).unwrap();
        let h = zk_threshold(k).unwrap();
        let mode = s.lambda_transition(&h).unwrap();
        prop_assert_eq!(mode.is_knowledge(), zk_limit_satisfied(k, eps).unwrap());
    }

    #[test]
    fn inference_swaps_with_probabilities(p_u in 0.0f64..=1.0, p_i in 0.0f64..=1.0, rounds in 1u32..10) {
        let a = session(p_u, p_i, rounds).infer_stage();
        let b = session(p_i, p_u, rounds).infer_stage();
        if p_u == p_i {
            prop_assert!(a.is_err() && b.is_err());
        } else {
            let (a, b) = (a.unwrap().decision, b.unwrap().decision);
            prop_assert_ne!(a, b);
            prop_assert_eq!(a == Decision::D1, p_u < p_i);
        }
    }

    #[test]
    fn q_u_is_weight_or_zero(w in 0.0f64..=1.0, holds: bool) {
        let s = SignalingSession::new(0.01).unwrap().with_doxastic_weight(w).unwrap();
        let q = s.q_u_probability(holds);
        prop_assert_eq!(q, if holds { w } else { 0.0 });
    }
}
