//! Seeded end-to-end run of the signaling exchange between a prover (Bob)
//! and a verifier (Alice).
//!
//! Bob is informed with probability `p_informed`. Rounds alternate between
//! the proposition and verification stages. An uninformed Bob passes each
//! round with probability `bluff_success`; the first failure ends the run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternation::{classify_state, PredicateAssignment, StageState};
use crate::error::{Error, Result};
use crate::signaling::{
    format_decimal, stage_probability, zk_threshold, LambdaMatrix, Mode, ProofOrder, RoundRecord,
    SignalingSession, StageInference, V0Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkthroughConfig {
    pub rounds: u32,
    pub seed: u64,
    pub epsilon: f64,
    pub p_informed: f64,
    pub bluff_success: f64,
}

impl Default for WalkthroughConfig {
    fn default() -> Self {
        Self {
            rounds: 6,
            seed: 0,
            epsilon: crate::signaling::DEFAULT_EPSILON,
            p_informed: 0.5,
            bluff_success: 2.0 / 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkthroughRound {
    pub record: RoundRecord,
    /// `h_k` after this round, from round 2 on.
    pub threshold: Option<num::BigRational>,
    pub mode: Option<Mode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Walkthrough {
    pub config: WalkthroughConfig,
    pub informed: bool,
    pub detected: bool,
    pub rounds: Vec<WalkthroughRound>,
    pub prior_uninformed: f64,
    pub posterior_uninformed: f64,
    pub session: SignalingSession,
    pub p0_value: f64,
    pub v0_verdict: Option<V0Verdict>,
    pub inference: Result<StageInference>,
}

fn stage_for(round: u32) -> StageState {
    if round % 2 == 1 {
        StageState::P0
    } else {
        StageState::V0
    }
}

pub fn run_walkthrough(config: &WalkthroughConfig) -> Result<Walkthrough> {
    if config.rounds < 2 {
        return Err(Error::InvalidConfig(format!("rounds = {} must be at least 2", config.rounds)));
    }
    for (name, p) in [("p_informed", config.p_informed), ("bluff_success", config.bluff_success)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let informed = rng.random_bool(config.p_informed);
    let mut session = SignalingSession::new(config.epsilon)?;
    let mut rounds = Vec::new();
    let mut detected = false;

    for r in 1..=config.rounds {
        let stage = stage_for(r);
        let passed = informed || rng.random_bool(config.bluff_success);
        let record = RoundRecord {
            round_index: r,
            prover_passed: passed,
            stage_emitted: stage,
            assignment: PredicateAssignment::for_stage(stage),
        };
        session.push_round(record)?;
        let (threshold, mode) = if r >= 2 {
            let h = zk_threshold(r)?;
            let mode = session.apply_transition(&h)?;
            (Some(h), Some(mode))
        } else {
            (None, None)
        };
        rounds.push(WalkthroughRound { record, threshold, mode });
        if !passed {
            detected = true;
            break;
        }
    }

    let k = rounds.len() as u32;
    let prior = if k >= 2 {
        let last = (rounds[k as usize - 2].record.stage_emitted, rounds[k as usize - 1].record.stage_emitted);
        let order = match last {
            (StageState::V0, StageState::P0) => ProofOrder::ProofFirst,
            _ => ProofOrder::EvidenceFirst,
        };
        stage_probability(last, order)?
    } else {
        0.5
    };
    let posterior = if detected {
        1.0
    } else {
        let survive = config.bluff_success.powi(k as i32);
        let num = prior * survive;
        if num == 0.0 {
            0.0
        } else {
            num / (num + (1.0 - prior))
        }
    };

    session = session.with_doxastic_weight(posterior)?;
    let belief_mode = rounds.last().and_then(|r| r.mode.as_ref()).is_some_and(|m| !m.is_knowledge());
    let q_u0 = session.q_u_probability(detected || belief_mode);
    session = session
        .with_uninformed_beliefs(posterior, q_u0)?
        .with_stage_probabilities(posterior, 1.0 - posterior)?;
    let p0_value = session.h_k_at_p0(!detected)?;
    let v0_verdict = if k >= 2 { Some(session.verify_at_v0(k)?) } else { None };
    let inference = session.infer_stage();

    Ok(Walkthrough {
        config: *config,
        informed,
        detected,
        rounds,
        prior_uninformed: prior,
        posterior_uninformed: posterior,
        session,
        p0_value,
        v0_verdict,
        inference,
    })
}

impl Walkthrough {
    pub fn narrative(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let c = &self.config;
        line(format!(
            "Bob is {} (p_informed = {:.6}, seed = {}).",
            if self.informed { "informed" } else { "uninformed" },
            c.p_informed,
            c.seed
        ));
        for r in &self.rounds {
            let rec = &r.record;
            let class = classify_state(rec.assignment).map_or("none".to_string(), |s| s.to_string());
            let mut text = format!(
                "round {}: stage {} {} (classified {}), Bob {}",
                rec.round_index,
                rec.stage_emitted,
                rec.assignment,
                class,
                if rec.prover_passed { "passes" } else { "fails" }
            );
            if let (Some(h), Some(mode)) = (&r.threshold, &r.mode) {
                text.push_str(&format!("; h_{} = {} -> {}", rec.round_index, format_decimal(h, 6), mode));
            }
            line(text);
        }
        if self.detected {
            line("Alice detects the bluff.".into());
        }
        line(format!(
            "prior P(uninformed) = {:.6}, posterior = {:.6}",
            self.prior_uninformed, self.posterior_uninformed
        ));
        line(format!(
            "validity = {:?}, q_u0 = {:.6}, h at P0 = {:.6}",
            self.session.validity(),
            self.session.q_u0(),
            self.p0_value
        ));
        match &self.v0_verdict {
            Some(V0Verdict::Accept(h)) => line(format!("V0: accept with h_k = {}", format_decimal(h, 6))),
            Some(V0Verdict::RejectFx) => line("V0: feasibility rejected".into()),
            None => {}
        }
        match &self.inference {
            Ok(inf) => {
                let matrix = match inf.decision {
                    crate::signaling::Decision::D1 => LambdaMatrix::d1d2(),
                    crate::signaling::Decision::D2 => LambdaMatrix::d2d1(),
                };
                line(format!(
                    "decision {} ({}): {}; lambda = {}",
                    inf.decision.as_str(),
                    inf.inequality,
                    inf.decision.strategy(),
                    matrix
                ));
            }
            Err(e) => line(format!("decision: {e}")),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeats_under_seed() {
        let c = WalkthroughConfig { seed: 7, ..Default::default() };
        let a = run_walkthrough(&c).unwrap();
        let b = run_walkthrough(&c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.narrative(), b.narrative());
    }

    #[test]
    fn informed_bob_is_d1() {
        let c = WalkthroughConfig { p_informed: 1.0, rounds: 12, ..Default::default() };
        let w = run_walkthrough(&c).unwrap();
        assert!(w.informed && !w.detected);
        assert_eq!(w.rounds.len(), 12);
        assert!(w.posterior_uninformed < 0.5);
        assert_eq!(w.inference.unwrap().decision, crate::signaling::Decision::D1);
    }

    #[test]
    fn caught_bluff_is_d2() {
        let c = WalkthroughConfig { p_informed: 0.0, bluff_success: 0.0, ..Default::default() };
        let w = run_walkthrough(&c).unwrap();
        assert!(w.detected);
        assert_eq!(w.rounds.len(), 1);
        assert_eq!(w.inference.unwrap().decision, crate::signaling::Decision::D2);
    }

    #[test]
    fn rejects_short_runs() {
        let c = WalkthroughConfig { rounds: 1, ..Default::default() };
        assert!(run_walkthrough(&c).is_err());
    }
}
