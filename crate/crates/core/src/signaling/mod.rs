//! Zero-knowledge signaling: the round-count acceptance threshold
//! `h_k = 1 - 2^(k+1) / 3^k`, the knowledge/belief transition, the case
//! functions a verifier uses to judge whether the prover is informed, and the
//! stage inference over a round history.

mod lambda;
mod simulate;

pub use lambda::{
    invert_strategy, lambda_product, stage_probability, LambdaMatrix, LambdaVector, ProofOrder,
    VectorForm,
};
pub use simulate::{simulate, SimulationConfig, SimulationReport, SimulationRow};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::alternation::{PredicateAssignment, StageState};
use crate::epistemic::{EpistemicModel, Event, Validity};
use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Exact `1 - 2^(k+1) / 3^k`. Defined for `k >= 2`, where it lies in (0, 1).
pub fn zk_threshold(k: u32) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::ThresholdDomain(k));
    }
    let two = BigInt::from(2u8);
    let three = BigInt::from(3u8);
    let num = num::pow(two, k as usize + 1);
    let den = num::pow(three, k as usize);
    Ok(BigRational::one() - BigRational::new(num, den))
}

/// Exact rational value of a finite float.
pub fn exact(value: f64) -> BigRational {
    BigRational::from_float(value).expect("finite value")
}

fn check_unit(what: &'static str, value: f64, open: bool) -> Result<()> {
    let ok = if open {
        value > 0.0 && value < 1.0
    } else {
        (0.0..=1.0).contains(&value)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what,
            value: value.to_string(),
            lo: if open { "0 (exclusive)" } else { "0" },
            hi: if open { "1 (exclusive)" } else { "1" },
        })
    }
}

/// `h_k >= 1 - epsilon`, compared exactly.
pub fn zk_limit_satisfied(k: u32, epsilon: f64) -> Result<bool> {
    check_unit("epsilon", epsilon, true)?;
    let h = zk_threshold(k)?;
    Ok(h >= BigRational::one() - exact(epsilon))
}

/// Smallest `k >= 2` with `h_k >= 1 - epsilon`.
pub fn rounds_for_tolerance(epsilon: f64) -> Result<u32> {
    check_unit("epsilon", epsilon, true)?;
    let mut k = 2;
    while !zk_limit_satisfied(k, epsilon)? {
        k += 1;
    }
    Ok(k)
}

/// One round of a signaling exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundRecord {
    pub round_index: u32,
    pub prover_passed: bool,
    pub stage_emitted: StageState,
    pub assignment: PredicateAssignment,
}

/// Which operator the transition selects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Knowledge { event: String },
    Belief { given: String, event: String },
}

impl Mode {
    pub fn is_knowledge(&self) -> bool {
        matches!(self, Mode::Knowledge { .. })
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Knowledge { event } => write!(f, "K({event})"),
            Mode::Belief { given, event } => write!(f, "B^{given}({event})"),
        }
    }
}

/// Result of the verification-state case function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum V0Verdict {
    /// The prover is taken to be informed with this confidence.
    Accept(BigRational),
    /// Feasibility regarded as likely false.
    RejectFx,
}

/// The verifier's two candidate decision states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    /// Proposition-led: play `f(P0)`, `s ∈ σ`.
    D1,
    /// Verification-led: play `f(V0)`, `t ∈ τ`.
    D2,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::D1 => "d1",
            Decision::D2 => "d2",
        }
    }

    pub fn strategy(self) -> &'static str {
        match self {
            Decision::D1 => "f(P0): s in sigma",
            Decision::D2 => "f(V0): t in tau",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageInference {
    pub decision: Decision,
    /// Which strict inequality fired.
    pub inequality: &'static str,
    pub rounds: u32,
    /// `h_k` for the number of recorded rounds, when `k >= 2`.
    pub threshold: Option<BigRational>,
    pub threshold_accepted: Option<bool>,
}

/// Round history plus the verifier's confidence values.
///
/// All probabilities lie in [0, 1]; `epsilon` lies in (0, 0.5).
#[derive(Debug, Clone, PartialEq)]
pub struct SignalingSession {
    history: Vec<RoundRecord>,
    q_i0: f64,
    q_u0: f64,
    p_u0: f64,
    p_i0: f64,
    doxastic_weight: f64,
    epsilon: f64,
    validity: Validity,
    event: String,
    given: String,
}

impl Default for SignalingSession {
    fn default() -> Self {
        Self {
            history: Vec::new(),
            q_i0: 0.0,
            q_u0: 0.0,
            p_u0: 0.0,
            p_i0: 0.0,
            doxastic_weight: 0.0,
            epsilon: DEFAULT_EPSILON,
            validity: Validity::Universal,
            event: "E".into(),
            given: "F".into(),
        }
    }
}

impl SignalingSession {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::OutOfRange {
                what: "session epsilon",
                value: epsilon.to_string(),
                lo: "0 (exclusive)",
                hi: "0.5 (exclusive)",
            });
        }
        Ok(Self {
            epsilon,
            ..Self::default()
        })
    }

    /// Set the verifier's belief that the prover is uninformed (`q_i0`) and
    /// the probability that the prover is uninformed (`q_u0`).
    pub fn with_uninformed_beliefs(mut self, q_i0: f64, q_u0: f64) -> Result<Self> {
        check_unit("q_i0", q_i0, false)?;
        check_unit("q_u0", q_u0, false)?;
        self.q_i0 = q_i0;
        self.q_u0 = q_u0;
        Ok(self)
    }

    pub fn with_stage_probabilities(mut self, p_u0: f64, p_i0: f64) -> Result<Self> {
        check_unit("p_u0", p_u0, false)?;
        check_unit("p_i0", p_i0, false)?;
        self.p_u0 = p_u0;
        self.p_i0 = p_i0;
        Ok(self)
    }

    /// Current value of the conditional belief, used when a case function
    /// falls through to its belief branch.
    pub fn with_doxastic_weight(mut self, weight: f64) -> Result<Self> {
        check_unit("doxastic weight", weight, false)?;
        self.doxastic_weight = weight;
        Ok(self)
    }

    pub fn with_event_labels(mut self, given: impl Into<String>, event: impl Into<String>) -> Self {
        self.given = given.into();
        self.event = event.into();
        self
    }

    pub fn push_round(&mut self, record: RoundRecord) -> Result<()> {
        if record.round_index == 0 {
            return Err(Error::RoundOrder { prev: 0, got: 0 });
        }
        if let Some(last) = self.history.last() {
            if record.round_index <= last.round_index {
                return Err(Error::RoundOrder {
                    prev: last.round_index,
                    got: record.round_index,
                });
            }
        }
        self.history.push(record);
        Ok(())
    }

    pub fn history(&self) -> &[RoundRecord] {
        &self.history
    }

    pub fn q_i0(&self) -> f64 {
        self.q_i0
    }

    pub fn q_u0(&self) -> f64 {
        self.q_u0
    }

    pub fn p_u0(&self) -> f64 {
        self.p_u0
    }

    pub fn p_i0(&self) -> f64 {
        self.p_i0
    }

    pub fn doxastic_weight(&self) -> f64 {
        self.doxastic_weight
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `Epistemic` once a knowledge transition has been applied.
    pub fn validity(&self) -> Validity {
        self.validity
    }

    /// Knowledge when `h >= 1 - epsilon`, belief otherwise.
    pub fn lambda_transition(&self, h: &BigRational) -> Result<Mode> {
        if h < &BigRational::zero() || h > &BigRational::one() {
            return Err(Error::OutOfRange {
                what: "h",
                value: h.to_string(),
                lo: "0",
                hi: "1",
            });
        }
        if h >= &(BigRational::one() - exact(self.epsilon)) {
            Ok(Mode::Knowledge {
                event: self.event.clone(),
            })
        } else {
            Ok(Mode::Belief {
                given: self.given.clone(),
                event: self.event.clone(),
            })
        }
    }

    /// As [`SignalingSession::lambda_transition`], additionally promoting the
    /// session's validity tag when knowledge mode fires.
    pub fn apply_transition(&mut self, h: &BigRational) -> Result<Mode> {
        let mode = self.lambda_transition(h)?;
        if mode.is_knowledge() {
            self.validity = Validity::Epistemic;
        }
        Ok(mode)
    }

    /// Probability the prover is uninformed: the doxastic weight when the
    /// belief meets the verifier's information cell, otherwise zero (the
    /// prover is taken to be perfectly informed).
    pub fn q_u_probability(&self, belief_holds: bool) -> f64 {
        if belief_holds {
            self.doxastic_weight
        } else {
            0.0
        }
    }

    /// [`SignalingSession::q_u_probability`] with the belief condition
    /// evaluated on a model: `B^given(event) ∩ cell(state) ≠ ∅`.
    pub fn q_u_from_model(
        &self,
        model: &EpistemicModel,
        agent: &str,
        given: &Event,
        event: &Event,
        state: usize,
    ) -> Result<f64> {
        let belief = model.believes(agent, given, event)?;
        let cell = model.cell(agent, state)?;
        Ok(self.q_u_probability(!belief.is_disjoint(cell)))
    }

    /// Proposition-state value: 1 when feasibility agrees with recall,
    /// otherwise the doxastic weight.
    pub fn h_k_at_p0(&self, fx_matches_recall: bool) -> Result<f64> {
        if self.history.is_empty() {
            return Err(Error::EmptyHistory);
        }
        Ok(if fx_matches_recall {
            1.0
        } else {
            self.doxastic_weight
        })
    }

    /// Verification-state value: `h_k` when the prover is certainly informed
    /// (`q_u0 = 0`), otherwise a rejection of feasibility.
    pub fn verify_at_v0(&self, k: u32) -> Result<V0Verdict> {
        let h = zk_threshold(k)?;
        Ok(if self.q_u0 == 0.0 {
            V0Verdict::Accept(h)
        } else {
            V0Verdict::RejectFx
        })
    }

    /// `d1` when `P_U < P_I`, `d2` when `P_I < P_U`; equality is ambiguous.
    pub fn infer_stage(&self) -> Result<StageInference> {
        if self.history.is_empty() {
            return Err(Error::EmptyHistory);
        }
        let (decision, inequality) = if self.p_u0 < self.p_i0 {
            (Decision::D1, "P_U < P_I")
        } else if self.p_i0 < self.p_u0 {
            (Decision::D2, "P_I < P_U")
        } else {
            return Err(Error::AmbiguousStage(self.p_u0.to_string()));
        };
        let rounds = self.history.len() as u32;
        let threshold = zk_threshold(rounds).ok();
        let threshold_accepted = threshold
            .as_ref()
            .map(|h| h >= &(BigRational::one() - exact(self.epsilon)));
        Ok(StageInference {
            decision,
            inequality,
            rounds,
            threshold,
            threshold_accepted,
        })
    }
}

/// Decimal rendering of a rational with `digits` places, rounded half away
/// from zero.
pub fn format_decimal(value: &BigRational, digits: u32) -> String {
    let scale = num::pow(BigInt::from(10u8), digits as usize);
    let scaled = value * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let negative = rounded < BigInt::zero();
    let abs = if negative { -rounded } else { rounded };
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits as usize
        )
    }
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
