//! Truth-functional evaluation of the synthetic-alternation formula
//!
//! ```text
//! [(E→S) ∨ (S→E)] → [(E→S)→F] ∨ [F→(S→E)]
//! ```
//!
//! over a subject-knowledge / evidence / feasibility triple, and the
//! classification of such triples into the three stage states.

use std::fmt;

/// Truth values of (subject knowledge, encoded evidence, feasibility).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredicateAssignment {
    pub sx: bool,
    pub ex: bool,
    pub fx: bool,
}

impl PredicateAssignment {
    pub const fn new(sx: bool, ex: bool, fx: bool) -> Self {
        Self { sx, ex, fx }
    }

    /// All eight assignments, ordered (T,T,T) down to (F,F,F) with `sx` as
    /// the most significant bit.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..8u8).rev().map(|bits| Self::new(bits & 4 != 0, bits & 2 != 0, bits & 1 != 0))
    }

    /// The canonical assignment for a stage.
    pub const fn for_stage(stage: StageState) -> Self {
        match stage {
            StageState::S0 => Self::new(true, false, false),
            StageState::P0 => Self::new(true, true, false),
            StageState::V0 => Self::new(true, false, true),
        }
    }
}

impl fmt::Display for PredicateAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |b: bool| if b { 'T' } else { 'F' };
        write!(f, "({},{},{})", t(self.sx), t(self.ex), t(self.fx))
    }
}

/// Initial boundary, proposition start, and verification states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StageState {
    S0,
    P0,
    V0,
}

impl StageState {
    pub fn as_str(self) -> &'static str {
        match self {
            StageState::S0 => "S0",
            StageState::P0 => "P0",
            StageState::V0 => "V0",
        }
    }
}

impl fmt::Display for StageState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value of each part of the formula. `lhs` and `rhs` are the two disjuncts
/// of the consequent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternationVerdict {
    pub antecedent: bool,
    pub lhs: bool,
    pub rhs: bool,
    pub whole: bool,
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

pub fn eval_alternation(a: PredicateAssignment) -> AlternationVerdict {
    let e_to_s = implies(a.ex, a.sx);
    let s_to_e = implies(a.sx, a.ex);
    let antecedent = e_to_s || s_to_e;
    let lhs = implies(e_to_s, a.fx);
    let rhs = implies(a.fx, s_to_e);
    AlternationVerdict {
        antecedent,
        lhs,
        rhs,
        whole: implies(antecedent, lhs || rhs),
    }
}

/// Stage of an assignment, if it matches one of the three table rows.
pub fn classify_state(a: PredicateAssignment) -> Option<StageState> {
    match (a.sx, a.ex, a.fx) {
        (true, false, false) => Some(StageState::S0),
        (true, true, false) => Some(StageState::P0),
        (true, false, true) => Some(StageState::V0),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryRow {
    pub assignment: PredicateAssignment,
    pub verdict: AlternationVerdict,
    pub stage: Option<StageState>,
}

/// Every assignment in [`PredicateAssignment::all`] order.
pub fn boundary_table() -> Vec<BoundaryRow> {
    PredicateAssignment::all()
        .map(|assignment| BoundaryRow {
            assignment,
            verdict: eval_alternation(assignment),
            stage: classify_state(assignment),
        })
        .collect()
}
