use std::fmt;

use crate::alternation::StageState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorForm {
    Row,
    Column,
}

/// Two-element stage vector holding P0 and V0 once each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LambdaVector {
    form: VectorForm,
    entries: [StageState; 2],
}

impl LambdaVector {
    pub fn new(form: VectorForm, entries: [StageState; 2]) -> Result<Self> {
        let mut sorted = entries;
        sorted.sort();
        if sorted != [StageState::P0, StageState::V0] {
            return Err(Error::InvalidLambdaVector(format!(
                "must hold P0 and V0 once each, got [{}, {}]",
                entries[0], entries[1]
            )));
        }
        Ok(Self { form, entries })
    }

    /// `λ^P = [P0 V0]`.
    pub const fn proposition() -> Self {
        Self {
            form: VectorForm::Row,
            entries: [StageState::P0, StageState::V0],
        }
    }

    /// `λ^V = [V0; P0]`.
    pub const fn verification() -> Self {
        Self {
            form: VectorForm::Column,
            entries: [StageState::V0, StageState::P0],
        }
    }

    pub fn form(&self) -> VectorForm {
        self.form
    }

    pub fn entries(&self) -> [StageState; 2] {
        self.entries
    }
}

impl fmt::Display for LambdaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.entries;
        match self.form {
            VectorForm::Row => write!(f, "[{a} {b}]"),
            VectorForm::Column => write!(f, "[{a}; {b}]"),
        }
    }
}

/// Row and column form swap and the entries reverse: `[P0 V0] ↔ [V0; P0]`.
pub fn invert_strategy(s: LambdaVector) -> LambdaVector {
    let [a, b] = s.entries;
    LambdaVector {
        form: match s.form {
            VectorForm::Row => VectorForm::Column,
            VectorForm::Column => VectorForm::Row,
        },
        entries: [b, a],
    }
}

/// 2×2 grid of ordered stage pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LambdaMatrix {
    pub entries: [[(StageState, StageState); 2]; 2],
}

impl LambdaMatrix {
    /// `λ^P λ^V`.
    pub fn d1d2() -> Self {
        lambda_product(LambdaVector::proposition(), LambdaVector::verification())
            .expect("canonical forms")
    }

    /// `λ^V λ^P`.
    pub fn d2d1() -> Self {
        lambda_product(LambdaVector::verification(), LambdaVector::proposition())
            .expect("canonical forms")
    }

    /// The opposing canonical product. Each stage symbol is exchanged for its
    /// counterpart, which carries `d1d2` onto `d2d1` and back.
    pub fn complement(&self) -> Result<Self> {
        if *self != Self::d1d2() && *self != Self::d2d1() {
            return Err(Error::NonCanonicalMatrix);
        }
        let flip = |s: StageState| match s {
            StageState::P0 => StageState::V0,
            StageState::V0 => StageState::P0,
            StageState::S0 => StageState::S0,
        };
        let mut entries = self.entries;
        for row in entries.iter_mut() {
            for cell in row.iter_mut() {
                *cell = (flip(cell.0), flip(cell.1));
            }
        }
        Ok(Self { entries })
    }
}

impl fmt::Display for LambdaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = &self.entries;
        write!(
            f,
            "[({},{}) ({},{}); ({},{}) ({},{})]",
            a[0].0, a[0].1, a[1].0, a[1].1, b[0].0, b[0].1, b[1].0, b[1].1
        )
    }
}

/// Outer product of ordered pairs: entry `(i, j)` is `(first[i], second[j])`.
/// One factor must be a row and the other a column.
pub fn lambda_product(first: LambdaVector, second: LambdaVector) -> Result<LambdaMatrix> {
    match (first.form, second.form) {
        (VectorForm::Row, VectorForm::Row) => Err(Error::UndefinedProduct("row")),
        (VectorForm::Column, VectorForm::Column) => Err(Error::UndefinedProduct("column")),
        _ => {
            let a = first.entries;
            let b = second.entries;
            Ok(LambdaMatrix {
                entries: [[(a[0], b[0]), (a[0], b[1])], [(a[1], b[0]), (a[1], b[1])]],
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofOrder {
    EvidenceFirst,
    ProofFirst,
}

impl fmt::Display for ProofOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofOrder::EvidenceFirst => "evidence precedes proof",
            ProofOrder::ProofFirst => "proof precedes evidence",
        })
    }
}

/// Probability the prover is uninformed given an ordered stage pair.
///
/// Matched pairs are tautologies (0). `(V0, P0)` with proof first and
/// `(P0, V0)` with evidence first are 0.5. Anything else has no value.
pub fn stage_probability(pair: (StageState, StageState), order: ProofOrder) -> Result<f64> {
    use StageState::{P0, V0};
    match (pair, order) {
        ((P0, P0), _) | ((V0, V0), _) => Ok(0.0),
        ((V0, P0), ProofOrder::ProofFirst) | ((P0, V0), ProofOrder::EvidenceFirst) => Ok(0.5),
        _ => Err(Error::UnassignedStageProbability {
            pair: format!("({}, {})", pair.0, pair.1),
            order: order.to_string(),
        }),
    }
}
