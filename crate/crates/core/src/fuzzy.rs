//! Linguistic fuzzy games on an ordinal scale.
//!
//! Each cell of a two-player grid carries a valuation label `v` and a
//! feasibility label `phi`. A cell is an NNE when its valuation strictly
//! beats every competing cell, an FNE when its feasibility does, and an FNNE
//! when both hold. Cell coordinates are zero-based `(row, col)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Distinct labels, ordered from lowest to highest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinguisticScale {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LinguisticScale {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::InvalidScale(format!(
                "need at least 2 labels, got {}",
                labels.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidScale(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self { labels, index })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, position: usize) -> Option<&str> {
        self.labels.get(position).map(String::as_str)
    }
}

/// Order two labels by their position on the scale.
pub fn compare_labels(scale: &LinguisticScale, a: &str, b: &str) -> Result<Ordering> {
    Ok(scale.position(a)?.cmp(&scale.position(b)?))
}

/// Valuation and feasibility, as positions on the game's scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FuzzyCell {
    pub v: usize,
    pub phi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyGame {
    scale: LinguisticScale,
    cells: Vec<Vec<FuzzyCell>>,
    strategy_labels: Option<[Vec<String>; 2]>,
}

impl FuzzyGame {
    pub fn new(scale: LinguisticScale, cells: Vec<Vec<FuzzyCell>>) -> Result<Self> {
        let q1 = cells.len();
        let q2 = cells.first().map_or(0, Vec::len);
        if q1 == 0 || q2 == 0 {
            return Err(Error::InvalidFuzzyGame("grid must be at least 1×1".into()));
        }
        for (r, row) in cells.iter().enumerate() {
            if row.len() != q2 {
                return Err(Error::InvalidFuzzyGame(format!(
                    "row {r} has {} cells, expected {q2}",
                    row.len()
                )));
            }
            if let Some(c) = row.iter().find(|c| c.v >= scale.len() || c.phi >= scale.len()) {
                return Err(Error::InvalidFuzzyGame(format!(
                    "cell {c:?} in row {r} is off the {}-label scale",
                    scale.len()
                )));
            }
        }
        Ok(Self {
            scale,
            cells,
            strategy_labels: None,
        })
    }

    /// Build from label grids.
    pub fn from_labels(scale: LinguisticScale, v: &[Vec<String>], phi: &[Vec<String>]) -> Result<Self> {
        if v.len() != phi.len() || v.iter().zip(phi).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::InvalidFuzzyGame("v and phi grids differ in shape".into()));
        }
        let cells = v
            .iter()
            .zip(phi)
            .map(|(vr, pr)| {
                vr.iter()
                    .zip(pr)
                    .map(|(a, b)| {
                        Ok(FuzzyCell {
                            v: scale.position(a)?,
                            phi: scale.position(b)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(scale, cells)
    }

    pub fn with_strategy_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.q1() || cols.len() != self.q2() {
            return Err(Error::InvalidFuzzyGame(format!(
                "strategy labels must be {} rows and {} columns",
                self.q1(),
                self.q2()
            )));
        }
        self.strategy_labels = Some([rows, cols]);
        Ok(self)
    }

    pub fn scale(&self) -> &LinguisticScale {
        &self.scale
    }

    pub fn q1(&self) -> usize {
        self.cells.len()
    }

    pub fn q2(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cells(&self) -> &[Vec<FuzzyCell>] {
        &self.cells
    }

    pub fn cell(&self, row: usize, col: usize) -> FuzzyCell {
        self.cells[row][col]
    }

    pub fn strategy_labels(&self) -> Option<&[Vec<String>; 2]> {
        self.strategy_labels.as_ref()
    }
}

/// Which cells compete with a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interpretation {
    /// Only cells differing from the candidate in both coordinates.
    Literal,
    /// Every other cell.
    Strict,
}

impl Interpretation {
    pub fn as_str(self) -> &'static str {
        match self {
            Interpretation::Literal => "literal",
            Interpretation::Strict => "strict",
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Interpretation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "literal" => Ok(Interpretation::Literal),
            "strict" => Ok(Interpretation::Strict),
            other => Err(format!("unknown interpretation `{other}` (expected literal or strict)")),
        }
    }
}

pub type CellSet = BTreeSet<(usize, usize)>;

fn competes(interp: Interpretation, star: (usize, usize), other: (usize, usize)) -> bool {
    match interp {
        Interpretation::Literal => star.0 != other.0 && star.1 != other.1,
        Interpretation::Strict => star != other,
    }
}

fn dominant_cells<F>(game: &FuzzyGame, interp: Interpretation, value: F) -> CellSet
where
    F: Fn(FuzzyCell) -> usize,
{
    let coords: Vec<(usize, usize)> = (0..game.q1())
        .flat_map(|r| (0..game.q2()).map(move |c| (r, c)))
        .collect();
    coords
        .iter()
        .copied()
        .filter(|&star| {
            let best = value(game.cell(star.0, star.1));
            coords
                .iter()
                .filter(|&&other| competes(interp, star, other))
                .all(|&(r, c)| value(game.cell(r, c)) < best)
        })
        .collect()
}

/// Cells whose valuation strictly exceeds every competitor's.
pub fn find_nne(game: &FuzzyGame, interp: Interpretation) -> CellSet {
    dominant_cells(game, interp, |c| c.v)
}

/// Cells whose feasibility strictly exceeds every competitor's.
pub fn find_fne(game: &FuzzyGame, interp: Interpretation) -> CellSet {
    dominant_cells(game, interp, |c| c.phi)
}

pub fn find_fnne(game: &FuzzyGame, interp: Interpretation) -> CellSet {
    find_nne(game, interp)
        .intersection(&find_fne(game, interp))
        .copied()
        .collect()
}
