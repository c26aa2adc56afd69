//! Shared helpers for the integration tests: brute-force oracles that work
//! from the raw definitions over plain sets and matrices, and the CLI
//! golden-file table.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use zkgames::epistemic::{AgentSpec, EpistemicModel, Event, Partition, StateSpace};

pub type States = BTreeSet<usize>;

/// A model over states `0..n`, one cell label per state per agent.
pub fn model_from_labels(labels: &[Vec<usize>]) -> EpistemicModel {
    let n = labels[0].len();
    let agents = labels
        .iter()
        .enumerate()
        .map(|(a, l)| AgentSpec::new(format!("a{a}"), Partition::from_labels(l)))
        .collect();
    EpistemicModel::new(StateSpace::numbered(n).unwrap(), agents).unwrap()
}

pub fn agent_ids(labels: &[Vec<usize>]) -> Vec<String> {
    (0..labels.len()).map(|a| format!("a{a}")).collect()
}

pub fn to_event(s: &States) -> Event {
    s.iter().copied().collect()
}

pub fn from_event(e: &Event) -> States {
    e.iter().collect()
}

pub fn mask_to_set(n: usize, mask: u32) -> States {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// `{w | every state sharing w's label lies in e}`.
pub fn knows(labels: &[usize], e: &States) -> States {
    (0..labels.len())
        .filter(|&w| (0..labels.len()).all(|s| labels[s] != labels[w] || e.contains(&s)))
        .collect()
}

/// `{w | every state of f sharing w's label lies in e}`.
pub fn believes(labels: &[usize], f: &States, e: &States) -> States {
    (0..labels.len())
        .filter(|&w| {
            (0..labels.len()).all(|s| labels[s] != labels[w] || !f.contains(&s) || e.contains(&s))
        })
        .collect()
}

/// Connected components of "some agent puts both states in one cell",
/// found by graph search.
#[allow(clippy::needless_range_loop)]
pub fn components(labels: &[Vec<usize>]) -> Vec<States> {
    let n = labels[0].len();
    let linked = |a: usize, b: usize| labels.iter().any(|l| l[a] == l[b]);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = States::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            comp.insert(x);
            for y in 0..n {
                if !seen[y] && linked(x, y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Union of the components contained in `e`.
pub fn common_knowledge(labels: &[Vec<usize>], e: &States) -> States {
    components(labels)
        .into_iter()
        .filter(|c| c.is_subset(e))
        .flatten()
        .collect()
}

pub fn implies(a: bool, b: bool) -> bool {
    !a || b
}

/// `[(E→S)∨(S→E)] → [(E→S)→F] ∨ [F→(S→E)]` evaluated by hand, returning
/// `(antecedent, left disjunct, right disjunct, whole)`.
pub fn alternation(s: bool, e: bool, f: bool) -> (bool, bool, bool, bool) {
    let es = implies(e, s);
    let se = implies(s, e);
    let antecedent = es || se;
    let lhs = implies(es, f);
    let rhs = implies(f, se);
    (antecedent, lhs, rhs, implies(antecedent, lhs || rhs))
}

/// Pure equilibria of a bimatrix game by a double loop over cells.
pub fn bimatrix_equilibria(u: &[Vec<(i64, i64)>]) -> BTreeSet<(usize, usize)> {
    let rows = u.len();
    let cols = u[0].len();
    let mut out = BTreeSet::new();
    for r in 0..rows {
        for c in 0..cols {
            let row_best = (0..rows).all(|r2| u[r2][c].0 <= u[r][c].0);
            let col_best = (0..cols).all(|c2| u[r][c2].1 <= u[r][c].1);
            if row_best && col_best {
                out.insert((r, c));
            }
        }
    }
    out
}

/// Cells whose value strictly beats all competitors. `literal` restricts
/// competitors to cells sharing neither coordinate.
pub fn dominant(grid: &[Vec<usize>], literal: bool) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for r in 0..grid.len() {
        for c in 0..grid[0].len() {
            let mut wins = true;
            for r2 in 0..grid.len() {
                for c2 in 0..grid[0].len() {
                    let competitor = if literal { r2 != r && c2 != c } else { (r2, c2) != (r, c) };
                    if competitor && grid[r2][c2] >= grid[r][c] {
                        wins = false;
                    }
                }
            }
            if wins {
                out.insert((r, c));
            }
        }
    }
    out
}

/// Golden output files and the command lines that produce them.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("alternation_table.txt", &["alternation-table"]),
    ("alternation_table.csv", &["alternation-table", "--format", "csv"]),
    ("simulate_seed7.csv", &["simulate", "--k-max", "8", "--trials", "100000", "--seed", "7", "--format", "csv"]),
    ("equilibria_pd.csv", &["equilibria", "--game", "fixtures/pd.json", "--format", "csv"]),
    ("equilibria_pd.txt", &["equilibria", "--game", "fixtures/pd.json"]),
    ("equilibria_pennies.csv", &["equilibria", "--game", "fixtures/matching_pennies.json", "--format", "csv"]),
    ("subsolutions_coordination.txt", &["subsolutions", "--game", "fixtures/coordination.json"]),
    ("fuzzy3_literal.txt", &["fuzzy", "--game", "fixtures/fuzzy3.json", "--interpretation", "literal"]),
    ("knows_model4.txt", &["knows", "--model", "fixtures/model4.json", "--agent", "1", "--event", "E"]),
    ("walkthrough_seed7.txt", &["walkthrough", "--seed", "7"]),
    ("walkthrough_seed7.csv", &["walkthrough", "--seed", "7", "--format", "csv"]),
];

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn zkgames(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zkgames"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

pub fn golden_path(name: &str) -> PathBuf {
    root().join("tests").join("golden").join(name)
}
