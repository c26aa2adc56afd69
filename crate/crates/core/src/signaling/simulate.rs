//! Monte Carlo estimate of how long an uninformed prover survives.
//!
//! Each trial owns a ChaCha8 stream selected by its index under the master
//! seed, and per-trial results are combined by integer addition, so reports
//! do not depend on how rayon schedules the batches.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::zk_threshold;
use crate::error::{Error, Result};

const BATCH: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    /// Probability that a trial's prover is informed.
    pub p_informed: f64,
    /// Per-round pass probability of an uninformed prover.
    pub bluff_success: f64,
    pub k_max: u32,
    pub trials: u64,
    pub seed: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            p_informed: 0.0,
            bluff_success: 2.0 / 3.0,
            k_max: 8,
            trials: 100_000,
            seed: 0,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_informed", self.p_informed), ("bluff_success", self.bluff_success)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")));
            }
        }
        if self.k_max < 2 {
            return Err(Error::InvalidConfig(format!("k_max = {} must be at least 2", self.k_max)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRow {
    pub k: u32,
    pub theoretical_hk: BigRational,
    /// `bluff_success^k`.
    pub analytic_residual: f64,
    /// Fraction of uninformed provers that passed all of the first `k`
    /// rounds; `None` when no trial drew an uninformed prover.
    pub empirical_undetected: Option<f64>,
    pub uninformed: u64,
    pub undetected: u64,
    /// Fraction of informed provers accepted after `k` rounds.
    pub informed_accepted: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    pub rows: Vec<SimulationRow>,
}

#[derive(Clone)]
struct Tally {
    uninformed: u64,
    informed: u64,
    /// `survived[r]`: uninformed provers that passed exactly `r` rounds
    /// before failing (or `k_max` if never caught).
    survived: Vec<u64>,
}

impl Tally {
    fn new(k_max: u32) -> Self {
        Self {
            uninformed: 0,
            informed: 0,
            survived: vec![0; k_max as usize + 1],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.uninformed += other.uninformed;
        self.informed += other.informed;
        for (a, b) in self.survived.iter_mut().zip(other.survived) {
            *a += b;
        }
        self
    }
}

fn run_trial(config: &SimulationConfig, index: u64, tally: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    if rng.random_bool(config.p_informed) {
        tally.informed += 1;
        return;
    }
    tally.uninformed += 1;
    let mut passed = 0;
    while passed < config.k_max && rng.random_bool(config.bluff_success) {
        passed += 1;
    }
    tally.survived[passed as usize] += 1;
}

pub fn simulate(config: &SimulationConfig) -> Result<SimulationReport> {
    config.validate()?;
    let batches = config.trials.div_ceil(BATCH);
    let tally = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut tally = Tally::new(config.k_max);
            let end = ((b + 1) * BATCH).min(config.trials);
            for index in b * BATCH..end {
                run_trial(config, index, &mut tally);
            }
            tally
        })
        .reduce(|| Tally::new(config.k_max), Tally::merge);

    let rows = (2..=config.k_max)
        .map(|k| {
            let undetected: u64 = tally.survived[k as usize..].iter().sum();
            let empirical_undetected = (tally.uninformed > 0)
                .then(|| undetected as f64 / tally.uninformed as f64);
            Ok(SimulationRow {
                k,
                theoretical_hk: zk_threshold(k)?,
                analytic_residual: config.bluff_success.powi(k as i32),
                empirical_undetected,
                uninformed: tally.uninformed,
                undetected,
                // informed provers pass every round
                informed_accepted: (tally.informed > 0).then_some(1.0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimulationReport {
        config: *config,
        rows,
    })
}
