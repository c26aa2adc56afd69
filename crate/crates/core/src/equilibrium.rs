//! Finite normal-form games with exact rational payoffs.
//!
//! Equilibria are pure profiles from which no single player gains by a
//! unilateral pure deviation. On top of the equilibrium set this module
//! provides Nash's interchangeability test (solvability), maximal
//! interchangeable subsets (sub-solutions) with their factor sets, strong
//! solutions, permutation symmetry, and the partition-model check that
//! knowledge of others' actions yields an equilibrium.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::epistemic::EpistemicModel;
use crate::error::{Error, Result};

pub const MAX_PROFILES: u128 = 1_000_000;
pub const MAX_SUBSOLUTION_SEARCH: usize = 20;

/// One pure strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub Vec<usize>);

impl Profile {
    /// `(s; r_i)`: this profile with player `i` switched to `r`.
    pub fn with(&self, player: usize, strategy: usize) -> Profile {
        let mut p = self.0.clone();
        p[player] = strategy;
        Profile(p)
    }

    pub fn get(&self, player: usize) -> usize {
        self.0[player]
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub type EquilibriumSet = BTreeSet<Profile>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormGame {
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
    /// Row-major over profiles (last player varies fastest), one payoff per
    /// player.
    payoffs: Vec<Vec<BigRational>>,
}

impl NormalFormGame {
    /// `payoffs` lists one payoff vector per profile in row-major order.
    pub fn new(
        players: Vec<String>,
        strategies: Vec<Vec<String>>,
        payoffs: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        if players.is_empty() {
            return Err(Error::InvalidGame("at least one player required".into()));
        }
        if strategies.len() != players.len() {
            return Err(Error::InvalidGame(format!(
                "{} players but {} strategy sets",
                players.len(),
                strategies.len()
            )));
        }
        if let Some(i) = strategies.iter().position(Vec::is_empty) {
            return Err(Error::InvalidGame(format!("player {} has no strategies", players[i])));
        }
        let count = strategies
            .iter()
            .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
            .unwrap_or(u128::MAX);
        if count > MAX_PROFILES {
            return Err(Error::TooManyProfiles(count));
        }
        if payoffs.len() as u128 != count {
            return Err(Error::InvalidGame(format!(
                "{count} profiles but {} payoff entries",
                payoffs.len()
            )));
        }
        if let Some(v) = payoffs.iter().find(|v| v.len() != players.len()) {
            return Err(Error::InvalidGame(format!(
                "payoff vector has {} entries for {} players",
                v.len(),
                players.len()
            )));
        }
        Ok(Self {
            players,
            strategies,
            payoffs,
        })
    }

    /// Build a game by evaluating `payoff` at every profile.
    pub fn from_fn<F>(players: Vec<String>, strategies: Vec<Vec<String>>, payoff: F) -> Result<Self>
    where
        F: Fn(&Profile) -> Vec<BigRational>,
    {
        let sizes: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let payoffs = ProfileIter::new(&sizes).map(|p| payoff(&p)).collect();
        Self::new(players, strategies, payoffs)
    }

    /// Two-player game from a payoff table indexed `[row][col] = (p1, p2)`.
    pub fn bimatrix(table: &[Vec<(i64, i64)>]) -> Result<Self> {
        let rows = table.len();
        let cols = table.first().map_or(0, Vec::len);
        if table.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidGame("ragged payoff table".into()));
        }
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        Self::from_fn(
            vec!["1".into(), "2".into()],
            vec![names(rows), names(cols)],
            |p| {
                let (a, b) = table[p.get(0)][p.get(1)];
                vec![BigRational::from_integer(a.into()), BigRational::from_integer(b.into())]
            },
        )
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn strategies(&self) -> &[Vec<String>] {
        &self.strategies
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs.len()
    }

    pub fn profiles(&self) -> ProfileIter {
        ProfileIter::new(&self.sizes())
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.0.len() != self.num_players() {
            return Err(Error::InvalidProfile(format!(
                "{profile} has {} entries for {} players",
                profile.0.len(),
                self.num_players()
            )));
        }
        for (i, (&s, set)) in profile.0.iter().zip(&self.strategies).enumerate() {
            if s >= set.len() {
                return Err(Error::InvalidProfile(format!(
                    "strategy {s} out of range for player {} ({} strategies)",
                    self.players[i],
                    set.len()
                )));
            }
        }
        Ok(())
    }

    fn flat_index(&self, profile: &Profile) -> usize {
        profile
            .0
            .iter()
            .zip(&self.strategies)
            .fold(0, |acc, (&s, set)| acc * set.len() + s)
    }

    fn payoff_unchecked(&self, profile: &Profile, player: usize) -> &BigRational {
        &self.payoffs[self.flat_index(profile)][player]
    }

    /// Player `player`'s payoff at `profile`.
    pub fn payoff(&self, profile: &Profile, player: usize) -> Result<&BigRational> {
        self.check_profile(profile)?;
        if player >= self.num_players() {
            return Err(Error::InvalidProfile(format!("no player {player}")));
        }
        Ok(self.payoff_unchecked(profile, player))
    }

    /// Render a profile with strategy names.
    pub fn profile_label(&self, profile: &Profile) -> String {
        let names: Vec<&str> = profile
            .0
            .iter()
            .zip(&self.strategies)
            .map(|(&s, set)| set[s].as_str())
            .collect();
        format!("({})", names.join(","))
    }

    /// Replace player `player`'s payoffs `u` by `scale * u + shift`.
    pub fn affine_transform(&self, player: usize, scale: &BigRational, shift: &BigRational) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidGame("affine scale must be positive".into()));
        }
        let mut game = self.clone();
        for v in &mut game.payoffs {
            let u = v
                .get_mut(player)
                .ok_or_else(|| Error::InvalidProfile(format!("no player {player}")))?;
            *u = &*u * scale + shift;
        }
        Ok(game)
    }
}

/// Row-major enumeration of the profiles of a game.
pub struct ProfileIter {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    fn new(sizes: &[usize]) -> Self {
        let next = if sizes.iter().all(|&n| n > 0) {
            Some(vec![0; sizes.len()])
        } else {
            None
        };
        Self {
            sizes: sizes.to_vec(),
            next,
        }
    }
}

impl Iterator for ProfileIter {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Profile(current))
    }
}

/// A probability vector over one player's pure strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy(Vec<BigRational>);

impl MixedStrategy {
    pub fn probabilities(&self) -> &[BigRational] {
        &self.0
    }
}

/// One mixed strategy per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedProfile(Vec<MixedStrategy>);

impl MixedProfile {
    pub fn new(game: &NormalFormGame, mixes: Vec<Vec<BigRational>>) -> Result<Self> {
        if mixes.len() != game.num_players() {
            return Err(Error::InvalidMixedStrategy {
                player: mixes.len(),
                reason: format!("expected {} mixed strategies", game.num_players()),
            });
        }
        let mut out = Vec::with_capacity(mixes.len());
        for (player, (mix, set)) in mixes.into_iter().zip(game.strategies()).enumerate() {
            if mix.len() != set.len() {
                return Err(Error::InvalidMixedStrategy {
                    player,
                    reason: format!("{} weights for {} strategies", mix.len(), set.len()),
                });
            }
            if mix.iter().any(Signed::is_negative) {
                return Err(Error::InvalidMixedStrategy {
                    player,
                    reason: "negative weight".into(),
                });
            }
            let total: BigRational = mix.iter().sum();
            if !total.is_one() {
                return Err(Error::InvalidMixedStrategy {
                    player,
                    reason: format!("weights sum to {total}"),
                });
            }
            out.push(MixedStrategy(mix));
        }
        Ok(Self(out))
    }

    /// Point masses on `profile`.
    pub fn pure(game: &NormalFormGame, profile: &Profile) -> Result<Self> {
        game.check_profile(profile)?;
        let mixes = profile
            .0
            .iter()
            .zip(game.sizes())
            .map(|(&s, n)| {
                (0..n)
                    .map(|a| if a == s { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self::new(game, mixes)
    }

    pub fn strategies(&self) -> &[MixedStrategy] {
        &self.0
    }

    /// This profile with `player` switched to the pure strategy `strategy`.
    fn with_pure(&self, player: usize, strategy: usize) -> Self {
        let mut out = self.clone();
        let n = out.0[player].0.len();
        out.0[player] = MixedStrategy(
            (0..n)
                .map(|a| if a == strategy { BigRational::one() } else { BigRational::zero() })
                .collect(),
        );
        out
    }
}

/// Expectation of `player`'s payoff under the product distribution.
pub fn expected_payoff(game: &NormalFormGame, mixed: &MixedProfile, player: usize) -> Result<BigRational> {
    if player >= game.num_players() {
        return Err(Error::InvalidProfile(format!("no player {player}")));
    }
    if mixed.0.len() != game.num_players() {
        return Err(Error::InvalidMixedStrategy {
            player: mixed.0.len(),
            reason: "mixed profile does not match the game".into(),
        });
    }
    let mut total = BigRational::zero();
    for profile in game.profiles() {
        let weight = profile
            .0
            .iter()
            .zip(&mixed.0)
            .try_fold(BigRational::one(), |acc, (&s, mix)| {
                mix.0.get(s).map(|p| acc * p)
            })
            .ok_or_else(|| Error::InvalidMixedStrategy {
                player,
                reason: "mixed profile does not match the game".into(),
            })?;
        if !weight.is_zero() {
            total += weight * game.payoff_unchecked(&profile, player);
        }
    }
    Ok(total)
}

/// No player improves on `mixed` by switching to a pure strategy.
pub fn is_mixed_equilibrium(game: &NormalFormGame, mixed: &MixedProfile) -> Result<bool> {
    for player in 0..game.num_players() {
        let current = expected_payoff(game, mixed, player)?;
        for alt in 0..game.strategies()[player].len() {
            if expected_payoff(game, &mixed.with_pure(player, alt), player)? > current {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No unilateral pure deviation strictly improves the deviator's payoff.
pub fn is_equilibrium(game: &NormalFormGame, profile: &Profile) -> Result<bool> {
    game.check_profile(profile)?;
    Ok(is_equilibrium_unchecked(game, profile))
}

fn is_equilibrium_unchecked(game: &NormalFormGame, profile: &Profile) -> bool {
    (0..game.num_players()).all(|i| {
        let current = game.payoff_unchecked(profile, i);
        (0..game.strategies()[i].len())
            .all(|r| game.payoff_unchecked(&profile.with(i, r), i) <= current)
    })
}

pub fn pure_equilibria(game: &NormalFormGame) -> EquilibriumSet {
    game.profiles()
        .filter(|p| is_equilibrium_unchecked(game, p))
        .collect()
}

fn closed_under_swaps(set: &EquilibriumSet, players: usize) -> bool {
    set.iter().all(|s| {
        set.iter()
            .all(|t| (0..players).all(|i| set.contains(&s.with(i, t.get(i)))))
    })
}

/// Swapping any player's component between two members stays in the set.
pub fn is_interchangeable(game: &NormalFormGame, set: &EquilibriumSet) -> Result<bool> {
    for s in set {
        if !is_equilibrium(game, s)? {
            return Err(Error::NotAnEquilibrium(game.profile_label(s)));
        }
    }
    Ok(closed_under_swaps(set, game.num_players()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solvability {
    pub solvable: bool,
    pub equilibria: EquilibriumSet,
}

impl Solvability {
    /// The solution, when the game is solvable.
    pub fn solution(&self) -> Option<&EquilibriumSet> {
        self.solvable.then_some(&self.equilibria)
    }
}

/// Solvable when the equilibrium set is non-empty and interchangeable.
pub fn is_solvable(game: &NormalFormGame) -> Solvability {
    let equilibria = pure_equilibria(game);
    let solvable = !equilibria.is_empty() && closed_under_swaps(&equilibria, game.num_players());
    Solvability {
        solvable,
        equilibria,
    }
}

/// Projection of a profile set onto each player's strategies.
pub fn factor_sets(set: &EquilibriumSet, players: usize) -> Vec<BTreeSet<usize>> {
    (0..players)
        .map(|i| set.iter().map(|p| p.get(i)).collect())
        .collect()
}

/// A maximal interchangeable subset of the equilibrium set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubSolution {
    pub profiles: EquilibriumSet,
    pub factor_sets: Vec<BTreeSet<usize>>,
}

impl SubSolution {
    /// Cartesian product of the factor sets.
    pub fn product(&self) -> EquilibriumSet {
        fn expand(factors: &[BTreeSet<usize>], prefix: &mut Vec<usize>, out: &mut EquilibriumSet) {
            match factors.split_first() {
                None => {
                    out.insert(Profile(prefix.clone()));
                }
                Some((head, rest)) => {
                    for &s in head {
                        prefix.push(s);
                        expand(rest, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = EquilibriumSet::new();
        expand(&self.factor_sets, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_product_of_factors(&self) -> bool {
        self.product() == self.profiles
    }
}

/// All maximal interchangeable subsets of the equilibrium set, by
/// exhaustive subset search. An interchangeable set equals the product of its
/// factor sets, which is the pruning test.
pub fn sub_solutions(game: &NormalFormGame) -> Result<Vec<SubSolution>> {
    let equilibria: Vec<Profile> = pure_equilibria(game).into_iter().collect();
    let n = equilibria.len();
    if n > MAX_SUBSOLUTION_SEARCH {
        return Err(Error::TooManyEquilibria(n));
    }
    let players = game.num_players();
    let index: BTreeMap<&Profile, usize> = equilibria.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut interchangeable: Vec<u32> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let members: Vec<&Profile> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| &equilibria[i]).collect();
        let mut factors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); players];
        for p in &members {
            for (i, f) in factors.iter_mut().enumerate() {
                f.insert(p.get(i));
            }
        }
        let product_size: usize = factors.iter().map(BTreeSet::len).product();
        if product_size != members.len() {
            continue;
        }
        let closed = members.iter().all(|s| {
            (0..players).all(|i| {
                factors[i].iter().all(|&r| {
                    index
                        .get(&s.with(i, r))
                        .is_some_and(|&j| mask & (1 << j) != 0)
                })
            })
        });
        if closed {
            interchangeable.push(mask);
        }
    }

    let maximal = interchangeable
        .iter()
        .filter(|&&m| !interchangeable.iter().any(|&o| o != m && o & m == m));
    Ok(maximal
        .map(|&mask| {
            let profiles: EquilibriumSet = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| equilibria[i].clone())
                .collect();
            let factor_sets = factor_sets(&profiles, players);
            SubSolution {
                profiles,
                factor_sets,
            }
        })
        .collect())
}

/// A non-empty interchangeable set of equilibria that also contains every
/// payoff-equal unilateral deviation from its members.
pub fn is_strong_solution(game: &NormalFormGame, candidate: &EquilibriumSet) -> Result<bool> {
    if candidate.is_empty() {
        return Ok(false);
    }
    for s in candidate {
        if !is_equilibrium(game, s)? {
            return Ok(false);
        }
    }
    if !closed_under_swaps(candidate, game.num_players()) {
        return Ok(false);
    }
    Ok(candidate.iter().all(|s| {
        (0..game.num_players()).all(|i| {
            let current = game.payoff_unchecked(s, i);
            (0..game.strategies()[i].len()).all(|r| {
                let dev = s.with(i, r);
                game.payoff_unchecked(&dev, i) != current || candidate.contains(&dev)
            })
        })
    }))
}

/// A player permutation `ψ` with, for each player `i`, a bijection from
/// `i`'s strategies onto those of `ψ(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GamePermutation {
    players: Vec<usize>,
    strategies: Vec<Vec<usize>>,
}

fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| x < map.len() && !std::mem::replace(&mut seen[x], true))
}

impl GamePermutation {
    pub fn new(game: &NormalFormGame, players: Vec<usize>, strategies: Vec<Vec<usize>>) -> Result<Self> {
        let n = game.num_players();
        if players.len() != n || !is_bijection(&players) {
            return Err(Error::PermutationShape(format!(
                "player map {players:?} is not a permutation of {n} players"
            )));
        }
        if strategies.len() != n {
            return Err(Error::PermutationShape(format!(
                "{} strategy maps for {n} players",
                strategies.len()
            )));
        }
        let sizes = game.sizes();
        for (i, map) in strategies.iter().enumerate() {
            let target = players[i];
            if sizes[i] != sizes[target] {
                return Err(Error::PermutationShape(format!(
                    "player {i} has {} strategies but its image {target} has {}",
                    sizes[i], sizes[target]
                )));
            }
            if map.len() != sizes[i] || !is_bijection(map) {
                return Err(Error::PermutationShape(format!(
                    "strategy map {map:?} of player {i} is not a bijection on {} strategies",
                    sizes[i]
                )));
            }
        }
        Ok(Self { players, strategies })
    }

    /// Player permutation with every strategy map the identity.
    pub fn relabel_players(game: &NormalFormGame, players: Vec<usize>) -> Result<Self> {
        let strategies = game.sizes().into_iter().map(|n| (0..n).collect()).collect();
        Self::new(game, players, strategies)
    }

    pub fn identity(game: &NormalFormGame) -> Self {
        Self::relabel_players(game, (0..game.num_players()).collect()).expect("identity is valid")
    }

    pub fn player_map(&self) -> &[usize] {
        &self.players
    }

    fn apply_unchecked(&self, profile: &Profile) -> Profile {
        let mut out = vec![0; profile.0.len()];
        for (i, &s) in profile.0.iter().enumerate() {
            out[self.players[i]] = self.strategies[i][s];
        }
        Profile(out)
    }
}

/// The induced profile map `χ`.
pub fn apply_permutation(game: &NormalFormGame, perm: &GamePermutation, profile: &Profile) -> Result<Profile> {
    game.check_profile(profile)?;
    if perm.players.len() != game.num_players() {
        return Err(Error::PermutationShape("permutation built for another game".into()));
    }
    Ok(perm.apply_unchecked(profile))
}

/// `P_ψ(i)(χ(ξ)) = P_i(ξ)` for every profile and player.
pub fn check_symmetry(game: &NormalFormGame, perm: &GamePermutation) -> Result<bool> {
    if perm.players.len() != game.num_players() || perm.strategies.iter().map(Vec::len).ne(game.sizes()) {
        return Err(Error::PermutationShape("permutation built for another game".into()));
    }
    Ok(game.profiles().all(|xi| {
        let image = perm.apply_unchecked(&xi);
        (0..game.num_players())
            .all(|i| game.payoff_unchecked(&image, perm.players[i]) == game.payoff_unchecked(&xi, i))
    }))
}

/// Fixed points of `χ`.
pub fn symmetric_profiles(game: &NormalFormGame, perm: &GamePermutation) -> Result<Vec<Profile>> {
    if perm.players.len() != game.num_players() {
        return Err(Error::PermutationShape("permutation built for another game".into()));
    }
    Ok(game.profiles().filter(|p| perm.apply_unchecked(p) == *p).collect())
}

/// A player's belief, at each state, about the joint pure strategies of the
/// other players (keyed in player order with the owner omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture {
    pub per_state: Vec<BTreeMap<Vec<usize>, BigRational>>,
}

impl Conjecture {
    /// Point mass on what the others actually play at each state.
    pub fn truthful(player: usize, strategy_map: &[Vec<usize>]) -> Self {
        let states = strategy_map.first().map_or(0, Vec::len);
        let per_state = (0..states)
            .map(|w| {
                let others: Vec<usize> = strategy_map
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != player)
                    .map(|(_, m)| m[w])
                    .collect();
                BTreeMap::from([(others, BigRational::one())])
            })
            .collect();
        Self { per_state }
    }
}

/// At every state where each player's conjecture is a point mass on the
/// others' actual strategies, the realized profile is an equilibrium.
///
/// Game players are matched to model agents by position. `strategy_map` is
/// indexed `[player][state]` and must be constant on each of the player's
/// information cells; so must the conjectures.
pub fn check_epistemic_equilibrium(
    model: &EpistemicModel,
    game: &NormalFormGame,
    strategy_map: &[Vec<usize>],
    conjectures: &[Conjecture],
) -> Result<bool> {
    let n = game.num_players();
    let states = model.space().len();
    if model.agents().len() != n {
        return Err(Error::InvalidGame(format!(
            "model has {} agents, game has {n} players",
            model.agents().len()
        )));
    }
    if strategy_map.len() != n || strategy_map.iter().any(|m| m.len() != states) {
        return Err(Error::InvalidProfile(format!(
            "strategy map must be {n} players × {states} states"
        )));
    }
    if conjectures.len() != n || conjectures.iter().any(|c| c.per_state.len() != states) {
        return Err(Error::InvalidConjecture(format!(
            "expected {n} conjectures over {states} states"
        )));
    }
    let sizes = game.sizes();
    for (i, agent) in model.agents().iter().enumerate() {
        for w in 0..states {
            if strategy_map[i][w] >= sizes[i] {
                return Err(Error::InvalidProfile(format!(
                    "strategy {} out of range for player {i}",
                    strategy_map[i][w]
                )));
            }
            let conj = &conjectures[i].per_state[w];
            let total: BigRational = conj.values().sum();
            if !total.is_one() || conj.values().any(Signed::is_negative) {
                return Err(Error::InvalidConjecture(format!(
                    "player {i} at state {w} is not a distribution"
                )));
            }
            let rep = agent.partition.cell(w).iter().next().unwrap_or(w);
            let name = |s: usize| model.space().name(s).unwrap_or("?").to_string();
            if strategy_map[i][rep] != strategy_map[i][w] {
                return Err(Error::NotMeasurable {
                    player: i,
                    a: name(rep),
                    b: name(w),
                });
            }
            if conjectures[i].per_state[rep] != *conj {
                return Err(Error::InvalidConjecture(format!(
                    "player {i}'s conjecture varies within a cell (states `{}` and `{}`)",
                    name(rep),
                    name(w)
                )));
            }
        }
    }

    for w in 0..states {
        let realized = Profile(strategy_map.iter().map(|m| m[w]).collect());
        let truthful = (0..n).all(|i| {
            let others: Vec<usize> = (0..n).filter(|&j| j != i).map(|j| realized.get(j)).collect();
            conjectures[i].per_state[w].get(&others).is_some_and(One::is_one)
        });
        if truthful && !is_equilibrium_unchecked(game, &realized) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epistemic::{AgentSpec, Partition, StateSpace};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pd() -> NormalFormGame {
        NormalFormGame::bimatrix(&[vec![(3, 3), (0, 5)], vec![(5, 0), (1, 1)]]).unwrap()
    }

    fn pennies() -> NormalFormGame {
        NormalFormGame::bimatrix(&[vec![(1, -1), (-1, 1)], vec![(-1, 1), (1, -1)]]).unwrap()
    }

    fn coordination() -> NormalFormGame {
        NormalFormGame::bimatrix(&[vec![(1, 1), (0, 0)], vec![(0, 0), (1, 1)]]).unwrap()
    }

    fn set(profiles: &[&[usize]]) -> EquilibriumSet {
        profiles.iter().map(|p| Profile(p.to_vec())).collect()
    }

    #[test]
    fn payoff_lookup() {
        let g = pd();
        assert_eq!(g.payoff(&Profile(vec![1, 1]), 0).unwrap(), &q(1, 1));
        assert!(g.payoff(&Profile(vec![2, 0]), 0).is_err());
        let one = NormalFormGame::bimatrix(&[vec![(7, -2)]]).unwrap();
        assert_eq!(one.payoff(&Profile(vec![0, 0]), 1).unwrap(), &q(-2, 1));
        let zero = NormalFormGame::bimatrix(&vec![vec![(0, 0); 2]; 2]).unwrap();
        assert!(zero.profiles().all(|p| zero.payoff(&p, 0).unwrap().is_zero()));
    }

    #[test]
    fn expected_payoffs() {
        let g = pd();
        let pure = MixedProfile::pure(&g, &Profile(vec![0, 1])).unwrap();
        assert_eq!(expected_payoff(&g, &pure, 0).unwrap(), q(0, 1));
        let m = MixedProfile::new(&g, vec![vec![q(1, 2), q(1, 2)], vec![q(0, 1), q(1, 1)]]).unwrap();
        assert_eq!(expected_payoff(&g, &m, 0).unwrap(), q(1, 2));

        let mp = pennies();
        let uniform = MixedProfile::new(&mp, vec![vec![q(1, 2), q(1, 2)]; 2]).unwrap();
        assert_eq!(expected_payoff(&mp, &uniform, 0).unwrap(), q(0, 1));
        assert_eq!(expected_payoff(&mp, &uniform, 1).unwrap(), q(0, 1));
        assert!(is_mixed_equilibrium(&mp, &uniform).unwrap());
    }

    #[test]
    fn invalid_mixes() {
        let g = pd();
        assert!(MixedProfile::new(&g, vec![vec![q(1, 2), q(1, 3)], vec![q(1, 1), q(0, 1)]]).is_err());
        assert!(MixedProfile::new(&g, vec![vec![q(3, 2), q(-1, 2)], vec![q(1, 1), q(0, 1)]]).is_err());
        assert!(MixedProfile::new(&g, vec![vec![q(1, 1)], vec![q(1, 1), q(0, 1)]]).is_err());
    }

    #[test]
    fn equilibrium_checks() {
        let g = pd();
        assert!(is_equilibrium(&g, &Profile(vec![1, 1])).unwrap());
        assert!(!is_equilibrium(&g, &Profile(vec![0, 0])).unwrap());
        let one = NormalFormGame::bimatrix(&[vec![(0, 4)]]).unwrap();
        assert!(is_equilibrium(&one, &Profile(vec![0, 0])).unwrap());
    }

    #[test]
    fn equilibrium_sets() {
        assert_eq!(pure_equilibria(&pd()), set(&[&[1, 1]]));
        assert!(pure_equilibria(&pennies()).is_empty());
        assert_eq!(pure_equilibria(&coordination()), set(&[&[0, 0], &[1, 1]]));
    }

    #[test]
    fn interchangeability() {
        assert!(is_interchangeable(&pd(), &set(&[&[1, 1]])).unwrap());
        assert!(!is_interchangeable(&coordination(), &set(&[&[0, 0], &[1, 1]])).unwrap());
        let zero = NormalFormGame::bimatrix(&vec![vec![(0, 0); 2]; 2]).unwrap();
        assert!(is_interchangeable(&zero, &set(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])).unwrap());
        assert!(matches!(
            is_interchangeable(&pd(), &set(&[&[0, 0]])),
            Err(Error::NotAnEquilibrium(_))
        ));
    }

    #[test]
    fn solvability() {
        let s = is_solvable(&pd());
        assert!(s.solvable);
        assert_eq!(s.solution(), Some(&set(&[&[1, 1]])));
        assert!(!is_solvable(&coordination()).solvable);
        assert!(!is_solvable(&pennies()).solvable);
        assert!(is_solvable(&pennies()).solution().is_none());
    }

    #[test]
    fn sub_solution_search() {
        let subs = sub_solutions(&coordination()).unwrap();
        assert_eq!(subs.len(), 2);
        assert!(subs.iter().all(|s| s.profiles.len() == 1 && s.is_product_of_factors()));

        let subs = sub_solutions(&pd()).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].profiles, set(&[&[1, 1]]));

        let zero = NormalFormGame::bimatrix(&vec![vec![(0, 0); 3]; 2]).unwrap();
        let subs = sub_solutions(&zero).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].profiles, pure_equilibria(&zero));
        assert_eq!(subs[0].factor_sets, vec![BTreeSet::from([0, 1]), BTreeSet::from([0, 1, 2])]);

        assert!(sub_solutions(&pennies()).unwrap().is_empty());
    }

    #[test]
    fn sub_solution_guard() {
        let zero = NormalFormGame::bimatrix(&vec![vec![(0, 0); 5]; 5]).unwrap();
        assert_eq!(sub_solutions(&zero), Err(Error::TooManyEquilibria(25)));
    }

    #[test]
    fn strong_solutions() {
        assert!(is_strong_solution(&pd(), &set(&[&[1, 1]])).unwrap());
        // row player indifferent between rows; column strictly prefers column 0
        let tied = NormalFormGame::bimatrix(&[vec![(1, 1), (0, 0)], vec![(1, 1), (0, 0)]]).unwrap();
        assert_eq!(pure_equilibria(&tied), set(&[&[0, 0], &[1, 0]]));
        assert!(!is_strong_solution(&tied, &set(&[&[0, 0]])).unwrap());
        assert!(is_strong_solution(&tied, &set(&[&[0, 0], &[1, 0]])).unwrap());
        assert!(!is_strong_solution(&pd(), &EquilibriumSet::new()).unwrap());
    }

    #[test]
    fn permutations() {
        let g = pd();
        let id = GamePermutation::identity(&g);
        assert!(g.profiles().all(|p| apply_permutation(&g, &id, &p).unwrap() == p));
        assert!(check_symmetry(&g, &id).unwrap());

        let swap = GamePermutation::relabel_players(&g, vec![1, 0]).unwrap();
        assert!(check_symmetry(&g, &swap).unwrap());
        assert_eq!(apply_permutation(&g, &swap, &Profile(vec![0, 1])).unwrap(), Profile(vec![1, 0]));
        let fixed = symmetric_profiles(&g, &swap).unwrap();
        assert!(fixed.contains(&Profile(vec![1, 1])));
        assert!(pure_equilibria(&g).iter().any(|e| fixed.contains(e)));

        assert!(!check_symmetry(&pennies(), &swap).unwrap());
        assert!(GamePermutation::relabel_players(&g, vec![0, 0]).is_err());
        let three = NormalFormGame::bimatrix(&vec![vec![(0, 0); 3]; 2]).unwrap();
        assert!(GamePermutation::relabel_players(&three, vec![1, 0]).is_err());
    }

    #[test]
    fn affine_invariance() {
        let g = coordination();
        let h = g.affine_transform(0, &q(3, 1), &q(-7, 2)).unwrap();
        assert_eq!(pure_equilibria(&g), pure_equilibria(&h));
        assert!(g.affine_transform(0, &q(0, 1), &q(1, 1)).is_err());
    }

    fn one_state_model() -> EpistemicModel {
        let space = StateSpace::new(["w"]).unwrap();
        EpistemicModel::new(
            space,
            vec![AgentSpec::new("1", Partition::trivial(1)), AgentSpec::new("2", Partition::trivial(1))],
        )
        .unwrap()
    }

    #[test]
    fn epistemic_equilibrium() {
        let m = one_state_model();
        let g = pd();
        let dd = vec![vec![1], vec![1]];
        let conj: Vec<Conjecture> = (0..2).map(|i| Conjecture::truthful(i, &dd)).collect();
        assert!(check_epistemic_equilibrium(&m, &g, &dd, &conj).unwrap());
        let cc = vec![vec![0], vec![0]];
        let conj: Vec<Conjecture> = (0..2).map(|i| Conjecture::truthful(i, &cc)).collect();
        assert!(!check_epistemic_equilibrium(&m, &g, &cc, &conj).unwrap());
    }

    #[test]
    fn epistemic_equilibrium_needs_measurable_strategies() {
        let space = StateSpace::new(["a", "b"]).unwrap();
        let m = EpistemicModel::new(
            space,
            vec![AgentSpec::new("1", Partition::trivial(2)), AgentSpec::new("2", Partition::discrete(2))],
        )
        .unwrap();
        let map = vec![vec![0, 1], vec![1, 1]];
        let conj: Vec<Conjecture> = (0..2).map(|i| Conjecture::truthful(i, &map)).collect();
        assert!(matches!(
            check_epistemic_equilibrium(&m, &pd(), &map, &conj),
            Err(Error::NotMeasurable { player: 0, .. })
        ));
    }
}
