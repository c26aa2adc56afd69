//! Finite partition models: knowledge, conditional belief, group and common
//! knowledge, public events, and belief revision under dominant knowledge.
//!
//! States are addressed by their position in the [`StateSpace`]; agents by
//! their identifier string. Events are extensional sets of state positions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Ordered, non-empty list of distinct state names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl StateSpace {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyStateSpace);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        Ok(Self { names, index })
    }

    /// States named `0..n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: usize) -> Option<&str> {
        self.names.get(state).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn event<'a, I>(&self, names: I) -> Result<Event>
    where
        I: IntoIterator<Item = &'a str>,
    {
        names.into_iter().map(|n| self.index_of(n)).collect()
    }

    pub fn full(&self) -> Event {
        (0..self.len()).collect()
    }

    pub fn contains_event(&self, event: &Event) -> Result<()> {
        match event.iter().find(|&s| s >= self.len()) {
            Some(index) => Err(Error::StateOutOfRange {
                index,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// Render an event as `{a,b,c}` using state names.
    pub fn display(&self, event: &Event) -> String {
        let names: Vec<&str> = event.iter().filter_map(|s| self.name(s)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A set of states.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event(BTreeSet<usize>);

impl Event {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, state: usize) -> bool {
        self.0.contains(&state)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event(self.0.intersection(&other.0).copied().collect())
    }

    pub fn union(&self, other: &Event) -> Event {
        Event(self.0.union(&other.0).copied().collect())
    }

    pub fn insert(&mut self, state: usize) -> bool {
        self.0.insert(state)
    }
}

impl FromIterator<usize> for Event {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Event(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for Event {
    fn from(states: [usize; N]) -> Self {
        states.into_iter().collect()
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Outcome of checking a candidate cell list against the two partition
/// properties.
///
/// `p1` holds when every state lies in some cell and every cell is a
/// non-empty subset of the space; `p2` holds when two listed cells never
/// share a state unless they are the same cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionReport {
    pub p1: bool,
    pub p2: bool,
}

impl PartitionReport {
    pub fn is_partition(&self) -> bool {
        self.p1 && self.p2
    }
}

/// Classify a candidate list of cells over `n` states. Never fails.
pub fn check_partition_properties(n: usize, cells: &[Vec<usize>]) -> PartitionReport {
    let well_formed = cells
        .iter()
        .all(|c| !c.is_empty() && c.iter().all(|&s| s < n));
    let covered = (0..n).all(|s| cells.iter().any(|c| c.contains(&s)));

    let sets: Vec<BTreeSet<usize>> = cells.iter().map(|c| c.iter().copied().collect()).collect();
    let mut p2 = true;
    'outer: for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_disjoint(b) {
                p2 = false;
                break 'outer;
            }
        }
    }
    PartitionReport {
        p1: well_formed && covered,
        p2,
    }
}

/// Pairwise-disjoint, non-empty cells covering the state space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Event>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Build a partition over `n` states; the error string says which
    /// property failed.
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> std::result::Result<Self, String> {
        let report = check_partition_properties(n, &cells);
        if !report.p1 {
            return Err("cells must be non-empty, within the space, and cover every state".into());
        }
        if !report.p2 {
            return Err("cells must be pairwise disjoint".into());
        }
        let mut cell_of = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            for &s in cell {
                cell_of[s] = i;
            }
        }
        let cells = cells.into_iter().map(|c| c.into_iter().collect()).collect();
        Ok(Self { cells, cell_of })
    }

    /// The partition with a single cell.
    pub fn trivial(n: usize) -> Self {
        Self {
            cells: vec![(0..n).collect()],
            cell_of: vec![0; n],
        }
    }

    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        Self {
            cells: (0..n).map(|s| Event::from([s])).collect(),
            cell_of: (0..n).collect(),
        }
    }

    /// Partition from a cell label per state.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (s, &l) in labels.iter().enumerate() {
            by_label.entry(l).or_default().push(s);
        }
        Self::new(labels.len(), by_label.into_values().collect()).expect("labels induce a partition")
    }

    pub fn cells(&self) -> &[Event] {
        &self.cells
    }

    pub fn cell(&self, state: usize) -> &Event {
        &self.cells[self.cell_of[state]]
    }

    pub fn cell_index(&self, state: usize) -> usize {
        self.cell_of[state]
    }

    pub fn num_states(&self) -> usize {
        self.cell_of.len()
    }
}

/// Serial / transitive / euclidean flags of an accessibility relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameReport {
    pub serial: bool,
    pub transitive: bool,
    pub euclidean: bool,
}

/// Exhaustive pair and triple checks of a relation over `n` states.
#[allow(clippy::needless_range_loop)]
pub fn check_frame_properties(n: usize, pairs: &[(usize, usize)]) -> Result<FrameReport> {
    let mut rel = vec![vec![false; n]; n];
    for &(s, t) in pairs {
        for x in [s, t] {
            if x >= n {
                return Err(Error::StateOutOfRange { index: x, size: n });
            }
        }
        rel[s][t] = true;
    }
    let serial = (0..n).all(|s| rel[s].iter().any(|&r| r));
    let mut transitive = true;
    let mut euclidean = true;
    for a in 0..n {
        for b in 0..n {
            if !rel[a][b] {
                continue;
            }
            for c in 0..n {
                if rel[b][c] && !rel[a][c] {
                    transitive = false;
                }
                // aRb and aRc imply bRc
                if rel[a][c] && !rel[b][c] {
                    euclidean = false;
                }
            }
        }
    }
    Ok(FrameReport {
        serial,
        transitive,
        euclidean,
    })
}

/// Accessibility relation with its cached property flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoxasticFrame {
    relation: BTreeSet<(usize, usize)>,
    report: FrameReport,
}

impl DoxasticFrame {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let report = check_frame_properties(n, &pairs)?;
        Ok(Self {
            relation: pairs.into_iter().collect(),
            report,
        })
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn report(&self) -> FrameReport {
        self.report
    }

    /// Serial, transitive and euclidean (a KD45 belief frame).
    pub fn is_kd45(&self) -> bool {
        let r = self.report;
        r.serial && r.transitive && r.euclidean
    }
}

/// Validity tag on a proposition: universally consistent (Θ) or epistemically
/// valid (Φ). Promotion from one to the other happens in the signaling
/// module when a knowledge transition fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Validity {
    Universal,
    Epistemic,
}

/// One agent of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentSpec {
    pub id: String,
    pub partition: Partition,
    pub frame: Option<DoxasticFrame>,
}

impl AgentSpec {
    pub fn new(id: impl Into<String>, partition: Partition) -> Self {
        Self {
            id: id.into(),
            partition,
            frame: None,
        }
    }

    pub fn with_frame(mut self, frame: DoxasticFrame) -> Self {
        self.frame = Some(frame);
        self
    }
}

/// Conditional belief together with the states at which it holds only
/// vacuously (the conditioning event misses the agent's cell entirely).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefReport {
    pub event: Event,
    pub vacuous: Event,
}

/// State space, one information partition per agent, optional belief frames,
/// optional outcome labels, and named events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicModel {
    space: StateSpace,
    agents: Vec<AgentSpec>,
    outcomes: Option<BTreeMap<usize, String>>,
    named_events: BTreeMap<String, Event>,
}

impl EpistemicModel {
    pub fn new(space: StateSpace, agents: Vec<AgentSpec>) -> Result<Self> {
        let n = space.len();
        let mut seen = BTreeSet::new();
        for agent in &agents {
            if !seen.insert(agent.id.as_str()) {
                return Err(Error::DuplicateAgent(agent.id.clone()));
            }
            if agent.partition.num_states() != n {
                return Err(Error::InvalidPartition {
                    agent: agent.id.clone(),
                    reason: format!(
                        "partition covers {} states, space has {n}",
                        agent.partition.num_states()
                    ),
                });
            }
        }
        Ok(Self {
            space,
            agents,
            outcomes: None,
            named_events: BTreeMap::new(),
        })
    }

    pub fn with_outcomes(mut self, outcomes: BTreeMap<usize, String>) -> Result<Self> {
        if let Some(&index) = outcomes.keys().find(|&&s| s >= self.space.len()) {
            return Err(Error::StateOutOfRange {
                index,
                size: self.space.len(),
            });
        }
        self.outcomes = Some(outcomes);
        Ok(self)
    }

    pub fn with_named_event(mut self, name: impl Into<String>, event: Event) -> Result<Self> {
        self.space.contains_event(&event)?;
        self.named_events.insert(name.into(), event);
        Ok(self)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn agents(&self) -> &[AgentSpec] {
        &self.agents
    }

    pub fn agent_ids(&self) -> Vec<&str> {
        self.agents.iter().map(|a| a.id.as_str()).collect()
    }

    pub fn outcomes(&self) -> Option<&BTreeMap<usize, String>> {
        self.outcomes.as_ref()
    }

    pub fn named_events(&self) -> &BTreeMap<String, Event> {
        &self.named_events
    }

    pub fn named_event(&self, name: &str) -> Option<&Event> {
        self.named_events.get(name)
    }

    pub fn agent_index(&self, agent: &str) -> Result<usize> {
        self.agents
            .iter()
            .position(|a| a.id == agent)
            .ok_or_else(|| Error::UnknownAgent(agent.to_string()))
    }

    pub fn partition(&self, agent: &str) -> Result<&Partition> {
        Ok(&self.agents[self.agent_index(agent)?].partition)
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state < self.space.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                index: state,
                size: self.space.len(),
            })
        }
    }

    /// The cell of `agent`'s partition containing `state`.
    pub fn cell(&self, agent: &str, state: usize) -> Result<&Event> {
        let partition = self.partition(agent)?;
        self.check_state(state)?;
        Ok(partition.cell(state))
    }

    pub fn partition_report(&self, agent: &str) -> Result<PartitionReport> {
        let partition = self.partition(agent)?;
        let cells: Vec<Vec<usize>> = partition.cells().iter().map(|c| c.iter().collect()).collect();
        Ok(check_partition_properties(self.space.len(), &cells))
    }

    /// States whose cell lies inside `event`.
    pub fn knows(&self, agent: &str, event: &Event) -> Result<Event> {
        let partition = self.partition(agent)?;
        self.space.contains_event(event)?;
        Ok(Self::knows_with(partition, event))
    }

    fn knows_with(partition: &Partition, event: &Event) -> Event {
        partition
            .cells()
            .iter()
            .filter(|c| c.is_subset(event))
            .fold(Event::empty(), |acc, c| acc.union(c))
    }

    /// States at which `given ∩ cell` lies inside `event`.
    ///
    /// Where `given` misses the cell altogether the state is included
    /// vacuously; see [`EpistemicModel::belief_report`].
    pub fn believes(&self, agent: &str, given: &Event, event: &Event) -> Result<Event> {
        Ok(self.belief_report(agent, given, event)?.event)
    }

    pub fn belief_report(&self, agent: &str, given: &Event, event: &Event) -> Result<BeliefReport> {
        let partition = self.partition(agent)?;
        self.space.contains_event(given)?;
        self.space.contains_event(event)?;
        let mut believed = Event::empty();
        let mut vacuous = Event::empty();
        for cell in partition.cells() {
            let evidence = given.intersection(cell);
            if evidence.is_subset(event) {
                believed = believed.union(cell);
                if evidence.is_empty() {
                    vacuous = vacuous.union(cell);
                }
            }
        }
        Ok(BeliefReport {
            event: believed,
            vacuous,
        })
    }

    fn partitions_of(&self, agents: &[&str]) -> Result<Vec<&Partition>> {
        if agents.is_empty() {
            return Err(Error::EmptyAgentSet);
        }
        agents.iter().map(|a| self.partition(a)).collect()
    }

    /// Everyone in `agents` knows `event`.
    pub fn group_knows(&self, agents: &[&str], event: &Event) -> Result<Event> {
        let partitions = self.partitions_of(agents)?;
        self.space.contains_event(event)?;
        Ok(Self::group_knows_with(&partitions, event))
    }

    fn group_knows_with(partitions: &[&Partition], event: &Event) -> Event {
        partitions
            .iter()
            .map(|p| Self::knows_with(p, event))
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_default()
    }

    /// Iterate group knowledge from `event` until it stops shrinking.
    pub fn common_knowledge(&self, agents: &[&str], event: &Event) -> Result<Event> {
        let partitions = self.partitions_of(agents)?;
        self.space.contains_event(event)?;
        let mut current = event.clone();
        loop {
            let next = Self::group_knows_with(&partitions, &current);
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Smallest event containing `state` that is a union of cells for every
    /// agent.
    pub fn minimal_public_event(&self, state: usize) -> Result<Event> {
        let ids = self.agent_ids();
        self.minimal_public_event_among(&ids, state)
    }

    /// As [`EpistemicModel::minimal_public_event`], restricted to `agents`.
    pub fn minimal_public_event_among(&self, agents: &[&str], state: usize) -> Result<Event> {
        let partitions = self.partitions_of(agents)?;
        self.check_state(state)?;
        let mut current = Event::from([state]);
        loop {
            let next = current
                .iter()
                .flat_map(|s| partitions.iter().map(move |p| p.cell(s)))
                .fold(current.clone(), |acc, c| acc.union(c));
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// True when `event` is a union of cells for every agent. The empty
    /// event is public.
    pub fn is_public_event(&self, event: &Event) -> bool {
        self.agents.iter().all(|a| {
            event
                .iter()
                .all(|s| s < self.space.len() && a.partition.cell(s).is_subset(event))
        })
    }
}

/// Events an agent currently holds as beliefs, each with the conditioning
/// event that justified it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BeliefState {
    pub agent: String,
    pub beliefs: BTreeSet<Event>,
    pub justifications: BTreeMap<Event, Event>,
}

impl BeliefState {
    pub fn new(agent: impl Into<String>) -> Self {
        Self {
            agent: agent.into(),
            ..Default::default()
        }
    }

    pub fn hold(mut self, belief: Event, justification: Option<Event>) -> Self {
        if let Some(f) = justification {
            self.justifications.insert(belief.clone(), f);
        }
        self.beliefs.insert(belief);
        self
    }

    /// No held belief is disjoint from `knowledge`.
    pub fn is_consistent_with(&self, knowledge: &Event) -> bool {
        self.beliefs.iter().all(|b| !b.is_disjoint(knowledge))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Revision {
    pub state: BeliefState,
    /// Beliefs that became empty and were dropped, in their pre-revision form.
    pub discarded: Vec<Event>,
}

/// Intersect every held belief with `knowledge`; beliefs that vanish are
/// discarded.
pub fn revise_beliefs(state: &BeliefState, knowledge: &Event) -> Result<Revision> {
    if knowledge.is_empty() {
        return Err(Error::EmptyKnowledge);
    }
    let mut revised = BeliefState::new(state.agent.clone());
    let mut discarded = Vec::new();
    for belief in &state.beliefs {
        let kept = belief.intersection(knowledge);
        if kept.is_empty() {
            discarded.push(belief.clone());
            continue;
        }
        if let Some(f) = state.justifications.get(belief) {
            revised.justifications.entry(kept.clone()).or_insert_with(|| f.clone());
        }
        revised.beliefs.insert(kept);
    }
    Ok(Revision {
        state: revised,
        discarded,
    })
}

/// Every held belief meets the union of the strategy events.
pub fn check_congruence(state: &BeliefState, strategy_events: &[Event]) -> bool {
    let strategies = strategy_events
        .iter()
        .fold(Event::empty(), |acc, e| acc.union(e));
    state.beliefs.iter().all(|b| !b.is_disjoint(&strategies))
}
