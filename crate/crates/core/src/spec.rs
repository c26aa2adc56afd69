//! JSON input documents: models, games, fuzzy games and simulation configs.
//!
//! Parsing rejects unknown keys and reports every problem it finds together
//! with the JSON path of the offending field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::epistemic::{
    check_partition_properties, AgentSpec, DoxasticFrame, EpistemicModel, Event, Partition,
    PartitionReport, StateSpace,
};
use crate::equilibrium::NormalFormGame;
use crate::fuzzy::{FuzzyGame, LinguisticScale};
use crate::signaling::SimulationConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// One or more located problems with an input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub diagnostics: Vec<Diagnostic>,
}

impl SpecError {
    fn single(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            diagnostics: vec![Diagnostic::new(path, message)],
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    Model,
    Game,
    Fuzzy,
    Simulation,
}

/// A state, agent or strategy identifier written either as a string or an
/// integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ident {
    Int(i64),
    Name(String),
}

impl Ident {
    pub fn name(&self) -> String {
        match self {
            Ident::Int(i) => i.to_string(),
            Ident::Name(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub pairs: Vec<[Ident; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentDoc {
    pub id: Ident,
    pub partition: Vec<Vec<Ident>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub states: Vec<Ident>,
    pub agents: Vec<AgentDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub events: BTreeMap<String, Vec<Ident>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<BTreeMap<String, String>>,
}

/// A rational written as a JSON number or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Number(serde_json::Number),
    Text(String),
}

impl RationalDoc {
    pub fn value(&self) -> Option<BigRational> {
        match self {
            RationalDoc::Number(n) => parse_rational(&n.to_string()),
            RationalDoc::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub players: Vec<String>,
    pub strategies: Vec<Vec<String>>,
    pub payoffs: BTreeMap<String, Vec<RationalDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyDoc {
    pub scale: Vec<String>,
    pub v: Vec<Vec<String>>,
    pub phi: Vec<Vec<String>>,
    /// Optional row and column strategy names.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategies: Option<[Vec<String>; 2]>,
}

fn default_bluff() -> f64 {
    2.0 / 3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationDoc {
    #[serde(default)]
    pub p_informed: f64,
    #[serde(default = "default_bluff")]
    pub bluff_success: f64,
    pub k_max: u32,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecDocument {
    Model(ModelDoc),
    Game(GameDoc),
    Fuzzy(FuzzyDoc),
    Simulation(SimulationDoc),
}

impl SpecDocument {
    pub fn kind(&self) -> SpecKind {
        match self {
            SpecDocument::Model(_) => SpecKind::Model,
            SpecDocument::Game(_) => SpecKind::Game,
            SpecDocument::Fuzzy(_) => SpecKind::Fuzzy,
            SpecDocument::Simulation(_) => SpecKind::Simulation,
        }
    }

    /// Pretty-printed JSON that parses back to an equal document.
    pub fn emit(&self) -> String {
        let out = match self {
            SpecDocument::Model(d) => serde_json::to_string_pretty(d),
            SpecDocument::Game(d) => serde_json::to_string_pretty(d),
            SpecDocument::Fuzzy(d) => serde_json::to_string_pretty(d),
            SpecDocument::Simulation(d) => serde_json::to_string_pretty(d),
        };
        out.expect("documents serialize")
    }
}

fn deserialize<T: serde::de::DeserializeOwned>(bytes: &[u8]) -> Result<T, SpecError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| SpecError::single("$", format!("input is not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_string() } else { format!("$.{path}") };
        SpecError::single(path, e.into_inner().to_string())
    })
}

fn finish<T>(doc: T, diagnostics: Vec<Diagnostic>) -> Result<T, SpecError> {
    if diagnostics.is_empty() {
        Ok(doc)
    } else {
        Err(SpecError { diagnostics })
    }
}

/// Parse and validate a document of the given kind.
pub fn parse_spec(bytes: &[u8], kind: SpecKind) -> Result<SpecDocument, SpecError> {
    Ok(match kind {
        SpecKind::Model => {
            let doc: ModelDoc = deserialize(bytes)?;
            let d = doc.validate();
            SpecDocument::Model(finish(doc, d)?)
        }
        SpecKind::Game => {
            let doc: GameDoc = deserialize(bytes)?;
            let d = doc.validate();
            SpecDocument::Game(finish(doc, d)?)
        }
        SpecKind::Fuzzy => {
            let doc: FuzzyDoc = deserialize(bytes)?;
            let d = doc.validate();
            SpecDocument::Fuzzy(finish(doc, d)?)
        }
        SpecKind::Simulation => {
            let doc: SimulationDoc = deserialize(bytes)?;
            let d = doc.validate();
            SpecDocument::Simulation(finish(doc, d)?)
        }
    })
}

/// Structural parse of a model document without semantic validation, for
/// reporting on malformed partitions.
pub fn parse_model_unvalidated(bytes: &[u8]) -> Result<ModelDoc, SpecError> {
    deserialize(bytes)
}

/// Parse `p/q`, a decimal, or a decimal with exponent, exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        return (!d.is_zero()).then(|| n / d);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

fn state_lookup(states: &[Ident]) -> BTreeMap<String, usize> {
    states.iter().enumerate().map(|(i, s)| (s.name(), i)).collect()
}

impl ModelDoc {
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push(Diagnostic::new("$.states", "non-empty Ω required"));
        }
        let mut seen = BTreeSet::new();
        for (i, s) in self.states.iter().enumerate() {
            if !seen.insert(s.name()) {
                out.push(Diagnostic::new(
                    format!("$.states[{i}]"),
                    format!("duplicate state `{}`", s.name()),
                ));
            }
        }
        let lookup = state_lookup(&self.states);
        let n = self.states.len();
        let check_ref = |out: &mut Vec<Diagnostic>, path: String, id: &Ident| {
            if !lookup.contains_key(&id.name()) {
                out.push(Diagnostic::new(path, format!("unknown state `{}`", id.name())));
            }
        };

        if self.agents.is_empty() {
            out.push(Diagnostic::new("$.agents", "at least one agent required"));
        }
        let mut agent_ids = BTreeSet::new();
        for (a, agent) in self.agents.iter().enumerate() {
            if !agent_ids.insert(agent.id.name()) {
                out.push(Diagnostic::new(
                    format!("$.agents[{a}].id"),
                    format!("duplicate agent `{}`", agent.id.name()),
                ));
            }
            let mut dangling = false;
            for (c, cell) in agent.partition.iter().enumerate() {
                for (k, s) in cell.iter().enumerate() {
                    if !lookup.contains_key(&s.name()) {
                        dangling = true;
                    }
                    check_ref(&mut out, format!("$.agents[{a}].partition[{c}][{k}]"), s);
                }
            }
            if !dangling && n > 0 {
                let report = self.partition_report(a);
                if !report.p1 {
                    out.push(Diagnostic::new(
                        format!("$.agents[{a}].partition"),
                        "P1 fails: every state must lie in a non-empty cell",
                    ));
                }
                if !report.p2 {
                    out.push(Diagnostic::new(
                        format!("$.agents[{a}].partition"),
                        "P2 fails: cells overlap",
                    ));
                }
            }
            if let Some(frame) = &agent.frame {
                for (p, pair) in frame.pairs.iter().enumerate() {
                    for (k, s) in pair.iter().enumerate() {
                        check_ref(&mut out, format!("$.agents[{a}].frame.pairs[{p}][{k}]"), s);
                    }
                }
            }
        }
        for (name, states) in &self.events {
            for (k, s) in states.iter().enumerate() {
                check_ref(&mut out, format!("$.events.{name}[{k}]"), s);
            }
        }
        if let Some(outcomes) = &self.outcomes {
            for key in outcomes.keys() {
                if !lookup.contains_key(key) {
                    out.push(Diagnostic::new(
                        format!("$.outcomes.{key}"),
                        format!("unknown state `{key}`"),
                    ));
                }
            }
        }
        out
    }

    /// Partition properties of agent `a`'s cells; unknown states count as
    /// out of range.
    pub fn partition_report(&self, a: usize) -> PartitionReport {
        let lookup = state_lookup(&self.states);
        let n = self.states.len();
        let cells: Vec<Vec<usize>> = self.agents[a]
            .partition
            .iter()
            .map(|c| c.iter().map(|s| lookup.get(&s.name()).copied().unwrap_or(n)).collect())
            .collect();
        check_partition_properties(n, &cells)
    }

    pub fn to_model(&self) -> Result<EpistemicModel, SpecError> {
        finish((), self.validate())?;
        let err = |e: crate::error::Error| SpecError::single("$", e.to_string());
        let space = StateSpace::new(self.states.iter().map(Ident::name)).map_err(err)?;
        let n = space.len();
        let idx = |s: &Ident| space.index_of(&s.name());
        let mut agents = Vec::with_capacity(self.agents.len());
        for (a, doc) in self.agents.iter().enumerate() {
            let cells = doc
                .partition
                .iter()
                .map(|c| c.iter().map(idx).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let partition = Partition::new(n, cells)
                .map_err(|m| SpecError::single(format!("$.agents[{a}].partition"), m))?;
            let mut agent = AgentSpec::new(doc.id.name(), partition);
            if let Some(frame) = &doc.frame {
                let pairs = frame
                    .pairs
                    .iter()
                    .map(|[s, t]| Ok((idx(s)?, idx(t)?)))
                    .collect::<Result<Vec<_>, crate::error::Error>>()
                    .map_err(err)?;
                agent = agent.with_frame(DoxasticFrame::new(n, pairs).map_err(err)?);
            }
            agents.push(agent);
        }
        let mut model = EpistemicModel::new(space, agents).map_err(err)?;
        for (name, states) in &self.events {
            let event: Event = states
                .iter()
                .map(|s| model.space().index_of(&s.name()))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            model = model.with_named_event(name.clone(), event).map_err(err)?;
        }
        if let Some(outcomes) = &self.outcomes {
            let map = outcomes
                .iter()
                .map(|(k, v)| Ok((model.space().index_of(k)?, v.clone())))
                .collect::<Result<BTreeMap<_, _>, crate::error::Error>>()
                .map_err(err)?;
            model = model.with_outcomes(map).map_err(err)?;
        }
        Ok(model)
    }
}

impl GameDoc {
    fn payoff_table(&self) -> (Vec<Diagnostic>, BTreeMap<Vec<usize>, Vec<BigRational>>) {
        let mut out = Vec::new();
        let mut table = BTreeMap::new();
        let n = self.players.len();
        if n == 0 {
            out.push(Diagnostic::new("$.players", "at least one player required"));
        }
        if self.strategies.len() != n {
            out.push(Diagnostic::new(
                "$.strategies",
                format!("{} strategy lists for {n} players", self.strategies.len()),
            ));
            return (out, table);
        }
        let mut names = BTreeSet::new();
        for (i, p) in self.players.iter().enumerate() {
            if !names.insert(p) {
                out.push(Diagnostic::new(format!("$.players[{i}]"), format!("duplicate player `{p}`")));
            }
        }
        for (i, set) in self.strategies.iter().enumerate() {
            if set.is_empty() {
                out.push(Diagnostic::new(format!("$.strategies[{i}]"), "strategy set must be non-empty"));
            }
            let mut seen = BTreeSet::new();
            for (k, s) in set.iter().enumerate() {
                if s.contains(',') {
                    out.push(Diagnostic::new(
                        format!("$.strategies[{i}][{k}]"),
                        "strategy names may not contain commas",
                    ));
                }
                if !seen.insert(s) {
                    out.push(Diagnostic::new(format!("$.strategies[{i}][{k}]"), format!("duplicate strategy `{s}`")));
                }
            }
        }
        for (key, values) in &self.payoffs {
            let path = format!("$.payoffs.\"{key}\"");
            let parts: Vec<&str> = key.split(',').collect();
            if parts.len() != n {
                out.push(Diagnostic::new(
                    path,
                    format!("key names {} strategies for {n} players", parts.len()),
                ));
                continue;
            }
            let mut profile = Vec::with_capacity(n);
            for (i, part) in parts.iter().enumerate() {
                match self.strategies[i].iter().position(|s| s == part) {
                    Some(s) => profile.push(s),
                    None => out.push(Diagnostic::new(
                        path.clone(),
                        format!("no strategy `{part}` for player `{}`", self.players[i]),
                    )),
                }
            }
            if values.len() != n {
                out.push(Diagnostic::new(
                    path.clone(),
                    format!("{} payoffs for {n} players", values.len()),
                ));
                continue;
            }
            let mut parsed = Vec::with_capacity(n);
            for (i, v) in values.iter().enumerate() {
                match v.value() {
                    Some(r) => parsed.push(r),
                    None => out.push(Diagnostic::new(format!("{path}[{i}]"), "not a rational number")),
                }
            }
            if profile.len() == n && parsed.len() == n {
                table.insert(profile, parsed);
            }
        }
        (out, table)
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let (mut out, table) = self.payoff_table();
        if !out.is_empty() || self.strategies.iter().any(Vec::is_empty) || self.players.is_empty() {
            return out;
        }
        let sizes: Vec<usize> = self.strategies.iter().map(Vec::len).collect();
        let total = sizes.iter().try_fold(1u128, |a, &s| a.checked_mul(s as u128)).unwrap_or(u128::MAX);
        if total > crate::equilibrium::MAX_PROFILES {
            out.push(Diagnostic::new("$.strategies", format!("{total} profiles exceed the 1000000 limit")));
            return out;
        }
        let mut profile = vec![0usize; sizes.len()];
        'all: loop {
            if !table.contains_key(&profile) {
                let key: Vec<&str> = profile
                    .iter()
                    .zip(&self.strategies)
                    .map(|(&s, set)| set[s].as_str())
                    .collect();
                out.push(Diagnostic::new("$.payoffs", format!("missing payoff for profile \"{}\"", key.join(","))));
            }
            let mut i = sizes.len();
            loop {
                if i == 0 {
                    break 'all;
                }
                i -= 1;
                profile[i] += 1;
                if profile[i] < sizes[i] {
                    break;
                }
                profile[i] = 0;
            }
        }
        out
    }

    pub fn to_game(&self) -> Result<NormalFormGame, SpecError> {
        let (diags, table) = self.payoff_table();
        finish((), diags)?;
        finish((), self.validate())?;
        NormalFormGame::from_fn(self.players.clone(), self.strategies.clone(), |p| {
            table[&p.0].clone()
        })
        .map_err(|e| SpecError::single("$", e.to_string()))
    }
}

impl FuzzyDoc {
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if let Err(e) = LinguisticScale::new(self.scale.iter().cloned()) {
            out.push(Diagnostic::new("$.scale", e.to_string()));
        }
        let labels: BTreeSet<&String> = self.scale.iter().collect();
        for (name, grid) in [("v", &self.v), ("phi", &self.phi)] {
            if grid.is_empty() || grid[0].is_empty() {
                out.push(Diagnostic::new(format!("$.{name}"), "grid must be at least 1×1"));
                continue;
            }
            let width = grid[0].len();
            for (r, row) in grid.iter().enumerate() {
                if row.len() != width {
                    out.push(Diagnostic::new(
                        format!("$.{name}[{r}]"),
                        format!("row has {} cells, expected {width}", row.len()),
                    ));
                }
                for (c, label) in row.iter().enumerate() {
                    if !labels.contains(label) {
                        out.push(Diagnostic::new(
                            format!("$.{name}[{r}][{c}]"),
                            format!("unknown label `{label}`"),
                        ));
                    }
                }
            }
        }
        let shape = |g: &Vec<Vec<String>>| g.iter().map(Vec::len).collect::<Vec<_>>();
        if shape(&self.v) != shape(&self.phi) {
            out.push(Diagnostic::new("$.phi", "phi grid shape differs from v grid"));
        }
        if let Some([rows, cols]) = &self.strategies {
            if rows.len() != self.v.len() {
                out.push(Diagnostic::new("$.strategies[0]", "one name per row required"));
            }
            if cols.len() != self.v.first().map_or(0, Vec::len) {
                out.push(Diagnostic::new("$.strategies[1]", "one name per column required"));
            }
        }
        out
    }

    pub fn to_game(&self) -> Result<FuzzyGame, SpecError> {
        finish((), self.validate())?;
        let err = |e: crate::error::Error| SpecError::single("$", e.to_string());
        let scale = LinguisticScale::new(self.scale.iter().cloned()).map_err(err)?;
        let mut game = FuzzyGame::from_labels(scale, &self.v, &self.phi).map_err(err)?;
        if let Some([rows, cols]) = &self.strategies {
            game = game.with_strategy_labels(rows.clone(), cols.clone()).map_err(err)?;
        }
        Ok(game)
    }
}

impl SimulationDoc {
    pub fn config(&self) -> SimulationConfig {
        SimulationConfig {
            p_informed: self.p_informed,
            bluff_success: self.bluff_success,
            k_max: self.k_max,
            trials: self.trials,
            seed: self.seed,
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for (name, p) in [("p_informed", self.p_informed), ("bluff_success", self.bluff_success)] {
            if !(0.0..=1.0).contains(&p) {
                out.push(Diagnostic::new(format!("$.{name}"), format!("{p} is not a probability")));
            }
        }
        if self.k_max < 2 {
            out.push(Diagnostic::new("$.k_max", "must be at least 2"));
        }
        if self.trials == 0 {
            out.push(Diagnostic::new("$.trials", "must be at least 1"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PD: &str = r#"{"players":["A","B"], "strategies":[["C","D"],["C","D"]],
        "payoffs":{"C,C":[3,3], "C,D":[0,5], "D,C":[5,0], "D,D":[1,1]}}"#;

    #[test]
    fn parses_game() {
        let doc = parse_spec(PD.as_bytes(), SpecKind::Game).unwrap();
        assert_eq!(doc.kind(), SpecKind::Game);
        let SpecDocument::Game(g) = doc else { unreachable!() };
        let game = g.to_game().unwrap();
        assert_eq!(game.num_profiles(), 4);
    }

    #[test]
    fn dangling_strategy_is_named() {
        let bad = PD.replace("\"D,D\"", "\"C,X\"");
        let err = parse_spec(bad.as_bytes(), SpecKind::Game).unwrap_err();
        assert!(err.diagnostics.iter().any(|d| d.path == "$.payoffs.\"C,X\"" && d.message.contains("`X`")));
    }

    #[test]
    fn empty_states() {
        let err = parse_spec(br#"{"states":[],"agents":[]}"#, SpecKind::Model).unwrap_err();
        assert!(err.diagnostics.iter().any(|d| d.path == "$.states" && d.message == "non-empty Ω required"));
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = parse_spec(br#"{"states":["a"],"agents":[],"extra":1}"#, SpecKind::Model).unwrap_err();
        assert!(err.to_string().contains("extra"));
        let err = parse_spec(
            br#"{"states":["a"],"agents":[{"id":"1","partition":[["a"]],"colour":3}]}"#,
            SpecKind::Model,
        )
        .unwrap_err();
        assert_eq!(err.diagnostics[0].path, "$.agents[0].colour");
    }

    #[test]
    fn model_diagnostics_carry_paths() {
        let text = br#"{"states":[1,2,3],"agents":[{"id":1,"partition":[[1,2],[2,3]]},
            {"id":2,"partition":[[1,2,9]]}],"events":{"E":[4]}}"#;
        let err = parse_spec(text, SpecKind::Model).unwrap_err();
        let paths: Vec<&str> = err.diagnostics.iter().map(|d| d.path.as_str()).collect();
        assert!(paths.contains(&"$.agents[0].partition"));
        assert!(paths.contains(&"$.agents[1].partition[0][2]"));
        assert!(paths.contains(&"$.events.E[0]"));
    }

    #[test]
    fn rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/2"), Some(r(1, 2)));
        assert_eq!(parse_rational("-0.25"), Some(r(-1, 4)));
        assert_eq!(parse_rational("1e-3"), Some(r(1, 1000)));
        assert_eq!(parse_rational("2.5E2"), Some(r(250, 1)));
        assert_eq!(parse_rational("7"), Some(r(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn missing_profile() {
        let bad = PD.replace(", \"D,D\":[1,1]", "");
        let err = parse_spec(bad.as_bytes(), SpecKind::Game).unwrap_err();
        assert!(err.diagnostics.iter().any(|d| d.message.contains("\"D,D\"")));
    }

    #[test]
    fn fuzzy_labels_checked() {
        let text = br#"{"scale":["l","h"],"v":[["l","x"]],"phi":[["l","h"]]}"#;
        let err = parse_spec(text, SpecKind::Fuzzy).unwrap_err();
        assert_eq!(err.diagnostics[0].path, "$.v[0][1]");
    }

    #[test]
    fn simulation_defaults() {
        let doc = parse_spec(br#"{"k_max":4,"trials":10}"#, SpecKind::Simulation).unwrap();
        let SpecDocument::Simulation(s) = doc else { unreachable!() };
        assert_eq!(s.config().bluff_success, 2.0 / 3.0);
        assert!(parse_spec(br#"{"k_max":1,"trials":10}"#, SpecKind::Simulation).is_err());
    }
}
