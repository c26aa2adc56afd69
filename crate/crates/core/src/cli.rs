//! Command-line surface. Exit codes: 0 success, 1 domain error, 2 usage or
//! input-parse error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::alternation::boundary_table;
use crate::epistemic::{check_frame_properties, EpistemicModel, Event};
use crate::equilibrium::{
    check_symmetry, is_equilibrium, is_solvable, pure_equilibria, sub_solutions, symmetric_profiles,
    GamePermutation, NormalFormGame,
};
use crate::error::Error;
use crate::fuzzy::{find_fne, find_fnne, find_nne, CellSet, FuzzyGame, Interpretation};
use crate::report::{Format, Payload, Report, ReportError, Table};
use crate::signaling::{format_decimal, simulate, zk_limit_satisfied, SimulationConfig};
use crate::spec::{parse_model_unvalidated, parse_spec, SpecDocument, SpecError, SpecKind};
use crate::walkthrough::{run_walkthrough, WalkthroughConfig};

#[derive(Debug, Parser)]
#[command(name = "zkgames", version, about = "Zero-knowledge games: knowledge, signaling and equilibria")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value_t = crate::signaling::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ModelArg {
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(Debug, Args)]
pub struct GameArg {
    #[arg(long)]
    pub game: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition and frame properties of every agent.
    CheckModel(ModelArg),
    /// K_i(E).
    Knows {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        agent: String,
        /// A named event or a comma-separated list of states.
        #[arg(long)]
        event: String,
    },
    /// B_i^F(E).
    Believes {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        given: String,
        #[arg(long)]
        event: String,
    },
    /// Group and common knowledge of E.
    Common {
        #[command(flatten)]
        model: ModelArg,
        /// Comma-separated agent ids; all agents when omitted.
        #[arg(long)]
        agents: Option<String>,
        #[arg(long)]
        event: String,
    },
    /// Minimal public events per state, or whether one event is public.
    Public {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        event: Option<String>,
    },
    /// The eight-row alternation truth table.
    AlternationTable,
    /// Monte Carlo survival of an uninformed prover.
    Simulate {
        #[arg(long)]
        k_max: Option<u32>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        bluff: Option<f64>,
        #[arg(long)]
        p_informed: Option<f64>,
        /// Simulation document; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Pure Nash equilibria.
    Equilibria(GameArg),
    /// Whether the equilibrium set is non-empty and interchangeable.
    Solvable(GameArg),
    /// Maximal interchangeable equilibrium subsets.
    Subsolutions(GameArg),
    /// Check a player/strategy permutation for symmetry.
    Symmetry {
        #[command(flatten)]
        game: GameArg,
        /// Player map, e.g. "1,0".
        #[arg(long)]
        perm: String,
        /// Per-player strategy maps separated by ';', e.g. "0,1;0,1".
        #[arg(long)]
        strategy_maps: Option<String>,
    },
    /// NNE, FNE and FNNE cells of a fuzzy game.
    Fuzzy {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value = "strict")]
        interpretation: Interpretation,
    },
    /// One seeded prover/verifier session.
    Walkthrough {
        #[arg(long, default_value_t = 6)]
        rounds: u32,
        #[arg(long, default_value_t = 0.5)]
        p_informed: f64,
        #[arg(long)]
        bluff: Option<f64>,
    },
}

/// Exit code plus captured output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let echo = echo.join(" ");
    match execute(&cli, echo).and_then(|(report, code)| Ok((report.render(cli.format)?, code))) {
        Ok((stdout, code)) => Outcome { code: code.0, stdout, stderr: code.1 },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> CliResult<(EpistemicModel, Vec<u8>)> {
    let bytes = read(path)?;
    let SpecDocument::Model(doc) = parse_spec(&bytes, SpecKind::Model)? else { unreachable!() };
    Ok((doc.to_model()?, bytes))
}

fn load_game(path: &Path) -> CliResult<(NormalFormGame, Vec<u8>)> {
    let bytes = read(path)?;
    let SpecDocument::Game(doc) = parse_spec(&bytes, SpecKind::Game)? else { unreachable!() };
    Ok((doc.to_game()?, bytes))
}

fn load_fuzzy(path: &Path) -> CliResult<(FuzzyGame, Vec<u8>)> {
    let bytes = read(path)?;
    let SpecDocument::Fuzzy(doc) = parse_spec(&bytes, SpecKind::Fuzzy)? else { unreachable!() };
    Ok((doc.to_game()?, bytes))
}

/// A named event, or states listed as `a,b,c` (braces optional).
pub fn parse_event(model: &EpistemicModel, text: &str) -> Result<Event, Error> {
    if let Some(e) = model.named_event(text) {
        return Ok(e.clone());
    }
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if inner.is_empty() {
        return Ok(Event::empty());
    }
    inner.split(',').map(|s| model.space().index_of(s.trim())).collect()
}

fn parse_indices(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("`{s}` is not an index in `{text}`")))
        })
        .collect()
}

fn tf(b: bool) -> &'static str {
    if b {
        "T"
    } else {
        "F"
    }
}

fn cells_1based(cells: &CellSet) -> String {
    let parts: Vec<String> = cells.iter().map(|(r, c)| format!("({},{})", r + 1, c + 1)).collect();
    parts.join(" ")
}

/// Non-zero exit with a report still printed.
type Exit = (i32, String);

fn execute(cli: &Cli, echo: String) -> CliResult<(Report, Exit)> {
    let ok = |r: Report| Ok((r, (0, String::new())));
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::CheckModel(arg) => check_model(&arg.model, echo),
        Command::Knows { model, agent, event } => {
            let (m, bytes) = load_model(&model.model)?;
            let e = parse_event(&m, event)?;
            let k = m.knows(agent, &e)?;
            let mut t = Table::new(["agent", "event", "states", "knows"]);
            t.push([agent.clone(), event.clone(), m.space().display(&e), m.space().display(&k)]);
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Believes { model, agent, given, event } => {
            let (m, bytes) = load_model(&model.model)?;
            let f = parse_event(&m, given)?;
            let e = parse_event(&m, event)?;
            let b = m.belief_report(agent, &f, &e)?;
            let mut t = Table::new(["agent", "given", "event", "believes", "vacuous"]);
            t.push([
                agent.clone(),
                m.space().display(&f),
                m.space().display(&e),
                m.space().display(&b.event),
                m.space().display(&b.vacuous),
            ]);
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Common { model, agents, event } => {
            let (m, bytes) = load_model(&model.model)?;
            let ids: Vec<String> = match agents {
                Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
                None => m.agent_ids().into_iter().map(String::from).collect(),
            };
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            let e = parse_event(&m, event)?;
            let group = m.group_knows(&refs, &e)?;
            let common = m.common_knowledge(&refs, &e)?;
            let mut t = Table::new(["agents", "event", "group_knows", "common_knowledge"]);
            t.push([ids.join(","), m.space().display(&e), m.space().display(&group), m.space().display(&common)]);
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Public { model, event } => {
            let (m, bytes) = load_model(&model.model)?;
            let t = match event {
                Some(text) => {
                    let e = parse_event(&m, text)?;
                    let mut t = Table::new(["event", "public"]);
                    t.push([m.space().display(&e), m.is_public_event(&e).to_string()]);
                    t
                }
                None => {
                    let mut t = Table::new(["state", "minimal_public_event"]);
                    for (s, name) in m.space().names().iter().enumerate() {
                        t.push([name.clone(), m.space().display(&m.minimal_public_event(s)?)]);
                    }
                    t
                }
            };
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::AlternationTable => {
            let mut t = Table::new(["sx", "ex", "fx", "antecedent", "lhs", "rhs", "whole", "stage"]);
            for row in boundary_table() {
                let (a, v) = (row.assignment, row.verdict);
                let stage = row.stage.map_or("", |s| s.as_str());
                t.push([tf(a.sx), tf(a.ex), tf(a.fx), tf(v.antecedent), tf(v.lhs), tf(v.rhs), tf(v.whole), stage]);
            }
            ok(Report::new(echo, Payload::Table(t)))
        }
        Command::Simulate { k_max, trials, bluff, p_informed, config } => {
            let mut c = SimulationConfig { seed, ..Default::default() };
            let mut input = None;
            if let Some(path) = config {
                let bytes = read(path)?;
                let SpecDocument::Simulation(doc) = parse_spec(&bytes, SpecKind::Simulation)? else {
                    unreachable!()
                };
                c = doc.config();
                if let Some(s) = cli.seed {
                    c.seed = s;
                }
                input = Some(bytes);
            }
            c.k_max = k_max.unwrap_or(c.k_max);
            c.trials = trials.unwrap_or(c.trials);
            c.bluff_success = bluff.unwrap_or(c.bluff_success);
            c.p_informed = p_informed.unwrap_or(c.p_informed);
            let report = simulate(&c)?;
            let mut header = vec![
                "k",
                "theoretical_hk",
                "analytic_residual",
                "empirical_undetected",
                "trials",
                "seed",
            ];
            if cli.format == Format::Table {
                header.push("accepted");
            }
            let mut t = Table::new(header);
            for row in &report.rows {
                let mut cells = vec![
                    row.k.to_string(),
                    format_decimal(&row.theoretical_hk, 6),
                    format!("{:.6}", row.analytic_residual),
                    row.empirical_undetected.map_or(String::new(), |v| format!("{v:.6}")),
                    c.trials.to_string(),
                    c.seed.to_string(),
                ];
                if cli.format == Format::Table {
                    cells.push(zk_limit_satisfied(row.k, cli.epsilon)?.to_string());
                }
                t.push(cells);
            }
            let mut r = Report::new(echo, Payload::Table(t)).note(format!(
                "bluff_success = {:.6}, p_informed = {:.6}, epsilon = {}",
                c.bluff_success, c.p_informed, cli.epsilon
            ));
            if let Some(bytes) = input {
                r = r.with_input(&bytes);
            }
            ok(r)
        }
        Command::Equilibria(arg) => {
            let (g, bytes) = load_game(&arg.game)?;
            let mut header = vec!["profile".to_string()];
            header.extend(g.players().iter().cloned());
            let mut t = Table::new(header);
            for p in pure_equilibria(&g) {
                let mut row = vec![g.profile_label(&p)];
                for i in 0..g.num_players() {
                    row.push(g.payoff(&p, i)?.to_string());
                }
                t.push(row);
            }
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Solvable(arg) => {
            let (g, bytes) = load_game(&arg.game)?;
            let s = is_solvable(&g);
            let labels: Vec<String> = s.equilibria.iter().map(|p| g.profile_label(p)).collect();
            let mut t = Table::new(["solvable", "equilibria"]);
            t.push([s.solvable.to_string(), labels.join(" ")]);
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Subsolutions(arg) => {
            let (g, bytes) = load_game(&arg.game)?;
            let mut header = vec!["subsolution".to_string(), "profiles".to_string()];
            header.extend(g.players().iter().map(|p| format!("factor_{p}")));
            header.push("is_product".into());
            let mut t = Table::new(header);
            for (i, sub) in sub_solutions(&g)?.iter().enumerate() {
                let labels: Vec<String> = sub.profiles.iter().map(|p| g.profile_label(p)).collect();
                let mut row = vec![(i + 1).to_string(), labels.join(" ")];
                for (player, factor) in sub.factor_sets.iter().enumerate() {
                    let names: Vec<&str> = factor.iter().map(|&s| g.strategies()[player][s].as_str()).collect();
                    row.push(format!("{{{}}}", names.join(",")));
                }
                row.push(sub.is_product_of_factors().to_string());
                t.push(row);
            }
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Symmetry { game, perm, strategy_maps } => {
            let (g, bytes) = load_game(&game.game)?;
            let players = parse_indices(perm)?;
            let permutation = match strategy_maps {
                Some(text) => {
                    let maps = text.split(';').map(parse_indices).collect::<CliResult<Vec<_>>>()?;
                    GamePermutation::new(&g, players, maps)?
                }
                None => GamePermutation::relabel_players(&g, players)?,
            };
            let symmetric = check_symmetry(&g, &permutation)?;
            let fixed = symmetric_profiles(&g, &permutation)?;
            let mut eq = Vec::new();
            for p in &fixed {
                if is_equilibrium(&g, p)? {
                    eq.push(g.profile_label(p));
                }
            }
            let fixed: Vec<String> = fixed.iter().map(|p| g.profile_label(p)).collect();
            let mut t = Table::new(["property", "value"]);
            t.push(["symmetric".to_string(), symmetric.to_string()]);
            t.push(["fixed_profiles".to_string(), fixed.join(" ")]);
            t.push(["symmetric_equilibria".to_string(), eq.join(" ")]);
            ok(Report::new(echo, Payload::Table(t)).with_input(&bytes))
        }
        Command::Fuzzy { game, interpretation } => {
            let (g, bytes) = load_fuzzy(game)?;
            let interp = *interpretation;
            let mut t = Table::new(["interpretation", "form", "cells"]);
            for (form, cells) in [
                ("NNE", find_nne(&g, interp)),
                ("FNE", find_fne(&g, interp)),
                ("FNNE", find_fnne(&g, interp)),
            ] {
                t.push([interp.as_str().to_string(), form.to_string(), cells_1based(&cells)]);
            }
            ok(Report::new(echo, Payload::Table(t))
                .with_input(&bytes)
                .note("cells are (row,col), counted from 1"))
        }
        Command::Walkthrough { rounds, p_informed, bluff } => {
            let config = WalkthroughConfig {
                rounds: *rounds,
                seed,
                epsilon: cli.epsilon,
                p_informed: *p_informed,
                bluff_success: bluff.unwrap_or(2.0 / 3.0),
            };
            let w = run_walkthrough(&config)?;
            let payload = match cli.format {
                Format::Table => Payload::Text(w.narrative()),
                Format::Csv => {
                    let mut t = Table::new(["round", "stage", "sx", "ex", "fx", "passed", "hk", "mode"]);
                    for r in &w.rounds {
                        let a = r.record.assignment;
                        t.push([
                            r.record.round_index.to_string(),
                            r.record.stage_emitted.to_string(),
                            tf(a.sx).to_string(),
                            tf(a.ex).to_string(),
                            tf(a.fx).to_string(),
                            r.record.prover_passed.to_string(),
                            r.threshold.as_ref().map_or(String::new(), |h| format_decimal(h, 6)),
                            r.mode.as_ref().map_or(String::new(), ToString::to_string),
                        ]);
                    }
                    Payload::Table(t)
                }
            };
            ok(Report::new(echo, payload))
        }
    }
}

fn check_model(path: &Path, echo: String) -> CliResult<(Report, Exit)> {
    let bytes = read(path)?;
    let doc = parse_model_unvalidated(&bytes)?;
    let names: Vec<String> = doc.states.iter().map(|s| s.name()).collect();
    let index = |name: &String| names.iter().position(|n| n == name);
    let mut t = Table::new(["agent", "cells", "p1", "p2", "serial", "transitive", "euclidean"]);
    for (a, agent) in doc.agents.iter().enumerate() {
        let report = doc.partition_report(a);
        let cells: Vec<String> = agent
            .partition
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")))
            .collect();
        let frame = agent.frame.as_ref().and_then(|f| {
            let pairs: Option<Vec<(usize, usize)>> = f
                .pairs
                .iter()
                .map(|[s, t]| Some((index(&s.name())?, index(&t.name())?)))
                .collect();
            check_frame_properties(names.len(), &pairs?).ok()
        });
        let flag = |f: Option<bool>| f.map_or(String::new(), |b| b.to_string());
        t.push([
            agent.id.name(),
            cells.join(" "),
            report.p1.to_string(),
            report.p2.to_string(),
            flag(frame.map(|f| f.serial)),
            flag(frame.map(|f| f.transitive)),
            flag(frame.map(|f| f.euclidean)),
        ]);
    }
    let diagnostics = doc.validate();
    let mut report = Report::new(echo, Payload::Table(t)).with_input(&bytes);
    if diagnostics.is_empty() {
        report = report.note("model is valid");
        Ok((report, (0, String::new())))
    } else {
        let stderr: String = diagnostics.iter().map(|d| format!("error: {d}\n")).collect();
        report = report.note(format!("model is invalid ({} problems)", diagnostics.len()));
        Ok((report, (1, stderr)))
    }
}
