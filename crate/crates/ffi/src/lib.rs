//! C ABI for `zkgames`.
//!
//! Models and games are opaque handles created from JSON and released with
//! the matching `*_free`. Every fallible call returns a [`ZkStatus`]; on
//! failure [`zk_last_error`] describes the problem. Functions that fill a
//! caller buffer always report the required length through their `*_len`
//! out-parameter and return [`ZkStatus::BufferTooSmall`] without writing when
//! the buffer is short, so callers may size with a null buffer and zero
//! capacity first.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use zkgames::alternation::{classify_state, eval_alternation, PredicateAssignment, StageState};
use zkgames::epistemic::{EpistemicModel, Event};
use zkgames::equilibrium::{is_solvable, pure_equilibria, NormalFormGame};
use zkgames::fuzzy::{find_fne, find_fnne, find_nne, FuzzyGame, Interpretation};
use zkgames::signaling::{simulate, to_f64, zk_threshold, SimulationConfig};
use zkgames::spec::{parse_spec, SpecDocument, SpecKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZkStage {
    None = 0,
    S0 = 1,
    P0 = 2,
    V0 = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZkInterpretation {
    Literal = 0,
    Strict = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZkFuzzyForm {
    Nne = 0,
    Fne = 1,
    Fnne = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ZkAlternationVerdict {
    pub antecedent: bool,
    pub lhs: bool,
    pub rhs: bool,
    pub whole: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZkSimulationConfig {
    pub p_informed: f64,
    pub bluff_success: f64,
    pub k_max: u32,
    pub trials: u64,
    pub seed: u64,
}

pub struct ZkModel(EpistemicModel);
pub struct ZkGame(NormalFormGame);
pub struct ZkFuzzyGame(FuzzyGame);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(ZkStatus, String);

impl From<zkgames::Error> for Failure {
    fn from(e: zkgames::Error) -> Self {
        Failure(ZkStatus::DomainError, e.to_string())
    }
}

impl From<zkgames::spec::SpecError> for Failure {
    fn from(e: zkgames::spec::SpecError) -> Self {
        Failure(ZkStatus::ParseError, e.to_string())
    }
}

fn guard<F>(body: F) -> ZkStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ZkStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ZkStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ZkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure(ZkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Report `values.len()` through `len_out`, then copy into `out` if it fits.
unsafe fn fill<T: Copy>(values: &[T], out: *mut T, capacity: usize, len_out: *mut usize) -> Result<(), Failure> {
    write(len_out, values.len(), "length out-parameter")?;
    if values.len() > capacity {
        return Err(Failure(
            ZkStatus::BufferTooSmall,
            format!("buffer holds {capacity}, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(null("output buffer"));
        }
        std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// `h_k` as the nearest double.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_threshold_f64(k: u32, out: *mut f64) -> ZkStatus {
    guard(|| write(out, to_f64(&zk_threshold(k)?), "out"))
}

/// `h_k` exactly, as a NUL-terminated `"p/q"` string. `len_out` receives the
/// required size including the terminator.
///
/// # Safety
/// `buf` must be valid for `capacity` bytes; `len_out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_threshold_string(k: u32, buf: *mut c_char, capacity: usize, len_out: *mut usize) -> ZkStatus {
    guard(|| {
        let h = zk_threshold(k)?;
        let bytes = CString::new(format!("{}/{}", h.numer(), h.denom())).expect("digits have no NUL");
        let bytes = bytes.as_bytes_with_nul();
        fill(std::slice::from_raw_parts(bytes.as_ptr().cast::<c_char>(), bytes.len()), buf, capacity, len_out)
    })
}

/// Whether `h_k >= 1 - epsilon`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_limit_satisfied(k: u32, epsilon: f64, out: *mut bool) -> ZkStatus {
    guard(|| write(out, zkgames::signaling::zk_limit_satisfied(k, epsilon)?, "out"))
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_eval_alternation(sx: bool, ex: bool, fx: bool, out: *mut ZkAlternationVerdict) -> ZkStatus {
    guard(|| {
        let v = eval_alternation(PredicateAssignment::new(sx, ex, fx));
        write(
            out,
            ZkAlternationVerdict {
                antecedent: v.antecedent,
                lhs: v.lhs,
                rhs: v.rhs,
                whole: v.whole,
            },
            "out",
        )
    })
}

#[no_mangle]
pub extern "C" fn zk_classify_state(sx: bool, ex: bool, fx: bool) -> ZkStage {
    match classify_state(PredicateAssignment::new(sx, ex, fx)) {
        None => ZkStage::None,
        Some(StageState::S0) => ZkStage::S0,
        Some(StageState::P0) => ZkStage::P0,
        Some(StageState::V0) => ZkStage::V0,
    }
}

unsafe fn parse(json: *const c_char, kind: SpecKind) -> Result<SpecDocument, Failure> {
    let json = text(json, "json")?;
    Ok(parse_spec(json.as_bytes(), kind)?)
}

/// Build a model from a JSON model document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_model_from_json(json: *const c_char, out: *mut *mut ZkModel) -> ZkStatus {
    guard(|| {
        let SpecDocument::Model(doc) = parse(json, SpecKind::Model)? else { unreachable!() };
        let model = doc.to_model()?;
        write(out, Box::into_raw(Box::new(ZkModel(model))), "out")
    })
}

/// # Safety
/// `model` must come from [`zk_model_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zk_model_free(model: *mut ZkModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zk_model_num_states(model: *const ZkModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.space().len())
}

unsafe fn model_ref<'a>(model: *const ZkModel) -> Result<&'a EpistemicModel, Failure> {
    model.as_ref().map(|m| &m.0).ok_or_else(|| null("model"))
}

unsafe fn event(model: &EpistemicModel, states: *const usize, len: usize) -> Result<Event, Failure> {
    let event: Event = slice(states, len, "event")?.iter().copied().collect();
    model.space().contains_event(&event)?;
    Ok(event)
}

/// `K_agent(E)` over state indices.
///
/// # Safety
/// `agent` must be a NUL-terminated string, `event` valid for `event_len`
/// reads, `out` valid for `capacity` writes, `len_out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_model_knows(
    model: *const ZkModel,
    agent: *const c_char,
    event_states: *const usize,
    event_len: usize,
    out: *mut usize,
    capacity: usize,
    len_out: *mut usize,
) -> ZkStatus {
    guard(|| {
        let m = model_ref(model)?;
        let e = event(m, event_states, event_len)?;
        let k = m.knows(text(agent, "agent")?, &e)?;
        fill(&k.iter().collect::<Vec<_>>(), out, capacity, len_out)
    })
}

/// Common knowledge of E among `agents`.
///
/// # Safety
/// `agents` must hold `num_agents` NUL-terminated strings; buffers as for
/// [`zk_model_knows`].
#[no_mangle]
pub unsafe extern "C" fn zk_model_common_knowledge(
    model: *const ZkModel,
    agents: *const *const c_char,
    num_agents: usize,
    event_states: *const usize,
    event_len: usize,
    out: *mut usize,
    capacity: usize,
    len_out: *mut usize,
) -> ZkStatus {
    guard(|| {
        let m = model_ref(model)?;
        let ids = slice(agents, num_agents, "agents")?
            .iter()
            .map(|&p| text(p, "agent"))
            .collect::<Result<Vec<_>, _>>()?;
        let e = event(m, event_states, event_len)?;
        let ck = m.common_knowledge(&ids, &e)?;
        fill(&ck.iter().collect::<Vec<_>>(), out, capacity, len_out)
    })
}

/// Build a game from a JSON game document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_game_from_json(json: *const c_char, out: *mut *mut ZkGame) -> ZkStatus {
    guard(|| {
        let SpecDocument::Game(doc) = parse(json, SpecKind::Game)? else { unreachable!() };
        let game = doc.to_game()?;
        write(out, Box::into_raw(Box::new(ZkGame(game))), "out")
    })
}

/// # Safety
/// `game` must come from [`zk_game_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zk_game_free(game: *mut ZkGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of players, or 0 for a null handle.
///
/// # Safety
/// `game` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zk_game_num_players(game: *const ZkGame) -> usize {
    game.as_ref().map_or(0, |g| g.0.num_players())
}

unsafe fn game_ref<'a>(game: *const ZkGame) -> Result<&'a NormalFormGame, Failure> {
    game.as_ref().map(|g| &g.0).ok_or_else(|| null("game"))
}

/// Pure equilibria as consecutive strategy-index tuples, one entry per
/// player. `len_out` counts indices, not profiles.
///
/// # Safety
/// `out` valid for `capacity` writes; `len_out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_game_equilibria(
    game: *const ZkGame,
    out: *mut usize,
    capacity: usize,
    len_out: *mut usize,
) -> ZkStatus {
    guard(|| {
        let g = game_ref(game)?;
        let flat: Vec<usize> = pure_equilibria(g).into_iter().flat_map(|p| p.0).collect();
        fill(&flat, out, capacity, len_out)
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_game_is_solvable(game: *const ZkGame, out: *mut bool) -> ZkStatus {
    guard(|| write(out, is_solvable(game_ref(game)?).solvable, "out"))
}

/// Build a fuzzy game from a JSON fuzzy document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_fuzzy_from_json(json: *const c_char, out: *mut *mut ZkFuzzyGame) -> ZkStatus {
    guard(|| {
        let SpecDocument::Fuzzy(doc) = parse(json, SpecKind::Fuzzy)? else { unreachable!() };
        let game = doc.to_game()?;
        write(out, Box::into_raw(Box::new(ZkFuzzyGame(game))), "out")
    })
}

/// # Safety
/// `game` must come from [`zk_fuzzy_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zk_fuzzy_free(game: *mut ZkFuzzyGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Qualifying cells as consecutive zero-based `(row, col)` pairs.
/// `len_out` counts indices (twice the number of cells).
///
/// # Safety
/// `out` valid for `capacity` writes; `len_out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_fuzzy_find(
    game: *const ZkFuzzyGame,
    form: ZkFuzzyForm,
    interpretation: ZkInterpretation,
    out: *mut usize,
    capacity: usize,
    len_out: *mut usize,
) -> ZkStatus {
    guard(|| {
        let g = &game.as_ref().ok_or_else(|| null("game"))?.0;
        let interp = match interpretation {
            ZkInterpretation::Literal => Interpretation::Literal,
            ZkInterpretation::Strict => Interpretation::Strict,
        };
        let cells = match form {
            ZkFuzzyForm::Nne => find_nne(g, interp),
            ZkFuzzyForm::Fne => find_fne(g, interp),
            ZkFuzzyForm::Fnne => find_fnne(g, interp),
        };
        let flat: Vec<usize> = cells.into_iter().flat_map(|(r, c)| [r, c]).collect();
        fill(&flat, out, capacity, len_out)
    })
}

/// Empirical undetected fraction for `k = 2..=k_max`, NaN where no trial
/// drew an uninformed prover. `len_out` receives `k_max - 1`.
///
/// # Safety
/// `config` valid for a read; `out` valid for `capacity` writes; `len_out`
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn zk_simulate(
    config: *const ZkSimulationConfig,
    out: *mut f64,
    capacity: usize,
    len_out: *mut usize,
) -> ZkStatus {
    guard(|| {
        let c = config.as_ref().ok_or_else(|| null("config"))?;
        let report = simulate(&SimulationConfig {
            p_informed: c.p_informed,
            bluff_success: c.bluff_success,
            k_max: c.k_max,
            trials: c.trials,
            seed: c.seed,
        })?;
        let values: Vec<f64> = report
            .rows
            .iter()
            .map(|r| r.empirical_undetected.unwrap_or(f64::NAN))
            .collect();
        fill(&values, out, capacity, len_out)
    })
}
