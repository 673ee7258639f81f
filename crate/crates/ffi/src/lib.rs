//! C interface to `stratdom`.
//!
//! Games live behind an opaque `SdGame` handle. Every call returns an
//! `SdStatus`; on anything but `SD_STATUS_OK` (and `SD_STATUS_NOT_DOMINATED`,
//! which is a verdict rather than a failure) `sd_last_error()` describes what
//! went wrong on the calling thread. Strings handed out by the library are
//! owned by the caller and released with `sd_string_free`. Panics never cross
//! the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stratdom::game::parse_game;
use stratdom::{dominance, report, Error, Game, Player};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    /// The action is not strictly dominated; the report is still produced.
    NotDominated = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Internal = 4,
    Panic = 5,
}

/// A parsed game together with the bytes it was read from, so reports
/// carry the same input digest as the command-line tool.
pub struct SdGame {
    game: Game,
    source: Vec<u8>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(SdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::Internal(_)) { SdStatus::Internal } else { SdStatus::InvalidInput };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SdStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<SdStatus, Failure>) -> SdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SdStatus::Panic
        }
    }
}

unsafe fn game_ref<'a>(game: *const SdGame) -> Result<&'a SdGame, Failure> {
    game.as_ref().ok_or_else(|| null("game"))
}

fn player(n: u8) -> Result<Player, Failure> {
    Ok(Player::from_number(n)?)
}

unsafe fn emit(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure(SdStatus::Internal, e.to_string()))?;
    text.push('\n');
    *out = CString::new(text).map_err(|e| Failure(SdStatus::Internal, e.to_string()))?.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a NUL-terminated JSON game. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sd_game_from_json(json: *const c_char, out: *mut *mut SdGame) -> SdStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let source = CStr::from_ptr(json).to_bytes().to_vec();
        let game = parse_game(&source)?;
        *out = Box::into_raw(Box::new(SdGame { game, source }));
        Ok(SdStatus::Ok)
    })
}

/// # Safety
/// `game` must be null or a handle from `sd_game_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_game_free(game: *mut SdGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of actions of `player` (1 = row, 2 = column).
///
/// # Safety
/// `game` must be a live handle or null; `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn sd_game_num_actions(game: *const SdGame, player_number: u8, out: *mut usize) -> SdStatus {
    guard(|| {
        let g = game_ref(game)?;
        let p = player(player_number)?;
        *out.as_mut().ok_or_else(|| null("out"))? = g.game.num_actions(p);
        Ok(SdStatus::Ok)
    })
}

/// Index of the action called `name`, for use with `sd_dominate_json`.
///
/// # Safety
/// `game` must be a live handle or null; `name` a C string or null; `out`
/// writable or null.
#[no_mangle]
pub unsafe extern "C" fn sd_game_action_index(
    game: *const SdGame,
    player_number: u8,
    name: *const c_char,
    out: *mut usize,
) -> SdStatus {
    guard(|| {
        let g = game_ref(game)?;
        let p = player(player_number)?;
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name).to_string_lossy();
        let i = g
            .game
            .action_index(p, &name)
            .ok_or_else(|| Failure(SdStatus::InvalidInput, format!("player {player_number} has no action {name:?}")))?;
        *out.as_mut().ok_or_else(|| null("out"))? = i;
        Ok(SdStatus::Ok)
    })
}

/// Full analysis report, identical to `stratdom analyze`.
///
/// # Safety
/// `game` must be a live handle or null; `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn sd_analyze_json(game: *const SdGame, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let g = game_ref(game)?;
        let results = report::analyze(&g.game)?;
        emit(out, &report::envelope("analyze", &g.source, "ok", results))?;
        Ok(SdStatus::Ok)
    })
}

/// Elimination trace, identical to `stratdom iesds`.
///
/// # Safety
/// `game` must be a live handle or null; `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn sd_iesds_json(game: *const SdGame, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let g = game_ref(game)?;
        let trace = dominance::iesds(&g.game)?;
        emit(out, &report::envelope("iesds", &g.source, "ok", report::elimination_trace(&g.game, &trace)))?;
        Ok(SdStatus::Ok)
    })
}

/// Best-response evidence for every action, identical to `stratdom rationalize`.
///
/// # Safety
/// `game` must be a live handle or null; `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn sd_rationalize_json(game: *const SdGame, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let g = game_ref(game)?;
        let results = report::rationalize(&g.game)?;
        emit(out, &report::envelope("rationalize", &g.source, "ok", results))?;
        Ok(SdStatus::Ok)
    })
}

/// Dominance verdict for one action. Returns `SD_STATUS_OK` with a
/// certificate when dominated and `SD_STATUS_NOT_DOMINATED` otherwise; the
/// report is written in both cases.
///
/// # Safety
/// `game` must be a live handle or null; `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn sd_dominate_json(
    game: *const SdGame,
    player_number: u8,
    action: usize,
    out: *mut *mut c_char,
) -> SdStatus {
    guard(|| {
        let g = game_ref(game)?;
        let p = player(player_number)?;
        let (status, results) = report::dominate(&g.game, p, action)?;
        emit(out, &report::envelope("dominate", &g.source, status, results))?;
        Ok(if status == "dominated" { SdStatus::Ok } else { SdStatus::NotDominated })
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
