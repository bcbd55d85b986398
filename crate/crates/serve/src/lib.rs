//! Session-based play over HTTP: puzzles are served one at a time, answers
//! are graded server-side, and every action is kept in an append-only log
//! from which attempts, timing and stats are derived.

pub mod api;
pub mod clock;
pub mod session;
pub mod stats;
pub mod store;

pub use api::{router, serve, serve_on, ApiConfig};
pub use clock::{Clock, ManualClock, SystemClock};
pub use session::{Event, PuzzleProgress, SessionState};
pub use stats::{StatsRow, StatsTable};
pub use store::{CreateRequest, PuzzleSource, Store, StoreError, SubmitOutcome};
