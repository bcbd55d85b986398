//! Runs players over puzzle suites with grader feedback between turns and
//! reports cumulative solve rates.

pub mod episode;
pub mod metrics;
pub mod player;
pub mod remote;
pub mod report;
pub mod suite;

pub use episode::{run_episode, EpisodeError, DEFAULT_MAX_TURNS};
pub use metrics::{CellRates, MetricsTable};
pub use player::{FlawedPlayer, OraclePlayer, Player, PlayerError, RandomPlayer};
pub use remote::{RemoteConfig, RemoteError, RemoteModelPlayer, TranscriptEntry};
pub use suite::{run_suite, Shot, ShotBank, SuiteConfig, SuiteError, SuiteResult};
