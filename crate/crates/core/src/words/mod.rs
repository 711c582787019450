//! Ring words over named generators: length, evaluation, support balls, and
//! brute-force proximity.

mod closure;
mod eval;
mod oracle;
mod word;

pub use closure::{support_closure, SupportBallReport, SupportStep};
pub use eval::WordEnv;
pub use oracle::{proximity_oracle, word_counts, Proximity, DEFAULT_WORD_CAP};
pub use word::RingWord;
