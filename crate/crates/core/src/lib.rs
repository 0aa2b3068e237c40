//! A priori voting power in weighted committees choosing among several
//! alternatives.
//!
//! Five resolute rules (plurality, plurality with runoff, Borda, Copeland,
//! Schulze) are evaluated on weighted tallies with lexicographic tie-breaking.
//! Influence is measured as the normalized probability that a random change
//! of one player's ranking changes the winner, computed exactly by
//! enumeration ([`exact`]) or estimated by seeded Monte Carlo ([`mc`]).

pub mod committee;
mod enumerate;
pub mod error;
pub mod exact;
pub mod io;
pub mod mc;
pub mod ranking;
pub mod render;
pub mod report;
pub mod rules;
pub mod simplex;
pub mod tally;

pub use committee::{Alternative, Committee, Rule};
pub use error::{Error, Result};
pub use exact::{influence_exact, ExactPowerReport, OutcomeTable};
pub use mc::{influence_mc, McConfig, McPowerReport};
pub use ranking::{Profile, Ranking};
pub use rules::winner;
