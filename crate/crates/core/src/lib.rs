//! Verification lab for online knapsack problems with a resource buffer.
//!
//! The model: a knapsack of capacity 1, a buffer of capacity `R ≥ 1`, and
//! items arriving online. Each arriving item is taken into the buffer or
//! rejected irrevocably; in the removable variant buffered items may later be
//! discarded (also irrevocably). After the last round the best subset of the
//! buffer is transferred into the knapsack.
//!
//! This crate provides:
//!
//! - exact rational / algebraic arithmetic ([`exact`]),
//! - the instance model and trace validator ([`model`], [`trace`]),
//! - exact offline oracles ([`oracle`]),
//! - every deterministic online algorithm for the four variants
//!   ([`algorithms`]),
//! - adaptive lower-bound adversaries and the duel driver ([`adversary`]),
//! - a fuzzing / reporting harness and CLI ([`harness`], [`cli`]).

pub mod adversary;
pub mod algorithms;
pub mod cli;
pub mod exact;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod trace;
