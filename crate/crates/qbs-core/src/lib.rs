//! Deterministic simulation of a bit-by-bit quantum search.
//!
//! The driver fixes one bit of the unknown input per stage: it prepares a
//! superposition over the still-free bits, applies the oracle unitary once,
//! reduces the answer qubit to a classical weight `p`, and feeds `p` to a
//! logistic-map amplifier whose first threshold crossing certifies that
//! solutions exist on the tested branch. A final direct evaluation settles
//! the all-ones candidate when no stage ever detected.
//!
//! The crate is `no_std` (with `alloc`) and fully deterministic: no
//! sampling, no clocks, no global state. Everything operational lives in
//! five modules:
//!
//! - [`oracle`]: the objective function behind truth-table, expression, and
//!   compiled reversible-circuit backends, plus the classical linear scan.
//! - [`qsim`]: dense state-vector simulation with exact gate counting.
//! - [`amplifier`]: the logistic-map channel and its crossing probes.
//! - [`search`]: the staged driver assembling the candidate bits.
//! - [`accounting`]: closed-form gate/channel formulas reconciled against
//!   instrumented runs.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod accounting;
pub mod amplifier;
pub mod bits;
pub mod error;
pub mod oracle;
pub mod qsim;
pub mod search;

pub use bits::BitString;
pub use error::{Error, Result};
