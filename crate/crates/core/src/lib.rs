//! Integer complexity: the fewest ones needed to write `n` with `+`, `·`
//! and parentheses, together with the rank (minimum height among shortest
//! expressions).
//!
//! Three builders produce a [`ComplexityTable`]: the exhaustive
//! [`enumerator`] for small `n`, the relaxation [`sieve`], and the
//! sequential [`dp`] builder with checkpointing. [`analysis`] derives
//! sequences and checks conjectures on a finished table.

pub mod analysis;
pub mod bounds;
pub mod dp;
pub mod enumerator;
pub mod error;
pub mod expr;
pub mod format;
pub mod report;
pub mod sieve;
pub mod table;

pub use bounds::{
    addend_bound, defect, e2_closed, e_closed, integer_logarithm, log_complexity, lower_bound,
    mersenne_upper_bound, upper_bound, BoundPair,
};
pub use dp::{build_dp, factorize_at, resume_dp, DpOptions, EliminatorQueue};
pub use enumerator::{oracle_complexity, oracle_default, Oracle, OracleResult};
pub use error::{Error, IntegrityKind, Result};
pub use expr::{ExprTree, Node, OpKind, RawExpr};
pub use format::{load, load_any, save, save_partial, Loaded};
pub use report::{round_sig, Counterexample, Report, Verdict};
pub use sieve::{bootstrap_addends, build_sieve, build_sieve_with, SieveInit, SieveOptions};
pub use table::{Algorithm, ComplexityTable};
