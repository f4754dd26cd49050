//! Everything derived from a finished table.

pub mod chains;
pub mod collapse;
pub mod firstop;
pub mod fit;
pub mod hypotheses;
pub mod reconstruct;
pub mod sequences;
pub mod toplog;

pub use chains::{backward_chain, chain_scan, ChainRecord};
pub use collapse::{collapse_scan, CollapseRecord, CollapseStatus};
pub use firstop::{classify, first_operation_scan, FirstOp, FirstOpRecord};
pub use fit::{fit_e_asymptote, fit_line, fit_values, FitResult, Residual};
pub use hypotheses::{
    check_defect_rank, check_e_closed, defect_rank_constant, check_e_primes, check_log_bound, check_pow2_plus1,
    check_prime_step, check_products, mersenne_table, MersenneRow, MersenneTable, ProductKind,
};
pub use reconstruct::{reconstruct, Policy};
pub use sequences::{derive_sequences, SeqEntry, SequenceSet};
pub use toplog::{has_ties, top_log_complexity, TopLogRow};
