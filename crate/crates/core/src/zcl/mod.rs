//! Zero-divisor cup-length: explicit witnesses, expansion, search and certificates.

pub mod certificate;
pub mod factors;
pub mod search;
pub mod theorem;

pub use certificate::{Certificate, Conclusion, Failure, Params, TOOL_VERSION};
pub use factors::{expand, expand_traced, witness_factors, Expansion, Factor, FactorList};
pub use search::{build_pool, zcl_search, Pool, PoolEntry, SearchConfig, SearchReport, Strategy};
pub use theorem::{family_power, tc_bounds, verify_steps_s3, verify_theorem, ProofChain, StepRecord, TcBounds};
