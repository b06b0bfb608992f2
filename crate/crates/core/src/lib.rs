//! Mod-2 cohomology rings of iterated connected sums of real projective
//! spaces, their tensor powers, `s`-th zero divisors and zero-divisor
//! cup-length certificates for higher topological complexity.

pub mod class;
pub mod connected_sum;
pub mod error;
pub mod gf2;
pub mod presentation;
pub mod product;
pub mod ring;
pub mod zcl;
pub mod zerodiv;

pub use class::{ClassVector, RingId};
pub use connected_sum::connected_sum;
pub use error::{Error, Result};
pub use gf2::BitMatrix;
pub use presentation::{parse_presentation, ring_from_table, to_presentation, StructureSpec};
pub use product::ProductRing;
pub use ring::{BasisElement, Family, RingTable};
pub use zcl::{
    expand, family_power, tc_bounds, verify_steps_s3, verify_theorem, witness_factors, zcl_search, Certificate,
    Conclusion, FactorList, Pool, SearchConfig, Strategy,
};
pub use zerodiv::{cup_image, cup_map, is_zero_divisor, kernel_basis, CupMatrix, KernelBasis};
