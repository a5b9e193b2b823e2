//! Class semigroups of `H` inside its free abelian hull.

mod essential;
mod table;
mod transfer;

pub use essential::{essential_prime_set, essential_report, EssentialPrimes, EssentialReport};
pub use table::{
    class_table, reduced_class_semigroup, CMonoidVerdict, Certificate, ClassInfo, ClassTable, RayEvidence,
    MAX_PROBE_CELLS,
};
pub use transfer::{beta_transfer, Transfer};
