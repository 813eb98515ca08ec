//! Minimal transitive star factorizations of permutations: brute-force
//! enumeration, the word and tree encodings, and the pivot-indexed maps
//! that carry factorizations with one pivot to factorizations with another.

pub mod audit;
pub mod bijection;
pub mod cli;
mod error;
pub mod hooks;
pub mod instance;
pub mod perm;
pub mod star;
pub mod tree;
pub mod word;
pub mod worked;

pub use audit::AuditReport;
pub use bijection::{translate, PhiInput, PreimagePolicy, Translation};
pub use error::{Error, Result};
pub use hooks::{HookAssignment, HookedSequence, Slot, WordTable};
pub use instance::Instance;
pub use perm::{falling_factorial, CycleDecomposition, Permutation, PivotLocation};
pub use star::{StarFactorization, StarTransposition, DEFAULT_BUDGET};
pub use tree::{Label, OrderedTree};
pub use word::{CycleEnclosures, EnclosureChoice, Word};
