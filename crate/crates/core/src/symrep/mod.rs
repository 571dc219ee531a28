//! Symmetric groups, Young subgroups and their representations.

pub mod perm;
pub mod rep;
pub mod specht;
pub mod young;

pub use perm::Perm;
pub use rep::{induce_young, kron, outer_tensor, Rep, SnModule};
pub use specht::{permutation_module, specht_module, standard_tableaux, Partition, SpechtModule, Tableau};
pub use young::{subset_rep, subsets, YoungSubgroup};
