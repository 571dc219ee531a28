//! Divided power modules, cohomology of symmetric groups with coefficients
//! in FI-modules, and certified periodicity of the resulting dimensions.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: exact linear algebra over `F_p` and `Z`.
//! * [`dpa`]: the divided power algebra `D`, finitely presented graded
//!   `D`-modules, connections and the `ε`/`λ` invariants.
//! * [`symrep`]: permutations, Young subgroups and their representations.
//! * [`fimod`]: FI-modules as evaluable families with transition maps.
//! * [`grpcoh`]: cochain-level group cohomology with restriction,
//!   corestriction and conjugation.
//! * [`gamma`]: `Γ^t(M) = ⊕ H^t(S_n, M_n)` as a graded `D`-module.
//! * [`verify`]: the experiment suites driven by the CLI and tests.

pub mod dpa;
pub mod error;
pub mod exactlin;
pub mod fimod;
pub mod gamma;
pub mod grpcoh;
pub mod symrep;
pub mod verify;
pub use error::{Error, Result};
