//! Exact differential operators on curves A = k + I ⊂ k[t], k = ℚ.
//!
//! Layers, bottom up:
//!
//! - [`rational`], [`poly`]: exact arithmetic in ℚ and k[t].
//! - [`weyl`]: the Weyl algebra D_B in `t^i ∂^j` normal form and its action on k[t].
//! - [`curve`]: the curve datum `f = f_1 ⋯ f_r` and membership tests for A, Iⁿ, D_A.
//! - [`obstruction`]: Ψ, μ₋, μ*, the counit, and witness operators.
//! - [`certificate`]: replayable refutation certificates.
//!
//! Batch work (randomized suites, witness searches, large products) goes
//! through [`Exec`], which uses rayon when the `parallel` feature is enabled.

pub mod certificate;
pub mod curve;
pub mod error;
pub mod exec;
pub mod obstruction;
pub mod poly;
pub mod presets;
pub mod rational;
pub mod sample;
pub mod suites;
pub mod weyl;

pub use certificate::{Certificate, CheckKind, CheckRecord, Claim, Quantifier, RefuteOptions};
pub use curve::{CurveRing, DaDecomposition, DaObstruction, Irreducibility};
pub use error::{ArithError, CurveError, ObstructionError};
pub use exec::Exec;
pub use obstruction::{Decomposition, OperatorPairs, WitnessPair};
pub use poly::Poly;
pub use rational::Rational;
pub use weyl::{GeneratorWord, Symbol, WeylOp};
