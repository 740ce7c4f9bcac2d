//! Explicit (2,3)-generator pairs for `SL_12(q)`.
//!
//! For any prime power `q = p^m` this crate constructs a pair of matrices
//! `x, y` in `SL_12(q)` with `x^2 = y^3 = 1` such that `z = xy` has exact
//! multiplicative order `Q` (`q^11 - 1`, halved exactly for `q = 3` and
//! `q = 7`), and then machine-checks every finite step of the argument that
//! the pair generates: the exact orders of `x`, `y`, `z`, the characteristic
//! polynomial identity for `z`, the full lattice of `z`-invariant subspaces,
//! the absence of common eigenvectors, and the irreducibility of the pair's
//! action. The checked facts, together with the one classification fact
//! taken on citation, are emitted as a self-contained JSON certificate that
//! can be re-verified from scratch by an independent run.
//!
//! The modules follow the pipeline:
//!
//! * [`arith`]: exact integer support: deterministic primality, factoring
//!   with an explicit work budget, the order target `Q`.
//! * [`gf`]: the field tower `GF(p) ⊂ GF(q) ⊂ GF(q^11)`, canonical defining
//!   polynomials, the order-Q element `ω`, and its minimal polynomial whose
//!   coefficients `α_1 .. α_11` drive the whole construction.
//! * [`matgen`]: the matrices `x`, `y`, `z` themselves, exact order
//!   certification, characteristic polynomials.
//! * [`repcheck`]: the representation-theoretic checks: invariant subspace
//!   lattice, stability, common-eigenvector scan, the generation verdict.
//! * [`cert`]: certificate assembly, byte-deterministic serialization,
//!   from-scratch verification, and the multi-field sweep.
//!
//! The `examples/` directory demonstrates each stage as a runnable program;
//! the `sl12` binary wraps generation, verification, and sweeping as
//! subcommands.

pub mod arith;
pub mod cert;
pub mod gf;
pub mod matgen;
pub mod repcheck;

pub use arith::{compute_q_order, factorize, is_prime, split_prime_power, FactoredInteger};
pub use cert::{
    canonical_json, generate, run_pipeline, sweep, verify, verify_json, Certificate, Pipeline,
    Reports, SweepRow, VerifyFailure, VerifyReport, SCHEMA_VERSION,
};
pub use gf::{AlphaVector, BaseField, ExtElem, FieldSpec, GFqElem, OmegaMode, Poly};
pub use matgen::{order_is_exactly, GeneratorTriple, Mat, Subspace};
pub use repcheck::{
    generation_verdict, spin_oracle, CommonEigenReport, Conclusion, GenerationVerdict,
    IrreducibilityReport, QClass, Verdict, ASSUMPTION_AS1,
};

use num_bigint::BigUint;

/// Crate-wide error type.
///
/// `Consistency` carries a stable machine-readable check name; certificate
/// verification reports failures under these names so that a tampered
/// certificate pinpoints the first broken invariant.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter outside the supported domain (non-prime `p`, `m = 0`,
    /// a reducible defining polynomial, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Factoring exceeded its work budget. The offending cofactor is
    /// reported so the caller can raise `SL12_FACTOR_BUDGET` deliberately.
    #[error(
        "factoring budget exhausted on {n}: cofactor {cofactor} unsplit after budget {budget}"
    )]
    FactorBudget {
        n: BigUint,
        cofactor: BigUint,
        budget: u64,
    },

    /// An internal cross-check failed; `check` is the stable name.
    #[error("consistency check '{check}' failed: {detail}")]
    Consistency { check: &'static str, detail: String },

    /// A certificate that does not parse or violates its schema.
    #[error("malformed certificate: {0}")]
    Malformed(String),
}
