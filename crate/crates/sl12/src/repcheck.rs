//! Irreducibility of the `<x, y>`-action and the generation verdict.
//!
//! The structure that makes irreducibility finitely checkable: the
//! characteristic polynomial of `z` is `(t - α_11^{-1})·f(t)` with `f`
//! irreducible of degree 11 and `f(α_11^{-1}) != 0`, so `z` has exactly four
//! invariant subspaces: `0`, the line `W_1 = ker(z - α_11^{-1} I)`, the
//! hyperplane `U = ker f(z)`, and `V`. Every `<x, y>`-invariant subspace is
//! in particular `z`-invariant (`z = xy`), so checking `x`- and
//! `y`-stability of the two proper members settles irreducibility outright.
//! A direct common-eigenvector scan over all `(λ, ν)` with `λ^3 = 1`,
//! `ν = ±1` re-confirms the one-dimensional case, and a spinning closure
//! serves as an independent oracle in the test suite.
//!
//! What is *not* checked here: that a proper subgroup of `SL_12(q)`
//! containing an element of order `Q` must act reducibly. That is the cited
//! classification fact [`ASSUMPTION_AS1`], and the verdict names it rather
//! than silently relying on it.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::gf::{AlphaVector, BaseField, GFqElem, Poly};
use crate::matgen::{kernel_general, GeneratorTriple, Mat, Subspace, DIM};
use crate::Error;

/// The one fact taken on citation instead of computed.
pub const ASSUMPTION_AS1: &str = "AS-1: every maximal subgroup of SL_12(q) whose order is \
divisible by Q stabilizes a subspace of dimension 1 or 11. Source: J. N. Bray, D. F. Holt, \
C. M. Roney-Dougal, The Maximal Subgroups of the Low-Dimensional Finite Classical Groups, \
LMS Lecture Note Series 407, Cambridge University Press, 2013, Tables 8.76 and 8.77. \
Every other step of the argument is machine-checked; this classification fact is not.";

/// One `(λ, ν)` cell of the common-eigenvector scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonEigenReport {
    pub lambda: GFqElem,
    pub nu: GFqElem,
    pub intersection_dim: usize,
    /// A vector satisfying both eigen-equations, present iff the
    /// intersection is nonzero.
    pub witness: Option<Vec<GFqElem>>,
}

/// Outcome of the lattice-based irreducibility decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    Reducible { witness: Subspace },
}

/// Everything the irreducibility decision looked at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    /// `{0}`, `W_1`, `U`, `V` in ascending dimension.
    pub z_invariant_lattice: Vec<Subspace>,
    pub x_stable_flags: Vec<bool>,
    pub y_stable_flags: Vec<bool>,
    pub common_eigen: Vec<CommonEigenReport>,
    pub verdict: Verdict,
}

/// Which regime `q` falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QClass {
    /// `q ∈ {2, 4}`: the argument is out of scope; diagnostics only.
    Excluded,
    /// `q ∈ {3, 7}`: the target order is `(q^11 - 1)/2`.
    HalvedQ,
    Generic,
}

impl QClass {
    pub fn of(q: &BigUint) -> QClass {
        let small = [
            (2u32, QClass::Excluded),
            (4, QClass::Excluded),
            (3, QClass::HalvedQ),
            (7, QClass::HalvedQ),
        ];
        for (v, class) in small {
            if q == &BigUint::from(v) {
                return class;
            }
        }
        QClass::Generic
    }
}

/// Final conclusion for one `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// All checks passed and `q ∉ {2, 4}`: `<x, y> = SL_12(q)` modulo AS-1.
    Generates,
    /// Some named check failed; no claim either way.
    NotEstablished { failed: Vec<String> },
    /// `q ∈ {2, 4}`: raw results attached, conclusion withheld.
    ExcludedDiagnostic,
}

/// The named check results and the conclusion they support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationVerdict {
    pub q_class: QClass,
    pub checks: BTreeMap<String, bool>,
    pub conclusion: Conclusion,
}

/// All `z`-invariant subspaces of `V`, ascending by dimension.
///
/// Completeness: invariant subspaces correspond to monic divisors of the
/// minimal polynomial when it is squarefree, and `f_z = (t - α_11^{-1})·f`
/// has exactly two coprime irreducible factors, hence exactly four
/// divisors. Each returned member is re-verified `z`-stable.
pub fn z_invariant_lattice(
    base: &BaseField,
    z: &Mat,
    f: &Poly,
    alpha: &AlphaVector,
) -> Result<Vec<Subspace>, Error> {
    let a11_inv = base.inv(alpha.alpha(11)).ok_or(Error::Consistency {
        check: "alpha11_nonzero",
        detail: "alpha_11 = 0".into(),
    })?;
    let w1 = z.sub_scalar(base, &a11_inv).kernel(base);
    if w1.dim() != 1 {
        return Err(Error::Consistency {
            check: "w1_dimension",
            detail: format!("dim ker(z - alpha_11^-1 I) = {}, expected 1", w1.dim()),
        });
    }
    let u = z.eval_poly(base, f).kernel(base);
    if u.dim() != DIM - 1 {
        return Err(Error::Consistency {
            check: "u_dimension",
            detail: format!("dim ker f(z) = {}, expected 11", u.dim()),
        });
    }
    let lattice = vec![Subspace::zero(DIM), w1, u, Subspace::full(base, DIM)];
    for (i, w) in lattice.iter().enumerate() {
        if !w.is_stable_under(base, z) {
            return Err(Error::Consistency {
                check: "lattice_z_stable",
                detail: format!("lattice member {i} (dim {}) is not z-stable", w.dim()),
            });
        }
    }
    Ok(lattice)
}

/// `g·W ⊆ W`.
pub fn stability_check(base: &BaseField, w: &Subspace, g: &Mat) -> bool {
    w.is_stable_under(base, g)
}

/// The cube roots of unity in `GF(q)`: always `1`, plus two more exactly
/// when `3 | q - 1`, found by an ascending scan.
fn cube_roots_of_unity(base: &BaseField) -> Vec<GFqElem> {
    let expected = if ((base.q() - 1u32) % 3u32).is_zero() {
        3
    } else {
        1
    };
    let mut roots = Vec::with_capacity(expected);
    for a in base.elements() {
        let cube = base.mul(&base.mul(&a, &a), &a);
        if base.is_one(&cube) {
            roots.push(a);
            if roots.len() == expected {
                break;
            }
        }
    }
    assert_eq!(
        roots.len(),
        expected,
        "cyclic group must contain its cube roots"
    );
    roots
}

/// For every `λ` with `λ^3 = 1` and `ν ∈ {1, -1}` (one value in
/// characteristic 2), the intersection `ker(y - λI) ∩ ker(x - νI)` by a
/// stacked-kernel computation. A nonzero intersection is exactly a common
/// eigenvector, i.e. a 1-dimensional `<x, y>`-invariant subspace.
pub fn common_eigenvector_scan(base: &BaseField, x: &Mat, y: &Mat) -> Vec<CommonEigenReport> {
    let mut nus = vec![base.one()];
    let neg = base.neg_one();
    if neg != base.one() {
        nus.push(neg);
    }
    let mut reports = Vec::new();
    for lambda in cube_roots_of_unity(base) {
        let y_shift = y.sub_scalar(base, &lambda);
        for nu in &nus {
            let x_shift = x.sub_scalar(base, nu);
            let mut stacked = y_shift.entries.clone();
            stacked.extend(x_shift.entries.iter().cloned());
            let inter = kernel_general(base, &stacked, DIM);
            let witness = inter.basis().first().cloned();
            if let Some(w) = &witness {
                debug_assert_eq!(
                    y.mul_vec(base, w),
                    w.iter().map(|c| base.mul(c, &lambda)).collect::<Vec<_>>()
                );
                debug_assert_eq!(
                    x.mul_vec(base, w),
                    w.iter().map(|c| base.mul(c, nu)).collect::<Vec<_>>()
                );
            }
            reports.push(CommonEigenReport {
                lambda: lambda.clone(),
                nu: nu.clone(),
                intersection_dim: inter.dim(),
                witness,
            });
        }
    }
    reports
}

/// Smallest subspace containing the seeds and stable under every generator:
/// repeatedly adjoin generator images of the current basis until closed.
pub fn spin_oracle(base: &BaseField, seeds: &[Vec<GFqElem>], gens: &[&Mat]) -> Subspace {
    let mut space = Subspace::from_spanning(base, seeds.to_vec(), DIM);
    loop {
        let mut extended = space.basis().to_vec();
        let mut grew = false;
        for g in gens {
            for b in space.basis() {
                let img = g.mul_vec(base, b);
                if !space.contains(base, &img) {
                    extended.push(img);
                    grew = true;
                }
            }
        }
        if !grew {
            return space;
        }
        space = Subspace::from_spanning(base, extended, DIM);
    }
}

/// First proper lattice member stable under both generators, if any.
fn reducible_witness(lattice: &[Subspace], x_flags: &[bool], y_flags: &[bool]) -> Option<Subspace> {
    lattice
        .iter()
        .zip(x_flags.iter().zip(y_flags))
        .find(|(w, (&xs, &ys))| w.dim() > 0 && w.dim() < DIM && xs && ys)
        .map(|(w, _)| w.clone())
}

/// Decides irreducibility of the `<x, y>`-action.
///
/// Since every `<x, y>`-invariant subspace is `z`-invariant, stability
/// flags over the four-member lattice are exhaustive. The common-eigenvector
/// scan must agree with the flags on the one-dimensional case (`W_1` is the
/// unique `z`-invariant line, as `f` has no roots in `GF(q)`); disagreement
/// is an internal error, not a verdict.
pub fn irreducibility_verdict(
    base: &BaseField,
    triple: &GeneratorTriple,
    f: &Poly,
    alpha: &AlphaVector,
) -> Result<IrreducibilityReport, Error> {
    let lattice = z_invariant_lattice(base, &triple.z, f, alpha)?;
    let x_stable_flags: Vec<bool> = lattice
        .iter()
        .map(|w| w.is_stable_under(base, &triple.x))
        .collect();
    let y_stable_flags: Vec<bool> = lattice
        .iter()
        .map(|w| w.is_stable_under(base, &triple.y))
        .collect();
    let common_eigen = common_eigenvector_scan(base, &triple.x, &triple.y);

    let line_invariant = x_stable_flags[1] && y_stable_flags[1];
    let scan_hit = common_eigen.iter().any(|r| r.intersection_dim > 0);
    if line_invariant != scan_hit {
        return Err(Error::Consistency {
            check: "eigen_scan_consistent",
            detail: format!(
                "lattice says the invariant line {}, eigen scan says {}",
                if line_invariant {
                    "exists"
                } else {
                    "does not exist"
                },
                if scan_hit { "it does" } else { "it does not" },
            ),
        });
    }

    let verdict = match reducible_witness(&lattice, &x_stable_flags, &y_stable_flags) {
        Some(witness) => Verdict::Reducible { witness },
        None => Verdict::Irreducible,
    };
    Ok(IrreducibilityReport {
        z_invariant_lattice: lattice,
        x_stable_flags,
        y_stable_flags,
        common_eigen,
        verdict,
    })
}

/// Combines the named check results into the final conclusion: `generates`
/// requires every check true and `q ∉ {2, 4}`; excluded `q` always yields
/// the diagnostic conclusion with the raw results attached.
pub fn generation_verdict(q: &BigUint, checks: BTreeMap<String, bool>) -> GenerationVerdict {
    let q_class = QClass::of(q);
    let failed: Vec<String> = checks
        .iter()
        .filter(|(_, &ok)| !ok)
        .map(|(name, _)| name.clone())
        .collect();
    let conclusion = if q_class == QClass::Excluded {
        Conclusion::ExcludedDiagnostic
    } else if failed.is_empty() {
        Conclusion::Generates
    } else {
        Conclusion::NotEstablished { failed }
    };
    GenerationVerdict {
        q_class,
        checks,
        conclusion,
    }
}
