//! Generation certificates: assembly, canonical serialization, independent
//! re-verification, and the multi-field sweep.
//!
//! A certificate records the inputs (`p`, `m`, `h`, `g`, `ω`, mode), every
//! derived object (`Q` and its factorization, `f`, the alphas, the three
//! matrices), and the full check reports. Verification trusts only the
//! inputs: it rebuilds everything else from scratch and compares, so a
//! stored matrix or report cannot drift from what the parameters imply
//! without detection. The one uncomputed ingredient is the maximal-subgroup
//! classification, embedded verbatim as [`ASSUMPTION_AS1`].
//!
//! Serialization is canonical JSON: object keys sorted (serialization goes
//! through `serde_json::Value`, whose object map is ordered), no
//! insignificant whitespace, all unbounded integers as decimal strings,
//! digit vectors as plain integer arrays. Two deterministic runs with the
//! same parameters produce byte-identical files.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{self, FactoredInteger};
use crate::gf::{AlphaVector, ExtElem, FieldSpec, GFqElem, OmegaMode, Poly};
use crate::matgen::{order_is_exactly, GeneratorTriple, Mat, Subspace, DIM};
use crate::repcheck::{
    self, Conclusion, GenerationVerdict, IrreducibilityReport, QClass, Verdict, ASSUMPTION_AS1,
};
use crate::Error;

/// Bumped on any change to the certificate schema.
pub const SCHEMA_VERSION: &str = "sl12-cert/1";

/// Serde helper: `u64` as a JSON decimal string.
pub(crate) mod u64str {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| serde::de::Error::custom(format!("invalid decimal integer '{s}'")))
    }
}

/// Serde helper: `BigUint` as a JSON decimal string.
pub(crate) mod biguintstr {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| serde::de::Error::custom(format!("invalid decimal integer '{s}'")))
    }
}

/// The check reports carried by a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reports {
    pub irreducibility: IrreducibilityReport,
    pub verdict: GenerationVerdict,
}

/// A self-contained generation certificate for one prime power `q = p^m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: String,
    #[serde(with = "u64str")]
    pub p: u64,
    #[serde(with = "u64str")]
    pub m: u64,
    #[serde(with = "biguintstr")]
    pub q: BigUint,
    /// Defining polynomial of `GF(q)` over `GF(p)`, digits ascending.
    pub h: Vec<u64>,
    /// Defining polynomial of `GF(q^11)` over `GF(q)`, ascending.
    pub g: Vec<GFqElem>,
    #[serde(rename = "Q", with = "biguintstr")]
    pub q_order: BigUint,
    pub factored_q: FactoredInteger,
    pub omega: ExtElem,
    pub omega_mode: OmegaMode,
    pub f: Poly,
    pub alpha: AlphaVector,
    pub x: Mat,
    pub y: Mat,
    pub z: Mat,
    pub reports: Reports,
    pub assumption: String,
}

/// Every artifact of one end-to-end run, before certificate packaging.
/// Exposed so examples and tests can reach intermediate objects.
pub struct Pipeline {
    pub spec: FieldSpec,
    pub q_order: BigUint,
    pub halved: bool,
    pub factored_full: FactoredInteger,
    pub factored_q: FactoredInteger,
    pub omega: ExtElem,
    pub f: Poly,
    pub alpha: AlphaVector,
    pub triple: GeneratorTriple,
    pub report: IrreducibilityReport,
    pub verdict: GenerationVerdict,
}

/// The named boolean checks, recomputed identically by `generate` and
/// `verify`. Keys are stable; tests and tamper reports refer to them.
#[allow(clippy::too_many_arguments)]
fn compute_checks(
    spec: &FieldSpec,
    q_order: &BigUint,
    factored_q: &FactoredInteger,
    omega: &ExtElem,
    f: &Poly,
    alpha: &AlphaVector,
    triple: &GeneratorTriple,
    report: &IrreducibilityReport,
) -> BTreeMap<String, bool> {
    let base = spec.base();
    let mut checks = BTreeMap::new();
    let mut put = |name: &str, ok: bool| checks.insert(name.to_string(), ok);

    put(
        "factored_q_valid",
        factored_q.is_valid() && factored_q.value == *q_order,
    );
    put("omega_order", spec.ext_order_is_exactly(omega, factored_q));
    put("f_irreducible", base.poly_is_irreducible(f));
    put("alpha11_class", alpha11_class_ok(spec, alpha));

    let two = FactoredInteger {
        value: BigUint::from(2u32),
        factors: vec![(BigUint::from(2u32), 1)],
    };
    let three = FactoredInteger {
        value: BigUint::from(3u32),
        factors: vec![(BigUint::from(3u32), 1)],
    };
    put("x_order_2", order_is_exactly(base, &triple.x, &two));
    put("y_order_3", order_is_exactly(base, &triple.y, &three));
    put("z_order_Q", order_is_exactly(base, &triple.z, factored_q));
    put("x_determinant", base.is_one(&triple.x.det(base)));
    put("y_determinant", base.is_one(&triple.y.det(base)));
    put("z_determinant", base.is_one(&triple.z.det(base)));

    let charpoly_ok = match base.inv(alpha.alpha(11)) {
        None => false,
        Some(a11_inv) => {
            let lin = Poly(vec![base.neg(&a11_inv), base.one()]);
            let expected = base.poly_mul(&lin, f);
            let nonroot = !base.is_zero(&base.poly_eval(f, &a11_inv));
            put("f_nonroot_at_alpha11_inv", nonroot);
            triple.z.char_poly(base) == expected
        }
    };
    put("charpoly_identity", charpoly_ok);

    let lattice = &report.z_invariant_lattice;
    put("lattice_size_4", lattice.len() == 4);
    put(
        "lattice_z_stable",
        lattice.iter().all(|w| w.is_stable_under(base, &triple.z)),
    );
    put("w1_dim_1", lattice.len() == 4 && lattice[1].dim() == 1);
    let span_v1_v11 = {
        let mut vecs = Vec::with_capacity(DIM - 1);
        for i in 0..DIM - 1 {
            let mut v = vec![base.zero(); DIM];
            v[i] = base.one();
            vecs.push(v);
        }
        Subspace::from_spanning(base, vecs, DIM)
    };
    put(
        "u_equals_span_v1_v11",
        lattice.len() == 4 && lattice[2] == span_v1_v11,
    );
    put(
        "no_common_eigenvector",
        report.common_eigen.iter().all(|r| r.intersection_dim == 0),
    );
    put("irreducible", report.verdict == Verdict::Irreducible);

    checks
}

/// The three-case classification of `α_11 = ω^((q^11-1)/(q-1))`:
/// order `q - 1` generically, `α_11 = 1` at `q = 3`, a nontrivial cube
/// root of unity at `q = 7`.
fn alpha11_class_ok(spec: &FieldSpec, alpha: &AlphaVector) -> bool {
    let base = spec.base();
    let a11 = alpha.alpha(11);
    let q = base.q();
    if q == &BigUint::from(3u32) {
        return base.is_one(a11);
    }
    if q == &BigUint::from(7u32) {
        let cube = base.mul(&base.mul(a11, a11), a11);
        return base.is_one(&cube) && !base.is_one(a11);
    }
    if base.is_zero(a11) {
        return false;
    }
    let qm1 = q - BigUint::one();
    match arith::factorize(&qm1) {
        Err(_) => false,
        Ok(factored) => base.mult_order(a11, &factored) == qm1,
    }
}

/// Runs the whole construction for `q = p^m` with canonical field choices.
pub fn run_pipeline(p: u64, m: usize, mode: &OmegaMode) -> Result<Pipeline, Error> {
    let spec = FieldSpec::canonical(p, m)?;
    let (q_order, halved) = arith::compute_q_order(spec.base().q());
    let factored_full = arith::factorize(spec.full_group_order())?;
    let factored_q = if halved {
        factored_full.divide_out_one(&BigUint::from(2u32))
    } else {
        factored_full.clone()
    };
    debug_assert_eq!(factored_q.value, q_order);

    let omega = spec.find_omega(&q_order, &factored_full, mode)?;
    let (f, alpha) = spec.min_poly_of_omega(&omega)?;
    let triple = GeneratorTriple::build(spec.base(), &alpha)?;
    let report = repcheck::irreducibility_verdict(spec.base(), &triple, &f, &alpha)?;
    let checks = compute_checks(
        &spec,
        &q_order,
        &factored_q,
        &omega,
        &f,
        &alpha,
        &triple,
        &report,
    );
    let verdict = repcheck::generation_verdict(spec.base().q(), checks);

    // Outside the excluded pair, a failed check means the construction is
    // broken for this q; abort loudly instead of emitting a certificate.
    if verdict.q_class != QClass::Excluded {
        if let Conclusion::NotEstablished { failed } = &verdict.conclusion {
            return Err(Error::Consistency {
                check: "generation_checks",
                detail: format!(
                    "checks failed for q = {}: {}",
                    spec.base().q(),
                    failed.join(", ")
                ),
            });
        }
    }

    Ok(Pipeline {
        spec,
        q_order,
        halved,
        factored_full,
        factored_q,
        omega,
        f,
        alpha,
        triple,
        report,
        verdict,
    })
}

/// Builds the certificate for `q = p^m`.
pub fn generate(p: u64, m: usize, mode: &OmegaMode) -> Result<Certificate, Error> {
    let pl = run_pipeline(p, m, mode)?;
    Ok(Certificate {
        schema_version: SCHEMA_VERSION.to_string(),
        p: pl.spec.base().p(),
        m: pl.spec.base().m() as u64,
        q: pl.spec.base().q().clone(),
        h: pl.spec.base().h().to_vec(),
        g: pl.spec.g().to_vec(),
        q_order: pl.q_order.clone(),
        factored_q: pl.factored_q.clone(),
        omega: pl.omega.clone(),
        omega_mode: mode.clone(),
        f: pl.f.clone(),
        alpha: pl.alpha.clone(),
        x: pl.triple.x.clone(),
        y: pl.triple.y.clone(),
        z: pl.triple.z.clone(),
        reports: Reports {
            irreducibility: pl.report,
            verdict: pl.verdict,
        },
        assumption: ASSUMPTION_AS1.to_string(),
    })
}

/// Canonical JSON encoding: sorted keys, compact separators, trailing
/// newline. Byte-deterministic for fixed certificate content.
pub fn canonical_json(cert: &Certificate) -> Result<String, Error> {
    let value = serde_json::to_value(cert).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(format!("{value}\n"))
}

/// One verification failure, named by the stable check identifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyFailure {
    pub check: String,
    pub detail: String,
}

/// Outcome of re-verifying a certificate.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn fail(failures: &mut Vec<VerifyFailure>, check: &str, detail: impl Into<String>) {
    failures.push(VerifyFailure {
        check: check.to_string(),
        detail: detail.into(),
    });
}

/// Re-verifies a certificate from its stored inputs alone.
///
/// Trusted inputs: `p`, `m`, `h`, `g`, `ω` (and the mode as metadata).
/// Everything else (`Q`, factorization, `f`, alphas, matrices, reports) is
/// recomputed and compared. Stages depend on one another, so a failure in a
/// prerequisite (a broken field tower, an `ω` of the wrong order) ends
/// verification early with that failure; independent comparisons are all
/// collected.
pub fn verify(cert: &Certificate) -> VerifyReport {
    let mut failures = Vec::new();

    if cert.schema_version != SCHEMA_VERSION {
        fail(
            &mut failures,
            "schema_version",
            format!(
                "certificate declares '{}', verifier implements '{SCHEMA_VERSION}'",
                cert.schema_version
            ),
        );
        return VerifyReport { failures };
    }

    let spec = match FieldSpec::with_polys(cert.p, cert.m as usize, cert.h.clone(), cert.g.clone())
    {
        Ok(spec) => spec,
        Err(e) => {
            fail(&mut failures, "field_tower", e.to_string());
            return VerifyReport { failures };
        }
    };
    if spec.base().q() != &cert.q {
        fail(
            &mut failures,
            "q_value",
            format!("stored q = {} but p^m = {}", cert.q, spec.base().q()),
        );
    }

    let (q_order, _) = arith::compute_q_order(spec.base().q());
    if q_order != cert.q_order {
        fail(
            &mut failures,
            "Q_value",
            format!("stored Q = {} but recomputed Q = {q_order}", cert.q_order),
        );
        return VerifyReport { failures };
    }
    if !(cert.factored_q.is_valid() && cert.factored_q.value == q_order) {
        fail(
            &mut failures,
            "factored_q_valid",
            "stored factorization does not recompose to Q with certified ascending primes",
        );
        return VerifyReport { failures };
    }
    if !spec.ext_in_range(&cert.omega) {
        fail(
            &mut failures,
            "omega_range",
            "omega has digits outside GF(q^11)",
        );
        return VerifyReport { failures };
    }
    if !spec.ext_order_is_exactly(&cert.omega, &cert.factored_q) {
        fail(
            &mut failures,
            "omega_order",
            "stored omega does not have exact order Q",
        );
        return VerifyReport { failures };
    }

    let (f, alpha) = match spec.min_poly_of_omega(&cert.omega) {
        Ok(v) => v,
        Err(e) => {
            fail_from_error(&mut failures, e, "min_poly");
            return VerifyReport { failures };
        }
    };
    if f != cert.f {
        fail(
            &mut failures,
            "f_matches",
            "stored f differs from the rebuilt minimal polynomial",
        );
    }
    if alpha != cert.alpha {
        fail(
            &mut failures,
            "alpha_matches",
            "stored alphas differ from the rebuilt ones",
        );
    }

    let triple = match GeneratorTriple::build(spec.base(), &alpha) {
        Ok(t) => t,
        Err(e) => {
            fail_from_error(&mut failures, e, "generator_build");
            return VerifyReport { failures };
        }
    };
    if triple.x != cert.x {
        fail(
            &mut failures,
            "x_matches",
            "stored x differs from the rebuilt matrix",
        );
    }
    if triple.y != cert.y {
        fail(
            &mut failures,
            "y_matches",
            "stored y differs from the rebuilt matrix",
        );
    }
    if triple.z != cert.z {
        fail(
            &mut failures,
            "z_matches",
            "stored z differs from the rebuilt matrix",
        );
    }

    let report = match repcheck::irreducibility_verdict(spec.base(), &triple, &f, &alpha) {
        Ok(r) => r,
        Err(e) => {
            fail_from_error(&mut failures, e, "irreducibility");
            return VerifyReport { failures };
        }
    };
    let checks = compute_checks(
        &spec,
        &q_order,
        &cert.factored_q,
        &cert.omega,
        &f,
        &alpha,
        &triple,
        &report,
    );
    let verdict = repcheck::generation_verdict(spec.base().q(), checks);

    if verdict.q_class != QClass::Excluded {
        for (name, ok) in &verdict.checks {
            if !ok {
                fail(&mut failures, name, "recomputed check failed");
            }
        }
    }
    if report != cert.reports.irreducibility {
        fail(
            &mut failures,
            "reports_match",
            "stored irreducibility report differs from the recomputed one",
        );
    }
    if verdict != cert.reports.verdict {
        fail(
            &mut failures,
            "conclusion_matches",
            "stored verdict differs from the recomputed one",
        );
    }
    if cert.assumption != ASSUMPTION_AS1 {
        fail(
            &mut failures,
            "assumption_text",
            "stored assumption text differs from AS-1",
        );
    }

    VerifyReport { failures }
}

fn fail_from_error(failures: &mut Vec<VerifyFailure>, e: Error, fallback: &str) {
    match e {
        Error::Consistency { check, detail } => fail(failures, check, detail),
        other => fail(failures, fallback, other.to_string()),
    }
}

/// Parses and verifies a certificate from its JSON text.
pub fn verify_json(text: &str) -> Result<(Certificate, VerifyReport), Error> {
    let cert: Certificate =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let report = verify(&cert);
    Ok((cert, report))
}

/// One row of the sweep summary.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: u64,
    pub p: Option<u64>,
    pub m: Option<u64>,
    #[serde(rename = "Q")]
    pub q_order: Option<String>,
    pub halved: Option<bool>,
    pub conclusion: Option<String>,
    pub all_checks_passed: Option<bool>,
    pub verify_passed: Option<bool>,
    pub wall_ms: u64,
    pub error: Option<String>,
}

/// Generates and re-verifies a certificate per requested `q`, never letting
/// one failure abort the rest. Rows come back in input order.
pub fn sweep(q_values: &[u64]) -> Vec<SweepRow> {
    q_values.iter().map(|&q| sweep_one(q)).collect()
}

fn conclusion_label(c: &Conclusion) -> String {
    match c {
        Conclusion::Generates => "generates".to_string(),
        Conclusion::NotEstablished { .. } => "not_established".to_string(),
        Conclusion::ExcludedDiagnostic => "excluded_diagnostic".to_string(),
    }
}

fn sweep_one(q: u64) -> SweepRow {
    let started = Instant::now();
    let mut row = SweepRow {
        q,
        p: None,
        m: None,
        q_order: None,
        halved: None,
        conclusion: None,
        all_checks_passed: None,
        verify_passed: None,
        wall_ms: 0,
        error: None,
    };
    let done = |mut row: SweepRow, started: Instant| {
        row.wall_ms = started.elapsed().as_millis() as u64;
        row
    };

    let (p, m) = match arith::split_prime_power(&BigUint::from(q)) {
        Ok(pm) => pm,
        Err(e) => {
            row.error = Some(e.to_string());
            return done(row, started);
        }
    };
    row.p = Some(p);
    row.m = Some(m as u64);

    let cert = match generate(p, m as usize, &OmegaMode::Deterministic) {
        Ok(c) => c,
        Err(e) => {
            row.error = Some(e.to_string());
            return done(row, started);
        }
    };
    row.q_order = Some(cert.q_order.to_string());
    row.halved = Some(cert.reports.verdict.q_class == QClass::HalvedQ);
    row.conclusion = Some(conclusion_label(&cert.reports.verdict.conclusion));
    row.all_checks_passed = Some(cert.reports.verdict.checks.values().all(|&ok| ok));
    row.verify_passed = Some(verify(&cert).passed());
    done(row, started)
}
