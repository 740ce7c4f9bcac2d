//! Walks the irreducibility argument for one field: the four z-invariant
//! subspaces, which of them x and y stabilize, the common-eigenvector scan,
//! and an independent spinning cross-check.
//!
//! The punchline: z has so few invariant subspaces that any proper
//! subgroup containing x, y, and z would have to stabilize one of them,
//! and the checks rule each one out.
//!
//! Usage: cargo run --example invariant_subspaces [q]

use num_bigint::BigUint;
use sl12::matgen::DIM;
use sl12::repcheck::stability_check;
use sl12::{run_pipeline, spin_oracle, split_prime_power, OmegaMode, Subspace, Verdict};

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(3);
    let (p, m) = split_prime_power(&BigUint::from(q)).expect("prime power");
    let pl = run_pipeline(p, m as usize, &OmegaMode::Deterministic).expect("pipeline");
    let base = pl.spec.base();
    let report = &pl.report;

    println!("z-invariant subspaces (char poly of z has exactly two irreducible factors):");
    for (i, w) in report.z_invariant_lattice.iter().enumerate() {
        println!(
            "  W{i}: dim {:2}   x-stable: {:5}   y-stable: {}",
            w.dim(),
            report.x_stable_flags[i],
            report.y_stable_flags[i]
        );
    }

    println!("common eigenvector scan over (lambda, nu) with lambda^2 = nu^3 = 1:");
    for cell in &report.common_eigen {
        println!(
            "  lambda = {:?}, nu = {:?}: intersection dim {}",
            cell.lambda.0, cell.nu.0, cell.intersection_dim
        );
    }

    match &report.verdict {
        Verdict::Irreducible => println!("verdict: the pair acts irreducibly"),
        Verdict::Reducible { witness } => {
            println!(
                "verdict: reducible, invariant subspace of dim {}",
                witness.dim()
            )
        }
    }

    // independent route: spin every standard basis vector under {x, y}
    let gens = [&pl.triple.x, &pl.triple.y];
    for i in 0..DIM {
        let mut seed = vec![base.zero(); DIM];
        seed[i] = base.one();
        let spun = spin_oracle(base, &[seed], &gens);
        assert_eq!(spun, Subspace::full(base, DIM));
    }
    println!("spin oracle: every basis vector generates all of V under {{x, y}}");

    // U = ker f(z) is z-stable by construction but must not be y-stable
    let u = &report.z_invariant_lattice[2];
    assert!(stability_check(base, u, &pl.triple.z));
    assert!(!stability_check(base, u, &pl.triple.y));
    println!("U = span(v1..v11) is z-stable and y moves it, as required");
}
