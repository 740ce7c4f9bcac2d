//! Factors the group-element order targets Q = q^11 - 1 for a range of
//! fields, exercising the deterministic primality test and the budgeted
//! Pollard rho factorizer that back every order certificate.
//!
//! Every factorization is revalidated structurally: primes ascending, each
//! certified prime, product recomposing to Q. The budget can be raised via
//! the SL12_FACTOR_BUDGET environment variable if a future large q needs it.
//!
//! Usage: cargo run --example factor_orders [q1 q2 ...]

use num_bigint::BigUint;
use num_traits::One;
use sl12::{compute_q_order, factorize, is_prime};

fn main() {
    let mut qs: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .collect();
    if qs.is_empty() {
        qs = vec![2, 3, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 121];
    }

    for q in qs {
        let full = BigUint::from(q).pow(11) - BigUint::one();
        let (q_order, halved) = compute_q_order(&BigUint::from(q));
        let factored = match factorize(&full) {
            Ok(f) => f,
            Err(e) => {
                println!("q = {q}: {e}");
                continue;
            }
        };
        assert!(factored.is_valid(), "structural validation");
        assert!(factored.primes().all(is_prime));

        let terms: Vec<String> = factored
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        println!(
            "q = {q:>3}: q^11 - 1 = {} = {}{}",
            full,
            terms.join(" * "),
            if halved {
                format!("  (order target halves to {q_order})")
            } else {
                String::new()
            }
        );
    }
}
