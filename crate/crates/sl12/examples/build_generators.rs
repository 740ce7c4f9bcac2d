//! Constructs the generator pair (x, y) of SL_12(q) and certifies the
//! exact orders: x^2 = 1, y^3 = 1, and z = xy of exact order Q.
//!
//! Usage: cargo run --example build_generators [q]

use num_bigint::BigUint;
use sl12::{run_pipeline, split_prime_power, BaseField, Mat, OmegaMode};

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(5);
    let (p, m) = split_prime_power(&BigUint::from(q)).expect("prime power");
    let pl = run_pipeline(p, m as usize, &OmegaMode::Deterministic).expect("pipeline");
    let base = pl.spec.base();

    println!("x =");
    print_mat(base, &pl.triple.x);
    println!("y = permutation (v1 v2 v3)(v4 v5 v6)(v7 v8 v9)(v10 v11 v12):");
    print_mat(base, &pl.triple.y);
    println!("z = x y =");
    print_mat(base, &pl.triple.z);

    let two = sl12::factorize(&BigUint::from(2u32)).unwrap();
    let three = sl12::factorize(&BigUint::from(3u32)).unwrap();
    assert!(sl12::order_is_exactly(base, &pl.triple.x, &two));
    assert!(sl12::order_is_exactly(base, &pl.triple.y, &three));
    assert!(sl12::order_is_exactly(base, &pl.triple.z, &pl.factored_q));
    println!("ord(x) = 2, ord(y) = 3, ord(z) = {} exactly", pl.q_order);
    println!("det(x) = det(y) = det(z) = 1, so the pair lives in SL_12({q})");
}

/// Prints entries as GF(q) digit vectors, or bare digits over a prime field.
fn print_mat(base: &BaseField, m: &Mat) {
    for row in &m.entries {
        let cells: Vec<String> = row
            .iter()
            .map(|e| {
                if base.m() == 1 {
                    e.0[0].to_string()
                } else {
                    let ds: Vec<String> = e.0.iter().map(u64::to_string).collect();
                    format!("[{}]", ds.join(","))
                }
            })
            .collect();
        println!("  {}", cells.join(" "));
    }
}
