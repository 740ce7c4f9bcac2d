//! Builds the field tower GF(p) < GF(q) < GF(q^11) for a chosen prime
//! power and prints the canonical defining polynomials.
//!
//! Both polynomials are the lexicographically smallest monic irreducible
//! ones of their degree, comparing low-degree coefficients first, so every
//! run of every build of this crate picks the same tower.
//!
//! Usage: cargo run --example field_tower [q]

use num_bigint::BigUint;
use sl12::{split_prime_power, FieldSpec};

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(9);
    let (p, m) = split_prime_power(&BigUint::from(q)).expect("q must be a prime power");

    let spec = FieldSpec::canonical(p, m as usize).expect("tower builds");
    let base = spec.base();

    println!("q = {q} = {p}^{m}");
    println!("GF({q}) = GF({p})[s] / (h),  h = {}", poly_u64(base.h()));
    let g: Vec<String> = spec.g().iter().map(|c| digits(&c.0)).collect();
    println!(
        "GF({q}^11) = GF({q})[t] / (g), g coefficients (ascending): [{}]",
        g.join(", ")
    );
    println!("|GF({q}^11)*| = {}", spec.full_group_order());

    // spot arithmetic: (t + 1)(t - 1) = t^2 - 1 in the extension
    let one = spec.ext_one();
    let mut t = spec.ext_zero();
    t.0[1] = base.one();
    let prod = spec.ext_mul(&spec.ext_add(&t, &one), &spec.ext_sub(&t, &one));
    let t2 = spec.ext_mul(&t, &t);
    assert_eq!(prod, spec.ext_sub(&t2, &one));
    println!("sanity: (t + 1)(t - 1) = t^2 - 1 holds");
}

fn digits(d: &[u64]) -> String {
    let strs: Vec<String> = d.iter().map(u64::to_string).collect();
    strs.join(",")
}

/// Renders a GF(p)[s] polynomial from ascending digits.
fn poly_u64(digits: &[u64]) -> String {
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match i {
            0 => c.to_string(),
            1 if c == 1 => "s".to_string(),
            1 => format!("{c}s"),
            _ if c == 1 => format!("s^{i}"),
            _ => format!("{c}s^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
