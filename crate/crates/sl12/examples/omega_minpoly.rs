//! Finds the order-Q element omega of GF(q^11) and its minimal polynomial
//! f(t) over GF(q), then prints the alternating-sign coefficients
//! alpha_1..alpha_11 that parameterize the generator matrices.
//!
//! Q is q^11 - 1 except at q = 3 and q = 7, where the order is halved to
//! dodge elements whose order would land in unwanted maximal subgroups;
//! there omega is the square of a primitive element. alpha_11 is the norm
//! of omega and falls into exactly one of three cases: order q - 1
//! (generic), alpha_11 = 1 (q = 3), a nontrivial cube root of unity
//! (q = 7).
//!
//! Usage: cargo run --example omega_minpoly [q]

use num_bigint::BigUint;
use num_traits::One;
use sl12::{compute_q_order, factorize, split_prime_power, FieldSpec, OmegaMode};

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(7);
    let (p, m) = split_prime_power(&BigUint::from(q)).expect("prime power");
    let spec = FieldSpec::canonical(p, m as usize).expect("tower builds");
    let base = spec.base();

    let (q_order, halved) = compute_q_order(base.q());
    let factored_full = factorize(spec.full_group_order()).expect("factorable");
    println!(
        "q = {q}: Q = {q_order}{}",
        if halved { " (halved)" } else { "" }
    );
    let fact: Vec<String> = factored_full
        .factors
        .iter()
        .map(|(pr, e)| {
            if *e == 1 {
                pr.to_string()
            } else {
                format!("{pr}^{e}")
            }
        })
        .collect();
    println!("q^11 - 1 = {}", fact.join(" * "));

    let omega = spec
        .find_omega(&q_order, &factored_full, &OmegaMode::Deterministic)
        .expect("omega exists");
    let digits: Vec<String> = omega.0.iter().map(|c| format!("{:?}", c.0)).collect();
    println!(
        "omega (coefficients in GF(q), ascending): [{}]",
        digits.join(", ")
    );

    let (f, alpha) = spec.min_poly_of_omega(&omega).expect("minimal polynomial");
    assert_eq!(f, spec.min_poly_oracle(&omega), "two routes must agree");
    println!(
        "f(t) coefficients (ascending): {:?}",
        f.0.iter().map(|c| c.0.clone()).collect::<Vec<_>>()
    );
    for i in 1..=11 {
        println!("alpha_{i} = {:?}", alpha.alpha(i).0);
    }

    let a11 = alpha.alpha(11);
    let qm1 = base.q() - BigUint::one();
    if base.is_one(a11) {
        println!("alpha_11 = 1 (the q = 3 case)");
    } else if base.is_one(&base.mul(&base.mul(a11, a11), a11)) {
        println!("alpha_11 is a nontrivial cube root of unity (the q = 7 case)");
    } else {
        let ord = base.mult_order(a11, &factorize(&qm1).unwrap());
        println!("ord(alpha_11) = {ord} = q - 1");
    }
}
