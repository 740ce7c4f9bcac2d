//! Shows the characteristic polynomial identity behind the subspace count:
//! char(z) = (t - alpha_11^{-1}) f(t), a product of just two irreducible
//! factors, so z admits exactly 2^2 = 4 invariant subspaces.
//!
//! The polynomial is computed by exact Hessenberg reduction; the example
//! cross-checks it against scalar determinant evaluations det(c I - z).
//!
//! Usage: cargo run --example charpoly_identity [q]

use num_bigint::BigUint;
use sl12::matgen::det_general;
use sl12::{run_pipeline, split_prime_power, OmegaMode, Poly};

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .unwrap_or(7);
    let (p, m) = split_prime_power(&BigUint::from(q)).expect("prime power");
    let pl = run_pipeline(p, m as usize, &OmegaMode::Deterministic).expect("pipeline");
    let base = pl.spec.base();

    let charpoly = pl.triple.z.char_poly(base);
    let a11_inv = base
        .inv(pl.alpha.alpha(11))
        .expect("alpha_11 is invertible");
    let lin = Poly(vec![base.neg(&a11_inv), base.one()]);
    let product = base.poly_mul(&lin, &pl.f);
    assert_eq!(charpoly, product);

    println!("q = {q}");
    println!(
        "char(z) coefficients (ascending): {:?}",
        charpoly.0.iter().map(|c| c.0.clone()).collect::<Vec<_>>()
    );
    println!(
        "  = (t - alpha_11^-1) * f(t) with alpha_11^-1 = {:?}",
        a11_inv.0
    );
    println!(
        "f irreducible over GF(q): {}",
        base.poly_is_irreducible(&pl.f)
    );
    println!(
        "f(alpha_11^-1) != 0: {}",
        !base.is_zero(&base.poly_eval(&pl.f, &a11_inv))
    );

    // cross-check at a few scalars c: char(c) = det(c I - z)
    for c in 0..p.min(5) {
        let scalar = base.from_u64(c);
        let shifted: Vec<Vec<_>> = (0..12)
            .map(|i| {
                (0..12)
                    .map(|j| {
                        let e = base.neg(&pl.triple.z.entries[i][j]);
                        if i == j {
                            base.add(&scalar, &e)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let lhs = base.poly_eval(&charpoly, &scalar);
        let rhs = det_general(base, shifted);
        assert_eq!(lhs, rhs);
        println!("char({c}) = det({c} I - z) = {:?}", lhs.0);
    }
}
