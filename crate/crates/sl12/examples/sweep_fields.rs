//! Runs the full generate-and-reverify pipeline across a list of prime
//! powers and prints one row per field. Non-prime-powers and the excluded
//! fields q = 2, 4 are reported in their rows rather than aborting.
//!
//! Usage: cargo run --example sweep_fields [q1 q2 ...]

fn main() {
    let mut qs: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("q must be an integer"))
        .collect();
    if qs.is_empty() {
        qs = vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49];
    }

    println!(
        "{:>6} {:>22} {:<20} {:>7} {:>7}",
        "q", "Q", "conclusion", "verify", "ms"
    );
    for row in sl12::sweep(&qs) {
        if let Some(err) = &row.error {
            println!("{:>6} {err}", row.q);
            continue;
        }
        println!(
            "{:>6} {:>22} {:<20} {:>7} {:>7}",
            row.q,
            row.q_order.as_deref().unwrap_or("-"),
            row.conclusion.as_deref().unwrap_or("-"),
            row.verify_passed.map(|b| b.to_string()).unwrap_or_default(),
            row.wall_ms,
        );
    }
}
