//! Exact natural-number arithmetic: primality, factorization and the target
//! order `Q = q^11 - 1` (halved for `q = 3, 7`).
//!
//! Everything here works on arbitrary-precision [`BigUint`] values. Orders and
//! exponents are never truncated to machine words: `q^11 - 1` exceeds 64 bits
//! already at `q = 64`.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Iteration cap for Pollard rho, across all attempts of one `factorize` call.
///
/// Overridable through the `SL12_FACTOR_BUDGET` environment variable. When the
/// budget runs out the remaining cofactor is reported instead of looping
/// forever; in practice this only triggers when q is far beyond desk scale.
pub const DEFAULT_FACTOR_BUDGET: u64 = 8_000_000;

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Reads the rho iteration budget from `SL12_FACTOR_BUDGET`, falling back to
/// [`DEFAULT_FACTOR_BUDGET`] when unset or unparsable.
pub fn factor_budget() -> u64 {
    std::env::var("SL12_FACTOR_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_FACTOR_BUDGET)
}

/// A complete prime factorization: `value = prod(prime_i ^ exp_i)` with the
/// primes strictly increasing and each certified by [`is_prime`].
///
/// Serializes with the primes and the value as decimal strings (they exceed
/// 64 bits quickly) and exponents as plain integers. Parsing is structural
/// only; certificate verification re-checks validity semantically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FactoredRepr", into = "FactoredRepr")]
pub struct FactoredInteger {
    pub value: BigUint,
    pub factors: Vec<(BigUint, u32)>,
}

#[derive(Serialize, Deserialize)]
struct FactoredRepr {
    value: String,
    factors: Vec<(String, u32)>,
}

impl From<FactoredInteger> for FactoredRepr {
    fn from(f: FactoredInteger) -> FactoredRepr {
        FactoredRepr {
            value: f.value.to_string(),
            factors: f
                .factors
                .into_iter()
                .map(|(p, e)| (p.to_string(), e))
                .collect(),
        }
    }
}

impl TryFrom<FactoredRepr> for FactoredInteger {
    type Error = String;

    fn try_from(r: FactoredRepr) -> Result<FactoredInteger, String> {
        let value: BigUint = r
            .value
            .parse()
            .map_err(|_| format!("invalid decimal value '{}'", r.value))?;
        let mut factors = Vec::with_capacity(r.factors.len());
        for (p, e) in r.factors {
            let p: BigUint = p
                .parse()
                .map_err(|_| format!("invalid decimal prime '{p}'"))?;
            factors.push((p, e));
        }
        Ok(FactoredInteger { value, factors })
    }
}

impl FactoredInteger {
    /// Multiplies the factorization back together.
    pub fn recompose(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    /// The distinct primes, in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// True when primes are strictly increasing, each passes [`is_prime`],
    /// and the product equals `value`.
    pub fn is_valid(&self) -> bool {
        let increasing = self.factors.windows(2).all(|w| w[0].0 < w[1].0);
        let exps_positive = self.factors.iter().all(|(_, e)| *e > 0);
        increasing
            && exps_positive
            && self.factors.iter().all(|(p, _)| is_prime(p))
            && self.recompose() == self.value
    }

    /// Divides one power of `p` out of the factorization. Panics when `p`
    /// does not appear; this is only used to derive the factorization of
    /// `(q^11 - 1) / 2` from that of `q^11 - 1`.
    pub fn divide_out_one(&self, p: &BigUint) -> FactoredInteger {
        let mut factors = self.factors.clone();
        let idx = factors
            .iter()
            .position(|(f, _)| f == p)
            .expect("prime not present in factorization");
        if factors[idx].1 == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        FactoredInteger {
            value: &self.value / p,
            factors,
        }
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2usize;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
    })
}

/// Sorenson-Webster bound: Miller-Rabin with the first 13 prime bases is a
/// proven primality test below this value (~3.3e24).
fn mr13_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

const MR_BASES_13: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

// First 50 primes; fixed extended base set for inputs above the proven bound.
const MR_BASES_50: [u64; 50] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229,
];

/// Deterministic primality test.
///
/// Below the Sorenson-Webster bound (about 3.3e24, far beyond every value a
/// desk-scale `q^11 - 1` produces) this is Miller-Rabin with the first 13
/// prime bases, a proven test. Larger inputs fall back to the first 50 prime
/// bases: still deterministic in behavior, with no known counterexample.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    // Quick trial division by a handful of small primes.
    for &p in &MR_BASES_13 {
        let pb = BigUint::from(p);
        if n == &pb {
            return true;
        }
        if (n % pb).is_zero() {
            return false;
        }
    }
    let bases: &[u64] = if n < mr13_bound() {
        &MR_BASES_13
    } else {
        &MR_BASES_50
    };
    miller_rabin(n, bases)
}

fn miller_rabin(n: &BigUint, bases: &[u64]) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in bases {
        let base = BigUint::from(b) % n;
        if base.is_zero() {
            continue;
        }
        let mut x = base.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Pollard rho (Brent's variant) with a deterministic parameter sequence.
/// Returns a nontrivial factor of an odd composite `n`, or `None` when the
/// iteration budget is consumed.
fn pollard_rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    debug_assert!(!is_prime(n));
    // x -> x^2 + c mod n, with c stepped deterministically on failure.
    for c in 1u64..64 {
        if *budget == 0 {
            return None;
        }
        let cb = BigUint::from(c);
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let (mut g, x, mut ys) = 'rounds: loop {
            let x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &cb) % n;
            }
            let mut k: u64 = 0;
            while k < r {
                let ys = y.clone();
                let batch = 128.min(r - k);
                if *budget < batch {
                    *budget = 0;
                    return None;
                }
                *budget -= batch;
                for _ in 0..batch {
                    y = (&y * &y + &cb) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                let g = q.gcd(n);
                if !g.is_one() {
                    break 'rounds (g, x, ys);
                }
                k += batch;
            }
            r *= 2;
        };
        if g == *n {
            // Batch overshot; retry one step at a time from the saved point.
            loop {
                ys = (&ys * &ys + &cb) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Complete prime factorization of `n >= 1`.
///
/// Trial division up to 10^6 strips small primes; Pollard rho splits what
/// remains, recursing on composite parts. Fails cleanly with
/// [`Error::FactorBudget`] when the rho budget is exhausted, which signals a
/// `q` outside desk-scale range rather than a hang.
pub fn factorize(n: &BigUint) -> Result<FactoredInteger, Error> {
    factorize_with_budget(n, factor_budget())
}

/// [`factorize`] with an explicit rho iteration budget.
pub fn factorize_with_budget(n: &BigUint, budget: u64) -> Result<FactoredInteger, Error> {
    if n.is_zero() {
        return Err(Error::InvalidParameter("factorize requires n >= 1".into()));
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    let mut budget = budget;
    let mut pending = Vec::new();
    if !rest.is_one() {
        pending.push(rest);
    }
    while let Some(c) = pending.pop() {
        if is_prime(&c) {
            push_prime(&mut factors, c);
            continue;
        }
        // Perfect powers slip through rho slowly; peel them first.
        if let Some((root, k)) = perfect_power(&c) {
            for _ in 0..k {
                pending.push(root.clone());
            }
            continue;
        }
        match pollard_rho(&c, &mut budget) {
            Some(d) => {
                pending.push(&c / &d);
                pending.push(d);
            }
            None => {
                return Err(Error::FactorBudget {
                    n: n.clone(),
                    cofactor: c,
                    budget: factor_budget(),
                });
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in factors {
        match merged.last_mut() {
            Some((lp, le)) if *lp == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    let out = FactoredInteger {
        value: n.clone(),
        factors: merged,
    };
    debug_assert!(out.is_valid());
    Ok(out)
}

fn push_prime(factors: &mut Vec<(BigUint, u32)>, p: BigUint) {
    factors.push((p, 1));
}

/// Returns `(r, k)` with `r^k = n`, `k >= 2`, when `n` is a perfect power.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits();
    for k in (2..=bits.max(2) as u32).rev() {
        if let Some(r) = n.nth_root_exact(k) {
            return Some((r, k));
        }
    }
    None
}

trait NthRootExact {
    fn nth_root_exact(&self, k: u32) -> Option<BigUint>;
}

impl NthRootExact for BigUint {
    fn nth_root_exact(&self, k: u32) -> Option<BigUint> {
        let r = self.nth_root(k);
        if r.pow(k) == *self {
            Some(r)
        } else {
            None
        }
    }
}

/// The target element order: `Q = q^11 - 1`, halved exactly when `q` is 3
/// or 7. The second component reports whether halving happened.
pub fn compute_q_order(q: &BigUint) -> (BigUint, bool) {
    let full = q.pow(11) - BigUint::one();
    let halved = *q == BigUint::from(3u32) || *q == BigUint::from(7u32);
    if halved {
        (full / BigUint::from(2u32), true)
    } else {
        (full, false)
    }
}

/// Splits a prime power `q = p^m` into `(p, m)`. Errors when `q` is not a
/// prime power or `p` does not fit the field kernels (p >= 2^32).
pub fn split_prime_power(q: &BigUint) -> Result<(u64, u32), Error> {
    if q < &BigUint::from(2u32) {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is not a prime power"
        )));
    }
    let f = factorize(q)?;
    if f.factors.len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is not a prime power"
        )));
    }
    let (p, m) = (&f.factors[0].0, f.factors[0].1);
    let p: u64 = p
        .try_into()
        .map_err(|_| Error::InvalidParameter(format!("prime {p} too large")))?;
    if p >= (1u64 << 32) {
        return Err(Error::InvalidParameter(format!(
            "prime {p} exceeds the 32-bit digit limit of the field kernels"
        )));
    }
    Ok((p, m))
}
