//! The finite-field tower `GF(p) ⊂ GF(q = p^m) ⊂ GF(q^11)` and everything the
//! generator construction needs from it: canonical defining polynomials,
//! irreducibility testing, multiplicative orders, the choice of the order-Q
//! element `ω`, and the minimal polynomial `f(t)` whose coefficients
//! `α_1 .. α_11` parameterize the generator matrices.
//!
//! Representation: an element of `GF(q)` is a vector of `m` residues mod `p`
//! (coefficients mod `h`, ascending degree); an element of `GF(q^11)` is a
//! vector of 11 such elements (coefficients mod `g`, ascending degree). Two
//! explicit quotient-ring layers rather than one degree-`11m` extension, so
//! "this coefficient lies in the base field" is a syntactic check on the
//! upper coordinates.
//!
//! Total order on elements: lexicographic on the coefficient digit vectors,
//! low degree first. All deterministic scans (defining polynomials, the
//! primitive-element search) walk that order from below.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, FactoredInteger};
use crate::Error;

/// Degree of the extension step `GF(q) ⊂ GF(q^11)`.
pub const EXT_DEGREE: usize = 11;

/// An element of `GF(q)`: exactly `m` digits in `[0, p)`, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GFqElem(pub Vec<u64>);

/// An element of `GF(q^11)`: exactly 11 `GF(q)` coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtElem(pub Vec<GFqElem>);

/// A polynomial over `GF(q)`, ascending degree, no trailing zero coefficient.
/// The zero polynomial is the empty vector and has no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(pub Vec<GFqElem>);

impl Poly {
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// The construction's only free data: the coefficients `α_1 .. α_11` of
/// `f(t) = t^11 - α_1 t^10 + α_2 t^9 - ... + α_10 t - α_11`
/// (alternating signs, so the coefficient of `t^(11-i)` is `(-1)^i α_i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaVector {
    pub alpha: Vec<GFqElem>,
}

impl AlphaVector {
    pub fn alpha(&self, i: usize) -> &GFqElem {
        assert!((1..=11).contains(&i), "alpha index is 1-based, 1..=11");
        &self.alpha[i - 1]
    }

    /// Rebuilds `f(t)` from the alphas with the alternating-sign convention.
    pub fn reconstruct_f(&self, base: &BaseField) -> Poly {
        let mut coeffs = vec![base.zero(); 12];
        coeffs[11] = base.one();
        for i in 1..=11 {
            let a = self.alpha(i).clone();
            coeffs[11 - i] = if i % 2 == 1 { base.neg(&a) } else { a };
        }
        base.poly_normalize(coeffs)
    }
}

/// How `ω` was chosen; recorded in certificates for reproducibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaMode {
    /// First primitive element in the ascending element order.
    Deterministic,
    /// First primitive element on a ChaCha20 stream seeded with this value.
    Seeded(#[serde(with = "crate::cert::u64str")] u64),
}

/// Ascending odometer over digit vectors: all vectors of the given length
/// with entries in `[0, p)`, last digit fastest. The first item yielded is
/// the initial state itself.
struct DigitOdometer {
    p: u64,
    digits: Vec<u64>,
    done: bool,
}

impl DigitOdometer {
    fn starting_at(p: u64, digits: Vec<u64>) -> Self {
        DigitOdometer {
            p,
            digits,
            done: false,
        }
    }
}

impl Iterator for DigitOdometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.p {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// `GF(q = p^m)` as the quotient `GF(p)[x]/(h)`.
///
/// For `m = 1` the canonical defining polynomial is the placeholder `h = t`,
/// under which the quotient is the prime field itself and `h` never enters
/// the arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseField {
    p: u64,
    m: usize,
    h: Vec<u64>,
    q: BigUint,
    q_minus_2: BigUint,
}

impl BaseField {
    /// The prime field `GF(p)` with the placeholder modulus `h = t`.
    pub fn prime(p: u64) -> Result<BaseField, Error> {
        BaseField::new(p, 1, vec![0, 1])
    }

    /// Builds `GF(p^m)` from an explicit monic irreducible `h` of degree `m`
    /// over `GF(p)` (digits ascending).
    pub fn new(p: u64, m: usize, h: Vec<u64>) -> Result<BaseField, Error> {
        if p < 2 || !arith::is_prime(&BigUint::from(p)) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if p >= (1u64 << 32) {
            return Err(Error::InvalidParameter(format!(
                "p = {p} exceeds the 32-bit digit limit"
            )));
        }
        if m < 1 {
            return Err(Error::InvalidParameter("m must be >= 1".into()));
        }
        if h.len() != m + 1 || h[m] != 1 {
            return Err(Error::InvalidParameter(format!(
                "h must be monic of degree m = {m}"
            )));
        }
        if h.iter().any(|&d| d >= p) {
            return Err(Error::InvalidParameter(
                "h has digits outside [0, p)".into(),
            ));
        }
        let q = BigUint::from(p).pow(m as u32);
        let field = BaseField {
            p,
            m,
            h,
            q_minus_2: &q - BigUint::from(2u32),
            q,
        };
        if m > 1 {
            let prime = BaseField::prime(p)?;
            let h_poly = prime.poly_from_prime_digits(&field.h);
            if !prime.poly_is_irreducible(&h_poly) {
                return Err(Error::InvalidParameter("h is reducible over GF(p)".into()));
            }
        }
        Ok(field)
    }

    /// Canonical `GF(p^m)`: `h` is the lexicographically smallest monic
    /// irreducible of degree `m` over `GF(p)` (low-degree digits compared
    /// first). For `m = 1` that scan yields `h = t` immediately.
    pub fn canonical(p: u64, m: usize) -> Result<BaseField, Error> {
        if m == 1 {
            return BaseField::prime(p);
        }
        let prime = BaseField::prime(p)?;
        // Constant digit 0 forces a factor of t, so start the odometer at
        // (1, 0, ..., 0); it never revisits the skipped block.
        let mut start = vec![0u64; m];
        start[0] = 1;
        for digits in DigitOdometer::starting_at(p, start) {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            let cand = prime.poly_from_prime_digits(&coeffs);
            if prime.poly_is_irreducible(&cand) {
                return BaseField::new(p, m, coeffs);
            }
        }
        unreachable!("irreducible polynomials of every degree exist over GF(p)")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> &[u64] {
        &self.h
    }

    /// The field order `q = p^m`.
    pub fn q(&self) -> &BigUint {
        &self.q
    }

    // ---- element constructors -------------------------------------------

    pub fn zero(&self) -> GFqElem {
        GFqElem(vec![0; self.m])
    }

    pub fn one(&self) -> GFqElem {
        self.from_u64(1)
    }

    pub fn neg_one(&self) -> GFqElem {
        self.neg(&self.one())
    }

    /// The constant `c mod p` as a field element.
    pub fn from_u64(&self, c: u64) -> GFqElem {
        let mut digits = vec![0; self.m];
        digits[0] = c % self.p;
        GFqElem(digits)
    }

    /// Treats a short digit slice as ascending coefficients over `GF(p)`
    /// and lifts each digit into its own field element. Used only for
    /// polynomials whose coefficients live in the prime field (like `h`).
    fn poly_from_prime_digits(&self, digits: &[u64]) -> Poly {
        self.poly_normalize(digits.iter().map(|&d| self.from_u64(d)).collect())
    }

    pub fn is_zero(&self, a: &GFqElem) -> bool {
        a.0.iter().all(|&d| d == 0)
    }

    pub fn is_one(&self, a: &GFqElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&d| d == 0)
    }

    /// Digit-range and length check for untrusted input.
    pub fn elem_in_range(&self, a: &GFqElem) -> bool {
        a.0.len() == self.m && a.0.iter().all(|&d| d < self.p)
    }

    // ---- arithmetic in GF(q) --------------------------------------------

    pub fn add(&self, a: &GFqElem, b: &GFqElem) -> GFqElem {
        GFqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| {
                    let s = x + y;
                    if s >= self.p {
                        s - self.p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    pub fn sub(&self, a: &GFqElem, b: &GFqElem) -> GFqElem {
        GFqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y })
                .collect(),
        )
    }

    pub fn neg(&self, a: &GFqElem) -> GFqElem {
        GFqElem(
            a.0.iter()
                .map(|&x| if x == 0 { 0 } else { self.p - x })
                .collect(),
        )
    }

    pub fn mul(&self, a: &GFqElem, b: &GFqElem) -> GFqElem {
        let mut acc = vec![0u128; 2 * self.m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                acc[i + j] += x as u128 * y as u128;
            }
        }
        self.reduce_accumulator(&mut acc)
    }

    /// Fused dot product `Σ row[k] · col[k]`: one digit-level convolution
    /// accumulated in u128 and a single modular reduction at the end. This
    /// is the matrix-multiplication kernel.
    pub(crate) fn dot(&self, row: &[GFqElem], col: &[GFqElem]) -> GFqElem {
        debug_assert_eq!(row.len(), col.len());
        let mut acc = vec![0u128; 2 * self.m - 1];
        for (a, b) in row.iter().zip(col) {
            for (i, &x) in a.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.0.iter().enumerate() {
                    acc[i + j] += x as u128 * y as u128;
                }
            }
        }
        self.reduce_accumulator(&mut acc)
    }

    /// Reduces a raw convolution (length `2m - 1`) mod `p` and mod `h`.
    fn reduce_accumulator(&self, acc: &mut [u128]) -> GFqElem {
        let p = self.p as u128;
        let m = self.m;
        let mut digits: Vec<u64> = acc.iter().map(|&c| (c % p) as u64).collect();
        for i in (m..digits.len()).rev() {
            let c = digits[i];
            if c == 0 {
                continue;
            }
            digits[i] = 0;
            // x^i = x^(i-m) * x^m = -x^(i-m) * (h_0 + ... + h_{m-1} x^{m-1})
            for (k, &hk) in self.h[..m].iter().enumerate() {
                if hk == 0 {
                    continue;
                }
                let sub = (c as u128 * hk as u128 % p) as u64;
                let cur = digits[i - m + k];
                digits[i - m + k] = if cur >= sub {
                    cur - sub
                } else {
                    cur + self.p - sub
                };
            }
        }
        digits.truncate(m);
        GFqElem(digits)
    }

    pub fn pow(&self, a: &GFqElem, e: &BigUint) -> GFqElem {
        let mut result = self.one();
        if e.is_zero() {
            return result;
        }
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// Multiplicative inverse, `None` for zero. Fermat: `a^(q-2)`.
    pub fn inv(&self, a: &GFqElem) -> Option<GFqElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, &self.q_minus_2))
    }

    /// Exact multiplicative order of `a != 0` given the factored group order
    /// `q - 1`: divide out prime factors while the power stays 1.
    pub fn mult_order(&self, a: &GFqElem, factored: &FactoredInteger) -> BigUint {
        debug_assert!(self.is_one(&self.pow(a, &factored.value)));
        let mut e = factored.value.clone();
        for (r, k) in &factored.factors {
            for _ in 0..*k {
                let cand = &e / r;
                if self.is_one(&self.pow(a, &cand)) {
                    e = cand;
                } else {
                    break;
                }
            }
        }
        e
    }

    /// All field elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = GFqElem> + '_ {
        DigitOdometer::starting_at(self.p, vec![0; self.m]).map(GFqElem)
    }

    pub fn random_elem<R: Rng>(&self, rng: &mut R) -> GFqElem {
        GFqElem((0..self.m).map(|_| rng.gen_range(0..self.p)).collect())
    }

    // ---- polynomials over GF(q) -----------------------------------------

    pub fn poly_normalize(&self, mut coeffs: Vec<GFqElem>) -> Poly {
        while let Some(last) = coeffs.last() {
            if self.is_zero(last) {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly(coeffs)
    }

    pub fn poly_zero(&self) -> Poly {
        Poly(Vec::new())
    }

    pub fn poly_one(&self) -> Poly {
        Poly(vec![self.one()])
    }

    /// The monomial `t`.
    pub fn poly_t(&self) -> Poly {
        Poly(vec![self.zero(), self.one()])
    }

    pub fn poly_is_monic(&self, f: &Poly) -> bool {
        f.0.last().is_some_and(|c| self.is_one(c))
    }

    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let mut out = vec![self.zero(); n];
        for (i, c) in a.0.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in b.0.iter().enumerate() {
            out[i] = self.add(&out[i], c);
        }
        self.poly_normalize(out)
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let mut out = vec![self.zero(); n];
        for (i, c) in a.0.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in b.0.iter().enumerate() {
            out[i] = self.sub(&out[i], c);
        }
        self.poly_normalize(out)
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return self.poly_zero();
        }
        let mut out = vec![self.zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_normalize(out)
    }

    /// Remainder of `a` by a nonzero divisor `d`.
    pub fn poly_rem(&self, a: &Poly, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.0.len() - 1;
        let lead_inv = self.inv(&d.0[dd]).expect("nonzero leading coefficient");
        let mut r = a.0.clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let coef = self.mul(&r[k], &lead_inv);
            if !self.is_zero(&coef) {
                for (i, dc) in d.0.iter().enumerate() {
                    let t = self.mul(&coef, dc);
                    r[k - dd + i] = self.sub(&r[k - dd + i], &t);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| self.is_zero(c)) && r.len() > dd {
                r.pop();
            }
        }
        self.poly_normalize(r)
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_make_monic(&a)
    }

    pub fn poly_make_monic(&self, f: &Poly) -> Poly {
        match f.0.last() {
            None => self.poly_zero(),
            Some(lead) if self.is_one(lead) => f.clone(),
            Some(lead) => {
                let inv = self.inv(lead).expect("nonzero leading coefficient");
                Poly(f.0.iter().map(|c| self.mul(c, &inv)).collect())
            }
        }
    }

    pub fn poly_eval(&self, f: &Poly, x: &GFqElem) -> GFqElem {
        let mut acc = self.zero();
        for c in f.0.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    pub fn poly_mulmod(&self, a: &Poly, b: &Poly, modulus: &Poly) -> Poly {
        self.poly_rem(&self.poly_mul(a, b), modulus)
    }

    pub fn poly_powmod(&self, base: &Poly, e: &BigUint, modulus: &Poly) -> Poly {
        let mut result = self.poly_rem(&self.poly_one(), modulus);
        if e.is_zero() {
            return result;
        }
        let base = self.poly_rem(base, modulus);
        for i in (0..e.bits()).rev() {
            result = self.poly_mulmod(&result, &result, modulus);
            if e.bit(i) {
                result = self.poly_mulmod(&result, &base, modulus);
            }
        }
        result
    }

    /// Rabin irreducibility test for a monic `f` of degree `n >= 1` over
    /// `GF(q)`: `t^(q^n) ≡ t (mod f)`, and `gcd(t^(q^(n/r)) - t, f) = 1`
    /// for every prime `r | n`.
    pub fn poly_is_irreducible(&self, f: &Poly) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        debug_assert!(
            self.poly_is_monic(f),
            "irreducibility test expects monic input"
        );
        if n == 1 {
            return true;
        }
        let t = self.poly_t();
        // frob[k] = t^(q^k) mod f, built by iterated q-th powering.
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(self.poly_rem(&t, f));
        for k in 0..n {
            let next = self.poly_powmod(&frob[k], &self.q, f);
            frob.push(next);
        }
        if frob[n] != self.poly_rem(&t, f) {
            return false;
        }
        for r in distinct_prime_divisors(n) {
            let diff = self.poly_sub(&frob[n / r], &t);
            let g = self.poly_gcd(&diff, f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

fn distinct_prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The full tower: `GF(q)` together with the degree-11 extension
/// `GF(q^11) = GF(q)[x]/(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    base: BaseField,
    g: Vec<GFqElem>,
    full_order: BigUint,
}

impl FieldSpec {
    /// The canonical tower for `(p, m)`: both defining polynomials are the
    /// lexicographically smallest monic irreducibles of their degree.
    pub fn canonical(p: u64, m: usize) -> Result<FieldSpec, Error> {
        let base = BaseField::canonical(p, m)?;
        let g = canonical_ext_poly(&base);
        FieldSpec::from_parts(base, g)
    }

    /// Builds the tower from explicit defining polynomials, validating both.
    /// Certificates record `h` and `g`, so verification accepts any
    /// convention, canonical or not.
    pub fn with_polys(p: u64, m: usize, h: Vec<u64>, g: Vec<GFqElem>) -> Result<FieldSpec, Error> {
        let base = BaseField::new(p, m, h)?;
        FieldSpec::from_parts(base, g)
    }

    fn from_parts(base: BaseField, g: Vec<GFqElem>) -> Result<FieldSpec, Error> {
        if g.len() != EXT_DEGREE + 1 || !base.is_one(&g[EXT_DEGREE]) {
            return Err(Error::InvalidParameter(
                "g must be monic of degree 11".into(),
            ));
        }
        if g.iter().any(|c| !base.elem_in_range(c)) {
            return Err(Error::InvalidParameter(
                "g has coefficients outside GF(q)".into(),
            ));
        }
        let g_poly = Poly(g.clone());
        if !base.poly_is_irreducible(&g_poly) {
            return Err(Error::InvalidParameter("g is reducible over GF(q)".into()));
        }
        let full_order = base.q().pow(EXT_DEGREE as u32) - BigUint::one();
        Ok(FieldSpec {
            base,
            g,
            full_order,
        })
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn g(&self) -> &[GFqElem] {
        &self.g
    }

    /// `q^11 - 1`, the order of the multiplicative group upstairs.
    pub fn full_group_order(&self) -> &BigUint {
        &self.full_order
    }

    // ---- arithmetic in GF(q^11) -----------------------------------------

    pub fn ext_zero(&self) -> ExtElem {
        ExtElem(vec![self.base.zero(); EXT_DEGREE])
    }

    pub fn ext_one(&self) -> ExtElem {
        self.ext_from_base(&self.base.one())
    }

    pub fn ext_from_base(&self, c: &GFqElem) -> ExtElem {
        let mut coeffs = vec![self.base.zero(); EXT_DEGREE];
        coeffs[0] = c.clone();
        ExtElem(coeffs)
    }

    /// `Some(c)` when the element is the embedding of a base-field `c`,
    /// i.e. every upper coordinate vanishes.
    pub fn ext_to_base(&self, a: &ExtElem) -> Option<GFqElem> {
        if a.0[1..].iter().all(|c| self.base.is_zero(c)) {
            Some(a.0[0].clone())
        } else {
            None
        }
    }

    pub fn ext_is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|c| self.base.is_zero(c))
    }

    pub fn ext_is_one(&self, a: &ExtElem) -> bool {
        self.base.is_one(&a.0[0]) && a.0[1..].iter().all(|c| self.base.is_zero(c))
    }

    pub fn ext_in_range(&self, a: &ExtElem) -> bool {
        a.0.len() == EXT_DEGREE && a.0.iter().all(|c| self.base.elem_in_range(c))
    }

    pub fn ext_add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        )
    }

    pub fn ext_sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.sub(x, y))
                .collect(),
        )
    }

    pub fn ext_neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }

    pub fn ext_mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let n = EXT_DEGREE;
        let mut conv = vec![self.base.zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                conv[i + j] = self.base.add(&conv[i + j], &self.base.mul(x, y));
            }
        }
        // fold degrees >= 11 through g: x^11 = -(g_0 + ... + g_10 x^10)
        for i in (n..conv.len()).rev() {
            if self.base.is_zero(&conv[i]) {
                continue;
            }
            let c = conv[i].clone();
            conv[i] = self.base.zero();
            for (k, gk) in self.g[..n].iter().enumerate() {
                if self.base.is_zero(gk) {
                    continue;
                }
                let t = self.base.mul(&c, gk);
                conv[i - n + k] = self.base.sub(&conv[i - n + k], &t);
            }
        }
        conv.truncate(n);
        ExtElem(conv)
    }

    pub fn ext_pow(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        let mut result = self.ext_one();
        if e.is_zero() {
            return result;
        }
        for i in (0..e.bits()).rev() {
            result = self.ext_mul(&result, &result);
            if e.bit(i) {
                result = self.ext_mul(&result, a);
            }
        }
        result
    }

    pub fn ext_inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.ext_is_zero(a) {
            return None;
        }
        let e = &self.full_order - BigUint::one();
        Some(self.ext_pow(a, &e))
    }

    /// The Frobenius map `a -> a^q`, the generator of `Gal(GF(q^11)/GF(q))`.
    pub fn ext_frobenius(&self, a: &ExtElem) -> ExtElem {
        self.ext_pow(a, self.base.q())
    }

    pub fn random_ext<R: Rng>(&self, rng: &mut R) -> ExtElem {
        ExtElem(
            (0..EXT_DEGREE)
                .map(|_| self.base.random_elem(rng))
                .collect(),
        )
    }

    /// All nonzero elements of `GF(q^11)` in ascending order.
    pub fn ext_nonzero_ascending(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let mut start = vec![0u64; EXT_DEGREE * self.base.m];
        *start.last_mut().unwrap() = 1;
        DigitOdometer::starting_at(self.base.p, start).map(move |digits| {
            ExtElem(
                digits
                    .chunks(self.base.m)
                    .map(|c| GFqElem(c.to_vec()))
                    .collect(),
            )
        })
    }

    /// Exact multiplicative order of `a != 0`, given the factorization of
    /// the full group order `q^11 - 1`.
    pub fn ext_mult_order(&self, a: &ExtElem, factored_full: &FactoredInteger) -> BigUint {
        debug_assert_eq!(factored_full.value, self.full_order);
        debug_assert!(self.ext_is_one(&self.ext_pow(a, &factored_full.value)));
        let mut e = factored_full.value.clone();
        for (r, k) in &factored_full.factors {
            for _ in 0..*k {
                let cand = &e / r;
                if self.ext_is_one(&self.ext_pow(a, &cand)) {
                    e = cand;
                } else {
                    break;
                }
            }
        }
        e
    }

    /// Certifies `ord(a) = n` exactly from the factorization of `n`:
    /// `a^n = 1` and `a^(n/r) != 1` for every prime `r | n`. Unlike
    /// [`Self::ext_mult_order`] this needs only the factorization of the
    /// claimed order, not of the whole group order.
    pub fn ext_order_is_exactly(&self, a: &ExtElem, n: &FactoredInteger) -> bool {
        if !self.ext_is_one(&self.ext_pow(a, &n.value)) {
            return false;
        }
        n.primes().all(|r| {
            let e = &n.value / r;
            !self.ext_is_one(&self.ext_pow(a, &e))
        })
    }

    /// True iff `a` generates the full multiplicative group.
    pub fn is_primitive(&self, a: &ExtElem, factored_full: &FactoredInteger) -> bool {
        if self.ext_is_zero(a) {
            return false;
        }
        factored_full.primes().all(|r| {
            let e = &factored_full.value / r;
            !self.ext_is_one(&self.ext_pow(a, &e))
        })
    }

    /// Chooses `ω` of order exactly `Q`.
    ///
    /// Deterministic mode scans nonzero elements in ascending order for the
    /// first primitive element `ρ`; seeded mode draws candidates from a
    /// ChaCha20 stream. When `Q` is the full group order, `ω = ρ`; when `Q`
    /// is the halved order (q = 3, 7, both odd), `ω = ρ^2`. The returned
    /// element's order is re-verified exactly before returning.
    pub fn find_omega(
        &self,
        q_order: &BigUint,
        factored_full: &FactoredInteger,
        mode: &OmegaMode,
    ) -> Result<ExtElem, Error> {
        let rho = match mode {
            OmegaMode::Deterministic => self
                .ext_nonzero_ascending()
                .find(|c| self.is_primitive(c, factored_full))
                .expect("the multiplicative group of a finite field is cyclic"),
            OmegaMode::Seeded(seed) => {
                let mut rng = ChaCha20Rng::seed_from_u64(*seed);
                loop {
                    let c = self.random_ext(&mut rng);
                    if self.is_primitive(&c, factored_full) {
                        break c;
                    }
                }
            }
        };
        let omega = if q_order == &factored_full.value {
            rho
        } else {
            self.ext_mul(&rho, &rho)
        };
        let ord = self.ext_mult_order(&omega, factored_full);
        if &ord != q_order {
            return Err(Error::Consistency {
                check: "omega_order",
                detail: format!("constructed omega has order {ord}, expected {q_order}"),
            });
        }
        Ok(omega)
    }

    /// The minimal polynomial of an order-Q element `ω` together with the
    /// extracted alphas: forms the product of the 11 Frobenius conjugates
    /// `(t - ω)(t - ω^q)...(t - ω^(q^10))` upstairs, checks every
    /// coefficient descends to `GF(q)`, checks irreducibility, and reads
    /// off `α_i` as `(-1)^i` times the coefficient of `t^(11-i)`.
    pub fn min_poly_of_omega(&self, omega: &ExtElem) -> Result<(Poly, AlphaVector), Error> {
        let conjugates = self.frobenius_orbit(omega)?;
        let mut prod: Vec<ExtElem> = vec![self.ext_one()];
        for w in &conjugates {
            let mut next = vec![self.ext_zero(); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k + 1] = self.ext_add(&next[k + 1], c);
                let t = self.ext_mul(w, c);
                next[k] = self.ext_sub(&next[k], &t);
            }
            prod = next;
        }
        let mut coeffs = Vec::with_capacity(EXT_DEGREE + 1);
        for (deg, c) in prod.iter().enumerate() {
            match self.ext_to_base(c) {
                Some(b) => coeffs.push(b),
                None => {
                    return Err(Error::Consistency {
                        check: "coefficient_descent",
                        detail: format!("coefficient of t^{deg} does not lie in the base field"),
                    })
                }
            }
        }
        let f = self.base.poly_normalize(coeffs);
        if f.degree() != Some(EXT_DEGREE) || !self.base.poly_is_monic(&f) {
            return Err(Error::Consistency {
                check: "min_poly_shape",
                detail: "conjugate product is not monic of degree 11".into(),
            });
        }
        if !self.base.poly_is_irreducible(&f) {
            return Err(Error::Consistency {
                check: "f_irreducible",
                detail: "minimal polynomial of omega is reducible".into(),
            });
        }
        let mut alpha = Vec::with_capacity(EXT_DEGREE);
        for i in 1..=EXT_DEGREE {
            let c = f.0[EXT_DEGREE - i].clone();
            alpha.push(if i % 2 == 1 { self.base.neg(&c) } else { c });
        }
        let alpha = AlphaVector { alpha };
        debug_assert_eq!(alpha.reconstruct_f(&self.base), f);
        debug_assert!(!self.base.is_zero(alpha.alpha(11)));
        Ok((f, alpha))
    }

    /// The 11 Frobenius conjugates of a degree-11 element, pairwise
    /// distinct, with the orbit closing back on itself.
    fn frobenius_orbit(&self, omega: &ExtElem) -> Result<Vec<ExtElem>, Error> {
        let mut conj = Vec::with_capacity(EXT_DEGREE);
        conj.push(omega.clone());
        for i in 1..EXT_DEGREE {
            let next = self.ext_frobenius(&conj[i - 1]);
            conj.push(next);
        }
        if self.ext_frobenius(&conj[EXT_DEGREE - 1]) != *omega {
            return Err(Error::Consistency {
                check: "frobenius_closure",
                detail: "orbit of omega does not close after 11 steps".into(),
            });
        }
        for i in 0..conj.len() {
            for j in (i + 1)..conj.len() {
                if conj[i] == conj[j] {
                    return Err(Error::Consistency {
                        check: "conjugates_distinct",
                        detail: format!("conjugates {i} and {j} coincide; omega has degree < 11"),
                    });
                }
            }
        }
        Ok(conj)
    }

    /// Independent minimal-polynomial oracle: Gaussian elimination on the
    /// powers `1, a, a^2, ...` viewed as vectors of the 11-dimensional
    /// `GF(q)`-space, returning the monic combination at the first linear
    /// dependency. Unlike [`Self::min_poly_of_omega`] this yields the true
    /// minimal polynomial for elements of any degree.
    pub fn min_poly_oracle(&self, a: &ExtElem) -> Poly {
        // rows: (reduced coordinate vector, combination over original powers),
        // each normalized to a unit pivot.
        let mut rows: Vec<(Vec<GFqElem>, Vec<GFqElem>, usize)> = Vec::new();
        let mut power = self.ext_one();
        for k in 0..=EXT_DEGREE {
            let mut vec = power.0.clone();
            let mut combo = vec![self.base.zero(); k + 1];
            combo[k] = self.base.one();
            for (rv, rc, pivot) in &rows {
                let c = vec[*pivot].clone();
                if self.base.is_zero(&c) {
                    continue;
                }
                for (i, x) in rv.iter().enumerate() {
                    let t = self.base.mul(&c, x);
                    vec[i] = self.base.sub(&vec[i], &t);
                }
                for (i, x) in rc.iter().enumerate() {
                    let t = self.base.mul(&c, x);
                    combo[i] = self.base.sub(&combo[i], &t);
                }
            }
            match vec.iter().position(|c| !self.base.is_zero(c)) {
                None => {
                    // combo[k] is still 1: reductions only touched lower indices.
                    return self.base.poly_normalize(combo);
                }
                Some(pivot) => {
                    let inv = self.base.inv(&vec[pivot]).unwrap();
                    let vec: Vec<GFqElem> = vec.iter().map(|c| self.base.mul(c, &inv)).collect();
                    let combo: Vec<GFqElem> =
                        combo.iter().map(|c| self.base.mul(c, &inv)).collect();
                    rows.push((vec, combo, pivot));
                }
            }
            power = self.ext_mul(&power, a);
        }
        unreachable!("every element of an 11-dimensional extension has degree <= 11")
    }

    /// Evaluates a base-field polynomial at an extension element (Horner).
    pub fn poly_eval_ext(&self, f: &Poly, x: &ExtElem) -> ExtElem {
        let mut acc = self.ext_zero();
        for c in f.0.iter().rev() {
            acc = self.ext_mul(&acc, x);
            acc = self.ext_add(&acc, &self.ext_from_base(c));
        }
        acc
    }
}

/// Lexicographically smallest monic irreducible of degree 11 over `GF(q)`.
fn canonical_ext_poly(base: &BaseField) -> Vec<GFqElem> {
    // Candidates with constant coefficient zero are divisible by t; the scan
    // starts at the smallest candidate whose constant term is nonzero.
    let mut start = vec![0u64; EXT_DEGREE * base.m];
    start[base.m - 1] = 1;
    for digits in DigitOdometer::starting_at(base.p, start) {
        let mut coeffs: Vec<GFqElem> = digits.chunks(base.m).map(|c| GFqElem(c.to_vec())).collect();
        coeffs.push(base.one());
        let cand = Poly(coeffs.clone());
        if base.poly_is_irreducible(&cand) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of degree 11 exist over GF(q)")
}
