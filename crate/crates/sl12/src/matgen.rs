//! The generator matrices and the exact linear algebra on them.
//!
//! `y` is the fixed permutation matrix of the three-cycles
//! `(v1 v2 v3)(v4 v5 v6)(v7 v8 v9)(v10 v11 v12)`; `x` is the involution whose
//! nonzero entries outside columns 10 and 12 are `-1`s, with columns 10 and
//! 12 carrying the minimal-polynomial coefficients `α_i` (column 10 scaled
//! by `α_11^{-1}`); `z = x·y`. All three land in `SL_12(q)` and the product
//! has a closed displayed form that [`GeneratorTriple::build`] re-checks
//! entry by entry.
//!
//! Everything here is exact arithmetic over `GF(q)`: Gaussian elimination
//! for determinants, kernels, and reduced row echelon form, a Hessenberg
//! reduction for characteristic polynomials, and square-and-multiply matrix
//! powering for order certification.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::FactoredInteger;
use crate::gf::{AlphaVector, BaseField, GFqElem, Poly};
use crate::Error;

/// Ambient dimension of the natural module.
pub const DIM: usize = 12;

/// Image of each index under the permutation that `y` induces on the
/// standard basis (`y v_j = v_{SIGMA[j-1]}`), 1-based.
pub const SIGMA: [usize; DIM] = [2, 3, 1, 5, 6, 4, 8, 9, 7, 11, 12, 10];

/// A dense `12 x 12` matrix over `GF(q)`, rows of columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat {
    pub entries: Vec<Vec<GFqElem>>,
}

impl Mat {
    pub fn zero(base: &BaseField) -> Mat {
        Mat {
            entries: vec![vec![base.zero(); DIM]; DIM],
        }
    }

    pub fn identity(base: &BaseField) -> Mat {
        let mut m = Mat::zero(base);
        for i in 0..DIM {
            m.entries[i][i] = base.one();
        }
        m
    }

    pub fn from_rows(entries: Vec<Vec<GFqElem>>) -> Mat {
        assert_eq!(entries.len(), DIM);
        assert!(entries.iter().all(|r| r.len() == DIM));
        Mat { entries }
    }

    pub fn is_identity(&self, base: &BaseField) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, e)| {
                if i == j {
                    base.is_one(e)
                } else {
                    base.is_zero(e)
                }
            })
        })
    }

    /// Entry and digit-range check for untrusted input.
    pub fn in_range(&self, base: &BaseField) -> bool {
        self.entries.len() == DIM
            && self
                .entries
                .iter()
                .all(|r| r.len() == DIM && r.iter().all(|e| base.elem_in_range(e)))
    }

    pub fn mul(&self, base: &BaseField, other: &Mat) -> Mat {
        let mut out = Vec::with_capacity(DIM);
        let mut col = vec![base.zero(); DIM];
        for i in 0..DIM {
            let mut row = Vec::with_capacity(DIM);
            for j in 0..DIM {
                for (k, slot) in col.iter_mut().enumerate() {
                    *slot = other.entries[k][j].clone();
                }
                row.push(base.dot(&self.entries[i], &col));
            }
            out.push(row);
        }
        Mat { entries: out }
    }

    pub fn add(&self, base: &BaseField, other: &Mat) -> Mat {
        Mat {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| base.add(x, y)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, base: &BaseField, other: &Mat) -> Mat {
        Mat {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| base.sub(x, y)).collect())
                .collect(),
        }
    }

    /// `self - c·I`.
    pub fn sub_scalar(&self, base: &BaseField, c: &GFqElem) -> Mat {
        let mut m = self.clone();
        for i in 0..DIM {
            m.entries[i][i] = base.sub(&m.entries[i][i], c);
        }
        m
    }

    pub fn mul_vec(&self, base: &BaseField, v: &[GFqElem]) -> Vec<GFqElem> {
        self.entries.iter().map(|row| base.dot(row, v)).collect()
    }

    pub fn pow(&self, base: &BaseField, e: &BigUint) -> Mat {
        let mut result = Mat::identity(base);
        if e.is_zero() {
            return result;
        }
        for i in (0..e.bits()).rev() {
            result = result.mul(base, &result);
            if e.bit(i) {
                result = result.mul(base, self);
            }
        }
        result
    }

    pub fn det(&self, base: &BaseField) -> GFqElem {
        det_general(base, self.entries.clone())
    }

    /// Null space `{v : Mv = 0}` as a canonical subspace.
    pub fn kernel(&self, base: &BaseField) -> Subspace {
        kernel_general(base, &self.entries, DIM)
    }

    /// Characteristic polynomial `det(tI - M)`, monic of degree 12.
    ///
    /// Similarity-reduces a copy to upper Hessenberg form with pivoting,
    /// then runs the leading-principal-minor recurrence
    /// `p_k = (t - H[k][k]) p_{k-1} - Σ_r H[r][k] (Π subdiagonals) p_r`.
    // index loops: row and column operations hit two slices at once
    #[allow(clippy::needless_range_loop)]
    pub fn char_poly(&self, base: &BaseField) -> Poly {
        let n = DIM;
        let mut h = self.entries.clone();
        for col in 0..n.saturating_sub(2) {
            let pivot = match (col + 1..n).find(|&r| !base.is_zero(&h[r][col])) {
                None => continue,
                Some(p) => p,
            };
            if pivot != col + 1 {
                h.swap(pivot, col + 1);
                for row in h.iter_mut() {
                    row.swap(pivot, col + 1);
                }
            }
            let inv = base.inv(&h[col + 1][col]).unwrap();
            for row in col + 2..n {
                if base.is_zero(&h[row][col]) {
                    continue;
                }
                let factor = base.mul(&h[row][col], &inv);
                for c in 0..n {
                    let t = base.mul(&factor, &h[col + 1][c]);
                    h[row][c] = base.sub(&h[row][c], &t);
                }
                // inverse column operation keeps the similarity class
                for r in 0..n {
                    let t = base.mul(&h[r][row], &factor);
                    h[r][col + 1] = base.add(&h[r][col + 1], &t);
                }
            }
        }
        let mut ps: Vec<Poly> = vec![base.poly_one()];
        for k in 1..=n {
            let lin = Poly(vec![base.neg(&h[k - 1][k - 1]), base.one()]);
            let mut pk = base.poly_mul(&lin, &ps[k - 1]);
            let mut beta = base.one();
            for r in (0..k - 1).rev() {
                beta = base.mul(&beta, &h[r + 1][r]);
                if base.is_zero(&beta) {
                    break;
                }
                let coef = base.mul(&h[r][k - 1], &beta);
                if base.is_zero(&coef) {
                    continue;
                }
                let scaled = Poly(ps[r].0.iter().map(|c| base.mul(c, &coef)).collect());
                pk = base.poly_sub(&pk, &scaled);
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    /// Evaluates a base-field polynomial at this matrix (Horner).
    pub fn eval_poly(&self, base: &BaseField, f: &Poly) -> Mat {
        let mut acc = Mat::zero(base);
        for c in f.0.iter().rev() {
            acc = acc.mul(base, self);
            for i in 0..DIM {
                acc.entries[i][i] = base.add(&acc.entries[i][i], c);
            }
        }
        acc
    }
}

/// Determinant of a square matrix of any size by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn det_general(base: &BaseField, mut m: Vec<Vec<GFqElem>>) -> GFqElem {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut det = base.one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !base.is_zero(&m[r][col])) {
            None => return base.zero(),
            Some(p) => p,
        };
        if pivot != col {
            m.swap(pivot, col);
            det = base.neg(&det);
        }
        det = base.mul(&det, &m[col][col]);
        let inv = base.inv(&m[col][col]).unwrap();
        for row in col + 1..n {
            if base.is_zero(&m[row][col]) {
                continue;
            }
            let factor = base.mul(&m[row][col], &inv);
            for c in col..n {
                let t = base.mul(&factor, &m[col][c]);
                m[row][c] = base.sub(&m[row][c], &t);
            }
        }
    }
    det
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(base: &BaseField, mut rows: Vec<Vec<GFqElem>>) -> (Vec<Vec<GFqElem>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = match (rank..rows.len()).find(|&r| !base.is_zero(&rows[r][col])) {
            None => continue,
            Some(p) => p,
        };
        rows.swap(rank, pivot);
        let inv = base.inv(&rows[rank][col]).unwrap();
        for c in col..ncols {
            rows[rank][c] = base.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r == rank || base.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let t = base.mul(&factor, &rows[rank][c]);
                rows[r][c] = base.sub(&rows[r][c], &t);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Null space of an arbitrary coefficient matrix (rows may exceed `ncols`).
pub fn kernel_general(base: &BaseField, rows: &[Vec<GFqElem>], ncols: usize) -> Subspace {
    let (r, pivots) = rref(base, rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![base.zero(); ncols];
        v[fc] = base.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = base.neg(&r[i][fc]);
        }
        basis.push(v);
    }
    Subspace::from_spanning(base, basis, ncols)
}

/// A subspace of `GF(q)^n` in canonical form: the reduced row echelon basis.
/// Two `Subspace` values are equal iff they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    basis: Vec<Vec<GFqElem>>,
    pivots: Vec<usize>,
    ambient: usize,
}

impl Subspace {
    pub fn from_spanning(base: &BaseField, vectors: Vec<Vec<GFqElem>>, ambient: usize) -> Subspace {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (basis, pivots) = rref(base, vectors);
        Subspace {
            basis,
            pivots,
            ambient,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            basis: Vec::new(),
            pivots: Vec::new(),
            ambient,
        }
    }

    pub fn full(base: &BaseField, ambient: usize) -> Subspace {
        let mut basis = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut v = vec![base.zero(); ambient];
            v[i] = base.one();
            basis.push(v);
        }
        Subspace {
            basis,
            pivots: (0..ambient).collect(),
            ambient,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<GFqElem>] {
        &self.basis
    }

    pub fn contains(&self, base: &BaseField, v: &[GFqElem]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc].clone();
            if base.is_zero(&c) {
                continue;
            }
            for (i, x) in row.iter().enumerate() {
                let t = base.mul(&c, x);
                v[i] = base.sub(&v[i], &t);
            }
        }
        v.iter().all(|c| base.is_zero(c))
    }

    /// True iff `M w` stays inside for every basis vector `w`.
    pub fn is_stable_under(&self, base: &BaseField, m: &Mat) -> bool {
        self.basis
            .iter()
            .all(|w| self.contains(base, &m.mul_vec(base, w)))
    }
}

/// The permutation matrix of `(v1 v2 v3)(v4 v5 v6)(v7 v8 v9)(v10 v11 v12)`.
pub fn build_y(base: &BaseField) -> Mat {
    let mut y = Mat::zero(base);
    for (j, &img) in SIGMA.iter().enumerate() {
        y.entries[img - 1][j] = base.one();
    }
    y
}

/// The involution `x`. Rows 1..=12, with `a(i) = α_i` and
/// `s(i) = α_i·α_11^{-1}`:
///
/// ```text
/// row  1: -1 at 1,   s(6) at 10,  a(6) at 12
/// row  2: -1 at 2,   s(5) at 10,  a(5) at 12
/// row  3: -1 at 6,   s(4) at 10,  a(7) at 12
/// row  4: -1 at 8,   s(3) at 10,  a(9) at 12
/// row  5: -1 at 5,   s(8) at 10,  a(8) at 12
/// row  6: -1 at 3,   s(7) at 10,  a(4) at 12
/// row  7: -1 at 11,  s(1) at 10,  a(10) at 12
/// row  8: -1 at 4,   s(9) at 10,  a(3) at 12
/// row  9: -1 at 9,   s(2) at 10,  a(2) at 12
/// row 10:            α_11 at 12
/// row 11: -1 at 7,   s(10) at 10, a(1) at 12
/// row 12:            α_11^{-1} at 10
/// ```
pub fn build_x(base: &BaseField, alpha: &AlphaVector) -> Result<Mat, Error> {
    let a11_inv = base.inv(alpha.alpha(11)).ok_or(Error::Consistency {
        check: "alpha11_nonzero",
        detail: "alpha_11 = 0; f would be divisible by t".into(),
    })?;
    let a = |i: usize| alpha.alpha(i).clone();
    let s = |i: usize| base.mul(alpha.alpha(i), &a11_inv);
    let neg = base.neg_one();

    let mut x = Mat::zero(base);
    {
        let e = &mut x.entries;
        let mut set = |r: usize, c: usize, v: GFqElem| e[r - 1][c - 1] = v;
        set(1, 1, neg.clone());
        set(1, 10, s(6));
        set(1, 12, a(6));
        set(2, 2, neg.clone());
        set(2, 10, s(5));
        set(2, 12, a(5));
        set(3, 6, neg.clone());
        set(3, 10, s(4));
        set(3, 12, a(7));
        set(4, 8, neg.clone());
        set(4, 10, s(3));
        set(4, 12, a(9));
        set(5, 5, neg.clone());
        set(5, 10, s(8));
        set(5, 12, a(8));
        set(6, 3, neg.clone());
        set(6, 10, s(7));
        set(6, 12, a(4));
        set(7, 11, neg.clone());
        set(7, 10, s(1));
        set(7, 12, a(10));
        set(8, 4, neg.clone());
        set(8, 10, s(9));
        set(8, 12, a(3));
        set(9, 9, neg.clone());
        set(9, 10, s(2));
        set(9, 12, a(2));
        set(10, 12, a(11));
        set(11, 7, neg.clone());
        set(11, 10, s(10));
        set(11, 12, a(1));
        set(12, 10, a11_inv);
    }
    Ok(x)
}

/// The displayed closed form of `z = x·y`: column `j` of `z` equals column
/// `SIGMA[j-1]` of `x`. Used as an independent cross-check on the product.
pub fn build_z_display(base: &BaseField, alpha: &AlphaVector) -> Result<Mat, Error> {
    let x = build_x(base, alpha)?;
    let mut z = Mat::zero(base);
    for (j, &sigma_j) in SIGMA.iter().enumerate() {
        let src = sigma_j - 1;
        for r in 0..DIM {
            z.entries[r][j] = x.entries[r][src].clone();
        }
    }
    Ok(z)
}

/// `M^n = I` and `M^(n/r) != I` for every prime `r | n`: exactly the two
/// facts needed to certify that the order of `M` is `n`.
pub fn order_is_exactly(base: &BaseField, m: &Mat, n: &FactoredInteger) -> bool {
    if !m.pow(base, &n.value).is_identity(base) {
        return false;
    }
    n.primes().all(|r| {
        let e = &n.value / r;
        !m.pow(base, &e).is_identity(base)
    })
}

/// The validated generator pair and their product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTriple {
    pub x: Mat,
    pub y: Mat,
    pub z: Mat,
}

impl GeneratorTriple {
    /// Builds `x`, `y`, `z = x·y` from the alphas and re-checks the
    /// structural facts: `x^2 = I`, `y^3 = I`, both nontrivial, both of
    /// determinant one, and the product matching its displayed closed form.
    pub fn build(base: &BaseField, alpha: &AlphaVector) -> Result<GeneratorTriple, Error> {
        let x = build_x(base, alpha)?;
        let y = build_y(base);
        let z = x.mul(base, &y);

        if !x.mul(base, &x).is_identity(base) || x.is_identity(base) {
            return Err(Error::Consistency {
                check: "x_order_2",
                detail: "x is not an involution".into(),
            });
        }
        let y2 = y.mul(base, &y);
        if !y2.mul(base, &y).is_identity(base) || y.is_identity(base) {
            return Err(Error::Consistency {
                check: "y_order_3",
                detail: "y does not have order 3".into(),
            });
        }
        if !base.is_one(&x.det(base)) {
            return Err(Error::Consistency {
                check: "x_determinant",
                detail: "det(x) != 1".into(),
            });
        }
        if !base.is_one(&y.det(base)) {
            return Err(Error::Consistency {
                check: "y_determinant",
                detail: "det(y) != 1".into(),
            });
        }
        if z != build_z_display(base, alpha)? {
            return Err(Error::Consistency {
                check: "z_display",
                detail: "x·y differs from the displayed closed form of z".into(),
            });
        }
        Ok(GeneratorTriple { x, y, z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use crate::gf::{FieldSpec, OmegaMode};
    use proptest::prelude::*;

    fn pipeline(p: u64, m: usize) -> (FieldSpec, AlphaVector) {
        let spec = FieldSpec::canonical(p, m).unwrap();
        let (q_order, _) = arith::compute_q_order(spec.base().q());
        let full = arith::factorize(spec.full_group_order()).unwrap();
        let omega = spec
            .find_omega(&q_order, &full, &OmegaMode::Deterministic)
            .unwrap();
        let (_, alpha) = spec.min_poly_of_omega(&omega).unwrap();
        (spec, alpha)
    }

    #[test]
    fn y_is_a_permutation_of_order_three() {
        let base = BaseField::prime(5).unwrap();
        let y = build_y(&base);
        for (j, &img) in SIGMA.iter().enumerate() {
            let mut e_j = vec![base.zero(); DIM];
            e_j[j] = base.one();
            let image = y.mul_vec(&base, &e_j);
            let mut expected = vec![base.zero(); DIM];
            expected[img - 1] = base.one();
            assert_eq!(image, expected);
        }
        let y3 = y.mul(&base, &y).mul(&base, &y);
        assert!(y3.is_identity(&base));
        assert!(!y.is_identity(&base));
        assert!(base.is_one(&y.det(&base)));
    }

    #[test]
    fn triple_builds_for_q3() {
        let (spec, alpha) = pipeline(3, 1);
        let triple = GeneratorTriple::build(spec.base(), &alpha).unwrap();
        assert_eq!(triple.z, triple.x.mul(spec.base(), &triple.y));
        assert!(spec.base().is_one(&triple.z.det(spec.base())));
    }

    #[test]
    fn z_has_exact_order_q_for_q3() {
        let (spec, alpha) = pipeline(3, 1);
        let base = spec.base();
        let triple = GeneratorTriple::build(base, &alpha).unwrap();
        let (q_order, _) = arith::compute_q_order(base.q());
        assert_eq!(q_order, BigUint::from(88573u32));
        let factored = arith::factorize(&q_order).unwrap();
        assert!(order_is_exactly(base, &triple.z, &factored));
        // and not any proper divisor: the same call refutes n/23 and n/3851
        let wrong = arith::factorize(&BigUint::from(3851u32)).unwrap();
        assert!(!order_is_exactly(base, &triple.z, &wrong));
    }

    #[test]
    fn char_poly_of_z_is_linear_times_f_for_q3() {
        let (spec, alpha) = pipeline(3, 1);
        let base = spec.base();
        let triple = GeneratorTriple::build(base, &alpha).unwrap();
        let f = alpha.reconstruct_f(base);
        let a11_inv = base.inv(alpha.alpha(11)).unwrap();
        let lin = Poly(vec![base.neg(&a11_inv), base.one()]);
        let expected = base.poly_mul(&lin, &f);
        assert_eq!(triple.z.char_poly(base), expected);
    }

    #[test]
    fn char_poly_of_companion_matrix_recovers_the_polynomial() {
        let base = BaseField::prime(7).unwrap();
        // f = t^12 + 3t^7 + 5t^2 + 2t + 6 as a companion matrix
        let mut coeffs = vec![base.zero(); 13];
        coeffs[0] = base.from_u64(6);
        coeffs[1] = base.from_u64(2);
        coeffs[2] = base.from_u64(5);
        coeffs[7] = base.from_u64(3);
        coeffs[12] = base.one();
        let f = Poly(coeffs.clone());
        let mut c = Mat::zero(&base);
        for i in 1..DIM {
            c.entries[i][i - 1] = base.one();
        }
        for (r, coeff) in coeffs.iter().take(DIM).enumerate() {
            c.entries[r][DIM - 1] = base.neg(coeff);
        }
        assert_eq!(c.char_poly(&base), f);
    }

    #[test]
    fn kernel_of_y_minus_identity_is_the_fixed_space() {
        let base = BaseField::prime(3).unwrap();
        let y = build_y(&base);
        let fixed = y.sub(&base, &Mat::identity(&base)).kernel(&base);
        assert_eq!(fixed.dim(), 4);
        // each block's all-ones vector is fixed
        for block in 0..4 {
            let mut v = vec![base.zero(); DIM];
            for i in 0..3 {
                v[3 * block + i] = base.one();
            }
            assert!(fixed.contains(&base, &v));
        }
    }

    #[test]
    fn kernel_extremes() {
        let base = BaseField::prime(5).unwrap();
        assert_eq!(Mat::identity(&base).kernel(&base).dim(), 0);
        assert_eq!(Mat::zero(&base).kernel(&base).dim(), DIM);
        assert_eq!(Mat::zero(&base).kernel(&base), Subspace::full(&base, DIM));
    }

    #[test]
    fn span_of_first_eleven_basis_vectors_is_z_stable() {
        let (spec, alpha) = pipeline(2, 1);
        let base = spec.base();
        let triple = GeneratorTriple::build(base, &alpha).unwrap();
        let mut vecs = Vec::new();
        for i in 0..11 {
            let mut v = vec![base.zero(); DIM];
            v[i] = base.one();
            vecs.push(v);
        }
        let u = Subspace::from_spanning(base, vecs, DIM);
        assert!(u.is_stable_under(base, &triple.z));
        assert!(!u.is_stable_under(base, &triple.y));
    }

    #[test]
    fn subspace_equality_is_representation_independent() {
        let base = BaseField::prime(5).unwrap();
        let v1 = vec![
            base.from_u64(1),
            base.from_u64(2),
            base.from_u64(0),
            base.from_u64(0),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
        ];
        let v2 = vec![
            base.from_u64(1),
            base.from_u64(1),
            base.from_u64(0),
            base.from_u64(0),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
            base.zero(),
        ];
        // same plane spanned three ways: swapped order, and a basis of
        // nontrivial combinations 2*v1 + v2, v1 + 4*v2
        let sum: Vec<GFqElem> = (0..DIM)
            .map(|i| base.add(&base.mul(&base.from_u64(2), &v1[i]), &v2[i]))
            .collect();
        let mix: Vec<GFqElem> = (0..DIM)
            .map(|i| base.add(&v1[i], &base.mul(&base.from_u64(4), &v2[i])))
            .collect();
        let a = Subspace::from_spanning(&base, vec![v1.clone(), v2.clone()], DIM);
        let b = Subspace::from_spanning(&base, vec![v2, v1], DIM);
        let c = Subspace::from_spanning(&base, vec![sum, mix], DIM);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn determinant_multiplicativity_spot() {
        let (spec, alpha) = pipeline(3, 1);
        let base = spec.base();
        let triple = GeneratorTriple::build(base, &alpha).unwrap();
        let dx = triple.x.det(base);
        let dy = triple.y.det(base);
        let dz = triple.z.det(base);
        assert_eq!(dz, base.mul(&dx, &dy));
    }

    fn arb_alpha(p: u64) -> impl Strategy<Value = Vec<u64>> {
        // last entry nonzero so alpha_11 is invertible
        (proptest::collection::vec(0..p, 10), 1..p).prop_map(|(mut v, last)| {
            v.push(last);
            v
        })
    }

    proptest! {
        #[test]
        fn x_is_an_involution_for_any_alpha_gf7(digits in arb_alpha(7)) {
            let base = BaseField::prime(7).unwrap();
            let alpha = AlphaVector {
                alpha: digits.into_iter().map(|d| base.from_u64(d)).collect(),
            };
            let x = build_x(&base, &alpha).unwrap();
            prop_assert!(x.mul(&base, &x).is_identity(&base));
            prop_assert!(base.is_one(&x.det(&base)));
        }

        #[test]
        fn product_matches_displayed_z_for_any_alpha_gf2(digits in arb_alpha(2)) {
            let base = BaseField::prime(2).unwrap();
            let alpha = AlphaVector {
                alpha: digits.into_iter().map(|d| base.from_u64(d)).collect(),
            };
            let x = build_x(&base, &alpha).unwrap();
            let y = build_y(&base);
            prop_assert_eq!(x.mul(&base, &y), build_z_display(&base, &alpha).unwrap());
        }

        #[test]
        fn char_poly_matches_determinant_evaluations_gf13(
            seed in proptest::collection::vec(0u64..13, DIM * DIM)
        ) {
            let base = BaseField::prime(13).unwrap();
            let entries: Vec<Vec<GFqElem>> = seed
                .chunks(DIM)
                .map(|row| row.iter().map(|&d| base.from_u64(d)).collect())
                .collect();
            let m = Mat::from_rows(entries);
            let cp = m.char_poly(&base);
            prop_assert_eq!(cp.degree(), Some(DIM));
            // deg-12 monic agreeing with det(aI - M) at all 13 points is det(tI - M)
            for a in 0..13u64 {
                let av = base.from_u64(a);
                let shifted: Vec<Vec<GFqElem>> = m
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, e)| {
                                if i == j {
                                    base.sub(&av, e)
                                } else {
                                    base.neg(e)
                                }
                            })
                            .collect()
                    })
                    .collect();
                let lhs = base.poly_eval(&cp, &av);
                let rhs = det_general(&base, shifted);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    use num_bigint::BigUint;
}
