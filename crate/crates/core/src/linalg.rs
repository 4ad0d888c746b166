//! Exact matrices over the rationals and the structured families `U`, `T`,
//! `I`, `S`, `S^-1` and `D`, together with their spectral facts.
//!
//! Rows and columns are indexed from zero; vectors are row vectors and act on
//! matrices from the left.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::{binom, sign};
use crate::error::{check_m, check_range, Error, Result};

/// Default largest dimension accepted by the total-unimodularity scan.
pub const DEFAULT_MINOR_SCAN_CAP: usize = 7;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn int_to_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Dense matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { rat(1) } else { rat(0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose rows are the given integer vectors. All rows
    /// must have the same length.
    pub fn from_int_rows<R: AsRef<[BigInt]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.as_ref().len(), cols, "ragged rows");
                r.as_ref().iter().map(int_to_rat)
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_rat_rows<R: AsRef<[BigRational]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.as_ref().len(), cols, "ragged rows");
                r.as_ref().iter().cloned()
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_int_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Row vector times matrix, `v * self`.
    pub fn left_apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut out = vec![BigRational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        Ok(out)
    }

    /// Integer row vector times matrix.
    pub fn left_apply_int(&self, v: &[BigInt]) -> Result<Vec<BigRational>> {
        let v: Vec<BigRational> = v.iter().map(int_to_rat).collect();
        self.left_apply(&v)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Columns `0..k`, as used when only part of a relation matrix is kept.
    pub fn leading_columns(&self, k: usize) -> Self {
        Self::from_fn(self.rows, k.min(self.cols), |i, j| self.get(i, j).clone())
    }

    /// Scales each row by the lcm of its denominators, giving an integer
    /// matrix together with the product of the scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let l = self
                    .row(i)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                self.row(i)
                    .iter()
                    .map(|x| (x * int_to_rat(&l)).to_integer())
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    /// Exact rank via fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss_in_place(&mut a, self.cols).0
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(rat(1));
        }
        let (mut a, scale) = self.integer_rows();
        let (rank, det) = bareiss_in_place(&mut a, self.cols);
        if rank < self.rows {
            return Ok(rat(0));
        }
        Ok(BigRational::new(det, scale))
    }

    /// Exact inverse by Gauss-Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                let x = a.get(col, j) / &p;
                a.set(col, j, x);
                let y = inv.get(col, j) / &p;
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, x);
                    let y = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, y);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Dimension of `{x : x * self = 0}`.
    pub fn left_kernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Row-major entries rendered as exact decimal strings (`"p"` or `"p/q"`).
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_string_rows() {
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Bareiss elimination with row pivoting. Returns `(rank, signed last pivot)`;
/// the second component is the determinant when the matrix is square and of
/// full rank.
fn bareiss_in_place(a: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        for r in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&a[rank][col] * &a[r][j] - &a[r][col] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let det = if negate { -prev } else { prev };
    (rank, det)
}

/// Exact rank of a family of row vectors.
pub fn rank_of_rows(rows: &[Vec<BigRational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    ExactMatrix::from_rat_rows(rows).rank()
}

pub fn rank_of_int_rows(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    ExactMatrix::from_int_rows(rows).rank()
}

/// True iff the two families span the same linear subspace.
pub fn same_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let ra = rank_of_int_rows(a);
    let rb = rank_of_int_rows(b);
    let both: Vec<Vec<BigInt>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of_int_rows(&both) == ra
}

/// The structured matrix families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixName {
    /// Backward identity, entry `delta(i + j, m)`.
    U,
    /// Forward shift, entry `delta(j - i, 1)`.
    T,
    I,
    /// Rows are the long h-vectors of singleton systems `{F_k}`.
    S,
    SInv,
    /// `S U S^-1`, entry `(-1)^(m-i) C(i, j)`.
    D,
}

impl MatrixName {
    pub const ALL: [MatrixName; 6] = [
        MatrixName::U,
        MatrixName::T,
        MatrixName::I,
        MatrixName::S,
        MatrixName::SInv,
        MatrixName::D,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixName::U => "U",
            MatrixName::T => "T",
            MatrixName::I => "I",
            MatrixName::S => "S",
            MatrixName::SInv => "S_inv",
            MatrixName::D => "D",
        }
    }
}

impl std::str::FromStr for MatrixName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "U" => Ok(MatrixName::U),
            "T" => Ok(MatrixName::T),
            "I" => Ok(MatrixName::I),
            "S" => Ok(MatrixName::S),
            "S_inv" | "Sinv" | "S-inv" => Ok(MatrixName::SInv),
            "D" => Ok(MatrixName::D),
            other => Err(format!("unknown matrix {other:?}; expected U, T, I, S, S_inv or D")),
        }
    }
}

/// Builds the `(m+1) x (m+1)` structured matrix `name(m)`.
pub fn build_matrix(name: MatrixName, m: usize) -> Result<ExactMatrix> {
    check_m(m)?;
    let n = m + 1;
    let mi = m as i64;
    Ok(match name {
        MatrixName::U => ExactMatrix::from_fn(n, n, |i, j| rat((i + j == m) as i64)),
        MatrixName::T => ExactMatrix::from_fn(n, n, |i, j| rat((j == i + 1) as i64)),
        MatrixName::I => ExactMatrix::identity(n),
        MatrixName::S => ExactMatrix::from_fn(n, n, |i, j| {
            let (i, j) = (i as i64, j as i64);
            int_to_rat(&(sign(j - i) * binom(mi - i, j - i)))
        }),
        // S is unit upper triangular; its inverse has entries C(m-i, j-i).
        MatrixName::SInv => {
            let s = build_matrix(MatrixName::S, m)?;
            s.inverse()?
        }
        MatrixName::D => ExactMatrix::from_fn(n, n, |i, j| {
            let (i, j) = (i as i64, j as i64);
            int_to_rat(&(sign(mi - i) * binom(i, j)))
        }),
    })
}

/// Polynomial with exact integer coefficients in ascending powers of `λ`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Divides by `(λ - r)`, returning quotient and remainder.
    pub fn div_linear(&self, r: &BigInt) -> (Self, BigInt) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Self::new(vec![BigInt::zero()]), self.coeffs[0].clone());
        }
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + carry * r;
            q[k - 1] = carry.clone();
        }
        let rem = &self.coeffs[0] + carry * r;
        (Self::new(q), rem)
    }

    /// Multiplicity of `r` as a root; zero polynomial reports `usize::MAX`.
    pub fn root_multiplicity(&self, r: i64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let r = BigInt::from(r);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = p.div_linear(&r);
            if !rem.is_zero() || p.degree() == 0 {
                return k;
            }
            k += 1;
            p = q;
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(self.is_zero() && k == 0) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "λ")?,
                (1, false) => write!(f, "{mag}λ")?,
                (_, true) => write!(f, "λ^{k}")?,
                (_, false) => write!(f, "{mag}λ^{k}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(λI - A)` by the Faddeev-LeVerrier
/// recurrence over the rationals.
pub fn char_poly(a: &ExactMatrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = rat(1);
    let ident = ExactMatrix::identity(n);
    let mut mk = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        mk = a.mul(&mk)?.add(&ident.scale(&c[n - k + 1]))?;
        let am = a.mul(&mk)?;
        let tr: BigRational = am.diagonal().into_iter().sum();
        c[n - k] = -tr / rat(k as i64);
    }
    let coeffs = c
        .into_iter()
        .map(|x| {
            debug_assert!(x.is_integer());
            x.to_integer()
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// Characteristic polynomial of `U(m)` from exact elimination.
pub fn char_poly_u(m: usize) -> Result<Polynomial> {
    char_poly(&build_matrix(MatrixName::U, m)?)
}

/// Multiplicities of the eigenvalues `1` and `-1` of `U(m)`.
pub fn u_eigen_multiplicities(m: usize) -> (usize, usize) {
    ((m + 2) / 2, (m + 1) / 2)
}

/// `(λ-1)^a (λ+1)^b` with the exponents of `U(m)`.
pub fn char_poly_u_product_form(m: usize) -> Result<Polynomial> {
    check_m(m)?;
    let (a, b) = u_eigen_multiplicities(m);
    Ok(Polynomial::from_i64(&[-1, 1])
        .pow(a)
        .mul(&Polynomial::from_i64(&[1, 1]).pow(b)))
}

/// Coefficients `K_s(t, i)` of `(1 - λ)^i (1 + λ)^(t - i)`.
pub fn krawtchouk_expansion(t: usize, i: usize) -> Result<Polynomial> {
    check_range("i", i as i64, 0, t as i64)?;
    let coeffs = (0..=t as i64)
        .map(|s| {
            (0..=s)
                .map(|r| sign(r) * binom(i as i64, r) * binom((t - i) as i64, s - r))
                .sum()
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// The Krawtchouk form of the characteristic polynomial of `U(m)`:
/// `(-1)^i Σ_s K_s(m+1, i) λ^s` with `i = (m+2)/2` (even m) or `(m+1)/2`
/// (odd m).
pub fn char_poly_u_krawtchouk(m: usize) -> Result<Polynomial> {
    check_m(m)?;
    let i = if m % 2 == 0 { (m + 2) / 2 } else { (m + 1) / 2 };
    let p = krawtchouk_expansion(m + 1, i)?;
    // (1-λ)^i = (-1)^i (λ-1)^i, so the expansion is the characteristic
    // polynomial times (-1)^i; scale by the leading coefficient to make it monic.
    let lead = p.coeffs().last().unwrap().clone();
    Ok(Polynomial::new(p.coeffs().iter().map(|c| c * &lead).collect()))
}

/// True iff every square minor of `mat` lies in `{-1, 0, 1}`. Matrices with
/// more than `cap` rows or columns are refused.
pub fn is_totally_unimodular(mat: &ExactMatrix, cap: usize) -> Result<bool> {
    let big = mat.rows().max(mat.cols());
    if big > cap {
        return Err(Error::ScanTooLarge {
            what: format!("minor scan of a {}x{} matrix", mat.rows(), mat.cols()),
            estimate: format!("{} minors", minor_count(mat.rows(), mat.cols())),
            cap: format!("{cap}x{cap}"),
        });
    }
    if !mat.is_integral() {
        return Ok(false);
    }
    let unit = |d: &BigRational| d.is_zero() || d.abs().is_one();
    for size in 1..=mat.rows().min(mat.cols()) {
        for rows in subsets(mat.rows(), size) {
            for cols in subsets(mat.cols(), size) {
                if !unit(&mat.submatrix(&rows, &cols).det()?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn minor_count(r: usize, c: usize) -> BigInt {
    (1..=r.min(c) as i64)
        .map(|k| binom(r as i64, k) * binom(c as i64, k))
        .sum()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Converts an exact rational to `i64` if it is an integer that fits.
pub fn rat_to_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(rows)
    }

    #[test]
    fn s2_and_d2_entries() {
        assert_eq!(
            build_matrix(MatrixName::S, 2).unwrap(),
            mat(&[&[1, -2, 1], &[0, 1, -1], &[0, 0, 1]])
        );
        assert_eq!(
            build_matrix(MatrixName::D, 2).unwrap(),
            mat(&[&[1, 0, 0], &[-1, -1, 0], &[1, 2, 1]])
        );
        assert_eq!(
            build_matrix(MatrixName::U, 2).unwrap(),
            mat(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
        );
        assert_eq!(
            build_matrix(MatrixName::T, 2).unwrap(),
            mat(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])
        );
    }

    #[test]
    fn s2_inverse() {
        let inv = build_matrix(MatrixName::SInv, 2).unwrap();
        assert_eq!(inv, mat(&[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]));
        let iota = vec![rat(1); 3];
        assert_eq!(inv.left_apply(&iota).unwrap(), vec![rat(1), rat(3), rat(3)]);
    }

    #[test]
    fn rejects_small_m() {
        assert!(matches!(
            build_matrix(MatrixName::U, 1),
            Err(Error::DimensionTooSmall { .. })
        ));
        assert!(char_poly_u(0).is_err());
    }

    #[test]
    fn d_is_conjugate_of_u() {
        for m in 2..=8 {
            let s = build_matrix(MatrixName::S, m).unwrap();
            let si = build_matrix(MatrixName::SInv, m).unwrap();
            let u = build_matrix(MatrixName::U, m).unwrap();
            let d = build_matrix(MatrixName::D, m).unwrap();
            assert_eq!(s.mul(&si).unwrap(), ExactMatrix::identity(m + 1));
            assert_eq!(s.mul(&u).unwrap().mul(&si).unwrap(), d, "m={m}");
        }
    }

    #[test]
    fn char_poly_small() {
        assert_eq!(char_poly_u(2).unwrap(), Polynomial::from_i64(&[1, -1, -1, 1]));
        // (λ-1)^2(λ+1)^2 = λ^4 - 2λ^2 + 1
        assert_eq!(char_poly_u(3).unwrap(), Polynomial::from_i64(&[1, 0, -2, 0, 1]));
        assert_eq!(char_poly_u(4).unwrap().root_multiplicity(1), 3);
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(
            krawtchouk_expansion(3, 2).unwrap(),
            Polynomial::from_i64(&[1, -1, -1, 1])
        );
        assert_eq!(krawtchouk_expansion(1, 0).unwrap(), Polynomial::from_i64(&[1, 1]));
        assert_eq!(krawtchouk_expansion(4, 2).unwrap(), char_poly_u(3).unwrap());
        assert!(krawtchouk_expansion(2, 3).is_err());
    }

    #[test]
    fn rank_and_inverse() {
        let i2 = ExactMatrix::identity(3);
        let d2 = build_matrix(MatrixName::D, 2).unwrap();
        let u2 = build_matrix(MatrixName::U, 2).unwrap();
        assert_eq!(i2.sub(&d2).unwrap().rank(), 1);
        assert_eq!(i2.sub(&u2).unwrap().rank(), 1);
        assert_eq!(i2.sub(&u2).unwrap().inverse(), Err(Error::Singular));
        assert!(mat(&[&[1, 2]]).inverse().is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det().unwrap(), rat(-1));
        assert_eq!(mat(&[&[2, 1], &[4, 2]]).det().unwrap(), rat(0));
        let h = ExactMatrix::from_fn(3, 3, |i, j| BigRational::new(1.into(), ((i + j + 1) as i64).into()));
        assert_eq!(h.det().unwrap(), BigRational::new(1.into(), 2160.into()));
    }

    #[test]
    fn total_unimodularity() {
        for m in [2, 4] {
            let a = ExactMatrix::identity(m + 1)
                .sub(&build_matrix(MatrixName::U, m).unwrap())
                .unwrap();
            assert!(is_totally_unimodular(&a, DEFAULT_MINOR_SCAN_CAP).unwrap());
        }
        let b = ExactMatrix::identity(3)
            .sub(&build_matrix(MatrixName::D, 2).unwrap())
            .unwrap();
        assert!(!is_totally_unimodular(&b, DEFAULT_MINOR_SCAN_CAP).unwrap());
        let big = ExactMatrix::identity(8);
        assert!(matches!(
            is_totally_unimodular(&big, DEFAULT_MINOR_SCAN_CAP),
            Err(Error::ScanTooLarge { .. })
        ));
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(Polynomial::from_i64(&[1, -1, -1, 1]).to_string(), "λ^3 - λ^2 - λ + 1");
        assert_eq!(Polynomial::from_i64(&[0]).to_string(), "0");
    }
}
