//! Eigenspaces `E^h(m)`, `E^f(m)`, the hyperplanes `H(m)`, `F(m)`, the
//! distinguished vectors `ι(m)` and `π(m)`, and the simplicial cone spanned by
//! the shifted interval f-vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bases::{basis, six_bases, BasisKind, VectorKind};
use crate::binom::{binom, pascal_row, sign};
use crate::error::{check_m, check_range, Error, Result};
use crate::faces::{fvector_size, iota, long_f, FaceSystem};
use crate::bases::fh_bar;
use crate::linalg::{build_matrix, int_to_rat, rank_of_int_rows, same_span, ExactMatrix, MatrixName};
use crate::report::CheckReport;
use crate::vector::IntVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubspaceLabel {
    /// Eigenspace of `U(m)` for eigenvalue 1.
    Eh,
    /// Hyperplane of `E^h(m)` spanned by the boundary h-vectors.
    H,
    /// Eigenspace of `D(m)` for eigenvalue 1.
    Ef,
    /// `S^-1(H(m))`, spanned by the boundary f-vectors.
    F,
}

impl fmt::Display for SubspaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubspaceLabel::Eh => "E^h",
            SubspaceLabel::H => "H",
            SubspaceLabel::Ef => "E^f",
            SubspaceLabel::F => "F",
        })
    }
}

/// A linearly independent spanning family of one of the four subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceBasis {
    pub label: SubspaceLabel,
    pub m: usize,
    pub vectors: Vec<IntVector>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.vectors.iter().map(|v| v.0.clone()).collect()
    }
}

/// The values of `k` whose boundary complexes span `H(m)` and `F(m)`:
/// odd `k < m` for even `m`, even `k < m` for odd `m`.
pub fn boundary_indices(m: usize) -> Vec<usize> {
    let start = if m % 2 == 0 { 1 } else { 2 };
    (start..m).step_by(2).collect()
}

/// `π(m) = (C(m+1, 0), ..., C(m+1, m)) = ι(m) S(m)^-1`.
pub fn pi(m: usize) -> IntVector {
    let mut row = pascal_row(m + 1);
    row.pop();
    IntVector(row)
}

/// `H(m)` (for `h`) or `F(m)` (for `f`).
pub fn hyperplane_basis(which: VectorKind, m: usize) -> Result<SubspaceBasis> {
    check_m(m)?;
    let vectors = boundary_indices(m)
        .into_iter()
        .map(|k| fh_bar(which, k, m))
        .collect::<Result<Vec<_>>>()?;
    let label = match which {
        VectorKind::H => SubspaceLabel::H,
        VectorKind::F => SubspaceLabel::F,
    };
    Ok(SubspaceBasis { label, m, vectors })
}

/// `E^h(m) = H(m) ⊕ lin(ι)` or `E^f(m) = F(m) ⊕ lin(π)`.
pub fn eigenspace_basis(which: VectorKind, m: usize) -> Result<SubspaceBasis> {
    let mut b = hyperplane_basis(which, m)?;
    match which {
        VectorKind::H => {
            b.label = SubspaceLabel::Eh;
            b.vectors.push(iota(m));
        }
        VectorKind::F => {
            b.label = SubspaceLabel::Ef;
            b.vectors.push(pi(m));
        }
    }
    Ok(b)
}

/// `dim E^h(m) = dim E^f(m)`.
pub fn eigenspace_dim(m: usize) -> usize {
    (m + 2) / 2
}

/// `v U(m) = v` (h side) or `v D(m) = v` (f side).
pub fn in_eigenspace(v: &IntVector, which: VectorKind, m: usize) -> Result<bool> {
    check_m(m)?;
    if v.len() != m + 1 {
        return Err(Error::DimensionMismatch {
            expected: m + 1,
            got: v.len(),
        });
    }
    let mat = match which {
        VectorKind::H => build_matrix(MatrixName::U, m)?,
        VectorKind::F => build_matrix(MatrixName::D, m)?,
    };
    Ok(v.times(&mat)? == v.to_rational())
}

/// Membership in `C^f(m) = E^f(m) ∩ cone(σ(0), ..., σ(m))`.
pub fn in_cone_cf(v: &IntVector, m: usize) -> Result<bool> {
    Ok(in_eigenspace(v, VectorKind::F, m)? && v.is_nonnegative())
}

/// Generators of the unimodular cone inside `C^f(m)`: `φ▲(i) T^i` for
/// `0 <= i <= m/2` (even `m`), `φ▲(i+1) T^i + φ▲(i) T^(i+1)` for
/// `0 <= i <= (m-1)/2` (odd `m`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeGenerators {
    pub m: usize,
    pub generators: Vec<IntVector>,
}

pub fn cone_generators(m: usize) -> Result<ConeGenerators> {
    check_m(m)?;
    let fup = basis(BasisKind::FUp, m)?;
    let generators = if m % 2 == 0 {
        (0..=m / 2).map(|i| fup.vectors[i].shifted(i)).collect()
    } else {
        (0..=(m - 1) / 2)
            .map(|i| &fup.vectors[i + 1].shifted(i) + &fup.vectors[i].shifted(i + 1))
            .collect()
    };
    Ok(ConeGenerators { m, generators })
}

impl ConeGenerators {
    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.generators.iter().map(|v| v.0.clone()).collect()
    }

    /// Coordinates `a` with `v = Σ a_i g_i`, or `None` if `v` is outside the
    /// span. The leading block of the generator matrix is unit upper
    /// triangular, so the solve is a forward substitution.
    pub fn coordinates(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        let d = self.generators.len();
        let mut a: Vec<BigInt> = Vec::with_capacity(d);
        for l in 0..d {
            let mut x = v[l].clone();
            for (i, ai) in a.iter().enumerate() {
                x -= ai * &self.generators[i][l];
            }
            a.push(x);
        }
        let mut back = IntVector::zeros(self.m + 1);
        for (ai, g) in a.iter().zip(&self.generators) {
            back = &back + &g.scaled(ai);
        }
        (back == *v).then_some(a)
    }

    /// The leading `d x d` block of the generator matrix is upper triangular
    /// with unit diagonal.
    pub fn leading_block_is_unit_triangular(&self) -> bool {
        let d = self.generators.len();
        (0..d).all(|i| {
            (0..d).all(|l| {
                let x = &self.generators[i][l];
                match l.cmp(&i) {
                    std::cmp::Ordering::Less => x.is_zero(),
                    std::cmp::Ordering::Equal => *x == BigInt::from(1),
                    std::cmp::Ordering::Greater => true,
                }
            })
        })
    }
}

/// Extreme rays of `C^f(m) = E^f(m) ∩ R^(m+1)_{>=0}` as primitive integer
/// vectors, sorted. A ray is cut out by `dim E^f - 1` independent tight
/// coordinate constraints; each candidate is obtained as a cofactor kernel
/// vector and kept if it is nonnegative.
pub fn cf_extreme_rays(m: usize) -> Result<Vec<IntVector>> {
    let basis_rows = eigenspace_basis(VectorKind::F, m)?.vectors;
    let d = basis_rows.len();
    // Column j of the basis matrix: the functional y -> (y B)_j.
    let cols: Vec<Vec<BigRational>> = (0..=m)
        .map(|j| basis_rows.iter().map(|b| int_to_rat(&b[j])).collect())
        .collect();
    let mut rays = std::collections::BTreeSet::new();
    for tight in combinations(m + 1, d - 1) {
        let rows: Vec<&Vec<BigRational>> = tight.iter().map(|&j| &cols[j]).collect();
        let y: Vec<BigInt> = (0..d)
            .map(|i| {
                let keep: Vec<usize> = (0..d).filter(|&c| c != i).collect();
                let minor = ExactMatrix::from_fn(d - 1, d - 1, |r, c| rows[r][keep[c]].clone());
                let det = minor.det().expect("square").to_integer();
                if i % 2 == 0 {
                    det
                } else {
                    -det
                }
            })
            .collect();
        let mut v = IntVector::zeros(m + 1);
        for (yi, b) in y.iter().zip(&basis_rows) {
            v = &v + &b.scaled(yi);
        }
        if v.is_zero() {
            continue;
        }
        if v.entries().iter().all(|x| !x.is_positive()) {
            v = v.scaled(&BigInt::from(-1));
        }
        if !v.is_nonnegative() {
            continue;
        }
        let g = v.entries().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        rays.insert(IntVector(v.entries().iter().map(|x| x / &g).collect()));
    }
    Ok(rays.into_iter().collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Exact comparison of `C^f(m)` with the generated cone: the generators lie
/// in `C^f(m)`, so the cones are equal iff every extreme ray of `C^f(m)` has
/// nonnegative generator coordinates. Returns the rays that do not.
pub fn cone_equality_witnesses(m: usize) -> Result<Vec<(IntVector, Vec<BigInt>)>> {
    let gens = cone_generators(m)?;
    let mut out = Vec::new();
    for ray in cf_extreme_rays(m)? {
        let a = gens
            .coordinates(&ray)
            .ok_or_else(|| Error::InvalidInput(format!("extreme ray {ray} outside the generator span")))?;
        if a.iter().any(|x| x.is_negative()) {
            out.push((ray, a));
        }
    }
    Ok(out)
}

/// Membership in the cone generated by [`cone_generators`].
pub fn in_generated_cone(v: &IntVector, m: usize) -> Result<bool> {
    let g = cone_generators(m)?;
    Ok(g.coordinates(v).is_some_and(|a| a.iter().all(|x| !x.is_negative())))
}

/// A row of the generator coordinate tables: the generator `w` itself or
/// `w S(m)`, expressed in `basis`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Table23Row {
    pub times_s: bool,
    pub basis: BasisKind,
}

impl Table23Row {
    pub fn all() -> Vec<Table23Row> {
        [false, true]
            .into_iter()
            .flat_map(|times_s| BasisKind::ALL.into_iter().map(move |basis| Table23Row { times_s, basis }))
            .collect()
    }
}

impl fmt::Display for Table23Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.times_s {
            write!(f, "kappa(w*S,{})", self.basis)
        } else {
            write!(f, "kappa(w,{})", self.basis)
        }
    }
}

/// Table 2 covers even `m`, table 3 odd `m`.
pub fn generator_table_for(m: usize) -> u8 {
    if m % 2 == 0 {
        2
    } else {
        3
    }
}

fn sum_range(lo: i64, hi: i64, f: impl Fn(i64) -> BigInt) -> BigInt {
    if lo > hi {
        BigInt::zero()
    } else {
        (lo..=hi).map(f).sum()
    }
}

/// Evaluates the printed closed form of one generator-table entry.
pub fn table23_entry(table: u8, row: Table23Row, i: usize, l: usize, m: usize) -> Result<BigRational> {
    check_m(m)?;
    let expected_table = generator_table_for(m);
    if table != expected_table {
        return Err(Error::Parity(format!(
            "table {table} does not apply to m = {m}; use table {expected_table}"
        )));
    }
    let imax = if m % 2 == 0 { m / 2 } else { (m - 1) / 2 };
    check_range("i", i as i64, 0, imax as i64)?;
    check_range("l", l as i64, 0, m as i64)?;
    let (i, l, m) = (i as i64, l as i64, m as i64);
    let c = binom;
    use BasisKind::*;
    let v: BigInt = if table == 2 {
        match (row.times_s, row.basis) {
            (false, S) => c(i, l - i),
            (false, HBullet) => sum_range(i, (2 * i).min(l), |s| c(i, s - i) * c(m - s, m - l)),
            (false, FUp) => sign(l) * c(i, l - i),
            (false, HUp) => {
                sign(l) * sum_range(i.max(m - l), 2 * i, |s| c(i, s - i) * c(s, m - l))
            }
            (false, FDown) => sign(l - i) * c(m - 2 * i, l - i),
            (false, HDown) => c(i, m - l - i),
            (true, S) => sign(l - i) * c(m - 2 * i, l - i),
            (true, HBullet) => c(i, l - i),
            (true, FUp) | (true, FDown) => {
                sign(l - i) * sum_range(i.max(l), m - i, |s| c(s, l) * c(m - 2 * i, s - i))
            }
            (true, HUp) => sign(l) * c(i, l - i),
            (true, HDown) => sign(l - i) * c(m - 2 * i, l - i),
        }
    } else {
        let g = |s: i64| c(i + 1, s - i) + c(i, s - i - 1);
        let odd_diff = || {
            sign(l - i - 1) * (c(m - 2 * i - 1, m - l - i) - c(m - 2 * i - 1, m - l - i - 1))
        };
        match (row.times_s, row.basis) {
            (false, S) => c(i + 1, l - i) + c(i, l - i - 1),
            (false, HBullet) => {
                c(m - i, m - l) + sum_range(i + 1, (2 * i + 1).min(l), |s| g(s) * c(m - s, m - l))
            }
            (false, FUp) => sign(l - 1) * (c(i, l - i - 1) + c(i + 1, l - i)),
            (false, HUp) => {
                sign(l - 1) * sum_range(i.max(m - l), 2 * i + 1, |s| g(s) * c(s, m - l))
            }
            (false, FDown) => odd_diff(),
            (false, HDown) => c(i + 1, m - l - i) + c(i, m - l - i - 1),
            (true, S) | (true, HDown) => odd_diff(),
            (true, HBullet) => c(i, l - i - 1) + c(i + 1, l - i),
            (true, FUp) | (true, FDown) => {
                sign(l - i)
                    * sum_range(i.max(l), m - i, |s| {
                        (c(m - 2 * i - 1, s - i) - c(m - 2 * i - 1, s - i - 1)) * c(s, l)
                    })
            }
            (true, HUp) => sign(l - 1) * (c(i, l - i - 1) + c(i + 1, l - i)),
        }
    };
    Ok(int_to_rat(&v))
}

/// Checks every generator-table entry against exact coordinates of the
/// constructed generators and of their images under `S(m)`.
pub fn verify_tables23(m: usize) -> Result<CheckReport> {
    check_m(m)?;
    let table = generator_table_for(m);
    let mut report = CheckReport::new(&format!("table{table}"), m);
    let gens = cone_generators(m)?;
    let s = build_matrix(MatrixName::S, m)?;
    let bases = six_bases(m)?;
    for (i, w) in gens.generators.iter().enumerate() {
        let ws = w.times(&s)?;
        for (&kind, b) in &bases {
            for times_s in [false, true] {
                let kappa = if times_s { b.coords(&ws)? } else { b.coords_int(w)? };
                let row = Table23Row { times_s, basis: kind };
                for l in 0..=m {
                    report.check(
                        &row.to_string(),
                        &[("i", i as i64), ("l", l as i64)],
                        kappa.0[l].clone(),
                        table23_entry(table, row, i, l, m)?,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Closed form for coordinate `j` of `w_i S(m)`.
pub fn generator_h_closed_form(i: usize, j: usize, m: usize) -> BigInt {
    let (i, j, m) = (i as i64, j as i64, m as i64);
    if m % 2 == 0 {
        sign(j - i) * binom(m - 2 * i, j - i)
    } else {
        sign(j - i) * (binom(m - 2 * i - 1, j - i) - binom(m - 2 * i - 1, j - i - 1))
    }
}

/// For each generator `w_i`: `w_i S(m)` matches the closed form and is a
/// palindrome.
pub fn generator_h_check(m: usize) -> Result<CheckReport> {
    check_m(m)?;
    let mut report = CheckReport::new("generator_h", m);
    let gens = cone_generators(m)?;
    let s = build_matrix(MatrixName::S, m)?;
    for (i, w) in gens.generators.iter().enumerate() {
        let ws = IntVector::from_rational(&w.times(&s)?).expect("S is integral");
        for j in 0..=m {
            report.check(
                "w*S closed form",
                &[("i", i as i64), ("j", j as i64)],
                generator_h_closed_form(i, j, m),
                ws[j].clone(),
            );
        }
        report.check("w*S palindromic", &[("i", i as i64)], ws.reversed(), ws);
    }
    Ok(report)
}

/// Structural identities of the subspaces and the cone for one `m`.
pub fn verify_spaces(m: usize) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("spaces", m);
    let mi = m as i64;
    let s_inv = build_matrix(MatrixName::SInv, m)?;
    let eh = eigenspace_basis(VectorKind::H, m)?;
    let ef = eigenspace_basis(VectorKind::F, m)?;
    let hh = hyperplane_basis(VectorKind::H, m)?;
    let ff = hyperplane_basis(VectorKind::F, m)?;
    let d = eigenspace_dim(m);
    let hd = if m % 2 == 0 { m / 2 } else { (m - 1) / 2 };

    r.check("dim E^h", &[], d, rank_of_int_rows(&eh.rows()));
    r.check("dim E^f", &[], d, rank_of_int_rows(&ef.rows()));
    r.check("dim H", &[], hd, rank_of_int_rows(&hh.rows()));
    r.check("dim F", &[], hd, rank_of_int_rows(&ff.rows()));
    let u = build_matrix(MatrixName::U, m)?;
    let dm = build_matrix(MatrixName::D, m)?;
    r.check(
        "dim of the 1-eigenspace of U",
        &[],
        d,
        crate::linalg::ExactMatrix::identity(m + 1).sub(&u)?.left_kernel_dim(),
    );

    for (k, v) in eh.vectors.iter().enumerate() {
        r.check_true("E^h spanning vector fixed by U", &[("idx", k as i64)], v.times(&u)? == v.to_rational());
    }
    for (k, v) in ef.vectors.iter().enumerate() {
        r.check_true("E^f spanning vector fixed by D", &[("idx", k as i64)], v.times(&dm)? == v.to_rational());
        r.check("first coordinate is 1", &[("idx", k as i64)], BigInt::from(1), v[0].clone());
    }
    for (k, v) in hh.vectors.iter().enumerate() {
        r.check("H orthogonal to iota", &[("idx", k as i64)], BigInt::zero(), v.dot(&iota(m)));
    }

    let pi_m = pi(m);
    let via_s = iota(m).times(&s_inv)?;
    r.check("pi = iota S^-1", &[], pi_m.clone(), IntVector::from_rational(&via_s).unwrap_or_default());
    let mut padded = pi_m.0.clone();
    padded.extend([BigInt::zero(), BigInt::zero()]);
    r.check(
        "(pi,0,0) = f(bar 2^[m+1]; m+2)",
        &[],
        IntVector(padded),
        long_f(&FaceSystem::simplex_boundary(m + 1, m + 2)),
    );

    let image = |b: &SubspaceBasis| -> Result<Vec<Vec<BigInt>>> {
        b.vectors
            .iter()
            .map(|v| Ok(IntVector::from_rational(&v.times(&s_inv)?).expect("S^-1 integral").0))
            .collect()
    };
    r.check_true("F = S^-1(H)", &[], same_span(&ff.rows(), &image(&hh)?));
    r.check_true("E^f = S^-1(E^h)", &[], same_span(&ef.rows(), &image(&eh)?));

    let gens = cone_generators(m)?;
    r.check("number of cone generators", &[], d, gens.generators.len());
    r.check_true("generators span E^f", &[], same_span(&gens.rows(), &ef.rows()));
    r.check_true("generator leading block unit triangular", &[], gens.leading_block_is_unit_triangular());
    for (i, g) in gens.generators.iter().enumerate() {
        r.check_true("generator nonnegative", &[("i", i as i64)], g.is_nonnegative());
        r.check_true("generator in C^f", &[("i", i as i64)], in_cone_cf(g, m)?);
        let rest: Vec<Vec<BigInt>> = gens
            .rows()
            .into_iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v)
            .collect();
        // Extreme ray: dropping a generator loses a dimension.
        r.check("rank without generator", &[("i", i as i64)], d - 1, rank_of_int_rows(&rest));
    }

    // Nested spans of boundary f-vectors and generators.
    let tmax: i64 = if m % 2 == 0 { (mi - 2) / 2 } else { (mi - 3) / 2 };
    for t in 0..=tmax.max(-1) {
        let t = t as usize;
        let bars: Vec<Vec<BigInt>> = (0..=t)
            .map(|i| {
                let k = if m % 2 == 0 { 2 * i + 1 } else { 2 * (i + 1) };
                fh_bar(VectorKind::F, k, m).map(|v| v.0)
            })
            .collect::<Result<_>>()?;
        let g: Vec<Vec<BigInt>> = gens.rows().into_iter().take(t + 1).collect();
        r.check_true("nested span equality", &[("t", t as i64)], same_span(&bars, &g));
    }

    // C^f(m) against the generated cone, exactly via extreme rays.
    let witnesses = cone_equality_witnesses(m)?;
    if m <= 4 {
        for (ray, a) in &witnesses {
            r.check_true(&format!("extreme ray {ray} of C^f has coordinates {}", IntVector(a.clone())), &[], false);
        }
        r.checks += 1;
    } else if let Some((ray, a)) = witnesses.first() {
        r.notes.push(format!(
            "C^f({m}) is strictly larger than the generated cone: {} of its extreme rays lie outside, e.g. {ray} with generator coordinates {}",
            witnesses.len(),
            IntVector(a.clone())
        ));
    }
    Ok(r)
}

/// Pointwise and span checks on a set of DS long f-vectors of `2^[m]`.
///
/// Vectors whose size has the parity of `m` must satisfy the constraint on
/// `(f_{m-1}, f_m)` directly; the remaining ones are checked as `(α, 0)` in
/// dimension `m + 1`, which forces `α_m = 0`. The span of the first class is
/// compared with `E^f(m)` (even `m`) or `F(m)` (odd `m`).
pub fn corollary1_verify(m: usize, points: &[IntVector]) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("corollary1", m);
    let mut matching: Vec<Vec<BigInt>> = Vec::new();
    let half = BigInt::from(m / 2);
    let one = BigInt::from(1);
    for (idx, p) in points.iter().enumerate() {
        if p.len() != m + 1 {
            return Err(Error::DimensionMismatch {
                expected: m + 1,
                got: p.len(),
            });
        }
        let Some(size) = fvector_size(p) else { continue };
        let tail = (p[m - 1].clone(), p[m].clone());
        let idx = [("point", idx as i64)];
        if size % 2 == m % 2 {
            matching.push(p.0.clone());
            let ok = if m % 2 == 0 {
                tail == (half.clone(), one.clone()) || tail == (BigInt::zero(), BigInt::zero())
            } else {
                tail == (BigInt::zero(), BigInt::zero())
            };
            r.check_true(&format!("(f_m-1, f_m) of {p}"), &idx, ok);
        } else {
            r.check(&format!("f_m of {p} (opposite class)"), &idx, BigInt::zero(), p[m].clone());
        }
    }
    let target = if m % 2 == 0 {
        eigenspace_basis(VectorKind::F, m)?
    } else {
        hyperplane_basis(VectorKind::F, m)?
    };
    let target_rows: Vec<Vec<BigInt>> = target.vectors.iter().map(|v| v.0.clone()).collect();
    r.check_true(
        &format!("span of matching DS f-vectors = {}", target.label),
        &[],
        same_span(&matching, &target_rows),
    );
    Ok(r)
}

/// Every nonnegative eigen-lattice point must have integral generator
/// coordinates; for `m <= 4` they must also be nonnegative (the generated
/// cone is all of `C^f(m)` there). For larger `m` a negative coordinate is
/// recorded as a note.
pub fn cone_check(m: usize, points: &[IntVector]) -> Result<CheckReport> {
    let mut r = CheckReport::new("cone", m);
    let gens = cone_generators(m)?;
    for (idx, p) in points.iter().enumerate() {
        let idx_ = [("point", idx as i64)];
        match gens.coordinates(p) {
            None => {
                r.check_true(&format!("{p} has integral generator coordinates"), &idx_, false);
            }
            Some(a) => {
                r.checks += 1;
                if a.iter().any(|x| x.is_negative()) {
                    let msg = format!(
                        "{p} lies in C^f({m}) but has generator coordinates {}",
                        IntVector(a)
                    );
                    if m <= 4 {
                        r.check_true(&msg, &idx_, false);
                    } else {
                        r.notes.push(msg);
                    }
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    #[test]
    fn eigenspace_examples() {
        assert_eq!(
            eigenspace_basis(VectorKind::H, 2).unwrap().vectors,
            vec![iv(&[1, -2, 1]), iv(&[1, 1, 1])]
        );
        assert_eq!(
            eigenspace_basis(VectorKind::F, 2).unwrap().vectors,
            vec![iv(&[1, 0, 0]), iv(&[1, 3, 3])]
        );
        assert_eq!(
            eigenspace_basis(VectorKind::F, 3).unwrap().vectors,
            vec![iv(&[1, 2, 0, 0]), iv(&[1, 4, 6, 4])]
        );
    }

    #[test]
    fn cone_equality_small_and_strict_above() {
        for m in 2..=4 {
            assert!(cone_equality_witnesses(m).unwrap().is_empty(), "m={m}");
            assert_eq!(cf_extreme_rays(m).unwrap(), {
                let mut g = cone_generators(m).unwrap().generators;
                g.sort();
                g
            });
        }
        let w = cone_equality_witnesses(5).unwrap();
        assert_eq!(w, vec![(iv(&[1, 0, 0, 20, 30, 12]), vec![1.into(), (-2).into(), 6.into()])]);
        // The witness really is in C^f(5).
        assert!(in_cone_cf(&w[0].0, 5).unwrap());
        assert!(!in_generated_cone(&w[0].0, 5).unwrap());
    }

    #[test]
    fn generator_examples() {
        assert_eq!(cone_generators(2).unwrap().generators, vec![iv(&[1, 0, 0]), iv(&[0, 1, 1])]);
        assert_eq!(cone_generators(3).unwrap().generators[0], iv(&[1, 2, 0, 0]));
        assert_eq!(cone_generators(4).unwrap().generators[2], iv(&[0, 0, 1, 2, 1]));
    }

    #[test]
    fn table23_examples() {
        let s = Table23Row { times_s: false, basis: BasisKind::S };
        let ss = Table23Row { times_s: true, basis: BasisKind::S };
        assert_eq!(table23_entry(2, s, 1, 2, 2).unwrap(), rat(1));
        assert_eq!(table23_entry(2, ss, 1, 1, 2).unwrap(), rat(1));
        assert_eq!(table23_entry(3, s, 0, 1, 3).unwrap(), rat(2));
        assert!(matches!(table23_entry(3, s, 0, 1, 2), Err(Error::Parity(_))));
        assert!(table23_entry(2, s, 2, 1, 2).is_err());
    }

    #[test]
    fn generator_h_small() {
        for m in 2..=6 {
            let r = generator_h_check(m).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
        let g = cone_generators(3).unwrap();
        let s = build_matrix(MatrixName::S, 3).unwrap();
        assert_eq!(g.generators[0].times(&s).unwrap(), iv(&[1, -1, -1, 1]).to_rational());
    }

    #[test]
    fn membership_examples() {
        assert!(in_eigenspace(&iv(&[1, 1, 1]), VectorKind::F, 2).unwrap());
        assert!(!in_eigenspace(&iv(&[0, 1, -1]), VectorKind::F, 2).unwrap());
        assert!(in_cone_cf(&iv(&[1, 2, 0, 0]), 3).unwrap());
        assert!(in_eigenspace(&iv(&[1, -1, 1]), VectorKind::H, 2).unwrap());
        assert!(in_eigenspace(&iv(&[1, 2]), VectorKind::F, 2).is_err());
    }

    #[test]
    fn corollary_examples() {
        let r = corollary1_verify(2, &[iv(&[1, 1, 1]), iv(&[1, 0, 0]), iv(&[0, 1, 1]), iv(&[1, 2, 0])]).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = corollary1_verify(3, &[iv(&[1, 2, 0, 0])]).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = corollary1_verify(2, &[iv(&[0, 2, 1])]).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn generator_coordinates() {
        let g = cone_generators(2).unwrap();
        assert_eq!(g.coordinates(&iv(&[1, 1, 1])), Some(vec![BigInt::from(1), BigInt::from(1)]));
        assert_eq!(g.coordinates(&iv(&[0, 1, 0])), None);
        assert!(in_generated_cone(&iv(&[1, 1, 1]), 2).unwrap());
    }

    #[test]
    fn spaces_and_tables_small() {
        for m in 2..=6 {
            let r = verify_spaces(m).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            let r = verify_tables23(m).unwrap();
            assert!(r.passed(), "m={m} {:?}", r.failures);
        }
    }
}
