//! The six bases of `R^(m+1)` built from a maximal chain of faces, exact
//! change of coordinates, and the closed forms for the boundary complexes
//! `2^[k] - {[k]}` in each basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::{binom, kronecker, sign};
use crate::error::{check_m, check_range, Error, Result};
use crate::faces::{long_f, long_h, Face, FaceSystem};
use crate::linalg::{int_to_rat, ExactMatrix};
use crate::report::CheckReport;
use crate::vector::IntVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisKind {
    /// `σ(k) = f({F_k})`, the standard basis.
    S,
    /// `ϑ•(k) = h({F_k})`, the rows of `S(m)`.
    HBullet,
    /// `φ▲(k) = f([F_0, F_k])`.
    FUp,
    /// `ϑ▲(k) = h([F_0, F_k])`.
    HUp,
    /// `φ▼(k) = f([F_{m-k}, F_m])`.
    FDown,
    /// `ϑ▼(k) = h([F_{m-k}, F_m])`.
    HDown,
}

impl BasisKind {
    pub const ALL: [BasisKind; 6] = [
        BasisKind::S,
        BasisKind::HBullet,
        BasisKind::FUp,
        BasisKind::HUp,
        BasisKind::FDown,
        BasisKind::HDown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::S => "S",
            BasisKind::HBullet => "Hbullet",
            BasisKind::FUp => "Fup",
            BasisKind::HUp => "Hup",
            BasisKind::FDown => "Fdown",
            BasisKind::HDown => "Hdown",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BasisKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BasisKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown basis {s:?}; expected S, Hbullet, Fup, Hup, Fdown or Hdown")
            })
    }
}

/// An ordered basis `(b_0, ..., b_m)` with its inverse change-of-basis matrix.
#[derive(Clone, Debug)]
pub struct BasisFamily {
    pub kind: BasisKind,
    pub m: usize,
    pub vectors: Vec<IntVector>,
    inverse: ExactMatrix,
}

impl BasisFamily {
    fn new(kind: BasisKind, m: usize, vectors: Vec<IntVector>) -> Result<Self> {
        let mat = ExactMatrix::from_int_rows(&vectors.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
        if mat.rank() != m + 1 {
            return Err(Error::Singular);
        }
        let inverse = mat.inverse()?;
        Ok(Self {
            kind,
            m,
            vectors,
            inverse,
        })
    }

    /// Matrix whose rows are the basis vectors.
    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_int_rows(&self.vectors.iter().map(|v| v.0.clone()).collect::<Vec<_>>())
    }

    /// `[w]_B`: the unique `κ` with `Σ κ_i b_i = w`.
    pub fn coords(&self, w: &[BigRational]) -> Result<CoordinateVector> {
        Ok(CoordinateVector(self.inverse.left_apply(w)?))
    }

    pub fn coords_int(&self, w: &IntVector) -> Result<CoordinateVector> {
        self.coords(&w.to_rational())
    }

    /// `Σ κ_i b_i`.
    pub fn reconstruct(&self, kappa: &CoordinateVector) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.m + 1];
        for (k, b) in kappa.0.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(b.entries()) {
                *o += k * int_to_rat(x);
            }
        }
        out
    }
}

/// Exact coordinates of a vector relative to a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateVector(pub Vec<BigRational>);

impl CoordinateVector {
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

/// The maximal chain `F_k = {perm[0], ..., perm[k-1]}` (0-based bits).
fn chain(perm: &[usize]) -> Vec<Face> {
    let mut out = vec![Face::EMPTY];
    let mut mask = 0u64;
    for &p in perm {
        mask |= 1u64 << p;
        out.push(Face::from_mask(mask));
    }
    out
}

/// Builds one basis from the chain given by a permutation of `0..m`
/// (element `perm[i] + 1` is added at step `i + 1`).
pub fn basis_from_chain(kind: BasisKind, perm: &[usize]) -> Result<BasisFamily> {
    let m = perm.len();
    check_m(m)?;
    let f = chain(perm);
    let vectors = (0..=m)
        .map(|k| {
            let system = match kind {
                BasisKind::S | BasisKind::HBullet => FaceSystem::from_faces(m, [f[k]]),
                BasisKind::FUp | BasisKind::HUp => FaceSystem::boolean_interval(f[0], f[k], m),
                BasisKind::FDown | BasisKind::HDown => {
                    FaceSystem::boolean_interval(f[m - k], f[m], m)
                }
            };
            match kind {
                BasisKind::S | BasisKind::FUp | BasisKind::FDown => long_f(&system),
                _ => long_h(&system),
            }
        })
        .collect();
    BasisFamily::new(kind, m, vectors)
}

type BasisCache = RwLock<HashMap<(BasisKind, usize), Arc<BasisFamily>>>;

static BASES: OnceLock<BasisCache> = OnceLock::new();

/// The basis of the given kind for the canonical chain `F_k = {1, ..., k}`,
/// memoized per `(kind, m)`.
pub fn basis(kind: BasisKind, m: usize) -> Result<Arc<BasisFamily>> {
    check_m(m)?;
    let cache = BASES.get_or_init(Default::default);
    if let Some(b) = cache.read().unwrap().get(&(kind, m)) {
        return Ok(b.clone());
    }
    let perm: Vec<usize> = (0..m).collect();
    let b = Arc::new(basis_from_chain(kind, &perm)?);
    cache.write().unwrap().insert((kind, m), b.clone());
    Ok(b)
}

pub fn six_bases(m: usize) -> Result<BTreeMap<BasisKind, Arc<BasisFamily>>> {
    BasisKind::ALL
        .into_iter()
        .map(|k| Ok((k, basis(k, m)?)))
        .collect()
}

pub fn coords(w: &IntVector, b: &BasisFamily) -> Result<CoordinateVector> {
    if w.len() != b.m + 1 {
        return Err(Error::DimensionMismatch {
            expected: b.m + 1,
            got: w.len(),
        });
    }
    b.coords_int(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VectorKind {
    F,
    H,
}

impl std::str::FromStr for VectorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "f" | "F" => Ok(VectorKind::F),
            "h" | "H" => Ok(VectorKind::H),
            _ => Err(format!("expected f or h, got {s:?}")),
        }
    }
}

impl fmt::Display for VectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorKind::F => "f",
            VectorKind::H => "h",
        })
    }
}

/// Closed form of `f(2^[k]-bar; m)` or `h(2^[k]-bar; m)`.
pub fn fh_bar(kind: VectorKind, k: usize, m: usize) -> Result<IntVector> {
    check_m(m)?;
    check_range("k", k as i64, 1, m as i64)?;
    let (k, m) = (k as i64, m as i64);
    Ok(IntVector(
        (0..=m)
            .map(|l| match kind {
                VectorKind::F => binom(k, l) - kronecker(k, l),
                VectorKind::H => sign(l) * (binom(m - k, l) - sign(k) * binom(m - k, l - k)),
            })
            .collect(),
    ))
}

/// `f` or `h` of the explicit face system `2^[k] - {[k]}`.
pub fn fh_bar_direct(kind: VectorKind, k: usize, m: usize) -> IntVector {
    let sys = FaceSystem::simplex_boundary(k, m);
    match kind {
        VectorKind::F => long_f(&sys),
        VectorKind::H => long_h(&sys),
    }
}

/// A row of the boundary-complex coordinate table: vector `f` or `h` of
/// `2^[k]-bar`, expressed in `basis` (`S` gives the components themselves).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Table1Row {
    pub vector: VectorKind,
    pub basis: BasisKind,
}

impl Table1Row {
    pub fn all() -> Vec<Table1Row> {
        [VectorKind::H, VectorKind::F]
            .into_iter()
            .flat_map(|vector| BasisKind::ALL.into_iter().map(move |basis| Table1Row { vector, basis }))
            .collect()
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kappa({}bar,{})", self.vector, self.basis)
    }
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Evaluates the printed closed form of one table entry.
pub fn table1_entry(row: Table1Row, k: usize, l: usize, m: usize) -> Result<BigRational> {
    check_m(m)?;
    check_range("k", k as i64, 1, m as i64)?;
    check_range("l", l as i64, 0, m as i64)?;
    let (k, l, m) = (k as i64, l as i64, m as i64);
    let c = |n: i64, r: i64| int_to_rat(&binom(n, r));
    let sg = |e: i64| int_to_rat(&sign(e));
    let d = |a: i64, b: i64| int_to_rat(&kronecker(a, b));
    use BasisKind::*;
    use VectorKind::*;
    Ok(match (row.vector, row.basis) {
        (H, S) => sg(l) * (c(m - k, l) - sg(k) * c(m - k, l - k)),
        (H, HBullet) => c(k, l) - d(k, l),
        (H, FUp) => {
            let sum: BigRational = (l..=m).map(|s| c(m - k, s - k) * c(s, l)).sum();
            sg(l) * (pow2(m - k - l) * c(m - k, l) - sg(k) * sum)
        }
        (H, HUp) => sg(k - l) * (d(k, l) - c(k, l)),
        (H, FDown) => {
            let sum: BigRational = (0..=m)
                .map(|s| (c(m - k, s) - sg(k) * c(m - k, s - k)) * c(m - s, l))
                .sum();
            sg(m - l) * sum
        }
        (H, HDown) => sg(m - l) * (c(m - k, l - k) - sg(k) * c(m - k, l)),
        (F, S) => c(k, l) - d(k, l),
        (F, HBullet) => {
            let sum: BigRational = (0..=k.min(l)).map(|s| c(k, s) * c(m - s, m - l)).sum();
            sum - c(m - k, m - l)
        }
        (F, FUp) => sg(k - l) * (d(k, l) - c(k, l)),
        (F, HUp) => sg(m - l) * c(k, m - l) * (pow2(k + l - m) - BigRational::one()),
        (F, FDown) => c(m - k, m - l) - sg(m - k - l) * c(m - k, l),
        (F, HDown) => c(k, m - l) - d(k, m - l),
    })
}

/// Coordinates of `f(2^[k]-bar; m)` in the `F▼` basis. The printed table
/// row lacks the sign `(-1)^(m-l)` on its first term; this is the form that
/// agrees with exact coordinates.
pub fn fbar_fdown_corrected(k: usize, l: usize, m: usize) -> Result<BigRational> {
    check_m(m)?;
    check_range("k", k as i64, 1, m as i64)?;
    check_range("l", l as i64, 0, m as i64)?;
    let (k, l, m) = (k as i64, l as i64, m as i64);
    Ok(int_to_rat(
        &(sign(m - l) * binom(m - k, m - l) - sign(m - k - l) * binom(m - k, l)),
    ))
}

/// Recomputes every entry of every row for `1 <= k <= m`, `0 <= l <= m`
/// by exact coordinates of the explicit boundary complexes.
pub fn verify_table1(m: usize) -> Result<CheckReport> {
    verify_table1_with(m, false)
}

/// As [`verify_table1`]; with `corrected` the `f`-bar row in the `F▼` basis
/// is compared against [`fbar_fdown_corrected`] instead of the printed form.
pub fn verify_table1_with(m: usize, corrected: bool) -> Result<CheckReport> {
    check_m(m)?;
    let mut report = CheckReport::new("table1", m);
    let bases = six_bases(m)?;
    for k in 1..=m {
        for vector in [VectorKind::H, VectorKind::F] {
            let direct = fh_bar_direct(vector, k, m);
            report.check(
                &format!("closed form {vector}bar"),
                &[("k", k as i64)],
                direct.clone(),
                fh_bar(vector, k, m)?,
            );
            // The component rows are also printed as a difference of
            // interval basis vectors.
            let (up, point) = match vector {
                VectorKind::H => (BasisKind::HUp, BasisKind::HBullet),
                VectorKind::F => (BasisKind::FUp, BasisKind::S),
            };
            report.check(
                &format!("{vector}bar as interval minus singleton"),
                &[("k", k as i64)],
                direct.clone(),
                &bases[&up].vectors[k] - &bases[&point].vectors[k],
            );
            for (&kind, b) in &bases {
                let kappa = b.coords_int(&direct)?;
                let row = Table1Row { vector, basis: kind };
                let use_corrected =
                    corrected && vector == VectorKind::F && kind == BasisKind::FDown;
                for l in 0..=m {
                    let closed = if use_corrected {
                        fbar_fdown_corrected(k, l, m)?
                    } else {
                        table1_entry(row, k, l, m)?
                    };
                    report.check(
                        &row.to_string(),
                        &[("k", k as i64), ("l", l as i64)],
                        kappa.0[l].clone(),
                        closed,
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{build_matrix, rat, MatrixName};

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis(BasisKind::FUp, 2).unwrap().vectors[1], iv(&[1, 1, 0]));
        assert_eq!(basis(BasisKind::HBullet, 2).unwrap().vectors[0], iv(&[1, -2, 1]));
        assert_eq!(basis(BasisKind::FDown, 2).unwrap().vectors[0], iv(&[0, 0, 1]));
    }

    #[test]
    fn hbullet_rows_are_s() {
        for m in 2..=6 {
            let s = build_matrix(MatrixName::S, m).unwrap();
            assert_eq!(basis(BasisKind::HBullet, m).unwrap().matrix(), s);
        }
    }

    #[test]
    fn hdown_is_reversed_standard_basis() {
        for m in 2..=6 {
            let b = basis(BasisKind::HDown, m).unwrap();
            for (k, v) in b.vectors.iter().enumerate() {
                let mut e = vec![0; m + 1];
                e[m - k] = 1;
                assert_eq!(*v, iv(&e));
            }
        }
    }

    #[test]
    fn coords_examples() {
        let hb = basis(BasisKind::HBullet, 2).unwrap();
        let kappa = coords(&fh_bar(VectorKind::H, 1, 2).unwrap(), &hb).unwrap();
        assert_eq!(kappa.0, vec![rat(1), rat(0), rat(0)]);

        // (1,2,0,0) = -φ▲(0) + 2 φ▲(1)
        let fup = basis(BasisKind::FUp, 3).unwrap();
        let kappa = coords(&fh_bar(VectorKind::F, 2, 3).unwrap(), &fup).unwrap();
        assert_eq!(kappa.0, vec![rat(-1), rat(2), rat(0), rat(0)]);

        let s = basis(BasisKind::S, 3).unwrap();
        let w = iv(&[3, -1, 4, 1]);
        assert_eq!(coords(&w, &s).unwrap().0, w.to_rational());
        assert!(coords(&iv(&[1, 2]), &s).is_err());
    }

    #[test]
    fn fh_bar_examples() {
        assert_eq!(fh_bar(VectorKind::H, 1, 2).unwrap(), iv(&[1, -2, 1]));
        assert_eq!(fh_bar(VectorKind::F, 2, 3).unwrap(), iv(&[1, 2, 0, 0]));
        assert_eq!(fh_bar(VectorKind::H, 2, 2).unwrap(), iv(&[1, 0, -1]));
        assert!(fh_bar(VectorKind::H, 0, 2).is_err());
        assert!(fh_bar(VectorKind::H, 3, 2).is_err());
    }

    #[test]
    fn table1_entry_examples() {
        let fdown = Table1Row { vector: VectorKind::F, basis: BasisKind::HDown };
        assert_eq!(table1_entry(fdown, 1, 2, 2).unwrap(), rat(1));
        let hcomp = Table1Row { vector: VectorKind::H, basis: BasisKind::S };
        assert_eq!(table1_entry(hcomp, 1, 0, 2).unwrap(), rat(1));
        let hup = Table1Row { vector: VectorKind::H, basis: BasisKind::HUp };
        for k in 1..=4 {
            assert_eq!(table1_entry(hup, k, k, 4).unwrap(), rat(0));
        }
        assert!(table1_entry(hup, 1, 5, 4).is_err());
    }

    #[test]
    fn table1_small() {
        let erratum = Table1Row { vector: VectorKind::F, basis: BasisKind::FDown };
        for m in 2..=5 {
            let r = verify_table1(m).unwrap();
            // Only the printed f-bar/F-down row disagrees with exact coordinates.
            assert!(!r.failures.is_empty());
            assert!(
                r.failures.iter().all(|f| f.item == erratum.to_string()),
                "{:?}",
                r.failures
            );
        }
    }

    #[test]
    fn corrected_fdown_row_matches_coordinates() {
        for m in 2..=8 {
            let b = basis(BasisKind::FDown, m).unwrap();
            for k in 1..=m {
                let kappa = b.coords_int(&fh_bar(VectorKind::F, k, m).unwrap()).unwrap();
                for l in 0..=m {
                    assert_eq!(kappa.0[l], fbar_fdown_corrected(k, l, m).unwrap());
                }
            }
        }
    }
}
