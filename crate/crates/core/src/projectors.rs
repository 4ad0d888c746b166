//! Squared norms of the boundary f/h-vectors, biorthogonality, and exact
//! orthogonal projectors onto `H(m)`, `F(m)` and their one-dimensional
//! pieces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::bases::{fh_bar, VectorKind};
use crate::binom::{binom, kronecker, sign};
use crate::error::{check_m, check_range, Error, Result};
use crate::faces::iota;
use crate::linalg::{build_matrix, ExactMatrix, MatrixName};
use crate::report::CheckReport;
use crate::spaces::{boundary_indices, eigenspace_basis};
use crate::vector::IntVector;

/// An orthogonal projector on `R^(m+1)` in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorMatrix(pub ExactMatrix);

impl ProjectorMatrix {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.mul(&self.0).is_ok_and(|sq| sq == self.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    /// `v P`.
    pub fn apply(&self, v: &IntVector) -> Result<Vec<BigRational>> {
        v.times(&self.0)
    }
}

impl Serialize for ProjectorMatrix {
    /// Rows of `"p/q"` strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.to_string_rows().serialize(s)
    }
}

/// `Bᵀ (B Bᵀ)^-1 B` for the rows `B`, which must be linearly independent.
pub fn projector_onto(rows: &[IntVector]) -> Result<ProjectorMatrix> {
    let b = ExactMatrix::from_int_rows(&rows.iter().map(|v| v.0.clone()).collect::<Vec<_>>());
    let bt = b.transpose();
    let gram = b.mul(&bt)?;
    let inv = gram.inverse()?;
    Ok(ProjectorMatrix(bt.mul(&inv)?.mul(&b)?))
}

/// Closed form of `‖h(2^[k]-bar; m)‖²` or `‖f(2^[k]-bar; m)‖²`.
pub fn norm_sq(kind: VectorKind, k: usize, m: usize) -> Result<BigInt> {
    check_m(m)?;
    check_range("k", k as i64, 1, m as i64)?;
    let (k, m) = (k as i64, m as i64);
    Ok(match kind {
        VectorKind::H => {
            let d = m - k;
            2 * (binom(2 * d, d) - sign(k) * binom(2 * d, m))
        }
        VectorKind::F => binom(2 * k, k) - 1,
    })
}

/// `‖fh_bar(kind, k, m)‖²` computed from the vector.
pub fn norm_sq_direct(kind: VectorKind, k: usize, m: usize) -> Result<BigInt> {
    Ok(fh_bar(kind, k, m)?.norm_sq())
}

/// `h(2^[s]-bar; m) · h(2^[t]-bar; m)ᵀ = 0` for `s ≢ t (mod 2)`.
pub fn biorthogonality_check(s: usize, t: usize, m: usize) -> Result<bool> {
    check_m(m)?;
    check_range("s", s as i64, 1, m as i64)?;
    check_range("t", t as i64, 1, m as i64)?;
    if s % 2 == t % 2 {
        return Err(Error::Parity(format!("s={s} and t={t} have the same parity")));
    }
    let a = fh_bar(VectorKind::H, s, m)?;
    let b = fh_bar(VectorKind::H, t, m)?;
    Ok(a.dot(&b).is_zero())
}

/// Orthogonal projector onto `H(m)` (for `h`) or `F(m)` (for `f`).
pub fn subspace_projector(which: VectorKind, m: usize) -> Result<ProjectorMatrix> {
    check_m(m)?;
    let rows = boundary_indices(m)
        .into_iter()
        .map(|k| fh_bar(which, k, m))
        .collect::<Result<Vec<_>>>()?;
    projector_onto(&rows)
}

/// Printed closed form of entry `(i, j)` of the projector onto
/// `lin(fh_bar(kind, k, m))`.
///
/// For `f` the printed numerator `C(k,i) C(k,j)` ignores that the top face is
/// removed, so it disagrees with the Gram construction in row and column
/// `k`; see [`rank1_projector_entry_corrected`].
pub fn rank1_projector_entry(kind: VectorKind, k: usize, i: usize, j: usize, m: usize) -> Result<BigRational> {
    check_rank1_args(k, i, j, m)?;
    let (k, i, j, mi) = (k as i64, i as i64, j as i64, m as i64);
    let den = norm_sq(kind, k as usize, m)?;
    let num = match kind {
        VectorKind::H => {
            let d = mi - k;
            let part = |x: i64| binom(d, x) - sign(k) * binom(d, x - k);
            sign(i + j) * part(i) * part(j)
        }
        VectorKind::F => binom(k, i) * binom(k, j),
    };
    Ok(BigRational::new(num, den))
}

/// Entry `(i, j)` of the rank-1 projector with the f-numerator
/// `(C(k,i) - δ_ik)(C(k,j) - δ_jk)`, which matches the Gram construction.
pub fn rank1_projector_entry_corrected(
    kind: VectorKind,
    k: usize,
    i: usize,
    j: usize,
    m: usize,
) -> Result<BigRational> {
    match kind {
        VectorKind::H => rank1_projector_entry(kind, k, i, j, m),
        VectorKind::F => {
            check_rank1_args(k, i, j, m)?;
            let (k, i, j) = (k as i64, i as i64, j as i64);
            let num = (binom(k, i) - kronecker(k, i)) * (binom(k, j) - kronecker(k, j));
            Ok(BigRational::new(num, norm_sq(kind, k as usize, m)?))
        }
    }
}

fn check_rank1_args(k: usize, i: usize, j: usize, m: usize) -> Result<()> {
    check_m(m)?;
    check_range("k", k as i64, 1, m as i64)?;
    check_range("i", i as i64, 0, m as i64)?;
    check_range("j", j as i64, 0, m as i64)
}

/// `vᵀ v / ‖v‖²` for `v = fh_bar(kind, k, m)`.
pub fn rank1_projector(kind: VectorKind, k: usize, m: usize) -> Result<ProjectorMatrix> {
    projector_onto(&[fh_bar(kind, k, m)?])
}

/// Norms, biorthogonality and the subspace projectors for one `m`.
pub fn verify_projectors(m: usize) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("projectors", m);
    for k in 1..=m {
        for kind in [VectorKind::H, VectorKind::F] {
            r.check(
                &format!("norm_sq({kind}, k)"),
                &[("k", k as i64)],
                norm_sq_direct(kind, k, m)?,
                norm_sq(kind, k, m)?,
            );
        }
    }
    for s in 1..=m {
        for t in 1..=m {
            if s % 2 != t % 2 {
                r.check_true(
                    "h-bar(s) · h-bar(t) = 0",
                    &[("s", s as i64), ("t", t as i64)],
                    biorthogonality_check(s, t, m)?,
                );
            }
        }
    }
    let u = build_matrix(MatrixName::U, m)?;
    for which in [VectorKind::H, VectorKind::F] {
        let p = subspace_projector(which, m)?;
        let name = if which == VectorKind::H { "H" } else { "F" };
        r.check_true(&format!("P_{name} idempotent"), &[], p.is_idempotent());
        r.check_true(&format!("P_{name} symmetric"), &[], p.is_symmetric());
        for k in boundary_indices(m) {
            let v = fh_bar(which, k, m)?;
            r.check(
                &format!("P_{name} fixes the spanning vector"),
                &[("k", k as i64)],
                format!("{:?}", v.to_rational()),
                format!("{:?}", p.apply(&v)?),
            );
        }
        if which == VectorKind::H {
            r.check_true(
                "P_H annihilates iota",
                &[],
                p.apply(&iota(m))?.iter().all(Zero::is_zero),
            );
            r.check_true(
                "P_H unchanged under the reversal basis",
                &[],
                u.mul(p.matrix())?.mul(&u)? == *p.matrix(),
            );
            // P_H + P_iota is the identity on E^h(m).
            let p_iota = projector_onto(&[iota(m)])?;
            let sum = p.matrix().add(p_iota.matrix())?;
            for v in eigenspace_basis(VectorKind::H, m)?.vectors {
                r.check(
                    "(P_H + P_iota) fixes E^h",
                    &[],
                    format!("{:?}", v.to_rational()),
                    format!("{:?}", v.times(&sum)?),
                );
            }
        }
    }
    Ok(r)
}

/// Printed rank-1 entries against the Gram construction for one `m`.
pub fn verify_rank1(m: usize) -> Result<CheckReport> {
    verify_rank1_with(m, false)
}

/// As [`verify_rank1`]; with `corrected` the `f` entries come from
/// [`rank1_projector_entry_corrected`].
pub fn verify_rank1_with(m: usize, corrected: bool) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("rank1", m);
    for kind in [VectorKind::H, VectorKind::F] {
        for k in 1..=m {
            let p = rank1_projector(kind, k, m)?;
            for i in 0..=m {
                for j in 0..=m {
                    r.check(
                        &format!("rank-1 projector entry ({kind})"),
                        &[("k", k as i64), ("i", i as i64), ("j", j as i64)],
                        p.matrix().get(i, j).clone(),
                        if corrected {
                            rank1_projector_entry_corrected(kind, k, i, j, m)?
                        } else {
                            rank1_projector_entry(kind, k, i, j, m)?
                        },
                    );
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat as r;

    #[test]
    fn norm_examples() {
        assert_eq!(norm_sq(VectorKind::H, 1, 2).unwrap(), BigInt::from(6));
        assert_eq!(norm_sq(VectorKind::F, 2, 3).unwrap(), BigInt::from(5));
        assert_eq!(norm_sq(VectorKind::H, 2, 2).unwrap(), BigInt::from(2));
        for m in 2..=10 {
            for k in 1..=m {
                for kind in [VectorKind::H, VectorKind::F] {
                    assert_eq!(norm_sq(kind, k, m).unwrap(), norm_sq_direct(kind, k, m).unwrap());
                }
            }
        }
        assert!(norm_sq(VectorKind::H, 0, 2).is_err());
        assert!(norm_sq(VectorKind::H, 3, 2).is_err());
    }

    #[test]
    fn biorthogonality_examples() {
        assert!(biorthogonality_check(1, 2, 2).unwrap());
        assert!(biorthogonality_check(1, 2, 3).unwrap());
        assert!(biorthogonality_check(2, 3, 4).unwrap());
        assert!(matches!(biorthogonality_check(1, 3, 4), Err(Error::Parity(_))));
    }

    #[test]
    fn projector_examples() {
        let p = subspace_projector(VectorKind::H, 2).unwrap();
        let h = [1, -2, 1];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*p.matrix().get(i, j), r(h[i] * h[j]) / r(6));
            }
        }
        assert!(p.apply(&iota(2)).unwrap().iter().all(Zero::is_zero));
        let p = subspace_projector(VectorKind::F, 3).unwrap();
        let f = [1, 2, 0, 0];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*p.matrix().get(i, j), r(f[i] * f[j]) / r(5));
            }
        }
    }

    #[test]
    fn rank1_examples() {
        assert_eq!(rank1_projector_entry(VectorKind::H, 1, 0, 0, 2).unwrap(), r(1) / r(6));
        assert_eq!(rank1_projector_entry(VectorKind::F, 2, 0, 1, 3).unwrap(), r(2) / r(5));
        assert!(rank1_projector_entry(VectorKind::F, 2, 3, 1, 3).unwrap().is_zero());
        // The printed f-form is nonzero in row k, where the vector vanishes.
        assert_eq!(rank1_projector_entry(VectorKind::F, 2, 2, 2, 3).unwrap(), r(1) / r(5));
        assert!(rank1_projector_entry_corrected(VectorKind::F, 2, 2, 2, 3).unwrap().is_zero());
    }

    #[test]
    fn rank1_only_printed_f_row_k_disagrees() {
        for m in 2..=6 {
            for f in verify_rank1(m).unwrap().failures {
                assert!(f.item.contains("(f)"), "{f:?}");
                assert!(f.indices["i"] == f.indices["k"] || f.indices["j"] == f.indices["k"], "{f:?}");
            }
            for kind in [VectorKind::H, VectorKind::F] {
                for k in 1..=m {
                    let p = rank1_projector(kind, k, m).unwrap();
                    for i in 0..=m {
                        for j in 0..=m {
                            assert_eq!(
                                *p.matrix().get(i, j),
                                rank1_projector_entry_corrected(kind, k, i, j, m).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projector_suite_small() {
        for m in 2..=6 {
            let rep = verify_projectors(m).unwrap();
            assert!(rep.passed(), "m={m}: {:?}", rep.failures);
        }
    }
}
