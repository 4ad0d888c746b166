//! Face systems in the simplex `2^[m]`, their long and classical f/h-vectors,
//! and the Dehn-Sommerville predicates.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::{binom, sign};
use crate::error::{Error, Result};
use crate::vector::IntVector;

/// Largest ground set supported by the bitmask face representation.
pub const MAX_GROUND_SET: usize = 63;

/// A subset of `[m]`, bit `e - 1` set for element `e`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_mask(mask: u64) -> Self {
        Face(mask)
    }

    /// `{1, ..., k}`.
    pub fn initial(k: usize) -> Self {
        if k == 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << k) - 1)
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// Sorted 1-based elements.
    pub fn elements(self) -> Vec<u32> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

impl Ord for Face {
    /// Cardinality first, then lexicographic on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// On-disk form: `{"m": 2, "faces": [[], [1], [1, 2]]}` with 1-based elements.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceSystemDoc {
    pub m: usize,
    pub faces: Vec<Vec<u32>>,
}

/// A finite family of distinct subsets of `[m]`, stored in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FaceSystem {
    m: usize,
    faces: Vec<Face>,
}

impl FaceSystem {
    /// Validates 1-based face lists. Elements outside `[m]`, repeated
    /// elements within a face and repeated faces are rejected.
    pub fn new(m: usize, faces: &[Vec<u32>]) -> Result<Self> {
        if m > MAX_GROUND_SET {
            return Err(Error::InvalidFaceSystem(format!(
                "m = {m} exceeds the supported ground set size {MAX_GROUND_SET}"
            )));
        }
        let mut masks = Vec::with_capacity(faces.len());
        let mut seen = BTreeSet::new();
        for face in faces {
            let mut mask = 0u64;
            for &e in face {
                if e == 0 || e as usize > m {
                    return Err(Error::InvalidFaceSystem(format!(
                        "element {e} of face {face:?} lies outside [1, {m}]"
                    )));
                }
                let bit = 1u64 << (e - 1);
                if mask & bit != 0 {
                    return Err(Error::InvalidFaceSystem(format!(
                        "face {face:?} repeats element {e}"
                    )));
                }
                mask |= bit;
            }
            if !seen.insert(mask) {
                return Err(Error::InvalidFaceSystem(format!("duplicate face {face:?}")));
            }
            masks.push(Face(mask));
        }
        masks.sort();
        Ok(Self { m, faces: masks })
    }

    /// Builds a system from arbitrary masks; duplicates are merged.
    pub fn from_faces(m: usize, faces: impl IntoIterator<Item = Face>) -> Self {
        let mut v: Vec<Face> = faces.into_iter().collect();
        debug_assert!(v.iter().all(|f| f.is_subset_of(Face::initial(m))));
        v.sort();
        v.dedup();
        Self { m, faces: v }
    }

    pub fn from_doc(doc: &FaceSystemDoc) -> Result<Self> {
        Self::new(doc.m, &doc.faces)
    }

    pub fn to_doc(&self) -> FaceSystemDoc {
        FaceSystemDoc {
            m: self.m,
            faces: self.faces.iter().map(|f| f.elements()).collect(),
        }
    }

    pub fn empty(m: usize) -> Self {
        Self { m, faces: vec![] }
    }

    /// The whole simplex `2^[k]` inside `2^[m]`.
    pub fn simplex(k: usize, m: usize) -> Self {
        Self::boolean_interval(Face::EMPTY, Face::initial(k), m)
    }

    /// `2^[k]` with its top face `[k]` removed.
    pub fn simplex_boundary(k: usize, m: usize) -> Self {
        let top = Face::initial(k);
        Self::from_faces(
            m,
            Self::simplex(k, m).faces.into_iter().filter(|&f| f != top),
        )
    }

    /// The Boolean interval `[lo, hi] = {B : lo ⊆ B ⊆ hi}`.
    pub fn boolean_interval(lo: Face, hi: Face, m: usize) -> Self {
        let free = hi.0 & !lo.0;
        let mut faces = Vec::new();
        // Enumerate submasks of `free`.
        let mut sub = free;
        loop {
            faces.push(Face(lo.0 | sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        Self::from_faces(m, faces)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// `max |F|`, defined only for nonempty systems.
    pub fn size(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len()).max()
    }

    pub fn vertex_union(&self) -> Face {
        Face(self.faces.iter().fold(0, |acc, f| acc | f.0))
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        Self::from_faces(self.m, self.faces.iter().chain(&other.faces).copied())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        Self::from_faces(
            self.m,
            self.faces.iter().copied().filter(|f| other.contains(*f)),
        )
    }

    /// f-vector counts padded to length `n + 1`; requires `n >= size`.
    pub fn long_f_in(&self, n: usize) -> IntVector {
        let mut counts = vec![0u64; n + 1];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        IntVector::from_u64(&counts)
    }
}

/// `f(Φ; m)`: face counts by cardinality `0..=m`.
pub fn long_f(phi: &FaceSystem) -> IntVector {
    phi.long_f_in(phi.m)
}

/// `h(Φ; m) = f(Φ; m) · S(m)`.
pub fn long_h(phi: &FaceSystem) -> IntVector {
    h_from_f(&long_f(phi))
}

/// Long h-vector of a long f-vector of length `m + 1`, via `S(m)`.
pub fn h_from_f(f: &IntVector) -> IntVector {
    let m = f.len() - 1;
    // S(m) entries: (-1)^(j-i) C(m-i, j-i).
    let mut h = IntVector::zeros(m + 1);
    for (i, fi) in f.entries().iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for j in i..=m {
            let s = sign((j - i) as i64) * binom((m - i) as i64, (j - i) as i64);
            h.0[j] += fi * s;
        }
    }
    h
}

/// Long f-vector from a long h-vector, via `S(m)^-1` (entries `C(m-i, j-i)`).
pub fn f_from_h(h: &IntVector) -> IntVector {
    let m = h.len() - 1;
    let mut f = IntVector::zeros(m + 1);
    for (i, hi) in h.entries().iter().enumerate() {
        for j in i..=m {
            f.0[j] += hi * binom((m - i) as i64, (j - i) as i64);
        }
    }
    f
}

/// Long h-vector by coefficient extraction from
/// `Σ h_i y^(m-i) = Σ f_i (y-1)^(m-i)`.
pub fn h_by_polynomial(f: &IntVector) -> IntVector {
    let m = f.len() - 1;
    // coeffs[p] is the coefficient of y^p.
    let mut coeffs = vec![BigInt::zero(); m + 1];
    for (i, fi) in f.entries().iter().enumerate() {
        let e = (m - i) as i64;
        for p in 0..=e {
            coeffs[p as usize] += fi * binom(e, p) * sign(e - p);
        }
    }
    IntVector((0..=m).map(|i| coeffs[m - i].clone()).collect())
}

/// Classical f-vector `(f_0, ..., f_{d-1})` (`f_i` counts faces with `i + 1`
/// elements) and h-vector `(h_0, ..., h_d)` with `d = size(Δ)`. The empty
/// face contributes `f_{-1} = 1` when present and `0` otherwise.
pub fn classical_fh(delta: &FaceSystem) -> Result<(IntVector, IntVector)> {
    let d = delta.size().ok_or(Error::EmptySystem)?;
    if d == 0 {
        return Err(Error::InvalidFaceSystem(
            "classical vectors need size at least 1".into(),
        ));
    }
    // counts[c] = number of faces of cardinality c, c = 0..=d; counts[0] = f_{-1}.
    let counts = delta.long_f_in(d);
    let f = IntVector(counts.0[1..].to_vec());
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for i in 0..=d {
        let fm1 = &counts.0[i];
        let e = (d - i) as i64;
        for p in 0..=e {
            coeffs[p as usize] += fm1 * binom(e, p) * sign(e - p);
        }
    }
    let h = IntVector((0..=d).map(|i| coeffs[d - i].clone()).collect());
    Ok((f, h))
}

/// Size of the support of a long f-vector, `max{i : f_i > 0}`.
pub fn fvector_size(f: &IntVector) -> Option<usize> {
    f.entries().iter().rposition(|x| !x.is_zero())
}

/// The relation `h_l = ε h_{m-l}` for all `l`.
pub fn h_is_symmetric(h: &IntVector, negate: bool) -> bool {
    let m = h.len() - 1;
    (0..=m).all(|l| {
        if negate {
            h[l] == -&h[m - l]
        } else {
            h[l] == h[m - l]
        }
    })
}

/// DS test on a long f-vector: `h_l = (-1)^(m - size) h_{m-l}`. The zero
/// vector (empty system) satisfies every linear relation and counts as DS.
pub fn is_ds_fvector(f: &IntVector) -> bool {
    let m = f.len() - 1;
    match fvector_size(f) {
        None => true,
        Some(size) => h_is_symmetric(&h_from_f(f), (m - size) % 2 == 1),
    }
}

pub fn is_ds(phi: &FaceSystem) -> bool {
    is_ds_fvector(&long_f(phi))
}

/// `η(Φ)`: the size of the vertex union, bumped by one if needed to match
/// the parity of `size(Φ)`.
pub fn eta(phi: &FaceSystem) -> Result<usize> {
    let size = phi.size().ok_or(Error::EmptySystem)?;
    let u = phi.vertex_union().len();
    Ok(if u % 2 == size % 2 { u } else { u + 1 })
}

/// The ambient dimensions checked by [`is_ds_family`]: the first `samples`
/// positive integers `n >= η(Φ)` with `n ≡ size(Φ) (mod 2)`.
pub fn ds_family_dimensions(phi: &FaceSystem, samples: usize) -> Result<Vec<usize>> {
    let mut n = eta(phi)?;
    if n == 0 {
        n = 2;
    }
    Ok((0..samples).map(|k| n + 2 * k).collect())
}

/// Checks `h(Φ; n) = h(Φ; n) U(n)` for the dimensions of
/// [`ds_family_dimensions`].
pub fn is_ds_family(phi: &FaceSystem, samples: usize) -> Result<bool> {
    for n in ds_family_dimensions(phi, samples)? {
        let h = h_from_f(&phi.long_f_in(n));
        // v U(n) is the reversal of v.
        if h.reversed() != h {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Downward closed and containing every singleton of its vertex set.
pub fn is_complex(phi: &FaceSystem) -> bool {
    let closed = phi.faces().iter().all(|f| {
        // every subset obtained by removing one element
        (0..64)
            .filter(|b| f.mask() >> b & 1 == 1)
            .all(|b| phi.contains(Face::from_mask(f.mask() & !(1u64 << b))))
    });
    let v = phi.vertex_union();
    let singletons = (0..64)
        .filter(|b| v.mask() >> b & 1 == 1)
        .all(|b| phi.contains(Face::from_mask(1u64 << b)));
    closed && singletons
}

/// `ι(m) = (1, ..., 1)`.
pub fn iota(m: usize) -> IntVector {
    IntVector(vec![BigInt::one(); m + 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(m: usize, faces: &[&[u32]]) -> FaceSystem {
        let v: Vec<Vec<u32>> = faces.iter().map(|f| f.to_vec()).collect();
        FaceSystem::new(m, &v).unwrap()
    }

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    #[test]
    fn long_f_examples() {
        assert_eq!(long_f(&sys(2, &[&[], &[1], &[1, 2]])), iv(&[1, 1, 1]));
        assert_eq!(long_f(&sys(2, &[&[], &[1], &[2]])), iv(&[1, 2, 0]));
        assert_eq!(long_f(&FaceSystem::empty(3)), iv(&[0, 0, 0, 0]));
    }

    #[test]
    fn long_h_examples() {
        assert_eq!(h_from_f(&iv(&[1, 0, 0])), iv(&[1, -2, 1]));
        assert_eq!(h_from_f(&iv(&[1, 1, 1])), iv(&[1, -1, 1]));
        assert_eq!(h_from_f(&iv(&[1, 2, 0])), iv(&[1, 0, -1]));
        for f in [iv(&[1, 0, 0]), iv(&[1, 1, 1]), iv(&[1, 2, 0]), iv(&[3, 1, 4, 1])] {
            assert_eq!(h_by_polynomial(&f), h_from_f(&f));
            assert_eq!(f_from_h(&h_from_f(&f)), f);
        }
    }

    #[test]
    fn classical_examples() {
        let (f, h) = classical_fh(&sys(2, &[&[], &[1], &[2]])).unwrap();
        assert_eq!((f, h), (iv(&[2]), iv(&[1, 1])));
        let (f, h) = classical_fh(&FaceSystem::simplex(2, 2)).unwrap();
        assert_eq!((f, h), (iv(&[2, 1]), iv(&[1, 0, 0])));
        let (f, h) = classical_fh(&sys(2, &[&[], &[1]])).unwrap();
        assert_eq!((f, h), (iv(&[1]), iv(&[1, 0])));
        assert_eq!(classical_fh(&FaceSystem::empty(2)), Err(Error::EmptySystem));
        assert!(classical_fh(&sys(2, &[&[]])).is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&sys(2, &[&[1], &[1, 2]])).unwrap(), 2);
        assert_eq!(eta(&sys(2, &[&[], &[1]])).unwrap(), 1);
        assert_eq!(eta(&sys(2, &[&[]])).unwrap(), 0);
        assert_eq!(eta(&sys(3, &[&[1], &[3]])).unwrap(), 3);
        assert_eq!(eta(&FaceSystem::empty(2)), Err(Error::EmptySystem));
    }

    #[test]
    fn ds_examples() {
        assert!(is_ds(&sys(2, &[&[], &[1], &[2]])));
        assert!(!is_ds(&FaceSystem::simplex(2, 2)));
        assert!(is_ds(&sys(2, &[&[]])));
        assert!(is_ds(&FaceSystem::empty(2)));
    }

    #[test]
    fn ds_family_examples() {
        let point = sys(2, &[&[]]);
        assert_eq!(ds_family_dimensions(&point, 3).unwrap(), vec![2, 4, 6]);
        assert!(is_ds_family(&point, 3).unwrap());
        assert!(is_ds_family(&sys(2, &[&[], &[1], &[2]]), 3).unwrap());
        assert!(!is_ds_family(&FaceSystem::simplex(2, 2), 2).unwrap());
    }

    #[test]
    fn complex_examples() {
        assert!(is_complex(&sys(2, &[&[], &[1], &[2]])));
        assert!(!is_complex(&sys(2, &[&[1, 2]])));
        assert!(is_complex(&FaceSystem::empty(2)));
    }

    #[test]
    fn canonical_order_and_validation() {
        let s = sys(3, &[&[2, 3], &[1], &[], &[1, 3], &[3]]);
        assert_eq!(
            s.to_doc().faces,
            vec![vec![], vec![1], vec![3], vec![1, 3], vec![2, 3]]
        );
        assert!(FaceSystem::new(2, &[vec![3]]).is_err());
        assert!(FaceSystem::new(2, &[vec![0]]).is_err());
        assert!(FaceSystem::new(2, &[vec![1], vec![1]]).is_err());
        assert!(FaceSystem::new(2, &[vec![1, 1]]).is_err());
        assert!(FaceSystem::new(2, &[vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn boundary_of_simplex() {
        let b = FaceSystem::simplex_boundary(2, 3);
        assert_eq!(long_f(&b), iv(&[1, 2, 0, 0]));
        assert_eq!(b.len(), 3);
    }
}
