//! The coordinate box `Π(m)`, the polytopes `Q^f(m)`, `P^f(m)`, `Q^h(m)`, and
//! the number of face systems behind each lattice point.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::{binom, binom_u64, sign};
use crate::error::{check_m, Error, Result};
use crate::linalg::{build_matrix, ExactMatrix, MatrixName};
use crate::report::CheckReport;
use crate::vector::IntVector;

/// Componentwise upper bounds `b_0, ..., b_m` of a lattice box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundsVector(pub Vec<u64>);

impl BoundsVector {
    /// `(C(m,0), ..., C(m,m))`.
    pub fn binomial(m: usize) -> Self {
        Self((0..=m).map(|k| binom_u64(m as i64, k as i64)).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// Whether the box fits inside the binomial box of its own dimension.
    pub fn within_binomial(&self) -> bool {
        let m = self.m();
        self.0
            .iter()
            .enumerate()
            .all(|(k, &b)| b <= binom_u64(m as i64, k as i64))
    }

    /// The box with an extra coordinate appended.
    pub fn extended(&self, last: u64) -> Self {
        let mut v = self.0.clone();
        v.push(last);
        Self(v)
    }
}

impl fmt::Display for BoundsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolytopeLabel {
    Qf,
    Pf,
    Qh,
    Pi,
}

impl std::str::FromStr for PolytopeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qf" => Ok(Self::Qf),
            "pf" => Ok(Self::Pf),
            "qh" => Ok(Self::Qh),
            "pi" => Ok(Self::Pi),
            _ => Err(Error::InvalidInput(format!("unknown polytope '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeHandle {
    pub label: PolytopeLabel,
    pub m: usize,
    pub bounds: BoundsVector,
}

impl PolytopeHandle {
    /// Handle with the default binomial box. `P^f(m)` exists only for even `m`.
    pub fn new(label: PolytopeLabel, m: usize) -> Result<Self> {
        Self::with_bounds(label, m, BoundsVector::binomial(m))
    }

    pub fn with_bounds(label: PolytopeLabel, m: usize, bounds: BoundsVector) -> Result<Self> {
        check_m(m)?;
        if bounds.len() != m + 1 {
            return Err(Error::DimensionMismatch {
                expected: m + 1,
                got: bounds.len(),
            });
        }
        if label == PolytopeLabel::Pf && m % 2 == 1 {
            return Err(Error::Parity(format!("P^f(m) requires even m, got {m}")));
        }
        Ok(Self { label, m, bounds })
    }
}

fn in_box(x: &[BigRational], bounds: &BoundsVector) -> bool {
    x.iter()
        .zip(&bounds.0)
        .all(|(v, &b)| !v.is_negative() && *v <= BigRational::from_integer(BigInt::from(b)))
}

/// Exact membership test.
pub fn contains(p: &PolytopeHandle, x: &[BigRational]) -> Result<bool> {
    let m = p.m;
    if x.len() != m + 1 {
        return Err(Error::DimensionMismatch {
            expected: m + 1,
            got: x.len(),
        });
    }
    match p.label {
        PolytopeLabel::Pi => Ok(in_box(x, &p.bounds)),
        PolytopeLabel::Qf => Ok(in_box(x, &p.bounds) && is_fixed(x, MatrixName::D, m)?),
        PolytopeLabel::Pf => Ok(x[0].is_zero() && in_box(x, &p.bounds) && is_fixed(x, MatrixName::D, m)?),
        PolytopeLabel::Qh => {
            let z = build_matrix(MatrixName::SInv, m)?.left_apply(x)?;
            let via_f = in_box(&z, &p.bounds) && is_fixed(&z, MatrixName::D, m)?;
            debug_assert!(!via_f || is_fixed(x, MatrixName::U, m)?);
            Ok(via_f)
        }
    }
}

pub fn contains_int(p: &PolytopeHandle, x: &IntVector) -> Result<bool> {
    contains(p, &x.to_rational())
}

fn is_fixed(x: &[BigRational], name: MatrixName, m: usize) -> Result<bool> {
    Ok(build_matrix(name, m)?.left_apply(x)? == x)
}

/// Number of face systems in `2^[m]` with long f-vector `z`:
/// `∏_k C(C(m,k), z_k)`.
pub fn multiplicity(z: &IntVector, m: usize) -> Result<BigInt> {
    if z.len() != m + 1 {
        return Err(Error::DimensionMismatch {
            expected: m + 1,
            got: z.len(),
        });
    }
    let mut prod = BigInt::one();
    for (k, zk) in z.0.iter().enumerate() {
        let cap = binom(m as i64, k as i64);
        if zk.is_negative() || *zk > cap {
            return Err(Error::InvalidInput(format!("z_{k} = {zk} outside [0, {cap}]")));
        }
        let zk = i64::try_from(zk).expect("bounded by a binomial coefficient");
        let Ok(n) = i64::try_from(&cap) else {
            return Err(Error::Overflow(format!("C({m},{k}) exceeds 64 bits")));
        };
        prod *= binom(n, zk);
    }
    Ok(prod)
}

/// `Q^f(m)` is the prism `P^f(m) ⊞ [0, σ(0)]`: every lattice point of `P^f`
/// lifts to exactly two points of `Q^f` differing in `z_0`, and nothing else.
pub fn prism_check(m: usize, qf_points: &[IntVector], pf_points: &[IntVector]) -> Result<CheckReport> {
    check_m(m)?;
    if m % 2 == 1 {
        return Err(Error::Parity(format!("prism decomposition requires even m, got {m}")));
    }
    let mut r = CheckReport::new("prism", m);
    let qf: BTreeSet<&IntVector> = qf_points.iter().collect();
    let mut lifted = BTreeSet::new();
    for (idx, b) in pf_points.iter().enumerate() {
        let idx = [("point", idx as i64)];
        r.check(&format!("z_0 of P^f point {b}"), &idx, BigInt::zero(), b[0].clone());
        let mut top = b.clone();
        top.0[0] = BigInt::one();
        r.check_true(&format!("{b} in Q^f"), &idx, qf.contains(b));
        r.check_true(&format!("{top} in Q^f"), &idx, qf.contains(&top));
        lifted.insert(b.clone());
        lifted.insert(top);
    }
    r.check(
        "|Q^f| = 2 |P^f|",
        &[],
        2 * pf_points.len(),
        qf_points.len(),
    );
    let stray: Vec<String> = qf.iter().filter(|z| !lifted.contains(**z)).map(|z| z.to_string()).collect();
    r.check("Q^f points outside the lifted base", &[], String::new(), stray.join(" "));
    Ok(r)
}

/// `z D(m) = z` and its expanded form `f_l = (-1)^m Σ_i (-1)^i C(i,l) f_i`.
pub fn fixedness_check(m: usize, qf_points: &[IntVector]) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("fixedness", m);
    let d = build_matrix(MatrixName::D, m)?;
    for (idx, z) in qf_points.iter().enumerate() {
        r.check(
            &format!("{z} D = {z}"),
            &[("point", idx as i64)],
            ExactRowsDisplay(&z.to_rational()).to_string(),
            ExactRowsDisplay(&z.times(&d)?).to_string(),
        );
        for l in 0..=m {
            let rhs: BigInt = (0..=m)
                .map(|i| sign((m + i) as i64) * binom(i as i64, l as i64) * &z[i])
                .sum();
            r.check(
                "expanded fixed-point relation",
                &[("point", idx as i64), ("l", l as i64)],
                z[l].clone(),
                rhs,
            );
        }
    }
    Ok(r)
}

struct ExactRowsDisplay<'a>(&'a [BigRational]);

impl fmt::Display for ExactRowsDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `S(m)` carries the lattice points of `Q^f(m)` bijectively onto those of
/// `Q^h(m)`; images are fixed by `U(m)` and palindromic.
pub fn sm_bijection_check(m: usize, qf_points: &[IntVector]) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("s_bijection", m);
    let s = build_matrix(MatrixName::S, m)?;
    let u = build_matrix(MatrixName::U, m)?;
    let qh = PolytopeHandle::new(PolytopeLabel::Qh, m)?;
    let mut images = BTreeSet::new();
    for (idx, z) in qf_points.iter().enumerate() {
        let idx = [("point", idx as i64)];
        let Some(h) = z.times_int(&s)? else {
            r.check_true(&format!("{z} S integral"), &idx, false);
            continue;
        };
        r.check_true(&format!("{h} in Q^h"), &idx, contains_int(&qh, &h)?);
        let hr = h.to_rational();
        r.check(
            &format!("{h} U = {h}"),
            &idx,
            ExactRowsDisplay(&hr).to_string(),
            ExactRowsDisplay(&h.times(&u)?).to_string(),
        );
        r.check_true(&format!("{h} palindromic"), &idx, palindromic(&h));
        images.insert(h);
    }
    r.check("distinct images", &[], qf_points.len(), images.len());
    Ok(r)
}

/// `x_{k-1} = x_{m-k+1}` for `1 <= k <= ⌊(m+1)/2⌋`.
pub fn palindromic(x: &IntVector) -> bool {
    let m = x.len() - 1;
    (1..=(m + 1) / 2).all(|k| x[k - 1] == x[m - k + 1])
}

/// Dimension counts of the fixed space of `U(m)`: the kernel of `I - U` has
/// dimension `⌈(m+1)/2⌉`, the palindromic relations have rank
/// `⌊(m+1)/2⌋`, and the first `⌊(m+1)/2⌋` columns of `I - U` already span
/// its column space (so they cut out the same solution set).
pub fn qh_structure_check(m: usize) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("qh_structure", m);
    let n = m + 1;
    let a = ExactMatrix::identity(n).sub(&build_matrix(MatrixName::U, m)?)?;
    r.check("dim ker(I-U)", &[], n.div_ceil(2), a.left_kernel_dim());
    r.check("rank(I-U)", &[], n / 2, a.rank());
    let relations: Vec<Vec<BigInt>> = (1..=n / 2)
        .map(|k| {
            let mut row = vec![BigInt::zero(); n];
            row[k - 1] += 1;
            row[m - k + 1] -= 1;
            row
        })
        .collect();
    r.check(
        "rank of palindromic relations",
        &[],
        n / 2,
        crate::linalg::rank_of_int_rows(&relations),
    );
    let head = a.leading_columns(n / 2);
    r.check("rank of leading columns of I-U", &[], a.rank(), head.rank());
    Ok(r)
}

/// Membership of each point (and each unit perturbation of it) in the
/// solution set of `x (I - U) = 0` agrees with the reduced system using only
/// the first `⌊(m+1)/2⌋` columns.
pub fn substitution_check(m: usize, points: &[IntVector]) -> Result<CheckReport> {
    check_m(m)?;
    let mut r = CheckReport::new("substitution", m);
    let n = m + 1;
    let a = ExactMatrix::identity(n).sub(&build_matrix(MatrixName::U, m)?)?;
    let head = a.leading_columns(n / 2);
    let solves = |mat: &ExactMatrix, x: &IntVector| -> Result<bool> {
        Ok(x.times(mat)?.iter().all(Zero::is_zero))
    };
    for (idx, p) in points.iter().enumerate() {
        let mut probes = vec![p.clone()];
        for k in 0..n {
            let mut q = p.clone();
            q.0[k] += 1;
            probes.push(q);
        }
        for q in probes {
            r.check(
                &format!("reduced vs full membership of {q}"),
                &[("point", idx as i64)],
                solves(&a, &q)?,
                solves(&head, &q)?,
            );
        }
    }
    Ok(r)
}

/// Vertices of `Π(m)` as bitmasks over coordinates.
fn box_vertex(mask: u64, bounds: &BoundsVector) -> Vec<BigRational> {
    bounds
        .0
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            if mask >> k & 1 == 1 {
                BigRational::from_integer(BigInt::from(b))
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// An explicit convex combination of vertices of the box equal to `x`, built
/// from the staircase of the normalized coordinates. `None` when `x` is
/// outside the box.
pub fn convex_certificate(x: &[BigRational], bounds: &BoundsVector) -> Option<Vec<(u64, BigRational)>> {
    if x.len() != bounds.len() || !in_box(x, bounds) {
        return None;
    }
    let t: Vec<BigRational> = x
        .iter()
        .zip(&bounds.0)
        .map(|(v, &b)| {
            if b == 0 {
                BigRational::zero()
            } else {
                v / BigRational::from_integer(BigInt::from(b))
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| t[b].cmp(&t[a]));
    let mut out = Vec::new();
    let mut mask = 0u64;
    let mut prev = BigRational::one();
    for &k in &order {
        let w = &prev - &t[k];
        if !w.is_zero() {
            out.push((mask, w));
        }
        mask |= 1 << k;
        prev = t[k].clone();
    }
    if !prev.is_zero() {
        out.push((mask, prev));
    }
    Some(out)
}

/// Checks a certificate: nonnegative weights summing to one whose weighted
/// vertex sum is exactly `x`.
pub fn certificate_is_valid(x: &[BigRational], bounds: &BoundsVector, cert: &[(u64, BigRational)]) -> bool {
    let mut total = BigRational::zero();
    let mut acc = vec![BigRational::zero(); x.len()];
    for (mask, w) in cert {
        if w.is_negative() {
            return false;
        }
        total += w;
        for (a, v) in acc.iter_mut().zip(box_vertex(*mask, bounds)) {
            *a += w * v;
        }
    }
    total.is_one() && acc == x
}

/// A coordinate functional `±x_k` whose value at `x` exceeds its maximum over
/// every vertex of the box, found by scanning all vertices.
pub fn separating_coordinate(x: &[BigRational], bounds: &BoundsVector) -> Option<(usize, i8)> {
    let n = bounds.len();
    let vertices: Vec<Vec<BigRational>> = (0..1u64 << n).map(|mask| box_vertex(mask, bounds)).collect();
    for k in 0..n {
        for s in [1i8, -1] {
            let val = |v: &[BigRational]| if s > 0 { v[k].clone() } else { -v[k].clone() };
            let best = vertices.iter().map(|v| val(v)).max().expect("nonempty");
            if val(x) > best {
                return Some((k, s));
            }
        }
    }
    None
}

/// Box membership agrees with the convex-hull description of `Π(m)` on the
/// given probe points: inside points carry a valid convex combination,
/// outside points a separating coordinate functional.
pub fn box_hull_check(m: usize, probes: &[Vec<BigRational>]) -> Result<CheckReport> {
    check_m(m)?;
    if m > 4 {
        return Err(Error::ScanTooLarge {
            what: format!("vertex scan of Π({m})"),
            estimate: format!("2^{} vertices per probe", m + 1),
            cap: "m <= 4".into(),
        });
    }
    let mut r = CheckReport::new("box_hull", m);
    let pi = PolytopeHandle::new(PolytopeLabel::Pi, m)?;
    for (idx, x) in probes.iter().enumerate() {
        let idx = [("probe", idx as i64)];
        let inside = contains(&pi, x)?;
        let item = format!("probe {}", ExactRowsDisplay(x));
        if inside {
            let ok = convex_certificate(x, &pi.bounds).is_some_and(|c| certificate_is_valid(x, &pi.bounds, &c));
            r.check_true(&format!("{item} has a convex combination"), &idx, ok);
        } else {
            r.check_true(
                &format!("{item} is separated from every vertex"),
                &idx,
                separating_coordinate(x, &pi.bounds).is_some(),
            );
        }
    }
    Ok(r)
}

/// Deterministic probe set for [`box_hull_check`]: every vector whose
/// coordinates are drawn from `{-1/2, 0, 1/3, b_k, b_k + 1/2}`.
pub fn box_hull_probes(m: usize) -> Vec<Vec<BigRational>> {
    let bounds = BoundsVector::binomial(m);
    let choices: Vec<Vec<BigRational>> = bounds
        .0
        .iter()
        .map(|&b| {
            let b = BigRational::from_integer(BigInt::from(b));
            let half = BigRational::new(1.into(), 2.into());
            vec![
                -half.clone(),
                BigRational::zero(),
                BigRational::new(1.into(), 3.into()),
                b.clone(),
                b + half,
            ]
        })
        .collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|p| {
                c.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// All lattice points of `Q^h(m)` by direct search over palindromic integer
/// vectors in the bounding box of `S_m(Π(m))`, each tested by membership.
pub fn qh_lattice_bruteforce(m: usize) -> Result<Vec<IntVector>> {
    check_m(m)?;
    if m > 4 {
        return Err(Error::ScanTooLarge {
            what: format!("direct Q^h({m}) lattice scan"),
            estimate: "exponential in the bounding box of S(Π)".into(),
            cap: "m <= 4".into(),
        });
    }
    let s = build_matrix(MatrixName::S, m)?;
    let bounds = BoundsVector::binomial(m);
    // Bounding box: the extremes of Σ a_k b_k S[k][j] over a in {0,1}^(m+1).
    let ranges: Vec<(i64, i64)> = (0..=m)
        .map(|j| {
            let (mut lo, mut hi) = (0i64, 0i64);
            for k in 0..=m {
                let e = crate::linalg::rat_to_i64(s.get(k, j)).expect("integral") * bounds.0[k] as i64;
                if e < 0 {
                    lo += e;
                } else {
                    hi += e;
                }
            }
            (lo, hi)
        })
        .collect();
    let free = (m + 2) / 2;
    let qh = PolytopeHandle::new(PolytopeLabel::Qh, m)?;
    let mut out = Vec::new();
    let mut cur = vec![0i64; free];
    fn rec(
        d: usize,
        m: usize,
        ranges: &[(i64, i64)],
        cur: &mut Vec<i64>,
        qh: &PolytopeHandle,
        out: &mut Vec<IntVector>,
    ) -> Result<()> {
        if d == cur.len() {
            let x: Vec<i64> = (0..=m).map(|j| cur[j.min(m - j)]).collect();
            let x = IntVector::from_i64(&x);
            if contains_int(qh, &x)? {
                out.push(x);
            }
            return Ok(());
        }
        let (lo, hi) = (ranges[d].0.max(ranges[m - d].0), ranges[d].1.min(ranges[m - d].1));
        for v in lo..=hi {
            cur[d] = v;
            rec(d + 1, m, ranges, cur, qh, out)?;
        }
        Ok(())
    }
    rec(0, m, &ranges, &mut cur, &qh, &mut out)?;
    out.sort();
    Ok(out)
}

/// Images of lattice points under `z ↦ z S(m)`.
pub fn push_to_h(m: usize, points: &[IntVector]) -> Result<Vec<IntVector>> {
    let s = build_matrix(MatrixName::S, m)?;
    let mut out = points
        .iter()
        .map(|z| z.times_int(&s).map(|h| h.expect("S is integral")))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_to_rat;

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    fn rat_vec(x: &[i64]) -> Vec<BigRational> {
        x.iter().map(|&v| int_to_rat(&BigInt::from(v))).collect()
    }

    #[test]
    fn membership_examples() {
        let qf = PolytopeHandle::new(PolytopeLabel::Qf, 2).unwrap();
        let qh = PolytopeHandle::new(PolytopeLabel::Qh, 2).unwrap();
        assert!(contains(&qf, &rat_vec(&[1, 1, 1])).unwrap());
        assert!(!contains(&qf, &rat_vec(&[0, 1, 0])).unwrap());
        assert!(contains(&qh, &rat_vec(&[1, -1, 1])).unwrap());
        assert!(contains(&qh, &rat_vec(&[1, -2, 1])).unwrap());
        assert!(!contains(&qh, &rat_vec(&[1, 0, -1])).unwrap());
        let pf = PolytopeHandle::new(PolytopeLabel::Pf, 2).unwrap();
        assert!(contains(&pf, &rat_vec(&[0, 1, 1])).unwrap());
        assert!(!contains(&pf, &rat_vec(&[1, 1, 1])).unwrap());
        assert!(PolytopeHandle::new(PolytopeLabel::Pf, 3).is_err());
        assert!(contains(&qf, &rat_vec(&[1, 1])).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&iv(&[0, 1, 1]), 2).unwrap(), BigInt::from(2));
        assert_eq!(multiplicity(&iv(&[1, 2, 0, 0]), 3).unwrap(), BigInt::from(3));
        assert_eq!(multiplicity(&iv(&[0, 0, 0]), 2).unwrap(), BigInt::from(1));
        assert!(multiplicity(&iv(&[0, 3, 0]), 2).is_err());
        assert!(multiplicity(&iv(&[0, -1, 0]), 2).is_err());
    }

    #[test]
    fn prism_m2() {
        let qf = vec![iv(&[0, 0, 0]), iv(&[0, 1, 1]), iv(&[1, 0, 0]), iv(&[1, 1, 1])];
        let pf = vec![iv(&[0, 0, 0]), iv(&[0, 1, 1])];
        assert!(prism_check(2, &qf, &pf).unwrap().passed());
        assert!(!prism_check(2, &qf[..3], &pf).unwrap().passed());
        assert!(prism_check(3, &qf, &pf).is_err());
    }

    #[test]
    fn qh_brute_force_m2() {
        let got = qh_lattice_bruteforce(2).unwrap();
        let want = vec![iv(&[0, 0, 0]), iv(&[0, 1, 0]), iv(&[1, -2, 1]), iv(&[1, -1, 1])];
        assert_eq!(got, want);
        let qf = vec![iv(&[0, 0, 0]), iv(&[0, 1, 1]), iv(&[1, 0, 0]), iv(&[1, 1, 1])];
        assert_eq!(push_to_h(2, &qf).unwrap(), want);
    }

    #[test]
    fn structure_small() {
        for m in 2..=8 {
            assert!(qh_structure_check(m).unwrap().passed(), "m={m}");
        }
    }

    #[test]
    fn box_hull_small() {
        for m in 2..=3 {
            let r = box_hull_check(m, &box_hull_probes(m)).unwrap();
            assert!(r.passed(), "{:?}", r.failures.first());
        }
        assert!(box_hull_check(5, &[]).is_err());
    }

    #[test]
    fn certificate_rejects_outside() {
        let b = BoundsVector::binomial(2);
        assert!(convex_certificate(&rat_vec(&[0, 3, 0]), &b).is_none());
        assert_eq!(separating_coordinate(&rat_vec(&[0, 3, 0]), &b), Some((1, 1)));
        assert_eq!(separating_coordinate(&rat_vec(&[0, 1, 0]), &b), None);
    }
}
