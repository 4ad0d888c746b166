//! Lattice points of the boxed eigen-system `x (I - D(m)) = 0, 0 <= x <= b`,
//! DS long f-vectors by parity class, the Table-4 counts, the
//! generating-function identities, and two brute-force oracles.
//!
//! The engine works in native `i64`. Column `j` of `I - D(m)` with `m - j`
//! odd has diagonal entry 2 and forces
//! `2 x_j = Σ_{i>j} (-1)^(m-i) C(i,j) x_i`; the remaining coordinates are
//! free. The search assigns `x_m, x_{m-1}, ..., x_0` in that order, keeping
//! running column sums, and for each free `x_i` solves directly for the
//! range of values that keeps the forced `x_{i-1}` integral and in its box.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::binom::{binom, binom_u64};
use crate::error::{check_m, Error, Result};
use crate::faces::{is_ds, long_f, Face, FaceSystem};
use crate::polytopes::BoundsVector;
use crate::report::CheckReport;
use crate::vector::IntVector;

/// Values printed in the published table: `(m, col1, col2, col3)`.
pub const REFERENCE_TABLE4: [(usize, u64, u64, u64); 9] = [
    (2, 3, 1, 5),
    (3, 1, 7, 9),
    (4, 19, 5, 25),
    (5, 7, 71, 79),
    (6, 291, 41, 333),
    (7, 103, 2223, 2327),
    (8, 17465, 1107, 18573),
    (9, 4905, 271619, 276525),
    (10, 3959091, 103057, 4062149),
];

pub fn reference_table4(m: usize) -> Option<Table4Row> {
    REFERENCE_TABLE4
        .iter()
        .find(|r| r.0 == m)
        .map(|&(m, col1, col2, col3)| Table4Row { m, col1, col2, col3 })
}

/// Largest `m` accepted by [`oracle_box`].
pub const ORACLE_BOX_MAX_M: usize = 7;
/// Largest `m` accepted by [`oracle_powerset`].
pub const ORACLE_POWERSET_MAX_M: usize = 4;
/// Default cap for [`total_ds_count`] and [`genfun_identity_check`].
pub const TOTAL_COUNT_MAX_M: usize = 8;

/// Which DS f-vectors of `2^[m]` to produce: those whose size has the parity
/// of `m`, the opposite parity, or all of them (including the zero vector
/// of the empty system).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    Matching,
    Opposite,
    All,
}

impl std::str::FromStr for ParityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matching" => Ok(Self::Matching),
            "opposite" => Ok(Self::Opposite),
            "all" => Ok(Self::All),
            _ => Err(Error::InvalidInput(format!("unknown parity class '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table4Row {
    pub m: usize,
    pub col1: u64,
    pub col2: u64,
    pub col3: u64,
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Number of worker threads; 1 runs on the calling thread.
    pub workers: usize,
    /// Skip materializing points.
    pub count_only: bool,
    /// Accumulate `Σ ∏_k C(C(m,k), z_k)` over the emitted points.
    pub multiplicities: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            count_only: false,
            multiplicities: false,
        }
    }
}

/// Points of equal dimension stored contiguously, sorted lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointList {
    dim: usize,
    data: Vec<i64>,
}

impl PointList {
    pub fn new(dim: usize) -> Self {
        Self { dim, data: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.data.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks_exact(self.dim.max(1))
    }

    pub fn push(&mut self, p: &[i64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.data.extend_from_slice(p);
    }

    fn append(&mut self, other: PointList) {
        self.data.extend(other.data);
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        let n = self.len();
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Sorts lexicographically and removes duplicates.
    pub fn sort(&mut self) {
        let n = self.len();
        let mut idx: Vec<u32> = (0..n as u32).collect();
        idx.sort_unstable_by(|&a, &b| self.get(a as usize).cmp(self.get(b as usize)));
        let mut data = Vec::with_capacity(self.data.len());
        let mut last: Option<u32> = None;
        for i in idx {
            if last.is_some_and(|l| self.get(l as usize) == self.get(i as usize)) {
                continue;
            }
            data.extend_from_slice(self.get(i as usize));
            last = Some(i);
        }
        self.data = data;
    }

    pub fn to_vectors(&self) -> Vec<IntVector> {
        self.iter().map(IntVector::from_i64).collect()
    }

    pub fn to_vecs(&self) -> Vec<Vec<i64>> {
        self.iter().map(<[i64]>::to_vec).collect()
    }
}

impl Serialize for PointList {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

fn serialize_opt_bigint<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_bigint_string(v, s),
        None => s.serialize_none(),
    }
}

fn serialize_bigint_string<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_class: Option<ParityClass>,
    pub bounds: BoundsVector,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<PointList>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Table4Row>,
    /// Number of face systems behind the emitted points (decimal string).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_bigint")]
    pub total_multiplicity: Option<BigInt>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// The search over `{x ∈ Z^(m+1) : x (I - D(m)) = 0, 0 <= x <= b}`.
pub struct Engine {
    m: usize,
    bounds: Vec<i64>,
    /// Row-major `(-1)^(m-i) C(i,j)`.
    coef: Vec<i64>,
}

/// A partially assigned search state: coordinates above `level` are set.
struct Prefix {
    level: usize,
    x: Vec<i64>,
    row: Vec<i64>,
}

impl Engine {
    pub fn new(m: usize, bounds: &BoundsVector) -> Result<Self> {
        check_m(m)?;
        if bounds.len() != m + 1 {
            return Err(Error::DimensionMismatch {
                expected: m + 1,
                got: bounds.len(),
            });
        }
        let w = m + 1;
        // Running column sums are bounded by Σ_i b_i C(i,j); keep them well
        // inside i64 so that no intermediate can overflow.
        for j in 0..w {
            let worst: u128 = (j..w)
                .map(|i| bounds.0[i] as u128 * binom_u64(i as i64, j as i64) as u128)
                .sum();
            if worst > (i64::MAX / 4) as u128 {
                return Err(Error::Overflow(format!(
                    "column {j} sums may reach {worst}, beyond 64-bit search arithmetic"
                )));
            }
        }
        let mut coef = vec![0i64; w * w];
        for i in 0..w {
            for j in 0..=i {
                let c = binom_u64(i as i64, j as i64) as i64;
                coef[i * w + j] = if (m - i) % 2 == 0 { c } else { -c };
            }
        }
        Ok(Self {
            m,
            bounds: bounds.0.iter().map(|&b| b as i64).collect(),
            coef,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Admissible values of `x_i` given the running sums `row` (entry `j` is
    /// `Σ_{t>i} coef[t][j] x_t`), as `(first, last, step)`; empty when
    /// `first > last`.
    #[inline]
    fn choices(&self, i: usize, row: &[i64]) -> (i64, i64, i64) {
        const NONE: (i64, i64, i64) = (1, 0, 1);
        let b = self.bounds[i];
        if (self.m - i) % 2 == 1 {
            let s = row[i];
            if s < 0 || s % 2 != 0 || s > 2 * b {
                return NONE;
            }
            return (s / 2, s / 2, 1);
        }
        // Column i carries no diagonal term: its relation must already hold.
        if row[i] != 0 {
            return NONE;
        }
        if i == 0 {
            return (0, b, 1);
        }
        // x_{i-1} is forced to (a + i v) / 2 with a the running sum.
        let a = row[i - 1];
        let c = i as i64;
        let cap = 2 * self.bounds[i - 1];
        let mut lo = (-a).div_euclid(c) + i64::from((-a).rem_euclid(c) != 0);
        lo = lo.max(0);
        let hi = ((cap - a).div_euclid(c)).min(b);
        if c % 2 == 0 {
            if a.rem_euclid(2) != 0 {
                return NONE;
            }
            (lo, hi, 1)
        } else {
            if (lo - a).rem_euclid(2) != 0 {
                lo += 1;
            }
            (lo, hi, 2)
        }
    }

    fn rec<V: FnMut(&[i64])>(&self, i: usize, x: &mut [i64], acc: &mut [i64], visit: &mut V) {
        let w = self.m + 1;
        let (lower, upper) = acc.split_at_mut(i * w);
        let row = &upper[..w];
        let (first, last, step) = self.choices(i, row);
        let mut v = first;
        while v <= last {
            x[i] = v;
            if i == 0 {
                visit(x);
            } else {
                let next = &mut lower[(i - 1) * w..i * w];
                let c = &self.coef[i * w..i * w + i];
                for j in 0..i {
                    next[j] = row[j] + v * c[j];
                }
                self.rec(i - 1, x, lower, visit);
            }
            v += step;
        }
    }

    fn collect_prefixes(&self, i: usize, stop: usize, x: &mut [i64], acc: &mut [i64], out: &mut Vec<Prefix>) {
        let w = self.m + 1;
        if i == stop {
            out.push(Prefix {
                level: i,
                x: x.to_vec(),
                row: acc[i * w..(i + 1) * w].to_vec(),
            });
            return;
        }
        let (lower, upper) = acc.split_at_mut(i * w);
        let row = &upper[..w];
        let (first, last, step) = self.choices(i, row);
        let mut v = first;
        while v <= last {
            x[i] = v;
            let next = &mut lower[(i - 1) * w..i * w];
            let c = &self.coef[i * w..i * w + i];
            for j in 0..i {
                next[j] = row[j] + v * c[j];
            }
            self.collect_prefixes(i - 1, stop, x, lower, out);
            v += step;
        }
    }

    fn run_prefix<V: FnMut(&[i64])>(&self, p: &Prefix, visit: &mut V) {
        let w = self.m + 1;
        let mut x = p.x.clone();
        let mut acc = vec![0i64; w * (p.level + 1)];
        acc[p.level * w..].copy_from_slice(&p.row);
        self.rec(p.level, &mut x, &mut acc, visit);
    }

    /// Calls `visit` on every solution, in search order.
    pub fn for_each<V: FnMut(&[i64])>(&self, mut visit: V) {
        let w = self.m + 1;
        let mut x = vec![0i64; w];
        let mut acc = vec![0i64; w * w];
        self.rec(self.m, &mut x, &mut acc, &mut visit);
    }

    /// Splits the search into independent subtrees and folds each on a pool
    /// of `workers` threads. Returns one accumulator per subtree, in a fixed
    /// order that does not depend on scheduling.
    pub fn fold<T, I, F>(&self, workers: usize, init: I, fold: F) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        F: Fn(&mut T, &[i64]) + Sync,
    {
        if workers <= 1 {
            let mut t = init();
            self.for_each(|x| fold(&mut t, x));
            return vec![t];
        }
        let prefixes = self.split(16 * workers);
        let slots: Vec<Mutex<Option<T>>> = prefixes.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= prefixes.len() {
                        break;
                    }
                    let mut t = init();
                    self.run_prefix(&prefixes[k], &mut |x| fold(&mut t, x));
                    *slots[k].lock().expect("worker panicked") = Some(t);
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().expect("worker panicked").expect("every subtree is visited"))
            .collect()
    }

    /// The shallowest level with at least `target` subtrees (or level 0).
    fn split(&self, target: usize) -> Vec<Prefix> {
        let w = self.m + 1;
        let mut best = Vec::new();
        for stop in (0..=self.m).rev() {
            let mut x = vec![0i64; w];
            let mut acc = vec![0i64; w * w];
            let mut out = Vec::new();
            self.collect_prefixes(self.m, stop, &mut x, &mut acc, &mut out);
            best = out;
            if best.len() >= target {
                break;
            }
        }
        best
    }
}

/// Index of the largest nonzero coordinate.
fn size_of(x: &[i64]) -> Option<usize> {
    x.iter().rposition(|&v| v != 0)
}

/// Per-subtree accumulator.
struct Acc {
    count: u64,
    zero_seen: bool,
    points: Option<PointList>,
    multiplicity: Option<BigInt>,
    parity_violation: Option<Vec<i64>>,
}

/// Table `C(C(m,k), z)` for every `k` and admissible `z`.
fn multiplicity_table(m: usize, bounds: &[i64]) -> Vec<Vec<BigInt>> {
    (0..=m)
        .map(|k| {
            let n = binom_u64(m as i64, k as i64) as i64;
            (0..=bounds.get(k).copied().unwrap_or(0).min(n))
                .map(|z| binom(n, z))
                .collect()
        })
        .collect()
}

/// Runs the engine. `keep` is the number of leading coordinates reported
/// (dropping trailing coordinates forced to zero by the bounds);
/// `size_parity` asks for every nonzero point to have a size of that
/// parity; `mult_m` selects the ground set for multiplicities.
fn run(
    engine: &Engine,
    keep: usize,
    opts: &EnumOptions,
    size_parity: Option<usize>,
    mult_m: usize,
) -> Acc {
    let table = opts
        .multiplicities
        .then(|| multiplicity_table(mult_m, &engine.bounds));
    let table = table.as_ref();
    let parts = engine.fold(
        opts.workers,
        || Acc {
            count: 0,
            zero_seen: false,
            points: (!opts.count_only).then(|| PointList::new(keep)),
            multiplicity: opts.multiplicities.then(BigInt::zero),
            parity_violation: None,
        },
        |acc, x| {
            debug_assert!(x[keep..].iter().all(|&v| v == 0));
            let p = &x[..keep];
            let Some(size) = size_of(p) else {
                acc.zero_seen = true;
                return;
            };
            if size_parity.is_some_and(|par| size % 2 != par) && acc.parity_violation.is_none() {
                acc.parity_violation = Some(p.to_vec());
            }
            acc.count += 1;
            if let Some(pts) = acc.points.as_mut() {
                pts.push(p);
            }
            if let (Some(total), Some(t)) = (acc.multiplicity.as_mut(), table) {
                let mut prod = BigInt::one();
                for (k, &z) in p.iter().enumerate() {
                    if z != 0 {
                        prod *= &t[k][z as usize];
                    }
                }
                *total += prod;
            }
        },
    );
    let mut out = Acc {
        count: 0,
        zero_seen: false,
        points: (!opts.count_only).then(|| PointList::new(keep)),
        multiplicity: opts.multiplicities.then(BigInt::zero),
        parity_violation: None,
    };
    for part in parts {
        out.count += part.count;
        out.zero_seen |= part.zero_seen;
        if let (Some(all), Some(p)) = (out.points.as_mut(), part.points) {
            all.append(p);
        }
        if let (Some(all), Some(p)) = (out.multiplicity.as_mut(), part.multiplicity) {
            *all += p;
        }
        if out.parity_violation.is_none() {
            out.parity_violation = part.parity_violation;
        }
    }
    if let Some(p) = out.points.as_mut() {
        p.sort();
    }
    out
}

/// All lattice points of `{x : x (I - D(m)) = 0, 0 <= x <= b}`, the zero
/// vector included.
pub fn enumerate_eigen_lattice(m: usize, bounds: &BoundsVector, opts: &EnumOptions) -> Result<EnumerationReport> {
    let start = Instant::now();
    let engine = Engine::new(m, bounds)?;
    let acc = run(&engine, m + 1, opts, None, m);
    let mut points = acc.points;
    if acc.zero_seen {
        if let Some(p) = points.as_mut() {
            p.push(&vec![0; m + 1]);
            p.sort();
        }
    }
    Ok(EnumerationReport {
        m,
        parity_class: None,
        bounds: bounds.clone(),
        count: acc.count + u64::from(acc.zero_seen),
        points,
        counts: None,
        // The zero vector contributes the empty system.
        total_multiplicity: acc.multiplicity.map(|t| t + u64::from(acc.zero_seen)),
        wall_time: start.elapsed(),
    })
}

/// Lattice points of `Q^f(m)` (binomial box), zero included.
pub fn qf_lattice(m: usize) -> Result<Vec<IntVector>> {
    let r = enumerate_eigen_lattice(m, &BoundsVector::binomial(m), &EnumOptions::default())?;
    Ok(r.points.expect("points requested").to_vectors())
}

/// Lattice points of `P^f(m)` (the `z_0 = 0` slice), zero included.
pub fn pf_lattice(m: usize) -> Result<Vec<IntVector>> {
    check_m(m)?;
    if m % 2 == 1 {
        return Err(Error::Parity(format!("P^f(m) requires even m, got {m}")));
    }
    let mut b = BoundsVector::binomial(m);
    b.0[0] = 0;
    let r = enumerate_eigen_lattice(m, &b, &EnumOptions::default())?;
    Ok(r.points.expect("points requested").to_vectors())
}

fn one_class(m: usize, class: ParityClass, opts: &EnumOptions) -> Result<Acc> {
    let acc = match class {
        ParityClass::Matching => {
            let engine = Engine::new(m, &BoundsVector::binomial(m))?;
            run(&engine, m + 1, opts, Some(m % 2), m)
        }
        ParityClass::Opposite => {
            let engine = Engine::new(m + 1, &BoundsVector::binomial(m).extended(0))?;
            run(&engine, m + 1, opts, Some((m + 1) % 2), m)
        }
        ParityClass::All => unreachable!("split by caller"),
    };
    if let Some(p) = &acc.parity_violation {
        return Err(Error::Parity(format!(
            "{p:?} emitted in the {class:?} class of m={m} has the wrong size parity"
        )));
    }
    Ok(acc)
}

/// Distinct nonzero long f-vectors of DS-systems in `2^[m]` whose size has
/// the parity of `m` (`Matching`), the other parity (`Opposite`), or every
/// DS long f-vector including zero (`All`, which also fills in the Table-4
/// counts).
///
/// Each emitted point's size parity is checked against its class, so the
/// two classes are disjoint by construction.
pub fn ds_fvectors(m: usize, class: ParityClass, opts: &EnumOptions) -> Result<EnumerationReport> {
    check_m(m)?;
    let start = Instant::now();
    let (count, points, counts, mult) = match class {
        ParityClass::Matching | ParityClass::Opposite => {
            let acc = one_class(m, class, opts)?;
            (acc.count, acc.points, None, acc.multiplicity)
        }
        ParityClass::All => {
            let a = one_class(m, ParityClass::Matching, opts)?;
            let b = one_class(m, ParityClass::Opposite, opts)?;
            let row = Table4Row {
                m,
                col1: a.count,
                col2: b.count,
                col3: a.count + b.count + 1,
            };
            let points = match (a.points, b.points) {
                (Some(mut pa), Some(pb)) => {
                    let before = pa.len() + pb.len() + 1;
                    pa.append(pb);
                    pa.push(&vec![0; m + 1]);
                    pa.sort();
                    if pa.len() != before {
                        return Err(Error::Parity(format!("parity classes of m={m} overlap")));
                    }
                    Some(pa)
                }
                _ => None,
            };
            let mult = match (a.multiplicity, b.multiplicity) {
                (Some(x), Some(y)) => Some(x + y + 1),
                _ => None,
            };
            (row.col3, points, Some(row), mult)
        }
    };
    let bounds = match class {
        ParityClass::Opposite => BoundsVector::binomial(m).extended(0),
        _ => BoundsVector::binomial(m),
    };
    Ok(EnumerationReport {
        m,
        parity_class: Some(class),
        bounds,
        count,
        points,
        counts,
        total_multiplicity: mult,
        wall_time: start.elapsed(),
    })
}

/// `(col1, col2, col3)` of Table 4 for `m`.
pub fn table4_row(m: usize, workers: usize) -> Result<Table4Row> {
    let opts = EnumOptions {
        workers,
        count_only: true,
        multiplicities: false,
    };
    let r = ds_fvectors(m, ParityClass::All, &opts)?;
    Ok(r.counts.expect("filled for the full class"))
}

/// Exact number of DS-systems (not f-vectors) in one parity class; the
/// empty system is counted only in `All`.
pub fn total_ds_count(m: usize, class: ParityClass) -> Result<BigInt> {
    total_ds_count_capped(m, class, TOTAL_COUNT_MAX_M)
}

pub fn total_ds_count_capped(m: usize, class: ParityClass, cap: usize) -> Result<BigInt> {
    if m > cap {
        return Err(Error::ScanTooLarge {
            what: format!("DS-system count for m={m}"),
            estimate: estimate_search(m),
            cap: format!("m <= {cap}"),
        });
    }
    let opts = EnumOptions {
        workers: 1,
        count_only: true,
        multiplicities: true,
    };
    Ok(ds_fvectors(m, class, &opts)?
        .total_multiplicity
        .expect("multiplicities requested"))
}

pub fn estimate_search(m: usize) -> String {
    let leaves: BigInt = (0..=m)
        .filter(|j| (m - j) % 2 == 0)
        .map(|j| binom(m as i64, j as i64) + 1)
        .product();
    format!("about {leaves} raw search leaves")
}

/// Per-class results of a brute-force oracle, each list sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleSets {
    pub m: usize,
    pub matching: Vec<Vec<i64>>,
    pub opposite: Vec<Vec<i64>>,
    /// Number of candidates examined.
    pub scanned: u64,
    /// Number of DS-systems per class (powerset oracle only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub systems: Option<(u64, u64)>,
}

/// `∏_k (C(m,k) + 1)`, the size of the binomial box.
pub fn box_size(m: usize) -> BigInt {
    (0..=m).map(|k| binom(m as i64, k as i64) + 1).product()
}

/// Every integer vector of the binomial box, tested with `h = f S(m)`
/// against the sign-twisted symmetry of its h-vector.
pub fn oracle_box(m: usize) -> Result<OracleSets> {
    check_m(m)?;
    if m > ORACLE_BOX_MAX_M {
        return Err(Error::ScanTooLarge {
            what: format!("box oracle for m={m}"),
            estimate: format!("{} candidate vectors", box_size(m)),
            cap: format!("m <= {ORACLE_BOX_MAX_M}"),
        });
    }
    let n = m + 1;
    let b: Vec<i64> = (0..n).map(|k| binom_u64(m as i64, k as i64) as i64).collect();
    // Rows of S(m): S[i][j] = (-1)^(j-i) C(m-i, j-i).
    let s: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j < i {
                        0
                    } else {
                        let c = binom_u64((m - i) as i64, (j - i) as i64) as i64;
                        if (j - i) % 2 == 0 { c } else { -c }
                    }
                })
                .collect()
        })
        .collect();
    let mut f = vec![0i64; n];
    let mut h = vec![0i64; n];
    let mut out = OracleSets {
        m,
        ..Default::default()
    };
    loop {
        out.scanned += 1;
        if let Some(size) = size_of(&f) {
            let twist = if (m - size) % 2 == 0 { 1 } else { -1 };
            if (0..=m / 2).all(|l| h[l] == twist * h[m - l]) {
                if size % 2 == m % 2 {
                    out.matching.push(f.clone());
                } else {
                    out.opposite.push(f.clone());
                }
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                out.matching.sort();
                out.opposite.sort();
                return Ok(out);
            }
            if f[k] < b[k] {
                f[k] += 1;
                for j in k..n {
                    h[j] += s[k][j];
                }
                break;
            }
            for j in k..n {
                h[j] -= b[k] * s[k][j];
            }
            f[k] = 0;
            k += 1;
        }
    }
}

/// Every face system `Φ ⊆ 2^[m]`, tested with the face-system DS predicate.
pub fn oracle_powerset(m: usize) -> Result<OracleSets> {
    check_m(m)?;
    if m > ORACLE_POWERSET_MAX_M {
        return Err(Error::ScanTooLarge {
            what: format!("powerset oracle for m={m}"),
            estimate: format!("2^{} face systems", 1u64 << m),
            cap: format!("m <= {ORACLE_POWERSET_MAX_M}"),
        });
    }
    let subsets = 1u64 << m;
    let mut matching = BTreeSet::new();
    let mut opposite = BTreeSet::new();
    let (mut sys_match, mut sys_opp) = (0u64, 0u64);
    let mut scanned = 0;
    for family in 0..1u64 << subsets {
        scanned += 1;
        let faces = (0..subsets).filter(|s| family >> s & 1 == 1).map(Face::from_mask);
        let phi = FaceSystem::from_faces(m, faces);
        if phi.is_empty() || !is_ds(&phi) {
            continue;
        }
        let size = phi.size().expect("nonempty");
        let f: Vec<i64> = long_f(&phi).to_i64().expect("small");
        if size % 2 == m % 2 {
            sys_match += 1;
            matching.insert(f);
        } else {
            sys_opp += 1;
            opposite.insert(f);
        }
    }
    Ok(OracleSets {
        m,
        matching: matching.into_iter().collect(),
        opposite: opposite.into_iter().collect(),
        scanned,
        systems: Some((sys_match, sys_opp)),
    })
}

/// Sparse polynomial `Σ c_α x^α` with integer coefficients.
type Monomials = BTreeMap<Vec<i64>, i64>;

fn add_term(p: &mut Monomials, alpha: Vec<i64>, c: i64) {
    let e = p.entry(alpha.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        p.remove(&alpha);
    }
}

fn eval(p: &Monomials, x: &[BigInt]) -> BigInt {
    p.iter()
        .map(|(alpha, c)| {
            alpha
                .iter()
                .zip(x)
                .fold(BigInt::from(*c), |acc, (&e, xi)| acc * num_traits::pow(xi.clone(), e as usize))
        })
        .sum()
}

/// Checks the generating function of distinct DS long f-vectors of `2^[m]`
/// against its decomposition into slices of `Q^f`/`P^f` in dimensions `m`
/// and `m + 1`. The left side comes from the box oracle (`m <= 7`) or from
/// the engine's two classes; the right side from separate lattice scans.
pub fn genfun_identity_check(m: usize) -> Result<CheckReport> {
    check_m(m)?;
    if m > TOTAL_COUNT_MAX_M {
        return Err(Error::ScanTooLarge {
            what: format!("generating-function identity for m={m}"),
            estimate: estimate_search(m + 1),
            cap: format!("m <= {TOTAL_COUNT_MAX_M}"),
        });
    }
    let mut r = CheckReport::new("genfun", m);
    let n = m + 1;
    let mut lhs = Monomials::new();
    lhs.insert(vec![0; n], 1);
    if m <= ORACLE_BOX_MAX_M {
        let o = oracle_box(m)?;
        for v in o.matching.into_iter().chain(o.opposite) {
            lhs.insert(v, 1);
        }
    } else {
        let all = ds_fvectors(m, ParityClass::All, &EnumOptions::default())?;
        for p in all.points.expect("points requested").iter() {
            lhs.insert(p.to_vec(), 1);
        }
    }

    let opts = EnumOptions::default();
    let scan = |mm: usize, b: BoundsVector| -> Result<PointList> {
        Ok(enumerate_eigen_lattice(mm, &b, &opts)?.points.expect("points requested"))
    };
    let binom_m = BoundsVector::binomial(m);
    let mut rhs = Monomials::new();
    add_term(&mut rhs, vec![0; n], -1);
    if m % 2 == 0 {
        // (1 + x_0) Σ_{(0,β) ∈ P^f(m)} x^(0,β)
        let mut b = binom_m.clone();
        b.0[0] = 0;
        for p in scan(m, b)?.iter() {
            let mut up = p.to_vec();
            add_term(&mut rhs, up.clone(), 1);
            up[0] += 1;
            add_term(&mut rhs, up, 1);
        }
        // Σ_{(γ,0,0) ∈ Q^f(m+1), γ <= C(m, 0..m-1)} x^(γ,0)
        let mut b = binom_m.clone();
        b.0[m] = 0;
        for p in scan(m + 1, b.extended(0))?.iter() {
            add_term(&mut rhs, p[..n].to_vec(), 1);
        }
    } else {
        // Σ_{(β,0,0) ∈ Q^f(m)} x^(β,0,0)
        let mut b = binom_m.clone();
        b.0[m] = 0;
        b.0[m - 1] = 0;
        for p in scan(m, b)?.iter() {
            add_term(&mut rhs, p.to_vec(), 1);
        }
        // (1 + x_0) Σ_{(0,γ,0,0) ∈ P^f(m+1), γ <= C(m, 1..m-1)} x^(0,γ,0)
        let mut b = binom_m.clone();
        b.0[0] = 0;
        b.0[m] = 0;
        for p in scan(m + 1, b.extended(0))?.iter() {
            let mut up = p[..n].to_vec();
            add_term(&mut rhs, up.clone(), 1);
            up[0] += 1;
            add_term(&mut rhs, up, 1);
        }
    }

    let mismatched: Vec<String> = lhs
        .keys()
        .chain(rhs.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|k| lhs.get(*k) != rhs.get(*k))
        .take(5)
        .map(|k| format!("{k:?}: {:?} vs {:?}", lhs.get(k), rhs.get(k)))
        .collect();
    r.check("coefficient mismatches", &[], String::new(), mismatched.join("; "));

    let ones = vec![BigInt::one(); n];
    let total = eval(&lhs, &ones);
    r.check("value at x = 1", &[], total.clone(), eval(&rhs, &ones));
    if let Some(row) = reference_table4(m) {
        r.check("value at x = 1 vs published col3", &[], BigInt::from(row.col3), total);
    }
    let samples: [Vec<BigInt>; 3] = [
        (0..n).map(|k| BigInt::from(k as i64 + 2)).collect(),
        (0..n).map(|k| BigInt::from(if k % 2 == 0 { 1 } else { -1 })).collect(),
        (0..n).map(|k| BigInt::from(3 - k as i64)).collect(),
    ];
    for (s, x) in samples.iter().enumerate() {
        r.check("sampled evaluation", &[("sample", s as i64)], eval(&lhs, x), eval(&rhs, x));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(r: &EnumerationReport) -> Vec<Vec<i64>> {
        r.points.as_ref().unwrap().to_vecs()
    }

    #[test]
    fn eigen_lattice_small() {
        let opts = EnumOptions::default();
        let r = enumerate_eigen_lattice(2, &BoundsVector::binomial(2), &opts).unwrap();
        assert_eq!(pts(&r), vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 1]]);
        let r = enumerate_eigen_lattice(3, &BoundsVector::binomial(3), &opts).unwrap();
        assert_eq!(pts(&r), vec![vec![0, 0, 0, 0], vec![1, 2, 0, 0]]);
        let r = enumerate_eigen_lattice(2, &BoundsVector(vec![5, 5, 5]), &opts).unwrap();
        assert!(pts(&r).iter().all(|p| p[1] == p[2]));
        assert!(r.count > 4);
    }

    #[test]
    fn classes_small() {
        let opts = EnumOptions::default();
        let r = ds_fvectors(2, ParityClass::Matching, &opts).unwrap();
        assert_eq!(pts(&r), vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 1]]);
        let r = ds_fvectors(2, ParityClass::Opposite, &opts).unwrap();
        assert_eq!(pts(&r), vec![vec![1, 2, 0]]);
        let r = ds_fvectors(3, ParityClass::Matching, &opts).unwrap();
        assert_eq!(pts(&r), vec![vec![1, 2, 0, 0]]);
    }

    #[test]
    fn table4_small() {
        for m in 2..=7 {
            assert_eq!(Some(table4_row(m, 1).unwrap()), reference_table4(m), "m={m}");
        }
    }

    #[test]
    fn workers_do_not_change_output() {
        for m in [4, 6, 7] {
            let one = ds_fvectors(m, ParityClass::All, &EnumOptions::default()).unwrap();
            let four = ds_fvectors(
                m,
                ParityClass::All,
                &EnumOptions {
                    workers: 4,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(one.points, four.points);
            assert_eq!(one.counts, four.counts);
        }
    }

    #[test]
    fn box_oracle_small() {
        let o = oracle_box(2).unwrap();
        assert_eq!(o.scanned, 12);
        assert_eq!(o.matching, vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 1]]);
        assert_eq!(o.opposite, vec![vec![1, 2, 0]]);
        assert!(matches!(oracle_box(8), Err(Error::ScanTooLarge { .. })));
    }

    #[test]
    fn powerset_oracle_small() {
        let o = oracle_powerset(2).unwrap();
        assert_eq!(o.scanned, 16);
        assert_eq!(o.matching.len(), 3);
        assert_eq!(o.systems, Some((5, 1)));
        let o = oracle_powerset(3).unwrap();
        assert_eq!((o.matching.len(), o.opposite.len()), (1, 7));
        assert!(oracle_powerset(5).is_err());
    }

    #[test]
    fn system_counts() {
        assert_eq!(total_ds_count(2, ParityClass::Matching).unwrap(), BigInt::from(5));
        assert_eq!(total_ds_count(2, ParityClass::Opposite).unwrap(), BigInt::from(1));
        let o = oracle_powerset(3).unwrap().systems.unwrap();
        assert_eq!(total_ds_count(3, ParityClass::Opposite).unwrap(), BigInt::from(o.1));
        assert!(total_ds_count(9, ParityClass::Matching).is_err());
    }

    #[test]
    fn genfun_small() {
        for m in 2..=5 {
            let r = genfun_identity_check(m).unwrap();
            assert!(r.passed(), "m={m}: {:?}", r.failures);
        }
    }

    #[test]
    fn point_list_sort_and_search() {
        let mut p = PointList::new(2);
        for x in [[3, 1], [1, 2], [3, 1], [0, 9]] {
            p.push(&x);
        }
        p.sort();
        assert_eq!(p.to_vecs(), vec![vec![0, 9], vec![1, 2], vec![3, 1]]);
        assert!(p.contains(&[1, 2]));
        assert!(!p.contains(&[1, 3]));
    }

    #[test]
    fn overflow_is_rejected() {
        let b = BoundsVector(vec![u64::MAX / 2; 4]);
        assert!(matches!(Engine::new(3, &b), Err(Error::Overflow(_))));
    }
}
