use std::fmt;
use std::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::linalg::{int_to_rat, ExactMatrix};

/// Zero-indexed row vector of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![BigInt::zero(); n])
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        Self(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_u64(xs: &[u64]) -> Self {
        Self(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> BigInt {
        self.dot(self)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(int_to_rat).collect()
    }

    /// `self * mat`, exact.
    pub fn times(&self, mat: &ExactMatrix) -> Result<Vec<BigRational>> {
        mat.left_apply_int(&self.0)
    }

    /// `self * mat` for an integer matrix; `None` if the product has a
    /// non-integral entry.
    pub fn times_int(&self, mat: &ExactMatrix) -> Result<Option<IntVector>> {
        Ok(Self::from_rational(&self.times(mat)?))
    }

    pub fn from_rational(xs: &[BigRational]) -> Option<Self> {
        xs.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Shift right by `k` places within the same length (`v * T^k`).
    pub fn shifted(&self, k: usize) -> Self {
        let n = self.len();
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.0[i].clone();
        }
        Self(out)
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;

    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;

    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Entries that fit in 64 bits serialize as JSON integers; larger ones as
/// decimal strings.
pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Wrap<'a>(&'a BigInt);
        impl Serialize for Wrap<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&Wrap(x))?;
        }
        seq.end()
    }
}

/// Serializes an exact rational as `"p"` or `"p/q"`.
pub fn serialize_rational<S: Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn serialize_rationals<S: Serializer>(
    xs: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}
