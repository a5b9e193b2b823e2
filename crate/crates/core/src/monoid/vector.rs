use std::fmt;
use std::ops::{Add, Index};

use serde::{Deserialize, Serialize};

/// An element of the free abelian monoid `F(P)`: one nonnegative exponent per
/// prime of a fixed finite prime list. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = vec![0; dim];
        v[index] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    /// `|a|`, the number of prime factors counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of the primes dividing the element.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Coordinatewise `self <= other`, i.e. `self` divides `other` in `F(P)`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Option<ExponentVector> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// `self - other`, or `None` when some coordinate would go negative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn scaled(&self, k: u32) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .map(|c| c.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Keeps only the coordinates listed in `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> ExponentVector {
        ExponentVector(indices.iter().map(|&i| self.0[i]).collect())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    /// Panics on exponent overflow; wraparound is never silent.
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        self.checked_add(rhs).expect("exponent overflow")
    }
}

impl Index<usize> for ExponentVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Per-prime exponent bounds `[0, b_1] x ... x [0, b_d]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SearchBox(Vec<u32>);

impl SearchBox {
    pub fn new(bounds: Vec<u32>) -> Self {
        SearchBox(bounds)
    }

    pub fn uniform(dim: usize, bound: u32) -> Self {
        SearchBox(vec![bound; dim])
    }

    pub fn bounds(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: &ExponentVector) -> bool {
        x.dim() == self.0.len() && x.coords().iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn count(&self) -> u128 {
        self.0.iter().map(|&b| b as u128 + 1).product()
    }

    /// Enlarges every bound by `extra`.
    pub fn grown(&self, extra: u32) -> SearchBox {
        SearchBox(self.0.iter().map(|b| b + extra).collect())
    }

    /// All box elements in lexicographic order.
    pub fn iter(&self) -> BoxIter<'_> {
        BoxIter {
            bounds: &self.0,
            next: Some(vec![0; self.0.len()]),
        }
    }

    /// All box elements sorted by total length, then lexicographically.
    pub fn graded(&self) -> Vec<ExponentVector> {
        let mut all: Vec<ExponentVector> = self.iter().collect();
        all.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        all
    }

    /// Inverse of [`SearchBox::linear_index`].
    pub fn element_at(&self, mut idx: usize) -> ExponentVector {
        let mut c = vec![0u32; self.0.len()];
        for (slot, &b) in c.iter_mut().zip(&self.0).rev() {
            let w = b as usize + 1;
            *slot = (idx % w) as u32;
            idx /= w;
        }
        ExponentVector(c)
    }

    /// Position of `x` in lexicographic (row-major) order.
    pub fn linear_index(&self, x: &ExponentVector) -> usize {
        let mut idx = 0usize;
        for (c, b) in x.coords().iter().zip(&self.0) {
            idx = idx * (*b as usize + 1) + *c as usize;
        }
        idx
    }
}

pub struct BoxIter<'a> {
    bounds: &'a [u32],
    next: Option<Vec<u32>>,
}

impl Iterator for BoxIter<'_> {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.bounds[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(ExponentVector(current))
    }
}
