//! Factorizations over an atom list, sets of lengths, distances and elasticity of sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{AtomList, ExponentVector};
use crate::rational::Rational;

/// A multiplicity vector over an atom list together with the element it multiplies to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    pub multiplicities: Vec<u32>,
    pub target: ExponentVector,
}

impl Factorization {
    pub fn length(&self) -> u64 {
        self.multiplicities.iter().map(|&m| m as u64).sum()
    }

    /// Re-multiplies the factorization; `None` on overflow.
    pub fn evaluate(&self, atoms: &[ExponentVector]) -> Option<ExponentVector> {
        let dim = self.target.dim();
        let mut acc = vec![0u32; dim];
        for (m, a) in self.multiplicities.iter().zip(atoms) {
            for (s, c) in acc.iter_mut().zip(a.coords()) {
                *s = s.checked_add(c.checked_mul(*m)?)?;
            }
        }
        Some(ExponentVector::new(acc))
    }

    pub fn is_valid(&self, atoms: &[ExponentVector]) -> bool {
        self.multiplicities.len() == atoms.len() && self.evaluate(atoms).as_ref() == Some(&self.target)
    }
}

/// All factorizations of `target` over `atoms`, in lexicographic order of
/// the multiplicity vectors. Empty when `target` is not a product of atoms.
pub fn factorizations(atoms: &AtomList, target: &ExponentVector) -> Result<Vec<Factorization>> {
    if target.dim() != atoms.dim() {
        return Err(Error::DimensionMismatch {
            expected: atoms.dim(),
            found: target.dim(),
        });
    }
    let mut out = Vec::new();
    let mut mult = vec![0u32; atoms.len()];
    let mut rest = target.coords().to_vec();
    dfs(&atoms.atoms, 0, &mut rest, &mut mult, &mut |m| {
        out.push(Factorization {
            multiplicities: m.to_vec(),
            target: target.clone(),
        })
    });
    Ok(out)
}

fn dfs(atoms: &[ExponentVector], i: usize, rest: &mut [u32], mult: &mut [u32], emit: &mut impl FnMut(&[u32])) {
    if i == atoms.len() {
        if rest.iter().all(|&r| r == 0) {
            emit(mult);
        }
        return;
    }
    let a = atoms[i].coords();
    let bound = crate::monoid::multiplicity_bound(a, rest);
    for k in 0..=bound {
        mult[i] = k;
        dfs(atoms, i + 1, rest, mult, emit);
        if k < bound {
            for (r, c) in rest.iter_mut().zip(a) {
                *r -= c;
            }
        }
    }
    for (r, c) in rest.iter_mut().zip(a) {
        *r += c * bound;
    }
    mult[i] = 0;
}

/// A finite set of factorization lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSet {
    pub values: Vec<u32>,
    /// False when derived from an atom list that may miss atoms dividing the element.
    pub exact: bool,
}

impl LengthSet {
    pub fn new(values: impl IntoIterator<Item = u32>, exact: bool) -> Self {
        let set: BTreeSet<u32> = values.into_iter().collect();
        LengthSet {
            values: set.into_iter().collect(),
            exact,
        }
    }

    pub fn min(&self) -> Option<u32> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.values.last().copied()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.values.binary_search(&k).is_ok()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `L(target)`; errors with [`Error::NotInMonoid`] when there is no factorization.
pub fn set_of_lengths(atoms: &AtomList, target: &ExponentVector) -> Result<LengthSet> {
    let zs = factorizations(atoms, target)?;
    if zs.is_empty() {
        return Err(Error::NotInMonoid);
    }
    Ok(LengthSet::new(
        zs.iter().map(|z| z.length() as u32),
        atoms.covers(target),
    ))
}

/// Successive gaps of the sorted values.
pub fn delta_of(l: &LengthSet) -> BTreeSet<u32> {
    l.values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// `max L / min L`, with `ρ({0}) = 1`.
pub fn rho_of(l: &LengthSet) -> Rational {
    match (l.min(), l.max()) {
        (Some(lo), Some(hi)) if lo > 0 => Rational::new(hi as i64, lo as i64),
        _ => Rational::from_integer(1),
    }
}

/// Dense bitset of lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct LengthBits(Vec<u64>);

impl LengthBits {
    pub fn insert(&mut self, k: u32) {
        let (w, b) = ((k / 64) as usize, k % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    /// `self ∪ (other + 1)`.
    pub fn union_shifted(&mut self, other: &LengthBits) {
        if other.0.is_empty() {
            return;
        }
        let need = other.0.len() + 1;
        if self.0.len() < need {
            self.0.resize(need, 0);
        }
        let mut carry = 0u64;
        for (i, &w) in other.0.iter().enumerate() {
            self.0[i] |= (w << 1) | carry;
            carry = w >> 63;
        }
        self.0[other.0.len()] |= carry;
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn union(&mut self, other: &LengthBits) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i as u32 * 64 + b))
    }
}

/// Memoized `L(x)` over a fixed atom list, shareable across worker threads.
///
/// `L(x) = ⋃ { 1 + L(x - u) : u atom, u <= x }` with `L(0) = {0}`; elements
/// outside the monoid generated by the atoms map to the empty set.
pub(crate) struct LengthCache<'a> {
    atoms: &'a [ExponentVector],
    memo: DashMap<ExponentVector, Arc<LengthBits>>,
}

impl<'a> LengthCache<'a> {
    pub fn new(atoms: &'a [ExponentVector]) -> Self {
        LengthCache {
            atoms,
            memo: DashMap::new(),
        }
    }

    pub fn lengths(&self, x: &ExponentVector) -> Arc<LengthBits> {
        if let Some(v) = self.memo.get(x) {
            return v.clone();
        }
        let mut acc = LengthBits::default();
        if x.is_identity() {
            acc.insert(0);
        } else {
            for u in self.atoms {
                if let Some(rest) = x.checked_sub(u) {
                    acc.union_shifted(&self.lengths(&rest));
                }
            }
        }
        let v = Arc::new(acc);
        self.memo.insert(x.clone(), v.clone());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{enumerate_atoms, MonoidSpec, SearchBox};

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn ns23() -> AtomList {
        enumerate_atoms(&MonoidSpec::numerical(&[2, 3]).unwrap(), &SearchBox::uniform(1, 10)).unwrap()
    }

    fn z3() -> AtomList {
        enumerate_atoms(&MonoidSpec::cyclic_block(3).unwrap(), &SearchBox::uniform(2, 3)).unwrap()
    }

    fn brute_count(atoms: &[ExponentVector], target: &ExponentVector, cap: u32) -> usize {
        let bx = SearchBox::uniform(atoms.len(), cap);
        bx.iter()
            .filter(|m| {
                Factorization {
                    multiplicities: m.coords().to_vec(),
                    target: target.clone(),
                }
                .is_valid(atoms)
            })
            .count()
    }

    #[test]
    fn factorizations_of_six() {
        let zs = factorizations(&ns23(), &ev(&[6])).unwrap();
        let m: Vec<Vec<u32>> = zs.iter().map(|z| z.multiplicities.clone()).collect();
        assert_eq!(m, vec![vec![0, 2], vec![3, 0]]);
        assert_eq!(brute_count(&ns23().atoms, &ev(&[6]), 3), 2);
    }

    #[test]
    fn identity_has_empty_factorization() {
        let zs = factorizations(&ns23(), &ev(&[0])).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].multiplicities, vec![0, 0]);
        assert_eq!(set_of_lengths(&ns23(), &ev(&[0])).unwrap().values, vec![0]);
    }

    #[test]
    fn block_z3_factorizations() {
        let zs = factorizations(&z3(), &ev(&[3, 3])).unwrap();
        let m: Vec<Vec<u32>> = zs.iter().map(|z| z.multiplicities.clone()).collect();
        assert_eq!(m, vec![vec![0, 0, 3], vec![1, 1, 0]]);
        assert_eq!(brute_count(&z3().atoms, &ev(&[3, 3]), 3), 2);
        assert_eq!(set_of_lengths(&z3(), &ev(&[3, 3])).unwrap().values, vec![2, 3]);
    }

    #[test]
    fn lengths_examples() {
        assert_eq!(set_of_lengths(&ns23(), &ev(&[6])).unwrap().values, vec![2, 3]);
        assert_eq!(set_of_lengths(&ns23(), &ev(&[2])).unwrap().values, vec![1]);
        assert!(matches!(set_of_lengths(&ns23(), &ev(&[1])), Err(Error::NotInMonoid)));
        assert!(set_of_lengths(&ns23(), &ev(&[1, 1])).is_err());
    }

    #[test]
    fn delta_and_rho() {
        assert_eq!(delta_of(&LengthSet::new([2, 3, 5], true)), BTreeSet::from([1, 2]));
        assert!(delta_of(&LengthSet::new([7], true)).is_empty());
        assert_eq!(delta_of(&LengthSet::new([2, 3], true)), BTreeSet::from([1]));
        assert_eq!(rho_of(&LengthSet::new([2, 3], true)), Rational::new(3, 2));
        assert_eq!(rho_of(&LengthSet::new([0], true)), Rational::from_integer(1));
        assert_eq!(rho_of(&LengthSet::new([4, 6, 8], true)), Rational::from_integer(2));
    }

    #[test]
    fn exactness_follows_coverage() {
        let spec = MonoidSpec::numerical(&[3, 5, 7]).unwrap();
        let small = enumerate_atoms(&spec, &SearchBox::uniform(1, 5)).unwrap();
        assert!(!small.complete);
        assert!(set_of_lengths(&small, &ev(&[5])).unwrap().exact);
        assert!(!set_of_lengths(&small, &ev(&[15])).unwrap().exact);
    }

    #[test]
    fn counts_match_brute_force_on_small_box() {
        for al in [ns23(), z3()] {
            let bx = SearchBox::uniform(al.dim(), 6);
            for t in bx.iter() {
                let zs = factorizations(&al, &t).unwrap();
                assert_eq!(zs.len(), brute_count(&al.atoms, &t, 6), "target {t}");
                assert!(zs.iter().all(|z| z.is_valid(&al.atoms)));
            }
        }
    }

    #[test]
    fn cache_agrees_with_enumeration() {
        for al in [ns23(), z3()] {
            let cache = LengthCache::new(&al.atoms);
            for t in SearchBox::uniform(al.dim(), 9).iter() {
                let bits: Vec<u32> = cache.lengths(&t).iter().collect();
                match set_of_lengths(&al, &t) {
                    Ok(l) => assert_eq!(bits, l.values),
                    Err(_) => assert!(bits.is_empty()),
                }
            }
        }
    }

    #[test]
    fn bitset_shift_crosses_words() {
        let mut a = LengthBits::default();
        a.insert(63);
        a.insert(0);
        let mut b = LengthBits::default();
        b.union_shifted(&a);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 64]);
    }
}
