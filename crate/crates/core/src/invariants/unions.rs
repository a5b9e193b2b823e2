//! Unions of sets of lengths and distances, by level-wise product enumeration.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{LengthBits, LengthCache, LengthSet};
use crate::lp::rank;
use crate::monoid::{AtomList, ExponentVector};

use super::elasticity::elasticity_via_h0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionsProfile {
    /// `(1, k)` where `k` is the last level computed in full.
    pub k_range: (u32, u32),
    pub unions: BTreeMap<u32, LengthSet>,
    pub rho_k: BTreeMap<u32, u32>,
    pub lambda_k: BTreeMap<u32, u32>,
    /// Union of the distance sets of every enumerated element.
    pub distances: BTreeSet<u32>,
    /// Distinct elements enumerated over all levels.
    pub elements: usize,
    pub exact: bool,
    pub truncated: bool,
}

impl UnionsProfile {
    pub fn k_max(&self) -> u32 {
        self.k_range.1
    }
}

/// Distinct products of exactly `k` atoms, one level at a time.
struct Levels<'a> {
    atoms: &'a [ExponentVector],
    current: Vec<ExponentVector>,
}

impl<'a> Levels<'a> {
    fn new(atoms: &'a AtomList) -> Self {
        Levels {
            atoms: &atoms.atoms,
            current: vec![ExponentVector::zeros(atoms.dim())],
        }
    }

    /// Advances to the next level; `Ok(None)` when it would exceed `room` elements.
    fn next_level(&mut self, room: usize) -> Result<Option<&[ExponentVector]>> {
        let atoms = self.atoms;
        let sums: Vec<Vec<ExponentVector>> = self
            .current
            .par_iter()
            .map(|a| {
                atoms
                    .iter()
                    .map(|u| a.checked_add(u).ok_or(Error::Overflow("atom product")))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let mut next = BTreeSet::new();
        for v in sums.into_iter().flatten() {
            next.insert(v);
            if next.len() > room {
                return Ok(None);
            }
        }
        self.current = next.into_iter().collect();
        Ok(Some(&self.current))
    }
}

/// Lengths of every element of a level, merged into `(union, distances)`.
fn level_lengths(cache: &LengthCache<'_>, level: &[ExponentVector]) -> (LengthBits, BTreeSet<u32>) {
    level
        .par_iter()
        .map(|a| {
            let bits = cache.lengths(a);
            let values: Vec<u32> = bits.iter().collect();
            let dist: BTreeSet<u32> = values.windows(2).map(|w| w[1] - w[0]).collect();
            ((*bits).clone(), dist)
        })
        .reduce(
            || (LengthBits::default(), BTreeSet::new()),
            |(mut u, mut d), (u2, d2)| {
                u.union(&u2);
                d.extend(d2);
                (u, d)
            },
        )
}

/// Computes `U_k` for `k = 1..=k_max` from the distinct products of `k` atoms.
///
/// Stops at the last complete level once `element_budget` distinct elements
/// would be exceeded.
pub fn unions_profile(atoms: &AtomList, k_max: u32, element_budget: usize) -> Result<UnionsProfile> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if atoms.is_empty() {
        return Err(Error::InvalidArgument("empty atom list".into()));
    }
    let cache = LengthCache::new(&atoms.atoms);
    let mut levels = Levels::new(atoms);
    let mut profile = UnionsProfile {
        k_range: (1, 0),
        unions: BTreeMap::new(),
        rho_k: BTreeMap::new(),
        lambda_k: BTreeMap::new(),
        distances: BTreeSet::new(),
        elements: 0,
        exact: atoms.complete,
        truncated: false,
    };
    for k in 1..=k_max {
        let Some(level) = levels.next_level(element_budget.saturating_sub(profile.elements))? else {
            profile.truncated = true;
            profile.exact = false;
            break;
        };
        profile.elements += level.len();
        let (union, dist) = level_lengths(&cache, level);
        let set = LengthSet::new(union.iter(), atoms.complete);
        profile.rho_k.insert(k, set.max().expect("k lies in U_k"));
        profile.lambda_k.insert(k, set.min().expect("k lies in U_k"));
        profile.unions.insert(k, set);
        profile.distances.extend(dist);
        profile.k_range.1 = k;
    }
    Ok(profile)
}

/// Why the distance set came out empty, when that is structural.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Factoriality {
    /// Atoms are linearly independent: every element factors uniquely.
    Factorial,
    /// Elasticity is exactly one: all factorizations of an element have one length.
    HalfFactorial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    /// A subset of the set of distances of the monoid.
    pub distances: BTreeSet<u32>,
    pub elements: usize,
    /// Highest level (number of atom factors) fully enumerated.
    pub levels: u32,
    pub factoriality: Option<Factoriality>,
}

/// Union of the distance sets of all products of atoms, level by level,
/// until `element_budget` distinct elements have been examined.
pub fn delta_h_lower(atoms: &AtomList, element_budget: usize) -> Result<DistanceReport> {
    if atoms.is_empty() {
        return Err(Error::InvalidArgument("empty atom list".into()));
    }
    let cache = LengthCache::new(&atoms.atoms);
    let mut levels = Levels::new(atoms);
    let mut report = DistanceReport {
        distances: BTreeSet::new(),
        elements: 0,
        levels: 0,
        factoriality: factoriality(atoms)?,
    };
    if report.factoriality == Some(Factoriality::Factorial) {
        return Ok(report);
    }
    while let Some(level) = levels.next_level(element_budget.saturating_sub(report.elements))? {
        report.elements += level.len();
        report.levels += 1;
        report.distances.extend(level_lengths(&cache, level).1);
    }
    Ok(report)
}

/// Structural reasons for an empty distance set; `None` when there is none
/// or the atom list is incomplete.
pub fn factoriality(atoms: &AtomList) -> Result<Option<Factoriality>> {
    if !atoms.complete || atoms.is_empty() {
        return Ok(None);
    }
    let rows: Vec<Vec<i64>> = (0..atoms.dim())
        .map(|r| atoms.atoms.iter().map(|a| a[r] as i64).collect())
        .collect();
    if rank(&rows) == atoms.len() {
        return Ok(Some(Factoriality::Factorial));
    }
    let rho = elasticity_via_h0(atoms)?;
    Ok((rho.exact && rho.value == crate::Rational::from_integer(1)).then_some(Factoriality::HalfFactorial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::set_of_lengths;
    use crate::monoid::{enumerate_atoms, MonoidSpec, SearchBox};

    fn atoms_of(spec: &MonoidSpec, bound: u32) -> AtomList {
        enumerate_atoms(spec, &SearchBox::uniform(spec.dim(), bound)).unwrap()
    }

    /// Every multiset of `k` atoms, multiplied out, with lengths by full enumeration.
    fn brute_union(atoms: &AtomList, k: u32) -> BTreeSet<u32> {
        fn rec(atoms: &AtomList, start: usize, left: u32, acc: ExponentVector, out: &mut BTreeSet<u32>) {
            if left == 0 {
                out.extend(set_of_lengths(atoms, &acc).unwrap().values);
                return;
            }
            for i in start..atoms.len() {
                rec(atoms, i, left - 1, &acc + &atoms.atoms[i], out);
            }
        }
        let mut out = BTreeSet::new();
        rec(atoms, 0, k, ExponentVector::zeros(atoms.dim()), &mut out);
        out
    }

    #[test]
    fn block_z3_unions_match_brute_force() {
        let atoms = atoms_of(&MonoidSpec::cyclic_block(3).unwrap(), 6);
        let p = unions_profile(&atoms, 12, 1_000_000).unwrap();
        assert!(p.exact && !p.truncated);
        assert_eq!(p.unions[&2].values, vec![2, 3]);
        for k in 1..=12 {
            let oracle = brute_union(&atoms, k);
            assert_eq!(p.unions[&k].values, oracle.into_iter().collect::<Vec<_>>(), "k = {k}");
            assert_eq!(p.rho_k[&k], 3 * k / 2);
        }
        assert_eq!(p.distances, BTreeSet::from([1]));
    }

    #[test]
    fn half_factorial_block() {
        let spec = MonoidSpec::block(vec![2], vec![vec![0], vec![1]]).unwrap();
        let atoms = atoms_of(&spec, 6);
        let p = unions_profile(&atoms, 8, 100_000).unwrap();
        for k in 1..=8 {
            assert_eq!(p.unions[&k].values, vec![k]);
        }
        assert_eq!(factoriality(&atoms).unwrap(), Some(Factoriality::Factorial));
        let d = delta_h_lower(&atoms, 10_000).unwrap();
        assert!(d.distances.is_empty());
    }

    #[test]
    fn budget_truncates_at_complete_level() {
        let atoms = atoms_of(&MonoidSpec::cyclic_block(3).unwrap(), 6);
        let p = unions_profile(&atoms, 30, 20).unwrap();
        assert!(p.truncated && !p.exact);
        assert!(p.elements <= 20);
        assert_eq!(p.k_range, (1, p.unions.len() as u32));
    }

    #[test]
    fn distances() {
        let atoms = atoms_of(&MonoidSpec::cyclic_block(3).unwrap(), 6);
        let d = delta_h_lower(&atoms, 200).unwrap();
        assert_eq!(d.distances, BTreeSet::from([1]));
        assert_eq!(d.factoriality, None);

        let ns25 = atoms_of(&MonoidSpec::numerical(&[2, 5]).unwrap(), 12);
        let d = delta_h_lower(&ns25, 200).unwrap();
        assert!(d.distances.contains(&3));

        let free = MonoidSpec::generators(&["p", "q"], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let d = delta_h_lower(&atoms_of(&free, 3), 1000).unwrap();
        assert!(d.distances.is_empty());
        assert_eq!(d.factoriality, Some(Factoriality::Factorial));
    }
}
