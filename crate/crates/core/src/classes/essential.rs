//! Supports of non-units, minimal essential subsets, simplicity, and the set
//! of primes some power of which lies in `H`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::monoid::{AtomList, ExponentVector, MonoidSpec, SearchBox};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialReport {
    pub primes: Vec<String>,
    /// Supports of non-identity elements seen, as sorted prime indices.
    pub supports: BTreeSet<Vec<usize>>,
    /// Inclusion-minimal members of `supports`.
    pub minimal_essential: BTreeSet<Vec<usize>>,
    pub simple: bool,
    /// A minimal support with at least two primes, when not simple.
    pub witness: Option<Vec<usize>>,
}

impl EssentialReport {
    pub fn labelled(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&i| self.primes[i].clone()).collect()
    }
}

/// Collects supports from the atoms and from every element of `H` in the box.
pub fn essential_report(spec: &MonoidSpec, atoms: &AtomList, search_box: &SearchBox) -> Result<EssentialReport> {
    spec.check_dim(&ExponentVector::zeros(search_box.dim()))?;
    let mut supports: BTreeSet<Vec<usize>> = (0..search_box.count() as usize)
        .into_par_iter()
        .map(|i| search_box.element_at(i))
        .filter(|x| !x.is_identity() && spec.contains_unchecked(x))
        .fold(BTreeSet::new, |mut acc, x| {
            acc.insert(x.support());
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    supports.extend(atoms.atoms.iter().map(|a| a.support()));
    let minimal_essential: BTreeSet<Vec<usize>> = supports
        .iter()
        .filter(|s| !supports.iter().any(|t| t != *s && is_subset(t, s)))
        .cloned()
        .collect();
    let witness = minimal_essential.iter().find(|s| s.len() >= 2).cloned();
    Ok(EssentialReport {
        primes: spec.prime_labels(),
        supports,
        simple: witness.is_none(),
        minimal_essential,
        witness,
    })
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialPrimes {
    pub primes: Vec<String>,
    /// Indices `p` with `n e_p in H` for some `1 <= n <= power_bound`.
    pub members: Vec<usize>,
    /// Per prime, the smallest positive `n` with `n e_p in H` when one exists.
    pub first_power: Vec<Option<u32>>,
    /// True when the bounded answer is the unbounded one.
    pub exact: bool,
}

/// Primes having a pure power in `H`, with trivial unit group.
///
/// Each kind has a bound beyond which no new pure power can appear first:
/// the smallest generator, the threshold plus modulus, the element order, or
/// the smallest single-prime generator.
pub fn essential_prime_set(spec: &MonoidSpec, power_bound: u32) -> Result<EssentialPrimes> {
    let dim = spec.dim();
    let mut first_power = Vec::with_capacity(dim);
    let mut exact = true;
    for p in 0..dim {
        let decisive = match spec {
            MonoidSpec::Numerical(ns) => ns.generators()[0],
            MonoidSpec::Periodic(ps) => ps.alpha() + ps.modulus(),
            MonoidSpec::Block(b) => b.element_order(p),
            MonoidSpec::Generators(g) => g
                .gens()
                .iter()
                .filter(|a| a.support() == [p])
                .map(|a| a[p])
                .min()
                .unwrap_or(0),
        };
        let first = (1..=power_bound.min(decisive.max(1))).find(|&n| {
            let mut x = vec![0u32; dim];
            x[p] = n;
            spec.contains_unchecked(&ExponentVector::new(x))
        });
        if first.is_none() && decisive > power_bound {
            exact = false;
        }
        first_power.push(first);
    }
    Ok(EssentialPrimes {
        primes: spec.prime_labels(),
        members: (0..dim).filter(|&p| first_power[p].is_some()).collect(),
        first_power,
        exact,
    })
}
