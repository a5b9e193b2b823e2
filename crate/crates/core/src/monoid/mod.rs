//! Presentations of reduced submonoids of free abelian monoids.

mod json;
mod spec;
mod vector;

use std::cmp::Reverse;

use serde::Serialize;

pub use json::{parse_spec, SCHEMA_VERSION};
pub(crate) use spec::multiplicity_bound;
pub use spec::{BlockSpec, GeneratorSpec, MonoidSpec, NumericalSpec, PeriodicSpec, Profile, ProfileEntry};
pub use vector::{BoxIter, ExponentVector, SearchBox};

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_basis, DiophantineSystem, HilbertOptions};

/// Decides `x ∈ H`.
pub fn membership(spec: &MonoidSpec, x: &ExponentVector) -> Result<bool> {
    spec.check_dim(x)?;
    Ok(spec.contains_unchecked(x))
}

/// Atoms of `H` found inside a search box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomList {
    pub atoms: Vec<ExponentVector>,
    /// True when every atom of `H` is in `atoms`.
    pub complete: bool,
    pub search_box: SearchBox,
}

impl AtomList {
    /// Builds a list in canonical order. Used for hand-made atom sets and
    /// derived monoids; `complete` is the caller's claim.
    pub fn new(mut atoms: Vec<ExponentVector>, complete: bool, search_box: SearchBox) -> Self {
        canonical_order(&mut atoms);
        AtomList {
            atoms,
            complete,
            search_box,
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.search_box.dim()
    }

    /// Whether every atom dividing `x` is guaranteed to be in the list.
    pub fn covers(&self, x: &ExponentVector) -> bool {
        self.complete || self.search_box.contains(x)
    }
}

/// Atoms with singleton support first, then by length, then earlier primes first.
fn canonical_order(atoms: &mut [ExponentVector]) {
    atoms.sort_by_key(|a| (a.support().len(), a.length(), Reverse(a.clone())));
}

/// Enumerates the atoms of `H` inside `search_box`.
///
/// All atoms inside the box are always found; `complete` reports whether
/// the kind certifies that no atom lies outside it.
pub fn enumerate_atoms(spec: &MonoidSpec, search_box: &SearchBox) -> Result<AtomList> {
    enumerate_atoms_with(spec, search_box, &HilbertOptions::default())
}

pub fn enumerate_atoms_with(spec: &MonoidSpec, search_box: &SearchBox, hilbert: &HilbertOptions) -> Result<AtomList> {
    if search_box.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: search_box.dim(),
        });
    }
    if search_box.bounds().contains(&0) {
        return Err(Error::InvalidArgument(
            "search box must be positive in every coordinate".into(),
        ));
    }
    let (atoms, complete) = match spec {
        MonoidSpec::Numerical(ns) => {
            let gens = ns.generators();
            let minimal: Vec<u32> = gens
                .iter()
                .copied()
                .filter(|&g| {
                    let others: Vec<ExponentVector> = gens
                        .iter()
                        .filter(|&&h| h != g)
                        .map(|&h| ExponentVector::new(vec![h]))
                        .collect();
                    !spec::representable(&others, &ExponentVector::new(vec![g]))
                })
                .collect();
            let bound = search_box.bounds()[0];
            let complete = minimal.iter().all(|&g| g <= bound);
            let atoms = minimal
                .into_iter()
                .filter(|&g| g <= bound)
                .map(|g| ExponentVector::new(vec![g]))
                .collect();
            (atoms, complete)
        }
        MonoidSpec::Generators(gs) => {
            let gens = gs.gens();
            let minimal: Vec<ExponentVector> = gens
                .iter()
                .filter(|g| {
                    let others: Vec<ExponentVector> = gens.iter().filter(|h| h != g).cloned().collect();
                    !spec::representable(&others, g)
                })
                .cloned()
                .collect();
            let complete = minimal.iter().all(|g| search_box.contains(g));
            (
                minimal.into_iter().filter(|g| search_box.contains(g)).collect(),
                complete,
            )
        }
        MonoidSpec::Block(bs) => {
            let matrix: Vec<Vec<i64>> = (0..bs.cyclic_orders().len())
                .map(|j| bs.subset().iter().map(|g| g[j] as i64).collect())
                .collect();
            let moduli = bs.cyclic_orders().iter().map(|&n| Some(n)).collect();
            let system = DiophantineSystem::new(matrix, moduli)?;
            let hb = hilbert_basis(&system, hilbert)?;
            let complete = hb.complete && hb.solutions.iter().all(|a| search_box.contains(a));
            (
                hb.solutions.into_iter().filter(|a| search_box.contains(a)).collect(),
                complete,
            )
        }
        MonoidSpec::Periodic(ps) => {
            let atoms = sweep_atoms(spec, search_box);
            (atoms.clone(), periodic_certificate(ps, search_box, &atoms))
        }
    };
    let complete = complete && !atoms.is_empty();
    Ok(AtomList::new(atoms, complete, search_box.clone()))
}

/// Atoms of `H` inside the box by direct decomposition tests.
///
/// `x ∈ H` is not an atom iff some atom `u < x` has `x - u ∈ H`, so a graded
/// sweep only needs to test against atoms found earlier.
pub(crate) fn sweep_atoms(spec: &MonoidSpec, search_box: &SearchBox) -> Vec<ExponentVector> {
    let mut atoms: Vec<ExponentVector> = Vec::new();
    for x in search_box.graded() {
        if x.is_identity() || !spec.contains_unchecked(&x) {
            continue;
        }
        let decomposable = atoms.iter().any(|u| {
            x.checked_sub(u)
                .is_some_and(|rest| !rest.is_identity() && spec.contains_unchecked(&rest))
        });
        if !decomposable {
            atoms.push(x);
        }
    }
    atoms
}

/// Completeness certificate for a periodic pattern.
///
/// If an atom had a coordinate `v > 2α + m`, removing `m` from it keeps the
/// profile, and any split of the smaller element would put more than `α` on
/// one side, which then absorbs the removed `m` again; so the smaller element
/// is also an atom. Iterating, every atom outside a box with bounds
/// `>= 2α + m` yields an atom inside it with a coordinate in `(2α, 2α + m]`.
/// Hence no atom inside such a box having a coordinate above `2α` proves the
/// list complete.
fn periodic_certificate(ps: &PeriodicSpec, search_box: &SearchBox, atoms: &[ExponentVector]) -> bool {
    let threshold = 2 * ps.alpha() + ps.modulus();
    search_box.bounds().iter().all(|&b| b >= threshold)
        && atoms.iter().all(|a| a.coords().iter().all(|&c| c <= 2 * ps.alpha()))
}
