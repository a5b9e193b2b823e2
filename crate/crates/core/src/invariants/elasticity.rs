//! Elasticity of a monoid through the monoid of relations between atoms.
//!
//! For atoms `u_1..u_n` (columns of `A`), the relation monoid
//! `H0 = {(x, y) in N^2n : A x = A y}` is finitely generated and
//! `rho(H) = max |y| / |x|` over its atoms. The maximum is attained on an
//! extreme ray of the cone `A x = A y`, so it is also the optimum of the
//! linear program `max sum(y)` subject to `A x = A y`, `sum(x) = 1`; the
//! primitive lattice point on an optimal vertex ray is an atom of `H0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::hilbert::{hilbert_basis, DiophantineSystem, HilbertOptions};
use crate::lp::{maximize, LpOutcome};
use crate::monoid::{AtomList, ExponentVector, MonoidSpec};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElasticityRoute {
    /// Maximum over the full Hilbert basis of `H0`.
    HilbertBasis,
    /// Optimal vertex of the relation cone, scaled to a primitive atom of `H0`.
    ExtremeRay,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElasticityCertificate {
    pub value: Rational,
    /// Two factorizations of the same element; the longer one comes first.
    pub witness_pair: [Factorization; 2],
    /// Size of the Hilbert basis of `H0` when it was computed in full.
    pub basis_size: Option<usize>,
    /// False when the atom list is incomplete; `value` is then a lower bound.
    pub exact: bool,
    pub route: ElasticityRoute,
}

impl ElasticityCertificate {
    /// Re-multiplies the witness pair and checks that it realizes `value`.
    pub fn verify(&self, atoms: &AtomList) -> bool {
        let [long, short] = &self.witness_pair;
        long.target == short.target
            && long.is_valid(&atoms.atoms)
            && short.is_valid(&atoms.atoms)
            && short.length() > 0
            && Rational::new(long.length() as i64, short.length() as i64) == self.value
    }

    /// The witness as `a1^m1 * a2^m2 = ...` with atoms written as exponent vectors.
    pub fn relation(&self, atoms: &AtomList) -> String {
        let side = |f: &Factorization| {
            let parts: Vec<String> = f
                .multiplicities
                .iter()
                .zip(&atoms.atoms)
                .filter(|(m, _)| **m > 0)
                .map(|(m, a)| if *m == 1 { a.to_string() } else { format!("{a}^{m}") })
                .collect();
            parts.join(" * ")
        };
        let [long, short] = &self.witness_pair;
        format!(
            "{} = {} (lengths {} vs {})",
            side(long),
            side(short),
            long.length(),
            short.length()
        )
    }
}

#[derive(Clone, Debug)]
pub struct ElasticityOptions {
    /// The full Hilbert basis of `H0` is attempted only up to this many atoms.
    pub basis_atom_limit: usize,
    pub hilbert: HilbertOptions,
}

impl Default for ElasticityOptions {
    fn default() -> Self {
        ElasticityOptions {
            basis_atom_limit: 8,
            hilbert: HilbertOptions { node_cap: 2_000_000 },
        }
    }
}

/// The system `[A | -A]` whose nonnegative solutions form `H0`.
pub fn relation_system(atoms: &AtomList) -> Result<DiophantineSystem> {
    let matrix = relation_rows(atoms);
    DiophantineSystem::homogeneous(matrix)
}

fn relation_rows(atoms: &AtomList) -> Vec<Vec<i64>> {
    (0..atoms.dim())
        .map(|r| {
            let col: Vec<i64> = atoms.atoms.iter().map(|a| a[r] as i64).collect();
            col.iter().copied().chain(col.iter().map(|v| -v)).collect()
        })
        .filter(|row: &Vec<i64>| row.iter().any(|&v| v != 0))
        .collect()
}

pub fn elasticity_via_h0(atoms: &AtomList) -> Result<ElasticityCertificate> {
    elasticity_via_h0_with(atoms, &ElasticityOptions::default())
}

pub fn elasticity_via_h0_with(atoms: &AtomList, opts: &ElasticityOptions) -> Result<ElasticityCertificate> {
    if atoms.is_empty() {
        return Err(Error::InvalidArgument("elasticity of an empty atom list".into()));
    }
    let ray = extreme_ray(atoms)?;
    if atoms.len() > opts.basis_atom_limit {
        return Ok(ray);
    }
    let basis = hilbert_basis(&relation_system(atoms)?, &opts.hilbert)?;
    if !basis.complete {
        return Ok(ray);
    }
    let n = atoms.len();
    let mut best: Option<(Rational, &ExponentVector)> = None;
    for s in &basis.solutions {
        let (x, y) = s.coords().split_at(n);
        let (lx, ly) = (sum(x), sum(y));
        if lx == 0 || ly == 0 {
            return Err(Error::Internal("relation with an empty side".into()));
        }
        let r = Rational::new(lx.max(ly) as i64, lx.min(ly) as i64);
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, s));
        }
    }
    let (value, s) = best.expect("H0 contains the diagonal atoms");
    if value != ray.value {
        return Err(Error::Internal(format!(
            "Hilbert basis maximum {value} differs from the extreme-ray optimum {}",
            ray.value
        )));
    }
    let (x, y) = s.coords().split_at(n);
    let (x, y) = if sum(x) >= sum(y) { (x, y) } else { (y, x) };
    Ok(ElasticityCertificate {
        value,
        witness_pair: [factorization(atoms, x)?, factorization(atoms, y)?],
        basis_size: Some(basis.solutions.len()),
        exact: atoms.complete,
        route: ElasticityRoute::HilbertBasis,
    })
}

fn sum(v: &[u32]) -> u64 {
    v.iter().map(|&c| c as u64).sum()
}

fn factorization(atoms: &AtomList, mult: &[u32]) -> Result<Factorization> {
    let mut f = Factorization {
        multiplicities: mult.to_vec(),
        target: ExponentVector::zeros(atoms.dim()),
    };
    f.target = f.evaluate(&atoms.atoms).ok_or(Error::Overflow("witness evaluation"))?;
    Ok(f)
}

fn extreme_ray(atoms: &AtomList) -> Result<ElasticityCertificate> {
    let n = atoms.len();
    let mut a = relation_rows(atoms);
    let mut b = vec![0i64; a.len()];
    a.push((0..2 * n).map(|j| (j < n) as i64).collect());
    b.push(1);
    let c: Vec<i64> = (0..2 * n).map(|j| (j >= n) as i64).collect();
    let sol = match maximize(&a, &b, &c) {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::Infeasible => return Err(Error::Internal("relation program infeasible".into())),
        LpOutcome::Unbounded => return Err(Error::Internal("relation program unbounded".into())),
    };
    // primitive integer point on the optimal ray
    let den = sol.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = sol.values.iter().map(|v| (v * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let point = ints
        .iter()
        .map(|v| (v / &g).to_u32().ok_or(Error::Overflow("extreme ray")))
        .collect::<Result<Vec<u32>>>()?;
    let (x, y) = point.split_at(n);
    let (lx, ly) = (sum(x), sum(y));
    if lx == 0 || ly == 0 {
        return Err(Error::Internal("relation with an empty side".into()));
    }
    let value = Rational::new(
        i64::try_from(ly).map_err(|_| Error::Overflow("elasticity"))?,
        i64::try_from(lx).map_err(|_| Error::Overflow("elasticity"))?,
    );
    let objective = sol.objective;
    if BigInt::from(ly) != objective.numer() * BigInt::from(lx) / objective.denom() {
        return Err(Error::Internal("extreme ray does not realize the optimum".into()));
    }
    Ok(ElasticityCertificate {
        value,
        witness_pair: [factorization(atoms, y)?, factorization(atoms, x)?],
        basis_size: None,
        exact: atoms.complete,
        route: ElasticityRoute::ExtremeRay,
    })
}

/// Restricts every element to the coordinates in `e` (sorted, deduplicated).
pub fn phi_project(spec: &MonoidSpec, e: &[usize], elements: &[ExponentVector]) -> Result<Vec<ExponentVector>> {
    let mut idx = e.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&bad) = idx.iter().find(|&&i| i >= spec.dim()) {
        return Err(Error::InvalidArgument(format!(
            "prime index {bad} out of range for {} primes",
            spec.dim()
        )));
    }
    elements
        .iter()
        .map(|x| {
            spec.check_dim(x)?;
            Ok(x.restrict(&idx))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{rho_of, LengthCache, LengthSet};
    use crate::monoid::{enumerate_atoms, SearchBox};

    fn atoms_of(spec: &MonoidSpec, bound: u32) -> AtomList {
        enumerate_atoms(spec, &SearchBox::uniform(spec.dim(), bound)).unwrap()
    }

    #[test]
    fn numerical_two_three() {
        let atoms = atoms_of(&MonoidSpec::numerical(&[2, 3]).unwrap(), 12);
        let c = elasticity_via_h0(&atoms).unwrap();
        assert_eq!(c.value, Rational::new(3, 2));
        assert_eq!(c.route, ElasticityRoute::HilbertBasis);
        assert_eq!(c.basis_size, Some(4));
        assert!(c.exact && c.verify(&atoms));
        assert_eq!(c.witness_pair[0].length(), 3);
        assert_eq!(c.relation(&atoms), "(2)^3 = (3)^2 (lengths 3 vs 2)");
    }

    #[test]
    fn block_z3_and_free() {
        let atoms = atoms_of(&MonoidSpec::cyclic_block(3).unwrap(), 6);
        let c = elasticity_via_h0(&atoms).unwrap();
        assert_eq!(c.value, Rational::new(3, 2));
        assert!(c.verify(&atoms));

        let free = MonoidSpec::generators(&["p", "q"], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let c = elasticity_via_h0(&atoms_of(&free, 4)).unwrap();
        assert_eq!(c.value, Rational::from_integer(1));
    }

    #[test]
    fn lp_route_agrees_with_basis_route() {
        let atoms = atoms_of(&MonoidSpec::numerical(&[3, 5, 7]).unwrap(), 30);
        let via_basis = elasticity_via_h0(&atoms).unwrap();
        let via_ray = extreme_ray(&atoms).unwrap();
        assert_eq!(via_basis.value, via_ray.value);
        assert_eq!(via_ray.value, Rational::new(7, 3));
        assert!(via_ray.verify(&atoms));
    }

    #[test]
    fn value_dominates_brute_force_and_is_attained() {
        let atoms = atoms_of(&MonoidSpec::numerical(&[3, 7]).unwrap(), 30);
        let c = elasticity_via_h0(&atoms).unwrap();
        let cache = LengthCache::new(&atoms.atoms);
        let mut best = Rational::from_integer(1);
        for n in 1..=120u32 {
            let bits = cache.lengths(&ExponentVector::new(vec![n]));
            let l = LengthSet::new(bits.iter(), true);
            if !l.is_empty() {
                best = best.max(rho_of(&l));
            }
        }
        assert_eq!(best, c.value);
    }

    #[test]
    fn permutation_invariance() {
        let atoms = atoms_of(&MonoidSpec::cyclic_block(4).unwrap(), 8);
        let v = elasticity_via_h0(&atoms).unwrap().value;
        let mut shuffled = atoms.clone();
        shuffled.atoms.reverse();
        let c = elasticity_via_h0(&shuffled).unwrap();
        assert_eq!(c.value, v);
        assert!(c.verify(&shuffled));
    }

    #[test]
    fn projection() {
        let spec = MonoidSpec::generators(&["p", "q"], vec![vec![1, 1]]).unwrap();
        let a = ExponentVector::new(vec![2, 3]);
        assert_eq!(
            phi_project(&spec, &[0], std::slice::from_ref(&a)).unwrap()[0].coords(),
            &[2]
        );
        assert_eq!(phi_project(&spec, &[0, 1], std::slice::from_ref(&a)).unwrap()[0], a);
        assert!(phi_project(&spec, &[], std::slice::from_ref(&a)).unwrap()[0].is_identity());
        assert!(phi_project(&spec, &[2], &[a]).is_err());
    }
}
