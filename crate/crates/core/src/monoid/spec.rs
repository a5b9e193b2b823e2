use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;

use super::ExponentVector;
use crate::error::{Error, Result, SpecError};

/// A numerical semigroup `<g_1, ..., g_k>` inside `F({p}) = N_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSpec {
    generators: Vec<u32>,
    // membership of 0..conductor; everything at or past the conductor is in H
    small: Vec<bool>,
}

impl NumericalSpec {
    pub fn new(generators: &[u32]) -> Result<Self, SpecError> {
        if generators.is_empty() {
            return Err(SpecError::new("generators", "at least one generator is required"));
        }
        if let Some(i) = generators.iter().position(|&g| g == 0) {
            return Err(SpecError::new(
                format!("generators[{i}]"),
                "generators must be positive",
            ));
        }
        let g = generators.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(SpecError::new(
                "generators",
                format!("gcd of generators is {g}, must be 1"),
            ));
        }
        let mut gens: Vec<u32> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();

        // Frobenius number is below min * max, so the table up to there decides the rest.
        let limit = (gens[0] as usize) * (*gens.last().unwrap() as usize) + 1;
        let mut reach = vec![false; limit + 1];
        reach[0] = true;
        for n in 1..=limit {
            reach[n] = gens.iter().any(|&g| n >= g as usize && reach[n - g as usize]);
        }
        let conductor = reach.iter().rposition(|&r| !r).map_or(0, |f| f + 1);
        reach.truncate(conductor);
        Ok(NumericalSpec {
            generators: gens,
            small: reach,
        })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Smallest `c` with `c + N_0 ⊆ H`.
    pub fn conductor(&self) -> u32 {
        self.small.len() as u32
    }

    pub fn contains(&self, n: u64) -> bool {
        (n as usize) >= self.small.len() || self.small[n as usize]
    }
}

/// A submonoid of `F(P)` generated by an explicit finite list of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    primes: Vec<String>,
    gens: Vec<ExponentVector>,
}

impl GeneratorSpec {
    pub fn new(primes: Vec<String>, gens: Vec<ExponentVector>) -> Result<Self, SpecError> {
        check_labels(&primes)?;
        if gens.is_empty() {
            return Err(SpecError::new("gens", "at least one generator is required"));
        }
        let mut seen = HashSet::new();
        for (i, g) in gens.iter().enumerate() {
            if g.dim() != primes.len() {
                return Err(SpecError::new(
                    format!("gens[{i}]"),
                    format!("expected {} exponents, got {}", primes.len(), g.dim()),
                ));
            }
            if g.is_identity() {
                return Err(SpecError::new(format!("gens[{i}]"), "generator equals the identity"));
            }
            if !seen.insert(g.clone()) {
                return Err(SpecError::new(format!("gens[{i}]"), "duplicate generator"));
            }
        }
        Ok(GeneratorSpec { primes, gens })
    }

    pub fn primes(&self) -> &[String] {
        &self.primes
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn contains(&self, x: &ExponentVector) -> bool {
        representable(&self.gens, x)
    }
}

/// Whether `target` is a nonnegative integer combination of `gens`.
///
/// Depth-first over generators with multiplicity bounds from coordinatewise
/// division; exact for any finite generator list.
pub(crate) fn representable(gens: &[ExponentVector], target: &ExponentVector) -> bool {
    fn go(gens: &[ExponentVector], rest: &mut Vec<u32>) -> bool {
        if rest.iter().all(|&c| c == 0) {
            return true;
        }
        let Some((g, tail)) = gens.split_first() else {
            return false;
        };
        let bound = multiplicity_bound(g.coords(), rest);
        for k in (0..=bound).rev() {
            for (r, c) in rest.iter_mut().zip(g.coords()) {
                *r -= c * k;
            }
            let ok = go(tail, rest);
            for (r, c) in rest.iter_mut().zip(g.coords()) {
                *r += c * k;
            }
            if ok {
                return true;
            }
        }
        false
    }
    if gens.iter().any(|g| g.dim() != target.dim()) {
        return false;
    }
    // generators touching a prime absent from the target can never be used
    let usable: Vec<ExponentVector> = gens.iter().filter(|g| g.divides(target)).cloned().collect();
    go(&usable, &mut target.coords().to_vec())
}

/// Largest `k` with `k * atom <= target` coordinatewise (0 for the identity atom).
pub(crate) fn multiplicity_bound(atom: &[u32], target: &[u32]) -> u32 {
    atom.iter()
        .zip(target)
        .filter(|(a, _)| **a > 0)
        .map(|(a, t)| t / a)
        .min()
        .unwrap_or(0)
}

/// The block monoid `B(G_0)` over `G = Z/n_1 + ... + Z/n_r`.
///
/// Elements are multiplicity vectors indexed by `G_0`; the ambient free
/// monoid is `F(G_0)` and membership is the zero-sum condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    cyclic_orders: Vec<u32>,
    subset: Vec<Vec<u32>>,
}

impl BlockSpec {
    pub fn new(cyclic_orders: Vec<u32>, subset: Vec<Vec<u32>>) -> Result<Self, SpecError> {
        if cyclic_orders.is_empty() {
            return Err(SpecError::new(
                "cyclic_orders",
                "at least one cyclic factor is required",
            ));
        }
        if let Some(i) = cyclic_orders.iter().position(|&n| n < 2) {
            return Err(SpecError::new(
                format!("cyclic_orders[{i}]"),
                "cyclic orders must be >= 2",
            ));
        }
        if subset.is_empty() {
            return Err(SpecError::new("subset", "subset must be nonempty"));
        }
        let mut seen = HashSet::new();
        for (i, g) in subset.iter().enumerate() {
            if g.len() != cyclic_orders.len() {
                return Err(SpecError::new(
                    format!("subset[{i}]"),
                    format!("expected {} residues, got {}", cyclic_orders.len(), g.len()),
                ));
            }
            for (j, (r, n)) in g.iter().zip(&cyclic_orders).enumerate() {
                if r >= n {
                    return Err(SpecError::new(
                        format!("subset[{i}][{j}]"),
                        format!("residue {r} is not in Z/{n}"),
                    ));
                }
            }
            if !seen.insert(g.clone()) {
                return Err(SpecError::new(format!("subset[{i}]"), "duplicate group element"));
            }
        }
        Ok(BlockSpec { cyclic_orders, subset })
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic_orders
    }

    pub fn subset(&self) -> &[Vec<u32>] {
        &self.subset
    }

    /// Order of the `i`-th element of `G_0` in `G`.
    pub fn element_order(&self, i: usize) -> u32 {
        self.subset[i]
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&r, &n)| n / r.gcd(&n))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Sum of the sequence in `G`, one residue per cyclic factor.
    pub fn sum(&self, x: &ExponentVector) -> Vec<u32> {
        self.cyclic_orders
            .iter()
            .enumerate()
            .map(|(j, &n)| {
                let s: u64 = x
                    .coords()
                    .iter()
                    .zip(&self.subset)
                    .map(|(&m, g)| m as u64 * g[j] as u64)
                    .sum();
                (s % n as u64) as u32
            })
            .collect()
    }

    pub fn contains(&self, x: &ExponentVector) -> bool {
        self.sum(x).iter().all(|&r| r == 0)
    }

    pub fn labels(&self) -> Vec<String> {
        self.subset
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(|r| r.to_string()).collect();
                format!("g[{}]", parts.join(","))
            })
            .collect()
    }
}

/// Truncated exponent profile of one prime: `(cap, res)` with
/// `cap = min(v, alpha + 1)` and `res = v mod m` when `v > alpha`, else 0.
pub type ProfileEntry = (u32, u32);

/// A per-prime truncated exponent profile.
pub type Profile = Vec<ProfileEntry>;

/// A submonoid of `F(P)` whose membership depends only on the truncated
/// profile of each exponent: the exact value up to the threshold `alpha`, and
/// the residue modulo `modulus` beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSpec {
    primes: Vec<String>,
    alpha: u32,
    modulus: u32,
    accept: BTreeSet<Profile>,
}

impl PeriodicSpec {
    pub fn new(primes: Vec<String>, alpha: u32, modulus: u32, accept: Vec<Profile>) -> Result<Self, SpecError> {
        check_labels(&primes)?;
        if modulus == 0 {
            return Err(SpecError::new("modulus", "modulus must be positive"));
        }
        let mut table = BTreeSet::new();
        for (i, profile) in accept.into_iter().enumerate() {
            if profile.len() != primes.len() {
                return Err(SpecError::new(
                    format!("accept[{i}]"),
                    format!("expected {} entries, got {}", primes.len(), profile.len()),
                ));
            }
            for (j, &(cap, res)) in profile.iter().enumerate() {
                let path = format!("accept[{i}][{j}]");
                if cap > alpha + 1 {
                    return Err(SpecError::new(
                        path,
                        format!("cap {cap} exceeds alpha + 1 = {}", alpha + 1),
                    ));
                }
                if cap <= alpha && res != 0 {
                    return Err(SpecError::new(path, "residue must be 0 when cap <= alpha"));
                }
                if res >= modulus {
                    return Err(SpecError::new(
                        path,
                        format!("residue {res} is not below modulus {modulus}"),
                    ));
                }
            }
            table.insert(profile);
        }
        let spec = PeriodicSpec {
            primes,
            alpha,
            modulus,
            accept: table,
        };
        let identity: Profile = vec![(0, 0); spec.primes.len()];
        if !spec.accept.contains(&identity) {
            return Err(SpecError::new("accept", "the identity profile must be accepted"));
        }
        for a in &spec.accept {
            for b in &spec.accept {
                let s = spec.profile_sum(a, b);
                if !spec.accept.contains(&s) {
                    return Err(SpecError::new(
                        "accept",
                        format!("not closed under addition: {a:?} + {b:?} = {s:?} is rejected"),
                    ));
                }
            }
        }
        Ok(spec)
    }

    pub fn primes(&self) -> &[String] {
        &self.primes
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn accept(&self) -> &BTreeSet<Profile> {
        &self.accept
    }

    pub fn truncate(&self, v: u32) -> ProfileEntry {
        if v <= self.alpha {
            (v, 0)
        } else {
            (self.alpha + 1, v % self.modulus)
        }
    }

    /// Smallest exponent with the given truncated profile.
    pub fn representative(&self, (cap, res): ProfileEntry) -> u32 {
        if cap <= self.alpha {
            cap
        } else {
            let start = self.alpha + 1;
            start + (res + self.modulus - start % self.modulus) % self.modulus
        }
    }

    pub fn profile(&self, x: &ExponentVector) -> Profile {
        x.coords().iter().map(|&v| self.truncate(v)).collect()
    }

    fn profile_sum(&self, a: &Profile, b: &Profile) -> Profile {
        a.iter()
            .zip(b)
            .map(|(&ea, &eb)| self.truncate(self.representative(ea) + self.representative(eb)))
            .collect()
    }

    /// Every truncated profile for one prime, in increasing order.
    pub fn entry_values(&self) -> Vec<ProfileEntry> {
        let mut out: Vec<ProfileEntry> = (0..=self.alpha).map(|c| (c, 0)).collect();
        out.extend((0..self.modulus).map(|r| (self.alpha + 1, r)));
        out
    }

    pub fn contains(&self, x: &ExponentVector) -> bool {
        self.accept.contains(&self.profile(x))
    }
}

fn check_labels(primes: &[String]) -> Result<(), SpecError> {
    if primes.is_empty() {
        return Err(SpecError::new("primes", "at least one prime is required"));
    }
    let mut seen = HashSet::new();
    for (i, p) in primes.iter().enumerate() {
        if !seen.insert(p) {
            return Err(SpecError::new(
                format!("primes[{i}]"),
                format!("duplicate prime label {p:?}"),
            ));
        }
    }
    Ok(())
}

/// A presentation of a reduced atomic monoid `H ⊆ F(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidSpec {
    Numerical(NumericalSpec),
    Generators(GeneratorSpec),
    Block(BlockSpec),
    Periodic(PeriodicSpec),
}

impl MonoidSpec {
    pub fn numerical(generators: &[u32]) -> Result<Self, SpecError> {
        NumericalSpec::new(generators).map(MonoidSpec::Numerical)
    }

    pub fn generators(primes: &[&str], gens: Vec<Vec<u32>>) -> Result<Self, SpecError> {
        GeneratorSpec::new(
            primes.iter().map(|s| s.to_string()).collect(),
            gens.into_iter().map(ExponentVector::new).collect(),
        )
        .map(MonoidSpec::Generators)
    }

    pub fn block(cyclic_orders: Vec<u32>, subset: Vec<Vec<u32>>) -> Result<Self, SpecError> {
        BlockSpec::new(cyclic_orders, subset).map(MonoidSpec::Block)
    }

    /// `Block(Z/n, Z/n \ {0})`.
    pub fn cyclic_block(n: u32) -> Result<Self, SpecError> {
        Self::block(vec![n], (1..n).map(|g| vec![g]).collect())
    }

    pub fn periodic(primes: &[&str], alpha: u32, modulus: u32, accept: Vec<Profile>) -> Result<Self, SpecError> {
        PeriodicSpec::new(primes.iter().map(|s| s.to_string()).collect(), alpha, modulus, accept)
            .map(MonoidSpec::Periodic)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MonoidSpec::Numerical(_) => "numerical",
            MonoidSpec::Generators(_) => "generators",
            MonoidSpec::Block(_) => "block",
            MonoidSpec::Periodic(_) => "periodic",
        }
    }

    /// Number of primes of the ambient free monoid.
    pub fn dim(&self) -> usize {
        match self {
            MonoidSpec::Numerical(_) => 1,
            MonoidSpec::Generators(g) => g.primes.len(),
            MonoidSpec::Block(b) => b.subset.len(),
            MonoidSpec::Periodic(p) => p.primes.len(),
        }
    }

    pub fn prime_labels(&self) -> Vec<String> {
        match self {
            MonoidSpec::Numerical(_) => vec!["p".to_string()],
            MonoidSpec::Generators(g) => g.primes.clone(),
            MonoidSpec::Block(b) => b.labels(),
            MonoidSpec::Periodic(p) => p.primes.clone(),
        }
    }

    pub fn check_dim(&self, x: &ExponentVector) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Membership without the dimension check.
    pub(crate) fn contains_unchecked(&self, x: &ExponentVector) -> bool {
        match self {
            MonoidSpec::Numerical(n) => n.contains(x[0] as u64),
            MonoidSpec::Generators(g) => g.contains(x),
            MonoidSpec::Block(b) => b.contains(x),
            MonoidSpec::Periodic(p) => p.contains(x),
        }
    }
}
