//! Classes of `x ~ y  <=>  (x + F) ∩ H  and  (y + F) ∩ H  agree after translation`,
//! i.e. `{f : x + f in H} = {f : y + f in H}`, tabulated over a box.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{ExponentVector, MonoidSpec, SearchBox};

/// Membership probes allowed for one table.
pub const MAX_PROBE_CELLS: u128 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    /// Lexicographically smallest member of the class inside the box.
    pub representative: ExponentVector,
    pub members_in_box: u64,
}

/// Eventual periodicity of classes along the rays `x, x + e_p, x + 2 e_p, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayEvidence {
    pub prime: String,
    /// Largest onset over all rays in the box, if every ray showed a period.
    pub threshold: Option<u32>,
    /// Least common multiple of the ray periods.
    pub period: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Threshold and modulus of a periodic pattern bound the classes.
    PeriodicPattern,
    /// Block monoid classes are the group sums.
    GroupSum,
    /// Beyond the conductor every element has the same class.
    Conductor,
    /// Ray periodicity observed and confirmed over the whole box.
    RayEvidence,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTable {
    pub primes: Vec<String>,
    pub classes: Vec<ClassInfo>,
    /// `cayley[i][j]` is the class of `rep_i + rep_j`; `None` when that class
    /// has no member in the box.
    pub cayley: Vec<Vec<Option<usize>>>,
    pub identity_class: usize,
    #[serde(rename = "box")]
    pub search_box: SearchBox,
    pub probe: u32,
    pub stabilization: Vec<RayEvidence>,
    pub certified_finite: bool,
    pub certificate: Certificate,
    /// Elements where periodicity or closure failed (at most a handful).
    pub boundary_shell: Vec<ExponentVector>,
    #[serde(skip)]
    class_of: Vec<u32>,
}

/// How two elements are compared.
enum Keyer<'a> {
    /// Truncated fingerprint `{f in [0, probe]^d : x + f in H}` as a bitset.
    Fingerprint { spec: &'a MonoidSpec, probe: SearchBox },
    /// Sum in the class group (block monoids).
    Sum(&'a crate::monoid::BlockSpec),
}

impl Keyer<'_> {
    fn key(&self, x: &ExponentVector) -> Vec<u64> {
        match self {
            Keyer::Fingerprint { spec, probe } => {
                let cells = probe.count() as usize;
                let mut bits = vec![0u64; cells.div_ceil(64)];
                for (i, f) in probe.iter().enumerate() {
                    if spec.contains_unchecked(&(x + &f)) {
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
                bits
            }
            Keyer::Sum(b) => b.sum(x).into_iter().map(u64::from).collect(),
        }
    }
}

pub fn class_table(spec: &MonoidSpec, search_box: &SearchBox, probe: u32) -> Result<ClassTable> {
    spec.check_dim(&ExponentVector::zeros(search_box.dim()))?;
    let probe_box = SearchBox::uniform(spec.dim(), probe);
    let keyer = match spec {
        MonoidSpec::Block(b) => Keyer::Sum(b),
        _ => Keyer::Fingerprint {
            spec,
            probe: probe_box.clone(),
        },
    };
    let cells = match keyer {
        Keyer::Sum(_) => search_box.count(),
        Keyer::Fingerprint { .. } => search_box.count().saturating_mul(probe_box.count()),
    };
    if cells > MAX_PROBE_CELLS {
        return Err(Error::ClassTableTooLarge {
            cells,
            limit: MAX_PROBE_CELLS,
        });
    }
    let n = search_box.count() as usize;
    let keys: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| keyer.key(&search_box.element_at(i)))
        .collect();

    // lexicographic scan: first member seen is the representative
    let mut index: HashMap<&[u64], u32> = HashMap::new();
    let mut classes: Vec<ClassInfo> = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for (i, k) in keys.iter().enumerate() {
        let c = *index.entry(k.as_slice()).or_insert_with(|| {
            classes.push(ClassInfo {
                representative: search_box.element_at(i),
                members_in_box: 0,
            });
            (classes.len() - 1) as u32
        });
        classes[c as usize].members_in_box += 1;
        class_of.push(c);
    }

    let mut shell = Vec::new();
    let cayley: Vec<Vec<Option<usize>>> = (0..classes.len())
        .map(|i| {
            (0..classes.len())
                .map(|j| {
                    let s = &classes[i].representative + &classes[j].representative;
                    if search_box.contains(&s) {
                        Some(class_of[search_box.linear_index(&s)] as usize)
                    } else {
                        index.get(keyer.key(&s).as_slice()).map(|&c| c as usize)
                    }
                })
                .collect()
        })
        .collect();
    for (i, row) in cayley.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_none() && shell.len() < 8 {
                shell.push(&classes[i].representative + &classes[j].representative);
            }
        }
    }
    drop(index);

    let mut table = ClassTable {
        primes: spec.prime_labels(),
        classes,
        cayley,
        identity_class: class_of[0] as usize,
        search_box: search_box.clone(),
        probe,
        stabilization: Vec::new(),
        certified_finite: false,
        certificate: Certificate::None,
        boundary_shell: shell,
        class_of,
    };
    table.stabilization = table.ray_evidence();
    let closed = table.boundary_shell.is_empty();
    let a_priori = match spec {
        MonoidSpec::Periodic(p) => {
            let need = p.alpha() + p.modulus();
            (search_box.bounds().iter().all(|&b| b >= need) && probe >= need).then_some(Certificate::PeriodicPattern)
        }
        MonoidSpec::Block(_) => Some(Certificate::GroupSum),
        MonoidSpec::Numerical(ns) => {
            let c = ns.conductor();
            (search_box.bounds()[0] >= c && probe >= c).then_some(Certificate::Conductor)
        }
        MonoidSpec::Generators(_) => None,
    };
    match a_priori {
        Some(cert) if closed => {
            table.certified_finite = true;
            table.certificate = cert;
        }
        _ => {
            let failures = table.periodicity_failures();
            if closed && failures.is_empty() && table.stabilization.iter().all(|e| e.period.is_some()) {
                table.certified_finite = true;
                table.certificate = Certificate::RayEvidence;
            } else {
                let room = 8usize.saturating_sub(table.boundary_shell.len());
                table.boundary_shell.extend(failures.into_iter().take(room));
            }
        }
    }
    Ok(table)
}

/// Smallest `(onset, period)` with `seq[n + period] = seq[n]` for all `n >= onset`,
/// requiring the period to be seen at least twice.
fn ray_period(seq: &[u32]) -> Option<(u32, u32)> {
    let len = seq.len();
    for p in 1..len {
        let mut onset = len - p;
        while onset > 0 && seq[onset - 1] == seq[onset - 1 + p] {
            onset -= 1;
        }
        if onset + 2 * p < len {
            return Some((onset as u32, p as u32));
        }
    }
    None
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of a box element.
    pub fn class_of(&self, x: &ExponentVector) -> Option<usize> {
        self.search_box
            .contains(x)
            .then(|| self.class_of[self.search_box.linear_index(x)] as usize)
    }

    fn ray_evidence(&self) -> Vec<RayEvidence> {
        let bounds = self.search_box.bounds();
        (0..bounds.len())
            .map(|i| {
                let mut threshold = 0u32;
                let mut period = 1u32;
                let mut found = true;
                let mut starts = self.search_box.clone();
                let mut sb = starts.bounds().to_vec();
                sb[i] = 0;
                starts = SearchBox::new(sb);
                for x in starts.iter() {
                    let mut y = x.into_coords();
                    let seq: Vec<u32> = (0..=bounds[i])
                        .map(|v| {
                            y[i] = v;
                            self.class_of[self.search_box.linear_index(&ExponentVector::new(y.clone()))]
                        })
                        .collect();
                    match ray_period(&seq) {
                        Some((t, p)) => {
                            threshold = threshold.max(t);
                            period = period.lcm(&p);
                        }
                        None => {
                            found = false;
                            break;
                        }
                    }
                }
                RayEvidence {
                    prime: self.primes[i].clone(),
                    threshold: found.then_some(threshold),
                    period: found.then_some(period),
                }
            })
            .collect()
    }

    /// Box elements `x` with `x_p >= threshold` whose class changes after adding `period * e_p`.
    fn periodicity_failures(&self) -> Vec<ExponentVector> {
        let bounds = self.search_box.bounds();
        let mut out = Vec::new();
        for x in self.search_box.iter() {
            for (i, ev) in self.stabilization.iter().enumerate() {
                let (Some(t), Some(p)) = (ev.threshold, ev.period) else {
                    continue;
                };
                if x[i] >= t && x[i] + p <= bounds[i] {
                    let mut y = x.coords().to_vec();
                    y[i] += p;
                    let y = ExponentVector::new(y);
                    if self.class_of(&x) != self.class_of(&y) {
                        out.push(y);
                        if out.len() >= 8 {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    /// Exhaustive associativity over defined products.
    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let left = self.cayley[a][b].and_then(|ab| self.cayley[ab][c]);
                    let right = self.cayley[b][c].and_then(|bc| self.cayley[a][bc]);
                    left.is_none() || right.is_none() || left == right
                })
            })
        })
    }

    pub fn identity_is_neutral(&self) -> bool {
        let e = self.identity_class;
        (0..self.len()).all(|a| self.cayley[e][a] == Some(a) && self.cayley[a][e] == Some(a))
    }

    /// `class(x + e_p) = class(x) * class(e_p)` for every box element with `x + e_p` in the box.
    pub fn is_congruence(&self) -> bool {
        let dim = self.search_box.dim();
        let units: Vec<Option<usize>> = (0..dim).map(|i| self.class_of(&ExponentVector::unit(dim, i))).collect();
        let bounds = self.search_box.bounds().to_vec();
        (0..self.class_of.len()).into_par_iter().all(|idx| {
            let x = self.search_box.element_at(idx);
            let cx = self.class_of[idx] as usize;
            (0..dim).all(|i| {
                if x[i] >= bounds[i] {
                    return true;
                }
                let Some(ci) = units[i] else { return true };
                let mut y = x.coords().to_vec();
                y[i] += 1;
                self.cayley[cx][ci] == self.class_of(&ExponentVector::new(y))
            })
        })
    }

    /// Label of a class for tables: its representative.
    pub fn label(&self, c: usize) -> String {
        self.classes[c].representative.to_string()
    }

    /// Cayley table as CSV, rows and columns labelled by representatives.
    pub fn cayley_csv(&self) -> String {
        let quote = |s: String| format!("\"{s}\"");
        let mut out = String::from("class");
        for c in 0..self.len() {
            out.push(',');
            out.push_str(&quote(self.label(c)));
        }
        out.push('\n');
        for (a, row) in self.cayley.iter().enumerate() {
            out.push_str(&quote(self.label(a)));
            for c in row {
                out.push(',');
                if let Some(c) = c {
                    out.push_str(&quote(self.label(*c)));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Verdict on the reduced class semigroup. Finiteness is never refuted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CMonoidVerdict {
    Certified,
    Inconclusive,
}

/// With trivial units the reduced table is the full table.
pub fn reduced_class_semigroup(table: &ClassTable) -> (ClassTable, CMonoidVerdict) {
    let verdict = if table.certified_finite {
        CMonoidVerdict::Certified
    } else {
        CMonoidVerdict::Inconclusive
    };
    (table.clone(), verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn both_or_neither() -> MonoidSpec {
        MonoidSpec::periodic(
            &["p", "q"],
            1,
            1,
            vec![
                vec![(0, 0), (0, 0)],
                vec![(1, 0), (1, 0)],
                vec![(1, 0), (2, 0)],
                vec![(2, 0), (1, 0)],
                vec![(2, 0), (2, 0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn numerical_two_three() {
        let spec = MonoidSpec::numerical(&[2, 3]).unwrap();
        let t = class_table(&spec, &SearchBox::uniform(1, 10), 10).unwrap();
        assert_eq!(t.len(), 3);
        let reps: Vec<u32> = t.classes.iter().map(|c| c.representative[0]).collect();
        assert_eq!(reps, vec![0, 1, 2]);
        assert_eq!(t.cayley[1][1], Some(2));
        assert_eq!(t.cayley[1][2], Some(2));
        assert_eq!(t.cayley[2][2], Some(2));
        assert!(t.certified_finite);
        assert!(t.is_associative() && t.identity_is_neutral() && t.is_congruence());
        assert_eq!(t.stabilization[0].threshold, Some(2));
        assert_eq!(t.stabilization[0].period, Some(1));
        assert_eq!(reduced_class_semigroup(&t).1, CMonoidVerdict::Certified);
    }

    #[test]
    fn factorial_monoid_has_one_class() {
        let spec = MonoidSpec::generators(&["p", "q"], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let t = class_table(&spec, &SearchBox::uniform(2, 4), 4).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.identity_is_neutral());
        assert!(t.certified_finite);
    }

    #[test]
    fn periodic_pattern_classes() {
        let t = class_table(&both_or_neither(), &SearchBox::uniform(2, 4), 4).unwrap();
        let reps: Vec<ExponentVector> = t.classes.iter().map(|c| c.representative.clone()).collect();
        assert_eq!(reps, vec![ev(&[0, 0]), ev(&[0, 1]), ev(&[1, 0]), ev(&[1, 1])]);
        assert_eq!(t.classes.iter().map(|c| c.members_in_box).sum::<u64>(), 25);
        assert!(t.certified_finite);
        assert_eq!(t.certificate, Certificate::PeriodicPattern);
        assert!(t.is_associative() && t.is_congruence());
    }

    #[test]
    fn single_generator_is_inconclusive() {
        let spec = MonoidSpec::generators(&["p", "q"], vec![vec![1, 1]]).unwrap();
        let t = class_table(&spec, &SearchBox::uniform(2, 6), 6).unwrap();
        assert!(!t.certified_finite);
        assert!(!t.boundary_shell.is_empty());
        assert_eq!(reduced_class_semigroup(&t).1, CMonoidVerdict::Inconclusive);
    }

    #[test]
    fn block_classes_are_group_sums() {
        let t = class_table(&MonoidSpec::cyclic_block(4).unwrap(), &SearchBox::uniform(3, 5), 5).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.certified_finite && t.is_associative() && t.is_congruence());
    }

    #[test]
    fn refinement_never_merges() {
        let spec = MonoidSpec::numerical(&[3, 5]).unwrap();
        let small = class_table(&spec, &SearchBox::uniform(1, 6), 3).unwrap();
        let big = class_table(&spec, &SearchBox::uniform(1, 9), 9).unwrap();
        for x in 0..=6u32 {
            for y in 0..=6u32 {
                let (x, y) = (ev(&[x]), ev(&[y]));
                if small.class_of(&x) != small.class_of(&y) {
                    assert_ne!(big.class_of(&x), big.class_of(&y));
                }
            }
        }
    }

    #[test]
    fn too_large() {
        let spec = MonoidSpec::cyclic_block(7).unwrap();
        assert!(matches!(
            class_table(
                &MonoidSpec::generators(&["a", "b", "c", "d", "e", "f"], vec![vec![1, 1, 1, 1, 1, 1]]).unwrap(),
                &SearchBox::uniform(6, 12),
                12
            ),
            Err(Error::ClassTableTooLarge { .. })
        ));
        assert!(class_table(&spec, &SearchBox::uniform(6, 4), 4).is_ok());
    }
}
