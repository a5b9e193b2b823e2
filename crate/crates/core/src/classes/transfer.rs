//! Merging primes that lie in the same class.
//!
//! If `class(e_p) = class(e_q)`, membership of `x` only depends on
//! `x_p + x_q`, so the map adding up the exponents of merged primes carries
//! `H` onto a monoid over fewer primes with the same sets of lengths.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{ExponentVector, MonoidSpec, Profile};

use super::table::ClassTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub spec: MonoidSpec,
    /// New prime index of every original prime.
    pub merge_map: Vec<usize>,
    /// Original primes behind each new prime.
    pub groups: Vec<Vec<usize>>,
}

impl Transfer {
    pub fn is_identity(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    pub fn apply(&self, x: &ExponentVector) -> ExponentVector {
        let mut out = vec![0u32; self.groups.len()];
        for (i, &v) in x.coords().iter().enumerate() {
            out[self.merge_map[i]] += v;
        }
        ExponentVector::new(out)
    }
}

impl Serialize for MonoidSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Threshold and period after which the class of `n e_p` repeats, for every prime.
fn ray_bounds(spec: &MonoidSpec, table: &ClassTable) -> Result<(u32, u32)> {
    Ok(match spec {
        MonoidSpec::Periodic(p) => (p.alpha(), p.modulus()),
        MonoidSpec::Numerical(n) => (n.conductor(), 1),
        MonoidSpec::Block(b) => (0, (0..b.subset().len()).fold(1, |m, i| m.lcm(&b.element_order(i)))),
        MonoidSpec::Generators(_) => {
            let mut alpha = 0;
            let mut m = 1u32;
            for ev in &table.stabilization {
                let (Some(t), Some(p)) = (ev.threshold, ev.period) else {
                    return Err(Error::NotCertified);
                };
                alpha = alpha.max(t);
                m = m.lcm(&p);
            }
            (alpha, m)
        }
    })
}

pub fn beta_transfer(spec: &MonoidSpec, table: &ClassTable) -> Result<Transfer> {
    if !table.certified_finite {
        return Err(Error::NotCertified);
    }
    let dim = spec.dim();
    let units: Vec<usize> = (0..dim)
        .map(|i| {
            table
                .class_of(&ExponentVector::unit(dim, i))
                .ok_or_else(|| Error::InvalidArgument("class table box must contain every prime".into()))
        })
        .collect::<Result<_>>()?;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut merge_map = vec![0usize; dim];
    for i in 0..dim {
        match (0..groups.len()).find(|&g| units[groups[g][0]] == units[i]) {
            Some(g) => {
                groups[g].push(i);
                merge_map[i] = g;
            }
            None => {
                merge_map[i] = groups.len();
                groups.push(vec![i]);
            }
        }
    }
    if groups.len() == dim {
        return Ok(Transfer {
            spec: spec.clone(),
            merge_map,
            groups,
        });
    }

    let (alpha, modulus) = ray_bounds(spec, table)?;
    let labels = spec.prime_labels();
    let new_labels: Vec<String> = groups
        .iter()
        .map(|g| g.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("|"))
        .collect();
    let proto = crate::monoid::PeriodicSpec::new(new_labels.clone(), alpha, modulus, vec![vec![(0, 0); groups.len()]])
        .map_err(|e| Error::TransferInconsistent(e.to_string()))?;
    let entries = proto.entry_values();

    let product = |a: usize, b: usize| {
        table.cayley[a][b].ok_or_else(|| Error::TransferInconsistent("class product outside the table".into()))
    };
    // powers[g][v] = class of v e_g for v up to the largest representative value
    let top = entries.iter().map(|&e| proto.representative(e)).max().unwrap_or(0) as usize;
    let mut powers: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
    for g in &groups {
        let unit = units[g[0]];
        let mut row = vec![table.identity_class];
        for v in 1..=top {
            row.push(product(row[v - 1], unit)?);
        }
        powers.push(row);
    }

    let mut accept: Vec<Profile> = Vec::new();
    let mut idx = vec![0usize; groups.len()];
    loop {
        let profile: Profile = idx.iter().map(|&k| entries[k]).collect();
        let mut class = table.identity_class;
        for (g, &e) in profile.iter().enumerate() {
            class = product(class, powers[g][proto.representative(e) as usize])?;
        }
        if spec.contains_unchecked(&table.classes[class].representative) {
            accept.push(profile);
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < entries.len() {
                break;
            }
            idx[k] = 0;
        }
        if idx.iter().all(|&v| v == 0) {
            break;
        }
    }
    let merged = MonoidSpec::periodic(
        &new_labels.iter().map(String::as_str).collect::<Vec<_>>(),
        alpha,
        modulus,
        accept,
    )
    .map_err(|e| Error::TransferInconsistent(e.to_string()))?;
    let transfer = Transfer {
        spec: merged,
        merge_map,
        groups,
    };
    for x in table.search_box.iter() {
        if spec.contains_unchecked(&x) != transfer.spec.contains_unchecked(&transfer.apply(&x)) {
            return Err(Error::TransferInconsistent(format!(
                "membership of {x} is not preserved"
            )));
        }
    }
    Ok(transfer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_table;
    use crate::factor::set_of_lengths;
    use crate::monoid::{enumerate_atoms, SearchBox};

    fn total_degree() -> MonoidSpec {
        // all elements except the two primes themselves
        let mut accept = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                if a + b != 1 {
                    accept.push(vec![(a, 0), (b, 0)]);
                }
            }
        }
        MonoidSpec::periodic(&["p", "q"], 2, 1, accept).unwrap()
    }

    #[test]
    fn symmetric_primes_merge_and_keep_lengths() {
        let spec = total_degree();
        let b = SearchBox::uniform(2, 6);
        let table = class_table(&spec, &b, 6).unwrap();
        let t = beta_transfer(&spec, &table).unwrap();
        assert_eq!(t.groups, vec![vec![0, 1]]);
        assert_eq!(t.spec.dim(), 1);
        let atoms = enumerate_atoms(&spec, &SearchBox::uniform(2, 8)).unwrap();
        let merged_atoms = enumerate_atoms(&t.spec, &SearchBox::uniform(1, 16)).unwrap();
        assert!(atoms.complete && merged_atoms.complete);
        for x in SearchBox::uniform(2, 5).iter() {
            if spec.contains_unchecked(&x) {
                let l = set_of_lengths(&atoms, &x).unwrap();
                let m = set_of_lengths(&merged_atoms, &t.apply(&x)).unwrap();
                assert_eq!(l.values, m.values, "{x}");
            }
        }
    }

    #[test]
    fn distinct_classes_give_identity() {
        let spec = MonoidSpec::numerical(&[2, 3]).unwrap();
        let table = class_table(&spec, &SearchBox::uniform(1, 10), 10).unwrap();
        let t = beta_transfer(&spec, &table).unwrap();
        assert!(t.is_identity());
        assert_eq!(t.spec, spec);
    }

    #[test]
    fn requires_certificate() {
        let spec = MonoidSpec::generators(&["p", "q"], vec![vec![1, 1]]).unwrap();
        let table = class_table(&spec, &SearchBox::uniform(2, 5), 5).unwrap();
        assert!(matches!(beta_transfer(&spec, &table), Err(Error::NotCertified)));
    }
}
