//! A small exact simplex solver over the rationals.
//!
//! Two-phase tableau method with Bland's rule, so it terminates on the highly
//! degenerate programs that arise from homogeneous cones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) struct LpSolution {
    pub values: Vec<BigRational>,
    pub objective: BigRational,
}

pub(crate) enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

struct Tableau {
    // rows × (cols + 1); last column is the right-hand side
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, pv) in line.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost . z` over the current basis; `allowed` masks entering columns.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &dyn Fn(usize) -> bool) -> bool {
        let rhs = self.cols;
        loop {
            // reduced cost c_j - c_B B^-1 A_j
            let entering = (0..self.cols).filter(|&j| allowed(j)).find(|&j| {
                let mut rc = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !self.t[r][j].is_zero() {
                        rc -= &cost[b] * &self.t[r][j];
                    }
                }
                rc.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.t.len() {
                if self.t[r][j].is_positive() {
                    let ratio = &self.t[r][rhs] / &self.t[r][j];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, j),
            }
        }
    }
}

/// Maximizes `c . z` subject to `A z = b`, `z >= 0`.
pub(crate) fn maximize(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let total = n + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let sign = if b[i] < 0 { -1 } else { 1 };
        let mut line: Vec<BigRational> = row.iter().map(|&v| q(sign * v)).collect();
        line.extend((0..m).map(|k| {
            if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        line.push(q(sign * b[i]));
        t.push(line);
    }
    let mut tab = Tableau {
        t,
        basis: (n..total).collect(),
        cols: total,
    };

    // phase one: maximize -(sum of artificials)
    let phase1: Vec<BigRational> = (0..total)
        .map(|j| if j >= n { q(-1) } else { BigRational::zero() })
        .collect();
    tab.optimize(&phase1, &|_| true);
    let infeasibility: BigRational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .map(|(r, _)| tab.t[r][total].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining zero-valued artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.t.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let phase2: Vec<BigRational> = (0..total)
        .map(|j| if j < n { q(c[j]) } else { BigRational::zero() })
        .collect();
    if !tab.optimize(&phase2, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut values = vec![BigRational::zero(); n];
    for (r, &bj) in tab.basis.iter().enumerate() {
        if bj < n {
            values[bj] = tab.t[r][total].clone();
        }
    }
    let objective = values.iter().zip(c).map(|(v, &cj)| v * q(cj)).sum();
    LpOutcome::Optimal(LpSolution { values, objective })
}

/// Rank of an integer matrix, by exact elimination.
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    reduced_echelon(rows).1.len()
}

/// Reduced row echelon form: the nonzero rows, each scaled to a primitive
/// integer row with positive pivot, and their pivot columns.
pub(crate) fn reduced_echelon(rows: &[Vec<i64>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    for c in 0..cols {
        let rank = pivots.len();
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivots.push(c);
    }
    let scaled = m
        .iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let den = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let mut ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&den / v.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            let sign = if ints[c].is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            for v in &mut ints {
                *v = &*v / &g * &sign;
            }
            ints
        })
        .collect();
    (scaled, pivots)
}
