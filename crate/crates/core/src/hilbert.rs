//! Hilbert bases of homogeneous linear Diophantine systems.
//!
//! The solver is the Contejean–Devie completion procedure: starting from the
//! unit vectors, a candidate `p` with defect `A p != 0` is extended by `e_j`
//! only when `<A p, A e_j> < 0`, and any candidate dominating an already
//! accepted solution is discarded. Levels are processed by total degree, so
//! solutions are accepted in graded order and are minimal when accepted.
//!
//! Siblings are generated in column order and each one freezes the columns of
//! the siblings before it, so its subtree never raises them. A node is dropped
//! early when some equation can no longer be moved toward zero by its
//! unfrozen columns.
//!
//! Rows may be congruences `a . x ≡ 0 (mod n)`. Each such row gets one slack
//! column with coefficient `-n` after reducing the row into `[0, n)`; the
//! slack is determined by `x`, so projecting it away preserves minimality.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp;
use crate::monoid::ExponentVector;

/// Default cap on generated search states.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// `A x = 0`, where some rows may instead read `A_i x ≡ 0 (mod n_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiophantineSystem {
    matrix: Vec<Vec<i64>>,
    moduli: Vec<Option<u32>>,
}

impl DiophantineSystem {
    pub fn new(matrix: Vec<Vec<i64>>, moduli: Vec<Option<u32>>) -> Result<Self> {
        if matrix.is_empty() || matrix[0].is_empty() {
            return Err(Error::InvalidArgument(
                "system needs at least one row and one column".into(),
            ));
        }
        let cols = matrix[0].len();
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged coefficient matrix".into()));
        }
        if moduli.len() != matrix.len() {
            return Err(Error::InvalidArgument("moduli must align with rows".into()));
        }
        if moduli.iter().flatten().any(|&m| m < 2) {
            return Err(Error::InvalidArgument("moduli must be >= 2".into()));
        }
        Ok(DiophantineSystem { matrix, moduli })
    }

    /// A system of equations only.
    pub fn homogeneous(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let rows = matrix.len();
        Self::new(matrix, vec![None; rows])
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn moduli(&self) -> &[Option<u32>] {
        &self.moduli
    }

    pub fn is_solution(&self, x: &[u32]) -> bool {
        self.matrix.iter().zip(&self.moduli).all(|(row, m)| {
            let s: i128 = row.iter().zip(x).map(|(a, &v)| *a as i128 * v as i128).sum();
            match m {
                None => s == 0,
                Some(n) => s.rem_euclid(*n as i128) == 0,
            }
        })
    }

    /// The same system with columns reordered: new column `k` is old column `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        DiophantineSystem {
            matrix: self
                .matrix
                .iter()
                .map(|r| perm.iter().map(|&j| r[j]).collect())
                .collect(),
            moduli: self.moduli.clone(),
        }
    }

    /// Equation-only extension with one slack column per congruence row.
    fn extended(&self) -> Vec<Vec<i64>> {
        let slacks: Vec<usize> = (0..self.rows()).filter(|&i| self.moduli[i].is_some()).collect();
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut out: Vec<i64> = match self.moduli[i] {
                    None => row.clone(),
                    Some(n) => row.iter().map(|a| a.rem_euclid(n as i64)).collect(),
                };
                for &s in &slacks {
                    out.push(if s == i { -(self.moduli[i].unwrap() as i64) } else { 0 });
                }
                out
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HilbertOptions {
    pub node_cap: u64,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions {
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// Minimal nonzero nonnegative solutions, in graded lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertBasis {
    pub solutions: Vec<ExponentVector>,
    pub system: DiophantineSystem,
    /// False when the node cap stopped the search; `solutions` is then a
    /// subset of the basis.
    pub complete: bool,
    pub nodes: u64,
}

/// One breadth-first level stored column-flat. For node `i`, `pairing`
/// caches `<A p, A e_k>` for every column `k` and `norm` is `|A p|^2`, so
/// both the branching test and the solution test are constant time.
#[derive(Default)]
struct Level {
    width: usize,
    words: usize,
    rows: usize,
    coords: Vec<u32>,
    residual: Vec<i64>,
    pairing: Vec<i64>,
    norm: Vec<i64>,
    frozen: Vec<u64>,
}

impl Level {
    fn new(width: usize, rows: usize) -> Self {
        Level {
            width,
            words: width.div_ceil(64),
            rows,
            ..Level::default()
        }
    }

    fn len(&self) -> usize {
        self.norm.len()
    }

    fn coords(&self, i: usize) -> &[u32] {
        &self.coords[i * self.width..(i + 1) * self.width]
    }

    fn residual(&self, i: usize) -> &[i64] {
        &self.residual[i * self.rows..(i + 1) * self.rows]
    }

    fn pairing(&self, i: usize) -> &[i64] {
        &self.pairing[i * self.width..(i + 1) * self.width]
    }

    fn frozen(&self, i: usize) -> &[u64] {
        &self.frozen[i * self.words..(i + 1) * self.words]
    }

    fn push(&mut self, coords: &[u32], residual: &[i64], pairing: &[i64], norm: i64, frozen: &[u64]) {
        self.coords.extend_from_slice(coords);
        self.residual.extend_from_slice(residual);
        self.pairing.extend_from_slice(pairing);
        self.norm.push(norm);
        self.frozen.extend_from_slice(frozen);
    }

    fn append(&mut self, other: Level) {
        self.coords.extend(other.coords);
        self.residual.extend(other.residual);
        self.pairing.extend(other.pairing);
        self.norm.extend(other.norm);
        self.frozen.extend(other.frozen);
    }

    /// Sorts by coordinates and merges repeated vectors; a vector reached
    /// along several paths keeps only the components frozen on all of them.
    fn sorted_unique(self) -> Level {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.par_sort_unstable_by(|&a, &b| self.coords(a).cmp(self.coords(b)));
        let mut out = Level::new(self.width, self.rows);
        let mut last: Option<usize> = None;
        for i in order {
            if let Some(l) = last {
                if self.coords(l) == self.coords(i) {
                    let k = out.len() - 1;
                    for (a, b) in out.frozen[k * out.words..].iter_mut().zip(self.frozen(i)) {
                        *a &= b;
                    }
                    continue;
                }
            }
            out.push(
                self.coords(i),
                self.residual(i),
                self.pairing(i),
                self.norm[i],
                self.frozen(i),
            );
            last = Some(i);
        }
        out
    }
}

/// Whether some equation's residual cannot move toward zero using only the
/// unfrozen columns, in which case no solution lies in the subtree.
fn stuck(residual: &[i64], frozen: &[u64], columns: &[Vec<i64>]) -> bool {
    residual.iter().enumerate().any(|(r, &v)| {
        v != 0
            && columns
                .iter()
                .enumerate()
                .all(|(j, col)| frozen[j / 64] >> (j % 64) & 1 == 1 || col[r].signum() != -v.signum())
    })
}

/// Computes the Hilbert basis of `system`.
///
/// Fails only on arithmetic overflow; an exhausted node cap yields a partial
/// basis with `complete == false`.
pub fn hilbert_basis(system: &DiophantineSystem, opts: &HilbertOptions) -> Result<HilbertBasis> {
    let ext = system.extended();
    let n_ext = ext[0].len();
    let n = system.cols();
    let overflow = || Error::Overflow("hilbert basis");
    let mut gram = vec![vec![0i64; n_ext]; n_ext];
    for (j, row) in gram.iter_mut().enumerate() {
        for (k, g) in row.iter_mut().enumerate() {
            let mut acc: i64 = 0;
            for r in &ext {
                acc = r[j]
                    .checked_mul(r[k])
                    .and_then(|v| acc.checked_add(v))
                    .ok_or_else(overflow)?;
            }
            *g = acc;
        }
    }

    let mut accepted: Vec<Vec<u32>> = Vec::new();
    let columns: Vec<Vec<i64>> = (0..n_ext).map(|j| ext.iter().map(|r| r[j]).collect()).collect();
    let mut frontier = Level::new(n_ext, ext.len());
    for j in 0..n_ext {
        let mut coords = vec![0; n_ext];
        coords[j] = 1;
        let mut frozen = vec![0u64; frontier.words];
        for i in 0..j {
            frozen[i / 64] |= 1 << (i % 64);
        }
        frontier.push(&coords, &columns[j], &gram[j], gram[j][j], &frozen);
    }
    let mut nodes = frontier.len() as u64;
    let mut complete = true;

    while frontier.len() > 0 {
        let open: Vec<usize> = (0..frontier.len())
            .filter(|&i| {
                if frontier.norm[i] == 0 {
                    accepted.push(frontier.coords(i).to_vec());
                    false
                } else {
                    true
                }
            })
            .collect();
        // a parent dominates no accepted solution, so its child p + e_j can
        // only dominate those with b_j == p_j + 1
        let mut by_column: Vec<Vec<&[u32]>> = vec![Vec::new(); n_ext];
        for b in &accepted {
            for (j, col) in by_column.iter_mut().enumerate() {
                if b[j] > 0 {
                    col.push(b);
                }
            }
        }

        let parent = &frontier;
        let expanded: Vec<Result<Level>> = open
            .par_chunks(256)
            .map(|chunk| {
                let mut out = Level::new(n_ext, ext.len());
                let mut coords = vec![0u32; n_ext];
                let mut residual = vec![0i64; ext.len()];
                let mut child_frozen = vec![0u64; parent.words];
                let mut pairing = vec![0i64; n_ext];
                let mut frozen = vec![0u64; parent.words];
                for &i in chunk {
                    let p = parent.coords(i);
                    let pp = parent.pairing(i);
                    // earlier siblings are frozen in later siblings' subtrees
                    frozen.copy_from_slice(parent.frozen(i));
                    for j in 0..n_ext {
                        if pp[j] >= 0 || frozen[j / 64] >> (j % 64) & 1 == 1 {
                            continue;
                        }
                        child_frozen.copy_from_slice(&frozen);
                        frozen[j / 64] |= 1 << (j % 64);
                        let cj = p[j].checked_add(1).ok_or_else(overflow)?;
                        let dominated = by_column[j]
                            .iter()
                            .any(|b| b[j] == cj && b.iter().zip(p).enumerate().all(|(k, (bk, pk))| k == j || bk <= pk));
                        if dominated {
                            continue;
                        }
                        for ((dst, r), a) in residual.iter_mut().zip(parent.residual(i)).zip(&columns[j]) {
                            *dst = r.checked_add(*a).ok_or_else(overflow)?;
                        }
                        if stuck(&residual, &child_frozen, &columns) {
                            continue;
                        }
                        coords.copy_from_slice(p);
                        coords[j] = cj;
                        for ((dst, x), g) in pairing.iter_mut().zip(pp).zip(&gram[j]) {
                            *dst = x.checked_add(*g).ok_or_else(overflow)?;
                        }
                        // dotting with A p' shows a nonzero p' whose pairing is
                        // nonnegative on every unfrozen column has no solution below it
                        let idle = (0..n_ext).all(|k| pairing[k] >= 0 || child_frozen[k / 64] >> (k % 64) & 1 == 1);
                        let norm = parent.norm[i]
                            .checked_add(2 * pp[j])
                            .and_then(|v| v.checked_add(gram[j][j]))
                            .ok_or_else(overflow)?;
                        if norm != 0 && idle {
                            continue;
                        }
                        out.push(&coords, &residual, &pairing, norm, &child_frozen);
                    }
                }
                Ok(out)
            })
            .collect();

        let mut next = Level::new(n_ext, ext.len());
        for batch in expanded {
            next.append(batch?);
        }
        let next = next.sorted_unique();
        nodes += next.len() as u64;
        if nodes > opts.node_cap {
            complete = false;
            break;
        }
        frontier = next;
    }

    let mut solutions: Vec<ExponentVector> = accepted
        .into_iter()
        .map(|c| ExponentVector::new(c[..n].to_vec()))
        .collect();
    sort_graded(&mut solutions);
    Ok(HilbertBasis {
        solutions,
        system: system.clone(),
        complete,
        nodes,
    })
}

pub(crate) fn sort_graded(v: &mut [ExponentVector]) {
    v.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
}

/// Whether every nonzero solution with all coordinates `<= bound` is a
/// nonnegative integer combination of the basis.
pub fn verify_basis(basis: &HilbertBasis, bound: u32) -> bool {
    find_undecomposed(basis, bound).is_none()
}

/// A nonzero solution inside the box that dominates no basis element, if any.
///
/// Every solution in a down-closed box decomposes iff each nonzero one
/// dominates some basis element (induct on the total degree), so the search
/// walks only the order ideal of vectors dominating nothing. The equations
/// are put in reduced echelon form: free columns are enumerated, pruned by
/// the reachable range of each row, and pivot columns are then forced.
pub fn find_undecomposed(basis: &HilbertBasis, bound: u32) -> Option<Vec<u32>> {
    let sys = &basis.system;
    let n = sys.cols();
    let equations: Vec<Vec<i64>> = (0..sys.rows())
        .filter(|&r| sys.moduli[r].is_none())
        .map(|r| sys.matrix[r].clone())
        .collect();
    let (reduced, pivots) = lp::reduced_echelon(&equations);
    let narrow: Option<Vec<Vec<i128>>> = reduced
        .iter()
        .map(|r| r.iter().map(|v| i128::try_from(v).ok()).collect())
        .collect();
    let (rows, pivots) = match narrow {
        Some(rows) => (rows, pivots),
        None => (
            equations
                .iter()
                .map(|r| r.iter().map(|&v| v as i128).collect())
                .collect(),
            Vec::new(),
        ),
    };
    let free = n - pivots.len();
    // visiting order: free columns, then the pivot of each row in turn
    let order: Vec<usize> = (0..n)
        .filter(|c| !pivots.contains(c))
        .chain(pivots.iter().copied())
        .collect();
    let rows: Vec<Vec<i128>> = rows.iter().map(|r| order.iter().map(|&c| r[c]).collect()).collect();
    let elems: Vec<Vec<u32>> = basis
        .solutions
        .iter()
        .map(|b| order.iter().map(|&c| b.coords()[c]).collect())
        .collect();

    let words = elems.len().div_ceil(64).max(1);
    let bitset = |keep: &dyn Fn(&[u32]) -> bool| {
        let mut out = vec![0u64; words];
        for (k, b) in elems.iter().enumerate() {
            if keep(b) {
                out[k / 64] |= 1 << (k % 64);
            }
        }
        out
    };
    // below[i][v]: elements whose coordinate i is at most v
    let below: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|i| (0..=bound).map(|v| bitset(&|b| b[i] <= v)).collect())
        .collect();
    // settled[i]: elements supported on the first i positions
    let settled: Vec<Vec<u64>> = (0..=n).map(|i| bitset(&|b| b[i..].iter().all(|&c| c == 0))).collect();
    // suffix ranges of each row over the unassigned positions
    let mut lo = vec![vec![0i128; n + 1]; rows.len()];
    let mut hi = vec![vec![0i128; n + 1]; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        for j in (0..n).rev() {
            let a = row[j] * bound as i128;
            lo[r][j] = lo[r][j + 1] + a.min(0);
            hi[r][j] = hi[r][j + 1] + a.max(0);
        }
    }

    fn meets(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }

    struct Walk<'a> {
        sys: &'a DiophantineSystem,
        order: Vec<usize>,
        rows: Vec<Vec<i128>>,
        free: usize,
        below: Vec<Vec<Vec<u64>>>,
        settled: Vec<Vec<u64>>,
        lo: Vec<Vec<i128>>,
        hi: Vec<Vec<i128>>,
        bound: u32,
        point: Vec<u32>,
        residual: Vec<i128>,
        // alive[i]: elements still below the point on the first i positions
        alive: Vec<Vec<u64>>,
    }

    impl Walk<'_> {
        fn set(&mut self, i: usize, v: u32) {
            let delta = v as i128 - self.point[i] as i128;
            for (res, row) in self.residual.iter_mut().zip(&self.rows) {
                *res += row[i] * delta;
            }
            self.point[i] = v;
        }

        /// Restricts the alive set by `point[i] = v`; false once the prefix
        /// dominates an element supported on it.
        fn narrow(&mut self, i: usize, v: u32) -> bool {
            let (head, tail) = self.alive.split_at_mut(i + 1);
            for ((dst, x), y) in tail[0].iter_mut().zip(&head[i]).zip(&self.below[i][v as usize]) {
                *dst = x & y;
            }
            !meets(&self.alive[i + 1], &self.settled[i + 1])
        }

        fn unpermuted(&self) -> Vec<u32> {
            let mut out = vec![0; self.point.len()];
            for (i, &c) in self.order.iter().enumerate() {
                out[c] = self.point[i];
            }
            out
        }

        fn in_range(&self, i: usize) -> bool {
            self.residual.iter().enumerate().all(|(r, res)| {
                let need = -res;
                need >= self.lo[r][i] && need <= self.hi[r][i]
            })
        }

        fn go(&mut self, i: usize) -> bool {
            if !self.in_range(i) {
                return false;
            }
            if i < self.free {
                for v in 0..=self.bound {
                    // a larger value would dominate the same element
                    if !self.narrow(i, v) {
                        break;
                    }
                    self.set(i, v);
                    if self.go(i + 1) {
                        return true;
                    }
                }
                self.set(i, 0);
                return false;
            }
            let n = self.point.len();
            let mut found = true;
            for i in self.free..n {
                let r = i - self.free;
                let need = -self.residual[r];
                let a = self.rows[r][i];
                let v = need / a;
                if need % a != 0 || v < 0 || v > self.bound as i128 || !self.narrow(i, v as u32) {
                    found = false;
                    break;
                }
                self.set(i, v as u32);
            }
            if found {
                found = self.point.iter().any(|&v| v > 0) && self.sys.is_solution(&self.unpermuted());
            }
            if !found {
                for i in self.free..n {
                    self.set(i, 0);
                }
            }
            found
        }
    }

    let width = rows.len();
    let mut alive = vec![vec![0u64; words]; n + 1];
    alive[0] = bitset(&|_| true);
    let mut walk = Walk {
        sys,
        order,
        rows,
        free,
        below,
        settled,
        lo,
        hi,
        bound,
        point: vec![0; n],
        residual: vec![0; width],
        alive,
    };
    if walk.go(0) {
        Some(walk.unpermuted())
    } else {
        None
    }
}

/// Whether no basis element is coordinatewise below a different one.
pub fn is_pairwise_minimal(solutions: &[ExponentVector]) -> bool {
    solutions
        .iter()
        .enumerate()
        .all(|(i, a)| solutions.iter().enumerate().all(|(j, b)| i == j || !b.divides(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_of(matrix: Vec<Vec<i64>>, moduli: Vec<Option<u32>>) -> Vec<Vec<u32>> {
        let sys = DiophantineSystem::new(matrix, moduli).unwrap();
        let hb = hilbert_basis(&sys, &HilbertOptions::default()).unwrap();
        assert!(hb.complete);
        let mut out: Vec<Vec<u32>> = hb.solutions.into_iter().map(|s| s.into_coords()).collect();
        out.sort();
        out
    }

    fn dominates(x: &[u32], b: &[u32]) -> bool {
        x.iter().zip(b).all(|(a, c)| a >= c)
    }

    /// Minimal nonzero solutions with coordinates `<= bound`, by exhaustive enumeration.
    fn brute_minimal(sys: &DiophantineSystem, bound: u32) -> Vec<Vec<u32>> {
        let bx = crate::monoid::SearchBox::uniform(sys.cols(), bound);
        let sols: Vec<Vec<u32>> = bx
            .iter()
            .map(|v| v.into_coords())
            .filter(|v| v.iter().any(|&c| c > 0) && sys.is_solution(v))
            .collect();
        let mut min: Vec<Vec<u32>> = sols
            .iter()
            .filter(|s| !sols.iter().any(|t| t != *s && dominates(s, t)))
            .cloned()
            .collect();
        min.sort();
        min
    }

    #[test]
    fn two_minus_three() {
        assert_eq!(basis_of(vec![vec![2, -3]], vec![None]), vec![vec![3, 2]]);
        let sys = DiophantineSystem::homogeneous(vec![vec![2, -3]]).unwrap();
        assert_eq!(brute_minimal(&sys, 10), vec![vec![3, 2]]);
    }

    #[test]
    fn balanced_pair() {
        assert_eq!(basis_of(vec![vec![1, -1]], vec![None]), vec![vec![1, 1]]);
    }

    #[test]
    fn zero_sum_over_z3() {
        let got = basis_of(vec![vec![1, 2]], vec![Some(3)]);
        let sys = DiophantineSystem::new(vec![vec![1, 2]], vec![Some(3)]).unwrap();
        assert_eq!(got, brute_minimal(&sys, 3));
        assert_eq!(got, vec![vec![0, 3], vec![1, 1], vec![3, 0]]);
    }

    #[test]
    fn verify_accepts_correct_and_rejects_truncated() {
        let sys = DiophantineSystem::homogeneous(vec![vec![2, -3]]).unwrap();
        let hb = hilbert_basis(&sys, &HilbertOptions::default()).unwrap();
        assert!(verify_basis(&hb, 20));

        let sys = DiophantineSystem::homogeneous(vec![vec![1, -1]]).unwrap();
        let hb = hilbert_basis(&sys, &HilbertOptions::default()).unwrap();
        assert!(verify_basis(&hb, 50));

        let sys = DiophantineSystem::new(vec![vec![1, 2]], vec![Some(3)]).unwrap();
        let truncated = HilbertBasis {
            solutions: vec![ExponentVector::new(vec![3, 0])],
            system: sys,
            complete: false,
            nodes: 0,
        };
        assert!(!verify_basis(&truncated, 3));
        let w = find_undecomposed(&truncated, 3).unwrap();
        assert!(truncated.system.is_solution(&w));
        assert!(!ExponentVector::new(vec![3, 0]).divides(&ExponentVector::new(w)));
    }

    #[test]
    fn zero_column_gives_unit_solution() {
        assert_eq!(
            basis_of(vec![vec![0, 1, -1]], vec![None]),
            vec![vec![0, 1, 1], vec![1, 0, 0]]
        );
    }

    #[test]
    fn node_cap_flags_partial() {
        let sys = DiophantineSystem::homogeneous(vec![vec![7, -11, 3, -5]]).unwrap();
        let hb = hilbert_basis(&sys, &HilbertOptions { node_cap: 10 }).unwrap();
        assert!(!hb.complete);
        assert!(is_pairwise_minimal(&hb.solutions));
        assert!(hb.solutions.iter().all(|s| sys.is_solution(s.coords())));
    }

    #[test]
    fn dropping_an_element_exposes_it() {
        let sys = DiophantineSystem::new(
            vec![vec![2, -1, 3, -4, 1], vec![1, 2, -2, 1, 0], vec![1, 1, 1, 1, 2]],
            vec![None, None, Some(3)],
        )
        .unwrap();
        let hb = hilbert_basis(&sys, &HilbertOptions::default()).unwrap();
        let top = hb.solutions.iter().flat_map(|s| s.coords().to_vec()).max().unwrap();
        assert!(hb.complete && verify_basis(&hb, top + 2));
        for k in 0..hb.solutions.len() {
            let mut cut = hb.clone();
            let gone = cut.solutions.remove(k);
            assert_eq!(find_undecomposed(&cut, top).as_deref(), Some(gone.coords()));
        }
    }

    #[test]
    fn matches_brute_force_on_small_systems() {
        type Case = (Vec<Vec<i64>>, Vec<Option<u32>>);
        let cases: Vec<Case> = vec![
            (vec![vec![1, 1, -2]], vec![None]),
            (vec![vec![3, -1, -2]], vec![None]),
            (vec![vec![1, -1, 0], vec![0, 1, -1]], vec![None, None]),
            (vec![vec![1, 1, 1]], vec![Some(2)]),
            (vec![vec![1, 2, 3]], vec![Some(4)]),
            (vec![vec![1, 0, 1], vec![0, 1, 1]], vec![Some(2), Some(2)]),
        ];
        for (m, md) in cases {
            let sys = DiophantineSystem::new(m, md).unwrap();
            let got = basis_of(sys.matrix.clone(), sys.moduli.clone());
            assert_eq!(got, brute_minimal(&sys, 6), "system {:?}", sys);
        }
    }
}
