//! Almost arithmetical progressions.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

/// `L = y + (l_minus ∪ l_star ∪ l_plus)` with `l_star = {0, d, ..., ld}`,
/// `l_minus ⊆ [-m, -1]` and `l_plus ⊆ max(l_star) + [1, m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AapDecomposition {
    pub y: i64,
    pub d: u32,
    pub m: u32,
    pub l_minus: Vec<i64>,
    pub l_star: Vec<i64>,
    pub l_plus: Vec<i64>,
}

impl AapDecomposition {
    /// `y + (l_minus ∪ l_star ∪ l_plus)`, sorted.
    pub fn reconstruct(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .l_minus
            .iter()
            .chain(&self.l_star)
            .chain(&self.l_plus)
            .map(|v| self.y + v)
            .collect();
        out.sort_unstable();
        out
    }

    /// Checks every structural condition against the decomposed set.
    pub fn is_valid_for(&self, set: &[i64]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        let d = self.d as i64;
        let m = self.m as i64;
        let top = self.l_star.last().copied().unwrap_or(0);
        self.d > 0
            && self.reconstruct() == s
            && self.l_star.first() == Some(&0)
            && self.l_star.windows(2).all(|w| w[1] - w[0] == d)
            && self.l_minus.iter().all(|&v| (-m..=-1).contains(&v))
            && self.l_plus.iter().all(|&v| (top + 1..=top + m).contains(&v))
            && s.iter().all(|&v| (v - self.y).rem_euclid(d) == 0)
    }
}

/// Decomposes `set` as an AAP with bound `M` as small as possible.
///
/// With `d` given, `None` when the elements are not congruent modulo `d`.
/// Without `d`, every divisor of the gcd of successive differences is tried
/// and the smallest `M` wins, ties going to the smaller difference. Ties in
/// `M` for a fixed difference go to the smaller shift `y`.
pub fn aap_decompose(set: &[i64], d: Option<u32>) -> Option<AapDecomposition> {
    let s: Vec<i64> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if s.is_empty() {
        return None;
    }
    match d {
        Some(d) => decompose_with(&s, d),
        None => {
            let g = s.windows(2).fold(0u64, |g, w| g.gcd(&((w[1] - w[0]) as u64)));
            let g = if g == 0 { 1 } else { g };
            (1..=g)
                .filter(|c| g % c == 0)
                .filter_map(|c| decompose_with(&s, u32::try_from(c).ok()?))
                .min_by_key(|a| (a.m, a.d))
        }
    }
}

fn decompose_with(s: &[i64], d: u32) -> Option<AapDecomposition> {
    if d == 0 {
        return None;
    }
    let step = d as i64;
    if s.iter().any(|&v| (v - s[0]).rem_euclid(step) != 0) {
        return None;
    }
    let (lo, hi) = (s[0], s[s.len() - 1]);
    // maximal runs with difference d; sub-runs never lower M
    let mut best: Option<(u64, usize, usize)> = None;
    let mut start = 0;
    for i in 0..s.len() {
        if i + 1 == s.len() || s[i + 1] - s[i] != step {
            let m = ((s[start] - lo) as u64).max((hi - s[i]) as u64);
            if best.is_none_or(|(bm, _, _)| m < bm) {
                best = Some((m, start, i));
            }
            start = i + 1;
        }
    }
    let (m, a, b) = best?;
    let y = s[a];
    Some(AapDecomposition {
        y,
        d,
        m: u32::try_from(m).ok()?,
        l_minus: s[..a].iter().map(|v| v - y).collect(),
        l_star: s[a..=b].iter().map(|v| v - y).collect(),
        l_plus: s[b + 1..].iter().map(|v| v - y).collect(),
    })
}
