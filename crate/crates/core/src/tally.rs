//! Weighted tallies.
//!
//! A weighted committee behaves like an anonymous rule applied to `w_i` copies
//! of each player's ranking. Copies are never materialized: each ranking adds
//! its player's weight to the first-place counts and to the pairwise matrix,
//! which together determine all five rules.

use crate::committee::Committee;
use crate::error::Result;
use crate::ranking::{Profile, RankingSpace};

/// `d[x][y]`: total weight of players ranking `x` above `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseTally {
    m: usize,
    d: Vec<u64>,
}

impl PairwiseTally {
    fn zeros(m: usize) -> Self {
        PairwiseTally {
            m,
            d: vec![0; m * m],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.d[x * self.m + y]
    }

    /// Strict weighted majority of `x` over `y`.
    #[inline]
    pub fn beats(&self, x: usize, y: usize) -> bool {
        self.get(x, y) > self.get(y, x)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.d.chunks(self.m).map(<[u64]>::to_vec).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    firsts: Vec<u64>,
    pairwise: PairwiseTally,
    total: u64,
}

impl Tally {
    pub(crate) fn empty(m: usize) -> Self {
        Tally {
            firsts: vec![0; m],
            pairwise: PairwiseTally::zeros(m),
            total: 0,
        }
    }

    /// Tally of `profile` under the committee's weights.
    pub fn weighted(committee: &Committee, profile: &Profile) -> Result<Self> {
        committee.check_profile(profile)?;
        let m = committee.m();
        let mut tally = Tally::empty(m);
        for (ranking, &w) in profile.rankings().iter().zip(committee.weights()) {
            let order = ranking.order();
            tally.firsts[order[0]] += w;
            for (k, &x) in order.iter().enumerate() {
                for &y in &order[k + 1..] {
                    tally.pairwise.d[x * m + y] += w;
                }
            }
            tally.total += w;
        }
        Ok(tally)
    }

    pub(crate) fn clear(&mut self) {
        self.firsts.fill(0);
        self.pairwise.d.fill(0);
        self.total = 0;
    }

    #[inline]
    pub(crate) fn add(&mut self, space: &RankingSpace, code: usize, w: u64) {
        self.firsts[space.top(code)] += w;
        for &p in space.above(code) {
            self.pairwise.d[p as usize] += w;
        }
        self.total += w;
    }

    #[inline]
    pub(crate) fn remove(&mut self, space: &RankingSpace, code: usize, w: u64) {
        self.firsts[space.top(code)] -= w;
        for &p in space.above(code) {
            self.pairwise.d[p as usize] -= w;
        }
        self.total -= w;
    }

    pub fn m(&self) -> usize {
        self.firsts.len()
    }

    /// Weight of players ranking each alternative first.
    pub fn firsts(&self) -> &[u64] {
        &self.firsts
    }

    pub fn pairwise(&self) -> &PairwiseTally {
        &self.pairwise
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Borda score of `a`: weighted count of alternatives ranked below it.
    #[inline]
    pub fn borda_score(&self, a: usize) -> u64 {
        let m = self.m();
        self.pairwise.d[a * m..(a + 1) * m].iter().sum()
    }

    pub fn borda_scores(&self) -> Vec<u64> {
        (0..self.m()).map(|a| self.borda_score(a)).collect()
    }

    /// Number of alternatives each one beats by strict weighted majority.
    pub fn copeland_scores(&self) -> Vec<u64> {
        let m = self.m();
        (0..m)
            .map(|a| {
                (0..m)
                    .filter(|&b| b != a && self.pairwise.beats(a, b))
                    .count() as u64
            })
            .collect()
    }
}
