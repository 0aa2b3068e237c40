//! Exact a priori influence by full enumeration of preference profiles.
//!
//! A player's swing count is the number of pairs `(P, P'_i)` with
//! `P'_i != P_i` at which replacing `P_i` by `P'_i` changes the winner. Under
//! impartial culture the unnormalized index divides it by
//! `(m!)^n (m! - 1)`; the normalized index divides by
//! `(m!)^n (m! - (m-1)!)`, the count a dictator attains, so that dictators
//! score 1 and null players 0.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::committee::{Alternative, Committee, Rule};
use crate::enumerate::{Odometer, CHUNK};
use crate::error::{Error, Result};
use crate::ranking::{factorial, profile_count, Profile, Ranking, RankingSpace, MAX_ALTERNATIVES};
use crate::rules::winner;

/// Default bound on the number of profiles enumerated.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

/// Largest player count accepted by [`pbi_binary`].
pub const MAX_PBI_PLAYERS: usize = 30;

pub type Rational = Ratio<u64>;

pub(crate) fn checked_profile_count(m: usize, n: usize, cap: u64) -> Result<u64> {
    match profile_count(m, n) {
        Some(size) if size <= cap => Ok(size),
        Some(size) => Err(Error::EnumerationTooLarge {
            size: size.to_string(),
            cap,
        }),
        None => Err(Error::EnumerationTooLarge {
            size: format!("({}!)^{}", m, n),
            cap,
        }),
    }
}

/// Winner of every profile, indexed by profile code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeTable {
    m: usize,
    n: usize,
    winners: Vec<u8>,
}

impl OutcomeTable {
    pub fn build(committee: &Committee) -> Result<Self> {
        Self::build_with_cap(committee, DEFAULT_ENUMERATION_CAP)
    }

    pub fn build_with_cap(committee: &Committee, cap: u64) -> Result<Self> {
        let (m, n) = (committee.m(), committee.n());
        let size = checked_profile_count(m, n, cap)?;
        let space = RankingSpace::new(m)?;
        let rule = committee.rule();
        let weights = committee.weights();
        let mut winners = vec![0u8; size as usize];
        winners
            .par_chunks_mut(CHUNK as usize)
            .enumerate()
            .for_each(|(k, chunk)| {
                let mut odo = Odometer::at(&space, weights, k as u64 * CHUNK);
                for slot in chunk.iter_mut() {
                    *slot = rule.winner_from_tally(odo.tally()).index() as u8;
                    odo.advance();
                }
            });
        Ok(OutcomeTable { m, n, winners })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.winners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.winners.is_empty()
    }

    pub fn winner(&self, code: u64) -> Alternative {
        Alternative(self.winners[code as usize] as usize)
    }

    pub fn winners(&self) -> &[u8] {
        &self.winners
    }

    /// Swing count of every player.
    ///
    /// Fixing everyone but player `i` leaves a slice of `m!` profiles. If
    /// `c_a` of them elect `a`, the ordered pairs within the slice with
    /// different winners number `(m!)^2 - sum_a c_a^2`.
    pub fn swing_counts(&self) -> Vec<u64> {
        let radix = factorial(self.m) as usize;
        let slices = self.winners.len() / radix;
        (0..self.n)
            .map(|i| {
                let stride = radix.pow(i as u32);
                (0..slices)
                    .into_par_iter()
                    .with_min_len(1024)
                    .map(|j| {
                        let base = j % stride + (j / stride) * stride * radix;
                        let mut counts = [0u64; MAX_ALTERNATIVES];
                        for d in 0..radix {
                            counts[self.winners[base + d * stride] as usize] += 1;
                        }
                        let same: u64 = counts.iter().map(|c| c * c).sum();
                        (radix * radix) as u64 - same
                    })
                    .sum()
            })
            .collect()
    }
}

/// Whether replacing player `i`'s ranking by `replacement` changes the winner.
pub fn delta_indicator(
    committee: &Committee,
    profile: &Profile,
    i: usize,
    replacement: &Ranking,
) -> Result<bool> {
    committee.check_profile(profile)?;
    if i >= committee.n() {
        return Err(Error::Invalid(format!(
            "player {i} out of range for {} players",
            committee.n()
        )));
    }
    if replacement.m() != committee.m() {
        return Err(Error::Invalid(
            "replacement ranks the wrong number of alternatives".into(),
        ));
    }
    if &profile.rankings()[i] == replacement {
        return Err(Error::Invalid(format!(
            "replacement equals player {i}'s current ranking"
        )));
    }
    let perturbed = profile.with_ranking(i, replacement.clone());
    Ok(winner(committee, profile)? != winner(committee, &perturbed)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerPower {
    pub player: usize,
    pub weight: u64,
    pub swing_count: u64,
    pub unnormalized: Rational,
    pub normalized: Rational,
}

impl PlayerPower {
    pub fn unnormalized_f64(&self) -> f64 {
        ratio_to_f64(self.unnormalized)
    }

    pub fn normalized_f64(&self) -> f64 {
        ratio_to_f64(self.normalized)
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPowerReport {
    pub rule: Rule,
    pub m: usize,
    pub players: Vec<PlayerPower>,
}

impl ExactPowerReport {
    pub fn normalized(&self) -> Vec<Rational> {
        self.players.iter().map(|p| p.normalized).collect()
    }

    pub fn normalized_f64(&self) -> Vec<f64> {
        self.players
            .iter()
            .map(PlayerPower::normalized_f64)
            .collect()
    }
}

pub fn influence_exact(committee: &Committee) -> Result<ExactPowerReport> {
    influence_exact_with_cap(committee, DEFAULT_ENUMERATION_CAP)
}

pub fn influence_exact_with_cap(committee: &Committee, cap: u64) -> Result<ExactPowerReport> {
    let table = OutcomeTable::build_with_cap(committee, cap)?;
    Ok(report_from_swings(committee, &table.swing_counts()))
}

pub(crate) fn report_from_swings(committee: &Committee, swings: &[u64]) -> ExactPowerReport {
    let m = committee.m();
    let profiles = profile_count(m, committee.n()).expect("checked by the caller");
    let perturbations = factorial(m) - 1;
    let dictator = factorial(m) - factorial(m - 1);
    let players = swings
        .iter()
        .zip(committee.weights())
        .enumerate()
        .map(|(player, (&swing_count, &weight))| PlayerPower {
            player,
            weight,
            swing_count,
            unnormalized: Ratio::new(swing_count, profiles * perturbations),
            normalized: Ratio::new(swing_count, profiles * dictator),
        })
        .collect();
    ExactPowerReport {
        rule: committee.rule(),
        m,
        players,
    }
}

/// Penrose-Banzhaf index of the weighted majority game with quota `w(N)/2`.
///
/// Player `i` is critical for `S` (not containing `i`) when
/// `w(S) < w(N)/2 <= w(S) + w_i`.
pub fn pbi_binary(weights: &[u64]) -> Result<Vec<Rational>> {
    let n = weights.len();
    if n == 0 || n > MAX_PBI_PLAYERS {
        return Err(Error::Invalid(format!(
            "binary Penrose-Banzhaf index needs 1..={MAX_PBI_PLAYERS} players, got {n}"
        )));
    }
    let total: u64 = weights.iter().sum();
    let subsets = 1u64 << (n - 1);
    Ok((0..n)
        .map(|i| {
            let others: Vec<u64> = weights
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| w)
                .collect();
            // Gray-code walk over subsets of the other players.
            let mut sum = 0u64;
            let mut critical = u64::from(2 * weights[i] >= total && total > 0);
            for k in 1..subsets {
                let bit = k.trailing_zeros() as usize;
                let gray = k ^ (k >> 1);
                if gray >> bit & 1 == 1 {
                    sum += others[bit];
                } else {
                    sum -= others[bit];
                }
                if 2 * sum < total && 2 * (sum + weights[i]) >= total {
                    critical += 1;
                }
            }
            Ratio::new(critical, subsets)
        })
        .collect())
}

/// Checks that at two alternatives the normalized index equals the binary
/// Penrose-Banzhaf index of the induced weighted majority game.
pub fn verify_pbi_coincidence(weights: &[u64], rule: Rule) -> Result<bool> {
    let committee = Committee::new(2, weights.to_vec(), rule)?;
    let report = influence_exact(&committee)?;
    Ok(report.normalized() == pbi_binary(weights)?)
}
