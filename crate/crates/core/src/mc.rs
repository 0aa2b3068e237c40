//! Monte Carlo estimation of the influence index for committees too large to
//! enumerate.
//!
//! Each sample draws a profile under impartial culture, evaluates the winner
//! once, then perturbs every player in turn to one uniformly drawn different
//! ranking. The fraction of perturbations that change the winner is an
//! unbiased estimate of the unnormalized index.
//!
//! Samples are split into fixed chunks of [`MC_CHUNK`]; chunk `k` draws from
//! ChaCha8 stream `k` of the configured seed. Hit counts are merged by integer
//! addition, so a report depends only on `(committee, seed, samples)` and
//! never on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::committee::{Committee, Rule};
use crate::error::{Error, Result};
use crate::ranking::{factorial, RankingSpace};
use crate::tally::Tally;

pub const MC_CHUNK: u64 = 4096;

/// Generator description recorded in every report.
pub const GENERATOR: &str =
    "chacha8 (rand_chacha 0.9) seed_from_u64(seed), stream = chunk index, 4096 samples per chunk";

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub confidence: f64,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig {
            samples,
            seed,
            confidence: 0.95,
            workers: None,
        }
    }

    pub fn with_confidence(mut self, confidence: f64) -> Self {
        self.confidence = confidence;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Invalid("samples must be at least 1".into()));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::Invalid(format!(
                "confidence must lie strictly between 0 and 1, got {}",
                self.confidence
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::Invalid("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Two-sided standard normal quantile for the given confidence level.
pub fn z_value(confidence: f64) -> f64 {
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    normal.inverse_cdf(0.5 + confidence / 2.0)
}

/// Ratio `(m! - 1) / (m! - (m-1)!)` turning the unnormalized index into the
/// normalized one.
pub fn normalization_factor(m: usize) -> f64 {
    (factorial(m) - 1) as f64 / (factorial(m) - factorial(m - 1)) as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct McPlayerEstimate {
    pub player: usize,
    pub weight: u64,
    pub hit_count: u64,
    pub unnormalized_estimate: f64,
    pub normalized_estimate: f64,
    pub ci_half_width: f64,
    /// Set when the normalized estimate exceeds 1, which only sampling noise
    /// can cause; the value is reported unclamped.
    pub exceeds_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McPowerReport {
    pub rule: Rule,
    pub m: usize,
    pub samples: u64,
    pub seed: u64,
    pub confidence: f64,
    pub generator: &'static str,
    pub players: Vec<McPlayerEstimate>,
}

impl McPowerReport {
    pub fn normalized(&self) -> Vec<f64> {
        self.players.iter().map(|p| p.normalized_estimate).collect()
    }
}

fn simulate_chunk(
    committee: &Committee,
    space: &RankingSpace,
    seed: u64,
    chunk: u64,
    len: u64,
) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let rule = committee.rule();
    let weights = committee.weights();
    let count = space.len();
    let mut hits = vec![0u64; weights.len()];
    let mut codes = vec![0usize; weights.len()];
    let mut tally = Tally::empty(space.m());
    for _ in 0..len {
        tally.clear();
        for (code, &w) in codes.iter_mut().zip(weights) {
            *code = rng.random_range(0..count);
            tally.add(space, *code, w);
        }
        let base = rule.winner_from_tally(&tally);
        for ((hit, &code), &w) in hits.iter_mut().zip(&codes).zip(weights) {
            let mut other = rng.random_range(0..count - 1);
            if other >= code {
                other += 1;
            }
            if w == 0 {
                continue;
            }
            tally.remove(space, code, w);
            tally.add(space, other, w);
            if rule.winner_from_tally(&tally) != base {
                *hit += 1;
            }
            tally.remove(space, other, w);
            tally.add(space, code, w);
        }
    }
    hits
}

pub fn influence_mc(committee: &Committee, config: &McConfig) -> Result<McPowerReport> {
    config.validate()?;
    let space = RankingSpace::new(committee.m())?;
    let chunks = config.samples.div_ceil(MC_CHUNK);
    let n = committee.n();
    let run = || {
        (0..chunks)
            .into_par_iter()
            .map(|k| {
                let len = MC_CHUNK.min(config.samples - k * MC_CHUNK);
                simulate_chunk(committee, &space, config.seed, k, len)
            })
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let hits = match config.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    let scale = normalization_factor(committee.m());
    let z = z_value(config.confidence);
    let samples = config.samples as f64;
    let players = hits
        .into_iter()
        .zip(committee.weights())
        .enumerate()
        .map(|(player, (hit_count, &weight))| {
            let rate = hit_count as f64 / samples;
            let normalized = rate * scale;
            McPlayerEstimate {
                player,
                weight,
                hit_count,
                unnormalized_estimate: rate,
                normalized_estimate: normalized,
                ci_half_width: z * (rate * (1.0 - rate) / samples).sqrt() * scale,
                exceeds_bound: normalized > 1.0,
            }
        })
        .collect();
    Ok(McPowerReport {
        rule: committee.rule(),
        m: committee.m(),
        samples: config.samples,
        seed: config.seed,
        confidence: config.confidence,
        generator: GENERATOR,
        players,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Significance {
    pub z: f64,
    pub significant: bool,
}

/// Two-proportion z-test on one player's hit rates in two independent runs,
/// at the first report's confidence level.
pub fn difference_significant(
    a: &McPowerReport,
    b: &McPowerReport,
    player: usize,
) -> Result<Significance> {
    if a.m != b.m {
        return Err(Error::Invalid(format!(
            "reports use different numbers of alternatives ({} vs {})",
            a.m, b.m
        )));
    }
    let (Some(pa), Some(pb)) = (a.players.get(player), b.players.get(player)) else {
        return Err(Error::Invalid(format!(
            "player {player} missing from a report"
        )));
    };
    let (na, nb) = (a.samples as f64, b.samples as f64);
    let pooled = (pa.hit_count + pb.hit_count) as f64 / (na + nb);
    let se = (pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb)).sqrt();
    let z = if se > 0.0 {
        (pa.unnormalized_estimate - pb.unnormalized_estimate) / se
    } else {
        0.0
    };
    Ok(Significance {
        z,
        significant: z.abs() >= z_value(a.confidence),
    })
}
