//! Strict rankings, preference profiles and their integer codes.
//!
//! A ranking over `m` alternatives is identified with its Lehmer code in
//! `[0, m!)`, ordered so that code 0 is the identity ranking (`abc…`) and codes
//! follow the lexicographic order of the permutations. A profile of `n`
//! rankings is a mixed-radix number with player 0 as the least significant
//! digit.

use std::fmt;

use crate::error::{Error, Result};

/// Largest number of alternatives supported.
pub const MAX_ALTERNATIVES: usize = 8;

/// Default display labels, `a` for alternative 0 and so on.
pub fn default_labels(m: usize) -> Vec<String> {
    (0..m)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// A strict preference ordering, most preferred alternative first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<usize>,
}

impl Ranking {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        if !(1..=MAX_ALTERNATIVES).contains(&m) {
            return Err(Error::Invalid(format!(
                "ranking must have between 1 and {MAX_ALTERNATIVES} alternatives, got {m}"
            )));
        }
        let mut seen = [false; MAX_ALTERNATIVES];
        for &a in &order {
            if a >= m || seen[a] {
                return Err(Error::Invalid(format!(
                    "{order:?} is not a permutation of 0..{m}"
                )));
            }
            seen[a] = true;
        }
        Ok(Ranking { order })
    }

    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m).collect(),
        }
    }

    /// Parses a ranking written as a string of labels, e.g. `"bca"`.
    ///
    /// Every label must be a single character.
    pub fn parse(s: &str, labels: &[String]) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut order = Vec::with_capacity(labels.len());
        let mut seen = vec![false; labels.len()];
        for c in &chars {
            let idx = labels
                .iter()
                .position(|l| l.chars().eq(std::iter::once(*c)))
                .ok_or_else(|| Error::UnknownLabel(c.to_string()))?;
            if seen[idx] {
                return Err(Error::DuplicateLabel(c.to_string()));
            }
            seen[idx] = true;
            order.push(idx);
        }
        if order.len() != labels.len() {
            return Err(Error::RankingLength {
                ranking: s.to_string(),
                found: chars.len(),
                expected: labels.len(),
            });
        }
        Ranking::new(order)
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn top(&self) -> usize {
        self.order[0]
    }

    /// Lehmer code of the ranking, in `[0, m!)`.
    pub fn code(&self) -> usize {
        let m = self.order.len();
        let mut code = 0;
        for k in 0..m {
            let smaller_later = self.order[k + 1..]
                .iter()
                .filter(|&&x| x < self.order[k])
                .count();
            code = code * (m - k) + smaller_later;
        }
        code
    }

    pub fn from_code(code: usize, m: usize) -> Result<Self> {
        if m == 0 || m > MAX_ALTERNATIVES || code as u64 >= factorial(m) {
            return Err(Error::Invalid(format!(
                "ranking code {code} out of range for m = {m}"
            )));
        }
        let mut digits = vec![0; m];
        let mut rest = code;
        for k in (0..m).rev() {
            let radix = m - k;
            digits[k] = rest % radix;
            rest /= radix;
        }
        let mut remaining: Vec<usize> = (0..m).collect();
        let order = digits.into_iter().map(|d| remaining.remove(d)).collect();
        Ok(Ranking { order })
    }

    /// Renders the ranking with the given labels, concatenated.
    pub fn display<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        DisplayRanking {
            ranking: self,
            labels,
        }
    }
}

struct DisplayRanking<'a> {
    ranking: &'a Ranking,
    labels: &'a [String],
}

impl fmt::Display for DisplayRanking<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.ranking.order {
            f.write_str(&self.labels[a])?;
        }
        Ok(())
    }
}

/// A preference profile: one ranking per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    rankings: Vec<Ranking>,
}

impl Profile {
    pub fn new(rankings: Vec<Ranking>) -> Result<Self> {
        let Some(first) = rankings.first() else {
            return Err(Error::Invalid(
                "a profile needs at least one ranking".into(),
            ));
        };
        let m = first.m();
        if rankings.iter().any(|r| r.m() != m) {
            return Err(Error::Invalid(
                "rankings in a profile must share the same alternatives".into(),
            ));
        }
        Ok(Profile { rankings })
    }

    pub fn parse<S: AsRef<str>>(rankings: &[S], labels: &[String]) -> Result<Self> {
        let rankings = rankings
            .iter()
            .map(|s| Ranking::parse(s.as_ref(), labels))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(rankings)
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn m(&self) -> usize {
        self.rankings[0].m()
    }

    /// Returns a copy with player `i`'s ranking replaced.
    pub fn with_ranking(&self, i: usize, ranking: Ranking) -> Self {
        let mut rankings = self.rankings.clone();
        rankings[i] = ranking;
        Profile { rankings }
    }

    /// Ranking codes, player 0 first.
    pub fn digits(&self) -> Vec<usize> {
        self.rankings.iter().map(Ranking::code).collect()
    }

    /// Mixed-radix code in `[0, (m!)^n)`, or `None` if it does not fit in 64 bits.
    pub fn code(&self) -> Option<u64> {
        let radix = factorial(self.m());
        self.rankings.iter().rev().try_fold(0u64, |acc, r| {
            acc.checked_mul(radix)?.checked_add(r.code() as u64)
        })
    }

    pub fn from_code(code: u64, m: usize, n: usize) -> Result<Self> {
        let size = profile_count(m, n);
        if size.is_some_and(|s| code >= s) {
            return Err(Error::Invalid(format!(
                "profile code {code} out of range for m = {m}, n = {n}"
            )));
        }
        let radix = factorial(m);
        let mut rest = code;
        let rankings = (0..n)
            .map(|_| {
                let digit = (rest % radix) as usize;
                rest /= radix;
                Ranking::from_code(digit, m)
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(rankings)
    }
}

/// Number of profiles, `(m!)^n`, if it fits in 64 bits.
pub fn profile_count(m: usize, n: usize) -> Option<u64> {
    factorial(m).checked_pow(n.try_into().ok()?)
}

/// All `m!` rankings with the data needed to update tallies quickly.
#[derive(Debug, Clone)]
pub struct RankingSpace {
    m: usize,
    tops: Vec<u8>,
    /// For each ranking, the flattened indices `x * m + y` of every ordered
    /// pair with `x` ranked above `y`.
    above: Vec<Vec<u8>>,
}

impl RankingSpace {
    pub fn new(m: usize) -> Result<Self> {
        if !(2..=MAX_ALTERNATIVES).contains(&m) {
            return Err(Error::Invalid(format!(
                "number of alternatives must be in 2..={MAX_ALTERNATIVES}, got {m}"
            )));
        }
        let count = factorial(m) as usize;
        let mut tops = Vec::with_capacity(count);
        let mut above = Vec::with_capacity(count);
        for code in 0..count {
            let r = Ranking::from_code(code, m)?;
            tops.push(r.top() as u8);
            let mut pairs = Vec::with_capacity(m * (m - 1) / 2);
            for (k, &x) in r.order.iter().enumerate() {
                for &y in &r.order[k + 1..] {
                    pairs.push((x * m + y) as u8);
                }
            }
            above.push(pairs);
        }
        Ok(RankingSpace { m, tops, above })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.tops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tops.is_empty()
    }

    #[inline]
    pub(crate) fn top(&self, code: usize) -> usize {
        self.tops[code] as usize
    }

    #[inline]
    pub(crate) fn above(&self, code: usize) -> &[u8] {
        &self.above[code]
    }
}
