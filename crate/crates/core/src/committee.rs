use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::{default_labels, Profile, Ranking, MAX_ALTERNATIVES};

/// Upper bound on the total weight `w(N)`, keeping every tally exact in `u64`.
pub const MAX_TOTAL_WEIGHT: u64 = 1 << 40;

/// The five anonymous voting rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Plurality,
    PluralityRunoff,
    Borda,
    Copeland,
    Schulze,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::Plurality,
        Rule::PluralityRunoff,
        Rule::Borda,
        Rule::Copeland,
        Rule::Schulze,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Plurality => "plurality",
            Rule::PluralityRunoff => "plurality-runoff",
            Rule::Borda => "borda",
            Rule::Copeland => "copeland",
            Rule::Schulze => "schulze",
        }
    }

    /// Short tag used in table headers and legends.
    pub fn abbreviation(self) -> &'static str {
        match self {
            Rule::Plurality => "P",
            Rule::PluralityRunoff => "PR",
            Rule::Borda => "B",
            Rule::Copeland => "C",
            Rule::Schulze => "S",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

/// An alternative, identified by its index. Smaller indices win ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alternative(pub usize);

impl Alternative {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A weighted committee `(N, A, r|w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Committee {
    labels: Vec<String>,
    weights: Vec<u64>,
    rule: Rule,
    total: u64,
}

impl Committee {
    /// Committee over `m` alternatives with the default labels.
    pub fn new(m: usize, weights: Vec<u64>, rule: Rule) -> Result<Self> {
        if !(2..=MAX_ALTERNATIVES).contains(&m) {
            return Err(Error::InvalidCommittee(format!(
                "number of alternatives must be in 2..={MAX_ALTERNATIVES}, got {m}"
            )));
        }
        Committee::with_labels(default_labels(m), weights, rule)
    }

    pub fn with_labels(labels: Vec<String>, weights: Vec<u64>, rule: Rule) -> Result<Self> {
        let m = labels.len();
        if !(2..=MAX_ALTERNATIVES).contains(&m) {
            return Err(Error::InvalidCommittee(format!(
                "number of alternatives must be in 2..={MAX_ALTERNATIVES}, got {m}"
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.chars().count() != 1 {
                return Err(Error::InvalidCommittee(format!(
                    "label '{l}' must be a single character"
                )));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidCommittee(format!("duplicate label '{l}'")));
            }
        }
        if weights.is_empty() {
            return Err(Error::InvalidCommittee(
                "at least one player is required".into(),
            ));
        }
        let total = weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .filter(|&t| t <= MAX_TOTAL_WEIGHT)
            .ok_or_else(|| {
                Error::InvalidCommittee("total weight exceeds the cap of 2^40".to_string())
            })?;
        if total == 0 {
            return Err(Error::InvalidCommittee(
                "total weight must be at least 1".into(),
            ));
        }
        Ok(Committee {
            labels,
            weights,
            rule,
            total,
        })
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Alternative) -> &str {
        &self.labels[a.0]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn with_rule(&self, rule: Rule) -> Self {
        Committee {
            rule,
            ..self.clone()
        }
    }

    pub fn with_weights(&self, weights: Vec<u64>) -> Result<Self> {
        Committee::with_labels(self.labels.clone(), weights, self.rule)
    }

    pub fn parse_ranking(&self, s: &str) -> Result<Ranking> {
        Ranking::parse(s, &self.labels)
    }

    pub fn parse_profile<S: AsRef<str>>(&self, rankings: &[S]) -> Result<Profile> {
        let profile = Profile::parse(rankings, &self.labels)?;
        self.check_profile(&profile)?;
        Ok(profile)
    }

    pub(crate) fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.n() != self.n() {
            return Err(Error::ProfileArity {
                found: profile.n(),
                expected: self.n(),
            });
        }
        if profile.m() != self.m() {
            return Err(Error::Invalid(format!(
                "profile ranks {} alternatives, committee has {}",
                profile.m(),
                self.m()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        let err = "approval".parse::<Rule>().unwrap_err().to_string();
        assert!(
            err.contains("plurality-runoff") && err.contains("schulze"),
            "{err}"
        );
    }

    #[test]
    fn rejects_zero_total_and_empty() {
        assert!(Committee::new(3, vec![0, 0], Rule::Borda).is_err());
        assert!(Committee::new(3, vec![], Rule::Borda).is_err());
        assert!(Committee::new(1, vec![1], Rule::Borda).is_err());
        assert!(Committee::new(3, vec![0, 2, 0], Rule::Borda).is_ok());
    }

    #[test]
    fn rejects_weight_overflow() {
        assert!(Committee::new(3, vec![MAX_TOTAL_WEIGHT, 1], Rule::Plurality).is_err());
        assert!(Committee::new(3, vec![u64::MAX, u64::MAX], Rule::Plurality).is_err());
        assert!(Committee::new(3, vec![MAX_TOTAL_WEIGHT], Rule::Plurality).is_ok());
    }

    #[test]
    fn arity_mismatch() {
        let c = Committee::new(3, vec![1, 1], Rule::Borda).unwrap();
        assert!(matches!(
            c.parse_profile(&["abc"]),
            Err(Error::ProfileArity {
                found: 1,
                expected: 2
            })
        ));
    }
}
