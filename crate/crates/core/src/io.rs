//! Committee files and the embedded IMF Executive Board dataset.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::committee::{Committee, Rule};
use crate::error::{Error, Result};
use crate::ranking::default_labels;

/// On-disk committee description (TOML, or JSON when the text starts with `{`).
///
/// ```toml
/// alternatives = ["a", "b", "c"]   # or: m = 3
/// weights = [6, 5, 3]
/// rule = "borda"
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommitteeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternatives: Option<Vec<String>>,
    pub weights: Vec<u64>,
    pub rule: String,
}

impl CommitteeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("committee file: {e}")))
        } else {
            toml::from_str(text).map_err(|e| Error::Parse(format!("committee file: {e}")))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn from_committee(committee: &Committee) -> Self {
        CommitteeSpec {
            m: None,
            alternatives: Some(committee.labels().to_vec()),
            weights: committee.weights().to_vec(),
            rule: committee.rule().name().to_string(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("committee spec serializes")
    }

    pub fn committee(&self) -> Result<Committee> {
        let rule: Rule = self.rule.parse()?;
        let labels = match (&self.alternatives, self.m) {
            (Some(labels), Some(m)) if labels.len() != m => {
                return Err(Error::InvalidCommittee(format!(
                    "m = {m} disagrees with {} listed alternatives",
                    labels.len()
                )))
            }
            (Some(labels), _) => labels.clone(),
            (None, Some(m)) => {
                if m > 26 {
                    return Err(Error::InvalidCommittee(format!(
                        "too many alternatives: {m}"
                    )));
                }
                default_labels(m)
            }
            (None, None) => {
                return Err(Error::InvalidCommittee(
                    "committee file needs either `m` or `alternatives`".into(),
                ))
            }
        };
        Committee::with_labels(labels, self.weights.clone(), rule)
    }
}

pub fn load_committee(path: &Path) -> Result<Committee> {
    CommitteeSpec::load(path)?.committee()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Era {
    Pre,
    Post,
}

impl Era {
    pub fn name(self) -> &'static str {
        match self {
            Era::Pre => "pre",
            Era::Post => "post",
        }
    }
}

impl fmt::Display for Era {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Era {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pre" => Ok(Era::Pre),
            "post" => Ok(Era::Post),
            _ => Err(Error::Invalid(format!(
                "unknown era '{s}' (expected pre or post)"
            ))),
        }
    }
}

/// One Executive Board seat; shares in basis points of total votes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImfMember {
    pub label: String,
    pub share_pre: u64,
    pub share_post: u64,
}

impl ImfMember {
    pub fn share(&self, era: Era) -> u64 {
        match era {
            Era::Pre => self.share_pre,
            Era::Post => self.share_post,
        }
    }
}

/// Constituencies are labelled by their largest member (as of Dec. 2018).
const IMF_BOARD: [(&str, u64, u64); 24] = [
    ("USA", 1672, 1647),
    ("Japan", 622, 613),
    ("China", 380, 607),
    ("Netherlands", 656, 541),
    ("Germany", 580, 531),
    ("Spain", 490, 529),
    ("Indonesia", 393, 433),
    ("Italy", 422, 412),
    ("France", 428, 402),
    ("United Kingdom", 428, 402),
    ("Korea", 348, 378),
    ("Canada", 359, 337),
    ("Sweden", 339, 328),
    ("Turkey", 291, 322),
    ("South Africa", 341, 309),
    ("Brazil", 261, 306),
    ("India", 280, 304),
    ("Switzerland", 294, 288),
    ("Russian Federation", 255, 283),
    ("Iran", 273, 254),
    ("United Arab Emirates", 257, 252),
    ("Saudi Arabia", 280, 201),
    ("Dem. Rep. Congo", 146, 162),
    ("Argentina", 184, 159),
];

pub fn imf_dataset() -> Vec<ImfMember> {
    IMF_BOARD
        .iter()
        .map(|&(label, share_pre, share_post)| ImfMember {
            label: label.to_string(),
            share_pre,
            share_post,
        })
        .collect()
}

/// Three-candidate committee of the Executive Board for one era.
pub fn imf_committee(members: &[ImfMember], era: Era, rule: Rule) -> Result<Committee> {
    Committee::new(3, members.iter().map(|m| m.share(era)).collect(), rule)
}

pub fn write_imf_csv(members: &[ImfMember]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for m in members {
        writer
            .serialize(m)
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn read_imf_csv(text: &str) -> Result<Vec<ImfMember>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<ImfMember>, _>>()
        .map_err(|e| Error::Parse(format!("IMF table: {e}")))
}
