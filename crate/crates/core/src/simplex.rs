//! Exact influence over all integer weight triples `w1 + w2 + w3 = D`, and
//! the comparisons drawn from it.
//!
//! Committees whose weights differ by a common factor are equivalent, so
//! every point is evaluated at its gcd-reduced weights and results are shared
//! through a [`GridCache`] that can be persisted between runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::committee::{Committee, Rule};
use crate::error::{Error, Result};
use crate::exact::{influence_exact, Rational};

/// Default grid resolution; divisible by 3, 4, 5 and 12.
pub const DEFAULT_RESOLUTION: u64 = 60;

pub type Weights3 = [u64; 3];

/// Normalized influence of the three players under each rule, in
/// [`Rule::ALL`] order.
pub type RuleValues = [[Rational; 3]; 5];

fn rule_slot(rule: Rule) -> usize {
    Rule::ALL
        .iter()
        .position(|&r| r == rule)
        .expect("rule listed in ALL")
}

pub fn reduce(weights: Weights3) -> Weights3 {
    let g = weights.iter().fold(0u64, |g, &w| g.gcd(&w));
    if g <= 1 {
        weights
    } else {
        weights.map(|w| w / g)
    }
}

/// All triples of nonnegative integers summing to `resolution`, ordered by
/// `w1` descending, then `w2` descending.
pub fn grid_points(resolution: u64) -> Vec<Weights3> {
    let mut points = Vec::with_capacity(((resolution + 1) * (resolution + 2) / 2) as usize);
    for w1 in (0..=resolution).rev() {
        for w2 in (0..=resolution - w1).rev() {
            points.push([w1, w2, resolution - w1 - w2]);
        }
    }
    points
}

/// Exact influence values keyed by gcd-reduced weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCache {
    m: usize,
    entries: BTreeMap<Weights3, RuleValues>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    m: usize,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    weights: Weights3,
    values: BTreeMap<Rule, [String; 3]>,
}

fn parse_ratio(s: &str) -> Result<Rational> {
    s.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("'{s}' is not a rational number")))
}

impl GridCache {
    pub fn new(m: usize) -> Self {
        GridCache {
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, weights: Weights3) -> Option<&RuleValues> {
        self.entries.get(&reduce(weights))
    }

    /// Computes every missing reduced point of the grid.
    pub fn fill(&mut self, resolution: u64) -> Result<()> {
        let missing: BTreeSet<Weights3> = grid_points(resolution)
            .into_iter()
            .map(reduce)
            .filter(|k| !self.entries.contains_key(k))
            .collect();
        let m = self.m;
        let computed = missing
            .into_par_iter()
            .map(|key| point_values(m, key).map(|v| (key, v)))
            .collect::<Result<Vec<_>>>()?;
        self.entries.extend(computed);
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = CacheFile {
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|(&weights, values)| CacheEntry {
                    weights,
                    values: Rule::ALL
                        .iter()
                        .zip(values)
                        .map(|(&r, v)| (r, v.map(|x| x.to_string())))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CacheFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid cache: {e}")))?;
        let mut entries = BTreeMap::new();
        for entry in file.entries {
            if reduce(entry.weights) != entry.weights {
                return Err(Error::Parse(format!(
                    "grid cache key {:?} is not gcd-reduced",
                    entry.weights
                )));
            }
            let mut values = [[Rational::from_integer(0); 3]; 5];
            for (slot, rule) in Rule::ALL.iter().enumerate() {
                let raw = entry.values.get(rule).ok_or_else(|| {
                    Error::Parse(format!("grid cache entry {:?} lacks {rule}", entry.weights))
                })?;
                for (v, s) in values[slot].iter_mut().zip(raw) {
                    *v = parse_ratio(s)?;
                }
            }
            entries.insert(entry.weights, values);
        }
        Ok(GridCache { m: file.m, entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }
}

fn point_values(m: usize, weights: Weights3) -> Result<RuleValues> {
    let mut values = [[Rational::from_integer(0); 3]; 5];
    for (slot, &rule) in Rule::ALL.iter().enumerate() {
        let report = influence_exact(&Committee::new(m, weights.to_vec(), rule)?)?;
        for (v, p) in values[slot].iter_mut().zip(&report.players) {
            *v = p.normalized;
        }
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    pub weights: Weights3,
    pub values: RuleValues,
}

impl GridPoint {
    pub fn influence(&self, rule: Rule, player: usize) -> Rational {
        self.values[rule_slot(rule)][player]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexGrid {
    pub resolution: u64,
    pub m: usize,
    pub points: Vec<GridPoint>,
}

impl SimplexGrid {
    pub fn point(&self, weights: Weights3) -> Option<&GridPoint> {
        self.points.iter().find(|p| p.weights == weights)
    }
}

pub fn scan_simplex(resolution: u64, m: usize) -> Result<SimplexGrid> {
    scan_simplex_cached(resolution, &mut GridCache::new(m))
}

/// Scans the grid, reusing and extending `cache`.
pub fn scan_simplex_cached(resolution: u64, cache: &mut GridCache) -> Result<SimplexGrid> {
    if resolution == 0 {
        return Err(Error::Invalid("resolution must be at least 1".into()));
    }
    cache.fill(resolution)?;
    let points = grid_points(resolution)
        .into_iter()
        .map(|weights| GridPoint {
            weights,
            values: *cache.get(weights).expect("filled above"),
        })
        .collect();
    Ok(SimplexGrid {
        resolution,
        m: cache.m(),
        points,
    })
}

fn check_player(player: usize) -> Result<()> {
    if player < 3 {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "player must be 0, 1 or 2, got {player}"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comparison {
    AGreater,
    Equal,
    BGreater,
}

impl Comparison {
    pub fn name(self) -> &'static str {
        match self {
            Comparison::AGreater => "A_GREATER",
            Comparison::Equal => "EQUAL",
            Comparison::BGreater => "B_GREATER",
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Comparison::AGreater => Comparison::BGreater,
            Comparison::Equal => Comparison::Equal,
            Comparison::BGreater => Comparison::AGreater,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type SignedRational = Ratio<i128>;

fn signed(r: Rational) -> SignedRational {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseCell {
    pub weights: Weights3,
    pub class: Comparison,
    /// `I(rule_a) - I(rule_b)` for the chosen player.
    pub diff: SignedRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseClassification {
    pub rule_a: Rule,
    pub rule_b: Rule,
    pub player: usize,
    pub resolution: u64,
    pub cells: Vec<PairwiseCell>,
}

impl PairwiseClassification {
    pub fn cell(&self, weights: Weights3) -> Option<&PairwiseCell> {
        self.cells.iter().find(|c| c.weights == weights)
    }

    /// Largest `|diff|` on the grid.
    pub fn max_abs_diff(&self) -> SignedRational {
        self.cells
            .iter()
            .map(|c| {
                if c.diff < Ratio::from_integer(0) {
                    -c.diff
                } else {
                    c.diff
                }
            })
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }
}

pub fn classify_pairwise(
    grid: &SimplexGrid,
    rule_a: Rule,
    rule_b: Rule,
    player: usize,
) -> Result<PairwiseClassification> {
    check_player(player)?;
    let cells = grid
        .points
        .iter()
        .map(|p| {
            let diff = signed(p.influence(rule_a, player)) - signed(p.influence(rule_b, player));
            let class = match diff.cmp(&Ratio::from_integer(0)) {
                std::cmp::Ordering::Greater => Comparison::AGreater,
                std::cmp::Ordering::Equal => Comparison::Equal,
                std::cmp::Ordering::Less => Comparison::BGreater,
            };
            PairwiseCell {
                weights: p.weights,
                class,
                diff,
            }
        })
        .collect();
    Ok(PairwiseClassification {
        rule_a,
        rule_b,
        player,
        resolution: grid.resolution,
        cells,
    })
}

/// A set of rules, stored as a bitmask over [`Rule::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleSet(u8);

impl RuleSet {
    pub fn all() -> Self {
        RuleSet(0b11111)
    }

    pub fn single(rule: Rule) -> Self {
        RuleSet(1 << rule_slot(rule))
    }

    pub fn insert(&mut self, rule: Rule) {
        self.0 |= 1 << rule_slot(rule);
    }

    pub fn contains(self, rule: Rule) -> bool {
        self.0 & (1 << rule_slot(rule)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn rules(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.into_iter().filter(move |&r| self.contains(r))
    }
}

impl FromIterator<Rule> for RuleSet {
    fn from_iter<T: IntoIterator<Item = Rule>>(iter: T) -> Self {
        let mut set = RuleSet(0);
        for r in iter {
            set.insert(r);
        }
        set
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.rules().map(Rule::name).collect();
        f.write_str(&names.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestRuleCell {
    pub weights: Weights3,
    pub rules: RuleSet,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestRuleMap {
    pub player: usize,
    pub resolution: u64,
    pub cells: Vec<BestRuleCell>,
}

impl BestRuleMap {
    pub fn cell(&self, weights: Weights3) -> Option<&BestRuleCell> {
        self.cells.iter().find(|c| c.weights == weights)
    }

    /// Distinct argmax sets, in ascending bitmask order.
    pub fn distinct_sets(&self) -> Vec<RuleSet> {
        self.cells
            .iter()
            .map(|c| c.rules)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

pub fn best_rule_map(grid: &SimplexGrid, player: usize) -> Result<BestRuleMap> {
    check_player(player)?;
    let cells = grid
        .points
        .iter()
        .map(|p| {
            let value = Rule::ALL
                .iter()
                .map(|&r| p.influence(r, player))
                .max()
                .expect("five rules");
            let rules = Rule::ALL
                .into_iter()
                .filter(|&r| p.influence(r, player) == value)
                .collect();
            BestRuleCell {
                weights: p.weights,
                rules,
                value,
            }
        })
        .collect();
    Ok(BestRuleMap {
        player,
        resolution: grid.resolution,
        cells,
    })
}

pub fn classification_csv(classification: &PairwiseClassification) -> String {
    let mut out = String::from("w1,w2,w3,class,diff_numerator,diff_denominator\n");
    for c in &classification.cells {
        let [w1, w2, w3] = c.weights;
        out.push_str(&format!(
            "{w1},{w2},{w3},{},{},{}\n",
            c.class,
            c.diff.numer(),
            c.diff.denom()
        ));
    }
    out
}

pub fn best_rule_csv(map: &BestRuleMap) -> String {
    let mut out = String::from("w1,w2,w3,rules,value_numerator,value_denominator\n");
    for c in &map.cells {
        let [w1, w2, w3] = c.weights;
        out.push_str(&format!(
            "{w1},{w2},{w3},{},{},{}\n",
            c.rules,
            c.value.numer(),
            c.value.denom()
        ));
    }
    out
}
