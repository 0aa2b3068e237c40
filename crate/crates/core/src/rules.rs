//! Winner determination for the five weighted rules.
//!
//! Every argmax resolves ties in favour of the smallest alternative index:
//! final selection, the runoff's top-two selection and its pairwise vote,
//! Copeland score ties and the Schulze winner set.

use crate::committee::{Alternative, Committee, Rule};
use rayon::prelude::*;

use crate::enumerate::{Odometer, CHUNK};
use crate::error::{Error, Result};
use crate::exact::checked_profile_count;
use crate::ranking::{Profile, RankingSpace, MAX_ALTERNATIVES};
use crate::tally::{PairwiseTally, Tally};

/// First index attaining the maximum.
#[inline]
fn argmax<I: IntoIterator<Item = u64>>(scores: I) -> usize {
    let mut best = 0;
    let mut best_score = None;
    for (i, s) in scores.into_iter().enumerate() {
        if best_score.is_none_or(|b| s > b) {
            best = i;
            best_score = Some(s);
        }
    }
    best
}

impl Rule {
    /// Winner for an already accumulated weighted tally.
    #[inline]
    pub fn winner_from_tally(self, tally: &Tally) -> Alternative {
        let m = tally.m();
        let index = match self {
            Rule::Plurality => argmax(tally.firsts().iter().copied()),
            Rule::PluralityRunoff => runoff_index(tally),
            Rule::Borda => argmax((0..m).map(|a| tally.borda_score(a))),
            Rule::Copeland => {
                let d = tally.pairwise();
                argmax((0..m).map(|a| (0..m).filter(|&b| b != a && d.beats(a, b)).count() as u64))
            }
            Rule::Schulze => schulze_index(tally.pairwise()),
        };
        Alternative(index)
    }
}

fn runoff_index(tally: &Tally) -> usize {
    let firsts = tally.firsts();
    let leader = argmax(firsts.iter().copied());
    if 2 * firsts[leader] > tally.total() {
        return leader;
    }
    // Second-highest plurality score; ties go to the smaller index.
    let mut second: Option<usize> = None;
    for a in (0..firsts.len()).filter(|&a| a != leader) {
        if second.is_none_or(|s| firsts[a] > firsts[s]) {
            second = Some(a);
        }
    }
    let second = second.expect("at least two alternatives");
    let d = tally.pairwise();
    if d.beats(second, leader) || (!d.beats(leader, second) && second < leader) {
        second
    } else {
        leader
    }
}

/// Strongest-path strengths under the margins variant.
#[allow(clippy::needless_range_loop)]
fn schulze_paths(d: &PairwiseTally) -> [[u64; MAX_ALTERNATIVES]; MAX_ALTERNATIVES] {
    let m = d.m();
    let mut p = [[0u64; MAX_ALTERNATIVES]; MAX_ALTERNATIVES];
    for x in 0..m {
        for y in 0..m {
            if x != y {
                let (f, b) = (d.get(x, y), d.get(y, x));
                if f > b {
                    p[x][y] = f - b;
                }
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            if i == k {
                continue;
            }
            for j in 0..m {
                if j == i || j == k {
                    continue;
                }
                let via = p[i][k].min(p[k][j]);
                if via > p[i][j] {
                    p[i][j] = via;
                }
            }
        }
    }
    p
}

fn schulze_index(d: &PairwiseTally) -> usize {
    let m = d.m();
    let p = schulze_paths(d);
    (0..m)
        .find(|&x| (0..m).all(|y| y == x || p[x][y] >= p[y][x]))
        .expect("the Schulze winner set is never empty")
}

pub fn pairwise_tally(committee: &Committee, profile: &Profile) -> Result<PairwiseTally> {
    Ok(Tally::weighted(committee, profile)?.pairwise().clone())
}

pub fn borda_scores(committee: &Committee, profile: &Profile) -> Result<Vec<u64>> {
    Ok(Tally::weighted(committee, profile)?.borda_scores())
}

/// Weight of players ranking each alternative first.
pub fn plurality_scores(committee: &Committee, profile: &Profile) -> Result<Vec<u64>> {
    Ok(Tally::weighted(committee, profile)?.firsts().to_vec())
}

pub fn copeland_scores(committee: &Committee, profile: &Profile) -> Result<Vec<u64>> {
    Ok(Tally::weighted(committee, profile)?.copeland_scores())
}

/// Schulze strongest-path matrix `p[x][y]` (margins variant).
pub fn schulze_strengths(committee: &Committee, profile: &Profile) -> Result<Vec<Vec<u64>>> {
    let tally = Tally::weighted(committee, profile)?;
    let m = committee.m();
    let p = schulze_paths(tally.pairwise());
    Ok(p[..m].iter().map(|row| row[..m].to_vec()).collect())
}

fn winner_under(rule: Rule, committee: &Committee, profile: &Profile) -> Result<Alternative> {
    Ok(rule.winner_from_tally(&Tally::weighted(committee, profile)?))
}

pub fn plurality_winner(committee: &Committee, profile: &Profile) -> Result<Alternative> {
    winner_under(Rule::Plurality, committee, profile)
}

pub fn plurality_runoff_winner(committee: &Committee, profile: &Profile) -> Result<Alternative> {
    winner_under(Rule::PluralityRunoff, committee, profile)
}

pub fn borda_winner(committee: &Committee, profile: &Profile) -> Result<Alternative> {
    winner_under(Rule::Borda, committee, profile)
}

pub fn copeland_winner(committee: &Committee, profile: &Profile) -> Result<Alternative> {
    winner_under(Rule::Copeland, committee, profile)
}

pub fn schulze_winner(committee: &Committee, profile: &Profile) -> Result<Alternative> {
    winner_under(Rule::Schulze, committee, profile)
}

/// Winner under the committee's own rule.
pub fn winner(committee: &Committee, profile: &Profile) -> Result<Alternative> {
    winner_under(committee.rule(), committee, profile)
}

/// Whether two committees elect the same winner at every profile.
///
/// Both must share `m` and `n`; enumeration is bounded by `cap` profiles.
pub fn committees_equivalent(a: &Committee, b: &Committee, cap: u64) -> Result<bool> {
    if a.m() != b.m() || a.n() != b.n() {
        return Err(Error::Invalid(format!(
            "committees differ in shape: m = {} vs {}, n = {} vs {}",
            a.m(),
            b.m(),
            a.n(),
            b.n()
        )));
    }
    let size = checked_profile_count(a.m(), a.n(), cap)?;
    let space = RankingSpace::new(a.m())?;
    let chunks = size.div_ceil(CHUNK);
    Ok((0..chunks).into_par_iter().all(|k| {
        let start = k * CHUNK;
        let mut left = Odometer::at(&space, a.weights(), start);
        let mut right = Odometer::at(&space, b.weights(), start);
        for _ in start..size.min(start + CHUNK) {
            if a.rule().winner_from_tally(left.tally()) != b.rule().winner_from_tally(right.tally())
            {
                return false;
            }
            left.advance();
            right.advance();
        }
        true
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intro_profile(c: &Committee) -> Profile {
        c.parse_profile(&["adecb", "bcdea", "cedba"]).unwrap()
    }

    fn intro(rule: Rule) -> Committee {
        Committee::new(5, vec![6, 5, 3], rule).unwrap()
    }

    fn w(c: &Committee, p: &Profile) -> usize {
        winner(c, p).unwrap().index()
    }

    #[test]
    fn intro_example_all_rules() {
        let c = intro(Rule::Plurality);
        let p = intro_profile(&c);
        assert_eq!(c.label(plurality_winner(&c, &p).unwrap()), "a");
        assert_eq!(c.label(plurality_runoff_winner(&c, &p).unwrap()), "b");
        assert_eq!(c.label(copeland_winner(&c, &p).unwrap()), "c");
        assert_eq!(c.label(borda_winner(&c, &p).unwrap()), "d");
        assert_eq!(borda_scores(&c, &p).unwrap(), vec![24, 23, 33, 34, 26]);
        assert_eq!(c.label(schulze_winner(&c, &p).unwrap()), "c");
    }

    #[test]
    fn intro_example_pairwise() {
        let c = intro(Rule::Copeland);
        let d = pairwise_tally(&c, &intro_profile(&c)).unwrap();
        assert_eq!((d.get(1, 0), d.get(0, 1)), (8, 6));
        // c beats everyone: 8-6 against a, d and e, 9-5 against b.
        assert_eq!([0, 1, 3, 4].map(|x| d.get(2, x)), [8, 9, 8, 8]);
    }

    #[test]
    fn plurality_table_example() {
        let c = Committee::new(3, vec![6, 5, 3], Rule::Plurality).unwrap();
        let p = c.parse_profile(&["bca", "abc", "cba"]).unwrap();
        assert_eq!(w(&c, &p), 1);
        assert_eq!(borda_winner(&c, &p).unwrap(), Alternative(1));
    }

    #[test]
    fn majority_weight_dictates_plurality() {
        let c = Committee::new(3, vec![4, 1, 1], Rule::Plurality).unwrap();
        for code in 0..216 {
            let p = Profile::from_code(code, 3, 3).unwrap();
            assert_eq!(w(&c, &p), p.rankings()[0].top());
        }
    }

    #[test]
    fn runoff_strict_majority_boundary() {
        // c holds exactly half (8 of 16): no first-stage win, and the runoff
        // against a ends 8-8, which the smaller index takes.
        let c = Committee::new(3, vec![8, 5, 3], Rule::PluralityRunoff).unwrap();
        let p = c.parse_profile(&["cab", "abc", "bac"]).unwrap();
        assert_eq!(w(&c, &p), 0);
        assert_eq!(plurality_winner(&c, &p).unwrap(), Alternative(2));
        // 9 of 16 ends the vote in the first stage.
        let c = Committee::new(3, vec![9, 4, 3], Rule::PluralityRunoff).unwrap();
        let p = c.parse_profile(&["cab", "abc", "bac"]).unwrap();
        assert_eq!(w(&c, &p), 2);
        // No majority: the runner-up can win the runoff outright.
        let c = Committee::new(3, vec![8, 5, 4], Rule::PluralityRunoff).unwrap();
        let p = c.parse_profile(&["acb", "bca", "bca"]).unwrap();
        assert_eq!(w(&c, &p), 1);
    }

    #[test]
    fn runoff_top_two_ties_are_lexicographic() {
        // Plurality scores a=1, b=1, c=1: runoff is a vs b.
        let c = Committee::new(3, vec![1, 1, 1], Rule::PluralityRunoff).unwrap();
        let p = c.parse_profile(&["abc", "bca", "cba"]).unwrap();
        // a vs b: voter 1 a, voters 2,3 b → b.
        assert_eq!(w(&c, &p), 1);
        // c would beat b pairwise but is never in the runoff.
        let p = c.parse_profile(&["acb", "bca", "cab"]).unwrap();
        // a vs b: voters 1 and 3 prefer a.
        assert_eq!(w(&c, &p), 0);
    }

    #[test]
    fn binary_choice_all_rules_agree_with_majority() {
        for weights in [vec![1, 1], vec![3, 2, 2], vec![2, 2], vec![5, 1, 1, 3]] {
            for rule in Rule::ALL {
                let c = Committee::new(2, weights.clone(), rule).unwrap();
                let n = weights.len();
                for code in 0..(1u64 << n) {
                    let p = Profile::from_code(code, 2, n).unwrap();
                    let for_a: u64 = p
                        .rankings()
                        .iter()
                        .zip(&weights)
                        .filter(|(r, _)| r.top() == 0)
                        .map(|(_, &w)| w)
                        .sum();
                    let expected = if 2 * for_a >= c.total_weight() { 0 } else { 1 };
                    assert_eq!(w(&c, &p), expected, "{rule} {weights:?} {code}");
                }
            }
        }
    }

    #[test]
    fn copeland_three_cycle_tie_break() {
        let c = Committee::new(3, vec![1, 1, 1], Rule::Copeland).unwrap();
        let p = c.parse_profile(&["abc", "bca", "cab"]).unwrap();
        assert_eq!(copeland_scores(&c, &p).unwrap(), vec![1, 1, 1]);
        assert_eq!(w(&c, &p), 0);
    }

    #[test]
    fn schulze_weighted_cycle() {
        let c = Committee::new(3, vec![3, 2, 2], Rule::Schulze).unwrap();
        let p = c.parse_profile(&["abc", "bca", "cab"]).unwrap();
        let d = pairwise_tally(&c, &p).unwrap();
        assert_eq!(d.get(0, 1) - d.get(1, 0), 3);
        assert_eq!(d.get(1, 2) - d.get(2, 1), 3);
        assert_eq!(d.get(2, 0) - d.get(0, 2), 1);
        let s = schulze_strengths(&c, &p).unwrap();
        assert_eq!((s[0][1], s[1][0]), (3, 1));
        assert_eq!((s[0][2], s[2][0]), (3, 1));
        assert_eq!(w(&c, &p), 0);
    }

    #[test]
    fn schulze_symmetric_cycle() {
        let c = Committee::new(3, vec![1, 1, 1], Rule::Schulze).unwrap();
        let p = c.parse_profile(&["abc", "bca", "cab"]).unwrap();
        let s = schulze_strengths(&c, &p).unwrap();
        for (x, row) in s.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                assert_eq!(v, u64::from(x != y));
            }
        }
        assert_eq!(w(&c, &p), 0);
        // Rotating the cycle does not change the tie-break.
        let p = c.parse_profile(&["bca", "cab", "abc"]).unwrap();
        assert_eq!(w(&c, &p), 0);
    }

    #[test]
    fn single_voter_is_dictator_under_every_rule() {
        for rule in Rule::ALL {
            let c = Committee::new(4, vec![7], rule).unwrap();
            for code in 0..24 {
                let p = Profile::from_code(code, 4, 1).unwrap();
                assert_eq!(w(&c, &p), p.rankings()[0].top(), "{rule}");
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let cap = crate::exact::DEFAULT_ENUMERATION_CAP;
        let c = Committee::new(3, vec![6, 5, 3], Rule::Borda).unwrap();
        assert!(committees_equivalent(&c, &c, cap).unwrap());
        let copeland = Committee::new(2, vec![1, 1, 1], Rule::Copeland).unwrap();
        assert!(committees_equivalent(&copeland, &copeland.with_rule(Rule::Schulze), cap).unwrap());
        assert!(!committees_equivalent(&c, &c.with_rule(Rule::Plurality), cap).unwrap());
        assert!(committees_equivalent(
            &c,
            &Committee::new(4, vec![1, 1, 1], Rule::Borda).unwrap(),
            cap
        )
        .is_err());
        assert!(committees_equivalent(&c, &c, 100)
            .unwrap_err()
            .is_resource_cap());
    }

    #[test]
    fn replication_invariance() {
        let cap = crate::exact::DEFAULT_ENUMERATION_CAP;
        for rule in Rule::ALL {
            for weights in [
                vec![6u64, 5, 3],
                vec![2, 1, 1],
                vec![3, 3, 1],
                vec![1, 0, 2],
            ] {
                let c = Committee::new(3, weights.clone(), rule).unwrap();
                for factor in [2u64, 3, 7] {
                    let scaled = c
                        .with_weights(weights.iter().map(|w| w * factor).collect())
                        .unwrap();
                    assert!(
                        committees_equivalent(&c, &scaled, cap).unwrap(),
                        "{rule} {weights:?} x{factor}"
                    );
                }
            }
        }
    }
}
