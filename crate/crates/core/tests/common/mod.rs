//! Textbook rule definitions over unweighted ballot lists, kept independent of
//! the library's tallies. A weighted ballot is expanded into `w` copies.

#![allow(dead_code, clippy::needless_range_loop)]

use committee_power::Rule;

pub type Ballot = Vec<usize>;

pub fn permutations(m: usize) -> Vec<Ballot> {
    fn go(prefix: &mut Vec<usize>, m: usize, out: &mut Vec<Ballot>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for a in 0..m {
            if !prefix.contains(&a) {
                prefix.push(a);
                go(prefix, m, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), m, &mut out);
    out
}

pub fn expand(weights: &[u64], profile: &[Ballot]) -> Vec<Ballot> {
    weights
        .iter()
        .zip(profile)
        .flat_map(|(&w, b)| std::iter::repeat_n(b.clone(), w as usize))
        .collect()
}

fn prefers(ballot: &Ballot, x: usize, y: usize) -> bool {
    let pos = |a| ballot.iter().position(|&b| b == a).unwrap();
    pos(x) < pos(y)
}

fn support(ballots: &[Ballot], x: usize, y: usize) -> u64 {
    ballots.iter().filter(|b| prefers(b, x, y)).count() as u64
}

/// Index of the first maximum.
fn first_max(scores: &[u64]) -> usize {
    let best = *scores.iter().max().unwrap();
    scores.iter().position(|&s| s == best).unwrap()
}

pub fn plurality(m: usize, ballots: &[Ballot]) -> usize {
    let mut firsts = vec![0; m];
    for b in ballots {
        firsts[b[0]] += 1;
    }
    first_max(&firsts)
}

pub fn runoff(m: usize, ballots: &[Ballot]) -> usize {
    let mut firsts = vec![0u64; m];
    for b in ballots {
        firsts[b[0]] += 1;
    }
    let leader = first_max(&firsts);
    if 2 * firsts[leader] > ballots.len() as u64 {
        return leader;
    }
    let mut second = None;
    for a in 0..m {
        if a != leader && second.is_none_or(|s: usize| firsts[a] > firsts[s]) {
            second = Some(a);
        }
    }
    let second = second.unwrap();
    let (x, y) = (leader.min(second), leader.max(second));
    if support(ballots, y, x) > support(ballots, x, y) {
        y
    } else {
        x
    }
}

pub fn borda(m: usize, ballots: &[Ballot]) -> usize {
    let mut score = vec![0u64; m];
    for b in ballots {
        for (pos, &a) in b.iter().enumerate() {
            score[a] += (m - 1 - pos) as u64;
        }
    }
    first_max(&score)
}

pub fn copeland(m: usize, ballots: &[Ballot]) -> usize {
    let score: Vec<u64> = (0..m)
        .map(|x| {
            (0..m)
                .filter(|&y| y != x && support(ballots, x, y) > support(ballots, y, x))
                .count() as u64
        })
        .collect();
    first_max(&score)
}

/// Beatpath winner with margin link strengths; paths relaxed to a fixpoint.
pub fn schulze(m: usize, ballots: &[Ballot]) -> usize {
    let mut p = vec![vec![0i64; m]; m];
    for x in 0..m {
        for y in 0..m {
            if x != y {
                let margin = support(ballots, x, y) as i64 - support(ballots, y, x) as i64;
                p[x][y] = margin.max(0);
            }
        }
    }
    loop {
        let mut changed = false;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x != y && y != z && x != z {
                        let via = p[x][z].min(p[z][y]);
                        if via > p[x][y] {
                            p[x][y] = via;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..m)
        .find(|&x| (0..m).all(|y| y == x || p[x][y] >= p[y][x]))
        .unwrap()
}

pub fn winner(rule: Rule, m: usize, weights: &[u64], profile: &[Ballot]) -> usize {
    let ballots = expand(weights, profile);
    match rule {
        Rule::Plurality => plurality(m, &ballots),
        Rule::PluralityRunoff => runoff(m, &ballots),
        Rule::Borda => borda(m, &ballots),
        Rule::Copeland => copeland(m, &ballots),
        Rule::Schulze => schulze(m, &ballots),
    }
}

/// Every profile of `n` players as tuples of ranking indices below `f`.
pub fn all_profiles(f: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..f).map(move |r| {
                    let mut q = p.clone();
                    q.push(r);
                    q
                })
            })
            .collect();
    }
    out
}

/// Swing counts by the definition: every profile, every player, every
/// different replacement ranking.
pub fn naive_swings(rule: Rule, m: usize, weights: &[u64]) -> Vec<u64> {
    let perms = permutations(m);
    let n = weights.len();
    let mut swings = vec![0u64; n];
    for idx in all_profiles(perms.len(), n) {
        let profile: Vec<Ballot> = idx.iter().map(|&r| perms[r].clone()).collect();
        let base = winner(rule, m, weights, &profile);
        for i in 0..n {
            for r in 0..perms.len() {
                if r == idx[i] {
                    continue;
                }
                let mut changed = profile.clone();
                changed[i] = perms[r].clone();
                if winner(rule, m, weights, &changed) != base {
                    swings[i] += 1;
                }
            }
        }
    }
    swings
}
