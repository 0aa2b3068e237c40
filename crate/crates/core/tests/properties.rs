mod common;

use committee_power::exact::{pbi_binary, verify_pbi_coincidence};
use committee_power::ranking::Ranking;
use committee_power::{influence_exact, influence_mc, rules, Committee, McConfig, Profile, Rule};
use proptest::prelude::*;

fn rule() -> impl Strategy<Value = Rule> {
    (0..5usize).prop_map(|i| Rule::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn influence_follows_weights_under_permutation(
        rule in rule(),
        w in prop::collection::vec(1u64..9, 3),
        shift in 1usize..3,
    ) {
        let c = Committee::new(3, w.clone(), rule).unwrap();
        let rotated: Vec<u64> = (0..3).map(|i| w[(i + shift) % 3]).collect();
        let r = Committee::new(3, rotated, rule).unwrap();
        let a = influence_exact(&c).unwrap().normalized();
        let b = influence_exact(&r).unwrap().normalized();
        for i in 0..3 {
            prop_assert_eq!(b[i], a[(i + shift) % 3]);
        }
    }

    #[test]
    fn zero_weight_is_null(rule in rule(), w in prop::collection::vec(1u64..9, 2), m in 2usize..5) {
        let c = Committee::new(m, vec![w[0], 0, w[1]], rule).unwrap();
        let report = influence_exact(&c).unwrap();
        prop_assert_eq!(report.players[1].swing_count, 0);
    }

    #[test]
    fn condorcet_winner_is_elected(
        w in prop::collection::vec(0u64..7, 1..6),
        codes in prop::collection::vec(0usize..24, 5),
    ) {
        prop_assume!(w.iter().any(|&x| x > 0));
        let m = 4;
        let n = w.len();
        let profile = Profile::new(codes[..n].iter().map(|&k| Ranking::from_code(k, m).unwrap()).collect()).unwrap();
        let c = Committee::new(m, w.clone(), Rule::Copeland).unwrap();
        let d = rules::pairwise_tally(&c, &profile).unwrap();
        let cw = (0..m).find(|&x| (0..m).all(|y| y == x || d.get(x, y) > d.get(y, x)));
        if let Some(x) = cw {
            prop_assert_eq!(rules::winner(&c, &profile).unwrap().index(), x);
            prop_assert_eq!(rules::winner(&c.with_rule(Rule::Schulze), &profile).unwrap().index(), x);
        }
    }

    #[test]
    fn binary_rules_reduce_to_banzhaf(w in prop::collection::vec(0u64..20, 3..7)) {
        prop_assume!(w.iter().any(|&x| x > 0));
        for rule in Rule::ALL {
            prop_assert!(verify_pbi_coincidence(&w, rule).unwrap());
        }
        let pbi = pbi_binary(&w).unwrap();
        let c = Committee::new(2, w.clone(), Rule::Borda).unwrap();
        prop_assert_eq!(influence_exact(&c).unwrap().normalized(), pbi);
    }
}

#[test]
fn replicating_weights_keeps_influence() {
    for rule in Rule::ALL {
        let a = influence_exact(&Committee::new(3, vec![6, 5, 3], rule).unwrap()).unwrap();
        let b = influence_exact(&Committee::new(3, vec![12, 10, 6], rule).unwrap()).unwrap();
        assert_eq!(a.normalized(), b.normalized(), "{rule}");
    }
}

#[test]
fn dictator_and_null_players() {
    for rule in Rule::ALL {
        for m in 2..=4 {
            let c = Committee::new(m, vec![100, 2, 3], rule).unwrap();
            let v = influence_exact(&c).unwrap().normalized_f64();
            assert_eq!(v, vec![1.0, 0.0, 0.0], "{rule} m={m}");
        }
    }
}

#[test]
fn monte_carlo_does_not_depend_on_workers() {
    let c = Committee::new(4, vec![7, 4, 3, 2], Rule::Schulze).unwrap();
    let base = influence_mc(&c, &McConfig::new(30_000, 42).with_workers(1)).unwrap();
    for workers in [2, 3, 8] {
        let other = influence_mc(&c, &McConfig::new(30_000, 42).with_workers(workers)).unwrap();
        assert_eq!(base, other, "workers = {workers}");
    }
    let reseeded = influence_mc(&c, &McConfig::new(30_000, 43)).unwrap();
    assert_ne!(base, reseeded);
}

#[test]
fn monte_carlo_converges_to_exact() {
    for rule in Rule::ALL {
        let c = Committee::new(3, vec![6, 5, 3], rule).unwrap();
        let exact = influence_exact(&c).unwrap().normalized_f64();
        let mc = influence_mc(&c, &McConfig::new(200_000, 9)).unwrap();
        for (p, e) in mc.players.iter().zip(&exact) {
            let err = (p.normalized_estimate - e).abs();
            assert!(
                err < 4.0 * p.ci_half_width.max(1e-3),
                "{rule} player {}: {} vs {e}",
                p.player,
                p.normalized_estimate
            );
        }
    }
}

#[test]
fn larger_profiles_agree_with_oracle() {
    let c = Committee::new(5, vec![6, 5, 3], Rule::Schulze).unwrap();
    let perms = common::permutations(5);
    for (i, j, k) in [(0, 57, 119), (13, 13, 90), (44, 101, 2), (119, 0, 60)] {
        let profile = Profile::new(
            [i, j, k]
                .iter()
                .map(|&r| Ranking::from_code(r, 5).unwrap())
                .collect(),
        )
        .unwrap();
        let ballots = vec![perms[i].clone(), perms[j].clone(), perms[k].clone()];
        for rule in Rule::ALL {
            let got = rules::winner(&c.with_rule(rule), &profile).unwrap().index();
            assert_eq!(
                got,
                common::winner(rule, 5, c.weights(), &ballots),
                "{rule}"
            );
        }
    }
}
