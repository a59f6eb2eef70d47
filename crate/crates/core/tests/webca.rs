use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use webca::additive::{evolve, AdditiveRule};
use webca::config::TernaryConfig;
use webca::webca::rules::{delta, tuple, TABLE_SIZE};
use webca::webca::*;

#[test]
fn ebd_tables_match_builtins() {
    let ext = derive_two_level_ebd(Rule2d::Box13).unwrap();
    let pig = derive_two_level_ebd(Rule2d::PiggybackBox).unwrap();
    assert_eq!(ext.table(), WebRule::builtin(BuiltinRule::Extended1Or3).table());
    assert_eq!(pig.table(), WebRule::builtin(BuiltinRule::Piggyback).table());
}

#[test]
fn builtin_compliance() {
    let c = |r| WebRule::builtin(r).compliance();
    let wx = c(BuiltinRule::WebXor);
    assert!(wx.diagonal_compliant && !wx.spontaneous_birth);
    assert!(!c(BuiltinRule::ModifiedWebXor).spontaneous_birth);
    let r30 = c(BuiltinRule::WebRule30);
    assert!(r30.free3_compliant && r30.wide_compliant && !r30.spontaneous_birth);
    let ext = c(BuiltinRule::Extended1Or3);
    assert!(ext.free4_compliant && !ext.wide_compliant);
    let pig = c(BuiltinRule::Piggyback);
    assert!(pig.wide_compliant && pig.spontaneous_birth);
}

fn random_rule(rng: &mut ChaCha8Rng) -> WebRule {
    // each output sees the 0/2 distinction only at a random subset of positions
    let mask: [bool; 5] = std::array::from_fn(|_| rng.gen());
    let mut by_class = std::collections::HashMap::new();
    let mut table = [0u8; TABLE_SIZE];
    for (i, out) in table.iter_mut().enumerate() {
        let t = tuple(i);
        let [_, b, c, d, _] = t.map(delta);
        if (b + c + d) & 1 == 1 {
            *out = 1;
            continue;
        }
        let key: [u8; 5] = std::array::from_fn(|k| if mask[k] { t[k] } else { delta(t[k]) });
        *out = *by_class
            .entry(key)
            .or_insert_with(|| if rng.gen_bool(0.5) { 2 } else { 0 });
    }
    table[0] = 0;
    validate_web_rule("random", table).unwrap()
}

#[test]
fn compliance_implications_on_random_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rules: Vec<WebRule> = BuiltinRule::ALL.into_iter().map(WebRule::builtin).collect();
    rules.extend((0..1000).map(|_| random_rule(&mut rng)));
    let mut seen_free3 = 0;
    for r in &rules {
        let c = r.compliance();
        assert!(!c.free3_compliant || c.wide_compliant, "{r:?}");
        assert!(!c.diagonal_compliant || c.empty_compliant);
        assert!(!c.wide_compliant || c.empty_compliant);
        assert!(!c.free3_compliant || c.free4_compliant);
        seen_free3 += c.free3_compliant as usize;
    }
    assert!(seen_free3 > 1);
}

#[test]
fn first_level_projection_commutes() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for rule in BuiltinRule::ALL.map(WebRule::builtin) {
        for _ in 0..200 {
            let len = rng.gen_range(1..30);
            let states: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            let seed = TernaryConfig::finite(0, states);
            let d = evolve_web(&rule, &seed, 64).unwrap();
            let lam = evolve(&seed.delta(), AdditiveRule::OneOr3, 64).unwrap();
            for (a, b) in d.rows.iter().zip(&lam.rows) {
                assert_eq!(&a.delta(), b);
            }
        }
    }
}

#[test]
fn no_birth_rules_keep_binary_seeds_binary() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for rule in BuiltinRule::ALL.map(WebRule::builtin) {
        if rule.compliance().spontaneous_birth {
            continue;
        }
        for _ in 0..50 {
            let states: Vec<u8> = (0..20).map(|_| rng.gen_range(0..2)).collect();
            let d = evolve_web(&rule, &TernaryConfig::finite(0, states), 40).unwrap();
            assert!(d.rows.iter().all(|r| r.states.iter().all(|&s| s != 2)));
        }
    }
}

#[test]
fn light_speed() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for rule in BuiltinRule::ALL.map(WebRule::builtin) {
        if !rule.compliance().empty_compliant {
            continue;
        }
        for _ in 0..100 {
            let n = 60;
            let s0: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let (x, t) = (30i64, rng.gen_range(1..12i64));
            let mut s1 = s0.clone();
            for (i, s) in s1.iter_mut().enumerate() {
                let i = i as i64;
                let outside = i < x - t - 1 || i > x + t + 1;
                let edge = i == x - t - 1 || i == x + t + 1;
                if outside {
                    *s = rng.gen_range(0..3);
                } else if edge && *s != 1 {
                    *s = 2 * rng.gen_range(0..2);
                }
            }
            let a = evolve_web(&rule, &TernaryConfig::finite(0, s0), t as usize).unwrap();
            let b = evolve_web(&rule, &TernaryConfig::finite(0, s1), t as usize).unwrap();
            assert_eq!(a.get(x, t as usize), b.get(x, t as usize), "{}", rule.id);
        }
    }
}

#[test]
fn solidification_is_monotone() {
    let seed: Vec<(i64, i64)> = vec![(0, 0), (1, 0), (3, 1), (2, 4)];
    for rule in [Rule2d::Box13, Rule2d::PiggybackBox] {
        let a = solidify_2d(rule, &seed, 10);
        let b = solidify_2d(rule, &seed, 20);
        for (k, t) in &a.occupied_at {
            assert_eq!(b.occupied_at.get(k), Some(t));
        }
        for (k, t) in &b.occupied_at {
            if *t <= 10 {
                assert_eq!(a.occupied_at.get(k), Some(t));
            }
        }
    }
}
