use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use webca::bitrow::BitRow;
use webca::census::*;
use webca::config::BinaryConfig;
use webca::percolation::PathType;
use webca::replication::compute_link_with;
use webca::webca::{BuiltinRule, WebRule};

fn opts() -> CensusOptions {
    CensusOptions::default()
}

#[test]
fn phi_agrees_with_link_reading() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let m = rng.gen_range(0..=3u32);
        let l = rng.gen_range(3usize << m..(3usize << m) + 40);
        let phi = build_phi(m, l).unwrap();
        let seed = BinaryConfig::finite(0, BitRow::from_bools((0..=l).map(|_| rng.gen::<bool>())));
        let a = phi.apply(&seed).unwrap();
        let (b, _) = compute_link_with(&seed, l as i64, m).unwrap();
        assert!(a.equivalent(&b), "m {m} L {l}: {a} vs {b}");
    }
}

#[test]
fn phi_rank_and_image_size() {
    for m in 0..=4u32 {
        let phi = build_phi(m, 3 << m).unwrap();
        assert_eq!(phi.rank, 2 << m);
        assert_eq!(phi.image_size(), 1u128 << (2u32 << m));
    }
    let w: Vec<bool> = (0..6)
        .map(|i| image_word(1, 0b1011) >> i & 1 == 1)
        .collect();
    assert!(satisfies_constraint(1, &w));
}

#[test]
fn three_quarters_are_nondegenerate() {
    let rule = WebRule::builtin(BuiltinRule::Extended1Or3);
    for m in 1..=3u32 {
        let r = run_census(&rule, m, PathType::Free(4), &opts()).unwrap();
        assert_eq!(r.total_image, 1u64 << (2u32 << m));
        assert_eq!(4 * r.n_n, 3 * r.total_image, "m {m}");
    }
}

#[test]
fn fast_census_matches_reference_at_m2() {
    let mut runs = 0;
    for b in BuiltinRule::ALL {
        for p in [
            PathType::Diagonal,
            PathType::Wide,
            PathType::Free(3),
            PathType::Free(4),
            PathType::Free(5),
        ] {
            if !WebRule::builtin(b).compliance().complies(p) {
                continue;
            }
            runs += 1;
            let rule = WebRule::builtin(b);
            for combine in [true, false] {
                let o = CensusOptions {
                    combine_reflections: combine,
                    ..opts()
                };
                let fast = run_census(&rule, 2, p, &o).unwrap();
                let slow = reference_census(&rule, 2, p, &o).unwrap();
                assert_eq!(
                    fast.canonical_json(),
                    slow.canonical_json(),
                    "{} {p}",
                    rule.id
                );
            }
        }
    }
    assert!(runs >= 4, "{runs}");
}

#[test]
fn census_is_deterministic_across_workers() {
    let rule = WebRule::builtin(BuiltinRule::Piggyback);
    let runs: Vec<String> = [1, 2, 4]
        .iter()
        .map(|&w| {
            let r = run_census(
                &rule,
                3,
                PathType::Wide,
                &CensusOptions {
                    workers: w,
                    ..opts()
                },
            )
            .unwrap();
            bounds_csv(&lower_bounds(&r).unwrap()).unwrap() + &r.canonical_json()
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn interrupted_census_resumes_to_the_same_result() {
    let rule = WebRule::builtin(BuiltinRule::Extended1Or3);
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("m3.ck");
    let with = |stop| CensusOptions {
        checkpoint: Some(ck.clone()),
        stop_after: stop,
        workers: 2,
        ..opts()
    };
    assert!(run_census(&rule, 3, PathType::Free(4), &with(Some(40))).is_err());
    // a torn record at the tail is discarded on resume
    let len = std::fs::metadata(&ck).unwrap().len();
    std::fs::OpenOptions::new()
        .append(true)
        .open(&ck)
        .unwrap()
        .write_all(&[7, 0, 0])
        .unwrap();
    assert_eq!(std::fs::metadata(&ck).unwrap().len(), len + 3);
    let resumed = run_census(&rule, 3, PathType::Free(4), &with(None)).unwrap();
    let clean = run_census(&rule, 3, PathType::Free(4), &opts()).unwrap();
    assert_eq!(resumed.canonical_json(), clean.canonical_json());
    let other = WebRule::builtin(BuiltinRule::Piggyback);
    let bad = CensusOptions {
        checkpoint: Some(ck.clone()),
        ..opts()
    };
    assert!(run_census(&other, 3, PathType::Wide, &bad).is_err());
}

use std::io::Write;

#[test]
fn extended_ethers_have_odd_runs_and_dyadic_periods() {
    let rule = WebRule::builtin(BuiltinRule::Extended1Or3);
    let r = run_census(
        &rule,
        3,
        PathType::Free(4),
        &CensusOptions {
            combine_reflections: false,
            ..opts()
        },
    )
    .unwrap();
    assert_eq!(r.unresolved, 0);
    for e in &r.per_ether {
        if e.signature.is_zero() {
            continue;
        }
        let s = e.signature.states();
        assert!(e.spatial_period.is_power_of_two(), "{}", e.signature);
        assert_ne!(s, [2], "the all-2 ether");
        assert_eq!(*s.last().unwrap(), 2);
        let mut run = 0;
        for &c in s {
            if c == 0 {
                run += 1;
            } else {
                assert_eq!(run % 2, 1, "{}", e.signature);
                run = 0;
            }
        }
    }
}

#[test]
fn bounds_and_csv() {
    let rule = WebRule::builtin(BuiltinRule::Extended1Or3);
    let r = run_census(&rule, 2, PathType::Free(4), &opts()).unwrap();
    let b = lower_bounds(&r).unwrap();
    let total: u64 = b.rows.iter().map(|x| x.n_b).sum();
    assert!(total + r.unresolved <= r.n_n && r.n_n <= r.total_image);
    for row in &b.rows {
        assert!(row.truncated_1e4 as u128 * r.n_n as u128 <= row.n_b as u128 * 10_000);
        assert!((row.truncated_1e4 as u128 + 1) * r.n_n as u128 > row.n_b as u128 * 10_000);
    }
    let csv = bounds_csv(&b).unwrap();
    assert!(csv.starts_with("signature,temporal_period,spatial_period,density2,N_b,lower_bound\n"));
    assert_eq!(csv.lines().count(), b.rows.len() + 1);
}

#[test]
fn seed_bound_is_dyadic() {
    assert_eq!(seed_based_bound(8, 2), Dyadic { num: 1, exp: 16 });
    assert_eq!(seed_based_bound(0, 0).to_f64(), 0.25);
    assert!(seed_based_bound(3, 1) > seed_based_bound(4, 1));
    assert!(seed_based_bound(3, 1) > seed_based_bound(3, 2));
}

#[test]
fn random_seed_experiment_is_reproducible() {
    let rule = WebRule::builtin(BuiltinRule::WebXor);
    let a = mc_random_seed_experiment(&rule, 64, 40, 5, 6, 1).unwrap();
    let b = mc_random_seed_experiment(&rule, 64, 40, 5, 6, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.ethers.values().sum::<u64>(), 40);
    assert!(a.ethers.keys().all(|k| k == "0" || k == NOT_CERTIFIED));
}
