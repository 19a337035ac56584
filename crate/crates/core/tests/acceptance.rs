//! Acceptance gate: every release-blocking guarantee, one test per
//! criterion, each printing a single PASS line with its evidence.
//! Run with `cargo test -p warpbound --test acceptance -- --nocapture`.

use std::time::Instant;

use rand::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use warpbound::{
    band_min_left, build_model, classify, classify_exhaustive, compute_envelope, dtw, dtw_oracle,
    envelope_oracle, generate, lb_enhanced, lb_enhanced_oracle, lb_improved, lb_keogh,
    lb_kim_sum, lb_new, lb_yi, measure_bound, measure_tightness, squared_euclidean, BoundKind,
    BoundSpec, CandidateOrder, Dataset, SyntheticSpec, TimeSeries, WindowSpec,
};

/// Uniform values in a fixed range; odd draws come from a random walk so the
/// corpus mixes rough and smooth shapes.
fn random_series(rng: &mut ChaCha8Rng, len: usize, walk: bool) -> TimeSeries {
    let values: Vec<f64> = if walk {
        let mut acc = 0.0;
        (0..len)
            .map(|_| {
                let step: f64 = rng.sample(StandardNormal);
                acc += step;
                acc
            })
            .collect()
    } else {
        (0..len).map(|_| rng.random_range(-4.0..4.0)).collect()
    };
    TimeSeries::new(values).unwrap()
}

fn random_pair(rng: &mut ChaCha8Rng, len: usize, walk: bool) -> (TimeSeries, TimeSeries) {
    (
        random_series(rng, len, walk),
        random_series(rng, len, walk),
    )
}

fn synthetic(seed: u64) -> (Dataset, Dataset) {
    let spec: SyntheticSpec = format!("random_walk:n=150,len=128,k=3,seed={seed}")
        .parse()
        .unwrap();
    generate(&spec).unwrap().split(100)
}

#[test]
fn c01_dtw_matches_path_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut pairs = 0usize;
    let mut configs = 0usize;
    // Every length the oracle can enumerate, every window at that length.
    for len in 2..=12usize {
        for w in 0..len {
            configs += 1;
            let spec = WindowSpec::absolute(w);
            for rep in 0..26 {
                let (a, b) = random_pair(&mut rng, len, rep % 2 == 1);
                let fast = dtw(&a, &b, spec, None).unwrap();
                let slow = dtw_oracle(&a, &b, spec).unwrap();
                assert_eq!(
                    fast.squared, slow.squared,
                    "dtw differs from path oracle at len={len} w={w}"
                );
                assert_eq!(fast.distance, slow.squared.sqrt());
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(pairs >= 2000, "corpus too small: {pairs}");
    assert!(elapsed.as_secs() < 30, "criterion 01 overran: {elapsed:?}");
    println!(
        "criterion 01 (dtw equals path-enumeration oracle): PASS — {pairs} pairs, {configs} length/window configs, {elapsed:.2?}"
    );
}

/// The randomized corpus shared by criteria 02 and 03: mixed rough/smooth
/// pairs, lengths spanning [8, 256], windows covering both extremes and the
/// interior.
fn admissibility_corpus() -> Vec<(TimeSeries, TimeSeries, WindowSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let lengths = [8usize, 13, 21, 32, 50, 64, 100, 128, 200, 256];
    let mut corpus = Vec::with_capacity(10_000);
    for i in 0..10_000usize {
        let len = lengths[i % lengths.len()];
        let w = match i % 5 {
            0 => 0,
            1 => 1,
            2 => len - 1,
            _ => rng.random_range(2..len),
        };
        let (a, b) = random_pair(&mut rng, len, i % 2 == 1);
        corpus.push((a, b, WindowSpec::absolute(w)));
    }
    corpus
}

#[test]
fn c02_every_bound_is_admissible() {
    let start = Instant::now();
    let mut checked = 0u64;
    for (a, b, w) in admissibility_corpus() {
        let len = a.len();
        let d = dtw(&a, &b, w, None).unwrap();
        let slack = 1e-9 * d.squared.max(1.0);
        let limit = d.squared + slack;
        let env = compute_envelope(&b, w);
        let inf = f64::INFINITY;
        let values = [
            ("kim", lb_kim_sum(&a, &b).unwrap().squared),
            ("yi", lb_yi(&a, &b).unwrap().squared),
            ("keogh", lb_keogh(&a, &env, w, inf).unwrap().squared),
            ("improved", lb_improved(&a, &b, &env, w, inf).unwrap().squared),
            ("new", lb_new(&a, &b, w, inf).unwrap().squared),
            ("enhanced:1", lb_enhanced(&a, &b, &env, w, 1, inf).unwrap().squared),
            ("enhanced:2", lb_enhanced(&a, &b, &env, w, 2, inf).unwrap().squared),
            ("enhanced:3", lb_enhanced(&a, &b, &env, w, 3, inf).unwrap().squared),
            ("enhanced:5", lb_enhanced(&a, &b, &env, w, 5, inf).unwrap().squared),
            (
                "enhanced:len/2",
                lb_enhanced(&a, &b, &env, w, len / 2, inf).unwrap().squared,
            ),
        ];
        for (name, lb) in values {
            assert!(
                lb <= limit,
                "{name} exceeded dtw: lb={lb} dtw={} len={len} w={:?}",
                d.squared,
                w
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 180, "criterion 02 overran: {elapsed:?}");
    println!(
        "criterion 02 (lower bounds admissible): PASS — 10000 pairs, {checked} bound evaluations, 0 violations, {elapsed:.2?}"
    );
}

#[test]
fn c03_one_band_dominates_the_envelope_bound() {
    let start = Instant::now();
    let mut checked = 0u64;
    for (a, b, w) in admissibility_corpus() {
        let env = compute_envelope(&b, w);
        let keogh = lb_keogh(&a, &env, w, f64::INFINITY).unwrap().squared;
        let e1 = lb_enhanced(&a, &b, &env, w, 1, f64::INFINITY)
            .unwrap()
            .squared;
        // Exact comparison: both sums fold the same per-position terms in
        // the same order, and each band term is at least its envelope term.
        assert!(
            e1 >= keogh,
            "one-band bound fell below envelope bound: {e1} < {keogh} (len={} w={:?})",
            a.len(),
            w
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 03 (one-band bound ≥ envelope bound, exact): PASS — {checked} pairs, 0 violations, {elapsed:.2?}"
    );
}

#[test]
fn c04_enhanced_matches_its_band_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut checked = 0u64;
    let mut configs = 0u64;
    for len in 4..=16usize {
        for v in 1..=len / 2 {
            for w in 0..len {
                configs += 1;
                let spec = WindowSpec::absolute(w);
                for rep in 0..50 {
                    let (a, b) = random_pair(&mut rng, len, rep % 2 == 0);
                    let env = compute_envelope(&b, spec);
                    let fast = lb_enhanced(&a, &b, &env, spec, v, f64::INFINITY).unwrap();
                    let slow = lb_enhanced_oracle(&a, &b, spec, v).unwrap();
                    assert_eq!(
                        fast.squared, slow,
                        "banded bound differs from oracle at len={len} v={v} w={w}"
                    );
                    checked += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 04 overran: {elapsed:?}");
    println!(
        "criterion 04 (banded bound equals materialized-band oracle): PASS — {configs} configs, {checked} exact matches, {elapsed:.2?}"
    );
}

#[test]
fn c05_envelope_matches_naive_scan() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut series_count = 0usize;
    let mut checks = 0usize;
    for i in 0..1000usize {
        let len = match i % 4 {
            0 => rng.random_range(1..=16),
            1 => rng.random_range(17..=128),
            2 => rng.random_range(129..=1024),
            _ => 1024,
        };
        let s = random_series(&mut rng, len, i % 2 == 0);
        let mut windows = vec![0, 1.min(len - 1), len - 1];
        for _ in 0..3 {
            windows.push(rng.random_range(0..len));
        }
        for w in windows {
            let spec = WindowSpec::absolute(w);
            assert_eq!(
                compute_envelope(&s, spec),
                envelope_oracle(&s, spec),
                "envelope mismatch at len={len} w={w}"
            );
            checks += 1;
        }
        series_count += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 05 (deque envelope equals naive scan): PASS — {series_count} series, {checks} envelopes, {elapsed:.2?}"
    );
}

#[test]
fn c06_pruned_search_is_lossless() {
    let start = Instant::now();
    let bounds = [
        "kim",
        "yi",
        "keogh",
        "improved",
        "new",
        "enhanced:5",
        "cascade:kim,yi,keogh,enhanced:5",
    ];
    let mut compared = 0usize;
    for seed in [11u64, 12, 13] {
        let (train, test) = synthetic(seed);
        for w in [3usize, 13, 64] {
            let spec = WindowSpec::absolute(w);
            let mut model =
                build_model(train.series.clone(), spec, bounds[0].parse().unwrap()).unwrap();
            let baseline: Vec<_> = test
                .series
                .iter()
                .map(|q| classify_exhaustive(&model, q).unwrap())
                .collect();
            for bound in bounds {
                model.set_bound(bound.parse().unwrap());
                for (q, want) in test.series.iter().zip(&baseline) {
                    let got = classify(&model, q).unwrap();
                    assert_eq!(got.label, want.label, "label drift: {bound} w={w} seed={seed}");
                    assert_eq!(got.nn_index, want.nn_index, "nn drift: {bound} w={w} seed={seed}");
                    assert_eq!(
                        got.nn_distance, want.nn_distance,
                        "distance drift: {bound} w={w} seed={seed}"
                    );
                    compared += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 06 overran: {elapsed:?}");
    println!(
        "criterion 06 (pruned search equals exhaustive scan): PASS — 3 datasets × 3 windows × {} bounds, {compared} queries compared, {elapsed:.2?}",
        bounds.len()
    );
}

#[test]
fn c07_tightness_grows_with_band_count() {
    let start = Instant::now();
    let spec: SyntheticSpec = "random_walk:n=2000,len=256,k=1,seed=21".parse().unwrap();
    let pairs = generate(&spec).unwrap().pairs();
    assert_eq!(pairs.len(), 1000);
    let w = WindowSpec::fractional(0.1).unwrap();
    let mean = |b: &str| {
        measure_tightness(&b.parse::<BoundSpec>().unwrap(), &pairs, w)
            .unwrap()
            .mean
    };
    let keogh = mean("keogh");
    let new = mean("new");
    let e1 = mean("enhanced:1");
    let e2 = mean("enhanced:2");
    let e5 = mean("enhanced:5");
    assert!(e5 > e2, "five bands not tighter than two: {e5} vs {e2}");
    assert!(e2 > e1, "two bands not tighter than one: {e2} vs {e1}");
    assert!(e1 >= keogh, "one band fell below envelope: {e1} vs {keogh}");
    assert!(e5 > new, "five bands not tighter than column minima: {e5} vs {new}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 07 overran: {elapsed:?}");
    println!(
        "criterion 07 (mean tightness ordering): PASS — 1000 pairs, keogh={keogh:.4} < e1={e1:.4} < e2={e2:.4} < e5={e5:.4}, new={new:.4} < e5, {elapsed:.2?}"
    );
}

#[test]
fn c08_band_count_buys_pruning_power() {
    let start = Instant::now();
    let windows = [3usize, 13, 39, 64];
    let mut ratio_report = String::new();
    for seed in [11u64, 12, 13] {
        let (train, test) = synthetic(seed);
        for &w in &windows {
            let spec = WindowSpec::absolute(w);
            let mut model = build_model(
                train.series.clone(),
                spec,
                BoundSpec::single(BoundKind::Keogh),
            )
            .unwrap();
            model.set_order(CandidateOrder::Euclidean);
            model.set_dtw_abandon(true);
            let keogh = measure_bound(&model, &test, 1, &train.name).unwrap();
            model.set_bound(BoundSpec::single(BoundKind::Enhanced { v: 1 }));
            let e1 = measure_bound(&model, &test, 1, &train.name).unwrap();
            model.set_bound(BoundSpec::single(BoundKind::Enhanced { v: 5 }));
            let e5 = measure_bound(&model, &test, 1, &train.name).unwrap();

            assert!(
                e1.dtw_calls <= keogh.dtw_calls,
                "one band admitted more full computations (seed={seed} w={w}): {} vs {}",
                e1.dtw_calls,
                keogh.dtw_calls
            );
            if w == 13 || w == 39 {
                assert!(
                    e5.dtw_calls < keogh.dtw_calls,
                    "five bands did not prune strictly more (seed={seed} w={w}): {} vs {}",
                    e5.dtw_calls,
                    keogh.dtw_calls
                );
            }
            ratio_report.push_str(&format!(
                " [seed={seed} w={w}: calls {}→{}, time ×{:.2}]",
                keogh.dtw_calls,
                e5.dtw_calls,
                e5.elapsed_ns as f64 / keogh.elapsed_ns.max(1) as f64
            ));
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 08 (pruning power, wall-clock reported not asserted): PASS —{ratio_report}, {elapsed:.2?}"
    );
}

#[test]
fn c09_window_semantics_hold() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut pairs = 0usize;
    for i in 0..500usize {
        let len = 2 + i % 39; // spans [2, 40]
        let (a, b) = random_pair(&mut rng, len, i % 2 == 1);
        let zero = dtw(&a, &b, WindowSpec::absolute(0), None).unwrap();
        assert_eq!(
            zero.squared,
            squared_euclidean(&a, &b, None).unwrap(),
            "zero-window distance differs from pointwise distance at len={len}"
        );
        let mut prev = zero.squared;
        for w in 1..len {
            let d = dtw(&a, &b, WindowSpec::absolute(w), None).unwrap().squared;
            assert!(
                d <= prev,
                "distance rose as the window widened: len={len} w={w} {d} > {prev}"
            );
            prev = d;
        }
        pairs += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 09 (window semantics: zero window is pointwise, widening never raises the distance): PASS — {pairs} pairs, full window grids, {elapsed:.2?}"
    );
}

#[test]
fn c10_worked_fixtures_hold_exactly() {
    let start = Instant::now();
    let ts = |v: &[f64]| TimeSeries::new(v.to_vec()).unwrap();
    let inf = f64::INFINITY;

    // Full distances.
    let ramp = ts(&[0.0, 1.0, 2.0, 3.0]);
    let pmar = ts(&[3.0, 2.0, 1.0, 0.0]);
    let w2 = WindowSpec::absolute(2);
    let d = dtw(&ramp, &pmar, w2, None).unwrap();
    assert_eq!(d.squared, 20.0);
    assert_eq!(d.distance, 20.0f64.sqrt());
    assert_eq!(
        dtw(&ts(&[0.0, 0.0]), &ts(&[1.0, 1.0]), WindowSpec::absolute(1), None)
            .unwrap()
            .squared,
        2.0
    );
    assert_eq!(
        dtw_oracle(&ts(&[0.0, 1.0, 2.0]), &ts(&[2.0, 3.0, 4.0]), w2)
            .unwrap()
            .squared,
        10.0
    );

    // Envelopes.
    let spike = ts(&[1.0, 5.0, 2.0]);
    let e = compute_envelope(&spike, WindowSpec::absolute(1));
    assert_eq!(e.upper(), &[5.0, 5.0, 5.0]);
    assert_eq!(e.lower(), &[1.0, 1.0, 2.0]);
    let e = compute_envelope(&spike, WindowSpec::absolute(2));
    assert_eq!(e.lower(), &[1.0, 1.0, 1.0]);
    let e = compute_envelope(&ts(&[2.0, 4.0]), WindowSpec::absolute(1));
    assert_eq!(e.upper(), &[4.0, 4.0]);
    assert_eq!(e.lower(), &[2.0, 2.0]);

    // Cheap bounds.
    let r = lb_kim_sum(&ts(&[0.0, 1.0, 2.0]), &ts(&[2.0, 3.0, 4.0])).unwrap();
    assert_eq!(r.squared, 8.0);
    let r = lb_yi(&ts(&[5.0, 0.0, 5.0]), &ts(&[1.0, 2.0, 3.0])).unwrap();
    assert_eq!(r.squared, 9.0);

    // Envelope-family bounds on the flat pair: every bound hits the
    // distance exactly (ratio 1).
    let flat0 = ts(&[0.0, 0.0, 0.0]);
    let flat1 = ts(&[1.0, 1.0, 1.0]);
    let w1 = WindowSpec::absolute(1);
    let env1 = compute_envelope(&flat1, w1);
    assert_eq!(dtw(&flat0, &flat1, w1, None).unwrap().squared, 3.0);
    assert_eq!(lb_keogh(&flat0, &env1, w1, inf).unwrap().squared, 3.0);
    assert_eq!(lb_improved(&flat0, &flat1, &env1, w1, inf).unwrap().squared, 3.0);
    assert_eq!(lb_new(&flat0, &flat1, w1, inf).unwrap().squared, 3.0);
    assert_eq!(lb_enhanced(&flat0, &flat1, &env1, w1, 1, inf).unwrap().squared, 3.0);

    // Envelope bound on the crossing ramps at window two.
    let env2 = compute_envelope(&pmar, w2);
    assert_eq!(env2.upper(), &[3.0, 3.0, 3.0, 2.0]);
    assert_eq!(env2.lower(), &[1.0, 0.0, 0.0, 0.0]);
    assert_eq!(lb_keogh(&ramp, &env2, w2, inf).unwrap().squared, 2.0);

    // Band minimum anchored at the second position.
    assert_eq!(band_min_left(&ramp, &pmar, 1, w2).unwrap(), 1.0);

    // Two bands recover the full distance on the crossing ramps.
    let e2 = lb_enhanced(&ramp, &pmar, &env2, w2, 2, inf).unwrap();
    assert_eq!(e2.squared, 20.0);
    assert_eq!(e2.squared / d.squared, 1.0);
    assert_eq!(lb_enhanced_oracle(&ramp, &pmar, w2, 2).unwrap(), 20.0);
    assert_eq!(lb_enhanced_oracle(&flat0, &flat1, w1, 1).unwrap(), 3.0);

    // Admissibility of the cheap-bound fixtures against the enumerated
    // distance.
    assert!(8.0 <= dtw_oracle(&ts(&[0.0, 1.0, 2.0]), &ts(&[2.0, 3.0, 4.0]), w2).unwrap().squared);

    let elapsed = start.elapsed();
    println!(
        "criterion 10 (hand-derived fixtures): PASS — distances, envelopes, and every bound family pinned to exact values, {elapsed:.2?}"
    );
}

// The shared admissibility corpus is deterministic: criteria 02 and 03 must
// see identical pairs.
#[test]
fn corpus_is_reproducible() {
    let a = admissibility_corpus();
    let b = admissibility_corpus();
    assert_eq!(a.len(), b.len());
    for ((a1, b1, w1), (a2, b2, w2)) in a.iter().zip(&b) {
        assert_eq!(a1.values(), a2.values());
        assert_eq!(b1.values(), b2.values());
        assert_eq!(w1, w2);
    }
}
