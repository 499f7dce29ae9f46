use std::collections::HashMap;

use raag::random::{max_edges, sample_gnn, tv_distance};
use raag::*;

#[test]
fn sampling_is_uniform_on_a_tiny_space() {
    let mut freq: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    let samples = 15_000;
    for seed in 0..samples {
        let g = sample_gnn(4, 2, seed).unwrap();
        *freq.entry(g.edges().collect()).or_default() += 1;
    }
    assert_eq!(freq.len(), 15);
    for &count in freq.values() {
        let p = count as f64 / samples as f64;
        assert!((p - 1.0 / 15.0).abs() < 0.01, "{p}");
    }
    // Chi-square with 14 degrees of freedom; 36.1 is the 0.1% quantile.
    let expected = samples as f64 / 15.0;
    let chi2: f64 = freq.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    assert!(chi2 < 36.1, "{chi2}");
}

#[test]
fn experiments_are_deterministic() {
    let cfg = ExperimentConfig::new(60, 0.2, 100, 5).unwrap();
    let a = run_experiment(&cfg).unwrap();
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.isolated_histogram.iter().sum::<usize>(), 100);
    assert_eq!(isolated_distribution(&cfg).unwrap().isolated_histogram, a.isolated_histogram);
    assert_eq!(nl_frequency(&cfg).unwrap().nl_count, a.nl_count);
}

#[test]
fn three_isolated_vertices_always_give_nl() {
    // Sparse graphs have many isolated vertices.
    let cfg = ExperimentConfig::new(40, -1.2, 300, 1).unwrap();
    let r = run_experiment(&cfg).unwrap();
    assert!(r.isolated_histogram.len() > 3);
    assert_eq!(r.isolated_without_nl, 0);
}

#[test]
fn distance_matches_hand_computation() {
    // Histogram {0: 1, 1: 1} against Poisson(1).
    let (tv, pmf) = tv_distance(&[1, 1], 1.0);
    let e = (-1f64).exp();
    let expected = 0.5 * ((0.5 - e).abs() + (0.5 - e).abs() + (1.0 - 2.0 * e));
    assert!((tv - expected).abs() < 1e-12);
    assert_eq!(pmf.len(), 31);
    assert_eq!(max_edges(500), 124_750);
}
