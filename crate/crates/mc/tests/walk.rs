use orthoscheme_mc::rng::derive_seed;
use orthoscheme_mc::walk::{bridge_with, sample_bridge, sample_walk, walk_with};
use orthoscheme_mc::RngStream;

#[test]
fn paths_start_at_origin() {
    for id in 0..20 {
        let w = sample_walk(3, 5, RngStream::new(1, id));
        assert_eq!(w.len(), 6);
        assert!(w[0].iter().all(|&c| c == 0.0));
        let b = sample_bridge(2, 4, RngStream::new(1, id));
        assert_eq!(b.len(), 5);
        assert!(b[0].iter().all(|&c| c == 0.0));
    }
}

#[test]
fn full_bridge_returns_to_origin() {
    // the bridge construction evaluated at k = n + 1 telescopes to zero
    let mut g = RngStream::new(9, 0).gaussian();
    let n = 6;
    let w = walk_with(2, n + 1, &mut g);
    let end = &w[n + 1];
    for e in end {
        assert_eq!(e - (n + 1) as f64 / (n + 1) as f64 * e, 0.0);
    }
}

#[test]
fn streams_are_reproducible() {
    let a = sample_walk(2, 10, RngStream::new(42, 3));
    let b = sample_walk(2, 10, RngStream::new(42, 3));
    let c = sample_walk(2, 10, RngStream::new(42, 4));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_ne!(derive_seed(1, "x"), derive_seed(1, "y"));
    assert_ne!(derive_seed(1, "x"), derive_seed(2, "x"));
}

#[test]
fn walk_endpoint_moments() {
    let (d, n, runs) = (2, 5, 100_000);
    let mut g = RngStream::new(17, 0).gaussian();
    let mut sum = [0.0; 2];
    let mut sq = [0.0; 2];
    for _ in 0..runs {
        let w = walk_with(d, n, &mut g);
        for c in 0..d {
            sum[c] += w[n][c];
            sq[c] += w[n][c] * w[n][c];
        }
    }
    let r = runs as f64;
    for c in 0..d {
        let mean = sum[c] / r;
        assert!(mean.abs() <= 4.0 * (n as f64 / r).sqrt(), "mean {mean}");
        // Var of the sample variance of a N(0, n) sample is 2 n^2 / r
        let var = sq[c] / r - mean * mean;
        assert!((var - n as f64).abs() <= 4.0 * (2.0 * (n * n) as f64 / r).sqrt(), "var {var}");
    }
}

#[test]
fn bridge_variance() {
    let (n, runs) = (5, 100_000);
    let mut g = RngStream::new(23, 0).gaussian();
    let mut sq = vec![0.0; n + 1];
    for _ in 0..runs {
        let b = bridge_with(1, n, &mut g);
        for k in 0..=n {
            sq[k] += b[k][0] * b[k][0];
        }
    }
    for (k, s) in sq.iter().enumerate().skip(1) {
        let expected = k as f64 * (1.0 - k as f64 / (n + 1) as f64);
        let var = s / runs as f64;
        assert!((var - expected).abs() <= 4.0 * (2.0 * expected * expected / runs as f64).sqrt(), "k={k}: {var} vs {expected}");
    }
}
