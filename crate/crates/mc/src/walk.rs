use crate::rng::{Gaussian, RngStream};

pub type Point = Vec<f64>;

/// S_0 = 0, S_k = X_1 + ... + X_k with standard Gaussian increments in R^d.
pub fn walk_with(d: usize, n: usize, g: &mut Gaussian) -> Vec<Point> {
    let mut pts = Vec::with_capacity(n + 1);
    let mut cur = vec![0.0; d];
    pts.push(cur.clone());
    for _ in 0..n {
        for c in cur.iter_mut() {
            *c += g.normal();
        }
        pts.push(cur.clone());
    }
    pts
}

/// S~_k = S_k - k/(n+1) S_{n+1} for k = 0..n; the endpoint S~_{n+1} = 0 is
/// implicit.
pub fn bridge_with(d: usize, n: usize, g: &mut Gaussian) -> Vec<Point> {
    let mut full = walk_with(d, n + 1, g);
    let end = full.pop().unwrap();
    let m = (n + 1) as f64;
    for (k, p) in full.iter_mut().enumerate() {
        let w = k as f64 / m;
        for (c, e) in p.iter_mut().zip(&end) {
            *c -= w * e;
        }
    }
    full
}

pub fn sample_walk(d: usize, n: usize, stream: RngStream) -> Vec<Point> {
    walk_with(d, n, &mut stream.gaussian())
}

pub fn sample_bridge(d: usize, n: usize, stream: RngStream) -> Vec<Point> {
    bridge_with(d, n, &mut stream.gaussian())
}
