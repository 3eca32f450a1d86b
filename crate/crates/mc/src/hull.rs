//! Face counts of convex hulls in the plane and in space.

use std::collections::{HashMap, HashSet};

use crate::error::{McError, Result};
use crate::walk::Point;

pub const MINKOWSKI_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HullFaceCounts {
    pub f0: usize,
    pub f1: usize,
    /// Only meaningful in dimension 3.
    pub f2: usize,
}

impl HullFaceCounts {
    pub fn get(&self, j: usize) -> usize {
        match j {
            0 => self.f0,
            1 => self.f1,
            _ => self.f2,
        }
    }
}

pub fn hull_faces(points: &[Point], d: usize) -> Result<HullFaceCounts> {
    if points.iter().any(|p| p.len() != d) {
        return Err(McError::InvalidArgument(format!("all points must have dimension {d}")));
    }
    if points.len() < d + 1 {
        return Err(McError::InvalidArgument(format!("need at least {} points, got {}", d + 1, points.len())));
    }
    match d {
        2 => hull2(points),
        3 => hull3(points),
        _ => Err(McError::InvalidArgument(format!("hulls are only counted for d in {{2, 3}}, got {d}"))),
    }
}

/// Hull of all sums p_1 + ... + p_b with p_i taken from set i.
pub fn minkowski_hull_faces(sets: &[Vec<Point>], d: usize) -> Result<HullFaceCounts> {
    let count = sets.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len())).unwrap_or(usize::MAX);
    if count > MINKOWSKI_LIMIT {
        return Err(McError::TooManyCandidates { count, limit: MINKOWSKI_LIMIT });
    }
    let mut sums: Vec<Point> = vec![vec![0.0; d]];
    for set in sets {
        let mut next = Vec::with_capacity(sums.len() * set.len());
        for s in &sums {
            for p in set {
                if p.len() != d {
                    return Err(McError::InvalidArgument(format!("all points must have dimension {d}")));
                }
                next.push(s.iter().zip(p).map(|(a, b)| a + b).collect());
            }
        }
        sums = next;
    }
    hull_faces(&sums, d)
}

fn scale_of(points: &[Point]) -> f64 {
    let s = points.iter().flat_map(|p| p.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

fn hull2(points: &[Point]) -> Result<HullFaceCounts> {
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    let eps = 1e-12;
    // non-left turns (including collinear within a relative tolerance) are popped
    let turn = |o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]| {
        let (ux, uy) = (a[0] - o[0], a[1] - o[1]);
        let (vx, vy) = (b[0] - o[0], b[1] - o[1]);
        let cross = ux * vy - uy * vx;
        cross > eps * (ux.hypot(uy) * vx.hypot(vy))
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for p in pts.iter() {
        while hull.len() >= 2 && !turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && !turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(McError::Degenerate("all points are collinear".into()));
    }
    Ok(HullFaceCounts { f0: hull.len(), f1: hull.len(), f2: 0 })
}

type V3 = [f64; 3];

fn sub(a: &V3, b: &V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &V3, b: &V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &V3) -> f64 {
    dot(a, a).sqrt()
}

struct Face {
    v: [usize; 3],
    normal: V3,
    offset: f64,
    alive: bool,
}

impl Face {
    fn new(pts: &[V3], v: [usize; 3]) -> Face {
        let n = cross(&sub(&pts[v[1]], &pts[v[0]]), &sub(&pts[v[2]], &pts[v[0]]));
        let len = norm(&n);
        let normal = if len > 0.0 { [n[0] / len, n[1] / len, n[2] / len] } else { [0.0; 3] };
        Face { v, normal, offset: dot(&normal, &pts[v[0]]), alive: true }
    }

    fn dist(&self, p: &V3) -> f64 {
        dot(&self.normal, p) - self.offset
    }

    fn edges(&self) -> [(usize, usize); 3] {
        [(self.v[0], self.v[1]), (self.v[1], self.v[2]), (self.v[2], self.v[0])]
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn hull3(points: &[Point]) -> Result<HullFaceCounts> {
    let pts: Vec<V3> = points.iter().map(|p| [p[0], p[1], p[2]]).collect();
    let scale = scale_of(points);
    let eps = 1e-10 * scale;

    let i0 = 0;
    let far = |score: &dyn Fn(&V3) -> f64| {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, p) in pts.iter().enumerate() {
            let s = score(p);
            if s > best.1 {
                best = (i, s);
            }
        }
        best
    };
    let (i1, d1) = far(&|p| norm(&sub(p, &pts[i0])));
    if d1 <= eps {
        return Err(McError::Degenerate("all points coincide".into()));
    }
    let axis = sub(&pts[i1], &pts[i0]);
    let (i2, d2) = far(&|p| norm(&cross(&axis, &sub(p, &pts[i0]))) / norm(&axis));
    if d2 <= eps {
        return Err(McError::Degenerate("all points are collinear".into()));
    }
    let plane = Face::new(&pts, [i0, i1, i2]);
    let (i3, d3) = far(&|p| plane.dist(p).abs());
    if d3 <= eps {
        return Err(McError::Degenerate("all points are coplanar".into()));
    }
    let seed = [i0, i1, i2, i3];
    let centroid: V3 = {
        let mut c = [0.0; 3];
        for &i in &seed {
            for a in 0..3 {
                c[a] += pts[i][a] / 4.0;
            }
        }
        c
    };
    let mut faces: Vec<Face> = Vec::new();
    for tri in [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]] {
        let mut f = Face::new(&pts, tri);
        if f.dist(&centroid) > 0.0 {
            f = Face::new(&pts, [tri[0], tri[2], tri[1]]);
        }
        faces.push(f);
    }

    for (pi, p) in pts.iter().enumerate() {
        if seed.contains(&pi) {
            continue;
        }
        let visible: Vec<usize> = (0..faces.len()).filter(|&f| faces[f].alive && faces[f].dist(p) > eps).collect();
        if visible.is_empty() {
            continue;
        }
        let mut edges = HashSet::new();
        for &f in &visible {
            edges.extend(faces[f].edges());
            faces[f].alive = false;
        }
        let horizon: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| !edges.contains(&(b, a))).collect();
        for (a, b) in horizon {
            faces.push(Face::new(&pts, [a, b, pi]));
        }
    }

    let live: Vec<&Face> = faces.iter().filter(|f| f.alive).collect();
    let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in live.iter().enumerate() {
        for e in f.edges() {
            if owner.insert(e, fi).is_some() {
                return Err(McError::Numerical("edge shared by two faces with one orientation".into()));
            }
        }
    }
    // merge adjacent coplanar triangles
    let mut parent: Vec<usize> = (0..live.len()).collect();
    for (fi, f) in live.iter().enumerate() {
        for (a, b) in f.edges() {
            let Some(&gi) = owner.get(&(b, a)) else {
                return Err(McError::Numerical("hull surface is not closed".into()));
            };
            let g = live[gi];
            let apex = g.v.iter().copied().find(|&v| v != a && v != b).unwrap();
            if dot(&f.normal, &g.normal) > 0.0 && f.dist(&pts[apex]).abs() <= eps {
                let (x, y) = (find(&mut parent, fi), find(&mut parent, gi));
                parent[x] = y;
            }
        }
    }
    let mut groups = HashSet::new();
    for fi in 0..live.len() {
        groups.insert(find(&mut parent, fi));
    }
    let mut boundary = 0;
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for (&(a, b), &fi) in &owner {
        if a > b {
            continue;
        }
        let gi = owner[&(b, a)];
        if find(&mut parent, fi) != find(&mut parent, gi) {
            boundary += 1;
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
    }
    if degree.values().any(|&d| d < 2) {
        return Err(McError::Numerical("dangling hull edge".into()));
    }
    let on_edge = degree.values().filter(|&&d| d == 2).count();
    let counts = HullFaceCounts {
        f0: degree.values().filter(|&&d| d >= 3).count(),
        f1: boundary - on_edge,
        f2: groups.len(),
    };
    if counts.f0 + counts.f2 != counts.f1 + 2 {
        return Err(McError::Numerical(format!("Euler relation fails for {counts:?}")));
    }
    Ok(counts)
}
