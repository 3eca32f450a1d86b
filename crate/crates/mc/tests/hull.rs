use orthoscheme_mc::hull::{hull_faces, minkowski_hull_faces, HullFaceCounts, MINKOWSKI_LIMIT};
use orthoscheme_mc::walk::walk_with;
use orthoscheme_mc::{McError, RngStream};

fn counts(f0: usize, f1: usize, f2: usize) -> HullFaceCounts {
    HullFaceCounts { f0, f1, f2 }
}

#[test]
fn planar_examples() {
    let square = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
    assert_eq!(hull_faces(&square, 2).unwrap(), counts(4, 4, 0));
    let tri = vec![vec![0.3, 0.1], vec![2.0, -1.0], vec![0.5, 4.0]];
    assert_eq!(hull_faces(&tri, 2).unwrap().f0, 3);
    // interior and edge points are not vertices
    let mut more = square.clone();
    more.push(vec![0.5, 0.5]);
    more.push(vec![0.5, 0.0]);
    assert_eq!(hull_faces(&more, 2).unwrap(), counts(4, 4, 0));
}

#[test]
fn spatial_examples() {
    let tet = vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]];
    assert_eq!(hull_faces(&tet, 3).unwrap(), counts(4, 6, 4));
    let mut cube = Vec::new();
    for i in 0..8 {
        cube.push((0..3).map(|b| ((i >> b) & 1) as f64).collect::<Vec<f64>>());
    }
    cube.push(vec![0.5, 0.5, 0.5]);
    cube.push(vec![0.5, 0.5, 0.0]);
    assert_eq!(hull_faces(&cube, 3).unwrap(), counts(8, 12, 6));
    let mut oct = Vec::new();
    for c in 0..3 {
        for s in [-1.0, 1.0] {
            let mut p = vec![0.0; 3];
            p[c] = s;
            oct.push(p);
        }
    }
    assert_eq!(hull_faces(&oct, 3).unwrap(), counts(6, 12, 8));
}

#[test]
fn degenerate_inputs_are_rejected() {
    let line = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
    assert!(matches!(hull_faces(&line, 2), Err(McError::Degenerate(_))));
    let flat = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]];
    assert!(matches!(hull_faces(&flat, 3), Err(McError::Degenerate(_))));
    assert!(matches!(hull_faces(&line[..2], 2), Err(McError::InvalidArgument(_))));
    assert!(matches!(hull_faces(&line, 4), Err(McError::InvalidArgument(_))));
}

#[test]
fn random_walk_hulls_satisfy_euler() {
    let mut g = RngStream::new(5, 0).gaussian();
    for n in [3, 5, 10, 40] {
        for _ in 0..200 {
            let pts = walk_with(3, n, &mut g);
            let c = hull_faces(&pts, 3).unwrap();
            assert_eq!(c.f0 + c.f2, c.f1 + 2);
            // simplicial a.s.
            assert_eq!(2 * c.f1, 3 * c.f2);
            let p2 = walk_with(2, n, &mut g);
            let c2 = hull_faces(&p2, 2).unwrap();
            assert_eq!(c2.f0, c2.f1);
        }
    }
}

#[test]
fn minkowski_cases() {
    let seg1 = vec![vec![0.0, 0.0], vec![1.0, 0.2]];
    let seg2 = vec![vec![0.0, 0.0], vec![-0.3, 1.0]];
    assert_eq!(minkowski_hull_faces(&[seg1.clone(), seg2], 2).unwrap(), counts(4, 4, 0));
    let poly = vec![vec![0.0, 0.0], vec![2.0, 0.1], vec![1.0, 3.0], vec![0.5, 0.5]];
    let point = vec![vec![0.7, -0.2]];
    assert_eq!(minkowski_hull_faces(&[point, poly.clone()], 2).unwrap(), hull_faces(&poly, 2).unwrap());
    let big = vec![vec![0.0, 0.0]; 1001];
    assert!(matches!(
        minkowski_hull_faces(&[big.clone(), big], 2),
        Err(McError::TooManyCandidates { count: 1_002_001, limit: MINKOWSKI_LIMIT })
    ));
}
