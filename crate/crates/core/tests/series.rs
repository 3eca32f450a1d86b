use std::collections::BTreeMap;

use num::Zero;
use orthoscheme_core::angles::weak_compositions;
use orthoscheme_core::rational::{binomial, factorial, int, ratio, Rational};
use orthoscheme_core::series::*;
use orthoscheme_core::stirling::*;
use orthoscheme_core::CoreError;

fn poly(cs: &[Rational]) -> TPoly {
    TPoly::from_coeffs(cs.to_vec())
}

#[test]
fn tpoly_canonical_and_products() {
    let p = poly(&[int(1), int(2), int(0), int(0)]);
    assert_eq!(p.degree(), Some(1));
    assert_eq!(TPoly::from_coeffs(vec![int(0)]).degree(), None);
    let q = poly(&[int(-1), int(0), int(3)]);
    assert_eq!((&p * &q).degree(), Some(3));
    assert_eq!((&p * &q).coeff(3), int(6));
    assert!((&p - &p).is_zero());
    assert_eq!(p.eval(&int(2)), int(5));
}

#[test]
fn binom_series_examples() {
    let s = binom_series(&TPoly::t(), 3, 6).unwrap();
    assert_eq!(s.coeff(0), TPoly::one());
    assert_eq!(s.coeff(1), TPoly::t());
    let half = poly(&[ratio(1, 2), ratio(1, 2)]);
    let s = binom_series(&half, 1, 4).unwrap();
    assert_eq!(s.coeff(1), half);
    // recurrence c_l = c_{l-1} (s + l - 1) / l
    let s6 = binom_series(&half, 6, 8).unwrap();
    for l in 1..=6 {
        let expect = (&s6.coeff(l - 1) * &(&half + &TPoly::constant(int(l as i64 - 1)))).scale(&ratio(1, l as i64));
        assert_eq!(s6.coeff(l), expect);
    }
}

#[test]
fn g_series_examples() {
    let g = g_series(4, 6).unwrap();
    assert!(g.coeff(0).is_zero());
    assert_eq!(g.coeff(1), TPoly::t());
    assert_eq!(g.coeff(2), poly(&[int(0), ratio(1, 2), ratio(1, 2)]));
}

#[test]
fn degree_cap_is_an_error() {
    assert!(matches!(binom_series(&TPoly::t(), 5, 3), Err(CoreError::DegreeOverflow { .. })));
    assert!(g_series(4, 3).is_err());
    let g = g_series(4, 4).unwrap();
    assert!(g.pow(2).is_ok());
    assert!(matches!(g.scale(&TPoly::t()), Err(CoreError::DegreeOverflow { .. })));
}

#[test]
fn exp_log_roundtrip() {
    let g = g_series(6, 10).unwrap();
    let one_plus = g.add(&TruncSeries::one(6, 10)).unwrap();
    let l = one_plus.log().unwrap();
    assert_eq!(l.exp().unwrap(), one_plus);
    assert!(g.log().is_err());
    assert!(one_plus.exp().is_err());
}

#[test]
fn coef_block_examples() {
    assert_eq!(coef_block(&int(1), 0, 1).unwrap(), poly(&[int(1), int(1)]));
    assert_eq!(coef_block(&int(1), 1, 1).unwrap(), TPoly::t());
    for d in [int(0), ratio(1, 2), int(1), ratio(5, 3)] {
        assert!(coef_block(&d, 2, 0).unwrap().is_zero());
        assert!(coef_block(&d, 1, 0).unwrap().is_zero());
    }
}

#[test]
fn r_examples() {
    assert_eq!(r_coefficient(&int(1), 2, 0, &[1, 1]).unwrap(), int(1));
    assert!(r_coefficient(&int(1), 0, 0, &[]).is_err());
    for ns in [vec![3], vec![1, 2], vec![2, 2, 1]] {
        for d in [int(0), ratio(1, 2), int(1)] {
            let n: usize = ns.iter().sum();
            for j in 0..=n {
                let p = r_polynomial(&d, j, &ns).unwrap();
                for k in 0..j {
                    assert!(p.coeff(k).is_zero());
                }
            }
        }
    }
}

#[test]
fn r_single_factor_closed_forms() {
    for n in 0..=12usize {
        for j in 0..=n {
            let p1 = r_polynomial(&int(1), j, &[n]).unwrap();
            let ph = r_polynomial(&ratio(1, 2), j, &[n]).unwrap();
            let p0 = r_polynomial(&int(0), j, &[n]).unwrap();
            for k in 0..=n {
                let orth = factorial(j) / factorial(n) * stirling1(n + 1, k + 1) * stirling2(k + 1, j + 1);
                assert_eq!(p1.coeff(k), orth, "R1 n={n} j={j} k={k}");
                let wb = factorial(j) / factorial(n) * r_stirling1(n, k, &ratio(1, 2)) * r_stirling2(k, j, &ratio(1, 2));
                assert_eq!(ph.coeff(k), wb, "R1/2 n={n} j={j} k={k}");
                let wa = factorial(j) / factorial(n) * stirling1(n, k) * stirling2(k, j);
                assert_eq!(p0.coeff(k), wa, "R0 n={n} j={j} k={k}");
            }
        }
    }
}

#[test]
fn r_symmetric_in_sizes() {
    let d = int(1);
    for j in 0..=5 {
        let a = r_polynomial(&d, j, &[1, 2, 3]).unwrap();
        for perm in [[3, 2, 1], [2, 1, 3], [1, 3, 2]] {
            assert_eq!(r_polynomial(&d, j, &perm).unwrap(), a);
        }
    }
}

#[test]
fn r_sum_rules() {
    for ns in [vec![1, 1], vec![2, 3], vec![1, 2, 2], vec![4], vec![3, 0, 2]] {
        let n: usize = ns.iter().sum();
        for j in 0..=n {
            let p = r_polynomial(&int(1), j, &ns).unwrap();
            let total: Rational = p.coeffs().iter().sum();
            let mut faces = Rational::zero();
            for js in weak_compositions(j, ns.len()) {
                faces += js.iter().zip(&ns).map(|(&ji, &ni)| binomial(ni + 1, ji + 1)).product::<Rational>();
            }
            assert_eq!(total, faces, "ns={ns:?} j={j}");
            if j < n {
                assert!(p.alternating_sum().is_zero(), "gauss-bonnet ns={ns:?} j={j}");
            }
        }
    }
}

// slow path: full expansion in (x_1..x_b, u) with sparse multivariate series

type Multi = BTreeMap<Vec<usize>, TPoly>;

fn multi_mul(a: &Multi, b: &Multi, caps: &[usize]) -> Multi {
    let mut out = Multi::new();
    for (ea, pa) in a {
        for (eb, pb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().zip(caps).any(|(x, c)| x > c) {
                continue;
            }
            let v = &*out.entry(e.clone()).or_default() + &(pa * pb);
            out.insert(e, v);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn slow_r(d: &Rational, j: usize, ns: &[usize]) -> TPoly {
    let b = ns.len();
    let mut caps = ns.to_vec();
    caps.push(j);
    let vars = b + 1;
    let unit = |i: usize, p: TPoly| -> Multi {
        let mut e = vec![0; vars];
        e[i] = 1;
        Multi::from([(e, p)])
    };
    let one = || Multi::from([(vec![0; vars], TPoly::one())]);
    let mut total = one();
    for (i, &ni) in ns.iter().enumerate() {
        // -log(1 - x_i) via its univariate expansion, then exponentials
        let dmax = 2 * (ni + j) + 4;
        let mut f = vec![TPoly::zero(); ni + 1];
        f[0] = TPoly::one();
        if ni >= 1 {
            f[1] = TPoly::constant(int(-1));
        }
        let l = TruncSeries::from_coeffs(f, ni, dmax).unwrap().log().unwrap();
        let neg_l = TruncSeries::zero(ni, dmax).sub(&l).unwrap();
        let g = neg_l.scale(&TPoly::t()).unwrap().exp().unwrap().sub(&TruncSeries::one(ni, dmax)).unwrap();
        let base = neg_l.scale(&poly(&[d.clone(), d.clone()])).unwrap().exp().unwrap();
        let lift = |s: &TruncSeries| -> Multi {
            let mut m = Multi::new();
            for (l, c) in s.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mut e = vec![0; vars];
                    e[i] = l;
                    m.insert(e, c.clone());
                }
            }
            m
        };
        // 1 / (1 - u g_i) = sum_m (u g_i)^m
        let ug = multi_mul(&unit(b, TPoly::one()), &lift(&g), &caps);
        let mut geo = one();
        let mut pw = one();
        for _ in 0..j {
            pw = multi_mul(&pw, &ug, &caps);
            for (e, p) in &pw {
                let v = &*geo.entry(e.clone()).or_default() + p;
                geo.insert(e.clone(), v);
            }
        }
        total = multi_mul(&total, &multi_mul(&lift(&base), &geo, &caps), &caps);
    }
    let mut key = ns.to_vec();
    key.push(j);
    total.get(&key).cloned().unwrap_or_default()
}

#[test]
fn r_matches_full_expansion() {
    let cases: Vec<Vec<usize>> = vec![
        vec![1],
        vec![4],
        vec![8],
        vec![1, 1],
        vec![2, 3],
        vec![0, 4],
        vec![5, 3],
        vec![1, 1, 1],
        vec![2, 1, 3],
        vec![3, 3, 2],
    ];
    for ns in cases {
        let n: usize = ns.iter().sum();
        for d in [int(0), ratio(1, 2), int(1)] {
            for j in 0..=n {
                assert_eq!(slow_r(&d, j, &ns), r_polynomial(&d, j, &ns).unwrap(), "d={d} j={j} ns={ns:?}");
            }
        }
    }
}

#[test]
fn catalog_examples() {
    assert_eq!(gf_coefficient(&GfId::LogPower, 3, 2).unwrap(), int(3));
    assert_eq!(gf_coefficient(&GfId::ExpDiff, 2, 1).unwrap(), int(1));
    let ids = [
        GfId::LogPower,
        GfId::ExpDiff,
        GfId::FirstB,
        GfId::SecondB,
        GfId::RFirst(ratio(3, 2)),
        GfId::RSecond(int(2)),
    ];
    for id in &ids {
        assert_eq!(gf_coefficient(id, 0, 0).unwrap(), int(1), "{id:?}");
    }
    assert!("nope".parse::<GfId>().is_err());
    assert!("r-first".parse::<GfId>().is_err());
    assert_eq!("r-second:1/2".parse::<GfId>().unwrap(), GfId::RSecond(ratio(1, 2)));
    assert!(gf_coefficient(&GfId::LogPower, 17, 1).is_err());
}

#[test]
fn catalog_matches_tables() {
    for n in 0..=12usize {
        for k in 0..=8usize.min(n + 1) {
            assert_eq!(gf_coefficient(&GfId::LogPower, n, k).unwrap(), stirling1(n, k));
            assert_eq!(gf_coefficient(&GfId::ExpDiff, n, k).unwrap(), stirling2(n, k));
            assert_eq!(gf_coefficient(&GfId::FirstB, n, k).unwrap(), stirling1_b(n, k));
            assert_eq!(gf_coefficient(&GfId::SecondB, n, k).unwrap(), stirling2_b(n, k));
            for r in [int(0), ratio(1, 2), int(1), ratio(3, 2), int(2)] {
                assert_eq!(gf_coefficient(&GfId::RFirst(r.clone()), n, k).unwrap(), r_stirling1(n, k, &r));
                assert_eq!(gf_coefficient(&GfId::RSecond(r.clone()), n, k).unwrap(), r_stirling2(n, k, &r));
            }
        }
    }
}
