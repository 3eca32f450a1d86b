use num::{One, Zero};
use orthoscheme_core::rational::{binomial, binomial_general, factorial, int, pow2, ratio, Rational};
use orthoscheme_core::stirling::*;
use orthoscheme_core::{CoreError, StirlingKind, StirlingTable};

#[test]
fn frozen_first_kind() {
    assert_eq!(stirling1(3, 2), int(3));
    assert_eq!(stirling1(0, 0), int(1));
    assert_eq!(stirling1(4, 2), int(11));
    assert_eq!(stirling1(4, 5), int(0));
    assert_eq!(stirling1(3, 0), int(0));
}

#[test]
fn frozen_second_kind() {
    assert_eq!(stirling2(3, 2), int(3));
    assert_eq!(stirling2(4, 2), int(7));
    for n in 0..12 {
        assert_eq!(stirling2(n, n), int(1));
    }
}

#[test]
fn frozen_b_analogues() {
    assert_eq!(stirling1_b(2, 1), int(4));
    assert_eq!(stirling1_b(2, 0), int(3));
    assert_eq!(stirling1_b(3, 2), int(9));
    assert_eq!(stirling1_b(3, 0), int(15));
    assert_eq!(stirling2_b(2, 1), int(4));
    assert_eq!(stirling2_b(2, 0), int(1));
    for n in 0..12 {
        assert_eq!(stirling1_b(n, n), int(1));
        assert_eq!(stirling2_b(n, n), int(1));
    }
}

#[test]
fn frozen_r_kinds_and_rising() {
    let half = ratio(1, 2);
    assert_eq!(r_stirling1(2, 1, &half), int(2));
    assert_eq!(r_stirling2(2, 1, &half), int(2));
    assert_eq!(r_stirling2(3, 2, &int(1)), int(6));
    assert_eq!(r_stirling1(3, 1, &int(0)), int(2));
    for n in 0..8 {
        for r in [ratio(0, 1), ratio(1, 2), ratio(7, 3), int(5)] {
            assert_eq!(r_stirling1(n, n, &r), int(1));
            assert_eq!(r_stirling2(n, n, &r), int(1));
        }
    }
    assert_eq!(rising_factorial(&half, 2), ratio(3, 4));
    assert_eq!(rising_factorial(&ratio(-5, 7), 0), int(1));
    assert_eq!(rising_factorial(&int(3), 3), int(60));
}

#[test]
fn frozen_brute_force() {
    assert_eq!(brute_stirling(StirlingKind::First, 3, 2, 0).unwrap(), int(3));
    assert_eq!(brute_stirling(StirlingKind::Second, 4, 2, 2).unwrap(), int(4));
    for n in 0..=8 {
        assert_eq!(brute_stirling(StirlingKind::First, n, n, 0).unwrap(), int(1));
    }
    assert!(matches!(
        brute_stirling(StirlingKind::First, 11, 2, 0),
        Err(CoreError::CostGuard { .. })
    ));
    assert!(brute_stirling(StirlingKind::FirstB, 3, 1, 0).is_err());
}

#[test]
fn polynomial_definitions() {
    // expand t(t+1)...(t+n-1) and (t+1)(t+3)...(t+2n-1) directly
    for n in 0..=14usize {
        let mut a = vec![Rational::one()];
        let mut b = vec![Rational::one()];
        for m in 0..n {
            a = mul_linear(&a, int(m as i64));
            b = mul_linear(&b, int(2 * m as i64 + 1));
        }
        for k in 0..=n {
            assert_eq!(stirling1(n, k), a[k], "stirling1({n},{k})");
            assert_eq!(stirling1_b(n, k), b[k], "stirling1_b({n},{k})");
        }
    }
}

fn mul_linear(p: &[Rational], c: Rational) -> Vec<Rational> {
    // p(t) (t + c)
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i + 1] += a;
        out[i] += a * &c;
    }
    out
}

#[test]
fn second_kind_sum_formulas() {
    for n in 0..=14usize {
        for k in 0..=n {
            // inclusion-exclusion
            let mut s = Rational::zero();
            for i in 0..=k {
                let term = binomial(k, i) * num::pow(int(i as i64), n);
                if (k - i) % 2 == 0 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            assert_eq!(stirling2(n, k), s / factorial(k));
            let mut sb = Rational::zero();
            for m in k..=n {
                sb += pow2((m - k) as i64) * binomial(n, m) * stirling2(m, k);
            }
            assert_eq!(stirling2_b(n, k), sb, "stirling2_b({n},{k})");
        }
    }
}

#[test]
fn brute_force_matches_tables_full_range() {
    for n in 0..=10usize {
        let first = brute_stirling_table(StirlingKind::First, n).unwrap();
        let second = brute_stirling_table(StirlingKind::Second, n).unwrap();
        for r in 0..=n {
            for k in 0..=n {
                if r <= 1 {
                    assert_eq!(first[k][r], stirling1(n, k));
                    assert_eq!(second[k][r], stirling2(n, k));
                }
                // unshifted count at (n, k) = shifted value at (n - r, k - r)
                let (e1, e2) = if k < r {
                    (Rational::zero(), Rational::zero())
                } else {
                    (r_stirling1(n - r, k - r, &int(r as i64)), r_stirling2(n - r, k - r, &int(r as i64)))
                };
                assert_eq!(first[k][r], e1, "first n={n} k={k} r={r}");
                assert_eq!(second[k][r], e2, "second n={n} k={k} r={r}");
                if n <= 6 {
                    assert_eq!(brute_stirling(StirlingKind::First, n, k, r).unwrap(), first[k][r]);
                }
            }
        }
    }
}

#[test]
fn half_integer_relations() {
    let half = ratio(1, 2);
    for n in 0..=20usize {
        for k in 0..=n {
            let scale = pow2(k as i64 - n as i64);
            assert_eq!(r_stirling1(n, k, &half), &scale * stirling1_b(n, k));
            assert_eq!(r_stirling2(n, k, &half), &scale * stirling2_b(n, k));
        }
    }
}

#[test]
fn classical_specializations() {
    for n in 0..=12usize {
        for k in 0..=n {
            assert_eq!(r_stirling1(n, k, &int(0)), stirling1(n, k));
            assert_eq!(r_stirling2(n, k, &int(0)), stirling2(n, k));
            assert_eq!(r_stirling1(n, k, &int(1)), stirling1(n + 1, k + 1));
            assert_eq!(r_stirling2(n, k, &int(1)), stirling2(n + 1, k + 1));
        }
    }
}

#[test]
fn product_identities_small_range() {
    for twob in 0..=6i64 {
        let b = ratio(twob, 2);
        for n in 1..=8usize {
            for j in 0..=n {
                let mut sum = Rational::zero();
                let mut alt = Rational::zero();
                for k in 0..=n {
                    let p = r_stirling1(n, k, &b) * r_stirling2(k, j, &b);
                    if k % 2 == 0 {
                        alt += &p;
                    } else {
                        alt -= &p;
                    }
                    sum += p;
                }
                let lah = factorial(n) / factorial(j) * binomial_general(n as i64 + twob - 1, n - j);
                assert_eq!(sum, lah, "2b={twob} n={n} j={j}");
                if j < n {
                    assert!(alt.is_zero(), "alternating 2b={twob} n={n} j={j}");
                }
            }
        }
    }
}

#[test]
fn table_memo_and_limit() {
    let mut t = StirlingTable::new(StirlingKind::FirstB).unwrap();
    assert_eq!(t.get(3, 2).unwrap(), int(9));
    assert_eq!(t.get(3, 2).unwrap(), int(9));
    let mut r = StirlingTable::with_r(StirlingKind::RSecond, ratio(1, 2)).unwrap();
    assert_eq!(r.get(2, 1).unwrap(), int(2));
    assert!(StirlingTable::new(StirlingKind::RFirst).is_err());
    assert!(StirlingTable::with_r(StirlingKind::First, int(1)).is_err());
    assert!(matches!(t.get(DEFAULT_TABLE_LIMIT + 1, 0), Err(CoreError::TableLimit { .. })));
    assert!(try_stirling2(DEFAULT_TABLE_LIMIT + 1, 3).is_err());
}

#[test]
fn tables_are_consistent_across_threads() {
    let handles: Vec<_> = (0..4)
        .map(|i| std::thread::spawn(move || (0..40).map(|n| stirling2_b(n + i, n / 2)).collect::<Vec<_>>()))
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (i, row) in results.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            assert_eq!(*v, stirling2_b(n + i, n / 2));
        }
    }
}
