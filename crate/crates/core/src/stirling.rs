//! Stirling numbers of both kinds, their B-analogues and the shifted
//! r-Stirling numbers, plus exhaustive counting oracles.
//!
//! The r-kinds use the shifted indexing: `r_stirling1(n, k, r)` is the
//! value indexed `(n + r, k + r)` with parameter `r`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{OnceLock, RwLock};

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{CoreError, Result};
use crate::rational::{big, binomial, int, Rational};

pub const DEFAULT_TABLE_LIMIT: usize = 256;
pub const BRUTE_FORCE_LIMIT: usize = 10;

static TABLE_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_TABLE_LIMIT);

pub fn table_limit() -> usize {
    TABLE_LIMIT.load(Ordering::Relaxed)
}

pub fn set_table_limit(n_max: usize) {
    TABLE_LIMIT.store(n_max, Ordering::Relaxed);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    First,
    Second,
    FirstB,
    SecondB,
    RFirst,
    RSecond,
}

impl StirlingKind {
    pub fn needs_r(self) -> bool {
        matches!(self, StirlingKind::RFirst | StirlingKind::RSecond)
    }
}

type Triangle = RwLock<Vec<Vec<BigInt>>>;

struct Tables {
    first: Triangle,
    second: Triangle,
    first_b: Triangle,
    second_b: Triangle,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| Tables {
        first: RwLock::new(vec![vec![BigInt::one()]]),
        second: RwLock::new(vec![vec![BigInt::one()]]),
        first_b: RwLock::new(vec![vec![BigInt::one()]]),
        second_b: RwLock::new(vec![vec![BigInt::one()]]),
    })
}

// row n from row n-1: T(n,k) = a(n,k) T(n-1,k) + T(n-1,k-1)
fn lookup(tri: &Triangle, n: usize, k: usize, coef: impl Fn(usize, usize) -> u64) -> Result<BigInt> {
    let limit = table_limit();
    if n > limit {
        return Err(CoreError::TableLimit { n, limit });
    }
    if k > n {
        return Ok(BigInt::zero());
    }
    {
        let rows = tri.read().unwrap();
        if let Some(row) = rows.get(n) {
            return Ok(row[k].clone());
        }
    }
    let mut rows = tri.write().unwrap();
    while rows.len() <= n {
        let m = rows.len();
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut v = BigInt::zero();
            if k < m {
                v += &prev[k] * BigInt::from(coef(m, k));
            }
            if k > 0 {
                v += &prev[k - 1];
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows[n][k].clone())
}

fn must(v: Result<BigInt>) -> Rational {
    match v {
        Ok(x) => big(x),
        Err(e) => panic!("{e}"),
    }
}

pub fn try_stirling1(n: usize, k: usize) -> Result<Rational> {
    lookup(&tables().first, n, k, |m, _| (m - 1) as u64).map(big)
}

pub fn try_stirling2(n: usize, k: usize) -> Result<Rational> {
    lookup(&tables().second, n, k, |_, k| k as u64).map(big)
}

pub fn try_stirling1_b(n: usize, k: usize) -> Result<Rational> {
    lookup(&tables().first_b, n, k, |m, _| (2 * m - 1) as u64).map(big)
}

pub fn try_stirling2_b(n: usize, k: usize) -> Result<Rational> {
    lookup(&tables().second_b, n, k, |_, k| (2 * k + 1) as u64).map(big)
}

/// Coefficient of t^k in t(t+1)...(t+n-1). Panics above the table limit.
pub fn stirling1(n: usize, k: usize) -> Rational {
    must(lookup(&tables().first, n, k, |m, _| (m - 1) as u64))
}

/// Partitions of an n-set into k blocks.
pub fn stirling2(n: usize, k: usize) -> Rational {
    must(lookup(&tables().second, n, k, |_, k| k as u64))
}

/// Coefficient of t^k in (t+1)(t+3)...(t+2n-1).
pub fn stirling1_b(n: usize, k: usize) -> Rational {
    must(lookup(&tables().first_b, n, k, |m, _| (2 * m - 1) as u64))
}

/// sum_m 2^(m-k) C(n,m) S(m,k), tabulated by its three-term recurrence.
pub fn stirling2_b(n: usize, k: usize) -> Rational {
    must(lookup(&tables().second_b, n, k, |_, k| (2 * k + 1) as u64))
}

pub fn rising_factorial(r: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= r + int(i as i64);
    }
    acc
}

pub fn r_stirling1(n: usize, k: usize, r: &Rational) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    let mut rise = Rational::one();
    for m in 0..=(n - k) {
        if m > 0 {
            rise *= r + int(m as i64 - 1);
        }
        acc += binomial(n, m) * stirling1(n - m, k) * &rise;
    }
    acc
}

pub fn r_stirling2(n: usize, k: usize, r: &Rational) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    for m in k..=n {
        acc += binomial(n, m) * stirling2(m, k) * num::pow(r.clone(), n - m);
    }
    acc
}

/// A memoized view of one Stirling family.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    kind: StirlingKind,
    r: Option<Rational>,
    entries: HashMap<(usize, usize), Rational>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind) -> Result<Self> {
        if kind.needs_r() {
            return Err(CoreError::InvalidArgument(format!("{kind:?} needs a parameter r")));
        }
        Ok(StirlingTable { kind, r: None, entries: HashMap::new() })
    }

    pub fn with_r(kind: StirlingKind, r: Rational) -> Result<Self> {
        if !kind.needs_r() {
            return Err(CoreError::InvalidArgument(format!("{kind:?} takes no parameter r")));
        }
        Ok(StirlingTable { kind, r: Some(r), entries: HashMap::new() })
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn r(&self) -> Option<&Rational> {
        self.r.as_ref()
    }

    pub fn get(&mut self, n: usize, k: usize) -> Result<Rational> {
        let limit = table_limit();
        if n > limit {
            return Err(CoreError::TableLimit { n, limit });
        }
        if let Some(v) = self.entries.get(&(n, k)) {
            return Ok(v.clone());
        }
        let v = match self.kind {
            StirlingKind::First => try_stirling1(n, k)?,
            StirlingKind::Second => try_stirling2(n, k)?,
            StirlingKind::FirstB => try_stirling1_b(n, k)?,
            StirlingKind::SecondB => try_stirling2_b(n, k)?,
            StirlingKind::RFirst => r_stirling1(n, k, self.r.as_ref().unwrap()),
            StirlingKind::RSecond => r_stirling2(n, k, self.r.as_ref().unwrap()),
        };
        self.entries.insert((n, k), v.clone());
        Ok(v)
    }
}

/// counts[k][r]: objects with k cycles/blocks whose first r elements are
/// pairwise separated, r = 0..=n.
fn brute_histogram(kind: StirlingKind, n: usize) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; n + 1]; n + 1];
    let mut record = |k: usize, rmax: usize| {
        for c in &mut counts[k][..=rmax] {
            *c += 1;
        }
    };
    match kind {
        StirlingKind::First => {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut c = vec![0usize; n];
            let mut label = vec![usize::MAX; n];
            let mut visit = |p: &[usize]| {
                label.iter_mut().for_each(|l| *l = usize::MAX);
                let mut cycles = 0;
                for s in 0..n {
                    if label[s] != usize::MAX {
                        continue;
                    }
                    let mut x = s;
                    while label[x] == usize::MAX {
                        label[x] = cycles;
                        x = p[x];
                    }
                    cycles += 1;
                }
                // cycle ids are assigned in order of smallest element
                let mut rmax = 0;
                while rmax < n && label[rmax] == rmax {
                    rmax += 1;
                }
                (cycles, rmax)
            };
            let (k, r) = visit(&perm);
            record(k, r);
            // Heap's algorithm
            let mut i = 0;
            while i < n {
                if c[i] < i {
                    if i % 2 == 0 {
                        perm.swap(0, i);
                    } else {
                        perm.swap(c[i], i);
                    }
                    let (k, r) = visit(&perm);
                    record(k, r);
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
        }
        StirlingKind::Second => {
            if n == 0 {
                record(0, 0);
                return counts;
            }
            // restricted growth strings a[0]=0, a[i] <= 1 + max(a[..i])
            let mut a = vec![0usize; n];
            loop {
                let blocks = a.iter().max().unwrap() + 1;
                let mut rmax = 0;
                while rmax < n && a[rmax] == rmax {
                    rmax += 1;
                }
                record(blocks, rmax);
                let mut i = n - 1;
                loop {
                    if i == 0 {
                        return counts;
                    }
                    let m = a[..i].iter().max().copied().unwrap_or(0);
                    if a[i] <= m {
                        a[i] += 1;
                        a[i + 1..].iter_mut().for_each(|x| *x = 0);
                        break;
                    }
                    i -= 1;
                }
            }
        }
        _ => {}
    }
    counts
}

/// Exhaustive (unshifted) count of permutations of {1..n} with k cycles, or
/// partitions into k blocks, in which 1..r lie in distinct cycles/blocks.
pub fn brute_stirling(kind: StirlingKind, n: usize, k: usize, r: usize) -> Result<Rational> {
    if !matches!(kind, StirlingKind::First | StirlingKind::Second) {
        return Err(CoreError::InvalidArgument(format!("no brute-force oracle for {kind:?}")));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(CoreError::CostGuard { n, limit: BRUTE_FORCE_LIMIT });
    }
    if k > n || r > n {
        return Ok(Rational::zero());
    }
    Ok(int(brute_histogram(kind, n)[k][r] as i64))
}

/// All counts for one n at once: `table[k][r]`.
pub fn brute_stirling_table(kind: StirlingKind, n: usize) -> Result<Vec<Vec<Rational>>> {
    if !matches!(kind, StirlingKind::First | StirlingKind::Second) {
        return Err(CoreError::InvalidArgument(format!("no brute-force oracle for {kind:?}")));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(CoreError::CostGuard { n, limit: BRUTE_FORCE_LIMIT });
    }
    Ok(brute_histogram(kind, n)
        .into_iter()
        .map(|row| row.into_iter().map(|c| int(c as i64)).collect())
        .collect())
}
