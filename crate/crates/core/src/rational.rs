//! Exact rational helpers and cached factorials.

use std::sync::{OnceLock, RwLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{CoreError, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn factorials() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

pub fn factorial_int(n: usize) -> BigInt {
    {
        let cache = factorials().read().unwrap();
        if let Some(v) = cache.get(n) {
            return v.clone();
        }
    }
    let mut cache = factorials().write().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        let next = &cache[m - 1] * BigInt::from(m);
        cache.push(next);
    }
    cache[n].clone()
}

pub fn factorial(n: usize) -> Rational {
    big(factorial_int(n))
}

/// C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    big(factorial_int(n) / (factorial_int(k) * factorial_int(n - k)))
}

/// Generalized binomial top(top-1)...(top-k+1)/k! for any integer top.
pub fn binomial_general(top: i64, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= int(top - i as i64);
    }
    acc / factorial(k)
}

pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        big(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || CoreError::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(big(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
