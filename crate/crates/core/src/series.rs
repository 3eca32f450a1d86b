//! Dense polynomials in t and truncated power series in x with polynomial
//! coefficients.

use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Zero};

use crate::error::{CoreError, Result};
use crate::rational::{factorial, int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial t.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Sum of coefficients with alternating signs, i.e. the value at t = -1.
    pub fn alternating_sum(&self) -> Rational {
        self.eval(&-Rational::one())
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(out)
    }
}

macro_rules! impl_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
    };
}
impl_owned_ops!(TPoly);

/// Series sum_{l <= order} c_l(t) x^l modulo x^(order+1), with every
/// coefficient of t-degree at most `dmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    dmax: usize,
    coeffs: Vec<TPoly>,
}

impl TruncSeries {
    pub fn zero(order: usize, dmax: usize) -> Self {
        TruncSeries { order, dmax, coeffs: vec![TPoly::zero(); order + 1] }
    }

    pub fn one(order: usize, dmax: usize) -> Self {
        let mut s = Self::zero(order, dmax);
        s.coeffs[0] = TPoly::one();
        s
    }

    /// The series x.
    pub fn x(order: usize, dmax: usize) -> Self {
        let mut s = Self::zero(order, dmax);
        if order >= 1 {
            s.coeffs[1] = TPoly::one();
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<TPoly>, order: usize, dmax: usize) -> Result<Self> {
        coeffs.resize(order + 1, TPoly::zero());
        let s = TruncSeries { order, dmax, coeffs };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        for c in &self.coeffs {
            if let Some(d) = c.degree() {
                if d > self.dmax {
                    return Err(CoreError::DegreeOverflow { degree: d, cap: self.dmax });
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize) -> TPoly {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    fn compatible(&self, rhs: &TruncSeries) -> Result<()> {
        if self.order != rhs.order || self.dmax != rhs.dmax {
            return Err(CoreError::InvalidArgument(format!(
                "series shapes differ: order {} / {}, dmax {} / {}",
                self.order, rhs.order, self.dmax, rhs.dmax
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncSeries { order: self.order, dmax: self.dmax, coeffs })
    }

    pub fn sub(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncSeries { order: self.order, dmax: self.dmax, coeffs })
    }

    pub fn mul(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(rhs)?;
        let mut out = vec![TPoly::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(self.order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TruncSeries::from_coeffs(out, self.order, self.dmax)
    }

    pub fn scale(&self, p: &TPoly) -> Result<TruncSeries> {
        let coeffs = self.coeffs.iter().map(|c| c * p).collect();
        TruncSeries::from_coeffs(coeffs, self.order, self.dmax)
    }

    pub fn pow(&self, e: usize) -> Result<TruncSeries> {
        let mut acc = TruncSeries::one(self.order, self.dmax);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// exp(h) for h with zero constant term: n g_n = sum_k k h_k g_{n-k}.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(CoreError::InvalidArgument("exp needs a zero constant term".into()));
        }
        let mut g = vec![TPoly::zero(); self.order + 1];
        g[0] = TPoly::one();
        for n in 1..=self.order {
            let mut acc = TPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &g[n - k]).scale(&int(k as i64));
                }
            }
            g[n] = acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        TruncSeries::from_coeffs(g, self.order, self.dmax)
    }

    /// log(f) for f with constant term 1: h_n = f_n - (1/n) sum_{k<n} k h_k f_{n-k}.
    pub fn log(&self) -> Result<TruncSeries> {
        if self.coeffs[0] != TPoly::one() {
            return Err(CoreError::InvalidArgument("log needs constant term 1".into()));
        }
        let mut h = vec![TPoly::zero(); self.order + 1];
        for n in 1..=self.order {
            let mut acc = TPoly::zero();
            for (k, hk) in h.iter().enumerate().take(n).skip(1) {
                if !hk.is_zero() {
                    acc = &acc + &(hk * &self.coeffs[n - k]).scale(&int(k as i64));
                }
            }
            h[n] = &self.coeffs[n] - &acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        TruncSeries::from_coeffs(h, self.order, self.dmax)
    }
}

/// (1 - x)^(-s) = sum_l s(s+1)...(s+l-1)/l! x^l.
pub fn binom_series(s: &TPoly, order: usize, dmax: usize) -> Result<TruncSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(TPoly::one());
    for l in 1..=order {
        let shift = s + &TPoly::constant(int(l as i64 - 1));
        let next = (&coeffs[l - 1] * &shift).scale(&Rational::new(1.into(), (l as i64).into()));
        if let Some(d) = next.degree() {
            if d > dmax {
                return Err(CoreError::DegreeOverflow { degree: d, cap: dmax });
            }
        }
        coeffs.push(next);
    }
    TruncSeries::from_coeffs(coeffs, order, dmax)
}

/// (1 - x)^(-t) - 1.
pub fn g_series(order: usize, dmax: usize) -> Result<TruncSeries> {
    let mut s = binom_series(&TPoly::t(), order, dmax)?;
    s.coeffs[0] = TPoly::zero();
    Ok(s)
}

fn d_exponent(d: &Rational) -> TPoly {
    TPoly::from_coeffs(vec![d.clone(), d.clone()])
}

pub fn default_dmax(n: usize, b: usize) -> usize {
    n + 2 * b + 2
}

/// [x^n] (1-x)^(-d(t+1)) ((1-x)^(-t) - 1)^j.
pub fn coef_block(d: &Rational, j: usize, n: usize) -> Result<TPoly> {
    let dmax = default_dmax(n, 1);
    let base = binom_series(&d_exponent(d), n, dmax)?;
    let g = g_series(n, dmax)?.pow(j)?;
    Ok(base.mul(&g)?.coeff(n))
}

/// All blocks [x^n] (1-x)^(-d(t+1)) g^m for m = 0..=j.
fn coef_blocks(d: &Rational, j: usize, n: usize, dmax: usize) -> Result<Vec<TPoly>> {
    let base = binom_series(&d_exponent(d), n, dmax)?;
    let g = g_series(n, dmax)?;
    let mut out = Vec::with_capacity(j + 1);
    let mut cur = base;
    for m in 0..=j {
        if m > n {
            // g has no constant term, so g^m starts at x^m
            out.push(TPoly::zero());
            continue;
        }
        out.push(cur.coeff(n));
        if m < j {
            cur = cur.mul(&g)?;
        }
    }
    Ok(out)
}

/// The t-polynomial sum_k R_d(k, j, b, ns) t^k.
///
/// [u^j] of the product of geometric factors is a sum over weak
/// compositions (j_1..j_b) of j; the sum is accumulated factor by factor.
pub fn r_polynomial(d: &Rational, j: usize, ns: &[usize]) -> Result<TPoly> {
    if ns.is_empty() {
        return Err(CoreError::InvalidArgument("R needs b >= 1".into()));
    }
    let n: usize = ns.iter().sum();
    let dmax = default_dmax(n, ns.len());
    // acc[m] = contribution with j_1 + ... + j_i = m
    let mut acc = vec![TPoly::zero(); j + 1];
    acc[0] = TPoly::one();
    for &ni in ns {
        let blocks = coef_blocks(d, j, ni, dmax)?;
        let mut next = vec![TPoly::zero(); j + 1];
        for (m, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ji, blk) in blocks.iter().enumerate().take(j + 1 - m) {
                if !blk.is_zero() {
                    next[m + ji] = &next[m + ji] + &(a * blk);
                }
            }
        }
        for p in &next {
            if let Some(deg) = p.degree() {
                if deg > dmax {
                    return Err(CoreError::DegreeOverflow { degree: deg, cap: dmax });
                }
            }
        }
        acc = next;
    }
    Ok(acc.swap_remove(j))
}

/// R_d(k, j, b, (n_1..n_b)) with b = ns.len().
pub fn r_coefficient(d: &Rational, k: usize, j: usize, ns: &[usize]) -> Result<Rational> {
    Ok(r_polynomial(d, j, ns)?.coeff(k))
}

pub const GF_MAX_N: usize = 16;

/// Catalog of exponential generating functions; the extracted value is
/// n! [t^n] and, for the two-variable forms, the coefficient of y^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfId {
    /// (-log(1-t))^k / k!
    LogPower,
    /// (e^t - 1)^k / k!
    ExpDiff,
    /// (1-2t)^(-(y+1)/2)
    FirstB,
    /// exp(y/2 (e^(2t) - 1)) e^t
    SecondB,
    /// (1-t)^(-r) (-log(1-t))^k / k!
    RFirst(Rational),
    /// e^(rt) (e^t - 1)^k / k!
    RSecond(Rational),
}

impl FromStr for GfId {
    type Err = CoreError;

    /// `log-power`, `exp-diff`, `first-b`, `second-b`, `r-first:<r>`, `r-second:<r>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let r = || match arg {
            Some(a) => parse_rational(a),
            None => Err(CoreError::UnknownCatalog(s.to_string())),
        };
        match (head, arg.is_some()) {
            ("log-power", false) => Ok(GfId::LogPower),
            ("exp-diff", false) => Ok(GfId::ExpDiff),
            ("first-b", false) => Ok(GfId::FirstB),
            ("second-b", false) => Ok(GfId::SecondB),
            ("r-first", true) => Ok(GfId::RFirst(r()?)),
            ("r-second", true) => Ok(GfId::RSecond(r()?)),
            _ => Err(CoreError::UnknownCatalog(s.to_string())),
        }
    }
}

// series in t with constant (degree-0) coefficients
fn constant_series(cs: Vec<Rational>, order: usize, dmax: usize) -> Result<TruncSeries> {
    TruncSeries::from_coeffs(cs.into_iter().map(TPoly::constant).collect(), order, dmax)
}

fn neg_log_one_minus(c: i64, order: usize, dmax: usize) -> Result<TruncSeries> {
    // log(1 - c t), negated
    let mut f = vec![Rational::zero(); order + 1];
    f[0] = Rational::one();
    if order >= 1 {
        f[1] = int(-c);
    }
    let l = constant_series(f, order, dmax)?.log()?;
    TruncSeries::zero(order, dmax).sub(&l)
}

fn exp_minus_one(c: i64, order: usize, dmax: usize) -> Result<TruncSeries> {
    // e^(c t) - 1
    let mut h = vec![Rational::zero(); order + 1];
    if order >= 1 {
        h[1] = int(c);
    }
    let e = constant_series(h, order, dmax)?.exp()?;
    e.sub(&TruncSeries::one(order, dmax))
}

fn scalar_exp(c: &Rational, base: &TruncSeries) -> Result<TruncSeries> {
    base.scale(&TPoly::constant(c.clone()))?.exp()
}

pub fn gf_coefficient(id: &GfId, n: usize, k: usize) -> Result<Rational> {
    if n > GF_MAX_N {
        return Err(CoreError::InvalidArgument(format!("catalog order n = {n} exceeds {GF_MAX_N}")));
    }
    let order = n;
    let dmax = n + 1;
    let inv_kfact = Rational::one() / factorial(k);
    let series = match id {
        GfId::LogPower => neg_log_one_minus(1, order, dmax)?.pow(k)?,
        GfId::ExpDiff => exp_minus_one(1, order, dmax)?.pow(k)?,
        GfId::RFirst(r) => {
            let l = neg_log_one_minus(1, order, dmax)?;
            scalar_exp(r, &l)?.mul(&l.pow(k)?)?
        }
        GfId::RSecond(r) => {
            let t = constant_series(
                (0..=order).map(|i| if i == 1 { Rational::one() } else { Rational::zero() }).collect(),
                order,
                dmax,
            )?;
            scalar_exp(r, &t)?.mul(&exp_minus_one(1, order, dmax)?.pow(k)?)?
        }
        GfId::FirstB => {
            let s = TPoly::from_coeffs(vec![Rational::new(1.into(), 2.into()); 2]);
            neg_log_one_minus(2, order, dmax)?.scale(&s)?.exp()?
        }
        GfId::SecondB => {
            let half_y = TPoly::from_coeffs(vec![Rational::zero(), Rational::new(1.into(), 2.into())]);
            let inner = exp_minus_one(2, order, dmax)?.scale(&half_y)?.exp()?;
            let et = exp_minus_one(1, order, dmax)?.add(&TruncSeries::one(order, dmax))?;
            inner.mul(&et)?
        }
    };
    let c = series.coeff(n);
    let value = match id {
        GfId::FirstB | GfId::SecondB => c.coeff(k),
        _ => c.coeff(0) * inv_kfact,
    };
    Ok(value * factorial(n))
}
