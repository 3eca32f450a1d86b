//! Expected face numbers of Minkowski sums of Gaussian walk and bridge
//! hulls, Grassmann angles and unique-recovery probabilities.

use num::{One, Zero};

use crate::angles::{cone_spec_polynomial, enumerate_product_tangent_cones, enumerate_tangent_cones, face_count, ConeSpec, Source};
use crate::error::{CoreError, Result};
use crate::rational::{binomial, factorial, int, pow2, Rational};
use crate::series::{r_polynomial, TPoly};
use crate::stirling::{stirling1, stirling1_b, stirling2, stirling2_b};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Walk,
    Bridge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkEnsemble {
    pub d: usize,
    pub ns: Vec<usize>,
    pub kind: WalkKind,
}

impl WalkEnsemble {
    pub fn new(d: usize, ns: Vec<usize>, kind: WalkKind) -> Self {
        WalkEnsemble { d, ns, kind }
    }

    pub fn b(&self) -> usize {
        self.ns.len()
    }

    pub fn n(&self) -> usize {
        self.ns.iter().sum()
    }

    fn check(&self, j: usize) -> Result<()> {
        if self.ns.is_empty() {
            return Err(CoreError::InvalidArgument("ensemble needs at least one walk".into()));
        }
        if !(j < self.d && self.d <= self.n()) {
            return Err(CoreError::InvalidArgument(format!(
                "need 0 <= j < d <= n, got j = {j}, d = {}, n = {}",
                self.d,
                self.n()
            )));
        }
        Ok(())
    }
}

/// E f_j = 2 sum_{l >= 1} R_1(d - 2l + 1, j, b, ns); the same for walks and bridges.
pub fn expected_faces(ens: &WalkEnsemble, j: usize) -> Result<Rational> {
    ens.check(j)?;
    let poly = r_polynomial(&Rational::one(), j, &ens.ns)?;
    Ok(int(2) * odd_tail(&poly, ens.d))
}

// sum of coefficients of t^(d-1), t^(d-3), ...
fn odd_tail(poly: &TPoly, d: usize) -> Rational {
    let mut acc = Rational::zero();
    let mut k = d as i64 - 1;
    while k >= 0 {
        acc += poly.coeff(k as usize);
        k -= 2;
    }
    acc
}

/// (2 j!/n!) sum_l ⟨n+1, d-2l⟩ {d-2l, j+1}.
pub fn expected_faces_single_closed_form(d: usize, n: usize, j: usize) -> Result<Rational> {
    if !(j < d && d <= n) {
        return Err(CoreError::InvalidArgument(format!("need 0 <= j < d <= n, got j = {j}, d = {d}, n = {n}")));
    }
    let mut acc = Rational::zero();
    let mut m = d as i64;
    while m >= 0 {
        acc += stirling1(n + 1, m as usize) * stirling2(m as usize, j + 1);
        m -= 2;
    }
    Ok(int(2) * factorial(j) / factorial(n) * acc)
}

/// 2 sum over j-face tangent cones of the product orthoscheme of
/// (υ_{d-1} + υ_{d-3} + ...).
pub fn expected_faces_by_enumeration(ens: &WalkEnsemble, j: usize) -> Result<Rational> {
    ens.check(j)?;
    let cones = enumerate_product_tangent_cones(Source::KB, &ens.ns, j);
    let mut acc = Rational::zero();
    for (spec, m) in &cones.items {
        acc += odd_tail(&cone_spec_polynomial(spec), ens.d) * int(*m as i64);
    }
    Ok(int(2) * acc)
}

fn grassmann_from_polynomial(poly: &TPoly, k: usize, shift: usize) -> Rational {
    let mut acc = Rational::zero();
    let mut i = 1;
    while k + i + shift <= poly.degree().unwrap_or(0) {
        acc += poly.coeff(k + i + shift);
        i += 2;
    }
    int(2) * acc
}

/// γ_k = 2 sum_{i odd} υ_{k+i}; undefined for linear subspaces.
pub fn grassmann_angle(spec: &ConeSpec, k: usize) -> Result<Rational> {
    if spec.is_subspace() {
        return Err(CoreError::Subspace);
    }
    Ok(grassmann_from_polynomial(&cone_spec_polynomial(spec), k, 0))
}

fn recovery_args(source: Source, n: usize, j: usize, k: usize) -> Result<()> {
    if n == 0 || j > k || k > n {
        return Err(CoreError::InvalidArgument(format!("need 0 <= j <= k <= n, n >= 1; got n = {n}, j = {j}, k = {k}")));
    }
    if source == Source::WA && j == 0 {
        return Err(CoreError::InvalidArgument("WA needs j >= 1".into()));
    }
    Ok(())
}

/// Probability of unique recovery of a signal on a uniform j-face from k
/// Gaussian measurements.
///
/// At j = k = n the tangent cone is the whole space and the measurement map
/// is injective on it, so the value is 1; the odd/even sums below assume a
/// tangent cone that is not a subspace.
pub fn recovery_probability(source: Source, n: usize, j: usize, k: usize) -> Result<Rational> {
    recovery_args(source, n, j, k)?;
    if j == n && k == n {
        return Ok(Rational::one());
    }
    let mut acc = Rational::zero();
    let value = match source {
        Source::WB => {
            let mut i = 1;
            while i <= k {
                acc += stirling1_b(n, k - i) * stirling2_b(k - i, j);
                i += 2;
            }
            pow2(j as i64 + 1 - n as i64) * factorial(j) / (factorial(n) * binomial(n, j)) * acc
        }
        Source::WA => {
            let mut i = 1;
            while i <= k {
                acc += stirling1(n, k - i) * stirling2(k - i, j);
                i += 2;
            }
            int(2) * factorial(j) / (factorial(n) * binomial(n - 1, j - 1)) * acc
        }
        Source::KB | Source::KA => {
            let mut i = 0;
            while i <= k {
                acc += stirling1(n + 1, k - i) * stirling2(k - i, j + 1);
                i += 2;
            }
            int(2) * factorial(j) / (factorial(n) * binomial(n + 1, j + 1)) * acc
        }
    };
    Ok(value)
}

/// Average of 1 - γ_k over the enumerated tangent cones at j-faces.
pub fn recovery_by_enumeration(source: Source, n: usize, j: usize, k: usize) -> Result<Rational> {
    recovery_args(source, n, j, k)?;
    let cones = enumerate_tangent_cones(source, n, j);
    let mut acc = Rational::zero();
    for (spec, m) in &cones.items {
        let p = if spec.is_subspace() {
            let dim = spec.ambient_dim() - cones.lineality;
            if dim <= k {
                Rational::one()
            } else {
                Rational::zero()
            }
        } else {
            Rational::one() - grassmann_from_polynomial(&cone_spec_polynomial(spec), k, cones.lineality)
        };
        acc += p * int(*m as i64);
    }
    Ok(acc / face_count(source, n, j))
}
