//! Conic intrinsic volumes of products of Weyl chambers, tangent-cone
//! enumeration, and the closed-form angle-sum theorems.

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use crate::error::{CoreError, Result};
use crate::rational::{binomial, factorial, int, pow2, Rational};
use crate::series::{r_coefficient, r_polynomial, TPoly};
use crate::stirling::{r_stirling1, r_stirling2, stirling1, stirling1_b, stirling2, stirling2_b};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub family: Family,
    pub size: usize,
}

impl Factor {
    pub fn a(size: usize) -> Self {
        Factor { family: Family::A, size }
    }

    pub fn b(size: usize) -> Self {
        Factor { family: Family::B, size }
    }
}

/// Ordered product of chambers A(l) (l >= 1) and B(l) (l >= 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConeSpec {
    pub factors: Vec<Factor>,
}

impl ConeSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.iter().any(|f| f.family == Family::A && f.size == 0) {
            return Err(CoreError::InvalidArgument("A-factors need size >= 1".into()));
        }
        Ok(ConeSpec { factors })
    }

    pub fn ambient_dim(&self) -> usize {
        self.factors.iter().map(|f| f.size).sum()
    }

    /// Every factor is a full line A(1) or the origin B(0).
    pub fn is_subspace(&self) -> bool {
        self.factors.iter().all(|f| matches!((f.family, f.size), (Family::A, 1) | (Family::B, 0)))
    }

    /// Dimension of the lineality space: one line per A-factor.
    pub fn lineality(&self) -> usize {
        self.factors.iter().filter(|f| f.family == Family::A).count()
    }

    fn concat(&self, other: &ConeSpec) -> ConeSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        ConeSpec { factors }
    }
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            let c = if fac.family == Family::A { 'A' } else { 'B' };
            write!(f, "{c}{}", fac.size)?;
        }
        Ok(())
    }
}

impl FromStr for ConeSpec {
    type Err = CoreError;

    /// Factors like `A2xB2` (also accepts `×` or `*` as separators).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CoreError::ParseSpec(s.to_string());
        let mut factors = Vec::new();
        for part in s.split(['x', '×', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = match chars.next() {
                Some('A') | Some('a') => Family::A,
                Some('B') | Some('b') => Family::B,
                _ => return Err(bad()),
            };
            let size: usize = chars.as_str().parse().map_err(|_| bad())?;
            factors.push(Factor { family, size });
        }
        ConeSpec::new(factors).map_err(|_| bad())
    }
}

/// Generating polynomial sum_k υ_k t^k of one chamber.
pub fn chamber_polynomial(family: Family, n: usize) -> TPoly {
    let mut p = TPoly::one();
    for m in 0..n {
        let shift = match family {
            Family::A => int(m as i64),
            Family::B => int(2 * m as i64 + 1),
        };
        p = &p * &TPoly::from_coeffs(vec![shift, Rational::one()]);
    }
    let norm = match family {
        Family::A => factorial(n),
        Family::B => pow2(n as i64) * factorial(n),
    };
    p.scale(&(Rational::one() / norm))
}

pub fn chamber_intrinsic(family: Family, n: usize, k: usize) -> Rational {
    match family {
        Family::A => stirling1(n, k) / factorial(n),
        Family::B => stirling1_b(n, k) / (pow2(n as i64) * factorial(n)),
    }
}

pub fn cone_spec_polynomial(spec: &ConeSpec) -> TPoly {
    spec.factors
        .iter()
        .fold(TPoly::one(), |acc, f| &acc * &chamber_polynomial(f.family, f.size))
}

pub fn cone_spec_intrinsic(spec: &ConeSpec, k: usize) -> Rational {
    cone_spec_polynomial(spec).coeff(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Orthoscheme of type B.
    KB,
    /// Orthoscheme of type A (in the zero-sum hyperplane of R^(n+1)).
    KA,
    /// Weyl chamber of type B.
    WB,
    /// Weyl chamber of type A.
    WA,
}

impl Source {
    pub const ALL: [Source; 4] = [Source::KB, Source::KA, Source::WB, Source::WA];

    pub fn name(self) -> &'static str {
        match self {
            Source::KB => "KB",
            Source::KA => "KA",
            Source::WB => "WB",
            Source::WA => "WA",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Source {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "KB" => Ok(Source::KB),
            "KA" => Ok(Source::KA),
            "WB" => Ok(Source::WB),
            "WA" => Ok(Source::WA),
            _ => Err(CoreError::InvalidArgument(format!("unknown source `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentConeMultiset {
    pub items: Vec<(ConeSpec, u64)>,
    /// Lineality dimension added by the lifted description (KA only);
    /// intrinsic volume k of the true cone is υ_{k + lineality} of the item.
    pub lineality: usize,
}

impl TangentConeMultiset {
    pub fn face_count(&self) -> u64 {
        self.items.iter().map(|(_, m)| m).sum()
    }

    /// sum over faces of υ_k of the tangent cone.
    pub fn intrinsic_sum(&self, k: usize) -> Rational {
        let mut acc = Rational::zero();
        for (spec, m) in &self.items {
            acc += cone_spec_intrinsic(spec, k + self.lineality) * int(*m as i64);
        }
        acc
    }
}

/// Compositions of `total` with one part per entry of `mins`, each part at
/// least its minimum, in lexicographic order.
pub fn compositions(total: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    fn rec(total: usize, mins: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&first, rest)) = mins.split_first() else {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let reserve: usize = rest.iter().sum();
        if total < first + reserve {
            return;
        }
        if rest.is_empty() {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for part in first..=(total - reserve) {
            cur.push(part);
            rec(total - part, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, mins, &mut Vec::new(), &mut out);
    out
}

pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    compositions(total, &vec![0; parts])
}

pub fn enumerate_tangent_cones(source: Source, n: usize, j: usize) -> TangentConeMultiset {
    let mut items = Vec::new();
    let mut lineality = 0;
    if j > n {
        return TangentConeMultiset { items, lineality };
    }
    match source {
        Source::KB => {
            let mut mins = vec![0];
            mins.extend(std::iter::repeat_n(1, j));
            mins.push(0);
            for l in compositions(n, &mins) {
                let mut f = vec![Factor::b(l[0])];
                f.extend(l[1..=j].iter().map(|&s| Factor::a(s)));
                f.push(Factor::b(l[j + 1]));
                items.push((ConeSpec { factors: f }, 1));
            }
        }
        Source::WB => {
            let mut mins = vec![1; j];
            mins.push(0);
            for l in compositions(n, &mins) {
                let mut f: Vec<Factor> = l[..j].iter().map(|&s| Factor::a(s)).collect();
                f.push(Factor::b(l[j]));
                items.push((ConeSpec { factors: f }, 1));
            }
        }
        Source::WA => {
            if j >= 1 {
                for l in compositions(n, &vec![1; j]) {
                    let f = l.iter().map(|&s| Factor::a(s)).collect();
                    items.push((ConeSpec { factors: f }, 1));
                }
            }
        }
        Source::KA => {
            lineality = 1;
            for l in compositions(n + 1, &vec![1; j + 1]) {
                let f = l.iter().map(|&s| Factor::a(s)).collect();
                items.push((ConeSpec { factors: f }, l[0] as u64));
            }
        }
    }
    TangentConeMultiset { items, lineality }
}

/// Tangent cones of a product of b sources of the same type at its j-faces.
pub fn enumerate_product_tangent_cones(source: Source, ns: &[usize], j: usize) -> TangentConeMultiset {
    let per_factor: Vec<Vec<TangentConeMultiset>> = ns
        .iter()
        .map(|&ni| (0..=ni.min(j)).map(|ji| enumerate_tangent_cones(source, ni, ji)).collect())
        .collect();
    let mut items = Vec::new();
    for js in weak_compositions(j, ns.len()) {
        if js.iter().zip(ns).any(|(ji, ni)| ji > ni) {
            continue;
        }
        let mut acc = vec![(ConeSpec::default(), 1u64)];
        for (i, &ji) in js.iter().enumerate() {
            let mut next = Vec::with_capacity(acc.len() * per_factor[i][ji].items.len());
            for (s, a) in &acc {
                for (t, b) in &per_factor[i][ji].items {
                    next.push((s.concat(t), a * b));
                }
            }
            acc = next;
        }
        items.extend(acc);
    }
    let lineality = if source == Source::KA { ns.len() } else { 0 };
    TangentConeMultiset { items, lineality }
}

/// Number of j-faces.
pub fn face_count(source: Source, n: usize, j: usize) -> Rational {
    match source {
        Source::KB | Source::KA => binomial(n + 1, j + 1),
        Source::WB => binomial(n, j),
        Source::WA => {
            if j == 0 || n == 0 {
                Rational::zero()
            } else {
                binomial(n - 1, j - 1)
            }
        }
    }
}

pub fn theorem_orthoscheme(n: usize, j: usize, k: usize) -> Rational {
    factorial(j) / factorial(n) * stirling1(n + 1, k + 1) * stirling2(k + 1, j + 1)
}

pub fn theorem_weyl(family: Family, n: usize, j: usize, k: usize) -> Rational {
    match family {
        Family::A => factorial(j) / factorial(n) * stirling1(n, k) * stirling2(k, j),
        Family::B => {
            pow2(j as i64 - n as i64) * factorial(j) / factorial(n) * stirling1_b(n, k) * stirling2_b(k, j)
        }
    }
}

/// Closed form of sum over j-faces F of υ_k(T_F).
pub fn theorem(source: Source, n: usize, j: usize, k: usize) -> Rational {
    match source {
        Source::KB | Source::KA => theorem_orthoscheme(n, j, k),
        Source::WB => theorem_weyl(Family::B, n, j, k),
        Source::WA => theorem_weyl(Family::A, n, j, k),
    }
}

fn composition_args(j: usize, b: usize, n: usize) -> Result<()> {
    if j == 0 && b == 0 {
        return Err(CoreError::InvalidArgument("composition sum needs (j, b) != (0, 0)".into()));
    }
    if n == 0 {
        return Err(CoreError::InvalidArgument("composition sum needs n >= 1".into()));
    }
    Ok(())
}

/// (j!/n!) ⟨n+b/2, k+b/2⟩_{b/2} {k+b/2, j+b/2}_{b/2}.
pub fn composition_sum(j: usize, b: usize, n: usize, k: usize) -> Result<Rational> {
    composition_args(j, b, n)?;
    let r = Rational::new((b as i64).into(), 2.into());
    Ok(factorial(j) / factorial(n) * r_stirling1(n, k, &r) * r_stirling2(k, j, &r))
}

/// The cones A(l_1)x..xA(l_j)xB(l_{j+1})x..xB(l_{j+b}) summed over l.
pub fn composition_cones(j: usize, b: usize, n: usize) -> Vec<ConeSpec> {
    let mut mins = vec![1; j];
    mins.extend(std::iter::repeat_n(0, b));
    compositions(n, &mins)
        .into_iter()
        .map(|l| {
            let factors = l
                .iter()
                .enumerate()
                .map(|(i, &s)| if i < j { Factor::a(s) } else { Factor::b(s) })
                .collect();
            ConeSpec { factors }
        })
        .collect()
}

pub fn composition_sum_enumerated(j: usize, b: usize, n: usize, k: usize) -> Result<Rational> {
    composition_args(j, b, n)?;
    Ok(composition_cones(j, b, n).iter().map(|c| cone_spec_intrinsic(c, k)).sum())
}

pub fn product_d(source: Source) -> Rational {
    match source {
        Source::KB | Source::KA => Rational::one(),
        Source::WB => Rational::new(1.into(), 2.into()),
        Source::WA => Rational::zero(),
    }
}

/// sum over j-faces of the product of sources with sizes ns of υ_k(T_F).
pub fn product_theorem(source: Source, ns: &[usize], j: usize, k: usize) -> Result<Rational> {
    r_coefficient(&product_d(source), k, j, ns)
}

/// Same as product_theorem for all k at once, as a polynomial in t.
pub fn product_polynomial(source: Source, ns: &[usize], j: usize) -> Result<TPoly> {
    r_polynomial(&product_d(source), j, ns)
}

/// (j!/n!) C(j+b-1, b-1) ⟨n+b, k+b⟩_b {k+b, j+b}_b.
pub fn aggregated_product_sum(b: usize, n: usize, j: usize, k: usize) -> Result<Rational> {
    if b == 0 {
        return Err(CoreError::InvalidArgument("aggregated sum needs b >= 1".into()));
    }
    let r = int(b as i64);
    Ok(factorial(j) / factorial(n) * binomial(j + b - 1, b - 1) * r_stirling1(n, k, &r) * r_stirling2(k, j, &r))
}

/// Sum of the product theorem over weak compositions of n into b parts.
pub fn aggregated_by_enumeration(b: usize, n: usize, j: usize, k: usize) -> Result<Rational> {
    if b == 0 {
        return Err(CoreError::InvalidArgument("aggregated sum needs b >= 1".into()));
    }
    let mut acc = Rational::zero();
    for ns in weak_compositions(n, b) {
        acc += product_theorem(Source::KB, &ns, j, k)?;
    }
    Ok(acc)
}

pub fn internal_angle_sum(source: Source, n: usize, j: usize) -> Rational {
    theorem(source, n, j, n)
}

pub fn external_angle_sum(source: Source, n: usize, j: usize) -> Rational {
    theorem(source, n, j, j)
}
