//! Closed forms for the common width of grids, cubes, hypercubes and tori.
//!
//! All arithmetic is exact and checked; nothing here touches floating point.

use core::fmt;

use thiserror::Error;

use crate::shape::GridShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    LargeMaxFactor,
    ThreeD,
    Cubic,
    Hypercube,
    TorusLargeMax,
    Conjecture4D,
    PeakScan3D,
    SingleVertex,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::LargeMaxFactor => "LargeMaxFactor",
            Method::ThreeD => "ThreeD",
            Method::Cubic => "Cubic",
            Method::Hypercube => "Hypercube",
            Method::TorusLargeMax => "TorusLargeMax",
            Method::Conjecture4D => "Conjecture4D",
            Method::PeakScan3D => "PeakScan3D",
            Method::SingleVertex => "SingleVertex",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of trying one closed form. `value` is present iff the formula
/// applies; otherwise `reason` says why not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub method: Method,
    pub value: Option<u64>,
    pub reason: Option<&'static str>,
}

impl FormulaResult {
    fn exact(method: Method, value: u64) -> Self {
        Self { method, value: Some(value), reason: None }
    }

    fn not_applicable(method: Method, reason: &'static str) -> Self {
        Self { method, value: None, reason: Some(reason) }
    }

    pub fn is_applicable(&self) -> bool {
        self.value.is_some()
    }

    /// True for values that are conjectured rather than proven.
    pub fn conjectured(&self) -> bool {
        self.method == Method::Conjecture4D
    }
}

fn mul(a: u64, b: u64) -> Result<u64, FormulaError> {
    a.checked_mul(b).ok_or(FormulaError::Overflow)
}

fn product(xs: &[usize]) -> Result<u64, FormulaError> {
    xs.iter().try_fold(1u64, |acc, &n| mul(acc, n as u64))
}

fn check_sorted_3d(n1: u64, n2: u64, n3: u64) -> Result<(), FormulaError> {
    if n1 < 2 {
        return Err(FormulaError::Precondition("every factor must be at least 2"));
    }
    if !(n1 <= n2 && n2 <= n3) {
        return Err(FormulaError::Precondition("factors must be sorted ascending"));
    }
    Ok(())
}

/// `Π_{i<d} n_i` when `Σ_{i<d} (n_i − 1) ≤ n_d`.
pub fn vbw_large_max(shape: &GridShape) -> Result<FormulaResult, FormulaError> {
    let Some((&largest, rest)) = shape.dims().split_last() else {
        return Ok(FormulaResult::not_applicable(
            Method::LargeMaxFactor,
            "single-vertex grid has no factors",
        ));
    };
    let slack: usize = rest.iter().map(|n| n - 1).sum();
    if slack > largest {
        return Ok(FormulaResult::not_applicable(
            Method::LargeMaxFactor,
            "largest factor is smaller than the sum of the others minus one each",
        ));
    }
    Ok(FormulaResult::exact(Method::LargeMaxFactor, product(rest)?))
}

/// Width of `P_{n1} □ P_{n2} □ P_{n3}` for `2 ≤ n1 ≤ n2 ≤ n3`.
pub fn vbw_3d(n1: u64, n2: u64, n3: u64) -> Result<u64, FormulaError> {
    check_sorted_3d(n1, n2, n3)?;
    let base = mul(n1, n2)?;
    if n1 + n2 - 2 <= n3 {
        return Ok(base);
    }
    let t = n1 + n2 - n3 - 1;
    Ok(base - mul(t, t)? / 4)
}

/// `⌊(3n² + 2n) / 4⌋`, the width of the cube `P_n³`.
pub fn vbw_cubic(n: u64) -> Result<u64, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Precondition("n must be at least 2"));
    }
    let sq = mul(n, n)?;
    let num = mul(3, sq)?
        .checked_add(mul(2, n)?)
        .ok_or(FormulaError::Overflow)?;
    Ok(num / 4)
}

/// `|∂(S_r)|` where `S_r` is the simplicial prefix ending at
/// `(r − n2 + 2, n2 − 2, 0)`, valid for `n3 ≤ n1 + n2 − 2` and
/// `n3 − 1 ≤ r ≤ n1 + n2 − 3`:
///
/// `n1·n2 − ((n1 + n2 − n3 − 1)² − 1)/4 − (2r − n1 − n2 − n3 + 4)²/4`.
pub fn boundary_at_peak_candidate(n1: u64, n2: u64, n3: u64, r: u64) -> Result<u64, FormulaError> {
    check_sorted_3d(n1, n2, n3)?;
    if n3 + 2 > n1 + n2 {
        return Err(FormulaError::Precondition("requires n3 <= n1 + n2 - 2"));
    }
    if r + 1 < n3 || r + 3 > n1 + n2 {
        return Err(FormulaError::Precondition("r must lie in n3 - 1 ..= n1 + n2 - 3"));
    }
    let wide = |x: u64| i128::from(x);
    let (n1, n2, n3, r) = (wide(n1), wide(n2), wide(n3), wide(r));
    let a = n1 + n2 - n3 - 1;
    let b = 2 * r - n1 - n2 - n3 + 4;
    let numerator = 4 * n1 * n2 - (a * a - 1) - b * b;
    // a and b have opposite parity, so the two quarter terms sum to an integer.
    assert_eq!(numerator % 4, 0, "quarter terms must combine to an integer");
    u64::try_from(numerator / 4).map_err(|_| FormulaError::Overflow)
}

/// The radius minimizing `(2r − n1 − n2 − n3 + 4)²`.
pub fn peak_radius(n1: u64, n2: u64, n3: u64) -> u64 {
    (n1 + n2 + n3 - 4) / 2
}

/// Maximum of [`boundary_at_peak_candidate`] over `r = n3 − 1 ..= n1 + n2 − 3`.
pub fn vbw_3d_peak_scan(n1: u64, n2: u64, n3: u64) -> Result<u64, FormulaError> {
    check_sorted_3d(n1, n2, n3)?;
    if n3 + 2 > n1 + n2 {
        return Err(FormulaError::Precondition("requires n3 <= n1 + n2 - 2"));
    }
    let mut best = 0;
    for r in n3 - 1..=n1 + n2 - 3 {
        best = best.max(boundary_at_peak_candidate(n1, n2, n3, r)?);
    }
    Ok(best)
}

fn central_binomial_floor(k: u64) -> Result<u64, FormulaError> {
    // C(k, ⌊k/2⌋) built as a running product, exact at every step.
    let m = k / 2;
    let mut c: u128 = 1;
    for i in 0..m {
        c = c * u128::from(k - i) / u128::from(i + 1);
        if c > u128::from(u64::MAX) {
            return Err(FormulaError::Overflow);
        }
    }
    Ok(c as u64)
}

/// `Σ_{k=0}^{d−1} C(k, ⌊k/2⌋)`, the width of the hypercube `Q_d`.
pub fn vbw_hypercube(d: u64) -> Result<u64, FormulaError> {
    if d == 0 {
        return Err(FormulaError::Precondition("d must be at least 1"));
    }
    (0..d).try_fold(0u64, |acc, k| {
        acc.checked_add(central_binomial_floor(k)?)
            .ok_or(FormulaError::Overflow)
    })
}

/// `2^d · Π_{i<d} n_i` for the even torus `Π C_{2 n_i}` when
/// `Σ_{i<d} n_i ≤ n_d − 1`. Takes the half-lengths, sorted.
pub fn vbw_torus_large_max(half_dims: &[usize]) -> Result<FormulaResult, FormulaError> {
    if half_dims.is_empty() {
        return Err(FormulaError::Precondition("torus needs at least one cycle"));
    }
    if half_dims.iter().any(|&n| n < 2) {
        return Err(FormulaError::Precondition("every half-length must be at least 2"));
    }
    if half_dims.windows(2).any(|w| w[0] > w[1]) {
        return Err(FormulaError::Precondition("half-lengths must be sorted ascending"));
    }
    let (&largest, rest) = half_dims.split_last().expect("non-empty");
    let sum: usize = rest.iter().sum();
    if sum + 1 > largest {
        return Ok(FormulaResult::not_applicable(
            Method::TorusLargeMax,
            "largest half-length is at most the sum of the others",
        ));
    }
    let d = u32::try_from(half_dims.len()).map_err(|_| FormulaError::Overflow)?;
    let scale = 1u64.checked_shl(d).filter(|_| d < 64).ok_or(FormulaError::Overflow)?;
    Ok(FormulaResult::exact(Method::TorusLargeMax, mul(scale, product(rest)?)?))
}

/// `⌊(8n³ + 3n² + 4n) / 12⌋`, conjectured for `P_n⁴`.
pub fn conjecture_4d(n: u64) -> Result<FormulaResult, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Precondition("n must be at least 2"));
    }
    let n2 = mul(n, n)?;
    let n3 = mul(n2, n)?;
    let num = [mul(8, n3)?, mul(3, n2)?, mul(4, n)?]
        .into_iter()
        .try_fold(0u64, |acc, x| acc.checked_add(x))
        .ok_or(FormulaError::Overflow)?;
    Ok(FormulaResult::exact(Method::Conjecture4D, num / 12))
}

/// The first proven closed form that applies: large maximum factor, then
/// 3D grids, then hypercubes. `None` means only a sweep can answer.
pub fn best_formula(shape: &GridShape) -> Option<FormulaResult> {
    let dims = shape.dims();
    if dims.is_empty() {
        return Some(FormulaResult::exact(Method::SingleVertex, 0));
    }
    if let Ok(r) = vbw_large_max(shape) {
        if r.is_applicable() {
            return Some(r);
        }
    }
    if let [n1, n2, n3] = *dims {
        if let Ok(v) = vbw_3d(n1 as u64, n2 as u64, n3 as u64) {
            return Some(FormulaResult::exact(Method::ThreeD, v));
        }
    }
    if dims.iter().all(|&n| n == 2) {
        if let Ok(v) = vbw_hypercube(dims.len() as u64) {
            return Some(FormulaResult::exact(Method::Hypercube, v));
        }
    }
    None
}
