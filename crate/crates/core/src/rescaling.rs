//! Admissible rescalings in their three equivalent coordinates.
//!
//! For a fixed player count `n` a rescaling is a probability vector
//! `mu[0..=n]` over coalition sizes. The other two views are derived from it:
//!
//! * `f(n, k) = mu(k) / C(n, k)`, the weight carried by each individual
//!   coalition of size `k`;
//! * `F(n, k) = mu(k) + ... + mu(n)`, a non-increasing tail function with
//!   `F(n, 0) = 1` and `F(n, n + 1) = 0`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, int, ratio, Rational};

/// Largest `n` accepted when instantiating family rows or recursion checks.
pub const MAX_FAMILY_N: usize = 64;

/// One row `n` of an admissible rescaling, stored as `mu` with the `f` and
/// `F` views precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescalingRow {
    n: usize,
    mu: Vec<Rational>,
    f: Vec<Rational>,
    tail: Vec<Rational>,
}

impl RescalingRow {
    pub fn from_mu(n: usize, mu: Vec<Rational>) -> Result<Self> {
        if mu.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: mu.len(),
            });
        }
        if let Some(k) = mu.iter().position(|m| m.is_negative()) {
            return Err(Error::InvalidRow(format!("mu({n},{k}) is negative")));
        }
        let total: Rational = mu.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidRow(format!("mu sums to {total}, not 1")));
        }
        Ok(Self::build(n, mu))
    }

    /// From per-coalition weights `f(n, 0..=n)`.
    pub fn from_f(n: usize, f: Vec<Rational>) -> Result<Self> {
        if f.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: f.len(),
            });
        }
        if let Some(k) = f.iter().position(|x| x.is_negative()) {
            return Err(Error::InvalidRow(format!("f({n},{k}) is negative")));
        }
        let mu: Vec<Rational> = f
            .into_iter()
            .enumerate()
            .map(|(k, x)| x * Rational::from_integer(binomial(n, k)))
            .collect();
        let total: Rational = mu.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidRow(format!(
                "sum of f(n,k) C(n,k) is {total}, not 1"
            )));
        }
        Ok(Self::build(n, mu))
    }

    /// From tail values `F(n, 0..=n)`; `F(n, n + 1) = 0` is implied.
    pub fn from_tail(n: usize, tail: Vec<Rational>) -> Result<Self> {
        if tail.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: tail.len(),
            });
        }
        if !tail[0].is_one() {
            return Err(Error::InvalidRow(format!("F({n},0) is {}, not 1", tail[0])));
        }
        let mut mu = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let next = tail.get(k + 1).cloned().unwrap_or_else(Rational::zero);
            let step = &tail[k] - next;
            if step.is_negative() {
                return Err(Error::InvalidRow(format!(
                    "F({n},k) increases at k = {}",
                    k + 1
                )));
            }
            mu.push(step);
        }
        Ok(Self::build(n, mu))
    }

    fn build(n: usize, mu: Vec<Rational>) -> Self {
        let f = mu
            .iter()
            .enumerate()
            .map(|(k, m)| m / Rational::from_integer(binomial(n, k)))
            .collect();
        let mut tail = vec![Rational::zero(); n + 2];
        for k in (0..=n).rev() {
            tail[k] = &tail[k + 1] + &mu[k];
        }
        RescalingRow { n, mu, f, tail }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `mu_n(k)`; zero outside `0..=n`.
    pub fn mu(&self, k: usize) -> Rational {
        self.mu.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `f(n, k)`; zero outside `0..=n`.
    pub fn f(&self, k: usize) -> Rational {
        self.f.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `F(n, k)`; zero for `k > n`.
    pub fn tail(&self, k: usize) -> Rational {
        self.tail.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mu_values(&self) -> &[Rational] {
        &self.mu
    }

    pub fn f_values(&self) -> &[Rational] {
        &self.f
    }

    /// `F(n, 0..=n)`.
    pub fn tail_values(&self) -> &[Rational] {
        &self.tail[..=self.n]
    }

    /// Whether `mu_n` is symmetric about `n / 2`.
    pub fn is_self_dual(&self) -> bool {
        (0..=self.n).all(|k| self.mu[k] == self.mu[self.n - k])
    }

    /// `c_n = sum_{k>=1} C(n-1, k-1) f(n, k)`, the value of `Q*_F` on a
    /// dictatorial game.
    pub fn c_norm(&self) -> Rational {
        (1..=self.n)
            .map(|k| Rational::from_integer(binomial(self.n - 1, k - 1)) * &self.f[k])
            .sum()
    }

    /// All weights `f(n, k)` for `1 <= k <= n` are strictly positive.
    pub fn is_regular(&self) -> bool {
        self.f[1..].iter().all(|x| x.is_positive())
    }

    /// `c_n = 1`, i.e. the unnormalized weights already form a semivalue.
    pub fn is_semivalue_row(&self) -> bool {
        self.c_norm().is_one()
    }
}

/// Cached harmonic numbers `H_0 = 0, H_1, .., H_n`.
#[derive(Clone, Debug)]
pub struct HarmonicTable {
    values: Vec<Rational>,
}

impl HarmonicTable {
    pub fn new(n: usize) -> Self {
        let mut values = vec![Rational::zero()];
        for j in 1..=n {
            let next = &values[j - 1] + ratio(1, j as i64);
            values.push(next);
        }
        HarmonicTable { values }
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.values[j]
    }

    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// `mu_n` uniform on `0..=n`; `F(n, k) = 1 - k / (n + 1)`.
    Uniform,
    /// `f(n, k) = 2^-n`; gives the Coleman index and the Banzhaf value.
    Coleman,
    /// `mu_n(k) = 1 / (k H_n)` for `k >= 1`; normalizes to the Shapley value.
    Shapley,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Uniform, Builtin::Coleman, Builtin::Shapley];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Uniform => "uniform",
            Builtin::Coleman => "coleman",
            Builtin::Shapley => "shapley",
        }
    }

    fn mu(self, n: usize, k: usize) -> Rational {
        if k > n {
            return Rational::zero();
        }
        match self {
            Builtin::Uniform => ratio(1, n as i64 + 1),
            Builtin::Coleman => Rational::new(binomial(n, k), num_bigint::BigInt::one() << n),
            Builtin::Shapley if k == 0 => Rational::zero(),
            Builtin::Shapley => {
                let h = HarmonicTable::new(n);
                (int(k as i64) * h.get(n)).recip()
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" | "qstar0" => Ok(Builtin::Uniform),
            "coleman" | "banzhaf" => Ok(Builtin::Coleman),
            "shapley" => Ok(Builtin::Shapley),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Generator = Arc<dyn Fn(usize, usize) -> Rational + Send + Sync>;

/// A rescaling defined for every `n >= 1` by a generator `(n, k) -> mu_n(k)`.
#[derive(Clone)]
pub struct RescalingFamily {
    name: String,
    generator: Generator,
}

impl fmt::Debug for RescalingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RescalingFamily")
            .field("name", &self.name)
            .finish()
    }
}

impl RescalingFamily {
    pub fn new(
        name: impl Into<String>,
        generator: impl Fn(usize, usize) -> Rational + Send + Sync + 'static,
    ) -> Self {
        RescalingFamily {
            name: name.into(),
            generator: Arc::new(generator),
        }
    }

    pub fn builtin(which: Builtin) -> Self {
        Self::new(which.name(), move |n, k| which.mu(n, k))
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::builtin(name.parse()?))
    }

    pub fn uniform() -> Self {
        Self::builtin(Builtin::Uniform)
    }

    pub fn coleman() -> Self {
        Self::builtin(Builtin::Coleman)
    }

    pub fn shapley() -> Self {
        Self::builtin(Builtin::Shapley)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mu(&self, n: usize, k: usize) -> Rational {
        (self.generator)(n, k)
    }

    /// Instantiates and validates row `n`.
    pub fn row(&self, n: usize) -> Result<RescalingRow> {
        if n == 0 || n > MAX_FAMILY_N {
            return Err(Error::InvalidPlayerCount(n));
        }
        RescalingRow::from_mu(n, (0..=n).map(|k| self.mu(n, k)).collect())
    }
}

/// Per-coalition size weights `w(n, k)` defined across player counts.
/// Families supply `f(n, k)`; [`Normalized`] divides by `c_n`.
pub trait SizeWeights {
    fn label(&self) -> String;

    fn weight(&self, n: usize, k: usize) -> Result<Rational>;

    fn weights(&self, n: usize) -> Result<Vec<Rational>> {
        (0..=n).map(|k| self.weight(n, k)).collect()
    }
}

impl SizeWeights for RescalingFamily {
    fn label(&self) -> String {
        self.name.clone()
    }

    fn weight(&self, n: usize, k: usize) -> Result<Rational> {
        if k > n {
            return Ok(Rational::zero());
        }
        Ok(self.mu(n, k) / Rational::from_integer(binomial(n, k)))
    }
}

impl SizeWeights for RescalingRow {
    fn label(&self) -> String {
        format!("row(n={})", self.n)
    }

    fn weight(&self, n: usize, k: usize) -> Result<Rational> {
        if n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(self.f(k))
    }
}

/// A family's weights divided by its normalization constant, `f(n,k) / c_n`.
#[derive(Clone, Debug)]
pub struct Normalized(pub RescalingFamily);

impl SizeWeights for Normalized {
    fn label(&self) -> String {
        format!("normalized {}", self.0.name)
    }

    fn weight(&self, n: usize, k: usize) -> Result<Rational> {
        let c = self.0.row(n)?.c_norm();
        if c.is_zero() {
            return Err(Error::NormalizationUndefined);
        }
        Ok(self.0.weight(n, k)? / c)
    }
}

/// Which cross-`n` identity [`check_recursion`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursionForm {
    /// `f(n,k) = f(n+1,k) + f(n+1,k+1)` for `1 <= k <= n`.
    StandardF,
    /// The same identity written in tail coordinates.
    #[serde(rename = "F_form")]
    TailForm,
    /// `f(n,k) = f(n,k+1) + f(n+1,k+1)` for `0 <= k <= n`, verbatim.
    ExtendedF,
    /// `mu_n(k) = (1 - k/(n+1)) mu_{n+1}(k) + (k+1)/(n+1) mu_{n+1}(k+1)`
    /// for `1 <= k <= n`.
    MuForm,
}

impl RecursionForm {
    pub const ALL: [RecursionForm; 4] = [
        RecursionForm::StandardF,
        RecursionForm::TailForm,
        RecursionForm::ExtendedF,
        RecursionForm::MuForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecursionForm::StandardF => "standard_f",
            RecursionForm::TailForm => "F_form",
            RecursionForm::ExtendedF => "extended_f",
            RecursionForm::MuForm => "mu_form",
        }
    }
}

impl FromStr for RecursionForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RecursionForm::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown recursion form `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub n: usize,
    pub k: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub family: String,
    pub form: RecursionForm,
    pub n_max: usize,
    /// Number of `(n, k)` pairs evaluated.
    pub checked: usize,
    /// Every failing pair, in increasing `(n, k)` order.
    pub violations: Vec<Violation>,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn violation_at(&self, n: usize, k: usize) -> Option<&Violation> {
        self.violations.iter().find(|v| v.n == n && v.k == k)
    }
}

/// Evaluates `form` exactly for every `1 <= n < n_max` and every `k` in the
/// form's range.
pub fn check_recursion(
    weights: &dyn SizeWeights,
    form: RecursionForm,
    n_max: usize,
) -> Result<RecursionReport> {
    if n_max > MAX_FAMILY_N {
        return Err(Error::Capacity {
            n: n_max,
            limit: MAX_FAMILY_N,
        });
    }
    let rows: Vec<Vec<Rational>> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Ok(Vec::new())
            } else {
                weights.weights(n)
            }
        })
        .collect::<Result<_>>()?;
    let f = |n: usize, k: usize| rows[n].get(k).cloned().unwrap_or_else(Rational::zero);
    let mu = |n: usize, k: usize| f(n, k) * Rational::from_integer(binomial(n, k));
    let tail = |n: usize, k: usize| (k..=n).map(|j| mu(n, j)).sum::<Rational>();

    let mut report = RecursionReport {
        family: weights.label(),
        form,
        n_max,
        checked: 0,
        violations: Vec::new(),
    };
    for n in 1..n_max {
        let k_start = if form == RecursionForm::ExtendedF {
            0
        } else {
            1
        };
        for k in k_start..=n {
            let (lhs, rhs) = match form {
                RecursionForm::StandardF => (f(n, k), f(n + 1, k) + f(n + 1, k + 1)),
                RecursionForm::ExtendedF => (f(n, k), f(n, k + 1) + f(n + 1, k + 1)),
                RecursionForm::TailForm => {
                    let m = int(n as i64 + 1);
                    let lhs = tail(n, k) - tail(n, k + 1);
                    let rhs = int((n + 1 - k) as i64) / &m * tail(n + 1, k)
                        + (int(2 * k as i64) - int(n as i64)) / &m * tail(n + 1, k + 1)
                        - int(k as i64 + 1) / &m * tail(n + 1, k + 2);
                    (lhs, rhs)
                }
                RecursionForm::MuForm => {
                    let m = int(n as i64 + 1);
                    let rhs = (int(1) - int(k as i64) / &m) * mu(n + 1, k)
                        + int(k as i64 + 1) / &m * mu(n + 1, k + 1);
                    (mu(n, k), rhs)
                }
            };
            report.checked += 1;
            if lhs != rhs {
                report.violations.push(Violation { n, k, lhs, rhs });
            }
        }
    }
    Ok(report)
}

/// First `n` in `1..=n_max` whose row is not symmetric, with the offending `k`.
pub fn self_duality_witness(
    family: &RescalingFamily,
    n_max: usize,
) -> Result<Option<(usize, usize)>> {
    for n in 1..=n_max {
        let row = family.row(n)?;
        if let Some(k) = (0..=n).find(|&k| row.mu(k) != row.mu(n - k)) {
            return Ok(Some((n, k)));
        }
    }
    Ok(None)
}
