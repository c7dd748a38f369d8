//! Product-formula schedules, their evaluation, and complexity bounds.
//!
//! A schedule is the flattened executable form of a splitting formula: an
//! ordered list of (term index, coefficient) factors. Evaluating a schedule
//! in REAL mode for time t yields Π_i exp(coeff_i · t · H_{j_i}); IMAGINARY
//! mode inserts the -i of quantum time evolution. The leftmost factor of the
//! product is the last operator applied, so `evaluate` multiplies factors
//! left to right into an accumulator whose leftmost block is factor 0.
//!
//! Constructors:
//! * [`Schedule::first_order`] — plain Lie-Trotter splitting.
//! * [`Schedule::strang`] — the palindromic half-step splitting
//!   e^{H_1 t/2} ... e^{H_{L-1} t/2} e^{H_L t} e^{H_{L-1} t/2} ... e^{H_1 t/2}.
//! * [`Schedule::suzuki`] — the recursive even-order construction
//!   S_{2k}(t) = S_{2k-2}(s_k t)^2 · S_{2k-2}((1-4 s_k) t) · S_{2k-2}(s_k t)^2
//!   with s_k = 1/(4 - 4^{1/(2k-1)}), expanded eagerly and adjacent-merged so
//!   the factor count is exactly 2(L-1)·5^{order/2-1} + 1.
//!
//! The `order` arguments of the public API are always the approximation
//! order 2k (even); the recursion index k stays internal.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::TermList;
use crate::linalg::ComplexMatrix;
use crate::sig17;

/// Whether a factor exponentiates `coeff·t·H` directly or with the -i of
/// Schrödinger evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionMode {
    /// Each factor is exp(coeff · t · H_j).
    Real,
    /// Each factor is exp(-i · coeff · t · H_j).
    Imaginary,
}

impl EvolutionMode {
    fn scalar(self) -> Complex64 {
        match self {
            EvolutionMode::Real => Complex64::new(1.0, 0.0),
            EvolutionMode::Imaginary => Complex64::new(0.0, -1.0),
        }
    }
}

/// Flattened product formula: ordered (term index, coefficient) factors.
///
/// Invariants maintained by the constructors: every index is < `term_count`,
/// no two adjacent factors share an index (adjacent merging already applied),
/// and for each term the coefficients sum to 1 up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    term_count: usize,
    order: u32,
    factors: Vec<(usize, f64)>,
}

impl Schedule {
    /// First-order splitting: one unit factor per term, in term order.
    pub fn first_order(term_count: usize) -> Result<Self> {
        if term_count == 0 {
            return Err(Error::ZeroTermCount);
        }
        Ok(Self {
            term_count,
            order: 1,
            factors: (0..term_count).map(|j| (j, 1.0)).collect(),
        })
    }

    /// Second-order palindromic splitting; 2L-1 factors.
    pub fn strang(term_count: usize) -> Result<Self> {
        if term_count == 0 {
            return Err(Error::ZeroTermCount);
        }
        let mut factors = Vec::with_capacity(2 * term_count - 1);
        for j in 0..term_count - 1 {
            factors.push((j, 0.5));
        }
        factors.push((term_count - 1, 1.0));
        for j in (0..term_count - 1).rev() {
            factors.push((j, 0.5));
        }
        Ok(Self {
            term_count,
            order: 2,
            factors,
        })
    }

    /// Recursive symmetric formula of the given even order, flattened and
    /// adjacent-merged.
    pub fn suzuki(order: u32, term_count: usize) -> Result<Self> {
        if order < 2 || order % 2 != 0 {
            return Err(Error::InvalidOrder(order));
        }
        let mut schedule = Self::strang(term_count)?;
        for k in 2..=order / 2 {
            let s = suzuki_coefficient(k)?;
            let scales = [s, s, 1.0 - 4.0 * s, s, s];
            let mut factors: Vec<(usize, f64)> =
                Vec::with_capacity(5 * schedule.factors.len());
            for scale in scales {
                for &(j, coeff) in &schedule.factors {
                    push_merged(&mut factors, j, scale * coeff);
                }
            }
            schedule = Self {
                term_count,
                order: 2 * k,
                factors,
            };
        }
        Ok(schedule)
    }

    pub fn term_count(&self) -> usize {
        self.term_count
    }

    /// Claimed approximation order.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(usize, f64)] {
        &self.factors
    }

    /// True when the factor sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.factors.len();
        (0..n / 2).all(|i| self.factors[i] == self.factors[n - 1 - i])
    }

    /// Per-term coefficient sums; each should be 1 for a time-preserving
    /// formula.
    pub fn coefficient_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.term_count];
        for &(j, coeff) in &self.factors {
            sums[j] += coeff;
        }
        sums
    }

    /// CSV dump: `position,term_index,coeff` with 17-significant-digit
    /// coefficients.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,term_index,coeff\n");
        for (pos, &(j, coeff)) in self.factors.iter().enumerate() {
            out.push_str(&format!("{pos},{j},{}\n", sig17(coeff)));
        }
        out
    }
}

fn push_merged(factors: &mut Vec<(usize, f64)>, j: usize, coeff: f64) {
    if let Some(last) = factors.last_mut() {
        if last.0 == j {
            last.1 += coeff;
            return;
        }
    }
    factors.push((j, coeff));
}

/// Splitting coefficient s_k = 1/(4 - 4^{1/(2k-1)}) of the convergent
/// five-factor recursion; lies in (0, 1) for every k >= 2.
pub fn suzuki_coefficient(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::CoefficientIndex(k));
    }
    Ok(1.0 / (4.0 - 4f64.powf(1.0 / (2.0 * f64::from(k) - 1.0))))
}

/// Splitting coefficient s_k = 1/(2 - 2^{1/(2k-1)}) of the divergent
/// three-factor recursion; exceeds 1 for every k, which is why that
/// recursion is never materialized as a [`Schedule`].
pub fn triplet_coefficient(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::CoefficientIndex(k));
    }
    Ok(1.0 / (2.0 - 2f64.powf(1.0 / (2.0 * f64::from(k) - 1.0))))
}

/// Equal-coefficient solution a = 1/((r-1) - (r-1)^{1/k}) of the order
/// conditions (r-1)·a^k + (1-(r-1)a)^k = 0, Σ = 1 for an r-factor split.
/// Only odd k admits a real solution.
pub fn general_r_coefficient(r: u32, k: u32) -> Result<f64> {
    if r < 3 {
        return Err(Error::SplitCount(r));
    }
    if k % 2 == 0 {
        return Err(Error::EvenRootExponent(k));
    }
    let rm1 = f64::from(r - 1);
    Ok(1.0 / (rm1 - rm1.powf(1.0 / f64::from(k))))
}

/// Number of exponentials in the flattened order-`order` schedule over L
/// terms: 2(L-1)·5^{order/2-1} + 1.
pub fn exp_count(order: u32, term_count: usize) -> Result<u64> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidOrder(order));
    }
    let pow = 5u64
        .checked_pow(order / 2 - 1)
        .expect("5^(order/2-1) exceeds u64");
    Ok(2 * (term_count as u64 - 1) * pow + 1)
}

/// Evaluate a schedule: Π_i exp(z · coeff_i · t · H_{j_i}) with z from the
/// mode, factor 0 leftmost (applied last).
///
/// Exponentials are cached per call by (term index, coefficient); schedules
/// reuse few distinct coefficients, and the cached path is bitwise identical
/// to the uncached one.
pub fn evaluate(
    schedule: &Schedule,
    terms: &TermList,
    t: f64,
    mode: EvolutionMode,
) -> Result<ComplexMatrix> {
    if schedule.term_count() != terms.len() {
        return Err(Error::TermCountMismatch {
            schedule: schedule.term_count(),
            terms: terms.len(),
        });
    }
    let z = mode.scalar();
    let mut cache: HashMap<(usize, u64), ComplexMatrix> = HashMap::new();
    let mut acc: Option<ComplexMatrix> = None;
    for &(j, coeff) in schedule.factors() {
        let key = (j, coeff.to_bits());
        let factor = match cache.get(&key) {
            Some(m) => m.clone(),
            None => {
                let m = terms
                    .get(j)
                    .scaled(z * Complex64::new(coeff * t, 0.0))
                    .expm()?;
                cache.insert(key, m.clone());
                m
            }
        };
        acc = Some(match acc {
            None => factor,
            Some(prev) => prev.matmul(&factor)?,
        });
    }
    Ok(acc.expect("schedules are never empty"))
}

/// Evaluate the schedule at t/m and raise the step to the m-th power.
pub fn repeat_evaluate(
    schedule: &Schedule,
    terms: &TermList,
    t: f64,
    m: u64,
    mode: EvolutionMode,
) -> Result<ComplexMatrix> {
    let step = evaluate(schedule, terms, t / m as f64, mode)?;
    Ok(step.matrix_power(m))
}

fn check_window(k: u32, term_count: usize, tau: f64, eps: f64) -> Result<f64> {
    if !(eps <= 1.0) || eps <= 0.0 {
        return Err(Error::ValidityWindow(format!(
            "need 0 < eps <= 1, got eps = {eps}"
        )));
    }
    let gate = 2.0 * term_count as f64 * 5f64.powi(k as i32 - 1) * tau;
    if !(gate >= 1.0) {
        return Err(Error::ValidityWindow(format!(
            "need 2*L*5^(k-1)*tau >= 1, got {gate}"
        )));
    }
    Ok(gate)
}

/// Step count guaranteeing error <= eps when repeating the order-2k formula:
/// m = ceil((2L·5^{k-1}·τ)^{1+1/2k} / eps^{1/2k}).
///
/// Outside the validity window eps <= 1 <= 2L·5^{k-1}·τ the guarantee does
/// not hold and the call fails rather than extrapolating.
pub fn m_theory(k: u32, term_count: usize, tau: f64, eps: f64) -> Result<u64> {
    let gate = check_window(k, term_count, tau, eps)?;
    let exponent = 1.0 + 1.0 / (2.0 * f64::from(k));
    let raw = gate.powf(exponent) / eps.powf(1.0 / (2.0 * f64::from(k)));
    Ok(raw.ceil() as u64)
}

/// Bound on the total number of exponentials for the order-2k formula:
/// L·5^{2k}·(Lτ)^{1+1/2k} / eps^{1/2k}. Same validity window as
/// [`m_theory`], and always at least 2L·5^{k-1}·m_theory.
pub fn nexp_bound(k: u32, term_count: usize, tau: f64, eps: f64) -> Result<f64> {
    check_window(k, term_count, tau, eps)?;
    let l = term_count as f64;
    let inv2k = 1.0 / (2.0 * f64::from(k));
    Ok(l * 5f64.powi(2 * k as i32) * (l * tau).powf(1.0 + inv2k) / eps.powf(inv2k))
}

/// Heuristic minimizer of the exponential-count bound:
/// k = round(0.5·sqrt(log_5(Lτ/eps) + 1)), clamped to at least 1.
pub fn optimal_k(term_count: usize, tau: f64, eps: f64) -> u32 {
    let arg = log5(term_count as f64 * tau / eps) + 1.0;
    let k = (0.5 * arg.max(0.0).sqrt()).round();
    (k as u32).max(1)
}

/// Order-free bound obtained by substituting the heuristic k:
/// 25·L²τ·5^{2·sqrt(log_5(Lτ/eps) + 1)}.
///
/// The square-root argument requires Lτ/eps >= 1/5; below that the formula
/// has no real value and the result is NaN.
pub fn nexp_bound_k_free(term_count: usize, tau: f64, eps: f64) -> f64 {
    let l = term_count as f64;
    let arg = log5(l * tau / eps) + 1.0;
    25.0 * l * l * tau * 5f64.powf(2.0 * arg.sqrt())
}

fn log5(x: f64) -> f64 {
    x.ln() / 5f64.ln()
}
