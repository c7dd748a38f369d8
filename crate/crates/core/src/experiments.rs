//! Deterministic validation experiments with CSV emission.
//!
//! Four drivers, each returning a table with a `to_csv` dump:
//! * [`error_vs_time`] — single-step relative error against the step size
//!   over a log-spaced grid, with a log-log regression per order.
//! * [`error_vs_cost`] — relative error of the repeated formula against the
//!   total exponential count, on log-spaced integer step grids.
//! * [`theory_vs_empirical`] — guaranteed step count from the bound next to
//!   the smallest step count that empirically reaches each tolerance. The
//!   bound side uses the theory's k = order/2; the empirical side searches
//!   linearly from m = 1 and caps at [`EMPIRICAL_SEARCH_CAP`].
//! * [`ising_bound_curve`] — the order-free exponential-count bound along
//!   the Ising chain family (L = 2n-1, τ = n).
//!
//! Error metric: the first two experiments divide by the norm of the exact
//! operator; the third compares absolute spectral error against ε. That
//! asymmetry is intentional and mirrors the reference procedure the tables
//! reproduce.
//!
//! Everything here is deterministic: identical inputs give byte-identical
//! CSV output.

use crate::error::{Error, Result};
use crate::formulas::{
    evaluate, exp_count, m_theory, nexp_bound_k_free, repeat_evaluate, EvolutionMode, Schedule,
};
use crate::hamiltonian::TermList;
use crate::linalg::ComplexMatrix;
use crate::sig17;
use num_complex::Complex64;

/// Largest m tried by the empirical search in [`theory_vs_empirical`].
pub const EMPIRICAL_SEARCH_CAP: u64 = 1000;

/// Relative errors at or below this are treated as measurement noise;
/// regressions are skipped when a series touches it.
pub const NOISE_FLOOR: f64 = 1e-14;

/// Strictly increasing, uniformly log-spaced grid of positive reals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentGrid {
    values: Vec<f64>,
}

impl ExperimentGrid {
    /// `count` points from `lo` to `hi` inclusive, log-uniform.
    pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::BadInput(format!(
                "grid needs 0 < lo < hi, got [{lo}, {hi}]"
            )));
        }
        if count < 2 {
            return Err(Error::BadInput(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        let (llo, lhi) = (lo.ln(), hi.ln());
        let mut values: Vec<f64> = (0..count)
            .map(|i| (llo + (lhi - llo) * i as f64 / (count - 1) as f64).exp())
            .collect();
        values[0] = lo;
        values[count - 1] = hi;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Ordinary least-squares fit on (ln x, ln y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Log-log linear regression. Requires equal lengths >= 3 and positive data.
pub fn loglog_regress(xs: &[f64], ys: &[f64]) -> Result<RegressionResult> {
    if xs.len() != ys.len() {
        return Err(Error::BadInput(format!(
            "regression needs equal lengths, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::BadInput(format!(
            "regression needs at least 3 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|&v| v <= 0.0 || !v.is_finite()) {
        return Err(Error::BadInput(
            "regression needs positive finite values".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    // syy == 0 means a constant series, fit exactly by the zero-slope line
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(RegressionResult {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeScalingRow {
    pub order: u32,
    pub t: f64,
    pub rel_error: f64,
}

/// Output of [`error_vs_time`]: rows plus one optional fit per order
/// (skipped when the series touches the noise floor).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScalingTable {
    pub rows: Vec<TimeScalingRow>,
    pub fits: Vec<(u32, Option<RegressionResult>)>,
}

impl TimeScalingTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,t,rel_error\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                row.order,
                sig17(row.t),
                sig17(row.rel_error)
            ));
        }
        out
    }
}

/// Single-step error scaling: for each order and grid point t, the relative
/// spectral error of the order-`order` schedule at time t against
/// exp(z·t·exact_sum). `exact_sum` is the generator Σ_j H_j, passed in so
/// callers can reuse it.
pub fn error_vs_time(
    terms: &TermList,
    exact_sum: &ComplexMatrix,
    orders: &[u32],
    grid: &ExperimentGrid,
    mode: EvolutionMode,
) -> Result<TimeScalingTable> {
    let z = mode_scalar(mode);
    let mut series: Vec<Vec<f64>> = vec![Vec::with_capacity(grid.len()); orders.len()];
    // exact reference computed once per grid point and shared across orders
    for &t in grid.values() {
        let exact = exact_sum.scaled(z * Complex64::new(t, 0.0)).expm()?;
        let exact_norm = exact.spectral_norm();
        for (slot, &order) in orders.iter().enumerate() {
            let schedule = Schedule::suzuki(order, terms.len())?;
            let approx = evaluate(&schedule, terms, t, mode)?;
            series[slot].push(approx.spectral_distance(&exact) / exact_norm);
        }
    }
    let mut rows = Vec::with_capacity(orders.len() * grid.len());
    let mut fits = Vec::with_capacity(orders.len());
    for (slot, &order) in orders.iter().enumerate() {
        let errs = &series[slot];
        for (&t, &rel_error) in grid.values().iter().zip(errs) {
            rows.push(TimeScalingRow { order, t, rel_error });
        }
        let fit = if errs.iter().any(|&e| e <= NOISE_FLOOR) {
            None
        } else {
            Some(loglog_regress(grid.values(), errs)?)
        };
        fits.push((order, fit));
    }
    Ok(TimeScalingTable { rows, fits })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostRow {
    pub order: u32,
    pub m: u64,
    pub cost: u64,
    pub rel_error: f64,
}

/// Output of [`error_vs_cost`].
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable {
    pub rows: Vec<CostRow>,
}

impl CostTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,m,cost,rel_error\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.order,
                row.m,
                row.cost,
                sig17(row.rel_error)
            ));
        }
        out
    }

    /// Smallest cost at which `order` reaches relative error <= target.
    pub fn cost_to_reach(&self, order: u32, target: f64) -> Option<u64> {
        self.rows
            .iter()
            .filter(|r| r.order == order && r.rel_error <= target)
            .map(|r| r.cost)
            .min()
    }
}

/// 20 log-spaced integers in [1, max_m], rounded to nearest (ties to even)
/// and deduplicated.
pub fn step_grid(max_m: u64) -> Vec<u64> {
    let points = 20usize;
    let hi = (max_m as f64).log10();
    let mut ms: Vec<u64> = (0..points)
        .map(|i| {
            let exp = hi * i as f64 / (points - 1) as f64;
            let v = 10f64.powf(exp).round_ties_even();
            v as u64
        })
        .collect();
    ms.dedup();
    ms
}

/// Error against computational cost: for each order, repeat the schedule on
/// the [`step_grid`] of its `max_m` entry; cost = m · exp_count(order, L).
pub fn error_vs_cost(
    terms: &TermList,
    orders_max_m: &[(u32, u64)],
    t: f64,
    mode: EvolutionMode,
) -> Result<CostTable> {
    let z = mode_scalar(mode);
    let exact = terms.sum().scaled(z * Complex64::new(t, 0.0)).expm()?;
    let exact_norm = exact.spectral_norm();
    let mut rows = Vec::new();
    for &(order, max_m) in orders_max_m {
        let schedule = Schedule::suzuki(order, terms.len())?;
        let per_step = exp_count(order, terms.len())?;
        for m in step_grid(max_m) {
            let approx = repeat_evaluate(&schedule, terms, t, m, mode)?;
            let rel_error = approx.spectral_distance(&exact) / exact_norm;
            rows.push(CostRow {
                order,
                m,
                cost: m * per_step,
                rel_error,
            });
        }
    }
    Ok(CostTable { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TightnessRow {
    pub epsilon: f64,
    pub m_theory: u64,
    /// Smallest m <= [`EMPIRICAL_SEARCH_CAP`] whose absolute error reaches
    /// epsilon; `None` when the cap is hit first.
    pub m_empirical: Option<u64>,
}

/// Output of [`theory_vs_empirical`].
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessTable {
    pub rows: Vec<TightnessRow>,
}

impl TightnessTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,m_theory,m_empirical\n");
        for row in &self.rows {
            let emp = match row.m_empirical {
                Some(m) => m.to_string(),
                None => "not reached".to_string(),
            };
            out.push_str(&format!("{},{},{emp}\n", sig17(row.epsilon), row.m_theory));
        }
        out
    }

    /// Smallest ratio m_theory / m_empirical over rows where the search
    /// converged.
    pub fn min_looseness_ratio(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter_map(|r| r.m_empirical.map(|m| r.m_theory as f64 / m as f64))
            .fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.min(x))))
    }
}

/// Bound tightness: for each ε in the grid, the guaranteed step count
/// m_theory(order/2, L, τ(1), ε) next to the smallest m whose absolute
/// spectral error against the exact operator is <= ε, searched linearly
/// from m = 1.
pub fn theory_vs_empirical(
    terms: &TermList,
    order: u32,
    eps_grid: &ExperimentGrid,
    mode: EvolutionMode,
) -> Result<TightnessTable> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidOrder(order));
    }
    let k = order / 2;
    let tau = terms.tau(1.0)?;
    let z = mode_scalar(mode);
    let exact = terms.sum().scaled(z).expm()?;
    let schedule = Schedule::suzuki(order, terms.len())?;
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid.values() {
        let mt = m_theory(k, terms.len(), tau, eps)?;
        let mut m_empirical = None;
        for m in 1..=EMPIRICAL_SEARCH_CAP {
            let approx = repeat_evaluate(&schedule, terms, 1.0, m, mode)?;
            if approx.spectral_distance(&exact) <= eps {
                m_empirical = Some(m);
                break;
            }
        }
        rows.push(TightnessRow {
            epsilon: eps,
            m_theory: mt,
            m_empirical,
        });
    }
    Ok(TightnessTable { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsingBoundRow {
    pub n: usize,
    pub term_count: usize,
    pub tau: f64,
    pub bound: f64,
}

/// Output of [`ising_bound_curve`].
#[derive(Debug, Clone, PartialEq)]
pub struct IsingBoundTable {
    pub rows: Vec<IsingBoundRow>,
}

impl IsingBoundTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,L,tau,bound\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                row.term_count,
                sig17(row.tau),
                sig17(row.bound)
            ));
        }
        out
    }
}

/// The order-free exponential-count bound along the Ising chain family:
/// L = 2n-1 terms of unit norm evolved for time t = n, so τ = n.
pub fn ising_bound_curve(
    n_range: std::ops::RangeInclusive<usize>,
    eps: f64,
) -> Result<IsingBoundTable> {
    if *n_range.start() < 2 {
        return Err(Error::ChainTooShort(*n_range.start()));
    }
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::BadInput(format!("eps must be positive, got {eps}")));
    }
    let rows = n_range
        .map(|n| {
            let term_count = 2 * n - 1;
            let tau = n as f64;
            IsingBoundRow {
                n,
                term_count,
                tau,
                bound: nexp_bound_k_free(term_count, tau, eps),
            }
        })
        .collect();
    Ok(IsingBoundTable { rows })
}

fn mode_scalar(mode: EvolutionMode) -> Complex64 {
    match mode {
        EvolutionMode::Real => Complex64::new(1.0, 0.0),
        EvolutionMode::Imaginary => Complex64::new(0.0, -1.0),
    }
}
