//! Pauli dynamical maps generated by time-local GKSL generators
//! `L(t)[ρ] = ½ Σ γk(t) (σk ρ σk − ρ)`.
//!
//! Their eigenvalues are `λk(t) = exp[−Σ_{j≠k} ∫₀ᵗ γj]`, hence always
//! strictly positive. Channels with a vanishing eigenvalue belong to the
//! closure of the reachable set but are never reached at finite time.

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::channel::{classify, ClassificationReport, PauliEigenvalues};
use crate::error::{Error, Result};
use crate::quadrature;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Closed-form rate callback.
pub type RateFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// One decoherence rate as a function of time. Negative values are allowed.
#[derive(Clone)]
pub enum Rate {
    Constant(f64),
    /// `values[i]` on `[breakpoints[i], breakpoints[i + 1])`; the last value
    /// holds from the last breakpoint on. `breakpoints[0]` must be 0.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Function(RateFn),
}

impl fmt::Debug for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Rate::PiecewiseConstant {
                breakpoints,
                values,
            } => f
                .debug_struct("PiecewiseConstant")
                .field("breakpoints", breakpoints)
                .field("values", values)
                .finish(),
            Rate::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl Rate {
    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Rate::Function(Arc::new(f))
    }

    pub fn piecewise(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let ok = !breakpoints.is_empty()
            && breakpoints.len() == values.len()
            && breakpoints[0] == 0.0
            && breakpoints.windows(2).all(|w| w[0] < w[1])
            && breakpoints.iter().chain(&values).all(|v| v.is_finite());
        if !ok {
            return Err(Error::InvalidArgument(
                "piecewise rate needs matching, finite breakpoints and values, starting at 0 and strictly increasing".into(),
            ));
        }
        Ok(Rate::PiecewiseConstant {
            breakpoints,
            values,
        })
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Rate::Constant(c) => *c,
            Rate::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let i = breakpoints.partition_point(|&b| b <= t).saturating_sub(1);
                values[i]
            }
            Rate::Function(f) => f(t),
        }
    }

    /// `∫_a^b γ`. Constant and piecewise-constant rates integrate exactly.
    pub fn integral(&self, a: f64, b: f64, tol: f64) -> Result<f64> {
        match self {
            Rate::Constant(c) => Ok(c * (b - a)),
            Rate::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                let mut total = 0.0;
                for (i, v) in values.iter().enumerate() {
                    let lo = breakpoints[i].max(a);
                    let hi = breakpoints
                        .get(i + 1)
                        .copied()
                        .unwrap_or(f64::INFINITY)
                        .min(b);
                    if hi > lo {
                        total += v * (hi - lo);
                    }
                }
                Ok(total)
            }
            Rate::Function(f) => quadrature::integrate(|t| f(t), a, b, tol),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RateSpec {
    pub rates: [Rate; 3],
    pub t_max: f64,
}

impl RateSpec {
    pub fn new(rates: [Rate; 3], t_max: f64) -> Result<Self> {
        if !(t_max.is_finite() && t_max >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "t_max must be finite and non-negative, got {t_max}"
            )));
        }
        Ok(Self { rates, t_max })
    }

    pub fn constant(gamma: [f64; 3], t_max: f64) -> Result<Self> {
        Self::new(gamma.map(Rate::Constant), t_max)
    }
}

/// `λk = exp[−(Γj + Γm)]` for integrated rates `Γ`.
pub fn eigenvalues_from_integrated_rates(big_gamma: [f64; 3]) -> PauliEigenvalues {
    let total: f64 = big_gamma.iter().sum();
    PauliEigenvalues(big_gamma.map(|g| (-(total - g)).exp()))
}

/// Markovian semigroup with constant non-negative rates.
pub fn semigroup_eigenvalues(gamma: [f64; 3], t: f64) -> Result<PauliEigenvalues> {
    if let Some(&g) = gamma.iter().find(|g| g.is_nan() || **g < 0.0) {
        return Err(Error::NegativeRate(g));
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(eigenvalues_from_integrated_rates(gamma.map(|g| g * t)))
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub eigenvalues: PauliEigenvalues,
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    pub tol: f64,
}

pub const TRAJECTORY_CSV_HEADER: &str = "t,lambda1,lambda2,lambda3,cptp,eb,pdiv,cpdiv,ldiv";

impl Trajectory {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRAJECTORY_CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            let [l1, l2, l3] = p.eigenvalues.0;
            let r = &p.report;
            let _ = writeln!(
                out,
                "{},{l1},{l2},{l3},{},{},{},{},{}",
                p.t,
                r.cptp,
                r.entanglement_breaking,
                r.p_divisible,
                r.cp_divisible,
                r.l_divisible_literal
            );
        }
        out
    }
}

/// Evenly spaced grid `0, t_max/steps, …, t_max`.
pub fn uniform_grid(t_max: f64, steps: usize) -> Vec<f64> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|i| {
            if i == steps {
                t_max
            } else {
                t_max * i as f64 / steps as f64
            }
        })
        .collect()
}

/// Eigenvalue path of the dynamical map on `grid`, classified at every
/// instant. The integral up to the last grid point is accurate to `tol`
/// for each rate; the budget is split across grid intervals in proportion
/// to their length. A leading `t = 0` is inserted when missing.
pub fn trajectory(rates: &RateSpec, grid: &[f64], tol: f64) -> Result<Trajectory> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if grid
        .iter()
        .any(|t| !t.is_finite() || *t < 0.0 || *t > rates.t_max)
    {
        return Err(Error::InvalidArgument(format!(
            "grid points must lie in [0, {}]",
            rates.t_max
        )));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "grid must be strictly increasing".into(),
        ));
    }
    let mut times = Vec::with_capacity(grid.len() + 1);
    if grid.first() != Some(&0.0) {
        times.push(0.0);
    }
    times.extend_from_slice(grid);
    let span = *times.last().unwrap();

    let mut integrated = [0.0f64; 3];
    let mut points = Vec::with_capacity(times.len());
    let mut prev = 0.0;
    for &t in &times {
        if t > prev {
            let seg_tol = tol * (t - prev) / span;
            for (acc, rate) in integrated.iter_mut().zip(&rates.rates) {
                *acc += rate.integral(prev, t, seg_tol)?;
            }
        }
        prev = t;
        let eigenvalues = eigenvalues_from_integrated_rates(integrated);
        points.push(TrajectoryPoint {
            t,
            eigenvalues,
            report: classify(&eigenvalues),
        });
    }
    Ok(Trajectory { points, tol })
}

/// Integrated rates `Γ` with `exp[−(Γj + Γm)] = λk`, i.e.
/// `Γk = ½(ln λk − ln λj − ln λm)`. All `Γk ≥ 0` exactly when the target is
/// on a Markovian semigroup.
pub fn tlg_rates_for_target(e: &PauliEigenvalues) -> Result<[f64; 3]> {
    if e.0.iter().any(|&l| l.is_nan() || l <= 0.0) {
        return Err(Error::NotTlgObtainable(*e));
    }
    let logs = e.0.map(f64::ln);
    let total: f64 = logs.iter().sum();
    Ok(logs.map(|lk| 0.5 * (lk - (total - lk))))
}
