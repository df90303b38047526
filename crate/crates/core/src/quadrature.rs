//! Adaptive Simpson quadrature with an absolute tolerance and an evaluation
//! budget.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_EVALS: usize = 2_000_000;
const MAX_DEPTH: u32 = 50;
const INITIAL_PANELS: usize = 8;

struct Budget {
    evals: usize,
    max: usize,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    budget: &mut Budget,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    budget.evals += 2;
    if budget.evals > budget.max {
        return None;
    }
    let (flm, frm) = (f(lm), f(rm));
    if !flm.is_finite() || !frm.is_finite() {
        return None;
    }
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget)?;
    let r = refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget)?;
    Some(l + r)
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_with_budget(f, a, b, tol, DEFAULT_MAX_EVALS)
}

pub fn integrate_with_budget<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_evals: usize,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fail = Error::QuadratureFailure { a, b, tol };
    if tol.is_nan() || tol <= 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(fail);
    }
    let mut budget = Budget {
        evals: 0,
        max: max_evals,
    };
    let h = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for i in 0..INITIAL_PANELS {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + h };
        let mid = 0.5 * (lo + hi);
        budget.evals += 3;
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        if !(flo.is_finite() && fmid.is_finite() && fhi.is_finite()) {
            return Err(fail);
        }
        let whole = simpson(lo, hi, flo, fmid, fhi);
        total += refine(
            &f,
            lo,
            hi,
            flo,
            fmid,
            fhi,
            whole,
            panel_tol,
            MAX_DEPTH,
            &mut budget,
        )
        .ok_or_else(|| fail.clone())?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 0.0).abs() < 1e-13);
    }

    #[test]
    fn tanh_matches_log_cosh() {
        for t in [0.1, 1.0, 3.0, 10.0] {
            let v = integrate(f64::tanh, 0.0, t, 1e-10).unwrap();
            assert!((v - t.cosh().ln()).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn reversed_limits_change_sign() {
        let a = integrate(f64::exp, 0.0, 1.0, 1e-12).unwrap();
        let b = integrate(f64::exp, 1.0, 0.0, 1e-12).unwrap();
        assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err =
            integrate_with_budget(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, 1e-14, 1000).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure { .. }));
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-8).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
