//! Hilbert-Schmidt volumes of family regions.
//!
//! Two independent engines:
//!
//! * the exact engine measures the symbolic cells of
//!   [`region_constraints`](crate::region::region_constraints): interval
//!   unions in one dimension, clipped polygons (plus closed-form parabolic
//!   pieces) in two, half-space polytopes in three;
//! * the Monte Carlo engine samples the parameter box uniformly and tests
//!   the channel predicates directly, never touching the constraint sets.
//!
//! Volumes are `metric_scale(family) × Lebesgue measure`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{LdivMode, PauliEigenvalues};
use crate::error::{Error, Result};
use crate::family::{metric_scale, parameter_box, Family};
use crate::geometry::{
    clip_to_constraints, interval_of, parabolic_area, polytope_volume, shoelace_area, union_length,
    HalfSpace,
};
use crate::region::{region_constraints, region_contains, ConstraintSet, RegionId};
use crate::sampling::BoxSampler;

/// Samples per parallel batch.
pub const DEFAULT_BATCH: u64 = 1 << 14;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "mc" | "monte_carlo" | "monte-carlo" => Ok(Method::MonteCarlo),
            other => Err(Error::InvalidArgument(format!(
                "unknown method '{other}' (expected exact or mc)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub family: Family,
    pub region: RegionId,
    pub mode: LdivMode,
    pub method: Method,
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioResult {
    pub family: Family,
    pub numerator: RegionId,
    pub denominator: RegionId,
    pub mode: LdivMode,
    pub method: Method,
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Lebesgue measure of a constraint set in parameter space.
pub fn constraint_set_measure(f: Family, r: RegionId, set: &ConstraintSet) -> Result<f64> {
    let domain = parameter_box(f);
    match set.dim {
        1 => {
            let intervals: Vec<_> = set
                .cells
                .iter()
                .filter_map(|c| interval_of(&c.affine))
                .collect();
            Ok(union_length(&intervals))
        }
        2 => Ok(set
            .cells
            .iter()
            .map(|c| {
                let poly = clip_to_constraints(
                    [domain.lower[0], domain.lower[1]],
                    [domain.upper[0], domain.upper[1]],
                    &c.affine,
                );
                match c.parabolic {
                    Some(p) => parabolic_area(&poly, p),
                    None => shoelace_area(&poly),
                }
            })
            .sum()),
        3 => set
            .cells
            .iter()
            .map(|c| {
                if c.parabolic.is_some() {
                    return Err(Error::UnsupportedRegion {
                        family: f,
                        region: r,
                    });
                }
                let hs: Vec<HalfSpace> = c
                    .affine
                    .iter()
                    .map(|a| HalfSpace {
                        normal: [a.coeffs[0], a.coeffs[1], a.coeffs[2]],
                        offset: a.constant,
                    })
                    .collect();
                Ok(polytope_volume(&hs))
            })
            .sum(),
        _ => unreachable!("families have dimension 1..=3"),
    }
}

/// Lebesgue measure of the region in parameter space.
pub fn exact_measure(f: Family, r: RegionId, mode: LdivMode) -> Result<f64> {
    let set = region_constraints(f, r, mode)?;
    constraint_set_measure(f, r, &set)
}

pub fn exact_supported(f: Family, r: RegionId, mode: LdivMode) -> bool {
    region_constraints(f, r, mode).is_ok()
}

pub fn exact_volume(f: Family, r: RegionId, mode: LdivMode) -> Result<VolumeEstimate> {
    exact_volume_scaled(f, r, mode, metric_scale(f))
}

/// [`exact_volume`] with the metric density replaced by `scale`.
pub fn exact_volume_scaled(
    f: Family,
    r: RegionId,
    mode: LdivMode,
    scale: f64,
) -> Result<VolumeEstimate> {
    let measure = exact_measure(f, r, mode)?;
    Ok(VolumeEstimate {
        family: f,
        region: r,
        mode,
        method: Method::Exact,
        value: scale * measure,
        stderr: 0.0,
        samples: 0,
        seed: 0,
    })
}

/// Counts, for each of `k` indicators, how many of the `n` samples satisfy
/// it. Batches run in parallel; counts are integers, so the result does not
/// depend on scheduling or on `batch`.
pub fn mc_indicator_counts<F>(
    f: Family,
    n: u64,
    seed: u64,
    k: usize,
    batch: u64,
    indicator: F,
) -> Vec<u64>
where
    F: Fn(&PauliEigenvalues, &mut [bool]) + Sync,
{
    let emb = f.embedding();
    let sampler = BoxSampler::new(seed, &parameter_box(f));
    let batch = batch.max(1);
    let batches = n.div_ceil(batch);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let start = b * batch;
            let count = batch.min(n - start);
            let mut counts = vec![0u64; k];
            let mut hits = vec![false; k];
            sampler.for_each_in(start, count, |x| {
                indicator(&emb.apply(x), &mut hits);
                for (c, h) in counts.iter_mut().zip(&hits) {
                    *c += *h as u64;
                }
            });
            counts
        })
        .reduce(
            || vec![0u64; k],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn binomial_estimate(scale: f64, box_volume: f64, hits: u64, n: u64) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    let value = scale * box_volume * p;
    let stderr = scale * box_volume * (p * (1.0 - p) / n as f64).sqrt();
    (value, stderr)
}

/// Monte Carlo volumes of several regions from one common sample stream.
pub fn mc_volumes(
    f: Family,
    regions: &[RegionId],
    n: u64,
    seed: u64,
    mode: LdivMode,
) -> Result<Vec<VolumeEstimate>> {
    mc_volumes_scaled(f, regions, n, seed, mode, metric_scale(f), DEFAULT_BATCH)
}

pub fn mc_volumes_scaled(
    f: Family,
    regions: &[RegionId],
    n: u64,
    seed: u64,
    mode: LdivMode,
    scale: f64,
    batch: u64,
) -> Result<Vec<VolumeEstimate>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    let counts = mc_indicator_counts(f, n, seed, regions.len(), batch, |e, hits| {
        for (h, r) in hits.iter_mut().zip(regions) {
            *h = region_contains(*r, e, mode);
        }
    });
    let box_volume = parameter_box(f).volume();
    Ok(regions
        .iter()
        .zip(counts)
        .map(|(r, hits)| {
            let (value, stderr) = binomial_estimate(scale, box_volume, hits, n);
            VolumeEstimate {
                family: f,
                region: *r,
                mode,
                method: Method::MonteCarlo,
                value,
                stderr,
                samples: n,
                seed,
            }
        })
        .collect())
}

pub fn mc_volume(
    f: Family,
    r: RegionId,
    n: u64,
    seed: u64,
    mode: LdivMode,
) -> Result<VolumeEstimate> {
    Ok(mc_volumes(f, &[r], n, seed, mode)?.remove(0))
}

/// `V(numerator) / V(denominator)`. The Monte Carlo path evaluates both
/// indicators on the same samples and propagates the standard error by the
/// delta method, including the covariance of the paired indicators.
pub fn volume_ratio(
    f: Family,
    numerator: RegionId,
    denominator: RegionId,
    method: Method,
    n: u64,
    seed: u64,
    mode: LdivMode,
) -> Result<RatioResult> {
    let (value, stderr, samples, seed) = match method {
        Method::Exact => {
            let num = exact_measure(f, numerator, mode)?;
            let den = exact_measure(f, denominator, mode)?;
            if den <= 0.0 {
                return Err(Error::ZeroDenominator(denominator));
            }
            (num / den, 0.0, 0, 0)
        }
        Method::MonteCarlo => {
            if n == 0 {
                return Err(Error::InvalidArgument(
                    "sample count must be at least 1".into(),
                ));
            }
            let c = mc_indicator_counts(f, n, seed, 3, DEFAULT_BATCH, |e, hits| {
                hits[0] = region_contains(numerator, e, mode);
                hits[1] = region_contains(denominator, e, mode);
                hits[2] = hits[0] && hits[1];
            });
            if c[1] == 0 {
                return Err(Error::ZeroDenominator(denominator));
            }
            let nf = n as f64;
            let (pa, pb, pab) = (c[0] as f64 / nf, c[1] as f64 / nf, c[2] as f64 / nf);
            let ratio = pa / pb;
            let var = (pa * (1.0 - pa) / (pb * pb) + pa * pa * pb * (1.0 - pb) / pb.powi(4)
                - 2.0 * pa * (pab - pa * pb) / pb.powi(3))
                / nf;
            (ratio, var.max(0.0).sqrt(), n, seed)
        }
    };
    Ok(RatioResult {
        family: f,
        numerator,
        denominator,
        mode,
        method,
        value,
        stderr,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn exact(f: Family, r: RegionId) -> f64 {
        exact_volume(f, r, LdivMode::Literal).unwrap().value
    }

    #[test]
    fn exact_examples() {
        let s2 = 2f64.sqrt();
        assert!((exact(Family::PairZero, RegionId::Cpt) - s2 / 2.0).abs() < TOL);
        let v = exact_volume(Family::DegeneratePair, RegionId::Cpdiv, LdivMode::Literal).unwrap();
        assert!((v.value - s2 / 3.0).abs() < TOL);
        assert_eq!(v.stderr, 0.0);
        assert!((exact(Family::General, RegionId::Cpt) - 1.0 / 3.0).abs() < TOL);
    }

    #[test]
    fn ratio_examples() {
        let r = |f, a, b| {
            volume_ratio(f, a, b, Method::Exact, 0, 0, LdivMode::Literal)
                .unwrap()
                .value
        };
        assert!(
            (r(Family::DegeneratePair, RegionId::CpdivTlg, RegionId::CptTlg) - 8.0 / 9.0).abs()
                < TOL
        );
        assert!((r(Family::TwoDistinctZero, RegionId::CptTlg, RegionId::Cpt) - 0.25).abs() < TOL);
        assert!((r(Family::General, RegionId::Ebc, RegionId::Cpt) - 0.5).abs() < TOL);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let err = volume_ratio(
            Family::PairZero,
            RegionId::Cpt,
            RegionId::Cpdiv,
            Method::Exact,
            0,
            0,
            LdivMode::Literal,
        )
        .unwrap_err();
        assert_eq!(err, Error::ZeroDenominator(RegionId::Cpdiv));
    }

    #[test]
    fn axial_pt_accepts_every_sample() {
        let v = mc_volume(Family::Axial, RegionId::Pt, 1000, 3, LdivMode::Literal).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.stderr, 0.0);
        assert_eq!(v.samples, 1000);
    }

    #[test]
    fn mc_is_independent_of_batching() {
        let run = |batch| {
            mc_volumes_scaled(
                Family::DegeneratePair,
                &[RegionId::Cpdiv, RegionId::Ebc],
                50_001,
                11,
                LdivMode::Literal,
                1.0,
                batch,
            )
            .unwrap()
        };
        let a = run(1 << 14);
        for batch in [1, 7, 1000, 50_001, 1 << 20] {
            let b = run(batch);
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.value.to_bits(), y.value.to_bits());
                assert_eq!(x.stderr.to_bits(), y.stderr.to_bits());
            }
        }
    }

    #[test]
    fn general_cpdiv_is_mc_only() {
        assert!(!exact_supported(
            Family::General,
            RegionId::Cpdiv,
            LdivMode::Literal
        ));
        let v = mc_volume(
            Family::General,
            RegionId::Cpdiv,
            20_000,
            1,
            LdivMode::Literal,
        )
        .unwrap();
        assert!(v.value > 0.0 && v.value < exact(Family::General, RegionId::Pdiv));
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(mc_volume(Family::Axial, RegionId::Pt, 0, 0, LdivMode::Literal).is_err());
    }
}
