//! Geometry of qubit Pauli maps.
//!
//! * [`channel`]: eigenvalue/probability forms, Choi states and the
//!   pointwise predicates (positivity, complete positivity, entanglement
//!   breaking, time-local reachability, P/CP/L-divisibility).
//! * [`family`] and [`region`]: one-, two- and three-parameter families and
//!   their regions as symbolic constraint sets.
//! * [`volume`]: exact and Monte Carlo Hilbert-Schmidt volumes and ratios.
//! * [`charts`] and [`cross_section`]: tabulated ratios and region outlines.
//! * [`dynamics`]: semigroups, time-local trajectories and rate recovery.

pub mod channel;
pub mod charts;
pub mod cross_section;
pub mod dynamics;
pub mod error;
pub mod family;
pub mod geometry;
pub mod quadrature;
pub mod region;
pub mod sampling;
pub mod volume;

pub use channel::{
    apply_channel, choi_state, classify, eigenvalues_from_probabilities, hs_distance,
    is_cp_divisible, is_cptp, is_entanglement_breaking, is_invertible, is_l_divisible,
    is_p_divisible, is_positive_tp, is_tlg_obtainable, probabilities_from_eigenvalues, ChoiMatrix,
    ClassificationReport, DensityMatrix, LdivMode, PauliEigenvalues, PauliProbabilities,
};
pub use charts::{chart_csv, chart_data, ChartRow, Status};
pub use cross_section::{cross_section, CrossSection};
pub use dynamics::{
    semigroup_eigenvalues, tlg_rates_for_target, trajectory, Rate, RateSpec, Trajectory,
};
pub use error::{Error, Result};
pub use family::{embed, metric_scale, parameter_box, Family, FamilyParams};
pub use region::{region_constraints, region_contains, ConstraintSet, RegionId};
pub use volume::{exact_volume, mc_volume, volume_ratio, Method, RatioResult, VolumeEstimate};
