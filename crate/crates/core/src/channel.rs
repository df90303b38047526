//! Pauli maps in eigenvalue and probability form, their action on qubit
//! states, Choi states, and the pointwise classification predicates.
//!
//! A trace-preserving Pauli map is fixed by three real eigenvalues
//! `λ1, λ2, λ3` (the eigenvalue on the identity is always 1). Nothing here
//! restricts the eigenvalues to the cube `[-1, 1]^3`; maps outside the
//! positive region are representable and simply classified as such.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack for closed inequalities (`≥ 0` holds if the value is `≥ -PREDICATE_TOL`).
pub const PREDICATE_TOL: f64 = 1e-12;
/// Eigenvalues with magnitude below this are treated as structural zeros.
pub const ZERO_SNAP: f64 = 1e-14;
/// A predicate is reported on its boundary when its defining quantity is
/// within this distance of equality.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Eigenvalues `(λ1, λ2, λ3)` of a trace-preserving Pauli map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliEigenvalues(pub [f64; 3]);

impl PauliEigenvalues {
    pub const IDENTITY: Self = Self([1.0, 1.0, 1.0]);

    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64) -> Self {
        Self([lambda1, lambda2, lambda3])
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn product(&self) -> f64 {
        self.0[0] * self.0[1] * self.0[2]
    }

    /// Eigenvalues with entries below [`ZERO_SNAP`] replaced by exact zeros.
    pub fn snapped(&self) -> Self {
        Self(self.0.map(|l| if l.abs() < ZERO_SNAP { 0.0 } else { l }))
    }

    fn is_finite(&self) -> bool {
        self.0.iter().all(|l| l.is_finite())
    }
}

impl Index<usize> for PauliEigenvalues {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl fmt::Display for PauliEigenvalues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Weights `(p0, p1, p2, p3)` of `Λ[X] = Σ pα σα X σα`. Entries may be
/// negative; they are all non-negative exactly when the map is CPTP.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliProbabilities(pub [f64; 4]);

impl PauliProbabilities {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(p: [f64; 4]) -> Result<Self> {
        let sum: f64 = p.iter().sum();
        if !sum.is_finite() || (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::NonUnitSum { sum });
        }
        Ok(Self(p))
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }
}

/// `λk = 2(p0 + pk) - 1`.
pub fn eigenvalues_from_probabilities(p: &PauliProbabilities) -> Result<PauliEigenvalues> {
    let p = PauliProbabilities::new(p.0)?.0;
    Ok(PauliEigenvalues([
        2.0 * (p[0] + p[1]) - 1.0,
        2.0 * (p[0] + p[2]) - 1.0,
        2.0 * (p[0] + p[3]) - 1.0,
    ]))
}

pub fn probabilities_from_eigenvalues(e: &PauliEigenvalues) -> PauliProbabilities {
    let [l1, l2, l3] = e.0;
    PauliProbabilities([
        (1.0 + l1 + l2 + l3) / 4.0,
        (1.0 + l1 - l2 - l3) / 4.0,
        (1.0 - l1 + l2 - l3) / 4.0,
        (1.0 - l1 - l2 + l3) / 4.0,
    ])
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `σ0 = I, σ1 = X, σ2 = Y, σ3 = Z`.
pub fn pauli_matrices() -> [Matrix2<Complex64>; 4] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        Matrix2::new(one, o, o, one),
        Matrix2::new(o, one, one, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(one, o, o, -one),
    ]
}

/// Applies the Pauli map to an arbitrary 2x2 operator via its Kraus-like sum.
fn pauli_sum(p: &PauliProbabilities, x: &Matrix2<Complex64>) -> Matrix2<Complex64> {
    pauli_matrices()
        .iter()
        .zip(p.0)
        .fold(Matrix2::zeros(), |acc, (s, w)| acc + s * x * s * c(w, 0.0))
}

/// A qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(Matrix2<Complex64>);

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const PSD_TOL: f64 = 1e-10;

    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        if (m - m.adjoint())
            .iter()
            .any(|z| z.norm() > Self::HERMITIAN_TOL)
        {
            return Err(Error::InvalidState("not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min_eig = hermitian_eigenvalues2(&m)[0];
        if min_eig < -Self::PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig}"
            )));
        }
        Ok(Self(m))
    }

    /// `ρ = (I + r·σ)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        Self::new(bloch_operator(r))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    /// `rk = Tr(ρ σk)`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let s = pauli_matrices();
        [1, 2, 3].map(|k| (self.0 * s[k]).trace().re)
    }
}

fn bloch_operator(r: [f64; 3]) -> Matrix2<Complex64> {
    let s = pauli_matrices();
    (s[0] + s[1] * c(r[0], 0.0) + s[2] * c(r[1], 0.0) + s[3] * c(r[2], 0.0)) * c(0.5, 0.0)
}

/// Ascending eigenvalues of a 2x2 Hermitian matrix, closed form.
fn hermitian_eigenvalues2(m: &Matrix2<Complex64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - rad, mean + rad]
}

/// Applies the map to a state. For maps outside the positive region the
/// returned operator can fail positivity; it is returned as computed.
pub fn apply_channel(e: &PauliEigenvalues, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let rho = DensityMatrix::new(rho.0)?;
    let p = probabilities_from_eigenvalues(e);
    Ok(DensityMatrix(pauli_sum(&p, &rho.0)))
}

/// The 4x4 Choi-Jamiołkowski state of a Pauli map.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix(Matrix4<Complex64>);

impl ChoiMatrix {
    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// Ascending spectrum from a numerical Hermitian eigensolver.
    pub fn spectrum(&self) -> [f64; 4] {
        let eig = SymmetricEigen::new(self.0).eigenvalues;
        let mut v = [eig[0], eig[1], eig[2], eig[3]];
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.0 - self.0.adjoint()).iter().all(|z| z.norm() <= tol)
    }
}

/// `ρ_Λ = ½ Σ_ij |i⟩⟨j| ⊗ Λ[|i⟩⟨j|]`.
pub fn choi_state(e: &PauliEigenvalues) -> ChoiMatrix {
    let p = probabilities_from_eigenvalues(e);
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut unit = Matrix2::zeros();
            unit[(i, j)] = c(1.0, 0.0);
            let block = pauli_sum(&p, &unit);
            for a in 0..2 {
                for b in 0..2 {
                    out[(2 * i + a, 2 * j + b)] = block[(a, b)] * c(0.5, 0.0);
                }
            }
        }
    }
    ChoiMatrix(out)
}

/// `|λk| ≤ 1` for all k.
pub fn is_positive_tp(e: &PauliEigenvalues) -> bool {
    e.0.iter().all(|l| l.abs() <= 1.0 + PREDICATE_TOL)
}

/// All four Pauli weights non-negative. On the positive region this is
/// `|1 ± λ3| ≥ |λ1 ± λ2|`.
pub fn is_cptp(e: &PauliEigenvalues) -> bool {
    probabilities_from_eigenvalues(e)
        .0
        .iter()
        .all(|&p| p >= -PREDICATE_TOL)
}

/// `Σ|λk| ≤ 1`, without the channel requirement.
pub fn satisfies_eb_inequality(e: &PauliEigenvalues) -> bool {
    e.0.iter().map(|l| l.abs()).sum::<f64>() <= 1.0 + PREDICATE_TOL
}

pub fn is_entanglement_breaking(e: &PauliEigenvalues) -> bool {
    satisfies_eb_inequality(e) && is_cptp(e)
}

/// All `λk ≥ 0`. Channels with a zero eigenvalue are included; they are
/// limits of time-local dynamics rather than finite-time images.
pub fn is_tlg_obtainable(e: &PauliEigenvalues) -> bool {
    e.0.iter().all(|&l| l >= -PREDICATE_TOL)
}

pub fn is_invertible(e: &PauliEigenvalues) -> bool {
    e.snapped().0.iter().all(|&l| l != 0.0)
}

fn require_channel(e: &PauliEigenvalues) -> Result<()> {
    if is_cptp(e) {
        Ok(())
    } else {
        Err(Error::NotAChannel(*e))
    }
}

/// `λ1λ2λ3 ≥ 0`.
pub fn is_p_divisible(e: &PauliEigenvalues) -> Result<bool> {
    require_channel(e)?;
    Ok(e.snapped().product() >= 0.0)
}

/// Invertible channels: `0 < λ1λ2λ3 ≤ λk²` for every k. Non-invertible
/// channels: exactly one eigenvalue is non-zero.
pub fn is_cp_divisible(e: &PauliEigenvalues) -> Result<bool> {
    require_channel(e)?;
    let s = e.snapped();
    if is_invertible(&s) {
        let prod = s.product();
        Ok(prod > 0.0 && s.0.iter().all(|l| prod <= l * l + PREDICATE_TOL))
    } else {
        Ok(s.0.iter().filter(|&&l| l != 0.0).count() == 1)
    }
}

/// Which reading of L-divisibility to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LdivMode {
    /// `λjλk ≤ λm` for every assignment of distinct j, k, m.
    Literal,
    /// Same membership as CP-divisibility.
    CpdivEquivalent,
}

impl LdivMode {
    pub fn name(self) -> &'static str {
        match self {
            LdivMode::Literal => "literal",
            LdivMode::CpdivEquivalent => "cpdiv",
        }
    }
}

impl fmt::Display for LdivMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LdivMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(LdivMode::Literal),
            "cpdiv" | "cpdiv_equivalent" | "cpdiv-equivalent" => Ok(LdivMode::CpdivEquivalent),
            other => Err(Error::InvalidArgument(format!(
                "unknown L-divisibility mode '{other}' (expected literal or cpdiv)"
            ))),
        }
    }
}

fn l_div_literal_margins(e: &PauliEigenvalues) -> [f64; 3] {
    let [l1, l2, l3] = e.0;
    [l3 - l1 * l2, l1 - l2 * l3, l2 - l3 * l1]
}

pub fn is_l_divisible(e: &PauliEigenvalues, mode: LdivMode) -> Result<bool> {
    require_channel(e)?;
    match mode {
        LdivMode::Literal => Ok(l_div_literal_margins(e)
            .iter()
            .all(|&m| m >= -PREDICATE_TOL)),
        LdivMode::CpdivEquivalent => is_cp_divisible(e),
    }
}

/// Predicate names used in [`ClassificationReport::boundary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    PositiveTp,
    Cptp,
    EntanglementBreaking,
    TlgObtainable,
    Invertible,
    PDivisible,
    CpDivisible,
    LDivisible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub eigenvalues: PauliEigenvalues,
    pub probabilities: PauliProbabilities,
    pub positive_tp: bool,
    pub cptp: bool,
    pub entanglement_breaking: bool,
    pub tlg_obtainable: bool,
    pub invertible: bool,
    pub p_divisible: bool,
    pub cp_divisible: bool,
    pub l_divisible_literal: bool,
    pub l_divisible_cpdiv_mode: bool,
    /// Set when the divisibility flags are false because the map is not a channel.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divisibility_note: Option<String>,
    pub boundary: BTreeSet<Predicate>,
}

pub fn classify(e: &PauliEigenvalues) -> ClassificationReport {
    let cptp = is_cptp(e);
    let (p_div, cp_div, l_lit, l_cp, note) = if cptp {
        (
            is_p_divisible(e).unwrap_or(false),
            is_cp_divisible(e).unwrap_or(false),
            is_l_divisible(e, LdivMode::Literal).unwrap_or(false),
            is_l_divisible(e, LdivMode::CpdivEquivalent).unwrap_or(false),
            None,
        )
    } else {
        (
            false,
            false,
            false,
            false,
            Some("not a channel: divisibility is defined for CPTP maps only".to_string()),
        )
    };
    ClassificationReport {
        eigenvalues: *e,
        probabilities: probabilities_from_eigenvalues(e),
        positive_tp: is_positive_tp(e),
        cptp,
        entanglement_breaking: is_entanglement_breaking(e),
        tlg_obtainable: is_tlg_obtainable(e),
        invertible: is_invertible(e),
        p_divisible: p_div,
        cp_divisible: cp_div,
        l_divisible_literal: l_lit,
        l_divisible_cpdiv_mode: l_cp,
        divisibility_note: note,
        boundary: boundary_set(e),
    }
}

fn near_zero(x: f64) -> bool {
    x.abs() <= BOUNDARY_TOL
}

fn boundary_set(e: &PauliEigenvalues) -> BTreeSet<Predicate> {
    let l = e.0;
    let mut out = BTreeSet::new();
    if near_zero(l.iter().fold(0.0f64, |m, x| m.max(x.abs())) - 1.0) {
        out.insert(Predicate::PositiveTp);
    }
    let p = probabilities_from_eigenvalues(e).0;
    if near_zero(p.iter().copied().fold(f64::INFINITY, f64::min)) {
        out.insert(Predicate::Cptp);
    }
    if near_zero(l.iter().map(|x| x.abs()).sum::<f64>() - 1.0) {
        out.insert(Predicate::EntanglementBreaking);
    }
    let min_l = l.iter().copied().fold(f64::INFINITY, f64::min);
    if near_zero(min_l) {
        out.insert(Predicate::TlgObtainable);
    }
    if l.iter().any(|x| near_zero(*x)) {
        out.insert(Predicate::Invertible);
    }
    let prod = e.product();
    if near_zero(prod) {
        out.insert(Predicate::PDivisible);
    }
    if near_zero(prod) || l.iter().any(|x| near_zero(x * x - prod)) {
        out.insert(Predicate::CpDivisible);
    }
    if l_div_literal_margins(e).iter().any(|m| near_zero(*m)) {
        out.insert(Predicate::LDivisible);
    }
    out
}

/// Hilbert-Schmidt distance between the Choi states of two Pauli maps,
/// `½‖a − b‖₂` in eigenvalue coordinates.
pub fn hs_distance(a: &PauliEigenvalues, b: &PauliEigenvalues) -> f64 {
    0.5 * a
        .0
        .iter()
        .zip(b.0)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Validates finiteness, for inputs arriving from untrusted sources.
pub fn checked_eigenvalues(l: [f64; 3]) -> Result<PauliEigenvalues> {
    let e = PauliEigenvalues(l);
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::InvalidArgument(format!(
            "non-finite eigenvalues {e}"
        )))
    }
}
