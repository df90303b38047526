//! Symbolic regions of a family's parameter space.
//!
//! Every region is a finite union of cells. A cell is a conjunction of affine
//! inequalities `a·x + b ≥ 0` and at most one parabolic inequality
//! `x_j ≥ x_i²`. Absolute values and sign-dependent products are resolved into
//! orthant cells up front, so cells only overlap on null sets. Cells may be
//! lower dimensional; they carry no volume but keep pointwise membership
//! faithful on the non-invertible slices.
//!
//! Affine regions (PT, CPT, EBC, TLG, P-div) are generated by pulling the
//! eigenvalue-space inequalities back through the family embedding. The
//! CP- and L-divisibility cells are written out per family because their
//! defining inequalities are not affine in eigenvalue space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{
    is_cp_divisible, is_cptp, is_entanglement_breaking, is_l_divisible, is_p_divisible,
    is_positive_tp, is_tlg_obtainable, LdivMode, PauliEigenvalues,
};
use crate::error::{Error, Result};
use crate::family::{parameter_box, Embedding, Family};

/// Membership slack used when testing points against cells.
pub const CELL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionId {
    #[serde(rename = "pt")]
    Pt,
    #[serde(rename = "cpt")]
    Cpt,
    #[serde(rename = "ebc")]
    Ebc,
    #[serde(rename = "tlg")]
    Tlg,
    #[serde(rename = "pt-tlg")]
    PtTlg,
    #[serde(rename = "cpt-tlg")]
    CptTlg,
    #[serde(rename = "ebc-tlg")]
    EbcTlg,
    #[serde(rename = "pdiv")]
    Pdiv,
    #[serde(rename = "cpdiv")]
    Cpdiv,
    #[serde(rename = "ldiv")]
    Ldiv,
    #[serde(rename = "pdiv-tlg")]
    PdivTlg,
    #[serde(rename = "cpdiv-tlg")]
    CpdivTlg,
    #[serde(rename = "ldiv-tlg")]
    LdivTlg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    Pt,
    Cpt,
    Ebc,
    Tlg,
    Pdiv,
    Cpdiv,
    Ldiv,
}

impl RegionId {
    pub const ALL: [RegionId; 13] = [
        RegionId::Pt,
        RegionId::Cpt,
        RegionId::Ebc,
        RegionId::Tlg,
        RegionId::PtTlg,
        RegionId::CptTlg,
        RegionId::EbcTlg,
        RegionId::Pdiv,
        RegionId::Cpdiv,
        RegionId::Ldiv,
        RegionId::PdivTlg,
        RegionId::CpdivTlg,
        RegionId::LdivTlg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionId::Pt => "pt",
            RegionId::Cpt => "cpt",
            RegionId::Ebc => "ebc",
            RegionId::Tlg => "tlg",
            RegionId::PtTlg => "pt-tlg",
            RegionId::CptTlg => "cpt-tlg",
            RegionId::EbcTlg => "ebc-tlg",
            RegionId::Pdiv => "pdiv",
            RegionId::Cpdiv => "cpdiv",
            RegionId::Ldiv => "ldiv",
            RegionId::PdivTlg => "pdiv-tlg",
            RegionId::CpdivTlg => "cpdiv-tlg",
            RegionId::LdivTlg => "ldiv-tlg",
        }
    }

    fn split(self) -> (Base, bool) {
        match self {
            RegionId::Pt => (Base::Pt, false),
            RegionId::Cpt => (Base::Cpt, false),
            RegionId::Ebc => (Base::Ebc, false),
            RegionId::Tlg => (Base::Tlg, false),
            RegionId::PtTlg => (Base::Pt, true),
            RegionId::CptTlg => (Base::Cpt, true),
            RegionId::EbcTlg => (Base::Ebc, true),
            RegionId::Pdiv => (Base::Pdiv, false),
            RegionId::Cpdiv => (Base::Cpdiv, false),
            RegionId::Ldiv => (Base::Ldiv, false),
            RegionId::PdivTlg => (Base::Pdiv, true),
            RegionId::CpdivTlg => (Base::Cpdiv, true),
            RegionId::LdivTlg => (Base::Ldiv, true),
        }
    }

    /// True for regions whose membership depends on [`LdivMode`].
    pub fn depends_on_mode(self) -> bool {
        matches!(self, RegionId::Ldiv | RegionId::LdivTlg)
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = RegionId::ALL.iter().map(|r| r.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown region '{s}' (expected one of: {})",
                    names.join(", ")
                ))
            })
    }
}

/// Pointwise membership of a map in a region, straight from the channel
/// predicates. `Tlg` is taken inside the positive region.
pub fn region_contains(r: RegionId, e: &PauliEigenvalues, mode: LdivMode) -> bool {
    let (base, tlg) = r.split();
    let inside = match base {
        Base::Pt => is_positive_tp(e),
        Base::Cpt => is_cptp(e),
        Base::Ebc => is_entanglement_breaking(e),
        Base::Tlg => is_positive_tp(e) && is_tlg_obtainable(e),
        Base::Pdiv => is_p_divisible(e).unwrap_or(false),
        Base::Cpdiv => is_cp_divisible(e).unwrap_or(false),
        Base::Ldiv => is_l_divisible(e, mode).unwrap_or(false),
    };
    inside && (!tlg || is_tlg_obtainable(e))
}

/// `coeffs·x + constant ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineConstraint {
    pub coeffs: Vec<f64>,
    pub constant: f64,
}

impl AffineConstraint {
    pub fn new(coeffs: impl Into<Vec<f64>>, constant: f64) -> Self {
        Self {
            coeffs: coeffs.into(),
            constant,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + self.constant
    }
}

/// `x[bound] ≥ x[var]²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parabolic {
    pub var: usize,
    pub bound: usize,
}

impl Parabolic {
    pub fn eval(&self, x: &[f64]) -> f64 {
        x[self.bound] - x[self.var] * x[self.var]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub affine: Vec<AffineConstraint>,
    pub parabolic: Option<Parabolic>,
}

impl Cell {
    pub fn contains(&self, x: &[f64]) -> bool {
        self.affine.iter().all(|c| c.eval(x) >= -CELL_TOL)
            && self.parabolic.is_none_or(|p| p.eval(x) >= -CELL_TOL)
    }

    fn has_tight_constraint(&self, x: &[f64], tol: f64) -> bool {
        self.affine.iter().any(|c| c.eval(x).abs() <= tol)
            || self.parabolic.is_some_and(|p| p.eval(x).abs() <= tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub dim: usize,
    pub cells: Vec<Cell>,
}

impl ConstraintSet {
    pub fn contains(&self, x: &[f64]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    /// True if `x` makes some constraint of some cell hold with equality.
    /// Closed cells and strict predicates can only disagree at such points.
    pub fn on_boundary(&self, x: &[f64], tol: f64) -> bool {
        self.cells.iter().any(|c| c.has_tight_constraint(x, tol))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// `a·λ + b ≥ 0` in eigenvalue space.
#[derive(Debug, Clone, Copy)]
struct LinearForm {
    a: [f64; 3],
    b: f64,
}

enum Pulled {
    Constraint(AffineConstraint),
    AlwaysTrue,
    AlwaysFalse,
}

fn pull_back(form: &LinearForm, emb: &Embedding) -> Pulled {
    let coeffs: Vec<f64> = (0..emb.dim)
        .map(|i| (0..3).map(|k| form.a[k] * emb.jacobian[k][i]).sum())
        .collect();
    let constant = form.b + (0..3).map(|k| form.a[k] * emb.offset[k]).sum::<f64>();
    if coeffs.iter().all(|&c| c == 0.0) {
        if constant >= 0.0 {
            Pulled::AlwaysTrue
        } else {
            Pulled::AlwaysFalse
        }
    } else {
        Pulled::Constraint(AffineConstraint { coeffs, constant })
    }
}

fn unit(k: usize, s: f64) -> [f64; 3] {
    let mut a = [0.0; 3];
    a[k] = s;
    a
}

fn pt_forms() -> Vec<LinearForm> {
    (0..3)
        .flat_map(|k| {
            [1.0, -1.0].map(|s| LinearForm {
                a: unit(k, s),
                b: 1.0,
            })
        })
        .collect()
}

fn cpt_forms() -> Vec<LinearForm> {
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
    .into_iter()
    .map(|a| LinearForm { a, b: 1.0 })
    .collect()
}

fn tlg_forms() -> Vec<LinearForm> {
    (0..3)
        .map(|k| LinearForm {
            a: unit(k, 1.0),
            b: 0.0,
        })
        .collect()
}

fn box_constraints(f: Family) -> Vec<AffineConstraint> {
    let b = parameter_box(f);
    let d = b.dim();
    let mut out = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut lo = vec![0.0; d];
        lo[i] = 1.0;
        out.push(AffineConstraint::new(lo, -b.lower[i]));
        let mut hi = vec![0.0; d];
        hi[i] = -1.0;
        out.push(AffineConstraint::new(hi, b.upper[i]));
    }
    out
}

/// Assembles a cell from eigenvalue-space forms plus parameter-space
/// constraints; `None` when some form is violated identically.
fn make_cell(
    f: Family,
    forms: &[LinearForm],
    extra: Vec<AffineConstraint>,
    parabolic: Option<Parabolic>,
) -> Option<Cell> {
    let emb = f.embedding();
    let mut affine = box_constraints(f);
    for form in forms {
        match pull_back(form, &emb) {
            Pulled::Constraint(c) => affine.push(c),
            Pulled::AlwaysTrue => {}
            Pulled::AlwaysFalse => return None,
        }
    }
    affine.extend(extra);
    Some(Cell { affine, parabolic })
}

/// Sign patterns `s ∈ {±1}³` consistent with the embedding. Coordinates with
/// identical pull-backs share a sign; constant coordinates have their sign
/// fixed. Each pattern comes with the forms `s_k λk ≥ 0` it imposes.
fn sign_patterns(emb: &Embedding) -> Vec<([f64; 3], Vec<LinearForm>)> {
    let key = |k: usize| -> Vec<f64> {
        let mut v: Vec<f64> = emb.jacobian[k][..emb.dim].to_vec();
        v.push(emb.offset[k]);
        v
    };
    // group representative per coordinate
    let mut rep = [0usize; 3];
    for (k, r) in rep.iter_mut().enumerate() {
        *r = (0..k).find(|&j| key(j) == key(k)).unwrap_or(k);
    }
    let free: Vec<usize> = (0..3)
        .filter(|&k| rep[k] == k && !emb.is_constant(k))
        .collect();

    let mut out = Vec::new();
    for mask in 0..(1usize << free.len()) {
        let mut signs = [1.0; 3];
        for (k, s) in signs.iter_mut().enumerate() {
            if emb.is_constant(k) && emb.offset[k] < 0.0 {
                *s = -1.0;
            }
        }
        let mut forms = Vec::new();
        for (bit, &k) in free.iter().enumerate() {
            let s = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
            signs[k] = s;
            forms.push(LinearForm {
                a: unit(k, s),
                b: 0.0,
            });
        }
        for k in 0..3 {
            signs[k] = signs[rep[k]];
        }
        out.push((signs, forms));
    }
    out
}

fn lin(coeffs: &[f64], constant: f64) -> AffineConstraint {
    AffineConstraint::new(coeffs.to_vec(), constant)
}

/// `x_i = 0` as a pair of opposite half-spaces.
fn pinned_zero(d: usize, i: usize) -> Vec<AffineConstraint> {
    let mut pos = vec![0.0; d];
    pos[i] = 1.0;
    let neg: Vec<f64> = pos.iter().map(|v| -v).collect();
    vec![lin(&pos, 0.0), lin(&neg, 0.0)]
}

type CellSpec = (Vec<AffineConstraint>, Option<Parabolic>);

/// Parameter-space cells of CP-divisibility (before intersecting with CPT).
fn cpdiv_cells(f: Family) -> Option<Vec<CellSpec>> {
    let para = Some(Parabolic { var: 0, bound: 1 });
    let cells = match f {
        // non-invertible, exactly one non-zero eigenvalue: λ ≠ 0
        Family::Axial => vec![
            (vec![lin(&[1.0], 0.0)], None),
            (vec![lin(&[-1.0], 0.0)], None),
        ],
        // two equal non-zero eigenvalues whenever λ ≠ 0
        Family::PairZero => vec![],
        // 0 < λ³ ≤ λ²
        Family::Depolarizing => vec![(vec![lin(&[1.0], 0.0)], None)],
        // exactly one of λ, η non-zero
        Family::TwoDistinctZero => vec![(pinned_zero(2, 0), None), (pinned_zero(2, 1), None)],
        // invertible: 0 < λ²η ≤ min(λ², η²)  ⇔  λ² ≤ η ≤ 1; non-invertible: λ = 0, η ≠ 0
        Family::DegeneratePair => vec![(vec![], para), (pinned_zero(2, 0), None)],
        // (1−p)²(1−2p) ≤ (1−2p)² forces p = 0; p = 1 gives (0, 0, −1)
        Family::TwoPauli => vec![
            (vec![lin(&[-1.0], 0.0)], None),
            (vec![lin(&[1.0], -1.0)], None),
        ],
        // (1−2p)² ≤ (1−2p)² always; p = 1/2 gives (1, 0, 0)
        Family::Dephasing => vec![(vec![], None)],
        Family::General => return None,
    };
    Some(cells)
}

/// Parameter-space cells of literal L-divisibility, `λjλk ≤ λm`.
fn ldiv_literal_cells(f: Family) -> Option<Vec<CellSpec>> {
    let para = Some(Parabolic { var: 0, bound: 1 });
    let cells = match f {
        Family::Axial => vec![(vec![lin(&[1.0], 0.0)], None)],
        // λ² ≤ 0
        Family::PairZero => vec![(pinned_zero(1, 0), None)],
        // λ² ≤ λ
        Family::Depolarizing => vec![(vec![lin(&[1.0], 0.0)], None)],
        // λη ≤ 0, λ ≥ 0, η ≥ 0
        Family::TwoDistinctZero => {
            let mut a = pinned_zero(2, 0);
            a.push(lin(&[0.0, 1.0], 0.0));
            let mut b = pinned_zero(2, 1);
            b.push(lin(&[1.0, 0.0], 0.0));
            vec![(a, None), (b, None)]
        }
        // λ² ≤ η and λ(1 − η) ≥ 0
        Family::DegeneratePair => vec![
            (vec![lin(&[1.0, 0.0], 0.0)], para),
            (vec![lin(&[0.0, 1.0], -1.0)], para),
        ],
        // (1−p)² ≤ 1 − 2p
        Family::TwoPauli => vec![(vec![lin(&[-1.0], 0.0)], None)],
        Family::Dephasing => vec![(vec![], None)],
        Family::General => return None,
    };
    Some(cells)
}

/// Cells of `region` for `family`, each already intersected with the
/// parameter box.
pub fn region_constraints(f: Family, r: RegionId, mode: LdivMode) -> Result<ConstraintSet> {
    let (base, tlg) = r.split();
    let emb = f.embedding();
    let mut common = if tlg { tlg_forms() } else { Vec::new() };

    let mut cells: Vec<Cell> = Vec::new();
    let mut push = |forms: &[LinearForm], extra: Vec<AffineConstraint>, para: Option<Parabolic>| {
        if let Some(c) = make_cell(f, forms, extra, para) {
            cells.push(c);
        }
    };

    match base {
        Base::Pt => {
            common.extend(pt_forms());
            push(&common, vec![], None);
        }
        Base::Tlg => {
            common.extend(tlg_forms());
            push(&common, vec![], None);
        }
        Base::Cpt => {
            common.extend(cpt_forms());
            push(&common, vec![], None);
        }
        Base::Ebc => {
            common.extend(cpt_forms());
            for (signs, sign_forms) in sign_patterns(&emb) {
                let mut forms = common.clone();
                forms.extend(sign_forms);
                forms.push(LinearForm {
                    a: signs.map(|s| -s),
                    b: 1.0,
                });
                push(&forms, vec![], None);
            }
        }
        Base::Pdiv => {
            common.extend(cpt_forms());
            let structural_zero = (0..3).any(|k| emb.is_constant(k) && emb.offset[k] == 0.0);
            if structural_zero {
                push(&common, vec![], None);
            } else {
                for (signs, sign_forms) in sign_patterns(&emb) {
                    if signs.iter().product::<f64>() > 0.0 {
                        let mut forms = common.clone();
                        forms.extend(sign_forms);
                        push(&forms, vec![], None);
                    }
                }
            }
        }
        Base::Cpdiv | Base::Ldiv => {
            common.extend(cpt_forms());
            let specs = if base == Base::Ldiv && mode == LdivMode::Literal {
                ldiv_literal_cells(f)
            } else {
                cpdiv_cells(f)
            };
            let specs = specs.ok_or(Error::UnsupportedRegion {
                family: f,
                region: r,
            })?;
            for (extra, para) in specs {
                push(&common, extra, para);
            }
        }
    }

    Ok(ConstraintSet {
        dim: emb.dim,
        cells,
    })
}
