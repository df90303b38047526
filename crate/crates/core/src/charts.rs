//! Relative-volume tables for the one- and two-parameter families, with the
//! published value attached wherever one exists.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::channel::LdivMode;
use crate::error::Result;
use crate::family::Family;
use crate::region::RegionId;
use crate::volume::exact_measure;

/// Agreement threshold between a computed ratio and the published one.
pub const STATUS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartSet {
    /// Ratios relative to the positive trace-preserving maps.
    PositiveMaps,
    /// Ratios relative to the channels.
    Channels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Consistent,
    Discrepant,
    /// No published value to compare with.
    Unreported,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Consistent => "consistent",
            Status::Discrepant => "discrepant",
            Status::Unreported => "unreported",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartRow {
    pub family: Family,
    pub set: ChartSet,
    pub ratio_name: String,
    pub value: f64,
    pub paper_value: Option<f64>,
    pub status: Status,
}

pub const CHART_FAMILIES: [Family; 7] = [
    Family::Axial,
    Family::PairZero,
    Family::Depolarizing,
    Family::TwoDistinctZero,
    Family::DegeneratePair,
    Family::TwoPauli,
    Family::Dephasing,
];

const RATIOS: [(ChartSet, RegionId, RegionId); 8] = [
    (ChartSet::PositiveMaps, RegionId::Cpt, RegionId::Pt),
    (ChartSet::PositiveMaps, RegionId::Ebc, RegionId::Pt),
    (ChartSet::PositiveMaps, RegionId::PtTlg, RegionId::Pt),
    (ChartSet::Channels, RegionId::Ebc, RegionId::Cpt),
    (ChartSet::Channels, RegionId::CptTlg, RegionId::Cpt),
    (ChartSet::Channels, RegionId::Pdiv, RegionId::Cpt),
    (ChartSet::Channels, RegionId::Cpdiv, RegionId::Cpt),
    (ChartSet::Channels, RegionId::Ldiv, RegionId::Cpt),
];

/// Published ratios, in the order of `RATIOS`. `None` where the text gives
/// no value.
fn published(f: Family) -> [Option<f64>; 8] {
    let s = |v: f64| Some(v);
    match f {
        Family::Axial => [
            s(1.0),
            s(1.0),
            s(0.5),
            s(1.0),
            s(0.5),
            s(1.0),
            s(1.0),
            s(0.5),
        ],
        Family::PairZero => [
            s(0.5),
            s(0.5),
            s(0.5),
            s(1.0),
            s(0.5),
            s(0.5),
            s(0.0),
            s(0.0),
        ],
        Family::Depolarizing => [
            s(2.0 / 3.0),
            s(1.0 / 3.0),
            s(0.5),
            s(0.5),
            s(0.75),
            s(0.75),
            s(0.75),
            s(0.75),
        ],
        Family::TwoDistinctZero => [
            s(0.5),
            s(0.5),
            s(0.25),
            s(1.0),
            s(0.25),
            s(1.0),
            s(0.0),
            s(0.0),
        ],
        Family::DegeneratePair => [
            s(0.5),
            s(0.25),
            s(0.25),
            s(0.5),
            s(3.0 / 8.0),
            s(0.75),
            s(2.0 / 3.0),
            s(2.0 / 3.0),
        ],
        Family::TwoPauli => [
            s(1.0),
            s(0.0),
            s(0.5),
            s(0.0),
            s(0.5),
            s(1.0),
            s(0.0),
            s(0.0),
        ],
        Family::Dephasing => [
            s(1.0),
            s(0.5),
            s(0.5),
            s(0.5),
            s(0.5),
            s(1.0),
            s(1.0),
            s(1.0),
        ],
        Family::General => [None; 8],
    }
}

fn ratio_name(num: RegionId, den: RegionId) -> String {
    format!("{num}/{den}")
}

pub fn chart_data(mode: LdivMode) -> Result<Vec<ChartRow>> {
    let mut rows = Vec::new();
    for f in CHART_FAMILIES {
        let paper = published(f);
        for ((set, num, den), paper_value) in RATIOS.into_iter().zip(paper) {
            let value = exact_measure(f, num, mode)? / exact_measure(f, den, mode)?;
            let status = match paper_value {
                None => Status::Unreported,
                Some(p) if (p - value).abs() <= STATUS_TOL => Status::Consistent,
                Some(_) => Status::Discrepant,
            };
            rows.push(ChartRow {
                family: f,
                set,
                ratio_name: ratio_name(num, den),
                value,
                paper_value,
                status,
            });
        }
    }
    Ok(rows)
}

pub const CHART_CSV_HEADER: &str = "family,ratio_name,value,paper_value,status";

pub fn chart_csv(rows: &[ChartRow]) -> String {
    let mut out = String::from(CHART_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let paper = r.paper_value.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.family,
            r.ratio_name,
            r.value,
            paper,
            r.status.name()
        );
    }
    out
}
