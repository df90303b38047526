//! Region outlines of each family drawn inside the eigenvalue cube: the CPT
//! region and its TLG part, for every distinct coordinate rotation of the
//! family.

use serde::{Deserialize, Serialize};

use crate::channel::LdivMode;
use crate::family::{parameter_box, Embedding, Family};
use crate::geometry::{clip_to_constraints, interval_of, Point2};
use crate::region::{region_constraints, RegionId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPolygon {
    pub label: String,
    pub vertices: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSection {
    pub family: Family,
    pub plane: String,
    pub regions: Vec<LabeledPolygon>,
}

fn rotated(emb: &Embedding, shift: usize) -> Embedding {
    let mut out = *emb;
    for k in 0..3 {
        out.jacobian[k] = emb.jacobian[(k + shift) % 3];
        out.offset[k] = emb.offset[(k + shift) % 3];
    }
    out
}

fn clean(v: f64) -> f64 {
    // drop signed zeros
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn embed3(emb: &Embedding, x: &[f64]) -> [f64; 3] {
    emb.apply(x).0.map(clean)
}

fn drop_collinear(poly: Vec<Point2>) -> Vec<Point2> {
    let n = poly.len();
    if n < 3 {
        return poly;
    }
    (0..n)
        .filter(|&i| {
            let a = poly[(i + n - 1) % n];
            let b = poly[i];
            let c = poly[(i + 1) % n];
            let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
            cross.abs() > 1e-15
        })
        .map(|i| poly[i])
        .collect()
}

/// Outline of a region in parameter space: an interval's endpoints or a
/// counter-clockwise polygon.
fn outline(f: Family, r: RegionId) -> Vec<Vec<f64>> {
    let set = region_constraints(f, r, LdivMode::Literal).expect("affine region");
    let cell = &set.cells[0];
    match set.dim {
        1 => match interval_of(&cell.affine) {
            Some((lo, hi)) if lo < hi => vec![vec![lo], vec![hi]],
            Some((lo, _)) => vec![vec![lo]],
            None => vec![],
        },
        _ => {
            let b = parameter_box(f);
            let poly = clip_to_constraints(
                [b.lower[0], b.lower[1]],
                [b.upper[0], b.upper[1]],
                &cell.affine,
            );
            drop_collinear(poly)
                .into_iter()
                .map(|p| p.to_vec())
                .collect()
        }
    }
}

fn var_name(f: Family, i: usize) -> &'static str {
    match (f, i) {
        (Family::TwoPauli | Family::Dephasing, _) => "p",
        (_, 0) => "λ",
        _ => "η",
    }
}

fn fmt_num(v: f64) -> String {
    format!("{}", clean(v))
}

/// `(λ, λ, 0)`-style description of a one-parameter line.
fn line_pattern(f: Family, emb: &Embedding) -> String {
    let name = var_name(f, 0);
    let parts: Vec<String> = (0..3)
        .map(|k| {
            let (a, c) = (emb.jacobian[k][0], emb.offset[k]);
            if a == 0.0 {
                return fmt_num(c);
            }
            let coef = if a == 1.0 {
                String::new()
            } else if a == -1.0 {
                "-".to_string()
            } else {
                fmt_num(a)
            };
            if c == 0.0 {
                format!("{coef}{name}")
            } else {
                let mag = if a.abs() == 1.0 {
                    String::new()
                } else {
                    fmt_num(a.abs())
                };
                let sign = if a < 0.0 { '-' } else { '+' };
                format!("{}{sign}{mag}{name}", fmt_num(c))
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// Equation of the plane spanned by a two-parameter embedding.
fn plane_equation(emb: &Embedding) -> String {
    let col = |i: usize| [emb.jacobian[0][i], emb.jacobian[1][i], emb.jacobian[2][i]];
    let (u, v) = (col(0), col(1));
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let nz: Vec<usize> = (0..3).filter(|&k| n[k] != 0.0).collect();
    match nz.as_slice() {
        [k] => format!("lambda{}=0", k + 1),
        [i, j] if n[*i] == -n[*j] => format!("lambda{}=lambda{}", i + 1, j + 1),
        _ => format!("{}*lambda1+{}*lambda2+{}*lambda3=0", n[0], n[1], n[2]),
    }
}

fn tetrahedron_faces() -> Vec<CrossSection> {
    let verts = [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ];
    (0..4)
        .map(|alpha| CrossSection {
            family: Family::General,
            plane: format!("p{alpha}=0"),
            regions: vec![LabeledPolygon {
                label: RegionId::Cpt.to_string(),
                vertices: (0..4).filter(|&v| v != alpha).map(|v| verts[v]).collect(),
            }],
        })
        .collect()
}

pub fn cross_section(f: Family) -> Vec<CrossSection> {
    if f == Family::General {
        return tetrahedron_faces();
    }
    let base = f.embedding();
    let shapes: Vec<(RegionId, Vec<Vec<f64>>)> = [RegionId::Cpt, RegionId::CptTlg]
        .into_iter()
        .map(|r| (r, outline(f, r)))
        .collect();

    let mut seen: Vec<Embedding> = Vec::new();
    let mut out = Vec::new();
    for shift in 0..3 {
        let emb = rotated(&base, shift);
        if seen.contains(&emb) {
            continue;
        }
        seen.push(emb);
        let plane = if emb.dim == 1 {
            line_pattern(f, &emb)
        } else {
            plane_equation(&emb)
        };
        let regions = shapes
            .iter()
            .map(|(r, pts)| LabeledPolygon {
                label: r.to_string(),
                vertices: pts.iter().map(|x| embed3(&emb, x)).collect(),
            })
            .collect();
        out.push(CrossSection {
            family: f,
            plane,
            regions,
        });
    }
    out.sort_by(|a, b| a.plane.cmp(&b.plane));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Same cyclic polygon up to rotation and orientation.
    fn same_cycle(a: &[[f64; 3]], b: &[[f64; 3]]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let n = a.len();
        let mut rev = b.to_vec();
        rev.reverse();
        [b.to_vec(), rev]
            .iter()
            .any(|cand| (0..n).any(|s| (0..n).all(|i| a[i] == cand[(i + s) % n])))
    }

    fn region<'a>(cs: &'a CrossSection, label: &str) -> &'a [[f64; 3]] {
        &cs.regions
            .iter()
            .find(|r| r.label == label)
            .unwrap()
            .vertices
    }

    #[test]
    fn two_distinct_zero_square() {
        let all = cross_section(Family::TwoDistinctZero);
        assert_eq!(all.len(), 3);
        let cs = all.iter().find(|c| c.plane == "lambda3=0").unwrap();
        assert!(same_cycle(
            region(cs, "cpt"),
            &[
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, -1.0, 0.0]
            ]
        ));
        assert!(same_cycle(
            region(cs, "cpt-tlg"),
            &[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
        ));
    }

    #[test]
    fn degenerate_pair_triangle() {
        let all = cross_section(Family::DegeneratePair);
        assert_eq!(all.len(), 3);
        let cs = all.iter().find(|c| c.plane == "lambda1=lambda2").unwrap();
        assert!(same_cycle(
            region(cs, "cpt"),
            &[[0.0, 0.0, -1.0], [1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]]
        ));
    }

    #[test]
    fn depolarizing_segment() {
        let all = cross_section(Family::Depolarizing);
        assert_eq!(all.len(), 1);
        let third = 1.0 / 3.0;
        assert_eq!(
            region(&all[0], "cpt"),
            &[[-third, -third, -third], [1.0, 1.0, 1.0]]
        );
        assert_eq!(all[0].plane, "(λ, λ, λ)");
    }

    #[test]
    fn one_parameter_copies() {
        assert_eq!(cross_section(Family::Axial).len(), 3);
        let pz = cross_section(Family::PairZero);
        assert_eq!(pz.len(), 3);
        let cs = pz.iter().find(|c| c.plane == "(λ, λ, 0)").unwrap();
        assert_eq!(region(cs, "cpt"), &[[-0.5, -0.5, 0.0], [0.5, 0.5, 0.0]]);
        let tp = cross_section(Family::TwoPauli);
        assert!(tp.iter().any(|c| c.plane == "(1-p, 1-p, 1-2p)"));
    }

    #[test]
    fn general_has_four_faces() {
        let faces = cross_section(Family::General);
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.regions[0].vertices.len() == 3));
    }
}
