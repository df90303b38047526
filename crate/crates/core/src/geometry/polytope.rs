use nalgebra::{Matrix3, Vector3};

/// `normal·x + offset ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl HalfSpace {
    fn eval(&self, p: &Vector3<f64>) -> f64 {
        self.normal[0] * p[0] + self.normal[1] * p[1] + self.normal[2] * p[2] + self.offset
    }
}

const VERTEX_TOL: f64 = 1e-9;

/// Vertices of the bounded polytope `∩ halfspaces`, by solving every triple
/// of bounding planes and keeping the feasible, distinct solutions.
pub fn polytope_vertices(halfspaces: &[HalfSpace]) -> Vec<Vector3<f64>> {
    let n = halfspaces.len();
    let mut verts: Vec<Vector3<f64>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let rows = [halfspaces[i], halfspaces[j], halfspaces[k]];
                let m = Matrix3::from_fn(|r, c| rows[r].normal[c]);
                if m.determinant().abs() < 1e-12 {
                    continue;
                }
                let rhs = Vector3::new(-rows[0].offset, -rows[1].offset, -rows[2].offset);
                let Some(p) = m.lu().solve(&rhs) else {
                    continue;
                };
                if halfspaces.iter().all(|h| h.eval(&p) >= -VERTEX_TOL)
                    && !verts.iter().any(|v| (v - p).norm() < VERTEX_TOL)
                {
                    verts.push(p);
                }
            }
        }
    }
    verts
}

/// Volume of a bounded polytope given by half-spaces: each facet polygon is
/// fan-triangulated and coned to an interior point into tetrahedra.
pub fn polytope_volume(halfspaces: &[HalfSpace]) -> f64 {
    let verts = polytope_vertices(halfspaces);
    if verts.len() < 4 {
        return 0.0;
    }
    let centre = verts.iter().sum::<Vector3<f64>>() / verts.len() as f64;

    // distinct supporting planes
    let mut planes: Vec<(Vector3<f64>, f64)> = Vec::new();
    for h in halfspaces {
        let nrm = Vector3::from(h.normal);
        let len = nrm.norm();
        if len == 0.0 {
            continue;
        }
        let (u, o) = (nrm / len, h.offset / len);
        if !planes
            .iter()
            .any(|(pu, po)| (pu - u).norm() < 1e-12 && (po - o).abs() < 1e-12)
        {
            planes.push((u, o));
        }
    }

    let mut volume = 0.0;
    for (u, o) in planes {
        let face: Vec<Vector3<f64>> = verts
            .iter()
            .copied()
            .filter(|v| (u.dot(v) + o).abs() < VERTEX_TOL)
            .collect();
        if face.len() < 3 {
            continue;
        }
        let fc = face.iter().sum::<Vector3<f64>>() / face.len() as f64;
        let e1 = (face[0] - fc).normalize();
        let e2 = u.cross(&e1);
        let mut ordered: Vec<(f64, Vector3<f64>)> = face
            .iter()
            .map(|v| {
                let d = v - fc;
                (d.dot(&e2).atan2(d.dot(&e1)), *v)
            })
            .collect();
        ordered.sort_by(|a, b| a.0.total_cmp(&b.0));
        let p0 = ordered[0].1;
        for w in ordered[1..].windows(2) {
            let (a, b) = (w[0].1, w[1].1);
            volume += (p0 - centre).dot(&(a - centre).cross(&(b - centre))).abs() / 6.0;
        }
    }
    volume
}
