use crate::region::{AffineConstraint, Parabolic};

pub type Point2 = [f64; 2];

/// Sutherland-Hodgman step: the part of a convex polygon where
/// `a·p + c ≥ 0`.
pub fn clip_half_plane(poly: &[Point2], a: [f64; 2], c: f64) -> Vec<Point2> {
    let g = |p: &Point2| a[0] * p[0] + a[1] * p[1] + c;
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let (gc, gn) = (g(&cur), g(&next));
        if gc >= 0.0 {
            out.push(cur);
        }
        if (gc >= 0.0) != (gn >= 0.0) {
            let t = gc / (gc - gn);
            out.push([
                cur[0] + t * (next[0] - cur[0]),
                cur[1] + t * (next[1] - cur[1]),
            ]);
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Clips the box `[lo0, hi0] × [lo1, hi1]` by every constraint. The result
/// is counter-clockwise; it may be degenerate (a segment or point) or empty.
pub fn clip_to_constraints(
    lower: [f64; 2],
    upper: [f64; 2],
    constraints: &[AffineConstraint],
) -> Vec<Point2> {
    let mut poly = vec![
        [lower[0], lower[1]],
        [upper[0], lower[1]],
        [upper[0], upper[1]],
        [lower[0], upper[1]],
    ];
    for c in constraints {
        if poly.is_empty() {
            break;
        }
        poly = clip_half_plane(&poly, [c.coeffs[0], c.coeffs[1]], c.constant);
    }
    poly
}

pub fn shoelace_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let twice: f64 = (0..n)
        .map(|i| {
            let p = poly[i];
            let q = poly[(i + 1) % n];
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    0.5 * twice.abs()
}

/// Horizontal extent of a convex polygon at height `v` (second coordinate).
fn slice(poly: &[Point2], v: f64) -> Option<(f64, f64)> {
    let n = poly.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (vmin, vmax) = (p[1].min(q[1]), p[1].max(q[1]));
        if v < vmin || v > vmax {
            continue;
        }
        if p[1] == q[1] {
            lo = lo.min(p[0].min(q[0]));
            hi = hi.max(p[0].max(q[0]));
        } else {
            let t = (v - p[1]) / (q[1] - p[1]);
            let u = p[0] + t * (q[0] - p[0]);
            lo = lo.min(u);
            hi = hi.max(u);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Area of `{(u, v) ∈ poly : v ≥ u²}` for a convex polygon, where `u` and
/// `v` are the coordinates selected by `para`.
///
/// Between consecutive breakpoints (vertex heights and the heights where an
/// edge meets `u = ±√v`) both the polygon slice and the active bound are
/// fixed, so each piece integrates in closed form with `∫√v = ⅔ v^{3/2}`.
pub fn parabolic_area(poly: &[Point2], para: Parabolic) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let (iu, iv) = (para.var, para.bound);
    let pts: Vec<Point2> = poly.iter().map(|p| [p[iu], p[iv]]).collect();

    let vmin = pts
        .iter()
        .map(|p| p[1])
        .fold(f64::INFINITY, f64::min)
        .max(0.0);
    let vmax = pts.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    if vmax <= vmin {
        return 0.0;
    }

    let mut breaks: Vec<f64> = pts.iter().map(|p| p[1]).collect();
    breaks.push(0.0);
    let n = pts.len();
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        if p[1] == q[1] {
            continue;
        }
        // u = m v + k along the edge; (m v + k)² = v
        let m = (q[0] - p[0]) / (q[1] - p[1]);
        let k = p[0] - m * p[1];
        breaks.extend(quadratic_roots(m * m, 2.0 * m * k - 1.0, k * k));
    }
    breaks.retain(|v| *v >= vmin && *v <= vmax);
    breaks.push(vmin);
    breaks.push(vmax);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let sqrt_integral = |a: f64, b: f64| (2.0 / 3.0) * (b.powf(1.5) - a.powf(1.5));
    let mut area = 0.0;
    for w in breaks.windows(2) {
        let (v0, v1) = (w[0], w[1]);
        if v1 <= v0 {
            continue;
        }
        let (Some((a0, b0)), Some((a1, b1))) = (slice(&pts, v0), slice(&pts, v1)) else {
            continue;
        };
        let vm = 0.5 * (v0 + v1);
        let root = vm.sqrt();
        let (am, bm) = (0.5 * (a0 + a1), 0.5 * (b0 + b1));
        let upper_is_root = root < bm;
        let lower_is_root = -root > am;
        let upper_mid = if upper_is_root { root } else { bm };
        let lower_mid = if lower_is_root { -root } else { am };
        if upper_mid <= lower_mid {
            continue;
        }
        let dv = v1 - v0;
        let upper = if upper_is_root {
            sqrt_integral(v0, v1)
        } else {
            0.5 * (b0 + b1) * dv
        };
        let lower = if lower_is_root {
            -sqrt_integral(v0, v1)
        } else {
            0.5 * (a0 + a1) * dv
        };
        area += upper - lower;
    }
    area
}

/// Real roots of `a x² + b x + c = 0` (linear when `a = 0`).
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b != 0.0 { vec![-c / b] } else { vec![] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    // numerically stable pair
    let qq = -0.5 * (b + b.signum() * sq);
    let mut roots = vec![qq / a];
    if qq != 0.0 {
        roots.push(c / qq);
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2(a: f64, b: f64, k: f64) -> AffineConstraint {
        AffineConstraint::new([a, b], k)
    }

    #[test]
    fn square_and_diamond() {
        let sq = clip_to_constraints([-1.0, -1.0], [1.0, 1.0], &[]);
        assert_eq!(shoelace_area(&sq), 4.0);
        // |x| + |y| ≤ 1
        let diamond = clip_to_constraints(
            [-1.0, -1.0],
            [1.0, 1.0],
            &[
                c2(-1.0, -1.0, 1.0),
                c2(1.0, -1.0, 1.0),
                c2(-1.0, 1.0, 1.0),
                c2(1.0, 1.0, 1.0),
            ],
        );
        assert_eq!(diamond.len(), 4);
        assert_eq!(shoelace_area(&diamond), 2.0);
    }

    #[test]
    fn degenerate_clips_have_zero_area() {
        let seg = clip_to_constraints(
            [-1.0, -1.0],
            [1.0, 1.0],
            &[c2(1.0, 0.0, 0.0), c2(-1.0, 0.0, 0.0)],
        );
        assert_eq!(shoelace_area(&seg), 0.0);
        let empty = clip_to_constraints([-1.0, -1.0], [1.0, 1.0], &[c2(1.0, 0.0, -2.0)]);
        assert!(empty.is_empty());
    }

    #[test]
    fn parabola_under_full_box() {
        // {v ≥ u²} ∩ [-1,1]² has area ∫₀¹ 2√v dv = 4/3
        let sq = clip_to_constraints([-1.0, -1.0], [1.0, 1.0], &[]);
        let a = parabolic_area(&sq, Parabolic { var: 0, bound: 1 });
        assert!((a - 4.0 / 3.0).abs() < 1e-15);
        // right half: 2/3
        let half = clip_to_constraints([0.0, -1.0], [1.0, 1.0], &[]);
        let a = parabolic_area(&half, Parabolic { var: 0, bound: 1 });
        assert!((a - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn parabola_with_slanted_edge() {
        // {0 ≤ u ≤ 1, v ≤ 1, v ≥ u², u ≥ v/2}: ∫₀¹ (√v − v/2) dv = 2/3 − 1/4
        let poly = clip_to_constraints([0.0, 0.0], [1.0, 1.0], &[c2(1.0, -0.5, 0.0)]);
        let a = parabolic_area(&poly, Parabolic { var: 0, bound: 1 });
        assert!((a - (2.0 / 3.0 - 0.25)).abs() < 1e-15, "{a}");
    }

    #[test]
    fn parabola_inactive_matches_shoelace() {
        // Triangle strictly above the parabola: (0,0.5),(0.2,0.9),(-0.2,0.9)
        let tri = [[0.0, 0.5], [0.2, 0.9], [-0.2, 0.9]];
        let a = parabolic_area(&tri, Parabolic { var: 0, bound: 1 });
        assert!((a - shoelace_area(&tri)).abs() < 1e-15);
    }

    #[test]
    fn parabola_crossing_chord() {
        // Chord u = v cuts the parabola at v = 0 and v = 1; the region between
        // the line u = v and u = √v on [0,1] has area 2/3 − 1/2.
        let poly = clip_to_constraints([0.0, 0.0], [1.0, 1.0], &[c2(1.0, -1.0, 0.0)]);
        let a = parabolic_area(&poly, Parabolic { var: 0, bound: 1 });
        assert!((a - (2.0 / 3.0 - 0.5)).abs() < 1e-15, "{a}");
    }
}
