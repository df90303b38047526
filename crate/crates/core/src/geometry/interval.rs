use crate::region::AffineConstraint;

pub type Interval = (f64, f64);

/// Feasible interval of one-dimensional constraints `a x + b ≥ 0`, or
/// `None` when they are inconsistent.
pub fn interval_of(constraints: &[AffineConstraint]) -> Option<Interval> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for c in constraints {
        let (a, b) = (c.coeffs[0], c.constant);
        if a > 0.0 {
            lo = lo.max(-b / a);
        } else if a < 0.0 {
            hi = hi.min(-b / a);
        } else if b < 0.0 {
            return None;
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Lebesgue measure of a finite union of closed intervals.
pub fn union_length(intervals: &[Interval]) -> f64 {
    let mut sorted: Vec<Interval> = intervals.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut current: Option<Interval> = None;
    for (lo, hi) in sorted {
        match current {
            Some((clo, chi)) if lo <= chi => current = Some((clo, chi.max(hi))),
            Some((clo, chi)) => {
                total += chi - clo;
                current = Some((lo, hi));
            }
            None => current = Some((lo, hi)),
        }
    }
    if let Some((lo, hi)) = current {
        total += hi - lo;
    }
    total
}
