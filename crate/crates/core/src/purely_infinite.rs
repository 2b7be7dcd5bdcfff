//! Membership predicates for closed convex hulls of unitary orbits in
//! unital simple purely infinite algebras, where membership is decided by
//! spectrum convexity alone: real spectra against an interval, complex
//! spectra against a planar convex hull.

use crate::error::Result;
use crate::linalg::C64;
use crate::spectral::SpectrumSet;

/// Every point of `σ(s)` lies in `[min σ(t), max σ(t)]` (closed,
/// tolerance-widened).
pub fn hull_member_selfadjoint(s_spec: &SpectrumSet, t_spec: &SpectrumSet) -> Result<bool> {
    let s_pts = s_spec.real_points()?;
    let t_pts = t_spec.real_points()?;
    let lo = t_pts.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = t_pts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scale = t_pts.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let tol = crate::scalar::TOL_NUM * (1.0 + scale);
    Ok(s_pts.iter().all(|&x| x >= lo - tol && x <= hi + tol))
}

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Monotone-chain convex hull, counterclockwise, without interior collinear
/// points. For fewer than three distinct points the input order is kept.
fn convex_hull(points: &[C64]) -> Vec<C64> {
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| {
        p.re.partial_cmp(&q.re).expect("finite point").then(p.im.partial_cmp(&q.im).expect("finite point"))
    });
    pts.dedup_by(|a, b| a == b);
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<C64> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn dist_point_segment(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let denom = ab.norm_sqr();
    if denom == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / denom).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Closed-hull membership of a point, with tolerance scaled to the data.
fn point_in_hull(p: C64, hull: &[C64], tol: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (p - hull[0]).norm() <= tol,
        2 => dist_point_segment(p, hull[0], hull[1]) <= tol,
        _ => (0..hull.len()).all(|k| {
            let a = hull[k];
            let b = hull[(k + 1) % hull.len()];
            // Counterclockwise hull: inside means on the left of every edge.
            cross(a, b, p) >= -tol * (b - a).norm()
        }),
    }
}

/// Every point of `σ(s)` lies in the closed planar convex hull of `σ(t)`.
pub fn hull_member_normal(s_spec: &SpectrumSet, t_spec: &SpectrumSet) -> Result<bool> {
    let hull = convex_hull(t_spec.points());
    let scale = t_spec
        .points()
        .iter()
        .chain(s_spec.points())
        .fold(0.0_f64, |acc, z| acc.max(z.norm()));
    let tol = crate::scalar::TOL_GRID * (1.0 + scale);
    Ok(s_spec.points().iter().all(|&p| point_in_hull(p, &hull, tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::spectral_hull_distance;

    fn set(pts: &[(f64, f64)]) -> SpectrumSet {
        SpectrumSet::new(pts.iter().map(|&(re, im)| C64::new(re, im)).collect()).unwrap()
    }

    #[test]
    fn selfadjoint_interval_membership() {
        let t = SpectrumSet::from_reals(&[0.0, 1.0]).unwrap();
        assert!(hull_member_selfadjoint(&SpectrumSet::from_reals(&[0.5]).unwrap(), &t).unwrap());
        assert!(hull_member_selfadjoint(&t, &t).unwrap());
        assert!(!hull_member_selfadjoint(&SpectrumSet::from_reals(&[2.0]).unwrap(), &t).unwrap());
    }

    #[test]
    fn selfadjoint_consistent_with_distance() {
        let t = SpectrumSet::from_reals(&[-1.0, 0.5, 2.0]).unwrap();
        for s in [
            SpectrumSet::from_reals(&[0.0, 1.0]).unwrap(),
            SpectrumSet::from_reals(&[-2.0]).unwrap(),
            SpectrumSet::from_reals(&[2.0, -1.0]).unwrap(),
        ] {
            let member = hull_member_selfadjoint(&s, &t).unwrap();
            let dist = spectral_hull_distance(&s, &t).unwrap();
            assert_eq!(member, dist == 0.0);
        }
    }

    #[test]
    fn normal_triangle_membership() {
        let t = set(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert!(hull_member_normal(&set(&[(0.5, 0.1)]), &t).unwrap());
        assert!(hull_member_normal(&t, &t).unwrap());
        assert!(!hull_member_normal(&set(&[(0.0, 2.0)]), &t).unwrap());
    }

    #[test]
    fn normal_boundary_counts_as_member() {
        let t = set(&[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0)]);
        assert!(hull_member_normal(&set(&[(1.0, 1.0)]), &t).unwrap());
        assert!(hull_member_normal(&set(&[(0.0, 0.0)]), &t).unwrap());
    }

    #[test]
    fn normal_degenerate_hulls() {
        let point = set(&[(1.0, 1.0)]);
        assert!(hull_member_normal(&set(&[(1.0, 1.0)]), &point).unwrap());
        assert!(!hull_member_normal(&set(&[(1.0, 1.5)]), &point).unwrap());
        let segment = set(&[(0.0, 0.0), (2.0, 2.0)]);
        assert!(hull_member_normal(&set(&[(1.0, 1.0)]), &segment).unwrap());
        assert!(!hull_member_normal(&set(&[(1.0, 1.2)]), &segment).unwrap());
    }

    #[test]
    fn normal_agrees_with_selfadjoint_on_real_points() {
        let t = set(&[(0.0, 0.0), (3.0, 0.0), (1.0, 0.0)]);
        let inside = set(&[(2.0, 0.0)]);
        let outside = set(&[(4.0, 0.0)]);
        assert_eq!(
            hull_member_normal(&inside, &t).unwrap(),
            hull_member_selfadjoint(&inside, &t).unwrap()
        );
        assert_eq!(
            hull_member_normal(&outside, &t).unwrap(),
            hull_member_selfadjoint(&outside, &t).unwrap()
        );
    }
}
