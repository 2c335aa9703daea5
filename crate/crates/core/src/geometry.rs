//! Rate polytopes: halfspace systems over nonnegative rate variables,
//! Fourier-Motzkin projection and downward-closed 2-D regions.

use serde::Serialize;

use crate::error::{QicError, Result};

/// Tolerance on right-hand-side comparisons and feasibility.
pub const RHS_TOL: f64 = 1e-9;
/// Default outward slack for membership tests.
pub const CONTAINS_TOL: f64 = 1e-9;
const COEF_EPS: f64 = 1e-12;

/// `coeffs . r <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

impl Row {
    fn is_trivial(&self) -> bool {
        // Every coefficient <= 0 and rhs >= 0 is implied by r >= 0.
        self.coeffs.iter().all(|&c| c <= COEF_EPS) && self.rhs >= -RHS_TOL
    }

    fn normalized(&self) -> Row {
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 {
            return self.clone();
        }
        Row { coeffs: self.coeffs.iter().map(|c| c / scale).collect(), rhs: self.rhs / scale }
    }

    /// `self` implies `other` on the nonnegative orthant (both normalized).
    fn dominates(&self, other: &Row) -> bool {
        self.rhs <= other.rhs + RHS_TOL && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a >= *b - COEF_EPS)
    }
}

/// Linear inequalities over named variables with implicit `r >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfspaceSystem {
    vars: Vec<String>,
    rows: Vec<Row>,
}

impl HalfspaceSystem {
    pub fn new(vars: &[&str]) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(QicError::InvalidArgument(format!("duplicate variable '{v}'")));
            }
        }
        Ok(HalfspaceSystem { vars: vars.iter().map(|v| v.to_string()).collect(), rows: Vec::new() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| QicError::UnknownVariable(name.to_string()))
    }

    pub fn push(&mut self, coeffs: Vec<f64>, rhs: f64) -> Result<()> {
        if coeffs.len() != self.vars.len() {
            return Err(QicError::DimensionMismatch(format!(
                "row has {} coefficients for {} variables",
                coeffs.len(),
                self.vars.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) || rhs.is_nan() {
            return Err(QicError::NonFinite);
        }
        self.rows.push(Row { coeffs, rhs });
        Ok(())
    }

    /// Adds `sum_k terms[k].1 * terms[k].0 <= rhs` with unit coefficients by name.
    pub fn add(&mut self, terms: &[(&str, f64)], rhs: f64) -> Result<()> {
        let mut coeffs = vec![0.0; self.vars.len()];
        for (name, c) in terms {
            coeffs[self.var_index(name)?] += c;
        }
        self.push(coeffs, rhs)
    }

    /// Adds `sum of vars <= rhs`.
    pub fn add_sum(&mut self, vars: &[&str], rhs: f64) -> Result<()> {
        let terms: Vec<(&str, f64)> = vars.iter().map(|v| (*v, 1.0)).collect();
        self.add(&terms, rhs)
    }

    /// `a.r <= b + tol` for every row and `r >= -tol`.
    pub fn contains(&self, point: &[f64], tol: f64) -> bool {
        point.len() == self.vars.len()
            && point.iter().all(|&x| x >= -tol)
            && self.rows.iter().all(|r| {
                let lhs: f64 = r.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
                lhs <= r.rhs + tol
            })
    }

    /// Replaces `a` by `new - b`, i.e. introduces `new = a + b`. The
    /// nonnegativity of `a` becomes the row `b - new <= 0`.
    pub fn substitute_sum(&self, new: &str, a: &str, b: &str) -> Result<Self> {
        let ia = self.var_index(a)?;
        let ib = self.var_index(b)?;
        if ia == ib {
            return Err(QicError::InvalidArgument("substitution needs two distinct variables".into()));
        }
        if self.vars.iter().any(|v| v == new) {
            return Err(QicError::InvalidArgument(format!("variable '{new}' already exists")));
        }
        let mut vars = self.vars.clone();
        vars[ia] = new.to_string();
        let mut rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| {
                let mut coeffs = r.coeffs.clone();
                let ca = coeffs[ia];
                coeffs[ib] -= ca;
                Row { coeffs, rhs: r.rhs }
            })
            .collect();
        let mut nonneg = vec![0.0; vars.len()];
        nonneg[ia] = -1.0;
        nonneg[ib] = 1.0;
        rows.push(Row { coeffs: nonneg, rhs: 0.0 });
        let mut out = HalfspaceSystem { vars, rows };
        out.prune();
        Ok(out)
    }

    /// Fourier-Motzkin elimination of `var`, treating `var >= 0` as a row.
    pub fn fm_eliminate(&self, var: &str) -> Result<Self> {
        let k = self.var_index(var)?;
        let mut pos = Vec::new();
        let mut neg = vec![{
            let mut c = vec![0.0; self.vars.len()];
            c[k] = -1.0;
            Row { coeffs: c, rhs: 0.0 }
        }];
        let mut keep = Vec::new();
        for r in &self.rows {
            let c = r.coeffs[k];
            if c > COEF_EPS {
                pos.push(r.clone());
            } else if c < -COEF_EPS {
                neg.push(r.clone());
            } else {
                keep.push(r.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (1.0 / p.coeffs[k], -1.0 / n.coeffs[k]);
                let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a * sp + b * sn).collect();
                keep.push(Row { coeffs, rhs: p.rhs * sp + n.rhs * sn });
            }
        }
        let rows = keep
            .into_iter()
            .map(|mut r| {
                r.coeffs.remove(k);
                r
            })
            .collect();
        let mut vars = self.vars.clone();
        vars.remove(k);
        let mut out = HalfspaceSystem { vars, rows };
        out.prune();
        Ok(out)
    }

    /// Drops rows implied by nonnegativity or by another single row.
    pub fn prune(&mut self) {
        let normalized: Vec<Row> = self
            .rows
            .iter()
            .map(Row::normalized)
            .filter(|r| !r.is_trivial())
            .map(|mut r| {
                for c in r.coeffs.iter_mut() {
                    if c.abs() <= COEF_EPS {
                        *c = 0.0;
                    }
                }
                r
            })
            .collect();
        let mut kept: Vec<Row> = Vec::new();
        for (i, r) in normalized.iter().enumerate() {
            let redundant = normalized.iter().enumerate().any(|(j, s)| {
                if i == j || !s.dominates(r) {
                    return false;
                }
                // Mutual domination: keep the first of the pair.
                !r.dominates(s) || j < i
            });
            if !redundant {
                kept.push(r.clone());
            }
        }
        self.rows = kept;
    }

    /// 2-D region for a system over exactly two variables.
    pub fn to_region2d(&self) -> Result<RateRegion2D> {
        if self.vars.len() != 2 {
            return Err(QicError::DimensionMismatch(format!(
                "a 2-D region needs two variables, system has {}",
                self.vars.len()
            )));
        }
        region_from_rows(&self.rows)
    }
}

type Pt = [f64; 2];

fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn feasible(rows: &[Row], p: Pt) -> bool {
    p[0] >= -RHS_TOL
        && p[1] >= -RHS_TOL
        && rows.iter().all(|r| r.coeffs[0] * p[0] + r.coeffs[1] * p[1] <= r.rhs + RHS_TOL)
}

fn region_from_rows(rows: &[Row]) -> Result<RateRegion2D> {
    if !feasible(rows, [0.0, 0.0]) {
        return Err(QicError::EmptyRegion);
    }
    // Bounded iff no nonzero recession direction d >= 0 with A d <= 0.
    let mut dirs: Vec<Pt> = vec![[1.0, 0.0], [0.0, 1.0]];
    for r in rows {
        let (a, b) = (r.coeffs[0], r.coeffs[1]);
        for d in [[-b, a], [b, -a]] {
            if d[0] >= 0.0 && d[1] >= 0.0 && (d[0] > 0.0 || d[1] > 0.0) {
                dirs.push(d);
            }
        }
    }
    for d in &dirs {
        let norm = d[0].hypot(d[1]);
        let d = [d[0] / norm, d[1] / norm];
        if rows.iter().all(|r| r.coeffs[0] * d[0] + r.coeffs[1] * d[1] <= COEF_EPS) {
            return Err(QicError::UnboundedRegion);
        }
    }
    let mut lines: Vec<(f64, f64, f64)> = rows.iter().map(|r| (r.coeffs[0], r.coeffs[1], r.rhs)).collect();
    lines.push((1.0, 0.0, 0.0));
    lines.push((0.0, 1.0, 0.0));
    let mut pts = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() <= COEF_EPS {
                continue;
            }
            let p = [(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det];
            if feasible(rows, p) {
                pts.push([p[0].max(0.0), p[1].max(0.0)]);
            }
        }
    }
    Ok(RateRegion2D::from_points(&pts))
}

/// Convex, downward-closed region in the nonnegative quadrant.
///
/// Stored as its upper-right boundary chain from `(0, max R2)` to
/// `(max R1, 0)` in increasing `R1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateRegion2D {
    chain: Vec<Pt>,
}

const VERTEX_EPS: f64 = 1e-12;

fn same(a: Pt, b: Pt) -> bool {
    (a[0] - b[0]).abs() <= VERTEX_EPS && (a[1] - b[1]).abs() <= VERTEX_EPS
}

impl RateRegion2D {
    pub fn origin() -> Self {
        RateRegion2D { chain: vec![[0.0, 0.0]] }
    }

    /// Downward closure of the convex hull of `points` (and the origin).
    /// Negative coordinates are clamped to zero.
    pub fn from_points(points: &[Pt]) -> Self {
        let pts: Vec<Pt> = points
            .iter()
            .filter(|p| p[0].is_finite() && p[1].is_finite())
            .map(|p| [p[0].max(0.0), p[1].max(0.0)])
            .collect();
        let xmax = pts.iter().fold(0.0f64, |m, p| m.max(p[0]));
        let ymax = pts.iter().fold(0.0f64, |m, p| m.max(p[1]));
        let mut cand = pts;
        cand.push([0.0, ymax]);
        cand.push([xmax, 0.0]);
        // Sort by x ascending, then y descending; upper hull keeps right turns.
        cand.sort_by(|a, b| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1])));
        let mut hull: Vec<Pt> = Vec::new();
        for p in cand {
            if let Some(last) = hull.last() {
                if last[0] == p[0] {
                    // Same abscissa: only the highest point matters for the upper hull.
                    continue;
                }
            }
            while hull.len() >= 2 {
                let n = hull.len();
                let scale = 1.0 + hull[n - 2][0].abs() + hull[n - 2][1].abs() + p[0].abs() + p[1].abs();
                if cross(hull[n - 2], hull[n - 1], p) >= -VERTEX_EPS * scale * scale {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let mut chain: Vec<Pt> = Vec::new();
        for p in hull.into_iter().chain(std::iter::once([xmax, 0.0])) {
            if chain.last().is_none_or(|&q| !same(q, p)) {
                chain.push(p);
            }
        }
        RateRegion2D { chain }
    }

    /// Upper-right boundary vertices in increasing `R1`, from the `R2` axis
    /// to the `R1` axis.
    pub fn frontier(&self) -> &[Pt] {
        &self.chain
    }

    /// Counterclockwise polygon starting at the origin.
    pub fn polygon(&self) -> Vec<Pt> {
        let mut out: Vec<Pt> = vec![[0.0, 0.0]];
        for &p in self.chain.iter().rev() {
            if !same(*out.last().unwrap(), p) && !same(out[0], p) {
                out.push(p);
            }
        }
        out
    }

    pub fn max_r1(&self) -> f64 {
        self.chain.last().map_or(0.0, |p| p[0])
    }

    pub fn max_r2(&self) -> f64 {
        self.chain.first().map_or(0.0, |p| p[1])
    }

    pub fn max_sum(&self) -> f64 {
        self.chain.iter().fold(0.0f64, |m, p| m.max(p[0] + p[1]))
    }

    pub fn area(&self) -> f64 {
        let poly = self.polygon();
        let n = poly.len();
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = (poly[i], poly[(i + 1) % n]);
                a[0] * b[1] - b[0] * a[1]
            })
            .sum::<f64>()
    }

    /// Halfspace rows (over `R1, R2`) whose intersection with the quadrant is
    /// exactly this region.
    pub fn halfspaces(&self) -> Vec<Row> {
        let mut rows = vec![
            Row { coeffs: vec![1.0, 0.0], rhs: self.max_r1() },
            Row { coeffs: vec![0.0, 1.0], rhs: self.max_r2() },
        ];
        for w in self.chain.windows(2) {
            let (p, q) = (w[0], w[1]);
            let n = [p[1] - q[1], q[0] - p[0]];
            if n[0] > VERTEX_EPS && n[1] > VERTEX_EPS {
                rows.push(Row { coeffs: n.to_vec(), rhs: n[0] * p[0] + n[1] * p[1] });
            }
        }
        rows
    }

    pub fn to_system(&self) -> HalfspaceSystem {
        HalfspaceSystem { vars: vec!["R1".into(), "R2".into()], rows: self.halfspaces() }
    }

    /// Membership with outward slack `tol` (Euclidean distance to each
    /// supporting line).
    pub fn contains(&self, p: Pt, tol: f64) -> bool {
        p[0] >= -tol
            && p[1] >= -tol
            && self.halfspaces().iter().all(|r| {
                let norm = r.coeffs[0].hypot(r.coeffs[1]);
                (r.coeffs[0] * p[0] + r.coeffs[1] * p[1] - r.rhs) / norm <= tol
            })
    }

    /// Every frontier vertex of `other` lies in `self` within `tol`.
    pub fn contains_region(&self, other: &RateRegion2D, tol: f64) -> bool {
        other.chain.iter().all(|&p| self.contains(p, tol))
    }

    /// Euclidean distance from `p` to the region (0 inside).
    pub fn distance(&self, p: Pt) -> f64 {
        if self.contains(p, 0.0) {
            return 0.0;
        }
        let poly = self.polygon();
        let n = poly.len();
        if n == 1 {
            return (p[0] - poly[0][0]).hypot(p[1] - poly[0][1]);
        }
        (0..n).map(|i| segment_distance(p, poly[i], poly[(i + 1) % n])).fold(f64::INFINITY, f64::min)
    }

    pub fn intersect(&self, other: &RateRegion2D) -> RateRegion2D {
        let mut rows = self.halfspaces();
        rows.extend(other.halfspaces());
        region_from_rows(&rows).expect("intersection of bounded regions containing the origin")
    }

    pub fn union_hull(regions: &[RateRegion2D]) -> RateRegion2D {
        let pts: Vec<Pt> = regions.iter().flat_map(|r| r.chain.iter().copied()).collect();
        RateRegion2D::from_points(&pts)
    }

    /// Largest distance from a frontier vertex of `self` to `other`.
    pub fn max_excess_over(&self, other: &RateRegion2D) -> f64 {
        self.chain.iter().map(|&p| other.distance(p)).fold(0.0, f64::max)
    }

    /// Hausdorff-style vertex distance between two regions.
    pub fn vertex_distance(&self, other: &RateRegion2D) -> f64 {
        self.max_excess_over(other).max(other.max_excess_over(self))
    }
}

fn segment_distance(p: Pt, a: Pt, b: Pt) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) };
    let q = [a[0] + t * d[0], a[1] + t * d[1]];
    (p[0] - q[0]).hypot(p[1] - q[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sys2(rows: &[([f64; 2], f64)]) -> HalfspaceSystem {
        let mut s = HalfspaceSystem::new(&["R1", "R2"]).unwrap();
        for (c, b) in rows {
            s.push(c.to_vec(), *b).unwrap();
        }
        s
    }

    fn approx_chain(a: &[Pt], b: &[Pt], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(p, q)| (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol)
    }

    #[test]
    fn fm_hand_example() {
        let mut s = HalfspaceSystem::new(&["S1", "T1"]).unwrap();
        s.add(&[("S1", 1.0)], 2.0).unwrap();
        s.add(&[("T1", 1.0)], 1.0).unwrap();
        s.add_sum(&["S1", "T1"], 2.5).unwrap();
        let p = s.substitute_sum("R1", "S1", "T1").unwrap().fm_eliminate("T1").unwrap();
        assert_eq!(p.vars(), &["R1".to_string()]);
        assert_eq!(p.rows().len(), 1);
        assert!((p.rows()[0].rhs - 2.5).abs() < 1e-12);
        assert_eq!(p.rows()[0].coeffs, vec![1.0]);
    }

    #[test]
    fn fm_unconstrained_variable() {
        let mut s = HalfspaceSystem::new(&["A", "B", "C"]).unwrap();
        s.add(&[("A", 1.0)], 1.0).unwrap();
        s.add(&[("A", 1.0), ("B", 1.0)], 1.5).unwrap();
        let p = s.fm_eliminate("C").unwrap();
        assert_eq!(p.vars(), &["A".to_string(), "B".to_string()]);
        assert_eq!(p.rows().len(), 2);
        assert!(matches!(s.fm_eliminate("Q"), Err(QicError::UnknownVariable(_))));
    }

    #[test]
    fn pentagon_corners() {
        let r = sys2(&[([1.0, 0.0], 1.0), ([0.0, 1.0], 1.0), ([1.0, 1.0], 1.5)]).to_region2d().unwrap();
        assert!(approx_chain(r.frontier(), &[[0.0, 1.0], [0.5, 1.0], [1.0, 0.5], [1.0, 0.0]], 1e-12));
        let poly = r.polygon();
        assert_eq!(poly.len(), 5);
        assert_eq!(poly[0], [0.0, 0.0]);
        assert!((r.area() - (1.0 - 0.125)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_point_region() {
        let r = sys2(&[([1.0, 0.0], 0.0), ([0.0, 1.0], 0.0)]).to_region2d().unwrap();
        assert_eq!(r.frontier(), &[[0.0, 0.0]]);
        assert!(r.contains([0.0, 0.0], 1e-9));
        assert!(!r.contains([1e-6, 0.0], 1e-9));
        assert_eq!(r.max_sum(), 0.0);
    }

    #[test]
    fn region_errors() {
        assert!(matches!(sys2(&[([1.0, 0.0], 1.0)]).to_region2d(), Err(QicError::UnboundedRegion)));
        assert!(matches!(sys2(&[([1.0, 0.0], -1.0), ([0.0, 1.0], 1.0)]).to_region2d(), Err(QicError::EmptyRegion)));
        assert!(sys2(&[([1.0, -1.0], 1.0), ([0.0, 1.0], 1.0)]).to_region2d().is_ok());
        assert!(matches!(sys2(&[([1.0, -1.0], 1.0)]).to_region2d(), Err(QicError::UnboundedRegion)));
    }

    #[test]
    fn union_of_axis_rectangles_is_triangle() {
        let a = RateRegion2D::from_points(&[[1.0, 0.0]]);
        let b = RateRegion2D::from_points(&[[0.0, 1.0]]);
        let h = RateRegion2D::union_hull(&[a, b]);
        assert!(h.contains([0.5, 0.5], 1e-9));
        assert!(!h.contains([0.6, 0.6], 1e-9));
        assert!(approx_chain(h.frontier(), &[[0.0, 1.0], [1.0, 0.0]], 1e-12));
    }

    #[test]
    fn intersect_with_self_is_identity() {
        let r = sys2(&[([1.0, 0.0], 1.0), ([0.0, 1.0], 0.7), ([1.0, 1.0], 1.5)]).to_region2d().unwrap();
        assert!(approx_chain(r.intersect(&r).frontier(), r.frontier(), 1e-12));
    }

    #[test]
    fn segment_regions_intersect() {
        let a = RateRegion2D::from_points(&[[1.0, 0.0]]);
        let b = RateRegion2D::from_points(&[[2.0, 1.0]]);
        let i = a.intersect(&b);
        assert!(approx_chain(i.frontier(), &[[0.0, 0.0], [1.0, 0.0]], 1e-12));
        assert!((i.distance([1.0, 1.0]) - 1.0).abs() < 1e-12);
    }

    fn random_pentagon(rng: &mut ChaCha8Rng) -> RateRegion2D {
        let a = rng.random_range(0.1..1.0);
        let b = rng.random_range(0.1..1.0);
        let s = rng.random_range(0.05..(a + b));
        sys2(&[([1.0, 0.0], a), ([0.0, 1.0], b), ([1.0, 1.0], s)]).to_region2d().unwrap()
    }

    #[test]
    fn pentagon_intersection_matches_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let (a, b) = (random_pentagon(&mut rng), random_pentagon(&mut rng));
            let i = a.intersect(&b);
            for _ in 0..1000 {
                let p = [rng.random_range(0.0..1.2), rng.random_range(0.0..1.2)];
                let in_both = a.contains(p, 0.0) && b.contains(p, 0.0);
                let near = a.distance(p) < 1e-7 || b.distance(p) < 1e-7 || i.distance(p) < 1e-7;
                if !near {
                    assert_eq!(i.contains(p, 1e-9), in_both, "{p:?}");
                }
            }
        }
    }

    #[test]
    fn downward_closure_by_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let r = sys2(&[([1.0, 2.0], 2.0), ([3.0, 1.0], 3.0), ([1.0, -1.0], 0.5)]).to_region2d().unwrap();
        for _ in 0..500 {
            let p = [rng.random_range(0.0..1.2), rng.random_range(0.0..1.2)];
            if r.contains(p, 0.0) {
                let q = [p[0] * rng.random::<f64>(), p[1] * rng.random::<f64>()];
                assert!(r.contains(q, 1e-12));
            }
        }
    }

    fn random_system(rng: &mut ChaCha8Rng, vars: &[&str], rows: usize) -> HalfspaceSystem {
        let mut s = HalfspaceSystem::new(vars).unwrap();
        for v in vars {
            s.add(&[(v, 1.0)], rng.random_range(0.5..2.0)).unwrap();
        }
        for _ in 0..rows {
            let c: Vec<f64> = (0..vars.len()).map(|_| rng.random_range(-1..=2) as f64).collect();
            s.push(c, rng.random_range(0.0..3.0)).unwrap();
        }
        s
    }

    #[test]
    fn elimination_order_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let s = random_system(&mut rng, &["A", "B", "C", "D"], 4);
            let a = s.fm_eliminate("C").unwrap().fm_eliminate("D").unwrap();
            let b = s.fm_eliminate("D").unwrap().fm_eliminate("C").unwrap();
            match (a.to_region2d(), b.to_region2d()) {
                (Ok(ra), Ok(rb)) => assert!(ra.vertex_distance(&rb) <= 1e-8),
                (ra, rb) => assert_eq!(ra.is_err(), rb.is_err()),
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn region_invariant_under_point_order(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pts: Vec<Pt> = (0..8).map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)]).collect();
            let a = RateRegion2D::from_points(&pts);
            pts.reverse();
            pts.swap(1, 5);
            let b = RateRegion2D::from_points(&pts);
            prop_assert!(a.vertex_distance(&b) <= 1e-9);
            for p in &pts {
                prop_assert!(a.contains(*p, 1e-9));
            }
        }

        #[test]
        fn intersection_is_conjunction(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (random_pentagon(&mut rng), random_pentagon(&mut rng));
            let i = a.intersect(&b);
            for _ in 0..50 {
                let p = [rng.random_range(0.0..1.2), rng.random_range(0.0..1.2)];
                if a.distance(p) > 1e-7 || b.distance(p) > 1e-7 || (a.contains(p, 0.0) && b.contains(p, 0.0)) {
                    let lhs = i.contains(p, 1e-9);
                    let rhs = a.contains(p, 1e-9) && b.contains(p, 1e-9);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
