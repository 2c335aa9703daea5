//! Gaussian rate splitting: successive decoding over all decoding-order
//! pairs, and the Han-Kobayashi region per power split.
//!
//! Sender `i` splits its power into a common stream `W_i` with fraction
//! `lambda_i` and a personal stream `U_i` with the rest. Each receiver
//! decodes its own personal stream and both common streams; the other
//! personal stream is noise. No time-sharing across splits is used beyond
//! the convex hull.

use rayon::prelude::*;
use serde::Serialize;

use super::{pentagon, project_hk, IcInfo, RatePoint, HK_VARS};
use crate::channels::{gaussian_cmi, GaussianIc};
use crate::error::{QicError, Result};
use crate::geometry::{HalfspaceSystem, RateRegion2D};

const U1: usize = 0;
const W1: usize = 1;
const U2: usize = 2;
const W2: usize = 3;
const STREAM_NAMES: [&str; 4] = ["U1", "W1", "U2", "W2"];

/// Streams decoded by each receiver.
const DECODED: [[usize; 3]; 2] = [[U1, W1, W2], [U2, W2, W1]];

const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// One successive-decoding point. Orders list stream names in decoding order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitPoint {
    pub lambda1: f64,
    pub lambda2: f64,
    pub order1: [&'static str; 3],
    pub order2: [&'static str; 3],
    pub r1: f64,
    pub r2: f64,
}

/// `0, step, ..., 1` with the end point included exactly.
pub fn split_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(QicError::InvalidArgument(format!("split step {step} outside (0, 1]")));
    }
    let n = (1.0 / step).round() as usize;
    if ((n as f64) * step - 1.0).abs() > 1e-9 {
        return Err(QicError::InvalidArgument(format!("split step {step} does not divide 1")));
    }
    Ok((0..=n).map(|k| k as f64 / n as f64).collect())
}

fn check_lambdas(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() || lambdas.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return Err(QicError::InvalidArgument("split fractions must be a non-empty subset of [0, 1]".into()));
    }
    Ok(())
}

/// Received stream powers `[U1, W1, U2, W2]` at a receiver.
fn stream_powers(ic: &GaussianIc, receiver: usize, l1: f64, l2: f64) -> [f64; 4] {
    let [a, b] = ic.received(receiver);
    [(1.0 - l1) * a, l1 * a, (1.0 - l2) * b, l2 * b]
}

/// Rates of the streams a receiver decodes in `order` (indices into its
/// decoded triple), indexed by stream.
fn successive_rates(powers: &[f64; 4], decoded: &[usize; 3], order: &[usize; 3]) -> [f64; 4] {
    let mut rates = [f64::INFINITY; 4];
    let mut known: Vec<usize> = Vec::with_capacity(3);
    for &k in order {
        let s = decoded[k];
        rates[s] = gaussian_cmi(powers, &[s], &known);
        known.push(s);
    }
    rates
}

/// Successive decoding with rate splitting over every split pair in
/// `lambdas x lambdas` and all 6 x 6 decoding-order pairs.
pub fn gaussian_sd_rs(ic: &GaussianIc, lambdas: &[f64]) -> Result<Vec<SplitPoint>> {
    check_lambdas(lambdas)?;
    let mut out = Vec::with_capacity(lambdas.len() * lambdas.len() * 36);
    for &l1 in lambdas {
        for &l2 in lambdas {
            let p1 = stream_powers(ic, 1, l1, l2);
            let p2 = stream_powers(ic, 2, l1, l2);
            for o1 in &ORDERS {
                let a = successive_rates(&p1, &DECODED[0], o1);
                for o2 in &ORDERS {
                    let b = successive_rates(&p2, &DECODED[1], o2);
                    let r1 = a[U1] + a[W1].min(b[W1]);
                    let r2 = b[U2] + a[W2].min(b[W2]);
                    out.push(SplitPoint {
                        lambda1: l1,
                        lambda2: l2,
                        order1: o1.map(|k| STREAM_NAMES[DECODED[0][k]]),
                        order2: o2.map(|k| STREAM_NAMES[DECODED[1][k]]),
                        r1,
                        r2,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Han-Kobayashi region for one split, projected onto `(R1, R2)`.
pub fn gaussian_hk_split(ic: &GaussianIc, l1: f64, l2: f64) -> Result<RateRegion2D> {
    check_lambdas(&[l1, l2])?;
    let mut s = HalfspaceSystem::new(&HK_VARS)?;
    for (receiver, own_s, own_u) in [(1, "S1", U1), (2, "S2", U2)] {
        let p = stream_powers(ic, receiver, l1, l2);
        let i = |subject: &[usize], cond: &[usize]| gaussian_cmi(&p, subject, cond);
        s.add_sum(&[own_s], i(&[own_u], &[W1, W2]))?;
        s.add_sum(&["T1"], i(&[W1], &[own_u, W2]))?;
        s.add_sum(&["T2"], i(&[W2], &[own_u, W1]))?;
        s.add_sum(&[own_s, "T1"], i(&[own_u, W1], &[W2]))?;
        s.add_sum(&[own_s, "T2"], i(&[own_u, W2], &[W1]))?;
        s.add_sum(&["T1", "T2"], i(&[W1, W2], &[own_u]))?;
        s.add_sum(&[own_s, "T1", "T2"], i(&[own_u, W1, W2], &[]))?;
    }
    project_hk(&s)
}

/// Hull of the per-split Han-Kobayashi regions.
pub fn gaussian_hk(ic: &GaussianIc, lambdas: &[f64]) -> Result<RateRegion2D> {
    check_lambdas(lambdas)?;
    let pairs: Vec<(f64, f64)> = lambdas.iter().flat_map(|&a| lambdas.iter().map(move |&b| (a, b))).collect();
    let parts: Vec<Result<RateRegion2D>> = pairs.par_iter().map(|&(a, b)| gaussian_hk_split(ic, a, b)).collect();
    Ok(RateRegion2D::union_hull(&parts.into_iter().collect::<Result<Vec<_>>>()?))
}

/// MAC pentagon seen by receiver 1 or 2.
pub fn gaussian_mac_pentagon(ic: &GaussianIc, receiver: usize) -> RateRegion2D {
    let p = ic.received(receiver);
    pentagon(gaussian_cmi(&p, &[0], &[1]), gaussian_cmi(&p, &[1], &[0]), gaussian_cmi(&p, &[0, 1], &[]))
}

/// How far the Han-Kobayashi frontier reaches beyond the successive-decoding
/// hull.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrontierGap {
    /// Largest distance from an HK frontier vertex to the SD+RS hull.
    pub max_gap: f64,
    pub hk_area: f64,
    pub sd_rs_area: f64,
    /// `sd_rs_area / hk_area` (1 when both are empty).
    pub area_ratio: f64,
    pub hk_max_sum: f64,
    pub sd_rs_max_sum: f64,
}

impl FrontierGap {
    pub fn between(hk: &RateRegion2D, sd_rs: &RateRegion2D) -> Self {
        let (hk_area, sd_rs_area) = (hk.area(), sd_rs.area());
        FrontierGap {
            max_gap: hk.max_excess_over(sd_rs),
            hk_area,
            sd_rs_area,
            area_ratio: if hk_area > 0.0 { sd_rs_area / hk_area } else { 1.0 },
            hk_max_sum: hk.max_sum(),
            sd_rs_max_sum: sd_rs.max_sum(),
        }
    }
}

/// Everything plotted for one parameter set.
#[derive(Clone, Debug, Serialize)]
pub struct GaussianFigure {
    pub ic: GaussianIc,
    pub lambdas: Vec<f64>,
    pub mac1: RateRegion2D,
    pub mac2: RateRegion2D,
    pub hk: RateRegion2D,
    pub sd_rs: Vec<SplitPoint>,
    pub sd_rs_hull: RateRegion2D,
    pub sd_points: [RatePoint; 4],
    pub gap: FrontierGap,
}

impl GaussianFigure {
    pub fn compute(ic: &GaussianIc, lambdas: &[f64]) -> Result<Self> {
        let sd_rs = gaussian_sd_rs(ic, lambdas)?;
        let pts: Vec<[f64; 2]> = sd_rs.iter().map(|p| [p.r1, p.r2]).collect();
        let sd_rs_hull = RateRegion2D::from_points(&pts);
        let hk = gaussian_hk(ic, lambdas)?;
        let gap = FrontierGap::between(&hk, &sd_rs_hull);
        Ok(GaussianFigure {
            ic: *ic,
            lambdas: lambdas.to_vec(),
            mac1: gaussian_mac_pentagon(ic, 1),
            mac2: gaussian_mac_pentagon(ic, 2),
            hk,
            sd_rs,
            sd_rs_hull,
            sd_points: IcInfo::from_gaussian(ic).sd_points(),
            gap,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::GaussTerm;
    use approx::assert_abs_diff_eq;

    fn small() -> GaussianIc {
        GaussianIc::new(1.7, 2.0, 3.4, 4.0).unwrap()
    }

    #[test]
    fn grid_includes_end_points() {
        let g = split_grid(0.1).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert!(split_grid(0.3).is_err());
        assert!(split_grid(0.0).is_err());
    }

    #[test]
    fn all_personal_split_is_treating_interference_as_noise() {
        let ic = small();
        let pts = gaussian_sd_rs(&ic, &[0.0]).unwrap();
        assert_eq!(pts.len(), 36);
        for p in &pts {
            assert_abs_diff_eq!(p.r1, ic.mi(GaussTerm::I11), epsilon = 1e-12);
            assert_abs_diff_eq!(p.r2, ic.mi(GaussTerm::I22), epsilon = 1e-12);
        }
    }

    #[test]
    fn all_common_split_hits_compound_mac_corner() {
        let ic = small();
        let info = IcInfo::from_gaussian(&ic);
        let pts = gaussian_sd_rs(&ic, &[1.0]).unwrap();
        let sim = info.sim_region();
        for p in &pts {
            assert!(sim.contains([p.r1, p.r2], 1e-12));
        }
        let p2 = &info.sd_points()[1];
        assert!(pts.iter().any(|p| (p.r1 - p2.r1).abs() < 1e-12 && (p.r2 - p2.r2).abs() < 1e-12));
    }

    #[test]
    fn extreme_splits_reach_every_sd_point() {
        for ic in [small(), GaussianIc::new(343.0, 296.0, 5.0, 5.0).unwrap()] {
            let pts = gaussian_sd_rs(&ic, &[0.0, 1.0]).unwrap();
            for q in IcInfo::from_gaussian(&ic).sd_points() {
                assert!(
                    pts.iter().any(|p| (p.r1 - q.r1).abs() < 1e-12 && (p.r2 - q.r2).abs() < 1e-12),
                    "{} missing",
                    q.label
                );
            }
        }
    }

    #[test]
    fn sd_rs_points_lie_in_hk_region_of_their_split() {
        let ic = GaussianIc::new(343.0, 296.0, 5.0, 5.0).unwrap();
        let lambdas = split_grid(0.25).unwrap();
        for p in gaussian_sd_rs(&ic, &lambdas).unwrap() {
            let hk = gaussian_hk_split(&ic, p.lambda1, p.lambda2).unwrap();
            assert!(hk.contains([p.r1, p.r2], 1e-9), "{p:?}");
        }
    }

    #[test]
    fn hk_all_common_split_is_compound_mac() {
        let ic = small();
        let hk = gaussian_hk_split(&ic, 1.0, 1.0).unwrap();
        let sim = gaussian_mac_pentagon(&ic, 1).intersect(&gaussian_mac_pentagon(&ic, 2));
        assert!(hk.vertex_distance(&sim) < 1e-9);
    }

    #[test]
    fn figure_gap_is_nonnegative() {
        let fig = GaussianFigure::compute(&small(), &split_grid(0.1).unwrap()).unwrap();
        assert!(fig.gap.max_gap >= 0.0);
        assert!(fig.hk.contains_region(&fig.sd_rs_hull, 1e-6));
    }
}
