//! Certification of the very strong and strong interference conditions by
//! evaluating their slacks over gridded and sampled product distributions.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{CcqqChannel, SENDER_NAMES};
use crate::entropy::{h2, CqEnsemble};
use crate::error::{QicError, Result};
use crate::qmatrix::random::simplex;

/// A condition holds when its minimum slack is at least `-HOLDS_TOL`.
pub const HOLDS_TOL: f64 = 1e-9;
pub const DEFAULT_GRID_STEP: f64 = 0.02;
/// Dirichlet draws used for alphabets larger than two.
pub const DIRICHLET_SAMPLES: usize = 10_000;
const SAMPLE_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    VeryStrong,
    Strong,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::VeryStrong => "very-strong",
            Mode::Strong => "strong",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = QicError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "very-strong" => Ok(Mode::VeryStrong),
            "strong" => Ok(Mode::Strong),
            other => Err(QicError::InvalidArgument(format!("unknown interference mode '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub mode: Mode,
    pub holds: bool,
    pub min_slack: f64,
    /// `(p_X1, p_X2)` attaining the minimum.
    pub argmin: (Vec<f64>, Vec<f64>),
    pub grid_step: f64,
    pub refined: bool,
    pub method: String,
    pub evaluations: usize,
}

/// Slack evaluator for one channel; reuses the induced ensembles.
pub struct SlackEvaluator {
    mode: Mode,
    rx1: CqEnsemble,
    rx2: CqEnsemble,
    alphabets: [usize; 2],
}

impl SlackEvaluator {
    pub fn new(ch: &CcqqChannel, mode: Mode) -> Result<Self> {
        let a = ch.alphabets();
        let u1 = vec![1.0 / a[0] as f64; a[0]];
        let u2 = vec![1.0 / a[1] as f64; a[1]];
        Ok(SlackEvaluator {
            mode,
            rx1: ch.receiver_ensemble(1, &u1, &u2)?,
            rx2: ch.receiver_ensemble(2, &u1, &u2)?,
            alphabets: a,
        })
    }

    /// Both slacks at the product distribution `(p1, p2)`.
    pub fn slacks(&self, p1: &[f64], p2: &[f64]) -> Result<[f64; 2]> {
        let probs = [p1.to_vec(), p2.to_vec()];
        let e1 = self.rx1.with_probs(&probs)?;
        let e2 = self.rx2.with_probs(&probs)?;
        let [x1, x2] = SENDER_NAMES;
        Ok(match self.mode {
            Mode::VeryStrong => [
                e2.mutual_info(&[x1], &[])? - e1.mutual_info(&[x1], &[x2])?,
                e1.mutual_info(&[x2], &[])? - e2.mutual_info(&[x2], &[x1])?,
            ],
            Mode::Strong => [
                e2.mutual_info(&[x1], &[x2])? - e1.mutual_info(&[x1], &[x2])?,
                e1.mutual_info(&[x2], &[x1])? - e2.mutual_info(&[x2], &[x1])?,
            ],
        })
    }

    pub fn min_slack(&self, p1: &[f64], p2: &[f64]) -> Result<f64> {
        let [a, b] = self.slacks(p1, p2)?;
        Ok(a.min(b))
    }
}

/// Grid points `0, step, 2 step, ..., 1` (the last point is exactly 1).
pub fn grid_points(step: f64) -> Vec<f64> {
    let n = (1.0 / step).round() as usize;
    let mut pts: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(1.0)).collect();
    if *pts.last().unwrap() < 1.0 {
        pts.push(1.0);
    }
    pts
}

fn binary(p0: f64) -> Vec<f64> {
    vec![p0, 1.0 - p0]
}

/// Distributions supported on at most two symbols, with the two-symbol
/// marginal gridded at `step`.
fn pairwise_grid(size: usize, step: f64) -> Vec<Vec<f64>> {
    if size == 1 {
        return vec![vec![1.0]];
    }
    let pts = grid_points(step);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for i in 0..size {
        for j in (i + 1)..size {
            for &t in &pts {
                let mut p = vec![0.0; size];
                p[i] = t;
                p[j] = 1.0 - t;
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn evaluate_all(eval: &SlackEvaluator, points: &[(Vec<f64>, Vec<f64>)]) -> Result<(f64, usize)> {
    let values: Vec<Result<f64>> = points.par_iter().map(|(p1, p2)| eval.min_slack(p1, p2)).collect();
    let mut best = (f64::INFINITY, 0usize);
    for (k, v) in values.into_iter().enumerate() {
        let v = v?;
        if v < best.0 {
            best = (v, k);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridOptions {
    pub step: f64,
    /// Re-scan `+-step` around the grid minimum at `step / 10` (binary inputs).
    pub refine: bool,
    pub samples: usize,
}

impl GridOptions {
    pub fn new(step: f64) -> Self {
        GridOptions { step, refine: true, samples: DIRICHLET_SAMPLES }
    }
}

pub fn check_condition(ch: &CcqqChannel, mode: Mode, opts: GridOptions) -> Result<ConditionReport> {
    if !(opts.step > 0.0 && opts.step <= 0.5) {
        return Err(QicError::InvalidArgument(format!("grid step {} outside (0, 0.5]", opts.step)));
    }
    let eval = SlackEvaluator::new(ch, mode)?;
    let [a1, a2] = eval.alphabets;
    let binary_inputs = a1 <= 2 && a2 <= 2;
    let lift = |p0: f64, size: usize| if size == 1 { vec![1.0] } else { binary(p0) };

    let mut points: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    let method;
    if binary_inputs {
        let pts = grid_points(opts.step);
        let g1: Vec<f64> = if a1 == 1 { vec![1.0] } else { pts.clone() };
        let g2: Vec<f64> = if a2 == 1 { vec![1.0] } else { pts.clone() };
        for &s in &g1 {
            for &t in &g2 {
                points.push((lift(s, a1), lift(t, a2)));
            }
        }
        method = "binary-grid".to_string();
    } else {
        let m1 = pairwise_grid(a1, opts.step);
        let m2 = pairwise_grid(a2, opts.step);
        for p in &m1 {
            for q in &m2 {
                points.push((p.clone(), q.clone()));
            }
        }
        for k in 0..opts.samples {
            let mut rng = crate::derived_rng(SAMPLE_SEED, &[k as u64]);
            let p: Vec<f64> = if a1 == 1 { vec![1.0] } else { simplex(a1, &mut rng) };
            let q: Vec<f64> = if a2 == 1 { vec![1.0] } else { simplex(a2, &mut rng) };
            points.push((p, q));
        }
        method = format!("pairwise-marginal-grid+dirichlet-{}", opts.samples);
    }
    let (mut min_slack, k) = evaluate_all(&eval, &points)?;
    let mut argmin = points[k].clone();
    let mut evaluations = points.len();

    let refined = opts.refine && binary_inputs;
    if refined {
        let fine = opts.step / 10.0;
        let around = |centre: f64, size: usize| -> Vec<f64> {
            if size == 1 {
                return vec![1.0];
            }
            (-10..=10).map(|i| centre + i as f64 * fine).filter(|v| (0.0..=1.0).contains(v)).collect()
        };
        let r1 = around(argmin.0[0], a1);
        let r2 = around(argmin.1[0], a2);
        let local: Vec<(Vec<f64>, Vec<f64>)> =
            r1.iter().flat_map(|&s| r2.iter().map(move |&t| (s, t))).map(|(s, t)| (lift(s, a1), lift(t, a2))).collect();
        let (v, k) = evaluate_all(&eval, &local)?;
        evaluations += local.len();
        if v < min_slack {
            min_slack = v;
            argmin = local[k].clone();
        }
    }
    Ok(ConditionReport {
        mode,
        holds: min_slack >= -HOLDS_TOL,
        min_slack,
        argmin,
        grid_step: opts.step,
        refined,
        method,
        evaluations,
    })
}

pub fn check_very_strong(ch: &CcqqChannel, grid_step: f64) -> Result<ConditionReport> {
    check_condition(ch, Mode::VeryStrong, GridOptions::new(grid_step))
}

pub fn check_strong(ch: &CcqqChannel, grid_step: f64) -> Result<ConditionReport> {
    check_condition(ch, Mode::Strong, GridOptions::new(grid_step))
}

/// Closed-form output entropies of the theta-swap channel with
/// `p1 = P(X1 = 0)` and `p2 = P(X2 = 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaSwapEntropies {
    pub h_b1_given_x1x2: f64,
    pub h_b1: f64,
    pub h_b2: f64,
    pub h_b2_given_x1: f64,
    pub h_b1_given_x2: f64,
    pub h_b2_given_x1x2: f64,
}

impl ThetaSwapEntropies {
    pub fn as_array(&self) -> [f64; 6] {
        [self.h_b1_given_x1x2, self.h_b1, self.h_b2, self.h_b2_given_x1, self.h_b1_given_x2, self.h_b2_given_x1x2]
    }
}

pub fn theta_swap_entropies(theta: f64, p1: f64, p2: f64) -> Result<ThetaSwapEntropies> {
    for p in [p1, p2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(QicError::InvalidArgument(format!("probability {p} outside [0,1]")));
        }
    }
    let (a, b) = (p1, p2);
    let c2 = theta.cos().powi(2);
    let s2 = theta.sin().powi(2);
    let mixed = a * (1.0 - b) + (1.0 - a) * b;
    let h_cond = mixed * h2(c2);
    Ok(ThetaSwapEntropies {
        h_b1_given_x1x2: h_cond,
        h_b1: h2(a + ((1.0 - a) * b - a * (1.0 - b)) * s2),
        h_b2: h2(b + (a * (1.0 - b) - (1.0 - a) * b) * s2),
        h_b2_given_x1: a * h2((1.0 - b) * c2) + (1.0 - a) * h2(b * c2),
        h_b1_given_x2: b * h2((1.0 - a) * c2) + (1.0 - b) * h2(a * c2),
        h_b2_given_x1x2: h_cond,
    })
}

/// The same six entropies through the generic ensemble pipeline.
pub fn theta_swap_entropies_numeric(theta: f64, p1: f64, p2: f64) -> Result<ThetaSwapEntropies> {
    let ch = crate::channels::theta_swap(theta);
    let (d1, d2) = (binary(p1), binary(p2));
    let e1 = ch.receiver_ensemble(1, &d1, &d2)?;
    let e2 = ch.receiver_ensemble(2, &d1, &d2)?;
    let [x1, x2] = SENDER_NAMES;
    Ok(ThetaSwapEntropies {
        h_b1_given_x1x2: e1.cond_entropy(&[x1, x2])?,
        h_b1: e1.cond_entropy(&[])?,
        h_b2: e2.cond_entropy(&[])?,
        h_b2_given_x1: e2.cond_entropy(&[x1])?,
        h_b1_given_x2: e1.cond_entropy(&[x2])?,
        h_b2_given_x1x2: e2.cond_entropy(&[x1, x2])?,
    })
}

/// Random product distribution pair for the given alphabets.
pub fn random_distribution_pair<R: Rng + ?Sized>(alphabets: [usize; 2], rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    (simplex(alphabets[0], rng), simplex(alphabets[1], rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{classical_embed, theta_swap};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn theta_swap_very_strong_examples() {
        assert!(check_very_strong(&theta_swap(1.5), 0.02).unwrap().holds);
        assert!(!check_very_strong(&theta_swap(0.5), 0.02).unwrap().holds);
        assert!(check_very_strong(&theta_swap(4.5), 0.02).unwrap().holds);
    }

    #[test]
    fn strong_examples() {
        assert!(check_strong(&theta_swap(FRAC_PI_2), 0.02).unwrap().holds);
        let t: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let pipes = classical_embed([2, 2], [2, 2], &t).unwrap();
        let r = check_strong(&pipes, 0.1).unwrap();
        assert!(!r.holds);
        assert!(r.min_slack < -0.5);
    }

    #[test]
    fn very_strong_implies_strong() {
        for theta in [1.0, 1.3, 1.7, 2.1] {
            let ch = theta_swap(theta);
            let vs = check_very_strong(&ch, 0.05).unwrap();
            let st = check_strong(&ch, 0.05).unwrap();
            if vs.holds {
                assert!(st.holds, "theta {theta}");
            }
            assert!(st.min_slack >= vs.min_slack - 1e-9);
        }
    }

    #[test]
    fn report_fields() {
        let r = check_very_strong(&theta_swap(1.5), 0.1).unwrap();
        assert!(r.refined);
        assert_eq!(r.grid_step, 0.1);
        assert_eq!(r.method, "binary-grid");
        assert_eq!(r.holds, r.min_slack >= -HOLDS_TOL);
        assert!(check_very_strong(&theta_swap(1.5), 0.0).is_err());
        assert!(check_very_strong(&theta_swap(1.5), 0.7).is_err());
    }

    #[test]
    fn grid_refinement_is_monotone() {
        for theta in [0.5, 0.9, 1.5, 2.3] {
            let ch = theta_swap(theta);
            let coarse = GridOptions { step: 0.1, refine: false, samples: 0 };
            let fine = GridOptions { step: 0.05, refine: false, samples: 0 };
            let a = check_condition(&ch, Mode::VeryStrong, coarse).unwrap();
            let b = check_condition(&ch, Mode::VeryStrong, fine).unwrap();
            assert!(b.min_slack <= a.min_slack + 1e-9);
        }
    }

    #[test]
    fn mirror_symmetry() {
        for theta in [0.7, 1.2, 1.4] {
            let a = check_very_strong(&theta_swap(theta), 0.05).unwrap();
            let b = check_very_strong(&theta_swap(PI - theta), 0.05).unwrap();
            assert_abs_diff_eq!(a.min_slack, b.min_slack, epsilon = 1e-9);
        }
    }

    #[test]
    fn non_binary_alphabets_use_sampling() {
        let t: Vec<Vec<f64>> = (0..9)
            .map(|i| {
                let (x1, x2) = (i / 3, i % 3);
                (0..9).map(|j| if j == x1 * 3 + x2 { 1.0 } else { 0.0 }).collect()
            })
            .collect();
        let ch = classical_embed([3, 3], [3, 3], &t).unwrap();
        let r = check_condition(&ch, Mode::Strong, GridOptions { step: 0.25, refine: true, samples: 200 }).unwrap();
        assert!(r.method.starts_with("pairwise-marginal-grid"));
        assert!(!r.refined);
        assert!(!r.holds);
    }

    #[test]
    fn closed_form_examples() {
        let e = theta_swap_entropies(FRAC_PI_2, 0.5, 0.5).unwrap();
        assert_abs_diff_eq!(e.h_b1_given_x1x2, 0.0, epsilon = 1e-15);
        let e = theta_swap_entropies(0.83, 1.0, 1.0).unwrap();
        for v in e.as_array() {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        }
        assert!(theta_swap_entropies(0.3, 1.2, 0.5).is_err());
        let e = theta_swap_entropies(0.4, 0.5, 0.5).unwrap();
        assert_abs_diff_eq!(e.h_b1_given_x1x2, 0.5 * h2(0.4f64.cos().powi(2)), epsilon = 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn closed_form_matches_pipeline(theta in 0.0..(2.0 * PI), p1 in 0.0..=1.0f64, p2 in 0.0..=1.0f64) {
            let closed = theta_swap_entropies(theta, p1, p2).unwrap().as_array();
            let numeric = theta_swap_entropies_numeric(theta, p1, p2).unwrap().as_array();
            for (c, n) in closed.iter().zip(&numeric) {
                prop_assert!((c - n).abs() <= 1e-9, "closed {closed:?} numeric {numeric:?}");
            }
        }
    }
}
