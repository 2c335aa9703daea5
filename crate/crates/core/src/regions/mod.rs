//! Rate-region builders for multiple access and interference channels.

mod gaussian;

pub use gaussian::{
    gaussian_hk, gaussian_hk_split, gaussian_mac_pentagon, gaussian_sd_rs, split_grid, FrontierGap, GaussianFigure,
    SplitPoint,
};

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{CcqMac, CcqqChannel, GaussTerm, GaussianIc, HkInput, MAC_NAMES, SENDER_NAMES};
use crate::conditions::{check_condition, grid_points, GridOptions, Mode, DEFAULT_GRID_STEP};
use crate::entropy::{CqEnsemble, Register};
use crate::error::{QicError, Result};
use crate::geometry::{HalfspaceSystem, RateRegion2D};
use crate::qmatrix::random::simplex;

/// Product input distributions `(p_X1, p_X2)` to take unions over.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistSampler {
    /// Binary alphabets gridded at `step`; larger alphabets gridded on
    /// two-symbol marginals.
    Grid {
        step: f64,
    },
    Random {
        count: usize,
        seed: u64,
    },
    Explicit(Vec<(Vec<f64>, Vec<f64>)>),
}

fn marginal_grid(size: usize, step: f64) -> Vec<Vec<f64>> {
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
    if size > 2 {
        out.push(vec![1.0 / size as f64; size]);
    }
    out
}

impl DistSampler {
    pub fn samples(&self, alphabets: [usize; 2]) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        match self {
            DistSampler::Grid { step } => {
                if !(*step > 0.0 && *step <= 0.5) {
                    return Err(QicError::InvalidArgument(format!("grid step {step} outside (0, 0.5]")));
                }
                let g1 = marginal_grid(alphabets[0], *step);
                let g2 = marginal_grid(alphabets[1], *step);
                Ok(g1.iter().flat_map(|p| g2.iter().map(move |q| (p.clone(), q.clone()))).collect())
            }
            DistSampler::Random { count, seed } => Ok((0..*count)
                .map(|k| {
                    let mut rng = crate::derived_rng(*seed, &[k as u64]);
                    (simplex(alphabets[0], &mut rng), simplex(alphabets[1], &mut rng))
                })
                .collect()),
            DistSampler::Explicit(list) => {
                for (p, q) in list {
                    if p.len() != alphabets[0] || q.len() != alphabets[1] {
                        return Err(QicError::DimensionMismatch(format!(
                            "explicit distribution sizes ({}, {}) do not match alphabets {alphabets:?}",
                            p.len(),
                            q.len()
                        )));
                    }
                }
                Ok(list.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatePoint {
    pub label: String,
    pub r1: f64,
    pub r2: f64,
}

impl RatePoint {
    pub fn new(label: impl Into<String>, r1: f64, r2: f64) -> Self {
        RatePoint { label: label.into(), r1: r1.max(0.0), r2: r2.max(0.0) }
    }

    pub fn xy(&self) -> [f64; 2] {
        [self.r1, self.r2]
    }
}

/// Two-sender MAC region `R1 <= I(X;B|Y)`, `R2 <= I(Y;B|X)`, `R1+R2 <= I(XY;B)`
/// for an ensemble whose first two registers are the senders.
pub fn mac2_system_from_ensemble(e: &CqEnsemble, x: &str, y: &str) -> Result<HalfspaceSystem> {
    let mut s = HalfspaceSystem::new(&["R1", "R2"])?;
    s.add(&[("R1", 1.0)], e.mutual_info(&[x], &[y])?)?;
    s.add(&[("R2", 1.0)], e.mutual_info(&[y], &[x])?)?;
    s.add_sum(&["R1", "R2"], e.mutual_info(&[x, y], &[])?)?;
    Ok(s)
}

pub fn mac2_system(mac: &CcqMac, p1: &[f64], p2: &[f64]) -> Result<HalfspaceSystem> {
    if mac.senders() != 2 {
        return Err(QicError::InvalidArgument("mac2_system needs a two-sender channel".into()));
    }
    let e = mac.ensemble(&[p1.to_vec(), p2.to_vec()])?;
    mac2_system_from_ensemble(&e, MAC_NAMES[0], MAC_NAMES[1])
}

pub const MAC3_ROW_LABELS: [&str; 7] = ["R1", "R2", "R3", "R1+R2", "R1+R3", "R2+R3", "R1+R2+R3"];
pub const MINENT3_ROW_LABELS: [&str; 7] = ["R1", "R2", "R3", "R1+R2", "R2+R3", "R1+R3", "R1+R2+R3"];

fn three_sender_ensemble(mac: &CcqMac, probs: &[Vec<f64>; 3]) -> Result<CqEnsemble> {
    if mac.senders() != 3 {
        return Err(QicError::InvalidArgument("three-sender system needs a cccq channel".into()));
    }
    mac.ensemble(probs)
}

/// Seven-row region of the three-sender simultaneous decoder, rows in the
/// order of [`MAC3_ROW_LABELS`].
pub fn mac3_system(mac: &CcqMac, probs: &[Vec<f64>; 3]) -> Result<HalfspaceSystem> {
    let e = three_sender_ensemble(mac, probs)?;
    let [x, y, z] = MAC_NAMES;
    let mut s = HalfspaceSystem::new(&["R1", "R2", "R3"])?;
    s.add_sum(&["R1"], e.mutual_info(&[x], &[y, z])?)?;
    s.add_sum(&["R2"], e.mutual_info(&[y], &[x, z])?)?;
    s.add_sum(&["R3"], e.mutual_info(&[z], &[x, y])?)?;
    s.add_sum(&["R1", "R2"], e.mutual_info(&[x, y], &[z])?)?;
    s.add_sum(&["R1", "R3"], e.mutual_info(&[x, z], &[y])?)?;
    s.add_sum(&["R2", "R3"], e.mutual_info(&[y, z], &[x])?)?;
    s.add_sum(&["R1", "R2", "R3"], e.mutual_info(&[x, y, z], &[])?)?;
    Ok(s)
}

/// Min-entropy region with rows in the order of [`MINENT3_ROW_LABELS`].
/// `perm[k]` is the sender playing role `k` of `(X, Y, Z)`; rate variables
/// follow their senders.
pub fn minentropy3_system(mac: &CcqMac, probs: &[Vec<f64>; 3], perm: [usize; 3]) -> Result<HalfspaceSystem> {
    let mut sorted = perm;
    sorted.sort_unstable();
    if sorted != [0, 1, 2] {
        return Err(QicError::InvalidArgument(format!("{perm:?} is not a permutation of 0,1,2")));
    }
    let e = three_sender_ensemble(mac, probs)?;
    let rates = ["R1", "R2", "R3"];
    let (x, y, z) = (MAC_NAMES[perm[0]], MAC_NAMES[perm[1]], MAC_NAMES[perm[2]]);
    let (r1, r2, r3) = (rates[perm[0]], rates[perm[1]], rates[perm[2]]);
    let h_all = e.cond_entropy(&[x, y, z])?;
    let mut s = HalfspaceSystem::new(&rates)?;
    s.add_sum(&[r1], e.cond_min_entropy(&[z, y])? - h_all)?;
    s.add_sum(&[r2], e.cond_min_entropy(&[x, z])? - h_all)?;
    s.add_sum(&[r3], e.mutual_info(&[z], &[x, y])?)?;
    s.add_sum(&[r1, r2], e.cond_min_entropy(&[z])? - h_all)?;
    s.add_sum(&[r2, r3], e.cond_min_entropy(&[x])? - h_all)?;
    s.add_sum(&[r1, r3], e.mutual_info(&[x, z], &[y])?)?;
    s.add_sum(&[r1, r2, r3], e.mutual_info(&[x, y, z], &[])?)?;
    Ok(s)
}

/// Information quantities of an interference channel at one input
/// distribution. `i{a}_b{b}` is `I(X_a; B_b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IcInfo {
    pub i1_b1_given2: f64,
    pub i2_b1_given1: f64,
    pub i12_b1: f64,
    pub i1_b1: f64,
    pub i2_b1: f64,
    pub i1_b2_given2: f64,
    pub i2_b2_given1: f64,
    pub i12_b2: f64,
    pub i1_b2: f64,
    pub i2_b2: f64,
}

impl IcInfo {
    pub fn from_channel(ch: &CcqqChannel, p1: &[f64], p2: &[f64]) -> Result<Self> {
        let e1 = ch.receiver_ensemble(1, p1, p2)?;
        let e2 = ch.receiver_ensemble(2, p1, p2)?;
        Self::from_ensembles(&e1, &e2)
    }

    fn from_ensembles(e1: &CqEnsemble, e2: &CqEnsemble) -> Result<Self> {
        let [x1, x2] = SENDER_NAMES;
        Ok(IcInfo {
            i1_b1_given2: e1.mutual_info(&[x1], &[x2])?,
            i2_b1_given1: e1.mutual_info(&[x2], &[x1])?,
            i12_b1: e1.mutual_info(&[x1, x2], &[])?,
            i1_b1: e1.mutual_info(&[x1], &[])?,
            i2_b1: e1.mutual_info(&[x2], &[])?,
            i1_b2_given2: e2.mutual_info(&[x1], &[x2])?,
            i2_b2_given1: e2.mutual_info(&[x2], &[x1])?,
            i12_b2: e2.mutual_info(&[x1, x2], &[])?,
            i1_b2: e2.mutual_info(&[x1], &[])?,
            i2_b2: e2.mutual_info(&[x2], &[])?,
        })
    }

    pub fn from_gaussian(ic: &GaussianIc) -> Self {
        use GaussTerm::*;
        IcInfo {
            i1_b1_given2: ic.mi(I11Given2),
            i2_b1_given1: ic.mi(I21Given1),
            i12_b1: ic.mi(ISum1),
            i1_b1: ic.mi(I11),
            i2_b1: ic.mi(I21),
            i1_b2_given2: ic.mi(I12Given2),
            i2_b2_given1: ic.mi(I22Given1),
            i12_b2: ic.mi(ISum2),
            i1_b2: ic.mi(I12),
            i2_b2: ic.mi(I22),
        }
    }

    /// MAC pentagon at receiver 1 or 2.
    pub fn pentagon(&self, receiver: usize) -> RateRegion2D {
        let (a, b, s) = if receiver == 1 {
            (self.i1_b1_given2, self.i2_b1_given1, self.i12_b1)
        } else {
            (self.i1_b2_given2, self.i2_b2_given1, self.i12_b2)
        };
        pentagon(a, b, s)
    }

    /// Both receivers decode both messages.
    pub fn sim_region(&self) -> RateRegion2D {
        self.pentagon(1).intersect(&self.pentagon(2))
    }

    /// The four successive-decoding points.
    pub fn sd_points(&self) -> [RatePoint; 4] {
        [
            RatePoint::new("P1", self.i1_b1_given2, self.i2_b1.min(self.i2_b2)),
            RatePoint::new("P2", self.i1_b1_given2.min(self.i1_b2), self.i2_b1.min(self.i2_b2_given1)),
            RatePoint::new("P3", self.i1_b1.min(self.i1_b2), self.i2_b2_given1),
            RatePoint::new("P4", self.i1_b1, self.i2_b2),
        ]
    }
}

/// `{R1 <= a, R2 <= b, R1 + R2 <= s}`, with small negative round-off clipped.
pub fn pentagon(a: f64, b: f64, s: f64) -> RateRegion2D {
    let mut sys = HalfspaceSystem::new(&["R1", "R2"]).expect("distinct names");
    sys.add(&[("R1", 1.0)], a.max(0.0)).expect("finite");
    sys.add(&[("R2", 1.0)], b.max(0.0)).expect("finite");
    sys.add_sum(&["R1", "R2"], s.max(0.0)).expect("finite");
    sys.to_region2d().expect("bounded and contains the origin")
}

fn union_over<F>(ch: &CcqqChannel, sampler: &DistSampler, f: F) -> Result<RateRegion2D>
where
    F: Fn(&IcInfo, &CcqqChannel, &[f64], &[f64]) -> Result<RateRegion2D> + Sync,
{
    let samples = sampler.samples(ch.alphabets())?;
    let a = ch.alphabets();
    let u1 = vec![1.0 / a[0] as f64; a[0]];
    let u2 = vec![1.0 / a[1] as f64; a[1]];
    let e1 = ch.receiver_ensemble(1, &u1, &u2)?;
    let e2 = ch.receiver_ensemble(2, &u1, &u2)?;
    let parts: Vec<Result<RateRegion2D>> = samples
        .par_iter()
        .map(|(p, q)| {
            let probs = [p.clone(), q.clone()];
            let info = IcInfo::from_ensembles(&e1.with_probs(&probs)?, &e2.with_probs(&probs)?)?;
            f(&info, ch, p, q)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(RateRegion2D::union_hull(&parts))
}

/// Hull over sampled distributions of the intersection of both receivers'
/// MAC pentagons.
pub fn sim_inner_bound(ch: &CcqqChannel, sampler: &DistSampler) -> Result<RateRegion2D> {
    union_over(ch, sampler, |info, _, _, _| Ok(info.sim_region()))
}

fn require(ch: &CcqqChannel, mode: Mode, grid_step: f64) -> Result<()> {
    let report = check_condition(ch, mode, GridOptions::new(grid_step))?;
    if report.holds {
        Ok(())
    } else {
        Err(QicError::Precondition(Box::new(report)))
    }
}

/// Capacity under very strong interference: hull of the rectangles
/// `[0, I(X1;B1|X2)] x [0, I(X2;B2|X1)]`. The condition is certified at
/// `grid_step` first.
pub fn vsi_capacity_with(ch: &CcqqChannel, sampler: &DistSampler, grid_step: f64) -> Result<RateRegion2D> {
    require(ch, Mode::VeryStrong, grid_step)?;
    vsi_formula(ch, sampler)
}

/// The very strong interference region formula without certifying the
/// condition.
pub fn vsi_formula(ch: &CcqqChannel, sampler: &DistSampler) -> Result<RateRegion2D> {
    union_over(ch, sampler, |info, _, _, _| Ok(RateRegion2D::from_points(&[[info.i1_b1_given2, info.i2_b2_given1]])))
}

pub fn vsi_capacity(ch: &CcqqChannel, sampler: &DistSampler) -> Result<RateRegion2D> {
    vsi_capacity_with(ch, sampler, DEFAULT_GRID_STEP)
}

/// Capacity under strong interference.
pub fn strong_capacity_with(ch: &CcqqChannel, sampler: &DistSampler, grid_step: f64) -> Result<RateRegion2D> {
    require(ch, Mode::Strong, grid_step)?;
    strong_formula(ch, sampler)
}

/// The strong interference region formula without certifying the condition.
pub fn strong_formula(ch: &CcqqChannel, sampler: &DistSampler) -> Result<RateRegion2D> {
    union_over(ch, sampler, |info, _, _, _| {
        Ok(pentagon(info.i1_b1_given2, info.i2_b2_given1, info.i12_b1.min(info.i12_b2)))
    })
}

pub fn strong_capacity(ch: &CcqqChannel, sampler: &DistSampler) -> Result<RateRegion2D> {
    strong_capacity_with(ch, sampler, DEFAULT_GRID_STEP)
}

/// Outer bound whose sum row uses the joint output `B1 B2`.
pub fn sato_outer(ch: &CcqqChannel, sampler: &DistSampler) -> Result<RateRegion2D> {
    let a = ch.alphabets();
    let u1 = vec![1.0 / a[0] as f64; a[0]];
    let u2 = vec![1.0 / a[1] as f64; a[1]];
    let joint = ch.joint_ensemble(&u1, &u2)?;
    union_over(ch, sampler, |info, _, p, q| {
        let e = joint.with_probs(&[p.to_vec(), q.to_vec()])?;
        let sum = e.mutual_info(&SENDER_NAMES, &[])?;
        Ok(pentagon(info.i1_b1_given2, info.i2_b2_given1, sum))
    })
}

pub fn sd_points(ch: &CcqqChannel, p1: &[f64], p2: &[f64]) -> Result<[RatePoint; 4]> {
    Ok(IcInfo::from_channel(ch, p1, p2)?.sd_points())
}

pub const HK_VARS: [&str; 4] = ["S1", "T1", "S2", "T2"];
const HK_REGS: [&str; 4] = ["U1", "W1", "U2", "W2"];

/// The 14-row system in `(S1, T1, S2, T2)`; `S` personal, `T` common.
pub fn hk_system(ch: &CcqqChannel, hk: &HkInput) -> Result<HalfspaceSystem> {
    hk.validate(ch.alphabets())?;
    let sizes = [hk.p_u1.len(), hk.p_w1.len(), hk.p_u2.len(), hk.p_w2.len()];
    let probs = [&hk.p_u1, &hk.p_w1, &hk.p_u2, &hk.p_w2];
    let registers: Vec<Register> = HK_REGS.iter().zip(probs).map(|(n, p)| Register::new(*n, p.clone())).collect();
    let [a1, a2] = ch.alphabets();
    let mut reduced = [Vec::with_capacity(a1 * a2), Vec::with_capacity(a1 * a2)];
    for x1 in 0..a1 {
        for x2 in 0..a2 {
            for (r, out) in reduced.iter_mut().enumerate() {
                out.push(ch.receiver_state(x1, x2, r + 1)?.into_operator().into_matrix());
            }
        }
    }
    let mut outputs = [Vec::new(), Vec::new()];
    for u1 in 0..sizes[0] {
        for w1 in 0..sizes[1] {
            for u2 in 0..sizes[2] {
                for w2 in 0..sizes[3] {
                    let flat = hk.f1[u1][w1] * a2 + hk.f2[u2][w2];
                    for r in 0..2 {
                        outputs[r].push(reduced[r][flat].clone());
                    }
                }
            }
        }
    }
    let [o1, o2] = outputs;
    let e1 = CqEnsemble::from_shared(registers.clone(), Arc::new(o1))?;
    let e2 = CqEnsemble::from_shared(registers, Arc::new(o2))?;
    let mut s = HalfspaceSystem::new(&HK_VARS)?;
    for (e, own_s, own_u) in [(&e1, "S1", "U1"), (&e2, "S2", "U2")] {
        let (w1, w2) = ("W1", "W2");
        s.add_sum(&[own_s], e.mutual_info(&[own_u], &[w1, w2])?)?;
        s.add_sum(&["T1"], e.mutual_info(&[w1], &[own_u, w2])?)?;
        s.add_sum(&["T2"], e.mutual_info(&[w2], &[own_u, w1])?)?;
        s.add_sum(&[own_s, "T1"], e.mutual_info(&[own_u, w1], &[w2])?)?;
        s.add_sum(&[own_s, "T2"], e.mutual_info(&[own_u, w2], &[w1])?)?;
        s.add_sum(&["T1", "T2"], e.mutual_info(&[w1, w2], &[own_u])?)?;
        s.add_sum(&[own_s, "T1", "T2"], e.mutual_info(&[own_u, w1, w2], &[])?)?;
    }
    Ok(s)
}

/// Projects an `(S1, T1, S2, T2)` system onto `(R1, R2) = (S1+T1, S2+T2)`.
pub fn project_hk(sys: &HalfspaceSystem) -> Result<RateRegion2D> {
    sys.substitute_sum("R1", "S1", "T1")?
        .substitute_sum("R2", "S2", "T2")?
        .fm_eliminate("T1")?
        .fm_eliminate("T2")?
        .to_region2d()
}

pub fn hk_region(ch: &CcqqChannel, hk: &HkInput) -> Result<RateRegion2D> {
    project_hk(&hk_system(ch, hk)?)
}

pub fn hk_hull(ch: &CcqqChannel, inputs: &[HkInput]) -> Result<RateRegion2D> {
    let parts: Vec<Result<RateRegion2D>> = inputs.par_iter().map(|hk| hk_region(ch, hk)).collect();
    Ok(RateRegion2D::union_hull(&parts.into_iter().collect::<Result<Vec<_>>>()?))
}

/// Han-Kobayashi inputs: for every sampled distribution the all-common,
/// all-personal and both mixed splits, plus `random` inputs with
/// `|U_i| = |W_i| = |X_i|` and random maps.
pub fn hk_inputs(alphabets: [usize; 2], sampler: &DistSampler, random: usize, seed: u64) -> Result<Vec<HkInput>> {
    let mut out = Vec::new();
    for (p, q) in sampler.samples(alphabets)? {
        out.push(HkInput::all_common(&p, &q));
        out.push(HkInput::all_personal(&p, &q));
        out.push(HkInput::mixed(&p, &q, true));
        out.push(HkInput::mixed(&p, &q, false));
    }
    for k in 0..random {
        out.push(random_hk_input(alphabets, &mut crate::derived_rng(seed, &[k as u64])));
    }
    Ok(out)
}

pub fn random_hk_input<R: rand::Rng + ?Sized>(alphabets: [usize; 2], rng: &mut R) -> HkInput {
    let [a1, a2] = alphabets;
    let map = |a: usize, rng: &mut R| -> Vec<Vec<usize>> {
        (0..a).map(|_| (0..a).map(|_| rng.random_range(0..a)).collect()).collect()
    };
    HkInput {
        p_u1: simplex(a1, rng),
        p_w1: simplex(a1, rng),
        p_u2: simplex(a2, rng),
        p_w2: simplex(a2, rng),
        f1: map(a1, rng),
        f2: map(a2, rng),
    }
}

/// The channel used twice: inputs are pairs, outputs `B1 B1'` and `B2 B2'`.
pub fn block2(ch: &CcqqChannel) -> Result<CcqqChannel> {
    let [a1, a2] = ch.alphabets();
    let [d1, d2] = ch.dims();
    // rho_{ab} (x) rho_{a'b'} lives on B1 B2 B1' B2'; reorder to B1 B1' B2 B2'.
    let perm = [0usize, 2, 1, 3];
    CcqqChannel::from_fn([a1 * a1, a2 * a2], [d1 * d1, d2 * d2], |x1, x2| {
        let first = ch.state(x1 / a1, x2 / a2);
        let second = ch.state(x1 % a1, x2 % a2);
        let joint = first.tensor(second);
        let m = crate::qmatrix::permute_subsystems(joint.matrix(), &[d1, d2, d1, d2], &perm)?;
        crate::qmatrix::DensityOperator::from_matrix(m)
    })
}
