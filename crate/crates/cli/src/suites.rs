//! Randomized property suites shared by `qic selftest` and the acceptance
//! target. Each check returns its raw statistics; the pass rules live in
//! [`run_suite`] and in the acceptance harness.

use std::f64::consts::PI;
use std::time::Instant;

use qic_core::channels::{bb84_cccq, random_ccqq, theta_swap, GaussTerm, GaussianIc, HkInput};
use qic_core::conditions::{theta_swap_entropies, theta_swap_entropies_numeric};
use qic_core::entropy::{binary_entropy, CqEnsemble, Register};
use qic_core::geometry::{HalfspaceSystem, Row};
use qic_core::qmatrix::{random, DensityOperator, HermitianOperator};
use qic_core::regions::{
    hk_hull, hk_inputs, hk_region, mac3_system, minentropy3_system, sato_outer, sim_inner_bound, DistSampler, IcInfo,
};
use qic_core::simdec::{
    check_gentle, check_hayashi_nagaoka, check_trace_ineq, cond_typical_projector, typical_projector, InequalityReport,
    TypicalProjector,
};
use qic_core::{derived_rng, Result};
use rand::Rng;
use serde::Serialize;

use crate::args::SuiteName;

pub const IDENTITY_TOL: f64 = 1e-9;
pub const NESTING_TOL: f64 = 1e-7;
pub const DEGENERATION_TOL: f64 = 1e-9;
pub const FM_BOUNDARY_TOL: f64 = 1e-6;
pub const FM_GRID_STEP: f64 = 0.01;
pub const BINOMIAL_TOL: f64 = 1e-12;
pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const GAUSS_P4_TOL: f64 = 1e-5;

pub fn operator_inequalities(seed: u64) -> Result<[InequalityReport; 3]> {
    Ok([
        check_hayashi_nagaoka(200, 16, seed)?,
        check_gentle(500, 6, seed.wrapping_add(1))?,
        check_trace_ineq(500, 6, seed.wrapping_add(2))?,
    ])
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct EntropyStats {
    pub ensembles: usize,
    /// Largest chain-rule residual `|I(S;B|T) - sum of one-register steps|`.
    pub chain_residual: f64,
    pub min_cmi: f64,
    /// Largest `H_min - H` over conditioning sets.
    pub min_entropy_excess: f64,
    /// Smallest eigenvalue of `2^{-H_min(B|T)} I - rho_t`.
    pub operator_residual: f64,
}

fn random_ensemble<R: Rng + ?Sized>(rng: &mut R) -> Result<CqEnsemble> {
    let dim = rng.random_range(1..=4);
    let names = ["X", "Y", "Z"];
    let k = rng.random_range(1..=3);
    let registers: Vec<Register> =
        (0..k).map(|i| Register::new(names[i], random::simplex(rng.random_range(1..=3), rng))).collect();
    let total: usize = registers.iter().map(Register::size).product();
    let states = (0..total).map(|_| random::density(dim, rng.random_range(1..=dim), rng)).collect();
    CqEnsemble::new(registers, states)
}

fn subsets<'a>(names: &[&'a str]) -> Vec<Vec<&'a str>> {
    (0..1usize << names.len())
        .map(|mask| names.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| *n).collect())
        .collect()
}

pub fn entropy_identities(count: usize, seed: u64) -> Result<EntropyStats> {
    let mut s = EntropyStats {
        ensembles: count,
        min_cmi: f64::INFINITY,
        operator_residual: f64::INFINITY,
        ..Default::default()
    };
    for k in 0..count {
        let mut rng = derived_rng(seed, &[k as u64]);
        let e = random_ensemble(&mut rng)?;
        let names: Vec<&str> = e.registers().iter().map(|r| r.name.as_str()).collect();
        for t in subsets(&names) {
            let rest: Vec<&str> = names.iter().filter(|n| !t.contains(n)).copied().collect();
            for subj in subsets(&rest).into_iter().filter(|v| !v.is_empty()) {
                let whole = e.mutual_info(&subj, &t)?;
                s.min_cmi = s.min_cmi.min(whole);
                let mut cond = t.clone();
                let mut steps = 0.0;
                for r in &subj {
                    steps += e.mutual_info(&[r], &cond)?;
                    cond.push(r);
                }
                s.chain_residual = s.chain_residual.max((whole - steps).abs());
            }
            let h = e.cond_entropy(&t)?;
            if t.is_empty() {
                s.min_entropy_excess = s.min_entropy_excess.max(e.min_entropy()? - h);
                continue;
            }
            let hmin = e.cond_min_entropy(&t)?;
            s.min_entropy_excess = s.min_entropy_excess.max(hmin - h);
            let bound = (-hmin).exp2();
            for (p, rho) in e.conditional_states(&t)? {
                if p <= 0.0 {
                    continue;
                }
                let gap = HermitianOperator::identity(e.dim()).scale(bound).sub(&HermitianOperator::new(rho)?)?;
                s.operator_residual = s.operator_residual.min(gap.min_eigenvalue()?);
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct NestingStats {
    pub channels: usize,
    pub sd_points: usize,
    /// Successive-decoding points outside the simultaneous-decoding bound.
    pub sd_outside_sim: usize,
    /// The corner `(min(I11|2, I12), min(I21, I22|1))` outside it.
    pub p2_outside_sim: usize,
    pub sd_outside_hk: usize,
    /// Largest distance of a vertex of one region from the next one.
    pub sim_excess_over_hk: f64,
    pub hk_excess_over_sato: f64,
    /// Largest vertex distance between the all-common HK region and the
    /// pentagon intersection.
    pub common_deviation: f64,
}

pub fn region_nesting(count: usize, seed: u64, grid_step: f64) -> Result<NestingStats> {
    let sampler = DistSampler::Grid { step: grid_step };
    let mut s = NestingStats { channels: count, ..Default::default() };
    for k in 0..count {
        let mut rng = derived_rng(seed, &[k as u64]);
        let rank = rng.random_range(1..=4);
        let ch = random_ccqq([2, 2], [2, 2], rank, &mut rng)?;
        let sim = sim_inner_bound(&ch, &sampler)?;
        let hk = hk_hull(&ch, &hk_inputs(ch.alphabets(), &sampler, 0, 0)?)?;
        let sato = sato_outer(&ch, &sampler)?;
        s.sim_excess_over_hk = s.sim_excess_over_hk.max(sim.max_excess_over(&hk));
        s.hk_excess_over_sato = s.hk_excess_over_sato.max(hk.max_excess_over(&sato));
        for (p, q) in sampler.samples(ch.alphabets())? {
            let pts = IcInfo::from_channel(&ch, &p, &q)?.sd_points();
            for (i, pt) in pts.iter().enumerate() {
                s.sd_points += 1;
                if !sim.contains(pt.xy(), NESTING_TOL) {
                    s.sd_outside_sim += 1;
                    if i == 1 {
                        s.p2_outside_sim += 1;
                    }
                }
                if !hk.contains(pt.xy(), NESTING_TOL) {
                    s.sd_outside_hk += 1;
                }
            }
        }
        let (p, q) = (random::simplex(2, &mut rng), random::simplex(2, &mut rng));
        let common = hk_region(&ch, &HkInput::all_common(&p, &q))?;
        let inter = IcInfo::from_channel(&ch, &p, &q)?.sim_region();
        s.common_deviation = s.common_deviation.max(common.vertex_distance(&inter));
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct FmStats {
    pub systems: usize,
    pub points: usize,
    /// Grid points farther than the boundary tolerance from the projected
    /// boundary whose membership disagrees with the oracle.
    pub disagreements: usize,
    pub near_boundary: usize,
}

const FM_VARS: [&str; 4] = ["A", "B", "C", "D"];

fn random_system<R: Rng + ?Sized>(rng: &mut R) -> Result<(HalfspaceSystem, [f64; 2])> {
    let mut s = HalfspaceSystem::new(&FM_VARS)?;
    let mut caps = [0.0; 2];
    for (i, v) in FM_VARS.iter().enumerate() {
        let cap = rng.random_range(0.5..2.0);
        if i < 2 {
            caps[i] = cap;
        }
        s.add(&[(v, 1.0)], cap)?;
    }
    for _ in 0..rng.random_range(2..=6) {
        let c: Vec<f64> = (0..4).map(|_| rng.random_range(-1..=2) as f64).collect();
        s.push(c, rng.random_range(0.0..3.0))?;
    }
    Ok((s, caps))
}

/// Whether `{(c, d) >= 0 : rows hold at (a, b, c, d)}` is non-empty, by
/// enumerating pairwise intersections of the constraint lines. The box rows
/// keep every fiber bounded, so a non-empty fiber has a vertex.
fn fiber_feasible(rows: &[Row], a: f64, b: f64) -> bool {
    let mut lines: Vec<(f64, f64, f64)> =
        rows.iter().map(|r| (r.coeffs[2], r.coeffs[3], r.rhs - r.coeffs[0] * a - r.coeffs[1] * b)).collect();
    lines.push((-1.0, 0.0, 0.0));
    lines.push((0.0, -1.0, 0.0));
    let holds = |c: f64, d: f64| lines.iter().all(|&(u, v, w)| u * c + v * d <= w + 1e-9);
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (u1, v1, w1) = lines[i];
            let (u2, v2, w2) = lines[j];
            let det = u1 * v2 - u2 * v1;
            if det.abs() < 1e-12 {
                continue;
            }
            let c = (w1 * v2 - w2 * v1) / det;
            let d = (u1 * w2 - u2 * w1) / det;
            if holds(c, d) {
                return true;
            }
        }
    }
    false
}

pub fn fm_projection(count: usize, seed: u64) -> Result<FmStats> {
    let mut s = FmStats { systems: count, ..Default::default() };
    for k in 0..count {
        let mut rng = derived_rng(seed, &[k as u64]);
        let (sys, caps) = random_system(&mut rng)?;
        let proj = sys.fm_eliminate("C")?.fm_eliminate("D")?;
        let steps = |cap: f64| ((cap + 0.05) / FM_GRID_STEP).ceil() as usize;
        for i in 0..=steps(caps[0]) {
            for j in 0..=steps(caps[1]) {
                let (a, b) = (i as f64 * FM_GRID_STEP, j as f64 * FM_GRID_STEP);
                s.points += 1;
                let inside = proj.contains(&[a, b], -FM_BOUNDARY_TOL);
                let outside = !proj.contains(&[a, b], FM_BOUNDARY_TOL);
                if !inside && !outside {
                    s.near_boundary += 1;
                    continue;
                }
                let feasible = fiber_feasible(sys.rows(), a, b);
                if (inside && !feasible) || (outside && feasible) {
                    s.disagreements += 1;
                }
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct TypicalityStats {
    pub projectors: usize,
    pub max_n: usize,
    /// Largest `|Tr{Pi rho^n} - binomial tail|` for `diag(0.9, 0.1)`, `delta = 0.1`.
    pub binomial_deviation: f64,
}

/// Typical mass of `diag(q, 1 - q)^n` summed over type classes.
pub fn binomial_typical_mass(q: f64, n: usize, delta: f64) -> f64 {
    let h = -(q * q.log2() + (1.0 - q) * (1.0 - q).log2());
    let mut total = 0.0;
    let mut binom = 1.0f64;
    for k in 0..=n {
        if k > 0 {
            binom = binom * (n - k + 1) as f64 / k as f64;
        }
        let log_p = (n - k) as f64 * q.log2() + k as f64 * (1.0 - q).log2();
        if (-log_p / n as f64 - h).abs() <= delta + 1e-12 {
            total += binom * q.powi((n - k) as i32) * (1.0 - q).powi(k as i32);
        }
    }
    total
}

/// Builds projectors for several states up to blocklength `max_n`; every
/// construction asserts the rank bound and eigenvalue sandwich.
pub fn typicality(max_n: usize, seed: u64) -> Result<TypicalityStats> {
    let mut s = TypicalityStats { max_n, ..Default::default() };
    let mut rng = derived_rng(seed, &[]);
    let diag = DensityOperator::diagonal(&[0.9, 0.1])?;
    let mut states = vec![
        diag.clone(),
        DensityOperator::maximally_mixed(2),
        random::density(2, 2, &mut rng),
        random::pure_state(2, &mut rng).density(),
        random::density(3, 3, &mut rng),
    ];
    states.push(random::density(4, 2, &mut rng));
    let check = |p: &TypicalProjector, s: &mut TypicalityStats| -> Result<()> {
        p.check_bounds()?;
        s.projectors += 1;
        Ok(())
    };
    for rho in &states {
        for n in 1..=max_n {
            if (rho.dim() as f64).powi(n as i32) > 4096.0 {
                break;
            }
            for delta in [0.05, 0.1, 0.3] {
                check(&typical_projector(rho, n, delta)?, &mut s)?;
            }
        }
    }
    let ch = theta_swap(1.2);
    let site_pool: Vec<DensityOperator> =
        (0..4).map(|x| ch.receiver_state(x / 2, x % 2, 1)).collect::<Result<Vec<_>>>()?;
    let hbar = site_pool.iter().map(qic_core::entropy::von_neumann_entropy).sum::<Result<f64>>()? / 4.0;
    for n in 1..=max_n {
        let sites: Vec<DensityOperator> = (0..n).map(|_| site_pool[rng.random_range(0..4)].clone()).collect();
        for delta in [0.05, 0.1, 0.3] {
            check(&cond_typical_projector(&sites, hbar, delta)?, &mut s)?;
        }
    }
    for n in 1..=max_n {
        let p = typical_projector(&diag, n, 0.1)?;
        let got = p.trace_with(&vec![diag.matrix(); n])?;
        s.binomial_deviation = s.binomial_deviation.max((got - binomial_typical_mass(0.9, n, 0.1)).abs());
    }
    Ok(s)
}

/// Largest deviation between the closed-form and numeric theta-swap
/// entropies over `count` random `(theta, p1, p2)`.
pub fn closed_form_deviation(count: usize, seed: u64) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 0..count {
        let mut rng = derived_rng(seed, &[k as u64]);
        let theta = rng.random_range(0.0..2.0 * PI);
        let (p1, p2) = (rng.random::<f64>(), rng.random::<f64>());
        let a = theta_swap_entropies(theta, p1, p2)?.as_array();
        let b = theta_swap_entropies_numeric(theta, p1, p2)?.as_array();
        for (x, y) in a.iter().zip(b) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct Bb84Rows {
    pub min_entropy: Vec<f64>,
    /// Rows of the Shannon-entropy system in the same order.
    pub shannon: Vec<f64>,
    pub expected: Vec<f64>,
}

pub const MAC3_TO_MINENT: [usize; 7] = [0, 1, 2, 3, 5, 4, 6];

pub fn bb84_rows() -> Result<Bb84Rows> {
    let mac = bb84_cccq();
    let u = vec![0.5, 0.5];
    let probs = [u.clone(), u.clone(), u];
    let m = minentropy3_system(&mac, &probs, [0, 1, 2])?;
    let c = mac3_system(&mac, &probs)?;
    let h = binary_entropy((PI / 8.0).cos().powi(2))?;
    Ok(Bb84Rows {
        min_entropy: m.rows().iter().map(|r| r.rhs).collect(),
        shannon: MAC3_TO_MINENT.iter().map(|&j| c.rows()[j].rhs).collect(),
        expected: vec![1.0, 1.0, h, 1.0, 1.0, 1.0, 1.0],
    })
}

/// `(I(X1;Y1), I(X2;Y2))` evaluated directly from the SNR/INR parameters.
pub fn gaussian_p4_oracle(snr1: f64, snr2: f64, inr1: f64, inr2: f64) -> [f64; 2] {
    [0.5 * (1.0 + snr1 / (1.0 + inr1)).log2(), 0.5 * (1.0 + snr2 / (1.0 + inr2)).log2()]
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn case<T: std::fmt::Debug>(
    suite: &str,
    name: &str,
    f: impl FnOnce() -> Result<T>,
    pass: impl FnOnce(&T) -> bool,
) -> CaseResult {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => (pass(&v), format!("{v:?}")),
        Err(e) => (false, format!("error: {e}")),
    };
    CaseResult {
        suite: suite.to_string(),
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub const ALL_SUITES: [SuiteName; 6] = [
    SuiteName::OperatorInequalities,
    SuiteName::EntropyIdentities,
    SuiteName::RegionNesting,
    SuiteName::FmProjection,
    SuiteName::Typicality,
    SuiteName::ClosedForm,
];

pub fn suite_label(s: SuiteName) -> &'static str {
    match s {
        SuiteName::All => "all",
        SuiteName::OperatorInequalities => "operator-inequalities",
        SuiteName::EntropyIdentities => "entropy-identities",
        SuiteName::RegionNesting => "region-nesting",
        SuiteName::FmProjection => "fm-projection",
        SuiteName::Typicality => "typicality",
        SuiteName::ClosedForm => "closed-form",
    }
}

/// Runs one suite. Region nesting checks the inclusions that hold for every
/// channel: the second successive-decoding corner lies in the
/// simultaneous-decoding bound and all four lie in the HK hull.
pub fn run_suite(suite: SuiteName, seed: u64) -> Vec<CaseResult> {
    let label = suite_label(suite);
    match suite {
        SuiteName::All => ALL_SUITES.iter().flat_map(|&s| run_suite(s, seed)).collect(),
        SuiteName::OperatorInequalities => vec![
            case(label, "hayashi-nagaoka", || check_hayashi_nagaoka(200, 16, seed), |r| r.passed),
            case(label, "gentle-operator", || check_gentle(500, 6, seed.wrapping_add(1)), |r| r.passed),
            case(label, "trace-inequality", || check_trace_ineq(500, 6, seed.wrapping_add(2)), |r| r.passed),
        ],
        SuiteName::EntropyIdentities => vec![case(
            label,
            "random-ensembles",
            || entropy_identities(1000, seed),
            |s| {
                s.chain_residual <= IDENTITY_TOL
                    && s.min_cmi >= -IDENTITY_TOL
                    && s.min_entropy_excess <= IDENTITY_TOL
                    && s.operator_residual >= -IDENTITY_TOL
            },
        )],
        SuiteName::RegionNesting => vec![case(
            label,
            "random-channels",
            || region_nesting(20, seed, 0.1),
            |s| {
                s.p2_outside_sim == 0
                    && s.sd_outside_hk == 0
                    && s.sim_excess_over_hk <= NESTING_TOL
                    && s.hk_excess_over_sato <= NESTING_TOL
                    && s.common_deviation <= DEGENERATION_TOL
            },
        )],
        SuiteName::FmProjection => {
            vec![case(label, "random-systems", || fm_projection(200, seed), |s| s.disagreements == 0)]
        }
        SuiteName::Typicality => {
            vec![case(label, "projectors", || typicality(12, seed), |s| s.binomial_deviation <= BINOMIAL_TOL)]
        }
        SuiteName::ClosedForm => vec![
            case(label, "theta-swap-entropies", || closed_form_deviation(100, seed), |d| *d <= CLOSED_FORM_TOL),
            case(label, "bb84-min-entropy-rows", bb84_rows, |r| {
                r.min_entropy.iter().zip(&r.expected).all(|(a, b)| (a - b).abs() <= IDENTITY_TOL)
                    && r.min_entropy.iter().zip(&r.shannon).all(|(a, b)| (a - b).abs() <= IDENTITY_TOL)
            }),
            case(
                label,
                "gaussian-p4",
                || {
                    let ic = GaussianIc::new(1.7, 2.0, 3.4, 4.0)?;
                    Ok(([ic.mi(GaussTerm::I11), ic.mi(GaussTerm::I22)], gaussian_p4_oracle(1.7, 2.0, 3.4, 4.0)))
                },
                |(a, b)| (a[0] - b[0]).abs() <= GAUSS_P4_TOL && (a[1] - b[1]).abs() <= GAUSS_P4_TOL,
            ),
        ],
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;").replace('\'', "&apos;")
}

pub fn junit_xml(cases: &[CaseResult]) -> String {
    let failures = cases.iter().filter(|c| !c.passed).count();
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out += &format!("<testsuites name=\"qic-selftest\" tests=\"{}\" failures=\"{failures}\">\n", cases.len());
    let mut suites: Vec<&str> = Vec::new();
    for c in cases {
        if !suites.contains(&c.suite.as_str()) {
            suites.push(&c.suite);
        }
    }
    for s in suites {
        let members: Vec<&CaseResult> = cases.iter().filter(|c| c.suite == s).collect();
        let fails = members.iter().filter(|c| !c.passed).count();
        let time: f64 = members.iter().map(|c| c.seconds).sum();
        out += &format!(
            "  <testsuite name=\"{}\" tests=\"{}\" failures=\"{fails}\" time=\"{time:.3}\">\n",
            xml_escape(s),
            members.len()
        );
        for c in members {
            let head = format!(
                "    <testcase classname=\"{}\" name=\"{}\" time=\"{:.3}\"",
                xml_escape(s),
                xml_escape(&c.name),
                c.seconds
            );
            if c.passed {
                out += &format!("{head}>\n      <system-out>{}</system-out>\n    </testcase>\n", xml_escape(&c.detail));
            } else {
                out += &format!(
                    "{head}>\n      <failure message=\"property violated\">{}</failure>\n    </testcase>\n",
                    xml_escape(&c.detail)
                );
            }
        }
        out += "  </testsuite>\n";
    }
    out += "</testsuites>\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_oracle_sums_to_one_for_wide_window() {
        for n in 1..10 {
            assert!((binomial_typical_mass(0.7, n, 10.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fiber_oracle_on_a_simple_box() {
        let mut s = HalfspaceSystem::new(&FM_VARS).unwrap();
        s.add(&[("A", 1.0), ("C", 1.0)], 1.0).unwrap();
        s.add(&[("B", 1.0), ("D", -1.0)], 0.5).unwrap();
        s.add(&[("D", 1.0)], 0.25).unwrap();
        s.add(&[("C", 1.0)], 2.0).unwrap();
        assert!(fiber_feasible(s.rows(), 0.5, 0.7));
        assert!(!fiber_feasible(s.rows(), 1.2, 0.1));
        assert!(!fiber_feasible(s.rows(), 0.1, 0.8));
    }

    #[test]
    fn small_suites_pass() {
        let e = entropy_identities(50, 3).unwrap();
        assert!(e.chain_residual <= IDENTITY_TOL && e.min_cmi >= -IDENTITY_TOL);
        assert!(e.min_entropy_excess <= IDENTITY_TOL && e.operator_residual >= -IDENTITY_TOL);
        assert_eq!(fm_projection(10, 3).unwrap().disagreements, 0);
        assert!(closed_form_deviation(20, 3).unwrap() <= CLOSED_FORM_TOL);
        assert!(typicality(6, 3).unwrap().binomial_deviation <= BINOMIAL_TOL);
    }

    #[test]
    fn junit_counts_failures() {
        let cases = vec![
            CaseResult { suite: "a".into(), name: "x".into(), passed: true, detail: "ok".into(), seconds: 0.0 },
            CaseResult {
                suite: "a".into(),
                name: "y<".into(),
                passed: false,
                detail: "bad & worse".into(),
                seconds: 0.0,
            },
        ];
        let xml = junit_xml(&cases);
        assert!(xml.contains("tests=\"2\" failures=\"1\""));
        assert!(xml.contains("name=\"y&lt;\""));
        assert!(xml.contains("bad &amp; worse"));
    }
}
