//! Subcommand implementations. Each returns the text printed on stdout and
//! whether a reported property failed.

use std::path::Path;

use qic_core::channels::{
    bb84_cccq, induced_mac, load_channel, theta_swap, AnyChannel, CcqMac, CcqqChannel, GaussianIc, MAC_NAMES,
    SENDER_NAMES,
};
use qic_core::conditions::{check_condition, GridOptions, Mode, SlackEvaluator};
use qic_core::entropy::CqEnsemble;
use qic_core::geometry::{HalfspaceSystem, RateRegion2D};
use qic_core::regions::{
    gaussian_hk, gaussian_sd_rs, hk_hull, hk_inputs, mac2_system, mac3_system, minentropy3_system, sato_outer,
    sd_points, sim_inner_bound, split_grid, strong_capacity_with, strong_formula, vsi_capacity_with, vsi_formula,
    DistSampler, GaussianFigure, RatePoint, MAC3_ROW_LABELS, MINENT3_ROW_LABELS,
};
use qic_core::simdec::{run_experiment, DecoderExperiment, RateTarget};
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{fmt_num, Run, Table};
use crate::suites::{junit_xml, run_suite};

/// Tolerance of the inclusion checks reported by `gaussian`.
pub const GAUSS_INCLUSION_TOL: f64 = 1e-6;

pub struct Outcome {
    pub stdout: String,
    pub failed: bool,
}

impl Outcome {
    fn json(v: &Value) -> CliResult<Self> {
        Ok(Outcome { stdout: serde_json::to_string_pretty(v)? + "\n", failed: false })
    }
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Entropy(a) => cmd_entropy(&a),
        Command::CheckInterference(a) => cmd_check(&a),
        Command::Region(a) => cmd_region(&a),
        Command::SweepTheta(a) => cmd_sweep_theta(&a),
        Command::Gaussian(a) => cmd_gaussian(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Selftest(a) => cmd_selftest(&a),
    }
}

pub fn parse_builtin(spec: &str) -> CliResult<AnyChannel> {
    if spec == "bb84" {
        return Ok(AnyChannel::Mac(bb84_cccq()));
    }
    if let Some(theta) = spec.strip_prefix("theta-swap:") {
        let t: f64 =
            theta.parse().map_err(|_| CliError::Input(format!("theta-swap angle '{theta}' is not a number")))?;
        if !t.is_finite() {
            return Err(CliError::Input(format!("theta-swap angle {t} is not finite")));
        }
        return Ok(AnyChannel::Ccqq(theta_swap(t)));
    }
    Err(CliError::Input(format!("unknown builtin channel '{spec}' (expected theta-swap:<radians> or bb84)")))
}

impl ChannelArgs {
    pub fn load(&self) -> CliResult<AnyChannel> {
        match (&self.channel, &self.builtin) {
            (Some(path), None) => Ok(load_channel(path)?),
            (None, Some(b)) => parse_builtin(b),
            _ => Err(CliError::Input("give exactly one of --channel or --builtin".into())),
        }
    }

    fn ccqq(&self) -> CliResult<CcqqChannel> {
        match self.load()? {
            AnyChannel::Ccqq(ch) => Ok(ch),
            AnyChannel::Mac(_) => Err(CliError::Input("this command needs a two-output (ccqq) channel".into())),
        }
    }

    /// A multiple access channel: the channel itself, or the MAC induced at
    /// `receiver` for a two-output channel.
    fn mac(&self, receiver: Option<usize>, senders: usize) -> CliResult<CcqMac> {
        let mac = match (self.load()?, receiver) {
            (AnyChannel::Mac(m), None) => m,
            (AnyChannel::Mac(_), Some(_)) => {
                return Err(CliError::Input("--receiver applies only to two-output channels".into()))
            }
            (AnyChannel::Ccqq(ch), Some(r)) => induced_mac(&ch, r)?,
            (AnyChannel::Ccqq(_), None) => {
                return Err(CliError::Input("two-output channel: choose --receiver 1 or 2".into()))
            }
        };
        if mac.senders() != senders {
            return Err(CliError::Input(format!("need a {senders}-sender MAC, channel has {}", mac.senders())));
        }
        Ok(mac)
    }
}

impl DistArgs {
    pub fn probs(&self, alphabets: &[usize]) -> CliResult<Vec<Vec<f64>>> {
        let given = [&self.p1, &self.p2, &self.p3];
        if given.iter().skip(alphabets.len()).any(|g| g.is_some()) {
            return Err(CliError::Input(format!("channel has only {} inputs", alphabets.len())));
        }
        alphabets
            .iter()
            .zip(given)
            .enumerate()
            .map(|(i, (&a, g))| match g {
                Some(p) if p.len() != a => {
                    Err(CliError::Input(format!("--p{} has {} entries, alphabet size is {a}", i + 1, p.len())))
                }
                Some(p) => Ok(p.clone()),
                None => Ok(vec![1.0 / a as f64; a]),
            })
            .collect()
    }
}

impl SamplerArgs {
    fn sampler(&self) -> DistSampler {
        match self.samples {
            Some(count) => DistSampler::Random { count, seed: self.seed },
            None => DistSampler::Grid { step: self.grid_step },
        }
    }
}

impl GaussArgs {
    fn ic(&self) -> CliResult<GaussianIc> {
        match (self.snr1, self.snr2, self.inr1, self.inr2) {
            (Some(a), Some(b), Some(c), Some(d)) => Ok(GaussianIc::new(a, b, c, d)?),
            _ => Err(CliError::Input("Gaussian methods need --snr1 --snr2 --inr1 --inr2".into())),
        }
    }
}

fn joined(names: &[&str]) -> String {
    names.concat()
}

/// `H(out|T)`, `Hmin(out|T)` and `I(S;out|T)` over all register subsets.
fn ensemble_quantities(e: &CqEnsemble, names: &[&str], out: &str, map: &mut Map<String, Value>) -> CliResult<()> {
    let subsets: Vec<Vec<&str>> = (0..1usize << names.len())
        .map(|mask| names.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| *n).collect())
        .collect();
    let bar = |t: &[&str]| if t.is_empty() { String::new() } else { format!("|{}", joined(t)) };
    for t in &subsets {
        map.insert(format!("H({out}{})", bar(t)), json!(e.cond_entropy(t)?));
        let hmin = if t.is_empty() { e.min_entropy()? } else { e.cond_min_entropy(t)? };
        map.insert(format!("Hmin({out}{})", bar(t)), json!(hmin));
        for s in subsets.iter().filter(|s| !s.is_empty() && s.iter().all(|v| !t.contains(v))) {
            map.insert(format!("I({};{out}{})", joined(s), bar(t)), json!(e.mutual_info(s, t)?));
        }
    }
    Ok(())
}

pub fn cmd_entropy(a: &EntropyArgs) -> CliResult<Outcome> {
    let run = Run::new("entropy", a, None)?;
    let mut map = Map::new();
    match a.channel.load()? {
        AnyChannel::Ccqq(ch) => {
            let probs = a.dist.probs(&ch.alphabets())?;
            let (p1, p2) = (&probs[0], &probs[1]);
            for r in [1, 2] {
                ensemble_quantities(&ch.receiver_ensemble(r, p1, p2)?, &SENDER_NAMES, &format!("B{r}"), &mut map)?;
            }
            ensemble_quantities(&ch.joint_ensemble(p1, p2)?, &SENDER_NAMES, "B1B2", &mut map)?;
            for mode in [Mode::VeryStrong, Mode::Strong] {
                let slacks = SlackEvaluator::new(&ch, mode)?.slacks(p1, p2)?;
                map.insert(format!("slacks({mode})"), json!(slacks));
            }
            map.insert("probs".into(), json!(probs));
        }
        AnyChannel::Mac(mac) => {
            let probs = a.dist.probs(mac.alphabets())?;
            let names = &MAC_NAMES[..mac.senders()];
            ensemble_quantities(&mac.named_ensemble(names, &probs)?, names, "B", &mut map)?;
            map.insert("probs".into(), json!(probs));
        }
    }
    let v = Value::Object(map);
    if let Some(path) = &a.out {
        run.write_json(path, &v)?;
    }
    Outcome::json(&v)
}

pub fn cmd_check(a: &CheckArgs) -> CliResult<Outcome> {
    let run = Run::new("check-interference", a, None)?;
    let ch = a.channel.ccqq()?;
    let report = check_condition(&ch, a.mode.into(), GridOptions::new(a.grid_step))?;
    let v = serde_json::to_value(&report)?;
    if let Some(path) = &a.out {
        run.write_json(path, &v)?;
    }
    Outcome::json(&v)
}

fn rows_table(sys: &HalfspaceSystem, labels: &[&str]) -> Table {
    let mut t = Table::new(&["constraint", "rhs"]);
    for (row, label) in sys.rows().iter().zip(labels) {
        t.push(vec![label.to_string(), fmt_num(row.rhs)]);
    }
    t
}

fn points_table(points: &[RatePoint]) -> Table {
    let mut t = Table::new(&["label", "R1", "R2"]);
    for p in points {
        t.push(vec![p.label.clone(), fmt_num(p.r1), fmt_num(p.r2)]);
    }
    t
}

fn region_summary(r: &RateRegion2D) -> Value {
    json!({
        "max_r1": r.max_r1(),
        "max_r2": r.max_r2(),
        "max_sum": r.max_sum(),
        "area": r.area(),
        "vertices": r.frontier().len(),
    })
}

fn region_json(r: &RateRegion2D) -> Value {
    json!({ "frontier": r.frontier(), "polygon": r.polygon(), "summary": region_summary(r) })
}

enum RegionOutput {
    Region(RateRegion2D),
    Rows(HalfspaceSystem, &'static [&'static str]),
    Points(Vec<RatePoint>),
}

fn perm_roles(perm: &[usize]) -> CliResult<[usize; 3]> {
    let p: Vec<usize> = perm.iter().map(|&k| k.wrapping_sub(1)).collect();
    match p.as_slice() {
        &[a, b, c] if a < 3 && b < 3 && c < 3 && a != b && b != c && a != c => Ok([a, b, c]),
        _ => Err(CliError::Input(format!("--perm must be a permutation of 1,2,3, got {perm:?}"))),
    }
}

fn compute_region(a: &RegionArgs) -> CliResult<RegionOutput> {
    use RegionMethod::*;
    let sampler = a.sampler.sampler();
    Ok(match a.method {
        Mac2 => {
            let mac = a.channel.mac(a.receiver, 2)?;
            let p = a.dist.probs(mac.alphabets())?;
            RegionOutput::Region(mac2_system(&mac, &p[0], &p[1])?.to_region2d()?)
        }
        Mac3 => {
            let mac = a.channel.mac(None, 3)?;
            let p = a.dist.probs(mac.alphabets())?;
            let probs = [p[0].clone(), p[1].clone(), p[2].clone()];
            RegionOutput::Rows(mac3_system(&mac, &probs)?, &MAC3_ROW_LABELS)
        }
        MinEntropy => {
            let mac = a.channel.mac(None, 3)?;
            let p = a.dist.probs(mac.alphabets())?;
            let probs = [p[0].clone(), p[1].clone(), p[2].clone()];
            RegionOutput::Rows(minentropy3_system(&mac, &probs, perm_roles(&a.perm)?)?, &MINENT3_ROW_LABELS)
        }
        SimInner => RegionOutput::Region(sim_inner_bound(&a.channel.ccqq()?, &sampler)?),
        Vsi => RegionOutput::Region(vsi_capacity_with(&a.channel.ccqq()?, &sampler, a.condition_step)?),
        Strong => RegionOutput::Region(strong_capacity_with(&a.channel.ccqq()?, &sampler, a.condition_step)?),
        Sato => RegionOutput::Region(sato_outer(&a.channel.ccqq()?, &sampler)?),
        Hk => {
            let ch = a.channel.ccqq()?;
            let inputs = hk_inputs(ch.alphabets(), &sampler, a.hk_random, a.sampler.seed)?;
            RegionOutput::Region(hk_hull(&ch, &inputs)?)
        }
        SdPoints => {
            let ch = a.channel.ccqq()?;
            let p = a.dist.probs(&ch.alphabets())?;
            RegionOutput::Points(sd_points(&ch, &p[0], &p[1])?.to_vec())
        }
        GaussSdRs => {
            let pts = gaussian_sd_rs(&a.gauss.ic()?, &split_grid(a.gauss.split_step)?)?;
            let xy: Vec<[f64; 2]> = pts.iter().map(|p| [p.r1, p.r2]).collect();
            RegionOutput::Region(RateRegion2D::from_points(&xy))
        }
        GaussHk => RegionOutput::Region(gaussian_hk(&a.gauss.ic()?, &split_grid(a.gauss.split_step)?)?),
    })
}

pub fn cmd_region(a: &RegionArgs) -> CliResult<Outcome> {
    let run = Run::new("region", a, Some(a.sampler.seed))?;
    let method = serde_json::to_value(a.method)?;
    let (table, summary, full) = match compute_region(a)? {
        RegionOutput::Region(r) => (Table::frontier(&r), region_summary(&r), region_json(&r)),
        RegionOutput::Rows(sys, labels) => {
            let rows: Vec<Value> = sys
                .rows()
                .iter()
                .zip(labels)
                .map(|(r, l)| json!({"constraint": l, "coeffs": r.coeffs, "rhs": r.rhs}))
                .collect();
            (rows_table(&sys, labels), json!({ "rows": rows }), json!({ "vars": sys.vars(), "rows": rows }))
        }
        RegionOutput::Points(pts) => {
            let hull = RateRegion2D::from_points(&pts.iter().map(RatePoint::xy).collect::<Vec<_>>());
            let v = json!({ "points": pts, "hull": region_summary(&hull) });
            (points_table(&pts), v.clone(), v)
        }
    };
    if let Some(path) = &a.out {
        run.write_csv(path, &table)?;
    }
    if let Some(path) = &a.json {
        run.write_json(path, &full)?;
    }
    Outcome::json(&json!({ "method": method, "result": summary }))
}

/// `from + k step` for every `k` with the value at most `to`.
pub fn theta_grid(from: f64, to: f64, step: f64) -> CliResult<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !from.is_finite() || !to.is_finite() || to < from {
        return Err(CliError::Input(format!("bad theta range {from}..{to} step {step}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| from + k as f64 * step).collect())
}

pub fn theta_file_name(theta: f64) -> String {
    format!("theta_{theta:.4}.csv")
}

pub fn cmd_sweep_theta(a: &SweepArgs) -> CliResult<Outcome> {
    let run = Run::new("sweep-theta", a, Some(a.sampler.seed))?;
    let sampler = a.sampler.sampler();
    let mode: Mode = a.mode.into();
    let mut summary = Table::new(&["theta", "holds", "max_r1", "max_r2", "max_sum", "region", "min_slack"]);
    let mut rows = Vec::new();
    for theta in theta_grid(a.from, a.to, a.step)? {
        let ch = theta_swap(theta);
        let report = check_condition(&ch, mode, GridOptions::new(a.condition_step))?;
        let (region, label) = match (report.holds, mode) {
            (true, Mode::VeryStrong) => (vsi_formula(&ch, &sampler)?, "vsi"),
            (true, Mode::Strong) => (strong_formula(&ch, &sampler)?, "strong"),
            (false, _) => (sim_inner_bound(&ch, &sampler)?, "sim-inner"),
        };
        run.write_csv(&a.out_dir.join(theta_file_name(theta)), &Table::frontier(&region))?;
        summary.push(vec![
            fmt_num(theta),
            report.holds.to_string(),
            fmt_num(region.max_r1()),
            fmt_num(region.max_r2()),
            fmt_num(region.max_sum()),
            label.to_string(),
            fmt_num(report.min_slack),
        ]);
        rows.push(json!({ "theta": theta, "holds": report.holds, "region": label, "max_sum": region.max_sum() }));
    }
    run.write_csv(&a.out_dir.join("summary.csv"), &summary)?;
    Outcome::json(&json!({ "thetas": rows.len(), "out_dir": a.out_dir, "rows": rows }))
}

pub fn cmd_gaussian(a: &GaussianArgs) -> CliResult<Outcome> {
    let run = Run::new("gaussian", a, None)?;
    let ic = GaussianIc::new(a.snr1, a.snr2, a.inr1, a.inr2)?;
    let fig = GaussianFigure::compute(&ic, &split_grid(a.split_step)?)?;
    let dir: &Path = &a.out_dir;
    run.write_csv(&dir.join("mac1.csv"), &Table::frontier(&fig.mac1))?;
    run.write_csv(&dir.join("mac2.csv"), &Table::frontier(&fig.mac2))?;
    run.write_csv(&dir.join("hk.csv"), &Table::frontier(&fig.hk))?;
    run.write_csv(&dir.join("sd_rs_hull.csv"), &Table::frontier(&fig.sd_rs_hull))?;
    let mut pts = Table::new(&["lambda1", "lambda2", "order1", "order2", "R1", "R2"]);
    for p in &fig.sd_rs {
        pts.push(vec![
            fmt_num(p.lambda1),
            fmt_num(p.lambda2),
            p.order1.join(">"),
            p.order2.join(">"),
            fmt_num(p.r1),
            fmt_num(p.r2),
        ]);
    }
    run.write_csv(&dir.join("sd_rs.csv"), &pts)?;
    run.write_csv(&dir.join("sd_points.csv"), &points_table(&fig.sd_points))?;

    let sd_rs_excess = fig.sd_rs_hull.max_excess_over(&fig.hk);
    let sd_points_excess = fig.sd_points.iter().map(|p| fig.hk.distance(p.xy())).fold(0.0, f64::max);
    let passed = sd_rs_excess <= GAUSS_INCLUSION_TOL && sd_points_excess <= GAUSS_INCLUSION_TOL;
    let summary = json!({
        "params": ic,
        "split_fractions": fig.lambdas.len(),
        "checks": {
            "tolerance": GAUSS_INCLUSION_TOL,
            "sd_rs_in_hk": { "max_excess": sd_rs_excess, "passed": sd_rs_excess <= GAUSS_INCLUSION_TOL },
            "sd_points_in_hk": { "max_excess": sd_points_excess, "passed": sd_points_excess <= GAUSS_INCLUSION_TOL },
        },
        "frontier_gap": fig.gap,
        "sd_points": fig.sd_points,
        "mac1": region_summary(&fig.mac1),
        "mac2": region_summary(&fig.mac2),
        "hk": region_summary(&fig.hk),
        "sd_rs_hull": region_summary(&fig.sd_rs_hull),
    });
    run.write_json(&dir.join("summary.json"), &summary)?;
    let mut out = Outcome::json(&summary)?;
    out.failed = !passed;
    Ok(out)
}

pub fn cmd_simulate(a: &SimulateArgs) -> CliResult<Outcome> {
    let run = Run::new("simulate", a, Some(a.seed))?;
    let mac = a.channel.mac(a.receiver, 2)?;
    let p = a.dist.probs(mac.alphabets())?;
    let rates = match a.rate_mode {
        RateMode::Pentagon => RateTarget::PentagonFraction(a.rate_frac),
        RateMode::Sum => RateTarget::SumFraction(a.rate_frac),
    };
    let cfg = DecoderExperiment {
        mac,
        px: p[0].clone(),
        py: p[1].clone(),
        ns: a.n.clone(),
        delta: a.delta,
        rates,
        trials: a.trials,
        seed: a.seed,
    };
    let curve = run_experiment(&cfg)?;
    let mut t = Table::new(&["n", "mean_error", "ci_low", "ci_high"]);
    for pt in &curve.points {
        t.push(vec![pt.n.to_string(), fmt_num(pt.mean_error), fmt_num(pt.ci_low), fmt_num(pt.ci_high)]);
    }
    if let Some(path) = &a.out {
        run.write_csv(path, &t)?;
    }
    Outcome::json(&serde_json::to_value(&curve)?)
}

pub fn cmd_selftest(a: &SelftestArgs) -> CliResult<Outcome> {
    let cases = run_suite(a.suite, a.seed);
    let failed = cases.iter().any(|c| !c.passed);
    for c in &cases {
        eprintln!("{} {}::{} ({:.2}s)", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.seconds);
    }
    let xml = junit_xml(&cases);
    let stdout = match &a.report {
        Some(path) => {
            std::fs::write(path, &xml)?;
            let passed = cases.iter().filter(|c| c.passed).count();
            format!("{passed}/{} cases passed; report written to {}\n", cases.len(), path.display())
        }
        None => xml,
    };
    Ok(Outcome { stdout, failed })
}
