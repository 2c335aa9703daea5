use std::f64::consts::PI;

use proptest::prelude::*;
use qic_core::channels::{parse_channel, random_ccqq, theta_swap, to_json_string, AnyChannel, GaussianIc, HkInput};
use qic_core::derived_rng;
use qic_core::entropy::{CqEnsemble, Register};
use qic_core::geometry::HalfspaceSystem;
use qic_core::qmatrix::random;
use qic_core::regions::{
    gaussian_hk, gaussian_sd_rs, hk_hull, hk_inputs, hk_region, sato_outer, sim_inner_bound, split_grid, vsi_formula,
    DistSampler, IcInfo,
};
use qic_core::simdec::typical_projector;
use rand::Rng;

const TOL: f64 = 1e-7;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn interference_regions_nest(seed in any::<u64>()) {
        let mut rng = derived_rng(seed, &[]);
        let rank = rng.random_range(1..=4);
        let ch = random_ccqq([2, 2], [2, 2], rank, &mut rng).unwrap();
        let sampler = DistSampler::Grid { step: 0.25 };
        let sim = sim_inner_bound(&ch, &sampler).unwrap();
        let hk = hk_hull(&ch, &hk_inputs([2, 2], &sampler, 4, seed).unwrap()).unwrap();
        let sato = sato_outer(&ch, &sampler).unwrap();
        prop_assert!(hk.contains_region(&sim, TOL));
        prop_assert!(sato.contains_region(&sim, TOL));
        for (p, q) in sampler.samples([2, 2]).unwrap() {
            let info = IcInfo::from_channel(&ch, &p, &q).unwrap();
            let pts = info.sd_points();
            prop_assert!(sim.contains(pts[1].xy(), TOL));
            for pt in &pts {
                prop_assert!(hk.contains(pt.xy(), TOL));
            }
            let common = hk_region(&ch, &HkInput::all_common(&p, &q)).unwrap();
            prop_assert!(common.vertex_distance(&info.sim_region()) <= 1e-9);
        }
    }

    #[test]
    fn channel_json_round_trips(seed in any::<u64>(), a1 in 1usize..=3, a2 in 1usize..=3) {
        let mut rng = derived_rng(seed, &[]);
        let ch = AnyChannel::Ccqq(random_ccqq([a1, a2], [2, 1], 2, &mut rng).unwrap());
        let back = parse_channel(&to_json_string(&ch)).unwrap();
        prop_assert_eq!(back, ch);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conditioning_on_more_registers_adds_information(seed in any::<u64>()) {
        let mut rng = derived_rng(seed, &[]);
        let dim = rng.random_range(1..=3);
        let regs = vec![
            Register::new("X", random::simplex(rng.random_range(1..=3), &mut rng)),
            Register::new("Y", random::simplex(rng.random_range(1..=3), &mut rng)),
        ];
        let total = regs[0].size() * regs[1].size();
        let states = (0..total).map(|_| random::density(dim, rng.random_range(1..=dim), &mut rng)).collect();
        let e = CqEnsemble::new(regs, states).unwrap();
        let ixy = e.mutual_info(&["X", "Y"], &[]).unwrap();
        prop_assert!(e.mutual_info(&["X"], &[]).unwrap() <= ixy + 1e-9);
        prop_assert!(e.mutual_info(&["Y"], &["X"]).unwrap() <= ixy + 1e-9);
        prop_assert!(ixy <= e.entropy().unwrap() + 1e-9);
        prop_assert!(ixy <= (dim as f64).log2() + 1e-9);
    }

    #[test]
    fn projection_matches_fiber_membership(seed in any::<u64>()) {
        let mut rng = derived_rng(seed, &[]);
        let mut s = HalfspaceSystem::new(&["A", "B", "C"]).unwrap();
        for v in ["A", "B", "C"] {
            s.add(&[(v, 1.0)], rng.random_range(0.5..2.0)).unwrap();
        }
        for _ in 0..4 {
            let c: Vec<f64> = (0..3).map(|_| rng.random_range(-1..=2) as f64).collect();
            s.push(c, rng.random_range(0.0..3.0)).unwrap();
        }
        let proj = s.fm_eliminate("C").unwrap();
        for _ in 0..200 {
            let (a, b) = (rng.random_range(0.0..2.2), rng.random_range(0.0..2.2));
            // Fiber in C is an interval: scan it finely.
            let feasible = (0..=2000).any(|k| s.contains(&[a, b, k as f64 * 1e-3], 1e-9));
            if proj.contains(&[a, b], -1e-3) {
                prop_assert!(feasible);
            }
            if !proj.contains(&[a, b], 1e-3) {
                prop_assert!(!feasible);
            }
        }
    }

    #[test]
    fn typical_projector_bounds(seed in any::<u64>(), n in 1usize..=9, delta in 0.02f64..0.5) {
        let mut rng = derived_rng(seed, &[]);
        let rho = random::density(2, 2, &mut rng);
        let p = typical_projector(&rho, n, delta).unwrap();
        prop_assert!(p.rank() as f64 <= p.rank_bound() + 1e-9);
        let mass = p.trace_with(&vec![rho.matrix(); n]).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&mass));
        let wider = typical_projector(&rho, n, delta + 0.1).unwrap();
        prop_assert!(wider.rank() >= p.rank());
    }

    #[test]
    fn successive_decoding_inside_han_kobayashi(snr1 in 0.0f64..20.0, snr2 in 0.0f64..20.0, inr1 in 0.0f64..20.0, inr2 in 0.0f64..20.0) {
        let ic = GaussianIc::new(snr1, snr2, inr1, inr2).unwrap();
        let lambdas = split_grid(0.25).unwrap();
        let hk = gaussian_hk(&ic, &lambdas).unwrap();
        for p in gaussian_sd_rs(&ic, &lambdas).unwrap() {
            prop_assert!(hk.contains([p.r1, p.r2], 1e-9));
        }
    }

    #[test]
    fn theta_swap_region_symmetries(theta in 0.05f64..1.5) {
        let sampler = DistSampler::Grid { step: 0.1 };
        let a = vsi_formula(&theta_swap(theta), &sampler).unwrap();
        let mirrored = vsi_formula(&theta_swap(PI - theta), &sampler).unwrap();
        let shifted = vsi_formula(&theta_swap(theta + PI), &sampler).unwrap();
        prop_assert!(a.vertex_distance(&mirrored) <= 1e-6);
        prop_assert!(a.vertex_distance(&shifted) <= 1e-6);
    }
}
