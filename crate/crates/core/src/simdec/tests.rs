use super::*;
use crate::channels::{classical_mac, induced_mac, theta_swap};
use approx::assert_abs_diff_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diag(p: &[f64]) -> DensityOperator {
    DensityOperator::diagonal(p).unwrap()
}

/// Exact `Tr{Pi rho^n}` for `rho = diag(q, 1-q)` by summing type classes.
fn binomial_typical_mass(q: f64, n: usize, delta: f64) -> f64 {
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

fn idempotence_gap(p: &TypicalProjector) -> f64 {
    let m = p.materialize();
    let sq = m.matrix().dot(m.matrix());
    (&sq - m.matrix()).iter().fold(0.0f64, |a, v| a.max(v.norm()))
}

#[test]
fn pure_state_projector_is_rank_one() {
    let psi = crate::qmatrix::PureState::from_real(&[0.6, 0.8]).unwrap().density();
    for n in [1, 3, 6] {
        let p = typical_projector(&psi, n, 0.1).unwrap();
        assert_eq!(p.rank(), 1);
        let sites = vec![psi.matrix(); n];
        assert_abs_diff_eq!(p.trace_with(&sites).unwrap(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn maximally_mixed_keeps_everything() {
    let rho = DensityOperator::maximally_mixed(2);
    let p = typical_projector(&rho, 8, 0.1).unwrap();
    assert_eq!(p.rank(), 256);
    assert_abs_diff_eq!(p.trace_with(&[rho.matrix(); 8]).unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn typical_mass_matches_binomial_oracle() {
    let rho = diag(&[0.9, 0.1]);
    for n in 1..=12 {
        let p = typical_projector(&rho, n, 0.1).unwrap();
        let got = p.trace_with(&vec![rho.matrix(); n]).unwrap();
        assert_abs_diff_eq!(got, binomial_typical_mass(0.9, n, 0.1), epsilon = 1e-12);
        assert!(p.rank() as f64 <= p.rank_bound());
        p.check_bounds().unwrap();
    }
}

#[test]
fn projectors_are_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [2, 4, 6] {
        let rho = random::density(2, 2, &mut rng);
        let p = typical_projector(&rho, n, 0.3).unwrap();
        assert!(idempotence_gap(&p) < 1e-10);
        let m = p.materialize();
        assert_abs_diff_eq!(m.trace(), p.rank() as f64, epsilon = 1e-10);
    }
}

#[test]
fn apply_matches_materialized_projector() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sites: Vec<DensityOperator> = (0..4).map(|_| random::density(2, 2, &mut rng)).collect();
    let p = cond_typical_projector(&sites, 0.7, 0.3).unwrap();
    let x = random::ginibre(16, 3, &mut rng);
    let direct = p.materialize().matrix().dot(&x);
    let factored = p.apply(x.view());
    for (a, b) in direct.iter().zip(factored.iter()) {
        assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn conditional_projector_alternating_sites() {
    let pure = diag(&[1.0, 0.0]);
    let mixed = DensityOperator::maximally_mixed(2);
    let sites = vec![pure.clone(), mixed.clone(), pure, mixed];
    let p = cond_typical_projector(&sites, 0.5, 0.05).unwrap();
    // The pure sites must take their unit eigenvalue; the mixed sites are free.
    assert_eq!(p.rank(), 4);
    for idx in p.selected() {
        assert_abs_diff_eq!(p.eigenvalue(idx), 0.25, epsilon = 1e-15);
    }
}

#[test]
fn identical_sites_reduce_to_typical_projector() {
    let rho = diag(&[0.7, 0.3]);
    let h = crate::entropy::von_neumann_entropy(&rho).unwrap();
    let a = typical_projector(&rho, 6, 0.2).unwrap();
    let b = cond_typical_projector(&vec![rho; 6], h, 0.2).unwrap();
    assert_eq!(a.selected(), b.selected());
}

#[test]
fn budget_is_enforced() {
    let rho = DensityOperator::maximally_mixed(2);
    assert!(matches!(typical_projector(&rho, 13, 0.1), Err(QicError::Budget { .. })));
    assert!(typical_projector(&rho, 12, 0.1).is_ok());
}

fn orthogonal_mac() -> CcqMac {
    // Output |x y> in a 4-dimensional space.
    let t: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    classical_mac(vec![2, 2], 4, &t).unwrap()
}

#[test]
fn single_pair_element_is_support_projector() {
    let mac = induced_mac(&theta_swap(1.2), 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let u = [0.5, 0.5];
    let cx = Codebook::random(1, 4, &u, &mut rng).unwrap();
    let cy = Codebook::random(1, 4, &u, &mut rng).unwrap();
    let povm = build_povm(&mac, &cx, &cy, 0.4).unwrap();
    let e = &povm.elements[0];
    let w = e.eigenvalues().unwrap();
    assert!(w.iter().any(|&v| v > 0.5));
    for v in w.iter() {
        assert!(v.abs() < 1e-9 || (v - 1.0).abs() < 1e-9, "eigenvalue {v}");
    }
}

#[test]
fn povm_is_subnormalized_and_complete() {
    let mac = induced_mac(&theta_swap(1.2), 1).unwrap();
    let u = [0.5, 0.5];
    for seed in 0..4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = Codebook::random(3, 4, &u, &mut rng).unwrap();
        let cy = Codebook::random(2, 4, &u, &mut rng).unwrap();
        let povm = build_povm(&mac, &cx, &cy, 0.5).unwrap();
        let sum = povm.sum().unwrap();
        for v in sum.eigenvalues().unwrap().iter() {
            assert!(*v >= -1e-10 && *v <= 1.0 + 1e-10);
        }
        let gap = sum.add(&povm.abstain).unwrap().sub(&HermitianOperator::identity(16)).unwrap();
        assert!(gap.operator_norm().unwrap() <= 1e-9);
    }
}

#[test]
fn frame_and_materialized_errors_agree() {
    let mac = induced_mac(&theta_swap(0.9), 1).unwrap();
    let u = [0.5, 0.5];
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cx = Codebook::random(2, 5, &u, &mut rng).unwrap();
    let cy = Codebook::random(3, 5, &u, &mut rng).unwrap();
    let gp = build_gram_povm(&mac, &cx, &cy, 0.5).unwrap();
    let fast = gram_avg_error(&mac, &cx, &cy, &gp).unwrap();
    let slow = avg_error(&mac, &cx, &cy, &gp.materialize().unwrap()).unwrap();
    assert_abs_diff_eq!(fast, slow, epsilon = 1e-10);
    assert!((0.0..=1.0).contains(&fast));
}

#[test]
fn error_is_invariant_under_message_relabeling() {
    let mac = induced_mac(&theta_swap(0.9), 1).unwrap();
    let u = [0.5, 0.5];
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cx = Codebook::random(3, 4, &u, &mut rng).unwrap();
    let cy = Codebook::random(2, 4, &u, &mut rng).unwrap();
    let base = gram_avg_error(&mac, &cx, &cy, &build_gram_povm(&mac, &cx, &cy, 0.5).unwrap()).unwrap();
    let mut px = cx.clone();
    px.words.rotate_left(1);
    let mut py = cy.clone();
    py.words.reverse();
    let permuted = gram_avg_error(&mac, &px, &py, &build_gram_povm(&mac, &px, &py, 0.5).unwrap()).unwrap();
    assert_abs_diff_eq!(base, permuted, epsilon = 1e-12);
}

#[test]
fn trivial_povms() {
    let mac = orthogonal_mac();
    let cx = Codebook::from_words(vec![vec![0, 1]], &[0.5, 0.5]).unwrap();
    let cy = Codebook::from_words(vec![vec![1, 1]], &[0.5, 0.5]).unwrap();
    let id = Povm::new(vec![HermitianOperator::identity(16)], 1, 1, 16).unwrap();
    assert_abs_diff_eq!(avg_error(&mac, &cx, &cy, &id).unwrap(), 0.0, epsilon = 1e-12);
    let zero = Povm::new(vec![HermitianOperator::zeros(16)], 1, 1, 16).unwrap();
    assert_abs_diff_eq!(avg_error(&mac, &cx, &cy, &zero).unwrap(), 1.0, epsilon = 1e-12);
    assert!(Povm::new(vec![HermitianOperator::identity(16).scale(1.5)], 1, 1, 16).is_err());
}

#[test]
fn orthogonal_outputs_decode_reliably() {
    let mac = orthogonal_mac();
    let u = [0.5, 0.5];
    let mut success = 0.0;
    let trials = 10;
    for t in 0..trials {
        let mut rng = crate::derived_rng(21, &[t]);
        let cx = Codebook::random(2, 6, &u, &mut rng).unwrap();
        let cy = Codebook::random(2, 6, &u, &mut rng).unwrap();
        let gp = build_gram_povm(&mac, &cx, &cy, 0.05).unwrap();
        success += 1.0 - gram_avg_error(&mac, &cx, &cy, &gp).unwrap();
    }
    assert!(success / trials as f64 >= 0.9);
}

#[test]
fn codebooks_follow_their_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cb = Codebook::random(400, 50, &[0.2, 0.8], &mut rng).unwrap();
    let ones = cb.words.iter().flatten().filter(|&&x| x == 1).count() as f64;
    let freq = ones / 20_000.0;
    // Binomial standard deviation is about 0.0028.
    assert!((freq - 0.8).abs() < 0.015, "{freq}");
}

#[test]
fn codebook_sizes() {
    assert_eq!(codebook_size(10, 0.0), 1);
    assert_eq!(codebook_size(10, 0.1), 2);
    assert_eq!(codebook_size(4, 0.5), 4);
}

#[test]
fn experiment_is_deterministic() {
    let cfg = DecoderExperiment {
        mac: induced_mac(&theta_swap(1.2), 1).unwrap(),
        px: vec![0.5, 0.5],
        py: vec![0.5, 0.5],
        ns: vec![4, 6],
        delta: 0.3,
        rates: RateTarget::PentagonFraction(0.5),
        trials: 4,
        seed: 7,
    };
    let a = run_experiment(&cfg).unwrap();
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(a, b);
    for p in &a.points {
        assert!(p.ci_low <= p.mean_error && p.mean_error <= p.ci_high);
    }
}

#[test]
fn hayashi_nagaoka_trivial_cases() {
    let id = HermitianOperator::identity(3);
    let zero = HermitianOperator::zeros(3);
    assert_abs_diff_eq!(hayashi_nagaoka_slack(&id, &zero).unwrap(), 0.0, epsilon = 1e-12);
    // S = 0, T = I: LHS = I, RHS = 2I + 4I.
    assert_abs_diff_eq!(hayashi_nagaoka_slack(&zero, &id).unwrap(), 5.0, epsilon = 1e-12);
}

#[test]
fn operator_inequality_checks_pass() {
    let hn = check_hayashi_nagaoka(40, 8, 1).unwrap();
    assert!(hn.passed, "{hn:?}");
    let g = check_gentle(100, 6, 2).unwrap();
    assert!(g.passed, "{g:?}");
    let t = check_trace_ineq(100, 6, 3).unwrap();
    assert!(t.passed, "{t:?}");
}

#[test]
fn gentle_and_trace_trivial_cases() {
    let rho = diag(&[0.3, 0.7]);
    let id = HermitianOperator::identity(2);
    assert_abs_diff_eq!(gentle_slack(&[1.0], std::slice::from_ref(&rho), &id).unwrap(), 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(trace_ineq_slack(&id, &rho, &rho).unwrap(), 0.0, epsilon = 1e-12);
}

#[test]
fn commuting_three_sender_decoder_is_valid() {
    let t: Vec<Vec<f64>> =
        (0..8).map(|flat: usize| (0..8).map(|y| if y == flat { 0.9 } else { 0.1 / 7.0 }).collect()).collect();
    let mac = classical_mac(vec![2, 2, 2], 8, &t).unwrap();
    let u = [0.5, 0.5];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let books: Vec<Codebook> = (0..3).map(|_| Codebook::random(1, 2, &u, &mut rng).unwrap()).collect();
    let povm = commuting_three_sender_povm(&mac, [&books[0], &books[1], &books[2]], 1.5).unwrap();
    let top = povm.sum().unwrap().max_eigenvalue().unwrap();
    assert!(top <= 1.0 + 1e-10);
}
