//! Entropies of classical-quantum ensembles, in bits.

use std::sync::Arc;

use ndarray::Array2;

use crate::error::{QicError, Result};
use crate::qmatrix::{DensityOperator, HermitianOperator, C64};

/// Eigenvalues below this are treated as exactly zero.
pub const EIG_CLAMP: f64 = 1e-14;
/// Tolerance on the sum of a register's probability vector.
pub const PROB_TOL: f64 = 1e-12;

pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QicError::InvalidArgument(format!("binary entropy argument {p} outside [0,1]")));
    }
    Ok(h2(p))
}

/// Unchecked binary entropy; callers guarantee `p` in `[0,1]` up to round-off.
pub(crate) fn h2(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    xlog(p) + xlog(1.0 - p)
}

fn xlog(p: f64) -> f64 {
    if p <= EIG_CLAMP {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Spectrum of a Hermitian matrix with closed forms for the small and
/// diagonal cases that dominate grid scans.
pub(crate) fn spectrum(m: &Array2<C64>) -> Result<Vec<f64>> {
    let d = m.nrows();
    if d == 1 {
        return Ok(vec![m[[0, 0]].re]);
    }
    if d == 2 {
        let (a, c) = (m[[0, 0]].re, m[[1, 1]].re);
        let b = m[[0, 1]].norm();
        let mean = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        return Ok(vec![mean - rad, mean + rad]);
    }
    let diagonal = (0..d).all(|i| (0..d).all(|j| i == j || m[[i, j]] == C64::new(0.0, 0.0)));
    if diagonal {
        let mut w: Vec<f64> = m.diag().iter().map(|z| z.re).collect();
        w.sort_by(f64::total_cmp);
        return Ok(w);
    }
    Ok(HermitianOperator::symmetrized(m.clone()).eigenvalues()?.to_vec())
}

fn entropy_of_spectrum(w: &[f64]) -> f64 {
    w.iter().map(|&l| xlog(l)).sum::<f64>().max(0.0)
}

pub(crate) fn matrix_entropy(m: &Array2<C64>) -> Result<f64> {
    Ok(entropy_of_spectrum(&spectrum(m)?))
}

pub(crate) fn matrix_min_entropy(m: &Array2<C64>) -> Result<f64> {
    let w = spectrum(m)?;
    let top = w.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(-top.log2())
}

pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

pub fn min_entropy(rho: &DensityOperator) -> Result<f64> {
    matrix_min_entropy(rho.matrix())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Register {
    pub name: String,
    pub probs: Vec<f64>,
}

impl Register {
    pub fn new(name: impl Into<String>, probs: Vec<f64>) -> Self {
        Register { name: name.into(), probs }
    }

    pub fn uniform(name: impl Into<String>, size: usize) -> Self {
        Register::new(name, vec![1.0 / size as f64; size])
    }

    pub fn size(&self) -> usize {
        self.probs.len()
    }
}

/// Independent classical registers plus one quantum output state per full
/// index tuple. States are stored row-major over the registers (first
/// register most significant) and shared between ensembles that differ only
/// in their input distributions.
#[derive(Clone, Debug)]
pub struct CqEnsemble {
    registers: Vec<Register>,
    states: Arc<Vec<Array2<C64>>>,
    dim: usize,
}

pub(crate) fn check_probs(name: &str, probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(QicError::InvalidArgument(format!("register '{name}' has an empty alphabet")));
    }
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(QicError::InvalidArgument(format!("register '{name}' has a negative or non-finite probability")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROB_TOL {
        return Err(QicError::InvalidArgument(format!("register '{name}' probabilities sum to {total}")));
    }
    Ok(())
}

impl CqEnsemble {
    pub fn new(registers: Vec<Register>, states: Vec<DensityOperator>) -> Result<Self> {
        let raw = states.into_iter().map(|s| s.into_operator().into_matrix()).collect();
        Self::from_shared(registers, Arc::new(raw))
    }

    /// States must already be valid density operators of a common dimension.
    pub(crate) fn from_shared(registers: Vec<Register>, states: Arc<Vec<Array2<C64>>>) -> Result<Self> {
        for (i, r) in registers.iter().enumerate() {
            check_probs(&r.name, &r.probs)?;
            if registers[..i].iter().any(|q| q.name == r.name) {
                return Err(QicError::InvalidArgument(format!("duplicate register '{}'", r.name)));
            }
        }
        let total: usize = registers.iter().map(Register::size).product();
        if states.len() != total {
            return Err(QicError::DimensionMismatch(format!(
                "{} states supplied for {total} input tuples",
                states.len()
            )));
        }
        let dim = states.first().map(|s| s.nrows()).unwrap_or(0);
        if dim == 0 || states.iter().any(|s| s.nrows() != dim || s.ncols() != dim) {
            return Err(QicError::DimensionMismatch("ensemble states differ in dimension".into()));
        }
        Ok(CqEnsemble { registers, states, dim })
    }

    /// Same states, new distributions (one probability vector per register).
    pub fn with_probs(&self, probs: &[Vec<f64>]) -> Result<Self> {
        if probs.len() != self.registers.len() {
            return Err(QicError::DimensionMismatch(format!(
                "{} distributions for {} registers",
                probs.len(),
                self.registers.len()
            )));
        }
        let registers = self
            .registers
            .iter()
            .zip(probs)
            .map(|(r, p)| {
                if p.len() != r.size() {
                    return Err(QicError::DimensionMismatch(format!(
                        "register '{}' has {} symbols, distribution has {}",
                        r.name,
                        r.size(),
                        p.len()
                    )));
                }
                Ok(Register::new(r.name.clone(), p.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_shared(registers, Arc::clone(&self.states))
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn state(&self, indices: &[usize]) -> &Array2<C64> {
        &self.states[self.flat_index(indices)]
    }

    fn flat_index(&self, indices: &[usize]) -> usize {
        indices.iter().zip(&self.registers).fold(0, |acc, (i, r)| acc * r.size() + i)
    }

    fn positions(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let pos = self
                .registers
                .iter()
                .position(|r| r.name == *n)
                .ok_or_else(|| QicError::UnknownRegister(n.to_string()))?;
            if !out.contains(&pos) {
                out.push(pos);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Calls `f(p(c), rho_c)` for every value `c` of the conditioning
    /// registers with `p(c) > 0`, where `rho_c` averages the states over the
    /// remaining registers.
    fn for_each_conditional(&self, cond: &[usize], mut f: impl FnMut(f64, &Array2<C64>) -> Result<()>) -> Result<()> {
        let k = self.registers.len();
        let sizes: Vec<usize> = self.registers.iter().map(Register::size).collect();
        let free: Vec<usize> = (0..k).filter(|i| !cond.contains(i)).collect();
        let cond_count: usize = cond.iter().map(|&i| sizes[i]).product();
        let free_count: usize = free.iter().map(|&i| sizes[i]).product();
        let mut idx = vec![0usize; k];
        let mut acc = Array2::<C64>::zeros((self.dim, self.dim));
        for c in 0..cond_count {
            let mut rem = c;
            let mut pc = 1.0;
            for &pos in cond.iter().rev() {
                idx[pos] = rem % sizes[pos];
                rem /= sizes[pos];
                pc *= self.registers[pos].probs[idx[pos]];
            }
            if pc <= 0.0 {
                continue;
            }
            acc.fill(C64::new(0.0, 0.0));
            for u in 0..free_count {
                let mut rem = u;
                let mut pu = 1.0;
                for &pos in free.iter().rev() {
                    idx[pos] = rem % sizes[pos];
                    rem /= sizes[pos];
                    pu *= self.registers[pos].probs[idx[pos]];
                }
                if pu > 0.0 {
                    acc.scaled_add(C64::new(pu, 0.0), &self.states[self.flat_index(&idx)]);
                }
            }
            f(pc, &acc)?;
        }
        Ok(())
    }

    /// Output state averaged over all registers.
    pub fn average_state(&self) -> Result<DensityOperator> {
        let mut out = None;
        self.for_each_conditional(&[], |_, rho| {
            out = Some(rho.clone());
            Ok(())
        })?;
        DensityOperator::from_matrix(out.expect("empty conditioning has one value"))
    }

    /// Conditional states `rho_c` with their probabilities, for the given
    /// conditioning registers (in register order).
    pub fn conditional_states(&self, conditioning: &[&str]) -> Result<Vec<(f64, Array2<C64>)>> {
        let cond = self.positions(conditioning)?;
        let mut out = Vec::new();
        self.for_each_conditional(&cond, |p, rho| {
            out.push((p, rho.clone()));
            Ok(())
        })?;
        Ok(out)
    }

    /// `H(B | conditioning)`.
    pub fn cond_entropy(&self, conditioning: &[&str]) -> Result<f64> {
        let cond = self.positions(conditioning)?;
        let mut total = 0.0;
        self.for_each_conditional(&cond, |p, rho| {
            total += p * matrix_entropy(rho)?;
            Ok(())
        })?;
        Ok(total)
    }

    pub fn entropy(&self) -> Result<f64> {
        self.cond_entropy(&[])
    }

    /// `I(subject; B | conditioning)`.
    pub fn mutual_info(&self, subject: &[&str], conditioning: &[&str]) -> Result<f64> {
        if let Some(shared) = subject.iter().find(|s| conditioning.contains(s)) {
            return Err(QicError::OverlappingRegisters(shared.to_string()));
        }
        let joint: Vec<&str> = conditioning.iter().chain(subject).copied().collect();
        Ok(self.cond_entropy(conditioning)? - self.cond_entropy(&joint)?)
    }

    /// `H_min(B | conditioning)`: worst case over conditioning values.
    pub fn cond_min_entropy(&self, conditioning: &[&str]) -> Result<f64> {
        if conditioning.is_empty() {
            return Err(QicError::InvalidArgument("conditional min-entropy needs a non-empty conditioning set".into()));
        }
        let cond = self.positions(conditioning)?;
        let mut worst = f64::INFINITY;
        self.for_each_conditional(&cond, |_, rho| {
            worst = worst.min(matrix_min_entropy(rho)?);
            Ok(())
        })?;
        Ok(worst)
    }

    /// Unconditional min-entropy of the average state.
    pub fn min_entropy(&self) -> Result<f64> {
        matrix_min_entropy(self.average_state()?.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmatrix::{random, PureState};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_ensemble(rng: &mut ChaCha8Rng) -> CqEnsemble {
        let dim = rng.random_range(1..=4);
        let names = ["X", "Y", "Z"];
        let k = rng.random_range(2..=3);
        let registers: Vec<Register> =
            (0..k).map(|i| Register::new(names[i], random::simplex(rng.random_range(1..=3), rng))).collect();
        let total: usize = registers.iter().map(Register::size).product();
        let states = (0..total).map(|_| random::density(dim, rng.random_range(1..=dim), rng)).collect();
        CqEnsemble::new(registers, states).unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let c2 = (std::f64::consts::PI / 8.0).cos().powi(2);
        assert_abs_diff_eq!(binary_entropy(c2).unwrap(), 0.600876, epsilon = 1e-6);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn von_neumann_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = random::pure_state(3, &mut rng).density();
        assert_abs_diff_eq!(von_neumann_entropy(&psi).unwrap(), 0.0, epsilon = 1e-10);
        let half = DensityOperator::maximally_mixed(2);
        assert_abs_diff_eq!(von_neumann_entropy(&half).unwrap(), 1.0, epsilon = 1e-14);
        let r = DensityOperator::diagonal(&[0.853553, 0.146447]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&r).unwrap(), binary_entropy(0.853553).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn fast_spectrum_matches_lapack() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for dim in [2usize, 3] {
            for _ in 0..50 {
                let r = random::density(dim, dim, &mut rng);
                let fast = spectrum(r.matrix()).unwrap();
                let slow = r.operator().eigenvalues().unwrap();
                for (a, b) in fast.iter().zip(slow.iter()) {
                    assert_abs_diff_eq!(a, b, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn min_entropy_values() {
        assert_abs_diff_eq!(min_entropy(&DensityOperator::maximally_mixed(4)).unwrap(), 2.0, epsilon = 1e-12);
        let p = PureState::from_real(&[0.6, 0.8]).unwrap().density();
        assert_abs_diff_eq!(min_entropy(&p).unwrap(), 0.0, epsilon = 1e-12);
        let r = DensityOperator::diagonal(&[0.7, 0.3]).unwrap();
        assert_abs_diff_eq!(min_entropy(&r).unwrap(), 0.5146, epsilon = 1e-4);
    }

    #[test]
    fn empty_conditioning_is_average_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let e = random_ensemble(&mut rng);
            let direct = von_neumann_entropy(&e.average_state().unwrap()).unwrap();
            assert_abs_diff_eq!(e.cond_entropy(&[]).unwrap(), direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_outputs_conditioned_on_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let states = (0..4).map(|_| random::pure_state(2, &mut rng).density()).collect();
        let e = CqEnsemble::new(vec![Register::uniform("X", 2), Register::uniform("Y", 2)], states).unwrap();
        assert_abs_diff_eq!(e.cond_entropy(&["X", "Y"]).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn constant_states_carry_no_information() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random::density(3, 3, &mut rng);
        let e =
            CqEnsemble::new(vec![Register::new("X", vec![0.3, 0.7]), Register::uniform("Y", 3)], vec![s; 6]).unwrap();
        assert_abs_diff_eq!(e.mutual_info(&["X", "Y"], &[]).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.mutual_info(&["X"], &["Y"]).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn register_errors() {
        let e = CqEnsemble::new(
            vec![Register::uniform("X", 2)],
            vec![DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)],
        )
        .unwrap();
        assert!(matches!(e.cond_entropy(&["Q"]), Err(QicError::UnknownRegister(_))));
        assert!(matches!(e.mutual_info(&["X"], &["X"]), Err(QicError::OverlappingRegisters(_))));
        assert!(e.cond_min_entropy(&[]).is_err());
        assert!(
            CqEnsemble::new(vec![Register::new("X", vec![0.5, 0.6])], vec![DensityOperator::basis(2, 0); 2]).is_err()
        );
    }

    #[test]
    fn cond_min_entropy_picks_worst_case() {
        let e = CqEnsemble::new(
            vec![Register::uniform("X", 2)],
            vec![DensityOperator::basis(2, 0), DensityOperator::maximally_mixed(2)],
        )
        .unwrap();
        assert_abs_diff_eq!(e.cond_min_entropy(&["X"]).unwrap(), 0.0, epsilon = 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chain_rule_and_nonnegativity(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = random_ensemble(&mut rng);
            let ixy = e.mutual_info(&["X", "Y"], &[]).unwrap();
            let iy = e.mutual_info(&["Y"], &[]).unwrap();
            let ix_y = e.mutual_info(&["X"], &["Y"]).unwrap();
            prop_assert!((ixy - iy - ix_y).abs() <= 1e-9);
            prop_assert!(ix_y >= -1e-9);
            prop_assert!(e.mutual_info(&["Y"], &["X"]).unwrap() >= -1e-9);
        }

        #[test]
        fn min_entropy_bounds(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let e = random_ensemble(&mut rng);
            for cond in [vec!["X"], vec!["Y"], vec!["X", "Y"]] {
                let hmin = e.cond_min_entropy(&cond).unwrap();
                prop_assert!(hmin <= e.cond_entropy(&cond).unwrap() + 1e-9);
                let bound = 2f64.powf(-hmin);
                for (_, rho) in e.conditional_states(&cond).unwrap() {
                    let gap = HermitianOperator::identity(e.dim()).scale(bound)
                        .sub(&HermitianOperator::symmetrized(rho)).unwrap();
                    prop_assert!(gap.min_eigenvalue().unwrap() >= -1e-9);
                }
            }
        }
    }
}
