//! Channel models with classical inputs and quantum outputs.

mod gaussian;
mod io;

pub use gaussian::{gaussian_cmi, GaussTerm, GaussianIc};
pub use io::{load_channel, parse_channel, save_channel, to_json_string, AnyChannel};

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use ndarray::Array2;

use crate::entropy::{check_probs, CqEnsemble, Register};
use crate::error::{QicError, Result};
use crate::qmatrix::{partial_trace, DensityOperator, PureState, C64};

/// Register names used for interference-channel ensembles.
pub const SENDER_NAMES: [&str; 2] = ["X1", "X2"];
/// Register names used for multiple access channel ensembles.
pub const MAC_NAMES: [&str; 3] = ["X", "Y", "Z"];

fn row_major(indices: &[usize], sizes: &[usize]) -> usize {
    indices.iter().zip(sizes).fold(0, |acc, (i, s)| acc * s + i)
}

fn unflatten(mut flat: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for pos in (0..sizes.len()).rev() {
        out[pos] = flat % sizes[pos];
        flat /= sizes[pos];
    }
    out
}

fn validate_states(sizes: &[usize], dim: usize, states: &[DensityOperator]) -> Result<()> {
    let total: usize = sizes.iter().product();
    if sizes.contains(&0) || states.len() != total {
        return Err(QicError::DimensionMismatch(format!("{} states for input alphabets {sizes:?}", states.len())));
    }
    for (flat, s) in states.iter().enumerate() {
        if s.dim() != dim {
            return Err(QicError::InvalidState {
                indices: unflatten(flat, sizes),
                reason: format!("dimension {} but the output dimension is {dim}", s.dim()),
            });
        }
    }
    Ok(())
}

/// Two classical inputs, two quantum outputs: `(x1, x2) -> rho^{B1 B2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CcqqChannel {
    alphabets: [usize; 2],
    dims: [usize; 2],
    states: Vec<DensityOperator>,
}

impl CcqqChannel {
    /// `states[x1 * |X2| + x2]` acts on `B1 (x) B2`.
    pub fn new(alphabets: [usize; 2], dims: [usize; 2], states: Vec<DensityOperator>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(QicError::DimensionMismatch("output dimensions must be positive".into()));
        }
        validate_states(&alphabets, dims[0] * dims[1], &states)?;
        Ok(CcqqChannel { alphabets, dims, states })
    }

    pub fn from_fn(
        alphabets: [usize; 2],
        dims: [usize; 2],
        mut f: impl FnMut(usize, usize) -> Result<DensityOperator>,
    ) -> Result<Self> {
        let mut states = Vec::with_capacity(alphabets[0] * alphabets[1]);
        for x1 in 0..alphabets[0] {
            for x2 in 0..alphabets[1] {
                states.push(f(x1, x2)?);
            }
        }
        Self::new(alphabets, dims, states)
    }

    pub fn alphabets(&self) -> [usize; 2] {
        self.alphabets
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn state(&self, x1: usize, x2: usize) -> &DensityOperator {
        &self.states[x1 * self.alphabets[1] + x2]
    }

    pub fn states(&self) -> &[DensityOperator] {
        &self.states
    }

    /// Reduced output state at receiver 1 or 2.
    pub fn receiver_state(&self, x1: usize, x2: usize, receiver: usize) -> Result<DensityOperator> {
        let keep = receiver_position(receiver)?;
        partial_trace(self.state(x1, x2), &self.dims, &[keep])
    }

    /// Ensemble over registers `X1`, `X2` with the joint output `B1 B2`.
    pub fn joint_ensemble(&self, p1: &[f64], p2: &[f64]) -> Result<CqEnsemble> {
        CqEnsemble::new(
            vec![Register::new(SENDER_NAMES[0], p1.to_vec()), Register::new(SENDER_NAMES[1], p2.to_vec())],
            self.states.clone(),
        )
    }

    /// Ensemble over registers `X1`, `X2` with output `B_receiver`.
    pub fn receiver_ensemble(&self, receiver: usize, p1: &[f64], p2: &[f64]) -> Result<CqEnsemble> {
        induced_mac(self, receiver)?.named_ensemble(&SENDER_NAMES, &[p1.to_vec(), p2.to_vec()])
    }
}

fn receiver_position(receiver: usize) -> Result<usize> {
    match receiver {
        1 | 2 => Ok(receiver - 1),
        _ => Err(QicError::InvalidArgument(format!("receiver must be 1 or 2, got {receiver}"))),
    }
}

/// Multiple access channel with two or three classical inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct CcqMac {
    alphabets: Vec<usize>,
    dim: usize,
    states: Arc<Vec<Array2<C64>>>,
}

impl CcqMac {
    /// States are stored row-major over the inputs.
    pub fn new(alphabets: Vec<usize>, dim: usize, states: Vec<DensityOperator>) -> Result<Self> {
        if !(2..=3).contains(&alphabets.len()) {
            return Err(QicError::InvalidArgument(format!(
                "a multiple access channel has 2 or 3 inputs, got {}",
                alphabets.len()
            )));
        }
        validate_states(&alphabets, dim, &states)?;
        let raw = states.into_iter().map(|s| s.into_operator().into_matrix()).collect();
        Ok(CcqMac { alphabets, dim, states: Arc::new(raw) })
    }

    pub fn from_fn(
        alphabets: Vec<usize>,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> Result<DensityOperator>,
    ) -> Result<Self> {
        let total: usize = alphabets.iter().product();
        let states = (0..total).map(|flat| f(&unflatten(flat, &alphabets))).collect::<Result<Vec<_>>>()?;
        Self::new(alphabets, dim, states)
    }

    pub fn alphabets(&self) -> &[usize] {
        &self.alphabets
    }

    pub fn senders(&self) -> usize {
        self.alphabets.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn state_matrix(&self, inputs: &[usize]) -> &Array2<C64> {
        &self.states[row_major(inputs, &self.alphabets)]
    }

    pub fn state(&self, inputs: &[usize]) -> DensityOperator {
        DensityOperator::trusted(crate::qmatrix::HermitianOperator::symmetrized(self.state_matrix(inputs).clone()))
    }

    /// Ensemble with registers `X`, `Y` (and `Z` for three senders).
    pub fn ensemble(&self, probs: &[Vec<f64>]) -> Result<CqEnsemble> {
        self.named_ensemble(&MAC_NAMES[..self.senders()], probs)
    }

    pub fn named_ensemble(&self, names: &[&str], probs: &[Vec<f64>]) -> Result<CqEnsemble> {
        if names.len() != self.senders() || probs.len() != self.senders() {
            return Err(QicError::DimensionMismatch(format!(
                "{} names and {} distributions for {} senders",
                names.len(),
                probs.len(),
                self.senders()
            )));
        }
        let registers = names
            .iter()
            .zip(probs)
            .zip(&self.alphabets)
            .map(|((n, p), &size)| {
                if p.len() != size {
                    return Err(QicError::DimensionMismatch(format!(
                        "input '{n}' has {size} symbols, distribution has {}",
                        p.len()
                    )));
                }
                Ok(Register::new(*n, p.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        CqEnsemble::from_shared(registers, Arc::clone(&self.states))
    }

    pub fn uniform_ensemble(&self) -> Result<CqEnsemble> {
        let probs: Vec<Vec<f64>> = self.alphabets.iter().map(|&a| vec![1.0 / a as f64; a]).collect();
        self.ensemble(&probs)
    }
}

/// The two-sender MAC seen by one receiver (other output traced out).
pub fn induced_mac(ch: &CcqqChannel, receiver: usize) -> Result<CcqMac> {
    receiver_position(receiver)?;
    let d = ch.dims[receiver - 1];
    CcqMac::from_fn(ch.alphabets.to_vec(), d, |x| ch.receiver_state(x[0], x[1], receiver))
}

/// The two-qubit channel that rotates the single-excitation subspace by
/// `theta` and fixes `|00>` and `|11>`.
pub fn theta_swap(theta: f64) -> CcqqChannel {
    let (c, s) = (theta.cos(), theta.sin());
    let outputs = [[1.0, 0.0, 0.0, 0.0], [0.0, c, s, 0.0], [0.0, -s, c, 0.0], [0.0, 0.0, 0.0, 1.0]];
    let states = outputs
        .iter()
        .map(|amp| {
            let norm = amp.iter().map(|a| a * a).sum::<f64>().sqrt();
            let amp: Vec<f64> = amp.iter().map(|a| a / norm).collect();
            PureState::from_real(&amp).expect("unit vector").density()
        })
        .collect();
    CcqqChannel::new([2, 2], [2, 2], states).expect("theta-swap is well formed")
}

/// Channel whose outputs are independent random density operators of the
/// given rank on `B1 B2`.
pub fn random_ccqq<R: rand::Rng + ?Sized>(
    alphabets: [usize; 2],
    dims: [usize; 2],
    rank: usize,
    rng: &mut R,
) -> Result<CcqqChannel> {
    let d = dims[0] * dims[1];
    if rank == 0 || rank > d {
        return Err(QicError::InvalidArgument(format!("rank {rank} outside 1..={d}")));
    }
    let states = (0..alphabets[0] * alphabets[1]).map(|_| crate::qmatrix::random::density(d, rank, rng)).collect();
    CcqqChannel::new(alphabets, dims, states)
}

/// Three binary inputs `(x, y, z)` selecting one of the four BB84 states.
pub fn bb84_cccq() -> CcqMac {
    let h = FRAC_1_SQRT_2;
    let zero = [1.0, 0.0];
    let one = [0.0, 1.0];
    let plus = [h, h];
    let minus = [h, -h];
    let table = [zero, plus, one, minus, one, minus, zero, plus];
    let states = table.iter().map(|amp| PureState::from_real(amp).expect("unit vector").density()).collect();
    CcqMac::new(vec![2, 2, 2], 2, states).expect("bb84 channel is well formed")
}

fn check_stochastic(rows: &[Vec<f64>], inputs: usize, outputs: usize) -> Result<()> {
    if rows.len() != inputs {
        return Err(QicError::DimensionMismatch(format!(
            "transition matrix has {} rows, expected {inputs}",
            rows.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != outputs {
            return Err(QicError::DimensionMismatch(format!(
                "transition row {i} has {} entries, expected {outputs}",
                row.len()
            )));
        }
        check_probs(&format!("transition row {i}"), row)
            .map_err(|_| QicError::InvalidArgument(format!("transition row {i} is not a probability vector")))?;
    }
    Ok(())
}

/// Classical channel `p(y1, y2 | x1, x2)` as a ccqq channel with diagonal
/// outputs. Rows are indexed by `x1 * |X2| + x2`, columns by `y1 * |Y2| + y2`.
pub fn classical_embed(alphabets: [usize; 2], outputs: [usize; 2], transition: &[Vec<f64>]) -> Result<CcqqChannel> {
    check_stochastic(transition, alphabets[0] * alphabets[1], outputs[0] * outputs[1])?;
    let states = transition.iter().map(|row| DensityOperator::diagonal(row)).collect::<Result<Vec<_>>>()?;
    CcqqChannel::new(alphabets, outputs, states)
}

/// Classical MAC `p(y | inputs)` with diagonal outputs, rows row-major over inputs.
pub fn classical_mac(alphabets: Vec<usize>, outputs: usize, transition: &[Vec<f64>]) -> Result<CcqMac> {
    check_stochastic(transition, alphabets.iter().product(), outputs)?;
    let states = transition.iter().map(|row| DensityOperator::diagonal(row)).collect::<Result<Vec<_>>>()?;
    CcqMac::new(alphabets, outputs, states)
}

/// Han-Kobayashi input: personal `U_i`, common `W_i` and the maps
/// `x_i = f_i(u_i, w_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HkInput {
    pub p_u1: Vec<f64>,
    pub p_w1: Vec<f64>,
    pub p_u2: Vec<f64>,
    pub p_w2: Vec<f64>,
    /// `f1[u1][w1]`.
    pub f1: Vec<Vec<usize>>,
    /// `f2[u2][w2]`.
    pub f2: Vec<Vec<usize>>,
}

impl HkInput {
    pub fn validate(&self, alphabets: [usize; 2]) -> Result<()> {
        for (name, p) in [("U1", &self.p_u1), ("W1", &self.p_w1), ("U2", &self.p_u2), ("W2", &self.p_w2)] {
            check_probs(name, p)?;
        }
        for (i, (f, pu, pw)) in
            [(&self.f1, &self.p_u1, &self.p_w1), (&self.f2, &self.p_u2, &self.p_w2)].into_iter().enumerate()
        {
            let total = f.len() == pu.len() && f.iter().all(|row| row.len() == pw.len());
            if !total || f.iter().flatten().any(|&x| x >= alphabets[i]) {
                return Err(QicError::InvalidArgument(format!(
                    "map f{} must be total on U{}xW{} with values below {}",
                    i + 1,
                    i + 1,
                    i + 1,
                    alphabets[i]
                )));
            }
        }
        Ok(())
    }

    /// All-common split: `U_i` trivial and `x_i = w_i`.
    pub fn all_common(p1: &[f64], p2: &[f64]) -> Self {
        HkInput {
            p_u1: vec![1.0],
            p_w1: p1.to_vec(),
            p_u2: vec![1.0],
            p_w2: p2.to_vec(),
            f1: vec![(0..p1.len()).collect()],
            f2: vec![(0..p2.len()).collect()],
        }
    }

    /// All-personal split: `W_i` trivial and `x_i = u_i`.
    pub fn all_personal(p1: &[f64], p2: &[f64]) -> Self {
        HkInput {
            p_u1: p1.to_vec(),
            p_w1: vec![1.0],
            p_u2: p2.to_vec(),
            p_w2: vec![1.0],
            f1: (0..p1.len()).map(|x| vec![x]).collect(),
            f2: (0..p2.len()).map(|x| vec![x]).collect(),
        }
    }

    /// Sender 1 fully common, sender 2 fully personal, or the reverse.
    pub fn mixed(p1: &[f64], p2: &[f64], first_common: bool) -> Self {
        let (c, p) = (Self::all_common(p1, p2), Self::all_personal(p1, p2));
        let (a, b) = if first_common { (c, p) } else { (p, c) };
        HkInput { p_u1: a.p_u1, p_w1: a.p_w1, f1: a.f1, p_u2: b.p_u2, p_w2: b.p_w2, f2: b.f2 }
    }

    /// Induced input distribution of `X_i`.
    pub fn input_distribution(&self, sender: usize, alphabet: usize) -> Vec<f64> {
        let (f, pu, pw) =
            if sender == 1 { (&self.f1, &self.p_u1, &self.p_w1) } else { (&self.f2, &self.p_u2, &self.p_w2) };
        let mut out = vec![0.0; alphabet];
        for (u, row) in f.iter().enumerate() {
            for (w, &x) in row.iter().enumerate() {
                out[x] += pu[u] * pw[w];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::binary_entropy;
    use crate::qmatrix::{random, trace_distance};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &DensityOperator, b: &DensityOperator) -> bool {
        trace_distance(a, b).unwrap() < 1e-12
    }

    #[test]
    fn theta_swap_at_zero_is_identity_on_basis() {
        let ch = theta_swap(0.0);
        for x1 in 0..2 {
            for x2 in 0..2 {
                assert!(close(ch.state(x1, x2), &DensityOperator::basis(4, 2 * x1 + x2)));
            }
        }
    }

    #[test]
    fn theta_swap_full_swap() {
        let ch = theta_swap(std::f64::consts::FRAC_PI_2);
        assert!(close(ch.state(0, 1), &DensityOperator::basis(4, 2)));
        let m = induced_mac(&ch, 1).unwrap();
        assert!(close(&m.state(&[0, 1]), &DensityOperator::basis(2, 1)));
    }

    #[test]
    fn theta_swap_marginals() {
        let ch = theta_swap(std::f64::consts::FRAC_PI_4);
        let r = ch.receiver_state(0, 1, 1).unwrap();
        assert!(close(&r, &DensityOperator::maximally_mixed(2)));
        let t: f64 = 0.7;
        let r = induced_mac(&theta_swap(t), 1).unwrap().state(&[0, 1]);
        let expected = DensityOperator::diagonal(&[t.cos().powi(2), t.sin().powi(2)]).unwrap();
        assert!(close(&r, &expected));
    }

    #[test]
    fn induced_mac_of_product_channel() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sigma: Vec<DensityOperator> = (0..2).map(|_| random::density(2, 2, &mut rng)).collect();
        let tau: Vec<DensityOperator> = (0..3).map(|_| random::density(3, 2, &mut rng)).collect();
        let ch = CcqqChannel::from_fn([2, 3], [2, 3], |a, b| Ok(sigma[a].tensor(&tau[b]))).unwrap();
        let m1 = induced_mac(&ch, 1).unwrap();
        let m2 = induced_mac(&ch, 2).unwrap();
        for a in 0..2 {
            for b in 0..3 {
                assert!(close(&m1.state(&[a, b]), &sigma[a]));
                assert!(close(&m2.state(&[a, b]), &tau[b]));
            }
        }
        assert!(induced_mac(&ch, 3).is_err());
    }

    #[test]
    fn bb84_table() {
        let ch = bb84_cccq();
        assert!(close(&ch.state(&[0, 0, 0]), &DensityOperator::basis(2, 0)));
        let h = FRAC_1_SQRT_2;
        let minus = PureState::from_real(&[h, -h]).unwrap().density();
        assert!(close(&ch.state(&[1, 0, 1]), &minus));
        let e = ch.uniform_ensemble().unwrap();
        let avg = e.conditional_states(&["X", "Y"]).unwrap()[0].1.clone();
        let plus = PureState::from_real(&[h, h]).unwrap().density();
        let expected = DensityOperator::mixture(&[0.5, 0.5], &[&DensityOperator::basis(2, 0), &plus]).unwrap();
        assert!(close(&DensityOperator::from_matrix(avg).unwrap(), &expected));
    }

    fn pipes() -> CcqqChannel {
        // y1 = x1, y2 = x2.
        let t: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        classical_embed([2, 2], [2, 2], &t).unwrap()
    }

    #[test]
    fn classical_embedding_examples() {
        let e = pipes().receiver_ensemble(1, &[0.5, 0.5], &[0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(e.mutual_info(&["X1"], &["X2"]).unwrap(), 1.0, epsilon = 1e-12);

        // y1 = x1 through BSC(0.11), y2 = x2.
        let f = 0.11;
        let t: Vec<Vec<f64>> = (0..4)
            .map(|i| {
                let (x1, x2) = (i / 2, i % 2);
                (0..4)
                    .map(|j| {
                        let (y1, y2) = (j / 2, j % 2);
                        let p1 = if y1 == x1 { 1.0 - f } else { f };
                        if y2 == x2 {
                            p1
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        let ch = classical_embed([2, 2], [2, 2], &t).unwrap();
        let e = ch.receiver_ensemble(1, &[0.5, 0.5], &[0.5, 0.5]).unwrap();
        let expected = 1.0 - binary_entropy(f).unwrap();
        assert_abs_diff_eq!(e.mutual_info(&["X1"], &[]).unwrap(), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(expected, 0.50008, epsilon = 1e-5);

        let t = vec![vec![0.25; 4]; 4];
        let ch = classical_embed([2, 2], [2, 2], &t).unwrap();
        let e = ch.joint_ensemble(&[0.3, 0.7], &[0.6, 0.4]).unwrap();
        assert_abs_diff_eq!(e.mutual_info(&["X1", "X2"], &[]).unwrap(), 0.0, epsilon = 1e-12);

        assert!(classical_embed([2, 2], [2, 2], &vec![vec![0.5, 0.4, 0.0, 0.0]; 4]).is_err());
    }

    #[test]
    fn theta_shift_by_pi_preserves_entropies() {
        for theta in [0.3, 1.1, 2.0] {
            for receiver in [1, 2] {
                let a = theta_swap(theta).receiver_ensemble(receiver, &[0.3, 0.7], &[0.8, 0.2]).unwrap();
                let b = theta_swap(theta + std::f64::consts::PI)
                    .receiver_ensemble(receiver, &[0.3, 0.7], &[0.8, 0.2])
                    .unwrap();
                for cond in [vec![], vec!["X1"], vec!["X2"], vec!["X1", "X2"]] {
                    assert_abs_diff_eq!(
                        a.cond_entropy(&cond).unwrap(),
                        b.cond_entropy(&cond).unwrap(),
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn hk_input_helpers() {
        let hk = HkInput::mixed(&[0.2, 0.8], &[0.5, 0.5], true);
        hk.validate([2, 2]).unwrap();
        assert_eq!(hk.p_u1, vec![1.0]);
        assert_eq!(hk.p_w2, vec![1.0]);
        assert_eq!(hk.input_distribution(1, 2), vec![0.2, 0.8]);
        let mut bad = hk.clone();
        bad.f1 = vec![vec![0, 5]];
        assert!(bad.validate([2, 2]).is_err());
    }
}
