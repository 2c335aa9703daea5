//! Dense complex Hermitian linear algebra.
//!
//! Basis ordering for composite systems: tensor factors are indexed left to
//! right and the composite index is row-major, i.e. for factors of
//! dimensions `d_1, ..., d_k` the basis vector `|i_1 ... i_k>` sits at
//! `((i_1 * d_2 + i_2) * d_3 + i_3) ...`. The first factor is the most
//! significant digit. Typical projectors and the channel file format both
//! rely on this convention.

use ndarray::{s, Array1, Array2, ArrayView2, Axis, ShapeBuilder};
use ndarray_linalg::{EigValsh, Eigh, UPLO};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QicError, Result};

pub type C64 = Complex64;

/// Absolute tolerance on `a[i][j] - conj(a[j][i])`, scaled by `max(1, max|a|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    data: Array2<C64>,
}

impl HermitianOperator {
    /// Validates squareness, finiteness and Hermiticity, then symmetrizes
    /// `(A + A^dagger) / 2` to absorb round-off.
    pub fn new(data: Array2<C64>) -> Result<Self> {
        let (r, c) = data.dim();
        if r != c || r == 0 {
            return Err(QicError::DimensionMismatch(format!("expected a non-empty square matrix, got {r}x{c}")));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QicError::NonFinite);
        }
        let scale = data.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        let asym = max_asymmetry(&data);
        if asym > HERMITIAN_TOL * scale {
            return Err(QicError::NotHermitian { asymmetry: asym });
        }
        Ok(Self::symmetrized(data))
    }

    /// Symmetrizes without the asymmetry check. For operators that are
    /// Hermitian by construction (products `G G^dagger`, conjugations).
    pub(crate) fn symmetrized(mut data: Array2<C64>) -> Self {
        let d = data.nrows();
        for i in 0..d {
            data[[i, i]].im = 0.0;
            for j in (i + 1)..d {
                let v = (data[[i, j]] + data[[j, i]].conj()) * 0.5;
                data[[i, j]] = v;
                data[[j, i]] = v.conj();
            }
        }
        HermitianOperator { data }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOperator { data: Array2::eye(dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOperator { data: Array2::zeros((dim, dim)) }
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(QicError::NonFinite);
        }
        let d = values.len();
        let mut data = Array2::zeros((d, d));
        for (i, v) in values.iter().enumerate() {
            data[[i, i]] = C64::new(*v, 0.0);
        }
        Self::new(data)
    }

    /// Projector `|v><v|` for an arbitrary (not necessarily normalized) vector.
    pub fn outer(v: &Array1<C64>) -> Self {
        let d = v.len();
        let data = Array2::from_shape_fn((d, d), |(i, j)| v[i] * v[j].conj());
        Self::symmetrized(data)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.data
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.data
    }

    pub fn trace(&self) -> f64 {
        self.data.diag().iter().map(|z| z.re).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        HermitianOperator { data: self.data.mapv(|z| z * factor) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(HermitianOperator { data: &self.data + &other.data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(HermitianOperator { data: &self.data - &other.data })
    }

    /// `B A B^dagger` for an arbitrary square `B`.
    pub fn conjugate_by(&self, b: &Array2<C64>) -> Result<Self> {
        if b.ncols() != self.dim() {
            return Err(QicError::DimensionMismatch(format!(
                "conjugating {}x{} operator by {}x{}",
                self.dim(),
                self.dim(),
                b.nrows(),
                b.ncols()
            )));
        }
        let bd = dagger(b);
        Ok(Self::symmetrized(b.dot(&self.data).dot(&bd)))
    }

    pub fn eig(&self) -> Result<(Array1<f64>, Array2<C64>)> {
        eig_h(self)
    }

    pub fn eigenvalues(&self) -> Result<Array1<f64>> {
        let w = self.data.eigvalsh(UPLO::Lower).map_err(|e| QicError::EigenFailure(e.to_string()))?;
        if w.iter().any(|v| !v.is_finite()) {
            return Err(QicError::EigenFailure("non-finite eigenvalue".into()));
        }
        Ok(w)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        let w = self.eigenvalues()?;
        Ok(w[w.len() - 1])
    }

    /// Largest absolute eigenvalue.
    pub fn operator_norm(&self) -> Result<f64> {
        let w = self.eigenvalues()?;
        Ok(w.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }

    /// `V f(Lambda) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let (w, v) = self.eig()?;
        Ok(from_spectrum(&w.mapv(f), &v))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    op: HermitianOperator,
}

impl DensityOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(QicError::NotUnitTrace { trace });
        }
        let min = op.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(QicError::NotPsd { min_eigenvalue: min });
        }
        Ok(DensityOperator { op })
    }

    /// For operators that are valid by construction (convex mixtures, partial
    /// traces, tensor products of valid states). Checked in debug builds.
    pub(crate) fn trusted(op: HermitianOperator) -> Self {
        debug_assert!(DensityOperator::new(op.clone()).is_ok(), "constructed operator is not a density operator");
        DensityOperator { op }
    }

    pub fn from_matrix(data: Array2<C64>) -> Result<Self> {
        Self::new(HermitianOperator::new(data)?)
    }

    pub fn pure(state: &PureState) -> Self {
        DensityOperator::trusted(HermitianOperator::outer(state.amplitudes()))
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Array1::zeros(dim);
        v[index] = ONE;
        DensityOperator::trusted(HermitianOperator::outer(&v))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityOperator::trusted(HermitianOperator::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::diagonal(probs)?)
    }

    /// Convex combination `sum_i w_i rho_i`. Weights must be a probability vector.
    pub fn mixture(weights: &[f64], states: &[&DensityOperator]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(QicError::InvalidArgument("mixture needs one weight per state".into()));
        }
        let dim = states[0].dim();
        let mut acc = Array2::<C64>::zeros((dim, dim));
        for (w, s) in weights.iter().zip(states) {
            same_dim(dim, s.dim())?;
            if *w != 0.0 {
                acc.scaled_add(C64::new(*w, 0.0), s.matrix());
            }
        }
        DensityOperator::new(HermitianOperator::symmetrized(acc))
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &Array2<C64> {
        self.op.matrix()
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.op
    }

    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        DensityOperator::trusted(tensor(&self.op, &other.op))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Array1<C64>,
}

impl PureState {
    pub fn new(amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(QicError::DimensionMismatch("empty state vector".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QicError::InvalidArgument(format!("state vector has norm {norm}, expected 1")));
        }
        Ok(PureState { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|a| C64::new(*a, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::pure(self)
    }
}

pub fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

fn max_asymmetry(a: &Array2<C64>) -> f64 {
    let d = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i..d {
            worst = worst.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    worst
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(QicError::DimensionMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Kronecker product of two arbitrary matrices.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            if aij == ZERO {
                continue;
            }
            let mut block = out.slice_mut(s![i * br..(i + 1) * br, j * bc..(j + 1) * bc]);
            block.zip_mut_with(b, |o, bv| *o = aij * bv);
        }
    }
    out
}

pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator { data: kron(&a.data, &b.data) }
}

/// Splits composite indices into (kept, traced) indices for `partial_trace`.
fn split_indices(dims: &[usize], keep: &[usize]) -> (Vec<usize>, Vec<usize>, usize, usize) {
    let total: usize = dims.iter().product();
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced_dim = total / kept_dim;
    let mut kept_idx = vec![0usize; total];
    let mut traced_idx = vec![0usize; total];
    let mut digits = vec![0usize; dims.len()];
    for full in 0..total {
        let mut rem = full;
        for pos in (0..dims.len()).rev() {
            digits[pos] = rem % dims[pos];
            rem /= dims[pos];
        }
        let (mut k, mut t) = (0usize, 0usize);
        for (pos, &d) in dims.iter().enumerate() {
            if keep.contains(&pos) {
                k = k * d + digits[pos];
            } else {
                t = t * d + digits[pos];
            }
        }
        kept_idx[full] = k;
        traced_idx[full] = t;
    }
    (kept_idx, traced_idx, kept_dim, traced_dim)
}

/// Partial trace of an arbitrary square matrix over the factors not in `keep`.
/// Kept factors appear in ascending position order.
pub fn partial_trace_matrix(m: &Array2<C64>, dims: &[usize], keep: &[usize]) -> Result<Array2<C64>> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != m.nrows() || m.nrows() != m.ncols() {
        return Err(QicError::DimensionMismatch(format!(
            "factor dims {dims:?} do not match a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.iter().any(|&k| k >= dims.len()) {
        return Err(QicError::DimensionMismatch(format!(
            "keep positions {keep:?} out of range for {} factors",
            dims.len()
        )));
    }
    let (kept_idx, traced_idx, kept_dim, traced_dim) = split_indices(dims, &keep);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); traced_dim];
    for full in 0..total {
        groups[traced_idx[full]].push(full);
    }
    let mut out = Array2::zeros((kept_dim, kept_dim));
    for group in &groups {
        for &i in group {
            for &j in group {
                out[[kept_idx[i], kept_idx[j]]] += m[[i, j]];
            }
        }
    }
    Ok(out)
}

/// Reorders tensor factors: factor `perm[k]` of the input becomes factor `k`
/// of the output.
pub fn permute_subsystems(m: &Array2<C64>, dims: &[usize], perm: &[usize]) -> Result<Array2<C64>> {
    let total: usize = dims.iter().product();
    let mut seen = vec![false; dims.len()];
    let valid =
        perm.len() == dims.len() && perm.iter().all(|&p| p < dims.len() && !std::mem::replace(&mut seen[p], true));
    if !valid || total != m.nrows() || m.nrows() != m.ncols() {
        return Err(QicError::DimensionMismatch(format!(
            "permutation {perm:?} of factors {dims:?} does not fit a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut map = vec![0usize; total];
    let mut digits = vec![0usize; dims.len()];
    for (full, slot) in map.iter_mut().enumerate() {
        let mut rem = full;
        for pos in (0..dims.len()).rev() {
            digits[pos] = rem % dims[pos];
            rem /= dims[pos];
        }
        *slot = perm.iter().zip(&new_dims).fold(0, |acc, (&p, &d)| acc * d + digits[p]);
    }
    let mut out = Array2::zeros((total, total));
    for i in 0..total {
        for j in 0..total {
            out[[map[i], map[j]]] = m[[i, j]];
        }
    }
    Ok(out)
}

pub fn partial_trace(rho: &DensityOperator, dims: &[usize], keep: &[usize]) -> Result<DensityOperator> {
    let reduced = partial_trace_matrix(rho.matrix(), dims, keep)?;
    Ok(DensityOperator::trusted(HermitianOperator::symmetrized(reduced)))
}

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
pub fn eig_h(a: &HermitianOperator) -> Result<(Array1<f64>, Array2<C64>)> {
    // LAPACK reads column-major storage; a row-major Hermitian matrix would
    // be seen as its conjugate and yield conjugated eigenvectors.
    let mut col_major = Array2::zeros(a.matrix().raw_dim().f());
    col_major.assign(a.matrix());
    let (w, v) = col_major.eigh(UPLO::Lower).map_err(|e| QicError::EigenFailure(e.to_string()))?;
    if w.iter().any(|x| !x.is_finite()) || v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(QicError::EigenFailure("non-finite eigen-decomposition".into()));
    }
    Ok((w, v))
}

/// `V diag(w) V^dagger`.
pub fn from_spectrum(w: &Array1<f64>, v: &Array2<C64>) -> HermitianOperator {
    let mut scaled = v.clone();
    for (mut col, &lambda) in scaled.axis_iter_mut(Axis(1)).zip(w.iter()) {
        col.mapv_inplace(|z| z * lambda);
    }
    HermitianOperator::symmetrized(scaled.dot(&dagger(v)))
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(a: &HermitianOperator) -> Result<f64> {
    Ok(a.eigenvalues()?.iter().map(|v| v.abs()).sum())
}

/// `||rho - sigma||_1`, in `[0, 2]`.
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    trace_norm(&rho.operator().sub(sigma.operator())?)
}

/// `A^{-1/2}` on the eigenspace with eigenvalues above `cutoff`, zero
/// elsewhere. The default cutoff is `1e-10` times the largest absolute
/// eigenvalue.
pub fn psd_sqrt_pinv(a: &HermitianOperator, cutoff: Option<f64>) -> Result<HermitianOperator> {
    let (w, v) = eig_h(a)?;
    let scale = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cutoff = cutoff.unwrap_or(1e-10 * scale);
    if w[0] < -cutoff {
        return Err(QicError::NotPsd { min_eigenvalue: w[0] });
    }
    let inv = w.mapv(|x| if x > cutoff { 1.0 / x.sqrt() } else { 0.0 });
    Ok(from_spectrum(&inv, &v))
}

/// Principal square root of a PSD operator; eigenvalues within `-PSD_TOL` of
/// zero are clamped.
pub fn psd_sqrt(a: &HermitianOperator) -> Result<HermitianOperator> {
    let (w, v) = eig_h(a)?;
    if w[0] < -PSD_TOL {
        return Err(QicError::NotPsd { min_eigenvalue: w[0] });
    }
    Ok(from_spectrum(&w.mapv(|x| x.max(0.0).sqrt()), &v))
}

/// `Tr{A B}` for Hermitian `A`, `B` (real part).
pub fn trace_product(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter().zip(b.t().iter()).map(|(x, y)| (x * y).re).sum()
}

/// Applies `ops[0] (x) ops[1] (x) ... (x) ops[n-1]` to each column of `x`
/// without materializing the Kronecker product.
pub fn apply_kron(ops: &[&Array2<C64>], x: ArrayView2<C64>) -> Array2<C64> {
    let dims: Vec<usize> = ops.iter().map(|o| o.ncols()).collect();
    let total: usize = dims.iter().product();
    assert_eq!(total, x.nrows(), "apply_kron: dimension mismatch");
    let k = x.ncols();
    let mut cur: Vec<C64> = x.iter().copied().collect();
    let mut cur_dims = dims.clone();
    for (site, op) in ops.iter().enumerate() {
        let d_in = cur_dims[site];
        let d_out = op.nrows();
        let left: usize = cur_dims[..site].iter().product();
        let right: usize = cur_dims[site + 1..].iter().product::<usize>() * k;
        let mut next = vec![ZERO; left * d_out * right];
        for l in 0..left {
            let src = &cur[l * d_in * right..(l + 1) * d_in * right];
            let dst = &mut next[l * d_out * right..(l + 1) * d_out * right];
            for a in 0..d_out {
                let drow = &mut dst[a * right..(a + 1) * right];
                for b in 0..d_in {
                    let coef = op[[a, b]];
                    if coef == ZERO {
                        continue;
                    }
                    let srow = &src[b * right..(b + 1) * right];
                    for (o, s) in drow.iter_mut().zip(srow) {
                        *o += coef * s;
                    }
                }
            }
        }
        cur = next;
        cur_dims[site] = d_out;
    }
    let rows: usize = cur_dims.iter().product();
    Array2::from_shape_vec((rows, k), cur).expect("shape consistent by construction")
}

/// Matrix JSON encoding `{"dim": d, "re": [[...]], "im": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Array2<C64>) -> Self {
        let d = m.nrows();
        MatrixJson {
            dim: d,
            re: (0..d).map(|i| (0..d).map(|j| m[[i, j]].re).collect()).collect(),
            im: (0..d).map(|i| (0..d).map(|j| m[[i, j]].im).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Array2<C64>> {
        let d = self.dim;
        let rows_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if d == 0 || !rows_ok(&self.re) || !rows_ok(&self.im) {
            return Err(QicError::Schema(format!("matrix with dim {d} must have {d}x{d} 're' and 'im' arrays")));
        }
        Ok(Array2::from_shape_fn((d, d), |(i, j)| C64::new(self.re[i][j], self.im[i][j])))
    }
}

/// Random operators for property checks and self-tests.
pub mod random {
    use ndarray::{Array1, Array2};
    use rand::Rng;
    use rand_distr::StandardNormal;

    use super::{dagger, from_spectrum, DensityOperator, HermitianOperator, PureState, C64};

    pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Array2<C64> {
        Array2::from_shape_fn((rows, cols), |_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
    }

    pub fn hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianOperator {
        let g = ginibre(dim, dim, rng);
        HermitianOperator::symmetrized((&g + &dagger(&g)).mapv(|z| z * 0.5))
    }

    /// Haar-ish unitary from the eigenvectors of a random Hermitian matrix.
    pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Array2<C64> {
        hermitian(dim, rng).eig().expect("eigensolver on random Hermitian").1
    }

    /// Random density operator of the given rank (induced measure).
    pub fn density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityOperator {
        let g = ginibre(dim, rank.max(1), rng);
        let m = g.dot(&dagger(&g));
        let tr: f64 = m.diag().iter().map(|z| z.re).sum();
        DensityOperator::trusted(HermitianOperator::symmetrized(m.mapv(|z| z / tr)))
    }

    pub fn pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
        let v: Array1<C64> =
            (0..dim).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        PureState::new(v.mapv(|z| z / n)).expect("normalized")
    }

    /// Operator with `0 <= A <= I`: random eigenbasis, eigenvalues in `[lo, hi]`.
    pub fn effect<R: Rng + ?Sized>(dim: usize, lo: f64, hi: f64, rng: &mut R) -> HermitianOperator {
        let u = unitary(dim, rng);
        let w: Array1<f64> = (0..dim).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
        from_spectrum(&w, &u)
    }

    /// Random PSD operator `G G^dagger` with the given rank, scaled by `scale / dim`.
    pub fn psd<R: Rng + ?Sized>(dim: usize, rank: usize, scale: f64, rng: &mut R) -> HermitianOperator {
        let g = ginibre(dim, rank.max(1), rng);
        HermitianOperator::symmetrized(g.dot(&dagger(&g)).mapv(|z| z * (scale / dim as f64)))
    }

    /// Random probability vector (flat Dirichlet).
    pub fn simplex<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
        let draws: Vec<f64> = (0..len).map(|_| rng.sample(rand_distr::Exp1)).collect();
        let total: f64 = draws.iter().sum();
        draws.iter().map(|x| x / total).collect()
    }
}
