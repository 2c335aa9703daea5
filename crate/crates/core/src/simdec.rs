//! Finite-blocklength simultaneous decoding: weak typical projectors, the
//! square-root decoding POVM for two senders, Monte Carlo error estimates and
//! numeric checks of the operator inequalities behind the error analysis.
//!
//! Projectors are kept in factored form: per-site eigenbases plus the list of
//! retained product eigenvectors. Projectors act on vectors through per-site
//! basis changes, and the decoder only diagonalizes the Gram matrix of its
//! frame vectors.

use std::ops::Range;

use ndarray::{s, Array1, Array2, ArrayView2};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::CcqMac;
use crate::entropy::{matrix_entropy, CqEnsemble, EIG_CLAMP};
use crate::error::{QicError, Result};
use crate::qmatrix::{
    apply_kron, dagger, eig_h, psd_sqrt, psd_sqrt_pinv, random, trace_norm, trace_product, DensityOperator,
    HermitianOperator, C64,
};

/// Largest Hilbert-space dimension that may be enumerated or materialized.
pub const DIM_BUDGET: usize = 4096;
pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_NS: [usize; 4] = [4, 6, 8, 10];
/// Slack for sample entropies that sit exactly on the typicality window edge.
const WINDOW_TOL: f64 = 1e-12;
const POVM_TOL: f64 = 1e-10;
const COMPLETENESS_TOL: f64 = 1e-9;

/// Eigendecomposition of one site's state.
#[derive(Clone, Debug)]
pub struct SiteBasis {
    pub vectors: Array2<C64>,
    pub values: Vec<f64>,
}

impl SiteBasis {
    pub fn of(m: &Array2<C64>) -> Result<Self> {
        let (w, v) = eig_h(&HermitianOperator::symmetrized(m.clone()))?;
        Ok(SiteBasis { vectors: v, values: w.iter().map(|x| x.max(0.0)).collect() })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

fn check_budget(dims: impl Iterator<Item = usize>) -> Result<usize> {
    let mut total: usize = 1;
    for d in dims {
        total = total.saturating_mul(d);
        if total > DIM_BUDGET {
            return Err(QicError::Budget { dim: total, budget: DIM_BUDGET });
        }
    }
    Ok(total)
}

/// Weak (conditionally) typical projector in factored form.
#[derive(Clone, Debug)]
pub struct TypicalProjector {
    sites: Vec<SiteBasis>,
    selected: Vec<Vec<usize>>,
    entropy: f64,
    delta: f64,
}

impl TypicalProjector {
    /// Keeps every product eigenvector whose sample entropy
    /// `-(1/n) sum log2 lambda_i` is within `delta` of `entropy`.
    pub fn from_sites(sites: Vec<SiteBasis>, entropy: f64, delta: f64) -> Result<Self> {
        if sites.is_empty() {
            return Err(QicError::InvalidArgument("blocklength must be at least 1".into()));
        }
        if delta.is_nan() || delta <= 0.0 || !entropy.is_finite() {
            return Err(QicError::InvalidArgument(format!(
                "typicality needs delta > 0 and a finite entropy, got delta {delta}, entropy {entropy}"
            )));
        }
        let total = check_budget(sites.iter().map(SiteBasis::dim))?;
        let n = sites.len() as f64;
        let logs: Vec<Vec<f64>> = sites
            .iter()
            .map(|s| s.values.iter().map(|&v| if v > EIG_CLAMP { v.log2() } else { f64::NEG_INFINITY }).collect())
            .collect();
        let mut selected = Vec::new();
        let mut digits = vec![0usize; sites.len()];
        for _ in 0..total {
            let log_p: f64 = digits.iter().zip(&logs).map(|(&a, l)| l[a]).sum();
            if log_p.is_finite() && (-log_p / n - entropy).abs() <= delta + WINDOW_TOL {
                selected.push(digits.clone());
            }
            for (pos, s) in sites.iter().enumerate().rev() {
                digits[pos] += 1;
                if digits[pos] < s.dim() {
                    break;
                }
                digits[pos] = 0;
            }
        }
        let proj = TypicalProjector { sites, selected, entropy, delta };
        proj.check_bounds()?;
        Ok(proj)
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn dim(&self) -> usize {
        self.sites.iter().map(SiteBasis::dim).product()
    }

    pub fn rank(&self) -> usize {
        self.selected.len()
    }

    pub fn selected(&self) -> &[Vec<usize>] {
        &self.selected
    }

    pub fn sites(&self) -> &[SiteBasis] {
        &self.sites
    }

    pub fn entropy(&self) -> f64 {
        self.entropy
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `2^{n(H + delta)}`.
    pub fn rank_bound(&self) -> f64 {
        (self.n() as f64 * (self.entropy + self.delta)).exp2()
    }

    /// Product eigenvalue of a retained index.
    pub fn eigenvalue(&self, index: &[usize]) -> f64 {
        index.iter().zip(&self.sites).map(|(&a, s)| s.values[a]).product()
    }

    /// Rank bound and the eigenvalue sandwich
    /// `2^{-n(H+delta)} <= lambda <= 2^{-n(H-delta)}` on every retained index.
    pub fn check_bounds(&self) -> Result<()> {
        let n = self.n() as f64;
        let lo = -n * (self.entropy + self.delta) - n * WINDOW_TOL - 1e-12;
        let hi = -n * (self.entropy - self.delta) + n * WINDOW_TOL + 1e-12;
        for idx in &self.selected {
            let l: f64 = idx.iter().zip(&self.sites).map(|(&a, s)| s.values[a].log2()).sum();
            if l < lo || l > hi {
                return Err(QicError::InvalidArgument(format!(
                    "typical index {idx:?} has log-eigenvalue {l} outside [{lo}, {hi}]"
                )));
            }
        }
        if self.rank() as f64 > self.rank_bound() * (n * WINDOW_TOL).exp2() {
            return Err(QicError::InvalidArgument(format!(
                "rank {} exceeds 2^(n(H+delta)) = {}",
                self.rank(),
                self.rank_bound()
            )));
        }
        Ok(())
    }

    /// Orthonormal columns spanning the projector's range.
    pub fn columns(&self) -> Array2<C64> {
        let dim = self.dim();
        let mut out = Array2::zeros((dim, self.rank()));
        for (c, idx) in self.selected.iter().enumerate() {
            let mut v = Array1::from_elem(1, C64::new(1.0, 0.0));
            for (s, &a) in self.sites.iter().zip(idx) {
                let col = s.vectors.column(a);
                let mut next = Array1::zeros(v.len() * col.len());
                for (i, x) in v.iter().enumerate() {
                    for (j, y) in col.iter().enumerate() {
                        next[i * col.len() + j] = x * y;
                    }
                }
                v = next;
            }
            out.column_mut(c).assign(&v);
        }
        out
    }

    pub fn materialize(&self) -> HermitianOperator {
        let q = self.columns();
        HermitianOperator::symmetrized(q.dot(&dagger(&q)))
    }

    /// Flat (row-major) positions of the retained product eigenvectors.
    pub fn flat_indices(&self) -> Vec<usize> {
        self.selected.iter().map(|idx| idx.iter().zip(&self.sites).fold(0, |acc, (&a, s)| acc * s.dim() + a)).collect()
    }

    /// `Pi x` for each column of `x`, without materializing `Pi`.
    pub fn apply(&self, x: ArrayView2<C64>) -> Array2<C64> {
        let adj: Vec<Array2<C64>> = self.sites.iter().map(|s| dagger(&s.vectors)).collect();
        let mut coeffs = apply_kron(&adj.iter().collect::<Vec<_>>(), x);
        let mut keep = vec![false; self.dim()];
        for f in self.flat_indices() {
            keep[f] = true;
        }
        for (row, &k) in coeffs.rows_mut().into_iter().zip(&keep) {
            if !k {
                row.into_iter().for_each(|v| *v = C64::new(0.0, 0.0));
            }
        }
        let vecs: Vec<&Array2<C64>> = self.sites.iter().map(|s| &s.vectors).collect();
        apply_kron(&vecs, coeffs.view())
    }

    /// `Tr{Pi (rho_1 (x) ... (x) rho_n)}`.
    pub fn trace_with(&self, site_states: &[&Array2<C64>]) -> Result<f64> {
        let diag: Vec<Vec<f64>> = self
            .sites
            .iter()
            .zip(site_states)
            .map(|(s, rho)| {
                let m = dagger(&s.vectors).dot(*rho).dot(&s.vectors);
                (0..s.dim()).map(|a| m[[a, a]].re).collect()
            })
            .collect();
        if diag.len() != self.n() {
            return Err(QicError::DimensionMismatch("site count differs from blocklength".into()));
        }
        Ok(self.selected.iter().map(|idx| idx.iter().zip(&diag).map(|(&a, d)| d[a]).product::<f64>()).sum())
    }
}

/// Typical projector of `rho^{(x) n}`.
pub fn typical_projector(rho: &DensityOperator, n: usize, delta: f64) -> Result<TypicalProjector> {
    let site = SiteBasis::of(rho.matrix())?;
    let h = matrix_entropy(rho.matrix())?;
    TypicalProjector::from_sites(vec![site; n], h, delta)
}

/// Conditionally typical projector for `rho_1 (x) ... (x) rho_n`, with the
/// ensemble-average conditional entropy `hbar` supplied by the caller.
pub fn cond_typical_projector(site_states: &[DensityOperator], hbar: f64, delta: f64) -> Result<TypicalProjector> {
    let sites = site_states.iter().map(|s| SiteBasis::of(s.matrix())).collect::<Result<Vec<_>>>()?;
    TypicalProjector::from_sites(sites, hbar, delta)
}

/// Codewords drawn i.i.d. from `probs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Codebook {
    pub n: usize,
    pub probs: Vec<f64>,
    pub words: Vec<Vec<usize>>,
}

impl Codebook {
    pub fn random<R: Rng + ?Sized>(size: usize, n: usize, probs: &[f64], rng: &mut R) -> Result<Self> {
        crate::entropy::check_probs("codebook", probs)?;
        if size == 0 || n == 0 {
            return Err(QicError::InvalidArgument("codebooks need at least one word of length at least 1".into()));
        }
        let words = (0..size)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let u: f64 = rng.random();
                        let mut acc = 0.0;
                        for (k, p) in probs.iter().enumerate() {
                            acc += p;
                            if u < acc {
                                return k;
                            }
                        }
                        probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        Ok(Codebook { n, probs: probs.to_vec(), words })
    }

    pub fn from_words(words: Vec<Vec<usize>>, probs: &[f64]) -> Result<Self> {
        crate::entropy::check_probs("codebook", probs)?;
        let n = words.first().map_or(0, Vec::len);
        if n == 0 || words.iter().any(|w| w.len() != n || w.iter().any(|&x| x >= probs.len())) {
            return Err(QicError::InvalidArgument(
                "codewords must share a positive length and use valid symbols".into(),
            ));
        }
        Ok(Codebook { n, probs: probs.to_vec(), words })
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }
}

/// Per-symbol states and entropies of a two-sender MAC under the codebook
/// distributions.
struct SymbolData {
    avg: SiteBasis,
    h_avg: f64,
    x: Vec<SiteBasis>,
    h_x: f64,
    xy: Vec<SiteBasis>,
    h_xy: f64,
    states: Vec<Array2<C64>>,
    ay: usize,
}

impl SymbolData {
    fn new(mac: &CcqMac, px: &[f64], py: &[f64]) -> Result<Self> {
        if mac.senders() != 2 {
            return Err(QicError::InvalidArgument("the simultaneous decoder needs a two-sender channel".into()));
        }
        let [ax, ay] = [mac.alphabets()[0], mac.alphabets()[1]];
        if px.len() != ax || py.len() != ay {
            return Err(QicError::DimensionMismatch("codebook alphabets differ from the channel's".into()));
        }
        let e: CqEnsemble = mac.ensemble(&[px.to_vec(), py.to_vec()])?;
        let d = mac.dim();
        let states: Vec<Array2<C64>> = (0..ax)
            .flat_map(|x| (0..ay).map(move |y| (x, y)))
            .map(|(x, y)| mac.state_matrix(&[x, y]).clone())
            .collect();
        let mut avg = Array2::<C64>::zeros((d, d));
        let mut x_states = Vec::with_capacity(ax);
        for x in 0..ax {
            let mut rx = Array2::<C64>::zeros((d, d));
            for y in 0..ay {
                rx.scaled_add(C64::new(py[y], 0.0), &states[x * ay + y]);
            }
            avg.scaled_add(C64::new(px[x], 0.0), &rx);
            x_states.push(rx);
        }
        Ok(SymbolData {
            avg: SiteBasis::of(&avg)?,
            h_avg: e.entropy()?,
            x: x_states.iter().map(SiteBasis::of).collect::<Result<_>>()?,
            h_x: e.cond_entropy(&["X"])?,
            xy: states.iter().map(SiteBasis::of).collect::<Result<_>>()?,
            h_xy: e.cond_entropy(&["X", "Y"])?,
            states,
            ay,
        })
    }

    fn output(&self, x: &[usize], y: &[usize]) -> Vec<&Array2<C64>> {
        x.iter().zip(y).map(|(&a, &b)| &self.states[a * self.ay + b]).collect()
    }
}

fn check_codebooks(cx: &Codebook, cy: &Codebook) -> Result<()> {
    if cx.n != cy.n {
        return Err(QicError::DimensionMismatch(format!("codeword lengths {} and {} differ", cx.n, cy.n)));
    }
    Ok(())
}

/// Square-root POVM in frame form. With `F_{l,m} = Pi Pi_{x(l)} Q_{x(l),y(m)}`
/// (`Q` orthonormal columns of the pair projector) and `F` all blocks side by
/// side, `Pi'_{l,m} = F_{l,m} F_{l,m}^dagger` and
/// `(F F^dagger)^{-1/2} F = F (F^dagger F)^{-1/2}`, so
/// `Lambda_{l,m} = R_{l,m} R_{l,m}^dagger` with `R` either side of that
/// identity, whichever Gram matrix is smaller.
#[derive(Clone, Debug)]
pub struct GramPovm {
    /// `R`, one column block per message pair.
    pub roots: Array2<C64>,
    /// Column ranges of `R`, indexed `l * M + m`.
    pub blocks: Vec<Range<usize>>,
    pub l: usize,
    pub m: usize,
    /// Rank of the average-state typical projector.
    pub typical_rank: usize,
}

pub fn build_gram_povm(mac: &CcqMac, cx: &Codebook, cy: &Codebook, delta: f64) -> Result<GramPovm> {
    check_codebooks(cx, cy)?;
    let sym = SymbolData::new(mac, &cx.probs, &cy.probs)?;
    build_gram_with(&sym, cx, cy, delta)
}

fn build_gram_with(sym: &SymbolData, cx: &Codebook, cy: &Codebook, delta: f64) -> Result<GramPovm> {
    let n = cx.n;
    let pi = TypicalProjector::from_sites(vec![sym.avg.clone(); n], sym.h_avg, delta)?;
    let dim = pi.dim();
    let (l, m) = (cx.size(), cy.size());
    let mut frames = Vec::with_capacity(l * m);
    for xw in &cx.words {
        let px = TypicalProjector::from_sites(xw.iter().map(|&x| sym.x[x].clone()).collect(), sym.h_x, delta)?;
        for yw in &cy.words {
            let sites = xw.iter().zip(yw).map(|(&x, &y)| sym.xy[x * sym.ay + y].clone()).collect();
            let pxy = TypicalProjector::from_sites(sites, sym.h_xy, delta)?;
            let f = if pi.rank() == 0 || px.rank() == 0 || pxy.rank() == 0 {
                Array2::zeros((dim, 0))
            } else {
                pi.apply(px.apply(pxy.columns().view()).view())
            };
            frames.push(f);
        }
    }
    let total: usize = frames.iter().map(|f| f.ncols()).sum();
    let mut frame = Array2::<C64>::zeros((dim, total));
    let mut blocks = Vec::with_capacity(frames.len());
    let mut start = 0;
    for f in &frames {
        frame.slice_mut(s![.., start..start + f.ncols()]).assign(f);
        blocks.push(start..start + f.ncols());
        start += f.ncols();
    }
    let roots = if total == 0 || frame.iter().all(|v| v.norm() == 0.0) {
        Array2::zeros((dim, total))
    } else if total <= dim {
        let gram = dagger(&frame).dot(&frame);
        frame.dot(psd_sqrt_pinv(&HermitianOperator::symmetrized(gram), None)?.matrix())
    } else {
        let outer = frame.dot(&dagger(&frame));
        psd_sqrt_pinv(&HermitianOperator::symmetrized(outer), None)?.matrix().dot(&frame)
    };
    Ok(GramPovm { roots, blocks, l, m, typical_rank: pi.rank() })
}

impl GramPovm {
    pub fn element(&self, index: usize) -> HermitianOperator {
        let r = self.roots.slice(s![.., self.blocks[index].clone()]);
        HermitianOperator::symmetrized(r.dot(&dagger(&r.to_owned())))
    }

    pub fn materialize(&self) -> Result<Povm> {
        let elements = (0..self.blocks.len()).map(|k| self.element(k)).collect();
        Povm::new(elements, self.l, self.m, self.roots.nrows())
    }
}

/// Average error of the frame-form POVM; abstain mass counts as error.
pub fn gram_avg_error(mac: &CcqMac, cx: &Codebook, cy: &Codebook, povm: &GramPovm) -> Result<f64> {
    let sym = SymbolData::new(mac, &cx.probs, &cy.probs)?;
    gram_error_with(&sym, cx, cy, povm)
}

fn gram_error_with(sym: &SymbolData, cx: &Codebook, cy: &Codebook, povm: &GramPovm) -> Result<f64> {
    let mut success = 0.0;
    for (i, xw) in cx.words.iter().enumerate() {
        for (j, yw) in cy.words.iter().enumerate() {
            let r = povm.roots.slice(s![.., povm.blocks[i * cy.size() + j].clone()]);
            if r.ncols() == 0 {
                continue;
            }
            // Tr{R^dagger rho R} with rho applied factor by factor.
            let rho_r = apply_kron(&sym.output(xw, yw), r);
            success += r.iter().zip(rho_r.iter()).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        }
    }
    Ok((1.0 - success / (cx.size() * cy.size()) as f64).clamp(0.0, 1.0))
}

/// Decoding POVM with explicit elements and the abstain remainder.
#[derive(Clone, Debug)]
pub struct Povm {
    /// Indexed `l * M + m`.
    pub elements: Vec<HermitianOperator>,
    pub abstain: HermitianOperator,
    pub l: usize,
    pub m: usize,
}

impl Povm {
    /// Validates positivity and sub-normalization, then sets
    /// `abstain = I - sum Lambda` clipped to be positive.
    pub fn new(elements: Vec<HermitianOperator>, l: usize, m: usize, dim: usize) -> Result<Self> {
        if elements.len() != l * m || elements.iter().any(|e| e.dim() != dim) {
            return Err(QicError::DimensionMismatch(format!("need {} elements of dimension {dim}", l * m)));
        }
        let mut total = HermitianOperator::zeros(dim);
        for e in &elements {
            let lo = e.min_eigenvalue()?;
            if lo < -POVM_TOL {
                return Err(QicError::NotPsd { min_eigenvalue: lo });
            }
            total = total.add(e)?;
        }
        let top = total.max_eigenvalue()?;
        if top > 1.0 + POVM_TOL {
            return Err(QicError::InvalidArgument(format!("POVM elements sum above identity: {top}")));
        }
        let abstain = HermitianOperator::identity(dim).sub(&total)?.map_spectrum(|v| v.max(0.0))?;
        let gap = total.add(&abstain)?.sub(&HermitianOperator::identity(dim))?.operator_norm()?;
        if gap > COMPLETENESS_TOL {
            return Err(QicError::InvalidArgument(format!("POVM completeness off by {gap}")));
        }
        Ok(Povm { elements, abstain, l, m })
    }

    pub fn sum(&self) -> Result<HermitianOperator> {
        self.elements.iter().try_fold(HermitianOperator::zeros(self.abstain.dim()), |acc, e| acc.add(e))
    }
}

/// Materialized square-root POVM.
pub fn build_povm(mac: &CcqMac, cx: &Codebook, cy: &Codebook, delta: f64) -> Result<Povm> {
    build_gram_povm(mac, cx, cy, delta)?.materialize()
}

fn product_state(states: &[&Array2<C64>]) -> Array2<C64> {
    states.iter().skip(1).fold(states[0].clone(), |acc, s| crate::qmatrix::kron(&acc, s))
}

/// `1/(LM) sum Tr{(I - Lambda_{l,m}) rho_{x(l), y(m)}}` with explicit
/// product output states.
pub fn avg_error(mac: &CcqMac, cx: &Codebook, cy: &Codebook, povm: &Povm) -> Result<f64> {
    check_codebooks(cx, cy)?;
    if povm.l != cx.size() || povm.m != cy.size() {
        return Err(QicError::DimensionMismatch("POVM and codebook sizes differ".into()));
    }
    check_budget(std::iter::repeat_n(mac.dim(), cx.n))?;
    let mut success = 0.0;
    for (i, xw) in cx.words.iter().enumerate() {
        for (j, yw) in cy.words.iter().enumerate() {
            let states: Vec<&Array2<C64>> = xw.iter().zip(yw).map(|(&x, &y)| mac.state_matrix(&[x, y])).collect();
            success += trace_product(povm.elements[i * cy.size() + j].matrix(), &product_state(&states));
        }
    }
    Ok((1.0 - success / (cx.size() * cy.size()) as f64).clamp(0.0, 1.0))
}

/// Materialized three-sender decoder for commuting averaged states:
/// `Pi'_{k,l,m} = M^dagger M` with
/// `M = Pi_xyz Pi_xy Pi_xz Pi_yz Pi_x Pi_y Pi_z Pi`. Small blocklengths only.
pub fn commuting_three_sender_povm(mac: &CcqMac, books: [&Codebook; 3], delta: f64) -> Result<Povm> {
    if mac.senders() != 3 {
        return Err(QicError::InvalidArgument("three-sender decoder needs a cccq channel".into()));
    }
    let n = books[0].n;
    if books.iter().any(|b| b.n != n) {
        return Err(QicError::DimensionMismatch("codeword lengths differ".into()));
    }
    let dim = check_budget(std::iter::repeat_n(mac.dim(), n))?;
    let probs: Vec<Vec<f64>> = books.iter().map(|b| b.probs.clone()).collect();
    let e = mac.ensemble(&probs)?;
    let names = ["X", "Y", "Z"];
    // Conditioning subsets in the order the projectors act, last applied first.
    let subsets: [&[usize]; 8] = [&[0, 1, 2], &[0, 1], &[0, 2], &[1, 2], &[0], &[1], &[2], &[]];
    let mut per_subset = Vec::with_capacity(8);
    for set in subsets {
        let cond: Vec<&str> = set.iter().map(|&k| names[k]).collect();
        let h = e.cond_entropy(&cond)?;
        per_subset.push((set, h, e.conditional_states(&cond)?));
    }
    let sizes = [books[0].size(), books[1].size(), books[2].size()];
    let alph = mac.alphabets().to_vec();
    let mut primes = Vec::with_capacity(sizes.iter().product());
    for k in 0..sizes[0] {
        for l in 0..sizes[1] {
            for m in 0..sizes[2] {
                let words = [&books[0].words[k], &books[1].words[l], &books[2].words[m]];
                let mut op = Array2::<C64>::eye(dim);
                for (set, h, states) in per_subset.iter().rev() {
                    let sites = (0..n)
                        .map(|i| {
                            let flat = set.iter().fold(0usize, |acc, &s| acc * alph[s] + words[s][i]);
                            DensityOperator::from_matrix(states[flat].1.clone())
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let proj = cond_typical_projector(&sites, *h, delta)?.materialize();
                    op = proj.matrix().dot(&op);
                }
                primes.push(HermitianOperator::symmetrized(dagger(&op).dot(&op)));
            }
        }
    }
    let total = primes.iter().try_fold(HermitianOperator::zeros(dim), |acc, p| acc.add(p))?;
    let gih = psd_sqrt_pinv(&total, None)?;
    let elements = primes.iter().map(|p| p.conjugate_by(gih.matrix())).collect::<Result<Vec<_>>>()?;
    Povm::new(elements, sizes[0] * sizes[1], sizes[2], dim)
}

/// How codebook sizes are set from the single-letter MAC bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateTarget {
    /// `R1 = f I(X;B|Y)`, `R2 = f I(Y;B|X)`.
    PentagonFraction(f64),
    /// `R1 = R2 = f I(XY;B) / 2`.
    SumFraction(f64),
}

#[derive(Clone, Debug)]
pub struct DecoderExperiment {
    pub mac: CcqMac,
    pub px: Vec<f64>,
    pub py: Vec<f64>,
    pub ns: Vec<usize>,
    pub delta: f64,
    pub rates: RateTarget,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorPoint {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub l: usize,
    pub m: usize,
    pub mean_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Mean rank of the average-state typical projector.
    pub mean_typical_rank: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorCurve {
    pub points: Vec<ErrorPoint>,
}

/// Codebook size `max(1, round(2^{nR}))`.
pub fn codebook_size(n: usize, rate: f64) -> usize {
    ((n as f64 * rate).exp2().round() as usize).max(1)
}

impl DecoderExperiment {
    pub fn target_rates(&self) -> Result<(f64, f64)> {
        let e = self.mac.ensemble(&[self.px.clone(), self.py.clone()])?;
        Ok(match self.rates {
            RateTarget::PentagonFraction(f) => (f * e.mutual_info(&["X"], &["Y"])?, f * e.mutual_info(&["Y"], &["X"])?),
            RateTarget::SumFraction(f) => {
                let s = f * e.mutual_info(&["X", "Y"], &[])? / 2.0;
                (s, s)
            }
        })
    }
}

/// Mean error over `trials` codebook pairs per blocklength, with a normal
/// 95% interval clipped to `[0, 1]`. Trial `t` at blocklength `n` draws from
/// `derived_rng(seed, [n, t])`, so results do not depend on thread count.
pub fn run_experiment(cfg: &DecoderExperiment) -> Result<ErrorCurve> {
    if cfg.trials == 0 || cfg.ns.is_empty() {
        return Err(QicError::InvalidArgument("need at least one trial and one blocklength".into()));
    }
    for &n in &cfg.ns {
        check_budget(std::iter::repeat_n(cfg.mac.dim(), n))?;
    }
    let sym = SymbolData::new(&cfg.mac, &cfg.px, &cfg.py)?;
    let (r1, r2) = cfg.target_rates()?;
    let mut points = Vec::with_capacity(cfg.ns.len());
    for &n in &cfg.ns {
        let (l, m) = (codebook_size(n, r1), codebook_size(n, r2));
        let runs: Vec<Result<(f64, usize)>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = crate::derived_rng(cfg.seed, &[n as u64, t as u64]);
                let cx = Codebook::random(l, n, &cfg.px, &mut rng)?;
                let cy = Codebook::random(m, n, &cfg.py, &mut rng)?;
                let povm = build_gram_with(&sym, &cx, &cy, cfg.delta)?;
                Ok((gram_error_with(&sym, &cx, &cy, &povm)?, povm.typical_rank))
            })
            .collect();
        let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
        let k = runs.len() as f64;
        let mean = runs.iter().map(|r| r.0).sum::<f64>() / k;
        let var = if runs.len() > 1 { runs.iter().map(|r| (r.0 - mean).powi(2)).sum::<f64>() / (k - 1.0) } else { 0.0 };
        let half = 1.96 * (var / k).sqrt();
        points.push(ErrorPoint {
            n,
            r1,
            r2,
            l,
            m,
            mean_error: mean,
            ci_low: (mean - half).max(0.0),
            ci_high: (mean + half).min(1.0),
            mean_typical_rank: runs.iter().map(|r| r.1 as f64).sum::<f64>() / k,
        });
    }
    Ok(ErrorCurve { points })
}

/// Outcome of a randomized operator-inequality check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub trials: usize,
    /// Smallest slack seen (RHS minus LHS, or the minimum eigenvalue of the
    /// difference for operator inequalities).
    pub min_slack: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// JSON of the first violating instance.
    pub failure: Option<String>,
}

impl InequalityReport {
    fn collect(name: &str, tolerance: f64, results: Vec<Result<(f64, String)>>) -> Result<Self> {
        let results = results.into_iter().collect::<Result<Vec<_>>>()?;
        let min_slack = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let failure = results.iter().find(|r| r.0 < -tolerance).map(|r| r.1.clone());
        Ok(InequalityReport {
            name: name.into(),
            trials: results.len(),
            min_slack,
            tolerance,
            passed: failure.is_none(),
            failure,
        })
    }
}

fn instance_json(parts: &[(&str, &Array2<C64>)]) -> String {
    let map: serde_json::Map<String, serde_json::Value> = parts
        .iter()
        .map(|(k, m)| {
            (k.to_string(), serde_json::to_value(crate::qmatrix::MatrixJson::from_matrix(m)).unwrap_or_default())
        })
        .collect();
    serde_json::Value::Object(map).to_string()
}

/// Residual `lambda_min(2(I - S) + 4T - (I - (S+T)^{-1/2} S (S+T)^{-1/2}))`.
pub fn hayashi_nagaoka_slack(s: &HermitianOperator, t: &HermitianOperator) -> Result<f64> {
    let dim = s.dim();
    let id = HermitianOperator::identity(dim);
    let inv = psd_sqrt_pinv(&s.add(t)?, None)?;
    let lhs = id.sub(&s.conjugate_by(inv.matrix())?)?;
    let rhs = id.sub(s)?.scale(2.0).add(&t.scale(4.0))?;
    rhs.sub(&lhs)?.min_eigenvalue()
}

/// Random `0 <= S <= I` and `T >= 0` of dimension `dim`.
pub fn check_hayashi_nagaoka(trials: usize, dim: usize, seed: u64) -> Result<InequalityReport> {
    let results = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = crate::derived_rng(seed, &[k as u64]);
            let s = random::effect(dim, 0.0, 1.0, &mut rng);
            let rank = rng.random_range(1..=dim);
            let scale = rng.random_range(0.01..2.0);
            let t = random::psd(dim, rank, scale, &mut rng);
            let slack = hayashi_nagaoka_slack(&s, &t)?;
            Ok((slack, instance_json(&[("S", s.matrix()), ("T", t.matrix())])))
        })
        .collect();
    InequalityReport::collect("hayashi-nagaoka", 1e-8, results)
}

/// `2 sqrt(eps) - sum_x p_x ||sqrt(L) rho_x sqrt(L) - rho_x||_1` with
/// `1 - eps = sum_x p_x Tr{L rho_x}`.
pub fn gentle_slack(probs: &[f64], states: &[DensityOperator], effect: &HermitianOperator) -> Result<f64> {
    let root = psd_sqrt(effect)?;
    let mut success = 0.0;
    let mut disturbance = 0.0;
    for (p, rho) in probs.iter().zip(states) {
        success += p * trace_product(effect.matrix(), rho.matrix());
        let after = rho.operator().conjugate_by(root.matrix())?;
        disturbance += p * trace_norm(&after.sub(rho.operator())?)?;
    }
    let eps = (1.0 - success).max(0.0);
    Ok(2.0 * eps.sqrt() - disturbance)
}

/// Random ensembles of dimension at most `max_dim`, with effects biased
/// towards high success probability.
pub fn check_gentle(trials: usize, max_dim: usize, seed: u64) -> Result<InequalityReport> {
    let results = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = crate::derived_rng(seed, &[k as u64]);
            let dim = rng.random_range(1..=max_dim.max(1));
            let count = rng.random_range(1..=4usize);
            let probs = random::simplex(count, &mut rng);
            let states: Vec<DensityOperator> =
                (0..count).map(|_| random::density(dim, rng.random_range(1..=dim), &mut rng)).collect();
            let lo = if k % 2 == 0 { 0.9 } else { 0.0 };
            let effect = random::effect(dim, lo, 1.0, &mut rng);
            let slack = gentle_slack(&probs, &states, &effect)?;
            let mut parts: Vec<(&str, &Array2<C64>)> = vec![("effect", effect.matrix())];
            parts.extend(states.iter().map(|s| ("state", s.matrix())));
            Ok((slack, instance_json(&parts)))
        })
        .collect();
    InequalityReport::collect("gentle-operator", 1e-9, results)
}

/// `Tr{L sigma} + ||rho - sigma||_1 - Tr{L rho}`.
pub fn trace_ineq_slack(effect: &HermitianOperator, rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let dist = trace_norm(&rho.operator().sub(sigma.operator())?)?;
    Ok(trace_product(effect.matrix(), sigma.matrix()) + dist - trace_product(effect.matrix(), rho.matrix()))
}

pub fn check_trace_ineq(trials: usize, max_dim: usize, seed: u64) -> Result<InequalityReport> {
    let results = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = crate::derived_rng(seed, &[k as u64]);
            let dim = rng.random_range(1..=max_dim.max(1));
            let rho = random::density(dim, rng.random_range(1..=dim), &mut rng);
            let sigma = random::density(dim, rng.random_range(1..=dim), &mut rng);
            let effect = random::effect(dim, 0.0, 1.0, &mut rng);
            let slack = trace_ineq_slack(&effect, &rho, &sigma)?;
            Ok((slack, instance_json(&[("effect", effect.matrix()), ("rho", rho.matrix()), ("sigma", sigma.matrix())])))
        })
        .collect();
    InequalityReport::collect("trace-inequality", 1e-9, results)
}

#[cfg(test)]
mod tests;
