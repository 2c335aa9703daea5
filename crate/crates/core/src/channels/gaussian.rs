//! Analytic two-user Gaussian interference channel with unit noise.
//!
//! Receiver 1 sees `Y1 = X1 + X2 + N1` with received powers `snr1` (from
//! sender 1) and `inr1` (from sender 2); receiver 2 sees `snr2` from sender 2
//! and `inr2` from sender 1. All inputs are Gaussian, so with `P_S` the total
//! received power of a stream set `S`,
//!
//! `I(S; Y | T) = 1/2 log2((1 + P_{all \ T}) / (1 + P_{all \ (S u T)}))`.

use serde::{Deserialize, Serialize};

use crate::error::{QicError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianIc {
    pub snr1: f64,
    pub snr2: f64,
    pub inr1: f64,
    pub inr2: f64,
}

/// Mutual-information terms. `I{a}{b}` is `I(X_a; Y_b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussTerm {
    /// `I(X1;Y1|X2) = 1/2 log2(1 + snr1)`
    I11Given2,
    /// `I(X2;Y1) = 1/2 log2(1 + inr1 / (1 + snr1))`
    I21,
    /// `I(X1;Y1) = 1/2 log2(1 + snr1 / (1 + inr1))`
    I11,
    /// `I(X2;Y1|X1) = 1/2 log2(1 + inr1)`
    I21Given1,
    /// `I(X1X2;Y1) = 1/2 log2(1 + snr1 + inr1)`
    ISum1,
    /// `I(X2;Y2|X1) = 1/2 log2(1 + snr2)`
    I22Given1,
    /// `I(X1;Y2) = 1/2 log2(1 + inr2 / (1 + snr2))`
    I12,
    /// `I(X2;Y2) = 1/2 log2(1 + snr2 / (1 + inr2))`
    I22,
    /// `I(X1;Y2|X2) = 1/2 log2(1 + inr2)`
    I12Given2,
    /// `I(X1X2;Y2) = 1/2 log2(1 + snr2 + inr2)`
    ISum2,
}

impl GaussTerm {
    pub fn parse(name: &str) -> Result<Self> {
        use GaussTerm::*;
        Ok(match name {
            "I11_given2" => I11Given2,
            "I21" => I21,
            "I11" => I11,
            "I21_given1" => I21Given1,
            "Isum1" => ISum1,
            "I22_given1" => I22Given1,
            "I12" => I12,
            "I22" => I22,
            "I12_given2" => I12Given2,
            "Isum2" => ISum2,
            other => return Err(QicError::InvalidArgument(format!("unknown Gaussian term '{other}'"))),
        })
    }
}

/// `I(S; Y | T)` for independent Gaussian streams with received `powers`
/// and unit noise. `subject` and `cond` index into `powers`.
pub fn gaussian_cmi(powers: &[f64], subject: &[usize], cond: &[usize]) -> f64 {
    let total: f64 = powers.iter().sum();
    let known: f64 = cond.iter().map(|&i| powers[i]).sum();
    let decoded: f64 = subject.iter().filter(|i| !cond.contains(i)).map(|&i| powers[i]).sum();
    let before = 1.0 + total - known;
    let after = 1.0 + total - known - decoded;
    0.5 * (before / after).log2()
}

impl GaussianIc {
    pub fn new(snr1: f64, snr2: f64, inr1: f64, inr2: f64) -> Result<Self> {
        let ic = GaussianIc { snr1, snr2, inr1, inr2 };
        if [snr1, snr2, inr1, inr2].iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(QicError::InvalidArgument(format!(
                "Gaussian parameters must be finite and nonnegative: {ic:?}"
            )));
        }
        Ok(ic)
    }

    /// Received powers `[from sender 1, from sender 2]` at a receiver.
    pub fn received(&self, receiver: usize) -> [f64; 2] {
        if receiver == 1 {
            [self.snr1, self.inr1]
        } else {
            [self.inr2, self.snr2]
        }
    }

    pub fn mi(&self, term: GaussTerm) -> f64 {
        use GaussTerm::*;
        let (receiver, subject, cond): (usize, &[usize], &[usize]) = match term {
            I11Given2 => (1, &[0], &[1]),
            I21 => (1, &[1], &[]),
            I11 => (1, &[0], &[]),
            I21Given1 => (1, &[1], &[0]),
            ISum1 => (1, &[0, 1], &[]),
            I22Given1 => (2, &[1], &[0]),
            I12 => (2, &[0], &[]),
            I22 => (2, &[1], &[]),
            I12Given2 => (2, &[0], &[1]),
            ISum2 => (2, &[0, 1], &[]),
        };
        gaussian_cmi(&self.received(receiver), subject, cond)
    }
}
