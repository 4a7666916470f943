//! Continuous real-valued functions on code space.
//!
//! Three families cover every experiment: coordinate series (the "arbitrary"
//! function, sampled from a seed), Cantor-set embeddings (address to
//! midpoint), and affine combinations of the two.

use crate::cantor::{BinaryAddress, CantorSet};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

#[derive(Clone, Debug)]
pub enum CodeFunction {
    /// omega |-> offset + sum_{k=1..j} coeffs[k-1] * (2 omega_k - 1)
    /// for an address of length j <= coeffs.len().
    CoordSeries { offset: f64, coeffs: Vec<f64> },
    /// omega |-> midpoint of the selected interval.
    Embedding(CantorSet),
    /// omega |-> a * lhs(omega) + b * rhs(omega).
    Affine {
        lhs: Box<CodeFunction>,
        rhs: Box<CodeFunction>,
        a: f64,
        b: f64,
    },
}

impl CodeFunction {
    /// The zero function, evaluable on addresses of length up to `m`.
    pub fn zero(m: u32) -> Self {
        CodeFunction::CoordSeries {
            offset: 0.0,
            coeffs: vec![0.0; m as usize],
        }
    }

    pub fn embedding(set: CantorSet) -> Self {
        CodeFunction::Embedding(set)
    }

    pub fn affine(lhs: CodeFunction, rhs: CodeFunction, a: f64, b: f64) -> Self {
        CodeFunction::Affine {
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
            a,
            b,
        }
    }

    /// c * inner, with the same domain depth as `inner`.
    pub fn scaled(inner: CodeFunction, c: f64) -> Self {
        CodeFunction::affine(inner.clone(), inner, c, 0.0)
    }

    /// Longest address length the function can be evaluated on.
    pub fn domain_depth(&self) -> u32 {
        match self {
            CodeFunction::CoordSeries { coeffs, .. } => coeffs.len() as u32,
            CodeFunction::Embedding(set) => set.depth(),
            CodeFunction::Affine { lhs, rhs, .. } => lhs.domain_depth().min(rhs.domain_depth()),
        }
    }

    pub fn evaluate(&self, addr: &BinaryAddress) -> Result<f64> {
        match self {
            CodeFunction::CoordSeries { offset, coeffs } => {
                if addr.len() as usize > coeffs.len() {
                    return Err(Error::AddressRange {
                        len: addr.len(),
                        depth: coeffs.len() as u32,
                    });
                }
                let mut v = *offset;
                for i in 0..addr.len() {
                    let sign = (2 * addr.symbol(i) as i32 - 1) as f64;
                    v += coeffs[i as usize] * sign;
                }
                Ok(v)
            }
            CodeFunction::Embedding(set) => set.address_to_point(addr),
            CodeFunction::Affine { lhs, rhs, a, b } => {
                Ok(a * lhs.evaluate(addr)? + b * rhs.evaluate(addr)?)
            }
        }
    }

    /// Upper bound on |g(u) - g(v)| over address pairs that agree on the
    /// first `j` symbols: the tail sum 2 sum_{k>j} |c_k| for a series, the
    /// level-j length for an embedding, and the weighted combination for
    /// an affine function.
    pub fn modulus_bound(&self, j: u32) -> f64 {
        match self {
            CodeFunction::CoordSeries { coeffs, .. } => {
                let tail: f64 = coeffs.iter().skip(j as usize).map(|c| c.abs()).sum();
                2.0 * tail
            }
            CodeFunction::Embedding(set) => set.schedule().level_length(j),
            CodeFunction::Affine { lhs, rhs, a, b } => {
                a.abs() * lhs.modulus_bound(j) + b.abs() * rhs.modulus_bound(j)
            }
        }
    }
}

/// Per-index scales sigma_k = ratio^k for k = 0..=m.
pub fn geometric_sigma(ratio: f64, m: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut s = 1.0;
    for _ in 0..=m {
        out.push(s);
        s *= ratio;
    }
    out
}

/// Draw a coordinate series with coefficients c_k = sigma[k] * u_k, where
/// the u_k are i.i.d. uniform on [-1, 1) from the seeded generator.
/// sigma[0] scales the offset; sigma[1..] scale the coordinates, so the
/// domain depth is sigma.len() - 1. Identical seeds give bit-identical
/// coefficients.
pub fn coord_series_random(seed: u64, sigma: &[f64]) -> Result<CodeFunction> {
    if sigma.len() < 2 {
        return Err(Error::Parameter(
            "need at least one coordinate scale beyond the offset".into(),
        ));
    }
    for (k, s) in sigma.iter().enumerate() {
        if !s.is_finite() || *s < 0.0 {
            return Err(Error::Parameter(format!(
                "scale sigma[{k}] must be finite and nonnegative, got {s}"
            )));
        }
    }
    let mut rng = SplitMix64::new(seed);
    let offset = sigma[0] * rng.next_symmetric();
    let coeffs = sigma[1..]
        .iter()
        .map(|s| s * rng.next_symmetric())
        .collect();
    Ok(CodeFunction::CoordSeries { offset, coeffs })
}
