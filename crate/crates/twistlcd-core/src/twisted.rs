//! Twisted generalized Reed-Solomon codes in the single-twist variant where
//! the constant coefficient f₀ also drives the high-degree tail.
//!
//! A parameter set (n, k, ℓ, α⃗, v⃗, η⃗) encodes the evaluation map
//! f ↦ (v₁f(α₁), …, vₙf(αₙ)) over the polynomial family
//!
//! ```text
//! f(x) = Σ_{i=0}^{k−1} fᵢ xⁱ  +  f₀ · Σ_{j=0}^{ℓ} ηⱼ x^{k+j}
//! ```
//!
//! The module produces the k × n generator matrix, the closed-form
//! (n−k) × n parity-check matrix (plain power rows followed by Ω-corrected
//! rows), and the encoder itself. Hypotheses 2 ≤ k ≤ n−(ℓ+1) and η ≠ 0 are
//! enforced once, at parameter construction.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};
use crate::linalg::FMatrix;
use crate::symfun::{roots_xn_minus_lambda, EvalPoints};

/// Validated parameters of a twisted GRS code. Immutable after construction.
#[derive(Clone, Debug)]
pub struct TwistedParams {
    k: usize,
    ell: usize,
    pts: EvalPoints,
    v: Vec<Fe>,
    eta: Vec<Fe>,
    lambda: Option<Fe>,
}

impl TwistedParams {
    /// Validate and freeze a parameter set. `eta` has length ℓ+1; `lambda`,
    /// when given, records that the points are exactly the roots of xⁿ − λ
    /// (verified here).
    pub fn new(
        pts: EvalPoints,
        k: usize,
        eta: Vec<Fe>,
        v: Vec<Fe>,
        lambda: Option<Fe>,
    ) -> Result<TwistedParams> {
        let n = pts.len();
        let ctx = pts.ctx().clone();
        if eta.is_empty() {
            return Err(Error::InvalidInput("eta must have length ℓ+1 ≥ 1".into()));
        }
        let ell = eta.len() - 1;
        for e in &eta {
            if e.ctx().key() != ctx.key() {
                return Err(Error::MixedFields);
            }
        }
        if eta.iter().all(|e| e.is_zero()) {
            return Err(Error::ZeroEta);
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "v has {} entries, expected n = {}",
                v.len(),
                n
            )));
        }
        for (i, vi) in v.iter().enumerate() {
            if vi.ctx().key() != ctx.key() {
                return Err(Error::MixedFields);
            }
            if vi.is_zero() {
                return Err(Error::ZeroMultiplier { index: i + 1 });
            }
        }
        if k < 2 || k + ell + 1 > n {
            return Err(Error::DimensionRange(format!(
                "need 2 ≤ k ≤ n−(ℓ+1); got k = {}, n = {}, ℓ = {}",
                k, n, ell
            )));
        }
        if let Some(lam) = &lambda {
            if lam.ctx().key() != ctx.key() {
                return Err(Error::MixedFields);
            }
            if lam.is_zero() {
                return Err(Error::ZeroLambda);
            }
            for a in pts.alphas() {
                if a.pow(n as i64).expect("nonnegative exponent") != *lam {
                    return Err(Error::InvalidInput(format!(
                        "alpha = {} is not a root of x^{} - {}",
                        a, n, lam
                    )));
                }
            }
        }
        Ok(TwistedParams { k, ell, pts, v, eta, lambda })
    }

    /// Construct with the evaluation points taken as the roots of xⁿ − λ
    /// (ascending canonical order).
    pub fn from_lambda(
        ctx: &Arc<FieldCtx>,
        n: usize,
        k: usize,
        eta: Vec<Fe>,
        v: Vec<Fe>,
        lambda: Fe,
    ) -> Result<TwistedParams> {
        let roots = roots_xn_minus_lambda(ctx, n as u64, &lambda)?;
        let pts = EvalPoints::new(roots)?;
        TwistedParams::new(pts, k, eta, v, Some(lambda))
    }

    pub fn n(&self) -> usize {
        self.pts.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.pts.ctx()
    }

    pub fn points(&self) -> &EvalPoints {
        &self.pts
    }

    pub fn v(&self) -> &[Fe] {
        &self.v
    }

    pub fn eta(&self) -> &[Fe] {
        &self.eta
    }

    pub fn lambda(&self) -> Option<&Fe> {
        self.lambda.as_ref()
    }

    /// Σ_{t=0}^{ℓ} ηₜ αⱼ^{k+t} for 1-based column j — the twist part of the
    /// constant-coefficient evaluation.
    pub fn twist_sigma(&self, j: usize) -> Result<Fe> {
        if j < 1 || j > self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "column {} is outside 1..={}",
                j,
                self.n()
            )));
        }
        let alpha = &self.pts.alphas()[j - 1];
        let mut sum = self.ctx().zero();
        let mut power = alpha.pow(self.k as i64).expect("nonnegative exponent");
        for coef in &self.eta {
            sum = &sum + &(coef * &power);
            power = &power * alpha;
        }
        Ok(sum)
    }

    /// 1 + Σ_{t=0}^{ℓ} ηₜ αⱼ^{k+t} for 1-based column j — the evaluation of
    /// the twisted constant term, as tabulated in the construction tables.
    pub fn twist_column_header(&self, j: usize) -> Result<Fe> {
        Ok(&self.ctx().one() + &self.twist_sigma(j)?)
    }

    /// The k × n generator matrix: row 1 is vⱼ·(1 + Σ ηₜαⱼ^{k+t}); row i+1
    /// is vⱼ·αⱼⁱ for 1 ≤ i ≤ k−1. Always has full row rank k.
    pub fn generator_matrix(&self) -> FMatrix {
        let (n, k) = (self.n(), self.k);
        let alphas = self.pts.alphas();
        let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(k);
        let header: Vec<Fe> = (1..=n)
            .map(|j| {
                &self.v[j - 1] * &self.twist_column_header(j).expect("j in range")
            })
            .collect();
        rows.push(header);
        for i in 1..k {
            rows.push(
                (0..n)
                    .map(|j| {
                        &self.v[j]
                            * &alphas[j].pow(i as i64).expect("nonnegative exponent")
                    })
                    .collect(),
            );
        }
        FMatrix::from_rows(&rows).expect("rows are rectangular and same-field")
    }

    /// The (n−k) × n parity-check matrix in closed form: rows
    /// (uⱼ/vⱼ)·αⱼⁱ for i = 0 … n−k−(ℓ+2), followed by the corrected rows
    /// (uⱼ/vⱼ)·(αⱼ^{n−k−r} − (−1)ⁿ⁻¹·Pⱼ·Ω_r) for r = ℓ+1 down to 1.
    /// Satisfies G·Hᵀ = 0 and rank(H) = n−k.
    pub fn parity_check_matrix(&self) -> FMatrix {
        let (n, k, ell) = (self.n(), self.k, self.ell);
        let pts = &self.pts;
        let alphas = pts.alphas();
        // uⱼ/vⱼ is the common column scale of every row.
        let scale: Vec<Fe> = pts
            .u()
            .iter()
            .zip(&self.v)
            .map(|(u, v)| u.try_div(v).expect("v is nonzero"))
            .collect();
        let sign = pts.sign_n_minus_1();
        let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(n - k);
        // Plain power rows; the range is empty in the ℓ+1 = n−k edge case.
        for i in 0..(n - k).saturating_sub(ell + 1) {
            rows.push(
                (0..n)
                    .map(|j| {
                        &scale[j] * &alphas[j].pow(i as i64).expect("nonnegative exponent")
                    })
                    .collect(),
            );
        }
        // Ω-corrected rows, r = ℓ+1 first down to r = 1 last.
        for r in (1..=ell + 1).rev() {
            let omega_r = pts.omega(&self.eta, r).expect("1 ≤ r ≤ ℓ+1");
            let correction = &sign * &omega_r;
            let e = (n - k - r) as i64;
            rows.push(
                (0..n)
                    .map(|j| {
                        let power = alphas[j].pow(e).expect("nonnegative exponent");
                        let corr = &pts.p_each()[j] * &correction;
                        &scale[j] * &(&power - &corr)
                    })
                    .collect(),
            );
        }
        FMatrix::from_rows(&rows).expect("rows are rectangular and same-field")
    }

    /// Encode a k-symbol message: build f from the message (the twist tail
    /// is f₀·η⃗), evaluate at every αⱼ, and scale by vⱼ. Equals mᵀ·G.
    pub fn encode(&self, message: &[Fe]) -> Result<Vec<Fe>> {
        if message.len() != self.k {
            return Err(Error::WrongMessageLength {
                expected: self.k,
                got: message.len(),
            });
        }
        let ctx = self.ctx();
        for m in message {
            if m.ctx().key() != ctx.key() {
                return Err(Error::MixedFields);
            }
        }
        // Coefficients of f, degree ≤ k−1+ℓ: message, then f₀·ηⱼ.
        let mut coeffs: Vec<Fe> = message.to_vec();
        coeffs.extend(self.eta.iter().map(|e| e * &message[0]));
        let word = self
            .pts
            .alphas()
            .iter()
            .zip(&self.v)
            .map(|(alpha, v)| {
                let mut acc = ctx.zero();
                for c in coeffs.iter().rev() {
                    acc = &(&acc * alpha) + c;
                }
                &acc * v
            })
            .collect();
        Ok(word)
    }
}

/// See [`TwistedParams::generator_matrix`].
pub fn generator_matrix(params: &TwistedParams) -> FMatrix {
    params.generator_matrix()
}

/// See [`TwistedParams::twist_column_header`].
pub fn twist_column_header(params: &TwistedParams, j: usize) -> Result<Fe> {
    params.twist_column_header(j)
}

/// See [`TwistedParams::parity_check_matrix`].
pub fn parity_check_matrix(params: &TwistedParams) -> FMatrix {
    params.parity_check_matrix()
}

/// See [`TwistedParams::encode`].
pub fn encode(params: &TwistedParams, message: &[Fe]) -> Result<Vec<Fe>> {
    params.encode(message)
}

/// A linear code presented by a full-row-rank generator matrix, with
/// write-once caches for the parity-check matrix and the two minimum
/// distances. Caches are `OnceLock`s, so a shared code is safe to analyze
/// from several threads.
#[derive(Clone, Debug)]
pub struct LinearCode {
    g: FMatrix,
    h_cache: OnceLock<FMatrix>,
    d_cache: OnceLock<usize>,
    d_dual_cache: OnceLock<usize>,
}

impl LinearCode {
    /// Wrap a generator matrix; rejects rank-deficient generators.
    pub fn new(g: FMatrix) -> Result<LinearCode> {
        let rank = g.rank();
        if rank != g.rows() {
            return Err(Error::RankDeficient { rank, rows: g.rows() });
        }
        Ok(LinearCode {
            g,
            h_cache: OnceLock::new(),
            d_cache: OnceLock::new(),
            d_dual_cache: OnceLock::new(),
        })
    }

    /// Code length n.
    pub fn n(&self) -> usize {
        self.g.cols()
    }

    /// Code dimension k (= generator row count).
    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.g.ctx()
    }

    pub fn generator(&self) -> &FMatrix {
        &self.g
    }

    /// The canonical parity-check matrix: the RREF kernel basis of G,
    /// computed once and cached. Its row space is the dual code.
    pub fn parity_check(&self) -> &FMatrix {
        self.h_cache.get_or_init(|| self.g.nullspace_basis())
    }

    pub(crate) fn d_cache(&self) -> &OnceLock<usize> {
        &self.d_cache
    }

    pub(crate) fn d_dual_cache(&self) -> &OnceLock<usize> {
        &self.d_dual_cache
    }
}

/// Build the [`LinearCode`] generated by a parameter set, with the
/// closed-form parity-check matrix pre-seeded into the cache after an
/// internal G·Hᵀ = 0 / rank cross-check.
pub fn code_from_params(params: &TwistedParams) -> Result<LinearCode> {
    let g = params.generator_matrix();
    let h = params.parity_check_matrix();
    let prod = crate::linalg::matmul(&g, &h.transpose())?;
    if !prod.is_zero() {
        return Err(Error::InternalInconsistency(
            "generator and closed-form parity check are not orthogonal".into(),
        ));
    }
    if h.rank() != params.n() - params.k() {
        return Err(Error::InternalInconsistency(
            "closed-form parity check is rank-deficient".into(),
        ));
    }
    let code = LinearCode::new(g)?;
    // The canonical cache stores the RREF kernel basis; the closed form has
    // the same row space, so normalize before seeding.
    let _ = code.h_cache.set(h.rref().trim_zero_rows());
    Ok(code)
}
