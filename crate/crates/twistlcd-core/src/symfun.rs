//! The combinatorial layer: complete homogeneous symmetric polynomials,
//! evaluation-point products (uᵢ, P, Pᵢ), the Ω/Φ correction scalars, and
//! root extraction for xⁿ − λ.
//!
//! Conventions: S_t denotes the complete homogeneous symmetric polynomial of
//! degree t in the evaluation points, with S_t = 0 for t < 0 and S₀ = 1.
//! For a point set α₁,…,αₙ (pairwise distinct, nonzero, n ≥ 3):
//!
//! * uᵢ = Π_{j≠i} (αᵢ − αⱼ)⁻¹,
//! * P  = Π αⱼ and Pᵢ = P/αᵢ,
//! * Ω_r = Σ_{t=0}^{ℓ} ηₜ · S_{t+1−r},
//! * Φᵢ = (−1)ⁿ⁻¹ · P · Ωᵢ.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

/// S_t(α₁,…,αₙ): 0 for t < 0, else the sum of all degree-t monomials,
/// computed by the prefix recurrence
/// S_t(x₁..x_j) = S_t(x₁..x_{j−1}) + x_j · S_{t−1}(x₁..x_j)
/// in O(n·t) field operations.
pub fn complete_symmetric(alphas: &[Fe], t: i64) -> Result<Fe> {
    let first = alphas.first().ok_or(Error::EmptyPointSet)?;
    let ctx = first.ctx();
    if t < 0 {
        return Ok(ctx.zero());
    }
    let t = t as usize;
    // dp[d] holds S_d of the prefix processed so far; prefix of length 0 has
    // S₀ = 1 and S_d = 0 for d ≥ 1.
    let mut dp = vec![ctx.zero(); t + 1];
    dp[0] = ctx.one();
    for x in alphas {
        if x.ctx().key() != ctx.key() {
            return Err(Error::MixedFields);
        }
        for d in 1..=t {
            dp[d] = &dp[d] + &(x * &dp[d - 1]);
        }
    }
    Ok(dp[t].clone())
}

/// An ordered set of pairwise-distinct nonzero evaluation points with the
/// derived products uᵢ, P, and Pᵢ computed eagerly at construction.
#[derive(Clone, Debug)]
pub struct EvalPoints {
    alphas: Vec<Fe>,
    u: Vec<Fe>,
    p_all: Fe,
    p_each: Vec<Fe>,
    ctx: Arc<FieldCtx>,
}

impl EvalPoints {
    /// Validate and derive. Requires n ≥ 3, pairwise-distinct nonzero points
    /// from a single field.
    pub fn new(alphas: Vec<Fe>) -> Result<EvalPoints> {
        if alphas.len() < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: alphas.len() });
        }
        let ctx = Arc::clone(alphas[0].ctx());
        let mut seen = std::collections::HashSet::with_capacity(alphas.len());
        for a in &alphas {
            if a.ctx().key() != ctx.key() {
                return Err(Error::MixedFields);
            }
            if a.is_zero() {
                return Err(Error::ZeroPoint);
            }
            if !seen.insert(a.value()) {
                return Err(Error::DuplicatePoint);
            }
        }
        let n = alphas.len();
        let mut u = Vec::with_capacity(n);
        for i in 0..n {
            let mut prod = ctx.one();
            for j in 0..n {
                if j != i {
                    prod = &prod * &(&alphas[i] - &alphas[j]);
                }
            }
            u.push(prod.inv().expect("distinct points give nonzero differences"));
        }
        let mut p_all = ctx.one();
        for a in &alphas {
            p_all = &p_all * a;
        }
        let p_each: Vec<Fe> = alphas
            .iter()
            .map(|a| &p_all * &a.inv().expect("points are nonzero"))
            .collect();
        Ok(EvalPoints { alphas, u, p_all, p_each, ctx })
    }

    /// Number of points n.
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires n ≥ 3
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// The points α₁,…,αₙ in construction order.
    pub fn alphas(&self) -> &[Fe] {
        &self.alphas
    }

    /// uᵢ = Π_{j≠i}(αᵢ − αⱼ)⁻¹, aligned with [`EvalPoints::alphas`].
    pub fn u(&self) -> &[Fe] {
        &self.u
    }

    /// P = Π αⱼ.
    pub fn p_all(&self) -> &Fe {
        &self.p_all
    }

    /// Pᵢ = P / αᵢ, aligned with [`EvalPoints::alphas`].
    pub fn p_each(&self) -> &[Fe] {
        &self.p_each
    }

    /// S_t over these points.
    pub fn complete_symmetric(&self, t: i64) -> Fe {
        complete_symmetric(&self.alphas, t).expect("point set is nonempty")
    }

    /// Σᵢ uᵢ·αᵢʰ. Equals 0 for 0 ≤ h ≤ n−2 and S_{h−n+1} for h ≥ n−1.
    pub fn power_sum_check(&self, h: u64) -> Fe {
        let mut sum = self.ctx.zero();
        for (a, u) in self.alphas.iter().zip(&self.u) {
            sum = &sum + &(u * &a.pow(h as i64).expect("nonnegative exponent"));
        }
        sum
    }

    /// The unique solution wᵢ = (−1)ⁿ⁻¹·uᵢ·Pᵢ of the n × n Vandermonde
    /// system V·w = (1, 0, …, 0)ᵀ with V_{ij} = αⱼ^{i}.
    pub fn vandermonde_unit_solution(&self) -> Vec<Fe> {
        let sign = self.sign_n_minus_1();
        self.u
            .iter()
            .zip(&self.p_each)
            .map(|(u, pi)| &(&sign * u) * pi)
            .collect()
    }

    /// (−1)ⁿ⁻¹ as a field element.
    pub fn sign_n_minus_1(&self) -> Fe {
        if self.alphas.len() % 2 == 1 {
            self.ctx.one()
        } else {
            -self.ctx.one()
        }
    }

    /// Ω_r = Σ_{t=0}^{ℓ} ηₜ · S_{t+1−r}, for 1 ≤ r ≤ ℓ+1 with ℓ+1 = η.len().
    pub fn omega(&self, eta: &[Fe], r: usize) -> Result<Fe> {
        if r < 1 || r > eta.len() {
            return Err(Error::IndexOutOfRange(format!(
                "omega index r = {} is outside 1..={}",
                r,
                eta.len()
            )));
        }
        let mut sum = self.ctx.zero();
        for (t, coef) in eta.iter().enumerate() {
            if coef.ctx().key() != self.ctx.key() {
                return Err(Error::MixedFields);
            }
            let s = self.complete_symmetric(t as i64 + 1 - r as i64);
            sum = &sum + &(coef * &s);
        }
        Ok(sum)
    }

    /// Φᵢ = (−1)ⁿ⁻¹ · P · Ωᵢ, for 1 ≤ i ≤ ℓ+1.
    pub fn phi(&self, eta: &[Fe], i: usize) -> Result<Fe> {
        let omega = self.omega(eta, i)?;
        Ok(&(&self.sign_n_minus_1() * &self.p_all) * &omega)
    }
}

/// See [`EvalPoints::new`].
pub fn eval_points_new(alphas: Vec<Fe>) -> Result<EvalPoints> {
    EvalPoints::new(alphas)
}

/// See [`EvalPoints::power_sum_check`].
pub fn power_sum_check(pts: &EvalPoints, h: u64) -> Fe {
    pts.power_sum_check(h)
}

/// See [`EvalPoints::vandermonde_unit_solution`].
pub fn vandermonde_unit_solution(pts: &EvalPoints) -> Vec<Fe> {
    pts.vandermonde_unit_solution()
}

/// See [`EvalPoints::omega`].
pub fn omega(pts: &EvalPoints, eta: &[Fe], r: usize) -> Result<Fe> {
    pts.omega(eta, r)
}

/// See [`EvalPoints::phi`].
pub fn phi(pts: &EvalPoints, eta: &[Fe], i: usize) -> Result<Fe> {
    pts.phi(eta, i)
}

/// All n roots of xⁿ − λ in GF(q), ascending by canonical code.
///
/// Requires n | q−1, λ ≠ 0, and ord(λ) | (q−1)/n, which together guarantee
/// exactly n distinct nonzero roots. Extraction walks the discrete-log
/// lattice, so the field must carry exp/log tables (q ≤ 2^16).
pub fn roots_xn_minus_lambda(ctx: &Arc<FieldCtx>, n: u64, lambda: &Fe) -> Result<Vec<Fe>> {
    if lambda.ctx().key() != ctx.key() {
        return Err(Error::MixedFields);
    }
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be ≥ 1".into()));
    }
    let q1 = ctx.order() - 1;
    if q1 % n != 0 {
        return Err(Error::DoesNotDivide { n, q_minus_1: q1 });
    }
    let order = lambda.order()?;
    if (q1 / n) % order != 0 {
        return Err(Error::OrderCondition { order, bound: q1 / n });
    }
    if !ctx.has_tables() {
        return Err(Error::FieldTooLarge(
            "root extraction requires a table-backed field (q ≤ 2^16)".into(),
        ));
    }
    // λ = ω^b with n | b (equivalent to the order condition); the solutions
    // of x^n = λ are ω^(b/n + t·(q−1)/n) for t = 0..n.
    let b = ctx.log(lambda)?;
    debug_assert_eq!(b % n, 0);
    let base = b / n;
    let stride = q1 / n;
    let mut roots: Vec<Fe> = (0..n).map(|t| ctx.exp(base + t * stride)).collect();
    roots.sort_by_key(|r| r.value());
    // Cross-check the contract before handing the roots out.
    for r in &roots {
        if r.pow(n as i64).expect("nonnegative exponent") != *lambda {
            return Err(Error::InternalInconsistency(
                "computed root fails x^n = lambda".into(),
            ));
        }
    }
    Ok(roots)
}
