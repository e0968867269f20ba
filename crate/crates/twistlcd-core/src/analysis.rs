//! Code-agnostic analysis: minimum distance, MDS/AMDS/NMDS classification,
//! dual codes, hull dimension, and LCD verification via three independent
//! criteria.
//!
//! Minimum distance enumerates one representative per scalar class of
//! messages ((q^k − 1)/(q − 1) encodings). The dual minimum distance is
//! computed on the primal side: d⊥ is the smallest w such that some w
//! columns of G are linearly dependent. Both searches run behind explicit
//! guards that fail hard (never truncate silently).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::matmul;
use crate::twisted::LinearCode;

/// Enumeration guards. `enum_guard` bounds q^k for message enumeration;
/// `subset_guard` bounds C(n, w) for the column-subset search.
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub enum_guard: u64,
    pub subset_guard: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { enum_guard: 10_000_000, subset_guard: 1_000_000 }
    }
}

impl AnalysisOptions {
    /// Replace both guards with one override value.
    pub fn with_guard(guard: u64) -> Self {
        AnalysisOptions { enum_guard: guard, subset_guard: guard }
    }
}

/// Singleton-bound classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MdsClass {
    /// d = n − k + 1.
    Mds,
    /// d = n − k and the dual is also almost-MDS (d⊥ = k).
    Nmds,
    /// d = n − k, dual test failed.
    Amds,
    /// d < n − k.
    Neither,
}

impl MdsClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MdsClass::Mds => "MDS",
            MdsClass::Nmds => "NMDS",
            MdsClass::Amds => "AMDS",
            MdsClass::Neither => "NEITHER",
        }
    }

    /// Sort precedence: MDS before NMDS before AMDS before NEITHER.
    pub fn precedence(&self) -> u8 {
        match self {
            MdsClass::Mds => 0,
            MdsClass::Nmds => 1,
            MdsClass::Amds => 2,
            MdsClass::Neither => 3,
        }
    }
}

impl std::fmt::Display for MdsClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for MdsClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Everything the analyzer knows about one code.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    #[serde(rename = "class")]
    pub mds_class: MdsClass,
    pub lcd: bool,
    /// (stack-rank criterion, G·Gᵀ nonsingular, hull dimension = 0).
    pub lcd_evidence: [bool; 3],
    pub hull_dim: usize,
    /// Dual minimum distance; present when the NMDS decision required it.
    /// `Some(None)` cannot occur: a full code (k = n) never reaches the
    /// dual test because its distance is already n − k + 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_dual: Option<usize>,
}

impl AnalysisReport {
    /// `[n, k, d]` parameter string.
    pub fn params_string(&self) -> String {
        format!("[{},{},{}]", self.n, self.k, self.d)
    }
}

fn pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

fn binomial_u128(n: usize, w: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..w {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Minimum Hamming weight over all nonzero codewords, enumerating one
/// representative per scalar class (messages whose first nonzero symbol
/// is 1). Guard: q^k ≤ `opts.enum_guard`.
pub fn min_distance(code: &LinearCode, opts: &AnalysisOptions) -> Result<usize> {
    if let Some(&d) = code.d_cache().get() {
        return Ok(d);
    }
    let k = code.k();
    if k == 0 {
        return Err(Error::InvalidInput(
            "a zero-dimensional code has no nonzero codewords".into(),
        ));
    }
    let q = code.ctx().order();
    if pow_u128(q, k) > opts.enum_guard as u128 {
        return Err(Error::TooLargeToEnumerate(format!(
            "q^k = {}^{} exceeds the enumeration guard {}",
            q, k, opts.enum_guard
        )));
    }
    let d = min_weight_scalar_classes(code);
    let _ = code.d_cache().set(d);
    Ok(d)
}

fn min_weight_scalar_classes(code: &LinearCode) -> usize {
    let (n, k) = (code.n(), code.k());
    let ctx = code.ctx().clone();
    let q = ctx.order();
    let g = code.generator();
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..n).map(|j| g.get_raw(i, j)).collect())
        .collect();
    let mut best = n + 1;
    // Scalar-class representatives: leading symbol 1 at position `lead`,
    // zeros before it, free symbols after it.
    for lead in 0..k {
        let rest = k - lead - 1;
        let mut word = rows[lead].clone();
        let mut digits = vec![0u64; rest];
        'odometer: loop {
            let weight = word.iter().filter(|&&v| v != 0).count();
            if weight < best {
                best = weight;
                if best == 1 {
                    return 1;
                }
            }
            // Advance the base-q odometer over the free symbols. A digit
            // stepping from code c to c+1 adds (elem(c+1) − elem(c))·row,
            // and a rollover (q−1 → 0) adds −elem(q−1)·row. Over a prime
            // field every such delta is 1; in an extension the packed-code
            // order is not repeated addition of 1, so the delta varies.
            for i in (0..rest).rev() {
                let row = &rows[lead + 1 + i];
                let c = digits[i];
                let (next, delta) = if c + 1 < q {
                    (c + 1, ctx.sub_raw(c + 1, c))
                } else {
                    (0, ctx.neg_raw(q - 1))
                };
                if delta == 1 {
                    for (w, r) in word.iter_mut().zip(row) {
                        *w = ctx.add_raw(*w, *r);
                    }
                } else {
                    for (w, r) in word.iter_mut().zip(row) {
                        *w = ctx.add_raw(*w, ctx.mul_raw(delta, *r));
                    }
                }
                digits[i] = next;
                if next != 0 {
                    continue 'odometer;
                }
            }
            break;
        }
    }
    debug_assert!(best <= n, "a full-rank generator has a nonzero codeword");
    best
}

/// Reference implementation: enumerate all q^k messages outright (no
/// scalar-class reduction). Slow by design; used as an oracle for
/// [`min_distance`] when q^k is tiny.
pub fn min_distance_naive(code: &LinearCode) -> Result<usize> {
    let (n, k) = (code.n(), code.k());
    if k == 0 {
        return Err(Error::InvalidInput(
            "a zero-dimensional code has no nonzero codewords".into(),
        ));
    }
    let ctx = code.ctx().clone();
    let q = ctx.order();
    if pow_u128(q, k) > 100_000_000 {
        return Err(Error::TooLargeToEnumerate(
            "naive enumeration is for tiny codes only".into(),
        ));
    }
    let g = code.generator();
    let mut best = n + 1;
    let total = pow_u128(q, k) as u64;
    for idx in 1..total {
        // Decode idx into base-q message digits.
        let mut m = idx;
        let mut word = vec![0u64; n];
        for i in 0..k {
            let digit = m % q;
            m /= q;
            if digit != 0 {
                for j in 0..n {
                    word[j] = ctx.add_raw(word[j], ctx.mul_raw(digit, g.get_raw(i, j)));
                }
            }
        }
        let weight = word.iter().filter(|&&v| v != 0).count();
        best = best.min(weight);
    }
    Ok(best)
}

/// Dual minimum distance via the primal generator: the smallest w such that
/// some w columns of G are linearly dependent. Returns `None` when no
/// dependency exists at all (k = n, trivial dual). Guard: C(n, w) ≤
/// `opts.subset_guard` at each level.
pub fn dual_distance(code: &LinearCode, opts: &AnalysisOptions) -> Result<Option<usize>> {
    if let Some(&d) = code.d_dual_cache().get() {
        return Ok(Some(d));
    }
    let (n, k) = (code.n(), code.k());
    let g = code.generator();
    // Any k+1 columns of a k-row matrix are dependent, so the search is
    // bounded; it only comes up empty when k = n (full code, dual {0}).
    let w_max = n.min(k + 1);
    for w in 1..=w_max {
        if binomial_u128(n, w) > opts.subset_guard as u128 {
            return Err(Error::TooLargeToEnumerate(format!(
                "C({}, {}) exceeds the subset guard {}",
                n, w, opts.subset_guard
            )));
        }
        let mut found = false;
        for_each_combination(n, w, &mut |cols| {
            if !found && g.select_columns(cols).rank() < w {
                found = true;
            }
        });
        if found {
            let _ = code.d_dual_cache().set(w);
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Call `f` on every w-subset of {0, …, n−1} in lexicographic order.
fn for_each_combination(n: usize, w: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = w;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - w {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The dual code C⊥, generated by the canonical kernel basis of G.
pub fn dual_code(code: &LinearCode) -> Result<LinearCode> {
    LinearCode::new(code.parity_check().clone())
}

/// dim(C ∩ C⊥) = k + (n − k) − rank(G over H).
pub fn hull_dimension(code: &LinearCode) -> usize {
    let stacked = code
        .generator()
        .stack(code.parity_check())
        .expect("G and H share length and field");
    code.n() - stacked.rank()
}

/// Evaluate all three LCD criteria:
/// (a) rank(stack(G, H)) = n, (b) det(G·Gᵀ) ≠ 0, (c) hull dimension = 0.
/// Returns the common verdict with the three bits; disagreement is an
/// [`Error::InternalInconsistency`] — it signals a bug and must abort.
pub fn is_lcd(code: &LinearCode) -> Result<(bool, [bool; 3])> {
    let n = code.n();
    let g = code.generator();
    let h = code.parity_check();
    let stack_rank = g.stack(h).expect("G and H share length and field").rank();
    let ev_stack = stack_rank == n;
    let gram = matmul(g, &g.transpose())?;
    let ev_gram = !gram.det()?.is_zero();
    let ev_hull = hull_dimension(code) == 0;
    if ev_stack != ev_gram || ev_gram != ev_hull {
        return Err(Error::InternalInconsistency(format!(
            "LCD criteria disagree: stack-rank {}, Gram {}, hull {}",
            ev_stack, ev_gram, ev_hull
        )));
    }
    Ok((ev_stack, [ev_stack, ev_gram, ev_hull]))
}

/// Singleton-bound classification; computes the dual distance only when the
/// primal distance sits exactly at n − k.
pub fn classify_mds(code: &LinearCode, opts: &AnalysisOptions) -> Result<MdsClass> {
    Ok(classify_with_distances(code, opts)?.0)
}

fn classify_with_distances(
    code: &LinearCode,
    opts: &AnalysisOptions,
) -> Result<(MdsClass, usize, Option<usize>)> {
    let (n, k) = (code.n(), code.k());
    let d = min_distance(code, opts)?;
    if d > n - k + 1 {
        return Err(Error::InternalInconsistency(format!(
            "Singleton bound violated: d = {} on an [{}, {}] code",
            d, n, k
        )));
    }
    if d == n - k + 1 {
        return Ok((MdsClass::Mds, d, None));
    }
    if d == n - k {
        let dd = dual_distance(code, opts)?;
        let class = if dd == Some(k) { MdsClass::Nmds } else { MdsClass::Amds };
        return Ok((class, d, dd));
    }
    Ok((MdsClass::Neither, d, None))
}

/// Full analysis: distance, classification, LCD evidence, hull dimension.
pub fn analyze(code: &LinearCode, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let (class, d, d_dual) = classify_with_distances(code, opts)?;
    let (lcd, lcd_evidence) = is_lcd(code)?;
    let hull_dim = hull_dimension(code);
    debug_assert_eq!(lcd, hull_dim == 0);
    Ok(AnalysisReport {
        n: code.n(),
        k: code.k(),
        d,
        mds_class: class,
        lcd,
        lcd_evidence,
        hull_dim,
        d_dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{field_new, Fe, FieldCtx};
    use crate::linalg::FMatrix;
    use crate::twisted::TwistedParams;
    use rand::{Rng, SeedableRng};
    use std::sync::Arc;

    fn fes(ctx: &Arc<FieldCtx>, vals: &[i64]) -> Vec<Fe> {
        vals.iter().map(|&v| ctx.from_int(v)).collect()
    }

    fn code_from_rows(ctx: &Arc<FieldCtx>, rows: &[&[i64]]) -> LinearCode {
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| ctx.from_int(v)).collect())
            .collect();
        LinearCode::new(FMatrix::from_rows(&rows).unwrap()).unwrap()
    }

    fn random_full_rank_code(
        ctx: &Arc<FieldCtx>,
        k: usize,
        n: usize,
        rng: &mut impl Rng,
    ) -> LinearCode {
        loop {
            let g = FMatrix::from_fn(ctx, k, n, |_, _| {
                ctx.from_code(rng.gen_range(0..ctx.order())).unwrap()
            })
            .unwrap();
            if g.rank() == k {
                return LinearCode::new(g).unwrap();
            }
        }
    }

    fn example_params(q: u64, n: usize, eta: &[i64]) -> TwistedParams {
        let f = field_new(q, 1).unwrap();
        let mut v = vec![f.one(); n];
        v[0] = f.from_int(2);
        TwistedParams::from_lambda(&f, n, 2, fes(&f, eta), v, f.one()).unwrap()
    }

    #[test]
    fn repetition_code_distance() {
        let f = field_new(7, 1).unwrap();
        let code = code_from_rows(&f, &[&[1, 1, 1]]);
        assert_eq!(min_distance(&code, &AnalysisOptions::default()).unwrap(), 3);
    }

    #[test]
    fn example_codes_have_published_parameters() {
        let opts = AnalysisOptions::default();
        let code61 =
            crate::twisted::code_from_params(&example_params(61, 12, &[1, 2, 3, 4])).unwrap();
        let report = analyze(&code61, &opts).unwrap();
        assert_eq!((report.n, report.k, report.d), (12, 2, 11));
        assert_eq!(report.mds_class, MdsClass::Mds);
        assert!(report.lcd);

        let code23 =
            crate::twisted::code_from_params(&example_params(23, 11, &[1, 2, 3, 4])).unwrap();
        let report = analyze(&code23, &opts).unwrap();
        assert_eq!((report.n, report.k, report.d), (11, 2, 9));
        assert_eq!(report.mds_class, MdsClass::Nmds);
        assert_eq!(report.d_dual, Some(2));
        assert!(report.lcd);
    }

    #[test]
    fn naive_oracle_agrees_on_small_codes() {
        // Extension fields matter here: the scalar-class odometer must step
        // by actual field deltas, not by repeated addition of 1.
        let opts = AnalysisOptions::default();
        for (p, m) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2), (3, 3), (5, 2)] {
            let f = field_new(p, m).unwrap();
            let q = f.order();
            let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(q);
            for _ in 0..20 {
                let k = rng.gen_range(1..4usize);
                let n = rng.gen_range(k.max(2)..9usize);
                if pow_u128(q, k) > 10_000 {
                    continue;
                }
                let code = random_full_rank_code(&f, k, n, &mut rng);
                assert_eq!(
                    min_distance(&code, &opts).unwrap(),
                    min_distance_naive(&code).unwrap(),
                    "fast vs naive distance over GF({q})"
                );
            }
        }
    }

    #[test]
    fn enumeration_guard_is_a_hard_error() {
        let f = field_new(61, 1).unwrap();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
        let code = random_full_rank_code(&f, 3, 8, &mut rng);
        let opts = AnalysisOptions::with_guard(1000);
        assert!(matches!(
            min_distance(&code, &opts).unwrap_err(),
            Error::TooLargeToEnumerate(_)
        ));
    }

    #[test]
    fn dual_of_standard_form() {
        // G = [I | A] has dual generator [−Aᵀ | I] up to canonical form.
        let f = field_new(7, 1).unwrap();
        let code = code_from_rows(&f, &[&[1, 0, 2, 3], &[0, 1, 4, 5]]);
        let dual = dual_code(&code).unwrap();
        let expected = code_from_rows(&f, &[&[-2, -4, 1, 0], &[-3, -5, 0, 1]]);
        assert!(dual.generator().row_space_eq(expected.generator()));
        // Dual dimension n − k.
        assert_eq!(dual.k(), 2);
    }

    #[test]
    fn double_dual_is_identity_on_row_spaces() {
        let f = field_new(23, 1).unwrap();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(2);
        for _ in 0..25 {
            let k = rng.gen_range(1..5usize);
            let n = rng.gen_range(k + 1..9usize);
            let code = random_full_rank_code(&f, k, n, &mut rng);
            let dd = dual_code(&dual_code(&code).unwrap()).unwrap();
            assert!(dd.generator().row_space_eq(code.generator()));
        }
    }

    #[test]
    fn lcd_simple_cases() {
        let f = field_new(7, 1).unwrap();
        // G = [I₂ | 0] has G·Gᵀ = I₂.
        let code = code_from_rows(&f, &[&[1, 0, 0], &[0, 1, 0]]);
        let (lcd, ev) = is_lcd(&code).unwrap();
        assert!(lcd);
        assert_eq!(ev, [true, true, true]);
        assert_eq!(hull_dimension(&code), 0);

        // Over GF(5), G = [1 2] has G·Gᵀ = 1 + 4 = 0.
        let f5 = field_new(5, 1).unwrap();
        let selforth = code_from_rows(&f5, &[&[1, 2]]);
        let (lcd, ev) = is_lcd(&selforth).unwrap();
        assert!(!lcd);
        assert_eq!(ev, [false, false, false]);
        assert_eq!(hull_dimension(&selforth), 1);
    }

    #[test]
    fn identity_generator_analysis() {
        let f = field_new(7, 1).unwrap();
        let code = LinearCode::new(FMatrix::identity(&f, 4)).unwrap();
        let report = analyze(&code, &AnalysisOptions::default()).unwrap();
        assert_eq!(report.d, 1);
        // k = n makes n − k + 1 = 1, so d = 1 sits on the Singleton bound.
        assert_eq!(report.mds_class, MdsClass::Mds);
        assert!(report.lcd);
        assert_eq!(report.hull_dim, 0);
    }

    #[test]
    fn lcd_criteria_agree_on_random_generators() {
        for q in [7u64, 23, 41] {
            let f = field_new(q, 1).unwrap();
            let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(q + 100);
            for _ in 0..50 {
                let k = rng.gen_range(1..5usize);
                let n = rng.gen_range(k + 1..9usize);
                let code = random_full_rank_code(&f, k, n, &mut rng);
                // Must never return InternalInconsistency.
                let (lcd, ev) = is_lcd(&code).unwrap();
                assert_eq!(lcd, ev[0]);
            }
        }
    }

    #[test]
    fn singleton_bound_on_random_codes() {
        let f = field_new(5, 1).unwrap();
        let opts = AnalysisOptions::default();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(3);
        for _ in 0..30 {
            let k = rng.gen_range(1..4usize);
            let n = rng.gen_range(k + 1..8usize);
            let code = random_full_rank_code(&f, k, n, &mut rng);
            let report = analyze(&code, &opts).unwrap();
            assert!(report.d <= report.n - report.k + 1);
            if report.mds_class == MdsClass::Nmds {
                assert_eq!(report.d, report.n - report.k);
                assert_eq!(report.d_dual, Some(report.k));
            }
        }
    }

    #[test]
    fn report_serialization_shape() {
        let f = field_new(61, 1).unwrap();
        let code = crate::twisted::code_from_params(&example_params(61, 12, &[1, 2, 3, 4]))
            .unwrap();
        let report = analyze(&code, &AnalysisOptions::default()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"n":12,"k":2,"d":11,"class":"MDS","lcd":true,"lcd_evidence":[true,true,true],"hull_dim":0}"#
        );
        drop(f);
    }

    #[test]
    fn combination_walker_visits_all_subsets() {
        let mut count = 0usize;
        for_each_combination(6, 3, &mut |c| {
            assert_eq!(c.len(), 3);
            assert!(c.windows(2).all(|w| w[0] < w[1]));
            count += 1;
        });
        assert_eq!(count, 20);
    }

    #[test]
    fn dual_distance_of_full_code_is_none() {
        let f = field_new(7, 1).unwrap();
        let code = LinearCode::new(FMatrix::identity(&f, 3)).unwrap();
        assert_eq!(dual_distance(&code, &AnalysisOptions::default()).unwrap(), None);
    }

    #[test]
    fn subset_guard_is_a_hard_error() {
        let f = field_new(7, 1).unwrap();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(9);
        let code = random_full_rank_code(&f, 3, 8, &mut rng);
        let opts = AnalysisOptions { enum_guard: 10_000_000, subset_guard: 2 };
        assert!(matches!(
            dual_distance(&code, &opts).unwrap_err(),
            Error::TooLargeToEnumerate(_)
        ));
    }
}
