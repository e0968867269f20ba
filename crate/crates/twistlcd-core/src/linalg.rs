//! Dense exact linear algebra over a [`FieldCtx`]: multiplication, rank,
//! determinant, right-kernel bases, and reduced row echelon form.
//!
//! Everything is exact arithmetic on canonical element codes; elimination
//! uses deterministic first-nonzero pivot selection, so canonical forms
//! (RREF, kernel bases) are reproducible bit-for-bit. Matrices are immutable
//! values and all operations are pure.
//!
//! Matrices with zero rows are permitted as *results* (an empty kernel
//! basis is 0 × n); the row-building constructors require at least one row
//! because they infer the field from their entries.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fe};

/// A dense rows × cols matrix over one field, stored row-major as canonical
/// element codes.
#[derive(Clone)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    ctx: Arc<FieldCtx>,
}

impl FMatrix {
    /// The all-zero rows × cols matrix (cols ≥ 1).
    pub fn zeros(ctx: &Arc<FieldCtx>, rows: usize, cols: usize) -> FMatrix {
        assert!(cols >= 1, "matrices must have at least one column");
        FMatrix { rows, cols, data: vec![0; rows * cols], ctx: Arc::clone(ctx) }
    }

    /// The n × n identity.
    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> FMatrix {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from whole rows of field elements; all rows must have equal
    /// length ≥ 1 and share one field.
    pub fn from_rows(rows: &[Vec<Fe>]) -> Result<FMatrix> {
        let first = rows.first().ok_or_else(|| {
            Error::InvalidInput("from_rows needs at least one row".into())
        })?;
        let cols = first.len();
        if cols == 0 {
            return Err(Error::InvalidInput("matrix rows must be nonempty".into()));
        }
        let ctx = Arc::clone(first[0].ctx());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {} entries, got {}",
                    cols,
                    row.len()
                )));
            }
            for e in row {
                if e.ctx().key() != ctx.key() {
                    return Err(Error::MixedFields);
                }
                data.push(e.value());
            }
        }
        Ok(FMatrix { rows: rows.len(), cols, data, ctx })
    }

    /// Build rows × cols from an entry function.
    pub fn from_fn(
        ctx: &Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Fe,
    ) -> Result<FMatrix> {
        assert!(cols >= 1, "matrices must have at least one column");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                if e.ctx().key() != ctx.key() {
                    return Err(Error::MixedFields);
                }
                data.push(e.value());
            }
        }
        Ok(FMatrix { rows, cols, data, ctx: Arc::clone(ctx) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// Entry (i, j) as a field element.
    pub fn get(&self, i: usize, j: usize) -> Fe {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.ctx
            .from_code(self.data[i * self.cols + j])
            .expect("stored codes are canonical")
    }

    pub fn set(&mut self, i: usize, j: usize, e: &Fe) -> Result<()> {
        if e.ctx().key() != self.ctx.key() {
            return Err(Error::MixedFields);
        }
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = e.value();
        Ok(())
    }

    pub(crate) fn get_raw(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// Row i as a vector of field elements.
    pub fn row(&self, i: usize) -> Vec<Fe> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FMatrix {
        let mut out = FMatrix::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Vertical stack (self on top of other); column counts must agree.
    pub fn stack(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.ctx.key() != other.ctx.key() {
            return Err(Error::MixedFields);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FMatrix { rows: self.rows + other.rows, cols: self.cols, data, ctx: self.ctx.clone() })
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> FMatrix {
        assert!(!cols.is_empty());
        let mut out = FMatrix::zeros(&self.ctx, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                assert!(j < self.cols);
                out.data[i * cols.len() + jj] = self.data[i * self.cols + j];
            }
        }
        out
    }

    // -- elimination ---------------------------------------------------------

    /// In-place forward elimination on raw data. Pivot selection: scan the
    /// current column top-down and take the first nonzero entry. Returns
    /// (rank, pivot columns, number of row swaps, product of pivots).
    fn forward_eliminate(&mut self) -> (usize, Vec<usize>, usize, u64) {
        let ctx = self.ctx.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        let mut pivot_cols = Vec::new();
        let mut swaps = 0usize;
        let mut pivot_product = 1u64;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != rank {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, rank * cols + j);
                }
                swaps += 1;
            }
            let pivot = self.data[rank * cols + c];
            pivot_product = ctx.mul_raw(pivot_product, pivot);
            let pivot_inv = ctx.inv_raw(pivot).expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = ctx.mul_raw(self.data[r * cols + c], pivot_inv);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = ctx.mul_raw(factor, self.data[rank * cols + j]);
                    self.data[r * cols + j] =
                        ctx.sub_raw(self.data[r * cols + j], sub);
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }
        (rank, pivot_cols, swaps, pivot_product)
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.forward_eliminate().0
    }

    /// Exact determinant (square matrices only), via elimination with
    /// row-swap sign tracking.
    pub fn det(&self) -> Result<Fe> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(self.ctx.one()); // det of the empty matrix
        }
        let mut work = self.clone();
        let (rank, _, swaps, pivot_product) = work.forward_eliminate();
        if rank < self.rows {
            return Ok(self.ctx.zero());
        }
        let value = if swaps % 2 == 1 {
            self.ctx.neg_raw(pivot_product)
        } else {
            pivot_product
        };
        self.ctx.from_code(value)
    }

    /// Reduced row echelon form. Idempotent; zero rows sink to the bottom.
    pub fn rref(&self) -> FMatrix {
        let mut work = self.clone();
        let ctx = work.ctx.clone();
        let cols = work.cols;
        let (rank, pivot_cols, _, _) = work.forward_eliminate();
        // Normalize pivots to 1 and clear above.
        for (r, &c) in pivot_cols.iter().enumerate().take(rank).rev() {
            let inv = ctx.inv_raw(work.data[r * cols + c]).expect("pivot nonzero");
            for j in c..cols {
                work.data[r * cols + j] = ctx.mul_raw(work.data[r * cols + j], inv);
            }
            for rr in 0..r {
                let factor = work.data[rr * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = ctx.mul_raw(factor, work.data[r * cols + j]);
                    work.data[rr * cols + j] = ctx.sub_raw(work.data[rr * cols + j], sub);
                }
            }
        }
        work
    }

    /// Basis of the right kernel {x : A·xᵀ = 0} as a (cols − rank) × cols
    /// matrix in RREF-derived canonical form (rows are the RREF of the
    /// standard free-column basis). A full-column-rank input yields a
    /// 0 × cols matrix.
    pub fn nullspace_basis(&self) -> FMatrix {
        let ctx = &self.ctx;
        let reduced = self.rref();
        let cols = self.cols;
        // Recover pivot columns from the RREF.
        let mut pivot_of_row = Vec::new();
        for r in 0..reduced.rows {
            if let Some(c) = (0..cols).find(|&c| reduced.data[r * cols + c] != 0) {
                pivot_of_row.push((r, c));
            }
        }
        let pivot_cols: Vec<usize> = pivot_of_row.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> =
            (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        if free_cols.is_empty() {
            return FMatrix { rows: 0, cols, data: Vec::new(), ctx: Arc::clone(ctx) };
        }
        let mut basis = FMatrix::zeros(ctx, free_cols.len(), cols);
        for (bi, &f) in free_cols.iter().enumerate() {
            basis.data[bi * cols + f] = 1;
            for &(r, c) in &pivot_of_row {
                let coef = reduced.data[r * cols + f];
                basis.data[bi * cols + c] = ctx.neg_raw(coef);
            }
        }
        basis.rref()
    }

    /// Whether two matrices span the same row space (compare trimmed RREFs).
    pub fn row_space_eq(&self, other: &FMatrix) -> bool {
        if self.ctx.key() != other.ctx.key() || self.cols != other.cols {
            return false;
        }
        let a = self.rref().trim_zero_rows();
        let b = other.rref().trim_zero_rows();
        a.rows == b.rows && a.data == b.data
    }

    /// Drop all-zero rows (RREF puts them last, but this scans every row).
    pub fn trim_zero_rows(&self) -> FMatrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&r| (0..self.cols).any(|c| self.data[r * self.cols + c] != 0))
            .collect();
        let mut data = Vec::with_capacity(keep.len() * self.cols);
        for &r in &keep {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        FMatrix { rows: keep.len(), cols: self.cols, data, ctx: self.ctx.clone() }
    }

    // -- plain-text interchange format ---------------------------------------

    /// Serialize as `rows cols q` on the first line, then one line of
    /// space-separated canonical codes per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.ctx.order());
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| self.data[r * self.cols + c].to_string())
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the [`FMatrix::to_text`] format. The field is reconstructed from
    /// the order q in the header (q must be an odd prime power).
    pub fn from_text(text: &str) -> Result<FMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty matrix text".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput(
                "matrix header must be `rows cols q`".into(),
            ));
        }
        let rows: usize = parts[0]
            .parse()
            .map_err(|_| Error::InvalidInput("bad row count".into()))?;
        let cols: usize = parts[1]
            .parse()
            .map_err(|_| Error::InvalidInput("bad column count".into()))?;
        let q: u64 = parts[2]
            .parse()
            .map_err(|_| Error::InvalidInput("bad field order".into()))?;
        let (p, m) = split_prime_power(q)?;
        let ctx = FieldCtx::new(p, m)?;
        if cols == 0 {
            return Err(Error::InvalidInput("matrix must have at least one column".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::InvalidInput(format!("missing row {}", r + 1)))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    entries.len(),
                    cols
                )));
            }
            for e in entries {
                let v: u64 = e
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad entry `{}`", e)))?;
                if v >= q {
                    return Err(Error::IndexOutOfRange(format!(
                        "entry {} is not below q = {}",
                        v, q
                    )));
                }
                data.push(v);
            }
        }
        Ok(FMatrix { rows, cols, data, ctx })
    }
}

/// Split q into (p, m) with q = p^m, p prime. Errors when q is not a prime
/// power.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("{} is not a prime power", q)));
    }
    let mut p = q;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut m = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidInput(format!("{} is not a prime power", q)));
    }
    Ok((p, m))
}

/// Exact matrix product a · b.
pub fn matmul(a: &FMatrix, b: &FMatrix) -> Result<FMatrix> {
    if a.ctx.key() != b.ctx.key() {
        return Err(Error::MixedFields);
    }
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let ctx = &a.ctx;
    let mut out = FMatrix::zeros(ctx, a.rows, b.cols);
    for i in 0..a.rows {
        for t in 0..a.cols {
            let av = a.data[i * a.cols + t];
            if av == 0 {
                continue;
            }
            for j in 0..b.cols {
                let prod = ctx.mul_raw(av, b.data[t * b.cols + j]);
                out.data[i * b.cols + j] = ctx.add_raw(out.data[i * b.cols + j], prod);
            }
        }
    }
    Ok(out)
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} over {}", self.rows, self.cols, self.ctx)?;
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| self.data[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "  [{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl PartialEq for FMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.key() == other.ctx.key()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for FMatrix {}
