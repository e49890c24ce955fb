use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `n` paired observations `(xᵢ, yᵢ)` with both margins in ℝᵖ.
///
/// Rows are stored row-major. A constructed sample is always non-empty,
/// rectangular and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    x: Vec<f64>,
    y: Vec<f64>,
    n: usize,
    p: usize,
}

impl PairedSample {
    /// Builds a sample from row-major buffers of width `p`.
    pub fn new(x: Vec<f64>, y: Vec<f64>, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroDimension);
        }
        for buf in [&x, &y] {
            if buf.len() % p != 0 {
                return Err(Error::RaggedBuffer { len: buf.len(), p });
            }
        }
        let n = x.len() / p;
        if n != y.len() / p {
            return Err(Error::RowCountMismatch { x_rows: n, y_rows: y.len() / p });
        }
        if n == 0 {
            return Err(Error::EmptySample);
        }
        // columns are numbered x1..xp, y1..yp, rows from 1
        for (margin, buf) in [(0, &x), (p, &y)] {
            if let Some(pos) = buf.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row: pos / p + 1, column: margin + pos % p + 1 });
            }
        }
        Ok(PairedSample { x, y, n, p })
    }

    /// One-dimensional sample from two equal-length columns.
    pub fn from_columns(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::RowCountMismatch { x_rows: x.len(), y_rows: y.len() });
        }
        Self::new(x.to_vec(), y.to_vec(), 1)
    }

    /// Sample from per-row vectors; every row of both margins must have the same width.
    pub fn from_rows(x: &[Vec<f64>], y: &[Vec<f64>]) -> Result<Self> {
        let p = x.first().map_or(0, Vec::len);
        let q = y.first().map_or(0, Vec::len);
        if p != q {
            return Err(Error::DimensionMismatch { x_cols: p, y_cols: q });
        }
        if let Some(bad) = x.iter().chain(y).find(|r| r.len() != p) {
            return Err(Error::DimensionMismatch { x_cols: p, y_cols: bad.len() });
        }
        Self::new(x.concat(), y.concat(), p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn x_row(&self, i: usize) -> &[f64] {
        &self.x[i * self.p..(i + 1) * self.p]
    }

    #[inline]
    pub fn y_row(&self, i: usize) -> &[f64] {
        &self.y[i * self.p..(i + 1) * self.p]
    }

    /// Row-major x buffer.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Row-major y buffer.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// The sample with the margins exchanged.
    pub fn swapped(&self) -> Self {
        PairedSample { x: self.y.clone(), y: self.x.clone(), n: self.n, p: self.p }
    }

    /// Re-pairs the rows: row `i` of the result is `(xᵢ, y_{perm[i]})`.
    pub fn with_y_permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        let mut y = Vec::with_capacity(self.y.len());
        for &j in perm {
            y.extend_from_slice(self.y_row(j));
        }
        PairedSample { x: self.x.clone(), y, n: self.n, p: self.p }
    }

    /// Subsample of the given rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut x = Vec::with_capacity(rows.len() * self.p);
        let mut y = Vec::with_capacity(rows.len() * self.p);
        for &i in rows {
            if i >= self.n {
                return Err(Error::RowOutOfRange { index: i, n: self.n });
            }
            x.extend_from_slice(self.x_row(i));
            y.extend_from_slice(self.y_row(i));
        }
        Self::new(x, y, self.p)
    }

    /// Applies `f` to every x-row and `g` to every y-row.
    pub fn map_rows<F, G>(&self, f: F, g: G) -> Result<Self>
    where
        F: Fn(&[f64]) -> Vec<f64>,
        G: Fn(&[f64]) -> Vec<f64>,
    {
        let mut x = Vec::with_capacity(self.x.len());
        let mut y = Vec::with_capacity(self.y.len());
        for i in 0..self.n {
            x.extend(f(self.x_row(i)));
            y.extend(g(self.y_row(i)));
        }
        Self::new(x, y, self.p)
    }

    /// True when every x-row equals the first one.
    pub fn x_is_constant(&self) -> bool {
        rows_constant(&self.x, self.p)
    }

    /// True when every y-row equals the first one.
    pub fn y_is_constant(&self) -> bool {
        rows_constant(&self.y, self.p)
    }
}

fn rows_constant(buf: &[f64], p: usize) -> bool {
    let first = &buf[..p];
    buf.chunks_exact(p).all(|r| r == first)
}
