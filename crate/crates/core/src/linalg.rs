//! Incremental Gaussian elimination over GF(2^8).
//!
//! [`CoeffMatrix`] holds received coefficient rows (optionally augmented with
//! a payload) in reduced row-echelon form. Every insertion reduces the new row
//! against the existing pivots, so the cost per packet is O(rank * cols)
//! rather than a full elimination per decode attempt.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::gf::{self, Gf256};

/// A payload or right-hand side: one byte per symbol.
pub type SymbolVector = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
struct Row {
    pivot: usize,
    coeffs: Vec<Gf256>,
    payload: Vec<u8>,
}

/// Coefficient rows over a window of columns, kept in reduced row-echelon form.
///
/// Column `j` stands for sequence index `col_offset + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix {
    cols: usize,
    col_offset: u64,
    symbol_len: usize,
    rows: Vec<Row>,
}

impl CoeffMatrix {
    /// Coefficient-only matrix.
    pub fn new(cols: usize, col_offset: u64) -> Self {
        Self::with_symbols(cols, col_offset, 0)
    }

    /// Matrix whose rows carry a payload of `symbol_len` bytes.
    pub fn with_symbols(cols: usize, col_offset: u64, symbol_len: usize) -> Self {
        CoeffMatrix { cols, col_offset, symbol_len, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col_offset(&self) -> u64 {
        self.col_offset
    }

    pub fn symbol_len(&self) -> usize {
        self.symbol_len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Folds a coefficient row in. Returns whether the rank increased.
    pub fn rank_update(&mut self, row: &[Gf256]) -> Result<bool, Error> {
        let zeros = vec![0u8; self.symbol_len];
        self.insert(row, &zeros)
    }

    /// Folds an augmented row in. Returns whether the rank increased;
    /// a dependent row is discarded.
    pub fn insert(&mut self, row: &[Gf256], payload: &[u8]) -> Result<bool, Error> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: row.len() });
        }
        if payload.len() != self.symbol_len {
            return Err(Error::DimensionMismatch { expected: self.symbol_len, got: payload.len() });
        }
        let mut coeffs = row.to_vec();
        let mut data = payload.to_vec();
        for r in &self.rows {
            let c = coeffs[r.pivot];
            if !c.is_zero() {
                gf::mul_add_assign_elems(&mut coeffs, &r.coeffs, c);
                gf::mul_add_assign(&mut data, &r.payload, c);
            }
        }
        let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Ok(false);
        };
        let scale = coeffs[pivot].inv()?;
        gf::scale_assign_elems(&mut coeffs, scale);
        gf::scale_assign(&mut data, scale);
        for r in &mut self.rows {
            let c = r.coeffs[pivot];
            if !c.is_zero() {
                gf::mul_add_assign_elems(&mut r.coeffs, &coeffs, c);
                gf::mul_add_assign(&mut r.payload, &data, c);
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, Row { pivot, coeffs, payload: data });
        Ok(true)
    }

    fn pivot_row(&self, col: usize) -> Option<&Row> {
        self.rows.binary_search_by_key(&col, |r| r.pivot).ok().map(|i| &self.rows[i])
    }

    /// True when column `col` is determined by the rows received so far.
    pub fn is_solved(&self, col: usize) -> bool {
        match self.pivot_row(col) {
            Some(r) => r.coeffs.iter().enumerate().all(|(j, c)| j == col || c.is_zero()),
            None => false,
        }
    }

    /// Recovered payload for a solved column.
    pub fn solution(&self, col: usize) -> Option<&[u8]> {
        if self.is_solved(col) {
            self.pivot_row(col).map(|r| r.payload.as_slice())
        } else {
            None
        }
    }

    /// Appends `extra` all-zero columns on the right.
    pub fn extend_cols(&mut self, extra: usize) {
        self.cols += extra;
        for r in &mut self.rows {
            r.coeffs.resize(self.cols, Gf256::ZERO);
        }
    }

    /// Drops the first `n` columns. Each of them must already be solved.
    pub fn release_leading(&mut self, n: usize) -> Result<(), Error> {
        if n > self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: n });
        }
        if let Some(bad) = (0..n).find(|&c| !self.is_solved(c)) {
            return Err(Error::RankDeficient { rank: bad, needed: n });
        }
        self.rows.retain(|r| r.pivot >= n);
        for r in &mut self.rows {
            r.coeffs.drain(..n);
            r.pivot -= n;
        }
        self.cols -= n;
        self.col_offset += n as u64;
        Ok(())
    }

    /// Payloads for every column; the matrix must be full rank.
    pub fn solve(&self) -> Result<Vec<SymbolVector>, Error> {
        if !self.is_full_rank() {
            return Err(Error::RankDeficient { rank: self.rank(), needed: self.cols });
        }
        // Full-rank RREF is the identity, rows sorted by pivot.
        Ok(self.rows.iter().map(|r| r.payload.clone()).collect())
    }
}

/// Rank-increasing wrapper in value style: returns the updated matrix and
/// whether the row was independent of the existing ones.
pub fn rank_update(mut m: CoeffMatrix, row: &[Gf256]) -> Result<(CoeffMatrix, bool), Error> {
    let increased = m.rank_update(row)?;
    Ok((m, increased))
}

/// Solves `rows * x = rhs` for a square or over-determined system of full
/// column rank.
pub fn solve(rows: &[Vec<Gf256>], rhs: &[SymbolVector]) -> Result<Vec<SymbolVector>, Error> {
    if rows.len() != rhs.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), got: rhs.len() });
    }
    let cols = rows.first().map_or(0, |r| r.len());
    let symbol_len = rhs.first().map_or(0, |r| r.len());
    let mut m = CoeffMatrix::with_symbols(cols, 1, symbol_len);
    for (r, b) in rows.iter().zip(rhs) {
        m.insert(r, b)?;
    }
    m.solve()
}
