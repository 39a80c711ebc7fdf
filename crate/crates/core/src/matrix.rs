//! Dense/sparse exact matrices over a `RingSpec`.
//!
//! Storage is an implementation detail: every operation produces the same
//! entries whichever representation the operands use, and `finalize` picks
//! sparse storage automatically when fewer than 10% of entries are nonzero.
//! Row vectors act on the left throughout the crate: `x * A`.

use crate::ring::{RingSpec, Scalar};
use std::fmt;

#[derive(Clone)]
enum Storage {
    Dense(Vec<Vec<Scalar>>),
    /// Row-major adjacency: each row holds (col, value) sorted by col, values nonzero.
    Sparse(Vec<Vec<(usize, Scalar)>>),
}

#[derive(Clone)]
pub struct ExactMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Storage,
}

const SPARSE_DENSITY_NUM: usize = 1;
const SPARSE_DENSITY_DEN: usize = 10;

impl ExactMatrix {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            data: Storage::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let one = ring.one();
        let rows = (0..n).map(|i| vec![(i, one.clone())]).collect();
        ExactMatrix {
            ring,
            rows: n,
            cols: n,
            data: Storage::Sparse(rows),
        }
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        ExactMatrix {
            ring,
            rows: r,
            cols: c,
            data: Storage::Dense(rows),
        }
        .finalize()
    }

    pub fn from_i64_rows(ring: RingSpec, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        ExactMatrix::from_rows(ring, data)
    }

    /// Rows as sorted (col, nonzero value) lists.
    pub fn from_sparse_rows(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        data: Vec<Vec<(usize, Scalar)>>,
    ) -> Self {
        assert_eq!(data.len(), rows);
        for row in &data {
            let mut last = None;
            for (c, v) in row {
                assert!(*c < cols, "column out of range");
                assert!(!ring.is_zero(v), "explicit zero in sparse row");
                assert!(last.is_none_or(|l| l < *c), "unsorted sparse row");
                last = Some(*c);
            }
        }
        ExactMatrix {
            ring,
            rows,
            cols,
            data: Storage::Sparse(data),
        }
        .finalize()
    }

    pub fn from_fn(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows);
        for i in 0..rows {
            let mut row = Vec::new();
            for j in 0..cols {
                let v = f(i, j);
                if !ring.is_zero(&v) {
                    row.push((j, v));
                }
            }
            data.push(row);
        }
        ExactMatrix {
            ring,
            rows,
            cols,
            data: Storage::Sparse(data),
        }
        .finalize()
    }

    pub fn nnz(&self) -> usize {
        match &self.data {
            Storage::Dense(d) => d
                .iter()
                .map(|r| r.iter().filter(|v| !self.ring.is_zero(v)).count())
                .sum(),
            Storage::Sparse(s) => s.iter().map(|r| r.len()).sum(),
        }
    }

    /// Re-pick storage per the density rule. Canonical entries are unaffected.
    pub fn finalize(self) -> Self {
        let total = self.rows.saturating_mul(self.cols);
        let nnz = self.nnz();
        let want_sparse = total == 0 || nnz * SPARSE_DENSITY_DEN < total * SPARSE_DENSITY_NUM;
        match (&self.data, want_sparse) {
            (Storage::Dense(_), true) => self.force_sparse(),
            (Storage::Sparse(_), false) => self.force_dense(),
            _ => self,
        }
    }

    pub fn force_dense(self) -> Self {
        match self.data {
            Storage::Dense(_) => self,
            Storage::Sparse(s) => {
                let zero = self.ring.zero();
                let mut d = vec![vec![zero; self.cols]; self.rows];
                for (i, row) in s.into_iter().enumerate() {
                    for (j, v) in row {
                        d[i][j] = v;
                    }
                }
                ExactMatrix {
                    ring: self.ring,
                    rows: self.rows,
                    cols: self.cols,
                    data: Storage::Dense(d),
                }
            }
        }
    }

    pub fn force_sparse(self) -> Self {
        match self.data {
            Storage::Sparse(_) => self,
            Storage::Dense(d) => {
                let s = d
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .enumerate()
                            .filter(|(_, v)| !self.ring.is_zero(v))
                            .collect()
                    })
                    .collect();
                ExactMatrix {
                    ring: self.ring,
                    rows: self.rows,
                    cols: self.cols,
                    data: Storage::Sparse(s),
                }
            }
        }
    }

    pub fn storage_kind(&self) -> &'static str {
        match &self.data {
            Storage::Dense(_) => "dense",
            Storage::Sparse(_) => "sparse",
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.data {
            Storage::Dense(d) => d[i][j].clone(),
            Storage::Sparse(s) => s[i]
                .binary_search_by_key(&j, |(c, _)| *c)
                .map(|k| s[i][k].1.clone())
                .unwrap_or_else(|_| self.ring.zero()),
        }
    }

    /// Row i as a sorted (col, nonzero value) list.
    pub fn sparse_row(&self, i: usize) -> Vec<(usize, Scalar)> {
        match &self.data {
            Storage::Dense(d) => d[i]
                .iter()
                .enumerate()
                .filter(|(_, v)| !self.ring.is_zero(v))
                .map(|(j, v)| (j, v.clone()))
                .collect(),
            Storage::Sparse(s) => s[i].clone(),
        }
    }

    pub fn dense_row(&self, i: usize) -> Vec<Scalar> {
        match &self.data {
            Storage::Dense(d) => d[i].clone(),
            Storage::Sparse(s) => {
                let mut row = vec![self.ring.zero(); self.cols];
                for (j, v) in &s[i] {
                    row[*j] = v.clone();
                }
                row
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            let row = self.sparse_row(i);
            if row.len() != 1 || row[0].0 != i || !self.ring.is_one(&row[0].1) {
                return false;
            }
        }
        true
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let ring = self.ring;
        let mut out: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc: Vec<Scalar> = vec![ring.zero(); other.cols];
            let mut touched = vec![false; other.cols];
            for (k, a) in self.sparse_row(i) {
                for (j, b) in other.sparse_row(k) {
                    acc[j] = ring.add(&acc[j], &ring.mul(&a, &b));
                    touched[j] = true;
                }
            }
            let row = acc
                .into_iter()
                .enumerate()
                .filter(|(j, v)| touched[*j] && !ring.is_zero(v))
                .collect();
            out.push(row);
        }
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: other.cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        self.zip(other, |ring, a, b| ring.add(a, b))
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.zip(other, |ring, a, b| ring.sub(a, b))
    }

    fn zip(
        &self,
        other: &ExactMatrix,
        f: impl Fn(&RingSpec, &Scalar, &Scalar) -> Scalar,
    ) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let ring = self.ring;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let a = self.dense_row(i);
            let b = other.dense_row(i);
            let row: Vec<(usize, Scalar)> = (0..self.cols)
                .filter_map(|j| {
                    let v = f(&ring, &a[j], &b[j]);
                    if ring.is_zero(&v) {
                        None
                    } else {
                        Some((j, v))
                    }
                })
                .collect();
            out.push(row);
        }
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        let ring = self.ring;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self
                .sparse_row(i)
                .into_iter()
                .filter_map(|(j, v)| {
                    let w = ring.mul(&v, s);
                    if ring.is_zero(&w) {
                        None
                    } else {
                        Some((j, w))
                    }
                })
                .collect();
            out.push(row);
        }
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let ring = self.ring;
        let mut out: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, v) in self.sparse_row(i) {
                out[j].push((i, v));
            }
        }
        ExactMatrix {
            ring,
            rows: self.cols,
            cols: self.rows,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    /// Kronecker product; row-major index (i1, i2) -> i1 * other.rows + i2.
    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let ring = self.ring;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Vec::with_capacity(rows);
        for i1 in 0..self.rows {
            let r1 = self.sparse_row(i1);
            for i2 in 0..other.rows {
                let r2 = other.sparse_row(i2);
                let mut row = Vec::with_capacity(r1.len() * r2.len());
                for (j1, a) in &r1 {
                    for (j2, b) in &r2 {
                        let v = ring.mul(a, b);
                        if !ring.is_zero(&v) {
                            row.push((j1 * other.cols + j2, v));
                        }
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                out.push(row);
            }
        }
        ExactMatrix {
            ring,
            rows,
            cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Vec::with_capacity(rows);
        for i in 0..self.rows {
            out.push(self.sparse_row(i));
        }
        for i in 0..other.rows {
            out.push(
                other
                    .sparse_row(i)
                    .into_iter()
                    .map(|(j, v)| (j + self.cols, v))
                    .collect(),
            );
        }
        ExactMatrix {
            ring: self.ring,
            rows,
            cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.sparse_row(i);
            row.extend(
                other
                    .sparse_row(i)
                    .into_iter()
                    .map(|(j, v)| (j + self.cols, v)),
            );
            out.push(row);
        }
        ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.cols, "col mismatch in vstack");
        let mut out = Vec::with_capacity(self.rows + other.rows);
        for i in 0..self.rows {
            out.push(self.sparse_row(i));
        }
        for i in 0..other.rows {
            out.push(other.sparse_row(i));
        }
        ExactMatrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    /// New matrix from a column range.
    pub fn columns(&self, range: std::ops::Range<usize>) -> ExactMatrix {
        assert!(range.end <= self.cols);
        let cols = range.end - range.start;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self
                .sparse_row(i)
                .into_iter()
                .filter(|(j, _)| range.contains(j))
                .map(|(j, v)| (j - range.start, v))
                .collect();
            out.push(row);
        }
        ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let mut out = Vec::with_capacity(idx.len());
        for &i in idx {
            out.push(self.sparse_row(i));
        }
        ExactMatrix {
            ring: self.ring,
            rows: idx.len(),
            cols: self.cols,
            data: Storage::Sparse(out),
        }
        .finalize()
    }

    /// x * A for a row vector x.
    pub fn row_vec_mul(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.rows, "vector length mismatch");
        let ring = self.ring;
        let mut acc = vec![ring.zero(); self.cols];
        for (k, xv) in x.iter().enumerate() {
            if ring.is_zero(xv) {
                continue;
            }
            for (j, a) in self.sparse_row(k) {
                acc[j] = ring.add(&acc[j], &ring.mul(xv, &a));
            }
        }
        acc
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring || self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        for i in 0..self.rows {
            if self.sparse_row(i) != other.sparse_row(i) {
                return false;
            }
        }
        true
    }
}
impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over {} ({})",
            self.rows,
            self.cols,
            self.ring.label(),
            self.storage_kind()
        )?;
        if self.rows * self.cols <= 400 {
            for i in 0..self.rows {
                let row: Vec<String> = self.dense_row(i).iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Dot product of two equal-length vectors.
pub fn dot(ring: &RingSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = ring.zero();
    for (x, y) in a.iter().zip(b) {
        acc = ring.add(&acc, &ring.mul(x, y));
    }
    acc
}
