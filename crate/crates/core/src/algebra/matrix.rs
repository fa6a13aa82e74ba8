use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns, with optional generator labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<BTreeMap<usize, i64>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl IntegerMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            cols: vec![BTreeMap::new(); ncols],
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    /// Attach generator labels; labels on each side must be unique.
    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        if row_labels.len() != self.nrows || col_labels.len() != self.ncols {
            return Err(Error::Invariant("label count does not match matrix shape".into()));
        }
        for labels in [&row_labels, &col_labels] {
            let mut seen = HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::Invariant(format!("duplicate generator label `{dup}`")));
            }
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c].get(&r).copied().unwrap_or(0)
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v == 0 {
            self.cols[c].remove(&r);
        } else {
            self.cols[c].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        let cur = self.get(r, c);
        self.set(r, c, cur.checked_add(v).expect("matrix entry overflow"));
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.cols[c].iter().map(|(&r, &v)| (r, v))
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, &v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v);
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.nrows, rhs.ncols);
        for (c, col) in rhs.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (&k, &b) in col {
                for (&r, &a) in &self.cols[k] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e
                        .checked_add(a.checked_mul(b).expect("matrix entry overflow"))
                        .expect("matrix entry overflow");
                }
            }
            acc.retain(|_, v| *v != 0);
            out.cols[c] = acc;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![0, -1]]);
        let b = IntegerMatrix::from_rows(&[vec![3, 0], vec![1, 1]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![5, 2], vec![-1, -1]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, -1]]);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let m = IntegerMatrix::zeros(2, 1);
        let err = m.with_labels(vec!["x".into(), "x".into()], vec!["y".into()]);
        assert!(err.is_err());
    }
}
