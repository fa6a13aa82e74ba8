//! Smith normal form over the integers.
//!
//! The fast path first eliminates unit pivots on a sparse copy of the matrix
//! (each such pivot contributes an invariant factor 1) and then runs a dense
//! big-integer reduction on whatever is left. Khovanov differentials are
//! almost entirely eliminated by the sparse phase.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub certificate: Option<Certificate>,
}

/// Unimodular `left` (rows x rows) and `right` (cols x cols) with
/// `left * m * right = diag(factors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// Invariant factors strictly greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut sparse = SparseRows::from_matrix(m);
    let units = sparse.eliminate_unit_pivots();
    let rest = sparse.into_dense();
    let mut dense = DenseSnf::new(rest, false);
    dense.run();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense.factors());
    let rank = factors.len();
    SmithForm { factors, rank, certificate: None }
}

/// Dense reduction that also records transformation matrices and verifies
/// `left * m * right = diag(factors)` before returning.
pub fn smith_normal_form_with_certificate(m: &IntegerMatrix) -> Result<SmithForm> {
    let a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let mut dense = DenseSnf::new(a.clone(), true);
    dense.ncols = m.ncols();
    dense.run();
    let factors = dense.factors();
    let left = dense.left.take().unwrap();
    let right = dense.right.take().unwrap();

    let prod = mat_mul(&mat_mul(&left, &a, m.ncols()), &right, m.ncols());
    for (r, row) in prod.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let want = if r == c && r < factors.len() { factors[r].clone() } else { BigInt::zero() };
            if *v != want {
                return Err(Error::Invariant("Smith certificate does not diagonalize".into()));
            }
        }
    }
    if !det_is_unit(&left) || !det_is_unit(&right) {
        return Err(Error::Invariant("Smith certificate is not unimodular".into()));
    }
    let rank = factors.len();
    Ok(SmithForm { factors, rank, certificate: Some(Certificate { left, right }) })
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], b_cols_hint: usize) -> Vec<Vec<BigInt>> {
    let ncols = b.first().map_or(b_cols_hint, Vec::len);
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|c| {
                    row.iter()
                        .zip(b.iter())
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[c])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant, used to check unimodularity.
fn det_is_unit(m: &[Vec<BigInt>]) -> bool {
    let n = m.len();
    if n == 0 {
        return true;
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return false,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    (sign * &a[n - 1][n - 1]).abs().is_one()
}

struct SparseRows {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    alive_rows: Vec<bool>,
    alive_cols: Vec<bool>,
}

impl SparseRows {
    fn from_matrix(m: &IntegerMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.nrows()];
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (r, c, v) in m.entries() {
            rows[r].insert(c, BigInt::from(v));
            cols[c].insert(r);
        }
        Self {
            rows,
            cols,
            alive_rows: vec![true; m.nrows()],
            alive_cols: vec![true; m.ncols()],
        }
    }

    /// Repeatedly pivot on entries equal to +-1; returns the number of pivots.
    fn eliminate_unit_pivots(&mut self) -> usize {
        let mut count = 0;
        loop {
            let mut order: Vec<usize> = (0..self.cols.len())
                .filter(|&c| self.alive_cols[c] && !self.cols[c].is_empty())
                .collect();
            order.sort_by_key(|&c| self.cols[c].len());
            let mut progressed = false;
            for c in order {
                if !self.alive_cols[c] {
                    continue;
                }
                let pivot_row = self.cols[c]
                    .iter()
                    .copied()
                    .filter(|&r| self.rows[r][&c].abs().is_one())
                    .min_by_key(|&r| self.rows[r].len());
                if let Some(r) = pivot_row {
                    self.pivot(r, c);
                    count += 1;
                    progressed = true;
                }
            }
            if !progressed {
                return count;
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot = self.rows[r][&c].clone();
        let pivot_row: Vec<(usize, BigInt)> =
            self.rows[r].iter().map(|(&k, v)| (k, v.clone())).collect();
        let others: Vec<usize> = self.cols[c].iter().copied().filter(|&x| x != r).collect();
        for r2 in others {
            // pivot is a unit, so a / pivot == a * pivot
            let factor = &self.rows[r2][&c] * &pivot;
            for (k, v) in &pivot_row {
                let entry = self.rows[r2].entry(*k).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    self.rows[r2].remove(k);
                    self.cols[*k].remove(&r2);
                } else {
                    self.cols[*k].insert(r2);
                }
            }
        }
        for (k, _) in &pivot_row {
            self.cols[*k].remove(&r);
        }
        self.rows[r].clear();
        self.alive_rows[r] = false;
        self.alive_cols[c] = false;
    }

    fn into_dense(self) -> Vec<Vec<BigInt>> {
        let col_index: Vec<usize> = (0..self.cols.len())
            .filter(|&c| self.alive_cols[c] && !self.cols[c].is_empty())
            .collect();
        let pos: BTreeMap<usize, usize> = col_index.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        self.rows
            .into_iter()
            .enumerate()
            .filter(|(r, row)| self.alive_rows[*r] && !row.is_empty())
            .map(|(_, row)| {
                let mut dense = vec![BigInt::zero(); col_index.len()];
                for (c, v) in row {
                    dense[pos[&c]] = v;
                }
                dense
            })
            .collect()
    }
}

struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    nrows: usize,
    ncols: usize,
    left: Option<Vec<Vec<BigInt>>>,
    right: Option<Vec<Vec<BigInt>>>,
    diag: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl DenseSnf {
    fn new(a: Vec<Vec<BigInt>>, track: bool) -> Self {
        let nrows = a.len();
        let ncols = a.first().map_or(0, Vec::len);
        Self {
            a,
            nrows,
            ncols,
            left: track.then(|| identity(nrows)),
            right: track.then(|| identity(ncols)),
            diag: 0,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(l) = &mut self.left {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.ncols {
            let t = &self.a[src][c] * q;
            self.a[dst][c] -= t;
        }
        if let Some(l) = &mut self.left {
            for c in 0..l[0].len() {
                let t = &l[src][c] * q;
                l[dst][c] -= t;
            }
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.nrows {
            let t = &self.a[r][src] * q;
            self.a[r][dst] -= t;
        }
        if let Some(rm) = &mut self.right {
            for row in rm.iter_mut() {
                let t = &row[src] * q;
                row[dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for v in &mut self.a[r] {
            *v = -&*v;
        }
        if let Some(l) = &mut self.left {
            for v in &mut l[r] {
                *v = -&*v;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.nrows {
            for c in t..self.ncols {
                let v = &self.a[r][c];
                if v.is_zero() {
                    continue;
                }
                if best.map_or(true, |(br, bc)| v.abs() < self.a[br][bc].abs()) {
                    best = Some((r, c));
                    if v.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.nrows.min(self.ncols) {
            let Some((r, c)) = self.min_entry(t) else { break };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut dirty = false;
                for i in t + 1..self.nrows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        self.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..self.ncols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        self.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // enforce the divisibility chain
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.nrows)
                    .find(|&i| (t + 1..self.ncols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        self.row_axpy(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        self.diag = t;
    }

    fn factors(&self) -> Vec<BigInt> {
        (0..self.diag).map(|i| self.a[i][i].clone()).collect()
    }
}

/// Free rank and torsion of `ker(out) / im(in)` at the middle group.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologyGroup {
    pub free: usize,
    #[serde(with = "bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free > 0 {
            parts.push(format!("Z^{}", self.free));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|d| d.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Homology at the middle of `C_prev --incoming--> C --outgoing--> C_next`.
pub fn homology_groups(incoming: &IntegerMatrix, outgoing: &IntegerMatrix) -> Result<HomologyGroup> {
    let n = incoming.nrows();
    if outgoing.ncols() != n {
        return Err(Error::Invariant("boundary shapes are not composable".into()));
    }
    if n > 0 && incoming.ncols() > 0 && outgoing.nrows() > 0 && !outgoing.mul(incoming).is_zero() {
        return Err(Error::Composability);
    }
    let out_rank = smith_normal_form(outgoing).rank;
    let snf_in = smith_normal_form(incoming);
    Ok(HomologyGroup {
        free: n - out_rank - snf_in.rank,
        torsion: snf_in.torsion(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_and_identity() {
        let z = smith_normal_form(&IntegerMatrix::zeros(3, 4));
        assert_eq!(z.rank, 0);
        assert!(z.factors.is_empty());
        let id = smith_normal_form(&IntegerMatrix::identity(4));
        assert_eq!(id.factors, factors(&[1, 1, 1, 1]));
        let empty = smith_normal_form(&IntegerMatrix::zeros(0, 0));
        assert_eq!(empty.rank, 0);
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).factors, factors(&[2, 4]));
        let cert = smith_normal_form_with_certificate(&m).unwrap();
        assert_eq!(cert.factors, factors(&[2, 4]));
        assert!(cert.certificate.is_some());
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).factors, factors(&[1, 6]));
        assert_eq!(smith_normal_form_with_certificate(&m).unwrap().factors, factors(&[1, 6]));
    }

    #[test]
    fn homology_examples() {
        let h = homology_groups(&IntegerMatrix::zeros(3, 0), &IntegerMatrix::zeros(0, 3)).unwrap();
        assert_eq!(h, HomologyGroup { free: 3, torsion: vec![] });
        let two = IntegerMatrix::from_rows(&[vec![2]]);
        let h = homology_groups(&two, &IntegerMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h, HomologyGroup { free: 0, torsion: factors(&[2]) });
        assert_eq!(h.to_string(), "Z/2");
    }

    #[test]
    fn composability_violation_is_reported() {
        let d1 = IntegerMatrix::from_rows(&[vec![1], vec![1]]);
        let d2 = IntegerMatrix::from_rows(&[vec![1, 1]]);
        assert!(matches!(homology_groups(&d1, &d2), Err(Error::Composability)));
    }

    fn random_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
        })
    }

    proptest! {
        #[test]
        fn fast_and_certified_paths_agree(rows in random_matrix()) {
            let m = IntegerMatrix::from_rows(&rows);
            let fast = smith_normal_form(&m);
            let cert = smith_normal_form_with_certificate(&m).unwrap();
            prop_assert_eq!(&fast.factors, &cert.factors);
            for w in fast.factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn invariant_under_unimodular_operations(rows in random_matrix(),
                                                 ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..4, any::<bool>()), 0..12)) {
            let m = IntegerMatrix::from_rows(&rows);
            let mut d = m.to_dense();
            let (nr, nc) = (d.len(), d[0].len());
            for (i, j, q, on_rows) in ops {
                if on_rows {
                    let (i, j) = (i % nr, j % nr);
                    if i == j { continue; }
                    for c in 0..nc { d[i][c] += q * d[j][c]; }
                } else {
                    let (i, j) = (i % nc, j % nc);
                    if i == j { continue; }
                    for row in d.iter_mut() { row[i] += q * row[j]; }
                }
            }
            let m2 = IntegerMatrix::from_rows(&d);
            prop_assert_eq!(smith_normal_form(&m).factors, smith_normal_form(&m2).factors);
        }
    }
}
