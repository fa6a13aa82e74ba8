use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{homology_groups, rank_with, Coefficients, HomologyGroup, IntegerMatrix};
use crate::error::{Error, Result};

pub type Bigrading = (i64, i64);

/// Free chain complex over Z with bigraded generators and a differential of
/// fixed bidegree, stored as sparse columns.
#[derive(Clone, Debug, Default)]
pub struct Complex {
    pub labels: Vec<String>,
    pub grading: Vec<Bigrading>,
    /// `boundary[g]` = nonzero `(target, coefficient)` pairs of `d g`.
    pub boundary: Vec<Vec<(usize, i64)>>,
    pub degree: Bigrading,
}

impl Complex {
    pub fn new(degree: Bigrading) -> Complex {
        Complex { degree, ..Default::default() }
    }

    pub fn push(&mut self, label: String, grading: Bigrading) -> usize {
        self.labels.push(label);
        self.grading.push(grading);
        self.boundary.push(Vec::new());
        self.labels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Generators of each bigrading, in index order.
    pub fn buckets(&self) -> BTreeMap<Bigrading, Vec<usize>> {
        let mut out: BTreeMap<Bigrading, Vec<usize>> = BTreeMap::new();
        for (g, &gr) in self.grading.iter().enumerate() {
            out.entry(gr).or_default().push(g);
        }
        out
    }

    fn shifted(&self, (a, b): Bigrading) -> Bigrading {
        (a + self.degree.0, b + self.degree.1)
    }

    /// Matrix of `d` from bigrading `from` (columns) to `from + degree` (rows).
    pub fn block(&self, buckets: &BTreeMap<Bigrading, Vec<usize>>, from: Bigrading) -> IntegerMatrix {
        let empty = Vec::new();
        let src = buckets.get(&from).unwrap_or(&empty);
        let dst = buckets.get(&self.shifted(from)).unwrap_or(&empty);
        let row_of: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(r, &g)| (g, r)).collect();
        let mut m = IntegerMatrix::zeros(dst.len(), src.len());
        for (c, &g) in src.iter().enumerate() {
            for &(h, v) in &self.boundary[g] {
                m.add_to(row_of[&h], c, v);
            }
        }
        m
    }

    /// Every matrix entry of `d` has the declared bidegree.
    pub fn check_degree(&self) -> Result<()> {
        for (g, col) in self.boundary.iter().enumerate() {
            for &(h, _) in col {
                if self.grading[h] != self.shifted(self.grading[g]) {
                    return Err(Error::Invariant(format!(
                        "d({}) hits {} at bigrading {:?}, expected {:?}",
                        self.labels[g],
                        self.labels[h],
                        self.grading[h],
                        self.shifted(self.grading[g])
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d ∘ d = 0`.
    pub fn check_d_squared(&self) -> Result<()> {
        let bad = (0..self.len()).into_par_iter().find_any(|&g| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(h, a) in &self.boundary[g] {
                for &(k, b) in &self.boundary[h] {
                    *acc.entry(k).or_default() += a * b;
                }
            }
            acc.values().any(|&v| v != 0)
        });
        match bad {
            Some(_) => Err(Error::Composability),
            None => Ok(()),
        }
    }

    /// Integral homology at every bigrading carrying generators (zero groups omitted).
    pub fn homology(&self) -> Result<BigradedHomology> {
        let buckets = self.buckets();
        let keys: Vec<Bigrading> = buckets.keys().copied().collect();
        let groups: Vec<(Bigrading, HomologyGroup)> = keys
            .par_iter()
            .map(|&g| {
                let prev = (g.0 - self.degree.0, g.1 - self.degree.1);
                let incoming = self.block(&buckets, prev);
                let outgoing = self.block(&buckets, g);
                homology_groups(&incoming, &outgoing).map(|h| (g, h))
            })
            .collect::<Result<_>>()?;
        Ok(BigradedHomology {
            groups: groups.into_iter().filter(|(_, h)| !h.is_zero()).collect(),
        })
    }

    /// Homology dimensions over a field (or rational ranks over Z).
    pub fn homology_dims(&self, coeff: Coefficients) -> BTreeMap<Bigrading, usize> {
        let buckets = self.buckets();
        let keys: Vec<Bigrading> = buckets.keys().copied().collect();
        keys.par_iter()
            .map(|&g| {
                let prev = (g.0 - self.degree.0, g.1 - self.degree.1);
                let n = buckets[&g].len();
                let dim = n - rank_with(coeff, &self.block(&buckets, g)) - rank_with(coeff, &self.block(&buckets, prev));
                (g, dim)
            })
            .filter(|(_, d)| *d > 0)
            .collect()
    }
}

/// Nonzero homology groups keyed by bigrading.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BigradedHomology {
    #[serde(serialize_with = "serialize_groups")]
    pub groups: BTreeMap<Bigrading, HomologyGroup>,
}

fn serialize_groups<S: serde::Serializer>(
    g: &BTreeMap<Bigrading, HomologyGroup>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry {
        grading: [i64; 2],
        free: usize,
        torsion: Vec<String>,
    }
    s.collect_seq(g.iter().map(|(&(a, b), h)| Entry {
        grading: [a, b],
        free: h.free,
        torsion: h.torsion.iter().map(|t| t.to_string()).collect(),
    }))
}

impl BigradedHomology {
    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|h| h.free).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(|h| !h.torsion.is_empty())
    }

    /// Apply a regrading to every key.
    pub fn regrade(&self, f: impl Fn(Bigrading) -> Bigrading) -> BigradedHomology {
        BigradedHomology { groups: self.groups.iter().map(|(&g, h)| (f(g), h.clone())).collect() }
    }

    pub fn table(&self) -> String {
        if self.groups.is_empty() {
            return "0\n".to_string();
        }
        self.groups
            .iter()
            .map(|((a, b), h)| format!("({a}, {b}): {h}\n"))
            .collect()
    }
}
