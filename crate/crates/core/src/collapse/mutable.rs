use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::khovanov::{Bigrading, Complex};

pub type Chain = BTreeMap<usize, i64>;

fn axpy(target: &mut Chain, factor: i64, source: &Chain) {
    for (&k, &v) in source {
        let e = target.entry(k).or_insert(0);
        *e -= factor * v;
        if *e == 0 {
            target.remove(&k);
        }
    }
}

/// One elementary collapse: `x` and `y` removed with `<d x, y> = lambda`.
#[derive(Clone, Debug)]
pub struct CollapseStep {
    pub x: usize,
    pub y: usize,
    pub lambda: i64,
    /// `d x` at the time of the collapse, including the `y` term.
    pub dx: Chain,
    pub group: Option<usize>,
}

/// A chain complex being reduced by elementary collapses. Generator ids are
/// those of the starting complex; each live generator also carries its image
/// under the inclusion back into the starting complex.
#[derive(Clone, Debug)]
pub struct MutableComplex {
    pub labels: Vec<String>,
    pub grading: Vec<Bigrading>,
    /// Optional partition of generators (e.g. by spanning tree).
    pub group: Vec<Option<usize>>,
    alive: Vec<bool>,
    boundary: Vec<Chain>,
    coboundary: Vec<BTreeSet<usize>>,
    expansion: Option<Vec<Chain>>,
    pub log: Vec<CollapseStep>,
    /// Incidence updates between two generators of one group, made while
    /// collapsing inside a different group.
    pub insulation_violations: usize,
}

impl MutableComplex {
    pub fn from_complex(c: &Complex, track_expansions: bool) -> MutableComplex {
        let n = c.len();
        let mut boundary = vec![Chain::new(); n];
        let mut coboundary = vec![BTreeSet::new(); n];
        for (g, col) in c.boundary.iter().enumerate() {
            for &(h, v) in col {
                *boundary[g].entry(h).or_insert(0) += v;
            }
            boundary[g].retain(|_, v| *v != 0);
            for &h in boundary[g].keys() {
                coboundary[h].insert(g);
            }
        }
        MutableComplex {
            labels: c.labels.clone(),
            grading: c.grading.clone(),
            group: vec![None; n],
            alive: vec![true; n],
            boundary,
            coboundary,
            expansion: track_expansions.then(|| (0..n).map(|g| Chain::from([(g, 1)])).collect()),
            log: Vec::new(),
            insulation_violations: 0,
        }
    }

    pub fn is_alive(&self, g: usize) -> bool {
        self.alive[g]
    }

    pub fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&g| self.alive[g])
    }

    pub fn live_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn incidence(&self, x: usize, y: usize) -> i64 {
        self.boundary[x].get(&y).copied().unwrap_or(0)
    }

    pub fn boundary(&self, g: usize) -> &Chain {
        &self.boundary[g]
    }

    pub fn expansion(&self, g: usize) -> Option<&Chain> {
        self.expansion.as_ref().map(|e| &e[g])
    }

    /// Remove `x` and `y`, where `<d x, y> = ±1`.
    pub fn collapse(&mut self, x: usize, y: usize) -> Result<()> {
        self.collapse_in(x, y, None)
    }

    /// As [`collapse`](Self::collapse), recording which group is being reduced
    /// so that cross-group incidence updates can be counted.
    pub fn collapse_in(&mut self, x: usize, y: usize, active: Option<usize>) -> Result<()> {
        if !self.alive[x] || !self.alive[y] {
            return Err(Error::Invariant(format!("collapse of a dead generator {}", self.labels[x])));
        }
        let lambda = self.incidence(x, y);
        if lambda.abs() != 1 {
            return Err(Error::IncidenceNotUnit(lambda));
        }
        let dx = self.boundary[x].clone();
        let partners: Vec<usize> = self.coboundary[y].iter().copied().filter(|&g| g != x).collect();
        for xp in partners {
            let factor = lambda * self.incidence(xp, y);
            let gx = self.group[xp];
            for (&z, &v) in &dx {
                if factor * v != 0 && gx.is_some() && gx == self.group[z] && gx != active {
                    self.insulation_violations += 1;
                }
            }
            let before: BTreeSet<usize> = self.boundary[xp].keys().copied().collect();
            axpy(&mut self.boundary[xp], factor, &dx);
            for &z in dx.keys() {
                let now = self.boundary[xp].contains_key(&z);
                if now && !before.contains(&z) {
                    self.coboundary[z].insert(xp);
                } else if !now && before.contains(&z) {
                    self.coboundary[z].remove(&xp);
                }
            }
            if let Some(exp) = &mut self.expansion {
                let ex = exp[x].clone();
                axpy(&mut exp[xp], factor, &ex);
            }
        }
        // drop x and y
        for g in [x, y] {
            let sources: Vec<usize> = self.coboundary[g].iter().copied().collect();
            for s in sources {
                self.boundary[s].remove(&g);
            }
            self.coboundary[g].clear();
            let targets: Vec<usize> = self.boundary[g].keys().copied().collect();
            for t in targets {
                self.coboundary[t].remove(&g);
            }
            self.boundary[g].clear();
            self.alive[g] = false;
            if let Some(exp) = &mut self.expansion {
                exp[g].clear();
            }
        }
        self.log.push(CollapseStep { x, y, lambda, dx, group: active });
        Ok(())
    }

    /// Apply the retraction recorded in the log to a chain of the starting complex.
    pub fn retract(&self, chain: &Chain) -> Chain {
        replay(&self.log, chain)
    }

    /// Current complex on the live generators, reindexed in id order.
    pub fn to_complex(&self, degree: Bigrading) -> (Complex, Vec<usize>) {
        let ids: Vec<usize> = self.live().collect();
        let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut c = Complex::new(degree);
        for &g in &ids {
            c.push(self.labels[g].clone(), self.grading[g]);
        }
        for (i, &g) in ids.iter().enumerate() {
            c.boundary[i] = self.boundary[g].iter().map(|(h, &v)| (pos[h], v)).collect();
        }
        (c, ids)
    }

    /// `d` of the live generators composes to zero.
    pub fn check_d_squared(&self) -> Result<()> {
        for g in self.live() {
            let mut acc = Chain::new();
            for (&h, &a) in &self.boundary[g] {
                axpy(&mut acc, -a, &self.boundary[h]);
            }
            if !acc.is_empty() {
                return Err(Error::Composability);
            }
        }
        Ok(())
    }
}

/// Retraction onto the reduced complex: for each logged collapse, drop the
/// `x` coordinate and replace `y` by `-lambda * (d x - lambda y)`.
pub fn replay(log: &[CollapseStep], chain: &Chain) -> Chain {
    let mut c = chain.clone();
    for step in log {
        c.remove(&step.x);
        if let Some(cy) = c.get(&step.y).copied() {
            axpy(&mut c, step.lambda * cy, &step.dx);
            debug_assert!(!c.contains_key(&step.y));
            c.remove(&step.y);
        }
    }
    c
}

/// Apply the original differential (as sparse columns) to a chain.
pub fn apply_boundary(c: &Complex, chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (&g, &a) in chain {
        for &(h, v) in &c.boundary[g] {
            let e = out.entry(h).or_insert(0);
            *e += a * v;
            if *e == 0 {
                out.remove(&h);
            }
        }
    }
    out
}
