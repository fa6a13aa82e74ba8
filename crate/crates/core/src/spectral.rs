//! Spanning tree filtration of the reduced Khovanov complex and its spectral
//! sequence over a field.
//!
//! The level of a tree is one more than the length of the longest descending
//! chain from the maximal tree, so the maximal tree sits at level 1 and the
//! differential never lowers the level. Pages are read off from a persistence
//! pairing: a pair whose levels differ by `r` is cancelled by `d_r`.
//! Bidegrees are `(p, q)` with `p` the level and `q = i - p`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Coefficients, Field, PrimeField, Rationals};
use crate::collapse::tree_of_masks;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::khovanov::{Bigrading, KhovanovComplex};
use crate::spantree::TreeModel;

pub struct Filtration {
    pub khovanov: KhovanovComplex,
    /// Tree owning each generator.
    pub group: Vec<usize>,
    pub tree_level: Vec<usize>,
    /// Level of each generator.
    pub level: Vec<usize>,
}

impl Filtration {
    pub fn n_levels(&self) -> usize {
        self.tree_level.iter().copied().max().unwrap_or(0)
    }

    /// Trees at each level, lowest level first.
    pub fn trees_by_level(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (t, &p) in self.tree_level.iter().enumerate() {
            out.entry(p).or_default().push(t);
        }
        out
    }
}

pub fn build_filtration(d: &LinkDiagram, model: &TreeModel) -> Result<Filtration> {
    let khovanov = KhovanovComplex::build(d, true)?;
    let tree_of = tree_of_masks(model, d.n_crossings())?;
    let group: Vec<usize> = khovanov.states.iter().map(|s| tree_of[s.mask as usize]).collect();
    let tree_level: Vec<usize> = (0..model.len()).map(|t| 1 + model.poset.depth_from_max(t)).collect();
    let level: Vec<usize> = group.iter().map(|&t| tree_level[t]).collect();
    for (g, col) in khovanov.complex.boundary.iter().enumerate() {
        for &(h, _) in col {
            if level[h] < level[g] {
                return Err(Error::Filtration(format!(
                    "d({}) reaches level {} from level {}",
                    khovanov.complex.labels[g], level[h], level[g]
                )));
            }
        }
    }
    for a in 0..model.len() {
        for b in 0..a {
            if tree_level[a] == tree_level[b] && model.poset.comparable(a, b) {
                return Err(Error::Filtration(format!("comparable trees T{} and T{} share a level", b + 1, a + 1)));
            }
        }
    }
    Ok(Filtration { khovanov, group, tree_level, level })
}

/// `E_r` as dimensions per `(p, q)` and per `(p, q, j)`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralPage {
    pub r: usize,
    #[serde(serialize_with = "serialize_pq")]
    pub dims: BTreeMap<(i64, i64), usize>,
    #[serde(skip)]
    pub dims_j: BTreeMap<(i64, i64, i64), usize>,
}

fn serialize_pq<S: serde::Serializer>(m: &BTreeMap<(i64, i64), usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|(&(p, q), &d)| [p, q, d as i64]))
}

impl SpectralPage {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Dimension table with rows `q` (descending) and columns `p`.
    pub fn table(&self) -> String {
        if self.dims.is_empty() {
            return "0\n".into();
        }
        let ps: Vec<i64> = {
            let lo = self.dims.keys().map(|k| k.0).min().unwrap();
            let hi = self.dims.keys().map(|k| k.0).max().unwrap();
            (lo..=hi).collect()
        };
        let qlo = self.dims.keys().map(|k| k.1).min().unwrap();
        let qhi = self.dims.keys().map(|k| k.1).max().unwrap();
        let mut out = format!("{:>5} |", "q\\p");
        for p in &ps {
            out += &format!("{p:>4}");
        }
        out.push('\n');
        for q in (qlo..=qhi).rev() {
            out += &format!("{q:>5} |");
            for &p in &ps {
                match self.dims.get(&(p, q)) {
                    Some(d) => out += &format!("{d:>4}"),
                    None => out += &format!("{:>4}", "."),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequence {
    pub coefficients: String,
    /// `E_0, E_1, …` up to and including the first stable page, and at least `E_1`.
    pub pages: Vec<SpectralPage>,
    /// First `r` with `E_r = E_∞`.
    pub collapse_page: usize,
}

impl SpectralSequence {
    pub fn e_infinity(&self) -> &SpectralPage {
        self.pages.last().expect("at least E_0")
    }
}

/// Persistence pairs `(x, y, gap)` with `d x = y + (higher levels)`, and the
/// unpaired generators, for generators ordered by level then degree descending.
fn pairing<F: Field + Sync>(field: &F, f: &Filtration, ids: &[usize]) -> (Vec<(usize, usize, usize)>, Vec<usize>)
where
    F::Elem: Send,
{
    let c = &f.khovanov.complex;
    let mut order: Vec<usize> = ids.to_vec();
    order.sort_by_key(|&g| (std::cmp::Reverse(f.level[g]), std::cmp::Reverse(c.grading[g].0), g));
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut columns: Vec<BTreeMap<usize, F::Elem>> = order
        .iter()
        .map(|&g| {
            let mut col = BTreeMap::new();
            for &(h, v) in &c.boundary[g] {
                let e = field.from_i64(v);
                if !field.is_zero(&e) {
                    col.insert(pos[&h], e);
                }
            }
            col
        })
        .collect();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for j in 0..columns.len() {
        while let Some((&low, lv)) = columns[j].iter().next_back() {
            let Some(&k) = owner.get(&low) else { break };
            let factor = field.mul(lv, &field.inv(&columns[k][&low]));
            let other = columns[k].clone();
            for (r, v) in other {
                let cur = columns[j].get(&r).cloned().unwrap_or_else(|| field.zero());
                let next = field.sub(&cur, &field.mul(&factor, &v));
                if field.is_zero(&next) {
                    columns[j].remove(&r);
                } else {
                    columns[j].insert(r, next);
                }
            }
        }
        if let Some((&low, _)) = columns[j].iter().next_back() {
            owner.insert(low, j);
            let (x, y) = (order[j], order[low]);
            pairs.push((x, y, f.level[y] - f.level[x]));
        }
    }
    let mut paired = vec![false; order.len()];
    for &(x, y, _) in &pairs {
        paired[pos[&x]] = true;
        paired[pos[&y]] = true;
    }
    let free = order.iter().enumerate().filter(|(i, _)| !paired[*i]).map(|(_, &g)| g).collect();
    (pairs, free)
}

fn pages_with<F: Field + Sync>(field: &F, f: &Filtration, name: String, r_max: Option<usize>) -> SpectralSequence
where
    F::Elem: Send,
{
    let c = &f.khovanov.complex;
    // the differential preserves j
    let mut slices: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (g, &(_, j)) in c.grading.iter().enumerate() {
        slices.entry(j).or_default().push(g);
    }
    let results: Vec<_> = slices.values().collect::<Vec<_>>().par_iter().map(|ids| pairing(field, f, ids)).collect();

    // generator -> page after which it disappears (None = survives)
    let mut death: Vec<Option<usize>> = vec![None; c.len()];
    let mut collapse_page = 0;
    for (pairs, _) in &results {
        for &(x, y, gap) in pairs {
            death[x] = Some(gap);
            death[y] = Some(gap);
            collapse_page = collapse_page.max(gap + 1);
        }
    }
    let last = r_max.map_or(collapse_page.max(1), |m| m.min(collapse_page.max(1)));
    let pages = (0..=last)
        .map(|r| {
            let mut dims = BTreeMap::new();
            let mut dims_j = BTreeMap::new();
            for g in 0..c.len() {
                if death[g].is_some_and(|gap| gap < r) {
                    continue;
                }
                let p = f.level[g] as i64;
                let (i, j) = c.grading[g];
                *dims.entry((p, i - p)).or_insert(0) += 1;
                *dims_j.entry((p, i - p, j)).or_insert(0) += 1;
            }
            SpectralPage { r, dims, dims_j }
        })
        .collect();
    SpectralSequence { coefficients: name, pages, collapse_page }
}

/// Pages `E_0 … E_c` where `c` is the collapse page (or `r_max` if smaller).
pub fn compute_pages(f: &Filtration, coeff: Coefficients, r_max: Option<usize>) -> Result<SpectralSequence> {
    match coeff {
        Coefficients::Rationals => Ok(pages_with(&Rationals, f, coeff.to_string(), r_max)),
        Coefficients::Prime(p) => Ok(pages_with(&PrimeField::new(p)?, f, coeff.to_string(), r_max)),
        Coefficients::Integers => Err(Error::Invariant("spectral sequences are computed over fields (use q or f2)".into())),
    }
}

/// `E_1` dimensions against the tree count at each `(p, q)`.
pub fn e1_matches_trees(f: &Filtration, model: &TreeModel, ss: &SpectralSequence, d: &LinkDiagram) -> Result<bool> {
    let Some(e1) = ss.pages.get(1) else { return Ok(false) };
    let (w, k) = (d.writhe(), model.k());
    let mut expected: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (t, tree) in model.trees.iter().enumerate() {
        let (i, _) = crate::collapse::grading_map(tree.u, tree.v, w, k)?;
        let p = f.tree_level[t] as i64;
        *expected.entry((p, i - p)).or_insert(0) += 1;
    }
    Ok(expected == e1.dims)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub grading: Bigrading,
    pub e_infinity: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub coefficients: String,
    pub rows: Vec<ConvergenceRow>,
    pub ok: bool,
}

/// Compare `Σ_p dim E_∞^{p, i-p}` in each `(i, j)` with the field homology
/// of the reduced complex.
pub fn check_convergence(f: &Filtration, ss: &SpectralSequence, coeff: Coefficients) -> Result<ConvergenceReport> {
    let h = f.khovanov.complex.homology_dims(coeff);
    let mut e: BTreeMap<Bigrading, usize> = BTreeMap::new();
    for (&(p, q, j), &dim) in &ss.e_infinity().dims_j {
        *e.entry((p + q, j)).or_insert(0) += dim;
    }
    let keys: std::collections::BTreeSet<Bigrading> = e.keys().chain(h.keys()).copied().collect();
    let rows: Vec<ConvergenceRow> = keys
        .into_iter()
        .map(|g| ConvergenceRow {
            grading: g,
            e_infinity: e.get(&g).copied().unwrap_or(0),
            homology: h.get(&g).copied().unwrap_or(0),
        })
        .collect();
    let ok = rows.iter().all(|r| r.e_infinity == r.homology);
    if !ok {
        return Err(Error::Invariant(format!("E_infinity does not match homology over {coeff}")));
    }
    Ok(ConvergenceReport { coefficients: coeff.to_string(), rows, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL4: &str = "PD[X(4,1,5,2), X(8,5,1,6), X(3,6,4,7), X(7,2,8,3)] base=1";

    #[test]
    fn trefoil4_levels_and_collapse() {
        let d = LinkDiagram::parse(TREFOIL4).unwrap();
        let m = TreeModel::new(&d).unwrap();
        let f = build_filtration(&d, &m).unwrap();
        let levels: Vec<(usize, Vec<String>)> = f
            .trees_by_level()
            .into_iter()
            .map(|(p, ts)| (p, ts.iter().map(|&t| m.trees[t].smoothing_string()).collect()))
            .collect();
        assert_eq!(
            levels,
            vec![
                (1, vec!["**AA".to_string()]),
                (2, vec!["*ABA".to_string()]),
                (3, vec!["*BBA".to_string(), "*A*B".to_string()]),
                (4, vec!["*B*B".to_string()]),
            ]
        );
        for coeff in [Coefficients::Prime(2), Coefficients::Rationals] {
            let ss = compute_pages(&f, coeff, None).unwrap();
            assert_eq!(ss.pages[1].total(), 5);
            assert_eq!(ss.collapse_page, 3);
            assert_eq!(ss.e_infinity().total(), 3);
            assert!(e1_matches_trees(&f, &m, &ss, &d).unwrap());
            check_convergence(&f, &ss, coeff).unwrap();
        }
    }

    #[test]
    fn integers_rejected() {
        let d = LinkDiagram::parse("PD[]").unwrap();
        let m = TreeModel::new(&d).unwrap();
        let f = build_filtration(&d, &m).unwrap();
        assert!(compute_pages(&f, Coefficients::Integers, None).is_err());
        let ss = compute_pages(&f, Coefficients::Prime(2), None).unwrap();
        assert_eq!(ss.pages[1].total(), 1);
    }
}
