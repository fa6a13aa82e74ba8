//! Checks for alternating diagrams: the Traczyk signature, the predicted
//! reduced homology read off the Jones polynomial, and diagonal thickness.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::collapse::{grading_map, grading_map_inverse};
use crate::diagram::{LinkDiagram, Marker};
use crate::error::{Error, Result};
use crate::jones::jones;
use crate::khovanov::{BigradedHomology, Bigrading};
use crate::spantree::TreeModel;

/// Every arc goes from an over-crossing to an under-crossing or back.
pub fn is_alternating(d: &LinkDiagram) -> bool {
    (0..d.n_arcs()).all(|a| {
        if d.n_crossings() == 0 {
            return true;
        }
        let (_, t) = d.arc_tail(a);
        let (_, h) = d.arc_head(a);
        t % 2 != h % 2
    })
}

fn require_reduced_alternating(d: &LinkDiagram) -> Result<()> {
    if !is_alternating(d) {
        return Err(Error::NonAlternating);
    }
    if let Some(c) = (0..d.n_crossings()).find(|&c| d.is_nugatory(c)) {
        return Err(Error::Invariant(format!("crossing {} is nugatory", c + 1)));
    }
    Ok(())
}

/// `σ = (c - w)/2 - |s_B| + 1` with `|s_B|` the number of circles of the all-B
/// smoothing. With this normalisation the left-handed trefoil has `σ = 2`.
pub fn signature_alternating(d: &LinkDiagram) -> Result<i64> {
    require_reduced_alternating(d)?;
    let c = d.n_crossings() as i64;
    let s_b = d.smooth(&vec![Marker::B; d.n_crossings()]).n_circles() as i64;
    Ok((c - d.writhe()) / 2 - s_b + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedHomology {
    pub signature: i64,
    /// The single `v` row.
    pub row: i64,
    /// Ranks by `(u, v)`.
    pub by_uv: BTreeMap<Bigrading, usize>,
    /// Ranks by `(i, j)`.
    pub by_ij: BTreeMap<Bigrading, usize>,
}

/// Reduced homology of an alternating knot: free, on the row
/// `v = (c - w)/2 - σ`, with rank `|a_n|` at `(u, v)` for
/// `n = u - v + (3w + c + 2v)/4`.
pub fn predicted_reduced_homology(d: &LinkDiagram) -> Result<PredictedHomology> {
    let signature = signature_alternating(d)?;
    if d.n_components() != 1 {
        return Err(Error::Invariant("prediction is for knots".into()));
    }
    let model = TreeModel::new(d)?;
    let (c, w, k) = (d.n_crossings() as i64, d.writhe(), model.k());
    let row = (c - w) / 2 - signature;
    let v = jones(d)?.integral().ok_or(Error::Invariant("knot with non-integral Jones exponents".into()))?;
    let offset = 3 * w + c + 2 * row;
    if offset.rem_euclid(4) != 0 {
        return Err(Error::Invariant(format!("3w + c + 2v = {offset} is not divisible by 4")));
    }
    let mut by_uv = BTreeMap::new();
    let mut by_ij = BTreeMap::new();
    for (n, a) in v.terms() {
        let u = n + row - offset / 4;
        by_uv.insert((u, row), a.unsigned_abs() as usize);
        by_ij.insert(grading_map(u, row, w, k)?, a.unsigned_abs() as usize);
    }
    Ok(PredictedHomology { signature, row, by_uv, by_ij })
}

/// Free ranks per bigrading of a homology table, failing on torsion.
pub fn free_ranks(h: &BigradedHomology) -> Option<BTreeMap<Bigrading, usize>> {
    h.groups
        .iter()
        .map(|(&g, grp)| grp.torsion.is_empty().then_some((g, grp.free)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ThicknessReport {
    pub signature: Option<i64>,
    /// Values of `j - 2i` carrying unreduced homology.
    pub unreduced_lines: BTreeSet<i64>,
    /// Values of `j - 2i` carrying torsion.
    pub torsion_lines: BTreeSet<i64>,
    pub reduced_lines: BTreeSet<i64>,
    /// `v` rows of reduced and unreduced homology.
    pub reduced_rows: BTreeSet<i64>,
    pub unreduced_rows: BTreeSet<i64>,
    /// For alternating diagrams: unreduced support is exactly `-σ ± 1` and
    /// torsion sits on `-σ - 1`.
    pub two_lines: Option<bool>,
    pub torsion_on_lower_line: Option<bool>,
}

pub fn thickness_report(
    d: &LinkDiagram,
    model: &TreeModel,
    reduced: &BigradedHomology,
    unreduced: &BigradedHomology,
) -> Result<ThicknessReport> {
    let (w, k) = (d.writhe(), model.k());
    let line = |(i, j): Bigrading| j - 2 * i;
    let rows = |h: &BigradedHomology| -> Result<BTreeSet<i64>> {
        h.groups.keys().map(|&(i, j)| grading_map_inverse(i, j, w, k).map(|(_, v)| v)).collect()
    };
    let signature = if is_alternating(d) && d.n_crossings() > 0 { signature_alternating(d).ok() } else { None };
    let unreduced_lines: BTreeSet<i64> = unreduced.groups.keys().map(|&g| line(g)).collect();
    let torsion_lines: BTreeSet<i64> =
        unreduced.groups.iter().filter(|(_, h)| !h.torsion.is_empty()).map(|(&g, _)| line(g)).collect();
    Ok(ThicknessReport {
        signature,
        two_lines: signature.map(|s| unreduced_lines == BTreeSet::from([-s - 1, -s + 1])),
        torsion_on_lower_line: signature.map(|s| torsion_lines.iter().all(|&l| l == -s - 1)),
        reduced_lines: reduced.groups.keys().map(|&g| line(g)).collect(),
        reduced_rows: rows(reduced)?,
        unreduced_rows: rows(unreduced)?,
        unreduced_lines,
        torsion_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::khovanov_homology;

    const LEFT_TREFOIL: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";

    #[test]
    fn left_trefoil() {
        let d = LinkDiagram::parse(LEFT_TREFOIL).unwrap();
        assert!(is_alternating(&d));
        assert_eq!(signature_alternating(&d).unwrap(), 2);
        assert_eq!(signature_alternating(&d.mirror()).unwrap(), -2);
        let p = predicted_reduced_homology(&d).unwrap();
        let h = khovanov_homology(&d, true).unwrap();
        assert_eq!(free_ranks(&h).unwrap(), p.by_ij);
        assert_eq!(p.by_uv.len(), 3);
        let m = TreeModel::new(&d).unwrap();
        let r = thickness_report(&d, &m, &h, &khovanov_homology(&d, false).unwrap()).unwrap();
        assert_eq!(r.two_lines, Some(true));
        assert_eq!(r.torsion_on_lower_line, Some(true));
        assert_eq!(r.torsion_lines, BTreeSet::from([-3]));
    }

    #[test]
    fn kink_is_rejected() {
        let d = LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap();
        assert!(signature_alternating(&d).is_err());
        let t4 = LinkDiagram::parse("PD[X(4,1,5,2), X(8,5,1,6), X(3,6,4,7), X(7,2,8,3)] base=1").unwrap();
        assert!(signature_alternating(&t4).is_err());
    }
}
