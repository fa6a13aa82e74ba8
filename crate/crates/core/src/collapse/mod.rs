//! Retraction of the Khovanov complex onto the spanning tree complex by
//! elementary collapses, one twisted unknot at a time.

mod grading;
mod jacobsson;
mod mutable;
mod pipeline;

pub use grading::{grading_map, grading_map_inverse};
pub use jacobsson::{jacobsson_cycle, keep_marker, FundamentalCycle};
pub use mutable::{apply_boundary, replay, Chain, CollapseStep, MutableComplex};
pub use pipeline::{
    order_violations, retract_to_tree_complex, tree_of_masks, CycleCheck, Retraction, RetractionStats, TreeComplex,
    TreeGenerator,
};

use serde::Serialize;

use crate::diagram::{LinkDiagram, Marker};
use crate::error::{Error, Result};
use crate::khovanov::{Bigrading, StateSpace};
use crate::spantree::TreeModel;

/// An enhanced state of `U(T)` placed inside the complex of the whole diagram.
#[derive(Clone, Debug, Serialize)]
pub struct IncludedState {
    pub state: String,
    /// Bigrading inside the complex of `U(T)`.
    pub in_unknot: Bigrading,
    /// Bigrading inside the complex of the diagram.
    pub in_diagram: Bigrading,
}

/// States of `D` extending the dead-edge smoothing of tree `t`, with the
/// shift `i' = i + (w(D) - w(U) - σ(U))/2`, `j' = j + (3(w(D) - w(U)) - σ(U))/2`
/// checked against the directly computed bigrading.
pub fn include_unknot_states(d: &LinkDiagram, model: &TreeModel, t: usize, reduced: bool) -> Result<Vec<IncludedState>> {
    let n = d.n_crossings();
    let space = StateSpace::new(d);
    let tree_of = tree_of_masks(model, n)?;
    let u = &model.unknots[t];
    let live: Vec<usize> = (0..n).filter(|&c| u.markers[c] == Marker::Live).collect();
    let (wd, wu, sigma_u) = (d.writhe(), u.writhe, u.sigma);
    let mut out = Vec::new();
    for s in space.states(reduced).into_iter().filter(|s| tree_of[s.mask as usize] == t) {
        let b = live.iter().filter(|&&c| s.mask >> c & 1 == 1).count() as i64;
        let sigma = live.len() as i64 - 2 * b;
        let circles = space.smoothing(s.mask).n_circles() as i64;
        let tau = 2 * s.plus.count_ones() as i64 - circles;
        let i = (wu - sigma) / 2;
        let in_unknot = (i, i + wu - tau);
        let shifted = (
            in_unknot.0 + (wd - wu - sigma_u) / 2,
            in_unknot.1 + (3 * (wd - wu) - sigma_u) / 2,
        );
        let direct = space.bigrading(s);
        if shifted != direct {
            return Err(Error::Invariant(format!(
                "state {} shifts to {:?} but sits at {:?}",
                space.label(s),
                shifted,
                direct
            )));
        }
        out.push(IncludedState { state: space.label(s), in_unknot, in_diagram: direct });
    }
    Ok(out)
}

/// Enhanced states of the full smoothing reached by every tree.
pub fn partition_sizes(d: &LinkDiagram, model: &TreeModel, reduced: bool) -> Result<Vec<usize>> {
    let space = StateSpace::new(d);
    let tree_of = tree_of_masks(model, d.n_crossings())?;
    let mut sizes = vec![0; model.len()];
    for s in space.states(reduced) {
        sizes[tree_of[s.mask as usize]] += 1;
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::khovanov_homology;

    const TREFOIL4: &str = "PD[X(4,1,5,2), X(8,5,1,6), X(3,6,4,7), X(7,2,8,3)] base=1";
    const LEFT_TREFOIL: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";

    fn run(pd: &str, reduced: bool) -> Retraction {
        let d = LinkDiagram::parse(pd).unwrap();
        let m = TreeModel::new(&d).unwrap();
        retract_to_tree_complex(&d, &m, reduced).unwrap()
    }

    #[test]
    fn round_unknot() {
        let r = run("PD[]", true);
        assert_eq!(r.tree_complex.complex.len(), 1);
        assert!(r.tree_complex.differential_is_zero());
        assert_eq!(run("PD[]", false).tree_complex.complex.len(), 2);
    }

    #[test]
    fn trefoil4_matches_brute_force() {
        let d = LinkDiagram::parse(TREFOIL4).unwrap();
        for reduced in [true, false] {
            let r = run(TREFOIL4, reduced);
            assert_eq!(r.stats.order_violations, 0);
            assert_eq!(r.stats.insulation_violations, 0);
            assert_eq!(r.tree_complex.homology_ij().unwrap(), khovanov_homology(&d, reduced).unwrap());
        }
        let r = run(TREFOIL4, true);
        let h = r.tree_complex.homology().unwrap();
        let support: Vec<(i64, i64)> = h.groups.keys().copied().collect();
        assert_eq!(support, vec![(-1, 1), (0, 1), (2, 1)]);
    }

    #[test]
    fn cycles_check_out() {
        for pd in [TREFOIL4, LEFT_TREFOIL, "PD[X(1,1,2,2)]"] {
            for reduced in [true, false] {
                let r = run(pd, reduced);
                for c in r.check_cycles().unwrap() {
                    assert!(c.is_cycle && c.grading_ok, "{pd} {c:?}");
                    assert!(c.retracts_to_generator && c.matches_inclusion, "{pd} {c:?}");
                }
            }
        }
    }

    #[test]
    fn inclusion_shift() {
        let d = LinkDiagram::parse(TREFOIL4).unwrap();
        let m = TreeModel::new(&d).unwrap();
        let sizes = partition_sizes(&d, &m, true).unwrap();
        assert_eq!(sizes.iter().sum::<usize>(), 33);
        for t in 0..m.len() {
            assert_eq!(include_unknot_states(&d, &m, t, false).unwrap().len(), partition_sizes(&d, &m, false).unwrap()[t]);
        }
    }
}
