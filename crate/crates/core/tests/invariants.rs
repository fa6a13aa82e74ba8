use proptest::prelude::*;

use spantree_kh::cli::builtin;
use spantree_kh::collapse::retract_to_tree_complex;
use spantree_kh::diagram::LinkDiagram;
use spantree_kh::jones::{bracket_spantree, bracket_statesum, jones};
use spantree_kh::khovanov::khovanov_homology;
use spantree_kh::spantree::TreeModel;

fn small_corpus() -> Vec<LinkDiagram> {
    builtin().iter().map(|e| e.diagram().unwrap()).filter(|d| d.n_crossings() <= 5).collect()
}

fn kinked(d: &LinkDiagram, kinks: &[(u32, bool, bool)]) -> LinkDiagram {
    let mut d = d.clone();
    for &(arc, positive, flip) in kinks {
        let label = 1 + arc % d.n_arcs().max(1) as u32;
        d = d.add_kink(label, if positive { 1 } else { -1 }, flip).unwrap();
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kinks_preserve_invariants(pick in 0usize..64, kinks in proptest::collection::vec((0u32..32, any::<bool>(), any::<bool>()), 1..3)) {
        let corpus = small_corpus();
        let d = &corpus[pick % corpus.len()];
        let k = kinked(d, &kinks);
        prop_assert_eq!(k.n_crossings(), d.n_crossings() + kinks.len());
        prop_assert_eq!(jones(&k).unwrap(), jones(d).unwrap());

        let model = TreeModel::new(&k).unwrap();
        prop_assert_eq!(bracket_spantree(&model), bracket_statesum(&k));
        prop_assert_eq!(model.len(), TreeModel::new(d).unwrap().len());

        for reduced in [true, false] {
            let h = khovanov_homology(d, reduced).unwrap();
            prop_assert_eq!(&khovanov_homology(&k, reduced).unwrap(), &h);
            let r = retract_to_tree_complex(&k, &model, reduced).unwrap();
            prop_assert_eq!(&r.tree_complex.homology_ij().unwrap(), &h);
            prop_assert_eq!(r.stats.order_violations, 0);
        }
    }
}

#[test]
fn mirror_inverts_jones() {
    for d in small_corpus() {
        let v = jones(&d).unwrap();
        assert_eq!(jones(&d.mirror()).unwrap(), v.mirror(), "{}", d.label());
    }
}
