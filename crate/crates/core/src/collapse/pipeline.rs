use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::grading::{grading_map, grading_map_inverse};
use super::jacobsson::{jacobsson_cycle, keep_marker, kink_circles, resmooth, FundamentalCycle};
use super::mutable::{apply_boundary, replay, Chain, MutableComplex};
use crate::diagram::{LinkDiagram, Marker};
use crate::error::{Error, Result};
use crate::khovanov::{BigradedHomology, Bigrading, Complex, EnhancedState, KhovanovComplex, StateSpace};
use crate::spantree::{Kink, TreeModel};

/// A generator of the spanning tree complex.
#[derive(Clone, Debug, Serialize)]
pub struct TreeGenerator {
    pub tree: usize,
    /// `None` in the reduced complex; `Some(true)` for `T₊`.
    pub plus: Option<bool>,
    pub label: String,
    pub u: i64,
    pub v: i64,
    /// Bigrading of the surviving enhanced state.
    pub ij: Bigrading,
}

/// Spanning tree complex: generators graded by `(u, v)`, differential of
/// bidegree `(-1, -1)`.
#[derive(Clone, Debug)]
pub struct TreeComplex {
    pub complex: Complex,
    pub generators: Vec<TreeGenerator>,
    pub reduced: bool,
    pub writhe: i64,
    pub k: i64,
}

impl TreeComplex {
    /// Homology graded by `(u, v)`.
    pub fn homology(&self) -> Result<BigradedHomology> {
        self.complex.homology()
    }

    /// Homology regraded to `(i, j)`.
    pub fn homology_ij(&self) -> Result<BigradedHomology> {
        let h = self.homology()?;
        let (w, k) = (self.writhe, self.k);
        Ok(h.regrade(|(u, v)| grading_map(u, v, w, k).expect("admissible parity")))
    }

    pub fn differential_is_zero(&self) -> bool {
        self.complex.boundary.iter().all(|col| col.is_empty())
    }

    /// Nonzero entries `(source, target, coefficient)`.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (g, col) in self.complex.boundary.iter().enumerate() {
            for &(h, v) in col {
                out.push((g, h, v));
            }
        }
        out
    }
}

/// Bookkeeping of a retraction run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RetractionStats {
    pub generators: usize,
    pub collapses: usize,
    /// Nonzero incidences from `Ũ_a` to `Ũ_b` with `a ≠ b` and not `T_a > T_b`.
    pub order_violations: usize,
    pub insulation_violations: usize,
}

/// Result of retracting a Khovanov complex onto its spanning tree complex.
pub struct Retraction {
    pub tree_complex: TreeComplex,
    pub khovanov: KhovanovComplex,
    pub mutable: MutableComplex,
    /// Tree owning each generator of the Khovanov complex.
    pub group: Vec<usize>,
    /// Order in which trees were processed.
    pub order: Vec<usize>,
    /// Generator id of the Khovanov complex behind each tree generator.
    pub survivors: Vec<usize>,
    pub cycles: Vec<FundamentalCycle>,
    pub stats: RetractionStats,
}

/// Index of the tree whose partial smoothing each full smoothing extends.
pub fn tree_of_masks(model: &TreeModel, n: usize) -> Result<Vec<usize>> {
    let patterns: Vec<(u64, u64)> = model
        .trees
        .iter()
        .map(|t| {
            let mut care = 0u64;
            let mut value = 0u64;
            for (c, m) in t.smoothing.iter().enumerate() {
                match m {
                    Marker::A => care |= 1 << c,
                    Marker::B => {
                        care |= 1 << c;
                        value |= 1 << c;
                    }
                    Marker::Live => {}
                }
            }
            (care, value)
        })
        .collect();
    (0u64..1 << n)
        .map(|mask| {
            let mut hits = patterns.iter().enumerate().filter(|(_, &(care, value))| mask & care == value);
            match (hits.next(), hits.next()) {
                (Some((t, _)), None) => Ok(t),
                _ => Err(Error::Invariant(format!("smoothing {mask:b} does not extend exactly one tree"))),
            }
        })
        .collect()
}

/// Count nonzero incidences that go between trees against the partial order.
pub fn order_violations(kc: &KhovanovComplex, group: &[usize], model: &TreeModel) -> usize {
    let mut bad = 0;
    for (g, col) in kc.complex.boundary.iter().enumerate() {
        for &(h, v) in col {
            let (a, b) = (group[g], group[h]);
            if v != 0 && a != b && !model.poset.greater(a, b) {
                bad += 1;
            }
        }
    }
    bad
}

/// Pairs `(x, y)` of one kink step, in virtual-state order, and the relabelled
/// survivors. Virtual states are states of the diagram with already removed
/// kinks carrying their keep marker.
type KinkStep = (Vec<(usize, usize)>, BTreeMap<EnhancedState, usize>);

fn kink_step(d: &LinkDiagram, space: &StateSpace, virt: &BTreeMap<EnhancedState, usize>, k: &Kink) -> Result<KinkStep> {
    let c = k.crossing;
    let split_bit = matches!(k.splitting, Marker::B) as u64;
    let keep = keep_marker(k);
    let mut pairs = Vec::new();
    let mut next = BTreeMap::new();
    for (&vs, &id) in virt.iter().filter(|(vs, _)| vs.mask >> c & 1 == split_bit) {
        let src = space.smoothing(vs.mask);
        let (lobe, old) = kink_circles(d, src, k);
        let old_plus = vs.plus >> old & 1 == 1;
        let lobe_plus = vs.plus >> lobe & 1 == 1;
        let (base, dst) = resmooth(d, vs, src, c, keep);
        let merged = EnhancedState { mask: base.mask, plus: base.plus | (old_plus as u64) << dst.circle_of_arc(d.crossing(c)[0]) };
        // positive kinks pair A(s, −) with B(s); negative kinks pair A(s) with B(s, +)
        let paired = if k.sign > 0 { !lobe_plus } else { lobe_plus };
        if paired {
            let partner = *virt
                .get(&merged)
                .ok_or_else(|| Error::Invariant(format!("no partner for {} at kink {}", space.label(vs), c + 1)))?;
            pairs.push(if k.sign > 0 { (id, partner) } else { (partner, id) });
        } else {
            next.insert(merged, id);
        }
    }
    let consumed = virt.len() - next.len();
    if consumed != 2 * pairs.len() {
        return Err(Error::Invariant(format!("kink {} leaves unpaired generators", c + 1)));
    }
    Ok((pairs, next))
}

pub fn retract_to_tree_complex(d: &LinkDiagram, model: &TreeModel, reduced: bool) -> Result<Retraction> {
    let n = d.n_crossings();
    let space = StateSpace::new(d);
    let kc = KhovanovComplex::from_space(&space, reduced)?;
    let tree_of = tree_of_masks(model, n)?;
    let group: Vec<usize> = kc.states.iter().map(|s| tree_of[s.mask as usize]).collect();
    let (w, k) = (d.writhe(), model.k());

    let mut stats = RetractionStats {
        generators: kc.complex.len(),
        order_violations: order_violations(&kc, &group, model),
        ..Default::default()
    };

    let mut mc = MutableComplex::from_complex(&kc.complex, true);
    mc.group = group.iter().map(|&g| Some(g)).collect();

    let order = model.poset.linear_extension();
    let mut members: Vec<BTreeMap<EnhancedState, usize>> = vec![BTreeMap::new(); model.len()];
    for (id, &s) in kc.states.iter().enumerate() {
        members[group[id]].insert(s, id);
    }

    // survivors[t] = [(plus, id)]
    let mut found: Vec<Vec<(bool, usize)>> = vec![Vec::new(); model.len()];
    for &t in &order {
        let unknot = &model.unknots[t];
        let mut virt = std::mem::take(&mut members[t]);
        for kink in &unknot.kinks {
            let (pairs, next) = kink_step(d, &space, &virt, kink)?;
            for (x, y) in pairs {
                mc.collapse_in(x, y, Some(t))?;
            }
            virt = next;
        }
        for (vs, id) in virt {
            let circles = space.smoothing(vs.mask).n_circles();
            if circles != 1 {
                return Err(Error::Invariant(format!("tree T{} ends on {circles} circles", t + 1)));
            }
            found[t].push((vs.plus & 1 == 1, id));
        }
    }
    stats.collapses = mc.log.len();
    stats.insulation_violations = mc.insulation_violations;

    let leftover: Vec<usize> = mc.live().filter(|g| !found.iter().flatten().any(|(_, id)| id == g)).collect();
    if let Some(&g) = leftover.first() {
        return Err(Error::Invariant(format!("non-tree generator {} survives", kc.complex.labels[g])));
    }

    let mut survivors = Vec::new();
    let mut generators = Vec::new();
    for (t, list) in found.iter().enumerate() {
        let tree = &model.trees[t];
        let mut list = list.clone();
        list.sort_by_key(|&(plus, _)| !plus);
        for (plus, id) in list {
            let (u, v) = if plus { (tree.u, tree.v) } else { (tree.u + 2, tree.v + 1) };
            let ij = kc.complex.grading[id];
            if grading_map(u, v, w, k)? != ij || grading_map_inverse(ij.0, ij.1, w, k)? != (u, v) {
                return Err(Error::Invariant(format!(
                    "{} survives at {:?}, expected (u, v) = ({u}, {v})",
                    kc.complex.labels[id], ij
                )));
            }
            let label = match (reduced, plus) {
                (true, _) => tree.name(),
                (false, true) => format!("{}+", tree.name()),
                (false, false) => format!("{}-", tree.name()),
            };
            generators.push(TreeGenerator { tree: t, plus: (!reduced).then_some(plus), label, u, v, ij });
            survivors.push(id);
        }
    }

    let pos: HashMap<usize, usize> = survivors.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut complex = Complex::new((-1, -1));
    for g in &generators {
        complex.push(g.label.clone(), (g.u, g.v));
    }
    for (i, &id) in survivors.iter().enumerate() {
        complex.boundary[i] = mc.boundary(id).iter().map(|(h, &c)| (pos[h], c)).collect();
    }
    complex.check_degree()?;
    complex.check_d_squared()?;

    let mut cycles = Vec::new();
    for g in &generators {
        cycles.push(jacobsson_cycle(d, g.tree, &model.unknots[g.tree], g.plus.unwrap_or(true))?);
    }

    Ok(Retraction {
        tree_complex: TreeComplex { complex, generators, reduced, writhe: w, k },
        khovanov: kc,
        mutable: mc,
        group,
        order,
        survivors,
        cycles,
        stats,
    })
}

/// Checks on one fundamental cycle against the retraction.
#[derive(Clone, Debug, Serialize)]
pub struct CycleCheck {
    pub generator: String,
    pub terms: usize,
    /// `d Z = 0` inside the states of its own tree.
    pub is_cycle: bool,
    /// All terms sit at the bigrading of the tree generator.
    pub grading_ok: bool,
    /// `r(Z)` is exactly the tree generator.
    pub retracts_to_generator: bool,
    /// `Z` is the part of the included generator inside its own tree.
    pub matches_inclusion: bool,
}

impl Retraction {
    fn chain_of(&self, z: &FundamentalCycle) -> Result<Chain> {
        z.terms
            .iter()
            .map(|(s, &c)| {
                self.khovanov
                    .index
                    .get(s)
                    .map(|&id| (id, c))
                    .ok_or_else(|| Error::Invariant("cycle term outside the complex".into()))
            })
            .collect()
    }

    pub fn check_cycles(&self) -> Result<Vec<CycleCheck>> {
        let mut out = Vec::new();
        for (i, z) in self.cycles.iter().enumerate() {
            let gen = &self.tree_complex.generators[i];
            let chain = self.chain_of(z)?;
            let dz = apply_boundary(&self.khovanov.complex, &chain);
            let is_cycle = dz.keys().all(|&h| self.group[h] != gen.tree);
            let grading_ok = chain.keys().all(|&id| self.khovanov.complex.grading[id] == gen.ij) && z.grading == gen.ij;
            let r = replay(&self.mutable.log, &chain);
            let retracts_to_generator = r == Chain::from([(self.survivors[i], 1)]);
            let matches_inclusion = self.mutable.expansion(self.survivors[i]).is_some_and(|e| {
                e.iter().filter(|(&id, _)| self.group[id] == gen.tree).map(|(&a, &b)| (a, b)).collect::<Chain>() == chain
            });
            out.push(CycleCheck {
                generator: gen.label.clone(),
                terms: chain.len(),
                is_cycle,
                grading_ok,
                retracts_to_generator,
                matches_inclusion,
            });
        }
        Ok(out)
    }
}
