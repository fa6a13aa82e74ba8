//! Khovanov chain complexes from enhanced Kauffman states.
//!
//! Gradings: `sigma = #A - #B`, `tau = #plus - #minus`, `i = (w - sigma)/2`,
//! `j = i + w - tau`. The differential changes one A marker to B and raises
//! `tau` by one, so here "−" plays the role of the unit:
//!
//! | merge      | result | split | result            |
//! |------------|--------|-------|-------------------|
//! | (−, −)     | −      | −     | (+, −) + (−, +)   |
//! | (+, −)     | +      | +     | (+, +)            |
//! | (+, +)     | 0      |       |                   |
//!
//! with sign `(-1)^(number of B markers at lower-index crossings)`.
//! The reduced complex is the subcomplex where the circle through the
//! basepoint is "+".

mod complex;

use std::collections::HashMap;

use crate::algebra::Coefficients;
use crate::diagram::{markers_to_string, LinkDiagram, Marker, Smoothing};
use crate::error::{Error, Result};

pub use complex::{BigradedHomology, Bigrading, Complex};

/// Smoothing bitmask (bit `c` set means B at crossing `c`) plus one sign per
/// circle (bit `k` set means circle `k` is "+"). Circles are numbered by
/// smallest arc index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub mask: u64,
    pub plus: u64,
}

impl EnhancedState {
    pub fn markers(&self, n: usize) -> Vec<Marker> {
        (0..n).map(|c| if self.mask >> c & 1 == 1 { Marker::B } else { Marker::A }).collect()
    }
}

pub fn mask_of(markers: &[Marker]) -> u64 {
    markers
        .iter()
        .enumerate()
        .filter(|(_, m)| **m == Marker::B)
        .fold(0, |acc, (c, _)| acc | 1 << c)
}

/// All Kauffman states of a diagram, indexed by bitmask.
pub struct StateSpace<'a> {
    pub diagram: &'a LinkDiagram,
    smoothings: Vec<Smoothing>,
}

impl<'a> StateSpace<'a> {
    pub fn new(d: &'a LinkDiagram) -> StateSpace<'a> {
        let n = d.n_crossings();
        assert!(n <= 20, "too many crossings for a full state space");
        let smoothings = (0u64..1 << n)
            .map(|mask| {
                let markers: Vec<Marker> =
                    (0..n).map(|c| if mask >> c & 1 == 1 { Marker::B } else { Marker::A }).collect();
                d.smooth(&markers)
            })
            .collect();
        StateSpace { diagram: d, smoothings }
    }

    pub fn smoothing(&self, mask: u64) -> &Smoothing {
        &self.smoothings[mask as usize]
    }

    pub fn based_circle(&self, mask: u64) -> usize {
        self.smoothing(mask).circle_of_arc(self.diagram.basepoint())
    }

    pub fn bigrading(&self, s: EnhancedState) -> Bigrading {
        let n = self.diagram.n_crossings() as i64;
        let w = self.diagram.writhe();
        let sigma = n - 2 * s.mask.count_ones() as i64;
        let circles = self.smoothing(s.mask).n_circles() as i64;
        let tau = 2 * s.plus.count_ones() as i64 - circles;
        let i = (w - sigma) / 2;
        (i, i + w - tau)
    }

    pub fn label(&self, s: EnhancedState) -> String {
        let n = self.diagram.n_crossings();
        let circles = self.smoothing(s.mask).n_circles();
        let signs: String = (0..circles).map(|k| if s.plus >> k & 1 == 1 { '+' } else { '-' }).collect();
        format!("{}|{}", markers_to_string(&s.markers(n)), signs)
    }

    /// `d s` as a list of `(state, coefficient)`.
    pub fn differential(&self, s: EnhancedState) -> Vec<(EnhancedState, i64)> {
        let d = self.diagram;
        let n = d.n_crossings();
        let src = self.smoothing(s.mask);
        let mut out = Vec::new();
        for c in (0..n).filter(|&c| s.mask >> c & 1 == 0) {
            let tmask = s.mask | 1 << c;
            let dst = self.smoothing(tmask);
            let sign = if (s.mask & ((1 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let x = d.crossing(c);
            // carry the signs of the untouched circles
            let mut base = 0u64;
            let mut touched_src = [src.circle_of_arc(x[0]), src.circle_of_arc(x[3])];
            for (k, arcs) in src.circles().iter().enumerate() {
                if touched_src.contains(&k) {
                    continue;
                }
                if s.plus >> k & 1 == 1 {
                    base |= 1 << dst.circle_of_arc(arcs[0]);
                }
            }
            let is_plus = |k: usize| s.plus >> k & 1 == 1;
            if touched_src[0] != touched_src[1] {
                let merged = dst.circle_of_arc(x[0]);
                match (is_plus(touched_src[0]), is_plus(touched_src[1])) {
                    (false, false) => out.push((EnhancedState { mask: tmask, plus: base }, sign)),
                    (true, true) => {}
                    _ => out.push((EnhancedState { mask: tmask, plus: base | 1 << merged }, sign)),
                }
            } else {
                touched_src[1] = touched_src[0];
                let (t1, t2) = (dst.circle_of_arc(x[0]), dst.circle_of_arc(x[1]));
                if is_plus(touched_src[0]) {
                    out.push((EnhancedState { mask: tmask, plus: base | 1 << t1 | 1 << t2 }, sign));
                } else {
                    out.push((EnhancedState { mask: tmask, plus: base | 1 << t1 }, sign));
                    out.push((EnhancedState { mask: tmask, plus: base | 1 << t2 }, sign));
                }
            }
        }
        out
    }

    /// Enhanced states; in reduced mode only those with the based circle "+".
    pub fn states(&self, reduced: bool) -> Vec<EnhancedState> {
        let n = self.diagram.n_crossings();
        let mut out = Vec::new();
        for mask in 0u64..1 << n {
            let circles = self.smoothing(mask).n_circles();
            let based = self.based_circle(mask);
            for plus in 0u64..1 << circles {
                if reduced && plus >> based & 1 == 0 {
                    continue;
                }
                out.push(EnhancedState { mask, plus });
            }
        }
        out
    }
}

/// Khovanov complex together with the enhanced state behind each generator.
pub struct KhovanovComplex {
    pub complex: Complex,
    pub states: Vec<EnhancedState>,
    pub index: HashMap<EnhancedState, usize>,
    pub reduced: bool,
}

impl KhovanovComplex {
    pub fn build(d: &LinkDiagram, reduced: bool) -> Result<KhovanovComplex> {
        let space = StateSpace::new(d);
        Self::from_space(&space, reduced)
    }

    pub fn from_space(space: &StateSpace, reduced: bool) -> Result<KhovanovComplex> {
        let states = space.states(reduced);
        let index: HashMap<EnhancedState, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut complex = Complex::new((1, 0));
        for &s in &states {
            complex.push(space.label(s), space.bigrading(s));
        }
        for (g, &s) in states.iter().enumerate() {
            for (t, coeff) in space.differential(s) {
                let Some(&h) = index.get(&t) else {
                    return Err(Error::Invariant(format!(
                        "d({}) leaves the reduced subcomplex",
                        space.label(s)
                    )));
                };
                complex.boundary[g].push((h, coeff));
            }
        }
        complex.check_degree()?;
        Ok(KhovanovComplex { complex, states, index, reduced })
    }

    pub fn homology(&self) -> Result<BigradedHomology> {
        self.complex.homology()
    }

    /// `sum (-1)^i q^j` over generators, as `(q-exponent, coefficient)` pairs.
    pub fn euler_characteristic(&self) -> crate::algebra::LaurentPoly {
        crate::algebra::LaurentPoly::from_terms(
            self.complex
                .grading
                .iter()
                .map(|&(i, j)| (j, if i.rem_euclid(2) == 0 { 1 } else { -1 })),
        )
    }
}

/// Brute-force Khovanov homology over Z.
pub fn khovanov_homology(d: &LinkDiagram, reduced: bool) -> Result<BigradedHomology> {
    let kc = KhovanovComplex::build(d, reduced)?;
    kc.complex.check_d_squared()?;
    kc.homology()
}

/// Homology dimensions over a field (over Z: free ranks).
pub fn khovanov_dims(d: &LinkDiagram, reduced: bool, coeff: Coefficients) -> Result<std::collections::BTreeMap<Bigrading, usize>> {
    let kc = KhovanovComplex::build(d, reduced)?;
    Ok(kc.complex.homology_dims(coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HomologyGroup;

    fn z() -> HomologyGroup {
        HomologyGroup { free: 1, torsion: vec![] }
    }

    #[test]
    fn round_unknot() {
        let d = LinkDiagram::parse("PD[]").unwrap();
        let red = khovanov_homology(&d, true).unwrap();
        assert_eq!(red.groups.into_iter().collect::<Vec<_>>(), vec![((0, -1), z())]);
        let unred = khovanov_homology(&d, false).unwrap();
        assert_eq!(unred.groups.keys().copied().collect::<Vec<_>>(), vec![(0, -1), (0, 1)]);
    }

    #[test]
    fn positive_kink_reduced() {
        let d = LinkDiagram::parse("PD[X(1,1,2,2)]").unwrap();
        let kc = KhovanovComplex::build(&d, true).unwrap();
        assert_eq!(kc.complex.len(), 3);
        let h = kc.homology().unwrap();
        assert_eq!(h.groups.into_iter().collect::<Vec<_>>(), vec![((0, -1), z())]);
    }

    #[test]
    fn unreduced_state_count() {
        let d = LinkDiagram::parse("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap();
        let space = StateSpace::new(&d);
        let expected: usize = (0u64..8).map(|m| 1usize << space.smoothing(m).n_circles()).sum();
        assert_eq!(space.states(false).len(), expected);
    }

    #[test]
    fn left_trefoil_unreduced_has_two_torsion() {
        let d = LinkDiagram::parse("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap();
        let h = khovanov_homology(&d, false).unwrap();
        assert!(h.has_torsion());
        assert_eq!(h.total_rank(), 4);
    }
}
