use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{LinkDiagram, Marker, Smoothing};
use crate::error::{Error, Result};
use crate::khovanov::{Bigrading, EnhancedState};
use crate::spantree::{Kink, TwistedUnknot};

/// Marker that keeps the twisted circle connected at a kink.
pub fn keep_marker(k: &Kink) -> Marker {
    match k.splitting {
        Marker::A => Marker::B,
        _ => Marker::A,
    }
}

fn set_marker(mask: u64, c: usize, m: Marker) -> u64 {
    match m {
        Marker::B => mask | 1 << c,
        _ => mask & !(1 << c),
    }
}

fn is_plus(s: EnhancedState, circle: usize) -> bool {
    s.plus >> circle & 1 == 1
}

/// State after changing the marker at `c`: circles away from `c` keep their
/// signs, the circles through `c` are left "−".
pub(crate) fn resmooth(d: &LinkDiagram, s: EnhancedState, src: &Smoothing, c: usize, to: Marker) -> (EnhancedState, Smoothing) {
    let mask = set_marker(s.mask, c, to);
    let n = d.n_crossings();
    let dst = d.smooth(&(0..n).map(|b| if mask >> b & 1 == 1 { Marker::B } else { Marker::A }).collect::<Vec<_>>());
    let at_c: Vec<usize> = d.crossing(c).iter().map(|&a| src.circle_of_arc(a)).collect();
    let mut plus = 0u64;
    for (k, arcs) in src.circles().iter().enumerate() {
        if !at_c.contains(&k) && is_plus(s, k) {
            plus |= 1 << dst.circle_of_arc(arcs[0]);
        }
    }
    (EnhancedState { mask, plus }, dst)
}

/// The lobe circle and the circle it is attached to, in a smoothing where
/// the kink crossing carries its splitting marker.
pub(crate) fn kink_circles(d: &LinkDiagram, s: &Smoothing, k: &Kink) -> (usize, usize) {
    let x = d.crossing(k.crossing);
    let lobe = s.circle_of_arc(k.lobe_arc);
    let (a, b) = match k.splitting {
        Marker::A => (s.circle_of_arc(x[0]), s.circle_of_arc(x[3])),
        _ => (s.circle_of_arc(x[0]), s.circle_of_arc(x[1])),
    };
    (lobe, if a == lobe { b } else { a })
}

/// Image of `○^±` in the complex of a twisted unknot, written in enhanced
/// states of the whole diagram (dead crossings keep their markers).
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalCycle {
    pub tree: usize,
    /// `true` for the image of `○⁺`.
    pub plus: bool,
    #[serde(skip)]
    pub terms: BTreeMap<EnhancedState, i64>,
    pub grading: Bigrading,
}

impl FundamentalCycle {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Add the kinks back in reverse removal order, rewriting each enhancement of
/// the twisted circle:
///
/// positive kink: `+ ↦ (+,+)`, `− ↦ (−,+) − (+,−)`;
/// negative kink: `+ ↦ (+,−)`, `− ↦ (−,−)` (old circle first, new loop second).
pub fn jacobsson_cycle(d: &LinkDiagram, tree: usize, u: &TwistedUnknot, plus: bool) -> Result<FundamentalCycle> {
    let n = d.n_crossings();
    let mut markers = u.markers.clone();
    for k in &u.kinks {
        markers[k.crossing] = keep_marker(k);
    }
    if markers.contains(&Marker::Live) {
        return Err(Error::NotTwistedUnknot("live crossing left after unrolling".into()));
    }
    let mask = crate::khovanov::mask_of(&markers);
    let round = d.smooth(&markers);
    if round.n_circles() != 1 {
        return Err(Error::NotTwistedUnknot("unrolled diagram is not a single circle".into()));
    }
    let mut terms: BTreeMap<EnhancedState, i64> = BTreeMap::from([(EnhancedState { mask, plus: plus as u64 }, 1)]);
    let mut smoothing = round;
    for k in u.kinks.iter().rev() {
        let x = d.crossing(k.crossing);
        let mut next: BTreeMap<EnhancedState, i64> = BTreeMap::new();
        let mut next_smoothing = None;
        for (&s, &coef) in &terms {
            let merged = smoothing.circle_of_arc(x[0]);
            let (base, dst) = resmooth(d, s, &smoothing, k.crossing, k.splitting);
            let (lobe, old_circle) = kink_circles(d, &dst, k);
            let images: Vec<((bool, bool), i64)> = match (k.sign > 0, is_plus(s, merged)) {
                (true, true) => vec![((true, true), 1)],
                (true, false) => vec![((false, true), 1), ((true, false), -1)],
                (false, true) => vec![((true, false), 1)],
                (false, false) => vec![((false, false), 1)],
            };
            for ((old, new), sign) in images {
                let t = EnhancedState {
                    mask: base.mask,
                    plus: base.plus | (old as u64) << old_circle | (new as u64) << lobe,
                };
                *next.entry(t).or_insert(0) += sign * coef;
            }
            next_smoothing.get_or_insert(dst);
        }
        next.retain(|_, v| *v != 0);
        terms = next;
        smoothing = next_smoothing.expect("nonempty cycle");
    }
    let w = d.writhe();
    let &first = terms.keys().next().expect("nonempty cycle");
    let sigma = n as i64 - 2 * first.mask.count_ones() as i64;
    let tau = 2 * first.plus.count_ones() as i64 - smoothing.n_circles() as i64;
    let i = (w - sigma) / 2;
    Ok(FundamentalCycle { tree, plus, terms, grading: (i, i + w - tau) })
}
