use std::cmp::Ordering;

use crate::diagram::Marker;
use crate::error::{Error, Result};

/// Generating relation on partial smoothings: `x > y` iff every `A` of `y`
/// is `A` or `*` in `x`, and some crossing is `A` in `x` but `B` in `y`.
pub fn generator_greater(x: &[Marker], y: &[Marker]) -> bool {
    let dominated = x
        .iter()
        .zip(y)
        .all(|(&a, &b)| b != Marker::A || matches!(a, Marker::A | Marker::Live));
    dominated && x.iter().zip(y).any(|(&a, &b)| a == Marker::A && b == Marker::B)
}

/// Outcome of the generating relation in both directions.
pub fn compare(x: &[Marker], y: &[Marker]) -> Option<Ordering> {
    match (generator_greater(x, y), generator_greater(y, x)) {
        (true, false) => Some(Ordering::Greater),
        (false, true) => Some(Ordering::Less),
        _ => None,
    }
}

/// Strict partial order on spanning trees (transitive closure of the
/// generating relation on their smoothings).
#[derive(Clone, Debug)]
pub struct TreePoset {
    /// `greater[a][b]` iff tree `a` > tree `b`.
    greater: Vec<Vec<bool>>,
    covers: Vec<Vec<usize>>,
    maximum: usize,
    minimum: usize,
    depth_from_max: Vec<usize>,
    depth_from_min: Vec<usize>,
}

impl TreePoset {
    pub fn build(smoothings: &[Vec<Marker>]) -> Result<TreePoset> {
        let n = smoothings.len();
        if n == 0 {
            return Err(Error::Invariant("poset of an empty tree list".into()));
        }
        let mut greater: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| generator_greater(&smoothings[a], &smoothings[b])).collect())
            .collect();
        for k in 0..n {
            for a in 0..n {
                if greater[a][k] {
                    for b in 0..n {
                        if greater[k][b] {
                            greater[a][b] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|a| greater[a][a]) {
            return Err(Error::PosetCycle);
        }
        let covers: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| greater[a][b] && !(0..n).any(|m| greater[a][m] && greater[m][b]))
                    .collect()
            })
            .collect();
        let maxima: Vec<usize> = (0..n).filter(|&a| !(0..n).any(|b| greater[b][a])).collect();
        let minima: Vec<usize> = (0..n).filter(|&a| !(0..n).any(|b| greater[a][b])).collect();
        if maxima.len() != 1 || minima.len() != 1 {
            return Err(Error::Invariant(format!(
                "tree poset has {} maximal and {} minimal elements",
                maxima.len(),
                minima.len()
            )));
        }
        let mut poset = TreePoset {
            greater,
            covers,
            maximum: maxima[0],
            minimum: minima[0],
            depth_from_max: vec![0; n],
            depth_from_min: vec![0; n],
        };
        poset.compute_depths();
        Ok(poset)
    }

    fn compute_depths(&mut self) {
        let n = self.len();
        // topological order: more elements above first
        let mut order: Vec<usize> = (0..n).collect();
        let above = |a: usize| (0..n).filter(|&b| self.greater[b][a]).count();
        order.sort_by_key(|&a| above(a));
        for &a in &order {
            for &b in &self.covers[a] {
                self.depth_from_max[b] = self.depth_from_max[b].max(self.depth_from_max[a] + 1);
            }
        }
        for &a in order.iter().rev() {
            for &b in &self.covers[a] {
                self.depth_from_min[a] = self.depth_from_min[a].max(self.depth_from_min[b] + 1);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.greater.len()
    }

    pub fn is_empty(&self) -> bool {
        self.greater.is_empty()
    }

    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.greater[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.greater[a][b] || self.greater[b][a]
    }

    /// Trees covered by `a` (immediate successors downwards).
    pub fn covers(&self, a: usize) -> &[usize] {
        &self.covers[a]
    }

    pub fn maximum(&self) -> usize {
        self.maximum
    }

    pub fn minimum(&self) -> usize {
        self.minimum
    }

    /// Length of the longest chain from the maximum down to `a`.
    pub fn depth_from_max(&self, a: usize) -> usize {
        self.depth_from_max[a]
    }

    pub fn depth_from_min(&self, a: usize) -> usize {
        self.depth_from_min[a]
    }

    /// Number of maximal chains.
    pub fn chain_count(&self) -> u128 {
        let n = self.len();
        let mut memo: Vec<Option<u128>> = vec![None; n];
        fn go(p: &TreePoset, a: usize, memo: &mut Vec<Option<u128>>) -> u128 {
            if let Some(v) = memo[a] {
                return v;
            }
            let v = if p.covers[a].is_empty() {
                1
            } else {
                p.covers[a].clone().into_iter().map(|b| go(p, b, memo)).sum()
            };
            memo[a] = Some(v);
            v
        }
        go(self, self.maximum, &mut memo)
    }

    /// Maximal chains from the maximum to the minimum, at most `limit` of them.
    pub fn maximal_chains(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![self.maximum];
        self.extend_chains(&mut path, &mut out, limit);
        out
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let last = *path.last().unwrap();
        if self.covers[last].is_empty() {
            out.push(path.clone());
            return;
        }
        for &b in &self.covers[last] {
            path.push(b);
            self.extend_chains(path, out, limit);
            path.pop();
        }
    }

    /// Linear extension with minimal trees first: sorted by depth from the
    /// minimum, ties by tree index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (self.depth_from_min[a], a));
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::markers_from_str;

    fn m(s: &str) -> Vec<Marker> {
        markers_from_str(s).unwrap()
    }

    #[test]
    fn generating_relation() {
        assert!(generator_greater(&m("**AA"), &m("*ABA")));
        assert_eq!(compare(&m("*A*B"), &m("*BBA")), None);
        assert!(!generator_greater(&m("*ABA"), &m("*ABA")));
    }

    #[test]
    fn single_tree_poset() {
        let p = TreePoset::build(&[m("")]).unwrap();
        assert_eq!(p.maximal_chains(10), vec![vec![0]]);
        assert_eq!(p.chain_count(), 1);
    }
}
