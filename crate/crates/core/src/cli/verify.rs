use rayon::prelude::*;
use serde::Serialize;

use super::corpus::CorpusEntry;
use super::{Check, BRUTE_FORCE_CAP};
use crate::algebra::Coefficients;
use crate::alternating::{free_ranks, is_alternating, predicted_reduced_homology, thickness_report};
use crate::collapse::retract_to_tree_complex;
use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::jones::{bracket_spantree, bracket_statesum, euler_check, jones};
use crate::khovanov::khovanov_homology;
use crate::spantree::TreeModel;
use crate::spectral::{build_filtration, check_convergence, compute_pages, e1_matches_trees};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub knot: String,
    pub check: Check,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        format!("{tag}  {:<9} {:<15} {}", self.knot, self.check.name(), self.detail)
    }
}

type Verdict = (Status, String);

fn verdict(ok: bool, detail: String) -> Verdict {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

pub fn run_checks(entries: &[CorpusEntry], checks: &[Check], force: bool) -> Vec<CheckResult> {
    let jobs: Vec<(&CorpusEntry, Check)> = entries.iter().flat_map(|e| checks.iter().map(move |&c| (e, c))).collect();
    jobs.par_iter()
        .map(|&(e, check)| {
            let (status, detail) = match run_one(e, check, force) {
                Ok(v) => v,
                Err(err) => (Status::Fail, err.to_string()),
            };
            CheckResult { knot: e.name.clone(), check, status, detail }
        })
        .collect()
}

fn reduced_alternating(d: &LinkDiagram) -> bool {
    d.n_crossings() > 0 && is_alternating(d) && (0..d.n_crossings()).all(|c| !d.is_nugatory(c))
}

fn run_one(e: &CorpusEntry, check: Check, force: bool) -> Result<Verdict> {
    let d = e.diagram()?;
    let heavy = matches!(check, Check::Collapse | Check::Spectral | Check::Alternating | Check::Thickness);
    if heavy && d.n_crossings() > BRUTE_FORCE_CAP && !force {
        return Ok((Status::Skip, format!("{} crossings exceeds the cap of {BRUTE_FORCE_CAP}", d.n_crossings())));
    }
    let model = TreeModel::new(&d)?;
    match check {
        Check::Corpus => {
            let now = e.regenerate()?;
            let ok = now.expected == e.expected;
            let detail = if ok {
                format!("w={} k={} trees={} V={}", now.expected.writhe, now.expected.k, now.expected.trees, now.expected.jones)
            } else {
                format!("expected {:?}, computed {:?}", e.expected, now.expected)
            };
            Ok(verdict(ok, detail))
        }
        Check::TreeExpansion => {
            let a = bracket_statesum(&d);
            let b = bracket_spantree(&model);
            let mut ok = a == b;
            let mut detail = format!("<D> = {}", a.display("A", 1));
            if ok && reduced_alternating(&d) {
                let l1 = jones(&d)?.l1_norm() as usize;
                ok = l1 == model.len();
                detail += &format!("; trees {} vs |V|_1 {}", model.len(), l1);
            }
            if a != b {
                detail = format!("state sum {} but trees give {}", a.display("A", 1), b.display("A", 1));
            }
            Ok(verdict(ok, detail))
        }
        Check::Euler => {
            let r = euler_check(&d, &model)?;
            Ok(verdict(
                r.identity_1 && r.identity_2_corrected,
                format!(
                    "reduced {}; unreduced with t^((3w+k-2)/4) {}; with t^((3w+k+2)/4) {}",
                    r.identity_1, r.identity_2_corrected, r.identity_2
                ),
            ))
        }
        Check::Collapse => {
            let mut notes = Vec::new();
            let mut ok = true;
            for reduced in [true, false] {
                let r = retract_to_tree_complex(&d, &model, reduced)?;
                let same = r.tree_complex.homology_ij()? == khovanov_homology(&d, reduced)?;
                let cycles = r
                    .check_cycles()?
                    .iter()
                    .all(|c| c.is_cycle && c.grading_ok && c.retracts_to_generator && c.matches_inclusion);
                ok &= same && cycles && r.stats.order_violations == 0 && r.stats.insulation_violations == 0;
                notes.push(format!(
                    "{}: homology {}, cycles {}, {} collapses, order {}, insulation {}",
                    if reduced { "reduced" } else { "unreduced" },
                    if same { "equal" } else { "DIFFERENT" },
                    if cycles { "ok" } else { "BAD" },
                    r.stats.collapses,
                    r.stats.order_violations,
                    r.stats.insulation_violations
                ));
            }
            Ok(verdict(ok, notes.join("; ")))
        }
        Check::Spectral => {
            let f = build_filtration(&d, &model)?;
            let mut ok = true;
            let mut notes = Vec::new();
            for coeff in [Coefficients::Prime(2), Coefficients::Rationals] {
                let ss = compute_pages(&f, coeff, None)?;
                let e1 = e1_matches_trees(&f, &model, &ss, &d)?;
                let conv = check_convergence(&f, &ss, coeff).is_ok();
                let bound = ss.collapse_page <= d.n_crossings();
                ok &= e1 && conv && bound;
                notes.push(format!("{coeff}: E1=trees {e1}, converges {conv}, collapses at E_{}", ss.collapse_page));
            }
            Ok(verdict(ok, notes.join("; ")))
        }
        Check::Alternating => {
            if !reduced_alternating(&d) {
                return Ok((Status::Skip, "not a reduced alternating diagram".into()));
            }
            let p = predicted_reduced_homology(&d)?;
            let h = khovanov_homology(&d, true)?;
            let r = retract_to_tree_complex(&d, &model, true)?;
            let ranks = free_ranks(&h);
            let ok = ranks.as_ref() == Some(&p.by_ij) && r.tree_complex.differential_is_zero();
            let detail = if ok {
                format!("σ = {}, row v = {}, ranks {:?}", p.signature, p.row, p.by_uv.values().collect::<Vec<_>>())
            } else {
                format!("predicted {:?}, computed {}", p.by_ij, h.table().trim_end().replace('\n', "; "))
            };
            Ok(verdict(ok, detail))
        }
        Check::Thickness => {
            let rh = khovanov_homology(&d, true)?;
            let uh = khovanov_homology(&d, false)?;
            let t = thickness_report(&d, &model, &rh, &uh)?;
            if reduced_alternating(&d) {
                let one_line = t.reduced_lines.len() == 1;
                let ok = t.two_lines == Some(true) && t.torsion_on_lower_line == Some(true) && one_line;
                Ok(verdict(ok, format!("σ = {:?}, lines {:?}, torsion on {:?}", t.signature, t.unreduced_lines, t.torsion_lines)))
            } else if let Some(k) = e.almost_alternating {
                let ok = t.reduced_rows.len() <= k + 1 && t.unreduced_rows.len() <= k + 2;
                Ok(verdict(ok, format!("{k}-almost alternating: reduced rows {:?}, unreduced rows {:?}", t.reduced_rows, t.unreduced_rows)))
            } else {
                Ok((Status::Skip, format!("lines {:?}", t.unreduced_lines)))
            }
        }
    }
}
