//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};

use spantree_kh::algebra::{Coefficients, LaurentPoly};
use spantree_kh::alternating::signature_alternating;
use spantree_kh::cli::{builtin, find, CorpusEntry};
use spantree_kh::collapse::{grading_map, grading_map_inverse, retract_to_tree_complex, MutableComplex};
use spantree_kh::diagram::LinkDiagram;
use spantree_kh::jones::{bracket_spantree, bracket_statesum};
use spantree_kh::khovanov::{khovanov_dims, khovanov_homology, Complex, KhovanovComplex};
use spantree_kh::spantree::TreeModel;
use spantree_kh::spectral::{build_filtration, compute_pages};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_up_to(c: usize) -> Vec<(CorpusEntry, LinkDiagram)> {
    builtin()
        .into_iter()
        .map(|e| {
            let d = e.diagram().unwrap();
            (e, d)
        })
        .filter(|(_, d)| d.n_crossings() <= c)
        .collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

fn trefoil4_table() -> Outcome {
    timed(Duration::from_secs(1), || {
        let d = find("trefoil4").map_err(|e| e.to_string())?.diagram().map_err(|e| e.to_string())?;
        let model = TreeModel::new(&d).map_err(|e| e.to_string())?;
        // the worked example, listed as its T1..T5
        let table = [
            ("T1", "ℓDD̄d̄", (-1, 1), "*ABA"),
            ("T2", "ℓDℓ̄D̄", (0, 1), "*A*B"),
            ("T3", "LdD̄d̄", (1, 1), "*BBA"),
            ("T4", "Ldℓ̄D̄", (2, 1), "*B*B"),
            ("T5", "LLd̄d̄", (2, 2), "**AA"),
        ];
        let expected: BTreeSet<(String, (i64, i64), String)> =
            table.iter().map(|&(_, w, g, s)| (w.to_string(), g, s.to_string())).collect();
        let got: BTreeSet<(String, (i64, i64), String)> =
            model.trees.iter().map(|t| (t.word.to_string(), (t.u, t.v), t.smoothing_string())).collect();
        ensure(model.len() == 5, || format!("{} trees", model.len()))?;
        ensure(got == expected, || format!("rows {got:?}"))?;

        let by_word: BTreeMap<String, &str> = table.iter().map(|&(n, w, _, _)| (w.to_string(), n)).collect();
        let chains: BTreeSet<String> = model
            .poset
            .maximal_chains(10)
            .into_iter()
            .map(|c| c.iter().map(|&t| by_word[&model.trees[t].word.to_string()]).collect::<Vec<_>>().join(">"))
            .collect();
        let want: BTreeSet<String> = ["T5>T1>T2>T4", "T5>T1>T3>T4"].into_iter().map(String::from).collect();
        ensure(chains == want, || format!("chains {chains:?}"))?;
        Ok("5 trees, words, gradings, smoothings and both maximal chains match".into())
    })
}

fn thistlethwaite() -> Outcome {
    timed(Duration::from_secs(10), || {
        let corpus = corpus_up_to(10);
        for (e, d) in &corpus {
            let model = TreeModel::new(d).map_err(|e| e.to_string())?;
            let a = bracket_statesum(d);
            let b = bracket_spantree(&model);
            ensure(a == b, || format!("{}: states {} trees {}", e.name, a.display("A", 1), b.display("A", 1)))?;
        }
        Ok(format!("{} diagrams", corpus.len()))
    })
}

fn tree_complex_homology() -> Outcome {
    let corpus = corpus_up_to(9);
    for (e, d) in &corpus {
        let model = TreeModel::new(d).map_err(|e| e.to_string())?;
        for reduced in [true, false] {
            let r = retract_to_tree_complex(d, &model, reduced).map_err(|e| e.to_string())?;
            let (w, k) = (d.writhe(), model.k());
            let transported = r
                .tree_complex
                .homology()
                .map_err(|e| e.to_string())?
                .regrade(|(u, v)| grading_map(u, v, w, k).expect("integral grading"));
            let brute = khovanov_homology(d, reduced).map_err(|e| e.to_string())?;
            ensure(transported == brute, || {
                format!("{} {}: tree complex\n{}brute force\n{}", e.name, reduced, transported.table(), brute.table())
            })?;
        }
    }
    Ok(format!("{} diagrams, reduced and unreduced, over Z", corpus.len()))
}

const ALTERNATING: [&str; 8] = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4"];

/// Jones polynomial coefficients in integral powers of `t`, from the bracket.
fn jones_coefficients(d: &LinkDiagram) -> BTreeMap<i64, i64> {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let mut out = BTreeMap::new();
    for (a, c) in bracket_statesum(d).terms() {
        let quarter = 3 * w - a;
        assert_eq!(quarter % 4, 0);
        *out.entry(quarter / 4).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn alternating_package() -> Outcome {
    for name in ALTERNATING {
        let d = find(name).map_err(|e| e.to_string())?.diagram().map_err(|e| e.to_string())?;
        let model = TreeModel::new(&d).map_err(|e| e.to_string())?;
        let (c, w, k) = (d.n_crossings() as i64, d.writhe(), model.k());
        let sigma = signature_alternating(&d).map_err(|e| e.to_string())?;
        let row = (c - w) / 2 - sigma;
        let h = khovanov_homology(&d, true).map_err(|e| e.to_string())?;
        ensure(!h.has_torsion(), || format!("{name}: torsion in reduced homology"))?;
        let mut ranks = BTreeMap::new();
        for (&(i, j), g) in &h.groups {
            let (u, v) = grading_map_inverse(i, j, w, k).map_err(|e| e.to_string())?;
            ensure(v == row, || format!("{name}: homology at v = {v}, expected row {row}"))?;
            ranks.insert(u - v + (3 * w + c + 2 * v) / 4, g.free as i64);
        }
        let jones: BTreeMap<i64, i64> = jones_coefficients(&d).into_iter().map(|(n, a)| (n, a.abs())).collect();
        ensure(ranks == jones, || format!("{name}: ranks {ranks:?}, |a_n| {jones:?}"))?;
    }
    Ok(format!("{} knots", ALTERNATING.len()))
}

fn thickness() -> Outcome {
    let line = |(i, j): (i64, i64)| j - 2 * i;
    for name in ALTERNATING {
        let d = find(name).map_err(|e| e.to_string())?.diagram().map_err(|e| e.to_string())?;
        let sigma = signature_alternating(&d).map_err(|e| e.to_string())?;
        let h = khovanov_homology(&d, false).map_err(|e| e.to_string())?;
        let lines: BTreeSet<i64> = h.groups.keys().map(|&g| line(g)).collect();
        ensure(lines == BTreeSet::from([-sigma - 1, -sigma + 1]), || format!("{name}: lines {lines:?}, σ = {sigma}"))?;
        for (&g, grp) in &h.groups {
            ensure(grp.torsion.is_empty() || line(g) == -sigma - 1, || format!("{name}: torsion at {g:?}"))?;
        }
    }
    let d = find("8_19").map_err(|e| e.to_string())?.diagram().map_err(|e| e.to_string())?;
    let model = TreeModel::new(&d).map_err(|e| e.to_string())?;
    let h = khovanov_homology(&d, true).map_err(|e| e.to_string())?;
    let rows: BTreeSet<i64> = h
        .groups
        .keys()
        .map(|&(i, j)| grading_map_inverse(i, j, d.writhe(), model.k()).map(|(_, v)| v))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(rows.len() <= 2, || format!("8_19 reduced rows {rows:?}"))?;
    Ok(format!("{} alternating knots on two lines; 8_19 reduced rows {rows:?}", ALTERNATING.len()))
}

/// `sum (-1)^u t^(u-v)` in quarter powers of `t`.
fn chi(gradings: impl Iterator<Item = (i64, i64)>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (u, v) in gradings {
        p.add_term(if u % 2 == 0 { 1 } else { -1 }, 4 * (u - v));
    }
    p
}

fn euler_identities() -> Outcome {
    let mut failures = Vec::new();
    let corpus = corpus_up_to(usize::MAX);
    for (e, d) in &corpus {
        let model = TreeModel::new(d).map_err(|e| e.to_string())?;
        let (w, k) = (d.writhe(), model.k());
        let sign = if w % 2 == 0 { 1 } else { -1 };
        let v = LaurentPoly::from_terms(jones_coefficients(d).into_iter().map(|(n, a)| (4 * n, a)));
        let c = chi(model.trees.iter().map(|t| (t.u, t.v)));
        let uc = chi(model.trees.iter().flat_map(|t| [(t.u, t.v), (t.u + 2, t.v + 1)]));
        if c.shift(3 * w + k).scale(sign) != v {
            failures.push(format!("{}: V != (-1)^w t^((3w+k)/4) χ(C)", e.name));
        }
        let lhs = &LaurentPoly::from_terms([(2, 1), (-2, 1)]) * &v;
        let rhs = uc.shift(3 * w + k + 2).scale(sign);
        if rhs != lhs {
            failures.push(format!(
                "{}: (t^1/2+t^-1/2)V = {} but (-1)^w t^((3w+k+2)/4) χ(UC) = {}",
                e.name,
                lhs.display("t", 4),
                rhs.display("t", 4)
            ));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} diagrams", corpus.len()))
    } else {
        Err(format!("{} of {} identity checks fail, first: {}", failures.len(), 2 * corpus.len(), failures[0]))
    }
}

fn spectral() -> Outcome {
    let corpus = corpus_up_to(9);
    let mut trefoil4 = None;
    for (e, d) in &corpus {
        let model = TreeModel::new(d).map_err(|e| e.to_string())?;
        let f = build_filtration(d, &model).map_err(|e| e.to_string())?;
        let (w, k) = (d.writhe(), model.k());
        let mut trees: BTreeMap<(i64, i64, i64), usize> = BTreeMap::new();
        for (t, tree) in model.trees.iter().enumerate() {
            let (i, j) = grading_map(tree.u, tree.v, w, k).map_err(|e| e.to_string())?;
            let p = f.tree_level[t] as i64;
            *trees.entry((p, i - p, j)).or_insert(0) += 1;
        }
        for coeff in [Coefficients::Prime(2), Coefficients::Rationals] {
            let ss = compute_pages(&f, coeff, None).map_err(|e| e.to_string())?;
            let e1: BTreeMap<_, _> = ss.pages[1].dims_j.iter().filter(|(_, &n)| n > 0).map(|(&g, &n)| (g, n)).collect();
            ensure(e1 == trees, || format!("{} over {coeff}: E_1 {e1:?} vs trees {trees:?}", e.name))?;
            let mut inf: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for (&(p, q, j), &n) in &ss.e_infinity().dims_j {
                if n > 0 {
                    *inf.entry((p + q, j)).or_insert(0) += n;
                }
            }
            let mut brute = khovanov_dims(d, true, coeff).map_err(|e| e.to_string())?;
            brute.retain(|_, n| *n > 0);
            ensure(inf == brute, || format!("{} over {coeff}: E_inf {inf:?} vs homology {brute:?}", e.name))?;
            ensure(ss.collapse_page <= d.n_crossings(), || {
                format!("{} over {coeff}: collapses at E_{} with {} crossings", e.name, ss.collapse_page, d.n_crossings())
            })?;
            if e.name == "trefoil4" {
                trefoil4 = Some((ss.collapse_page, ss.e_infinity().total()));
            }
        }
    }
    ensure(trefoil4 == Some((3, 3)), || format!("trefoil4 collapse page and E_inf total {trefoil4:?}"))?;
    Ok(format!("{} diagrams over F2 and Q; trefoil4 collapses at E_3 with 3 dimensions", corpus.len()))
}

/// Elementary summands `Z --n--> Z` and `Z`, mixed by unimodular changes of
/// basis within each degree.
fn random_complex(seed: u64, n: usize) -> Complex {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut deg = Vec::new();
    let mut d = vec![vec![0i64; n]; n];
    while deg.len() < n {
        let i = rng.gen_range(0..4);
        let g = deg.len();
        if g + 1 < n && rng.gen_bool(0.6) {
            deg.extend([i, i + 1]);
            d[g + 1][g] = rng.gen_range(1..=3);
        } else {
            deg.push(i);
        }
    }
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b || deg[a] != deg[b] {
            continue;
        }
        let e = rng.gen_range(-1..=1);
        for col in 0..n {
            d[a][col] += e * d[b][col];
        }
        for row in 0..n {
            d[row][b] -= e * d[row][a];
        }
    }
    let mut c = Complex::new((1, 0));
    for (g, &i) in deg.iter().enumerate() {
        c.push(format!("g{g}"), (i, 0));
    }
    for (src, col) in c.boundary.iter_mut().enumerate() {
        *col = (0..n).filter(|&dst| d[dst][src] != 0).map(|dst| (dst, d[dst][src])).collect();
    }
    c
}

fn property_suites() -> Outcome {
    // (a) collapses preserve homology
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    runner
        .run(&(0u64..u64::MAX, 2usize..24), |(seed, n)| {
            let c = random_complex(seed, n);
            c.check_d_squared().map_err(|e| proptest::test_runner::TestCaseError::fail(e.to_string()))?;
            let before = c.homology().unwrap();
            let mut m = MutableComplex::from_complex(&c, false);
            loop {
                let pair = m.live().find_map(|x| m.boundary(x).iter().find(|(_, v)| v.abs() == 1).map(|(&y, _)| (x, y)));
                let Some((x, y)) = pair else { break };
                m.collapse(x, y).unwrap();
            }
            let (after, _) = m.to_complex((1, 0));
            proptest::prop_assert_eq!(after.homology().unwrap(), before);
            Ok(())
        })
        .map_err(|e| format!("(a) {e}"))?;

    let corpus = corpus_up_to(9);
    let mut cycles = 0;
    for (e, d) in &corpus {
        let model = TreeModel::new(d).map_err(|e| e.to_string())?;
        for reduced in [true, false] {
            let r = retract_to_tree_complex(d, &model, reduced).map_err(|e| e.to_string())?;
            // (b) order discipline
            if d.n_crossings() <= 7 {
                ensure(r.stats.order_violations == 0 && r.stats.insulation_violations == 0, || {
                    format!("(b) {}: {:?}", e.name, r.stats)
                })?;
            }
            // (c) d² = 0 and bidegrees
            let kc = KhovanovComplex::build(d, reduced).map_err(|e| e.to_string())?;
            for (what, c) in [("khovanov", &kc.complex), ("tree", &r.tree_complex.complex)] {
                c.check_d_squared().map_err(|err| format!("(c) {} {what}: {err}", e.name))?;
                c.check_degree().map_err(|err| format!("(c) {} {what}: {err}", e.name))?;
            }
            r.mutable.check_d_squared().map_err(|err| format!("(c) {} retracted: {err}", e.name))?;
            // (d) fundamental cycles
            for c in r.check_cycles().map_err(|e| e.to_string())? {
                ensure(c.is_cycle && c.grading_ok && c.retracts_to_generator, || format!("(d) {} {c:?}", e.name))?;
                cycles += 1;
            }
        }
    }
    Ok(format!("200 random complexes; {} diagrams; {cycles} fundamental cycles", corpus.len()))
}

fn run(n: usize, title: &str, f: fn() -> Outcome) -> bool {
    let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match outcome {
        Ok(detail) => {
            println!("criterion {n} PASS  {title}: {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {n} FAIL  {title}: {detail}");
            false
        }
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("trefoil4 tree table", trefoil4_table),
        ("bracket from spanning trees", thistlethwaite),
        ("tree complex homology", tree_complex_homology),
        ("alternating knot homology", alternating_package),
        ("thickness", thickness),
        ("Euler characteristic identities", euler_identities),
        ("spectral sequence", spectral),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (n, (title, f)) in criteria.into_iter().enumerate() {
        if !run(n + 1, title, f) {
            failed += 1;
        }
    }
    println!("{} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
