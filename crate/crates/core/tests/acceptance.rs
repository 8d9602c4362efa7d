//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use raagpal::aut::{inversions, iota, Automorphism, GeneratorSymbol};
use raagpal::factor::{
    factor_palindromic, factor_pure_palindromic, factor_torelli_bfs, factor_with_fixed,
    lift_relator, TorelliBudget,
};
use raagpal::graph::fixtures;
use raagpal::matrix::{
    block_decompose, free_block_check, relator_suite, MatrixSymbol, RelatorFilter,
};
use raagpal::sample::{
    generator_pool, random_letters, random_product, random_reverse_invariant_letters, random_suite,
    rng, SampleKind,
};
use raagpal::{GroupWord, Letter, SimplicialGraph};

const SEED: u64 = 20240601;

// ---------------------------------------------------------------- oracles

type Raw = Vec<(usize, bool)>;

struct Oracle {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Oracle {
    fn new(g: &SimplicialGraph) -> Self {
        let n = g.len();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Oracle { n, adj }
    }

    fn commute(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[u][v]
    }

    /// lk(u) is contained in st(v).
    fn dominates(&self, u: usize, v: usize) -> bool {
        (0..self.n).all(|w| !self.adj[u][w] || w == v || self.adj[v][w])
    }

    /// Shortest words reachable from `w` by commuting swaps and cancellations.
    fn minimal_class(&self, w: &Raw) -> HashSet<Raw> {
        let mut seen = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..cur.len().saturating_sub(1) {
                let (a, b) = (cur[i], cur[i + 1]);
                let mut next = cur.clone();
                if a.0 == b.0 && a.1 != b.1 {
                    next.drain(i..i + 2);
                } else if a.0 != b.0 && self.adj[a.0][b.0] {
                    next.swap(i, i + 1);
                } else {
                    continue;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let min = seen.iter().map(Vec::len).min().unwrap_or(0);
        seen.into_iter().filter(|x| x.len() == min).collect()
    }

    fn equal(&self, u: &Raw, v: &Raw) -> bool {
        let cu = self.minimal_class(u);
        self.minimal_class(v).iter().any(|x| cu.contains(x))
    }

    fn literal_palindrome(&self, w: &Raw) -> bool {
        self.minimal_class(w)
            .iter()
            .any(|x| x.iter().rev().eq(x.iter()))
    }

    /// Exponent matrix with column `v` the exponent vector of `alpha(v)`.
    fn exponents(&self, alpha: &Automorphism) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for (v, image) in alpha.images().iter().enumerate() {
            for l in image {
                m[l.vertex()][v] += if l.is_inverse() { -1 } else { 1 };
            }
        }
        m
    }

    fn trivial_on_homology(&self, alpha: &Automorphism) -> bool {
        let m = self.exponents(alpha);
        (0..self.n).all(|r| (0..self.n).all(|c| m[r][c] == i64::from(r == c)))
    }

    fn mod2(&self, alpha: &Automorphism) -> Vec<u64> {
        let m = self.exponents(alpha);
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .filter(|&c| m[r][c].rem_euclid(2) == 1)
                    .fold(0u64, |acc, c| acc | 1 << c)
            })
            .collect()
    }

    fn mod2_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .map(|&row| {
                (0..self.n)
                    .filter(|&k| row >> k & 1 == 1)
                    .fold(0u64, |acc, k| acc ^ b[k])
            })
            .collect()
    }

    fn mod2_closure(&self, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
        let id: Vec<u64> = (0..self.n).map(|i| 1 << i).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in gens {
                let next = self.mod2_mul(&m, g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }
}

fn raw(w: &[Letter]) -> Raw {
    w.iter().map(|l| (l.vertex(), l.is_inverse())).collect()
}

fn letters(w: &Raw) -> Vec<Letter> {
    w.iter().map(|&(v, i)| Letter::new(v, i)).collect()
}

/// Random commuting swaps and inserted cancelling pairs; never changes the element.
fn perturb<R: Rng>(o: &Oracle, w: &Raw, rng: &mut R) -> Raw {
    let mut w = w.clone();
    for _ in 0..rng.random_range(0..=2) {
        let at = rng.random_range(0..=w.len());
        let v = rng.random_range(0..o.n);
        let s = rng.random_bool(0.5);
        w.splice(at..at, [(v, s), (v, !s)]);
    }
    for _ in 0..8 {
        if w.len() < 2 {
            break;
        }
        let i = rng.random_range(0..w.len() - 1);
        if o.adj[w[i].0][w[i + 1].0] {
            w.swap(i, i + 1);
        }
    }
    w
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

fn symbol_matrix(n: usize, s: MatrixSymbol) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect();
    match s {
        MatrixSymbol::S { row, col, inverse } => m[row][col] = if inverse { -2 } else { 2 },
        MatrixSymbol::Z(i) => m[i][i] = -1,
    }
    m
}

fn is_pure_symbol(s: &GeneratorSymbol) -> bool {
    match s {
        GeneratorSymbol::Inversion(_) | GeneratorSymbol::ElemPalindromic(..) => true,
        GeneratorSymbol::Inverse(inner) => is_pure_symbol(inner),
        _ => false,
    }
}

fn fixes(g: &Arc<SimplicialGraph>, s: &GeneratorSymbol, v: usize) -> bool {
    let a = Automorphism::generator(g, s.clone()).expect("valid symbol");
    a.image_letters(v) == [Letter::pos(v)]
}

fn graphs() -> Vec<(&'static str, Arc<SimplicialGraph>)> {
    fixtures::all()
        .into_iter()
        .map(|(name, g)| (name, Arc::new(g)))
        .collect()
}

// ---------------------------------------------------------------- criteria

struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        let mut rng = rng(SEED ^ 1);
        let mut equal_pairs = 0;
        for _ in 0..1000 {
            let u = raw(&random_letters(&g, &mut rng, 8));
            let v = match rng.random_range(0..3) {
                0 => raw(&random_letters(&g, &mut rng, 8)),
                1 => perturb(&o, &u, &mut rng),
                _ => {
                    let mut v = perturb(&o, &u, &mut rng);
                    if !v.is_empty() {
                        let i = rng.random_range(0..v.len());
                        v[i].1 = !v[i].1;
                    }
                    v
                }
            };
            let expected = o.equal(&u, &v);
            equal_pairs += usize::from(expected);
            let wu = GroupWord::new(&g, &letters(&u)).unwrap();
            let wv = GroupWord::new(&g, &letters(&v)).unwrap();
            let got = wu.equal(&wv).unwrap();
            out.check(got == expected, || format!("{name}: {u:?} vs {v:?}"));
        }
        out.check(equal_pairs > 0, || {
            format!("{name}: no equal pairs sampled")
        });
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        let mut rng = rng(SEED ^ 2);
        for _ in 0..500 {
            let w = random_reverse_invariant_letters(&g, &mut rng, 8);
            let expected = o.literal_palindrome(&raw(&w));
            let got = GroupWord::new(&g, &w).unwrap().is_palindrome();
            out.check(got == expected, || format!("{name}: {:?}", raw(&w)));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        for alpha in random_suite(&g, SampleKind::Centralizer, 500, SEED ^ 3, 8) {
            for v in 0..g.len() {
                let w = alpha.image(v);
                let form = match w.clique_palindromic_form() {
                    Ok(f) => f,
                    Err(e) => {
                        out.check(false, || format!("{name}: {w}: {e}"));
                        continue;
                    }
                };
                let recomposed = form
                    .recompose()
                    .map(|r| r.equal(&w).unwrap())
                    .unwrap_or(w.is_identity());
                out.check(recomposed, || format!("{name}: {w} recomposition"));
                let supports: Vec<Vec<usize>> = form
                    .pieces
                    .iter()
                    .map(|p| {
                        let mut s: Vec<usize> = p.letters().iter().map(|l| l.vertex()).collect();
                        s.sort_unstable();
                        s.dedup();
                        s
                    })
                    .collect();
                let cliques = supports
                    .iter()
                    .all(|s| s.iter().all(|&a| s.iter().all(|&b| o.commute(a, b))));
                out.check(cliques, || format!("{name}: {w} clique support"));
                let k = form.pieces.len();
                if k >= 3 {
                    // clique pieces commute iff every pair of supporting vertices
                    // commutes, by retraction onto a two-vertex free group
                    let chain = (0..k - 2).all(|i| {
                        supports[i]
                            .iter()
                            .any(|&a| supports[i + 1].iter().any(|&b| !o.commute(a, b)))
                    });
                    out.check(chain, || format!("{name}: {w} chain condition"));
                }
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    for n in 2..=6 {
        let id: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
            .collect();
        let suite = relator_suite(n, RelatorFilter::All);
        let families: HashSet<u8> = suite.iter().map(|r| r.family).collect();
        let expected_families = match n {
            2 => 4,
            3 => 9,
            _ => 10,
        };
        out.check(families.len() == expected_families, || {
            format!("n={n}: families present {families:?}")
        });
        for rel in suite {
            let m = rel
                .word
                .iter()
                .fold(id.clone(), |acc, &s| mat_mul(&acc, &symbol_matrix(n, s)));
            out.check(m == id, || format!("n={n}: {}", rel.name()));
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        let mut gens = Vec::new();
        for s in generator_pool(&g, SampleKind::Centralizer) {
            if matches!(
                s,
                GeneratorSymbol::Diagram(_) | GeneratorSymbol::Transvection(..)
            ) {
                gens.push(o.mod2(&Automorphism::generator(&g, s).unwrap()));
            }
        }
        let image = o.mod2_closure(&gens);
        let id: Vec<u64> = (0..g.len()).map(|i| 1 << i).collect();
        for alpha in random_suite(&g, SampleKind::Centralizer, 500, SEED ^ 5, 8) {
            let m = o.mod2(&alpha);
            let pure = alpha.predicates().is_pure;
            out.check(pure == (m == id), || format!("{name}: {alpha:?} purity"));
            out.check(image.contains(&m), || format!("{name}: {alpha:?} image"));
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let expected = [
        ("path", Some(true)),
        ("edgeless", Some(false)),
        ("triangle", Some(true)),
    ];
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        let n = g.len();
        let adjacent_dominations: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && o.adj[u][v] && o.dominates(u, v))
            .collect();
        let has = g.has_adjacent_domination();
        out.check(has == !adjacent_dominations.is_empty(), || {
            format!("{name}: has_adjacent_domination = {has}")
        });
        if let Some((_, Some(want))) = expected.iter().find(|(n, _)| *n == name) {
            out.check(has == *want, || format!("{name}: expected {want}"));
        }
        let palindromic =
            |a: &Automorphism| (0..n).all(|v| o.literal_palindrome(&raw(a.image_letters(v))));
        let iota = iota(&g);
        if has {
            let (u, v) = adjacent_dominations[0];
            let tau = Automorphism::generator(&g, GeneratorSymbol::Transvection(u, v)).unwrap();
            let commutes = iota.compose(&tau).unwrap() == tau.compose(&iota).unwrap();
            let p = tau.predicates();
            out.check(commutes && !palindromic(&tau), || {
                format!("{name}: tau({u},{v}) is not a witness")
            });
            out.check(p.in_ciota && !p.is_palindromic, || {
                format!("{name}: predicates disagree for tau({u},{v})")
            });
        } else {
            for s in generator_pool(&g, SampleKind::Centralizer) {
                let a = Automorphism::generator(&g, s.clone()).unwrap();
                out.check(palindromic(&a) && a.predicates().is_palindromic, || {
                    format!("{name}: {s:?} not palindromic")
                });
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        for alpha in random_suite(&g, SampleKind::Pure, 200, SEED ^ 7, 8) {
            match factor_pure_palindromic(&alpha) {
                Ok(r) => {
                    let back = Automorphism::from_generators(&g, &r.word).unwrap();
                    out.check(
                        r.is_complete() && back == alpha && r.word.iter().all(is_pure_symbol),
                        || format!("{name}: pure {alpha:?}"),
                    );
                }
                Err(e) => out.check(false, || format!("{name}: pure {alpha:?}: {e}")),
            }
        }
        for alpha in random_suite(&g, SampleKind::Palindromic, 200, SEED ^ 8, 8) {
            match factor_palindromic(&alpha) {
                Ok(r) => {
                    let back = Automorphism::from_generators(&g, &r.word).unwrap();
                    out.check(r.is_complete() && back == alpha, || {
                        format!("{name}: palindromic {alpha:?}")
                    });
                }
                Err(e) => out.check(false, || format!("{name}: palindromic {alpha:?}: {e}")),
            }
        }
        let pool = generator_pool(&g, SampleKind::Palindromic);
        let mut rng = rng(SEED ^ 9);
        for _ in 0..200 {
            let v = rng.random_range(0..g.len());
            let fixing: Vec<GeneratorSymbol> =
                pool.iter().filter(|s| fixes(&g, s, v)).cloned().collect();
            let word = random_product(&fixing, &mut rng, 8);
            let alpha = Automorphism::from_generators(&g, &word).unwrap();
            match factor_with_fixed(&alpha, &[v]) {
                Ok(r) => {
                    let back = Automorphism::from_generators(&g, &r.word).unwrap();
                    let all_fix = r.word.iter().all(|s| fixes(&g, s, v));
                    out.check(r.is_complete() && back == alpha && all_fix, || {
                        format!("{name}: fixed {v} {alpha:?}")
                    });
                }
                Err(e) => out.check(false, || format!("{name}: fixed {v} {alpha:?}: {e}")),
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for chi in [
                        raagpal::aut::chi1(&g, i, j, k),
                        raagpal::aut::chi2(&g, i, j, k),
                    ]
                    .into_iter()
                    .flatten()
                    {
                        out.check(o.trivial_on_homology(&chi), || {
                            format!("{name}: chi at ({i},{j},{k})")
                        });
                    }
                }
            }
        }
        for rel in relator_suite(n, RelatorFilter::RGamma(&g)) {
            let lift = lift_relator(&g, &rel).unwrap();
            out.check(o.trivial_on_homology(&lift), || {
                format!("{name}: lift of {}", rel.name())
            });
            if lift.is_identity() {
                continue;
            }
            let found = factor_torelli_bfs(&lift, TorelliBudget::default());
            let ok = found.as_ref().is_ok_and(|tf| {
                let word: Vec<GeneratorSymbol> =
                    tf.symbols.iter().flat_map(|s| s.expand(&g)).collect();
                tf.depth <= 4 && Automorphism::from_generators(&g, &word).unwrap() == lift
            });
            out.check(ok, || format!("{name}: search for {}", rel.name()));
        }
    }
    let e = Arc::new(fixtures::edgeless());
    let chi = raagpal::aut::chi1(&e, 0, 1, 2).unwrap();
    let moved = (0..3).any(|v| {
        let image = GroupWord::new(&e, &[Letter::pos(v)]).unwrap();
        let applied = chi.apply(&image).unwrap();
        raw(applied.letters()) != vec![(v, false)]
    });
    out.check(moved, || "edgeless: chi1(x,y,z) acts trivially".into());
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let o = Oracle::new(&g);
        let n = g.len();
        let dd = g.domination();
        for alpha in random_suite(&g, SampleKind::Aut0Centralizer, 200, SEED ^ 11, 8) {
            let m = raagpal::matrix::phi(&alpha);
            let dec = block_decompose(&m, dd);
            out.check(
                dec.violations.is_empty() && free_block_check(&m, dd),
                || format!("{name}: {alpha:?} blocks"),
            );
            let e = o.exponents(&alpha);
            let shape = (0..n).all(|r| (0..n).all(|c| r == c || e[r][c] == 0 || o.dominates(c, r)));
            let free = (0..n).all(|u| {
                let class: Vec<usize> = (0..n)
                    .filter(|&w| o.dominates(u, w) && o.dominates(w, u))
                    .collect();
                if class.len() < 2 || o.adj[class[0]][class[1]] {
                    return true;
                }
                let odd = |r: usize, c: usize| e[r][c].rem_euclid(2) == 1;
                class
                    .iter()
                    .all(|&r| class.iter().filter(|&&c| odd(r, c)).count() == 1)
                    && class
                        .iter()
                        .all(|&c| class.iter().filter(|&&r| odd(r, c)).count() == 1)
            });
            out.check(shape && free, || format!("{name}: {alpha:?} oracle shape"));
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    for (name, g) in graphs() {
        let n = g.len();
        for alpha in random_suite(&g, SampleKind::Palindromic, 200, SEED ^ 13, 8) {
            let ok = alpha.split_diagram_pure().is_ok_and(|(delta, gamma)| {
                let is_diagram =
                    (0..n).all(|v| matches!(delta.image_letters(v), [l] if !l.is_inverse()));
                let pure_middle = (0..n).all(|v| {
                    gamma.image(v).is_palindrome()
                        && gamma.image(v).middle_letter().map(|l| l.vertex()) == Some(v)
                });
                is_diagram && pure_middle && delta.compose(&gamma).unwrap() == alpha
            });
            out.check(ok, || format!("{name}: split {alpha:?}"));
        }
        let pool: Vec<GeneratorSymbol> = generator_pool(&g, SampleKind::Pure)
            .into_iter()
            .filter(|s| matches!(s, GeneratorSymbol::ElemPalindromic(..)))
            .collect();
        if pool.is_empty() {
            continue;
        }
        let inv_count = inversions(&g).len();
        assert_eq!(inv_count, n);
        let mut rng = rng(SEED ^ 14);
        for _ in 0..200 {
            let word = random_product(&pool, &mut rng, 8);
            let alpha = Automorphism::from_generators(&g, &word).unwrap();
            if alpha.is_identity() {
                continue;
            }
            // products of inversions send each vertex to itself or its inverse
            let collides = (0..n).all(|v| matches!(alpha.image_letters(v), [l] if l.vertex() == v));
            out.check(!collides, || format!("{name}: collision {word:?}"));
        }
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "word problem vs shuffle closure",
            criterion_1,
            Some(Duration::from_secs(60)),
        ),
        ("palindrome decision vs literal search", criterion_2, None),
        ("clique-palindromic normal form", criterion_3, None),
        (
            "relator suite n=2..6",
            criterion_4,
            Some(Duration::from_secs(30)),
        ),
        ("exact sequence mod 2", criterion_5, None),
        ("adjacent-domination criterion", criterion_6, None),
        (
            "factorization round trips",
            criterion_7,
            Some(Duration::from_secs(120)),
        ),
        ("Torelli generators and relator lifts", criterion_8, None),
        ("block structure", criterion_9, None),
        ("splittings and collisions", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (title, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let slow = limit.is_some_and(|l| elapsed > l);
        let ok = outcome.failures.is_empty() && !slow;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2}: {} {title} ({} checks, {} failures, {:.2?}{})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            outcome.checked,
            outcome.failures.len(),
            elapsed,
            if slow { ", over time limit" } else { "" },
        );
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
