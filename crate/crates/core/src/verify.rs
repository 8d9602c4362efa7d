//! Property suites with JSON reports.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::aut::{
    adjacent_transvections, chi1, chi2, diagram_generators, elementary_palindromics,
    format_generators, inversions, Automorphism, GeneratorSymbol,
};
use crate::error::{Error, Result};
use crate::factor::{factor_torelli_bfs, lift_relator, TorelliBudget};
use crate::graph::SimplicialGraph;
use crate::matrix::{
    block_decompose, evaluate, free_block_check, mod2_generated_subgroup, phi, phi2, relator_suite,
    RelatorFilter,
};
use crate::sample::{generator_pool, random_product, rng, SampleKind};

/// Mod-2 subgroups larger than this are not enumerated.
pub const MOD2_SUBGROUP_CAP: usize = 1 << 20;

const MAX_PRODUCT: usize = 8;

const MAX_INVERSION_SUBSETS_LOG2: usize = 16;

/// Outcome of one suite. `witnesses` lists every failed case.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub passed: usize,
    pub witnesses: Vec<Value>,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            checked: 0,
            passed: 0,
            witnesses: Vec::new(),
            details: Value::Null,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else {
            self.witnesses.push(witness());
        }
    }

    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

fn samples(
    graph: &Arc<SimplicialGraph>,
    kind: SampleKind,
    count: usize,
    seed: u64,
) -> Vec<(Vec<GeneratorSymbol>, Automorphism)> {
    let pool = generator_pool(graph, kind);
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let word = random_product(&pool, &mut rng, MAX_PRODUCT);
            let a = Automorphism::from_generators(graph, &word).expect("pool generators are valid");
            (word, a)
        })
        .collect()
}

/// Every relator instance of every family evaluates to the identity.
pub fn relators(n: usize, graph: Option<&SimplicialGraph>) -> SuiteReport {
    let filter = match graph {
        Some(g) => RelatorFilter::RGamma(g),
        None => RelatorFilter::All,
    };
    let mut report = SuiteReport::new("relators");
    let mut per_family = [0usize; 10];
    for rel in relator_suite(n, filter) {
        per_family[rel.family as usize - 1] += 1;
        let m = evaluate(n, &rel.word);
        report.record(
            m.is_identity(),
            || json!({ "relator": rel.name(), "value": m.rows() }),
        );
    }
    report.details = json!({ "n": n, "instancesPerFamily": per_family });
    report
}

/// Abelianised centraliser elements are block lower triangular with
/// permutation-like free blocks.
pub fn blocks(graph: &Arc<SimplicialGraph>, count: usize, seed: u64) -> SuiteReport {
    let dd = graph.domination();
    let mut report = SuiteReport::new("blocks");
    for (word, a) in samples(graph, SampleKind::Aut0Centralizer, count, seed) {
        let m = phi(&a);
        let dec = block_decompose(&m, dd);
        let free_ok = free_block_check(&m, dd);
        report.record(dec.violations.is_empty() && free_ok, || {
            json!({
                "generators": format_generators(graph, &word),
                "violations": dec.violations,
                "freeBlockCheck": free_ok,
            })
        });
    }
    report.details = json!({ "classSizes": dd.class_sizes() });
    report
}

/// Purity agrees with triviality mod 2, and the mod-2 image lies in the
/// subgroup generated by diagram automorphisms and adjacent transvections.
pub fn exactseq(graph: &Arc<SimplicialGraph>, count: usize, seed: u64) -> Result<SuiteReport> {
    let mut gens: Vec<GeneratorSymbol> = diagram_generators(graph);
    gens.extend(adjacent_transvections(graph));
    let images: Vec<_> = gens
        .iter()
        .map(|s| Automorphism::generator(graph, s.clone()).map(|a| phi2(&a)))
        .collect::<Result<_>>()?;
    let subgroup = mod2_generated_subgroup(graph.len(), &images, MOD2_SUBGROUP_CAP)?;
    let mut report = SuiteReport::new("exactseq");
    for (word, a) in samples(graph, SampleKind::Centralizer, count, seed) {
        let pure = a.predicates().is_pure;
        let m = phi2(&a);
        let agrees = pure == m.is_identity();
        let member = subgroup.contains(&m);
        report.record(agrees && member, || {
            json!({
                "generators": format_generators(graph, &word),
                "isPure": pure,
                "phi2": m.rows(),
                "inImage": member,
            })
        });
    }
    report.details = json!({ "imageOrder": subgroup.len() });
    Ok(report)
}

/// Adjacent dominations are exactly what makes the centraliser larger than
/// the palindromic group.
pub fn adjdom(graph: &Arc<SimplicialGraph>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("adjdom");
    let has = graph.has_adjacent_domination();
    let mut witness = None;
    if has {
        for s in adjacent_transvections(graph) {
            let p = Automorphism::generator(graph, s.clone())?.predicates();
            if p.in_ciota && !p.is_palindromic {
                witness = Some(s.display(graph));
                break;
            }
        }
        report.record(
            witness.is_some(),
            || json!({ "missing": "adjacent transvection" }),
        );
    } else {
        for s in generator_pool(graph, SampleKind::Centralizer) {
            let p = Automorphism::generator(graph, s.clone())?.predicates();
            report.record(
                p.is_palindromic,
                || json!({ "generator": s.display(graph) }),
            );
        }
    }
    report.details = json!({ "hasAdjacentDomination": has, "transvection": witness });
    Ok(report)
}

/// Palindromic elements split as diagram times pure, and products of
/// elementary palindromic automorphisms never collide with products of
/// inversions.
pub fn splittings(graph: &Arc<SimplicialGraph>, count: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("splittings");
    for (word, a) in samples(graph, SampleKind::Palindromic, count, seed) {
        let outcome = a.split_diagram_pure().and_then(|(delta, gamma)| {
            let back = delta.compose(&gamma)?;
            let is_diagram = delta
                .images()
                .iter()
                .all(|im| im.len() == 1 && !im[0].is_inverse());
            Ok(back == a && gamma.predicates().is_pure && is_diagram)
        });
        let ok = matches!(outcome, Ok(true));
        report.record(ok, || {
            json!({
                "generators": format_generators(graph, &word),
                "error": outcome.err().map(|e| e.to_string()),
            })
        });
    }
    let inv = inversions(graph);
    if inv.len() > MAX_INVERSION_SUBSETS_LOG2 {
        return Err(Error::SizeLimit {
            size: graph.len(),
            limit: MAX_INVERSION_SUBSETS_LOG2,
        });
    }
    let mut inversion_products = std::collections::HashSet::new();
    for mask in 0u64..(1 << inv.len()) {
        let word: Vec<_> = (0..inv.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| inv[i].clone())
            .collect();
        inversion_products
            .insert(Automorphism::from_generators(graph, &word)?.without_provenance());
    }
    let pool = elementary_palindromics(graph);
    let mut rng = rng(seed ^ 0x5eed);
    let mut attempts = 0;
    if !pool.is_empty() {
        for _ in 0..count {
            let word = random_product(&pool, &mut rng, MAX_PRODUCT);
            let a = Automorphism::from_generators(graph, &word)?.without_provenance();
            if a.is_identity() {
                continue;
            }
            attempts += 1;
            report.record(
                !inversion_products.contains(&a),
                || json!({ "collision": format_generators(graph, &word) }),
            );
        }
    }
    report.details = json!({ "collisionAttempts": attempts });
    Ok(report)
}

/// Torelli generators and relator lifts act trivially on homology, and
/// nontrivial lifts are recovered by the bounded search.
pub fn torelli(graph: &Arc<SimplicialGraph>, budget: TorelliBudget) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("torelli");
    let n = graph.len();
    let (mut chis, mut nontrivial_chis) = (0, 0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (name, chi) in [
                    ("chi1", chi1(graph, i, j, k)),
                    ("chi2", chi2(graph, i, j, k)),
                ] {
                    let Ok(chi) = chi else { continue };
                    chis += 1;
                    if !chi.is_identity() {
                        nontrivial_chis += 1;
                    }
                    report.record(phi(&chi).is_identity(), || {
                        json!({
                            "generator": format!("{name}({},{},{})", graph.name(i), graph.name(j), graph.name(k))
                        })
                    });
                }
            }
        }
    }
    let (mut lifts, mut nontrivial_lifts, mut max_depth) = (0, 0, 0);
    for rel in relator_suite(n, RelatorFilter::RGamma(graph)) {
        lifts += 1;
        let lift = lift_relator(graph, &rel)?;
        let trivial_on_homology = phi(&lift).is_identity();
        let recovered = if lift.is_identity() {
            Ok(0)
        } else {
            nontrivial_lifts += 1;
            factor_torelli_bfs(&lift, budget).map(|tf| tf.depth)
        };
        if let Ok(d) = recovered {
            max_depth = max_depth.max(d);
        }
        report.record(trivial_on_homology && recovered.is_ok(), || {
            json!({
                "relator": rel.name(),
                "trivialOnHomology": trivial_on_homology,
                "error": recovered.err().map(|e| e.to_string()),
            })
        });
    }
    report.details = json!({
        "chiGenerators": chis,
        "nontrivialChiGenerators": nontrivial_chis,
        "relatorLifts": lifts,
        "nontrivialLifts": nontrivial_lifts,
        "maxSearchDepth": max_depth,
    });
    Ok(report)
}
