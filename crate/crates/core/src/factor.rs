//! Factorization of automorphisms into the standard generating sets.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::aut::{
    chi1_word, chi2_word, diagram_generators, elementary_palindromics, format_generators,
    inversions, invert_word, Automorphism, AutomorphismJson, GeneratorSymbol,
};
use crate::error::{Error, Result};
use crate::graph::{ClassKind, SimplicialGraph, VertexSet, DEFAULT_AUTOMORPHISM_BOUND};
use crate::matrix::{factor_theta, lift_word, phi, reduce_level2, IntegerMatrix, RelatorInstance};
use crate::word::{GroupWord, Letter};

/// Limits for the Torelli search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorelliBudget {
    pub depth: usize,
    pub nodes: usize,
    /// Radius of the ball of conjugators.
    pub radius: usize,
}

impl Default for TorelliBudget {
    fn default() -> Self {
        TorelliBudget {
            depth: 4,
            nodes: 1_000_000,
            radius: 1,
        }
    }
}

/// How the Torelli part of a factorization was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TorelliMethod {
    /// Nothing to do.
    Trivial,
    Search,
    /// Greedy length descent over the pure palindromic generators, applied
    /// to the whole input rather than to its Torelli part.
    Descent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChiKind {
    Chi1,
    Chi2,
}

/// A conjugate `c chi c^-1` of a Torelli generator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorelliSymbol {
    pub kind: ChiKind,
    pub indices: [usize; 3],
    pub inverse: bool,
    pub conjugator: Vec<GeneratorSymbol>,
}

impl TorelliSymbol {
    pub fn inverse(&self) -> Self {
        TorelliSymbol {
            inverse: !self.inverse,
            ..self.clone()
        }
    }

    pub fn expand(&self, g: &SimplicialGraph) -> Vec<GeneratorSymbol> {
        let [i, j, k] = self.indices;
        let core = match self.kind {
            ChiKind::Chi1 => chi1_word(g, i, j, k),
            ChiKind::Chi2 => chi2_word(g, i, j, k),
        }
        .expect("symbol built from a well-defined triple");
        let core = if self.inverse {
            invert_word(&core)
        } else {
            core
        };
        [self.conjugator.clone(), core, invert_word(&self.conjugator)].concat()
    }

    pub fn display(&self, g: &SimplicialGraph) -> String {
        let [i, j, k] = self.indices;
        let head = match self.kind {
            ChiKind::Chi1 => "chi1",
            ChiKind::Chi2 => "chi2",
        };
        let mut s = format!("{head}({},{},{})", g.name(i), g.name(j), g.name(k));
        if self.inverse {
            s.push_str("^-1");
        }
        if !self.conjugator.is_empty() {
            s = format!("[{}]{s}", format_generators(g, &self.conjugator));
        }
        s
    }
}

/// `from_generators(word) ∘ residual` equals the input.
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub word: Vec<GeneratorSymbol>,
    /// The Torelli part when it was found as a product of conjugated generators.
    pub torelli: Vec<TorelliSymbol>,
    pub method: TorelliMethod,
    /// `None` when the input was fully factored.
    pub residual: Option<Automorphism>,
    pub nodes: usize,
    pub depth: usize,
}

impl FactorizationResult {
    fn complete(word: Vec<GeneratorSymbol>) -> Self {
        FactorizationResult {
            word,
            torelli: Vec::new(),
            method: TorelliMethod::Trivial,
            residual: None,
            nodes: 0,
            depth: 0,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.residual.as_ref().is_none_or(Automorphism::is_identity)
    }

    pub fn to_json(&self, g: &SimplicialGraph) -> FactorizationJson {
        FactorizationJson {
            word: self.word.iter().map(|s| s.display(g)).collect(),
            torelli: self.torelli.iter().map(|s| s.display(g)).collect(),
            method: self.method,
            residual: self.residual.as_ref().map(Automorphism::to_json),
            nodes: self.nodes,
            depth: self.depth,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationJson {
    pub word: Vec<String>,
    pub torelli: Vec<String>,
    pub method: TorelliMethod,
    pub residual: Option<AutomorphismJson>,
    pub nodes: usize,
    pub depth: usize,
}

/// Total length of the images of the vertices in `set`.
pub fn collins_length(alpha: &Automorphism, set: VertexSet) -> usize {
    set.iter().map(|v| alpha.image_letters(v).len()).sum()
}

fn total_length(alpha: &Automorphism) -> usize {
    alpha.images().iter().map(Vec::len).sum()
}

/// True when `L(ai^ei aj^ej) > L(ai) + L(aj) - 2(floor(L(ai)/2) + 1)` fails.
pub fn cancellation_violation(ai: &GroupWord, aj: &GroupWord, ei: i64, ej: i64) -> Result<bool> {
    if ai.equal(aj)? {
        return Err(Error::Precondition(
            "the two images must be distinct".into(),
        ));
    }
    let prod = ai.pow(ei).mul(&aj.pow(ej));
    let (li, lj) = (ai.len() as i64, aj.len() as i64);
    Ok(!(prod.len() as i64 > li + lj - 2 * (li / 2 + 1)))
}

fn symbol_fixes(s: &GeneratorSymbol, fixed: VertexSet) -> bool {
    s.moved().is_disjoint(fixed)
}

/// Deletes adjacent pairs `s s^-1` until none remain.
fn cancel_adjacent(word: Vec<GeneratorSymbol>) -> Vec<GeneratorSymbol> {
    let mut out: Vec<GeneratorSymbol> = Vec::with_capacity(word.len());
    for s in word {
        if out.last() == Some(&s.inverse()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

fn verify_word(alpha: &Automorphism, word: &[GeneratorSymbol]) -> Result<()> {
    let back = Automorphism::from_generators(alpha.graph(), word)?;
    if &back != alpha {
        return Err(Error::AssumptionFailed(
            "factorization does not recompose to the input".into(),
        ));
    }
    Ok(())
}

/// Factor an element of the stabiliser subgroup used in the length descent
/// for the vertex `v`.
///
/// `alpha` must be pure palindromic and fix every vertex outside `X_v`.
pub fn factor_stabilizer_y(alpha: &Automorphism, v: usize) -> Result<FactorizationResult> {
    let graph = Arc::clone(alpha.graph());
    let g = &*graph;
    let part = g.gamma_v_partition(v);
    let xv = part.xv;
    if !alpha.moved().is_subset(xv) {
        return Err(Error::Precondition(format!(
            "automorphism moves vertices outside X_{}",
            g.name(v)
        )));
    }
    if !alpha.predicates().is_pure {
        return Err(Error::NotPurePalindromic);
    }
    let gamma: Vec<usize> = part.gamma.iter().collect();
    let mut cur = alpha.clone().without_provenance();
    let mut applied: Vec<GeneratorSymbol> = Vec::new();
    let base = xv.len();
    let mut len = collins_length(&cur, xv);
    while len > base {
        let mut step = None;
        'search: for &i in &gamma {
            for j in xv.iter() {
                if i == j || !g.dominates(j, i) {
                    continue;
                }
                let (ai, aj) = (cur.image(i), cur.image(j));
                if ai.equal(&aj)? {
                    continue;
                }
                for (ei, ej) in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
                    if !cancellation_violation(&ai, &aj, ei, ej)? {
                        continue;
                    }
                    let p = GeneratorSymbol::ElemPalindromic(j, i);
                    let rule = match (ei, ej) {
                        (1, 1) => vec![p],
                        (-1, -1) => vec![GeneratorSymbol::Inversion(j), p.inverse()],
                        _ => vec![GeneratorSymbol::Inversion(j), p],
                    };
                    let next =
                        cur.compose_unchecked(&Automorphism::from_generators(&graph, &rule)?);
                    let next_len = collins_length(&next, xv);
                    if next_len < len {
                        step = Some((rule, next, next_len));
                        break 'search;
                    }
                }
            }
        }
        let (rule, next, next_len) = step.ok_or(Error::DescentStall(len))?;
        applied.extend(rule);
        cur = next.without_provenance();
        len = next_len;
    }
    // cur is now a product of inversions of X_v
    let mut tail = Vec::new();
    for s in xv.iter() {
        let img = cur.image_letters(s);
        if img == [Letter::neg(s)] {
            tail.push(GeneratorSymbol::Inversion(s));
        } else if img != [Letter::pos(s)] {
            return Err(Error::AssumptionFailed(format!(
                "image of {} is not {} or its inverse",
                g.name(s),
                g.name(s)
            )));
        }
    }
    let word = [tail, invert_word(&applied)].concat();
    verify_word(alpha, &word)?;
    Ok(FactorizationResult::complete(word))
}

/// Precompose a pure palindromic automorphism with inversions and elementary
/// palindromic automorphisms until every image has support connected in the
/// complement graph. Returns `(theta, alpha ∘ theta)`.
pub fn make_simple(alpha: &Automorphism) -> Result<(Vec<GeneratorSymbol>, Automorphism)> {
    let graph = Arc::clone(alpha.graph());
    let g = &*graph;
    if !alpha.predicates().is_pure {
        return Err(Error::NotPurePalindromic);
    }
    let dd = g.domination();
    let mut theta: Vec<GeneratorSymbol> = Vec::new();
    let mut cur = alpha.clone().without_provenance();
    for _ in 0..=g.len() {
        let preds = cur.predicates();
        if preds.is_simple {
            return Ok((theta, cur));
        }
        let mut best: Option<(usize, usize)> = None;
        for name in &preds.non_simple_vertices {
            let u = g.vertex(name)?;
            let rk = GroupWord::generator(&graph, u).rank()?;
            if best.is_none_or(|(_, r)| rk > r) {
                best = Some((u, rk));
            }
        }
        let (v, _) = best.expect("non-simple set is nonempty");
        let class = *dd
            .adj_classes
            .iter()
            .find(|c| c.contains(v))
            .expect("adjacent classes cover the vertices");
        for u in class.iter() {
            let bf = cur.image(u).basic_form()?;
            for (root, r) in &bf.factors {
                if root.len() != 1 {
                    continue;
                }
                let w = root.letters()[0].vertex();
                if class.contains(w) {
                    continue;
                }
                if !g.dominates(u, w) {
                    return Err(Error::AssumptionFailed(format!(
                        "{} does not dominate {}",
                        g.name(w),
                        g.name(u)
                    )));
                }
                let img = cur.image_letters(w);
                let ell: i64 = match img {
                    [l] if l.vertex() == w => l.sign(),
                    _ => {
                        return Err(Error::AssumptionFailed(format!(
                            "image of {} is not {} or its inverse",
                            g.name(w),
                            g.name(w)
                        )))
                    }
                };
                if r % 2 != 0 {
                    return Err(Error::AssumptionFailed(format!(
                        "odd exponent of {} in the image of {}",
                        g.name(w),
                        g.name(u)
                    )));
                }
                // P(u,w)^k sends u to w^k u w^k and cancels w^r when k = -l r / 2
                let k = -ell * r / 2;
                let p = GeneratorSymbol::ElemPalindromic(u, w);
                let sym = if k < 0 { p.inverse() } else { p };
                let step = vec![sym; k.unsigned_abs() as usize];
                cur = cur.compose_unchecked(&Automorphism::from_generators(&graph, &step)?);
                theta.extend(step);
            }
        }
        let members: Vec<usize> = class.iter().collect();
        let k = members.len();
        let mut m = IntegerMatrix::zeros(k);
        for (c, &u) in members.iter().enumerate() {
            let img = cur.image(u);
            if !img.support().is_subset(class) {
                return Err(Error::AssumptionFailed(format!(
                    "image of {} leaves its adjacent class",
                    g.name(u)
                )));
            }
            let exps = img.exponent_vector();
            for (r, &w) in members.iter().enumerate() {
                m.set(r, c, exps[w]);
            }
        }
        let mword = reduce_level2(&m, std::slice::from_ref(&(0..k)), &|_, _| true)?;
        let lifted = invert_word(&lift_word_over(&members, &mword));
        cur = cur.compose_unchecked(&Automorphism::from_generators(&graph, &lifted)?);
        theta.extend(lifted);
        cur = cur.without_provenance();
    }
    if cur.predicates().is_simple {
        Ok((theta, cur))
    } else {
        Err(Error::DescentStall(total_length(&cur)))
    }
}

fn lift_word_over(members: &[usize], word: &[crate::matrix::MatrixSymbol]) -> Vec<GeneratorSymbol> {
    word.iter().map(|s| s.lift(members)).collect()
}

type GeneratorCache = HashMap<(String, usize, u64), Arc<Vec<(TorelliSymbol, Automorphism)>>>;

fn cached_torelli_generators(
    graph: &Arc<SimplicialGraph>,
    radius: usize,
    fixed: VertexSet,
) -> Arc<Vec<(TorelliSymbol, Automorphism)>> {
    static CACHE: OnceLock<Mutex<GeneratorCache>> = OnceLock::new();
    let key = (
        serde_json::to_string(&graph.to_json()).expect("graph serializes"),
        radius,
        fixed.bits(),
    );
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&key) {
        return Arc::clone(hit);
    }
    let gens = Arc::new(torelli_generators(graph, radius, fixed));
    cache
        .lock()
        .expect("cache lock")
        .insert(key, Arc::clone(&gens));
    gens
}

/// Conjugated Torelli generators fixing `fixed`, deduplicated by their action.
pub fn torelli_generators(
    graph: &Arc<SimplicialGraph>,
    radius: usize,
    fixed: VertexSet,
) -> Vec<(TorelliSymbol, Automorphism)> {
    let g = &**graph;
    let n = g.len();
    let dd = g.domination();
    let mut cores = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                if g.dominates(i, j) && g.dominates(i, k) {
                    cores.push((ChiKind::Chi1, [i, j, k]));
                }
                if dd.class_of[i] == dd.class_of[j] && dd.class_of[i] == dd.class_of[k] {
                    cores.push((ChiKind::Chi2, [i, j, k]));
                }
            }
        }
    }
    // diagram conjugates only relabel the cores, so the ball stays pure
    let mut ball_gens: Vec<GeneratorSymbol> = inversions(g);
    for p in elementary_palindromics(g) {
        ball_gens.push(p.inverse());
        ball_gens.push(p);
    }
    ball_gens.retain(|s| symbol_fixes(s, fixed));
    let mut ball: Vec<Vec<GeneratorSymbol>> = vec![Vec::new()];
    let mut seen_ball: HashMap<Vec<Vec<Letter>>, ()> = HashMap::new();
    seen_ball.insert(Automorphism::identity(graph).images().to_vec(), ());
    let mut frontier = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &ball_gens {
                let cand: Vec<GeneratorSymbol> = [w.clone(), vec![s.clone()]].concat();
                let a = Automorphism::from_generators(graph, &cand).expect("valid generators");
                if seen_ball.insert(a.images().to_vec(), ()).is_none() {
                    next.push(cand);
                }
            }
        }
        ball.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    let mut seen: HashMap<Vec<Vec<Letter>>, ()> = HashMap::new();
    seen.insert(Automorphism::identity(graph).images().to_vec(), ());
    for &(kind, indices) in &cores {
        for inverse in [false, true] {
            for conj in &ball {
                let sym = TorelliSymbol {
                    kind,
                    indices,
                    inverse,
                    conjugator: conj.clone(),
                };
                let word = sym.expand(g);
                if !word.iter().all(|s| symbol_fixes(s, fixed)) {
                    continue;
                }
                let a = Automorphism::from_generators(graph, &word)
                    .expect("valid generators")
                    .without_provenance();
                if seen.insert(a.images().to_vec(), ()).is_none() {
                    out.push((sym, a));
                }
            }
        }
    }
    out
}

/// Torelli factorization found by search.
#[derive(Debug, Clone)]
pub struct TorelliFactorization {
    pub symbols: Vec<TorelliSymbol>,
    pub nodes: usize,
    pub depth: usize,
}

struct Node {
    images: Vec<Vec<Letter>>,
    parent: usize,
    gen: usize,
    depth: usize,
}

struct Side {
    nodes: Vec<Node>,
    index: HashMap<Vec<Vec<Letter>>, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl Side {
    fn new(root: &Automorphism) -> Self {
        let images = root.images().to_vec();
        Side {
            nodes: vec![Node {
                images: images.clone(),
                parent: usize::MAX,
                gen: usize::MAX,
                depth: 0,
            }],
            index: HashMap::from([(images, 0)]),
            frontier: vec![0],
            depth: 0,
        }
    }

    /// Generator indices from the root to `id`, in application order.
    fn path(&self, mut id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.nodes[id].parent != usize::MAX {
            out.push(self.nodes[id].gen);
            id = self.nodes[id].parent;
        }
        out.reverse();
        out
    }
}

fn raw_automorphism(graph: &Arc<SimplicialGraph>, images: &[Vec<Letter>]) -> Automorphism {
    let words = images
        .iter()
        .map(|w| GroupWord::new(graph, w).expect("letters over this graph"))
        .collect();
    Automorphism::from_images(graph, words).expect("images of an automorphism")
}

/// Bidirectional breadth-first search for `tau` as a product of conjugated
/// Torelli generators.
pub fn factor_torelli_bfs(
    tau: &Automorphism,
    budget: TorelliBudget,
) -> Result<TorelliFactorization> {
    factor_torelli_bfs_fixing(tau, budget, VertexSet::EMPTY)
}

pub fn factor_torelli_bfs_fixing(
    tau: &Automorphism,
    budget: TorelliBudget,
    fixed: VertexSet,
) -> Result<TorelliFactorization> {
    let graph = Arc::clone(tau.graph());
    if !tau.predicates().is_torelli {
        return Err(Error::Precondition(
            "automorphism is not in the Torelli group".into(),
        ));
    }
    if tau.is_identity() {
        return Ok(TorelliFactorization {
            symbols: Vec::new(),
            nodes: 1,
            depth: 0,
        });
    }
    let gens = cached_torelli_generators(&graph, budget.radius, fixed);
    let mut fwd = Side::new(&Automorphism::identity(&graph));
    let mut bwd = Side::new(tau);
    let mut total = 2;
    while fwd.depth + bwd.depth < budget.depth {
        let grow_fwd = fwd.frontier.len() <= bwd.frontier.len();
        let (side, other) = if grow_fwd {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        if side.frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for &id in &side.frontier.clone() {
            let here = raw_automorphism(&graph, &side.nodes[id].images);
            for (gi, (_, gen)) in gens.iter().enumerate() {
                let images = here.compose_unchecked(gen).images().to_vec();
                if side.index.contains_key(&images) {
                    continue;
                }
                let depth = side.nodes[id].depth + 1;
                let new_id = side.nodes.len();
                side.nodes.push(Node {
                    images: images.clone(),
                    parent: id,
                    gen: gi,
                    depth,
                });
                side.index.insert(images.clone(), new_id);
                next.push(new_id);
                total += 1;
                if let Some(&hit) = other.index.get(&images) {
                    let (f_id, b_id) = if grow_fwd {
                        (new_id, hit)
                    } else {
                        (hit, new_id)
                    };
                    let (fwd_path, bwd_path) = if grow_fwd {
                        (side.path(f_id), other.path(b_id))
                    } else {
                        (other.path(f_id), side.path(b_id))
                    };
                    // tau ∘ b1 ∘ ... ∘ bm = f1 ∘ ... ∘ fl
                    let mut symbols: Vec<TorelliSymbol> =
                        fwd_path.iter().map(|&i| gens[i].0.clone()).collect();
                    symbols.extend(bwd_path.iter().rev().map(|&i| gens[i].0.inverse()));
                    let depth = symbols.len();
                    let word: Vec<GeneratorSymbol> =
                        symbols.iter().flat_map(|s| s.expand(&graph)).collect();
                    verify_word(tau, &word)?;
                    return Ok(TorelliFactorization {
                        symbols,
                        nodes: total,
                        depth,
                    });
                }
                if total >= budget.nodes {
                    return Err(Error::TorelliBudget {
                        nodes: total,
                        depth: fwd.depth.max(bwd.depth),
                    });
                }
            }
        }
        side.frontier = next;
        side.depth += 1;
    }
    Err(Error::TorelliBudget {
        nodes: total,
        depth: fwd.depth + bwd.depth,
    })
}

/// Greedy length descent: find a generator word equal to `alpha`.
fn descend(
    alpha: &Automorphism,
    gens: &[(GeneratorSymbol, Automorphism)],
) -> Result<Vec<GeneratorSymbol>> {
    let graph = Arc::clone(alpha.graph());
    let n = graph.len();
    let mut cur = alpha.clone().without_provenance();
    let mut left: Vec<GeneratorSymbol> = Vec::new();
    let mut right: Vec<GeneratorSymbol> = Vec::new();
    let limit = 64 * (total_length(alpha) + n);
    for _ in 0..limit {
        let len = total_length(&cur);
        if len == n {
            break;
        }
        let mut best: Option<(usize, bool, Vec<usize>, Automorphism)> = None;
        let consider = |best: &mut Option<(usize, bool, Vec<usize>, Automorphism)>,
                        cand: Automorphism,
                        on_left: bool,
                        idx: Vec<usize>| {
            let l = total_length(&cand);
            if l < len && best.as_ref().is_none_or(|b| l < b.0) {
                *best = Some((l, on_left, idx, cand));
            }
        };
        for (i, (_, a)) in gens.iter().enumerate() {
            consider(&mut best, cur.compose_unchecked(a), false, vec![i]);
            consider(&mut best, a.compose_unchecked(&cur), true, vec![i]);
        }
        if best.is_none() {
            for (i, (_, a)) in gens.iter().enumerate() {
                let once = cur.compose_unchecked(a);
                for (j, (_, b)) in gens.iter().enumerate() {
                    consider(&mut best, once.compose_unchecked(b), false, vec![i, j]);
                }
            }
        }
        let (_, on_left, idx, next) = best.ok_or(Error::DescentStall(len))?;
        for i in idx {
            if on_left {
                left.push(gens[i].0.clone());
            } else {
                right.push(gens[i].0.clone());
            }
        }
        cur = next.without_provenance();
    }
    // every image is now a single letter
    let mut middle = Vec::new();
    for v in 0..n {
        match cur.image_letters(v) {
            [l] if l.vertex() == v && l.is_inverse() => middle.push(GeneratorSymbol::Inversion(v)),
            [l] if *l == Letter::pos(v) => {}
            _ => return Err(Error::DescentStall(total_length(&cur))),
        }
    }
    // left_k ... left_1 alpha right_1 ... right_m = middle
    let mut word: Vec<GeneratorSymbol> = left.iter().map(GeneratorSymbol::inverse).collect();
    word.extend(middle);
    word.extend(invert_word(&right));
    Ok(word)
}

fn pure_generators(
    graph: &Arc<SimplicialGraph>,
    fixed: VertexSet,
) -> Vec<(GeneratorSymbol, Automorphism)> {
    let g = &**graph;
    let mut syms = inversions(g);
    for p in elementary_palindromics(g) {
        syms.push(p.inverse());
        syms.push(p);
    }
    syms.into_iter()
        .filter(|s| symbol_fixes(s, fixed))
        .map(|s| {
            let a = Automorphism::generator(graph, s.clone())
                .expect("valid generator")
                .without_provenance();
            (s, a)
        })
        .collect()
}

/// Options shared by the factorization pipelines.
#[derive(Debug, Clone, Copy)]
pub struct FactorOptions {
    pub torelli: TorelliBudget,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            torelli: TorelliBudget {
                nodes: 1_000,
                ..TorelliBudget::default()
            },
        }
    }
}

/// Factors the Torelli element `tau` by search. When the budget runs out,
/// or `tau` is far longer than `whole`, descends from `whole` instead and
/// returns a word for it.
fn factor_torelli_part(
    tau: &Automorphism,
    whole: &Automorphism,
    fixed: VertexSet,
    opts: FactorOptions,
) -> Result<FactorizationResult> {
    let graph = tau.graph();
    if tau.is_identity() {
        return Ok(FactorizationResult::complete(Vec::new()));
    }
    let descent = |nodes, depth| {
        descend(whole, &pure_generators(graph, fixed)).map(|word| FactorizationResult {
            word,
            torelli: Vec::new(),
            method: TorelliMethod::Descent,
            residual: None,
            nodes,
            depth,
        })
    };
    if total_length(tau) > 4 * total_length(whole) {
        if let Ok(res) = descent(0, 0) {
            return Ok(res);
        }
    }
    match factor_torelli_bfs_fixing(tau, opts.torelli, fixed) {
        Ok(tf) => Ok(FactorizationResult {
            word: tf.symbols.iter().flat_map(|s| s.expand(graph)).collect(),
            torelli: tf.symbols,
            method: TorelliMethod::Search,
            residual: None,
            nodes: tf.nodes,
            depth: tf.depth,
        }),
        Err(Error::TorelliBudget { nodes, depth }) => {
            descent(nodes, depth).map_err(|_| Error::TorelliBudget { nodes, depth })
        }
        Err(e) => Err(e),
    }
}

fn factor_pure_fixing(
    alpha: &Automorphism,
    fixed: VertexSet,
    opts: FactorOptions,
) -> Result<FactorizationResult> {
    let graph = Arc::clone(alpha.graph());
    let g = &*graph;
    if !alpha.predicates().is_pure {
        return Err(Error::NotPurePalindromic);
    }
    let m = phi(alpha);
    let lift = lift_word(g, &factor_theta(&m, g.domination())?);
    let lifted = Automorphism::from_generators(&graph, &invert_word(&lift))?;
    let tau = alpha.compose_unchecked(&lifted).without_provenance();
    if !phi(&tau).is_identity() {
        return Err(Error::AssumptionFailed(
            "residual acts nontrivially on homology".into(),
        ));
    }
    let mut res = factor_torelli_part(&tau, alpha, fixed, opts)?;
    if res.method != TorelliMethod::Descent {
        res.word.extend(lift);
    }
    res.word = cancel_adjacent(res.word);
    verify_word(alpha, &res.word)?;
    Ok(res)
}

/// Factor a pure palindromic automorphism into inversions and elementary
/// palindromic automorphisms.
pub fn factor_pure_palindromic(alpha: &Automorphism) -> Result<FactorizationResult> {
    factor_pure_fixing(alpha, VertexSet::EMPTY, FactorOptions::default())
}

pub fn factor_pure_palindromic_with(
    alpha: &Automorphism,
    opts: FactorOptions,
) -> Result<FactorizationResult> {
    factor_pure_fixing(alpha, VertexSet::EMPTY, opts)
}

fn prepend_diagram(delta: &Automorphism, mut res: FactorizationResult) -> FactorizationResult {
    if !delta.is_identity() {
        let sym = delta
            .provenance()
            .and_then(|p| p.first().cloned())
            .expect("diagram carries its symbol");
        res.word.insert(0, sym);
    }
    res
}

/// Factor a palindromic automorphism: diagram part first, then the pure part.
pub fn factor_palindromic(alpha: &Automorphism) -> Result<FactorizationResult> {
    factor_palindromic_with(alpha, FactorOptions::default())
}

pub fn factor_palindromic_with(
    alpha: &Automorphism,
    opts: FactorOptions,
) -> Result<FactorizationResult> {
    let (delta, gamma) = alpha.split_diagram_pure()?;
    let res = factor_pure_fixing(&gamma, VertexSet::EMPTY, opts)?;
    let res = prepend_diagram(&delta, res);
    verify_word(alpha, &res.word)?;
    Ok(res)
}

/// As [`factor_palindromic`], emitting only generators that fix every vertex in `fixed`.
pub fn factor_with_fixed(alpha: &Automorphism, fixed: &[usize]) -> Result<FactorizationResult> {
    factor_with_fixed_with(alpha, fixed, FactorOptions::default())
}

pub fn factor_with_fixed_with(
    alpha: &Automorphism,
    fixed: &[usize],
    opts: FactorOptions,
) -> Result<FactorizationResult> {
    let g = alpha.graph();
    let fixed_set: VertexSet = fixed.iter().copied().collect();
    for &v in fixed {
        if v >= g.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if alpha.image_letters(v) != [Letter::pos(v)] {
            return Err(Error::Precondition(format!(
                "automorphism moves the fixed vertex {}",
                g.name(v)
            )));
        }
    }
    let (delta, gamma) = alpha.split_diagram_pure()?;
    let res = match factor_pure_fixing(&gamma, fixed_set, opts) {
        Ok(r) => r,
        Err(Error::TorelliBudget { .. }) | Err(Error::DescentStall(_)) => {
            return Err(Error::FixedSetViolated(
                "no factorization found under the symbol filter".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let res = prepend_diagram(&delta, res);
    if let Some(bad) = res.word.iter().find(|s| !symbol_fixes(s, fixed_set)) {
        return Err(Error::FixedSetViolated(format!(
            "{} moves a fixed vertex",
            bad.display(g)
        )));
    }
    verify_word(alpha, &res.word)?;
    Ok(res)
}

/// Column operations clearing `Phi_2` with diagram automorphisms and
/// adjacent transvections. Returns the generators `h` with
/// `Phi_2(alpha ∘ h_1 ∘ ... ∘ h_m) = I`. Signs are chosen to shrink the
/// integer entries, so the pure remainder stays short.
fn clear_mod2(alpha: &Automorphism) -> Option<Vec<GeneratorSymbol>> {
    let g = &**alpha.graph();
    let dd = g.domination();
    let order = &dd.vertex_order;
    let mut m = phi(alpha);
    let mut ops: Vec<GeneratorSymbol> = Vec::new();
    let dim = g.len();
    let odd = |x: i64| x.rem_euclid(2) == 1;
    // column t += s * column a, realised by tau(t, a)^s
    let add_col =
        |m: &mut IntegerMatrix, ops: &mut Vec<GeneratorSymbol>, r: usize, t: usize, a: usize| {
            let (x, y) = (m.get(r, t), m.get(r, a));
            let s = if x == 0 {
                1
            } else {
                -(x.signum() * y.signum())
            };
            m.add_column_multiple(t, a, s);
            let sym = GeneratorSymbol::Transvection(order[t], order[a]);
            ops.push(if s < 0 { sym.inverse() } else { sym });
        };
    for k in 0..dd.classes.len() {
        let range = dd.class_range(k);
        for r in range.clone() {
            if (range.end..dim).any(|c| odd(m.get(r, c))) {
                return None;
            }
        }
        match dd.class_kind[k] {
            ClassKind::Free => {
                let mut pivot_of = vec![usize::MAX; dim];
                for c in range.clone() {
                    let rows: Vec<usize> = range.clone().filter(|&r| odd(m.get(r, c))).collect();
                    if rows.len() != 1 {
                        return None;
                    }
                    pivot_of[rows[0]] = c;
                }
                if range.clone().any(|p| pivot_of[p] == usize::MAX) {
                    return None;
                }
                if range.clone().any(|p| pivot_of[p] != p) {
                    // new column p is the old column whose pivot is p
                    let mut perm: Vec<usize> = (0..dim).collect();
                    for p in range.clone() {
                        perm[order[p]] = order[pivot_of[p]];
                    }
                    let sym = GeneratorSymbol::Diagram(perm);
                    if sym.validate(g).is_err() {
                        return None;
                    }
                    let old = m.clone();
                    for p in range.clone() {
                        for r in 0..dim {
                            m.set(r, p, old.get(r, pivot_of[p]));
                        }
                    }
                    ops.push(sym);
                }
            }
            ClassKind::Abelian => {
                let mut done = Vec::new();
                for r in range.clone() {
                    let p = range
                        .clone()
                        .find(|&c| !done.contains(&c) && odd(m.get(r, c)))?;
                    if !odd(m.get(r, r)) {
                        add_col(&mut m, &mut ops, r, r, p);
                    }
                    for c in range.clone() {
                        if c != r && odd(m.get(r, c)) {
                            add_col(&mut m, &mut ops, r, c, r);
                        }
                    }
                    done.push(r);
                }
            }
        }
        for r in range.clone() {
            for c in 0..range.start {
                if odd(m.get(r, c)) {
                    let (vc, vr) = (order[c], order[r]);
                    if !(g.adjacent(vc, vr) && g.dominates(vc, vr)) {
                        return None;
                    }
                    add_col(&mut m, &mut ops, r, c, r);
                }
            }
        }
    }
    if !m.mod2().is_identity() {
        return None;
    }
    Some(ops)
}

/// Factor an automorphism commuting with the hyperelliptic involution into
/// diagram automorphisms, adjacent transvections, inversions and elementary
/// palindromic automorphisms.
pub fn factor_centralizer_iota(alpha: &Automorphism) -> Result<FactorizationResult> {
    factor_centralizer_iota_with(alpha, FactorOptions::default())
}

pub fn factor_centralizer_iota_with(
    alpha: &Automorphism,
    opts: FactorOptions,
) -> Result<FactorizationResult> {
    let graph = Arc::clone(alpha.graph());
    let g = &*graph;
    if !alpha.commutes_with_iota() {
        return Err(Error::NotInCentralizer);
    }
    let mut candidates: Vec<Option<GeneratorSymbol>> = vec![None];
    if g.len() <= DEFAULT_AUTOMORPHISM_BOUND {
        candidates.extend(diagram_generators(g).into_iter().map(Some));
    }
    let alpha = alpha.clone().without_provenance();
    let mut last_err = Error::AssumptionFailed("no diagram part clears the mod-2 image".into());
    for cand in candidates {
        let (prefix, rest) = match &cand {
            None => (Vec::new(), alpha.clone()),
            Some(d) => {
                let dinv = Automorphism::generator(&graph, d.inverse())?;
                (vec![d.clone()], dinv.compose_unchecked(&alpha))
            }
        };
        let Some(ops) = clear_mod2(&rest) else {
            continue;
        };
        let beta = rest
            .compose_unchecked(&Automorphism::from_generators(&graph, &ops)?)
            .without_provenance();
        if !beta.predicates().is_pure {
            continue;
        }
        match factor_pure_fixing(&beta, VertexSet::EMPTY, opts) {
            Ok(mut res) => {
                let mut word = prefix;
                word.append(&mut res.word);
                word.extend(invert_word(&ops));
                res.word = cancel_adjacent(word);
                verify_word(&alpha, &res.word)?;
                return Ok(res);
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Replace every matrix letter by the corresponding automorphism.
pub fn lift_relator(g: &Arc<SimplicialGraph>, rel: &RelatorInstance) -> Result<Automorphism> {
    Automorphism::from_generators(g, &lift_word(g, &rel.word))
}

impl fmt::Display for TorelliMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TorelliMethod::Trivial => "trivial",
            TorelliMethod::Search => "search",
            TorelliMethod::Descent => "descent",
        })
    }
}
