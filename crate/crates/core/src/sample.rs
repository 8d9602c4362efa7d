//! Seeded random corpora of words and automorphisms.

use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aut::{
    adjacent_transvections, diagram_generators, elementary_palindromics, inversions, Automorphism,
    GeneratorSymbol,
};
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::word::{GroupWord, Letter};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator families for random products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    /// Every standard generator of the automorphism group.
    Aut,
    /// Diagram automorphisms, adjacent transvections, inversions and
    /// dominated elementary palindromic automorphisms.
    Centralizer,
    /// As `Centralizer` without diagram automorphisms.
    Aut0Centralizer,
    /// Inversions and dominated elementary palindromic automorphisms.
    Pure,
    /// `Pure` plus diagram automorphisms.
    Palindromic,
}

impl FromStr for SampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "aut" => SampleKind::Aut,
            "centralizer" => SampleKind::Centralizer,
            "aut0-centralizer" => SampleKind::Aut0Centralizer,
            "pure" => SampleKind::Pure,
            "palindromic" => SampleKind::Palindromic,
            _ => return Err(Error::Parse(format!("unknown sample kind `{s}`"))),
        })
    }
}

pub fn generator_pool(g: &SimplicialGraph, kind: SampleKind) -> Vec<GeneratorSymbol> {
    let mut pool = inversions(g);
    pool.extend(elementary_palindromics(g));
    match kind {
        SampleKind::Pure => {}
        SampleKind::Palindromic => pool.extend(diagram_generators(g)),
        SampleKind::Aut0Centralizer => pool.extend(adjacent_transvections(g)),
        SampleKind::Centralizer => {
            pool.extend(diagram_generators(g));
            pool.extend(adjacent_transvections(g));
        }
        SampleKind::Aut => {
            pool.extend(diagram_generators(g));
            let n = g.len();
            for i in 0..n {
                for j in 0..n {
                    if i != j && g.dominates(i, j) {
                        pool.push(GeneratorSymbol::Transvection(i, j));
                    }
                }
                for d in g.components_excluding_star(i) {
                    pool.push(GeneratorSymbol::PartialConjugation(i, d));
                }
            }
        }
    }
    pool
}

/// Product of between 1 and `max_len` symbols drawn from `pool`, each
/// inverted with probability one half.
pub fn random_product<R: Rng>(
    pool: &[GeneratorSymbol],
    rng: &mut R,
    max_len: usize,
) -> Vec<GeneratorSymbol> {
    if pool.is_empty() {
        return Vec::new();
    }
    let len = rng.random_range(1..=max_len.max(1));
    (0..len)
        .map(|_| {
            let s = pool[rng.random_range(0..pool.len())].clone();
            if rng.random_bool(0.5) {
                s.inverse()
            } else {
                s
            }
        })
        .collect()
}

/// `count` seeded random products of generators of the given kind.
pub fn random_suite(
    graph: &Arc<SimplicialGraph>,
    kind: SampleKind,
    count: usize,
    seed: u64,
    max_len: usize,
) -> Vec<Automorphism> {
    let pool = generator_pool(graph, kind);
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let word = random_product(&pool, &mut rng, max_len);
            Automorphism::from_generators(graph, &word).expect("pool generators are valid")
        })
        .collect()
}

/// Raw letters, unreduced, of length at most `max_len`.
pub fn random_letters<R: Rng>(g: &SimplicialGraph, rng: &mut R, max_len: usize) -> Vec<Letter> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.random_range(0..g.len()), rng.random_bool(0.5)))
        .collect()
}

pub fn random_words(
    graph: &Arc<SimplicialGraph>,
    count: usize,
    seed: u64,
    max_len: usize,
) -> Vec<GroupWord> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            GroupWord::new(graph, &random_letters(graph, &mut rng, max_len)).expect("valid letters")
        })
        .collect()
}

/// Raw word `u c rev(u)` with `c` supported on a clique; such words equal
/// their reverse. Total raw length is at most `max_len`.
pub fn random_reverse_invariant_letters<R: Rng>(
    g: &SimplicialGraph,
    rng: &mut R,
    max_len: usize,
) -> Vec<Letter> {
    let half = rng.random_range(0..=max_len / 2);
    let u = random_letters(g, rng, half);
    let room = max_len - 2 * u.len();
    // grow a random clique
    let mut clique = Vec::new();
    let mut candidates: Vec<usize> = (0..g.len()).collect();
    while !candidates.is_empty() && rng.random_bool(0.6) {
        let v = candidates.swap_remove(rng.random_range(0..candidates.len()));
        if clique.iter().all(|&w| g.adjacent(v, w)) {
            clique.push(v);
        }
    }
    let mut center = Vec::new();
    if !clique.is_empty() {
        for _ in 0..rng.random_range(0..=room) {
            let v = clique[rng.random_range(0..clique.len())];
            center.push(Letter::new(v, rng.random_bool(0.5)));
        }
    }
    let mut out = u.clone();
    out.extend(center);
    out.extend(u.iter().rev());
    out
}
