//! Automorphisms of the Artin group: generator species, composition,
//! inversion and the palindromic predicate ladder.
//!
//! Composition follows `(a ∘ b)(v) = a(b(v))`; a provenance word
//! `[g1, g2, ..., gm]` denotes `g1 ∘ g2 ∘ ... ∘ gm`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet};
use crate::matrix::{phi, phi2};
use crate::word::{invert_letters, normal_form, same_graph, GroupWord, Letter};

/// One of the standard generators of the automorphism group, or a formal inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorSymbol {
    /// Graph symmetry; entry `v` is the image of vertex `v`.
    Diagram(Vec<usize>),
    /// `v_j -> v_j^-1`.
    Inversion(usize),
    /// `v_i -> v_i v_j`, needs `v_i <= v_j`.
    Transvection(usize, usize),
    /// `d -> v_i d v_i^-1` for `d` in a component of `G \ st(v_i)`.
    PartialConjugation(usize, VertexSet),
    /// `v_i -> v_j v_i v_j`, needs `v_i <= v_j`.
    ElemPalindromic(usize, usize),
    Inverse(Box<GeneratorSymbol>),
}

impl GeneratorSymbol {
    /// Symbol for the inverse generator, simplified where a closed form exists.
    pub fn inverse(&self) -> GeneratorSymbol {
        match self {
            GeneratorSymbol::Inverse(s) => (**s).clone(),
            GeneratorSymbol::Inversion(j) => GeneratorSymbol::Inversion(*j),
            GeneratorSymbol::Diagram(perm) => {
                let mut inv = vec![0; perm.len()];
                for (v, &p) in perm.iter().enumerate() {
                    inv[p] = v;
                }
                GeneratorSymbol::Diagram(inv)
            }
            s => GeneratorSymbol::Inverse(Box::new(s.clone())),
        }
    }

    /// Vertices not fixed by the generator.
    pub fn moved(&self) -> VertexSet {
        match self {
            GeneratorSymbol::Diagram(perm) => perm
                .iter()
                .enumerate()
                .filter(|(v, p)| *v != **p)
                .map(|(v, _)| v)
                .collect(),
            GeneratorSymbol::Inversion(j) => VertexSet::singleton(*j),
            GeneratorSymbol::Transvection(i, _) | GeneratorSymbol::ElemPalindromic(i, _) => {
                VertexSet::singleton(*i)
            }
            GeneratorSymbol::PartialConjugation(_, d) => *d,
            GeneratorSymbol::Inverse(s) => s.moved(),
        }
    }

    pub fn is_pure_palindromic_generator(&self) -> bool {
        match self {
            GeneratorSymbol::Inversion(_) | GeneratorSymbol::ElemPalindromic(..) => true,
            GeneratorSymbol::Inverse(s) => s.is_pure_palindromic_generator(),
            _ => false,
        }
    }

    /// Check the well-definedness conditions on `g`.
    pub fn validate(&self, g: &SimplicialGraph) -> Result<()> {
        let n = g.len();
        let illegal = |reason: String| Error::IllegalGenerator {
            symbol: self.display(g),
            reason,
        };
        let check = |v: usize| {
            if v < n {
                Ok(())
            } else {
                Err(Error::UnknownVertex(format!("#{v}")))
            }
        };
        match self {
            GeneratorSymbol::Diagram(perm) => {
                if !g.is_graph_automorphism(perm) {
                    return Err(illegal("permutation does not preserve the edge set".into()));
                }
            }
            GeneratorSymbol::Inversion(j) => check(*j)?,
            GeneratorSymbol::Transvection(i, j) | GeneratorSymbol::ElemPalindromic(i, j) => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(illegal("indices must differ".into()));
                }
                if !g.dominates(*i, *j) {
                    return Err(illegal(format!(
                        "{} is not dominated by {}",
                        g.name(*i),
                        g.name(*j)
                    )));
                }
            }
            GeneratorSymbol::PartialConjugation(i, d) => {
                check(*i)?;
                if !g.components_excluding_star(*i).contains(d) {
                    return Err(illegal(format!(
                        "not a component of the graph minus the star of {}",
                        g.name(*i)
                    )));
                }
            }
            GeneratorSymbol::Inverse(s) => s.validate(g)?,
        }
        Ok(())
    }

    /// Images of all vertices, unreduced.
    fn raw_images(&self, g: &SimplicialGraph) -> Vec<Vec<Letter>> {
        let n = g.len();
        let mut images: Vec<Vec<Letter>> = (0..n).map(|v| vec![Letter::pos(v)]).collect();
        match self {
            GeneratorSymbol::Diagram(perm) => {
                for v in 0..n {
                    images[v] = vec![Letter::pos(perm[v])];
                }
            }
            GeneratorSymbol::Inversion(j) => images[*j] = vec![Letter::neg(*j)],
            GeneratorSymbol::Transvection(i, j) => {
                images[*i] = vec![Letter::pos(*i), Letter::pos(*j)]
            }
            GeneratorSymbol::ElemPalindromic(i, j) => {
                images[*i] = vec![Letter::pos(*j), Letter::pos(*i), Letter::pos(*j)]
            }
            GeneratorSymbol::PartialConjugation(i, d) => {
                for v in d.iter() {
                    images[v] = vec![Letter::pos(*i), Letter::pos(v), Letter::neg(*i)];
                }
            }
            GeneratorSymbol::Inverse(s) => match &**s {
                GeneratorSymbol::Transvection(i, j) => {
                    images[*i] = vec![Letter::pos(*i), Letter::neg(*j)]
                }
                GeneratorSymbol::ElemPalindromic(i, j) => {
                    images[*i] = vec![Letter::neg(*j), Letter::pos(*i), Letter::neg(*j)]
                }
                GeneratorSymbol::PartialConjugation(i, d) => {
                    for v in d.iter() {
                        images[v] = vec![Letter::neg(*i), Letter::pos(v), Letter::pos(*i)];
                    }
                }
                other => return other.inverse().raw_images(g),
            },
        }
        images
    }

    /// Text form used by the automorphism expression grammar.
    pub fn display(&self, g: &SimplicialGraph) -> String {
        let name = |v: usize| {
            if v < g.len() {
                g.name(v).to_string()
            } else {
                format!("#{v}")
            }
        };
        match self {
            GeneratorSymbol::Diagram(perm) => {
                let pairs: Vec<String> = perm
                    .iter()
                    .enumerate()
                    .filter(|(v, p)| *v != **p)
                    .map(|(v, &p)| format!("{}:{}", name(v), name(p)))
                    .collect();
                format!("diag({})", pairs.join(","))
            }
            GeneratorSymbol::Inversion(j) => format!("inv({})", name(*j)),
            GeneratorSymbol::Transvection(i, j) => format!("tau({},{})", name(*i), name(*j)),
            GeneratorSymbol::ElemPalindromic(i, j) => format!("P({},{})", name(*i), name(*j)),
            GeneratorSymbol::PartialConjugation(i, d) => {
                let members: Vec<String> = d.iter().map(name).collect();
                format!("pc({};{})", name(*i), members.join(","))
            }
            GeneratorSymbol::Inverse(s) => format!("{}^-1", s.display(g)),
        }
    }
}

/// Parse a whitespace-separated generator expression.
///
/// Besides the generator species, `chi1(i,j,k)` and `chi2(i,j,k)` expand to
/// their defining products of elementary palindromic automorphisms.
pub fn parse_generators(g: &SimplicialGraph, text: &str) -> Result<Vec<GeneratorSymbol>> {
    let mut out = Vec::new();
    for term in text.split_whitespace() {
        let (body, inverse) = match term.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (term, false),
        };
        let open = body
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected `name(args)` in `{term}`")))?;
        let head = &body[..open];
        let args = body[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing `)` in `{term}`")))?;
        let vertex = |s: &str| g.vertex(s.trim());
        let two = || -> Result<(usize, usize)> {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("expected two vertices in `{term}`")));
            }
            Ok((vertex(parts[0])?, vertex(parts[1])?))
        };
        let mut word = match head {
            "P" => {
                let (i, j) = two()?;
                vec![GeneratorSymbol::ElemPalindromic(i, j)]
            }
            "tau" => {
                let (i, j) = two()?;
                vec![GeneratorSymbol::Transvection(i, j)]
            }
            "inv" => vec![GeneratorSymbol::Inversion(vertex(args)?)],
            "pc" => {
                let (v, members) = args
                    .split_once(';')
                    .ok_or_else(|| Error::Parse(format!("expected `pc(v;d,...)` in `{term}`")))?;
                let v = vertex(v)?;
                let named: VertexSet = members
                    .split(',')
                    .map(vertex)
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .collect();
                let comp = g
                    .components_excluding_star(v)
                    .into_iter()
                    .find(|c| named.is_subset(*c))
                    .ok_or_else(|| Error::IllegalGenerator {
                        symbol: term.to_string(),
                        reason: format!(
                            "vertices do not lie in one component of the graph minus the star of {}",
                            g.name(v)
                        ),
                    })?;
                vec![GeneratorSymbol::PartialConjugation(v, comp)]
            }
            "diag" => {
                let mut perm: Vec<usize> = (0..g.len()).collect();
                for pair in args.split(',').filter(|p| !p.trim().is_empty()) {
                    let (a, b) = pair
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected `v:image` in `{term}`")))?;
                    perm[vertex(a)?] = vertex(b)?;
                }
                vec![GeneratorSymbol::Diagram(perm)]
            }
            "chi1" | "chi2" => {
                let parts: Vec<usize> = args.split(',').map(vertex).collect::<Result<_>>()?;
                if parts.len() != 3 {
                    return Err(Error::Parse(format!("expected three vertices in `{term}`")));
                }
                if head == "chi1" {
                    chi1_word(g, parts[0], parts[1], parts[2])?
                } else {
                    chi2_word(g, parts[0], parts[1], parts[2])?
                }
            }
            _ => return Err(Error::Parse(format!("unknown generator `{head}`"))),
        };
        if inverse {
            word = word.iter().rev().map(GeneratorSymbol::inverse).collect();
        }
        out.extend(word);
    }
    Ok(out)
}

pub fn format_generators(g: &SimplicialGraph, word: &[GeneratorSymbol]) -> String {
    word.iter()
        .map(|s| s.display(g))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Inverse of a generator word.
pub fn invert_word(word: &[GeneratorSymbol]) -> Vec<GeneratorSymbol> {
    word.iter().rev().map(GeneratorSymbol::inverse).collect()
}

fn p(i: usize, j: usize) -> GeneratorSymbol {
    GeneratorSymbol::ElemPalindromic(i, j)
}

fn p_inv(i: usize, j: usize) -> GeneratorSymbol {
    p(i, j).inverse()
}

/// `[P_ij, P_ik]` as a generator word.
pub fn chi1_word(
    g: &SimplicialGraph,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Vec<GeneratorSymbol>> {
    if i == j || j == k || i == k {
        return Err(Error::IllegalGenerator {
            symbol: "chi1".into(),
            reason: "indices must be distinct".into(),
        });
    }
    for (a, b) in [(i, j), (i, k)] {
        if !g.dominates(a, b) {
            return Err(Error::IllegalGenerator {
                symbol: format!("chi1({},{},{})", g.name(i), g.name(j), g.name(k)),
                reason: format!("{} is not dominated by {}", g.name(a), g.name(b)),
            });
        }
    }
    Ok(vec![p(i, j), p(i, k), p_inv(i, j), p_inv(i, k)])
}

/// `(P_jk P_ik^-1 P_ki P_kj P_ij P_ji^-1)^2` as a generator word.
pub fn chi2_word(
    g: &SimplicialGraph,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Vec<GeneratorSymbol>> {
    if i == j || j == k || i == k {
        return Err(Error::IllegalGenerator {
            symbol: "chi2".into(),
            reason: "indices must be distinct".into(),
        });
    }
    let dd = g.domination();
    if dd.class_of[i] != dd.class_of[j] || dd.class_of[i] != dd.class_of[k] {
        return Err(Error::IllegalGenerator {
            symbol: format!("chi2({},{},{})", g.name(i), g.name(j), g.name(k)),
            reason: "vertices do not share a domination class".into(),
        });
    }
    let half = [p(j, k), p_inv(i, k), p(k, i), p(k, j), p(i, j), p_inv(j, i)];
    Ok(half.iter().chain(half.iter()).cloned().collect())
}

/// An automorphism given by its vertex images.
#[derive(Clone)]
pub struct Automorphism {
    graph: Arc<SimplicialGraph>,
    images: Vec<Vec<Letter>>,
    provenance: Option<Vec<GeneratorSymbol>>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.images == other.images
    }
}

impl Eq for Automorphism {}

impl std::hash::Hash for Automorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

/// Outcome of the predicate ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Predicates {
    pub in_ciota: bool,
    pub is_palindromic: bool,
    pub is_pure: bool,
    /// Purity decided by the middle letters instead of the mod-2 matrix.
    pub pure_by_middle_letter: bool,
    pub is_torelli: bool,
    pub is_simple: bool,
    pub non_simple_vertices: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutomorphismJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<std::collections::BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<String>,
}

impl Automorphism {
    pub fn identity(graph: &Arc<SimplicialGraph>) -> Self {
        Automorphism {
            graph: Arc::clone(graph),
            images: (0..graph.len()).map(|v| vec![Letter::pos(v)]).collect(),
            provenance: Some(Vec::new()),
        }
    }

    pub fn generator(graph: &Arc<SimplicialGraph>, symbol: GeneratorSymbol) -> Result<Self> {
        symbol.validate(graph)?;
        let images = symbol
            .raw_images(graph)
            .iter()
            .map(|w| normal_form(graph, w))
            .collect();
        Ok(Automorphism {
            graph: Arc::clone(graph),
            images,
            provenance: Some(vec![symbol]),
        })
    }

    /// Product `word[0] ∘ word[1] ∘ ...`.
    pub fn from_generators(graph: &Arc<SimplicialGraph>, word: &[GeneratorSymbol]) -> Result<Self> {
        let mut acc = Automorphism::identity(graph);
        for s in word.iter().rev() {
            let gen = Automorphism::generator(graph, s.clone())?;
            acc = gen.compose_unchecked(&acc);
        }
        Ok(acc)
    }

    /// Raw vertex images; checked to respect every defining relation.
    pub fn from_images(graph: &Arc<SimplicialGraph>, images: Vec<GroupWord>) -> Result<Self> {
        if images.len() != graph.len() {
            return Err(Error::NotEndomorphism(format!(
                "expected {} images, got {}",
                graph.len(),
                images.len()
            )));
        }
        if images.iter().any(|w| !same_graph(w.graph(), graph)) {
            return Err(Error::GraphMismatch);
        }
        let aut = Automorphism {
            graph: Arc::clone(graph),
            images: images.into_iter().map(GroupWord::into_letters).collect(),
            provenance: None,
        };
        for &(u, v) in graph.edges() {
            let (a, b) = (aut.image(u), aut.image(v));
            if !a.commutes_with(&b) {
                return Err(Error::NotEndomorphism(format!(
                    "images of {} and {} do not commute",
                    graph.name(u),
                    graph.name(v)
                )));
            }
        }
        Ok(aut)
    }

    pub fn parse_generators(graph: &Arc<SimplicialGraph>, text: &str) -> Result<Self> {
        let word = parse_generators(graph, text)?;
        Self::from_generators(graph, &word)
    }

    /// Accepts `{"images": {...}}` or `{"generators": "..."}`.
    pub fn from_json(graph: &Arc<SimplicialGraph>, raw: &AutomorphismJson) -> Result<Self> {
        match (&raw.images, &raw.generators) {
            (_, Some(gens)) => Self::parse_generators(graph, gens),
            (Some(map), None) => {
                let mut images = Vec::with_capacity(graph.len());
                for v in 0..graph.len() {
                    let name = graph.name(v);
                    let w = match map.get(name) {
                        Some(text) => GroupWord::parse(graph, text)?,
                        None => GroupWord::generator(graph, v),
                    };
                    images.push(w);
                }
                if let Some(extra) = map.keys().find(|k| graph.vertex(k).is_err()) {
                    return Err(Error::UnknownVertex(extra.clone()));
                }
                Self::from_images(graph, images)
            }
            (None, None) => Err(Error::Parse(
                "automorphism JSON needs `images` or `generators`".into(),
            )),
        }
    }

    pub fn from_json_str(graph: &Arc<SimplicialGraph>, text: &str) -> Result<Self> {
        let raw: AutomorphismJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("automorphism JSON: {e}")))?;
        Self::from_json(graph, &raw)
    }

    pub fn to_json(&self) -> AutomorphismJson {
        let images = (0..self.graph.len())
            .map(|v| (self.graph.name(v).to_string(), self.image(v).to_string()))
            .collect();
        AutomorphismJson {
            images: Some(images),
            generators: self
                .provenance
                .as_ref()
                .map(|w| format_generators(&self.graph, w)),
        }
    }

    pub fn graph(&self) -> &Arc<SimplicialGraph> {
        &self.graph
    }

    pub fn image(&self, v: usize) -> GroupWord {
        GroupWord::from_canonical(&self.graph, self.images[v].clone())
    }

    pub fn image_letters(&self, v: usize) -> &[Letter] {
        &self.images[v]
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn provenance(&self) -> Option<&[GeneratorSymbol]> {
        self.provenance.as_deref()
    }

    pub fn without_provenance(mut self) -> Self {
        self.provenance = None;
        self
    }

    pub fn with_provenance(mut self, word: Vec<GeneratorSymbol>) -> Self {
        self.provenance = Some(word);
        self
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(v, w)| w.len() == 1 && w[0] == Letter::pos(v))
    }

    /// Vertices whose image differs from themselves.
    pub fn moved(&self) -> VertexSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(v, w)| !(w.len() == 1 && w[0] == Letter::pos(*v)))
            .map(|(v, _)| v)
            .collect()
    }

    pub(crate) fn apply_letters(&self, w: &[Letter]) -> Vec<Letter> {
        let mut raw = Vec::new();
        for &l in w {
            let img = &self.images[l.vertex()];
            if l.is_inverse() {
                raw.extend(invert_letters(img));
            } else {
                raw.extend_from_slice(img);
            }
        }
        normal_form(&self.graph, &raw)
    }

    pub fn apply(&self, w: &GroupWord) -> Result<GroupWord> {
        if !same_graph(&self.graph, w.graph()) {
            return Err(Error::GraphMismatch);
        }
        Ok(GroupWord::from_canonical(
            &self.graph,
            self.apply_letters(w.letters()),
        ))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let images = other.images.iter().map(|w| self.apply_letters(w)).collect();
        let provenance = match (&self.provenance, &other.provenance) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Automorphism {
            graph: Arc::clone(&self.graph),
            images,
            provenance,
        }
    }

    /// Two-sided inverse, from the provenance when present, otherwise from a
    /// factorization of the automorphism.
    pub fn inverse(&self) -> Result<Self> {
        if let Some(word) = &self.provenance {
            return Automorphism::from_generators(&self.graph, &invert_word(word));
        }
        let preds = self.predicates();
        let factored = if preds.in_ciota {
            crate::factor::factor_centralizer_iota(self).ok()
        } else {
            None
        };
        match factored {
            Some(res) if res.is_complete() => {
                let inv = Automorphism::from_generators(&self.graph, &invert_word(&res.word))?;
                debug_assert!(inv.compose_unchecked(self).is_identity());
                Ok(inv)
            }
            _ => Err(Error::NoProvenance),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Automorphism::identity(&self.graph);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        Ok(acc)
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        a.compose(b)?.compose(&a.inverse()?)?.compose(&b.inverse()?)
    }

    /// Check that every defining relation is preserved.
    pub fn respects_relations(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|&(u, v)| self.image(u).commutes_with(&self.image(v)))
    }

    pub fn commutes_with_iota(&self) -> bool {
        (0..self.graph.len()).all(|v| self.image(v).is_reverse_invariant())
    }

    pub fn predicates(&self) -> Predicates {
        let g = &*self.graph;
        let n = g.len();
        let images: Vec<GroupWord> = (0..n).map(|v| self.image(v)).collect();
        let in_ciota = images.iter().all(GroupWord::is_reverse_invariant);
        let is_palindromic = in_ciota && images.iter().all(GroupWord::is_palindrome);
        let pure_by_middle_letter = is_palindromic
            && images
                .iter()
                .enumerate()
                .all(|(v, w)| w.middle_letter().map(|l| l.vertex()) == Some(v));
        let is_pure = is_palindromic && phi2(self).is_identity();
        let is_torelli = is_palindromic && phi(self).is_identity();
        let non_simple: VertexSet = images
            .iter()
            .enumerate()
            .filter(|(_, w)| g.complement_components(w.support()).len() != 1)
            .map(|(v, _)| v)
            .collect();
        Predicates {
            in_ciota,
            is_palindromic,
            is_pure,
            pure_by_middle_letter,
            is_torelli,
            is_simple: non_simple.is_empty(),
            non_simple_vertices: g.set_names(non_simple),
        }
    }

    /// Write a palindromic automorphism as `delta ∘ gamma` with `delta` a
    /// diagram automorphism and `gamma` pure palindromic.
    pub fn split_diagram_pure(&self) -> Result<(Automorphism, Automorphism)> {
        let g = &*self.graph;
        let n = g.len();
        let mut perm = Vec::with_capacity(n);
        for v in 0..n {
            let w = self.image(v);
            if !w.is_palindrome() {
                return Err(Error::NotPalindromic);
            }
            let middle = w.middle_letter().ok_or(Error::NotPalindromic)?;
            perm.push(middle.vertex());
        }
        if !g.is_graph_automorphism(&perm) {
            return Err(Error::NotGraphAutomorphism);
        }
        let delta = Automorphism::generator(&self.graph, GeneratorSymbol::Diagram(perm))?;
        let delta_inv = delta.inverse()?;
        let mut gamma = delta_inv.compose_unchecked(self);
        if self.provenance.is_none() {
            gamma.provenance = None;
        }
        Ok((delta, gamma))
    }

    pub fn display_images(&self) -> String {
        (0..self.graph.len())
            .map(|v| format!("{} -> {}", self.graph.name(v), self.image(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({})", self.display_images())
    }
}

/// Hyperelliptic involution: every generator inverted.
pub fn iota(graph: &Arc<SimplicialGraph>) -> Automorphism {
    let word: Vec<GeneratorSymbol> = (0..graph.len()).map(GeneratorSymbol::Inversion).collect();
    Automorphism::from_generators(graph, &word).expect("inversions are always defined")
}

/// Doubled commutator transvection `[P_ij, P_ik]`.
pub fn chi1(graph: &Arc<SimplicialGraph>, i: usize, j: usize, k: usize) -> Result<Automorphism> {
    Automorphism::from_generators(graph, &chi1_word(graph, i, j, k)?)
}

/// Separating pi-twist `(P_jk P_ik^-1 P_ki P_kj P_ij P_ji^-1)^2`.
pub fn chi2(graph: &Arc<SimplicialGraph>, i: usize, j: usize, k: usize) -> Result<Automorphism> {
    Automorphism::from_generators(graph, &chi2_word(graph, i, j, k)?)
}

/// Every well-defined generator of the given families on `g`.
pub fn diagram_generators(g: &SimplicialGraph) -> Vec<GeneratorSymbol> {
    g.graph_automorphisms(crate::graph::DEFAULT_AUTOMORPHISM_BOUND)
        .unwrap_or_default()
        .into_iter()
        .filter(|perm| perm.iter().enumerate().any(|(v, p)| v != *p))
        .map(GeneratorSymbol::Diagram)
        .collect()
}

pub fn inversions(g: &SimplicialGraph) -> Vec<GeneratorSymbol> {
    (0..g.len()).map(GeneratorSymbol::Inversion).collect()
}

pub fn elementary_palindromics(g: &SimplicialGraph) -> Vec<GeneratorSymbol> {
    let n = g.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && g.dominates(i, j))
        .map(|(i, j)| GeneratorSymbol::ElemPalindromic(i, j))
        .collect()
}

pub fn adjacent_transvections(g: &SimplicialGraph) -> Vec<GeneratorSymbol> {
    g.adjacent_dominations()
        .map(|(i, j)| GeneratorSymbol::Transvection(i, j))
        .collect()
}
