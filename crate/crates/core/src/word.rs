//! Elements of the right-angled Artin group and the word-level structure theory.
//!
//! Every [`GroupWord`] is stored in its canonical form: the lexicographically
//! least reduced word in its shuffle class, with letters ordered by the block
//! ordering of the graph and positive letters before negative ones.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, VertexSet};

/// Default cap on order ideals inspected while extracting roots.
pub const DEFAULT_ROOT_BUDGET: usize = 200_000;

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    vertex: u16,
    inverse: bool,
}

impl Letter {
    pub fn new(vertex: usize, inverse: bool) -> Self {
        Letter {
            vertex: vertex as u16,
            inverse,
        }
    }

    pub fn pos(vertex: usize) -> Self {
        Letter::new(vertex, false)
    }

    pub fn neg(vertex: usize) -> Self {
        Letter::new(vertex, true)
    }

    pub fn vertex(self) -> usize {
        self.vertex as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.vertex, if self.inverse { "'" } else { "" })
    }
}

fn key(g: &SimplicialGraph, l: Letter) -> (usize, bool) {
    (g.domination().position[l.vertex()], l.inverse)
}

fn letters_commute(g: &SimplicialGraph, a: Letter, b: Letter) -> bool {
    a.vertex != b.vertex && g.adjacent(a.vertex(), b.vertex())
}

/// Freely reduce a raw letter sequence using shuffles and cancellations.
///
/// Appending a letter to a reduced word either keeps it reduced or cancels
/// against the last occurrence of its vertex that can be shuffled to the end.
pub fn reduce_letters(g: &SimplicialGraph, raw: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &x in raw {
        let mut cancel = None;
        for j in (0..out.len()).rev() {
            let y = out[j];
            if y.vertex == x.vertex {
                if y.inverse != x.inverse {
                    cancel = Some(j);
                }
                break;
            }
            if !g.adjacent(y.vertex(), x.vertex()) {
                break;
            }
        }
        match cancel {
            Some(j) => {
                out.remove(j);
            }
            None => out.push(x),
        }
    }
    out
}

/// Dependency edges of the trace of `w`: for each position, the positions of
/// the nearest earlier letter of every non-commuting vertex.
fn dependencies(g: &SimplicialGraph, w: &[Letter]) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut last: Vec<Option<usize>> = vec![None; n];
    let mut preds = Vec::with_capacity(w.len());
    for (i, &l) in w.iter().enumerate() {
        let v = l.vertex();
        let blockers = g.vertices().difference(g.link(v));
        let p: Vec<usize> = blockers.iter().filter_map(|u| last[u]).collect();
        preds.push(p);
        last[v] = Some(i);
    }
    preds
}

/// Lexicographically least representative of the shuffle class of a reduced word.
pub fn canonicalize(g: &SimplicialGraph, w: &[Letter]) -> Vec<Letter> {
    let preds = dependencies(g, w);
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); w.len()];
    let mut indeg = vec![0usize; w.len()];
    for (j, ps) in preds.iter().enumerate() {
        indeg[j] = ps.len();
        for &i in ps {
            succs[i].push(j);
        }
    }
    let mut heap: BinaryHeap<Reverse<((usize, bool), usize)>> = (0..w.len())
        .filter(|&i| indeg[i] == 0)
        .map(|i| Reverse((key(g, w[i]), i)))
        .collect();
    let mut out = Vec::with_capacity(w.len());
    while let Some(Reverse((_, i))) = heap.pop() {
        out.push(w[i]);
        for &j in &succs[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                heap.push(Reverse((key(g, w[j]), j)));
            }
        }
    }
    out
}

/// Canonical form of an arbitrary letter sequence.
pub fn normal_form(g: &SimplicialGraph, raw: &[Letter]) -> Vec<Letter> {
    canonicalize(g, &reduce_letters(g, raw))
}

pub fn invert_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Parse the word text format against a graph, without reducing.
pub fn parse_letters(g: &SimplicialGraph, text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    if text == "1" || text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let (name, exp) = match token.split_once('^') {
            Some((name, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                if exp == 0 {
                    return Err(Error::Parse(format!("zero exponent in `{token}`")));
                }
                (name, exp)
            }
            None => (token, 1),
        };
        let v = g.vertex(name)?;
        let letter = Letter::new(v, exp < 0);
        out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    Ok(out)
}

/// Render letters with runs of equal letters folded into powers.
pub fn format_letters(g: &SimplicialGraph, w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = (j - i) as i64 * w[i].sign();
        let name = g.name(w[i].vertex());
        parts.push(if run == 1 {
            name.to_string()
        } else {
            format!("{name}^{run}")
        });
        i = j;
    }
    parts.join(" ")
}

/// An element of the Artin group in canonical form.
#[derive(Clone)]
pub struct GroupWord {
    graph: Arc<SimplicialGraph>,
    letters: Vec<Letter>,
}

impl PartialEq for GroupWord {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.letters == other.letters
    }
}

impl Eq for GroupWord {}

impl std::hash::Hash for GroupWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

pub(crate) fn same_graph(a: &Arc<SimplicialGraph>, b: &Arc<SimplicialGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Basic form of the cyclically reduced core of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicForm {
    pub conjugator: GroupWord,
    pub factors: Vec<(GroupWord, i64)>,
}

impl BasicForm {
    /// Product of the factors, i.e. the cyclically reduced core.
    pub fn core(&self) -> GroupWord {
        self.factors
            .iter()
            .fold(self.conjugator.identity(), |acc, (root, e)| {
                acc.mul(&root.pow(*e))
            })
    }
}

/// Centraliser data of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Centralizer {
    pub rank: usize,
    /// Roots of the basic form of the core.
    pub factors: Vec<GroupWord>,
    /// Vertices adjacent to the whole support of the core.
    pub link: VertexSet,
    /// The centraliser of the element is this conjugate of the one described.
    pub conjugator: GroupWord,
}

/// `w_1 ... w_{k-1} w_k w_{k-1} ... w_1` with clique-supported pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePalindromicForm {
    pub pieces: Vec<GroupWord>,
}

impl CliquePalindromicForm {
    pub fn recompose(&self) -> Option<GroupWord> {
        let (center, outer) = self.pieces.split_last()?;
        let mut w = center.clone();
        for piece in outer.iter().rev() {
            w = piece.mul(&w).mul(piece);
        }
        Some(w)
    }

    pub fn center(&self) -> Option<&GroupWord> {
        self.pieces.last()
    }
}

impl GroupWord {
    /// Canonical element represented by a raw letter sequence.
    pub fn new(graph: &Arc<SimplicialGraph>, raw: &[Letter]) -> Result<Self> {
        if let Some(l) = raw.iter().find(|l| l.vertex() >= graph.len()) {
            return Err(Error::UnknownVertex(format!("#{}", l.vertex())));
        }
        Ok(Self::from_raw(graph, raw))
    }

    pub(crate) fn from_raw(graph: &Arc<SimplicialGraph>, raw: &[Letter]) -> Self {
        GroupWord {
            graph: Arc::clone(graph),
            letters: normal_form(graph, raw),
        }
    }

    /// Wrap letters already known to be canonical.
    pub(crate) fn from_canonical(graph: &Arc<SimplicialGraph>, letters: Vec<Letter>) -> Self {
        GroupWord {
            graph: Arc::clone(graph),
            letters,
        }
    }

    pub fn parse(graph: &Arc<SimplicialGraph>, text: &str) -> Result<Self> {
        let raw = parse_letters(graph, text)?;
        Ok(Self::from_raw(graph, &raw))
    }

    pub fn identity(&self) -> Self {
        Self::one(&self.graph)
    }

    pub fn one(graph: &Arc<SimplicialGraph>) -> Self {
        GroupWord {
            graph: Arc::clone(graph),
            letters: Vec::new(),
        }
    }

    pub fn generator(graph: &Arc<SimplicialGraph>, v: usize) -> Self {
        GroupWord {
            graph: Arc::clone(graph),
            letters: vec![Letter::pos(v)],
        }
    }

    pub fn graph(&self) -> &Arc<SimplicialGraph> {
        &self.graph
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn same(&self, other: &Self) -> Result<()> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// Group equality; errors when the words live over different graphs.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.same(other)?;
        Ok(self.letters == other.letters)
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(same_graph(&self.graph, &other.graph));
        let mut raw = self.letters.clone();
        raw.extend_from_slice(&other.letters);
        Self::from_raw(&self.graph, &raw)
    }

    pub fn inverse(&self) -> Self {
        Self::from_raw(&self.graph, &invert_letters(&self.letters))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            invert_letters(&self.letters)
        } else {
            self.letters.clone()
        };
        let mut raw = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            raw.extend_from_slice(&base);
        }
        Self::from_raw(&self.graph, &raw)
    }

    pub fn conjugate_by(&self, c: &Self) -> Self {
        c.mul(self).mul(&c.inverse())
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// The element spelled by the reversed letter sequence.
    pub fn reverse(&self) -> Self {
        let rev: Vec<Letter> = self.letters.iter().rev().copied().collect();
        GroupWord {
            graph: Arc::clone(&self.graph),
            letters: canonicalize(&self.graph, &rev),
        }
    }

    pub fn support(&self) -> VertexSet {
        self.letters.iter().map(|l| l.vertex()).collect()
    }

    /// Exponent sums indexed by vertex.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut e = vec![0; self.graph.len()];
        for l in &self.letters {
            e[l.vertex()] += l.sign();
        }
        e
    }

    pub fn support_length_exponents(&self) -> (VertexSet, usize, Vec<i64>) {
        (self.support(), self.len(), self.exponent_vector())
    }

    pub fn is_reverse_invariant(&self) -> bool {
        self.reverse() == *self
    }

    /// Whether some reduced representative reads the same backwards.
    pub fn is_palindrome(&self) -> bool {
        if !self.is_reverse_invariant() {
            return false;
        }
        let cpnf = self
            .clique_palindromic_form()
            .expect("reverse-invariant words have a clique-palindromic form");
        let center = cpnf.center().expect("form has a center");
        center
            .exponent_vector()
            .iter()
            .filter(|e| *e % 2 != 0)
            .count()
            <= 1
    }

    /// A literal palindrome representing this element, when one exists.
    pub fn palindromic_representative(&self) -> Option<Vec<Letter>> {
        if !self.is_palindrome() {
            return None;
        }
        let cpnf = self.clique_palindromic_form().ok()?;
        let (center, outer) = cpnf.pieces.split_last()?;
        // a clique word with at most one odd exponent is a literal palindrome
        let exps = center.exponent_vector();
        let mut half = Vec::new();
        let mut middle = Vec::new();
        for &v in &self.graph.domination().vertex_order {
            let e = exps[v];
            let l = Letter::new(v, e < 0);
            half.extend(std::iter::repeat_n(l, (e.unsigned_abs() / 2) as usize));
            if e % 2 != 0 {
                middle.push(l);
            }
        }
        let mut word = Vec::new();
        for piece in outer {
            word.extend_from_slice(piece.letters());
        }
        word.extend_from_slice(&half);
        word.extend_from_slice(&middle);
        word.extend(half.iter().rev());
        for piece in outer.iter().rev() {
            word.extend(piece.letters().iter().rev());
        }
        Some(word)
    }

    /// The unique letter of odd exponent sum of a palindrome.
    pub fn middle_letter(&self) -> Option<Letter> {
        let exps = self.exponent_vector();
        let mut odd = exps.iter().enumerate().filter(|(_, e)| *e % 2 != 0);
        let (v, &e) = odd.next()?;
        if odd.next().is_some() {
            return None;
        }
        Some(Letter::new(v, e < 0))
    }

    /// Peel conjugating letters: returns `(c, core)` with `self = c core c^-1`.
    pub fn cyclically_reduce(&self) -> (GroupWord, GroupWord) {
        let g = &*self.graph;
        let mut w = self.letters.clone();
        let mut conj = Vec::new();
        loop {
            let n = w.len();
            // letters that shuffle to the front, resp. to the end
            let front: Vec<usize> = (0..n)
                .filter(|&i| w[..i].iter().all(|&u| letters_commute(g, u, w[i])))
                .collect();
            let back: Vec<usize> = (0..n)
                .filter(|&j| w[j + 1..].iter().all(|&u| letters_commute(g, u, w[j])))
                .collect();
            let peel = front
                .iter()
                .filter_map(|&i| {
                    back.iter()
                        .find(|&&j| j != i && w[j] == w[i].inv())
                        .map(|&j| (i, j))
                })
                .min_by_key(|&(i, _)| key(g, w[i]));
            match peel {
                Some((i, j)) => {
                    conj.push(w[i]);
                    let (hi, lo) = (i.max(j), i.min(j));
                    w.remove(hi);
                    w.remove(lo);
                }
                None => break,
            }
        }
        (
            GroupWord::from_raw(&self.graph, &conj),
            GroupWord::from_canonical(&self.graph, canonicalize(g, &w)),
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclically_reduce().0.is_empty()
    }

    pub fn basic_form(&self) -> Result<BasicForm> {
        self.basic_form_with_budget(DEFAULT_ROOT_BUDGET)
    }

    pub fn basic_form_with_budget(&self, budget: usize) -> Result<BasicForm> {
        let g = &*self.graph;
        let (conjugator, core) = self.cyclically_reduce();
        let mut comps = g.complement_components(core.support());
        let pos = &g.domination().position;
        comps.sort_by_key(|c| c.iter().map(|v| pos[v]).min());
        let mut factors = Vec::new();
        for comp in comps {
            let part: Vec<Letter> = core
                .letters
                .iter()
                .copied()
                .filter(|l| comp.contains(l.vertex()))
                .collect();
            let (root, e) = extract_root(&self.graph, &part, budget)?;
            factors.push((root, e));
        }
        Ok(BasicForm {
            conjugator,
            factors,
        })
    }

    pub fn rank_and_centralizer(&self) -> Result<Centralizer> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let g = &*self.graph;
        let bf = self.basic_form()?;
        let support = bf.core().support();
        let link: VertexSet = (0..g.len())
            .filter(|&u| support.is_subset(g.link(u)))
            .collect();
        Ok(Centralizer {
            rank: bf.factors.len() + link.len(),
            factors: bf.factors.into_iter().map(|(r, _)| r).collect(),
            link,
            conjugator: bf.conjugator,
        })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rank_and_centralizer()?.rank)
    }

    /// Peel clique-supported pieces from both ends of a reverse-invariant word.
    pub fn clique_palindromic_form(&self) -> Result<CliquePalindromicForm> {
        if !self.is_reverse_invariant() {
            return Err(Error::NotReverseInvariant);
        }
        let g = &*self.graph;
        let mut pieces = Vec::new();
        let mut current = self.clone();
        loop {
            let supp = current.support();
            if g.is_clique(supp) {
                pieces.push(current);
                break;
            }
            let central: VertexSet = supp
                .iter()
                .filter(|&v| supp.difference(g.star(v)).is_empty())
                .collect();
            let w = &current.letters;
            let mut taken = vec![false; w.len()];
            let mut piece = Vec::new();
            for i in 0..w.len() {
                if central.contains(w[i].vertex()) {
                    continue;
                }
                if w[..i].iter().all(|&u| g.commute(u.vertex(), w[i].vertex())) {
                    taken[i] = true;
                    piece.push(w[i]);
                }
            }
            let rest: Vec<Letter> = w
                .iter()
                .zip(&taken)
                .filter(|(_, t)| !**t)
                .map(|(l, _)| *l)
                .collect();
            // the same piece also shuffles to the end
            let mut raw = rest.clone();
            raw.extend(invert_letters(&piece));
            let inner = reduce_letters(g, &raw);
            if inner.len() + piece.len() != rest.len() {
                return Err(Error::AssumptionFailed(
                    "front piece does not reappear at the end".into(),
                ));
            }
            pieces.push(GroupWord::from_canonical(
                &self.graph,
                canonicalize(g, &piece),
            ));
            current = GroupWord::from_canonical(&self.graph, canonicalize(g, &inner));
        }
        Ok(CliquePalindromicForm { pieces })
    }
}

/// Maximal root of a cyclically reduced word whose support is connected in
/// the complement graph. Returns `(root, exponent)` with the root chosen
/// lexicographically smaller than its inverse.
fn extract_root(
    graph: &Arc<SimplicialGraph>,
    u: &[Letter],
    budget: usize,
) -> Result<(GroupWord, i64)> {
    let g = &**graph;
    let len = u.len();
    let target = canonicalize(g, u);
    let mut exps = vec![0i64; g.len()];
    for l in u {
        exps[l.vertex()] += l.sign();
    }
    let gcd = exps.iter().fold(0i64, |a, &b| gcd(a, b.abs()));
    let mut divisors: Vec<usize> = (2..=len)
        .filter(|&m| len.is_multiple_of(m) && gcd % m as i64 == 0)
        .collect();
    divisors.sort_unstable_by(|a, b| b.cmp(a));

    let preds = dependencies(g, u);
    let mut spent = 0usize;
    for m in divisors {
        let size = len / m;
        let want: Vec<i64> = exps.iter().map(|e| e / m as i64).collect();
        let mut found = None;
        for_each_ideal(&preds, size, &mut spent, budget, &mut |ideal| {
            let p: Vec<Letter> = (0..len).filter(|&i| ideal[i]).map(|i| u[i]).collect();
            let mut pe = vec![0i64; g.len()];
            for l in &p {
                pe[l.vertex()] += l.sign();
            }
            if pe != want {
                return false;
            }
            let mut raw = Vec::with_capacity(len);
            for _ in 0..m {
                raw.extend_from_slice(&p);
            }
            if normal_form(g, &raw) == target {
                found = Some(p);
                true
            } else {
                false
            }
        })?;
        if let Some(p) = found {
            return Ok(normalize_root(graph, &p, m as i64));
        }
    }
    Ok(normalize_root(graph, u, 1))
}

fn normalize_root(graph: &Arc<SimplicialGraph>, p: &[Letter], m: i64) -> (GroupWord, i64) {
    let root = GroupWord::from_raw(graph, p);
    let inv = root.inverse();
    let k = |w: &GroupWord| -> Vec<(usize, bool)> {
        w.letters.iter().map(|&l| key(graph, l)).collect()
    };
    if k(&inv) < k(&root) {
        (inv, -m)
    } else {
        (root, m)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Visit every order ideal of the trace poset with `size` elements; stops
/// early when the visitor returns true.
fn for_each_ideal(
    preds: &[Vec<usize>],
    size: usize,
    spent: &mut usize,
    budget: usize,
    visit: &mut dyn FnMut(&[bool]) -> bool,
) -> Result<()> {
    let n = preds.len();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut stack = vec![vec![false; n]];
    while let Some(ideal) = stack.pop() {
        let count = ideal.iter().filter(|b| **b).count();
        if count == size {
            *spent += 1;
            if *spent > budget {
                return Err(Error::RootSearchBudget(budget));
            }
            if visit(&ideal) {
                return Ok(());
            }
            continue;
        }
        for i in 0..n {
            if !ideal[i] && preds[i].iter().all(|&p| ideal[p]) {
                let mut next = ideal.clone();
                next[i] = true;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.graph, &self.letters))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}
