//! Abelianisation: integer and mod-2 matrices of automorphisms, the level-2
//! congruence generators and relators, block structure and factorization
//! inside the level-2 image.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::aut::{Automorphism, GeneratorSymbol};
use crate::error::{Error, Result};
use crate::graph::{ClassKind, DominationData, SimplicialGraph};

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(n: usize) -> Self {
        IntegerMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows must form a square".into()));
        }
        Ok(IntegerMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.entries[r * self.n + c] = x;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        IntegerMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mod2(&self) -> Mod2Matrix {
        let mut m = Mod2Matrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                if self.get(r, c).rem_euclid(2) == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Square sub-block on rows `rows` and columns `cols`.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> Vec<Vec<i64>> {
        rows.map(|r| cols.clone().map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub(crate) fn add_column_multiple(&mut self, target: usize, source: usize, k: i64) {
        for r in 0..self.n {
            let v = self.get(r, source);
            self.entries[r * self.n + target] += k * v;
        }
    }

    fn negate_column(&mut self, c: usize) {
        for r in 0..self.n {
            self.entries[r * self.n + c] = -self.entries[r * self.n + c];
        }
    }

    /// JSON form with the basis order recorded by vertex name.
    pub fn to_json(&self, order: &[String]) -> MatrixJson {
        MatrixJson {
            order: order.to_vec(),
            rows: self.rows(),
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub order: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

/// Square matrix over Z/2; row `r` is a bit mask over columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mod2Matrix {
    n: usize,
    rows: Vec<u64>,
}

impl Mod2Matrix {
    pub fn zeros(n: usize) -> Self {
        Mod2Matrix {
            n,
            rows: vec![0; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mod2Matrix {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        if bit {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                (0..self.n)
                    .filter(|&k| row >> k & 1 == 1)
                    .fold(0, |acc, k| acc ^ other.rows[k])
            })
            .collect();
        Mod2Matrix { n: self.n, rows }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for Mod2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Closure of `gens` under multiplication, capped at `cap` elements.
pub fn mod2_generated_subgroup(
    n: usize,
    gens: &[Mod2Matrix],
    cap: usize,
) -> Result<HashSet<Mod2Matrix>> {
    let id = Mod2Matrix::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let next = m.mul(g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::SizeLimit {
                        size: seen.len(),
                        limit: cap,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// `Phi(alpha)` in the block basis: column `p` is the exponent vector of
/// the image of `vertex_order[p]`.
pub fn phi(alpha: &Automorphism) -> IntegerMatrix {
    let g = alpha.graph();
    let order = &g.domination().vertex_order;
    let pos = &g.domination().position;
    let n = g.len();
    let mut m = IntegerMatrix::zeros(n);
    for (p, &u) in order.iter().enumerate() {
        for l in alpha.image_letters(u) {
            let q = pos[l.vertex()];
            m.entries[q * n + p] += l.sign();
        }
    }
    m
}

pub fn phi2(alpha: &Automorphism) -> Mod2Matrix {
    phi(alpha).mod2()
}

/// Vertex names in block order, the basis used by [`phi`].
pub fn basis_names(g: &SimplicialGraph) -> Vec<String> {
    g.domination()
        .vertex_order
        .iter()
        .map(|&v| g.name(v).to_string())
        .collect()
}

/// Letters of the level-2 congruence presentation (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixSymbol {
    /// `I + 2 E_{row,col}`, or its inverse.
    S {
        row: usize,
        col: usize,
        inverse: bool,
    },
    /// `I - 2 E_{ii}`.
    Z(usize),
}

impl MatrixSymbol {
    pub fn s(row: usize, col: usize) -> Self {
        MatrixSymbol::S {
            row,
            col,
            inverse: false,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            MatrixSymbol::S { row, col, inverse } => MatrixSymbol::S {
                row,
                col,
                inverse: !inverse,
            },
            z => z,
        }
    }

    pub fn matrix(self, n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::identity(n);
        match self {
            MatrixSymbol::S { row, col, inverse } => m.set(row, col, if inverse { -2 } else { 2 }),
            MatrixSymbol::Z(i) => m.set(i, i, -1),
        }
        m
    }

    /// Lift to a generator, reading index `p` as the vertex `order[p]`.
    pub fn lift(self, order: &[usize]) -> GeneratorSymbol {
        match self {
            MatrixSymbol::S { row, col, inverse } => {
                let s = GeneratorSymbol::ElemPalindromic(order[col], order[row]);
                if inverse {
                    s.inverse()
                } else {
                    s
                }
            }
            MatrixSymbol::Z(i) => GeneratorSymbol::Inversion(order[i]),
        }
    }
}

impl fmt::Display for MatrixSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MatrixSymbol::S { row, col, inverse } => {
                write!(f, "S_{},{}", row + 1, col + 1)?;
                if inverse {
                    write!(f, "^-1")?;
                }
                Ok(())
            }
            MatrixSymbol::Z(i) => write!(f, "Z_{}", i + 1),
        }
    }
}

pub fn format_matrix_word(word: &[MatrixSymbol]) -> String {
    word.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Ordered product of a matrix word.
pub fn evaluate(n: usize, word: &[MatrixSymbol]) -> IntegerMatrix {
    word.iter()
        .fold(IntegerMatrix::identity(n), |acc, s| acc.mul(&s.matrix(n)))
}

/// `S_ij` and `Z_i` in dimension `n`, 0-based.
pub fn elementary_matrices(n: usize, i: usize, j: usize) -> Result<(IntegerMatrix, IntegerMatrix)> {
    if i >= n || j >= n {
        return Err(Error::Index(format!("({i},{j}) outside dimension {n}")));
    }
    if i == j {
        return Err(Error::Index(format!(
            "S needs distinct indices, got ({i},{j})"
        )));
    }
    Ok((
        MatrixSymbol::s(i, j).matrix(n),
        MatrixSymbol::Z(i).matrix(n),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorInstance {
    /// Family number, 1 to 10.
    pub family: u8,
    /// 0-based index tuple.
    pub indices: Vec<usize>,
    pub word: Vec<MatrixSymbol>,
}

impl RelatorInstance {
    pub fn name(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        format!("R{}({})", self.family, idx.join(","))
    }
}

pub enum RelatorFilter<'a> {
    All,
    /// Keep only words whose `S` letters are licensed by domination in `g`,
    /// indices read in the block basis.
    RGamma(&'a SimplicialGraph),
}

fn commutator(a: &[MatrixSymbol], b: &[MatrixSymbol]) -> Vec<MatrixSymbol> {
    let inv = |w: &[MatrixSymbol]| w.iter().rev().map(|s| s.inverse()).collect::<Vec<_>>();
    [a.to_vec(), b.to_vec(), inv(a), inv(b)].concat()
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

/// `S_{row,col}` may appear in the image of the pure palindromic group.
pub fn s_allowed(dd: &DominationData, row: usize, col: usize) -> bool {
    dd.dominates(dd.vertex_order[col], dd.vertex_order[row])
}

/// Every instance of the ten relator families over pairwise-distinct indices.
pub fn relator_suite(n: usize, filter: RelatorFilter<'_>) -> Vec<RelatorInstance> {
    use MatrixSymbol::Z;
    let s = MatrixSymbol::s;
    let si = |r, c| MatrixSymbol::s(r, c).inverse();
    let mut out = Vec::new();
    let mut push = |family: u8, indices: Vec<usize>, word: Vec<MatrixSymbol>| {
        out.push(RelatorInstance {
            family,
            indices,
            word,
        })
    };
    for i in 0..n {
        push(1, vec![i], vec![Z(i), Z(i)]);
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        push(2, t.clone(), commutator(&[Z(i)], &[Z(j)]));
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        push(3, t.clone(), [Z(i), s(i, j)].repeat(2));
    }
    for t in tuples(n, 2) {
        let (i, j) = (t[0], t[1]);
        push(4, t.clone(), [Z(j), s(i, j)].repeat(2));
    }
    let triples = tuples(n, 3);
    for t in &triples {
        let (i, j, k) = (t[0], t[1], t[2]);
        push(5, t.clone(), commutator(&[Z(i)], &[s(j, k)]));
    }
    for t in &triples {
        let (i, j, k) = (t[0], t[1], t[2]);
        push(6, t.clone(), commutator(&[s(k, i)], &[s(k, j)]));
    }
    for t in tuples(n, 4) {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        push(7, t.clone(), commutator(&[s(i, j)], &[s(k, l)]));
    }
    for t in &triples {
        let (i, j, k) = (t[0], t[1], t[2]);
        push(8, t.clone(), commutator(&[s(j, i)], &[s(k, i)]));
    }
    for t in &triples {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mut w = commutator(&[s(k, j)], &[s(j, i)]);
        w.extend([si(k, i), si(k, i)]);
        push(9, t.clone(), w);
    }
    for t in &triples {
        let (i, j, k) = (t[0], t[1], t[2]);
        let half = [s(i, j), si(i, k), s(k, i), s(j, i), s(j, k), si(k, j)];
        push(10, t.clone(), half.repeat(2));
    }
    match filter {
        RelatorFilter::All => out,
        RelatorFilter::RGamma(g) => {
            let dd = g.domination();
            out.into_iter()
                .filter(|r| {
                    r.word.iter().all(|sym| match *sym {
                        MatrixSymbol::S { row, col, .. } => s_allowed(dd, row, col),
                        MatrixSymbol::Z(_) => true,
                    })
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum BlockViolation {
    /// Nonzero block above the diagonal.
    AboveDiagonal { row_block: usize, col_block: usize },
    /// Nonzero block below the diagonal where domination forbids it.
    Disallowed { row_block: usize, col_block: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockDecomposition {
    pub class_sizes: Vec<usize>,
    pub diagonal_blocks: Vec<Vec<Vec<i64>>>,
    /// Keyed by `(row block, column block)` with column block < row block.
    #[serde(serialize_with = "serialize_pair_map")]
    pub below_diagonal: BTreeMap<(usize, usize), Vec<Vec<i64>>>,
    /// `allowed[i][j]` for `j < i`: the column class is dominated by the row class.
    pub allowed: Vec<Vec<bool>>,
    pub violations: Vec<BlockViolation>,
}

fn serialize_pair_map<S: serde::Serializer>(
    map: &BTreeMap<(usize, usize), Vec<Vec<i64>>>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = ser.serialize_map(Some(map.len()))?;
    for ((i, j), block) in map {
        m.serialize_entry(&format!("{i},{j}"), block)?;
    }
    m.end()
}

pub fn block_decompose(m: &IntegerMatrix, dd: &DominationData) -> BlockDecomposition {
    let k = dd.classes.len();
    let ranges: Vec<Range<usize>> = (0..k).map(|i| dd.class_range(i)).collect();
    let nonzero = |b: &[Vec<i64>]| b.iter().flatten().any(|&x| x != 0);
    let mut diagonal_blocks = Vec::with_capacity(k);
    let mut below_diagonal = BTreeMap::new();
    let mut allowed = vec![vec![false; k]; k];
    let mut violations = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let block = m.block(ranges[i].clone(), ranges[j].clone());
            match j.cmp(&i) {
                std::cmp::Ordering::Equal => diagonal_blocks.push(block),
                std::cmp::Ordering::Greater => {
                    if nonzero(&block) {
                        violations.push(BlockViolation::AboveDiagonal {
                            row_block: i,
                            col_block: j,
                        });
                    }
                }
                std::cmp::Ordering::Less => {
                    allowed[i][j] = dd.class_dominates(j, i);
                    if nonzero(&block) && !allowed[i][j] {
                        violations.push(BlockViolation::Disallowed {
                            row_block: i,
                            col_block: j,
                        });
                    }
                    below_diagonal.insert((i, j), block);
                }
            }
        }
    }
    BlockDecomposition {
        class_sizes: dd.class_sizes(),
        diagonal_blocks,
        below_diagonal,
        allowed,
        violations,
    }
}

/// Every free diagonal block has exactly one odd entry in each row and column.
pub fn free_block_check(m: &IntegerMatrix, dd: &DominationData) -> bool {
    (0..dd.classes.len())
        .filter(|&i| dd.class_kind[i] == ClassKind::Free)
        .all(|i| {
            let r = dd.class_range(i);
            let odd = |x: i64| x.rem_euclid(2) == 1;
            r.clone()
                .all(|row| r.clone().filter(|&c| odd(m.get(row, c))).count() == 1)
                && r.clone()
                    .all(|c| r.clone().filter(|&row| odd(m.get(row, c))).count() == 1)
        })
}

/// Reduce `m` to the identity by column operations with level-2 generators.
///
/// `blocks` are consecutive index ranges in block-lower-triangular order and
/// `allowed(row, col)` licenses `S_{row,col}`. Returns a word whose product
/// is `m`. Columns already equal to a unit vector are never touched.
pub fn reduce_level2(
    m: &IntegerMatrix,
    blocks: &[Range<usize>],
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Result<Vec<MatrixSymbol>> {
    let n = m.dim();
    for r in 0..n {
        for c in 0..n {
            let want = i64::from(r == c);
            if (m.get(r, c) - want).rem_euclid(2) != 0 {
                return Err(Error::NotInTheta(format!(
                    "entry ({},{}) has the wrong parity",
                    r + 1,
                    c + 1
                )));
            }
        }
    }
    let mut work = m.clone();
    let mut ops: Vec<MatrixSymbol> = Vec::new();
    // right-multiply by S_{a,t}^{e}: column t += 2e * column a
    let apply_s = |work: &mut IntegerMatrix,
                   ops: &mut Vec<MatrixSymbol>,
                   a: usize,
                   t: usize,
                   e: i64|
     -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if !allowed(a, t) {
            return Err(Error::NotInTheta(format!(
                "entry ({},{}) needs a generator outside the image",
                a + 1,
                t + 1
            )));
        }
        work.add_column_multiple(t, a, 2 * e);
        let sym = MatrixSymbol::S {
            row: a,
            col: t,
            inverse: e < 0,
        };
        ops.extend(std::iter::repeat_n(sym, e.unsigned_abs() as usize));
        Ok(())
    };
    for block in blocks {
        for r in block.clone() {
            for c in block.end..n {
                if work.get(r, c) != 0 {
                    return Err(Error::NotInTheta(format!(
                        "entry ({},{}) above the block diagonal",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        let mut done: Vec<usize> = Vec::new();
        for r in block.clone() {
            let open: Vec<usize> = block.clone().filter(|c| !done.contains(c)).collect();
            loop {
                let nz: Vec<usize> = open
                    .iter()
                    .copied()
                    .filter(|&c| work.get(r, c) != 0)
                    .collect();
                if nz == [r] && work.get(r, r).abs() == 1 {
                    break;
                }
                let t = *nz
                    .iter()
                    .max_by(|&&x, &&y| {
                        work.get(r, x)
                            .abs()
                            .cmp(&work.get(r, y).abs())
                            .then(y.cmp(&x))
                    })
                    .ok_or_else(|| Error::NotInTheta(format!("row {} vanishes", r + 1)))?;
                let a = nz.iter().copied().filter(|&c| c != t).min_by(|&x, &y| {
                    work.get(r, x)
                        .abs()
                        .cmp(&work.get(r, y).abs())
                        .then(x.cmp(&y))
                });
                let a = match a {
                    Some(a) if work.get(r, a).abs() < work.get(r, t).abs() => a,
                    _ => {
                        return Err(Error::NotInTheta(format!(
                            "Euclidean reduction stalled on row {}",
                            r + 1
                        )))
                    }
                };
                let e = -work.get(r, t).signum() * work.get(r, a).signum();
                apply_s(&mut work, &mut ops, a, t, e)?;
            }
            if work.get(r, r) == -1 {
                work.negate_column(r);
                ops.push(MatrixSymbol::Z(r));
            }
            for &p in &done {
                let x = work.get(r, p);
                apply_s(&mut work, &mut ops, r, p, -x / 2)?;
            }
            done.push(r);
        }
        for r in block.clone() {
            for c in 0..block.start {
                let x = work.get(r, c);
                apply_s(&mut work, &mut ops, r, c, -x / 2)?;
            }
        }
    }
    if !work.is_identity() {
        return Err(Error::NotInTheta(
            "reduction did not reach the identity".into(),
        ));
    }
    Ok(ops.into_iter().rev().map(MatrixSymbol::inverse).collect())
}

/// Factor `m` over `{Z_i, S_ji : v_i <= v_j}` in the block basis of `dd`.
pub fn factor_theta(m: &IntegerMatrix, dd: &DominationData) -> Result<Vec<MatrixSymbol>> {
    let bd = block_decompose(m, dd);
    if let Some(v) = bd.violations.first() {
        return Err(Error::NotInTheta(format!("block violation {v:?}")));
    }
    let blocks: Vec<Range<usize>> = (0..dd.classes.len()).map(|i| dd.class_range(i)).collect();
    reduce_level2(m, &blocks, &|r, c| s_allowed(dd, r, c))
}

/// Lift a matrix word to generators of the pure palindromic group.
pub fn lift_word(g: &SimplicialGraph, word: &[MatrixSymbol]) -> Vec<GeneratorSymbol> {
    let order = &g.domination().vertex_order;
    word.iter().map(|s| s.lift(order)).collect()
}
