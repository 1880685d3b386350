//! Exact integral simplicial homology.
//!
//! Boundary operators are assembled from the maximal-face representation,
//! reduced by Smith normal form over arbitrary-precision integers, and
//! summarised as signatures. Before homology is taken, a complex is shrunk by
//! strong collapses (deleting vertices dominated by another vertex), which
//! preserve homotopy type.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::complexes::SimplicialComplex;

/// Default cap on the number of faces enumerated.
pub const DEFAULT_FACE_GUARD: usize = 200_000;
/// Environment variable overriding [`DEFAULT_FACE_GUARD`].
pub const FACE_GUARD_ENV: &str = "HYPERCX_FACE_GUARD";
/// Matrices up to this size have their Smith transforms re-multiplied.
pub const TRANSFORM_CHECK_LIMIT: usize = 50;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("face enumeration exceeded the guard of {guard} faces")]
    FaceGuard { guard: usize },
    #[error("reduced and unreduced signatures cannot be compared")]
    MixedReduction,
    #[error("wedge supports are defined for reduced signatures only")]
    Unreduced,
    #[error("boundary composition d{0} o d{next} is non-zero", next = .0 + 1)]
    BoundaryNotChain(usize),
}

/// Face guard from the environment, else the default.
pub fn face_guard() -> usize {
    std::env::var(FACE_GUARD_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_FACE_GUARD)
}

/// Sparse integer matrix, stored by column with rows ascending and no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Sums repeated entries; drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut by_col: Vec<std::collections::BTreeMap<usize, BigInt>> = vec![Default::default(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *by_col[c].entry(r).or_insert_with(BigInt::zero) += v;
        }
        IntegerMatrix {
            rows,
            cols: by_col.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone())));
        Self::from_triplets(rows.len(), n, entries)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.cols[c]
            .binary_search_by_key(&r, |e| e.0)
            .map_or_else(|_| BigInt::zero(), |i| self.cols[c][i].1.clone())
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.cols[c]
    }

    /// `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let mut cols = Vec::with_capacity(other.cols());
        for col in &other.cols {
            let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
            for (k, b) in col {
                for (r, a) in &self.cols[*k] {
                    *acc.entry(*r).or_insert_with(BigInt::zero) += a * b;
                }
            }
            cols.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        IntegerMatrix { rows: self.rows, cols }
    }
}

/// Invariant factors `d1 | d2 | ... | dr` (all positive) and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` in Smith form.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

fn dense_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

impl SmithDecomposition {
    /// Re-multiplies `u * m * v` and compares it with `d`.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let dm = m.to_dense();
        let lhs = dense_mul(&dense_mul(&self.u, &dm), &self.v);
        lhs == self.d
    }

    pub fn smith_form(&self) -> SmithForm {
        let invariant_factors: Vec<BigInt> = (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect();
        SmithForm { rank: invariant_factors.len(), invariant_factors }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Dense Smith elimination with least-absolute-value pivots. When `track` is
/// set the row transform `u` and column transform `v` are maintained.
struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Dense {
    fn new(a: Vec<Vec<BigInt>>, track: bool) -> Self {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        Dense { u: track.then(|| identity(m)), v: track.then(|| identity(n)), a }
    }

    fn m(&self) -> usize {
        self.a.len()
    }

    fn n(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_t
    fn sub_row(&mut self, i: usize, t: usize, q: &BigInt) {
        fn apply(mat: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
            let (src, dst) = if i < t {
                let (lo, hi) = mat.split_at_mut(t);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = mat.split_at_mut(i);
                (&lo[t], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= q * s;
                }
            }
        }
        apply(&mut self.a, i, t, q);
        if let Some(u) = &mut self.u {
            apply(u, i, t, q);
        }
    }

    /// col_j -= q * col_t
    fn sub_col(&mut self, j: usize, t: usize, q: &BigInt) {
        fn apply(mat: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
            for row in mat {
                if !row[t].is_zero() {
                    let s = q * &row[t];
                    row[j] -= s;
                }
            }
        }
        apply(&mut self.a, j, t, q);
        if let Some(v) = &mut self.v {
            apply(v, j, t, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m() {
            for j in t..self.n() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let r = self.m().min(self.n());
        let mut t = 0;
        while t < r {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.m() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.sub_row(i, t, &q);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.n() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.sub_col(j, t, &q);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    // a smaller remainder becomes the pivot
                    let mut best = (t, t);
                    for i in t..self.m() {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t..self.n() {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility: a row with an entry not divisible by the pivot is folded in
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.m()).find(|&i| (t + 1..self.n()).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.sub_row(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.m().min(self.n())).map(|i| self.a[i][i].clone()).filter(|x| !x.is_zero()).collect()
    }
}

/// Smith decomposition with transforms, by dense elimination.
pub fn smith_decomposition(m: &IntegerMatrix) -> SmithDecomposition {
    let mut d = Dense::new(m.to_dense(), true);
    d.run();
    SmithDecomposition { u: d.u.take().expect("tracked"), v: d.v.take().expect("tracked"), d: d.a }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeff {
    Small(i64),
    Big(BigInt),
}

impl Coeff {
    fn from_big(b: BigInt) -> Coeff {
        b.to_i64().map_or(Coeff::Big(b), Coeff::Small)
    }

    fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(x) => BigInt::from(*x),
            Coeff::Big(b) => b.clone(),
        }
    }

    fn is_unit(&self) -> bool {
        matches!(self, Coeff::Small(1 | -1))
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    /// `self - f * g`
    fn sub_mul(&self, f: &Coeff, g: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b), Coeff::Small(c)) = (self, f, g) {
            if let Some(x) = b.checked_mul(*c).and_then(|p| a.checked_sub(p)) {
                return Coeff::Small(x);
            }
        }
        Coeff::from_big(self.to_big() - f.to_big() * g.to_big())
    }

    fn neg(&self) -> Coeff {
        match self {
            Coeff::Small(x) => x.checked_neg().map_or_else(|| Coeff::Big(-BigInt::from(*x)), Coeff::Small),
            Coeff::Big(b) => Coeff::from_big(-b.clone()),
        }
    }
}

type SparseRow = Vec<(usize, Coeff)>;

/// `dst - f * src` for sorted sparse rows.
fn row_sub_mul(dst: &SparseRow, f: &Coeff, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let v = Coeff::Small(0).sub_mul(f, &src[j].1);
            out.push((src[j].0, v));
            j += 1;
        } else {
            let v = dst[i].1.sub_mul(f, &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Smith normal form: sparse elimination on unit pivots, chosen by short
/// rows and short columns, then dense elimination of what remains.
/// Matrices up to [`TRANSFORM_CHECK_LIMIT`] on each side are decomposed with
/// transforms, which are re-multiplied and checked.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    if m.rows() <= TRANSFORM_CHECK_LIMIT && m.cols() <= TRANSFORM_CHECK_LIMIT {
        let dec = smith_decomposition(m);
        assert!(dec.verify(m), "Smith transforms do not reproduce the matrix");
        return dec.smith_form();
    }
    let mut rows: Vec<SparseRow> = vec![Vec::new(); m.rows()];
    for (r, c, v) in m.entries() {
        rows[r].push((c, Coeff::from_big(v.clone())));
    }
    for row in &mut rows {
        row.sort_by_key(|e| e.0);
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut active = vec![true; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i))).collect();
    let mut unit_pivots = 0usize;
    while let Some(Reverse((len, r))) = heap.pop() {
        if !active[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let Some((c, p)) = rows[r]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(c, _)| col_rows[*c].len())
            .cloned()
        else {
            continue;
        };
        let pivot_row = std::mem::take(&mut rows[r]);
        active[r] = false;
        for (cc, _) in &pivot_row {
            col_rows[*cc].remove(&r);
        }
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for s in targets {
            let a = rows[s][rows[s].binary_search_by_key(&c, |e| e.0).expect("indexed entry")].1.clone();
            // p is a unit, so p^-1 = p
            let f = match p {
                Coeff::Small(1) => a,
                _ => a.neg(),
            };
            let old_cols: BTreeSet<usize> = rows[s].iter().map(|e| e.0).collect();
            let new = row_sub_mul(&rows[s], &f, &pivot_row);
            let new_cols: BTreeSet<usize> = new.iter().map(|e| e.0).collect();
            for cc in old_cols.difference(&new_cols) {
                col_rows[*cc].remove(&s);
            }
            for cc in new_cols.difference(&old_cols) {
                col_rows[*cc].insert(s);
            }
            rows[s] = new;
            heap.push(Reverse((rows[s].len(), s)));
        }
        unit_pivots += 1;
    }
    let rest_rows: Vec<usize> = (0..rows.len()).filter(|&r| active[r] && !rows[r].is_empty()).collect();
    let rest_cols: Vec<usize> = (0..col_rows.len()).filter(|&c| !col_rows[c].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = rest_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
    for (i, &r) in rest_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            dense[i][col_pos[c]] = v.to_big();
        }
    }
    let mut d = Dense::new(dense, false);
    d.run();
    let mut invariant_factors = vec![BigInt::one(); unit_pivots];
    invariant_factors.extend(d.diagonal());
    SmithForm { rank: invariant_factors.len(), invariant_factors }
}

/// Repeatedly deletes a vertex whose maximal faces all contain some other
/// common vertex. The result is homotopy equivalent to the input.
pub fn strong_collapse(k: &SimplicialComplex) -> SimplicialComplex {
    let mut faces: Vec<Vec<u32>> = k.face_indices().to_vec();
    let n = k.vertex_count();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n as u32 {
            if !alive[v as usize] {
                continue;
            }
            let mut common: Option<Vec<u32>> = None;
            for f in faces.iter().filter(|f| f.binary_search(&v).is_ok()) {
                common = Some(match common {
                    None => f.clone(),
                    Some(c) => c.into_iter().filter(|x| f.binary_search(x).is_ok()).collect(),
                });
                if common.as_ref().is_some_and(|c| c.len() < 2) {
                    break;
                }
            }
            if common.is_some_and(|c| c.len() >= 2) {
                alive[v as usize] = false;
                for f in &mut faces {
                    f.retain(|&x| x != v);
                }
                faces.retain(|f| !f.is_empty());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let labels = k.vertices();
    SimplicialComplex::from_faces(faces.iter().map(|f| f.iter().map(|&i| labels[i as usize].clone()).collect::<Vec<_>>()))
}

/// Faces of each dimension `0..=max_degree`, each list sorted.
fn enumerate_faces(k: &SimplicialComplex, max_degree: usize, guard: usize) -> Result<Vec<Vec<Vec<u32>>>, HomologyError> {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); max_degree + 1];
    let mut total = 0usize;
    for f in k.face_indices() {
        let top = (f.len() - 1).min(max_degree);
        for (d, faces) in by_dim.iter_mut().enumerate().take(top + 1) {
            // combinations of size d+1
            let mut idx: Vec<usize> = (0..=d).collect();
            loop {
                if faces.insert(idx.iter().map(|&i| f[i]).collect()) {
                    total += 1;
                    if total > guard {
                        return Err(HomologyError::FaceGuard { guard });
                    }
                }
                let mut i = d as isize;
                while i >= 0 && idx[i as usize] == f.len() - (d + 1) + i as usize {
                    i -= 1;
                }
                if i < 0 {
                    break;
                }
                idx[i as usize] += 1;
                for j in i as usize + 1..=d {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
    Ok(by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn boundaries_of(faces: &[Vec<Vec<u32>>]) -> Vec<IntegerMatrix> {
    let mut out = vec![IntegerMatrix::zero(0, faces.first().map_or(0, Vec::len))];
    for k in 1..faces.len() {
        let index: HashMap<&[u32], usize> = faces[k - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut trip = Vec::with_capacity(faces[k].len() * (k + 1));
        let mut buf = Vec::with_capacity(k);
        for (c, f) in faces[k].iter().enumerate() {
            for i in 0..f.len() {
                buf.clear();
                buf.extend(f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
                let sign = if i % 2 == 0 { 1 } else { -1 };
                trip.push((index[buf.as_slice()], c, BigInt::from(sign)));
            }
        }
        out.push(IntegerMatrix::from_triplets(faces[k - 1].len(), faces[k].len(), trip));
    }
    out
}

/// `∂_k` for `k = 0..=max_degree`, `∂_0` being the `0 x n_0` matrix, with
/// faces ordered lexicographically and oriented by sorted vertex order.
pub fn boundary_matrices(k: &SimplicialComplex, max_degree: usize) -> Result<Vec<IntegerMatrix>, HomologyError> {
    let faces = enumerate_faces(k, max_degree, face_guard())?;
    let ds = boundaries_of(&faces);
    for i in 1..ds.len().saturating_sub(1) {
        if !ds[i].mul(&ds[i + 1]).is_zero() {
            return Err(HomologyError::BoundaryNotChain(i));
        }
    }
    Ok(ds)
}

/// Face counts `f_0, f_1, ...`.
pub fn face_counts(k: &SimplicialComplex) -> Result<Vec<usize>, HomologyError> {
    let Some(dim) = k.dimension() else { return Ok(Vec::new()) };
    Ok(enumerate_faces(k, dim, face_guard())?.iter().map(Vec::len).collect())
}

pub fn euler_characteristic(k: &SimplicialComplex) -> Result<i64, HomologyError> {
    Ok(face_counts(k)?
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum())
}

/// `Z^betti ⊕ Z/t1 ⊕ Z/t2 ⊕ ...` with `t1 | t2 | ...`, all `ti > 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(format!("Z^{}", self.betti));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Homology in degrees `0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologySignature {
    pub groups: Vec<HomologyGroup>,
    pub reduced: bool,
}

impl HomologySignature {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn degree(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    /// Whether every group vanishes (reduced: the complex is acyclic).
    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_trivial)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let chi: i64 = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum();
        if self.reduced && !self.groups.is_empty() {
            chi + 1
        } else {
            chi
        }
    }

    /// Direct sum degree by degree; both sides must share reduction.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, HomologyError> {
        if self.reduced != other.reduced {
            return Err(HomologyError::MixedReduction);
        }
        let n = self.groups.len().max(other.groups.len());
        let groups = (0..n)
            .map(|k| {
                let (a, b) = (self.degree(k), other.degree(k));
                let diag: Vec<BigInt> = a.torsion.iter().chain(&b.torsion).cloned().collect();
                HomologyGroup { betti: a.betti + b.betti, torsion: normalize_torsion(diag) }
            })
            .collect();
        Ok(HomologySignature { groups, reduced: self.reduced })
    }

    /// Trailing trivial degrees removed.
    pub fn trimmed(&self) -> Self {
        let mut groups = self.groups.clone();
        while groups.last().is_some_and(HomologyGroup::is_trivial) {
            groups.pop();
        }
        HomologySignature { groups, reduced: self.reduced }
    }
}

impl fmt::Display for HomologySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.reduced { "~" } else { "" };
        for (k, g) in self.groups.iter().enumerate() {
            writeln!(f, "H{tilde}_{k} = {g}")?;
        }
        Ok(())
    }
}

/// Invariant-factor form of a finite abelian group given by any diagonal.
pub fn normalize_torsion(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub reduced: bool,
    pub face_guard: usize,
    /// Shrink by strong collapses first.
    pub collapse: bool,
}

impl HomologyOptions {
    pub fn new(reduced: bool) -> Self {
        HomologyOptions { reduced, face_guard: face_guard(), collapse: true }
    }
}

pub fn homology(k: &SimplicialComplex, reduced: bool) -> Result<HomologySignature, HomologyError> {
    homology_with(k, &HomologyOptions::new(reduced))
}

pub fn homology_with(k: &SimplicialComplex, opts: &HomologyOptions) -> Result<HomologySignature, HomologyError> {
    let Some(dim) = k.dimension() else {
        return Ok(HomologySignature { groups: Vec::new(), reduced: opts.reduced });
    };
    let work = if opts.collapse { strong_collapse(k) } else { k.clone() };
    let wdim = work.dimension().unwrap_or(0);
    // one degree past the top, so that ∂_{wdim+1} = 0 is implicit
    let faces = enumerate_faces(&work, wdim, opts.face_guard)?;
    let mut ds = boundaries_of(&faces);
    if opts.reduced {
        let n0 = faces[0].len();
        ds[0] = IntegerMatrix::from_triplets(1, n0, (0..n0).map(|c| (0, c, BigInt::one())));
    }
    let snf: Vec<SmithForm> = ds.par_iter().map(smith_normal_form).collect();
    let groups = (0..=dim)
        .map(|d| {
            if d > wdim {
                return HomologyGroup::default();
            }
            let n = faces[d].len();
            let rk_d = snf[d].rank;
            let (rk_up, torsion) = snf.get(d + 1).map_or((0, Vec::new()), |s| (s.rank, s.torsion()));
            HomologyGroup { betti: n - rk_d - rk_up, torsion }
        })
        .collect();
    Ok(HomologySignature { groups, reduced: opts.reduced })
}

/// Support data in one degree: whether a free summand occurs, and the prime
/// powers occurring as elementary divisors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeSupport {
    pub has_free: bool,
    pub elementary_divisors: BTreeSet<BigInt>,
}

/// What survives of reduced homology under an infinite wedge of copies:
/// multiplicities are forgotten. Trailing empty degrees are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WedgeSupport {
    pub degrees: Vec<DegreeSupport>,
}

/// Prime-power factors of `n > 0`.
fn prime_powers(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut q = BigInt::one();
            while n.is_multiple_of(&p) {
                n /= &p;
                q *= &p;
            }
            out.push(q);
        }
        p += 1;
    }
    if !n.is_one() {
        out.push(n);
    }
    out
}

pub fn wedge_support(sig: &HomologySignature) -> Result<WedgeSupport, HomologyError> {
    if !sig.reduced {
        return Err(HomologyError::Unreduced);
    }
    let mut degrees: Vec<DegreeSupport> = sig
        .groups
        .iter()
        .map(|g| DegreeSupport {
            has_free: g.betti > 0,
            elementary_divisors: g.torsion.iter().flat_map(prime_powers).collect(),
        })
        .collect();
    while degrees.last().is_some_and(|d| !d.has_free && d.elementary_divisors.is_empty()) {
        degrees.pop();
    }
    Ok(WedgeSupport { degrees })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Supports differ; `degree` is the least degree where they do.
    Distinguished { degree: usize },
    NotDistinguished,
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished { degree } => write!(f, "distinguished (degree {degree})"),
            Verdict::NotDistinguished => write!(f, "not_distinguished_by_this_invariant"),
        }
    }
}

pub fn compare_wedge_supports(a: &WedgeSupport, b: &WedgeSupport) -> Verdict {
    let n = a.degrees.len().max(b.degrees.len());
    let empty = DegreeSupport::default();
    (0..n)
        .find(|&k| a.degrees.get(k).unwrap_or(&empty) != b.degrees.get(k).unwrap_or(&empty))
        .map_or(Verdict::NotDistinguished, |degree| Verdict::Distinguished { degree })
}

/// Compares two signatures through their wedge supports.
pub fn compare_signatures(a: &HomologySignature, b: &HomologySignature) -> Result<Verdict, HomologyError> {
    if a.reduced != b.reduced {
        return Err(HomologyError::MixedReduction);
    }
    Ok(compare_wedge_supports(&wedge_support(a)?, &wedge_support(b)?))
}
