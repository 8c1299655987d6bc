//! Indecomposable summands of bounded double complexes: dots, zigzags and
//! squares, their multiplicities, and the property checkers built on them.
//!
//! Multiplicities are computed twice, by independent routes:
//!
//! * `multiplicities_from_ranks` reads even zigzags off the differential
//!   ranks of the two spectral sequences and odd zigzags off the bifiltered
//!   gradings b_k^{p,q}; square counts are then the unique solution of the
//!   bookkeeping equations.
//! * `brute_force_decompose` performs alternating pivot reduction on the
//!   differential blocks until every block is a partial permutation matrix,
//!   and reads connected components of the resulting basis graph.
//!
//! Their agreement on random complexes is a release gate for the odd-zigzag
//! grading convention.

use std::collections::{BTreeMap, BTreeSet};

use crate::bicomplex::{Bicomplex, Bidegree};
use crate::error::{Error, Result};
use crate::linalg::Cyclotomic;
use crate::spectral::{fss, purity_table, PurityTable, SpectralKind, SpectralReport};

/// Which differential an arrow belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiffKind {
    Del,
    Delbar,
}

/// Orientation of an even zigzag: `Column` is the staircase whose length-2r
/// instance witnesses a rank-1 differential d_r of the column spectral
/// sequence (its top-left loose end is ∂̄-closed); `Row` is its mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EvenKind {
    Column,
    Row,
}

/// Orientation of an odd zigzag of length ≥ 3: `CornerUp` has single
/// generators with both ∂ and ∂̄ images (extremal spaces on the upper
/// antidiagonal); `CornerDown` has extremal generators on the lower one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OddKind {
    CornerUp,
    CornerDown,
}

/// An indecomposable zigzag type. The anchor is the lexicographically least
/// occupied bidegree; dots carry only the anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ZigzagShape {
    Dot { p: i64, q: i64 },
    Even { anchor: Bidegree, r: usize, kind: EvenKind },
    Odd { anchor: Bidegree, s: usize, kind: OddKind },
}

impl ZigzagShape {
    pub fn dot(p: i64, q: i64) -> Self {
        ZigzagShape::Dot { p, q }
    }

    pub fn length(&self) -> usize {
        match self {
            ZigzagShape::Dot { .. } => 1,
            ZigzagShape::Even { r, .. } => 2 * r,
            ZigzagShape::Odd { s, .. } => 2 * s + 1,
        }
    }

    pub fn anchor(&self) -> Bidegree {
        match self {
            ZigzagShape::Dot { p, q } => (*p, *q),
            ZigzagShape::Even { anchor, .. } | ZigzagShape::Odd { anchor, .. } => *anchor,
        }
    }

    /// Generator bidegrees (spaces with outgoing arrows).
    pub fn generators(&self) -> Vec<Bidegree> {
        match *self {
            ZigzagShape::Dot { .. } => vec![],
            ZigzagShape::Even { anchor: (a, b), r, .. } => {
                (0..r as i64).map(|i| (a + i, b - i)).collect()
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind: OddKind::CornerUp } => {
                (0..s as i64).map(|i| (a + i, b - i)).collect()
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind: OddKind::CornerDown } => {
                (0..=s as i64).map(|i| (a + i, b - i)).collect()
            }
        }
    }

    /// Image bidegrees (spaces hit by arrows).
    pub fn images(&self) -> Vec<Bidegree> {
        match *self {
            ZigzagShape::Dot { .. } => vec![],
            ZigzagShape::Even { anchor: (a, b), r, kind: EvenKind::Column } => {
                (0..r as i64).map(|i| (a + i + 1, b - i)).collect()
            }
            ZigzagShape::Even { anchor: (a, b), r, kind: EvenKind::Row } => {
                (0..r as i64).map(|i| (a + i, b - i + 1)).collect()
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind: OddKind::CornerUp } => {
                (0..=s as i64).map(|i| (a + i, b - i + 1)).collect()
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind: OddKind::CornerDown } => {
                (0..s as i64).map(|i| (a + i + 1, b - i)).collect()
            }
        }
    }

    /// All occupied bidegrees, a connected staircase on two adjacent
    /// antidiagonals, sorted.
    pub fn occupied(&self) -> Vec<Bidegree> {
        match self {
            ZigzagShape::Dot { p, q } => vec![(*p, *q)],
            _ => {
                let mut v = self.generators();
                v.extend(self.images());
                v.sort();
                v
            }
        }
    }

    /// Arrows as (from, to, kind) triples.
    pub fn arrows(&self) -> Vec<(Bidegree, Bidegree, DiffKind)> {
        let mut out = Vec::new();
        match *self {
            ZigzagShape::Dot { .. } => {}
            ZigzagShape::Even { anchor: (a, b), r, kind: EvenKind::Column } => {
                for i in 0..r as i64 {
                    out.push(((a + i, b - i), (a + i + 1, b - i), DiffKind::Del));
                    if i + 1 < r as i64 {
                        out.push(((a + i + 1, b - i - 1), (a + i + 1, b - i), DiffKind::Delbar));
                    }
                }
            }
            ZigzagShape::Even { anchor: (a, b), r, kind: EvenKind::Row } => {
                for i in 0..r as i64 {
                    out.push(((a + i, b - i), (a + i, b - i + 1), DiffKind::Delbar));
                    if i + 1 < r as i64 {
                        out.push(((a + i, b - i), (a + i + 1, b - i), DiffKind::Del));
                    }
                }
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind: OddKind::CornerUp } => {
                for i in 0..s as i64 {
                    out.push(((a + i, b - i), (a + i, b - i + 1), DiffKind::Delbar));
                    out.push(((a + i, b - i), (a + i + 1, b - i), DiffKind::Del));
                }
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind: OddKind::CornerDown } => {
                for i in 0..s as i64 {
                    out.push(((a + i, b - i), (a + i + 1, b - i), DiffKind::Del));
                    out.push(((a + i + 1, b - i - 1), (a + i + 1, b - i), DiffKind::Delbar));
                }
            }
        }
        out
    }

    /// Reflection along the diagonal p = q (the mirror symmetry): transposes
    /// anchors and swaps even-zigzag orientations.
    pub fn reflect_diagonal(&self) -> ZigzagShape {
        match *self {
            ZigzagShape::Dot { p, q } => ZigzagShape::Dot { p: q, q: p },
            ZigzagShape::Even { anchor: (a, b), r, kind } => {
                let r_i = r as i64;
                let anchor = (b - r_i + 1, a + r_i - 1);
                let kind = match kind {
                    EvenKind::Column => EvenKind::Row,
                    EvenKind::Row => EvenKind::Column,
                };
                ZigzagShape::Even { anchor, r, kind }
            }
            ZigzagShape::Odd { anchor: (a, b), s, kind } => {
                let s_i = s as i64;
                let anchor = match kind {
                    OddKind::CornerUp => (b - s_i + 1, a + s_i - 1),
                    OddKind::CornerDown => (b - s_i, a + s_i),
                };
                ZigzagShape::Odd { anchor, s, kind }
            }
        }
    }

    /// Reflection along the antidiagonal p + q = k: maps (p,q) ↦ (k−q, k−p)
    /// and reverses all arrows.
    pub fn reflect_antidiagonal(&self, k: i64) -> ZigzagShape {
        match *self {
            ZigzagShape::Dot { p, q } => ZigzagShape::Dot { p: k - q, q: k - p },
            ZigzagShape::Even { anchor: (a, b), r, kind } => match kind {
                EvenKind::Column => {
                    ZigzagShape::Even { anchor: (k - b, k - a - 1), r, kind: EvenKind::Row }
                }
                EvenKind::Row => {
                    ZigzagShape::Even { anchor: (k - b - 1, k - a), r, kind: EvenKind::Column }
                }
            },
            ZigzagShape::Odd { anchor: (a, b), s, kind } => match kind {
                OddKind::CornerUp => {
                    ZigzagShape::Odd { anchor: (k - b - 1, k - a), s, kind: OddKind::CornerDown }
                }
                OddKind::CornerDown => {
                    ZigzagShape::Odd { anchor: (k - b, k - a - 1), s, kind: OddKind::CornerUp }
                }
            },
        }
    }

    /// A complex consisting of exactly this zigzag, with unit arrows.
    pub fn realize(&self, field_order: u32) -> Bicomplex {
        let mut b = Bicomplex::builder(field_order);
        for (p, q) in self.occupied() {
            b = b.dim(p, q, 1);
        }
        for (from, _to, kind) in self.arrows() {
            let m = crate::linalg::SparseMatrix::identity(field_order, 1);
            b = match kind {
                DiffKind::Del => b.del(from.0, from.1, m),
                DiffKind::Delbar => b.delbar(from.0, from.1, m),
            };
        }
        let out = b.build().unwrap();
        debug_assert!(out.validate().is_valid());
        out
    }
}

impl std::fmt::Display for ZigzagShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZigzagShape::Dot { p, q } => write!(f, "dot @({p},{q})"),
            ZigzagShape::Even { anchor, r, kind } => write!(
                f,
                "zigzag len={} {} @({},{})",
                2 * r,
                match kind {
                    EvenKind::Column => "col",
                    EvenKind::Row => "row",
                },
                anchor.0,
                anchor.1
            ),
            ZigzagShape::Odd { anchor, s, kind } => write!(
                f,
                "zigzag len={} {} @({},{})",
                2 * s + 1,
                match kind {
                    OddKind::CornerUp => "corner-up",
                    OddKind::CornerDown => "corner-down",
                },
                anchor.0,
                anchor.1
            ),
        }
    }
}

/// A square summand, realized with the one sign anticommutation forces.
pub fn realize_square(field_order: u32, p: i64, q: i64) -> Bicomplex {
    let id = crate::linalg::SparseMatrix::identity(field_order, 1);
    Bicomplex::builder(field_order)
        .dim(p, q, 1)
        .dim(p + 1, q, 1)
        .dim(p, q + 1, 1)
        .dim(p + 1, q + 1, 1)
        .del(p, q, id.clone())
        .del(p, q + 1, id.neg())
        .delbar(p, q, id.clone())
        .delbar(p + 1, q, id)
        .build()
        .unwrap()
}

/// Multiplicities of a decomposition into indecomposables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZigzagMultiset {
    pub zig: BTreeMap<ZigzagShape, usize>,
    /// Squares by anchor (their lexicographically least corner).
    pub squares: BTreeMap<Bidegree, usize>,
}

impl ZigzagMultiset {
    pub fn add_shape(&mut self, shape: ZigzagShape, mult: usize) {
        if mult > 0 {
            *self.zig.entry(shape).or_insert(0) += mult;
        }
    }

    pub fn add_square(&mut self, anchor: Bidegree, mult: usize) {
        if mult > 0 {
            *self.squares.entry(anchor).or_insert(0) += mult;
        }
    }

    pub fn merge(&self, other: &ZigzagMultiset) -> ZigzagMultiset {
        let mut out = self.clone();
        for (&s, &m) in &other.zig {
            out.add_shape(s, m);
        }
        for (&a, &m) in &other.squares {
            out.add_square(a, m);
        }
        out
    }

    /// Total dimension covered at each bidegree (squares cover four).
    pub fn coverage(&self) -> BTreeMap<Bidegree, usize> {
        let mut cov: BTreeMap<Bidegree, usize> = BTreeMap::new();
        for (shape, &m) in &self.zig {
            for cell in shape.occupied() {
                *cov.entry(cell).or_insert(0) += m;
            }
        }
        for (&(p, q), &m) in &self.squares {
            for cell in [(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)] {
                *cov.entry(cell).or_insert(0) += m;
            }
        }
        cov.retain(|_, v| *v > 0);
        cov
    }

    /// Bookkeeping identity against a complex's dimensions.
    pub fn bookkeeping_holds(&self, a: &Bicomplex) -> bool {
        let cov = self.coverage();
        let dims: BTreeMap<Bidegree, usize> = a.dims().clone();
        cov == dims
    }

    pub fn shape_count(&self) -> usize {
        self.zig.values().sum::<usize>() + self.squares.values().sum::<usize>()
    }

    pub fn dot_count(&self) -> usize {
        self.zig
            .iter()
            .filter(|(s, _)| s.length() == 1)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Display lines, sorted by shape.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.zig.iter().map(|(s, m)| format!("{m} x {s}")).collect();
        out.extend(self.squares.iter().map(|((p, q), m)| format!("{m} x square @({p},{q})")));
        out
    }
}

/// Even and odd zigzag multiplicities from spectral data, square counts from
/// bookkeeping. Fails only on an internal convention error, never on valid
/// input.
pub fn multiplicities_from_ranks(a: &Bicomplex) -> Result<ZigzagMultiset> {
    let col = fss(a, SpectralKind::Column)?;
    let col_mirror = fss(&a.mirror(), SpectralKind::Column)?;
    let purity = purity_table(a)?;
    multiplicities_from_parts(a, &col, &col_mirror, &purity)
}

fn multiplicities_from_parts(
    a: &Bicomplex,
    col: &SpectralReport,
    col_mirror: &SpectralReport,
    purity: &PurityTable,
) -> Result<ZigzagMultiset> {
    let mut ms = ZigzagMultiset::default();
    // even zigzags of column type: one per unit of rank of d_r at the anchor
    for (ri, page) in col.pages.iter().enumerate() {
        let r = ri + 1;
        for (&(p, q), &rank) in &page.diff_ranks {
            ms.add_shape(ZigzagShape::Even { anchor: (p, q), r, kind: EvenKind::Column }, rank);
        }
    }
    // row type: d_r of the mirrored complex at (a,b) is the zigzag anchored
    // at (b−r+1, a+r−1) in the original indexing
    for (ri, page) in col_mirror.pages.iter().enumerate() {
        let r = ri + 1;
        for (&(am, bm), &rank) in &page.diff_ranks {
            let anchor = (bm - r as i64 + 1, am + r as i64 - 1);
            ms.add_shape(ZigzagShape::Even { anchor, r, kind: EvenKind::Row }, rank);
        }
    }
    // odd zigzags from the bifiltered gradings: a cell b_k^{p,q} with
    // p+q−k = s > 0 is a corner-up zigzag of length 2s+1, one with
    // k−p−q = s > 0 a corner-down one, and s = 0 a dot
    for (&(k, p, q), &mult) in &purity.b {
        let d = p + q - k;
        let shape = if d == 0 {
            ZigzagShape::Dot { p, q }
        } else if d > 0 {
            ZigzagShape::Odd { anchor: (p - d, q - 1), s: d as usize, kind: OddKind::CornerUp }
        } else {
            ZigzagShape::Odd { anchor: (p, q - d), s: (-d) as usize, kind: OddKind::CornerDown }
        };
        ms.add_shape(shape, mult);
    }
    // squares: unique solution of the bookkeeping equations, greedily from
    // the lexicographic minimum of the support
    let cov = ms.coverage();
    let mut sq_cov: BTreeMap<Bidegree, i64> = BTreeMap::new();
    for (&(p, q), &dim) in a.dims() {
        let covered = cov.get(&(p, q)).copied().unwrap_or(0) as i64
            + sq_cov.get(&(p, q)).copied().unwrap_or(0);
        let residual = dim as i64 - covered;
        if residual < 0 {
            return Err(Error::BookkeepingInfeasible(p, q, residual));
        }
        if residual > 0 {
            ms.add_square((p, q), residual as usize);
            for cell in [(p + 1, q), (p, q + 1), (p + 1, q + 1)] {
                *sq_cov.entry(cell).or_insert(0) += residual;
            }
        }
    }
    if !ms.bookkeeping_holds(a) {
        let cell = a.dims().keys().next().copied().unwrap_or((0, 0));
        return Err(Error::BookkeepingInfeasible(cell.0, cell.1, 0));
    }
    Ok(ms)
}

// ---------------------------------------------------------------------------
// alternating pivot reduction oracle
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub(crate) struct DenseBlock {
    rows: usize,
    cols: usize,
    e: Vec<Cyclotomic>,
}

impl DenseBlock {
    fn zero(order: u32, rows: usize, cols: usize) -> Self {
        DenseBlock { rows, cols, e: vec![Cyclotomic::zero(order); rows * cols] }
    }

    fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.e[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.e[i * self.cols + j] = v;
    }

    fn row_nnz(&self, i: usize) -> usize {
        (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).count()
    }

    fn col_nnz(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).count()
    }

    fn is_partial_permutation_pattern(&self) -> bool {
        (0..self.rows).all(|i| self.row_nnz(i) <= 1) && (0..self.cols).all(|j| self.col_nnz(j) <= 1)
    }
}

/// Mutable per-bidegree block view of a complex, with basis-change
/// operations kept consistent across adjacent blocks. Shared by the
/// decomposition oracle and the random-complex generator.
pub(crate) struct BlockComplex {
    pub(crate) order: u32,
    pub(crate) dims: BTreeMap<Bidegree, usize>,
    pub(crate) del: BTreeMap<Bidegree, DenseBlock>,
    pub(crate) delbar: BTreeMap<Bidegree, DenseBlock>,
}

impl BlockComplex {
    pub(crate) fn from_bicomplex(a: &Bicomplex) -> Self {
        let order = a.field_order();
        let dims: BTreeMap<Bidegree, usize> = a.dims().clone();
        let mut del = BTreeMap::new();
        let mut delbar = BTreeMap::new();
        for &(p, q) in dims.keys() {
            let d = a.del_block(p, q);
            if d.rows() > 0 && d.cols() > 0 && !d.is_zero() {
                let mut b = DenseBlock::zero(order, d.rows(), d.cols());
                for (r, c, v) in d.iter() {
                    b.set(r, c, v.clone());
                }
                del.insert((p, q), b);
            }
            let d = a.delbar_block(p, q);
            if d.rows() > 0 && d.cols() > 0 && !d.is_zero() {
                let mut b = DenseBlock::zero(order, d.rows(), d.cols());
                for (r, c, v) in d.iter() {
                    b.set(r, c, v.clone());
                }
                delbar.insert((p, q), b);
            }
        }
        BlockComplex { order, dims, del, delbar }
    }

    /// Initializes zero blocks everywhere a differential could live; used by
    /// the random generator so that basis changes can fill them in.
    pub(crate) fn with_dense_zero_blocks(mut self) -> Self {
        let keys: Vec<Bidegree> = self.dims.keys().copied().collect();
        for &(p, q) in &keys {
            let src = self.dims[&(p, q)];
            if let Some(&t) = self.dims.get(&(p + 1, q)) {
                self.del.entry((p, q)).or_insert_with(|| DenseBlock::zero(self.order, t, src));
            }
            if let Some(&t) = self.dims.get(&(p, q + 1)) {
                self.delbar.entry((p, q)).or_insert_with(|| DenseBlock::zero(self.order, t, src));
            }
        }
        self
    }

    pub(crate) fn to_bicomplex(&self) -> Bicomplex {
        let mut b = Bicomplex::builder(self.order);
        for (&(p, q), &d) in &self.dims {
            b = b.dim(p, q, d);
        }
        for (kind, blocks) in [(DiffKind::Del, &self.del), (DiffKind::Delbar, &self.delbar)] {
            for (&(p, q), blk) in blocks {
                let mut m = crate::linalg::SparseMatrix::zero(self.order, blk.rows, blk.cols);
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        if !blk.get(i, j).is_zero() {
                            m.add_entry(i, j, blk.get(i, j).clone()).unwrap();
                        }
                    }
                }
                if !m.is_zero() {
                    b = match kind {
                        DiffKind::Del => b.del(p, q, m),
                        DiffKind::Delbar => b.delbar(p, q, m),
                    };
                }
            }
        }
        b.build().unwrap()
    }

    fn out_keys(s: Bidegree) -> [(DiffKind, Bidegree); 2] {
        [(DiffKind::Del, s), (DiffKind::Delbar, s)]
    }

    fn in_keys(s: Bidegree) -> [(DiffKind, Bidegree); 2] {
        [(DiffKind::Del, (s.0 - 1, s.1)), (DiffKind::Delbar, (s.0, s.1 - 1))]
    }

    fn block_mut(&mut self, kind: DiffKind, key: Bidegree) -> Option<&mut DenseBlock> {
        match kind {
            DiffKind::Del => self.del.get_mut(&key),
            DiffKind::Delbar => self.delbar.get_mut(&key),
        }
    }

    pub(crate) fn block(&self, kind: DiffKind, key: Bidegree) -> Option<&DenseBlock> {
        match kind {
            DiffKind::Del => self.del.get(&key),
            DiffKind::Delbar => self.delbar.get(&key),
        }
    }

    /// Basis change u_j ↦ λ·u_j at bidegree s.
    pub(crate) fn col_scale(&mut self, s: Bidegree, j: usize, lambda: &Cyclotomic) {
        let inv = lambda.inv().expect("scale by nonzero");
        for (kind, key) in Self::out_keys(s) {
            if let Some(b) = self.block_mut(kind, key) {
                for i in 0..b.rows {
                    let v = b.get(i, j).checked_mul(lambda).unwrap();
                    b.set(i, j, v);
                }
            }
        }
        for (kind, key) in Self::in_keys(s) {
            if let Some(b) = self.block_mut(kind, key) {
                for c in 0..b.cols {
                    let v = b.get(j, c).checked_mul(&inv).unwrap();
                    b.set(j, c, v);
                }
            }
        }
    }

    /// Basis change u_{j_dst} ↦ u_{j_dst} + c·u_{j_src} at bidegree s.
    pub(crate) fn col_addmul(&mut self, s: Bidegree, j_dst: usize, j_src: usize, c: &Cyclotomic) {
        for (kind, key) in Self::out_keys(s) {
            if let Some(b) = self.block_mut(kind, key) {
                for i in 0..b.rows {
                    let add = b.get(i, j_src).checked_mul(c).unwrap();
                    let v = b.get(i, j_dst).checked_add(&add).unwrap();
                    b.set(i, j_dst, v);
                }
            }
        }
        // coordinates transform contragrediently on maps into s
        for (kind, key) in Self::in_keys(s) {
            if let Some(b) = self.block_mut(kind, key) {
                for col in 0..b.cols {
                    let sub = b.get(j_dst, col).checked_mul(c).unwrap();
                    let v = b.get(j_src, col).checked_sub(&sub).unwrap();
                    b.set(j_src, col, v);
                }
            }
        }
    }

    /// Coordinate change y_{i_dst} ↦ y_{i_dst} + c·y_{i_src} at bidegree t.
    pub(crate) fn row_addmul(&mut self, t: Bidegree, i_dst: usize, i_src: usize, c: &Cyclotomic) {
        for (kind, key) in Self::in_keys(t) {
            if let Some(b) = self.block_mut(kind, key) {
                for col in 0..b.cols {
                    let add = b.get(i_src, col).checked_mul(c).unwrap();
                    let v = b.get(i_dst, col).checked_add(&add).unwrap();
                    b.set(i_dst, col, v);
                }
            }
        }
        for (kind, key) in Self::out_keys(t) {
            if let Some(b) = self.block_mut(kind, key) {
                for row in 0..b.rows {
                    let sub = b.get(row, i_dst).checked_mul(c).unwrap();
                    let v = b.get(row, i_src).checked_sub(&sub).unwrap();
                    b.set(row, i_src, v);
                }
            }
        }
    }
}

/// Alternating pivot reduction: repeatedly select a nonzero entry of some ∂
/// or ∂̄ block, change bases on source and target to make it a unit pivot
/// with zero row and column in that block, propagate the base change to the
/// adjacent blocks, and iterate until every block is a partial permutation
/// pattern. Deterministic selection prefers pivots whose cleanup cannot
/// disturb neighbouring blocks (these split off a summand permanently), with
/// ties broken by lowest bidegree, then lowest row/col index. Fails with
/// `OracleInconclusive` when the pivot budget runs out.
pub fn brute_force_decompose(a: &Bicomplex, budget: usize) -> Result<ZigzagMultiset> {
    if !a.is_complete() {
        let &(p, q) = a.incomplete_bidegrees().iter().next().unwrap();
        return Err(Error::IncompleteBidegree(p, q));
    }
    a.ensure_valid()?;
    let mut bc = BlockComplex::from_bicomplex(a);
    let mut steps = 0usize;
    while let Some((kind, src, i, j)) = select_pivot(&bc) {
        if steps >= budget {
            return Err(Error::OracleInconclusive(budget));
        }
        steps += 1;
        let tgt = match kind {
            DiffKind::Del => (src.0 + 1, src.1),
            DiffKind::Delbar => (src.0, src.1 + 1),
        };
        // unit pivot
        let v = bc.block(kind, src).unwrap().get(i, j).clone();
        if !v.is_one() {
            bc.col_scale(src, j, &v.inv().expect("pivot nonzero"));
        }
        // clear the pivot row within this block via source column operations
        let cols = bc.block(kind, src).unwrap().cols;
        for j2 in 0..cols {
            if j2 == j {
                continue;
            }
            let c = bc.block(kind, src).unwrap().get(i, j2).clone();
            if !c.is_zero() {
                bc.col_addmul(src, j2, j, &c.neg());
            }
        }
        // clear the pivot column via target row operations
        let rows = bc.block(kind, src).unwrap().rows;
        for i2 in 0..rows {
            if i2 == i {
                continue;
            }
            let c = bc.block(kind, src).unwrap().get(i2, j).clone();
            if !c.is_zero() {
                bc.row_addmul(tgt, i2, i, &c.neg());
            }
        }
    }
    // the operations are genuine basis changes, so the relations must survive
    let reduced = bc.to_bicomplex();
    if !reduced.validate().is_valid() {
        return Err(Error::ConsistencyFault("pivot reduction broke d² = 0".into()));
    }
    let ms = read_components(&bc)?;
    if !ms.bookkeeping_holds(a) {
        return Err(Error::ConsistencyFault("oracle bookkeeping mismatch".into()));
    }
    Ok(ms)
}

/// A violating entry to pivot at, or None when every block is already a
/// partial permutation pattern.
fn select_pivot(bc: &BlockComplex) -> Option<(DiffKind, Bidegree, usize, usize)> {
    let mut best: Option<(usize, Bidegree, DiffKind, usize, usize)> = None;
    for (kind, blocks) in [(DiffKind::Del, &bc.del), (DiffKind::Delbar, &bc.delbar)] {
        for (&src, b) in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    if b.get(i, j).is_zero() {
                        continue;
                    }
                    if b.row_nnz(i) <= 1 && b.col_nnz(j) <= 1 {
                        continue;
                    }
                    // safety penalty: nonzeros of the sibling block in this
                    // column plus nonzeros of the other map into the target
                    // in this row; zero-penalty pivots isolate a summand
                    let sibling = match kind {
                        DiffKind::Del => bc.block(DiffKind::Delbar, src),
                        DiffKind::Delbar => bc.block(DiffKind::Del, src),
                    };
                    let mut penalty = sibling.map_or(0, |s| s.col_nnz(j));
                    let other_in = match kind {
                        DiffKind::Del => bc.block(DiffKind::Delbar, (src.0 + 1, src.1 - 1)),
                        DiffKind::Delbar => bc.block(DiffKind::Del, (src.0 - 1, src.1 + 1)),
                    };
                    penalty += other_in.map_or(0, |o| o.row_nnz(i));
                    let cand = (penalty, src, kind, i, j);
                    if best.as_ref().map_or(true, |b0| cand < *b0) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best.map(|(_, src, kind, i, j)| (kind, src, i, j))
}

/// Connected components of the basis graph of a reduced block complex,
/// classified into dots, zigzags and squares.
fn read_components(bc: &BlockComplex) -> Result<ZigzagMultiset> {
    type Node = (Bidegree, usize);
    let mut adj: BTreeMap<Node, Vec<(Node, DiffKind, bool)>> = BTreeMap::new();
    for (&(p, q), &d) in &bc.dims {
        for idx in 0..d {
            adj.entry(((p, q), idx)).or_default();
        }
    }
    for (kind, blocks) in [(DiffKind::Del, &bc.del), (DiffKind::Delbar, &bc.delbar)] {
        for (&src, b) in blocks {
            if !b.is_partial_permutation_pattern() {
                return Err(Error::ConsistencyFault("block not reduced".into()));
            }
            let tgt = match kind {
                DiffKind::Del => (src.0 + 1, src.1),
                DiffKind::Delbar => (src.0, src.1 + 1),
            };
            for i in 0..b.rows {
                for j in 0..b.cols {
                    if !b.get(i, j).is_zero() {
                        adj.entry((src, j)).or_default().push(((tgt, i), kind, true));
                        adj.entry((tgt, i)).or_default().push(((src, j), kind, false));
                    }
                }
            }
        }
    }
    let mut seen: BTreeSet<Node> = BTreeSet::new();
    let mut ms = ZigzagMultiset::default();
    let nodes: Vec<Node> = adj.keys().copied().collect();
    for start in nodes {
        if seen.contains(&start) {
            continue;
        }
        let mut comp: Vec<Node> = vec![start];
        seen.insert(start);
        let mut queue = vec![start];
        while let Some(n) = queue.pop() {
            for &(m, _, _) in &adj[&n] {
                if seen.insert(m) {
                    comp.push(m);
                    queue.push(m);
                }
            }
        }
        comp.sort();
        classify_component(&adj, &comp, &mut ms)?;
    }
    Ok(ms)
}

fn classify_component(
    adj: &BTreeMap<(Bidegree, usize), Vec<((Bidegree, usize), DiffKind, bool)>>,
    comp: &[(Bidegree, usize)],
    ms: &mut ZigzagMultiset,
) -> Result<()> {
    let fault = |msg: &str| Error::ConsistencyFault(format!("component classification: {msg}"));
    if comp.len() == 1 {
        let ((p, q), _) = comp[0];
        if adj[&comp[0]].is_empty() {
            ms.add_shape(ZigzagShape::Dot { p, q }, 1);
            return Ok(());
        }
        return Err(fault("single node with edges"));
    }
    let edge_count: usize = comp.iter().map(|n| adj[n].len()).sum::<usize>() / 2;
    let bidegrees: Vec<Bidegree> = comp.iter().map(|&(b, _)| b).collect();
    let distinct: BTreeSet<Bidegree> = bidegrees.iter().copied().collect();
    if distinct.len() != comp.len() {
        return Err(fault("repeated bidegree in a component"));
    }
    if comp.len() == 4 && edge_count == 4 {
        let (p, q) = *distinct.iter().next().unwrap();
        let want: BTreeSet<Bidegree> =
            [(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)].into_iter().collect();
        if distinct == want {
            ms.add_square((p, q), 1);
            return Ok(());
        }
        return Err(fault("4-cycle not on a unit square"));
    }
    if edge_count != comp.len() - 1 {
        return Err(fault("not a tree"));
    }
    let ends: Vec<&(Bidegree, usize)> = comp.iter().filter(|n| adj[n].len() == 1).collect();
    if ends.len() != 2 {
        return Err(fault("path must have two ends"));
    }
    let gens: usize = comp.iter().filter(|n| adj[n].iter().any(|&(_, _, out)| out)).count();
    let imgs = comp.len() - gens;
    for n in comp {
        let has_out = adj[n].iter().any(|&(_, _, o)| o);
        let has_in = adj[n].iter().any(|&(_, _, o)| !o);
        if has_out && has_in {
            return Err(fault("node is both generator and image"));
        }
    }
    let anchor = *distinct.iter().next().unwrap();
    let shape = if comp.len() % 2 == 0 {
        if gens != imgs {
            return Err(fault("even path with unbalanced roles"));
        }
        let gen_end = ends
            .iter()
            .find(|n| adj[**n].iter().any(|&(_, _, o)| o))
            .ok_or_else(|| fault("even path without a generator end"))?;
        let kind = match adj[*gen_end][0].1 {
            DiffKind::Del => EvenKind::Column,
            DiffKind::Delbar => EvenKind::Row,
        };
        ZigzagShape::Even { anchor, r: gens, kind }
    } else {
        let kind = if gens == imgs + 1 { OddKind::CornerDown } else { OddKind::CornerUp };
        ZigzagShape::Odd { anchor, s: comp.len() / 2, kind }
    };
    // verify the classified shape reproduces the component exactly
    let occ: Vec<Bidegree> = shape.occupied();
    let mut sorted = bidegrees.clone();
    sorted.sort();
    if occ != sorted {
        return Err(fault("occupied set mismatch"));
    }
    let mut expect_edges: BTreeSet<(Bidegree, Bidegree, DiffKind)> =
        shape.arrows().into_iter().collect();
    for n in comp {
        for &(m, kind, out) in &adj[n] {
            if out && !expect_edges.remove(&(n.0, m.0, kind)) {
                return Err(fault("unexpected arrow"));
            }
        }
    }
    if !expect_edges.is_empty() {
        return Err(fault("missing arrow"));
    }
    ms.add_shape(shape, 1);
    Ok(())
}

// ---------------------------------------------------------------------------
// property checkers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    DdBar,
    Page1DdBar,
    DdcPlus3,
}

impl Property {
    pub fn parse(s: &str) -> Option<Property> {
        match s {
            "ddbar" | "ddc" => Some(Property::DdBar),
            "page1" | "page1_ddbar" | "page-1-ddbar" => Some(Property::Page1DdBar),
            "ddc3" | "ddc+3" | "ddc_3" => Some(Property::DdcPlus3),
            _ => None,
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Property::DdBar => write!(f, "ddbar"),
            Property::Page1DdBar => write!(f, "page1"),
            Property::DdcPlus3 => write!(f, "ddc3"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum PropertyWitness {
    /// An indecomposable summand of forbidden length.
    Shape(ZigzagShape),
    /// A nonzero b_k^{p,q} outside the allowed band, as (k, p, q).
    Impurity(i64, i64, i64),
    /// A differential surviving to a forbidden page, as (kind, page, p, q).
    SurvivingDifferential(SpectralKind, usize, i64, i64),
}

impl std::fmt::Display for PropertyWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PropertyWitness::Shape(s) => write!(f, "forbidden summand: {s}"),
            PropertyWitness::Impurity(k, p, q) => {
                write!(f, "nonzero b_{k}^({p},{q}) outside the allowed band")
            }
            PropertyWitness::SurvivingDifferential(kind, r, p, q) => write!(
                f,
                "nonzero d_{r} at ({p},{q}) in the {} sequence",
                match kind {
                    SpectralKind::Column => "column",
                    SpectralKind::Row => "row",
                }
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<PropertyWitness>,
}

fn allowed_length(property: Property, len: usize) -> bool {
    match property {
        Property::DdBar => len == 1,
        Property::Page1DdBar => len <= 2,
        Property::DdcPlus3 => len == 1 || len == 3,
    }
}

/// Checks one of the three cohomological properties both ways: via the shape
/// census and via degeneration pages plus purity. The verdicts must agree;
/// disagreement is a consistency fault.
pub fn check_property(a: &Bicomplex, property: Property) -> Result<PropertyVerdict> {
    let col = fss(a, SpectralKind::Column)?;
    let col_mirror = fss(&a.mirror(), SpectralKind::Column)?;
    let purity = purity_table(a)?;
    let ms = multiplicities_from_parts(a, &col, &col_mirror, &purity)?;

    // route (a): shape census
    let shape_offender = ms.zig.keys().find(|s| !allowed_length(property, s.length())).copied();
    let holds_shapes = shape_offender.is_none();

    // route (b): degeneration pages plus filtration purity
    let col_page = col.stabilization_page;
    let row_page = col_mirror.stabilization_page;
    let (page_bound, purity_width) = match property {
        Property::DdBar => (1, 0),
        Property::Page1DdBar => (2, 0),
        Property::DdcPlus3 => (1, 1),
    };
    let mut spectral_witness: Option<PropertyWitness> = None;
    if col_page > page_bound {
        let r = col.last_nonzero_differential();
        let (&(p, q), _) = col.pages[r - 1].diff_ranks.iter().next().unwrap();
        spectral_witness =
            Some(PropertyWitness::SurvivingDifferential(SpectralKind::Column, r, p, q));
    } else if row_page > page_bound {
        let r = col_mirror.last_nonzero_differential();
        let (&(pm, qm), _) = col_mirror.pages[r - 1].diff_ranks.iter().next().unwrap();
        spectral_witness =
            Some(PropertyWitness::SurvivingDifferential(SpectralKind::Row, r, qm, pm));
    } else if let Some((k, p, q)) = purity.impurity_witness(purity_width) {
        spectral_witness = Some(PropertyWitness::Impurity(k, p, q));
    }
    let holds_spectral = spectral_witness.is_none();

    if holds_shapes != holds_spectral {
        return Err(Error::ConsistencyFault(format!(
            "{property}: shape route says {holds_shapes}, spectral route says {holds_spectral}"
        )));
    }
    let witness = shape_offender.map(PropertyWitness::Shape).or(spectral_witness);
    Ok(PropertyVerdict { holds: holds_shapes, witness })
}

/// True iff the zigzag multisets coincide, squares ignored — the complete
/// invariant of bigraded quasi-isomorphism type for bounded complexes.
pub fn bigraded_quasi_iso_type_equal(a: &Bicomplex, b: &Bicomplex) -> Result<bool> {
    let ma = multiplicities_from_ranks(a)?;
    let mb = multiplicities_from_ranks(b)?;
    Ok(ma.zig == mb.zig)
}

// ---------------------------------------------------------------------------
// manifold-shape test
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldCondition {
    /// All zigzags must live inside the square [0,k]².
    Support,
    /// Zigzag multiset symmetry under the diagonal and antidiagonal
    /// reflections.
    SymmetryAndDuality,
    /// Only dots may touch the four corner bidegrees.
    OnlyDotsInCorners,
    /// No even-length zigzags when k = 2.
    SurfaceDegeneration,
}

impl std::fmt::Display for ManifoldCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ManifoldCondition::Support => write!(f, "(0) support inside [0,k]²"),
            ManifoldCondition::SymmetryAndDuality => write!(f, "(1) reflection symmetry"),
            ManifoldCondition::OnlyDotsInCorners => write!(f, "(2) only dots in the corners"),
            ManifoldCondition::SurfaceDegeneration => {
                write!(f, "(3) no even zigzags in dimension 2")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ManifoldVerdict {
    pub ok: bool,
    pub violated: Option<ManifoldCondition>,
}

/// Whether a zigzag multiset is shaped like the bicomplex of a compact
/// complex manifold of dimension k. The corner condition is checked before
/// the symmetry condition so that a lone corner zigzag is reported as a
/// corner violation.
pub fn looks_like_manifold(z: &ZigzagMultiset, k: i64) -> ManifoldVerdict {
    let fail = |c: ManifoldCondition| ManifoldVerdict { ok: false, violated: Some(c) };
    for shape in z.zig.keys() {
        for (p, q) in shape.occupied() {
            if p < 0 || q < 0 || p > k || q > k {
                return fail(ManifoldCondition::Support);
            }
        }
    }
    // (2) only dots in the corners
    let corners = [(0, 0), (k, 0), (0, k), (k, k)];
    for shape in z.zig.keys() {
        if shape.length() > 1 && shape.occupied().iter().any(|c| corners.contains(c)) {
            return fail(ManifoldCondition::OnlyDotsInCorners);
        }
    }
    // (1) invariance under both reflections
    let mut diag: BTreeMap<ZigzagShape, usize> = BTreeMap::new();
    let mut anti: BTreeMap<ZigzagShape, usize> = BTreeMap::new();
    for (s, &m) in &z.zig {
        *diag.entry(s.reflect_diagonal()).or_insert(0) += m;
        *anti.entry(s.reflect_antidiagonal(k)).or_insert(0) += m;
    }
    if diag != z.zig || anti != z.zig {
        return fail(ManifoldCondition::SymmetryAndDuality);
    }
    // (3) surfaces have degenerate spectral sequences
    if k == 2 && z.zig.keys().any(|s| s.length() % 2 == 0) {
        return fail(ManifoldCondition::SurfaceDegeneration);
    }
    ManifoldVerdict { ok: true, violated: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::dots;

    fn all_small_shapes() -> Vec<ZigzagShape> {
        let mut shapes = vec![ZigzagShape::Dot { p: 1, q: 2 }, ZigzagShape::Dot { p: 0, q: 0 }];
        for r in 1..=3 {
            shapes.push(ZigzagShape::Even { anchor: (0, 3), r, kind: EvenKind::Column });
            shapes.push(ZigzagShape::Even { anchor: (1, 3), r, kind: EvenKind::Row });
        }
        for s in 1..=3 {
            shapes.push(ZigzagShape::Odd { anchor: (0, 3), s, kind: OddKind::CornerUp });
            shapes.push(ZigzagShape::Odd { anchor: (1, 4), s, kind: OddKind::CornerDown });
        }
        shapes
    }

    #[test]
    fn shape_geometry_is_consistent() {
        for shape in all_small_shapes() {
            let occ = shape.occupied();
            assert_eq!(occ.len(), shape.length(), "{shape}");
            assert_eq!(occ.iter().min().copied().unwrap(), shape.anchor(), "{shape}");
            let ks: BTreeSet<i64> = occ.iter().map(|&(p, q)| p + q).collect();
            assert!(ks.len() <= 2, "{shape}");
            for (from, to, kind) in shape.arrows() {
                assert!(occ.contains(&from) && occ.contains(&to));
                match kind {
                    DiffKind::Del => assert_eq!((from.0 + 1, from.1), to),
                    DiffKind::Delbar => assert_eq!((from.0, from.1 + 1), to),
                }
            }
            assert_eq!(shape.reflect_diagonal().reflect_diagonal(), shape, "{shape}");
            assert_eq!(shape.reflect_antidiagonal(5).reflect_antidiagonal(5), shape, "{shape}");
            let mut transposed: Vec<Bidegree> = occ.iter().map(|&(p, q)| (q, p)).collect();
            transposed.sort();
            assert_eq!(shape.reflect_diagonal().occupied(), transposed, "{shape}");
            let k = 5;
            let mut reflected: Vec<Bidegree> = occ.iter().map(|&(p, q)| (k - q, k - p)).collect();
            reflected.sort();
            assert_eq!(shape.reflect_antidiagonal(k).occupied(), reflected, "{shape}");
        }
    }

    #[test]
    fn every_shape_is_recovered_by_both_routes() {
        for shape in all_small_shapes() {
            let a = shape.realize(4);
            let from_ranks = multiplicities_from_ranks(&a).unwrap();
            let mut expect = ZigzagMultiset::default();
            expect.add_shape(shape, 1);
            assert_eq!(from_ranks, expect, "rank route on {shape}");
            let oracle = brute_force_decompose(&a, 10_000).unwrap();
            assert_eq!(oracle, expect, "oracle on {shape}");
        }
    }

    #[test]
    fn square_is_recovered() {
        let a = realize_square(4, 2, 1);
        assert!(a.validate().is_valid());
        let ms = multiplicities_from_ranks(&a).unwrap();
        assert!(ms.zig.is_empty());
        assert_eq!(ms.squares.get(&(2, 1)), Some(&1));
        let oracle = brute_force_decompose(&a, 10_000).unwrap();
        assert_eq!(oracle, ms);
    }

    #[test]
    fn lemma_zigzag_drives_a_rank_one_differential() {
        for r in 1..=4 {
            let shape = ZigzagShape::Even { anchor: (0, 4), r, kind: EvenKind::Column };
            let a = shape.realize(4);
            let col = fss(&a, SpectralKind::Column).unwrap();
            assert_eq!(col.diff_rank(r, 0, 4), 1, "d_{r} rank");
            assert_eq!(col.stabilization_page, r + 1);
            let row = fss(&a, SpectralKind::Row).unwrap();
            assert_eq!(row.stabilization_page, 1);
        }
    }

    #[test]
    fn direct_sum_of_square_and_dot() {
        let a = realize_square(4, 0, 0).direct_sum(&Bicomplex::dot(4, 0, 0)).unwrap();
        let ms = brute_force_decompose(&a, 10_000).unwrap();
        assert_eq!(ms.shape_count(), 2);
        assert_eq!(ms.squares.get(&(0, 0)), Some(&1));
        assert_eq!(ms.zig.get(&ZigzagShape::Dot { p: 0, q: 0 }), Some(&1));
    }

    #[test]
    fn multiset_is_additive_over_direct_sums() {
        let b = ZigzagShape::Even { anchor: (0, 1), r: 1, kind: EvenKind::Column }.realize(4);
        let c = ZigzagShape::Odd { anchor: (0, 1), s: 1, kind: OddKind::CornerUp }.realize(4);
        let sum = b.direct_sum(&c).unwrap();
        let mb = multiplicities_from_ranks(&b).unwrap();
        let mc = multiplicities_from_ranks(&c).unwrap();
        let msum = multiplicities_from_ranks(&sum).unwrap();
        assert_eq!(msum, mb.merge(&mc));
    }

    #[test]
    fn properties_of_basic_shapes() {
        let dot = Bicomplex::dot(4, 0, 0);
        for p in [Property::DdBar, Property::Page1DdBar, Property::DdcPlus3] {
            assert!(check_property(&dot, p).unwrap().holds);
        }
        let line = ZigzagShape::Even { anchor: (0, 0), r: 1, kind: EvenKind::Column }.realize(4);
        assert!(!check_property(&line, Property::DdBar).unwrap().holds);
        assert!(check_property(&line, Property::Page1DdBar).unwrap().holds);
        assert!(!check_property(&line, Property::DdcPlus3).unwrap().holds);
        let ell = ZigzagShape::Odd { anchor: (0, 0), s: 1, kind: OddKind::CornerUp }.realize(4);
        assert!(!check_property(&ell, Property::DdBar).unwrap().holds);
        assert!(!check_property(&ell, Property::Page1DdBar).unwrap().holds);
        assert!(check_property(&ell, Property::DdcPlus3).unwrap().holds);
        let long = ZigzagShape::Even { anchor: (0, 1), r: 2, kind: EvenKind::Row }.realize(4);
        for p in [Property::DdBar, Property::Page1DdBar, Property::DdcPlus3] {
            assert!(!check_property(&long, p).unwrap().holds, "{p}");
        }
        let square = realize_square(4, 0, 0);
        for p in [Property::DdBar, Property::Page1DdBar, Property::DdcPlus3] {
            assert!(check_property(&square, p).unwrap().holds, "{p}");
        }
        // adding squares never changes a verdict, and mirrors preserve the
        // mirror-symmetric properties
        let line_sq = line.direct_sum(&square).unwrap();
        assert!(check_property(&line_sq, Property::Page1DdBar).unwrap().holds);
        assert!(!check_property(&line_sq, Property::DdcPlus3).unwrap().holds);
        let mirrored = line_sq.mirror();
        assert!(check_property(&mirrored, Property::Page1DdBar).unwrap().holds);
        assert!(!check_property(&mirrored, Property::DdBar).unwrap().holds);
    }

    #[test]
    fn quasi_iso_type_ignores_squares() {
        let dot = Bicomplex::dot(4, 0, 0);
        let with_square = dot.direct_sum(&realize_square(4, 1, 1)).unwrap();
        assert!(bigraded_quasi_iso_type_equal(&dot, &with_square).unwrap());
        let line = ZigzagShape::Even { anchor: (0, 0), r: 1, kind: EvenKind::Column }.realize(4);
        assert!(!bigraded_quasi_iso_type_equal(&dot, &line).unwrap());
    }

    #[test]
    fn manifold_checker_examples() {
        // elliptic curve: dots at the four corners of [0,1]²
        let curve = dots(4, &[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]);
        let ms = multiplicities_from_ranks(&curve).unwrap();
        assert!(looks_like_manifold(&ms, 1).ok);
        // a corner-up L anchored at the origin violates condition (2)
        let mut bad = ZigzagMultiset::default();
        let ell = ZigzagShape::Odd { anchor: (0, 0), s: 1, kind: OddKind::CornerUp };
        bad.add_shape(ell, 1);
        bad.add_shape(ell.reflect_diagonal(), 0);
        let v = looks_like_manifold(&bad, 1);
        assert!(!v.ok);
        assert_eq!(v.violated, Some(ManifoldCondition::OnlyDotsInCorners));
        // an even zigzag pair in dimension 2 violates condition (3)
        let mut surf = ZigzagMultiset::default();
        let l1 = ZigzagShape::Even { anchor: (0, 1), r: 1, kind: EvenKind::Column };
        surf.add_shape(l1, 1);
        surf.add_shape(l1.reflect_diagonal(), 1);
        surf.add_shape(l1.reflect_antidiagonal(2), 1);
        surf.add_shape(l1.reflect_diagonal().reflect_antidiagonal(2), 1);
        let v = looks_like_manifold(&surf, 2);
        assert!(!v.ok);
        assert_eq!(v.violated, Some(ManifoldCondition::SurfaceDegeneration));
    }
}
