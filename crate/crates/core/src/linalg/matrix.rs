//! Sparse matrices over ℚ(ζ_n) and fraction-aware Gaussian elimination.
//!
//! Two elimination modes share one engine: a canonical left-to-right sweep
//! producing reduced row echelon form, and a free-pivot mode with
//! Markowitz-style scoring (minimize (r−1)(c−1) fill estimate) used for rank
//! and kernel computations on larger blocks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::scalar::Cyclotomic;
use crate::linalg::subspace::Subspace;

/// A sparse coordinate vector; absent keys are zero, stored values never are.
pub type SparseVec = BTreeMap<usize, Cyclotomic>;

pub fn vec_add_scaled(dst: &mut SparseVec, src: &SparseVec, coeff: &Cyclotomic) {
    if coeff.is_zero() {
        return;
    }
    for (k, v) in src {
        let add = v * coeff;
        match dst.entry(*k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !add.is_zero() {
                    e.insert(add);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &add;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub fn vec_scale(v: &SparseVec, coeff: &Cyclotomic) -> SparseVec {
    if coeff.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * coeff)).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: BTreeMap<(usize, usize), Cyclotomic>,
}

impl SparseMatrix {
    pub fn zero(order: u32, rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, order, entries: BTreeMap::new() }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = Self::zero(order, n, n);
        for i in 0..n {
            m.entries.insert((i, i), Cyclotomic::one(order));
        }
        m
    }

    pub fn from_triplets(
        order: u32,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Cyclotomic)>,
    ) -> Result<Self> {
        let mut m = Self::zero(order, rows, cols);
        for (r, c, v) in triplets {
            m.add_entry(r, c, v)?;
        }
        Ok(m)
    }

    /// Adds `v` to the (r,c) entry, keeping the no-stored-zero invariant.
    pub fn add_entry(&mut self, r: usize, c: usize, v: Cyclotomic) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "entry ({r},{c}) outside {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if v.order() != self.order {
            return Err(Error::OrderMismatch(self.order, v.order()));
        }
        if v.is_zero() {
            return Ok(());
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().checked_add(&v)?;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: Cyclotomic) -> Result<()> {
        self.entries.remove(&(r, c));
        self.add_entry(r, c, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, r: usize, c: usize) -> Cyclotomic {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.order, self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            m.entries.insert((*c, *r), v.clone());
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = Self::zero(self.order, self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            m.entries.insert((*r, *c), v.conj());
        }
        m
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn neg(&self) -> Self {
        let mut m = Self::zero(self.order, self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            m.entries.insert((*r, *c), v.neg());
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let mut m = self.clone();
        for ((r, c), v) in &other.entries {
            m.add_entry(*r, *c, v.clone())?;
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        // rows of self indexed by k for fast lookup
        let mut rows_of_other: BTreeMap<usize, Vec<(usize, &Cyclotomic)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            rows_of_other.entry(*r).or_default().push((*c, v));
        }
        let mut m = Self::zero(self.order, self.rows, other.cols);
        for ((r, k), a) in &self.entries {
            if let Some(row) = rows_of_other.get(k) {
                for (c, b) in row {
                    m.add_entry(*r, *c, a * b)?;
                }
            }
        }
        Ok(m)
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((r, c), v) in &self.entries {
            if let Some(xc) = x.get(c) {
                let add = v * xc;
                match out.entry(*r) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !add.is_zero() {
                            e.insert(add);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = &*e.get() + &add;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn row_vecs(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        rows
    }

    pub fn col_vecs(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for ((r, c), v) in &self.entries {
            cols[*c].insert(*r, v.clone());
        }
        cols
    }

    /// Restriction to the given row and column index sets, reindexed by
    /// position. Indices must be strictly increasing.
    pub fn restrict(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let rpos: BTreeMap<usize, usize> = row_idx.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let cpos: BTreeMap<usize, usize> = col_idx.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut m = Self::zero(self.order, row_idx.len(), col_idx.len());
        for ((r, c), v) in &self.entries {
            if let (Some(rr), Some(cc)) = (rpos.get(r), cpos.get(c)) {
                m.entries.insert((*rr, *cc), v.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        free_pivot_eliminate(self.order, self.cols, self.row_vecs()).pivots.len()
    }

    /// Kernel as a canonical subspace of the column space.
    pub fn kernel(&self) -> Subspace {
        let elim = free_pivot_eliminate(self.order, self.cols, self.row_vecs());
        let vectors = kernel_from_elimination(self.order, self.cols, &elim);
        Subspace::from_vectors(self.order, self.cols, vectors)
    }

    /// Image (column space) as a canonical subspace of the row space.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.order, self.rows, self.col_vecs())
    }

    /// Rank, kernel and image in one call; rank + dim kernel = cols and
    /// dim image = rank by construction.
    pub fn rank_kernel_image(&self) -> RankKernelImage {
        let kernel = self.kernel();
        let image = self.image();
        let rank = image.dim();
        debug_assert_eq!(rank + kernel.dim(), self.cols);
        RankKernelImage { rank, kernel, image }
    }

    /// {x : Mx ∈ V}.
    pub fn preimage_of(&self, v: &Subspace) -> Result<Subspace> {
        if v.ambient() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "preimage: subspace ambient {} vs matrix rows {}",
                v.ambient(),
                self.rows
            )));
        }
        // Compose with a membership-test map whose kernel is exactly V:
        // reduce by V's echelon basis, then read the non-pivot coordinates.
        let rows = membership_rows(v);
        let mut composed: Vec<SparseVec> = Vec::with_capacity(rows.len());
        for row in rows {
            // row · M as a row vector
            let mut out = SparseVec::new();
            for ((r, c), m) in &self.entries {
                if let Some(a) = row.get(r) {
                    let add = a * m;
                    match out.entry(*c) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            if !add.is_zero() {
                                e.insert(add);
                            }
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let s = &*e.get() + &add;
                            if s.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = s;
                            }
                        }
                    }
                }
            }
            composed.push(out);
        }
        let elim = free_pivot_eliminate(self.order, self.cols, composed);
        let vectors = kernel_from_elimination(self.order, self.cols, &elim);
        Ok(Subspace::from_vectors(self.order, self.cols, vectors))
    }

    /// Image of a subspace under this matrix.
    pub fn image_of(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "image: subspace ambient {} vs matrix cols {}",
                u.ambient(),
                self.cols
            )));
        }
        let vectors: Vec<SparseVec> = u.basis().iter().map(|b| self.apply(b)).collect();
        Ok(Subspace::from_vectors(self.order, self.rows, vectors))
    }
}

impl std::fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SparseMatrix {}x{} (order {})", self.rows, self.cols, self.order)?;
        for ((r, c), v) in &self.entries {
            writeln!(f, "  ({r},{c}) = {v}")?;
        }
        Ok(())
    }
}

pub struct RankKernelImage {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

/// Rows whose common kernel is exactly the subspace `v`: for each non-pivot
/// coordinate f, the functional x ↦ x[f] − Σ_j x[pivot_j]·basis_j[f].
pub(crate) fn membership_rows(v: &Subspace) -> Vec<SparseVec> {
    let order = v.order();
    let pivot_set: std::collections::BTreeSet<usize> = v.pivots().iter().copied().collect();
    let mut rows = Vec::new();
    for f in 0..v.ambient() {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut row = SparseVec::new();
        row.insert(f, Cyclotomic::one(order));
        for (j, p) in v.pivots().iter().enumerate() {
            if let Some(c) = v.basis()[j].get(&f) {
                row.insert(*p, c.neg());
            }
        }
        rows.push(row);
    }
    rows
}

pub(crate) struct Eliminated {
    /// (row index into `rows`, pivot column); rows are fully Jordan-reduced,
    /// so each pivot column is nonzero only in its own row.
    pub pivots: Vec<(usize, usize)>,
    pub rows: Vec<Option<SparseVec>>,
}

/// Free-pivot Gauss-Jordan with Markowitz-style scoring. Preserves the row
/// space and kernel; pivot columns need not be leftmost.
pub(crate) fn free_pivot_eliminate(
    order: u32,
    ambient: usize,
    rows_in: Vec<SparseVec>,
) -> Eliminated {
    let _ = order;
    let mut rows: Vec<Option<SparseVec>> = rows_in.into_iter().map(Some).collect();
    let mut col_count = vec![0usize; ambient];
    let mut active: Vec<usize> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_ref().unwrap();
        if !r.is_empty() {
            active.push(i);
            for c in r.keys() {
                col_count[*c] += 1;
            }
        }
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut done = vec![false; rows.len()];
    loop {
        // Markowitz: minimize (nnz_row − 1)(nnz_col − 1); ties by (col, row).
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for &i in &active {
            if done[i] {
                continue;
            }
            let row = rows[i].as_ref().unwrap();
            if row.is_empty() {
                continue;
            }
            let rn = row.len() - 1;
            for c in row.keys() {
                let score = rn * (col_count[*c].saturating_sub(1));
                let cand = (score, i, *c);
                let better = match &best {
                    None => true,
                    Some((s, r0, c0)) => {
                        (score, *c, i) < (*s, *c0, *r0)
                    }
                };
                if better {
                    best = Some(cand);
                }
                if score == 0 {
                    // cannot do better than zero fill for this row
                    break;
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        // normalize pivot row
        let mut prow = rows[pr].take().unwrap();
        let inv = prow.get(&pc).unwrap().inv().expect("pivot entry nonzero");
        if !inv.is_one() {
            prow = vec_scale(&prow, &inv);
        }
        // eliminate pivot column from every other active row
        for &i in &active {
            if i == pr {
                continue;
            }
            let Some(row) = rows[i].as_mut() else { continue };
            if let Some(c) = row.get(&pc).cloned() {
                for k in row.keys() {
                    col_count[*k] -= 1;
                }
                vec_add_scaled(row, &prow, &c.neg());
                for k in row.keys() {
                    col_count[*k] += 1;
                }
            }
        }
        rows[pr] = Some(prow);
        done[pr] = true;
        pivots.push((pr, pc));
        active.retain(|&i| {
            if done[i] {
                return true;
            }
            let keep = rows[i].as_ref().map_or(false, |r| !r.is_empty());
            keep
        });
        if active.iter().all(|&i| done[i]) {
            break;
        }
    }
    pivots.sort_by_key(|&(_, c)| c);
    Eliminated { pivots, rows }
}

pub(crate) fn kernel_from_elimination(
    order: u32,
    ambient: usize,
    elim: &Eliminated,
) -> Vec<SparseVec> {
    let pivot_cols: std::collections::BTreeSet<usize> =
        elim.pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for f in 0..ambient {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(f, Cyclotomic::one(order));
        for &(r, c) in &elim.pivots {
            if let Some(row) = elim.rows[r].as_ref() {
                if let Some(x) = row.get(&f) {
                    v.insert(c, x.neg());
                }
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c4(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(4, n)
    }

    #[test]
    fn zero_matrix_rank_kernel() {
        let m = SparseMatrix::zero(4, 3, 3);
        let rki = m.rank_kernel_image();
        assert_eq!(rki.rank, 0);
        assert_eq!(rki.kernel.dim(), 3);
        assert_eq!(rki.image.dim(), 0);
    }

    #[test]
    fn identity_rank_kernel() {
        let m = SparseMatrix::identity(4, 4);
        let rki = m.rank_kernel_image();
        assert_eq!(rki.rank, 4);
        assert_eq!(rki.kernel.dim(), 0);
        assert_eq!(rki.image.dim(), 4);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let mut m = SparseMatrix::zero(4, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.4) {
                        let v = c4(rng.gen_range(-3i64..=3));
                        m.add_entry(r, c, v).unwrap();
                    }
                }
            }
            let rki = m.rank_kernel_image();
            assert_eq!(rki.rank + rki.kernel.dim(), cols);
            assert_eq!(rki.image.dim(), rki.rank);
            for b in rki.kernel.basis() {
                assert!(m.apply(b).is_empty(), "kernel vector not annihilated");
            }
            // rank(M) = rank(conjugate transpose), and permutation invariance
            assert_eq!(rki.rank, m.conj_transpose().rank());
            let mut perm_rows: Vec<usize> = (0..rows).collect();
            let mut perm_cols: Vec<usize> = (0..cols).collect();
            for i in (1..perm_rows.len()).rev() {
                perm_rows.swap(i, rng.gen_range(0..=i));
            }
            for i in (1..perm_cols.len()).rev() {
                perm_cols.swap(i, rng.gen_range(0..=i));
            }
            let mut pm = SparseMatrix::zero(4, rows, cols);
            for (r, c, v) in m.iter() {
                pm.add_entry(perm_rows[r], perm_cols[c], v.clone()).unwrap();
            }
            assert_eq!(rki.rank, pm.rank());
        }
    }

    #[test]
    fn product_and_apply_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a_rows = rng.gen_range(1..=5);
            let inner = rng.gen_range(1..=5);
            let b_cols = rng.gen_range(1..=5);
            let mut a = SparseMatrix::zero(4, a_rows, inner);
            let mut b = SparseMatrix::zero(4, inner, b_cols);
            for r in 0..a_rows {
                for c in 0..inner {
                    if rng.gen_bool(0.5) {
                        a.add_entry(r, c, c4(rng.gen_range(-2i64..=2))).unwrap();
                    }
                }
            }
            for r in 0..inner {
                for c in 0..b_cols {
                    if rng.gen_bool(0.5) {
                        b.add_entry(r, c, c4(rng.gen_range(-2i64..=2))).unwrap();
                    }
                }
            }
            let ab = a.mul(&b).unwrap();
            for c in 0..b_cols {
                let mut x = SparseVec::new();
                x.insert(c, c4(1));
                let via_b = a.apply(&b.apply(&x));
                let direct = ab.apply(&x);
                assert_eq!(via_b, direct);
            }
        }
    }
}
