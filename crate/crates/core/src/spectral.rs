//! Both spectral sequences of a bounded double complex, page by page, with
//! differential ranks, E_∞, total cohomology with its two filtrations, and
//! the bifiltered gradings b_k^{p,q}.
//!
//! For total degree k and the column filtration F^p (columns ≥ p) the page
//! spaces are computed as canonical subspace quotients
//!
//!   E_r^{p,q} = Z_r^{p,q} / (Z_{r−1}^{p+1,q−1} + d Z_{r−1}^{p−r+1,q+r−2}),
//!   Z_r^{p,q} = { x ∈ F^p A^k : dx ∈ F^{p+r} A^{k+1} },
//!
//! and d_r ranks as dim(d Z_r + B_target) − dim(B_target), which avoids any
//! choice of representatives. The row sequence is always derived from
//! `mirror(A)`, never implemented separately.

use std::collections::BTreeMap;

use crate::bicomplex::{Bicomplex, Bidegree};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralKind {
    Column,
    Row,
}

#[derive(Clone, Debug, Default)]
pub struct PageData {
    pub dims: BTreeMap<Bidegree, usize>,
    pub diff_ranks: BTreeMap<Bidegree, usize>,
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub kind: SpectralKind,
    /// pages[r−1] holds page r; the last entry is the stable page.
    pub pages: Vec<PageData>,
    /// Least r with E_r = E_∞.
    pub stabilization_page: usize,
    pub einfty_dims: BTreeMap<Bidegree, usize>,
}

impl SpectralReport {
    pub fn page(&self, r: usize) -> &PageData {
        let idx = r.min(self.pages.len()).max(1) - 1;
        &self.pages[idx]
    }

    pub fn diff_rank(&self, r: usize, p: i64, q: i64) -> usize {
        if r == 0 || r > self.pages.len() {
            return 0;
        }
        self.pages[r - 1].diff_ranks.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Largest page index carrying a nonzero differential, or 0.
    pub fn last_nonzero_differential(&self) -> usize {
        let mut last = 0;
        for (i, p) in self.pages.iter().enumerate() {
            if p.diff_ranks.values().any(|&r| r > 0) {
                last = i + 1;
            }
        }
        last
    }
}

/// Dimensions b_k^{p,q} = dim gr^p_F gr^q_{F̄} H^k, keyed by (k, p, q);
/// only nonzero cells are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PurityTable {
    pub b: BTreeMap<(i64, i64, i64), usize>,
    pub h: BTreeMap<i64, usize>,
}

impl PurityTable {
    /// Σ_{p,q} b_k^{p,q} per degree; equals dim H^k by construction and is
    /// asserted in tests.
    pub fn degree_sum(&self, k: i64) -> usize {
        self.b
            .iter()
            .filter(|((kk, _, _), _)| *kk == k)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn is_pure(&self) -> bool {
        self.b.keys().all(|&(k, p, q)| p + q == k)
    }

    /// First cell violating |p+q−k| ≤ width, if any.
    pub fn impurity_witness(&self, width: i64) -> Option<(i64, i64, i64)> {
        self.b
            .keys()
            .find(|&&(k, p, q)| (p + q - k).abs() > width)
            .copied()
    }

    /// Convolution table of two factors (the Künneth rule for b-numbers).
    pub fn convolve(&self, other: &PurityTable) -> PurityTable {
        let mut b: BTreeMap<(i64, i64, i64), usize> = BTreeMap::new();
        for (&(k1, p1, q1), &v1) in &self.b {
            for (&(k2, p2, q2), &v2) in &other.b {
                *b.entry((k1 + k2, p1 + p2, q1 + q2)).or_insert(0) += v1 * v2;
            }
        }
        let mut h: BTreeMap<i64, usize> = BTreeMap::new();
        for (&k1, &v1) in &self.h {
            for (&k2, &v2) in &other.h {
                *h.entry(k1 + k2).or_insert(0) += v1 * v2;
            }
        }
        PurityTable { b, h }
    }
}

/// Total cohomology H^k_d with the column and row filtration subspaces,
/// expressed in a chosen basis of each H^k.
pub struct TotalCohomology {
    pub degrees: BTreeMap<i64, DegreeCohomology>,
}

pub struct DegreeCohomology {
    pub dim: usize,
    /// F^p H^k for p in the complex's column range (clamped outside).
    pub column_filtration: BTreeMap<i64, Subspace>,
    /// F̄^q H^k for q in the row range.
    pub row_filtration: BTreeMap<i64, Subspace>,
}

impl TotalCohomology {
    pub fn dim(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |d| d.dim)
    }

    pub fn total_dims(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().map(|(&k, d)| (k, d.dim)).collect()
    }
}

/// Per-degree slice data shared by the page and cohomology computations.
struct DegreeSlices {
    /// For each total degree: ordered basis (sorted by column p ascending),
    /// as (p, q, dim, offset) runs.
    runs: BTreeMap<i64, Vec<(i64, i64, usize, usize)>>,
    totals: BTreeMap<i64, usize>,
    /// d_k : A^k → A^{k+1}.
    d: BTreeMap<i64, SparseMatrix>,
    order: u32,
}

impl DegreeSlices {
    fn build(a: &Bicomplex, degrees: impl Iterator<Item = i64>) -> Self {
        let mut runs: BTreeMap<i64, Vec<(i64, i64, usize, usize)>> = BTreeMap::new();
        let mut totals: BTreeMap<i64, usize> = BTreeMap::new();
        for k in degrees {
            let mut off = 0usize;
            let mut v = Vec::new();
            let mut cells: Vec<Bidegree> = a
                .dims()
                .keys()
                .copied()
                .filter(|&(p, q)| p + q == k)
                .collect();
            cells.sort();
            for (p, q) in cells {
                let d = a.dim(p, q);
                v.push((p, q, d, off));
                off += d;
            }
            runs.insert(k, v);
            totals.insert(k, off);
        }
        DegreeSlices { runs, totals, d: BTreeMap::new(), order: a.field_order() }
    }

    fn total(&self, k: i64) -> usize {
        self.totals.get(&k).copied().unwrap_or(0)
    }

    fn assemble_d(&mut self, a: &Bicomplex, k: i64) {
        if self.d.contains_key(&k) || !self.runs.contains_key(&k) {
            return;
        }
        let rows = self.total(k + 1);
        let cols = self.total(k);
        let mut m = SparseMatrix::zero(self.order, rows, cols);
        if rows > 0 && cols > 0 {
            let trg = &self.runs[&(k + 1)];
            let toff = |p: i64, q: i64| -> Option<usize> {
                trg.iter().find(|&&(tp, tq, _, _)| tp == p && tq == q).map(|&(_, _, _, o)| o)
            };
            for &(p, q, _, off) in &self.runs[&k] {
                let del = a.del_block(p, q);
                if !del.is_zero() {
                    if let Some(to) = toff(p + 1, q) {
                        for (r, c, v) in del.iter() {
                            m.add_entry(to + r, off + c, v.clone()).unwrap();
                        }
                    }
                }
                let delbar = a.delbar_block(p, q);
                if !delbar.is_zero() {
                    if let Some(to) = toff(p, q + 1) {
                        for (r, c, v) in delbar.iter() {
                            m.add_entry(to + r, off + c, v.clone()).unwrap();
                        }
                    }
                }
            }
        }
        self.d.insert(k, m);
    }

    /// Coordinate indices of F^p A^k (columns ≥ p).
    fn filt_indices(&self, k: i64, p: i64) -> Vec<usize> {
        let Some(runs) = self.runs.get(&k) else { return vec![] };
        let mut idx = Vec::new();
        for &(cp, _, d, off) in runs {
            if cp >= p {
                idx.extend(off..off + d);
            }
        }
        idx
    }

    /// Coordinate indices with row ≥ q.
    fn row_filt_indices(&self, k: i64, q: i64) -> Vec<usize> {
        let Some(runs) = self.runs.get(&k) else { return vec![] };
        let mut idx = Vec::new();
        for &(_, cq, d, off) in runs {
            if cq >= q {
                idx.extend(off..off + d);
            }
        }
        idx
    }
}

/// Z_r^{p,q} as a subspace of A^{p+q}: kernel of the submatrix of d with
/// source columns ≥ p and target columns < p+r, embedded back.
fn z_subspace(sl: &DegreeSlices, k: i64, p: i64, r: usize) -> Subspace {
    let n = sl.total(k);
    let src_idx = sl.filt_indices(k, p);
    if src_idx.is_empty() {
        return Subspace::zero(sl.order, n);
    }
    if r == 0 {
        return Subspace::coordinate(sl.order, n, src_idx);
    }
    let cut = p + r as i64;
    let trg_all: Vec<usize> = (0..sl.total(k + 1)).collect();
    let keep: Vec<usize> = {
        let high = sl.filt_indices(k + 1, cut);
        let high: std::collections::BTreeSet<usize> = high.into_iter().collect();
        trg_all.into_iter().filter(|i| !high.contains(i)).collect()
    };
    let d = sl.d.get(&k).expect("d assembled");
    let sub = d.restrict(&keep, &src_idx);
    let ker = sub.kernel();
    // embed kernel coordinates back into A^k
    let mut vectors = Vec::new();
    for b in ker.basis() {
        let mut v = std::collections::BTreeMap::new();
        for (i, c) in b {
            v.insert(src_idx[*i], c.clone());
        }
        vectors.push(v);
    }
    Subspace::from_vectors(sl.order, n, vectors)
}

struct PageEngine {
    sl: DegreeSlices,
    /// cache: (r, p, k) → Z_r^{p, k−p}
    z: BTreeMap<(usize, i64, i64), Subspace>,
}

impl PageEngine {
    fn new(a: &Bicomplex, degrees: impl Iterator<Item = i64>) -> Self {
        let mut sl = DegreeSlices::build(a, degrees);
        let ks: Vec<i64> = sl.runs.keys().copied().collect();
        for k in ks {
            sl.assemble_d(a, k);
        }
        PageEngine { sl, z: BTreeMap::new() }
    }

    fn z(&mut self, r: usize, p: i64, k: i64) -> Subspace {
        if let Some(s) = self.z.get(&(r, p, k)) {
            return s.clone();
        }
        let s = z_subspace(&self.sl, k, p, r);
        self.z.insert((r, p, k), s.clone());
        s
    }

    /// Boundary subspace B_r^{p,q} = Z_{r−1}^{p+1,q−1} + d Z_{r−1}^{p−r+1,q+r−2}.
    fn boundary(&mut self, r: usize, p: i64, k: i64) -> Subspace {
        let zr1 = self.z(r - 1, p + 1, k);
        let src = self.z(r - 1, p - r as i64 + 1, k - 1);
        let img = if src.is_zero_space() || self.sl.total(k) == 0 {
            Subspace::zero(self.sl.order, self.sl.total(k))
        } else {
            let d = self.sl.d.get(&(k - 1)).expect("d assembled");
            d.image_of(&src).unwrap()
        };
        zr1.sum(&img).unwrap()
    }
}

fn column_ranges(a: &Bicomplex) -> Option<(i64, i64)> {
    a.column_range()
}

/// The column spectral sequence restricted to reported source degrees
/// `band` (all degrees when None). Windowed complexes are accepted as long
/// as every bidegree the band computation touches is complete.
fn column_fss(a: &Bicomplex, band: Option<(i64, i64)>) -> Result<SpectralReport> {
    if a.dims().is_empty() {
        return Ok(SpectralReport {
            kind: SpectralKind::Column,
            pages: vec![PageData::default()],
            stabilization_page: 1,
            einfty_dims: BTreeMap::new(),
        });
    }
    let (kmin_all, kmax_all) = {
        let min = a.dims().keys().map(|&(p, q)| p + q).min().unwrap();
        let max = a.dims().keys().map(|&(p, q)| p + q).max().unwrap();
        (min, max)
    };
    let (k0, k1) = band.unwrap_or((kmin_all, kmax_all));
    // completeness: the computation touches degrees k0−1 .. k1+1 and the
    // differentials out of them
    for &(p, q) in a.dims().keys() {
        let k = p + q;
        if k >= k0 - 1 && k <= k1 + 1 && a.incomplete_bidegrees().contains(&(p, q)) {
            return Err(Error::IncompleteBidegree(p, q));
        }
    }
    let (pmin, pmax) = column_ranges(a).unwrap();
    let width = (pmax - pmin + 1).max(1) as usize;
    let degrees = (k0 - 1)..=(k1 + 2);
    let mut eng = PageEngine::new(a, degrees.clone());
    let mut pages: Vec<PageData> = Vec::new();
    // bidegrees to report per degree
    let mut cells: Vec<Bidegree> = a
        .dims()
        .keys()
        .copied()
        .filter(|&(p, q)| p + q >= k0 && p + q <= k1)
        .collect();
    cells.sort_by_key(|&(p, q)| (p + q, p, q));
    // also need E_r at the target degree of each differential
    let mut prev_dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for r in 1..=width {
        let mut page = PageData::default();
        for &(p, q) in &cells {
            let k = p + q;
            let zr = eng.z(r, p, k);
            let br = eng.boundary(r, p, k);
            let dim = zr.dim() - br.dim();
            if dim > 0 {
                page.dims.insert((p, q), dim);
            }
            // rank of d_r into (p+r, q−r+1): boundary at the target uses only
            // degree-(k+1) and degree-k data, both inside the band margin
            if dim > 0 && k + 1 <= k1 + 1 {
                let tp = p + r as i64;
                let bt = eng.boundary(r, tp, k + 1);
                let d = eng.sl.d.get(&k).unwrap();
                let dz = d.image_of(&zr).unwrap();
                let rank = dz.sum(&bt).unwrap().dim() - bt.dim();
                if rank > 0 {
                    page.diff_ranks.insert((p, q), rank);
                }
            }
        }
        // recurrence check: dims drop by outgoing + incoming ranks
        if r >= 2 {
            let prev = &pages[r - 2];
            for &(p, q) in &cells {
                let k = p + q;
                if k + 1 > k1 + 1 || k - 1 < k0 - 1 {
                    continue;
                }
                let out_rank = prev.diff_ranks.get(&(p, q)).copied().unwrap_or(0);
                let src = (p - (r as i64 - 1), q + (r as i64 - 1) - 1);
                let in_rank = if src.0 + src.1 >= k0 && src.0 + src.1 <= k1 {
                    prev.diff_ranks.get(&src).copied().unwrap_or(0)
                } else {
                    // source outside the reported band: recompute directly
                    let zs = eng.z(r - 1, src.0, k - 1);
                    let bs = eng.boundary(r - 1, src.0, k - 1);
                    if zs.dim() > bs.dim() {
                        let bt = eng.boundary(r - 1, p, k);
                        let d = eng.sl.d.get(&(k - 1)).unwrap();
                        let dz = d.image_of(&zs).unwrap();
                        dz.sum(&bt).unwrap().dim() - bt.dim()
                    } else {
                        0
                    }
                };
                let expected = prev_dims.get(&(p, q)).copied().unwrap_or(0) - out_rank - in_rank;
                let got = page.dims.get(&(p, q)).copied().unwrap_or(0);
                debug_assert_eq!(expected, got, "page recurrence at r={r}, ({p},{q})");
            }
        }
        prev_dims = page.dims.clone();
        pages.push(page);
        if r == width {
            break;
        }
    }
    let stab = {
        let mut last = 0;
        for (i, p) in pages.iter().enumerate() {
            if p.diff_ranks.values().any(|&x| x > 0) {
                last = i + 1;
            }
        }
        last + 1
    };
    let einfty = pages[stab.min(pages.len()) - 1].dims.clone();
    pages.truncate(stab.max(1));
    Ok(SpectralReport {
        kind: SpectralKind::Column,
        pages,
        stabilization_page: stab,
        einfty_dims: einfty,
    })
}

fn transpose_report(mut rep: SpectralReport, kind: SpectralKind) -> SpectralReport {
    rep.kind = kind;
    for page in &mut rep.pages {
        page.dims = page.dims.iter().map(|(&(p, q), &v)| ((q, p), v)).collect();
        page.diff_ranks = page.diff_ranks.iter().map(|(&(p, q), &v)| ((q, p), v)).collect();
    }
    rep.einfty_dims = rep.einfty_dims.iter().map(|(&(p, q), &v)| ((q, p), v)).collect();
    rep
}

/// One or both spectral sequences; the row sequence is the column sequence
/// of the mirrored complex with transposed indices.
pub fn fss(a: &Bicomplex, kind: SpectralKind) -> Result<SpectralReport> {
    fss_band(a, kind, None)
}

pub fn fss_band(a: &Bicomplex, kind: SpectralKind, band: Option<(i64, i64)>) -> Result<SpectralReport> {
    match kind {
        SpectralKind::Column => column_fss(a, band),
        SpectralKind::Row => {
            let rep = column_fss(&a.mirror(), band)?;
            Ok(transpose_report(rep, SpectralKind::Row))
        }
    }
}

/// Least page r with E_r = E_∞ for (column, row).
pub fn degeneration_page(a: &Bicomplex) -> Result<(usize, usize)> {
    let col = fss(a, SpectralKind::Column)?;
    let row = fss(a, SpectralKind::Row)?;
    Ok((col.stabilization_page, row.stabilization_page))
}

/// Total cohomology with both filtrations, per degree.
pub fn total_cohomology(a: &Bicomplex) -> Result<TotalCohomology> {
    if !a.is_complete() {
        let &(p, q) = a.incomplete_bidegrees().iter().next().unwrap();
        return Err(Error::IncompleteBidegree(p, q));
    }
    let mut degrees = BTreeMap::new();
    if a.dims().is_empty() {
        return Ok(TotalCohomology { degrees });
    }
    let kmin = a.dims().keys().map(|&(p, q)| p + q).min().unwrap();
    let kmax = a.dims().keys().map(|&(p, q)| p + q).max().unwrap();
    let mut sl = DegreeSlices::build(a, (kmin - 1)..=(kmax + 1));
    for k in (kmin - 1)..=(kmax + 1) {
        sl.assemble_d(a, k);
    }
    let (pmin, pmax) = a.column_range().unwrap();
    let (qmin, qmax) = a.row_range().unwrap();
    for k in kmin..=kmax {
        let n = sl.total(k);
        if n == 0 {
            continue;
        }
        let ker = sl.d.get(&k).unwrap().kernel();
        let im = sl.d.get(&(k - 1)).unwrap().image();
        let q = ker.quotient_by(&im).map_err(|_| {
            Error::InvalidComplex("image not contained in kernel; run validate".into())
        })?;
        let hdim = q.dim();
        let mut column_filtration = BTreeMap::new();
        for p in pmin..=(pmax + 1) {
            let fp = Subspace::coordinate(a.field_order(), n, sl.filt_indices(k, p));
            let w = ker.intersect(&fp)?.sum(&im)?;
            let proj = q.project_subspace(&w).expect("contained in kernel");
            column_filtration.insert(p, proj);
        }
        let mut row_filtration = BTreeMap::new();
        for qq in qmin..=(qmax + 1) {
            let fq = Subspace::coordinate(a.field_order(), n, sl.row_filt_indices(k, qq));
            let w = ker.intersect(&fq)?.sum(&im)?;
            let proj = q.project_subspace(&w).expect("contained in kernel");
            row_filtration.insert(qq, proj);
        }
        degrees.insert(k, DegreeCohomology { dim: hdim, column_filtration, row_filtration });
    }
    Ok(TotalCohomology { degrees })
}

/// b_k^{p,q} = dim (F^p ∩ F̄^q) / (F^{p+1} ∩ F̄^q + F^p ∩ F̄^{q+1}) inside H^k.
pub fn purity_table(a: &Bicomplex) -> Result<PurityTable> {
    let tc = total_cohomology(a)?;
    let mut b = BTreeMap::new();
    let mut h = BTreeMap::new();
    let Some((pmin, pmax)) = a.column_range() else {
        return Ok(PurityTable { b, h });
    };
    let (qmin, qmax) = a.row_range().unwrap();
    for (&k, deg) in &tc.degrees {
        if deg.dim > 0 {
            h.insert(k, deg.dim);
        }
        let filt = |p: i64| -> &Subspace {
            let p = p.clamp(pmin, pmax + 1);
            &deg.column_filtration[&p]
        };
        let rfilt = |q: i64| -> &Subspace {
            let q = q.clamp(qmin, qmax + 1);
            &deg.row_filtration[&q]
        };
        let mut total = 0usize;
        for p in pmin..=pmax {
            for q in qmin..=qmax {
                let x = filt(p).intersect(rfilt(q))?;
                let x10 = filt(p + 1).intersect(rfilt(q))?;
                let x01 = filt(p).intersect(rfilt(q + 1))?;
                let below = x10.sum(&x01)?;
                let dim = x.dim() - x.intersect(&below)?.dim();
                if dim > 0 {
                    b.insert((k, p, q), dim);
                    total += dim;
                }
            }
        }
        debug_assert_eq!(total, deg.dim, "bigraded pieces must fill H^{k}");
    }
    Ok(PurityTable { b, h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::dots;
    use crate::linalg::SparseMatrix;

    #[test]
    fn dot_cohomology_and_purity() {
        let a = Bicomplex::dot(4, 2, 1);
        let tc = total_cohomology(&a).unwrap();
        assert_eq!(tc.dim(3), 1);
        assert_eq!(tc.dim(2), 0);
        let pt = purity_table(&a).unwrap();
        assert_eq!(pt.b.get(&(3, 2, 1)), Some(&1));
        assert_eq!(pt.b.len(), 1);
        let rep = fss(&a, SpectralKind::Column).unwrap();
        assert_eq!(rep.stabilization_page, 1);
        assert_eq!(rep.einfty_dims.get(&(2, 1)), Some(&1));
    }

    #[test]
    fn horizontal_line_is_acyclic_with_d1() {
        // <x> →∂ <∂x> at (0,0)→(1,0)
        let a = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .del(0, 0, SparseMatrix::identity(4, 1))
            .build()
            .unwrap();
        let tc = total_cohomology(&a).unwrap();
        assert_eq!(tc.dim(0), 0);
        assert_eq!(tc.dim(1), 0);
        let col = fss(&a, SpectralKind::Column).unwrap();
        assert_eq!(col.diff_rank(1, 0, 0), 1);
        assert_eq!(col.stabilization_page, 2);
        assert!(col.einfty_dims.is_empty());
        // the row sequence sees nothing
        let row = fss(&a, SpectralKind::Row).unwrap();
        assert_eq!(row.stabilization_page, 1);
        assert!(row.page(1).dims.is_empty());
    }

    #[test]
    fn vertical_line_feeds_the_row_sequence() {
        let a = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(0, 1, 1)
            .delbar(0, 0, SparseMatrix::identity(4, 1))
            .build()
            .unwrap();
        let col = fss(&a, SpectralKind::Column).unwrap();
        assert_eq!(col.stabilization_page, 1);
        assert!(col.page(1).dims.is_empty());
        let row = fss(&a, SpectralKind::Row).unwrap();
        assert_eq!(row.diff_rank(1, 0, 0), 1);
        assert_eq!(row.stabilization_page, 2);
    }

    #[test]
    fn zero_differential_complex_gives_pages_equal_dims() {
        let a = dots(4, &[(0, 0, 1), (1, 0, 2), (0, 1, 2), (1, 1, 1)]);
        let col = fss(&a, SpectralKind::Column).unwrap();
        assert_eq!(col.stabilization_page, 1);
        assert_eq!(col.page(1).dims.get(&(1, 0)), Some(&2));
        let (c, r) = degeneration_page(&a).unwrap();
        assert_eq!((c, r), (1, 1));
        let pt = purity_table(&a).unwrap();
        assert!(pt.is_pure());
        assert_eq!(pt.degree_sum(1), 4);
    }

    #[test]
    fn einfty_matches_total_cohomology_on_mixed_complex() {
        // L-shape plus a dot: H in degrees 1 (from L) and 0
        let mut b = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .dim(0, 1, 1)
            .dim(2, 2, 1);
        b = b.del(0, 0, SparseMatrix::identity(4, 1));
        b = b.delbar(0, 0, SparseMatrix::identity(4, 1));
        let a = b.build().unwrap();
        assert!(a.validate().is_valid());
        let tc = total_cohomology(&a).unwrap();
        let col = fss(&a, SpectralKind::Column).unwrap();
        for k in [0i64, 1, 2, 3, 4] {
            let sum: usize = col
                .einfty_dims
                .iter()
                .filter(|(&(p, q), _)| p + q == k)
                .map(|(_, &v)| v)
                .sum();
            assert_eq!(sum, tc.dim(k), "degree {k}");
        }
    }

    #[test]
    fn mirror_swaps_sequences() {
        let a = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .del(0, 0, SparseMatrix::identity(4, 1))
            .build()
            .unwrap();
        let m = a.mirror();
        let col_m = fss(&m, SpectralKind::Column).unwrap();
        let row_a = fss(&a, SpectralKind::Row).unwrap();
        assert_eq!(col_m.stabilization_page, row_a.stabilization_page);
        for (r, page) in row_a.pages.iter().enumerate() {
            let mp = &col_m.pages[r];
            for (&(p, q), &v) in &page.dims {
                assert_eq!(mp.dims.get(&(q, p)), Some(&v));
            }
        }
    }
}
