//! Bounded double complexes: validation and the structural calculus
//! (direct sum, shift, mirror, tensor product, blow-up models).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

pub type Bidegree = (i64, i64);

/// A bounded double complex of finite-dimensional ℚ(ζ_n)-vector spaces with
/// anticommuting differentials ∂ of degree (1,0) and ∂̄ of degree (0,1).
///
/// Differentials are stored per bidegree as separate sparse blocks; every
/// algorithm downstream is bidegree-local. Values are immutable after
/// construction.
#[derive(Clone, PartialEq)]
pub struct Bicomplex {
    field_order: u32,
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, SparseMatrix>,
    delbar: BTreeMap<Bidegree, SparseMatrix>,
    labels: BTreeMap<Bidegree, Vec<String>>,
    /// Bidegrees whose outgoing differentials were cut by a compilation
    /// window; only operations on interior bidegrees are permitted there.
    incomplete: BTreeSet<Bidegree>,
}

pub struct BicomplexBuilder {
    inner: Bicomplex,
}

impl BicomplexBuilder {
    pub fn dim(mut self, p: i64, q: i64, d: usize) -> Self {
        if d > 0 {
            self.inner.dims.insert((p, q), d);
        }
        self
    }

    pub fn labels(mut self, p: i64, q: i64, labels: Vec<String>) -> Self {
        self.inner.labels.insert((p, q), labels);
        self
    }

    pub fn del(mut self, p: i64, q: i64, m: SparseMatrix) -> Self {
        if !m.is_zero() {
            self.inner.del.insert((p, q), m);
        }
        self
    }

    pub fn delbar(mut self, p: i64, q: i64, m: SparseMatrix) -> Self {
        if !m.is_zero() {
            self.inner.delbar.insert((p, q), m);
        }
        self
    }

    pub fn incomplete(mut self, p: i64, q: i64) -> Self {
        self.inner.incomplete.insert((p, q));
        self
    }

    /// Checks block shapes and label lengths; d²-identities are checked by
    /// `validate`, not here.
    pub fn build(self) -> Result<Bicomplex> {
        let a = self.inner;
        for (&(p, q), m) in &a.del {
            if m.order() != a.field_order {
                return Err(Error::OrderMismatch(a.field_order, m.order()));
            }
            if m.cols() != a.dim(p, q) || m.rows() != a.dim(p + 1, q) {
                return Err(Error::DimensionMismatch(format!(
                    "del block at ({p},{q}) is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    a.dim(p + 1, q),
                    a.dim(p, q)
                )));
            }
        }
        for (&(p, q), m) in &a.delbar {
            if m.order() != a.field_order {
                return Err(Error::OrderMismatch(a.field_order, m.order()));
            }
            if m.cols() != a.dim(p, q) || m.rows() != a.dim(p, q + 1) {
                return Err(Error::DimensionMismatch(format!(
                    "delbar block at ({p},{q}) is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    a.dim(p, q + 1),
                    a.dim(p, q)
                )));
            }
        }
        for (&(p, q), l) in &a.labels {
            if l.len() != a.dim(p, q) {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels at ({p},{q}) for dimension {}",
                    l.len(),
                    a.dim(p, q)
                )));
            }
        }
        Ok(a)
    }
}

/// Outcome of the d² = 0 validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    Violation { identity: Identity, at: Bidegree },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    DelDel,
    DelbarDelbar,
    AntiCommute,
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Identity::DelDel => write!(f, "del ∘ del = 0"),
            Identity::DelbarDelbar => write!(f, "delbar ∘ delbar = 0"),
            Identity::AntiCommute => write!(f, "del∘delbar + delbar∘del = 0"),
        }
    }
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }
}

impl Bicomplex {
    pub fn builder(field_order: u32) -> BicomplexBuilder {
        BicomplexBuilder {
            inner: Bicomplex {
                field_order,
                dims: BTreeMap::new(),
                del: BTreeMap::new(),
                delbar: BTreeMap::new(),
                labels: BTreeMap::new(),
                incomplete: BTreeSet::new(),
            },
        }
    }

    pub fn empty(field_order: u32) -> Self {
        Self::builder(field_order).build().unwrap()
    }

    /// One-dimensional complex concentrated in a single bidegree.
    pub fn dot(field_order: u32, p: i64, q: i64) -> Self {
        Self::builder(field_order).dim(p, q, 1).build().unwrap()
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn labels_at(&self, p: i64, q: i64) -> Option<&[String]> {
        self.labels.get(&(p, q)).map(|v| v.as_slice())
    }

    pub fn del_block(&self, p: i64, q: i64) -> SparseMatrix {
        self.del
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.field_order, self.dim(p + 1, q), self.dim(p, q)))
    }

    pub fn delbar_block(&self, p: i64, q: i64) -> SparseMatrix {
        self.delbar
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(self.field_order, self.dim(p, q + 1), self.dim(p, q)))
    }

    pub fn incomplete_bidegrees(&self) -> &BTreeSet<Bidegree> {
        &self.incomplete
    }

    pub fn is_complete(&self) -> bool {
        self.incomplete.is_empty()
    }

    pub fn column_range(&self) -> Option<(i64, i64)> {
        let min = self.dims.keys().map(|&(p, _)| p).min()?;
        let max = self.dims.keys().map(|&(p, _)| p).max()?;
        Some((min, max))
    }

    pub fn row_range(&self) -> Option<(i64, i64)> {
        let min = self.dims.keys().map(|&(_, q)| q).min()?;
        let max = self.dims.keys().map(|&(_, q)| q).max()?;
        Some((min, max))
    }

    /// Checks ∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0 at every bidegree, skipping identities
    /// that involve a window-incomplete source. Reports the first violation,
    /// never aborts.
    pub fn validate(&self) -> ValidationReport {
        for &(p, q) in self.dims.keys() {
            if self.incomplete.contains(&(p, q)) {
                continue;
            }
            if !self.incomplete.contains(&(p + 1, q)) {
                let dd = self.del_block(p + 1, q).mul(&self.del_block(p, q)).unwrap();
                if !dd.is_zero() {
                    return ValidationReport::Violation { identity: Identity::DelDel, at: (p, q) };
                }
            }
            if !self.incomplete.contains(&(p, q + 1)) {
                let bb = self.delbar_block(p, q + 1).mul(&self.delbar_block(p, q)).unwrap();
                if !bb.is_zero() {
                    return ValidationReport::Violation {
                        identity: Identity::DelbarDelbar,
                        at: (p, q),
                    };
                }
            }
            if !self.incomplete.contains(&(p + 1, q)) && !self.incomplete.contains(&(p, q + 1)) {
                let a = self.delbar_block(p + 1, q).mul(&self.del_block(p, q)).unwrap();
                let b = self.del_block(p, q + 1).mul(&self.delbar_block(p, q)).unwrap();
                if !a.add(&b).unwrap().is_zero() {
                    return ValidationReport::Violation {
                        identity: Identity::AntiCommute,
                        at: (p, q),
                    };
                }
            }
        }
        ValidationReport::Valid
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate() {
            ValidationReport::Valid => Ok(()),
            ValidationReport::Violation { identity, at } => Err(Error::InvalidComplex(format!(
                "{identity} fails at ({}, {})",
                at.0, at.1
            ))),
        }
    }

    fn check_same_order(&self, other: &Bicomplex) -> Result<()> {
        if self.field_order != other.field_order {
            return Err(Error::FieldOrderMismatch(self.field_order, other.field_order));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Bicomplex) -> Result<Bicomplex> {
        self.check_same_order(other)?;
        let order = self.field_order;
        let mut b = Bicomplex::builder(order);
        let bidegrees: BTreeSet<Bidegree> =
            self.dims.keys().chain(other.dims.keys()).copied().collect();
        for &(p, q) in &bidegrees {
            let d1 = self.dim(p, q);
            let d2 = other.dim(p, q);
            b = b.dim(p, q, d1 + d2);
            let l1 = self.labels_at(p, q);
            let l2 = other.labels_at(p, q);
            if l1.is_some() || l2.is_some() {
                let mut labels = Vec::with_capacity(d1 + d2);
                match l1 {
                    Some(l) => labels.extend(l.iter().cloned()),
                    None => labels.extend((0..d1).map(|i| format!("a{i}"))),
                }
                match l2 {
                    Some(l) => labels.extend(l.iter().cloned()),
                    None => labels.extend((0..d2).map(|i| format!("b{i}"))),
                }
                b = b.labels(p, q, labels);
            }
        }
        for &(p, q) in &bidegrees {
            for (kind, tgt) in [(0, (p + 1, q)), (1, (p, q + 1))] {
                let m1 = if kind == 0 { self.del_block(p, q) } else { self.delbar_block(p, q) };
                let m2 = if kind == 0 { other.del_block(p, q) } else { other.delbar_block(p, q) };
                if m1.is_zero() && m2.is_zero() {
                    continue;
                }
                let rows = self.dim(tgt.0, tgt.1) + other.dim(tgt.0, tgt.1);
                let cols = self.dim(p, q) + other.dim(p, q);
                let mut m = SparseMatrix::zero(order, rows, cols);
                for (r, c, v) in m1.iter() {
                    m.add_entry(r, c, v.clone())?;
                }
                let roff = self.dim(tgt.0, tgt.1);
                let coff = self.dim(p, q);
                for (r, c, v) in m2.iter() {
                    m.add_entry(r + roff, c + coff, v.clone())?;
                }
                b = if kind == 0 { b.del(p, q, m) } else { b.delbar(p, q, m) };
            }
        }
        for &(p, q) in self.incomplete.iter().chain(other.incomplete.iter()) {
            b = b.incomplete(p, q);
        }
        b.build()
    }

    /// `shift(A,i,j)^{p,q} = A^{p−i,q−j}` with differentials reindexed.
    pub fn shift(&self, i: i64, j: i64) -> Bicomplex {
        let mut b = Bicomplex::builder(self.field_order);
        for (&(p, q), &d) in &self.dims {
            b = b.dim(p + i, q + j, d);
        }
        for (&(p, q), l) in &self.labels {
            b = b.labels(p + i, q + j, l.clone());
        }
        for (&(p, q), m) in &self.del {
            b = b.del(p + i, q + j, m.clone());
        }
        for (&(p, q), m) in &self.delbar {
            b = b.delbar(p + i, q + j, m.clone());
        }
        for &(p, q) in &self.incomplete {
            b = b.incomplete(p + i, q + j);
        }
        b.build().unwrap()
    }

    /// Transposed complex: bidegrees swapped, the roles of ∂ and ∂̄ exchanged,
    /// scalar entries conjugated.
    pub fn mirror(&self) -> Bicomplex {
        let mut b = Bicomplex::builder(self.field_order);
        for (&(p, q), &d) in &self.dims {
            b = b.dim(q, p, d);
        }
        for (&(p, q), l) in &self.labels {
            b = b.labels(q, p, l.clone());
        }
        for (&(p, q), m) in &self.del {
            b = b.delbar(q, p, m.conj());
        }
        for (&(p, q), m) in &self.delbar {
            b = b.del(q, p, m.conj());
        }
        for &(p, q) in &self.incomplete {
            b = b.incomplete(q, p);
        }
        b.build().unwrap()
    }

    /// Tensor product with the Koszul sign on the left factor's total degree.
    pub fn tensor(&self, other: &Bicomplex) -> Result<Bicomplex> {
        self.check_same_order(other)?;
        if !self.is_complete() || !other.is_complete() {
            return Err(Error::IncompleteBidegree(0, 0));
        }
        let order = self.field_order;
        // basis of (A⊗B)^{p,q}: pairs grouped by (p1,q1) lexicographic, then
        // (a index, b index) row-major
        let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
        // offsets[(p,q)][(p1,q1)] = starting index of the A^{p1,q1}⊗B^{p2,q2} block
        let mut offsets: BTreeMap<Bidegree, BTreeMap<Bidegree, usize>> = BTreeMap::new();
        for (&(p1, q1), &d1) in &self.dims {
            for (&(p2, q2), &d2) in &other.dims {
                let key = (p1 + p2, q1 + q2);
                let e = dims.entry(key).or_insert(0);
                offsets.entry(key).or_default().insert((p1, q1), *e);
                *e += d1 * d2;
            }
        }
        let mut b = Bicomplex::builder(order);
        for (&(p, q), &d) in &dims {
            b = b.dim(p, q, d);
        }
        // labels when both factors carry them
        let both_labeled = !self.labels.is_empty()
            && !other.labels.is_empty()
            && self.dims.keys().all(|k| self.labels.contains_key(k))
            && other.dims.keys().all(|k| other.labels.contains_key(k));
        if both_labeled {
            for (&(p, q), &d) in &dims {
                let mut labels = vec![String::new(); d];
                for (&(p1, q1), &off) in &offsets[&(p, q)] {
                    let (p2, q2) = (p - p1, q - q1);
                    let la = &self.labels[&(p1, q1)];
                    let lb = &other.labels[&(p2, q2)];
                    for (i, sa) in la.iter().enumerate() {
                        for (j, sb) in lb.iter().enumerate() {
                            labels[off + i * lb.len() + j] = format!("{sa}*{sb}");
                        }
                    }
                }
                b = b.labels(p, q, labels);
            }
        }
        // differentials: ∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y, same for ∂̄
        for kind in 0..2 {
            for (&(p, q), _) in &dims {
                let (tp, tq) = if kind == 0 { (p + 1, q) } else { (p, q + 1) };
                let Some(tdim) = dims.get(&(tp, tq)).copied() else { continue };
                let sdim = dims[&(p, q)];
                let mut m = SparseMatrix::zero(order, tdim, sdim);
                for (&(p1, q1), &off) in &offsets[&(p, q)] {
                    let (p2, q2) = (p - p1, q - q1);
                    let d1 = self.dim(p1, q1);
                    let d2 = other.dim(p2, q2);
                    // left factor differential: lands in block (p1±, q1±)⊗(p2,q2)
                    let ma = if kind == 0 { self.del_block(p1, q1) } else { self.delbar_block(p1, q1) };
                    if !ma.is_zero() {
                        let tkey = if kind == 0 { (p1 + 1, q1) } else { (p1, q1 + 1) };
                        if let Some(toff) = offsets.get(&(tp, tq)).and_then(|o| o.get(&tkey)) {
                            for (r, c, v) in ma.iter() {
                                for j in 0..d2 {
                                    m.add_entry(toff + r * d2 + j, off + c * d2 + j, v.clone())?;
                                }
                            }
                        }
                    }
                    // right factor differential with the Koszul sign
                    let mb = if kind == 0 { other.del_block(p2, q2) } else { other.delbar_block(p2, q2) };
                    if !mb.is_zero() {
                        let sign_neg = (p1 + q1).rem_euclid(2) == 1;
                        if let Some(toff) = offsets.get(&(tp, tq)).and_then(|o| o.get(&(p1, q1))) {
                            let td2 = if kind == 0 { other.dim(p2 + 1, q2) } else { other.dim(p2, q2 + 1) };
                            let _ = td2;
                            for (r, c, v) in mb.iter() {
                                let v = if sign_neg { v.neg() } else { v.clone() };
                                for i in 0..d1 {
                                    let tcols = if kind == 0 {
                                        other.dim(p2 + 1, q2)
                                    } else {
                                        other.dim(p2, q2 + 1)
                                    };
                                    m.add_entry(toff + i * tcols + r, off + i * d2 + c, v.clone())?;
                                }
                            }
                        }
                    }
                }
                if !m.is_zero() {
                    b = if kind == 0 { b.del(p, q, m) } else { b.delbar(p, q, m) };
                }
            }
        }
        let out = b.build()?;
        debug_assert!(out.validate().is_valid());
        Ok(out)
    }

    /// Blow-up model with center `z` of the given codimension:
    /// `A ⊕ Z[1,1] ⊕ … ⊕ Z[codim−1, codim−1]`.
    pub fn blowup_model(&self, z: &Bicomplex, codim: usize) -> Result<Bicomplex> {
        if codim < 2 {
            return Err(Error::CodimTooSmall(codim));
        }
        self.check_same_order(z)?;
        let mut out = self.clone();
        for i in 1..codim {
            out = out.direct_sum(&z.shift(i as i64, i as i64))?;
        }
        Ok(out)
    }

    /// Alternating sum of dimensions over antidiagonals; equals the Euler
    /// characteristic of total cohomology.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (&(p, q), &d) in &self.dims {
            if (p + q).rem_euclid(2) == 0 {
                chi += d as i64;
            } else {
                chi -= d as i64;
            }
        }
        chi
    }
}

impl std::fmt::Debug for Bicomplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Bicomplex over Q(zeta_{}), total dim {}", self.field_order, self.total_dim())?;
        for (&(p, q), &d) in &self.dims {
            writeln!(f, "  ({p},{q}): {d}")?;
        }
        Ok(())
    }
}

/// An antilinear involution σ with σA^{p,q} = A^{q,p} and σ∂σ = ∂̄, given by
/// one matrix per bidegree applied after coefficient conjugation.
#[derive(Clone)]
pub struct RealStructure {
    blocks: BTreeMap<Bidegree, SparseMatrix>,
}

impl RealStructure {
    pub fn new(blocks: BTreeMap<Bidegree, SparseMatrix>) -> Self {
        RealStructure { blocks }
    }

    pub fn blocks(&self) -> &BTreeMap<Bidegree, SparseMatrix> {
        &self.blocks
    }

    pub fn block(&self, a: &Bicomplex, p: i64, q: i64) -> SparseMatrix {
        self.blocks
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(a.field_order(), a.dim(q, p), a.dim(p, q)))
    }

    /// Checks σ∘σ = id and σ∂σ = ∂̄ against the complex.
    pub fn validate(&self, a: &Bicomplex) -> Result<()> {
        for &(p, q) in a.dims.keys() {
            if a.dim(p, q) != a.dim(q, p) {
                return Err(Error::InvalidComplex(format!(
                    "real structure requires dim({p},{q}) = dim({q},{p})"
                )));
            }
            let s = self.block(a, p, q);
            let s_back = self.block(a, q, p);
            // antilinear composition: (σ∘σ)(v) = S' · conj(S) · v
            let comp = s_back.mul(&s.conj())?;
            if comp != SparseMatrix::identity(a.field_order(), a.dim(p, q)) {
                return Err(Error::InvalidComplex(format!(
                    "real structure is not involutive at ({p},{q})"
                )));
            }
            if a.incomplete.contains(&(p, q)) || a.incomplete.contains(&(q, p)) {
                continue;
            }
            // σ∂σ = ∂̄ at (p,q): S_{(q+1,p)} · conj(∂_{(q,p)}) · conj(S_{(p,q)}) = ∂̄_{(p,q)}
            let lhs = self
                .block(a, q + 1, p)
                .mul(&a.del_block(q, p).conj())?
                .mul(&s.conj())?;
            if lhs != a.delbar_block(p, q) {
                return Err(Error::InvalidComplex(format!(
                    "real structure does not intertwine the differentials at ({p},{q})"
                )));
            }
        }
        Ok(())
    }
}

/// Convenience: a small complex with the given dot dimensions.
pub fn dots(field_order: u32, dims: &[(i64, i64, usize)]) -> Bicomplex {
    let mut b = Bicomplex::builder(field_order);
    for &(p, q, d) in dims {
        b = b.dim(p, q, d);
    }
    b.build().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term_del_identity() -> Bicomplex {
        Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .del(0, 0, SparseMatrix::identity(4, 1))
            .build()
            .unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(Bicomplex::dot(4, 0, 0).validate().is_valid());
        assert!(two_term_del_identity().validate().is_valid());
        // a genuinely broken complex: ∂ then ∂ both identity
        let bad = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .dim(2, 0, 1)
            .del(0, 0, SparseMatrix::identity(4, 1))
            .del(1, 0, SparseMatrix::identity(4, 1))
            .build()
            .unwrap();
        assert_eq!(
            bad.validate(),
            ValidationReport::Violation { identity: Identity::DelDel, at: (0, 0) }
        );
    }

    #[test]
    fn shift_reindexes() {
        let d = Bicomplex::dot(4, 0, 0);
        let s = d.shift(1, 1);
        assert_eq!(s.dim(1, 1), 1);
        assert_eq!(s.dim(0, 0), 0);
        assert_eq!(s.shift(-1, -1), d);
    }

    #[test]
    fn direct_sum_dims_add() {
        let a = two_term_del_identity();
        let b = Bicomplex::dot(4, 1, 0);
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.dim(0, 0), 1);
        assert_eq!(s.dim(1, 0), 2);
        assert!(s.validate().is_valid());
        let c3 = Bicomplex::dot(3, 0, 0);
        assert!(matches!(a.direct_sum(&c3), Err(Error::FieldOrderMismatch(4, 3))));
    }

    #[test]
    fn mirror_is_involutive_and_swaps_roles() {
        let a = two_term_del_identity();
        let m = a.mirror();
        assert_eq!(m.dim(0, 1), 1);
        assert!(m.del.is_empty());
        assert!(!m.delbar.is_empty());
        assert_eq!(m.mirror(), a);
    }

    #[test]
    fn tensor_unit_and_dims() {
        let a = two_term_del_identity();
        let unit = Bicomplex::dot(4, 0, 0);
        let t = a.tensor(&unit).unwrap();
        assert_eq!(t.dims(), a.dims());
        // dim convolution
        let b = a.tensor(&a).unwrap();
        assert_eq!(b.dim(0, 0), 1);
        assert_eq!(b.dim(1, 0), 2);
        assert_eq!(b.dim(2, 0), 1);
        assert!(b.validate().is_valid());
    }

    #[test]
    fn blowup_composition() {
        let a = Bicomplex::dot(4, 0, 0);
        let z = Bicomplex::dot(4, 0, 0);
        let m2 = a.blowup_model(&z, 2).unwrap();
        assert_eq!(m2.dim(1, 1), 1);
        let m3 = a.blowup_model(&z, 3).unwrap();
        assert_eq!(m3.dim(2, 2), 1);
        assert!(matches!(a.blowup_model(&z, 1), Err(Error::CodimTooSmall(1))));
        let empty = Bicomplex::empty(4);
        assert_eq!(a.blowup_model(&empty, 2).unwrap(), a);
    }

    #[test]
    fn anticommutation_checked() {
        // square with all identities fails anticommutation; one sign fixes it
        let id = SparseMatrix::identity(4, 1);
        let bad = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .dim(0, 1, 1)
            .dim(1, 1, 1)
            .del(0, 0, id.clone())
            .del(0, 1, id.clone())
            .delbar(0, 0, id.clone())
            .delbar(1, 0, id.clone())
            .build()
            .unwrap();
        assert!(!bad.validate().is_valid());
        let good = Bicomplex::builder(4)
            .dim(0, 0, 1)
            .dim(1, 0, 1)
            .dim(0, 1, 1)
            .dim(1, 1, 1)
            .del(0, 0, id.clone())
            .del(0, 1, id.neg())
            .delbar(0, 0, id.clone())
            .delbar(1, 0, id.clone())
            .build()
            .unwrap();
        assert!(good.validate().is_valid());
    }
}
