//! Subspaces in canonical reduced echelon form, and the quotient machinery
//! used by spectral-sequence pages.
//!
//! The echelon form uses leftmost pivots normalized to 1 with pivot columns
//! cleared, so two subspaces are equal as sets exactly when their stored
//! representations coincide.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::matrix::{vec_add_scaled, vec_scale, SparseMatrix, SparseVec};
use crate::linalg::scalar::Cyclotomic;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    order: u32,
    ambient: usize,
    /// Echelon rows sorted by pivot column.
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(order: u32, ambient: usize) -> Self {
        Subspace { order, ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(order: u32, ambient: usize) -> Self {
        let mut basis = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut v = SparseVec::new();
            v.insert(i, Cyclotomic::one(order));
            basis.push(v);
        }
        Subspace { order, ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of the coordinate axes listed in `indices`.
    pub fn coordinate(order: u32, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for i in set {
            assert!(i < ambient);
            let mut v = SparseVec::new();
            v.insert(i, Cyclotomic::one(order));
            basis.push(v);
            pivots.push(i);
        }
        Subspace { order, ambient, basis, pivots }
    }

    /// Canonical reduced echelon span of arbitrary vectors.
    pub fn from_vectors(order: u32, ambient: usize, vectors: Vec<SparseVec>) -> Self {
        let mut basis: Vec<SparseVec> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vectors {
            // full reduction against the current rows; since the rows are in
            // reduced form this single pass clears every pivot column of v
            for (i, p) in pivots.iter().enumerate() {
                if let Some(c) = v.get(p).cloned() {
                    vec_add_scaled(&mut v, &basis[i], &c.neg());
                }
            }
            let Some((&lead, _)) = v.iter().next() else { continue };
            debug_assert!(pivots.binary_search(&lead).is_err());
            let insert_at = pivots.binary_search(&lead).unwrap_err();
            let inv = v.get(&lead).unwrap().inv().expect("nonzero lead");
            let v = vec_scale(&v, &inv);
            for row in basis.iter_mut() {
                if let Some(c) = row.get(&lead).cloned() {
                    vec_add_scaled(row, &v, &c.neg());
                }
            }
            basis.insert(insert_at, v);
            pivots.insert(insert_at, lead);
        }
        Subspace { order, ambient, basis, pivots }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero_space(&self) -> bool {
        self.basis.is_empty()
    }

    /// Residual of `v` after reduction by the basis; zero iff `v` lies in
    /// the subspace. The dropped coefficients are the coordinates of the
    /// projection, which `coords_of` recovers.
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (i, p) in self.pivots.iter().enumerate() {
            if let Some(c) = v.get(p).cloned() {
                vec_add_scaled(&mut v, &self.basis[i], &c.neg());
            }
        }
        v
    }

    pub fn contains_vec(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vec(v))
    }

    /// Coordinates of a member vector with respect to the echelon basis.
    pub fn coords_of(&self, v: &SparseVec) -> Option<Vec<Cyclotomic>> {
        let mut v = v.clone();
        let mut coords = vec![Cyclotomic::zero(self.order); self.basis.len()];
        for (i, p) in self.pivots.iter().enumerate() {
            if let Some(c) = v.get(p).cloned() {
                coords[i] = c.clone();
                vec_add_scaled(&mut v, &self.basis[i], &c.neg());
            }
        }
        if v.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vectors: Vec<SparseVec> = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::from_vectors(self.order, self.ambient, vectors))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero_space() || other.is_zero_space() {
            return Ok(Subspace::zero(self.order, self.ambient));
        }
        // Solve Σ x_i u_i + Σ y_j v_j = 0; the u-part of each kernel vector
        // spans the intersection.
        let du = self.dim();
        let dv = other.dim();
        let mut m = SparseMatrix::zero(self.order, self.ambient, du + dv);
        for (j, u) in self.basis.iter().enumerate() {
            for (r, c) in u {
                m.add_entry(*r, j, c.clone())?;
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (r, c) in v {
                m.add_entry(*r, du + j, c.clone())?;
            }
        }
        let ker = m.kernel();
        let mut vectors = Vec::new();
        for kv in ker.basis() {
            let mut w = SparseVec::new();
            for (idx, coeff) in kv {
                if *idx < du {
                    vec_add_scaled(&mut w, &self.basis[*idx], coeff);
                }
            }
            vectors.push(w);
        }
        Ok(Subspace::from_vectors(self.order, self.ambient, vectors))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspace ambients {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    /// Quotient by a contained subspace.
    pub fn quotient_by(&self, v: &Subspace) -> Result<Quotient> {
        self.check_compatible(v)?;
        if !self.contains(v) {
            return Err(Error::ContainmentViolation(
                "quotient requires the denominator to be contained in the numerator".into(),
            ));
        }
        // Coordinates of V's basis inside U's basis, echelonized; the free
        // columns index the quotient basis.
        let du = self.dim();
        let mut rows: Vec<SparseVec> = Vec::new();
        for w in v.basis() {
            let coords = self.coords_of(w).expect("containment checked");
            let mut row = SparseVec::new();
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    row.insert(i, c);
                }
            }
            rows.push(row);
        }
        let reducer = Subspace::from_vectors(self.order, du, rows);
        let pivot_set: BTreeSet<usize> = reducer.pivots().iter().copied().collect();
        let free: Vec<usize> = (0..du).filter(|i| !pivot_set.contains(i)).collect();
        Ok(Quotient { numerator: self.clone(), reducer, free })
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Subspace dim {} in k^{}", self.dim(), self.ambient)?;
        for (p, b) in self.pivots.iter().zip(&self.basis) {
            writeln!(f, "  pivot {p}: {b:?}")?;
        }
        Ok(())
    }
}

/// U/V for V ⊆ U, with a projection map onto canonical quotient coordinates.
pub struct Quotient {
    numerator: Subspace,
    /// Echelonized coordinates of V inside U's basis.
    reducer: Subspace,
    /// Indices into U's basis that survive as quotient coordinates.
    free: Vec<usize>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    /// Quotient coordinates of a vector of U. None if outside U.
    pub fn project_vec(&self, x: &SparseVec) -> Option<SparseVec> {
        let coords = self.numerator.coords_of(x)?;
        let mut row = SparseVec::new();
        for (i, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                row.insert(i, c);
            }
        }
        let reduced = reduce_by(&self.reducer, row);
        let mut out = SparseVec::new();
        for (slot, idx) in self.free.iter().enumerate() {
            if let Some(c) = reduced.get(idx) {
                out.insert(slot, c.clone());
            }
        }
        Some(out)
    }

    /// Image in the quotient of a subspace W with V ⊆ W ⊆ U, as a canonical
    /// subspace of the quotient coordinate space.
    pub fn project_subspace(&self, w: &Subspace) -> Option<Subspace> {
        let mut vectors = Vec::new();
        for b in w.basis() {
            vectors.push(self.project_vec(b)?);
        }
        Some(Subspace::from_vectors(self.numerator.order(), self.dim(), vectors))
    }

    /// Representative in U of the j-th quotient basis vector.
    pub fn representative(&self, j: usize) -> SparseVec {
        self.numerator.basis()[self.free[j]].clone()
    }
}

fn reduce_by(reducer: &Subspace, mut row: SparseVec) -> SparseVec {
    for (i, p) in reducer.pivots().iter().enumerate() {
        if let Some(c) = row.get(p).cloned() {
            vec_add_scaled(&mut row, &reducer.basis()[i], &c.neg());
        }
    }
    row
}

/// Matrix of the map U1/V1 → U2/V2 induced by M (requires M·U1 ⊆ U2 and
/// M·V1 ⊆ V2, which is checked).
pub fn induced_on_quotient(m: &SparseMatrix, src: &Quotient, dst: &Quotient) -> Result<SparseMatrix> {
    let mut out = SparseMatrix::zero(m.order(), dst.dim(), src.dim());
    for j in 0..src.dim() {
        let rep = src.representative(j);
        let img = m.apply(&rep);
        let Some(col) = dst.project_vec(&img) else {
            return Err(Error::ContainmentViolation(
                "induced map does not land in the target numerator".into(),
            ));
        };
        for (r, c) in col {
            out.add_entry(r, j, c)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c4(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(4, n)
    }

    fn rand_subspace(rng: &mut ChaCha8Rng, ambient: usize, gens: usize) -> Subspace {
        let mut vecs = Vec::new();
        for _ in 0..gens {
            let mut v = SparseVec::new();
            for i in 0..ambient {
                if rng.gen_bool(0.5) {
                    let x = c4(rng.gen_range(-2i64..=2));
                    if !x.is_zero() {
                        v.insert(i, x);
                    }
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(4, ambient, vecs)
    }

    #[test]
    fn axes_sum_and_intersection() {
        let u = Subspace::coordinate(4, 2, [0]);
        let v = Subspace::coordinate(4, 2, [1]);
        assert_eq!(u.sum(&v).unwrap().dim(), 2);
        assert_eq!(u.intersect(&v).unwrap().dim(), 0);
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let mut m = SparseMatrix::zero(4, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.4) {
                        m.add_entry(r, c, c4(rng.gen_range(-2i64..=2))).unwrap();
                    }
                }
            }
            let z = Subspace::zero(4, rows);
            let pre = m.preimage_of(&z).unwrap();
            assert_eq!(pre, m.kernel());
        }
    }

    #[test]
    fn grassmann_dimension_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let ambient = rng.gen_range(1..=6);
            let gu = rng.gen_range(0..=4);
            let gv = rng.gen_range(0..=4);
            let u = rand_subspace(&mut rng, ambient, gu);
            let v = rand_subspace(&mut rng, ambient, gv);
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
            assert!(s.contains(&u) && s.contains(&v));
            assert!(u.contains(&i) && v.contains(&i));
        }
    }

    /// Independent modular-arithmetic oracle for the dimension formula:
    /// reduce a random pair to F_13 (where ζ_4 ↦ 5, since 5² ≡ −1), count
    /// the intersection by brute-force enumeration and compare.
    #[test]
    fn dimension_formula_against_prime_field_enumeration() {
        const P: u64 = 13;
        const I4: u64 = 5;
        fn scalar_mod_p(c: &Cyclotomic) -> u64 {
            // value = a + b·i with small rationals; denominators invertible mod 13
            let canon = c.to_canonical_string();
            let parsed = Cyclotomic::parse(4, &canon).unwrap();
            assert_eq!(&parsed, c);
            // extract coefficients through the power basis: c = x0 + x1·ζ
            let x0 = c
                .checked_add(&c.conj())
                .unwrap()
                .scale(&num_rational::BigRational::new(1.into(), 2.into()));
            let x0 = x0.as_rational().unwrap();
            let diff = c.checked_sub(&Cyclotomic::from_rational(4, x0.clone())).unwrap();
            // diff = x1·ζ, so diff·ζ^{-1} = x1
            let x1 = diff
                .checked_mul(&Cyclotomic::root_power(4, -1))
                .unwrap()
                .as_rational()
                .unwrap();
            let to_fp = |r: &num_rational::BigRational| -> u64 {
                use num_traits::Signed;
                let p = num_bigint::BigInt::from(P);
                let num = ((r.numer() % &p) + &p) % &p;
                let den = ((r.denom() % &p) + &p) % &p;
                let num: u64 = num.try_into().unwrap();
                let den: u64 = den.try_into().unwrap();
                assert!(den != 0);
                // Fermat inverse
                let mut inv = 1u64;
                let mut base = den % P;
                let mut e = P - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        inv = inv * base % P;
                    }
                    base = base * base % P;
                    e >>= 1;
                }
                let _ = r.is_negative();
                num * inv % P
            };
            (to_fp(&x0) + I4 * to_fp(&x1)) % P
        }
        fn span_points(basis: &[Vec<u64>], ambient: usize) -> std::collections::BTreeSet<Vec<u64>> {
            let mut pts = std::collections::BTreeSet::new();
            let d = basis.len();
            let mut coeffs = vec![0u64; d];
            loop {
                let mut v = vec![0u64; ambient];
                for (c, b) in coeffs.iter().zip(basis) {
                    for (i, x) in b.iter().enumerate() {
                        v[i] = (v[i] + c * x) % P;
                    }
                }
                pts.insert(v);
                // increment
                let mut k = 0;
                loop {
                    if k == d {
                        return pts;
                    }
                    coeffs[k] += 1;
                    if coeffs[k] == P {
                        coeffs[k] = 0;
                        k += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..12 {
            let ambient = 5;
            let u = rand_subspace(&mut rng, ambient, 2);
            let v = rand_subspace(&mut rng, ambient, 2);
            let inter = u.intersect(&v).unwrap();
            let to_dense = |s: &Subspace| -> Vec<Vec<u64>> {
                s.basis()
                    .iter()
                    .map(|b| {
                        let mut row = vec![0u64; ambient];
                        for (i, c) in b {
                            row[*i] = scalar_mod_p(c);
                        }
                        row
                    })
                    .collect()
            };
            let up = span_points(&to_dense(&u), ambient);
            let vp = span_points(&to_dense(&v), ambient);
            let both: Vec<_> = up.intersection(&vp).collect();
            // |U ∩ V| = P^dim when the reduction stays faithful; small random
            // integer matrices almost never degenerate mod 13, and if they
            // do the enumerated count can only come out larger.
            let expect = (P as usize).pow(inter.dim() as u32);
            assert!(both.len() >= expect, "modular count lost dimensions");
            if both.len() == expect {
                assert_eq!(
                    u.dim() + v.dim(),
                    u.sum(&v).unwrap().dim() + inter.dim(),
                    "dimension formula vs enumeration"
                );
            }
        }
    }

    #[test]
    fn canonical_form_is_representation_equality() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let ambient = rng.gen_range(1..=5);
            let u = rand_subspace(&mut rng, ambient, 3);
            // re-span from randomly mixed generators
            let mut vecs: Vec<SparseVec> = Vec::new();
            for _ in 0..4 {
                let mut w = SparseVec::new();
                for b in u.basis() {
                    let c = c4(rng.gen_range(-2i64..=2));
                    vec_add_scaled(&mut w, b, &c);
                }
                vecs.push(w);
            }
            let v = Subspace::from_vectors(4, ambient, vecs);
            if v.dim() == u.dim() {
                assert_eq!(u, v, "same span must give identical representation");
            } else {
                assert!(u.contains(&v));
            }
        }
    }

    #[test]
    fn quotient_and_induced_map() {
        // U = k^3, V = span(e0 + e1): quotient has dim 2
        let u = Subspace::full(4, 3);
        let mut v0 = SparseVec::new();
        v0.insert(0, c4(1));
        v0.insert(1, c4(1));
        let v = Subspace::from_vectors(4, 3, vec![v0]);
        let q = u.quotient_by(&v).unwrap();
        assert_eq!(q.dim(), 2);
        // projection kills V
        for b in v.basis() {
            assert!(q.project_vec(b).unwrap().is_empty());
        }
        // quotient requires containment
        let w = Subspace::coordinate(4, 3, [2]);
        assert!(w.quotient_by(&u).is_err());
        // identity map induces an isomorphism on the quotient
        let id = SparseMatrix::identity(4, 3);
        let m = induced_on_quotient(&id, &q, &q).unwrap();
        assert_eq!(m.rank(), 2);
    }
}
