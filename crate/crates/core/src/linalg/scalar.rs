//! Elements of ℚ(ζ_n), represented as rational polynomials in ζ_n reduced
//! modulo the n-th cyclotomic polynomial.
//!
//! The order n is fixed per value; mixing orders is an error, never an
//! implicit embedding. Coefficients are arbitrary-precision rationals in
//! lowest terms, so equality is coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Per-order reduction data: Euler phi, and the coordinates of ζ^k in the
/// power basis 1, ζ, …, ζ^{φ(n)−1} for every exponent that arithmetic or
/// conjugation can produce.
struct CycCtx {
    phi: usize,
    /// powers[k] = coordinates of ζ^k, for 0 ≤ k < max(n, 2φ−1).
    powers: Vec<Vec<BigRational>>,
}

fn ctx(order: u32) -> Arc<CycCtx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(build_ctx(order)))
        .clone()
}

fn build_ctx(order: u32) -> CycCtx {
    assert!(order >= 1, "cyclotomic order must be positive");
    let cyclo = cyclotomic_polynomial(order);
    let phi = cyclo.len() - 1;
    let max_pow = std::cmp::max(order as usize, 2 * phi.max(1) - 1);
    // x^phi ≡ −(lower coefficients of Φ_n)
    let mut top = vec![BigRational::zero(); phi];
    for i in 0..phi {
        top[i] = -BigRational::from(cyclo[i].clone());
    }
    let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(max_pow);
    for k in 0..max_pow {
        if k < phi {
            let mut v = vec![BigRational::zero(); phi];
            v[k] = BigRational::one();
            powers.push(v);
        } else {
            // multiply previous power by x and reduce the overflow term
            let prev = &powers[k - 1];
            let mut v = vec![BigRational::zero(); phi];
            for i in 1..phi {
                v[i] = prev[i - 1].clone();
            }
            let carry = prev[phi - 1].clone();
            if !carry.is_zero() {
                for i in 0..phi {
                    v[i] += &carry * &top[i];
                }
            }
            powers.push(v);
        }
    }
    if phi == 0 {
        powers.push(vec![]);
    }
    CycCtx { phi, powers }
}

/// Coefficients of Φ_n, ascending degree, monic, computed by exact division
/// of x^n − 1 by the proper cyclotomic divisors.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials, panics if not divisible. The
/// divisor is monic here so no rational arithmetic is needed.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for i in 0..=dd {
                rem[k + i] -= &c * &den[i];
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An element of ℚ(ζ_n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let phi = ctx(order).phi;
        Cyclotomic { order, coeffs: vec![BigRational::zero(); phi] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        Self::from_rational(order, BigRational::from(BigInt::from(value)))
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut s = Self::zero(order);
        if !s.coeffs.is_empty() {
            s.coeffs[0] = value;
        }
        s
    }

    pub fn from_ratio(order: u32, numer: i64, denom: i64) -> Self {
        assert!(denom != 0);
        Self::from_rational(order, BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// ζ_n^k.
    pub fn root_power(order: u32, k: i64) -> Self {
        let c = ctx(order);
        let kk = k.rem_euclid(order as i64) as usize;
        Cyclotomic { order, coeffs: c.powers[kk].clone() }
    }

    /// The imaginary unit, available whenever 4 divides the order.
    pub fn i_unit(order: u32) -> Result<Self> {
        if order % 4 != 0 {
            return Err(Error::OrderMismatch(order, 4));
        }
        Ok(Self::root_power(order, order as i64 / 4))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.order)
    }

    /// The rational value when the element lies in ℚ, else None.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let c = ctx(self.order);
        let phi = c.phi;
        if phi == 0 {
            return Ok(Self::zero(self.order));
        }
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut coeffs = vec![BigRational::zero(); phi];
        for (k, v) in conv.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if k < phi {
                coeffs[k] += v;
            } else {
                for (i, p) in c.powers[k].iter().enumerate() {
                    coeffs[i] += &v * p;
                }
            }
        }
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^{−1}; an involutive field automorphism.
    pub fn conj(&self) -> Self {
        let c = ctx(self.order);
        let n = self.order as usize;
        let mut coeffs = vec![BigRational::zero(); c.phi];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (n - k % n) % n;
            for (i, p) in c.powers[e].iter().enumerate() {
                coeffs[i] += a * p;
            }
        }
        Cyclotomic { order: self.order, coeffs }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi_poly: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .into_iter()
            .map(BigRational::from)
            .collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        // extended euclid: find u with a·u + Φ·v = gcd (a unit).
        let (mut r0, mut r1) = (phi_poly, trim(a));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (nonzero constant because Φ_n is irreducible over ℚ)
        assert_eq!(r0.len(), 1, "cyclotomic polynomial must be coprime to nonzero elements");
        let g = r0[0].clone();
        let mut out = Self::zero(self.order);
        for (k, c) in s0.iter().enumerate() {
            if !c.is_zero() {
                let term = Self::root_power(self.order, k as i64).scale(&(c / &g));
                out = out.checked_add(&term)?;
            }
        }
        // sanity in debug builds
        debug_assert!(out.checked_mul(self).unwrap().is_one());
        Ok(out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Canonical string form used by the JSON interchange format, e.g.
    /// `"2"`, `"-1/2"`, `"z"`, `"1/3*z^2"`, `"1+z"`. Exact round trip.
    pub fn to_canonical_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = String::new();
            let abs = c.abs();
            let sign = c.is_negative();
            if parts.is_empty() {
                if sign {
                    term.push('-');
                }
            } else if sign {
                term.push('-');
            } else {
                term.push('+');
            }
            let coeff_str = rational_string(&abs);
            if k == 0 {
                term.push_str(&coeff_str);
            } else {
                if abs.is_one() {
                    // bare power
                } else {
                    term.push_str(&coeff_str);
                    term.push('*');
                }
                if k == 1 {
                    term.push('z');
                } else {
                    term.push_str(&format!("z^{k}"));
                }
            }
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.concat()
        }
    }

    /// Parses the canonical string form back. Accepts `i` as a synonym for
    /// the imaginary unit when the order allows it.
    pub fn parse(order: u32, input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(parse_err(0, "empty scalar"));
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut acc = Self::zero(order);
        while pos < bytes.len() {
            let mut sign = 1i64;
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            if pos >= bytes.len() {
                return Err(parse_err(pos, "dangling sign"));
            }
            let (term, next) = parse_term(order, &s, pos)?;
            let term = if sign < 0 { term.neg() } else { term };
            acc = acc.checked_add(&term)?;
            pos = next;
        }
        Ok(acc)
    }
}

fn parse_err(col: usize, msg: &str) -> Error {
    Error::Parse { line: 1, col: col + 1, msg: msg.to_string() }
}

fn parse_term(order: u32, s: &str, start: usize) -> Result<(Cyclotomic, usize)> {
    let bytes = s.as_bytes();
    let mut pos = start;
    let mut coeff = BigRational::one();
    let mut have_coeff = false;
    if pos < bytes.len() && bytes[pos].is_ascii_digit() {
        let from = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let numer: BigInt = s[from..pos].parse().map_err(|_| parse_err(from, "bad integer"))?;
        let mut denom = BigInt::one();
        if pos < bytes.len() && bytes[pos] == b'/' {
            pos += 1;
            let dfrom = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if dfrom == pos {
                return Err(parse_err(pos, "missing denominator"));
            }
            denom = s[dfrom..pos].parse().map_err(|_| parse_err(dfrom, "bad denominator"))?;
            if denom.is_zero() {
                return Err(parse_err(dfrom, "zero denominator"));
            }
        }
        coeff = BigRational::new(numer, denom);
        have_coeff = true;
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
        } else {
            return Ok((Cyclotomic::from_rational(order, coeff), pos));
        }
    }
    if pos < bytes.len() && (bytes[pos] == b'z' || bytes[pos] == b'i') {
        let is_i = bytes[pos] == b'i';
        pos += 1;
        let mut power: i64 = 1;
        if !is_i && pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let pfrom = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pfrom == pos {
                return Err(parse_err(pos, "missing exponent"));
            }
            power = s[pfrom..pos].parse().map_err(|_| parse_err(pfrom, "bad exponent"))?;
        }
        let base = if is_i {
            Cyclotomic::i_unit(order)?
        } else {
            Cyclotomic::root_power(order, power)
        };
        return Ok((base.scale(&coeff), pos));
    }
    if have_coeff {
        Err(parse_err(pos, "expected z or i after *"))
    } else {
        Err(parse_err(pos, "expected a coefficient, z, or i"))
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for i in 0..=db {
                let delta = &c * &b[i];
                rem[k + i] -= delta;
            }
        }
    }
    (trim(quot), trim(rem))
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({}; {})", self.order, self.to_canonical_string())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(order: u32, n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(order, n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_polynomial(3),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn gaussian_product() {
        // (1+i)(1−i) = 2 in ℚ(ζ_4)
        let i = Cyclotomic::i_unit(4).unwrap();
        let a = c(4, 1).checked_add(&i).unwrap();
        let b = c(4, 1).checked_sub(&i).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap(), c(4, 2));
    }

    #[test]
    fn conjugate_of_i() {
        let i = Cyclotomic::i_unit(4).unwrap();
        assert_eq!(i.conj(), i.neg());
        assert_eq!(i.conj().conj(), i);
    }

    #[test]
    fn root_of_unity_sum_vanishes() {
        // 1 + ζ_3 + ζ_3² = 0
        let z = Cyclotomic::root_power(3, 1);
        let z2 = Cyclotomic::root_power(3, 2);
        let s = c(3, 1).checked_add(&z).unwrap().checked_add(&z2).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = c(3, 1);
        let b = c(4, 1);
        assert!(matches!(a.checked_add(&b), Err(Error::OrderMismatch(3, 4))));
        assert!(matches!(a.checked_mul(&b), Err(Error::OrderMismatch(3, 4))));
    }

    #[test]
    fn invert_zero_is_an_error() {
        assert!(matches!(Cyclotomic::zero(4).inv(), Err(Error::DivisionByZero)));
    }

    fn random_scalar(rng: &mut ChaCha8Rng, order: u32) -> Cyclotomic {
        let phi = ctx(order).phi;
        let mut s = Cyclotomic::zero(order);
        for k in 0..phi {
            let numer = rng.gen_range(-4i64..=4);
            let denom = rng.gen_range(1i64..=3);
            let t = Cyclotomic::root_power(order, k as i64)
                .scale(&BigRational::new(BigInt::from(numer), BigInt::from(denom)));
            s = s.checked_add(&t).unwrap();
        }
        s
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..1000 {
            let order = [1u32, 2, 3, 4, 6, 12][trial % 6];
            let a = random_scalar(&mut rng, order);
            let b = random_scalar(&mut rng, order);
            let d = random_scalar(&mut rng, order);
            let ab_d = (&(&a * &b) * &d).clone();
            let a_bd = (&a * &(&b * &d)).clone();
            assert_eq!(ab_d, a_bd, "associativity");
            let left = &a * &(&b + &d);
            let right = &(&a * &b) + &(&a * &d);
            assert_eq!(left, right, "distributivity");
            if !a.is_zero() {
                assert!(a.checked_mul(&a.inv().unwrap()).unwrap().is_one(), "a·a⁻¹ = 1");
            }
            assert_eq!(a.conj().conj(), a, "conjugation is involutive");
            assert_eq!((&a * &b).conj(), &a.conj() * &b.conj(), "conjugation is multiplicative");
        }
    }

    #[test]
    fn canonical_string_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..200 {
            let order = [1u32, 2, 3, 4, 8, 12][trial % 6];
            let a = random_scalar(&mut rng, order);
            let s = a.to_canonical_string();
            let back = Cyclotomic::parse(order, &s).unwrap();
            assert_eq!(a, back, "round trip of {s}");
        }
        assert_eq!(Cyclotomic::parse(4, "i").unwrap(), Cyclotomic::i_unit(4).unwrap());
        assert_eq!(Cyclotomic::parse(4, "-1/2*z").unwrap().to_canonical_string(), "-1/2*z");
    }
}
