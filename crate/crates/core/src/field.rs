//! Arithmetic over GF(p) and GF(p^ell).
//!
//! Elements are addressed by integer codes in `[0, p^ell)`: the code of
//! `c_0 + c_1 x + ... + c_{ell-1} x^{ell-1}` is `c_0 + c_1 p + ... `. For prime
//! fields the code is the residue itself. Multiplication is defined by
//! polynomial arithmetic modulo the field's modulus; for fields of order at
//! most 2^16 it goes through log/antilog tables built from that definition.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest field order for which log/antilog tables are built.
pub const TABLE_LIMIT: u32 = 1 << 16;

/// An immutable description of a finite field, cheap to clone and share.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

struct FieldInner {
    p: u32,
    ell: u32,
    order: u32,
    /// Monic modulus, coefficients low to high, length `ell + 1`.
    modulus: Vec<u32>,
    /// `p^i` for `i in 0..ell`.
    place: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Serialized view of a field: `GF(p^ell)` plus its modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub name: String,
    pub p: u32,
    pub ell: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over GF(p), low coefficient first, no trailing zeros.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // Fermat; p is prime and small.
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let dr = r.len() - 1;
            let factor = r[dr] as u64 * lead_inv % p as u64;
            let shift = dr - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = factor * bc as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-`p` digits of `index`.
    pub fn monic_from_index(mut index: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            out.push((index % p as u64) as u32);
            index /= p as u64;
        }
        out.push(1);
        out
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        if deg == 1 {
            return true;
        }
        for dg in 1..=deg / 2 {
            let count = (p as u64).pow(dg);
            for idx in 0..count {
                let g = monic_from_index(idx, dg, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// GF(p^ell) with the lexicographically least monic irreducible modulus.
    ///
    /// Candidates are ordered by the base-`p` integer formed from their lower
    /// coefficients (constant term least significant), so `GF(2)` gets `x`
    /// and `GF(4)` gets `x^2 + x + 1`.
    pub fn new(p: u32, ell: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if ell == 0 {
            return Err(Error::InvalidExtensionDegree(ell));
        }
        let order = (p as u64)
            .checked_pow(ell)
            .filter(|&o| o <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, ell })?;
        for idx in 0..order {
            let f = poly::monic_from_index(idx, ell, p);
            if poly::is_irreducible(&f, p) {
                return Self::build(p, ell, f);
            }
        }
        Err(Error::NoIrreducible { p, ell })
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// A field with an explicitly given modulus (low coefficient first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidExtensionDegree(0));
        }
        let ell = (modulus.len() - 1) as u32;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus);
        }
        if (p as u64).checked_pow(ell).filter(|&o| o <= u32::MAX as u64).is_none() {
            return Err(Error::FieldTooLarge { p, ell });
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        Self::build(p, ell, modulus)
    }

    fn build(p: u32, ell: u32, modulus: Vec<u32>) -> Result<Self> {
        let order = p.pow(ell);
        let place = (0..ell).map(|i| p.pow(i)).collect();
        let mut inner = FieldInner {
            p,
            ell,
            order,
            modulus,
            place,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if order <= TABLE_LIMIT {
            let field = FieldSpec(Arc::new(inner));
            let g = field.find_primitive();
            let mut exp = Vec::with_capacity(order as usize - 1);
            let mut log = vec![0u32; order as usize];
            let mut x = 1u32;
            for i in 0..order - 1 {
                exp.push(x);
                log[x as usize] = i;
                x = field.mul_poly(x, g);
            }
            inner = Arc::try_unwrap(field.0).ok().expect("sole owner");
            inner.exp = exp;
            inner.log = log;
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    fn find_primitive(&self) -> u32 {
        let group = (self.order() - 1) as u64;
        let factors = prime_factors(group);
        (1..self.order())
            .find(|&g| {
                factors
                    .iter()
                    .all(|&q| self.pow_poly(g, group / q) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn pow_poly(&self, base: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_poly(result, b);
            }
            b = self.mul_poly(b, b);
            e >>= 1;
        }
        result
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn ell(&self) -> u32 {
        self.0.ell
    }

    /// Field order `h = p^ell`.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.ell == 1
    }

    pub fn has_tables(&self) -> bool {
        !self.0.exp.is_empty()
    }

    pub fn name(&self) -> String {
        format!("GF({}^{})", self.0.p, self.0.ell)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            name: self.name(),
            p: self.p(),
            ell: self.ell(),
            modulus: self.modulus().to_vec(),
        }
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let field = Self::with_modulus(desc.p, desc.modulus.clone())?;
        if field.ell() != desc.ell {
            return Err(Error::InvalidExtensionDegree(desc.ell));
        }
        Ok(field)
    }

    pub fn contains(&self, code: u32) -> bool {
        code < self.order()
    }

    /// Coefficient vector of an element code, length `ell`.
    pub fn coeffs(&self, mut code: u32) -> Vec<u32> {
        let p = self.p();
        (0..self.ell())
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .zip(&self.0.place)
            .map(|(&c, &w)| (c % self.p()) * w)
            .sum()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.ell == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &w in &self.0.place {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.ell == 1 {
            return (p - a % p) % p;
        }
        let mut a = a;
        let mut out = 0;
        for &w in &self.0.place {
            out += ((p - a % p) % p) * w;
            a /= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        if inner.exp.is_empty() {
            return self.mul_poly(a, b);
        }
        let n = inner.order - 1;
        let s = inner.log[a as usize] + inner.log[b as usize];
        inner.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplication straight from the definition: polynomial product
    /// reduced modulo the modulus.
    pub fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        let mut pa = self.coeffs(a);
        let mut pb = self.coeffs(b);
        poly::trim(&mut pa);
        poly::trim(&mut pb);
        let prod = poly::mul(&pa, &pb, p);
        let r = poly::rem(&prod, &self.0.modulus, p);
        self.from_coeffs(&r)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 || a >= self.order() {
            return None;
        }
        let inner = &*self.0;
        if self.is_prime_field() {
            return Some(poly::inv_mod(a, inner.p));
        }
        if inner.exp.is_empty() {
            return Some(self.pow_poly(a, inner.order as u64 - 2));
        }
        let n = inner.order - 1;
        let l = inner.log[a as usize];
        Some(inner.exp[((n - l) % n) as usize])
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if !self.contains(code) {
            return Err(Error::SymbolOutOfRange {
                symbol: code,
                p: self.order(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            code,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code: 1,
        }
    }

    /// All `h` elements, zero first, in increasing code order.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.order())
            .map(|code| FieldElement {
                field: self.clone(),
                code,
            })
            .collect()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {:?}", self.name(), self.modulus())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = FieldDescriptor::deserialize(d)?;
        FieldSpec::from_descriptor(&desc).map_err(serde::de::Error::custom)
    }
}

/// A field element tagged with its owning field. Mixing fields is an error.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn repr(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            code: self.field.add(self.code, other.code),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            code: self.field.sub(self.code, other.code),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            code: self.field.mul(self.code, other.code),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            code: self.field.neg(self.code),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let code = self.field.inv(self.code).ok_or(Error::ZeroInverse)?;
        Ok(Self {
            field: self.field.clone(),
            code,
        })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.repr(), self.field.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_use_modulus_x() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert!(f3.is_prime_field());
    }

    #[test]
    fn gf4_modulus_is_least_irreducible() {
        // Oracle: the four monic quadratics over GF(2) and their roots.
        let candidates = [[0u32, 0], [1, 0], [0, 1], [1, 1]];
        let irreducible: Vec<_> = candidates
            .iter()
            .filter(|c| {
                (0..2u32).all(|x| (c[0] + c[1] * x + x * x) % 2 != 0)
            })
            .collect();
        assert_eq!(irreducible, vec![&[1, 1]]);
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn small_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f4 = FieldSpec::new(2, 2).unwrap();
        // omega = x has code 2; omega^2 = omega + 1 has code 3
        assert_eq!(f4.mul(2, 2), 3);
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.inv(2), Some(2));
        assert_eq!(f3.inv(0), None);
    }

    #[test]
    fn enumerate_orders() {
        for (p, ell, h) in [(2, 1, 2), (2, 2, 4), (3, 2, 9)] {
            let f = FieldSpec::new(p, ell).unwrap();
            let elems = f.enumerate();
            assert_eq!(elems.len(), h);
            assert!(elems[0].is_zero());
            assert_eq!(elems, f.enumerate());
        }
    }

    #[test]
    fn rejects_composite_and_zero_degree() {
        assert!(matches!(FieldSpec::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(
            FieldSpec::new(2, 0),
            Err(Error::InvalidExtensionDegree(0))
        ));
        assert!(matches!(
            FieldSpec::with_modulus(2, vec![1, 0, 1]),
            Err(Error::ReducibleModulus)
        ));
    }

    #[test]
    fn mixed_fields_are_errors() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let f8 = FieldSpec::new(2, 3).unwrap();
        let a = f4.element(1).unwrap();
        let b = f8.element(1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch)));
        assert!(matches!(f4.zero().inv(), Err(Error::ZeroInverse)));
        // separately constructed but identical fields are compatible
        let g4 = FieldSpec::new(2, 2).unwrap();
        assert!(a.mul(&g4.element(3).unwrap()).is_ok());
    }

    #[test]
    fn descriptor_round_trip() {
        let f = FieldSpec::new(3, 2).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("GF(3^2)"));
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    fn fields_up_to_64() -> Vec<FieldSpec> {
        let mut out = Vec::new();
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut ell = 1;
            while (p as u64).pow(ell) <= 64 {
                out.push(FieldSpec::new(p, ell).unwrap());
                ell += 1;
            }
        }
        out
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for f in fields_up_to_64() {
            for a in 0..f.order() {
                for b in 0..f.order() {
                    assert_eq!(f.mul(a, b), f.mul_poly(a, b), "{f} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms() {
        for f in fields_up_to_64() {
            let h = f.order();
            for a in 0..h {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..h {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            if h <= 16 {
                for a in 0..h {
                    for b in 0..h {
                        for c in 0..h {
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        }
                    }
                }
            }
            if h <= 9 {
                for a in 0..h {
                    for b in 0..h {
                        for c in 0..h {
                            assert_eq!(
                                f.mul(a, f.add(b, c)),
                                f.add(f.mul(a, b), f.mul(a, c))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldSpec::new(2, 17).unwrap();
        assert!(!f.has_tables());
        let a = 0x1_2345 % f.order();
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), 1);
    }
}
