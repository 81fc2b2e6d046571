//! Small finite fields `F_q`, `q = p^r`, backed by exponent/logarithm tables.
//!
//! Elements are stored as their index in the polynomial basis: the coordinate
//! vector `(c_0, .., c_{r-1})` of `c_0 + c_1 t + .. + c_{r-1} t^{r-1}` encoded as
//! `c_0 + c_1 p + .. + c_{r-1} p^{r-1}`. For prime fields the index is just the
//! residue. Index order is the total order used everywhere for iteration,
//! tie-breaking and output.
//!
//! Multiplication goes through the log tables. Addition in prime fields is a
//! modular add; in extensions it uses a Zech logarithm table so that every
//! operation is a handful of table lookups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: usize = 1 << 16;

const NO_ZECH: u32 = u32::MAX;

/// One element of a [`Field`], in index encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Wraps a raw index without range checking. Use [`Field::elem`] for
    /// checked construction.
    #[inline]
    pub const fn from_index_unchecked(index: usize) -> Fe {
        Fe(index as u16)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Serialize for Fe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.index() as u64)
    }
}

impl<'de> Deserialize<'de> for Fe {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u16::deserialize(d)?;
        Ok(Fe::from_index_unchecked(v as usize))
    }
}

/// Parameters that determine a field: characteristic, extension degree and
/// (for `r > 1`) a monic modulus given by ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub r: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, r: 1, modulus: vec![0, 1] }
    }

    /// `modulus` holds ascending coefficients and must be monic of degree `r`.
    pub fn extension(p: u32, modulus: Vec<u32>) -> Self {
        let r = modulus.len().saturating_sub(1) as u32;
        FieldSpec { p, r, modulus }
    }

    pub fn order(&self) -> Option<usize> {
        let mut q: usize = 1;
        for _ in 0..self.r {
            q = q.checked_mul(self.p as usize)?;
        }
        Some(q)
    }
}

/// A fully built finite field with a pinned generator `theta`.
///
/// Immutable after construction; share it freely across threads.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: usize,
    theta: Fe,
    exp: Vec<u16>,
    log: Vec<u16>,
    zech: Vec<u32>,
    neg: Vec<u16>,
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn modpow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Remainder of `num` modulo a monic `den` over F_p (ascending coefficients).
fn fp_poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let v = (r[shift + i] + p - (lead * c) % p) % p;
                r[shift + i] = v;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=r/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let r = modulus.len() - 1;
    for d in 1..=r / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                cand.push((k % p as usize) as u32);
                k /= p as usize;
            }
            cand.push(1);
            if fp_poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds the field described by `spec`.
    ///
    /// For `r = 1` the generator is the least primitive residue. For `r > 1` it
    /// is the root `t` of the modulus, which therefore has to be primitive.
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let p = spec.p;
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if spec.r == 0 {
            return Err(Error::InvalidSpec("extension degree must be at least 1".into()));
        }
        let q = spec
            .order()
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidSpec(format!("order {}^{} exceeds {}", p, spec.r, MAX_ORDER)))?;
        if spec.r == 1 {
            Self::build_prime(p, q)
        } else {
            Self::build_extension(spec, q)
        }
    }

    /// Convenience constructor for the prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(FieldSpec::prime(p))
    }

    fn build_prime(p: u32, q: usize) -> Result<Field> {
        let n = (p - 1) as u64;
        let factors = prime_factors(n);
        let g = (1..p as u64)
            .find(|&g| {
                n == 0 || (modpow(g, n, p as u64) == 1 && factors.iter().all(|&l| modpow(g, n / l, p as u64) != 1))
            })
            .expect("every prime field has a primitive element");
        let mut exp = Vec::with_capacity(q - 1);
        let mut x = 1u64;
        for _ in 0..q - 1 {
            exp.push(x as u16);
            x = x * g % p as u64;
        }
        let neg = (0..q).map(|a| ((q - a) % q) as u16).collect();
        Ok(Self::finish(FieldSpec::prime(p), q, Fe(g as u16), exp, neg))
    }

    fn build_extension(spec: FieldSpec, q: usize) -> Result<Field> {
        let p = spec.p;
        let r = spec.r as usize;
        let m = &spec.modulus;
        if m.len() != r + 1 || m[r] != 1 || m.iter().any(|&c| c >= p) {
            return Err(Error::InvalidSpec(format!(
                "modulus {:?} must be monic of degree {} with coefficients below {}",
                m, r, p
            )));
        }
        if !is_irreducible(m, p) {
            return Err(Error::ReducibleModulus(m.clone(), p));
        }
        let encode = |digits: &[u32]| -> usize {
            digits.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        // powers of t, reduced by the modulus
        let mut exp = Vec::with_capacity(q - 1);
        let mut cur = vec![0u32; r];
        cur[0] = 1;
        for k in 0..q - 1 {
            let idx = encode(&cur);
            if k > 0 && idx == 1 {
                return Err(Error::NonPrimitiveModulus(m.clone()));
            }
            exp.push(idx as u16);
            let top = cur[r - 1];
            for i in (1..r).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..r {
                cur[i] = (cur[i] + p - (top * m[i]) % p) % p;
            }
        }
        if encode(&cur) != 1 {
            return Err(Error::NonPrimitiveModulus(m.clone()));
        }
        let neg = (0..q)
            .map(|a| {
                let mut k = a;
                let mut out = 0usize;
                let mut place = 1usize;
                for _ in 0..r {
                    let c = k % p as usize;
                    k /= p as usize;
                    out += ((p as usize - c) % p as usize) * place;
                    place *= p as usize;
                }
                out as u16
            })
            .collect();
        let theta = Fe(p as u16);
        Ok(Self::finish(spec, q, theta, exp, neg))
    }

    fn finish(spec: FieldSpec, q: usize, theta: Fe, exp: Vec<u16>, neg: Vec<u16>) -> Field {
        let n = q - 1;
        let mut log = vec![0u16; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u16;
        }
        let mut doubled = exp.clone();
        doubled.extend_from_slice(&exp);
        let mut field = Field { spec, q, theta, exp: doubled, log, zech: Vec::new(), neg };
        let p = field.spec.p as usize;
        let digit_add = |a: usize, b: usize| -> usize {
            let (mut a, mut b, mut out, mut place) = (a, b, 0usize, 1usize);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let zech = (0..n)
            .map(|k| {
                let s = digit_add(1, field.exp[k] as usize);
                if s == 0 {
                    NO_ZECH
                } else {
                    field.log[s] as u32
                }
            })
            .collect();
        field.zech = zech;
        field
    }

    #[inline]
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.spec.r
    }

    /// The pinned generator of the multiplicative group.
    #[inline]
    pub fn theta(&self) -> Fe {
        self.theta
    }

    /// `theta^i` for `i` in `[0, q-1)`; the exponent table.
    pub fn exp_table(&self) -> &[u16] {
        &self.exp[..self.q - 1]
    }

    pub fn log_table(&self) -> &[u16] {
        &self.log
    }

    pub fn same_field(&self, other: &Field) -> bool {
        std::ptr::eq(self, other) || self.spec == other.spec
    }

    /// Checked element construction from an index.
    pub fn elem(&self, index: usize) -> Result<Fe> {
        if index < self.q {
            Ok(Fe(index as u16))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.spec.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(|i| Fe(i as u16))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(|i| Fe(i as u16))
    }

    /// `theta^k` with `k` reduced modulo `q - 1`.
    #[inline]
    pub fn theta_pow(&self, k: i64) -> Fe {
        Fe(self.exp[k.rem_euclid(self.q as i64 - 1) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.spec.r == 1 {
            let s = a.0 as u32 + b.0 as u32;
            let p = self.spec.p;
            return Fe(if s >= p { s - p } else { s } as u16);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a.0 as usize] as usize;
        let lb = self.log[b.0 as usize] as usize;
        let d = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[d] {
            NO_ZECH => Fe::ZERO,
            z => Fe(self.exp[la + z as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(Fe(self.exp[(n - self.log[a.0 as usize] as usize) % n]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; the exponent is reduced modulo `q - 1` for nonzero `a`, and
    /// `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if a.0 == 0 {
            return if e == 0 { Fe::ONE } else { Fe::ZERO };
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^e` for a signed exponent; negative powers of zero are an error.
    pub fn powi(&self, a: Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        let inv = self.inv(a)?;
        Ok(self.pow(inv, e.unsigned_abs()))
    }

    /// `i` in `[0, q-1)` with `theta^i = x`.
    pub fn dlog(&self, x: Fe) -> Result<u32> {
        if x.0 == 0 || x.index() >= self.q {
            return Err(Error::DlogOfZero);
        }
        Ok(self.log[x.0 as usize] as u32)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: Fe) -> Result<u64> {
        let l = self.dlog(x)? as u64;
        let n = (self.q - 1) as u64;
        Ok(n / gcd(l, n))
    }

    /// Basis coordinates `(c_0, .., c_{r-1})` of an element.
    pub fn coords(&self, a: Fe) -> Vec<u32> {
        let p = self.spec.p as usize;
        let mut k = a.index();
        (0..self.spec.r)
            .map(|_| {
                let c = k % p;
                k /= p;
                c as u32
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fe> {
        if coords.len() > self.spec.r as usize || coords.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::InvalidSpec(format!("bad coordinates {:?}", coords)));
        }
        let p = self.spec.p as usize;
        let idx = coords.iter().rev().fold(0usize, |acc, &c| acc * p + c as usize);
        self.elem(idx)
    }

    /// Basis-form rendering, e.g. `3+2t`, `t^2`, `4`.
    pub fn display(&self, a: Fe) -> ElemDisplay<'_> {
        ElemDisplay { field: self, elem: a }
    }

    pub fn format(&self, a: Fe) -> String {
        self.display(a).to_string()
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub struct ElemDisplay<'f> {
    field: &'f Field,
    elem: Fe,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.spec.r == 1 {
            return write!(f, "{}", self.elem.index());
        }
        let coords = self.field.coords(self.elem);
        let mut first = true;
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                _ => {
                    if c != 1 {
                        write!(f, "{}", c)?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// True when the element renders as more than one basis term, e.g. `3+2t`.
pub(crate) fn is_compound(field: &Field, a: Fe) -> bool {
    field.coords(a).iter().filter(|&&c| c != 0).count() > 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    #[test]
    fn prime_field_generator_is_least_primitive_root() {
        assert_eq!(f13().theta(), Fe(2));
        assert_eq!(Field::prime(11).unwrap().theta(), Fe(2));
        assert_eq!(Field::prime(17).unwrap().theta(), Fe(3));
        assert_eq!(Field::prime(23).unwrap().theta(), Fe(5));
        assert_eq!(Field::prime(41).unwrap().theta(), Fe(6));
        assert_eq!(Field::prime(2).unwrap().theta(), Fe(1));
    }

    #[test]
    fn f13_examples() {
        let f = f13();
        let five = f.elem(5).unwrap();
        assert_eq!(f.mul(f.inv(five).unwrap(), five), Fe::ONE);
        assert_eq!(f.pow(Fe(2), 12), Fe::ONE);
        assert_eq!(f.dlog(Fe::ONE).unwrap(), 0);
        assert_eq!(f.dlog(Fe(2)).unwrap(), 1);
        assert_eq!(f.dlog(Fe(8)).unwrap(), 3);
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.dlog(Fe::ZERO), Err(Error::DlogOfZero));
    }

    #[test]
    fn f25_theta_is_primitive() {
        let f = Field::new(FieldSpec::extension(5, vec![2, 4, 1])).unwrap();
        assert_eq!(f.order(), 25);
        assert_eq!(f.theta(), Fe(5));
        assert_eq!(f.pow(f.theta(), 24), Fe::ONE);
        for k in 1..24 {
            assert_ne!(f.pow(f.theta(), k), Fe::ONE, "theta^{k}");
        }
        // theta^2 = theta - 2
        let t = f.theta();
        assert_eq!(f.mul(t, t), f.sub(t, f.from_int(2)));
    }

    #[test]
    fn f49_builds() {
        let f = Field::new(FieldSpec::extension(7, vec![3, 6, 1])).unwrap();
        assert_eq!(f.order(), 49);
        assert_eq!(f.order_of(f.theta()).unwrap(), 48);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(15).unwrap_err(), Error::NonPrimeP(15));
        // x^2 + 1 = (x+2)(x+3) over F_5
        assert!(matches!(
            Field::new(FieldSpec::extension(5, vec![1, 0, 1])),
            Err(Error::ReducibleModulus(..))
        ));
        // x^2 + 1 is irreducible over F_3, but t has order 4 < 8
        assert!(matches!(
            Field::new(FieldSpec::extension(3, vec![1, 0, 1])),
            Err(Error::NonPrimitiveModulus(..))
        ));
        assert!(matches!(
            Field::new(FieldSpec::extension(3, vec![1, 0, 2])),
            Err(Error::InvalidSpec(..))
        ));
    }

    fn all_fields() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(7).unwrap(),
            f13(),
            Field::new(FieldSpec::extension(2, vec![1, 1, 0, 1])).unwrap(),
            Field::new(FieldSpec::extension(3, vec![1, 2, 0, 1])).unwrap(),
            Field::new(FieldSpec::extension(5, vec![2, 4, 1])).unwrap(),
            Field::new(FieldSpec::extension(7, vec![3, 6, 1])).unwrap(),
            Field::new(FieldSpec::extension(2, vec![1, 1, 0, 0, 1])).unwrap(),
        ]
    }

    #[test]
    fn tables_are_bijective() {
        for f in all_fields() {
            let exp = f.exp_table();
            let mut seen = vec![false; f.order()];
            for &e in exp {
                assert!(e != 0 && !seen[e as usize]);
                seen[e as usize] = true;
            }
            for x in f.nonzero() {
                assert_eq!(f.exp_table()[f.dlog(x).unwrap() as usize], x.0);
            }
        }
    }

    #[test]
    fn field_axioms_small_fields_exhaustive() {
        for f in all_fields().into_iter().filter(|f| f.order() <= 13) {
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order() as u64), a);
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn extension_addition_matches_coordinates() {
        for f in all_fields().into_iter().filter(|f| f.degree() > 1) {
            let p = f.characteristic();
            for a in f.elements() {
                for b in f.elements() {
                    let sum: Vec<u32> =
                        f.coords(a).iter().zip(f.coords(b)).map(|(x, y)| (x + y) % p).collect();
                    assert_eq!(f.add(a, b), f.from_coords(&sum).unwrap());
                }
            }
        }
    }

    #[test]
    fn display_basis_form() {
        let f = Field::new(FieldSpec::extension(5, vec![2, 4, 1])).unwrap();
        assert_eq!(f.format(Fe::ZERO), "0");
        assert_eq!(f.format(Fe(3)), "3");
        assert_eq!(f.format(f.theta()), "t");
        assert_eq!(f.format(f.from_coords(&[3, 2]).unwrap()), "3+2t");
        assert_eq!(f.format(f.from_coords(&[0, 4]).unwrap()), "4t");
        assert!(is_compound(&f, f.from_coords(&[1, 1]).unwrap()));
    }

    #[test]
    fn powi_negative() {
        let f = f13();
        assert_eq!(f.powi(Fe(2), -1).unwrap(), Fe(7));
        assert_eq!(f.powi(Fe::ZERO, -1), Err(Error::DivisionByZero));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_triples_f49(a in 0usize..49, b in 0usize..49, c in 0usize..49) {
                let f = Field::new(FieldSpec::extension(7, vec![3, 6, 1])).unwrap();
                let (a, b, c) = (Fe(a as u16), Fe(b as u16), Fe(c as u16));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }

            #[test]
            fn fermat_prime_fields(p in prop::sample::select(vec![11u32, 17, 19, 23, 31, 41, 251]), a in 0u64..1000) {
                let f = Field::prime(p).unwrap();
                let x = f.from_int(a as i64);
                prop_assert_eq!(f.pow(x, p as u64), x);
            }
        }
    }
}
