//! Polynomials over a [`Field`] and the affine substitutions `a f(bx + c) + d`.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_compound, Fe, Field};

/// Polynomial with ascending coefficients; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly<'f> {
    field: &'f Field,
    coeffs: Vec<Fe>,
}

impl<'f> Poly<'f> {
    pub fn new(field: &'f Field, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_indices(field: &'f Field, indices: &[usize]) -> Result<Self> {
        let coeffs = indices.iter().map(|&i| field.elem(i)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn zero(field: &'f Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn x(field: &'f Field) -> Self {
        Poly { field, coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn monomial(field: &'f Field, coeff: Fe, degree: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = coeff;
        Poly::new(field, coeffs)
    }

    /// `x^7 + f5 x^5 + f4 x^4 + f3 x^3 + f2 x^2 + f1 x` from `(f5, f4, f3, f2, f1)`.
    pub fn degree7(field: &'f Field, tuple: [Fe; 5]) -> Self {
        let [f5, f4, f3, f2, f1] = tuple;
        Poly::new(field, vec![Fe::ZERO, f1, f2, f3, f4, f5, Fe::ZERO, Fe::ONE])
    }

    #[inline]
    pub fn field(&self) -> &'f Field {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Horner evaluation.
    #[inline]
    pub fn eval(&self, x: Fe) -> Fe {
        let f = self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn values(&self) -> Vec<Fe> {
        self.field.elements().map(|x| self.eval(x)).collect()
    }

    /// Coefficient-wise equality; errors when the fields differ.
    pub fn equal(&self, other: &Poly<'_>) -> Result<bool> {
        if !self.field.same_field(other.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.coeffs == other.coeffs)
    }

    fn add_linear(&self, c: Fe) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < 2 {
            coeffs.resize(2, Fe::ZERO);
        }
        coeffs[1] = self.field.add(coeffs[1], c);
        Poly::new(self.field, coeffs)
    }

    /// `f(x) - x`.
    pub fn sub_x(&self) -> Self {
        self.add_linear(self.field.neg(Fe::ONE))
    }

    /// `f(x) + x`.
    pub fn add_x(&self) -> Self {
        self.add_linear(Fe::ONE)
    }

    pub fn scale(&self, k: Fe) -> Self {
        Poly::new(self.field, self.coeffs.iter().map(|&c| self.field.mul(c, k)).collect())
    }

    /// The fully expanded `a f(bx + c) + d`.
    ///
    /// The coefficient of `x^k` is `a b^k sum_{i>=k} f_i C(i,k) c^(i-k)`, with
    /// the binomials reduced mod p.
    pub fn apply_transform(&self, t: &LinearTransform) -> Self {
        let f = self.field;
        let n = self.coeffs.len();
        let binom = pascal_mod(f.characteristic(), n.max(1));
        let mut cpow = Vec::with_capacity(n);
        let mut acc = Fe::ONE;
        for _ in 0..n {
            cpow.push(acc);
            acc = f.mul(acc, t.c);
        }
        let mut out = vec![Fe::ZERO; n];
        let mut bk = Fe::ONE;
        for (k, slot) in out.iter_mut().enumerate() {
            let mut s = Fe::ZERO;
            for i in k..n {
                let ci = self.coeffs[i];
                if ci.is_zero() || binom[i][k] == 0 {
                    continue;
                }
                let term = f.mul(f.mul(ci, f.from_int(binom[i][k] as i64)), cpow[i - k]);
                s = f.add(s, term);
            }
            *slot = f.mul(f.mul(t.a, bk), s);
            bk = f.mul(bk, t.b);
        }
        if out.is_empty() {
            out.push(Fe::ZERO);
        }
        out[0] = f.add(out[0], t.d);
        Poly::new(f, out)
    }

    /// Normalises a degree-7 polynomial: monic, zero constant term and, when
    /// `p != 7`, zero `x^6` coefficient (via `x -> x + c`). Returns the image
    /// and the witnessing transform.
    pub fn normalize_deg7(&self) -> Result<(Poly<'f>, LinearTransform)> {
        let f = self.field;
        if self.degree() != Some(7) {
            return Err(Error::DegreeMismatch { expected: 7, found: self.degree() });
        }
        let h7 = self.leading();
        let a = f.inv(h7)?;
        let c = if f.characteristic() == 7 {
            Fe::ZERO
        } else {
            // a(7 h7 c + h6) = 0
            let seven_h7 = f.mul(f.from_int(7), h7);
            f.neg(f.div(self.coeff(6), seven_h7)?)
        };
        let d = f.neg(f.mul(a, self.eval(c)));
        let t = LinearTransform { a, b: Fe::ONE, c, d };
        Ok((self.apply_transform(&t), t))
    }

    /// Checks the normalisation predicates: monic, `f(0) = 0` and, when the
    /// characteristic does not divide the degree, zero second coefficient.
    pub fn is_normalised(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if self.leading() != Fe::ONE || !self.coeff(0).is_zero() {
            return false;
        }
        d == 0 || d % self.field.characteristic() as usize == 0 || self.coeff(d - 1).is_zero()
    }
}

impl PartialEq for Poly<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly<'_> {}

impl Hash for Poly<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly(F_{}: {})", self.field.order(), self)
    }
}

/// Human form, highest degree first: `x^7+2x`, `(3+2t)x^5+tx`.
impl fmt::Display for Poly<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.field;
        if self.coeffs.is_empty() {
            return out.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.write_str("+")?;
            }
            first = false;
            let shown = f.format(c);
            if i == 0 {
                out.write_str(&shown)?;
                continue;
            }
            if c != Fe::ONE {
                if is_compound(f, c) {
                    write!(out, "({})", shown)?;
                } else {
                    out.write_str(&shown)?;
                }
            }
            out.write_str("x")?;
            if i > 1 {
                write!(out, "^{}", i)?;
            }
        }
        Ok(())
    }
}

/// Pascal's triangle mod p, rows `0..rows`.
pub fn pascal_mod(p: u32, rows: usize) -> Vec<Vec<u32>> {
    let mut tri: Vec<Vec<u32>> = Vec::with_capacity(rows);
    for n in 0..rows {
        let mut row = vec![0u32; n + 1];
        row[0] = 1 % p;
        row[n] = 1 % p;
        for k in 1..n {
            row[k] = (tri[n - 1][k - 1] + tri[n - 1][k]) % p;
        }
        tri.push(row);
    }
    tri
}

/// `x -> a f(bx + c) + d` with `a, b` nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearTransform {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl LinearTransform {
    pub const IDENTITY: LinearTransform = LinearTransform { a: Fe::ONE, b: Fe::ONE, c: Fe::ZERO, d: Fe::ZERO };

    pub fn new(a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LinearTransform { a, b, c, d })
    }

    /// `alpha f(beta x)`.
    pub fn scaling(alpha: Fe, beta: Fe) -> Self {
        LinearTransform { a: alpha, b: beta, c: Fe::ZERO, d: Fe::ZERO }
    }

    /// `f(x + gamma) + delta`.
    pub fn shift(gamma: Fe, delta: Fe) -> Self {
        LinearTransform { a: Fe::ONE, b: Fe::ONE, c: gamma, d: delta }
    }

    /// The transform equal to applying `self` first and `next` second.
    pub fn then(&self, next: &LinearTransform, field: &Field) -> LinearTransform {
        // next(self(f)) = a2 (a1 f(b1 (b2 x + c2) + c1) + d1) + d2
        LinearTransform {
            a: field.mul(next.a, self.a),
            b: field.mul(self.b, next.b),
            c: field.add(field.mul(self.b, next.c), self.c),
            d: field.add(field.mul(next.a, self.d), next.d),
        }
    }

    /// The transform undoing `self`.
    pub fn inverse(&self, field: &Field) -> LinearTransform {
        let ia = field.inv(self.a).expect("a is nonzero");
        let ib = field.inv(self.b).expect("b is nonzero");
        LinearTransform {
            a: ia,
            b: ib,
            c: field.neg(field.mul(self.c, ib)),
            d: field.neg(field.mul(self.d, ia)),
        }
    }

    pub fn display<'a>(&'a self, field: &'a Field) -> impl fmt::Display + 'a {
        TransformDisplay { t: self, field }
    }
}

struct TransformDisplay<'a> {
    t: &'a LinearTransform,
    field: &'a Field,
}

impl fmt::Display for TransformDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.field;
        write!(
            out,
            "(a={}, b={}, c={}, d={})",
            f.format(self.t.a),
            f.format(self.t.b),
            f.format(self.t.c),
            f.format(self.t.d)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    fn p<'f>(f: &'f Field, ix: &[usize]) -> Poly<'f> {
        Poly::from_indices(f, ix).unwrap()
    }

    #[test]
    fn trims_and_degree() {
        let f = f13();
        assert!(p(&f, &[0, 0, 0]).is_zero());
        assert_eq!(p(&f, &[1, 2, 0]).degree(), Some(1));
        assert_eq!(Poly::zero(&f).degree(), None);
    }

    #[test]
    fn eval_examples() {
        let f = f13();
        assert_eq!(Poly::x(&f).eval(Fe::from_index_unchecked(5)).index(), 5);
        let g = p(&f, &[0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g.eval(Fe::ZERO), Fe::ZERO);
        // 2^7 + 4 = 132 = 2 (mod 13)
        assert_eq!(g.eval(Fe::from_index_unchecked(2)).index(), 2);
    }

    #[test]
    fn transform_examples() {
        let f = f13();
        let g = p(&f, &[0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g.apply_transform(&LinearTransform::IDENTITY), g);
        let t = LinearTransform::scaling(f.from_int(2), f.from_int(5));
        assert_eq!(g.apply_transform(&t), p(&f, &[0, 7, 0, 0, 0, 0, 0, 3]));
        let t = LinearTransform::scaling(f.from_int(1), f.from_int(10));
        assert_eq!(g.apply_transform(&t), p(&f, &[0, 7, 0, 0, 0, 0, 0, 10]));
    }

    #[test]
    fn sub_and_add_x() {
        let f = f13();
        assert_eq!(p(&f, &[0, 2, 0, 0, 0, 0, 0, 1]).sub_x(), p(&f, &[0, 1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(p(&f, &[0, 6, 0, 0, 0, 0, 0, 1]).sub_x(), p(&f, &[0, 5, 0, 0, 0, 0, 0, 1]));
        assert_eq!(Poly::x(&f).add_x(), p(&f, &[0, 2]));
        assert!(Poly::x(&f).sub_x().is_zero());
    }

    #[test]
    fn equal_rejects_other_fields() {
        let a = f13();
        let b = Field::prime(11).unwrap();
        assert_eq!(Poly::x(&a).equal(&Poly::x(&b)), Err(Error::FieldMismatch));
        assert_eq!(Poly::x(&a).equal(&Poly::x(&a)), Ok(true));
    }

    #[test]
    fn normalize_examples() {
        let f = f13();
        let g = p(&f, &[0, 5, 0, 0, 0, 0, 0, 1]);
        let (n, t) = g.normalize_deg7().unwrap();
        assert_eq!(n, g);
        assert_eq!(t, LinearTransform::IDENTITY);
        let g = p(&f, &[0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(g.normalize_deg7().unwrap().0, g);
        assert!(matches!(p(&f, &[0, 1]).normalize_deg7(), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn normalize_round_trip() {
        let f = f13();
        let g0 = p(&f, &[0, 3, 1, 4, 0, 2, 0, 1]);
        let t0 = LinearTransform::new(f.from_int(5), f.from_int(3), f.from_int(7), f.from_int(9)).unwrap();
        let h = g0.apply_transform(&t0);
        let (g, t) = h.normalize_deg7().unwrap();
        assert!(g.is_normalised());
        assert_eq!(g.leading(), Fe::ONE);
        assert!(g.coeff(0).is_zero() && g.coeff(6).is_zero());
        assert_eq!(h.apply_transform(&t), g);
    }

    #[test]
    fn normalize_characteristic_seven_keeps_x6() {
        let f = Field::new(FieldSpec::extension(7, vec![3, 6, 1])).unwrap();
        let h = p(&f, &[4, 1, 0, 0, 0, 0, 3, 2]);
        let (g, _) = h.normalize_deg7().unwrap();
        assert_eq!(g.leading(), Fe::ONE);
        assert!(g.coeff(0).is_zero());
        assert!(!g.coeff(6).is_zero());
        assert!(g.is_normalised());
    }

    #[test]
    fn display_forms() {
        let f = f13();
        assert_eq!(p(&f, &[0, 2, 0, 0, 0, 0, 0, 1]).to_string(), "x^7+2x");
        assert_eq!(p(&f, &[5]).to_string(), "5");
        assert_eq!(Poly::zero(&f).to_string(), "0");
        let f25 = Field::new(FieldSpec::extension(5, vec![2, 4, 1])).unwrap();
        let c = f25.from_coords(&[3, 2]).unwrap();
        let g = Poly::new(&f25, vec![Fe::ZERO, f25.theta(), Fe::ZERO, c]);
        assert_eq!(g.to_string(), "(3+2t)x^3+tx");
    }

    #[test]
    fn pascal_reduces_mod_p() {
        let tri = pascal_mod(7, 8);
        assert_eq!(tri[7], vec![1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(pascal_mod(13, 8)[7][3], 35 % 13);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fields() -> Vec<Field> {
            vec![
                Field::prime(11).unwrap(),
                Field::new(FieldSpec::extension(5, vec![2, 4, 1])).unwrap(),
                Field::new(FieldSpec::extension(7, vec![3, 6, 1])).unwrap(),
                Field::new(FieldSpec::extension(3, vec![1, 2, 0, 1])).unwrap(),
            ]
        }

        proptest! {
            #[test]
            fn transform_matches_pointwise(which in 0usize..4, raw in prop::collection::vec(0usize..64, 8),
                                           a in 1usize..64, b in 1usize..64, c in 0usize..64, d in 0usize..64) {
                let fs = fields();
                let f = &fs[which];
                let q = f.order();
                let r = |v: usize| Fe::from_index_unchecked(v % q);
                let nz = |v: usize| Fe::from_index_unchecked(1 + v % (q - 1));
                let g = Poly::new(f, raw.iter().map(|&v| r(v)).collect());
                let t = LinearTransform::new(nz(a), nz(b), r(c), r(d)).unwrap();
                let h = g.apply_transform(&t);
                for x in f.elements() {
                    let expect = f.add(f.mul(t.a, g.eval(f.add(f.mul(t.b, x), t.c))), t.d);
                    prop_assert_eq!(h.eval(x), expect);
                }
            }

            #[test]
            fn composition_agrees(which in 0usize..4, raw in prop::collection::vec(0usize..64, 8),
                                  t1 in prop::array::uniform4(0usize..64), t2 in prop::array::uniform4(0usize..64)) {
                let fs = fields();
                let f = &fs[which];
                let q = f.order();
                let mk = |v: [usize; 4]| LinearTransform::new(
                    Fe::from_index_unchecked(1 + v[0] % (q - 1)),
                    Fe::from_index_unchecked(1 + v[1] % (q - 1)),
                    Fe::from_index_unchecked(v[2] % q),
                    Fe::from_index_unchecked(v[3] % q)).unwrap();
                let (t1, t2) = (mk(t1), mk(t2));
                let g = Poly::new(f, raw.iter().map(|&v| Fe::from_index_unchecked(v % q)).collect());
                prop_assert_eq!(g.apply_transform(&t1).apply_transform(&t2), g.apply_transform(&t1.then(&t2, f)));
                prop_assert_eq!(g.apply_transform(&t1).apply_transform(&t1.inverse(f)), g.clone());
                prop_assert_eq!(t1.then(&t1.inverse(f), f), LinearTransform::IDENTITY);
            }

            #[test]
            fn normalisation_predicates(which in 0usize..4, raw in prop::collection::vec(0usize..64, 7), lead in 1usize..64) {
                let fs = fields();
                let f = &fs[which];
                let q = f.order();
                let mut coeffs: Vec<Fe> = raw.iter().map(|&v| Fe::from_index_unchecked(v % q)).collect();
                coeffs.push(Fe::from_index_unchecked(1 + lead % (q - 1)));
                let h = Poly::new(f, coeffs);
                let (g, t) = h.normalize_deg7().unwrap();
                prop_assert_eq!(g.leading(), Fe::ONE);
                prop_assert!(g.coeff(0).is_zero());
                if f.characteristic() != 7 {
                    prop_assert!(g.coeff(6).is_zero());
                }
                prop_assert_eq!(h.apply_transform(&t), g);
            }
        }
    }
}
