//! Canonical forms of degree-7 polynomials under linear transformation and
//! table-based permutation testing.
//!
//! For `gcd(q, 7) = 1` every normalised degree-7 polynomial has exactly one
//! image satisfying criteria (1)-(5) below; classification canonicalises and
//! looks the image up. In characteristic 7 the `x^6` term cannot be cleared,
//! so the table instead indexes every monic, zero-constant image of every
//! entry.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{family_table, validate, FamilyEntry, FamilyTable};
use crate::field::{gcd, Fe, Field};
use crate::poly::{LinearTransform, Poly};

fn coset_bound(field: &Field, m: i64) -> (u64, u64) {
    let n = field.order() as u64 - 1;
    let g = gcd(m.unsigned_abs(), n);
    (g, n / g)
}

/// `CK_q(m) = { theta^i : 0 <= i < gcd(m, q - 1) }`.
pub fn ck_set(field: &Field, m: i64) -> Vec<Fe> {
    let (g, _) = coset_bound(field, m);
    (0..g as i64).map(|i| field.theta_pow(i)).collect()
}

/// `CI_q(m) = { theta^j : 0 <= j < (q - 1) / gcd(m, q - 1) }`.
pub fn ci_set(field: &Field, m: i64) -> Vec<Fe> {
    let (_, k) = coset_bound(field, m);
    (0..k as i64).map(|j| field.theta_pow(j)).collect()
}

fn in_ck(field: &Field, x: Fe, m: i64) -> bool {
    !x.is_zero() && (field.dlog(x).unwrap() as u64) < coset_bound(field, m).0
}

fn in_ci(field: &Field, x: Fe, m: i64) -> bool {
    !x.is_zero() && (field.dlog(x).unwrap() as u64) < coset_bound(field, m).1
}

fn zero_or_ci(field: &Field, x: Fe, m: i64) -> bool {
    x.is_zero() || in_ci(field, x, m)
}

/// Largest `i` in `1..=5` with `g_i != 0`, or 0 for `x^7`.
pub fn t_index(g: &Poly<'_>) -> usize {
    (1..=5).rev().find(|&i| !g.coeff(i).is_zero()).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm<'f> {
    pub poly: Poly<'f>,
    pub t_index: usize,
}

impl CanonicalForm<'_> {
    /// `(g5, g4, g3, g2, g1)`.
    pub fn tuple(&self) -> [Fe; 5] {
        [5, 4, 3, 2, 1].map(|i| self.poly.coeff(i))
    }
}

/// Criteria (1)-(5) for a normalised degree-7 polynomial `g`:
///
/// 1. `0 != g_t` in `CK_q(7-t)` and `g_{t-1}` in `{0} u CI_q(7-t)`;
/// 2. if `7 | q` then `g_{t-1} = 0`;
/// 3. `t = 5`, `g_4 = 0` implies `g_2` in `{0} u CI_q(2)`;
/// 4. `t = 4`, `g_3 = 0` implies `g_2` in `{0} u CI_q(3)`;
/// 5. `t = 3`, `g_2 = 0`, `q = 1 (mod 4)` implies `g_1` in `{0} u CI_q(2)`.
///
/// `x^7` passes vacuously.
pub fn criteria_check(g: &Poly<'_>) -> Result<bool> {
    if g.degree() != Some(7) || !g.is_normalised() {
        return Err(Error::NotNormalised);
    }
    let f = g.field();
    let q = f.order();
    let t = t_index(g);
    if t == 0 {
        return Ok(true);
    }
    let m = 7 - t as i64;
    let (gt, gt1) = (g.coeff(t), g.coeff(t - 1));
    let ok = in_ck(f, gt, m)
        && zero_or_ci(f, gt1, m)
        && (!q.is_multiple_of(7) || gt1.is_zero())
        && !(t == 5 && g.coeff(4).is_zero() && !zero_or_ci(f, g.coeff(2), 2))
        && !(t == 4 && g.coeff(3).is_zero() && !zero_or_ci(f, g.coeff(2), 3))
        && !(t == 3 && g.coeff(2).is_zero() && q % 4 == 1 && !zero_or_ci(f, g.coeff(1), 2));
    Ok(ok)
}

fn scaled<'f>(g: &Poly<'f>, alpha: Fe, beta: Fe) -> Poly<'f> {
    let f = g.field();
    let mut bp = alpha;
    let coeffs = g
        .coeffs()
        .iter()
        .map(|&c| {
            let v = f.mul(c, bp);
            bp = f.mul(bp, beta);
            v
        })
        .collect();
    Poly::new(f, coeffs)
}

/// The unique image of `h` satisfying the criteria, with a transform `t`
/// such that `h.apply_transform(&t)` is that image.
///
/// After normalisation the only transforms preserving the normalised shape
/// are `b^-7 g(bx)`, so only `b` is searched. Every image that passes is
/// compared; two different passing images are reported as an error.
pub fn canonicalize<'f>(h: &Poly<'f>) -> Result<(CanonicalForm<'f>, LinearTransform)> {
    let f = h.field();
    if h.degree() != Some(7) {
        return Err(Error::DegreeMismatch { expected: 7, found: h.degree() });
    }
    if f.characteristic() == 7 {
        return Err(Error::CharacteristicSeven);
    }
    let (g, t0) = h.normalize_deg7()?;
    let mut found: Option<(Poly<'f>, LinearTransform)> = None;
    for b in f.nonzero() {
        let a = f.inv(f.pow(b, 7))?;
        let img = scaled(&g, a, b);
        if !criteria_check(&img)? {
            continue;
        }
        match &found {
            None => found = Some((img, t0.then(&LinearTransform::scaling(a, b), f))),
            Some((prev, _)) if *prev == img => {}
            Some((prev, _)) => {
                return Err(Error::UniquenessViolation(format!("{} and {} from {}", prev, img, h)));
            }
        }
    }
    let (poly, t) = found.ok_or_else(|| Error::NoCanonicalImage(h.to_string()))?;
    let t_index = t_index(&poly);
    Ok((CanonicalForm { poly, t_index }, t))
}

/// Every `(a, b, c, d)` with `h = a f(bx + c) + d`.
pub fn solve_linear_relation(h: &Poly<'_>, f: &Poly<'_>) -> Result<Vec<LinearTransform>> {
    let field = h.field();
    if !field.same_field(f.field()) {
        return Err(Error::FieldMismatch);
    }
    for p in [h, f] {
        if p.degree() != Some(7) {
            return Err(Error::DegreeMismatch { expected: 7, found: p.degree() });
        }
    }
    let mut out = Vec::new();
    for b in field.nonzero() {
        for c in field.elements() {
            let k = f.apply_transform(&LinearTransform { a: Fe::ONE, b, c, d: Fe::ZERO });
            let a = field.div(h.leading(), k.leading())?;
            let matches = (1..=7).all(|i| field.mul(a, k.coeff(i)) == h.coeff(i));
            if matches {
                let d = field.sub(h.coeff(0), field.mul(a, k.coeff(0)));
                out.push(LinearTransform { a, b, c, d });
            }
        }
    }
    Ok(out)
}

/// A table match: `h = transform(entry)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub entry: FamilyEntry,
    pub transform: LinearTransform,
    /// Coefficients of the image `h` was matched through.
    pub key: Vec<Fe>,
}

#[derive(Debug)]
enum Index {
    Canonical(HashMap<Vec<Fe>, (usize, LinearTransform)>),
    Orbit(HashMap<Vec<Fe>, (usize, LinearTransform)>),
}

/// A validated family table with a lookup index.
#[derive(Debug)]
pub struct Classifier<'f> {
    field: &'f Field,
    table: FamilyTable,
    index: Index,
}

impl<'f> Classifier<'f> {
    pub fn new(field: &'f Field) -> Result<Self> {
        Self::with_table(field, family_table(field.order())?)
    }

    pub fn with_table(field: &'f Field, table: FamilyTable) -> Result<Self> {
        validate(&table, field)?;
        let index = if field.characteristic() == 7 {
            let mut map: HashMap<Vec<Fe>, (usize, LinearTransform)> = HashMap::new();
            for (i, e) in table.entries.iter().enumerate() {
                let f = e.poly(field);
                for b in field.nonzero() {
                    for c in field.elements() {
                        let k = f.apply_transform(&LinearTransform { a: Fe::ONE, b, c, d: Fe::ZERO });
                        let a = field.inv(k.leading())?;
                        let d = field.neg(field.mul(a, k.coeff(0)));
                        let t = LinearTransform { a, b, c, d };
                        let img = f.apply_transform(&t);
                        if let Some(&(j, _)) = map.get(img.coeffs()) {
                            if j != i {
                                return Err(Error::InvalidTable(format!(
                                    "entries {} and {} are linearly related",
                                    table.entries[j].ordinal, e.ordinal
                                )));
                            }
                            continue;
                        }
                        map.insert(img.into_coeffs(), (i, t));
                    }
                }
            }
            Index::Orbit(map)
        } else {
            let mut map: HashMap<Vec<Fe>, (usize, LinearTransform)> = HashMap::new();
            for (i, e) in table.entries.iter().enumerate() {
                let (cf, t) = canonicalize(&e.poly(field))?;
                if let Some(&(j, _)) = map.get(cf.poly.coeffs()) {
                    return Err(Error::InvalidTable(format!(
                        "entries {} and {} share the canonical form {}",
                        table.entries[j].ordinal, e.ordinal, cf.poly
                    )));
                }
                map.insert(cf.poly.into_coeffs(), (i, t));
            }
            Index::Canonical(map)
        };
        Ok(Classifier { field, table, index })
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn table(&self) -> &FamilyTable {
        &self.table
    }

    /// The family `h` belongs to, or `None` when `h` is not a PP.
    pub fn classify(&self, h: &Poly<'_>) -> Result<Option<Classification>> {
        let f = self.field;
        if !f.same_field(h.field()) {
            return Err(Error::FieldMismatch);
        }
        if h.degree() != Some(7) {
            return Err(Error::DegreeMismatch { expected: 7, found: h.degree() });
        }
        let (key, to_key, map) = match &self.index {
            Index::Canonical(map) => {
                let (cf, t) = canonicalize(h)?;
                (cf.poly.into_coeffs(), t, map)
            }
            Index::Orbit(map) => {
                let (g, t) = h.normalize_deg7()?;
                (g.into_coeffs(), t, map)
            }
        };
        Ok(map.get(&key).map(|&(i, entry_to_key)| Classification {
            entry: self.table.entries[i].clone(),
            transform: entry_to_key.then(&to_key.inverse(f), f),
            key,
        }))
    }

    pub fn is_pp_by_table(&self, h: &Poly<'_>) -> Result<Option<&FamilyEntry>> {
        Ok(self.classify(h)?.map(|c| &self.table.entries[c.entry.ordinal - 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::perm::is_permutation;
    use crate::preset::field_for_order;

    fn idx(v: &[Fe]) -> Vec<usize> {
        v.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn ck_and_ci_examples() {
        let f13 = field_for_order(13).unwrap();
        let mut ck = idx(&ck_set(&f13, 6));
        assert_eq!(ck, vec![1, 2, 4, 8, 3, 6]);
        ck.sort();
        assert_eq!(ck, vec![1, 2, 3, 4, 6, 8]);
        assert_eq!(idx(&ck_set(&f13, 1)), vec![1]);
        assert_eq!(idx(&ci_set(&f13, 12)), vec![1]);
        assert_eq!(idx(&ci_set(&f13, 6)), vec![1, 2]);
        assert_eq!(ci_set(&f13, 1).len(), 12);
        let f11 = field_for_order(11).unwrap();
        assert_eq!(idx(&ck_set(&f11, 6)), vec![1, 2]);
    }

    #[test]
    fn criteria_examples() {
        let f = field_for_order(13).unwrap();
        assert!(!criteria_check(&parse_poly(&f, "x^7+5x").unwrap()).unwrap());
        assert!(criteria_check(&parse_poly(&f, "x^7+2x").unwrap()).unwrap());
        assert!(criteria_check(&parse_poly(&f, "x^7").unwrap()).unwrap());
        assert_eq!(criteria_check(&parse_poly(&f, "x^7+x^6").unwrap()), Err(Error::NotNormalised));
        assert_eq!(criteria_check(&parse_poly(&f, "2x^7+x").unwrap()), Err(Error::NotNormalised));
    }

    #[test]
    fn canonicalize_examples() {
        let f = field_for_order(13).unwrap();
        let g = parse_poly(&f, "x^7+2x").unwrap();
        let (cf, t) = canonicalize(&g).unwrap();
        assert_eq!(cf.poly, g);
        assert_eq!(cf.t_index, 1);
        assert_eq!(g.apply_transform(&t), g);

        let (cf, _) = canonicalize(&parse_poly(&f, "x^7+5x").unwrap()).unwrap();
        assert_eq!(cf.t_index, 1);
        assert_eq!(&cf.tuple()[..4], &[Fe::ZERO; 4]);
        assert!(ck_set(&f, 6).contains(&cf.tuple()[4]));

        let f49 = field_for_order(49).unwrap();
        assert_eq!(canonicalize(&parse_poly(&f49, "x^7+x").unwrap()).unwrap_err(), Error::CharacteristicSeven);
        assert!(matches!(canonicalize(&parse_poly(&f, "x^5").unwrap()), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn canonicalize_round_trip() {
        let f = field_for_order(13).unwrap();
        let g = parse_poly(&f, "x^7+x^4+x^3+10x^2+5x").unwrap();
        let t = LinearTransform::new(f.from_int(3), f.from_int(7), f.from_int(2), f.from_int(9)).unwrap();
        let h = g.apply_transform(&t);
        let (cf, s) = canonicalize(&h).unwrap();
        assert_eq!(cf.poly, g);
        assert_eq!(h.apply_transform(&s), g);
    }

    #[test]
    fn relation_solver() {
        let f = field_for_order(13).unwrap();
        let g = parse_poly(&f, "x^7+2x").unwrap();
        assert!(solve_linear_relation(&g, &g).unwrap().contains(&LinearTransform::IDENTITY));
        assert!(solve_linear_relation(&parse_poly(&f, "x^7+5x").unwrap(), &g).unwrap().is_empty());
        let t = LinearTransform::new(f.from_int(4), f.from_int(11), f.from_int(6), f.from_int(1)).unwrap();
        let h = g.apply_transform(&t);
        let found = solve_linear_relation(&h, &g).unwrap();
        assert!(found.contains(&t));
        assert!(found.iter().all(|s| g.apply_transform(s) == h));
    }

    #[test]
    fn table_lookup() {
        let f = field_for_order(13).unwrap();
        let c = Classifier::new(&f).unwrap();
        let e = c.is_pp_by_table(&parse_poly(&f, "x^7+6x").unwrap()).unwrap().unwrap();
        assert_eq!(e.ordinal, 2);
        assert!(c.is_pp_by_table(&parse_poly(&f, "x^7+5x").unwrap()).unwrap().is_none());

        let f19 = field_for_order(19).unwrap();
        let c = Classifier::new(&f19).unwrap();
        let e = c.is_pp_by_table(&parse_poly(&f19, "x^7").unwrap()).unwrap().unwrap();
        assert!(e.exceptional);
        assert_eq!(e.tuple, [Fe::ZERO; 5]);
    }

    #[test]
    fn classification_transform_witnesses_membership() {
        for q in [11, 25, 27, 41, 49] {
            let f = field_for_order(q).unwrap();
            let c = Classifier::new(&f).unwrap();
            for e in &c.table().entries {
                let t = LinearTransform::new(f.theta_pow(3), f.theta_pow(5), f.theta(), Fe::ONE).unwrap();
                let h = e.poly(&f).apply_transform(&t);
                let m = c.classify(&h).unwrap().unwrap();
                assert_eq!(m.entry, *e);
                assert_eq!(e.poly(&f).apply_transform(&m.transform), h);
                assert!(is_permutation(&h));
            }
        }
    }
}
