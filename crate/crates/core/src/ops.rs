//! Orthomorphism enumeration over the family tables.
//!
//! Every member of a family's linear class that could be an OP is a shift
//! `g(x + gamma) + delta` of some `g = alpha f(beta x)`, and shifting preserves
//! the OP property. So a family is settled by the pairs `(alpha, beta)` alone,
//! and the OP count of a field is `pairs * q^2`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::families::{family_table, is_x7_rule_order, FamilyEntry, FamilyTable};
use crate::field::{Fe, Field};
use crate::perm::is_orthomorphism;
use crate::poly::{LinearTransform, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    TableBased,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::TableBased => "table_based",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "table" | "table_based" | "table-based" => Ok(Method::TableBased),
            _ => Err(Error::Parse(format!("unknown method {:?}", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub alpha: Fe,
    pub beta: Fe,
}

/// One coefficient-matching system: `alpha f(beta x) - x = a F(bx + c) + d`
/// for a fixed target family `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemRecord {
    pub target: usize,
    /// Number of solutions `(a, b, c, d, alpha, beta)`.
    pub solutions: u64,
    /// Distinct pairs produced by this system, deduplicated by signature.
    pub pairs: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSearchResult {
    pub family: FamilyEntry,
    pub method: Method,
    pub pairs: Vec<Pair>,
    /// Coefficients of `alpha f(beta x)`, parallel to `pairs`.
    pub signatures: Vec<Vec<Fe>>,
    /// Per-target breakdown; empty for the direct method.
    pub systems: Vec<SystemRecord>,
}

impl PairSearchResult {
    pub fn pair_set(&self) -> HashSet<Pair> {
        self.pairs.iter().copied().collect()
    }
}

fn signature(field: &Field, f: &[Fe], p: Pair) -> Vec<Fe> {
    let mut bp = p.alpha;
    let mut out: Vec<Fe> = f
        .iter()
        .map(|&c| {
            let v = field.mul(c, bp);
            bp = field.mul(bp, p.beta);
            v
        })
        .collect();
    while out.last() == Some(&Fe::ZERO) {
        out.pop();
    }
    out
}

/// Keeps the smallest pair per signature; `pairs` must be sorted.
fn dedup(field: &Field, f: &[Fe], pairs: impl IntoIterator<Item = Pair>) -> (Vec<Pair>, Vec<Vec<Fe>>) {
    let mut seen = HashSet::new();
    let mut out = (Vec::new(), Vec::new());
    for p in pairs {
        let sig = signature(field, f, p);
        if seen.insert(sig.clone()) {
            out.0.push(p);
            out.1.push(sig);
        }
    }
    out
}

/// All pairs with `alpha f(beta x)` an OP, by direct evaluation.
pub fn search_pairs_direct(field: &Field, family: &FamilyEntry) -> PairSearchResult {
    let f = family.poly(field);
    let found: Vec<Pair> = (1..field.order())
        .into_par_iter()
        .flat_map_iter(|a| {
            let alpha = Fe::from_index_unchecked(a);
            let f = &f;
            field.nonzero().filter_map(move |beta| {
                let g = f.apply_transform(&LinearTransform::scaling(alpha, beta));
                is_orthomorphism(&g).then_some(Pair { alpha, beta })
            })
        })
        .collect();
    let (pairs, signatures) = dedup(field, f.coeffs(), found);
    PairSearchResult { family: family.clone(), method: Method::Direct, pairs, signatures, systems: Vec::new() }
}

fn support(f: &Poly<'_>) -> [bool; 4] {
    [2, 3, 4, 5].map(|i| !f.coeff(i).is_zero())
}

/// Targets `h = alpha f(beta x) - x` can be related to, and whether the
/// shift `c` has to be searched.
///
/// Since `h` has zero `x^6` and constant terms, outside characteristic 7 a
/// relation `h = a F(bx + c) + d` forces `c = d = 0`, and then `F` must share
/// the support of `f` on `x^2..x^5`. In characteristic 7 neither holds and
/// every target with every shift is tried.
fn candidate_targets<'t>(field: &Field, table: &'t FamilyTable, family: &FamilyEntry) -> (Vec<&'t FamilyEntry>, bool) {
    if field.characteristic() == 7 {
        return (table.entries.iter().collect(), true);
    }
    let s = support(&family.poly(field));
    (table.entries.iter().filter(|e| support(&e.poly(field)) == s).collect(), false)
}

/// The table-based search: for each candidate target `F`, every solution of
/// the coefficient-matching system
///
/// `alpha beta^i f_i = a k_i (i = 2..7)`, `alpha beta f_1 - 1 = a k_1`,
/// `d = -a k_0`, where `k = F(bx + c)`,
///
/// is found by running over `(b, c, beta)`; the `x^7` and `x^1` equations
/// then determine `alpha` and `a` uniquely, and the rest are checked.
pub fn search_pairs_table_based(classifier: &Classifier<'_>, family: &FamilyEntry) -> Result<PairSearchResult> {
    let field = classifier.field();
    if family.q != field.order() {
        return Err(Error::FieldMismatch);
    }
    let f = family.poly(field);
    let fc: Vec<Fe> = (0..=7).map(|i| f.coeff(i)).collect();
    let (targets, shift) = candidate_targets(field, classifier.table(), family);
    let cs: Vec<Fe> = if shift { field.elements().collect() } else { vec![Fe::ZERO] };
    let systems: Vec<(usize, u64, Vec<Pair>)> = targets
        .par_iter()
        .map(|target| {
            let tp = target.poly(field);
            let mut solutions = 0u64;
            let mut pairs = Vec::new();
            for b in field.nonzero() {
                for &c in &cs {
                    let k = tp.apply_transform(&LinearTransform { a: Fe::ONE, b, c, d: Fe::ZERO });
                    let k7 = k.coeff(7);
                    for beta in field.nonzero() {
                        // alpha = a k7 beta^-7, so every equation reads a * (k7 beta^(i-7) f_i - k_i) = rhs
                        let binv = field.inv(beta).unwrap();
                        let coef = |i: usize| {
                            let s = field.mul(k7, field.pow(binv, (7 - i) as u64));
                            field.sub(field.mul(s, fc[i]), k.coeff(i))
                        };
                        let lin = coef(1);
                        if lin.is_zero() {
                            continue;
                        }
                        // a * lin = 1
                        if (2..=6).any(|i| !coef(i).is_zero()) {
                            continue;
                        }
                        let a = field.inv(lin).unwrap();
                        let alpha = field.mul(field.mul(a, k7), field.pow(binv, 7));
                        debug_assert_eq!(field.sub(field.mul(field.mul(alpha, beta), fc[1]), Fe::ONE), field.mul(a, k.coeff(1)));
                        solutions += 1;
                        pairs.push(Pair { alpha, beta });
                    }
                }
            }
            pairs.sort();
            pairs.dedup();
            (target.ordinal, solutions, pairs)
        })
        .collect();
    let mut all: Vec<Pair> = systems.iter().flat_map(|s| s.2.iter().copied()).collect();
    all.sort();
    all.dedup();
    let (pairs, signatures) = dedup(field, f.coeffs(), all);
    let systems = systems
        .into_iter()
        .map(|(target, solutions, ps)| SystemRecord { target, solutions, pairs: dedup(field, f.coeffs(), ps).0 })
        .collect();
    Ok(PairSearchResult { family: family.clone(), method: Method::TableBased, pairs, signatures, systems })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub q: usize,
    pub method: Method,
    pub per_family: Vec<PairSearchResult>,
    pub pair_total: u64,
    /// `pair_total * q^2`.
    pub op_total: u128,
    pub exceptional_pairs: u64,
    pub exceptional_op_total: u128,
}

impl EnumerationReport {
    fn from_results(q: usize, method: Method, per_family: Vec<PairSearchResult>) -> Self {
        let q2 = (q as u128) * (q as u128);
        let pair_total: u64 = per_family.iter().map(|r| r.pairs.len() as u64).sum();
        let exceptional_pairs: u64 =
            per_family.iter().filter(|r| r.family.exceptional).map(|r| r.pairs.len() as u64).sum();
        EnumerationReport {
            q,
            method,
            per_family,
            pair_total,
            op_total: pair_total as u128 * q2,
            exceptional_pairs,
            exceptional_op_total: exceptional_pairs as u128 * q2,
        }
    }
}

pub fn search_all(classifier: &Classifier<'_>, method: Method) -> Result<Vec<PairSearchResult>> {
    let field = classifier.field();
    classifier
        .table()
        .entries
        .iter()
        .map(|e| match method {
            Method::Direct => Ok(search_pairs_direct(field, e)),
            Method::TableBased => search_pairs_table_based(classifier, e),
        })
        .collect()
}

/// Pair and OP totals for the field.
pub fn count_ops(field: &Field, method: Method) -> Result<EnumerationReport> {
    let classifier = Classifier::new(field)?;
    Ok(EnumerationReport::from_results(field.order(), method, search_all(&classifier, method)?))
}

/// Every shift `g(x + gamma) + delta` of every `g` in `bases`.
pub fn expand_shifts<'f>(field: &'f Field, bases: Vec<Vec<Fe>>) -> impl Iterator<Item = Poly<'f>> + 'f {
    bases.into_iter().flat_map(move |b| {
        let g = Poly::new(field, b);
        field.elements().flat_map(move |gamma| {
            let k = g.apply_transform(&LinearTransform::shift(gamma, Fe::ZERO));
            field.elements().map(move |delta| {
                let mut c = k.coeffs().to_vec();
                if c.is_empty() {
                    c.push(Fe::ZERO);
                }
                c[0] = field.add(c[0], delta);
                Poly::new(field, c)
            })
        })
    })
}

/// The stream of OPs behind a report, family by family and pair by pair.
pub fn enumerate_ops<'f>(field: &'f Field, report: &EnumerationReport) -> impl Iterator<Item = Poly<'f>> + 'f {
    let bases = report.per_family.iter().flat_map(|r| r.signatures.iter().cloned()).collect();
    expand_shifts(field, bases)
}

/// Number of distinct coefficient vectors among all shifts of `bases`.
pub fn distinct_expansions(field: &Field, bases: &[Vec<Fe>]) -> u64 {
    let set: HashSet<Vec<Fe>> = expand_shifts(field, bases.to_vec()).map(|p| p.into_coeffs()).collect();
    set.len() as u64
}

/// Runs the direct pair search over the field's table and reports whether
/// every pair set is empty.
pub fn verify_nonexistence(field: &Field) -> Result<bool> {
    let q = field.order();
    if ![23, 27, 31].contains(&q) && !is_x7_rule_order(q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let table = family_table(q)?;
    Ok(table.entries.iter().all(|e| search_pairs_direct(field, e).pairs.is_empty()))
}

/// Pair sets keyed by the family ordinal.
pub fn pairs_by_ordinal(results: &[PairSearchResult]) -> HashMap<usize, HashSet<Pair>> {
    results.iter().map(|r| (r.family.ordinal, r.pair_set())).collect()
}
