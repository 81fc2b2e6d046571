//! The reproduction suite: every published quantity recomputed and compared.
//!
//! Each `criterion_*` function returns one [`Check`] per comparison; a
//! criterion passes when all its checks do.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::audit::{agreement_audit, AuditPlan};
use crate::classify::{canonicalize, ci_set, ck_set, solve_linear_relation, Classifier};
use crate::error::Result;
use crate::families::{family_table, table_orders};
use crate::field::{Fe, Field};
use crate::ops::{count_ops, distinct_expansions, search_all, search_pairs_direct, verify_nonexistence, Method, Pair, PairSearchResult};
use crate::parse::parse_element;
use crate::perm::{census, is_orthomorphism, CensusQuery, Property, DEFAULT_BUDGET};
use crate::poly::{LinearTransform, Poly};
use crate::preset::field_for_order;
use crate::reference::{
    pair_list, Q19_EXCEPTIONAL_PROSE, Q25_LIST_MISPRINTS, Q25_SYSTEM_PAIRS, Q49_FAMILY_PAIRS, CENSUS, PAIR_LISTS, TABLE_COUNTS, TOTALS,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(criterion: u8, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { criterion, name: name.into(), passed, detail: detail.into() }
    }

    fn error(criterion: u8, name: impl Into<String>, e: crate::Error) -> Self {
        Check::new(criterion, name, false, format!("error: {}", e))
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn field(q: usize) -> Field {
    field_for_order(q).expect("supported order has a field")
}

/// 1. Every table entry is a PP and the per-field counts match.
pub fn criterion_1() -> Vec<Check> {
    TABLE_COUNTS
        .iter()
        .map(|&(q, ne, ex)| {
            let f = field(q);
            let name = format!("q={} table", q);
            match Classifier::new(&f) {
                Ok(c) => {
                    let t = c.table();
                    let got = (t.non_exceptional(), t.exceptional());
                    Check::new(1, name, got == (ne, ex), format!("{}+{} entries, expected {}+{}", got.0, got.1, ne, ex))
                }
                Err(e) => Check::error(1, name, e),
            }
        })
        .collect()
}

/// 2. No two entries of one table are linearly related.
pub fn criterion_2() -> Vec<Check> {
    table_orders()
        .into_iter()
        .map(|q| {
            let f = field(q);
            let t = family_table(q).unwrap();
            let polys: Vec<Poly<'_>> = t.entries.iter().map(|e| e.poly(&f)).collect();
            let pairs: Vec<(usize, usize)> =
                (0..polys.len()).flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j))).collect();
            let related: Vec<(usize, usize)> = pairs
                .par_iter()
                .filter(|&&(i, j)| !solve_linear_relation(&polys[i], &polys[j]).unwrap().is_empty())
                .map(|&(i, j)| (t.entries[i].ordinal, t.entries[j].ordinal))
                .collect();
            Check::new(
                2,
                format!("q={} non-redundant", q),
                related.is_empty(),
                format!("{} entry pairs checked, related: {:?}", pairs.len(), related),
            )
        })
        .collect()
}

fn signatures_of(field: &Field, r: &PairSearchResult, pairs: &[Pair]) -> HashSet<Vec<Fe>> {
    let f = r.family.poly(field);
    pairs
        .iter()
        .map(|p| f.apply_transform(&LinearTransform::scaling(p.alpha, p.beta)).into_coeffs())
        .collect()
}

fn compare_list(field: &Field, result: &PairSearchResult, exact: bool) -> Check {
    let q = field.order();
    let ordinal = result.family.ordinal;
    let name = format!("q={} family {} pairs", q, ordinal);
    let list = pair_list(q, ordinal).expect("list exists");
    let mut listed = match list.parse(field) {
        Ok(l) => l,
        Err(e) => return Check::error(3, name, e),
    };
    let mut misprints = Vec::new();
    if !exact {
        for &(_, a, b) in Q25_LIST_MISPRINTS.iter().filter(|m| m.0 == ordinal) {
            let p = Pair { alpha: parse_element(field, a).unwrap(), beta: parse_element(field, b).unwrap() };
            listed.retain(|x| *x != p);
            misprints.push(p);
        }
    }
    let theirs = signatures_of(field, result, &listed);
    let ours: HashSet<Vec<Fe>> = result.signatures.iter().cloned().collect();
    let misprints_absent = signatures_of(field, result, &misprints).is_disjoint(&ours);
    let raw_equal = result.pair_set() == listed.iter().copied().collect();
    let passed = misprints_absent && if exact { theirs == ours } else { theirs.is_subset(&ours) };
    Check::new(
        3,
        name,
        passed,
        format!(
            "{} listed ({} distinct polynomials, {} known misprints{}), {} found; polynomial sets {}; pair sets {}",
            listed.len() + misprints.len(),
            theirs.len(),
            misprints.len(),
            if misprints_absent { "" } else { " that are OPs" },
            ours.len(),
            if theirs == ours { "equal" } else if theirs.is_subset(&ours) { "listed subset of found" } else { "differ" },
            if raw_equal { "equal" } else { "differ in representatives" },
        ),
    )
}

/// 3. Pair sets against the published lists and per-system counts.
pub fn criterion_3() -> Vec<Check> {
    let mut out = Vec::new();
    for q in [11usize, 13, 17, 19] {
        let f = field(q);
        let table = family_table(q).unwrap();
        for list in PAIR_LISTS.iter().filter(|l| l.q == q) {
            let r = search_pairs_direct(&f, table.entry(list.ordinal).unwrap());
            out.push(compare_list(&f, &r, true));
        }
        let with_pairs: Vec<usize> = table
            .entries
            .iter()
            .filter(|e| !search_pairs_direct(&f, e).pairs.is_empty())
            .map(|e| e.ordinal)
            .collect();
        let listed: Vec<usize> = PAIR_LISTS.iter().filter(|l| l.q == q).map(|l| l.ordinal).collect();
        out.push(Check::new(
            3,
            format!("q={} families with pairs", q),
            with_pairs == listed,
            format!("found {:?}, listed {:?}", with_pairs, listed),
        ));
    }

    let f25 = field(25);
    match Classifier::new(&f25) {
        Ok(c) => {
            let results = search_all(&c, Method::TableBased).unwrap();
            for &(fam, target, n) in Q25_SYSTEM_PAIRS {
                let got = results[fam - 1].systems.iter().find(|s| s.target == target).map(|s| s.pairs.len());
                out.push(Check::new(
                    3,
                    format!("q=25 family {} target {} system", fam, target),
                    got == Some(n),
                    format!("{:?} pairs, expected {}", got, n),
                ));
            }
            let unlisted: usize = results
                .iter()
                .flat_map(|r| r.systems.iter().map(move |s| (r.family.ordinal, s)))
                .filter(|(fam, s)| !Q25_SYSTEM_PAIRS.iter().any(|&(f, t, _)| f == *fam && t == s.target))
                .map(|(_, s)| s.pairs.len())
                .sum();
            out.push(Check::new(3, "q=25 unlisted systems", unlisted == 0, format!("{} pairs outside listed systems", unlisted)));
            for list in PAIR_LISTS.iter().filter(|l| l.q == 25) {
                out.push(compare_list(&f25, &results[list.ordinal - 1], false));
            }
        }
        Err(e) => out.push(Check::error(3, "q=25", e)),
    }

    let f49 = field(49);
    let table = family_table(49).unwrap();
    let results: Vec<PairSearchResult> = table.entries.iter().map(|e| search_pairs_direct(&f49, e)).collect();
    for r in &results {
        let expect = Q49_FAMILY_PAIRS.iter().find(|p| p.0 == r.family.ordinal).map(|p| p.1).unwrap_or(0);
        out.push(Check::new(
            3,
            format!("q=49 family {} pair count", r.family.ordinal),
            r.pairs.len() == expect,
            format!("{} pairs, expected {}", r.pairs.len(), expect),
        ));
    }
    out.push(compare_list(&f49, &results[1], true));
    out
}

/// 4. Pair and OP totals, exceptional sub-totals and nonexistence.
pub fn criterion_4() -> Vec<Check> {
    let mut out = Vec::new();
    for t in TOTALS {
        let f = field(t.q);
        let name = format!("q={} totals", t.q);
        let report = match count_ops(&f, Method::Direct) {
            Ok(r) => r,
            Err(e) => {
                out.push(Check::error(4, name, e));
                continue;
            }
        };
        let ok = report.pair_total == t.pair_total
            && report.op_total == t.op_total
            && t.exceptional_pairs.is_none_or(|x| x == report.exceptional_pairs);
        let mut detail = format!(
            "pairs {} (expected {}), OPs {} (expected {}), exceptional pairs {}",
            report.pair_total, t.pair_total, report.op_total, t.op_total, report.exceptional_pairs
        );
        if t.q == 19 {
            detail.push_str(&format!(
                "; the prose count of {} exceptional polynomials does not match {} exceptional pairs",
                Q19_EXCEPTIONAL_PROSE, report.exceptional_pairs
            ));
        }
        out.push(Check::new(4, name, ok, detail));
        if t.op_total == 0 {
            let v = verify_nonexistence(&f);
            out.push(Check::new(4, format!("q={} nonexistence", t.q), v == Ok(true), format!("{:?}", v)));
        }
    }
    out
}

/// 5. Direct and table-based pair searches agree family by family.
pub fn criterion_5() -> Vec<Check> {
    table_orders()
        .into_iter()
        .chain([41])
        .map(|q| {
            let f = field(q);
            let name = format!("q={} method agreement", q);
            let c = match Classifier::new(&f) {
                Ok(c) => c,
                Err(e) => return Check::error(5, name, e),
            };
            let direct = search_all(&c, Method::Direct).unwrap();
            let table = match search_all(&c, Method::TableBased) {
                Ok(t) => t,
                Err(e) => return Check::error(5, name, e),
            };
            let differ: Vec<usize> = direct
                .iter()
                .zip(&table)
                .filter(|(a, b)| a.pairs != b.pairs || a.signatures != b.signatures)
                .map(|(a, _)| a.family.ordinal)
                .collect();
            let pairs: usize = direct.iter().map(|r| r.pairs.len()).sum();
            Check::new(5, name, differ.is_empty(), format!("{} families, {} pairs, differing families {:?}", direct.len(), pairs, differ))
        })
        .collect()
}

/// 6. The shift expansion of every pair yields `pairs * q^2` distinct OPs.
pub fn criterion_6() -> Vec<Check> {
    let mut out = Vec::new();
    for q in [11usize, 13, 17, 19, 25] {
        let f = field(q);
        let report = count_ops(&f, Method::Direct).unwrap();
        let bases: Vec<Vec<Fe>> = report.per_family.iter().flat_map(|r| r.signatures.iter().cloned()).collect();
        let distinct = distinct_expansions(&f, &bases);
        out.push(Check::new(
            6,
            format!("q={} distinct expansion", q),
            distinct as u128 == report.op_total,
            format!("{} distinct of {}", distinct, report.op_total),
        ));
    }
    out.extend(criterion_6_q49());
    out
}

/// The `F_49` part of criterion 6: the full `x^7` family and every
/// twentieth pair of the other families.
pub fn criterion_6_q49() -> Vec<Check> {
    let f = field(49);
    let q2 = 49u64 * 49;
    let table = family_table(49).unwrap();
    let mut out = Vec::new();
    for e in &table.entries {
        let r = search_pairs_direct(&f, e);
        if r.pairs.is_empty() {
            continue;
        }
        let step = if e.tuple == [Fe::ZERO; 5] { 1 } else { 20 };
        let sample: Vec<Vec<Fe>> = r.signatures.iter().step_by(step).cloned().collect();
        let distinct = distinct_expansions(&f, &sample);
        let expect = sample.len() as u64 * q2;
        out.push(Check::new(
            6,
            format!("q=49 family {} distinct expansion", e.ordinal),
            distinct == expect,
            format!("{} pairs sampled, {} distinct of {}", sample.len(), distinct, expect),
        ));
    }
    out
}

/// 7. Exhaustive census counts. `deeper` adds `q = 17`.
pub fn criterion_7(deeper: bool) -> Vec<Check> {
    let orders: Vec<usize> = CENSUS.iter().map(|c| c.0).filter(|&q| deeper || q != 17).collect();
    criterion_7_orders(&orders)
}

pub fn criterion_7_orders(orders: &[usize]) -> Vec<Check> {
    CENSUS
        .iter()
        .filter(|c| orders.contains(&c.0))
        .map(|&(q, expect)| {
            let f = field(q);
            let query = CensusQuery { field: &f, degree: 7, canonical_only: true, property: Property::Op };
            let start = Instant::now();
            let got = census(&query, DEFAULT_BUDGET);
            Check::new(
                7,
                format!("q={} census", q),
                got == Ok(expect),
                format!("{:?} canonical OPs, expected {}, {:.1?}", got, expect, start.elapsed()),
            )
        })
        .collect()
}

/// Orders with a classifier: the shipped tables plus one `x^7`-rule order.
pub fn audit_orders() -> Vec<usize> {
    table_orders().into_iter().chain([41]).collect()
}

/// 8. Table classification agrees with the direct test.
pub fn criterion_8(random_samples: usize) -> Vec<Check> {
    audit_orders()
        .into_iter()
        .map(|q| {
            let f = field(q);
            let name = format!("q={} audit", q);
            let c = match Classifier::new(&f) {
                Ok(c) => c,
                Err(e) => return Check::error(8, name, e),
            };
            let plans = [
                AuditPlan::Random { samples: random_samples, seed: q as u64 },
                AuditPlan::TransformedEntries { samples: 2000, seed: q as u64 + 1 },
                AuditPlan::X7A3A1,
            ];
            let reports: Vec<_> = plans.iter().map(|p| agreement_audit(&c, p)).collect();
            let checked: u64 = reports.iter().map(|r| r.checked).sum();
            let pps: u64 = reports.iter().map(|r| r.permutations).sum();
            let bad: Vec<String> =
                reports.iter().flat_map(|r| r.disagreements.iter().chain(&r.errors).cloned()).take(5).collect();
            Check::new(8, name, bad.is_empty(), format!("{} polynomials, {} PPs, problems {:?}", checked, pps, bad))
        })
        .collect()
}

fn random_transform(rng: &mut ChaCha8Rng, q: usize) -> LinearTransform {
    let nz = |r: &mut ChaCha8Rng| Fe::from_index_unchecked(r.gen_range(1..q));
    let any = |r: &mut ChaCha8Rng| Fe::from_index_unchecked(r.gen_range(0..q));
    LinearTransform { a: nz(rng), b: nz(rng), c: any(rng), d: any(rng) }
}

fn class_constancy(f: &Field, g: &Poly<'_>, exhaustive: bool, rng: &mut ChaCha8Rng) -> Result<(u64, u64)> {
    let (base, _) = canonicalize(g)?;
    let transforms: Vec<LinearTransform> = if exhaustive {
        let mut v = Vec::new();
        for a in f.nonzero() {
            for b in f.nonzero() {
                for c in f.elements() {
                    v.push(LinearTransform { a, b, c, d: c });
                }
            }
        }
        v
    } else {
        (0..2000).map(|_| random_transform(rng, f.order())).collect()
    };
    let bad = transforms
        .par_iter()
        .filter(|t| canonicalize(&g.apply_transform(t)).map(|(c, _)| c != base).unwrap_or(true))
        .count() as u64;
    Ok((transforms.len() as u64, bad))
}

/// 9. Structural properties.
pub fn criterion_9() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in audit_orders() {
        let f = field(q);
        let bad_m: Vec<i64> =
            (-14..=60).filter(|&m| ck_set(&f, m).len() * ci_set(&f, m).len() != q - 1).collect();
        out.push(Check::new(9, format!("q={} CK/CI sizes", q), bad_m.is_empty(), format!("failing m: {:?}", bad_m)));

        if f.characteristic() != 7 {
            let table = family_table(q).unwrap();
            let e = table.entries.iter().find(|e| !e.exceptional).unwrap_or(&table.entries[0]);
            let name = format!("q={} canonical form constant on family {}", q, e.ordinal);
            match class_constancy(&f, &e.poly(&f), q <= 13, &mut rng) {
                Ok((n, bad)) => out.push(Check::new(9, name, bad == 0, format!("{} transforms, {} mismatches", n, bad))),
                Err(e) => out.push(Check::error(9, name, e)),
            }
        }

        let mut bad_pointwise = 0;
        for _ in 0..200 {
            let g = Poly::new(&f, (0..8).map(|_| Fe::from_index_unchecked(rng.gen_range(0..q))).collect());
            let t = random_transform(&mut rng, q);
            let h = g.apply_transform(&t);
            if f.elements().any(|x| h.eval(x) != f.add(f.mul(t.a, g.eval(f.add(f.mul(t.b, x), t.c))), t.d)) {
                bad_pointwise += 1;
            }
        }
        out.push(Check::new(9, format!("q={} pointwise transform identity", q), bad_pointwise == 0, format!("200 samples, {} failures", bad_pointwise)));
    }

    for q in [11usize, 13, 25] {
        let f = field(q);
        let report = count_ops(&f, Method::Direct).unwrap();
        let mut bad = 0u64;
        let mut checked = 0u64;
        for sig in report.per_family.iter().flat_map(|r| r.signatures.iter()).take(6) {
            let g = Poly::new(&f, sig.clone());
            for gamma in f.elements() {
                for delta in f.elements() {
                    checked += 1;
                    let k = g.apply_transform(&LinearTransform::shift(gamma, delta));
                    let back = k.apply_transform(&LinearTransform::shift(f.neg(gamma), f.neg(delta)));
                    if !is_orthomorphism(&k) || back != g {
                        bad += 1;
                    }
                }
            }
        }
        out.push(Check::new(9, format!("q={} shift invariance", q), bad == 0, format!("{} shifts, {} failures", checked, bad)));
    }
    out
}
