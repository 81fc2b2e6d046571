//! Cross-validation of table-based classification against direct testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::Classifier;
use crate::field::{Fe, Field};
use crate::perm::is_permutation;
use crate::poly::{LinearTransform, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "plan", rename_all = "snake_case")]
pub enum AuditPlan {
    /// Uniform degree-7 polynomials.
    Random { samples: usize, seed: u64 },
    /// Table entries under uniform random transforms.
    TransformedEntries { samples: usize, seed: u64 },
    /// Every `x^7 + a3 x^3 + a1 x`.
    X7A3A1,
    /// Every monic zero-constant degree-7 polynomial with at most
    /// `max_terms` nonzero coefficients below `x^7`.
    LowWeight { max_terms: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub q: usize,
    pub checked: u64,
    pub permutations: u64,
    /// Coefficient vectors where the two tests disagree.
    pub disagreements: Vec<String>,
    /// Inputs where classification returned an error.
    pub errors: Vec<String>,
}

impl AuditReport {
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty() && self.errors.is_empty()
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng, q: usize) -> Fe {
    Fe::from_index_unchecked(rng.gen_range(1..q))
}

fn random_elem(rng: &mut ChaCha8Rng, q: usize) -> Fe {
    Fe::from_index_unchecked(rng.gen_range(0..q))
}

fn samples(classifier: &Classifier<'_>, plan: &AuditPlan) -> Vec<Vec<Fe>> {
    let field = classifier.field();
    let q = field.order();
    match *plan {
        AuditPlan::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let mut c: Vec<Fe> = (0..7).map(|_| random_elem(&mut rng, q)).collect();
                    c.push(random_nonzero(&mut rng, q));
                    c
                })
                .collect()
        }
        AuditPlan::TransformedEntries { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let entries = &classifier.table().entries;
            (0..samples)
                .map(|_| {
                    let e = &entries[rng.gen_range(0..entries.len())];
                    let t = LinearTransform {
                        a: random_nonzero(&mut rng, q),
                        b: random_nonzero(&mut rng, q),
                        c: random_elem(&mut rng, q),
                        d: random_elem(&mut rng, q),
                    };
                    e.poly(field).apply_transform(&t).into_coeffs()
                })
                .collect()
        }
        AuditPlan::X7A3A1 => {
            let mut out = Vec::with_capacity(q * q);
            for a3 in field.elements() {
                for a1 in field.elements() {
                    out.push(vec![Fe::ZERO, a1, Fe::ZERO, a3, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]);
                }
            }
            out
        }
        AuditPlan::LowWeight { max_terms } => {
            let mut out = Vec::new();
            low_weight(field, &mut vec![Fe::ZERO; 8], 1, max_terms, &mut out);
            out
        }
    }
}

fn low_weight(field: &Field, cur: &mut Vec<Fe>, pos: usize, left: usize, out: &mut Vec<Vec<Fe>>) {
    if pos == 7 {
        let mut c = cur.clone();
        c[7] = Fe::ONE;
        out.push(c);
        return;
    }
    low_weight(field, cur, pos + 1, left, out);
    if left > 0 {
        for v in field.nonzero() {
            cur[pos] = v;
            low_weight(field, cur, pos + 1, left - 1, out);
        }
        cur[pos] = Fe::ZERO;
    }
}

/// Runs `plan` and reports every polynomial where `is_pp_by_table` and
/// `is_permutation` disagree. Results do not depend on the worker count.
pub fn agreement_audit(classifier: &Classifier<'_>, plan: &AuditPlan) -> AuditReport {
    let field = classifier.field();
    let inputs = samples(classifier, plan);
    let verdicts: Vec<(bool, Option<String>, Option<String>)> = inputs
        .par_iter()
        .map(|coeffs| {
            let h = Poly::new(field, coeffs.clone());
            let direct = is_permutation(&h);
            match classifier.is_pp_by_table(&h) {
                Ok(found) if found.is_some() == direct => (direct, None, None),
                Ok(_) => (direct, Some(h.to_string()), None),
                Err(e) => (direct, None, Some(format!("{}: {}", h, e))),
            }
        })
        .collect();
    let mut report = AuditReport { q: field.order(), checked: inputs.len() as u64, ..Default::default() };
    for (pp, dis, err) in verdicts {
        report.permutations += pp as u64;
        report.disagreements.extend(dis);
        report.errors.extend(err);
    }
    report
}
