//! Degree-7 family tables, shipped as `data/families.csv`.
//!
//! One record per family representative `x^7 + f5 x^5 + .. + f1 x`:
//! `q,ordinal,f5,f4,f3,f2,f1,exceptional,reading`. Coefficients use the
//! basis form of [`Field::format`]. `reading` is `printed` when the tuple is
//! taken verbatim from the source listing and `corrected` when the printed
//! tuple was not a permutation polynomial and a reconstructed one is used.
//!
//! Fields with `q = 6 (mod 7)`, other than 13 and 27, carry no data rows:
//! their table is the single exceptional family `x^7`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, Fe, Field};
use crate::parse::parse_element;
use crate::perm::is_permutation;
use crate::poly::Poly;
use crate::preset::field_for_order;

pub const FAMILIES_CSV: &str = include_str!("../data/families.csv");

const HEADER: &str = "q,ordinal,f5,f4,f3,f2,f1,exceptional,reading";

/// Orders whose non-exceptional entries are listed in canonical form.
pub const CANONICAL_LIST_ORDERS: [usize; 7] = [11, 13, 17, 19, 23, 25, 31];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    Printed,
    Corrected,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Printed => "printed",
            Reading::Corrected => "corrected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub q: usize,
    pub ordinal: usize,
    /// `(f5, f4, f3, f2, f1)`.
    pub tuple: [Fe; 5],
    pub exceptional: bool,
    pub reading: Reading,
}

impl FamilyEntry {
    pub fn poly<'f>(&self, field: &'f Field) -> Poly<'f> {
        Poly::degree7(field, self.tuple)
    }

    pub fn format_tuple(&self, field: &Field) -> String {
        let parts: Vec<String> = self.tuple.iter().map(|&c| field.format(c)).collect();
        format!("({})", parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct FamilyTable {
    pub q: usize,
    pub entries: Vec<FamilyEntry>,
}

impl FamilyTable {
    pub fn non_exceptional(&self) -> usize {
        self.entries.iter().filter(|e| !e.exceptional).count()
    }

    pub fn exceptional(&self) -> usize {
        self.entries.iter().filter(|e| e.exceptional).count()
    }

    pub fn entry(&self, ordinal: usize) -> Option<&FamilyEntry> {
        self.entries.iter().find(|e| e.ordinal == ordinal)
    }
}

/// True for orders covered by the "only `x^7`" rule.
pub fn is_x7_rule_order(q: usize) -> bool {
    q % 7 == 6 && q != 13 && q != 27
}

pub fn parse_families(text: &str) -> Result<Vec<FamilyEntry>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        other => return Err(Error::Parse(format!("missing family header, got {:?}", other.map(|l| l.1)))),
    }
    let mut out = Vec::new();
    let mut field: Option<Field> = None;
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {}", no + 1, what));
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 9 {
            return Err(bad("expected 9 columns"));
        }
        let q: usize = cols[0].parse().map_err(|_| bad("bad order"))?;
        let ordinal: usize = cols[1].parse().map_err(|_| bad("bad ordinal"))?;
        if field.as_ref().map(|f| f.order()) != Some(q) {
            field = Some(field_for_order(q)?);
        }
        let fld = field.as_ref().unwrap();
        let mut tuple = [Fe::ZERO; 5];
        for (slot, lit) in tuple.iter_mut().zip(&cols[2..7]) {
            *slot = parse_element(fld, lit)?;
        }
        let exceptional = match cols[7] {
            "true" => true,
            "false" => false,
            _ => return Err(bad("exceptional must be true or false")),
        };
        let reading = match cols[8] {
            "printed" => Reading::Printed,
            "corrected" => Reading::Corrected,
            _ => return Err(bad("reading must be printed or corrected")),
        };
        out.push(FamilyEntry { q, ordinal, tuple, exceptional, reading });
    }
    Ok(out)
}

pub fn serialize_families(entries: &[FamilyEntry]) -> Result<String> {
    let mut out = String::from(HEADER);
    out.push('\n');
    let mut field: Option<Field> = None;
    for e in entries {
        if field.as_ref().map(|f| f.order()) != Some(e.q) {
            field = Some(field_for_order(e.q)?);
        }
        let fld = field.as_ref().unwrap();
        let coeffs: Vec<String> = e.tuple.iter().map(|&c| fld.format(c)).collect();
        out.push_str(&format!("{},{},{},{},{}\n", e.q, e.ordinal, coeffs.join(","), e.exceptional, e.reading));
    }
    Ok(out)
}

pub fn shipped_entries() -> Vec<FamilyEntry> {
    parse_families(FAMILIES_CSV).expect("shipped family file parses")
}

/// Orders with a shipped table.
pub fn table_orders() -> Vec<usize> {
    let mut qs: Vec<usize> = shipped_entries().iter().map(|e| e.q).collect();
    qs.dedup();
    qs
}

/// The family table for `q`, without validation.
pub fn family_table(q: usize) -> Result<FamilyTable> {
    let entries: Vec<FamilyEntry> = shipped_entries().into_iter().filter(|e| e.q == q).collect();
    if !entries.is_empty() {
        return Ok(FamilyTable { q, entries });
    }
    if is_x7_rule_order(q) {
        let entry = FamilyEntry { q, ordinal: 1, tuple: [Fe::ZERO; 5], exceptional: true, reading: Reading::Printed };
        return Ok(FamilyTable { q, entries: vec![entry] });
    }
    Err(Error::UnsupportedOrder(q))
}

/// Re-proves the table: every entry is a PP, ordinals run `1..=n` with the
/// non-exceptional entries first, and for the canonical lists every
/// non-exceptional entry satisfies the canonical-form criteria.
pub fn validate(table: &FamilyTable, field: &Field) -> Result<()> {
    if field.order() != table.q {
        return Err(Error::FieldMismatch);
    }
    let mut seen_exceptional = false;
    for (i, e) in table.entries.iter().enumerate() {
        let tag = format!("q={} ordinal {} {}", table.q, e.ordinal, e.format_tuple(field));
        if e.ordinal != i + 1 {
            return Err(Error::InvalidTable(format!("{}: ordinals must run 1..n", tag)));
        }
        if seen_exceptional && !e.exceptional {
            return Err(Error::InvalidTable(format!("{}: non-exceptional entry after exceptional ones", tag)));
        }
        seen_exceptional |= e.exceptional;
        if !is_permutation(&e.poly(field)) {
            return Err(Error::InvalidTable(format!("{}: not a permutation polynomial", tag)));
        }
        let canonical_list = CANONICAL_LIST_ORDERS.contains(&table.q) && gcd(table.q as u64, 7) == 1;
        if canonical_list && !e.exceptional && !crate::classify::criteria_check(&e.poly(field))? {
            return Err(Error::InvalidTable(format!("{}: fails the canonical-form criteria", tag)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_round_trips_bit_exact() {
        assert_eq!(serialize_families(&shipped_entries()).unwrap(), FAMILIES_CSV);
    }

    #[test]
    fn table_counts() {
        let counts: Vec<(usize, usize, usize)> = table_orders()
            .into_iter()
            .map(|q| {
                let t = family_table(q).unwrap();
                (q, t.non_exceptional(), t.exceptional())
            })
            .collect();
        assert_eq!(
            counts,
            vec![(11, 25, 3), (13, 14, 1), (17, 17, 3), (19, 9, 3), (23, 3, 3), (25, 3, 3), (27, 1, 1), (31, 3, 3), (49, 1, 9)]
        );
    }

    #[test]
    fn every_table_validates() {
        for q in table_orders().into_iter().chain([41, 83]) {
            let field = field_for_order(q).unwrap();
            validate(&family_table(q).unwrap(), &field).unwrap();
        }
    }

    #[test]
    fn corrupted_rows_are_rejected() {
        let field = field_for_order(17).unwrap();
        let mut table = family_table(17).unwrap();
        // the exceptional tuple as printed in the listing, which is not a PP
        table.entries[19].tuple[4] = field.from_int(11);
        assert!(matches!(validate(&table, &field), Err(Error::InvalidTable(_))));

        let field = field_for_order(13).unwrap();
        let mut table = family_table(13).unwrap();
        table.entries[0].tuple[4] = field.from_int(5);
        assert!(validate(&table, &field).is_err());

        assert!(parse_families("q,ordinal\n").is_err());
        assert!(parse_families(&format!("{}\n13,1,0,0,0,0,2,maybe,printed\n", HEADER)).is_err());
    }

    #[test]
    fn x7_rule_orders() {
        assert!(is_x7_rule_order(41) && is_x7_rule_order(83));
        assert!(!is_x7_rule_order(13) && !is_x7_rule_order(27) && !is_x7_rule_order(29));
        assert_eq!(family_table(41).unwrap().entries.len(), 1);
        assert!(matches!(family_table(29), Err(Error::UnsupportedOrder(29))));
    }
}
