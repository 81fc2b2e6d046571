//! Built-in field presets, shipped as `data/fields.csv`.
//!
//! One record per field: `q,p,r,modulus,generator` where the modulus is a
//! space-separated list of ascending coefficients and the generator is the
//! index of the pinned primitive element. Loading rebuilds each field and
//! checks that the recorded generator is the one construction picks.

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

pub const PRESETS_CSV: &str = include_str!("../data/fields.csv");

const HEADER: &str = "q,p,r,modulus,generator";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetRecord {
    pub q: usize,
    pub spec: FieldSpec,
    pub generator: usize,
}

impl PresetRecord {
    pub fn build(&self) -> Result<Field> {
        let field = Field::new(self.spec.clone())?;
        if field.order() != self.q {
            return Err(Error::InvalidSpec(format!("preset q={} builds a field of order {}", self.q, field.order())));
        }
        if field.theta().index() != self.generator {
            return Err(Error::InvalidSpec(format!(
                "preset q={} records generator {} but construction yields {}",
                self.q,
                self.generator,
                field.theta().index()
            )));
        }
        Ok(field)
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str, line: usize) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {}: bad {} {:?}", line, what, s)))
}

pub fn parse_presets(text: &str) -> Result<Vec<PresetRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        other => return Err(Error::Parse(format!("missing preset header, got {:?}", other.map(|l| l.1)))),
    }
    let mut out = Vec::new();
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            return Err(Error::Parse(format!("line {}: expected 5 columns", no + 1)));
        }
        let q = parse_num(cols[0], "order", no + 1)?;
        let p = parse_num(cols[1], "characteristic", no + 1)?;
        let r: u32 = parse_num(cols[2], "degree", no + 1)?;
        let modulus = cols[3]
            .split_whitespace()
            .map(|c| parse_num(c, "modulus coefficient", no + 1))
            .collect::<Result<Vec<u32>>>()?;
        let generator = parse_num(cols[4], "generator", no + 1)?;
        let spec = if r == 1 { FieldSpec { p, r, modulus } } else { FieldSpec::extension(p, modulus) };
        if spec.r != r {
            return Err(Error::Parse(format!("line {}: modulus degree disagrees with r", no + 1)));
        }
        out.push(PresetRecord { q, spec, generator });
    }
    Ok(out)
}

pub fn serialize_presets(records: &[PresetRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for rec in records {
        let modulus: Vec<String> = rec.spec.modulus.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            rec.q,
            rec.spec.p,
            rec.spec.r,
            modulus.join(" "),
            rec.generator
        ));
    }
    out
}

pub fn presets() -> Vec<PresetRecord> {
    parse_presets(PRESETS_CSV).expect("shipped preset file parses")
}

pub fn preset_orders() -> Vec<usize> {
    presets().iter().map(|r| r.q).collect()
}

/// Builds the preset field of order `q`.
pub fn preset(q: usize) -> Result<Field> {
    presets()
        .into_iter()
        .find(|r| r.q == q)
        .ok_or_else(|| Error::InvalidSpec(format!("no preset for q = {}", q)))?
        .build()
}

/// Preset lookup with a fallback to the prime field when `q` is prime.
pub fn field_for_order(q: usize) -> Result<Field> {
    match preset(q) {
        Ok(f) => Ok(f),
        Err(_) if q <= u32::MAX as usize && crate::field::is_prime(q as u32) => Field::prime(q as u32),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds_with_recorded_generator() {
        let recs = presets();
        assert_eq!(preset_orders(), vec![8, 11, 13, 16, 17, 19, 23, 25, 27, 31, 41, 49]);
        for rec in &recs {
            rec.build().unwrap();
        }
    }

    #[test]
    fn registry_round_trips_bit_exact() {
        assert_eq!(serialize_presets(&presets()), PRESETS_CSV);
    }

    #[test]
    fn wrong_generator_is_rejected() {
        let mut rec = presets().into_iter().find(|r| r.q == 13).unwrap();
        rec.generator = 6;
        assert!(rec.build().is_err());
    }

    #[test]
    fn fallback_to_prime_fields() {
        assert_eq!(field_for_order(83).unwrap().order(), 83);
        assert!(field_for_order(81).is_err());
    }
}
