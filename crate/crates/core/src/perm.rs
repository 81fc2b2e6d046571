//! Direct permutation, orthomorphism and complete-mapping tests, and the
//! exhaustive census used as an independent oracle.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

/// Default census budget, in candidate polynomials.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Largest order the census kernel handles.
pub const CENSUS_MAX_ORDER: usize = 256;

#[derive(Clone, Debug)]
pub(crate) struct BitMask {
    words: Vec<u64>,
}

impl BitMask {
    pub(crate) fn new(n: usize) -> Self {
        BitMask { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub(crate) fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Sets bit `i`, returning false if it was already set.
    #[inline]
    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i >> 6, 1u64 << (i & 63));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }
}

pub fn is_permutation(f: &Poly<'_>) -> bool {
    let field = f.field();
    let mut seen = BitMask::new(field.order());
    field.elements().all(|x| seen.insert(f.eval(x).index()))
}

fn is_bijective_with_offset(f: &Poly<'_>, offset: Fe) -> bool {
    let field = f.field();
    let mut a = BitMask::new(field.order());
    let mut b = BitMask::new(field.order());
    field.elements().all(|x| {
        let v = f.eval(x);
        a.insert(v.index()) && b.insert(field.add(v, field.mul(offset, x)).index())
    })
}

/// `f` and `f - x` both permute the field.
pub fn is_orthomorphism(f: &Poly<'_>) -> bool {
    is_bijective_with_offset(f, f.field().neg(Fe::ONE))
}

/// `f` and `f + x` both permute the field.
pub fn is_complete_mapping(f: &Poly<'_>) -> bool {
    is_bijective_with_offset(f, Fe::ONE)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Pp,
    Op,
    Cpp,
}

impl Property {
    pub fn holds(self, f: &Poly<'_>) -> bool {
        match self {
            Property::Pp => is_permutation(f),
            Property::Op => is_orthomorphism(f),
            Property::Cpp => is_complete_mapping(f),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Pp => "pp",
            Property::Op => "op",
            Property::Cpp => "cpp",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pp" => Ok(Property::Pp),
            "op" => Ok(Property::Op),
            "cpp" => Ok(Property::Cpp),
            _ => Err(Error::Parse(format!("unknown property {:?}", s))),
        }
    }
}

/// Dense addition and multiplication tables, `q * q` entries each.
#[derive(Clone, Debug)]
pub struct Tables {
    pub q: usize,
    pub add: Vec<u16>,
    pub mul: Vec<u16>,
}

impl Tables {
    pub fn new(field: &Field) -> Self {
        let q = field.order();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in field.elements() {
            for b in field.elements() {
                add[a.index() * q + b.index()] = field.add(a, b).index() as u16;
                mul[a.index() * q + b.index()] = field.mul(a, b).index() as u16;
            }
        }
        Tables { q, add, mul }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }
}

/// An exhaustive count over every polynomial of exact degree `degree`.
#[derive(Clone, Copy, Debug)]
pub struct CensusQuery<'f> {
    pub field: &'f Field,
    pub degree: usize,
    /// Restrict to zero constant term.
    pub canonical_only: bool,
    pub property: Property,
}

impl CensusQuery<'_> {
    pub fn candidates(&self) -> u128 {
        let q = self.field.order() as u128;
        let free = if self.canonical_only { self.degree - 1 } else { self.degree };
        (q - 1).saturating_mul(q.saturating_pow(free as u32))
    }
}

#[derive(Clone, Copy, Debug)]
struct Digit {
    exponent: usize,
    base: usize,
    offset: usize,
}

/// Counts polynomials with the queried property.
///
/// Coefficient vectors are walked as an odometer with the constant term
/// fastest. The `x` coefficient is handled in bulk: for fixed higher terms
/// the set `S` of `a` making the polynomial a PP is found once, after which
/// `f` is an OP exactly when `a` and `a - 1` both lie in `S`.
pub fn census(query: &CensusQuery<'_>, budget: u128) -> Result<u64> {
    let field = query.field;
    let q = field.order();
    if query.degree == 0 {
        return Err(Error::InvalidSpec("census degree must be at least 1".into()));
    }
    if q > CENSUS_MAX_ORDER {
        return Err(Error::InvalidSpec(format!("census supports q <= {}", CENSUS_MAX_ORDER)));
    }
    let candidates = query.candidates();
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }

    let d = query.degree;
    let mut digits = Vec::new();
    if !query.canonical_only {
        digits.push(Digit { exponent: 0, base: q, offset: 0 });
    }
    for e in 2..d {
        digits.push(Digit { exponent: e, base: q, offset: 0 });
    }
    if d >= 2 {
        digits.push(Digit { exponent: d, base: q - 1, offset: 1 });
    }
    let outer: u64 = digits.iter().map(|g| g.base as u64).product();

    let tables = Tables::new(field);
    // pw[e][x] = x^e
    let mut pw = vec![vec![0usize; q]; d + 1];
    for x in 0..q {
        let mut acc = 1usize;
        for row in pw.iter_mut() {
            row[x] = acc;
            acc = tables.mul(acc, x);
        }
    }
    let one_offset = match query.property {
        Property::Pp => None,
        Property::Op => Some(field.neg(Fe::ONE).index()),
        Property::Cpp => Some(1),
    };
    let a_start = if d == 1 { 1 } else { 0 };

    let shards = (rayon::current_num_threads() as u64 * 16).clamp(1, outer);
    let ctx = Kernel { q, tables: &tables, pw: &pw, digits: &digits, one_offset, a_start };
    let total = (0..shards)
        .into_par_iter()
        .map(|s| {
            let lo = outer * s / shards;
            let hi = outer * (s + 1) / shards;
            ctx.run(lo, hi)
        })
        .sum();
    Ok(total)
}

struct Kernel<'a> {
    q: usize,
    tables: &'a Tables,
    pw: &'a [Vec<usize>],
    digits: &'a [Digit],
    one_offset: Option<usize>,
    a_start: usize,
}

impl Kernel<'_> {
    fn refresh(&self, partial: &mut [Vec<u16>], state: &[usize], level: usize) {
        let g = self.digits[level];
        let c = state[level] + g.offset;
        let (lower, upper) = partial.split_at_mut(level + 1);
        let dst = &mut lower[level];
        let src = &upper[0];
        for x in 0..self.q {
            let term = self.tables.mul(c, self.pw[g.exponent][x]);
            dst[x] = self.tables.add(src[x] as usize, term) as u16;
        }
    }

    fn run(&self, lo: u64, hi: u64) -> u64 {
        let q = self.q;
        let levels = self.digits.len();
        let mut state = vec![0usize; levels];
        let mut rem = lo;
        for (i, g) in self.digits.iter().enumerate() {
            state[i] = (rem % g.base as u64) as usize;
            rem /= g.base as u64;
        }
        let mut partial = vec![vec![0u16; q]; levels + 1];
        for level in (0..levels).rev() {
            self.refresh(&mut partial, &state, level);
        }
        let mut seen = BitMask::new(q);
        let mut in_s = vec![false; q];
        let mut count = 0u64;
        for _ in lo..hi {
            let base = &partial[0];
            for a in 0..q {
                seen.clear();
                let row = &self.tables.mul[a * q..(a + 1) * q];
                in_s[a] = (0..q).all(|x| {
                    let v = self.tables.add(base[x] as usize, row[x] as usize);
                    seen.insert(v)
                });
            }
            count += (self.a_start..q)
                .filter(|&a| {
                    in_s[a]
                        && match self.one_offset {
                            None => true,
                            Some(o) => in_s[self.tables.add(a, o)],
                        }
                })
                .count() as u64;

            let mut j = 0;
            while j < levels {
                state[j] += 1;
                if state[j] < self.digits[j].base {
                    break;
                }
                state[j] = 0;
                j += 1;
            }
            if j == levels {
                break;
            }
            for level in (0..=j).rev() {
                self.refresh(&mut partial, &state, level);
            }
        }
        count
    }
}

/// Reference census by plain enumeration; only for tiny spaces.
pub fn census_naive(query: &CensusQuery<'_>) -> u64 {
    let field = query.field;
    let q = field.order();
    let d = query.degree;
    let mut coeffs = vec![0usize; d + 1];
    let mut count = 0;
    loop {
        let leading_ok = coeffs[d] != 0;
        let const_ok = !query.canonical_only || coeffs[0] == 0;
        if leading_ok && const_ok {
            let f = Poly::new(field, coeffs.iter().map(|&c| Fe::from_index_unchecked(c)).collect());
            if query.property.holds(&f) {
                count += 1;
            }
        }
        let mut j = 0;
        while j <= d {
            coeffs[j] += 1;
            if coeffs[j] < q {
                break;
            }
            coeffs[j] = 0;
            j += 1;
        }
        if j > d {
            return count;
        }
    }
}
