//! Published reference values: explicit `(alpha, beta)` lists, per-system pair
//! counts and totals. Elements are written as in the listings, with `t` for
//! the field generator of the extension fields.

use crate::error::Result;
use crate::field::Field;
use crate::ops::Pair;
use crate::parse::parse_element;

/// One published pair list for a family, by ordinal.
#[derive(Clone, Copy, Debug)]
pub struct PairList {
    pub q: usize,
    pub ordinal: usize,
    pub pairs: &'static [(&'static str, &'static str)],
}

impl PairList {
    pub fn parse(&self, field: &Field) -> Result<Vec<Pair>> {
        self.pairs
            .iter()
            .map(|(a, b)| Ok(Pair { alpha: parse_element(field, a)?, beta: parse_element(field, b)? }))
            .collect()
    }
}

macro_rules! pairs {
    ($(($a:expr, $b:expr)),* $(,)?) => { &[$(($a, $b)),*] };
}

pub const PAIR_LISTS: &[PairList] = &[
    PairList { q: 11, ordinal: 6, pairs: pairs![("1","2"),("2","1"),("3","8"),("4","6"),("5","7"),("1","3"),("2","7"),("3","1"),("4","9"),("5","5")] },
    PairList { q: 11, ordinal: 7, pairs: pairs![("1","9"),("2","10"),("3","3"),("4","5"),("5","4"),("1","5"),("2","8"),("3","9"),("4","4"),("5","1")] },
    PairList { q: 11, ordinal: 14, pairs: pairs![("1","10"),("2","5"),("3","7"),("4","8"),("5","2"),("1","6"),("2","3"),("3","2"),("4","7"),("5","10")] },
    PairList { q: 11, ordinal: 15, pairs: pairs![("1","1"),("2","6"),("3","4"),("4","3"),("5","9"),("1","4"),("2","2"),("3","5"),("4","1"),("5","3")] },
    PairList { q: 11, ordinal: 27, pairs: pairs![("1","8"),("2","4"),("3","10"),("4","2"),("5","6"),("1","6"),("2","3"),("3","2"),("4","7"),("5","10")] },
    PairList { q: 11, ordinal: 28, pairs: pairs![("1","5"),("2","8"),("3","9"),("4","4"),("5","1"),("1","7"),("2","9"),("3","6"),("4","10"),("5","8")] },
    PairList { q: 13, ordinal: 1, pairs: pairs![("2","5"),("1","10"),("1","3"),("1","5"),("2","9"),("2","8"),("2","10"),("1","7")] },
    PairList { q: 13, ordinal: 2, pairs: pairs![("5","1"),("1","10"),("1","5"),("2","5"),("2","6"),("1","12"),("2","12"),("1","11")] },
    PairList { q: 13, ordinal: 3, pairs: pairs![("5","7"),("3","3"),("2","11"),("6","8"),("1","9"),("4","12")] },
    PairList { q: 13, ordinal: 4, pairs: pairs![("5","1"),("3","6"),("2","9"),("6","3"),("1","5"),("4","11")] },
    PairList { q: 13, ordinal: 5, pairs: pairs![("5","10"),("3","8"),("2","12"),("6","4"),("1","11"),("4","6")] },
    PairList { q: 13, ordinal: 15, pairs: pairs![("1","6"),("1","7"),("1","2"),("1","11")] },
    PairList { q: 17, ordinal: 4, pairs: pairs![("1","12"),("2","6"),("3","4"),("4","3"),("5","16"),("6","2"),("7","9"),("8","10")] },
    PairList { q: 17, ordinal: 5, pairs: pairs![("1","5"),("2","11"),("3","13"),("4","14"),("5","1"),("6","15"),("7","8"),("8","7")] },
    PairList { q: 19, ordinal: 1, pairs: pairs![("2","13"),("4","14"),("1","18"),("4","16"),("2","9"),("1","7"),("4","11"),("1","6"),("2","3")] },
    PairList { q: 19, ordinal: 10, pairs: pairs![("1","13"),("1","10"),("1","15")] },
    PairList {
        q: 25,
        ordinal: 1,
        pairs: pairs![
            ("4t+3","4t+2"),("t+3","3t+1"),("2t+2","t"),("2t+2","4t"),("4t+3","2t+1"),("t","2t+2"),("t","3t+3"),("2t+2","2t"),
            ("t+3","4t+3"),("t+3","t+2"),("t","4t+4"),("4t+3","t+3"),("t","t+3"),("2t+2","t"),("4t+3","2t+4"),("t+3","2"),
            ("t+3","t"),("t","3t+1"),("2t+2","3t+4"),("4t+3","4t+1"),("t+3","2t+1"),("t","2t+3"),("2t+2","2t+2"),("4t+3","1"),
            ("t+3","t+1"),("t","2t"),("2t+2","2t+3"),("4t+3","4t"),("t+3","2t+4"),("4t+3","3t+4"),("2t+2","3t"),("t","t+1"),
        ],
    },
    PairList {
        q: 25,
        ordinal: 2,
        pairs: pairs![
            ("4t+3","2t+4"),("t","4t+2"),("2t+2","t+1"),("t+3","4t+2"),("2t+2","3t+4"),("t+3","4t"),("t","t"),("4t+3","4t"),
            ("t","2t+3"),("4t+3","4"),("t+3","1"),("2t+2","4"),("t+3","t+1"),("2t+2","3t+2"),("4t+3","2t+3"),("t","t+2"),
            ("t+3","4t+1"),("2t+2","2t+4"),("4t+3","4t+4"),("4t+3","2t+2"),("t","1"),("2t+2","3t+1"),("2t+2","4t+3"),("t+3","2t+3"),
            ("t","4"),("t","2"),("4t+3","t+1"),("t+3","3t+2"),("4t+3","3t+3"),("2t+2","t+2"),("t","3"),("t+3","t+4"),
        ],
    },
    PairList {
        q: 25,
        ordinal: 3,
        pairs: pairs![
            ("t","3t+4"),("t+3","3t"),("4t+3","3"),("2t+2","t+4"),("4t+1","3t+3"),("2","t+2"),
            ("2t","4t+2"),("2t+1","4t"),("3t+1","4"),("4t+4","3t+2"),("3t+2","4t+4"),("4","3t+1"),
        ],
    },
    PairList { q: 25, ordinal: 4, pairs: pairs![("t","4t+4"),("t","3t+3"),("t","t+1"),("t","2t+2"),("t","2"),("t","4"),("t","3"),("t","1")] },
    PairList {
        q: 25,
        ordinal: 6,
        pairs: pairs![
            ("t","2t+1"),("t+3","2t"),("4t+3","2"),("2t+2","4t+1"),("4t+1","2t+2"),("2","4t+3"),
            ("2t","t+3"),("2t+1","t"),("3t+1","1"),("4t+4","2t+3"),("3t+2","t+1"),("4","2t+4"),
        ],
    },
    PairList {
        q: 49,
        ordinal: 2,
        pairs: pairs![
            ("t","4t+1"),("t","5t+1"),("t","4t+2"),("t","5"),("t","3t+6"),("t","2t+6"),("t","3t+5"),("t","2"),
            ("t","2t+2"),("t","2t+3"),("t","4t"),("t","3t+4"),("t","5t+5"),("t","5t+4"),("t","3t"),
            ("t","4t+3"),("t","4t+5"),("t","6t+3"),("t","4"),("t","t+2"),("t","3t+2"),("t","t+4"),("t","3"),
            ("t","6t+5"),("t","3t+1"),("t","6t"),("t","t+6"),("t","4t+4"),("t","4t+6"),("t","t"),("t","6t+1"),
            ("t","3t+3"),("t","2t+1"),("t","6"),("t","5t+3"),("t","t+3"),("t","5t+6"),("t","1"),("t","2t+4"),("t","6t+4"),
        ],
    },
];

/// Listed `F_25` pairs `(family, alpha, beta)` that do not give an OP.
pub const Q25_LIST_MISPRINTS: &[(usize, &str, &str)] = &[(1, "4t+3", "4t")];

/// Published pair counts per `(family, target)` system over `F_25`.
/// Systems not listed have no solutions.
pub const Q25_SYSTEM_PAIRS: &[(usize, usize, usize)] = &[
    (1, 1, 12),
    (1, 2, 16),
    (1, 4, 4),
    (2, 1, 16),
    (2, 2, 12),
    (2, 4, 4),
    (3, 6, 12),
    (3, 5, 0),
    (4, 1, 4),
    (4, 2, 4),
    (6, 3, 12),
    (6, 5, 0),
    (6, 6, 0),
];

/// Pair counts per family over `F_49`: 40 for `x^7`, 320 for each `x^7 + theta^k x`.
pub const Q49_FAMILY_PAIRS: &[(usize, usize)] = &[(2, 40), (3, 320), (4, 320), (5, 320), (6, 320), (7, 320)];

pub struct Totals {
    pub q: usize,
    pub pair_total: u64,
    pub op_total: u128,
    /// `None` where no exceptional count is published.
    pub exceptional_pairs: Option<u64>,
}

pub const TOTALS: &[Totals] = &[
    Totals { q: 11, pair_total: 60, op_total: 7260, exceptional_pairs: Some(20) },
    Totals { q: 13, pair_total: 38, op_total: 6422, exceptional_pairs: Some(4) },
    Totals { q: 17, pair_total: 16, op_total: 4624, exceptional_pairs: Some(0) },
    Totals { q: 19, pair_total: 12, op_total: 4332, exceptional_pairs: Some(3) },
    Totals { q: 23, pair_total: 0, op_total: 0, exceptional_pairs: Some(0) },
    Totals { q: 25, pair_total: 96, op_total: 60000, exceptional_pairs: Some(20) },
    Totals { q: 27, pair_total: 0, op_total: 0, exceptional_pairs: Some(0) },
    Totals { q: 31, pair_total: 0, op_total: 0, exceptional_pairs: Some(0) },
    Totals { q: 41, pair_total: 0, op_total: 0, exceptional_pairs: Some(0) },
    Totals { q: 49, pair_total: 1640, op_total: 3937640, exceptional_pairs: Some(1640) },
];

/// Exceptional OP count over `F_19` as stated in prose, in polynomials.
pub const Q19_EXCEPTIONAL_PROSE: u64 = 4;

/// Family counts `(q, non-exceptional, exceptional)`.
pub const TABLE_COUNTS: &[(usize, usize, usize)] =
    &[(11, 25, 3), (13, 14, 1), (17, 17, 3), (19, 9, 3), (23, 3, 3), (25, 3, 3), (27, 1, 1), (31, 3, 3), (49, 1, 9)];

/// Canonical degree-7 OP counts from the census.
pub const CENSUS: &[(usize, u64)] = &[(8, 0), (11, 660), (13, 494), (17, 272)];

pub fn pair_list(q: usize, ordinal: usize) -> Option<&'static PairList> {
    PAIR_LISTS.iter().find(|l| l.q == q && l.ordinal == ordinal)
}
