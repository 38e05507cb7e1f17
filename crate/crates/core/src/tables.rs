//! Count tables for the two-layer prefix families and comparison against
//! published reference values.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{asymmetric_cycle_count, class_size, count_second_layers, generate_sentences, SetKind, Word};

pub const CSV_HEADER: &str = "n,G,RG,S,RS,R,A";

/// Published `(n, |G|, |R(G)|, |S|, |R(S)|, |R|)` for `3 <= n <= 19`.
pub const REFERENCE_COUNTS: [(usize, u128, u64, u128, u64, u64); 17] = [
    (3, 4, 4, 2, 2, 1),
    (4, 10, 8, 4, 2, 2),
    (5, 26, 16, 10, 6, 4),
    (6, 76, 20, 28, 6, 5),
    (7, 232, 52, 70, 14, 8),
    (8, 764, 61, 230, 15, 12),
    (9, 2_620, 165, 676, 37, 22),
    (10, 9_496, 152, 2_456, 27, 21),
    (11, 35_696, 482, 7_916, 88, 48),
    (12, 140_152, 414, 31_374, 70, 50),
    (13, 568_504, 1_378, 109_856, 212, 117),
    (14, 2_390_480, 1_024, 467_716, 136, 94),
    (15, 10_349_536, 3_780, 1_759_422, 494, 262),
    (16, 46_206_736, 2_627, 7_968_204, 323, 211),
    (17, 211_799_312, 10_187, 31_922_840, 1_149, 609),
    (18, 997_313_824, 6_422, 152_664_200, 651, 411),
    (19, 4_809_701_440, 26_796, 646_888_154, 2_632, 1_367),
];

/// Published asymmetric cycle counts modulo reflection for even `12 <= n <= 40`.
pub const REFERENCE_ASYMMETRIC: [(usize, u64); 15] = [
    (12, 1),
    (14, 1),
    (16, 4),
    (18, 7),
    (20, 18),
    (22, 31),
    (24, 70),
    (26, 126),
    (28, 261),
    (30, 484),
    (32, 960),
    (34, 1_800),
    (36, 3_515),
    (38, 6_643),
    (40, 12_852),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsRow {
    pub n: usize,
    pub g: u128,
    pub rg: u64,
    /// Saturated second layers, summed over class sizes.
    pub s: u128,
    pub rs: u64,
    pub r: u64,
    pub a: u64,
}

impl CountsRow {
    pub fn to_csv(&self) -> String {
        format!("{},{},{},{},{},{},{}", self.n, self.g, self.rg, self.s, self.rs, self.r, self.a)
    }
}

/// Number of canonical sentences of a family.
pub fn count_sentences(n: usize, kind: SetKind) -> Result<u64> {
    Ok(generate_sentences(n, kind)?.len() as u64)
}

/// Classes of two-layer networks with a repeated comparator.
pub fn redundant_class_count(n: usize) -> Result<u64> {
    let classes = generate_sentences(n, SetKind::RGn)?;
    Ok(classes.iter().filter(|s| s.words().iter().any(Word::is_repeat_cycle)).count() as u64)
}

/// Every column for one channel count.
pub fn counts(n: usize) -> Result<CountsRow> {
    let saturated = generate_sentences(n, SetKind::RSn)?;
    Ok(CountsRow {
        n,
        g: count_second_layers(n),
        rg: count_sentences(n, SetKind::RGn)?,
        s: saturated.iter().map(class_size).sum(),
        rs: saturated.len() as u64,
        r: count_sentences(n, SetKind::Rn)?,
        a: asymmetric_cycle_count(n),
    })
}

pub fn reference_row(n: usize) -> Option<CountsRow> {
    let &(n, g, rg, s, rs, r) = REFERENCE_COUNTS.iter().find(|row| row.0 == n)?;
    let a = REFERENCE_ASYMMETRIC.iter().find(|row| row.0 == n).map_or(0, |row| row.1);
    Some(CountsRow { n, g, rg, s, rs, r, a })
}

/// One cell that differs from the reference table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub column: &'static str,
    pub computed: u128,
    pub expected: u128,
}

#[derive(Clone, Debug)]
pub struct TablesReport {
    pub rows: Vec<CountsRow>,
    pub mismatches: Vec<Mismatch>,
}

impl TablesReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        out
    }

    /// Human-readable diff against the reference values.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for m in &self.mismatches {
            let _ = writeln!(out, "n={} {}: computed {} expected {}", m.n, m.column, m.computed, m.expected);
        }
        out
    }
}

pub fn compare(row: &CountsRow) -> Vec<Mismatch> {
    let Some(r) = reference_row(row.n) else { return Vec::new() };
    let cells: [(&'static str, u128, u128); 6] = [
        ("G", row.g, r.g),
        ("RG", row.rg.into(), r.rg.into()),
        ("S", row.s, r.s),
        ("RS", row.rs.into(), r.rs.into()),
        ("R", row.r.into(), r.r.into()),
        ("A", row.a.into(), r.a.into()),
    ];
    cells
        .into_iter()
        .filter(|c| c.1 != c.2)
        .map(|(column, computed, expected)| Mismatch { n: row.n, column, computed, expected })
        .collect()
}

/// Rows for `3..=max_n` and their differences from the reference values.
pub fn reproduce_tables(max_n: usize) -> Result<TablesReport> {
    if max_n < 3 {
        return Err(Error::Unsupported { what: "count tables below 3 channels", n: max_n });
    }
    let rows: Vec<CountsRow> = (3..=max_n).map(counts).collect::<Result<_>>()?;
    let mismatches = rows.iter().flat_map(compare).collect();
    Ok(TablesReport { rows, mismatches })
}
