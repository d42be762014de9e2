//! Hand-encoded CDPs and polytopes from the classification tables and the
//! figures, shipped with the crate for tests and the command line.

use crate::cdp::{Cdp, CdpJson};
use crate::error::Result;
use crate::lattice::LatticePolytope;

/// One row of the classification tables. Functions are stored untranslated,
/// the last one shifted by `-(n - 2)`.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub table: u8,
    pub row: u8,
    /// Base `[-1, m-1]`.
    pub m: i64,
    pub n: usize,
    pub json: &'static str,
}

impl TableRow {
    pub fn cdp(&self) -> Result<Cdp> {
        let raw: CdpJson = serde_json::from_str(self.json)?;
        Cdp::from_json(&raw)
    }
}

macro_rules! row {
    ($t:literal, $r:literal, $m:literal, $n:literal) => {
        TableRow {
            table: $t,
            row: $r,
            m: $m,
            n: $n,
            json: include_str!(concat!("../fixtures/table", $t, "_row", $r, ".json")),
        }
    };
}

pub const TABLE_ROWS: [TableRow; 34] = [
    row!(1, 1, 2, 3),
    row!(1, 2, 2, 3),
    row!(1, 3, 2, 3),
    row!(1, 4, 2, 3),
    row!(1, 5, 2, 3),
    row!(1, 6, 2, 3),
    row!(1, 7, 2, 3),
    row!(2, 8, 2, 4),
    row!(2, 9, 2, 4),
    row!(2, 10, 2, 4),
    row!(2, 11, 2, 4),
    row!(3, 12, 3, 3),
    row!(3, 13, 3, 3),
    row!(3, 14, 3, 3),
    row!(3, 15, 3, 3),
    row!(3, 16, 3, 3),
    row!(3, 17, 3, 3),
    row!(3, 18, 3, 3),
    row!(3, 19, 3, 3),
    row!(3, 20, 3, 3),
    row!(4, 21, 4, 3),
    row!(4, 22, 4, 3),
    row!(4, 23, 4, 3),
    row!(4, 24, 4, 3),
    row!(4, 25, 4, 3),
    row!(4, 26, 4, 3),
    row!(4, 27, 4, 3),
    row!(4, 28, 4, 3),
    row!(4, 29, 4, 3),
    row!(5, 30, 6, 3),
    row!(5, 31, 6, 3),
    row!(5, 32, 6, 3),
    row!(5, 33, 6, 3),
    row!(5, 34, 6, 3),
];

macro_rules! named {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*]
    };
}

/// CDP fixtures by name.
pub const CDPS: &[(&str, &str)] =
    named!("figure1_step0", "figure1_step1", "figure1_step2", "figure1_step3", "figure2_cdp");

/// Polytope fixtures by name, as `{"vertices": [...]}`.
pub const POLYTOPES: &[(&str, &str)] = named!(
    "figure2.polytope",
    "figure3_left.polytope",
    "figure3_middle.polytope",
    "figure3_right.polytope",
    "triangle_base.polytope",
    "four_gon_base.polytope",
);

fn lookup(table: &[(&str, &'static str)], name: &str) -> Option<&'static str> {
    let stem = name.trim_end_matches(".json").trim_end_matches(".polytope");
    table.iter().find(|(k, _)| k.trim_end_matches(".polytope") == stem).map(|(_, v)| *v)
}

pub fn named_cdp(name: &str) -> Option<Result<Cdp>> {
    if let Some(r) = TABLE_ROWS.iter().find(|r| format!("table{}_row{}", r.table, r.row) == name) {
        return Some(r.cdp());
    }
    let json = lookup(CDPS, name)?;
    Some(serde_json::from_str::<CdpJson>(json).map_err(Into::into).and_then(|raw| Cdp::from_json(&raw)))
}

pub fn named_polytope(name: &str) -> Option<Result<LatticePolytope>> {
    lookup(POLYTOPES, name).map(|json| serde_json::from_str(json).map_err(Into::into))
}

/// All names accepted by [`named_cdp`] and [`named_polytope`].
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = TABLE_ROWS.iter().map(|r| format!("table{}_row{}", r.table, r.row)).collect();
    out.extend(CDPS.iter().map(|(k, _)| k.to_string()));
    out.extend(POLYTOPES.iter().map(|(k, _)| k.trim_end_matches(".polytope").to_string()));
    out
}
