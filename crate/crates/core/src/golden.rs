//! Known classification tables and the comparison of the prohibition
//! engine against them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::notation::parse_real;
use crate::rules::{check_all, CheckOptions};
use crate::scheme::{CurveClass, RealScheme, Surface, TypeClaim};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TypeTag {
    I,
    II,
    Indefinite,
    Unknown,
}

impl TypeTag {
    pub fn from_name(s: &str) -> Option<TypeTag> {
        match s {
            "I" => Some(TypeTag::I),
            "II" => Some(TypeTag::II),
            "indef" => Some(TypeTag::Indefinite),
            "unknown" => Some(TypeTag::Unknown),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TypeTag::I => "I",
            TypeTag::II => "II",
            TypeTag::Indefinite => "indef",
            TypeTag::Unknown => "unknown",
        }
    }

    /// Claims a realizable scheme with this tag must survive.
    pub fn claims(self) -> &'static [TypeClaim] {
        match self {
            TypeTag::I => &[TypeClaim::TypeI],
            TypeTag::II => &[TypeClaim::TypeII],
            TypeTag::Indefinite => &[TypeClaim::TypeI, TypeClaim::TypeII],
            TypeTag::Unknown => &[TypeClaim::Unknown],
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct GoldenEntry {
    pub text: String,
    pub scheme: RealScheme,
    pub tag: TypeTag,
}

#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub surface: Surface,
    pub class: CurveClass,
    pub entries: Vec<GoldenEntry>,
}

/// Shipped tables grouped by family; each table is one (surface, class).
pub const FAMILIES: [(&str, &[&str]); 6] = [
    (
        "bidegree (m,1)",
        &[
            "hyperboloid_1_1",
            "hyperboloid_2_1",
            "hyperboloid_3_1",
            "hyperboloid_4_1",
            "hyperboloid_5_1",
            "hyperboloid_6_1",
            "ellipsoid_1_1",
        ],
    ),
    (
        "bidegree (m,2)",
        &[
            "hyperboloid_1_2",
            "hyperboloid_2_2",
            "hyperboloid_3_2",
            "hyperboloid_4_2",
            "hyperboloid_5_2",
            "hyperboloid_6_2",
            "ellipsoid_2_2",
        ],
    ),
    ("bidegree (3,3)", &["hyperboloid_3_3", "ellipsoid_3_3"]),
    ("bidegree (m,3)", &["hyperboloid_4_3", "hyperboloid_5_3"]),
    ("bidegree (4,4), hyperboloid", &["hyperboloid_4_4"]),
    ("bidegree (4,4), ellipsoid", &["ellipsoid_4_4"]),
];

macro_rules! tables {
    ($($name:literal),* $(,)?) => {
        const RAW: &[(&str, &str)] = &[$(($name, include_str!(concat!("../data/golden/", $name, ".tbl")))),*];
    };
}

tables!(
    "hyperboloid_1_1",
    "hyperboloid_2_1",
    "hyperboloid_3_1",
    "hyperboloid_4_1",
    "hyperboloid_5_1",
    "hyperboloid_6_1",
    "ellipsoid_1_1",
    "hyperboloid_1_2",
    "hyperboloid_2_2",
    "hyperboloid_3_2",
    "hyperboloid_4_2",
    "hyperboloid_5_2",
    "hyperboloid_6_2",
    "ellipsoid_2_2",
    "hyperboloid_3_3",
    "ellipsoid_3_3",
    "hyperboloid_4_3",
    "hyperboloid_5_3",
    "hyperboloid_4_4",
    "ellipsoid_4_4",
);

fn parse_class(t: &str) -> Option<CurveClass> {
    match t.split_once(',') {
        Some((a, b)) => Some(CurveClass::Bidegree(a.trim().parse().ok()?, b.trim().parse().ok()?)),
        None => Some(CurveClass::Degree(t.trim().parse().ok()?)),
    }
}

/// Parses a table: a header "surface class", then "scheme<TAB>tag" lines.
/// Lines starting with '#' are comments. Entries equal up to
/// canonical form are merged; conflicting tags are an error.
pub fn parse_table(text: &str) -> Result<GoldenTable> {
    let bad = |line: usize, m: String| Error::Parse { position: line, message: m };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| bad(0, "empty table".into()))?;
    let mut hw = header.split_whitespace();
    let surface = hw
        .next()
        .and_then(Surface::from_name)
        .ok_or_else(|| bad(hl + 1, format!("bad surface in header '{}'", header)))?;
    let class =
        hw.next().and_then(parse_class).ok_or_else(|| bad(hl + 1, format!("bad class in header '{}'", header)))?;
    let mut by_text: BTreeMap<String, GoldenEntry> = BTreeMap::new();
    for (i, line) in lines {
        let (st, tt) = line.split_once('\t').ok_or_else(|| bad(i + 1, "expected scheme<TAB>tag".into()))?;
        let tag = TypeTag::from_name(tt.trim()).ok_or_else(|| bad(i + 1, format!("unknown type tag '{}'", tt)))?;
        let scheme = parse_real(st.trim(), surface, class).map_err(|e| bad(i + 1, e.to_string()))?;
        let text = scheme.render();
        if let Some(prev) = by_text.get(&text) {
            if prev.tag != tag {
                return Err(bad(i + 1, format!("{} listed as {} and {}", text, prev.tag, tag)));
            }
            continue;
        }
        by_text.insert(text.clone(), GoldenEntry { text, scheme, tag });
    }
    Ok(GoldenTable { surface, class, entries: by_text.into_values().collect() })
}

pub fn table_names() -> Vec<&'static str> {
    RAW.iter().map(|(n, _)| *n).collect()
}

pub fn table_by_name(name: &str) -> Result<GoldenTable> {
    let raw = RAW.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::NoTable(name.to_string()))?;
    parse_table(raw.1)
}

pub fn table(surface: Surface, class: CurveClass) -> Result<GoldenTable> {
    let name = match class {
        CurveClass::Bidegree(a, b) => format!("{}_{}_{}", surface.name(), a, b),
        CurveClass::Degree(d) => format!("{}_{}", surface.name(), d),
    };
    table_by_name(&name).map_err(|_| Error::NoTable(format!("{} {}", surface.name(), class.text())))
}

#[derive(Debug, Clone, Serialize)]
pub struct Missing {
    pub scheme: String,
    pub tag: TypeTag,
    pub claim: TypeClaim,
    pub failed_rules: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenDiff {
    pub surface: Surface,
    pub class: CurveClass,
    /// Listed schemes the engine rejects under a claim the tag requires.
    pub missing: Vec<Missing>,
    /// Schemes the engine admits under some claim that the table omits.
    pub extra: Vec<String>,
}

/// Listed entries rejected by the engine, without enumerating.
pub fn missing_entries(t: &GoldenTable, opts: &CheckOptions) -> Vec<Missing> {
    let mut out = Vec::new();
    for e in &t.entries {
        for &claim in e.tag.claims() {
            let r = check_all(&e.scheme, claim, None, opts);
            if !r.admissible {
                out.push(Missing {
                    scheme: e.text.clone(),
                    tag: e.tag,
                    claim,
                    failed_rules: r.failures().iter().map(|v| v.rule_id.clone()).collect(),
                });
            }
        }
    }
    out
}

pub fn diff_table(t: &GoldenTable, opts: &CheckOptions) -> Result<GoldenDiff> {
    let missing = missing_entries(t, opts);
    let listed: BTreeSet<&str> = t.entries.iter().map(|e| e.text.as_str()).collect();
    let extra = enumerate(t.surface, t.class, None, opts)?
        .into_iter()
        .filter(|e| e.admissible() && !listed.contains(e.text.as_str()))
        .map(|e| e.text)
        .collect();
    Ok(GoldenDiff { surface: t.surface, class: t.class, missing, extra })
}

pub fn diff_golden(surface: Surface, class: CurveClass, opts: &CheckOptions) -> Result<GoldenDiff> {
    diff_table(&table(surface, class)?, opts)
}
