use serde::Serialize;
use serde_json::{json, Value};

use crate::scheme::{RealScheme, TypeClaim};

/// Outcome of one rule.
///
/// `lhs` and `rhs` hold the instance that was tested (residues are
/// already reduced when the relation is a congruence).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub rule_id: String,
    pub applicable: bool,
    pub pass: Option<bool>,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    pub relation: String,
    pub notes: String,
}

/// Note carried by the "forces type I" rules when their premise holds.
pub const FORCES_TYPE_I: &str = "forces type I";

impl Verdict {
    pub fn not_applicable(rule_id: &str, notes: impl Into<String>) -> Verdict {
        Verdict {
            rule_id: rule_id.into(),
            applicable: false,
            pass: None,
            lhs: vec![],
            rhs: vec![],
            relation: String::new(),
            notes: notes.into(),
        }
    }

    pub fn checked(
        rule_id: &str,
        pass: bool,
        lhs: Vec<i64>,
        rhs: Vec<i64>,
        relation: impl Into<String>,
        notes: impl Into<String>,
    ) -> Verdict {
        Verdict {
            rule_id: rule_id.into(),
            applicable: true,
            pass: Some(pass),
            lhs,
            rhs,
            relation: relation.into(),
            notes: notes.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.pass == Some(true)
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }

    pub fn forces_type_i(&self) -> bool {
        self.applicable && self.notes.contains(FORCES_TYPE_I)
    }
}

/// All verdicts for one scheme under one type claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub scheme: RealScheme,
    pub claim: TypeClaim,
    pub defect: i64,
    pub verdicts: Vec<Verdict>,
    pub admissible: bool,
}

impl Report {
    pub fn new(scheme: RealScheme, claim: TypeClaim, verdicts: Vec<Verdict>) -> Report {
        let admissible = verdicts.iter().all(|v| !v.failed());
        let defect = scheme.m_defect();
        Report { scheme, claim, defect, verdicts, admissible }
    }

    pub fn verdict(&self, rule_id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.rule_id == rule_id)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.failed()).collect()
    }

    pub fn any_applicable(&self) -> bool {
        self.verdicts.iter().any(|v| v.applicable)
    }

    pub fn forces_type_i(&self) -> bool {
        self.verdicts.iter().any(Verdict::forces_type_i)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scheme": self.scheme.render(),
            "surface": self.scheme.surface().name(),
            "class": self.scheme.class().text(),
            "claim": self.claim.name(),
            "defect": self.defect,
            "verdicts": self.verdicts,
            "admissible": self.admissible,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} on {} of class {} (claim {}, defect {})\n",
            self.scheme.render(),
            self.scheme.surface().name(),
            self.scheme.class().text(),
            self.claim.name(),
            self.defect
        );
        for v in &self.verdicts {
            let status = match v.pass {
                None => "n/a ",
                Some(true) => "pass",
                Some(false) => "FAIL",
            };
            out.push_str(&format!("  {} {:<20}", status, v.rule_id));
            if v.applicable {
                out.push_str(&format!(" {:?} {} {:?}", v.lhs, v.relation, v.rhs));
            }
            if !v.notes.is_empty() {
                out.push_str(&format!("  ({})", v.notes));
            }
            out.push('\n');
        }
        out.push_str(if self.admissible { "admissible\n" } else { "prohibited\n" });
        out
    }
}
