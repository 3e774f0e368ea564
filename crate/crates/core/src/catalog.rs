//! Character degrees of small groups that occur as Galois groups over `Q`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{degree_problems, DegreeVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub name: String,
    pub order: u64,
    /// Nondecreasing, so the trivial character comes first.
    pub degrees: Vec<u64>,
    pub class_count: usize,
}

impl GroupEntry {
    pub fn degree_vector(&self) -> Result<DegreeVector> {
        DegreeVector::new(self.degrees.clone())?
            .with_group(Some(self.name.clone()), Some(self.order))
    }
}

const GROUPS: &[(&str, u64, &[u64])] = &[
    ("C1", 1, &[1]),
    ("C2", 2, &[1, 1]),
    ("C3", 3, &[1, 1, 1]),
    ("S3", 6, &[1, 1, 2]),
    ("C4", 4, &[1, 1, 1, 1]),
    ("V4", 4, &[1, 1, 1, 1]),
    ("Q8", 8, &[1, 1, 1, 1, 2]),
    ("D4", 8, &[1, 1, 1, 1, 2]),
    ("A4", 12, &[1, 1, 1, 3]),
    ("S4", 24, &[1, 1, 2, 3, 3]),
    ("A5", 60, &[1, 3, 3, 4, 5]),
    ("S5", 120, &[1, 1, 4, 4, 5, 5, 6]),
];

pub fn catalog_groups() -> Vec<GroupEntry> {
    GROUPS
        .iter()
        .map(|&(name, order, degrees)| GroupEntry {
            name: name.to_string(),
            order,
            degrees: degrees.to_vec(),
            class_count: degrees.len(),
        })
        .collect()
}

/// Case-insensitive lookup by name.
pub fn lookup(name: &str) -> Option<GroupEntry> {
    catalog_groups()
        .into_iter()
        .find(|g| g.name.eq_ignore_ascii_case(name))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryValidation {
    pub ok: bool,
    pub reasons: Vec<String>,
}

pub fn validate_catalog_entry(e: &GroupEntry) -> EntryValidation {
    let mut reasons = degree_problems(&e.degrees, e.order);
    if e.degrees.len() != e.class_count {
        reasons.push(format!(
            "{} degrees listed but class count is {}",
            e.degrees.len(),
            e.class_count
        ));
    }
    if e.degrees.windows(2).any(|w| w[0] > w[1]) {
        reasons.push("degrees are not sorted".to_string());
    }
    EntryValidation {
        ok: reasons.is_empty(),
        reasons,
    }
}
