//! Bundled table of small knots.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{braid_presentation, pd_presentation, KnotError, KnotInput, KnotPresentation};

/// Environment variable naming a replacement table file.
pub const TABLE_ENV: &str = "KNOTREP_TABLE";

const BUNDLED: &str = include_str!("../../data/knot_table.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub braid: Option<Vec<i32>>,
    #[serde(default)]
    pub pd: Option<Vec<[i64; 4]>>,
    /// Reference Alexander polynomial coefficients, lowest degree first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<Vec<i64>>,
    #[serde(default)]
    pub comment: String,
}

impl TableEntry {
    /// Braid if present, otherwise the PD code.
    pub fn input(&self) -> Result<KnotInput, KnotError> {
        match (&self.braid, &self.pd) {
            (Some(b), _) => Ok(KnotInput::Braid(b.clone())),
            (None, Some(pd)) => Ok(KnotInput::Pd(pd.clone())),
            (None, None) => Err(KnotError::Table(format!("entry {} has no diagram", self.name))),
        }
    }

    pub fn presentation(&self) -> Result<KnotPresentation, KnotError> {
        match self.input()? {
            KnotInput::Braid(b) => braid_presentation(&b),
            KnotInput::Pd(pd) => pd_presentation(&pd),
            _ => unreachable!(),
        }
    }

    fn matches(&self, name: &str) -> bool {
        self.name.eq_ignore_ascii_case(name) || self.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    }
}

/// JSON array of entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KnotTable {
    pub knots: Vec<TableEntry>,
}

impl KnotTable {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled table parses")
    }

    pub fn from_json(text: &str) -> Result<Self, KnotError> {
        serde_json::from_str(text).map_err(|e| KnotError::Table(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, KnotError> {
        let text = std::fs::read_to_string(path).map_err(|e| KnotError::Table(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `path` if given, else the file named by `KNOTREP_TABLE`, else the bundled table.
    pub fn resolve(path: Option<&Path>) -> Result<Self, KnotError> {
        if let Some(p) = path {
            return Self::load(p);
        }
        match std::env::var_os(TABLE_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::bundled()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&TableEntry> {
        let name = name.trim();
        self.knots.iter().find(|e| e.matches(name))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.knots.iter().map(|e| e.name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_name_and_alias() {
        let t = KnotTable::bundled();
        assert_eq!(t.get("trefoil").unwrap().name, "3_1");
        assert_eq!(t.get("4_1").unwrap().braid.as_deref(), Some(&[1, -2, 1, -2][..]));
        assert!(t.get("10_1").is_none());
    }

    #[test]
    fn every_entry_builds() {
        for e in &KnotTable::bundled().knots {
            let p = e.presentation().unwrap();
            assert_eq!(p.deficiency(), 1, "{}", e.name);
            if let Some(pd) = &e.pd {
                let q = pd_presentation(pd).unwrap();
                assert_eq!(q.deficiency(), 1, "{}", e.name);
            }
        }
    }
}
