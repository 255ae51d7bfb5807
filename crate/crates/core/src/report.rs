//! Structured, deterministic report data: tables of per-weight dimensions,
//! individual checks against expected values with their provenance, and free
//! annotations. Rendering to text lives in the CLI.

/// Where an expected value comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// Quoted from a worked example in the published literature.
    Literature,
    /// Computed here by an independent exhaustive/oracle route.
    Oracle,
    /// Immediate from definitions (no computation needed).
    Definition,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::Oracle => "oracle",
            Provenance::Definition => "definition",
        }
    }
}

/// One asserted value.
#[derive(Clone, Debug)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub got: String,
    pub provenance: Provenance,
    pub pass: bool,
}

impl Check {
    pub fn compare<T: PartialEq + std::fmt::Display>(
        what: impl Into<String>,
        expected: T,
        got: T,
        provenance: Provenance,
    ) -> Check {
        let pass = expected == got;
        Check {
            what: what.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            provenance,
            pass,
        }
    }

    pub fn boolean(what: impl Into<String>, pass: bool, provenance: Provenance) -> Check {
        Check {
            what: what.into(),
            expected: "true".into(),
            got: pass.to_string(),
            provenance,
            pass,
        }
    }
}

/// A named table with a fixed header; rows are pre-rendered strings in a
/// deterministic order.
#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: &[&str]) -> Table {
        Table {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// The full outcome of one scripted reproduction or identity suite.
#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    /// Documented identities and scope notes that are reported but not
    /// computed; each line says so explicitly.
    pub annotations: Vec<String>,
}

impl ExampleReport {
    pub fn new(id: impl Into<String>) -> ExampleReport {
        ExampleReport {
            id: id.into(),
            params: Vec::new(),
            tables: Vec::new(),
            checks: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl std::fmt::Display) {
        self.params.push((key.into(), value.to_string()));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}
