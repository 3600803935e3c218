use serde::{Deserialize, Serialize};

/// One residual-vs-tolerance check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Outcome of certifying a constructed object against its defining identities.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub count: usize,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub holds: bool,
}

impl ValidationReport {
    pub fn new(count: usize) -> Self {
        ValidationReport {
            count,
            checks: Vec::new(),
            notes: Vec::new(),
            holds: true,
        }
    }

    /// Records a check; a NaN residual fails.
    pub fn check(&mut self, name: &str, residual: f64, tolerance: f64, detail: Option<String>) {
        let holds = residual <= tolerance;
        self.holds &= holds;
        self.checks.push(Check {
            name: name.to_string(),
            residual,
            tolerance,
            holds,
            detail,
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|c| match &c.detail {
                Some(d) => format!("{} ({:e} > {:e}; {})", c.name, c.residual, c.tolerance, d),
                None => format!("{} ({:e} > {:e})", c.name, c.residual, c.tolerance),
            })
            .collect();
        if failed.is_empty() {
            "all checks hold".to_string()
        } else {
            failed.join(", ")
        }
    }
}
