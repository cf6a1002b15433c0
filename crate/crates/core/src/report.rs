//! Structured pass/fail records. Every verification routine appends one item
//! per identity it checks, with enough witness text to reproduce a failure.

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    /// Record `cond` under `name`, materializing the witness only on failure.
    pub fn check(&mut self, name: impl Into<String>, cond: bool, witness: impl FnOnce() -> String) {
        if cond {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.items.extend(other.items);
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.failures().next()
    }

    pub fn summary(&self) -> String {
        let failed = self.items.iter().filter(|i| !i.passed).count();
        format!("{} checks, {} failed", self.items.len(), failed)
    }
}
