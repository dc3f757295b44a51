use crate::algebra::Field;

/// Resource caps shared by expansion, automaton construction and evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub term_budget: usize,
    pub state_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            term_budget: 1_000_000,
            state_budget: 200_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

/// Run-wide settings: coefficient field, budgets and output style.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkspaceConfig {
    pub field: Field,
    pub limits: Limits,
    pub format: OutputFormat,
}

impl WorkspaceConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.limits.term_budget == 0 || self.limits.state_budget == 0 {
            return Err(crate::Error::Precondition("budgets must be positive".into()));
        }
        if let Field::Prime(p) = self.field {
            Field::prime(p)?;
        }
        Ok(())
    }
}
