use std::collections::{BTreeMap, BTreeSet};

use crate::frontend::{NumberedProgram, StatementId, StatementKind};

/// Per-statement definitions and uses. Every statement has an entry in `uses`, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefUse {
    pub defs: BTreeMap<StatementId, String>,
    pub uses: BTreeMap<StatementId, BTreeSet<String>>,
}

impl DefUse {
    pub fn def_of(&self, id: StatementId) -> Option<&str> {
        self.defs.get(&id).map(String::as_str)
    }

    pub fn uses_of(&self, id: StatementId) -> impl Iterator<Item = &str> + '_ {
        self.uses.get(&id).into_iter().flatten().map(String::as_str)
    }

    pub fn uses_var(&self, id: StatementId, var: &str) -> bool {
        self.uses.get(&id).is_some_and(|u| u.contains(var))
    }

    /// All variables mentioned anywhere, sorted.
    pub fn variables(&self) -> BTreeSet<&str> {
        self.defs
            .values()
            .map(String::as_str)
            .chain(self.uses.values().flatten().map(String::as_str))
            .collect()
    }
}

pub fn defs_uses(program: &NumberedProgram) -> DefUse {
    let mut du = DefUse::default();
    for stmt in &program.statements {
        let (def, read) = match &stmt.kind {
            StatementKind::Decl { name, init: e } | StatementKind::Assign { name, value: e } => {
                (Some(name), e)
            }
            StatementKind::Print(e)
            | StatementKind::IfHeader { cond: e }
            | StatementKind::WhileHeader { cond: e } => (None, e),
        };
        if let Some(name) = def {
            du.defs.insert(stmt.id, name.clone());
        }
        du.uses.insert(
            stmt.id,
            read.variables().into_iter().map(str::to_string).collect(),
        );
    }
    du
}
