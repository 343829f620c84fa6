//! Team files: `{"variables": ["p","q"], "rows": [[1,0],[0,1]]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use teamsem::{Context, Team};

use crate::error::WorkbenchError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeamFile {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<u8>>,
}

impl TeamFile {
    pub fn from_team(team: Team, ctx: &Context) -> TeamFile {
        TeamFile { variables: ctx.vars().to_vec(), rows: ctx.rows(team) }
    }

    /// The team over `ctx`. Columns may come in any order but must name
    /// exactly the context's variables.
    pub fn to_team(&self, ctx: &Context) -> Result<Team, WorkbenchError> {
        let bad = |msg: String| WorkbenchError::TeamFile(msg);
        let mut column = Vec::with_capacity(ctx.len());
        for v in ctx.vars() {
            match self.variables.iter().position(|w| w == v) {
                Some(i) => column.push(i),
                None => return Err(bad(format!("team file has no column for context variable `{v}`"))),
            }
        }
        if self.variables.len() != ctx.len() {
            let extra: Vec<&str> =
                self.variables.iter().filter(|w| ctx.index_of(w).is_none()).map(String::as_str).collect();
            return Err(bad(if extra.is_empty() {
                "team file lists a variable twice".to_string()
            } else {
                format!("team file variables {extra:?} are not in the context")
            }));
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.variables.len() {
                return Err(bad(format!("row {r} has {} entries, expected {}", row.len(), self.variables.len())));
            }
            if let Some(x) = row.iter().find(|&&x| x > 1) {
                return Err(bad(format!("row {r} contains {x}; entries must be 0 or 1")));
            }
            rows.push(column.iter().map(|&i| row[i] == 1).collect::<Vec<bool>>());
        }
        Ok(ctx.team_from_rows(&rows)?)
    }
}

pub fn parse_team(json: &str, ctx: &Context) -> Result<Team, WorkbenchError> {
    let file: TeamFile = serde_json::from_str(json).map_err(|e| WorkbenchError::TeamFile(e.to_string()))?;
    file.to_team(ctx)
}

pub fn read_team(path: &Path, ctx: &Context) -> Result<Team, WorkbenchError> {
    let text = std::fs::read_to_string(path).map_err(|source| WorkbenchError::Io { path: path.to_owned(), source })?;
    parse_team(&text, ctx).map_err(|e| match e {
        WorkbenchError::TeamFile(msg) => WorkbenchError::TeamFile(format!("{}: {msg}", path.display())),
        other => other,
    })
}
