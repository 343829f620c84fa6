//! The ambient variable set.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::syntax::{is_identifier, Formula};
use crate::team::Team;

/// Default cap on the number of variables (65,536 teams at the cap).
pub const DEFAULT_VAR_CAP: usize = 4;
/// Hard limit: teams are 64-bit masks.
pub const MAX_VARS: usize = 6;

/// An ordered list of distinct variables.
///
/// Valuation `i` assigns variable `j` the bit `(i >> (n - 1 - j)) & 1`, so
/// valuations are listed in lexicographic order with the first variable
/// most significant: for `(p, q)` the order is `p0q0, p0q1, p1q0, p1q1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    vars: Vec<String>,
}

impl Context {
    pub fn new<I, S>(vars: I) -> Result<Context>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Context::with_cap(vars, DEFAULT_VAR_CAP)
    }

    pub fn with_cap<I, S>(vars: I, cap: usize) -> Result<Context>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidContext("a context needs at least one variable".into()));
        }
        let cap = cap.min(MAX_VARS);
        if vars.len() > cap {
            return Err(Error::ContextCap { vars: vars.len(), cap });
        }
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidContext(format!("`{v}` is not a variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidContext(format!("variable `{v}` listed twice")));
            }
        }
        Ok(Context { vars })
    }

    /// The first `n` of `p, q, r, s, t, u`.
    pub fn standard(n: usize) -> Result<Context> {
        const NAMES: [&str; MAX_VARS] = ["p", "q", "r", "s", "t", "u"];
        if n == 0 {
            return Err(Error::InvalidContext("a context needs at least one variable".into()));
        }
        if n > MAX_VARS {
            return Err(Error::ContextCap { vars: n, cap: MAX_VARS });
        }
        Context::with_cap(NAMES[..n].iter().copied(), MAX_VARS)
    }

    /// Parses a comma-separated variable list such as `p,q`.
    pub fn parse_list(list: &str, cap: usize) -> Result<Context> {
        Context::with_cap(list.split(',').map(str::trim).filter(|s| !s.is_empty()), cap)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub fn num_valuations(&self) -> usize {
        1 << self.vars.len()
    }

    /// Number of teams, if it fits in a `usize`.
    pub fn num_teams(&self) -> Option<usize> {
        1usize.checked_shl(self.num_valuations() as u32)
    }

    /// The team of all valuations.
    pub fn full_team(&self) -> Team {
        let m = self.num_valuations();
        Team::from_bits(if m == 64 { u64::MAX } else { (1u64 << m) - 1 })
    }

    pub fn contains_team(&self, team: Team) -> bool {
        team.is_subset(self.full_team())
    }

    pub fn check_team(&self, team: Team) -> Result<()> {
        if self.contains_team(team) {
            Ok(())
        } else {
            Err(Error::TeamOutOfContext)
        }
    }

    /// Value of variable number `var` under valuation number `valuation`.
    pub fn value(&self, valuation: usize, var: usize) -> bool {
        valuation >> (self.len() - 1 - var) & 1 == 1
    }

    /// Bits of a valuation in variable order.
    pub fn valuation_bits(&self, valuation: usize) -> Vec<bool> {
        (0..self.len()).map(|j| self.value(valuation, j)).collect()
    }

    /// Index of the valuation with the given bits (variable order).
    pub fn valuation_index(&self, bits: &[bool]) -> Option<usize> {
        (bits.len() == self.len()).then(|| bits.iter().fold(0, |acc, &b| acc << 1 | usize::from(b)))
    }

    /// Valuations that give each listed variable the listed bit.
    pub fn pattern_team(&self, assignments: &[(usize, bool)]) -> Team {
        Team::from_valuations(
            (0..self.num_valuations()).filter(|&v| assignments.iter().all(|&(j, b)| self.value(v, j) == b)),
        )
    }

    /// Checks that every variable of `f` belongs to the context.
    pub fn check_formula(&self, f: &Formula) -> Result<()> {
        match f.free_variables().into_iter().find(|v| self.index_of(v).is_none()) {
            Some(v) => Err(Error::VariableOutOfContext(v)),
            None => Ok(()),
        }
    }

    pub fn is_subcontext_of(&self, other: &Context) -> bool {
        self.vars.iter().all(|v| other.index_of(v).is_some())
    }

    /// Teams as rows of 0/1 values aligned with [`Context::vars`].
    pub fn rows(&self, team: Team) -> Vec<Vec<u8>> {
        team.members()
            .map(|v| self.valuation_bits(v).into_iter().map(u8::from).collect())
            .collect()
    }

    /// Human-readable team, e.g. `{(p1,q0), (p0,q1)}` in valuation order.
    pub fn describe_team(&self, team: Team) -> String {
        let mut out = String::from("{");
        for (k, v) in team.members().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push('(');
            for (j, name) in self.vars.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{name}{}", u8::from(self.value(v, j)));
            }
            out.push(')');
        }
        out.push('}');
        out
    }

    /// Builds a team from rows of bits in variable order. Duplicate rows are rejected.
    pub fn team_from_rows(&self, rows: &[Vec<bool>]) -> Result<Team> {
        let mut team = Team::EMPTY;
        for row in rows {
            let v = self.valuation_index(row).ok_or_else(|| {
                Error::InvalidContext(format!("row has {} entries, context has {} variables", row.len(), self.len()))
            })?;
            if team.contains(v) {
                return Err(Error::InvalidContext(format!("duplicate row {row:?}")));
            }
            team.insert(v);
        }
        Ok(team)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn valuation_order_is_lexicographic() {
        let ctx = Context::new(["p", "q"]).unwrap();
        assert_eq!(ctx.valuation_bits(0), [false, false]);
        assert_eq!(ctx.valuation_bits(1), [false, true]);
        assert_eq!(ctx.valuation_bits(2), [true, false]);
        assert_eq!(ctx.valuation_bits(3), [true, true]);
        assert_eq!(ctx.valuation_index(&[true, false]), Some(2));
        assert_eq!(ctx.num_teams(), Some(16));
        assert_eq!(ctx.full_team().bits(), 0b1111);
    }

    #[test]
    fn invalid_contexts() {
        assert!(matches!(Context::new(Vec::<String>::new()), Err(Error::InvalidContext(_))));
        assert!(matches!(Context::new(["p", "p"]), Err(Error::InvalidContext(_))));
        assert!(matches!(Context::new(["p", "Q"]), Err(Error::InvalidContext(_))));
        assert_eq!(
            Context::new(["a", "b", "c", "d", "e"]),
            Err(Error::ContextCap { vars: 5, cap: 4 })
        );
        assert!(Context::with_cap(["a", "b", "c", "d", "e"], 5).is_ok());
        assert!(matches!(
            Context::with_cap(["a", "b", "c", "d", "e", "f", "g"], 10),
            Err(Error::ContextCap { vars: 7, cap: 6 })
        ));
    }

    #[test]
    fn rows_and_description() {
        let ctx = Context::new(["p", "q"]).unwrap();
        let team = ctx.team_from_rows(&[vec![true, false], vec![false, true]]).unwrap();
        assert_eq!(team, Team::from_valuations([1, 2]));
        assert_eq!(ctx.describe_team(team), "{(p0,q1), (p1,q0)}");
        assert_eq!(ctx.rows(team), [vec![0, 1], vec![1, 0]]);
        assert!(ctx.team_from_rows(&[vec![true, false], vec![true, false]]).is_err());
        assert!(ctx.team_from_rows(&[vec![true]]).is_err());
        assert_eq!(ctx.describe_team(Team::EMPTY), "{}");
    }

    #[test]
    fn out_of_context_variables() {
        let ctx = Context::new(["p"]).unwrap();
        let f = crate::parse("p /\\ q").unwrap();
        assert_eq!(ctx.check_formula(&f), Err(Error::VariableOutOfContext("q".into())));
    }
}
