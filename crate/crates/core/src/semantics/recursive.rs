//! Clause-by-clause evaluation on a single team.
//!
//! Every quantifier of the satisfaction clauses is executed literally:
//! subteams by submask enumeration, superteams within the context's full
//! team, and global quantifiers over every team of the context. Results
//! are memoised per (node, team) for the lifetime of an [`Evaluator`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::compile::{Compiled, Node};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::syntax::{BinaryOp, Formula, UnaryOp};
use crate::team::Team;

/// Default number of quantifier steps one evaluator may take.
pub const DEFAULT_STEP_BUDGET: u64 = 1 << 24;

const DENSE_MEMO_LIMIT: usize = 1 << 16;

enum Memo {
    Dense(Vec<Vec<u8>>),
    Sparse(BTreeMap<(usize, u64), bool>),
}

pub struct Evaluator {
    compiled: Compiled,
    universe: Team,
    memo: Memo,
    budget: u64,
    limit: u64,
}

impl Evaluator {
    pub fn new(f: &Formula, ctx: &Context) -> Result<Evaluator> {
        let compiled = Compiled::new(f, ctx)?;
        let memo = match ctx.num_teams() {
            Some(n) if n <= DENSE_MEMO_LIMIT => Memo::Dense(vec![Vec::new(); compiled.nodes.len()]),
            _ => Memo::Sparse(BTreeMap::new()),
        };
        Ok(Evaluator { compiled, universe: ctx.full_team(), memo, budget: DEFAULT_STEP_BUDGET, limit: DEFAULT_STEP_BUDGET })
    }

    pub fn with_budget(mut self, steps: u64) -> Evaluator {
        self.budget = steps;
        self.limit = steps;
        self
    }

    pub fn eval(&mut self, team: Team) -> Result<bool> {
        if !team.is_subset(self.universe) {
            return Err(Error::TeamOutOfContext);
        }
        self.node(self.compiled.root, team)
    }

    fn spend(&mut self) -> Result<()> {
        match self.budget.checked_sub(1) {
            Some(b) => {
                self.budget = b;
                Ok(())
            }
            None => Err(Error::ResourceCap(format!(
                "recursive evaluation exceeded its step budget of {} steps",
                self.limit
            ))),
        }
    }

    fn lookup(&self, id: usize, team: Team) -> Option<bool> {
        match &self.memo {
            Memo::Dense(rows) => match rows[id].get(team.bits() as usize) {
                Some(1) => Some(false),
                Some(2) => Some(true),
                _ => None,
            },
            Memo::Sparse(map) => map.get(&(id, team.bits())).copied(),
        }
    }

    fn store(&mut self, id: usize, team: Team, value: bool) {
        let universe = self.universe;
        match &mut self.memo {
            Memo::Dense(rows) => {
                let row = &mut rows[id];
                if row.is_empty() {
                    row.resize(1 << (universe.bits().count_ones()), 0);
                }
                row[team.bits() as usize] = 1 + u8::from(value);
            }
            Memo::Sparse(map) => {
                map.insert((id, team.bits()), value);
            }
        }
    }

    fn node(&mut self, id: usize, team: Team) -> Result<bool> {
        if let Some(v) = self.lookup(id, team) {
            return Ok(v);
        }
        let value = self.compute(id, team)?;
        self.store(id, team, value);
        Ok(value)
    }

    /// Does some subteam (nonempty if `nonempty`) satisfy node `a`?
    fn some_subteam(&mut self, a: usize, team: Team, nonempty: bool) -> Result<bool> {
        for s in team.subteams() {
            self.spend()?;
            if (!nonempty || !s.is_empty()) && self.node(a, s)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn all_subteams(&mut self, a: usize, team: Team) -> Result<bool> {
        for s in team.subteams() {
            self.spend()?;
            if !self.node(a, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn compute(&mut self, id: usize, t: Team) -> Result<bool> {
        let universe = self.universe;
        Ok(match self.compiled.nodes[id] {
            Node::Atom(mask) => t.is_subset(mask),
            Node::Bot => t.is_empty(),
            Node::Top => true,
            Node::Ne => !t.is_empty(),
            Node::Inclusion(mask) => !t.intersection(mask).is_empty(),
            Node::Unary(op, a) => match op {
                UnaryOp::Neg => {
                    for v in t.members() {
                        if self.node(a, Team::singleton(v))? {
                            return Ok(false);
                        }
                    }
                    true
                }
                UnaryOp::Nabla => t.is_empty() || self.some_subteam(a, t, true)?,
                UnaryOp::BlackDia => self.some_subteam(a, t, true)?,
                UnaryOp::Dia => self.some_subteam(a, t, false)?,
            },
            Node::Binary(op, a, b) => self.binary(op, a, b, t, universe)?,
        })
    }

    fn binary(&mut self, op: BinaryOp, a: usize, b: usize, t: Team, universe: Team) -> Result<bool> {
        use BinaryOp::*;
        Ok(match op {
            And => self.node(a, t)? && self.node(b, t)?,
            GlobalOr => self.node(a, t)? || self.node(b, t)?,
            TensorOr => {
                // T = T1 ∪ T2 with T1 ⊨ a and T2 ⊨ b; T2 ranges over T ∖ T1 ⊆ T2 ⊆ T.
                for t1 in t.subteams() {
                    self.spend()?;
                    if !self.node(a, t1)? {
                        continue;
                    }
                    let rest = t.difference(t1);
                    for extra in t1.subteams() {
                        self.spend()?;
                        if self.node(b, rest.union(extra))? {
                            return Ok(true);
                        }
                    }
                }
                false
            }
            OuterGlobalOr => {
                for s in t.superteams(universe) {
                    self.spend()?;
                    if self.node(a, s)? || self.node(b, s)? {
                        return Ok(true);
                    }
                }
                false
            }
            TensorAnd => {
                // T = R ∩ S with R, S ⊇ T: S adds only valuations outside R.
                for r in t.superteams(universe) {
                    self.spend()?;
                    if !self.node(a, r)? {
                        continue;
                    }
                    for extra in universe.difference(r).subteams() {
                        self.spend()?;
                        if self.node(b, t.union(extra))? {
                            return Ok(true);
                        }
                    }
                }
                false
            }
            IntImp => {
                for s in t.subteams() {
                    self.spend()?;
                    if self.node(a, s)? && !self.node(b, s)? {
                        return Ok(false);
                    }
                }
                true
            }
            UpImp => {
                for s in t.superteams(universe) {
                    self.spend()?;
                    if self.node(a, s)? && !self.node(b, s)? {
                        return Ok(false);
                    }
                }
                true
            }
            MaxImp => {
                for s in t.subteams() {
                    self.spend()?;
                    if !self.node(a, s)? || self.node(b, s)? {
                        continue;
                    }
                    let mut maximal = true;
                    for bigger in s.superteams(t) {
                        self.spend()?;
                        if bigger != s && self.node(a, bigger)? {
                            maximal = false;
                            break;
                        }
                    }
                    if maximal {
                        return Ok(false);
                    }
                }
                true
            }
            MinImp => {
                for s in t.superteams(universe) {
                    self.spend()?;
                    if !self.node(a, s)? || self.node(b, s)? {
                        continue;
                    }
                    let mut minimal = true;
                    for smaller in t.superteams(s) {
                        self.spend()?;
                        if smaller != s && self.node(a, smaller)? {
                            minimal = false;
                            break;
                        }
                    }
                    if minimal {
                        return Ok(false);
                    }
                }
                true
            }
            LinImp => {
                for s in universe.subteams() {
                    self.spend()?;
                    if self.node(a, s)? && !self.node(b, s.union(t))? {
                        return Ok(false);
                    }
                }
                true
            }
            RelImp => {
                for s in universe.subteams() {
                    self.spend()?;
                    if self.node(a, s)? && !self.node(b, s.intersection(t))? {
                        return Ok(false);
                    }
                }
                true
            }
            Entail => {
                for s in universe.subteams() {
                    self.spend()?;
                    if self.node(a, s)? && !self.node(b, s)? {
                        return Ok(false);
                    }
                }
                true
            }
            EpIndic => !self.all_subteams(a, t)? || self.node(b, t)?,
            EpCf => {
                for s in t.subteams() {
                    self.spend()?;
                    if self.all_subteams(a, s)? && !self.node(b, s)? {
                        return Ok(false);
                    }
                }
                true
            }
            EpCond => !self.all_subteams(a, t)? || self.all_subteams(b, t)?,
        })
    }
}
