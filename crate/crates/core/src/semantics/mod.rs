//! Evaluation of formulas on teams relative to a [`Context`].
//!
//! Two strategies are implemented independently: [`Evaluator`] follows the
//! satisfaction clauses on one team at a time, while [`denotation`] builds
//! the whole team proposition bottom-up. Superset- and globally-quantified
//! connectives range over the teams of the context.

mod compile;
mod denote;
mod recursive;

use alloc::vec::Vec;

pub use denote::{apply_binary, apply_unary};
pub use recursive::{Evaluator, DEFAULT_STEP_BUDGET};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::prop::{TeamProposition, MAX_PROP_VALUATIONS};
use crate::syntax::{Formula, Quantification};
use crate::team::Team;
use compile::Compiled;

/// Decides `T ⊨ f`.
///
/// Formulas with superset- or globally-quantified connectives are evaluated
/// through their denotation when the context is small enough to
/// materialise it; everything else goes through the recursive evaluator.
pub fn eval(f: &Formula, team: Team, ctx: &Context) -> Result<bool> {
    ctx.check_team(team)?;
    let compiled = Compiled::new(f, ctx)?;
    if compiled.max_quantification() >= Quantification::SupersetQuantified
        && ctx.num_valuations() <= MAX_PROP_VALUATIONS
    {
        return Ok(denote::denote_compiled(&compiled, ctx.num_valuations())?.contains(team));
    }
    Evaluator::new(f, ctx)?.eval(team)
}

/// Decides `T ⊨ f` with the recursive evaluator only.
pub fn eval_recursive(f: &Formula, team: Team, ctx: &Context) -> Result<bool> {
    Evaluator::new(f, ctx)?.eval(team)
}

/// `⟦f⟧ = {T : T ⊨ f}` over the teams of `ctx`.
pub fn denotation(f: &Formula, ctx: &Context) -> Result<TeamProposition> {
    let compiled = Compiled::new(f, ctx)?;
    denote::denote_compiled(&compiled, ctx.num_valuations())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntailmentResult {
    /// First team (in ascending mask order) satisfying every premise but
    /// not the conclusion.
    pub counterexample: Option<Team>,
}

impl EntailmentResult {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Decides `premises ⊨ conclusion` by enumerating every team of `ctx`.
pub fn entails(premises: &[Formula], conclusion: &Formula, ctx: &Context) -> Result<EntailmentResult> {
    let mut props = Vec::with_capacity(premises.len());
    for p in premises {
        props.push(denotation(p, ctx)?);
    }
    let goal = denotation(conclusion, ctx)?;
    Ok(entails_props(&props, &goal))
}

/// Entailment between already computed denotations.
pub fn entails_props(premises: &[TeamProposition], conclusion: &TeamProposition) -> EntailmentResult {
    let mut support = conclusion.full_like();
    for p in premises {
        support = support.intersection(p);
    }
    EntailmentResult { counterexample: support.difference(conclusion).first() }
}

/// Projects every valuation of `team` (over `from`) onto the variables of `to`.
pub fn restrict_team(team: Team, from: &Context, to: &Context) -> Result<Team> {
    from.check_team(team)?;
    let positions = to
        .vars()
        .iter()
        .map(|v| from.index_of(v).ok_or_else(|| Error::VariableOutOfContext(v.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Team::from_valuations(team.members().map(|v| {
        positions.iter().fold(0, |acc, &j| acc << 1 | usize::from(from.value(v, j)))
    })))
}
