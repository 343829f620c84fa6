//! Formulas defining given teams, and the counterexamples built from them.

use alloc::vec;
use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::semantics::{denotation, entails, eval, EntailmentResult};
use crate::syntax::{BinaryOp, Formula};
use crate::team::Team;

/// `p` or `~p` according to the valuation's bit for variable `j`.
fn literal(ctx: &Context, valuation: usize, j: usize) -> Formula {
    let atom = Formula::atom(ctx.vars()[j].clone());
    if ctx.value(valuation, j) {
        atom
    } else {
        Formula::neg(atom)
    }
}

/// The conjunction of literals describing one valuation, in context order.
pub fn valuation_formula(ctx: &Context, valuation: usize) -> Formula {
    Formula::conjunction((0..ctx.len()).map(|j| literal(ctx, valuation, j))).expect("contexts are nonempty")
}

fn team_disjunction(team: Team, disjunct: impl Fn(usize) -> Formula) -> Formula {
    Formula::tensor_disjunction(team.members().map(disjunct)).unwrap_or(Formula::Bot)
}

/// `α_T`: a flat formula satisfied exactly by the subteams of `team`.
pub fn flat_formula_for_team(team: Team, ctx: &Context) -> Result<Formula> {
    ctx.check_team(team)?;
    Ok(team_disjunction(team, |v| valuation_formula(ctx, v)))
}

/// `θ_T`: satisfied by `team` and no other team.
pub fn exact_team_formula(team: Team, ctx: &Context) -> Result<Formula> {
    ctx.check_team(team)?;
    Ok(team_disjunction(team, |v| Formula::and(valuation_formula(ctx, v), Formula::Ne)))
}

/// Instances refuting `φ ∧ (ψ ∨ χ) ⊨ (φ ∧ ψ) ∨ (φ ∧ χ)` for a formula that
/// is not downward closed: `ψ = α_S`, `χ = α_{T∖S}` where `T ⊨ φ`,
/// `S ⊂ T` and `S ⊭ φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributivityWitness {
    pub psi: Formula,
    pub chi: Formula,
    pub team: Team,
    pub subteam: Team,
}

impl DistributivityWitness {
    /// `(φ ∧ (ψ ∨ χ), (φ ∧ ψ) ∨ (φ ∧ χ))`.
    pub fn instance(&self, phi: &Formula) -> (Formula, Formula) {
        let lhs = Formula::and(phi.clone(), Formula::tensor_or(self.psi.clone(), self.chi.clone()));
        let rhs = Formula::tensor_or(
            Formula::and(phi.clone(), self.psi.clone()),
            Formula::and(phi.clone(), self.chi.clone()),
        );
        (lhs, rhs)
    }

    pub fn recheck(&self, phi: &Formula, ctx: &Context) -> Result<EntailmentResult> {
        let (lhs, rhs) = self.instance(phi);
        entails(&[lhs], &rhs, ctx)
    }

    /// Does `team` itself satisfy the left side and falsify the right?
    pub fn verify(&self, phi: &Formula, ctx: &Context) -> Result<bool> {
        let (lhs, rhs) = self.instance(phi);
        Ok(eval(&lhs, self.team, ctx)? && !eval(&rhs, self.team, ctx)?)
    }
}

/// Constructs the distributivity counterexample for the first pair `S ⊂ T`
/// (by `T`, then `S`, in ascending order) with `T ⊨ f` and `S ⊭ f`;
/// `None` when `f` is downward closed.
pub fn distributivity_witnesses(f: &Formula, ctx: &Context) -> Result<Option<DistributivityWitness>> {
    let p = denotation(f, ctx)?;
    for team in p.iter() {
        if let Some(subteam) = team.subteams().find(|&s| s != team && !p.contains(s)) {
            return Ok(Some(DistributivityWitness {
                psi: flat_formula_for_team(subteam, ctx)?,
                chi: flat_formula_for_team(team.difference(subteam), ctx)?,
                team,
                subteam,
            }));
        }
    }
    Ok(None)
}

/// A recorded non-entailment together with the team refuting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleBundle {
    pub id: &'static str,
    pub description: &'static str,
    pub context: Context,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub witness: Team,
}

impl CounterexampleBundle {
    pub fn recheck(&self) -> Result<EntailmentResult> {
        entails(&self.premises, &self.conclusion, &self.context)
    }

    /// The entailment fails, and the stored witness is its first counterexample.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.recheck()?.counterexample == Some(self.witness))
    }
}

pub const COUNTEREXAMPLE_IDS: [&str; 4] = ["example1", "example2-convex", "ne-union", "thm3-intersection"];

pub fn named_counterexample(id: &str) -> Result<CounterexampleBundle> {
    let ctx = Context::new(["p", "q"])?;
    let at = |p: bool, q: bool| ctx.valuation_index(&[p, q]).expect("two bits");
    let team = |vals: &[usize]| Team::from_valuations(vals.iter().copied());
    let f = |s: &str| crate::parse(s).expect("built-in formula");
    let theta = |t: Team| exact_team_formula(t, &ctx).expect("team over the context");
    let and = |a: &Formula, b: &Formula| Formula::and(a.clone(), b.clone());
    let bundle = |id, description, premises, conclusion, witness| CounterexampleBundle {
        id,
        description,
        context: ctx.clone(),
        premises,
        conclusion,
        witness,
    };
    Ok(match id {
        "example1" => bundle(
            "example1",
            "conjunction with nabla does not distribute over tensor disjunction",
            vec![f("nabla p /\\ (p \\/ q)")],
            f("(nabla p /\\ p) \\/ (nabla p /\\ q)"),
            team(&[at(true, false), at(false, true)]),
        ),
        "example2-convex" => bundle(
            "example2-convex",
            "conjunction does not distribute over outer disjunction; \
             the premise q ovv bdia ~p needs the superteam adding (p0,q0), so the context must contain p and q",
            vec![f("p"), f("q ovv bdia ~p"), f("bdia q")],
            f("(p /\\ q) ovv (p /\\ bdia ~p)"),
            team(&[at(true, true), at(true, false)]),
        ),
        "ne-union" => {
            let (u, v) = (at(true, false), at(false, true));
            let (tu, tv, tuv) = (theta(team(&[u])), theta(team(&[v])), theta(team(&[u, v])));
            bundle(
                "ne-union",
                "with exact team formulas the conjuncts of the right side are satisfied by no team",
                vec![and(&tuv, &Formula::tensor_or(tu.clone(), tv.clone()))],
                Formula::tensor_or(and(&tuv, &tu), and(&tuv, &tv)),
                team(&[u, v]),
            )
        }
        "thm3-intersection" => {
            let s = team(&[at(true, true), at(true, false)]);
            let t = team(&[at(true, true), at(false, true)]);
            let (ts, tt, tst) = (theta(s), theta(t), theta(s.intersection(t)));
            bundle(
                "thm3-intersection",
                "conjunction does not distribute over tensor conjunction; \
                 the intersection of S and T satisfies the premise and no team satisfies the conclusion",
                vec![and(&tst, &Formula::binary(BinaryOp::TensorAnd, ts.clone(), tt.clone()))],
                Formula::binary(BinaryOp::TensorAnd, and(&tst, &ts), and(&tst, &tt)),
                s.intersection(t),
            )
        }
        _ => return Err(Error::Unknown { kind: "counterexample", name: id.into() }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{has_property, ClosureProperty};
    use crate::parse;
    use crate::prop::TeamProposition;

    fn powerset(t: Team, valuations: usize) -> TeamProposition {
        TeamProposition::from_predicate(valuations, |s| s.is_subset(t)).unwrap()
    }

    #[test]
    fn flat_formula_examples() {
        let ctx = Context::new(["p", "q"]).unwrap();
        let u = Team::singleton(ctx.valuation_index(&[true, false]).unwrap());
        assert_eq!(flat_formula_for_team(u, &ctx).unwrap().render(), "p /\\ ~q");
        assert_eq!(flat_formula_for_team(Team::EMPTY, &ctx).unwrap(), Formula::Bot);
        let all = flat_formula_for_team(ctx.full_team(), &ctx).unwrap();
        assert!(denotation(&all, &ctx).unwrap().is_full());
        assert_eq!(exact_team_formula(Team::EMPTY, &ctx).unwrap(), Formula::Bot);
    }

    #[test]
    fn team_formulas_define_their_teams() {
        for vars in [&["p"][..], &["p", "q"], &["p", "q", "r"]] {
            let ctx = Context::new(vars.iter().copied()).unwrap();
            let mut seen = Vec::new();
            for t in ctx.full_team().subteams() {
                let alpha = denotation(&flat_formula_for_team(t, &ctx).unwrap(), &ctx).unwrap();
                assert_eq!(alpha, powerset(t, ctx.num_valuations()));
                let theta = denotation(&exact_team_formula(t, &ctx).unwrap(), &ctx).unwrap();
                assert_eq!(theta.iter().collect::<Vec<_>>(), [t]);
                seen.push(theta);
            }
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), 1 << ctx.num_valuations());
        }
    }

    #[test]
    fn distributivity_witness_examples() {
        let ctx = Context::new(["p", "q"]).unwrap();
        for s in ["nabla p", "NE", "bdia q", "[1 <= p]", "p \\/ (q /\\ NE)"] {
            let f = parse(s).unwrap();
            let w = distributivity_witnesses(&f, &ctx).unwrap().unwrap();
            assert!(w.verify(&f, &ctx).unwrap(), "{s}");
            assert!(!w.recheck(&f, &ctx).unwrap().holds(), "{s}");
            assert!(!has_property(&denotation(&f, &ctx).unwrap(), ClosureProperty::Downward));
        }
        let ne = distributivity_witnesses(&parse("NE").unwrap(), &ctx).unwrap().unwrap();
        assert_eq!(ne.subteam, Team::EMPTY);
        assert_eq!(ne.team.len(), 1);
        assert!(distributivity_witnesses(&parse("p").unwrap(), &ctx).unwrap().is_none());
        for s in ["p -> q", "nabla top", "p ovv q"] {
            assert!(distributivity_witnesses(&parse(s).unwrap(), &ctx).unwrap().is_none(), "{s}");
        }
    }

    #[test]
    fn named_bundles_reverify() {
        for id in COUNTEREXAMPLE_IDS {
            let b = named_counterexample(id).unwrap();
            assert!(b.verify().unwrap(), "{id}: {:?}", b.recheck());
        }
        let b = named_counterexample("example1").unwrap();
        assert_eq!(b.context.describe_team(b.witness), "{(p0,q1), (p1,q0)}");
        let b = named_counterexample("thm3-intersection").unwrap();
        assert_eq!(b.context.describe_team(b.witness), "{(p1,q1)}");
        assert!(denotation(&b.conclusion, &b.context).unwrap().is_empty());
        assert!(eval(&b.premises[0], b.witness, &b.context).unwrap());
        let b = named_counterexample("example2-convex").unwrap();
        assert_eq!(b.context.describe_team(b.witness), "{(p1,q0), (p1,q1)}");
        assert!(matches!(named_counterexample("nope"), Err(Error::Unknown { .. })));
    }
}
