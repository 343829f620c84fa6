//! Closure properties of team propositions.
//!
//! The checks here work on per-team tables (the union of the members below a
//! team, the intersection of the members above it) rather than on the
//! proposition transformers of the evaluator, so that they can serve as an
//! independent cross-check of the characterisation results.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::prop::TeamProposition;
use crate::semantics::{denotation, entails, entails_props, apply_binary};
use crate::synthesis::distributivity_witnesses;
use crate::syntax::{BinaryOp, Formula, UnaryOp};
use crate::team::Team;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosureProperty {
    /// `∅ ∈ P`.
    EmptyTeam,
    /// `T ∈ P` and `S ⊆ T` imply `S ∈ P`.
    Downward,
    /// `T ∈ P` and `T ⊆ S` imply `S ∈ P`.
    Upward,
    /// `S, T ∈ P` imply `S ∪ T ∈ P`.
    UnionClosed,
    /// `S, T ∈ P` imply `S ∩ T ∈ P`.
    IntersectionClosed,
    /// `S, T ∈ P` and `S ⊆ R ⊆ T` imply `R ∈ P`.
    Convex,
    /// `T ∈ P` iff `{v} ∈ P` for every `v ∈ T`.
    Flat,
}

impl ClosureProperty {
    pub const ALL: [ClosureProperty; 7] = [
        ClosureProperty::EmptyTeam,
        ClosureProperty::Downward,
        ClosureProperty::Upward,
        ClosureProperty::UnionClosed,
        ClosureProperty::IntersectionClosed,
        ClosureProperty::Convex,
        ClosureProperty::Flat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosureProperty::EmptyTeam => "empty-team",
            ClosureProperty::Downward => "downward",
            ClosureProperty::Upward => "upward",
            ClosureProperty::UnionClosed => "union",
            ClosureProperty::IntersectionClosed => "intersection",
            ClosureProperty::Convex => "convex",
            ClosureProperty::Flat => "flat",
        }
    }

    pub fn from_name(name: &str) -> Result<ClosureProperty> {
        ClosureProperty::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Unknown { kind: "closure property", name: name.into() })
    }
}

impl fmt::Display for ClosureProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Teams showing that a proposition lacks a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The empty team is not a member.
    EmptyTeam,
    /// `member ∈ P`, `missing ⊆ member` (downward) or `missing ⊇ member`
    /// (upward), `missing ∉ P`.
    Missing { member: Team, missing: Team },
    /// `a, b ∈ P` but their union or intersection is not.
    Pair { a: Team, b: Team },
    /// `low, high ∈ P`, `low ⊆ mid ⊆ high`, `mid ∉ P`.
    Between { low: Team, mid: Team, high: Team },
    /// Membership of `team` differs from "all its singletons are members".
    Flat { team: Team },
}

impl Witness {
    pub fn teams(&self) -> Vec<Team> {
        match *self {
            Witness::EmptyTeam => vec![Team::EMPTY],
            Witness::Missing { member, missing } => vec![member, missing],
            Witness::Pair { a, b } => vec![a, b],
            Witness::Between { low, mid, high } => vec![low, mid, high],
            Witness::Flat { team } => vec![team],
        }
    }

    /// The team whose membership breaks the property: the missing team,
    /// the missing union or intersection, or the team itself.
    pub fn culprit(&self, kind: ClosureProperty) -> Team {
        match *self {
            Witness::EmptyTeam => Team::EMPTY,
            Witness::Missing { missing, .. } => missing,
            Witness::Pair { a, b } if kind == ClosureProperty::IntersectionClosed => a.intersection(b),
            Witness::Pair { a, b } => a.union(b),
            Witness::Between { mid, .. } => mid,
            Witness::Flat { team } => team,
        }
    }

    pub fn describe(&self, ctx: &Context) -> String {
        let t = |team| ctx.describe_team(team);
        match *self {
            Witness::EmptyTeam => "the empty team is not a member".into(),
            Witness::Missing { member, missing } => {
                format!("{} is a member but {} is not", t(member), t(missing))
            }
            Witness::Pair { a, b } => format!("{} and {} are members", t(a), t(b)),
            Witness::Between { low, mid, high } => {
                format!("{} and {} are members but {} is not", t(low), t(high), t(mid))
            }
            Witness::Flat { team } => format!("membership of {} differs from its singletons", t(team)),
        }
    }

    /// Re-checks the witness against `p` directly from the definition.
    pub fn violates(&self, p: &TeamProposition, kind: ClosureProperty) -> bool {
        use ClosureProperty::*;
        match (*self, kind) {
            (Witness::EmptyTeam, EmptyTeam) => !p.contains(Team::EMPTY),
            (Witness::Missing { member, missing }, Downward) => {
                p.contains(member) && missing.is_subset(member) && !p.contains(missing)
            }
            (Witness::Missing { member, missing }, Upward) => {
                p.contains(member) && member.is_subset(missing) && !p.contains(missing)
            }
            (Witness::Pair { a, b }, UnionClosed) => p.contains(a) && p.contains(b) && !p.contains(a.union(b)),
            (Witness::Pair { a, b }, IntersectionClosed) => {
                p.contains(a) && p.contains(b) && !p.contains(a.intersection(b))
            }
            (Witness::Between { low, mid, high }, Convex) => {
                p.contains(low) && p.contains(high) && low.is_subset(mid) && mid.is_subset(high) && !p.contains(mid)
            }
            (Witness::Flat { team }, Flat) => p.contains(team) != singletons_in(p, team),
            _ => false,
        }
    }
}

fn singletons_in(p: &TeamProposition, t: Team) -> bool {
    t.members().all(|v| p.contains(Team::singleton(v)))
}

/// Per-team summaries of a proposition.
struct Tables {
    /// Union of the members below each team, if any.
    below: Vec<Option<Team>>,
    /// Intersection of the members above each team, if any.
    above: Vec<Option<Team>>,
}

impl Tables {
    fn new(p: &TeamProposition) -> Tables {
        let n = p.num_teams();
        let mut below: Vec<Option<Team>> = vec![None; n];
        let mut above: Vec<Option<Team>> = vec![None; n];
        for t in p.iter() {
            below[t.bits() as usize] = Some(t);
            above[t.bits() as usize] = Some(t);
        }
        for i in 0..p.num_valuations() {
            let bit = 1usize << i;
            for t in 0..n {
                if t & bit == 0 {
                    below[t | bit] = merge(below[t | bit], below[t], Team::union);
                    above[t] = merge(above[t], above[t | bit], Team::intersection);
                }
            }
        }
        Tables { below, above }
    }
}

fn merge(a: Option<Team>, b: Option<Team>, f: fn(Team, Team) -> Team) -> Option<Team> {
    match (a, b) {
        (Some(x), Some(y)) => Some(f(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn first_member(p: &TeamProposition, pred: impl Fn(Team) -> bool) -> Option<Team> {
    p.iter().find(|&t| pred(t))
}

/// Decides `kind` for `p`; on failure returns the first violation in
/// ascending team order.
pub fn check(p: &TeamProposition, kind: ClosureProperty) -> Option<Witness> {
    use ClosureProperty::*;
    let teams = || (0..p.num_teams() as u64).map(Team::from_bits);
    match kind {
        EmptyTeam => (!p.contains(Team::EMPTY)).then_some(Witness::EmptyTeam),
        Flat => teams().find(|&t| p.contains(t) != singletons_in(p, t)).map(|team| Witness::Flat { team }),
        _ => {
            let tables = Tables::new(p);
            let has_below = |t: Team| tables.below[t.bits() as usize].is_some();
            let has_above = |t: Team| tables.above[t.bits() as usize].is_some();
            let missing = |t: Team| !p.contains(t);
            match kind {
                Downward => teams().find(|&t| missing(t) && has_above(t)).map(|m| Witness::Missing {
                    member: first_member(p, |s| m.is_subset(s)).expect("a member above"),
                    missing: m,
                }),
                Upward => teams().find(|&t| missing(t) && has_below(t)).map(|m| Witness::Missing {
                    member: first_member(p, |s| s.is_subset(m)).expect("a member below"),
                    missing: m,
                }),
                Convex => teams().find(|&t| missing(t) && has_below(t) && has_above(t)).map(|m| {
                    Witness::Between {
                        low: first_member(p, |s| s.is_subset(m)).expect("a member below"),
                        mid: m,
                        high: first_member(p, |s| m.is_subset(s)).expect("a member above"),
                    }
                }),
                UnionClosed => teams()
                    .find(|&t| missing(t) && tables.below[t.bits() as usize] == Some(t))
                    .map(|m| {
                        let (a, b) = covering_pair(p, m, true);
                        Witness::Pair { a, b }
                    }),
                IntersectionClosed => teams()
                    .find(|&t| missing(t) && tables.above[t.bits() as usize] == Some(t))
                    .map(|m| {
                        let (a, b) = covering_pair(p, m, false);
                        Witness::Pair { a, b }
                    }),
                EmptyTeam | Flat => unreachable!(),
            }
        }
    }
}

/// Two members combining outside `p`. `target` is a non-member that is the
/// union (or intersection) of all members below (above) it, so folding
/// those members pairwise must leave `p` at some step.
fn covering_pair(p: &TeamProposition, target: Team, union: bool) -> (Team, Team) {
    let op = if union { Team::union } else { Team::intersection };
    let related: Vec<Team> =
        p.iter().filter(|&s| if union { s.is_subset(target) } else { target.is_subset(s) }).collect();
    for &a in &related {
        for &b in &related {
            if !p.contains(op(a, b)) {
                return (a, b);
            }
        }
    }
    // Every pair combines inside `p`; grow a member until it leaves `p`.
    let mut acc = related[0];
    for &b in &related[1..] {
        let next = op(acc, b);
        if !p.contains(next) {
            return (acc, b);
        }
        acc = next;
    }
    unreachable!("target is not a member but is a combination of members")
}

pub fn has_property(p: &TeamProposition, kind: ClosureProperty) -> bool {
    check(p, kind).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub property: ClosureProperty,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub formula: Formula,
    pub context: Context,
    pub properties: Vec<PropertyResult>,
}

impl ClosureReport {
    pub fn holds(&self, kind: ClosureProperty) -> bool {
        self.properties.iter().any(|r| r.property == kind && r.holds)
    }
}

pub fn profile(p: &TeamProposition) -> Vec<PropertyResult> {
    ClosureProperty::ALL
        .into_iter()
        .map(|property| {
            let witness = check(p, property);
            PropertyResult { property, holds: witness.is_none(), witness }
        })
        .collect()
}

pub fn closure_profile(f: &Formula, ctx: &Context) -> Result<ClosureReport> {
    let p = denotation(f, ctx)?;
    Ok(ClosureReport { formula: f.clone(), context: ctx.clone(), properties: profile(&p) })
}

/// The characterisation results relating closure properties to entailments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Characterization {
    /// Union closed iff `φ ∨ φ ⊨ φ`.
    UnionIdem,
    /// Intersection closed iff `φ ⩕ φ ⊨ φ`.
    IntersectionIdem,
    /// Convex iff `◇φ, φ ⩒ φ ⊨ φ`.
    ConvexDia,
    /// Convex implies `◆φ, φ ⩒ φ ⊨ φ`; the converse when `∅ ⊭ φ`.
    ConvexBdiaForward,
    /// Downward closed iff `φ ∧ (ψ ∨ χ) ⊨ (φ ∧ ψ) ∨ (φ ∧ χ)` for all ψ, χ.
    DownwardDistr,
    /// Union closed iff `(φ ∧ ψ) ∨ (φ ∧ χ) ⊨ φ ∧ (ψ ∨ χ)` for all ψ, χ.
    UnionConvDistr,
}

impl Characterization {
    pub const ALL: [Characterization; 6] = [
        Characterization::UnionIdem,
        Characterization::IntersectionIdem,
        Characterization::ConvexDia,
        Characterization::ConvexBdiaForward,
        Characterization::DownwardDistr,
        Characterization::UnionConvDistr,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Characterization::UnionIdem => "union-idem",
            Characterization::IntersectionIdem => "intersection-idem",
            Characterization::ConvexDia => "convex-dia",
            Characterization::ConvexBdiaForward => "convex-bdia-forward",
            Characterization::DownwardDistr => "downward-distr",
            Characterization::UnionConvDistr => "union-conv-distr",
        }
    }

    pub fn from_id(id: &str) -> Result<Characterization> {
        Characterization::ALL
            .into_iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| Error::Unknown { kind: "characterization", name: id.into() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub formula: Formula,
    /// Verdict of the closure checker.
    pub property: bool,
    /// Verdict of the entailment side.
    pub entailment: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub id: Characterization,
    pub pool: String,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Checks characterisations over a fixed formula pool; the pool also
/// supplies the `ψ, χ` instances of the distributivity laws.
pub struct CharacterizationChecker {
    ctx: Context,
    pool: Vec<Formula>,
    props: Vec<TeamProposition>,
    description: String,
}

impl CharacterizationChecker {
    pub fn new(ctx: &Context, pool: Vec<Formula>, description: impl Into<String>) -> Result<Self> {
        let props = pool.iter().map(|f| denotation(f, ctx)).collect::<Result<Vec<_>>>()?;
        Ok(CharacterizationChecker { ctx: ctx.clone(), pool, props, description: description.into() })
    }

    pub fn pool(&self) -> &[Formula] {
        &self.pool
    }

    /// Both sides of `id` for `f` (closure checker, entailment side) and
    /// whether they agree as the characterisation claims.
    pub fn sides(&self, id: Characterization, f: &Formula) -> Result<(bool, bool, bool)> {
        use Characterization::*;
        let ctx = &self.ctx;
        let fp = denotation(f, ctx)?;
        let bin = |op, a: &Formula, b: &Formula| Formula::binary(op, a.clone(), b.clone());
        let un = |op, a: &Formula| Formula::unary(op, a.clone());
        let (property, entailment) = match id {
            UnionIdem => (
                has_property(&fp, ClosureProperty::UnionClosed),
                entails(&[bin(BinaryOp::TensorOr, f, f)], f, ctx)?.holds(),
            ),
            IntersectionIdem => (
                has_property(&fp, ClosureProperty::IntersectionClosed),
                entails(&[bin(BinaryOp::TensorAnd, f, f)], f, ctx)?.holds(),
            ),
            ConvexDia => (
                has_property(&fp, ClosureProperty::Convex),
                entails(&[un(UnaryOp::Dia, f), bin(BinaryOp::OuterGlobalOr, f, f)], f, ctx)?.holds(),
            ),
            ConvexBdiaForward => {
                let convex = has_property(&fp, ClosureProperty::Convex);
                let ent = entails(&[un(UnaryOp::BlackDia, f), bin(BinaryOp::OuterGlobalOr, f, f)], f, ctx)?.holds();
                if fp.contains(Team::EMPTY) {
                    return Ok((convex, ent, !convex || ent));
                }
                (convex, ent)
            }
            DownwardDistr => {
                let downward = has_property(&fp, ClosureProperty::Downward);
                let mut distributes = self.pairs_pass(&fp, |fp, a, b| {
                    let lhs = fp.intersection(&apply_binary(BinaryOp::TensorOr, a, b));
                    let rhs = apply_binary(BinaryOp::TensorOr, &fp.intersection(a), &fp.intersection(b));
                    entails_props(&[lhs], &rhs).holds()
                });
                if distributes {
                    if let Some(w) = distributivity_witnesses(f, ctx)? {
                        distributes = w.recheck(f, ctx)?.holds();
                    }
                }
                (downward, distributes)
            }
            UnionConvDistr => {
                let union = has_property(&fp, ClosureProperty::UnionClosed);
                let distributes = self.pairs_pass(&fp, |fp, a, b| {
                    let lhs = apply_binary(BinaryOp::TensorOr, &fp.intersection(a), &fp.intersection(b));
                    let rhs = fp.intersection(&apply_binary(BinaryOp::TensorOr, a, b));
                    entails_props(&[lhs], &rhs).holds()
                });
                (union, distributes)
            }
        };
        Ok((property, entailment, property == entailment))
    }

    /// Does `law` hold for every ordered pool pair?
    fn pairs_pass(
        &self,
        fp: &TeamProposition,
        law: impl Fn(&TeamProposition, &TeamProposition, &TeamProposition) -> bool,
    ) -> bool {
        self.props.iter().all(|a| self.props.iter().all(|b| law(fp, a, b)))
    }

    /// Runs `id` over every pool formula.
    pub fn run(&self, id: Characterization) -> Result<AgreementReport> {
        let mut agreements = 0;
        let mut disagreements = Vec::new();
        for f in &self.pool {
            let (property, entailment, agree) = self.sides(id, f)?;
            if agree {
                agreements += 1;
            } else {
                disagreements.push(Disagreement { formula: f.clone(), property, entailment });
            }
        }
        Ok(AgreementReport { id, pool: self.description.clone(), agreements, disagreements })
    }
}

/// Checks `id` for a single formula, with `pool` supplying distributivity instances.
pub fn check_characterization(
    f: &Formula,
    ctx: &Context,
    id: Characterization,
    pool: &[Formula],
) -> Result<AgreementReport> {
    let checker = CharacterizationChecker::new(ctx, pool.to_vec(), format!("{} formulas", pool.len()))?;
    let (property, entailment, agree) = checker.sides(id, f)?;
    let disagreements = if agree {
        Vec::new()
    } else {
        vec![Disagreement { formula: f.clone(), property, entailment }]
    };
    Ok(AgreementReport {
        id,
        pool: checker.description,
        agreements: usize::from(disagreements.is_empty()),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;
    use proptest::prelude::*;

    fn naive(p: &TeamProposition, kind: ClosureProperty) -> bool {
        use ClosureProperty::*;
        let members: Vec<Team> = p.iter().collect();
        let all = || (0..p.num_teams() as u64).map(Team::from_bits);
        match kind {
            EmptyTeam => p.contains(Team::EMPTY),
            Downward => members.iter().all(|t| t.subteams().all(|s| p.contains(s))),
            Upward => members.iter().all(|t| all().filter(|s| t.is_subset(*s)).all(|s| p.contains(s))),
            UnionClosed => members.iter().all(|a| members.iter().all(|b| p.contains(a.union(*b)))),
            IntersectionClosed => members.iter().all(|a| members.iter().all(|b| p.contains(a.intersection(*b)))),
            Convex => members.iter().all(|lo| {
                members.iter().all(|hi| !lo.is_subset(*hi) || lo.superteams(*hi).all(|r| p.contains(r)))
            }),
            Flat => all().all(|t| p.contains(t) == singletons_in(p, t)),
        }
    }

    fn prop(valuations: usize, teams: &[u64]) -> TeamProposition {
        let mut p = TeamProposition::with_valuations(valuations).unwrap();
        for &t in teams {
            p.insert(Team::from_bits(t));
        }
        p
    }

    proptest! {
        #[test]
        fn checks_match_definitions(valuations in 1usize..=4, teams in proptest::collection::vec(any::<u64>(), 0..14)) {
            let p = prop(valuations, &teams.iter().map(|t| t % (1 << valuations)).collect::<Vec<_>>());
            for kind in ClosureProperty::ALL {
                let w = check(&p, kind);
                prop_assert_eq!(w.is_none(), naive(&p, kind), "{} on {:?}", kind, p);
                if let Some(w) = w {
                    prop_assert!(w.violates(&p, kind), "{:?} for {} on {:?}", w, kind, p);
                }
            }
        }

        #[test]
        fn implications_between_properties(teams in proptest::collection::vec(0u64..16, 0..10)) {
            use ClosureProperty::*;
            let p = prop(4, &teams);
            let h = |k| has_property(&p, k);
            prop_assert!(!h(Downward) || h(Convex));
            prop_assert!(!h(Upward) || h(UnionClosed));
            prop_assert!(!h(Downward) || h(IntersectionClosed));
            prop_assert_eq!(h(Flat), h(Downward) && h(UnionClosed) && h(EmptyTeam));
        }
    }

    #[test]
    fn hand_built_propositions() {
        use ClosureProperty::*;
        // Everything above T = {0} or above S = {1}.
        let (t, s) = (0b0001u64, 0b0010u64);
        let p1 = TeamProposition::from_predicate(4, |r| r.bits() & t == t || r.bits() & s == s).unwrap();
        assert!(has_property(&p1, Upward));
        assert_eq!(check(&p1, IntersectionClosed), Some(Witness::Pair { a: Team::from_bits(1), b: Team::from_bits(2) }));
        let (t, s) = (0b0011u64, 0b0110u64);
        let p2 = prop(4, &[t, s, t & s]);
        assert!(has_property(&p2, IntersectionClosed));
        assert!(!has_property(&p2, Upward));
        assert!(!has_property(&p2, Downward));
        let empty = prop(4, &[]);
        for kind in ClosureProperty::ALL {
            assert_eq!(has_property(&empty, kind), !matches!(kind, EmptyTeam | Flat), "{kind}");
        }
    }

    #[test]
    fn formula_profiles() {
        use ClosureProperty::*;
        let ctx = Context::new(["p", "q"]).unwrap();
        // Every team satisfies `nabla top`, so it is trivially downward closed.
        let report = closure_profile(&parse("nabla top").unwrap(), &ctx).unwrap();
        assert!(report.holds(Downward));
        let report = closure_profile(&parse("nabla p").unwrap(), &ctx).unwrap();
        assert!(!report.holds(Downward));
        let report = closure_profile(&parse("NE").unwrap(), &ctx).unwrap();
        assert!(report.holds(Upward) && report.holds(UnionClosed) && !report.holds(EmptyTeam));
        assert!(closure_profile(&parse("p").unwrap(), &ctx).unwrap().holds(Flat));
        let report = closure_profile(&parse("p vv q").unwrap(), &ctx).unwrap();
        let union = report.properties.iter().find(|r| r.property == UnionClosed).unwrap();
        let p = denotation(&parse("p vv q").unwrap(), &ctx).unwrap();
        assert!(union.witness.unwrap().violates(&p, UnionClosed));
    }

    #[test]
    fn single_formula_characterizations() {
        let ctx = Context::new(["p", "q"]).unwrap();
        let f = |s: &str| parse(s).unwrap();
        let pool = [f("p"), f("q"), f("~p"), f("p \\/ q")];
        let r = check_characterization(&f("nabla p"), &ctx, Characterization::UnionIdem, &pool).unwrap();
        assert!(r.passed());
        let checker = CharacterizationChecker::new(&ctx, pool.to_vec(), "small").unwrap();
        assert_eq!(checker.sides(Characterization::UnionIdem, &f("nabla p")).unwrap(), (true, true, true));
        assert_eq!(checker.sides(Characterization::UnionIdem, &f("p vv q")).unwrap(), (false, false, true));
        assert_eq!(checker.sides(Characterization::IntersectionIdem, &f("bot")).unwrap(), (true, true, true));
        for id in Characterization::ALL {
            assert!(checker.run(id).unwrap().passed(), "{}", id.id());
            assert_eq!(Characterization::from_id(id.id()).unwrap(), id);
        }
    }
}
