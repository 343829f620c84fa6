//! Inference schemas for a conditional, checked over every pool instance.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::pool::Pool;
use crate::closure::{has_property, ClosureProperty};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::prop::TeamProposition;
use crate::semantics::{apply_binary, entails, entails_props};
use crate::syntax::{BinaryOp, Formula};
use crate::team::Team;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemaKind {
    ModusPonens,
    DeductionTheorem,
    IntroductionRule,
    StrongTransitivity,
    WeakTransitivity,
    IntermediateTransitivity,
    AntecedentStrengthening,
    Importation,
    Exportation,
    Monotonicity,
}

impl SchemaKind {
    pub const ALL: [SchemaKind; 10] = [
        SchemaKind::ModusPonens,
        SchemaKind::DeductionTheorem,
        SchemaKind::IntroductionRule,
        SchemaKind::StrongTransitivity,
        SchemaKind::WeakTransitivity,
        SchemaKind::IntermediateTransitivity,
        SchemaKind::AntecedentStrengthening,
        SchemaKind::Importation,
        SchemaKind::Exportation,
        SchemaKind::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemaKind::ModusPonens => "modus-ponens",
            SchemaKind::DeductionTheorem => "deduction-theorem",
            SchemaKind::IntroductionRule => "introduction-rule",
            SchemaKind::StrongTransitivity => "strong-transitivity",
            SchemaKind::WeakTransitivity => "weak-transitivity",
            SchemaKind::IntermediateTransitivity => "intermediate-transitivity",
            SchemaKind::AntecedentStrengthening => "antecedent-strengthening",
            SchemaKind::Importation => "importation",
            SchemaKind::Exportation => "exportation",
            SchemaKind::Monotonicity => "monotonicity",
        }
    }

    pub fn from_name(name: &str) -> Result<SchemaKind> {
        SchemaKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Unknown { kind: "schema", name: name.into() })
    }

    /// The schema as a rule, with `>` for the conditional.
    pub fn statement(self) -> &'static str {
        match self {
            SchemaKind::ModusPonens => "φ, φ>ψ ⊨ ψ",
            SchemaKind::DeductionTheorem => "if Γ, φ ⊨ ψ then Γ ⊨ φ>ψ (|Γ| ≤ 1)",
            SchemaKind::IntroductionRule => "if φ ⊨ ψ then ⊨ φ>ψ",
            SchemaKind::StrongTransitivity => "φ>ψ, ψ>χ ⊨ φ>χ",
            SchemaKind::WeakTransitivity => "if ⊨ φ>ψ and ⊨ ψ>χ then ⊨ φ>χ",
            SchemaKind::IntermediateTransitivity => "if ⊨ φ>ψ then ψ>χ ⊨ φ>χ",
            SchemaKind::AntecedentStrengthening => "φ>ψ ⊨ (φ∧χ)>ψ",
            SchemaKind::Importation => "φ>(ψ>χ) ⊨ (φ∧ψ)>χ",
            SchemaKind::Exportation => "(φ∧ψ)>χ ⊨ φ>(ψ>χ)",
            SchemaKind::Monotonicity => "if ψ ⊨ ψ' then φ>ψ ⊨ φ>ψ' and ψ'>φ ⊨ ψ>φ",
        }
    }

    fn templates(self) -> Vec<Template> {
        use Role::*;
        use Term::*;
        let c = |a: Term, b: Term| Cond(Box::new(a), Box::new(b));
        let and = |a: Term, b: Term| And(Box::new(a), Box::new(b));
        let seq = |premises: Vec<Term>, conclusion: Term| TermSequent { premises, conclusion };
        let (x, y, z) = (|| Slot(0), || Slot(1), || Slot(2));
        match self {
            SchemaKind::ModusPonens => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Consequent)],
                hypotheses: vec![],
                conclusion: seq(vec![x(), c(x(), y())], y()),
            }],
            SchemaKind::DeductionTheorem => vec![
                Template {
                    slots: vec![("φ", Antecedent), ("ψ", Consequent)],
                    hypotheses: vec![seq(vec![x()], y())],
                    conclusion: seq(vec![], c(x(), y())),
                },
                Template {
                    slots: vec![("γ", Context), ("φ", Antecedent), ("ψ", Consequent)],
                    hypotheses: vec![seq(vec![x(), y()], z())],
                    conclusion: seq(vec![x()], c(y(), z())),
                },
            ],
            SchemaKind::IntroductionRule => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Consequent)],
                hypotheses: vec![seq(vec![x()], y())],
                conclusion: seq(vec![], c(x(), y())),
            }],
            SchemaKind::StrongTransitivity => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Middle), ("χ", Consequent)],
                hypotheses: vec![],
                conclusion: seq(vec![c(x(), y()), c(y(), z())], c(x(), z())),
            }],
            SchemaKind::WeakTransitivity => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Middle), ("χ", Consequent)],
                hypotheses: vec![seq(vec![], c(x(), y())), seq(vec![], c(y(), z()))],
                conclusion: seq(vec![], c(x(), z())),
            }],
            SchemaKind::IntermediateTransitivity => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Middle), ("χ", Consequent)],
                hypotheses: vec![seq(vec![], c(x(), y()))],
                conclusion: seq(vec![c(y(), z())], c(x(), z())),
            }],
            SchemaKind::AntecedentStrengthening => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Consequent), ("χ", Middle)],
                hypotheses: vec![],
                conclusion: seq(vec![c(x(), y())], c(and(x(), z()), y())),
            }],
            SchemaKind::Importation => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Antecedent), ("χ", Consequent)],
                hypotheses: vec![],
                conclusion: seq(vec![c(x(), c(y(), z()))], c(and(x(), y()), z())),
            }],
            SchemaKind::Exportation => vec![Template {
                slots: vec![("φ", Antecedent), ("ψ", Antecedent), ("χ", Consequent)],
                hypotheses: vec![],
                conclusion: seq(vec![c(and(x(), y()), z())], c(x(), c(y(), z()))),
            }],
            SchemaKind::Monotonicity => vec![
                Template {
                    slots: vec![("φ", Antecedent), ("ψ", Consequent), ("ψ'", Consequent)],
                    hypotheses: vec![seq(vec![y()], z())],
                    conclusion: seq(vec![c(x(), y())], c(x(), z())),
                },
                Template {
                    slots: vec![("φ", Consequent), ("ψ", Antecedent), ("ψ'", Antecedent)],
                    hypotheses: vec![seq(vec![y()], z())],
                    conclusion: seq(vec![c(z(), x())], c(y(), x())),
                },
            ],
        }
    }
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The position a schema variable occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Antecedent,
    Consequent,
    /// The side premise `γ` of the deduction theorem.
    Context,
    /// Variables that are neither (the middle term of transitivity, the
    /// added conjunct of antecedent strengthening).
    Middle,
    /// Every variable of the schema.
    Every,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Antecedent => "antecedent",
            Role::Consequent => "consequent",
            Role::Context => "context",
            Role::Middle => "middle",
            Role::Every => "every",
        }
    }
}

/// Restricts a schema to instances whose variables in `role` have `property`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleFilter {
    pub role: Role,
    pub property: ClosureProperty,
}

impl RoleFilter {
    pub fn new(role: Role, property: ClosureProperty) -> RoleFilter {
        RoleFilter { role, property }
    }

    /// E.g. `antecedent-downward-closed`.
    pub fn name(&self) -> String {
        format!("{}-{}-closed", self.role.name(), self.property.name())
    }

    pub fn parse(name: &str) -> Result<RoleFilter> {
        let unknown = || Error::Unknown { kind: "filter", name: name.into() };
        let rest = name.strip_suffix("-closed").ok_or_else(unknown)?;
        let (role, property) = rest.split_once('-').ok_or_else(unknown)?;
        let role = [Role::Antecedent, Role::Consequent, Role::Context, Role::Middle, Role::Every]
            .into_iter()
            .find(|r| r.name() == role)
            .ok_or_else(unknown)?;
        Ok(RoleFilter { role, property: ClosureProperty::from_name(property).map_err(|_| unknown())? })
    }

    fn applies(&self, role: Role) -> bool {
        self.role == Role::Every || self.role == role
    }
}

#[derive(Debug, Clone)]
enum Term {
    Slot(usize),
    And(Box<Term>, Box<Term>),
    Cond(Box<Term>, Box<Term>),
}

impl Term {
    fn formula(&self, op: BinaryOp, slots: &[&Formula]) -> Formula {
        match self {
            Term::Slot(i) => slots[*i].clone(),
            Term::And(a, b) => Formula::and(a.formula(op, slots), b.formula(op, slots)),
            Term::Cond(a, b) => Formula::binary(op, a.formula(op, slots), b.formula(op, slots)),
        }
    }

    fn prop(&self, op: BinaryOp, slots: &[&TeamProposition], cache: &CondCache) -> TeamProposition {
        match self {
            Term::Slot(i) => slots[*i].clone(),
            Term::And(a, b) => a.prop(op, slots, cache).intersection(&b.prop(op, slots, cache)),
            Term::Cond(a, b) => match (&**a, &**b) {
                (Term::Slot(i), Term::Slot(j)) => cache.get(slots[*i], slots[*j]),
                _ => apply_binary(op, &a.prop(op, slots, cache), &b.prop(op, slots, cache)),
            },
        }
    }
}

/// Conditional applied to pairs of pool members, computed once.
struct CondCache<'a> {
    pool: &'a Pool,
    index: alloc::collections::BTreeMap<&'a TeamProposition, usize>,
    table: Vec<TeamProposition>,
    op: BinaryOp,
}

impl<'a> CondCache<'a> {
    fn new(pool: &'a Pool, op: BinaryOp) -> CondCache<'a> {
        let index = pool.entries.iter().enumerate().map(|(i, e)| (&e.denotation, i)).collect();
        let mut table = Vec::with_capacity(pool.len() * pool.len());
        for a in &pool.entries {
            for b in &pool.entries {
                table.push(apply_binary(op, &a.denotation, &b.denotation));
            }
        }
        CondCache { pool, index, table, op }
    }

    fn get(&self, a: &TeamProposition, b: &TeamProposition) -> TeamProposition {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.table[i * self.pool.len() + j].clone(),
            _ => apply_binary(self.op, a, b),
        }
    }
}

#[derive(Debug, Clone)]
struct TermSequent {
    premises: Vec<Term>,
    conclusion: Term,
}

#[derive(Debug, Clone)]
struct Template {
    slots: Vec<(&'static str, Role)>,
    hypotheses: Vec<TermSequent>,
    conclusion: TermSequent,
}

/// `premises ⊨ conclusion` over concrete formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    fn build(s: &TermSequent, op: BinaryOp, slots: &[&Formula]) -> Sequent {
        Sequent {
            premises: s.premises.iter().map(|t| t.formula(op, slots)).collect(),
            conclusion: s.conclusion.formula(op, slots),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|= {}", self.conclusion)
    }
}

/// An instance whose hypotheses hold while its conclusion fails at `team`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaCounterexample {
    pub assignment: Vec<(&'static str, Formula)>,
    pub hypotheses: Vec<Sequent>,
    pub failure: Sequent,
    pub team: Team,
}

impl SchemaCounterexample {
    /// Re-runs every entailment of the instance with the formula-level engine.
    pub fn verify(&self, ctx: &Context) -> Result<bool> {
        for h in &self.hypotheses {
            if !entails(&h.premises, &h.conclusion, ctx)?.holds() {
                return Ok(false);
            }
        }
        Ok(entails(&self.failure.premises, &self.failure.conclusion, ctx)?.counterexample == Some(self.team))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    /// No counterexample among the checked instances; not a proof.
    ConsistentBounded,
    Refuted,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ConsistentBounded => "consistent-bounded",
            Verdict::Refuted => "refuted",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaReport {
    pub conditional: BinaryOp,
    pub schema: SchemaKind,
    pub filters: Vec<RoleFilter>,
    /// Instances passing the filters whose conclusion was checked.
    pub instances: usize,
    /// The first counterexample in instance order; checking stops there.
    pub counterexample: Option<SchemaCounterexample>,
}

impl SchemaReport {
    pub fn verdict(&self) -> Verdict {
        if self.counterexample.is_some() {
            Verdict::Refuted
        } else {
            Verdict::ConsistentBounded
        }
    }
}

pub(crate) fn require_conditional(op: BinaryOp) -> Result<()> {
    if op.is_conditional() {
        Ok(())
    } else {
        Err(Error::Unknown { kind: "conditional", name: op.token().into() })
    }
}

/// Instantiates `kind` over every tuple of pool members (in lexicographic
/// order of pool positions) that passes `filters`.
pub fn check_inference_schema(
    kind: SchemaKind,
    conditional: BinaryOp,
    pool: &Pool,
    filters: &[RoleFilter],
) -> Result<SchemaReport> {
    require_conditional(conditional)?;
    let cache = CondCache::new(pool, conditional);
    let n = pool.len();
    let passes: Vec<Vec<bool>> = pool
        .entries
        .iter()
        .map(|e| filters.iter().map(|f| has_property(&e.denotation, f.property)).collect())
        .collect();
    let mut instances = 0;
    for template in kind.templates() {
        let k = template.slots.len();
        let mut idx = vec![0usize; k];
        if n == 0 {
            continue;
        }
        loop {
            let allowed = template.slots.iter().zip(&idx).all(|(&(_, role), &i)| {
                filters.iter().zip(&passes[i]).all(|(f, &ok)| !f.applies(role) || ok)
            });
            if allowed {
                let props: Vec<&TeamProposition> = idx.iter().map(|&i| &pool.entries[i].denotation).collect();
                let holds = |s: &TermSequent| {
                    let premises: Vec<TeamProposition> =
                        s.premises.iter().map(|t| t.prop(conditional, &props, &cache)).collect();
                    entails_props(&premises, &s.conclusion.prop(conditional, &props, &cache))
                };
                if template.hypotheses.iter().all(|h| holds(h).holds()) {
                    instances += 1;
                    if let Some(team) = holds(&template.conclusion).counterexample {
                        let formulas: Vec<&Formula> = idx.iter().map(|&i| &pool.entries[i].formula).collect();
                        let counterexample = SchemaCounterexample {
                            assignment: template.slots.iter().zip(&formulas).map(|(s, f)| (s.0, (*f).clone())).collect(),
                            hypotheses: template.hypotheses.iter().map(|h| Sequent::build(h, conditional, &formulas)).collect(),
                            failure: Sequent::build(&template.conclusion, conditional, &formulas),
                            team,
                        };
                        return Ok(SchemaReport {
                            conditional,
                            schema: kind,
                            filters: filters.to_vec(),
                            instances,
                            counterexample: Some(counterexample),
                        });
                    }
                }
            }
            if !advance(&mut idx, n) {
                break;
            }
        }
    }
    Ok(SchemaReport { conditional, schema: kind, filters: filters.to_vec(), instances, counterexample: None })
}

/// Steps `idx` to the next tuple in lexicographic order; false after the last.
pub(crate) fn advance(idx: &mut [usize], n: usize) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < n {
            return true;
        }
        idx[pos] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::pool::{enumerate_pool, PoolSignature};
    use crate::parse;
    use alloc::string::ToString;
    use crate::semantics::denotation;
    use crate::ClosureProperty::*;

    fn default_pool() -> Pool {
        enumerate_pool(&PoolSignature::default_for(Context::standard(2).unwrap(), 3).unwrap()).unwrap()
    }

    fn atoms_pool() -> Pool {
        let sig = PoolSignature::new(Context::standard(2).unwrap(), vec![], 1).unwrap();
        enumerate_pool(&sig).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for k in SchemaKind::ALL {
            assert_eq!(SchemaKind::from_name(k.name()).unwrap(), k);
            assert!(!k.templates().is_empty());
        }
        let f = RoleFilter::parse("antecedent-downward-closed").unwrap();
        assert_eq!(f, RoleFilter::new(Role::Antecedent, Downward));
        assert_eq!(f.name(), "antecedent-downward-closed");
        assert_eq!(RoleFilter::parse("context-empty-team-closed").unwrap().property, EmptyTeam);
        assert!(RoleFilter::parse("antecedent-downward").is_err());
        assert!(RoleFilter::parse("sideways-downward-closed").is_err());
    }

    #[test]
    fn non_conditionals_are_rejected() {
        let pool = atoms_pool();
        for op in [BinaryOp::And, BinaryOp::TensorOr, BinaryOp::OuterGlobalOr] {
            assert!(matches!(
                check_inference_schema(SchemaKind::ModusPonens, op, &pool, &[]),
                Err(Error::Unknown { kind: "conditional", .. })
            ));
        }
    }

    #[test]
    fn linear_implication_fails_the_introduction_rule_at_p() {
        let r = check_inference_schema(SchemaKind::IntroductionRule, BinaryOp::LinImp, &atoms_pool(), &[]).unwrap();
        assert_eq!(r.verdict(), Verdict::Refuted);
        let c = r.counterexample.unwrap();
        let p = parse("p").unwrap();
        assert_eq!(c.assignment, [("φ", p.clone()), ("ψ", p)]);
        assert_eq!(c.failure.to_string(), "|= p lin-> p");
        assert!(c.verify(&Context::standard(2).unwrap()).unwrap());
    }

    #[test]
    fn spec_schema_examples() {
        let pool = default_pool();
        let dw = [RoleFilter::new(Role::Antecedent, Downward)];
        let mp = check_inference_schema(SchemaKind::ModusPonens, BinaryOp::IntImp, &pool, &dw).unwrap();
        assert_eq!(mp.verdict(), Verdict::ConsistentBounded);
        let downward = pool.entries.iter().filter(|e| has_property(&e.denotation, Downward)).count();
        assert_eq!(mp.instances, downward * pool.len());
        let mp = check_inference_schema(SchemaKind::ModusPonens, BinaryOp::MaxImp, &pool, &[]).unwrap();
        assert_eq!(mp.verdict(), Verdict::ConsistentBounded);
        assert_eq!(mp.instances, pool.len() * pool.len());
        let dt = check_inference_schema(SchemaKind::DeductionTheorem, BinaryOp::EpIndic, &pool, &[]).unwrap();
        assert_eq!(dt.verdict(), Verdict::ConsistentBounded);
    }

    #[test]
    fn well_behaved_conditionals_on_their_fragments() {
        let pool = default_pool();
        for (op, property) in [(BinaryOp::IntImp, Downward), (BinaryOp::UpImp, Upward)] {
            let every = [RoleFilter::new(Role::Every, property)];
            for kind in [SchemaKind::ModusPonens, SchemaKind::DeductionTheorem] {
                let r = check_inference_schema(kind, op, &pool, &every).unwrap();
                assert_eq!(r.verdict(), Verdict::ConsistentBounded, "{op:?} {kind:?}");
                assert!(r.instances > 0);
            }
        }
        let r = check_inference_schema(SchemaKind::DeductionTheorem, BinaryOp::IntImp, &pool, &[]).unwrap();
        let c = r.counterexample.expect("-> fails the deduction theorem on the full pool");
        assert!(c.verify(&pool.signature.context).unwrap());
    }

    #[test]
    fn ecf_and_rel_generalise_intuitionistic_implication_on_downward_antecedents() {
        let pool = default_pool();
        for a in pool.entries.iter().filter(|e| has_property(&e.denotation, Downward)) {
            for b in &pool.entries {
                let int = apply_binary(BinaryOp::IntImp, &a.denotation, &b.denotation);
                assert_eq!(apply_binary(BinaryOp::EpCf, &a.denotation, &b.denotation), int);
                assert_eq!(apply_binary(BinaryOp::RelImp, &a.denotation, &b.denotation), int);
            }
        }
    }

    #[test]
    fn minimal_implication_is_a_van_fraassen_conditional() {
        let pool = default_pool();
        for kind in [SchemaKind::ModusPonens, SchemaKind::IntroductionRule] {
            let r = check_inference_schema(kind, BinaryOp::MinImp, &pool, &[]).unwrap();
            assert_eq!(r.verdict(), Verdict::ConsistentBounded, "{kind:?}");
        }
    }

    #[test]
    fn relevant_conditional_invalidity() {
        let ctx = Context::standard(2).unwrap();
        let f = parse("bdia p rel-> bdia p").unwrap();
        let d = denotation(&f, &ctx).unwrap();
        assert!(!d.is_full());
        assert!(!entails(&[], &f, &ctx).unwrap().holds());
    }

    #[test]
    fn counterexamples_stop_the_search_and_are_deterministic() {
        let pool = default_pool();
        let a = check_inference_schema(SchemaKind::StrongTransitivity, BinaryOp::EpIndic, &pool, &[]).unwrap();
        let b = check_inference_schema(SchemaKind::StrongTransitivity, BinaryOp::EpIndic, &pool, &[]).unwrap();
        assert_eq!(a, b);
        let c = a.counterexample.unwrap();
        assert!(c.verify(&pool.signature.context).unwrap());
        assert_eq!(c.failure.premises.len(), 2);
    }

    #[test]
    fn advance_enumerates_tuples_lexicographically() {
        let mut idx = [0usize; 2];
        let mut seen = vec![idx];
        while advance(&mut idx, 3) {
            seen.push(idx);
        }
        assert_eq!(seen.len(), 9);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(idx, [0, 0]);
    }
}
