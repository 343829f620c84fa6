//! Abstract syntax, connective metadata, parsing and printing.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{ParseError, ParseErrorKind};

mod parse;
mod render;

pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryOp {
    /// `~`: every singleton of the team falsifies the argument.
    Neg,
    /// `nabla`: the team is empty or has a nonempty subteam satisfying the argument.
    Nabla,
    /// `bdia`: some nonempty subteam satisfies the argument.
    BlackDia,
    /// `dia`: some subteam (possibly empty) satisfies the argument.
    Dia,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryOp {
    And,
    TensorOr,
    GlobalOr,
    OuterGlobalOr,
    TensorAnd,
    IntImp,
    UpImp,
    MaxImp,
    MinImp,
    LinImp,
    RelImp,
    EpIndic,
    EpCf,
    EpCond,
    Entail,
}

/// Binding strength of a binary operator; larger binds tighter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Level {
    Conditional = 0,
    Disjunction = 1,
    Conjunction = 2,
    Unary = 3,
    Primary = 4,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [UnaryOp::Neg, UnaryOp::Nabla, UnaryOp::BlackDia, UnaryOp::Dia];

    pub fn token(self) -> &'static str {
        match self {
            UnaryOp::Neg => "~",
            UnaryOp::Nabla => "nabla",
            UnaryOp::BlackDia => "bdia",
            UnaryOp::Dia => "dia",
        }
    }
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 15] = [
        BinaryOp::And,
        BinaryOp::TensorOr,
        BinaryOp::GlobalOr,
        BinaryOp::OuterGlobalOr,
        BinaryOp::TensorAnd,
        BinaryOp::IntImp,
        BinaryOp::UpImp,
        BinaryOp::MaxImp,
        BinaryOp::MinImp,
        BinaryOp::LinImp,
        BinaryOp::RelImp,
        BinaryOp::EpIndic,
        BinaryOp::EpCf,
        BinaryOp::EpCond,
        BinaryOp::Entail,
    ];

    /// The conditionals, in the order used by reports.
    pub const CONDITIONALS: [BinaryOp; 10] = [
        BinaryOp::IntImp,
        BinaryOp::UpImp,
        BinaryOp::MaxImp,
        BinaryOp::MinImp,
        BinaryOp::LinImp,
        BinaryOp::RelImp,
        BinaryOp::EpIndic,
        BinaryOp::EpCf,
        BinaryOp::EpCond,
        BinaryOp::Entail,
    ];

    pub fn token(self) -> &'static str {
        match self {
            BinaryOp::And => "/\\",
            BinaryOp::TensorOr => "\\/",
            BinaryOp::GlobalOr => "vv",
            BinaryOp::OuterGlobalOr => "ovv",
            BinaryOp::TensorAnd => "tand",
            BinaryOp::IntImp => "->",
            BinaryOp::UpImp => "up->",
            BinaryOp::MaxImp => "max->",
            BinaryOp::MinImp => "min->",
            BinaryOp::LinImp => "lin->",
            BinaryOp::RelImp => "rel->",
            BinaryOp::EpIndic => "ei->",
            BinaryOp::EpCf => "ecf->",
            BinaryOp::EpCond => "ec->",
            BinaryOp::Entail => "ent->",
        }
    }

    pub(crate) fn level(self) -> Level {
        match self {
            BinaryOp::And | BinaryOp::TensorAnd => Level::Conjunction,
            BinaryOp::TensorOr | BinaryOp::GlobalOr | BinaryOp::OuterGlobalOr => Level::Disjunction,
            _ => Level::Conditional,
        }
    }

    pub fn is_conditional(self) -> bool {
        self.level() == Level::Conditional
    }

    /// Looks up a conditional by its token (`->`, `up->`, ...).
    pub fn conditional_from_token(token: &str) -> Option<BinaryOp> {
        BinaryOp::CONDITIONALS.into_iter().find(|op| op.token() == token)
    }
}

/// How far from the evaluated team a connective's clause looks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantification {
    /// Decided by the team itself or its singletons.
    Pointwise,
    /// Quantifies over subteams of the team.
    SubsetQuantified,
    /// Quantifies over superteams within the context.
    SupersetQuantified,
    /// Quantifies over every team of the context.
    GlobalQuantified,
}

impl Quantification {
    pub fn name(self) -> &'static str {
        match self {
            Quantification::Pointwise => "pointwise",
            Quantification::SubsetQuantified => "subset-quantified",
            Quantification::SupersetQuantified => "superset-quantified",
            Quantification::GlobalQuantified => "global-quantified",
        }
    }
}

/// A connective of the language, atoms excluded (atoms are always available).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Bot,
    Top,
    Ne,
    Inclusion,
    Unary(UnaryOp),
    Binary(BinaryOp),
}

impl Connective {
    pub fn all() -> Vec<Connective> {
        let mut all = alloc::vec![Connective::Bot, Connective::Top, Connective::Ne, Connective::Inclusion];
        all.extend(UnaryOp::ALL.into_iter().map(Connective::Unary));
        all.extend(BinaryOp::ALL.into_iter().map(Connective::Binary));
        all
    }

    pub fn arity(self) -> usize {
        match self {
            Connective::Bot | Connective::Top | Connective::Ne | Connective::Inclusion => 0,
            Connective::Unary(_) => 1,
            Connective::Binary(_) => 2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Connective::Bot => "bot",
            Connective::Top => "top",
            Connective::Ne => "NE",
            Connective::Inclusion => "incl",
            Connective::Unary(op) => op.token(),
            Connective::Binary(op) => op.token(),
        }
    }

    pub fn from_token(token: &str) -> Option<Connective> {
        Connective::all().into_iter().find(|c| c.token() == token)
    }

    pub fn quantification(self) -> Quantification {
        use BinaryOp::*;
        match self {
            Connective::Bot | Connective::Top | Connective::Ne | Connective::Inclusion => {
                Quantification::Pointwise
            }
            Connective::Unary(UnaryOp::Neg) => Quantification::Pointwise,
            Connective::Unary(_) => Quantification::SubsetQuantified,
            Connective::Binary(op) => match op {
                And | GlobalOr => Quantification::Pointwise,
                TensorOr | IntImp | MaxImp | EpIndic | EpCf | EpCond => Quantification::SubsetQuantified,
                OuterGlobalOr | TensorAnd | UpImp | MinImp => Quantification::SupersetQuantified,
                LinImp | RelImp | Entail => Quantification::GlobalQuantified,
            },
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// `[b1 ... bk <= v1 ... vk]`: some member of the team gives the listed
/// variables the listed bits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InclusionAtom {
    bits: Vec<bool>,
    vars: Vec<String>,
}

impl InclusionAtom {
    pub fn new(bits: Vec<bool>, vars: Vec<String>) -> Result<Self, ParseError> {
        let malformed = |message: String| ParseError {
            position: 0,
            kind: ParseErrorKind::MalformedInclusion,
            message,
        };
        if bits.is_empty() || bits.len() != vars.len() {
            return Err(malformed(alloc::format!(
                "inclusion atom needs equally many bits and variables (got {} and {})",
                bits.len(),
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(malformed(alloc::format!("`{v}` is not a variable name")));
            }
            if vars[..i].contains(v) {
                return Err(malformed(alloc::format!("variable `{v}` repeated in inclusion atom")));
            }
        }
        Ok(InclusionAtom { bits, vars })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Bot,
    Top,
    Ne,
    Inclusion(InclusionAtom),
    Unary(UnaryOp, Box<Formula>),
    Binary(BinaryOp, Box<Formula>, Box<Formula>),
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn unary(op: UnaryOp, arg: Formula) -> Formula {
        Formula::Unary(op, Box::new(arg))
    }

    pub fn binary(op: BinaryOp, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(arg: Formula) -> Formula {
        Formula::unary(UnaryOp::Neg, arg)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(BinaryOp::And, lhs, rhs)
    }

    pub fn tensor_or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(BinaryOp::TensorOr, lhs, rhs)
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    /// Left-nested tensor disjunction; `None` for an empty list.
    pub fn tensor_disjunction(items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(Formula::tensor_or)
    }

    /// The variables occurring in atoms and inclusion atoms.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(v) => {
                out.insert(v.clone());
            }
            Formula::Inclusion(atom) => out.extend(atom.vars.iter().cloned()),
            Formula::Bot | Formula::Top | Formula::Ne => {}
            Formula::Unary(_, a) => a.collect_vars(out),
            Formula::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Height of the syntax tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Unary(_, a) => 1 + a.depth(),
            Formula::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
            _ => 1,
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Unary(_, a) => 1 + a.size(),
            Formula::Binary(_, a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Every connective used, atoms excluded.
    pub fn connectives(&self) -> BTreeSet<Connective> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            let c = match f {
                Formula::Atom(_) => return,
                Formula::Bot => Connective::Bot,
                Formula::Top => Connective::Top,
                Formula::Ne => Connective::Ne,
                Formula::Inclusion(_) => Connective::Inclusion,
                Formula::Unary(op, _) => Connective::Unary(*op),
                Formula::Binary(op, _, _) => Connective::Binary(*op),
            };
            out.insert(c);
        });
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Unary(_, a) => a.visit(f),
            Formula::Binary(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render::write_formula(f, self)
    }
}

impl core::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_of_examples() {
        let vars = |s: &str| -> Vec<String> { parse(s).unwrap().free_variables().into_iter().collect() };
        assert_eq!(vars("p /\\ q"), ["p", "q"]);
        assert!(vars("bot").is_empty());
        assert_eq!(vars("[1 0 <= p q] vv top"), ["p", "q"]);
    }

    #[test]
    fn inclusion_atom_invariants() {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(InclusionAtom::new(alloc::vec![true], v(&["p"])).is_ok());
        assert!(InclusionAtom::new(alloc::vec![], v(&[])).is_err());
        assert!(InclusionAtom::new(alloc::vec![true, false], v(&["p"])).is_err());
        assert!(InclusionAtom::new(alloc::vec![true, false], v(&["p", "p"])).is_err());
        assert!(InclusionAtom::new(alloc::vec![true], v(&["P"])).is_err());
    }

    #[test]
    fn connective_tokens_round_trip() {
        for c in Connective::all() {
            assert_eq!(Connective::from_token(c.token()), Some(c));
        }
        assert_eq!(Connective::all().len(), 23);
    }

    #[test]
    fn quantification_classes() {
        let q = |t: &str| Connective::from_token(t).unwrap().quantification();
        assert_eq!(q("up->"), Quantification::SupersetQuantified);
        assert_eq!(q("lin->"), Quantification::GlobalQuantified);
        assert_eq!(q("rel->"), Quantification::GlobalQuantified);
        assert_eq!(q("ent->"), Quantification::GlobalQuantified);
        assert_eq!(q("max->"), Quantification::SubsetQuantified);
        assert_eq!(q("~"), Quantification::Pointwise);
        assert_eq!(q("ovv"), Quantification::SupersetQuantified);
    }
}
