use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::syntax::{BinaryOp, Connective, Formula, Quantification, UnaryOp};
use crate::team::Team;

/// A node of a compiled formula. Atoms are resolved to the set of
/// valuations they constrain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Node {
    /// Holds on `T` iff `T ⊆ mask`.
    Atom(Team),
    Bot,
    Top,
    Ne,
    /// Holds on `T` iff `T ∩ mask ≠ ∅`.
    Inclusion(Team),
    Unary(UnaryOp, usize),
    Binary(BinaryOp, usize, usize),
}

/// A formula flattened into a DAG with shared subformulas; children
/// always precede their parents.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub nodes: Vec<Node>,
    pub root: usize,
}

impl Compiled {
    pub fn new(f: &Formula, ctx: &Context) -> Result<Compiled> {
        let mut builder = Builder { nodes: Vec::new(), index: BTreeMap::new(), ctx };
        let root = builder.add(f)?;
        Ok(Compiled { nodes: builder.nodes, root })
    }

    pub fn max_quantification(&self) -> Quantification {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Unary(op, _) => Connective::Unary(*op).quantification(),
                Node::Binary(op, _, _) => Connective::Binary(*op).quantification(),
                _ => Quantification::Pointwise,
            })
            .max()
            .unwrap_or(Quantification::Pointwise)
    }
}

struct Builder<'a> {
    nodes: Vec<Node>,
    index: BTreeMap<Node, usize>,
    ctx: &'a Context,
}

impl Builder<'_> {
    fn var(&self, name: &str) -> Result<usize> {
        self.ctx.index_of(name).ok_or_else(|| Error::VariableOutOfContext(name.into()))
    }

    fn intern(&mut self, node: Node) -> usize {
        *self.index.entry(node).or_insert_with(|| {
            self.nodes.push(node);
            self.nodes.len() - 1
        })
    }

    fn add(&mut self, f: &Formula) -> Result<usize> {
        let node = match f {
            Formula::Atom(v) => Node::Atom(self.ctx.pattern_team(&[(self.var(v)?, true)])),
            Formula::Bot => Node::Bot,
            Formula::Top => Node::Top,
            Formula::Ne => Node::Ne,
            Formula::Inclusion(atom) => {
                let assignments = atom
                    .vars()
                    .iter()
                    .zip(atom.bits())
                    .map(|(v, &b)| Ok((self.var(v)?, b)))
                    .collect::<Result<Vec<_>>>()?;
                Node::Inclusion(self.ctx.pattern_team(&assignments))
            }
            Formula::Unary(op, a) => {
                let a = self.add(a)?;
                Node::Unary(*op, a)
            }
            Formula::Binary(op, a, b) => {
                let a = self.add(a)?;
                let b = self.add(b)?;
                Node::Binary(*op, a, b)
            }
        };
        Ok(self.intern(node))
    }
}
