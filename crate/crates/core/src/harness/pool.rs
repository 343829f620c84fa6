//! Bounded-exhaustive formula pools, deduplicated by denotation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::prop::TeamProposition;
use crate::semantics::{apply_binary, apply_unary, denotation};
use crate::syntax::{BinaryOp, Connective, Formula, InclusionAtom, UnaryOp};

/// Default upper bound on the number of pool members.
pub const DEFAULT_POOL_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolSignature {
    pub context: Context,
    /// Connectives besides atoms; nullary ones (`bot`, `top`, `NE`,
    /// inclusion atoms) act as extra leaves.
    pub connectives: Vec<Connective>,
    pub max_depth: usize,
    /// Atoms are drawn from the first `max_atoms` context variables.
    pub max_atoms: usize,
    pub cap: usize,
}

impl PoolSignature {
    pub fn new(context: Context, connectives: Vec<Connective>, max_depth: usize) -> Result<PoolSignature> {
        if max_depth == 0 {
            return Err(Error::InvalidContext("pool depth must be at least 1".into()));
        }
        let max_atoms = context.len();
        let mut connectives = connectives;
        connectives.sort();
        connectives.dedup();
        Ok(PoolSignature { context, connectives, max_depth, max_atoms, cap: DEFAULT_POOL_CAP })
    }

    /// The pool used for table reproduction: `~ /\ \/ vv ovv tand nabla bdia NE ->`.
    pub fn default_for(context: Context, max_depth: usize) -> Result<PoolSignature> {
        PoolSignature::new(context, default_connectives(), max_depth)
    }

    /// Parses a comma-separated connective list such as `~,/\,\/,nabla`.
    pub fn parse_connectives(list: &str) -> Result<Vec<Connective>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|t| Connective::from_token(t).ok_or_else(|| Error::Unknown { kind: "connective", name: t.into() }))
            .collect()
    }

    pub fn describe(&self) -> String {
        let tokens: Vec<&str> = self.connectives.iter().map(|c| c.token()).collect();
        format!(
            "variables {}; connectives {}; depth {}",
            self.context.vars()[..self.max_atoms].join(","),
            tokens.join(" "),
            self.max_depth
        )
    }
}

pub fn default_connectives() -> Vec<Connective> {
    let mut c = alloc::vec![
        Connective::Unary(UnaryOp::Neg),
        Connective::Binary(BinaryOp::And),
        Connective::Binary(BinaryOp::TensorOr),
        Connective::Binary(BinaryOp::GlobalOr),
        Connective::Binary(BinaryOp::OuterGlobalOr),
        Connective::Binary(BinaryOp::TensorAnd),
        Connective::Unary(UnaryOp::Nabla),
        Connective::Unary(UnaryOp::BlackDia),
        Connective::Ne,
        Connective::Binary(BinaryOp::IntImp),
    ];
    c.sort();
    c
}

/// A pool member with its denotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolEntry {
    pub formula: Formula,
    pub denotation: TeamProposition,
}

#[derive(Debug, Clone)]
pub struct Pool {
    pub signature: PoolSignature,
    pub entries: Vec<PoolEntry>,
}

impl Pool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.entries.iter().map(|e| e.formula.clone()).collect()
    }
}

fn canonical_key(f: &Formula) -> (usize, String) {
    (f.size(), f.render())
}

fn leaves(sig: &PoolSignature) -> Result<Vec<Formula>> {
    let ctx = &sig.context;
    let vars = &ctx.vars()[..sig.max_atoms.min(ctx.len())];
    let mut out: Vec<Formula> = vars.iter().map(|v| Formula::atom(v.clone())).collect();
    for c in &sig.connectives {
        match c {
            Connective::Bot => out.push(Formula::Bot),
            Connective::Top => out.push(Formula::Top),
            Connective::Ne => out.push(Formula::Ne),
            Connective::Inclusion => {
                for (i, v) in vars.iter().enumerate() {
                    for bit in [false, true] {
                        out.push(Formula::Inclusion(InclusionAtom::new(alloc::vec![bit], alloc::vec![v.clone()])?));
                    }
                    for w in &vars[i + 1..] {
                        for bits in [[false, false], [false, true], [true, false], [true, true]] {
                            out.push(Formula::Inclusion(InclusionAtom::new(
                                bits.to_vec(),
                                alloc::vec![v.clone(), w.clone()],
                            )?));
                        }
                    }
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Every formula of depth at most `max_depth` over the signature, one per
/// denotation, represented by its smallest formula in (size, rendering)
/// order. The result is sorted in that order.
pub fn enumerate_pool(sig: &PoolSignature) -> Result<Pool> {
    let mut index: BTreeMap<TeamProposition, usize> = BTreeMap::new();
    let mut entries: Vec<PoolEntry> = Vec::new();

    let mut offer = |formula: Formula, p: TeamProposition, entries: &mut Vec<PoolEntry>| -> Result<bool> {
        match index.get(&p) {
            Some(&i) => {
                if canonical_key(&formula) < canonical_key(&entries[i].formula) {
                    entries[i].formula = formula;
                }
                Ok(false)
            }
            None => {
                if entries.len() >= sig.cap {
                    return Err(Error::ResourceCap(format!(
                        "pool exceeds {} formulas ({})",
                        sig.cap,
                        sig.describe()
                    )));
                }
                index.insert(p.clone(), entries.len());
                entries.push(PoolEntry { formula, denotation: p });
                Ok(true)
            }
        }
    };

    for f in leaves(sig)? {
        let p = denotation(&f, &sig.context)?;
        offer(f, p, &mut entries)?;
    }
    let unary: Vec<UnaryOp> = sig.connectives.iter().filter_map(|c| match c {
        Connective::Unary(op) => Some(*op),
        _ => None,
    }).collect();
    let binary: Vec<BinaryOp> = sig.connectives.iter().filter_map(|c| match c {
        Connective::Binary(op) => Some(*op),
        _ => None,
    }).collect();

    // Members before `fresh_from` were already combined with each other.
    let mut fresh_from = 0;
    for _ in 1..sig.max_depth {
        let end = entries.len();
        let mut candidates: Vec<(Formula, TeamProposition)> = Vec::new();
        for e in &entries[fresh_from..end] {
            for &op in &unary {
                candidates.push((Formula::unary(op, e.formula.clone()), apply_unary(op, &e.denotation)));
            }
        }
        for &op in &binary {
            for i in 0..end {
                for j in 0..end {
                    if i < fresh_from && j < fresh_from {
                        continue;
                    }
                    let (a, b) = (&entries[i], &entries[j]);
                    let p = apply_binary(op, &a.denotation, &b.denotation);
                    candidates.push((Formula::binary(op, a.formula.clone(), b.formula.clone()), p));
                }
            }
        }
        for (f, p) in candidates {
            offer(f, p, &mut entries)?;
        }
        fresh_from = end;
    }
    entries.sort_by_cached_key(|e| canonical_key(&e.formula));
    Ok(Pool { signature: sig.clone(), entries })
}
