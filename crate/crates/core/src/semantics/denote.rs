//! Bottom-up denotations: each connective acts as a transformer on team
//! propositions, so a formula's denotation is computed once per subformula
//! instead of once per team.

use alloc::vec;
use alloc::vec::Vec;

use super::compile::{Compiled, Node};
use crate::error::Result;
use crate::prop::TeamProposition;
use crate::syntax::{BinaryOp, UnaryOp};
use crate::team::Team;

pub(crate) fn denote_compiled(c: &Compiled, valuations: usize) -> Result<TeamProposition> {
    let mut props: Vec<TeamProposition> = Vec::with_capacity(c.nodes.len());
    for node in &c.nodes {
        let p = match *node {
            Node::Atom(mask) => TeamProposition::from_predicate(valuations, |t| t.is_subset(mask))?,
            Node::Bot => TeamProposition::with_valuations(valuations)?.with(Team::EMPTY),
            Node::Top => TeamProposition::with_valuations(valuations)?.complement(),
            Node::Ne => TeamProposition::with_valuations(valuations)?.complement().without(Team::EMPTY),
            Node::Inclusion(mask) => {
                TeamProposition::from_predicate(valuations, |t| !t.intersection(mask).is_empty())?
            }
            Node::Unary(op, a) => apply_unary(op, &props[a]),
            Node::Binary(op, a, b) => apply_binary(op, &props[a], &props[b]),
        };
        props.push(p);
    }
    Ok(props.swap_remove(c.root))
}

pub fn apply_unary(op: UnaryOp, p: &TeamProposition) -> TeamProposition {
    match op {
        UnaryOp::Neg => {
            let u = p.universe();
            let allowed = Team::from_valuations(u.members().filter(|&v| !p.contains(Team::singleton(v))));
            TeamProposition::from_predicate(p.num_valuations(), |t| t.is_subset(allowed))
                .expect("same size as the argument")
        }
        UnaryOp::Nabla => p.clone().without(Team::EMPTY).up_closure().with(Team::EMPTY),
        UnaryOp::BlackDia => p.clone().without(Team::EMPTY).up_closure(),
        UnaryOp::Dia => p.up_closure(),
    }
}

pub fn apply_binary(op: BinaryOp, p: &TeamProposition, q: &TeamProposition) -> TeamProposition {
    use BinaryOp::*;
    match op {
        And => p.intersection(q),
        GlobalOr => p.union(q),
        TensorOr => union_convolution(p, q),
        OuterGlobalOr => p.union(q).down_closure(),
        TensorAnd => intersection_convolution(p, q),
        IntImp => p.difference(q).up_closure().complement(),
        UpImp => p.difference(q).down_closure().complement(),
        MaxImp => maximal_implication(p, q),
        MinImp => maximal_implication(&p.dual(), &q.dual()).dual(),
        LinImp => linear_implication(p, q),
        RelImp => linear_implication(&p.dual(), &q.dual()).dual(),
        Entail => {
            if p.is_subset(q) {
                p.full_like()
            } else {
                p.empty_like()
            }
        }
        EpIndic => p.complement().up_closure().union(q),
        EpCf => {
            let known = p.complement().up_closure().complement();
            known.difference(q).up_closure().complement()
        }
        EpCond => {
            let known_q = q.complement().up_closure().complement();
            p.complement().up_closure().union(&known_q)
        }
    }
}

fn indicator(p: &TeamProposition) -> Vec<u64> {
    let mut f = vec![0u64; p.num_teams()];
    for t in p.iter() {
        f[t.bits() as usize] = 1;
    }
    f
}

/// Sum over subteams (`up == false`) or superteams (`up == true`), in place.
fn zeta(f: &mut [u64], valuations: usize, up: bool) {
    for i in 0..valuations {
        let bit = 1usize << i;
        for t in 0..f.len() {
            if t & bit == 0 {
                if up {
                    f[t] = f[t].wrapping_add(f[t | bit]);
                } else {
                    f[t | bit] = f[t | bit].wrapping_add(f[t]);
                }
            }
        }
    }
}

/// Inverse of [`zeta`]. Counts stay below 2^64 so wrapping arithmetic is exact.
fn mobius(f: &mut [u64], valuations: usize, up: bool) {
    for i in 0..valuations {
        let bit = 1usize << i;
        for t in 0..f.len() {
            if t & bit == 0 {
                if up {
                    f[t] = f[t].wrapping_sub(f[t | bit]);
                } else {
                    f[t | bit] = f[t | bit].wrapping_sub(f[t]);
                }
            }
        }
    }
}

/// `{A ∪ B : A ∈ p, B ∈ q}` by counting pairs with a given union.
fn union_convolution(p: &TeamProposition, q: &TeamProposition) -> TeamProposition {
    convolution(p, q, false)
}

/// `{A ∩ B : A ∈ p, B ∈ q}` by counting pairs with a given intersection.
fn intersection_convolution(p: &TeamProposition, q: &TeamProposition) -> TeamProposition {
    convolution(p, q, true)
}

fn convolution(p: &TeamProposition, q: &TeamProposition, up: bool) -> TeamProposition {
    let n = p.num_valuations();
    let mut f = indicator(p);
    let mut g = indicator(q);
    zeta(&mut f, n, up);
    zeta(&mut g, n, up);
    for (x, y) in f.iter_mut().zip(&g) {
        *x = x.wrapping_mul(*y);
    }
    mobius(&mut f, n, up);
    TeamProposition::from_predicate(n, |t| f[t.bits() as usize] != 0).expect("same size as the arguments")
}

/// `T` fails iff some `S ∈ p ∖ q` is a maximal `p`-subteam of `T`, i.e. `T`
/// contains `S` but no member of `p` strictly above `S`.
fn maximal_implication(p: &TeamProposition, q: &TeamProposition) -> TeamProposition {
    let n = p.num_valuations();
    let mut bad = p.empty_like();
    for s in p.difference(q).iter() {
        let above = p.empty_like().with(s).up_closure();
        let blockers = p.intersection(&above).without(s).up_closure();
        bad = bad.union(&above.difference(&blockers));
    }
    debug_assert_eq!(bad.num_valuations(), n);
    bad.complement()
}

/// `T` holds iff `S ∪ T ∈ q` for every `S ∈ p`.
fn linear_implication(p: &TeamProposition, q: &TeamProposition) -> TeamProposition {
    let members: Vec<Team> = p.iter().collect();
    TeamProposition::from_predicate(p.num_valuations(), |t| members.iter().all(|s| q.contains(s.union(t))))
        .expect("same size as the arguments")
}
