//! Whether a conditional preserves closure properties of its arguments.

use alloc::vec::Vec;
use core::fmt;

use super::pool::Pool;
use super::schema::{require_conditional, Verdict};
use crate::closure::{check, has_property, ClosureProperty, Witness};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::semantics::{apply_binary, denotation};
use crate::syntax::{BinaryOp, Formula};

/// Which arguments must have the property before the result is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreservationMode {
    BothArgs,
    ConsequentOnly,
    AntecedentOnly,
    /// No requirement: every pool pair.
    Unrestricted,
}

impl PreservationMode {
    pub const ALL: [PreservationMode; 4] = [
        PreservationMode::BothArgs,
        PreservationMode::ConsequentOnly,
        PreservationMode::AntecedentOnly,
        PreservationMode::Unrestricted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PreservationMode::BothArgs => "both-args",
            PreservationMode::ConsequentOnly => "consequent-only",
            PreservationMode::AntecedentOnly => "antecedent-only",
            PreservationMode::Unrestricted => "unrestricted",
        }
    }

    pub fn from_name(name: &str) -> Result<PreservationMode> {
        PreservationMode::ALL
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::Unknown { kind: "preservation mode", name: name.into() })
    }

    fn constrains(self) -> (bool, bool) {
        match self {
            PreservationMode::BothArgs => (true, true),
            PreservationMode::ConsequentOnly => (false, true),
            PreservationMode::AntecedentOnly => (true, false),
            PreservationMode::Unrestricted => (false, false),
        }
    }
}

impl fmt::Display for PreservationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pool pair meeting the requirements whose conditional lacks `property`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationCounterexample {
    pub antecedent: Formula,
    pub consequent: Formula,
    pub formula: Formula,
    pub property: ClosureProperty,
    pub witness: Witness,
}

impl PreservationCounterexample {
    /// Recomputes the denotations from the formulas and re-checks the
    /// requirements and the witness.
    pub fn verify(&self, ctx: &Context, required: &[ClosureProperty], mode: PreservationMode) -> Result<bool> {
        let (left, right) = mode.constrains();
        let a = denotation(&self.antecedent, ctx)?;
        let c = denotation(&self.consequent, ctx)?;
        let meets = required.iter().all(|&k| (!left || has_property(&a, k)) && (!right || has_property(&c, k)));
        Ok(meets && self.witness.violates(&denotation(&self.formula, ctx)?, self.property))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    pub conditional: BinaryOp,
    /// Properties the constrained arguments must have.
    pub required: Vec<ClosureProperty>,
    /// Properties checked on the result.
    pub ensured: Vec<ClosureProperty>,
    pub mode: PreservationMode,
    pub instances: usize,
    pub counterexample: Option<PreservationCounterexample>,
}

impl PreservationReport {
    pub fn verdict(&self) -> Verdict {
        if self.counterexample.is_some() {
            Verdict::Refuted
        } else {
            Verdict::ConsistentBounded
        }
    }
}

/// Does `φ > ψ` have `property` whenever the arguments selected by `mode` have it?
pub fn check_preservation(
    property: ClosureProperty,
    conditional: BinaryOp,
    pool: &Pool,
    mode: PreservationMode,
) -> Result<PreservationReport> {
    check_preservation_with(&[property], &[property], conditional, pool, mode)
}

/// Generalised form: arguments selected by `mode` have every property in
/// `required`; the result must have every property in `ensured`.
pub fn check_preservation_with(
    required: &[ClosureProperty],
    ensured: &[ClosureProperty],
    conditional: BinaryOp,
    pool: &Pool,
    mode: PreservationMode,
) -> Result<PreservationReport> {
    require_conditional(conditional)?;
    let (left, right) = mode.constrains();
    let meets: Vec<bool> =
        pool.entries.iter().map(|e| required.iter().all(|&k| has_property(&e.denotation, k))).collect();
    let mut instances = 0;
    for (i, a) in pool.entries.iter().enumerate() {
        if left && !meets[i] {
            continue;
        }
        for (j, c) in pool.entries.iter().enumerate() {
            if right && !meets[j] {
                continue;
            }
            instances += 1;
            let result = apply_binary(conditional, &a.denotation, &c.denotation);
            for &property in ensured {
                if let Some(witness) = check(&result, property) {
                    let counterexample = PreservationCounterexample {
                        antecedent: a.formula.clone(),
                        consequent: c.formula.clone(),
                        formula: Formula::binary(conditional, a.formula.clone(), c.formula.clone()),
                        property,
                        witness,
                    };
                    return Ok(PreservationReport {
                        conditional,
                        required: required.to_vec(),
                        ensured: ensured.to_vec(),
                        mode,
                        instances,
                        counterexample: Some(counterexample),
                    });
                }
            }
        }
    }
    Ok(PreservationReport {
        conditional,
        required: required.to_vec(),
        ensured: ensured.to_vec(),
        mode,
        instances,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::pool::{enumerate_pool, PoolSignature};
    use crate::ClosureProperty::*;

    fn default_pool() -> Pool {
        enumerate_pool(&PoolSignature::default_for(Context::standard(2).unwrap(), 3).unwrap()).unwrap()
    }

    #[test]
    fn mode_names_round_trip() {
        for m in PreservationMode::ALL {
            assert_eq!(PreservationMode::from_name(m.name()).unwrap(), m);
        }
        assert!(PreservationMode::from_name("both").is_err());
    }

    #[test]
    fn spec_preservation_examples() {
        let pool = default_pool();
        let both = PreservationMode::BothArgs;
        let up = check_preservation(Upward, BinaryOp::UpImp, &pool, both).unwrap();
        assert_eq!(up.verdict(), Verdict::ConsistentBounded);
        assert!(up.instances > 0);
        let ui = check_preservation_with(&[Upward, IntersectionClosed], &[Upward, IntersectionClosed], BinaryOp::UpImp, &pool, both)
            .unwrap();
        assert_eq!(ui.verdict(), Verdict::ConsistentBounded);
        assert!(ui.instances > 0);
        let ic = check_preservation(IntersectionClosed, BinaryOp::MaxImp, &pool, both).unwrap();
        assert_eq!(ic.verdict(), Verdict::ConsistentBounded);
        for p in [Downward, Convex] {
            assert_eq!(check_preservation(p, BinaryOp::IntImp, &pool, both).unwrap().verdict(), Verdict::ConsistentBounded);
        }
    }

    #[test]
    fn intuitionistic_implication_does_not_preserve_union_closure() {
        let pool = default_pool();
        let r = check_preservation(UnionClosed, BinaryOp::IntImp, &pool, PreservationMode::BothArgs).unwrap();
        assert_eq!(r.verdict(), Verdict::Refuted);
        let c = r.counterexample.unwrap();
        let ctx = &pool.signature.context;
        assert!(c.verify(ctx, &[UnionClosed], PreservationMode::BothArgs).unwrap());
        assert!(matches!(c.witness, Witness::Pair { .. }));
    }

    #[test]
    fn modes_select_the_expected_pairs() {
        let pool = default_pool();
        let n = pool.len();
        let k = pool.entries.iter().filter(|e| has_property(&e.denotation, Upward)).count();
        // entailment is always upward closed, so no mode stops early
        let count = |m| check_preservation(Upward, BinaryOp::Entail, &pool, m).unwrap().instances;
        assert_eq!(count(PreservationMode::Unrestricted), n * n);
        assert_eq!(count(PreservationMode::BothArgs), k * k);
        assert_eq!(count(PreservationMode::ConsequentOnly), n * k);
        assert_eq!(count(PreservationMode::AntecedentOnly), k * n);
    }
}
