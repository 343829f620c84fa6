use proptest::prelude::*;
use teamsem::closure::has_property;
use teamsem::{denotation, BinaryOp, ClosureProperty, Context, Formula, UnaryOp};

fn formulas(leaves: Vec<Formula>, unary: Vec<UnaryOp>, binary: Vec<BinaryOp>) -> impl Strategy<Value = Formula> {
    let leaf = proptest::sample::select(leaves);
    leaf.prop_recursive(4, 24, 2, move |inner| {
        let u = proptest::sample::select(unary.clone());
        let b = proptest::sample::select(binary.clone());
        prop_oneof![
            (u, inner.clone()).prop_map(|(op, a)| Formula::unary(op, a)),
            (b, inner.clone(), inner).prop_map(|(op, a, c)| Formula::binary(op, a, c)),
        ]
    })
}

fn atoms() -> Vec<Formula> {
    ["p", "q", "r"].into_iter().map(Formula::atom).collect()
}

proptest! {
    #[test]
    fn classical_formulas_with_nabla_and_global_or_hold_at_the_empty_team(f in formulas(
        [atoms(), vec![Formula::Bot, Formula::Top]].concat(),
        vec![UnaryOp::Neg, UnaryOp::Nabla],
        vec![BinaryOp::And, BinaryOp::TensorOr, BinaryOp::IntImp, BinaryOp::GlobalOr],
    )) {
        let ctx = Context::new(["p", "q", "r"]).unwrap();
        prop_assert!(has_property(&denotation(&f, &ctx).unwrap(), ClosureProperty::EmptyTeam));
    }

    #[test]
    fn classical_formulas_are_flat(f in formulas(
        [atoms(), vec![Formula::Bot]].concat(),
        vec![UnaryOp::Neg],
        vec![BinaryOp::And, BinaryOp::TensorOr, BinaryOp::IntImp],
    )) {
        let ctx = Context::new(["p", "q", "r"]).unwrap();
        let d = denotation(&f, &ctx).unwrap();
        for k in [ClosureProperty::Flat, ClosureProperty::Downward, ClosureProperty::UnionClosed, ClosureProperty::Convex] {
            prop_assert!(has_property(&d, k), "{f} {k}");
        }
    }
}
