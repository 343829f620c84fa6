use teamsem::closure::has_property;
use teamsem::harness::{enumerate_pool, PoolSignature};
use teamsem::semantics::{apply_binary, apply_unary};
use teamsem::ClosureProperty::{self, *};
use teamsem::{BinaryOp, Context, TeamProposition, UnaryOp};

fn pool() -> Vec<TeamProposition> {
    let sig = PoolSignature::default_for(Context::standard(2).unwrap(), 3).unwrap();
    enumerate_pool(&sig).unwrap().entries.into_iter().map(|e| e.denotation).collect()
}

fn preserves_unary(pool: &[TeamProposition], op: UnaryOp, k: ClosureProperty) -> bool {
    pool.iter().filter(|p| has_property(p, k)).all(|p| has_property(&apply_unary(op, p), k))
}

fn preserves_binary(pool: &[TeamProposition], op: BinaryOp, k: ClosureProperty) -> bool {
    let with: Vec<_> = pool.iter().filter(|p| has_property(p, k)).collect();
    with.iter().all(|a| with.iter().all(|b| has_property(&apply_binary(op, a, b), k)))
}

#[test]
fn classical_connectives() {
    let pool = pool();
    for k in [UnionClosed, Convex, IntersectionClosed, Downward] {
        assert!(preserves_unary(&pool, UnaryOp::Neg, k), "~ {k}");
        assert!(preserves_binary(&pool, BinaryOp::And, k), "/\\ {k}");
    }
    for k in [UnionClosed, Downward] {
        assert!(preserves_binary(&pool, BinaryOp::TensorOr, k), "\\/ {k}");
    }
    for k in [Convex, Downward] {
        assert!(preserves_binary(&pool, BinaryOp::IntImp, k), "-> {k}");
    }
    assert!(!preserves_binary(&pool, BinaryOp::IntImp, UnionClosed));
}

#[test]
fn non_classical_connectives() {
    let pool = pool();
    assert!(preserves_unary(&pool, UnaryOp::Nabla, UnionClosed));
    assert!(!preserves_binary(&pool, BinaryOp::GlobalOr, UnionClosed));
    assert!(preserves_binary(&pool, BinaryOp::UpImp, Upward));
    assert!(preserves_binary(&pool, BinaryOp::TensorAnd, IntersectionClosed));
}
