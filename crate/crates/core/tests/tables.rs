use std::sync::OnceLock;

use teamsem::harness::{reproduce_tables, CellKind, Table, TableConfig, TableReport, Verdict};
use teamsem::BinaryOp::*;
use teamsem::{denotation, entails, parse, BinaryOp, Context};

fn report() -> &'static TableReport {
    static REPORT: OnceLock<TableReport> = OnceLock::new();
    REPORT.get_or_init(|| reproduce_tables(TableConfig::default()).unwrap())
}

fn row(table: Table, op: BinaryOp, column: &str) -> &'static teamsem::harness::TableRow {
    report().row(table, op, column).unwrap_or_else(|| panic!("no row {op:?} {column}"))
}

#[test]
fn shape() {
    let r = report();
    assert_eq!(r.pool_size, 98);
    assert_eq!(r.rows.len(), 7 * 8 + 7 * 7);
    let skipped: Vec<_> = r.skipped().map(|row| (row.conditional, row.column)).collect();
    assert_eq!(skipped, [(MaxImp, "generalizes-intuitionistic")]);
    for row in &r.rows {
        assert_eq!(row.kind == CellKind::Skipped, row.checks.is_empty());
        assert_eq!(row.kind == CellKind::Skipped, row.skip_reason.is_some());
    }
}

#[test]
fn refuted_checks_carry_verified_counterexamples() {
    for row in &report().rows {
        for c in &row.checks {
            assert_eq!(c.verdict == Verdict::Refuted, c.counterexample.is_some());
            if let Some(x) = &c.counterexample {
                assert!(x.verified, "{row}: {}", x.failure);
            }
        }
    }
}

#[test]
fn spec_cells() {
    let gen = row(Table::Inferential, RelImp, "generalizes-intuitionistic");
    assert_eq!(gen.verdict(), Some(Verdict::ConsistentBounded));
    let t = row(Table::Inferential, EpIndic, "transitivity");
    let by_label = |l: &str| t.checks.iter().find(|c| c.label == l).unwrap().verdict;
    assert_eq!(by_label("strong-transitivity"), Verdict::Refuted);
    assert_eq!(by_label("intermediate-transitivity"), Verdict::ConsistentBounded);
    assert_eq!(row(Table::Closure, Entail, "downward").verdict(), Some(Verdict::ConsistentBounded));
    let flat = row(Table::Closure, EpCf, "flat");
    assert!(flat.interpretation.is_some());
    assert_eq!(flat.verdict(), Some(Verdict::ConsistentBounded));
}

/// Cells where the bounded check contradicts the printed entry. Each is
/// confirmed independently below.
const CONFLICTS: [(Table, BinaryOp, &str); 6] = [
    (Table::Inferential, EpCond, "exportation"),
    (Table::Closure, MinImp, "empty-team"),
    (Table::Closure, MaxImp, "flat"),
    (Table::Closure, RelImp, "flat"),
    (Table::Closure, RelImp, "union"),
    (Table::Closure, RelImp, "convex"),
];

#[test]
fn disagreements_are_exactly_the_known_conflicts() {
    let found: Vec<_> = report().disagreements().map(|r| (r.table, r.conditional, r.column)).collect();
    assert_eq!(found, CONFLICTS);
}

#[test]
fn known_conflicts_hold_up_independently() {
    let ctx = Context::standard(2).unwrap();
    let f = |s: &str| parse(s).unwrap();
    let d = |s: &str| denotation(&f(s), &ctx).unwrap();
    let has = |s: &str, k| teamsem::closure::has_property(&d(s), k);
    use teamsem::ClosureProperty::*;

    // exportation fails for ec-> already on flat formulas, ~NE being bot
    let e = entails(&[f("(p /\\ q) ec-> ~NE")], &f("p ec-> (q ec-> ~NE)"), &ctx).unwrap();
    assert!(!e.holds());

    // min-> keeps the empty team whenever both arguments contain it
    for a in ["p", "~p", "p vv q", "nabla p", "p -> q"] {
        for b in ["q", "p \\/ q", "nabla q", "~q"] {
            assert!(has(&format!("({a}) min-> ({b})"), EmptyTeam));
        }
    }

    // flat consequent, non-flat antecedent
    assert!(has("p", Flat) && !has("bdia p max-> p", Flat));
    // flat antecedent, non-flat consequent
    assert!(has("p", Flat) && !has("p rel-> NE", Flat));
    // union-closed arguments, non-union-closed result
    assert!(has("NE", UnionClosed) && !has("p ovv q", UnionClosed) && !has("NE rel-> (p ovv q)", UnionClosed));
    assert!(!has("bdia p rel-> nabla p", Convex));
}
