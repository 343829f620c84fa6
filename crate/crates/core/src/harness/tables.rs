//! Reproduction of the summary tables of weak conditionals.
//!
//! Each cell of the two tables is mapped to one or more bounded checks over
//! a formula pool. A cell agrees with the table when every check has its
//! expected verdict.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::pool::{enumerate_pool, Pool, PoolSignature};
use super::preservation::{check_preservation_with, PreservationMode};
use super::schema::{check_inference_schema, Role, RoleFilter, SchemaKind, Verdict};
use crate::closure::{has_property, ClosureProperty};
use crate::context::Context;
use crate::error::Result;
use crate::semantics::{apply_binary, denotation, entails};
use crate::syntax::{BinaryOp, Formula};
use crate::team::Team;

/// Conditionals in column order.
pub const TABLE_CONDITIONALS: [BinaryOp; 7] = [
    BinaryOp::Entail,
    BinaryOp::EpCf,
    BinaryOp::EpIndic,
    BinaryOp::EpCond,
    BinaryOp::MaxImp,
    BinaryOp::MinImp,
    BinaryOp::RelImp,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Table {
    Inferential,
    Closure,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::Inferential => "inferential",
            Table::Closure => "closure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableConfig {
    pub vars: usize,
    pub depth: usize,
}

impl Default for TableConfig {
    fn default() -> TableConfig {
        TableConfig { vars: 2, depth: 3 }
    }
}

impl TableConfig {
    pub fn signature(&self) -> Result<PoolSignature> {
        PoolSignature::default_for(Context::standard(self.vars)?, self.depth)
    }
}

/// How the table's entry is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    /// The property holds, possibly under a side condition.
    Yes,
    /// The property fails.
    No,
    /// A positive claim together with the failure of a stronger form
    /// (e.g. "intermediate" transitivity).
    Mixed,
    Skipped,
}

impl CellKind {
    pub fn name(self) -> &'static str {
        match self {
            CellKind::Yes => "yes",
            CellKind::No => "no",
            CellKind::Mixed => "mixed",
            CellKind::Skipped => "skipped",
        }
    }
}

/// A failing instance of a check, with its re-verification outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCounterexample {
    pub assignment: Vec<(String, Formula)>,
    /// The failing entailment or property, rendered.
    pub failure: String,
    pub team: Team,
    /// Re-checked from the formulas alone with the entailment engine.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub label: String,
    pub filter: String,
    pub expected: Verdict,
    pub verdict: Verdict,
    pub instances: usize,
    pub counterexample: Option<CellCounterexample>,
}

impl CheckResult {
    pub fn agrees(&self) -> bool {
        self.verdict == self.expected && self.counterexample.as_ref().is_none_or(|c| c.verified)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: Table,
    pub conditional: BinaryOp,
    pub column: &'static str,
    /// The entry as printed in the table.
    pub cell: &'static str,
    pub kind: CellKind,
    /// How an informal entry was read, when that needed a choice.
    pub interpretation: Option<&'static str>,
    pub skip_reason: Option<&'static str>,
    pub checks: Vec<CheckResult>,
}

impl TableRow {
    /// The verdict of the cell's main claim; `None` when skipped. Further
    /// checks pin down side conditions (that a restriction is needed, that
    /// a stronger form fails).
    pub fn verdict(&self) -> Option<Verdict> {
        self.checks.first().map(|c| c.verdict)
    }

    pub fn agrees(&self) -> bool {
        self.checks.iter().all(CheckResult::agrees)
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub config: TableConfig,
    pub pool: String,
    pub pool_size: usize,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn row(&self, table: Table, conditional: BinaryOp, column: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.table == table && r.conditional == conditional && r.column == column)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.agrees())
    }

    pub fn skipped(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| r.kind == CellKind::Skipped)
    }
}

#[derive(Debug, Clone)]
enum Check {
    Schema(SchemaKind, Vec<RoleFilter>),
    Preserve(Vec<ClosureProperty>, Vec<ClosureProperty>, PreservationMode),
    /// Every result is flat or empty.
    FlatUnlessEmpty,
    /// Agrees with `->` on downward-closed antecedents.
    Generalizes,
}

struct Cell {
    column: &'static str,
    text: &'static str,
    kind: CellKind,
    interpretation: Option<&'static str>,
    skip_reason: Option<&'static str>,
    checks: Vec<(Check, Verdict)>,
}

const HOLDS: Verdict = Verdict::ConsistentBounded;
const FAILS: Verdict = Verdict::Refuted;

fn cell(column: &'static str, text: &'static str, kind: CellKind, checks: Vec<(Check, Verdict)>) -> Cell {
    Cell { column, text, kind, interpretation: None, skip_reason: None, checks }
}

fn schema(kind: SchemaKind, filters: &[(Role, ClosureProperty)]) -> Check {
    Check::Schema(kind, filters.iter().map(|&(r, p)| RoleFilter::new(r, p)).collect())
}

fn inferential_cell(op: BinaryOp, column: &'static str) -> Cell {
    use BinaryOp::*;
    use CellKind::*;
    use ClosureProperty::{Downward, Upward};
    use Role::{Antecedent, Consequent, Context as Ctx};
    use SchemaKind::*;
    let dw = |r| [(r, Downward)];
    let up = |r| [(r, Upward)];
    match column {
        "modus-ponens" => match op {
            EpCf | EpIndic | EpCond => cell(
                column,
                "yes for dwcl antecedent",
                Yes,
                vec![(schema(ModusPonens, &dw(Antecedent)), HOLDS), (schema(ModusPonens, &[]), FAILS)],
            ),
            _ => cell(column, "yes", Yes, vec![(schema(ModusPonens, &[]), HOLDS)]),
        },
        "deduction-theorem" => match op {
            Entail => cell(
                column,
                "introduction rule",
                Mixed,
                vec![(schema(IntroductionRule, &[]), HOLDS), (schema(DeductionTheorem, &[]), FAILS)],
            ),
            EpIndic => cell(column, "yes", Yes, vec![(schema(DeductionTheorem, &[]), HOLDS)]),
            EpCf | EpCond | MaxImp => cell(
                column,
                "yes for dwcl context",
                Yes,
                vec![(schema(DeductionTheorem, &dw(Ctx)), HOLDS), (schema(DeductionTheorem, &[]), FAILS)],
            ),
            MinImp => cell(
                column,
                "yes for upcl context",
                Yes,
                vec![(schema(DeductionTheorem, &up(Ctx)), HOLDS), (schema(DeductionTheorem, &[]), FAILS)],
            ),
            _ => cell(
                column,
                "dwcl antecedent and context",
                Yes,
                vec![
                    (schema(DeductionTheorem, &[(Antecedent, Downward), (Ctx, Downward)]), HOLDS),
                    (schema(DeductionTheorem, &[]), FAILS),
                ],
            ),
        },
        "transitivity" => match op {
            EpIndic => cell(
                column,
                "intermediate",
                Mixed,
                vec![(schema(IntermediateTransitivity, &[]), HOLDS), (schema(StrongTransitivity, &[]), FAILS)],
            ),
            MaxImp | MinImp => cell(
                column,
                "weak",
                Mixed,
                vec![
                    (schema(WeakTransitivity, &[]), HOLDS),
                    (schema(IntermediateTransitivity, &[]), FAILS),
                    (schema(StrongTransitivity, &[]), FAILS),
                ],
            ),
            _ => cell(column, "strong", Yes, vec![(schema(StrongTransitivity, &[]), HOLDS)]),
        },
        "antecedent-strengthening" | "importation" | "monotonicity" => {
            let kind = match column {
                "antecedent-strengthening" => AntecedentStrengthening,
                "importation" => Importation,
                _ => Monotonicity,
            };
            match op {
                MaxImp => cell(
                    column,
                    if kind == Monotonicity { "if dwcl consequent" } else { "for dwcl consequent" },
                    Yes,
                    vec![(schema(kind, &dw(Consequent)), HOLDS), (schema(kind, &[]), FAILS)],
                ),
                MinImp => cell(
                    column,
                    if kind == Monotonicity { "if upcl consequent" } else { "for upcl consequent" },
                    Yes,
                    vec![(schema(kind, &up(Consequent)), HOLDS), (schema(kind, &[]), FAILS)],
                ),
                _ => cell(column, "yes", Yes, vec![(schema(kind, &[]), HOLDS)]),
            }
        }
        "exportation" => match op {
            EpCf | EpIndic | EpCond => cell(column, "yes", Yes, vec![(schema(Exportation, &[]), HOLDS)]),
            _ => cell(column, "no", No, vec![(schema(Exportation, &[]), FAILS)]),
        },
        _ => match op {
            EpCf | RelImp => cell(column, "yes", Yes, vec![(Check::Generalizes, HOLDS)]),
            MaxImp => Cell {
                column,
                text: "yes if antec. local",
                kind: Skipped,
                interpretation: None,
                skip_reason: Some("the locality side condition on the antecedent is not defined precisely enough to formalize"),
                checks: vec![],
            },
            _ => cell(column, "no", No, vec![(Check::Generalizes, FAILS)]),
        },
    }
}

pub const INFERENTIAL_COLUMNS: [&str; 8] = [
    "modus-ponens",
    "deduction-theorem",
    "transitivity",
    "antecedent-strengthening",
    "importation",
    "exportation",
    "monotonicity",
    "generalizes-intuitionistic",
];

/// Closure-table columns, one per property, in table order.
pub const CLOSURE_COLUMNS: [ClosureProperty; 7] = [
    ClosureProperty::EmptyTeam,
    ClosureProperty::Flat,
    ClosureProperty::Downward,
    ClosureProperty::UnionClosed,
    ClosureProperty::Convex,
    ClosureProperty::Upward,
    ClosureProperty::IntersectionClosed,
];

/// The table entry for `op` and `property`.
fn closure_entry(op: BinaryOp, property: ClosureProperty) -> &'static str {
    use BinaryOp::*;
    use ClosureProperty::*;
    let row: [&str; 7] = match property {
        EmptyTeam => ["no", "preserved", "preserved (r)", "preserved (r)", "preserved (r)", "no", "preserved (r)"],
        Flat => ["yes except empty", "yes for ucl + empty", "no", "no", "preserved (r)", "no", "preserved (l)"],
        Downward => ["yes", "yes", "no", "no", "preserved (r)", "no", "preserved (l)"],
        UnionClosed => ["yes", "preserved (r)", "preserved (r)", "preserved (r)", "no", "preserved", "yes"],
        Convex => ["yes", "yes", "no", "no", "no", "no", "yes"],
        Upward => ["yes", "no", "preserved (r)", "preserved (r)", "no", "preserved (r)", "preserved (r)"],
        IntersectionClosed => ["yes", "yes", "no", "no", "preserved", "no", "preserved (r)"],
    };
    let col = match op {
        Entail => 0,
        EpCf => 1,
        EpIndic => 2,
        EpCond => 3,
        MaxImp => 4,
        MinImp => 5,
        _ => 6,
    };
    row[col]
}

fn closure_cell(op: BinaryOp, property: ClosureProperty) -> Cell {
    use PreservationMode::*;
    let text = closure_entry(op, property);
    let keep = |mode| Check::Preserve(vec![property], vec![property], mode);
    if (op, property) == (BinaryOp::EpCf, ClosureProperty::Upward) {
        return Cell {
            interpretation: Some("the entry contradicts the prose, which lists upward closure among the properties ecf-> preserves; read as preserved"),
            ..cell(property.name(), text, CellKind::Yes, vec![(keep(PreservationMode::BothArgs), HOLDS)])
        };
    }
    match text {
        "yes" => cell(property.name(), text, CellKind::Yes, vec![(keep(Unrestricted), HOLDS)]),
        "no" => cell(property.name(), text, CellKind::No, vec![(keep(BothArgs), FAILS)]),
        "preserved" => cell(property.name(), text, CellKind::Yes, vec![(keep(BothArgs), HOLDS)]),
        "preserved (r)" => cell(property.name(), text, CellKind::Yes, vec![(keep(ConsequentOnly), HOLDS)]),
        "preserved (l)" => cell(property.name(), text, CellKind::Yes, vec![(keep(AntecedentOnly), HOLDS)]),
        "yes except empty" => cell(
            property.name(),
            text,
            CellKind::Mixed,
            vec![(Check::FlatUnlessEmpty, HOLDS), (keep(Unrestricted), FAILS)],
        ),
        _ => Cell {
            interpretation: Some("flat whenever both arguments are union closed and contain the empty team"),
            ..cell(
                property.name(),
                text,
                CellKind::Yes,
                vec![(
                    Check::Preserve(
                        vec![ClosureProperty::UnionClosed, ClosureProperty::EmptyTeam],
                        vec![ClosureProperty::Flat],
                        BothArgs,
                    ),
                    HOLDS,
                )],
            )
        },
    }
}

/// Checks every cell of both tables against the pool described by `config`.
pub fn reproduce_tables(config: TableConfig) -> Result<TableReport> {
    let sig = config.signature()?;
    let pool = enumerate_pool(&sig)?;
    let mut rows = Vec::new();
    for column in INFERENTIAL_COLUMNS {
        for op in TABLE_CONDITIONALS {
            rows.push(run_cell(Table::Inferential, op, inferential_cell(op, column), &pool)?);
        }
    }
    for property in CLOSURE_COLUMNS {
        for op in TABLE_CONDITIONALS {
            rows.push(run_cell(Table::Closure, op, closure_cell(op, property), &pool)?);
        }
    }
    Ok(TableReport { config, pool: sig.describe(), pool_size: pool.len(), rows })
}

fn run_cell(table: Table, op: BinaryOp, cell: Cell, pool: &Pool) -> Result<TableRow> {
    let checks = cell
        .checks
        .iter()
        .map(|(check, expected)| run_check(check, *expected, op, pool))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableRow {
        table,
        conditional: op,
        column: cell.column,
        cell: cell.text,
        kind: cell.kind,
        interpretation: cell.interpretation,
        skip_reason: cell.skip_reason,
        checks,
    })
}

fn names(ps: &[ClosureProperty]) -> String {
    ps.iter().map(|p| p.name()).collect::<Vec<_>>().join("+")
}

fn run_check(check: &Check, expected: Verdict, op: BinaryOp, pool: &Pool) -> Result<CheckResult> {
    let ctx = &pool.signature.context;
    match check {
        Check::Schema(kind, filters) => {
            let report = check_inference_schema(*kind, op, pool, filters)?;
            let counterexample = match &report.counterexample {
                Some(c) => Some(CellCounterexample {
                    assignment: c.assignment.iter().map(|(n, f)| (n.to_string(), f.clone())).collect(),
                    failure: c.failure.to_string(),
                    team: c.team,
                    verified: c.verify(ctx)?,
                }),
                None => None,
            };
            let filter = if filters.is_empty() {
                "none".into()
            } else {
                filters.iter().map(RoleFilter::name).collect::<Vec<_>>().join(",")
            };
            Ok(CheckResult {
                label: kind.name().into(),
                filter,
                expected,
                verdict: report.verdict(),
                instances: report.instances,
                counterexample,
            })
        }
        Check::Preserve(required, ensured, mode) => {
            let report = check_preservation_with(required, ensured, op, pool, *mode)?;
            let counterexample = match &report.counterexample {
                Some(c) => {
                    let team = c.witness.teams()[0];
                    Some(CellCounterexample {
                        assignment: vec![("φ".into(), c.antecedent.clone()), ("ψ".into(), c.consequent.clone())],
                        failure: format!("{} is not {}: {}", c.formula, c.property.name(), c.witness.describe(ctx)),
                        team,
                        verified: c.verify(ctx, required, *mode)?,
                    })
                }
                None => None,
            };
            let filter = match mode {
                PreservationMode::Unrestricted => "none".into(),
                _ => format!("{} {}", mode.name(), names(required)),
            };
            Ok(CheckResult {
                label: format!("{} result", names(ensured)),
                filter,
                expected,
                verdict: report.verdict(),
                instances: report.instances,
                counterexample,
            })
        }
        Check::FlatUnlessEmpty => {
            let mut instances = 0;
            let mut counterexample = None;
            'outer: for a in &pool.entries {
                for c in &pool.entries {
                    instances += 1;
                    let result = apply_binary(op, &a.denotation, &c.denotation);
                    if let Some(w) = crate::closure::check(&result, ClosureProperty::Flat) {
                        if !result.is_empty() {
                            let formula = Formula::binary(op, a.formula.clone(), c.formula.clone());
                            let recomputed = denotation(&formula, ctx)?;
                            counterexample = Some(CellCounterexample {
                                assignment: vec![("φ".into(), a.formula.clone()), ("ψ".into(), c.formula.clone())],
                                failure: format!("{formula} is nonempty and not flat: {}", w.describe(ctx)),
                                team: w.teams()[0],
                                verified: !recomputed.is_empty() && w.violates(&recomputed, ClosureProperty::Flat),
                            });
                            break 'outer;
                        }
                    }
                }
            }
            let verdict = if counterexample.is_some() { Verdict::Refuted } else { Verdict::ConsistentBounded };
            Ok(CheckResult {
                label: "flat-unless-empty result".into(),
                filter: "none".into(),
                expected,
                verdict,
                instances,
                counterexample,
            })
        }
        Check::Generalizes => {
            let mut instances = 0;
            let mut counterexample = None;
            'outer: for a in pool.entries.iter().filter(|e| has_property(&e.denotation, ClosureProperty::Downward)) {
                for c in &pool.entries {
                    instances += 1;
                    let ours = apply_binary(op, &a.denotation, &c.denotation);
                    let int = apply_binary(BinaryOp::IntImp, &a.denotation, &c.denotation);
                    if ours != int {
                        let f = Formula::binary(op, a.formula.clone(), c.formula.clone());
                        let g = Formula::binary(BinaryOp::IntImp, a.formula.clone(), c.formula.clone());
                        let (prem, concl) = if ours.difference(&int).is_empty() { (g, f) } else { (f, g) };
                        let result = entails(core::slice::from_ref(&prem), &concl, ctx)?;
                        let team = ours.difference(&int).union(&int.difference(&ours)).first().expect("they differ");
                        counterexample = Some(CellCounterexample {
                            assignment: vec![("φ".into(), a.formula.clone()), ("ψ".into(), c.formula.clone())],
                            failure: format!("{prem} |= {concl}"),
                            team: result.counterexample.unwrap_or(team),
                            verified: result.counterexample.is_some(),
                        });
                        break 'outer;
                    }
                }
            }
            let verdict = if counterexample.is_some() { Verdict::Refuted } else { Verdict::ConsistentBounded };
            Ok(CheckResult {
                label: "agrees with -> on downward-closed antecedents".into(),
                filter: "antecedent-downward-closed".into(),
                expected,
                verdict,
                instances,
                counterexample,
            })
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = self.verdict().map_or("skipped", Verdict::name);
        write!(
            f,
            "{:<12} {:<7} {:<27} {:<30} {:<19} {}",
            self.table.name(),
            self.conditional.token(),
            self.column,
            self.cell,
            verdict,
            if self.agrees() { "agrees" } else { "DISAGREES" }
        )
    }
}
