//! JSON report shapes. Every report carries `"format": 1`.

use serde::Serialize;
use teamsem::closure::{ClosureReport, Witness};
use teamsem::harness::{CellCounterexample, CheckResult, Pool, TableReport, TableRow};
use teamsem::synthesis::CounterexampleBundle;
use teamsem::{Context, EntailmentResult, Formula, Team, TeamProposition};

pub const FORMAT: u32 = 1;

/// A team as 0/1 rows aligned with the context's variables.
pub type Rows = Vec<Vec<u8>>;

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub format: u32,
    pub context: Vec<String>,
    pub formula: String,
    pub team: Rows,
    pub result: bool,
}

impl EvalReport {
    pub fn new(ctx: &Context, f: &Formula, team: Team, result: bool) -> EvalReport {
        EvalReport { format: FORMAT, context: ctx.vars().to_vec(), formula: f.render(), team: ctx.rows(team), result }
    }
}

#[derive(Debug, Serialize)]
pub struct EntailReport {
    pub format: u32,
    pub context: Vec<String>,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub holds: bool,
    pub counterexample: Option<Rows>,
}

impl EntailReport {
    pub fn new(ctx: &Context, premises: &[Formula], conclusion: &Formula, r: &EntailmentResult) -> EntailReport {
        EntailReport {
            format: FORMAT,
            context: ctx.vars().to_vec(),
            premises: premises.iter().map(Formula::render).collect(),
            conclusion: conclusion.render(),
            holds: r.holds(),
            counterexample: r.counterexample.map(|t| ctx.rows(t)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub kind: &'static str,
    pub teams: Vec<Rows>,
    pub description: String,
}

impl WitnessReport {
    pub fn new(ctx: &Context, w: &Witness) -> WitnessReport {
        let kind = match w {
            Witness::EmptyTeam => "empty-team",
            Witness::Missing { .. } => "missing",
            Witness::Pair { .. } => "pair",
            Witness::Between { .. } => "between",
            Witness::Flat { .. } => "flat",
        };
        WitnessReport { kind, teams: w.teams().into_iter().map(|t| ctx.rows(t)).collect(), description: w.describe(ctx) }
    }
}

#[derive(Debug, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub holds: bool,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Serialize)]
pub struct ClosureJson {
    pub format: u32,
    pub context: Vec<String>,
    pub formula: String,
    pub properties: Vec<PropertyReport>,
}

impl ClosureJson {
    pub fn new(r: &ClosureReport) -> ClosureJson {
        ClosureJson {
            format: FORMAT,
            context: r.context.vars().to_vec(),
            formula: r.formula.render(),
            properties: r
                .properties
                .iter()
                .map(|p| PropertyReport {
                    property: p.property.name(),
                    holds: p.holds,
                    witness: p.witness.as_ref().map(|w| WitnessReport::new(&r.context, w)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DenoteReport {
    pub format: u32,
    pub context: Vec<String>,
    pub formula: String,
    pub count: usize,
    pub teams: Vec<Rows>,
}

impl DenoteReport {
    pub fn new(ctx: &Context, f: &Formula, p: &TeamProposition) -> DenoteReport {
        DenoteReport {
            format: FORMAT,
            context: ctx.vars().to_vec(),
            formula: f.render(),
            count: p.len(),
            teams: p.iter().map(|t| ctx.rows(t)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BundleReport {
    pub format: u32,
    pub id: &'static str,
    pub description: &'static str,
    pub context: Vec<String>,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub holds: bool,
    pub witness: Rows,
    pub verified: bool,
}

impl BundleReport {
    pub fn new(b: &CounterexampleBundle, verified: bool) -> BundleReport {
        BundleReport {
            format: FORMAT,
            id: b.id,
            description: b.description,
            context: b.context.vars().to_vec(),
            premises: b.premises.iter().map(Formula::render).collect(),
            conclusion: b.conclusion.render(),
            holds: false,
            witness: b.context.rows(b.witness),
            verified,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PoolMember {
    pub formula: String,
    pub teams: usize,
}

#[derive(Debug, Serialize)]
pub struct PoolReport {
    pub format: u32,
    pub signature: String,
    pub size: usize,
    pub formulas: Vec<PoolMember>,
}

impl PoolReport {
    pub fn new(pool: &Pool) -> PoolReport {
        PoolReport {
            format: FORMAT,
            signature: pool.signature.describe(),
            size: pool.len(),
            formulas: pool
                .entries
                .iter()
                .map(|e| PoolMember { formula: e.formula.render(), teams: e.denotation.len() })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Assignment {
    pub variable: String,
    pub formula: String,
}

#[derive(Debug, Serialize)]
pub struct CounterexampleJson {
    pub assignment: Vec<Assignment>,
    pub failure: String,
    pub team: Rows,
    pub verified: bool,
}

impl CounterexampleJson {
    fn new(ctx: &Context, c: &CellCounterexample) -> CounterexampleJson {
        CounterexampleJson {
            assignment: c
                .assignment
                .iter()
                .map(|(v, f)| Assignment { variable: v.clone(), formula: f.render() })
                .collect(),
            failure: c.failure.clone(),
            team: ctx.rows(c.team),
            verified: c.verified,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub check: String,
    pub filter: String,
    pub expected: &'static str,
    pub verdict: &'static str,
    pub instances: usize,
    pub counterexample: Option<CounterexampleJson>,
}

impl CheckJson {
    fn new(ctx: &Context, c: &CheckResult) -> CheckJson {
        CheckJson {
            check: c.label.clone(),
            filter: c.filter.clone(),
            expected: c.expected.name(),
            verdict: c.verdict.name(),
            instances: c.instances,
            counterexample: c.counterexample.as_ref().map(|x| CounterexampleJson::new(ctx, x)),
        }
    }
}

/// One cell. `verdict`, `filter`, `instances` and `counterexample` describe
/// the cell's main check; `checks` lists all of them.
#[derive(Debug, Serialize)]
pub struct RowJson {
    pub table: &'static str,
    pub conditional: &'static str,
    pub column: &'static str,
    pub cell: &'static str,
    pub kind: &'static str,
    pub verdict: &'static str,
    pub agrees: bool,
    pub filter: Option<String>,
    pub instances: usize,
    pub counterexample: Option<CounterexampleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpretation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<&'static str>,
    pub checks: Vec<CheckJson>,
}

impl RowJson {
    fn new(ctx: &Context, r: &TableRow) -> RowJson {
        let main = r.checks.first();
        RowJson {
            table: r.table.name(),
            conditional: r.conditional.token(),
            column: r.column,
            cell: r.cell,
            kind: r.kind.name(),
            verdict: r.verdict().map_or("skipped", |v| v.name()),
            agrees: r.agrees(),
            filter: main.map(|c| c.filter.clone()),
            instances: main.map_or(0, |c| c.instances),
            counterexample: main.and_then(|c| c.counterexample.as_ref()).map(|x| CounterexampleJson::new(ctx, x)),
            interpretation: r.interpretation,
            skip_reason: r.skip_reason,
            checks: r.checks.iter().map(|c| CheckJson::new(ctx, c)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PoolInfo {
    pub vars: usize,
    pub depth: usize,
    pub description: String,
    pub size: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub agreeing: usize,
    pub disagreeing: usize,
    pub skipped: usize,
}

#[derive(Debug, Serialize)]
pub struct TablesJson {
    pub format: u32,
    pub note: &'static str,
    pub pool: PoolInfo,
    pub summary: Summary,
    pub rows: Vec<RowJson>,
}

impl TablesJson {
    pub fn new(r: &TableReport) -> teamsem::Result<TablesJson> {
        let ctx = Context::standard(r.config.vars)?;
        let skipped = r.skipped().count();
        let disagreeing = r.disagreements().count();
        Ok(TablesJson {
            format: FORMAT,
            note: "consistent-bounded means no counterexample in the pool; it is not a proof. \
                   The deduction theorem is checked with at most one side premise.",
            pool: PoolInfo { vars: r.config.vars, depth: r.config.depth, description: r.pool.clone(), size: r.pool_size },
            summary: Summary { cells: r.rows.len(), agreeing: r.rows.len() - disagreeing, disagreeing, skipped },
            rows: r.rows.iter().map(|row| RowJson::new(&ctx, row)).collect(),
        })
    }
}
