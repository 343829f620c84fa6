use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use teamsem::closure::closure_profile;
use teamsem::harness::{enumerate_pool, reproduce_tables, PoolSignature, TableConfig};
use teamsem::synthesis::{named_counterexample, COUNTEREXAMPLE_IDS};
use teamsem::{denotation, entails, eval, parse, Context, Formula, DEFAULT_VAR_CAP};

use crate::error::WorkbenchError;
use crate::report::{BundleReport, ClosureJson, DenoteReport, EntailReport, EvalReport, PoolReport, TablesJson};
use crate::teamfile::read_team;
use crate::{EXIT_FAILS, EXIT_OK, EXIT_USAGE};

/// Evaluate team-logic formulas, decide entailments and closure
/// properties, and check conditionals over bounded formula pools.
#[derive(Debug, Parser)]
#[command(name = "teamsem", version)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest accepted context size.
    #[arg(long, global = true, default_value_t = DEFAULT_VAR_CAP, value_name = "N")]
    pub var_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula on the team in a team file.
    Eval {
        #[arg(long, value_name = "VARS")]
        context: String,
        #[arg(long, value_name = "FILE")]
        team: PathBuf,
        formula: String,
    },
    /// Decide whether the premises entail the conclusion (exit 1 if not).
    Entail {
        #[arg(long, value_name = "VARS")]
        context: String,
        #[arg(long = "premise", value_name = "FORMULA")]
        premises: Vec<String>,
        #[arg(long, value_name = "FORMULA")]
        conclusion: String,
    },
    /// Closure properties of a formula's denotation, with witnesses.
    Closure {
        #[arg(long, value_name = "VARS")]
        context: String,
        formula: String,
    },
    /// List the teams satisfying a formula.
    Denote {
        #[arg(long, value_name = "VARS")]
        context: String,
        formula: String,
    },
    /// Print a named counterexample after re-verifying it.
    Witness {
        /// One of example1, example2-convex, ne-union, thm3-intersection.
        case: String,
    },
    /// Check the conditional tables over a bounded pool (exit 1 if any cell disagrees).
    Tables {
        #[arg(long, default_value_t = 2, value_name = "N")]
        vars: usize,
        #[arg(long, default_value_t = 3, value_name = "D")]
        depth: usize,
        /// Write the JSON report here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List a formula pool, one representative per denotation.
    Pool {
        #[arg(long, default_value_t = 2, value_name = "N")]
        vars: usize,
        #[arg(long, default_value_t = 2, value_name = "D")]
        depth: usize,
        /// Comma-separated connective tokens; defaults to the table pool's.
        #[arg(long, value_name = "LIST")]
        connectives: Option<String>,
    },
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(WorkbenchError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn context(list: &str, cap: usize) -> Result<Context, WorkbenchError> {
    Ok(Context::parse_list(list, cap)?)
}

fn formula(text: &str) -> Result<Formula, WorkbenchError> {
    parse(text).map_err(|e| teamsem::Error::from(e).into())
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), WorkbenchError> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(source: std::io::Error) -> WorkbenchError {
    WorkbenchError::Io { path: PathBuf::from("<stdout>"), source }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, WorkbenchError> {
    let cap = cli.var_cap;
    match &cli.command {
        Command::Eval { context: vars, team, formula: text } => {
            let ctx = context(vars, cap)?;
            let f = formula(text)?;
            let team = read_team(team, &ctx)?;
            let result = eval(&f, team, &ctx)?;
            if cli.json {
                emit_json(out, &EvalReport::new(&ctx, &f, team, result))?;
            } else {
                writeln!(out, "{result}").map_err(io_error)?;
            }
            Ok(EXIT_OK)
        }
        Command::Entail { context: vars, premises, conclusion } => {
            let ctx = context(vars, cap)?;
            let premises = premises.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
            let conclusion = formula(conclusion)?;
            let r = entails(&premises, &conclusion, &ctx)?;
            if cli.json {
                emit_json(out, &EntailReport::new(&ctx, &premises, &conclusion, &r))?;
            } else {
                match r.counterexample {
                    None => writeln!(out, "holds"),
                    Some(t) => writeln!(out, "fails\ncounterexample: {}", ctx.describe_team(t)),
                }
                .map_err(io_error)?;
            }
            Ok(if r.holds() { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Closure { context: vars, formula: text } => {
            let ctx = context(vars, cap)?;
            let r = closure_profile(&formula(text)?, &ctx)?;
            if cli.json {
                emit_json(out, &ClosureJson::new(&r))?;
            } else {
                for p in &r.properties {
                    match &p.witness {
                        None => writeln!(out, "{:<13} yes", p.property.name()),
                        Some(w) => writeln!(out, "{:<13} no   {}", p.property.name(), w.describe(&ctx)),
                    }
                    .map_err(io_error)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Denote { context: vars, formula: text } => {
            let ctx = context(vars, cap)?;
            let f = formula(text)?;
            let p = denotation(&f, &ctx)?;
            if cli.json {
                emit_json(out, &DenoteReport::new(&ctx, &f, &p))?;
            } else {
                writeln!(out, "{} teams", p.len()).map_err(io_error)?;
                for t in p.iter() {
                    writeln!(out, "{}", ctx.describe_team(t)).map_err(io_error)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Witness { case } => {
            let b = named_counterexample(case).map_err(|_| {
                WorkbenchError::Usage(format!("unknown case `{case}`; known cases: {}", COUNTEREXAMPLE_IDS.join(", ")))
            })?;
            let verified = b.verify()?;
            if !verified {
                return Err(WorkbenchError::Usage(format!("bundle `{case}` failed re-verification")));
            }
            if cli.json {
                emit_json(out, &BundleReport::new(&b, verified))?;
            } else {
                let premises: Vec<String> = b.premises.iter().map(Formula::render).collect();
                writeln!(
                    out,
                    "{}: {}\n{} |= {} fails\ncounterexample: {} (re-verified)",
                    b.id,
                    b.description,
                    premises.join(", "),
                    b.conclusion,
                    b.context.describe_team(b.witness)
                )
                .map_err(io_error)?;
            }
            Ok(EXIT_OK)
        }
        Command::Tables { vars, depth, out: path } => {
            if *vars > cap {
                return Err(teamsem::Error::ContextCap { vars: *vars, cap }.into());
            }
            let report = reproduce_tables(TableConfig { vars: *vars, depth: *depth })?;
            let json = TablesJson::new(&report)?;
            if let Some(path) = path {
                let text = serde_json::to_string_pretty(&json)? + "\n";
                std::fs::write(path, text).map_err(|source| WorkbenchError::Io { path: path.clone(), source })?;
            }
            if cli.json && path.is_none() {
                emit_json(out, &json)?;
            } else {
                writeln!(out, "pool: {} ({} formulas)", report.pool, report.pool_size).map_err(io_error)?;
                for row in &report.rows {
                    writeln!(out, "{row}").map_err(io_error)?;
                }
                let s = &json.summary;
                writeln!(
                    out,
                    "{} cells: {} agree, {} disagree, {} skipped",
                    s.cells, s.agreeing, s.disagreeing, s.skipped
                )
                .map_err(io_error)?;
            }
            Ok(if json.summary.disagreeing == 0 { EXIT_OK } else { EXIT_FAILS })
        }
        Command::Pool { vars, depth, connectives } => {
            if *vars > cap {
                return Err(teamsem::Error::ContextCap { vars: *vars, cap }.into());
            }
            let ctx = Context::standard(*vars)?;
            let sig = match connectives {
                Some(list) => PoolSignature::new(ctx, PoolSignature::parse_connectives(list)?, *depth)?,
                None => PoolSignature::default_for(ctx, *depth)?,
            };
            let pool = enumerate_pool(&sig)?;
            if cli.json {
                emit_json(out, &PoolReport::new(&pool))?;
            } else {
                writeln!(out, "{} ({} formulas)", sig.describe(), pool.len()).map_err(io_error)?;
                for e in &pool.entries {
                    writeln!(out, "{}", e.formula).map_err(io_error)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
