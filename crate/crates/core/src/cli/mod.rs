//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for usage and input errors.

pub mod fuzz;
pub mod report;
pub mod scenario;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::gcs::{
    agm_consistency_bruteforce, build_model, check_prop2, default_atom_budget, find_rationalizing_preorder,
    induced_beliefs, validate_gcs, Consistency, GcsError, MAX_BRUTEFORCE_ATOMS,
};
use crate::logic::parse_formula;
use crate::revision::{build_filtered, check_agm, check_filtered, revision_from_preorder, AgmPostulate, RevisionError, RevisionTable};
use fuzz::{fuzz_report, Cases, MAX_FUZZ_ATOMS};
use report::{postulate_checks, prop2_checks, validation_checks, witness, Check, Report};
pub use scenario::{load_scenario, parse_scenario, save_scenario, Loaded, Scenario, ScenarioError};

pub const SEED_ENV: &str = "FILTRA_SEED";

#[derive(Debug, Parser)]
#[command(name = "filtra", version, about = "Filtered belief revision and generalized choice structures")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a scenario's structure satisfies the definition.
    Validate { file: PathBuf },
    #[command(subcommand)]
    Check(CheckCommand),
    #[command(subcommand)]
    Build(BuildCommand),
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Find a total pre-order reproducing the choices on credible events.
    Rationalize { file: PathBuf },
    /// Run the seeded round-trip suites.
    Fuzz {
        #[arg(long)]
        atoms: usize,
        /// A number of random cases, or `all` for exhaustive enumeration.
        #[arg(long, default_value = "1000", value_parser = parse_cases)]
        cases: Cases,
        /// Overridden by the FILTRA_SEED environment variable.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// The direct consistency conditions on the structure.
    Prop2 { file: PathBuf },
    /// AGM postulates on the scenario's table (or the preorder's).
    Agm {
        file: PathBuf,
        /// Postulate numbers, e.g. `1-8` or `2,7,8`.
        #[arg(long, default_value = "1-8", value_parser = parse_postulates)]
        postulates: Postulates,
    },
    /// Filter clauses on the scenario's table under its labeling.
    Filtered { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BuildCommand {
    /// Filter the scenario's basic revision through its labeling.
    Filtered {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Search every valuation for a model whose partial revision no
    /// filtered basic revision extends.
    Def6 {
        file: PathBuf,
        #[arg(long)]
        atoms: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DemoCommand {
    /// The bundled three-suspect scenario.
    Detective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Postulates(pub Vec<AgmPostulate>);

fn parse_postulates(text: &str) -> Result<Postulates, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a, b),
            None => (part, part),
        };
        let number = |s: &str| s.trim().parse::<u8>().map_err(|_| format!("`{s}` is not a postulate number"));
        let (lo, hi) = (number(lo)?, number(hi)?);
        if lo > hi {
            return Err(format!("empty range `{part}`"));
        }
        for n in lo..=hi {
            let p = AgmPostulate::new(n).ok_or_else(|| format!("there is no postulate {n}; use 1 to 8"))?;
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(Postulates(out))
}

fn parse_cases(text: &str) -> Result<Cases, String> {
    if text == "all" {
        return Ok(Cases::All);
    }
    text.parse().map(Cases::Random).map_err(|_| format!("`{text}` is neither a number nor `all`"))
}

/// An input or usage problem; reported on stderr with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Gcs(#[from] GcsError),
    #[error(transparent)]
    Revision(#[from] RevisionError),
    #[error("{0}")]
    Usage(String),
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let text = if cli.json { report.to_json() } else { report.to_text() };
            let _ = write!(out, "{text}");
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => validate(file),
        Command::Check(CheckCommand::Prop2 { file }) => prop2(file),
        Command::Check(CheckCommand::Agm { file, postulates }) => agm(file, &postulates.0),
        Command::Check(CheckCommand::Filtered { file }) => filtered(file),
        Command::Build(BuildCommand::Filtered { file, output }) => build(file, output),
        Command::Oracle(OracleCommand::Def6 { file, atoms }) => def6(file, *atoms),
        Command::Rationalize { file } => rationalize(file),
        Command::Fuzz { atoms, cases, seed } => {
            let seed = match std::env::var(SEED_ENV) {
                Ok(text) => text.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}=`{text}` is not a seed")))?,
                Err(_) => *seed,
            };
            if *atoms == 0 || *atoms > MAX_FUZZ_ATOMS {
                return Err(CliError::Usage(format!("--atoms must be between 1 and {MAX_FUZZ_ATOMS}")));
            }
            if *cases == Cases::All && *atoms != 1 {
                return Err(CliError::Usage("exhaustive mode is available only with --atoms 1".into()));
            }
            Ok(fuzz_report(*atoms, *cases, seed))
        }
        Command::Demo(DemoCommand::Detective) => demo_detective(),
    }
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

fn validate(file: &Path) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    // optional parts must also be well formed
    loaded.preorder()?;
    loaded.labeling()?;
    loaded.table()?;
    let checks = validation_checks(&loaded.universe, &validate_gcs(&loaded.gcs));
    Ok(Report::new(format!("validate {}", file_label(file)), vec![], checks))
}

fn prop2(file: &Path) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    let report = check_prop2(&loaded.gcs)?;
    let notes = vec![format!("f(Ω) = {}", loaded.universe.describe(loaded.gcs.initial()))];
    Ok(Report::new(format!("check prop2 {}", file_label(file)), notes, prop2_checks(&loaded.universe, &report)))
}

/// The scenario's explicit table, or else the one its preorder generates.
fn star_table(loaded: &Loaded) -> Result<(RevisionTable, &'static str), CliError> {
    if let Some(t) = loaded.table()? {
        return Ok((t, "table from the scenario"));
    }
    match loaded.preorder()? {
        Some(order) => Ok((revision_from_preorder(&order)?, "table generated by the preorder")),
        None => Err(CliError::Usage("the scenario has neither a table nor a preorder".into())),
    }
}

fn agm(file: &Path, postulates: &[AgmPostulate]) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    let (t, source) = star_table(&loaded)?;
    let checks = postulate_checks(&loaded.universe, &check_agm(&t, postulates));
    Ok(Report::new(format!("check agm {}", file_label(file)), vec![source.to_string()], checks))
}

fn filtered(file: &Path) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    let c = loaded.labeling()?;
    let (t, source) = match loaded.table()? {
        Some(t) => (t, "table from the scenario"),
        None => {
            let (star, _) = star_table(&loaded)?;
            (build_filtered(&star, &c)?, "table filtered from the preorder's revision")
        }
    };
    let checks = postulate_checks(&loaded.universe, &check_filtered(&t, &c));
    Ok(Report::new(format!("check filtered {}", file_label(file)), vec![source.to_string()], checks))
}

fn build(file: &Path, output: &Path) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    let c = loaded.labeling()?;
    let (star, source) = star_table(&loaded)?;
    let command = format!("build filtered {}", file_label(file));
    let filtered = match build_filtered(&star, &c) {
        Ok(t) => t,
        Err(RevisionError::Precondition { postulate, witness: w }) => {
            let check = Check::fail(
                format!("{postulate} precondition"),
                witness(&loaded.universe, &w.propositions, w.detail.clone()),
            );
            return Ok(Report::new(command, vec![source.to_string()], vec![check]));
        }
        Err(e) => return Err(e.into()),
    };
    let mut scenario = loaded.scenario.clone();
    scenario.table = Some(scenario::table_spec(&filtered));
    save_scenario(&scenario, output)?;
    let mut checks = vec![Check::pass("AGM1-6 precondition")];
    checks.extend(postulate_checks(&loaded.universe, &check_filtered(&filtered, &c)));
    let notes = vec![source.to_string(), format!("wrote {}", file_label(output))];
    Ok(Report::new(command, notes, checks))
}

fn def6(file: &Path, atoms: Option<usize>) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    let states = loaded.universe.len();
    let atoms = atoms.unwrap_or_else(|| default_atom_budget(states).min(MAX_BRUTEFORCE_ATOMS));
    let verdict = agm_consistency_bruteforce(&loaded.gcs, atoms)?;
    let name = format!("every model over {atoms} atom(s) extends");
    let check = match verdict {
        Consistency::Consistent { models } => Check::pass(name).with_info(format!("{models} valuations up to renaming")),
        Consistency::Inconsistent { counter_model, blocked } => {
            let omega = counter_model.omega();
            let states: Vec<String> = omega
                .points()
                .iter()
                .map(|p| {
                    let truths: Vec<&str> =
                        omega.atoms().iter().enumerate().filter(|(a, _)| p.assignment >> a & 1 == 1).map(|(_, n)| n).collect();
                    format!("{}:{{{}}}", p.id, truths.join(","))
                })
                .collect();
            let detail = format!("valuation {}; {}", states.join(" "), blocked.reason);
            Check::fail(name, witness(omega, &[blocked.event], detail))
        }
    };
    Ok(Report::new(format!("oracle def6 {}", file_label(file)), vec![], vec![check]))
}

fn rationalize(file: &Path) -> Result<Report, CliError> {
    let loaded = load_scenario(file)?;
    let g = &loaded.gcs;
    let check = match find_rationalizing_preorder(g)? {
        Some(order) => {
            let reproduces = g.credible().iter().all(|&e| g.choice(e) == Some(order.min_set(e)));
            Check::flag("rationalizable on credible events", reproduces).with_info(order.to_string())
        }
        None => Check::fail(
            "rationalizable on credible events",
            witness(&loaded.universe, &[], "none: no total pre-order reproduces f on the credible events"),
        ),
    };
    Ok(Report::new(format!("rationalize {}", file_label(file)), vec![], vec![check]))
}

fn demo_detective() -> Result<Report, CliError> {
    let loaded = parse_scenario(scenario::DETECTIVE)?;
    let u = &loaded.universe;
    let g = &loaded.gcs;
    let model = build_model(g, u.atoms())?;
    let beliefs = induced_beliefs(&model);
    let f = |s: &str| parse_formula(s, u.atoms()).expect("fixed formula");
    let member = |k: &crate::belief::BeliefSet, s: &str| k.contains(&f(s)).expect("declared atoms");
    let ann = crate::logic::truth_set(&f("ann"), u).expect("declared atoms");
    let after = beliefs.revise(&f("ann")).expect("declared atoms").cloned();

    let mut notes = loaded.scenario.comments.clone();
    notes.push(format!("initial beliefs K = {}", beliefs.initial));
    let mut checks = vec![Check::flag("K contains ~ann", member(&beliefs.initial, "~ann"))];
    match &after {
        Some(b) => {
            notes.push(format!("information ann ({}) gives {}", g.family(ann).map_or('-', |f| f.letter()), b));
            checks.push(Check::flag("after ann, ann is not believed", !member(b, "ann")));
            checks.push(Check::flag("after ann, ~ann is not believed", !member(b, "~ann")));
        }
        None => checks.push(Check::flag("ann is potential information", false)),
    }
    let star = revision_from_preorder(&loaded.preorder()?.expect("bundled preorder"))?;
    let filtered = build_filtered(&star, &loaded.labeling()?)?;
    checks.push(Check::flag(
        "filtered revision by ann equals the induced one",
        after.map(|b| b.points()) == Some(filtered.entry(ann)),
    ));
    checks.extend(prop2_checks(u, &check_prop2(g)?));
    Ok(Report::new("demo detective", notes, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn postulate_ranges() {
        let all = parse_postulates("1-8").unwrap();
        assert_eq!(all.0, AgmPostulate::ALL.to_vec());
        let some = parse_postulates("8,2,7-8").unwrap();
        assert_eq!(some.0.iter().map(|p| p.number()).collect::<Vec<_>>(), vec![2, 7, 8]);
        assert!(parse_postulates("0-3").is_err());
        assert!(parse_postulates("5-2").is_err());
        assert!(parse_postulates("x").is_err());
    }

    #[test]
    fn cases_argument() {
        assert_eq!(parse_cases("all"), Ok(Cases::All));
        assert_eq!(parse_cases("12"), Ok(Cases::Random(12)));
        assert!(parse_cases("many").is_err());
    }

    #[test]
    fn demo_passes() {
        let report = demo_detective().unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }
}
