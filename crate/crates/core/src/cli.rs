//! Command-line surface: argument parsing, JSON documents and exit codes.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multicone::{
    degeneration_flatness_check, discrete_ideal_generators, ssyt_count, weyl_dim, FlatnessReport,
    HighestWeight, MonomialIdealBasis,
};
use crate::smt::{self, Coeff, SmtError, Standardness};
use crate::straighten::{
    shuffling_relation, straighten_tableau, verify_polynomial_identity, StraightenError, TableauPolynomial,
};
use crate::typea::{
    enumerate_standard, swap_pair, Multidegree, ReferenceShape, Row, Tableau, TableauError, TypeADatum,
};
use crate::wonderful::{
    brion_dimension, cox_degenerate_and_compare, cox_hilbert, cox_orbit_hilbert, orbit_dimension,
    CoxDegenerationReport, PicardDegree, RootSubset,
};

/// Seed used when neither `--seed` nor `MSMT_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "msmt", version, about = "Standard monomial theory on multisets, computed exactly")]
pub struct Cli {
    /// Seed for every randomized oracle.
    #[arg(long, global = true, env = "MSMT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Pretty-print the emitted JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a tableau in standard tableaux.
    Straighten {
        #[command(flatten)]
        tableau: TableauArgs,
        /// Random matrices used to check the expansion.
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Decide standardness, with a witness swap sequence on failure.
    Standard {
        #[command(flatten)]
        tableau: TableauArgs,
    },
    /// List the standard tableaux of one multidegree.
    Enumerate {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_delimiter = ',')]
        multidegree: Vec<u32>,
    },
    /// Hilbert function against the Weyl dimension and tableau counts.
    Hilbert {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 3)]
        max_total: u32,
    },
    /// Evaluate relations from a file at random matrices.
    Verify {
        /// JSON document with a `relations` array of polynomials.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Minimal generators of the ideal of non-standard monomials.
    Discrete {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Standard monomial counts of the Cox ring example against the section-space formula.
    Cox {
        /// Every Picard degree with |eᵢ| at most this.
        #[arg(long, default_value_t = 2)]
        range: i64,
        /// Restrict to an orbit closure: `none`, `s1`, `s2` or `s1,s2`.
        #[arg(long)]
        orbit: Option<String>,
    },
    /// Flatness reports for the multicone and the Cox example.
    Degenerate {
        #[arg(long, default_value_t = 3)]
        ell: u32,
        /// One reference shape; all shapes in ℓ when omitted.
        #[arg(long = "ref", value_delimiter = ',')]
        reference: Option<Vec<u32>>,
        #[arg(long, default_value_t = 3)]
        max_total: u32,
        #[arg(long, default_value_t = 2)]
        cox_max: u32,
    },
    /// Re-check the worked examples.
    Selftest,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[arg(long)]
    pub ell: u32,
    #[arg(long = "ref", value_delimiter = ',')]
    pub reference: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct TableauArgs {
    #[arg(long, required_unless_present = "input")]
    pub ell: Option<u32>,
    #[arg(long = "ref", value_delimiter = ',', required_unless_present = "input")]
    pub reference: Option<Vec<u32>>,
    /// Rows as digit strings separated by `;`, e.g. `24;134;2`.
    #[arg(long, required_unless_present = "input")]
    pub rows: Option<String>,
    /// A tableau document instead of the flags above.
    #[arg(long, conflicts_with_all = ["ell", "reference", "rows"])]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Internal(_) => EXIT_VERIFY_FAILED,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Cap(_) => "cap",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<TableauError> for CliError {
    fn from(e: TableauError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SmtError> for CliError {
    fn from(e: SmtError) -> Self {
        match e {
            SmtError::CapExceeded(_) => CliError::Cap(e.to_string()),
            SmtError::DatumMismatch(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<StraightenError> for CliError {
    fn from(e: StraightenError) -> Self {
        match e {
            StraightenError::Tableau(t) => t.into(),
            StraightenError::Smt(s) => s.into(),
            StraightenError::BracketEntry { .. } | StraightenError::MatrixShape { .. } => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub error: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauDoc {
    pub ell: u32,
    pub reference_shape: Vec<u32>,
    pub rows: Vec<Vec<u32>>,
}

impl TableauDoc {
    pub fn new(t: &Tableau, reference: &ReferenceShape) -> Self {
        TableauDoc {
            ell: reference.ell(),
            reference_shape: shape_vec(reference),
            rows: rows_of(t),
        }
    }

    pub fn reference(&self) -> CliResult<ReferenceShape> {
        Ok(ReferenceShape::new(&self.reference_shape, self.ell)?)
    }

    pub fn tableau(&self) -> CliResult<Tableau> {
        let rows = self.rows.iter().map(|r| Row::new(r, self.ell)).collect::<Result<Vec<_>, _>>()?;
        Ok(Tableau::new(rows)?)
    }
}

/// A tableau polynomial: `tableaux[i]` carries `coefficients[i]`, a `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub ell: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_shape: Option<Vec<u32>>,
    pub tableaux: Vec<Vec<Vec<u32>>>,
    pub coefficients: Vec<String>,
}

impl PolynomialDoc {
    pub fn new(p: &TableauPolynomial, ell: u32, reference: Option<&ReferenceShape>) -> Self {
        let (tableaux, coefficients) = p.iter().map(|(t, c)| (rows_of(t), format_rational(c))).unzip();
        PolynomialDoc { ell, reference_shape: reference.map(shape_vec), tableaux, coefficients }
    }

    pub fn polynomial(&self) -> CliResult<TableauPolynomial> {
        if self.tableaux.len() != self.coefficients.len() {
            return Err(CliError::Input(format!(
                "{} tableaux but {} coefficients",
                self.tableaux.len(),
                self.coefficients.len()
            )));
        }
        let mut p = TableauPolynomial::zero();
        for (rows, c) in self.tableaux.iter().zip(&self.coefficients) {
            let rows = rows.iter().map(|r| Row::new(r, self.ell)).collect::<Result<Vec<_>, _>>()?;
            p.add_term(Tableau::new(rows)?, parse_rational(c)?);
        }
        Ok(p)
    }
}

/// `p/q` with `q > 0`, also for integers.
pub fn format_rational(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> CliResult<Coeff> {
    let bad = || CliError::Input(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Coeff::new(n, d))
}

fn rows_of(t: &Tableau) -> Vec<Vec<u32>> {
    t.rows().iter().map(Row::entries_u32).collect()
}

fn shape_vec(reference: &ReferenceShape) -> Vec<u32> {
    reference.shapes().iter().map(|&k| k as u32).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StraightenDoc {
    pub input: TableauDoc,
    pub expansion: PolynomialDoc,
    pub text: String,
    pub oracle_trials: usize,
    pub oracle_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    /// Positions `j` of the adjacent swaps, 0-based.
    pub swaps: Vec<usize>,
    pub reached: Vec<Vec<u32>>,
    pub failing_pair: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardDoc {
    pub tableau: TableauDoc,
    pub weakly_standard: bool,
    pub standard: bool,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateDoc {
    pub ell: u32,
    pub reference_shape: Vec<u32>,
    pub multidegree: Vec<u32>,
    pub count: usize,
    pub tableaux: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub multidegree: Vec<u32>,
    pub standard: usize,
    pub weyl: u64,
    pub ssyt: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDoc {
    pub ell: u32,
    pub reference_shape: Vec<u32>,
    pub max_total: u32,
    pub rows: Vec<HilbertRow>,
    pub mismatches: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub relations: Vec<PolynomialDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub index: usize,
    pub text: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub trials: usize,
    pub seed: u64,
    pub results: Vec<VerifyResult>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteDoc {
    pub ell: u32,
    pub reference_shape: Vec<u32>,
    pub max_degree: u32,
    pub generators: MonomialIdealBasis,
    pub max_generator_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxRow {
    pub picard: [i64; 3],
    pub standard: usize,
    pub formula: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxDoc {
    pub range: i64,
    pub orbit: Option<String>,
    pub rows: Vec<CoxRow>,
    pub mismatches: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateDoc {
    pub multicone: Vec<FlatnessReport>,
    pub cox: CoxDegenerationReport,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestDoc {
    pub checks: Vec<CheckDoc>,
    pub passed: bool,
}

/// Exit status and the document to print.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: serde_json::Value,
    pub pretty: bool,
}

impl Outcome {
    /// The document as JSON; help and version text stay plain.
    pub fn render(&self) -> String {
        if let serde_json::Value::String(text) = &self.document {
            return text.trim_end().to_string();
        }
        if self.pretty {
            serde_json::to_string_pretty(&self.document)
        } else {
            serde_json::to_string(&self.document)
        }
        .expect("JSON values serialize")
    }
}

fn emit<T: Serialize>(doc: &T, ok: bool) -> CliResult<(i32, serde_json::Value)> {
    let value = serde_json::to_value(doc).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok((if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }, value))
}

/// Parse `argv` (program name first) and run the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_OK, document: serde_json::Value::String(e.to_string()), pretty: false };
            }
            let doc = ErrorDoc { error: "input".into(), message: e.to_string() };
            return Outcome { code: EXIT_INPUT, document: serde_json::to_value(doc).expect("serializes"), pretty: false };
        }
    };
    let pretty = cli.pretty;
    match execute(&cli) {
        Ok((code, document)) => Outcome { code, document, pretty },
        Err(e) => {
            let doc = ErrorDoc { error: e.kind().into(), message: e.to_string() };
            Outcome { code: e.exit_code(), document: serde_json::to_value(doc).expect("serializes"), pretty }
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl ShapeArgs {
    fn reference(&self) -> CliResult<ReferenceShape> {
        Ok(ReferenceShape::new(&self.reference, self.ell)?)
    }
}

impl TableauArgs {
    fn load(&self) -> CliResult<(Tableau, ReferenceShape)> {
        let doc = match &self.input {
            Some(path) => read_json::<TableauDoc>(path)?,
            None => {
                let ell = self.ell.expect("required by clap");
                let t = Tableau::parse(self.rows.as_deref().expect("required by clap"), ell)?;
                TableauDoc {
                    ell,
                    reference_shape: self.reference.clone().expect("required by clap"),
                    rows: rows_of(&t),
                }
            }
        };
        let reference = doc.reference()?;
        let t = doc.tableau()?;
        if !reference.is_adapted(&t) {
            return Err(CliError::Input(format!(
                "tableau {t} is not adapted to reference shape {:?}",
                doc.reference_shape
            )));
        }
        Ok((t, reference))
    }
}

fn execute(cli: &Cli) -> CliResult<(i32, serde_json::Value)> {
    let seed = cli.seed;
    match &cli.command {
        Command::Straighten { tableau, trials } => {
            let (t, reference) = tableau.load()?;
            let p = straighten_tableau(&t, &reference)?;
            let residual = TableauPolynomial::single(t.clone()).sub(&p);
            let ok = verify_polynomial_identity(&residual, *trials, seed)?;
            let doc = StraightenDoc {
                input: TableauDoc::new(&t, &reference),
                expansion: PolynomialDoc::new(&p, reference.ell(), Some(&reference)),
                text: p.to_string(),
                oracle_trials: *trials,
                oracle_passed: ok,
            };
            emit(&doc, ok)
        }
        Command::Standard { tableau } => {
            let (t, reference) = tableau.load()?;
            let d = TypeADatum::definitional(reference.clone());
            let formal = d.formal(&t)?;
            let verdict = smt::standardness(&formal, &d)?;
            let witness = match &verdict {
                Standardness::NonStandard(w) => Some(WitnessDoc {
                    swaps: w.swaps.clone(),
                    reached: w.reached.iter().map(|g| g.row.entries_u32()).collect(),
                    failing_pair: w.failing_pair,
                }),
                _ => None,
            };
            let doc = StandardDoc {
                tableau: TableauDoc::new(&t, &reference),
                weakly_standard: t.is_weakly_standard(),
                standard: verdict.is_standard(),
                witness,
            };
            emit(&doc, true)
        }
        Command::Enumerate { shape, multidegree } => {
            let reference = shape.reference()?;
            let md = Multidegree(multidegree.clone());
            let ts = enumerate_standard(&md, &reference)?;
            let doc = EnumerateDoc {
                ell: reference.ell(),
                reference_shape: shape_vec(&reference),
                multidegree: multidegree.clone(),
                count: ts.len(),
                tableaux: ts.iter().map(rows_of).collect(),
            };
            emit(&doc, true)
        }
        Command::Hilbert { shape, max_total } => {
            let reference = shape.reference()?;
            let ell = reference.ell();
            let mut rows = Vec::new();
            let mut mismatches = Vec::new();
            for md in Multidegree::all_up_to(reference.len(), *max_total) {
                let standard = enumerate_standard(&md, &reference)?.len();
                let lambda = HighestWeight::of_multidegree(&md, &reference);
                let weyl = weyl_dim(&lambda, ell).to_u64().unwrap_or(u64::MAX);
                let ssyt = ssyt_count(&lambda, ell);
                if standard as u64 != weyl || weyl != ssyt {
                    mismatches.push(md.0.clone());
                }
                rows.push(HilbertRow { multidegree: md.0, standard, weyl, ssyt });
            }
            let ok = mismatches.is_empty();
            let doc = HilbertDoc { ell, reference_shape: shape_vec(&reference), max_total: *max_total, rows, mismatches };
            emit(&doc, ok)
        }
        Command::Verify { input, trials } => {
            let file: RelationFile = read_json(input)?;
            let mut results = Vec::new();
            for (index, rel) in file.relations.iter().enumerate() {
                let p = rel.polynomial()?;
                let passed = verify_polynomial_identity(&p, *trials, seed)?;
                results.push(VerifyResult { index, text: p.to_string(), passed });
            }
            let failures = results.iter().filter(|r| !r.passed).count();
            let doc = VerifyDoc { trials: *trials, seed, results, failures };
            emit(&doc, failures == 0)
        }
        Command::Discrete { shape, max_degree } => {
            let reference = shape.reference()?;
            let generators = discrete_ideal_generators(&reference, *max_degree)?;
            let doc = DiscreteDoc {
                ell: reference.ell(),
                reference_shape: shape_vec(&reference),
                max_degree: *max_degree,
                max_generator_degree: generators.max_generator_degree(),
                generators,
            };
            emit(&doc, true)
        }
        Command::Cox { range, orbit } => {
            if *range < 0 {
                return Err(CliError::Input(format!("range must be non-negative, got {range}")));
            }
            let subset = orbit.as_deref().map(parse_orbit).transpose()?;
            let mut rows = Vec::new();
            let mut mismatches = Vec::new();
            for e1 in -range..=*range {
                for e2 in -range..=*range {
                    for e3 in -range..=*range {
                        let e = PicardDegree([e1, e2, e3]);
                        let (standard, formula) = match subset {
                            Some(s) => (cox_orbit_hilbert(&e, s), orbit_dimension(&e, s)),
                            None => (cox_hilbert(&e), brion_dimension(&e)),
                        };
                        if standard as u64 != formula {
                            mismatches.push(e.0);
                        }
                        rows.push(CoxRow { picard: e.0, standard, formula });
                    }
                }
            }
            let ok = mismatches.is_empty();
            let doc = CoxDoc { range: *range, orbit: subset.map(|s| s.to_string()), rows, mismatches };
            emit(&doc, ok)
        }
        Command::Degenerate { ell, reference, max_total, cox_max } => {
            let references = match reference {
                Some(r) => vec![ReferenceShape::new(r, *ell)?],
                None => all_references(*ell),
            };
            let multicone = references
                .iter()
                .map(|r| degeneration_flatness_check(r, *max_total, seed))
                .collect::<Result<Vec<_>, _>>()?;
            let cox = cox_degenerate_and_compare(*cox_max);
            let mismatches = multicone.iter().map(|r| r.mismatches.len()).sum::<usize>()
                + cox.mismatches.len()
                + usize::from(!cox.special_rules_match);
            let doc = DegenerateDoc { multicone, cox, mismatches };
            emit(&doc, mismatches == 0)
        }
        Command::Selftest => {
            let checks = selftest(seed);
            let passed = checks.iter().all(|c| c.passed);
            emit(&SelftestDoc { checks, passed }, passed)
        }
    }
}

fn parse_orbit(s: &str) -> CliResult<RootSubset> {
    let mut set = [false, false];
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "none" => {}
            "s1" => set[0] = true,
            "s2" => set[1] = true,
            _ => return Err(CliError::Input(format!("unknown spherical root {part:?}; use s1, s2 or none"))),
        }
    }
    Ok(RootSubset(set))
}

/// Every ordering of every non-empty subset of `1..=ℓ`.
pub fn all_references(ell: u32) -> Vec<ReferenceShape> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << ell) {
        let subset: Vec<u32> = (1..=ell).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        for p in permutations(&subset) {
            out.push(ReferenceShape::new(&p, ell).expect("distinct shapes in range"));
        }
    }
    out
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn check(name: &str, run: impl FnOnce() -> CliResult<(bool, String)>) -> CheckDoc {
    let (passed, detail) = run().unwrap_or_else(|e| (false, e.to_string()));
    CheckDoc { name: name.into(), passed, detail }
}

fn literal(terms: &[(&str, i64)], ell: u32) -> CliResult<TableauPolynomial> {
    let mut p = TableauPolynomial::zero();
    for &(rows, c) in terms {
        p.add_term(Tableau::parse(rows, ell)?, smt::coeff(c));
    }
    Ok(p)
}

/// The worked examples, each recomputed from scratch.
pub fn selftest(seed: u64) -> Vec<CheckDoc> {
    let row = |s: &str, ell: u32| Row::parse_digits(s, ell);
    vec![
        check("swap 25,1346", || {
            let (a, b) = swap_pair(&row("25", 5)?, &row("1346", 5)?)?;
            Ok((a.to_string() == "1245" && b.to_string() == "36", format!("({a},{b})")))
        }),
        check("standardness of 24,134,3 and 24,134,2", || {
            let reference = ReferenceShape::new(&[2, 3, 1], 3)?;
            let d = TypeADatum::definitional(reference);
            let good = smt::standardness(&d.formal(&Tableau::parse("24;134;3", 3)?)?, &d)?;
            let bad = smt::standardness(&d.formal(&Tableau::parse("24;134;2", 3)?)?, &d)?;
            let reached = match &bad {
                Standardness::NonStandard(w) => {
                    w.reached.iter().map(|g| g.row.to_string()).collect::<Vec<_>>().join(",")
                }
                _ => String::new(),
            };
            Ok((good.is_standard() && reached == "124,34,2", format!("witness {reached}")))
        }),
        check("shuffling relations", || {
            let a = shuffling_relation(&row("234", 3)?, &row("14", 3)?)?;
            let b = shuffling_relation(&row("34", 3)?, &row("2", 3)?)?;
            let want_a = literal(&[("234;14", 1), ("134;24", -1), ("124;34", 1)], 3)?;
            let want_b = literal(&[("34;2", 1), ("24;3", -1), ("23;4", 1)], 3)?;
            let zero = verify_polynomial_identity(&a, 100, seed)? && verify_polynomial_identity(&b, 100, seed)?;
            Ok((zero && a == want_a && b == want_b, format!("{a}; {b}")))
        }),
        check("straighten 24,134,2", || {
            let reference = ReferenceShape::new(&[2, 3, 1], 3)?;
            let p = straighten_tableau(&Tableau::parse("24;134;2", 3)?, &reference)?;
            let want = literal(&[("14;234;2", 1), ("24;124;3", 1), ("23;124;4", -1)], 3)?;
            Ok((p == want, p.to_string()))
        }),
        check("enumerate counts 6 and 64", || {
            let reference = ReferenceShape::new(&[2, 3, 1], 3)?;
            let a = enumerate_standard(&Multidegree(vec![1, 0, 0]), &reference)?.len();
            let b = enumerate_standard(&Multidegree(vec![1, 1, 1]), &reference)?.len();
            Ok((a == 6 && b == 64, format!("{a}, {b}")))
        }),
        check("cox counts", || {
            let got: Vec<usize> = [[0, 1, 0], [0, 2, 0], [1, 0, 1]].iter().map(|&e| cox_hilbert(&PicardDegree(e))).collect();
            Ok((got == [4, 10, 4], format!("{got:?}")))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("msmt").chain(args.iter().copied()))
    }

    #[test]
    fn straighten_worked_example() {
        let out = go(&["straighten", "--ell", "3", "--ref", "2,3,1", "--rows", "24;134;2"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.render());
        let doc: StraightenDoc = serde_json::from_value(out.document.clone()).unwrap();
        assert_eq!(doc.expansion.tableaux.len(), 3);
        assert!(doc.oracle_passed);
        let again: StraightenDoc = serde_json::from_str(&out.render()).unwrap();
        assert_eq!(again, doc);
        let p = doc.expansion.polynomial().unwrap();
        assert_eq!(PolynomialDoc::new(&p, 3, Some(&doc.input.reference().unwrap())), doc.expansion);
    }

    #[test]
    fn enumerate_count() {
        let out = go(&["enumerate", "--ell", "3", "--ref", "2,3,1", "--multidegree", "1,0,0"]);
        let doc: EnumerateDoc = serde_json::from_value(out.document).unwrap();
        assert_eq!(doc.count, 6);
    }

    #[test]
    fn cox_range_has_no_mismatch() {
        let out = go(&["cox", "--range", "3"]);
        assert_eq!(out.code, EXIT_OK);
        let doc: CoxDoc = serde_json::from_value(out.document).unwrap();
        assert!(doc.mismatches.is_empty());
        assert_eq!(doc.rows.len(), 343);
        let out = go(&["cox", "--range", "2", "--orbit", "none"]);
        assert_eq!(out.code, EXIT_OK);
    }

    #[test]
    fn standard_witness() {
        let out = go(&["standard", "--ell", "3", "--ref", "2,3,1", "--rows", "24;134;2"]);
        let doc: StandardDoc = serde_json::from_value(out.document).unwrap();
        assert!(doc.weakly_standard && !doc.standard);
        let w = doc.witness.unwrap();
        assert_eq!(w.swaps, vec![0]);
        assert_eq!(w.reached, vec![vec![1, 2, 4], vec![3, 4], vec![2]]);
    }

    #[test]
    fn input_errors_exit_two() {
        let out = go(&["straighten", "--ell", "3", "--ref", "2,3,1", "--rows", "25;134;2"]);
        assert_eq!(out.code, EXIT_INPUT);
        let doc: ErrorDoc = serde_json::from_value(out.document).unwrap();
        assert_eq!(doc.error, "input");
        assert_eq!(go(&["nonsense"]).code, EXIT_INPUT);
        assert_eq!(go(&["cox", "--orbit", "s3"]).code, EXIT_INPUT);
        assert_eq!(go(&["standard", "--ell", "3", "--ref", "1,2,3", "--rows", "24;134;2"]).code, EXIT_INPUT);
    }

    #[test]
    fn rationals_round_trip() {
        for s in ["3/4", "-1/2", "5/1", "0/1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("7").unwrap(), smt::coeff(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn selftest_passes() {
        let checks = selftest(DEFAULT_SEED);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
