//! Command-line front end. `run` parses arguments, executes one subcommand and
//! returns the process exit code: 0 for success or a permutation, 1 for a
//! definitive negative, 2 for input or configuration errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::family::{all_params, PPParams};
use crate::field::{Elem, FieldCtx, FieldSpec};
use crate::intmath;
use crate::oracle::{self, OracleCap};
use crate::special::SpecialForm;

/// Largest field order for which `verify` compares symbolic and interpolated
/// inverses; interpolation is quadratic in the order for every `a`.
pub const SYMBOLIC_VERIFY_CAP: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "ppinv",
    version,
    about = "Permutation polynomials x(x^s - a)^t and their inverses"
)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Read elements as comma-separated base-p digits instead of indices.
    #[arg(long, global = true)]
    pub coeffs: bool,
    /// Largest field order for exhaustive routines (overrides PPINV_ORACLE_CAP).
    #[arg(long, global = true)]
    pub oracle_cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe the field F_{q^n}, q = p^e.
    Field {
        #[arg(long)]
        field: FieldSpec,
    },
    /// Decide whether x(x^s - a)^t permutes the field.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Evaluate or expand the inverse permutation.
    Invert {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Point at which to evaluate the inverse.
        #[arg(long)]
        at: Option<String>,
        /// Print the reduced coefficient vector of the inverse.
        #[arg(long)]
        symbolic: bool,
        /// Route through an explicit form: auto, thm31, cor3, cor4 or cor5.
        #[arg(long)]
        special: Option<String>,
    },
    /// Check the criterion and inverses against exhaustive tables.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, conflicts_with = "all_a", required_unless_present = "all_a")]
        a: Option<String>,
        #[arg(long)]
        all_a: bool,
    },
    /// Sweep every field of order at most N and write one CSV row per instance.
    Survey {
        #[arg(long)]
        max_order: u64,
        /// Destination CSV; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Field descriptor p^e^n.
    #[arg(long)]
    pub field: FieldSpec,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub t: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub field: String,
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub q: u64,
    pub order: u64,
    pub modulus: String,
    pub log_tables: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub field: String,
    pub m: u32,
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub is_pp: bool,
    pub d: u32,
    pub s_bar: u64,
    pub u: u64,
    pub criterion_value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertReport {
    pub field: String,
    pub m: u32,
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub at: Option<u64>,
    pub value: Option<u64>,
    pub symbolic: Option<String>,
    pub special: Option<String>,
    pub special_agrees: Option<bool>,
    pub points_checked: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub a: u64,
    pub is_pp_criterion: bool,
    pub is_pp_oracle: bool,
    pub criterion_agrees: bool,
    /// `f^{-1}(f(x)) = x` for all `x`.
    pub left_inverse: Option<bool>,
    /// `f(f^{-1}(y)) = y` for all `y`.
    pub right_inverse: Option<bool>,
    pub symbolic_agrees: Option<bool>,
}

impl VerifyRow {
    pub fn is_mismatch(&self) -> bool {
        !self.criterion_agrees
            || [self.left_inverse, self.right_inverse, self.symbolic_agrees].contains(&Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub field: String,
    pub m: u32,
    pub s: u64,
    pub t: u64,
    pub checked: u64,
    pub pps: u64,
    pub mismatches: u64,
    pub symbolic_checked: bool,
}

/// One survey CSV row. Inverse and special-form columns are empty for non-permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub m: u32,
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub is_pp_criterion: bool,
    pub is_pp_oracle: bool,
    pub inverse_ok: Option<bool>,
    pub special_form_used: String,
    pub special_agrees: Option<bool>,
}

impl SurveyRow {
    pub fn is_mismatch(&self) -> bool {
        self.is_pp_criterion != self.is_pp_oracle
            || self.inverse_ok == Some(false)
            || self.special_agrees == Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub max_order: u64,
    pub fields: u64,
    pub rows: u64,
    pub pps: u64,
    pub mismatches: u64,
}

/// Why a subcommand stopped short of success.
#[derive(Debug)]
enum Failure {
    /// A definitive negative answer; the report was already printed.
    Negative,
    Input(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

struct Printer<'w> {
    format: Format,
    out: &'w mut dyn Write,
}

impl Printer<'_> {
    /// Prints records sharing one schema: a line each for plain and json, a
    /// header plus rows for csv.
    fn table<T: Serialize>(&mut self, rows: &[T]) -> io::Result<()> {
        let values: Vec<Value> = rows
            .iter()
            .map(|r| serde_json::to_value(r).expect("plain data"))
            .collect();
        match self.format {
            Format::Json => {
                for v in &values {
                    writeln!(self.out, "{v}")?;
                }
            }
            Format::Plain => {
                for v in &values {
                    let fields: Vec<String> = object(v)
                        .iter()
                        .map(|(k, x)| format!("{k}={}", scalar(x)))
                        .collect();
                    writeln!(self.out, "{}", fields.join(" "))?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *self.out);
                if let Some(first) = values.first() {
                    w.write_record(object(first).keys())
                        .map_err(io::Error::other)?;
                }
                for v in &values {
                    w.write_record(object(v).values().map(scalar))
                        .map_err(io::Error::other)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    fn one<T: Serialize>(&mut self, row: &T) -> io::Result<()> {
        self.table(std::slice::from_ref(row))
    }
}

fn object(v: &Value) -> &serde_json::Map<String, Value> {
    v.as_object().expect("reports serialize to objects")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Parses `args` (program name first) and runs the selected subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Negative) => 1,
        Err(Failure::Input(Error::NotPermutation { s, t, a })) => {
            let _ = writeln!(
                err,
                "error: x(x^{s} - a)^{t} with a = {a} does not permute the field"
            );
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let cap = match cli.oracle_cap {
        Some(c) => OracleCap(c),
        None => OracleCap::from_env()?,
    };
    let mut printer = Printer {
        format: cli.format,
        out,
    };
    let elem = |ctx: &FieldCtx, text: &str| parse_elem(ctx, text, cli.coeffs);
    match &cli.command {
        Command::Field { field } => cmd_field(&mut printer, *field),
        Command::Check { family, a } => {
            let params = family.params()?;
            let a = elem(params.ctx(), a)?;
            cmd_check(&mut printer, &params, a)
        }
        Command::Invert {
            family,
            a,
            at,
            symbolic,
            special,
        } => {
            let params = family.params()?;
            let a = elem(params.ctx(), a)?;
            let at = at.as_deref().map(|y| elem(params.ctx(), y)).transpose()?;
            let special = special.as_deref().map(parse_special).transpose()?;
            cmd_invert(&mut printer, &params, a, at, *symbolic, special, cap)
        }
        Command::Verify {
            family,
            a,
            all_a: _,
        } => {
            let params = family.params()?;
            let a = a.as_deref().map(|a| elem(params.ctx(), a)).transpose()?;
            cmd_verify(&mut printer, &params, a, cap)
        }
        Command::Survey { max_order, out } => {
            cmd_survey(&mut printer, *max_order, out.as_deref(), cap)
        }
    }
}

impl FamilyArgs {
    fn params(&self) -> Result<PPParams> {
        let ctx = Arc::new(FieldCtx::from_spec(self.field)?);
        PPParams::new(ctx, self.m, self.s, self.t)
    }
}

/// An element given as an index, or as comma-separated base-`p` digits when `coeffs` is set.
pub fn parse_elem(ctx: &FieldCtx, text: &str, coeffs: bool) -> Result<Elem> {
    let text = text.trim();
    if coeffs {
        let digits = text
            .split(',')
            .map(|d| {
                d.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad digit {d:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ctx.from_coeffs(&digits)
    } else {
        let index = text
            .parse()
            .map_err(|_| Error::Parse(format!("bad element index {text:?}")))?;
        ctx.elem(index)
    }
}

/// `None` for `auto`.
fn parse_special(text: &str) -> Result<Option<SpecialForm>> {
    if text == "auto" {
        Ok(None)
    } else {
        text.parse().map(Some)
    }
}

fn cmd_field(printer: &mut Printer<'_>, spec: FieldSpec) -> CmdResult {
    let ctx = FieldCtx::from_spec(spec)?;
    let modulus: Vec<String> = ctx.modulus().iter().map(u64::to_string).collect();
    printer.one(&FieldReport {
        field: spec.to_string(),
        p: ctx.p(),
        e: ctx.e(),
        n: ctx.n(),
        q: ctx.q(),
        order: ctx.order(),
        modulus: modulus.join(","),
        log_tables: ctx.has_tables(),
    })?;
    Ok(())
}

pub fn check_report(params: &PPParams, a: Elem) -> Result<CheckReport> {
    Ok(CheckReport {
        field: params.ctx().spec().to_string(),
        m: params.m(),
        s: params.s(),
        t: params.t(),
        a: a.index(),
        is_pp: params.is_pp(a)?,
        d: params.d(),
        s_bar: params.s_bar(),
        u: params.u(),
        criterion_value: params.criterion_value(a).index(),
    })
}

fn cmd_check(printer: &mut Printer<'_>, params: &PPParams, a: Elem) -> CmdResult {
    let report = check_report(params, a)?;
    printer.one(&report)?;
    if report.is_pp {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cmd_invert(
    printer: &mut Printer<'_>,
    params: &PPParams,
    a: Elem,
    at: Option<Elem>,
    symbolic: bool,
    special: Option<Option<SpecialForm>>,
    cap: OracleCap,
) -> CmdResult {
    if at.is_none() && !symbolic && special.is_none() {
        return Err(
            Error::Parse("nothing to do: pass --at, --symbolic or --special".into()).into(),
        );
    }
    let ctx = &**params.ctx();
    let inverse = params.prepare_inverse(a)?;
    let value = at.map(|y| inverse.eval(y)).transpose()?;
    let symbolic = if symbolic {
        cap.check(ctx)?;
        Some(params.closed_inverse_poly(a)?.to_text())
    } else {
        None
    };
    let (special_name, special_agrees, points_checked) = match special {
        None => (None, None, None),
        Some(choice) => match choice.or_else(|| SpecialForm::auto(params)) {
            None => (Some("general".to_string()), None, None),
            Some(form) => {
                let special = form.prepare(params, a)?;
                let points: Vec<Elem> = match at {
                    Some(y) => vec![y],
                    None => {
                        cap.check(ctx)?;
                        ctx.elements().collect()
                    }
                };
                let mut agrees = true;
                for &y in &points {
                    agrees &= special.eval(y) == inverse.eval(y)?;
                }
                (
                    Some(form.name().to_string()),
                    Some(agrees),
                    Some(points.len() as u64),
                )
            }
        },
    };
    printer.one(&InvertReport {
        field: ctx.spec().to_string(),
        m: params.m(),
        s: params.s(),
        t: params.t(),
        a: a.index(),
        at: at.map(Elem::index),
        value: value.map(Elem::index),
        symbolic,
        special: special_name,
        special_agrees,
        points_checked,
    })?;
    if special_agrees == Some(false) {
        return Err(Failure::Negative);
    }
    Ok(())
}

/// Exhaustive check of one `a`: criterion against bijectivity, both composition
/// identities, and the closed form against interpolation when `symbolic` is set.
pub fn verify_one(params: &PPParams, a: Elem, cap: OracleCap, symbolic: bool) -> Result<VerifyRow> {
    let ctx = &**params.ctx();
    let table = oracle::tabulate(ctx, cap, |x| params.eval_f(a, x))?;
    let is_pp_criterion = params.is_pp(a)?;
    let is_pp_oracle = table.is_bijection();
    let mut row = VerifyRow {
        a: a.index(),
        is_pp_criterion,
        is_pp_oracle,
        criterion_agrees: is_pp_criterion == is_pp_oracle,
        left_inverse: None,
        right_inverse: None,
        symbolic_agrees: None,
    };
    if is_pp_criterion {
        let inverse = params.prepare_inverse(a)?;
        let g = |y| inverse.eval(y).ok();
        row.left_inverse = Some(ctx.elements().all(|x| g(table.image(x)) == Some(x)));
        row.right_inverse = Some(
            ctx.elements()
                .all(|y| g(y).map(|v| params.eval_f(a, v)) == Some(y)),
        );
        if symbolic && is_pp_oracle {
            let closed = params.closed_inverse_poly(a)?;
            row.symbolic_agrees =
                Some(closed == oracle::inverse_poly_by_interpolation(ctx, &table)?);
        }
    }
    Ok(row)
}

fn cmd_verify(
    printer: &mut Printer<'_>,
    params: &PPParams,
    a: Option<Elem>,
    cap: OracleCap,
) -> CmdResult {
    let ctx = &**params.ctx();
    cap.check(ctx)?;
    let symbolic = ctx.order() <= SYMBOLIC_VERIFY_CAP;
    let selected: Vec<Elem> = match a {
        Some(a) => vec![a],
        None => ctx.nonzero_elements().collect(),
    };
    let rows = selected
        .par_iter()
        .map(|&a| verify_one(params, a, cap, symbolic))
        .collect::<Result<Vec<_>>>()?;
    let summary = VerifySummary {
        field: ctx.spec().to_string(),
        m: params.m(),
        s: params.s(),
        t: params.t(),
        checked: rows.len() as u64,
        pps: rows.iter().filter(|r| r.is_pp_criterion).count() as u64,
        mismatches: rows.iter().filter(|r| r.is_mismatch()).count() as u64,
        symbolic_checked: symbolic,
    };
    printer.table(&rows)?;
    if printer.format == Format::Csv {
        writeln!(printer.out)?;
    }
    printer.one(&summary)?;
    if summary.mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

/// Every `(p, e, n)` with `p^(en) <= max_order`, ordered by `p`, `e`, `n`.
pub fn survey_fields(max_order: u64) -> Vec<FieldSpec> {
    let mut out = Vec::new();
    for p in (2..=max_order).filter(|&p| intmath::is_prime(p)) {
        let mut k = 1u32;
        while intmath::checked_pow(p, k).is_some_and(|o| o <= max_order) {
            k += 1;
        }
        let max_degree = k - 1;
        for e in 1..=max_degree {
            for n in 1..=max_degree / e {
                out.push(FieldSpec { p, e, n });
            }
        }
    }
    out
}

fn survey_params(params: &PPParams, cap: OracleCap) -> Result<Vec<SurveyRow>> {
    let ctx = &**params.ctx();
    let spec = ctx.spec();
    let form = SpecialForm::auto(params);
    let mut rows = Vec::with_capacity(ctx.order() as usize - 1);
    for a in ctx.nonzero_elements() {
        let table = oracle::tabulate(ctx, cap, |x| params.eval_f(a, x))?;
        let is_pp_criterion = params.is_pp(a)?;
        let mut row = SurveyRow {
            p: spec.p,
            e: spec.e,
            n: spec.n,
            m: params.m(),
            s: params.s(),
            t: params.t(),
            a: a.index(),
            is_pp_criterion,
            is_pp_oracle: table.is_bijection(),
            inverse_ok: None,
            special_form_used: form.map_or("general", SpecialForm::name).to_string(),
            special_agrees: None,
        };
        if is_pp_criterion {
            let inverse = params.prepare_inverse(a)?;
            let images = ctx
                .elements()
                .map(|y| inverse.eval(y))
                .collect::<Result<Vec<_>>>()?;
            row.inverse_ok = Some(
                ctx.elements()
                    .all(|x| images[table.image(x).index() as usize] == x)
                    && ctx
                        .elements()
                        .all(|y| params.eval_f(a, images[y.index() as usize]) == y),
            );
            if let Some(form) = form {
                let special = form.prepare(params, a)?;
                row.special_agrees = Some(
                    ctx.elements()
                        .all(|y| special.eval(y) == images[y.index() as usize]),
                );
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// All survey rows for fields of order at most `max_order`, in deterministic order.
pub fn survey_rows(max_order: u64, cap: OracleCap) -> Result<Vec<SurveyRow>> {
    if max_order > cap.0 {
        return Err(Error::OracleCapExceeded {
            order: max_order,
            cap: cap.0,
        });
    }
    let mut params = Vec::new();
    for spec in survey_fields(max_order) {
        params.extend(all_params(&Arc::new(FieldCtx::from_spec(spec)?)));
    }
    let chunks = params
        .par_iter()
        .map(|p| survey_params(p, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Writes the survey CSV: a fixed header, then one line per row.
pub fn write_survey_csv<W: Write>(rows: &[SurveyRow], out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record([
        "p",
        "e",
        "n",
        "m",
        "s",
        "t",
        "a",
        "is_pp_criterion",
        "is_pp_oracle",
        "inverse_ok",
        "special_form_used",
        "special_agrees",
    ])
    .map_err(io::Error::other)?;
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.flush()
}

fn cmd_survey(
    printer: &mut Printer<'_>,
    max_order: u64,
    out: Option<&std::path::Path>,
    cap: OracleCap,
) -> CmdResult {
    let rows = survey_rows(max_order, cap)?;
    match out {
        Some(path) => write_survey_csv(&rows, BufWriter::new(File::create(path)?))?,
        None => write_survey_csv(&rows, &mut *printer.out)?,
    }
    let summary = SurveySummary {
        max_order,
        fields: survey_fields(max_order).len() as u64,
        rows: rows.len() as u64,
        pps: rows.iter().filter(|r| r.is_pp_criterion).count() as u64,
        mismatches: rows.iter().filter(|r| r.is_mismatch()).count() as u64,
    };
    if out.is_some() {
        printer.one(&summary)?;
    }
    if summary.mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}
