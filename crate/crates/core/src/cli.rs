//! Command-line front end for the `affmac` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::affine::AffineType;
use crate::bgg::{jordan_holder_multiplicities, verify_reciprocity};
use crate::demazure::{compare_demazure_macdonald, demazure_character};
use crate::error::{Error, Result};
use crate::kernel::KernelSet;
use crate::macdonald::{verify_truncation, MacdonaldBasis};
use crate::weyl::FiniteWeight;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "affmac", version, about = "Macdonald polynomials at t = infinity, Demazure characters and BGG reciprocity for affine types")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan matrix, marks, comarks and root counts.
    RootData(Common),
    /// Macdonald polynomials below a dominant weight, with both norm columns.
    Macdonald(Common),
    /// Gram-Schmidt and closed-form norm of one polynomial.
    Norm(Common),
    /// Level-one Demazure character of D(λ + Λ_0).
    Demazure(Common),
    /// Weyl-filtration and Jordan-Hölder tables with the reciprocity report.
    #[command(name = "bgg-table", alias = "bgg")]
    BggTable(Common),
    /// Every check for one weight; exits 1 on any mismatch.
    Verify(Common),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Affine type label such as A2^(1) or D4^(3).
    #[arg(long = "type")]
    pub type_label: String,
    /// Comma-separated fundamental-weight coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Grading shift k, a multiple of 1/a0 (for example 1/2).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub shift: String,
    /// Highest u-power kept.
    #[arg(long, default_value_t = 12)]
    pub trunc: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Recompute at trunc + 4 and require agreement after truncation.
    #[arg(long)]
    pub verify_truncation: bool,
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ty: AffineType,
    pub weight: FiniteWeight,
    /// The shift as a `u`-exponent, `a0 k`.
    pub shift: i64,
    pub trunc: i64,
    pub format: Format,
    pub verify_truncation: bool,
}

impl RunConfig {
    pub fn from_common(c: &Common) -> Result<RunConfig> {
        let ty = AffineType::load(&c.type_label)?;
        if c.trunc < 1 {
            return Err(Error::BadTruncation(c.trunc));
        }
        let weight = match &c.weight {
            Some(s) => {
                let w: FiniteWeight = s.parse()?;
                if w.rank() != ty.rank() {
                    return Err(Error::WeightLength { got: w.rank(), expected: ty.rank() });
                }
                w
            }
            None => FiniteWeight::zero(ty.rank()),
        };
        let k: Rational64 = c.shift.trim().parse().map_err(|_| Error::BadShift(format!("cannot parse shift '{}'", c.shift)))?;
        let u = k * Rational64::from(ty.a0());
        if !u.is_integer() {
            return Err(Error::BadShift(format!("shift {k} is not a multiple of 1/{}", ty.a0())));
        }
        Ok(RunConfig {
            ty,
            weight,
            shift: u.to_integer(),
            trunc: c.trunc,
            format: c.format,
            verify_truncation: c.verify_truncation,
        })
    }
}

/// Result of a run: exit status and the emitted document.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

fn emit(v: &Value, ok: bool) -> Outcome {
    Outcome {
        status: if ok { EXIT_OK } else { EXIT_MISMATCH },
        output: serde_json::to_string_pretty(v).expect("json serialization") + "\n",
    }
}

fn require_dominant(w: &FiniteWeight) -> Result<()> {
    if w.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(w.to_string()))
    }
}

pub fn root_data(t: &AffineType, trunc: i64) -> Value {
    let bound = Rational64::new(trunc, t.a0());
    let mut by_level = vec![0u64; trunc as usize + 1];
    for r in t.positive_real_roots(bound) {
        by_level[r.u_exp(t.a0()) as usize] += 1;
    }
    json!({
        "type": t.label(),
        "rank": t.rank(),
        "twist": t.twist(),
        "a0": t.a0(),
        "r": t.r(),
        "cartan": t.cartan(),
        "marks": t.marks(),
        "comarks": t.comarks(),
        "node_norms": t.node_norms().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "theta": t.theta().to_vec(),
        "weyl_order": t.weyl_order(),
        "positive_finite_roots": t.positive_finite_roots().len(),
        "positive_real_roots_by_u_exp": by_level,
        "type_one": t.is_type_one(),
    })
}

fn run_macdonald(cfg: &RunConfig) -> Result<Outcome> {
    require_dominant(&cfg.weight)?;
    let mut b = MacdonaldBasis::build(&cfg.ty, &cfg.weight, cfg.trunc)?;
    let mut doc = b.to_json()?;
    let mut ok = doc["basis"].as_array().expect("array").iter().all(|r| r["norms_agree"] == json!(true));
    if cfg.verify_truncation {
        let stable = verify_truncation(&cfg.ty, &cfg.weight, cfg.trunc)?;
        doc["truncation_stable"] = json!(stable);
        ok &= stable;
    }
    Ok(emit(&doc, ok))
}

fn run_norm(cfg: &RunConfig) -> Result<Outcome> {
    require_dominant(&cfg.weight)?;
    let mut b = MacdonaldBasis::build(&cfg.ty, &cfg.weight, cfg.trunc)?;
    let gs = b.norm_gs(&cfg.weight)?;
    let cf = b.norm_closed_form(&cfg.weight)?;
    let ok = gs.agrees_upto(&cf, cfg.trunc);
    let doc = json!({
        "type": cfg.ty.label(),
        "weight": cfg.weight.to_vec(),
        "trunc": cfg.trunc,
        "norm_gs": gs.to_json(),
        "norm_cf": cf.to_json(),
        "agree": ok,
    });
    Ok(emit(&doc, ok))
}

fn run_demazure(cfg: &RunConfig) -> Result<Outcome> {
    let ch = demazure_character(&cfg.ty, &cfg.weight, cfg.trunc)?;
    let mut doc = json!({
        "type": cfg.ty.label(),
        "weight": cfg.weight.to_vec(),
        "trunc": cfg.trunc,
        "character": ch.to_json(),
    });
    let mut ok = true;
    if cfg.verify_truncation {
        let hi = demazure_character(&cfg.ty, &cfg.weight, cfg.trunc + 4)?;
        let stable = hi.truncated(cfg.trunc) == ch;
        doc["truncation_stable"] = json!(stable);
        ok = stable;
    }
    Ok(emit(&doc, ok))
}

fn run_bgg(cfg: &RunConfig) -> Result<Outcome> {
    require_dominant(&cfg.weight)?;
    let mut b = MacdonaldBasis::new(KernelSet::build(&cfg.ty, cfg.trunc)?);
    let report = verify_reciprocity(&mut b, &cfg.weight, cfg.shift, None)?;
    let jh = jordan_holder_multiplicities(&mut b, &cfg.weight, cfg.shift)?;
    let ok = report.all_equal();
    if cfg.format == Format::Csv {
        let mut out = String::from("weight,shift,multiplicity,source\n");
        for row in report.weyl_filtration.to_csv_rows().into_iter().chain(jh.to_csv_rows()) {
            out.push_str(&row);
            out.push('\n');
        }
        return Ok(Outcome { status: if ok { EXIT_OK } else { EXIT_MISMATCH }, output: out });
    }
    let doc = json!({
        "type": cfg.ty.label(),
        "weight": cfg.weight.to_vec(),
        "shift_u": cfg.shift,
        "trunc": cfg.trunc,
        "weyl_filtration": report.weyl_filtration.to_json(),
        "jordan_holder": jh.to_json(),
        "reciprocity": report.to_json(),
    });
    Ok(emit(&doc, ok))
}

fn run_verify(cfg: &RunConfig) -> Result<Outcome> {
    require_dominant(&cfg.weight)?;
    let t = &cfg.ty;
    let mut b = MacdonaldBasis::build(t, &cfg.weight, cfg.trunc)?;
    let weights = t.dominants_below(&cfg.weight)?;
    let mut norm_rows = Vec::new();
    let mut orthogonal = true;
    let mut norms_ok = true;
    let mut demazure_ok = true;
    let mut demazure_rows = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        let gs = b.norm_gs(w)?;
        let cf = b.norm_closed_form(w)?;
        let agree = gs.agrees_upto(&cf, cfg.trunc);
        norms_ok &= agree;
        norm_rows.push(json!({"weight": w.to_vec(), "agree": agree}));
        let pw = b.polynomial(w)?.clone();
        for v in &weights[..i] {
            let pv = b.polynomial(v)?.clone();
            orthogonal &= b.scalar(&pw, &pv).is_zero();
        }
        let cmp = compare_demazure_macdonald(&mut b, w)?;
        demazure_ok &= if cmp.type_one { cmp.equal } else { cmp.dominated };
        demazure_rows.push(cmp.to_json());
    }
    let report = verify_reciprocity(&mut b, &cfg.weight, cfg.shift, None)?;
    let mut ok = norms_ok && orthogonal && demazure_ok && report.all_equal();
    let mut doc = json!({
        "type": t.label(),
        "weight": cfg.weight.to_vec(),
        "trunc": cfg.trunc,
        "orthogonal": orthogonal,
        "norms": norm_rows,
        "demazure": demazure_rows,
        "reciprocity": report.to_json(),
    });
    if cfg.verify_truncation {
        let stable = verify_truncation(t, &cfg.weight, cfg.trunc)?;
        doc["truncation_stable"] = json!(stable);
        ok &= stable;
    }
    doc["ok"] = json!(ok);
    Ok(emit(&doc, ok))
}

/// Dispatches one parsed command.
pub fn run(command: &Command) -> Result<Outcome> {
    let (common, f): (&Common, fn(&RunConfig) -> Result<Outcome>) = match command {
        Command::RootData(c) => {
            let cfg = RunConfig::from_common(c)?;
            return Ok(emit(&root_data(&cfg.ty, cfg.trunc), true));
        }
        Command::Macdonald(c) => (c, run_macdonald),
        Command::Norm(c) => (c, run_norm),
        Command::Demazure(c) => (c, run_demazure),
        Command::BggTable(c) => (c, run_bgg),
        Command::Verify(c) => (c, run_verify),
    };
    f(&RunConfig::from_common(common)?)
}

/// Parses `args` (including the program name) and runs; usage and validation
/// errors become exit status 2 with the message as output.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome { status, output: e.render().to_string() };
        }
    };
    match run(&cli.command) {
        Ok(o) => o,
        Err(e) => Outcome { status: EXIT_USAGE, output: format!("error: {e}\n") },
    }
}
