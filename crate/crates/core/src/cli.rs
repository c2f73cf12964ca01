//! The `slaglab` command line.
//!
//! Exit codes: `0` success (or solvable), `1` cone verdict disagrees with
//! the catalog, `2` bad arguments or input, `3` unsolvable, `4` undecided.

use std::f64::consts::TAU;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nalgebra::DVector;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::charclass::{
    euler_embedding_obstruction, is_nullcobordant, lagrangian_immersion_obstructions,
    parse_manifold_expr, pontrjagin_numbers, sw_numbers, total_sw_class, CharNumbers,
    CharclassError, ImmersionVerdict, Nullcobordism,
};
use crate::cones::{
    decay_rate_fit, link_loop, smoothing_frame, verify_cone, Branch, ConeSpec, LinkParameter,
    SmoothingFamily,
};
use crate::obstruction::{
    count_extensions, decide_pbp, parse_instance, validate_instance, PbpVerdict, Validation,
};
use crate::symplectic::{
    curve_liouville_integral, loop_liouville_integral, maslov_index_adaptive, phase,
    sl_moment_residuals, LiouvilleIntegral, MAX_LOOP_SAMPLES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "slaglab",
    version,
    about = "Special Lagrangian cones, Maslov indices and filling obstructions"
)]
pub struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, env = "SLAGLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Override the command's default tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog cones: verification, Maslov indices, smoothings.
    #[command(subcommand)]
    Cone(ConeCommand),
    /// Stiefel–Whitney and Pontrjagin numbers and whether a manifold bounds.
    Cobordism {
        /// Manifold expression, e.g. "CP(2) + -CP(2)" or "Wu".
        expr: String,
    },
    /// Total Stiefel–Whitney class and Lagrangian immersion/embedding checks.
    Charclass { expr: String },
    /// Prescribed boundary problem on a JSON instance.
    #[command(subcommand)]
    Pbp(PbpCommand),
    /// Numerical symplectic geometry.
    #[command(subcommand)]
    Geom(GeomCommand),
}

#[derive(Debug, Subcommand)]
pub enum ConeCommand {
    /// Residuals, phase statistics and verdict (default tol 1e-9).
    Verify {
        /// su(n), su-so(n), su-sp(n), sw(p,q) or clifford(n).
        cone: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Maslov index of the Schoen–Wolfson link loop.
    Maslov {
        p: u32,
        q: u32,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Decay fit and phase constancy of the two-ended smoothing (default tol 1e-6).
    Smoothing {
        cone: String,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 10.0)]
        r_min: f64,
        #[arg(long, default_value_t = 1000.0)]
        r_max: f64,
        #[arg(long, default_value_t = 9)]
        radii: usize,
        /// Random frames sampled for the phase check.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PbpCommand {
    Decide {
        file: PathBuf,
        /// Also report the group parameterizing the solutions (n = 2, 3).
        #[arg(long)]
        count: bool,
    },
    Validate {
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LoopSource {
    /// The circle (e^{i theta}, 0).
    #[arg(long)]
    pub circle: bool,
    /// Schoen–Wolfson curve, as "p,q".
    #[arg(long, value_name = "P,Q")]
    pub sw: Option<String>,
    /// JSON file: array of points, each an array of [re, im] pairs; last = first.
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GeomCommand {
    /// Loop integral of the Liouville form with exactness verdict.
    Integral {
        #[command(flatten)]
        source: LoopSource,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Maslov index of a Schoen–Wolfson loop.
    Maslov {
        #[arg(long, value_name = "P,Q")]
        sw: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Surface moment residuals over the (shifted) Clifford torus link (default tol 1e-6).
    Moments {
        #[arg(long, value_name = "N")]
        clifford: usize,
        /// Quadrature points per angle.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        /// Translation as 2N reals "x1,y1,x2,y2,...".
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<String>,
    },
}

/// Outcome of a command: the exit code and what to print.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            code: EXIT_OK,
            text,
            json,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

/// Parses `args` (including the program name), runs the command, prints the
/// report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let body = if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.json).expect("reports are valid JSON")
                )
            } else {
                out.text
            };
            // A closed pipe downstream (`| head`) is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            out.code
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({"error": f.message, "exit_code": f.code}));
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Cone(ConeCommand::Verify { cone, samples }) => cone_verify(cli, cone, *samples),
        Command::Cone(ConeCommand::Maslov { p, q, samples }) => sw_maslov(*p, *q, *samples),
        Command::Cone(ConeCommand::Smoothing {
            cone,
            t,
            r_min,
            r_max,
            radii,
            samples,
        }) => cone_smoothing(cli, cone, *t, (*r_min, *r_max, *radii), *samples),
        Command::Cobordism { expr } => cobordism(expr),
        Command::Charclass { expr } => charclass(expr),
        Command::Pbp(PbpCommand::Decide { file, count }) => pbp_decide(file, *count),
        Command::Pbp(PbpCommand::Validate { file }) => pbp_validate(file),
        Command::Geom(GeomCommand::Integral { source, samples }) => geom_integral(source, *samples),
        Command::Geom(GeomCommand::Maslov { sw, samples }) => {
            let (p, q) = parse_pair(sw)?;
            sw_maslov(p, q, *samples)
        }
        Command::Geom(GeomCommand::Moments {
            clifford,
            grid,
            offset,
        }) => geom_moments(cli, *clifford, *grid, offset.as_deref()),
    }
}

fn complex_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn cone_verify(cli: &Cli, id: &str, samples: usize) -> Result<Outcome, Failure> {
    let cone = ConeSpec::parse(id).map_err(usage)?;
    let tol = cli.tol.unwrap_or(1e-9);
    let r = verify_cone(&cone, samples, tol, cli.seed).map_err(usage)?;
    let note = cone.nonsmoothability_note();
    let mut text = format!(
        "cone                 {cone}\n\
         samples              {} (seed {})\n\
         sphere residual      {:.3e}\n\
         legendrian residual  {:.3e}\n\
         isotropy residual    {:.3e}\n\
         phase mean           {:.12} {:+.12}i\n\
         phase stddev         {:.3e}\n\
         verdict              {}\n\
         catalog flag         {}\n",
        r.samples,
        r.seed,
        r.sphere_residual,
        r.legendrian_residual,
        r.isotropy_residual,
        r.phase_mean.re,
        r.phase_mean.im,
        r.phase_stddev,
        r.verdict,
        if cone.is_special_lagrangian() {
            "SpecialLagrangian"
        } else {
            "LagrangianOnly"
        },
    );
    if let Some(a) = cone.advisory() {
        text.push_str(&format!("advisory: {a}\n"));
    }
    if let Some(n) = note {
        text.push_str(&format!("note: {n}\n"));
    }
    let json = json!({
        "command": "cone verify",
        "cone": cone.to_string(),
        "samples": r.samples,
        "seed": r.seed,
        "tol": tol,
        "sphere_residual": r.sphere_residual,
        "legendrian_residual": r.legendrian_residual,
        "isotropy_residual": r.isotropy_residual,
        "phase_mean": complex_json(r.phase_mean),
        "phase_stddev": r.phase_stddev,
        "verdict": r.verdict.to_string(),
        "catalog_special_lagrangian": cone.is_special_lagrangian(),
        "matches_catalog": r.matches_catalog(),
        "advisory": cone.advisory(),
        "nonsmoothability_note": note,
    });
    let code = if r.matches_catalog() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok(Outcome { code, text, json })
}

fn parse_pair(text: &str) -> Result<(u32, u32), Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts[..] {
        [p, q] => match (p.parse(), q.parse()) {
            (Ok(p), Ok(q)) => Ok((p, q)),
            _ => Err(usage(format!(
                "'{text}': expected two nonnegative integers p,q"
            ))),
        },
        _ => Err(usage(format!("'{text}': expected p,q"))),
    }
}

fn sw_maslov(p: u32, q: u32, samples: usize) -> Result<Outcome, Failure> {
    let cone = ConeSpec::schoen_wolfson(p, q).map_err(usage)?;
    let base = LinkParameter::Angles(vec![0.0]);
    let mut failure = None;
    let result = maslov_index_adaptive(samples, MAX_LOOP_SAMPLES, |m| {
        link_loop(&cone, &base, m).map_err(|e| {
            failure = Some(e.to_string());
            crate::symplectic::SymplecticError::NotClosed { gap: f64::NAN }
        })
    });
    let (index, used) = match (result, failure) {
        (_, Some(msg)) => return Err(usage(msg)),
        (r, None) => r.map_err(usage)?,
    };
    let text = format!("loop      {cone}\nsamples   {used}\nmaslov    {index}\n");
    Ok(Outcome::ok(
        text,
        json!({"command": "maslov", "loop": cone.to_string(), "samples": used, "maslov_index": index}),
    ))
}

fn geometric_radii(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    if k < 2 {
        return vec![lo; k];
    }
    (0..k)
        .map(|i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64))
        .collect()
}

fn cone_smoothing(
    cli: &Cli,
    id: &str,
    t: f64,
    radii: (f64, f64, usize),
    samples: usize,
) -> Result<Outcome, Failure> {
    use rand::SeedableRng;
    let cone = ConeSpec::parse(id).map_err(usage)?;
    let tol = cli.tol.unwrap_or(1e-6);
    let family = SmoothingFamily::new(cone, t).map_err(usage)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
    let base = cone.random_parameter(&mut rng);
    let radii = geometric_radii(radii.0, radii.1, radii.2);
    let fit = decay_rate_fit(&family, &radii, &base).map_err(usage)?;
    let mut phases = Vec::with_capacity(samples);
    for (k, r) in radii.iter().cycle().take(samples.max(2)).enumerate() {
        let branch = if k % 2 == 0 {
            Branch::NearZero
        } else {
            Branch::NearPiOverN
        };
        let frame = smoothing_frame(&family, *r, branch, &cone.random_parameter(&mut rng))
            .map_err(usage)?;
        phases.push(phase(&frame).map_err(usage)?);
    }
    let spread = phases
        .iter()
        .map(|w| (w - phases[0]).norm())
        .fold(0.0, f64::max);
    let slope_ok = (fit.slope - fit.expected).abs() <= 0.1;
    let phase_ok = spread <= tol;
    let text = format!(
        "cone            {cone}\n\
         t               {t}\n\
         rate            {}\n\
         fitted slope    {:.6} (expected {})\n\
         phase spread    {:.3e} over {} frames\n\
         result          {}\n",
        family.rate(),
        fit.slope,
        fit.expected,
        spread,
        phases.len(),
        if slope_ok && phase_ok {
            "consistent"
        } else {
            "inconsistent"
        },
    );
    let json = json!({
        "command": "cone smoothing",
        "cone": cone.to_string(),
        "t": t,
        "seed": cli.seed,
        "rate": family.rate(),
        "slope": fit.slope,
        "expected_slope": fit.expected,
        "distances": fit.points.iter().map(|(r, d)| json!([r, d])).collect::<Vec<_>>(),
        "phase_spread": spread,
        "frames": phases.len(),
        "consistent": slope_ok && phase_ok,
    });
    Ok(Outcome {
        code: if slope_ok && phase_ok {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
        text,
        json,
    })
}

fn parse_expr(expr: &str) -> Result<crate::charclass::ManifoldExpr, Failure> {
    parse_manifold_expr(expr).map_err(|e| usage(format!("\n{}", e.caret_diagnostic(expr))))
}

fn numbers_json(r: &Result<CharNumbers, CharclassError>) -> Value {
    match r {
        Ok(n) => Value::Object(
            n.nonzero
                .iter()
                .map(|(k, v)| (n.monomial_name(k), json!(v.to_string())))
                .collect(),
        ),
        Err(e) => json!({"unsupported": e.to_string()}),
    }
}

fn numbers_text(r: &Result<CharNumbers, CharclassError>) -> String {
    match r {
        Ok(n) => n.to_string(),
        Err(e) => e.to_string(),
    }
}

fn cobordism(expr: &str) -> Result<Outcome, Failure> {
    let e = parse_expr(expr)?;
    let sw = sw_numbers(&e);
    let p = pontrjagin_numbers(&e);
    let verdict = is_nullcobordant(&e).map_err(usage)?;
    let text = format!(
        "manifold     {e} (dimension {})\nSW numbers   {}\nP numbers    {}\nverdict      {verdict}\n",
        e.dimension(),
        numbers_text(&sw),
        numbers_text(&p),
    );
    let kind = match verdict {
        Nullcobordism::Bounds(_) => "Bounds",
        Nullcobordism::DoesNotBound(_) => "DoesNotBound",
        Nullcobordism::Undecided(_) => "Undecided",
    };
    let json = json!({
        "command": "cobordism",
        "manifold": e.to_string(),
        "dimension": e.dimension(),
        "stiefel_whitney_numbers": numbers_json(&sw),
        "pontrjagin_numbers": numbers_json(&p),
        "verdict": kind,
        "detail": verdict.to_string(),
    });
    Ok(Outcome::ok(text, json))
}

fn charclass(expr: &str) -> Result<Outcome, Failure> {
    let e = parse_expr(expr)?;
    let classes = total_sw_class(&e);
    let imm = lagrangian_immersion_obstructions(&e);
    let euler = euler_embedding_obstruction(&e);
    let class_strings: Result<Vec<String>, String> = classes
        .map(|cs| cs.iter().map(ToString::to_string).collect())
        .map_err(|err| err.to_string());
    let verdict = match &imm.verdict {
        ImmersionVerdict::Obstructed(r) => format!("Obstructed ({})", r.join(", ")),
        ImmersionVerdict::NecessaryConditionsPass => "NecessaryConditionsPass".to_string(),
        ImmersionVerdict::Inconclusive(r) => format!("Inconclusive ({})", r.join(", ")),
    };
    let mut text = format!("manifold          {e} (dimension {})\n", e.dimension());
    match &class_strings {
        Ok(cs) => text.push_str(&format!("w(TL)             {}\n", cs.join(" | "))),
        Err(err) => text.push_str(&format!("w(TL)             Unsupported ({err})\n")),
    }
    text.push_str(&format!(
        "w^2 = 1           {:?}\np = 1             {:?}\nimmersion         {verdict}{}\nchi               {}\nembedding         {}\n",
        imm.sw_square_ok,
        imm.pontrjagin_trivial_ok,
        if imm.immersion_exists { " (exists: stably parallelizable)" } else { "" },
        euler.chi,
        if euler.embedding_possible { "not excluded by chi" } else { "excluded (chi != 0)" },
    ));
    for n in &euler.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    let json = json!({
        "command": "charclass",
        "manifold": e.to_string(),
        "dimension": e.dimension(),
        "total_sw_class": class_strings.as_ref().ok(),
        "sw_square_trivial": format!("{:?}", imm.sw_square_ok),
        "pontrjagin_trivial": format!("{:?}", imm.pontrjagin_trivial_ok),
        "immersion_exists": imm.immersion_exists,
        "immersion_verdict": verdict,
        "euler_characteristic": euler.chi.to_string(),
        "embedding_possible": euler.embedding_possible,
        "notes": euler.notes,
    });
    Ok(Outcome::ok(text, json))
}

fn read_instance(file: &PathBuf) -> Result<crate::obstruction::PbpInstance, Failure> {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    parse_instance(&text).map_err(|e| usage(format!("schema violation at {e}")))
}

fn pbp_decide(file: &PathBuf, count: bool) -> Result<Outcome, Failure> {
    let inst = read_instance(file)?;
    let verdict = decide_pbp(&inst).map_err(usage)?;
    let mut text = format!("n          {}\nverdict    {verdict}\n", inst.n);
    let (kind, detail) = match &verdict {
        PbpVerdict::Solvable {
            maslov_zero_possible,
        } => (
            "Solvable",
            json!({"maslov_zero_possible": maslov_zero_possible}),
        ),
        PbpVerdict::Unsolvable { failed } => (
            "Unsolvable",
            json!({"failed_condition": failed.to_string()}),
        ),
        PbpVerdict::Undecided { reason } => ("Undecided", json!({"reason": reason})),
    };
    let mut json = json!({"command": "pbp decide", "n": inst.n, "verdict": kind, "detail": detail});
    if count && verdict.is_solvable() {
        let group = count_extensions(&inst).map_err(usage)?;
        text.push_str(&format!("solutions  parameterized by {group}\n"));
        json["extensions"] = json!({"rank": group.rank(), "torsion": group.torsion()});
    }
    Ok(Outcome {
        code: verdict.exit_code(),
        text,
        json,
    })
}

fn pbp_validate(file: &PathBuf) -> Result<Outcome, Failure> {
    let inst = read_instance(file)?;
    let messages = validate_instance(&inst);
    let mut text: String = messages.iter().map(|m| format!("{m}\n")).collect();
    if messages.is_empty() {
        text.push_str("no warnings\n");
    }
    let warnings = messages
        .iter()
        .filter(|m| matches!(m, Validation::Warning(_)))
        .count();
    let json = json!({
        "command": "pbp validate",
        "warnings": messages.iter().filter_map(|m| match m { Validation::Warning(s) => Some(s), _ => None }).collect::<Vec<_>>(),
        "notes": messages.iter().filter_map(|m| match m { Validation::Note(s) => Some(s), _ => None }).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        code: if warnings == 0 {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
        text,
        json,
    })
}

fn read_points(file: &PathBuf) -> Result<Vec<DVector<Complex64>>, Failure> {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let raw: Vec<Vec<[f64; 2]>> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    Ok(raw
        .into_iter()
        .map(|p| {
            DVector::from_iterator(
                p.len(),
                p.into_iter().map(|[re, im]| Complex64::new(re, im)),
            )
        })
        .collect())
}

fn integral_report(label: String, r: &LiouvilleIntegral, samples: usize) -> Outcome {
    let verdict = if r.exact { "Exact" } else { "NotExact" };
    let text = format!(
        "loop            {label}\nsamples         {samples}\nintegral        {:.12}\nerror estimate  {:.3e}\nverdict         {verdict}\n",
        r.value, r.error_estimate,
    );
    let json = json!({
        "command": "geom integral",
        "loop": label,
        "samples": samples,
        "value": r.value,
        "error_estimate": r.error_estimate,
        "composite": r.composite,
        "tol_exact": r.tol_exact,
        "verdict": verdict,
    });
    Outcome::ok(text, json)
}

fn geom_integral(source: &LoopSource, samples: usize) -> Result<Outcome, Failure> {
    if source.circle {
        let r = curve_liouville_integral(samples, |t| {
            DVector::from_column_slice(&[Complex64::from_polar(1.0, t), Complex64::new(0.0, 0.0)])
        })
        .map_err(usage)?;
        return Ok(integral_report(
            "circle (e^{i theta}, 0)".into(),
            &r,
            samples,
        ));
    }
    if let Some(pq) = &source.sw {
        let (p, q) = parse_pair(pq)?;
        let cone = ConeSpec::schoen_wolfson(p, q).map_err(usage)?;
        let lp = link_loop(&cone, &LinkParameter::Angles(vec![0.0]), samples).map_err(usage)?;
        let r = loop_liouville_integral(lp.points()).map_err(usage)?;
        return Ok(integral_report(cone.to_string(), &r, samples));
    }
    let file = source
        .points
        .as_ref()
        .expect("clap enforces one loop source");
    let points = read_points(file)?;
    let r = loop_liouville_integral(&points).map_err(usage)?;
    Ok(integral_report(
        file.display().to_string(),
        &r,
        points.len().saturating_sub(1),
    ))
}

fn geom_moments(
    cli: &Cli,
    n: usize,
    grid: usize,
    offset: Option<&str>,
) -> Result<Outcome, Failure> {
    let tol = cli.tol.unwrap_or(1e-6);
    let offset = match offset {
        None => DVector::zeros(n),
        Some(s) => {
            let reals = s
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| usage(format!("offset entry '{x}' is not a number")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if reals.len() != 2 * n {
                return Err(usage(format!(
                    "offset needs {} reals, got {}",
                    2 * n,
                    reals.len()
                )));
            }
            DVector::from_iterator(n, reals.chunks(2).map(|c| Complex64::new(c[0], c[1])))
        }
    };
    let surface = crate::cones::clifford_surface(n, grid, &offset).map_err(usage)?;
    let residuals = sl_moment_residuals(n, &surface).map_err(usage)?;
    let worst = residuals.iter().map(|r| r.value.abs()).fold(0.0, f64::max);
    let mut text = format!(
        "surface   Clifford torus link in C^{n}, {} quadrature points\n",
        surface.len()
    );
    for r in &residuals {
        text.push_str(&format!("{:<14} {:+.3e}\n", r.label, r.value));
    }
    text.push_str(&format!(
        "count     {}\nmax       {worst:.3e}\n",
        residuals.len()
    ));
    let json = json!({
        "command": "geom moments",
        "n": n,
        "grid": grid,
        "area_element": (TAU / grid as f64).powi(n as i32 - 1),
        "residuals": residuals.iter().map(|r| json!({"label": r.label, "value": r.value})).collect::<Vec<_>>(),
        "count": residuals.len(),
        "max_abs": worst,
        "within_tol": worst <= tol,
    });
    Ok(Outcome {
        code: if worst <= tol { EXIT_OK } else { EXIT_MISMATCH },
        text,
        json,
    })
}
