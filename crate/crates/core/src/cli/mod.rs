//! The `syz-mirror` command line.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 a mathematical
//! property failed (the report is still written).

mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::amoeba;
use crate::fibration::{self, ConicFibrationSpace, SYZBase2D};
use crate::gluing;
use crate::laurent::{parse_laurent_with, CRational, LaurentPolynomial};
use crate::rational;
use crate::subdivision::{DualTropicalCurve, Lifting, RegularSubdivision};
use crate::toricfan::Fan;
use crate::transform::{self, AdmissiblePath2D, GridSpec, PolynomialPotential, TropicalSection3D};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "syz-mirror", version, about = "Toric mirrors, wall-crossing gluings and SYZ transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub job: JobFlags,
}

#[derive(Debug, Clone, Args)]
pub struct JobFlags {
    /// Amoeba and fiber-check tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Raster side length in pixels.
    #[arg(long, global = true, default_value_t = 64)]
    pub resolution: usize,
    /// Finite-difference step for the curvature check.
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub step: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Both)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[value(name = "2d")]
    TwoD,
    #[value(name = "3d")]
    ThreeD,
}

#[derive(Debug, Clone, Args)]
pub struct PolyInput {
    /// File holding an expression, or JSON `{"expr", "dim", "params"}` / `{"dim", "terms"}`.
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    pub poly: Option<PathBuf>,
    /// Inline expression such as `1 + z1 + z2`.
    #[arg(long)]
    pub expr: Option<String>,
    /// Number of variables (inferred from the expression by default).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Parameter value, e.g. `t=10` (repeatable).
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(String, String)>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polytope, regular subdivision and toric fan.
    Mirror {
        #[command(flatten)]
        input: PolyInput,
        /// JSON `{"(a1,a2)": "p/q", ...}`; zero on every lattice point by default.
        #[arg(long)]
        lifting: Option<PathBuf>,
    },
    /// Walls, chambers and monodromy (2d) or amoeba chambers and tropical curve (3d).
    Base {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Root moduli given exactly instead of computed (2d).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Option<Vec<f64>>,
        #[arg(long)]
        lifting: Option<PathBuf>,
        /// `x0,x1,y0,y1` (3d).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bbox: Option<Vec<f64>>,
    },
    /// Amoeba raster, complement chambers and a PGM image.
    Amoeba {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bbox: Option<Vec<f64>>,
        #[arg(long)]
        lifting: Option<PathBuf>,
    },
    /// Line bundle of a 2d section: `{"path", "cut"}` or `{"wall_values"}`.
    Transform2d {
        #[arg(long)]
        section: PathBuf,
        /// A report written by `base --mode 2d`.
        #[arg(long)]
        base: PathBuf,
    },
    /// Line bundle of a 3d tropical section `{"legs": [...]}`.
    Transform3d {
        #[arg(long)]
        section: PathBuf,
        /// A report written by `base --mode 3d`.
        #[arg(long)]
        base: PathBuf,
    },
    /// Runs the invariant suite.
    Check,
}

fn parse_param(s: &str) -> std::result::Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s}"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Result of a command: the report, figures and whether every property held.
pub struct Outcome {
    pub name: &'static str,
    pub report: Value,
    pub figure: Option<(String, Value)>,
    pub extra: Vec<(String, String)>,
    pub ok: bool,
}

pub fn run() -> ExitCode {
    ExitCode::from(run_with(std::env::args_os()))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match write_outputs(&cli.job, &outcome) {
            Ok(paths) => {
                for p in paths {
                    println!("{}", p.display());
                }
                if outcome.ok {
                    0
                } else {
                    eprintln!("{}: a checked property failed; see the report", outcome.name);
                    2
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let job = &cli.job;
    if !(job.tol > 0.0) || !(job.step > 0.0) {
        return Err(Error::InvalidInput("tolerances must be positive".into()));
    }
    if job.resolution < amoeba::MIN_RESOLUTION {
        return Err(Error::InvalidInput(format!(
            "resolution must be at least {}",
            amoeba::MIN_RESOLUTION
        )));
    }
    let mut outcome = match &cli.command {
        Command::Mirror { input, lifting } => cmd_mirror(input, lifting.as_deref())?,
        Command::Base {
            input,
            mode,
            roots,
            lifting,
            bbox,
        } => cmd_base(job, input, *mode, roots.as_deref(), lifting.as_deref(), bbox.as_deref())?,
        Command::Amoeba { input, bbox, lifting } => cmd_amoeba(job, input, bbox.as_deref(), lifting.as_deref())?,
        Command::Transform2d { section, base } => cmd_transform_2d(section, base)?,
        Command::Transform3d { section, base } => cmd_transform_3d(section, base)?,
        Command::Check => cmd_check(job)?,
    };
    let obj = outcome.report.as_object_mut().expect("reports are objects");
    obj.insert("command".into(), json!(outcome.name));
    obj.insert("seed".into(), json!(job.seed));
    Ok(outcome)
}

fn write_outputs(job: &JobFlags, o: &Outcome) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&job.out)?;
    let mut written = Vec::new();
    let mut put = |name: String, text: &str| -> Result<()> {
        let path = job.out.join(name);
        write_atomic(&path, text)?;
        written.push(path);
        Ok(())
    };
    if job.format != Format::Svg {
        put(format!("{}.json", o.name), &pretty(&o.report))?;
    }
    if job.format != Format::Json {
        if let Some((doc, twin)) = &o.figure {
            put(format!("{}.svg", o.name), doc)?;
            put(format!("{}.svg.json", o.name), &pretty(twin))?;
        }
    }
    for (name, text) in &o.extra {
        put(name.clone(), text)?;
    }
    Ok(written)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn read_json(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// Largest `k` with `z<k>` in the text, or 1 for a bare `z`.
pub fn infer_dim(text: &str) -> usize {
    let b = text.as_bytes();
    let mut dim = 0;
    for (i, &c) in b.iter().enumerate() {
        if c == b'z' {
            let digits: String = b[i + 1..].iter().take_while(|d| d.is_ascii_digit()).map(|&d| d as char).collect();
            dim = dim.max(digits.parse().unwrap_or(1));
        }
    }
    dim.max(1)
}

fn parse_params(pairs: &[(String, String)]) -> Result<BTreeMap<String, CRational>> {
    pairs
        .iter()
        .map(|(k, v)| Ok((k.clone(), CRational::real(rational::parse(v)?))))
        .collect()
}

pub fn load_polynomial(input: &PolyInput) -> Result<LaurentPolynomial> {
    let mut params = parse_params(&input.params)?;
    let (text, dim) = match (&input.expr, &input.poly) {
        (Some(e), _) => (e.clone(), input.dim),
        (None, Some(path)) => {
            let raw = fs::read_to_string(path)?;
            if raw.trim_start().starts_with('{') {
                let v: Value = serde_json::from_str(&raw)?;
                if v.get("terms").is_some() {
                    return LaurentPolynomial::from_json(&v);
                }
                if let Some(p) = v.get("params").and_then(Value::as_object) {
                    for (k, val) in p {
                        params.entry(k.clone()).or_insert(CRational::real(rational::from_json(val)?));
                    }
                }
                let expr = v
                    .get("expr")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::InvalidInput("polynomial JSON needs \"expr\" or \"terms\"".into()))?;
                let dim = v.get("dim").and_then(Value::as_u64).map(|d| d as usize).or(input.dim);
                (expr.to_string(), dim)
            } else {
                (raw.trim().to_string(), input.dim)
            }
        }
        (None, None) => return Err(Error::InvalidInput("give --poly or --expr".into())),
    };
    let dim = dim.unwrap_or_else(|| infer_dim(&text));
    parse_laurent_with(&text, dim, &params)
}

/// Heights from the file override zero on every lattice point of the Newton polytope.
fn read_lifting(path: Option<&Path>, f: &LaurentPolynomial) -> Result<Lifting> {
    let mut lifting = Lifting::flat(&f.newton_polytope()?);
    if let Some(p) = path {
        for (point, h) in Lifting::from_json(&read_json(p)?)?.heights() {
            lifting.set(point.as_slice(), h.clone());
        }
    }
    Ok(lifting)
}

fn load_lifting(path: Option<&Path>, f: &LaurentPolynomial) -> Result<RegularSubdivision> {
    RegularSubdivision::new(&f.newton_polytope()?, &read_lifting(path, f)?)
}

fn bbox_arg(b: Option<&[f64]>) -> Result<Option<[f64; 4]>> {
    match b {
        None => Ok(None),
        Some([x0, x1, y0, y1]) if x0 < x1 && y0 < y1 => Ok(Some([*x0, *x1, *y0, *y1])),
        Some(other) => Err(Error::InvalidInput(format!("bbox must be x0,x1,y0,y1 with x0<x1, y0<y1; got {other:?}"))),
    }
}

pub fn mirror_report(f: &LaurentPolynomial, sub: &RegularSubdivision) -> (Value, bool) {
    let fan = Fan::from_subdivision(sub);
    let eta = fan.calabi_yau_certificate();
    let smooth = fan.is_smooth();
    let polytope = sub.polytope();
    let report = json!({
        "polynomial": f.to_string(),
        "newton_polytope": {
            "vertices": polytope.vertices(),
            "lattice_points": polytope.lattice_points(),
            "normalized_volume": polytope.normalized_volume(),
        },
        "subdivision": sub.to_json(),
        "fan": fan.report(),
        "rays": fan.rays(),
        "calabi_yau": eta,
        "smooth": smooth,
        "convex_support": fan.has_convex_support(),
    });
    (report, eta.is_some() && smooth)
}

fn cmd_mirror(input: &PolyInput, lifting: Option<&Path>) -> Result<Outcome> {
    let f = load_polynomial(input)?;
    let sub = load_lifting(lifting, &f)?;
    let (report, ok) = mirror_report(&f, &sub);
    let figure = (sub.dim() <= 2).then(|| svg::subdivision(&sub));
    Ok(Outcome {
        name: "mirror",
        report,
        figure,
        extra: Vec::new(),
        ok,
    })
}

fn cmd_base(
    job: &JobFlags,
    input: &PolyInput,
    mode: Mode,
    roots: Option<&[f64]>,
    lifting: Option<&Path>,
    bbox: Option<&[f64]>,
) -> Result<Outcome> {
    let f = load_polynomial(input)?;
    let space = ConicFibrationSpace::new(f.clone());
    match mode {
        Mode::TwoD => {
            let base = fibration::base_2d(&space, roots)?;
            let mut report = base.report();
            let obj = report.as_object_mut().expect("object");
            obj.insert("mode".into(), json!("2d"));
            obj.insert("polynomial".into(), json!(f.to_string()));
            obj.insert("gluing".into(), gluing::gluing_report_2d(base.wall_count()));
            Ok(Outcome {
                name: "base",
                figure: Some(svg::base_2d(&base)),
                report,
                extra: Vec::new(),
                ok: true,
            })
        }
        Mode::ThreeD => {
            let lift = read_lifting(lifting, &f)?;
            let base = fibration::base_3d(&space, Some(&lift), bbox_arg(bbox)?, job.resolution, job.tol)?;
            let mut report = base.report();
            let obj = report.as_object_mut().expect("object");
            obj.insert("mode".into(), json!("3d"));
            obj.insert("polynomial".into(), json!(f.to_string()));
            obj.insert("gluing".into(), gluing::gluing_report_3d(&base.curve));
            Ok(Outcome {
                name: "base",
                figure: Some(svg::amoeba(&base.raster, Some(&base.labeling), Some(&base.curve))),
                report,
                extra: vec![("base.pgm".into(), base.raster.to_pgm())],
                ok: true,
            })
        }
    }
}

fn cmd_amoeba(job: &JobFlags, input: &PolyInput, bbox: Option<&[f64]>, lifting: Option<&Path>) -> Result<Outcome> {
    let f = load_polynomial(input)?;
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: f.dim(),
        });
    }
    let sub = load_lifting(lifting, &f)?;
    let curve = sub.dual_tropical_curve()?;
    let bbox = bbox_arg(bbox)?.unwrap_or_else(|| amoeba::default_box(&curve, 4.0));
    let raster = amoeba::amoeba_raster(&f, bbox, job.resolution, job.tol)?;
    let labeling = amoeba::chamber_labeling(&raster, &f);
    let (chambers, ok) = match &labeling {
        Ok(l) => (json!(l.chambers), true),
        Err(e) => (json!({ "error": e.to_string() }), false),
    };
    let report = json!({
        "polynomial": f.to_string(),
        "bbox": raster.bbox,
        "resolution": raster.resolution,
        "tol": raster.tol,
        "flagged": raster.flagged_count(),
        "rows": raster.rows(),
        "chambers": chambers,
    });
    Ok(Outcome {
        name: "amoeba",
        figure: Some(svg::amoeba(&raster, labeling.as_ref().ok(), None)),
        extra: vec![("amoeba.pgm".into(), raster.to_pgm())],
        report,
        ok,
    })
}

fn base_2d_from_report(v: &Value) -> Result<SYZBase2D> {
    let moduli: Vec<f64> = v
        .get("root_moduli")
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(Value::as_f64).collect())
        .ok_or_else(|| Error::InvalidInput("base report has no \"root_moduli\" (run base --mode 2d)".into()))?;
    SYZBase2D::from_moduli(&moduli)
}

fn curve_from_report(v: &Value) -> Result<DualTropicalCurve> {
    let c = v
        .get("curve")
        .ok_or_else(|| Error::InvalidInput("base report has no \"curve\" (run base --mode 3d)".into()))?;
    Ok(serde_json::from_value(c.clone())?)
}

fn cmd_transform_2d(section: &Path, base: &Path) -> Result<Outcome> {
    let base = base_2d_from_report(&read_json(base)?)?;
    let s = read_json(section)?;
    let mut intersection = None;
    let wall_values: Vec<i64> = if let Some(w) = s.get("wall_values") {
        w.as_array()
            .and_then(|a| a.iter().map(Value::as_i64).collect())
            .ok_or_else(|| Error::InvalidInput("\"wall_values\" must be integers".into()))?
    } else {
        let path = AdmissiblePath2D::from_json(&s)?;
        intersection = Some(transform::intersection_number_2d(&path)?);
        transform::wall_values_from_path(&path, &base.root_moduli)?
    };
    let bundle = transform::syz_transform_2d(&wall_values, &base)?;
    let mut report = bundle.report();
    let obj = report.as_object_mut().expect("object");
    obj.insert("wall_values".into(), json!(wall_values));
    let mut ok = true;
    if let Some(n) = intersection {
        let equal = bundle.degree.is_none_or(|d| d == n);
        obj.insert("intersection_number".into(), json!(n));
        obj.insert("degree_equals_intersection".into(), json!(equal));
        ok = equal;
    }
    Ok(Outcome {
        name: "transform2d",
        report,
        figure: None,
        extra: Vec::new(),
        ok,
    })
}

fn cmd_transform_3d(section: &Path, base: &Path) -> Result<Outcome> {
    let curve = curve_from_report(&read_json(base)?)?;
    let s = TropicalSection3D::from_json(&read_json(section)?)?;
    let bundle = transform::syz_transform_3d(&s, &curve)?;
    let mut report = bundle.report();
    report
        .as_object_mut()
        .expect("object")
        .insert("section".into(), s.to_json());
    Ok(Outcome {
        name: "transform3d",
        report,
        figure: None,
        extra: Vec::new(),
        ok: true,
    })
}

struct Checks(Vec<Value>);

impl Checks {
    fn record(&mut self, name: &str, result: Result<(bool, String)>) {
        let (pass, detail) = result.unwrap_or_else(|e| (false, e.to_string()));
        self.0.push(json!({ "name": name, "pass": pass, "detail": detail }));
    }
}

fn kp2_subdivision(t: i64) -> Result<(LaurentPolynomial, RegularSubdivision)> {
    let mut params = BTreeMap::new();
    params.insert("t".to_string(), CRational::real(rational::int(t)));
    let f = parse_laurent_with("t + z1 + z2 + 1/(z1 z2)", 2, &params)?;
    let polytope = f.newton_polytope()?;
    let mut h = Lifting::flat(&polytope);
    h.set(&[0, 0], rational::int(-1));
    Ok((f, RegularSubdivision::new(&polytope, &h)?))
}

/// A path with increasing radius `r_min → r_max` and small random turns.
fn random_radial_path(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> Vec<Complex64> {
    let mut r = r_min;
    let mut theta = rng.gen_range(0.2..6.0);
    let mut out = vec![Complex64::from_polar(r, theta)];
    while r < r_max {
        r *= rng.gen_range(1.03..1.06);
        theta += rng.gen_range(-0.2..0.2);
        out.push(Complex64::from_polar(r, theta));
    }
    out
}

fn cmd_check(job: &JobFlags) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let mut checks = Checks(Vec::new());

    checks.record("toric Calabi-Yau fan of K_P2", (|| {
        let (f, sub) = kp2_subdivision(10)?;
        let (r, ok) = mirror_report(&f, &sub);
        Ok((ok && r["convex_support"] == json!(true), format!("rays {}", r["rays"])))
    })());

    checks.record("A1 walls and monodromy", (|| {
        let e = std::f64::consts::E;
        let f = parse_laurent_with("(z - 2)(z - 3)", 1, &BTreeMap::new())?;
        let base = fibration::base_2d(&ConicFibrationSpace::new(f), Some(&[e, e * e]))?;
        let ok = (base.walls[0] - 1.0).abs() < 1e-9
            && (base.walls[1] - 2.0).abs() < 1e-9
            && fibration::monodromy_2d().0 == [[1, 1], [0, 1]];
        Ok((ok, format!("walls {:?}", base.walls)))
    })());

    checks.record("gluing cocycles on K_P2", (|| {
        let (_, sub) = kp2_subdivision(10)?;
        let curve = sub.dual_tropical_curve()?;
        let mut all = true;
        for cycle in &curve.cycles {
            let n = cycle.len();
            let loop_: Vec<_> = (0..n)
                .map(|i| gluing::wall_crossing_3d(&curve, &cycle[i], &cycle[(i + 1) % n]))
                .collect::<Result<_>>()?;
            all &= gluing::verify_cocycle(&loop_)?;
        }
        Ok((all, format!("{} triangles", curve.cycles.len())))
    })());

    checks.record("degree equals intersection number", (|| {
        let base = SYZBase2D::from_moduli(&[2.0, 4.0])?;
        for _ in 0..10 {
            let path = AdmissiblePath2D::new(random_radial_path(&mut rng, 1.0, 8.0), [2.0, 4.0])?;
            let xi = transform::wall_values_from_path(&path, &base.root_moduli)?;
            let d = transform::syz_transform_2d(&xi, &base)?.degree;
            if d != Some(transform::intersection_number_2d(&path)?) {
                return Ok((false, format!("mismatch on {:?}", xi)));
            }
        }
        Ok((true, "10 random paths".into()))
    })());

    checks.record("zero section gives the structure sheaf", (|| {
        let (_, sub) = kp2_subdivision(10)?;
        let curve = sub.dual_tropical_curve()?;
        let b = transform::syz_transform_3d(&TropicalSection3D::zero(&curve), &curve)?;
        let w = transform::winding_degree(&[Complex64::new(0.1, 0.0), Complex64::new(10.0, 0.0)])?;
        Ok((b.structure_sheaf && w == 0, format!("winding {w}")))
    })());

    checks.record("gradient sections are Lagrangian", (|| {
        let grid = GridSpec::cube(2, -1.0, 1.0, 9);
        let mut worst = 0f64;
        for _ in 0..5 {
            let s = PolynomialPotential::random(&mut rng, 2, 3).gradient_section(grid.clone())?;
            worst = worst.max(transform::curvature02_residual(&s, &grid, job.step)?);
        }
        Ok((worst < 1e-5, format!("max residual {worst:e}")))
    })());

    checks.record("amoeba chambers of 1 + z1 + z2", (|| {
        let f = parse_laurent_with("1 + z1 + z2", 2, &BTreeMap::new())?;
        let raster = amoeba::amoeba_raster(&f, [-4.0, 4.0, -4.0, 4.0], job.resolution, job.tol)?;
        let l = amoeba::chamber_labeling(&raster, &f)?;
        let labels: Vec<_> = l.chambers.iter().map(|c| c.label.clone()).collect();
        Ok((labels.len() == 3, format!("labels {labels:?}")))
    })());

    checks.record("SYZ fibers are Lagrangian", (|| {
        let f = parse_laurent_with("(z - 2)(z - 4)", 1, &BTreeMap::new())?;
        let space = ConicFibrationSpace::new(f.clone());
        let mut worst = 0f64;
        for _ in 0..10 {
            let z = Complex64::from_polar(rng.gen_range(0.5..6.0), rng.gen_range(0.3..6.0));
            let x = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let y = f.eval(&[z]) / x;
            worst = worst.max(fibration::fiber_lagrangian_residual(&space, [x, y, z], job.tol)?);
        }
        Ok((worst < 1e-8, format!("max residual {worst:e}")))
    })());

    let ok = checks.0.iter().all(|c| c["pass"] == json!(true));
    Ok(Outcome {
        name: "check",
        report: json!({ "checks": checks.0, "all_passed": ok }),
        figure: None,
        extra: Vec::new(),
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dim("1 + z1 + z2"), 2);
        assert_eq!(infer_dim("(z-2)(z-4)"), 1);
        assert_eq!(infer_dim("t + z1 + z3"), 3);
    }

    #[test]
    fn parse_errors_exit_one() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        assert_eq!(run_with(["syz-mirror", "mirror", "--expr", "1 + + z1", "--out", out]), 1);
        assert_eq!(run_with(["syz-mirror", "frobnicate"]), 1);
        assert_eq!(run_with(["syz-mirror", "--help"]), 0);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
