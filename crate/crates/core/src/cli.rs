//! Command-line front end: argument parsing, map sources, experiment configs
//! and the report types each subcommand prints.
//!
//! Exit codes: 0 success, 2 invalid input or unsupported map class, 3 the
//! true orbit hit the pole, 4 a search was exhausted (inconclusive).
//!
//! Defaults:
//!
//! | flag / key     | default            | used by                       |
//! |----------------|--------------------|-------------------------------|
//! | `--steps`      | 10000              | orbit, experiment, discrepancy|
//! | `--pole-tol`   | 1e-12 (relative)   | orbit                         |
//! | `--eps`        | 1e-3               | experiment                    |
//! | `--thresholds` | 1,10               | experiment                    |
//! | `--r`          | 0.5 (experiment)   | experiment, geometry          |
//! | `--tol`        | 1e-12              | classify (rationality test)   |
//! | `--q-max`      | 1000000            | classify                      |
//! | `--seed`       | 0                  | classify (sampled check)      |
//! | `--samples`    | 100                | classify                      |
//! | `--z0`, `a0`   | 0                  | orbit, experiment             |
//! | `b0`           | `a0`; `h⁻¹(r)` for off-line | experiment           |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{invariant_circle, invariant_line, separation_l, ExtendedLine, InvariantCircle};
use crate::hyers_ulam::{
    build_periodic_pseudo_orbit, drift_experiment, off_line_experiment, separation_experiment,
    ExperimentReport,
};
use crate::mobius::{
    MapClass, NormalizedMobius, RawMobius, RotationVerdict, DEFAULT_ROTATION_Q_MAX,
    DEFAULT_ROTATION_TOL, POLE_TOL,
};
use crate::orbit::{iterate_orbit, star_discrepancy, Orbit, Termination};
use crate::sphere::{JsonComplex, SpherePoint};
use crate::{presets, sampling, Complex, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_POLE_HIT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

pub const DEFAULT_STEPS: u64 = 10_000;
pub const DEFAULT_EPS: f64 = 1e-3;
pub const DEFAULT_THRESHOLDS: [f64; 2] = [1.0, 10.0];
pub const DEFAULT_R: f64 = 0.5;
pub const DEFAULT_SAMPLES: usize = 100;

/// Cap on the first-return search behind a periodic loop.
pub const RECURRENCE_SEARCH_STEPS: u64 = 10_000_000;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SearchExhausted { .. } | Error::ConstructionFailed(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_INVALID,
    }
}

/// A map given by preset name or as a coefficient literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSource {
    Preset(String),
    Literal(RawMobius),
}

impl MapSource {
    pub fn resolve(&self) -> Result<NormalizedMobius> {
        match self {
            MapSource::Preset(name) => presets::by_name(name),
            MapSource::Literal(raw) => raw.normalize(),
        }
    }

    /// A preset name, an inline JSON literal, or a path to a JSON file
    /// holding either.
    pub fn parse_arg(arg: &str) -> Result<Self> {
        let trimmed = arg.trim();
        if presets::NAMES.contains(&trimmed) {
            return Ok(MapSource::Preset(trimmed.to_string()));
        }
        let text = if trimmed.starts_with('{') || trimmed.starts_with('"') {
            trimmed.to_string()
        } else {
            std::fs::read_to_string(trimmed)
                .map_err(|e| Error::InvalidInput(format!("cannot read map file {trimmed}: {e}")))?
        };
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("bad map literal: {e}")))
    }
}

/// `inf`, a real number, `re,im`, or `{"re": .., "im": ..}`.
pub fn parse_point(arg: &str) -> Result<SpherePoint> {
    let s = arg.trim();
    if s == "inf" {
        return Ok(SpherePoint::INFINITY);
    }
    if s.starts_with('{') || s.starts_with('"') {
        return serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("bad point {s:?}: {e}")));
    }
    let bad = |_| Error::InvalidInput(format!("bad point {s:?}"));
    match s.split_once(',') {
        Some((re, im)) => SpherePoint::new(re.trim().parse().map_err(bad)?, im.trim().parse().map_err(bad)?),
        None => SpherePoint::new(s.parse().map_err(bad)?, 0.0),
    }
}

fn parse_point_arg(s: &str) -> std::result::Result<SpherePoint, String> {
    parse_point(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "mobius-lab", version, about = "Elliptic Möbius maps and Hyers-Ulam pseudo-orbit experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct MapArgs {
    /// Named map: p, q, r, golden, trace-half
    #[arg(long, conflicts_with = "map")]
    pub preset: Option<String>,
    /// JSON literal {"a": {"re", "im"}, "b": .., "c": .., "d": ..}, or a file holding one
    #[arg(long)]
    pub map: Option<String>,
}

impl MapArgs {
    fn source(&self) -> Result<Option<MapSource>> {
        match (&self.preset, &self.map) {
            (Some(p), _) => Ok(Some(MapSource::Preset(p.clone()))),
            (None, Some(m)) => MapSource::parse_arg(m).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn required(&self) -> Result<MapSource> {
        self.source()?
            .ok_or_else(|| Error::InvalidInput("a map is required (--preset or --map)".into()))
    }
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace, class, fixed points, multiplier and rotation of a map
    Classify {
        #[command(flatten)]
        map: MapArgs,
        /// Tolerance (in turns) of the rational-rotation test
        #[arg(long, default_value_t = DEFAULT_ROTATION_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_ROTATION_Q_MAX)]
        q_max: u64,
        /// Seed for the sampled conjugation check
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dump an orbit as CSV (n, re, im, is_inf)
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value = "0", value_parser = parse_point_arg)]
        z0: SpherePoint,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: u64,
        #[arg(long, default_value_t = POLE_TOL)]
        pole_tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Invariant line, separation L and optionally the circle of parameter r
    Geometry {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        r: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pseudo-orbit separation experiment
    Experiment {
        /// JSON experiment config; flags given alongside override its keys
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum)]
        kind: Option<ExperimentKind>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_parser = parse_point_arg)]
        a0: Option<SpherePoint>,
        #[arg(long, value_parser = parse_point_arg)]
        b0: Option<SpherePoint>,
        #[arg(long)]
        steps: Option<u64>,
        /// Comma-separated separation thresholds
        #[arg(long, value_delimiter = ',')]
        thresholds: Option<Vec<f64>>,
        #[arg(long)]
        r: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Star discrepancy of the rotation sequence {kθ/2π mod 1}
    Discrepancy {
        /// Rotation angle in radians; defaults to the map's rotation angle
        #[arg(long)]
        theta: Option<f64>,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    PeriodicLoop,
    Drift,
    OffLine,
}

/// Experiment config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub map: MapSource,
    pub kind: ExperimentKind,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub a0: Option<SpherePoint>,
    #[serde(default)]
    pub b0: Option<SpherePoint>,
    #[serde(default = "default_steps")]
    pub steps: u64,
    #[serde(default = "default_thresholds")]
    pub thresholds: Vec<f64>,
    #[serde(default)]
    pub r: Option<f64>,
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}
fn default_steps() -> u64 {
    DEFAULT_STEPS
}
fn default_thresholds() -> Vec<f64> {
    DEFAULT_THRESHOLDS.to_vec()
}

impl ExperimentConfig {
    pub fn new(map: MapSource, kind: ExperimentKind) -> Self {
        ExperimentConfig {
            map,
            kind,
            eps: DEFAULT_EPS,
            a0: None,
            b0: None,
            steps: DEFAULT_STEPS,
            thresholds: default_thresholds(),
            r: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointsJson {
    pub alpha: JsonComplex,
    pub beta: JsonComplex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugationCheck {
    pub seed: u64,
    pub samples: usize,
    /// `max |h(f(z)) − k·h(z)| / (1 + |h(z)|)` over the samples.
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub map: RawMobius,
    pub trace: JsonComplex,
    pub class: MapClass,
    pub fixed_points: FixedPointsJson,
    pub multiplier: Option<JsonComplex>,
    pub rotation_angle: Option<f64>,
    pub rotation: Option<RotationVerdict>,
    pub order: Option<u64>,
    pub conjugation_check: Option<ConjugationCheck>,
}

pub fn classify_report(
    m: &NormalizedMobius,
    tol: f64,
    q_max: u64,
    seed: u64,
    samples: usize,
) -> Result<ClassifyReport> {
    let class = m.classify();
    let fp = m.fixed_points()?;
    let mut report = ClassifyReport {
        map: m.to_raw(),
        trace: m.trace().into(),
        class,
        fixed_points: FixedPointsJson {
            alpha: fp.alpha.into(),
            beta: fp.beta.into(),
        },
        multiplier: None,
        rotation_angle: None,
        rotation: None,
        order: None,
        conjugation_check: None,
    };
    if class == MapClass::Elliptic {
        let nf = m.normal_form_with(tol, q_max)?;
        let h = nf.conjugator();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let z = sampling::random_complex(&mut rng, 10.0);
            let (Some(fz), hz) = (m.apply_finite(z), h.apply_finite(z)) else { continue };
            let lhs = h.apply_finite(fz);
            if lhs.is_finite() && hz.is_finite() {
                worst = worst.max((lhs - nf.multiplier * hz).norm() / (1.0 + hz.norm()));
            }
        }
        report.multiplier = Some(nf.multiplier.into());
        report.rotation_angle = Some(nf.angle);
        report.rotation = Some(nf.verdict);
        report.order = nf.verdict.order();
        report.conjugation_check = Some(ConjugationCheck {
            seed,
            samples,
            max_residual: worst,
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub line: ExtendedLine,
    pub separation_l: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circle: Option<InvariantCircle>,
}

pub fn geometry_report(m: &NormalizedMobius, r: Option<f64>) -> Result<GeometryReport> {
    Ok(GeometryReport {
        line: invariant_line(m)?,
        separation_l: separation_l(m)?,
        circle: r.map(|r| invariant_circle(m, r)).transpose()?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub theta: f64,
    pub n: u64,
    pub star_discrepancy: f64,
}

/// Writes `n,re,im,is_inf` rows.
pub fn write_orbit_csv<W: Write>(orbit: &Orbit, out: W) -> std::io::Result<()> {
    #[derive(Serialize)]
    struct Row {
        n: usize,
        re: f64,
        im: f64,
        is_inf: bool,
    }
    let mut w = csv::Writer::from_writer(out);
    for (n, z) in orbit.samples.iter().enumerate() {
        let (re, im) = z.finite_value().map_or((f64::NAN, f64::NAN), |v| (v.re, v.im));
        w.serialize(Row {
            n,
            re,
            im,
            is_inf: z.is_infinity(),
        })?;
    }
    w.flush()
}

/// Runs the experiment a config describes.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let m = cfg.map.resolve()?;
    let a0 = cfg.a0.unwrap_or(SpherePoint::from(0.0));
    match cfg.kind {
        ExperimentKind::PeriodicLoop => {
            let po = build_periodic_pseudo_orbit(&m, a0, cfg.eps, RECURRENCE_SEARCH_STEPS)?;
            separation_experiment(&m, &po, cfg.b0.unwrap_or(a0), cfg.steps, &cfg.thresholds)
        }
        ExperimentKind::Drift => {
            let d0 = a0
                .finite_value()
                .ok_or_else(|| Error::InvalidInput("a0 must be finite".into()))?;
            drift_experiment(&m, d0, cfg.eps, cfg.b0.unwrap_or(a0), cfg.steps, &cfg.thresholds)
        }
        ExperimentKind::OffLine => {
            let r = cfg.r.unwrap_or(DEFAULT_R);
            let b0 = match cfg.b0 {
                Some(b) => b,
                None => invariant_circle(&m, r)?.base_point().into(),
            };
            let po = build_periodic_pseudo_orbit(&m, a0, cfg.eps, RECURRENCE_SEARCH_STEPS)?;
            off_line_experiment(&m, r, &po, b0, cfg.steps, &cfg.thresholds)
        }
    }
}

/// A finished command: what to print and how to exit.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub body: Vec<u8>,
    pub exit_code: i32,
}

fn json_body<T: Serialize>(value: &T) -> Vec<u8> {
    let mut body = serde_json::to_vec_pretty(value).expect("reports serialize");
    body.push(b'\n');
    body
}

fn reject_csv(format: Option<Format>, what: &str) -> Result<()> {
    match format {
        Some(Format::Csv) => Err(Error::InvalidInput(format!("{what} reports are JSON only"))),
        _ => Ok(()),
    }
}

fn require_non_affine(m: &NormalizedMobius) -> Result<()> {
    if m.classify() == MapClass::Affine {
        Err(Error::AffineUnsupported)
    } else {
        Ok(())
    }
}

/// Executes a parsed command without touching stdout.
pub fn execute(command: &Command) -> Result<CommandOutput> {
    match command {
        Command::Classify {
            map,
            tol,
            q_max,
            seed,
            samples,
            output,
        } => {
            reject_csv(output.format, "classify")?;
            let m = map.required()?.resolve()?;
            require_non_affine(&m)?;
            let report = classify_report(&m, *tol, *q_max, *seed, *samples)?;
            Ok(CommandOutput { body: json_body(&report), exit_code: EXIT_OK })
        }
        Command::Orbit {
            map,
            z0,
            steps,
            pole_tol,
            output,
        } => {
            let m = map.required()?.resolve()?;
            let orbit = iterate_orbit(&m, *z0, *steps, *pole_tol);
            let exit_code = match orbit.termination {
                Termination::PoleHit { .. } => EXIT_POLE_HIT,
                _ => EXIT_OK,
            };
            let body = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_orbit_csv(&orbit, &mut buf)
                        .map_err(|e| Error::InvalidInput(e.to_string()))?;
                    buf
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct OrbitJson<'a> {
                        start: SpherePoint,
                        termination: Termination,
                        samples: &'a [SpherePoint],
                    }
                    json_body(&OrbitJson {
                        start: orbit.start,
                        termination: orbit.termination,
                        samples: &orbit.samples,
                    })
                }
            };
            Ok(CommandOutput { body, exit_code })
        }
        Command::Geometry { map, r, output } => {
            reject_csv(output.format, "geometry")?;
            let m = map.required()?.resolve()?;
            Ok(CommandOutput {
                body: json_body(&geometry_report(&m, *r)?),
                exit_code: EXIT_OK,
            })
        }
        Command::Experiment {
            config,
            map,
            kind,
            eps,
            a0,
            b0,
            steps,
            thresholds,
            r,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::InvalidInput(format!("cannot read config {}: {e}", path.display()))
                    })?;
                    serde_json::from_str::<ExperimentConfig>(&text)
                        .map_err(|e| Error::InvalidInput(format!("bad experiment config: {e}")))?
                }
                None => {
                    let kind = kind.ok_or_else(|| {
                        Error::InvalidInput("--kind is required without --config".into())
                    })?;
                    ExperimentConfig::new(map.required()?, kind)
                }
            };
            if let Some(src) = map.source()? {
                cfg.map = src;
            }
            if let Some(k) = kind {
                cfg.kind = *k;
            }
            if let Some(v) = eps {
                cfg.eps = *v;
            }
            if a0.is_some() {
                cfg.a0 = *a0;
            }
            if b0.is_some() {
                cfg.b0 = *b0;
            }
            if let Some(v) = steps {
                cfg.steps = *v;
            }
            if let Some(v) = thresholds {
                cfg.thresholds = v.clone();
            }
            if r.is_some() {
                cfg.r = *r;
            }
            let report = run_experiment(&cfg)?;
            let exit_code = if report.pole_hit.is_some() {
                EXIT_POLE_HIT
            } else {
                EXIT_OK
            };
            let body = match output.format.unwrap_or(Format::Json) {
                Format::Json => json_body(&report),
                Format::Csv => {
                    let mut buf = Vec::new();
                    report
                        .write_trace_csv(&mut buf)
                        .map_err(|e| Error::InvalidInput(e.to_string()))?;
                    buf
                }
            };
            Ok(CommandOutput { body, exit_code })
        }
        Command::Discrepancy {
            theta,
            map,
            steps,
            output,
        } => {
            reject_csv(output.format, "discrepancy")?;
            let theta = match (theta, map.source()?) {
                (Some(t), _) => *t,
                (None, Some(src)) => src.resolve()?.rotation_angle()?,
                (None, None) => {
                    return Err(Error::InvalidInput("give --theta or a map".into()))
                }
            };
            if *steps == 0 {
                return Err(Error::InvalidParameter("--steps must be at least 1".into()));
            }
            Ok(CommandOutput {
                body: json_body(&DiscrepancyReport {
                    theta,
                    n: *steps,
                    star_discrepancy: star_discrepancy(theta, *steps),
                }),
                exit_code: EXIT_OK,
            })
        }
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Classify { output, .. }
        | Command::Orbit { output, .. }
        | Command::Geometry { output, .. }
        | Command::Experiment { output, .. }
        | Command::Discrepancy { output, .. } => output,
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let written = match &output_args(&cli.command).out {
                Some(path) => std::fs::write(path, &out.body),
                None => std::io::stdout().write_all(&out.body),
            };
            if let Err(e) = written {
                eprintln!("mobius-lab: cannot write output: {e}");
                return EXIT_INVALID;
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("mobius-lab: {e}");
            exit_code(&e)
        }
    }
}

/// Sample points `(n, z)` of a complex orbit, used by the examples.
pub fn finite_samples(orbit: &Orbit) -> impl Iterator<Item = (usize, Complex)> + '_ {
    orbit
        .samples
        .iter()
        .enumerate()
        .filter_map(|(n, z)| z.finite_value().map(|v| (n, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        let mut v = vec!["mobius-lab"];
        v.extend_from_slice(args);
        Cli::try_parse_from(v).unwrap().command
    }

    fn run_json(args: &[&str]) -> (serde_json::Value, i32) {
        let out = execute(&parse(args)).unwrap();
        (serde_json::from_slice(&out.body).unwrap(), out.exit_code)
    }

    #[test]
    fn point_syntax() {
        assert!(parse_point("inf").unwrap().is_infinity());
        assert_eq!(parse_point("2.5").unwrap(), SpherePoint::from(2.5));
        assert_eq!(parse_point("1, -1").unwrap(), SpherePoint::new(1.0, -1.0).unwrap());
        assert_eq!(
            parse_point(r#"{"re": 0, "im": 3}"#).unwrap(),
            SpherePoint::new(0.0, 3.0).unwrap()
        );
        assert!(parse_point("1+i").is_err());
    }

    #[test]
    fn map_sources() {
        assert_eq!(MapSource::parse_arg("q").unwrap(), MapSource::Preset("q".into()));
        let lit = r#"{"a": {"re": 1, "im": 0}, "b": {"re": 0, "im": 0}, "c": {"re": 1, "im": 0}, "d": {"re": 1, "im": 0}}"#;
        let m = MapSource::parse_arg(lit).unwrap().resolve().unwrap();
        assert_eq!(m.classify(), MapClass::Parabolic);
        assert!(MapSource::parse_arg("/no/such/file.json").is_err());
        assert!(MapSource::Preset("nope".into()).resolve().is_err());
    }

    #[test]
    fn classify_p_and_q() {
        let (v, code) = run_json(&["classify", "--preset", "p"]);
        assert_eq!(code, 0);
        assert_eq!(v["class"], "elliptic");
        assert_eq!(v["trace"]["re"], 0.0);
        assert_eq!(v["rotation_angle"], std::f64::consts::PI);
        assert_eq!(v["order"], 2);
        assert!(v["conjugation_check"]["max_residual"].as_f64().unwrap() < 1e-9);

        let (v, _) = run_json(&["classify", "--preset", "q"]);
        assert!((v["trace"]["re"].as_f64().unwrap() + 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(v["order"], 6);
    }

    #[test]
    fn classify_rejects_affine() {
        let lit = r#"{"a": {"re": 2, "im": 0}, "b": {"re": 1, "im": 0}, "c": {"re": 0, "im": 0}, "d": {"re": 0.5, "im": 0}}"#;
        let err = execute(&parse(&["classify", "--map", lit])).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_INVALID);
        assert!(err.to_string().contains("affine map unsupported"));
    }

    #[test]
    fn classify_non_elliptic_reports_class_only() {
        let lit = r#"{"a": {"re": 3, "im": 0}, "b": {"re": -1, "im": 0}, "c": {"re": 1, "im": 0}, "d": {"re": 0, "im": 0}}"#;
        let (v, code) = run_json(&["classify", "--map", lit]);
        assert_eq!(code, 0);
        assert_eq!(v["class"], "hyperbolic");
        assert!(v["multiplier"].is_null());
    }

    #[test]
    fn geometry_of_p() {
        let (v, _) = run_json(&["geometry", "--preset", "p", "--r", "2"]);
        assert!((v["separation_l"].as_f64().unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(v["circle"]["r"], 2.0);
        let hyp = r#"{"a": {"re": 3, "im": 0}, "b": {"re": -1, "im": 0}, "c": {"re": 1, "im": 0}, "d": {"re": 0, "im": 0}}"#;
        let err = execute(&parse(&["geometry", "--map", hyp])).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_INVALID);
    }

    #[test]
    fn orbit_pole_exit_code() {
        // r's pole is 0
        let out = execute(&parse(&["orbit", "--preset", "r", "--z0", "0", "--steps", "3"])).unwrap();
        assert_eq!(out.exit_code, EXIT_POLE_HIT);
        let text = String::from_utf8(out.body).unwrap();
        let last = text.lines().last().unwrap();
        assert!(last.starts_with("1,") && last.ends_with("true"), "{text}");
    }

    #[test]
    fn experiment_config_is_strict() {
        let bad = r#"{"map": "p", "kind": "drift", "epsilon": 0.1}"#;
        assert!(serde_json::from_str::<ExperimentConfig>(bad).is_err());
        let ok = r#"{"map": "golden", "kind": "off-line", "r": 0.5}"#;
        let cfg: ExperimentConfig = serde_json::from_str(ok).unwrap();
        assert_eq!(cfg.eps, DEFAULT_EPS);
        assert_eq!(cfg.steps, DEFAULT_STEPS);
        assert_eq!(cfg.thresholds, DEFAULT_THRESHOLDS.to_vec());
        let lit = r#"{"map": {"a": {"re": 0, "im": 0}, "b": {"re": -1, "im": 0}, "c": {"re": 1, "im": 0}, "d": {"re": 0, "im": 0}}, "kind": "drift"}"#;
        assert!(matches!(
            serde_json::from_str::<ExperimentConfig>(lit).unwrap().map,
            MapSource::Literal(_)
        ));
    }

    #[test]
    fn drift_experiment_via_flags() {
        let (v, code) = run_json(&[
            "experiment", "--preset", "p", "--kind", "drift", "--eps", "0.01",
            "--thresholds", "1", "--steps", "200",
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["crossings"][0]["first_index"], 101);
    }

    #[test]
    fn exhausted_search_exit_code() {
        let e =build_periodic_pseudo_orbit(&presets::golden(), 0.0.into(), 1e-9, 10).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_INCONCLUSIVE);
    }
}
