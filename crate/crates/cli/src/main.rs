//! `concentric-gons`: feasibility checks, reconstruction, pairing,
//! verification and SVG drawings for regular polygon pairs and concentric
//! circle families.
//!
//! Exit codes: 0 success, 2 infeasible or empty result, 1 usage or input
//! error.

mod document;
mod json;
mod report;
mod svg;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use concentric_gons::batch::Execution;
use concentric_gons::oracle::{random_instance, RandomInstance};
use concentric_gons::{CircleFamily, Error, PlanePoint, RegularPolygonSpec, Tolerance};

use document::{family_from, parse_radii, InputError, InstanceDocument, Payload};
use svg::Scene;

#[derive(Debug, Parser)]
#[command(
    name = "concentric-gons",
    version,
    about = "Regular n-gon pairs and the concentric circles through their vertices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative tolerance for all comparisons.
    #[arg(long, global = true, value_name = "EPS", default_value_t = Tolerance::DEFAULT.relative_eps())]
    tol: f64,

    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// Largest accepted vertex count. Moments of order 2(n-1) overflow for
    /// large n unless the radii are scaled near 1.
    #[arg(long, global = true, value_name = "N", default_value_t = 64)]
    max_n: usize,
}

#[derive(Debug, Args)]
struct Source {
    /// Comma-separated circle radii, e.g. `1,1,2`.
    #[arg(long, value_name = "R1,R2,...", conflicts_with = "input")]
    radii: Option<String>,

    /// Instance file (`concentric-gons/1` JSON).
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SampleKind {
    Circles,
    PolygonPair,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test whether the circles carry two regular n-gons and recover their
    /// circumradii.
    Check {
        #[command(flatten)]
        source: Source,
    },
    /// Place two polygons realizing the circles.
    Reconstruct {
        #[command(flatten)]
        source: Source,
        /// Also write a drawing.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Concentric circles through the vertices of two given polygons.
    Pair {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Brute-force cross-check of an instance.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Draw an instance; to standard output unless `--svg` is given.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Which pairing result to draw for a polygon pair.
        #[arg(long, default_value_t = 0)]
        result: usize,
    },
    /// Write a seeded random instance file.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "polygon-pair")]
        kind: SampleKind,
        /// Output file; standard output when absent.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

enum Loaded {
    Circles(CircleFamily),
    Pair(RegularPolygonSpec, RegularPolygonSpec),
}

struct Context {
    tol: Tolerance,
    json: bool,
    max_n: usize,
}

impl Context {
    fn check_n(&self, n: usize) -> Result<(), InputError> {
        if n > self.max_n {
            return Err(InputError(format!(
                "n = {n} exceeds --max-n {}; rescale the radii and raise the limit to proceed",
                self.max_n
            )));
        }
        Ok(())
    }

    fn load(&self, source: &Source) -> Result<Loaded, InputError> {
        let loaded = match (&source.radii, &source.input) {
            (Some(text), None) => {
                Loaded::Circles(family_from(PlanePoint::ORIGIN, parse_radii(text)?)?)
            }
            (None, Some(path)) => match InstanceDocument::load(path)?.payload {
                Payload::Circles { center, radii } => {
                    Loaded::Circles(family_from(center.into(), radii)?)
                }
                Payload::PolygonPair { first, second } => {
                    Loaded::Pair(first.to_spec()?, second.to_spec()?)
                }
            },
            _ => return Err(InputError("one of --radii or --input is required".into())),
        };
        match &loaded {
            Loaded::Circles(f) => self.check_n(f.n())?,
            Loaded::Pair(a, b) => {
                self.check_n(a.n())?;
                self.check_n(b.n())?;
            }
        }
        Ok(loaded)
    }

    fn load_circles(&self, source: &Source) -> Result<CircleFamily, InputError> {
        match self.load(source)? {
            Loaded::Circles(f) => Ok(f),
            Loaded::Pair(..) => Err(InputError(
                "expected a circles instance, got a polygon pair".into(),
            )),
        }
    }

    fn load_pair(
        &self,
        path: &Path,
    ) -> Result<(RegularPolygonSpec, RegularPolygonSpec), InputError> {
        let source = Source {
            radii: None,
            input: Some(path.to_path_buf()),
        };
        match self.load(&source)? {
            Loaded::Pair(a, b) => Ok((a, b)),
            Loaded::Circles(_) => Err(InputError(
                "expected a polygon_pair instance, got circles".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Success,
    /// Mathematically infeasible or an empty result.
    Negative,
}

fn write_file(path: &Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text)
        .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn emit<T: serde::Serialize>(
    ctx: &Context,
    out: &mut dyn Write,
    value: &T,
    human: impl FnOnce() -> String,
) -> Result<(), InputError> {
    let text = if ctx.json {
        json::to_string(value)
    } else {
        human()
    };
    write_out(out, &text)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), InputError> {
    out.write_all(text.as_bytes())
        .map_err(|e| InputError(format!("cannot write output: {e}")))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_text(r: &report::CheckReport) -> String {
    let mut s = format!("n: {}\nfeasible: {}\n", r.n, yes_no(r.feasible));
    s += &format!(
        "condition I: ratio {:.12} ({})\n",
        r.condition_one.ratio,
        if r.condition_one.ok { "ok" } else { "fails" }
    );
    match &r.condition_two.worst {
        Some(w) => {
            s += &format!(
                "condition II: {} (worst m={}, residual {:.6e})\n",
                if r.condition_two.ok { "ok" } else { "fails" },
                w.m,
                w.residual
            )
        }
        None => s += "condition II: ok (no higher moments)\n",
    }
    s += &format!(
        "circumradii: r1={:.15} r2={:.15}{}{}\n",
        r.circumradii.r1,
        r.circumradii.r2,
        if r.circumradii.degenerate {
            " (degenerate: one polygon)"
        } else {
            ""
        },
        if r.circumradii.clamped {
            " (clamped, family infeasible)"
        } else {
            ""
        },
    );
    if let Some(cf) = &r.closed_form {
        match cf.rejection {
            Some(why) => {
                s += &format!(
                    "{} closed form: rejected ({})\n",
                    cf.shape,
                    why.replace('_', " ")
                )
            }
            None => {
                s += &format!(
                    "{} closed form: r1={:.15} r2={:.15}\n",
                    cf.shape,
                    cf.r1.unwrap_or(f64::NAN),
                    cf.r2.unwrap_or(f64::NAN)
                )
            }
        }
    }
    s
}

fn polygon_text(label: &str, p: &document::PolygonRecord) -> String {
    format!(
        "{label}: n={} center=({:.15}, {:.15}) R={:.15} phase={:.15}",
        p.n, p.center.x, p.center.y, p.circumradius, p.phase
    )
}

fn run_check(ctx: &Context, out: &mut dyn Write, source: &Source) -> Result<Status, InputError> {
    let family = ctx.load_circles(source)?;
    let r = report::check(&family, ctx.tol);
    emit(ctx, out, &r, || check_text(&r))?;
    Ok(if r.feasible {
        Status::Success
    } else {
        Status::Negative
    })
}

fn run_reconstruct(
    ctx: &Context,
    out: &mut dyn Write,
    source: &Source,
    svg_path: Option<&Path>,
) -> Result<Status, InputError> {
    let family = ctx.load_circles(source)?;
    match report::reconstruct(&family, ctx.tol) {
        Ok((r, rec)) => {
            if let Some(path) = svg_path {
                let scene = Scene {
                    circles: Some((family.center(), family.radii().to_vec())),
                    first: Some(rec.first.polygon),
                    second: Some(rec.second.polygon),
                    m_point: Some(family.center()),
                };
                write_file(path, &scene.render())?;
            }
            emit(ctx, out, &r, || {
                let mut s = format!(
                    "circumradii: r1={:.15} r2={:.15}\n",
                    r.circumradii.r1, r.circumradii.r2
                );
                for p in &r.polygons {
                    s += &polygon_text(p.role, &p.polygon);
                    s += &format!(
                        " residual={:.3e}{}\n",
                        p.residual,
                        if p.point_polygon {
                            " (point polygon)"
                        } else {
                            ""
                        }
                    );
                }
                s
            })?;
            Ok(Status::Success)
        }
        Err(Error::InfeasibleFamily(_)) => {
            let r = report::check(&family, ctx.tol);
            emit(ctx, out, &r, || check_text(&r))?;
            Ok(Status::Negative)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(Status::Negative)
        }
    }
}

fn run_pair(
    ctx: &Context,
    out: &mut dyn Write,
    input: &Path,
    svg_path: Option<&Path>,
) -> Result<Status, InputError> {
    let (p1, p2) = ctx.load_pair(input)?;
    let r = report::pair(&p1, &p2, ctx.tol).map_err(|e| InputError(e.to_string()))?;
    if let Some(path) = svg_path {
        write_file(path, &pair_scene(&p1, &p2, &r, 0).render())?;
    }
    emit(ctx, out, &r, || {
        let mut s = format!(
            "{}\n{}\n",
            polygon_text("first", &r.first),
            polygon_text("second", &r.second)
        );
        if r.coincident {
            s += "auxiliary circles coincide: every point on them is a common center\n";
        }
        s += &format!("results: {}\n", r.results.len());
        for (i, res) in r.results.iter().enumerate() {
            s += &format!(
                "[{i}] M=({:.15}, {:.15}) {}\n",
                res.m_point.x,
                res.m_point.y,
                polygon_text("aligned", &res.aligned_second)
            );
            let radii: Vec<String> = res.radii.iter().map(|d| format!("{d:.15}")).collect();
            s += &format!("    radii: {}\n", radii.join(", "));
        }
        s
    })?;
    if !r.failures.is_empty() {
        eprintln!(
            "warning: {} alignment(s) failed multiset verification",
            r.failures.len()
        );
    }
    Ok(if r.is_empty() {
        Status::Negative
    } else {
        Status::Success
    })
}

fn pair_scene(
    p1: &RegularPolygonSpec,
    p2: &RegularPolygonSpec,
    r: &report::PairReport,
    index: usize,
) -> Scene {
    match r.results.get(index) {
        Some(res) => Scene {
            circles: Some((res.m_point.into(), res.radii.clone())),
            first: Some(*p1),
            second: res.aligned_second.to_spec().ok(),
            m_point: Some(res.m_point.into()),
        },
        None => Scene {
            circles: None,
            first: Some(*p1),
            second: Some(*p2),
            m_point: None,
        },
    }
}

fn run_verify(ctx: &Context, out: &mut dyn Write, source: &Source) -> Result<Status, InputError> {
    let exec = Execution::default();
    let r = match ctx.load(source)? {
        Loaded::Circles(f) => report::verify_circles(&f, ctx.tol, exec),
        Loaded::Pair(a, b) => {
            report::verify_pair(&a, &b, ctx.tol, exec).map_err(|e| InputError(e.to_string()))?
        }
    };
    emit(ctx, out, &r, || {
        let worst = |xs: &mut dyn Iterator<Item = f64>| xs.fold(0.0, f64::max);
        let mut s = format!("kind: {}\n", r.kind);
        if !r.power_sums.is_empty() {
            s += &format!(
                "power sums: {} checks, worst residual {:.3e}\n",
                r.power_sums.len(),
                worst(&mut r.power_sums.iter().map(|c| c.residual))
            );
        }
        if !r.moments.is_empty() {
            s += &format!(
                "moments: {} checks, worst residual {:.3e}\n",
                r.moments.len(),
                worst(&mut r.moments.iter().map(|c| c.residual))
            );
        }
        for c in &r.sweeps {
            s += &format!(
                "sweep {}: phase {:.12} residual {:.3e}\n",
                c.polygon, c.phase, c.residual
            );
        }
        match &r.first_failure {
            None => s += "pass\n",
            Some(f) => {
                s += &format!("FAIL in {}", f.section);
                if let Some(p) = f.polygon {
                    s += &format!(" ({p})");
                }
                if let Some(m) = f.m {
                    s += &format!(" at m={m}");
                }
                s += &format!(": residual {:.6e}\n", f.residual);
            }
        }
        s
    })?;
    Ok(if r.pass {
        Status::Success
    } else {
        Status::Negative
    })
}

fn run_render(
    ctx: &Context,
    out: &mut dyn Write,
    source: &Source,
    svg_path: Option<&Path>,
    index: usize,
) -> Result<Status, InputError> {
    let (scene, status) = match ctx.load(source)? {
        Loaded::Circles(family) => {
            let circles = Some((family.center(), family.radii().to_vec()));
            match concentric_gons::reconstruct::reconstruct_polygons(&family, ctx.tol) {
                Ok(rec) => (
                    Scene {
                        circles,
                        first: Some(rec.first.polygon),
                        second: Some(rec.second.polygon),
                        m_point: Some(family.center()),
                    },
                    Status::Success,
                ),
                Err(_) => (
                    Scene {
                        circles,
                        m_point: Some(family.center()),
                        ..Scene::default()
                    },
                    Status::Negative,
                ),
            }
        }
        Loaded::Pair(p1, p2) => {
            let r = report::pair(&p1, &p2, ctx.tol).map_err(|e| InputError(e.to_string()))?;
            if !r.results.is_empty() && index >= r.results.len() {
                return Err(InputError(format!(
                    "--result {index} out of range: {} result(s)",
                    r.results.len()
                )));
            }
            let status = if r.is_empty() {
                Status::Negative
            } else {
                Status::Success
            };
            (pair_scene(&p1, &p2, &r, index), status)
        }
    };
    let text = scene.render();
    match svg_path {
        Some(path) => write_file(path, &text)?,
        None => write_out(out, &text)?,
    }
    Ok(status)
}

fn run_sample(
    ctx: &Context,
    out: &mut dyn Write,
    n: usize,
    seed: u64,
    kind: SampleKind,
    output: Option<&Path>,
) -> Result<Status, InputError> {
    if n < 3 {
        return Err(InputError(format!("--n must be at least 3, got {n}")));
    }
    ctx.check_n(n)?;
    let RandomInstance {
        first,
        second,
        family,
        ..
    } = random_instance(n, seed);
    let mut doc = match kind {
        SampleKind::Circles => InstanceDocument::circles(family.center(), family.radii().to_vec()),
        SampleKind::PolygonPair => InstanceDocument::polygon_pair(&first, &second),
    };
    doc.metadata
        .insert("generator".into(), "random_instance".into());
    doc.metadata.insert("n".into(), n.to_string());
    doc.metadata.insert("seed".into(), seed.to_string());
    let text = json::to_string(&doc);
    match output {
        Some(path) => write_file(path, &text)?,
        None => write_out(out, &text)?,
    }
    Ok(Status::Success)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<Status, InputError> {
    let tol = Tolerance::DEFAULT
        .with_relative_eps(cli.tol)
        .map_err(|e| InputError(format!("--tol: {e}")))?;
    let ctx = Context {
        tol,
        json: cli.json,
        max_n: cli.max_n,
    };
    match &cli.command {
        Command::Check { source } => run_check(&ctx, out, source),
        Command::Reconstruct { source, svg } => run_reconstruct(&ctx, out, source, svg.as_deref()),
        Command::Pair { input, svg } => run_pair(&ctx, out, input, svg.as_deref()),
        Command::Verify { source } => run_verify(&ctx, out, source),
        Command::Render {
            source,
            svg,
            result,
        } => run_render(&ctx, out, source, svg.as_deref(), *result),
        Command::Sample {
            n,
            seed,
            kind,
            output,
        } => run_sample(&ctx, out, *n, *seed, *kind, output.as_deref()),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
fn execute<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too, with exit code 0
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli, out) {
        Ok(Status::Success) => 0,
        Ok(Status::Negative) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = execute(std::env::args_os(), &mut out);
    let _ = out.flush();
    ExitCode::from(code)
}
