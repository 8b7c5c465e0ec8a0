//! Command-line front end. [`run`] parses arguments, writes a line-oriented
//! report and returns the process exit code: `0` on success, `1` when a
//! check fails or the input is rejected, `2` on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cocycles::{parse_cocycle_spec, Cochain3, CocycleReport};
use crate::colorings::{self, BoundaryColoring};
use crate::complexes::{random_move, GeneralizedTriangulation, SurfaceTriangulation};
use crate::cyclotomics::set_root_order_cap;
use crate::error::Error;
use crate::groups::FiniteGroup;
use crate::statesum::{self, Convention, GroupCategory, Options};
use crate::tqft::{self, Normalization};

/// Environment variable overriding the cyclotomic root-order cap.
pub const ROOT_ORDER_CAP_VAR: &str = "DWTV_ROOT_ORDER_CAP";

/// Most trace lines printed by `invariant --trace`.
pub const TRACE_LIMIT: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "dwtv", version, about = "Exact Dijkgraaf-Witten and Turaev-Viro invariants of triangulated 3-manifolds")]
pub struct Cli {
    /// Emit one JSON record per result instead of plain text.
    #[arg(long, global = true)]
    pub json_lines: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a complex in the triangulation file format.
    Build {
        #[command(flatten)]
        complex: ComplexArg,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a complex and print its counts.
    Validate {
        #[command(flatten)]
        complex: ComplexArg,
    },
    /// List the admissible colorings of a complex.
    Colorings {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        group: GroupArg,
        /// Boundary coloring file pinning the boundary edges.
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// List gauge orbits instead (closed complexes only).
        #[arg(long)]
        orbits: bool,
    },
    /// Dijkgraaf-Witten invariant (relative when --boundary is given).
    Invariant {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// Print the exponent of every coloring.
        #[arg(long)]
        trace: bool,
        /// Evaluate the cocycle on (01, 12, 20) instead of (01, 12, 23).
        #[arg(long)]
        compat_section1: bool,
    },
    /// Turaev-Viro invariant of the group category.
    Tv {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Visit only admissible colorings.
        #[arg(long)]
        fast: bool,
    },
    /// Dimension of the TQFT space of a surface.
    TqftDim {
        #[command(flatten)]
        surface: SurfaceArg,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Also print the cylinder projector.
        #[arg(long)]
        matrix: bool,
    },
    /// Matrix of a cobordism with in/out boundary marks.
    Cobordism {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// i, o, m or raw.
        #[arg(long, default_value = "i")]
        normalization: String,
    },
    /// Apply seeded random moves and check that the invariant is unchanged.
    PachnerTest {
        #[command(flatten)]
        complex: ComplexArg,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 6)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Most 1-4 moves per run; each multiplies the coloring count by |G|.
        #[arg(long, default_value_t = 2)]
        max_14: usize,
    },
    /// Exhaustive pentagon check of a cocycle.
    CocycleCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Homomorphisms from the fundamental group, up to conjugation.
    HomCount {
        /// Closed complex (builder name or file).
        #[arg(long, conflicts_with = "surface")]
        complex: Option<String>,
        /// Surface spec.
        #[arg(long)]
        surface: Option<String>,
        #[command(flatten)]
        group: GroupArg,
    },
}

#[derive(Debug, Args)]
pub struct ComplexArg {
    /// Builder (sphere3, torus3, sigma-s1:<g>, cylinder:<surface>) or file path.
    #[arg(long)]
    pub complex: String,
}

#[derive(Debug, Args)]
pub struct SurfaceArg {
    /// torus, torus-bary, sphere2 or sigma:<g>.
    #[arg(long)]
    pub surface: String,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// cyclic:<n>, symmetric:<n>, product:<a>x<b> or table:<path>.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[command(flatten)]
    pub group: GroupArg,
    /// trivial, zn, sn or file:<path>, optionally followed by *coboundary:<path>.
    #[arg(long, default_value = "trivial")]
    pub cocycle: String,
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Engine(e.into())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(e: Error) -> Failure {
    match e {
        Error::InvalidParameter(m) => Failure::Usage(m),
        other => Failure::Engine(other),
    }
}

fn load_complex(spec: &str) -> CliResult<GeneralizedTriangulation> {
    GeneralizedTriangulation::from_spec(spec).map_err(usage)
}

fn load_group(arg: &GroupArg) -> CliResult<Arc<FiniteGroup>> {
    FiniteGroup::parse_spec(&arg.group).map(Arc::new).map_err(usage)
}

fn load_algebra(args: &AlgebraArgs) -> CliResult<(Arc<FiniteGroup>, Cochain3)> {
    let group = load_group(&args.group)?;
    let alpha = parse_cocycle_spec(&args.cocycle, &group).map_err(usage)?;
    Ok((group, alpha))
}

struct Report<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Report<'_> {
    fn text(&mut self, line: impl std::fmt::Display) -> std::io::Result<()> {
        if !self.json {
            writeln!(self.out, "{line}")?;
        }
        Ok(())
    }

    fn record(&mut self, v: Value) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{v}")?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    if let Ok(v) = std::env::var(ROOT_ORDER_CAP_VAR) {
        match v.trim().parse::<u64>() {
            Ok(cap) if cap > 0 => set_root_order_cap(cap),
            _ => {
                let _ = writeln!(err, "error: {ROOT_ORDER_CAP_VAR} must be a positive integer, got `{v}`");
                return 2;
            }
        }
    }
    let mut report = Report {
        out,
        json: cli.json_lines,
    };
    match execute(&cli.command, &mut report) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            2
        }
        Err(Failure::Engine(Error::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cmd: &Command, r: &mut Report<'_>) -> CliResult<i32> {
    match cmd {
        Command::Build { complex, output } => {
            let t = load_complex(&complex.complex)?;
            let text = t.to_text()?;
            match output {
                Some(path) => {
                    std::fs::write(path, &text)?;
                    r.text(format!("wrote {}", path.display()))?;
                    r.record(json!({"command": "build", "path": path.display().to_string()}))?;
                }
                None if r.json => r.record(json!({"command": "build", "text": text}))?,
                None => write!(r.out, "{text}")?,
            }
            Ok(0)
        }
        Command::Validate { complex } => {
            let t = load_complex(&complex.complex)?;
            let report = t.validate();
            if !report.passed() {
                r.text("invalid")?;
                for v in &report.violations {
                    r.text(format!("violation: {v}"))?;
                }
                let vs: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
                r.record(json!({"command": "validate", "valid": false, "violations": vs}))?;
                return Ok(1);
            }
            let (tets, n0, edges, faces, euler) = (
                t.tet_count(),
                t.n0()?,
                t.edge_count()?,
                t.face_count()?,
                t.euler_characteristic()?,
            );
            let labels = t.boundary_labels();
            r.text("valid")?;
            r.text(format!("tets = {tets}"))?;
            r.text(format!("vertices = {n0}"))?;
            r.text(format!("edges = {edges}"))?;
            r.text(format!("faces = {faces}"))?;
            r.text(format!("euler = {euler}"))?;
            r.text(format!(
                "boundary = {}",
                if labels.is_empty() { "closed".to_string() } else { labels.join(" ") }
            ))?;
            r.record(json!({
                "command": "validate", "valid": true, "tets": tets, "vertices": n0,
                "edges": edges, "faces": faces, "euler": euler, "boundary": labels,
            }))?;
            Ok(0)
        }
        Command::Colorings {
            complex,
            group,
            boundary,
            orbits,
        } => {
            let t = load_complex(&complex.complex)?;
            let g = load_group(group)?;
            if *orbits {
                let os = colorings::orbits(&t, &g)?;
                for o in &os {
                    r.text(format!("orbit {} {}", o.size, o.representative))?;
                    r.record(json!({"orbit_size": o.size, "representative": o.representative.values()}))?;
                }
                r.text(format!("# orbits = {}", os.len()))?;
                return Ok(0);
            }
            let tau = boundary
                .as_ref()
                .map(|p| BoundaryColoring::read(p, &t, &g))
                .transpose()?;
            let cs = colorings::enumerate(&t, &g, tau.as_ref())?;
            for c in &cs {
                r.text(c)?;
                r.record(json!({"coloring": c.values()}))?;
            }
            r.text(format!("# count = {}", cs.len()))?;
            Ok(0)
        }
        Command::Invariant {
            complex,
            algebra,
            boundary,
            trace,
            compat_section1,
        } => {
            let t = load_complex(&complex.complex)?;
            let (g, alpha) = load_algebra(algebra)?;
            let opts = Options {
                convention: if *compat_section1 {
                    Convention::Compat
                } else {
                    Convention::Standard
                },
                trace: *trace,
            };
            let sum = match boundary {
                Some(p) => {
                    let tau = BoundaryColoring::read(p, &t, &g)?;
                    statesum::dw_relative_with(&t, &alpha, &tau, opts)?
                }
                None => statesum::dw_invariant_with(&t, &alpha, opts)?,
            };
            for e in sum.trace.iter().take(TRACE_LIMIT) {
                r.text(format!("trace {} exponent = {}", e.coloring, e.exponent))?;
                r.record(json!({"coloring": e.coloring.values(), "exponent": e.exponent}))?;
            }
            if sum.trace.len() > TRACE_LIMIT {
                r.text(format!("# trace truncated to {TRACE_LIMIT} of {} colorings", sum.trace.len()))?;
            }
            let rational = sum.value.as_rational().is_some();
            r.text(format!("invariant = {}", sum.value.render()))?;
            r.text(format!("approx = {}", sum.value.approx_string()))?;
            if !rational {
                r.text("note = not rational")?;
            }
            r.record(json!({
                "command": "invariant", "invariant": sum.value.render(),
                "approx": sum.value.approx_string(), "rational": rational,
                "colorings": sum.colorings, "n0": sum.n0,
            }))?;
            Ok(0)
        }
        Command::Tv { complex, algebra, fast } => {
            let t = load_complex(&complex.complex)?;
            let (_, alpha) = load_algebra(algebra)?;
            let c = GroupCategory::new(alpha)?;
            let v = statesum::tv_invariant(&t, &c, *fast)?;
            let path = if *fast { "fast" } else { "slow" };
            r.text(format!("invariant = {}", v.render()))?;
            r.text(format!("approx = {}", v.approx_string()))?;
            r.text(format!("path = {path}"))?;
            r.record(json!({"command": "tv", "invariant": v.render(), "approx": v.approx_string(), "path": path}))?;
            Ok(0)
        }
        Command::TqftDim {
            surface,
            algebra,
            matrix,
        } => {
            let s = SurfaceTriangulation::parse_spec(&surface.surface).map_err(usage)?;
            let (_, alpha) = load_algebra(algebra)?;
            let cyl = GeneralizedTriangulation::cylinder(&s)?;
            let m = tqft::cobordism_matrix(&cyl, &alpha, Normalization::In)?;
            let dim = m.rank()?;
            r.text(format!("dim V(Σ) = {dim}"))?;
            if *matrix {
                write_matrix(r, &m)?;
            }
            r.record(json!({"command": "tqft-dim", "dim": dim, "basis": m.domain.dim()}))?;
            Ok(0)
        }
        Command::Cobordism {
            complex,
            algebra,
            normalization,
        } => {
            let t = load_complex(&complex.complex)?;
            let (_, alpha) = load_algebra(algebra)?;
            let norm = Normalization::parse(normalization).map_err(usage)?;
            let m = tqft::cobordism_matrix(&t, &alpha, norm)?;
            r.text(format!("domain = {}", m.domain.dim()))?;
            r.text(format!("codomain = {}", m.codomain.dim()))?;
            r.text(format!("normalization = {norm}"))?;
            write_matrix(r, &m)?;
            r.record(json!({
                "command": "cobordism", "domain": m.domain.dim(), "codomain": m.codomain.dim(),
                "normalization": norm.to_string(),
            }))?;
            Ok(0)
        }
        Command::PachnerTest {
            complex,
            algebra,
            moves,
            seed,
            max_14,
        } => {
            let mut t = load_complex(&complex.complex)?;
            let (_, alpha) = load_algebra(algebra)?;
            let start = statesum::dw_invariant(&t, &alpha)?;
            r.text(format!("invariant = {}", start.render()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut used_14 = 0;
            for k in 1..=*moves {
                let (kind, next) = random_move(&t, &mut rng, used_14 < *max_14)?;
                if matches!(kind, crate::complexes::MoveKind::Pachner14 { .. }) {
                    used_14 += 1;
                }
                let v = statesum::dw_invariant(&next, &alpha)?;
                r.text(format!("move {k}: {kind} (tets = {})", next.tet_count()))?;
                r.record(json!({"move": k, "kind": kind.to_string(), "tets": next.tet_count(), "invariant": v.render()}))?;
                if v != start {
                    r.text(format!(
                        "invariant changed after move {k} ({kind}): {} -> {}",
                        start.render(),
                        v.render()
                    ))?;
                    return Ok(1);
                }
                t = next;
            }
            r.text(format!("invariant stable across {moves} moves"))?;
            r.record(json!({"command": "pachner-test", "stable": true, "moves": moves, "invariant": start.render()}))?;
            Ok(0)
        }
        Command::CocycleCheck { algebra } => {
            let (_, alpha) = load_algebra(algebra)?;
            match alpha.check() {
                CocycleReport::Pass { quadruples } => {
                    r.text(format!("pass ({quadruples} quadruples)"))?;
                    r.record(json!({"command": "cocycle-check", "pass": true, "quadruples": quadruples}))?;
                    Ok(0)
                }
                CocycleReport::Fail { witness, exponent } => {
                    let [a, b, c, d] = witness;
                    r.text(format!("fail at ({a}, {b}, {c}, {d}): exponent {exponent}"))?;
                    r.record(json!({"command": "cocycle-check", "pass": false, "witness": witness, "exponent": exponent}))?;
                    Ok(1)
                }
            }
        }
        Command::HomCount { complex, surface, group } => {
            let g = load_group(group)?;
            let n = match (complex, surface) {
                (Some(c), None) => colorings::hom_count_mod_conj(&load_complex(c)?, &g)?,
                (None, Some(s)) => {
                    let s = SurfaceTriangulation::parse_spec(s).map_err(usage)?;
                    colorings::hom_count_of(&s.two_skeleton(), &g)?
                }
                _ => return Err(Failure::Usage("give exactly one of --complex or --surface".into())),
            };
            r.text(format!("hom count = {n}"))?;
            r.record(json!({"command": "hom-count", "count": n}))?;
            Ok(0)
        }
    }
}

fn write_matrix(r: &mut Report<'_>, m: &tqft::CobordismMatrix) -> std::io::Result<()> {
    if r.json {
        let rows: Vec<Vec<String>> = m
            .entries
            .iter()
            .map(|row| row.iter().map(|x| x.render()).collect())
            .collect();
        r.record(json!({"matrix": rows, "half_power": m.half_power}))
    } else {
        write!(r.out, "{}", m.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["dwtv"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn invariant_output() {
        let (code, out, _) = run_str(&["invariant", "--complex", "torus3", "--group", "cyclic:3", "--cocycle", "zn"]);
        assert_eq!(code, 0);
        assert_eq!(out, "invariant = 9/1\napprox = 9.0\n");
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = run_str(&["invariant", "--complex", "klein", "--group", "cyclic:2"]);
        assert_eq!(code, 2);
        assert!(err.contains("sphere3"), "{err}");
        let (code, _, err) = run_str(&["invariant", "--complex", "torus3", "--group", "dihedral:4"]);
        assert_eq!(code, 2);
        assert!(err.contains("cyclic:<n>"), "{err}");
        assert_eq!(run_str(&["frobnicate"]).0, 2);
    }
}
