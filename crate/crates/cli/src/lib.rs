//! The `quiver` command line: argument definitions and one function per
//! subcommand, each producing a [`Report`] and an exit status.

pub mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cornering::algebra::{mckay_abelian, parse_algebra, parse_algebra_document, AlgebraPresentation};
use cornering::corner::{
    parse_presentations, Cornering, CorneringData, CorneringOptions, ImageMembership, ModulePresentation,
};
use cornering::corpus;
use cornering::linalg::{format_scalar, parse_scalar};
use cornering::rep::{parse_representation, read_header, DimensionVector, Representation, StabilityParameter};
use cornering::toric::{
    annihilation_identity_check, enumerate_fixed_points, essential_vertices, parse_expression,
    surjectivity_scan, Expression, IdentityOptions, IdentityOutcome,
};

use report::{InputDigest, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "quiver", version, about = "Cornering, induced modules and torus-fixed points of quivers with relations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit the report as indented text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Seed for sampled modules.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled modules.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    /// Longest parent path examined when cornering.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Add wall-clock time to the report. Reports are then no longer reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

/// Ways to obtain the cornered algebra and presentations when cornering.
#[derive(Args, Debug, Clone, Default)]
pub struct CornerSource {
    /// Vertices to keep, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub keep: Option<Vec<String>>,
    /// `auto` derives presentations; otherwise a presentation file.
    #[arg(long, default_value = "auto")]
    pub presentations: String,
    /// Cornered algebra with a `[dictionary]` section, for non-binomial parents.
    #[arg(long)]
    pub cornered: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a module satisfies the relations of its algebra.
    CheckRep {
        algebra: String,
        rep: String,
        #[command(flatten)]
        corner: CornerSource,
    },
    /// Decide stability of a 0/1 module.
    Stability {
        algebra: String,
        rep: String,
        /// Comma-separated rationals; defaults to 1 away from vertex 0.
        #[arg(long)]
        theta: Option<String>,
    },
    /// Corner an algebra at a vertex set and present the other vertices.
    Corner {
        algebra: String,
        #[command(flatten)]
        corner: CornerSource,
        /// Write the cornered algebra here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the presentations here.
        #[arg(long)]
        presentations_out: Option<PathBuf>,
    },
    /// Induce a cornered module to the parent algebra.
    Induce {
        #[arg(long)]
        rep: String,
        /// Parent algebra; defaults to the one named in the module file.
        #[arg(long)]
        algebra: Option<String>,
        #[command(flatten)]
        corner: CornerSource,
        /// Write the induced module here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a cornered module is the restriction of a parent module
    /// of the given dimension vector.
    ImageTest {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        dimvec: String,
        #[command(flatten)]
        corner: CornerSource,
    },
    /// List the torus-fixed 0-generated modules of dimension vector (1,...,1).
    FixedPoints { algebra: String },
    /// Vertices other than 0 in the socle of some torus-fixed point.
    Essentials { algebra: String },
    /// Test 0/1 and sampled cornered modules for membership in the image.
    Surjectivity {
        algebra: String,
        #[command(flatten)]
        corner: CornerSource,
        /// Treat any witness as a failure (exit status 2).
        #[arg(long)]
        expect_surjective: bool,
    },
    /// Prove that `multiplier * expression` vanishes in the cornered algebra.
    IdentityCheck {
        algebra: String,
        #[command(flatten)]
        corner: CornerSource,
        /// Cornered path, in `*` syntax.
        #[arg(long)]
        multiplier: String,
        /// Expression file.
        #[arg(long, conflicts_with = "determinant")]
        expr: Option<String>,
        /// Use the determinant of the presentation at this vertex.
        #[arg(long)]
        determinant: Option<String>,
        /// Cap on rewriting states.
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
    },
    /// Write the McKay quiver of a cyclic group acting with the given weights.
    Mckay {
        #[arg(long)]
        order: usize,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An input error: bad file, bad format or a failed precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

type Res<T> = std::result::Result<T, InputError>;

fn within(name: &str) -> impl Fn(cornering::Error) -> InputError + '_ {
    move |e| InputError(format!("{name}: {e}"))
}

/// Inputs read so far, in order, with their digests.
#[derive(Default)]
struct Inputs {
    digests: Vec<InputDigest>,
}

impl Inputs {
    /// Reads `corpus:<id>` or a file, resolving relative paths against `base`.
    fn read(&mut self, input: &str, base: Option<&FsPath>) -> Res<(String, Option<PathBuf>)> {
        let (text, dir) = if let Some(id) = input.strip_prefix("corpus:") {
            (corpus::text(id).map_err(within(input))?.to_string(), None)
        } else {
            let path = match base {
                Some(b) if FsPath::new(input).is_relative() => b.join(input),
                _ => PathBuf::from(input),
            };
            let text = std::fs::read_to_string(&path).map_err(|e| InputError(format!("{input}: {e}")))?;
            (text, path.parent().map(FsPath::to_path_buf))
        };
        if !self.digests.iter().any(|d| d.name == input) {
            self.digests.push(InputDigest::new(input, &text));
        }
        Ok((text, dir))
    }

    fn algebra(&mut self, input: &str, base: Option<&FsPath>) -> Res<LoadedAlgebra> {
        let (text, _) = self.read(input, base)?;
        let algebra = Arc::new(parse_algebra(&text).map_err(within(input))?);
        Ok(LoadedAlgebra {
            name: input.to_string(),
            corpus_id: input.strip_prefix("corpus:").map(str::to_string),
            algebra,
        })
    }

    fn cornering(&mut self, parent: &LoadedAlgebra, keep: &[String], source: &CornerSource, bound: Option<usize>) -> Res<Cornering> {
        let refs: Vec<&str> = keep.iter().map(String::as_str).collect();
        let keep = parent
            .algebra
            .quiver()
            .vertex_set(&refs)
            .map_err(|e| InputError(format!("--keep: {e}")))?;
        let options = CorneringOptions {
            bound,
            ..Default::default()
        };
        let explicit = (source.presentations != "auto").then_some(source.presentations.as_str());
        let cornering = match &source.cornered {
            Some(input) => {
                let (text, _) = self.read(input, None)?;
                let doc = parse_algebra_document(&text).map_err(within(input))?;
                let data = CorneringData::from_document(parent.algebra.clone(), &doc).map_err(within(input))?;
                if data.keep() != keep.as_slice() {
                    return Err(InputError(format!("{input}: kept vertices differ from --keep")));
                }
                let Some(pres) = explicit else {
                    return Err(InputError("--cornered needs a --presentations file".into()));
                };
                let presentations = self.presentations(pres, &data)?;
                return Ok(Cornering::Supplied { data, presentations });
            }
            None => corpus::cornering(parent.algebra.clone(), parent.corpus_id.as_deref(), &keep, options)
                .map_err(within(&parent.name))?,
        };
        match explicit {
            None => Ok(cornering),
            Some(pres) => {
                let data = cornering.data().clone();
                let presentations = self.presentations(pres, &data)?;
                Ok(Cornering::Supplied { data, presentations })
            }
        }
    }

    fn presentations(&mut self, input: &str, data: &CorneringData) -> Res<BTreeMap<usize, ModulePresentation>> {
        let (text, _) = self.read(input, None)?;
        parse_presentations(data, &text).map_err(within(input))
    }

    /// A module file, its parent algebra and the cornering it lives on.
    fn module(
        &mut self,
        input: &str,
        algebra: Option<&str>,
        source: &CornerSource,
        bound: Option<usize>,
    ) -> Res<LoadedModule> {
        let explicit = match algebra {
            Some(a) => Some(self.algebra(a, None)?),
            None => None,
        };
        let (text, dir) = self.read(input, None)?;
        let header = read_header(&text).map_err(within(input))?;
        let parent = match (explicit, &header.algebra) {
            (Some(a), _) => a,
            (None, Some(a)) => self.algebra(a, dir.as_deref()).map_err(|e| {
                let line = header_line(&text, "algebra");
                InputError(format!("{input}: line {line}: {e}"))
            })?,
            (None, None) => return Err(InputError(format!("{input}: no `algebra:` line and no --algebra"))),
        };
        let cornering = match (&source.keep, &header.keep) {
            (Some(k), _) => Some(self.cornering(&parent, k, source, bound)?),
            (None, Some(k)) => Some(self.cornering(&parent, k, source, bound).map_err(|e| {
                let line = header_line(&text, "keep");
                InputError(format!("{input}: line {line}: {e}"))
            })?),
            (None, None) => None,
        };
        let on = match &cornering {
            Some(c) => c.data().cornered().clone(),
            None => parent.algebra.clone(),
        };
        let module = parse_representation(&text, on).map_err(within(input))?;
        Ok(LoadedModule {
            parent,
            cornering,
            module,
        })
    }
}

/// 1-based line of the first `key:` header line.
fn header_line(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| l.trim_start().strip_prefix(key).is_some_and(|r| r.trim_start().starts_with(':')))
        .map_or(1, |i| i + 1)
}

struct LoadedAlgebra {
    name: String,
    corpus_id: Option<String>,
    algebra: Arc<AlgebraPresentation>,
}

struct LoadedModule {
    parent: LoadedAlgebra,
    cornering: Option<Cornering>,
    module: Representation,
}

impl LoadedModule {
    fn require_cornering(&self) -> Res<&Cornering> {
        self.cornering
            .as_ref()
            .ok_or_else(|| InputError("the module names no kept vertices; pass --keep".into()))
    }
}

/// The finished run: a report, or an input error, and the exit status.
pub struct Run {
    pub report: Option<Report>,
    pub error: Option<InputError>,
}

impl Run {
    pub fn exit_code(&self) -> i32 {
        match (&self.report, &self.error) {
            (_, Some(_)) => 1,
            (Some(r), None) => r.outcome().code(),
            (None, None) => 1,
        }
    }
}

impl Report {
    fn outcome(&self) -> Outcome {
        match self.result.get("negative") {
            Some(Value::Bool(true)) => Outcome::Negative,
            _ => Outcome::Success,
        }
    }
}

/// Parses arguments and runs the command. Clap errors are reported as input
/// errors.
pub fn run_args<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Run {
            report: None,
            error: Some(InputError(e.to_string().trim_end().to_string())),
        },
    }
}

pub fn run(cli: &Cli) -> Run {
    let start = Instant::now();
    let mut inputs = Inputs::default();
    match execute(&cli.command, &cli.global, &mut inputs) {
        Ok((command, result, exactness)) => Run {
            report: Some(Report {
                command: command.to_string(),
                inputs: inputs.digests,
                result,
                exactness,
                timing_ms: cli.global.timing.then(|| start.elapsed().as_millis()),
            }),
            error: None,
        },
        Err(e) => Run {
            report: None,
            error: Some(e),
        },
    }
}

/// Report text in the selected format.
pub fn render(report: &Report, global: &Global) -> String {
    if global.text {
        report.to_text()
    } else {
        report.to_json()
    }
}

const EXACT: &str = "exact";
const SAMPLED: &str = "sampled-evidence";

type Executed = (&'static str, Value, Value);

fn execute(command: &Command, g: &Global, inputs: &mut Inputs) -> Res<Executed> {
    match command {
        Command::CheckRep { algebra, rep, corner } => check_rep(inputs, algebra, rep, corner, g),
        Command::Stability { algebra, rep, theta } => stability(inputs, algebra, rep, theta.as_deref()),
        Command::Corner {
            algebra,
            corner,
            out,
            presentations_out,
        } => corner_cmd(inputs, algebra, corner, out.as_deref(), presentations_out.as_deref(), g),
        Command::Induce {
            rep,
            algebra,
            corner,
            out,
        } => induce(inputs, rep, algebra.as_deref(), corner, out.as_deref(), g),
        Command::ImageTest {
            rep,
            algebra,
            dimvec,
            corner,
        } => image_test(inputs, rep, algebra.as_deref(), dimvec, corner, g),
        Command::FixedPoints { algebra } => fixed_points(inputs, algebra),
        Command::Essentials { algebra } => essentials(inputs, algebra),
        Command::Surjectivity {
            algebra,
            corner,
            expect_surjective,
        } => surjectivity(inputs, algebra, corner, *expect_surjective, g),
        Command::IdentityCheck {
            algebra,
            corner,
            multiplier,
            expr,
            determinant,
            max_states,
        } => identity_check(
            inputs,
            algebra,
            corner,
            multiplier,
            expr.as_deref(),
            determinant.as_deref(),
            *max_states,
            g,
        ),
        Command::Mckay { order, weights, out } => mckay(*order, weights, out.as_deref()),
    }
}

fn names(alg: &AlgebraPresentation, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| alg.quiver().vertex_name(v).to_string()).collect()
}

fn write_out(path: &FsPath, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn check_rep(inputs: &mut Inputs, algebra: &str, rep: &str, corner: &CornerSource, g: &Global) -> Res<Executed> {
    let m = inputs.module(rep, Some(algebra), corner, g.bound)?;
    let on = m.module.algebra().clone();
    let q = on.quiver();
    let violations: Vec<Value> = m
        .module
        .check_relations()
        .iter()
        .map(|v| json!({ "index": v.index, "relation": v.relation, "value": report::matrix(&v.value) }))
        .collect();
    let generated = m.module.is_zero_generated().map_err(within(rep))?;
    let result = json!({
        "algebra": m.parent.name,
        "keep": m.cornering.as_ref().map(|c| c.data().keep_names()),
        "vertices": q.num_vertices(),
        "dims": report::dims(m.module.dims()),
        "relations_checked": on.relations().len(),
        "violations": violations,
        "zero_generated": generated,
        "status": if violations.is_empty() { "pass" } else { "fail" },
        "negative": !violations.is_empty(),
    });
    Ok(("check-rep", result, json!({ "decision": EXACT })))
}

fn stability(inputs: &mut Inputs, algebra: &str, rep: &str, theta: Option<&str>) -> Res<Executed> {
    let m = inputs.module(rep, Some(algebra), &CornerSource::default(), None)?;
    let module = &m.module;
    let n = module.dims().len();
    let zero = module.algebra().quiver().zero();
    let theta = match theta {
        Some(t) => {
            let values = t
                .split(',')
                .map(|s| parse_scalar(s.trim()).ok_or_else(|| InputError(format!("--theta: `{}` is not a rational", s.trim()))))
                .collect::<Res<Vec<_>>>()?;
            if values.len() != n {
                return Err(InputError(format!("--theta: expected {n} values, found {}", values.len())));
            }
            StabilityParameter(values)
        }
        None => StabilityParameter::zero_generated(n, zero, module.dims()).map_err(within(rep))?,
    };
    let stable = module.is_stable_invariant(&theta).map_err(within(rep))?;
    let generated = module.is_zero_generated().map_err(within(rep))?;
    let result = json!({
        "algebra": m.parent.name,
        "theta": theta.0.iter().map(format_scalar).collect::<Vec<_>>(),
        "in_zero_generated_chamber": theta.in_zero_generated_chamber(zero),
        "stable": stable,
        "zero_generated": generated,
        "negative": !stable,
    });
    Ok(("stability", result, json!({ "decision": EXACT })))
}

fn required_keep(corner: &CornerSource) -> Res<&[String]> {
    corner
        .keep
        .as_deref()
        .ok_or_else(|| InputError("--keep is required".into()))
}

fn corner_cmd(
    inputs: &mut Inputs,
    algebra: &str,
    corner: &CornerSource,
    out: Option<&FsPath>,
    presentations_out: Option<&FsPath>,
    g: &Global,
) -> Res<Executed> {
    let parent = inputs.algebra(algebra, None)?;
    let c = inputs.cornering(&parent, required_keep(corner)?, corner, g.bound)?;
    let cd = c.data();
    let presentations = c.presentations();
    if let Some(path) = out {
        write_out(path, &cd.to_text())?;
    }
    if let Some(path) = presentations_out {
        let mut text = format!("keep: {}\n", cd.keep_names().join(", "));
        for p in presentations.values() {
            text.push('\n');
            text.push_str(&p.to_text(cd));
        }
        write_out(path, &text)?;
    }
    let result = json!({
        "algebra": parent.name,
        "derived": c.derived().is_some(),
        "cornered": report::cornered_algebra(cd),
        "presentations": presentations.values().map(|p| report::presentation(p, cd)).collect::<Vec<_>>(),
    });
    let exactness = match c.derived() {
        Some(b) => json!({ "decision": EXACT, "path_bound": b.bound() }),
        None => json!({ "decision": "supplied" }),
    };
    Ok(("corner", result, exactness))
}

fn induce(
    inputs: &mut Inputs,
    rep: &str,
    algebra: Option<&str>,
    corner: &CornerSource,
    out: Option<&FsPath>,
    g: &Global,
) -> Res<Executed> {
    let m = inputs.module(rep, algebra, corner, g.bound)?;
    let c = m.require_cornering()?;
    let dims = c.induced_dims(&m.module).map_err(within(rep))?;
    let induced = match c.derived() {
        Some(b) if corner.presentations == "auto" => {
            Some(b.build_induced_module(&m.module).map_err(within(rep))?.module)
        }
        _ => None,
    };
    if let Some(path) = out {
        let Some(module) = &induced else {
            return Err(InputError("--out needs derived presentations of a binomial algebra".into()));
        };
        write_out(path, &module.to_text(&m.parent.name, None))?;
    }
    let result = json!({
        "algebra": m.parent.name,
        "keep": c.data().keep_names(),
        "dims": report::dims(m.module.dims()),
        "induced_dims": report::dims(&dims),
        "induced_module": induced.as_ref().map(report::module),
    });
    Ok(("induce", result, json!({ "decision": EXACT })))
}

fn image_test(
    inputs: &mut Inputs,
    rep: &str,
    algebra: Option<&str>,
    dimvec: &str,
    corner: &CornerSource,
    g: &Global,
) -> Res<Executed> {
    let m = inputs.module(rep, algebra, corner, g.bound)?;
    let c = m.require_cornering()?;
    let v = DimensionVector::parse(dimvec).map_err(|e| InputError(format!("--dimvec: {e}")))?;
    let membership = c.image_membership(&m.module, &v).map_err(within(rep))?;
    let pq = m.parent.algebra.quiver();
    let (status, detail) = match &membership {
        ImageMembership::InImage { witness, .. } => ("in-image", json!({ "witness": witness.as_ref().map(report::module) })),
        ImageMembership::NotInImage { certificate, .. } => (
            "not-in-image",
            json!({ "certificate": report::membership_certificate(certificate, pq) }),
        ),
        ImageMembership::Unknown { reason, .. } => ("unknown", json!({ "reason": reason })),
    };
    let result = json!({
        "algebra": m.parent.name,
        "keep": c.data().keep_names(),
        "target": report::dims(&v),
        "induced_dims": report::dims(membership.induced_dims()),
        "status": status,
        "detail": detail,
        "negative": membership.is_not_in_image(),
    });
    let decision = if matches!(membership, ImageMembership::Unknown { .. }) { "undecided" } else { EXACT };
    Ok(("image-test", result, json!({ "decision": decision })))
}

fn fixed_point(m: &Representation) -> Value {
    let alg = m.algebra();
    let q = alg.quiver();
    let arrows: Vec<&str> = (0..q.num_arrows())
        .filter(|&a| !m.matrix(a).is_zero())
        .map(|a| q.arrow(a).name.as_str())
        .collect();
    json!({ "nonzero_arrows": arrows, "socle": names(alg, m.socle_simples()) })
}

fn fixed_points(inputs: &mut Inputs, algebra: &str) -> Res<Executed> {
    let a = inputs.algebra(algebra, None)?;
    let points = enumerate_fixed_points(&a.algebra).map_err(within(algebra))?;
    let result = json!({
        "algebra": a.name,
        "count": points.len(),
        "fixed_points": points.iter().map(fixed_point).collect::<Vec<_>>(),
    });
    Ok(("fixed-points", result, json!({ "decision": EXACT })))
}

fn essentials(inputs: &mut Inputs, algebra: &str) -> Res<Executed> {
    let a = inputs.algebra(algebra, None)?;
    let e = essential_vertices(&a.algebra).map_err(within(algebra))?;
    let result = json!({ "algebra": a.name, "essentials": names(&a.algebra, e) });
    Ok(("essentials", result, json!({ "decision": EXACT })))
}

fn surjectivity(inputs: &mut Inputs, algebra: &str, corner: &CornerSource, expect: bool, g: &Global) -> Res<Executed> {
    let parent = inputs.algebra(algebra, None)?;
    let c = inputs.cornering(&parent, required_keep(corner)?, corner, g.bound)?;
    let scan = surjectivity_scan(&c, g.samples, g.seed).map_err(within(algebra))?;
    let pq = parent.algebra.quiver();
    let witnesses: Vec<Value> = scan
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "source": w.source.to_string(),
                "module": report::module(&w.module),
                "induced_dims": report::dims(&w.induced_dims),
                "certificate": report::membership_certificate(&w.certificate, pq),
            })
        })
        .collect();
    let ranges: Vec<Value> = scan
        .induced_range
        .iter()
        .map(|&(v, lo, hi)| json!({ "vertex": pq.vertex_name(v), "min": lo, "max": hi }))
        .collect();
    let result = json!({
        "algebra": parent.name,
        "C": c.data().keep_names(),
        "target": report::dims(&scan.target),
        "witness_count": witnesses.len(),
        "witnesses": witnesses,
        "statistics": {
            "coordinate_points": scan.coordinate_points,
            "fixed_points": scan.fixed_points,
            "samples": scan.samples,
            "seed": g.seed,
            "undecided": scan.unknown,
            "induced_range": ranges,
        },
        "surjective_on_tested": scan.surjective_on_tested(),
        "negative": expect && !scan.surjective_on_tested(),
    });
    let exactness = json!({
        "coordinate_points": if scan.fixed_locus_exact { EXACT } else { "undecided" },
        "samples": SAMPLED,
    });
    Ok(("surjectivity", result, exactness))
}

#[allow(clippy::too_many_arguments)]
fn identity_check(
    inputs: &mut Inputs,
    algebra: &str,
    corner: &CornerSource,
    multiplier: &str,
    expr: Option<&str>,
    determinant: Option<&str>,
    max_states: usize,
    g: &Global,
) -> Res<Executed> {
    let parent = inputs.algebra(algebra, None)?;
    let expr_text = match expr {
        Some(input) => Some(inputs.read(input, None)?.0),
        None => None,
    };
    let keep = match (&corner.keep, &expr_text) {
        (Some(k), _) => k.clone(),
        (None, Some(t)) => t
            .lines()
            .find_map(|l| l.trim().strip_prefix("keep:"))
            .map(|l| l.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            .ok_or_else(|| InputError("--keep is required".into()))?,
        (None, None) => return Err(InputError("--keep is required".into())),
    };
    let c = inputs.cornering(&parent, &keep, corner, g.bound)?;
    let Some(b) = c.derived() else {
        return Err(InputError("identity checks need a binomial parent algebra with derived presentations".into()));
    };
    let cornered = b.data().cornered();
    let expression = match (&expr_text, determinant) {
        (Some(t), _) => parse_expression(cornered, t).map_err(within(expr.unwrap_or_default()))?,
        (None, Some(k)) => {
            let v = parent
                .algebra
                .quiver()
                .vertex_index(k)
                .ok_or_else(|| InputError(format!("--determinant: unknown vertex `{k}`")))?;
            let p = b.presentation(v).map_err(|e| InputError(format!("--determinant: {e}")))?;
            Expression::determinant(&p).map_err(|e| InputError(format!("--determinant: {e}")))?
        }
        (None, None) => return Err(InputError("pass --expr or --determinant".into())),
    };
    let m = cornered.path(multiplier).map_err(|e| InputError(format!("--multiplier: {e}")))?;
    let options = IdentityOptions {
        max_states,
        samples: g.samples,
        seed: g.seed,
    };
    let r = annihilation_identity_check(b, &expression, &m, options).map_err(within(algebra))?;
    let (status, unbalanced) = match &r.outcome {
        IdentityOutcome::Proven => ("proven", vec![]),
        IdentityOutcome::NotProven { unbalanced } => (
            "not-proven",
            unbalanced.iter().map(|(w, c)| json!({ "monomial": w, "net": c })).collect(),
        ),
        IdentityOutcome::Inconclusive { .. } => ("inconclusive", vec![]),
    };
    let result = json!({
        "algebra": parent.name,
        "keep": c.data().keep_names(),
        "multiplier": m.display(cornered.quiver()),
        "expression": expression.display(cornered),
        "status": status,
        "unbalanced": unbalanced,
        "statistics": {
            "terms": r.terms,
            "states": r.states,
            "numeric_checks": r.numeric_checks,
            "numeric_failures": r.numeric_failures,
            "seed": g.seed,
        },
        "negative": r.outcome != IdentityOutcome::Proven,
    });
    let exactness = json!({
        "rewriting": if status == "inconclusive" { "undecided" } else { EXACT },
        "numeric": SAMPLED,
    });
    Ok(("identity-check", result, exactness))
}

fn mckay(order: usize, weights: &[i64], out: Option<&FsPath>) -> Res<Executed> {
    let a = mckay_abelian(order, weights).map_err(|e| InputError(format!("mckay: {e}")))?;
    let text = a.to_text();
    if let Some(path) = out {
        write_out(path, &text)?;
    }
    let result = json!({
        "order": order,
        "weights": weights,
        "summary": report::algebra_summary(&a),
        "text": text,
    });
    Ok(("mckay", result, json!({ "decision": EXACT })))
}
