//! The `toric-ga` command line.
//!
//! Every command prints a JSON [`Report`]; failures still print the report,
//! with an `error` block, and exit with one of the `EXIT_*` codes.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::ah::{
    coherent_check, degree_zero_normalize, horizontal_lnd, toric_realization, AhError,
    ColoredDivisor, WeightDim,
};
use crate::automorphisms::{classify_roots, fan_automorphisms, AutomorphismError};
use crate::fan::{diagnose, Fan, FanError};
use crate::io::{self, DivisorInput, IoError, Report};
use crate::lnd::{HomogeneousLnd, LndError, SemigroupElement, SymbolicExpansion};
use crate::orbits::{g_invariant_divisors, g_orbit_partition, he_connected_pairs, OrbitError};
use crate::roots::{roots_of_fan, verify_root, RootError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_UNBOUNDED: i32 = 4;
pub const EXIT_NOT_A_ROOT: i32 = 5;
pub const EXIT_UNSUPPORTED_FAN: i32 = 6;
pub const EXIT_AH: i32 = 7;
pub const EXIT_WEIGHT_ESCAPE: i32 = 8;

#[derive(Parser, Debug)]
#[command(
    name = "toric-ga",
    version,
    about = "Demazure roots, G-orbits and complexity-one torus actions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a fan and report its properties.
    FanValidate { path: String },
    /// List the Demazure roots of a fan.
    Roots {
        path: String,
        /// Cut off unbounded root regions at this coordinate bound.
        #[arg(long)]
        bound: Option<BigInt>,
    },
    /// G-orbit structure for a root.
    Orbits {
        path: String,
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// Also write the orbit graph as DOT.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Equivalence classes of roots under automorphisms of the fan.
    Classify {
        path: String,
        #[arg(long)]
        bound: Option<BigInt>,
    },
    /// Polyhedral divisors on the affine or projective line.
    #[command(subcommand)]
    Ah(AhCommand),
    /// Apply the derivation of a root to an element of an affine toric algebra.
    Lnd {
        path: String,
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        #[command(flatten)]
        element: ElementArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum AhCommand {
    /// Evaluate h_z(m) and the dimension of the weight space.
    Eval {
        path: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Check properness.
    Proper { path: String },
    /// Normal form of a divisor with a degree-zero horizontal derivation.
    Normalize { path: String },
    /// Toric cone and root realizing a normalized divisor.
    Toric { path: String },
    /// Check coherence of a colored divisor with a degree.
    Coherent {
        path: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Apply the horizontal derivation of a coherent pair.
    Lnd {
        path: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[command(flatten)]
        element: ElementArgs,
    },
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    /// JSON term list, `{"factors": [...]}`, or `@path`.
    #[arg(long)]
    pub element: String,
    /// Evaluate exp(s∂) at this value (integer or `a/b`).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic")]
    pub time: Option<BigRational>,
    /// Print exp(s∂) as a polynomial in s (the default).
    #[arg(long)]
    pub symbolic: bool,
}

/// A command failure: exit code, short kind, message and structured detail.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub detail: Value,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl ToString) -> Self {
        Self {
            code,
            kind,
            message: message.to_string(),
            detail: Value::Null,
        }
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Ah(ah) => ah.into(),
            other => Failure::new(EXIT_PARSE, "parse", other),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Self {
        let detail = json!({"violations": [io::fan_error_json(&e)]});
        Failure::new(EXIT_VALIDATION, "validation", e).with_detail(detail)
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        match e {
            RootError::UnboundedRoots(_) => Failure::new(EXIT_UNBOUNDED, "unbounded", e),
            RootError::NotARoot(_) | RootError::RankMismatch { .. } => {
                Failure::new(EXIT_NOT_A_ROOT, "not_a_root", e)
            }
            _ => Failure::new(EXIT_VALIDATION, "validation", e),
        }
    }
}

impl From<OrbitError> for Failure {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::Root(r) => r.into(),
            OrbitError::NotARoot(_) => Failure::new(EXIT_NOT_A_ROOT, "not_a_root", e),
            _ => Failure::new(EXIT_VALIDATION, "validation", e),
        }
    }
}

impl From<AutomorphismError> for Failure {
    fn from(e: AutomorphismError) -> Self {
        Failure::new(EXIT_UNSUPPORTED_FAN, "unsupported_fan", e)
    }
}

impl From<AhError> for Failure {
    fn from(e: AhError) -> Self {
        let detail = match &e {
            AhError::NotCoherent(report) => io::coherence_report_json(report),
            _ => Value::Null,
        };
        Failure::new(EXIT_AH, "ah", e).with_detail(detail)
    }
}

impl From<LndError> for Failure {
    fn from(e: LndError) -> Self {
        match e {
            LndError::WeightEscape { .. } | LndError::NotNilpotent(_) => {
                Failure::new(EXIT_WEIGHT_ESCAPE, "weight_escape", e)
            }
            LndError::NotARoot(_) => Failure::new(EXIT_NOT_A_ROOT, "not_a_root", e),
            _ => Failure::new(EXIT_VALIDATION, "validation", e),
        }
    }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(
        std::iter::once(OsString::from("toric-ga")).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let echo: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut ctx = Context {
        stdin,
        input: Vec::new(),
    };
    let outcome = ctx.dispatch(&cli.command);
    let (code, report) = match outcome {
        Ok(result) => (EXIT_OK, Report::new(echo, &ctx.input, result)),
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            let mut r = Report::new(echo, &ctx.input, f.detail);
            r.error = Some(json!({"code": f.code, "kind": f.kind, "message": f.message}));
            (f.code, r)
        }
    };
    let _ = out.write_all(report.render().as_bytes());
    code
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    input: Vec<u8>,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let mut buf = Vec::new();
        if path == "-" {
            self.stdin
                .read_to_end(&mut buf)
                .map_err(|e| Failure::new(EXIT_PARSE, "io", e))?;
        } else {
            buf = fs::read(path)
                .map_err(|e| Failure::new(EXIT_PARSE, "io", format!("{path}: {e}")))?;
        }
        self.input.extend_from_slice(&buf);
        String::from_utf8(buf).map_err(|e| Failure::new(EXIT_PARSE, "parse", e))
    }

    fn fan(&mut self, path: &str) -> Result<Fan, Failure> {
        let text = self.read(path)?;
        let input = io::parse_fan(&text)?;
        let problems = diagnose(input.rank, &input.rays, &input.max_cones);
        if let Some(first) = problems.first() {
            let violations: Vec<Value> = problems.iter().map(io::fan_error_json).collect();
            return Err(
                Failure::new(EXIT_VALIDATION, "validation", first).with_detail(json!({
                    "valid": false,
                    "violations": violations,
                })),
            );
        }
        Ok(input.build()?)
    }

    fn divisor(&mut self, path: &str) -> Result<DivisorInput, Failure> {
        let text = self.read(path)?;
        Ok(io::parse_divisor(&text)?)
    }

    fn colored(&mut self, path: &str) -> Result<ColoredDivisor, Failure> {
        self.divisor(path)?.colored.ok_or_else(|| {
            Failure::new(
                EXIT_AH,
                "ah",
                "the divisor has no marks (z0, zinf, vertices)",
            )
        })
    }

    fn element(&mut self, arg: &str) -> Result<Vec<SemigroupElement>, Failure> {
        let text = match arg.strip_prefix('@') {
            Some(path) => fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_PARSE, "io", format!("{path}: {e}")))?,
            None => arg.to_string(),
        };
        Ok(io::parse_element(&text)?)
    }

    fn dispatch(&mut self, command: &Command) -> Result<Value, Failure> {
        match command {
            Command::FanValidate { path } => {
                let fan = self.fan(path)?;
                Ok(json!({
                    "valid": true,
                    "fan": io::fan_json(&fan),
                    "properties": {
                        "complete": fan.is_complete(),
                        "smooth": fan.is_smooth(),
                        "simplicial": fan.is_simplicial(),
                        "cone_count": fan.cones().len(),
                        "census": fan.census(),
                    },
                }))
            }
            Command::Roots { path, bound } => {
                let fan = self.fan(path)?;
                let found = roots_of_fan(&fan, bound.as_ref())?;
                Ok(json!({
                    "bound": bound.as_ref().map(io::int_json),
                    "count": found.roots.len(),
                    "complete_enumeration": found.complete,
                    "unbounded_rays": found.unbounded_rays,
                    "roots": found.roots.iter().map(io::root_json).collect::<Vec<_>>(),
                }))
            }
            Command::Orbits { path, root, dot } => {
                let fan = self.fan(path)?;
                let e = io::parse_dual_vector(root)?;
                let root = verify_root(&fan, &e)?;
                let partition = g_orbit_partition(&fan, &e)?;
                let pairs = he_connected_pairs(&fan, &e)?;
                if let Some(dot) = dot {
                    fs::write(dot, io::orbit_dot(&fan, &pairs))
                        .map_err(|err| Failure::new(EXIT_PARSE, "io", format!("{dot}: {err}")))?;
                }
                let divisors = g_invariant_divisors(&fan, &e)?;
                let mut result = io::partition_json(&fan, &partition, &pairs);
                result["invariant_divisors"] = json!(divisors);
                result["distinguished_ray"] = io::vector_json(fan.ray(root.distinguished_ray));
                Ok(result)
            }
            Command::Classify { path, bound } => {
                let fan = self.fan(path)?;
                let found = roots_of_fan(&fan, bound.as_ref())?;
                let group = fan_automorphisms(&fan)?;
                let classes = classify_roots(&fan, &found.roots)?;
                let mut out = Vec::new();
                for class in &classes {
                    let orbits = g_orbit_partition(&fan, &class[0].e)?;
                    out.push(json!({
                        "representative": io::root_json(&class[0]),
                        "roots": class.iter().map(io::root_json).collect::<Vec<_>>(),
                        "orbit_count": orbits.len(),
                    }));
                }
                Ok(json!({
                    "automorphism_group_order": group.len(),
                    "root_count": found.roots.len(),
                    "complete_enumeration": found.complete,
                    "class_count": classes.len(),
                    "classes": out,
                }))
            }
            Command::Ah(sub) => self.ah(sub),
            Command::Lnd {
                path,
                root,
                element,
            } => {
                let fan = self.fan(path)?;
                let mut maximal = fan.maximal_cones();
                let (Some(cone), None) = (maximal.next(), maximal.next()) else {
                    return Err(Failure::new(
                        EXIT_UNSUPPORTED_FAN,
                        "unsupported_fan",
                        "lnd needs a fan with one maximal cone",
                    ));
                };
                let sigma = fan.cone_geometry(
                    fan.find(&cone.ray_indices)
                        .expect("maximal cone is in the fan"),
                );
                let e = io::parse_dual_vector(root)?;
                verify_root(&fan, &e)?;
                let lnd = HomogeneousLnd::toric(sigma, &e)?;
                let factors = self.element(&element.element)?;
                apply_lnd(&lnd, &factors, element.time.as_ref())
            }
        }
    }

    fn ah(&mut self, command: &AhCommand) -> Result<Value, Failure> {
        match command {
            AhCommand::Eval { path, weight } => {
                let d = self.divisor(path)?.divisor;
                let m = io::parse_dual_vector(weight)?;
                let values = d.evaluate(&m)?;
                let weight_dim = match d.weight_dim(&m) {
                    Ok(WeightDim::Finite(n)) => io::int_json(&n),
                    Ok(WeightDim::FreeRankOne { shifts }) => json!({"free_rank_one": shifts
                        .iter()
                        .map(|(z, k)| json!({"z": io::point_json(z), "floor": io::int_json(k)}))
                        .collect::<Vec<_>>()}),
                    Err(AhError::NotProper) => Value::Null,
                    Err(e) => return Err(e.into()),
                };
                Ok(json!({
                    "weight": io::vector_json(&m),
                    "values": values
                        .iter()
                        .map(|(z, h)| json!({"z": io::point_json(z), "h": io::rational_json(h)}))
                        .collect::<Vec<_>>(),
                    "weight_dim": weight_dim,
                }))
            }
            AhCommand::Proper { path } => {
                let d = self.divisor(path)?.divisor;
                Ok(json!({
                    "proper": d.is_proper(),
                    "curve": d.curve().to_string(),
                    "degree_vertices": d.degree().vertices().iter().map(io::rational_vector_json).collect::<Vec<_>>(),
                }))
            }
            AhCommand::Normalize { path } => {
                let colored = self.colored(path)?;
                let n = degree_zero_normalize(&colored)?;
                Ok(json!({
                    "divisor": io::divisor_json(&n.divisor, Some(&n.colored)),
                    "mobius": io::mobius_json(&n.mobius),
                    "trivial": n.divisor.is_trivial(),
                }))
            }
            AhCommand::Toric { path } => {
                let input = self.divisor(path)?;
                let divisor = match (&input.colored, input.divisor.is_normalized()) {
                    (_, true) => input.divisor,
                    (Some(c), false) => degree_zero_normalize(c)?.divisor,
                    (None, false) => return Err(AhError::NotNormalized.into()),
                };
                let t = toric_realization(&divisor)?;
                let fan = io::cone_fan(&t.cone)?;
                Ok(json!({
                    "divisor": io::divisor_json(&divisor, None),
                    "fan": io::fan_json(&fan),
                    "root": io::root_json(&t.root),
                }))
            }
            AhCommand::Coherent { path, degree } => {
                let colored = self.colored(path)?;
                let e = io::parse_dual_vector(degree)?;
                match coherent_check(&colored, &e) {
                    Ok(pair) => Ok(io::coherence_pair_json(&pair)),
                    Err(report) => Err(AhError::NotCoherent(Box::new(report)).into()),
                }
            }
            AhCommand::Lnd {
                path,
                degree,
                element,
            } => {
                let colored = self.colored(path)?;
                let e = io::parse_dual_vector(degree)?;
                let pair =
                    coherent_check(&colored, &e).map_err(|r| AhError::NotCoherent(Box::new(r)))?;
                let h = horizontal_lnd(&pair)?;
                let factors = self.element(&element.element)?;
                let mut result = apply_lnd(&h.lnd, &factors, element.time.as_ref())?;
                result["pair"] = io::coherence_pair_json(&pair);
                result["normalized"] = io::divisor_json(h.normalized.base(), Some(&h.normalized));
                result["mobius"] = io::mobius_json(&h.mobius);
                Ok(result)
            }
        }
    }
}

fn apply_lnd(
    lnd: &HomogeneousLnd,
    factors: &[SemigroupElement],
    time: Option<&BigRational>,
) -> Result<Value, Failure> {
    let f = factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, g| acc.mul(g));
    let derivative = lnd.derive(&f)?;
    let mut result = json!({
        "degree": io::vector_json(&lnd.full_degree()),
        "element": io::element_json(&f),
        "element_display": f.to_string(),
        "derivative": io::element_json(&derivative),
        "derivative_display": derivative.to_string(),
        "nilpotency_index": lnd.nilpotency_index(&f)?,
    });
    let expansion = lnd.exp_symbolic(&f)?;
    match time {
        Some(s) => {
            let value = expansion.evaluate(s);
            result["time"] = io::rational_json(s);
            result["exp"] = io::element_json(&value);
            result["exp_display"] = Value::from(value.to_string());
        }
        None => result["exp_symbolic"] = io::expansion_json(&expansion),
    }
    if factors.len() > 1 {
        let mut product = lnd.exp_symbolic(&factors[0])?;
        for g in &factors[1..] {
            product = multiply(&product, &lnd.exp_symbolic(g)?);
        }
        result["homomorphism"] = Value::from(product == expansion);
    }
    Ok(result)
}

/// Product of two polynomials in `s` with algebra coefficients.
fn multiply(a: &SymbolicExpansion, b: &SymbolicExpansion) -> SymbolicExpansion {
    let mut c = vec![SemigroupElement::zero(); a.coefficients.len() + b.coefficients.len()];
    for (i, x) in a.coefficients.iter().enumerate() {
        for (j, y) in b.coefficients.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    while c.last().is_some_and(SemigroupElement::is_zero) {
        c.pop();
    }
    SymbolicExpansion { coefficients: c }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os().skip(1),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
