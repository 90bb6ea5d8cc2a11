//! JSON documents and generator strings for algebroids, paths, sheets and
//! period specs.

use std::path::Path;
use std::sync::Arc;

use algebroid_paths::families::associator_triple;
use algebroid_paths::{
    random_path, APath, Algebroid, Connection, HomotopySheet, LieFamily, MeridianSweep, Rescaling, Variation,
};
use quadratic_field::{QuadField, QuadNumber, TwistedSpec};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{At, CliError};

/// Reads `input` as a JSON file when such a file exists, and as inline
/// JSON otherwise.
pub fn load(input: &str) -> Result<Value, CliError> {
    let path = Path::new(input);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: input.to_string(),
            message: e.to_string(),
        })?
    } else {
        input.to_string()
    };
    serde_json::from_str(&text).map_err(|e| CliError::Io {
        path: input.to_string(),
        message: format!("not a JSON file or inline JSON value ({e})"),
    })
}

/// Deserialises `value`, reporting failures with a JSON pointer relative to
/// the document root.
pub fn parse_at<T: DeserializeOwned>(value: &Value, pointer: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let mut p = pointer.to_string();
        for seg in e.path().iter() {
            match seg {
                serde_path_to_error::Segment::Seq { index } => p.push_str(&format!("/{index}")),
                serde_path_to_error::Segment::Map { key } => {
                    p.push('/');
                    p.push_str(&key.replace('~', "~0").replace('/', "~1"));
                }
                serde_path_to_error::Segment::Enum { .. } | serde_path_to_error::Segment::Unknown => {}
            }
        }
        CliError::schema(&p, e.inner().to_string())
    })
}

/// Splits `name(arg, arg)` into its name and trimmed arguments.
pub fn parse_call(s: &str) -> Option<(String, Vec<String>)> {
    let s = s.trim();
    match s.find('(') {
        None => Some((s.to_string(), Vec::new())),
        Some(open) => {
            let inner = s[open + 1..].strip_suffix(')')?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(|a| a.trim().to_string()).collect()
            };
            Some((s[..open].trim().to_string(), args))
        }
    }
}

fn arg<T: std::str::FromStr>(args: &[String], i: usize, default: Option<T>, pointer: &str) -> Result<T, CliError> {
    match args.get(i) {
        Some(a) => a
            .parse()
            .map_err(|_| CliError::schema(pointer, format!("argument {} ({a:?}) is malformed", i + 1))),
        None => default.ok_or_else(|| CliError::schema(pointer, format!("missing argument {}", i + 1))),
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum FamilyName {
    LieAlgebra,
    Tangent,
    TwistedSurface,
    Custom,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebroidDoc {
    family: FamilyName,
    m: Option<usize>,
    n: Option<usize>,
    structure: Option<Value>,
    anchor: Option<Value>,
    omega: Option<Value>,
    connection: Option<Value>,
}

/// Period spec document: `lambdas[i] = [p, q]` stands for `p + q sqrt(d)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedDoc {
    pub factors: usize,
    #[serde(default = "default_d")]
    pub d: i64,
    pub lambdas: Vec<[String; 2]>,
}

fn default_d() -> i64 {
    2
}

impl TwistedDoc {
    pub fn to_spec(&self, pointer: &str) -> Result<TwistedSpec, CliError> {
        if self.factors != self.lambdas.len() {
            return Err(CliError::schema(
                &format!("{pointer}/lambdas"),
                format!("{} coefficients for {} factors", self.lambdas.len(), self.factors),
            ));
        }
        let field = QuadField::new(self.d).at(&format!("{pointer}/d"))?;
        let lambdas = self
            .lambdas
            .iter()
            .enumerate()
            .map(|(i, [p, q])| quad_pair(p, q, self.d, &format!("{pointer}/lambdas/{i}")))
            .collect::<Result<Vec<_>, _>>()?;
        TwistedSpec::new(field, lambdas).at(pointer)
    }
}

pub fn quad_pair(p: &str, q: &str, d: i64, pointer: &str) -> Result<QuadNumber, CliError> {
    let p = quadratic_field::parse_rational(p).at(&format!("{pointer}/0"))?;
    let q = quadratic_field::parse_rational(q).at(&format!("{pointer}/1"))?;
    Ok(QuadNumber::new(p, q, d))
}

fn cube(value: &Value, pointer: &str, dims: [usize; 3]) -> Result<Vec<f64>, CliError> {
    let rows: Vec<Vec<Vec<f64>>> = parse_at(value, pointer)?;
    let mut out = Vec::with_capacity(dims.iter().product());
    check_len(rows.len(), dims[0], pointer)?;
    for (i, plane) in rows.iter().enumerate() {
        check_len(plane.len(), dims[1], &format!("{pointer}/{i}"))?;
        for (j, row) in plane.iter().enumerate() {
            check_len(row.len(), dims[2], &format!("{pointer}/{i}/{j}"))?;
            out.extend_from_slice(row);
        }
    }
    Ok(out)
}

fn check_len(got: usize, expected: usize, pointer: &str) -> Result<(), CliError> {
    if got == expected {
        Ok(())
    } else {
        Err(CliError::schema(pointer, format!("expected {expected} entries, got {got}")))
    }
}

fn required<'a>(v: &'a Option<Value>, pointer: &str, what: &str) -> Result<&'a Value, CliError> {
    v.as_ref()
        .ok_or_else(|| CliError::schema(pointer, format!("missing field `{what}`")))
}

/// Parses an algebroid document together with its connection.
pub fn algebroid(value: &Value, pointer: &str) -> Result<(Arc<Algebroid>, Connection), CliError> {
    let doc: AlgebroidDoc = parse_at(value, pointer)?;
    let field = |name: &str| format!("{pointer}/{name}");
    let spec = match doc.family {
        FamilyName::LieAlgebra => match required(&doc.structure, pointer, "structure")? {
            Value::String(name) => Algebroid::preset(name)
                .ok_or_else(|| CliError::schema(&field("structure"), format!("unknown preset {name:?}")))?,
            other => {
                let n = doc.n.ok_or_else(|| CliError::schema(pointer, "missing field `n`"))?;
                Algebroid::lie_algebra("custom_lie_algebra", n, cube(other, &field("structure"), [n, n, n])?)
            }
        },
        FamilyName::Tangent => {
            let m = doc.m.ok_or_else(|| CliError::schema(pointer, "missing field `m`"))?;
            Algebroid::tangent(m)
        }
        FamilyName::TwistedSurface => {
            let omega = required(&doc.omega, pointer, "omega")?;
            let lambdas: Vec<f64> = match omega {
                Value::Array(_) => parse_at(omega, &field("omega"))?,
                _ => {
                    let twisted: TwistedDoc = parse_at(omega, &field("omega"))?;
                    let spec = twisted.to_spec(&field("omega"))?;
                    spec.lambdas().iter().map(QuadNumber::to_f64).collect()
                }
            };
            if lambdas.is_empty() {
                return Err(CliError::schema(&field("omega"), "at least one sphere factor"));
            }
            Algebroid::twisted_surface(lambdas)
        }
        FamilyName::Custom => {
            let m = doc.m.ok_or_else(|| CliError::schema(pointer, "missing field `m`"))?;
            let n = doc.n.ok_or_else(|| CliError::schema(pointer, "missing field `n`"))?;
            let anchor: Vec<Vec<f64>> = parse_at(required(&doc.anchor, pointer, "anchor")?, &field("anchor"))?;
            check_len(anchor.len(), m, &field("anchor"))?;
            for (k, row) in anchor.iter().enumerate() {
                check_len(row.len(), n, &format!("{}/{k}", field("anchor")))?;
            }
            let anchor: Arc<[f64]> = anchor.concat().into();
            let c: Arc<[f64]> = cube(required(&doc.structure, pointer, "structure")?, &field("structure"), [n, n, n])?.into();
            Algebroid::custom(
                "custom",
                m,
                n,
                Arc::new(move |_, out| out.copy_from_slice(&anchor)),
                Arc::new(move |_, out| out.copy_from_slice(&c)),
            )
        }
    };
    if let (Some(m), FamilyName::LieAlgebra) = (doc.m, doc.family) {
        check_len(0, m, &field("m"))?;
    }
    if let Some(n) = doc.n {
        check_len(spec.n(), n, &field("n"))?;
    }
    let conn = match &doc.connection {
        None => Connection::zero(&spec),
        Some(v) => connection(v, &field("connection"), &spec)?,
    };
    Ok((Arc::new(spec), conn))
}

/// `"zero"`, `"random(seed)"`, `"random(seed, scale)"` or constant
/// Christoffel symbols `[i][k][a]`.
pub fn connection(value: &Value, pointer: &str, spec: &Algebroid) -> Result<Connection, CliError> {
    let (m, n) = (spec.m(), spec.n());
    match value {
        Value::String(s) => {
            let (name, args) = parse_call(s).ok_or_else(|| CliError::schema(pointer, format!("malformed {s:?}")))?;
            match name.as_str() {
                "zero" => Ok(Connection::zero(spec)),
                "random" => Ok(Connection::random(
                    spec,
                    arg(&args, 0, None, pointer)?,
                    arg(&args, 1, Some(0.1), pointer)?,
                )),
                _ => Err(CliError::schema(pointer, format!("unknown connection {s:?}"))),
            }
        }
        other => Connection::constant(spec, cube(other, pointer, [m, n, n])?).at(pointer),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathDoc {
    #[serde(rename = "N")]
    n: usize,
    a: Vec<Vec<f64>>,
    #[serde(default)]
    gamma: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    a0: bool,
}

/// A path document or one of the generators `circle`, `constant`,
/// `constant(x, ...)`, `random(seed, smoothness)` and `arc(h)`.
pub fn path(value: &Value, pointer: &str, spec: &Arc<Algebroid>, n: usize) -> Result<APath, CliError> {
    match value {
        Value::String(s) => {
            let (name, args) = parse_call(s).ok_or_else(|| CliError::schema(pointer, format!("malformed {s:?}")))?;
            match name.as_str() {
                "circle" => {
                    if spec.name() != "tangent2" {
                        return Err(CliError::schema(pointer, "the circle lives in the tangent algebroid of the plane"));
                    }
                    let p = APath::circle(n).at(pointer)?;
                    APath::from_grid(spec.clone(), p.a_rows(), p.gamma_rows(), false).at(pointer)
                }
                "constant" => {
                    let x = if args.is_empty() {
                        vec![0.0; spec.m()]
                    } else {
                        (0..args.len()).map(|i| arg(&args, i, None, pointer)).collect::<Result<_, _>>()?
                    };
                    APath::constant(spec.clone(), &x, n).at(pointer)
                }
                "random" => {
                    let seed = arg(&args, 0, None, pointer)?;
                    let smoothness = arg(&args, 1, Some(1.0), pointer)?;
                    random_path(spec.clone(), seed, smoothness, &vec![0.0; spec.m()], n).at(pointer)
                }
                "arc" => APath::planar_arc(spec.clone(), arg(&args, 0, None, pointer)?, n).at(pointer),
                _ => Err(CliError::schema(pointer, format!("unknown path generator {s:?}"))),
            }
        }
        other => {
            let doc: PathDoc = parse_at(other, pointer)?;
            if doc.a.len() != doc.n + 1 {
                return Err(CliError::schema(
                    &format!("{pointer}/a"),
                    format!("N = {} needs {} samples, got {}", doc.n, doc.n + 1, doc.a.len()),
                ));
            }
            let gamma = match doc.gamma {
                Some(g) => g,
                None if spec.m() == 0 => vec![Vec::new(); doc.a.len()],
                None => return Err(CliError::schema(pointer, "missing field `gamma`")),
            };
            APath::from_grid(spec.clone(), doc.a, gamma, doc.a0).at(pointer)
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SheetDoc {
    n_eps: usize,
    n_t: usize,
    /// `a[j][i]`: row `eps_j`, node `t_i`.
    a: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    gamma: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default)]
    b_start: Option<Vec<f64>>,
    #[serde(default)]
    b_end: Option<Vec<f64>>,
}

/// What a sheet generator may draw on besides the algebroid.
pub struct SheetContext<'a> {
    pub spec: &'a Arc<Algebroid>,
    pub paths: &'a [APath],
    pub n_eps: usize,
    pub n_t: usize,
    pub seed: u64,
}

/// A sheet document or one of the generators `gauge(seed, amplitude)`,
/// `shift(seed, amplitude)`, `meridian`, `meridian(k, ...)`, `constant`,
/// `interpolate`, `associator` and `associator(seed)`.
pub fn sheet(value: &Value, pointer: &str, ctx: &SheetContext) -> Result<HomotopySheet, CliError> {
    let spec = ctx.spec;
    let need = |k: usize| {
        if ctx.paths.len() < k {
            Err(CliError::schema(pointer, format!("this sheet needs {k} input paths, got {}", ctx.paths.len())))
        } else {
            Ok(())
        }
    };
    match value {
        Value::String(s) => {
            let (name, args) = parse_call(s).ok_or_else(|| CliError::schema(pointer, format!("malformed {s:?}")))?;
            match name.as_str() {
                "gauge" | "shift" => {
                    let variation = if name == "gauge" { Variation::Gauge } else { Variation::Shift };
                    let seed = arg(&args, 0, Some(ctx.seed), pointer)?;
                    let amplitude = arg(&args, 1, Some(0.5), pointer)?;
                    LieFamily::random(spec.clone(), seed, variation, amplitude)
                        .at(pointer)?
                        .sheet(ctx.n_eps, ctx.n_t)
                        .at(pointer)
                }
                "meridian" => {
                    let sweep = if args.is_empty() {
                        MeridianSweep::full(spec.clone())
                    } else {
                        let wraps = (0..args.len()).map(|i| arg(&args, i, None, pointer)).collect::<Result<_, _>>()?;
                        MeridianSweep::new(spec.clone(), wraps)
                    }
                    .at(pointer)?;
                    sweep.sheet(ctx.n_eps, ctx.n_t).at(pointer)
                }
                "constant" => {
                    need(1)?;
                    HomotopySheet::constant(&ctx.paths[0], ctx.n_eps).at(pointer)
                }
                "interpolate" => {
                    need(2)?;
                    HomotopySheet::tangent_interpolation(&ctx.paths[0], &ctx.paths[1], ctx.n_eps).at(pointer)
                }
                "associator" => {
                    let triple = if args.is_empty() && ctx.paths.len() >= 3 {
                        [ctx.paths[0].clone(), ctx.paths[1].clone(), ctx.paths[2].clone()]
                    } else {
                        let seed = arg(&args, 0, Some(ctx.seed), pointer)?;
                        associator_triple(spec.clone(), seed, ctx.n_t).at(pointer)?
                    };
                    let [a1, a2, a3] = &triple;
                    HomotopySheet::associator(a1, a2, a3, ctx.n_eps, ctx.n_t, Rescaling::Quintic, 1e-9).at(pointer)
                }
                _ => Err(CliError::schema(pointer, format!("unknown sheet generator {s:?}"))),
            }
        }
        other => {
            let doc: SheetDoc = parse_at(other, pointer)?;
            check_len(doc.a.len(), doc.n_eps + 1, &format!("{pointer}/a"))?;
            let gamma = match doc.gamma {
                Some(g) => {
                    check_len(g.len(), doc.n_eps + 1, &format!("{pointer}/gamma"))?;
                    g.into_iter().map(Some).collect()
                }
                None => vec![None; doc.a.len()],
            };
            let rows = doc
                .a
                .into_iter()
                .zip(gamma)
                .enumerate()
                .map(|(j, (a, g))| {
                    let row_ptr = format!("{pointer}/a/{j}");
                    check_len(a.len(), doc.n_t + 1, &row_ptr)?;
                    let g = match g {
                        Some(g) => g,
                        None if spec.m() == 0 => vec![Vec::new(); a.len()],
                        None => return Err(CliError::schema(pointer, "missing field `gamma`")),
                    };
                    APath::from_grid(spec.clone(), a, g, false).at(&row_ptr)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let sheet = HomotopySheet::from_rows(&rows).at(pointer)?;
            match (doc.b_start, doc.b_end) {
                (None, None) => Ok(sheet),
                (s, e) => {
                    let zero = vec![0.0; spec.n()];
                    sheet.with_boundary(s.unwrap_or_else(|| zero.clone()), e.unwrap_or(zero)).at(pointer)
                }
            }
        }
    }
}

/// The document shared by the path, homotopy and oracle commands.
pub struct Problem {
    pub spec: Arc<Algebroid>,
    pub connection: Connection,
    pub paths: Vec<APath>,
    pub sheet: Option<Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemDoc {
    #[serde(default)]
    algebroid: Option<Value>,
    #[serde(default)]
    paths: Vec<Value>,
    #[serde(default)]
    sheet: Option<Value>,
}

/// Reads `{"algebroid": ..., "paths": [...], "sheet": ...}`; the algebroid
/// defaults to `so3` with the zero connection.
pub fn problem(value: &Value, n: usize) -> Result<Problem, CliError> {
    let doc: ProblemDoc = parse_at(value, "")?;
    let (spec, connection) = match &doc.algebroid {
        Some(v) => algebroid(v, "/algebroid")?,
        None => {
            let spec = Algebroid::so3();
            let conn = Connection::zero(&spec);
            (Arc::new(spec), conn)
        }
    };
    let paths = doc
        .paths
        .iter()
        .enumerate()
        .map(|(i, v)| path(v, &format!("/paths/{i}"), &spec, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Problem {
        spec,
        connection,
        paths,
        sheet: doc.sheet,
    })
}
