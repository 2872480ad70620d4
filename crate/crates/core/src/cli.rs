//! Command orchestration behind the `hallq` binary: job configuration,
//! structured reports, and the on-disk cache of indecomposable tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gallery::{self, GalleryError, GoldenMatchError};
use crate::hall::{HallAlgebra, HallError, DEFAULT_DEGREE_BOUND};
use crate::presentation::{degrees_up_to, generate_relations, IdealSlices, Presentation, PresentationError};
use crate::quiver::{parse, BoundQuiver, QuiverError};
use crate::rep::{self, Caps, IndecompTable, RepError, DEFAULT_ENUMERATION_CAP};
use crate::scalar::{rat, QSqrt};
use crate::unit_form::{RootSet, UnitForm, UnitFormError};

pub const SUPPORTED_Q: [u32; 4] = [2, 3, 5, 7];
pub const CACHE_ENV: &str = "HALLQ_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub quiver: Option<PathBuf>,
    pub q: u32,
    /// Largest total dimension of an indecomposable searched for.
    pub dim_cap: usize,
    /// Box size of the root search.
    pub root_cap: u32,
    /// Largest total dimension kept in Hall algebra computations.
    pub degree_bound: i64,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub timing: bool,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            quiver: None,
            q: 3,
            dim_cap: Caps::default().total,
            root_cap: 6,
            degree_bound: DEFAULT_DEGREE_BOUND,
            format: Format::Text,
            cache_dir: None,
            timing: false,
        }
    }
}

impl JobConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !SUPPORTED_Q.contains(&self.q) {
            return Err(CliError::Config(format!(
                "q = {} is not one of the supported primes {SUPPORTED_Q:?}",
                self.q
            )));
        }
        if self.dim_cap == 0 || self.root_cap == 0 || self.degree_bound <= 0 {
            return Err(CliError::Config("caps and the degree bound must be positive".into()));
        }
        Ok(())
    }

    fn caps(&self) -> Caps {
        Caps {
            component: self.dim_cap,
            total: self.dim_cap,
            enumeration: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    UnitForm(#[from] UnitFormError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Hall(#[from] HallError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    GoldenMatch(#[from] GoldenMatchError),
}

/// One verification performed by a command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.command);
        render_value(&mut out, &self.results, 0);
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "  {mark} {}", c.name);
                } else {
                    let _ = writeln!(out, "  {mark} {}: {}", c.name, c.detail);
                }
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(out, "{} checks, {failed} failed", self.checks.len());
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter().map(|(k, x)| format!("{k}: {}", inline(x))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

/// Short containers print on one line, the rest as indented blocks.
fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let flat = inline(x);
                if is_scalar(x) || (flat.len() <= 72 && !flat.contains('\n')) {
                    let _ = writeln!(out, "{pad}{k}: {flat}");
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                let flat = inline(x);
                if flat.len() <= 96 {
                    let _ = writeln!(out, "{pad}- {flat}");
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_value(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Roots,
    Indecomposables,
    HallTable,
    Presentation,
    VerifyRho,
    Examples { n: usize, length: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Roots => "roots",
            Command::Indecomposables => "indecomposables",
            Command::HallTable => "hall-table",
            Command::Presentation => "presentation",
            Command::VerifyRho => "verify-rho",
            Command::Examples { .. } => "examples",
        }
    }
}

pub fn run(cmd: &Command, cfg: &JobConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = match cmd {
        Command::Examples { n, length } => cmd_examples(*n, *length, cfg)?,
        _ => {
            let bq = load_quiver(cfg)?;
            match cmd {
                Command::Analyze => cmd_analyze(&bq, cfg)?,
                Command::Roots => cmd_roots(&bq, cfg)?,
                Command::Indecomposables => cmd_indecomposables(&bq, cfg)?,
                Command::HallTable => cmd_hall_table(&bq, cfg)?,
                Command::Presentation => cmd_presentation(&bq, cfg)?,
                Command::VerifyRho => cmd_verify_rho(&bq, cfg)?,
                Command::Examples { .. } => unreachable!(),
            }
        }
    };
    if cfg.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

pub fn load_quiver(cfg: &JobConfig) -> Result<BoundQuiver, CliError> {
    let path = cfg
        .quiver
        .as_ref()
        .ok_or_else(|| CliError::Config("this command needs a quiver file".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse(&text)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn report(cmd: &str, results: Value, checks: Vec<Check>) -> Report {
    Report {
        command: cmd.into(),
        results,
        checks,
        timing_ms: None,
    }
}

fn roots_of(bq: &BoundQuiver, cfg: &JobConfig) -> Result<(UnitForm, RootSet), CliError> {
    let form = UnitForm::of_bound_quiver(bq);
    let roots = form.positive_roots(cfg.root_cap)?;
    Ok((form, roots))
}

pub fn cmd_analyze(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Report, CliError> {
    let gldim = rep::gldim(bq, cfg.q)?;
    let (form, roots) = roots_of(bq, cfg)?;
    let weakly_positive = form.is_weakly_positive(cfg.root_cap);
    let rc = rep::r_consistency(bq, cfg.q)?;
    let warnings: Vec<String> = rc
        .warnings
        .iter()
        .map(|&(i, j)| {
            format!(
                "r({},{}) = {} but dim Ext^2(S_{},S_{}) = {}",
                bq.quiver().vertices()[i],
                bq.quiver().vertices()[j],
                rc.relation_counts[i][j],
                bq.quiver().vertices()[i],
                bq.quiver().vertices()[j],
                rc.ext2[i][j]
            )
        })
        .collect();
    let results = json!({
        "quiver": to_value(&bq.to_json()),
        "form": form.table(),
        "gldim": gldim,
        "weakly_positive": weakly_positive,
        "root_cap": cfg.root_cap,
        "roots": strings(roots.roots()),
        "root_count": roots.len(),
        "relation_counts": rc.relation_counts,
        "ext2_simples": rc.ext2,
        "warnings": warnings,
    });
    let checks = vec![
        Check::new("global dimension at most 2", true, format!("gldim = {gldim}")),
        Check::new(
            "weakly positive",
            weakly_positive,
            format!("searched [0,{}]^{}", cfg.root_cap, bq.vertex_count()),
        ),
        Check::new(
            "relation counts match Ext^2 between simples",
            warnings.is_empty(),
            warnings.join("; "),
        ),
    ];
    Ok(report("analyze", results, checks))
}

pub fn cmd_roots(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Report, CliError> {
    let (form, roots) = roots_of(bq, cfg)?;
    let results = json!({
        "form": form.table(),
        "root_cap": cfg.root_cap,
        "roots": strings(roots.roots()),
        "root_count": roots.len(),
        "max_height": roots.max_height(),
    });
    Ok(report("roots", results, Vec::new()))
}

fn cache_dir(cfg: &JobConfig) -> Option<PathBuf> {
    cfg.cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
}

/// Hex SHA-256 of the canonical quiver text, `q` and the caps.
pub fn cache_key(bq: &BoundQuiver, q: u32, caps: &Caps, root_cap: u32) -> String {
    let mut h = Sha256::new();
    h.update(bq.to_text().as_bytes());
    h.update(format!("\nq={q}\ndim={},{}\nenum={}\nroots={root_cap}\n", caps.component, caps.total, caps.enumeration).as_bytes());
    hex::encode(h.finalize())
}

fn read_cached(path: &FsPath) -> Option<IndecompTable> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

/// The indecomposable table, read from or written to the cache when one is
/// configured.
pub fn indecomposable_table(bq: &BoundQuiver, cfg: &JobConfig, roots: &RootSet) -> Result<IndecompTable, CliError> {
    let caps = cfg.caps();
    let dir = cache_dir(cfg);
    let path = dir
        .as_ref()
        .map(|d| d.join(format!("indecomposables-{}.json", cache_key(bq, cfg.q, &caps, cfg.root_cap))));
    if let Some(table) = path.as_deref().and_then(read_cached) {
        return Ok(table);
    }
    let table = rep::enumerate_indecomposables(bq, cfg.q, roots, &caps, false)?;
    if let (Some(dir), Some(path)) = (dir, path) {
        let io = |e: std::io::Error| CliError::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        };
        fs::create_dir_all(&dir).map_err(io)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&table).expect("tables serialize")).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
    }
    Ok(table)
}

pub fn cmd_indecomposables(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Report, CliError> {
    let (_, roots) = roots_of(bq, cfg)?;
    let table = indecomposable_table(bq, cfg, &roots)?;
    Ok(indecomposables_report(&table, &roots, cfg))
}

fn indecomposables_report(table: &IndecompTable, roots: &RootSet, cfg: &JobConfig) -> Report {
    let entries: Vec<Value> = table
        .entries
        .iter()
        .enumerate()
        .map(|(k, e)| {
            json!({
                "index": k,
                "dim": e.dim.to_string(),
                "end_size": e.end_size.to_string(),
                "aut_size": e.aut_size.to_string(),
                "maps": e.rep.maps().iter().map(|m| {
                    (0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let results = json!({
        "q": cfg.q,
        "count": table.len(),
        "indecomposables": entries,
        "hom": table.hom,
        "ext1": table.ext1,
        "directed": table.is_directed(),
        "root_comparison": to_value(&table.roots),
    });
    let mut checks = vec![Check::new(
        "directed order",
        table.is_directed(),
        "Hom vanishes above and Ext^1 on or below the diagonal",
    )];
    if cfg.q != 2 {
        checks.push(Check::new(
            "dimension vectors biject onto the roots",
            table.roots.bijective,
            format!("{} indecomposables, {} roots", table.len(), roots.len()),
        ));
    }
    report("indecomposables", results, checks)
}

fn hall_algebra(bq: &BoundQuiver, cfg: &JobConfig) -> Result<HallAlgebra, CliError> {
    let (_, roots) = roots_of(bq, cfg)?;
    let table = indecomposable_table(bq, cfg, &roots)?;
    Ok(HallAlgebra::new(bq, &table, cfg.degree_bound, DEFAULT_ENUMERATION_CAP))
}

fn absorb(stages: &mut serde_json::Map<String, Value>, checks: &mut Vec<Check>, name: &str, r: Report) {
    for c in r.checks {
        checks.push(Check::new(format!("{name}: {}", c.name), c.pass, c.detail));
    }
    stages.insert(name.replace('-', "_"), r.results);
}

/// Rows `F^R_{M,N}` for nonzero classes with `|m| + |n| <= bound`, each
/// checked against the extension count.
fn hall_rows(h: &mut HallAlgebra, bound: i64) -> Result<(Vec<Value>, Vec<String>), CliError> {
    let classes: Vec<_> = h.classes_up_to(bound).into_iter().skip(1).collect();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for m in &classes {
        for n in &classes {
            let (dm, dn) = (h.class_dim(m), h.class_dim(n));
            if dm.total() + dn.total() > bound {
                continue;
            }
            let twist = h.form().bilinear(&dm, &dn)?;
            for r in h.classes_of_degree(&dm.add(&dn)) {
                let f = h.hall_number(m, n, &r)?;
                if f == 0 {
                    continue;
                }
                let g = h.hall_number_via_ext(m, n, &r)?;
                if g != f {
                    mismatches.push(format!("{} * {} -> {}: {f} vs {g}", h.render_class(m), h.render_class(n), h.render_class(&r)));
                }
                rows.push(json!({
                    "M": h.render_class(m),
                    "N": h.render_class(n),
                    "R": h.render_class(&r),
                    "F": f,
                    "twist_exponent": twist,
                }));
            }
        }
    }
    Ok((rows, mismatches))
}

pub fn cmd_hall_table(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Report, CliError> {
    let mut h = hall_algebra(bq, cfg)?;
    let (rows, mismatches) = hall_rows(&mut h, cfg.degree_bound)?;
    let results = json!({
        "q": cfg.q,
        "degree_bound": cfg.degree_bound,
        "indecomposables": strings(&h.table().dims()),
        "rows": rows,
    });
    let checks = vec![Check::new(
        "Hall numbers agree with extension counts",
        mismatches.is_empty(),
        mismatches.join("; "),
    )];
    Ok(report("hall-table", results, checks))
}

fn presentation_of(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Presentation, CliError> {
    let (form, roots) = roots_of(bq, cfg)?;
    Ok(generate_relations(&form, &roots)?.with_labels(bq.quiver().vertices().iter().map(|v| format!("e{v}")).collect()))
}


pub fn cmd_presentation(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Report, CliError> {
    let pres = presentation_of(bq, cfg)?;
    let relations: Vec<Value> = pres
        .relations()
        .iter()
        .map(|r| {
            json!({
                "sequence": r.sequence.iter().map(|&i| pres.labels()[i].clone()).collect::<Vec<_>>(),
                "degree": r.degree.to_string(),
                "element": r.element.render(pres.labels()),
            })
        })
        .collect();
    let mut generic = IdealSlices::generic(&pres);
    let mut at_one = IdealSlices::at(&pres, &rat(1))?;
    let mut at_sqrt = IdealSlices::at(&pres, &QSqrt::sqrt(cfg.q as u64))?;
    let mut dims = Vec::new();
    let mut disagreements = Vec::new();
    for d in degrees_up_to(bq.vertex_count(), cfg.degree_bound) {
        let (g, o, s) = (generic.dimension(&d)?, at_one.dimension(&d)?, at_sqrt.dimension(&d)?);
        if g != o || g != s {
            disagreements.push(format!("{d}: {g}, {o}, {s}"));
        }
        dims.push(json!({"degree": d.to_string(), "generic": g, "v=1": o, "v=sqrt(q)": s}));
    }
    let results = json!({
        "generators": pres.labels(),
        "relation_count": relations.len(),
        "relations": relations,
        "graded_dimensions": dims,
    });
    let checks = vec![Check::new(
        "graded dimensions independent of v",
        disagreements.is_empty(),
        if disagreements.is_empty() {
            format!("all degrees up to {}", cfg.degree_bound)
        } else {
            format!("generic, v=1, v=sqrt(q) differ at {}", disagreements.join("; "))
        },
    )];
    Ok(report("presentation", results, checks))
}

fn rho_checks(h: &mut HallAlgebra, pres: &Presentation, cfg: &JobConfig) -> Result<(Value, Vec<Check>), CliError> {
    let r = h.rho_verify(pres, cfg.degree_bound)?;
    let mut checks = vec![Check::new(
        "relations vanish in the Hall algebra",
        r.homomorphism_verified,
        format!("{} of {} relations nonzero", r.nonvanishing.len(), r.relations_checked),
    )];
    if let Some(iso) = r.isomorphism_verified {
        let bad: Vec<String> = r
            .dimensions
            .iter()
            .filter(|c| c.presentation != c.hall)
            .map(|c| format!("{}: {} vs {}", c.degree, c.presentation, c.hall))
            .collect();
        checks.push(Check::new(
            "graded dimensions match the Hall algebra",
            iso,
            if bad.is_empty() {
                format!("all degrees up to {}", cfg.degree_bound)
            } else {
                bad.join("; ")
            },
        ));
    }
    let mismatched: Vec<Value> = r
        .dimensions
        .iter()
        .filter(|c| c.presentation != c.hall)
        .map(|c| json!({"degree": c.degree.to_string(), "presentation": c.presentation, "hall": c.hall}))
        .collect();
    let results = json!({
        "q": cfg.q,
        "relations_checked": r.relations_checked,
        "homomorphism_verified": r.homomorphism_verified,
        "isomorphism_verified": r.isomorphism_verified,
        "nonvanishing": r.nonvanishing.iter().map(|x| json!({
            "index": x.index,
            "sequence": x.sequence,
            "degree": x.degree.to_string(),
            "relation": x.relation,
            "image": x.image,
        })).collect::<Vec<_>>(),
        "degrees_compared": r.dimensions.len(),
        "dimension_mismatches": mismatched,
    });
    Ok((results, checks))
}

pub fn cmd_verify_rho(bq: &BoundQuiver, cfg: &JobConfig) -> Result<Report, CliError> {
    let pres = presentation_of(bq, cfg)?;
    let mut h = hall_algebra(bq, cfg)?;
    let (results, checks) = rho_checks(&mut h, &pres, cfg)?;
    Ok(report("verify-rho", results, checks))
}

/// Runs every stage on a built-in example and matches its listed extra
/// relations.
pub fn cmd_examples(n: usize, length: usize, cfg: &JobConfig) -> Result<Report, CliError> {
    let bq = gallery::example(n, length)?;
    let mut stages = serde_json::Map::new();
    let mut checks = Vec::new();
    absorb(&mut stages, &mut checks, "analyze", cmd_analyze(&bq, cfg)?);
    let (_, roots) = roots_of(&bq, cfg)?;
    let table = indecomposable_table(&bq, cfg, &roots)?;
    absorb(&mut stages, &mut checks, "indecomposables", indecomposables_report(&table, &roots, cfg));

    let mut h = HallAlgebra::new(&bq, &table, cfg.degree_bound, DEFAULT_ENUMERATION_CAP);
    let summary_bound = cfg.degree_bound.min(3);
    let (rows, mismatches) = hall_rows(&mut h, summary_bound)?;
    checks.push(Check::new(
        "hall-table: Hall numbers agree with extension counts",
        mismatches.is_empty(),
        mismatches.join("; "),
    ));
    stages.insert(
        "hall_table".into(),
        json!({"degree_bound": summary_bound, "rows": rows.len(), "sample": rows.iter().take(12).cloned().collect::<Vec<_>>()}),
    );

    let pres = presentation_of(&bq, cfg)?;
    absorb(&mut stages, &mut checks, "presentation", cmd_presentation(&bq, cfg)?);
    let (rho, rho_checks) = rho_checks(&mut h, &pres, cfg)?;
    absorb(&mut stages, &mut checks, "verify-rho", report("verify-rho", rho, rho_checks));

    let matches = gallery::match_golden(&pres, n, length)?;
    for m in &matches {
        checks.push(Check::new(
            format!("golden: {}", m.label),
            m.pass,
            format!(
                "degree {}, in ideal: {}, quotient dimension {} vs {}",
                m.degree, m.in_ideal, m.generated_dim, m.listed_dim
            ),
        ));
    }
    stages.insert("golden".into(), to_value(&matches));
    let results = json!({
        "example": n,
        "length": if n == 2 { Some(length) } else { None },
        "quiver_text": bq.to_text(),
        "stages": Value::Object(stages),
    });
    Ok(report("examples", results, checks))
}
