use std::fmt;
use std::fs;
use std::path::Path;

use mfrac_core::boundary::{approx_equiv, leq_bounded_with, tilde_related, BoundaryWord};
use mfrac_core::fmt::sig12;
use mfrac_core::fractal::{attractor_points, contact_measure, kappa, region_mass, GridSpec, IfsAction};
use mfrac_core::measure::{monoid_cylinder_measure, CylinderMeasure};
use mfrac_core::operators::{relation_defects, DefectReport};
use mfrac_core::{Error, Presentation};

use crate::{Command, Common, ImageFormat, Relation};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unwritable paths and malformed flag values.
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_capacity() => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_presentation(c: &Common) -> Result<Presentation> {
    let text = read(&c.presentation)?;
    let p = Presentation::parse(&text).map_err(|e| prefix_error(&c.presentation, e))?;
    Ok(p.with_max_sphere(c.max_sphere))
}

fn load_action(c: &Common, ifs: &Path) -> Result<IfsAction> {
    let p = load_presentation(c)?;
    let text = read(ifs)?;
    Ok(IfsAction::parse(&p, &text).map_err(|e| prefix_error(ifs, e))?)
}

/// Names the file in parse errors, keeping the error kind.
fn prefix_error(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, msg } => Error::Parse { line, msg: format!("{}: {msg}", path.display()) },
        other => other,
    }
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<f64>> {
    let coords: Option<Vec<f64>> = text.split(',').map(|s| parse_number(s.trim())).collect();
    match coords {
        Some(v) if v.len() == dim => Ok(v),
        _ => Err(CliError::Usage(format!("expected {dim} comma-separated coordinates, got {text:?}"))),
    }
}

fn parse_number(s: &str) -> Option<f64> {
    let v = match s.split_once('/') {
        Some((n, d)) => n.parse::<f64>().ok()? / d.parse::<f64>().ok().filter(|d| *d != 0.0)?,
        None => s.parse().ok()?,
    };
    v.is_finite().then_some(v)
}

fn seed_point(a: &IfsAction, seed: &Option<String>) -> Result<Vec<f64>> {
    match seed {
        Some(s) => parse_point(s, a.dim()),
        None => Ok(a.center().to_vec()),
    }
}

pub fn run(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Presentation { common, depth } => presentation(common, *depth),
        Command::Decompose { common } => decompose(common),
        Command::Measure { common, element, depth } => measure(common, element, *depth),
        Command::Defects { common, depth } => defects(common, *depth),
        Command::BoundaryLeq { common, left, right, horizon, search_factor, relation } => {
            boundary_leq(common, left, right, *horizon, *search_factor, *relation)
        }
        Command::FractalRender { common, ifs, depth, grid, out, format, seed, region, max_cells } => {
            fractal_render(common, ifs, *depth, *grid, out, *format, seed, region, *max_cells)
        }
        Command::Attractor { common, ifs, depth, seed, word } => attractor(common, ifs, *depth, seed, word),
    }
}

fn presentation(c: &Common, depth: usize) -> Result<String> {
    let p = load_presentation(c)?;
    let mut out = p.to_text();
    out.push_str("depth,size,elements\n");
    for k in 0..=depth {
        let sphere = p.sphere(k)?;
        let names: Vec<String> = sphere.iter().map(|t| p.format(t)).collect();
        out.push_str(&format!("{k},{},{}\n", sphere.len(), names.join(" ")));
    }
    Ok(out)
}

fn decompose(c: &Common) -> Result<String> {
    let p = load_presentation(c)?;
    let g = p.graph();
    let parts = g.coconnected_components();
    let mut out = format!("components: {}\n", parts.len());
    for (i, part) in parts.iter().enumerate() {
        let edges: Vec<String> = part
            .edges()
            .iter()
            .map(|&(a, b)| format!("{}-{}", part.vertices()[a], part.vertices()[b]))
            .collect();
        out.push_str(&format!("component {}: {}", i + 1, part.vertices().join(" ")));
        if !edges.is_empty() {
            out.push_str(&format!(" | commute {}", edges.join(" ")));
        }
        out.push('\n');
    }
    let verdict = if g.crisp_laca_applicable() { "applicable" } else { "not applicable" };
    out.push_str(&format!("crisp-laca: {verdict}\n"));
    Ok(out)
}

fn measure(c: &Common, element: &str, depth: usize) -> Result<String> {
    let p = load_presentation(c)?;
    let tau = p.parse_element(element)?;
    let m = monoid_cylinder_measure(&p, &tau, depth)?;
    Ok(format!("{}\n{}\n", CylinderMeasure::CSV_HEADER, m.csv_row(&p)))
}

fn defects(c: &Common, depth: usize) -> Result<String> {
    let p = load_presentation(c)?;
    let mut out = format!("{}\n", DefectReport::CSV_HEADER);
    for r in relation_defects(&p, depth)? {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    Ok(out)
}

fn boundary_leq(c: &Common, left: &str, right: &str, horizon: usize, factor: usize, rel: Relation) -> Result<String> {
    let p = load_presentation(c)?;
    let f = BoundaryWord::parse(&p, left)?;
    let g = BoundaryWord::parse(&p, right)?;
    if horizon == 0 {
        return Err(CliError::Usage("--horizon must be positive".into()));
    }
    let verdict = match rel {
        Relation::Leq => leq_bounded_with(&p, &f, &g, horizon, factor),
        Relation::Equiv => approx_equiv(&p, &f, &g, horizon),
        Relation::Tilde => tilde_related(&p, &f, &g, horizon),
    };
    let mut out = format!("{}\n", verdict.label());
    match verdict.certificate() {
        Some(cert) => {
            for line in cert.describe(&p) {
                out.push_str(&line);
                out.push('\n');
            }
        }
        None => out.push_str(&format!("search bound exceeded within horizon {horizon}\n")),
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fractal_render(
    c: &Common,
    ifs: &Path,
    depth: usize,
    grid: usize,
    out_path: &Path,
    format: Option<ImageFormat>,
    seed: &Option<String>,
    region: &Option<String>,
    max_cells: usize,
) -> Result<String> {
    let a = load_action(c, ifs)?;
    let x = seed_point(&a, seed)?;
    let spec = GridSpec::around(&a, &x, grid)?.with_max_cells(max_cells);
    let format = format.unwrap_or(if out_path.extension().is_some_and(|e| e == "csv") {
        ImageFormat::Csv
    } else {
        ImageFormat::Pgm
    });
    let density = contact_measure(&a, &x, depth, &spec)?;
    let bytes = match format {
        ImageFormat::Pgm => density.to_pgm()?,
        ImageFormat::Csv => density.to_csv().into_bytes(),
    };
    fs::write(out_path, bytes).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out_path.display())))?;
    let mut out = String::from("depth,cells,total_lower,total_upper\n");
    out.push_str(&format!(
        "{depth},{},{},{}\n",
        density.cells(),
        mfrac_core::fmt::rational(&density.total_lower()),
        mfrac_core::fmt::rational(&density.total_upper())
    ));
    if let Some(r) = region {
        let (lo, hi) = r.split_once(':').ok_or_else(|| CliError::Usage(format!("region {r:?} needs the form lo:hi")))?;
        let (lo, hi) = (parse_point(lo, a.dim())?, parse_point(hi, a.dim())?);
        let m = region_mass(&a, &x, depth, &lo, &hi)?;
        out.push_str("region,lower,upper\n");
        out.push_str(&format!(
            "{},{},{}\n",
            r,
            mfrac_core::fmt::rational(&m.lower),
            mfrac_core::fmt::rational(&m.upper)
        ));
    }
    Ok(out)
}

fn attractor(c: &Common, ifs: &Path, depth: usize, seed: &Option<String>, word: &Option<String>) -> Result<String> {
    let a = load_action(c, ifs)?;
    let x = seed_point(&a, seed)?;
    match word {
        Some(w) => {
            let f = BoundaryWord::parse(a.presentation(), w)?;
            let v = kappa(&a, &f, &x, depth)?;
            let mut header: Vec<String> = (0..a.dim()).map(|i| format!("x{i}")).collect();
            header.push("bound".into());
            let mut row: Vec<String> = v.point.iter().map(|c| sig12(*c)).collect();
            row.push(sig12(v.bound));
            Ok(format!("{}\n{}\n", header.join(","), row.join(",")))
        }
        None => Ok(attractor_points(&a, depth, &x)?.to_csv(&a)?),
    }
}
