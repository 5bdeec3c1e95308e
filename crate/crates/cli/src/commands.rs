use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use recunitary::invariants::{
    basis_solve_n4, count_independent_phases, epsilon_pattern_residual, omega_from_params, panel_lattice,
    panel_relation_residuals, plaquette_table, triangle_areas, zero_texture_analysis,
};
use recunitary::json::{decomposition_to_json, MatrixJson, ParamsDocument};
use recunitary::matrix::UNITARITY_TOL;
use recunitary::symmetric::{compose_symmetric, SymmetricParams};
use recunitary::{
    decompose, exp_generator, gauge_fix, generator, haar_random, phase_matrix, reorder_chain, reorder_to,
    ComplexMatrix, Decomposition, Error, FactorOrder, PhaseVector,
};

use crate::args::{Cli, Command, GaugeArg, MatrixFormat, OrderArg};
use crate::input::{has_key, read_matrix, read_matrix_or_chain, read_params, read_source, MatrixSource};
use crate::report::{
    lattice_grid, plaquette_entries, BasisReport, Check, CheckStatus, InvariantsReport, PanelReport, PolygonEntry,
    SymmetricReport, TextureReport, VerifyReport,
};

/// Sides shorter than this are treated as absent when counting polygon sides.
const SIDE_TOL: f64 = 1e-12;

#[derive(Debug)]
pub struct CommandError {
    pub code: u8,
    pub message: String,
}

impl CommandError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency { .. } => CommandError::numeric(e.to_string()),
            _ => CommandError::invalid(e.to_string()),
        }
    }
}

/// Text for stdout plus, for reports that completed but found a residual
/// above tolerance, the reason for a non-zero exit.
pub struct Output {
    pub stdout: String,
    pub failure: Option<String>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, failure: None }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CommandError> {
    serde_json::to_string_pretty(value).map_err(|e| CommandError::invalid(e.to_string()))
}

fn write_matrix(x: &ComplexMatrix, format: MatrixFormat) -> Result<String, CommandError> {
    match format {
        MatrixFormat::Json => to_json(&MatrixJson::from_matrix(x)?),
        MatrixFormat::Csv => {
            let mut lines = vec!["row,col,re,im".to_string()];
            for i in 0..x.rows() {
                for j in 0..x.cols() {
                    let z = x[(i, j)];
                    lines.push(format!("{},{},{},{}", i + 1, j + 1, z.re, z.im));
                }
            }
            Ok(lines.join("\n"))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CommandError> {
    match &cli.command {
        Command::Gen { n, seed, format } => {
            if *n == 0 {
                return Err(CommandError::invalid("--n must be at least 1"));
            }
            Ok(Output::ok(write_matrix(&haar_random(*n, *seed)?, *format)?))
        }
        Command::Compose { input, format } => {
            let x = match read_params(input.as_deref())? {
                ParamsDocument::Chain(d) => d.compose(),
                ParamsDocument::Symmetric(p) => compose_symmetric(&p),
            };
            Ok(Output::ok(write_matrix(&x, *format)?))
        }
        Command::Decompose { input, tol, order, gauge } => {
            let x = read_matrix(input.as_deref())?;
            let mut d = decompose(&x, *tol)?;
            if *order == OrderArg::Ascending {
                d = reorder_to(&d, FactorOrder::Ascending)?;
            }
            if *gauge == GaugeArg::Canonical {
                d = gauge_fix(&d);
            }
            Ok(Output::ok(decomposition_to_json(&d)?))
        }
        Command::Reorder { input, target } => {
            let text = read_source(input.as_deref())?;
            let d = recunitary::json::decomposition_from_json(&text)?;
            let target = parse_target(target, d.ambient_n())?;
            Ok(Output::ok(decomposition_to_json(&reorder_chain(&d, &target)?)?))
        }
        Command::Invariants { input } => invariants(read_matrix_or_chain(input.as_deref())?),
        Command::Panel { input, tol } => panel(&read_matrix(input.as_deref())?, *tol),
        Command::Zerotexture { input, tol } => {
            let x = read_matrix(input.as_deref())?;
            let report = zero_texture_analysis(&x, *tol)?;
            Ok(Output::ok(to_json(&TextureReport::from(&report))?))
        }
        Command::Symmetric { input, tol } => symmetric(input.as_deref(), *tol),
        Command::Verify { input, tol } => verify(&read_matrix(input.as_deref())?, *tol),
    }
}

fn parse_target(target: &str, n: usize) -> Result<Vec<usize>, CommandError> {
    match target {
        "asc" => Ok((2..=n).collect()),
        "desc" => Ok((2..=n).rev().collect()),
        list => list
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| CommandError::invalid(format!("--target: '{t}' is not an order")))
            })
            .collect(),
    }
}

fn invariants(src: MatrixSource) -> Result<Output, CommandError> {
    let x = src.matrix();
    if !x.is_square() {
        return Err(CommandError::invalid("invariants need a square matrix"));
    }
    let n = x.rows();
    let omegas = match &src {
        MatrixSource::Chain(d) if n == 4 || n == 5 => {
            let canonical = gauge_fix(&reorder_to(d, FactorOrder::Ascending)?);
            Some(omega_from_params(&canonical)?.omegas)
        }
        _ => None,
    };
    let report = InvariantsReport {
        n,
        independent_phases: count_independent_phases(n.max(1)),
        plaquettes: plaquette_entries(&plaquette_table(&x)?),
        triangles: triangle_areas(&x)?.iter().map(|p| PolygonEntry::new(p, SIDE_TOL)).collect(),
        omegas,
    };
    Ok(Output::ok(to_json(&report)?))
}

fn panel(x: &ComplexMatrix, tol: f64) -> Result<Output, CommandError> {
    let lattice = panel_lattice(x)?;
    let (relation_residuals, basis) = if x.rows() == 4 {
        let residuals = panel_relation_residuals(x, tol)?;
        let basis = basis_solve_n4(x, tol)?;
        (Some(residuals), Some(BasisReport::from(&basis)))
    } else {
        (None, None)
    };
    let report = PanelReport { n: x.rows(), lattice: lattice_grid(&lattice), relation_residuals, basis };
    Ok(Output::ok(to_json(&report)?))
}

fn symmetric(input: Option<&std::path::Path>, tol: f64) -> Result<Output, CommandError> {
    let text = read_source(input)?;
    let (x, params): (ComplexMatrix, Option<SymmetricParams>) = if has_key(&text, "thetas") {
        let p = recunitary::json::symmetric_from_json(&text)?;
        (compose_symmetric(&p), Some(p))
    } else {
        (recunitary::json::matrix_from_json(&text)?, None)
    };
    if !x.is_square() {
        return Err(CommandError::invalid("symmetry check needs a square matrix"));
    }
    let n = x.rows();
    let symmetry_defect = x.symmetry_defect();
    let unitarity_defect = x.unitarity_defect()?;
    let j = if n >= 3 { Some(plaquette_table(&x)?.im((0, 1), (0, 1))?) } else { None };
    let report = SymmetricReport {
        n,
        param_count: params.as_ref().map(|p| p.param_count()),
        symmetry_defect,
        unitarity_defect,
        j,
        matrix: MatrixJson::from_matrix(&x)?,
    };
    let failure = if symmetry_defect > tol {
        Some(format!("matrix is not symmetric: defect {symmetry_defect:e} exceeds {tol:e}"))
    } else if unitarity_defect > UNITARITY_TOL {
        Some(format!("matrix is not unitary: defect {unitarity_defect:e} exceeds {UNITARITY_TOL:e}"))
    } else {
        None
    };
    Ok(Output { stdout: to_json(&report)?, failure })
}

struct Checks {
    tol: f64,
    items: Vec<Check>,
}

impl Checks {
    fn record(&mut self, name: &str, residual: f64) {
        let status = if residual <= self.tol { CheckStatus::Pass } else { CheckStatus::Fail };
        self.items.push(Check { name: name.into(), residual: Some(residual), status, note: None });
    }

    fn skip(&mut self, name: &str, note: impl Into<String>) {
        self.items.push(Check {
            name: name.into(),
            residual: None,
            status: CheckStatus::Skipped,
            note: Some(note.into()),
        });
    }

    fn fail(&mut self, name: &str, note: impl Into<String>) {
        self.items.push(Check {
            name: name.into(),
            residual: None,
            status: CheckStatus::Fail,
            note: Some(note.into()),
        });
    }
}

/// Fixed external phases for the rephasing check, so output is reproducible.
fn probe_phases(n: usize, scale: f64) -> PhaseVector {
    PhaseVector::new((0..n).map(|i| scale * (i as f64 + 1.0).powi(2)).collect()).expect("finite phases")
}

fn chain_checks(c: &mut Checks, x: &ComplexMatrix, d: &Decomposition) -> Result<(), CommandError> {
    let n = x.rows();
    c.record("round_trip", d.compose().max_diff(x));
    c.record("parameter_count", (d.real_parameter_count() as f64 - (n * n) as f64).abs());
    let theta_excess = d.factors().iter().map(|f| (-f.theta()).max(f.theta() - FRAC_PI_2).max(0.0)).fold(0.0, f64::max);
    c.record("theta_range", theta_excess);
    let generator_residual =
        d.factors().iter().map(|f| exp_generator(f.theta(), &generator(f)).max_diff(&f.embed())).fold(0.0, f64::max);
    c.record("generator_exponential", generator_residual);
    if n >= 3 {
        c.record("reorder_ascending", reorder_to(d, FactorOrder::Ascending)?.compose().max_diff(x));
    }
    c.record("gauge_fix", gauge_fix(d).compose().max_diff(x));
    Ok(())
}

fn invariant_checks(c: &mut Checks, x: &ComplexMatrix) -> Result<(), CommandError> {
    let n = x.rows();
    let table = plaquette_table(x)?;
    let rephased = phase_matrix(&probe_phases(n, 0.37)).matmul(x)?.matmul(&phase_matrix(&probe_phases(n, -0.21)))?;
    c.record("rephasing_invariance", plaquette_table(&rephased)?.max_diff(&table));
    if n == 3 {
        c.record("epsilon_pattern", epsilon_pattern_residual(&table)?);
        let j = table.im((0, 1), (0, 1))?;
        let spread = triangle_areas(x)?.iter().map(|t| (t.area - j.abs() / 2.0).abs()).fold(0.0, f64::max);
        c.record("triangle_areas", spread);
    }
    if n == 4 {
        match panel_relation_residuals(x, SIDE_TOL) {
            Ok(r) => c.record("panel_relations", r.iter().map(|v| v.abs()).fold(0.0, f64::max)),
            Err(e) => c.skip("panel_relations", e.to_string()),
        }
        match basis_solve_n4(x, SIDE_TOL) {
            Ok(s) => c.record("panel_basis", s.max_deviation()),
            Err(e) => c.skip("panel_basis", e.to_string()),
        }
    }
    Ok(())
}

fn verify(x: &ComplexMatrix, tol: f64) -> Result<Output, CommandError> {
    if !x.is_square() {
        return Err(CommandError::invalid("verify needs a square matrix"));
    }
    let mut c = Checks { tol, items: Vec::new() };
    let defect = x.unitarity_defect()?;
    c.record("unitarity", defect);
    if defect <= tol {
        match decompose(x, tol) {
            Ok(d) => chain_checks(&mut c, x, &d)?,
            Err(e) => c.fail("round_trip", e.to_string()),
        }
        invariant_checks(&mut c, x)?;
    } else {
        c.skip("identities", "input is not unitary");
    }
    let max_residual = c.items.iter().filter_map(|k| k.residual).fold(0.0, f64::max);
    let failed: Vec<&Check> = c.items.iter().filter(|k| k.status == CheckStatus::Fail).collect();
    let failure = (!failed.is_empty()).then(|| {
        failed
            .iter()
            .map(|k| match k.residual {
                Some(r) => format!("{} residual {r:e} exceeds {tol:e}", k.name),
                None => format!("{}: {}", k.name, k.note.as_deref().unwrap_or("failed")),
            })
            .collect::<Vec<_>>()
            .join("; ")
    });
    let report = VerifyReport { n: x.rows(), tolerance: tol, checks: c.items, max_residual, passed: failure.is_none() };
    Ok(Output { stdout: to_json(&report)?, failure })
}
