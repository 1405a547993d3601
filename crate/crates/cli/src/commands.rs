//! One function per subcommand, each producing a table.

use rayon::prelude::*;

use xxchain::spectrum::ENUMERATION_CAP;
use xxchain::states::{label_to_occupation, EIGENSTATE_CAP};
use xxchain::*;

use crate::config::{Command, RunConfig};
use crate::emit::{Cell, Table};
use crate::error::{CliError, Result};
use crate::validate;

/// Rows plus anything worth saying on standard error.
#[derive(Debug, Default)]
pub struct Report {
    pub table: Option<Table>,
    pub notes: Vec<String>,
    pub failures: usize,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Report {
            table: Some(table),
            ..Default::default()
        }
    }
}

const DEFAULT_SIZES: [usize; 6] = [8, 16, 32, 64, 128, 256];
const DEFAULT_DB: f64 = 1e-4;

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    match cfg.subcommand {
        Command::Spectrum => spectrum(cfg).map(Report::from),
        Command::GroundState => ground_state_rows(cfg).map(Report::from),
        Command::Crossings => crossings(cfg).map(Report::from),
        Command::Thermal => thermal(cfg).map(Report::from),
        Command::Purity => purity(cfg).map(Report::from),
        Command::PurityDerivative => purity_derivative(cfg).map(Report::from),
        Command::Negativity => negativity_cmd(cfg),
        Command::ThermoLimit => thermo_limit(cfg).map(Report::from),
        Command::Validate => validate::run(cfg),
    }
}

fn params(cfg: &RunConfig, n: usize, b: f64) -> Result<ChainParams> {
    Ok(ChainParams::new(n, cfg.j, b)?)
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(XxError::Size { what, n, cap }.into());
    }
    Ok(())
}

/// `(b, t)` pairs, field-major.
fn grid(bs: &[f64], ts: &[f64]) -> Vec<(f64, f64)> {
    bs.iter().flat_map(|&b| ts.iter().map(move |&t| (b, t))).collect()
}

/// Evaluates `f` at every point in parallel, keeping input order.
fn sweep<P, F>(points: &[P], f: F) -> Result<Vec<Vec<Cell>>>
where
    P: Sync,
    F: Fn(&P) -> Result<Vec<Vec<Cell>>> + Sync + Send,
{
    let chunks: Vec<Vec<Vec<Cell>>> = points.par_iter().map(f).collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn occupation_string(occ: &OccupationState) -> String {
    occ.bits().iter().map(|b| char::from(b'0' + b)).collect()
}

fn spectrum(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.require_n()?;
    check_cap("spectrum", n, ENUMERATION_CAP)?;
    let bs = cfg.require_b()?;
    let dim = 1usize << n;
    let labels: Vec<(SectorIndex, OccupationState)> = (1..=dim)
        .map(|l| Ok((label_to_sector_index(l, n)?, label_to_occupation(l, n)?)))
        .collect::<xxchain::Result<_>>()?;
    let mut table = Table::new(&["n", "b", "label", "r", "m", "occupation", "energy"]);
    table.extend(sweep(&bs, |&b| {
        let p = params(cfg, n, b)?;
        labels
            .iter()
            .map(|(idx, occ)| {
                Ok(vec![
                    n.into(),
                    b.into(),
                    idx.l.into(),
                    idx.r.into(),
                    idx.m.into(),
                    occupation_string(occ).into(),
                    eigenenergy(&p, occ)?.into(),
                ])
            })
            .collect()
    })?);
    Ok(table)
}

fn ground_state_rows(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.require_n()?;
    check_cap("ground state", n, EIGENSTATE_CAP)?;
    let k = match (cfg.k, cfg.b) {
        (Some(k), _) => k,
        (None, Some(crate::config::Axis::Value(b))) => ground_sector(&params(cfg, n, b)?).lower(),
        _ => {
            return Err(CliError::usage(
                "ground-state needs --k, or a single --b to pick the ground sector",
            ))
        }
    };
    let state = ground_state(n, k)?;
    let mut table = Table::new(&["n", "k", "positions", "spins", "amplitude"]);
    for (positions, amplitude) in state.iter() {
        let spins: String = (1..=n)
            .map(|site| if positions.contains(&site) { 'd' } else { 'u' })
            .collect();
        let positions = positions.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        table.push(vec![
            n.into(),
            k.into(),
            positions.into(),
            spins.into(),
            amplitude.into(),
        ]);
    }
    Ok(table)
}

fn crossings(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.require_n()?;
    // validates n and j
    params(cfg, n, 0.0)?;
    let mut table = Table::new(&["k", "b_k"]);
    for (k, b) in crossing_fields(n, cfg.j).fields_b.into_iter().enumerate() {
        table.push(vec![(k + 1).into(), b.into()]);
    }
    Ok(table)
}

fn thermal(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.require_n()?;
    check_cap("thermal populations", n, ENUMERATION_CAP)?;
    let points = grid(&cfg.require_b()?, &cfg.require_t()?);
    let dim = 1usize << n;
    let labels: Vec<(SectorIndex, OccupationState)> = (1..=dim)
        .map(|l| Ok((label_to_sector_index(l, n)?, label_to_occupation(l, n)?)))
        .collect::<xxchain::Result<_>>()?;
    let mut table = Table::new(&[
        "n",
        "b",
        "t",
        "beta",
        "label",
        "r",
        "m",
        "occupation",
        "energy",
        "probability",
    ]);
    table.extend(sweep(&points, |&(b, t)| {
        let p = params(cfg, n, b)?;
        let beta = beta_from_temperature(t)?;
        let ensemble = boltzmann_weights(&p, beta)?;
        labels
            .iter()
            .zip(&ensemble.probabilities)
            .map(|((idx, occ), &prob)| {
                Ok(vec![
                    n.into(),
                    b.into(),
                    t.into(),
                    beta.into(),
                    idx.l.into(),
                    idx.r.into(),
                    idx.m.into(),
                    occupation_string(occ).into(),
                    eigenenergy(&p, occ)?.into(),
                    prob.into(),
                ])
            })
            .collect()
    })?);
    Ok(table)
}

/// Eigenvectors for the dense columns, or `None` above the cap.
fn dense_basis(cfg: &RunConfig, n: usize) -> Result<Option<SectorBasis>> {
    if n > cfg.dense_cap {
        return Ok(None);
    }
    Ok(Some(SectorBasis::new(n, cfg.dense_cap)?))
}

fn purity(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.require_n()?;
    let points = grid(&cfg.require_b()?, &cfg.require_t()?);
    let basis = dense_basis(cfg, n)?;
    let mut table = Table::new(&["n", "b", "t", "beta", "purity_analytic", "purity_dense"]);
    table.extend(sweep(&points, |&(b, t)| {
        let p = params(cfg, n, b)?;
        let beta = beta_from_temperature(t)?;
        let analytic = purity_analytic(&p, beta)?;
        let dense = match &basis {
            Some(basis) => Some(purity_dense(&basis.density_matrix(&boltzmann_weights(&p, beta)?)?)),
            None => None,
        };
        Ok(vec![vec![
            n.into(),
            b.into(),
            t.into(),
            beta.into(),
            analytic.into(),
            dense.into(),
        ]])
    })?);
    Ok(table)
}

fn purity_derivative(cfg: &RunConfig) -> Result<Table> {
    let n = cfg.require_n()?;
    let points = grid(&cfg.require_b()?, &cfg.require_t()?);
    let db = cfg.db.unwrap_or(DEFAULT_DB);
    let mut table = Table::new(&["n", "b", "t", "beta", "purity", "dpurity_db"]);
    table.extend(sweep(&points, |&(b, t)| {
        let beta = beta_from_temperature(t)?;
        let at = |x: f64| -> Result<f64> { Ok(purity_analytic(&params(cfg, n, x)?, beta)?) };
        let slope = (at(b + db)? - at(b - db)?) / (2.0 * db);
        Ok(vec![vec![
            n.into(),
            b.into(),
            t.into(),
            beta.into(),
            at(b)?.into(),
            slope.into(),
        ]])
    })?);
    Ok(table)
}

fn negativity_cmd(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n.unwrap_or(2);
    if cfg.t.is_none() {
        return critical_temperatures(cfg, n);
    }
    check_cap("negativity", n, cfg.dense_cap)?;
    let split = match &cfg.split_a {
        Some(sites) => BipartiteSplit::new(n, sites)?,
        None => BipartiteSplit::half(n)?,
    };
    let label = split.to_string();
    let basis = SectorBasis::new(n, cfg.dense_cap)?;
    let points = grid(&cfg.b.map_or(vec![0.0], |a| a.points()), &cfg.require_t()?);
    let mut table = Table::new(&["n", "b", "t", "split", "negativity", "separable"]);
    table.extend(sweep(&points, |&(b, t)| {
        let p = params(cfg, n, b)?;
        let beta = beta_from_temperature(t)?;
        let ensemble = boltzmann_weights(&p, beta)?;
        let neg = negativity(&basis.density_matrix(&ensemble)?, &split)?;
        // the population criterion is exact only for two spins
        let separable = if n == 2 {
            let [p1, p2, p3, p4] = two_qubit_populations(&p, beta)?;
            Cell::Bool(two_qubit_separable(p1, p2, p3, p4)?)
        } else {
            Cell::Empty
        };
        Ok(vec![vec![
            n.into(),
            b.into(),
            t.into(),
            label.clone().into(),
            neg.into(),
            separable,
        ]])
    })?);
    Ok(table.into())
}

fn critical_temperatures(cfg: &RunConfig, n: usize) -> Result<Report> {
    if n != 2 {
        return Err(CliError::usage(
            "the separability temperature needs --n 2 (give --t or --t-range to sweep negativity)",
        ));
    }
    let closed_form = cfg.j / (1.0 + 2f64.sqrt()).ln();
    let bs = cfg.b.map_or(vec![0.0], |a| a.points());
    let mut report = Report::default();
    let mut table = Table::new(&["n", "b", "j", "kt_c", "kt_c_closed_form"]);
    for b in bs {
        let kt_c = critical_temperature_two_qubit(&params(cfg, n, b)?)?;
        report.notes.push(format!("kT_c = {kt_c:.6} at B = {b}, J = {}", cfg.j));
        table.push(vec![n.into(), b.into(), cfg.j.into(), kt_c.into(), closed_form.into()]);
    }
    report.table = Some(table);
    Ok(report)
}

fn thermo_limit(cfg: &RunConfig) -> Result<Table> {
    if cfg.j != 1.0 {
        return Err(CliError::usage(
            "thermo-limit is tabulated at J = 1; rescale B by J instead",
        ));
    }
    let bs = cfg.require_b()?;
    let sizes = match (&cfg.sizes, cfg.n) {
        (Some(s), _) => s.clone(),
        (None, Some(n)) => vec![n],
        (None, None) => DEFAULT_SIZES.to_vec(),
    };
    let mut table = Table::new(&["n", "b", "energy_density", "limit", "deviation"]);
    table.extend(sweep(&bs, |&b| {
        Ok(convergence_report(b, &sizes)?
            .into_iter()
            .map(|r| {
                vec![
                    r.n.into(),
                    r.b.into(),
                    r.energy_density.into(),
                    r.limit_value.into(),
                    r.deviation.into(),
                ]
            })
            .collect())
    })?);
    Ok(table)
}
