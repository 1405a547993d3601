//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p xxchain --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;

use xxchain::oracle::{build_hamiltonian, diagonalize};
use xxchain::states::{label_to_occupation, occupation_to_label};
use xxchain::thermal::thermal_density_matrix_with_cap;
use xxchain::{
    critical_temperature_two_qubit, crossing_mixture, enumerate_levels, finite_size_energy_density, ground_energy,
    ground_sector, ground_state, label_to_sector_index, purity_analytic, purity_dense, sector_index_to_label,
    thermal_density_matrix, thermo_energy_density, two_qubit_populations, ChainParams, GroundSector,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn params(n: usize, b: f64) -> ChainParams {
    ChainParams::unit(n, b).expect("valid parameters")
}

/// 1. Closed-form level energies equal the dense eigenvalues.
fn oracle_spectrum_equivalence() -> Outcome {
    let fields = [-1.2, -0.5, 0.0, 0.31, 0.5, 0.81, 1.2];
    let mut worst = 0.0f64;
    for n in 1..=8 {
        for &b in &fields {
            let p = params(n, b);
            let mut closed: Vec<f64> = enumerate_levels(&p).unwrap().map(|l| l.energy).collect();
            closed.sort_by(f64::total_cmp);
            let dense = diagonalize(&build_hamiltonian(&p).unwrap()).unwrap().values;
            for (a, d) in closed.iter().zip(&dense) {
                worst = worst.max((a - d).abs());
            }
        }
    }
    check(worst <= 1e-10, format!("max |Δε| = {worst:.2e} (tol 1e-10)"))
}

/// 2. N = 4 sector ground states against the printed amplitudes.
fn four_site_fixtures() -> Outcome {
    let s5 = 5f64.sqrt();
    let a1m = 0.5 * (1.0 - 1.0 / s5).sqrt();
    let a1p = 0.5 * (1.0 + 1.0 / s5).sqrt();
    let a2 = -1.0 / (2.0 * s5);
    let (a3m, a3p) = (-a1m, -a1p);
    // lexicographic tuples of flipped sites
    let expected: [Vec<f64>; 5] = [
        vec![1.0],
        vec![a1m, a1p, a1p, a1m],
        vec![a2, s5 * a2, 2.0 * a2, 2.0 * a2, s5 * a2, a2],
        // (1,2,3)=↓↓↓↑, (1,2,4)=↓↓↑↓, (1,3,4)=↓↑↓↓, (2,3,4)=↑↓↓↓
        vec![a3m, a3p, a3p, a3m],
        vec![1.0],
    ];
    let mut worst = 0.0f64;
    for (k, want) in expected.iter().enumerate() {
        let got = ground_state(4, k).unwrap();
        let amps = got.amplitudes();
        let sign = if amps.iter().zip(want).map(|(a, w)| a * w).sum::<f64>() < 0.0 {
            -1.0
        } else {
            1.0
        };
        for (a, w) in amps.iter().zip(want) {
            worst = worst.max((sign * a - w).abs());
        }
        if amps.len() != want.len() {
            return Err(format!(
                "sector {k}: {} amplitudes, expected {}",
                amps.len(),
                want.len()
            ));
        }
    }
    check(
        worst <= 1e-12,
        format!("max amplitude error {worst:.2e} up to global sign (tol 1e-12)"),
    )
}

/// 3. Ground-state sector changes exactly at `B = cos(kπ/5)`.
fn crossing_fields_n4() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=4 {
        let bk = (k as f64 * PI / 5.0).cos();
        let p = params(4, bk);
        let below = ground_energy(&p, k - 1).unwrap();
        let above = ground_energy(&p, k).unwrap();
        worst = worst.max((below - above).abs());
        if ground_sector(&p) != (GroundSector::Degenerate { lower: k - 1, upper: k }) {
            return Err(format!("B_{k}: sector {:?} not reported degenerate", ground_sector(&p)));
        }
        let delta = 1e-6;
        let right = ground_sector(&params(4, bk + delta));
        let left = ground_sector(&params(4, bk - delta));
        if right != GroundSector::Unique(k - 1) || left != GroundSector::Unique(k) {
            return Err(format!("B_{k}: sectors {left:?} / {right:?} around crossing"));
        }
        // dense ground vector lives in the predicted magnetization sector
        for (b, sector) in [(bk + 1e-3, k - 1), (bk - 1e-3, k)] {
            let eig = diagonalize(&build_hamiltonian(&params(4, b)).unwrap()).unwrap();
            let ground = eig.vectors.column(0);
            let (idx, _) = ground.iter().enumerate().fold(
                (0, 0.0),
                |acc, (i, v)| {
                    if v.abs() > acc.1 {
                        (i, v.abs())
                    } else {
                        acc
                    }
                },
            );
            if idx.count_ones() as usize != sector {
                return Err(format!("oracle ground state at B = {b} not in sector {sector}"));
            }
        }
    }
    check(
        worst <= 1e-12,
        format!("max |ε_g^(k-1) - ε_g^k| at B_k = {worst:.2e} (tol 1e-12)"),
    )
}

/// 4. Product-formula purity equals `Tr ρ²` of the dense Gibbs state.
fn purity_identity() -> Outcome {
    let fields = [-1.2, -0.5, 0.0, 0.31, 0.5, 0.81, 1.2];
    let temps = [0.05, 0.1, 0.3, 0.7, 1.0, 2.0, 5.0];
    let mut worst = 0.0f64;
    let mut worst_inf = 0.0f64;
    for n in 1..=8 {
        for &b in &fields {
            let p = params(n, b);
            for &t in &temps {
                let beta = 1.0 / t;
                let analytic = purity_analytic(&p, beta).unwrap();
                let dense = purity_dense(&thermal_density_matrix(&p, beta).unwrap());
                worst = worst.max((analytic - dense).abs());
            }
            let floor = 0.5f64.powi(n as i32);
            let analytic = purity_analytic(&p, 0.0).unwrap();
            let dense = purity_dense(&thermal_density_matrix(&p, 0.0).unwrap());
            worst_inf = worst_inf
                .max(((analytic - floor) / floor).abs())
                .max(((dense - floor) / floor).abs());
        }
    }
    check(
        worst <= 1e-10 && worst_inf <= 1e-14,
        format!("max |Δpurity| = {worst:.2e} (tol 1e-10); β=0 rel error {worst_inf:.2e} (tol 1e-14)"),
    )
}

/// 5. Near-zero temperature purity is 1 off crossings and 1/2 on them.
fn zero_temperature_dichotomy() -> Outcome {
    let beta = 1e4;
    let generic = params(10, 0.6);
    let crossing = params(10, (3.0 * PI / 11.0).cos());
    let pg = purity_analytic(&generic, beta).unwrap();
    let pc = purity_analytic(&crossing, beta).unwrap();
    let dg = purity_dense(&thermal_density_matrix(&generic, beta).unwrap());
    let dc = purity_dense(&thermal_density_matrix(&crossing, beta).unwrap());
    let ok =
        (pg - 1.0).abs() <= 1e-6 && (dg - 1.0).abs() <= 1e-6 && (pc - 0.5).abs() <= 1e-3 && (dc - 0.5).abs() <= 1e-3;
    check(
        ok,
        format!("B=0.6: {pg:.9} (dense {dg:.9}); B=cos(3π/11): {pc:.9} (dense {dc:.9})"),
    )
}

/// 6. Two-spin separability threshold.
fn two_spin_critical_temperature() -> Outcome {
    let closed = 1.0 / (1.0 + 2f64.sqrt()).ln();
    let mut lines = Vec::new();
    let mut ok = true;
    for b in [0.0, 0.3, 0.7, 1.5] {
        let t = critical_temperature_two_qubit(&params(2, b)).unwrap();
        ok &= (t - 1.134593).abs() <= 1e-5 && (t - closed).abs() <= 1e-8;
        lines.push(format!("B={b}: {t:.9}"));
    }
    check(ok, format!("{} vs 1/ln(1+√2) = {closed:.9}", lines.join(", ")))
}

/// 7. Finite chains approach the infinite-chain energy density.
fn thermodynamic_limit() -> Outcome {
    let mut worst_2000 = 0.0f64;
    for b in [0.0, 0.3, 0.7] {
        let d = (finite_size_energy_density(&params(2000, b)) - thermo_energy_density(b)).abs();
        worst_2000 = worst_2000.max(d);
    }
    let mut worst_50 = 0.0f64;
    for i in 0..=3000 {
        let b = -1.5 + 0.001 * i as f64;
        let d = (finite_size_energy_density(&params(50, b)) - thermo_energy_density(b)).abs();
        worst_50 = worst_50.max(d);
    }
    check(
        worst_2000 < 2e-3 && worst_50 < 0.03,
        format!("N=2000 max dev {worst_2000:.2e} (tol 2e-3); N=50 max dev over |B|≤1.5 {worst_50:.2e} (tol 0.03)"),
    )
}

/// 8. Crossing mixture has purity 1/2 and is the cold limit of the Gibbs state.
fn crossing_mixture_limit() -> Outcome {
    let mut worst_purity = 0.0f64;
    let mut worst_norm = 0.0f64;
    for n in [2usize, 4, 6] {
        for k in 0..n {
            let mix = crossing_mixture(n, k).unwrap();
            worst_purity = worst_purity.max((purity_dense(&mix) - 0.5).abs());
            // sectors k and k+1 cross where Λ_{k+1} vanishes
            let b = ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            let cold = thermal_density_matrix_with_cap(&params(n, b), 1e3, 10).unwrap();
            worst_norm = worst_norm.max((cold.matrix() - mix.matrix()).amax());
        }
    }
    check(
        worst_purity <= 1e-14 && worst_norm <= 1e-6,
        format!("purity error {worst_purity:.2e} (tol 1e-14); β=1e3 max-norm gap {worst_norm:.2e} (tol 1e-6)"),
    )
}

/// 9. N = 2 populations: sharp exchange at kT = 0.1, smooth at kT = 1.
fn two_spin_population_curves() -> Outcome {
    let h = 1e-3;
    let grid: Vec<f64> = (0..=3000).map(|i| -1.5 + h * i as f64).collect();
    let curves = |t: f64| -> Vec<[f64; 4]> {
        grid.iter()
            .map(|&b| two_qubit_populations(&params(2, b), 1.0 / t).unwrap())
            .collect()
    };
    // (max |dp/dB| over all four populations, field where it occurs)
    let steepest = |pops: &[[f64; 4]]| -> (f64, Vec<f64>) {
        let mut best = 0.0f64;
        let mut peaks = Vec::new();
        #[allow(clippy::needless_range_loop)]
        for idx in 0..4 {
            let mut local_best = (0.0f64, 0.0);
            for i in 1..grid.len() - 1 {
                let d = ((pops[i + 1][idx] - pops[i - 1][idx]) / (2.0 * h)).abs();
                if d > local_best.0 {
                    local_best = (d, grid[i]);
                }
            }
            best = best.max(local_best.0);
            if local_best.0 > 1.0 {
                peaks.push(local_best.1);
            }
        }
        (best, peaks)
    };
    let (cold_max, cold_peaks) = steepest(&curves(0.1));
    let (warm_max, _) = steepest(&curves(1.0));
    let near_half = !cold_peaks.is_empty() && cold_peaks.iter().all(|b| (b.abs() - 0.5).abs() < 0.05);
    let has_both = cold_peaks.iter().any(|&b| b > 0.0) && cold_peaks.iter().any(|&b| b < 0.0);
    check(
        near_half && has_both && warm_max < cold_max / 5.0,
        format!("kT=0.1 max |dp/dB| {cold_max:.3} at {cold_peaks:?}; kT=1 max {warm_max:.3}"),
    )
}

/// 10. `(r, m) ↔ l` is a bijection for every label.
fn index_bijection() -> Outcome {
    for n in 1..=12 {
        let mut seen = vec![false; 1 << n];
        for l in 1..=1usize << n {
            let idx = label_to_sector_index(l, n).unwrap();
            if sector_index_to_label(idx.r, idx.m, n).unwrap() != l {
                return Err(format!("N={n}: label {l} does not round-trip"));
            }
            let occ = label_to_occupation(l, n).unwrap();
            if occ.m() != idx.m || occupation_to_label(&occ).unwrap().l != l {
                return Err(format!("N={n}: occupation of label {l} does not round-trip"));
            }
            if std::mem::replace(&mut seen[occ.mask() as usize], true) {
                return Err(format!("N={n}: occupation {:#b} labelled twice", occ.mask()));
            }
        }
    }
    Ok("all labels round-trip for N ≤ 12".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle spectrum equivalence", oracle_spectrum_equivalence),
        ("N=4 ground-state fixtures", four_site_fixtures),
        ("N=4 crossing fields", crossing_fields_n4),
        ("purity identity", purity_identity),
        ("T→0 purity dichotomy", zero_temperature_dichotomy),
        ("N=2 critical temperature", two_spin_critical_temperature),
        ("thermodynamic limit", thermodynamic_limit),
        ("crossing mixture", crossing_mixture_limit),
        ("N=2 population curves", two_spin_population_curves),
        ("index bijection", index_bijection),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
