//! Partial transpose, negativity and the two-spin separability threshold.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Result, XxError};
use crate::oracle::symmetric_eigen;
use crate::spectrum::{enumerate_levels, ChainParams};
use crate::states::occupation_to_label;
use crate::thermal::{DensityMatrix, MAX_DENSE_CAP};

/// Eigenvalues of the partial transpose above `-NEGATIVITY_TOL` count as zero.
pub const NEGATIVITY_TOL: f64 = 1e-12;

/// Bracket, in `kT / J` units, searched for the two-spin critical temperature.
pub const CRITICAL_T_BRACKET: (f64, f64) = (1e-6, 1e3);

/// Two-part split of the chain sites `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSplit {
    n: usize,
    sites_a: Vec<usize>,
    sites_b: Vec<usize>,
}

impl BipartiteSplit {
    /// Split with the given one-based sites in part A and the rest in B.
    pub fn new(n: usize, sites_a: &[usize]) -> Result<Self> {
        let mut a = sites_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != sites_a.len() {
            return Err(XxError::invalid(format!("duplicate sites in {sites_a:?}")));
        }
        if let Some(bad) = a.iter().find(|&&s| !(1..=n).contains(&s)) {
            return Err(XxError::invalid(format!("site {bad} outside 1..={n}")));
        }
        let b: Vec<usize> = (1..=n).filter(|s| !a.contains(s)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(XxError::invalid("both parts of a split must be non-empty"));
        }
        Ok(BipartiteSplit {
            n,
            sites_a: a,
            sites_b: b,
        })
    }

    /// Sites `1..=n/2` against the rest.
    pub fn half(n: usize) -> Result<Self> {
        Self::new(n, &(1..=n / 2).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sites_a(&self) -> &[usize] {
        &self.sites_a
    }

    pub fn sites_b(&self) -> &[usize] {
        &self.sites_b
    }

    /// The same cut with the parts exchanged.
    pub fn swapped(&self) -> Self {
        BipartiteSplit {
            n: self.n,
            sites_a: self.sites_b.clone(),
            sites_b: self.sites_a.clone(),
        }
    }

    fn mask_b(&self) -> usize {
        self.sites_b.iter().fold(0, |acc, &s| acc | 1 << (s - 1))
    }
}

impl fmt::Display for BipartiteSplit {
    /// `1,2|3,4`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.sites_a), join(&self.sites_b))
    }
}

/// `ρ^{T_B}`: transpose the indices of the sites in part B.
pub fn partial_transpose(rho: &DensityMatrix, split: &BipartiteSplit) -> Result<DMatrix<f64>> {
    if rho.n() > MAX_DENSE_CAP {
        return Err(XxError::Size {
            what: "partial transpose",
            n: rho.n(),
            cap: MAX_DENSE_CAP,
        });
    }
    if split.n() != rho.n() {
        return Err(XxError::invalid(format!(
            "split over {} sites applied to {} spins",
            split.n(),
            rho.n()
        )));
    }
    let mb = split.mask_b();
    let m = rho.matrix();
    let dim = rho.dim();
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        let si = (i & !mb) | (j & mb);
        let sj = (j & !mb) | (i & mb);
        m[(si, sj)]
    }))
}

/// Sum of the magnitudes of the negative eigenvalues of `ρ^{T_B}`.
pub fn negativity(rho: &DensityMatrix, split: &BipartiteSplit) -> Result<f64> {
    let pt = partial_transpose(rho, split)?;
    let eig = symmetric_eigen(&pt)?;
    let total: f64 = eig.values.iter().filter(|&&v| v < -NEGATIVITY_TOL).map(|v| -v).sum();
    // an empty float sum is -0.0
    Ok(total + 0.0)
}

/// Two-spin separability from the populations of `|↑↑⟩`, `|ψ⁻⟩`, `|ψ⁺⟩`,
/// `|↓↓⟩`: separable iff `4 p₁ p₄ ≥ (p₂ − p₃)²`, the boundary included.
pub fn two_qubit_separable(p1: f64, p2: f64, p3: f64, p4: f64) -> Result<bool> {
    let ps = [p1, p2, p3, p4];
    if ps.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(XxError::invalid(format!("populations {ps:?} must be non-negative")));
    }
    let total: f64 = ps.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(XxError::invalid(format!("populations sum to {total}, not 1")));
    }
    Ok(4.0 * p1 * p4 >= (p2 - p3).powi(2))
}

/// The four populations `(p₁, p₂, p₃, p₄)` of the two-spin thermal state.
pub fn two_qubit_populations(params: &ChainParams, beta: f64) -> Result<[f64; 4]> {
    let [up, minus, plus, down] = two_qubit_labels(params)?;
    let ensemble = crate::thermal::boltzmann_weights(params, beta)?;
    let p = |l| ensemble.p(l).unwrap_or(0.0);
    Ok([p(up), p(minus), p(plus), p(down)])
}

/// Energies of `|↑↑⟩`, `|ψ⁻⟩`, `|ψ⁺⟩`, `|↓↓⟩`.
fn two_qubit_energies(params: &ChainParams) -> Result<[f64; 4]> {
    require_two_spins(params)?;
    // occupation masks: vacuum, mode 2 (antisymmetric), mode 1 (symmetric), both
    let levels: Vec<f64> = enumerate_levels(params)?.map(|l| l.energy).collect();
    Ok([levels[0b00], levels[0b10], levels[0b01], levels[0b11]])
}

fn require_two_spins(params: &ChainParams) -> Result<()> {
    if params.n != 2 {
        return Err(XxError::invalid(format!(
            "two-spin analysis needs N = 2, got {}",
            params.n
        )));
    }
    Ok(())
}

fn two_qubit_labels(params: &ChainParams) -> Result<[usize; 4]> {
    require_two_spins(params)?;
    let mut out = [0; 4];
    for (slot, mask) in out.iter_mut().zip([0b00u64, 0b10, 0b01, 0b11]) {
        let occ = crate::spectrum::OccupationState::from_mask(params.n, mask)?;
        *slot = occupation_to_label(&occ)?.l;
    }
    Ok(out)
}

/// `ln(4 p₁p₄) − ln((p₂ − p₃)²)`, with the common `1/Z²` dropped.
///
/// Positive means separable. Working with logarithms keeps the sign defined
/// when the populations themselves underflow.
fn separability_margin(energies: &[f64; 4], beta: f64) -> f64 {
    let [e1, e2, e3, e4] = *energies;
    let lhs = 4f64.ln() - beta * (e1 + e4);
    let gap = (e2 - e3).abs();
    if gap == 0.0 {
        return f64::INFINITY;
    }
    let rhs = 2.0 * (-beta * e2.min(e3) + (-(-beta * gap).exp_m1()).ln());
    lhs - rhs
}

/// Temperature `kT_c` above which the two-spin Gibbs state is separable,
/// found by bisection on `4 p₁p₄ = (p₂ − p₃)²`.
pub fn critical_temperature_two_qubit(params: &ChainParams) -> Result<f64> {
    let energies = two_qubit_energies(params)?;
    let (lo_t, hi_t) = (CRITICAL_T_BRACKET.0 * params.j, CRITICAL_T_BRACKET.1 * params.j);
    let margin = |t: f64| separability_margin(&energies, 1.0 / t);
    let (mut lo, mut hi) = (lo_t, hi_t);
    let (f_lo, f_hi) = (margin(lo), margin(hi));
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(XxError::Numerical(format!(
            "separability threshold not bracketed in ({lo_t}, {hi_t}): margins {f_lo}, {f_hi}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::ground_state;
    use crate::thermal::thermal_density_matrix;
    use approx::assert_abs_diff_eq;
    use nalgebra::DVector;

    fn singlet() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // (|↑↓⟩ − |↓↑⟩)/√2: |↑↓⟩ is index 0b10
        let psi = DVector::from_vec(vec![0.0, -s, s, 0.0]);
        DensityMatrix::pure(2, &psi).unwrap()
    }

    #[test]
    fn split_validation() {
        assert!(BipartiteSplit::new(3, &[]).is_err());
        assert!(BipartiteSplit::new(3, &[1, 2, 3]).is_err());
        assert!(BipartiteSplit::new(3, &[4]).is_err());
        assert!(BipartiteSplit::new(3, &[1, 1]).is_err());
        let s = BipartiteSplit::new(4, &[3, 1]).unwrap();
        assert_eq!(s.sites_a(), &[1, 3]);
        assert_eq!(s.sites_b(), &[2, 4]);
        assert_eq!(s.to_string(), "1,3|2,4");
        assert_eq!(BipartiteSplit::half(5).unwrap().to_string(), "1,2|3,4,5");
    }

    #[test]
    fn singlet_partial_transpose() {
        let split = BipartiteSplit::new(2, &[1]).unwrap();
        let pt = partial_transpose(&singlet(), &split).unwrap();
        let eig = symmetric_eigen(&pt).unwrap();
        assert_abs_diff_eq!(eig.values[0], -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(pt.trace(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(negativity(&singlet(), &split).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn mixed_state_is_fixed_point() {
        let split = BipartiteSplit::new(2, &[1]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let pt = partial_transpose(&mixed, &split).unwrap();
        assert_eq!(&pt, mixed.matrix());
        assert_eq!(negativity(&mixed, &split).unwrap(), 0.0);
    }

    #[test]
    fn product_state_spectrum_unchanged() {
        // ρ_A ⊗ ρ_B with non-diagonal real factors
        let ra = DMatrix::from_row_slice(2, 2, &[0.7, 0.2, 0.2, 0.3]);
        let rb = DMatrix::from_row_slice(2, 2, &[0.4, -0.1, -0.1, 0.6]);
        // site 1 is the low bit
        let rho = DensityMatrix::new(2, rb.kronecker(&ra)).unwrap();
        let split = BipartiteSplit::new(2, &[1]).unwrap();
        let before = symmetric_eigen(rho.matrix()).unwrap().values;
        let after = symmetric_eigen(&partial_transpose(&rho, &split).unwrap())
            .unwrap()
            .values;
        for (x, y) in before.iter().zip(&after) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
        assert_eq!(negativity(&rho, &split).unwrap(), 0.0);
    }

    #[test]
    fn negativity_symmetric_under_swap() {
        let rho = thermal_density_matrix(&ChainParams::unit(4, 0.2).unwrap(), 3.0).unwrap();
        for a in [vec![1], vec![1, 2], vec![2, 4]] {
            let split = BipartiteSplit::new(4, &a).unwrap();
            assert_abs_diff_eq!(
                negativity(&rho, &split).unwrap(),
                negativity(&rho, &split.swapped()).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn ground_state_half_chain_is_entangled() {
        let psi = ground_state(4, 2).unwrap().to_dense();
        let rho = DensityMatrix::pure(4, &psi).unwrap();
        assert!(negativity(&rho, &BipartiteSplit::half(4).unwrap()).unwrap() > 0.1);
    }

    #[test]
    fn split_size_mismatch() {
        let split = BipartiteSplit::new(3, &[1]).unwrap();
        assert!(partial_transpose(&singlet(), &split).is_err());
    }

    #[test]
    fn separability_examples() {
        assert!(two_qubit_separable(0.25, 0.25, 0.25, 0.25).unwrap());
        assert!(!two_qubit_separable(0.0, 1.0, 0.0, 0.0).unwrap());
        assert!(two_qubit_separable(0.5, 0.0, 0.5, 0.1).is_err());
        assert!(two_qubit_separable(-0.1, 0.6, 0.5, 0.0).is_err());
    }

    #[test]
    fn populations_order() {
        let params = ChainParams::unit(2, 0.3).unwrap();
        let [p1, p2, p3, p4] = two_qubit_populations(&params, 2.0).unwrap();
        let z = (0.6f64 * 2.0).exp() + (-2.0f64).exp() + 2f64.exp() + (-0.6f64 * 2.0).exp();
        assert_abs_diff_eq!(p1, (1.2f64).exp() / z, epsilon = 1e-14);
        assert_abs_diff_eq!(p2, (-2.0f64).exp() / z, epsilon = 1e-14);
        assert_abs_diff_eq!(p3, 2f64.exp() / z, epsilon = 1e-14);
        assert_abs_diff_eq!(p4, (-1.2f64).exp() / z, epsilon = 1e-14);
    }

    #[test]
    fn critical_temperature_needs_two_spins() {
        assert!(critical_temperature_two_qubit(&ChainParams::unit(3, 0.0).unwrap()).is_err());
    }

    #[test]
    fn margin_sign_survives_underflow() {
        let params = ChainParams::unit(2, 1.5).unwrap();
        let e = two_qubit_energies(&params).unwrap();
        assert!(separability_margin(&e, 1e6) < 0.0);
        assert!(separability_margin(&e, 1e-3) > 0.0);
    }
}
