//! Closed-form free-fermion spectrum of the open XX chain.
//!
//! After the Jordan–Wigner map and the sine transform the Hamiltonian
//! `H = -Σ (J/2)(σˣσˣ + σʸσʸ) - B Σ σᶻ` becomes `Σ_k Λ_k d_k† d_k - N B` with
//! mode energies `Λ_k = 2B - 2J cos(πk/(N+1))`. The fermion vacuum is the
//! all-up spin state; every occupied mode flips one spin.

use std::f64::consts::PI;

use crate::error::{Result, XxError};

/// Largest chain enumerated level by level (energies only, no vectors).
pub const ENUMERATION_CAP: usize = 20;

/// Relative tolerance under which a mode energy counts as exactly zero,
/// i.e. the field sits on a level crossing.
pub const CROSSING_TOL: f64 = 1e-12;

/// Physical configuration of the chain: `n` spins, coupling `j`, field `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub n: usize,
    pub j: f64,
    pub b: f64,
}

impl ChainParams {
    pub fn new(n: usize, j: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(XxError::invalid("chain needs at least one spin"));
        }
        if !(j.is_finite() && j > 0.0) {
            return Err(XxError::invalid(format!(
                "coupling must be positive and finite, got {j}"
            )));
        }
        if !b.is_finite() {
            return Err(XxError::invalid(format!("field must be finite, got {b}")));
        }
        Ok(ChainParams { n, j, b })
    }

    /// Chain with `J = 1`, the natural energy unit.
    pub fn unit(n: usize, b: f64) -> Result<Self> {
        Self::new(n, 1.0, b)
    }

    /// Same chain at another field value.
    pub fn with_field(self, b: f64) -> Result<Self> {
        Self::new(self.n, self.j, b)
    }

    /// `J cos(πk/(N+1))`, the hopping part of mode `k` (one-based).
    pub fn mode_cosine(&self, k: usize) -> f64 {
        self.j * (PI * k as f64 / (self.n + 1) as f64).cos()
    }

    fn zero_tol(&self) -> f64 {
        CROSSING_TOL * (self.b.abs() + self.j)
    }
}

/// Single-fermion energies `Λ_1 < Λ_2 < ... < Λ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    pub lambdas: Vec<f64>,
}

impl ModeSpectrum {
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// `Λ_k` for one-based `k`.
    pub fn lambda(&self, k: usize) -> f64 {
        self.lambdas[k - 1]
    }
}

/// Occupation vector `α` of the `N` fermion modes; labels one eigenstate.
///
/// Bit `k - 1` of the mask is `α_k`. Each occupied mode carries one flipped
/// spin, so [`OccupationState::m`] is also the magnetization sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OccupationState {
    n: usize,
    mask: u64,
}

impl OccupationState {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(XxError::invalid(format!("{n} modes exceed the 64-mode limit")));
        }
        if n < 64 && mask >> n != 0 {
            return Err(XxError::invalid(format!("mask {mask:#b} has bits beyond {n} modes")));
        }
        Ok(OccupationState { n, mask })
    }

    /// From an explicit `α` vector of zeros and ones.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut mask = 0u64;
        for (i, &a) in bits.iter().enumerate() {
            match a {
                0 => {}
                1 => mask |= 1 << i,
                other => return Err(XxError::invalid(format!("occupation entry {other} is not 0 or 1"))),
            }
        }
        Self::from_mask(bits.len(), mask)
    }

    /// Modes `1..=k` filled: the ground state of sector `k`.
    pub fn lowest(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(XxError::invalid(format!("sector {k} out of range 0..={n}")));
        }
        let mask = if k == 0 { 0 } else { u64::MAX >> (64 - k) };
        Self::from_mask(n, mask)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Number of occupied modes, equal to the number of flipped spins.
    pub fn m(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_occupied(&self, k: usize) -> bool {
        (1..=self.n).contains(&k) && self.mask >> (k - 1) & 1 == 1
    }

    /// One-based indices of occupied modes, ascending.
    pub fn occupied_modes(&self) -> Vec<usize> {
        crate::combinatorics::mask_positions(self.mask)
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.n).map(|i| (self.mask >> i & 1) as u8).collect()
    }
}

/// One of the `2^N` levels: occupation and its energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub occupation: OccupationState,
    pub energy: f64,
}

/// Fields `B_k = J cos(kπ/(N+1))`, `k = 1..N`, descending, where ground
/// states of neighbouring magnetization sectors become degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingSet {
    pub fields_b: Vec<f64>,
}

/// Magnetization sector hosting the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundSector {
    Unique(usize),
    /// The field sits on a crossing; sectors `lower` and `upper = lower + 1`
    /// have the same lowest energy.
    Degenerate {
        lower: usize,
        upper: usize,
    },
}

impl GroundSector {
    /// Sector index, taking the lower one at a crossing.
    pub fn lower(&self) -> usize {
        match *self {
            GroundSector::Unique(k) => k,
            GroundSector::Degenerate { lower, .. } => lower,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, GroundSector::Degenerate { .. })
    }
}

pub fn mode_energies(params: &ChainParams) -> ModeSpectrum {
    let lambdas = (1..=params.n)
        .map(|k| 2.0 * params.b - 2.0 * params.mode_cosine(k))
        .collect();
    ModeSpectrum { lambdas }
}

/// `ε = -(N - 2m)B - 2J Σ_k α_k cos(πk/(N+1))`.
pub fn eigenenergy(params: &ChainParams, occ: &OccupationState) -> Result<f64> {
    if occ.n() != params.n {
        return Err(XxError::invalid(format!(
            "occupation has {} modes, chain has {}",
            occ.n(),
            params.n
        )));
    }
    Ok(energy_unchecked(params, occ.mask()))
}

fn energy_unchecked(params: &ChainParams, mask: u64) -> f64 {
    let n = params.n as f64;
    let m = mask.count_ones() as f64;
    let mut hop = 0.0;
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize + 1;
        hop += params.mode_cosine(k);
        bits &= bits - 1;
    }
    -(n - 2.0 * m) * params.b - 2.0 * hop
}

pub fn crossing_fields(n: usize, j: f64) -> CrossingSet {
    let fields_b = (1..=n).map(|k| j * (k as f64 * PI / (n + 1) as f64).cos()).collect();
    CrossingSet { fields_b }
}

/// Number of negative modes, or the degenerate pair when a mode sits at zero.
pub fn ground_sector(params: &ChainParams) -> GroundSector {
    let tol = params.zero_tol();
    let spectrum = mode_energies(params);
    let below = spectrum.lambdas.iter().filter(|&&l| l < -tol).count();
    let zero = spectrum.lambdas.iter().filter(|&&l| l.abs() <= tol).count();
    // Λ is strictly increasing, so at most one mode can vanish.
    if zero > 0 {
        GroundSector::Degenerate {
            lower: below,
            upper: below + 1,
        }
    } else {
        GroundSector::Unique(below)
    }
}

/// `ε_g^k = -(N - 2k)B - 2J Σ_{l=1}^{k} cos(πl/(N+1))`.
pub fn ground_energy(params: &ChainParams, k: usize) -> Result<f64> {
    if k > params.n {
        return Err(XxError::invalid(format!("sector {k} out of range 0..={}", params.n)));
    }
    let hop: f64 = (1..=k).map(|l| params.mode_cosine(l)).sum();
    Ok(-(params.n as f64 - 2.0 * k as f64) * params.b - 2.0 * hop)
}

/// All `2^N` levels, occupation masks ascending.
pub fn enumerate_levels(params: &ChainParams) -> Result<impl Iterator<Item = EnergyLevel>> {
    enumerate_levels_with_cap(params, ENUMERATION_CAP)
}

pub fn enumerate_levels_with_cap(params: &ChainParams, cap: usize) -> Result<impl Iterator<Item = EnergyLevel>> {
    if params.n > cap {
        return Err(XxError::Size {
            what: "level enumeration",
            n: params.n,
            cap,
        });
    }
    let p = *params;
    Ok((0..1u64 << p.n).map(move |mask| EnergyLevel {
        occupation: OccupationState { n: p.n, mask },
        energy: energy_unchecked(&p, mask),
    }))
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta < 0.0 {
        return Err(XxError::invalid(format!(
            "inverse temperature must be >= 0, got {beta}"
        )));
    }
    Ok(())
}

/// `ln(1 + e^x)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `ln Z = βNB + Σ_k ln(1 + e^{-βΛ_k})`.
///
/// At `β = ∞` this is the limit `-β ε_min + ln g`, with `g` the ground
/// degeneracy, so it is `±∞` unless the ground energy is exactly zero.
pub fn log_partition_function(params: &ChainParams, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let spectrum = mode_energies(params);
    if beta.is_infinite() {
        let tol = params.zero_tol();
        let e_min: f64 = spectrum.lambdas.iter().map(|&l| l.min(0.0)).sum::<f64>() - params.n as f64 * params.b;
        let zeros = spectrum.lambdas.iter().filter(|l| l.abs() <= tol).count();
        return Ok(if e_min.abs() <= tol {
            zeros as f64 * std::f64::consts::LN_2
        } else {
            -e_min.signum() * f64::INFINITY
        });
    }
    let modes: f64 = spectrum.lambdas.iter().map(|&l| softplus(-beta * l)).sum();
    Ok(beta * params.n as f64 * params.b + modes)
}

/// `Z = e^{βNB} Π_k (1 + e^{-βΛ_k})`; may overflow to `+∞` where
/// [`log_partition_function`] stays finite.
pub fn partition_function(params: &ChainParams, beta: f64) -> Result<f64> {
    log_partition_function(params, beta).map(f64::exp)
}

/// Whether `Λ_k` vanishes to within [`CROSSING_TOL`].
pub(crate) fn zero_modes(params: &ChainParams, spectrum: &ModeSpectrum) -> Vec<bool> {
    let tol = params.zero_tol();
    spectrum.lambdas.iter().map(|l| l.abs() <= tol).collect()
}
