//! Work and coherence figures of merit for a battery state.
//!
//! Sign convention: ergotropy `E = Tr[ρH] - Tr[ρ_pas H] ≥ 0`,
//! anti-ergotropy `W = Tr[ρH] - Tr[σ H] ≤ 0` where `σ` is the active
//! (maximum-energy) rearrangement, and capacity `C = E - W ≥ 0`. With
//! these signs `C` depends only on the spectra of `ρ` and `H`, hence is
//! invariant under any unitary acting on `ρ`. [`injection_cost`] gives `|W|`.

use crate::charging::evolve;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix4, DensityMatrix4, EigenSystem4};
use crate::model::{hamiltonian, DimerParams};

/// Default central-difference step (in `tau`) for [`instantaneous_power`].
pub const DEFAULT_POWER_STEP: f64 = 1e-5;

/// Two state eigenvalues closer than this are treated as a level crossing.
pub const POPULATION_CROSSING_GAP: f64 = 1e-8;

fn descending(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn ascending(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(f64::total_cmp);
    v
}

fn dot4(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Populations paired with energies, largest population on the ground level.
pub fn passive_state(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<DensityMatrix4> {
    let pops = descending(rho.spectrum()?);
    let energies = hermitian_eig(h)?;
    Ok(DensityMatrix4::from_matrix_unchecked(
        energies.assemble(pops),
    ))
}

/// Populations paired with energies, largest population on the top level.
pub fn active_state(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<DensityMatrix4> {
    let pops = ascending(rho.spectrum()?);
    let energies = hermitian_eig(h)?;
    Ok(DensityMatrix4::from_matrix_unchecked(
        energies.assemble(pops),
    ))
}

/// Mean energy of a state together with the energies of its passive and
/// active rearrangements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWindow {
    pub mean: f64,
    pub passive: f64,
    pub active: f64,
}

impl EnergyWindow {
    pub fn new(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<Self> {
        let levels = hermitian_eig(h)?.values();
        Self::with_levels(rho, h, levels)
    }

    /// As [`EnergyWindow::new`] with the ascending spectrum of `h` supplied.
    pub fn with_levels(rho: &DensityMatrix4, h: &ComplexMatrix4, levels: [f64; 4]) -> Result<Self> {
        let pops = rho.spectrum()?;
        Ok(Self {
            mean: rho.expectation(h),
            passive: dot4(descending(pops), levels),
            active: dot4(ascending(pops), levels),
        })
    }

    pub fn ergotropy(&self) -> f64 {
        (self.mean - self.passive).max(0.0)
    }

    pub fn anti_ergotropy(&self) -> f64 {
        (self.mean - self.active).min(0.0)
    }

    pub fn capacity(&self) -> f64 {
        self.ergotropy() - self.anti_ergotropy()
    }
}

/// Maximum work extractable from `rho` by a cyclic unitary.
pub fn ergotropy(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<f64> {
    Ok(EnergyWindow::new(rho, h)?.ergotropy())
}

/// `Tr[(ρ - σ) H]`, never positive.
pub fn anti_ergotropy(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<f64> {
    Ok(EnergyWindow::new(rho, h)?.anti_ergotropy())
}

/// Energy a cyclic unitary can still inject, `-anti_ergotropy`.
pub fn injection_cost(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<f64> {
    Ok(-anti_ergotropy(rho, h)?)
}

/// `E - W = Tr[σH] - Tr[ρ_pas H]`.
pub fn capacity(rho: &DensityMatrix4, h: &ComplexMatrix4) -> Result<f64> {
    Ok(EnergyWindow::new(rho, h)?.capacity())
}

/// Ergotropy of the charged dimer at `tau`.
pub fn ergotropy_at(p: &DimerParams, tau: f64) -> Result<f64> {
    ergotropy(&evolve(p, tau), &hamiltonian(p))
}

fn ergotropy_curve(p: &DimerParams) -> Result<impl Fn(f64) -> Result<f64>> {
    let h = hamiltonian(p);
    let levels = hermitian_eig(&h)?.values();
    let p = *p;
    Ok(move |tau| Ok(EnergyWindow::with_levels(&evolve(&p, tau), &h, levels)?.ergotropy()))
}

/// `dE/dτ` by central differences.
///
/// When `tau < step` the stencil would reach negative times, so the
/// second-order one-sided difference `(-3E(τ) + 4E(τ+h) - E(τ+2h)) / 2h`
/// is used instead. Multiply by Ω to get power per unit physical time.
pub fn instantaneous_power(p: &DimerParams, tau: f64, step: f64) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::NegativeTau { tau });
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "step",
            reason: format!("must be > 0, got {step}"),
        });
    }
    let e = ergotropy_curve(p)?;
    if tau - step < 0.0 {
        Ok((-3.0 * e(tau)? + 4.0 * e(tau + step)? - e(tau + 2.0 * step)?) / (2.0 * step))
    } else {
        Ok((e(tau + step)? - e(tau - step)?) / (2.0 * step))
    }
}

/// `E(τ) / τ`.
pub fn average_power(p: &DimerParams, tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::ZeroTime { tau });
    }
    Ok(ergotropy_at(p, tau)? / tau)
}

/// True when two eigenvalues of `rho` are closer than
/// [`POPULATION_CROSSING_GAP`], where the passive ordering can switch.
pub fn has_population_crossing(rho: &DensityMatrix4) -> Result<bool> {
    let v = rho.spectrum()?;
    Ok(v.windows(2).any(|w| w[1] - w[0] < POPULATION_CROSSING_GAP))
}

/// Basis in which off-diagonal coherence is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoherenceBasis {
    /// Eigenbasis of the dimer Hamiltonian.
    #[default]
    Energy,
    /// `|00>, |01>, |10>, |11>`.
    Computational,
}

/// Sum of `|<φ_i|ρ|φ_j>|` over `i ≠ j` in the given orthonormal basis.
pub fn l1_coherence(rho: &DensityMatrix4, basis: &EigenSystem4) -> f64 {
    off_diagonal_l1(&basis.represent(rho.matrix()))
}

/// l1 coherence in the computational basis.
pub fn l1_coherence_computational(rho: &DensityMatrix4) -> f64 {
    off_diagonal_l1(rho.matrix())
}

fn off_diagonal_l1(m: &ComplexMatrix4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

/// Eigenbasis of the dimer Hamiltonian, ascending in energy.
pub fn energy_basis(p: &DimerParams) -> Result<EigenSystem4> {
    hermitian_eig(&hamiltonian(p))
}

/// Options controlling how a [`MetricsSample`] is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    pub power_step: f64,
    pub coherence_basis: CoherenceBasis,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self {
            power_step: DEFAULT_POWER_STEP,
            coherence_basis: CoherenceBasis::Energy,
        }
    }
}

/// All figures of merit at one charging time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsSample {
    pub tau: f64,
    pub ergotropy: f64,
    pub anti_ergotropy: f64,
    pub capacity: f64,
    /// `dE/dτ`; signed.
    pub power: f64,
    /// `E/τ`, undefined at `τ = 0`.
    pub avg_power: Option<f64>,
    pub coherence_l1: f64,
}

impl MetricsSample {
    pub fn evaluate(p: &DimerParams, tau: f64, opts: &SampleOptions) -> Result<Self> {
        Evaluator::new(p, *opts)?.sample(tau)
    }

    /// Lists broken invariants (`C = E - W`, `C ≥ E ≥ 0`), empty if none.
    pub fn invariant_violations(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        if (self.capacity - (self.ergotropy - self.anti_ergotropy)).abs() > tol {
            out.push(format!(
                "capacity {} != ergotropy - anti_ergotropy {}",
                self.capacity,
                self.ergotropy - self.anti_ergotropy
            ));
        }
        if self.ergotropy < -tol {
            out.push(format!("negative ergotropy {}", self.ergotropy));
        }
        if self.capacity < self.ergotropy - tol {
            out.push(format!(
                "capacity {} below ergotropy {}",
                self.capacity, self.ergotropy
            ));
        }
        if self.coherence_l1 < 0.0 {
            out.push(format!("negative coherence {}", self.coherence_l1));
        }
        out
    }
}

/// Reusable per-parameter-set evaluator; caches the Hamiltonian spectrum.
#[derive(Debug, Clone)]
pub struct Evaluator {
    params: DimerParams,
    h: ComplexMatrix4,
    basis: EigenSystem4,
    opts: SampleOptions,
}

impl Evaluator {
    pub fn new(p: &DimerParams, opts: SampleOptions) -> Result<Self> {
        if !(opts.power_step > 0.0 && opts.power_step.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "power_step",
                reason: format!("must be > 0, got {}", opts.power_step),
            });
        }
        let h = hamiltonian(p);
        let basis = hermitian_eig(&h)?;
        Ok(Self {
            params: *p,
            h,
            basis,
            opts,
        })
    }

    fn window(&self, tau: f64) -> Result<EnergyWindow> {
        EnergyWindow::with_levels(&evolve(&self.params, tau), &self.h, self.basis.values())
    }

    pub fn ergotropy(&self, tau: f64) -> Result<f64> {
        Ok(self.window(tau)?.ergotropy())
    }

    pub fn power(&self, tau: f64) -> Result<f64> {
        if !(tau >= 0.0) {
            return Err(Error::NegativeTau { tau });
        }
        let h = self.opts.power_step;
        if tau - h < 0.0 {
            Ok(
                (-3.0 * self.ergotropy(tau)? + 4.0 * self.ergotropy(tau + h)?
                    - self.ergotropy(tau + 2.0 * h)?)
                    / (2.0 * h),
            )
        } else {
            Ok((self.ergotropy(tau + h)? - self.ergotropy(tau - h)?) / (2.0 * h))
        }
    }

    pub fn coherence(&self, rho: &DensityMatrix4) -> f64 {
        match self.opts.coherence_basis {
            CoherenceBasis::Energy => l1_coherence(rho, &self.basis),
            CoherenceBasis::Computational => l1_coherence_computational(rho),
        }
    }

    pub fn sample(&self, tau: f64) -> Result<MetricsSample> {
        if !(tau >= 0.0) {
            return Err(Error::NegativeTau { tau });
        }
        let rho = evolve(&self.params, tau);
        let w = EnergyWindow::with_levels(&rho, &self.h, self.basis.values())?;
        let ergotropy = w.ergotropy();
        Ok(MetricsSample {
            tau,
            ergotropy,
            anti_ergotropy: w.anti_ergotropy(),
            capacity: w.capacity(),
            power: self.power(tau)?,
            avg_power: (tau > 0.0).then(|| ergotropy / tau),
            coherence_l1: self.coherence(&rho),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{conjugate, matrix_exp_oracle};
    use crate::model::gibbs_state;
    use itertools::Itertools;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn params(nu0: f64, delta: f64, v12: f64, t: f64) -> DimerParams {
        DimerParams::new(nu0, delta, v12, t).unwrap()
    }

    fn random_hermitian(rng: &mut impl Rng, scale: f64) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::zeros();
        for i in 0..4 {
            m[(i, i)] = Complex64::new(scale * rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..4 {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn random_unitary(rng: &mut impl Rng) -> ComplexMatrix4 {
        matrix_exp_oracle(&random_hermitian(rng, 2.0).scale(Complex64::new(0.0, -1.0)))
    }

    fn random_state(rng: &mut impl Rng) -> DensityMatrix4 {
        let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
        let s: f64 = p.iter().sum();
        let d = DensityMatrix4::diagonal(p.map(|x| x / s)).unwrap();
        conjugate(&random_unitary(rng), &d).unwrap()
    }

    /// Brute force over all 24 population-to-level assignments.
    fn pairing_extremes(rho: &DensityMatrix4, h: &ComplexMatrix4) -> (f64, f64) {
        let pops = rho.spectrum().unwrap();
        let levels = hermitian_eig(h).unwrap().values();
        let sums: Vec<f64> = (0..4)
            .permutations(4)
            .map(|perm| {
                perm.iter()
                    .enumerate()
                    .map(|(i, &k)| pops[k] * levels[i])
                    .sum()
            })
            .collect();
        let min = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (min, max)
    }

    #[test]
    fn passive_state_of_gibbs_is_itself() {
        let p = params(6.0, 10.0, 0.05, 0.5);
        let g = gibbs_state(&p);
        let pas = passive_state(&g, &hamiltonian(&p)).unwrap();
        assert!(pas.matrix().max_abs_diff(g.matrix()) < 1e-12);
        assert!(ergotropy(&g, &hamiltonian(&p)).unwrap() < 1e-12);
    }

    #[test]
    fn single_excitation_sinks_to_ground() {
        let rho = DensityMatrix4::diagonal([0.0, 0.0, 0.0, 1.0]).unwrap();
        let h = ComplexMatrix4::from_real_diagonal([-1.0, 0.0, 0.0, 1.0]);
        let pas = passive_state(&rho, &h).unwrap();
        assert!(
            pas.matrix()
                .max_abs_diff(&ComplexMatrix4::from_real_diagonal([1.0, 0.0, 0.0, 0.0]))
                < 1e-15
        );

        let ground = DensityMatrix4::diagonal([1.0, 0.0, 0.0, 0.0]).unwrap();
        let act = active_state(&ground, &h).unwrap();
        assert!(
            act.matrix()
                .max_abs_diff(&ComplexMatrix4::from_real_diagonal([0.0, 0.0, 0.0, 1.0]))
                < 1e-15
        );
    }

    #[test]
    fn full_inversion_ergotropy() {
        let p = params(6.0, 0.0, 0.0, 1.0);
        let rho = DensityMatrix4::diagonal([0.0, 0.0, 0.0, 1.0]).unwrap();
        let e = ergotropy(&rho, &hamiltonian(&p)).unwrap();
        assert!((e - 12.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_has_no_window() {
        let rho = DensityMatrix4::maximally_mixed();
        let h = hamiltonian(&params(3.0, 1.0, 0.4, 1.0));
        assert!(
            active_state(&rho, &h)
                .unwrap()
                .matrix()
                .max_abs_diff(rho.matrix())
                < 1e-15
        );
        assert!(anti_ergotropy(&rho, &h).unwrap().abs() < 1e-15);
        assert!(capacity(&rho, &h).unwrap().abs() < 1e-15);
    }

    #[test]
    fn fully_active_state_has_zero_anti_ergotropy() {
        let h = ComplexMatrix4::from_real_diagonal([-2.0, -1.0, 1.0, 2.0]);
        let rho = DensityMatrix4::diagonal([0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(anti_ergotropy(&rho, &h).unwrap(), 0.0);
        assert!(
            (injection_cost(&DensityMatrix4::diagonal([0.4, 0.3, 0.2, 0.1]).unwrap(), &h).unwrap()
                - 1.4)
                .abs()
                < 1e-14
        );
    }

    #[test]
    fn pure_state_capacity_is_level_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let h = hamiltonian(&params(6.0, 3.0, 0.0, 1.0));
        for _ in 0..20 {
            let psi: [Complex64; 4] = std::array::from_fn(|_| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let n = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let rho = DensityMatrix4::pure(psi.map(|z| z / n)).unwrap();
            assert!((capacity(&rho, &h).unwrap() - 12.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gibbs_anti_ergotropy_matches_pairing_oracle() {
        let p = params(6.0, 0.0, 0.05, 0.5);
        let h = hamiltonian(&p);
        let g = gibbs_state(&p);
        let (_, max) = pairing_extremes(&g, &h);
        let w = anti_ergotropy(&g, &h).unwrap();
        assert!((w + (max - g.expectation(&h))).abs() < 1e-12);
    }

    #[test]
    fn ergotropy_matches_pairing_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..500 {
            let rho = random_state(&mut rng);
            let h = random_hermitian(&mut rng, 5.0);
            let (min, max) = pairing_extremes(&rho, &h);
            let mean = rho.expectation(&h);
            let w = EnergyWindow::new(&rho, &h).unwrap();
            assert!((w.ergotropy() - (mean - min)).abs() <= 1e-10);
            assert!((w.anti_ergotropy() - (mean - max)).abs() <= 1e-10);

            let pas = passive_state(&rho, &h).unwrap();
            let act = active_state(&rho, &h).unwrap();
            assert!((pas.expectation(&h) - min).abs() <= 1e-10);
            assert!((act.expectation(&h) - max).abs() <= 1e-10);
            assert!((w.capacity() - (act.expectation(&h) - pas.expectation(&h))).abs() <= 1e-10);
            assert!(w.capacity() >= w.ergotropy() && w.ergotropy() >= 0.0);
        }
    }

    #[test]
    fn passive_and_active_bound_every_unitary_orbit() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..50 {
            let rho = random_state(&mut rng);
            let h = random_hermitian(&mut rng, 3.0);
            let lo = passive_state(&rho, &h).unwrap().expectation(&h);
            let hi = active_state(&rho, &h).unwrap().expectation(&h);
            for _ in 0..20 {
                let e = conjugate(&random_unitary(&mut rng), &rho)
                    .unwrap()
                    .expectation(&h);
                assert!(lo <= e + 1e-12 && e <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn capacity_is_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..100 {
            let rho = random_state(&mut rng);
            let h = random_hermitian(&mut rng, 5.0);
            let c = capacity(&rho, &h).unwrap();
            for _ in 0..10 {
                let moved = conjugate(&random_unitary(&mut rng), &rho).unwrap();
                assert!((capacity(&moved, &h).unwrap() - c).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn gibbs_states_are_passive_when_ordered() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let mut checked = 0;
        while checked < 300 {
            let p = params(
                rng.gen_range(0.5..10.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(0.0..10.0),
                rng.gen_range(0.1..5.0),
            );
            if p.nu0() < p.alpha() / 2.0 {
                continue;
            }
            checked += 1;
            assert!(ergotropy(&gibbs_state(&p), &hamiltonian(&p)).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn ergotropy_peaks_at_quarter_period() {
        let p = params(6.0, 10.0, 0.05, 0.5);
        let e = ergotropy_curve(&p).unwrap();
        let peak = e(PI / 2.0).unwrap();
        for k in 0..=400 {
            assert!(e(2.0 * PI * k as f64 / 400.0).unwrap() <= peak + 1e-12);
        }
    }

    #[test]
    fn power_vanishes_at_extrema() {
        let p = params(6.0, 10.0, 0.05, 0.5);
        let scale = hermitian_eig(&hamiltonian(&p)).unwrap().values()[3];
        assert!(
            instantaneous_power(&p, PI / 2.0, DEFAULT_POWER_STEP)
                .unwrap()
                .abs()
                < 1e-6 * scale
        );
        assert!(
            instantaneous_power(&p, 0.0, DEFAULT_POWER_STEP)
                .unwrap()
                .abs()
                < 1e-6 * scale
        );
        assert!(
            instantaneous_power(&p, PI, DEFAULT_POWER_STEP)
                .unwrap()
                .abs()
                < 1e-6 * scale
        );
    }

    #[test]
    fn power_rejects_bad_input() {
        let p = params(1.0, 0.5, 0.1, 1.0);
        assert!(matches!(
            instantaneous_power(&p, -0.1, 1e-5),
            Err(Error::NegativeTau { .. })
        ));
        assert!(instantaneous_power(&p, 1.0, 0.0).is_err());
        assert!(matches!(
            average_power(&p, 0.0),
            Err(Error::ZeroTime { .. })
        ));
    }

    #[test]
    fn power_richardson_consistency() {
        // |P(h) - P(h/2)| ≤ (3/4)(h²/6) max|E'''| and |E'''| ≤ 64 ‖H‖ for a
        // generator of norm 2; 10 h² ‖H‖ covers that plus round-off.
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let h = DEFAULT_POWER_STEP;
        for _ in 0..40 {
            let p = params(
                rng.gen_range(0.5..8.0),
                rng.gen_range(-8.0..8.0),
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.2..3.0),
            );
            let scale = hermitian_eig(&hamiltonian(&p))
                .unwrap()
                .values()
                .map(f64::abs)
                .into_iter()
                .fold(0.0, f64::max);
            let tau = rng.gen_range(0.1..6.0);
            if has_population_crossing(&evolve(&p, tau)).unwrap() {
                continue;
            }
            let a = instantaneous_power(&p, tau, h).unwrap();
            let b = instantaneous_power(&p, tau, h / 2.0).unwrap();
            assert!(
                (a - b).abs() <= 10.0 * h * h * scale,
                "{p:?} tau={tau}: {:e}",
                (a - b).abs()
            );
        }
    }

    #[test]
    fn average_power_definition() {
        let p = params(6.0, 10.0, 0.05, 0.5);
        let tau = PI / 2.0;
        let avg = average_power(&p, tau).unwrap();
        assert!((avg - ergotropy_at(&p, tau).unwrap() / tau).abs() < 1e-15);
        // passive at tau = π
        assert!(average_power(&p, PI).unwrap().abs() < 1e-12);
    }

    #[test]
    fn coherence_examples() {
        let p = params(6.0, 4.0, 0.05, 0.5);
        let basis = energy_basis(&p).unwrap();
        assert!(l1_coherence(&gibbs_state(&p), &basis) < 1e-12);

        for nu0 in [2.0, 4.0, 6.0, 8.0] {
            let p = params(nu0, 0.0, 0.5, 0.5);
            let c = l1_coherence(&evolve(&p, PI / 2.0), &energy_basis(&p).unwrap());
            assert!(c <= 1e-10, "nu0={nu0}: {c:e}");
        }

        let mut m = ComplexMatrix4::from_real_diagonal([0.5, 0.0, 0.0, 0.5]);
        let c = Complex64::new(0.3, -0.2);
        m[(0, 3)] = c;
        m[(3, 0)] = c.conj();
        let rho = DensityMatrix4::new(m).unwrap();
        assert!((l1_coherence_computational(&rho) - 2.0 * c.norm()).abs() < 1e-15);
    }

    #[test]
    fn coherence_repeats_with_drive_period() {
        let p = params(4.0, 6.0, 0.01, 1.0);
        let ev = Evaluator::new(&p, SampleOptions::default()).unwrap();
        for k in 0..100 {
            let tau = 0.0314 * k as f64;
            let a = ev.coherence(&evolve(&p, tau));
            let b = ev.coherence(&evolve(&p, tau + PI));
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn sample_satisfies_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let p = params(
                rng.gen_range(0.5..8.0),
                rng.gen_range(-8.0..8.0),
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.2..3.0),
            );
            for basis in [CoherenceBasis::Energy, CoherenceBasis::Computational] {
                let opts = SampleOptions {
                    coherence_basis: basis,
                    ..Default::default()
                };
                let s = MetricsSample::evaluate(&p, rng.gen_range(0.0..6.0), &opts).unwrap();
                assert!(s.invariant_violations(1e-10).is_empty(), "{s:?}");
            }
        }
        let s =
            MetricsSample::evaluate(&params(1.0, 1.0, 0.1, 1.0), 0.0, &SampleOptions::default())
                .unwrap();
        assert_eq!(s.avg_power, None);
    }

    #[test]
    fn evaluator_power_matches_free_function() {
        let p = params(3.5, 5.0, 1.5, 0.5);
        let ev = Evaluator::new(&p, SampleOptions::default()).unwrap();
        for tau in [0.0, 3e-6, 0.4, 1.1, 2.5] {
            let a = ev.power(tau).unwrap();
            let b = instantaneous_power(&p, tau, DEFAULT_POWER_STEP).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }
}
