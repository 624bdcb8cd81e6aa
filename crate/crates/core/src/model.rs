//! The dipole-coupled two-emitter model: geometry-derived couplings, the
//! dimer Hamiltonian, its closed-form spectrum and the thermal state.
//!
//! Units are reduced throughout (`ħ = h = k_B = 1`): transition
//! frequencies, couplings and temperature share one energy unit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix4, DensityMatrix4};

/// Physical configuration of the dimer.
///
/// Parameterised by mean frequency `nu0 = (nu1 + nu2) / 2` and detuning
/// `delta = nu1 - nu2`; [`DimerParams::from_frequencies`] converts from the
/// site frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParams {
    nu0: f64,
    delta: f64,
    v12: f64,
    temperature: f64,
}

impl DimerParams {
    pub fn new(nu0: f64, delta: f64, v12: f64, temperature: f64) -> Result<Self> {
        let p = Self {
            nu0,
            delta,
            v12,
            temperature,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_frequencies(nu1: f64, nu2: f64, v12: f64, temperature: f64) -> Result<Self> {
        Self::new(0.5 * (nu1 + nu2), nu1 - nu2, v12, temperature)
    }

    fn validate(&self) -> Result<()> {
        let finite = |name, x: f64| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite, got {x}"),
                })
            }
        };
        finite("nu0", self.nu0)?;
        finite("delta", self.delta)?;
        finite("v12", self.v12)?;
        finite("temperature", self.temperature)?;
        if self.nu0 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "nu0",
                reason: format!("must be > 0, got {}", self.nu0),
            });
        }
        if self.temperature <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "temperature",
                reason: format!("must be > 0, got {}", self.temperature),
            });
        }
        Ok(())
    }

    pub fn nu0(&self) -> f64 {
        self.nu0
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn v12(&self) -> f64 {
        self.v12
    }
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Frequency of the first emitter, `nu0 + delta/2`.
    pub fn nu1(&self) -> f64 {
        self.nu0 + 0.5 * self.delta
    }

    /// Frequency of the second emitter, `nu0 - delta/2`.
    pub fn nu2(&self) -> f64 {
        self.nu0 - 0.5 * self.delta
    }

    /// Splitting of the single-excitation doublet, `sqrt(delta² + 4 v12²)`.
    pub fn alpha(&self) -> f64 {
        self.delta.hypot(2.0 * self.v12)
    }

    pub fn with_nu0(self, nu0: f64) -> Result<Self> {
        Self::new(nu0, self.delta, self.v12, self.temperature)
    }
    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Self::new(self.nu0, delta, self.v12, self.temperature)
    }
    pub fn with_v12(self, v12: f64) -> Result<Self> {
        Self::new(self.nu0, self.delta, v12, self.temperature)
    }
    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        Self::new(self.nu0, self.delta, self.v12, temperature)
    }
}

/// Emitter geometry feeding the retarded dipole-dipole interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    /// Transition dipole orientation of emitter 1.
    pub n1_hat: [f64; 3],
    /// Transition dipole orientation of emitter 2.
    pub n2_hat: [f64; 3],
    /// Direction of the separation vector.
    pub u12_hat: [f64; 3],
    /// Dimensionless distance `n k12 r12`.
    pub z12: f64,
    /// Single-emitter decay rates.
    pub lambda1: f64,
    pub lambda2: f64,
}

impl GeometryConfig {
    const UNIT_TOL: f64 = 1e-12;

    pub fn new(
        n1_hat: [f64; 3],
        n2_hat: [f64; 3],
        u12_hat: [f64; 3],
        z12: f64,
        lambda1: f64,
        lambda2: f64,
    ) -> Result<Self> {
        let g = Self {
            n1_hat,
            n2_hat,
            u12_hat,
            z12,
            lambda1,
            lambda2,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("n1_hat", self.n1_hat),
            ("n2_hat", self.n2_hat),
            ("u12_hat", self.u12_hat),
        ] {
            let norm = dot(v, v).sqrt();
            if !((norm - 1.0).abs() <= Self::UNIT_TOL) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be a unit vector, norm is {norm}"),
                });
            }
        }
        for (name, x) in [
            ("z12", self.z12),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
        ] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be > 0, got {x}"),
                });
            }
        }
        Ok(())
    }

    /// The same pair with emitter labels swapped.
    pub fn swapped(&self) -> Self {
        Self {
            n1_hat: self.n2_hat,
            n2_hat: self.n1_hat,
            u12_hat: self.u12_hat.map(|x| -x),
            z12: self.z12,
            lambda1: self.lambda2,
            lambda2: self.lambda1,
        }
    }
}

/// Coherent exchange coupling and collective decay rate of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleCoupling {
    pub v12: f64,
    pub lambda12: f64,
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Evaluates the full retarded dipole-dipole expressions for `V12` and `Λ12`.
///
/// For parallel dipoles perpendicular to the separation axis the collective
/// rate tends to `sqrt(Λ1 Λ2)` as `z12 → 0`, and `V12` diverges as
/// `(3/4) sqrt(Λ1 Λ2) / z12³`.
pub fn coupling_from_geometry(g: &GeometryConfig) -> Result<DipoleCoupling> {
    g.validate()?;
    let z = g.z12;
    if z < 1e-12 {
        return Err(Error::DegenerateGeometry { z12: z });
    }
    let nn = dot(g.n1_hat, g.n2_hat);
    let nu_nu = dot(g.n1_hat, g.u12_hat) * dot(g.n2_hat, g.u12_hat);
    let rate = (g.lambda1 * g.lambda2).sqrt();
    let (s, c) = z.sin_cos();
    let (z2, z3) = (z * z, z * z * z);

    let lambda12 = 1.5 * rate * ((nn - nu_nu) * s / z + (nn - 3.0 * nu_nu) * (c / z2 - s / z3));
    let v12 = 0.75 * rate * ((nu_nu - nn) * c / z + (nn - 3.0 * nu_nu) * (c / z3 + s / z2));
    Ok(DipoleCoupling { v12, lambda12 })
}

/// Single-emitter spontaneous emission rate `prefactor · n · ω³ · |d|²`.
///
/// `prefactor` carries `1/(3 ε0 ħ c³)` in whatever unit system the caller
/// uses.
pub fn emission_rate(omega: f64, dipole_sq: f64, n_refr: f64, prefactor: f64) -> f64 {
    prefactor * n_refr * omega.powi(3) * dipole_sq
}

/// Dimer Hamiltonian in the basis `|00>, |01>, |10>, |11>`:
/// `diag(-nu0, -delta/2, delta/2, nu0)` with `v12` coupling `|01>` and `|10>`.
pub fn hamiltonian(p: &DimerParams) -> ComplexMatrix4 {
    let mut h = ComplexMatrix4::from_real_diagonal([-p.nu0, -0.5 * p.delta, 0.5 * p.delta, p.nu0]);
    h[(1, 2)] = Complex64::new(p.v12, 0.0);
    h[(2, 1)] = Complex64::new(p.v12, 0.0);
    h
}

/// Closed-form eigensystem of [`hamiltonian`], labelled
/// `(-nu0, -alpha/2, alpha/2, nu0)`.
///
/// The labels are not sorted when `alpha/2 > nu0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSpectrum {
    pub energies: [f64; 4],
    pub states: [[Complex64; 4]; 4],
    pub alpha: f64,
}

pub fn analytic_spectrum(p: &DimerParams) -> AnalyticSpectrum {
    let alpha = p.alpha();
    let (d, v) = (p.delta, p.v12);
    let e = |k: usize| {
        let mut s = [Complex64::new(0.0, 0.0); 4];
        s[k] = Complex64::new(1.0, 0.0);
        s
    };
    let pair = |c01: f64, c10: f64| {
        let n = c01.hypot(c10);
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(c01 / n, 0.0),
            Complex64::new(c10 / n, 0.0),
            Complex64::new(0.0, 0.0),
        ]
    };

    let (lower, upper) = if v.abs() < 1e-14 {
        // v12 → 0 limit of the general expressions.
        if d > 0.0 {
            (pair(-1.0, 0.0), pair(0.0, 1.0))
        } else if d < 0.0 {
            (pair(0.0, 1.0), pair(1.0, 0.0))
        } else {
            (pair(-1.0, 1.0), pair(1.0, 1.0))
        }
    } else {
        // |01> amplitudes relative to a unit |10> amplitude; the branches
        // avoid cancellation in delta ± alpha.
        let x_lower = if d >= 0.0 {
            -(d + alpha) / (2.0 * v)
        } else {
            -2.0 * v / (alpha - d)
        };
        let x_upper = if d <= 0.0 {
            (alpha - d) / (2.0 * v)
        } else {
            2.0 * v / (alpha + d)
        };
        (pair(x_lower, 1.0), pair(x_upper, 1.0))
    };

    AnalyticSpectrum {
        energies: [-p.nu0, -0.5 * alpha, 0.5 * alpha, p.nu0],
        states: [e(0), lower, upper, e(3)],
        alpha,
    }
}

/// `Z = 2 [cosh((nu1 + nu2) / 2T) + cosh(alpha / 2T)]`.
///
/// Overflows to infinity once `max(nu0, alpha/2) / T` exceeds ~710; the
/// thermal state itself is computed in scaled form and does not.
pub fn partition_function(p: &DimerParams) -> f64 {
    let t = p.temperature;
    2.0 * (((p.nu1() + p.nu2()) / (2.0 * t)).cosh() + (p.alpha() / (2.0 * t)).cosh())
}

/// Thermal state `exp(-H/T) / Z` from its closed-form matrix elements.
///
/// Every element is evaluated with numerator and `Z` rescaled by
/// `exp(-max(nu0, alpha/2) / T)`, so low temperatures do not overflow.
pub fn gibbs_state(p: &DimerParams) -> DensityMatrix4 {
    let t = p.temperature;
    let alpha = p.alpha();
    let half = 0.5 * alpha;
    let shift = p.nu0.max(half);
    let scaled = |energy: f64| ((energy - shift) / t).exp();

    let upper_pop = scaled(p.nu0); // e^{nu0/T}
    let lower_pop = scaled(-p.nu0); // e^{-nu0/T}
    let cosh_a = 0.5 * (scaled(half) + scaled(-half));
    let x = half / t;
    let sinh_a_over_alpha = if x > 1e-3 {
        (scaled(half) - scaled(-half)) / (2.0 * alpha)
    } else {
        // sinh(x)/alpha = sinhc(x) / 2T
        let x2 = x * x;
        (1.0 + x2 / 6.0 + x2 * x2 / 120.0) / (2.0 * t) * scaled(0.0)
    };
    let z = upper_pop + lower_pop + 2.0 * cosh_a;

    let eta11 = upper_pop / z;
    let eta22 = (p.delta * sinh_a_over_alpha + cosh_a) / z;
    let eta33 = ((-p.nu1() + p.nu2()) * sinh_a_over_alpha + cosh_a) / z;
    let eta23 = -2.0 * p.v12 * sinh_a_over_alpha / z;
    let eta44 = lower_pop / z;

    let mut m = ComplexMatrix4::from_real_diagonal([eta11, eta22, eta33, eta44]);
    m[(1, 2)] = Complex64::new(eta23, 0.0);
    m[(2, 1)] = Complex64::new(eta23, 0.0);
    DensityMatrix4::from_matrix_unchecked(m)
}
