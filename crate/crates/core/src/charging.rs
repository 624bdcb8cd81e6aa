//! Closed charging protocol: a uniform collective X drive applied to the
//! thermal dimer.
//!
//! All public functions take the dimensionless time `tau = Ω t`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix4, DensityMatrix4};
use crate::model::{gibbs_state, DimerParams};

/// Drive amplitude and elapsed dimensionless time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeConfig {
    omega: f64,
    tau: f64,
}

impl ChargeConfig {
    pub fn new(omega: f64, tau: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: format!("must be > 0, got {omega}"),
            });
        }
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::NegativeTau { tau });
        }
        Ok(Self { omega, tau })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Physical time `t = tau / Ω`.
    pub fn time(&self) -> f64 {
        self.tau / self.omega
    }

    /// Converts a rate per unit `tau` into a rate per unit physical time.
    pub fn per_unit_time(&self, rate_per_tau: f64) -> f64 {
        rate_per_tau * self.omega
    }
}

/// `Ω (σx ⊗ I + I ⊗ σx)`.
pub fn charging_hamiltonian(omega: f64) -> ComplexMatrix4 {
    let w = omega;
    ComplexMatrix4::from_real([
        [0.0, w, w, 0.0],
        [w, 0.0, 0.0, w],
        [w, 0.0, 0.0, w],
        [0.0, w, w, 0.0],
    ])
}

/// Charging unitary `exp(-i tau (σx ⊗ I + I ⊗ σx))`.
///
/// Each site rotates by `cos τ I - i sin τ σx`, so the product has
/// `cos²τ` on the diagonal, `-i sin τ cos τ` between states differing by
/// one flip and `-sin²τ` between states differing by two. Period `π`.
pub fn u_x(tau: f64) -> ComplexMatrix4 {
    let (s, c) = tau.sin_cos();
    let stay = Complex64::new(c * c, 0.0);
    let one = Complex64::new(0.0, -s * c);
    let two = Complex64::new(-s * s, 0.0);
    ComplexMatrix4([
        [stay, one, one, two],
        [one, stay, two, one],
        [one, two, stay, one],
        [two, one, one, stay],
    ])
}

/// Collective Y rotation `exp(-i tau (σy ⊗ I + I ⊗ σy))`, which is real.
///
/// Related to [`u_x`] by the site phase gate `S = diag(1, i)`:
/// `u_y = (S⊗S) u_x (S⊗S)†`. `S⊗S` commutes with the dimer Hamiltonian.
pub fn u_y(tau: f64) -> ComplexMatrix4 {
    let (s, c) = tau.sin_cos();
    let site = [[c, -s], [s, c]];
    ComplexMatrix4::from_fn(|i, j| Complex64::new(site[i / 2][j / 2] * site[i % 2][j % 2], 0.0))
}

/// Diagonal of `S⊗S`.
const PHASE_FRAME: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
];

/// Battery state after charging for `tau`: `U_X η_th U_X†`.
pub fn evolve(p: &DimerParams, tau: f64) -> DensityMatrix4 {
    let u = u_x(tau);
    let rho = gibbs_state(p);
    DensityMatrix4::from_matrix_unchecked((u * *rho.matrix() * u.adjoint()).hermitian_part())
}

/// Upper-triangle elements of the charged state in closed trigonometric /
/// hyperbolic form.
///
/// These are real: they describe the state in the frame rotated by `S⊗S`,
/// i.e. `u_y(tau) η_th u_y(tau)†`. [`eta_closed_form`] maps them back to
/// the X-drive frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormElements {
    pub e11: f64,
    pub e12: f64,
    pub e13: f64,
    pub e14: f64,
    pub e22: f64,
    pub e23: f64,
    pub e24: f64,
    pub e33: f64,
    pub e34: f64,
    pub e44: f64,
}

impl ClosedFormElements {
    /// Symmetric real matrix with these elements.
    pub fn to_matrix(&self) -> ComplexMatrix4 {
        let e = self;
        ComplexMatrix4::from_real([
            [e.e11, e.e12, e.e13, e.e14],
            [e.e12, e.e22, e.e23, e.e24],
            [e.e13, e.e23, e.e33, e.e34],
            [e.e14, e.e24, e.e34, e.e44],
        ])
    }
}

/// Closed-form elements of the charged state.
///
/// The expressions are written in the total frequency `w = nu1 + nu2`
/// (so `cosh(w / 2T)` here is `cosh(nu0 / T)`). They overflow once
/// `w / T` approaches ~700; use [`evolve`] for very cold states.
pub fn closed_form_elements(p: &DimerParams, tau: f64) -> ClosedFormElements {
    let w = p.nu1() + p.nu2();
    let t = p.temperature();
    let a = p.alpha();
    let d = p.delta();
    let v = p.v12();

    let ch = (a / (2.0 * t)).cosh();
    let sh = (a / (2.0 * t)).sinh();
    // sinh(a/2T)/a, finite at a = 0
    let sh_a = if a > 1e-12 { sh / a } else { 1.0 / (2.0 * t) };
    let cw = (w / (2.0 * t)).cosh();
    let e_half = (w / (2.0 * t)).exp();
    let e_neg_half = (-w / (2.0 * t)).exp();
    let e_full = (w / t).exp();

    let (s, c) = tau.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let sin2 = (2.0 * tau).sin();
    let cos2 = (2.0 * tau).cos();
    let cos4 = (4.0 * tau).cos();
    let den = ch + cw;

    let e11 = (2.0 * e_neg_half * (s2 * s2 + c2 * c2 * e_full)
        + sin2 * sin2 * (ch - 2.0 * v * sh_a))
        / (4.0 * den);
    let e12 = sin2
        * e_neg_half
        * ((cos2 + 2.0 * c2 * e_full - 1.0)
            + 2.0 * e_half * (-cos2 * ch - sh_a * (d - 2.0 * v * cos2)))
        / (8.0 * den);
    let e13 = sin2 * (-cos2 * ch + e_neg_half * (c2 * e_full - s2) + sh_a * (d + 2.0 * v * cos2))
        / (4.0 * den);
    let e14 = -s2 * c2 * (ch - cw - 2.0 * v * sh_a) / den;
    let e22 = e_neg_half
        * (sin2 * sin2 * (e_full + 1.0)
            + (cos4 + 3.0) * e_half * ch
            + 4.0 * e_half * sh_a * (d * cos2 + v * sin2 * sin2))
        / (8.0 * den);
    let e23 = e_neg_half
        * (sin2 * sin2 * (e_full + 1.0)
            - 8.0 * s2 * c2 * e_half * ch
            - 2.0 * v * (cos4 + 3.0) * e_half * sh_a)
        / (8.0 * den);
    let e24 = -sin2 * (-cos2 * ch + e_neg_half * (c2 - s2 * e_full) + sh_a * (2.0 * v * cos2 - d))
        / (4.0 * den);
    let e33 = e_neg_half
        * (sin2 * sin2 * (e_full + 1.0) + (cos4 + 3.0) * e_half * ch
            - 2.0 * e_half * sh_a * (2.0 * d * cos2 + v * (cos4 - 1.0)))
        / (8.0 * den);
    let e34 = -sin2 * (-cos2 * ch + e_neg_half * (c2 - s2 * e_full) + sh_a * (d + 2.0 * v * cos2))
        / (4.0 * den);
    let e44 = (2.0 * e_neg_half * (c2 * c2 + s2 * s2 * e_full)
        + sin2 * sin2 * (ch - 2.0 * v * sh_a))
        / (4.0 * den);

    ClosedFormElements {
        e11,
        e12,
        e13,
        e14,
        e22,
        e23,
        e24,
        e33,
        e34,
        e44,
    }
}

/// Charged state assembled from [`closed_form_elements`] and returned in the
/// X-drive frame, so it is directly comparable with [`evolve`].
pub fn eta_closed_form(p: &DimerParams, tau: f64) -> DensityMatrix4 {
    let real = closed_form_elements(p, tau).to_matrix();
    let f = PHASE_FRAME;
    let m = ComplexMatrix4::from_fn(|i, j| f[i].conj() * real[(i, j)] * f[j]);
    DensityMatrix4::from_matrix_unchecked(m)
}
