//! Time- and space-fractional plane waves.
//!
//! The time-fractional equation
//!
//! ```text
//! ∂²z/∂x² - (εμ/c²) σ^{-2(1-γ)} ∂^{2γ}z/∂t^{2γ} = 0
//! ```
//!
//! separates as z = z₀ e^{-ikx} u(t) with D^{2γ}u + ω²u = 0,
//! ω² = ω₀²σ^{2(1-γ)}, solved by u(t) = E_{2γ}(-ω²t^{2γ}). The
//! space-fractional equation separates as z̃ = z̃₀ e^{iωt} u(x) with
//! D^{2δ}u + k̃²u = 0, k̃² = k²σₓ^{2(1-δ)}, solved by E_{2δ}(-k̃²x^{2δ}).
//!
//! Conventions: ω₀ = 1/T₀ and k = 1/λ, without factors of 2π. In coupled
//! mode the auxiliary parameters are tied to the orders by γ = σ²ω₀² and
//! δ = k²σₓ². Units of ω² (time^{-2γ}) and k̃² (length^{-2δ}) are documented
//! here only; nothing checks them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::ml;

/// Order γ or δ of a fractional wave, 0 < value ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0 && value <= 1.0) {
            return Err(Error::Order {
                order: value,
                range: "(0, 1]",
            });
        }
        Ok(FractionalOrder(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Order of the Caputo derivative in the wave equation, 2γ or 2δ.
    pub fn doubled(self) -> f64 {
        2.0 * self.0
    }

    fn is_half(self) -> bool {
        self.0 == 0.5
    }
}

/// Homogeneous isotropic medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    pub epsilon: f64,
    pub mu: f64,
    pub c: f64,
}

impl MediumParams {
    pub fn new(epsilon: f64, mu: f64, c: f64) -> Result<Self> {
        for (name, v) in [("epsilon", epsilon), ("mu", mu), ("c", c)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, format!("{v} is not positive")));
            }
        }
        Ok(MediumParams { epsilon, mu, c })
    }

    /// υ = c/√(εμ).
    pub fn wave_speed(&self) -> f64 {
        self.c / (self.epsilon * self.mu).sqrt()
    }

    /// k = ω/υ.
    pub fn wavevector(&self, omega: f64) -> f64 {
        omega / self.wave_speed()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    /// σ (σₓ) chosen independently of the order.
    Free,
    /// σ = √γ/ω₀ (σₓ = √δ/k).
    Coupled,
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(name, format!("{v} is not positive")))
    }
}

/// σ = √γ/ω₀, the fractional time parameter fixed by γ = σ²ω₀².
pub fn couple_sigma(gamma: FractionalOrder, omega0: f64) -> Result<f64> {
    let omega0 = positive("omega0", omega0)?;
    Ok(gamma.value().sqrt() / omega0)
}

/// σₓ = √δ/k, fixed by δ = k²σₓ².
pub fn couple_sigma_x(delta: FractionalOrder, k: f64) -> Result<f64> {
    let k = positive("k", k)?;
    Ok(delta.value().sqrt() / k)
}

/// Time-fractional plane wave z₀ e^{-ikx} E_{2γ}(-ω²t^{2γ}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeFractionalWave {
    gamma: FractionalOrder,
    omega0: f64,
    sigma: f64,
    k: f64,
    z0: Complex64,
    coupling: Coupling,
}

impl TimeFractionalWave {
    /// Independent σ, with 0 < σ ≤ T₀ = 1/ω₀.
    pub fn free(
        gamma: FractionalOrder,
        omega0: f64,
        sigma: f64,
        k: f64,
        z0: Complex64,
    ) -> Result<Self> {
        let omega0 = positive("omega0", omega0)?;
        let sigma = positive("sigma", sigma)?;
        if sigma > 1.0 / omega0 {
            return Err(Error::param(
                "sigma",
                format!("{sigma} exceeds the period T0 = {}", 1.0 / omega0),
            ));
        }
        Ok(TimeFractionalWave {
            gamma,
            omega0,
            sigma,
            k: positive("k", k)?,
            z0,
            coupling: Coupling::Free,
        })
    }

    /// σ from [`couple_sigma`].
    pub fn coupled(gamma: FractionalOrder, omega0: f64, k: f64, z0: Complex64) -> Result<Self> {
        let sigma = couple_sigma(gamma, omega0)?;
        Ok(TimeFractionalWave {
            gamma,
            omega0,
            sigma,
            k: positive("k", k)?,
            z0,
            coupling: Coupling::Coupled,
        })
    }

    pub fn gamma(&self) -> FractionalOrder {
        self.gamma
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    /// ω² = ω₀²σ^{2(1-γ)}.
    pub fn omega_sq(&self) -> f64 {
        self.omega0 * self.omega0 * self.sigma.powf(2.0 * (1.0 - self.gamma.value()))
    }

    /// T₀ = 1/ω₀.
    pub fn period(&self) -> f64 {
        1.0 / self.omega0
    }

    /// λ = 1/k.
    pub fn wavelength(&self) -> f64 {
        1.0 / self.k
    }
}

/// Space-fractional plane wave z̃₀ e^{iωt} E_{2δ}(-k̃²x^{2δ}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceFractionalWave {
    delta: FractionalOrder,
    k: f64,
    sigma_x: f64,
    omega: f64,
    z0: Complex64,
    coupling: Coupling,
}

impl SpaceFractionalWave {
    pub fn free(
        delta: FractionalOrder,
        k: f64,
        sigma_x: f64,
        omega: f64,
        z0: Complex64,
    ) -> Result<Self> {
        Ok(SpaceFractionalWave {
            delta,
            k: positive("k", k)?,
            sigma_x: positive("sigma_x", sigma_x)?,
            omega: positive("omega", omega)?,
            z0,
            coupling: Coupling::Free,
        })
    }

    /// σₓ from [`couple_sigma_x`].
    pub fn coupled(delta: FractionalOrder, k: f64, omega: f64, z0: Complex64) -> Result<Self> {
        let sigma_x = couple_sigma_x(delta, k)?;
        Ok(SpaceFractionalWave {
            delta,
            k,
            sigma_x,
            omega: positive("omega", omega)?,
            z0,
            coupling: Coupling::Coupled,
        })
    }

    pub fn delta(&self) -> FractionalOrder {
        self.delta
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    /// k̃² = k²σₓ^{2(1-δ)}; equals k² only for δ = 1.
    pub fn k_tilde_sq(&self) -> f64 {
        self.k * self.k * self.sigma_x.powf(2.0 * (1.0 - self.delta.value()))
    }

    pub fn wavelength(&self) -> f64 {
        1.0 / self.k
    }
}

fn non_negative(name: &'static str, v: f64) -> Result<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(name, format!("{v} is outside [0, ∞)")))
    }
}

/// E_{2ν}(-rate·s^{2ν}), the common shape of every solution here.
fn ml_profile(order: FractionalOrder, rate: f64, s: f64) -> Result<f64> {
    let alpha = order.doubled();
    ml(alpha, -rate * s.powf(alpha))
}

/// u(t) = E_{2γ}(-ω²t^{2γ}).
pub fn time_solution_u(w: &TimeFractionalWave, t: f64) -> Result<f64> {
    let t = non_negative("time_solution_u", t)?;
    ml_profile(w.gamma, w.omega_sq(), t)
}

/// z(x, t) = z₀ e^{-ikx} u(t).
pub fn time_solution_field(w: &TimeFractionalWave, x: f64, t: f64) -> Result<Complex64> {
    let u = time_solution_u(w, t)?;
    Ok(w.z0 * Complex64::from_polar(1.0, -w.k * x) * u)
}

/// Coupled-mode solution in t̃ = t/T₀: E_{2γ}(-γ^{1-γ} t̃^{2γ}).
pub fn time_solution_dimensionless(gamma: FractionalOrder, t_tilde: f64) -> Result<f64> {
    let t_tilde = non_negative("time_solution_dimensionless", t_tilde)?;
    universal_profile(gamma, t_tilde)
}

/// e-folding time t₀ = 1/(ω₀²σ) of the γ = 1/2 wave.
pub fn decay_time(w: &TimeFractionalWave) -> Result<f64> {
    if !w.gamma.is_half() {
        return Err(Error::Order {
            order: w.gamma.value(),
            range: "{1/2} (decay time)",
        });
    }
    Ok(1.0 / (w.omega0 * w.omega0 * w.sigma))
}

/// u(x) = E_{2δ}(-k̃²x^{2δ}).
pub fn space_solution_u(w: &SpaceFractionalWave, x: f64) -> Result<f64> {
    let x = non_negative("space_solution_u", x)?;
    ml_profile(w.delta, w.k_tilde_sq(), x)
}

/// z̃(x, t) = z̃₀ e^{iωt} u(x).
pub fn space_solution_field(w: &SpaceFractionalWave, x: f64, t: f64) -> Result<Complex64> {
    let u = space_solution_u(w, x)?;
    Ok(w.z0 * Complex64::from_polar(1.0, w.omega * t) * u)
}

/// Coupled-mode solution in x̃ = x/λ: E_{2δ}(-δ^{1-δ} x̃^{2δ}).
pub fn space_solution_dimensionless(delta: FractionalOrder, x_tilde: f64) -> Result<f64> {
    let x_tilde = non_negative("space_solution_dimensionless", x_tilde)?;
    universal_profile(delta, x_tilde)
}

/// e-folding length x₀ = 1/(k²σₓ) of the δ = 1/2 wave.
pub fn decay_length(w: &SpaceFractionalWave) -> Result<f64> {
    if !w.delta.is_half() {
        return Err(Error::Order {
            order: w.delta.value(),
            range: "{1/2} (decay length)",
        });
    }
    Ok(1.0 / (w.k * w.k * w.sigma_x))
}

fn universal_profile(order: FractionalOrder, s: f64) -> Result<f64> {
    let nu = order.value();
    ml_profile(order, nu.powf(1.0 - nu), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn order(v: f64) -> FractionalOrder {
        FractionalOrder::new(v).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn order_range() {
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(1.5).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
        assert_eq!(FractionalOrder::new(1.0).unwrap().doubled(), 2.0);
    }

    #[test]
    fn medium_wave_speed() {
        let m = MediumParams::new(4.0, 1.0, 3.0e8).unwrap();
        assert_eq!(m.wave_speed(), 1.5e8);
        assert_eq!(m.wavevector(3.0e8), 2.0);
        assert!(MediumParams::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn couple_sigma_examples() {
        assert_eq!(couple_sigma(order(1.0), 1.0).unwrap(), 1.0);
        assert_eq!(couple_sigma(order(0.25), 1.0).unwrap(), 0.5);
        assert_eq!(couple_sigma(order(1.0), 4.0).unwrap(), 0.25);
        assert!(couple_sigma(order(1.0), 0.0).is_err());
        for i in 1..=10 {
            let g = order(i as f64 / 10.0);
            let s = couple_sigma(g, 3.0).unwrap();
            assert!(s > 0.0 && s <= 1.0 / 3.0 + 1e-15);
            assert!((s * s * 9.0 - g.value()).abs() < 1e-15);
        }
    }

    #[test]
    fn free_sigma_above_period_is_rejected() {
        assert!(TimeFractionalWave::free(order(0.5), 2.0, 0.6, 1.0, one()).is_err());
        assert!(TimeFractionalWave::free(order(0.5), 2.0, 0.5, 1.0, one()).is_ok());
        assert!(TimeFractionalWave::free(order(0.5), 2.0, -0.1, 1.0, one()).is_err());
    }

    #[test]
    fn time_solution_examples() {
        let w = TimeFractionalWave::coupled(order(1.0), 1.0, 1.0, one()).unwrap();
        assert!((time_solution_u(&w, PI).unwrap() + 1.0).abs() < 1e-13);
        assert_eq!(time_solution_u(&w, 0.0).unwrap(), 1.0);
        assert!(time_solution_u(&w, -1.0).is_err());

        let w = TimeFractionalWave::coupled(order(0.5), 1.0, 1.0, one()).unwrap();
        assert!((w.sigma() - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((w.omega_sq() - 1.0 / SQRT_2).abs() < 1e-15);
        let u = time_solution_u(&w, SQRT_2).unwrap();
        assert!((u - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn time_field_examples() {
        let w = TimeFractionalWave::coupled(order(1.0), 1.0, 1.0, one()).unwrap();
        let z = time_solution_field(&w, 0.0, PI).unwrap();
        assert!((z.re + 1.0).abs() < 1e-13 && z.im.abs() < 1e-13);

        let zero =
            TimeFractionalWave::coupled(order(0.7), 1.0, 2.0, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(time_solution_field(&zero, 1.3, 0.4).unwrap().norm(), 0.0);

        let w = TimeFractionalWave::free(order(0.5), 1.0, 0.5, 1.0, one()).unwrap();
        assert_eq!(w.omega_sq(), 0.5);
        let z = time_solution_field(&w, 0.0, 2.0).unwrap();
        assert!((z.re - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn dimensionless_time_examples() {
        assert!((time_solution_dimensionless(order(1.0), PI).unwrap() + 1.0).abs() < 1e-13);
        assert_eq!(time_solution_dimensionless(order(0.3), 0.0).unwrap(), 1.0);
        let v = time_solution_dimensionless(order(0.5), SQRT_2).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn decay_time_examples() {
        let w = TimeFractionalWave::free(order(0.5), 1.0, 1.0, 1.0, one()).unwrap();
        assert_eq!(decay_time(&w).unwrap(), 1.0);
        let w = TimeFractionalWave::free(order(0.5), 2.0, 0.125, 1.0, one()).unwrap();
        assert_eq!(decay_time(&w).unwrap(), 2.0);
        let w = TimeFractionalWave::coupled(order(0.5), 1.0, 1.0, one()).unwrap();
        assert!((decay_time(&w).unwrap() - SQRT_2).abs() < 1e-15);
        let w = TimeFractionalWave::coupled(order(0.6), 1.0, 1.0, one()).unwrap();
        assert!(matches!(decay_time(&w), Err(Error::Order { .. })));
    }

    #[test]
    fn space_solution_examples() {
        let w = SpaceFractionalWave::coupled(order(1.0), 1.0, 1.0, one()).unwrap();
        assert_eq!(w.k_tilde_sq(), 1.0);
        assert!((space_solution_u(&w, PI).unwrap() + 1.0).abs() < 1e-13);
        assert_eq!(space_solution_u(&w, 0.0).unwrap(), 1.0);

        let w = SpaceFractionalWave::free(order(0.5), 1.0, 0.25, 1.0, one()).unwrap();
        assert_eq!(w.k_tilde_sq(), 0.25);
        assert!((space_solution_u(&w, 4.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!(space_solution_u(&w, -0.1).is_err());
    }

    #[test]
    fn space_field_examples() {
        let w = SpaceFractionalWave::coupled(order(1.0), 1.0, 2.0, one()).unwrap();
        let z = space_solution_field(&w, PI, 0.0).unwrap();
        assert!((z.re + 1.0).abs() < 1e-13 && z.im.abs() < 1e-15);

        let w =
            SpaceFractionalWave::free(order(0.5), 1.0, 1.0, 3.0, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(space_solution_field(&w, 0.7, 0.2).unwrap().norm(), 0.0);

        let w = SpaceFractionalWave::free(order(0.5), 1.0, 1.0, 3.0, one()).unwrap();
        let z = space_solution_field(&w, 1.0, 0.0).unwrap();
        assert!((z.re - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn dimensionless_space_examples() {
        assert!((space_solution_dimensionless(order(1.0), PI).unwrap() + 1.0).abs() < 1e-13);
        assert_eq!(space_solution_dimensionless(order(0.9), 0.0).unwrap(), 1.0);
        assert_eq!(
            space_solution_dimensionless(order(0.75), 2.0).unwrap(),
            time_solution_dimensionless(order(0.75), 2.0).unwrap()
        );
    }

    #[test]
    fn decay_length_examples() {
        let w = SpaceFractionalWave::free(order(0.5), 1.0, 1.0, 1.0, one()).unwrap();
        assert_eq!(decay_length(&w).unwrap(), 1.0);
        let w = SpaceFractionalWave::free(order(0.5), 2.0, 0.5, 1.0, one()).unwrap();
        assert_eq!(decay_length(&w).unwrap(), 0.5);
        let w = SpaceFractionalWave::coupled(order(0.5), 1.0, 1.0, one()).unwrap();
        assert!((decay_length(&w).unwrap() - SQRT_2).abs() < 1e-15);
        let w = SpaceFractionalWave::coupled(order(1.0), 1.0, 1.0, one()).unwrap();
        assert!(decay_length(&w).is_err());
    }

    #[test]
    fn coupled_frequency_identity() {
        for i in 1..=10 {
            let g = order(i as f64 / 10.0);
            for &w0 in &[0.5, 1.0, 7.0] {
                let w = TimeFractionalWave::coupled(g, w0, 1.0, one()).unwrap();
                let want = g.value().powf(1.0 - g.value()) * w0.powf(2.0 * g.value());
                assert!((w.omega_sq() - want).abs() <= 1e-12 * want);
            }
        }
    }
}
