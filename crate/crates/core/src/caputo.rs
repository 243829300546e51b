//! Caputo fractional derivatives of uniformly sampled functions.
//!
//! For 0 < μ ≤ 2 with n = ⌈μ⌉,
//!
//! ```text
//! D^μ f(t) = 1/Γ(n-μ) ∫_{t0}^{t} f^{(n)}(τ) (t-τ)^{n-μ-1} dτ,
//! ```
//!
//! and integer orders reduce to ordinary derivatives. Two independent
//! discretizations are provided:
//!
//! * [`caputo_quadrature`]: finite-difference f^{(n)}, linearly interpolated
//!   and integrated exactly against the weakly singular kernel, at one node;
//! * [`caputo_l1`]: the L1 scheme on the whole grid. Orders in (1, 2) are
//!   taken as order μ-1 acting on the finite-difference first derivative.
//!
//! [`caputo_l1_corrected`] adds starting weights that make the L1 scheme
//! exact for a given set of powers t^σ, which restores convergence for
//! solutions that behave like t^σ near the lower terminal.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special::{gamma, recip_gamma};

/// Uniformly sampled real function, `values[i] = f(t0 + i·dt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
}

impl SampledSignal {
    pub const MIN_SAMPLES: usize = 3;

    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param("dt", format!("{dt} is not a positive step")));
        }
        if !t0.is_finite() {
            return Err(Error::param("t0", format!("{t0} is not finite")));
        }
        if values.len() < Self::MIN_SAMPLES {
            return Err(Error::InsufficientSamples {
                needed: Self::MIN_SAMPLES,
                available: values.len(),
            });
        }
        Ok(SampledSignal { t0, dt, values })
    }

    /// Samples `f` at `len` points starting from `t0`.
    pub fn from_fn(t0: f64, dt: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..len).map(|i| f(t0 + i as f64 * dt)).collect();
        Self::new(t0, dt, values)
    }

    /// Like [`SampledSignal::from_fn`] for fallible sample functions.
    pub fn try_from_fn(
        t0: f64,
        dt: f64,
        len: usize,
        f: impl Fn(f64) -> Result<f64>,
    ) -> Result<Self> {
        let values = (0..len)
            .map(|i| f(t0 + i as f64 * dt))
            .collect::<Result<Vec<_>>>()?;
        Self::new(t0, dt, values)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t(&self, index: usize) -> f64 {
        self.t0 + index as f64 * self.dt
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        SampledSignal {
            t0: self.t0,
            dt: self.dt,
            values,
        }
    }
}

/// Caputo order μ ∈ (0, 2] with n = ⌈μ⌉.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaputoOrder {
    mu: f64,
    n: u32,
}

impl CaputoOrder {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 2.0) {
            return Err(Error::Order {
                order: mu,
                range: "(0, 2]",
            });
        }
        Ok(CaputoOrder {
            mu,
            n: mu.ceil() as u32,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Smallest integer n with n-1 < μ ≤ n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Integer orders are ordinary derivatives.
    pub fn is_integer(&self) -> bool {
        self.mu == self.n as f64
    }
}

/// Whole-grid derivative; nodes before `first_reliable` carry the endpoint
/// stencil error and should not be used for accuracy claims.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeGrid {
    pub derivative: SampledSignal,
    pub first_reliable: usize,
}

/// Coefficient c in D^μ t^σ = c·t^{σ-μ} (Caputo, lower terminal 0).
///
/// Zero for integer σ < ⌈μ⌉, where t^σ is annihilated.
fn power_coefficient(sigma: f64, order: CaputoOrder) -> f64 {
    if sigma == sigma.round() && sigma < order.n as f64 {
        return 0.0;
    }
    gamma(sigma + 1.0).unwrap_or(f64::INFINITY) * recip_gamma(sigma + 1.0 - order.mu)
}

/// Closed-form Caputo derivative of t^p: Γ(p+1)/Γ(p+1-μ)·t^{p-μ}.
///
/// Integer powers below ⌈μ⌉ give 0.
pub fn power_rule_reference(p: f64, mu: f64, t: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::domain(
            "power_rule_reference",
            format!("p = {p} < 1"),
        ));
    }
    if !(mu > 0.0 && mu < 2.0) {
        return Err(Error::Order {
            order: mu,
            range: "(0, 2)",
        });
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(
            "power_rule_reference",
            format!("t = {t} is not positive"),
        ));
    }
    let order = CaputoOrder::new(mu)?;
    Ok(power_coefficient(p, order) * t.powf(p - mu))
}

/// Second-order finite-difference derivative of order 1 or 2 on the whole
/// grid: central in the interior, one-sided at both ends.
pub fn finite_difference(f: &SampledSignal, derivative_order: u32) -> Result<SampledSignal> {
    let values = match derivative_order {
        1 => fd_first(f.values(), f.dt()),
        2 => {
            if f.len() < 4 {
                return Err(Error::InsufficientSamples {
                    needed: 4,
                    available: f.len(),
                });
            }
            fd_second(f.values(), f.dt())
        }
        other => {
            return Err(Error::Order {
                order: other as f64,
                range: "{1, 2}",
            })
        }
    };
    Ok(f.with_values(values))
}

// Stencils are written on differences so constants cancel exactly.
fn fd_first(v: &[f64], dt: f64) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n];
    out[0] = (3.0 * (v[1] - v[0]) - (v[2] - v[1])) / (2.0 * dt);
    for i in 1..n - 1 {
        out[i] = (v[i + 1] - v[i - 1]) / (2.0 * dt);
    }
    out[n - 1] = (3.0 * (v[n - 1] - v[n - 2]) - (v[n - 2] - v[n - 3])) / (2.0 * dt);
    out
}

fn fd_second(v: &[f64], dt: f64) -> Vec<f64> {
    let n = v.len();
    let h2 = dt * dt;
    let mut out = vec![0.0; n];
    out[0] = (2.0 * (v[0] - v[1]) - 3.0 * (v[1] - v[2]) + (v[2] - v[3])) / h2;
    for i in 1..n - 1 {
        out[i] = ((v[i + 1] - v[i]) - (v[i] - v[i - 1])) / h2;
    }
    out[n - 1] =
        (2.0 * (v[n - 1] - v[n - 2]) - 3.0 * (v[n - 2] - v[n - 3]) + (v[n - 3] - v[n - 4])) / h2;
    out
}

/// Caputo derivative at `t0 + t_index·dt` by product integration.
///
/// f^{(n)} comes from [`finite_difference`] and is interpolated linearly on
/// each cell; the kernel (t-τ)^{n-μ-1} is integrated exactly against it.
pub fn caputo_quadrature(f: &SampledSignal, order: CaputoOrder, t_index: usize) -> Result<f64> {
    let needed = (t_index + 1).max(3);
    if t_index < 2 || t_index >= f.len() {
        return Err(Error::InsufficientSamples {
            needed,
            available: f.len(),
        });
    }
    let g = finite_difference(f, order.n)?;
    let g = g.values();
    if order.is_integer() {
        return Ok(g[t_index]);
    }
    // kernel exponent -a with a = μ+1-n ∈ (0, 1); w = 1-a = n-μ
    let w = order.n as f64 - order.mu;
    let j = t_index;
    let mut total = 0.0;
    for k in 0..j {
        let far = (j - k) as f64;
        let near = far - 1.0;
        let whole = (far.powf(w) - near.powf(w)) / w;
        let ramp = far * whole - (far.powf(w + 1.0) - near.powf(w + 1.0)) / (w + 1.0);
        total += g[k] * (whole - ramp) + g[k + 1] * ramp;
    }
    Ok(total * f.dt().powf(w) * recip_gamma(w))
}

/// L1 sum on a unit grid, order ν ∈ (0, 1), without the dt^{-ν} factor.
fn l1_unit(values: &[f64], nu: f64) -> Vec<f64> {
    let n = values.len();
    let w = 1.0 - nu;
    let b: Vec<f64> = (0..n)
        .map(|k| (k as f64 + 1.0).powf(w) - (k as f64).powf(w))
        .collect();
    let diffs: Vec<f64> = values.windows(2).map(|p| p[1] - p[0]).collect();
    let scale = recip_gamma(2.0 - nu);
    (0..n)
        .into_par_iter()
        .map(|j| (0..j).map(|k| b[k] * diffs[j - 1 - k]).sum::<f64>() * scale)
        .collect()
}

/// Discrete operator on a unit grid; the derivative is dt^{-μ} times this.
fn operator_unit(values: &[f64], order: CaputoOrder) -> Vec<f64> {
    match (order.is_integer(), order.n) {
        (true, 1) => fd_first(values, 1.0),
        (true, _) => fd_second(values, 1.0),
        (false, 1) => l1_unit(values, order.mu),
        (false, _) => l1_unit(&fd_first(values, 1.0), order.mu - 1.0),
    }
}

fn first_reliable(order: CaputoOrder) -> usize {
    match (order.is_integer(), order.n) {
        (true, _) => 0,
        (false, 1) => 1,
        (false, _) => 2,
    }
}

/// Caputo derivative on the whole grid by the L1 scheme.
///
/// Integer orders fall back to [`finite_difference`].
pub fn caputo_l1(f: &SampledSignal, order: CaputoOrder) -> Result<DerivativeGrid> {
    if f.len() < 4 {
        return Err(Error::InsufficientSamples {
            needed: 4,
            available: f.len(),
        });
    }
    let scale = f.dt().powf(-order.mu);
    let values = operator_unit(f.values(), order)
        .into_iter()
        .map(|v| v * scale)
        .collect();
    Ok(DerivativeGrid {
        derivative: f.with_values(values),
        first_reliable: first_reliable(order),
    })
}

/// L1 scheme with starting corrections that make it exact for t^σ, σ in
/// `exponents`, with t measured from the grid origin.
///
/// The powers the plain scheme already reproduces (t, and t² for μ > 1) are
/// added to the set so the corrections do not spoil them. Each correction
/// uses one extra starting node, so the grid must hold more nodes than
/// exponents. Integer orders are returned uncorrected.
pub fn caputo_l1_corrected(
    f: &SampledSignal,
    order: CaputoOrder,
    exponents: &[f64],
) -> Result<DerivativeGrid> {
    let mut plain = caputo_l1(f, order)?;
    if order.is_integer() {
        return Ok(plain);
    }
    let set = correction_exponents(order, exponents)?;
    let m = set.len();
    if m + 2 > f.len() {
        return Err(Error::InsufficientSamples {
            needed: m + 2,
            available: f.len(),
        });
    }
    let n = f.len();
    // rows: exponents, columns: starting nodes 1..=m
    let matrix: Vec<Vec<f64>> = set
        .iter()
        .map(|&s| (1..=m).map(|node| (node as f64).powf(s)).collect())
        .collect();
    let lu = Lu::factor(matrix)?;
    // defect of the unit-grid operator on each power
    let defects: Vec<Vec<f64>> = set
        .par_iter()
        .map(|&s| {
            let samples: Vec<f64> = (0..n).map(|k| (k as f64).powf(s)).collect();
            let approx = operator_unit(&samples, order);
            let c = power_coefficient(s, order);
            (0..n)
                .map(|j| {
                    let exact = if j == 0 {
                        0.0
                    } else {
                        c * (j as f64).powf(s - order.mu)
                    };
                    exact - approx[j]
                })
                .collect()
        })
        .collect();
    let v = f.values();
    let scale = f.dt().powf(-order.mu);
    let out: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let rhs: Vec<f64> = defects.iter().map(|d| d[j]).collect();
            let weights = lu.solve(&rhs);
            weights
                .iter()
                .enumerate()
                .map(|(i, w)| w * (v[i + 1] - v[0]))
                .sum::<f64>()
                * scale
        })
        .collect();
    for (d, c) in plain.derivative.values.iter_mut().zip(out) {
        *d += c;
    }
    Ok(plain)
}

fn correction_exponents(order: CaputoOrder, exponents: &[f64]) -> Result<Vec<f64>> {
    let floor = (order.n - 1) as f64;
    let mut set: Vec<f64> = Vec::new();
    let builtin: &[f64] = if order.n == 1 { &[1.0] } else { &[1.0, 2.0] };
    for &s in exponents.iter().chain(builtin) {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::param(
                "exponents",
                format!("{s} is not a positive power"),
            ));
        }
        if s <= floor && s != s.round() {
            return Err(Error::param(
                "exponents",
                format!("t^{s} has no Caputo derivative of order {}", order.mu),
            ));
        }
        if !set.iter().any(|&x| (x - s).abs() < 1e-9) {
            set.push(s);
        }
    }
    set.sort_by(|a, b| a.total_cmp(b));
    Ok(set)
}

/// Dense LU with partial pivoting for the small correction systems.
struct Lu {
    lu: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: Vec<Vec<f64>>) -> Result<Self> {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap_or(col);
            if a[pivot][col].abs() < 1e-300 {
                return Err(Error::param("exponents", "correction system is singular"));
            }
            a.swap(col, pivot);
            perm.swap(col, pivot);
            for row in col + 1..n {
                let (upper, lower) = a.split_at_mut(row);
                let (pivot_row, target) = (&upper[col], &mut lower[0]);
                let factor = target[col] / pivot_row[col];
                target[col] = factor;
                for (x, p) in target[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                    *x -= factor * p;
                }
            }
        }
        Ok(Lu { lu: a, perm })
    }

    /// Solves A x = b.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.lu[i][k] * y[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.lu[i][k] * y[k];
            }
            y[i] /= self.lu[i][i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(t_max: f64, intervals: usize, f: impl Fn(f64) -> f64) -> SampledSignal {
        SampledSignal::from_fn(0.0, t_max / intervals as f64, intervals + 1, f).unwrap()
    }

    #[test]
    fn signal_invariants() {
        assert!(SampledSignal::new(0.0, 0.0, vec![1.0; 5]).is_err());
        assert!(SampledSignal::new(0.0, -1.0, vec![1.0; 5]).is_err());
        assert!(matches!(
            SampledSignal::new(0.0, 0.1, vec![1.0, 2.0]),
            Err(Error::InsufficientSamples { .. })
        ));
        let s = SampledSignal::new(1.0, 0.5, vec![0.0; 4]).unwrap();
        assert_eq!(s.t(3), 2.5);
    }

    #[test]
    fn order_range() {
        assert!(CaputoOrder::new(0.0).is_err());
        assert!(CaputoOrder::new(2.5).is_err());
        assert!(CaputoOrder::new(-0.5).is_err());
        let o = CaputoOrder::new(1.5).unwrap();
        assert_eq!(o.n(), 2);
        assert!(!o.is_integer());
        assert_eq!(CaputoOrder::new(1.0).unwrap().n(), 1);
        assert!(CaputoOrder::new(2.0).unwrap().is_integer());
    }

    #[test]
    fn quadrature_annihilates_constants() {
        let f = grid(1.0, 50, |_| 3.7);
        for &mu in &[0.5, 1.3] {
            let v = caputo_quadrature(&f, CaputoOrder::new(mu).unwrap(), 37).unwrap();
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_linear_half_order() {
        let f = grid(1.0, 64, |t| t);
        let v = caputo_quadrature(&f, CaputoOrder::new(0.5).unwrap(), 64).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn quadrature_integer_order_is_derivative() {
        let f = grid(1.0, 40, |t| t * t);
        let v = caputo_quadrature(&f, CaputoOrder::new(1.0).unwrap(), 40).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_rejects_early_or_out_of_range_index() {
        let f = grid(1.0, 10, |t| t);
        let o = CaputoOrder::new(0.5).unwrap();
        assert!(caputo_quadrature(&f, o, 1).is_err());
        assert!(caputo_quadrature(&f, o, 11).is_err());
    }

    #[test]
    fn quadrature_converges_for_cubic() {
        let o = CaputoOrder::new(0.7).unwrap();
        let exact = power_rule_reference(3.0, 0.7, 1.0).unwrap();
        let errs: Vec<f64> = [32, 64, 128]
            .iter()
            .map(|&n| {
                let f = grid(1.0, n, |t| t.powi(3));
                (caputo_quadrature(&f, o, n).unwrap() - exact).abs()
            })
            .collect();
        assert!(errs[1] < errs[0] && errs[2] < errs[1]);
        assert!((errs[1] / errs[2]).log2() > 1.5);
    }

    #[test]
    fn l1_constant_and_linear() {
        let f = grid(2.0, 40, |_| -1.25);
        let d = caputo_l1(&f, CaputoOrder::new(0.4).unwrap()).unwrap();
        assert!(d.derivative.values().iter().all(|v| v.abs() < 1e-12));

        let f = grid(2.0, 40, |t| t);
        let d = caputo_l1(&f, CaputoOrder::new(0.5).unwrap()).unwrap();
        for (i, v) in d.derivative.values().iter().enumerate().skip(1) {
            let want = 2.0 * (f.t(i) / PI).sqrt();
            assert!((v - want).abs() < 1e-12);
        }
        assert_eq!(d.first_reliable, 1);
    }

    #[test]
    fn l1_near_second_order_approaches_minus_cosine() {
        let o = CaputoOrder::new(1.999).unwrap();
        let err = |n: usize| {
            let f = grid(3.0, n, f64::cos);
            let d = caputo_l1(&f, o).unwrap();
            (d.first_reliable..f.len())
                .map(|i| (d.derivative.values()[i] + f.t(i).cos()).abs())
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (err(200), err(400));
        assert!(fine < coarse);
        // the μ = 1.999 operator differs from d²/dt² by O(1e-3)
        assert!(fine < 2e-2, "{fine}");
    }

    #[test]
    fn l1_order_one_limit_matches_first_derivative() {
        let f = grid(2.0, 400, |t| (1.3 * t).sin());
        let d = caputo_l1(&f, CaputoOrder::new(1.0 - 1e-6).unwrap()).unwrap();
        let fd = finite_difference(&f, 1).unwrap();
        for i in 2..f.len() {
            assert!((d.derivative.values()[i] - fd.values()[i]).abs() < 5e-3);
        }
    }

    #[test]
    fn power_rule_examples() {
        assert!((power_rule_reference(1.0, 1.0, 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(
            (power_rule_reference(2.0, 0.5, 1.0).unwrap() - 1.504_505_556_127_350_1).abs() < 1e-14
        );
        assert!(
            (power_rule_reference(1.0, 0.5, 4.0).unwrap() - 2.256_758_334_191_025_1).abs() < 1e-14
        );
        // t is annihilated by orders above one
        assert_eq!(power_rule_reference(1.0, 1.5, 2.0).unwrap(), 0.0);
        assert!(power_rule_reference(0.5, 0.5, 1.0).is_err());
        assert!(power_rule_reference(2.0, 2.0, 1.0).is_err());
        assert!(power_rule_reference(2.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn corrected_scheme_is_exact_on_its_powers() {
        let o = CaputoOrder::new(0.5).unwrap();
        let f = grid(1.0, 64, |t| 2.0 * t.sqrt() - t.powf(1.5) + 0.3 * t);
        let d = caputo_l1_corrected(&f, o, &[0.5, 1.5]).unwrap();
        for i in 1..f.len() {
            let t = f.t(i);
            let want = 2.0 * power_coefficient(0.5, o) - power_coefficient(1.5, o) * t
                + 0.3 * power_coefficient(1.0, o) * t.sqrt();
            assert!((d.derivative.values()[i] - want).abs() < 1e-10, "node {i}");
        }
    }

    #[test]
    fn corrected_scheme_rejects_bad_exponents() {
        let f = grid(1.0, 16, |t| t);
        let o = CaputoOrder::new(1.5).unwrap();
        assert!(caputo_l1_corrected(&f, o, &[0.5]).is_err());
        assert!(caputo_l1_corrected(&f, o, &[-1.0]).is_err());
        let tiny = grid(1.0, 3, |t| t);
        assert!(
            caputo_l1_corrected(&tiny, CaputoOrder::new(0.5).unwrap(), &[0.3, 0.6, 0.9]).is_err()
        );
    }

    #[test]
    fn finite_difference_orders() {
        let f = grid(1.0, 20, |t| t * t * t);
        let d2 = finite_difference(&f, 2).unwrap();
        for i in 0..f.len() {
            assert!((d2.values()[i] - 6.0 * f.t(i)).abs() < 1e-9);
        }
        assert!(finite_difference(&f, 3).is_err());
    }
}
