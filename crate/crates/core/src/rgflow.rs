//! One-loop RG flow of the anisotropic Kondo couplings and its comparison
//! with the integrable coupling trajectories.
//!
//! With `t = log Lambda` and `a = -2u/pi` the flow reads
//!
//! ```text
//! dJ_par/dt  = (a / 2u) J_perp^2
//! dJ_perp/dt = (a / 2u) J_par J_perp
//! ```
//!
//! which conserves `J_par^2 - J_perp^2`. The integrable trajectory is the
//! closed-form coupling family evaluated at `phi(t) = c - a t`.

use std::f64::consts::PI;

use crate::couplings::{couplings_from_spectral, rg_slope, Branch, CouplingPair};
use crate::error::{Error, Result};

/// Relative tolerance for `a == -2u/pi` in [`compare_with_integrable`].
pub const IDENTIFICATION_RTOL: f64 = 1e-12;

pub fn rg_vector_field(pair: CouplingPair, a: f64, u: f64) -> Result<(f64, f64)> {
    if u == 0.0 {
        return Err(Error::DomainError("u = 0 is the SU(2) point; use su2_rg_field".into()));
    }
    let g = a / (2.0 * u);
    Ok((g * pair.j_perp * pair.j_perp, g * pair.j_par * pair.j_perp))
}

pub fn su2_rg_field(j: f64) -> f64 {
    -j * j / PI
}

/// `(t, state)` samples of a fixed-step integration.
pub type Samples<const D: usize> = Vec<(f64, [f64; D])>;

/// Classical RK4 with `steps` equal steps from `t0` to `t1`; the last sample
/// sits at `t1` exactly. On a non-finite state returns the last finite sample.
pub fn rk4<const D: usize, F>(
    field: F,
    y0: [f64; D],
    t0: f64,
    t1: f64,
    steps: usize,
) -> std::result::Result<Samples<D>, (f64, [f64; D])>
where
    F: Fn(f64, &[f64; D]) -> [f64; D],
{
    let h = (t1 - t0) / steps as f64;
    let axpy = |y: &[f64; D], k: &[f64; D], s: f64| -> [f64; D] { std::array::from_fn(|i| y[i] + s * k[i]) };

    let mut out = Vec::with_capacity(steps + 1);
    let mut t = t0;
    let mut y = y0;
    out.push((t, y));
    for n in 1..=steps {
        let k1 = field(t, &y);
        let k2 = field(t + h / 2.0, &axpy(&y, &k1, h / 2.0));
        let k3 = field(t + h / 2.0, &axpy(&y, &k2, h / 2.0));
        let k4 = field(t + h, &axpy(&y, &k3, h));
        let next: [f64; D] = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        if next.iter().any(|v| !v.is_finite()) {
            return Err((t, y));
        }
        y = next;
        t = if n == steps { t1 } else { t0 + n as f64 * h };
        out.push((t, y));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RgMeta {
    pub a: f64,
    pub u: f64,
    /// Signed step; negative when integrating towards smaller `t`.
    pub step: f64,
    pub method: &'static str,
}

/// Samples are monotone in `t` in the direction of integration.
#[derive(Debug, Clone, PartialEq)]
pub struct RgTrajectory {
    pub samples: Vec<(f64, CouplingPair)>,
    pub meta: RgMeta,
}

impl RgTrajectory {
    pub fn last(&self) -> (f64, CouplingPair) {
        *self.samples.last().expect("trajectory has at least one sample")
    }
}

fn check_span(t0: f64, t1: f64, steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::DomainError("steps must be at least 1".into()));
    }
    if !(t0.is_finite() && t1.is_finite()) || t0 == t1 {
        return Err(Error::DomainError(format!("invalid time span [{t0}, {t1}]")));
    }
    Ok(())
}

pub fn integrate_rg(pair0: CouplingPair, t0: f64, t1: f64, steps: usize, a: f64, u: f64) -> Result<RgTrajectory> {
    check_span(t0, t1, steps)?;
    rg_vector_field(pair0, a, u)?;
    let field = |_t: f64, y: &[f64; 2]| {
        let (dp, dq) = rg_vector_field(CouplingPair::new(y[0], y[1]), a, u).expect("u checked");
        [dp, dq]
    };
    let samples = rk4(field, [pair0.j_par, pair0.j_perp], t0, t1, steps).map_err(|(t, y)| Error::DivergedFlow {
        t,
        j_par: y[0],
        j_perp: y[1],
    })?;
    Ok(RgTrajectory {
        samples: samples
            .into_iter()
            .map(|(t, y)| (t, CouplingPair::new(y[0], y[1])))
            .collect(),
        meta: RgMeta {
            a,
            u,
            step: (t1 - t0) / steps as f64,
            method: "rk4",
        },
    })
}

/// SU(2) flow `dJ/dt = -J^2/pi`; samples `(t, J)`.
pub fn integrate_su2(j0: f64, t0: f64, t1: f64, steps: usize) -> Result<Vec<(f64, f64)>> {
    check_span(t0, t1, steps)?;
    let samples =
        rk4(|_t, y: &[f64; 1]| [su2_rg_field(y[0])], [j0], t0, t1, steps).map_err(|(t, y)| Error::DivergedFlow {
            t,
            j_par: y[0],
            j_perp: y[0],
        })?;
    Ok(samples.into_iter().map(|(t, y)| (t, y[0])).collect())
}

pub fn conserved_quantity(pair: CouplingPair) -> f64 {
    pair.j_par * pair.j_par - pair.j_perp * pair.j_perp
}

/// Largest `|Q(t) - Q(t0)|` along a trajectory.
pub fn conserved_drift(traj: &RgTrajectory) -> f64 {
    let q0 = conserved_quantity(traj.samples[0].1);
    traj.samples
        .iter()
        .map(|(_, p)| (conserved_quantity(*p) - q0).abs())
        .fold(0.0, f64::max)
}

/// Spectral parameter of the integrable trajectory at time `t`.
pub fn integrable_phi(t: f64, a: f64, c: f64) -> f64 {
    c - a * t
}

/// Closed-form couplings at each `t` with `a = -2u/pi`.
pub fn integrable_trajectory(u: f64, c: f64, ts: &[f64], branch: Branch) -> Result<Vec<(f64, CouplingPair)>> {
    let a = rg_slope(u);
    ts.iter()
        .map(|&t| couplings_from_spectral(u, integrable_phi(t, a, c), branch).map(|p| (t, p)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SampleDeviation {
    pub t: f64,
    pub rel_par: f64,
    pub rel_perp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub max_rel_dev: f64,
    pub deviations: Vec<SampleDeviation>,
}

fn rel(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        x.abs()
    } else {
        ((x - reference) / reference).abs()
    }
}

fn identified(a: f64, u: f64) -> bool {
    let expected = rg_slope(u);
    (a - expected).abs() <= IDENTIFICATION_RTOL * expected.abs()
}

pub fn compare_with_integrable(traj: &RgTrajectory, u: f64, a: f64, c: f64, branch: Branch) -> Result<Comparison> {
    for got in [a, traj.meta.a] {
        if !identified(got, u) {
            return Err(Error::IdentificationMismatch {
                expected: rg_slope(u),
                got,
            });
        }
    }
    let mut deviations = Vec::with_capacity(traj.samples.len());
    let mut max_rel_dev = 0.0f64;
    for &(t, pair) in &traj.samples {
        let exact = couplings_from_spectral(u, integrable_phi(t, a, c), branch)?;
        let d = SampleDeviation {
            t,
            rel_par: rel(pair.j_par, exact.j_par),
            rel_perp: rel(pair.j_perp, exact.j_perp),
        };
        max_rel_dev = max_rel_dev.max(d.rel_par).max(d.rel_perp);
        deviations.push(d);
    }
    Ok(Comparison {
        max_rel_dev,
        deviations,
    })
}

/// Max relative deviation of SU(2) samples from `J = pi/t`.
pub fn compare_su2(samples: &[(f64, f64)]) -> Result<f64> {
    samples.iter().try_fold(0.0f64, |acc, &(t, j)| {
        let exact = crate::couplings::su2_coupling(t)?;
        Ok(acc.max(rel(j, exact)))
    })
}

/// `|su2_rg_field(pi/t) - d/dt(pi/t)|`.
pub fn su2_closed_form_residual(t: f64) -> f64 {
    (su2_rg_field(PI / t) + PI / (t * t)).abs()
}

/// Central difference of `J_par` along the closed-form family in `phi`.
pub fn jpar_phi_derivative(u: f64, phi: f64, h: f64, branch: Branch) -> Result<f64> {
    let hi = couplings_from_spectral(u, phi + h, branch)?;
    let lo = couplings_from_spectral(u, phi - h, branch)?;
    Ok((hi.j_par - lo.j_par) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn field_examples() {
        assert_eq!(
            rg_vector_field(CouplingPair::new(0.3, 0.0), -0.7, 0.4).unwrap(),
            (0.0, 0.0)
        );
        let u = 0.5;
        let (dp, dq) = rg_vector_field(CouplingPair::new(0.3, 0.1), rg_slope(u), u).unwrap();
        assert_relative_eq!(dp, -0.01 / PI, max_relative = 1e-14);
        assert_relative_eq!(dq, -0.03 / PI, max_relative = 1e-14);
        let (dp, dq) = rg_vector_field(CouplingPair::new(0.0, 0.2), rg_slope(u), u).unwrap();
        assert_relative_eq!(dp, -0.04 / PI, max_relative = 1e-14);
        assert_eq!(dq, 0.0);
        assert!(rg_vector_field(CouplingPair::new(0.3, 0.1), -0.1, 0.0).is_err());
    }

    #[test]
    fn su2_field_examples() {
        assert_eq!(su2_rg_field(0.0), 0.0);
        assert_relative_eq!(su2_rg_field(PI), -PI, max_relative = 1e-15);
        assert_relative_eq!(su2_rg_field(PI / 2.0), -PI / 4.0, max_relative = 1e-15);
    }

    #[test]
    fn sampling_contract() {
        let tr = integrate_rg(CouplingPair::new(0.3, 0.1), 0.0, 0.7, 3, -0.3, 0.5).unwrap();
        assert_eq!(tr.samples.len(), 4);
        assert_eq!(tr.samples[0].0, 0.0);
        assert_eq!(tr.last().0, 0.7);
        assert!(tr.samples.windows(2).all(|w| w[0].0 < w[1].0));

        let back = integrate_rg(CouplingPair::new(0.3, 0.1), 1.0, -2.0, 7, -0.3, 0.5).unwrap();
        assert_eq!(back.last().0, -2.0);
        assert!(back.meta.step < 0.0);
        assert!(back.samples.windows(2).all(|w| w[0].0 > w[1].0));

        assert!(integrate_rg(CouplingPair::new(0.3, 0.1), 0.0, 0.0, 3, -0.3, 0.5).is_err());
        assert!(integrate_rg(CouplingPair::new(0.3, 0.1), 0.0, 1.0, 0, -0.3, 0.5).is_err());
    }

    #[test]
    fn zero_couplings_are_fixed() {
        let tr = integrate_rg(CouplingPair::new(0.0, 0.0), 0.0, 5.0, 10, -0.3, 0.5).unwrap();
        assert!(tr.samples.iter().all(|(_, p)| *p == CouplingPair::new(0.0, 0.0)));
    }

    #[test]
    fn perp_zero_line_is_invariant() {
        let tr = integrate_rg(CouplingPair::new(0.4, 0.0), 0.0, 5.0, 50, -0.3, 0.5).unwrap();
        assert!(tr.samples.iter().all(|(_, p)| *p == CouplingPair::new(0.4, 0.0)));
    }

    #[test]
    fn conserved_quantity_examples() {
        assert_relative_eq!(
            conserved_quantity(CouplingPair::new(0.3, 0.1)),
            0.08,
            max_relative = 1e-15
        );
        let u = 0.3;
        assert_relative_eq!(conserved_quantity(CouplingPair::new(2.0 * u, 0.0)), 4.0 * u * u);
        let u = 0.5;
        let tr = integrate_rg(CouplingPair::new(0.3, 0.1), 0.0, 10.0, 10_000, rg_slope(u), u).unwrap();
        assert!(conserved_drift(&tr) < 1e-10);
    }

    #[test]
    fn fourth_order_convergence() {
        let (a, u) = (-1.0, 0.5);
        let p0 = CouplingPair::new(0.8, 0.6);
        let end = |steps| integrate_rg(p0, 0.0, 1.0, steps, a, u).unwrap().last().1;
        let reference = end(1_000_000);
        let err = |steps| {
            let p = end(steps);
            (p.j_par - reference.j_par).hypot(p.j_perp - reference.j_perp)
        };
        let ratio = err(20) / err(40);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn divergence_reports_last_finite_sample() {
        // dJ/dt = J^2 blows up at t = 1/J0
        let err = integrate_rg(CouplingPair::new(1.0, 1.0), 0.0, 5.0, 50, 1.0, 0.5).unwrap_err();
        match err {
            Error::DivergedFlow { t, j_par, j_perp } => {
                assert!(t > 0.0 && t < 5.0);
                assert!(j_par.is_finite() && j_perp.is_finite());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn su2_trajectory_matches_closed_form() {
        let samples = integrate_su2(PI, 1.0, 10.0, 100_000).unwrap();
        assert!(compare_su2(&samples).unwrap() < 1e-8);
        for k in 0..=200 {
            let t = 0.5 + 99.5 * k as f64 / 200.0;
            assert!(su2_closed_form_residual(t) <= 4.0 * f64::EPSILON * PI / (t * t));
        }
    }

    #[test]
    fn identification_is_enforced() {
        let u = 0.02;
        let tr = integrate_rg(CouplingPair::new(0.05, 0.03), 0.0, -1.0, 10, -0.3, u).unwrap();
        assert!(matches!(
            compare_with_integrable(&tr, u, rg_slope(u), 1.0, Branch::Plus),
            Err(Error::IdentificationMismatch { .. })
        ));
    }

    fn deviation(u: f64) -> f64 {
        let c = 1.0986;
        let a = rg_slope(u);
        let t1 = (0.5 - c) * PI / (2.0 * u);
        let p0 = couplings_from_spectral(u, integrable_phi(0.0, a, c), Branch::Plus).unwrap();
        let tr = integrate_rg(p0, 0.0, t1, 2000, a, u).unwrap();
        compare_with_integrable(&tr, u, a, c, Branch::Plus).unwrap().max_rel_dev
    }

    #[test]
    fn anisotropic_deviation_is_quadratic() {
        let d1 = deviation(0.02);
        let d2 = deviation(0.002);
        assert_relative_eq!(d1, 2.909997013748473e-4, max_relative = 1e-6);
        assert_relative_eq!(d2, 2.9128834037507813e-6, max_relative = 1e-4);
        let ratio = d1 / d2;
        assert!((80.0..=120.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn closed_form_matches_constraint_flow_direction() {
        let u = 0.02;
        let traj = integrable_trajectory(u, 1.0986, &[0.0, -10.0, -20.0], Branch::Plus).unwrap();
        assert!(traj.windows(2).all(|w| w[1].1.j_perp > w[0].1.j_perp));
    }

    #[test]
    fn toulouse_parallel_coupling_is_stationary() {
        let u = PI / 2.0;
        for phi in [0.1, 0.5, 1.0, 2.0, 4.0] {
            for branch in [Branch::Plus, Branch::Minus] {
                let d = jpar_phi_derivative(u, phi, 1e-3, branch).unwrap();
                assert!(d.abs() < 1e-12, "phi {phi}: {d}");
            }
        }
    }
}
