//! First-order correction for a step-density plasma with immobile ions: the
//! ion back-force integrates to an exponential of the drift integral, which
//! corrects the longitudinal velocity, accumulates a displacement deficit
//! relative to the zero-density motion, and defines the turning point where
//! the electrons reverse. The transverse counterpart is a causal-cone wake
//! integral with an explicit envelope bound.

use crate::constants::{density_for_coupling, plasma_coupling};
use crate::kinematics::MotionTables;
use crate::numerics::{cumulative_integral, find_root_monotone, lerp, Grid};
use crate::pulse::EvalMode;
use crate::{Error, Result};

/// Threshold below which the drift is treated as zero when forming the
/// relative error (whose analytic limit at the front is 0).
const DRIFT_FLOOR: f64 = 1e-30;

/// Step plasma: electron density and the derived coupling `K = pi r_e n0`.
#[derive(Debug, Clone, Copy)]
pub struct PlasmaParams {
    /// Electron density (cm^-3).
    pub density: f64,
    /// Coupling constant (cm^-2).
    pub coupling: f64,
}

impl PlasmaParams {
    pub fn from_density(density: f64) -> Result<Self> {
        if !(density.is_finite() && density >= 0.0) {
            return Err(Error::NonPositive { what: "electron density", value: density });
        }
        Ok(PlasmaParams { density, coupling: plasma_coupling(density) })
    }

    pub fn from_coupling(coupling: f64) -> Result<Self> {
        if !(coupling.is_finite() && coupling >= 0.0) {
            return Err(Error::NonPositive { what: "plasma coupling", value: coupling });
        }
        Ok(PlasmaParams { density: density_for_coupling(coupling), coupling })
    }

    pub fn vacuum() -> Self {
        PlasmaParams { density: 0.0, coupling: 0.0 }
    }
}

/// First-order corrected quantities tabulated on the motion grid.
#[derive(Debug, Clone)]
pub struct FirstOrderTables {
    grid: Grid,
    coupling: f64,
    /// Logarithm of the corrected lightcone momentum, `4 K * drift_integral`.
    u_minus_log: Vec<f64>,
    /// Corrected lightcone momentum `gamma - u_z = exp(u_minus_log) >= 1`.
    u_minus: Vec<f64>,
    /// Corrected longitudinal velocity.
    corrected_beta_z: Vec<f64>,
    /// Rate of displacement deficit, `gamma^(0) (beta_z^(0) - beta_z^(1))`.
    deficit_rate: Vec<f64>,
    /// Accumulated deficit (cm): zero-density minus corrected displacement.
    deficit: Vec<f64>,
    /// Relative displacement error: deficit / drift (0 where drift is 0).
    relative_error: Vec<f64>,
}

/// Builds the first-order tables for the given plasma on the motion grid.
pub fn build_first_order(tables: &MotionTables, plasma: &PlasmaParams) -> Result<FirstOrderTables> {
    if !(plasma.coupling.is_finite() && plasma.coupling >= 0.0) {
        return Err(Error::NonPositive { what: "plasma coupling", value: plasma.coupling });
    }
    let grid = tables.grid().clone();
    let pts = grid.points();
    let n = pts.len();
    let k4 = 4.0 * plasma.coupling;
    let mut u_minus_log = Vec::with_capacity(n);
    let mut u_minus = Vec::with_capacity(n);
    let mut corrected_beta_z = Vec::with_capacity(n);
    let mut deficit_rate = Vec::with_capacity(n);
    for &xi in pts {
        let log = k4 * tables.drift_integral_at(xi);
        let uz0 = tables.u_z_at(xi);
        let a = 1.0 + 2.0 * uz0; // 1 + |u_perp|^2 on the driven branch
        // Overflow-safe forms in em = exp(-2 log) <= 1.
        let em = (-2.0 * log).exp();
        u_minus_log.push(log);
        u_minus.push(log.exp());
        corrected_beta_z.push((a * em - 1.0) / (a * em + 1.0));
        deficit_rate.push(a * (-(-2.0 * log).exp_m1()) / (a * em + 1.0));
    }
    let deficit = cumulative_integral(&grid, &deficit_rate)?;
    let mut relative_error = Vec::with_capacity(n);
    for i in 0..n {
        let drift = tables.time_at(pts[i]) - pts[i];
        relative_error.push(if drift < DRIFT_FLOOR {
            0.0
        } else {
            deficit[i] / drift
        });
    }
    Ok(FirstOrderTables {
        grid,
        coupling: plasma.coupling,
        u_minus_log,
        u_minus,
        corrected_beta_z,
        deficit_rate,
        deficit,
        relative_error,
    })
}

impl FirstOrderTables {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn u_minus_log_at(&self, xi: f64) -> f64 {
        lerp(&self.grid, &self.u_minus_log, xi)
    }

    /// Corrected lightcone momentum `gamma - u_z >= 1`.
    pub fn u_minus_at(&self, xi: f64) -> f64 {
        lerp(&self.grid, &self.u_minus, xi)
    }

    pub fn corrected_beta_z_at(&self, xi: f64) -> f64 {
        lerp(&self.grid, &self.corrected_beta_z, xi)
    }

    pub fn deficit_rate_at(&self, xi: f64) -> f64 {
        lerp(&self.grid, &self.deficit_rate, xi)
    }

    /// Displacement deficit `z^(0) - z^(1)` as a function of phase (cm).
    pub fn deficit_at(&self, xi: f64) -> f64 {
        lerp(&self.grid, &self.deficit, xi)
    }

    /// Relative displacement error as a function of phase.
    pub fn relative_error_at(&self, xi: f64) -> f64 {
        lerp(&self.grid, &self.relative_error, xi)
    }

    /// Node values of the relative error (shares the motion grid).
    pub fn relative_error_values(&self) -> &[f64] {
        &self.relative_error
    }

    /// Relative displacement error seen by the particle labelled `label_z`
    /// at light-time `x0`; zero at and before the wave arrival.
    pub fn relative_displacement_error(
        &self,
        tables: &MotionTables,
        x0: f64,
        label_z: f64,
    ) -> f64 {
        let xi = tables.retarded_phase(x0, label_z);
        if xi <= 0.0 {
            return 0.0;
        }
        self.relative_error_at(xi)
    }

    /// First phase past the envelope peak where the corrected longitudinal
    /// velocity vanishes: the electrons start to turn back there.
    ///
    /// Solved on the continuous tabulated identity
    /// `ln(1 + 2 u_z(xi)) = 2 u_minus_log(xi)`, so the defining relation
    /// holds to root tolerance at the returned phase.
    pub fn first_turning_point(&self, tables: &MotionTables) -> Result<f64> {
        if self.coupling == 0.0 {
            // The corrected velocity stays nonnegative without ions.
            return Err(Error::NoTurningPoint { coupling: 0.0 });
        }
        let peak = tables.pulse().envelope.peak_phase();
        let end = tables.pulse().support().1;
        let h = |xi: f64| {
            (1.0 + 2.0 * tables.u_z_at(xi)).ln() - 2.0 * self.u_minus_log_at(xi)
        };
        // Scan the grid nodes in (peak, end] for the first strict sign
        // change (the velocity merely touching zero is not a reversal).
        let pts = self.grid.points();
        let start = if h(peak) < 0.0 {
            // Already turned at the peak: bracket from the front instead.
            0.0
        } else {
            peak
        };
        let mut prev_xi = start;
        for &xi in pts.iter() {
            if xi <= start || xi > end {
                continue;
            }
            if h(xi) < 0.0 {
                return find_root_monotone(h, (prev_xi, xi), 1e-12);
            }
            prev_xi = xi;
        }
        Err(Error::NoTurningPoint { coupling: self.coupling })
    }
}

/// Plasma coupling for which the corrected velocity first vanishes at the
/// prescribed phase `turning_phase`: the closed-form inversion
/// `K = ln(1 + 2 u_z(xi_1)) / (8 drift_integral(xi_1))`, strictly decreasing
/// in `xi_1`. Also returns the implied electron density.
pub fn solve_density_for_turning(tables: &MotionTables, turning_phase: f64) -> Result<PlasmaParams> {
    let uz = tables.u_z_at(turning_phase);
    if uz.is_nan() || uz <= 0.0 {
        return Err(Error::NonPositive {
            what: "longitudinal momentum at the turning phase",
            value: uz,
        });
    }
    let integral = tables.drift_integral_at(turning_phase);
    if integral.is_nan() || integral <= 0.0 {
        return Err(Error::NonPositive {
            what: "drift integral at the turning phase",
            value: integral,
        });
    }
    PlasmaParams::from_coupling((1.0 + 2.0 * uz).ln() / (8.0 * integral))
}

/// Phase cutoff of the causal-cone integrand: the smaller of `xi` and the
/// phase at which the `Z = 0` surface trajectory crosses the backward
/// characteristic `x0 + z = xi_minus`.
///
/// The crossing solves `2 x0 - phase_at(x0) = xi_minus` (monotone in `x0`).
pub fn phase_cutoff(tables: &MotionTables, xi: f64, xi_minus: f64) -> Result<f64> {
    if xi_minus < 0.0 {
        return Err(Error::NonPositive { what: "xi_minus", value: xi_minus });
    }
    let f = |x0: f64| 2.0 * x0 - tables.phase_at(x0) - xi_minus;
    // f(xi_minus/2) = -phase_at(xi_minus/2) <= 0 and f(xi_minus) >= 0.
    let x0 = find_root_monotone(f, (0.5 * xi_minus, xi_minus), 1e-13)?;
    Ok(xi.min(tables.phase_at(x0)))
}

/// One sample of the transverse correction.
#[derive(Debug, Clone, Copy)]
pub struct TransverseCorrection {
    /// Causal-cone wake integral (cm^2), 2-vector.
    pub wake: [f64; 2],
    /// Zero-density transverse momentum at the sample phase.
    pub u_perp_zero: [f64; 2],
    /// First-order corrected transverse momentum
    /// `u_perp_zero - 2 K * wake`.
    pub u_perp_first: [f64; 2],
}

/// Which transverse drift enters the wake integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WakeDrift {
    /// The exact tabulated drift `int_0^xi u_perp`.
    Tabulated,
    /// The carrier form `-(w(xi)/k) epsilon_o(xi)`: the slowly-varying
    /// reduction of the drift, and the form for which the envelope bound
    /// on the transverse correction is proven. Near the wavefront the two
    /// differ by the truncation residual and envelope-gradient terms.
    CarrierEnvelope,
}

/// Evaluator for the transverse wake integral. Construction caches the
/// monotone map from the backward coordinate to the trajectory crossing
/// phase, making repeated evaluations cheap.
#[derive(Debug)]
pub struct WakeEvaluator<'a> {
    tables: &'a MotionTables,
    /// Crossing phase sampled on a uniform `xi_minus` grid `[0, limit]`.
    crossing_phase: Vec<f64>,
    step: f64,
    drift: WakeDrift,
}

impl<'a> WakeEvaluator<'a> {
    /// Default number of quadrature nodes on the backward coordinate.
    pub const DEFAULT_NODES: usize = 4000;

    pub fn new(tables: &'a MotionTables, xi_minus_limit: f64, nodes: usize) -> Result<Self> {
        Self::with_drift(tables, xi_minus_limit, nodes, WakeDrift::Tabulated)
    }

    pub fn with_drift(
        tables: &'a MotionTables,
        xi_minus_limit: f64,
        nodes: usize,
        drift: WakeDrift,
    ) -> Result<Self> {
        if !(xi_minus_limit.is_finite() && xi_minus_limit > 0.0) {
            return Err(Error::NonPositive {
                what: "xi_minus limit",
                value: xi_minus_limit,
            });
        }
        let nodes = nodes.max(16);
        let step = xi_minus_limit / nodes as f64;
        let mut crossing_phase = Vec::with_capacity(nodes + 1);
        for i in 0..=nodes {
            let xm = i as f64 * step;
            crossing_phase.push(phase_cutoff(tables, f64::INFINITY, xm)?);
        }
        Ok(WakeEvaluator { tables, crossing_phase, step, drift })
    }

    fn drift_at(&self, xi: f64) -> [f64; 2] {
        match self.drift {
            WakeDrift::Tabulated => self.tables.drift_perp_at(xi),
            WakeDrift::CarrierEnvelope => {
                let pulse = self.tables.pulse();
                let w = pulse.envelope_at(xi);
                if w == 0.0 {
                    return [0.0, 0.0];
                }
                let k = pulse.wavenumber();
                let c = pulse.carrier_at(xi);
                [-w / k * c[0], -w / k * c[1]]
            }
        }
    }

    /// Wake integral `1/2 int_0^{xi_minus} drift_perp(cutoff) d xi_minus'`
    /// by trapezoid on the cached crossing phases.
    pub fn wake(&self, xi: f64, xi_minus: f64) -> Result<[f64; 2]> {
        if xi_minus < 0.0 {
            return Err(Error::NonPositive { what: "xi_minus", value: xi_minus });
        }
        if xi <= 0.0 || xi_minus == 0.0 {
            return Ok([0.0, 0.0]);
        }
        let limit = self.step * (self.crossing_phase.len() - 1) as f64;
        if xi_minus > limit * (1.0 + 1e-12) {
            return Err(Error::OutOfRange { value: xi_minus, min: 0.0, max: limit });
        }
        let integrand = |j: usize| -> [f64; 2] {
            let cutoff = self.crossing_phase[j].min(xi);
            self.drift_at(cutoff)
        };
        let n_full = ((xi_minus / self.step).floor() as usize).min(self.crossing_phase.len() - 1);
        let mut acc = [0.0, 0.0];
        let mut prev = integrand(0);
        for j in 1..=n_full {
            let cur = integrand(j);
            acc[0] += 0.5 * (prev[0] + cur[0]) * self.step;
            acc[1] += 0.5 * (prev[1] + cur[1]) * self.step;
            prev = cur;
        }
        // Partial last segment up to xi_minus.
        let rest = xi_minus - n_full as f64 * self.step;
        if rest > 0.0 && n_full + 1 < self.crossing_phase.len() {
            let t = rest / self.step;
            let next = integrand(n_full + 1);
            let end = [
                prev[0] + t * (next[0] - prev[0]),
                prev[1] + t * (next[1] - prev[1]),
            ];
            acc[0] += 0.5 * (prev[0] + end[0]) * rest;
            acc[1] += 0.5 * (prev[1] + end[1]) * rest;
        }
        Ok([0.5 * acc[0], 0.5 * acc[1]])
    }

    /// Full transverse-correction sample at `(xi, xi_minus)`.
    pub fn correction(
        &self,
        plasma: &PlasmaParams,
        xi: f64,
        xi_minus: f64,
    ) -> Result<TransverseCorrection> {
        let wake = self.wake(xi, xi_minus)?;
        let u0 = self.tables.u_perp_at(xi);
        let k2 = 2.0 * plasma.coupling;
        Ok(TransverseCorrection {
            wake,
            u_perp_zero: u0,
            u_perp_first: [u0[0] - k2 * wake[0], u0[1] - k2 * wake[1]],
        })
    }
}

/// One-off transverse-correction sample; for repeated evaluation build a
/// [`WakeEvaluator`] once and reuse it.
pub fn transverse_correction(
    tables: &MotionTables,
    plasma: &PlasmaParams,
    xi: f64,
    xi_minus: f64,
) -> Result<TransverseCorrection> {
    let limit = xi_minus.max(tables.grid().end());
    WakeEvaluator::new(tables, limit, WakeEvaluator::DEFAULT_NODES)?
        .correction(plasma, xi, xi_minus)
}

/// Validity diagnostics of the first-order approximation for a scenario.
#[derive(Debug, Clone, Copy)]
pub struct ValidityDiagnostics {
    /// Max relative displacement error on `[0, peak phase]`.
    pub max_relative_error: f64,
    /// Relative error at the peak phase.
    pub relative_error_at_peak: f64,
    /// `(2 drift(peak) + peak + 2 Z) * K * wavelength / 2 pi`; the
    /// approximation holds through the boost phase when this is small.
    pub horizon_ratio: f64,
    /// `horizon_ratio <= 0.1` (the operational reading of "much less
    /// than 1").
    pub horizon_pass: bool,
    /// Max of (normalized transverse correction) / (envelope bound) over the
    /// sampled causal region, with the carrier-form drift the bound is
    /// proven for; predicts <= 1.
    pub wake_bound_ratio: f64,
    pub wake_bound_pass: bool,
}

/// Pass threshold for the horizon ratio.
pub const HORIZON_PASS_RATIO: f64 = 0.1;

/// Checks the validity conditions of the first-order approximation for the
/// particle labelled `label_z`.
///
/// The wake bound is checked in oscillatory mode (an oscillatory twin of the
/// pulse is tabulated if needed) on an `n_samples x n_samples` grid of
/// causal points with `0 < xi <= peak`.
pub fn validity_check(
    first_order: &FirstOrderTables,
    tables: &MotionTables,
    plasma: &PlasmaParams,
    label_z: f64,
    n_samples: usize,
) -> Result<ValidityDiagnostics> {
    let pulse = tables.pulse();
    let peak = pulse.envelope.peak_phase();
    let mut max_t: f64 = 0.0;
    for (&xi, &t) in tables
        .grid()
        .points()
        .iter()
        .zip(first_order.relative_error_values())
    {
        if xi >= 0.0 && xi <= peak {
            max_t = max_t.max(t);
        }
    }
    let drift_peak = tables.drift_z_at(peak);
    let horizon = 2.0 * std::f64::consts::PI / (plasma.coupling * pulse.wavelength);
    let horizon_ratio = if plasma.coupling == 0.0 {
        0.0
    } else {
        (2.0 * drift_peak + peak + 2.0 * label_z) / horizon
    };

    // Wake bound, oscillatory mode.
    let osc_tables;
    let osc = if pulse.mode == EvalMode::Oscillatory {
        tables
    } else {
        let mut twin = pulse.clone();
        twin.mode = EvalMode::Oscillatory;
        osc_tables = MotionTables::build(&twin, tables.grid())?;
        &osc_tables
    };
    let n = n_samples.max(2);
    let xi_minus_max = 2.0 * drift_peak + peak + 2.0 * label_z.max(0.0);
    let evaluator =
        WakeEvaluator::with_drift(osc, xi_minus_max, 2000, WakeDrift::CarrierEnvelope)?;
    let k = osc.pulse().wavenumber();
    let mut ratio_max: f64 = 0.0;
    for i in 1..=n {
        let xi = peak * i as f64 / n as f64;
        let w = osc.pulse().envelope_at(xi);
        if w <= 0.0 {
            continue;
        }
        for j in 1..=n {
            let xi_minus = xi_minus_max * j as f64 / n as f64;
            let wake = evaluator.wake(xi, xi_minus)?;
            let lhs = 2.0 * (wake[0] * wake[0] + wake[1] * wake[1]).sqrt() / w;
            let rhs = xi_minus / k;
            if rhs > 0.0 {
                ratio_max = ratio_max.max(lhs / rhs);
            }
        }
    }
    // The coupling cancels between the two sides; ratio_max is K-free.
    Ok(ValidityDiagnostics {
        max_relative_error: max_t,
        relative_error_at_peak: first_order.relative_error_at(peak),
        horizon_ratio,
        horizon_pass: horizon_ratio <= HORIZON_PASS_RATIO,
        wake_bound_ratio: ratio_max,
        wake_bound_pass: ratio_max <= 1.0,
    })
}

/// CSV of the correction curves on the motion grid, columns
/// `xi_cm,w,uz0,Y3_cm,V3_cm2,betaz0,betaz1,g,T`.
pub fn curves_csv(tables: &MotionTables, first_order: &FirstOrderTables) -> String {
    let mut out = String::from("xi_cm,w,uz0,Y3_cm,V3_cm2,betaz0,betaz1,g,T\n");
    for &xi in tables.grid().points() {
        let uz0 = tables.u_z_at(xi);
        let beta0 = uz0 / (1.0 + uz0);
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            xi,
            tables.pulse().envelope_at(xi),
            uz0,
            tables.drift_z_at(xi),
            tables.drift_integral_at(xi),
            beta0,
            first_order.corrected_beta_z_at(xi),
            first_order.deficit_rate_at(xi),
            first_order.relative_error_at(xi),
        ));
    }
    out
}
