//! Exact zero-density motion of a cold electron fluid driven by a transverse
//! plane wave: tabulated primitives of the momentum, the invertible
//! phase-to-time map, Lagrangian/Eulerian trajectory maps, densities, proper
//! time and the electromagnetic fields.

use crate::constants::{ELECTRON_REST_ERG, ELEMENTARY_CHARGE_STATC};
use crate::numerics::{cumulative_integral, lerp, Grid, MonotoneTable, Monotonicity};
use crate::pulse::Pulse;
use crate::{Error, Result};

/// Minimum grid resolution of the carrier in oscillatory mode.
const MIN_NODES_PER_WAVELENGTH: f64 = 16.0;

/// Right-continuous Heaviside step, `theta(0) = 1`.
fn theta(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Lagrangian label of a fluid element: its position before the wave arrives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidLabel {
    /// Initial longitudinal position Z (cm).
    pub z: f64,
    /// Initial transverse position (cm).
    pub x_perp: [f64; 2],
}

/// A spacetime event in lab and lightcone coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldPoint {
    /// Light-time `c t` (cm).
    pub x0: f64,
    /// Longitudinal position (cm).
    pub z: f64,
}

impl WorldPoint {
    pub fn new(x0: f64, z: f64) -> Self {
        WorldPoint { x0, z }
    }

    /// Forward lightcone phase `x0 - z`.
    pub fn xi(&self) -> f64 {
        self.x0 - self.z
    }

    /// Backward lightcone coordinate `x0 + z`.
    pub fn xi_minus(&self) -> f64 {
        self.x0 + self.z
    }
}

/// Kinematic state recovered from the transverse momentum and the conserved
/// lightcone component `u_minus = gamma - u_z`.
#[derive(Debug, Clone, Copy)]
pub struct RecoveredState {
    pub gamma: f64,
    pub u_z: f64,
    pub beta_perp: [f64; 2],
    pub beta_z: f64,
}

/// Recovers `(gamma, u_z, beta)` from `u_perp` and `u_minus > 0`.
///
/// Guarantees `gamma^2 - u_z^2 - |u_perp|^2 = 1` and
/// `gamma - u_z = u_minus` to rounding.
pub fn recover_from_u_minus(u_perp: [f64; 2], u_minus: f64) -> Result<RecoveredState> {
    if !(u_minus.is_finite() && u_minus > 0.0) {
        return Err(Error::NonPositive { what: "u_minus", value: u_minus });
    }
    let perp_sq = u_perp[0] * u_perp[0] + u_perp[1] * u_perp[1];
    let gamma = (1.0 + perp_sq + u_minus * u_minus) / (2.0 * u_minus);
    let u_z = (1.0 + perp_sq - u_minus * u_minus) / (2.0 * u_minus);
    Ok(RecoveredState {
        gamma,
        u_z,
        beta_perp: [u_perp[0] / gamma, u_perp[1] / gamma],
        beta_z: u_z / gamma,
    })
}

/// Free transverse fields of the pulse at an event, in statvolt/cm:
/// `E_perp` and `B = z_hat x E_perp`. Both vanish for `x0 <= z`.
pub fn transverse_fields(pulse: &Pulse, x0: f64, z: f64) -> ([f64; 2], [f64; 2]) {
    let xi = x0 - z;
    let da = pulse.vector_potential_derivative(xi);
    let scale = ELECTRON_REST_ERG / ELEMENTARY_CHARGE_STATC;
    // E = -d(A_perp)/dx0 = -(m c^2/e) da/dxi; B = z_hat x E.
    let e = [-scale * da[0], -scale * da[1]];
    let b = [-e[1], e[0]];
    (e, b)
}

/// Tabulated primitives of the zero-density motion on a phase grid spanning
/// the wavefront and the pulse support. Immutable and reentrant; evaluation
/// outside the grid uses the exact ballistic extensions (identity before the
/// front, constant drift after the pulse).
#[derive(Debug, Clone)]
pub struct MotionTables {
    pulse: Pulse,
    grid: Grid,
    u_perp: [Vec<f64>; 2],
    u_z: Vec<f64>,
    /// Transverse drift components `int_0^xi u_perp` (cm).
    drift_perp: [Vec<f64>; 2],
    /// Longitudinal drift `int_0^xi u_z` (cm); nondecreasing.
    drift_z: Vec<f64>,
    /// Phase-to-elapsed-time map `xi + drift_z(xi)`; strictly increasing.
    time_of_phase: MonotoneTable,
    /// Integral of the longitudinal drift (cm^2); nondecreasing.
    drift_integral: MonotoneTable,
}

impl MotionTables {
    /// Builds all primitives by cumulative quadrature of the pulse momentum.
    ///
    /// The grid must span the wavefront and the pulse support
    /// (`grid.start() <= 0` and `grid.end() >= support end`); in oscillatory
    /// mode it must resolve the carrier with at least 16 nodes per
    /// wavelength.
    pub fn build(pulse: &Pulse, grid: &Grid) -> Result<Self> {
        let support = pulse.support();
        if grid.start() > 0.0 || grid.end() < support.1 {
            return Err(Error::GridDoesNotSpanPulse {
                grid: (grid.start(), grid.end()),
                support,
            });
        }
        if pulse.mode == crate::pulse::EvalMode::Oscillatory {
            let max_step = match grid.step() {
                Some(h) => h,
                None => grid
                    .points()
                    .windows(2)
                    .map(|w| w[1] - w[0])
                    .fold(0.0, f64::max),
            };
            let nodes_per_wavelength = pulse.wavelength / max_step;
            if nodes_per_wavelength < MIN_NODES_PER_WAVELENGTH {
                return Err(Error::GridTooCoarse { nodes_per_wavelength });
            }
        }
        let pts = grid.points();
        let n = pts.len();
        let mut ux = Vec::with_capacity(n);
        let mut uy = Vec::with_capacity(n);
        let mut u_z = Vec::with_capacity(n);
        for &xi in pts {
            let u = pulse.transverse_momentum_sample(xi);
            ux.push(u[0]);
            uy.push(u[1]);
            u_z.push(pulse.longitudinal_momentum_sample(xi));
        }
        let mut drift_x = cumulative_integral(grid, &ux)?;
        let mut drift_y = cumulative_integral(grid, &uy)?;
        let mut drift_z = cumulative_integral(grid, &u_z)?;
        // Left of the wavefront every drift vanishes identically; pin the
        // tabulated values so the identity region is exact.
        for (i, &xi) in pts.iter().enumerate() {
            if xi <= 0.0 {
                drift_x[i] = 0.0;
                drift_y[i] = 0.0;
                drift_z[i] = 0.0;
            }
        }
        let time_vals: Vec<f64> = pts.iter().zip(&drift_z).map(|(x, d)| x + d).collect();
        let time_of_phase =
            MonotoneTable::new(grid.clone(), time_vals, Monotonicity::StrictlyIncreasing)?;
        let integral_vals = cumulative_integral(grid, &drift_z)?;
        let drift_integral =
            MonotoneTable::new(grid.clone(), integral_vals, Monotonicity::NonDecreasing)?;
        Ok(MotionTables {
            pulse: pulse.clone(),
            grid: grid.clone(),
            u_perp: [ux, uy],
            u_z,
            drift_perp: [drift_x, drift_y],
            drift_z,
            time_of_phase,
            drift_integral,
        })
    }

    /// Default grid for a pulse: uniform with `nodes_per_length` nodes per
    /// unit support length, spanning `[-0.02 L, 1.05 L]` with exact nodes at
    /// the wavefront and the support end (L = support end).
    pub fn default_grid(pulse: &Pulse, nodes_per_length: usize) -> Result<Grid> {
        let end = pulse.support().1;
        if !(end.is_finite() && end > 0.0) {
            return Err(Error::NonPositive { what: "pulse support end", value: end });
        }
        let n = nodes_per_length.max(16);
        let h = end / n as f64;
        let m_lo = (0.02 * n as f64).ceil() as i64;
        let m_hi = (1.05 * n as f64).ceil() as i64;
        let points: Vec<f64> = (-m_lo..=m_hi).map(|i| i as f64 * h).collect();
        Grid::from_points(points)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn pulse(&self) -> &Pulse {
        &self.pulse
    }

    /// Transverse momentum at phase `xi`.
    pub fn u_perp_at(&self, xi: f64) -> [f64; 2] {
        if xi <= self.grid.start() || xi >= self.grid.end() {
            return [0.0, 0.0];
        }
        [
            lerp(&self.grid, &self.u_perp[0], xi),
            lerp(&self.grid, &self.u_perp[1], xi),
        ]
    }

    /// Longitudinal momentum at phase `xi`.
    pub fn u_z_at(&self, xi: f64) -> f64 {
        if xi <= self.grid.start() || xi >= self.grid.end() {
            return 0.0;
        }
        lerp(&self.grid, &self.u_z, xi)
    }

    /// Lorentz factor `1 + u_z` at phase `xi`.
    pub fn gamma_at(&self, xi: f64) -> f64 {
        1.0 + self.u_z_at(xi)
    }

    /// Transverse drift `int_0^xi u_perp` (cm), constant outside the grid.
    pub fn drift_perp_at(&self, xi: f64) -> [f64; 2] {
        if xi <= self.grid.start() {
            return [0.0, 0.0];
        }
        let xi = xi.min(self.grid.end());
        [
            lerp(&self.grid, &self.drift_perp[0], xi),
            lerp(&self.grid, &self.drift_perp[1], xi),
        ]
    }

    /// Longitudinal drift `int_0^xi u_z` (cm). Evaluated through the
    /// phase-to-time map so that `time_of_phase(xi) = xi + drift_z(xi)` holds
    /// identically between nodes as well.
    pub fn drift_z_at(&self, xi: f64) -> f64 {
        self.time_at(xi) - xi
    }

    /// Total longitudinal drift accumulated over the whole pulse (cm).
    pub fn total_drift(&self) -> f64 {
        *self.drift_z.last().unwrap()
    }

    /// Integral of the longitudinal drift, `int_0^xi drift_z` (cm^2),
    /// continued linearly past the grid.
    pub fn drift_integral_at(&self, xi: f64) -> f64 {
        if xi <= self.grid.start() {
            return 0.0;
        }
        if xi >= self.grid.end() {
            let end = self.grid.end();
            return self.drift_integral.value_range().1 + (xi - end) * self.total_drift();
        }
        self.drift_integral.eval(xi)
    }

    /// Elapsed-time map `Xi(xi) = xi + drift_z(xi)`: the lab time (minus the
    /// label Z) at which a particle reaches phase `xi`. Strictly increasing;
    /// extended exactly outside the grid.
    pub fn time_at(&self, xi: f64) -> f64 {
        if xi <= self.grid.start() {
            return xi;
        }
        if xi >= self.grid.end() {
            return self.time_of_phase.value_range().1 + (xi - self.grid.end());
        }
        self.time_of_phase.eval(xi)
    }

    /// Inverse of [`MotionTables::time_at`]: the phase reached after elapsed
    /// time `t = x0 - Z`. Total on the real line via the exact extensions.
    pub fn phase_at(&self, t: f64) -> f64 {
        let (lo, hi) = self.time_of_phase.value_range();
        if t <= lo {
            return self.grid.start() + (t - lo);
        }
        if t >= hi {
            return self.grid.end() + (t - hi);
        }
        // In range and strictly increasing: inversion cannot fail.
        self.time_of_phase.invert(t).expect("in-range inversion")
    }

    /// Retarded phase `xi` seen at light-time `x0` by the particle labelled
    /// `label_z`; equals `x0 - label_z` before the wave arrives. Also `c`
    /// times the proper-time lapse of that particle.
    pub fn retarded_phase(&self, x0: f64, label_z: f64) -> f64 {
        self.phase_at(x0 - label_z)
    }

    /// Proper time lapse (times `c`, in cm) of the particle labelled
    /// `label_z` from the wavefront's arrival up to light-time `x0`.
    pub fn proper_time(&self, x0: f64, label_z: f64) -> f64 {
        self.retarded_phase(x0, label_z)
    }

    /// Position at light-time `x0` of the fluid element with the given
    /// label: the Lagrangian trajectory map. Returns `(z, x_perp)`.
    pub fn position(&self, x0: f64, label: &FluidLabel) -> (f64, [f64; 2]) {
        let xi = self.retarded_phase(x0, label.z);
        let z = x0 - xi;
        let d = self.drift_perp_at(xi);
        (z, [label.x_perp[0] + d[0], label.x_perp[1] + d[1]])
    }

    /// Label of the fluid element occupying `(z, x_perp)` at light-time
    /// `x0`: the Eulerian inverse of [`MotionTables::position`] at fixed
    /// `x0`.
    pub fn label(&self, x0: f64, z: f64, x_perp: [f64; 2]) -> FluidLabel {
        let xi = x0 - z;
        let d = self.drift_perp_at(xi);
        FluidLabel {
            z: x0 - self.time_at(xi),
            x_perp: [x_perp[0] - d[0], x_perp[1] - d[1]],
        }
    }

    /// Electron density (cm^-3) at an event, for a step initial profile of
    /// density `n0` filling `Z >= 0`.
    pub fn density(&self, n0: f64, x0: f64, z: f64) -> f64 {
        let label_z = x0 - self.time_at(x0 - z);
        n0 * theta(label_z) * self.gamma_at(x0 - z)
    }

    /// Longitudinal electric field (statvolt/cm) for the step-density plasma
    /// with immobile ions: `4 pi e n0 (z theta(z) - Z theta(Z))`, i.e.
    /// proportional to the electron displacement where `z, Z > 0`.
    pub fn longitudinal_field(&self, n0: f64, x0: f64, z: f64) -> f64 {
        let label_z = x0 - self.time_at(x0 - z);
        4.0 * std::f64::consts::PI
            * ELEMENTARY_CHARGE_STATC
            * n0
            * (z * theta(z) - label_z * theta(label_z))
    }

    /// CSV trajectory samples (columns `x0_cm,z_cm,xperp1_cm,xperp2_cm,gamma,uz`)
    /// for the given labels over `steps + 1` uniformly spaced light-times in
    /// `[x0_start, x0_end]`.
    pub fn trajectory_csv(
        &self,
        labels: &[FluidLabel],
        x0_start: f64,
        x0_end: f64,
        steps: usize,
    ) -> String {
        let mut out = String::from("x0_cm,z_cm,xperp1_cm,xperp2_cm,gamma,uz\n");
        for label in labels {
            for i in 0..=steps {
                let x0 = x0_start + (x0_end - x0_start) * i as f64 / steps.max(1) as f64;
                let (z, xp) = self.position(x0, label);
                let xi = x0 - z;
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    x0,
                    z,
                    xp[0],
                    xp[1],
                    self.gamma_at(xi),
                    self.u_z_at(xi),
                ));
            }
        }
        out
    }
}
