//! Physical constants in CGS-Gaussian units (CODATA values).

use std::f64::consts::PI;

/// Classical electron radius e^2 / (m_e c^2) (cm).
pub const ELECTRON_RADIUS_CM: f64 = 2.8179403e-13;

/// Electron rest energy m_e c^2 (erg).
pub const ELECTRON_REST_ERG: f64 = 8.18710e-7;

/// Electron rest energy m_e c^2 (MeV).
pub const ELECTRON_REST_MEV: f64 = 0.5109989;

/// Electron rest energy m_e c^2 (eV).
pub const ELECTRON_REST_EV: f64 = ELECTRON_REST_MEV * 1.0e6;

/// Elementary charge (statC).
pub const ELEMENTARY_CHARGE_STATC: f64 = 4.8032047e-10;

/// 1 MeV in erg.
pub const ERG_PER_MEV: f64 = 1.602177e-6;

/// First and second ionization potentials of helium (eV).
pub const HELIUM_IONIZATION_EV: [f64; 2] = [24.0, 54.0];

/// Plasma coupling K = pi r_e n0 (cm^-2) for electron density `n0` (cm^-3).
///
/// K is the squared equilibrium plasma frequency divided by 4 c^2; it sets
/// the strength of the ion back-force on the displaced electrons.
pub fn plasma_coupling(n0: f64) -> f64 {
    PI * ELECTRON_RADIUS_CM * n0
}

/// Electron density n0 (cm^-3) for a plasma coupling K (cm^-2).
pub fn density_for_coupling(coupling: f64) -> f64 {
    coupling / (PI * ELECTRON_RADIUS_CM)
}
