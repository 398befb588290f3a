/// Physical constants used throughout, in natural units with energies in eV
/// and lengths in metres where a unit is stated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Electron rest mass in eV.
    pub electron_mass_ev: f64,
    /// Dimensionless Coulomb coupling e^2 (the fine-structure constant).
    pub coupling_e2: f64,
    /// hbar*c in eV*m, used to convert theta between m^2 and eV^-2.
    pub hbar_c_ev_m: f64,
}

impl PhysicalConstants {
    pub const fn new() -> Self {
        Self {
            electron_mass_ev: 510_998.946_1,
            coupling_e2: 7.297_352_569_3e-3,
            hbar_c_ev_m: 1.973_269_804e-7,
        }
    }

    /// (hbar*c)^2 in eV^2 * m^2; converts theta [m^2] -> theta [eV^-2]
    /// by division and theta-bar [m^-2-like pseudo units] -> [eV^2] likewise.
    pub fn hbar_c_sq(&self) -> f64 {
        self.hbar_c_ev_m * self.hbar_c_ev_m
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::new()
    }
}
