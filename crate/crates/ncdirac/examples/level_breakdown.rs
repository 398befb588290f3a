//! Per-sublevel correction breakdown for one level; mirrors the README.

use ncdirac::dirac::{energy, Level};
use ncdirac::ncps::{area_to_natural, corrections};
use ncdirac::{AlphaShiftForm, NcParams, PhysicalConstants};

fn main() -> ncdirac::Result<()> {
    let c = PhysicalConstants::new();
    let level = Level::from_label("2P3/2", 1.0)?;
    let e_dirac = energy(&level, &c)?; // eV, rest mass included

    let p = NcParams::from_constraint(
        [0.0, 0.0, area_to_natural(1e-36, &c)], // θ in natural units
        [0.0; 3],
    )?;
    let bd = corrections(&level, &p, AlphaShiftForm::Quartic, &c)?;
    for s in &bd.sublevels {
        println!("{}: {:+.3e} eV on {e_dirac:.6} eV", s.label, s.total);
    }
    Ok(())
}
