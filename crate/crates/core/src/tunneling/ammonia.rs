use serde::Serialize;

use crate::error::{Error, Result};

/// Model energy unit `ħ²/(m0 a0²)` in joules (`m0` = 1 u, `a0` = 0.529 Å).
pub const ENERGY_UNIT_J: f64 = 2.39e-21;

const PLANCK_J_S: f64 = 6.626_070_15e-34;

/// Frequency equivalent of one model energy unit, about 3607 GHz.
pub const GHZ_PER_ENERGY_UNIT: f64 = ENERGY_UNIT_J / PLANCK_J_S / 1e9;

pub const BOHR_RADIUS_ANGSTROM: f64 = 0.529;

/// Height of the NH₃ pyramid: distance from N to the hydrogen plane.
pub const PYRAMID_HEIGHT_ANGSTROM: f64 = 0.37;

/// NH₃ inversion splitting (24 GHz) in model units.
pub const NH3_SPLITTING: f64 = 0.00665;

pub fn reduced_mass(m_a: f64, m_b: f64) -> Result<f64> {
    if !(m_a > 0.0 && m_b > 0.0) {
        return Err(Error::InvalidArgument(format!("masses must be positive, got {m_a} and {m_b}")));
    }
    Ok(m_a * m_b / (m_a + m_b))
}

pub fn splitting_to_frequency(delta_e: f64) -> f64 {
    delta_e * GHZ_PER_ENERGY_UNIT
}

/// Ammonia isotopologue treated as the hydrogen plane tunneling through the
/// nitrogen atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Isotope {
    pub name: &'static str,
    /// Mass of the three hydrogen-isotope atoms, in u.
    pub ligand_mass: f64,
    /// Reduced mass used by the model, rounded as tabulated.
    pub mass: f64,
    /// Measured inversion frequency in GHz.
    pub measured_ghz: f64,
}

pub const NH3: Isotope = Isotope { name: "NH3", ligand_mass: 3.0, mass: 2.47, measured_ghz: 24.0 };
pub const ND3: Isotope = Isotope { name: "ND3", ligand_mass: 6.0, mass: 4.2, measured_ghz: 1.6 };
pub const NT3: Isotope = Isotope { name: "NT3", ligand_mass: 9.0, mass: 5.48, measured_ghz: 0.306 };

pub const AMMONIA_ISOTOPES: [Isotope; 3] = [NH3, ND3, NT3];

impl Isotope {
    pub fn by_name(name: &str) -> Option<Isotope> {
        AMMONIA_ISOTOPES.iter().copied().find(|i| i.name.eq_ignore_ascii_case(name))
    }

    pub fn equilibrium_offset() -> f64 {
        PYRAMID_HEIGHT_ANGSTROM / BOHR_RADIUS_ANGSTROM
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_masses() {
        for (lig, expect) in [(3.0, 2.47), (6.0, 4.2), (9.0, 5.48)] {
            assert!((reduced_mass(lig, 14.0).unwrap() - expect).abs() < 5e-3);
        }
        for iso in AMMONIA_ISOTOPES {
            assert!((reduced_mass(iso.ligand_mass, 14.0).unwrap() - iso.mass).abs() < 5e-3);
        }
        assert!(reduced_mass(0.0, 1.0).is_err());
    }

    #[test]
    fn frequency_conversion() {
        assert!((GHZ_PER_ENERGY_UNIT - 3607.0).abs() < 1.0);
        assert!((splitting_to_frequency(0.00665) / 24.0 - 1.0).abs() < 0.01);
        assert!((splitting_to_frequency(0.000416) / 1.5 - 1.0).abs() < 0.01);
        assert_eq!(splitting_to_frequency(0.0), 0.0);
    }

    #[test]
    fn offset_in_bohr() {
        assert!((Isotope::equilibrium_offset() - 0.699).abs() < 1e-3);
        assert_eq!(Isotope::by_name("nd3"), Some(ND3));
    }
}
