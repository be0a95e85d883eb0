use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{eigh, ComplexMatrix};

use super::well::{TwoLevelEnergies, WellDerived};

/// Relative gap below which the two lowest levels count as degenerate.
const DEGENERACY_GAP: f64 = 1e-10;

/// Two double-well qubits coupled by a contact interaction `-g0 δ(x - ξ)`,
/// in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitSystem {
    pub energies: TwoLevelEnergies,
    pub g0: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub hamiltonian: ComplexMatrix,
}

pub fn build_two_qubit(energies: &TwoLevelEnergies, derived: &WellDerived, g0: f64) -> TwoQubitSystem {
    let (a, s) = (derived.a, derived.sigma_x);
    let r = a * a / (s * s);
    let e34 = (-0.75 * r).exp();
    let e1 = (-r).exp();
    let pre = -g0 / (4.0 * PI.sqrt() * s);
    let (c0, c1) = (energies.c0_sq, energies.c1_sq);
    let h1 = pre * c0 * c0 * (1.0 + 4.0 * e34 + 3.0 * e1);
    let h2 = pre * c0 * c1 * (1.0 - e1);
    let h3 = pre * c1 * c1 * (1.0 - 4.0 * e34 + 3.0 * e1);
    let (en0, en1) = (energies.e0, energies.e1);
    #[rustfmt::skip]
    let rows = [
        2.0 * en0 + h1, 0.0,             0.0,             h2,
        0.0,            en0 + en1 + h2,  h2,              0.0,
        0.0,            h2,              en0 + en1 + h2,  0.0,
        h2,             0.0,             0.0,             2.0 * en1 + h3,
    ];
    let hamiltonian = ComplexMatrix::from_row_iterator(4, 4, rows.iter().map(|&v| Complex64::new(v, 0.0)));
    TwoQubitSystem { energies: *energies, g0, h1, h2, h3, hamiltonian }
}

/// `Δ = |c00 c11 - c01 c10|²` for a normalized two-qubit vector.
pub fn concurrence_delta(c: &[Complex64; 4]) -> f64 {
    (c[0] * c[3] - c[1] * c[2]).norm_sqr()
}

/// `K = 1/(1 - 2Δ)`.
pub fn schmidt_from_coefficients(c: &[Complex64; 4]) -> f64 {
    1.0 / (1.0 - 2.0 * concurrence_delta(c))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateEntanglement {
    pub k: f64,
    pub delta: f64,
    pub ground_energy: f64,
    pub coefficients: [Complex64; 4],
    /// Set when the two lowest levels coincide; the ground vector is then
    /// not unique and `alternate_k` gives the value for the second one.
    pub degenerate: bool,
    pub alternate_k: Option<f64>,
}

pub fn ground_state_entanglement(system: &TwoQubitSystem) -> Result<GroundStateEntanglement> {
    let h = &system.hamiltonian;
    if h.shape() != (4, 4) {
        return Err(Error::InvalidArgument("two-qubit Hamiltonian must be 4x4".into()));
    }
    let dec = eigh(h)?;
    let column = |k: usize| -> [Complex64; 4] {
        let col = dec.vectors.column(k);
        [col[0], col[1], col[2], col[3]]
    };
    let ground = column(0);
    let scale = dec.values.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    let degenerate = dec.values[1] - dec.values[0] < DEGENERACY_GAP * scale;
    let delta = concurrence_delta(&ground);
    Ok(GroundStateEntanglement {
        k: 1.0 / (1.0 - 2.0 * delta),
        delta,
        ground_energy: dec.values[0],
        coefficients: ground,
        degenerate,
        alternate_k: degenerate.then(|| schmidt_from_coefficients(&column(1))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::hermitian_deviation;
    use crate::tunneling::well::{derive_well, two_level_energies, DoubleWell};
    use approx::assert_relative_eq;

    fn nh3() -> (TwoLevelEnergies, WellDerived) {
        let w = DoubleWell::new(69.29, 141.73, 2.47).unwrap();
        let d = derive_well(&w);
        (two_level_energies(&d, &w).unwrap(), d)
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn coefficient_examples() {
        let product = [c(1.0), c(0.0), c(0.0), c(0.0)];
        assert_eq!(concurrence_delta(&product), 0.0);
        assert_eq!(schmidt_from_coefficients(&product), 1.0);
        let r = 0.5_f64.sqrt();
        let bell = [c(r), c(0.0), c(0.0), c(r)];
        assert_relative_eq!(concurrence_delta(&bell), 0.25, epsilon = 1e-15);
        assert_relative_eq!(schmidt_from_coefficients(&bell), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn no_coupling_gives_diagonal_hamiltonian() {
        let (e, d) = nh3();
        let s = build_two_qubit(&e, &d, 0.0);
        let diag = [2.0 * e.e0, e.e0 + e.e1, e.e0 + e.e1, 2.0 * e.e1];
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { diag[i] } else { 0.0 };
                assert_eq!(s.hamiltonian[(i, j)].re, expect);
            }
        }
        let g = ground_state_entanglement(&s).unwrap();
        assert_relative_eq!(g.k, 1.0, epsilon = 1e-12);
        assert!(!g.degenerate);
    }

    #[test]
    fn couplings_merge_when_wells_separate() {
        let (e, d) = nh3();
        let s = build_two_qubit(&e, &d, 1.0);
        let approx = -1.0 / (4.0 * PI.sqrt() * d.sigma_x);
        for h in [s.h1, s.h2, s.h3] {
            assert!((h / approx - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn attraction_lowers_ground_energy() {
        let (e, d) = nh3();
        let s = build_two_qubit(&e, &d, 0.01);
        assert!(hermitian_deviation(&s.hamiltonian) == 0.0);
        let g = ground_state_entanglement(&s).unwrap();
        assert!(g.ground_energy < 2.0 * e.e0);
    }

    #[test]
    fn entanglement_grows_with_coupling() {
        let (e, d) = nh3();
        let mut last = 1.0;
        for g0 in [0.0, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0] {
            let k = ground_state_entanglement(&build_two_qubit(&e, &d, g0)).unwrap().k;
            assert!((1.0 - 1e-12..=2.0 + 1e-12).contains(&k));
            assert!(k >= last - 1e-9, "g0 {g0}: {k} < {last}");
            last = k;
        }
        assert!(last > 1.99);
    }
}
