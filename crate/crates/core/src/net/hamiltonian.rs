// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Complex, DMatrix};

use super::NetworkSpec;

/// Tight-binding Hamiltonian on the vacuum-plus-single-excitation space.
///
/// Index 0 is the vacuum; its row and column are zero. Site `i` sits at
/// index `i` with diagonal entry ε_i, and a coupling t_ij contributes −t_ij
/// to both (i, j) and (j, i). Entries are in the network's internal unit
/// (angular ps⁻¹ unless the network is dimensionless).
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: DMatrix<Complex<f64>>,
}

impl Hamiltonian {
    /// Wraps an arbitrary matrix; used for externally supplied Hamiltonians
    /// and tests. Callers are responsible for hermiticity.
    pub fn from_matrix(matrix: DMatrix<Complex<f64>>) -> Self {
        assert!(matrix.is_square(), "Hamiltonian must be square");
        Hamiltonian { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex<f64>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex<f64>> {
        self.matrix
    }
}

/// Builds the Hamiltonian of a validated network, converting to internal
/// units first.
pub fn assemble_hamiltonian(spec: &NetworkSpec) -> Hamiltonian {
    let spec = spec.to_internal_units();
    let d = spec.dim();
    let mut m = DMatrix::zeros(d, d);
    for (k, site) in spec.sites.iter().enumerate() {
        m[(k + 1, k + 1)] = Complex::new(site.energy, 0.0);
    }
    for e in &spec.edges {
        let v = Complex::new(-e.t, 0.0);
        m[(e.i, e.j)] = v;
        m[(e.j, e.i)] = v;
    }
    Hamiltonian { matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{Edge, Unit, WAVENUMBER_TO_ANGULAR_PS};

    fn chain(n: usize, eps: f64, t: f64, unit: Unit) -> NetworkSpec {
        let edges = (1..n).map(|i| Edge::new(i, i + 1, t)).collect();
        NetworkSpec::new(unit, &vec![eps; n], edges, vec![1], vec![n])
    }

    #[test]
    fn three_site_chain() {
        let h = assemble_hamiltonian(&chain(3, 0.0, 1.0, Unit::Dimensionless));
        let m = h.matrix();
        assert_eq!(h.dim(), 4);
        for r in 0..4usize {
            for c in 0..4 {
                let want = if r >= 1 && c >= 1 && r.abs_diff(c) == 1 {
                    -1.0
                } else {
                    0.0
                };
                assert_eq!(m[(r, c)], Complex::new(want, 0.0), "({r},{c})");
            }
        }
    }

    #[test]
    fn single_site() {
        let spec = NetworkSpec::new(Unit::Dimensionless, &[2.0], vec![], vec![1], vec![1]);
        let h = assemble_hamiltonian(&spec);
        assert_eq!(h.matrix()[(0, 0)].re, 0.0);
        assert_eq!(h.matrix()[(1, 1)].re, 2.0);
    }

    #[test]
    fn seven_chain_wavenumber_input() {
        let h = assemble_hamiltonian(&chain(7, 1.23e4, 60.0, Unit::Wavenumber));
        let u = 0.1883651567;
        let m = h.matrix();
        for i in 1..=7 {
            assert!((m[(i, i)].re - 1.23e4 * u).abs() < 1.23e4 * 1e-10);
            assert_eq!(m[(i, i)].re, 1.23e4 * WAVENUMBER_TO_ANGULAR_PS);
        }
        for i in 1..7 {
            assert!((m[(i, i + 1)].re + 60.0 * u).abs() < 60.0 * 1e-10);
        }
        assert!(m
            .row(0)
            .iter()
            .chain(m.column(0).iter())
            .all(|z| *z == Complex::new(0.0, 0.0)));
    }

    #[test]
    fn exactly_hermitian() {
        let spec = NetworkSpec::new(
            Unit::Wavenumber,
            &[1.0, 2.5, -3.0, 0.7],
            vec![
                Edge::new(1, 2, 0.3),
                Edge::new(4, 2, -1.7),
                Edge::new(3, 4, 1e-3),
            ],
            vec![1],
            vec![4],
        );
        let m = assemble_hamiltonian(&spec).into_matrix();
        assert_eq!(m, m.adjoint());
    }
}
