// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

use enaqt::density::max_norm;
use enaqt::liouville::{ChannelSet, Lindblad, StorageMode};
use enaqt::net::{Edge, NetworkSpec, Unit};
use enaqt::oracle::{analytic_chain_occupations, brute_force_steady_state, ChainParams};
use enaqt::solver::{steady_state, steady_state_with, Method, SteadyOptions};
use proptest::prelude::*;

fn flux_balance(spec: &NetworkSpec, ch: ChannelSet, rho: &nalgebra::DMatrix<enaqt::C64>) -> f64 {
    let inflow = spec.inject.len() as f64 * ch.gamma_inj * rho[(0, 0)].re;
    let outflow: f64 = spec
        .extract
        .iter()
        .map(|&s| ch.gamma_ext * rho[(s, s)].re)
        .sum();
    (inflow - outflow).abs() / outflow.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analytic_solver_and_oracle_agree(
        len in 2usize..=7,
        t in 0.1f64..100.0,
        gi in 0.1f64..100.0,
        ge in 0.1f64..100.0,
        gd in 0.1f64..100.0,
    ) {
        let p = ChainParams { len, t, gamma_inj: gi, gamma_ext: ge, gamma_deph: gd };
        let spec = p.network();
        let l = Lindblad::from_network(&spec, p.channels()).unwrap().build(StorageMode::Dense);
        let sol = steady_state(&l).unwrap();
        let brute = brute_force_steady_state(&l).unwrap();
        let occ = analytic_chain_occupations(&p).unwrap();
        prop_assert!(max_norm((sol.rho.matrix() - brute.matrix()).iter()) < 1e-8);
        for (k, n) in std::iter::once(occ.vacuum).chain(occ.values.iter().copied()).enumerate() {
            prop_assert!((sol.rho.matrix()[(k, k)].re - n).abs() < 1e-8, "level {k}");
        }
        prop_assert!(sol.residual < 1e-9);
        prop_assert!(flux_balance(&spec, p.channels(), sol.rho.matrix()) < 1e-9);
    }

    #[test]
    fn linear_solve_and_null_space_agree(
        n in 2usize..6,
        extract_off in 0usize..4,
        gi in 0.1f64..10.0,
        ge in 0.1f64..10.0,
        gd in 0.0f64..10.0,
        de in -3.0f64..3.0,
    ) {
        let extract = 2 + extract_off % (n - 1);
        let mut energies = vec![0.0; n];
        energies[n - 1] = de;
        let spec = NetworkSpec::new(
            Unit::Dimensionless,
            &energies,
            (1..n).map(|i| Edge::new(i, i + 1, 1.0)).collect(),
            vec![1],
            vec![extract],
        );
        let ch = ChannelSet::new(gi, ge, gd).unwrap();
        let l = Lindblad::from_network(&spec, ch).unwrap().build(StorageMode::Dense);
        let a = steady_state(&l).unwrap();
        let b = steady_state_with(&l, &SteadyOptions { method: Some(Method::NullSpace), ..Default::default() }).unwrap();
        prop_assert!(max_norm((a.rho.matrix() - b.rho.matrix()).iter()) < 1e-8);
    }
}

#[test]
fn physical_chain_without_dephasing_is_nearly_flat() {
    let spec = NetworkSpec::new(
        Unit::Wavenumber,
        &[12300.0; 7],
        (1..7).map(|i| Edge::new(i, i + 1, 60.0)).collect(),
        vec![1],
        vec![7],
    )
    .to_internal_units();
    let ch = ChannelSet::new(5.0, 5.0, 0.0).unwrap();
    let sol = steady_state(
        &Lindblad::from_network(&spec, ch)
            .unwrap()
            .build(StorageMode::Auto),
    )
    .unwrap();
    let m = sol.rho.matrix();
    let sites: Vec<f64> = (1..=6).map(|k| m[(k, k)].re).collect();
    let mean = sites.iter().sum::<f64>() / 6.0;
    assert!(
        sites.iter().all(|v| (v - mean).abs() < 0.05 * mean),
        "{sites:?}"
    );
    assert!(m[(7, 7)].re < mean);
}

#[test]
fn sparse_storage_solves_a_long_chain() {
    let n = 36;
    let spec = NetworkSpec::new(
        Unit::Dimensionless,
        &vec![0.0; n],
        (1..n).map(|i| Edge::new(i, i + 1, 1.0)).collect(),
        vec![1],
        vec![n],
    );
    let p = ChainParams {
        len: n,
        t: 1.0,
        gamma_inj: 1.0,
        gamma_ext: 1.0,
        gamma_deph: 0.5,
    };
    let l = Lindblad::from_network(&spec, p.channels())
        .unwrap()
        .build(StorageMode::Auto);
    assert!(!l.is_dense());
    let sol = steady_state(&l).unwrap();
    let occ = analytic_chain_occupations(&p).unwrap();
    for (k, v) in occ.values.iter().enumerate() {
        assert!((sol.rho.matrix()[(k + 1, k + 1)].re - v).abs() < 1e-8);
    }
}
