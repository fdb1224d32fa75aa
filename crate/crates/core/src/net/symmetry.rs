// Copyright 2026 The enaqt Authors
// SPDX-License-Identifier: Apache-2.0

//! Inversion-symmetry detection.
//!
//! A network is inversion symmetric when some involution π of the sites
//! preserves every on-site energy and coupling and swaps the injection and
//! extraction sets. The search is an exhaustive backtracking over
//! involutions: sites are only paired with sites of equal signature
//! (energy, sorted incident couplings) and matching role, and every partial
//! assignment is checked against the couplings already fixed.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{NetError, NetworkSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// `permutation[i - 1] = π(i)`, 1-based; present iff `symmetric`.
    pub permutation: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryOptions {
    pub max_sites: usize,
    /// Cap on backtracking nodes visited.
    pub max_nodes: u64,
}

impl Default for SymmetryOptions {
    fn default() -> Self {
        SymmetryOptions {
            max_sites: 16,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Bulk,
    Source,
    Sink,
}

impl Role {
    fn image(self) -> Role {
        match self {
            Role::Bulk => Role::Bulk,
            Role::Source => Role::Sink,
            Role::Sink => Role::Source,
        }
    }
}

// -0.0 and 0.0 compare equal; everything else by bit pattern.
fn key(x: f64) -> u64 {
    (x + 0.0).to_bits()
}

struct Search {
    n: usize,
    weight: Vec<u64>,
    role: Vec<Role>,
    signature: Vec<(u64, Vec<u64>)>,
    order: Vec<usize>,
    perm: Vec<Option<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl Search {
    fn w(&self, a: usize, b: usize) -> u64 {
        self.weight[a * self.n + b]
    }

    fn compatible(&self, a: usize, b: usize) -> bool {
        if self.role[b] != self.role[a].image() || self.signature[a] != self.signature[b] {
            return false;
        }
        if a == b && self.role[a] != Role::Bulk {
            return false;
        }
        for k in 0..self.n {
            if let Some(pk) = self.perm[k] {
                if self.w(a, k) != self.w(b, pk) {
                    return false;
                }
                if a != b && self.w(b, k) != self.w(a, pk) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> Result<bool, NetError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(NetError::SearchBudgetExceeded(format!(
                "visited more than {} search nodes",
                self.max_nodes
            )));
        }
        let Some(pos) = (depth..self.n).find(|&p| self.perm[self.order[p]].is_none()) else {
            return Ok(true);
        };
        let a = self.order[pos];
        for b in 0..self.n {
            if self.perm[b].is_some() || !self.compatible(a, b) {
                continue;
            }
            self.perm[a] = Some(b);
            self.perm[b] = Some(a);
            if self.run(pos + 1)? {
                return Ok(true);
            }
            self.perm[a] = None;
            self.perm[b] = None;
        }
        Ok(false)
    }
}

pub fn detect_inversion_symmetry(spec: &NetworkSpec) -> Result<SymmetryReport, NetError> {
    detect_inversion_symmetry_with(spec, SymmetryOptions::default())
}

pub fn detect_inversion_symmetry_with(
    spec: &NetworkSpec,
    opts: SymmetryOptions,
) -> Result<SymmetryReport, NetError> {
    let n = spec.n_sites();
    if n > opts.max_sites {
        return Err(NetError::SearchBudgetExceeded(format!(
            "network has {n} sites, limit is {}",
            opts.max_sites
        )));
    }
    let none = SymmetryReport {
        symmetric: false,
        permutation: None,
    };
    if spec.inject.len() != spec.extract.len() {
        return Ok(none);
    }

    let mut weight = vec![key(0.0); n * n];
    let mut adjacency = vec![Vec::new(); n];
    for e in &spec.edges {
        let (i, j) = (e.i - 1, e.j - 1);
        weight[i * n + j] = key(e.t);
        weight[j * n + i] = key(e.t);
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let mut role = vec![Role::Bulk; n];
    for &s in &spec.inject {
        role[s - 1] = Role::Source;
    }
    for &s in &spec.extract {
        role[s - 1] = Role::Sink;
    }
    let signature: Vec<(u64, Vec<u64>)> = (0..n)
        .map(|a| {
            let mut inc: Vec<u64> = (0..n)
                .map(|b| weight[a * n + b])
                .filter(|&w| w != key(0.0))
                .collect();
            inc.sort_unstable();
            (key(spec.sites[a].energy), inc)
        })
        .collect();

    // Cheap necessary condition: the signature multiset of sources must
    // equal that of sinks.
    let census = |r: Role| {
        let mut m: BTreeMap<&(u64, Vec<u64>), usize> = BTreeMap::new();
        for a in (0..n).filter(|&a| role[a] == r) {
            *m.entry(&signature[a]).or_default() += 1;
        }
        m
    };
    if census(Role::Source) != census(Role::Sink) {
        return Ok(none);
    }

    // Visit sites breadth-first from the sources so couplings to already
    // assigned sites prune early.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for start in spec.inject.iter().map(|s| s - 1).chain(0..n) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        while let Some(a) = queue.pop_front() {
            order.push(a);
            for &b in &adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }

    let mut search = Search {
        n,
        weight,
        role,
        signature,
        order,
        perm: vec![None; n],
        nodes: 0,
        max_nodes: opts.max_nodes,
    };
    if search.run(0)? {
        let permutation = search.perm.iter().map(|p| p.unwrap() + 1).collect();
        Ok(SymmetryReport {
            symmetric: true,
            permutation: Some(permutation),
        })
    } else {
        Ok(none)
    }
}

impl SymmetryReport {
    /// Independently checks that the reported permutation is an involution
    /// mapping the network onto itself with source and sink exchanged.
    pub fn verify(&self, spec: &NetworkSpec) -> bool {
        let Some(perm) = &self.permutation else {
            return !self.symmetric;
        };
        let n = spec.n_sites();
        if perm.len() != n || perm.iter().any(|&p| p == 0 || p > n) {
            return false;
        }
        if (1..=n).any(|i| perm[perm[i - 1] - 1] != i) {
            return false;
        }
        let image = spec.relabeled(perm);
        let edge_set = |s: &NetworkSpec| {
            let mut v: Vec<(usize, usize, u64)> = s
                .edges
                .iter()
                .map(|e| {
                    let (i, j) = e.key();
                    (i, j, key(e.t))
                })
                .collect();
            v.sort_unstable();
            v
        };
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        image
            .energies()
            .iter()
            .map(|&e| key(e))
            .eq(spec.energies().iter().map(|&e| key(e)))
            && edge_set(&image) == edge_set(spec)
            && sorted(&image.inject) == sorted(&spec.extract)
            && sorted(&image.extract) == sorted(&spec.inject)
    }
}
