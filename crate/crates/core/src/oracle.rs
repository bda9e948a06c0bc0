//! Brute-force checkers used to validate the algorithm, and the exhaustive
//! solver for `p` in `{2, 3}`.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::autsearch::{automorphism_group, digraph_isomorphism, labeled_isomorphism, AutResult};
use crate::coherent::wl_closure;
use crate::error::{input, Error, Result};
use crate::graph::Digraph;
use crate::grouplib::{canonical_connection_set, cayley_graph, translation, ConnectionSet, GElem};
use crate::perm::{is_regular_e4cp, is_semiregular_cp, subgroup_closure, Perm};
use crate::solver::Certificate;

/// Default element budget for exhaustive group scans.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// True iff the labeling is a bijection onto `G` and `(a, b)` is an arc
/// exactly when `label(b) - label(a)` lies in the connection set.
pub fn verify_certificate(graph: &Digraph, cert: &Certificate) -> bool {
    let p = cert.p;
    let n = graph.n();
    if n as u64 != 4 * p || cert.labeling.len() != n || cert.connection_set.p() != p {
        return false;
    }
    let mut hit = vec![false; n];
    for l in &cert.labeling {
        if l.z >= p || l.u > 3 || std::mem::replace(&mut hit[l.index(p)], true) {
            return false;
        }
    }
    (0..n).all(|a| {
        (0..n).all(|b| {
            let diff = cert.labeling[b].sub(&cert.labeling[a], p);
            graph.has_arc(a, b) == cert.connection_set.contains(&diff)
        })
    })
}

/// `Aut(graph)` with its order checked against the budget.
pub fn automorphisms_within_budget(graph: &Digraph, budget: u64) -> Result<AutResult> {
    let cc = wl_closure(graph.n(), &[graph.arcs()])?;
    let aut = automorphism_group(&cc);
    let order = aut.group.order();
    if order > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            budget,
            order: order.to_string(),
        });
    }
    Ok(aut)
}

fn elements_within_budget(graph: &Digraph, budget: u64) -> Result<Vec<Perm>> {
    let aut = automorphisms_within_budget(graph, budget)?;
    Ok(aut.group.elements(budget).expect("order checked against the budget"))
}

/// Every automorphism with cycle type `p^(n/p)`.
pub fn brute_semiregular_p(graph: &Digraph, p: u64, budget: u64) -> Result<Vec<Perm>> {
    let mut out: Vec<Perm> = elements_within_budget(graph, budget)?
        .into_iter()
        .filter(|g| is_semiregular_cp(g, p))
        .collect();
    out.sort();
    Ok(out)
}

/// Every regular subgroup of `Aut(graph)` isomorphic to `E4 x Cp`, as
/// sorted element lists.
pub fn brute_regular_e4cp(graph: &Digraph, budget: u64) -> Result<Vec<Vec<Perm>>> {
    let n = graph.n();
    if !n.is_multiple_of(4) || !crate::perm::is_prime(n as u64 / 4) {
        return input(format!("{n} vertices is not 4p for a prime p"));
    }
    let p = n as u64 / 4;
    let elements = elements_within_budget(graph, budget)?;
    let order_p: Vec<&Perm> = elements.iter().filter(|g| is_semiregular_cp(g, p)).collect();
    let involutions: Vec<&Perm> = elements.iter().filter(|g| is_semiregular_cp(g, 2)).collect();
    let mut subgroups_p: HashSet<Vec<Perm>> = HashSet::new();
    let mut found: HashSet<Vec<Perm>> = HashSet::new();
    for g in order_p {
        if !subgroups_p.insert(crate::perm::cyclic_subgroup(g)) {
            continue;
        }
        let commuting: Vec<&Perm> = involutions.iter().copied().filter(|x| x.commutes_with(g)).collect();
        for (i, x) in commuting.iter().enumerate() {
            for y in &commuting[i + 1..] {
                if !x.commutes_with(y) {
                    continue;
                }
                let gens = [g.clone(), (*x).clone(), (*y).clone()];
                if let Some(mut h) = subgroup_closure(&gens, n) {
                    if is_regular_e4cp(&h, p) {
                        h.sort();
                        found.insert(h);
                    }
                }
            }
        }
    }
    let mut out: Vec<Vec<Perm>> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// True iff some automorphism maps vertex `0` to every other vertex, checked
/// by isomorphism of the configuration rooted at `0` and at `v`.
pub fn is_vertex_transitive(graph: &Digraph) -> Result<bool> {
    let n = graph.n();
    let cc = wl_closure(n, &[graph.arcs()])?;
    if !cc.is_homogeneous() {
        return Ok(false);
    }
    let root = cc.rank() as u64;
    let rooted = |v: usize| {
        let mut labels: Vec<u64> = cc.colors().iter().map(|&c| c as u64).collect();
        labels[v * n + v] = root;
        labels
    };
    let base = rooted(0);
    Ok((1..n).all(|v| labeled_isomorphism(n, &base, &rooted(v)).is_some()))
}

/// Certificate obtained from an isomorphism `phi` of `graph` onto
/// `Cay(G, s)`.
fn certificate_from_isomorphism(p: u64, s: ConnectionSet, phi: &Perm) -> Certificate {
    let phi_inv = phi.inverse();
    let conj = |k: GElem| phi.then(&translation(p, &k)).then(&phi_inv);
    Certificate {
        p,
        labeling: (0..phi.degree()).map(|v| GElem::from_index(phi.apply(v), p)).collect(),
        connection_set: s,
        generators: [conj(GElem::new(1, 0)), conj(GElem::new(2, 0)), conj(GElem::new(0, 1))],
    }
}

/// Solves `n = 8, 12` by testing the graph against one Cayley graph per
/// canonical connection set.
pub fn exhaustive_small_p(graph: &Digraph, p: u64) -> Result<Option<Certificate>> {
    if !(p == 2 || p == 3) || graph.n() as u64 != 4 * p {
        return input(format!(
            "exhaustive search covers 4p vertices with p in {{2, 3}}, got n = {}",
            graph.n()
        ));
    }
    let n = graph.n();
    let arcs = graph.arc_count();
    let mut seen: HashSet<ConnectionSet> = HashSet::new();
    for mask in 0u64..(1 << (n - 1)) {
        let size = mask.count_ones() as usize;
        if size * n != arcs {
            continue;
        }
        let s = ConnectionSet::new(
            p,
            (0..n - 1)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| GElem::from_index(i + 1, p)),
        )?;
        if !seen.insert(canonical_connection_set(&s)) {
            continue;
        }
        let cay = cayley_graph(p, &s)?;
        if let Some(phi) = digraph_isomorphism(graph, &cay) {
            return Ok(Some(certificate_from_isomorphism(p, s, &phi)));
        }
    }
    Ok(None)
}
