//! Generators and brute-force checks shared by the integration tests.

#![allow(dead_code)]

use cayrep::coherent::CoherentConfiguration;
use cayrep::graph::Digraph;
use cayrep::grouplib::{ConnectionSet, GElem};
use cayrep::perm::Perm;
use rand::seq::SliceRandom;
use rand::Rng;

/// A uniformly sized random connection set; half of the draws are closed
/// under inverses.
pub fn random_connection_set<R: Rng>(p: u64, rng: &mut R) -> ConnectionSet {
    let n = 4 * p as usize;
    let size = rng.gen_range(1..n);
    let undirected = rng.gen_bool(0.5);
    let mut pool: Vec<GElem> = (1..n).map(|i| GElem::from_index(i, p)).collect();
    pool.shuffle(rng);
    let mut chosen: Vec<GElem> = Vec::new();
    for g in pool {
        if chosen.len() >= size {
            break;
        }
        if chosen.contains(&g) {
            continue;
        }
        chosen.push(g);
        if undirected && !chosen.contains(&g.neg(p)) {
            chosen.push(g.neg(p));
        }
    }
    ConnectionSet::new(p, chosen).unwrap()
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

pub fn shuffled<R: Rng>(g: &Digraph, rng: &mut R) -> Digraph {
    g.relabel(&random_perm(g.n(), rng))
}

pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Digraph {
    let arcs: Vec<(usize, usize)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    Digraph::from_arcs(n, &arcs).unwrap()
}

pub fn cycle_graph(n: usize) -> Digraph {
    undirected(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
}

/// `copies` disjoint copies of the complete graph `K_m`.
pub fn disjoint_cliques(copies: usize, m: usize) -> Digraph {
    let edges: Vec<(usize, usize)> = (0..copies)
        .flat_map(|c| (0..m).flat_map(move |a| (a + 1..m).map(move |b| (c * m + a, c * m + b))))
        .collect();
    undirected(copies * m, &edges)
}

/// `copies` disjoint cycles of length `m`.
pub fn disjoint_cycles(copies: usize, m: usize) -> Digraph {
    let edges: Vec<(usize, usize)> = (0..copies)
        .flat_map(|c| (0..m).map(move |a| (c * m + a, c * m + (a + 1) % m)))
        .collect();
    undirected(copies * m, &edges)
}

pub fn cube() -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..8usize).flat_map(|v| [1, 2, 4].map(|b| (v, v ^ b))).collect();
    Digraph::from_arcs(8, &arcs).unwrap()
}

pub fn erdos_renyi<R: Rng>(n: usize, prob: f64, rng: &mut R) -> Digraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(prob))
        .collect();
    undirected(n, &edges)
}

/// Color-preservation checked pair by pair.
pub fn preserves_colors(cc: &CoherentConfiguration, g: &Perm) -> bool {
    let n = cc.n();
    (0..n).all(|a| (0..n).all(|b| cc.color(a, b) == cc.color(g.apply(a), g.apply(b))))
}

/// Whether `f` maps the arcs of `g1` exactly onto the arcs of `g2`.
pub fn is_isomorphism(g1: &Digraph, g2: &Digraph, f: &Perm) -> bool {
    let n = g1.n();
    n == g2.n() && (0..n).all(|a| (0..n).all(|b| g1.has_arc(a, b) == g2.has_arc(f.apply(a), f.apply(b))))
}

/// Plain backtracking isomorphism search, pruned only by out- and
/// in-degrees; meant for graphs on at most a dozen vertices.
pub fn brute_isomorphic(g1: &Digraph, g2: &Digraph) -> bool {
    let n = g1.n();
    if n != g2.n() || g1.arc_count() != g2.arc_count() {
        return false;
    }
    let degrees = |g: &Digraph| -> Vec<(usize, usize)> {
        (0..n)
            .map(|v| {
                (
                    (0..n).filter(|&w| g.has_arc(v, w)).count(),
                    (0..n).filter(|&w| g.has_arc(w, v)).count(),
                )
            })
            .collect()
    };
    let (d1, d2) = (degrees(g1), degrees(g2));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        v: usize,
        g1: &Digraph,
        g2: &Digraph,
        d1: &[(usize, usize)],
        d2: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g1.n();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || d1[v] != d2[w] {
                continue;
            }
            let consistent = (0..v)
                .all(|u| g1.has_arc(u, v) == g2.has_arc(map[u], w) && g1.has_arc(v, u) == g2.has_arc(w, map[u]))
                && g1.has_arc(v, v) == g2.has_arc(w, w);
            if consistent {
                map[v] = w;
                used[w] = true;
                if extend(v + 1, g1, g2, d1, d2, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    extend(0, g1, g2, &d1, &d2, &mut map, &mut used)
}
