//! Cayley representations over `E4 x Cp` and the isomorphism test for
//! Cayley graphs over that group.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::autsearch::is_automorphism;
use crate::coherent::{wl_closure, CoherentConfiguration};
use crate::error::{input, Error, Result};
use crate::graph::Digraph;
use crate::grouplib::{
    canonical_connection_set, canonical_connection_set_with_witness, extract_connection_set, regular_labeling,
    ConnectionSet, GElem,
};
use crate::mainsub::main_subroutine;
use crate::oracle::exhaustive_small_p;
use crate::perm::{is_prime, is_regular_e4cp, is_semiregular_cp, subgroup_closure, OrbitCoordinates, Perm};

/// A labeling of the vertices by `G` under which the graph is
/// `Cay(G, connection_set)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: u64,
    pub labeling: Vec<GElem>,
    pub connection_set: ConnectionSet,
    /// Two involutions and an element of order `p` generating the regular
    /// group; they act as translation by `01.0`, `10.0` and `00.1`.
    pub generators: [Perm; 3],
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    cayley: bool,
    p: u64,
    labeling: Vec<GElem>,
    connection_set: Vec<GElem>,
    generators: GeneratorsJson,
}

#[derive(Serialize, Deserialize)]
struct GeneratorsJson {
    #[serde(rename = "01.0")]
    first_involution: Vec<usize>,
    #[serde(rename = "10.0")]
    second_involution: Vec<usize>,
    #[serde(rename = "00.1")]
    order_p: Vec<usize>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let [x, y, t] = &self.generators;
        let doc = CertificateJson {
            cayley: true,
            p: self.p,
            labeling: self.labeling.clone(),
            connection_set: self.connection_set.elements().copied().collect(),
            generators: GeneratorsJson {
                first_involution: x.images(),
                second_involution: y.images(),
                order_p: t.images(),
            },
        };
        serde_json::to_string_pretty(&doc).expect("certificate serializes")
    }

    /// Reads the JSON form written by [`Certificate::to_json`].
    pub fn from_json(text: &str) -> Result<Certificate> {
        let doc: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("certificate JSON: {e}")))?;
        if !doc.cayley {
            return input("the document records a negative answer, not a certificate");
        }
        let g = doc.generators;
        Ok(Certificate {
            p: doc.p,
            labeling: doc.labeling,
            connection_set: ConnectionSet::new(doc.p, doc.connection_set)?,
            generators: [
                Perm::from_images(g.first_involution)?,
                Perm::from_images(g.second_involution)?,
                Perm::from_images(g.order_p)?,
            ],
        })
    }
}

/// `p` with `n = 4p`, if `p` is prime.
pub fn prime_of_degree(n: usize) -> Option<u64> {
    let p = (n / 4) as u64;
    (n.is_multiple_of(4) && is_prime(p)).then_some(p)
}

/// The regular Klein four-group on four orbits, without its identity.
const KLEIN_ACTIONS: [[usize; 4]; 3] = [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// Involutions of the centralizer of `<P>` acting on the orbits of `P` as
/// the given fixed-point-free element of the Klein four-group.
fn klein_involutions(coords: &OrbitCoordinates, sigma: &[usize; 4]) -> Vec<Perm> {
    let p = coords.p;
    let mut out = Vec::with_capacity(p * p);
    // Orbit pairs swapped by sigma: shifts satisfy s[sigma(i)] = -s[i].
    let firsts: Vec<usize> = (0..4).filter(|&i| i < sigma[i]).collect();
    for a in 0..p {
        for b in 0..p {
            let mut shift = [0; 4];
            for (&i, s) in firsts.iter().zip([a, b]) {
                shift[i] = s;
                shift[sigma[i]] = (p - s) % p;
            }
            out.push(coords.centralizer_element(sigma, &shift));
        }
    }
    out
}

/// `R(P)`: the regular `E4 x Cp` subgroups `H` with `P <= H <= C_P ∩ Aut(X)`,
/// each as a sorted element list.
pub fn r_of_p(cc: &CoherentConfiguration, p_gen: &Perm, p: u64) -> Result<Vec<Vec<Perm>>> {
    if cc.n() as u64 != 4 * p || !is_semiregular_cp(p_gen, p) || !is_automorphism(cc, p_gen) {
        return input("P must be a color-preserving semiregular element of order p on 4p points");
    }
    let coords = OrbitCoordinates::new(p_gen, p)?;
    // Every such H contains exactly one involution for each nonidentity
    // orbit action, so fixing the actions of x and y lists each H once.
    let xs: Vec<Perm> = klein_involutions(&coords, &KLEIN_ACTIONS[0])
        .into_iter()
        .filter(|x| is_automorphism(cc, x))
        .collect();
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let ys: Vec<Perm> = klein_involutions(&coords, &KLEIN_ACTIONS[1])
        .into_iter()
        .filter(|y| is_automorphism(cc, y))
        .collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for x in &xs {
        for y in ys.iter().filter(|y| x.commutes_with(y)) {
            let Some(mut h) = subgroup_closure(&[p_gen.clone(), x.clone(), y.clone()], 4 * p as usize) else {
                continue;
            };
            if is_regular_e4cp(&h, p) {
                h.sort();
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
        }
    }
    Ok(out)
}

fn certificate_from_group(graph: &Digraph, h: &[Perm], p: u64) -> Result<Certificate> {
    let lab = regular_labeling(h, 0, p)?;
    let connection_set = extract_connection_set(graph, &lab.labels, p)?;
    Ok(Certificate {
        p,
        labeling: lab.labels,
        connection_set,
        generators: lab.generators,
    })
}

fn closure_of(graph: &Digraph) -> Result<CoherentConfiguration> {
    wl_closure(graph.n(), &[graph.arcs()])
}

/// A Cayley representation over `E4 x Cp`, `p >= 5`, if one exists.
pub fn find_representation(graph: &Digraph) -> Result<Option<Certificate>> {
    let Some(p) = prime_of_degree(graph.n()).filter(|&p| p >= 5) else {
        return input(format!("{} vertices is not 4p for a prime p >= 5", graph.n()));
    };
    let cc = closure_of(graph)?;
    if !cc.is_homogeneous() {
        return Ok(None);
    }
    let bp = main_subroutine(&cc, p)?;
    for g in bp.generators() {
        if let Some(h) = r_of_p(&cc, g, p)?.first() {
            return certificate_from_group(graph, h, p).map(Some);
        }
    }
    Ok(None)
}

/// Every pairwise inequivalent Cayley representation (one per canonical
/// connection set) reachable through the representative set.
pub fn all_representations(graph: &Digraph) -> Result<Vec<Certificate>> {
    let Some(p) = prime_of_degree(graph.n()).filter(|&p| p >= 5) else {
        return input(format!("{} vertices is not 4p for a prime p >= 5", graph.n()));
    };
    let cc = closure_of(graph)?;
    if !cc.is_homogeneous() {
        return Ok(Vec::new());
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in main_subroutine(&cc, p)?.generators() {
        for h in r_of_p(&cc, g, p)? {
            let cert = certificate_from_group(graph, &h, p)?;
            if seen.insert(canonical_connection_set(&cert.connection_set)) {
                out.push(cert);
            }
        }
    }
    Ok(out)
}

/// Representation for any `n = 4p`: `p >= 5` runs the full algorithm,
/// `p` in `{2, 3}` the exhaustive search.
pub fn represent(graph: &Digraph) -> Result<Option<Certificate>> {
    match prime_of_degree(graph.n()) {
        Some(p) if p >= 5 => find_representation(graph),
        Some(p) => exhaustive_small_p(graph, p),
        None => input(format!("{} vertices is not 4p for a prime p", graph.n())),
    }
}

/// A vertex bijection from `Cay(G, s1)` onto `graph2`, or `None` if they
/// are not isomorphic.
pub fn iso_test(s1: &ConnectionSet, graph2: &Digraph) -> Result<Option<Perm>> {
    let p = s1.p();
    if graph2.n() as u64 != 4 * p {
        return Ok(None);
    }
    let Some(cert) = represent(graph2)? else {
        return Ok(None);
    };
    let (c1, sigma1) = canonical_connection_set_with_witness(s1);
    let (c2, sigma2) = canonical_connection_set_with_witness(&cert.connection_set);
    if c1 != c2 {
        return Ok(None);
    }
    // g -> sigma1(g) -> sigma2^{-1}(sigma1(g)), a vertex of Cay(G, S2),
    // which is the point of graph2 carrying that label.
    let n = graph2.n();
    let mut by_label = vec![0; n];
    for (v, l) in cert.labeling.iter().enumerate() {
        by_label[l.index(p)] = v;
    }
    let mut sigma2_inverse = vec![0; n];
    for i in 0..n {
        sigma2_inverse[sigma2.apply(&GElem::from_index(i, p), p).index(p)] = i;
    }
    let images = (0..n)
        .map(|i| {
            let t = sigma1.apply(&GElem::from_index(i, p), p).index(p);
            by_label[sigma2_inverse[t]]
        })
        .collect();
    Perm::from_images(images).map(Some)
}
