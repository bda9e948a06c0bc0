//! The group `G = E4 x Cp`: elements, automorphisms, subgroups, Cayley
//! graphs, canonical connection sets and labelings by regular actions.
//!
//! Elements are enumerated `u`-major, `z`-minor: the element `(u1 u0, z)`
//! has index `z + p * (2 * u1 + u0)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coherent::{wl_closure, CoherentConfiguration};
use crate::error::{input, Error, Result};
use crate::graph::Digraph;
use crate::perm::{is_prime, is_regular_e4cp, Perm};

/// An element of `E4 x Cp`: the bit pair `u = 2 * u1 + u0` and a residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElem {
    pub u: u8,
    pub z: u64,
}

impl GElem {
    pub fn new(u: u8, z: u64) -> GElem {
        GElem { u: u & 3, z }
    }

    pub fn identity() -> GElem {
        GElem { u: 0, z: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.u == 0 && self.z == 0
    }

    pub fn index(&self, p: u64) -> usize {
        (self.z + p * self.u as u64) as usize
    }

    pub fn from_index(i: usize, p: u64) -> GElem {
        GElem {
            u: (i as u64 / p) as u8,
            z: i as u64 % p,
        }
    }

    pub fn add(&self, other: &GElem, p: u64) -> GElem {
        GElem {
            u: self.u ^ other.u,
            z: (self.z + other.z) % p,
        }
    }

    pub fn neg(&self, p: u64) -> GElem {
        GElem {
            u: self.u,
            z: (p - self.z) % p,
        }
    }

    pub fn sub(&self, other: &GElem, p: u64) -> GElem {
        self.add(&other.neg(p), p)
    }

    pub fn order(&self, p: u64) -> u64 {
        match (self.u != 0, self.z != 0) {
            (false, false) => 1,
            (true, false) => 2,
            (false, true) => p,
            (true, true) => 2 * p,
        }
    }
}

/// Formats as `u1u0.z`, for example `10.3`.
impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}.{}", self.u >> 1, self.u & 1, self.z)
    }
}

impl FromStr for GElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<GElem> {
        let bad = || Error::Input(format!("malformed group element {s:?}; expected u1u0.z"));
        let (bits, z) = s.trim().split_once('.').ok_or_else(bad)?;
        let b = bits.as_bytes();
        if b.len() != 2 || !b.iter().all(|c| *c == b'0' || *c == b'1') {
            return Err(bad());
        }
        let z = z.parse::<u64>().map_err(|_| bad())?;
        Ok(GElem {
            u: ((b[0] - b'0') << 1) | (b[1] - b'0'),
            z,
        })
    }
}

impl Serialize for GElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        input(format!("{p} is not prime"))
    }
}

/// A subset of `G \ {e}`, not necessarily inverse-closed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    p: u64,
    elements: BTreeSet<GElem>,
}

impl ConnectionSet {
    pub fn new(p: u64, elements: impl IntoIterator<Item = GElem>) -> Result<ConnectionSet> {
        check_prime(p)?;
        let elements: BTreeSet<GElem> = elements.into_iter().collect();
        if let Some(g) = elements.iter().find(|g| g.z >= p || g.u > 3) {
            return input(format!("{g} is not an element of E4 x C{p}"));
        }
        if elements.contains(&GElem::identity()) {
            return input("a connection set cannot contain the identity");
        }
        Ok(ConnectionSet { p, elements })
    }

    /// Parses a comma-separated list such as `10.0,01.0,00.1`.
    pub fn parse(p: u64, spec: &str) -> Result<ConnectionSet> {
        let items = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(GElem::from_str)
            .collect::<Result<Vec<_>>>()?;
        ConnectionSet::new(p, items)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GElem) -> bool {
        self.elements.contains(g)
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = &GElem> {
        self.elements.iter()
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.elements.iter().all(|g| self.contains(&g.neg(self.p)))
    }

    pub fn image(&self, sigma: &GAut) -> ConnectionSet {
        ConnectionSet {
            p: self.p,
            elements: self.elements.iter().map(|g| sigma.apply(g, self.p)).collect(),
        }
    }

    fn indices(&self) -> Vec<usize> {
        self.elements.iter().map(|g| g.index(self.p)).collect()
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A group automorphism of `E4 x Cp`: images of `01` and `10` on the `E4`
/// part, and multiplication by a unit on the `Cp` part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GAut {
    pub e0: u8,
    pub e1: u8,
    pub unit: u64,
}

impl GAut {
    pub fn identity() -> GAut {
        GAut { e0: 1, e1: 2, unit: 1 }
    }

    pub fn apply(&self, g: &GElem, p: u64) -> GElem {
        let mut u = 0;
        if g.u & 1 != 0 {
            u ^= self.e0;
        }
        if g.u & 2 != 0 {
            u ^= self.e1;
        }
        GElem {
            u,
            z: g.z * self.unit % p,
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GAut, p: u64) -> GAut {
        let e0 = other.apply(&GElem::new(self.e0, 0), p).u;
        let e1 = other.apply(&GElem::new(self.e1, 0), p).u;
        GAut {
            e0,
            e1,
            unit: self.unit * other.unit % p,
        }
    }

    /// The induced permutation of the canonical point set.
    pub fn as_perm(&self, p: u64) -> Perm {
        let n = 4 * p as usize;
        Perm::from_images_unchecked(
            (0..n)
                .map(|i| self.apply(&GElem::from_index(i, p), p).index(p))
                .collect(),
        )
    }
}

/// All `6(p - 1)` automorphisms of `E4 x Cp`.
pub fn aut_of_g(p: u64) -> Result<Vec<GAut>> {
    check_prime(p)?;
    let mut out = Vec::with_capacity(6 * (p as usize - 1));
    for e0 in 1..4u8 {
        for e1 in 1..4u8 {
            if e1 == e0 {
                continue;
            }
            for unit in 1..p {
                out.push(GAut { e0, e1, unit });
            }
        }
    }
    Ok(out)
}

/// The lexicographically least image of `s` under `Aut(G)`, with the first
/// automorphism attaining it.
pub fn canonical_connection_set_with_witness(s: &ConnectionSet) -> (ConnectionSet, GAut) {
    let autos = aut_of_g(s.p).expect("connection sets carry a prime");
    let mut best: Option<(Vec<usize>, ConnectionSet, GAut)> = None;
    for sigma in autos {
        let image = s.image(&sigma);
        let key = image.indices();
        if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
            best = Some((key, image, sigma));
        }
    }
    let (_, set, sigma) = best.unwrap();
    (set, sigma)
}

pub fn canonical_connection_set(s: &ConnectionSet) -> ConnectionSet {
    canonical_connection_set_with_witness(s).0
}

/// Arcs `(g, g + s)` on the canonical point set of `G`.
pub fn cayley_graph(p: u64, s: &ConnectionSet) -> Result<Digraph> {
    check_prime(p)?;
    if s.p != p {
        return input(format!("connection set over C{} used with p = {p}", s.p));
    }
    let n = 4 * p as usize;
    let mut g = Digraph::new(n);
    for i in 0..n {
        let x = GElem::from_index(i, p);
        for e in s.elements() {
            g.add_arc(i, x.add(e, p).index(p));
        }
    }
    Ok(g)
}

/// Coherent closure of a Cayley graph.
pub fn cayley_scheme(p: u64, s: &ConnectionSet) -> Result<CoherentConfiguration> {
    let g = cayley_graph(p, s)?;
    wl_closure(g.n(), &[g.arcs()])
}

/// Every subgroup of `E4 x Cp` as a sorted element list, ordered by size.
pub fn subgroups_of_g(p: u64) -> Result<Vec<Vec<GElem>>> {
    check_prime(p)?;
    let n = 4 * p as usize;
    let close = |gens: &[GElem]| -> Vec<GElem> {
        let mut seen: BTreeSet<GElem> = BTreeSet::from([GElem::identity()]);
        let mut frontier = vec![GElem::identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.add(g, p);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    };
    let mut found: HashSet<Vec<GElem>> = HashSet::new();
    for a in 0..n {
        for b in a..n {
            found.insert(close(&[GElem::from_index(a, p), GElem::from_index(b, p)]));
        }
    }
    let mut out: Vec<Vec<GElem>> = found.into_iter().collect();
    out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    Ok(out)
}

/// Right translation `x ↦ x + k` as a permutation of the canonical points.
pub fn translation(p: u64, k: &GElem) -> Perm {
    let n = 4 * p as usize;
    Perm::from_images_unchecked((0..n).map(|i| GElem::from_index(i, p).add(k, p).index(p)).collect())
}

/// Generators of the right-regular action of `G` on its canonical points.
pub fn right_regular_generators(p: u64) -> Vec<Perm> {
    [GElem::new(1, 0), GElem::new(2, 0), GElem::new(0, 1)]
        .iter()
        .map(|k| translation(p, k))
        .collect()
}

/// Coordinates of a regular `E4 x Cp`-action: the chosen generators and
/// the label of every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularLabeling {
    /// Involutions sent to `01` and `10`, then the element sent to `00.1`.
    pub generators: [Perm; 3],
    pub labels: Vec<GElem>,
}

/// Labels `base` with the identity and `h(base)` with the coordinates of
/// `h`, using the two least independent involutions and the least element
/// of order `p` of `H` as a basis.
pub fn regular_labeling(h: &[Perm], base: usize, p: u64) -> Result<RegularLabeling> {
    if !is_regular_e4cp(h, p) {
        return input("group is not a regular E4 x Cp action");
    }
    let n = 4 * p as usize;
    if base >= n {
        return input(format!("base point {base} outside {n} points"));
    }
    let mut sorted: Vec<&Perm> = h.iter().collect();
    sorted.sort();
    let involutions: Vec<&Perm> = sorted.iter().copied().filter(|g| g.order() == 2).collect();
    let x = involutions[0].clone();
    let y = involutions[1].clone();
    let t = sorted.iter().find(|g| g.order() == p).copied().unwrap().clone();
    let mut labels = vec![GElem::identity(); n];
    for u in 0..4u8 {
        let mut e = Perm::identity(n);
        if u & 1 != 0 {
            e = e.then(&x);
        }
        if u & 2 != 0 {
            e = e.then(&y);
        }
        for z in 0..p {
            labels[e.apply(base)] = GElem { u, z };
            e = e.then(&t);
        }
    }
    Ok(RegularLabeling {
        generators: [x, y, t],
        labels,
    })
}

/// The connection set read off the out-neighbors of the identity point.
pub fn extract_connection_set(graph: &Digraph, labels: &[GElem], p: u64) -> Result<ConnectionSet> {
    let base = labels
        .iter()
        .position(GElem::is_identity)
        .ok_or_else(|| Error::Input("labeling has no identity point".into()))?;
    ConnectionSet::new(p, graph.out_neighbors(base).into_iter().map(|v| labels[v]))
}

/// `Y^G`: colors of `cc_y` merged along the orbits of right translations.
pub fn orbit_scheme(cc_y: &CoherentConfiguration, p: u64) -> Result<CoherentConfiguration> {
    check_prime(p)?;
    let n = 4 * p as usize;
    if cc_y.n() != n {
        return input(format!("configuration of degree {} is not on 4p points", cc_y.n()));
    }
    let rank = cc_y.rank();
    let mut parent: Vec<usize> = (0..rank).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in right_regular_generators(p) {
        let mut image = vec![u32::MAX; rank];
        let mut preimage = vec![u32::MAX; rank];
        for a in 0..n {
            for b in 0..n {
                let c = cc_y.color(a, b);
                let d = cc_y.color(t.apply(a), t.apply(b));
                let (i, r) = (&mut image[c as usize], &mut preimage[d as usize]);
                if (*i != u32::MAX && *i != d) || (*r != u32::MAX && *r != c) {
                    return input("right translations are not isomorphisms of the configuration");
                }
                *i = d;
                *r = c;
                let (rc, rd) = (root(&mut parent, c as usize), root(&mut parent, d as usize));
                parent[rc.max(rd)] = rc.min(rd);
            }
        }
    }
    let raw: Vec<usize> = cc_y.colors().iter().map(|&c| root(&mut parent, c as usize)).collect();
    CoherentConfiguration::from_coloring(n, &raw)
}
