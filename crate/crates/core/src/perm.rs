//! Permutations of `{0, .., n-1}` and a small Schreier-Sims engine.
//!
//! Composition is left-to-right: `f.then(&g)` (also written `&f * &g`) maps
//! `x` to `g(f(x))`. Group elements obtained from a stabilizer chain are
//! therefore products `u_{k-1} * ... * u_1 * u_0` of transversal elements,
//! the deepest level applied first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 255;

/// Groups at most this large may be enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        Perm {
            images: (0..n).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return input(format!("degree {n} exceeds {MAX_DEGREE}"));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return input(format!("image list {images:?} is not a bijection"));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return input(format!("cycles {cycles:?} are not disjoint on {n} points"));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Wraps an image table that the caller guarantees is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm {
            images: images.into_iter().map(|x| x as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `self^-1 * other * self`, i.e. `other` conjugated by `self`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.inverse().then(other).then(self)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x as usize)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// All cycles, including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut x = self.apply(0);
        let mut len = 1;
        while x != 0 {
            x = self.apply(x);
            len += 1;
        }
        len == n
    }
}

impl Mul<&Perm> for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Perm>>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(n: usize, base: usize) -> Level {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Perm::identity(n));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            checked: HashSet::new(),
        }
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().then(s);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group given by generators, with a base and strong
/// generating set for exact order and membership queries.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// The order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` when it went all the way).
    fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let y = h.apply(level.base);
            match &level.transversal[y] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (h, _) = self.strip(g, 0);
        h.is_identity()
    }

    /// Uniformly random element, using transversal products.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.n);
        for level in self.levels.iter().rev() {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(level.transversal[x].as_ref().unwrap());
        }
        g
    }

    /// Calls `f` on every element; stops early when `f` returns `false`.
    pub fn for_each_element<F: FnMut(&Perm) -> bool>(&self, mut f: F) {
        fn visit<F: FnMut(&Perm) -> bool>(levels: &[Level], depth: usize, acc: &Perm, f: &mut F) -> bool {
            if depth == 0 {
                return f(acc);
            }
            let level = &levels[depth - 1];
            for &x in &level.orbit {
                let next = acc.then(level.transversal[x].as_ref().unwrap());
                if !visit(levels, depth - 1, &next, f) {
                    return false;
                }
            }
            true
        }
        let id = Perm::identity(self.n);
        visit(&self.levels, self.levels.len(), &id, &mut f);
    }

    /// Every element, provided the order is at most `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<Perm>> {
        let order = self.order_u64()?;
        if order > limit {
            return None;
        }
        let mut out = Vec::with_capacity(order as usize);
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        Some(out)
    }

    /// Orbit of `x` under the whole group.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_of(x, &self.generators, self.n)
    }
}

/// Deterministic Schreier-Sims.
pub fn bsgs_build(n: usize, generators: &[Perm]) -> Result<PermGroup> {
    if n > MAX_DEGREE {
        return input(format!("degree {n} exceeds {MAX_DEGREE}"));
    }
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return input(format!("generator of degree {} in a group of degree {n}", g.degree()));
    }
    let mut group = PermGroup {
        n,
        generators: generators.to_vec(),
        levels: Vec::new(),
    };
    for g in generators.iter().filter(|g| !g.is_identity()) {
        let fixes_base = group.levels.iter().all(|l| g.apply(l.base) == l.base);
        if fixes_base {
            let b = g.first_moved_point().unwrap();
            group.levels.push(Level::new(n, b));
        }
    }
    for g in generators.iter().filter(|g| !g.is_identity()) {
        for level in group.levels.iter_mut() {
            level.gens.push(g.clone());
            if g.apply(level.base) != level.base {
                break;
            }
        }
    }
    for level in group.levels.iter_mut() {
        level.extend_orbit();
    }

    let mut i = group.levels.len() as isize - 1;
    while i >= 0 {
        let li = i as usize;
        let mut jump = None;
        let mut k = 0;
        'scan: while k < group.levels[li].orbit.len() {
            let beta = group.levels[li].orbit[k];
            for s_idx in 0..group.levels[li].gens.len() {
                if !group.levels[li].checked.insert((beta, s_idx)) {
                    continue;
                }
                let level = &group.levels[li];
                let s = &level.gens[s_idx];
                let gamma = s.apply(beta);
                let schreier = level.transversal[beta]
                    .as_ref()
                    .unwrap()
                    .then(s)
                    .then(&level.transversal[gamma].as_ref().unwrap().inverse());
                let (h, j) = group.strip(&schreier, li + 1);
                if j == group.levels.len() && h.is_identity() {
                    continue;
                }
                if j == group.levels.len() {
                    let b = h.first_moved_point().unwrap();
                    group.levels.push(Level::new(n, b));
                }
                for l in li + 1..=j {
                    group.levels[l].gens.push(h.clone());
                    group.levels[l].extend_orbit();
                }
                jump = Some(j);
                break 'scan;
            }
            k += 1;
        }
        match jump {
            Some(j) => i = j as isize,
            None => i -= 1,
        }
    }
    Ok(group)
}

/// Orbit of `x` under the group generated by `generators`, sorted.
pub fn orbit_of(x: usize, generators: &[Perm], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    let mut out = vec![x];
    while let Some(y) = queue.pop_front() {
        for g in generators {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Orbit partition of the group generated by `generators` on `n` points,
/// ordered by least element.
pub fn orbits(n: usize, generators: &[Perm]) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let orbit = orbit_of(x, generators, n);
        for &y in &orbit {
            assigned[y] = true;
        }
        out.push(orbit);
    }
    out
}

/// Largest power of `p` dividing the group order.
pub fn p_part_of_order(group: &PermGroup, p: u64) -> BigUint {
    let mut order = group.order();
    let bp = BigUint::from(p);
    let mut part = BigUint::one();
    if p < 2 {
        return part;
    }
    while (&order % &bp).is_zero() {
        order /= &bp;
        part *= &bp;
    }
    part
}

/// An element of order exactly `p`, if `p` divides the group order.
///
/// Random transversal products are tried first; groups of order at most
/// [`EXHAUSTIVE_LIMIT`] fall back to a full scan.
pub fn element_of_order_p(group: &PermGroup, p: u64) -> Option<Perm> {
    if p < 2 || p_part_of_order(group, p).is_one() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ p);
    let try_power = |g: &Perm| {
        let o = g.order();
        o.is_multiple_of(p).then(|| g.pow(o / p))
    };
    for _ in 0..256 {
        if let Some(h) = try_power(&group.random_element(&mut rng)) {
            return Some(h);
        }
    }
    if group.order_u64().is_some_and(|o| o <= EXHAUSTIVE_LIMIT) {
        let mut found = None;
        group.for_each_element(|g| {
            found = try_power(g);
            found.is_none()
        });
        return found;
    }
    (0..4096).find_map(|_| try_power(&group.random_element(&mut rng)))
}

/// True iff `g` is a product of `n/p` disjoint `p`-cycles.
pub fn is_semiregular_cp(g: &Perm, p: u64) -> bool {
    let p = p as usize;
    p >= 2 && g.degree() > 0 && g.cycles().iter().all(|c| c.len() == p)
}

/// Coordinates of the points of `Omega` relative to a semiregular
/// element of prime order `p` with four orbits: point `(i, k)` is
/// `P^k(b_i)` where `b_i` is the least point of the `i`-th orbit.
#[derive(Clone, Debug)]
pub struct OrbitCoordinates {
    pub p: usize,
    pub orbit_count: usize,
    coord: Vec<(usize, usize)>,
    point: Vec<Vec<usize>>,
}

impl OrbitCoordinates {
    pub fn new(gen: &Perm, p: u64) -> Result<OrbitCoordinates> {
        if !is_semiregular_cp(gen, p) {
            return input(format!("{gen} is not semiregular of order {p}"));
        }
        let n = gen.degree();
        let p = p as usize;
        let mut coord = vec![(0, 0); n];
        let mut point = Vec::new();
        for (i, cycle) in gen.cycles().into_iter().enumerate() {
            let mut row = Vec::with_capacity(p);
            let mut x = cycle[0];
            for k in 0..p {
                coord[x] = (i, k);
                row.push(x);
                x = gen.apply(x);
            }
            point.push(row);
        }
        Ok(OrbitCoordinates {
            p,
            orbit_count: point.len(),
            coord,
            point,
        })
    }

    pub fn coord(&self, x: usize) -> (usize, usize) {
        self.coord[x]
    }

    pub fn point(&self, orbit: usize, k: usize) -> usize {
        self.point[orbit][k % self.p]
    }

    /// The centralizer element `(i, k) -> (sigma(i), k + shift[i])`.
    pub fn centralizer_element(&self, sigma: &[usize], shift: &[usize]) -> Perm {
        let images = self
            .coord
            .iter()
            .map(|&(i, k)| self.point(sigma[i], k + shift[i]))
            .collect();
        Perm::from_images_unchecked(images)
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Every element of the centralizer of `<p_gen>` in `Sym(4p)`: one map per
/// permutation of the four orbits and shift vector, `24 p^4` in total.
pub fn centralizer_semiregular_cp(p_gen: &Perm, p: u64) -> Result<Vec<Perm>> {
    if p_gen.degree() as u64 != 4 * p {
        return input(format!("degree {} is not 4p for p = {p}", p_gen.degree()));
    }
    let coords = OrbitCoordinates::new(p_gen, p)?;
    let p = p as usize;
    let mut out = Vec::with_capacity(24 * p.pow(4));
    for sigma in all_permutations(4) {
        for code in 0..p.pow(4) {
            let shift = [code % p, code / p % p, code / (p * p) % p, code / (p * p * p)];
            out.push(coords.centralizer_element(&sigma, &shift));
        }
    }
    Ok(out)
}

/// Every element of the group generated by `elements`, or `None` once the
/// closure grows beyond `bound`. An empty generator list has no known degree
/// and yields an empty list.
pub fn subgroup_closure(elements: &[Perm], bound: usize) -> Option<Vec<Perm>> {
    let Some(first) = elements.first() else {
        return Some(Vec::new());
    };
    let id = Perm::identity(first.degree());
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        let x = out[k].clone();
        for g in elements {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > bound {
                    return None;
                }
            }
        }
        k += 1;
    }
    Some(out)
}

/// True iff `elements` is a regular permutation group isomorphic to
/// `E4 x Cp`: order `4p`, transitive, abelian, closed, no element of order 4.
pub fn is_regular_e4cp(elements: &[Perm], p: u64) -> bool {
    let n = 4 * p as usize;
    if elements.len() != n || elements.iter().any(|g| g.degree() != n) {
        return false;
    }
    let set: HashSet<&Perm> = elements.iter().collect();
    if set.len() != n || !set.contains(&Perm::identity(n)) {
        return false;
    }
    let mut hit = vec![false; n];
    for g in elements {
        hit[g.apply(0)] = true;
    }
    if hit.iter().any(|&h| !h) {
        return false;
    }
    for (i, a) in elements.iter().enumerate() {
        if a.order() % 4 == 0 {
            return false;
        }
        for b in &elements[i + 1..] {
            if !a.commutes_with(b) || !set.contains(&a.then(b)) {
                return false;
            }
        }
        if !set.contains(&a.then(a)) {
            return false;
        }
    }
    true
}

/// Conjugacy-class orbit of `x` under conjugation by `generators`.
pub fn conjugacy_orbit(x: &Perm, generators: &[Perm]) -> HashSet<Perm> {
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    let inverses: Vec<Perm> = generators.iter().map(Perm::inverse).collect();
    while let Some(y) = queue.pop_front() {
        for (g, gi) in generators.iter().zip(&inverses) {
            let z = gi.then(&y).then(g);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}

/// Sorted element list of the cyclic group generated by `g`.
pub fn cyclic_subgroup(g: &Perm) -> Vec<Perm> {
    let mut out = vec![Perm::identity(g.degree())];
    let mut x = g.clone();
    while !x.is_identity() {
        out.push(x.clone());
        x = x.then(g);
    }
    out.sort();
    out
}

pub(crate) fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn closure_size(gens: &[Perm]) -> usize {
        subgroup_closure(gens, 1_000_000).unwrap().len()
    }

    #[test]
    fn composition_is_left_to_right() {
        let f = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let g = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // (f g)(0) = g(f(0)) = g(1) = 2
        assert_eq!((&f * &g).apply(0), 2);
        assert_eq!(f.then(&g).apply(0), 2);
    }

    #[test]
    fn trivial_and_cyclic_orders() {
        assert_eq!(bsgs_build(5, &[]).unwrap().order(), BigUint::one());
        let c = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(bsgs_build(5, &[c]).unwrap().order(), BigUint::from(5u32));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = Perm::identity(4);
        assert!(matches!(bsgs_build(5, &[a]), Err(Error::Input(_))));
    }

    #[test]
    fn transpositions_match_bfs_closure() {
        let a = Perm::from_cycles(6, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let g = bsgs_build(6, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(g.order(), BigUint::from(720u32));
        assert_eq!(closure_size(&[a, b]), 720);
        let t1 = Perm::from_cycles(6, &[vec![0, 3]]).unwrap();
        let t2 = Perm::from_cycles(6, &[vec![3, 5]]).unwrap();
        let h = bsgs_build(6, &[t1.clone(), t2.clone()]).unwrap();
        assert_eq!(h.order(), BigUint::from(closure_size(&[t1, t2])));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(4, &[Perm::identity(4)]).len(), 4);
        let c = Perm::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(orbits(6, &[c]), vec![vec![0, 1, 2, 3, 4, 5]]);
        let four: Vec<Vec<usize>> = (0..4).map(|i| (5 * i..5 * i + 5).collect()).collect();
        let g = Perm::from_cycles(20, &four).unwrap();
        let o = orbits(20, &[g]);
        assert_eq!(o.len(), 4);
        assert!(o.iter().all(|x| x.len() == 5));
    }

    #[test]
    fn element_of_order_p_examples() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let s3 = bsgs_build(3, &[a, b]).unwrap();
        assert!(element_of_order_p(&s3, 5).is_none());

        let c10 = Perm::from_cycles(10, &[(0..10).collect()]).unwrap();
        let g = bsgs_build(10, std::slice::from_ref(&c10)).unwrap();
        let h = element_of_order_p(&g, 5).unwrap();
        assert_eq!(h.order(), 5);
        assert!(cyclic_subgroup(&c10.pow(2)).contains(&h));
    }

    #[test]
    fn p_part_examples() {
        let id = bsgs_build(20, &[]).unwrap();
        assert_eq!(p_part_of_order(&id, 5), BigUint::one());
    }

    #[test]
    fn semiregular_examples() {
        assert!(!is_semiregular_cp(&Perm::identity(20), 5));
        let four: Vec<Vec<usize>> = (0..4).map(|i| (5 * i..5 * i + 5).collect()).collect();
        assert!(is_semiregular_cp(&Perm::from_cycles(20, &four).unwrap(), 5));
        let one = Perm::from_cycles(20, &[vec![0, 1, 2, 3, 4]]).unwrap();
        assert!(!is_semiregular_cp(&one, 5));
    }

    #[test]
    fn centralizer_has_expected_shape() {
        let four: Vec<Vec<usize>> = (0..4).map(|i| (5 * i..5 * i + 5).collect()).collect();
        let g = Perm::from_cycles(20, &four).unwrap();
        let cent = centralizer_semiregular_cp(&g, 5).unwrap();
        assert_eq!(cent.len(), 15000);
        let set: HashSet<&Perm> = cent.iter().collect();
        assert_eq!(set.len(), 15000);
        assert!(set.contains(&Perm::identity(20)));
        for k in 1..5 {
            assert!(set.contains(&g.pow(k)));
        }
        assert!(cent.iter().step_by(97).all(|x| x.commutes_with(&g)));
        assert!(centralizer_semiregular_cp(&Perm::identity(20), 5).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(subgroup_closure(&[Perm::identity(20)], 10).unwrap().len(), 1);
        let four: Vec<Vec<usize>> = (0..4).map(|i| (5 * i..5 * i + 5).collect()).collect();
        let g = Perm::from_cycles(20, &four).unwrap();
        let x = Perm::from_cycles(
            20,
            &(0..5)
                .flat_map(|k| [vec![k, 5 + k], vec![10 + k, 15 + k]])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(g.commutes_with(&x));
        assert_eq!(subgroup_closure(&[g, x], 100).unwrap().len(), 10);
        let a = Perm::from_cycles(20, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(20, &[vec![1, 2]]).unwrap();
        assert!(subgroup_closure(&[a, b], 5).is_none());
    }

    #[test]
    fn regular_e4cp_recognition() {
        let c20 = Perm::from_cycles(20, &[(0..20).collect()]).unwrap();
        let cyclic = subgroup_closure(&[c20], 100).unwrap();
        assert!(!is_regular_e4cp(&cyclic, 5));
        let c10 = Perm::from_cycles(10, &[(0..10).collect()]).unwrap();
        assert!(!is_regular_e4cp(&subgroup_closure(&[c10], 100).unwrap(), 5));
    }

    #[test]
    fn commutes_is_symmetric() {
        let a = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![2, 3]]).unwrap();
        let c = Perm::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
        assert!(!c.commutes_with(&a));
    }
}
