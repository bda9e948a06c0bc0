//! Coherent configurations stored as colored complete digraphs.
//!
//! A configuration on `n` points is an `n x n` matrix of color indices.
//! Colors are always numbered by first occurrence in a row-major scan, so
//! two configurations with the same partition of `Omega x Omega` compare
//! equal.

use std::collections::{BTreeSet, HashMap};

use crate::error::{input, Error, Result};
use crate::perm::Perm;

/// A set of ordered point pairs.
pub type PairSet = Vec<(usize, usize)>;

/// Equivalence lattices larger than this are reported as a capacity error.
pub const EQUIVALENCE_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentConfiguration {
    n: usize,
    colors: Vec<u32>,
    rank: usize,
    transpose: Vec<u32>,
    diagonal: Vec<bool>,
    fiber_of_point: Vec<usize>,
    fibers: Vec<Vec<usize>>,
    color_fibers: Vec<(usize, usize)>,
    valency: Vec<usize>,
    sizes: Vec<usize>,
}

/// Renumbers an arbitrary coloring by first occurrence in row-major order.
fn canonical_numbering<K: Copy + Eq + std::hash::Hash>(raw: &[K]) -> (Vec<u32>, usize) {
    let mut map: HashMap<K, u32> = HashMap::new();
    let out = raw
        .iter()
        .map(|k| {
            let next = map.len() as u32;
            *map.entry(*k).or_insert(next)
        })
        .collect();
    (out, map.len())
}

impl CoherentConfiguration {
    /// Wraps a coloring without checking coherence; see
    /// [`intersection_numbers_check`].
    pub fn from_coloring<K: Copy + Eq + std::hash::Hash>(n: usize, raw: &[K]) -> Result<Self> {
        if raw.len() != n * n {
            return input(format!("coloring has {} cells, expected {}", raw.len(), n * n));
        }
        let (colors, rank) = canonical_numbering(raw);
        Ok(Self::from_canonical(n, colors, rank))
    }

    fn from_canonical(n: usize, colors: Vec<u32>, rank: usize) -> Self {
        let mut first = vec![usize::MAX; rank];
        let mut sizes = vec![0; rank];
        for (idx, &c) in colors.iter().enumerate() {
            let c = c as usize;
            if first[c] == usize::MAX {
                first[c] = idx;
            }
            sizes[c] += 1;
        }
        let transpose = first.iter().map(|&idx| colors[(idx % n) * n + idx / n]).collect();
        let diagonal: Vec<bool> = first.iter().map(|&idx| idx / n == idx % n).collect();

        let mut fiber_index: HashMap<u32, usize> = HashMap::new();
        let mut fibers: Vec<Vec<usize>> = Vec::new();
        let mut fiber_of_point = vec![0; n];
        for x in 0..n {
            let c = colors[x * n + x];
            let f = *fiber_index.entry(c).or_insert_with(|| {
                fibers.push(Vec::new());
                fibers.len() - 1
            });
            fibers[f].push(x);
            fiber_of_point[x] = f;
        }
        let color_fibers = first
            .iter()
            .map(|&idx| (fiber_of_point[idx / n], fiber_of_point[idx % n]))
            .collect();
        let valency = first
            .iter()
            .enumerate()
            .map(|(c, &idx)| {
                let a = idx / n;
                (0..n).filter(|&b| colors[a * n + b] == c as u32).count()
            })
            .collect();
        CoherentConfiguration {
            n,
            colors,
            rank,
            transpose,
            diagonal,
            fiber_of_point,
            fibers,
            color_fibers,
            valency,
            sizes,
        }
    }

    /// Rank 2 (rank 1 when `n == 1`): the diagonal and its complement.
    pub fn trivial(n: usize) -> Self {
        let raw: Vec<bool> = (0..n * n).map(|i| i / n == i % n).collect();
        Self::from_coloring(n, &raw).unwrap()
    }

    /// Every pair is its own basis relation.
    pub fn complete(n: usize) -> Self {
        let raw: Vec<usize> = (0..n * n).collect();
        Self::from_coloring(n, &raw).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.colors[a * self.n + b]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn transpose_of(&self, c: u32) -> u32 {
        self.transpose[c as usize]
    }

    pub fn is_diagonal(&self, c: u32) -> bool {
        self.diagonal[c as usize]
    }

    pub fn diagonal_colors(&self) -> Vec<u32> {
        (0..self.rank as u32).filter(|&c| self.is_diagonal(c)).collect()
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn fiber_of(&self, x: usize) -> usize {
        self.fiber_of_point[x]
    }

    /// Source and target fiber indices of a color.
    pub fn color_fibers(&self, c: u32) -> (usize, usize) {
        self.color_fibers[c as usize]
    }

    pub fn valency(&self, c: u32) -> usize {
        self.valency[c as usize]
    }

    pub fn color_size(&self, c: u32) -> usize {
        self.sizes[c as usize]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.fibers.len() == 1
    }

    /// Colors contained in `Delta x Lambda` for fiber indices `delta`, `lambda`.
    pub fn colors_between(&self, delta: usize, lambda: usize) -> Vec<u32> {
        (0..self.rank as u32)
            .filter(|&c| self.color_fibers(c) == (delta, lambda))
            .collect()
    }

    pub fn pairs_of_color(&self, c: u32) -> PairSet {
        let n = self.n;
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == c)
            .map(|(idx, _)| (idx / n, idx % n))
            .collect()
    }

    /// The color-preserving image of `cc` under a relabeling of points,
    /// with colors renumbered canonically.
    pub fn relabel(&self, perm: &Perm) -> Self {
        let n = self.n;
        let mut raw = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                raw[perm.apply(a) * n + perm.apply(b)] = self.color(a, b);
            }
        }
        Self::from_coloring(n, &raw).unwrap()
    }

    /// Checks `c_rs^t = c_sr^t` using one representative pair per color.
    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        let mut first = vec![usize::MAX; self.rank];
        for (idx, &c) in self.colors.iter().enumerate() {
            if first[c as usize] == usize::MAX {
                first[c as usize] = idx;
            }
        }
        first.iter().all(|&idx| {
            let (a, b) = (idx / n, idx % n);
            let mut counts: HashMap<(u32, u32), i64> = HashMap::new();
            for g in 0..n {
                *counts.entry((self.color(a, g), self.color(g, b))).or_default() += 1;
            }
            counts
                .iter()
                .all(|(&(r, s), &k)| counts.get(&(s, r)).copied().unwrap_or(0) == k)
        })
    }
}

fn check_pairs(n: usize, seeds: &[PairSet]) -> Result<()> {
    for (i, seed) in seeds.iter().enumerate() {
        if let Some(&(a, b)) = seed.iter().find(|&&(a, b)| a >= n || b >= n) {
            return input(format!("pair ({a}, {b}) of relation {i} lies outside {n} points"));
        }
    }
    Ok(())
}

/// Iterated two-dimensional refinement starting from `initial`.
fn stabilize(n: usize, initial: Vec<u32>, mut rank: usize) -> CoherentConfiguration {
    let mut colors = initial;
    let mut sig: Vec<u64> = Vec::with_capacity(n + 1);
    loop {
        let mut table: HashMap<Vec<u64>, u32> = HashMap::with_capacity(rank * 2);
        let mut next = Vec::with_capacity(n * n);
        for a in 0..n {
            let row = &colors[a * n..(a + 1) * n];
            for b in 0..n {
                sig.clear();
                sig.push(((row[b] as u64) << 32) | colors[b * n + a] as u64);
                let start = sig.len();
                for g in 0..n {
                    sig.push(((row[g] as u64) << 32) | colors[g * n + b] as u64);
                }
                sig[start..].sort_unstable();
                let id = match table.get(&sig) {
                    Some(&id) => id,
                    None => {
                        let id = table.len() as u32;
                        table.insert(sig.clone(), id);
                        id
                    }
                };
                next.push(id);
            }
        }
        let new_rank = table.len();
        colors = next;
        if new_rank == rank {
            break;
        }
        rank = new_rank;
    }
    CoherentConfiguration::from_canonical(n, colors, rank)
}

/// Coherent closure of the seed relations.
pub fn wl_closure(n: usize, seeds: &[PairSet]) -> Result<CoherentConfiguration> {
    check_pairs(n, seeds)?;
    let mut membership: Vec<Vec<u32>> = vec![Vec::new(); n * n];
    for (i, seed) in seeds.iter().enumerate() {
        for &(a, b) in seed {
            let cell = &mut membership[a * n + b];
            if cell.last() != Some(&(i as u32)) {
                cell.push(i as u32);
            }
        }
    }
    let keys: Vec<(bool, &[u32])> = (0..n * n)
        .map(|idx| (idx / n == idx % n, membership[idx].as_slice()))
        .collect();
    let (initial, rank) = canonical_numbering(&keys);
    Ok(stabilize(n, initial, rank))
}

/// Extension of `cc` by extra relations: the coherent closure of its basis
/// relations together with `extra`.
pub fn refine(cc: &CoherentConfiguration, extra: &[PairSet]) -> Result<CoherentConfiguration> {
    let n = cc.n;
    check_pairs(n, extra)?;
    if extra.is_empty() {
        return Ok(cc.clone());
    }
    let mut membership: Vec<Vec<u32>> = vec![Vec::new(); n * n];
    for (i, rel) in extra.iter().enumerate() {
        for &(a, b) in rel {
            let cell = &mut membership[a * n + b];
            if cell.last() != Some(&(i as u32)) {
                cell.push(i as u32);
            }
        }
    }
    let keys: Vec<(u32, &[u32])> = (0..n * n)
        .map(|idx| (cc.colors[idx], membership[idx].as_slice()))
        .collect();
    let (initial, rank) = canonical_numbering(&keys);
    Ok(stabilize(n, initial, rank))
}

/// Exhaustive check of every coherent-configuration axiom.
pub fn intersection_numbers_check(cc: &CoherentConfiguration) -> bool {
    let n = cc.n;
    if cc.colors.len() != n * n || cc.colors.iter().any(|&c| c as usize >= cc.rank) {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            let c = cc.color(a, b);
            if cc.is_diagonal(c) != (a == b) {
                return false;
            }
            if cc.color(b, a) != cc.transpose_of(c) {
                return false;
            }
            if cc.color_fibers(c) != (cc.fiber_of(a), cc.fiber_of(b)) {
                return false;
            }
        }
    }
    for a in 0..n {
        let mut counts = vec![0usize; cc.rank];
        for b in 0..n {
            counts[cc.color(a, b) as usize] += 1;
        }
        for (c, &k) in counts.iter().enumerate() {
            let c = c as u32;
            let source = cc.color_fibers(c).0;
            if source == cc.fiber_of(a) && k != cc.valency(c) {
                return false;
            }
        }
    }
    let mut reference: Vec<Option<Vec<u64>>> = vec![None; cc.rank];
    let mut sig = Vec::with_capacity(n);
    for a in 0..n {
        for b in 0..n {
            sig.clear();
            sig.extend((0..n).map(|g| ((cc.color(a, g) as u64) << 32) | cc.color(g, b) as u64));
            sig.sort_unstable();
            let slot = &mut reference[cc.color(a, b) as usize];
            match slot {
                Some(r) if *r != sig => return false,
                Some(_) => {}
                None => *slot = Some(sig.clone()),
            }
        }
    }
    true
}

/// An equivalence relation that is a union of basis relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivRel {
    color_set: Vec<u32>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl EquivRel {
    /// Builds the relation from a point partition, ignoring colors.
    fn from_class_of(class_of: Vec<usize>, color_set: Vec<u32>) -> EquivRel {
        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of = class_of
            .iter()
            .enumerate()
            .map(|(x, &root)| {
                let k = *relabel.entry(root).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[k].push(x);
                k
            })
            .collect();
        EquivRel {
            color_set,
            classes,
            class_of,
        }
    }

    pub fn colors(&self) -> &[u32] {
        &self.color_set
    }

    /// Classes ordered by least point; each sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `n_E`, when all classes have the same size.
    pub fn class_size(&self) -> Option<usize> {
        let s = self.classes[0].len();
        self.classes.iter().all(|c| c.len() == s).then_some(s)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_identity(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    pub fn is_total(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn is_subset_of(&self, other: &EquivRel) -> bool {
        self.class_of
            .iter()
            .enumerate()
            .all(|(x, _)| other.class_of[x] == other.class_of[self.classes[self.class_of[x]][0]])
    }

    pub fn pairs(&self) -> PairSet {
        self.classes
            .iter()
            .flat_map(|c| c.iter().flat_map(move |&a| c.iter().map(move |&b| (a, b))))
            .collect()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Smallest equivalence relation containing the given colors, checked to be
/// a union of basis relations.
pub fn equivalence_closure(cc: &CoherentConfiguration, colors: &[u32]) -> Result<EquivRel> {
    let n = cc.n;
    let wanted: BTreeSet<u32> = colors.iter().copied().collect();
    let mut parent: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..n {
            if wanted.contains(&cc.color(a, b)) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut inside = vec![false; cc.rank];
    let mut outside = vec![false; cc.rank];
    for a in 0..n {
        for b in 0..n {
            let c = cc.color(a, b) as usize;
            if roots[a] == roots[b] {
                inside[c] = true;
            } else {
                outside[c] = true;
            }
        }
    }
    if let Some(c) = (0..cc.rank).find(|&c| inside[c] && outside[c]) {
        return Err(Error::Internal(format!(
            "equivalence closure of colors {colors:?} splits basis relation {c}"
        )));
    }
    let color_set = (0..cc.rank as u32).filter(|&c| inside[c as usize]).collect();
    Ok(EquivRel::from_class_of(roots, color_set))
}

/// Every equivalence relation in `S^∪`, ordered by sorted color set.
pub fn all_equivalences(cc: &CoherentConfiguration) -> Result<Vec<EquivRel>> {
    struct Lattice {
        found: HashMap<Vec<u32>, EquivRel>,
        order: Vec<Vec<u32>>,
    }
    impl Lattice {
        fn push(&mut self, e: EquivRel) -> Result<()> {
            if self.found.contains_key(e.colors()) {
                return Ok(());
            }
            if self.found.len() >= EQUIVALENCE_CAP {
                return Err(Error::Capacity(format!(
                    "more than {EQUIVALENCE_CAP} equivalence relations"
                )));
            }
            self.order.push(e.colors().to_vec());
            self.found.insert(e.colors().to_vec(), e);
            Ok(())
        }
    }
    let mut lattice = Lattice {
        found: HashMap::new(),
        order: Vec::new(),
    };
    lattice.push(equivalence_closure(cc, &[])?)?;
    for c in 0..cc.rank as u32 {
        lattice.push(equivalence_closure(cc, &[c])?)?;
    }
    let mut i = 0;
    while i < lattice.order.len() {
        for j in 0..i {
            let mut joined: Vec<u32> = lattice.order[i].clone();
            joined.extend_from_slice(&lattice.order[j]);
            joined.sort_unstable();
            joined.dedup();
            if lattice.found.contains_key(&joined) {
                continue;
            }
            lattice.push(equivalence_closure(cc, &joined)?)?;
        }
        i += 1;
    }
    let mut out: Vec<EquivRel> = lattice.found.into_values().collect();
    out.sort_by(|a, b| a.color_set.cmp(&b.color_set));
    Ok(out)
}

/// Restriction to `delta` without validating the domain.
pub(crate) fn restrict_unchecked(cc: &CoherentConfiguration, delta: &[usize]) -> CoherentConfiguration {
    let m = delta.len();
    let raw: Vec<u32> = (0..m * m).map(|idx| cc.color(delta[idx / m], delta[idx % m])).collect();
    CoherentConfiguration::from_coloring(m, &raw).unwrap()
}

/// Restriction to a union of fibers or to a class of some `E` in `E(X)`.
/// Points of the result follow the sorted order of `delta`.
pub fn restriction(cc: &CoherentConfiguration, delta: &[usize]) -> Result<CoherentConfiguration> {
    let mut sorted: Vec<usize> = delta.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != delta.len() || sorted.iter().any(|&x| x >= cc.n) || sorted.is_empty() {
        return input("restriction domain must be a nonempty set of points");
    }
    let mut member = vec![false; cc.n];
    for &x in &sorted {
        member[x] = true;
    }
    let union_of_fibers = cc
        .fibers
        .iter()
        .all(|f| f.iter().all(|&x| member[x]) || f.iter().all(|&x| !member[x]));
    let valid = union_of_fibers || all_equivalences(cc)?.iter().any(|e| e.classes().contains(&sorted));
    if !valid {
        return input(format!(
            "{sorted:?} is neither a union of fibers nor a class of an equivalence"
        ));
    }
    Ok(restrict_unchecked(cc, &sorted))
}

/// Quotient modulo `E`; also returns the class index of every point.
pub fn quotient(cc: &CoherentConfiguration, e: &EquivRel) -> Result<(CoherentConfiguration, Vec<usize>)> {
    if !cc.is_homogeneous() {
        return input("quotient requires a homogeneous configuration");
    }
    let k = e.class_count();
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k * k];
    for a in 0..cc.n {
        for b in 0..cc.n {
            blocks[e.class_of(a) * k + e.class_of(b)].push(cc.color(a, b));
        }
    }
    for block in blocks.iter_mut() {
        block.sort_unstable();
        block.dedup();
    }
    let mut block_of_color: Vec<Option<usize>> = vec![None; cc.rank];
    for (idx, block) in blocks.iter().enumerate() {
        for &c in block {
            match block_of_color[c as usize] {
                None => block_of_color[c as usize] = Some(idx),
                Some(first) if blocks[first] != *block => {
                    return Err(Error::Internal(format!(
                        "relation {c} has overlapping but distinct quotient images"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let keys: Vec<&[u32]> = blocks.iter().map(Vec::as_slice).collect();
    let q = CoherentConfiguration::from_coloring(k, &keys)?;
    let class_of = (0..cc.n).map(|x| e.class_of(x)).collect();
    Ok((q, class_of))
}

/// `X_E`: the extension fixing every class of `E`.
pub fn extension_fixing_classes(cc: &CoherentConfiguration, e: &EquivRel) -> Result<CoherentConfiguration> {
    let extra: Vec<PairSet> = e
        .classes()
        .iter()
        .map(|c| c.iter().map(|&x| (x, x)).collect())
        .collect();
    refine(cc, &extra)
}

/// The relation `s(E, c)`: all of `Delta x c(Delta)` over the classes.
pub fn quotient_cycle_relation(e: &EquivRel, c: &Perm) -> Result<PairSet> {
    if c.degree() != e.class_count() {
        return input(format!(
            "permutation of degree {} does not act on {} classes",
            c.degree(),
            e.class_count()
        ));
    }
    let mut s = PairSet::new();
    for (i, delta) in e.classes().iter().enumerate() {
        let target = &e.classes()[c.apply(i)];
        for &a in delta {
            for &b in target {
                s.push((a, b));
            }
        }
    }
    Ok(s)
}

/// `X_c`: the extension by `s(E, c)`.
pub fn extension_by_quotient_cycle(
    cc: &CoherentConfiguration,
    e: &EquivRel,
    c: &Perm,
) -> Result<CoherentConfiguration> {
    let s = quotient_cycle_relation(e, c)?;
    refine(cc, &[s])
}

/// Direct sum on the disjoint union; points of `b` follow those of `a`.
pub fn direct_sum(a: &CoherentConfiguration, b: &CoherentConfiguration) -> CoherentConfiguration {
    let n = a.n + b.n;
    let ra = a.rank as u64;
    let rb = b.rank as u64;
    let fa = a.fibers.len() as u64;
    let fb = b.fibers.len() as u64;
    let mut raw = vec![0u64; n * n];
    for x in 0..n {
        for y in 0..n {
            raw[x * n + y] = match (x < a.n, y < a.n) {
                (true, true) => a.color(x, y) as u64,
                (false, false) => ra + b.color(x - a.n, y - a.n) as u64,
                (true, false) => ra + rb + a.fiber_of(x) as u64 * fb + b.fiber_of(y - a.n) as u64,
                (false, true) => ra + rb + fa * fb + b.fiber_of(x - a.n) as u64 * fa + a.fiber_of(y) as u64,
            };
        }
    }
    CoherentConfiguration::from_coloring(n, &raw).unwrap()
}

/// Tensor product; point `(x, y)` has index `x * b.n() + y`.
pub fn tensor_product(a: &CoherentConfiguration, b: &CoherentConfiguration) -> CoherentConfiguration {
    let n = a.n * b.n;
    let mut raw = vec![0u64; n * n];
    for x in 0..n {
        for y in 0..n {
            let (x1, x2) = (x / b.n, x % b.n);
            let (y1, y2) = (y / b.n, y % b.n);
            raw[x * n + y] = a.color(x1, y1) as u64 * b.rank as u64 + b.color(x2, y2) as u64;
        }
    }
    CoherentConfiguration::from_coloring(n, &raw).unwrap()
}

/// Standard wreath product of homogeneous configurations: `outer.n()`
/// blocks, each a copy of `inner`. Point `(block, x)` has index
/// `block * inner.n() + x`.
pub fn wreath_product(inner: &CoherentConfiguration, outer: &CoherentConfiguration) -> CoherentConfiguration {
    let m = inner.n;
    let n = m * outer.n;
    let mut raw = vec![0u64; n * n];
    for x in 0..n {
        for y in 0..n {
            let (bx, by) = (x / m, y / m);
            raw[x * n + y] = if bx == by {
                inner.color(x % m, y % m) as u64
            } else {
                inner.rank as u64 + outer.color(bx, by) as u64
            };
        }
    }
    CoherentConfiguration::from_coloring(n, &raw).unwrap()
}

/// True iff `E ⊆ F` and every basis relation outside `F` is a union of
/// blocks `Delta x Lambda` of `E`-classes.
pub fn is_generalized_wreath(cc: &CoherentConfiguration, e: &EquivRel, f: &EquivRel) -> bool {
    if !cc.is_homogeneous() || !e.is_subset_of(f) {
        return false;
    }
    let k = e.class_count();
    let mut block_color: Vec<Option<u32>> = vec![None; k * k];
    for a in 0..cc.n {
        for b in 0..cc.n {
            if f.contains(a, b) {
                continue;
            }
            let slot = &mut block_color[e.class_of(a) * k + e.class_of(b)];
            match *slot {
                None => *slot = Some(cc.color(a, b)),
                Some(c) if c != cc.color(a, b) => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// Whether the `F/E`-wreath decomposition is a trivial one.
pub fn is_trivial_wreath(e: &EquivRel, f: &EquivRel) -> bool {
    e.is_identity() || f.is_total()
}

/// Checks that `x ↦ (class_E(x), class_F(x))` is a bijection under which
/// the colors of `cc` are exactly the pairs of quotient colors.
pub fn is_tensor_decomposition(cc: &CoherentConfiguration, e: &EquivRel, f: &EquivRel) -> bool {
    let n = cc.n;
    if e.class_count() * f.class_count() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for x in 0..n {
        let slot = e.class_of(x) * f.class_count() + f.class_of(x);
        if hit[slot] {
            return false;
        }
        hit[slot] = true;
    }
    let (Ok((qe, _)), Ok((qf, _))) = (quotient(cc, e), quotient(cc, f)) else {
        return false;
    };
    let mut forward: HashMap<u32, (u32, u32)> = HashMap::new();
    let mut backward: HashMap<(u32, u32), u32> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let key = (
                qe.color(e.class_of(a), e.class_of(b)),
                qf.color(f.class_of(a), f.class_of(b)),
            );
            let c = cc.color(a, b);
            if *forward.entry(c).or_insert(key) != key || *backward.entry(key).or_insert(c) != c {
                return false;
            }
        }
    }
    true
}

/// First `F` in canonical order making `cc` the tensor product of its
/// quotients modulo `E` and `F`.
pub fn tensor_complement(cc: &CoherentConfiguration, e: &EquivRel) -> Option<EquivRel> {
    if !cc.is_homogeneous() {
        return None;
    }
    let all = all_equivalences(cc).ok()?;
    all.into_iter().find(|f| is_tensor_decomposition(cc, e, f))
}

/// First nontrivial `F ⊇ E` making `cc` the `F/E`-wreath product.
pub fn gw_complement(cc: &CoherentConfiguration, e: &EquivRel) -> Option<EquivRel> {
    if !cc.is_homogeneous() || e.is_identity() {
        return None;
    }
    let all = all_equivalences(cc).ok()?;
    all.into_iter()
        .find(|f| !f.is_total() && e.is_subset_of(f) && is_generalized_wreath(cc, e, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_arcs(n: usize) -> PairSet {
        (0..n).flat_map(|i| [(i, (i + 1) % n), ((i + 1) % n, i)]).collect()
    }

    #[test]
    fn trivial_closures() {
        let cc = wl_closure(4, &[]).unwrap();
        assert_eq!(cc.rank(), 2);
        assert_eq!(cc, CoherentConfiguration::trivial(4));
        let all: PairSet = (0..3)
            .flat_map(|a| (0..3).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        assert_eq!(wl_closure(3, &[all]).unwrap().rank(), 2);
        assert!(matches!(wl_closure(3, &[vec![(0, 3)]]), Err(Error::Input(_))));
    }

    #[test]
    fn refine_idempotent_and_fiber_forcing() {
        let cc = wl_closure(6, &[cycle_arcs(6)]).unwrap();
        assert_eq!(refine(&cc, &[]).unwrap(), cc);
        assert_eq!(refine(&cc, &[cc.pairs_of_color(1)]).unwrap(), cc);
        let t = CoherentConfiguration::trivial(5);
        let r = refine(&t, &[vec![(0, 0), (1, 1)]]).unwrap();
        assert_eq!(r.fibers(), &[vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn validator_rejects_bad_colorings() {
        // (0,1) and (1,0) differ in color from every other pair but the
        // transpose of color 1 is not consistent.
        let n = 3;
        let mut raw = vec![2u32; 9];
        for x in 0..n {
            raw[x * n + x] = 0;
        }
        raw[1] = 1;
        let cc = CoherentConfiguration::from_coloring(n, &raw).unwrap();
        assert!(!intersection_numbers_check(&cc));

        // Adjacency of a 4-cycle plus diagonal, unrefined: the non-edge
        // color mixes antipodal pairs with nothing else but c_rs^t varies.
        let n = 4;
        let arcs = cycle_arcs(4);
        let mut raw = vec![2u32; 16];
        for &(a, b) in &arcs {
            raw[a * n + b] = 1;
        }
        for x in 0..n {
            raw[x * n + x] = 0;
        }
        let cc = CoherentConfiguration::from_coloring(n, &raw).unwrap();
        assert!(intersection_numbers_check(&cc));
        let mut raw5 = vec![2u32; 25];
        for &(a, b) in &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (0, 3)] {
            raw5[a * 5 + b] = 1;
        }
        for x in 0..5 {
            raw5[x * 5 + x] = 0;
        }
        let cc5 = CoherentConfiguration::from_coloring(5, &raw5).unwrap();
        assert!(!intersection_numbers_check(&cc5));
    }

    #[test]
    fn equivalences_of_small_configurations() {
        let t = CoherentConfiguration::trivial(6);
        let e = all_equivalences(&t).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e[0].is_identity());
        assert!(e[1].is_total());

        let prod = tensor_product(&CoherentConfiguration::trivial(4), &CoherentConfiguration::trivial(5));
        assert_eq!(prod.rank(), 4);
        let e = all_equivalences(&prod).unwrap();
        assert_eq!(e.len(), 4);
        let mut sizes: Vec<usize> = e.iter().map(|x| x.class_size().unwrap()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 4, 5, 20]);
    }

    #[test]
    fn sums_and_products() {
        let t2 = CoherentConfiguration::trivial(2);
        let s = direct_sum(&t2, &t2);
        assert_eq!(s.n(), 4);
        assert_eq!(s.fibers().len(), 2);
        assert_eq!(s.rank(), 6);
        assert!(intersection_numbers_check(&s));
        let s1 = direct_sum(&t2, &CoherentConfiguration::trivial(1));
        assert_eq!(s1.fibers().len(), 2);
        assert_eq!(s1.fibers()[1], vec![2]);

        let one = CoherentConfiguration::trivial(1);
        let t5 = CoherentConfiguration::trivial(5);
        assert_eq!(tensor_product(&one, &t5), t5);
        assert_eq!(tensor_product(&t5, &one), t5);
    }

    #[test]
    fn restriction_and_quotient_trivial_cases() {
        let a = CoherentConfiguration::trivial(3);
        let b = wl_closure(4, &[cycle_arcs(4)]).unwrap();
        let s = direct_sum(&a, &b);
        assert_eq!(restriction(&s, &[3, 4, 5, 6]).unwrap(), b);
        assert_eq!(restriction(&s, &[0, 1, 2]).unwrap(), a);
        assert_eq!(restriction(&s, &(0..7).collect::<Vec<_>>()).unwrap(), s);
        assert!(restriction(&s, &[0, 3]).is_err());

        let e = all_equivalences(&b).unwrap();
        let id = e.iter().find(|x| x.is_identity()).unwrap();
        let total = e.iter().find(|x| x.is_total()).unwrap();
        assert_eq!(quotient(&b, id).unwrap().0, b);
        let (q, _) = quotient(&b, total).unwrap();
        assert_eq!((q.n(), q.rank()), (1, 1));
        assert!(quotient(&s, id).is_err());
    }

    #[test]
    fn wreath_and_tensor_detection() {
        let t4 = CoherentConfiguration::trivial(4);
        let t5 = CoherentConfiguration::trivial(5);
        let w = wreath_product(&t5, &t4);
        let eqs = all_equivalences(&w).unwrap();
        let inner = eqs.iter().find(|e| e.class_size() == Some(5)).unwrap();
        assert!(is_generalized_wreath(&w, inner, inner));
        assert_eq!(gw_complement(&w, inner).as_ref(), Some(inner));
        assert!(tensor_complement(&w, inner).is_none());

        let t = tensor_product(&t4, &t5);
        let eqs = all_equivalences(&t).unwrap();
        let first = eqs.iter().find(|e| e.class_size() == Some(5)).unwrap();
        let second = eqs.iter().find(|e| e.class_size() == Some(4)).unwrap();
        assert!(!is_generalized_wreath(&t, first, first));
        assert_eq!(tensor_complement(&t, first).as_ref(), Some(second));
        let id = eqs.iter().find(|e| e.is_identity()).unwrap();
        assert!(is_generalized_wreath(&t, id, first));
        assert!(is_trivial_wreath(id, first));
        assert!(gw_complement(&CoherentConfiguration::complete(4), id).is_none());
    }

    #[test]
    fn extensions() {
        let cc = wl_closure(6, &[cycle_arcs(6)]).unwrap();
        let eqs = all_equivalences(&cc).unwrap();
        let total = eqs.iter().find(|e| e.is_total()).unwrap();
        assert_eq!(extension_fixing_classes(&cc, total).unwrap(), cc);
        let id = eqs.iter().find(|e| e.is_identity()).unwrap();
        assert_eq!(extension_fixing_classes(&cc, id).unwrap().rank(), 36);
        let c = Perm::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let s = quotient_cycle_relation(id, &c).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|&(a, b)| b == c.apply(a)));
        assert!(extension_by_quotient_cycle(&cc, id, &Perm::identity(5)).is_err());
    }
}
