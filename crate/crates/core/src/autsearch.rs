//! Automorphisms and isomorphisms of coherent configurations by
//! individualization and refinement.
//!
//! Vertices carry a color; a refinement round recolors every vertex by its
//! old color together with the sorted multiset of `(color(u), label(v, u))`.
//! New colors are ranks of signatures in sorted order, so partitions are
//! isomorphism-invariant and discrete partitions translate directly into
//! point bijections.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::coherent::CoherentConfiguration;
use crate::graph::Digraph;
use crate::perm::{bsgs_build, orbit_of, Perm, PermGroup};

/// Generators of `Aut(X)` together with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub generators: Vec<Perm>,
    pub group: PermGroup,
}

/// True iff `g` preserves every basis relation of `cc`.
pub fn is_automorphism(cc: &CoherentConfiguration, g: &Perm) -> bool {
    let n = cc.n();
    g.degree() == n
        && (0..n).all(|a| {
            let ga = g.apply(a);
            (0..n).all(|b| cc.color(a, b) == cc.color(ga, g.apply(b)))
        })
}

/// A complete arc-labeled digraph on which the search runs.
struct Labeled<'a> {
    n: usize,
    labels: &'a [u64],
}

/// State of one node of the first path.
struct Level {
    colors: Vec<u32>,
    cell: u32,
    point: usize,
}

struct FirstPath {
    root_trace: u64,
    levels: Vec<Level>,
    traces: Vec<u64>,
    leaf: Vec<u32>,
}

impl<'a> Labeled<'a> {
    fn initial_colors(&self) -> Vec<u32> {
        let n = self.n;
        let diag: Vec<u64> = (0..n).map(|v| self.labels[v * n + v]).collect();
        let mut distinct = diag.clone();
        distinct.sort_unstable();
        distinct.dedup();
        diag.iter().map(|d| distinct.binary_search(d).unwrap() as u32).collect()
    }

    /// Refines to the coarsest equitable partition below `colors`; returns
    /// a hash of every signature table produced on the way.
    fn refine(&self, colors: &mut Vec<u32>) -> u64 {
        let n = self.n;
        let mut trace = DefaultHasher::new();
        let mut cells = count_cells(colors);
        loop {
            let sigs: Vec<Vec<(u64, u64)>> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u64, u64)> = Vec::with_capacity(n + 1);
                    s.push((colors[v] as u64, u64::MAX));
                    let row = &self.labels[v * n..(v + 1) * n];
                    let mut rest: Vec<(u64, u64)> = (0..n).map(|u| (colors[u] as u64, row[u])).collect();
                    rest.sort_unstable();
                    s.extend(rest);
                    s
                })
                .collect();
            let mut distinct: Vec<&Vec<(u64, u64)>> = sigs.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.len().hash(&mut trace);
            for s in &distinct {
                s.hash(&mut trace);
            }
            let new: Vec<u32> = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).unwrap() as u32)
                .collect();
            let new_cells = distinct.len();
            *colors = new;
            if new_cells == cells {
                break;
            }
            cells = new_cells;
        }
        trace.finish()
    }

    fn first_path(&self, mut colors: Vec<u32>) -> FirstPath {
        let root_trace = self.refine(&mut colors);
        let mut levels = Vec::new();
        let mut traces = Vec::new();
        while let Some(cell) = target_cell(&colors) {
            let point = (0..self.n).find(|&v| colors[v] == cell).unwrap();
            let mut next = individualize(&colors, point);
            traces.push(self.refine(&mut next));
            levels.push(Level {
                colors: std::mem::replace(&mut colors, next),
                cell,
                point,
            });
        }
        FirstPath {
            root_trace,
            levels,
            traces,
            leaf: colors,
        }
    }

    /// Depth-first search below `colors` (at `level` of the first path) for
    /// a leaf accepted by `accept`.
    fn descend(
        &self,
        path: &FirstPath,
        colors: &[u32],
        level: usize,
        accept: &mut dyn FnMut(&Perm) -> bool,
    ) -> Option<Perm> {
        if level == path.levels.len() {
            let g = leaf_map(&path.leaf, colors)?;
            return accept(&g).then_some(g);
        }
        let cell = path.levels[level].cell;
        for v in (0..self.n).filter(|&v| colors[v] == cell) {
            if let Some(g) = self.try_branch(path, colors, level, v, accept) {
                return Some(g);
            }
        }
        None
    }

    fn try_branch(
        &self,
        path: &FirstPath,
        colors: &[u32],
        level: usize,
        v: usize,
        accept: &mut dyn FnMut(&Perm) -> bool,
    ) -> Option<Perm> {
        let mut next = individualize(colors, v);
        if self.refine(&mut next) != path.traces[level] {
            return None;
        }
        self.descend(path, &next, level + 1, accept)
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Smallest non-singleton cell, lowest color on ties.
fn target_cell(colors: &[u32]) -> Option<u32> {
    let mut size: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *size.entry(c).or_default() += 1;
    }
    size.into_iter()
        .filter(|&(_, s)| s > 1)
        .min_by_key(|&(c, s)| (s, c))
        .map(|(c, _)| c)
}

/// Splits `v` off its cell, placing it just after the rest of the cell,
/// and renumbers colors densely in order.
fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let raw: Vec<u64> = colors
        .iter()
        .enumerate()
        .map(|(x, &c)| 2 * c as u64 + u64::from(x == v))
        .collect();
    let mut distinct = raw.clone();
    distinct.sort_unstable();
    distinct.dedup();
    raw.iter().map(|r| distinct.binary_search(r).unwrap() as u32).collect()
}

/// Maps the vertex at position `i` of `from` to the vertex at position `i`
/// of `to`; `None` unless `to` is discrete.
fn leaf_map(from: &[u32], to: &[u32]) -> Option<Perm> {
    let n = from.len();
    let mut at = vec![usize::MAX; n];
    for (x, &c) in to.iter().enumerate() {
        let slot = at.get_mut(c as usize)?;
        if *slot != usize::MAX {
            return None;
        }
        *slot = x;
    }
    Some(Perm::from_images_unchecked(
        from.iter().map(|&c| at[c as usize]).collect(),
    ))
}

/// Full color-preserving automorphism group of `cc`.
pub fn automorphism_group(cc: &CoherentConfiguration) -> AutResult {
    stabilizer(cc, &[])
}

/// Pointwise stabilizer of `points` in `Aut(X)`.
pub fn stabilizer(cc: &CoherentConfiguration, points: &[usize]) -> AutResult {
    let n = cc.n();
    let labels: Vec<u64> = cc.colors().iter().map(|&c| c as u64).collect();
    let search = Labeled { n, labels: &labels };
    let mut initial = search.initial_colors();
    for &x in points {
        initial = individualize(&initial, x);
    }
    let path = search.first_path(initial);
    let mut generators: Vec<Perm> = Vec::new();
    // Generators found at level `l` fix the first `l` base points; walking
    // upward keeps the stabilizer of each prefix generated by those found
    // at deeper levels.
    for level in (0..path.levels.len()).rev() {
        let node = &path.levels[level];
        let mut known: Vec<Perm> = generators.clone();
        let candidates: Vec<usize> = (0..n)
            .filter(|&v| node.colors[v] == node.cell && v != node.point)
            .collect();
        for v in candidates {
            if orbit_of(node.point, &known, n).contains(&v) {
                continue;
            }
            let mut accept = |g: &Perm| is_automorphism(cc, g);
            if let Some(g) = search.try_branch(&path, &node.colors, level, v, &mut accept) {
                known.push(g.clone());
                generators.push(g);
            }
        }
    }
    let group = bsgs_build(n, &generators).expect("generators share the degree");
    AutResult { generators, group }
}

/// Isomorphism-invariant labels for the colors of `cc`, refined by
/// intersection-number profiles until stable.
pub fn invariant_color_labels(cc: &CoherentConfiguration) -> Vec<u64> {
    let n = cc.n();
    let rank = cc.rank();
    let fiber_size = |f: usize| cc.fibers()[f].len();
    let hash = |x: &dyn Fn(&mut DefaultHasher)| {
        let mut h = DefaultHasher::new();
        x(&mut h);
        h.finish()
    };
    let mut tags: Vec<u64> = (0..rank as u32)
        .map(|c| {
            let t = cc.transpose_of(c);
            let (src, dst) = cc.color_fibers(c);
            hash(&|h| {
                (
                    cc.is_diagonal(c),
                    cc.valency(c),
                    cc.color_size(c),
                    cc.valency(t),
                    t == c,
                    fiber_size(src),
                    fiber_size(dst),
                )
                    .hash(h)
            })
        })
        .collect();
    let mut representative = vec![usize::MAX; rank];
    for (idx, &c) in cc.colors().iter().enumerate() {
        if representative[c as usize] == usize::MAX {
            representative[c as usize] = idx;
        }
    }
    let mut classes = count_distinct(&tags);
    loop {
        let next: Vec<u64> = (0..rank)
            .map(|c| {
                let (a, b) = (representative[c] / n, representative[c] % n);
                let mut profile: Vec<(u64, u64)> = (0..n)
                    .map(|g| (tags[cc.color(a, g) as usize], tags[cc.color(g, b) as usize]))
                    .collect();
                profile.sort_unstable();
                let own = tags[c];
                let t = tags[cc.transpose_of(c as u32) as usize];
                hash(&|h| (own, t, &profile).hash(h))
            })
            .collect();
        let next_classes = count_distinct(&next);
        tags = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    tags
}

fn count_distinct(v: &[u64]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// A point bijection `g` with `color1(a, b) ↦ color2(g(a), g(b))` a
/// well-defined bijection of basis relations, if one exists.
pub fn color_isomorphism(cc1: &CoherentConfiguration, cc2: &CoherentConfiguration) -> Option<Perm> {
    let n = cc1.n();
    if n != cc2.n() || cc1.rank() != cc2.rank() {
        return None;
    }
    let tags1 = invariant_color_labels(cc1);
    let tags2 = invariant_color_labels(cc2);
    let (mut s1, mut s2) = (tags1.clone(), tags2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let labels1: Vec<u64> = cc1.colors().iter().map(|&c| tags1[c as usize]).collect();
    let labels2: Vec<u64> = cc2.colors().iter().map(|&c| tags2[c as usize]).collect();
    let first = Labeled { n, labels: &labels1 };
    let second = Labeled { n, labels: &labels2 };
    let path = first.first_path(first.initial_colors());
    let mut colors = second.initial_colors();
    if second.refine(&mut colors) != path.root_trace {
        return None;
    }
    let rank = cc1.rank();
    let mut accept = |g: &Perm| {
        let mut forward = vec![u32::MAX; rank];
        let mut backward = vec![u32::MAX; rank];
        for a in 0..n {
            for b in 0..n {
                let (c1, c2) = (cc1.color(a, b), cc2.color(g.apply(a), g.apply(b)));
                let (f, r) = (&mut forward[c1 as usize], &mut backward[c2 as usize]);
                if (*f != u32::MAX && *f != c2) || (*r != u32::MAX && *r != c1) {
                    return false;
                }
                *f = c2;
                *r = c1;
            }
        }
        true
    };
    second.descend(&path, &colors, 0, &mut accept)
}

/// A bijection `g` with `labels2[g(a), g(b)] = labels1[a, b]` for all pairs.
pub fn labeled_isomorphism(n: usize, labels1: &[u64], labels2: &[u64]) -> Option<Perm> {
    if labels1.len() != n * n || labels2.len() != n * n {
        return None;
    }
    let first = Labeled { n, labels: labels1 };
    let second = Labeled { n, labels: labels2 };
    let path = first.first_path(first.initial_colors());
    let mut colors = second.initial_colors();
    if second.refine(&mut colors) != path.root_trace {
        return None;
    }
    let mut accept =
        |g: &Perm| (0..n).all(|a| (0..n).all(|b| labels1[a * n + b] == labels2[g.apply(a) * n + g.apply(b)]));
    second.descend(&path, &colors, 0, &mut accept)
}

/// Cell labels of a digraph: bit 0 marks an arc, bit 1 the diagonal.
pub fn digraph_labels(g: &Digraph) -> Vec<u64> {
    let n = g.n();
    (0..n * n)
        .map(|i| u64::from(g.has_arc(i / n, i % n)) | (u64::from(i / n == i % n) << 1))
        .collect()
}

/// A vertex bijection `g` mapping the arcs of `g1` onto those of `g2`.
pub fn digraph_isomorphism(g1: &Digraph, g2: &Digraph) -> Option<Perm> {
    if g1.n() != g2.n() || g1.arc_count() != g2.arc_count() {
        return None;
    }
    labeled_isomorphism(g1.n(), &digraph_labels(g1), &digraph_labels(g2))
}
