//! Cycle bases: one full cycle from every `Aut(X)`-conjugacy class of full
//! cycles in `Aut(X)`.
//!
//! Small groups are enumerated. For larger ones the search walks point
//! sequences `0 = x_0, x_1, ..`: a full cycle `c` corresponds to the
//! sequence `x_i = c^i(0)`, and two full cycles are conjugate in `Aut(X)`
//! exactly when their color vectors `d ↦ color(0, x_d)` coincide. Branches
//! are pruned by orbits of the stabilizer of the prefix, so every color
//! vector is produced once.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::autsearch::{automorphism_group, is_automorphism, stabilizer};
use crate::coherent::CoherentConfiguration;
use crate::error::{input, Result};
use crate::perm::{conjugacy_orbit, orbits, Perm, EXHAUSTIVE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBase {
    pub cycles: Vec<Perm>,
}

impl CycleBase {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// The cycle `(0 1 .. n-1)`.
pub fn standard_cycle(n: usize) -> Perm {
    Perm::from_images_unchecked((0..n).map(|i| (i + 1) % n).collect())
}

/// A cycle base of a homogeneous configuration; empty iff `cc` is not
/// circulant.
pub fn cycle_base(cc: &CoherentConfiguration) -> Result<CycleBase> {
    if !cc.is_homogeneous() {
        return input("cycle bases need a homogeneous configuration");
    }
    let n = cc.n();
    if cc.rank() <= 2 {
        return Ok(CycleBase {
            cycles: vec![standard_cycle(n)],
        });
    }
    let aut = automorphism_group(cc);
    let cycles = if aut.group.order() <= BigUint::from(EXHAUSTIVE_LIMIT) {
        enumerate_classes(&aut.generators, &aut.group)
    } else {
        search_classes(cc)
    };
    Ok(CycleBase { cycles })
}

fn enumerate_classes(generators: &[Perm], group: &crate::perm::PermGroup) -> Vec<Perm> {
    let mut full: Vec<Perm> = Vec::new();
    group.for_each_element(|g| {
        if g.is_full_cycle() {
            full.push(g.clone());
        }
        true
    });
    full.sort();
    let mut covered: HashSet<Perm> = HashSet::new();
    let mut reps = Vec::new();
    for c in full {
        if covered.contains(&c) {
            continue;
        }
        covered.extend(conjugacy_orbit(&c, generators));
        reps.push(c);
    }
    reps
}

struct SequenceSearch<'a> {
    cc: &'a CoherentConfiguration,
    seq: Vec<usize>,
    used: Vec<bool>,
    /// `vector[d] = color(x_0, x_d)` for the positions fixed so far.
    vector: Vec<u32>,
    found: Vec<Perm>,
}

impl SequenceSearch<'_> {
    fn consistent(&self, x: usize) -> bool {
        let (cc, seq, n) = (self.cc, &self.seq, self.cc.n());
        let k = seq.len();
        let vk = cc.color(seq[0], x);
        let at = |d: usize| {
            if d < k {
                Some(self.vector[d])
            } else if d == k {
                Some(vk)
            } else {
                None
            }
        };
        (1..k).all(|i| Some(cc.color(seq[i], x)) == at(k - i))
            && (0..k).all(|i| match at(n - (k - i)) {
                Some(c) => cc.color(x, seq[i]) == c,
                None => true,
            })
    }

    fn run(&mut self, prune: bool) {
        let n = self.cc.n();
        let k = self.seq.len();
        if k == n {
            let mut images = vec![0; n];
            for i in 0..n {
                images[self.seq[i]] = self.seq[(i + 1) % n];
            }
            let c = Perm::from_images_unchecked(images);
            if is_automorphism(self.cc, &c) {
                self.found.push(c);
            }
            return;
        }
        let candidates: Vec<usize> = (0..n).filter(|&x| !self.used[x] && self.consistent(x)).collect();
        if candidates.is_empty() {
            return;
        }
        let (chosen, prune) = if prune {
            let stab = stabilizer(self.cc, &self.seq);
            if stab.generators.is_empty() {
                (candidates, false)
            } else {
                let orbit_of: Vec<usize> = {
                    let mut id = vec![0; n];
                    for (i, o) in orbits(n, &stab.generators).iter().enumerate() {
                        for &x in o {
                            id[x] = i;
                        }
                    }
                    id
                };
                let mut seen = HashSet::new();
                let reps = candidates.into_iter().filter(|&x| seen.insert(orbit_of[x])).collect();
                (reps, true)
            }
        } else {
            (candidates, false)
        };
        for x in chosen {
            let vk = self.cc.color(self.seq[0], x);
            self.seq.push(x);
            self.used[x] = true;
            self.vector.push(vk);
            self.run(prune);
            self.vector.pop();
            self.used[x] = false;
            self.seq.pop();
        }
    }
}

fn search_classes(cc: &CoherentConfiguration) -> Vec<Perm> {
    let n = cc.n();
    let mut used = vec![false; n];
    used[0] = true;
    let mut search = SequenceSearch {
        cc,
        seq: vec![0],
        used,
        vector: vec![cc.color(0, 0)],
        found: Vec::new(),
    };
    search.run(true);
    search.found
}
