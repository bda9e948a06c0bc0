//! Simple digraphs on `{0, .., n-1}` stored as adjacency matrices.

use std::fmt::Write;

use crate::coherent::PairSet;
use crate::error::{input, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

impl Digraph {
    pub fn new(n: usize) -> Digraph {
        Digraph {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Builds a digraph from arcs; repeated arcs are ignored.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        let mut g = Digraph::new(n);
        for &(a, b) in arcs {
            if a >= n || b >= n {
                return input(format!("arc ({a}, {b}) outside {n} vertices"));
            }
            g.add_arc(a, b);
        }
        Ok(g)
    }

    /// Inserts an arc; returns false if it was already present.
    pub fn add_arc(&mut self, a: usize, b: usize) -> bool {
        let cell = &mut self.adj[a * self.n + b];
        !std::mem::replace(cell, true)
    }

    pub fn remove_arc(&mut self, a: usize, b: usize) -> bool {
        std::mem::replace(&mut self.adj[a * self.n + b], false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    /// Arcs in row-major order.
    pub fn arcs(&self) -> PairSet {
        let n = self.n;
        self.adj
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x)
            .map(|(idx, _)| (idx / n, idx % n))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x).count()
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_arc(v, u)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().iter().all(|&(a, b)| self.has_arc(b, a))
    }

    /// The image graph with vertex `v` renamed to `perm(v)`.
    pub fn relabel(&self, perm: &Perm) -> Digraph {
        let mut g = Digraph::new(self.n);
        for (a, b) in self.arcs() {
            g.add_arc(perm.apply(a), perm.apply(b));
        }
        g
    }

    /// True iff `perm` maps arcs onto arcs.
    pub fn is_automorphism(&self, perm: &Perm) -> bool {
        perm.degree() == self.n && self.relabel(perm) == *self
    }

    /// Edge-list text: a header line `n=<n>` followed by one arc per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (a, b) in self.arcs() {
            writeln!(out, "{a} {b}").unwrap();
        }
        out
    }
}
