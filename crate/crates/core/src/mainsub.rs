//! The Main Subroutine: a set of semiregular `Cp`-subgroups of `Aut(X)`
//! that is empty or contains a conjugate of the `p`-part of every regular
//! `E4 x Cp` subgroup.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::autsearch::{automorphism_group, is_automorphism};
use crate::coherent::{
    extension_by_quotient_cycle, extension_fixing_classes, quotient, restrict_unchecked, CoherentConfiguration,
};
use crate::cyclebase::cycle_base;
use crate::error::{input, Result};
use crate::perm::{cyclic_subgroup, element_of_order_p, is_prime, is_semiregular_cp, p_part_of_order, Perm};
use crate::structure::{is_quasitrivial, principal_equivalence, quasitrivial_semiregular_p, PrincipalEquivalence};

/// Which step of the subroutine produced a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Sylow subgroup of the extension by a quotient cycle.
    QuotientCycle,
    /// Transported cycles of a quasitrivial extension.
    Quasitrivial,
    /// Order-`p` subgroup of the product of per-fiber cycles.
    FiberProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpEntry {
    pub generator: Perm,
    pub step: Step,
}

#[derive(Clone, Debug, Default)]
pub struct BpSet {
    pub entries: Vec<BpEntry>,
    pub principal: Option<PrincipalEquivalence>,
    /// Size of the cycle base of the quotient, when that branch ran.
    pub quotient_cycle_base_size: Option<usize>,
}

impl BpSet {
    pub fn generators(&self) -> impl Iterator<Item = &Perm> {
        self.entries.iter().map(|e| &e.generator)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn push(&mut self, seen: &mut HashSet<Vec<Perm>>, generator: Perm, step: Step) {
        if seen.insert(cyclic_subgroup(&generator)) {
            self.entries.push(BpEntry { generator, step });
        }
    }
}

/// Runs the subroutine on a homogeneous configuration of degree `4p`.
pub fn main_subroutine(cc: &CoherentConfiguration, p: u64) -> Result<BpSet> {
    if !is_prime(p) || p < 5 {
        return input(format!("p = {p} must be a prime of at least 5"));
    }
    if cc.n() as u64 != 4 * p {
        return input(format!("degree {} is not 4p = {}", cc.n(), 4 * p));
    }
    if !cc.is_homogeneous() {
        return input("the Main Subroutine needs a homogeneous configuration");
    }
    let mut out = BpSet::default();
    let Some(pe) = principal_equivalence(cc, p)? else {
        return Ok(out);
    };
    let e = pe.e.clone();
    let n_e = pe.class_size();
    out.principal = Some(pe);
    let mut seen = HashSet::new();
    let accept = |g: &Perm| is_semiregular_cp(g, p) && is_automorphism(cc, g);

    if n_e <= 4 {
        let (q, _) = quotient(cc, &e)?;
        let base = cycle_base(&q)?;
        out.quotient_cycle_base_size = Some(base.len());
        for c in &base.cycles {
            let xc = extension_by_quotient_cycle(cc, &e, c)?;
            let kc = automorphism_group(&xc);
            if p_part_of_order(&kc.group, p) != BigUint::from(p) {
                continue;
            }
            if let Some(g) = element_of_order_p(&kc.group, p).filter(|g| accept(g)) {
                out.push(&mut seen, g, Step::QuotientCycle);
            }
        }
        return Ok(out);
    }

    let y = extension_fixing_classes(cc, &e)?;
    let mut fiber_cycles = Vec::new();
    for fiber in y.fibers() {
        if fiber.len() != n_e {
            return Ok(out);
        }
        let base = cycle_base(&restrict_unchecked(&y, fiber))?;
        let Some(c) = base.cycles.first() else {
            return Ok(out);
        };
        fiber_cycles.push((fiber.clone(), c.clone()));
    }

    if let Some(dec) = is_quasitrivial(&y) {
        let g = quasitrivial_semiregular_p(&dec, p)?;
        if accept(&g) {
            out.push(&mut seen, g, Step::Quasitrivial);
        }
        return Ok(out);
    }

    // Generators of order p of the per-fiber cyclic groups, lifted to Omega.
    let n = cc.n();
    let lifted: Vec<Perm> = fiber_cycles
        .iter()
        .map(|(fiber, c)| {
            let h = c.pow((fiber.len() as u64) / p);
            let mut images: Vec<usize> = (0..n).collect();
            for (i, &x) in fiber.iter().enumerate() {
                images[x] = fiber[h.apply(i)];
            }
            Perm::from_images_unchecked(images)
        })
        .collect();
    // Order-p subgroups of K' acting without fixed points: exponent vectors
    // with every entry nonzero, normalized to a leading 1.
    let k = lifted.len();
    let powers: Vec<Vec<Perm>> = lifted.iter().map(|h| (0..p).map(|a| h.pow(a)).collect()).collect();
    let combos = (p - 1).pow(k.saturating_sub(1) as u32);
    for code in 0..combos {
        let mut g = powers[0][1].clone();
        let mut rest = code;
        for pw in &powers[1..] {
            let a = 1 + rest % (p - 1);
            rest /= p - 1;
            g = g.then(&pw[a as usize]);
        }
        if accept(&g) {
            out.push(&mut seen, g, Step::FiberProduct);
        }
    }
    Ok(out)
}
