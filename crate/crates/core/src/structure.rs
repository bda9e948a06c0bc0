//! Quasitrivial configurations and principal equivalence relations.

use num_bigint::BigUint;

use crate::coherent::{all_equivalences, gw_complement, tensor_complement, CoherentConfiguration, EquivRel};
use crate::error::{input, Result};
use crate::perm::{factorial, is_prime, Perm};

/// Fibers grouped into classes linked by bijective basis relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasitrivialDecomposition {
    n: usize,
    /// Point lists of the fibers, as in the configuration.
    pub fibers: Vec<Vec<usize>>,
    /// Fiber indices of each class; the first one is the representative.
    pub classes: Vec<Vec<usize>>,
    /// For every class and member, the image of each representative point
    /// (in the representative's point order) under the linking bijection.
    pub bijections: Vec<Vec<Vec<usize>>>,
}

impl QuasitrivialDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn representative(&self, class: usize) -> &[usize] {
        &self.fibers[self.classes[class][0]]
    }
}

/// The bijection in `S_{Δ,Λ}`, if `S_{Δ,Λ}` has exactly two elements and
/// one of them is a bijection; `None` for a singleton. `Err(())` when the
/// pair violates the quasitrivial criterion.
fn linking_relation(cc: &CoherentConfiguration, delta: usize, lambda: usize) -> std::result::Result<Option<u32>, ()> {
    let colors = cc.colors_between(delta, lambda);
    let size = |f: usize| cc.fibers()[f].len();
    let is_bijection = |c: u32| cc.valency(c) == 1 && size(delta) == size(lambda);
    match colors.len() {
        1 => Ok(None),
        2 => colors.iter().copied().find(|&c| is_bijection(c)).map(Some).ok_or(()),
        _ => Err(()),
    }
}

/// Decomposition of a quasitrivial configuration, or `None` if some
/// `S_{Δ,Λ}` is neither a singleton nor a pair containing a bijection.
pub fn is_quasitrivial(cc: &CoherentConfiguration) -> Option<QuasitrivialDecomposition> {
    let k = cc.fibers().len();
    let mut link: Vec<Vec<Option<u32>>> = vec![vec![None; k]; k];
    for (d, row) in link.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            let rel = linking_relation(cc, d, l).ok()?;
            if d != l {
                *slot = rel;
            }
        }
    }
    let mut class_of = vec![usize::MAX; k];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for d in 0..k {
        if class_of[d] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (d..k)
            .filter(|&l| l == d || (class_of[l] == usize::MAX && link[d][l].is_some()))
            .collect();
        for &l in &members {
            class_of[l] = classes.len();
        }
        classes.push(members);
    }
    let bijections = classes
        .iter()
        .map(|members| {
            let rep = &cc.fibers()[members[0]];
            members
                .iter()
                .map(|&l| match link[members[0]][l] {
                    None => rep.clone(),
                    Some(c) => rep
                        .iter()
                        .map(|&a| {
                            *cc.fibers()[l]
                                .iter()
                                .find(|&&b| cc.color(a, b) == c)
                                .expect("valency one")
                        })
                        .collect(),
                })
                .collect()
        })
        .collect();
    Some(QuasitrivialDecomposition {
        n: cc.n(),
        fibers: cc.fibers().to_vec(),
        classes,
        bijections,
    })
}

/// `∏ |Δ_{i1}|!` over the classes.
pub fn quasitrivial_aut_order(dec: &QuasitrivialDecomposition) -> BigUint {
    (0..dec.classes.len())
        .map(|i| factorial(dec.representative(i).len()))
        .product()
}

/// A fixed-point-free automorphism of order `p`: consecutive `p`-cycles on
/// each representative fiber, transported along the linking bijections.
pub fn quasitrivial_semiregular_p(dec: &QuasitrivialDecomposition, p: u64) -> Result<Perm> {
    let p = p as usize;
    let mut images: Vec<usize> = (0..dec.n).collect();
    for (i, members) in dec.classes.iter().enumerate() {
        let rep = dec.representative(i);
        if p < 2 || !rep.len().is_multiple_of(p) {
            return input(format!("fiber of size {} is not divisible by {p}", rep.len()));
        }
        // Position of the image of rep[k] under the consecutive cycles.
        let next = |k: usize| if (k + 1).is_multiple_of(p) { k + 1 - p } else { k + 1 };
        for (j, _) in members.iter().enumerate() {
            let f = &dec.bijections[i][j];
            for k in 0..rep.len() {
                images[f[k]] = f[next(k)];
            }
        }
    }
    Perm::from_images(images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrincipalKind {
    /// Minimal nontrivial with classes of size at least `p`.
    E1,
    /// Classes of size at most 4 with a tensor or wreath complement.
    E2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementKind {
    Tensor,
    GeneralizedWreath,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalEquivalence {
    pub e: EquivRel,
    pub kind: PrincipalKind,
    pub complement: Option<(EquivRel, ComplementKind)>,
    /// True when reading minimality among equivalences with classes of
    /// size at least `p` would choose differently.
    pub alternative_reading_differs: bool,
}

impl PrincipalEquivalence {
    pub fn class_size(&self) -> usize {
        self.e
            .class_size()
            .expect("homogeneous configurations have uniform classes")
    }
}

/// Finds a principal equivalence relation of a homogeneous configuration
/// on `4p` points, `p >= 5`.
pub fn principal_equivalence(cc: &CoherentConfiguration, p: u64) -> Result<Option<PrincipalEquivalence>> {
    if !is_prime(p) || p < 5 {
        return input(format!("p = {p} must be a prime of at least 5"));
    }
    if cc.n() as u64 != 4 * p {
        return input(format!("degree {} is not 4p = {}", cc.n(), 4 * p));
    }
    if !cc.is_homogeneous() {
        return input("principal equivalences need a homogeneous configuration");
    }
    let p = p as usize;
    let all = all_equivalences(cc)?;
    let nontrivial: Vec<&EquivRel> = all.iter().filter(|e| !e.is_identity()).collect();
    let size = |e: &EquivRel| e.class_size().unwrap_or(0);
    let minimal_among = |pool: &[&EquivRel], e: &EquivRel| !pool.iter().any(|f| *f != e && f.is_subset_of(e));
    let e1 = nontrivial
        .iter()
        .copied()
        .find(|e| size(e) >= p && minimal_among(&nontrivial, e));
    let large: Vec<&EquivRel> = nontrivial.iter().copied().filter(|e| size(e) >= p).collect();
    let alternative = large.iter().copied().find(|e| minimal_among(&large, e));
    let alternative_reading_differs = e1 != alternative;
    if let Some(e) = e1 {
        return Ok(Some(PrincipalEquivalence {
            e: e.clone(),
            kind: PrincipalKind::E1,
            complement: None,
            alternative_reading_differs,
        }));
    }
    for e in nontrivial.iter().filter(|e| (2..=4).contains(&size(e))) {
        let complement = tensor_complement(cc, e)
            .map(|f| (f, ComplementKind::Tensor))
            .or_else(|| gw_complement(cc, e).map(|f| (f, ComplementKind::GeneralizedWreath)));
        if let Some(c) = complement {
            return Ok(Some(PrincipalEquivalence {
                e: (*e).clone(),
                kind: PrincipalKind::E2,
                complement: Some(c),
                alternative_reading_differs,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autsearch::{automorphism_group, is_automorphism};
    use crate::coherent::{direct_sum, wl_closure};
    use crate::grouplib::{cayley_scheme, ConnectionSet};

    #[test]
    fn trivial_configuration_is_quasitrivial() {
        let t = CoherentConfiguration::trivial(5);
        let dec = is_quasitrivial(&t).unwrap();
        assert_eq!(dec.classes.len(), 1);
        assert_eq!(quasitrivial_aut_order(&dec), BigUint::from(120u32));
        let g = quasitrivial_semiregular_p(&dec, 5).unwrap();
        assert_eq!(g.cycle_type(), vec![5]);
        assert!(quasitrivial_semiregular_p(&dec, 3).is_err());
    }

    #[test]
    fn linked_fibers_share_one_symmetric_group() {
        // Two copies of a 5-set joined by a perfect matching.
        let matching: Vec<(usize, usize)> = (0..5).flat_map(|i| [(i, i + 5), (i + 5, i)]).collect();
        let mark: Vec<(usize, usize)> = (0..5).map(|i| (i, i)).collect();
        let cc = wl_closure(10, &[matching, mark]).unwrap();
        let dec = is_quasitrivial(&cc).unwrap();
        assert_eq!(dec.classes, vec![vec![0, 1]]);
        assert_eq!(quasitrivial_aut_order(&dec), BigUint::from(120u32));
        assert_eq!(automorphism_group(&cc).group.order(), BigUint::from(120u32));
        let g = quasitrivial_semiregular_p(&dec, 5).unwrap();
        assert!(is_automorphism(&cc, &g));
        assert_eq!(g.cycle_type(), vec![5, 5]);

        let sum = direct_sum(&CoherentConfiguration::trivial(5), &CoherentConfiguration::trivial(5));
        let dec = is_quasitrivial(&sum).unwrap();
        assert_eq!(dec.classes.len(), 2);
        assert_eq!(quasitrivial_aut_order(&dec), BigUint::from(14400u32));
    }

    #[test]
    fn principal_equivalence_examples() {
        let t = CoherentConfiguration::trivial(20);
        let pe = principal_equivalence(&t, 5).unwrap().unwrap();
        assert_eq!(pe.kind, PrincipalKind::E1);
        assert!(pe.e.is_total());
        assert!(principal_equivalence(&t, 3).is_err());
        assert!(principal_equivalence(&CoherentConfiguration::trivial(21), 5).is_err());

        let cc = cayley_scheme(5, &ConnectionSet::parse(5, "10.0,01.0,00.1,00.4").unwrap()).unwrap();
        let pe = principal_equivalence(&cc, 5).unwrap().unwrap();
        assert!(is_quasitrivial(&cc).is_none());
        match pe.kind {
            PrincipalKind::E1 => assert!(pe.class_size() >= 5),
            PrincipalKind::E2 => assert!(pe.complement.is_some() && pe.class_size() <= 4),
        }
    }
}
