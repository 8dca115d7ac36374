//! `Der(G,(A,mu))`: pairs `(alpha, r)` with `mu(alpha(g)) = r ^g r^-1`,
//! the star product and the equivalence relation defining `H^1`.

use std::collections::HashMap;

use serde::Serialize;

use crate::bimodule::{Bimodule, BimoduleData, Level};
use crate::cohomology::crossed::enumerate_crossed_homs;
use crate::error::{Error, Result};
use crate::group::{validate_group, FiniteTopGroup};
use crate::SearchOptions;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DerPair {
    pub alpha: Vec<usize>,
    pub r: usize,
}

impl DerPair {
    /// `(1, e)`
    pub fn trivial(g_order: usize) -> Self {
        DerPair {
            alpha: vec![0; g_order],
            r: 0,
        }
    }
}

/// The compatibility `mu(alpha(g)) = r ^g r^-1` for every `g`.
pub fn is_compatible(b: &BimoduleData, alpha: &[usize], r: usize) -> bool {
    let rr = &b.r;
    let r_inv = rr.inv(r);
    b.g.elements()
        .all(|g| b.mu_of(alpha[g]) == rr.mul(r, b.gr(g, r_inv)))
}

pub fn is_der_pair(b: &BimoduleData, p: &DerPair) -> bool {
    crate::cohomology::crossed::is_crossed_hom(&b.g, &b.a, &b.act_g_a, &p.alpha)
        && is_compatible(b, &p.alpha, p.r)
}

/// Every pair `(alpha, r)`, sorted by `(alpha, r)`. Only continuous `alpha`
/// when `opts.continuous_only`.
pub fn enumerate_der(b: &BimoduleData, opts: &SearchOptions) -> Result<Vec<DerPair>> {
    let homs = enumerate_crossed_homs(&b.g, &b.a, &b.act_g_a, opts)?;
    let mut out = Vec::new();
    for h in homs {
        for r in b.r.elements() {
            if is_compatible(b, &h.alpha, r) {
                out.push(DerPair {
                    alpha: h.alpha.clone(),
                    r,
                });
            }
        }
    }
    Ok(out)
}

/// `(alpha, r) * (beta, s) = (g -> ^r beta(g) alpha(g), r s)`.
pub fn star_product(p: &DerPair, q: &DerPair, b: &Bimodule) -> Result<DerPair> {
    b.require(Level::PartiallyCrossed)?;
    let out = star_unchecked(b, p, q);
    if !is_der_pair(b, &out) {
        return Err(Error::NotADerPair(format!("{p:?} * {q:?}")));
    }
    Ok(out)
}

pub(crate) fn star_unchecked(b: &BimoduleData, p: &DerPair, q: &DerPair) -> DerPair {
    let alpha =
        b.g.elements()
            .map(|g| b.a.mul(b.ra(p.r, q.alpha[g]), p.alpha[g]))
            .collect();
    DerPair {
        alpha,
        r: b.r.mul(p.r, q.r),
    }
}

/// `(alpha, r)^-1 = (g -> ^(r^-1)(alpha(g)^-1), r^-1)`
pub fn der_inverse(b: &BimoduleData, p: &DerPair) -> DerPair {
    let r_inv = b.r.inv(p.r);
    let alpha = p.alpha.iter().map(|&x| b.ra(r_inv, b.a.inv(x))).collect();
    DerPair { alpha, r: r_inv }
}

/// `Der_c` (or `Der`) with its star product as a validated group.
#[derive(Clone, Debug)]
pub struct DerGroup {
    pub pairs: Vec<DerPair>,
    pub group: FiniteTopGroup,
    index: HashMap<DerPair, usize>,
}

impl DerGroup {
    pub fn index_of(&self, p: &DerPair) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }
}

pub fn der_group(b: &Bimodule, opts: &SearchOptions) -> Result<DerGroup> {
    b.require(Level::PartiallyCrossed)?;
    let pairs = enumerate_der(b, opts)?;
    der_group_from(b, pairs)
}

pub(crate) fn der_group_from(b: &Bimodule, pairs: Vec<DerPair>) -> Result<DerGroup> {
    let index: HashMap<DerPair, usize> = pairs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut table = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let mut row = Vec::with_capacity(pairs.len());
        for q in &pairs {
            let pq = star_product(p, q, b)?;
            row.push(*index.get(&pq).ok_or_else(|| {
                Error::NotADerPair(format!("{pq:?} is not in the enumerated set"))
            })?);
        }
        table.push(row);
    }
    let open: Vec<usize> = vec![0];
    let group = validate_group(&table, Some(0), &open)
        .map_err(|e| Error::Assertion(format!("star product is not a group law: {e}")))?;
    Ok(DerGroup {
        pairs,
        group,
        index,
    })
}

/// A witness for `(alpha, r) ~ (beta, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub a: usize,
    pub z: usize,
}

/// The crossed-hom half of equivalence for a given `a`: `beta(g) = a^-1 alpha(g) ^g a`.
pub fn links_alpha(b: &BimoduleData, alpha: &[usize], beta: &[usize], a: usize) -> bool {
    let grp = &b.a;
    let a_inv = grp.inv(a);
    b.g.elements()
        .all(|g| beta[g] == grp.mul(grp.mul(a_inv, alpha[g]), b.ga(g, a)))
}

/// The `R` half of equivalence for a given `a`: `s = mu(a)^-1 r z` for some
/// `z ∈ H^0(G,R)`; returns that `z`.
pub fn links_r(b: &BimoduleData, r: usize, s: usize, a: usize, h0: &[usize]) -> Option<usize> {
    let rr = &b.r;
    let z = rr.mul(rr.mul(rr.inv(r), b.mu_of(a)), s);
    h0.binary_search(&z).ok().map(|_| z)
}

/// Exhaustive search over `a ∈ A` for the relation `(alpha, r) ~ (beta, s)`.
pub fn equivalent(p: &DerPair, q: &DerPair, b: &BimoduleData) -> Option<Equivalence> {
    let h0 = b.h0_r();
    b.a.elements().find_map(|a| {
        if links_alpha(b, &p.alpha, &q.alpha, a) {
            links_r(b, p.r, q.r, a, &h0).map(|z| Equivalence { a, z })
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::bimodule::as_selfbimodule;
    use crate::map::GroupMap;

    fn t1() -> Bimodule {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        Bimodule::with_trivial_r(c2.clone(), c2.clone(), GroupAction::trivial(c2.clone(), c2))
            .unwrap()
    }

    fn s3_id() -> Bimodule {
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        as_selfbimodule(
            s3.clone(),
            s3.clone(),
            GroupMap::identity(s3.clone()),
            GroupAction::conjugation(s3),
        )
        .unwrap()
    }

    /// `Inn(r)(g) = r ^g r^-1` computed directly in S3.
    fn inn(g: &FiniteTopGroup, r: usize) -> Vec<usize> {
        g.elements()
            .map(|x| g.mul(r, g.conj(x, g.inv(r))))
            .collect()
    }

    #[test]
    fn trivial_a_gives_fixed_points_of_r() {
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        let a = FiniteTopGroup::trivial().into_ref();
        let inv = GroupAction::from_fn(
            g.clone(),
            c3.clone(),
            |h, x| if h == 0 { x } else { (3 - x) % 3 },
        )
        .unwrap();
        let b = Bimodule::new(BimoduleData {
            mu: GroupMap::trivial(a.clone(), c3.clone()),
            act_g_a: GroupAction::trivial(g.clone(), a.clone()),
            act_g_r: inv.clone(),
            act_r_a: GroupAction::trivial(c3.clone(), a.clone()),
            g,
            r: c3,
            a,
        })
        .unwrap();
        let der = enumerate_der(&b, &SearchOptions::default()).unwrap();
        let rs: Vec<usize> = der.iter().map(|p| p.r).collect();
        assert_eq!(rs, inv.fixed_points().elements);
        let grp = der_group(&b, &SearchOptions::default()).unwrap();
        assert_eq!(grp.order(), 1);
    }

    #[test]
    fn s3_der_pairs_are_inner() {
        let b = s3_id();
        let der = enumerate_der(&b, &SearchOptions::default()).unwrap();
        assert_eq!(der.len(), 6);
        for p in &der {
            assert_eq!(p.alpha, inn(&b.g, p.r));
        }
    }

    #[test]
    fn t1_der_group_has_order_two() {
        let b = t1();
        let grp = der_group(&b, &SearchOptions::default()).unwrap();
        assert_eq!(grp.order(), 2);
        assert_eq!(grp.group.mul(1, 1), 0);
    }

    #[test]
    fn s3_der_group_is_s3() {
        let b = s3_id();
        let grp = der_group(&b, &SearchOptions::default()).unwrap();
        // (Inn(r), r) -> r is an isomorphism
        for (i, p) in grp.pairs.iter().enumerate() {
            for (j, q) in grp.pairs.iter().enumerate() {
                let k = grp.group.mul(i, j);
                assert_eq!(grp.pairs[k].r, b.r.mul(p.r, q.r));
            }
        }
    }

    #[test]
    fn star_identities_and_inner_products() {
        let b = s3_id();
        let der = enumerate_der(&b, &SearchOptions::default()).unwrap();
        let e = DerPair::trivial(6);
        for p in &der {
            assert_eq!(&star_product(p, &e, &b).unwrap(), p);
            assert_eq!(&star_product(&e, p, &b).unwrap(), p);
            assert_eq!(star_product(p, &der_inverse(&b, p), &b).unwrap(), e);
            for q in &der {
                let pq = star_product(p, q, &b).unwrap();
                let rs = b.r.mul(p.r, q.r);
                assert_eq!(
                    pq,
                    DerPair {
                        alpha: inn(&b.g, rs),
                        r: rs
                    }
                );
            }
        }
    }

    #[test]
    fn star_needs_partially_crossed() {
        // non-abelian A over trivial R is only precrossed
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let g = FiniteTopGroup::trivial().into_ref();
        let b =
            Bimodule::with_trivial_r(g.clone(), s3.clone(), GroupAction::trivial(g, s3)).unwrap();
        assert_eq!(b.level(), Level::Precrossed);
        let e = DerPair::trivial(1);
        assert!(matches!(
            star_product(&e, &e, &b),
            Err(Error::LevelTooLow { .. })
        ));
    }

    #[test]
    fn equivalence_examples() {
        let b = t1();
        let der = enumerate_der(&b, &SearchOptions::default()).unwrap();
        assert_eq!(der.len(), 2);
        assert_eq!(
            equivalent(&der[0], &der[0], &b),
            Some(Equivalence { a: 0, z: 0 })
        );
        assert_eq!(equivalent(&der[0], &der[1], &b), None);

        let b = s3_id();
        let der = enumerate_der(&b, &SearchOptions::default()).unwrap();
        for p in &der {
            let w = equivalent(&der[0], p, &b).expect("all pairs equivalent");
            assert!(links_alpha(&b, &der[0].alpha, &p.alpha, w.a));
            // a = r^-1 links (1, e) to (Inn(r), r)
            assert!(links_alpha(&b, &der[0].alpha, &p.alpha, b.a.inv(p.r)));
        }
    }
}
