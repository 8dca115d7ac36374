//! Cohomology classes: `H^1(G,(A,mu))` and the plain pointed set `H^1(G,A)`.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::action::GroupAction;
use crate::bimodule::{make_conjugation_bimodule, Bimodule, BimoduleData, Level};
use crate::cohomology::crossed::enumerate_crossed_homs;
use crate::cohomology::der::{enumerate_der, DerPair};
use crate::error::{Error, Result};
use crate::group::{FiniteTopGroup, GroupRef};
use crate::SearchOptions;

/// A finite set of cocycles partitioned into classes.
///
/// Items are sorted, classes are ordered by their least member, and each
/// class is represented by that least member. The class of the trivial
/// cocycle (the least item overall) is class `0`, the distinguished point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSet<T: Hash + Eq> {
    pub items: Vec<T>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    index: HashMap<T, usize>,
}

/// `H^1(G,(A,mu)) = Der_c / ~'`
pub type H1Set = ClassSet<DerPair>;

/// `H^1(G,A)`: crossed homomorphisms modulo `beta(g) = a^-1 alpha(g) ^g a`.
pub type PlainH1 = ClassSet<Vec<usize>>;

impl<T: Hash + Eq + Clone + Ord> ClassSet<T> {
    /// Partitions `items` (sorted on entry) into orbits of `orbit`. Every
    /// orbit element must itself be an item.
    pub(crate) fn from_orbits(mut items: Vec<T>, orbit: impl Fn(&T) -> Vec<T>) -> Result<Self> {
        items.sort();
        let index: HashMap<T, usize> = items
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut class_of = vec![usize::MAX; items.len()];
        let mut classes = Vec::new();
        for i in 0..items.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for t in orbit(&items[i]) {
                let j = *index.get(&t).ok_or_else(|| {
                    Error::Assertion("orbit leaves the enumerated cocycles".into())
                })?;
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                } else if class_of[j] != id {
                    return Err(Error::Assertion("orbits overlap".into()));
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(ClassSet {
            items,
            class_of,
            classes,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn distinguished(&self) -> usize {
        0
    }

    pub fn representative(&self, class: usize) -> &T {
        &self.items[self.classes[class][0]]
    }

    pub fn representatives(&self) -> impl Iterator<Item = &T> {
        self.classes.iter().map(move |c| &self.items[c[0]])
    }

    pub fn index_of(&self, item: &T) -> Option<usize> {
        self.index.get(item).copied()
    }

    /// Class of a cocycle, if it was enumerated.
    pub fn class_of_item(&self, item: &T) -> Option<usize> {
        self.index_of(item).map(|i| self.class_of[i])
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = &T> {
        self.classes[class].iter().map(move |&i| &self.items[i])
    }
}

/// The orbit of `(alpha, r)` under `a ∈ A`, `z ∈ H^0(G,R)`:
/// `(a^-1 alpha(g) ^g a, mu(a)^-1 r z)`.
pub(crate) fn der_orbit(b: &BimoduleData, h0: &[usize], p: &DerPair) -> Vec<DerPair> {
    let (a_grp, r_grp) = (&b.a, &b.r);
    let mut out = Vec::with_capacity(a_grp.order() * h0.len());
    for a in a_grp.elements() {
        let alpha = twist(b.g.as_ref(), a_grp, &b.act_g_a, &p.alpha, a);
        let base = r_grp.mul(r_grp.inv(b.mu_of(a)), p.r);
        for &z in h0 {
            out.push(DerPair {
                alpha: alpha.clone(),
                r: r_grp.mul(base, z),
            });
        }
    }
    out
}

/// `g -> a^-1 alpha(g) ^g a`
pub fn twist(
    g: &FiniteTopGroup,
    a_grp: &FiniteTopGroup,
    act: &GroupAction,
    alpha: &[usize],
    a: usize,
) -> Vec<usize> {
    let a_inv = a_grp.inv(a);
    g.elements()
        .map(|x| a_grp.mul(a_grp.mul(a_inv, alpha[x]), act.act(x, a)))
        .collect()
}

/// `H^1(G,(A,mu))` over continuous pairs (all pairs when
/// `opts.continuous_only` is off).
pub fn compute_h1(b: &Bimodule, opts: &SearchOptions) -> Result<H1Set> {
    b.require(Level::PartiallyCrossed)?;
    let pairs = enumerate_der(b, opts)?;
    let h0 = b.h0_r();
    H1Set::from_orbits(pairs, |p| der_orbit(b, &h0, p))
}

/// Plain `H^1(G,A)` for a continuous action.
pub fn plain_h1(
    g: &GroupRef,
    a: &GroupRef,
    act: &GroupAction,
    opts: &SearchOptions,
) -> Result<PlainH1> {
    let homs: Vec<Vec<usize>> = enumerate_crossed_homs(g, a, act, opts)?
        .into_iter()
        .map(|h| h.alpha)
        .collect();
    PlainH1::from_orbits(homs, |alpha| {
        a.elements().map(|x| twist(g, a, act, alpha, x)).collect()
    })
}

/// `H^1(G,A)` of the coefficients of a bimodule.
pub fn plain_h1_of_a(b: &BimoduleData, opts: &SearchOptions) -> Result<PlainH1> {
    plain_h1(&b.g, &b.a, &b.act_g_a, opts)
}

/// `H^1(G,R)` of a bimodule.
pub fn plain_h1_of_r(b: &BimoduleData, opts: &SearchOptions) -> Result<PlainH1> {
    plain_h1(&b.g, &b.r, &b.act_g_r, opts)
}

/// `H^1(G,(A, pi_A))` for the conjugation bimodule over `A/Z(A)`.
pub fn bar_h1(g: GroupRef, a: GroupRef, act: GroupAction, opts: &SearchOptions) -> Result<H1Set> {
    compute_h1(&make_conjugation_bimodule(g, a, act)?, opts)
}

/// A map between two class sets, as a table of class indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMap {
    pub images: Vec<usize>,
    pub target_len: usize,
}

impl ClassMap {
    pub fn is_injective(&self) -> bool {
        self.first_collision().is_none()
    }

    pub fn first_collision(&self) -> Option<(usize, usize)> {
        let mut seen = HashMap::new();
        for (i, &y) in self.images.iter().enumerate() {
            if let Some(&j) = seen.get(&y) {
                return Some((j, i));
            }
            seen.insert(y, i);
        }
        None
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_len];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Preimage of the distinguished class `0`.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&i| self.images[i] == 0)
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im = self.images.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_constant_at_basepoint(&self) -> bool {
        self.images.iter().all(|&y| y == 0)
    }
}

/// Builds a class map from a cocycle-level map, checking it is constant on
/// classes.
pub(crate) fn class_map<S, T>(
    source: &ClassSet<S>,
    target: &ClassSet<T>,
    f: impl Fn(&S) -> Result<T>,
) -> Result<ClassMap>
where
    S: Hash + Eq + Clone + Ord + std::fmt::Debug,
    T: Hash + Eq + Clone + Ord + std::fmt::Debug,
{
    let mut images = Vec::with_capacity(source.len());
    for (c, members) in source.classes.iter().enumerate() {
        let mut image = None;
        for &i in members {
            let t = f(&source.items[i])?;
            let k = target.class_of_item(&t).ok_or_else(|| {
                Error::NotADerPair(format!(
                    "image {t:?} of {:?} is not a cocycle",
                    source.items[i]
                ))
            })?;
            match image {
                None => image = Some(k),
                Some(prev) if prev != k => {
                    return Err(Error::WellDefinednessViolated(format!(
                        "class {c}: members map to classes {prev} and {k}"
                    )))
                }
                Some(_) => {}
            }
        }
        images.push(image.expect("classes are nonempty"));
    }
    Ok(ClassMap {
        images,
        target_len: target.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::as_selfbimodule;
    use crate::cohomology::der::equivalent;
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

    /// Oracle partition by pairwise `equivalent`.
    fn pairwise_classes(b: &Bimodule, pairs: &[DerPair]) -> usize {
        let mut reps: Vec<&DerPair> = Vec::new();
        for p in pairs {
            if !reps.iter().any(|q| equivalent(q, p, b).is_some()) {
                reps.push(p);
            }
        }
        reps.len()
    }

    #[test]
    fn t1_has_two_classes() {
        let b = t1();
        let h1 = compute_h1(&b, &SearchOptions::default()).unwrap();
        assert_eq!(h1.len(), 2);
        assert_eq!(pairwise_classes(&b, &h1.items), 2);
        assert_eq!(h1.representative(0), &DerPair::trivial(2));
    }

    #[test]
    fn s3_self_module_has_one_class() {
        let b = s3_id();
        let h1 = compute_h1(&b, &SearchOptions::default()).unwrap();
        assert_eq!(h1.len(), 1);
        assert_eq!(h1.items.len(), 6);
    }

    #[test]
    fn trivial_a_gives_one_class() {
        let g = FiniteTopGroup::symmetric(3).into_ref();
        let a = FiniteTopGroup::trivial().into_ref();
        let b = Bimodule::with_trivial_r(g.clone(), a.clone(), GroupAction::trivial(g, a)).unwrap();
        assert_eq!(compute_h1(&b, &SearchOptions::default()).unwrap().len(), 1);
    }

    #[test]
    fn plain_h1_examples() {
        let c4 = FiniteTopGroup::cyclic(4).into_ref();
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let h = plain_h1(
            &c4,
            &c2,
            &GroupAction::trivial(c4.clone(), c2.clone()),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(h.len(), 2);

        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        let inv =
            GroupAction::from_fn(
                c2.clone(),
                c3.clone(),
                |g, x| if g == 0 { x } else { (3 - x) % 3 },
            )
            .unwrap();
        let h = plain_h1(&c2, &c3, &inv, &SearchOptions::default()).unwrap();
        assert_eq!(h.items.len(), 3);
        assert_eq!(h.len(), 1);

        let one = FiniteTopGroup::trivial().into_ref();
        let h = plain_h1(
            &c4,
            &one,
            &GroupAction::trivial(c4.clone(), one.clone()),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn bar_h1_matches_plain_for_abelian_coefficients() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c4 = FiniteTopGroup::cyclic(4).into_ref();
        let act =
            GroupAction::from_fn(
                c2.clone(),
                c4.clone(),
                |g, x| if g == 0 { x } else { (4 - x) % 4 },
            )
            .unwrap();
        let bar = bar_h1(
            c2.clone(),
            c4.clone(),
            act.clone(),
            &SearchOptions::default(),
        )
        .unwrap();
        let plain = plain_h1(&c2, &c4, &act, &SearchOptions::default()).unwrap();
        assert_eq!(bar.len(), plain.len());
    }

    #[test]
    fn class_map_rejects_non_constant_maps() {
        let b = t1();
        let h1 = compute_h1(&b, &SearchOptions::default()).unwrap();
        // constant map to the basepoint
        let m = class_map(&h1, &h1, |_| Ok(DerPair::trivial(2))).unwrap();
        assert!(m.is_constant_at_basepoint());
        assert_eq!(m.kernel(), vec![0, 1]);
    }
}
