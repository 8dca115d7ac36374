use crate::error::{Error, Result};
use crate::group::GroupRef;

/// A map between finite topological groups, stored as an image table.
/// Sections of extensions are maps with `is_homomorphism == false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub domain: GroupRef,
    pub codomain: GroupRef,
    images: Vec<usize>,
    is_homomorphism: bool,
}

impl GroupMap {
    /// Checks the table shape and, when `is_homomorphism` is set, that the
    /// table respects products.
    pub fn new(
        domain: GroupRef,
        codomain: GroupRef,
        images: Vec<usize>,
        is_homomorphism: bool,
    ) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::MapShape {
                got: images.len(),
                expected: domain.order(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= codomain.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: codomain.order(),
            });
        }
        let map = GroupMap {
            domain,
            codomain,
            images,
            is_homomorphism,
        };
        if is_homomorphism {
            map.check_homomorphism()?;
        }
        Ok(map)
    }

    pub fn homomorphism(domain: GroupRef, codomain: GroupRef, images: Vec<usize>) -> Result<Self> {
        Self::new(domain, codomain, images, true)
    }

    pub fn function(domain: GroupRef, codomain: GroupRef, images: Vec<usize>) -> Result<Self> {
        Self::new(domain, codomain, images, false)
    }

    pub fn identity(group: GroupRef) -> Self {
        let images = group.elements().collect();
        GroupMap {
            domain: group.clone(),
            codomain: group,
            images,
            is_homomorphism: true,
        }
    }

    /// The trivial homomorphism `1`.
    pub fn trivial(domain: GroupRef, codomain: GroupRef) -> Self {
        let images = vec![0; domain.order()];
        GroupMap {
            domain,
            codomain,
            images,
            is_homomorphism: true,
        }
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GroupMap) -> Result<GroupMap> {
        if *first.codomain != *self.domain {
            return Err(Error::MapShape {
                got: first.codomain.order(),
                expected: self.domain.order(),
            });
        }
        let images = first.images.iter().map(|&x| self.images[x]).collect();
        Ok(GroupMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            images,
            is_homomorphism: self.is_homomorphism && first.is_homomorphism,
        })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_homomorphism(&self) -> bool {
        self.is_homomorphism
    }

    fn check_homomorphism(&self) -> Result<()> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.images[0] != 0 {
            return Err(Error::NotHomomorphism { a: 0, b: 0 });
        }
        for a in d.elements() {
            for b in d.elements() {
                if self.images[d.mul(a, b)] != c.mul(self.images[a], self.images[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    /// Continuity in the coset topologies: `f(x N_dom) ⊆ f(x) N_cod` for all `x`.
    pub fn is_continuous(&self) -> bool {
        self.first_discontinuity().is_none()
    }

    pub fn first_discontinuity(&self) -> Option<usize> {
        is_continuous_table(&self.domain, &self.codomain, &self.images).err()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &y in &self.images {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.images.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.domain
            .elements()
            .filter(|&x| self.images[x] == 0)
            .collect()
    }

    /// Image of a subset, sorted.
    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut im: Vec<usize> = set.iter().map(|&x| self.images[x]).collect();
        im.sort_unstable();
        im.dedup();
        im
    }
}

/// Continuity check for a bare table `domain -> codomain`; returns the first
/// point where it fails.
pub fn is_continuous_table(
    domain: &crate::group::FiniteTopGroup,
    codomain: &crate::group::FiniteTopGroup,
    images: &[usize],
) -> std::result::Result<(), usize> {
    if codomain.is_indiscrete() || domain.is_discrete() {
        return Ok(());
    }
    for x in domain.elements() {
        let fx = images[x];
        for &n in domain.open_subgroup() {
            if !codomain.same_open_coset(fx, images[domain.mul(x, n)]) {
                return Err(x);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteTopGroup;

    #[test]
    fn identity_is_continuous() {
        for g in [
            FiniteTopGroup::cyclic(4)
                .with_open_subgroup(&[0, 2])
                .unwrap(),
            FiniteTopGroup::symmetric(3),
            FiniteTopGroup::cyclic(2).indiscrete(),
        ] {
            assert!(GroupMap::identity(g.into_ref()).is_continuous());
        }
    }

    #[test]
    fn indiscrete_to_discrete_iso_is_not_continuous() {
        let ind = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
        let dis = FiniteTopGroup::cyclic(2).into_ref();
        let f = GroupMap::homomorphism(ind, dis, vec![0, 1]).unwrap();
        assert!(!f.is_continuous());
        assert_eq!(f.first_discontinuity(), Some(0));
    }

    #[test]
    fn maps_into_indiscrete_are_continuous() {
        let dom = FiniteTopGroup::cyclic(4)
            .with_open_subgroup(&[0, 2])
            .unwrap()
            .into_ref();
        let cod = FiniteTopGroup::cyclic(3).indiscrete().into_ref();
        for images in [vec![0, 1, 2, 0], vec![2, 2, 1, 0]] {
            assert!(GroupMap::function(dom.clone(), cod.clone(), images)
                .unwrap()
                .is_continuous());
        }
    }

    #[test]
    fn rejects_non_homomorphism() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        assert!(matches!(
            GroupMap::homomorphism(c2.clone(), c2.clone(), vec![1, 0]),
            Err(Error::NotHomomorphism { .. })
        ));
        assert!(GroupMap::function(c2.clone(), c2, vec![1, 0]).is_ok());
    }

    #[test]
    fn composition_of_continuous_maps() {
        let a = FiniteTopGroup::cyclic(4)
            .with_open_subgroup(&[0, 2])
            .unwrap()
            .into_ref();
        let b = FiniteTopGroup::cyclic(2).into_ref();
        let c = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
        let f = GroupMap::homomorphism(a, b.clone(), vec![0, 1, 0, 1]).unwrap();
        let g = GroupMap::homomorphism(b, c, vec![0, 1]).unwrap();
        assert!(f.is_continuous() && g.is_continuous());
        let h = g.after(&f).unwrap();
        assert!(h.is_continuous() && h.is_homomorphism());
        assert_eq!(h.kernel(), vec![0, 2]);
    }
}
