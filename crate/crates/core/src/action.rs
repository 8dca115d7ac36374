//! Left actions of one finite topological group on another by automorphisms.

use crate::error::{Error, Result};
use crate::group::{GroupRef, Quotient, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub actor: GroupRef,
    pub space: GroupRef,
    // actor.order() x space.order(), row-major
    table: Vec<usize>,
}

/// Fixed points of an action, with the flag telling whether they form a
/// subgroup (always the case for actions by automorphisms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    pub elements: Vec<usize>,
    pub is_subgroup: bool,
}

impl GroupAction {
    /// Validates the action axioms: `e` acts trivially, `^(gh)a = ^g(^h a)`
    /// and every `^g` is an automorphism.
    pub fn new(actor: GroupRef, space: GroupRef, table: Vec<Vec<usize>>) -> Result<Self> {
        let (n, m) = (actor.order(), space.order());
        if table.len() != n || table.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidAction {
                reason: format!("table must be {n}x{m}"),
            });
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= m) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: m,
            });
        }
        let action = GroupAction {
            actor,
            space,
            table: flat,
        };
        action.check_axioms()?;
        Ok(action)
    }

    pub fn from_fn(
        actor: GroupRef,
        space: GroupRef,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let table = actor
            .elements()
            .map(|g| space.elements().map(|a| f(g, a)).collect())
            .collect();
        Self::new(actor, space, table)
    }

    pub fn trivial(actor: GroupRef, space: GroupRef) -> Self {
        let table = actor.elements().flat_map(|_| space.elements()).collect();
        GroupAction {
            actor,
            space,
            table,
        }
    }

    /// `^g h = g h g^-1`
    pub fn conjugation(group: GroupRef) -> Self {
        let table = group
            .elements()
            .flat_map(|g| group.elements().map(move |h| (g, h)))
            .map(|(g, h)| group.conj(g, h))
            .collect();
        GroupAction {
            actor: group.clone(),
            space: group,
            table,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let (g, a) = (&self.actor, &self.space);
        for x in a.elements() {
            if self.act(0, x) != x {
                return Err(Error::InvalidAction {
                    reason: format!("identity moves {x}"),
                });
            }
        }
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                for x in a.elements() {
                    if self.act(st, x) != self.act(s, self.act(t, x)) {
                        return Err(Error::InvalidAction {
                            reason: format!("^({s}*{t}) {x} != ^{s}(^{t} {x})"),
                        });
                    }
                }
            }
            let mut seen = vec![false; a.order()];
            for x in a.elements() {
                let y = self.act(s, x);
                if std::mem::replace(&mut seen[y], true) {
                    return Err(Error::InvalidAction {
                        reason: format!("^{s} is not a bijection"),
                    });
                }
                for z in a.elements() {
                    if self.act(s, a.mul(x, z)) != a.mul(y, self.act(s, z)) {
                        return Err(Error::InvalidAction {
                            reason: format!("^{s} is not a homomorphism at ({x}, {z})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn act(&self, g: usize, a: usize) -> usize {
        self.table[g * self.space.order() + a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.space.order().max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.actor
            .elements()
            .all(|g| self.space.elements().all(|a| self.act(g, a) == a))
    }

    /// Joint continuity of `G x A -> A`:
    /// `^(g n)(a m) ∈ (^g a) N_A` for all `g, a` and `n ∈ N_G, m ∈ N_A`.
    pub fn is_continuous(&self) -> bool {
        let (g, a) = (&self.actor, &self.space);
        if a.is_indiscrete() || (g.is_discrete() && a.is_discrete()) {
            return true;
        }
        for s in g.elements() {
            for x in a.elements() {
                let base = self.act(s, x);
                for &n in g.open_subgroup() {
                    let sn = g.mul(s, n);
                    for &m in a.open_subgroup() {
                        if !a.same_open_coset(base, self.act(sn, a.mul(x, m))) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn fixed_points(&self) -> FixedPoints {
        let elements: Vec<usize> = self
            .space
            .elements()
            .filter(|&x| self.actor.elements().all(|g| self.act(g, x) == x))
            .collect();
        let is_subgroup = self.space.is_subgroup(&elements);
        FixedPoints {
            elements,
            is_subgroup,
        }
    }

    /// Elements of the space fixed by every element of `subset` of the actor.
    pub fn fixed_by(&self, subset: &[usize]) -> Vec<usize> {
        self.space
            .elements()
            .filter(|&x| subset.iter().all(|&g| self.act(g, x) == x))
            .collect()
    }

    /// Restriction of the actor to a subgroup.
    pub fn restrict_actor(&self, sub: &Subgroup) -> GroupAction {
        let table = sub
            .elements
            .iter()
            .flat_map(|&g| self.space.elements().map(move |a| (g, a)))
            .map(|(g, a)| self.act(g, a))
            .collect();
        GroupAction {
            actor: sub.group.clone(),
            space: self.space.clone(),
            table,
        }
    }

    /// Restriction to an invariant subgroup of the space. Fails if the
    /// subgroup is not stable under the action.
    pub fn restrict_space(&self, sub: &Subgroup) -> Result<GroupAction> {
        let mut table = Vec::with_capacity(self.actor.order() * sub.elements.len());
        for g in self.actor.elements() {
            for &a in &sub.elements {
                let img = self.act(g, a);
                table.push(sub.index_of(img).ok_or_else(|| Error::InvalidAction {
                    reason: format!("subgroup not stable: ^{g} {a} = {img}"),
                })?);
            }
        }
        Ok(GroupAction {
            actor: self.actor.clone(),
            space: sub.group.clone(),
            table,
        })
    }

    /// Both actor and space restricted.
    pub fn restrict(&self, actor: &Subgroup, space: &Subgroup) -> Result<GroupAction> {
        self.restrict_space(space).map(|a| a.restrict_actor(actor))
    }

    /// Induced action of a quotient of the actor, `^(gN) a = ^g a`. Fails if
    /// `N` does not act trivially.
    pub fn descend_actor(&self, quotient: &Quotient) -> Result<GroupAction> {
        for coset in &quotient.cosets {
            let rep = coset[0];
            for &g in coset {
                for a in self.space.elements() {
                    if self.act(g, a) != self.act(rep, a) {
                        return Err(Error::WellDefinednessViolated(format!(
                            "^{g} {a} != ^{rep} {a} for {g}, {rep} in the same coset"
                        )));
                    }
                }
            }
        }
        let table = quotient
            .cosets
            .iter()
            .flat_map(|c| self.space.elements().map(move |a| (c[0], a)))
            .map(|(g, a)| self.act(g, a))
            .collect();
        Ok(GroupAction {
            actor: quotient.group.clone(),
            space: self.space.clone(),
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteTopGroup;

    fn inversion(actor: GroupRef, space: GroupRef) -> GroupAction {
        let s = space.clone();
        GroupAction::from_fn(actor, space, move |g, a| if g == 0 { a } else { s.inv(a) }).unwrap()
    }

    #[test]
    fn discrete_actions_are_continuous() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        assert!(inversion(c2, c3).is_continuous());
    }

    #[test]
    fn actions_on_indiscrete_spaces_are_continuous() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).indiscrete().into_ref();
        assert!(inversion(c2.clone(), c3).is_continuous());
        let c2i = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
        assert!(GroupAction::trivial(c2, c2i).is_continuous());
    }

    #[test]
    fn indiscrete_actor_flipping_discrete_space_is_discontinuous() {
        // g = e, n = flip, a = e, m = e is not the witness here; a = 1 is:
        // ^flip 1 = 2 escapes the singleton coset {1}.
        let c2 = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        assert!(!inversion(c2, c3).is_continuous());
    }

    #[test]
    fn rejects_non_actions() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        // a non-automorphism
        assert!(
            GroupAction::new(c2.clone(), c3.clone(), vec![vec![0, 1, 2], vec![0, 0, 0]]).is_err()
        );
        // identity must act trivially
        assert!(GroupAction::new(c2, c3, vec![vec![0, 2, 1], vec![0, 2, 1]]).is_err());
    }

    #[test]
    fn fixed_points_examples() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        assert_eq!(
            GroupAction::trivial(c2.clone(), c3.clone())
                .fixed_points()
                .elements,
            vec![0, 1, 2]
        );
        let fp = inversion(c2, c3).fixed_points();
        assert_eq!(fp.elements, vec![0]);
        assert!(fp.is_subgroup);
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        assert_eq!(
            GroupAction::conjugation(s3.clone()).fixed_points().elements,
            s3.center()
        );
    }
}
