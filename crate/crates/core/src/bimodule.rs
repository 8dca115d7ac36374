//! Precrossed, partially crossed and crossed topological `G-R`-bimodules.
//!
//! A bimodule bundles three groups `G`, `R`, `A`, a continuous homomorphism
//! `mu: A -> R` and three continuous actions (`G` on `A`, `G` on `R`, `R` on
//! `A`). `R` always acts on itself by conjugation. The mixed word
//! `^(g r g^-1) a` is read as the composite `^g(^r(^(g^-1) a))`.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::{FiniteTopGroup, GroupRef, Quotient, Subgroup};
use crate::map::GroupMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    Precrossed,
    PartiallyCrossed,
    Crossed,
}

/// The raw data of a bimodule, before classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleData {
    pub g: GroupRef,
    pub r: GroupRef,
    pub a: GroupRef,
    pub mu: GroupMap,
    pub act_g_a: GroupAction,
    pub act_g_r: GroupAction,
    pub act_r_a: GroupAction,
}

/// One violated bimodule condition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// An action or `mu` is attached to the wrong groups.
    Shape {
        what: String,
    },
    MuNotHomomorphism,
    MuNotContinuous {
        at: usize,
    },
    ActionNotContinuous {
        action: &'static str,
    },
    /// `mu(^r a) != r mu(a) r^-1`
    PeifferEquivariance {
        r: usize,
        a: usize,
    },
    /// `mu(^g a) != ^g mu(a)`
    GEquivariance {
        g: usize,
        a: usize,
    },
    /// `^(^g r) a != ^g(^r(^(g^-1) a))`
    MixedAction {
        g: usize,
        r: usize,
        a: usize,
    },
    /// `^(mu(a)) b != a b a^-1` with `mu(a) ∈ [R,R]`
    PartialCrossedLaw {
        a: usize,
        b: usize,
    },
    /// `^(mu(a)) b != a b a^-1`
    CrossedLaw {
        a: usize,
        b: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { what } => write!(f, "shape mismatch: {what}"),
            Violation::MuNotHomomorphism => write!(f, "mu is not a homomorphism"),
            Violation::MuNotContinuous { at } => write!(f, "mu is not continuous at {at}"),
            Violation::ActionNotContinuous { action } => {
                write!(f, "action {action} is not continuous")
            }
            Violation::PeifferEquivariance { r, a } => {
                write!(f, "mu(^r a) != ^r mu(a) at r={r}, a={a}")
            }
            Violation::GEquivariance { g, a } => write!(f, "mu(^g a) != ^g mu(a) at g={g}, a={a}"),
            Violation::MixedAction { g, r, a } => {
                write!(f, "^(^g r) a != ^g ^r ^(g^-1) a at g={g}, r={r}, a={a}")
            }
            Violation::PartialCrossedLaw { a, b } => {
                write!(f, "partial crossed law fails at a={a}, b={b}")
            }
            Violation::CrossedLaw { a, b } => write!(f, "crossed law fails at a={a}, b={b}"),
        }
    }
}

/// Outcome of [`classify_bimodule`]: the strongest level that holds, and the
/// violations of the levels above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub level: Level,
    pub violations: Vec<Violation>,
}

impl BimoduleData {
    #[inline]
    pub fn ga(&self, g: usize, a: usize) -> usize {
        self.act_g_a.act(g, a)
    }

    #[inline]
    pub fn gr(&self, g: usize, r: usize) -> usize {
        self.act_g_r.act(g, r)
    }

    #[inline]
    pub fn ra(&self, r: usize, a: usize) -> usize {
        self.act_r_a.act(r, a)
    }

    #[inline]
    pub fn mu_of(&self, a: usize) -> usize {
        self.mu.apply(a)
    }

    /// `H^0(G,R)`
    pub fn h0_r(&self) -> Vec<usize> {
        self.act_g_r.fixed_points().elements
    }

    /// `H^0(G,A)`
    pub fn h0_a(&self) -> Vec<usize> {
        self.act_g_a.fixed_points().elements
    }

    fn shape_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(Violation::Shape {
                    what: what.to_string(),
                });
            }
        };
        check(
            *self.mu.domain == *self.a && *self.mu.codomain == *self.r,
            "mu must map A to R",
        );
        check(
            *self.act_g_a.actor == *self.g && *self.act_g_a.space == *self.a,
            "G must act on A",
        );
        check(
            *self.act_g_r.actor == *self.g && *self.act_g_r.space == *self.r,
            "G must act on R",
        );
        check(
            *self.act_r_a.actor == *self.r && *self.act_r_a.space == *self.a,
            "R must act on A",
        );
        out
    }
}

/// Conditions of a precrossed `G-R`-bimodule: continuity of `mu` and of the
/// three actions, `R`- and `G`-equivariance of `mu`, and the mixed action law.
pub fn precrossed_violations(d: &BimoduleData) -> Vec<Violation> {
    let mut out = d.shape_violations();
    if !out.is_empty() {
        return out;
    }
    let (g, r, a) = (&d.g, &d.r, &d.a);
    if !d.mu.is_homomorphism() {
        out.push(Violation::MuNotHomomorphism);
    }
    if let Some(at) = d.mu.first_discontinuity() {
        out.push(Violation::MuNotContinuous { at });
    }
    for (action, name) in [
        (&d.act_g_a, "G on A"),
        (&d.act_g_r, "G on R"),
        (&d.act_r_a, "R on A"),
    ] {
        if !action.is_continuous() {
            out.push(Violation::ActionNotContinuous { action: name });
        }
    }
    for s in r.elements() {
        for x in a.elements() {
            if d.mu_of(d.ra(s, x)) != r.conj(s, d.mu_of(x)) {
                out.push(Violation::PeifferEquivariance { r: s, a: x });
            }
        }
    }
    for h in g.elements() {
        for x in a.elements() {
            if d.mu_of(d.ga(h, x)) != d.gr(h, d.mu_of(x)) {
                out.push(Violation::GEquivariance { g: h, a: x });
            }
        }
    }
    for h in g.elements() {
        let h_inv = g.inv(h);
        for s in r.elements() {
            let twisted = d.gr(h, s);
            for x in a.elements() {
                if d.ra(twisted, x) != d.ga(h, d.ra(s, d.ga(h_inv, x))) {
                    out.push(Violation::MixedAction { g: h, r: s, a: x });
                }
            }
        }
    }
    out
}

/// The crossed law restricted to `a` with `mu(a) ∈ [R,R]`.
pub fn partially_crossed_violations(d: &BimoduleData) -> Vec<Violation> {
    let comm = d.r.commutator_subgroup();
    let a = &d.a;
    let mut out = Vec::new();
    for x in a
        .elements()
        .filter(|&x| comm.binary_search(&d.mu_of(x)).is_ok())
    {
        for y in a.elements() {
            if d.ra(d.mu_of(x), y) != a.conj(x, y) {
                out.push(Violation::PartialCrossedLaw { a: x, b: y });
            }
        }
    }
    out
}

/// The crossed law `^(mu(a)) b = a b a^-1` for all `a, b`.
pub fn crossed_violations(d: &BimoduleData) -> Vec<Violation> {
    let a = &d.a;
    let mut out = Vec::new();
    for x in a.elements() {
        for y in a.elements() {
            if d.ra(d.mu_of(x), y) != a.conj(x, y) {
                out.push(Violation::CrossedLaw { a: x, b: y });
            }
        }
    }
    out
}

pub fn classify_bimodule(d: &BimoduleData) -> Result<Classification> {
    let pre = precrossed_violations(d);
    if !pre.is_empty() {
        return Err(Error::NotPrecrossed(pre));
    }
    let partial = partially_crossed_violations(d);
    let crossed = crossed_violations(d);
    let level = if crossed.is_empty() {
        Level::Crossed
    } else if partial.is_empty() {
        Level::PartiallyCrossed
    } else {
        Level::Precrossed
    };
    let mut violations = partial;
    violations.extend(crossed);
    Ok(Classification { level, violations })
}

/// A classified bimodule. Dereferences to its [`BimoduleData`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    data: BimoduleData,
    level: Level,
}

impl Deref for Bimodule {
    type Target = BimoduleData;
    fn deref(&self) -> &BimoduleData {
        &self.data
    }
}

impl Bimodule {
    pub fn new(data: BimoduleData) -> Result<Self> {
        let level = classify_bimodule(&data)?.level;
        Ok(Bimodule { data, level })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn data(&self) -> &BimoduleData {
        &self.data
    }

    pub fn require(&self, required: Level) -> Result<()> {
        if self.level < required {
            return Err(Error::LevelTooLow {
                required,
                actual: self.level,
            });
        }
        Ok(())
    }

    /// `(A, 1)` over the trivial group `R = 1`.
    pub fn with_trivial_r(g: GroupRef, a: GroupRef, act_g_a: GroupAction) -> Result<Self> {
        let r = FiniteTopGroup::trivial().into_ref();
        Bimodule::new(BimoduleData {
            mu: GroupMap::trivial(a.clone(), r.clone()),
            act_g_r: GroupAction::trivial(g.clone(), r.clone()),
            act_r_a: GroupAction::trivial(r.clone(), a.clone()),
            g,
            r,
            a,
            act_g_a,
        })
    }
}

/// The crossed `G - A/Z(A)` bimodule `(A, pi_A)`: `R = A/Z(A)` acts on `A`
/// by lifted conjugation and `G` acts on `R` by `^g(aZ) = (^g a)Z`.
pub fn make_conjugation_bimodule(
    g: GroupRef,
    a: GroupRef,
    act_g_a: GroupAction,
) -> Result<Bimodule> {
    let quotient = a.quotient_by(&a.center())?;
    let r = quotient.group.clone();
    let mu = GroupMap::homomorphism(a.clone(), r.clone(), quotient.coset_of.clone())?;
    let act_r_a = GroupAction::from_fn(r.clone(), a.clone(), |coset, b| {
        a.conj(quotient.representative(coset), b)
    })?;
    let act_g_r = GroupAction::from_fn(g.clone(), r.clone(), |h, coset| {
        quotient.coset_of[act_g_a.act(h, quotient.representative(coset))]
    })?;
    Bimodule::new(BimoduleData {
        g,
        r,
        a,
        mu,
        act_g_a,
        act_g_r,
        act_r_a,
    })
}

/// A (partially) crossed `R`-module viewed as an `R-R`-bimodule: `G = R`
/// acting on `A` as `R` does and on itself by conjugation.
pub fn as_selfbimodule(
    a: GroupRef,
    r: GroupRef,
    mu: GroupMap,
    act_r_a: GroupAction,
) -> Result<Bimodule> {
    Bimodule::new(BimoduleData {
        g: r.clone(),
        act_g_a: act_r_a.clone(),
        act_g_r: GroupAction::conjugation(r.clone()),
        r,
        a,
        mu,
        act_r_a,
    })
}

/// A bimodule restricted to a subgroup `N` of `G`.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub bimodule: Bimodule,
    pub subgroup: Subgroup,
}

pub fn restrict_bimodule(b: &Bimodule, n: &[usize]) -> Result<Restricted> {
    let subgroup = b.g.subgroup(n)?;
    let data = BimoduleData {
        g: subgroup.group.clone(),
        r: b.r.clone(),
        a: b.a.clone(),
        mu: b.mu.clone(),
        act_g_a: b.act_g_a.restrict_actor(&subgroup),
        act_g_r: b.act_g_r.restrict_actor(&subgroup),
        act_r_a: b.act_r_a.clone(),
    };
    Ok(Restricted {
        bimodule: Bimodule::new(data)?,
        subgroup,
    })
}

/// `(A^N, mu^N)` over `G/N - R^N`, with the pieces needed to map back.
#[derive(Clone, Debug)]
pub struct Fixed {
    pub bimodule: Bimodule,
    pub quotient: Quotient,
    pub a_fixed: Subgroup,
    pub r_fixed: Subgroup,
}

pub fn fixed_bimodule(b: &Bimodule, n: &[usize]) -> Result<Fixed> {
    let quotient = b.g.quotient_by(n)?;
    let a_fixed = b.a.subgroup(&b.act_g_a.fixed_by(n))?;
    let r_fixed = b.r.subgroup(&b.act_g_r.fixed_by(n))?;
    let mu_images = a_fixed
        .elements
        .iter()
        .map(|&x| {
            r_fixed
                .index_of(b.mu_of(x))
                .ok_or_else(|| Error::WellDefinednessViolated(format!("mu({x}) is not fixed by N")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mu = GroupMap::homomorphism(a_fixed.group.clone(), r_fixed.group.clone(), mu_images)?;
    let act_g_a = b
        .act_g_a
        .restrict_space(&a_fixed)?
        .descend_actor(&quotient)?;
    let act_g_r = b
        .act_g_r
        .restrict_space(&r_fixed)?
        .descend_actor(&quotient)?;
    let act_r_a = b.act_r_a.restrict(&r_fixed, &a_fixed)?;
    let data = BimoduleData {
        g: quotient.group.clone(),
        r: r_fixed.group.clone(),
        a: a_fixed.group.clone(),
        mu,
        act_g_a,
        act_g_r,
        act_r_a,
    };
    Ok(Fixed {
        bimodule: Bimodule::new(data)?,
        quotient,
        a_fixed,
        r_fixed,
    })
}

/// A morphism `f: (A, mu) -> (B, nu)` of bimodules over the same `G` and `R`.
#[derive(Clone, Debug)]
pub struct BimoduleMorphism {
    pub source: Bimodule,
    pub target: Bimodule,
    pub f: GroupMap,
}

impl BimoduleMorphism {
    pub fn new(source: Bimodule, target: Bimodule, f: GroupMap) -> Result<Self> {
        let bad = |reason: String| Err(Error::InvalidMorphism { reason });
        if *source.g != *target.g || *source.r != *target.r {
            return bad("source and target must share G and R".into());
        }
        if *f.domain != *source.a || *f.codomain != *target.a {
            return bad("f must map A to B".into());
        }
        if !f.is_homomorphism() {
            return bad("f is not a homomorphism".into());
        }
        if let Some(at) = f.first_discontinuity() {
            return bad(format!("f is not continuous at {at}"));
        }
        for x in source.a.elements() {
            for s in source.r.elements() {
                if f.apply(source.ra(s, x)) != target.ra(s, f.apply(x)) {
                    return bad(format!("f(^r a) != ^r f(a) at r={s}, a={x}"));
                }
            }
            for h in source.g.elements() {
                if f.apply(source.ga(h, x)) != target.ga(h, f.apply(x)) {
                    return bad(format!("f(^g a) != ^g f(a) at g={h}, a={x}"));
                }
            }
            if source.mu_of(x) != target.mu_of(f.apply(x)) {
                return bad(format!("mu != nu∘f at a={x}"));
            }
        }
        Ok(BimoduleMorphism { source, target, f })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inversion_action(actor: GroupRef, space: GroupRef) -> GroupAction {
        let s = space.clone();
        GroupAction::from_fn(actor, space, move |g, a| if g == 0 { a } else { s.inv(a) }).unwrap()
    }

    #[test]
    fn abelian_over_trivial_r_is_crossed() {
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let a = FiniteTopGroup::cyclic(3).into_ref();
        let b = Bimodule::with_trivial_r(g.clone(), a.clone(), GroupAction::trivial(g, a)).unwrap();
        assert_eq!(b.level(), Level::Crossed);
    }

    #[test]
    fn self_crossed_s3_is_crossed() {
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let b = as_selfbimodule(
            s3.clone(),
            s3.clone(),
            GroupMap::identity(s3.clone()),
            GroupAction::conjugation(s3),
        )
        .unwrap();
        assert_eq!(b.level(), Level::Crossed);
    }

    #[test]
    fn c4_over_c2_by_inversion_is_only_partially_crossed() {
        let g = FiniteTopGroup::trivial().into_ref();
        let a = FiniteTopGroup::cyclic(4).into_ref();
        let r = FiniteTopGroup::cyclic(2).into_ref();
        let data = BimoduleData {
            mu: GroupMap::homomorphism(a.clone(), r.clone(), vec![0, 1, 0, 1]).unwrap(),
            act_g_a: GroupAction::trivial(g.clone(), a.clone()),
            act_g_r: GroupAction::trivial(g.clone(), r.clone()),
            act_r_a: inversion_action(r.clone(), a.clone()),
            g,
            r,
            a,
        };
        let c = classify_bimodule(&data).unwrap();
        assert_eq!(c.level, Level::PartiallyCrossed);
        assert!(c.violations.contains(&Violation::CrossedLaw { a: 1, b: 1 }));
        assert!(partially_crossed_violations(&data).is_empty());
    }

    #[test]
    fn non_equivariant_mu_is_rejected_with_witnesses() {
        // G = C2 inverts R = C3 but fixes A = C3, so mu = id is not G-equivariant
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        let data = BimoduleData {
            mu: GroupMap::identity(c3.clone()),
            act_g_a: GroupAction::trivial(g.clone(), c3.clone()),
            act_g_r: inversion_action(g.clone(), c3.clone()),
            act_r_a: GroupAction::trivial(c3.clone(), c3.clone()),
            g,
            r: c3.clone(),
            a: c3,
        };
        match classify_bimodule(&data) {
            Err(Error::NotPrecrossed(v)) => {
                assert!(v.contains(&Violation::GEquivariance { g: 1, a: 1 }));
            }
            other => panic!("expected NotPrecrossed, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_bimodule_examples() {
        let g = FiniteTopGroup::trivial().into_ref();
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let b =
            make_conjugation_bimodule(g.clone(), s3.clone(), GroupAction::trivial(g, s3)).unwrap();
        assert_eq!(b.level(), Level::Crossed);
        assert_eq!(b.r.order(), 6);
        assert!(b.mu.is_injective() && b.mu.is_surjective());

        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c4 = FiniteTopGroup::cyclic(4).into_ref();
        let b =
            make_conjugation_bimodule(c2.clone(), c4.clone(), inversion_action(c2, c4)).unwrap();
        assert_eq!(b.r.order(), 1);
        assert!(b.act_g_r.is_trivial());
        assert_eq!(b.level(), Level::Crossed);
    }

    #[test]
    fn restriction_preserves_level() {
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let b = as_selfbimodule(
            s3.clone(),
            s3.clone(),
            GroupMap::identity(s3.clone()),
            GroupAction::conjugation(s3.clone()),
        )
        .unwrap();
        let t = (1..6).find(|&x| s3.mul(x, x) == 0).unwrap();
        let res = restrict_bimodule(&b, &[0, t]).unwrap();
        assert_eq!(res.bimodule.level(), b.level());
        assert_eq!(res.bimodule.g.order(), 2);
        let whole = restrict_bimodule(&b, &s3.elements().collect::<Vec<_>>()).unwrap();
        assert_eq!(whole.bimodule, b);
        let triv = restrict_bimodule(&b, &[0]).unwrap();
        assert!(triv.bimodule.act_g_a.is_trivial() && triv.bimodule.act_g_r.is_trivial());
        let rotation = (1..6).find(|&x| s3.mul(x, x) != 0).unwrap();
        assert!(matches!(
            restrict_bimodule(&b, &[0, rotation]),
            Err(Error::NotSubgroup { .. })
        ));
    }

    #[test]
    fn fixed_points_of_swap() {
        // G = C4 acting on C2 x C2 by swapping coordinates through C4 -> C2;
        // N = {0, 2} acts trivially, so take N = C4 itself for a nontrivial A^N.
        let g = FiniteTopGroup::cyclic(4).into_ref();
        let c2 = FiniteTopGroup::cyclic(2);
        let a = FiniteTopGroup::direct_product(&c2, &c2).into_ref();
        let swap = |x: usize| (x % 2) * 2 + x / 2;
        let act = GroupAction::from_fn(
            g.clone(),
            a.clone(),
            |h, x| if h % 2 == 0 { x } else { swap(x) },
        )
        .unwrap();
        let b = Bimodule::with_trivial_r(g.clone(), a.clone(), act).unwrap();
        let fixed = fixed_bimodule(&b, &[0, 1, 2, 3]).unwrap();
        assert_eq!(fixed.a_fixed.elements, vec![0, 3]);
        assert_eq!(fixed.bimodule.g.order(), 1);
        assert!(fixed.bimodule.level() >= b.level());
        let identity = fixed_bimodule(&b, &[0]).unwrap();
        assert_eq!(identity.bimodule.a.order(), 4);
        assert_eq!(identity.bimodule.act_g_a.table(), b.act_g_a.table());
        assert!(matches!(
            fixed_bimodule(&b, &[0, 1]),
            Err(Error::NotSubgroup { .. })
        ));
    }

    #[test]
    fn morphism_conditions() {
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let c2 = FiniteTopGroup::cyclic(2);
        let a = c2.clone().into_ref();
        let b = FiniteTopGroup::direct_product(&c2, &c2).into_ref();
        let src = Bimodule::with_trivial_r(
            g.clone(),
            a.clone(),
            GroupAction::trivial(g.clone(), a.clone()),
        )
        .unwrap();
        let dst =
            Bimodule::with_trivial_r(g.clone(), b.clone(), GroupAction::trivial(g, b.clone()))
                .unwrap();
        let diag = GroupMap::homomorphism(a, b, vec![0, 3]).unwrap();
        assert!(BimoduleMorphism::new(src.clone(), dst.clone(), diag).is_ok());
        let wrong = GroupMap::function(src.a.clone(), dst.a.clone(), vec![0, 1]).unwrap();
        assert!(BimoduleMorphism::new(src, dst, wrong).is_err());
    }
}
