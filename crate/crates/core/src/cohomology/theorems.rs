//! Maps out of `H^1(G,(A,mu))` and the exhaustive checks of its structure:
//! the embedding `zeta`, `mu^1`, `Inn`, the `H^0(G,R)`-action, the induced
//! group law, retraction splittings and the comparison with abelian `H^1`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::action::GroupAction;
use crate::bimodule::{Bimodule, BimoduleData, BimoduleMorphism, Level};
use crate::check::Check;
use crate::cohomology::classes::{
    class_map, compute_h1, plain_h1, plain_h1_of_a, plain_h1_of_r, ClassMap, H1Set, PlainH1,
};
use crate::cohomology::der::{
    der_inverse, enumerate_der, links_alpha, links_r, star_unchecked, DerPair,
};
use crate::error::{Error, Result};
use crate::group::{validate_group, GroupRef};
use crate::map::GroupMap;
use crate::SearchOptions;

/// `Inn(a)(g) = a ^g a^-1`
pub fn inn(b: &BimoduleData, a: usize) -> Vec<usize> {
    let grp = &b.a;
    let a_inv = grp.inv(a);
    b.g.elements().map(|g| grp.mul(a, b.ga(g, a_inv))).collect()
}

/// `zeta: [(alpha, r)] -> [alpha]` together with both sides and `mu^1`.
#[derive(Clone, Debug)]
pub struct Zeta {
    pub h1: H1Set,
    pub plain_a: PlainH1,
    pub plain_r: PlainH1,
    pub map: ClassMap,
    pub mu1: ClassMap,
}

impl Zeta {
    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    /// `mu^1` sends every class to the basepoint.
    pub fn mu1_trivial(&self) -> bool {
        self.mu1.is_constant_at_basepoint()
    }
}

/// `mu^1: [alpha] -> [mu alpha]`
pub fn mu1(b: &BimoduleData, plain_a: &PlainH1, plain_r: &PlainH1) -> Result<ClassMap> {
    class_map(plain_a, plain_r, |alpha| {
        Ok(alpha.iter().map(|&x| b.mu_of(x)).collect())
    })
}

/// Builds `zeta`; an injectivity failure is an error since it would
/// contradict the embedding theorem.
pub fn zeta(b: &Bimodule, opts: &SearchOptions) -> Result<Zeta> {
    let h1 = compute_h1(b, opts)?;
    let plain_a = plain_h1_of_a(b, opts)?;
    let plain_r = plain_h1_of_r(b, opts)?;
    let map = class_map(&h1, &plain_a, |p| Ok(p.alpha.clone()))?;
    if let Some((i, j)) = map.first_collision() {
        return Err(Error::InjectivityViolated(i, j));
    }
    let mu1 = mu1(b, &plain_a, &plain_r)?;
    Ok(Zeta {
        h1,
        plain_a,
        plain_r,
        map,
        mu1,
    })
}

pub fn mu1_trivial(b: &Bimodule, opts: &SearchOptions) -> Result<bool> {
    b.require(Level::PartiallyCrossed)?;
    let plain_a = plain_h1_of_a(b, opts)?;
    let plain_r = plain_h1_of_r(b, opts)?;
    Ok(mu1(b, &plain_a, &plain_r)?.is_constant_at_basepoint())
}

/// `Inn(G,(A,mu))` without any closure check.
pub(crate) fn inn_pairs(b: &BimoduleData) -> Vec<DerPair> {
    let h0 = b.h0_r();
    let set: BTreeSet<DerPair> =
        b.a.elements()
            .flat_map(|a| {
                let alpha = inn(b, a);
                let ma = b.mu_of(a);
                h0.iter()
                    .map(move |&z| DerPair {
                        alpha: alpha.clone(),
                        r: b.r.mul(ma, z),
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    set.into_iter().collect()
}

/// `{(Inn(a), mu(a) z)}`, checked to be closed under the star product and
/// inversion.
pub fn inn_subgroup(b: &Bimodule) -> Result<Vec<DerPair>> {
    b.require(Level::Crossed)?;
    let pairs = inn_pairs(b);
    let set: BTreeSet<&DerPair> = pairs.iter().collect();
    for p in &pairs {
        if !set.contains(&der_inverse(b, p)) {
            return Err(Error::Assertion(format!(
                "Inn is not closed under inversion at {p:?}"
            )));
        }
        for q in &pairs {
            if !set.contains(&star_unchecked(b, p, q)) {
                return Err(Error::Assertion(format!(
                    "Inn is not closed under the product at {p:?}, {q:?}"
                )));
            }
        }
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnNormality {
    /// Every conjugate of an inner pair is inner.
    pub direct: bool,
    /// `g -> ^(r z r^-1)(alpha(g)^-1) alpha(g)` is of the form `Inn(a)` for
    /// all pairs and all `z ∈ H^0(G,R)`.
    pub criterion: bool,
}

pub fn inn_normality(b: &Bimodule, opts: &SearchOptions) -> Result<InnNormality> {
    let inn_set: BTreeSet<DerPair> = inn_subgroup(b)?.into_iter().collect();
    let der = enumerate_der(b, opts)?;
    let direct = der.iter().all(|p| {
        let p_inv = der_inverse(b, p);
        inn_set
            .iter()
            .all(|i| inn_set.contains(&star_unchecked(b, &star_unchecked(b, p, i), &p_inv)))
    });
    let inner_maps: BTreeSet<Vec<usize>> = b.a.elements().map(|a| inn(b, a)).collect();
    let h0 = b.h0_r();
    let criterion = der.iter().all(|p| {
        h0.iter().all(|&z| {
            let w = b.r.conj(p.r, z);
            let m: Vec<usize> =
                b.g.elements()
                    .map(|g| b.a.mul(b.ra(w, b.a.inv(p.alpha[g])), p.alpha[g]))
                    .collect();
            inner_maps.contains(&m)
        })
    });
    Ok(InnNormality { direct, criterion })
}

/// Any `a` linking the crossed homomorphisms of two pairs
/// also links their `R` components.
pub fn alpha_link_check(b: &Bimodule, opts: &SearchOptions) -> Result<Check> {
    b.require(Level::PartiallyCrossed)?;
    let der = enumerate_der(b, opts)?;
    let h0 = b.h0_r();
    let cases = der.iter().flat_map(|p| {
        der.iter()
            .flat_map(move |q| b.a.elements().map(move |a| (p, q, a)))
    });
    Ok(Check::over(
        "alpha-link implies r-link",
        cases,
        |&(p, q, a)| {
            !links_alpha(b, &p.alpha, &q.alpha, a) || links_r(b, p.r, q.r, a, &h0).is_some()
        },
        |(p, q, a)| format!("p={p:?} q={q:?} a={a}"),
    ))
}

/// Both commutation rules: `^z(^g a) = ^g(^z a)` for `z ∈ H^0(G,R)`, and
/// `alpha(g) ^g(^r a) = ^r(^g a) alpha(g)` for every pair.
pub fn commutation_checks(b: &Bimodule, opts: &SearchOptions) -> Result<(Check, Check)> {
    b.require(Level::PartiallyCrossed)?;
    let h0 = b.h0_r();
    let first = Check::over(
        "H0(G,R) commutes with G on A",
        h0.iter().flat_map(|&z| {
            b.g.elements()
                .flat_map(move |g| b.a.elements().map(move |a| (z, g, a)))
        }),
        |&(z, g, a)| b.ra(z, b.ga(g, a)) == b.ga(g, b.ra(z, a)),
        |(z, g, a)| format!("z={z} g={g} a={a}"),
    );
    let der = enumerate_der(b, opts)?;
    let grp = &b.a;
    let second = Check::over(
        "pairs intertwine the G and R actions",
        der.iter().flat_map(|p| {
            b.g.elements()
                .flat_map(move |g| b.a.elements().map(move |a| (p, g, a)))
        }),
        |&(p, g, a)| {
            let x = p.alpha[g];
            grp.mul(x, b.ga(g, b.ra(p.r, a))) == grp.mul(b.ra(p.r, b.ga(g, a)), x)
        },
        |(p, g, a)| format!("pair={p:?} g={g} a={a}"),
    );
    Ok((first, second))
}

/// The action `^z[(alpha, r)] = [(^z alpha, z r z^-1)]` of `H^0(G,R)` on the
/// classes, one row per element of `h0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Action {
    pub h0: Vec<usize>,
    pub table: Vec<Vec<usize>>,
}

pub fn h0_action_on_h1(b: &Bimodule, h1: &H1Set) -> Result<H0Action> {
    b.require(Level::PartiallyCrossed)?;
    let h0 = b.h0_r();
    for &z in &h0 {
        for g in b.g.elements() {
            for a in b.a.elements() {
                if b.ra(z, b.ga(g, a)) != b.ga(g, b.ra(z, a)) {
                    return Err(Error::WellDefinednessViolated(format!(
                        "^z ^g a != ^g ^z a at z={z} g={g} a={a}"
                    )));
                }
            }
        }
    }
    let mut table = Vec::with_capacity(h0.len());
    for &z in &h0 {
        let m = class_map(h1, h1, |p| {
            Ok(DerPair {
                alpha: p.alpha.iter().map(|&x| b.ra(z, x)).collect(),
                r: b.r.conj(z, p.r),
            })
        })?;
        table.push(m.images);
    }
    Ok(H0Action { h0, table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBasis {
    /// Fixed points of `G` on `R` are normal and the twist condition holds.
    Conditions,
    /// The hypotheses fail but the product happens to descend to classes.
    Unconditional,
}

/// A group law on the classes induced by the star product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Group {
    pub table: Vec<Vec<usize>>,
    pub basis: GroupBasis,
    pub h0_normal: bool,
    pub twist_by_kernel: bool,
}

impl H1Group {
    pub fn order(&self) -> usize {
        self.table.len()
    }
}

/// `^c alpha ~ alpha` through some `a ∈ ker mu` for every `c ∈ H^0(G,R)` and
/// every pair.
fn twist_by_kernel(b: &BimoduleData, h1: &H1Set, twists: &[usize]) -> bool {
    let kernel = b.mu.kernel();
    h1.items.iter().all(|p| {
        twists.iter().all(|&c| {
            let twisted: Vec<usize> = p.alpha.iter().map(|&x| b.ra(c, x)).collect();
            kernel
                .iter()
                .any(|&a| links_alpha(b, &p.alpha, &twisted, a))
        })
    })
}

pub fn h1_group_structure(b: &Bimodule, h1: &H1Set) -> Result<H1Group> {
    b.require(Level::PartiallyCrossed)?;
    let h0 = b.h0_r();
    let h0_normal = b.r.is_normal(&h0);
    let twist_ok = twist_by_kernel(b, h1, &h0);
    let basis = if h0_normal && twist_ok {
        GroupBasis::Conditions
    } else {
        GroupBasis::Unconditional
    };
    let n = h1.len();
    let mut table = vec![vec![usize::MAX; n]; n];
    for (i, ci) in h1.classes.iter().enumerate() {
        for (j, cj) in h1.classes.iter().enumerate() {
            for &p in ci {
                for &q in cj {
                    let pq = star_unchecked(b, &h1.items[p], &h1.items[q]);
                    let k = h1
                        .class_of_item(&pq)
                        .ok_or_else(|| Error::NotADerPair(format!("{pq:?} is not a pair")))?;
                    if table[i][j] == usize::MAX {
                        table[i][j] = k;
                    } else if table[i][j] != k {
                        let msg = format!("classes {i} * {j} land in {} and {k}", table[i][j]);
                        return Err(match basis {
                            GroupBasis::Conditions => {
                                Error::Assertion(format!("product does not descend: {msg}"))
                            }
                            GroupBasis::Unconditional => Error::CongruenceViolated(msg),
                        });
                    }
                }
            }
        }
    }
    validate_group(&table, Some(0), &[0])
        .map_err(|e| Error::Assertion(format!("class table is not a group: {e}")))?;
    Ok(H1Group {
        table,
        basis,
        h0_normal,
        twist_by_kernel: twist_ok,
    })
}

/// When the classes form a group: `Inn` is normal, it is exactly the
/// distinguished class, and the number of classes is its index.
pub fn der_mod_inn_check(b: &Bimodule, h1: &H1Set) -> Result<Check> {
    let name = "H1 is Der modulo Inn";
    if h1_group_structure(b, h1).is_err() {
        return Ok(Check::pass(name, 0));
    }
    let inn_set = inn_pairs(b);
    let distinguished: Vec<DerPair> = h1.members(0).cloned().collect();
    if distinguished != inn_set {
        return Ok(Check::fail(
            name,
            1,
            format!(
                "distinguished class has {} pairs, Inn has {}",
                distinguished.len(),
                inn_set.len()
            ),
        ));
    }
    let members: BTreeSet<&DerPair> = inn_set.iter().collect();
    for p in &h1.items {
        let p_inv = der_inverse(b, p);
        for i in &inn_set {
            if !members.contains(&star_unchecked(b, &star_unchecked(b, p, i), &p_inv)) {
                return Ok(Check::fail(
                    name,
                    2,
                    format!("conjugate of {i:?} by {p:?} leaves Inn"),
                ));
            }
        }
    }
    if h1.len() * inn_set.len() != h1.items.len() {
        return Ok(Check::fail(
            name,
            3,
            format!(
                "{} classes but index {}/{}",
                h1.len(),
                h1.items.len(),
                inn_set.len()
            ),
        ));
    }
    Ok(Check::pass(name, 3))
}

/// The natural map from continuous classes into the classes of all pairs is
/// injective (and a homomorphism) whenever the latter form a group.
pub fn continuous_embedding_check(b: &Bimodule, opts: &SearchOptions) -> Result<Check> {
    let name = "continuous classes embed in all classes";
    let all = compute_h1(b, &opts.all_maps())?;
    let Ok(all_group) = h1_group_structure(b, &all) else {
        return Ok(Check::pass(name, 0));
    };
    let cont = compute_h1(
        b,
        &SearchOptions {
            continuous_only: true,
            ..*opts
        },
    )?;
    let map = class_map(&cont, &all, |p| Ok(p.clone()))?;
    if let Some((i, j)) = map.first_collision() {
        return Ok(Check::fail(
            name,
            cont.len() as u64,
            format!("classes {i} and {j} merge"),
        ));
    }
    if let Ok(cont_group) = h1_group_structure(b, &cont) {
        for i in 0..cont.len() {
            for j in 0..cont.len() {
                if map.images[cont_group.table[i][j]]
                    != all_group.table[map.images[i]][map.images[j]]
                {
                    return Ok(Check::fail(
                        name,
                        cont.len() as u64,
                        format!("not multiplicative at ({i}, {j})"),
                    ));
                }
            }
        }
    }
    Ok(Check::pass(name, cont.len() as u64))
}

/// Validates `rho: R -> A` as a continuous `G`-homomorphism with
/// `mu rho = Id_R`.
pub fn check_retraction(b: &BimoduleData, rho: &GroupMap) -> Result<()> {
    let bad = |reason: String| Err(Error::NotARetraction { reason });
    if *rho.domain != *b.r || *rho.codomain != *b.a {
        return bad("rho must map R to A".into());
    }
    if !rho.is_homomorphism() {
        return bad("rho is not a homomorphism".into());
    }
    if let Some(at) = rho.first_discontinuity() {
        return bad(format!("rho is not continuous at {at}"));
    }
    for r in b.r.elements() {
        if b.mu_of(rho.apply(r)) != r {
            return bad(format!("mu(rho({r})) != {r}"));
        }
        for g in b.g.elements() {
            if rho.apply(b.gr(g, r)) != b.ga(g, rho.apply(r)) {
                return bad(format!("rho(^g r) != ^g rho(r) at g={g}, r={r}"));
            }
        }
    }
    Ok(())
}

/// Exactness of `1 -> H^1(G,(A,mu)) -> H^1(G,A) -> H^1(G,R) -> 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub zeta_injective: bool,
    pub image_is_kernel: bool,
    pub mu1_surjective: bool,
    pub witnesses: Vec<String>,
}

impl SplitReport {
    pub fn exact(&self) -> bool {
        self.zeta_injective && self.image_is_kernel && self.mu1_surjective
    }
}

pub fn retraction_split_check(
    b: &Bimodule,
    rho: &GroupMap,
    opts: &SearchOptions,
) -> Result<SplitReport> {
    check_retraction(b, rho)?;
    let z = zeta(b, opts)?;
    let mut witnesses = Vec::new();
    let zeta_injective = z.map.is_injective();
    let image = z.map.image();
    let kernel = z.mu1.kernel();
    let image_is_kernel = image == kernel;
    if !image_is_kernel {
        witnesses.push(format!(
            "image of zeta {image:?} != kernel of mu1 {kernel:?}"
        ));
    }
    let mu1_surjective = z.mu1.is_surjective();
    if !mu1_surjective {
        let missed: Vec<usize> = (0..z.plain_r.len())
            .filter(|c| !z.mu1.images.contains(c))
            .collect();
        witnesses.push(format!("mu1 misses classes {missed:?}"));
    }
    Ok(SplitReport {
        zeta_injective,
        image_is_kernel,
        mu1_surjective,
        witnesses,
    })
}

/// Counts for `H^1(G,A) = H^1(G,(A,mu)) (+) H^1(G,R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSum {
    pub plain_a: usize,
    pub h1: usize,
    pub plain_r: usize,
    /// `(x, y) -> zeta(x) rho^1(y)` is a bijection onto `H^1(G,A)`.
    pub bijective: bool,
}

pub fn direct_sum_check(b: &Bimodule, rho: &GroupMap, opts: &SearchOptions) -> Result<DirectSum> {
    if !b.a.is_abelian() || !b.r.is_abelian() {
        return Err(Error::HypothesisFailed {
            which: "abelian",
            reason: "A and R must be abelian".into(),
        });
    }
    let h1 = compute_h1(b, opts)?;
    let all_r: Vec<usize> = b.r.elements().collect();
    if !twist_by_kernel(b, &h1, &all_r) {
        return Err(Error::HypothesisFailed {
            which: "kernel-twist",
            reason: "some ^r alpha is not linked to alpha through ker mu".into(),
        });
    }
    check_retraction(b, rho).map_err(|e| Error::HypothesisFailed {
        which: "retraction",
        reason: e.to_string(),
    })?;
    let plain_a = plain_h1_of_a(b, opts)?;
    let plain_r = plain_h1_of_r(b, opts)?;
    let mut hit = BTreeSet::new();
    for x in h1.representatives() {
        for y in plain_r.representatives() {
            let prod: Vec<usize> =
                b.g.elements()
                    .map(|g| b.a.mul(x.alpha[g], rho.apply(y[g])))
                    .collect();
            let class = plain_a.class_of_item(&prod).ok_or_else(|| {
                Error::Assertion("product of crossed homomorphisms is not one".into())
            })?;
            hit.insert(class);
        }
    }
    let bijective = hit.len() == h1.len() * plain_r.len() && hit.len() == plain_a.len();
    Ok(DirectSum {
        plain_a: plain_a.len(),
        h1: h1.len(),
        plain_r: plain_r.len(),
        bijective,
    })
}

/// `tau_A: H^1(G,A) -> H^1(G,(A,1))`, `[alpha] -> [(alpha, 1)]` for abelian
/// `A`, checked to be a bijection and multiplicative.
#[derive(Clone, Debug)]
pub struct Tau {
    pub bimodule: Bimodule,
    pub plain: PlainH1,
    pub h1: H1Set,
    pub map: ClassMap,
}

pub fn tau_iso(g: GroupRef, a: GroupRef, act: GroupAction, opts: &SearchOptions) -> Result<Tau> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian("coefficients"));
    }
    let plain = plain_h1(&g, &a, &act, opts)?;
    let bimodule = Bimodule::with_trivial_r(g, a, act)?;
    let h1 = compute_h1(&bimodule, opts)?;
    let map = class_map(&plain, &h1, |alpha| {
        Ok(DerPair {
            alpha: alpha.clone(),
            r: 0,
        })
    })?;
    if !map.is_injective() || !map.is_surjective() {
        return Err(Error::Assertion(format!(
            "tau is not a bijection: {:?}",
            map.images
        )));
    }
    let group = h1_group_structure(&bimodule, &h1)?;
    let grp = &bimodule.a;
    for (i, x) in plain.representatives().enumerate() {
        for (j, y) in plain.representatives().enumerate() {
            let xy: Vec<usize> = x.iter().zip(y).map(|(&u, &v)| grp.mul(u, v)).collect();
            let k = plain
                .class_of_item(&xy)
                .ok_or_else(|| Error::Assertion("pointwise product left Z^1".into()))?;
            if map.images[k] != group.table[map.images[i]][map.images[j]] {
                return Err(Error::Assertion(format!(
                    "tau is not multiplicative at ({i}, {j})"
                )));
            }
        }
    }
    Ok(Tau {
        bimodule,
        plain,
        h1,
        map,
    })
}

/// The square `tau_B f^1 = f^1 tau_A` for a morphism of abelian modules with
/// trivial structure map.
pub fn tau_naturality(f: &BimoduleMorphism, opts: &SearchOptions) -> Result<bool> {
    let (s, t) = (&f.source, &f.target);
    let ta = tau_iso(s.g.clone(), s.a.clone(), s.act_g_a.clone(), opts)?;
    let tb = tau_iso(t.g.clone(), t.a.clone(), t.act_g_a.clone(), opts)?;
    let apply = |alpha: &[usize]| -> Vec<usize> { alpha.iter().map(|&x| f.f.apply(x)).collect() };
    let f_plain = class_map(&ta.plain, &tb.plain, |alpha| Ok(apply(alpha)))?;
    let f_der = class_map(&ta.h1, &tb.h1, |p| {
        Ok(DerPair {
            alpha: apply(&p.alpha),
            r: p.r,
        })
    })?;
    Ok((0..ta.plain.len())
        .all(|c| tb.map.images[f_plain.images[c]] == f_der.images[ta.map.images[c]]))
}
