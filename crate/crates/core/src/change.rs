//! Change of groups: cocompatible triples, restriction, inflation, the
//! `G/N`-action on `H^1(N,(A,mu))` and the inflation-restriction sequence.

use serde::Serialize;

use crate::bimodule::{fixed_bimodule, restrict_bimodule, Bimodule, Level};
use crate::cohomology::classes::class_map;
use crate::cohomology::{compute_h1, ClassMap, DerPair, H1Set};
use crate::error::{Error, Result};
use crate::group::Quotient;
use crate::map::GroupMap;
use crate::SearchOptions;

/// `phi: G' -> G`, `varphi: R -> R'`, `psi: A -> A'` from a bimodule over
/// `(G, R)` to one over `(G', R')`.
///
/// Besides the two action laws, `psi` must carry the `R`-action along
/// `varphi` and intertwine the structure maps (`mu' psi = varphi mu`);
/// otherwise `(psi alpha phi, varphi(r))` need not be a pair.
#[derive(Clone, Debug)]
pub struct CocompatibleTriple {
    pub phi: GroupMap,
    pub varphi: GroupMap,
    pub psi: GroupMap,
    pub source: Bimodule,
    pub target: Bimodule,
}

impl CocompatibleTriple {
    pub fn new(
        phi: GroupMap,
        varphi: GroupMap,
        psi: GroupMap,
        source: Bimodule,
        target: Bimodule,
    ) -> Result<Self> {
        let bad = |reason: String| Err(Error::InvalidMorphism { reason });
        let shapes = [
            (&phi, &target.g, &source.g, "phi: G' -> G"),
            (&varphi, &source.r, &target.r, "varphi: R -> R'"),
            (&psi, &source.a, &target.a, "psi: A -> A'"),
        ];
        for (m, dom, cod, what) in shapes {
            if *m.domain != **dom || *m.codomain != **cod {
                return bad(format!("{what} has the wrong domain or codomain"));
            }
            if !m.is_homomorphism() {
                return bad(format!("{what} is not a homomorphism"));
            }
            if let Some(at) = m.first_discontinuity() {
                return bad(format!("{what} is not continuous at {at}"));
            }
        }
        for g in target.g.elements() {
            let h = phi.apply(g);
            for r in source.r.elements() {
                if target.gr(g, varphi.apply(r)) != varphi.apply(source.gr(h, r)) {
                    return bad(format!(
                        "^g' varphi(r) != varphi(^phi(g') r) at g'={g}, r={r}"
                    ));
                }
            }
            for a in source.a.elements() {
                if target.ga(g, psi.apply(a)) != psi.apply(source.ga(h, a)) {
                    return bad(format!("^g' psi(a) != psi(^phi(g') a) at g'={g}, a={a}"));
                }
            }
        }
        for a in source.a.elements() {
            if target.mu_of(psi.apply(a)) != varphi.apply(source.mu_of(a)) {
                return bad(format!("mu' psi != varphi mu at a={a}"));
            }
            for r in source.r.elements() {
                if psi.apply(source.ra(r, a)) != target.ra(varphi.apply(r), psi.apply(a)) {
                    return bad(format!("psi(^r a) != ^varphi(r) psi(a) at r={r}, a={a}"));
                }
            }
        }
        Ok(CocompatibleTriple {
            phi,
            varphi,
            psi,
            source,
            target,
        })
    }

    /// `(psi alpha phi, varphi(r))`
    pub fn apply(&self, p: &DerPair) -> DerPair {
        DerPair {
            alpha: self
                .target
                .g
                .elements()
                .map(|g| self.psi.apply(p.alpha[self.phi.apply(g)]))
                .collect(),
            r: self.varphi.apply(p.r),
        }
    }
}

/// A class map together with both class sets.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: H1Set,
    pub target: H1Set,
    pub map: ClassMap,
}

/// `[(alpha, r)] -> [(psi alpha phi, varphi(r))]`
pub fn induced_map(t: &CocompatibleTriple, opts: &SearchOptions) -> Result<InducedMap> {
    t.source.require(Level::PartiallyCrossed)?;
    t.target.require(Level::PartiallyCrossed)?;
    let source = compute_h1(&t.source, opts)?;
    let target = compute_h1(&t.target, opts)?;
    let map = class_map(&source, &target, |p| Ok(t.apply(p)))?;
    Ok(InducedMap {
        source,
        target,
        map,
    })
}

/// The inclusion triple `(N -> G, Id_R, Id_A)`.
pub fn restriction_triple(b: &Bimodule, n: &[usize]) -> Result<CocompatibleTriple> {
    let restricted = restrict_bimodule(b, n)?;
    let phi = GroupMap::homomorphism(
        restricted.subgroup.group.clone(),
        b.g.clone(),
        restricted.subgroup.elements.clone(),
    )?;
    CocompatibleTriple::new(
        phi,
        GroupMap::identity(b.r.clone()),
        GroupMap::identity(b.a.clone()),
        b.clone(),
        restricted.bimodule,
    )
}

/// `Res^1: H^1(G,(A,mu)) -> H^1(N,(A,mu))`
pub fn restriction(b: &Bimodule, n: &[usize], opts: &SearchOptions) -> Result<InducedMap> {
    induced_map(&restriction_triple(b, n)?, opts)
}

/// The quotient triple `(G -> G/N, R^N -> R, A^N -> A)`.
pub fn inflation_triple(b: &Bimodule, n: &[usize]) -> Result<CocompatibleTriple> {
    b.g.check_normal(n)?;
    let fixed = fixed_bimodule(b, n)?;
    let phi = GroupMap::homomorphism(
        b.g.clone(),
        fixed.quotient.group.clone(),
        fixed.quotient.coset_of.clone(),
    )?;
    let varphi = GroupMap::homomorphism(
        fixed.r_fixed.group.clone(),
        b.r.clone(),
        fixed.r_fixed.elements.clone(),
    )?;
    let psi = GroupMap::homomorphism(
        fixed.a_fixed.group.clone(),
        b.a.clone(),
        fixed.a_fixed.elements.clone(),
    )?;
    CocompatibleTriple::new(phi, varphi, psi, fixed.bimodule, b.clone())
}

/// `Inf^1: H^1(G/N,(A^N,mu^N)) -> H^1(G,(A,mu))`
pub fn inflation(b: &Bimodule, n: &[usize], opts: &SearchOptions) -> Result<InducedMap> {
    induced_map(&inflation_triple(b, n)?, opts)
}

/// The action of `G/N` on `H^1(N,(A,mu))`, one row per coset.
#[derive(Clone, Debug)]
pub struct QuotientAction {
    pub quotient: Quotient,
    pub h1n: H1Set,
    pub table: Vec<Vec<usize>>,
}

impl QuotientAction {
    /// Identity coset acts trivially and `^(xy) c = ^x(^y c)`.
    pub fn is_action(&self) -> bool {
        let q = &self.quotient.group;
        let n = self.h1n.len();
        (0..n).all(|c| self.table[0][c] == c)
            && q.elements().all(|x| {
                q.elements().all(|y| {
                    (0..n).all(|c| self.table[q.mul(x, y)][c] == self.table[x][self.table[y][c]])
                })
            })
    }
}

/// `^g(alpha, r) = (n -> ^g alpha(g^-1 n g), ^g r)`, checked to land in the
/// pairs over `N`, to be independent of the representative pair and of the
/// coset representative `g`, and to be trivial for `g ∈ N`.
pub fn quotient_action_on_h1n(
    b: &Bimodule,
    n: &[usize],
    opts: &SearchOptions,
) -> Result<QuotientAction> {
    b.g.check_normal(n)?;
    let quotient = b.g.quotient_by(n)?;
    let restricted = restrict_bimodule(b, n)?;
    let sub = restricted.subgroup;
    let h1n = compute_h1(&restricted.bimodule, opts)?;
    let g = &b.g;
    let twist_by = |x: usize| {
        class_map(&h1n, &h1n, |p| {
            let x_inv = g.inv(x);
            let alpha = sub
                .elements
                .iter()
                .map(|&m| {
                    let inner = sub.index_of(g.conj(x_inv, m)).expect("N is normal");
                    b.ga(x, p.alpha[inner])
                })
                .collect();
            Ok(DerPair {
                alpha,
                r: b.gr(x, p.r),
            })
        })
    };
    for &m in &sub.elements {
        let row = twist_by(m)?;
        if row.images.iter().enumerate().any(|(c, &d)| c != d) {
            return Err(Error::WellDefinednessViolated(format!(
                "{m} ∈ N moves a class: {:?}",
                row.images
            )));
        }
    }
    let mut table = Vec::with_capacity(quotient.cosets.len());
    for coset in &quotient.cosets {
        let row = twist_by(coset[0])?.images;
        for &x in &coset[1..] {
            if twist_by(x)?.images != row {
                return Err(Error::WellDefinednessViolated(format!(
                    "coset representatives {} and {x} disagree",
                    coset[0]
                )));
            }
        }
        table.push(row);
    }
    Ok(QuotientAction {
        quotient,
        h1n,
        table,
    })
}

/// Classes fixed by every coset.
pub fn fixed_classes(action: &QuotientAction) -> Vec<usize> {
    (0..action.h1n.len())
        .filter(|&c| action.table.iter().all(|row| row[c] == c))
        .collect()
}

/// Exactness of `1 -> H^1(G/N,(A^N,mu^N)) -> H^1(G,(A,mu)) -> H^1(N,(A,mu))^(G/N)`.
#[derive(Clone, Debug, Serialize)]
pub struct InfResReport {
    pub quotient_classes: usize,
    pub classes: usize,
    pub subgroup_classes: usize,
    pub inf: Vec<usize>,
    pub res: Vec<usize>,
    pub fixed: Vec<usize>,
    pub inf_injective: bool,
    pub image_inf_is_kernel_res: bool,
    pub res_lands_in_fixed: bool,
    pub res_after_inf_trivial: bool,
    pub action_is_action: bool,
    pub witnesses: Vec<String>,
}

impl InfResReport {
    pub fn exact(&self) -> bool {
        self.inf_injective && self.image_inf_is_kernel_res && self.res_lands_in_fixed
    }
}

pub fn inf_res_exactness(b: &Bimodule, n: &[usize], opts: &SearchOptions) -> Result<InfResReport> {
    let inf = inflation(b, n, opts)?;
    let res = restriction(b, n, opts)?;
    let action = quotient_action_on_h1n(b, n, opts)?;
    let fixed = fixed_classes(&action);
    let mut witnesses = Vec::new();

    let inf_injective = inf.map.is_injective();
    if let Some((i, j)) = inf.map.first_collision() {
        witnesses.push(format!("Inf merges quotient classes {i} and {j}"));
    }
    let image = inf.map.image();
    let kernel = res.map.kernel();
    let image_inf_is_kernel_res = image == kernel;
    if !image_inf_is_kernel_res {
        witnesses.push(format!(
            "image of Inf {image:?} != kernel of Res {kernel:?}"
        ));
    }
    let stray: Vec<usize> = res
        .map
        .image()
        .into_iter()
        .filter(|c| !fixed.contains(c))
        .collect();
    let res_lands_in_fixed = stray.is_empty();
    if !res_lands_in_fixed {
        witnesses.push(format!("Res hits non-fixed classes {stray:?}"));
    }
    let res_after_inf_trivial = inf.map.images.iter().all(|&c| res.map.images[c] == 0);
    Ok(InfResReport {
        quotient_classes: inf.source.len(),
        classes: res.source.len(),
        subgroup_classes: res.target.len(),
        inf: inf.map.images,
        res: res.map.images,
        fixed,
        inf_injective,
        image_inf_is_kernel_res,
        res_lands_in_fixed,
        res_after_inf_trivial,
        action_is_action: action.is_action(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::group::{FiniteTopGroup, GroupRef};

    fn trivial_over(g: GroupRef) -> Bimodule {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        Bimodule::with_trivial_r(g.clone(), c2.clone(), GroupAction::trivial(g, c2)).unwrap()
    }

    #[test]
    fn identity_triple_induces_identity() {
        let b = trivial_over(FiniteTopGroup::cyclic(2).into_ref());
        let t = CocompatibleTriple::new(
            GroupMap::identity(b.g.clone()),
            GroupMap::identity(b.r.clone()),
            GroupMap::identity(b.a.clone()),
            b.clone(),
            b.clone(),
        )
        .unwrap();
        assert_eq!(
            induced_map(&t, &SearchOptions::default())
                .unwrap()
                .map
                .images,
            vec![0, 1]
        );
    }

    #[test]
    fn restriction_of_c4_to_c2_kills_the_nontrivial_class() {
        let b = trivial_over(FiniteTopGroup::cyclic(4).into_ref());
        let opts = SearchOptions::default();
        assert_eq!(
            restriction(&b, &[0, 2], &opts).unwrap().map.images,
            vec![0, 0]
        );
        assert_eq!(
            restriction(&b, &[0, 1, 2, 3], &opts).unwrap().map.images,
            vec![0, 1]
        );
        assert_eq!(restriction(&b, &[0], &opts).unwrap().map.images, vec![0, 0]);
    }

    #[test]
    fn inflation_from_c2_to_c4() {
        let b = trivial_over(FiniteTopGroup::cyclic(4).into_ref());
        let opts = SearchOptions::default();
        assert_eq!(
            inflation(&b, &[0, 2], &opts).unwrap().map.images,
            vec![0, 1]
        );
        assert_eq!(inflation(&b, &[0], &opts).unwrap().map.images, vec![0, 1]);
        let all = inflation(&b, &[0, 1, 2, 3], &opts).unwrap();
        assert_eq!(all.source.len(), 1);
    }

    #[test]
    fn c4_over_c2_action_is_trivial() {
        let b = trivial_over(FiniteTopGroup::cyclic(4).into_ref());
        let act = quotient_action_on_h1n(&b, &[0, 2], &SearchOptions::default()).unwrap();
        assert_eq!(act.table, vec![vec![0, 1], vec![0, 1]]);
        assert!(act.is_action());
        assert_eq!(fixed_classes(&act), vec![0, 1]);
    }

    #[test]
    fn inf_res_on_s3() {
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let a3 = s3.commutator_subgroup();
        let report = inf_res_exactness(&trivial_over(s3), &a3, &SearchOptions::default()).unwrap();
        assert_eq!(
            (
                report.quotient_classes,
                report.classes,
                report.subgroup_classes
            ),
            (2, 2, 1)
        );
        assert!(report.exact() && report.res_after_inf_trivial && report.action_is_action);
    }

    #[test]
    fn rejects_non_normal_inflation() {
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let b = trivial_over(s3.clone());
        let order_two = s3.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
        assert!(inflation(&b, &order_two, &SearchOptions::default()).is_err());
    }
}
