//! Crossed homomorphisms `alpha: G -> A`, `alpha(gh) = alpha(g) ^g alpha(h)`.

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::Result;
use crate::group::FiniteTopGroup;
use crate::map::is_continuous_table;
use crate::{pow_u128, SearchOptions};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CrossedHom {
    pub alpha: Vec<usize>,
    pub continuous: bool,
}

/// Checks the crossed homomorphism identity on every pair.
pub fn is_crossed_hom(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    alpha: &[usize],
) -> bool {
    g.elements().all(|x| {
        g.elements()
            .all(|y| alpha[g.mul(x, y)] == a.mul(alpha[x], act.act(x, alpha[y])))
    })
}

/// Propagates generator images along `alpha(x s) = alpha(x) ^x alpha(s)`.
/// Returns `None` on a contradiction; otherwise the values on the subgroup
/// spanned by `gens`.
fn propagate(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut alpha = vec![None; g.order()];
    alpha[0] = Some(0);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        let ax = alpha[x].expect("visited");
        for (&s, &img) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let value = a.mul(ax, act.act(x, img));
            match alpha[y] {
                None => {
                    alpha[y] = Some(value);
                    stack.push(y);
                }
                Some(v) if v != value => return None,
                Some(_) => {}
            }
        }
    }
    Some(alpha)
}

/// All crossed homomorphisms `G -> A` for the action `act`, sorted by table.
///
/// Backtracks over images of a greedy generating sequence of `G`, pruning as
/// soon as the partial assignment is inconsistent on the subgroup generated
/// so far. The search space `|A|^#gens` is checked against the size cap.
pub fn enumerate_crossed_homs(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    opts: &SearchOptions,
) -> Result<Vec<CrossedHom>> {
    let gens = g.generating_sequence();
    opts.guard(pow_u128(a.order(), gens.len()))?;
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, a, act, &gens, &mut images, opts, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    gens: &[usize],
    images: &mut Vec<usize>,
    opts: &SearchOptions,
    out: &mut Vec<CrossedHom>,
) {
    let Some(partial) = propagate(g, a, act, &gens[..images.len()], images) else {
        return;
    };
    if images.len() == gens.len() {
        let alpha: Vec<usize> = partial.into_iter().map(|v| v.expect("generated")).collect();
        let continuous = is_continuous_table(g, a, &alpha).is_ok();
        if continuous || !opts.continuous_only {
            out.push(CrossedHom { alpha, continuous });
        }
        return;
    }
    for x in a.elements() {
        images.push(x);
        search(g, a, act, gens, images, opts, out);
        images.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: filter every function `G -> A`.
    fn brute_force(
        g: &FiniteTopGroup,
        a: &FiniteTopGroup,
        act: &GroupAction,
        continuous_only: bool,
    ) -> Vec<Vec<usize>> {
        let n = g.order();
        let total = a.order().pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let alpha: Vec<usize> = (0..n)
                .map(|_| {
                    let v = c % a.order();
                    c /= a.order();
                    v
                })
                .collect();
            if is_crossed_hom(g, a, act, &alpha)
                && (!continuous_only || is_continuous_table(g, a, &alpha).is_ok())
            {
                out.push(alpha);
            }
        }
        out.sort();
        out
    }

    fn tables(homs: &[CrossedHom]) -> Vec<Vec<usize>> {
        homs.iter().map(|h| h.alpha.clone()).collect()
    }

    #[test]
    fn trivial_coefficients_give_one_hom() {
        let g = FiniteTopGroup::symmetric(3).into_ref();
        let a = FiniteTopGroup::trivial().into_ref();
        let act = GroupAction::trivial(g.clone(), a.clone());
        let homs = enumerate_crossed_homs(&g, &a, &act, &SearchOptions::default()).unwrap();
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn c2_into_c2_trivial_action() {
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let act = GroupAction::trivial(c2.clone(), c2.clone());
        let homs = enumerate_crossed_homs(&c2, &c2, &act, &SearchOptions::default()).unwrap();
        assert_eq!(tables(&homs), brute_force(&c2, &c2, &act, true));
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn continuity_filters_the_nontrivial_hom() {
        let g = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
        let a = FiniteTopGroup::cyclic(2).into_ref();
        let act = GroupAction::trivial(g.clone(), a.clone());
        let cont = enumerate_crossed_homs(&g, &a, &act, &SearchOptions::default()).unwrap();
        assert_eq!(tables(&cont), vec![vec![0, 0]]);
        let all =
            enumerate_crossed_homs(&g, &a, &act, &SearchOptions::default().all_maps()).unwrap();
        assert_eq!(all.len(), 2);
        assert!(!all[1].continuous);
    }

    #[test]
    fn matches_brute_force_for_s3_on_c3() {
        // S3 acting on C3 through the sign
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let c3 = FiniteTopGroup::cyclic(3).into_ref();
        let alt = s3.commutator_subgroup();
        let act = GroupAction::from_fn(s3.clone(), c3.clone(), |g, x| {
            if alt.contains(&g) {
                x
            } else {
                (3 - x) % 3
            }
        })
        .unwrap();
        let homs = enumerate_crossed_homs(&s3, &c3, &act, &SearchOptions::default()).unwrap();
        assert_eq!(tables(&homs), brute_force(&s3, &c3, &act, false));
        for h in &homs {
            assert!(is_crossed_hom(&s3, &c3, &act, &h.alpha));
        }
    }

    #[test]
    fn size_guard_trips() {
        let s3 = FiniteTopGroup::symmetric(3).into_ref();
        let act = GroupAction::conjugation(s3.clone());
        let opts = SearchOptions {
            size_cap: 10,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_crossed_homs(&s3, &s3, &act, &opts),
            Err(crate::Error::SizeGuard {
                cardinality: 36,
                cap: 10
            })
        ));
    }
}
