//! Principal homogeneous spaces `(P, f)` over a partially crossed bimodule
//! and their classification by `H^1(G,(A,mu))`.
//!
//! `P` carries no topology of its own: each orbit map `e_p: a -> p a` must be
//! a homeomorphism, so the topology is the one transported from `A`. It is
//! checked to be the same for every basepoint.

use serde::Serialize;

use crate::bimodule::{Bimodule, Level};
use crate::cohomology::{h1_group_structure, is_der_pair, DerPair, H1Set};
use crate::error::{Error, Result};
use crate::map::is_continuous_table;
use crate::{pow_u128, SearchOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Torsor {
    /// `g_action[g][p] = ^g p`
    pub g_action: Vec<Vec<usize>>,
    /// `a_action[p][a] = p a`
    pub a_action: Vec<Vec<usize>>,
    /// `f: P -> R`
    pub f: Vec<usize>,
}

impl Torsor {
    /// Checks every torsor axiom against `b`.
    pub fn new(
        b: &Bimodule,
        g_action: Vec<Vec<usize>>,
        a_action: Vec<Vec<usize>>,
        f: Vec<usize>,
    ) -> Result<Self> {
        let t = Torsor {
            g_action,
            a_action,
            f,
        };
        t.validate(b)?;
        Ok(t)
    }

    pub fn points(&self) -> usize {
        self.f.len()
    }

    fn validate(&self, b: &Bimodule) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidTorsor(s));
        let (g, a) = (&b.g, &b.a);
        let n = self.points();
        if n != a.order()
            || self.a_action.len() != n
            || self.a_action.iter().any(|row| row.len() != a.order())
            || self.g_action.len() != g.order()
            || self.g_action.iter().any(|row| row.len() != n)
        {
            return bad(format!(
                "tables must describe {} points, |A| = {}, |G| = {}",
                n,
                a.order(),
                g.order()
            ));
        }
        if self
            .a_action
            .iter()
            .flatten()
            .chain(self.g_action.iter().flatten())
            .any(|&p| p >= n)
            || self.f.iter().any(|&r| r >= b.r.order())
        {
            return bad("entry out of range".into());
        }
        for p in 0..n {
            if self.a_action[p][0] != p {
                return bad(format!("identity of A moves {p}"));
            }
            let mut seen = vec![false; n];
            for x in a.elements() {
                let q = self.a_action[p][x];
                if std::mem::replace(&mut seen[q], true) {
                    return bad(format!("A does not act simply transitively at {p}"));
                }
                for y in a.elements() {
                    if self.a_action[q][y] != self.a_action[p][a.mul(x, y)] {
                        return bad(format!("(p a) b != p (ab) at p={p}, a={x}, b={y}"));
                    }
                }
            }
        }
        for p in 0..n {
            if self.g_action[0][p] != p {
                return bad(format!("identity of G moves {p}"));
            }
            for x in g.elements() {
                for y in g.elements() {
                    if self.g_action[g.mul(x, y)][p] != self.g_action[x][self.g_action[y][p]] {
                        return bad(format!("G does not act at g={x}, h={y}, p={p}"));
                    }
                }
                for c in a.elements() {
                    if self.g_action[x][self.a_action[p][c]]
                        != self.a_action[self.g_action[x][p]][b.ga(x, c)]
                    {
                        return bad(format!("^g(p a) != ^g p ^g a at g={x}, p={p}, a={c}"));
                    }
                }
                if self.f[self.g_action[x][p]] != b.gr(x, self.f[p]) {
                    return bad(format!("f is not a G-map at g={x}, p={p}"));
                }
            }
            for c in a.elements() {
                if self.f[self.a_action[p][c]] != b.r.mul(b.r.inv(b.mu_of(c)), self.f[p]) {
                    return bad(format!("f(p a) != mu(a)^-1 f(p) at p={p}, a={c}"));
                }
            }
        }
        // transported topology: e_q^-1 e_p must be a homeomorphism of A
        for p in 0..n {
            for q in 0..n {
                let shift: Vec<usize> = a
                    .elements()
                    .map(|x| self.coordinate(q, self.a_action[p][x]))
                    .collect();
                if is_continuous_table(a, a, &shift).is_err() {
                    return bad(format!("topologies transported from {p} and {q} differ"));
                }
            }
        }
        // the G-action and f in the coordinates of the basepoint 0
        let coords: Vec<Vec<usize>> = g
            .elements()
            .map(|x| {
                a.elements()
                    .map(|c| self.coordinate(0, self.g_action[x][self.a_action[0][c]]))
                    .collect()
            })
            .collect();
        for x in g.elements() {
            for c in a.elements() {
                for &m in g.open_subgroup() {
                    for &k in a.open_subgroup() {
                        if !a.same_open_coset(coords[x][c], coords[g.mul(x, m)][a.mul(c, k)]) {
                            return bad("G does not act continuously".into());
                        }
                    }
                }
            }
        }
        let f0: Vec<usize> = a.elements().map(|c| self.f[self.a_action[0][c]]).collect();
        if let Err(at) = is_continuous_table(a, &b.r, &f0) {
            return bad(format!("f is not continuous at {at}"));
        }
        Ok(())
    }

    /// `e_p^-1(q)`: the unique `a` with `p a = q`.
    pub fn coordinate(&self, p: usize, q: usize) -> usize {
        self.a_action[p]
            .iter()
            .position(|&x| x == q)
            .expect("simply transitive")
    }
}

/// `(A, mu^-1)` with right translation and the given `G`-action.
pub fn trivial_torsor(b: &Bimodule) -> Result<Torsor> {
    gamma(b, &DerPair::trivial(b.g.order()))
}

/// `P_alpha`: `A` with `g . a = alpha(g) ^g a` and `f_r(a) = mu(a)^-1 r`.
pub fn gamma(b: &Bimodule, p: &DerPair) -> Result<Torsor> {
    b.require(Level::PartiallyCrossed)?;
    let a = &b.a;
    let g_action =
        b.g.elements()
            .map(|g| {
                a.elements()
                    .map(|x| a.mul(p.alpha[g], b.ga(g, x)))
                    .collect()
            })
            .collect();
    let a_action = a
        .elements()
        .map(|x| a.elements().map(|y| a.mul(x, y)).collect())
        .collect();
    let f = a
        .elements()
        .map(|x| b.r.mul(b.r.inv(b.mu_of(x)), p.r))
        .collect();
    Torsor::new(b, g_action, a_action, f)
}

/// `(alpha_p, f(p))` with `^g p = p alpha_p(g)`.
pub fn lambda_pair(b: &Bimodule, t: &Torsor, p: usize) -> Result<DerPair> {
    let alpha: Vec<usize> =
        b.g.elements()
            .map(|g| t.coordinate(p, t.g_action[g][p]))
            .collect();
    let pair = DerPair { alpha, r: t.f[p] };
    if !is_der_pair(b, &pair) || is_continuous_table(&b.g, &b.a, &pair.alpha).is_err() {
        return Err(Error::NotADerPair(format!("basepoint {p} gives {pair:?}")));
    }
    Ok(pair)
}

/// The class of `(alpha_p, f(p))`, checked to be the same for every basepoint.
pub fn lambda(b: &Bimodule, h1: &H1Set, t: &Torsor, p: usize) -> Result<usize> {
    let class_at = |q: usize| -> Result<usize> {
        let pair = lambda_pair(b, t, q)?;
        h1.class_of_item(&pair)
            .ok_or_else(|| Error::NotADerPair(format!("{pair:?} was not enumerated")))
    };
    let class = class_at(p)?;
    for q in 0..t.points() {
        let other = class_at(q)?;
        if other != class {
            return Err(Error::WellDefinednessViolated(format!(
                "basepoints {p} and {q} give classes {class} and {other}"
            )));
        }
    }
    Ok(class)
}

/// An isomorphism `nu: P -> Q` with `f(p) = g(nu(p)) z` for one `z ∈ H^0(G,R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsorIso {
    pub nu: Vec<usize>,
    pub z: usize,
}

/// Tries every `nu` fixed by the image of the basepoint `0`; `A`-equivariance
/// determines the rest.
pub fn torsor_iso(b: &Bimodule, t1: &Torsor, t2: &Torsor) -> Option<TorsorIso> {
    let (g, a, r) = (&b.g, &b.a, &b.r);
    let h0 = b.h0_r();
    for q in 0..t2.points() {
        let mut nu = vec![0; t1.points()];
        for x in a.elements() {
            nu[t1.a_action[0][x]] = t2.a_action[q][x];
        }
        let equivariant = (0..t1.points()).all(|p| {
            g.elements()
                .all(|x| nu[t1.g_action[x][p]] == t2.g_action[x][nu[p]])
                && a.elements()
                    .all(|c| nu[t1.a_action[p][c]] == t2.a_action[nu[p]][c])
        });
        if !equivariant {
            continue;
        }
        let z = r.mul(r.inv(t2.f[nu[0]]), t1.f[0]);
        if h0.binary_search(&z).is_err() {
            continue;
        }
        if (0..t1.points()).all(|p| t1.f[p] == r.mul(t2.f[nu[p]], z)) {
            // nu in basepoint coordinates is a left translation of A
            let local: Vec<usize> = a
                .elements()
                .map(|x| t2.coordinate(q, nu[t1.a_action[0][x]]))
                .collect();
            if is_continuous_table(a, a, &local).is_ok() {
                return Some(TorsorIso { nu, z });
            }
        }
    }
    None
}

/// Isomorphism classes of torsors, with the comparison against `H^1`.
#[derive(Clone, Debug)]
pub struct TorsorClassification {
    pub torsors: Vec<Torsor>,
    /// Indices into `torsors`, one list per isomorphism class.
    pub classes: Vec<Vec<usize>>,
    /// `lambda` of each torsor class.
    pub lambda: Vec<usize>,
    pub lambda_bijective: bool,
    /// `lambda(gamma(c)) = c` for every `H^1` class.
    pub lambda_gamma_identity: bool,
    /// `gamma(lambda(T))` is isomorphic to `T` for every class.
    pub gamma_lambda_isomorphic: bool,
}

/// Enumerates every torsor on the set `A` with right translation: the
/// `G`-action is `^g a = x_g ^g a` and `f(a) = mu(a)^-1 r` for some
/// `x: G -> A`, `x_e = e`, and `r ∈ R`; the torsor axioms filter the
/// candidates.
pub fn classify_torsors(
    b: &Bimodule,
    h1: &H1Set,
    opts: &SearchOptions,
) -> Result<TorsorClassification> {
    b.require(Level::PartiallyCrossed)?;
    let (g, a, r) = (&b.g, &b.a, &b.r);
    opts.guard(pow_u128(a.order(), g.order() - 1).saturating_mul(r.order() as u128))?;
    let translation: Vec<Vec<usize>> = a
        .elements()
        .map(|x| a.elements().map(|y| a.mul(x, y)).collect())
        .collect();
    let mut torsors = Vec::new();
    let free = g.order() - 1;
    let total = a.order().pow(free as u32);
    for code in 0..total {
        let mut x = vec![0; g.order()];
        let mut c = code;
        for slot in (1..g.order()).rev() {
            x[slot] = c % a.order();
            c /= a.order();
        }
        let g_action: Vec<Vec<usize>> = g
            .elements()
            .map(|h| a.elements().map(|y| a.mul(x[h], b.ga(h, y))).collect())
            .collect();
        for base in r.elements() {
            let f = a
                .elements()
                .map(|y| r.mul(r.inv(b.mu_of(y)), base))
                .collect();
            if let Ok(t) = Torsor::new(b, g_action.clone(), translation.clone(), f) {
                torsors.push(t);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, t) in torsors.iter().enumerate() {
        match classes
            .iter_mut()
            .find(|c| torsor_iso(b, &torsors[c[0]], t).is_some())
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let lambda_classes = classes
        .iter()
        .map(|c| lambda(b, h1, &torsors[c[0]], 0))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = lambda_classes.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let lambda_bijective = sorted.len() == classes.len() && sorted.len() == h1.len();
    let mut lambda_gamma_identity = true;
    for (k, rep) in h1.representatives().enumerate() {
        let t = gamma(b, rep)?;
        lambda_gamma_identity &= lambda(b, h1, &t, 0)? == k;
    }
    let mut gamma_lambda_isomorphic = true;
    for (c, &k) in classes.iter().zip(&lambda_classes) {
        let t = gamma(b, h1.representative(k))?;
        gamma_lambda_isomorphic &= torsor_iso(b, &torsors[c[0]], &t).is_some();
    }
    Ok(TorsorClassification {
        torsors,
        classes,
        lambda: lambda_classes,
        lambda_bijective,
        lambda_gamma_identity,
        gamma_lambda_isomorphic,
    })
}

/// The product torsor on `A` with `g . a = ^(f1(p1)) alpha2(g) alpha1(g) ^g a`
/// and `f(a) = mu(a)^-1 f1(p1) f2(p2)`, checked against the class product and
/// for independence of the basepoints.
pub fn torsor_product(
    b: &Bimodule,
    h1: &H1Set,
    t1: &Torsor,
    p1: usize,
    t2: &Torsor,
    p2: usize,
) -> Result<Torsor> {
    let group = h1_group_structure(b, h1).map_err(|_| Error::NoGroupStructure)?;
    let build = |q1: usize, q2: usize| -> Result<Torsor> {
        let (x, y) = (lambda_pair(b, t1, q1)?, lambda_pair(b, t2, q2)?);
        let a = &b.a;
        let alpha =
            b.g.elements()
                .map(|g| a.mul(b.ra(x.r, y.alpha[g]), x.alpha[g]))
                .collect();
        gamma(
            b,
            &DerPair {
                alpha,
                r: b.r.mul(x.r, y.r),
            },
        )
    };
    let product = build(p1, p2)?;
    let expected = group.table[lambda(b, h1, t1, p1)?][lambda(b, h1, t2, p2)?];
    let got = lambda(b, h1, &product, 0)?;
    if got != expected {
        return Err(Error::Assertion(format!(
            "product torsor has class {got}, expected {expected}"
        )));
    }
    for q1 in 0..t1.points() {
        for q2 in 0..t2.points() {
            if torsor_iso(b, &product, &build(q1, q2)?).is_none() {
                return Err(Error::WellDefinednessViolated(format!(
                    "basepoints ({q1}, {q2}) change the product"
                )));
            }
        }
    }
    Ok(product)
}
