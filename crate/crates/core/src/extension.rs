//! Proper extensions `1 -> (A,1) -> (B,mu) -> (C,lambda) -> 1` with continuous
//! sections, the connecting maps `delta^0`, `delta^1`, factor sets, `H^2(G,A)`
//! and the seven-term exact sequence.
//!
//! Inside a partially crossed `B`, every `a` with `mu(a) = 1` satisfies
//! `a b a^-1 = ^1 b = b`, so the kernel of an extension is central and in
//! particular abelian. `H^2(G,A)` is therefore always available at the last
//! node.

use serde::Serialize;

use crate::action::GroupAction;
use crate::bimodule::{Bimodule, Level};
use crate::cohomology::classes::{class_map, plain_h1};
use crate::cohomology::{compute_h1, ClassSet, DerPair, H1Set, PlainH1};
use crate::error::{Error, Result};
use crate::group::FiniteTopGroup;
use crate::map::{is_continuous_table, GroupMap};
use crate::{pow_u128, SearchOptions};

/// A normalized 2-cochain `G x G -> A`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorSet {
    pub order: usize,
    pub table: Vec<usize>,
}

impl FactorSet {
    pub fn trivial(order: usize) -> Self {
        FactorSet {
            order,
            table: vec![0; order * order],
        }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        FactorSet {
            order,
            table: (0..order * order)
                .map(|i| f(i / order, i % order))
                .collect(),
        }
    }

    #[inline]
    pub fn at(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.order).all(|g| self.at(0, g) == 0 && self.at(g, 0) == 0)
    }

    /// First `(g, h, k)` violating `^g f(h,k) f(g,hk) = f(gh,k) f(g,h)`.
    pub fn first_violation(
        &self,
        g: &FiniteTopGroup,
        a: &FiniteTopGroup,
        act: &GroupAction,
    ) -> Option<(usize, usize, usize)> {
        for x in g.elements() {
            for y in g.elements() {
                for z in g.elements() {
                    if !cocycle_holds(g, a, act, |u, v| self.at(u, v), x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Continuity for the product topology on `G x G`.
    pub fn is_continuous(&self, g: &FiniteTopGroup, a: &FiniteTopGroup) -> bool {
        if a.is_indiscrete() || g.is_discrete() {
            return true;
        }
        g.elements().all(|x| {
            g.elements().all(|y| {
                g.open_subgroup().iter().all(|&n| {
                    g.open_subgroup().iter().all(|&m| {
                        a.same_open_coset(self.at(x, y), self.at(g.mul(x, n), g.mul(y, m)))
                    })
                })
            })
        })
    }

    /// Pointwise product `self(g,h) other(g,h)`.
    pub fn times(&self, other: &FactorSet, a: &FiniteTopGroup) -> FactorSet {
        FactorSet {
            order: self.order,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&x, &y)| a.mul(x, y))
                .collect(),
        }
    }
}

fn cocycle_holds(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    f: impl Fn(usize, usize) -> usize,
    x: usize,
    y: usize,
    z: usize,
) -> bool {
    let lhs = a.mul(act.act(x, f(y, z)), f(x, g.mul(y, z)));
    let rhs = a.mul(f(g.mul(x, y), z), f(x, y));
    lhs == rhs
}

/// `delta kappa (g,h) = ^g kappa(h) kappa(gh)^-1 kappa(g)`, without checks.
fn delta_unchecked(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    kappa: &[usize],
) -> FactorSet {
    FactorSet::from_fn(g.order(), |x, y| {
        a.mul(
            a.mul(act.act(x, kappa[y]), a.inv(kappa[g.mul(x, y)])),
            kappa[x],
        )
    })
}

/// The factor set of a continuous normalized 1-cochain.
pub fn coboundary_1(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    kappa: &[usize],
) -> Result<FactorSet> {
    if kappa.len() != g.order() {
        return Err(Error::MapShape {
            got: kappa.len(),
            expected: g.order(),
        });
    }
    if kappa[0] != 0 {
        return Err(Error::Assertion("cochain is not normalized".into()));
    }
    if let Err(at) = is_continuous_table(g, a, kappa) {
        return Err(Error::NotContinuous { at });
    }
    let f = delta_unchecked(g, a, act, kappa);
    if let Some((x, y, z)) = f.first_violation(g, a, act) {
        return Err(Error::NotAFactorSet(x, y, z));
    }
    Ok(f)
}

/// Every continuous normalized cochain `G -> A`, in lexicographic order.
fn normalized_cochains(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    opts: &SearchOptions,
) -> Result<Vec<Vec<usize>>> {
    let free = g.order() - 1;
    opts.guard(pow_u128(a.order(), free))?;
    let total = a.order().pow(free as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut kappa = vec![0; g.order()];
        let mut c = code;
        for slot in (1..g.order()).rev() {
            kappa[slot] = c % a.order();
            c /= a.order();
        }
        if is_continuous_table(g, a, &kappa).is_ok() {
            out.push(kappa);
        }
    }
    Ok(out)
}

/// The first continuous normalized `kappa` (lexicographically) with
/// `delta kappa = f`.
pub fn is_coboundary(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    f: &FactorSet,
    opts: &SearchOptions,
) -> Result<Option<Vec<usize>>> {
    Ok(normalized_cochains(g, a, opts)?
        .into_iter()
        .find(|k| &delta_unchecked(g, a, act, k) == f))
}

/// `f2 = delta(kappa) f1` for some continuous normalized `kappa`.
pub fn cohomologous(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    f1: &FactorSet,
    f2: &FactorSet,
    opts: &SearchOptions,
) -> Result<Option<Vec<usize>>> {
    Ok(normalized_cochains(g, a, opts)?
        .into_iter()
        .find(|k| &delta_unchecked(g, a, act, k).times(f1, a) == f2))
}

/// `H^2(G,A)` for abelian `A`: normalized continuous factor sets modulo
/// coboundaries of normalized continuous cochains.
#[derive(Clone, Debug)]
pub struct H2 {
    pub classes: ClassSet<FactorSet>,
    pub coboundaries: Vec<FactorSet>,
    /// Class of the pointwise product of representatives.
    pub table: Vec<Vec<usize>>,
}

impl H2 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, f: &FactorSet) -> Option<usize> {
        self.classes.class_of_item(f)
    }
}

/// All normalized factor sets, by backtracking over the `(|G|-1)^2` free
/// cells; each cocycle identity is tested as soon as its four cells are set.
fn normalized_cocycles(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    opts: &SearchOptions,
) -> Result<Vec<FactorSet>> {
    let n = g.order();
    let free = (n - 1) * (n - 1);
    opts.guard(pow_u128(a.order(), free))?;
    // cell (x,y), x,y >= 1, is assigned at step (x-1)(n-1) + (y-1)
    let step = |x: usize, y: usize| {
        if x == 0 || y == 0 {
            None
        } else {
            Some((x - 1) * (n - 1) + (y - 1))
        }
    };
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); free.max(1)];
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                let cells = [(y, z), (x, g.mul(y, z)), (g.mul(x, y), z), (x, y)];
                let last = cells.iter().filter_map(|&(u, v)| step(u, v)).max();
                if let Some(s) = last {
                    due[s].push((x, y, z))
                }
            }
        }
    }
    let mut table = vec![0; n * n];
    let mut out = Vec::new();
    fn go(
        i: usize,
        n: usize,
        g: &FiniteTopGroup,
        a: &FiniteTopGroup,
        act: &GroupAction,
        due: &[Vec<(usize, usize, usize)>],
        table: &mut Vec<usize>,
        out: &mut Vec<FactorSet>,
    ) {
        let free = (n - 1) * (n - 1);
        if i == free {
            out.push(FactorSet {
                order: n,
                table: table.clone(),
            });
            return;
        }
        let cell = (i / (n - 1) + 1) * n + (i % (n - 1) + 1);
        for v in a.elements() {
            table[cell] = v;
            let ok = due[i]
                .iter()
                .all(|&(x, y, z)| cocycle_holds(g, a, act, |u, w| table[u * n + w], x, y, z));
            if ok {
                go(i + 1, n, g, a, act, due, table, out);
            }
        }
        table[cell] = 0;
    }
    if n == 1 {
        return Ok(vec![FactorSet::trivial(1)]);
    }
    go(0, n, g, a, act, &due, &mut table, &mut out);
    out.retain(|f| f.is_continuous(g, a));
    Ok(out)
}

pub fn compute_h2(
    g: &FiniteTopGroup,
    a: &FiniteTopGroup,
    act: &GroupAction,
    opts: &SearchOptions,
) -> Result<H2> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian("H^2 coefficients"));
    }
    let cocycles = normalized_cocycles(g, a, act, opts)?;
    let mut coboundaries: Vec<FactorSet> = normalized_cochains(g, a, opts)?
        .iter()
        .map(|k| delta_unchecked(g, a, act, k))
        .collect();
    coboundaries.sort();
    coboundaries.dedup();
    let classes = ClassSet::from_orbits(cocycles, |f| {
        coboundaries.iter().map(|d| d.times(f, a)).collect()
    })?;
    let n = classes.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = classes
                .representative(i)
                .times(classes.representative(j), a);
            table[i][j] = classes
                .class_of_item(&prod)
                .ok_or_else(|| Error::Assertion("product of factor sets is not one".into()))?;
        }
    }
    Ok(H2 {
        classes,
        coboundaries,
        table,
    })
}

/// A validated proper extension with a continuous normalized section.
#[derive(Clone, Debug)]
pub struct BimoduleExtension {
    pub a: Bimodule,
    pub b: Bimodule,
    pub c: Bimodule,
    pub iota: GroupMap,
    pub pi: GroupMap,
    pub section: GroupMap,
    // B -> A on the image of iota
    iota_inverse: Vec<Option<usize>>,
}

impl BimoduleExtension {
    pub fn new(
        a: Bimodule,
        b: Bimodule,
        c: Bimodule,
        iota: GroupMap,
        pi: GroupMap,
        section: Option<GroupMap>,
        opts: &SearchOptions,
    ) -> Result<Self> {
        for other in [&b, &c] {
            if *other.g != *a.g || *other.r != *a.r {
                return Err(Error::DiagramDoesNotCommute(
                    "A, B and C must share G and R".into(),
                ));
            }
        }
        if *iota.domain != *a.a
            || *iota.codomain != *b.a
            || *pi.domain != *b.a
            || *pi.codomain != *c.a
        {
            return Err(Error::NotExact(
                "iota must map A to B and pi must map B to C".into(),
            ));
        }
        if !iota.is_homomorphism() || !pi.is_homomorphism() {
            return Err(Error::NotExact("iota and pi must be homomorphisms".into()));
        }
        if !iota.is_injective() {
            return Err(Error::NotExact("iota is not injective".into()));
        }
        if !pi.is_surjective() {
            return Err(Error::NotExact("pi is not surjective".into()));
        }
        if iota.image() != pi.kernel() {
            return Err(Error::NotExact(format!(
                "image of iota {:?} != kernel of pi {:?}",
                iota.image(),
                pi.kernel()
            )));
        }
        for x in a.a.elements() {
            if a.mu_of(x) != 0 || b.mu_of(iota.apply(x)) != 0 {
                return Err(Error::DiagramDoesNotCommute(format!(
                    "structure map of A is not trivial at {x}"
                )));
            }
        }
        for y in b.a.elements() {
            if c.mu_of(pi.apply(y)) != b.mu_of(y) {
                return Err(Error::DiagramDoesNotCommute(format!(
                    "lambda(pi({y})) != mu({y})"
                )));
            }
        }
        for (name, m, src, dst) in [("iota", &iota, &a, &b), ("pi", &pi, &b, &c)] {
            for x in src.a.elements() {
                for g in src.g.elements() {
                    if m.apply(src.ga(g, x)) != dst.ga(g, m.apply(x)) {
                        return Err(Error::DiagramDoesNotCommute(format!(
                            "{name} is not a G-map at g={g}, x={x}"
                        )));
                    }
                }
                for r in src.r.elements() {
                    if m.apply(src.ra(r, x)) != dst.ra(r, m.apply(x)) {
                        return Err(Error::DiagramDoesNotCommute(format!(
                            "{name} is not an R-map at r={r}, x={x}"
                        )));
                    }
                }
            }
        }
        if let Some(at) = iota.first_discontinuity() {
            return Err(Error::NotProper(format!("iota is not continuous at {at}")));
        }
        let embedded_open = iota.image_of(a.a.open_subgroup());
        let trace: Vec<usize> =
            b.a.open_subgroup()
                .iter()
                .copied()
                .filter(|y| iota.image().contains(y))
                .collect();
        if embedded_open != trace {
            return Err(Error::NotProper(format!(
                "iota(N_A) = {embedded_open:?} but N_B ∩ iota(A) = {trace:?}"
            )));
        }
        if let Some(at) = pi.first_discontinuity() {
            return Err(Error::NotProper(format!("pi is not continuous at {at}")));
        }
        let projected_open = pi.image_of(b.a.open_subgroup());
        if projected_open != c.a.open_subgroup() {
            return Err(Error::NotProper(format!(
                "pi(N_B) = {projected_open:?} but N_C = {:?}",
                c.a.open_subgroup()
            )));
        }
        let mut iota_inverse = vec![None; b.a.order()];
        for x in a.a.elements() {
            iota_inverse[iota.apply(x)] = Some(x);
        }
        let mut ext = BimoduleExtension {
            section: GroupMap::trivial(c.a.clone(), b.a.clone()),
            a,
            b,
            c,
            iota,
            pi,
            iota_inverse,
        };
        ext.section = match section {
            Some(s) => {
                ext.check_section(&s)?;
                s
            }
            None => ext
                .continuous_sections(opts, 1)?
                .into_iter()
                .next()
                .ok_or(Error::NoContinuousSection)?,
        };
        Ok(ext)
    }

    fn check_section(&self, s: &GroupMap) -> Result<()> {
        if *s.domain != *self.c.a || *s.codomain != *self.b.a {
            return Err(Error::MapShape {
                got: s.images().len(),
                expected: self.c.a.order(),
            });
        }
        if s.apply(0) != 0 {
            return Err(Error::NoContinuousSection);
        }
        if let Some(c) = self
            .c
            .a
            .elements()
            .find(|&c| self.pi.apply(s.apply(c)) != c)
        {
            return Err(Error::NotExact(format!("pi(s({c})) != {c}")));
        }
        if let Some(at) = s.first_discontinuity() {
            return Err(Error::NotContinuous { at });
        }
        Ok(())
    }

    /// Up to `limit` continuous normalized sections, lexicographically.
    pub fn continuous_sections(&self, opts: &SearchOptions, limit: usize) -> Result<Vec<GroupMap>> {
        let (b, c) = (&self.b.a, &self.c.a);
        let fibres: Vec<Vec<usize>> = c
            .elements()
            .map(|x| b.elements().filter(|&y| self.pi.apply(y) == x).collect())
            .collect();
        opts.guard(pow_u128(self.a.a.order(), c.order() - 1))?;
        let mut out = Vec::new();
        let mut choice = vec![0usize; c.order()];
        loop {
            let mut images: Vec<usize> = (0..c.order()).map(|x| fibres[x][choice[x]]).collect();
            images[0] = 0;
            if is_continuous_table(c, b, &images).is_ok() {
                out.push(GroupMap::function(c.clone(), b.clone(), images)?);
                if out.len() >= limit {
                    return Ok(out);
                }
            }
            // odometer over c = 1..
            let mut x = c.order() - 1;
            loop {
                if x == 0 {
                    return Ok(out);
                }
                choice[x] += 1;
                if choice[x] < fibres[x].len() {
                    break;
                }
                choice[x] = 0;
                x -= 1;
            }
        }
    }

    /// `iota^-1` on the image of `iota`.
    pub fn pull_back(&self, y: usize) -> Option<usize> {
        self.iota_inverse[y]
    }

    fn g(&self) -> &FiniteTopGroup {
        &self.a.g
    }

    /// `g -> b^-1 ^g b` pulled back to `A`.
    fn delta0_cocycle(&self, b: usize) -> Result<Vec<usize>> {
        let bg = &self.b.a;
        self.g()
            .elements()
            .map(|g| {
                let v = bg.mul(bg.inv(b), self.b.ga(g, b));
                self.pull_back(v)
                    .ok_or_else(|| Error::Assertion(format!("b^-1 ^g b = {v} is outside A")))
            })
            .collect()
    }

    /// `s alpha(g) ^g(s alpha(h)) (s alpha(gh))^-1` pulled back to `A`.
    pub fn delta1_cocycle(&self, alpha: &[usize], section: &GroupMap) -> Result<FactorSet> {
        let (g, bg) = (self.g(), &self.b.a);
        let sa = |x: usize| section.apply(alpha[x]);
        let mut table = Vec::with_capacity(g.order() * g.order());
        for x in g.elements() {
            for y in g.elements() {
                let v = bg.mul(bg.mul(sa(x), self.b.ga(x, sa(y))), bg.inv(sa(g.mul(x, y))));
                table.push(self.pull_back(v).ok_or_else(|| {
                    Error::Assertion(format!("value {v} at ({x},{y}) is outside A"))
                })?);
            }
        }
        let f = FactorSet {
            order: g.order(),
            table,
        };
        if let Some((x, y, z)) = f.first_violation(g, &self.a.a, &self.a.act_g_a) {
            return Err(Error::NotAFactorSet(x, y, z));
        }
        Ok(f)
    }
}

/// `delta^0(c)` as a class of `H^1(G,A)`, checked to be independent of the
/// lift of `c`.
pub fn delta0(e: &BimoduleExtension, plain_a: &PlainH1, c: usize) -> Result<usize> {
    if e.c.h0_a().binary_search(&c).is_err() {
        return Err(Error::NotFixed(c));
    }
    let mut class = None;
    for b in e.b.a.elements().filter(|&b| e.pi.apply(b) == c) {
        let alpha = e.delta0_cocycle(b)?;
        let k = plain_a.class_of_item(&alpha).ok_or_else(|| {
            Error::Assertion(format!(
                "{alpha:?} is not a continuous crossed homomorphism"
            ))
        })?;
        match class {
            None => class = Some(k),
            Some(prev) if prev != k => {
                return Err(Error::WellDefinednessViolated(format!(
                    "lifts of {c} give classes {prev} and {k}"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(class.expect("pi is surjective"))
}

/// `delta^1` on the classes of `H^1(G,(C,lambda))`, as classes of `H^2`.
pub fn delta1(e: &BimoduleExtension, h1_c: &H1Set, h2: &H2) -> Result<Vec<usize>> {
    h1_c.representatives()
        .map(|p| {
            let f = e.delta1_cocycle(&p.alpha, &e.section)?;
            h2.class_of(&f)
                .ok_or_else(|| Error::Assertion("delta1 cocycle is not continuous".into()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeCheck {
    pub node: &'static str,
    pub exact: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SevenTermReport {
    pub h0_a: Vec<usize>,
    pub h0_b: Vec<usize>,
    pub h0_c: Vec<usize>,
    pub h1_a: usize,
    pub h1_b: usize,
    pub h1_c: usize,
    pub h2: usize,
    pub iota0_injective: bool,
    /// `delta^0` on each element of `H^0(G,C)`.
    pub delta0: Vec<usize>,
    pub iota1: Vec<usize>,
    pub pi1: Vec<usize>,
    pub delta1: Vec<usize>,
    pub nodes: Vec<NodeCheck>,
    pub sections_checked: usize,
    pub section_independent: bool,
    pub representative_independent: bool,
    pub delta1_preserves_basepoint: bool,
    pub pi1_after_iota1_trivial: bool,
    pub lifted_classes_bounded: bool,
}

impl SevenTermReport {
    pub fn exact(&self) -> bool {
        self.iota0_injective && self.nodes.iter().all(|n| n.exact)
    }
}

/// Pointed-set exactness: the image of the incoming map equals the
/// preimage of the basepoint under the outgoing one.
fn node(node: &'static str, image: Vec<usize>, kernel: Vec<usize>) -> NodeCheck {
    let mut image = image;
    image.sort_unstable();
    image.dedup();
    let exact = image == kernel;
    let witness = (!exact).then(|| format!("image {image:?} != kernel {kernel:?}"));
    NodeCheck {
        node,
        exact,
        witness,
    }
}

fn preimage_of_zero(images: &[usize]) -> Vec<usize> {
    (0..images.len()).filter(|&i| images[i] == 0).collect()
}

pub fn seven_term_check(e: &BimoduleExtension, opts: &SearchOptions) -> Result<SevenTermReport> {
    e.b.require(Level::PartiallyCrossed)?;
    e.c.require(Level::PartiallyCrossed)?;
    let g = e.g().clone();
    let (ag, bg) = (&e.a.a, &e.b.a);
    let h0_a = e.a.h0_a();
    let h0_b = e.b.h0_a();
    let h0_c = e.c.h0_a();
    let plain_a = plain_h1(&e.a.g, ag, &e.a.act_g_a, opts)?;
    let h1_b = compute_h1(&e.b, opts)?;
    let h1_c = compute_h1(&e.c, opts)?;
    let h2 = compute_h2(&g, ag, &e.a.act_g_a, opts)?;

    // H^0 maps as index lists into the fixed-point sets
    let iota0: Vec<usize> = h0_a.iter().map(|&x| e.iota.apply(x)).collect();
    let iota0_injective = {
        let mut v = iota0.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == iota0.len()
    };
    let pi0: Vec<usize> = h0_b.iter().map(|&y| e.pi.apply(y)).collect();
    let delta0_map = h0_c
        .iter()
        .map(|&c| delta0(e, &plain_a, c))
        .collect::<Result<Vec<_>>>()?;
    let iota1 = class_map(&plain_a, &h1_b, |alpha| {
        Ok(DerPair {
            alpha: alpha.iter().map(|&x| e.iota.apply(x)).collect(),
            r: 0,
        })
    })?;
    let pi1 = class_map(&h1_b, &h1_c, |p| {
        Ok(DerPair {
            alpha: p.alpha.iter().map(|&y| e.pi.apply(y)).collect(),
            r: p.r,
        })
    })?;
    let delta1_map = delta1(e, &h1_c, &h2)?;

    let mut nodes = Vec::new();
    // H^0(G,B): image of iota0 = elements sent to e by pi
    nodes.push(node(
        "H0(G,B)",
        iota0.clone(),
        h0_b.iter()
            .copied()
            .filter(|&y| e.pi.apply(y) == 0)
            .collect(),
    ));
    // H^0(G,C)
    let ker_delta0: Vec<usize> = h0_c
        .iter()
        .zip(&delta0_map)
        .filter(|(_, &k)| k == 0)
        .map(|(&c, _)| c)
        .collect();
    nodes.push(node("H0(G,C)", pi0, ker_delta0));
    nodes.push(node(
        "H1(G,A)",
        delta0_map.clone(),
        preimage_of_zero(&iota1.images),
    ));
    nodes.push(node(
        "H1(G,(B,mu))",
        iota1.images.clone(),
        preimage_of_zero(&pi1.images),
    ));
    nodes.push(node(
        "H1(G,(C,lambda))",
        pi1.images.clone(),
        preimage_of_zero(&delta1_map),
    ));

    // section independence: every continuous section gives the same H^2 class
    let sections = e.continuous_sections(opts, usize::MAX)?;
    let mut section_independent = true;
    for s in &sections {
        for (i, p) in h1_c.representatives().enumerate() {
            let f = e.delta1_cocycle(&p.alpha, s)?;
            if h2.class_of(&f) != Some(delta1_map[i]) {
                section_independent = false;
            }
        }
    }
    // representative independence: every member of a class
    let mut representative_independent = true;
    for (i, members) in h1_c.classes.iter().enumerate() {
        for &m in members {
            let f = e.delta1_cocycle(&h1_c.items[m].alpha, &e.section)?;
            if h2.class_of(&f) != Some(delta1_map[i]) {
                representative_independent = false;
            }
        }
    }
    let delta1_preserves_basepoint = delta1_map.first() == Some(&0);
    let pi1_after_iota1_trivial = iota1.images.iter().all(|&k| pi1.images[k] == 0);

    // for each pair over B, delta1(pi beta) = delta(z) with z(g) = beta(g)^-1 s(pi beta(g))
    let mut lifted_classes_bounded = true;
    for p in &h1_b.items {
        let pb: Vec<usize> = p.alpha.iter().map(|&y| e.pi.apply(y)).collect();
        let f = e.delta1_cocycle(&pb, &e.section)?;
        let z: Option<Vec<usize>> = g
            .elements()
            .map(|x| e.pull_back(bg.mul(bg.inv(p.alpha[x]), e.section.apply(pb[x]))))
            .collect();
        let ok = match z {
            Some(z) => {
                let d = FactorSet::from_fn(g.order(), |x, y| {
                    ag.mul(ag.mul(e.a.ga(x, z[y]), ag.inv(z[g.mul(x, y)])), z[x])
                });
                d == f
            }
            None => false,
        };
        lifted_classes_bounded &= ok;
    }

    Ok(SevenTermReport {
        h0_a,
        h0_b,
        h0_c,
        h1_a: plain_a.len(),
        h1_b: h1_b.len(),
        h1_c: h1_c.len(),
        h2: h2.len(),
        iota0_injective,
        delta0: delta0_map,
        iota1: iota1.images,
        pi1: pi1.images,
        delta1: delta1_map,
        nodes,
        sections_checked: sections.len(),
        section_independent,
        representative_independent,
        delta1_preserves_basepoint,
        pi1_after_iota1_trivial,
        lifted_classes_bounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupRef;

    fn trivial_bimodule(g: &GroupRef, a: GroupRef) -> Bimodule {
        Bimodule::with_trivial_r(g.clone(), a.clone(), GroupAction::trivial(g.clone(), a)).unwrap()
    }

    /// `1 -> C2 -> C4 -> C2 -> 1` over `G = C2` acting trivially.
    fn c2_c4_c2(section: Option<Vec<usize>>) -> Result<BimoduleExtension> {
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c4 = FiniteTopGroup::cyclic(4).into_ref();
        let iota = GroupMap::homomorphism(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
        let pi = GroupMap::homomorphism(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let s = section.map(|v| GroupMap::function(c2.clone(), c4.clone(), v).unwrap());
        BimoduleExtension::new(
            trivial_bimodule(&g, c2.clone()),
            trivial_bimodule(&g, c4),
            trivial_bimodule(&g, c2),
            iota,
            pi,
            s,
            &SearchOptions::default(),
        )
    }

    /// Oracle: filter all 16 functions `C2 x C2 -> C2` by the identity and
    /// normalization, then quotient by coboundaries computed by hand.
    #[test]
    fn h2_of_c2_in_c2_matches_brute_force() {
        let g = FiniteTopGroup::cyclic(2);
        let a = FiniteTopGroup::cyclic(2);
        let act = GroupAction::trivial(g.clone().into_ref(), a.clone().into_ref());
        let mut normalized = Vec::new();
        for code in 0..16usize {
            let f = FactorSet {
                order: 2,
                table: (0..4).map(|i| (code >> i) & 1).collect(),
            };
            if f.first_violation(&g, &a, &act).is_none() && f.is_normalized() {
                normalized.push(f);
            }
        }
        assert_eq!(normalized.len(), 2);
        // kappa(1) = 1 gives delta(1,1) = kappa(1) kappa(0)^-1 kappa(1) = 0
        let h2 = compute_h2(&g, &a, &act, &SearchOptions::default()).unwrap();
        assert_eq!(h2.len(), 2);
        assert_eq!(h2.classes.items, normalized);
    }

    #[test]
    fn h2_small_cases() {
        let opts = SearchOptions::default();
        let c3 = FiniteTopGroup::cyclic(3);
        let act = GroupAction::trivial(c3.clone().into_ref(), c3.clone().into_ref());
        assert_eq!(compute_h2(&c3, &c3, &act, &opts).unwrap().len(), 3);
        let one = FiniteTopGroup::trivial();
        let act = GroupAction::trivial(c3.clone().into_ref(), one.clone().into_ref());
        assert_eq!(compute_h2(&c3, &one, &act, &opts).unwrap().len(), 1);
    }

    #[test]
    fn coboundary_examples() {
        let g = FiniteTopGroup::cyclic(2);
        let a = FiniteTopGroup::cyclic(2);
        let act = GroupAction::trivial(g.clone().into_ref(), a.clone().into_ref());
        assert_eq!(
            coboundary_1(&g, &a, &act, &[0, 0]).unwrap(),
            FactorSet::trivial(2)
        );
        assert_eq!(
            coboundary_1(&g, &a, &act, &[0, 1]).unwrap(),
            FactorSet::trivial(2)
        );
        let nontrivial = FactorSet {
            order: 2,
            table: vec![0, 0, 0, 1],
        };
        assert_eq!(
            is_coboundary(&g, &a, &act, &nontrivial, &SearchOptions::default()).unwrap(),
            None
        );
        assert_eq!(
            is_coboundary(
                &g,
                &a,
                &act,
                &FactorSet::trivial(2),
                &SearchOptions::default()
            )
            .unwrap(),
            Some(vec![0, 0])
        );
    }

    #[test]
    fn validates_c2_c4_c2() {
        let e = c2_c4_c2(None).unwrap();
        assert_eq!(e.section.images(), &[0, 1]);
        assert!(c2_c4_c2(Some(vec![0, 3])).is_ok());
        assert!(matches!(
            c2_c4_c2(Some(vec![0, 2])),
            Err(Error::NotExact(_))
        ));
        assert_eq!(
            e.continuous_sections(&SearchOptions::default(), usize::MAX)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn non_open_projection_is_not_proper() {
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c2i = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
        let c4 = FiniteTopGroup::cyclic(4).into_ref();
        let iota = GroupMap::homomorphism(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
        let pi = GroupMap::homomorphism(c4.clone(), c2i.clone(), vec![0, 1, 0, 1]).unwrap();
        let e = BimoduleExtension::new(
            trivial_bimodule(&g, c2.clone()),
            trivial_bimodule(&g, c4),
            trivial_bimodule(&g, c2i),
            iota,
            pi,
            None,
            &SearchOptions::default(),
        );
        assert!(matches!(e, Err(Error::NotProper(_))));
    }

    #[test]
    fn seven_terms_for_c2_c4_c2() {
        let e = c2_c4_c2(None).unwrap();
        let report = seven_term_check(&e, &SearchOptions::default()).unwrap();
        assert!(report.exact(), "{report:?}");
        assert_eq!(report.h2, 2);
        assert_eq!(report.delta1, vec![0, 1]);
        assert!(report.section_independent && report.representative_independent);
        assert!(report.lifted_classes_bounded && report.pi1_after_iota1_trivial);
    }

    #[test]
    fn delta0_detects_a_twisted_lift() {
        // C2 acting on C4 by inversion: c = 1 ∈ C2 lifts to i = 1 ∈ C4
        let g = FiniteTopGroup::cyclic(2).into_ref();
        let c2 = FiniteTopGroup::cyclic(2).into_ref();
        let c4 = FiniteTopGroup::cyclic(4).into_ref();
        let inv = GroupAction::from_fn(
            g.clone(),
            c4.clone(),
            |x, y| if x == 0 { y } else { (4 - y) % 4 },
        )
        .unwrap();
        let e = BimoduleExtension::new(
            trivial_bimodule(&g, c2.clone()),
            Bimodule::with_trivial_r(g.clone(), c4.clone(), inv).unwrap(),
            trivial_bimodule(&g, c2.clone()),
            GroupMap::homomorphism(c2.clone(), c4.clone(), vec![0, 2]).unwrap(),
            GroupMap::homomorphism(c4, c2.clone(), vec![0, 1, 0, 1]).unwrap(),
            None,
            &SearchOptions::default(),
        )
        .unwrap();
        let plain = plain_h1(&g, &c2, &e.a.act_g_a, &SearchOptions::default()).unwrap();
        assert_eq!(delta0(&e, &plain, 0).unwrap(), 0);
        assert_eq!(delta0(&e, &plain, 1).unwrap(), 1);
        assert!(seven_term_check(&e, &SearchOptions::default())
            .unwrap()
            .exact());
    }
}
