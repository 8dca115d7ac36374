//! Finite topological groups.
//!
//! A group topology on a finite group is the same thing as a choice of an
//! open normal subgroup `N` (the closure of the identity): the open sets are
//! exactly the unions of cosets of `N`. `N = {e}` is the discrete topology,
//! `N = G` the indiscrete one. Every group here carries such a subgroup.
//!
//! Elements are dense indices `0..order`, and index `0` is always the
//! identity. Subsets are sorted index lists.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to an immutable validated group.
pub type GroupRef = Arc<FiniteTopGroup>;

/// A finite group given by its Cayley table, together with the open normal
/// subgroup that fixes its topology.
#[derive(Clone)]
pub struct FiniteTopGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    open: Vec<usize>,
    open_mask: Vec<bool>,
    // new index -> index in the table the group was validated from
    labels: Vec<usize>,
}

impl PartialEq for FiniteTopGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table && self.open == other.open
    }
}

impl Eq for FiniteTopGroup {}

impl fmt::Debug for FiniteTopGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTopGroup")
            .field("order", &self.order)
            .field("open_subgroup", &self.open)
            .finish()
    }
}

/// Validates a raw Cayley table and an open subgroup.
///
/// The identity is located (or checked against `identity_hint`) and moved to
/// index `0`; when that requires relabelling, indices `0` and the old
/// identity are swapped, in the table and in `open_subgroup` alike. Use
/// [`FiniteTopGroup::from_original`] to translate other data that refers to
/// the raw labels.
pub fn validate_group(
    raw_table: &[Vec<usize>],
    identity_hint: Option<usize>,
    open_subgroup: &[usize],
) -> Result<FiniteTopGroup> {
    let n = raw_table.len();
    if n == 0 {
        return Err(Error::NoIdentity {
            hint: identity_hint,
        });
    }
    for (row, entries) in raw_table.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::EntryOutOfRange { row, col, value });
        }
    }
    let mul = |a: usize, b: usize| raw_table[a][b];
    let neutral = |e: usize| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x);
    let e = match identity_hint {
        Some(h) if h < n && neutral(h) => h,
        Some(_) => {
            return Err(Error::NoIdentity {
                hint: identity_hint,
            })
        }
        None => (0..n)
            .find(|&x| neutral(x))
            .ok_or(Error::NoIdentity { hint: None })?,
    };
    for x in 0..n {
        if !(0..n).any(|y| mul(x, y) == e && mul(y, x) == e) {
            return Err(Error::NoInverse { element: x });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(Error::NotAssociative(a, b, c));
                }
            }
        }
    }

    // swap e <-> 0
    let relabel = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[relabel(a) * n + relabel(b)] = relabel(mul(a, b));
        }
    }
    let labels: Vec<usize> = (0..n).map(relabel).collect();
    let mut open = Vec::with_capacity(open_subgroup.len());
    for &x in open_subgroup {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, order: n });
        }
        open.push(relabel(x));
    }
    FiniteTopGroup::assemble(n, table, open, labels)
}

impl FiniteTopGroup {
    fn assemble(n: usize, table: Vec<usize>, open: Vec<usize>, labels: Vec<usize>) -> Result<Self> {
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x * n + y] == 0)
                .ok_or(Error::NoInverse { element: x })?;
        }
        let open: Vec<usize> = open
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut open_mask = vec![false; n];
        for &x in &open {
            open_mask[x] = true;
        }
        let group = FiniteTopGroup {
            order: n,
            table,
            inverse,
            open,
            open_mask,
            labels,
        };
        if !group.open_mask[0] {
            return Err(Error::SubgroupNotClosed { a: 0, b: 0 });
        }
        for &a in &group.open {
            if !group.open_mask[group.inv(a)] {
                return Err(Error::SubgroupNotClosed { a, b: a });
            }
            for &b in &group.open {
                if !group.open_mask[group.mul(a, b)] {
                    return Err(Error::SubgroupNotClosed { a, b });
                }
            }
        }
        for &a in &group.open {
            for g in 0..n {
                if !group.open_mask[group.conj(g, a)] {
                    return Err(Error::SubgroupNotNormal {
                        element: a,
                        conjugator: g,
                    });
                }
            }
        }
        Ok(group)
    }

    /// Builds a group from a multiplication closure on `0..n`. The closure
    /// must already put the identity at `0`.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize, open: &[usize]) -> Result<Self> {
        let raw: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        validate_group(&raw, Some(0), open)
    }

    pub fn trivial() -> Self {
        Self::from_fn(1, |_, _| 0, &[0]).expect("trivial group")
    }

    /// Cyclic group `Z/n` with the discrete topology.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n, &[0]).expect("cyclic group")
    }

    /// Symmetric group on `k` points, discrete. Elements are the
    /// permutations in lexicographic order, so `0` is the identity; the
    /// product is composition `(p*q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| {
            perms
                .iter()
                .position(|q| q.as_slice() == p)
                .expect("permutation")
        };
        let n = perms.len();
        Self::from_fn(
            n,
            |a, b| {
                let c: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
                index(&c)
            },
            &[0],
        )
        .expect("symmetric group")
    }

    /// Direct product with the product topology; `(g, h)` has index
    /// `g * |H| + h`.
    pub fn direct_product(g: &FiniteTopGroup, h: &FiniteTopGroup) -> Self {
        let m = h.order;
        let open: Vec<usize> = g
            .open
            .iter()
            .flat_map(|&x| h.open.iter().map(move |&y| x * m + y))
            .collect();
        Self::from_fn(
            g.order * m,
            |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m),
            &open,
        )
        .expect("direct product")
    }

    /// Same group with a different open normal subgroup.
    pub fn with_open_subgroup(&self, open: &[usize]) -> Result<Self> {
        for &x in open {
            if x >= self.order {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: self.order,
                });
            }
        }
        Self::assemble(
            self.order,
            self.table.clone(),
            open.to_vec(),
            (0..self.order).collect(),
        )
    }

    pub fn discrete(&self) -> Self {
        self.with_open_subgroup(&[0]).expect("discrete topology")
    }

    pub fn indiscrete(&self) -> Self {
        self.with_open_subgroup(&self.elements().collect::<Vec<_>>())
            .expect("indiscrete topology")
    }

    pub fn into_ref(self) -> GroupRef {
        Arc::new(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g^-1`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    /// `g h g^-1 h^-1`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.conj(g, h), self.inverse[h])
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn cayley(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// The open normal subgroup `N_topo`.
    pub fn open_subgroup(&self) -> &[usize] {
        &self.open
    }

    #[inline]
    pub fn in_open_subgroup(&self, x: usize) -> bool {
        self.open_mask[x]
    }

    /// `x` and `y` lie in the same coset of the open subgroup.
    #[inline]
    pub fn same_open_coset(&self, x: usize, y: usize) -> bool {
        self.open_mask[self.mul(self.inverse[x], y)]
    }

    pub fn is_discrete(&self) -> bool {
        self.open.len() == 1
    }

    pub fn is_indiscrete(&self) -> bool {
        self.open.len() == self.order
    }

    /// Whether a subset is open, i.e. a union of cosets of `N_topo`.
    pub fn is_open_set(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.order];
        for &x in set {
            mask[x] = true;
        }
        set.iter()
            .all(|&x| self.open.iter().all(|&n| mask[self.mul(x, n)]))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Raw label this element had in the table passed to [`validate_group`].
    pub fn original_label(&self, x: usize) -> usize {
        self.labels[x]
    }

    /// Index of the element that carried raw label `raw` before validation.
    pub fn from_original(&self, raw: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == raw)
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        self.check_subgroup(set).is_ok()
    }

    pub fn check_subgroup(&self, set: &[usize]) -> Result<()> {
        let mut mask = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: self.order,
                });
            }
            mask[x] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup { a: 0, b: 0 });
        }
        for &a in set {
            if !mask[self.inv(a)] {
                return Err(Error::NotSubgroup { a, b: a });
            }
            for &b in set {
                if !mask[self.mul(a, b)] {
                    return Err(Error::NotSubgroup { a, b });
                }
            }
        }
        Ok(())
    }

    pub fn check_normal(&self, set: &[usize]) -> Result<()> {
        self.check_subgroup(set)?;
        let mut mask = vec![false; self.order];
        for &x in set {
            mask[x] = true;
        }
        for &n in set {
            for g in self.elements() {
                if !mask[self.conj(g, n)] {
                    return Err(Error::NotNormal {
                        element: n,
                        conjugator: g,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        self.check_normal(set).is_ok()
    }

    /// Subgroup generated by `gens`, as a sorted list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Greedy generating sequence: repeatedly adjoin the least element not
    /// yet generated.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        while span.len() < self.order {
            let next = self
                .elements()
                .find(|x| span.binary_search(x).is_err())
                .expect("missing element");
            gens.push(next);
            span = self.generated_subgroup(&gens);
        }
        gens
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let comms: BTreeSet<usize> = self
            .elements()
            .flat_map(|g| self.elements().map(move |h| (g, h)))
            .map(|(g, h)| self.commutator(g, h))
            .collect();
        self.generated_subgroup(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Every subgroup, sorted by (order, elements).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = self
            .elements()
            .map(|x| self.generated_subgroup(&[x]))
            .collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let mut gens = a.clone();
                    gens.extend(b.iter().copied());
                    if found.insert(self.generated_subgroup(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups()
            .into_iter()
            .filter(|s| self.is_normal(s))
            .collect()
    }

    /// The subgroup on `elements` as a group in its own right, with the
    /// subspace topology.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        self.check_subgroup(elements)?;
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let mut index = vec![None; self.order];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = Some(i);
        }
        let m = elements.len();
        let table: Vec<usize> = (0..m * m)
            .map(|k| index[self.mul(elements[k / m], elements[k % m])].expect("closed"))
            .collect();
        let open: Vec<usize> = elements
            .iter()
            .enumerate()
            .filter(|(_, &x)| self.open_mask[x])
            .map(|(i, _)| i)
            .collect();
        let group = Self::assemble(m, table, open, (0..m).collect())?;
        Ok(Subgroup {
            group: Arc::new(group),
            elements,
            index,
        })
    }

    /// `G/N` with the quotient topology (open subgroup `N_topo N / N`).
    pub fn quotient_by(&self, normal: &[usize]) -> Result<Quotient> {
        self.check_normal(normal)?;
        let mut coset_of = vec![usize::MAX; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = normal.iter().map(|&n| self.mul(g, n)).collect();
            coset.sort_unstable();
            coset.dedup();
            for &x in &coset {
                coset_of[x] = cosets.len();
            }
            cosets.push(coset);
        }
        let m = cosets.len();
        let table: Vec<usize> = (0..m * m)
            .map(|k| coset_of[self.mul(cosets[k / m][0], cosets[k % m][0])])
            .collect();
        let open: BTreeSet<usize> = self.open.iter().map(|&x| coset_of[x]).collect();
        let group = Self::assemble(m, table, open.into_iter().collect(), (0..m).collect())?;
        Ok(Quotient {
            group: Arc::new(group),
            coset_of,
            cosets,
        })
    }
}

/// A subgroup realised as a group, with its embedding.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: GroupRef,
    /// `elements[i]` is the ambient index of subgroup element `i`.
    pub elements: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl Subgroup {
    /// Subgroup index of an ambient element, if it belongs to the subgroup.
    pub fn index_of(&self, ambient: usize) -> Option<usize> {
        self.index.get(ambient).copied().flatten()
    }

    pub fn contains(&self, ambient: usize) -> bool {
        self.index_of(ambient).is_some()
    }
}

/// A quotient group with its projection. Cosets are ordered by their least
/// element, so the identity coset is `0`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: GroupRef,
    pub coset_of: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
}

impl Quotient {
    /// Least element of a coset, used as its representative.
    pub fn representative(&self, coset: usize) -> usize {
        self.cosets[coset][0]
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
