//! Ordinary finite groups given by Cayley tables.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::Element;

/// A finite group on the carrier `0..size` with a row-major Cayley table.
///
/// Construction checks the Latin-square property, locates the identity,
/// computes inverses and checks associativity exhaustively, so every value
/// of this type is a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<Element>,
    identity: Element,
    inverse: Vec<Element>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    pub fn from_table(size: usize, table: Vec<Element>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidTable("carrier must be non-empty".into()));
        }
        if table.len() != size * size {
            return Err(Error::InvalidTable(format!(
                "binary table for size {size} needs {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { element: bad, size });
        }
        check_latin(size, &table)?;

        let identity = (0..size)
            .find(|&e| (0..size).all(|x| table[e * size + x] == x && table[x * size + e] == x))
            .ok_or(Error::GroupAxiom {
                axiom: "identity",
                witness: vec![],
            })?;
        let mut inverse = vec![0; size];
        for (x, inv) in inverse.iter_mut().enumerate() {
            // Latin rows guarantee exactly one y with x*y = e.
            let y = (0..size)
                .find(|&y| table[x * size + y] == identity)
                .expect("latin row contains identity");
            if table[y * size + x] != identity {
                return Err(Error::GroupAxiom {
                    axiom: "two-sided inverse",
                    witness: vec![x, y],
                });
            }
            *inv = y;
        }
        for x in 0..size {
            for y in 0..size {
                let xy = table[x * size + y];
                for z in 0..size {
                    let yz = table[y * size + z];
                    if table[xy * size + z] != table[x * size + yz] {
                        return Err(Error::GroupAxiom {
                            axiom: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            size,
            table,
            identity,
            inverse,
            names: None,
        })
    }

    pub fn from_fn(size: usize, op: impl Fn(Element, Element) -> Element) -> Result<Self> {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                table.push(op(x, y));
            }
        }
        FiniteGroup::from_table(size, table)
    }

    /// The cyclic group Z_m written additively.
    pub fn cyclic(m: usize) -> Self {
        FiniteGroup::from_fn(m, |x, y| (x + y) % m).expect("Z_m is a group")
    }

    pub fn klein_four() -> Self {
        FiniteGroup::from_fn(4, |x, y| x ^ y).expect("Klein four-group")
    }

    /// S_3 as permutations of {0, 1, 2}, indexed in lexicographic order of
    /// their image arrays (index 0 is the identity, indices 3 and 4 are the
    /// 3-cycles, the rest are transpositions).
    pub fn symmetric3() -> Self {
        let perms = symmetric3_perms();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (p * q)(k) = p(q(k)): apply q first.
        let group =
            FiniteGroup::from_fn(6, |a, b| index(perms[b].map(|k| perms[a][k]))).expect("S_3");
        let names = perms
            .iter()
            .map(|p| format!("[{}{}{}]", p[0], p[1], p[2]))
            .collect();
        group.with_names(names)
    }

    /// Cartesian product with element (a, b) at index `a * other.size + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.size;
        FiniteGroup::from_fn(self.size * m, |x, y| {
            self.op(x / m, y / m) * m + other.op(x % m, y % m)
        })
        .expect("product of groups")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.size {
            self.names = Some(names);
        }
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: Element, y: Element) -> Element {
        self.table[x * self.size + y]
    }

    #[inline]
    pub fn identity(&self) -> Element {
        self.identity
    }

    #[inline]
    pub fn inverse(&self, x: Element) -> Element {
        self.inverse[x]
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn pow(&self, x: Element, k: usize) -> Element {
        (0..k).fold(self.identity, |acc, _| self.op(acc, x))
    }

    pub fn order_of(&self, x: Element) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.op(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == self.op(y, x)))
    }

    /// The subgroup generated by `gens`, by closure under right multiplication.
    pub fn generated_subgroup(&self, gens: &[Element]) -> ElementSet {
        let mut seen = ElementSet::empty(self.size);
        seen.insert(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// A small generating set, chosen greedily: repeatedly add the element of
    /// largest order (least index on ties) outside the current span.
    pub fn generating_set(&self) -> Vec<Element> {
        let orders: Vec<usize> = (0..self.size).map(|x| self.order_of(x)).collect();
        let mut gens = Vec::new();
        let mut span = self.generated_subgroup(&gens);
        while !span.is_full() {
            let next = (0..self.size)
                .filter(|&x| !span.contains(x))
                .max_by_key(|&x| (orders[x], std::cmp::Reverse(x)))
                .expect("span is proper");
            gens.push(next);
            span = self.generated_subgroup(&gens);
        }
        gens
    }

    /// Checks that `map` is a bijective endomorphism. Returns a witness on
    /// failure: `[x]` for a repeated image, `[x, y]` for a broken product.
    pub fn automorphism_witness(&self, map: &[Element]) -> Option<Vec<Element>> {
        if map.len() != self.size {
            return Some(vec![]);
        }
        let mut hit = vec![false; self.size];
        for (x, &y) in map.iter().enumerate() {
            if y >= self.size || hit[y] {
                return Some(vec![x]);
            }
            hit[y] = true;
        }
        for x in 0..self.size {
            for y in 0..self.size {
                if map[self.op(x, y)] != self.op(map[x], map[y]) {
                    return Some(vec![x, y]);
                }
            }
        }
        None
    }

    /// All automorphisms as image arrays, in lexicographic order.
    pub fn automorphisms(&self) -> Vec<Vec<Element>> {
        let mut out = Vec::new();
        IsoSearch::new(self, self).run(&mut |m| {
            out.push(m.to_vec());
            true
        });
        out.sort();
        out
    }

    /// The subgroup on `members` (which must be closed under the operation),
    /// re-indexed densely in increasing order of the original indices.
    pub fn subgroup(&self, members: &ElementSet) -> Result<FiniteGroup> {
        let elems = members.to_vec();
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for &x in &elems {
            for &y in &elems {
                let p = pos[self.op(x, y)];
                if p == usize::MAX {
                    return Err(Error::GroupAxiom {
                        axiom: "closure",
                        witness: vec![x, y],
                    });
                }
                table.push(p);
            }
        }
        FiniteGroup::from_table(elems.len(), table)
    }

    /// Checks that `map: self -> target` is a homomorphism; returns the first
    /// failing pair.
    pub fn homomorphism_witness(
        &self,
        target: &FiniteGroup,
        map: &[Element],
    ) -> Option<(Element, Element)> {
        for x in 0..self.size {
            for y in 0..self.size {
                if map[self.op(x, y)] != target.op(map[x], map[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

fn check_latin(size: usize, table: &[Element]) -> Result<()> {
    let mut seen = vec![usize::MAX; size];
    for r in 0..size {
        for c in 0..size {
            let v = table[r * size + c];
            if seen[v] == r {
                return Err(Error::GroupAxiom {
                    axiom: "latin square (row)",
                    witness: vec![r, c],
                });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..size {
        for r in 0..size {
            let v = table[r * size + c];
            if seen[v] == c {
                return Err(Error::GroupAxiom {
                    axiom: "latin square (column)",
                    witness: vec![r, c],
                });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

pub(crate) fn symmetric3_perms() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// Returns an isomorphism `a -> b` as an image array, if one exists.
///
/// Backtracks over images of a generating set of `a`, restricted to elements
/// of matching order; each partial assignment is propagated to the subgroup
/// it generates and pruned on the first inconsistency.
pub fn groups_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<Element>> {
    if a.size != b.size || order_profile(a) != order_profile(b) {
        return None;
    }
    let mut found = None;
    IsoSearch::new(a, b).run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut orders: Vec<usize> = (0..g.size).map(|x| g.order_of(x)).collect();
    orders.sort_unstable();
    orders
}

struct IsoSearch<'a> {
    a: &'a FiniteGroup,
    b: &'a FiniteGroup,
    gens: Vec<Element>,
    b_orders: Vec<usize>,
}

const UNSET: Element = usize::MAX;

impl<'a> IsoSearch<'a> {
    fn new(a: &'a FiniteGroup, b: &'a FiniteGroup) -> Self {
        IsoSearch {
            a,
            b,
            gens: a.generating_set(),
            b_orders: (0..b.size).map(|x| b.order_of(x)).collect(),
        }
    }

    /// Calls `visit` on every isomorphism until it returns false.
    fn run(&self, visit: &mut dyn FnMut(&[Element]) -> bool) {
        if self.a.size != self.b.size {
            return;
        }
        let mut map = vec![UNSET; self.a.size];
        map[self.a.identity] = self.b.identity;
        let mut used = vec![false; self.b.size];
        used[self.b.identity] = true;
        let mut images = Vec::with_capacity(self.gens.len());
        self.extend(&mut images, &map, &used, visit);
    }

    fn extend(
        &self,
        images: &mut Vec<Element>,
        map: &[Element],
        used: &[bool],
        visit: &mut dyn FnMut(&[Element]) -> bool,
    ) -> bool {
        let k = images.len();
        if k == self.gens.len() {
            return if map.iter().all(|&v| v != UNSET) {
                visit(map)
            } else {
                true
            };
        }
        let g = self.gens[k];
        let want = self.a.order_of(g);
        for cand in 0..self.b.size {
            if self.b_orders[cand] != want {
                continue;
            }
            if map[g] != UNSET && map[g] != cand {
                continue;
            }
            images.push(cand);
            let mut m = map.to_vec();
            let mut u = used.to_vec();
            if self.propagate(images, &mut m, &mut u) && !self.extend(images, &m, &u, visit) {
                return false;
            }
            images.pop();
        }
        true
    }

    /// Closes the partial map under right multiplication by the assigned
    /// generators; false on a clash or a non-injective image.
    fn propagate(&self, images: &[Element], map: &mut [Element], used: &mut [bool]) -> bool {
        let mut queue: VecDeque<Element> = (0..self.a.size).filter(|&x| map[x] != UNSET).collect();
        while let Some(x) = queue.pop_front() {
            for (i, &img) in images.iter().enumerate() {
                let z = self.a.op(x, self.gens[i]);
                let w = self.b.op(map[x], img);
                if map[z] == UNSET {
                    if used[w] {
                        return false;
                    }
                    map[z] = w;
                    used[w] = true;
                    queue.push_back(z);
                } else if map[z] != w {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_iso(a: &FiniteGroup, b: &FiniteGroup, m: &[Element]) -> bool {
        let mut seen = vec![false; b.size()];
        for &y in m {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        a.homomorphism_witness(b, m).is_none()
    }

    #[test]
    fn cyclic_group_basics() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.identity(), 0);
        assert_eq!(z4.inverse(1), 3);
        assert_eq!(z4.order_of(2), 2);
        assert_eq!(z4.generating_set(), vec![1]);
    }

    #[test]
    fn z4_not_isomorphic_to_klein() {
        assert!(groups_isomorphic(&FiniteGroup::cyclic(4), &FiniteGroup::klein_four()).is_none());
    }

    #[test]
    fn z2_isomorphic_to_itself_by_identity() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(groups_isomorphic(&z2, &z2), Some(vec![0, 1]));
    }

    #[test]
    fn z6_isomorphic_to_z2_times_z3() {
        let a = FiniteGroup::cyclic(6);
        let b = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        let m = groups_isomorphic(&a, &b).expect("CRT");
        assert!(is_iso(&a, &b, &m));
        assert!(groups_isomorphic(&FiniteGroup::symmetric3(), &a).is_none());
    }

    // Brute force over all permutations, independent of the backtracking.
    fn brute_force_automorphisms(g: &FiniteGroup) -> Vec<Vec<Element>> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut out: Vec<_> = perms(g.size())
            .into_iter()
            .filter(|p| g.automorphism_witness(p).is_none())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(5),
            FiniteGroup::cyclic(8),
            FiniteGroup::klein_four(),
            FiniteGroup::symmetric3(),
        ] {
            assert_eq!(g.automorphisms(), brute_force_automorphisms(&g));
        }
        assert_eq!(FiniteGroup::symmetric3().automorphisms().len(), 6);
        assert_eq!(FiniteGroup::klein_four().automorphisms().len(), 6);
        assert_eq!(FiniteGroup::cyclic(8).automorphisms().len(), 4);
    }

    #[test]
    fn non_latin_table_rejected_with_witness() {
        let err = FiniteGroup::from_table(2, vec![0, 0, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::GroupAxiom { witness, .. } if !witness.is_empty()));
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // x*y = x - y mod 3 is a Latin square without associativity.
        let err = FiniteGroup::from_fn(3, |x, y| (x + 3 - y) % 3).unwrap_err();
        assert!(matches!(err, Error::GroupAxiom { .. }));
    }

    #[test]
    fn s3_is_non_abelian() {
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
        assert_eq!(s3.order_of(3), 3);
        assert_eq!(s3.order_of(1), 2);
        assert_eq!(s3.generating_set().len(), 2);
    }

    #[test]
    fn subgroup_extraction() {
        let z8 = FiniteGroup::cyclic(8);
        let h = z8.generated_subgroup(&[2]);
        assert_eq!(h.to_vec(), vec![0, 2, 4, 6]);
        let sub = z8.subgroup(&h).unwrap();
        assert!(groups_isomorphic(&sub, &FiniteGroup::cyclic(4)).is_some());
    }
}
