//! Finite bounded posets with precomputed cone bit sets and the `L`/`U`
//! operators everything else is defined through.
//!
//! Cones are stored twice: once indexed by declaration order (the public
//! index space) and once with bit positions permuted into a fixed linear
//! extension. The second copy makes join/meet and minimal/maximal-element
//! extraction O(words): in a linear extension the lowest set bit of an
//! up-set is a minimal element, and an up-set has a minimum z exactly when
//! it is contained in the cone of z.

use crate::bits::{and_subset_of, first_common, last_common, Bits};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::OnceLock;

/// Hard cap on element count; every structure in this crate is desk-scale.
pub const MAX_ELEMENTS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureTag {
    None,
    DownClosed,
    UpClosed,
}

/// A subset of a poset's elements, reported in ascending index order.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    bits: Bits,
    tag: ClosureTag,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { bits: Bits::new(universe), tag: ClosureTag::None }
    }

    pub fn from_bits(bits: Bits) -> Self {
        ElementSet { bits, tag: ClosureTag::None }
    }

    pub fn from_indices(universe: usize, indices: &[usize]) -> Self {
        let mut bits = Bits::new(universe);
        for &i in indices {
            bits.insert(i);
        }
        ElementSet { bits, tag: ClosureTag::None }
    }

    pub(crate) fn tagged(bits: Bits, tag: ClosureTag) -> Self {
        ElementSet { bits, tag }
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn tag(&self) -> ClosureTag {
        self.tag
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.tag = ClosureTag::None;
        self.bits.insert(i);
    }

    pub fn count(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.iter().collect()
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.bits.fmt(f)
    }
}

pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// up[i] = { j : i ≤ j }, bits in declaration order.
    up: Vec<Bits>,
    /// down[i] = { j : j ≤ i }, bits in declaration order.
    down: Vec<Bits>,
    /// Linear extension: tau[r] = element at rank r, rank[i] = rank of element i.
    tau: Vec<u32>,
    rank: Vec<u32>,
    /// Cones with bit positions in rank space.
    up_r: Vec<Bits>,
    down_r: Vec<Bits>,
    bottom: Option<usize>,
    top: Option<usize>,
    covers: OnceLock<Vec<(u32, u32)>>,
    heights: OnceLock<Vec<u32>>,
}

impl FinitePoset {
    /// Builds a poset as the reflexive-transitive closure of a cover relation.
    /// Cycles are detected during the topological sort.
    pub fn build_from_covers<S: AsRef<str>>(
        labels: Vec<String>,
        covers: &[(S, S)],
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::BadParameters("poset needs at least one element".into()));
        }
        if m > MAX_ELEMENTS {
            return Err(Error::SizeExceeded(m, MAX_ELEMENTS));
        }
        let mut index = HashMap::with_capacity(m);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        for (x, y) in covers {
            let &ix = index.get(x.as_ref()).ok_or_else(|| Error::UnknownLabel(x.as_ref().into()))?;
            let &iy = index.get(y.as_ref()).ok_or_else(|| Error::UnknownLabel(y.as_ref().into()))?;
            if ix == iy {
                return Err(Error::CycleDetected(labels[ix].clone()));
            }
            succ[ix].push(iy);
            indeg[iy] += 1;
        }
        // Kahn topological sort; leftover in-degrees mean a cycle.
        let mut queue: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(m);
        while let Some(u) = queue.pop() {
            topo.push(u);
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        if topo.len() != m {
            let culprit = (0..m).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::CycleDetected(labels[culprit].clone()));
        }
        // up-cones by bit-or propagation in reverse topological order
        let mut up = vec![Bits::new(m); m];
        for &u in topo.iter().rev() {
            up[u].insert(u);
            let mut acc = up[u].clone();
            for &v in &succ[u] {
                acc.union_with(&up[v]);
            }
            up[u] = acc;
        }
        Self::from_cones(labels, index, up)
    }

    /// Builds a poset from an arbitrary order predicate, validating the
    /// partial-order axioms.
    pub fn from_leq<F: Fn(usize, usize) -> bool>(labels: Vec<String>, leq: F) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::BadParameters("poset needs at least one element".into()));
        }
        if m > MAX_ELEMENTS {
            return Err(Error::SizeExceeded(m, MAX_ELEMENTS));
        }
        let mut index = HashMap::with_capacity(m);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut up = vec![Bits::new(m); m];
        for i in 0..m {
            for j in 0..m {
                if leq(i, j) {
                    up[i].insert(j);
                }
            }
        }
        for i in 0..m {
            if !up[i].contains(i) {
                return Err(Error::NotPartialOrder(format!("not reflexive at `{}`", labels[i])));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotPartialOrder(format!(
                        "antisymmetry fails on `{}`, `{}`",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotPartialOrder(format!(
                        "transitivity fails above `{}` via `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Self::from_cones(labels, index, up)
    }

    fn from_cones(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<Bits>) -> Result<Self> {
        let m = labels.len();
        let mut down = vec![Bits::new(m); m];
        for i in 0..m {
            for j in up[i].iter() {
                down[j].insert(i);
            }
        }
        // |down| strictly grows along the order, so a stable sort on it is a
        // linear extension.
        let mut tau: Vec<u32> = (0..m as u32).collect();
        tau.sort_by_key(|&i| (down[i as usize].count(), i));
        let mut rank = vec![0u32; m];
        for (r, &i) in tau.iter().enumerate() {
            rank[i as usize] = r as u32;
        }
        let mut up_r = vec![Bits::new(m); m];
        let mut down_r = vec![Bits::new(m); m];
        for i in 0..m {
            for j in up[i].iter() {
                up_r[i].insert(rank[j] as usize);
            }
            for j in down[i].iter() {
                down_r[i].insert(rank[j] as usize);
            }
        }
        let bottom = (0..m).find(|&i| up[i].count() == m);
        let top = (0..m).find(|&i| down[i].count() == m);
        Ok(FinitePoset {
            labels,
            index,
            up,
            down,
            tau,
            rank,
            up_r,
            down_r,
            bottom,
            top,
            covers: OnceLock::new(),
            heights: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn up_cone_of(&self, i: usize) -> &Bits {
        &self.up[i]
    }

    pub fn down_cone_of(&self, i: usize) -> &Bits {
        &self.down[i]
    }

    pub(crate) fn up_rank(&self, i: usize) -> &Bits {
        &self.up_r[i]
    }

    pub(crate) fn down_rank(&self, i: usize) -> &Bits {
        &self.down_r[i]
    }

    pub(crate) fn rank_to_decl(&self, r: usize) -> usize {
        self.tau[r] as usize
    }

    pub(crate) fn decl_to_rank(&self, i: usize) -> usize {
        self.rank[i] as usize
    }

    pub(crate) fn decl_set_to_rank(&self, s: &Bits) -> Bits {
        let mut r = Bits::new(self.len());
        for i in s.iter() {
            r.insert(self.rank[i] as usize);
        }
        r
    }

    pub(crate) fn rank_set_to_decl(&self, s: &Bits) -> Bits {
        let mut d = Bits::new(self.len());
        for r in s.iter() {
            d.insert(self.tau[r] as usize);
        }
        d
    }

    /// L(A): common lower bounds; L(∅) is the whole poset.
    pub fn lower_cone(&self, a: &ElementSet) -> ElementSet {
        let mut r = Bits::full(self.len());
        for i in a.iter() {
            r.intersect_with(&self.down[i]);
        }
        ElementSet::tagged(r, ClosureTag::DownClosed)
    }

    /// U(A): common upper bounds; U(∅) is the whole poset.
    pub fn upper_cone(&self, a: &ElementSet) -> ElementSet {
        let mut r = Bits::full(self.len());
        for i in a.iter() {
            r.intersect_with(&self.up[i]);
        }
        ElementSet::tagged(r, ClosureTag::UpClosed)
    }

    /// U(S) for an arbitrary rank-space set, by intersecting the cones of its
    /// maximal elements only.
    pub(crate) fn upper_bounds_r(&self, set_r: &Bits) -> Bits {
        let mut result = Bits::full(self.len());
        let mut remaining = set_r.clone();
        while let Some(t) = remaining.last() {
            let e = self.tau[t] as usize;
            result.intersect_with(&self.up_r[e]);
            remaining.difference_with(&self.down_r[e]);
        }
        result
    }

    /// L(S) for an arbitrary rank-space set, via minimal elements.
    pub(crate) fn lower_bounds_r(&self, set_r: &Bits) -> Bits {
        let mut result = Bits::full(self.len());
        let mut remaining = set_r.clone();
        while let Some(t) = remaining.first() {
            let e = self.tau[t] as usize;
            result.intersect_with(&self.down_r[e]);
            remaining.difference_with(&self.up_r[e]);
        }
        result
    }

    /// Least upper bound, or None when U(x,y) is empty or has two or more
    /// minimal elements. Partiality is a normal value here.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let t = first_common(&self.up_r[x], &self.up_r[y])?;
        let z = self.tau[t] as usize;
        and_subset_of(&self.up_r[x], &self.up_r[y], &self.up_r[z]).then_some(z)
    }

    /// Greatest lower bound, dual to `join`.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let t = last_common(&self.down_r[x], &self.down_r[y])?;
        let z = self.tau[t] as usize;
        and_subset_of(&self.down_r[x], &self.down_r[y], &self.down_r[z]).then_some(z)
    }

    /// Join restricted to a subset: least upper bound within `s` under the
    /// induced order.
    pub(crate) fn join_within(&self, s_r: &Bits, x: usize, y: usize) -> Option<usize> {
        let mut u = Bits::and(&self.up_r[x], &self.up_r[y]);
        u.intersect_with(s_r);
        let t = u.first()?;
        let z = self.tau[t] as usize;
        u.is_subset(&self.up_r[z]).then_some(z)
    }

    pub(crate) fn meet_within(&self, s_r: &Bits, x: usize, y: usize) -> Option<usize> {
        let mut l = Bits::and(&self.down_r[x], &self.down_r[y]);
        l.intersect_with(s_r);
        let t = l.last()?;
        let z = self.tau[t] as usize;
        l.is_subset(&self.down_r[z]).then_some(z)
    }

    /// Elements of `s` with no strictly greater element in `s`.
    pub fn maximal_elements(&self, s: &ElementSet) -> ElementSet {
        let mut keep = Bits::new(self.len());
        let mut remaining = self.decl_set_to_rank(s.bits());
        while let Some(t) = remaining.last() {
            let e = self.tau[t] as usize;
            keep.insert(e);
            remaining.difference_with(&self.down_r[e]);
        }
        ElementSet::from_bits(keep)
    }

    /// Elements of `s` with no strictly smaller element in `s`.
    pub fn minimal_elements(&self, s: &ElementSet) -> ElementSet {
        let mut keep = Bits::new(self.len());
        let mut remaining = self.decl_set_to_rank(s.bits());
        while let Some(t) = remaining.first() {
            let e = self.tau[t] as usize;
            keep.insert(e);
            remaining.difference_with(&self.up_r[e]);
        }
        ElementSet::from_bits(keep)
    }

    /// Restriction of the order to `s`; returns the new poset and the mapping
    /// from new indices back to ambient ones.
    pub fn induced_subposet(&self, s: &ElementSet) -> Result<(FinitePoset, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let back: Vec<usize> = s.iter().collect();
        let labels = back.iter().map(|&i| self.labels[i].clone()).collect();
        let p = FinitePoset::from_leq(labels, |i, j| self.leq(back[i], back[j]))?;
        Ok((p, back))
    }

    /// Transitive reduction, sorted by (lower, upper) index.
    pub fn covers(&self) -> &[(u32, u32)] {
        self.covers.get_or_init(|| {
            let m = self.len();
            let mut cv = Vec::new();
            for i in 0..m {
                for j in self.up[i].iter() {
                    if j == i {
                        continue;
                    }
                    // i ⋖ j iff nothing lies strictly between
                    let mut between = Bits::and(&self.up[i], &self.down[j]);
                    between.remove(i);
                    between.remove(j);
                    if between.is_empty() {
                        cv.push((i as u32, j as u32));
                    }
                }
            }
            cv.sort_unstable();
            cv
        })
    }

    /// Longest-chain height of each element above the minimal elements.
    pub fn heights(&self) -> &[u32] {
        self.heights.get_or_init(|| {
            let m = self.len();
            let mut h = vec![0u32; m];
            for &i in &self.tau {
                let i = i as usize;
                let mut best = 0;
                for j in self.down[i].iter() {
                    if j != i {
                        best = best.max(h[j] + 1);
                    }
                }
                h[i] = best;
            }
            h
        })
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::from_bits(Bits::full(self.len()))
    }

    pub fn labels_of(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinitePoset({} elements)", self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinitePoset {
        FinitePoset::build_from_covers(vec!["0".into(), "1".into()], &[("0", "1")]).unwrap()
    }

    fn o6() -> FinitePoset {
        FinitePoset::build_from_covers(
            ["0", "a", "b'", "b", "a'", "1"].iter().map(|s| s.to_string()).collect(),
            &[("0", "a"), ("0", "b'"), ("a", "b"), ("b'", "a'"), ("b", "1"), ("a'", "1")],
        )
        .unwrap()
    }

    fn fig1() -> FinitePoset {
        FinitePoset::build_from_covers(
            ["0", "a", "b", "c", "d", "d'", "c'", "b'", "a'", "1"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            &[
                ("0", "a"), ("0", "b"), ("0", "c"), ("0", "d"),
                ("a", "d'"), ("a", "c'"), ("b", "d'"), ("b", "c'"),
                ("c", "b'"), ("c", "a'"), ("d", "b'"), ("d", "a'"),
                ("d'", "1"), ("c'", "1"), ("b'", "1"), ("a'", "1"),
            ],
        )
        .unwrap()
    }

    fn fig6() -> FinitePoset {
        FinitePoset::build_from_covers(
            ["0", "a", "b", "c", "d", "e", "e'", "d'", "c'", "b'", "a'", "1"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            &[
                ("0", "a"), ("0", "b"), ("0", "c"), ("0", "d"),
                ("a", "e"), ("b", "e"), ("c", "e'"), ("d", "e'"),
                ("a", "b'"), ("b", "a'"), ("c", "d'"), ("d", "c'"),
                ("e", "c'"), ("e", "d'"), ("e'", "a'"), ("e'", "b'"),
                ("d'", "1"), ("c'", "1"), ("b'", "1"), ("a'", "1"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_chain() {
        let p = chain2();
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.top(), Some(1));
        assert!(p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn cycle_detected() {
        let err = FinitePoset::build_from_covers(
            vec!["x".into(), "y".into()],
            &[("x", "y"), ("y", "x")],
        )
        .unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_)));
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        assert!(matches!(
            FinitePoset::build_from_covers(vec!["x".into(), "x".into()], &[("x", "x")]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            FinitePoset::build_from_covers(vec!["x".into()], &[("x", "z")]),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn empty_cone_is_everything() {
        let p = fig1();
        let all = p.lower_cone(&ElementSet::empty(p.len()));
        assert_eq!(all.count(), p.len());
        let all = p.upper_cone(&ElementSet::empty(p.len()));
        assert_eq!(all.count(), p.len());
    }

    #[test]
    fn fig1_cone_values() {
        let p = fig1();
        // L({d', a'}) = {0}
        let a = ElementSet::from_indices(
            p.len(),
            &[p.index_of("d'").unwrap(), p.index_of("a'").unwrap()],
        );
        let l = p.lower_cone(&a);
        assert_eq!(p.labels_of(&l), vec!["0"]);
        assert_eq!(l.tag(), ClosureTag::DownClosed);
    }

    #[test]
    fn o6_cones_and_joins() {
        let p = o6();
        let ua = p.upper_cone(&ElementSet::from_indices(p.len(), &[p.index_of("a").unwrap()]));
        assert_eq!(p.labels_of(&ua), vec!["a", "b", "1"]);
        // join(a, b') = 1 since U(a,b') = {1}
        let j = p.join(p.index_of("a").unwrap(), p.index_of("b'").unwrap());
        assert_eq!(j, Some(p.index_of("1").unwrap()));
    }

    #[test]
    fn fig6_join_a_d_undefined() {
        let p = fig6();
        // b' and c' are two different minimal upper bounds of a and d
        assert_eq!(p.join(p.index_of("a").unwrap(), p.index_of("d").unwrap()), None);
        let u = p.upper_cone(&ElementSet::from_indices(
            p.len(),
            &[p.index_of("a").unwrap(), p.index_of("d").unwrap()],
        ));
        let mins = p.minimal_elements(&u);
        assert_eq!(p.labels_of(&mins), vec!["c'", "b'"]);
    }

    #[test]
    fn maximal_elements_cases() {
        let p = fig1();
        let s = ElementSet::from_indices(p.len(), &[0]);
        assert_eq!(p.maximal_elements(&s).indices(), vec![0]);
        // maximal elements of U(a,d) in fig6 is the dual question, checked above
    }

    #[test]
    fn induced_subposet_chains() {
        let p = fig1();
        let idx = |l: &str| p.index_of(l).unwrap();
        let s = ElementSet::from_indices(
            p.len(),
            &[idx("0"), idx("a"), idx("c'"), idx("c"), idx("a'"), idx("1")],
        );
        let (q, back) = p.induced_subposet(&s).unwrap();
        assert_eq!(q.len(), 6);
        assert_eq!(back.len(), 6);
        let qi = |l: &str| q.index_of(l).unwrap();
        assert!(q.lt(qi("a"), qi("c'")));
        assert!(q.lt(qi("c"), qi("a'")));
        assert!(!q.leq(qi("a"), qi("c")) && !q.leq(qi("c"), qi("a")));
        assert!(!q.leq(qi("a"), qi("a'")) && !q.leq(qi("c'"), qi("c")));
        // cover extraction matches the two chains
        let cov: Vec<(String, String)> = q
            .covers()
            .iter()
            .map(|&(x, y)| (q.label(x as usize).into(), q.label(y as usize).into()))
            .collect();
        assert_eq!(cov.len(), 6);
        assert!(matches!(
            p.induced_subposet(&ElementSet::empty(p.len())),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn join_agrees_with_unique_minimal_upper_bound() {
        // on every fixture-ish poset: join(x,y)=z implies U(x,y) = U(z)
        for p in [fig1(), o6(), fig6()] {
            for x in 0..p.len() {
                for y in 0..p.len() {
                    if let Some(z) = p.join(x, y) {
                        let u = p.upper_cone(&ElementSet::from_indices(p.len(), &[x, y]));
                        let uz = p.upper_cone(&ElementSet::from_indices(p.len(), &[z]));
                        assert_eq!(u, uz);
                    }
                }
            }
        }
    }

    #[test]
    fn covers_round_trip() {
        for p in [fig1(), o6(), fig6()] {
            let covers: Vec<(String, String)> = p
                .covers()
                .iter()
                .map(|&(x, y)| (p.label(x as usize).into(), p.label(y as usize).into()))
                .collect();
            let q = FinitePoset::build_from_covers(p.labels().to_vec(), &covers).unwrap();
            for i in 0..p.len() {
                for j in 0..p.len() {
                    assert_eq!(p.leq(i, j), q.leq(i, j));
                }
            }
            assert_eq!(p.covers(), q.covers());
        }
    }

    #[test]
    fn size_cap() {
        let labels: Vec<String> = (0..MAX_ELEMENTS + 1).map(|i| format!("e{i}")).collect();
        let err = FinitePoset::build_from_covers(labels, &[] as &[(&str, &str)]).unwrap_err();
        assert!(matches!(err, Error::SizeExceeded(_, _)));
    }
}
