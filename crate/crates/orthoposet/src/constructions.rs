//! Builders for the concrete structures: the divisibility families P_{nk},
//! balanced families, intervals, direct products, star sublattices,
//! orthogonal closures, and the figure fixtures.

use crate::bits::Bits;
use crate::blocks::{self, SubKind, SubStructure};
use crate::error::{Error, Result};
use crate::io;
use crate::ortho::OrthoPoset;
use crate::poset::{ElementSet, FinitePoset, MAX_ELEMENTS};
use std::collections::HashMap;

pub const MAX_GROUND: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Subsets with cardinality divisible by k.
    Pnk { k: u32 },
    /// Subsets meeting two blocks in equally many points.
    Balanced { x_mask: u32, y_mask: u32 },
    Custom,
}

/// An orthoposet whose elements are subsets of {1..n} ordered by inclusion
/// with set complementation. Members are kept in canonical order
/// (cardinality, then numeric mask value) alongside the generic poset view.
pub struct SubsetFamily {
    ground: u32,
    kind: FamilyKind,
    members: Vec<u32>,
    position: HashMap<u32, usize>,
    view: OrthoPoset,
}

impl SubsetFamily {
    pub fn from_members(ground: u32, mut members: Vec<u32>, kind: FamilyKind) -> Result<Self> {
        if !(1..=MAX_GROUND).contains(&ground) {
            return Err(Error::BadParameters(format!(
                "ground size {ground} outside 1..={MAX_GROUND}"
            )));
        }
        let full: u32 = if ground == 32 { !0 } else { (1 << ground) - 1 };
        members.sort_unstable_by_key(|&m| (m.count_ones(), m));
        members.dedup();
        if members.len() > MAX_ELEMENTS {
            return Err(Error::SizeExceeded(members.len(), MAX_ELEMENTS));
        }
        if members.iter().any(|&m| m & !full != 0) {
            return Err(Error::BadParameters("member outside the ground set".into()));
        }
        if !members.contains(&0) || !members.contains(&full) {
            return Err(Error::BadParameters(
                "family must contain the empty set and the full set".into(),
            ));
        }
        for &m in &members {
            if !members.contains(&(full & !m)) {
                return Err(Error::BadParameters(format!(
                    "family is not closed under complement at {{{}}}",
                    io::subset_token(m)
                )));
            }
        }
        let position: HashMap<u32, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let labels: Vec<String> = members.iter().map(|&m| io::subset_token(m)).collect();
        let ms = members.clone();
        let poset = FinitePoset::from_leq(labels, |i, j| ms[i] & !ms[j] == 0)?;
        let inv: Vec<usize> = members.iter().map(|&m| position[&(full & !m)]).collect();
        let view = OrthoPoset::new(poset, inv)?;
        let fam = SubsetFamily { ground, kind, members, position, view };
        #[cfg(debug_assertions)]
        fam.verify_construction();
        Ok(fam)
    }

    #[cfg(debug_assertions)]
    fn verify_construction(&self) {
        // Orthogonality is disjointness, and the two order representations agree.
        for i in 0..self.len() {
            for j in 0..self.len() {
                debug_assert_eq!(
                    self.view.poset().leq(i, j),
                    self.members[i] & !self.members[j] == 0
                );
                debug_assert_eq!(
                    self.view.orthogonal(i, j),
                    self.members[i] & self.members[j] == 0
                );
            }
        }
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.members[i]
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn index_of_mask(&self, mask: u32) -> Option<usize> {
        self.position.get(&mask).copied()
    }

    pub fn view(&self) -> &OrthoPoset {
        &self.view
    }

    /// ↔ by the divisibility criterion |A∩B| ≡ 0 (mod k); only available on
    /// divisibility families, cross-checked against the generic search on
    /// small instances.
    pub fn arrow_fast(&self, i: usize, j: usize) -> Option<bool> {
        let FamilyKind::Pnk { k } = self.kind else { return None };
        let holds = (self.members[i] & self.members[j]).count_ones() % k == 0;
        #[cfg(debug_assertions)]
        if self.len() <= 64 {
            debug_assert_eq!(
                holds,
                crate::commutation::arrow_search(&self.view, i, j).is_some(),
                "arrow fast path disagrees with the generic search"
            );
        }
        Some(holds)
    }
}

/// P_{nk}: all subsets of {1..n} with cardinality divisible by k.
pub fn build_pnk(n: u32, k: u32) -> Result<SubsetFamily> {
    if k == 0 || n == 0 || n % k != 0 {
        return Err(Error::BadDivisor(k, n));
    }
    if n > MAX_GROUND {
        return Err(Error::SizeExceeded(n as usize, MAX_GROUND as usize));
    }
    let members: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() % k == 0).collect();
    if members.len() > MAX_ELEMENTS {
        return Err(Error::SizeExceeded(members.len(), MAX_ELEMENTS));
    }
    let fam = SubsetFamily::from_members(n, members, FamilyKind::Pnk { k })?;
    debug_assert!(fam.view().is_orthomodular(), "P_nk must be orthomodular");
    Ok(fam)
}

/// Subsets meeting the two blocks equally: {A : |A∩X| = |A∩Y|}.
pub fn build_balanced(x_block: &[u32], y_block: &[u32]) -> Result<SubsetFamily> {
    if x_block.is_empty() || x_block.len() != y_block.len() {
        return Err(Error::BadPartition);
    }
    let n = (x_block.len() + y_block.len()) as u32;
    if n > MAX_GROUND {
        return Err(Error::SizeExceeded(n as usize, MAX_GROUND as usize));
    }
    let mut x_mask = 0u32;
    let mut y_mask = 0u32;
    for (&pt, mask) in x_block
        .iter()
        .map(|p| (p, &mut x_mask))
        .chain(y_block.iter().map(|p| (p, &mut y_mask)))
    {
        if pt == 0 || pt > n {
            return Err(Error::BadPartition);
        }
        *mask |= 1 << (pt - 1);
    }
    let full = (1u32 << n) - 1;
    if x_mask & y_mask != 0 || x_mask | y_mask != full {
        return Err(Error::BadPartition);
    }
    let members: Vec<u32> = (0..=full)
        .filter(|m| (m & x_mask).count_ones() == (m & y_mask).count_ones())
        .collect();
    SubsetFamily::from_members(n, members, FamilyKind::Balanced { x_mask, y_mask })
}

/// The interval [a,b] with involution x⁺ = (x'∨a)∧b; requires an orthomodular
/// ambient. The Theorem-4 identity (x'∨a)∧b = (x'∧b)∨a is verified for every
/// element, as is orthomodularity of the result.
pub fn interval_orthoposet(
    o: &OrthoPoset,
    a: usize,
    b: usize,
) -> Result<(OrthoPoset, Vec<usize>)> {
    let p = o.poset();
    if !p.leq(a, b) {
        return Err(Error::NotComparable(o.label(a).into(), o.label(b).into()));
    }
    if !o.is_orthomodular() {
        return Err(Error::NotOrthomodular);
    }
    let elems = ElementSet::from_bits(Bits::and(p.up_cone_of(a), p.down_cone_of(b)));
    let (sub, back) = p.induced_subposet(&elems)?;
    let pos: HashMap<usize, usize> = back.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut inv = Vec::with_capacity(back.len());
    for &x in &back {
        let xc = o.complement(x);
        let lhs = p
            .join(xc, a)
            .and_then(|j| p.meet(j, b))
            .ok_or_else(|| Error::IdentityViolation(o.label(x).into()))?;
        let rhs = p
            .meet(xc, b)
            .and_then(|m| p.join(m, a))
            .ok_or_else(|| Error::IdentityViolation(o.label(x).into()))?;
        if lhs != rhs {
            return Err(Error::IdentityViolation(o.label(x).into()));
        }
        inv.push(pos[&lhs]);
    }
    let interval = OrthoPoset::new(sub, inv)?;
    if !interval.is_orthomodular() {
        return Err(Error::InternalInconsistency(
            "interval of an orthomodular poset must be orthomodular".into(),
        ));
    }
    Ok((interval, back))
}

/// Componentwise product with labels `(<p>,<q>)`.
pub fn direct_product(a: &OrthoPoset, b: &OrthoPoset) -> Result<OrthoPoset> {
    let (ma, mb) = (a.len(), b.len());
    if ma.saturating_mul(mb) > MAX_ELEMENTS {
        return Err(Error::SizeExceeded(ma * mb, MAX_ELEMENTS));
    }
    let mut labels = Vec::with_capacity(ma * mb);
    for i in 0..ma {
        for j in 0..mb {
            labels.push(format!("({},{})", a.label(i), b.label(j)));
        }
    }
    let (pa, pb) = (a.poset(), b.poset());
    let poset = FinitePoset::from_leq(labels, |u, v| {
        pa.leq(u / mb, v / mb) && pb.leq(u % mb, v % mb)
    })?;
    let inv: Vec<usize> = (0..ma * mb)
        .map(|u| a.complement(u / mb) * mb + b.complement(u % mb))
        .collect();
    OrthoPoset::new(poset, inv)
}

/// The star P_A = {C : C ⊇ A or C ⊆ A'} of a k-subset A inside P_{3k,k}.
pub fn star_sublattice(family: &SubsetFamily, a_mask: u32) -> Result<SubStructure> {
    let FamilyKind::Pnk { k } = family.kind() else {
        return Err(Error::BadParameters("star requires a P_nk family".into()));
    };
    if family.ground() != 3 * k {
        return Err(Error::BadParameters(format!(
            "star requires n = 3k, found n = {}, k = {k}",
            family.ground()
        )));
    }
    if a_mask.count_ones() != k || family.index_of_mask(a_mask).is_none() {
        return Err(Error::BadParameters("star atom must be a k-subset member".into()));
    }
    let full = (1u32 << family.ground()) - 1;
    let a_comp = full & !a_mask;
    let mut bits = Bits::new(family.len());
    for (i, &m) in family.members().iter().enumerate() {
        if m & a_mask == a_mask || m & !a_comp == 0 {
            bits.insert(i);
        }
    }
    let elements = ElementSet::from_bits(bits);
    #[cfg(debug_assertions)]
    {
        let binom = |n: u32, r: u32| -> usize {
            let mut acc = 1usize;
            for i in 0..r as usize {
                acc = acc * (n as usize - i) / (i + 1);
            }
            acc
        };
        debug_assert_eq!(elements.count(), 4 + 2 * binom(2 * k, k));
        debug_assert!(blocks::is_sub_ortholattice(family.view(), &elements).is_ok());
        let (ext, complete) =
            blocks::sub_ortholattice_extension(family.view(), &elements, 10_000_000);
        debug_assert!(complete && ext.is_none(), "star must be maximal");
    }
    Ok(SubStructure { kind: SubKind::SubOrtholattice, elements, maximal: true })
}

/// Least superset of seed ∪ {0,1} closed under the involution and under joins
/// of orthogonal pairs.
pub fn ortho_closure(o: &OrthoPoset, seed: &ElementSet) -> ElementSet {
    let p = o.poset();
    let mut s = seed.bits().clone();
    s.insert(o.bottom());
    s.insert(o.top());
    loop {
        let mut changed = false;
        let snapshot: Vec<usize> = s.iter().collect();
        for &x in &snapshot {
            let xc = o.complement(x);
            if !s.contains(xc) {
                s.insert(xc);
                changed = true;
            }
        }
        let snapshot: Vec<usize> = s.iter().collect();
        for &x in &snapshot {
            for &y in &snapshot {
                if o.orthogonal(x, y) {
                    if let Some(j) = p.join(x, y) {
                        if !s.contains(j) {
                            s.insert(j);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return ElementSet::from_bits(s);
        }
    }
}

pub const FIXTURE_NAMES: [&str; 5] = ["fig1", "o6", "fig6", "fig7", "example3"];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig1" => include_str!("../fixtures/fig1.txt"),
        "o6" => include_str!("../fixtures/o6.txt"),
        "fig6" => include_str!("../fixtures/fig6.txt"),
        "fig7" => include_str!("../fixtures/fig7.txt"),
        "example3" => include_str!("../fixtures/example3.txt"),
        _ => return None,
    })
}

/// One of the bundled figure structures, bit-exact against its frozen file.
pub fn load_fixture(name: &str) -> Result<OrthoPoset> {
    let text = fixture_text(name).ok_or_else(|| Error::UnknownFixture(name.into()))?;
    io::parse_orthoposet(text)?.into_ortho()
}
