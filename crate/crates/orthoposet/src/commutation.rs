//! The relations Δ, ↔ and C, the generalized commutator d(a,b), centrality,
//! and the central-element factorization.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::ortho::OrthoPoset;
use crate::poset::ElementSet;

/// a Δ b iff U(a) = U(L(a,b), L(a,b')). Directional: never symmetrized.
pub fn delta(o: &OrthoPoset, a: usize, b: usize) -> bool {
    let p = o.poset();
    let mut s = Bits::and(p.down_rank(a), p.down_rank(b));
    s.union_with(&Bits::and(p.down_rank(a), p.down_rank(o.complement(b))));
    let holds = p.upper_bounds_r(&s) == *p.up_rank(a);
    debug_assert_eq!(holds, delta_primed(o, a, b), "primed form of Δ disagrees");
    holds
}

/// The equivalent primed form L(a') = L(U(a',b), U(a',b')).
pub fn delta_primed(o: &OrthoPoset, a: usize, b: usize) -> bool {
    let p = o.poset();
    let ac = o.complement(a);
    let mut s = Bits::and(p.up_rank(ac), p.up_rank(b));
    s.union_with(&Bits::and(p.up_rank(ac), p.up_rank(o.complement(b))));
    p.lower_bounds_r(&s) == *p.down_rank(ac)
}

/// a ↔ b iff a = c∨d and b = d∨e for some pairwise orthogonal c, d, e.
/// Exhaustive with pruning d ∈ L(a,b), c ∈ L(a,d'), e ∈ L(b,d'); the first
/// witness in (d, c, e) ascending index order is returned.
pub fn arrow(o: &OrthoPoset, a: usize, b: usize) -> Result<Option<(usize, usize, usize)>> {
    if let Some((x, y)) = o.orthogonality_witness() {
        return Err(Error::NotOrthogonal(o.label(x).into(), o.label(y).into()));
    }
    Ok(arrow_search(o, a, b))
}

pub(crate) fn arrow_search(o: &OrthoPoset, a: usize, b: usize) -> Option<(usize, usize, usize)> {
    let p = o.poset();
    let lab = Bits::and(p.down_cone_of(a), p.down_cone_of(b));
    for d in lab.iter() {
        let dc = o.complement(d);
        let lad = Bits::and(p.down_cone_of(a), p.down_cone_of(dc));
        let lbd = Bits::and(p.down_cone_of(b), p.down_cone_of(dc));
        for c in lad.iter() {
            if p.join(c, d) != Some(a) {
                continue;
            }
            let cc = o.complement(c);
            for e in lbd.iter() {
                if p.leq(e, cc) && p.join(d, e) == Some(b) {
                    return Some((c, d, e));
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CVerdict {
    Holds,
    Fails,
    Undefined,
}

/// a C b iff a = (a∧b)∨(a∧b'); Undefined when one of the meets or the join
/// does not exist.
pub fn c_relation(o: &OrthoPoset, a: usize, b: usize) -> CVerdict {
    let p = o.poset();
    let Some(m1) = p.meet(a, b) else { return CVerdict::Undefined };
    let Some(m2) = p.meet(a, o.complement(b)) else { return CVerdict::Undefined };
    match p.join(m1, m2) {
        None => CVerdict::Undefined,
        Some(j) if j == a => CVerdict::Holds,
        Some(_) => CVerdict::Fails,
    }
}

/// The up-set d(a,b) = U(L(a,b), L(a,b'), L(a',b), L(a',b')) with its minimal
/// elements cached; reports print only the minimal elements.
pub struct CommutatorSet {
    pub pair: (usize, usize),
    pub upset: ElementSet,
    pub minimal: ElementSet,
}

impl CommutatorSet {
    /// d(a,b) = {1}.
    pub fn is_one(&self, o: &OrthoPoset) -> bool {
        self.upset.count() == 1 && self.upset.contains(o.top())
    }

    pub fn display(&self, o: &OrthoPoset) -> String {
        let labels: Vec<&str> = self.minimal.iter().map(|i| o.label(i)).collect();
        format!(
            "d({},{}) = min{{ {} }}",
            o.label(self.pair.0),
            o.label(self.pair.1),
            labels.join(", ")
        )
    }
}

fn commutator_raw(o: &OrthoPoset, a: usize, b: usize) -> Bits {
    let p = o.poset();
    let (ac, bc) = (o.complement(a), o.complement(b));
    let mut s = Bits::and(p.down_rank(a), p.down_rank(b));
    s.union_with(&Bits::and(p.down_rank(a), p.down_rank(bc)));
    s.union_with(&Bits::and(p.down_rank(ac), p.down_rank(b)));
    s.union_with(&Bits::and(p.down_rank(ac), p.down_rank(bc)));
    p.upper_bounds_r(&s)
}

pub fn commutator_d(o: &OrthoPoset, a: usize, b: usize) -> CommutatorSet {
    let p = o.poset();
    let up_r = commutator_raw(o, a, b);
    #[cfg(debug_assertions)]
    {
        let (ac, bc) = (o.complement(a), o.complement(b));
        for (x, y) in [(b, a), (a, bc), (ac, b), (ac, bc)] {
            debug_assert_eq!(up_r, commutator_raw(o, x, y), "d symmetry alias broke");
        }
    }
    let upset = ElementSet::from_bits(p.rank_set_to_decl(&up_r));
    let minimal = p.minimal_elements(&upset);
    CommutatorSet { pair: (a, b), upset, minimal }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Delta,
    Arrow,
    CRelation,
}

impl std::str::FromStr for RelationKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "delta" => RelationKind::Delta,
            "arrow" => RelationKind::Arrow,
            "c" | "c-relation" => RelationKind::CRelation,
            _ => return Err(format!("unknown relation kind `{s}`")),
        })
    }
}

/// Full m×m table of one relation. The C table additionally records
/// undefined-operand cells.
pub struct RelationMatrix {
    pub kind: RelationKind,
    labels: Vec<String>,
    rows: Vec<Bits>,
    undefined: Option<Vec<Bits>>,
}

impl RelationMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn is_undefined(&self, i: usize, j: usize) -> bool {
        self.undefined.as_ref().is_some_and(|u| u[i].contains(j))
    }

    pub fn all_true(&self) -> bool {
        (0..self.len()).all(|i| self.rows[i].count() == self.len())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.holds(i, j) == self.holds(j, i)))
    }

    /// Header row of labels, then one `0`/`1` row per element (`u` marks an
    /// undefined C cell).
    pub fn to_tsv(&self) -> String {
        let mut s = self.labels.join("\t");
        s.push('\n');
        for i in 0..self.len() {
            let row: Vec<&str> = (0..self.len())
                .map(|j| {
                    if self.is_undefined(i, j) {
                        "u"
                    } else if self.holds(i, j) {
                        "1"
                    } else {
                        "0"
                    }
                })
                .collect();
            s.push_str(&row.join("\t"));
            s.push('\n');
        }
        s
    }
}

pub fn relation_matrix(o: &OrthoPoset, kind: RelationKind) -> Result<RelationMatrix> {
    let m = o.len();
    if kind == RelationKind::Arrow {
        if let Some((x, y)) = o.orthogonality_witness() {
            return Err(Error::NotOrthogonal(o.label(x).into(), o.label(y).into()));
        }
    }
    let mut rows = vec![Bits::new(m); m];
    let mut undefined = if kind == RelationKind::CRelation {
        Some(vec![Bits::new(m); m])
    } else {
        None
    };
    for i in 0..m {
        for j in 0..m {
            match kind {
                RelationKind::Delta => {
                    if delta(o, i, j) {
                        rows[i].insert(j);
                    }
                }
                RelationKind::Arrow => {
                    if arrow_search(o, i, j).is_some() {
                        rows[i].insert(j);
                    }
                }
                RelationKind::CRelation => match c_relation(o, i, j) {
                    CVerdict::Holds => rows[i].insert(j),
                    CVerdict::Fails => {}
                    CVerdict::Undefined => undefined.as_mut().unwrap()[i].insert(j),
                },
            }
        }
    }
    Ok(RelationMatrix {
        kind,
        labels: o.poset().labels().to_vec(),
        rows,
        undefined,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralViolation {
    /// x Δ c fails for this x.
    DeltaFails(usize),
    /// x∧c (or x∧c' when `with_complement`) does not exist.
    MeetMissing { x: usize, with_complement: bool },
}

/// c is central iff x Δ c for every x and all meets x∧c, x∧c' exist.
pub fn central_witness(o: &OrthoPoset, c: usize) -> Option<CentralViolation> {
    let p = o.poset();
    let cc = o.complement(c);
    for x in 0..o.len() {
        if !delta(o, x, c) {
            return Some(CentralViolation::DeltaFails(x));
        }
        if p.meet(x, c).is_none() {
            return Some(CentralViolation::MeetMissing { x, with_complement: false });
        }
        if p.meet(x, cc).is_none() {
            return Some(CentralViolation::MeetMissing { x, with_complement: true });
        }
    }
    None
}

pub fn is_central(o: &OrthoPoset, c: usize) -> bool {
    central_witness(o, c).is_none()
}

fn central_error(o: &OrthoPoset, c: usize, v: CentralViolation) -> Error {
    let x = match v {
        CentralViolation::DeltaFails(x) => x,
        CentralViolation::MeetMissing { x, .. } => x,
    };
    Error::NotCentral(o.label(c).into(), o.label(x).into())
}

/// Condition (1): for all x ≤ c and y ≤ c', x∨y is defined with
/// (x∨y)∧c = x and (x∨y)∧c' = y. Returns the first failing (x, y).
pub fn check_condition_1(o: &OrthoPoset, c: usize) -> Result<Option<(usize, usize)>> {
    if let Some(v) = central_witness(o, c) {
        return Err(central_error(o, c, v));
    }
    let p = o.poset();
    let cc = o.complement(c);
    for x in p.down_cone_of(c).iter() {
        for y in p.down_cone_of(cc).iter() {
            let Some(j) = p.join(x, y) else { return Ok(Some((x, y))) };
            if p.meet(j, c) != Some(x) || p.meet(j, cc) != Some(y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// The embedding f(x) = (x∧c, x∧c') of Theorem 5, with the two interval
/// factors materialized as orthoposets.
pub struct Factorization {
    pub lower: OrthoPoset,
    pub upper: OrthoPoset,
    /// factor index -> ambient index
    pub lower_back: Vec<usize>,
    pub upper_back: Vec<usize>,
    /// ambient x -> (index in lower, index in upper)
    pub map: Vec<(usize, usize)>,
    pub isomorphism: bool,
}

fn interval_below(o: &OrthoPoset, c: usize) -> Result<(OrthoPoset, Vec<usize>)> {
    let p = o.poset();
    let elems = ElementSet::from_bits(p.down_cone_of(c).clone());
    let (sub, back) = p.induced_subposet(&elems)?;
    let pos: std::collections::HashMap<usize, usize> =
        back.iter().enumerate().map(|(i, &amb)| (amb, i)).collect();
    let mut inv = Vec::with_capacity(back.len());
    for &amb in &back {
        let plus = p
            .meet(o.complement(amb), c)
            .ok_or_else(|| Error::EmbeddingCheckFailed(format!(
                "meet {}∧{} missing in [0,{}]",
                o.label(o.complement(amb)),
                o.label(c),
                o.label(c)
            )))?;
        inv.push(pos[&plus]);
    }
    let ortho = OrthoPoset::new(sub, inv)
        .map_err(|e| Error::EmbeddingCheckFailed(format!("interval is not an orthoposet: {e}")))?;
    Ok((ortho, back))
}

pub fn factorize(o: &OrthoPoset, c: usize) -> Result<Factorization> {
    if let Some(v) = central_witness(o, c) {
        return Err(central_error(o, c, v));
    }
    let p = o.poset();
    let cc = o.complement(c);
    let (lower, lower_back) = interval_below(o, c)?;
    let (upper, upper_back) = interval_below(o, cc)?;
    let lower_pos: std::collections::HashMap<usize, usize> =
        lower_back.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let upper_pos: std::collections::HashMap<usize, usize> =
        upper_back.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let mut map = Vec::with_capacity(o.len());
    for x in 0..o.len() {
        let mc = p.meet(x, c).expect("centrality provides x∧c");
        let mcc = p.meet(x, cc).expect("centrality provides x∧c'");
        map.push((lower_pos[&mc], upper_pos[&mcc]));
    }

    // Theorem 5(i): order-reflecting, injective, involution-compatible.
    let mut seen = std::collections::HashSet::new();
    for x in 0..o.len() {
        if !seen.insert(map[x]) {
            return Err(Error::EmbeddingCheckFailed(format!(
                "f is not injective at `{}`",
                o.label(x)
            )));
        }
    }
    for x in 0..o.len() {
        for y in 0..o.len() {
            let fx = map[x];
            let fy = map[y];
            let f_leq =
                lower.poset().leq(fx.0, fy.0) && upper.poset().leq(fx.1, fy.1);
            if f_leq != p.leq(x, y) {
                return Err(Error::EmbeddingCheckFailed(format!(
                    "f does not reflect order at ({}, {})",
                    o.label(x),
                    o.label(y)
                )));
            }
        }
        let fxc = map[o.complement(x)];
        let expect = (lower.complement(map[x].0), upper.complement(map[x].1));
        if fxc != expect {
            return Err(Error::EmbeddingCheckFailed(format!(
                "f({}') is not (f({}))'",
                o.label(x),
                o.label(x)
            )));
        }
    }

    // Theorem 5(ii): with condition (1) the map is an isomorphism with
    // inverse g(x,y) = x∨y.
    let isomorphism = if check_condition_1(o, c)?.is_none() {
        if o.len() != lower.len() * upper.len() {
            return Err(Error::EmbeddingCheckFailed(
                "condition (1) holds but sizes do not multiply out".into(),
            ));
        }
        for (u, &ua) in lower_back.iter().enumerate() {
            for (v, &va) in upper_back.iter().enumerate() {
                let j = p.join(ua, va).ok_or_else(|| {
                    Error::EmbeddingCheckFailed("g(x,y) = x∨y undefined".into())
                })?;
                if map[j] != (u, v) {
                    return Err(Error::EmbeddingCheckFailed(
                        "f(g(x,y)) ≠ (x,y)".into(),
                    ));
                }
            }
        }
        for x in 0..o.len() {
            let (u, v) = map[x];
            if p.join(lower_back[u], upper_back[v]) != Some(x) {
                return Err(Error::EmbeddingCheckFailed("g(f(x)) ≠ x".into()));
            }
        }
        true
    } else {
        false
    };

    Ok(Factorization { lower, upper, lower_back, upper_back, map, isomorphism })
}
