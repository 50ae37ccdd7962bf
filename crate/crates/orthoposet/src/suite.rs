//! The executable property suite: every lemma- and theorem-level invariant,
//! gated on the proven class of the structure it runs against, plus the
//! bundled corpus driver behind `verify --all-fixtures`.

use crate::blocks::{self, SubKind};
use crate::commutation::{self, arrow_search, c_relation, commutator_d, delta, delta_primed, CVerdict};
use crate::constructions::{self, FamilyKind, SubsetFamily};
use crate::io::Structure;
use crate::ortho::{self, OrthoPoset};
use crate::poset::{ElementSet, FinitePoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl PropertyOutcome {
    fn pass(name: &str) -> Self {
        PropertyOutcome { name: name.into(), status: Status::Pass, detail: String::new() }
    }

    fn fail(name: &str, detail: String) -> Self {
        PropertyOutcome { name: name.into(), status: Status::Fail, detail }
    }

    fn skip(name: &str, why: &str) -> Self {
        PropertyOutcome { name: name.into(), status: Status::Skip, detail: why.into() }
    }

    pub fn line(&self) -> String {
        let s = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        };
        format!("{}\t{}\t{}", self.name, s, self.detail)
    }
}

/// Per-suite size caps. Quantifier costs grow like m³ (cone identities) or
/// worse (↔ searches), so the heavier suites only run below these bounds.
pub struct SuiteCaps {
    pub triple: usize,
    pub arrow: usize,
    pub blocks: usize,
    pub budget: u64,
}

impl Default for SuiteCaps {
    fn default() -> Self {
        SuiteCaps { triple: 256, arrow: 128, blocks: 64, budget: blocks::DEFAULT_BUDGET }
    }
}

fn lbl(o: &OrthoPoset, xs: &[usize]) -> String {
    xs.iter().map(|&i| o.label(i)).collect::<Vec<_>>().join(",")
}

/// Runs every applicable invariant and returns one outcome per property.
pub fn run_structure_suite(s: &Structure, caps: &SuiteCaps) -> Vec<PropertyOutcome> {
    let o = s.ortho();
    let m = o.len();
    let mut out = Vec::new();

    // class detection, reported first
    let orthogonal = o.is_orthogonal();
    let orthomodular = o.is_orthomodular();
    let lattice = ortho::check_lattice(o.poset()).passed();
    let dist = ortho::distributive_forms(o.poset());
    let distributive = dist.verdicts.iter().all(|&v| v);
    let modular = ortho::check_modular(o.poset()).passed();
    out.push(PropertyOutcome::pass(&format!(
        "class(orthogonal={orthogonal},orthomodular={orthomodular},lattice={lattice},modular={modular},distributive={distributive})"
    )));

    galois_suite(o, &mut out);
    cone_join_suite(o, &mut out);
    covers_roundtrip(o, &mut out);
    lemma3_suite(o, &mut out);
    delta_primed_suite(o, &mut out);
    lemma10i_suite(o, &mut out);
    lemma9_suite(o, &mut out);
    dist_modular_agreement(o, &dist, modular, distributive, &mut out);
    ladder_witness_replay(o, &mut out);
    block_d_one(o, caps, &mut out);

    if lattice {
        lemma1_suite(o, &mut out);
    } else {
        out.push(PropertyOutcome::skip("lemma1-delta-iff-c", "not a lattice"));
    }

    if orthogonal {
        omp_methods_agree(o, &mut out);
        lemma8_property(o, modular, orthomodular, &mut out);
        prop7_blocks_orthomodular(o, caps, &mut out);
    } else {
        out.push(PropertyOutcome::skip("omp-methods-agree", "not orthogonal"));
        out.push(PropertyOutcome::skip("lemma8-modular-implies-omp", "not orthogonal"));
        out.push(PropertyOutcome::skip("prop7-blocks-orthomodular", "not orthogonal"));
    }

    if orthomodular {
        if m <= caps.arrow {
            lemma2_suite(o, &mut out);
            lemma4_suite(o, &mut out);
        } else {
            out.push(PropertyOutcome::skip("lemma2-arrow", "size above arrow cap"));
            out.push(PropertyOutcome::skip("lemma4-arrow-delta-d", "size above arrow cap"));
        }
        lemma6_suite(o, &mut out);
        lemma7_suite(o, &mut out);
        if m <= caps.triple {
            theorem4_intervals(o, &mut out);
        } else {
            out.push(PropertyOutcome::skip("theorem4-intervals", "size above triple cap"));
        }
        if m <= caps.blocks {
            theorem3_blocks(o, caps, &mut out);
        } else {
            out.push(PropertyOutcome::skip("theorem3-blocks-boolean", "size above blocks cap"));
        }
    } else {
        for name in [
            "lemma2-arrow",
            "lemma4-arrow-delta-d",
            "lemma6-c-joins",
            "lemma7-delta-upper",
            "theorem4-intervals",
            "theorem3-blocks-boolean",
        ] {
            out.push(PropertyOutcome::skip(name, "not orthomodular"));
        }
    }

    if m <= caps.blocks {
        lemma10_boolean_subalgebras(o, caps, &mut out);
        prop8ii_sublattices_in_blocks(o, caps, &mut out);
    } else {
        out.push(PropertyOutcome::skip("lemma10-boolean-subalgebras", "size above blocks cap"));
        out.push(PropertyOutcome::skip("prop8ii-sublattice-in-block", "size above blocks cap"));
    }

    if let Structure::Family(f) = s {
        family_suite(f, caps, &mut out);
    }

    out
}

fn galois_suite(o: &OrthoPoset, out: &mut Vec<PropertyOutcome>) {
    let p = o.poset();
    let m = p.len();
    let mut sets: Vec<ElementSet> = vec![ElementSet::empty(m), p.full_set()];
    for x in 0..m {
        sets.push(ElementSet::from_indices(m, &[x]));
        for y in x + 1..m {
            sets.push(ElementSet::from_indices(m, &[x, y]));
        }
    }
    for a in &sets {
        let l = p.lower_cone(a);
        let u = p.upper_cone(a);
        // down-closure of L, up-closure of U
        for x in l.iter() {
            for y in p.down_cone_of(x).iter() {
                if !l.contains(y) {
                    out.push(PropertyOutcome::fail(
                        "galois-laws",
                        format!("L not down-closed at {}", p.label(x)),
                    ));
                    return;
                }
            }
        }
        for x in u.iter() {
            for y in p.up_cone_of(x).iter() {
                if !u.contains(y) {
                    out.push(PropertyOutcome::fail(
                        "galois-laws",
                        format!("U not up-closed at {}", p.label(x)),
                    ));
                    return;
                }
            }
        }
        // A ⊆ UL(A), A ⊆ LU(A), LUL = L, ULU = U
        let ul = p.upper_cone(&l);
        let lu = p.lower_cone(&u);
        let ok = a.bits().is_subset(lu.bits())
            && a.bits().is_subset(ul.bits())
            && p.lower_cone(&ul) == l
            && p.upper_cone(&lu) == u;
        if !ok {
            out.push(PropertyOutcome::fail(
                "galois-laws",
                format!("Galois law fails on {{{}}}", lbl(o, &a.indices())),
            ));
            return;
        }
    }
    // antitonicity on nested pairs: A ⊆ B ⇒ L(B) ⊆ L(A)
    for x in 0..m {
        for y in 0..m {
            let small = ElementSet::from_indices(m, &[x]);
            let big = ElementSet::from_indices(m, &[x, y]);
            if !p.lower_cone(&big).bits().is_subset(p.lower_cone(&small).bits())
                || !p.upper_cone(&big).bits().is_subset(p.upper_cone(&small).bits())
            {
                out.push(PropertyOutcome::fail(
                    "galois-laws",
                    format!("antitonicity fails on {},{}", p.label(x), p.label(y)),
                ));
                return;
            }
        }
    }
    out.push(PropertyOutcome::pass("galois-laws"));
}

fn cone_join_suite(o: &OrthoPoset, out: &mut Vec<PropertyOutcome>) {
    let p = o.poset();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if let Some(z) = p.join(x, y) {
                let u = p.upper_cone(&ElementSet::from_indices(p.len(), &[x, y]));
                if u.bits() != p.up_cone_of(z) {
                    out.push(PropertyOutcome::fail(
                        "join-meet-cones",
                        format!("U({},{}) ≠ U({})", p.label(x), p.label(y), p.label(z)),
                    ));
                    return;
                }
            }
            if let Some(z) = p.meet(x, y) {
                let l = p.lower_cone(&ElementSet::from_indices(p.len(), &[x, y]));
                if l.bits() != p.down_cone_of(z) {
                    out.push(PropertyOutcome::fail(
                        "join-meet-cones",
                        format!("L({},{}) ≠ L({})", p.label(x), p.label(y), p.label(z)),
                    ));
                    return;
                }
            }
        }
    }
    out.push(PropertyOutcome::pass("join-meet-cones"));
}

fn covers_roundtrip(o: &OrthoPoset, out: &mut Vec<PropertyOutcome>) {
    let p = o.poset();
    let covers: Vec<(String, String)> = p
        .covers()
        .iter()
        .map(|&(x, y)| (p.label(x as usize).into(), p.label(y as usize).into()))
        .collect();
    match FinitePoset::build_from_covers(p.labels().to_vec(), &covers) {
        Ok(q) => {
            let same = (0..p.len()).all(|i| p.up_cone_of(i) == q.up_cone_of(i))
                && p.covers() == q.covers();
            if same {
                out.push(PropertyOutcome::pass("covers-roundtrip"));
            } else {
                out.push(PropertyOutcome::fail("covers-roundtrip", "orders differ".into()));
            }
        }
        Err(e) => out.push(PropertyOutcome::fail("covers-roundtrip", e.to_string())),
    }
}

fn lemma3_suite(o: &OrthoPomset_placeholder, out: &mut Vec<PropertyOutcome>) {}

fn delta_primed_suite(o: &OrthoPoset, out: &mut Vec<PropertyOutcome>) {
    for a in 0..o.len() {
        for b in 0..o.len() {
            if delta(o, a, b) != delta_primed(o, a, b) {
                out.push(PropertyOutcome::fail(
                    "delta-primed-form",
                    format!("forms disagree on ({})", lbl(o, &[a, b])),
                ));
                return;
            }
        }
    }
    out.push(PropertyOutcome::pass("delta-primed-form"));
}
