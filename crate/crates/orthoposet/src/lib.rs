//! Toolkit for finite orthoposets: build them from cover lists, subset
//! families or products, decide where they sit on the axiom ladder
//! (orthoposet / orthogonal / orthomodular / modular / distributive /
//! Boolean / weakly Boolean), compute the commutation relations Δ, ↔ and C
//! with the generalized commutator d(a,b), and enumerate Δ-blocks, maximal
//! Boolean subalgebras and maximal orthomodular sublattices — everything
//! exhaustively, at desk scale.

pub mod bits;
pub mod blocks;
pub mod commutation;
pub mod constructions;
pub mod error;
pub mod io;
pub mod ortho;
pub mod poset;
pub mod suite;

pub use blocks::{
    boolean_block_decomposition, delta_blocks, is_boolean_subalgebra, is_delta_block,
    is_sub_ortholattice, maximal_boolean_subalgebras, maximal_sub_ortholattices, SubKind,
    SubStructure, DEFAULT_BUDGET,
};
pub use commutation::{
    arrow, c_relation, central_witness, check_condition_1, commutator_d, delta, factorize,
    is_central, relation_matrix, CVerdict, CommutatorSet, RelationKind, RelationMatrix,
};
pub use constructions::{
    build_balanced, build_pnk, direct_product, interval_orthoposet, load_fixture,
    ortho_closure, star_sublattice, SubsetFamily, FIXTURE_NAMES,
};
pub use error::{Error, Result};
pub use ortho::{
    check_boolean, check_distributive, check_lattice, check_maximality_property, check_modular,
    check_orthogonal, check_orthomodular, check_orthoposet, check_weakly_boolean, find_o6,
    AxiomCheck, AxiomReport, O6Occurrence, OmpMethod, OrthoPoset,
};
pub use poset::{ClosureTag, ElementSet, FinitePoset, MAX_ELEMENTS};
