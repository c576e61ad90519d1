//! Combinatorics of extended affine Weyl groups: admissible sets, Ekedahl-Oort
//! elements, Newton points, σ-Coxeter elements and the classification of
//! basic loci of Coxeter type.

pub mod affweyl;
pub mod classify;
pub mod eo;
pub mod error;
pub mod newton;
pub mod rootdata;

pub use affweyl::{AffElement, BruhatMemo, Coord, Letter, Side, Word, MAX_DIM};
pub use error::{Error, Result};
pub use newton::{newton_point, newton_order, is_sigma_straight, CoordSystem, NewtonOrder, NewtonPoint};
pub use rootdata::{DiagramAuto, Family, LatticeModel, NodeSet, OmegaElement, Root, RootDatum};
pub use eo::{
    admissible_set, bedard_sequence, eo_set, i_jwsigma, is_sigma_coxeter, leq_j_sigma,
    reduce_partial_conjugation, supp_sigma, EoData, EoRecord, LambdaSpec, Quadruple,
};
pub use classify::{
    basic_locus_eo, check_conditions, closure_poset, newton_table, smoothness_report,
    strata_index_set, sweep, verify_witness, BasicLabel, ClassificationVerdict, IndexVariant,
    StratumDatum, WitnessStatus,
};
