//! Polarization of node- and edge-weighted networks.
//!
//! A network carries group masses on its nodes and direct distances on its
//! edges. Polarization is measured by the `P_α` family
//! `K · Σ_i Σ_j π_i^(1+α) π_j d(i,j)` over geodesic distances, with `α = 1`
//! the member pinned down by the merge, shift and dissolution axioms.
//!
//! ```
//! use netpolar::{build_complete_uniform, geodesic_distances, polarization, MeasureParams};
//!
//! let net = build_complete_uniform(&[1.0, 1.0, 1.0]).unwrap();
//! let p = polarization(&net, &MeasureParams::default(), &geodesic_distances(&net)).unwrap();
//! assert_eq!(p.value, 6.0);
//! ```

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha_bounds;
pub mod axioms;
pub mod builders;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod io;
pub mod measures;

pub use alpha_bounds::{
    admissible_interval, alpha_lower, alpha_upper, f_eval, lemma1_witness, v_eval, AlphaInterval,
    Lemma1Witness,
};
pub use axioms::{
    check_axiom1, check_axiom2, check_axiom3, run_suite, AxiomKind, AxiomReport, AxiomScenario,
    AxiomVerdict, DissolveScenario, MergeScenario, Sampler, ShiftScenario,
};
pub use builders::{
    build_complete_uniform, build_cosponsorship, build_lattice, build_line, build_parties,
    build_preference_kemeny, build_representatives, build_vote_hypercube, Ballot, MassPoint,
    MassPoints, Norm, PreferenceProfile, TieRule, VoteMatrix,
};
pub use error::{Error, Result};
pub use extremal::{
    bipolar_distribution, counterexample_search, diameter_dominance_check, merge_reduction,
    verify_bipolar_max, CounterexampleReport, ExtremalReport,
};
pub use graph::{
    average_path_length, delete_edge, delete_node, diameter, geodesic_distances, scale_masses,
    validate_network, DistanceMatrix, Edge, Network, RawEdge, RawNetwork, RawNode,
    ValidateOptions,
};
pub use measures::{
    bipolar_value, normalized_polarization, polarization, polarization_naive_oracle,
    MeasureParams, MeasureResult,
};
