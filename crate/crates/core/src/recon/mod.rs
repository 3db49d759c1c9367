pub mod count;
pub mod degseq;
pub mod regime;

pub use count::{
    estimate_edges, infer_degree_bound, recognize_avg_degree, reconstruct_clique_count, reconstruct_clique_count_with,
    reconstruct_edge_count, CliqueReference, CountMethod, EdgeEstimate, ReconTrace,
};
pub use degseq::{
    build_partition, estimate_st, find_zero_window, reconstruct_degree_sequence, CardPartition, DegSeqOptions,
    DegSeqPath, DegSeqState, Provenance, StEstimator, WindowRule, ZeroWindow,
};
pub use regime::{binomial, regime_check, RegimeCheck, Theorem};
