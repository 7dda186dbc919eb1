//! Brute-force oracles and the sweep suites built on them.

mod bfs;
mod sweeps;

pub use bfs::{min_factorization_length, CayleyBfs, OracleResult};
pub use sweeps::{
    base_monoid, cd_trial_seed, run_default, sweep_cd, sweep_characterizations, sweep_fix_lemma,
    sweep_heights, sweep_howie, sweep_power_monoids, sweep_predicates, sweep_quark_engine,
    sweep_transpositions, RowStatus, Suite, SweepFailure, SweepParams, SweepReport, SweepRow,
    CONJUGATION_MAX_DEGREE, DEFAULT_BASES, DEFAULT_SEED, FIX_LEMMA_MAX_DEGREE,
    IRREDUCIBLE_SCAN_MAX_DEGREE, ORACLE_SWEEP_MAX_DEGREE,
};
