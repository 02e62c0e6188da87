//! Word metrics on `Q` and conjugacy-norm brackets on `N`.

mod heisenberg;
mod norm;
mod qmetric;

pub use heisenberg::{
    heisenberg_eval, radius_for_z_powers, z_power_upper_bound, z_power_word, HeisenbergElement,
    HeisenbergOracle, MAX_RADIUS,
};
pub use norm::{
    n_norm_bfs_oracle, n_norm_upper, ConjugatorAlphabet, NormEstimate, NormMethod, NormMode,
    N_ORACLE_RADIUS_BUDGET,
};
pub use qmetric::{metric_for, q_geodesic, DehnBallMetric, FreeMetric, HeisenbergMetric, QMetric};
