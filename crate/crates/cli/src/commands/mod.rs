pub mod classify;
pub mod graphs;
pub mod moments;
pub mod sample;
pub mod trees;
pub mod verify;

use graphsym::moments::{asymptotic_moments, exact_moments, rational_to_f64};

/// Largest `n` for which moments are evaluated in exact rationals; beyond it
/// the log-space forms are used.
pub const EXACT_MOMENT_LIMIT: usize = 2048;

/// `(E[C_n], Chebyshev lower bound on P[C_n >= 2])`, whichever are defined.
pub(crate) fn mean_and_bound(n: usize) -> (Option<f64>, Option<f64>) {
    if n < 4 {
        return (None, None);
    }
    if n <= EXACT_MOMENT_LIMIT {
        let m = exact_moments(n).expect("n >= 4");
        (Some(rational_to_f64(&m.e_cn)), m.chebyshev_bound_f64())
    } else {
        let m = asymptotic_moments(n).expect("n >= 7");
        (Some(m.e_cn), Some(m.chebyshev_bound))
    }
}

pub(crate) fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}
