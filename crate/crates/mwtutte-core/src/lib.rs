//! Exact-arithmetic toolkit around the Tutte polynomial and the
//! permutation Tutte polynomial of bipartite graphs.
//!
//! The crate has three layers:
//!
//! * combinatorial containers and families ([`graphs`], [`matroids`]),
//! * exact polynomial computation ([`poly`], [`tutte`], [`permtutte`]),
//! * inequality certification and asymptotics ([`certify`], [`asymptotics`]):
//!   rational (and quadratic-field) sweeps that certify product inequalities
//!   such as `T_M(2.355,0)·T_M(0,2.355) ≥ T_M(1,1)²` for matroids without
//!   loops and coloops.
//!
//! All certificate arithmetic is exact: decimal parameters are parsed to
//! rationals, never to binary floats. Monte Carlo estimators use a
//! counter-based generator so results are reproducible for any worker count.

pub mod asymptotics;
pub mod bigfloat;
pub mod certify;
pub mod error;
pub mod graphs;
pub mod io;
pub mod matroids;
pub mod mc;
pub mod permtutte;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod sqrt5;
pub mod tutte;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Initializes the global worker pool, honoring the `MW_THREADS` environment
/// variable. Call once at process start; later calls are no-ops.
pub fn init_worker_pool() {
    let builder = match std::env::var("MW_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new().num_threads(n),
        _ => rayon::ThreadPoolBuilder::new(),
    };
    // Errors only when a global pool already exists, which is fine.
    let _ = builder.build_global();
}
