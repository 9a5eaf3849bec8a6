//! Case fan-out for the verification suites.
//!
//! With the `parallel` feature (the default) independent cases run on the
//! rayon pool; results always come back in case order. The sequential
//! entry point stays available for benchmarking the two paths against
//! each other.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over the cases, in parallel when the `parallel` feature is on.
/// Output order matches input order regardless of completion order.
pub fn run_cases<I, O, F>(cases: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        cases.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_cases_seq(cases, f)
    }
}

/// Sequential fallback, also used as the baseline in benches.
pub fn run_cases_seq<I, O, F>(cases: Vec<I>, f: F) -> Vec<O>
where
    F: Fn(I) -> O,
{
    cases.into_iter().map(f).collect()
}

/// Build the global rayon pool with an explicit worker count (from the
/// `RIBBON_PIERI_THREADS` environment variable). A no-op if the pool is
/// already initialized or the feature is off.
pub fn configure_workers_from_env() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(v) = std::env::var("RIBBON_PIERI_THREADS") {
            if let Ok(threads) = v.parse::<usize>() {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
