//! Worker-pool plumbing.
//!
//! Orbit exploration parallelizes across initial words; results are
//! merged in source order so output never depends on the worker count.
//! The `CALANG_THREADS` environment variable caps the pool size.

pub const THREADS_ENV: &str = "CALANG_THREADS";

/// Thread count requested via `CALANG_THREADS`, if any.
pub fn env_threads() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.parse().ok()
}

/// Runs `f` inside a rayon pool of `n` threads.
pub fn with_threads<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Runs `f` under the `CALANG_THREADS` cap when set, otherwise in the
/// default pool.
pub fn with_env_threads<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match env_threads() {
        Some(n) if n > 0 => with_threads(n, f),
        _ => f(),
    }
}
