//! Execution policy for the data-parallel loops (grid scans, sample populations).
//!
//! With the `parallel` feature the work is spread over the rayon pool; without it
//! every policy runs sequentially. Results are always returned in index order, so
//! the output never depends on the schedule.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `(0..n).map(f).collect()`, in parallel when enabled.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_policies_agree_and_keep_order() {
        let f = |i: usize| (i as f64).sqrt();
        let seq = Exec::Sequential.map_range(1000, f);
        let par = Exec::Parallel.map_range(1000, f);
        assert_eq!(seq, par);
        assert_eq!(seq[9], 3.0);
    }
}
