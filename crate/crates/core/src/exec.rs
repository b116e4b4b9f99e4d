//! Execution policy for the data-parallel loops (a-scans, cross-check grids,
//! sweeps over cut-off radii).
//!
//! With the `parallel` feature (default) `Exec::Parallel` maps over a rayon
//! pool. Without it, every policy runs sequentially. Either way the output
//! order matches the input order, so results are bit-identical between the
//! two policies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this policy will actually fan out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Ordered map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Ordered map over `0..n`.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree_and_keep_order() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 * 0.37).collect();
        let seq = Exec::Sequential.map(&xs, |x| x.sin() * x.exp().ln_1p());
        let par = Exec::Parallel.map(&xs, |x| x.sin() * x.exp().ln_1p());
        assert_eq!(seq, par);
        let r = Exec::Parallel.map_range(17, |i| i * i);
        assert_eq!(r, (0..17).map(|i| i * i).collect::<Vec<_>>());
    }
}
