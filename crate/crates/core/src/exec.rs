use std::ops::Range;

/// Execution strategy for the data-parallel loops of the crate.
///
/// `Parallel` uses the rayon global pool when the `parallel` feature is
/// enabled and silently degrades to `Sequential` otherwise, so callers never
/// need their own `cfg` gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `f(i)` for every `i` in `range`, results in index order.
    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// `f(x)` for every item of `items`, results in slice order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let seq = Exec::Sequential.map_range(0..100, |i| i * i);
        let par = Exec::Parallel.map_range(0..100, |i| i * i);
        assert_eq!(seq, par);
        let words = ["a", "bb", "ccc"];
        assert_eq!(Exec::Parallel.map_slice(&words, |w| w.len()), vec![1, 2, 3]);
    }
}
