//! Grid sweeps over independent cases.
//!
//! With the `parallel` feature, [`Exec::Parallel`] fans work out on rayon's
//! global pool; without it every sweep runs on the calling thread. Output
//! order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run sweeps in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// First error in input order, if any.
pub fn try_all<T, E, F>(exec: Exec, items: &[T], f: F) -> Result<usize, E>
where
    T: Sync,
    E: Send,
    F: Fn(&T) -> Result<(), E> + Sync + Send,
{
    map(exec, items, f)
        .into_iter()
        .collect::<Result<Vec<()>, E>>()?;
    Ok(items.len())
}

/// All `(a, b)` with `a` in `xs` and `b` in `ys`, row-major.
pub fn grid<A: Copy, B: Copy>(
    xs: impl IntoIterator<Item = A>,
    ys: impl IntoIterator<Item = B> + Clone,
) -> Vec<(A, B)> {
    xs.into_iter()
        .flat_map(|a| ys.clone().into_iter().map(move |b| (a, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map(Exec::Sequential, &xs, |x| x * x);
        let par = map(Exec::Parallel, &xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[999], 998001);
    }

    #[test]
    fn first_error_wins() {
        let xs: Vec<i32> = (0..100).collect();
        let r = try_all(Exec::Parallel, &xs, |&x| {
            if x % 30 == 29 {
                Err(x)
            } else {
                Ok(())
            }
        });
        assert_eq!(r, Err(29));
        assert_eq!(try_all(Exec::Parallel, &xs, |_| Ok::<_, ()>(())), Ok(100));
    }

    #[test]
    fn grid_is_row_major() {
        assert_eq!(grid(1..=2, [7, 8]), vec![(1, 7), (1, 8), (2, 7), (2, 8)]);
    }
}
