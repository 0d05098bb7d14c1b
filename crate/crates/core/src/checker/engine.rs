// SPDX-License-Identifier: Apache-2.0

//! Law evaluation over a mixed-radix assignment grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::seq::{Element, Enumeration};
use crate::verdict::{Verdict, Witness};

/// One failed instance: bindings and both sides, rendered.
pub(crate) struct Failure {
    pub bindings: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

pub(crate) type Eval<'a> = Box<dyn Fn(&[usize]) -> Option<Failure> + Send + Sync + 'a>;

/// Exhaustive evaluation over a precomputed table: `Err(i)` is the first
/// failing point of the flattened grid.
pub(crate) type Fast<'a> = Box<dyn Fn() -> Result<(), u64> + Send + Sync + 'a>;

/// A closed universally quantified equation. Each metavariable ranges
/// over `0..dims[i]`; `eval` decodes the indices itself.
pub(crate) struct Law<'a> {
    pub name: String,
    pub dims: Vec<usize>,
    /// Whether the ranges cover the declared fragment completely.
    pub complete: bool,
    pub eval: Eval<'a>,
    pub fast: Option<Fast<'a>>,
}

impl<'a> Law<'a> {
    pub fn new(
        name: impl Into<String>,
        dims: Vec<usize>,
        complete: bool,
        eval: impl Fn(&[usize]) -> Option<Failure> + Send + Sync + 'a,
    ) -> Self {
        Law { name: name.into(), dims, complete, eval: Box::new(eval), fast: None }
    }

    pub fn with_fast(mut self, fast: impl Fn() -> Result<(), u64> + Send + Sync + 'a) -> Self {
        self.fast = Some(Box::new(fast));
        self
    }
}

/// A suite entry.
pub(crate) enum Entry<'a> {
    Grid(Law<'a>),
}

impl<'a> From<Law<'a>> for Entry<'a> {
    fn from(l: Law<'a>) -> Self {
        Entry::Grid(l)
    }
}

/// Compares and renders a failure when the sides differ.
pub(crate) fn eq_or<T: PartialEq + std::fmt::Debug>(
    lhs: T,
    rhs: T,
    bindings: impl FnOnce() -> Vec<(String, String)>,
) -> Option<Failure> {
    (lhs != rhs).then(|| Failure { bindings: bindings(), lhs: format!("{lhs:?}"), rhs: format!("{rhs:?}") })
}

/// `(name, value)` pair with the value rendered by `Debug`.
pub(crate) fn bind(name: &str, v: &impl std::fmt::Debug) -> (String, String) {
    (name.to_string(), format!("{v:?}"))
}

pub(crate) fn decode(mut i: u64, dims: &[usize]) -> Vec<usize> {
    // Last variable varies fastest, so the stream is lexicographic.
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = (i % d as u64) as usize;
        i /= d as u64;
    }
    out
}

/// A grid made of consecutive blocks of different shapes, flattened into
/// one dimension. Blocks are listed in stream order.
#[derive(Clone)]
pub(crate) struct Blocks {
    starts: Vec<u64>,
}

impl Blocks {
    pub fn new(sizes: impl IntoIterator<Item = u64>) -> Self {
        let mut starts = vec![0u64];
        for s in sizes {
            let last = *starts.last().expect("nonempty");
            starts.push(last.saturating_add(s));
        }
        Blocks { starts }
    }

    pub fn total(&self) -> u64 {
        *self.starts.last().expect("nonempty")
    }

    pub fn start(&self, b: usize) -> u64 {
        self.starts[b]
    }

    /// Block index and offset inside it.
    pub fn locate(&self, i: u64) -> (usize, u64) {
        let b = self.starts.partition_point(|&s| s <= i) - 1;
        (b, i - self.starts[b])
    }
}

/// `len` digits of `r` in base `base`, most significant first.
pub(crate) fn digits(mut r: u64, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (r % base as u64) as usize;
        r /= base as u64;
    }
    out
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub(crate) fn fingerprint(s: &str) -> String {
    format!("{:016x}", fnv1a(s))
}

/// Grid size up to which a tabulated law is run in full regardless of
/// the per-law cap.
pub const FAST_LIMIT: u64 = 1 << 32;

/// Runs one law: exhaustively when the grid has at most `cap` points,
/// otherwise on `cap` seeded draws. Tabulated laws run in full
/// up to `FAST_LIMIT`. The reported witness is the first
/// failure in stream order, so serial and parallel runs agree.
pub(crate) fn run_law(law: &Law<'_>, cap: usize, seed: u64) -> Verdict {
    let total = law.dims.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64));
    if total == Some(0) {
        return Verdict::pass(0, law.complete);
    }
    let limit = if law.fast.is_some() { (cap as u64).max(FAST_LIMIT) } else { cap as u64 };
    let exhaustive = matches!(total, Some(t) if t <= limit);
    let found = if let (true, Some(fast)) = (exhaustive, &law.fast) {
        fast().err().map(|i| {
            let a = decode(i, &law.dims);
            let f = (law.eval)(&a).expect("tabulated failure replays");
            (a, f)
        })
    } else if exhaustive {
        let t = total.unwrap_or(0);
        (0..t).into_par_iter().find_map_first(|i| {
            let a = decode(i, &law.dims);
            (law.eval)(&a).map(|f| (a, f))
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&law.name));
        let draws: Vec<Vec<usize>> =
            (0..cap).map(|_| law.dims.iter().map(|&d| rng.gen_range(0..d)).collect()).collect();
        draws.into_par_iter().find_map_first(|a| (law.eval)(&a).map(|f| (a, f)))
    };
    match found {
        Some((a, f)) => Verdict::fail(Witness::new(f.bindings, f.lhs, f.rhs).with_assignment(a)),
        None if exhaustive => Verdict::pass(total.unwrap_or(0), law.complete),
        None => Verdict::pass(cap as u64, false),
    }
}

/// Element pool for a suite: the enumeration when it is complete, else
/// seeded draws from the instance sampler when there is one.
pub(crate) fn pool<E: Element>(
    en: Enumeration<E>,
    budget: usize,
    seed: u64,
    sample: impl Fn(&mut ChaCha8Rng) -> Option<E>,
) -> (Vec<E>, bool) {
    if en.exhaustive {
        return (en.items, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = Vec::with_capacity(budget);
    for _ in 0..budget {
        match sample(&mut rng) {
            Some(x) => drawn.push(x),
            None => return (en.items, false),
        }
    }
    (drawn, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_is_lexicographic() {
        assert_eq!(decode(0, &[2, 3]), vec![0, 0]);
        assert_eq!(decode(1, &[2, 3]), vec![0, 1]);
        assert_eq!(decode(3, &[2, 3]), vec![1, 0]);
        assert_eq!(decode(5, &[2, 3]), vec![1, 2]);
    }

    #[test]
    fn blocks_locate() {
        let b = Blocks::new([3, 0, 2]);
        assert_eq!(b.total(), 5);
        assert_eq!(b.locate(0), (0, 0));
        assert_eq!(b.locate(3), (2, 0));
        assert_eq!(b.locate(4), (2, 1));
        assert_eq!(digits(5, 2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn first_failure_in_stream_order() {
        let law = Law::new("t", vec![4, 4], true, |a| {
            eq_or(a[0] * a[1] < 6, true, || vec![("a".into(), a[0].to_string()), ("b".into(), a[1].to_string())])
        });
        let v = run_law(&law, 1000, 0);
        assert_eq!(v.witness().unwrap().assignment, vec![2, 3]);
        let ok = Law::new("u", vec![3, 3], true, |_| None);
        assert_eq!(run_law(&ok, 9, 0), Verdict::PassExhaustive { count: 9 });
        assert_eq!(run_law(&ok, 8, 0), Verdict::PassSampled { count: 8 });
    }
}
