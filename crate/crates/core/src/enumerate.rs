//! Fincke–Pohst enumeration of lattice (and lattice coset) vectors under an
//! exact Gram form.
//!
//! Pruning runs in `f64` on an LLL-reduced copy of the Gram with a relative
//! slack of 2^-40 on the bound. Every surviving leaf is re-checked in exact
//! integer arithmetic, so rounding can only cost time, never correctness.
//! The search splits into independent subtrees that run on the rayon pool;
//! results are merged in subtree order, so output does not depend on the
//! number of threads.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intmat::{int_to_rational, unimodular_inverse, IntMatrix};
use crate::matrix::{vec_mat, Matrix};
use crate::reduce::{lll_exact, quadratic_decomposition};
use crate::scalar::{sign_i128_sqrt2, FieldElement, QSqrt2, Rational};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const BOUND_SLACK: f64 = 1.0 / (1u64 << 40) as f64;
const RANGE_EPS: f64 = 1e-9;
const FLUSH_EVERY: u64 = 1 << 14;
// norm histograms indexed directly when the scaled bound is this small
const DENSE_HIST_MAX: f64 = 4096.0;

/// Limits for a single enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub max_nodes: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

/// A Q(√2) Gram held as `(A + B·√2) / den` with integer matrices `A`, `B`.
#[derive(Clone, Debug)]
pub struct ExactForm {
    n: usize,
    den: i128,
    irrational: bool,
    a: Vec<i128>,
    b: Vec<i128>,
}

fn to_i128(x: &BigInt, what: &'static str) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow(what))
}

impl ExactForm {
    pub fn new(gram: &Matrix<QSqrt2>) -> Result<Self> {
        let n = gram.nrows();
        let den = gram
            .rows()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
        let mut a = Vec::with_capacity(n * n);
        let mut b = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = &gram[(i, j)];
                a.push(to_i128(&(&e.rat * &den).to_integer(), "exact form")?);
                b.push(to_i128(&(&e.rad * &den).to_integer(), "exact form")?);
            }
        }
        Ok(ExactForm {
            n,
            den: to_i128(&den, "exact form")?,
            irrational: b.iter().any(|&x| x != 0),
            a,
            b,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    #[inline]
    fn ga(&self, i: usize, j: usize) -> i128 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn gb(&self, i: usize, j: usize) -> i128 {
        self.b[i * self.n + j]
    }

    /// Numerators `(A, B)` of `uᵀ G v = (A + B√2)/den`.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> (i128, i128) {
        let mut sa = 0i128;
        let mut sb = 0i128;
        for i in 0..self.n {
            if u[i] == 0 {
                continue;
            }
            let mut ra = 0i128;
            let mut rb = 0i128;
            for j in 0..self.n {
                ra += self.ga(i, j) * v[j] as i128;
                rb += self.gb(i, j) * v[j] as i128;
            }
            sa += ra * u[i] as i128;
            sb += rb * u[i] as i128;
        }
        (sa, sb)
    }

    pub fn value(&self, a: i128, b: i128, extra_den: i128) -> QSqrt2 {
        let d = BigInt::from(self.den) * BigInt::from(extra_den);
        QSqrt2::new(
            Rational::new(BigInt::from(a), d.clone()),
            Rational::new(BigInt::from(b), d),
        )
    }

    pub fn norm_value(&self, v: &[i64]) -> QSqrt2 {
        let (a, b) = self.inner(v, v);
        self.value(a, b, 1)
    }
}

/// Reduced enumeration context for one Gram matrix.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    /// Rows express the reduced basis in the original basis.
    transform: IntMatrix,
    transform_inv: IntMatrix,
    form: ExactForm,
    q: Matrix<f64>,
    /// Diagonal of the inverse reduced Gram (coordinate bounds).
    inv_diag: Vec<f64>,
}

/// One enumerated vector in original lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: QSqrt2,
}

struct Job<'a> {
    ctx: &'a Enumerator,
    shift: Vec<f64>,
    shift_int: Vec<i128>,
    shift_den: i128,
    bound_f: f64,
    // exact threshold: E·A − p + (E·B − q)√2 ≤ 0
    bound_e: i128,
    bound_p: i128,
    bound_q: i128,
    half: bool,
    include_zero: bool,
    max_nodes: u64,
    nodes: AtomicU64,
    abort: AtomicBool,
}

trait Sink: Send {
    fn visit(&mut self, x: &[i64], a: i128, b: i128);
    fn merge(&mut self, other: Self);
}

#[derive(Default)]
struct VecSink {
    hits: Vec<(Vec<i64>, i128, i128)>,
}

impl Sink for VecSink {
    fn visit(&mut self, x: &[i64], a: i128, b: i128) {
        self.hits.push((x.to_vec(), a, b));
    }
    fn merge(&mut self, other: Self) {
        self.hits.extend(other.hits);
    }
}

struct HistSink {
    dense: Vec<u64>,
    sparse: HashMap<(i128, i128), u64>,
}

impl HistSink {
    fn new(dense_len: usize) -> Self {
        HistSink {
            dense: vec![0; dense_len],
            sparse: HashMap::new(),
        }
    }
}

impl Sink for HistSink {
    #[inline]
    fn visit(&mut self, _x: &[i64], a: i128, b: i128) {
        if b == 0 && a >= 0 && (a as usize) < self.dense.len() {
            self.dense[a as usize] += 1;
        } else {
            *self.sparse.entry((a, b)).or_insert(0) += 1;
        }
    }
    fn merge(&mut self, other: Self) {
        for (d, o) in self.dense.iter_mut().zip(other.dense) {
            *d += o;
        }
        for (k, v) in other.sparse {
            *self.sparse.entry(k).or_insert(0) += v;
        }
    }
}

struct Walker<'a, 'j> {
    job: &'j Job<'a>,
    x: Vec<i64>,
    y: Vec<f64>,
    w: Vec<i128>,
    rem: Vec<f64>,
    ea: Vec<i128>,
    eb: Vec<i128>,
    zero_above: Vec<bool>,
    // row i, column j: Σ_{k ≥ j} G_ik·(value at level k), valid for j > dirty[i]
    sum_f: Vec<f64>,
    sum_a: Vec<i128>,
    sum_b: Vec<i128>,
    dirty: Vec<usize>,
    local_nodes: u64,
}

enum Mode<'p> {
    Leaves,
    Prefixes {
        split: usize,
        out: &'p mut Vec<Vec<i64>>,
    },
}

impl<'a, 'j> Walker<'a, 'j> {
    fn new(job: &'j Job<'a>) -> Self {
        let n = job.ctx.n;
        let mut rem = vec![0.0; n + 1];
        rem[n] = job.bound_f;
        Walker {
            job,
            x: vec![0; n],
            y: vec![0.0; n],
            w: vec![0; n],
            rem,
            ea: vec![0; n + 1],
            eb: vec![0; n + 1],
            zero_above: vec![true; n + 1],
            sum_f: vec![0.0; n * (n + 1)],
            sum_a: vec![0; n * (n + 1)],
            sum_b: vec![0; n * (n + 1)],
            dirty: vec![n.saturating_sub(1); n],
            local_nodes: 0,
        }
    }

    fn flush(&mut self) -> Result<()> {
        let total = self
            .job
            .nodes
            .fetch_add(self.local_nodes, AtomicOrdering::Relaxed)
            + self.local_nodes;
        self.local_nodes = 0;
        if total > self.job.max_nodes || self.job.abort.load(AtomicOrdering::Relaxed) {
            self.job.abort.store(true, AtomicOrdering::Relaxed);
            return Err(Error::Budget {
                what: "enumeration node",
                limit: self.job.max_nodes,
            });
        }
        Ok(())
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.local_nodes += 1;
        if self.local_nodes >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    /// Float offset `s_i` and exact `(S_a, S_b) = Σ_{j>i} G_ij w_j`.
    ///
    /// Partial sums are cached per row and refreshed only from the highest
    /// level changed since the row was last read.
    #[inline]
    fn level_data(&mut self, i: usize) -> (f64, i128, i128) {
        let ctx = self.job.ctx;
        let n = ctx.n;
        if i + 1 >= n {
            return (0.0, 0, 0);
        }
        let row = i * (n + 1);
        let top = self.dirty[i];
        for j in (i + 1..=top).rev() {
            self.sum_f[row + j] = self.sum_f[row + j + 1] + ctx.q[(i, j)] * self.y[j];
            let wj = self.w[j];
            self.sum_a[row + j] = self.sum_a[row + j + 1] + ctx.form.ga(i, j) * wj;
            if ctx.form.irrational {
                self.sum_b[row + j] = self.sum_b[row + j + 1] + ctx.form.gb(i, j) * wj;
            }
        }
        if i > 0 && self.dirty[i - 1] < top {
            self.dirty[i - 1] = top;
        }
        self.dirty[i] = i;
        (
            self.sum_f[row + i + 1],
            self.sum_a[row + i + 1],
            self.sum_b[row + i + 1],
        )
    }

    #[inline]
    fn set(&mut self, i: usize, xi: i64, s: f64, sa: i128, sb: i128) {
        let job = self.job;
        let ctx = job.ctx;
        let yi = xi as f64 + job.shift[i];
        let d = yi + s;
        self.x[i] = xi;
        self.y[i] = yi;
        if i > 0 && self.dirty[i - 1] < i {
            self.dirty[i - 1] = i;
        }
        let wi = job.shift_den * xi as i128 + job.shift_int[i];
        self.w[i] = wi;
        self.rem[i] = self.rem[i + 1] - ctx.q[(i, i)] * d * d;
        self.ea[i] = self.ea[i + 1] + wi * (ctx.form.ga(i, i) * wi + 2 * sa);
        if ctx.form.irrational {
            self.eb[i] = self.eb[i + 1] + wi * (ctx.form.gb(i, i) * wi + 2 * sb);
        }
        self.zero_above[i] = self.zero_above[i + 1] && xi == 0;
    }

    fn exact_ok(&self, a: i128, b: i128) -> bool {
        let job = self.job;
        let x = job.bound_e * a - job.bound_p;
        let y = job.bound_e * b - job.bound_q;
        sign_i128_sqrt2(x, y) != std::cmp::Ordering::Greater
    }

    fn descend<S: Sink>(&mut self, i: usize, sink: &mut S, mode: &mut Mode<'_>) -> Result<()> {
        let job = self.job;
        let ctx = job.ctx;
        let rem = self.rem[i + 1];
        if rem < 0.0 {
            return Ok(());
        }
        let (s, sa, sb) = self.level_data(i);
        let c = -job.shift[i] - s;
        let r = (rem / ctx.q[(i, i)]).sqrt();
        let mut lo = (c - r - RANGE_EPS).ceil() as i64;
        let hi = (c + r + RANGE_EPS).floor() as i64;
        if job.half && self.zero_above[i + 1] {
            lo = lo.max(0);
        }
        for xi in lo..=hi {
            self.tick()?;
            self.set(i, xi, s, sa, sb);
            if let Mode::Prefixes { split, out } = mode {
                if i == *split {
                    out.push(self.x[i..].to_vec());
                    continue;
                }
            }
            if i == 0 {
                if self.zero_above[0] && !job.include_zero {
                    continue;
                }
                let (a, b) = (self.ea[0], self.eb[0]);
                if self.exact_ok(a, b) {
                    sink.visit(&self.x, a, b);
                }
            } else {
                self.descend(i - 1, sink, mode)?;
            }
        }
        self.x[i] = 0;
        Ok(())
    }

    /// Replays a prefix (values for levels `n − k .. n`) and enumerates below.
    fn resume<S: Sink>(&mut self, prefix: &[i64], sink: &mut S) -> Result<()> {
        let n = self.job.ctx.n;
        let k = prefix.len();
        // levels are filled from the top down
        for i in (n - k..n).rev() {
            let (s, sa, sb) = self.level_data(i);
            self.set(i, prefix[i - (n - k)], s, sa, sb);
        }
        let i = n - k;
        if i == 0 {
            if self.zero_above[0] && !self.job.include_zero {
                return Ok(());
            }
            let (a, b) = (self.ea[0], self.eb[0]);
            if self.rem[0] >= -1.0 && self.exact_ok(a, b) {
                sink.visit(&self.x, a, b);
            }
            return Ok(());
        }
        self.descend(i - 1, sink, &mut Mode::Leaves)
    }
}

impl Enumerator {
    pub fn new(gram: &Matrix<QSqrt2>) -> Result<Self> {
        let n = gram.nrows();
        if !gram.is_symmetric() {
            return Err(Error::Precondition("Gram matrix is not symmetric".into()));
        }
        let (transform, reduced) = if n > 0 {
            lll_exact(gram)?
        } else {
            (IntMatrix::identity(0), gram.clone())
        };
        let transform_inv = unimodular_inverse(&transform)?;
        let gf = reduced.map(FieldElement::to_f64);
        let q = quadratic_decomposition(&gf)?;
        let inv = gf.inverse()?;
        let inv_diag = (0..n).map(|i| inv[(i, i)].max(0.0)).collect();
        Ok(Enumerator {
            n,
            transform,
            transform_inv,
            form: ExactForm::new(&reduced)?,
            q,
            inv_diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Smallest diagonal entry of the reduced Gram: the norm of some nonzero
    /// lattice vector, hence an upper bound on the minimum.
    pub fn min_reduced_diagonal(&self) -> Option<QSqrt2> {
        (0..self.n)
            .map(|i| self.form.value(self.form.ga(i, i), self.form.gb(i, i), 1))
            .min()
    }

    fn job(
        &self,
        bound: &QSqrt2,
        shift: Option<&[Rational]>,
        half: bool,
        include_zero: bool,
        opts: EnumOptions,
    ) -> Result<Job<'_>> {
        let n = self.n;
        if !bound.is_positive() {
            return Err(Error::Precondition(
                "enumeration bound must be positive".into(),
            ));
        }
        // shift into reduced coordinates: t_red = t · U⁻¹
        let t_red: Vec<Rational> = match shift {
            Some(t) => {
                if t.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: t.len(),
                    });
                }
                vec_mat(t, &int_to_rational(&self.transform_inv))
            }
            None => vec![Rational::zero(); n],
        };
        let den_big = t_red
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let shift_den = to_i128(&den_big, "coset shift")?;
        let shift_int = t_red
            .iter()
            .map(|q| to_i128(&(q * &den_big).to_integer(), "coset shift"))
            .collect::<Result<Vec<_>>>()?;
        let shift_f: Vec<f64> = t_red.iter().map(FieldElement::to_f64).collect();
        // with a nonzero shift, x = 0 is not the zero vector; callers drop
        // zero-norm hits themselves
        let include_zero = include_zero || shift_int.iter().any(|&v| v != 0);

        let bf = bound.to_f64();
        // magnitude guard for the i128 accumulators
        let max_y = self
            .inv_diag
            .iter()
            .map(|d| (bf * d).sqrt() + 1.0)
            .fold(0.0f64, f64::max);
        let max_w = max_y * shift_den as f64;
        let max_g = self
            .form
            .a
            .iter()
            .chain(&self.form.b)
            .map(|x| x.unsigned_abs() as f64)
            .fold(1.0f64, f64::max);
        let worst = (n * n) as f64 * max_g * max_w * max_w * 4.0;
        if !(worst < 2f64.powi(100)) {
            return Err(Error::Overflow("enumeration accumulator"));
        }

        let scale = BigInt::from(self.form.den) * &den_big * &den_big;
        let e = bound.denom_lcm();
        let p = (&bound.rat * &e).to_integer() * &scale;
        let q = (&bound.rad * &e).to_integer() * &scale;
        let (bound_e, bound_p, bound_q) = (
            to_i128(&e, "enumeration bound")?,
            to_i128(&p, "enumeration bound")?,
            to_i128(&q, "enumeration bound")?,
        );
        if (bound_e as f64) * worst >= 2f64.powi(120) {
            return Err(Error::Overflow("enumeration bound"));
        }
        Ok(Job {
            ctx: self,
            shift: shift_f,
            shift_int,
            shift_den,
            bound_f: bf * (1.0 + BOUND_SLACK) + BOUND_SLACK,
            bound_e,
            bound_p,
            bound_q,
            half,
            include_zero,
            max_nodes: opts.max_nodes,
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
        })
    }

    fn run<S: Sink>(&self, job: &Job<'_>, make: impl Fn() -> S + Sync) -> Result<S> {
        let n = self.n;
        if n == 0 {
            let mut s = make();
            if job.include_zero {
                s.visit(&[], 0, 0);
            }
            return Ok(s);
        }
        // split the top levels into independent subtrees
        let mut prefixes: Vec<Vec<i64>> = Vec::new();
        let max_depth = n.min(6);
        for depth in 1..=max_depth {
            prefixes.clear();
            let mut w = Walker::new(job);
            let mut dummy = VecSink::default();
            let mut mode = Mode::Prefixes {
                split: n - depth,
                out: &mut prefixes,
            };
            w.descend(n - 1, &mut dummy, &mut mode)?;
            w.flush()?;
            if prefixes.len() >= 256 {
                break;
            }
        }
        let parts: Vec<Result<S>> = prefixes
            .par_iter()
            .map(|p| {
                let mut w = Walker::new(job);
                let mut s = make();
                w.resume(p, &mut s)?;
                w.flush()?;
                Ok(s)
            })
            .collect();
        let mut acc = make();
        for part in parts {
            acc.merge(part?);
        }
        if job.nodes.load(AtomicOrdering::Relaxed) > job.max_nodes {
            return Err(Error::Budget {
                what: "enumeration node",
                limit: job.max_nodes,
            });
        }
        Ok(acc)
    }

    fn to_original(&self, x_red: &[i64]) -> Result<Vec<i64>> {
        let n = self.n;
        let mut out = vec![0i64; n];
        for (k, &xk) in x_red.iter().enumerate() {
            if xk == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let t = xk
                    .checked_mul(self.transform[(k, j)])
                    .ok_or(Error::Overflow("coordinate transform"))?;
                *o = o
                    .checked_add(t)
                    .ok_or(Error::Overflow("coordinate transform"))?;
            }
        }
        Ok(out)
    }

    /// All nonzero `v ∈ Z^n` with `vᵀGv ≤ bound`, both signs, sorted
    /// lexicographically by coordinates.
    pub fn short_vectors(&self, bound: &QSqrt2, opts: EnumOptions) -> Result<Vec<ShortVector>> {
        let job = self.job(bound, None, true, false, opts)?;
        let sink = self.run(&job, VecSink::default)?;
        let mut out = Vec::with_capacity(sink.hits.len() * 2);
        for (x, a, b) in sink.hits {
            let v = self.to_original(&x)?;
            let norm = self.form.value(a, b, 1);
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            out.push(ShortVector {
                coords: neg,
                norm: norm.clone(),
            });
            out.push(ShortVector { coords: v, norm });
        }
        out.sort_unstable_by(|p, q| p.coords.cmp(&q.coords));
        Ok(out)
    }

    /// Vectors `x + shift` (`x ∈ Z^n`) with norm ≤ bound. Returns the integer
    /// parts `x` in original coordinates, sorted, with exact norms. The zero
    /// vector is skipped when `shift` is integral and `include_zero` is false.
    pub fn coset_vectors(
        &self,
        shift: &[Rational],
        bound: &QSqrt2,
        include_zero: bool,
        opts: EnumOptions,
    ) -> Result<Vec<ShortVector>> {
        let job = self.job(bound, Some(shift), false, include_zero, opts)?;
        let extra = job.shift_den * job.shift_den;
        let sink = self.run(&job, VecSink::default)?;
        let mut out = Vec::with_capacity(sink.hits.len());
        for (x, a, b) in sink.hits {
            if !include_zero && a == 0 && b == 0 {
                continue;
            }
            let v = self.to_original(&x)?;
            out.push(ShortVector {
                coords: v,
                norm: self.form.value(a, b, extra),
            });
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Number of vectors of each norm `≤ bound`, in the lattice (`shift =
    /// None`, zero vector included) or in a coset.
    pub fn norm_counts(
        &self,
        bound: &QSqrt2,
        shift: Option<&[Rational]>,
        opts: EnumOptions,
    ) -> Result<BTreeMap<QSqrt2, u64>> {
        Ok(self.norm_counts_with_nodes(bound, shift, opts)?.0)
    }

    /// [`Enumerator::norm_counts`] together with the number of search nodes
    /// it visited.
    pub fn norm_counts_with_nodes(
        &self,
        bound: &QSqrt2,
        shift: Option<&[Rational]>,
        opts: EnumOptions,
    ) -> Result<(BTreeMap<QSqrt2, u64>, u64)> {
        let half = shift.is_none();
        let job = self.job(bound, shift, half, true, opts)?;
        let extra = job.shift_den * job.shift_den;
        let dense_max = (bound.to_f64() * (self.form.den * extra) as f64).ceil();
        let dense_len = if bound.is_rational() && dense_max < DENSE_HIST_MAX {
            dense_max as usize + 1
        } else {
            0
        };
        let sink = self.run(&job, || HistSink::new(dense_len))?;
        let mut out = BTreeMap::new();
        let mut add = |a: i128, b: i128, c: u64| {
            let c = if half && (a, b) != (0, 0) { 2 * c } else { c };
            *out.entry(self.form.value(a, b, extra)).or_insert(0) += c;
        };
        for (a, &c) in sink.dense.iter().enumerate() {
            if c > 0 {
                add(a as i128, 0, c);
            }
        }
        for ((a, b), c) in sink.sparse {
            add(a, b, c);
        }
        Ok((out, job.nodes.load(AtomicOrdering::Relaxed)))
    }
}
