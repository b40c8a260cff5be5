//! The two convergent Bessel-function expansions for the N-dimensional
//! Madelung constant
//!
//! ```text
//! M_N(s) = Σ'_{i ∈ ℤ^N} (-1)^{i_1+…+i_N} / |i|^{2s}
//! ```
//!
//! **Direct** (single sum over shells, coefficients independent of N):
//!
//! ```text
//! M_{N+1}(s) = -2η(2s) + Σ_{m≥1} (-1)^m r_N(m) c_s(m)
//! c_s(m) = (4π^s/Γ(s)) m^{(1-2s)/4} Σ_{k≥1} (k-1/2)^{s-1/2} K_{s-1/2}(π(2k-1)√m)
//! ```
//!
//! **Recursive** (dimension by dimension, faster decay through 8m+N in the
//! Bessel argument):
//!
//! ```text
//! M_{n+1}(s) = M_n(s) + Σ_{m≥0} r_n^odd(8m+n) c_{s,n}(m)
//! c_{s,n}(m) = (4π^s/Γ(s)) Σ_{k≥1} (-1)^k ((8m+n)/4k²)^{(2s-n)/4} K_{s-n/2}(πk√(8m+n))
//! ```
//!
//! The public API takes the target dimension N; the direct route uses the
//! r_{N-1} table internally and the recursive route iterates n = 1…N-1,
//! starting from M_1(s) = -2η(2s).
//!
//! Both sums are accumulated backwards (smallest terms first) and the direct
//! sum pairs adjacent terms, b(2m) = a(2m) + a(2m-1), which smooths the
//! strongly oscillating tail. At s = 0, -1, -2, … the prefactor 1/Γ(s)
//! vanishes and M_N(s) = -2η(2s) exactly, independent of N.

use crate::error::{Error, Result};
use crate::special;
use crate::squares::{OddRepTable, RepTable};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

/// Default remainder target: the paper's double-precision working accuracy.
pub const DEFAULT_TARGET_REMAINDER: f64 = 1e-14;

/// Inner (k) sums stop once a term drops below this fraction of the partial
/// sum, or at k = 200, whichever comes first.
const K_RELATIVE_CUTOFF: f64 = 1e-20;
const K_CAP: u64 = 200;

/// Summation method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Direct,
    Recursive,
    /// Resolves to [`Method::Recursive`], which the reference computation
    /// preferred for accuracy.
    #[default]
    Auto,
}

/// A single evaluation request.
#[derive(Debug, Clone, Copy)]
pub struct MadelungQuery {
    pub dimension: u32,
    pub exponent: f64,
    pub target_remainder: f64,
    pub method: Method,
}

impl MadelungQuery {
    pub fn new(dimension: u32, exponent: f64) -> Self {
        MadelungQuery {
            dimension,
            exponent,
            target_remainder: DEFAULT_TARGET_REMAINDER,
            method: Method::Auto,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_target_remainder(mut self, target: f64) -> Self {
        self.target_remainder = target;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dimension < 1 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if !self.exponent.is_finite() {
            return Err(Error::Domain("exponent must be finite".into()));
        }
        if !(self.target_remainder > 0.0) {
            return Err(Error::Domain("target remainder must be positive".into()));
        }
        Ok(())
    }

    fn resolved(&self) -> ResolvedMethod {
        match self.method {
            Method::Direct => ResolvedMethod::Direct,
            Method::Recursive | Method::Auto => ResolvedMethod::Recursive,
        }
    }
}

/// The method that actually ran (Auto resolved).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedMethod {
    Direct,
    Recursive,
}

impl std::fmt::Display for ResolvedMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResolvedMethod::Direct => write!(f, "direct"),
            ResolvedMethod::Recursive => write!(f, "recursive"),
        }
    }
}

/// A computed Madelung constant with its convergence diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct MadelungValue {
    pub value: f64,
    /// Largest m index included in the (final) sum over m.
    pub m_max_used: u64,
    /// First-omitted-term proxy for the truncation error; at most the
    /// query's target on success.
    pub remainder_estimate: f64,
    pub method_used: ResolvedMethod,
}

/// Raw term sequences behind an evaluation, for plotting.
///
/// For the direct method, `terms_a[i]` is a(m) at m = i+1 and
/// `terms_paired[j]` is b(2(j+1)) = a(2j+2) + a(2j+1). For the recursive
/// method, `terms_d[i]` is d(m) = r_N^odd(8m+N) c_{s,N}(m) at m = i — the
/// increment series at dimension N, whose entries vanish wherever
/// r_N^odd(8m+N) = 0.
#[derive(Debug, Clone, Default)]
pub struct ConvergenceTrace {
    pub terms_a: Vec<f64>,
    pub terms_paired: Vec<f64>,
    pub terms_d: Vec<f64>,
}

/// Upper bound heuristic for the direct-method cutoff at s ≥ 1/2:
/// nint(1.16 N² + 11.5 N + 73).
pub fn heuristic_m_max(dimension: u32) -> u64 {
    let n = dimension as f64;
    (1.16 * n * n + 11.5 * n + 73.0).round() as u64
}

/// 4π^s/Γ(s); exactly 0 at s = 0, -1, -2, … where the expansions collapse
/// to -2η(2s).
fn prefactor(s: f64) -> f64 {
    4.0 * PI.powf(s) * special::reciprocal_gamma(s)
}

/// c_s(m) of the direct expansion; independent of the dimension.
pub fn coefficient_direct(s: f64, m: u64) -> f64 {
    let pref = prefactor(s);
    if pref == 0.0 || m == 0 {
        return 0.0;
    }
    let sqrt_m = (m as f64).sqrt();
    let order = s - 0.5;
    let mut sum = 0.0;
    for k in 1..=K_CAP {
        let half = k as f64 - 0.5;
        let kern = special::bessel_k(order, PI * 2.0 * half * sqrt_m).expect("positive argument");
        let term = half.powf(order) * kern;
        sum += term;
        if term.abs() <= K_RELATIVE_CUTOFF * sum.abs() {
            break;
        }
    }
    pref * (m as f64).powf((1.0 - 2.0 * s) / 4.0) * sum
}

/// c_{1/2}(m) through the sinh-integral form
/// c_{1/2}(m) = 2 ∫_0^∞ dt / sinh(π√m cosh t),
/// an independent cross-check of [`coefficient_direct`] at s = 1/2.
pub fn coefficient_half_integral(m: u64) -> f64 {
    assert!(m >= 1);
    let a = PI * (m as f64).sqrt();
    // csch(a cosh t) = 2 e^{-a cosh t} / (1 - e^{-2a cosh t}), overflow-free;
    // written with a(cosh t - 1) = 2a sinh²(t/2) so the decay is exact.
    let h = (1.0 / 16.0_f64).min(0.5 / a.sqrt());
    let scale = (-a).exp();
    let mut sum = 0.5 * csch_scaled(a, 0.0);
    let mut comp = 0.0;
    let mut j = 1u64;
    loop {
        let t = h * j as f64;
        let sh = (0.5 * t).sinh();
        let u = 2.0 * a * sh * sh;
        if u > 55.0 {
            break;
        }
        let term = csch_scaled(a, u);
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        j += 1;
    }
    2.0 * scale * sum * h
}

/// e^a / sinh(a + u) for u ≥ 0.
fn csch_scaled(a: f64, u: f64) -> f64 {
    2.0 * (-u).exp() / (1.0 - (-2.0 * (a + u)).exp())
}

/// c_{s,N}(m) of the recursion step from dimension N; negative for s > 0
/// (the k = 1 term dominates and carries sign -1).
pub fn coefficient_recursive(s: f64, n: u32, m: u64) -> f64 {
    assert!(n >= 1);
    let pref = prefactor(s);
    if pref == 0.0 {
        return 0.0;
    }
    let arg = (8 * m + n as u64) as f64;
    let sqrt_arg = arg.sqrt();
    let order = s - n as f64 / 2.0;
    let power = (2.0 * s - n as f64) / 4.0;
    let mut sum = 0.0;
    for k in 1..=K_CAP {
        let kf = k as f64;
        let kern = special::bessel_k(order, PI * kf * sqrt_arg).expect("positive argument");
        let mut term = (arg / (4.0 * kf * kf)).powf(power) * kern;
        if k % 2 == 1 {
            term = -term;
        }
        sum += term;
        if term.abs() <= K_RELATIVE_CUTOFF * sum.abs() {
            break;
        }
    }
    pref * sum
}

/// Shared representation-count tables plus the evaluation entry points.
///
/// Reusing one evaluator across calls (sweeps over N, table generation)
/// amortizes the exact integer recursions. Everything is deterministic;
/// a finished evaluator is read-only during [`Evaluator::compute`] except
/// for table growth.
#[derive(Debug, Default)]
pub struct Evaluator {
    squares: RepTable,
    odd: OddRepTable,
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator {
            squares: RepTable::new(),
            odd: OddRepTable::new(),
        }
    }

    /// M_N(s) by the method the query selects.
    pub fn compute(&mut self, q: &MadelungQuery) -> Result<MadelungValue> {
        q.validate()?;
        match q.resolved() {
            ResolvedMethod::Direct => self.direct(q),
            ResolvedMethod::Recursive => Ok(self.sweep_recursive(q)?.pop().expect("n >= 1")),
        }
    }

    /// M_1(s), …, M_N(s) in one pass of the dimension recursion.
    pub fn sweep_recursive(&mut self, q: &MadelungQuery) -> Result<Vec<MadelungValue>> {
        q.validate()?;
        let n_target = q.dimension;
        let s = q.exponent;
        let mut value = -2.0 * special::eta(2.0 * s);
        let mut out = Vec::with_capacity(n_target as usize);
        out.push(MadelungValue {
            value,
            m_max_used: 0,
            remainder_estimate: 0.0,
            method_used: ResolvedMethod::Recursive,
        });
        if prefactor(s) == 0.0 {
            // 1/Γ(s) = 0: every Bessel sum vanishes and M_N(s) = -2η(2s)
            for _ in 1..n_target {
                out.push(out[0]);
            }
            return Ok(out);
        }
        let step_target = q.target_remainder / n_target as f64;
        let mut m_max_used = 0u64;
        let mut remainder_total = 0.0;
        for n in 1..n_target {
            let (increment, m_used, last) = self.recursion_step(s, n, step_target, q)?;
            value += increment;
            m_max_used = m_max_used.max(m_used);
            remainder_total += last;
            out.push(MadelungValue {
                value,
                m_max_used,
                remainder_estimate: remainder_total,
                method_used: ResolvedMethod::Recursive,
            });
        }
        Ok(out)
    }

    /// One step of the dimension recursion: Σ_m r_n^odd(8m+n) c_{s,n}(m),
    /// truncated at the first decaying nonzero term below `step_target`.
    /// Returns (increment, last m used, |last nonzero term|).
    fn recursion_step(
        &mut self,
        s: f64,
        n: u32,
        step_target: f64,
        q: &MadelungQuery,
    ) -> Result<(f64, u64, f64)> {
        let cap = 10 * heuristic_m_max(q.dimension);
        let mut terms: Vec<f64> = Vec::new();
        let mut prev_nonzero = f64::INFINITY;
        let mut m = 0u64;
        loop {
            if m > cap {
                return Err(Error::Convergence {
                    target: step_target,
                    m_max: cap,
                });
            }
            let idx = (8 * m + n as u64) as usize;
            self.odd.ensure(n as usize, idx);
            let r = self.odd.get(n as usize, idx);
            if r.is_zero() {
                terms.push(0.0);
                m += 1;
                continue;
            }
            let c = coefficient_recursive(s, n, m);
            let d = if c == 0.0 { 0.0 } else { big_to_f64(r) * c };
            terms.push(d);
            // stop on the decaying side of the hump, never on a zero entry
            if d.abs() < step_target && d.abs() < prev_nonzero {
                break;
            }
            prev_nonzero = d.abs();
            m += 1;
        }
        // backwards summation: smallest terms first
        let mut increment = 0.0;
        for &d in terms.iter().rev() {
            increment += d;
        }
        let last = terms.last().copied().unwrap_or(0.0).abs();
        Ok((increment, terms.len() as u64 - 1, last))
    }

    /// M_N(s) by the direct expansion over r_{N-1}(m) shells.
    fn direct(&mut self, q: &MadelungQuery) -> Result<MadelungValue> {
        let s = q.exponent;
        let lead = -2.0 * special::eta(2.0 * s);
        if q.dimension == 1 || prefactor(s) == 0.0 {
            // r_0(m) = 0 for m ≥ 1: the shell sum is empty
            return Ok(MadelungValue {
                value: lead,
                m_max_used: 0,
                remainder_estimate: 0.0,
                method_used: ResolvedMethod::Direct,
            });
        }
        let n_lower = (q.dimension - 1) as usize;
        let heuristic = heuristic_m_max(q.dimension);
        let cap = 10 * heuristic;
        let mut m_max = heuristic + heuristic % 2; // paired terms need even m_max
        let mut coeffs: Vec<f64> = Vec::new(); // c_s(m) at index m-1
        let remainder = loop {
            self.squares.ensure(n_lower, m_max as usize);
            while (coeffs.len() as u64) < m_max {
                let m = coeffs.len() as u64 + 1;
                coeffs.push(coefficient_direct(s, m));
            }
            // Sparse r rows (dimension 2 sums over r_1) have long runs of
            // zero pairs; judge the remainder by the last pair that carries
            // a term at all.
            let last_informative = (1..=m_max / 2)
                .rev()
                .map(|j| self.pair(n_lower, 2 * j, &coeffs))
                .find(|b| *b != 0.0)
                .map_or(0.0, f64::abs);
            if last_informative < q.target_remainder {
                break last_informative;
            }
            if m_max >= cap {
                return Err(Error::Convergence {
                    target: q.target_remainder,
                    m_max: cap,
                });
            }
            let grown = m_max + m_max / 4 + 2;
            m_max = (grown + grown % 2).min(cap + cap % 2);
        };
        // backwards summation of the paired series
        let mut sum = 0.0;
        let mut j = m_max;
        while j >= 2 {
            sum += self.pair(n_lower, j, &coeffs);
            j -= 2;
        }
        Ok(MadelungValue {
            value: lead + sum,
            m_max_used: m_max,
            remainder_estimate: remainder,
            method_used: ResolvedMethod::Direct,
        })
    }

    /// b(2j) = a(2j) + a(2j-1) with a(m) = (-1)^m r_{n}(m) c_s(m).
    fn pair(&self, n_lower: usize, even_m: u64, coeffs: &[f64]) -> f64 {
        self.term_a(n_lower, even_m, coeffs) + self.term_a(n_lower, even_m - 1, coeffs)
    }

    fn term_a(&self, n_lower: usize, m: u64, coeffs: &[f64]) -> f64 {
        let c = coeffs[(m - 1) as usize];
        if c == 0.0 {
            return 0.0;
        }
        let r = big_to_f64(self.squares.get(n_lower, m as usize));
        let a = r * c;
        if m % 2 == 1 {
            -a
        } else {
            a
        }
    }

    /// Raw term sequences for the query, without summing.
    pub fn trace(&mut self, q: &MadelungQuery) -> Result<ConvergenceTrace> {
        q.validate()?;
        let s = q.exponent;
        let mut trace = ConvergenceTrace::default();
        match q.resolved() {
            ResolvedMethod::Direct => {
                let result = self.direct(q)?;
                let n_lower = (q.dimension - 1) as usize;
                let mut coeffs = Vec::new();
                for m in 1..=result.m_max_used {
                    coeffs.push(coefficient_direct(s, m));
                }
                for m in 1..=result.m_max_used {
                    trace.terms_a.push(self.term_a(n_lower, m, &coeffs));
                }
                let mut j = 2;
                while j <= result.m_max_used {
                    trace.terms_paired.push(self.pair(n_lower, j, &coeffs));
                    j += 2;
                }
            }
            ResolvedMethod::Recursive => {
                // the increment series at dimension N itself (the step that
                // produces M_{N+1}), the quantity plotted per dimension
                let n = q.dimension;
                let mut terms = Vec::new();
                let mut prev_nonzero = f64::INFINITY;
                let mut m = 0u64;
                let cap = 10 * heuristic_m_max(n + 1);
                loop {
                    if m > cap {
                        return Err(Error::Convergence {
                            target: q.target_remainder,
                            m_max: cap,
                        });
                    }
                    let idx = (8 * m + n as u64) as usize;
                    self.odd.ensure(n as usize, idx);
                    let r = self.odd.get(n as usize, idx);
                    if r.is_zero() {
                        terms.push(0.0);
                        m += 1;
                        continue;
                    }
                    let c = coefficient_recursive(s, n, m);
                    let d = if c == 0.0 { 0.0 } else { big_to_f64(r) * c };
                    terms.push(d);
                    let mag = d.abs();
                    if mag < q.target_remainder && mag < prev_nonzero {
                        break;
                    }
                    prev_nonzero = mag;
                    m += 1;
                }
                trace.terms_d = terms;
            }
        }
        Ok(trace)
    }
}

fn big_to_f64(b: &BigUint) -> f64 {
    b.to_f64().unwrap_or(f64::INFINITY)
}

/// One-shot M_N(s) with a fresh evaluator.
pub fn madelung(q: &MadelungQuery) -> Result<MadelungValue> {
    Evaluator::new().compute(q)
}

/// One-shot direct-method M_N(s).
pub fn madelung_direct(q: &MadelungQuery) -> Result<MadelungValue> {
    Evaluator::new().compute(&q.with_method(Method::Direct))
}

/// One-shot recursive-method M_N(s).
pub fn madelung_recursive(q: &MadelungQuery) -> Result<MadelungValue> {
    Evaluator::new().compute(&q.with_method(Method::Recursive))
}

/// One-shot convergence trace.
pub fn convergence_trace(q: &MadelungQuery) -> Result<ConvergenceTrace> {
    Evaluator::new().trace(q)
}
