//! Exact representation counts for sums of squares.
//!
//! r_N(m) counts integer solutions of i_1² + … + i_N² = m (signs and order
//! included) and r_N^odd(m) the solutions with every i_j odd. Both satisfy
//! one-dimensional recursions,
//!
//! ```text
//! r_{N+1}(m)      = r_N(m) + 2 Σ_{i≥1, m-i²≥0} r_N(m - i²)
//! r_{N+1}^odd(m)  = 2 Σ_{i≥1, m-(2i-1)²>0} r_N^odd(m - (2i-1)²)
//! ```
//!
//! with r_N(0) = 1 and r_N^odd(0) = 0. Counts grow quickly with N and m —
//! beyond double precision — so tables hold exact unbounded integers and
//! conversion to float is left to the caller at the point of use.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Memoized table of r_n(m) for 0 ≤ n ≤ dims, 0 ≤ m ≤ len-1.
///
/// Rows are built column-by-column in n; a finished table is immutable and
/// safe to read concurrently.
#[derive(Debug, Clone, Default)]
pub struct RepTable {
    rows: Vec<Vec<BigUint>>,
}

impl RepTable {
    pub fn new() -> Self {
        RepTable {
            rows: vec![vec![BigUint::one()]],
        }
    }

    /// Extends the table so that r_n(m) is available for all n ≤ `dim`,
    /// m ≤ `m_max`.
    pub fn ensure(&mut self, dim: usize, m_max: usize) {
        let old_len = self.rows[0].len();
        let len = (m_max + 1).max(old_len);
        if len > old_len {
            self.rows[0].resize(len, BigUint::zero()); // r_0(m) = [m = 0]
            for n in 1..self.rows.len() {
                let (lower, row) = split_rows(&mut self.rows, n);
                for m in old_len..len {
                    row.push(r_next(lower, m));
                }
            }
        }
        while self.rows.len() <= dim {
            let n = self.rows.len();
            let mut row = Vec::with_capacity(len);
            for m in 0..len {
                row.push(r_next(&self.rows[n - 1], m));
            }
            self.rows.push(row);
        }
    }

    pub fn get(&self, dim: usize, m: usize) -> &BigUint {
        &self.rows[dim][m]
    }

    pub fn row(&self, dim: usize) -> &[BigUint] {
        &self.rows[dim]
    }
}

fn split_rows(rows: &mut [Vec<BigUint>], n: usize) -> (&Vec<BigUint>, &mut Vec<BigUint>) {
    let (a, b) = rows.split_at_mut(n);
    (&a[n - 1], &mut b[0])
}

fn r_next(lower: &[BigUint], m: usize) -> BigUint {
    let mut acc = lower[m].clone();
    let mut i = 1usize;
    while i * i <= m {
        acc += &lower[m - i * i];
        acc += &lower[m - i * i];
        i += 1;
    }
    acc
}

/// Memoized table of r_n^odd(m) for 1 ≤ n ≤ dims.
#[derive(Debug, Clone, Default)]
pub struct OddRepTable {
    // rows[0] is a placeholder; rows[n][m] = r_n^odd(m) for n ≥ 1
    rows: Vec<Vec<BigUint>>,
}

impl OddRepTable {
    pub fn new() -> Self {
        OddRepTable {
            rows: vec![Vec::new(), vec![BigUint::zero()]],
        }
    }

    pub fn ensure(&mut self, dim: usize, m_max: usize) {
        assert!(dim >= 1, "r_N^odd is defined for N >= 1");
        let old_len = self.rows[1].len();
        let len = (m_max + 1).max(old_len);
        if len > old_len {
            for m in old_len..len {
                self.rows[1].push(if is_odd_square(m) {
                    BigUint::from(2u32)
                } else {
                    BigUint::zero()
                });
            }
            for n in 2..self.rows.len() {
                let (a, b) = self.rows.split_at_mut(n);
                let (lower, row) = (&a[n - 1], &mut b[0]);
                for m in old_len..len {
                    row.push(r_odd_next(lower, m));
                }
            }
        }
        while self.rows.len() <= dim {
            let n = self.rows.len();
            let mut row = Vec::with_capacity(len);
            for m in 0..len {
                row.push(r_odd_next(&self.rows[n - 1], m));
            }
            self.rows.push(row);
        }
    }

    pub fn get(&self, dim: usize, m: usize) -> &BigUint {
        &self.rows[dim][m]
    }

    pub fn row(&self, dim: usize) -> &[BigUint] {
        &self.rows[dim]
    }
}

fn is_odd_square(m: usize) -> bool {
    let r = (m as f64).sqrt().round() as usize;
    r % 2 == 1 && r * r == m
}

fn r_odd_next(lower: &[BigUint], m: usize) -> BigUint {
    let mut acc = BigUint::zero();
    let mut i = 1usize;
    loop {
        let sq = (2 * i - 1) * (2 * i - 1);
        if sq >= m {
            break;
        }
        acc += &lower[m - sq];
        i += 1;
    }
    acc * 2u32
}

/// r_N(m): number of representations of m as an ordered, signed sum of N
/// integer squares. r_0(m) = [m = 0].
pub fn r_squares(n: u32, m: u64) -> BigUint {
    let mut table = RepTable::new();
    table.ensure(n as usize, m as usize);
    table.get(n as usize, m as usize).clone()
}

/// r_N^odd(m): representations of m as a sum of N squares of odd integers
/// (N ≥ 1).
pub fn r_odd_squares(n: u32, m: u64) -> BigUint {
    assert!(n >= 1);
    let mut table = OddRepTable::new();
    table.ensure(n as usize, m as usize);
    table.get(n as usize, m as usize).clone()
}

/// r_N^even(m) = r_N(m/4) when 4 | m, else 0.
pub fn r_even_squares(n: u32, m: u64) -> BigUint {
    if m % 4 == 0 {
        r_squares(n, m / 4)
    } else {
        BigUint::zero()
    }
}

/// Coordinate parity restriction for [`brute_force_r`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Odd,
}

const ENUMERATION_BUDGET: u64 = 1_000_000_000;

/// Test oracle: counts lattice points of norm m' for every m' ≤ m_max by
/// direct nested enumeration. Intended for N ≤ 8, m ≤ 400.
pub fn brute_force_counts(n: u32, m_max: u64, parity: Parity) -> Result<Vec<BigUint>> {
    let mut counts = vec![0u64; m_max as usize + 1];
    let mut budget = ENUMERATION_BUDGET;
    descend(n, m_max, parity, &mut counts, &mut budget)?;
    Ok(counts.into_iter().map(BigUint::from).collect())
}

fn descend(
    dims_left: u32,
    norm_left: u64,
    parity: Parity,
    counts: &mut [u64],
    budget: &mut u64,
) -> Result<()> {
    if *budget == 0 {
        return Err(Error::Bounds(format!(
            "enumeration budget of {ENUMERATION_BUDGET} tuples exceeded"
        )));
    }
    *budget -= 1;
    if dims_left == 0 {
        let m = counts.len() as u64 - 1 - norm_left;
        counts[m as usize] += 1;
        return Ok(());
    }
    // i = 0 (when allowed), then ±i for each admissible magnitude
    if parity == Parity::Any {
        descend(dims_left - 1, norm_left, parity, counts, budget)?;
    }
    let (start, step) = match parity {
        Parity::Any => (1u64, 1u64),
        Parity::Odd => (1u64, 2u64),
    };
    let mut i = start;
    while i * i <= norm_left {
        for _ in 0..2 {
            descend(dims_left - 1, norm_left - i * i, parity, counts, budget)?;
        }
        i += step;
    }
    Ok(())
}

/// Test oracle: the single count r_N(m) (or r_N^odd(m)) by brute force.
pub fn brute_force_r(n: u32, m: u64, parity: Parity) -> Result<BigUint> {
    Ok(brute_force_counts(n, m, parity)?.swap_remove(m as usize))
}
