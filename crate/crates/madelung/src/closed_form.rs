//! Exact and reference formulas used as oracles: Zucker's closed forms for
//! even dimensions up to 8, three classical expressions for M_3(1/2), the
//! nearest-neighbor limit -2N, and the critical values at s = 0, -1, -2, …

use crate::error::{Error, Result};
use crate::special::{beta, eta, gamma, zeta};
use crate::squares;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

/// Identifies the paper formula behind a [`ClosedFormResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    Zucker1,
    Zucker2,
    Zucker4,
    Zucker6,
    Zucker8,
    Tyagi,
    Benson,
    Hautot,
    Limit,
    Critical,
}

#[derive(Debug, Clone, Copy)]
pub struct ClosedFormResult {
    pub value: f64,
    pub formula_id: FormulaId,
}

/// Zucker's analytical Madelung constants for N ∈ {1, 2, 4, 6, 8}:
///
/// ```text
/// M_1 = -2η(2s)            M_2 = -4β(s)η(s)      M_4 = -8η(s-1)η(s)
/// M_6 = -16η(s-2)β(s) + 4η(s)β(s-2)              M_8 = -16η(s-3)ζ(s)
/// ```
///
/// M_8 at s = 1 is the finite limit of η(s-3)ζ(s); it is evaluated as the
/// symmetric average at s = 1 ± 1e-6.
pub fn zucker(n: u32, s: f64) -> Result<f64> {
    match n {
        1 => Ok(-2.0 * eta(2.0 * s)),
        2 => Ok(-4.0 * beta(s) * eta(s)),
        4 => Ok(-8.0 * eta(s - 1.0) * eta(s)),
        6 => Ok(-16.0 * eta(s - 2.0) * beta(s) + 4.0 * eta(s) * beta(s - 2.0)),
        8 => {
            if (s - 1.0).abs() <= 1e-9 {
                let h = 1e-6;
                let hi = -16.0 * eta(1.0 + h - 3.0) * zeta(1.0 + h)?;
                let lo = -16.0 * eta(1.0 - h - 3.0) * zeta(1.0 - h)?;
                return Ok(0.5 * (hi + lo));
            }
            Ok(-16.0 * eta(s - 3.0) * zeta(s)?)
        }
        _ => Err(Error::Domain(format!(
            "no closed form for dimension {n}; supported: 1, 2, 4, 6, 8"
        ))),
    }
}

/// Term cutoff for the M_3(1/2) reference sums, two digits below the global
/// 1e-14 working target.
const TERM_CUTOFF: f64 = 1e-18;

/// Tyagi's formula for M_3(1/2), correct to 10 significant figures even
/// without the correction sum:
///
/// ```text
/// -1/8 - ln2/4π - 4π/3 + 1/(2√2) + Γ(1/8)Γ(3/8)/(π^{3/2}√2)
///   - 2 Σ_k (-1)^k r_3(k) / (√k (e^{8π√k} - 1))
/// ```
pub fn tyagi_m3() -> f64 {
    tyagi_m3_base() + tyagi_m3_correction()
}

pub(crate) fn tyagi_m3_base() -> f64 {
    -0.125 - std::f64::consts::LN_2 / (4.0 * PI) - 4.0 * PI / 3.0
        + 0.5 / 2.0_f64.sqrt()
        + gamma(0.125).expect("not a pole") * gamma(0.375).expect("not a pole")
            / (PI.powf(1.5) * 2.0_f64.sqrt())
}

pub(crate) fn tyagi_m3_correction() -> f64 {
    let mut table = squares::RepTable::new();
    let mut sum = 0.0;
    for k in 1..=60u64 {
        table.ensure(3, k as usize);
        let r3 = table.get(3, k as usize).to_f64().unwrap();
        if r3 == 0.0 {
            continue;
        }
        let sqrt_k = (k as f64).sqrt();
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * r3 / (sqrt_k * ((8.0 * PI * sqrt_k).exp() - 1.0));
        sum += term;
        if term.abs() < TERM_CUTOFF {
            break;
        }
    }
    -2.0 * sum
}

/// Benson–Mackenzie: M_3(1/2) = -12π Σ_{i,j≥1} sech²(π/2 √((2i-1)²+(2j-1)²)).
pub fn benson_mackenzie_m3() -> f64 {
    let mut sum = 0.0;
    for i in 1..=12u32 {
        let mut row = 0.0;
        for j in 1..=12u32 {
            let rho = (((2 * i - 1) * (2 * i - 1) + (2 * j - 1) * (2 * j - 1)) as f64).sqrt();
            let sech = 1.0 / (PI / 2.0 * rho).cosh();
            let term = sech * sech;
            row += term;
            if term < TERM_CUTOFF {
                break;
            }
        }
        sum += row;
        if row < TERM_CUTOFF {
            break;
        }
    }
    -12.0 * PI * sum
}

/// Hautot (Crandall's form):
/// M_3(1/2) = -π/2 + 3 Σ'_{i,j ∈ ℤ} (-1)^i cosech(π√(i²+j²)) / √(i²+j²),
/// the prime excluding (i, j) = (0, 0). Summed over square rings until a
/// whole ring contributes less than 1e-16.
pub fn hautot_m3() -> f64 {
    let mut sum = 0.0;
    for ring in 1..=24i64 {
        let mut shell = 0.0;
        let mut point = |i: i64, j: i64| {
            let rho = ((i * i + j * j) as f64).sqrt();
            let sign = if i.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
            shell += sign / (rho * (PI * rho).sinh());
        };
        for t in -ring..ring {
            point(ring, t);
            point(-ring, t + 1);
            point(t + 1, ring);
            point(t, -ring);
        }
        sum += shell;
        if shell.abs() < 1e-16 {
            break;
        }
    }
    -PI / 2.0 + 3.0 * sum
}

/// lim_{s→∞} M_N(s) = -2N: every lattice site keeps only its 2N nearest
/// neighbors.
pub fn neighbor_limit(n: u32) -> f64 {
    -2.0 * (n as f64)
}

/// M_N(s) = -2η(2s) at s = 0, -1, -2, …, independent of N: -1 at s = 0 and
/// 0 at every negative integer.
pub fn critical_value(s: i64) -> Result<f64> {
    if s > 0 {
        return Err(Error::Domain(format!(
            "critical values exist only for s = 0, -1, -2, …; got {s}"
        )));
    }
    Ok(-2.0 * eta(2.0 * s as f64))
}

/// Dispatch used by the CLI verification report.
pub fn evaluate(id: FormulaId, n: u32, s: f64) -> Result<ClosedFormResult> {
    let value = match id {
        FormulaId::Zucker1 => zucker(1, s)?,
        FormulaId::Zucker2 => zucker(2, s)?,
        FormulaId::Zucker4 => zucker(4, s)?,
        FormulaId::Zucker6 => zucker(6, s)?,
        FormulaId::Zucker8 => zucker(8, s)?,
        FormulaId::Tyagi => tyagi_m3(),
        FormulaId::Benson => benson_mackenzie_m3(),
        FormulaId::Hautot => hautot_m3(),
        FormulaId::Limit => neighbor_limit(n),
        FormulaId::Critical => critical_value(s as i64)?,
    };
    Ok(ClosedFormResult {
        value,
        formula_id: id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{madelung_recursive, MadelungQuery};

    const M3_HALF: f64 = -1.747_564_594_633_182;

    #[test]
    fn tyagi_reproduces_known_value() {
        assert!((tyagi_m3() - M3_HALF).abs() < 1e-12);
        // with the sum dropped, still correct to 10 significant figures
        let base = tyagi_m3_base();
        assert!(((base - M3_HALF) / M3_HALF).abs() < 0.5e-9);
        assert!(((base - M3_HALF) / M3_HALF).abs() > 1e-11, "sum matters");
    }

    #[test]
    fn benson_mackenzie_reproduces_known_value() {
        assert!((benson_mackenzie_m3() - M3_HALF).abs() < 1e-12);
        // the (1,1) term dominates and is negative
        let first = -12.0 * PI / (PI / 2.0 * 2.0_f64.sqrt()).cosh().powi(2);
        assert!(first < 0.0 && (first - benson_mackenzie_m3()).abs() < 0.02);
    }

    #[test]
    fn hautot_reproduces_known_value() {
        assert!((hautot_m3() - M3_HALF).abs() < 1e-12);
    }

    #[test]
    fn reference_formulas_agree_pairwise() {
        assert!((tyagi_m3() - benson_mackenzie_m3()).abs() < 1e-12);
        assert!((benson_mackenzie_m3() - hautot_m3()).abs() < 1e-12);
        assert!((tyagi_m3() - hautot_m3()).abs() < 1e-12);
        let rec = madelung_recursive(&MadelungQuery::new(3, 0.5)).unwrap().value;
        assert!((tyagi_m3() - rec).abs() < 1e-12);
    }

    #[test]
    fn zucker_table_ii_values() {
        assert!((zucker(2, 0.5).unwrap() - -1.61554262671282).abs() < 2e-14);
        assert!((zucker(8, 1.5).unwrap() - -4.96062369646463).abs() < 2e-14);
    }

    #[test]
    fn zucker_critical_values() {
        // M_6(0) = E_2 = -1 and M_8(0) = 2(2^4-1)B_4 = -1
        assert!((zucker(6, 0.0).unwrap() + 1.0).abs() < 1e-13);
        assert!((zucker(8, 0.0).unwrap() + 1.0).abs() < 1e-13);
    }

    #[test]
    fn zucker_eight_is_finite_at_s_one() {
        let v = zucker(8, 1.0).unwrap();
        assert!(v.is_finite());
        // independent oracle: lim η(s-3)ζ(s) = η'(-2) = -7ζ'(-2) = 7ζ(3)/4π²
        // (from η = (1-2^{1-s})ζ and ζ(-2) = 0), so M_8(1) = -28ζ(3)/π²
        let expected = -28.0 * zeta(3.0).unwrap() / (PI * PI);
        assert!((v - expected).abs() < 1e-9, "{v} vs {expected}");
    }

    #[test]
    fn zucker_rejects_unsupported_dimensions() {
        assert!(matches!(zucker(3, 0.5), Err(Error::Domain(_))));
        assert!(matches!(zucker(10, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn zucker_approaches_neighbor_limit() {
        for &n in &[1u32, 2, 4, 6, 8] {
            let v = zucker(n, 60.0).unwrap();
            assert!(
                (v - neighbor_limit(n)).abs() < 1e-12,
                "N = {n}: {v} vs {}",
                neighbor_limit(n)
            );
        }
    }

    #[test]
    fn critical_values_match_eta() {
        assert_eq!(critical_value(0).unwrap(), -1.0);
        assert_eq!(critical_value(-1).unwrap(), 0.0);
        assert_eq!(critical_value(-3).unwrap(), 0.0);
        assert!(matches!(critical_value(2), Err(Error::Domain(_))));
    }

    #[test]
    fn neighbor_limit_values() {
        assert_eq!(neighbor_limit(3), -6.0);
        assert_eq!(neighbor_limit(1), -2.0);
    }
}
