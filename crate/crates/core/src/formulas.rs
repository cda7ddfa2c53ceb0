//! Exact counting formulas and lower bounds for the family profiles,
//! independent of any enumeration.
//!
//! All arithmetic is checked `u128`; the one floating-point form is guarded
//! by a cross-check against its recurrence.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FormulaKind {
    /// `φ(n) = φ(n-1) + φ(n-3)`, seeds `1, 1, 1`.
    C3Recurrence,
    /// `(1/2n) Σ_{d | n, d odd} totient(d) 2^{n/d}` for `n ≥ 1`.
    CameronDiamondFree,
    /// `2^{n-2}` for `n ≥ 2`.
    KClosed,
    /// `1 + Σ_{j=1}^{n-2} (n-j-1) φ(j)` for `n ≥ 3`, with `φ(1) = φ(2) = 1`.
    KRecurrence,
    /// `max(2^{n-2} - 1 - C(n-1, 2), 0)`.
    ULower,
    /// `max(2^{n-4} - (n-3) - 1, 0)`.
    HLower,
    /// `2^{n-5}`, and 0 below `n = 5`.
    VLower,
}

impl FormulaKind {
    pub const ALL: [FormulaKind; 7] = [
        FormulaKind::C3Recurrence,
        FormulaKind::CameronDiamondFree,
        FormulaKind::KClosed,
        FormulaKind::KRecurrence,
        FormulaKind::ULower,
        FormulaKind::HLower,
        FormulaKind::VLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaKind::C3Recurrence => "C3_RECURRENCE",
            FormulaKind::CameronDiamondFree => "CAMERON_DIAMOND_FREE",
            FormulaKind::KClosed => "K_CLOSED",
            FormulaKind::KRecurrence => "K_RECURRENCE",
            FormulaKind::ULower => "U_LOWER",
            FormulaKind::HLower => "H_LOWER",
            FormulaKind::VLower => "V_LOWER",
        }
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        FormulaKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| format!("unknown formula `{s}`"))
    }
}

fn pow2(n: u64, what: &'static str) -> Result<u128> {
    if n >= 128 {
        return Err(Error::Overflow(what));
    }
    Ok(1u128 << n)
}

fn c3_recurrence(n: u64) -> Result<u128> {
    let (mut a, mut b, mut c) = (1u128, 1u128, 1u128);
    for _ in 3..=n {
        let next = c.checked_add(a).ok_or(Error::Overflow("C3_RECURRENCE"))?;
        (a, b, c) = (b, c, next);
    }
    Ok(match n {
        0 => a,
        1 => b,
        _ => c,
    })
}

fn cameron(n: u64) -> Result<u128> {
    const NAME: &str = "CAMERON_DIAMOND_FREE";
    if n == 0 {
        return Err(Error::Domain { formula: NAME, n });
    }
    let mut sum = 0u128;
    for d in (1..=n).step_by(2).filter(|d| n.is_multiple_of(*d)) {
        let term = (euler_totient(d)? as u128)
            .checked_mul(pow2(n / d, NAME)?)
            .ok_or(Error::Overflow(NAME))?;
        sum = sum.checked_add(term).ok_or(Error::Overflow(NAME))?;
    }
    let den = 2 * n as u128;
    if !sum.is_multiple_of(den) {
        return Err(Error::NonInteger { formula: NAME, n });
    }
    Ok(sum / den)
}

fn k_recurrence(n: u64) -> Result<u128> {
    const NAME: &str = "K_RECURRENCE";
    if n < 3 {
        return Err(Error::Domain { formula: NAME, n });
    }
    // phi[j] for j = 1..n-1, each obtained from the same recurrence.
    let mut phi = vec![0u128, 1, 1];
    for m in 3..=n {
        let mut v = 1u128;
        for j in 1..=m - 2 {
            let term = ((m - j - 1) as u128)
                .checked_mul(phi[j as usize])
                .ok_or(Error::Overflow(NAME))?;
            v = v.checked_add(term).ok_or(Error::Overflow(NAME))?;
        }
        phi.push(v);
    }
    Ok(phi[n as usize])
}

fn binomial2(m: u64) -> u128 {
    let m = m as u128;
    m * m.saturating_sub(1) / 2
}

pub fn formula_value(kind: FormulaKind, n: u64) -> Result<u128> {
    match kind {
        FormulaKind::C3Recurrence => c3_recurrence(n),
        FormulaKind::CameronDiamondFree => cameron(n),
        FormulaKind::KClosed => {
            if n < 2 {
                return Err(Error::Domain { formula: kind.name(), n });
            }
            pow2(n - 2, kind.name())
        }
        FormulaKind::KRecurrence => k_recurrence(n),
        FormulaKind::ULower => {
            if n < 2 {
                return Ok(0);
            }
            Ok(pow2(n - 2, kind.name())?.saturating_sub(1 + binomial2(n - 1)))
        }
        FormulaKind::HLower => {
            if n < 4 {
                return Ok(0);
            }
            Ok(pow2(n - 4, kind.name())?.saturating_sub(n as u128 - 3 + 1))
        }
        FormulaKind::VLower => {
            if n < 5 {
                return Ok(0);
            }
            pow2(n - 5, kind.name())
        }
    }
}

/// Number of partitions of `n` into at most `k` parts, with `p_k(0) = 1`.
pub fn partition_count(k: u64, n: u64) -> Result<u128> {
    // row[m] holds p_j(m) for the current j; p_j(m) = p_{j-1}(m) + p_j(m - j).
    let n = n as usize;
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for j in 1..=k.min(n as u64) as usize {
        for m in j..=n {
            row[m] = row[m]
                .checked_add(row[m - j])
                .ok_or(Error::Overflow("partition_count"))?;
        }
    }
    Ok(row[n])
}

pub fn euler_totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain {
            formula: "euler_totient",
            n,
        });
    }
    let (mut m, mut result) = (n, n);
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    Ok(result)
}

/// Real root of `x^3 - x^2 - 1`.
pub const A000930_C: f64 = 1.465571231876768;
/// Real root of `31x^3 - 31x^2 + 9x - 1`.
pub const A000930_D: f64 = 0.611491991950812;
/// Range over which the floating-point form is checked against the recurrence.
pub const A000930_CHECKED_UP_TO: u64 = 30;

/// `floor(d c^n + 1/2)`; fails with a precision error whenever it differs
/// from the recurrence on `0..=max(n, 30)`.
pub fn a000930_floor_form(n: u64) -> Result<u128> {
    let eval = |m: u64| (A000930_D * A000930_C.powi(m as i32) + 0.5).floor() as u128;
    for m in 0..=n.max(A000930_CHECKED_UP_TO) {
        let (float, exact) = (eval(m), c3_recurrence(m)?);
        if float != exact {
            return Err(Error::Precision { n: m, float, exact });
        }
    }
    Ok(eval(n))
}
