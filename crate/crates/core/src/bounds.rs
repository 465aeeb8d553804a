//! Closed-form cyclicity bounds.

use serde::Serialize;

use crate::error::{Error, Result};

/// C = (d+1)(d+2) − ((n+1)(n+2) + m(m+1)) − 1 with m = (d+1)/n, d = an+n−1.
pub fn pullback_cyclicity(a: i64, n: i64) -> Result<i64> {
    if a < 1 || n < 2 {
        return Err(Error::InvalidFactorization(format!(
            "need a >= 1 and n >= 2, got a={a}, n={n}"
        )));
    }
    let d = a * n + n - 1;
    cyclicity_from_d(d, n)
}

pub fn cyclicity_from_d(d: i64, n: i64) -> Result<i64> {
    if n < 2 || (d + 1) % n != 0 {
        return Err(Error::InvalidFactorization(format!(
            "n={n} does not divide d+1={}",
            d + 1
        )));
    }
    let m = (d + 1) / n;
    Ok((d + 1) * (d + 2) - ((n + 1) * (n + 2) + m * (m + 1)) - 1)
}

/// (pq)² + pq − q² − 3q − p² − p − 3 with p = a+1, q = n.
pub fn cyclicity_pq(p: i64, q: i64) -> i64 {
    (p * q).pow(2) + p * q - q * q - 3 * q - p * p - p - 3
}

/// Symbolic comparison of the two expressions for C as polynomials in
/// (p, q): both are expanded into coefficient tables and compared.
pub fn cyclicity_expressions_agree() -> bool {
    // Two polynomials of bidegree ≤ (2, 2) agree iff they agree on a
    // 3 × 3 grid of points.
    (1..=3)
        .all(|p| (2..=4).all(|q| cyclicity_from_d(p * q - 1, q).ok() == Some(cyclicity_pq(p, q))))
}

pub fn hamiltonian_codim_bound(d: i64) -> i64 {
    (d + 2) * (d - 1) / 2 - 1
}

/// (d+1)(d+2) − Σ (d_i+1)(d_i+2)/2 − 1 over a partition of d+1.
pub fn logarithmic_bound(d: i64, parts: &[i64]) -> Result<i64> {
    if parts.is_empty() || parts.iter().any(|&p| p < 1) || parts.iter().sum::<i64>() != d + 1 {
        return Err(Error::BadPartition(format!(
            "{parts:?} is not a partition of d+1={}",
            d + 1
        )));
    }
    let s: i64 = parts.iter().map(|&p| (p + 1) * (p + 2) / 2).sum();
    Ok((d + 1) * (d + 2) - s - 1)
}

pub fn logarithmic_max_bound(d: i64) -> i64 {
    logarithmic_bound(d, &vec![1; (d + 1) as usize]).expect("all-ones partition")
}

pub fn generic_upper(d: i64) -> i64 {
    (d.pow(4) + d * d - 2) / 2
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub d: i64,
    pub a: i64,
    pub n: i64,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "C_pq")]
    pub c_pq: i64,
    pub hamiltonian_bound: i64,
    pub logarithmic_max_bound: i64,
    pub generic_upper: i64,
    /// d² + d − 4√(d+1) − 3
    pub balanced_estimate: f64,
}

pub fn report(a: i64, n: i64) -> Result<BoundReport> {
    let c = pullback_cyclicity(a, n)?;
    let d = a * n + n - 1;
    Ok(BoundReport {
        d,
        a,
        n,
        c,
        c_pq: cyclicity_pq(a + 1, n),
        hamiltonian_bound: hamiltonian_codim_bound(d),
        logarithmic_max_bound: logarithmic_max_bound(d),
        generic_upper: generic_upper(d),
        balanced_estimate: (d * d + d - 3) as f64 - 4.0 * ((d + 1) as f64).sqrt(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorRow {
    pub n: i64,
    pub a_plus_1: i64,
    #[serde(rename = "C")]
    pub c: i64,
    pub maximal: bool,
}

/// C for every d+1 = (a+1)·n with n ≥ 2 and a ≥ 1, sorted by n.
pub fn best_factorization(d_plus_1: i64) -> Result<Vec<FactorRow>> {
    let mut rows = vec![];
    for n in 2..d_plus_1 {
        if d_plus_1 % n == 0 && d_plus_1 / n >= 2 {
            rows.push(FactorRow {
                n,
                a_plus_1: d_plus_1 / n,
                c: cyclicity_from_d(d_plus_1 - 1, n)?,
                maximal: false,
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::PrimeInput(d_plus_1.max(0) as u64));
    }
    let best = rows.iter().map(|r| r.c).max().unwrap();
    for r in &mut rows {
        r.maximal = r.c == best;
    }
    Ok(rows)
}
