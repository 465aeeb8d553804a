//! Exact polynomial arithmetic over the rationals, plus a floating root finder.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "3", "-7/2" or "1.25" into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let ip: BigInt = if ip.is_empty() {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| bad())?
        };
        let fpv: BigInt = fp.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(ip * &den + fpv, den);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    c: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { c: vec![] }
    }

    pub fn constant(v: Q) -> Self {
        Self::new(vec![v])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Q]) -> Self {
        let mut p = Self::constant(q(1));
        for r in roots {
            p = &p * &Self::new(vec![-r.clone(), q(1)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.c.iter().map(|v| v * k).collect())
    }

    pub fn deriv(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    pub fn eval_c(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in self.c.iter().rev() {
            acc = acc * x + q_to_f64(v);
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(q_to_f64).collect()
    }

    /// outer(inner(x)), by Horner.
    pub fn compose(outer: &UniPoly, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for v in outer.c.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(v.clone());
        }
        acc
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.degree();
        let lc = d.leading();
        if r.len() < d.c.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let f = &r[k + dd] / &lc;
            if !f.is_zero() {
                for (i, dv) in d.c.iter().enumerate() {
                    r[k + i] -= &f * dv;
                }
            }
            quo[k] = f;
        }
        r.truncate(dd);
        (UniPoly::new(quo), UniPoly::new(r))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(q(1) / self.leading()))
    }

    /// Monic gcd over Q.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || UniPoly::gcd(self, &self.deriv()).degree() == 0
    }

    pub fn to_json(&self, var: &str) -> PolyJson {
        PolyJson {
            var: var.to_string(),
            coeffs: self.c.iter().map(fmt_q).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        Ok(Self::new(
            j.coeffs.iter().map(|s| parse_q(s)).collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if v.is_negative() { '-' } else { '+' })?;
            } else if v.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = v.abs();
            match i {
                0 => write!(f, "{}", fmt_q(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", fmt_q(&a))?;
                    }
                    if i == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "t^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    #[serde(default = "default_var")]
    pub var: String,
    pub coeffs: Vec<String>,
}

fn default_var() -> String {
    "x".into()
}

/// Sparse bivariate polynomial, (i, j) -> coefficient of x^i y^j.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    t: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(v: Q) -> Self {
        Self::monomial(0, 0, v)
    }

    pub fn monomial(i: u32, j: u32, v: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, v);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, q(1))
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, q(1))
    }

    pub fn from_uni_x(p: &UniPoly) -> Self {
        let mut r = Self::zero();
        for (i, v) in p.coeffs().iter().enumerate() {
            r.add_term(i as u32, 0, v.clone());
        }
        r
    }

    pub fn from_uni_y(p: &UniPoly) -> Self {
        let mut r = Self::zero();
        for (j, v) in p.coeffs().iter().enumerate() {
            r.add_term(0, j as u32, v.clone());
        }
        r
    }

    pub fn add_term(&mut self, i: u32, j: u32, v: Q) {
        if v.is_zero() {
            return;
        }
        let e = self.t.entry((i, j)).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.t.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.t.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.t.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.t.keys().map(|(i, j)| i + j).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            t: self
                .t
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            t: self.t.iter().map(|(m, v)| (*m, v * k)).collect(),
        }
    }

    pub fn dx(&self) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(i, j), v) in &self.t {
            if i > 0 {
                r.add_term(i - 1, j, v * q(i as i64));
            }
        }
        r
    }

    pub fn dy(&self) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(i, j), v) in &self.t {
            if j > 0 {
                r.add_term(i, j - 1, v * q(j as i64));
            }
        }
        r
    }

    pub fn integrate_x(&self) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(i, j), v) in &self.t {
            r.add_term(i + 1, j, v / q(i as i64 + 1));
        }
        r
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut r = BiPoly::constant(q(1));
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        self.t
            .iter()
            .map(|(&(i, j), v)| {
                v * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    /// self(a(x,y), b(x,y)).
    pub fn substitute(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let mut pa: Vec<BiPoly> = vec![BiPoly::constant(q(1))];
        let mut pb: Vec<BiPoly> = vec![BiPoly::constant(q(1))];
        let mut r = BiPoly::zero();
        for (&(i, j), v) in &self.t {
            while pa.len() <= i as usize {
                let next = pa.last().map(|p| p * a).unwrap_or_default();
                pa.push(next);
            }
            while pb.len() <= j as usize {
                let next = pb.last().map(|p| p * b).unwrap_or_default();
                pb.push(next);
            }
            r = &r + &(&pa[i as usize] * &pb[j as usize]).scale(v);
        }
        r
    }

    /// Splits into (g(x), h(y), constant) if there are no mixed monomials.
    pub fn as_direct_sum(&self) -> Option<(UniPoly, UniPoly)> {
        let mut g = vec![];
        let mut h = vec![];
        for (&(i, j), v) in &self.t {
            match (i, j) {
                (0, 0) => {}
                (i, 0) => {
                    g.resize(g.len().max(i as usize + 1), Q::zero());
                    g[i as usize] = v.clone();
                }
                (0, j) => {
                    h.resize(h.len().max(j as usize + 1), Q::zero());
                    h[j as usize] = v.clone();
                }
                _ => return None,
            }
        }
        let mut g = UniPoly::new(g);
        g = &g + &UniPoly::constant(self.coeff(0, 0));
        Some((g, UniPoly::new(h)))
    }

    pub fn to_json(&self) -> BiPolyJson {
        BiPolyJson {
            terms: self.t.iter().map(|(&(i, j), v)| (i, j, fmt_q(v))).collect(),
        }
    }

    pub fn from_json(j: &BiPolyJson) -> Result<Self> {
        let mut p = BiPoly::zero();
        for (i, jj, c) in &j.terms {
            p.add_term(*i, *jj, parse_q(c)?);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .t
            .iter()
            .rev()
            .map(|(&(i, j), v)| {
                let mut s = fmt_q(v);
                if i > 0 {
                    s += &if i == 1 {
                        "*x".to_string()
                    } else {
                        format!("*x^{i}")
                    };
                }
                if j > 0 {
                    s += &if j == 1 {
                        "*y".to_string()
                    } else {
                        format!("*y^{j}")
                    };
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), v) in &o.t {
            r.add_term(i, j, v.clone());
        }
        r
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), v) in &o.t {
            r.add_term(i, j, -v.clone());
        }
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&q(-1))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(i, j), v) in &self.t {
            for (&(k, l), w) in &o.t {
                r.add_term(i + k, j + l, v * w);
            }
        }
        r
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiPolyJson {
    /// `[i, j, "coefficient"]` for x^i y^j.
    pub terms: Vec<(u32, u32, String)>,
}

/// P dx + Q dy.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiForm1 {
    pub p: BiPoly,
    pub q: BiPoly,
}

impl BiForm1 {
    pub fn new(p: BiPoly, q: BiPoly) -> Self {
        BiForm1 { p, q }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// dF = F_x dx + F_y dy.
    pub fn exact(f: &BiPoly) -> Self {
        BiForm1 {
            p: f.dx(),
            q: f.dy(),
        }
    }

    /// x^i y^j (x dy - y dx).
    pub fn eta(i: u32, j: u32) -> Self {
        BiForm1 {
            p: BiPoly::monomial(i, j + 1, q(-1)),
            q: BiPoly::monomial(i + 1, j, q(1)),
        }
    }

    pub fn mul_poly(&self, f: &BiPoly) -> Self {
        BiForm1 {
            p: &self.p * f,
            q: &self.q * f,
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        BiForm1 {
            p: self.p.scale(k),
            q: self.q.scale(k),
        }
    }

    /// One plus the largest coefficient degree; 0 for the zero form.
    pub fn degree(&self) -> u32 {
        self.p
            .degree()
            .into_iter()
            .chain(self.q.degree())
            .max()
            .map_or(0, |d| d + 1)
    }

    /// Largest coefficient degree.
    pub fn coeff_degree(&self) -> Option<u32> {
        self.p.degree().into_iter().chain(self.q.degree()).max()
    }

    /// Pull back along (x, y) -> (a(x,y), b(x,y)).
    pub fn pullback(&self, a: &BiPoly, b: &BiPoly) -> Self {
        let pp = self.p.substitute(a, b);
        let qq = self.q.substitute(a, b);
        let p = &(&pp * &a.dx()) + &(&qq * &b.dx());
        let q = &(&pp * &a.dy()) + &(&qq * &b.dy());
        BiForm1 { p, q }
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            p: self.p.to_json(),
            q: self.q.to_json(),
        }
    }

    pub fn from_json(j: &FormJson) -> Result<Self> {
        Ok(BiForm1 {
            p: BiPoly::from_json(&j.p)?,
            q: BiPoly::from_json(&j.q)?,
        })
    }
}

impl Add for &BiForm1 {
    type Output = BiForm1;
    fn add(self, o: &BiForm1) -> BiForm1 {
        BiForm1 {
            p: &self.p + &o.p,
            q: &self.q + &o.q,
        }
    }
}

impl Sub for &BiForm1 {
    type Output = BiForm1;
    fn sub(self, o: &BiForm1) -> BiForm1 {
        BiForm1 {
            p: &self.p - &o.p,
            q: &self.q - &o.q,
        }
    }
}

impl fmt::Display for BiForm1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.p, self.q)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    #[serde(rename = "P")]
    pub p: BiPolyJson,
    #[serde(rename = "Q")]
    pub q: BiPolyJson,
}

/// Coefficient of dx∧dy in d(P dx + Q dy).
pub fn d1(form: &BiForm1) -> BiPoly {
    &form.q.dx() - &form.p.dy()
}

#[derive(Clone, Debug)]
pub struct ComplexRootSet {
    pub roots: Vec<Complex64>,
    pub residual_bound: f64,
}

pub const ROOT_ITER_CAP: usize = 500;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Numeric tolerance: `LEFSCHETZ_TOL` if set to a positive number, else
/// `DEFAULT_TOL`. Read once per process.
pub fn tolerance() -> f64 {
    static TOL: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("LEFSCHETZ_TOL")
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TOL)
    })
}

fn scale_at(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, v| acc * r + v.abs())
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for v in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + v;
    }
    (p, dp)
}

/// Lexicographic order on (re, im) used for every fiber.
pub fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// All complex roots of a squarefree polynomial, sorted by (re, im).
///
/// Aberth–Ehrlich iteration started from the companion-matrix eigenvalues.
/// Exact input is first checked for repeated factors.
pub fn roots(p: &UniPoly, tol: f64) -> Result<ComplexRootSet> {
    if !p.is_squarefree() {
        let g = UniPoly::gcd(p, &p.deriv());
        return Err(Error::NonSquarefree(
            format!("repeated factor {g}"),
            String::new(),
        ));
    }
    roots_f64(&p.to_f64(), tol)
}

pub fn roots_f64(c: &[f64], tol: f64) -> Result<ComplexRootSet> {
    let n = c.len().saturating_sub(1);
    assert!(n >= 1, "roots of a constant polynomial");
    let lc = c[n];
    let mut z: Vec<Complex64> = if n == 1 {
        vec![Complex64::new(-c[0] / c[1], 0.0)]
    } else {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -c[i] / lc;
        }
        m.complex_eigenvalues().iter().copied().collect()
    };
    // Nudge exact coincidences so the Aberth correction is defined.
    for k in 0..n {
        for j in 0..k {
            if (z[k] - z[j]).norm() < 1e-12 {
                z[k] += Complex64::new(1e-7 * (k as f64 + 1.0), 1e-7);
            }
        }
    }
    let mut converged = false;
    for _ in 0..ROOT_ITER_CAP {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (pv, dpv) = horner(c, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let w = pv / dpv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    let mut residual: f64 = 0.0;
    for zk in &z {
        let r = horner(c, *zk).0.norm() / scale_at(c, *zk);
        residual = residual.max(r);
    }
    if !converged && residual > tol {
        return Err(Error::DidNotConverge {
            iterations: ROOT_ITER_CAP,
        });
    }
    if residual > tol {
        return Err(Error::DidNotConverge {
            iterations: ROOT_ITER_CAP,
        });
    }
    z.sort_by(cmp_complex);
    for k in 1..n {
        for j in 0..k {
            if (z[k] - z[j]).norm() < tol * z[k].norm().max(1.0) {
                return Err(Error::NonSquarefree(
                    format!("{}", z[j]),
                    format!("{}", z[k]),
                ));
            }
        }
    }
    Ok(ComplexRootSet {
        roots: z,
        residual_bound: residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-7/2").unwrap(), qf(-7, 2));
        assert_eq!(parse_q("1.25").unwrap(), qf(5, 4));
        assert_eq!(parse_q("-0.5").unwrap(), qf(-1, 2));
        assert_eq!(fmt_q(&qf(6, 4)), "3/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn roots_of_factored_inputs() {
        let r = roots(&UniPoly::from_i64(&[-1, 0, 1]), DEFAULT_TOL).unwrap();
        assert!((r.roots[0].re + 1.0).abs() < 1e-12 && (r.roots[1].re - 1.0).abs() < 1e-12);
        let r = roots(&UniPoly::from_i64(&[0, -3, 0, 1]), DEFAULT_TOL).unwrap();
        let s3 = 3f64.sqrt();
        for (z, e) in r.roots.iter().zip([-s3, 0.0, s3]) {
            assert!((z - e).norm() < 1e-12);
        }
        let g = UniPoly::from_roots(&[q(1), q(3)]);
        let r = roots(&g.deriv(), DEFAULT_TOL).unwrap();
        assert!((r.roots[0].re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn roots_reject_double_root() {
        let p = UniPoly::from_roots(&[q(1), q(1), q(3)]);
        assert!(roots(&p, DEFAULT_TOL).is_err());
    }

    #[test]
    fn compose_examples() {
        let out = UniPoly::from_i64(&[0, 0, 1]);
        let inner = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(
            UniPoly::compose(&out, &inner),
            UniPoly::from_i64(&[4, 0, -4, 0, 1])
        );
        assert_eq!(UniPoly::compose(&UniPoly::x(), &inner), inner);
        let g = UniPoly::from_roots(&[q(1), q(3)]);
        let r = UniPoly::from_roots(&[q(0), q(2)]);
        let gr = UniPoly::compose(&g, &r);
        assert_eq!(gr.coeff(4), q(1));
        assert_eq!(gr.coeff(3), q(-4));
        for t in -2..3 {
            let t = q(t);
            assert_eq!(gr.eval(&t), g.eval(&r.eval(&t)));
        }
    }

    #[test]
    fn d1_examples() {
        let xdy = BiForm1::new(BiPoly::zero(), BiPoly::x());
        assert_eq!(d1(&xdy), BiPoly::constant(q(1)));
        let xy = &BiPoly::x() * &BiPoly::y();
        assert!(d1(&BiForm1::exact(&xy)).is_zero());
        assert_eq!(d1(&BiForm1::eta(0, 0)), BiPoly::constant(q(2)));
    }

    #[test]
    fn gcd_and_division() {
        let a = UniPoly::from_roots(&[q(1), q(2), q(3)]);
        let b = UniPoly::from_roots(&[q(2), q(5)]);
        assert_eq!(UniPoly::gcd(&a, &b), UniPoly::from_roots(&[q(2)]));
        let (qq, r) = a.div_rem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(a.is_squarefree());
        assert!(!UniPoly::from_roots(&[q(1), q(1)]).is_squarefree());
    }

    #[test]
    fn json_round_trip() {
        let p = UniPoly::new(vec![qf(-1, 3), q(0), q(1)]);
        let j = serde_json::to_string(&p.to_json("x")).unwrap();
        assert_eq!(j, r#"{"var":"x","coeffs":["-1/3","0","1"]}"#);
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(UniPoly::from_json(&back).unwrap(), p);
        let w = BiForm1::eta(1, 2);
        let s = serde_json::to_string(&w.to_json()).unwrap();
        let back: FormJson = serde_json::from_str(&s).unwrap();
        assert_eq!(BiForm1::from_json(&back).unwrap(), w);
    }

    #[test]
    fn direct_sum_split() {
        let l = &(&BiPoly::x().pow(2) + &BiPoly::y().pow(3)) + &BiPoly::constant(q(5));
        let (g, h) = l.as_direct_sum().unwrap();
        assert_eq!(g, UniPoly::from_i64(&[5, 0, 1]));
        assert_eq!(h, UniPoly::from_i64(&[0, 0, 0, 1]));
        assert!((&BiPoly::x() * &BiPoly::y()).as_direct_sum().is_none());
    }
}
