//! The data (R, S, g, h) and its labelled critical values.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{fmt_q, parse_q, q, qf, roots, roots_f64, tolerance, UniPoly, Q};

/// Relative tolerance for numeric equality of critical values.
pub const VALUE_TOL: f64 = 1e-9;

/// `C(i)` is c_i (1 ≤ i ≤ a); `T(k)` is c̃_k (a+1 ≤ k ≤ a+n−1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ValueLabel {
    C(usize),
    T(usize),
}

impl fmt::Display for ValueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueLabel::C(i) => write!(f, "c{i}"),
            ValueLabel::T(k) => write!(f, "t{k}"),
        }
    }
}

impl std::str::FromStr for ValueLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownCriticalValue(s.to_string());
        let (head, rest) = s.split_at(1.min(s.len()));
        let k: usize = rest.parse().map_err(|_| bad())?;
        match head {
            "c" => Ok(ValueLabel::C(k)),
            "t" => Ok(ValueLabel::T(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CritValue {
    pub label: ValueLabel,
    pub value: f64,
    /// Critical points of the composite with this value, ascending.
    pub points: Vec<f64>,
    /// The critical point of the outer (for c) or inner (for c̃) polynomial.
    pub source: f64,
}

/// Critical data of one composite outer∘inner (g∘R or h∘S).
#[derive(Clone, Debug, Serialize)]
pub struct SideData {
    /// c_1..c_a in label order.
    pub c: Vec<CritValue>,
    /// c̃_{a+1}..c̃_{a+n−1}.
    pub ctilde: Vec<CritValue>,
}

impl SideData {
    pub fn all(&self) -> impl Iterator<Item = &CritValue> {
        self.c.iter().chain(self.ctilde.iter())
    }

    pub fn get(&self, l: ValueLabel) -> Option<&CritValue> {
        self.all().find(|v| v.label == l)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalData {
    pub left: SideData,
    pub right: SideData,
    /// True when some decision relied on a floating comparison.
    pub numeric_equality: bool,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub n: usize,
    pub a: usize,
    pub r_roots: Vec<Q>,
    pub s_roots: Vec<Q>,
    pub g_roots: Vec<Q>,
    pub h_roots: Vec<Q>,
    pub r: UniPoly,
    pub s: UniPoly,
    pub g: UniPoly,
    pub h: UniPoly,
    pub gr: UniPoly,
    pub hs: UniPoly,
    pub crit: CriticalData,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioJson {
    pub n: usize,
    pub a: usize,
    #[serde(rename = "R_roots")]
    pub r_roots: Vec<String>,
    #[serde(rename = "S_roots")]
    pub s_roots: Vec<String>,
    pub g_roots: Vec<String>,
    pub h_roots: Vec<String>,
}

fn real_roots(c: &[f64], what: &str) -> Result<Vec<f64>> {
    let rs = roots_f64(c, tolerance())?;
    let mut out = vec![];
    for z in rs.roots {
        if z.im.abs() > 1e-7 * z.norm().max(1.0) {
            return Err(Error::ConditionViolation {
                index: 2,
                witness: format!("{what} has a non-real root {z}"),
            });
        }
        out.push(z.re);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= VALUE_TOL * a.abs().max(b.abs()).max(1.0)
}

fn check_distinct(name: &str, vals: &[f64]) -> Result<()> {
    for i in 0..vals.len() {
        for j in 0..i {
            if close(vals[i], vals[j]) {
                return Err(Error::NotMorse {
                    function: name.to_string(),
                    detail: format!("critical values {} and {} coincide", vals[j], vals[i]),
                });
            }
        }
    }
    Ok(())
}

fn check_simple_critical_points(name: &str, p: &UniPoly) -> Result<()> {
    if !p.deriv().is_squarefree() {
        return Err(Error::NotMorse {
            function: name.to_string(),
            detail: "degenerate critical point".into(),
        });
    }
    Ok(())
}

fn shift(p: &UniPoly, c: f64) -> Vec<f64> {
    let mut v = p.to_f64();
    v[0] -= c;
    v
}

/// Critical data of outer∘inner with labels per the ordering convention.
fn side_data(
    outer: &UniPoly,
    inner: &UniPoly,
    n: usize,
    a: usize,
    names: (&str, &str),
) -> Result<SideData> {
    let comp = UniPoly::compose(outer, inner);
    let p = real_roots(&outer.deriv().to_f64(), names.0)?;
    let qs = real_roots(&inner.deriv().to_f64(), names.1)?;
    let mut c = vec![];
    for (i, &pi) in p.iter().enumerate() {
        let label = if n % 2 == 1 {
            ValueLabel::C(i + 1)
        } else {
            ValueLabel::C(a - i)
        };
        let pre = real_roots(&shift(inner, pi), &format!("{}(x)={pi}", names.1))?;
        if pre.len() != n {
            return Err(Error::ConditionViolation {
                index: 2,
                witness: format!(
                    "{}(x) = {pi} has {} real roots, expected {n}",
                    names.1,
                    pre.len()
                ),
            });
        }
        c.push(CritValue {
            label,
            value: outer.eval_c(pi.into()).re,
            points: pre,
            source: pi,
        });
    }
    c.sort_by_key(|v| v.label);
    let ctilde = qs
        .iter()
        .enumerate()
        .map(|(j, &qj)| CritValue {
            label: ValueLabel::T(a + j + 1),
            value: comp.eval_c(qj.into()).re,
            points: vec![qj],
            source: qj,
        })
        .collect();
    Ok(SideData { c, ctilde })
}

impl Scenario {
    pub fn build(r_roots: &[Q], s_roots: &[Q], g_roots: &[Q], h_roots: &[Q]) -> Result<Scenario> {
        let n = r_roots.len();
        let a1 = g_roots.len();
        if n < 2 || s_roots.len() != n {
            return Err(Error::Parse(format!(
                "need |R_roots| = |S_roots| = n >= 2, got {n} and {}",
                s_roots.len()
            )));
        }
        if a1 < 2 || h_roots.len() != a1 {
            return Err(Error::Parse(format!(
                "need |g_roots| = |h_roots| = a+1 >= 2, got {a1} and {}",
                h_roots.len()
            )));
        }
        let a = a1 - 1;
        for (name, rs) in [
            ("R", r_roots),
            ("S", s_roots),
            ("g", g_roots),
            ("h", h_roots),
        ] {
            for i in 0..rs.len() {
                for j in 0..i {
                    if rs[i] == rs[j] {
                        return Err(Error::NotMorse {
                            function: name.to_string(),
                            detail: format!("repeated root {}", fmt_q(&rs[i])),
                        });
                    }
                }
            }
        }
        // Condition 1.
        for (name, rs, strict) in [
            ("g", g_roots, true),
            ("h", h_roots, true),
            ("R", r_roots, false),
            ("S", s_roots, false),
        ] {
            for r in rs {
                if r.is_negative() || (strict && *r == q(0)) {
                    let kind = if strict { "positive" } else { "non-negative" };
                    return Err(Error::ConditionViolation {
                        index: 1,
                        witness: format!("root {} of {name} is not {kind}", fmt_q(r)),
                    });
                }
            }
        }
        let r = UniPoly::from_roots(r_roots);
        let s = UniPoly::from_roots(s_roots);
        let g = UniPoly::from_roots(g_roots);
        let h = UniPoly::from_roots(h_roots);
        // Condition 2: R(x) = s_i has n distinct real roots.
        for (inner, outer_roots, iname) in [(&r, g_roots, "R"), (&s, h_roots, "S")] {
            for si in outer_roots {
                let w = inner - &UniPoly::constant(si.clone());
                let ok = w.is_squarefree()
                    && real_roots(&w.to_f64(), iname)
                        .map(|v| v.len() == n)
                        .unwrap_or(false);
                if !ok {
                    return Err(Error::ConditionViolation {
                        index: 2,
                        witness: format!(
                            "{iname}(x) = {} does not have {n} distinct real roots",
                            fmt_q(si)
                        ),
                    });
                }
            }
        }
        let gr = UniPoly::compose(&g, &r);
        let hs = UniPoly::compose(&h, &s);
        for (name, p) in [
            ("g", &g),
            ("h", &h),
            ("R", &r),
            ("S", &s),
            ("g∘R", &gr),
            ("h∘S", &hs),
        ] {
            check_simple_critical_points(name, p)?;
        }
        let left = side_data(&g, &r, n, a, ("g", "R"))?;
        let right = side_data(&h, &s, n, a, ("h", "S"))?;
        for (name, inner) in [("R", &r), ("S", &s)] {
            let qs = real_roots(&inner.deriv().to_f64(), name)?;
            let vals: Vec<f64> = qs.iter().map(|&x| inner.eval_c(x.into()).re).collect();
            check_distinct(name, &vals)?;
        }
        for (name, side) in [("g∘R", &left), ("h∘S", &right)] {
            let vals: Vec<f64> = side.all().map(|v| v.value).collect();
            check_distinct(name, &vals)?;
        }
        for u in left.all() {
            for v in right.all() {
                if close(u.value, v.value) {
                    return Err(Error::NotMorse {
                        function: "g∘R, h∘S".into(),
                        detail: format!(
                            "shared critical value {} ({} and {})",
                            u.value, u.label, v.label
                        ),
                    });
                }
            }
        }
        let mut numeric_equality = false;
        // Condition 4, strict.
        for (side, outer, name) in [(&left, &g, "g∘R"), (&right, &h, "h∘S")] {
            for t in &side.ctilde {
                for c in &side.c {
                    let big = t.value.abs();
                    let small = outer.eval_c(c.source.into()).re.abs();
                    if close(big, small) {
                        numeric_equality = true;
                    }
                    if big <= small || close(big, small) {
                        return Err(Error::ConditionViolation {
                            index: 4,
                            witness: format!(
                                "|{name}({:.6})| = {big:.6} is not greater than |{name}| = {small:.6} at the preimages of the critical point {:.6}",
                                t.source, c.source
                            ),
                        });
                    }
                }
            }
        }
        Ok(Scenario {
            n,
            a,
            r_roots: r_roots.to_vec(),
            s_roots: s_roots.to_vec(),
            g_roots: g_roots.to_vec(),
            h_roots: h_roots.to_vec(),
            r,
            s,
            g,
            h,
            gr,
            hs,
            crit: CriticalData {
                left,
                right,
                numeric_equality,
            },
        })
    }

    pub fn from_json(j: &ScenarioJson) -> Result<Scenario> {
        let p = |v: &[String]| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>();
        let (r, s, g, h) = (
            p(&j.r_roots)?,
            p(&j.s_roots)?,
            p(&j.g_roots)?,
            p(&j.h_roots)?,
        );
        if r.len() != j.n || s.len() != j.n {
            return Err(Error::Parse(format!(
                "n = {} but R/S have {} and {} roots",
                j.n,
                r.len(),
                s.len()
            )));
        }
        if g.len() != j.a + 1 || h.len() != j.a + 1 {
            return Err(Error::Parse(format!(
                "a = {} but g/h have {} and {} roots",
                j.a,
                g.len(),
                h.len()
            )));
        }
        Scenario::build(&r, &s, &g, &h)
    }

    pub fn from_json_str(s: &str) -> Result<Scenario> {
        Scenario::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> ScenarioJson {
        let f = |v: &[Q]| v.iter().map(fmt_q).collect();
        ScenarioJson {
            n: self.n,
            a: self.a,
            r_roots: f(&self.r_roots),
            s_roots: f(&self.s_roots),
            g_roots: f(&self.g_roots),
            h_roots: f(&self.h_roots),
        }
    }

    /// Deterministic valid scenario for (a, n): R and S roots 0, 2, 4, ...
    /// (bent slightly when the symmetric choice makes R non-Morse); g and h
    /// roots packed into a short interval above 1 with uneven gaps so that
    /// all critical values stay distinct. Candidates are validated, and the
    /// spread is halved until one passes.
    pub fn generate(a: usize, n: usize) -> Result<Scenario> {
        let mut last = None;
        for bend in [q(0), qf(1, 8)] {
            let rr: Vec<Q> = (0..n as i64).map(|i| q(2 * i) + &bend * q(i * i)).collect();
            let mut spread = q(1);
            for _ in 0..12 {
                let a1 = (a + 1) as i64;
                let g: Vec<Q> = (0..a1)
                    .map(|k| q(1) + &spread * qf(8 * k + k * k, 16 * a1))
                    .collect();
                let h: Vec<Q> = (0..a1)
                    .map(|k| qf(6, 5) + &spread * qf(6 * k + k * k, 15 * a1))
                    .collect();
                match Scenario::build(&rr, &rr, &g, &h) {
                    Ok(s) => return Ok(s),
                    Err(e) => last = Some(e),
                }
                spread /= q(2);
            }
        }
        Err(last.expect("at least one attempt"))
    }

    pub fn critical_data(&self) -> &CriticalData {
        &self.crit
    }

    pub fn validation_report(&self) -> serde_json::Value {
        let side = |s: &SideData| -> serde_json::Value {
            s.all()
                .map(|v| serde_json::json!({"label": v.label.to_string(), "value": v.value, "critical_points": v.points}))
                .collect()
        };
        serde_json::json!({
            "valid": true,
            "a": self.a,
            "n": self.n,
            "conditions": [1, 2, 3, 4],
            "g_R": side(&self.crit.left),
            "h_S": side(&self.crit.right),
            "numeric_equality": self.crit.numeric_equality,
        })
    }
}

/// Critical values of f = g + h as labelled for the one-variable bases of g and h.
pub fn plain_values(p: &UniPoly) -> Result<Vec<(f64, f64)>> {
    let cps = roots(&p.deriv(), tolerance())?;
    Ok(cps.roots.iter().map(|z| (z.re, p.eval_c(*z).re)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_example_is_valid() {
        let s = Scenario::build(
            &qs(&[0, 2]),
            &qs(&[0, 2]),
            &qs(&[1, 3]),
            &[qf(6, 5), qf(8, 5)],
        )
        .unwrap();
        let c = &s.crit.left;
        assert_eq!(c.c.len(), 1);
        assert_eq!(c.c[0].label, ValueLabel::C(1));
        assert!((c.c[0].value + 1.0).abs() < 1e-12);
        assert_eq!(c.ctilde[0].label, ValueLabel::T(2));
        assert!((c.ctilde[0].value - 8.0).abs() < 1e-12);
    }

    #[test]
    fn condition_one() {
        let e =
            Scenario::build(&qs(&[0, 2]), &qs(&[0, 2]), &qs(&[-1, 3]), &qs(&[2, 5])).unwrap_err();
        assert!(matches!(e, Error::ConditionViolation { index: 1, .. }));
    }

    #[test]
    fn repeated_root_is_not_morse() {
        let e = Scenario::build(&qs(&[0, 2]), &qs(&[0, 2]), &qs(&[1, 1, 3]), &qs(&[2, 3, 5]))
            .unwrap_err();
        assert!(matches!(e, Error::NotMorse { .. }));
    }

    #[test]
    fn even_n_reverses_c() {
        let s = Scenario::generate(2, 2).unwrap();
        let c = &s.crit.left.c;
        // c_1 sits over the larger critical point of g when n is even.
        assert!(c[0].source > c[1].source);
        let s3 = Scenario::generate(2, 3).unwrap();
        let c = &s3.crit.left.c;
        assert!(c[0].source < c[1].source);
    }

    #[test]
    fn generator_covers_desk_range() {
        for a in 1..=3 {
            for n in 2..=4 {
                let s = Scenario::generate(a, n).unwrap();
                assert_eq!(s.crit.left.c.len(), a);
                assert_eq!(s.crit.left.ctilde.len(), n - 1);
                for v in &s.crit.left.c {
                    assert_eq!(v.points.len(), n);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let s = Scenario::generate(1, 2).unwrap();
        let txt = serde_json::to_string(&s.to_json()).unwrap();
        let back = Scenario::from_json_str(&txt).unwrap();
        assert_eq!(back.g_roots, s.g_roots);
        assert!(Scenario::from_json_str(r#"{"n":2,"a":1,"R_roots":["0","2"],"S_roots":["0","2"],"g_roots":["1","3"],"h_roots":["6/5","8/5"],"extra":1}"#).is_err());
    }
}
