//! Reduced H₀ of fibers of one-variable polynomials: vanishing cycles,
//! the point-counting intersection form, monodromy and pushforward.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{identity, solve_q, IntMat};
use crate::oracle0::{
    arc_polyline, continue_path, fiber, induced_on_h0, simple_loop, track, FiberPermutation,
    HalfPlane, TrackOptions,
};
use crate::polycore::{roots, tolerance, UniPoly};
use crate::scenario::{CritValue, Scenario, ValueLabel, VALUE_TOL};
use crate::zlattice::{big, kernel, orbit_closure, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label0 {
    /// δ_i of a plain polynomial, i counted along ascending critical points.
    Plain(usize),
    /// δ_{c}^{sheet}.
    PullBack { c: usize, sheet: usize },
    /// δ_{c̃_k}.
    Tangency(usize),
}

impl fmt::Display for Label0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label0::Plain(i) => write!(f, "d{i}"),
            Label0::PullBack { c, sheet } => write!(f, "d{c}^{sheet}"),
            Label0::Tangency(k) => write!(f, "d{k}"),
        }
    }
}

impl Label0 {
    pub fn is_tangency(&self) -> bool {
        matches!(self, Label0::Tangency(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cycle0 {
    pub label: Label0,
    pub value: ValueLabel,
    pub value_num: f64,
    pub critical_point: f64,
    /// Coefficients over the fiber points.
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Basis0 {
    pub base: f64,
    pub half: HalfPlane,
    pub points: Vec<Complex64>,
    pub cycles: Vec<Cycle0>,
}

pub fn intersection0(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Pairs of fiber points (by index) that collide at each critical point,
/// found by continuing the fiber along the distinguished arc.
fn collide_pairs(
    poly: &UniPoly,
    base: f64,
    values: &[CritValue],
    half: HalfPlane,
) -> Result<Vec<(usize, usize, usize, f64)>> {
    for v in values {
        if (v.value - base).abs() <= VALUE_TOL * v.value.abs().max(1.0) {
            return Err(Error::NotRegularValue(format!(
                "{base} is the critical value {}",
                v.label
            )));
        }
    }
    let b = Complex64::new(base, 0.0);
    let mut out = vec![];
    for (vi, v) in values.iter().enumerate() {
        let c = Complex64::new(v.value, 0.0);
        let others = values
            .iter()
            .filter(|o| o.label != v.label)
            .map(|o| (o.value - v.value).abs());
        let rho = 0.25 * others.fold((c - b).norm(), f64::min);
        let path = arc_polyline(b, c, rho, half);
        let end = continue_path(poly, &path, &TrackOptions::default())?;
        for &xi in &v.points {
            let mut d: Vec<(usize, f64)> = end
                .iter()
                .enumerate()
                .map(|(i, x)| (i, (x - xi).norm()))
                .collect();
            d.sort_by(|a, b| a.1.total_cmp(&b.1));
            if d.len() > 2 && d[1].1 > 0.5 * d[2].1 {
                return Err(Error::TrackingLoss(format!(
                    "no colliding pair at critical point {xi}"
                )));
            }
            let (i, j) = (d[0].0.min(d[1].0), d[0].0.max(d[1].0));
            out.push((vi, i, j, xi));
        }
    }
    Ok(out)
}

fn pair_cycle(npts: usize, plus: usize, minus: usize) -> Vec<i64> {
    let mut v = vec![0; npts];
    v[plus] = 1;
    v[minus] = -1;
    v
}

/// Plain Morse polynomial: δ_i over ascending critical points, oriented
/// smaller point minus larger point. Critical values are labelled C(i)
/// ascending unless `labels` is given.
pub fn basis0_plain(
    poly: &UniPoly,
    base: f64,
    half: HalfPlane,
    labels: Option<&[ValueLabel]>,
) -> Result<Basis0> {
    let cps = roots(&poly.deriv(), tolerance())?;
    let values: Vec<CritValue> = cps
        .roots
        .iter()
        .enumerate()
        .map(|(i, z)| CritValue {
            label: labels.map_or(ValueLabel::C(i + 1), |l| l[i]),
            value: poly.eval_c(*z).re,
            points: vec![z.re],
            source: z.re,
        })
        .collect();
    let points = fiber(poly, Complex64::new(base, 0.0))?;
    let pairs = collide_pairs(poly, base, &values, half)?;
    let cycles = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (vi, i, j, xi))| Cycle0 {
            label: Label0::Plain(k + 1),
            value: values[vi].label,
            value_num: values[vi].value,
            critical_point: xi,
            coeffs: pair_cycle(points.len(), i, j),
        })
        .collect();
    Ok(Basis0 {
        base,
        half,
        points,
        cycles,
    })
}

/// Which composite of the scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// g∘R, paths in the upper half-plane.
    Left,
    /// h∘S, paths in the lower half-plane.
    Right,
}

impl Side {
    pub fn half(self) -> HalfPlane {
        match self {
            Side::Left => HalfPlane::Upper,
            Side::Right => HalfPlane::Lower,
        }
    }
}

pub fn side_polys(s: &Scenario, side: Side) -> (&UniPoly, &UniPoly, &UniPoly) {
    match side {
        Side::Left => (&s.g, &s.r, &s.gr),
        Side::Right => (&s.h, &s.s, &s.hs),
    }
}

/// Distinguished basis of H₀ of (g∘R)⁻¹(0) or (h∘S)⁻¹(0): pull-back cycles
/// δ_c^j (j counts preimages left to right) oriented as lifts of γ_c, then
/// tangency cycles δ_k oriented smaller point minus larger.
pub fn basis0_side(s: &Scenario, side: Side) -> Result<Basis0> {
    let (_, inner, comp) = side_polys(s, side);
    let data = match side {
        Side::Left => &s.crit.left,
        Side::Right => &s.crit.right,
    };
    let values: Vec<CritValue> = data.all().cloned().collect();
    let points = fiber(comp, Complex64::new(0.0, 0.0))?;
    let pairs = collide_pairs(comp, 0.0, &values, side.half())?;
    let mut cycles = vec![];
    for (vi, i, j, xi) in pairs {
        let v = &values[vi];
        let (label, plus, minus) = match v.label {
            ValueLabel::C(c) => {
                let sheet = v
                    .points
                    .iter()
                    .position(|&p| p == xi)
                    .expect("point of this value")
                    + 1;
                let ri = inner.eval_c(points[i]).re;
                let rj = inner.eval_c(points[j]).re;
                let (p, m) = if ri < rj { (i, j) } else { (j, i) };
                (Label0::PullBack { c, sheet }, p, m)
            }
            ValueLabel::T(k) => (Label0::Tangency(k), i, j),
        };
        cycles.push(Cycle0 {
            label,
            value: v.label,
            value_num: v.value,
            critical_point: xi,
            coeffs: pair_cycle(points.len(), plus, minus),
        });
    }
    cycles.sort_by_key(|c| c.label);
    Ok(Basis0 {
        base: 0.0,
        half: side.half(),
        points,
        cycles,
    })
}

/// Basis of H₀ of g⁻¹(0) (or h⁻¹(0)) with the scenario's c-labels attached.
pub fn basis0_outer(s: &Scenario, side: Side) -> Result<Basis0> {
    let (outer, _, _) = side_polys(s, side);
    let data = match side {
        Side::Left => &s.crit.left,
        Side::Right => &s.crit.right,
    };
    let mut by_point: Vec<&CritValue> = data.c.iter().collect();
    by_point.sort_by(|a, b| a.source.total_cmp(&b.source));
    let labels: Vec<ValueLabel> = by_point.iter().map(|v| v.label).collect();
    basis0_plain(outer, 0.0, side.half(), Some(&labels))
}

impl Basis0 {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn labels(&self) -> Vec<Label0> {
        self.cycles.iter().map(|c| c.label).collect()
    }

    pub fn index_of(&self, l: Label0) -> Option<usize> {
        self.cycles.iter().position(|c| c.label == l)
    }

    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.cycles.iter().map(|c| c.coeffs.clone()).collect()
    }

    pub fn gram(&self) -> IntMat {
        let v = self.vectors();
        v.iter()
            .map(|a| v.iter().map(|b| intersection0(a, b)).collect())
            .collect()
    }

    /// Critical value labels in order of first appearance.
    pub fn value_labels(&self) -> Vec<ValueLabel> {
        let mut out: Vec<ValueLabel> = vec![];
        for c in &self.cycles {
            if !out.contains(&c.value) {
                out.push(c.value);
            }
        }
        out
    }

    pub fn value_num(&self, l: ValueLabel) -> Option<f64> {
        self.cycles
            .iter()
            .find(|c| c.value == l)
            .map(|c| c.value_num)
    }

    /// Position key of each cycle's path in the counterclockwise order of
    /// paths leaving the base point.
    pub fn path_keys(&self) -> Vec<(u8, f64)> {
        self.cycles
            .iter()
            .map(|c| path_key(c.value_num - self.base, self.half))
            .collect()
    }

    /// Coordinates of a point-coefficient vector in this basis.
    pub fn coordinates(&self, w: &[i64]) -> Option<Vec<i64>> {
        use num_rational::BigRational;
        use num_traits::ToPrimitive;
        let m = self.cycles.len();
        let a: Vec<Vec<BigRational>> = (0..self.points.len())
            .map(|p| {
                (0..m)
                    .map(|k| BigRational::from_integer(self.cycles[k].coeffs[p].into()))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = w
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        let x = solve_q(&a, &b)?;
        x.iter()
            .map(|v| {
                if v.is_integer() {
                    v.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Arcs to positive values leave at 45°, to negative values at 135°; within
/// each group the bulge decides. Upper: positive ascending, then negative
/// from the most negative. Lower arcs are the mirror images.
pub fn path_key(v: f64, half: HalfPlane) -> (u8, f64) {
    match half {
        HalfPlane::Upper => {
            if v > 0.0 {
                (0, v)
            } else {
                (1, v)
            }
        }
        HalfPlane::Lower => {
            if v > 0.0 {
                (0, -v)
            } else {
                (1, -v)
            }
        }
    }
}

/// Picard–Lefschetz: h(δ) = δ − Σ_j ⟨δ, δ_j⟩ δ_j over the cycles vanishing at
/// `value`. Column x is the image of basis vector x.
pub fn monodromy_from_form(form: &IntMat, members: &[usize]) -> IntMat {
    let n = form.len();
    let mut m = identity(n);
    for &j in members {
        for x in 0..n {
            m[j][x] -= form[x][j];
        }
    }
    m
}

pub fn monodromy0(b: &Basis0, value: ValueLabel) -> Result<IntMat> {
    let members: Vec<usize> = (0..b.len())
        .filter(|&k| b.cycles[k].value == value)
        .collect();
    if members.is_empty() {
        return Err(Error::UnknownCriticalValue(value.to_string()));
    }
    Ok(monodromy_from_form(&b.gram(), &members))
}

#[derive(Clone, Debug)]
pub struct OracleCheck {
    pub value: ValueLabel,
    pub computed: IntMat,
    pub oracle: IntMat,
    pub perm: FiberPermutation,
}

impl OracleCheck {
    pub fn agrees(&self) -> bool {
        self.computed == self.oracle
    }
}

/// Tracks the fiber of `poly` around a simple loop about `value` and compares
/// the induced action with the Picard–Lefschetz operator.
pub fn oracle_monodromy0(
    b: &Basis0,
    poly: &UniPoly,
    value: ValueLabel,
    opts: &TrackOptions,
) -> Result<OracleCheck> {
    let computed = monodromy0(b, value)?;
    let c = Complex64::new(
        b.value_num(value)
            .ok_or_else(|| Error::UnknownCriticalValue(value.to_string()))?,
        0.0,
    );
    let base = Complex64::new(b.base, 0.0);
    let vals: Vec<Complex64> = b
        .value_labels()
        .iter()
        .map(|v| Complex64::new(b.value_num(*v).unwrap(), 0.0))
        .collect();
    let near = vals
        .iter()
        .filter(|o| **o != c)
        .map(|o| (o - c).norm())
        .fold((c - base).norm(), f64::min);
    let lp = simple_loop(c, base, 0.2 * near, &vals, b.half)?;
    let perm = track(poly, &lp, opts)?;
    let oracle = induced_on_h0(&perm.perm, &b.vectors())?;
    Ok(OracleCheck {
        value,
        computed,
        oracle,
        perm,
    })
}

/// [p] ↦ [map(p)] with nearest-point matching.
pub fn pushforward0(
    map: &UniPoly,
    cycle: &[i64],
    source: &[Complex64],
    target: &[Complex64],
) -> Result<Vec<i64>> {
    let mut out = vec![0; target.len()];
    for (p, &c) in source.iter().zip(cycle) {
        if c == 0 {
            continue;
        }
        let img = map.eval_c(*p);
        let (j, d) = target
            .iter()
            .enumerate()
            .map(|(j, t)| (j, (t - img).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::UnmatchedPoint(format!("{img}")))?;
        if d > 1e-6 * target[j].norm().max(1.0) {
            return Err(Error::UnmatchedPoint(format!("{img}")));
        }
        out[j] += c;
    }
    Ok(out)
}

/// Matrix of R_* from the g∘R basis to the g basis (columns = images).
pub fn pushforward_matrix(s: &Scenario, side: Side, src: &Basis0, dst: &Basis0) -> Result<IntMat> {
    let (_, inner, _) = side_polys(s, side);
    let mut m = vec![vec![0; src.len()]; dst.len()];
    for (k, c) in src.cycles.iter().enumerate() {
        let img = pushforward0(inner, &c.coeffs, &src.points, &dst.points)?;
        let coords = dst
            .coordinates(&img)
            .ok_or_else(|| Error::UnmatchedPoint("image outside the target basis".into()))?;
        for (r, v) in coords.iter().enumerate() {
            m[r][k] = *v;
        }
    }
    Ok(m)
}

pub fn all_monodromies0(b: &Basis0) -> Vec<(ValueLabel, IntMat)> {
    b.value_labels()
        .into_iter()
        .map(|v| (v, monodromy0(b, v).expect("value present")))
        .collect()
}

pub fn orbit_lattice0(generators: &[IntMat], seed: &[i64]) -> Result<Lattice> {
    orbit_closure(generators, &[big(seed)], seed.len())
}

pub fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

pub fn kernel_lattice(m: &IntMat, cols: usize) -> Lattice {
    kernel(m, cols)
}

pub fn as_big(v: &[i64]) -> Vec<BigInt> {
    big(v)
}

/// The two readings of the tangency rows of the pull-back intersection table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableReading {
    /// Tangency δ_{a+2k−1} meets δ_a^j with j = k + [n even].
    Literal,
    /// j = 2k − 1 + [n even], matching the explicit cycles in the proof.
    Corrected,
}

/// The printed case table for ⟨δ_i^j, δ_{i'}^{j'}⟩ over the given labels.
/// Unlisted pairs are 0; pairs listed once are mirrored.
pub fn pullback_table(a: usize, n: usize, labels: &[Label0], reading: TableReading) -> IntMat {
    let e_n = usize::from(n.is_multiple_of(2));
    let o_n = 1 - e_n;
    let key = |l: &Label0| -> (usize, usize) {
        match *l {
            Label0::PullBack { c, sheet } => (c, sheet),
            Label0::Tangency(k) => (k, 0),
            Label0::Plain(i) => (i, 1),
        }
    };
    let entry = |(i, j): (usize, usize), (i2, j2): (usize, usize)| -> Option<i64> {
        if i == i2 && j == j2 {
            return Some(2);
        }
        if j == j2 && j != 0 && i2 == i + 1 && i < a {
            return Some(-1);
        }
        if j2 == 0 && j != 0 && i2 > a {
            let t = i2 - a;
            if t % 2 == 1 && i == a {
                let k = t.div_ceil(2);
                let base = match reading {
                    TableReading::Literal => k,
                    TableReading::Corrected => 2 * k - 1,
                };
                if j == base + e_n {
                    return Some(-1);
                }
                if j == base + o_n {
                    return Some(1);
                }
            }
            if t.is_multiple_of(2) && i == 1 {
                let k = t / 2;
                if j == 2 * k + o_n {
                    return Some(-1);
                }
                if j == 2 * k + e_n {
                    return Some(1);
                }
            }
        }
        None
    };
    let m = labels.len();
    let mut t = vec![vec![0; m]; m];
    for p in 0..m {
        for r in 0..m {
            if let Some(v) = entry(key(&labels[p]), key(&labels[r])) {
                t[p][r] = v;
                t[r][p] = v;
            }
        }
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeComparison {
    /// Entries whose absolute values differ: (row, col, computed, table).
    pub unexplained: Vec<(String, String, i64, i64)>,
    /// Cycles whose orientation must be reversed to match the table.
    pub flipped: Vec<String>,
    pub matches: bool,
}

/// Compares two forms up to a diagonal ±1 change of orientation.
pub fn gauge_compare(computed: &IntMat, table: &IntMat, names: &[String]) -> GaugeComparison {
    let n = computed.len();
    let mut unexplained = vec![];
    for i in 0..n {
        for j in 0..n {
            if computed[i][j].abs() != table[i][j].abs() {
                unexplained.push((
                    names[i].clone(),
                    names[j].clone(),
                    computed[i][j],
                    table[i][j],
                ));
            }
        }
    }
    let mut sign = vec![0i64; n];
    for st in 0..n {
        if sign[st] != 0 {
            continue;
        }
        sign[st] = 1;
        let mut stack = vec![st];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if u == v || computed[u][v] == 0 || table[u][v] == 0 {
                    continue;
                }
                let want = sign[u] * if computed[u][v] == table[u][v] { 1 } else { -1 };
                if sign[v] == 0 {
                    sign[v] = want;
                    stack.push(v);
                } else if sign[v] != want {
                    unexplained.push((
                        names[u].clone(),
                        names[v].clone(),
                        computed[u][v],
                        table[u][v],
                    ));
                }
            }
        }
    }
    let flipped = (0..n)
        .filter(|&k| sign[k] < 0)
        .map(|k| names[k].clone())
        .collect();
    GaugeComparison {
        matches: unexplained.is_empty(),
        unexplained,
        flipped,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackTableReport {
    pub labels: Vec<String>,
    pub computed: IntMat,
    pub literal: GaugeComparison,
    pub corrected: GaugeComparison,
}

/// Gram matrix of the g∘R basis and its comparison with both readings of
/// the printed table.
pub fn pullback_intersection_table(s: &Scenario) -> Result<PullbackTableReport> {
    let b = basis0_side(s, Side::Left)?;
    let labels = b.labels();
    let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    let g = b.gram();
    let lit = pullback_table(s.a, s.n, &labels, TableReading::Literal);
    let cor = pullback_table(s.a, s.n, &labels, TableReading::Corrected);
    Ok(PullbackTableReport {
        literal: gauge_compare(&g, &lit, &names),
        corrected: gauge_compare(&g, &cor, &names),
        labels: names,
        computed: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::preserves;
    use crate::polycore::q;

    #[test]
    fn quadratic_basis() {
        let g = UniPoly::from_roots(&[q(1), q(3)]);
        let b = basis0_plain(&g, 0.0, HalfPlane::Upper, None).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.cycles[0].coeffs, vec![1, -1]);
        let h = monodromy0(&b, ValueLabel::C(1)).unwrap();
        assert_eq!(h, vec![vec![-1]]);
    }

    #[test]
    fn plain_gram_is_tridiagonal() {
        let p = UniPoly::from_roots(&[q(1), q(2), q(4), q(7), q(8)]);
        let b = basis0_plain(&p, 0.0, HalfPlane::Upper, None).unwrap();
        let g = b.gram();
        assert_eq!(b.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i as i64 - j as i64).abs() {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(g[i][j], want);
            }
        }
        for (_, m) in all_monodromies0(&b) {
            assert!(preserves(&m, &g));
        }
    }

    #[test]
    fn small_pullback_basis() {
        let s = Scenario::generate(1, 2).unwrap();
        let b = basis0_side(&s, Side::Left).unwrap();
        let names: Vec<String> = b.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, vec!["d1^1", "d1^2", "d2"]);
        let g = b.gram();
        assert_eq!(g[0][1], 0);
        assert_eq!(g[0][2].abs(), 1);
        assert_eq!(g[1][2].abs(), 1);
        let outer = basis0_outer(&s, Side::Left).unwrap();
        let rs = pushforward_matrix(&s, Side::Left, &b, &outer).unwrap();
        assert_eq!(rs, vec![vec![1, 1, 0]]);
    }

    #[test]
    fn lower_paths_give_same_cycles() {
        let s = Scenario::generate(2, 3).unwrap();
        let up = basis0_side(&s, Side::Left).unwrap();
        let mut t = s.clone();
        std::mem::swap(&mut t.crit.left, &mut t.crit.right);
        std::mem::swap(&mut t.gr, &mut t.hs);
        std::mem::swap(&mut t.r, &mut t.s);
        let down = basis0_side(&t, Side::Right).unwrap();
        assert_eq!(up.vectors(), down.vectors());
    }

    #[test]
    fn gauge_detects_flips() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        let b = vec![vec![2, 1], vec![1, 2]];
        let names = vec!["x".to_string(), "y".to_string()];
        let c = gauge_compare(&a, &b, &names);
        assert!(c.matches);
        assert_eq!(c.flipped, vec!["y"]);
        let d = vec![vec![2, 0], vec![0, 2]];
        assert!(!gauge_compare(&a, &d, &names).matches);
    }
}
