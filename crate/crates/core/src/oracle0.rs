//! Numeric monodromy: follow every root of poly(x) = t while t runs around a
//! loop, and read off the permutation of the fiber.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::IntMat;
use crate::polycore::{roots_f64, tolerance, UniPoly};

/// Which side of the real axis distinguished paths bulge into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum HalfPlane {
    Upper,
    Lower,
}

impl HalfPlane {
    pub fn sign(self) -> f64 {
        match self {
            HalfPlane::Upper => 1.0,
            HalfPlane::Lower => -1.0,
        }
    }
}

/// Bulge of the distinguished arcs.
pub const KAPPA: f64 = 1.0;
pub const POLYGON: usize = 64;

/// Arc from b to c: b + s(c−b) ± iκ s(1−s)|c−b|.
pub fn arc_point(b: Complex64, c: Complex64, s: f64, half: HalfPlane) -> Complex64 {
    b + (c - b) * s + Complex64::new(0.0, half.sign() * KAPPA * s * (1.0 - s) * (c - b).norm())
}

/// Largest s with |arc(s) − c| ≥ radius.
fn arc_stop(b: Complex64, c: Complex64, radius: f64, half: HalfPlane) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (arc_point(b, c, mid, half) - c).norm() >= radius {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Polyline along the distinguished arc, stopping at distance `radius` from c.
pub fn arc_polyline(b: Complex64, c: Complex64, radius: f64, half: HalfPlane) -> Vec<Complex64> {
    let s_end = arc_stop(b, c, radius, half);
    (0..=POLYGON)
        .map(|k| arc_point(b, c, s_end * k as f64 / POLYGON as f64, half))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Loop {
    pub base: Complex64,
    pub waypoints: Vec<Complex64>,
}

impl Loop {
    /// Concatenation: first `self`, then `other` (same base).
    pub fn then(&self, other: &Loop) -> Loop {
        let mut w = self.waypoints.clone();
        w.extend_from_slice(&other.waypoints[1..]);
        Loop {
            base: self.base,
            waypoints: w,
        }
    }

    /// Winding number around z.
    pub fn winding(&self, z: Complex64) -> i64 {
        let mut total = 0.0;
        for w in self.waypoints.windows(2) {
            let d = ((w[1] - z) / (w[0] - z)).arg();
            total += d;
        }
        (total / (2.0 * PI)).round() as i64
    }

    /// Distance from the polyline to z.
    pub fn clearance(&self, z: Complex64) -> f64 {
        self.waypoints
            .windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                let len2 = d.norm_sqr();
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    ((z - w[0]) * d.conj()).re / len2
                };
                (w[0] + d * t.clamp(0.0, 1.0) - z).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Out along the arc, once anticlockwise around `value` on a 64-gon, back.
pub fn simple_loop(
    value: Complex64,
    base: Complex64,
    radius: f64,
    others: &[Complex64],
    half: HalfPlane,
) -> Result<Loop> {
    let nearest = others
        .iter()
        .filter(|&&o| (o - value).norm() > 0.0)
        .map(|o| (o - value).norm())
        .fold(f64::INFINITY, f64::min);
    if radius >= 0.5 * nearest || radius >= (value - base).norm() {
        return Err(Error::ClearanceViolation {
            radius,
            distance: nearest.min((value - base).norm()),
        });
    }
    let out = arc_polyline(base, value, radius, half);
    let entry = *out.last().expect("non-empty arc");
    let th0 = (entry - value).arg();
    let mut w = out.clone();
    for k in 1..=POLYGON {
        let th = th0 + 2.0 * PI * k as f64 / POLYGON as f64;
        w.push(value + Complex64::from_polar(radius, th));
    }
    *w.last_mut().expect("non-empty") = entry;
    w.extend(out.iter().rev().skip(1));
    let lp = Loop { base, waypoints: w };
    for &o in others {
        // Values close to the base are necessarily passed closely.
        if (o - value).norm() > 0.0 && lp.clearance(o) < 0.25 * radius.min((o - base).norm()) {
            return Err(Error::ClearanceViolation {
                radius,
                distance: lp.clearance(o),
            });
        }
    }
    Ok(lp)
}

#[derive(Clone, Debug)]
pub struct TrackOptions {
    /// First trial step as a fraction of a polyline segment.
    pub initial_step: f64,
    pub min_step: f64,
    pub newton_iters: usize,
    pub tol: f64,
    pub record: bool,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            initial_step: 0.5,
            min_step: 1e-10,
            newton_iters: 3,
            tol: tolerance(),
            record: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrajectoryRow {
    pub t: Complex64,
    pub root: usize,
    pub x: Complex64,
}

#[derive(Clone, Debug)]
pub struct FiberPermutation {
    /// `perm[i] = j`: the root starting at fiber point i ends at point j.
    pub perm: Vec<usize>,
    pub max_step_residual: f64,
    pub trajectory: Vec<TrajectoryRow>,
}

impl FiberPermutation {
    /// Apply `self` then `other`.
    pub fn then(&self, other: &FiberPermutation) -> Vec<usize> {
        self.perm.iter().map(|&j| other.perm[j]).collect()
    }
}

fn eval_with_deriv(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for v in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + v;
    }
    (p, dp)
}

fn scale_at(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, v| acc * r + v.abs())
}

fn min_gap(xs: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..xs.len() {
        for j in 0..i {
            m = m.min((xs[i] - xs[j]).norm());
        }
    }
    m
}

/// Fiber poly = t for a real base value, sorted by (re, im).
pub fn fiber(poly: &UniPoly, t: Complex64) -> Result<Vec<Complex64>> {
    let c = poly.to_f64();
    if t.im == 0.0 {
        let mut cc = c.clone();
        cc[0] -= t.re;
        return Ok(roots_f64(&cc, tolerance())?.roots);
    }
    Err(Error::NotRegularValue(format!(
        "non-real base value {t} is not supported"
    )))
}

struct Followed {
    end: Vec<Complex64>,
    max_res: f64,
    traj: Vec<TrajectoryRow>,
}

/// Predictor-corrector continuation of `start` along the polyline. Steps are
/// halved whenever the Newton corrector moves a root by more than the guard
/// distance, 0.1 × the smaller of the base-fiber and current minimal gaps.
fn follow(
    c: &[f64],
    start: &[Complex64],
    waypoints: &[Complex64],
    opts: &TrackOptions,
) -> Result<Followed> {
    let base_gap = min_gap(start);
    let mut xs = start.to_vec();
    let mut max_res: f64 = 0.0;
    let mut traj = vec![];
    if opts.record {
        traj.extend(xs.iter().enumerate().map(|(i, &x)| TrajectoryRow {
            t: waypoints[0],
            root: i,
            x,
        }));
    }
    for w in waypoints.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mut u = 0.0;
        let mut h = opts.initial_step;
        while u < 1.0 {
            h = h.min(1.0 - u);
            let ta = t0 + (t1 - t0) * u;
            let tb = t0 + (t1 - t0) * (u + h);
            let guard = 0.1 * base_gap.min(min_gap(&xs));
            let mut ok = true;
            let mut next = Vec::with_capacity(xs.len());
            let mut step_res: f64 = 0.0;
            for &x in &xs {
                let (_, dp) = eval_with_deriv(c, x);
                let pred = x + (tb - ta) / dp;
                let mut y = pred;
                for _ in 0..opts.newton_iters {
                    let (p, dp) = eval_with_deriv(c, y);
                    y -= (p - tb) / dp;
                }
                let res = (eval_with_deriv(c, y).0 - tb).norm() / scale_at(c, y);
                let moved = (y - pred).norm();
                if !moved.is_finite()
                    || moved > guard
                    || (y - x).norm() > 3.0 * guard
                    || res > opts.tol
                {
                    ok = false;
                    break;
                }
                step_res = step_res.max(res);
                next.push(y);
            }
            let size = next.iter().map(|x| x.norm()).fold(1.0, f64::max);
            if ok && min_gap(&next) < 1e-12 * size {
                return Err(Error::RootCollision(format!("at t = {tb}")));
            }
            if !ok {
                h *= 0.5;
                if h < opts.min_step {
                    return Err(Error::TrackingLoss(format!("{ta}")));
                }
                continue;
            }
            xs = next;
            max_res = max_res.max(step_res);
            u += h;
            h *= 2.0;
            if opts.record {
                traj.extend(xs.iter().enumerate().map(|(i, &x)| TrajectoryRow {
                    t: tb,
                    root: i,
                    x,
                }));
            }
        }
    }
    Ok(Followed {
        end: xs,
        max_res,
        traj,
    })
}

/// Roots of poly = t at the end of an open path, listed in the order of the
/// base fiber they started from.
pub fn continue_path(
    poly: &UniPoly,
    waypoints: &[Complex64],
    opts: &TrackOptions,
) -> Result<Vec<Complex64>> {
    let c = poly.to_f64();
    let start = fiber(poly, waypoints[0])?;
    Ok(follow(&c, &start, waypoints, opts)?.end)
}

/// Monodromy permutation of the fiber over the loop base.
pub fn track(poly: &UniPoly, lp: &Loop, opts: &TrackOptions) -> Result<FiberPermutation> {
    let c = poly.to_f64();
    let start = fiber(poly, lp.base)?;
    let base_gap = min_gap(&start);
    let mut fw = follow(&c, &start, &lp.waypoints, opts)?;
    for x in fw.end.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = eval_with_deriv(&c, *x);
            *x -= (p - lp.base) / dp;
        }
    }
    let mut perm = vec![usize::MAX; start.len()];
    let mut used = vec![false; start.len()];
    for (i, x) in fw.end.iter().enumerate() {
        let (j, d) = start
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (s - x).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty fiber");
        if d > 0.25 * base_gap || used[j] {
            return Err(Error::TrackingLoss(format!(
                "root {i} did not return to the base fiber (off by {d})"
            )));
        }
        used[j] = true;
        perm[i] = j;
    }
    Ok(FiberPermutation {
        perm,
        max_step_residual: fw.max_res,
        trajectory: fw.traj,
    })
}

/// CSV with columns t_re,t_im,root_index,x_re,x_im.
pub fn write_trajectories<W: Write>(fp: &FiberPermutation, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "t_re,t_im,root_index,x_re,x_im")?;
    for r in &fp.trajectory {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.t.re, r.t.im, r.root, r.x.re, r.x.im
        )?;
    }
    Ok(())
}

/// Matrix of the permutation action on cycles (given as coefficient vectors
/// over fiber points), in the coordinates of those cycles. Column k is the
/// image of cycle k.
pub fn induced_on_h0(perm: &[usize], cycles: &[Vec<i64>]) -> Result<IntMat> {
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};
    let npts = perm.len();
    let m = cycles.len();
    let a: Vec<Vec<BigRational>> = (0..npts)
        .map(|p| {
            (0..m)
                .map(|k| BigRational::from_integer(cycles[k][p].into()))
                .collect()
        })
        .collect();
    let mut out = vec![vec![0i64; m]; m];
    for k in 0..m {
        let mut w = vec![0i64; npts];
        for i in 0..npts {
            w[perm[i]] += cycles[k][i];
        }
        let b: Vec<BigRational> = w
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        let x = crate::linalg::solve_q(&a, &b).ok_or_else(|| {
            Error::TrackingLoss("permuted cycle left the span of the basis".into())
        })?;
        for (r, v) in x.iter().enumerate() {
            if !v.is_integer() && !v.is_zero() {
                return Err(Error::TrackingLoss("non-integral coordinates".into()));
            }
            out[r][k] = v.to_integer().to_i64().expect("small coordinate");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::UniPoly;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn square_root_monodromy() {
        let p = UniPoly::from_i64(&[0, 0, 1]);
        let lp = simple_loop(c(0.0), c(1.0), 0.5, &[c(0.0)], HalfPlane::Upper).unwrap();
        assert_eq!(lp.winding(c(0.0)), 1);
        let fp = track(&p, &lp, &TrackOptions::default()).unwrap();
        assert_eq!(fp.perm, vec![1, 0]);
    }

    #[test]
    fn cubic_swaps_only_the_colliding_pair() {
        // x³ − 3x has critical values ±2; the value −2 comes from x = 1.
        let p = UniPoly::from_i64(&[0, -3, 0, 1]);
        let vals = [c(-2.0), c(2.0)];
        let lp = simple_loop(c(-2.0), c(0.0), 0.5, &vals, HalfPlane::Upper).unwrap();
        let fp = track(&p, &lp, &TrackOptions::default()).unwrap();
        // Fiber at 0 is {−√3, 0, √3}; the pair colliding at 1 is {0, √3}.
        assert_eq!(fp.perm, vec![0, 2, 1]);
    }

    #[test]
    fn contractible_loop_is_identity() {
        let p = UniPoly::from_i64(&[0, -3, 0, 1]);
        let lp = Loop {
            base: c(0.0),
            waypoints: vec![
                c(0.0),
                Complex64::new(0.5, 0.5),
                Complex64::new(-0.5, 0.5),
                c(0.0),
            ],
        };
        assert_eq!(lp.winding(c(2.0)), 0);
        let fp = track(&p, &lp, &TrackOptions::default()).unwrap();
        assert_eq!(fp.perm, vec![0, 1, 2]);
    }

    #[test]
    fn radius_guard() {
        let e = simple_loop(c(1.0), c(0.0), 0.6, &[c(1.0), c(2.0)], HalfPlane::Upper).unwrap_err();
        assert!(matches!(e, Error::ClearanceViolation { .. }));
    }

    #[test]
    fn induced_matrix_of_a_swap() {
        let cycles = vec![vec![1, -1]];
        assert_eq!(induced_on_h0(&[1, 0], &cycles).unwrap(), vec![vec![-1]]);
        assert_eq!(induced_on_h0(&[0, 1], &cycles).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn trajectory_csv_header() {
        let p = UniPoly::from_i64(&[0, 0, 1]);
        let lp = simple_loop(c(0.0), c(1.0), 0.5, &[c(0.0)], HalfPlane::Upper).unwrap();
        let fp = track(
            &p,
            &lp,
            &TrackOptions {
                record: true,
                ..Default::default()
            },
        )
        .unwrap();
        let mut buf = vec![];
        write_trajectories(&fp, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("t_re,t_im,root_index,x_re,x_im\n"));
        assert!(s.lines().count() > 64);
    }
}
