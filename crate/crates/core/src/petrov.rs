//! Petrov module of a direct sum l = g(x) + h(y) transversal to infinity.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_q, solve_q};
use crate::polycore::{d1, fmt_q, q, qf, BiForm1, BiPoly, BiPolyJson, FormJson, UniPoly, Q};
use crate::scenario::Scenario;

#[derive(Clone, Debug)]
pub struct PetrovBasis {
    pub d: u32,
    pub labels: Vec<(u32, u32)>,
}

impl PetrovBasis {
    pub fn new(d: u32) -> Self {
        let m = d.saturating_sub(1);
        let labels = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
        PetrovBasis { d, labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn form(&self, k: usize) -> BiForm1 {
        let (i, j) = self.labels[k];
        BiForm1::eta(i, j)
    }

    /// A_ij = (i+1)/d + (j+1)/d.
    pub fn weight(&self, i: u32, j: u32) -> Q {
        qf(i64::from(i + j + 2), i64::from(self.d))
    }

    pub fn index_of(&self, i: u32, j: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == (i, j))
    }
}

/// Leading form is a product of pairwise distinct linear factors.
pub fn transversal_check(l: &BiPoly) -> bool {
    let Some(d) = l.degree() else { return false };
    if d == 0 {
        return false;
    }
    let top = l.homogeneous_part(d);
    // Dehomogenise at y = 1; the missing degree is the multiplicity of y.
    let u = UniPoly::new((0..=d).map(|i| top.coeff(i, d - i)).collect());
    if u.is_zero() || (u.degree() as u32) + 1 < d {
        return false;
    }
    u.degree() == 0 || u.is_squarefree()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PetrovDecomposition {
    pub d: u32,
    pub h: BTreeMap<(u32, u32), UniPoly>,
    pub zeta1: BiPoly,
    pub zeta2: BiPoly,
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub d: u32,
    pub h: Vec<HEntry>,
    pub zeta1: BiPolyJson,
    pub zeta2: BiPolyJson,
}

#[derive(Serialize)]
pub struct HEntry {
    pub i: u32,
    pub j: u32,
    pub coeffs: Vec<String>,
}

impl PetrovDecomposition {
    pub fn coeff(&self, i: u32, j: u32) -> UniPoly {
        self.h.get(&(i, j)).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn reconstruct(&self, l: &BiPoly) -> BiForm1 {
        let mut w = &BiForm1::exact(l).mul_poly(&self.zeta1) + &BiForm1::exact(&self.zeta2);
        for (&(i, j), hp) in &self.h {
            w = &w + &BiForm1::eta(i, j).mul_poly(&eval_at(hp, l));
        }
        w
    }

    /// deg h_ij ≤ ⌊deg ω / d − A_ij⌋ for every nonzero coefficient.
    pub fn degree_bounds_hold(&self, omega_degree: u32) -> bool {
        self.h.iter().all(|(&(i, j), hp)| {
            hp.is_zero() || (hp.degree() as u32) * self.d + i + j + 2 <= omega_degree
        })
    }

    pub fn constant_vector(&self, basis: &PetrovBasis) -> Option<Vec<Q>> {
        basis
            .labels
            .iter()
            .map(|&(i, j)| {
                let hp = self.coeff(i, j);
                (hp.degree() == 0).then(|| hp.coeff(0))
            })
            .collect()
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            d: self.d,
            h: self
                .h
                .iter()
                .map(|(&(i, j), hp)| HEntry {
                    i,
                    j,
                    coeffs: hp.coeffs().iter().map(fmt_q).collect(),
                })
                .collect(),
            zeta1: self.zeta1.to_json(),
            zeta2: self.zeta2.to_json(),
        }
    }
}

/// h(l) for univariate h.
pub fn eval_at(hp: &UniPoly, l: &BiPoly) -> BiPoly {
    let mut r = BiPoly::zero();
    for c in hp.coeffs().iter().rev() {
        r = &(&r * l) + &BiPoly::constant(c.clone());
    }
    r
}

fn integrate_y(p: &BiPoly) -> BiPoly {
    let mut r = BiPoly::zero();
    for (&(i, j), v) in p.terms() {
        r.add_term(i, j + 1, v / q(i64::from(j) + 1));
    }
    r
}

/// K with dK = ω, normalised by K(0,0) = 0. The form must be closed.
pub fn primitive(w: &BiForm1) -> BiPoly {
    let k = w.p.integrate_x();
    let rest = &w.q - &k.dy();
    &k + &integrate_y(&rest)
}

/// Coefficient of dx∧dy in d(ζ dl).
fn bracket(z: &BiPoly, l: &BiPoly) -> BiPoly {
    &(&z.dx() * &l.dy()) - &(&z.dy() * &l.dx())
}

fn check_l(l: &BiPoly) -> Result<u32> {
    l.as_direct_sum().ok_or(Error::NotDirectSum)?;
    if !transversal_check(l) {
        return Err(Error::NotTransversal);
    }
    Ok(l.degree().unwrap_or(0))
}

/// ω = Σ h_ij(l) η_ij + ζ₁ dl + dζ₂.
///
/// The dx∧dy coefficient of ω is reduced one top degree at a time: the top
/// part is solved exactly against d(l^k η_ij) and d(ζ dl) with the leading
/// form of l, the full contributions are subtracted, and the closed
/// remainder is integrated. Free variables of each solve are set to zero.
pub fn decompose(omega: &BiForm1, l: &BiPoly) -> Result<PetrovDecomposition> {
    let d = check_l(l)?;
    let basis = PetrovBasis::new(d);
    let ld = l.homogeneous_part(d);
    let euler = &(&BiPoly::x() * &l.dx()) + &(&BiPoly::y() * &l.dy());
    let mut lpow = vec![BiPoly::constant(q(1))];
    let mut ldpow = vec![BiPoly::constant(q(1))];
    let mut h: BTreeMap<(u32, u32), Vec<Q>> = BTreeMap::new();
    let mut zeta1 = BiPoly::zero();
    let mut f = d1(omega);
    while let Some(top) = f.degree() {
        let mut aks: Vec<(u32, u32, u32)> = vec![];
        for &(i, j) in &basis.labels {
            if i + j <= top && (top - i - j) % d == 0 {
                aks.push(((top - i - j) / d, i, j));
            }
        }
        let zdeg = (top + 2).checked_sub(d);
        let zmon: Vec<(u32, u32)> = zdeg.map_or(vec![], |m| (0..=m).map(|e| (e, m - e)).collect());
        let kmax = aks.iter().map(|x| x.0 as usize).max().unwrap_or(0);
        while ldpow.len() <= kmax + 1 {
            ldpow.push(&ldpow[ldpow.len() - 1] * &ld);
            lpow.push(&lpow[lpow.len() - 1] * l);
        }
        let mut cols: Vec<BiPoly> = vec![];
        for &(k, i, j) in &aks {
            let c = q(i64::from(k * d + i + j + 2));
            cols.push((&ldpow[k as usize] * &BiPoly::monomial(i, j, c)).homogeneous_part(top));
        }
        for &(e, g) in &zmon {
            cols.push(bracket(&BiPoly::monomial(e, g, q(1)), &ld).homogeneous_part(top));
        }
        let rows: Vec<Vec<Q>> = (0..=top)
            .map(|e| cols.iter().map(|c| c.coeff(e, top - e)).collect())
            .collect();
        let rhs: Vec<Q> = (0..=top).map(|e| f.coeff(e, top - e)).collect();
        let sol = solve_q(&rows, &rhs).ok_or_else(|| {
            Error::DecompositionFailure(format!("top degree {top} not reducible"))
        })?;
        let mut sub = BiPoly::zero();
        for (n, &(k, i, j)) in aks.iter().enumerate() {
            let a = &sol[n];
            if a.is_zero() {
                continue;
            }
            let e = h.entry((i, j)).or_default();
            if e.len() <= k as usize {
                e.resize(k as usize + 1, Q::zero());
            }
            e[k as usize] += a;
            // d(l^k η_ij) = x^i y^j (k l^{k-1} (x l_x + y l_y) + (i+j+2) l^k) dx∧dy
            let mut c = lpow[k as usize].scale(&q(i64::from(i + j + 2)));
            if k > 0 {
                c = &c + &(&lpow[k as usize - 1] * &euler).scale(&q(i64::from(k)));
            }
            sub = &sub + &(&c * &BiPoly::monomial(i, j, a.clone()));
        }
        let mut z = BiPoly::zero();
        for (n, &(e, g)) in zmon.iter().enumerate() {
            z.add_term(e, g, sol[aks.len() + n].clone());
        }
        sub = &sub + &bracket(&z, l);
        zeta1 = &zeta1 + &z;
        let next = &f - &sub;
        if next.degree().is_some_and(|nd| nd >= top) {
            return Err(Error::DecompositionFailure(format!(
                "no progress at degree {top}"
            )));
        }
        f = next;
    }
    let h: BTreeMap<(u32, u32), UniPoly> = h
        .into_iter()
        .map(|(k, v)| (k, UniPoly::new(v)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let mut dec = PetrovDecomposition {
        d,
        h,
        zeta1,
        zeta2: BiPoly::zero(),
    };
    let rest = omega - &dec.reconstruct(l);
    debug_assert!(d1(&rest).is_zero());
    dec.zeta2 = primitive(&rest);
    Ok(dec)
}

#[derive(Clone, Debug, PartialEq)]
pub enum RelExact {
    No { nonzero: Vec<(u32, u32)> },
    Yes { k: BiPoly, a: BiPoly },
}

/// ω = dK + A dl exactly when every h_ij vanishes.
pub fn relatively_exact(omega: &BiForm1, l: &BiPoly) -> Result<RelExact> {
    let dec = decompose(omega, l)?;
    if dec.h.is_empty() {
        Ok(RelExact::Yes {
            k: dec.zeta2,
            a: dec.zeta1,
        })
    } else {
        Ok(RelExact::No {
            nonzero: dec.h.keys().copied().collect(),
        })
    }
}

pub fn scenario_f(s: &Scenario) -> BiPoly {
    &BiPoly::from_uni_x(&s.g) + &BiPoly::from_uni_y(&s.h)
}

pub fn scenario_map(s: &Scenario) -> (BiPoly, BiPoly) {
    (BiPoly::from_uni_x(&s.r), BiPoly::from_uni_y(&s.s))
}

pub fn scenario_ff(s: &Scenario) -> BiPoly {
    &BiPoly::from_uni_x(&s.gr) + &BiPoly::from_uni_y(&s.hs)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub a: usize,
    pub n: usize,
    pub degree: u32,
    pub labels: Vec<(u32, u32)>,
    pub target_labels: Vec<(u32, u32)>,
    /// a² rows over the (D−1)² basis of f∘F.
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
}

/// Decomposes every F*(η_ij) of f in the basis of f∘F; all coefficients
/// must be constant and the matrix of constants must have rank a².
pub fn pullback_basis_extension(s: &Scenario) -> Result<ExtensionReport> {
    let (r, sy) = scenario_map(s);
    let ff = scenario_ff(s);
    let small = PetrovBasis::new(s.a as u32 + 1);
    let big = PetrovBasis::new((s.n * (s.a + 1)) as u32);
    let mut rows = vec![];
    for &(i, j) in &small.labels {
        let w = BiForm1::eta(i, j).pullback(&r, &sy);
        let dec = decompose(&w, &ff)?;
        let row = match dec.constant_vector(&big) {
            Some(v) => v,
            None => {
                let bad = big
                    .labels
                    .iter()
                    .find(|&&(u, v)| dec.coeff(u, v).degree() > 0)
                    .unwrap();
                return Err(Error::NonConstantCoefficient {
                    i: i as usize,
                    j: j as usize,
                    h: format!("h_{}{} = {}", bad.0, bad.1, dec.coeff(bad.0, bad.1)),
                });
            }
        };
        rows.push(row);
    }
    Ok(ExtensionReport {
        a: s.a,
        n: s.n,
        degree: big.d,
        labels: small.labels.clone(),
        target_labels: big.labels.clone(),
        matrix: rows.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
        rank: rank_q(&rows),
    })
}

fn check_deg(name: &str, p: &BiPoly, max: usize) -> Result<()> {
    if p.degree().is_some_and(|d| d as usize > max) {
        return Err(Error::DegreeViolation(format!("deg {name} > {max}")));
    }
    Ok(())
}

/// First-order deformation of F*(ω) for ω = P dy − Q dx along
/// (F + εF₁, ω + εα₁), F₁ = (R₁, S₁).
pub fn tangent_vector_w(
    s: &Scenario,
    p: &BiPoly,
    qq: &BiPoly,
    r1: &BiPoly,
    s1: &BiPoly,
    alpha1: &BiForm1,
) -> Result<BiForm1> {
    check_deg("R1", r1, s.n)?;
    check_deg("S1", s1, s.n)?;
    if alpha1.coeff_degree().is_some_and(|d| d as usize > s.a) {
        return Err(Error::DegreeViolation(format!("deg alpha1 > {}", s.a)));
    }
    let (r, sy) = scenario_map(s);
    let at = |f: &BiPoly| f.substitute(&r, &sy);
    let dr = BiForm1::exact(&r);
    let ds = BiForm1::exact(&sy);
    let lin = |a: &BiPoly, b: &BiPoly| &ds.mul_poly(a) - &dr.mul_poly(b);
    let mut w = &BiForm1::exact(s1).mul_poly(&at(p)) - &BiForm1::exact(r1).mul_poly(&at(qq));
    w = &w + &lin(&at(&p.dx()), &at(&qq.dx())).mul_poly(r1);
    w = &w + &lin(&at(&p.dy()), &at(&qq.dy())).mul_poly(s1);
    w = &w + &alpha1.pullback(&r, &sy);
    Ok(w)
}

/// K = R₁ f_x(R,S) + S₁ f_y(R,S).
pub fn hamiltonian_k(s: &Scenario, r1: &BiPoly, s1: &BiPoly) -> BiPoly {
    let f = scenario_f(s);
    let (r, sy) = scenario_map(s);
    &(r1 * &f.dx().substitute(&r, &sy)) + &(s1 * &f.dy().substitute(&r, &sy))
}

/// W for ω = df in closed form: dK + F*(α₁).
pub fn tangent_vector_w_hamiltonian(
    s: &Scenario,
    r1: &BiPoly,
    s1: &BiPoly,
    alpha1: &BiForm1,
) -> BiForm1 {
    let (r, sy) = scenario_map(s);
    &BiForm1::exact(&hamiltonian_k(s, r1, s1)) + &alpha1.pullback(&r, &sy)
}

/// Both forms of W for ω = df, as (general, closed form).
pub fn tangent_vector_w_both(
    s: &Scenario,
    r1: &BiPoly,
    s1: &BiPoly,
    alpha1: &BiForm1,
) -> Result<(BiForm1, BiForm1)> {
    let f = scenario_f(s);
    let general = tangent_vector_w(s, &f.dy(), &-&f.dx(), r1, s1, alpha1)?;
    Ok((general, tangent_vector_w_hamiltonian(s, r1, s1, alpha1)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum TangentCone {
    Member { alpha: BiForm1, k: BiPoly },
    NotMember { reason: String },
}

#[derive(Serialize)]
pub struct TangentConeJson {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<FormJson>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<BiPolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl TangentCone {
    pub fn to_json(&self) -> TangentConeJson {
        match self {
            TangentCone::Member { alpha, k } => TangentConeJson {
                member: true,
                alpha: Some(alpha.to_json()),
                k: Some(k.to_json()),
                reason: None,
            },
            TangentCone::NotMember { reason } => TangentConeJson {
                member: false,
                alpha: None,
                k: None,
                reason: Some(reason.clone()),
            },
        }
    }
}

/// Decides ω_k = F*(α) + dK with deg α ≤ a, returning the certificate.
pub fn tangent_cone_membership(omega_k: &BiForm1, s: &Scenario) -> Result<TangentCone> {
    let bound = s.a * s.n + s.n - 1;
    if omega_k.coeff_degree().is_some_and(|d| d as usize > bound) {
        return Err(Error::DegreeViolation(format!("deg omega_k > {bound}")));
    }
    let ff = scenario_ff(s);
    let (r, sy) = scenario_map(s);
    let small = PetrovBasis::new(s.a as u32 + 1);
    let big = PetrovBasis::new((s.n * (s.a + 1)) as u32);
    let dec = decompose(omega_k, &ff)?;
    let Some(c) = dec.constant_vector(&big) else {
        let (i, j) = *dec.h.iter().find(|(_, p)| p.degree() > 0).unwrap().0;
        return Ok(TangentCone::NotMember {
            reason: format!("coefficient of eta_{i}{j} is not constant"),
        });
    };
    let ext = pullback_basis_extension(s)?;
    let m: Vec<Vec<Q>> = ext
        .matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| crate::polycore::parse_q(x))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    // Mᵀ α = c
    let mt: Vec<Vec<Q>> = (0..big.len())
        .map(|col| m.iter().map(|row| row[col].clone()).collect())
        .collect();
    let Some(sol) = solve_q(&mt, &c) else {
        return Ok(TangentCone::NotMember {
            reason: "coefficients outside the span of the pulled-back basis".into(),
        });
    };
    let mut alpha = BiForm1::zero();
    for (k, &(i, j)) in small.labels.iter().enumerate() {
        if !sol[k].is_zero() {
            alpha = &alpha + &BiForm1::eta(i, j).scale(&sol[k]);
        }
    }
    let rest = omega_k - &alpha.pullback(&r, &sy);
    if !d1(&rest).is_zero() {
        return Ok(TangentCone::NotMember {
            reason: "remainder is not exact".into(),
        });
    }
    Ok(TangentCone::Member {
        alpha,
        k: primitive(&rest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> BiPoly {
        &BiPoly::monomial(2, 0, q(1)) + &BiPoly::monomial(0, 2, q(1))
    }

    #[test]
    fn transversality() {
        assert!(transversal_check(&circle()));
        assert!(!transversal_check(&BiPoly::monomial(2, 1, q(1))));
        assert!(transversal_check(
            &(&BiPoly::monomial(3, 0, q(1)) + &BiPoly::monomial(0, 3, q(2)))
        ));
        assert!(!transversal_check(&BiPoly::monomial(0, 2, q(1))));
    }

    #[test]
    fn x_dy() {
        let w = BiForm1::new(BiPoly::zero(), BiPoly::x());
        let dec = decompose(&w, &circle()).unwrap();
        assert_eq!(dec.coeff(0, 0), UniPoly::constant(qf(1, 2)));
        assert!(dec.zeta1.is_zero());
        assert_eq!(dec.zeta2, BiPoly::monomial(1, 1, qf(1, 2)));
    }

    #[test]
    fn exact_form() {
        let k = BiPoly::monomial(2, 1, q(1));
        let dec = decompose(&BiForm1::exact(&k), &circle()).unwrap();
        assert!(dec.h.is_empty());
        assert_eq!(dec.zeta2, k);
    }

    #[test]
    fn basis_elements() {
        let l = &(&BiPoly::monomial(3, 0, q(1)) + &BiPoly::monomial(0, 3, q(1))) + &BiPoly::x();
        let b = PetrovBasis::new(3);
        for k in 0..b.len() {
            let dec = decompose(&b.form(k), &l).unwrap();
            assert_eq!(dec.h.len(), 1);
            assert_eq!(
                dec.coeff(b.labels[k].0, b.labels[k].1),
                UniPoly::constant(q(1))
            );
        }
    }

    #[test]
    fn not_direct_sum() {
        let l = &circle() + &BiPoly::monomial(1, 1, q(1));
        assert!(matches!(
            decompose(&BiForm1::zero(), &l),
            Err(Error::NotDirectSum)
        ));
    }
}
