//! Acceptance criteria 1-10, one PASS/FAIL line each. Runs without the
//! libtest harness so every line is printed; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use lefschetz::bounds;
use lefschetz::dynkin;
use lefschetz::homology0::*;
use lefschetz::join1::{self, FReading, Which};
use lefschetz::linalg::{det, mat_vec, preserves, rank_q, IntMat};
use lefschetz::oracle0::{HalfPlane, TrackOptions};
use lefschetz::petrov::{self, PetrovBasis, RelExact, TangentCone};
use lefschetz::polycore::{q, qf, BiForm1, BiPoly, UniPoly, Q};
use lefschetz::scenario::Scenario;
use lefschetz::zlattice::kernel;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn verdict(n: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {} | {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn scen(a: usize, n: usize) -> Scenario {
    Scenario::generate(a, n).unwrap()
}

fn criterion_01_dim0_oracle_equivalence() -> bool {
    let t0 = Instant::now();
    let mut loops = 0;
    let mut bad = vec![];
    for (a, n) in [(1, 2), (2, 2), (3, 2), (1, 3), (1, 4)] {
        let s = scen(a, n);
        assert!(s.gr.degree() <= 8);
        for side in [Side::Left, Side::Right] {
            let poly = if side == Side::Left { &s.gr } else { &s.hs };
            let b = basis0_side(&s, side).unwrap();
            for v in b.value_labels() {
                let chk = oracle_monodromy0(&b, poly, v, &TrackOptions::default()).unwrap();
                loops += 1;
                if !chk.agrees() {
                    bad.push(format!("({a},{n}) {side:?} {v}"));
                }
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let pass = bad.is_empty() && secs < 60.0;
    verdict(
        1,
        "dim-0 oracle equivalence",
        pass,
        &format!("{loops} simple loops, mismatches {bad:?}, {secs:.1}s"),
    );
    pass
}

fn criterion_02_pullback_table() -> bool {
    let mut pass = true;
    let mut notes = vec![];
    for (a, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let r = pullback_intersection_table(&scen(a, n)).unwrap();
        pass &= r.corrected.matches && r.corrected.unexplained.is_empty();
        notes.push(format!(
            "({a},{n}) corrected: {} flips {:?}; as printed: {} ({} unexplained)",
            r.corrected.matches,
            r.corrected.flipped,
            r.literal.matches,
            r.literal.unexplained.len()
        ));
    }
    verdict(2, "pull-back intersection table", pass, &notes.join("; "));
    pass
}

/// Morse polynomial with critical points k + k²/7, k = 1..m.
fn plain_morse(m: usize) -> UniPoly {
    let crit: Vec<Q> = (1..=m as i64).map(|k| q(k) + qf(k * k, 7)).collect();
    let d = UniPoly::from_roots(&crit);
    let mut c = vec![Q::zero()];
    for (i, v) in d.coeffs().iter().enumerate() {
        c.push(v / q(i as i64 + 1));
    }
    UniPoly::new(c)
}

fn orbit_vectors(gens: &[IntMat], seed: Vec<i64>) -> BTreeSet<Vec<i64>> {
    let inv: Vec<IntMat> = gens
        .iter()
        .map(|g| lefschetz::linalg::inverse_unimodular(g).unwrap())
        .collect();
    let mut seen = BTreeSet::from([seed.clone()]);
    let mut stack = vec![seed];
    while let Some(v) = stack.pop() {
        for g in gens.iter().chain(&inv) {
            let w = mat_vec(g, &v);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen
}

fn criterion_03_dim0_orbits() -> bool {
    let mut pass = true;
    let mut notes = vec![];
    for (a, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let s = scen(a, n);
        let b = basis0_side(&s, Side::Left).unwrap();
        let gens: Vec<IntMat> = all_monodromies0(&b).into_iter().map(|x| x.1).collect();
        let full =
            lefschetz::zlattice::Lattice::from_i64(&lefschetz::linalg::identity(b.len()), b.len());
        let outer = basis0_outer(&s, Side::Left).unwrap();
        let ker = kernel(
            &pushforward_matrix(&s, Side::Left, &b, &outer).unwrap(),
            b.len(),
        );
        let mut pb_ok = true;
        let mut t_ok = true;
        for (k, c) in b.cycles.iter().enumerate() {
            let lat = orbit_lattice0(&gens, &unit(b.len(), k)).unwrap();
            if c.label.is_tangency() {
                t_ok &= lat == ker && lat.rank() == a * n + n - 1 - a;
            } else {
                pb_ok &= lat == full;
            }
        }
        pass &= pb_ok && t_ok;
        notes.push(format!(
            "({a},{n}) pull-back orbits full: {pb_ok}, tangency orbits = ker R_* (rank {}): {t_ok}",
            ker.rank()
        ));
    }
    let mut trans = true;
    for deg in 2..=6 {
        let p = plain_morse(deg - 1);
        let b = basis0_plain(&p, -0.37, HalfPlane::Upper, None).unwrap();
        let gens: Vec<IntMat> = all_monodromies0(&b).into_iter().map(|x| x.1).collect();
        for i in 0..b.len() {
            let orbit = orbit_vectors(&gens, unit(b.len(), i));
            trans &= (0..b.len()).all(|j| orbit.contains(&unit(b.len(), j)));
        }
    }
    pass &= trans;
    notes.push(format!(
        "transitive on plain Morse polynomials of degree 2..6: {trans}"
    ));
    verdict(3, "dim-0 orbits", pass, &notes.join("; "));
    pass
}

fn criterion_04_kernel_identity() -> bool {
    let mut pass = true;
    let mut notes = vec![];
    for (a, n) in [(1, 2), (2, 2), (2, 3)] {
        let r = join1::kernel_report(&scen(a, n)).unwrap();
        let d = n * a + n - 1;
        let nullity_ok = r.nullity == d * d - a * a;
        let single = r.single_seed.as_ref().is_some_and(|o| o.equals_kernel);
        let two = r.two_seed.as_ref().is_some_and(|o| o.equals_kernel);
        pass &= nullity_ok && single;
        notes.push(format!(
            "({a},{n}) rank ker F_* = {} [{}]; reading {}; one tangency seed: rank {} equal {single}; TX+TY seeds equal {two}",
            r.nullity,
            if nullity_ok { "ok" } else { "wrong" },
            r.chosen_reading.map_or("none".into(), |x| format!("{x:?}")),
            r.single_seed.as_ref().map_or(0, |o| o.rank),
        ));
    }
    verdict(4, "kernel identity", pass, &notes.join("; "));
    pass
}

fn criterion_05_simplicity() -> bool {
    let mut pass = true;
    let mut notes = vec![];
    for a in 1..=3 {
        let s = scen(a, 2);
        let f = join1::join_basis(&s, Which::F).unwrap();
        for r in [FReading::Join, FReading::Corrected] {
            let rep = join1::simplicity_check(&f, r).unwrap();
            pass &= rep.simple;
            notes.push(format!("a={a} {r:?}: {}", rep.simple));
        }
    }
    verdict(5, "simplicity", pass, &notes.join(", "));
    pass
}

fn rand_q(rng: &mut StdRng) -> Q {
    qf(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn rand_poly(rng: &mut StdRng, deg: u32, terms: usize) -> BiPoly {
    let mut p = BiPoly::zero();
    for _ in 0..terms {
        let i = rng.gen_range(0..=deg);
        let j = rng.gen_range(0..=deg - i);
        p.add_term(i, j, rand_q(rng));
    }
    p
}

fn rand_form(rng: &mut StdRng, coeff_deg: u32) -> BiForm1 {
    BiForm1::new(rand_poly(rng, coeff_deg, 6), rand_poly(rng, coeff_deg, 6))
}

fn petrov_ls() -> Vec<BiPoly> {
    let x = |i, c: i64| BiPoly::monomial(i, 0, q(c));
    let y = |j, c: i64| BiPoly::monomial(0, j, q(c));
    vec![
        &x(2, 1) + &y(2, 1),
        &(&(&x(3, 1) + &x(1, -3)) + &y(3, 2)) + &y(2, 1),
        &(&(&x(4, 1) + &x(2, -2)) + &y(4, 3)) + &(&y(1, 1) + &BiPoly::constant(q(5))),
    ]
}

fn criterion_06_petrov_suite() -> bool {
    let t0 = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let ls = petrov_ls();
    let (mut recon, mut degs, mut idem, mut plant, mut total) = (0, 0, 0, 0, 0);
    for k in 0..200 {
        let l = &ls[k % ls.len()];
        let d = l.degree().unwrap();
        let cd = rng.gen_range(1..=11);
        let w = rand_form(&mut rng, cd);
        let dec = petrov::decompose(&w, l).unwrap();
        total += 1;
        recon += usize::from(dec.reconstruct(l) == w);
        degs += usize::from(dec.degree_bounds_hold(w.degree()));
        // planted: Σ h_ij(l) η_ij + A dl + dK with deg ≤ 12
        let basis = PetrovBasis::new(d);
        let mut planted = std::collections::BTreeMap::new();
        let mut form = BiForm1::exact(&rand_poly(&mut rng, 6, 4));
        form = &form + &BiForm1::exact(l).mul_poly(&rand_poly(&mut rng, 12 - d - 1, 3));
        let chosen: Vec<(u32, u32)> = basis
            .labels
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        for (i, j) in chosen {
            let kmax = (12 - (i + j + 2)) / d;
            let hd = rng.gen_range(0..=kmax);
            let h = UniPoly::new((0..=hd).map(|_| rand_q(&mut rng)).collect());
            if !h.is_zero() {
                form = &form + &BiForm1::eta(i, j).mul_poly(&petrov::eval_at(&h, l));
                planted.insert((i, j), h);
            }
        }
        let got = petrov::decompose(&form, l).unwrap();
        let exact_rel = &BiForm1::exact(&rand_poly(&mut rng, 7, 4))
            + &BiForm1::exact(l).mul_poly(&rand_poly(&mut rng, 5, 3));
        let rel_ok = matches!(petrov::relatively_exact(&exact_rel, l).unwrap(), RelExact::Yes { ref k, ref a }
            if &BiForm1::exact(k) + &BiForm1::exact(l).mul_poly(a) == exact_rel);
        plant += usize::from(got.h == planted && got.reconstruct(l) == form && rel_ok);
    }
    for l in &ls {
        let b = PetrovBasis::new(l.degree().unwrap());
        idem += (0..b.len())
            .filter(|&k| {
                let dec = petrov::decompose(&b.form(k), l).unwrap();
                dec.h.len() == 1
                    && dec.coeff(b.labels[k].0, b.labels[k].1) == UniPoly::constant(Q::one())
            })
            .count();
    }
    let idem_total: usize = ls
        .iter()
        .map(|l| PetrovBasis::new(l.degree().unwrap()).len())
        .sum();
    let secs = t0.elapsed().as_secs_f64();
    let pass =
        recon == total && degs == total && plant == total && idem == idem_total && secs < 120.0;
    verdict(
        6,
        "Petrov suite",
        pass,
        &format!("reconstruction {recon}/{total}, degree bounds {degs}/{total}, plant-and-recover {plant}/{total}, basis {idem}/{idem_total}, {secs:.1}s"),
    );
    pass
}

fn criterion_07_basis_extension() -> bool {
    let mut pass = true;
    let mut notes = vec![];
    for (a, n) in [(1, 2), (2, 2)] {
        let r = petrov::pullback_basis_extension(&scen(a, n)).unwrap();
        pass &= r.rank == a * a;
        notes.push(format!("({a},{n}) constant coefficients, rank {}", r.rank));
    }
    verdict(7, "pull-back basis extension", pass, &notes.join(", "));
    pass
}

fn criterion_08_tangent_cone() -> bool {
    let mut rng = StdRng::seed_from_u64(8);
    let (mut accepted, mut rejected) = (0, 0);
    let mut k_match = 0;
    let cases = [scen(1, 2), scen(2, 2)];
    for t in 0..20 {
        let s = &cases[t % 2];
        let r1 = rand_poly(&mut rng, s.n as u32, 4);
        let s1 = rand_poly(&mut rng, s.n as u32, 4);
        let mut alpha = BiForm1::zero();
        for i in 0..s.a as u32 {
            for j in 0..s.a as u32 - i {
                alpha = &alpha + &BiForm1::eta(i, j).scale(&rand_q(&mut rng));
            }
        }
        let f = petrov::scenario_f(s);
        let w = petrov::tangent_vector_w(s, &f.dy(), &-&f.dx(), &r1, &s1, &alpha).unwrap();
        if let TangentCone::Member { k, .. } = petrov::tangent_cone_membership(&w, s).unwrap() {
            accepted += 1;
            k_match += usize::from(
                BiForm1::exact(&k) == BiForm1::exact(&petrov::hamiltonian_k(s, &r1, &s1)),
            );
        }
        // add a basis form of f∘F whose coefficient vector leaves the span
        let ext = petrov::pullback_basis_extension(s).unwrap();
        let big = PetrovBasis::new((s.n * (s.a + 1)) as u32);
        let rows: Vec<Vec<Q>> = ext
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| lefschetz::polycore::parse_q(x).unwrap())
                    .collect()
            })
            .collect();
        let off: Vec<usize> = (0..big.len())
            .filter(|&k| {
                let (i, j) = big.labels[k];
                let mut e = vec![Q::zero(); big.len()];
                e[k] = Q::one();
                let mut aug = rows.clone();
                aug.push(e);
                ((i + j) as usize) < s.a * s.n + s.n - 1 && rank_q(&aug) > rank_q(&rows)
            })
            .collect();
        let k = off[rng.gen_range(0..off.len())];
        let bad = &w + &big.form(k).scale(&qf(rng.gen_range(1..=5), 1));
        if let TangentCone::NotMember { .. } = petrov::tangent_cone_membership(&bad, s).unwrap() {
            rejected += 1;
        }
    }
    let pass = accepted == 20 && k_match == 20 && rejected == 20;
    verdict(
        8,
        "tangent-cone certificate",
        pass,
        &format!(
            "accepted {accepted}/20 with K exact {k_match}/20, off-span rejected {rejected}/20"
        ),
    );
    pass
}

fn criterion_09_bounds() -> bool {
    let mut notes = vec![];
    let mut pass = true;
    for (p, expect) in [(3, 17), (5, 67), (7, 141)] {
        let c = bounds::pullback_cyclicity(p - 1, 2).unwrap();
        pass &= c == expect && c == 3 * p * p + p - 13;
        notes.push(format!("p={p}: C={c}"));
    }
    pass &= bounds::hamiltonian_codim_bound(2) == 1;
    let agree = bounds::cyclicity_expressions_agree();
    notes.push(format!("closed form in (p,q) agrees with C: {agree}"));
    let log: Vec<(i64, i64)> = (2..=6)
        .map(|d| (d, bounds::logarithmic_max_bound(d)))
        .collect();
    let log_ok = log.iter().all(|&(d, v)| v == d * d - 1);
    pass &= log_ok;
    notes.push(format!(
        "all-ones logarithmic bound {log:?} vs d^2-1: {log_ok}"
    ));
    verdict(9, "bounds", pass, &notes.join("; "));
    pass
}

fn unimodular(m: &IntMat) -> bool {
    det(m).magnitude() == &num_bigint::BigUint::from(1u32)
}

fn criterion_10_structure() -> bool {
    let mut ops = 0;
    let mut ok = true;
    let mut notes = vec![];
    for (a, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let s = scen(a, n);
        for side in [Side::Left, Side::Right] {
            for b in [
                basis0_side(&s, side).unwrap(),
                basis0_outer(&s, side).unwrap(),
            ] {
                let g = b.gram();
                for (_, m) in all_monodromies0(&b) {
                    ops += 1;
                    ok &= preserves(&m, &g) && unimodular(&m);
                }
            }
        }
        for which in [Which::F, Which::FcompF] {
            let b = join1::join_basis(&s, which).unwrap();
            let form = join1::join_form(&b);
            for (_, m) in join1::all_monodromies1(&b, &form) {
                ops += 1;
                ok &= preserves(&m, &form) && unimodular(&m);
            }
        }
    }
    notes.push(format!(
        "{ops} operators preserve their forms and are unimodular: {ok}"
    ));
    let mut dyn_ok = true;
    for (a, n) in [(1, 2), (2, 2), (2, 3)] {
        let s = scen(a, n);
        let b = join1::join_basis(&s, Which::FcompF).unwrap();
        let f = join1::join_basis(&s, Which::F).unwrap();
        let h = dynkin::build(&join1::join_form(&b), dynkin::vertices1(&b), 1);
        let g = dynkin::build(&join1::join_form(&f), dynkin::vertices1(&f), 1);
        let r = dynkin::subgraph_decomposition(&h, &g, n);
        let good = r
            .as_ref()
            .is_ok_and(|r| r.components.len() == n * n && r.connected_before_removal);
        dyn_ok &= good;
        notes.push(format!("({a},{n}) {} copies of G: {good}", n * n));
    }
    let pass = ok && dyn_ok;
    verdict(10, "structural properties", pass, &notes.join("; "));
    pass
}

fn main() {
    let checks: [fn() -> bool; 10] = [
        criterion_01_dim0_oracle_equivalence,
        criterion_02_pullback_table,
        criterion_03_dim0_orbits,
        criterion_04_kernel_identity,
        criterion_05_simplicity,
        criterion_06_petrov_suite,
        criterion_07_basis_extension,
        criterion_08_tangent_cone,
        criterion_09_bounds,
        criterion_10_structure,
    ];
    let failed: Vec<usize> = checks
        .iter()
        .enumerate()
        .filter(|(_, c)| !c())
        .map(|(k, _)| k + 1)
        .collect();
    println!(
        "acceptance: {} of 10 criteria pass; failing {failed:?}",
        10 - failed.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
