//! H₁ of fibers of f = g(x)+h(y) and f∘F = g(R(x))+h(S(y)) through joins
//! of zero-dimensional vanishing cycles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology0::{basis0_outer, basis0_side, monodromy_from_form, Basis0, Label0, Side};
use crate::linalg::{det, is_skew, mat_mul, preserves, IntMat};
use crate::scenario::{Scenario, ValueLabel};
use crate::zlattice::{big, kernel, orbit_closure, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    PullBack,
    TangencyX,
    TangencyY,
    Exceptional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JoinLabel {
    pub kind: Kind,
    pub left: Label0,
    pub right: Label0,
}

fn right_name(l: &Label0) -> String {
    l.to_string().replacen('d', "g", 1)
}

impl fmt::Display for JoinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.left, right_name(&self.right))
    }
}

fn kind_of(l: &Label0, r: &Label0) -> Kind {
    match (l.is_tangency(), r.is_tangency()) {
        (false, false) => Kind::PullBack,
        (true, false) => Kind::TangencyX,
        (false, true) => Kind::TangencyY,
        (true, true) => Kind::Exceptional,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    /// f = g + h.
    F,
    /// f∘F = g∘R + h∘S.
    FcompF,
}

#[derive(Clone, Debug)]
pub struct JoinBasis {
    pub which: Which,
    pub a: usize,
    pub n: usize,
    pub labels: Vec<JoinLabel>,
    /// (left index, right index) into the dim-0 bases.
    pub pairs: Vec<(usize, usize)>,
    pub left: Basis0,
    pub right: Basis0,
}

pub type FormalValue = (ValueLabel, ValueLabel);

pub fn fmt_value(v: &FormalValue) -> String {
    format!("{}+{}", v.0, v.1)
}

pub fn parse_value(s: &str) -> Result<FormalValue> {
    let (l, r) = s
        .split_once('+')
        .ok_or_else(|| Error::UnknownCriticalValue(s.to_string()))?;
    Ok((l.parse()?, r.parse()?))
}

impl JoinBasis {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }

    pub fn value(&self, k: usize) -> FormalValue {
        let (i, j) = self.pairs[k];
        (self.left.cycles[i].value, self.right.cycles[j].value)
    }

    /// Cycles grouped by formal critical value (u, v).
    pub fn value_groups(&self) -> BTreeMap<FormalValue, Vec<usize>> {
        let mut m: BTreeMap<FormalValue, Vec<usize>> = BTreeMap::new();
        for k in 0..self.len() {
            m.entry(self.value(k)).or_default().push(k);
        }
        m
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.to_string() == name)
    }

    pub fn kind_counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for l in &self.labels {
            c[l.kind as usize] += 1;
        }
        c
    }
}

/// Labelled join basis, ordered PullBack, TangencyX, TangencyY, Exceptional.
pub fn join_basis(s: &Scenario, which: Which) -> Result<JoinBasis> {
    let (left, right) = match which {
        Which::F => (basis0_outer(s, Side::Left)?, basis0_outer(s, Side::Right)?),
        Which::FcompF => (basis0_side(s, Side::Left)?, basis0_side(s, Side::Right)?),
    };
    let mut items: Vec<(JoinLabel, (usize, usize))> = vec![];
    for (i, l) in left.cycles.iter().enumerate() {
        for (j, r) in right.cycles.iter().enumerate() {
            items.push((
                JoinLabel {
                    kind: kind_of(&l.label, &r.label),
                    left: l.label,
                    right: r.label,
                },
                (i, j),
            ));
        }
    }
    items.sort_by_key(|(l, _)| *l);
    Ok(JoinBasis {
        which,
        a: s.a,
        n: s.n,
        labels: items.iter().map(|x| x.0).collect(),
        pairs: items.iter().map(|x| x.1).collect(),
        left,
        right,
    })
}

/// Upper triangular Seifert-type matrix of one side: V[p][q] = ⟨δ_p, δ_q⟩
/// when the path to p precedes the path to q, 1 on the diagonal.
pub fn side_variation(b: &Basis0) -> IntMat {
    let g = b.gram();
    let keys = b.path_keys();
    let m = b.len();
    let mut v = vec![vec![0; m]; m];
    for p in 0..m {
        for q in 0..m {
            if p == q {
                v[p][q] = 1;
            } else if keys[p].0 < keys[q].0 || (keys[p].0 == keys[q].0 && keys[p].1 < keys[q].1) {
                v[p][q] = g[p][q];
            }
        }
    }
    v
}

/// Intersection form of the joins derived from the two dim-0 path systems:
/// with V = V_L ⊗ V_R, the form is V − Vᵀ.
pub fn join_form(b: &JoinBasis) -> IntMat {
    let vl = side_variation(&b.left);
    let vr = side_variation(&b.right);
    let n = b.len();
    let v = |x: usize, y: usize| {
        let (i, j) = b.pairs[x];
        let (k, l) = b.pairs[y];
        vl[i][k] * vr[j][l]
    };
    (0..n)
        .map(|x| (0..n).map(|y| v(x, y) - v(y, x)).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FReading {
    /// The printed table, last case keyed on k = l+1.
    Literal,
    /// Last case keyed on k = j+1 like its mirror case.
    Corrected,
    /// Derived from the path systems.
    Join,
}

fn odd(x: usize) -> bool {
    x % 2 == 1
}

fn sgn(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Value of the printed f-table at (i, j; l, k), if a case applies.
pub fn f_table_entry(
    a: usize,
    i: usize,
    j: usize,
    l: usize,
    k: usize,
    reading: FReading,
) -> Option<i64> {
    let near = l + 1 == i || l == i + 1;
    if (i == l && k == j + 1 && odd(j))
        || (j == k && l == i + 1 && !odd(i))
        || (odd(i) && !odd(j) && near && k == j + 1)
    {
        return Some(sgn(a));
    }
    let last = match reading {
        FReading::Literal => k == l + 1,
        _ => k == j + 1,
    };
    if (i == l && k == j + 1 && !odd(j))
        || (j == k && l == i + 1 && odd(i))
        || (!odd(i) && odd(j) && near && last)
    {
        return Some(sgn(a + 1));
    }
    None
}

struct TableBuilder {
    t: IntMat,
    cite: Vec<Vec<&'static str>>,
    conflicts: Vec<String>,
}

impl TableBuilder {
    fn new(n: usize) -> Self {
        TableBuilder {
            t: vec![vec![0; n]; n],
            cite: vec![vec![""; n]; n],
            conflicts: vec![],
        }
    }

    fn set(&mut self, u: usize, v: usize, x: i64, case: &'static str, names: &[String]) {
        for (p, q, y) in [(u, v, x), (v, u, -x)] {
            if self.t[p][q] != 0 && self.t[p][q] != y {
                self.conflicts.push(format!(
                    "<{}, {}>: {} by {} and {} by {}",
                    names[p], names[q], self.t[p][q], self.cite[p][q], y, case
                ));
            }
            self.t[p][q] = y;
            self.cite[p][q] = case;
        }
    }

    fn finish(self) -> Result<IntMat> {
        if self.conflicts.is_empty() {
            Ok(self.t)
        } else {
            Err(Error::InconsistentTable(self.conflicts.join("; ")))
        }
    }
}

fn plain_index(l: &Label0) -> usize {
    match *l {
        Label0::Plain(i) => i,
        _ => panic!("not a plain label"),
    }
}

/// Intersection form of f in the basis δ_i*γ_j.
pub fn intersection_f(b: &JoinBasis, reading: FReading) -> Result<IntMat> {
    assert_eq!(b.which, Which::F);
    if reading == FReading::Join {
        return Ok(join_form(b));
    }
    let names = b.names();
    let mut tb = TableBuilder::new(b.len());
    for u in 0..b.len() {
        for v in 0..b.len() {
            let (i, j) = (
                plain_index(&b.labels[u].left),
                plain_index(&b.labels[u].right),
            );
            let (l, k) = (
                plain_index(&b.labels[v].left),
                plain_index(&b.labels[v].right),
            );
            if let Some(x) = f_table_entry(b.a, i, j, l, k, reading) {
                tb.set(u, v, x, "f-table", &names);
            }
        }
    }
    tb.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FFReading {
    /// Both copies of the duplicated parity condition taken as printed.
    Literal,
    /// The copy in the first case read as "a even".
    TableA,
    /// The copy in the second case read as "a even".
    TableB,
    /// Derived from the path systems.
    Join,
}

impl FFReading {
    pub const ALL: [FFReading; 4] = [
        FFReading::Literal,
        FFReading::TableA,
        FFReading::TableB,
        FFReading::Join,
    ];
}

/// Signs of the two displayed tangency couplings: the first is for the
/// TangencyY rows (keyed on s), the second for the TangencyX rows (keyed on
/// m). Returns every sign a case assigns.
fn tangency_signs(n: usize, a: usize, idx: usize, reading: FFReading, first: bool) -> Vec<i64> {
    if !odd(idx) {
        return vec![];
    }
    // First display: −1 case then +1 case; second display the opposite.
    let (case1, case2) = if first { (-1, 1) } else { (1, -1) };
    let mut out = vec![];
    if odd(n) {
        out.push(case1);
        return out;
    }
    let (c1_a_odd, c2_a_odd) = match reading {
        FFReading::Literal => (true, true),
        FFReading::TableA => (false, true),
        FFReading::TableB => (true, false),
        FFReading::Join => unreachable!(),
    };
    if odd(a) == c1_a_odd {
        out.push(case1);
    }
    if odd(a) == c2_a_odd {
        out.push(case2);
    }
    out
}

/// Intersection form of f∘F from the printed table under a reading, or from
/// the path systems. Unstated pairs are 0.
pub fn intersection_ff(b: &JoinBasis, reading: FFReading) -> Result<IntMat> {
    assert_eq!(b.which, Which::FcompF);
    if reading == FFReading::Join {
        return Ok(join_form(b));
    }
    let (a, n) = (b.a, b.n);
    let names = b.names();
    let pos: BTreeMap<JoinLabel, usize> =
        b.labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
    let pb = |c: usize, m: usize, c2: usize, s: usize| JoinLabel {
        kind: Kind::PullBack,
        left: Label0::PullBack { c, sheet: m },
        right: Label0::PullBack { c: c2, sheet: s },
    };
    let sign_n = sgn(n + 1);
    let mut tb = TableBuilder::new(b.len());
    let fv = |i, j, l, k| f_table_entry(a, i, j, l, k, FReading::Corrected);
    for m in 1..=n {
        for s in 1..=n {
            for i in 1..=a {
                for j in 1..=a {
                    for l in 1..=a {
                        for k in 1..=a {
                            if let Some(x) = fv(i, j, l, k) {
                                tb.set(
                                    pos[&pb(i, m, j, s)],
                                    pos[&pb(l, m, k, s)],
                                    sign_n * x,
                                    "pull-back block",
                                    &names,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    // Same tangency factor: copy the pull-back entries at c_a.
    for t in a + 1..a + n {
        for s in 1..=n {
            for j in 1..=a {
                for k in 1..=a {
                    if let Some(x) = fv(a, j, a, k) {
                        let u = JoinLabel {
                            kind: Kind::TangencyX,
                            left: Label0::Tangency(t),
                            right: Label0::PullBack { c: j, sheet: s },
                        };
                        let v = JoinLabel {
                            kind: Kind::TangencyX,
                            left: Label0::Tangency(t),
                            right: Label0::PullBack { c: k, sheet: s },
                        };
                        tb.set(pos[&u], pos[&v], sign_n * x, "tangency-x block", &names);
                    }
                    if let Some(x) = fv(j, a, k, a) {
                        let u = JoinLabel {
                            kind: Kind::TangencyY,
                            left: Label0::PullBack { c: j, sheet: s },
                            right: Label0::Tangency(t),
                        };
                        let v = JoinLabel {
                            kind: Kind::TangencyY,
                            left: Label0::PullBack { c: k, sheet: s },
                            right: Label0::Tangency(t),
                        };
                        tb.set(pos[&u], pos[&v], sign_n * x, "tangency-y block", &names);
                    }
                }
            }
        }
    }
    // ⟨δ_i^m*γ_a^s, δ_i^m*γ_{a+s}⟩ = ⟨δ_i^m*γ_{a+s}, δ_i^m*γ_a^{s+1}⟩.
    for s in 1..n {
        for x in tangency_signs(n, a, s, reading, true) {
            for i in 1..=a {
                for m in 1..=n {
                    let ty = JoinLabel {
                        kind: Kind::TangencyY,
                        left: Label0::PullBack { c: i, sheet: m },
                        right: Label0::Tangency(a + s),
                    };
                    tb.set(pos[&pb(i, m, a, s)], pos[&ty], x, "y-coupling", &names);
                    tb.set(pos[&ty], pos[&pb(i, m, a, s + 1)], x, "y-coupling", &names);
                }
            }
        }
    }
    // ⟨δ_1^m*γ_j^s, δ_{a+m}*γ_j^s⟩ = ⟨δ_{a+m}*γ_j^s, δ_1^{m+1}*γ_j^s⟩.
    for m in 1..n {
        for x in tangency_signs(n, a, m, reading, false) {
            for j in 1..=a {
                for s in 1..=n {
                    let tx = JoinLabel {
                        kind: Kind::TangencyX,
                        left: Label0::Tangency(a + m),
                        right: Label0::PullBack { c: j, sheet: s },
                    };
                    tb.set(pos[&pb(1, m, j, s)], pos[&tx], x, "x-coupling", &names);
                    tb.set(pos[&tx], pos[&pb(1, m + 1, j, s)], x, "x-coupling", &names);
                }
            }
        }
    }
    tb.finish()
}

/// Picard–Lefschetz operator of the formal value `value`.
pub fn monodromy1(b: &JoinBasis, form: &IntMat, value: FormalValue) -> Result<IntMat> {
    let members: Vec<usize> = (0..b.len()).filter(|&k| b.value(k) == value).collect();
    if members.is_empty() {
        return Err(Error::UnknownCriticalValue(fmt_value(&value)));
    }
    Ok(monodromy_from_form(form, &members))
}

pub fn all_monodromies1(b: &JoinBasis, form: &IntMat) -> Vec<(FormalValue, IntMat)> {
    b.value_groups()
        .into_iter()
        .map(|(v, mem)| (v, monodromy_from_form(form, &mem)))
        .collect()
}

/// F_*: pull-back joins go to the join of their images, the rest to 0.
pub fn pushforward_f(b: &JoinBasis, f: &JoinBasis) -> IntMat {
    let mut m = vec![vec![0; b.len()]; f.len()];
    for (k, l) in b.labels.iter().enumerate() {
        if l.kind != Kind::PullBack {
            continue;
        }
        let (vl, vr) = b.value(k);
        let target = (0..f.len())
            .find(|&t| f.value(t) == (vl, vr))
            .expect("image cycle in the f basis");
        m[target][k] = 1;
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitOutcome {
    pub seeds: Vec<String>,
    pub rank: usize,
    pub contained_in_kernel: bool,
    pub equals_kernel: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingOutcome {
    pub reading: FFReading,
    pub table_conflicts: Option<String>,
    pub skew: bool,
    pub same_value_orthogonal: bool,
    pub preserved_by_monodromy: bool,
    pub unimodular: bool,
    pub single_seed: Option<OrbitOutcome>,
    pub two_seed: Option<OrbitOutcome>,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub a: usize,
    pub n: usize,
    pub nullity: usize,
    pub expected_nullity: usize,
    pub chosen_reading: Option<FFReading>,
    pub single_seed: Option<OrbitOutcome>,
    pub two_seed: Option<OrbitOutcome>,
    pub readings: Vec<ReadingOutcome>,
    pub kernel: crate::zlattice::LatticeJson,
}

fn first_of(b: &JoinBasis, kind: Kind) -> usize {
    b.labels
        .iter()
        .position(|l| l.kind == kind)
        .expect("kind present")
}

fn orbit_outcome(
    b: &JoinBasis,
    gens: &[IntMat],
    seeds: &[usize],
    ker: &Lattice,
) -> Result<(OrbitOutcome, Lattice)> {
    let n = b.len();
    let mut lat = Lattice::zero(n);
    for &s in seeds {
        let mut v = vec![BigInt::from(0); n];
        v[s] = BigInt::from(1);
        lat = lat.with(&orbit_closure(gens, &[v], n)?.basis);
    }
    let out = OrbitOutcome {
        seeds: seeds.iter().map(|&s| b.labels[s].to_string()).collect(),
        rank: lat.rank(),
        contained_in_kernel: ker.contains(&lat),
        equals_kernel: lat == *ker,
    };
    Ok((out, lat))
}

/// Checks one candidate form against the structural requirements.
pub fn validate_reading(
    b: &JoinBasis,
    reading: FFReading,
    ker: &Lattice,
) -> Result<ReadingOutcome> {
    let form = match intersection_ff(b, reading) {
        Ok(f) => f,
        Err(Error::InconsistentTable(msg)) => {
            return Ok(ReadingOutcome {
                reading,
                table_conflicts: Some(msg),
                skew: false,
                same_value_orthogonal: false,
                preserved_by_monodromy: false,
                unimodular: false,
                single_seed: None,
                two_seed: None,
                passes: false,
            })
        }
        Err(e) => return Err(e),
    };
    let skew = is_skew(&form);
    let groups = b.value_groups();
    let same_value_orthogonal = groups
        .values()
        .all(|mem| mem.iter().all(|&p| mem.iter().all(|&q| form[p][q] == 0)));
    let gens: Vec<IntMat> = groups
        .values()
        .map(|mem| monodromy_from_form(&form, mem))
        .collect();
    let preserved = gens.iter().all(|m| preserves(m, &form));
    let unimodular = gens
        .iter()
        .all(|m| det(m).magnitude() == &num_bigint::BigUint::from(1u32));
    let (single, two) = if unimodular {
        let tx = first_of(b, Kind::TangencyX);
        let ty = first_of(b, Kind::TangencyY);
        (
            Some(orbit_outcome(b, &gens, &[tx], ker)?.0),
            Some(orbit_outcome(b, &gens, &[tx, ty], ker)?.0),
        )
    } else {
        (None, None)
    };
    let passes = skew
        && same_value_orthogonal
        && preserved
        && unimodular
        && single.as_ref().is_some_and(|o| o.contained_in_kernel)
        && two.as_ref().is_some_and(|o| o.equals_kernel);
    Ok(ReadingOutcome {
        reading,
        table_conflicts: None,
        skew,
        same_value_orthogonal,
        preserved_by_monodromy: preserved,
        unimodular,
        single_seed: single,
        two_seed: two,
        passes,
    })
}

/// ker F_* against the monodromy orbit of a tangency cycle, over every
/// reading of the f∘F table; the first reading passing the validator is
/// reported as chosen.
pub fn kernel_report(s: &Scenario) -> Result<KernelReport> {
    let b = join_basis(s, Which::FcompF)?;
    let f = join_basis(s, Which::F)?;
    let push = pushforward_f(&b, &f);
    let ker = kernel(&push, b.len());
    let d = s.n * s.a + s.n - 1;
    let mut readings = vec![];
    for r in FFReading::ALL {
        readings.push(validate_reading(&b, r, &ker)?);
    }
    let chosen = readings.iter().find(|r| r.passes);
    Ok(KernelReport {
        a: s.a,
        n: s.n,
        nullity: ker.rank(),
        expected_nullity: d * d - s.a * s.a,
        chosen_reading: chosen.map(|r| r.reading),
        single_seed: chosen.and_then(|r| r.single_seed.clone()),
        two_seed: chosen.and_then(|r| r.two_seed.clone()),
        kernel: ker.to_json(),
        readings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub a: usize,
    pub reading: FReading,
    pub ranks: Vec<(String, usize)>,
    pub simple: bool,
}

pub fn simplicity_check(f: &JoinBasis, reading: FReading) -> Result<SimplicityReport> {
    let form = intersection_f(f, reading)?;
    let gens: Vec<IntMat> = all_monodromies1(f, &form)
        .into_iter()
        .map(|x| x.1)
        .collect();
    let mut ranks = vec![];
    for k in 0..f.len() {
        let mut seed = vec![0; f.len()];
        seed[k] = 1;
        let l = orbit_closure(&gens, &[big(&seed)], f.len())?;
        ranks.push((f.labels[k].to_string(), l.rank()));
    }
    let simple = ranks.iter().all(|r| r.1 == f.a * f.a);
    Ok(SimplicityReport {
        a: f.a,
        reading,
        ranks,
        simple,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TangencyOrbitReport {
    pub seed: String,
    pub rank: usize,
    pub contains_all_tangency: bool,
    pub missing_tangency: Vec<String>,
    pub contains_all_exceptional: bool,
    pub contains_sheet_differences: bool,
    pub missing_differences: usize,
    pub pullback_cycle_excluded: bool,
    /// HNF basis of the orbit lattice.
    pub nabla: crate::zlattice::LatticeJson,
}

pub fn tangency_orbit_decomposition(s: &Scenario) -> Result<TangencyOrbitReport> {
    let b = join_basis(s, Which::FcompF)?;
    let form = join_form(&b);
    let gens: Vec<IntMat> = all_monodromies1(&b, &form)
        .into_iter()
        .map(|x| x.1)
        .collect();
    let seed = first_of(&b, Kind::TangencyX);
    let mut v = vec![0; b.len()];
    v[seed] = 1;
    let lat = orbit_closure(&gens, &[big(&v)], b.len())?;
    let unit = |k: usize| {
        let mut v = vec![0; b.len()];
        v[k] = 1;
        v
    };
    let missing_tangency: Vec<String> = (0..b.len())
        .filter(|&k| matches!(b.labels[k].kind, Kind::TangencyX | Kind::TangencyY))
        .filter(|&k| !lat.member_i64(&unit(k)))
        .map(|k| b.labels[k].to_string())
        .collect();
    let contains_all_exceptional = (0..b.len())
        .filter(|&k| b.labels[k].kind == Kind::Exceptional)
        .all(|k| lat.member_i64(&unit(k)));
    let mut missing_differences = 0;
    for p in 0..b.len() {
        for q in p + 1..b.len() {
            if b.labels[p].kind == Kind::PullBack
                && b.labels[q].kind == Kind::PullBack
                && b.value(p) == b.value(q)
            {
                let mut d = vec![0; b.len()];
                d[p] = 1;
                d[q] = -1;
                if !lat.member_i64(&d) {
                    missing_differences += 1;
                }
            }
        }
    }
    let pb = first_of(&b, Kind::PullBack);
    Ok(TangencyOrbitReport {
        seed: b.labels[seed].to_string(),
        rank: lat.rank(),
        contains_all_tangency: missing_tangency.is_empty(),
        missing_tangency,
        contains_all_exceptional,
        contains_sheet_differences: missing_differences == 0,
        missing_differences,
        pullback_cycle_excluded: !lat.member_i64(&unit(pb)),
        nabla: lat.to_json(),
    })
}

/// F_* h = h' F_*, with h' the f-monodromy of the same pull-back value and
/// the identity for values involving a tangency.
pub fn projection_compatible(b: &JoinBasis, f: &JoinBasis, form: &IntMat, fform: &IntMat) -> bool {
    let push = pushforward_f(b, f);
    let fgroups = f.value_groups();
    all_monodromies1(b, form).into_iter().all(|(v, m)| {
        let lhs = mat_mul(&push, &m);
        let rhs = match fgroups.get(&v) {
            Some(mem) => mat_mul(&monodromy_from_form(fform, mem), &push),
            None => push.clone(),
        };
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let s = Scenario::generate(1, 2).unwrap();
        let b = join_basis(&s, Which::FcompF).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b.kind_counts(), [4, 2, 2, 1]);
        let f = join_basis(&s, Which::F).unwrap();
        assert_eq!(f.len(), 1);
        let s = Scenario::generate(2, 2).unwrap();
        let b = join_basis(&s, Which::FcompF).unwrap();
        assert_eq!(b.kind_counts(), [16, 4, 4, 1]);
    }

    #[test]
    fn f_table_examples() {
        assert_eq!(f_table_entry(2, 1, 1, 1, 2, FReading::Corrected), Some(1));
        assert_eq!(f_table_entry(3, 1, 1, 2, 1, FReading::Corrected), Some(1));
        assert_eq!(f_table_entry(2, 1, 1, 1, 1, FReading::Corrected), None);
    }

    #[test]
    fn join_form_is_skew_and_preserved() {
        let s = Scenario::generate(2, 2).unwrap();
        let b = join_basis(&s, Which::FcompF).unwrap();
        let q = join_form(&b);
        assert!(is_skew(&q));
        for (_, m) in all_monodromies1(&b, &q) {
            assert!(preserves(&m, &q));
        }
    }

    #[test]
    fn kernel_small() {
        let s = Scenario::generate(1, 2).unwrap();
        let r = kernel_report(&s).unwrap();
        assert_eq!(r.nullity, 8);
        assert_eq!(r.expected_nullity, 8);
    }
}
