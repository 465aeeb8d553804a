//! Command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds;
use crate::dynkin::{self, DynkinGraph};
use crate::error::{Error, Result};
use crate::homology0::{
    all_monodromies0, basis0_outer, basis0_side, gauge_compare, oracle_monodromy0, orbit_lattice0,
    pullback_intersection_table, pushforward_matrix, unit, Basis0, Side,
};
use crate::join1::{self, FReading, JoinBasis, Which};
use crate::linalg::IntMat;
use crate::oracle0::{write_trajectories, TrackOptions};
use crate::petrov;
use crate::polycore::{BiForm1, BiPoly, BiPolyJson, FormJson};
use crate::scenario::{Scenario, ValueLabel};
use crate::zlattice::{kernel, orbit_closure, Lattice};

#[derive(Parser, Debug)]
#[command(
    name = "lefschetz",
    version,
    about = "Vanishing cycles, monodromy and Petrov modules of pull-back polynomials"
)]
pub struct Cli {
    /// Scenario JSON file.
    #[arg(long, short, global = true)]
    pub scenario: Option<PathBuf>,
    /// Use the built-in generic scenario for "a,n" instead of a file.
    #[arg(long, global = true, value_name = "A,N")]
    pub generate: Option<String>,
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    #[value(name = "gR")]
    GR,
    #[value(name = "hS")]
    HS,
    #[value(name = "f")]
    F,
    #[value(name = "fF")]
    FF,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the genericity conditions of a scenario file.
    Validate { file: PathBuf },
    /// List a labelled distinguished basis.
    Basis {
        #[arg(long, value_enum, default_value = "gR")]
        which: Space,
    },
    /// Intersection matrix and its comparison with the case tables.
    Gram {
        #[arg(long, value_enum, default_value = "gR")]
        which: Space,
    },
    /// Monodromy operator of one critical value.
    Monodromy {
        /// c3, t4 in dimension 0; c1+c2 in dimension 1.
        #[arg(long)]
        value: String,
        #[arg(long, value_enum, default_value = "gR")]
        which: Space,
        /// Cross-check against numeric continuation of the fiber.
        #[arg(long)]
        oracle: bool,
        /// Write the continuation trajectories as CSV.
        #[arg(long, value_name = "FILE", requires = "oracle")]
        dump_trajectories: Option<PathBuf>,
    },
    /// Monodromy orbit lattice of one cycle.
    Orbit {
        #[arg(long)]
        seed: String,
        #[arg(long, value_enum, default_value = "gR")]
        which: Space,
    },
    /// ker F_* against tangency orbits.
    Kernel,
    /// Dynkin diagram.
    Dynkin {
        #[arg(long, value_enum, default_value = "fF")]
        which: Space,
        /// Shorthand for --format dot.
        #[arg(long)]
        dot: bool,
    },
    /// Petrov decomposition and tangent-cone membership
    #[command(subcommand)]
    Petrov(PetrovCmd),
    /// Cyclicity bounds.
    Bounds(BoundsArgs),
}

#[derive(Subcommand, Debug)]
pub enum PetrovCmd {
    /// Decompose a 1-form in the Petrov basis of l.
    Decompose {
        form: PathBuf,
        #[arg(long)]
        l: PathBuf,
    },
    /// Decide ω = F*(α) + dK for the scenario map.
    TangentCone { form: PathBuf },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
pub struct BoundsArgs {
    #[arg(long, requires = "n")]
    pub a: Option<i64>,
    #[arg(long, requires = "a")]
    pub n: Option<i64>,
    /// Tabulate all factorizations of this d+1.
    #[arg(long, value_name = "D+1", conflicts_with_all = ["a", "n"])]
    pub factorize: Option<i64>,
    /// Degree for the logarithmic bound.
    #[arg(long, requires = "partition", conflicts_with_all = ["a", "n", "factorize"])]
    pub d: Option<i64>,
    /// Partition of d+1, comma separated.
    #[arg(long, value_delimiter = ',', requires = "d")]
    pub partition: Option<Vec<i64>>,
}

/// A rendered command result.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub dot: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            csv: None,
            dot: None,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::Parse("no CSV output for this command".into())),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| Error::Parse("no DOT output for this command".into())),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_scenario(cli: &Cli) -> Result<Scenario> {
    match (&cli.scenario, &cli.generate) {
        (Some(p), _) => Scenario::from_json_str(&read(p)?),
        (None, Some(g)) => {
            let (a, n) = g
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected A,N, got {g:?}")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad a in {g:?}")))?;
            let n = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad n in {g:?}")))?;
            Scenario::generate(a, n)
        }
        (None, None) => Err(Error::Parse(
            "this command needs --scenario FILE or --generate A,N".into(),
        )),
    }
}

fn matrix_text(names: &[String], m: &IntMat) -> String {
    let w = names.iter().map(|s| s.len()).max().unwrap_or(1).max(3);
    let mut s = format!("{:w$}", "");
    for n in names {
        let _ = write!(s, " {n:>w$}");
    }
    s.push('\n');
    for (n, row) in names.iter().zip(m) {
        let _ = write!(s, "{n:>w$}");
        for x in row {
            let _ = write!(s, " {x:>w$}");
        }
        s.push('\n');
    }
    s
}

fn matrix_csv(names: &[String], m: &IntMat) -> String {
    let mut s = format!("label,{}\n", names.join(","));
    for (n, row) in names.iter().zip(m) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{n},{}", cells.join(","));
    }
    s
}

fn lattice_rows(l: &Lattice) -> Vec<Vec<String>> {
    l.basis
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

enum Basis {
    Zero(Basis0, Side),
    One(JoinBasis),
}

fn basis(s: &Scenario, which: Space) -> Result<Basis> {
    Ok(match which {
        Space::GR => Basis::Zero(basis0_side(s, Side::Left)?, Side::Left),
        Space::HS => Basis::Zero(basis0_side(s, Side::Right)?, Side::Right),
        Space::F => Basis::One(join1::join_basis(s, Which::F)?),
        Space::FF => Basis::One(join1::join_basis(s, Which::FcompF)?),
    })
}

pub fn parse_space(s: &str) -> Result<Space> {
    Space::from_str(s, false).map_err(Error::Parse)
}

fn names0(b: &Basis0) -> Vec<String> {
    b.cycles.iter().map(|c| c.label.to_string()).collect()
}

fn which_name(w: Space) -> &'static str {
    match w {
        Space::GR => "gR",
        Space::HS => "hS",
        Space::F => "f",
        Space::FF => "fF",
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Basis { which } => cmd_basis(&load_scenario(cli)?, *which),
        Command::Gram { which } => cmd_gram(&load_scenario(cli)?, *which),
        Command::Monodromy {
            value,
            which,
            oracle,
            dump_trajectories,
        } => cmd_monodromy(
            &load_scenario(cli)?,
            value,
            *which,
            *oracle,
            dump_trajectories.as_deref(),
        ),
        Command::Orbit { seed, which } => cmd_orbit(&load_scenario(cli)?, seed, *which),
        Command::Kernel => cmd_kernel(&load_scenario(cli)?),
        Command::Dynkin { which, .. } => cmd_dynkin(&load_scenario(cli)?, *which),
        Command::Petrov(PetrovCmd::Decompose { form, l }) => cmd_decompose(form, l),
        Command::Petrov(PetrovCmd::TangentCone { form }) => {
            cmd_tangent_cone(&load_scenario(cli)?, form)
        }
        Command::Bounds(b) => cmd_bounds(b),
    }
}

/// Effective output format after command-specific shorthands.
pub fn format_of(cli: &Cli) -> Format {
    match cli.command {
        Command::Dynkin { dot: true, .. } => Format::Dot,
        _ => cli.format,
    }
}

fn validate(file: &Path) -> Result<Output> {
    let s = Scenario::from_json_str(&read(file)?)?;
    let report = s.validation_report();
    let text = format!(
        "valid scenario: a={}, n={}; conditions 1-4 hold\n",
        s.a, s.n
    );
    Ok(Output::new(report, text))
}

pub fn cmd_basis(s: &Scenario, which: Space) -> Result<Output> {
    match basis(s, which)? {
        Basis::Zero(b, _) => {
            let rows: Vec<Value> = b
                .cycles
                .iter()
                .map(|c| {
                    json!({"label": c.label.to_string(), "value": c.value.to_string(), "value_num": c.value_num,
                           "critical_point": c.critical_point, "coeffs": c.coeffs})
                })
                .collect();
            let mut text = format!("{} cycles over base {}\n", b.len(), b.base);
            let mut csv = String::from("label,value,value_num,critical_point\n");
            for c in &b.cycles {
                let _ = writeln!(
                    text,
                    "{:>8}  {:>4}  {:>14.8}  {:>12.8}",
                    c.label.to_string(),
                    c.value.to_string(),
                    c.value_num,
                    c.critical_point
                );
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    c.label, c.value, c.value_num, c.critical_point
                );
            }
            let mut out = Output::new(
                json!({"which": which_name(which), "base": b.base, "cycles": rows}),
                text,
            );
            out.csv = Some(csv);
            Ok(out)
        }
        Basis::One(b) => {
            let rows: Vec<Value> = (0..b.len())
                .map(|k| json!({"label": b.labels[k].to_string(), "kind": b.labels[k].kind, "value": join1::fmt_value(&b.value(k))}))
                .collect();
            let mut text = format!("{} cycles\n", b.len());
            let mut csv = String::from("label,kind,value\n");
            for k in 0..b.len() {
                let v = join1::fmt_value(&b.value(k));
                let _ = writeln!(
                    text,
                    "{:>14}  {:<12}  {v}",
                    b.labels[k].to_string(),
                    format!("{:?}", b.labels[k].kind)
                );
                let _ = writeln!(csv, "{},{:?},{v}", b.labels[k], b.labels[k].kind);
            }
            let mut out = Output::new(json!({"which": which_name(which), "cycles": rows}), text);
            out.csv = Some(csv);
            Ok(out)
        }
    }
}

pub fn cmd_gram(s: &Scenario, which: Space) -> Result<Output> {
    match which {
        Space::GR => {
            let r = pullback_intersection_table(s)?;
            let verdict = if r.corrected.matches { "PASS" } else { "FAIL" };
            let text = format!(
                "{}case table (corrected tangency rows): {verdict}, orientation flips: {:?}\ncase table (as printed): {}\n",
                matrix_text(&r.labels, &r.computed),
                r.corrected.flipped,
                if r.literal.matches { "match" } else { "mismatch" }
            );
            let mut out = Output::new(serde_json::to_value(&r)?, text);
            out.csv = Some(matrix_csv(&r.labels, &r.computed));
            Ok(out)
        }
        Space::HS => Err(Error::Parse(
            "gram --which hS is not tabulated; use gR".into(),
        )),
        Space::F => {
            let b = join1::join_basis(s, Which::F)?;
            let names = b.names();
            let q = join1::join_form(&b);
            let mut cmp = serde_json::Map::new();
            let mut text = matrix_text(&names, &q);
            for r in [FReading::Literal, FReading::Corrected] {
                let t = join1::intersection_f(&b, r)?;
                let g = gauge_compare(&q, &t, &names);
                let _ = writeln!(
                    text,
                    "case table {r:?}: {}",
                    if g.matches { "match" } else { "mismatch" }
                );
                cmp.insert(format!("{r:?}"), serde_json::to_value(&g)?);
            }
            let mut out = Output::new(json!({"labels": names, "form": q, "tables": cmp}), text);
            out.csv = Some(matrix_csv(&names, &q));
            Ok(out)
        }
        Space::FF => {
            let b = join1::join_basis(s, Which::FcompF)?;
            let names = b.names();
            let q = join1::join_form(&b);
            let rep = join1::kernel_report(s)?;
            let mut text = matrix_text(&names, &q);
            for r in &rep.readings {
                let _ = writeln!(
                    text,
                    "reading {:?}: {}",
                    r.reading,
                    match (&r.table_conflicts, r.passes) {
                        (Some(c), _) => format!("inconsistent ({c})"),
                        (None, true) => "passes the validator".into(),
                        (None, false) => "fails the validator".into(),
                    }
                );
            }
            let mut out = Output::new(
                json!({"labels": names, "form": q, "readings": rep.readings}),
                text,
            );
            out.csv = Some(matrix_csv(&names, &q));
            Ok(out)
        }
    }
}

pub fn cmd_monodromy(
    s: &Scenario,
    value: &str,
    which: Space,
    oracle: bool,
    dump: Option<&Path>,
) -> Result<Output> {
    match basis(s, which)? {
        Basis::Zero(b, side) => {
            let v: ValueLabel = value.parse()?;
            let names = names0(&b);
            let m = crate::homology0::monodromy0(&b, v)?;
            let mut j =
                json!({"which": which_name(which), "value": value, "labels": names, "matrix": m});
            let mut text = matrix_text(&names, &m);
            if oracle {
                let poly = match side {
                    Side::Left => &s.gr,
                    Side::Right => &s.hs,
                };
                let opts = TrackOptions {
                    record: dump.is_some(),
                    ..TrackOptions::default()
                };
                let chk = oracle_monodromy0(&b, poly, v, &opts)?;
                if let Some(p) = dump {
                    let mut f = std::fs::File::create(p)
                        .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    write_trajectories(&chk.perm, &mut f)?;
                }
                j["oracle"] = json!({"matrix": chk.oracle, "permutation": chk.perm.perm,
                                     "max_step_residual": chk.perm.max_step_residual, "agrees": chk.agrees()});
                let _ = writeln!(
                    text,
                    "continuation oracle: {}",
                    if chk.agrees() { "agrees" } else { "DISAGREES" }
                );
            }
            let mut out = Output::new(j, text);
            out.csv = Some(matrix_csv(&names, &m));
            Ok(out)
        }
        Basis::One(b) => {
            if oracle {
                return Err(Error::Parse(
                    "--oracle is available in dimension 0 only".into(),
                ));
            }
            let v = join1::parse_value(value)?;
            let names = b.names();
            let m = join1::monodromy1(&b, &join1::join_form(&b), v)?;
            let mut out = Output::new(
                json!({"which": which_name(which), "value": value, "labels": names, "matrix": m}),
                matrix_text(&names, &m),
            );
            out.csv = Some(matrix_csv(&names, &m));
            Ok(out)
        }
    }
}

pub fn cmd_orbit(s: &Scenario, seed: &str, which: Space) -> Result<Output> {
    match basis(s, which)? {
        Basis::Zero(b, side) => {
            let k = names0(&b)
                .iter()
                .position(|n| n == seed)
                .ok_or_else(|| Error::UnknownCycle(seed.into()))?;
            let gens: Vec<IntMat> = all_monodromies0(&b).into_iter().map(|x| x.1).collect();
            let lat = orbit_lattice0(&gens, &unit(b.len(), k))?;
            let outer = basis0_outer(s, side)?;
            let push = pushforward_matrix(s, side, &b, &outer)?;
            let ker = kernel(&push, b.len());
            let full = lat.rank() == b.len()
                && lat == Lattice::from_i64(&crate::linalg::identity(b.len()), b.len());
            let j = json!({"seed": seed, "rank": lat.rank(), "dim": b.len(), "full_lattice": full,
                           "kernel_rank": ker.rank(), "equals_kernel": lat == ker, "hermite_basis": lattice_rows(&lat)});
            let text = format!(
                "orbit of {seed}: rank {} of {}; whole H0: {full}; equals ker of pushforward (rank {}): {}\n",
                lat.rank(),
                b.len(),
                ker.rank(),
                lat == ker
            );
            Ok(Output::new(j, text))
        }
        Basis::One(b) => {
            let k = b
                .index_of(seed)
                .ok_or_else(|| Error::UnknownCycle(seed.into()))?;
            let q = join1::join_form(&b);
            let gens: Vec<IntMat> = join1::all_monodromies1(&b, &q)
                .into_iter()
                .map(|x| x.1)
                .collect();
            let lat = orbit_closure(&gens, &[crate::zlattice::big(&unit(b.len(), k))], b.len())?;
            let mut j = json!({"seed": seed, "rank": lat.rank(), "dim": b.len(), "hermite_basis": lattice_rows(&lat)});
            let mut text = format!("orbit of {seed}: rank {} of {}\n", lat.rank(), b.len());
            if which == Space::FF {
                let f = join1::join_basis(s, Which::F)?;
                let ker = kernel(&join1::pushforward_f(&b, &f), b.len());
                j["kernel_rank"] = json!(ker.rank());
                j["contained_in_kernel"] = json!(ker.contains(&lat));
                j["equals_kernel"] = json!(lat == ker);
                let _ = writeln!(
                    text,
                    "ker F_* rank {}; contained: {}; equal: {}",
                    ker.rank(),
                    ker.contains(&lat),
                    lat == ker
                );
            }
            Ok(Output::new(j, text))
        }
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_kernel(s: &Scenario) -> Result<Output> {
    let r = join1::kernel_report(s)?;
    let single = r.single_seed.as_ref().is_some_and(|o| o.equals_kernel);
    let two = r.two_seed.as_ref().is_some_and(|o| o.equals_kernel);
    let mut text = format!(
        "rank ker F_* = {} (expected (na+n-1)^2 - a^2 = {}): {}\n",
        r.nullity,
        r.expected_nullity,
        pass(r.nullity == r.expected_nullity)
    );
    let _ = writeln!(
        text,
        "chosen reading: {}",
        r.chosen_reading
            .map_or("none".to_string(), |x| format!("{x:?}"))
    );
    if let Some(o) = &r.single_seed {
        let _ = writeln!(
            text,
            "orbit of {} alone: rank {}, equals kernel: {}",
            o.seeds[0],
            o.rank,
            pass(single)
        );
    }
    if let Some(o) = &r.two_seed {
        let _ = writeln!(
            text,
            "orbit of {}: rank {}, equals kernel: {}",
            o.seeds.join(" and "),
            o.rank,
            pass(two)
        );
    }
    let mut j = serde_json::to_value(&r)?;
    j["verdict"] = json!({"nullity": pass(r.nullity == r.expected_nullity), "single_seed": pass(single), "two_seed": pass(two)});
    Ok(Output::new(j, text))
}

fn graph_for(s: &Scenario, which: Space) -> Result<(DynkinGraph, Option<JoinBasis>)> {
    Ok(match basis(s, which)? {
        Basis::Zero(b, _) => (dynkin::build(&b.gram(), dynkin::vertices0(&b), 0), None),
        Basis::One(b) => (
            dynkin::build(&join1::join_form(&b), dynkin::vertices1(&b), 1),
            Some(b),
        ),
    })
}

pub fn cmd_dynkin(s: &Scenario, which: Space) -> Result<Output> {
    let (g, _) = graph_for(s, which)?;
    let mut j =
        json!({"graph": g, "adjacency": dynkin::adjacency_json(&g), "connected": g.is_connected()});
    let mut text = format!(
        "{} vertices, {} edges, connected: {}\n",
        g.len(),
        g.edges.len(),
        g.is_connected()
    );
    if which == Space::FF {
        let (gf, _) = graph_for(s, Space::F)?;
        let rep = dynkin::subgraph_decomposition(&g, &gf, s.n)?;
        let _ = writeln!(
            text,
            "removing {} tangency/exceptional vertices leaves {} components isomorphic to the diagram of f",
            rep.removed,
            rep.components.len()
        );
        j["subgraphs"] = serde_json::to_value(&rep)?;
    }
    let mut out = Output::new(j, text);
    out.dot = Some(g.to_dot());
    Ok(out)
}

fn read_form(p: &Path) -> Result<BiForm1> {
    let j: FormJson = serde_json::from_str(&read(p)?)?;
    BiForm1::from_json(&j)
}

pub fn cmd_decompose(form: &Path, l: &Path) -> Result<Output> {
    let w = read_form(form)?;
    let lj: BiPolyJson = serde_json::from_str(&read(l)?)?;
    decompose_output(&w, &BiPoly::from_json(&lj)?)
}

pub fn decompose_output(w: &BiForm1, l: &BiPoly) -> Result<Output> {
    let w = w.clone();
    let dec = petrov::decompose(&w, l)?;
    let exact = dec.reconstruct(l) == w;
    let bounds = dec.degree_bounds_hold(w.degree());
    let mut text = String::new();
    for (&(i, j), h) in &dec.h {
        let _ = writeln!(text, "h_{i}{j}(t) = {h}");
    }
    let _ = writeln!(
        text,
        "zeta1 = {}\nzeta2 = {}\nreconstruction exact: {exact}; degree bounds: {bounds}",
        dec.zeta1, dec.zeta2
    );
    let mut j = serde_json::to_value(dec.to_json())?;
    j["reconstruction_exact"] = json!(exact);
    j["degree_bounds_hold"] = json!(bounds);
    Ok(Output::new(j, text))
}

pub fn cmd_tangent_cone(s: &Scenario, form: &Path) -> Result<Output> {
    let w = read_form(form)?;
    let t = petrov::tangent_cone_membership(&w, s)?;
    let text = match &t {
        petrov::TangentCone::Member { alpha, k } => format!("member\nalpha = {alpha}\nK = {k}\n"),
        petrov::TangentCone::NotMember { reason } => format!("not a member: {reason}\n"),
    };
    Ok(Output::new(serde_json::to_value(t.to_json())?, text))
}

pub fn cmd_bounds(b: &BoundsArgs) -> Result<Output> {
    if let (Some(a), Some(n)) = (b.a, b.n) {
        let r = bounds::report(a, n)?;
        let text = format!(
            "d={} a={} n={}\nC={}\nhamiltonian codim bound={}\nlogarithmic bound (all ones)={}\ngeneric upper bound={}\n",
            r.d, r.a, r.n, r.c, r.hamiltonian_bound, r.logarithmic_max_bound, r.generic_upper
        );
        let mut j = serde_json::to_value(&r)?;
        j["expressions_agree"] = json!(bounds::cyclicity_expressions_agree());
        let mut out = Output::new(j, text);
        out.csv = Some(format!(
            "d,a,n,C,hamiltonian,logarithmic,generic_upper\n{},{},{},{},{},{},{}\n",
            r.d, r.a, r.n, r.c, r.hamiltonian_bound, r.logarithmic_max_bound, r.generic_upper
        ));
        return Ok(out);
    }
    if let Some(dp1) = b.factorize {
        let rows = bounds::best_factorization(dp1)?;
        let mut text = format!("{:>4} {:>4} {:>8}\n", "n", "a+1", "C");
        let mut csv = String::from("n,a_plus_1,C,maximal\n");
        for r in &rows {
            let _ = writeln!(
                text,
                "{:>4} {:>4} {:>8}{}",
                r.n,
                r.a_plus_1,
                r.c,
                if r.maximal { "  *" } else { "" }
            );
            let _ = writeln!(csv, "{},{},{},{}", r.n, r.a_plus_1, r.c, r.maximal);
        }
        let mut out = Output::new(json!({"d_plus_1": dp1, "rows": rows}), text);
        out.csv = Some(csv);
        return Ok(out);
    }
    if let (Some(d), Some(p)) = (b.d, &b.partition) {
        let v = bounds::logarithmic_bound(d, p)?;
        return Ok(Output::new(
            json!({"d": d, "partition": p, "bound": v}),
            format!("logarithmic bound={v}\n"),
        ));
    }
    Err(Error::Parse(
        "bounds needs --a and --n, --factorize, or --d with --partition".into(),
    ))
}
