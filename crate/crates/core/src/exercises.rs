//! Built-in verification suite. Every check draws from its own seeded
//! stream, so a report depends only on `(seed, dim, tol)`.
//!
//! Checks named `exNN` follow the numbered exercises of the underlying
//! course material; the remaining checks cover the general identities those
//! exercises build on.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::determinants::{determinant, invert_rows, matrix_determinant};
use crate::einsum::{self, order_contractions, parse, validate, Mode, Signature};
use crate::error::Error;
use crate::frames::{transform, transform_basis, verify_transform_law_with_tol, weight_factor, Frame};
use crate::metric::{
    cross, inner, inner_covariant, levi_civita_tensor, lower, metric_from_basis, raise, triple, Metric,
};
use crate::minkowski::{
    boost, boost_from_rapidity, is_lorentz, lorentz_condition_deviation, mink_product, preserves_metric,
    rapidity, FourVector, LorentzMatrix, Rapidity,
};
use crate::random::{
    random_basis, random_frame, random_lorentz, random_metric, random_oriented_frame, random_rotation,
    random_rotation_rows, random_tensor, random_vector, rng_for, slot_patterns, uniform,
};
use crate::symbols::{kronecker, levi_civita_symbol, DeltaKind, EpsilonVariance};
use crate::tensor::{MultiIndexIter, Symmetry, TensorObject, Variance};

use Variance::{Down, Up};

/// Random instances drawn by each sampling check.
pub const TRIALS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub dim: usize,
    pub seed: u64,
    pub tol: f64,
    /// Substring matched against check ids.
    pub filter: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dim: 3,
            seed: 0,
            tol: 1e-9,
            filter: None,
        }
    }
}

/// State handed to a check: its generator and the running deviation.
pub struct Ctx {
    pub rng: ChaCha8Rng,
    pub dim: usize,
    pub tol: f64,
    deviation: f64,
    failures: Vec<String>,
}

impl Ctx {
    fn record(&mut self, dev: f64, limit: f64, what: &str) {
        if dev.is_nan() {
            self.deviation = f64::INFINITY;
        } else {
            self.deviation = self.deviation.max(dev);
        }
        if (dev.is_nan() || dev > limit) && self.failures.len() < 3 {
            self.failures.push(format!("{what}: deviation {dev:.3e}"));
        }
    }

    /// `|got - want| <= tol * max(1, |want|)`.
    fn close(&mut self, got: f64, want: f64, what: &str) {
        let dev = (got - want).abs() / want.abs().max(1.0);
        self.record(dev, self.tol, what);
    }

    fn exact(&mut self, got: f64, want: f64, what: &str) {
        self.record((got - want).abs(), 0.0, what);
    }

    fn tensor_dev(&mut self, got: &TensorObject, want: &TensorObject, what: &str) -> Option<f64> {
        if got.dim() != want.dim() || got.slots() != want.slots() || got.weight() != want.weight() {
            self.expect(false, &format!("{what}: signature differs"));
            return None;
        }
        Some(
            got.components()
                .iter()
                .zip(want.components())
                .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
                .fold(0.0, f64::max),
        )
    }

    fn close_t(&mut self, got: &TensorObject, want: &TensorObject, what: &str) {
        if let Some(dev) = self.tensor_dev(got, want, what) {
            self.record(dev, self.tol, what);
        }
    }

    fn exact_t(&mut self, got: &TensorObject, want: &TensorObject, what: &str) {
        if let Some(dev) = self.tensor_dev(got, want, what) {
            self.record(dev, 0.0, what);
        }
    }

    fn expect(&mut self, cond: bool, what: &str) {
        if !cond && self.failures.len() < 3 {
            self.failures.push(what.to_string());
        }
        if !cond {
            self.failures.truncate(3);
        }
    }

    fn failed(&self) -> bool {
        !self.failures.is_empty()
    }
}

type Body = fn(&mut Ctx) -> Result<(), Error>;

#[derive(Clone, Copy)]
enum Kind {
    Run(Body),
    CoveredBy(&'static str),
}

#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    kind: Kind,
}

impl Check {
    pub fn covered_by(&self) -> Option<&'static str> {
        match self.kind {
            Kind::CoveredBy(op) => Some(op),
            Kind::Run(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail(Vec<String>),
    CoveredBy(&'static str),
}

impl Status {
    pub fn label(&self) -> String {
        match self {
            Status::Pass => "pass".into(),
            Status::Fail(_) => "FAIL".into(),
            Status::CoveredBy(op) => format!("covered-by: {op}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub id: &'static str,
    pub description: &'static str,
    pub status: Status,
    pub max_deviation: Option<f64>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct ExerciseReport {
    pub config: Config,
    pub entries: Vec<Entry>,
}

impl ExerciseReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| !matches!(e.status, Status::Fail(_)))
    }

    pub fn failed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, Status::Fail(_)))
            .count()
    }

    /// Aligned text table. Elapsed times are omitted unless requested, which
    /// keeps the default output identical across runs.
    pub fn to_table(&self, timings: bool) -> String {
        let status: Vec<String> = self.entries.iter().map(|e| e.status.label()).collect();
        let dev: Vec<String> = self.entries.iter().map(|e| fmt_dev(e.max_deviation)).collect();
        let w_id = self
            .entries
            .iter()
            .map(|e| e.id.len())
            .chain([2])
            .max()
            .unwrap_or(2);
        let w_st = status.iter().map(String::len).chain([6]).max().unwrap_or(6);
        let w_dev = dev.iter().map(String::len).chain([13]).max().unwrap_or(13);
        let mut out = String::new();
        let time_head = if timings {
            format!("{:>10}  ", "elapsed-ms")
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{:<w_id$}  {:<w_st$}  {:>w_dev$}  {time_head}description\n",
            "id", "status", "max-deviation"
        ));
        for ((e, st), d) in self.entries.iter().zip(&status).zip(&dev) {
            let t = if timings {
                format!("{:>10.3}  ", e.elapsed.as_secs_f64() * 1e3)
            } else {
                String::new()
            };
            out.push_str(&format!(
                "{:<w_id$}  {st:<w_st$}  {d:>w_dev$}  {t}{}\n",
                e.id, e.description
            ));
            if let Status::Fail(why) = &e.status {
                for w in why {
                    out.push_str(&format!("{:<w_id$}    {w}\n", ""));
                }
            }
        }
        let covered = self
            .entries
            .iter()
            .filter(|e| matches!(e.status, Status::CoveredBy(_)))
            .count();
        let failed = self.failed();
        out.push_str(&format!(
            "\n{} checks: {} passed, {} failed, {} covered (dim {}, seed {}, tol {:e})\n",
            self.entries.len(),
            self.entries.len() - failed - covered,
            failed,
            covered,
            self.config.dim,
            self.config.seed,
            self.config.tol
        ));
        out
    }

    pub fn to_json(&self, timings: bool) -> String {
        let checks: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({
                    "id": e.id,
                    "status": match e.status {
                        Status::Pass => "pass",
                        Status::Fail(_) => "fail",
                        Status::CoveredBy(_) => "covered",
                    },
                    "max_deviation": e.max_deviation,
                    "description": e.description,
                });
                match &e.status {
                    Status::CoveredBy(op) => v["covered_by"] = json!(op),
                    Status::Fail(why) => v["failures"] = json!(why),
                    Status::Pass => {}
                }
                if timings {
                    v["elapsed_ms"] = json!(e.elapsed.as_secs_f64() * 1e3);
                }
                v
            })
            .collect();
        let doc = json!({
            "dim": self.config.dim,
            "seed": self.config.seed,
            "tol": self.config.tol,
            "passed": self.all_passed(),
            "checks": checks,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("plain JSON values");
        s.push('\n');
        s
    }
}

fn fmt_dev(d: Option<f64>) -> String {
    match d {
        None => "-".into(),
        Some(v) => format!("{v:.3e}"),
    }
}

/// Runs every registered check whose id contains the filter.
pub fn run(config: &Config) -> ExerciseReport {
    let entries = registry()
        .into_iter()
        .filter(|c| config.filter.as_deref().is_none_or(|f| c.id.contains(f)))
        .map(|c| run_one(&c, config))
        .collect();
    ExerciseReport {
        config: config.clone(),
        entries,
    }
}

fn run_one(check: &Check, config: &Config) -> Entry {
    let start = Instant::now();
    let (status, max_deviation) = match check.kind {
        Kind::CoveredBy(op) => (Status::CoveredBy(op), None),
        Kind::Run(body) => {
            let mut ctx = Ctx {
                rng: rng_for(config.seed, check.id),
                dim: config.dim,
                tol: config.tol,
                deviation: 0.0,
                failures: Vec::new(),
            };
            if let Err(e) = body(&mut ctx) {
                ctx.failures.push(format!("error: {e}"));
            }
            let status = if ctx.failed() {
                Status::Fail(ctx.failures)
            } else {
                Status::Pass
            };
            (status, Some(ctx.deviation))
        }
    };
    Entry {
        id: check.id,
        description: check.description,
        status,
        max_deviation,
        elapsed: start.elapsed(),
    }
}

macro_rules! checks {
    ($( $id:literal, $desc:literal, $kind:expr; )*) => {
        vec![$( Check { id: $id, description: $desc, kind: $kind } ),*]
    };
}

/// All checks in report order.
pub fn registry() -> Vec<Check> {
    use Kind::{CoveredBy, Run};
    checks! {
        "ex01", "a_{rs} x^s = b_r equals its expanded row-by-row system", Run(ex01);
        "ex02", "a_{rst} x^r y^s z^t has d^3 terms", Run(ex02);
        "ex03", "x^r_s has d^2 components addressed by (r, s)", Run(ex03);
        "ex04", "absolutely symmetric x_{rst} has C(d+2, 3) distinct components", Run(ex04);
        "ex05", "absolutely antisymmetric x_{rst} has at most 6 nonzero components of equal size", Run(ex05);
        "ex06", "a_{rs} x^r x^s = 0 iff a_{rs} is antisymmetric", Run(ex06);
        "ex07", "delta^r_r = d", Run(ex07);
        "ex08", "delta^r_s x^s = x^r exactly", Run(ex08);
        "ex09", "antisymmetric x_{rst} = x_{123} e_{rst}", Run(ex09);
        "ex10", "e_{rst} = e^{rst} = (s-r)(t-r)(t-s)/2", Run(ex10);
        "ex11", "det delta^r_s = 1", Run(ex11);
        "ex12", "x^r_m x^m_s = delta^r_s implies det x = +-1", Run(ex12);
        "ex13", "det x = e^{rst} x^1_r x^2_s x^3_t; a row swap flips the sign", Run(ex13);
        "ex14", "e^{rst} x^m_r x^n_s x^p_t = e^{mnp} det x", Run(ex14);
        "ex15", "e_{mnp} e^{rst} equals the 3x3 determinant of deltas (729 tuples)", Run(ex15);
        "ex16", "e_{mnp} e^{rsp} = delta^r_m delta^s_n - delta^s_m delta^r_n (81 tuples)", Run(ex16);
        "ex17", "e_{mnp} e^{rnp} = 2 delta^r_m", Run(ex17);
        "ex18", "e_{mnp} e^{mnp} = 6; d! for d <= 6", Run(ex18);
        "ex19", "x_r = c^s_r xbar_s", Run(ex19);
        "ex20", "gamma and c are mutually inverse", Run(ex20);
        "ex21", "ebar_r = gamma^s_r e_s keeps x^r e_r invariant", Run(ex21);
        "ex22", "laws for x^{rs} and x^r_{st} match explicit sums", Run(ex22);
        "ex23", "x^r_{st} = y^r_s z_t holds in every frame", Run(ex23);
        "ex24", "symmetry and antisymmetry survive a change of frame", Run(ex24);
        "ex25", "delta^r_s is invariant", Run(ex25);
        "ex26", "delta_{rs} under diag(2,1,..) becomes diag(1/4,1,..)", Run(ex26);
        "ex27", "delta^{rs} is not a tensor", Run(ex27);
        "ex28", "product and contraction of tensors", CoveredBy("outer_product, contract");
        "ex29", "x^r_{st} y^p_r is a tensor of rank (2,1)", Run(ex29);
        "ex30", "(a^r_{st} + b^r_{st}) x^t = d^r_s is a tensor equation", Run(ex30);
        "ex31", "quotient rule with symmetric y: x(r,s,t) + x(r,t,s) is a tensor", Run(ex31);
        "ex32", "quotient rule with antisymmetric y: x(r,s,t) - x(r,t,s) is a tensor", Run(ex32);
        "ex33", "invariant quadratic form with symmetric a_{rs} makes a a tensor", Run(ex33);
        "ex34", "g_{rs} = delta_{rs} iff the basis is orthonormal", Run(ex34);
        "ex35", "g_{rs} g^{st} = delta^t_r", Run(ex35);
        "ex36", "g_{rs} x^r x^s = g^{rs} x_r x_s", Run(ex36);
        "ex37", "g^{rs} a_r b_s is a scalar product on covectors", Run(ex37);
        "ex38", "delta_{rs} and delta^{rs} are invariant under rotations", Run(ex38);
        "ex39", "raising and lowering keep components in orthonormal frames", Run(ex39);
        "ex40", "x^(-M) y is a true tensor for pseudoscalar x of weight 1", Run(ex40);
        "ex41", "sum of weight-M pseudotensors has weight M", Run(ex41);
        "ex42", "product of weights M and P has weight M + P", Run(ex42);
        "ex43", "contraction keeps the weight", Run(ex43);
        "ex44", "pseudotensor quotient rule: weight N - M", Run(ex44);
        "ex45", "e^{rst} has weight 1 and e_{rst} weight -1", Run(ex45);
        "ex46", "zero pseudotensors stay zero", Run(ex46);
        "ex47", "equal pseudotensors stay equal", Run(ex47);
        "ex48", "inverse-direction law with (det c)^M", Run(ex48);
        "ex49", "det of a rank (1,1) tensor is a true scalar", Run(ex49);
        "ex50", "det of a rank (2,0) tensor has weight 2", Run(ex50);
        "ex51", "det of a rank (0,2) tensor has weight -2", Run(ex51);
        "ex52", "sqrt(det x) e_{rst} and e^{rst}/sqrt(det x) are true tensors", Run(ex52);
        "ex53", "roots of det(x_{rs} - a y_{rs}) = 0 are invariant", Run(ex53);
        "ex54", "eps^{rst} = eps_{mnp} g^{rm} g^{sn} g^{tp}", Run(ex54);
        "ex55", "eps_{rst} = (e_r, e_s, e_t)", Run(ex55);
        "ex56", "x cross (y cross z) = y (x,z) - z (x,y)", Run(ex56);
        "ex57", "Lorentz transition matrices satisfy the componentwise conditions", Run(ex57);
        "ex58", "matrices meeting the conditions preserve the Minkowski product", Run(ex58);
        "ex59", "boost matrix reproduces the coordinate formulas", Run(ex59);
        "ex60", "rapidity: sinh/cosh identities, compact form, additivity", Run(ex60);
        "det-columns", "det x = e_{rst} x^r_1 x^s_2 x^t_3 against cofactor expansion", Run(det_columns);
        "det-relabel", "e_{rst} x^r_m x^s_n x^t_p = e_{mnp} det x", Run(det_relabel);
        "det-product", "det(xy) = det x det y", Run(det_product);
        "law-general", "transform matches a nested-loop law for every rank <= 3 pattern", Run(law_general);
        "basis-change", "e_r = c^s_r ebar_s", Run(basis_change);
        "trace", "trace of a^r_s is invariant", Run(trace);
        "quotient-rule", "x(r,s,t) y^{st} = z^r for arbitrary y makes x a tensor", Run(quotient_rule);
        "scalar-product", "g_{rs} x^r y^s equals the Euclidean dot of x^r e_r and y^s e_s", Run(scalar_product);
        "raise-lower", "raise after lower is the identity", Run(raise_lower);
        "cross-skew", "cross product in a skew frame matches the orthonormal formula", Run(cross_skew);
        "mink-product", "Minkowski product is symmetric, bilinear and indefinite", Run(mink_product_check);
        "einsum-rename", "renaming dummy indices gives bit-identical results", Run(einsum_rename);
        "einsum-order", "contraction ordering changes cost, not value", Run(einsum_order);
    }
}

// ---------------------------------------------------------------------------
// helpers

fn ev(text: &str, bind: &[(&str, &TensorObject)]) -> Result<TensorObject, Error> {
    let map: BTreeMap<String, TensorObject> =
        bind.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect();
    Ok(einsum::evaluate(text, &map, Mode::Strict)?)
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// The law applied by explicit summation over all source indices.
fn law_oracle(a: &TensorObject, f: &Frame) -> Result<TensorObject, Error> {
    let d = a.dim();
    let (c, g) = (f.c().components(), f.gamma().components());
    let slots = a.slots().to_vec();
    let factor = f.det_gamma().powi(a.weight());
    Ok(TensorObject::from_fn(d, slots.clone(), a.weight(), |idx| {
        let mut total = 0.0;
        for src in MultiIndexIter::new(d, slots.len()) {
            let mut p = a.get_0(&src);
            for (k, v) in slots.iter().enumerate() {
                let i = idx[k] - 1;
                p *= match v {
                    Up => c[i * d + src[k]],
                    Down => g[src[k] * d + i],
                };
            }
            total += p;
        }
        factor * total
    })?)
}

fn cofactor3(m: &[f64]) -> f64 {
    m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6])
}

fn mixed(rng: &mut ChaCha8Rng, d: usize) -> TensorObject {
    random_tensor(rng, d, &[Up, Down], 0)
}

/// Random absolutely antisymmetric rank-3 object at d = 3.
fn antisymmetric3(rng: &mut ChaCha8Rng) -> Result<TensorObject, Error> {
    let x = random_tensor(rng, 3, &[Down, Down, Down], 0);
    let perms = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([1, 0, 2], -1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
    ];
    Ok(TensorObject::from_fn(3, vec![Down; 3], 0, |i| {
        perms
            .iter()
            .map(|(p, sign)| sign * x.get_0(&[i[p[0]] - 1, i[p[1]] - 1, i[p[2]] - 1]))
            .sum::<f64>()
            / 6.0
    })?)
}

fn frame_diag2(d: usize) -> Result<Frame, Error> {
    let rows: Vec<Vec<f64>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|s| {
                    if r != s {
                        0.0
                    } else if r == 0 {
                        2.0
                    } else {
                        1.0
                    }
                })
                .collect()
        })
        .collect();
    Ok(Frame::from_rows(&rows)?)
}

fn law(old: &TensorObject, new: &TensorObject, f: &Frame, w: i32, tol: f64) -> Result<bool, Error> {
    Ok(verify_transform_law_with_tol(old, new, f, w, tol)?)
}

// ---------------------------------------------------------------------------
// index notation and symbols

fn ex01(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let a = random_tensor(&mut cx.rng, d, &[Down, Down], 0);
        let x = random_vector(&mut cx.rng, d, Up);
        let b = ev("b_r = a_{rs} x^s", &[("a", &a), ("x", &x)])?;
        for r in 0..d {
            let row: f64 = (0..d).map(|s| a.get_0(&[r, s]) * x.get_0(&[s])).sum();
            cx.close(b.get_0(&[r]), row, "row equation");
        }
    }
    Ok(())
}

fn ex02(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let a = random_tensor(&mut cx.rng, d, &[Down, Down, Down], 0);
    let x = random_vector(&mut cx.rng, d, Up);
    let y = random_vector(&mut cx.rng, d, Up);
    let z = random_vector(&mut cx.rng, d, Up);
    let sigs: BTreeMap<String, Signature> = [("a", &a), ("x", &x), ("y", &y), ("z", &z)]
        .iter()
        .map(|(k, v)| (k.to_string(), Signature::of(v)))
        .collect();
    let plan = validate(&parse("a_{rst} x^r y^s z^t")?, &sigs, Mode::Strict)?;
    cx.exact(plan.naive_cost() as f64, d.pow(3) as f64, "term count");
    let mut terms = 0usize;
    let mut total = 0.0;
    for i in MultiIndexIter::new(d, 3) {
        terms += 1;
        total += a.get_0(&i) * x.get_0(&[i[0]]) * y.get_0(&[i[1]]) * z.get_0(&[i[2]]);
    }
    cx.exact(terms as f64, d.pow(3) as f64, "enumerated terms");
    let got = einsum::execute(
        &plan,
        &BTreeMap::from([
            ("a".to_string(), a),
            ("x".to_string(), x),
            ("y".to_string(), y),
            ("z".to_string(), z),
        ]),
    )?;
    cx.close(got.components()[0], total, "value");
    Ok(())
}

fn ex03(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let x = mixed(&mut cx.rng, d);
    cx.expect(x.rank_pair() == (1, 1), "rank (1,1)");
    cx.exact(x.components().len() as f64, (d * d) as f64, "component count");
    let mut listed = 0;
    for r in 1..=d {
        for s in 1..=d {
            cx.exact(x.component(&[r, s])?, x.get_0(&[r - 1, s - 1]), "addressing");
            listed += 1;
        }
    }
    cx.exact(listed as f64, (d * d) as f64, "listed components");
    Ok(())
}

fn ex04(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let x = random_tensor(&mut cx.rng, d, &[Down, Down, Down], 0);
    let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let sym = TensorObject::from_fn(d, vec![Down; 3], 0, |i| {
        let mut s = [i[0] - 1, i[1] - 1, i[2] - 1];
        s.sort_unstable();
        perms
            .iter()
            .map(|p| x.get_0(&[s[p[0]], s[p[1]], s[p[2]]]))
            .sum::<f64>()
            / 6.0
    })?;
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        cx.expect(
            sym.symmetry_check(a, b)? == Symmetry::Symmetric,
            "absolutely symmetric",
        );
    }
    let mut values: Vec<u64> = sym.components().iter().map(|v| v.to_bits()).collect();
    values.sort_unstable();
    values.dedup();
    let want = (d + 2) * (d + 1) * d / 6;
    cx.exact(values.len() as f64, want as f64, "distinct components");
    Ok(())
}

fn ex05(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let x = antisymmetric3(&mut cx.rng)?;
        let nonzero: Vec<f64> = x.components().iter().copied().filter(|v| *v != 0.0).collect();
        cx.expect(nonzero.len() <= 6, "at most six nonzero");
        let size = x.component(&[1, 2, 3])?.abs();
        for v in nonzero {
            cx.close(v.abs(), size, "equal magnitude");
        }
    }
    Ok(())
}

fn ex06(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let general = random_tensor(&mut cx.rng, d, &[Down, Down], 0);
        let a = general.antisymmetrize(0, 1)?;
        let x = random_vector(&mut cx.rng, d, Up);
        let q = ev("a_{rs} x^r x^s", &[("a", &a), ("x", &x)])?;
        cx.close(q.components()[0], 0.0, "antisymmetric form vanishes");
        // converse: the form determines the symmetric part by polarization
        for (form, want_zero) in [(&a, true), (&general, false)] {
            let q = |v: &TensorObject| -> Result<f64, Error> {
                Ok(ev("a_{rs} x^r x^s", &[("a", form), ("x", v)])?.components()[0])
            };
            let unit = |k: usize| TensorObject::from_fn(d, vec![Up], 0, |i| delta(i[0] - 1, k));
            let sym = form.symmetrize(0, 1)?;
            for r in 0..d {
                for s in 0..d {
                    let (er, es) = (unit(r)?, unit(s)?);
                    let polar = (q(&er.add(&es)?)? - q(&er)? - q(&es)?) / 2.0;
                    cx.close(polar, sym.get_0(&[r, s]), "polarization");
                }
            }
            if want_zero {
                cx.close(sym.max_abs(), 0.0, "symmetric part of antisymmetric a");
            } else {
                cx.expect(sym.max_abs() > cx.tol, "general a has a symmetric part");
            }
        }
    }
    Ok(())
}

fn ex07(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::Mixed)?;
    cx.exact(ev("d^r_r", &[("d", &delta)])?.components()[0], d as f64, "trace");
    cx.exact(delta.contract(0, 1)?.components()[0], d as f64, "contract");
    Ok(())
}

fn ex08(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::Mixed)?;
    for _ in 0..TRIALS {
        let x = random_vector(&mut cx.rng, d, Up);
        let y = ev("y^r = d^r_s x^s", &[("d", &delta), ("x", &x)])?;
        cx.exact_t(&y, &x, "delta applied");
    }
    Ok(())
}

fn ex09(cx: &mut Ctx) -> Result<(), Error> {
    let e = levi_civita_symbol(3, EpsilonVariance::AllDown)?.with_weight(0);
    for _ in 0..TRIALS {
        let x = antisymmetric3(&mut cx.rng)?;
        let want = e.scale(x.component(&[1, 2, 3])?);
        cx.close_t(&x, &want, "x_{123} e_{rst}");
    }
    Ok(())
}

fn ex10(cx: &mut Ctx) -> Result<(), Error> {
    let lo = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    let up = levi_civita_symbol(3, EpsilonVariance::AllUp)?;
    for i in MultiIndexIter::new(3, 3) {
        let (r, s, t) = (i[0] as f64 + 1.0, i[1] as f64 + 1.0, i[2] as f64 + 1.0);
        let poly = (s - r) * (t - r) * (t - s) / 2.0;
        cx.exact(lo.get_0(&i), poly, "lower");
        cx.exact(up.get_0(&i), poly, "upper");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// determinants

fn ex11(cx: &mut Ctx) -> Result<(), Error> {
    for d in 1..=6 {
        cx.exact(determinant(&kronecker(d, DeltaKind::Mixed)?)?, 1.0, "det delta");
    }
    let e = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    let delta = kronecker(3, DeltaKind::Mixed)?;
    let v = ev("e_{rst} x^r_1 x^s_2 x^t_3", &[("e", &e), ("x", &delta)])?;
    cx.exact(v.components()[0], 1.0, "column contraction");
    Ok(())
}

fn ex12(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::Mixed)?;
    for trial in 0..TRIALS {
        let mut rows = random_rotation_rows(&mut cx.rng, d);
        if trial % 2 == 1 {
            for v in rows[0].iter_mut() {
                *v = -*v;
            }
        }
        let x = TensorObject::from_rows([Up, Down], &rows)?;
        let xtx = ev(
            "y^r_s = z^r_m x^m_s",
            &[("z", &x.transpose_orthogonal()?), ("x", &x)],
        )?;
        cx.close_t(&xtx, &delta, "orthogonality");
        let det = determinant(&x)?;
        cx.close(det.abs(), 1.0, "|det| = 1");
    }
    Ok(())
}

trait TransposeExt {
    fn transpose_orthogonal(&self) -> Result<TensorObject, Error>;
}

impl TransposeExt for TensorObject {
    /// Matrix transpose of a rank-(1,1) object, keeping `[Up, Down]`.
    fn transpose_orthogonal(&self) -> Result<TensorObject, Error> {
        let d = self.dim();
        Ok(TensorObject::from_fn(d, vec![Up, Down], self.weight(), |i| {
            self.get_0(&[i[1] - 1, i[0] - 1])
        })?)
    }
}

fn ex13(cx: &mut Ctx) -> Result<(), Error> {
    let e = levi_civita_symbol(3, EpsilonVariance::AllUp)?;
    for _ in 0..TRIALS {
        let x = mixed(&mut cx.rng, 3);
        let rows = ev("e^{rst} x^1_r x^2_s x^3_t", &[("e", &e), ("x", &x)])?;
        let det = determinant(&x)?;
        cx.close(rows.components()[0], det, "row contraction");
        let swapped = TensorObject::from_fn(3, vec![Up, Down], 0, |i| {
            let r = [1, 0, 2][i[0] - 1];
            x.get_0(&[r, i[1] - 1])
        })?;
        cx.exact(determinant(&swapped)?, -det, "row swap");
    }
    Ok(())
}

fn ex14(cx: &mut Ctx) -> Result<(), Error> {
    let e = levi_civita_symbol(3, EpsilonVariance::AllUp)?;
    for _ in 0..TRIALS {
        let x = mixed(&mut cx.rng, 3);
        let lhs = ev("y^{mnp} = e^{rst} x^m_r x^n_s x^p_t", &[("e", &e), ("x", &x)])?;
        let rhs = e.scale(determinant(&x)?);
        cx.close_t(&lhs, &rhs, "relabelled rows");
    }
    Ok(())
}

fn ex15(cx: &mut Ctx) -> Result<(), Error> {
    let lo = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    let up = levi_civita_symbol(3, EpsilonVariance::AllUp)?;
    for i in MultiIndexIter::new(3, 6) {
        let (m, n, p, r, s, t) = (i[0], i[1], i[2], i[3], i[4], i[5]);
        let rows = [
            [delta(m, r), delta(n, r), delta(p, r)],
            [delta(m, s), delta(n, s), delta(p, s)],
            [delta(m, t), delta(n, t), delta(p, t)],
        ];
        let flat: Vec<f64> = rows.concat();
        cx.exact(
            lo.get_0(&[m, n, p]) * up.get_0(&[r, s, t]),
            cofactor3(&flat),
            "delta determinant",
        );
    }
    Ok(())
}

fn ex16(cx: &mut Ctx) -> Result<(), Error> {
    let lo = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    let up = levi_civita_symbol(3, EpsilonVariance::AllUp)?;
    let got = ev("y^{rs}_{mn} = e_{mnp} f^{rsp}", &[("e", &lo), ("f", &up)])?;
    for i in MultiIndexIter::new(3, 4) {
        let (r, s, m, n) = (i[0], i[1], i[2], i[3]);
        let want = delta(r, m) * delta(s, n) - delta(s, m) * delta(r, n);
        cx.exact(got.get_0(&i), want, "double delta");
    }
    Ok(())
}

fn ex17(cx: &mut Ctx) -> Result<(), Error> {
    let lo = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    let up = levi_civita_symbol(3, EpsilonVariance::AllUp)?;
    let got = ev("y^r_m = f^{rnp} e_{mnp}", &[("e", &lo), ("f", &up)])?;
    let want = kronecker(3, DeltaKind::Mixed)?.scale(2.0);
    cx.exact_t(&got.with_weight(0), &want, "2 delta");
    Ok(())
}

fn ex18(cx: &mut Ctx) -> Result<(), Error> {
    let mut factorial = 1.0;
    for d in 1..=6usize {
        factorial *= d as f64;
        let lo = levi_civita_symbol(d, EpsilonVariance::AllDown)?;
        let up = levi_civita_symbol(d, EpsilonVariance::AllUp)?;
        let letters: String = "mnpqrs".chars().take(d).collect();
        let text = format!("e_{{{letters}}} f^{{{letters}}}");
        let got = ev(&text, &[("e", &lo), ("f", &up)])?;
        cx.exact(got.components()[0], factorial, "full contraction");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// frames

fn ex19(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let a = random_vector(&mut cx.rng, d, Down);
        let abar = transform(&a, &f)?;
        let back = ev("x_r = c^s_r y_s", &[("c", f.c()), ("y", &abar)])?;
        cx.close_t(&back, &a, "x_r = c^s_r xbar_s");
    }
    Ok(())
}

fn ex20(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::Mixed)?;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let gc = ev("y^t_r = g^t_s c^s_r", &[("g", f.gamma()), ("c", f.c())])?;
        let cg = ev("y^t_r = c^t_s g^s_r", &[("g", f.gamma()), ("c", f.c())])?;
        cx.close_t(&gc, &delta, "gamma c");
        cx.close_t(&cg, &delta, "c gamma");
    }
    Ok(())
}

fn units(d: usize) -> Result<Vec<TensorObject>, Error> {
    (0..d)
        .map(|k| Ok(TensorObject::from_fn(d, vec![Up], 0, |i| delta(i[0] - 1, k))?))
        .collect()
}

fn combine(coeffs: &[f64], vectors: &[TensorObject]) -> Vec<f64> {
    let d = vectors[0].dim();
    (0..d)
        .map(|k| coeffs.iter().zip(vectors).map(|(c, v)| c * v.get_0(&[k])).sum())
        .collect()
}

fn ex21(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let e = units(d)?;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let ebar = transform_basis(&f, &e)?;
        let x = random_vector(&mut cx.rng, d, Up);
        let xbar = transform(&x, &f)?;
        let geometric = combine(xbar.components(), &ebar);
        for k in 0..d {
            cx.close(geometric[k], x.get_0(&[k]), "x^r e_r = xbar^r ebar_r");
        }
    }
    Ok(())
}

fn ex22(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let x2 = random_tensor(&mut cx.rng, d, &[Up, Up], 0);
        let (c, g) = (f.c(), f.gamma());
        let want2 = TensorObject::from_fn(d, vec![Up, Up], 0, |i| {
            let (r, s) = (i[0] - 1, i[1] - 1);
            let mut t = 0.0;
            for m in 0..d {
                for n in 0..d {
                    t += c.get_0(&[r, m]) * c.get_0(&[s, n]) * x2.get_0(&[m, n]);
                }
            }
            t
        })?;
        cx.close_t(&transform(&x2, &f)?, &want2, "x^{rs}");
        let x3 = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let want3 = TensorObject::from_fn(d, vec![Up, Down, Down], 0, |i| {
            let (r, s, t) = (i[0] - 1, i[1] - 1, i[2] - 1);
            let mut total = 0.0;
            for m in 0..d {
                for n in 0..d {
                    for p in 0..d {
                        total +=
                            c.get_0(&[r, m]) * g.get_0(&[n, s]) * g.get_0(&[p, t]) * x3.get_0(&[m, n, p]);
                    }
                }
            }
            total
        })?;
        cx.close_t(&transform(&x3, &f)?, &want3, "x^r_{st}");
    }
    Ok(())
}

fn ex23(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let y = mixed(&mut cx.rng, d);
        let z = random_vector(&mut cx.rng, d, Down);
        let x = ev("x^r_{st} = y^r_s z_t", &[("y", &y), ("z", &z)])?;
        let (yb, zb) = (transform(&y, &f)?, transform(&z, &f)?);
        let xb = ev("x^r_{st} = y^r_s z_t", &[("y", &yb), ("z", &zb)])?;
        cx.close_t(&xb, &transform(&x, &f)?, "relation in new frame");
    }
    Ok(())
}

fn ex24(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        for slots in [[Down, Down], [Up, Up]] {
            let a = random_tensor(&mut cx.rng, d, &slots, 0);
            for (obj, kind) in [
                (a.symmetrize(0, 1)?, Symmetry::Symmetric),
                (a.antisymmetrize(0, 1)?, Symmetry::Antisymmetric),
            ] {
                let t = transform(&obj, &f)?;
                let tol = cx.tol * t.max_abs().max(1.0);
                cx.expect(
                    t.symmetry_check_with_tol(0, 1, tol)? == kind,
                    "symmetry class preserved",
                );
                let partner = t.swap_slots(0, 1)?;
                let want = if kind == Symmetry::Symmetric {
                    t.clone()
                } else {
                    t.scale(-1.0)
                };
                cx.close_t(&partner, &want, "swap");
            }
        }
    }
    Ok(())
}

fn ex25(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::Mixed)?;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        cx.close_t(&transform(&delta, &f)?, &delta, "delta^r_s");
        cx.expect(law(&delta, &delta, &f, 0, cx.tol)?, "law holds");
    }
    Ok(())
}

fn ex26(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::LowerLower)?;
    let f = frame_diag2(d)?;
    let got = transform(&delta, &f)?;
    let want = TensorObject::from_fn(d, vec![Down, Down], 0, |i| {
        if i[0] != i[1] {
            0.0
        } else if i[0] == 1 {
            0.25
        } else {
            1.0
        }
    })?;
    cx.close_t(&got, &want, "diag(1/4,1,..)");
    cx.expect(
        !law(&delta, &delta, &f, 0, cx.tol)?,
        "delta_{rs} is not invariant",
    );
    Ok(())
}

fn ex27(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::UpperUpper)?;
    let f = frame_diag2(d)?;
    let got = transform(&delta, &f)?;
    cx.close(got.get_0(&[0, 0]), 4.0, "first diagonal entry");
    cx.expect(
        !law(&delta, &delta, &f, 0, cx.tol)?,
        "delta^{rs} is not invariant",
    );
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        cx.expect(
            !law(&delta, &delta, &f, 0, cx.tol)?,
            "random frame moves delta^{rs}",
        );
    }
    Ok(())
}

fn ex29(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let y = mixed(&mut cx.rng, d);
        let text = "z^p_{st} = x^r_{st} y^p_r";
        let z = ev(text, &[("x", &x), ("y", &y)])?;
        cx.expect(z.rank_pair() == (2, 1), "rank (2,1)");
        let zb = ev(text, &[("x", &transform(&x, &f)?), ("y", &transform(&y, &f)?)])?;
        cx.close_t(&zb, &transform(&z, &f)?, "tensor law");
    }
    Ok(())
}

fn ex30(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let text = "d^r_s = a^r_{st} x^t + b^r_{st} x^t";
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let a = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let b = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let x = random_vector(&mut cx.rng, d, Up);
        let lhs = ev(text, &[("a", &a), ("b", &b), ("x", &x)])?;
        let (ab, bb, xb) = (transform(&a, &f)?, transform(&b, &f)?, transform(&x, &f)?);
        let lhs_bar = ev(text, &[("a", &ab), ("b", &bb), ("x", &xb)])?;
        cx.close_t(&lhs_bar, &transform(&lhs, &f)?, "equation holds in new frame");
    }
    Ok(())
}

/// A non-tensorial object `X + P`: `P` keeps the same components in every
/// frame. With `P` antisymmetric (symmetric) in its last two slots, only
/// the symmetric (antisymmetric) combination is a tensor.
fn quotient_probe(cx: &mut Ctx, symmetric_y: bool) -> Result<(), Error> {
    let d = cx.dim;
    let sign = if symmetric_y { 1.0 } else { -1.0 };
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let big_x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let raw = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let p = if symmetric_y {
            raw.antisymmetrize(1, 2)?
        } else {
            raw.symmetrize(1, 2)?
        };
        let x_old = big_x.add(&p)?;
        let x_new = transform(&big_x, &f)?.add(&p)?;
        let y_raw = random_tensor(&mut cx.rng, d, &[Up, Up], 0);
        let y = if symmetric_y {
            y_raw.symmetrize(0, 1)?
        } else {
            y_raw.antisymmetrize(0, 1)?
        };
        let text = "z^r = x^r_{st} y^{st}";
        let z_old = ev(text, &[("x", &x_old), ("y", &y)])?;
        let z_new = ev(text, &[("x", &x_new), ("y", &transform(&y, &f)?)])?;
        cx.close_t(&z_new, &transform(&z_old, &f)?, "z is a vector");
        let comb_old = x_old.add(&x_old.swap_slots(1, 2)?.scale(sign))?;
        let comb_new = x_new.add(&x_new.swap_slots(1, 2)?.scale(sign))?;
        cx.expect(
            law(&comb_old, &comb_new, &f, 0, cx.tol)?,
            "combination is a tensor",
        );
        cx.expect(!law(&x_old, &x_new, &f, 0, cx.tol)?, "x itself is not a tensor");
    }
    Ok(())
}

fn ex31(cx: &mut Ctx) -> Result<(), Error> {
    quotient_probe(cx, true)
}

fn ex32(cx: &mut Ctx) -> Result<(), Error> {
    quotient_probe(cx, false)
}

fn ex33(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let a = random_tensor(&mut cx.rng, d, &[Down, Down], 0).symmetrize(0, 1)?;
        // q is a scalar: its value at xbar is q(gamma xbar) in old coordinates
        let q_new = |xbar: &TensorObject| -> Result<f64, Error> {
            let x = ev("x^r = g^r_s y^s", &[("g", f.gamma()), ("y", xbar)])?;
            Ok(ev("a_{rs} x^r x^s", &[("a", &a), ("x", &x)])?.components()[0])
        };
        let e = units(d)?;
        let mut abar = vec![0.0; d * d];
        for r in 0..d {
            for s in 0..d {
                let both = e[r].add(&e[s])?;
                abar[r * d + s] = (q_new(&both)? - q_new(&e[r])? - q_new(&e[s])?) / 2.0;
            }
        }
        let abar = TensorObject::new(d, vec![Down, Down], 0, abar)?;
        cx.close_t(&abar, &transform(&a, &f)?, "recovered components follow the law");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// metric

fn ex34(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::LowerLower)?;
    for _ in 0..TRIALS {
        let rows = random_rotation_rows(&mut cx.rng, d);
        let basis: Vec<TensorObject> = rows
            .iter()
            .map(|r| TensorObject::vector(Up, r))
            .collect::<Result<_, _>>()?;
        cx.close_t(metric_from_basis(&basis)?.g(), &delta, "orthonormal basis");
        let skew = metric_from_basis(&random_basis(&mut cx.rng, d, false))?;
        cx.expect(
            skew.g().max_abs_diff(&delta) > cx.tol,
            "skew basis has a non-unit metric",
        );
    }
    Ok(())
}

fn ex35(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let delta = kronecker(d, DeltaKind::Mixed)?;
    for _ in 0..TRIALS {
        let m = random_metric(&mut cx.rng, d);
        let prod = ev("y^t_r = h^{ts} g_{sr}", &[("g", m.g()), ("h", m.g_inv())])?;
        cx.close_t(&prod, &delta, "g^{ts} g_{sr}");
        let prod = ev("y^t_r = g_{rs} h^{st}", &[("g", m.g()), ("h", m.g_inv())])?;
        cx.close_t(&prod, &delta, "g_{rs} g^{st}");
    }
    Ok(())
}

fn ex36(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let m = random_metric(&mut cx.rng, d);
        let x = random_vector(&mut cx.rng, d, Up);
        let xl = lower(&x, 0, &m)?;
        cx.close(
            inner(&x, &x, &m)?,
            inner_covariant(&xl, &xl, &m)?,
            "both forms agree",
        );
    }
    Ok(())
}

fn ex37(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let m = random_metric(&mut cx.rng, d);
        let a = random_vector(&mut cx.rng, d, Down);
        let b = random_vector(&mut cx.rng, d, Down);
        let c = random_vector(&mut cx.rng, d, Down);
        let (al, be) = (uniform(&mut cx.rng), uniform(&mut cx.rng));
        cx.close(
            inner_covariant(&a, &b, &m)?,
            inner_covariant(&b, &a, &m)?,
            "symmetric",
        );
        let mix = a.scale(al).add(&c.scale(be))?;
        let lin = al * inner_covariant(&a, &b, &m)? + be * inner_covariant(&c, &b, &m)?;
        cx.close(inner_covariant(&mix, &b, &m)?, lin, "linear");
        cx.expect(inner_covariant(&a, &a, &m)? > 0.0, "positive");
        let (x, y) = (raise(&a, 0, &m)?, raise(&b, 0, &m)?);
        cx.close(inner_covariant(&a, &b, &m)?, inner(&x, &y, &m)?, "isometry");
    }
    Ok(())
}

fn ex38(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let lo = kronecker(d, DeltaKind::LowerLower)?;
    let up = kronecker(d, DeltaKind::UpperUpper)?;
    for _ in 0..TRIALS {
        let f = random_rotation(&mut cx.rng, d);
        cx.close_t(&transform(&lo, &f)?, &lo, "delta_{rs}");
        cx.close_t(&transform(&up, &f)?, &up, "delta^{rs}");
    }
    Ok(())
}

fn ex39(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let flat = Metric::euclidean(d)?;
    for _ in 0..TRIALS {
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let raised = raise(&x, 1, &flat)?;
        cx.exact(
            raised.max_abs_diff(&x.clone().with_slots(vec![Up, Up, Down])?),
            0.0,
            "raise",
        );
        let lowered = lower(&x, 0, &flat)?;
        cx.exact(
            lowered.max_abs_diff(&x.clone().with_slots(vec![Down, Down, Down])?),
            0.0,
            "lower",
        );
        let f = random_rotation(&mut cx.rng, d);
        let rotated = flat.transformed(&f)?;
        let xb = transform(&x, &f)?;
        let raised = raise(&xb, 1, &rotated)?;
        cx.close_t(
            &raised,
            &xb.clone().with_slots(vec![Up, Up, Down])?,
            "rotated frame",
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pseudotensors

fn weight_in(rng: &mut ChaCha8Rng) -> i32 {
    rng.random_range(-2..=2)
}

fn ex40(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let m = weight_in(&mut cx.rng);
        let xv: f64 = cx.rng.random_range(0.5..1.5);
        let x = TensorObject::scalar(d, xv).with_weight(1);
        let y = random_tensor(&mut cx.rng, d, &[Up, Down, Down], m);
        let xb = transform(&x, &f)?.components()[0];
        let yb = transform(&y, &f)?;
        let old = y.scale(weight_factor(xv, -m)).with_weight(0);
        let new = yb.scale(weight_factor(xb, -m)).with_weight(0);
        cx.expect(law(&old, &new, &f, 0, cx.tol)?, "true tensor");
    }
    Ok(())
}

fn ex41(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let m = weight_in(&mut cx.rng);
        let a = random_tensor(&mut cx.rng, d, &[Up, Down], m);
        let b = random_tensor(&mut cx.rng, d, &[Up, Down], m);
        let sum = a.add(&b)?;
        cx.exact(sum.weight() as f64, m as f64, "weight");
        cx.close_t(
            &transform(&sum, &f)?,
            &transform(&a, &f)?.add(&transform(&b, &f)?)?,
            "sum law",
        );
    }
    Ok(())
}

fn ex42(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let (m, p) = (weight_in(&mut cx.rng), weight_in(&mut cx.rng));
        let a = random_tensor(&mut cx.rng, d, &[Up, Down], m);
        let b = random_tensor(&mut cx.rng, d, &[Down], p);
        let prod = a.outer_product(&b)?;
        cx.exact(prod.weight() as f64, (m + p) as f64, "weight");
        let want = transform(&a, &f)?.outer_product(&transform(&b, &f)?)?;
        cx.close_t(&transform(&prod, &f)?, &want, "product law");
    }
    Ok(())
}

fn ex43(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let m = weight_in(&mut cx.rng);
        let a = random_tensor(&mut cx.rng, d, &[Up, Down, Down], m);
        let c = a.contract(0, 1)?;
        cx.exact(c.weight() as f64, m as f64, "weight");
        cx.expect(c.rank_pair() == (1, 0), "rank (1,0)");
        cx.close_t(
            &transform(&c, &f)?,
            &transform(&a, &f)?.contract(0, 1)?,
            "contraction law",
        );
    }
    Ok(())
}

fn ex44(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let text = "z^r = x^r_{st} y^{st}";
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let (m, n) = (weight_in(&mut cx.rng), weight_in(&mut cx.rng));
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], n - m);
        let y = random_tensor(&mut cx.rng, d, &[Up, Up], m);
        let z = ev(text, &[("x", &x), ("y", &y)])?;
        cx.exact(z.weight() as f64, n as f64, "z has weight N");
        let xb = transform(&x, &f)?;
        let zb = ev(text, &[("x", &xb), ("y", &transform(&y, &f)?)])?;
        cx.close_t(&zb, &transform(&z, &f)?, "relation in new frame");
        cx.expect(law(&x, &xb, &f, n - m, cx.tol)?, "x has weight N - M");
        if (f.det_gamma().abs() - 1.0).abs() > 0.05 {
            cx.expect(!law(&x, &xb, &f, n - m + 1, cx.tol)?, "no other weight fits");
        }
    }
    Ok(())
}

fn ex45(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let up = levi_civita_symbol(d, EpsilonVariance::AllUp)?;
    let lo = levi_civita_symbol(d, EpsilonVariance::AllDown)?;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        cx.expect(law(&up, &up, &f, 1, cx.tol)?, "e^{rst} weight 1");
        cx.expect(law(&lo, &lo, &f, -1, cx.tol)?, "e_{rst} weight -1");
        cx.close_t(&transform(&up, &f)?, &up, "components unchanged");
    }
    Ok(())
}

fn ex46(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let w = weight_in(&mut cx.rng);
        for slots in slot_patterns(3) {
            let z = TensorObject::zeros(d, slots, w)?;
            cx.expect(transform(&z, &f)?.is_zero(), "zero stays zero");
        }
    }
    Ok(())
}

fn ex47(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let w = weight_in(&mut cx.rng);
        let a = random_tensor(&mut cx.rng, d, &[Up, Down, Down], w);
        let b = TensorObject::new(d, a.slots().to_vec(), w, a.components().to_vec())?;
        cx.exact_t(&transform(&b, &f)?, &transform(&a, &f)?, "equal images");
        cx.expect(transform(&a.sub(&b)?, &f)?.is_zero(), "difference stays zero");
    }
    Ok(())
}

fn ex48(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let w = weight_in(&mut cx.rng);
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], w);
        let xb = transform(&x, &f)?;
        // x^r_{st} = (det c)^M gamma^r_m c^n_s c^p_t xbar^m_{np}
        let det_c = determinant(f.c())?;
        let back = ev(
            "x^r_{st} = g^r_m c^n_s c^p_t y^m_{np}",
            &[("g", f.gamma()), ("c", f.c()), ("y", &xb.clone().with_weight(0))],
        )?
        .scale(weight_factor(det_c, w))
        .with_weight(w);
        cx.close_t(&back, &x, "explicit inverse law");
        cx.close_t(&transform(&xb, &f.inverse())?, &x, "inverse frame");
    }
    Ok(())
}

fn ex49(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let x = mixed(&mut cx.rng, d);
        cx.close(determinant(&transform(&x, &f)?)?, determinant(&x)?, "invariant");
    }
    Ok(())
}

/// Product of row norms: bounds `|det|` and sets the scale of its rounding error.
fn hadamard(x: &TensorObject) -> f64 {
    let d = x.dim();
    x.components()
        .chunks(d)
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product()
}

fn det_weight_check(cx: &mut Ctx, slots: [Variance; 2], weight: i32) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let x = random_tensor(&mut cx.rng, d, &slots, 0);
        let xb = transform(&x, &f)?;
        let factor = weight_factor(f.det_gamma(), weight);
        let scale = hadamard(&xb).max(factor.abs() * hadamard(&x)).max(1.0);
        let old = TensorObject::scalar(d, matrix_determinant(&x)?);
        let new = TensorObject::scalar(d, matrix_determinant(&xb)?);
        cx.expect(law(&old, &new, &f, weight, cx.tol * scale)?, "pseudoscalar law");
        let want = factor * old.components()[0];
        let dev = (new.components()[0] - want).abs() / scale;
        cx.record(dev, cx.tol, "factor (det gamma)^M");
    }
    Ok(())
}

fn ex50(cx: &mut Ctx) -> Result<(), Error> {
    det_weight_check(cx, [Down, Down], 2)
}

fn ex51(cx: &mut Ctx) -> Result<(), Error> {
    det_weight_check(cx, [Up, Up], -2)
}

fn ex52(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        // orientation-preserving frames; a reflection flips the sign of sqrt(g) e
        let f = random_oriented_frame(&mut cx.rng, 3);
        let m = random_metric(&mut cx.rng, 3);
        let mb = m.transformed(&f)?;
        for v in [EpsilonVariance::AllDown, EpsilonVariance::AllUp] {
            let old = levi_civita_tensor(&m, v)?;
            let new = levi_civita_tensor(&mb, v)?;
            cx.expect(law(&old, &new, &f, 0, cx.tol)?, "true tensor");
            cx.close_t(&new, &transform(&old, &f)?, "components");
        }
    }
    Ok(())
}

fn ex53(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let y = random_tensor(&mut cx.rng, d, &[Down, Down], 0).symmetrize(0, 1)?;
        let u = random_vector(&mut cx.rng, d, Down);
        let alpha = uniform(&mut cx.rng) * 3.0;
        // x - alpha y = u u is singular
        let x = y.scale(alpha).add(&u.outer_product(&u)?)?;
        let xb = transform(&x, &f)?;
        let yb = transform(&y, &f)?;
        let pencil = xb.sub(&yb.scale(alpha))?;
        let scale = pencil.max_abs().max(f64::MIN_POSITIVE).powi(d as i32);
        cx.close(matrix_determinant(&pencil)? / scale, 0.0, "root survives");
    }
    Ok(())
}

fn ex54(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let m = random_metric(&mut cx.rng, 3);
        let lo = levi_civita_tensor(&m, EpsilonVariance::AllDown)?;
        let up = levi_civita_tensor(&m, EpsilonVariance::AllUp)?;
        let raised = ev(
            "w^{rst} = e_{mnp} h^{rm} h^{sn} h^{tp}",
            &[("e", &lo), ("h", m.g_inv())],
        )?;
        cx.close_t(&raised, &up, "raised indices");
    }
    Ok(())
}

fn ex55(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let basis = random_basis(&mut cx.rng, 3, true);
        let m = metric_from_basis(&basis)?;
        let eps = levi_civita_tensor(&m, EpsilonVariance::AllDown)?;
        let e = units(3)?;
        for i in MultiIndexIter::new(3, 3) {
            let rows: Vec<f64> = i.iter().flat_map(|&k| basis[k].components().to_vec()).collect();
            cx.close(
                eps.get_0(&i),
                cofactor3(&rows),
                "Euclidean triple of basis vectors",
            );
            let own = triple(&e[i[0]], &e[i[1]], &e[i[2]], &m)?;
            cx.close(eps.get_0(&i), own, "triple in own coordinates");
        }
    }
    Ok(())
}

fn ex56(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let m = random_metric(&mut cx.rng, 3);
        let x = random_vector(&mut cx.rng, 3, Up);
        let y = random_vector(&mut cx.rng, 3, Up);
        let z = random_vector(&mut cx.rng, 3, Up);
        let lhs = cross(&x, &cross(&y, &z, &m)?, &m)?;
        let rhs = y.scale(inner(&x, &z, &m)?).sub(&z.scale(inner(&x, &y, &m)?))?;
        cx.close_t(&lhs, &rhs, "double cross");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Minkowski space

fn ex57(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let c = random_lorentz(&mut cx.rng) * random_lorentz(&mut cx.rng);
        cx.record(lorentz_condition_deviation(c.matrix()), cx.tol, "conditions");
        cx.expect(
            is_lorentz(c.matrix()) && preserves_metric(c.matrix()),
            "both predicates agree",
        );
    }
    Ok(())
}

fn four(rng: &mut ChaCha8Rng) -> FourVector {
    FourVector(std::array::from_fn(|_| uniform(rng)))
}

fn ex58(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let c = random_lorentz(&mut cx.rng);
        let (x, y) = (four(&mut cx.rng), four(&mut cx.rng));
        cx.close(
            mink_product(&c.apply(&x), &c.apply(&y)),
            mink_product(&x, &y),
            "product preserved",
        );
        let mut bent = *c.matrix();
        bent[2][3] += 0.5;
        cx.expect(!is_lorentz(&bent), "perturbed matrix fails the conditions");
        cx.expect(LorentzMatrix::new(bent).is_err(), "constructor rejects it");
    }
    Ok(())
}

fn ex59(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let beta: f64 = cx.rng.random_range(-0.99..0.99);
        let b = boost(beta)?;
        let x = four(&mut cx.rng);
        let root = (1.0 - beta * beta).sqrt();
        let want = [
            (x.0[0] - beta * x.0[1]) / root,
            (x.0[1] - beta * x.0[0]) / root,
            x.0[2],
            x.0[3],
        ];
        let got = b.apply(&x);
        for k in 0..4 {
            cx.close(got.0[k], want[k], "coordinate formulas");
        }
        cx.record(lorentz_condition_deviation(b.matrix()), cx.tol, "conditions");
    }
    let b = boost(0.6)?;
    cx.close(b.matrix()[0][0], 1.25, "gamma at 0.6");
    cx.close(b.matrix()[0][1], -0.75, "off-diagonal at 0.6");
    cx.expect(boost(1.5).is_err(), "superluminal rejected");
    Ok(())
}

fn ex60(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let beta: f64 = cx.rng.random_range(-0.99..0.99);
        let psi = rapidity(beta)?;
        let root = (1.0 - beta * beta).sqrt();
        cx.close(psi.psi.sinh(), beta / root, "sinh");
        cx.close(psi.psi.cosh(), 1.0 / root, "cosh");
        cx.record(
            boost_from_rapidity(-psi).max_abs_diff(&boost(beta)?),
            cx.tol,
            "compact form",
        );
        let other = Rapidity {
            psi: cx.rng.random_range(-2.0..2.0),
        };
        let lhs = boost_from_rapidity(psi) * boost_from_rapidity(other);
        cx.record(
            lhs.max_abs_diff(&boost_from_rapidity(psi + other)),
            cx.tol,
            "additivity",
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// general identities

fn det_columns(cx: &mut Ctx) -> Result<(), Error> {
    let e = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    for _ in 0..TRIALS {
        let x = mixed(&mut cx.rng, 3);
        let v = ev("e_{rst} x^r_1 x^s_2 x^t_3", &[("e", &e), ("x", &x)])?;
        cx.close(v.components()[0], cofactor3(x.components()), "cofactor");
        cx.close(determinant(&x)?, cofactor3(x.components()), "determinant()");
    }
    Ok(())
}

fn det_relabel(cx: &mut Ctx) -> Result<(), Error> {
    let e = levi_civita_symbol(3, EpsilonVariance::AllDown)?;
    for _ in 0..TRIALS {
        let x = mixed(&mut cx.rng, 3);
        let lhs = ev("y_{mnp} = e_{rst} x^r_m x^s_n x^t_p", &[("e", &e), ("x", &x)])?;
        cx.close_t(&lhs, &e.scale(determinant(&x)?), "relabelled columns");
    }
    Ok(())
}

fn det_product(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let x = mixed(&mut cx.rng, d);
        let y = mixed(&mut cx.rng, d);
        let xy = ev("z^r_t = x^r_s y^s_t", &[("x", &x), ("y", &y)])?;
        cx.close(
            determinant(&xy)?,
            determinant(&x)? * determinant(&y)?,
            "product theorem",
        );
    }
    Ok(())
}

fn law_general(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS / 4 {
        let f = random_frame(&mut cx.rng, d);
        for rank in 0..=3 {
            for slots in slot_patterns(rank) {
                let w = weight_in(&mut cx.rng);
                let a = random_tensor(&mut cx.rng, d, &slots, w);
                cx.close_t(&transform(&a, &f)?, &law_oracle(&a, &f)?, "nested-loop law");
            }
        }
    }
    Ok(())
}

fn basis_change(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    let e = units(d)?;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let ebar = transform_basis(&f, &e)?;
        for r in 0..d {
            let coeffs: Vec<f64> = (0..d).map(|s| f.c().get_0(&[s, r])).collect();
            let back = combine(&coeffs, &ebar);
            for k in 0..d {
                cx.close(back[k], delta(r, k), "e_r = c^s_r ebar_s");
            }
        }
        let round = transform_basis(&f.inverse(), &ebar)?;
        for (a, b) in round.iter().zip(&e) {
            cx.close_t(a, b, "round trip");
        }
    }
    Ok(())
}

fn trace(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let f = random_frame(&mut cx.rng, d);
        let a = mixed(&mut cx.rng, d);
        let t = a.contract(0, 1)?.components()[0];
        let tb = transform(&a, &f)?.contract(0, 1)?.components()[0];
        cx.close(tb, t, "trace");
        let x = random_vector(&mut cx.rng, d, Up);
        let w = random_vector(&mut cx.rng, d, Down);
        let s = ev("w_r x^r", &[("w", &w), ("x", &x)])?.components()[0];
        let sb = ev(
            "w_r x^r",
            &[("w", &transform(&w, &f)?), ("x", &transform(&x, &f)?)],
        )?
        .components()[0];
        cx.close(sb, s, "a_r x^r");
    }
    Ok(())
}

fn quotient_rule(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS / 4 {
        let f = random_frame(&mut cx.rng, d);
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let text = "z^r = x^r_{st} y^{st}";
        // choose ybar = unit (s,t) in the new frame, pull back, apply x, push z forward
        let mut xbar = vec![0.0; d * d * d];
        let inv = f.inverse();
        for s in 0..d {
            for t in 0..d {
                let ybar =
                    TensorObject::from_fn(d, vec![Up, Up], 0, |i| delta(i[0] - 1, s) * delta(i[1] - 1, t))?;
                let y = transform(&ybar, &inv)?;
                let zbar = transform(&ev(text, &[("x", &x), ("y", &y)])?, &f)?;
                for r in 0..d {
                    xbar[(r * d + s) * d + t] = zbar.get_0(&[r]);
                }
            }
        }
        let xbar = TensorObject::new(d, vec![Up, Down, Down], 0, xbar)?;
        cx.close_t(&xbar, &transform(&x, &f)?, "recovered components follow the law");
    }
    Ok(())
}

fn scalar_product(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let basis = random_basis(&mut cx.rng, d, false);
        let m = metric_from_basis(&basis)?;
        let x = random_vector(&mut cx.rng, d, Up);
        let y = random_vector(&mut cx.rng, d, Up);
        let gx = combine(x.components(), &basis);
        let gy = combine(y.components(), &basis);
        let dot: f64 = gx.iter().zip(&gy).map(|(a, b)| a * b).sum();
        cx.close(inner(&x, &y, &m)?, dot, "geometric dot");
    }
    Ok(())
}

fn raise_lower(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let m = random_metric(&mut cx.rng, d);
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Up], 0);
        let there = lower(&x, 2, &m)?;
        cx.expect(there.slots() == [Up, Down, Down], "slot lowered");
        cx.close_t(&raise(&there, 2, &m)?, &x, "raise after lower");
        let a = random_vector(&mut cx.rng, d, Down);
        cx.close_t(&lower(&raise(&a, 0, &m)?, 0, &m)?, &a, "lower after raise");
    }
    Ok(())
}

fn cross_skew(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let basis = random_basis(&mut cx.rng, 3, true);
        let m = metric_from_basis(&basis)?;
        let x = random_vector(&mut cx.rng, 3, Up);
        let y = random_vector(&mut cx.rng, 3, Up);
        let gx = combine(x.components(), &basis);
        let gy = combine(y.components(), &basis);
        let gz = [
            gx[1] * gy[2] - gx[2] * gy[1],
            gx[2] * gy[0] - gx[0] * gy[2],
            gx[0] * gy[1] - gx[1] * gy[0],
        ];
        // back to skew coordinates: solve sum_r z^r e_r = gz
        let bt: Vec<f64> = (0..9).map(|k| basis[k % 3].get_0(&[k / 3])).collect();
        let inv = invert_rows(3, &bt)?;
        let z: Vec<f64> = (0..3)
            .map(|r| (0..3).map(|k| inv[r * 3 + k] * gz[k]).sum())
            .collect();
        cx.close_t(
            &cross(&x, &y, &m)?,
            &TensorObject::vector(Up, &z)?,
            "conjugated cross",
        );
    }
    Ok(())
}

fn mink_product_check(cx: &mut Ctx) -> Result<(), Error> {
    for _ in 0..TRIALS {
        let (x, y, z) = (four(&mut cx.rng), four(&mut cx.rng), four(&mut cx.rng));
        let a = uniform(&mut cx.rng);
        cx.close(mink_product(&x, &y), mink_product(&y, &x), "symmetric");
        let ax_z = FourVector(std::array::from_fn(|k| a * x.0[k] + z.0[k]));
        cx.close(
            mink_product(&ax_z, &y),
            a * mink_product(&x, &y) + mink_product(&z, &y),
            "linear",
        );
    }
    let light = FourVector([1.0, 1.0, 0.0, 0.0]);
    cx.exact(mink_product(&light, &light), 0.0, "null vector");
    cx.exact(
        mink_product(&FourVector::basis(2), &FourVector::basis(2)),
        -1.0,
        "spacelike",
    );
    Ok(())
}

fn einsum_rename(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let x = random_tensor(&mut cx.rng, d, &[Up, Down, Down], 0);
        let y = random_tensor(&mut cx.rng, d, &[Up, Down], 0);
        let a = ev("z^r_{st} = x^r_{sm} y^m_t", &[("x", &x), ("y", &y)])?;
        let b = ev("z^r_{st} = x^r_{sq} y^q_t", &[("x", &x), ("y", &y)])?;
        cx.exact_t(&a, &b, "renamed dummy");
    }
    Ok(())
}

fn einsum_order(cx: &mut Ctx) -> Result<(), Error> {
    let d = cx.dim;
    for _ in 0..TRIALS {
        let bind: BTreeMap<String, TensorObject> = [
            ("a", random_tensor(&mut cx.rng, d, &[Up, Down], 0)),
            ("b", random_tensor(&mut cx.rng, d, &[Up, Down], 0)),
            ("c", random_tensor(&mut cx.rng, d, &[Up, Down], 0)),
            ("v", random_vector(&mut cx.rng, d, Up)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let sigs = bind.iter().map(|(k, v)| (k.clone(), Signature::of(v))).collect();
        let plan = validate(&parse("y^r = a^r_s b^s_t c^t_u v^u")?, &sigs, Mode::Strict)?;
        let ordered = order_contractions(&plan);
        cx.expect(ordered.cost() <= plan.cost(), "cost does not grow");
        let (p, q) = (einsum::execute(&plan, &bind)?, einsum::execute(&ordered, &bind)?);
        cx.close_t(&q, &p, "same value");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_cover_all_exercises() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
        for n in 1..=60 {
            let id = format!("ex{n:02}");
            assert!(reg.iter().any(|c| c.id == id), "{id} missing");
        }
    }

    #[test]
    fn default_run_passes() {
        let report = run(&Config::default());
        let text = report.to_table(false);
        assert!(report.all_passed(), "{text}");
    }

    #[test]
    fn filter_selects_subset() {
        let report = run(&Config {
            filter: Some("ex1".into()),
            ..Config::default()
        });
        assert_eq!(report.entries.len(), 10);
        assert!(report.entries.iter().all(|e| e.id.starts_with("ex1")));
    }

    #[test]
    fn covered_entries_are_marked() {
        let report = run(&Config {
            filter: Some("ex28".into()),
            ..Config::default()
        });
        assert_eq!(
            report.entries[0].status.label(),
            "covered-by: outer_product, contract"
        );
        assert!(report.all_passed());
    }

    #[test]
    fn deterministic_output() {
        let cfg = Config {
            seed: 7,
            ..Config::default()
        };
        assert_eq!(run(&cfg).to_table(false), run(&cfg).to_table(false));
        assert_eq!(run(&cfg).to_json(false), run(&cfg).to_json(false));
    }
}
