//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use tensorcalc::random::random_tensor;
use tensorcalc::tensor::MultiIndexIter;
use tensorcalc::{TensorObject, Variance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Label {
    Letter(char),
    Fixed(usize),
}

#[derive(Debug, Clone)]
pub struct Factor {
    pub name: String,
    pub indices: Vec<(Label, Variance)>,
}

#[derive(Debug, Clone)]
pub struct Term {
    pub coefficient: f64,
    pub factors: Vec<Factor>,
    pub dummies: Vec<char>,
}

/// A valid strict-mode expression together with its bindings.
#[derive(Debug, Clone)]
pub struct RandomExpr {
    pub dim: usize,
    pub target: Vec<(char, Variance)>,
    pub terms: Vec<Term>,
    pub bindings: BTreeMap<String, TensorObject>,
}

const FREE: [char; 3] = ['r', 's', 't'];
const DUMMY: [char; 3] = ['m', 'n', 'p'];
const COEFFS: [f64; 4] = [1.0, -1.0, 2.5, -0.5];

fn variance(rng: &mut impl Rng) -> Variance {
    if rng.random_bool(0.5) {
        Variance::Up
    } else {
        Variance::Down
    }
}

/// Expressions with `d <= 4`, factor rank `<= 4`, at most 4 factors per
/// term and at most 3 terms.
pub fn random_expr(rng: &mut impl Rng) -> RandomExpr {
    let dim = rng.random_range(1..=4);
    let nfree = rng.random_range(0..=2);
    let free: Vec<(char, Variance)> = FREE[..nfree].iter().map(|&c| (c, variance(rng))).collect();
    let mut target = free.clone();
    target.shuffle(rng);
    let mut terms = Vec::new();
    let mut bindings = BTreeMap::new();
    for term_no in 0..rng.random_range(1..=3) {
        let mut ndummy = rng.random_range(0..=2);
        let fixed = rng.random_bool(0.3);
        if nfree == 0 && ndummy == 0 && !fixed {
            ndummy = 1;
        }
        let dummies: Vec<char> = DUMMY[..ndummy].to_vec();
        let mut occ: Vec<(Label, Variance)> = free.iter().map(|&(c, v)| (Label::Letter(c), v)).collect();
        for &c in &dummies {
            occ.push((Label::Letter(c), Variance::Up));
            occ.push((Label::Letter(c), Variance::Down));
        }
        if fixed {
            occ.push((Label::Fixed(rng.random_range(1..=dim)), variance(rng)));
        }
        occ.shuffle(rng);
        let min_factors = occ.len().div_ceil(4).max(1);
        let nfactors = rng.random_range(min_factors..=occ.len().min(4));
        let mut groups: Vec<Vec<(Label, Variance)>> = vec![Vec::new(); nfactors];
        for (k, o) in occ.iter().enumerate() {
            if k < nfactors {
                groups[k].push(*o);
            } else {
                let open: Vec<usize> = (0..nfactors).filter(|&g| groups[g].len() < 4).collect();
                groups[open[rng.random_range(0..open.len())]].push(*o);
            }
        }
        let factors: Vec<Factor> = groups
            .into_iter()
            .enumerate()
            .map(|(k, indices)| {
                let name = format!("f{term_no}{k}");
                let slots: Vec<Variance> = indices.iter().map(|i| i.1).collect();
                bindings.insert(name.clone(), random_tensor(rng, dim, &slots, 0));
                Factor { name, indices }
            })
            .collect();
        terms.push(Term {
            coefficient: COEFFS[rng.random_range(0..COEFFS.len())],
            factors,
            dummies,
        });
    }
    RandomExpr {
        dim,
        target,
        terms,
        bindings,
    }
}

fn render_indices(indices: &[(Label, Variance)], rename: &impl Fn(char) -> char) -> String {
    let mut s = String::new();
    for (label, v) in indices {
        s.push(match v {
            Variance::Up => '^',
            Variance::Down => '_',
        });
        match label {
            Label::Letter(c) => s.push(rename(*c)),
            Label::Fixed(k) => s.push_str(&k.to_string()),
        }
    }
    s
}

impl RandomExpr {
    pub fn text(&self) -> String {
        self.text_renamed(|c| c)
    }

    /// Renders the expression with dummy letters passed through `rename`.
    pub fn text_renamed(&self, rename: impl Fn(char) -> char) -> String {
        let keep = |c: char| c;
        let target: Vec<(Label, Variance)> =
            self.target.iter().map(|&(c, v)| (Label::Letter(c), v)).collect();
        let mut s = format!("z{} =", render_indices(&target, &keep));
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if t.coefficient < 0.0 { "-" } else { "+" };
            if k > 0 || t.coefficient < 0.0 {
                s.push(' ');
                s.push_str(sign);
            }
            s.push(' ');
            let mag = t.coefficient.abs();
            if mag != 1.0 {
                s.push_str(&format!("{mag}*"));
            }
            let parts: Vec<String> = t
                .factors
                .iter()
                .map(|f| {
                    let letters = |c: char| if t.dummies.contains(&c) { rename(c) } else { c };
                    format!("{}{}", f.name, render_indices(&f.indices, &letters))
                })
                .collect();
            s.push_str(&parts.join(" "));
        }
        s
    }

    /// Straightforward nested-loop evaluation.
    pub fn oracle(&self) -> TensorObject {
        let d = self.dim;
        let slots: Vec<Variance> = self.target.iter().map(|t| t.1).collect();
        TensorObject::from_fn(d, slots, 0, |out| {
            let mut total = 0.0;
            for t in &self.terms {
                let mut term_sum = 0.0;
                for dummy_vals in MultiIndexIter::new(d, t.dummies.len()) {
                    let value_of = |label: &Label| -> usize {
                        match label {
                            Label::Fixed(k) => k - 1,
                            Label::Letter(c) => {
                                if let Some(p) = self.target.iter().position(|x| x.0 == *c) {
                                    out[p] - 1
                                } else {
                                    let p = t.dummies.iter().position(|x| x == c).expect("dummy");
                                    dummy_vals[p]
                                }
                            }
                        }
                    };
                    let mut product = 1.0;
                    for f in &t.factors {
                        let idx: Vec<usize> = f.indices.iter().map(|(l, _)| value_of(l)).collect();
                        product *= self.bindings[&f.name].get_0(&idx);
                    }
                    term_sum += product;
                }
                total += t.coefficient * term_sum;
            }
            total
        })
        .expect("small result")
    }
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    if n == 1 {
        return rows[0][0];
    }
    let mut total = 0.0;
    for col in 0..n {
        let minor: Vec<Vec<f64>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * rows[0][col] * cofactor_det(&minor);
    }
    total
}

/// `|a - b| / max(1, |b|)` over all components.
pub fn rel_dev(a: &TensorObject, b: &TensorObject) -> f64 {
    assert_eq!(a.slots(), b.slots(), "slot layouts differ");
    a.components()
        .iter()
        .zip(b.components())
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
