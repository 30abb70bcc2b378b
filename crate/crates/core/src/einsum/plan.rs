use std::collections::BTreeMap;

use super::{EinsumError, FactorRef, IndexLabel, Statement};
use crate::tensor::{slots_to_string, TensorObject, Variance};

/// Index bookkeeping rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Every dummy pairs one upper with one lower index; written variances
    /// must match bindings, other terms and the target.
    #[default]
    Strict,
    /// Upper and lower positions are identified, as for tensors restricted
    /// to orthonormal frames. Binding variances are coerced to the written
    /// ones.
    Orthogonal,
}

/// Dimension, slot layout and weight of a bound tensor or a result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub dim: usize,
    pub slots: Vec<Variance>,
    pub weight: i32,
}

impl Signature {
    pub fn of(t: &TensorObject) -> Self {
        Signature {
            dim: t.dim(),
            slots: t.slots().to_vec(),
            weight: t.weight(),
        }
    }
}

/// One pairwise contraction in SSA numbering: operands `0..n` are the
/// prepared factors of the term, step `k` produces operand `n + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub left: usize,
    pub right: usize,
    /// Labels of the produced intermediate, in storage order.
    pub output: Vec<char>,
    /// Labels summed away by this step.
    pub summed: Vec<char>,
    /// Multiply-adds: `dim^(|output| + |summed|)`.
    pub cost: u64,
}

/// A factor after fixed-index slicing and in-factor traces.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Operand {
    pub name: String,
    pub slot_labels: Vec<IndexLabel>,
    /// Letters that survive, in slot order.
    pub labels: Vec<char>,
    /// Letters repeated inside this factor and summed on preparation.
    pub traced: Vec<char>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermPlan {
    pub coefficient: f64,
    /// Summed letters, in order of first appearance.
    pub dummies: Vec<char>,
    /// Free letters, in order of first appearance.
    pub free: Vec<char>,
    pub weight: i32,
    pub(crate) operands: Vec<Operand>,
    pub steps: Vec<ContractionStep>,
}

impl TermPlan {
    /// Total multiply-adds of the pairwise schedule.
    pub fn cost(&self) -> u64 {
        self.steps.iter().fold(0u64, |acc, s| acc.saturating_add(s.cost))
    }

    pub fn factor_count(&self) -> usize {
        self.operands.len()
    }

    /// Labels of the operand left after all steps.
    pub(crate) fn final_labels(&self) -> &[char] {
        match self.steps.last() {
            Some(step) => &step.output,
            None => &self.operands[0].labels,
        }
    }
}

/// A validated statement with its result signature and contraction schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionPlan {
    pub(crate) statement: Statement,
    pub(crate) mode: Mode,
    pub(crate) signatures: BTreeMap<String, Signature>,
    pub(crate) result: Signature,
    pub(crate) layout: Vec<char>,
    pub(crate) terms: Vec<TermPlan>,
}

impl ContractionPlan {
    pub fn statement(&self) -> &Statement {
        &self.statement
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn result_signature(&self) -> &Signature {
        &self.result
    }

    pub fn result_name(&self) -> Option<&str> {
        self.statement.target.as_ref().map(|t| t.name.as_str())
    }

    /// Free letters in result slot order.
    pub fn result_layout(&self) -> &[char] {
        &self.layout
    }

    pub fn terms(&self) -> &[TermPlan] {
        &self.terms
    }

    /// Signatures of every referenced binding.
    pub fn signatures(&self) -> &BTreeMap<String, Signature> {
        &self.signatures
    }

    /// Estimated multiply-adds of the pairwise schedules of all terms.
    pub fn cost(&self) -> u64 {
        self.terms
            .iter()
            .fold(0u64, |acc, t| acc.saturating_add(t.cost()))
    }

    /// Multiply-adds of a single nested loop over every letter of each term.
    pub fn naive_cost(&self) -> u64 {
        self.terms.iter().fold(0u64, |acc, t| {
            let letters = (t.dummies.len() + t.free.len()) as u32;
            acc.saturating_add(pow_sat(self.result.dim, letters))
        })
    }
}

fn pow_sat(dim: usize, exp: u32) -> u64 {
    (dim as u64).checked_pow(exp).unwrap_or(u64::MAX)
}

struct Occurrence {
    factor: usize,
    variance: Variance,
}

fn letter_string(letters: &[char]) -> String {
    letters.iter().collect()
}

/// Checks index conventions and binding signatures, producing a plan with a
/// left-to-right pairwise schedule.
pub fn validate(
    statement: &Statement,
    signatures: &BTreeMap<String, Signature>,
    mode: Mode,
) -> Result<ContractionPlan, EinsumError> {
    let mut used = BTreeMap::new();
    let mut dim: Option<usize> = None;
    let mut terms = Vec::with_capacity(statement.terms.len());
    let mut free_variances: Vec<(char, Variance)> = Vec::new();

    for (term_no, term) in statement.terms.iter().enumerate() {
        let mut occurrences: Vec<(char, Vec<Occurrence>)> = Vec::new();
        let mut weight = 0;
        for (fi, factor) in term.factors.iter().enumerate() {
            let sig = signatures
                .get(&factor.name)
                .ok_or_else(|| EinsumError::Unbound(factor.name.clone()))?;
            check_factor(factor, sig, mode)?;
            match dim {
                None => dim = Some(sig.dim),
                Some(d) if d != sig.dim => {
                    return Err(EinsumError::Binding {
                        name: factor.name.clone(),
                        detail: format!("dimension {} differs from {d}", sig.dim),
                    })
                }
                _ => {}
            }
            used.insert(factor.name.clone(), sig.clone());
            weight += sig.weight;
            for ix in &factor.indices {
                if let IndexLabel::Letter(c) = ix.label {
                    let occ = Occurrence {
                        factor: fi,
                        variance: ix.variance,
                    };
                    match occurrences.iter_mut().find(|(l, _)| *l == c) {
                        Some((_, v)) => v.push(occ),
                        None => occurrences.push((c, vec![occ])),
                    }
                }
            }
        }

        let mut dummies = Vec::new();
        let mut free = Vec::new();
        for (letter, occ) in &occurrences {
            match occ.len() {
                1 => free.push((*letter, occ[0].variance)),
                2 => {
                    if mode == Mode::Strict && occ[0].variance == occ[1].variance {
                        return Err(EinsumError::VarianceClash {
                            letter: *letter,
                            term: term_no,
                            detail: format!(
                                "summed index is {} twice; one must be upper, one lower",
                                occ[0].variance
                            ),
                        });
                    }
                    dummies.push(*letter);
                }
                n => {
                    return Err(EinsumError::TripleIndex {
                        letter: *letter,
                        count: n,
                        term: term_no,
                    })
                }
            }
        }

        if term_no == 0 {
            free_variances = free.clone();
        } else {
            let mut a: Vec<char> = free_variances.iter().map(|f| f.0).collect();
            let mut b: Vec<char> = free.iter().map(|f| f.0).collect();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(EinsumError::FreeIndexMismatch {
                    term: term_no,
                    first: letter_string(&a),
                    other: letter_string(&b),
                });
            }
            if mode == Mode::Strict {
                for (letter, variance) in &free {
                    let first = free_variances.iter().find(|f| f.0 == *letter).map(|f| f.1);
                    if first != Some(*variance) {
                        return Err(EinsumError::VarianceClash {
                            letter: *letter,
                            term: term_no,
                            detail: format!("free index is {variance} here but not in term 0"),
                        });
                    }
                }
            }
            let first_weight = terms.first().map(|t: &TermPlan| t.weight).unwrap_or(0);
            if weight != first_weight {
                return Err(EinsumError::WeightMismatch {
                    term: term_no,
                    first: first_weight,
                    other: weight,
                });
            }
        }

        let operands: Vec<Operand> = term
            .factors
            .iter()
            .enumerate()
            .map(|(fi, f)| prepare_operand(fi, f, &occurrences))
            .collect();
        let d = dim.unwrap_or(1);
        let labels: Vec<Vec<char>> = operands.iter().map(|o| o.labels.clone()).collect();
        let steps = sequential_schedule(&labels, d);
        terms.push(TermPlan {
            coefficient: term.coefficient,
            dummies,
            free: free.iter().map(|f| f.0).collect(),
            weight,
            operands,
            steps,
        });
    }

    let dim = dim.ok_or_else(|| EinsumError::Syntax {
        position: 0,
        message: "expression has no factors".into(),
    })?;
    let (layout, slots) = target_layout(statement, &free_variances, mode)?;
    let weight = terms[0].weight;
    Ok(ContractionPlan {
        statement: statement.clone(),
        mode,
        signatures: used,
        result: Signature { dim, slots, weight },
        layout,
        terms,
    })
}

fn check_factor(factor: &FactorRef, sig: &Signature, mode: Mode) -> Result<(), EinsumError> {
    if factor.indices.len() != sig.slots.len() {
        return Err(EinsumError::Binding {
            name: factor.name.clone(),
            detail: format!(
                "written with {} indices but bound object has rank {}",
                factor.indices.len(),
                sig.slots.len()
            ),
        });
    }
    for (k, ix) in factor.indices.iter().enumerate() {
        if let IndexLabel::Fixed(v) = ix.label {
            if v > sig.dim {
                return Err(EinsumError::Binding {
                    name: factor.name.clone(),
                    detail: format!("fixed index {v} exceeds dimension {}", sig.dim),
                });
            }
        }
        if mode == Mode::Strict && ix.variance != sig.slots[k] {
            return Err(EinsumError::Binding {
                name: factor.name.clone(),
                detail: format!(
                    "written as {factor} but bound slots are {}",
                    slots_to_string(&sig.slots)
                ),
            });
        }
    }
    Ok(())
}

fn prepare_operand(fi: usize, factor: &FactorRef, occurrences: &[(char, Vec<Occurrence>)]) -> Operand {
    let mut labels = Vec::new();
    let mut traced = Vec::new();
    for ix in &factor.indices {
        if let IndexLabel::Letter(c) = ix.label {
            let inside = occurrences
                .iter()
                .find(|(l, _)| *l == c)
                .map(|(_, occ)| occ.iter().filter(|o| o.factor == fi).count())
                .unwrap_or(0);
            if inside == 2 {
                if !traced.contains(&c) {
                    traced.push(c);
                }
            } else {
                labels.push(c);
            }
        }
    }
    Operand {
        name: factor.name.clone(),
        slot_labels: factor.indices.iter().map(|ix| ix.label).collect(),
        labels,
        traced,
    }
}

fn target_layout(
    statement: &Statement,
    free: &[(char, Variance)],
    mode: Mode,
) -> Result<(Vec<char>, Vec<Variance>), EinsumError> {
    let Some(target) = &statement.target else {
        if free.is_empty() {
            return Ok((Vec::new(), Vec::new()));
        }
        let letters: Vec<char> = free.iter().map(|f| f.0).collect();
        return Err(EinsumError::TargetLayout(format!(
            "free indices {{{}}} require an explicit target layout",
            letter_string(&letters)
        )));
    };
    let mut layout = Vec::new();
    let mut slots = Vec::new();
    for ix in &target.indices {
        let IndexLabel::Letter(c) = ix.label else {
            return Err(EinsumError::TargetLayout(format!(
                "fixed index {} is not allowed in the target",
                ix.label
            )));
        };
        if layout.contains(&c) {
            return Err(EinsumError::TargetLayout(format!(
                "index `{c}` repeated in the target"
            )));
        }
        let Some((_, variance)) = free.iter().find(|f| f.0 == c) else {
            return Err(EinsumError::TargetLayout(format!(
                "target index `{c}` is not a free index of the expression"
            )));
        };
        if mode == Mode::Strict && *variance != ix.variance {
            return Err(EinsumError::VarianceClash {
                letter: c,
                term: 0,
                detail: format!("free index is {variance} but {} in the target", ix.variance),
            });
        }
        layout.push(c);
        slots.push(ix.variance);
    }
    if let Some((c, _)) = free.iter().find(|f| !layout.contains(&f.0)) {
        return Err(EinsumError::TargetLayout(format!(
            "free index `{c}` is missing from the target"
        )));
    }
    Ok((layout, slots))
}

fn merge(left: &[char], right: &[char], dim: usize) -> (Vec<char>, Vec<char>, u64) {
    let summed: Vec<char> = left.iter().filter(|c| right.contains(c)).copied().collect();
    let output: Vec<char> = left
        .iter()
        .filter(|c| !right.contains(c))
        .chain(right.iter().filter(|c| !left.contains(c)))
        .copied()
        .collect();
    let cost = pow_sat(dim, (output.len() + summed.len()) as u32);
    (output, summed, cost)
}

fn sequential_schedule(labels: &[Vec<char>], dim: usize) -> Vec<ContractionStep> {
    let n = labels.len();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    let mut acc_id = 0;
    let mut acc = labels.first().cloned().unwrap_or_default();
    for (k, next) in labels.iter().enumerate().skip(1) {
        let (output, summed, cost) = merge(&acc, next, dim);
        steps.push(ContractionStep {
            left: acc_id,
            right: k,
            output: output.clone(),
            summed,
            cost,
        });
        acc = output;
        acc_id = n + steps.len() - 1;
    }
    steps
}

/// Repeatedly contracts the pair of live operands with the smallest result,
/// ties broken by position in the live list (factors in written order, each
/// intermediate taking the place of its left operand).
fn greedy_schedule(labels: &[Vec<char>], dim: usize) -> Vec<ContractionStep> {
    let n = labels.len();
    let mut live: Vec<(usize, Vec<char>)> = labels.iter().cloned().enumerate().collect();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    while live.len() > 1 {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..live.len() {
            for j in i + 1..live.len() {
                let (output, _, _) = merge(&live[i].1, &live[j].1, dim);
                if best.is_none_or(|(size, _, _)| output.len() < size) {
                    best = Some((output.len(), i, j));
                }
            }
        }
        let (_, i, j) = best.expect("at least two live operands");
        let (output, summed, cost) = merge(&live[i].1, &live[j].1, dim);
        let id = n + steps.len();
        steps.push(ContractionStep {
            left: live[i].0,
            right: live[j].0,
            output: output.clone(),
            summed,
            cost,
        });
        live[i] = (id, output);
        live.remove(j);
    }
    steps
}

/// Replaces each term's schedule with the greedy smallest-intermediate one
/// when that lowers its estimated cost. Never increases the cost.
pub fn order_contractions(plan: &ContractionPlan) -> ContractionPlan {
    let mut out = plan.clone();
    let dim = plan.result.dim;
    for term in &mut out.terms {
        let labels: Vec<Vec<char>> = term.operands.iter().map(|o| o.labels.clone()).collect();
        let greedy = greedy_schedule(&labels, dim);
        let greedy_cost = greedy.iter().fold(0u64, |a, s| a.saturating_add(s.cost));
        if greedy_cost < term.cost() {
            term.steps = greedy;
        }
    }
    out
}
