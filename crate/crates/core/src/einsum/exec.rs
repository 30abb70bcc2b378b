use std::collections::{BTreeMap, HashMap};

use super::plan::{ContractionPlan, Mode, Operand};
use super::{EinsumError, IndexLabel};
use crate::tensor::{slots_to_string, strides, TensorObject};

/// Name lookup for tensors bound to an expression.
pub trait Bindings {
    fn lookup(&self, name: &str) -> Option<&TensorObject>;
}

impl Bindings for BTreeMap<String, TensorObject> {
    fn lookup(&self, name: &str) -> Option<&TensorObject> {
        self.get(name)
    }
}

impl Bindings for HashMap<String, TensorObject> {
    fn lookup(&self, name: &str) -> Option<&TensorObject> {
        self.get(name)
    }
}

/// A dense intermediate whose axes are labelled by letters.
struct Labelled {
    labels: Vec<char>,
    data: Vec<f64>,
}

/// One input of [`kernel`]: data, a base offset and a stride per kernel axis.
struct Input<'a> {
    data: &'a [f64],
    base: usize,
    strides: Vec<usize>,
}

/// Generic dense sum of products. Axes `0..n_out` index the output
/// (first axis outermost); the remaining `n_sum` axes are summed.
fn kernel(dim: usize, n_out: usize, n_sum: usize, inputs: &[Input<'_>]) -> Vec<f64> {
    let out_len = dim.pow(n_out as u32);
    let mut out = Vec::with_capacity(out_len);
    let mut idx = vec![0usize; n_out + n_sum];
    for _ in 0..out_len {
        for k in n_out..idx.len() {
            idx[k] = 0;
        }
        let mut total = 0.0;
        loop {
            let mut product = 1.0;
            for input in inputs {
                let off = input.base + idx.iter().zip(&input.strides).map(|(i, s)| i * s).sum::<usize>();
                product *= input.data[off];
            }
            total += product;
            if !advance(&mut idx[n_out..], dim) {
                break;
            }
        }
        out.push(total);
        advance(&mut idx[..n_out], dim);
    }
    out
}

/// Odometer increment, last position fastest. Returns false on wrap-around.
fn advance(idx: &mut [usize], dim: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dim {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn prepare(op: &Operand, t: &TensorObject) -> Labelled {
    let dim = t.dim();
    let slot_strides = strides(dim, t.rank());
    let mut base = 0;
    for (k, label) in op.slot_labels.iter().enumerate() {
        if let IndexLabel::Fixed(v) = label {
            base += (v - 1) * slot_strides[k];
        }
    }
    let axes: Vec<char> = op.labels.iter().chain(&op.traced).copied().collect();
    let axis_strides: Vec<usize> = axes
        .iter()
        .map(|c| {
            op.slot_labels
                .iter()
                .zip(&slot_strides)
                .filter(|(l, _)| **l == IndexLabel::Letter(*c))
                .map(|(_, s)| s)
                .sum()
        })
        .collect();
    let data = kernel(
        dim,
        op.labels.len(),
        op.traced.len(),
        &[Input {
            data: t.components(),
            base,
            strides: axis_strides,
        }],
    );
    Labelled {
        labels: op.labels.clone(),
        data,
    }
}

fn axis_strides(dim: usize, labels: &[char], axes: &[char]) -> Vec<usize> {
    let own = strides(dim, labels.len());
    axes.iter()
        .map(|c| labels.iter().position(|l| l == c).map_or(0, |p| own[p]))
        .collect()
}

fn contract_pair(
    dim: usize,
    left: &Labelled,
    right: &Labelled,
    output: &[char],
    summed: &[char],
) -> Labelled {
    let axes: Vec<char> = output.iter().chain(summed).copied().collect();
    let data = kernel(
        dim,
        output.len(),
        summed.len(),
        &[
            Input {
                data: &left.data,
                base: 0,
                strides: axis_strides(dim, &left.labels, &axes),
            },
            Input {
                data: &right.data,
                base: 0,
                strides: axis_strides(dim, &right.labels, &axes),
            },
        ],
    );
    Labelled {
        labels: output.to_vec(),
        data,
    }
}

fn check_binding(plan: &ContractionPlan, name: &str, t: &TensorObject) -> Result<(), EinsumError> {
    let sig = &plan.signatures[name];
    let mismatch = |detail: String| EinsumError::Binding {
        name: name.to_string(),
        detail,
    };
    if t.dim() != sig.dim {
        return Err(mismatch(format!(
            "dimension {} but plan expects {}",
            t.dim(),
            sig.dim
        )));
    }
    if t.weight() != sig.weight {
        return Err(mismatch(format!(
            "weight {} but plan expects {}",
            t.weight(),
            sig.weight
        )));
    }
    let slots_ok = match plan.mode {
        Mode::Strict => t.slots() == sig.slots.as_slice(),
        Mode::Orthogonal => t.rank() == sig.slots.len(),
    };
    if !slots_ok {
        return Err(mismatch(format!(
            "slots {} but plan expects {}",
            slots_to_string(t.slots()),
            slots_to_string(&sig.slots)
        )));
    }
    Ok(())
}

/// Evaluates a validated plan. Each term is evaluated by its pairwise
/// schedule, permuted into the result layout, scaled by its coefficient and
/// accumulated in written order.
pub fn execute(plan: &ContractionPlan, bindings: &impl Bindings) -> Result<TensorObject, EinsumError> {
    for name in plan.signatures.keys() {
        let t = bindings
            .lookup(name)
            .ok_or_else(|| EinsumError::Unbound(name.clone()))?;
        check_binding(plan, name, t)?;
    }
    let dim = plan.result.dim;
    let mut result: Option<Vec<f64>> = None;
    for term in &plan.terms {
        let mut live: Vec<Labelled> = term
            .operands
            .iter()
            .map(|op| {
                let t = bindings.lookup(&op.name).expect("checked above");
                prepare(op, t)
            })
            .collect();
        let mut pool: Vec<Option<Labelled>> = live.drain(..).map(Some).collect();
        for step in &term.steps {
            let left = pool[step.left].take().expect("operand consumed once");
            let right = pool[step.right].take().expect("operand consumed once");
            pool.push(Some(contract_pair(
                dim,
                &left,
                &right,
                &step.output,
                &step.summed,
            )));
        }
        let last = pool
            .into_iter()
            .rev()
            .find_map(|x| x)
            .expect("one operand remains");
        debug_assert_eq!(last.labels, term.final_labels());
        let data = if last.labels == plan.layout {
            last.data
        } else {
            kernel(
                dim,
                plan.layout.len(),
                0,
                &[Input {
                    data: &last.data,
                    base: 0,
                    strides: axis_strides(dim, &last.labels, &plan.layout),
                }],
            )
        };
        let c = term.coefficient;
        match result.as_mut() {
            None => result = Some(data.into_iter().map(|v| c * v).collect()),
            Some(acc) => {
                for (a, v) in acc.iter_mut().zip(data) {
                    *a += c * v;
                }
            }
        }
    }
    let components = result.expect("validated plans have at least one term");
    Ok(TensorObject::new(
        dim,
        plan.result.slots.clone(),
        plan.result.weight,
        components,
    )?)
}
