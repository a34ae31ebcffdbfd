//! Linear operators on Fock space and the small algebra they generate.
//!
//! Every operator in the crate is defined on basis states and extended
//! linearly. Compositions apply the rightmost factor first, as in ordinary
//! operator notation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::fock::{FockState, FockVector};
use crate::rational::{self, Q};

pub trait Operator: Send + Sync {
    /// Image of a single basis state.
    fn apply_state(&self, state: &FockState) -> FockVector;

    /// Linear extension of [`apply_state`](Self::apply_state).
    fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (st, c) in v.iter() {
            out.add_scaled(&self.apply_state(st), c);
        }
        out
    }
}

/// Shared, type-erased operator.
pub type Op = Arc<dyn Operator>;

/// Linear extension of a state-level operator.
pub fn apply_linear(op: &dyn Operator, v: &FockVector) -> FockVector {
    op.apply(v)
}

impl<F> Operator for F
where
    F: Fn(&FockState) -> FockVector + Send + Sync,
{
    fn apply_state(&self, state: &FockState) -> FockVector {
        self(state)
    }
}

struct Identity;

impl Operator for Identity {
    fn apply_state(&self, state: &FockState) -> FockVector {
        FockVector::basis(state.clone())
    }
}

pub fn identity() -> Op {
    Arc::new(Identity)
}

/// `a ∘ b`: apply `b`, then `a`.
struct Compose(Op, Op);

impl Operator for Compose {
    fn apply_state(&self, state: &FockState) -> FockVector {
        self.0.apply(&self.1.apply_state(state))
    }
}

pub fn compose(a: Op, b: Op) -> Op {
    Arc::new(Compose(a, b))
}

/// Composition of a word, rightmost factor applied first.
pub fn compose_all(ops: impl IntoIterator<Item = Op>) -> Op {
    let mut ops: Vec<Op> = ops.into_iter().collect();
    match ops.len() {
        0 => identity(),
        1 => ops.pop().unwrap(),
        _ => {
            let last = ops.pop().unwrap();
            ops.into_iter().rev().fold(last, |acc, op| compose(op, acc))
        }
    }
}

struct Combination(Vec<(Q, Op)>);

impl Operator for Combination {
    fn apply_state(&self, state: &FockState) -> FockVector {
        let mut out = FockVector::zero();
        for (c, op) in &self.0 {
            out.add_scaled(&op.apply_state(state), c);
        }
        out
    }

    fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (c, op) in &self.0 {
            out.add_scaled(&op.apply(v), c);
        }
        out
    }
}

/// `Σ c_i · op_i`.
pub fn combination(terms: Vec<(Q, Op)>) -> Op {
    Arc::new(Combination(terms))
}

pub fn sum(ops: Vec<Op>) -> Op {
    combination(ops.into_iter().map(|op| (rational::one(), op)).collect())
}

pub fn scale(c: Q, op: Op) -> Op {
    combination(vec![(c, op)])
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: Op, b: Op) -> Op {
    combination(vec![
        (rational::one(), compose(a.clone(), b.clone())),
        (-rational::one(), compose(b, a)),
    ])
}

/// `{a, b} = ab + ba`.
pub fn anticommutator(a: Op, b: Op) -> Op {
    combination(vec![
        (rational::one(), compose(a.clone(), b.clone())),
        (rational::one(), compose(b, a)),
    ])
}

/// Memoizes the images of basis states.
///
/// The verification suites hit the same states over and over through
/// different relations; this keeps each image computed once.
pub struct Cached {
    inner: Op,
    memo: RwLock<HashMap<FockState, FockVector>>,
}

impl Operator for Cached {
    fn apply_state(&self, state: &FockState) -> FockVector {
        if let Some(hit) = self.memo.read().unwrap().get(state) {
            return hit.clone();
        }
        let image = self.inner.apply_state(state);
        self.memo.write().unwrap().insert(state.clone(), image.clone());
        image
    }
}

pub fn cached(op: Op) -> Op {
    Arc::new(Cached { inner: op, memo: RwLock::new(HashMap::new()) })
}

/// An operator paired with a printable name, for reports.
#[derive(Clone)]
pub struct Named {
    pub name: String,
    pub op: Op,
}

impl Named {
    pub fn new(name: impl Into<String>, op: Op) -> Self {
        Named { name: name.into(), op }
    }
}

impl fmt::Debug for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
