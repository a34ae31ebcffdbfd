//! Choosing between the fermionic realization `ρ` and the geometric one, and
//! memoizing the generators so repeated relations reuse images.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::fock::{alpha, psi, psi_star};
use crate::geo::{geo_p, geo_psi, geo_psi_star, Geometric};
use crate::glhat::{RSetup, Realization, Rho};
use crate::operator::{cached, commutator, scale, Op};
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Wedging and contracting semi-infinite monomials.
    Algebraic,
    /// Fixed-point coefficients.
    #[default]
    Geometric,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Algebraic => "alg",
            Model::Geometric => "geo",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alg" | "algebraic" => Ok(Model::Algebraic),
            "geo" | "geometric" => Ok(Model::Geometric),
            other => Err(format!("unknown model {other:?} (expected geo or alg)")),
        }
    }
}

/// `P_ℓ(n)`. On the fermionic side this is `α_ℓ(n)/|n|` (and `α_ℓ(0)`).
pub fn oscillator(setup: &RSetup, model: Model, l: usize, n: i64) -> Op {
    match model {
        Model::Geometric => Arc::new(geo_p(setup, l, n)),
        Model::Algebraic if n == 0 => alpha(l, 0),
        Model::Algebraic => scale(rational::frac(1, n.abs()), alpha(l, n)),
    }
}

/// `α_ℓ(n) = |n| P_ℓ(n)` for `n ≠ 0`, and `P_ℓ(0)` otherwise.
pub fn current(setup: &RSetup, model: Model, l: usize, n: i64) -> Op {
    match model {
        Model::Algebraic => alpha(l, n),
        Model::Geometric if n == 0 => Arc::new(geo_p(setup, l, 0)),
        Model::Geometric => scale(rational::int(n.abs()), Arc::new(geo_p(setup, l, n))),
    }
}

pub fn creation(setup: &RSetup, model: Model, l: usize, k: i64) -> Op {
    match model {
        Model::Algebraic => psi(l, k),
        Model::Geometric => Arc::new(geo_psi(setup, l, k)),
    }
}

pub fn annihilation(setup: &RSetup, model: Model, l: usize, k: i64) -> Op {
    match model {
        Model::Algebraic => psi_star(l, k),
        Model::Geometric => Arc::new(geo_psi_star(setup, l, k)),
    }
}

/// A realization whose generators remember every image they compute.
pub struct Memoized {
    inner: Box<dyn Realization>,
    e: Vec<OnceLock<Op>>,
    f: Vec<OnceLock<Op>>,
    h: Vec<OnceLock<Op>>,
    loops: RwLock<HashMap<i64, Op>>,
}

impl Memoized {
    pub fn new(inner: Box<dyn Realization>) -> Self {
        let r = inner.setup().r() as usize;
        let slots = || (0..r).map(|_| OnceLock::new()).collect();
        Memoized { inner, e: slots(), f: slots(), h: slots(), loops: RwLock::new(HashMap::new()) }
    }
}

impl Realization for Memoized {
    fn setup(&self) -> &RSetup {
        self.inner.setup()
    }

    fn e(&self, k: u32) -> Op {
        self.e[k as usize].get_or_init(|| cached(self.inner.e(k))).clone()
    }

    fn f(&self, k: u32) -> Op {
        self.f[k as usize].get_or_init(|| cached(self.inner.f(k))).clone()
    }

    fn h(&self, k: u32) -> Op {
        self.h[k as usize]
            .get_or_init(|| {
                if self.inner.h_is_commutator(k) {
                    cached(commutator(self.e(k), self.f(k)))
                } else {
                    cached(self.inner.h(k))
                }
            })
            .clone()
    }

    fn loop_op(&self, n: i64) -> Op {
        if let Some(op) = self.loops.read().unwrap().get(&n) {
            return op.clone();
        }
        let op = cached(self.inner.loop_op(n));
        self.loops.write().unwrap().entry(n).or_insert(op).clone()
    }
}

/// The generators of `model` for `setup`, memoized.
pub fn realization(setup: &RSetup, model: Model) -> Arc<dyn Realization> {
    let inner: Box<dyn Realization> = match model {
        Model::Algebraic => Box::new(Rho::new(setup.clone())),
        Model::Geometric => Box::new(Geometric::new(setup.clone())),
    };
    Arc::new(Memoized::new(inner))
}
