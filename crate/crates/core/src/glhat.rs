//! The algebraic action `ρ` of `ĝl_r` on 𝔽 for a partition `r = r_1+⋯+r_s`.
//!
//! Chevalley generators are indexed by `k ∈ 0..r`, written as
//! `k = r_1+⋯+r_{ℓ−1} + k′` with `0 ≤ k′ < r_ℓ`. Generators with `k′ ≠ 0`
//! live inside a single colour; `k′ = 0` generators move a fermion between
//! neighbouring colours (colour `s` wraps around to colour `1` for `k = 0`).

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::fock::{alpha, Affine, BilinearSum};
use crate::operator::{commutator, sum, Op};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetupError {
    #[error("the partition of r must have at least one part")]
    Empty,
    #[error("parts must be positive, got {0:?}")]
    ZeroPart(Vec<u32>),
    #[error("parts must be weakly increasing, got {0:?}")]
    NotIncreasing(Vec<u32>),
}

/// The partition `(r_1, …, r_s)` with the derived integers `R′` and `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RSetup {
    parts: Vec<u32>,
    r: u32,
    r_prime: u32,
    big_r: u32,
}

impl RSetup {
    pub fn new(parts: Vec<u32>) -> Result<Self, SetupError> {
        if parts.is_empty() {
            return Err(SetupError::Empty);
        }
        if parts.contains(&0) {
            return Err(SetupError::ZeroPart(parts));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(SetupError::NotIncreasing(parts));
        }
        let r = parts.iter().sum();
        let r_prime = parts.iter().fold(1u32, |acc, &p| acc.lcm(&p));
        // R = R′ exactly when R′(1/r_i + 1/r_j) is even for every pair.
        let even = parts.iter().all(|&a| parts.iter().all(|&b| (r_prime / a + r_prime / b) % 2 == 0));
        let big_r = if even { r_prime } else { 2 * r_prime };
        Ok(RSetup { parts, r, r_prime, big_r })
    }

    /// Sorts the parts first; the flag reports whether they were out of order.
    pub fn sorted(mut parts: Vec<u32>) -> Result<(Self, bool), SetupError> {
        let was_sorted = parts.windows(2).all(|w| w[0] <= w[1]);
        parts.sort_unstable();
        Ok((RSetup::new(parts)?, !was_sorted))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of colours.
    pub fn s(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `r_l`, 1-based.
    pub fn part(&self, l: usize) -> u32 {
        self.parts[l - 1]
    }

    pub fn r_prime(&self) -> u32 {
        self.r_prime
    }

    pub fn big_r(&self) -> u32 {
        self.big_r
    }

    /// `R / r_l`, the torus weight scale of colour `l`.
    pub fn scale(&self, l: usize) -> i64 {
        i64::from(self.big_r / self.part(l))
    }

    pub fn has_chevalley(&self) -> bool {
        self.r >= 2
    }

    /// Splits `k` into `(ℓ, k′)`.
    ///
    /// # Panics
    /// If `k ≥ r`.
    pub fn decompose(&self, k: u32) -> ChevalleyIndex {
        assert!(k < self.r, "Chevalley index {k} out of range for r = {}", self.r);
        let mut rest = k;
        for (idx, &p) in self.parts.iter().enumerate() {
            if rest < p {
                return ChevalleyIndex { k, colour: idx + 1, sub: rest };
            }
            rest -= p;
        }
        unreachable!("k < r")
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn compose(&self, colour: usize, sub: u32) -> u32 {
        assert!(sub < self.part(colour));
        self.parts[..colour - 1].iter().sum::<u32>() + sub
    }
}

impl fmt::Display for RSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `k = r_1 + ⋯ + r_{colour−1} + sub`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChevalleyIndex {
    pub k: u32,
    pub colour: usize,
    pub sub: u32,
}

/// Affine Cartan matrix of type `Â_{m−1}`; `[[2,−2],[−2,2]]` for `m = 2` and
/// `[0]` for `m = 1`.
pub fn cartan_matrix(m: u32) -> Vec<Vec<i64>> {
    let m = m as usize;
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match m {
                    1 => 0,
                    2 if i == j => 2,
                    2 => -2,
                    _ if i == j => 2,
                    _ if (i + 1) % m == j || (j + 1) % m == i => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// A representation of `ĝl_r` on Fock space, given by its generators.
///
/// Chevalley generators exist only when `r ≥ 2`; the methods panic otherwise.
pub trait Realization: Send + Sync {
    fn setup(&self) -> &RSetup;
    fn e(&self, k: u32) -> Op;
    fn f(&self, k: u32) -> Op;
    fn h(&self, k: u32) -> Op;
    /// `I ⊗ t^n`; `n = 0` gives `I ⊗ 1`.
    fn loop_op(&self, n: i64) -> Op;

    /// Whether [`h`](Self::h) is literally `[e(k), f(k)]`, so that a caching
    /// wrapper may build it from its own memoized `e` and `f`.
    fn h_is_commutator(&self, _k: u32) -> bool {
        true
    }
}

/// The fermionic realization `ρ`.
#[derive(Debug, Clone)]
pub struct Rho {
    setup: RSetup,
}

impl Rho {
    pub fn new(setup: RSetup) -> Self {
        Rho { setup }
    }

    fn pair(&self, k: u32, raising: bool) -> BilinearSum {
        assert!(self.setup.has_chevalley(), "ĝl_1 has no Chevalley generators");
        let st = &self.setup;
        let ChevalleyIndex { colour: l, sub, .. } = st.decompose(k);
        let rl = i64::from(st.part(l));
        // Each generator is Σ_i ψ_a(f(i)) ψ*_b(g(i)); the lowering partner is
        // the same sum with the roles of the two index maps exchanged.
        let (a, f, b, g) = if sub != 0 {
            let k1 = i64::from(sub);
            (l, Affine::new(rl, k1), l, Affine::new(rl, k1 + 1))
        } else if l != 1 {
            let rp = i64::from(st.part(l - 1));
            (l - 1, Affine::new(rp, rp), l, Affine::new(rl, 1))
        } else {
            let s = st.s();
            let rs = i64::from(st.part(s));
            (s, Affine::new(rs, 0), 1, Affine::new(i64::from(st.part(1)), 1))
        };
        if raising {
            BilinearSum::new(a, f, b, g)
        } else {
            BilinearSum::new(b, g, a, f)
        }
    }
}

impl Realization for Rho {
    fn setup(&self) -> &RSetup {
        &self.setup
    }

    fn e(&self, k: u32) -> Op {
        Arc::new(self.pair(k, true))
    }

    fn f(&self, k: u32) -> Op {
        Arc::new(self.pair(k, false))
    }

    fn h(&self, k: u32) -> Op {
        commutator(self.e(k), self.f(k))
    }

    fn loop_op(&self, n: i64) -> Op {
        sum((1..=self.setup.s()).map(|l| alpha(l, n * i64::from(self.setup.part(l)))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockState, FockVector};

    fn setup(parts: &[u32]) -> RSetup {
        RSetup::new(parts.to_vec()).unwrap()
    }

    fn st(s: &str) -> FockState {
        s.parse().unwrap()
    }

    #[test]
    fn r_and_r_prime() {
        let cases: [(&[u32], u32, u32); 6] =
            [(&[1], 1, 1), (&[2], 2, 2), (&[1, 1], 1, 1), (&[1, 2], 2, 4), (&[2, 2], 2, 2), (&[1, 3], 3, 3)];
        for (parts, rp, r) in cases {
            let s = setup(parts);
            assert_eq!((s.r_prime(), s.big_r()), (rp, r), "{s}");
        }
        // lcm(2,3) = 6, and 6(1/2 + 1/3) = 5 is odd.
        assert_eq!(setup(&[2, 3]).big_r(), 12);
        assert_eq!(setup(&[3, 3]).big_r(), 3);
    }

    #[test]
    fn setup_validation() {
        assert_eq!(RSetup::new(vec![]), Err(SetupError::Empty));
        assert!(matches!(RSetup::new(vec![2, 1]), Err(SetupError::NotIncreasing(_))));
        assert!(matches!(RSetup::new(vec![0, 1]), Err(SetupError::ZeroPart(_))));
        let (s, moved) = RSetup::sorted(vec![2, 1]).unwrap();
        assert_eq!((s.parts(), moved), (&[1, 2][..], true));
    }

    #[test]
    fn index_decomposition_round_trips() {
        let s = setup(&[1, 2, 3]);
        let got: Vec<_> = (0..6).map(|k| (s.decompose(k).colour, s.decompose(k).sub)).collect();
        assert_eq!(got, vec![(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]);
        for k in 0..6 {
            let ChevalleyIndex { colour, sub, .. } = s.decompose(k);
            assert_eq!(s.compose(colour, sub), k);
        }
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(cartan_matrix(1), vec![vec![0]]);
        assert_eq!(cartan_matrix(2), vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(cartan_matrix(3), vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(cartan_matrix(4)[0], vec![2, -1, 0, -1]);
    }

    #[test]
    fn rho_examples() {
        let rho = Rho::new(setup(&[2]));
        // (0:[1]) is 1 ∧ −1 ∧ −2 ∧ ⋯. Its box has residue class 0, so E_0
        // moves 1 down to 0 and E_1 has nothing to act on.
        assert_eq!(rho.e(0).apply_state(&st("0:[1]")), FockVector::basis(FockState::vacuum(1)));
        assert!(rho.e(1).apply_state(&st("0:[1]")).is_zero());
        assert_eq!(rho.f(0).apply_state(&FockState::vacuum(1)), FockVector::basis(st("0:[1]")));
        for parts in [&[2][..], &[3], &[1, 2], &[2, 2], &[1, 1, 1]] {
            let rho = Rho::new(setup(parts));
            let vac = FockState::vacuum(rho.setup().s());
            for k in 0..rho.setup().r() {
                assert!(rho.e(k).apply_state(&vac).is_zero(), "E_{k} on vacuum, {}", rho.setup());
                let expected = if k == 0 { FockVector::basis(vac.clone()) } else { FockVector::zero() };
                assert_eq!(rho.h(k).apply_state(&vac), expected, "H_{k} on vacuum, {}", rho.setup());
            }
        }
    }

    #[test]
    fn loop_examples() {
        let rho = Rho::new(setup(&[1]));
        assert_eq!(rho.loop_op(-1).apply_state(&FockState::vacuum(1)), FockVector::basis(st("0:[1]")));
        let rho = Rho::new(setup(&[1, 2]));
        let s = st("1:[2] | -2:[1]");
        assert_eq!(rho.loop_op(0).apply_state(&s), FockVector::basis(s.clone()).scaled(&crate::rational::int(-1)));
    }
}
