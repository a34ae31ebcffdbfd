//! The s-coloured fermionic Fock space.
//!
//! Colours are numbered `1..=s` in every public function, matching the usual
//! subscripts `ψ_1, …, ψ_s`. Acting on colour `ℓ` picks up the twist
//! `(−1)^{c_1+⋯+c_{ℓ−1}}`, always computed from the charges of the input
//! state.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::operator::{Op, Operator};
use crate::partitions::{ChargedPartition, PartitionError};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("a state needs at least one colour")]
    NoColours,
    #[error("state has {found} colours but the setup has {expected}")]
    Arity { expected: usize, found: usize },
    #[error("malformed vector: {0}")]
    BadVector(String),
}

/// A basis vector of 𝔽: one charged partition per colour.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FockState {
    colours: SmallVec<[ChargedPartition; 4]>,
}

/// A basis state with a sign; `Option<Signed>` is a state or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signed {
    pub sign: i8,
    pub state: FockState,
}

impl FockState {
    pub fn new(colours: Vec<ChargedPartition>) -> Result<Self, FockError> {
        if colours.is_empty() {
            return Err(FockError::NoColours);
        }
        Ok(FockState { colours: colours.into_iter().collect() })
    }

    /// `|0⟩^{⊗s}`.
    pub fn vacuum(s: usize) -> Self {
        assert!(s >= 1, "a state needs at least one colour");
        FockState { colours: (0..s).map(|_| ChargedPartition::vacuum(0)).collect() }
    }

    /// Number of colours.
    pub fn s(&self) -> usize {
        self.colours.len()
    }

    pub fn colours(&self) -> &[ChargedPartition] {
        &self.colours
    }

    /// Colour `l`, 1-based.
    pub fn colour(&self, l: usize) -> &ChargedPartition {
        &self.colours[l - 1]
    }

    pub fn charges(&self) -> Vec<i64> {
        self.colours.iter().map(|c| c.charge).collect()
    }

    pub fn energies(&self) -> Vec<u32> {
        self.colours.iter().map(|c| c.energy()).collect()
    }

    pub fn total_charge(&self) -> i64 {
        self.colours.iter().map(|c| c.charge).sum()
    }

    pub fn total_energy(&self) -> u32 {
        self.colours.iter().map(|c| c.energy()).sum()
    }

    /// `(−1)^{c_1+⋯+c_{l−1}}`.
    pub fn colour_sign(&self, l: usize) -> i8 {
        let below: i64 = self.colours[..l - 1].iter().map(|c| c.charge).sum();
        if below.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// The same state with colour `l` replaced.
    pub fn with_colour(&self, l: usize, cp: ChargedPartition) -> FockState {
        let mut colours = self.colours.clone();
        colours[l - 1] = cp;
        FockState { colours }
    }

    /// `ψ_l(i)`: wedge `i` into colour `l`.
    pub fn wedge(&self, l: usize, i: i64) -> Option<Signed> {
        let (k, cp) = self.colour(l).insert_index(i)?;
        let sign = if k % 2 == 0 { 1 } else { -1 } * self.colour_sign(l);
        Some(Signed { sign, state: self.with_colour(l, cp) })
    }

    /// `ψ*_l(i)`: contract `i` out of colour `l`.
    pub fn contract(&self, l: usize, i: i64) -> Option<Signed> {
        let (k, cp) = self.colour(l).remove_index(i)?;
        let sign = if k % 2 == 1 { 1 } else { -1 } * self.colour_sign(l);
        Some(Signed { sign, state: self.with_colour(l, cp) })
    }
}

impl Signed {
    /// Applies a further signed map, multiplying signs.
    pub fn then(self, f: impl FnOnce(&FockState) -> Option<Signed>) -> Option<Signed> {
        f(&self.state).map(|next| Signed { sign: self.sign * next.sign, state: next.state })
    }
}

impl Ord for FockState {
    fn cmp(&self, other: &Self) -> Ordering {
        let charges = self.colours.iter().map(|c| c.charge);
        charges
            .cmp(other.colours.iter().map(|c| c.charge))
            .then_with(|| {
                let shapes = self.colours.iter().map(|c| &c.shape);
                shapes.cmp(other.colours.iter().map(|c| &c.shape))
            })
    }
}

impl PartialOrd for FockState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.colours.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FockState {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let colours = s.split('|').map(str::parse).collect::<Result<Vec<ChargedPartition>, _>>()?;
        FockState::new(colours)
    }
}

impl FromStr for FockVector {
    type Err = FockError;

    /// Parses the printed form `{(0:[2]): 1/2, (0:[1,1]): -1/2}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = rational::parse_combination(s).map_err(|e| FockError::BadVector(e.to_string()))?;
        let mut v = FockVector::zero();
        for (st, c) in terms {
            v.add_term(st.parse()?, c);
        }
        Ok(v)
    }
}

/// A finite linear combination of basis states with exact coefficients.
///
/// Zero coefficients are never stored, and iteration follows the canonical
/// state order, so two equal vectors always print identically.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockState, Q>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(state: FockState) -> Self {
        let mut v = FockVector::zero();
        v.terms.insert(state, rational::one());
        v
    }

    pub fn from_signed(s: Option<Signed>) -> Self {
        let mut v = FockVector::zero();
        v.add_signed(s, &rational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &Q)> {
        self.terms.iter()
    }

    pub fn states(&self) -> impl Iterator<Item = &FockState> {
        self.terms.keys()
    }

    /// Coefficient of a basis state (zero if absent).
    pub fn coeff(&self, st: &FockState) -> Q {
        self.terms.get(st).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, st: FockState, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(st) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c · s` for a signed state.
    pub fn add_signed(&mut self, s: Option<Signed>, c: &Q) {
        if let Some(Signed { sign, state }) = s {
            self.add_term(state, if sign > 0 { c.clone() } else { -c.clone() });
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &FockVector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (st, x) in other.iter() {
            self.add_term(st.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, c);
        out
    }

    /// Terms whose state satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&FockState) -> bool) -> FockVector {
        FockVector {
            terms: self.terms.iter().filter(|(st, _)| keep(st)).map(|(s, c)| (s.clone(), c.clone())).collect(),
        }
    }

    pub fn restrict_charges(&self, charges: &[i64]) -> FockVector {
        self.restrict(|st| st.colours().iter().map(|c| c.charge).eq(charges.iter().copied()))
    }

    pub fn restrict_total_charge(&self, c: i64) -> FockVector {
        self.restrict(|st| st.total_charge() == c)
    }

    pub fn restrict_energies(&self, n: &[u32]) -> FockVector {
        self.restrict(|st| st.colours().iter().map(|c| c.energy()).eq(n.iter().copied()))
    }

    /// JSON form `{"terms":[{"state":"…","coeff":"p/q"}, …]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&VectorJson::from(self)).expect("vector serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<FockVector, FockError> {
        let raw: VectorJson = serde_json::from_str(s).map_err(|e| FockError::BadVector(e.to_string()))?;
        let mut v = FockVector::zero();
        for t in raw.terms {
            let c = rational::parse(&t.coeff).map_err(|e| FockError::BadVector(e.to_string()))?;
            v.add_term(t.state.parse()?, c);
        }
        Ok(v)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub(crate) state: String,
    pub(crate) coeff: String,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct VectorJson {
    pub(crate) terms: Vec<TermJson>,
}

impl From<&FockVector> for VectorJson {
    fn from(v: &FockVector) -> Self {
        VectorJson {
            terms: v.iter().map(|(st, c)| TermJson { state: st.to_string(), coeff: rational::fmt(c) }).collect(),
        }
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (st, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({st}): {}", rational::fmt(c))?;
        }
        f.write_str("}")
    }
}

impl Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &rational::one());
        out
    }
}

impl Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-rational::one());
        out
    }
}

impl Neg for &FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        self.scaled(&-rational::one())
    }
}

impl FromIterator<(FockState, Q)> for FockVector {
    fn from_iter<T: IntoIterator<Item = (FockState, Q)>>(iter: T) -> Self {
        let mut v = FockVector::zero();
        for (st, c) in iter {
            v.add_term(st, c);
        }
        v
    }
}

/// `ψ_l(i)`.
#[derive(Debug, Clone, Copy)]
pub struct Psi {
    pub colour: usize,
    pub index: i64,
}

impl Operator for Psi {
    fn apply_state(&self, state: &FockState) -> FockVector {
        FockVector::from_signed(state.wedge(self.colour, self.index))
    }
}

/// `ψ*_l(i)`.
#[derive(Debug, Clone, Copy)]
pub struct PsiStar {
    pub colour: usize,
    pub index: i64,
}

impl Operator for PsiStar {
    fn apply_state(&self, state: &FockState) -> FockVector {
        FockVector::from_signed(state.contract(self.colour, self.index))
    }
}

/// `:ψ_l(i) ψ*_k(j):` — the plain product when `j > 0`, and `−ψ*_k(j) ψ_l(i)`
/// when `j ≤ 0`.
#[derive(Debug, Clone, Copy)]
pub struct NormalOrderedPair {
    pub psi_colour: usize,
    pub psi_index: i64,
    pub star_colour: usize,
    pub star_index: i64,
}

impl NormalOrderedPair {
    pub fn apply_signed(&self, state: &FockState) -> Option<Signed> {
        let (l, i, k, j) = (self.psi_colour, self.psi_index, self.star_colour, self.star_index);
        if j > 0 {
            state.contract(k, j)?.then(|s| s.wedge(l, i))
        } else {
            state.wedge(l, i)?.then(|s| s.contract(k, j)).map(|s| Signed { sign: -s.sign, state: s.state })
        }
    }
}

impl Operator for NormalOrderedPair {
    fn apply_state(&self, state: &FockState) -> FockVector {
        FockVector::from_signed(self.apply_signed(state))
    }
}

/// The index map `i ↦ slope·i + offset` of a bilinear sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub slope: i64,
    pub offset: i64,
}

impl Affine {
    pub fn new(slope: i64, offset: i64) -> Self {
        assert!(slope > 0, "index maps must be increasing");
        Affine { slope, offset }
    }

    pub fn at(self, i: i64) -> i64 {
        self.slope * i + self.offset
    }

    /// Largest `i` with `at(i) ≤ bound`.
    pub fn last_at_most(self, bound: i64) -> i64 {
        (bound - self.offset).div_euclid(self.slope)
    }

    /// Smallest `i` with `at(i) ≥ bound`.
    pub fn first_at_least(self, bound: i64) -> i64 {
        -((self.offset - bound).div_euclid(self.slope))
    }
}

/// `Σ_{i∈ℤ} ψ_a(f(i)) ψ*_b(g(i))` for increasing affine `f ≠ g`.
///
/// Only finitely many terms act on a given state: `ψ*_b(g(i))` needs
/// `g(i) ≤ c_b + λ^b_1`, and `ψ_a(f(i))` needs `f(i)` above colour `a`'s
/// filled sea. Because `f(i) ≠ g(i)`, normal ordering is irrelevant.
#[derive(Debug, Clone, Copy)]
pub struct BilinearSum {
    pub psi_colour: usize,
    pub psi: Affine,
    pub star_colour: usize,
    pub star: Affine,
}

impl BilinearSum {
    pub fn new(psi_colour: usize, psi: Affine, star_colour: usize, star: Affine) -> Self {
        if psi_colour == star_colour {
            assert!(
                psi.slope == star.slope && psi.offset != star.offset,
                "same-colour sums need parallel, distinct index maps"
            );
        }
        BilinearSum { psi_colour, psi, star_colour, star }
    }

    /// The range of summation indices that can contribute on `state`.
    pub fn window(&self, state: &FockState) -> std::ops::RangeInclusive<i64> {
        let hi = self.star.last_at_most(state.colour(self.star_colour).top_index());
        let lo = self.psi.first_at_least(state.colour(self.psi_colour).sea_level() + 1);
        lo..=hi
    }
}

impl Operator for BilinearSum {
    fn apply_state(&self, state: &FockState) -> FockVector {
        let mut out = FockVector::zero();
        for i in self.window(state) {
            let term = state
                .contract(self.star_colour, self.star.at(i))
                .and_then(|s| s.then(|t| t.wedge(self.psi_colour, self.psi.at(i))));
            out.add_signed(term, &rational::one());
        }
        out
    }
}

/// `α_l(m) = Σ_j :ψ_l(j−m) ψ*_l(j):`.
#[derive(Debug, Clone, Copy)]
pub struct Alpha {
    pub colour: usize,
    pub mode: i64,
}

impl Operator for Alpha {
    fn apply_state(&self, state: &FockState) -> FockVector {
        let l = self.colour;
        if self.mode != 0 {
            let sum = BilinearSum::new(l, Affine::new(1, -self.mode), l, Affine::new(1, 0));
            return sum.apply_state(state);
        }
        // For m = 0 every j contributes ±state or nothing; outside this
        // window the normal-ordered pair vanishes (ψ*(j) kills an empty j > 0,
        // ψ(j) kills a filled j ≤ 0).
        let cp = state.colour(l);
        let lo = cp.sea_level().min(0) - 1;
        let hi = cp.top_index().max(0) + 1;
        let mut out = FockVector::zero();
        for j in lo..=hi {
            let pair = NormalOrderedPair { psi_colour: l, psi_index: j, star_colour: l, star_index: j };
            out.add_signed(pair.apply_signed(state), &rational::one());
        }
        out
    }
}

pub fn psi(colour: usize, index: i64) -> Op {
    Arc::new(Psi { colour, index })
}

pub fn psi_star(colour: usize, index: i64) -> Op {
    Arc::new(PsiStar { colour, index })
}

pub fn alpha(colour: usize, mode: i64) -> Op {
    Arc::new(Alpha { colour, mode })
}
