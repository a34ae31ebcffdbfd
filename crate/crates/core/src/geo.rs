//! Geometric operators from torus fixed-point data.
//!
//! Fixed points are [`FockState`]s. Every matrix coefficient
//! `⟨Op[I],[J]⟩` is a ratio of equivariant classes restricted to the line
//! spanned by `ε`: a (top nonvanishing) Chern class of a bundle fibre divided
//! by the tangent Euler classes `e(T_I^−) · e(T_J^+)`. Torus weights are
//! integers times `ε`, so each class is an integer multiple of a power of `ε`
//! and every coefficient comes out as an exact rational once the powers of
//! `ε` cancel. They must cancel; a leftover power is reported as an error
//! because it can only mean a bookkeeping mistake.
//!
//! All bundles used here split over colours, so coefficients are products of
//! per-colour factors. Three kinds of per-colour fibre occur:
//!
//! * [`Fibre::Diagonal`] — same charge and energy on both sides; the top class
//!   has index `n + m = 2n` and the factor is `δ_{λ,μ}`;
//! * [`Fibre::Heisenberg`] — same charge, different energies; index
//!   `n + m − 1`, multiplied by `±(R/r_ℓ)ε`;
//! * [`Fibre::Clifford`] — charge shifted by `±1`; index `n + m`.
//!
//! At an individual pair of fixed points the class with the closed-form
//! index may vanish (that is how most coefficients become zero), but no
//! higher elementary symmetric polynomial of the roots may survive; that is
//! checked on every evaluation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fock::{Affine, FockState, FockVector};
use crate::glhat::{cartan_matrix, ChevalleyIndex, RSetup, Realization};
use crate::operator::{commutator, combination, Op, Operator};
use crate::partitions::{partitions_of, relative_hook, ChargedPartition, Partition};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeoError {
    #[error("coefficient {from} -> {to} has leftover ε-degree {degree}")]
    Grading { from: String, to: String, degree: i64 },
    #[error("roots {roots:?} have a nonzero class of index {found} above the expected top index {expected}")]
    TopClass { roots: Vec<i64>, expected: usize, found: usize },
}

/// `coeff · ε^degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsMonomial {
    pub coeff: Q,
    pub degree: u32,
}

impl EpsMonomial {
    pub fn zero() -> Self {
        EpsMonomial { coeff: Q::zero(), degree: 0 }
    }

    pub fn one() -> Self {
        EpsMonomial { coeff: Q::one(), degree: 0 }
    }

    pub fn new(coeff: Q, degree: u32) -> Self {
        if coeff.is_zero() {
            EpsMonomial::zero()
        } else {
            EpsMonomial { coeff, degree }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &EpsMonomial) -> EpsMonomial {
        EpsMonomial::new(&self.coeff * &other.coeff, self.degree + other.degree)
    }

    /// `self / den` as a plain rational; the powers of `ε` must cancel.
    pub fn ratio(&self, den: &EpsMonomial) -> Result<Q, i64> {
        assert!(!den.is_zero(), "division by a zero class");
        if self.is_zero() {
            return Ok(Q::zero());
        }
        match i64::from(self.degree) - i64::from(den.degree) {
            0 => Ok(&self.coeff / &den.coeff),
            d => Err(d),
        }
    }
}

impl fmt::Display for EpsMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => write!(f, "{}", rational::fmt(&self.coeff)),
            1 => write!(f, "{}ε", rational::fmt(&self.coeff)),
            d => write!(f, "{}ε^{d}", rational::fmt(&self.coeff)),
        }
    }
}

/// Chern roots of a bundle fibre, as multiples of `ε`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChernRootSet {
    pub roots: Vec<i64>,
}

impl ChernRootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Euler class of `T^+` (or `T^−`) of one colour: `Π_b (±h(b)·scale) ε`.
fn colour_euler(scale: i64, shape: &Partition, positive: bool) -> EpsMonomial {
    let mut prod = BigInt::one();
    for b in shape.cells() {
        prod *= shape.hook(b) * scale;
    }
    let n = shape.size();
    if !positive && n % 2 == 1 {
        prod = -prod;
    }
    EpsMonomial::new(Q::from_integer(prod), n)
}

/// `e(T_I^+)` (for `positive`) or `e(T_I^−) = (−1)^{|n|} e(T_I^+)`.
pub fn tangent_euler(setup: &RSetup, st: &FockState, positive: bool) -> EpsMonomial {
    st.colours()
        .iter()
        .enumerate()
        .fold(EpsMonomial::one(), |acc, (k, cp)| acc.mul(&colour_euler(setup.scale(k + 1), &cp.shape, positive)))
}

fn colour_roots(scale: i64, from: &Partition, to: &Partition, delta: i64, out: &mut Vec<i64>) {
    for x in from.cells() {
        out.push((delta - relative_hook(from, to, x)) * scale);
    }
    for y in to.cells() {
        out.push((delta + relative_hook(to, from, y)) * scale);
    }
}

/// Roots of the fibre at `(I, J)` of the bundle with charge offset `d − c`.
pub fn chern_roots(setup: &RSetup, i: &FockState, j: &FockState, d_minus_c: &[i64]) -> ChernRootSet {
    let mut roots = Vec::new();
    for l in 1..=setup.s() {
        colour_roots(setup.scale(l), &i.colour(l).shape, &j.colour(l).shape, d_minus_c[l - 1], &mut roots);
    }
    ChernRootSet { roots }
}

/// `e_0, …, e_n` of the roots, by incremental convolution.
pub fn elementary_symmetric(roots: &ChernRootSet) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for &x in &roots.roots {
        e.push(BigInt::zero());
        for k in (1..e.len()).rev() {
            let lower = &e[k - 1] * x;
            e[k] += lower;
        }
    }
    e
}

/// The largest `k` with `e_k(roots) ≠ 0`, with that class.
pub fn top_nonvanishing(roots: &ChernRootSet) -> (usize, EpsMonomial) {
    let e = elementary_symmetric(roots);
    let k = e.iter().rposition(|x| !x.is_zero()).expect("e_0 = 1");
    (k, EpsMonomial::new(Q::from_integer(e[k].clone()), k as u32))
}

/// `e_index(roots)`, checking that no class above `index` survives.
///
/// `Π(1 + x t)` over the roots has degree equal to the number of nonzero
/// roots and leading coefficient their product, so the top class is read off
/// directly; [`elementary_symmetric`] is the slow path it agrees with.
pub fn class_at(roots: &ChernRootSet, index: usize) -> Result<EpsMonomial, GeoError> {
    let nonzero = roots.roots.iter().filter(|&&x| x != 0).count();
    match nonzero.cmp(&index) {
        std::cmp::Ordering::Greater => {
            Err(GeoError::TopClass { roots: roots.roots.clone(), expected: index, found: nonzero })
        }
        std::cmp::Ordering::Less => Ok(EpsMonomial::zero()),
        std::cmp::Ordering::Equal => {
            let prod: BigInt = roots.roots.iter().filter(|&&x| x != 0).map(|&x| BigInt::from(x)).product();
            Ok(EpsMonomial::new(Q::from_integer(prod), index as u32))
        }
    }
}

/// The bundle over one colour; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fibre {
    Diagonal,
    /// `sign` is `+1` for creation modes `P(k<0)` and `−1` for `P(k>0)`.
    Heisenberg { sign: i8 },
    /// `shift = d_ℓ − c_ℓ = ±1`.
    Clifford { shift: i64 },
}

/// Per-colour factor of `⟨Op[I],[J]⟩` between shapes `from` and `to`.
pub fn colour_factor(scale: i64, fibre: Fibre, from: &Partition, to: &Partition) -> Result<Q, GeoError> {
    let (delta, drop) = match fibre {
        Fibre::Diagonal => (0, 0),
        Fibre::Heisenberg { .. } => (0, 1),
        Fibre::Clifford { shift } => (shift, 0),
    };
    let mut roots = Vec::with_capacity((from.size() + to.size()) as usize);
    colour_roots(scale, from, to, delta, &mut roots);
    let roots = ChernRootSet { roots };
    let index = (from.size() + to.size()) as usize - drop;
    let mut num = class_at(&roots, index)?;
    if let Fibre::Heisenberg { sign } = fibre {
        num = num.mul(&EpsMonomial::new(rational::int(i64::from(sign) * scale), 1));
    }
    let den = colour_euler(scale, from, false).mul(&colour_euler(scale, to, true));
    num.ratio(&den).map_err(|degree| GeoError::Grading { from: from.to_string(), to: to.to_string(), degree })
}

type RowKey = (i64, Fibre, Partition, u32);

/// Nonzero factors `from → μ` over all `μ ⊢ energy`, memoized.
fn colour_row(scale: i64, fibre: Fibre, from: &Partition, energy: u32) -> Result<Arc<Vec<(Partition, Q)>>, GeoError> {
    static ROWS: OnceLock<RwLock<HashMap<RowKey, Arc<Vec<(Partition, Q)>>>>> = OnceLock::new();
    let rows = ROWS.get_or_init(Default::default);
    let key = (scale, fibre, from.clone(), energy);
    if let Some(hit) = rows.read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut row = Vec::new();
    for mu in partitions_of(energy).iter() {
        let x = colour_factor(scale, fibre, from, mu)?;
        if !x.is_zero() {
            row.push((mu.clone(), x));
        }
    }
    let row = Arc::new(row);
    rows.write().unwrap().insert(key, row.clone());
    Ok(row)
}

/// A geometrically defined operator: a rule for `⟨Op[I],[J]⟩`.
pub trait GeoOperator: Send + Sync {
    /// `Op[I] = Σ_J ⟨Op[I],[J]⟩ [J]`.
    fn image(&self, i: &FockState) -> Result<FockVector, GeoError>;

    /// `⟨Op[I],[J]⟩`.
    fn coefficient(&self, i: &FockState, j: &FockState) -> Result<Q, GeoError> {
        Ok(self.image(i)?.coeff(j))
    }
}

macro_rules! geo_operator {
    ($($t:ty),*) => {$(
        impl Operator for $t {
            fn apply_state(&self, state: &FockState) -> FockVector {
                self.image(state).unwrap_or_else(|e| panic!("internal error in geometric operator: {e}"))
            }
        }
    )*};
}

/// Where an elementary operator sends a source fixed point.
struct Plan {
    sign: i8,
    /// Per colour: target charge, target energy, fibre.
    targets: Vec<(i64, u32, Fibre)>,
}

/// `𝐏_ℓ(k)`, `𝚿_ℓ(k)` and `𝚿*_ℓ(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    P { colour: usize, mode: i64 },
    Psi { colour: usize, index: i64 },
    PsiStar { colour: usize, index: i64 },
}

/// An elementary geometric operator for a fixed setup.
#[derive(Debug, Clone)]
pub struct Localized {
    setup: RSetup,
    op: Elementary,
}

impl Localized {
    pub fn new(setup: &RSetup, op: Elementary) -> Self {
        Localized { setup: setup.clone(), op }
    }

    /// `None` when the target energy would be negative (the operator is zero).
    fn plan(&self, i: &FockState) -> Option<Plan> {
        let (l, charge_shift, energy_shift, fibre, sign) = match self.op {
            Elementary::P { colour, mode } => {
                let sign = if mode < 0 { 1 } else { -1 };
                (colour, 0, -mode, Fibre::Heisenberg { sign }, 1)
            }
            Elementary::Psi { colour, index } => {
                let c = i.colour(colour).charge;
                (colour, 1, index - c - 1, Fibre::Clifford { shift: 1 }, i.colour_sign(colour))
            }
            Elementary::PsiStar { colour, index } => {
                let c = i.colour(colour).charge;
                (colour, -1, c - index, Fibre::Clifford { shift: -1 }, i.colour_sign(colour))
            }
        };
        let mut targets = Vec::with_capacity(i.s());
        for (k, cp) in i.colours().iter().enumerate() {
            if k + 1 == l {
                let energy = i64::from(cp.energy()) + energy_shift;
                if energy < 0 {
                    return None;
                }
                targets.push((cp.charge + charge_shift, energy as u32, fibre));
            } else {
                targets.push((cp.charge, cp.energy(), Fibre::Diagonal));
            }
        }
        Some(Plan { sign, targets })
    }
}

impl GeoOperator for Localized {
    fn image(&self, i: &FockState) -> Result<FockVector, GeoError> {
        if let Elementary::P { colour, mode: 0 } = self.op {
            return Ok(FockVector::basis(i.clone()).scaled(&rational::int(i.colour(colour).charge)));
        }
        let Some(plan) = self.plan(i) else {
            return Ok(FockVector::zero());
        };
        let mut rows = Vec::with_capacity(plan.targets.len());
        for (k, &(_, energy, fibre)) in plan.targets.iter().enumerate() {
            let row = colour_row(self.setup.scale(k + 1), fibre, &i.colours()[k].shape, energy)?;
            if row.is_empty() {
                return Ok(FockVector::zero());
            }
            rows.push(row);
        }
        let mut out = FockVector::zero();
        let mut idx = vec![0usize; rows.len()];
        loop {
            let mut coeff = rational::int(i64::from(plan.sign));
            let mut colours = Vec::with_capacity(rows.len());
            for (k, row) in rows.iter().enumerate() {
                let (mu, x) = &row[idx[k]];
                coeff *= x;
                colours.push(ChargedPartition::new(plan.targets[k].0, mu.clone()));
            }
            out.add_term(FockState::new(colours).expect("nonempty"), coeff);
            let mut k = rows.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < rows[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn coefficient(&self, i: &FockState, j: &FockState) -> Result<Q, GeoError> {
        if let Elementary::P { colour, mode: 0 } = self.op {
            let c = i.colour(colour).charge;
            return Ok(if i == j { rational::int(c) } else { Q::zero() });
        }
        let Some(plan) = self.plan(i) else {
            return Ok(Q::zero());
        };
        let mut coeff = rational::int(i64::from(plan.sign));
        for (k, &(charge, energy, fibre)) in plan.targets.iter().enumerate() {
            let to = &j.colours()[k];
            if to.charge != charge || to.energy() != energy {
                return Ok(Q::zero());
            }
            coeff *= colour_factor(self.setup.scale(k + 1), fibre, &i.colours()[k].shape, &to.shape)?;
            if coeff.is_zero() {
                break;
            }
        }
        Ok(coeff)
    }
}

pub fn geo_p(setup: &RSetup, colour: usize, mode: i64) -> Localized {
    Localized::new(setup, Elementary::P { colour, mode })
}

pub fn geo_psi(setup: &RSetup, colour: usize, index: i64) -> Localized {
    Localized::new(setup, Elementary::Psi { colour, index })
}

pub fn geo_psi_star(setup: &RSetup, colour: usize, index: i64) -> Localized {
    Localized::new(setup, Elementary::PsiStar { colour, index })
}

/// Which diagonal Chevalley operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagKind {
    E,
    F,
    H,
}

/// `𝐄^ℓ_{k′}`, `𝐅^ℓ_{k′}`, `𝐇^ℓ_{k′}` inside colour `ℓ`.
///
/// `𝐄` and `𝐅` are `𝐏_ℓ(±1)` restricted to pairs whose dimension vectors
/// differ by one box of class `k′`; `𝐇` is diagonal with eigenvalue
/// `δ_{c_ℓ ≡ k′} − Σ_j a^ℓ_{k′j} v^ℓ_j`.
#[derive(Debug, Clone)]
pub struct DiagChevalley {
    setup: RSetup,
    colour: usize,
    sub: u32,
    kind: DiagKind,
}

impl DiagChevalley {
    pub fn new(setup: &RSetup, colour: usize, sub: u32, kind: DiagKind) -> Self {
        assert!(sub < setup.part(colour), "class {sub} out of range for r_{colour} = {}", setup.part(colour));
        DiagChevalley { setup: setup.clone(), colour, sub, kind }
    }

    fn modulus(&self) -> u32 {
        self.setup.part(self.colour)
    }

    fn admits(&self, i: &ChargedPartition, j: &ChargedPartition) -> bool {
        let (vi, vj) = (i.residue_counts(self.modulus()), j.residue_counts(self.modulus()));
        let k = self.sub as usize;
        vi.iter().zip(&vj).enumerate().all(|(idx, (&a, &b))| {
            let a = i64::from(a);
            let b = i64::from(b);
            match (self.kind, idx == k) {
                (DiagKind::E, true) => b == a - 1,
                (DiagKind::F, true) => b == a + 1,
                _ => a == b,
            }
        })
    }

    fn eigenvalue(&self, i: &FockState) -> i64 {
        let cp = i.colour(self.colour);
        let m = self.modulus();
        let v = cp.residue_counts(m);
        let a = cartan_matrix(m);
        let k = self.sub as usize;
        let delta = i64::from(cp.charge.rem_euclid(i64::from(m)) == i64::from(self.sub));
        delta - a[k].iter().zip(&v).map(|(&x, &y)| x * i64::from(y)).sum::<i64>()
    }
}

impl GeoOperator for DiagChevalley {
    fn image(&self, i: &FockState) -> Result<FockVector, GeoError> {
        let mode = match self.kind {
            DiagKind::H => return Ok(FockVector::basis(i.clone()).scaled(&rational::int(self.eigenvalue(i)))),
            DiagKind::E => 1,
            DiagKind::F => -1,
        };
        let l = self.colour;
        let all = geo_p(&self.setup, l, mode).image(i)?;
        Ok(all.restrict(|j| self.admits(i.colour(l), j.colour(l))))
    }
}

/// Extra summation steps scanned below the filled sea in same-colour sums.
pub const SEA_PAD: i64 = 2;

/// `Σ_i 𝚿_a(f(i)) 𝚿*_b(g(i))` built from the geometric Clifford operators.
///
/// The top of the window comes from the grading alone: `𝚿*_b(y)` needs a
/// nonnegative target energy, `y ≤ c_b + n_b`. For `a ≠ b` the bottom is
/// graded too (`𝚿_a(x)` needs `x ≥ c_a + 1 − n_a`). For `a = b` the grading
/// gives no lower bound, so the scan runs [`SEA_PAD`] steps past the point
/// where colour `a`'s sea is filled.
#[derive(Debug, Clone)]
pub struct GeoBilinear {
    setup: RSetup,
    psi_colour: usize,
    psi: Affine,
    star_colour: usize,
    star: Affine,
    pad: i64,
}

impl GeoBilinear {
    pub fn new(setup: &RSetup, psi_colour: usize, psi: Affine, star_colour: usize, star: Affine) -> Self {
        GeoBilinear { setup: setup.clone(), psi_colour, psi, star_colour, star, pad: SEA_PAD }
    }

    /// The same sum with a different same-colour scan depth.
    pub fn with_pad(mut self, pad: i64) -> Self {
        self.pad = pad;
        self
    }

    pub fn window(&self, i: &FockState) -> std::ops::RangeInclusive<i64> {
        let b = i.colour(self.star_colour);
        let hi = self.star.last_at_most(b.charge + i64::from(b.energy()));
        let a = i.colour(self.psi_colour);
        let lo = if self.psi_colour != self.star_colour {
            self.psi.first_at_least(a.charge + 1 - i64::from(a.energy()))
        } else {
            self.psi.first_at_least(a.sea_level() + 1) - self.pad
        };
        lo..=hi
    }
}

impl GeoOperator for GeoBilinear {
    fn image(&self, i: &FockState) -> Result<FockVector, GeoError> {
        let mut out = FockVector::zero();
        for k in self.window(i) {
            let mid = geo_psi_star(&self.setup, self.star_colour, self.star.at(k)).image(i)?;
            let outer = geo_psi(&self.setup, self.psi_colour, self.psi.at(k));
            for (st, c) in mid.iter() {
                out.add_scaled(&outer.image(st)?, c);
            }
        }
        Ok(out)
    }
}

geo_operator!(Localized, DiagChevalley, GeoBilinear);

/// The operators `𝐄_k, 𝐅_k, 𝐇_k` and loops assembled from fixed-point data.
#[derive(Debug, Clone)]
pub struct Geometric {
    setup: RSetup,
}

impl Geometric {
    pub fn new(setup: RSetup) -> Self {
        Geometric { setup }
    }

    /// `𝐄′_i` / `𝐅′_i`, with `i = 0` joining colour `s` back to colour `1`.
    pub fn offdiag(&self, i: usize, raising: bool) -> GeoBilinear {
        let st = &self.setup;
        let part = |l: usize| i64::from(st.part(l));
        let (a, f, b, g) = if i == 0 {
            let s = st.s();
            (s, Affine::new(part(s), 0), 1, Affine::new(part(1), 1))
        } else {
            (i, Affine::new(part(i), part(i)), i + 1, Affine::new(part(i + 1), 1))
        };
        if raising {
            GeoBilinear::new(st, a, f, b, g)
        } else {
            GeoBilinear::new(st, b, g, a, f)
        }
    }

    fn chevalley(&self, k: u32, kind: DiagKind) -> Op {
        assert!(self.setup.has_chevalley(), "ĝl_1 has no Chevalley generators");
        let ChevalleyIndex { colour, sub, .. } = self.setup.decompose(k);
        if sub != 0 {
            return Arc::new(DiagChevalley::new(&self.setup, colour, sub, kind));
        }
        let i = if colour == 1 { 0 } else { colour - 1 };
        match kind {
            DiagKind::E => Arc::new(self.offdiag(i, true)),
            DiagKind::F => Arc::new(self.offdiag(i, false)),
            DiagKind::H => commutator(Arc::new(self.offdiag(i, true)), Arc::new(self.offdiag(i, false))),
        }
    }
}

impl Realization for Geometric {
    fn setup(&self) -> &RSetup {
        &self.setup
    }

    fn e(&self, k: u32) -> Op {
        self.chevalley(k, DiagKind::E)
    }

    fn f(&self, k: u32) -> Op {
        self.chevalley(k, DiagKind::F)
    }

    fn h(&self, k: u32) -> Op {
        self.chevalley(k, DiagKind::H)
    }

    fn h_is_commutator(&self, k: u32) -> bool {
        self.setup.decompose(k).sub == 0
    }

    /// `I ⊗ t^n ↦ |n| Σ_ℓ r_ℓ 𝐏_ℓ(n r_ℓ)` and `I ⊗ 1 ↦ Σ_ℓ 𝐏_ℓ(0)`.
    fn loop_op(&self, n: i64) -> Op {
        let st = &self.setup;
        let terms = (1..=st.s())
            .map(|l| {
                let rl = i64::from(st.part(l));
                let weight = if n == 0 { 1 } else { n.abs() * rl };
                (rational::int(weight), Arc::new(geo_p(st, l, n * rl)) as Op)
            })
            .collect();
        combination(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{psi, psi_star};
    use crate::partitions::part;
    use crate::rational::{frac, int};

    fn setup(parts: &[u32]) -> RSetup {
        RSetup::new(parts.to_vec()).unwrap()
    }

    fn st(s: &str) -> FockState {
        s.parse().unwrap()
    }

    fn roots(v: &[i64]) -> ChernRootSet {
        ChernRootSet { roots: v.to_vec() }
    }

    #[test]
    fn tangent_euler_examples() {
        let s1 = setup(&[1]);
        assert_eq!(tangent_euler(&s1, &FockState::vacuum(1), true), EpsMonomial::one());
        assert_eq!(tangent_euler(&s1, &st("0:[1]"), true), EpsMonomial::new(int(1), 1));
        assert_eq!(tangent_euler(&s1, &st("0:[1]"), false), EpsMonomial::new(int(-1), 1));
        assert_eq!(tangent_euler(&s1, &st("0:[2]"), true), EpsMonomial::new(int(2), 2));
        // Weights scale by R/r_ℓ: for (1,2), R = 4 so colour 1 scales by 4.
        let s12 = setup(&[1, 2]);
        assert_eq!(tangent_euler(&s12, &st("0:[1] | 0:[1]"), true), EpsMonomial::new(int(8), 2));
    }

    #[test]
    fn chern_root_examples() {
        let s1 = setup(&[1]);
        let vac = FockState::vacuum(1);
        assert!(chern_roots(&s1, &vac, &vac, &[0]).is_empty());
        assert_eq!(chern_roots(&s1, &vac, &st("0:[1]"), &[0]), roots(&[0]));
        assert_eq!(chern_roots(&s1, &vac, &st("0:[2]"), &[0]), roots(&[1, 0]));
    }

    #[test]
    fn top_nonvanishing_examples() {
        assert_eq!(top_nonvanishing(&roots(&[])), (0, EpsMonomial::one()));
        assert_eq!(top_nonvanishing(&roots(&[1, 0])), (1, EpsMonomial::new(int(1), 1)));
        assert_eq!(top_nonvanishing(&roots(&[0, -1])), (1, EpsMonomial::new(int(-1), 1)));
        assert_eq!(elementary_symmetric(&roots(&[1, 2, 3])), vec![1, 6, 11, 6].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn class_at_agrees_with_convolution() {
        let samples: [&[i64]; 6] = [&[], &[0], &[3, 0, -2], &[1, -1], &[0, 0, 5], &[2, 2, 2, 0]];
        for r in samples {
            let rs = roots(r);
            let e = elementary_symmetric(&rs);
            let (top, _) = top_nonvanishing(&rs);
            for index in 0..=r.len() {
                match class_at(&rs, index) {
                    Ok(m) => {
                        assert!(index >= top);
                        assert_eq!(m.coeff, Q::from_integer(e[index].clone()));
                    }
                    Err(_) => assert!(index < top),
                }
            }
        }
    }

    #[test]
    fn geo_p_examples() {
        let s1 = setup(&[1]);
        let vac = FockState::vacuum(1);
        assert_eq!(geo_p(&s1, 1, -1).coefficient(&vac, &st("0:[1]")).unwrap(), int(1));
        assert_eq!(geo_p(&s1, 1, -2).coefficient(&vac, &st("0:[2]")).unwrap(), frac(1, 2));
        assert_eq!(geo_p(&s1, 1, -2).coefficient(&vac, &st("0:[1,1]")).unwrap(), frac(-1, 2));
        assert_eq!(geo_p(&s1, 1, -2).image(&vac).unwrap().to_string(), "{(0:[1,1]): -1/2, (0:[2]): 1/2}");
        let s = st("3:[2,1]");
        assert_eq!(geo_p(&s1, 1, 0).image(&s).unwrap(), FockVector::basis(s.clone()).scaled(&int(3)));
        assert_eq!(geo_p(&s1, 1, 1).image(&st("0:[1]")).unwrap(), FockVector::basis(vac));
    }

    #[test]
    fn geo_psi_examples() {
        let s1 = setup(&[1]);
        let vac = FockState::vacuum(1);
        assert_eq!(geo_psi(&s1, 1, 1).image(&vac).unwrap(), FockVector::basis(st("1:[]")));
        assert_eq!(geo_psi_star(&s1, 1, -1).image(&vac).unwrap(), FockVector::basis(st("-1:[1]")).scaled(&int(-1)));
        assert_eq!(geo_psi(&s1, 1, -1).image(&st("-1:[1]")).unwrap(), FockVector::basis(vac.clone()).scaled(&int(-1)));
        assert!(geo_psi_star(&s1, 1, 5).image(&vac).unwrap().is_zero());
    }

    #[test]
    fn geo_psi_matches_wedging_on_small_states() {
        for parts in [&[1][..], &[2], &[1, 2]] {
            let su = setup(parts);
            let s = su.s();
            let states: Vec<FockState> = crate::verify::enumerate_basis(&su, &crate::verify::Truncation::new(3, 1, 0));
            for l in 1..=s {
                for idx in -4..=4 {
                    for x in &states {
                        assert_eq!(geo_psi(&su, l, idx).image(x).unwrap(), psi(l, idx).apply_state(x), "Ψ_{l}({idx}) on {x}");
                        assert_eq!(
                            geo_psi_star(&su, l, idx).image(x).unwrap(),
                            psi_star(l, idx).apply_state(x),
                            "Ψ*_{l}({idx}) on {x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn diag_examples() {
        let s2 = setup(&[2]);
        let vac = FockState::vacuum(1);
        let op = |sub, kind| DiagChevalley::new(&s2, 1, sub, kind);
        assert_eq!(op(0, DiagKind::F).image(&vac).unwrap(), FockVector::basis(st("0:[1]")));
        assert_eq!(op(0, DiagKind::H).image(&vac).unwrap(), FockVector::basis(vac.clone()));
        assert!(op(1, DiagKind::H).image(&vac).unwrap().is_zero());
        assert!(op(1, DiagKind::E).image(&st("0:[1]")).unwrap().is_zero());
        assert_eq!(op(0, DiagKind::E).image(&st("0:[1]")).unwrap(), FockVector::basis(vac));
    }

    #[test]
    fn offdiag_examples() {
        let s11 = setup(&[1, 1]);
        let geo = Geometric::new(s11.clone());
        let vac = FockState::vacuum(2);
        assert!(geo.offdiag(1, true).image(&vac).unwrap().is_zero());
        let f0 = geo.offdiag(0, false).image(&vac).unwrap();
        let expected = FockState::vacuum(2).contract(2, 0).unwrap().then(|x| x.wedge(1, 1));
        assert_eq!(f0, FockVector::from_signed(expected));
        assert!(geo.h(1).apply_state(&vac).is_zero());
        assert_eq!(geo.h(0).apply_state(&vac), FockVector::basis(vac.clone()));
    }

    #[test]
    fn assembled_loops() {
        let s1 = setup(&[1]);
        let geo = Geometric::new(s1);
        assert_eq!(geo.loop_op(-1).apply_state(&FockState::vacuum(1)), FockVector::basis(st("0:[1]")));
        let s12 = setup(&[1, 2]);
        let x = st("2:[1] | -1:[]");
        assert_eq!(Geometric::new(s12).loop_op(0).apply_state(&x), FockVector::basis(x.clone()));
        assert_eq!(colour_factor(1, Fibre::Diagonal, &part(&[2]), &part(&[1, 1])).unwrap(), Q::zero());
        assert_eq!(colour_factor(3, Fibre::Diagonal, &part(&[2, 1]), &part(&[2, 1])).unwrap(), Q::one());
    }
}
