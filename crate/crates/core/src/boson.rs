//! The bosonic Fock space `𝔹 = (Λ ⊗ ℂ[q, q⁻¹])^{⊗s}` in the power-sum basis,
//! symmetric-group characters, and the boson–fermion correspondence
//! `s_λ ⊗ q^c ↦ (c:λ)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fock::{FockState, FockVector};
use crate::partitions::{partitions_of, ChargedPartition, Partition, PartitionError};
use crate::rational::{self, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BosonError {
    #[error("cannot parse {0:?} as a power monomial like q^0 * p[2,1]")]
    BadMonomial(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// `Π_ℓ q_ℓ^{c_ℓ} p_{μ^ℓ}`: one charge and one power-sum partition per colour.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerMonomial {
    colours: Vec<(i64, Partition)>,
}

impl PowerMonomial {
    pub fn new(colours: Vec<(i64, Partition)>) -> Self {
        assert!(!colours.is_empty(), "a monomial needs at least one colour");
        PowerMonomial { colours }
    }

    /// The constant `1` at charge zero in every colour.
    pub fn one(s: usize) -> Self {
        PowerMonomial::new(vec![(0, Partition::empty()); s])
    }

    pub fn colours(&self) -> &[(i64, Partition)] {
        &self.colours
    }

    pub fn s(&self) -> usize {
        self.colours.len()
    }

    fn with_colour(&self, l: usize, mu: Partition) -> PowerMonomial {
        let mut colours = self.colours.clone();
        colours[l - 1].1 = mu;
        PowerMonomial { colours }
    }
}

impl fmt::Display for PowerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, mu)) in self.colours.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "q^{c} * p{mu}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PowerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PowerMonomial {
    type Err = BosonError;

    /// Parses `q^c * p[μ]` per colour, colours separated by `|`. Either factor
    /// may be omitted (`p[2]` means charge 0, `q^1` means `p[]`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BosonError::BadMonomial(s.to_string());
        let mut colours = Vec::new();
        for piece in s.split('|') {
            let (mut charge, mut mu) = (0i64, Partition::empty());
            for factor in piece.split('*').map(str::trim) {
                if let Some(c) = factor.strip_prefix("q^") {
                    charge = c.trim().parse().map_err(|_| bad())?;
                } else if let Some(p) = factor.strip_prefix('p') {
                    // Power sums multiply, so any part order is accepted.
                    let raw: Vec<u32> = p
                        .trim()
                        .strip_prefix('[')
                        .and_then(|t| t.strip_suffix(']'))
                        .ok_or_else(bad)?
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<u32>().map_err(|_| bad()))
                        .collect::<Result<_, _>>()?;
                    if raw.contains(&0) {
                        return Err(bad());
                    }
                    mu = Partition::from_parts(raw);
                } else if factor != "1" {
                    return Err(bad());
                }
            }
            colours.push((charge, mu));
        }
        Ok(PowerMonomial::new(colours))
    }
}

/// A finite combination of power monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BosonVector {
    terms: BTreeMap<PowerMonomial, Q>,
}

impl BosonVector {
    pub fn zero() -> Self {
        BosonVector::default()
    }

    pub fn monomial(m: PowerMonomial) -> Self {
        let mut v = BosonVector::zero();
        v.add_term(m, rational::one());
        v
    }

    pub fn add_term(&mut self, m: PowerMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &BosonVector, c: &Q) {
        for (m, x) in other.iter() {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PowerMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PowerMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for BosonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({m}): {}", rational::fmt(c))?;
        }
        f.write_str("}")
    }
}

impl FromStr for BosonVector {
    type Err = BosonError;

    /// Parses the printed form `{(q^0 * p[2]): 1/2}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = rational::parse_combination(s).map_err(|_| BosonError::BadMonomial(s.to_string()))?;
        let mut v = BosonVector::zero();
        for (m, c) in terms {
            v.add_term(m.parse()?, c);
        }
        Ok(v)
    }
}

impl fmt::Debug for BosonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<(PowerMonomial, Q)> for BosonVector {
    fn from_iter<T: IntoIterator<Item = (PowerMonomial, Q)>>(iter: T) -> Self {
        let mut v = BosonVector::zero();
        for (m, c) in iter {
            v.add_term(m, c);
        }
        v
    }
}

/// The oscillator `P_ℓ(n)` on `𝔹`: `∂/∂p_n` for `n > 0`, multiplication by
/// `p_{|n|}/|n|` for `n < 0`, and the charge `c_ℓ` for `n = 0`.
pub fn p_action(l: usize, n: i64, v: &BosonVector) -> BosonVector {
    let mut out = BosonVector::zero();
    for (m, c) in v.iter() {
        let (charge, mu) = &m.colours[l - 1];
        match n.cmp(&0) {
            std::cmp::Ordering::Equal => out.add_term(m.clone(), c * rational::int(*charge)),
            std::cmp::Ordering::Greater => {
                let part = n as u32;
                let mult = mu.multiplicity(part);
                if mult > 0 {
                    let mut rest: Vec<u32> = mu.rows().to_vec();
                    let at = rest.iter().position(|&r| r == part).expect("part is present");
                    rest.remove(at);
                    out.add_term(m.with_colour(l, Partition::from_parts(rest)), c * rational::int(mult as i64));
                }
            }
            std::cmp::Ordering::Less => {
                let part = n.unsigned_abs() as u32;
                let grown = Partition::from_parts(mu.rows().iter().copied().chain([part]));
                out.add_term(m.with_colour(l, grown), c * rational::frac(1, -n));
            }
        }
    }
    out
}

/// `z_μ = Π_k k^{m_k} m_k!`, the centralizer order of cycle type `μ`.
pub fn z(mu: &Partition) -> BigInt {
    let mut out = BigInt::one();
    let mut k = 0;
    while k < mu.len() {
        let part = mu.rows()[k];
        let mult = mu.multiplicity(part);
        for m in 1..=mult {
            out *= BigInt::from(part) * BigInt::from(m);
        }
        k += mult;
    }
    out
}

/// The irreducible character `χ^λ(μ)` of `S_n`, by the Murnaghan–Nakayama
/// rule. Zero unless `|λ| = |μ|`. Values are memoized.
pub fn character(lambda: &Partition, mu: &Partition) -> BigInt {
    if lambda.size() != mu.size() {
        return BigInt::zero();
    }
    static MEMO: OnceLock<RwLock<HashMap<(Partition, Partition), BigInt>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = memo.read().unwrap().get(&key) {
        return v.clone();
    }
    let value = if mu.is_empty() {
        BigInt::one()
    } else {
        let rest = Partition::from_parts(mu.rows()[1..].iter().copied());
        let mut acc = BigInt::zero();
        for (smaller, height) in remove_ribbons(lambda, mu.rows()[0]) {
            let term = character(&smaller, &rest);
            if height % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    };
    memo.write().unwrap().insert(key, value.clone());
    value
}

/// All ways of removing a border strip of `size` boxes from `λ`, with the
/// strip height (rows spanned minus one).
///
/// Works on the beta-set `{λ_i + L − i}`: removing a strip is sliding one bead
/// down by `size` into an empty slot, and the height counts the beads jumped.
fn remove_ribbons(lambda: &Partition, size: u32) -> Vec<(Partition, u32)> {
    let len = lambda.len() as i64;
    let beads: Vec<i64> = (1..=len).map(|i| i64::from(lambda.row(i as u32)) + len - i).collect();
    let size = i64::from(size);
    let mut out = Vec::new();
    for &b in &beads {
        let target = b - size;
        if target < 0 || beads.contains(&target) {
            continue;
        }
        let height = beads.iter().filter(|&&x| target < x && x < b).count() as u32;
        let mut moved: Vec<i64> = beads.iter().map(|&x| if x == b { target } else { x }).collect();
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let rows = moved.iter().enumerate().map(|(k, &x)| (x - (len - 1 - k as i64)) as u32);
        out.push((Partition::from_parts(rows), height));
    }
    out
}

/// `s_λ = Σ_μ χ^λ(μ)/z_μ · p_μ`, as `(μ, coefficient)` pairs with nonzero
/// coefficients.
pub fn schur_to_powersum(lambda: &Partition) -> Vec<(Partition, Q)> {
    partitions_of(lambda.size())
        .iter()
        .filter_map(|mu| {
            let chi = character(lambda, mu);
            (!chi.is_zero()).then(|| (mu.clone(), Q::new(chi, z(mu))))
        })
        .collect()
}

/// `p_μ = Σ_λ χ^λ(μ) s_λ`.
pub fn powersum_to_schur(mu: &Partition) -> Vec<(Partition, Q)> {
    partitions_of(mu.size())
        .iter()
        .filter_map(|lambda| {
            let chi = character(lambda, mu);
            (!chi.is_zero()).then(|| (lambda.clone(), Q::from_integer(chi)))
        })
        .collect()
}

/// Tensor product of per-colour expansions.
fn expand<T: Clone, U>(factors: &[Vec<(T, Q)>], mut emit: impl FnMut(Vec<T>, Q) -> U) {
    let mut idx = vec![0usize; factors.len()];
    if factors.iter().any(Vec::is_empty) {
        return;
    }
    loop {
        let mut coeff = rational::one();
        let mut picks = Vec::with_capacity(factors.len());
        for (f, &i) in factors.iter().zip(&idx) {
            coeff *= &f[i].1;
            picks.push(f[i].0.clone());
        }
        emit(picks, coeff);
        let mut k = factors.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < factors[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The boson–fermion map `𝔹 → 𝔽`.
pub fn bf_to_fermion(v: &BosonVector) -> FockVector {
    let mut out = FockVector::zero();
    for (m, c) in v.iter() {
        let factors: Vec<Vec<((i64, Partition), Q)>> = m
            .colours()
            .iter()
            .map(|(charge, mu)| powersum_to_schur(mu).into_iter().map(|(lam, x)| ((*charge, lam), x)).collect())
            .collect();
        expand(&factors, |picks, x| {
            let colours = picks.into_iter().map(|(charge, lam)| ChargedPartition::new(charge, lam)).collect();
            out.add_term(FockState::new(colours).expect("nonempty"), x * c);
        });
    }
    out
}

/// The inverse map `𝔽 → 𝔹`.
pub fn bf_to_boson(w: &FockVector) -> BosonVector {
    let mut out = BosonVector::zero();
    for (st, c) in w.iter() {
        let factors: Vec<Vec<((i64, Partition), Q)>> = st
            .colours()
            .iter()
            .map(|cp| schur_to_powersum(&cp.shape).into_iter().map(|(mu, x)| ((cp.charge, mu), x)).collect())
            .collect();
        expand(&factors, |picks, x| out.add_term(PowerMonomial::new(picks), x * c));
    }
    out
}
