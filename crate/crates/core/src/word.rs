//! Operator words such as `F_1 F_0 Psi*_2(0) P_1(-2)`.
//!
//! Letters are separated by whitespace and applied rightmost first, like
//! ordinary operator composition.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::glhat::Realization;
use crate::model::{annihilation, creation, current, oscillator, Model};
use crate::operator::{compose_all, Op};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse {0:?} as an operator letter (expected E_k, F_k, H_k, L_n, P_l(n), Psi_l(k), Psi*_l(k) or alpha_l(n))")]
    Letter(String),
    #[error("empty operator word")]
    Empty,
    #[error("colour {colour} out of range 1..={s}")]
    Colour { colour: usize, s: usize },
    #[error("Chevalley index {k} out of range 0..{r}")]
    Chevalley { k: u32, r: u32 },
    #[error("r = 1 has no Chevalley generators; use loops L_n or P_1(n)")]
    NoChevalley,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    E(u32),
    F(u32),
    H(u32),
    Loop(i64),
    P(usize, i64),
    Psi(usize, i64),
    PsiStar(usize, i64),
    Alpha(usize, i64),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::E(k) => write!(f, "E_{k}"),
            Letter::F(k) => write!(f, "F_{k}"),
            Letter::H(k) => write!(f, "H_{k}"),
            Letter::Loop(n) => write!(f, "L_{n}"),
            Letter::P(l, n) => write!(f, "P_{l}({n})"),
            Letter::Psi(l, k) => write!(f, "Psi_{l}({k})"),
            Letter::PsiStar(l, k) => write!(f, "Psi*_{l}({k})"),
            Letter::Alpha(l, n) => write!(f, "alpha_{l}({n})"),
        }
    }
}

/// `"2(-3)"` → `(2, -3)`.
fn colour_and_arg(s: &str) -> Option<(usize, i64)> {
    let (l, rest) = s.split_once('(')?;
    let n = rest.strip_suffix(')')?;
    Some((l.trim().parse().ok()?, n.trim().parse().ok()?))
}

/// `"-1"`, `"(-1)"` or `"{-1}"`.
fn bare_arg<T: FromStr>(s: &str) -> Option<T> {
    let t = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| s.strip_prefix('{').and_then(|t| t.strip_suffix('}')))
        .unwrap_or(s);
    t.trim().parse().ok()
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::Letter(s.to_string());
        let with = |prefix: &str, make: fn(usize, i64) -> Letter| {
            s.strip_prefix(prefix).map(|rest| colour_and_arg(rest).map(|(l, n)| make(l, n)).ok_or_else(bad))
        };
        if let Some(r) = with("Psi*_", Letter::PsiStar)
            .or_else(|| with("Psi_", Letter::Psi))
            .or_else(|| with("alpha_", Letter::Alpha))
            .or_else(|| with("P_", Letter::P))
        {
            return r;
        }
        let (head, rest) = s.split_once('_').ok_or_else(bad)?;
        match head {
            "E" => bare_arg(rest).map(Letter::E),
            "F" => bare_arg(rest).map(Letter::F),
            "H" => bare_arg(rest).map(Letter::H),
            "L" => bare_arg(rest).map(Letter::Loop),
            _ => None,
        }
        .ok_or_else(bad)
    }
}

impl Letter {
    /// The operator this letter denotes in `real`, interpreted in `model`.
    pub fn operator(&self, real: &dyn Realization, model: Model) -> Result<Op, WordError> {
        let setup = real.setup();
        let colour = |l: usize| {
            if (1..=setup.s()).contains(&l) {
                Ok(l)
            } else {
                Err(WordError::Colour { colour: l, s: setup.s() })
            }
        };
        let chevalley = |k: u32| {
            if !setup.has_chevalley() {
                Err(WordError::NoChevalley)
            } else if k >= setup.r() {
                Err(WordError::Chevalley { k, r: setup.r() })
            } else {
                Ok(k)
            }
        };
        Ok(match *self {
            Letter::E(k) => real.e(chevalley(k)?),
            Letter::F(k) => real.f(chevalley(k)?),
            Letter::H(k) => real.h(chevalley(k)?),
            Letter::Loop(n) => real.loop_op(n),
            Letter::P(l, n) => oscillator(setup, model, colour(l)?, n),
            Letter::Psi(l, k) => creation(setup, model, colour(l)?, k),
            Letter::PsiStar(l, k) => annihilation(setup, model, colour(l)?, k),
            Letter::Alpha(l, n) => current(setup, model, colour(l)?, n),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters: Vec<Letter> = s.split_whitespace().map(str::parse).collect::<Result<_, _>>()?;
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, letter) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl Word {
    /// The composite operator, rightmost letter applied first.
    pub fn operator(&self, real: &dyn Realization, model: Model) -> Result<Op, WordError> {
        let ops: Vec<Op> = self.0.iter().map(|l| l.operator(real, model)).collect::<Result<_, _>>()?;
        Ok(compose_all(ops))
    }
}
