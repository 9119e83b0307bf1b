use std::collections::HashMap;

use num_traits::One;

use super::TensorElem;
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMethod {
    /// `rho(iwj) = i·rho(wj) − j·rho(iw)`.
    Recursive,
    /// `rho(w) = |w|·w − Σ rho(u) ⧢ v` over splits `w = uv` with both parts nonempty.
    ViaD,
}

fn r_word(d: u32, w: &Word) -> TensorElem {
    let letters = w.letters();
    let Some((&last, init)) = letters.split_last() else {
        return TensorElem::zero(d);
    };
    let mut acc = TensorElem::from_word(d, Word::letter(last)).expect("letter in alphabet");
    for &l in init.iter().rev() {
        let li = TensorElem::from_word(d, Word::letter(l)).expect("letter in alphabet");
        acc = li.lie_bracket(&acc).expect("same alphabet");
    }
    acc
}

struct RhoCache {
    d: u32,
    method: RhoMethod,
    memo: HashMap<Word, TensorElem>,
}

impl RhoCache {
    fn get(&mut self, w: &Word) -> TensorElem {
        if w.len() <= 1 {
            return if w.is_empty() {
                TensorElem::zero(self.d)
            } else {
                TensorElem::from_word(self.d, w.clone()).expect("letter in alphabet")
            };
        }
        if let Some(x) = self.memo.get(w) {
            return x.clone();
        }
        let x = match self.method {
            RhoMethod::Recursive => self.recursive(w),
            RhoMethod::ViaD => self.via_d(w),
        };
        self.memo.insert(w.clone(), x.clone());
        x
    }

    fn recursive(&mut self, w: &Word) -> TensorElem {
        let n = w.len();
        let i = Word::letter(w.letters()[0]);
        let j = Word::letter(w.letters()[n - 1]);
        let mut out = TensorElem::zero(self.d);
        for (u, c) in self.get(&w.slice(1, n)).terms {
            out.add_term(i.concat(&u), c);
        }
        for (u, c) in self.get(&w.slice(0, n - 1)).terms {
            out.add_term(j.concat(&u), -c);
        }
        out
    }

    fn via_d(&mut self, w: &Word) -> TensorElem {
        let n = w.len();
        let mut out = TensorElem::zero(self.d);
        out.add_term(w.clone(), int(n as i64));
        for k in 1..n {
            let left = self.get(&w.slice(0, k));
            let right = TensorElem::from_word(self.d, w.slice(k, n)).expect("subword in alphabet");
            out -= &left.shuffle(&right).expect("same alphabet");
        }
        out
    }
}

impl TensorElem {
    /// Right-nested bracketing `r(l₁…lₙ) = [l₁,[l₂,…[lₙ₋₁,lₙ]]]`, `r(e) = 0`.
    pub fn dynkin_r(&self) -> TensorElem {
        let d = self.d;
        self.map_linear(|w| r_word(d, w))
    }

    /// The adjoint of `dynkin_r` for the word pairing.
    pub fn rho(&self, method: RhoMethod) -> TensorElem {
        let mut cache = RhoCache { d: self.d, method, memo: HashMap::new() };
        self.map_linear(|w| cache.get(w))
    }

    /// `D(w) = |w|·w`.
    pub fn grading_d(&self) -> TensorElem {
        let mut out = TensorElem::zero(self.d);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * int(w.len() as i64));
        }
        out
    }

    /// Inverse of `D` on elements without an `e` component.
    pub fn grading_d_inv(&self) -> Result<TensorElem> {
        if self.has_empty_component() {
            return Err(Error::EmptyWordComponent { op: "grading_d_inv" });
        }
        let mut out = TensorElem::zero(self.d);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c / int(w.len() as i64));
        }
        Ok(out)
    }
}

/// Dynkin test for a Lie element truncated at `level`: no `e` component and
/// `r(x) = D(x)` on every level up to `level`.
pub fn is_lie(x: &TensorElem, level: usize) -> bool {
    let x = x.truncate(level);
    !x.has_empty_component() && x.dynkin_r() == x.grading_d()
}

/// The grouplike element `g` (truncated at `level`) with `r(g) = x`, built as
/// `Σ_ℓ A_x^ℓ e` with `A_x z = D⁻¹(x·z)`, one level at a time.
pub fn invert_r(x: &TensorElem, level: usize) -> Result<TensorElem> {
    let d = x.alphabet();
    let x = x.truncate(level);
    if x.has_empty_component() {
        return Err(Error::NotLie("nonzero empty-word coefficient".into()));
    }
    if x.dynkin_r() != x.grading_d() {
        return Err(Error::NotLie("r(x) differs from D(x)".into()));
    }
    let xs: Vec<TensorElem> = (0..=level).map(|m| x.proj(m)).collect();
    let mut gs = vec![TensorElem::unit(d)];
    for n in 1..=level {
        let mut acc = TensorElem::zero(d);
        for m in 1..=n {
            acc += &xs[m].concat(&gs[n - m])?;
        }
        gs.push(acc.scale(&(Scalar::one() / int(n as i64))));
    }
    let mut g = TensorElem::zero(d);
    for part in &gs {
        g += part;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn t(d: u32, s: &str) -> TensorElem {
        TensorElem::parse(d, s).unwrap()
    }

    #[test]
    fn r_examples() {
        assert_eq!(t(2, "12").dynkin_r(), t(2, "12 - 21"));
        assert!(t(2, "e").dynkin_r().is_zero());
        assert_eq!(t(3, "123").dynkin_r(), t(3, "123 - 132 - 231 + 321"));
    }

    #[test]
    fn rho_examples_both_methods() {
        for m in [RhoMethod::Recursive, RhoMethod::ViaD] {
            assert_eq!(t(2, "12").rho(m), t(2, "12 - 21"));
            assert_eq!(t(2, "112").rho(m), t(2, "112 - 121"));
            assert_eq!(t(2, "1122").rho(m), t(2, "-1212 + 1221 - 2112 + 2121"));
            assert!(t(2, "e").rho(m).is_zero());
            assert_eq!(t(2, "2").rho(m), t(2, "2"));
        }
    }

    #[test]
    fn grading_examples() {
        assert_eq!(t(2, "12").grading_d(), t(2, "2 12"));
        assert_eq!(t(2, "2 12").grading_d_inv().unwrap(), t(2, "12"));
        assert_eq!(t(2, "1 + 12").grading_d(), t(2, "1 + 2 12"));
        assert!(t(2, "e").grading_d_inv().is_err());
    }

    #[test]
    fn invert_r_examples() {
        let g = invert_r(&t(2, "1"), 3).unwrap();
        assert_eq!(g, t(2, "e + 1 + 1/2 11 + 1/6 111"));
        assert_eq!(invert_r(&TensorElem::zero(2), 4).unwrap(), TensorElem::unit(2));
        assert!(matches!(invert_r(&t(2, "12"), 3), Err(Error::NotLie(_))));
        assert!(matches!(invert_r(&t(2, "e + 1"), 3), Err(Error::NotLie(_))));
    }
}
