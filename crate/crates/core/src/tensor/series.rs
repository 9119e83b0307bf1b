use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::TensorElem;
use crate::error::{Error, Result};
use crate::scalar::{factorial, int, Scalar};
use crate::word::{Letter, Word};

/// Finite combination of `a ⊗ b` pairs of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductTerms {
    d: u32,
    pairs: BTreeMap<(Word, Word), Scalar>,
}

impl CoproductTerms {
    pub fn alphabet(&self) -> u32 {
        self.d
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn coeff(&self, a: &Word, b: &Word) -> Scalar {
        self.pairs.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `⟨a ⊗ b, Δ⟩ = Σ a_u b_v Δ_{u,v}`.
    pub fn pair_with(&self, a: &TensorElem, b: &TensorElem) -> Scalar {
        let mut acc = Scalar::zero();
        for ((u, v), c) in &self.pairs {
            acc += c * a.coeff(u) * b.coeff(v);
        }
        acc
    }

    /// `Σ c · f(u) · g(v)` with concatenation in the middle.
    pub fn contract(&self, f: impl Fn(&TensorElem) -> TensorElem, g: impl Fn(&TensorElem) -> TensorElem) -> TensorElem {
        let mut out = TensorElem::zero(self.d);
        for ((u, v), c) in &self.pairs {
            let fu = f(&TensorElem::from_word(self.d, u.clone()).expect("word in alphabet"));
            let gv = g(&TensorElem::from_word(self.d, v.clone()).expect("word in alphabet"));
            out.add_scaled(&fu.concat(&gv).expect("same alphabet"), c);
        }
        out
    }
}

/// Every split of the positions of `w` into two complementary subsequences.
fn unshuffle_word(w: &[Letter]) -> Vec<(Word, Word)> {
    let n = w.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (k, &l) in w.iter().enumerate() {
            if mask >> k & 1 == 1 {
                a.push(l);
            } else {
                b.push(l);
            }
        }
        out.push((Word::new(a), Word::new(b)));
    }
    out
}

fn alternating(n: usize) -> Scalar {
    let s = if n % 2 == 1 { 1 } else { -1 };
    int(s) / int(n as i64)
}

impl TensorElem {
    /// `α(w) = (−1)^{|w|} · reverse(w)`.
    pub fn antipode(&self) -> TensorElem {
        let mut out = TensorElem::zero(self.d);
        for (w, c) in &self.terms {
            let c = if w.len() % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(w.reversed(), c);
        }
        out
    }

    /// The unshuffle coproduct.
    pub fn unshuffle(&self) -> CoproductTerms {
        let mut pairs: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
        for (w, c) in &self.terms {
            for key in unshuffle_word(w.letters()) {
                *pairs.entry(key).or_insert_with(Scalar::zero) += c;
            }
        }
        pairs.retain(|_, c| !c.is_zero());
        CoproductTerms { d: self.d, pairs }
    }

    /// Eulerian idempotent: the logarithm of the identity under the
    /// convolution built from unshuffle and concatenation.
    pub fn pi1(&self) -> TensorElem {
        let d = self.d;
        let mut memo: HashMap<(Word, usize), TensorElem> = HashMap::new();
        self.map_linear(|w| {
            let mut out = TensorElem::zero(d);
            for n in 1..=w.len() {
                out.add_scaled(&convolution_power(d, w, n, &mut memo), &alternating(n));
            }
            out
        })
    }

    /// Adjoint of `pi1`: alternating sum of shuffles of the pieces of every
    /// deconcatenation into nonempty factors.
    pub fn pi1_transpose(&self) -> TensorElem {
        let d = self.d;
        self.map_linear(|w| {
            let len = w.len();
            // by_start[i][n]: shuffles of compositions of w[i..] into n pieces
            let mut by_start: Vec<Vec<TensorElem>> = vec![Vec::new(); len + 1];
            by_start[len] = vec![TensorElem::unit(d)];
            for i in (0..len).rev() {
                let mut row = vec![TensorElem::zero(d); len - i + 1];
                for (k, tails) in by_start.iter().enumerate().skip(i + 1) {
                    let head = TensorElem::from_word(d, w.slice(i, k)).expect("subword in alphabet");
                    for (m, tail) in tails.iter().enumerate() {
                        if tail.is_zero() {
                            continue;
                        }
                        row[m + 1] += &head.shuffle(tail).expect("same alphabet");
                    }
                }
                by_start[i] = row;
            }
            let mut out = TensorElem::zero(d);
            if len == 0 {
                return out;
            }
            for (n, part) in by_start[0].iter().enumerate().skip(1) {
                out.add_scaled(part, &alternating(n));
            }
            out
        })
    }

    /// Truncated exponential for the concatenation product.
    pub fn exp_conc(&self, level: usize) -> Result<TensorElem> {
        if self.has_empty_component() {
            return Err(Error::Precondition("exp_conc needs a zero empty-word coefficient".into()));
        }
        let x = self.truncate(level);
        let mut out = TensorElem::unit(self.d);
        let mut power = TensorElem::unit(self.d);
        for k in 1..=level {
            power = power.concat(&x)?.truncate(level);
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &(Scalar::one() / factorial(k)));
        }
        Ok(out)
    }

    /// Truncated logarithm for the concatenation product.
    pub fn log_conc(&self, level: usize) -> Result<TensorElem> {
        if !self.empty_coeff().is_one() {
            return Err(Error::Precondition("log_conc needs empty-word coefficient 1".into()));
        }
        let y = &self.truncate(level) - &TensorElem::unit(self.d);
        let mut out = TensorElem::zero(self.d);
        let mut power = TensorElem::unit(self.d);
        for k in 1..=level {
            power = power.concat(&y)?.truncate(level);
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &alternating(k));
        }
        Ok(out)
    }
}

/// `Σ` over ordered splits of the positions of `w` into `n` nonempty blocks of
/// the concatenated block subsequences.
fn convolution_power(d: u32, w: &Word, n: usize, memo: &mut HashMap<(Word, usize), TensorElem>) -> TensorElem {
    if w.is_empty() || n == 0 || n > w.len() {
        return TensorElem::zero(d);
    }
    if n == 1 {
        return TensorElem::from_word(d, w.clone()).expect("word in alphabet");
    }
    if let Some(x) = memo.get(&(w.clone(), n)) {
        return x.clone();
    }
    let mut out = TensorElem::zero(d);
    for (a, b) in unshuffle_word(w.letters()) {
        if a.is_empty() || b.is_empty() {
            continue;
        }
        for (v, c) in convolution_power(d, &b, n - 1, memo).terms {
            out.add_term(a.concat(&v), c);
        }
    }
    memo.insert((w.clone(), n), out.clone());
    out
}
