//! Finite linear combinations of words with exact rational coefficients.
//!
//! The same type represents polynomials in the tensor algebra, elements of the
//! shuffle algebra, and level-truncated series. Terms are kept in canonical
//! word order (length, then lexicographic) and zero coefficients are never
//! stored.

mod dynkin;
mod products;
mod series;

pub use dynkin::{invert_r, is_lie, RhoMethod};
pub use series::CoproductTerms;


use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::word::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElem {
    d: u32,
    terms: BTreeMap<Word, Scalar>,
}

/// One entry of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub word: String,
    pub num: String,
    pub den: String,
}

impl TensorElem {
    pub fn zero(d: u32) -> Self {
        TensorElem { d, terms: BTreeMap::new() }
    }

    /// The empty word `e`.
    pub fn unit(d: u32) -> Self {
        let mut x = Self::zero(d);
        x.terms.insert(Word::empty(), Scalar::one());
        x
    }

    pub fn from_word(d: u32, w: Word) -> Result<Self> {
        w.check_alphabet(d)?;
        let mut x = Self::zero(d);
        x.terms.insert(w, Scalar::one());
        Ok(x)
    }

    pub fn letter(d: u32, i: Letter) -> Result<Self> {
        Self::from_word(d, Word::letter(i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(d: u32, terms: I) -> Result<Self> {
        let mut x = Self::zero(d);
        for (w, c) in terms {
            w.check_alphabet(d)?;
            x.add_term(w, c);
        }
        Ok(x)
    }

    /// Reads the textual form produced by `Display`, e.g. `1/6 112 - 1/3 121`.
    /// A term is an optional sign, an optional coefficient (followed by a
    /// space or `*`), and a word (`e` for the empty word).
    pub fn parse(d: u32, text: &str) -> Result<Self> {
        let mut x = Self::zero(d);
        let t = text.trim();
        if t == "0" || t.is_empty() {
            return Ok(x);
        }
        let bytes = t.as_bytes();
        let mut pos = 0;
        let mut first = true;
        while pos < bytes.len() {
            while pos < bytes.len() && bytes[pos] == b' ' {
                pos += 1;
            }
            let mut sign = Scalar::one();
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if !first {
                return Err(Error::Parse { offset: pos, message: "expected '+' or '-'".into() });
            }
            first = false;
            let start = pos;
            let mut depth = 0;
            while pos < bytes.len() {
                match bytes[pos] {
                    b'[' => depth += 1,
                    b']' => depth -= 1,
                    b'+' | b'-' if depth == 0 && pos > start && bytes[pos - 1] == b' ' => break,
                    _ => {}
                }
                pos += 1;
            }
            let chunk = t[start..pos].trim();
            let parts: Vec<&str> = chunk.split([' ', '*']).filter(|s| !s.is_empty()).collect();
            let (coef, word) = match parts.as_slice() {
                [w] => (Scalar::one(), *w),
                [c, w] => (
                    scalar::parse(c).map_err(|_| Error::Parse { offset: start, message: format!("bad coefficient {c:?}") })?,
                    *w,
                ),
                _ => return Err(Error::Parse { offset: start, message: format!("bad term {chunk:?}") }),
            };
            let w = Word::parse(word).map_err(|_| Error::Parse { offset: start, message: format!("bad word {word:?}") })?;
            w.check_alphabet(d)?;
            x.add_term(w, sign * coef);
        }
        Ok(x)
    }

    pub fn alphabet(&self) -> u32 {
        self.d
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn empty_coeff(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    pub fn has_empty_component(&self) -> bool {
        self.terms.contains_key(&Word::empty())
    }

    /// Longest word length present, 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    /// Shortest word length present, 0 for the zero element.
    pub fn min_degree(&self) -> usize {
        self.terms.keys().next().map_or(0, Word::len)
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_term_ref(&mut self, w: &Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(w) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(w);
            }
        } else {
            self.terms.insert(w.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &TensorElem, c: &Scalar) {
        assert_same(self.d, other.d);
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term_ref(w, &(v * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        TensorElem { d: self.d, terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub(crate) fn check_same(&self, other: &TensorElem) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    /// Reinterprets the element over a different alphabet size.
    pub fn with_alphabet(&self, d: u32) -> Result<TensorElem> {
        for w in self.terms.keys() {
            w.check_alphabet(d)?;
        }
        Ok(TensorElem { d, terms: self.terms.clone() })
    }

    /// Terms of length exactly `n`.
    pub fn proj(&self, n: usize) -> TensorElem {
        self.filter(|w| w.len() == n)
    }

    /// Terms of length at least `n`.
    pub fn proj_ge(&self, n: usize) -> TensorElem {
        self.filter(|w| w.len() >= n)
    }

    /// Terms of length at most `level`.
    pub fn truncate(&self, level: usize) -> TensorElem {
        self.filter(|w| w.len() <= level)
    }

    fn filter(&self, keep: impl Fn(&Word) -> bool) -> TensorElem {
        TensorElem {
            d: self.d,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, v)| (w.clone(), v.clone())).collect(),
        }
    }

    /// Extends a map on words linearly.
    pub fn map_linear(&self, mut f: impl FnMut(&Word) -> TensorElem) -> TensorElem {
        let mut out = Self::zero(self.d);
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// `⟨x, y⟩ = Σ_w x_w y_w`.
    pub fn pairing(&self, other: &TensorElem) -> Result<Scalar> {
        self.check_same(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Scalar::zero();
        for (w, c) in &small.terms {
            if let Some(v) = large.terms.get(w) {
                acc += c * v;
            }
        }
        Ok(acc)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(w, c)| TermRecord { word: w.to_notation(self.d), num: c.numer().to_string(), den: c.denom().to_string() })
            .collect()
    }

    pub fn from_records(d: u32, records: &[TermRecord]) -> Result<Self> {
        let mut x = Self::zero(d);
        for r in records {
            let w = Word::parse(&r.word)?;
            w.check_alphabet(d)?;
            let c = scalar::parse(&format!("{}/{}", r.num, r.den))?;
            x.add_term(w, c);
        }
        Ok(x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(d: u32, text: &str) -> Result<Self> {
        let records: Vec<TermRecord> =
            serde_json::from_str(text).map_err(|e| Error::Parse { offset: e.column(), message: e.to_string() })?;
        Self::from_records(d, &records)
    }
}

fn assert_same(a: u32, b: u32) {
    assert!(a == b, "alphabet mismatch in linear combination: {a} vs {b}");
}

impl Serialize for TensorElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (sign, abs) = scalar::sign_str(c);
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            if !abs.is_one() {
                write!(f, "{} ", scalar::format(&abs))?;
            }
            if w.is_empty() {
                f.write_str("e")?;
            } else {
                f.write_str(&w.to_notation(self.d))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElem[d={}]({})", self.d, self)
    }
}

/// Panics if the alphabets differ; use the checked products for fallible code.
impl Add<&TensorElem> for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&TensorElem> for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Add for TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: TensorElem) -> TensorElem {
        &self + &rhs
    }
}

impl Sub for TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: TensorElem) -> TensorElem {
        &self - &rhs
    }
}

impl AddAssign<&TensorElem> for TensorElem {
    fn add_assign(&mut self, rhs: &TensorElem) {
        self.add_scaled(rhs, &Scalar::one());
    }
}

impl SubAssign<&TensorElem> for TensorElem {
    fn sub_assign(&mut self, rhs: &TensorElem) {
        self.add_scaled(rhs, &-Scalar::one());
    }
}

impl Neg for &TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        self.scale(&-Scalar::one())
    }
}

impl Neg for TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        -&self
    }
}
