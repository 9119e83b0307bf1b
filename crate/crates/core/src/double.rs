//! The double tensor space of `p ⊗ q` combinations: shuffle on the left,
//! concatenation on the right, graded and truncated by the length of the right
//! word. Left factors are never clipped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard;
use crate::hall::HallBasis;
use crate::scalar::{self, factorial, int, Scalar};
use crate::tensor::TensorElem;
use crate::word::{Letter, Word};

/// `Σ_q a_q ⊗ q`, stored as right word → left factor. Equality compares
/// terms only, not the truncation level.
#[derive(Clone)]
pub struct DoubleTensor {
    d: u32,
    level: usize,
    terms: BTreeMap<Word, TensorElem>,
}

impl PartialEq for DoubleTensor {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.terms == other.terms
    }
}

impl Eq for DoubleTensor {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub left: String,
    pub right: String,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dendriform {
    /// `(p≻p') ⊗ qq'`
    Succ,
    /// `(p'≻p) ⊗ qq'`
    Prec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RMethod {
    Direct,
    Recursion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaMethod {
    LogOfS,
    Recursion,
}

#[derive(Clone, Copy)]
enum RightRule {
    Concat,
    Bracket,
}

impl DoubleTensor {
    pub fn zero(d: u32, level: usize) -> Self {
        DoubleTensor { d, level, terms: BTreeMap::new() }
    }

    /// `e ⊗ e`.
    pub fn unit(d: u32, level: usize) -> Self {
        let mut x = Self::zero(d, level);
        x.add_left(Word::empty(), &TensorElem::unit(d), &Scalar::one());
        x
    }

    /// `p ⊗ q`, expanded bilinearly over the words of `q`.
    pub fn from_pair(p: &TensorElem, q: &TensorElem, level: usize) -> Result<Self> {
        p.check_same_alphabet(q)?;
        let mut x = Self::zero(p.alphabet(), level);
        for (w, c) in q.terms() {
            if w.len() <= level {
                x.add_left(w.clone(), p, c);
            }
        }
        Ok(x)
    }

    pub fn alphabet(&self) -> u32 {
        self.d
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored `(left word, right word)` pairs.
    pub fn len(&self) -> usize {
        self.terms.values().map(TensorElem::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Right words with their left factors, in canonical order.
    pub fn right_terms(&self) -> impl Iterator<Item = (&Word, &TensorElem)> {
        self.terms.iter()
    }

    pub fn left_factor(&self, right: &Word) -> TensorElem {
        self.terms.get(right).cloned().unwrap_or_else(|| TensorElem::zero(self.d))
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Scalar {
        self.terms.get(right).map_or_else(Scalar::zero, |a| a.coeff(left))
    }

    fn add_left(&mut self, right: Word, left: &TensorElem, c: &Scalar) {
        if c.is_zero() || left.is_zero() {
            return;
        }
        let entry = self.terms.entry(right.clone()).or_insert_with(|| TensorElem::zero(self.d));
        entry.add_scaled(left, c);
        if entry.is_zero() {
            self.terms.remove(&right);
        }
    }

    fn check_same(&self, other: &DoubleTensor) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> DoubleTensor {
        let mut out = Self::zero(self.d, self.level);
        for (q, a) in &self.terms {
            out.add_left(q.clone(), a, c);
        }
        out
    }

    /// Part with right words of length exactly `n`.
    pub fn proj(&self, n: usize) -> DoubleTensor {
        DoubleTensor {
            d: self.d,
            level: self.level,
            terms: self.terms.iter().filter(|(q, _)| q.len() == n).map(|(q, a)| (q.clone(), a.clone())).collect(),
        }
    }

    /// Drops right words longer than `level` and lowers the truncation level.
    pub fn truncate(&self, level: usize) -> DoubleTensor {
        let level = level.min(self.level);
        DoubleTensor {
            d: self.d,
            level,
            terms: self.terms.iter().filter(|(q, _)| q.len() <= level).map(|(q, a)| (q.clone(), a.clone())).collect(),
        }
    }

    /// Same terms with a different truncation level (terms above it dropped).
    pub fn with_level(&self, level: usize) -> DoubleTensor {
        let mut x = self.truncate(level);
        x.level = level;
        x
    }

    fn combine(
        &self,
        other: &DoubleTensor,
        what: &'static str,
        rule: RightRule,
        left: impl Fn(&TensorElem, &TensorElem) -> Result<TensorElem>,
    ) -> Result<DoubleTensor> {
        self.check_same(other)?;
        let level = self.level.min(other.level);
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        guard::check(what, pairs)?;
        let mut out = Self::zero(self.d, level);
        for (q, a) in &self.terms {
            for (q2, b) in &other.terms {
                if q.len() + q2.len() > level {
                    continue;
                }
                let l = left(a, b)?;
                if l.is_zero() {
                    continue;
                }
                out.add_left(q.concat(q2), &l, &Scalar::one());
                if let RightRule::Bracket = rule {
                    out.add_left(q2.concat(q), &l, &-Scalar::one());
                }
            }
        }
        Ok(out)
    }

    /// `(p⊗q)⊡(p'⊗q') = (p⧢p')⊗qq'`.
    pub fn box_mul(&self, other: &DoubleTensor) -> Result<DoubleTensor> {
        self.combine(other, "box_mul", RightRule::Concat, |a, b| a.shuffle(b))
    }

    pub fn dendriform(&self, other: &DoubleTensor, which: Dendriform) -> Result<DoubleTensor> {
        match which {
            Dendriform::Succ => self.combine(other, "dendriform", RightRule::Concat, |a, b| a.half_shuffle(b)),
            Dendriform::Prec => self.combine(other, "dendriform", RightRule::Concat, |a, b| b.half_shuffle(a)),
        }
    }

    /// `(p⊗q)⊳(p'⊗q') = (p≻p')⊗[q,q']`.
    pub fn pre_lie(&self, other: &DoubleTensor) -> Result<DoubleTensor> {
        self.combine(other, "pre_lie", RightRule::Bracket, |a, b| a.half_shuffle(b))
    }

    /// `area(p,p')⊗[q,q']`.
    pub fn pre_lie_sym(&self, other: &DoubleTensor) -> Result<DoubleTensor> {
        self.combine(other, "pre_lie_sym", RightRule::Bracket, |a, b| a.area(b))
    }

    /// `[A,B]_⊡ = A⊡B − B⊡A`.
    pub fn box_bracket(&self, other: &DoubleTensor) -> Result<DoubleTensor> {
        self.combine(other, "box_bracket", RightRule::Bracket, |a, b| a.shuffle(b))
    }

    /// Right-nested `⟦x₁,…,xₙ⟧_⊡ = [x₁,[x₂,…[xₙ₋₁,xₙ]]]_⊡`.
    pub fn nested_bracket(xs: &[DoubleTensor]) -> Result<DoubleTensor> {
        let (last, init) = xs.split_last().ok_or_else(|| Error::Precondition("empty bracket".into()))?;
        let mut acc = last.clone();
        for x in init.iter().rev() {
            acc = x.box_bracket(&acc)?;
        }
        Ok(acc)
    }

    /// `Σ_q ⟨x, a_q⟩ q`.
    pub fn eval_at(&self, x: &TensorElem) -> Result<TensorElem> {
        if x.alphabet() != self.d {
            return Err(Error::AlphabetMismatch { left: x.alphabet(), right: self.d });
        }
        let mut out = TensorElem::zero(self.d);
        for (q, a) in &self.terms {
            let c = x.pairing(a)?;
            out.add_scaled(&TensorElem::from_word(self.d, q.clone())?, &c);
        }
        Ok(out)
    }

    /// `Σ_q ⟨q, y⟩ a_q`.
    pub fn coeval_at(&self, y: &TensorElem) -> Result<TensorElem> {
        if y.alphabet() != self.d {
            return Err(Error::AlphabetMismatch { left: y.alphabet(), right: self.d });
        }
        let mut out = TensorElem::zero(self.d);
        for (q, a) in &self.terms {
            out.add_scaled(a, &y.coeff(q));
        }
        Ok(out)
    }

    /// Applies a linear map to the right factors.
    pub fn map_right(&self, f: impl Fn(&TensorElem) -> Result<TensorElem>) -> Result<DoubleTensor> {
        let mut out = Self::zero(self.d, self.level);
        for (q, a) in &self.terms {
            let image = f(&TensorElem::from_word(self.d, q.clone())?)?;
            for (v, c) in image.terms() {
                if v.len() <= self.level {
                    out.add_left(v.clone(), a, c);
                }
            }
        }
        Ok(out)
    }

    /// `D̂`: multiplies each term by the length of its right word.
    pub fn hat_d(&self) -> DoubleTensor {
        let mut out = Self::zero(self.d, self.level);
        for (q, a) in &self.terms {
            out.add_left(q.clone(), a, &int(q.len() as i64));
        }
        out
    }

    pub fn hat_d_inv(&self) -> Result<DoubleTensor> {
        let mut out = Self::zero(self.d, self.level);
        for (q, a) in &self.terms {
            if q.is_empty() {
                return Err(Error::EmptyWordComponent { op: "hat_d_inv" });
            }
            out.add_left(q.clone(), a, &(Scalar::one() / int(q.len() as i64)));
        }
        Ok(out)
    }

    /// `r̂`: the Dynkin map on right factors.
    pub fn hat_r(&self) -> Result<DoubleTensor> {
        self.map_right(|q| Ok(q.dynkin_r()))
    }

    /// Truncated `exp_⊡`; `X` must have no part with an empty right word.
    pub fn exp_box(&self, level: usize) -> Result<DoubleTensor> {
        if self.terms.contains_key(&Word::empty()) {
            return Err(Error::Precondition("exp_box needs a vanishing component on empty right words".into()));
        }
        let x = self.with_level(level);
        let mut out = Self::unit(self.d, level);
        let mut power = Self::unit(self.d, level);
        for k in 1..=level {
            power = power.box_mul(&x)?;
            if power.is_zero() {
                break;
            }
            out += &power.scale(&(Scalar::one() / factorial(k)));
        }
        Ok(out)
    }

    /// Truncated `log_⊡`; the part on the empty right word must be `e⊗e`.
    pub fn log_box(&self, level: usize) -> Result<DoubleTensor> {
        if self.left_factor(&Word::empty()) != TensorElem::unit(self.d) {
            return Err(Error::Precondition("log_box needs e⊗e as the component on the empty right word".into()));
        }
        let y = &self.with_level(level) - &Self::unit(self.d, level);
        let mut out = Self::zero(self.d, level);
        let mut power = Self::unit(self.d, level);
        for k in 1..=level {
            power = power.box_mul(&y)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out += &power.scale(&(int(sign) / int(k as i64)));
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<PairRecord> {
        let mut out = Vec::with_capacity(self.len());
        for (q, a) in &self.terms {
            for (p, c) in a.terms() {
                out.push(PairRecord {
                    left: p.to_notation(self.d),
                    right: q.to_notation(self.d),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_records(d: u32, level: usize, records: &[PairRecord]) -> Result<Self> {
        let mut x = Self::zero(d, level);
        for r in records {
            let p = TensorElem::from_word(d, Word::parse(&r.left)?)?;
            let q = Word::parse(&r.right)?;
            q.check_alphabet(d)?;
            if q.len() > level {
                return Err(Error::Precondition(format!("right word {} exceeds level {level}", r.right)));
            }
            x.add_left(q, &p, &scalar::parse(&format!("{}/{}", r.num, r.den))?);
        }
        Ok(x)
    }
}

impl TensorElem {
    pub(crate) fn check_same_alphabet(&self, other: &TensorElem) -> Result<()> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch { left: self.alphabet(), right: other.alphabet() });
        }
        Ok(())
    }
}

/// `S = Σ_w w ⊗ w` over words of length at most `level`.
pub fn s_element(d: u32, level: usize) -> Result<DoubleTensor> {
    guard::check("S_element", guard::power(d, level))?;
    let mut x = DoubleTensor::zero(d, level);
    for n in 0..=level {
        for w in Word::all(d, n) {
            x.add_left(w.clone(), &TensorElem::from_word(d, w)?, &Scalar::one());
        }
    }
    Ok(x)
}

/// `R = Σ_w w ⊗ r(w)`, levels `1..=level`.
pub fn r_element(d: u32, level: usize, method: RMethod) -> Result<DoubleTensor> {
    if level == 0 {
        return Err(Error::Precondition("R_element needs level ≥ 1".into()));
    }
    guard::check("R_element", guard::power(d, level))?;
    match method {
        RMethod::Direct => {
            let mut x = DoubleTensor::zero(d, level);
            for w in Word::all_upto(d, level) {
                let p = TensorElem::from_word(d, w)?;
                for (v, c) in p.dynkin_r().terms() {
                    x.add_left(v.clone(), &p, c);
                }
            }
            Ok(x)
        }
        RMethod::Recursion => {
            let parts = r_levels(d, level)?;
            let mut x = DoubleTensor::zero(d, level);
            for part in &parts[1..] {
                x += part;
            }
            Ok(x)
        }
    }
}

/// `R₁ = Σ_i i⊗i` and `(n−1)Rₙ = ½ Σ_{ℓ=1}^{n−1} R_ℓ ⊳_Sym R_{n−ℓ}`; index 0 is zero.
fn r_levels(d: u32, level: usize) -> Result<Vec<DoubleTensor>> {
    let mut parts = vec![DoubleTensor::zero(d, level), letters_diagonal(d, level)?];
    for n in 2..=level {
        let mut acc = DoubleTensor::zero(d, level);
        for l in 1..n {
            acc += &parts[l].pre_lie_sym(&parts[n - l])?;
        }
        parts.push(acc.scale(&(Scalar::one() / int(2 * (n as i64 - 1)))));
    }
    Ok(parts)
}

fn letters_diagonal(d: u32, level: usize) -> Result<DoubleTensor> {
    let mut x = DoubleTensor::zero(d, level);
    for l in 1..=d as Letter {
        x.add_left(Word::letter(l), &TensorElem::letter(d, l)?, &Scalar::one());
    }
    Ok(x)
}

/// `Λ = log_⊡ S` through `level`.
pub fn lambda_element(d: u32, level: usize, method: LambdaMethod) -> Result<DoubleTensor> {
    if level == 0 {
        return Err(Error::Precondition("lambda_element needs level ≥ 1".into()));
    }
    match method {
        LambdaMethod::LogOfS => s_element(d, level)?.log_box(level),
        LambdaMethod::Recursion => {
            let r = r_levels(d, level)?;
            let mut lam: Vec<DoubleTensor> = vec![DoubleTensor::zero(d, level), r[1].clone()];
            for (n, r_n) in r.iter().enumerate().take(level + 1).skip(2) {
                let mut acc = r_n.clone();
                for i in 2..=n {
                    let mut inner = DoubleTensor::zero(d, level);
                    for parts in compositions(n, i) {
                        let xs: Vec<DoubleTensor> = parts.iter().map(|&k| lam[k].clone()).collect();
                        let last = *parts.last().expect("i ≥ 2 parts");
                        inner += &DoubleTensor::nested_bracket(&xs)?.scale(&int(last as i64));
                    }
                    acc -= &inner.scale(&(Scalar::one() / factorial(i)));
                }
                lam.push(acc.scale(&(Scalar::one() / int(n as i64))));
            }
            let mut x = DoubleTensor::zero(d, level);
            for part in &lam[1..] {
                x += part;
            }
            Ok(x)
        }
    }
}

/// Compositions of `n` into `k` positive parts, lexicographic.
pub(crate) fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Σ_ℓ (Â_R)^ℓ (e⊗e)` with `Â_R z = D̂⁻¹(R ⊡ z)`.
pub fn s_from_r(r: &DoubleTensor) -> Result<DoubleTensor> {
    let mut z = DoubleTensor::unit(r.d, r.level);
    let mut out = z.clone();
    loop {
        z = r.box_mul(&z)?.hat_d_inv()?;
        if z.is_zero() {
            return Ok(out);
        }
        out += &z;
    }
}

/// `Σ_{n≥1} ad_Λ^{n−1}/n! · D̂Λ`, where `ad_Λ Y = [Λ, Y]_⊡`.
pub fn r_from_lambda(lambda: &DoubleTensor) -> Result<DoubleTensor> {
    let mut term = lambda.hat_d();
    let mut out = term.clone();
    for n in 2.. {
        term = lambda.box_bracket(&term)?;
        if term.is_zero() {
            break;
        }
        out += &term.scale(&(Scalar::one() / factorial(n)));
    }
    Ok(out)
}

/// `Σ_h ζ_h ⊗ P_h` over the Hall words of length at most `level`.
pub fn coordinate_sum(basis: &HallBasis, level: usize) -> Result<DoubleTensor> {
    let d = basis.alphabet();
    let mut x = DoubleTensor::zero(d, level);
    for n in 1..=level.min(basis.max_level()) {
        for &h in basis.level(n) {
            x += &DoubleTensor::from_pair(basis.z(h), basis.p(h), level)?;
        }
    }
    Ok(x)
}

/// Left factors of `x` in front of each Hall element: expresses every
/// right-level part of `x` in the basis `{P_h}`, failing if some right part is
/// not a Lie polynomial.
pub fn hall_components(x: &DoubleTensor, basis: &HallBasis) -> Result<Vec<(usize, TensorElem)>> {
    let d = x.alphabet();
    let mut out = Vec::new();
    for n in 1..=x.level().min(basis.max_level()) {
        let part = x.proj(n);
        for &h in basis.level(n) {
            // ⟨S_h, ·⟩ extracts the P_h coordinate of a Lie polynomial.
            let mut left = TensorElem::zero(d);
            for (q, a) in part.right_terms() {
                left.add_scaled(a, &basis.s(h).coeff(q));
            }
            out.push((h, left));
        }
        let mut rebuilt = DoubleTensor::zero(d, x.level());
        for (h, left) in out.iter().filter(|(h, _)| basis.element(*h).word.len() == n) {
            rebuilt += &DoubleTensor::from_pair(left, basis.p(*h), x.level())?;
        }
        if rebuilt != part {
            return Err(Error::NotLie(format!("right factors at level {n} are not Lie polynomials")));
        }
    }
    Ok(out)
}

impl fmt::Display for DoubleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (q, a)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let right = if q.is_empty() { "e".to_string() } else { q.to_notation(self.d) };
            write!(f, "({a}) ⊗ {right}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DoubleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleTensor[d={}, level={}]({})", self.d, self.level, self)
    }
}

impl AddAssign<&DoubleTensor> for DoubleTensor {
    fn add_assign(&mut self, rhs: &DoubleTensor) {
        assert!(self.d == rhs.d, "alphabet mismatch in linear combination");
        for (q, a) in &rhs.terms {
            if q.len() <= self.level {
                self.add_left(q.clone(), a, &Scalar::one());
            }
        }
    }
}

impl SubAssign<&DoubleTensor> for DoubleTensor {
    fn sub_assign(&mut self, rhs: &DoubleTensor) {
        assert!(self.d == rhs.d, "alphabet mismatch in linear combination");
        for (q, a) in &rhs.terms {
            if q.len() <= self.level {
                self.add_left(q.clone(), a, &-Scalar::one());
            }
        }
    }
}

impl Add<&DoubleTensor> for &DoubleTensor {
    type Output = DoubleTensor;
    fn add(self, rhs: &DoubleTensor) -> DoubleTensor {
        let mut out = self.with_level(self.level.min(rhs.level));
        out += rhs;
        out
    }
}

impl Sub<&DoubleTensor> for &DoubleTensor {
    type Output = DoubleTensor;
    fn sub(self, rhs: &DoubleTensor) -> DoubleTensor {
        let mut out = self.with_level(self.level.min(rhs.level));
        out -= rhs;
        out
    }
}

impl Neg for &DoubleTensor {
    type Output = DoubleTensor;
    fn neg(self) -> DoubleTensor {
        self.scale(&-Scalar::one())
    }
}
