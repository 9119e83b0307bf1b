use super::TensorElem;
use crate::error::{Error, Result};
use crate::guard;
use crate::scalar::Scalar;
use crate::word::{Letter, Word};

/// Adds `coef * (a ⧢ b)` to `out`.
pub(crate) fn shuffle_words(a: &[Letter], b: &[Letter], coef: &Scalar, out: &mut TensorElem) {
    fn go(a: &[Letter], b: &[Letter], buf: &mut Vec<Letter>, coef: &Scalar, out: &mut TensorElem) {
        if a.is_empty() || b.is_empty() {
            let mark = buf.len();
            buf.extend_from_slice(a);
            buf.extend_from_slice(b);
            out.add_term_ref(&Word::from(&buf[..]), coef);
            buf.truncate(mark);
            return;
        }
        buf.push(a[0]);
        go(&a[1..], b, buf, coef, out);
        buf.pop();
        buf.push(b[0]);
        go(a, &b[1..], buf, coef, out);
        buf.pop();
    }
    let mut buf = Vec::with_capacity(a.len() + b.len());
    go(a, b, &mut buf, coef, out);
}

/// Adds `coef * (a ≻ b)` to `out`; `b` must be nonempty.
pub(crate) fn half_shuffle_words(a: &[Letter], b: &[Letter], coef: &Scalar, out: &mut TensorElem) {
    let (last, init) = b.split_last().expect("right operand of ≻ is nonempty");
    let mut tmp = TensorElem::zero(out.d);
    shuffle_words(a, init, coef, &mut tmp);
    for (w, c) in tmp.terms {
        let mut w = w;
        w.push(*last);
        out.add_term(w, c);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn shuffle_work(x: &TensorElem, y: &TensorElem) -> usize {
    let mut total: usize = 0;
    for a in x.terms.keys() {
        for b in y.terms.keys() {
            total = total.saturating_add(binomial(a.len() + b.len(), a.len()));
        }
    }
    total
}

impl TensorElem {
    /// Concatenation product.
    pub fn concat(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same(other)?;
        let mut out = TensorElem::zero(self.d);
        for (a, c) in &self.terms {
            for (b, v) in &other.terms {
                out.add_term(a.concat(b), c * v);
            }
        }
        Ok(out)
    }

    /// Shuffle product.
    pub fn shuffle(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same(other)?;
        guard::check("shuffle", shuffle_work(self, other))?;
        let mut out = TensorElem::zero(self.d);
        for (a, c) in &self.terms {
            for (b, v) in &other.terms {
                shuffle_words(a.letters(), b.letters(), &(c * v), &mut out);
            }
        }
        Ok(out)
    }

    /// Half-shuffle `self ≻ other`; `other` must not contain the empty word.
    pub fn half_shuffle(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same(other)?;
        if other.has_empty_component() {
            return Err(Error::EmptyWordComponent { op: "half_shuffle" });
        }
        guard::check("half_shuffle", shuffle_work(self, other))?;
        let mut out = TensorElem::zero(self.d);
        for (a, c) in &self.terms {
            for (b, v) in &other.terms {
                half_shuffle_words(a.letters(), b.letters(), &(c * v), &mut out);
            }
        }
        Ok(out)
    }

    /// `area(x, y) = x ≻ y − y ≻ x`; both operands must be free of `e`.
    pub fn area(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same(other)?;
        if self.has_empty_component() || other.has_empty_component() {
            return Err(Error::EmptyWordComponent { op: "area" });
        }
        Ok(&self.half_shuffle(other)? - &other.half_shuffle(self)?)
    }

    /// Commutator for the concatenation product.
    pub fn lie_bracket(&self, other: &TensorElem) -> Result<TensorElem> {
        Ok(&self.concat(other)? - &other.concat(self)?)
    }

    /// Shuffle power `x ⧢ … ⧢ x` (`n` factors, `e` for `n = 0`).
    pub fn shuffle_pow(&self, n: usize) -> Result<TensorElem> {
        let mut acc = TensorElem::unit(self.d);
        for _ in 0..n {
            acc = acc.shuffle(self)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TensorElem {
        TensorElem::parse(3, s).unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(t("1").concat(&t("2")).unwrap(), t("12"));
        assert_eq!(t("e").concat(&t("231")).unwrap(), t("231"));
        assert_eq!(t("12 - 21").concat(&t("3")).unwrap(), t("123 - 213"));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(t("1").shuffle(&t("2")).unwrap(), t("12 + 21"));
        assert_eq!(t("e").shuffle(&t("123")).unwrap(), t("123"));
        assert_eq!(t("1").shuffle(&t("12")).unwrap(), t("2 112 + 121"));
    }

    #[test]
    fn half_shuffle_examples() {
        assert_eq!(t("1").half_shuffle(&t("2")).unwrap(), t("12"));
        assert_eq!(t("12").half_shuffle(&t("3")).unwrap(), t("123"));
        assert_eq!(t("3").half_shuffle(&t("12")).unwrap(), t("312 + 132"));
        assert_eq!(t("e").half_shuffle(&t("12")).unwrap(), t("12"));
        assert!(matches!(t("1").half_shuffle(&t("e + 2")), Err(Error::EmptyWordComponent { .. })));
    }

    #[test]
    fn area_examples() {
        assert_eq!(t("1").area(&t("2")).unwrap(), t("12 - 21"));
        let x = t("1 + 2/3 23");
        assert!(x.area(&x).unwrap().is_zero());
        let sum = &t("1").area(&t("2")).unwrap() + &t("1").shuffle(&t("2")).unwrap();
        assert_eq!(sum.scale(&crate::scalar::q(1, 2)), t("12"));
        assert!(t("e").area(&t("1")).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(t("1").lie_bracket(&t("2")).unwrap(), t("12 - 21"));
        assert_eq!(t("1").lie_bracket(&t("12 - 21")).unwrap(), t("112 - 2 121 + 211"));
    }

    #[test]
    fn mismatched_alphabets_error() {
        let a = TensorElem::parse(2, "1").unwrap();
        assert!(matches!(a.shuffle(&t("1")), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
    }
}
