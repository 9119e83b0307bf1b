//! Expressions over the tensor algebra.
//!
//! ```text
//! expr := term (('+'|'-') term)*
//! term := [rational '*'] atom
//! atom := 'w(' digits ')' | digit | fn '(' expr (',' expr)* ')'
//! ```

use std::fmt;

use num_traits::{One, Signed};
use tortkara_core::scalar::{self, Scalar};
use tortkara_core::{span, Error, Result, RhoMethod, TensorElem, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Shuffle,
    HalfShuffle,
    Concat,
    Area,
    Lie,
    R,
    Rho,
    D,
    DInv,
    Pi1T,
    Arealb,
    Vol,
}

impl Func {
    pub const ALL: [Func; 12] = [
        Func::Shuffle,
        Func::HalfShuffle,
        Func::Concat,
        Func::Area,
        Func::Lie,
        Func::R,
        Func::Rho,
        Func::D,
        Func::DInv,
        Func::Pi1T,
        Func::Arealb,
        Func::Vol,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Shuffle => "sh",
            Func::HalfShuffle => "hs",
            Func::Concat => "cc",
            Func::Area => "area",
            Func::Lie => "lie",
            Func::R => "r",
            Func::Rho => "rho",
            Func::D => "D",
            Func::DInv => "Dinv",
            Func::Pi1T => "pi1T",
            Func::Arealb => "arealb",
            Func::Vol => "vol",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Allowed argument counts as `(min, max)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Func::Shuffle | Func::Concat => (2, usize::MAX),
            Func::HalfShuffle | Func::Area | Func::Lie => (2, 2),
            Func::Vol => (1, usize::MAX),
            _ => (1, 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Word(Word),
    Letter(u8),
    Call(Func, Vec<Expr>),
}

/// A signed linear combination of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Scalar, Atom)>,
}

impl Expr {
    pub fn atom(a: Atom) -> Expr {
        Expr { terms: vec![(Scalar::one(), a)] }
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Largest letter mentioned, at least 1.
    pub fn max_letter(&self) -> u8 {
        self.terms
            .iter()
            .map(|(_, a)| match a {
                Atom::Word(w) => w.max_letter(),
                Atom::Letter(l) => *l,
                Atom::Call(_, args) => args.iter().map(Expr::max_letter).max().unwrap_or(1),
            })
            .max()
            .unwrap_or(1)
            .max(1)
    }

    pub fn eval(&self, d: u32) -> Result<TensorElem> {
        let mut out = TensorElem::zero(d);
        for (c, a) in &self.terms {
            out.add_scaled(&eval_atom(a, d)?, c);
        }
        Ok(out)
    }
}

fn eval_atom(a: &Atom, d: u32) -> Result<TensorElem> {
    match a {
        Atom::Word(w) => TensorElem::from_word(d, w.clone()),
        Atom::Letter(l) => TensorElem::letter(d, *l),
        Atom::Call(f, args) => {
            let xs = args.iter().map(|e| e.eval(d)).collect::<Result<Vec<_>>>()?;
            let fold = |op: fn(&TensorElem, &TensorElem) -> Result<TensorElem>| {
                xs[1..].iter().try_fold(xs[0].clone(), |acc, x| op(&acc, x))
            };
            match f {
                Func::Shuffle => fold(TensorElem::shuffle),
                Func::Concat => fold(TensorElem::concat),
                Func::HalfShuffle => xs[0].half_shuffle(&xs[1]),
                Func::Area => xs[0].area(&xs[1]),
                Func::Lie => xs[0].lie_bracket(&xs[1]),
                Func::R => Ok(xs[0].dynkin_r()),
                Func::Rho => Ok(xs[0].rho(RhoMethod::Recursive)),
                Func::D => Ok(xs[0].grading_d()),
                Func::DInv => xs[0].grading_d_inv(),
                Func::Pi1T => Ok(xs[0].pi1_transpose()),
                Func::Arealb => span::arealb(&xs[0]),
                Func::Vol if xs.len() == 3 => span::vol(&xs[0], &xs[1], &xs[2]),
                Func::Vol => span::vol_n(&xs),
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Word(w) => write!(f, "w({})", w.to_notation(9)),
            Atom::Letter(l) => write!(f, "{l}"),
            Atom::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, a)) in self.terms.iter().enumerate() {
            let shown = if k == 0 {
                c.clone()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if !shown.is_one() {
                write!(f, "{}*", scalar::format(&shown))?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term(false)?];
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let (coef, atom) = self.term(true)?;
            terms.push((if c == b'-' { -coef } else { coef }, atom));
        }
        Ok(Expr { terms })
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn term(&mut self, after_sign: bool) -> Result<(Scalar, Atom)> {
        let start = self.peek().map(|_| self.pos).ok_or_else(|| self.err("unexpected end of input"))?;
        let negative = !after_sign && self.src[start] == b'-';
        if negative {
            self.pos += 1;
        }
        if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            let num = self.digits().to_owned();
            let mut text = num.clone();
            if self.src.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                let den = self.digits().to_owned();
                if den.is_empty() {
                    return Err(self.err("expected denominator"));
                }
                text = format!("{num}/{den}");
                if self.peek() != Some(b'*') {
                    return Err(self.err("expected '*' after coefficient"));
                }
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let mut c = scalar::parse(&text).map_err(|_| Error::Parse { offset: start, message: "bad coefficient".into() })?;
                if negative {
                    c = -c;
                }
                return Ok((c, self.atom()?));
            }
            if negative {
                return Err(Error::Parse { offset: start, message: "a leading '-' needs a coefficient".into() });
            }
            return match num.as_bytes() {
                [d] if *d != b'0' => Ok((Scalar::one(), Atom::Letter(d - b'0'))),
                _ => Err(Error::Parse { offset: start, message: "letters are single digits 1-9; use w(...) for words".into() }),
            };
        }
        if negative {
            return Err(Error::Parse { offset: start, message: "a leading '-' needs a coefficient".into() });
        }
        Ok((Scalar::one(), self.atom()?))
    }

    fn atom(&mut self) -> Result<Atom> {
        let start = self.peek().map(|_| self.pos).ok_or_else(|| self.err("unexpected end of input"))?;
        if self.src[start].is_ascii_digit() {
            let d = self.digits();
            return match d.as_bytes() {
                [c] if *c != b'0' => Ok(Atom::Letter(c - b'0')),
                _ => Err(Error::Parse { offset: start, message: "letters are single digits 1-9".into() }),
            };
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if name.is_empty() {
            return Err(self.err("expected a letter, word or function"));
        }
        if name == "w" {
            self.expect(b'(')?;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits().to_owned();
            if digits.is_empty() || digits.contains('0') {
                return Err(Error::Parse { offset: at, message: "expected letters 1-9".into() });
            }
            self.expect(b')')?;
            return Ok(Atom::Word(Word::new(digits.bytes().map(|b| b - b'0').collect())));
        }
        let func = Func::from_name(name).ok_or_else(|| Error::Parse { offset: start, message: format!("unknown function {name:?}") })?;
        self.expect(b'(')?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect(b')')?;
        let (lo, hi) = func.arity();
        if args.len() < lo || args.len() > hi {
            return Err(Error::Parse { offset: start, message: format!("{name} takes {lo}..{hi} arguments, got {}", args.len()) });
        }
        Ok(Atom::Call(func, args))
    }
}
