//! Words over the alphabet `1..=d`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub type Letter = u8;

/// A finite sequence of letters. Ordered by length first, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: Letter) -> Self {
        Word(vec![i])
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Sorted letter multiset; two words are anagrams iff their contents agree.
    pub fn content(&self) -> Vec<Letter> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn check_alphabet(&self, d: u32) -> Result<()> {
        for &l in &self.0 {
            if l == 0 || l as u32 > d {
                return Err(Error::LetterOutOfRange { letter: l as u32, d });
            }
        }
        Ok(())
    }

    /// Parses either a digit string (`"121"`, empty for `e`) or a bracketed
    /// list (`"[1,10,2]"`).
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        let bad = |offset: usize| Error::Parse { offset, message: format!("bad word {s:?}") };
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| bad(s.len()))?;
            if inner.trim().is_empty() {
                return Ok(Word::empty());
            }
            let mut v = Vec::new();
            for part in inner.split(',') {
                let l: Letter = part.trim().parse().map_err(|_| bad(0))?;
                if l == 0 {
                    return Err(bad(0));
                }
                v.push(l);
            }
            return Ok(Word(v));
        }
        if s == "e" {
            return Ok(Word::empty());
        }
        let mut v = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            match c.to_digit(10) {
                Some(x) if x > 0 => v.push(x as Letter),
                _ => return Err(bad(i)),
            }
        }
        Ok(Word(v))
    }

    /// Digit string when every letter is below 10, bracketed list otherwise.
    pub fn to_notation(&self, d: u32) -> String {
        if d <= 9 && self.max_letter() <= 9 {
            self.0.iter().map(|l| char::from(b'0' + l)).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// All words of length `n` over `1..=d` in lexicographic order.
    pub fn all(d: u32, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for w in &out {
                for l in 1..=d as Letter {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// All words of length `1..=n`.
    pub fn all_upto(d: u32, n: usize) -> Vec<Word> {
        (1..=n).flat_map(|k| Word::all(d, k)).collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        f.write_str(&self.to_notation(9))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}
