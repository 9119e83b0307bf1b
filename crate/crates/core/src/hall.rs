//! Hall sets of Lie monomials, their bracketings `P_h`, the dual PBW elements
//! `S_h`, and the coordinates of the first kind `ζ_h = π₁ᵀ(S_h)`.
//!
//! A Hall set is built level by level from a total order: a pair `(t', t'')`
//! is admitted when `t' < t''` and either `t'` is a letter or the right factor
//! of `t'` is at least `t''`. For Lyndon words the order is lexicographic; for
//! the standard Hall set longer trees come first and equal lengths are compared
//! lexicographically on their foliage.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::tensor::{TensorElem, TermRecord};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HallKind {
    Lyndon,
    StandardHall,
}

/// A Hall word with its factorization (indices into the owning basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWord {
    pub word: Word,
    pub factors: Option<(usize, usize)>,
}

#[derive(Debug)]
pub struct HallBasis {
    kind: HallKind,
    d: u32,
    max_level: usize,
    elements: Vec<HallWord>,
    levels: Vec<Vec<usize>>,
    index: HashMap<Word, usize>,
    lie: Vec<TensorElem>,
    dual: Vec<TensorElem>,
    zeta: Vec<TensorElem>,
}

/// Lyndon words of length `n` in lexicographic order (Duval's algorithm).
pub fn lyndon_words(d: u32, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let d = d as Letter;
    let mut w: Vec<Letter> = vec![1];
    loop {
        if w.len() == n {
            out.push(Word::new(w.clone()));
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&d) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

/// Number of Lyndon words of length `n` over `d` letters.
pub fn witt_dimension(d: u32, n: usize) -> usize {
    fn mobius(mut n: usize) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let mut total: i128 = 0;
    for k in 1..=n {
        if n.is_multiple_of(k) {
            total += mobius(k) as i128 * (d as i128).pow((n / k) as u32);
        }
    }
    (total / n as i128) as usize
}

fn order_words(kind: HallKind, a: &Word, b: &Word) -> Ordering {
    match kind {
        HallKind::Lyndon => a.letters().cmp(b.letters()),
        HallKind::StandardHall => b.len().cmp(&a.len()).then_with(|| a.letters().cmp(b.letters())),
    }
}

impl HallBasis {
    /// The Hall set through `max_level` together with `P_h`, `S_h`, `ζ_h`.
    pub fn new(d: u32, max_level: usize, kind: HallKind) -> Result<Self> {
        if d == 0 || max_level == 0 {
            return Err(Error::Precondition("hall_set needs d ≥ 1 and max_level ≥ 1".into()));
        }
        crate::guard::check("hall_set words", crate::guard::power(d, max_level))?;
        let mut b = HallBasis {
            kind,
            d,
            max_level,
            elements: Vec::new(),
            levels: vec![Vec::new(); max_level + 1],
            index: HashMap::new(),
            lie: Vec::new(),
            dual: Vec::new(),
            zeta: Vec::new(),
        };
        for l in 1..=d as Letter {
            b.push(HallWord { word: Word::letter(l), factors: None }, 1);
        }
        for n in 2..=max_level {
            let mut fresh = Vec::new();
            for n1 in 1..n {
                for &i in &b.levels[n1] {
                    for &j in &b.levels[n - n1] {
                        if b.admits(i, j) {
                            let word = b.elements[i].word.concat(&b.elements[j].word);
                            fresh.push(HallWord { word, factors: Some((i, j)) });
                        }
                    }
                }
            }
            fresh.sort_by(|x, y| order_words(kind, &x.word, &y.word));
            for h in fresh {
                b.push(h, n);
            }
        }
        for id in 0..b.elements.len() {
            let p = match b.elements[id].factors {
                None => TensorElem::from_word(d, b.elements[id].word.clone())?,
                Some((i, j)) => b.lie[i].lie_bracket(&b.lie[j])?,
            };
            b.lie.push(p);
        }
        b.dual = vec![TensorElem::zero(d); b.elements.len()];
        for n in 1..=max_level {
            b.fill_duals(n)?;
        }
        b.zeta = b.dual.iter().map(TensorElem::pi1_transpose).collect();
        Ok(b)
    }

    /// Shared instance per `(d, max_level, kind)`.
    pub fn cached(d: u32, max_level: usize, kind: HallKind) -> Result<Arc<HallBasis>> {
        type Cache = Mutex<HashMap<(u32, usize, HallKind), Arc<HallBasis>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().expect("hall cache poisoned").get(&(d, max_level, kind)) {
            return Ok(Arc::clone(b));
        }
        let b = Arc::new(HallBasis::new(d, max_level, kind)?);
        cache.lock().expect("hall cache poisoned").entry((d, max_level, kind)).or_insert_with(|| Arc::clone(&b));
        Ok(b)
    }

    fn push(&mut self, h: HallWord, level: usize) {
        let id = self.elements.len();
        self.index.insert(h.word.clone(), id);
        self.elements.push(h);
        self.levels[level].push(id);
    }

    fn admits(&self, i: usize, j: usize) -> bool {
        if self.cmp(i, j) != Ordering::Less {
            return false;
        }
        match self.elements[i].factors {
            None => true,
            Some((_, y)) => self.cmp(y, j) != Ordering::Less,
        }
    }

    /// Hall order.
    pub fn cmp(&self, i: usize, j: usize) -> Ordering {
        order_words(self.kind, &self.elements[i].word, &self.elements[j].word)
    }

    /// Non-increasing sequences of Hall elements of total length `n`.
    pub fn pbw_indices(&self, n: usize) -> Vec<Vec<usize>> {
        let mut sorted: Vec<usize> = (0..self.elements.len()).collect();
        sorted.sort_by(|&a, &b| self.cmp(a, b));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.pbw_rec(&sorted, sorted.len(), n, &mut cur, &mut out);
        out
    }

    fn pbw_rec(&self, sorted: &[usize], bound: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for pos in (0..bound).rev() {
            let h = sorted[pos];
            let len = self.elements[h].word.len();
            if len <= left {
                cur.push(h);
                self.pbw_rec(sorted, pos + 1, left - len, cur, out);
                cur.pop();
            }
        }
    }

    /// `P_{h₁}⋯P_{h_k}` for a PBW index sequence.
    pub fn pbw_element(&self, seq: &[usize]) -> Result<TensorElem> {
        let mut acc = TensorElem::unit(self.d);
        for &h in seq {
            acc = acc.concat(&self.lie[h])?;
        }
        Ok(acc)
    }

    fn fill_duals(&mut self, n: usize) -> Result<()> {
        let mut classes: BTreeMap<Vec<Letter>, Vec<(Vec<usize>, TensorElem)>> = BTreeMap::new();
        for seq in self.pbw_indices(n) {
            let label: Vec<Letter> = seq.iter().flat_map(|&h| self.elements[h].word.letters().to_vec()).collect();
            let content = Word::new(label).content();
            let p = self.pbw_element(&seq)?;
            classes.entry(content).or_default().push((seq, p));
        }
        for members in classes.values() {
            let elems: Vec<TensorElem> = members.iter().map(|(_, p)| p.clone()).collect();
            let (words, rows) = linalg::coordinates(&elems);
            if rows.len() != words.len() {
                return Err(Error::Precondition(format!("PBW class at level {n} is not square")));
            }
            let inv = linalg::inverse(&rows).ok_or_else(|| Error::Precondition(format!("PBW matrix at level {n} is singular")))?;
            for (k, (seq, _)) in members.iter().enumerate() {
                if seq.len() != 1 {
                    continue;
                }
                let terms = words.iter().zip(&inv).map(|(w, row)| (w.clone(), row[k].clone()));
                self.dual[seq[0]] = TensorElem::from_terms(self.d, terms)?;
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> HallKind {
        self.kind
    }

    pub fn alphabet(&self) -> u32 {
        self.d
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &HallWord {
        &self.elements[id]
    }

    /// Indices of the Hall words of length `n`, in Hall order.
    pub fn level(&self, n: usize) -> &[usize] {
        self.levels.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn lookup(&self, w: &Word) -> Result<usize> {
        self.find(w).ok_or_else(|| Error::Precondition(format!("{w} is not in the {:?} basis", self.kind)))
    }

    /// `P_h` by index.
    pub fn p(&self, id: usize) -> &TensorElem {
        &self.lie[id]
    }

    /// `S_h` by index.
    pub fn s(&self, id: usize) -> &TensorElem {
        &self.dual[id]
    }

    /// `ζ_h` by index.
    pub fn z(&self, id: usize) -> &TensorElem {
        &self.zeta[id]
    }

    pub fn hall_bracketing(&self, h: &Word) -> Result<&TensorElem> {
        Ok(self.p(self.lookup(h)?))
    }

    pub fn dual_pbw(&self, h: &Word) -> Result<&TensorElem> {
        Ok(self.s(self.lookup(h)?))
    }

    pub fn zeta_first_kind(&self, h: &Word) -> Result<&TensorElem> {
        Ok(self.z(self.lookup(h)?))
    }

    /// `⟨S_h, [P_{h1}, P_{h2}]⟩`.
    pub fn structure_constant(&self, h: usize, h1: usize, h2: usize) -> Result<Scalar> {
        self.dual[h].pairing(&self.lie[h1].lie_bracket(&self.lie[h2])?)
    }

    /// Bracket notation such as `[1,[1,2]]`.
    pub fn bracket_notation(&self, id: usize) -> String {
        match self.elements[id].factors {
            None => self.elements[id].word.to_notation(self.d),
            Some((i, j)) => format!("[{},{}]", self.bracket_notation(i), self.bracket_notation(j)),
        }
    }

    pub fn table_rows(&self) -> Vec<TableRow> {
        (1..=self.max_level)
            .flat_map(|n| self.levels[n].iter())
            .map(|&id| TableRow {
                h: self.elements[id].word.to_notation(self.d),
                bracket: self.bracket_notation(id),
                p: self.lie[id].to_records(),
                s: self.dual[id].to_records(),
                zeta: self.zeta[id].to_records(),
            })
            .collect()
    }

    /// Aligned text with one row per Hall word: `h`, `P_h`, `S_h`, `ζ_h`.
    pub fn table_text(&self) -> String {
        let rows: Vec<[String; 4]> = (1..=self.max_level)
            .flat_map(|n| self.levels[n].iter())
            .map(|&id| {
                [
                    self.elements[id].word.to_notation(self.d),
                    self.bracket_notation(id),
                    self.dual[id].to_string(),
                    self.zeta[id].to_string(),
                ]
            })
            .collect();
        let header = ["h", "P_h", "S_h", "zeta_h"].map(String::from);
        let mut widths = header.clone().map(|s| s.chars().count());
        for r in &rows {
            for (k, cell) in r.iter().enumerate().take(3) {
                widths[k] = widths[k].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&header).chain(rows.iter()) {
            for (k, cell) in r.iter().enumerate() {
                if k < 3 {
                    out.push_str(&format!("{:<w$}  ", cell, w = widths[k]));
                } else {
                    out.push_str(cell);
                }
            }
            out.push('\n');
        }
        out
    }
}

/// One emitted table row.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub h: String,
    pub bracket: String,
    pub p: Vec<TermRecord>,
    pub s: Vec<TermRecord>,
    pub zeta: Vec<TermRecord>,
}
