//! Leaf-labelled binary planar trees and the tree-indexed expansions of
//! `Rₙ`, `Ρ_h`, `Λₙ` and `ζ_h`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::double::DoubleTensor;
use crate::error::{Error, Result};
use crate::guard;
use crate::hall::HallBasis;
use crate::scalar::{factorial, int, Scalar};
use crate::tensor::TensorElem;
use crate::word::{Letter, Word};

/// Inner node type of a mixed tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// `•`, evaluated with `area`.
    Area,
    /// `■`, evaluated with `⧢`.
    Shuffle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AreaTree {
    Leaf(Letter),
    Node(Box<AreaTree>, Box<AreaTree>),
}

/// A tree with `•` and `■` nodes; the `■` nodes, if any, form a subtree that
/// contains the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MixedTree {
    Leaf(Letter),
    Node(NodeKind, Box<MixedTree>, Box<MixedTree>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoHallMethod {
    Recursion,
    QTrees,
    PTrees,
}

fn catalan(n: usize) -> usize {
    let mut c: usize = 1;
    for k in 0..n {
        c = c.saturating_mul(2 * (2 * k + 1)) / (k + 2);
    }
    c
}

impl AreaTree {
    pub fn leaf(l: Letter) -> Self {
        AreaTree::Leaf(l)
    }

    pub fn node(a: AreaTree, b: AreaTree) -> Self {
        AreaTree::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            AreaTree::Leaf(_) => 1,
            AreaTree::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn foliage(&self) -> Word {
        let mut v = Vec::new();
        self.collect(&mut v);
        Word::new(v)
    }

    fn collect(&self, out: &mut Vec<Letter>) {
        match self {
            AreaTree::Leaf(l) => out.push(*l),
            AreaTree::Node(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn max_letter(&self) -> Letter {
        self.foliage().max_letter()
    }

    /// Bracketing out with `area`.
    pub fn area_eval(&self, d: u32) -> Result<TensorElem> {
        match self {
            AreaTree::Leaf(l) => TensorElem::letter(d, *l),
            AreaTree::Node(a, b) => a.area_eval(d)?.area(&b.area_eval(d)?),
        }
    }

    /// Bracketing out with the Lie bracket.
    pub fn lie_eval(&self, d: u32) -> Result<TensorElem> {
        match self {
            AreaTree::Leaf(l) => TensorElem::letter(d, *l),
            AreaTree::Node(a, b) => a.lie_eval(d)?.lie_bracket(&b.lie_eval(d)?),
        }
    }

    /// `c(leaf) = 1`, `c(τ₁∨τ₂) = 2 c(τ₁) c(τ₂) (|τ₁|+|τ₂|−1)`.
    pub fn coeff_c(&self) -> Scalar {
        match self {
            AreaTree::Leaf(_) => Scalar::one(),
            AreaTree::Node(a, b) => int(2) * a.coeff_c() * b.coeff_c() * int((a.leaves() + b.leaves() - 1) as i64),
        }
    }

    /// `b(leaf) = 1`, `b(τ′∨τ″) = b(τ′) b(τ″) (|τ′|+|τ″|−1)`.
    pub fn coeff_b(&self) -> Scalar {
        match self {
            AreaTree::Leaf(_) => Scalar::one(),
            AreaTree::Node(a, b) => a.coeff_b() * b.coeff_b() * int((a.leaves() + b.leaves() - 1) as i64),
        }
    }

    pub fn to_mixed(&self) -> MixedTree {
        match self {
            AreaTree::Leaf(l) => MixedTree::Leaf(*l),
            AreaTree::Node(a, b) => MixedTree::Node(NodeKind::Area, Box::new(a.to_mixed()), Box::new(b.to_mixed())),
        }
    }

    /// The tree of a Hall element's factorization.
    pub fn from_hall(basis: &HallBasis, id: usize) -> AreaTree {
        let h = basis.element(id);
        match h.factors {
            None => AreaTree::Leaf(h.word.letters()[0]),
            Some((i, j)) => AreaTree::node(Self::from_hall(basis, i), Self::from_hall(basis, j)),
        }
    }

    /// Left bracketing `•(…•(•(l₁,l₂),l₃)…,lₙ)`.
    pub fn left_bracketing(w: &Word) -> Option<AreaTree> {
        let (first, rest) = w.letters().split_first()?;
        Some(rest.iter().fold(AreaTree::Leaf(*first), |acc, &l| AreaTree::node(acc, AreaTree::Leaf(l))))
    }

    pub fn parse(text: &str) -> Result<AreaTree> {
        let m = MixedTree::parse(text)?;
        m.to_area().ok_or_else(|| Error::Parse { offset: 0, message: "area trees use only a(…) nodes".into() })
    }

    fn relabel(&self, labels: &[Letter], pos: &mut usize) -> AreaTree {
        match self {
            AreaTree::Leaf(_) => {
                *pos += 1;
                AreaTree::Leaf(labels[*pos - 1])
            }
            AreaTree::Node(a, b) => {
                let a = a.relabel(labels, pos);
                AreaTree::node(a, b.relabel(labels, pos))
            }
        }
    }
}

impl MixedTree {
    pub fn leaves(&self) -> usize {
        match self {
            MixedTree::Leaf(_) => 1,
            MixedTree::Node(_, a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn foliage(&self) -> Word {
        self.shape().foliage()
    }

    /// The underlying tree with every node read as `•`.
    pub fn shape(&self) -> AreaTree {
        match self {
            MixedTree::Leaf(l) => AreaTree::Leaf(*l),
            MixedTree::Node(_, a, b) => AreaTree::node(a.shape(), b.shape()),
        }
    }

    pub fn to_area(&self) -> Option<AreaTree> {
        match self {
            MixedTree::Leaf(l) => Some(AreaTree::Leaf(*l)),
            MixedTree::Node(NodeKind::Area, a, b) => Some(AreaTree::node(a.to_area()?, b.to_area()?)),
            MixedTree::Node(NodeKind::Shuffle, ..) => None,
        }
    }

    /// The `■` nodes form a (possibly empty) subtree containing the root.
    pub fn is_valid(&self) -> bool {
        match self {
            MixedTree::Leaf(_) => true,
            MixedTree::Node(NodeKind::Area, a, b) => a.to_area().is_some() && b.to_area().is_some(),
            MixedTree::Node(NodeKind::Shuffle, a, b) => a.is_valid() && b.is_valid(),
        }
    }

    /// `area` at `•` nodes, `⧢` at `■` nodes.
    pub fn mixed_eval(&self, d: u32) -> Result<TensorElem> {
        match self {
            MixedTree::Leaf(l) => TensorElem::letter(d, *l),
            MixedTree::Node(NodeKind::Area, a, b) => a.mixed_eval(d)?.area(&b.mixed_eval(d)?),
            MixedTree::Node(NodeKind::Shuffle, a, b) => a.mixed_eval(d)?.shuffle(&b.mixed_eval(d)?),
        }
    }

    pub fn lie_eval(&self, d: u32) -> Result<TensorElem> {
        self.shape().lie_eval(d)
    }

    /// Right spine of `■` nodes: `τ⁽¹⁾, …, τ⁽ℓ⁾` together with the spine
    /// subtrees `τ^(≥1) = τ, …, τ^(≥ℓ) = τ⁽ℓ⁾`.
    pub fn spine(&self) -> (Vec<&MixedTree>, Vec<&MixedTree>) {
        let mut parts = Vec::new();
        let mut tails = vec![self];
        let mut cur = self;
        while let MixedTree::Node(NodeKind::Shuffle, a, b) = cur {
            parts.push(a.as_ref());
            cur = b.as_ref();
            tails.push(cur);
        }
        parts.push(cur);
        (parts, tails)
    }

    /// `e(τ)`: `1/(n·c(τ))` for a `•` root (or a leaf), and for a `■` root
    /// `−Σ_{j=2}^{ℓ} |τ^(≥j)| e(τ^(≥j)) / (j!·|τ|) · Π_{i<j} e(τ⁽ⁱ⁾)`.
    pub fn coeff_e(&self) -> Scalar {
        match self {
            MixedTree::Node(NodeKind::Shuffle, ..) => {
                let (parts, tails) = self.spine();
                let n = int(self.leaves() as i64);
                let mut acc = Scalar::zero();
                let mut prefix = Scalar::one();
                for j in 2..=parts.len() {
                    prefix *= parts[j - 2].coeff_e();
                    let tail = tails[j - 1];
                    acc += int(tail.leaves() as i64) * tail.coeff_e() / (factorial(j) * &n) * &prefix;
                }
                -acc
            }
            _ => Scalar::one() / (int(self.leaves() as i64) * self.shape().coeff_c()),
        }
    }

    pub fn parse(text: &str) -> Result<MixedTree> {
        let mut p = TreeParser { s: text.as_bytes(), pos: 0 };
        p.skip_ws();
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse { offset: p.pos, message: "trailing input".into() });
        }
        if !t.is_valid() {
            return Err(Error::Parse { offset: 0, message: "s(…) nodes must connect to the root".into() });
        }
        Ok(t)
    }

    fn relabel(&self, labels: &[Letter], pos: &mut usize) -> MixedTree {
        match self {
            MixedTree::Leaf(_) => {
                *pos += 1;
                MixedTree::Leaf(labels[*pos - 1])
            }
            MixedTree::Node(k, a, b) => {
                let a = a.relabel(labels, pos);
                MixedTree::Node(*k, Box::new(a), Box::new(b.relabel(labels, pos)))
            }
        }
    }
}

struct TreeParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn tree(&mut self) -> Result<MixedTree> {
        self.skip_ws();
        match self.s.get(self.pos) {
            Some(b'a') | Some(b's') => {
                let kind = if self.s[self.pos] == b'a' { NodeKind::Area } else { NodeKind::Shuffle };
                self.pos += 1;
                self.expect(b'(')?;
                let a = self.tree()?;
                self.expect(b',')?;
                let b = self.tree()?;
                self.expect(b')')?;
                Ok(MixedTree::Node(kind, Box::new(a), Box::new(b)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
                match text.parse::<Letter>() {
                    Ok(l) if l > 0 => Ok(MixedTree::Leaf(l)),
                    _ => {
                        self.pos = start;
                        self.err("leaf letters are integers in 1..=255")
                    }
                }
            }
            _ => self.err("expected a(, s( or a letter"),
        }
    }
}

impl fmt::Display for MixedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedTree::Leaf(l) => write!(f, "{l}"),
            MixedTree::Node(k, a, b) => {
                let tag = if *k == NodeKind::Area { 'a' } else { 's' };
                write!(f, "{tag}({a},{b})")
            }
        }
    }
}

impl fmt::Display for AreaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AreaTree::Leaf(l) => write!(f, "{l}"),
            AreaTree::Node(a, b) => write!(f, "a({a},{b})"),
        }
    }
}

/// Unlabelled shapes with `n` leaves, split point ascending.
fn shapes(n: usize) -> Vec<AreaTree> {
    if n == 1 {
        return vec![AreaTree::Leaf(0)];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for a in shapes(k) {
            for b in shapes(n - k) {
                out.push(AreaTree::node(a.clone(), b));
            }
        }
    }
    out
}

/// Unlabelled mixed shapes; `■` allowed only while connected to the root.
fn mixed_shapes(n: usize, allow_square: bool) -> Vec<MixedTree> {
    if n == 1 {
        return vec![MixedTree::Leaf(0)];
    }
    let mut out = Vec::new();
    for k in 1..n {
        let kinds: &[NodeKind] = if allow_square { &[NodeKind::Area, NodeKind::Shuffle] } else { &[NodeKind::Area] };
        for &kind in kinds {
            let below = kind == NodeKind::Shuffle;
            for a in mixed_shapes(k, below) {
                for b in mixed_shapes(n - k, below) {
                    out.push(MixedTree::Node(kind, Box::new(a.clone()), Box::new(b)));
                }
            }
        }
    }
    out
}

/// All trees in `𝔅ₙ` labelled by `1..=d`: shapes first, then labels
/// lexicographically.
pub fn enumerate_trees(d: u32, n: usize) -> Result<Vec<AreaTree>> {
    if n == 0 {
        return Err(Error::Precondition("trees need at least one leaf".into()));
    }
    guard::check("enumerate_trees", catalan(n - 1).saturating_mul(guard::power(d, n)))?;
    let labels = Word::all(d, n);
    let mut out = Vec::new();
    for s in shapes(n) {
        for w in &labels {
            out.push(s.relabel(w.letters(), &mut 0));
        }
    }
    Ok(out)
}

/// All trees in `𝔅̃ₙ` labelled by `1..=d`.
pub fn enumerate_mixed(d: u32, n: usize) -> Result<Vec<MixedTree>> {
    if n == 0 {
        return Err(Error::Precondition("trees need at least one leaf".into()));
    }
    let sh = mixed_shapes(n, true);
    guard::check("enumerate_mixed", sh.len().saturating_mul(guard::power(d, n)))?;
    let labels = Word::all(d, n);
    let mut out = Vec::new();
    for s in &sh {
        for w in &labels {
            out.push(s.relabel(w.letters(), &mut 0));
        }
    }
    Ok(out)
}

/// `Rₙ = Σ_{τ∈𝔅ₙ} 1/c(τ) · area(τ) ⊗ lie(τ)`.
pub fn r_via_trees(d: u32, n: usize) -> Result<DoubleTensor> {
    let mut out = DoubleTensor::zero(d, n);
    for s in shapes(n) {
        let weight = Scalar::one() / s.coeff_c();
        for w in Word::all(d, n) {
            let t = s.relabel(w.letters(), &mut 0);
            out += &DoubleTensor::from_pair(&t.area_eval(d)?.scale(&weight), &t.lie_eval(d)?, n)?;
        }
    }
    Ok(out)
}

/// `Λₙ = Σ_{τ∈𝔅̃ₙ} e(τ) · areã(τ) ⊗ lie(τ)`.
pub fn lambda_via_trees(d: u32, n: usize) -> Result<DoubleTensor> {
    let sh = mixed_shapes(n, true);
    guard::check("lambda_via_trees", sh.len().saturating_mul(guard::power(d, n)))?;
    let mut out = DoubleTensor::zero(d, n);
    for s in &sh {
        let e = s.coeff_e();
        for w in Word::all(d, n) {
            let t = s.relabel(w.letters(), &mut 0);
            out += &DoubleTensor::from_pair(&t.mixed_eval(d)?.scale(&e), &t.lie_eval(d)?, n)?;
        }
    }
    Ok(out)
}

/// Labellings of a shape by the distinct rearrangements of `h`.
fn anagrams(h: &Word) -> Vec<Word> {
    let mut letters = h.content();
    let mut out = vec![Word::new(letters.clone())];
    // next lexicographic permutation
    loop {
        let n = letters.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| letters[i] < letters[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| letters[j] > letters[i]).expect("successor exists");
        letters.swap(i, j);
        letters[i + 1..].reverse();
        out.push(Word::new(letters.clone()));
    }
}

/// `ζ_h = Σ e(τ) ⟨S_h, lie(τ)⟩ areã(τ)` over mixed trees whose foliage is an
/// anagram of `h`.
pub fn zeta_via_trees(basis: &HallBasis, h: &Word) -> Result<TensorElem> {
    let d = basis.alphabet();
    let id = basis.find(h).ok_or_else(|| Error::Precondition(format!("{h} is not in the basis")))?;
    let s_h = basis.s(id);
    let mut out = TensorElem::zero(d);
    for s in mixed_shapes(h.len(), true) {
        let e = s.coeff_e();
        for w in anagrams(h) {
            let t = s.relabel(w.letters(), &mut 0);
            let p = s_h.pairing(&t.lie_eval(d)?)?;
            if !p.is_zero() {
                out.add_scaled(&t.mixed_eval(d)?, &(&e * p));
            }
        }
    }
    Ok(out)
}

struct StructureConstants<'a> {
    basis: &'a HallBasis,
    memo: HashMap<(usize, usize, usize), Scalar>,
}

impl StructureConstants<'_> {
    fn get(&mut self, h: usize, h1: usize, h2: usize) -> Result<Scalar> {
        if let Some(c) = self.memo.get(&(h, h1, h2)) {
            return Ok(c.clone());
        }
        let c = self.basis.structure_constant(h, h1, h2)?;
        self.memo.insert((h, h1, h2), c.clone());
        Ok(c)
    }

    /// Pairs `h1 < h2` (Hall order) whose lengths add up to `|h|`.
    fn pairs(&self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n1 in 1..n {
            for &h1 in self.basis.level(n1) {
                for &h2 in self.basis.level(n - n1) {
                    if self.basis.cmp(h1, h2).is_lt() {
                        out.push((h1, h2));
                    }
                }
            }
        }
        out
    }
}

/// `q^h_τ` for every Hall word `h` of length `|τ|`.
pub fn q_coefficients(basis: &HallBasis, tree: &AreaTree) -> Result<Vec<(usize, Scalar)>> {
    let mut sc = StructureConstants { basis, memo: HashMap::new() };
    let mut memo = HashMap::new();
    q_rec(&mut sc, tree, &mut memo)
}

fn q_rec(
    sc: &mut StructureConstants<'_>,
    tree: &AreaTree,
    memo: &mut HashMap<AreaTree, Vec<(usize, Scalar)>>,
) -> Result<Vec<(usize, Scalar)>> {
    if let Some(v) = memo.get(tree) {
        return Ok(v.clone());
    }
    let out = match tree {
        AreaTree::Leaf(l) => {
            let id = sc.basis.find(&Word::letter(*l)).ok_or_else(|| Error::LetterOutOfRange { letter: *l as u32, d: sc.basis.alphabet() })?;
            vec![(id, Scalar::one())]
        }
        AreaTree::Node(a, b) => {
            let qa = q_rec(sc, a, memo)?;
            let qb = q_rec(sc, b, memo)?;
            let n = tree.leaves();
            let mut out = Vec::new();
            for &h in sc.basis.level(n) {
                let mut acc = Scalar::zero();
                for (h1, c1) in &qa {
                    for (h2, c2) in &qb {
                        if sc.basis.cmp(*h1, *h2).is_lt() {
                            acc += c1 * c2 * sc.get(h, *h1, *h2)?;
                        }
                    }
                }
                if !acc.is_zero() {
                    out.push((h, acc));
                }
            }
            out
        }
    };
    memo.insert(tree.clone(), out.clone());
    Ok(out)
}

/// `p^h_τ = ⟨S_h, lie(τ)⟩`.
pub fn p_coefficient(basis: &HallBasis, h: usize, tree: &AreaTree) -> Result<Scalar> {
    basis.s(h).pairing(&tree.lie_eval(basis.alphabet())?)
}

/// `Ρ_h = rho(S_h)` by the Hall recursion or by one of the two tree sums.
pub fn rho_hall(basis: &HallBasis, h: &Word, method: RhoHallMethod) -> Result<TensorElem> {
    let d = basis.alphabet();
    let id = basis.find(h).ok_or_else(|| Error::Precondition(format!("{h} is not in the basis")))?;
    match method {
        RhoHallMethod::Recursion => {
            let mut sc = StructureConstants { basis, memo: HashMap::new() };
            let mut memo = HashMap::new();
            rho_rec(&mut sc, id, &mut memo)
        }
        RhoHallMethod::QTrees => {
            let mut sc = StructureConstants { basis, memo: HashMap::new() };
            let mut memo = HashMap::new();
            let mut out = TensorElem::zero(d);
            for s in shapes(h.len()) {
                let weight = Scalar::one() / s.coeff_b();
                for w in anagrams(h) {
                    let t = s.relabel(w.letters(), &mut 0);
                    let q = q_rec(&mut sc, &t, &mut memo)?;
                    if let Some((_, c)) = q.iter().find(|(x, _)| *x == id) {
                        out.add_scaled(&t.area_eval(d)?, &(&weight * c));
                    }
                }
            }
            Ok(out)
        }
        RhoHallMethod::PTrees => {
            let mut out = TensorElem::zero(d);
            for s in shapes(h.len()) {
                let weight = Scalar::one() / s.coeff_c();
                for w in anagrams(h) {
                    let t = s.relabel(w.letters(), &mut 0);
                    let p = p_coefficient(basis, id, &t)?;
                    if !p.is_zero() {
                        out.add_scaled(&t.area_eval(d)?, &(&weight * p));
                    }
                }
            }
            Ok(out)
        }
    }
}

fn rho_rec(sc: &mut StructureConstants<'_>, id: usize, memo: &mut HashMap<usize, TensorElem>) -> Result<TensorElem> {
    if let Some(x) = memo.get(&id) {
        return Ok(x.clone());
    }
    let basis = sc.basis;
    let n = basis.element(id).word.len();
    let out = if n == 1 {
        basis.p(id).clone()
    } else {
        let mut acc = TensorElem::zero(basis.alphabet());
        for (h1, h2) in sc.pairs(n) {
            let c = sc.get(id, h1, h2)?;
            if c.is_zero() {
                continue;
            }
            let a = rho_rec(sc, h1, memo)?.area(&rho_rec(sc, h2, memo)?)?;
            acc.add_scaled(&a, &c);
        }
        acc.scale(&(Scalar::one() / int(n as i64 - 1)))
    };
    memo.insert(id, out.clone());
    Ok(out)
}
