//! The span `𝒜` of letters and iterated areas: membership, the left
//! bracketing `arealb`, permutation expansions, `vol`, Tortkara checks, and
//! rank-based generation and spanning reports.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hall::{lyndon_words, witt_dimension};
use crate::linalg;
use crate::scalar::{int, Scalar};
use crate::tensor::{RhoMethod, TensorElem};
use crate::trees::AreaTree;
use crate::word::{Letter, Word};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Precondition(format!("{one_line:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn sign(&self) -> i64 {
        let mut s = 1;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }

    /// All permutations of `1..=n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }

    /// `gᵢ(σ) = +1` iff `σ⁻¹(j) < σ⁻¹(i)` for every `j < i`.
    pub fn g(&self, i: usize) -> i64 {
        let inv = self.inverse();
        if (1..i).all(|j| inv.apply(j) < inv.apply(i)) {
            1
        } else {
            -1
        }
    }

    /// `fₙ(σ) = Π gᵢ(σ)`.
    pub fn f(&self) -> i64 {
        (1..=self.len()).map(|i| self.g(i)).product()
    }

    /// `{σ(i), …, σ(n)}` is an interval for every `i`.
    pub fn has_interval_suffixes(&self) -> bool {
        let n = self.len();
        (1..=n).all(|i| {
            let tail = &self.0[i - 1..];
            let lo = *tail.iter().min().expect("nonempty");
            let hi = *tail.iter().max().expect("nonempty");
            hi - lo + 1 == tail.len()
        })
    }

    /// `l_{σ(1)} ⋯ l_{σ(n)}`.
    pub fn permute(&self, w: &Word) -> Word {
        Word::new(self.0.iter().map(|&i| w.letters()[i - 1]).collect())
    }
}

/// Coordinates of an element of `𝒜` on `{letters} ∪ {w·(ij−ji) : i<j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ADecomposition {
    pub letters: Vec<(Letter, Scalar)>,
    pub tails: Vec<(Word, Letter, Letter, Scalar)>,
}

impl ADecomposition {
    pub fn evaluate(&self, d: u32) -> Result<TensorElem> {
        let mut out = TensorElem::zero(d);
        for (l, c) in &self.letters {
            out.add_scaled(&TensorElem::letter(d, *l)?, c);
        }
        for (w, i, j, c) in &self.tails {
            out.add_scaled(&a_basis_element(d, w, *i, *j)?, c);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AMembership {
    Member(ADecomposition),
    NotMember(String),
}

impl AMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, AMembership::Member(_))
    }
}

/// `w·(ij − ji)`.
pub fn a_basis_element(d: u32, w: &Word, i: Letter, j: Letter) -> Result<TensorElem> {
    let mut ij = w.clone();
    ij.push(i);
    ij.push(j);
    let mut ji = w.clone();
    ji.push(j);
    ji.push(i);
    TensorElem::from_terms(d, [(ij, Scalar::one()), (ji, -Scalar::one())])
}

/// Basis of the degree-`n` part of `𝒜`.
pub fn a_basis(d: u32, n: usize) -> Result<Vec<TensorElem>> {
    if n == 1 {
        return (1..=d as Letter).map(|l| TensorElem::letter(d, l)).collect();
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    for w in Word::all(d, n - 2) {
        for i in 1..=d as Letter {
            for j in i + 1..=d as Letter {
                out.push(a_basis_element(d, &w, i, j)?);
            }
        }
    }
    Ok(out)
}

/// `d^{n−2}·d(d−1)/2` for `n ≥ 2`, `d` for `n = 1`.
pub fn a_dimension(d: u32, n: usize) -> usize {
    match n {
        0 => 0,
        1 => d as usize,
        _ => crate::guard::power(d, n - 2) * (d as usize * (d as usize - 1) / 2),
    }
}

/// Decomposes `x` on the basis of `𝒜`, or explains why it is not a member.
pub fn membership_a(x: &TensorElem) -> AMembership {
    let mut dec = ADecomposition { letters: Vec::new(), tails: Vec::new() };
    for (w, c) in x.terms() {
        let l = w.letters();
        match l.len() {
            0 => return AMembership::NotMember("nonzero empty-word coefficient".into()),
            1 => dec.letters.push((l[0], c.clone())),
            n => {
                let (i, j) = (l[n - 2], l[n - 1]);
                let prefix = w.slice(0, n - 2);
                if i == j {
                    return AMembership::NotMember(format!("word {w} ends in a repeated letter"));
                }
                let mut swapped = prefix.clone();
                swapped.push(j);
                swapped.push(i);
                if x.coeff(&swapped) != -c.clone() {
                    return AMembership::NotMember(format!("tail of {w} is not antisymmetric"));
                }
                if i < j {
                    dec.tails.push((prefix, i, j, c.clone()));
                }
            }
        }
    }
    AMembership::Member(dec)
}

pub fn arealb_word(d: u32, w: &Word) -> Result<TensorElem> {
    match AreaTree::left_bracketing(w) {
        None => Ok(TensorElem::zero(d)),
        Some(t) => t.area_eval(d),
    }
}

/// Linear extension of `l₁⋯lₙ ↦ area(…area(area(l₁,l₂),l₃)…,lₙ)`.
pub fn arealb(x: &TensorElem) -> Result<TensorElem> {
    let d = x.alphabet();
    let mut out = TensorElem::zero(d);
    for (w, c) in x.terms() {
        out.add_scaled(&arealb_word(d, w)?, c);
    }
    Ok(out)
}

fn expand(d: u32, w: &Word, keep: impl Fn(&Permutation) -> bool) -> Result<TensorElem> {
    if w.is_empty() {
        return Err(Error::Precondition("permutation expansions need a nonempty word".into()));
    }
    w.check_alphabet(d)?;
    let mut out = TensorElem::zero(d);
    for s in Permutation::all(w.len()) {
        if keep(&s) {
            out.add_term(s.permute(w), int(s.f()));
        }
    }
    Ok(out)
}

/// `Σ_{σ∈Sₙ} fₙ(σ) l_{σ(1)}⋯l_{σ(n)}`.
pub fn theta_expansion(d: u32, w: &Word) -> Result<TensorElem> {
    expand(d, w, |_| true)
}

/// The same sum restricted to permutations with interval suffixes.
pub fn rho_permutation(d: u32, w: &Word) -> Result<TensorElem> {
    expand(d, w, Permutation::has_interval_suffixes)
}

/// `area(area(x,y),z) + area(area(y,z),x) + area(area(z,x),y)`.
pub fn vol(a: &TensorElem, b: &TensorElem, c: &TensorElem) -> Result<TensorElem> {
    let t1 = a.area(b)?.area(c)?;
    let t2 = b.area(c)?.area(a)?;
    let t3 = c.area(a)?.area(b)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// `Σ_σ sign(σ) ((a_{σ(1)}≻a_{σ(2)})≻…)≻a_{σ(n)}`.
pub fn vol_n(args: &[TensorElem]) -> Result<TensorElem> {
    let first = args.first().ok_or_else(|| Error::Precondition("vol_n needs an argument".into()))?;
    let d = first.alphabet();
    for a in args {
        if a.has_empty_component() {
            return Err(Error::EmptyWordComponent { op: "vol_n" });
        }
        first.check_same_alphabet(a)?;
    }
    let mut out = TensorElem::zero(d);
    for s in Permutation::all(args.len()) {
        let mut acc = args[s.apply(1) - 1].clone();
        for i in 2..=args.len() {
            acc = acc.half_shuffle(&args[s.apply(i) - 1])?;
        }
        out.add_scaled(&acc, &int(s.sign()));
    }
    Ok(out)
}

/// `Σ_σ sign(σ) σ(1)⋯σ(n)` over the alphabet `max(d, n)`.
pub fn inv_n(d: u32, n: usize) -> Result<TensorElem> {
    let alphabet = d.max(n as u32);
    let mut out = TensorElem::zero(alphabet);
    for s in Permutation::all(n) {
        let w = Word::new(s.one_line().iter().map(|&i| i as Letter).collect());
        out.add_term(w, int(s.sign()));
    }
    Ok(out)
}

/// The Tortkara identity in its three-argument form and, when `d` is given,
/// in both four-argument forms.
pub fn tortkara_check(a: &TensorElem, b: &TensorElem, c: &TensorElem, d: Option<&TensorElem>) -> Result<bool> {
    let lhs = a.area(b)?.area(&c.area(b)?)?;
    let rhs = vol(a, b, c)?.area(b)?;
    if lhs != rhs {
        return Ok(false);
    }
    let Some(d) = d else {
        return Ok(true);
    };
    let ab_cd = a.area(b)?.area(&c.area(d)?)?;
    let ad_cb = a.area(d)?.area(&c.area(b)?)?;
    let v_abc_d = vol(a, b, c)?.area(d)?;
    let v_adc_b = vol(a, d, c)?.area(b)?;
    if &ab_cd + &ad_cb != &v_abc_d + &v_adc_b {
        return Ok(false);
    }
    let v_bad_c = vol(b, a, d)?.area(c)?;
    let v_bcd_a = vol(b, c, d)?.area(a)?;
    let rhs = &(&(&v_abc_d + &v_adc_b) + &v_bad_c) + &v_bcd_a;
    Ok(ab_cd.scale(&int(2)) == rhs)
}

/// Outcome of a rank computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub d: u32,
    pub n: usize,
    pub generators: usize,
    pub rank: usize,
    pub target: usize,
    pub full_rank: bool,
}

impl SpanReport {
    fn new(d: u32, n: usize, generators: usize, rank: usize, target: usize) -> Self {
        SpanReport { d, n, generators, rank, target, full_rank: rank == target }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn is_lyndon(w: &[Letter]) -> bool {
    (1..w.len()).all(|k| w[k..] > *w)
}

/// `P_w` for a Lyndon word, bracketing its standard factorization.
pub fn lyndon_bracketing(d: u32, w: &Word) -> Result<TensorElem> {
    let l = w.letters();
    if l.len() == 1 {
        return TensorElem::from_word(d, w.clone());
    }
    let k = (1..l.len()).find(|&k| is_lyndon(&l[k..])).expect("a letter suffix is Lyndon");
    lyndon_bracketing(d, &w.slice(0, k))?.lie_bracket(&lyndon_bracketing(d, &w.slice(k, l.len()))?)
}

/// Rank of `⟨xᵢ, P_h⟩` against the Lyndon basis of level `n`; full rank is
/// the criterion for `X` to generate the shuffle algebra at that level.
pub fn generation_rank(x: &[TensorElem], d: u32, n: usize) -> Result<SpanReport> {
    for e in x {
        if e.alphabet() != d {
            return Err(Error::AlphabetMismatch { left: e.alphabet(), right: d });
        }
        if !e.is_homogeneous(n) {
            return Err(Error::Precondition(format!("generator {e} is not homogeneous of degree {n}")));
        }
    }
    let lie: Vec<TensorElem> = lyndon_words(d, n).iter().map(|w| lyndon_bracketing(d, w)).collect::<Result<_>>()?;
    let rows: Vec<Vec<Scalar>> = x.iter().map(|e| lie.iter().map(|p| e.pairing(p)).collect::<Result<_>>()).collect::<Result<_>>()?;
    Ok(SpanReport::new(d, n, x.len(), linalg::rank(&rows), witt_dimension(d, n)))
}

/// Generation rank of the degree-`n` part of `𝒜`.
pub fn areas_generate_check(d: u32, n: usize) -> Result<SpanReport> {
    generation_rank(&a_basis(d, n)?, d, n)
}

/// Generation rank of `{rho(w) : |w| = n}`.
pub fn rho_generate_check(d: u32, n: usize) -> Result<SpanReport> {
    let gens: Vec<TensorElem> =
        Word::all(d, n).into_iter().map(|w| TensorElem::from_word(d, w).map(|x| x.rho(RhoMethod::Recursive))).collect::<Result<_>>()?;
    generation_rank(&gens, d, n)
}

/// `arealb(i₁⋯iₙ)` for every word with `i₁ < i₂`.
pub fn left_bracketings(d: u32, n: usize) -> Result<Vec<TensorElem>> {
    Word::all(d, n).iter().filter(|w| w.letters()[0] < w.letters()[1]).map(|w| arealb_word(d, w)).collect()
}

/// Span dimension of the strict left bracketings against `dim 𝒜ₙ`.
pub fn leftbracket_span_check(d: u32, n: usize) -> Result<SpanReport> {
    if n < 2 {
        return Err(Error::Precondition("left bracketings need n ≥ 2".into()));
    }
    let gens = left_bracketings(d, n)?;
    Ok(SpanReport::new(d, n, gens.len(), linalg::span_rank(&gens), a_dimension(d, n)))
}

/// Factorizations `w = w₁⋯wₙ` with weights `1/k_{|w₁|,…,|wₙ|}`, where
/// `k_{m₁,…,mₙ} = (m₁+⋯+mₙ) k_{m₂,…,mₙ}` and `k_m = m`.
pub fn words_as_rho_shuffles(w: &Word) -> Result<Vec<(Vec<Word>, Scalar)>> {
    if w.is_empty() {
        return Err(Error::Precondition("words_as_rho_shuffles needs a nonempty word".into()));
    }
    let n = w.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut pieces = Vec::new();
        let mut start = 0;
        for cut in 1..n {
            if mask >> (cut - 1) & 1 == 1 {
                pieces.push(w.slice(start, cut));
                start = cut;
            }
        }
        pieces.push(w.slice(start, n));
        let mut k = Scalar::one();
        let mut suffix = 0;
        for p in pieces.iter().rev() {
            suffix += p.len();
            k *= int(suffix as i64);
        }
        out.push((pieces, Scalar::one() / k));
    }
    Ok(out)
}

/// `Σ c · rho(w₁) ⧢ ⋯ ⧢ rho(wₙ)`.
pub fn evaluate_rho_shuffles(d: u32, expansion: &[(Vec<Word>, Scalar)]) -> Result<TensorElem> {
    let mut out = TensorElem::zero(d);
    for (pieces, c) in expansion {
        let mut acc = TensorElem::unit(d);
        for p in pieces {
            acc = acc.shuffle(&TensorElem::from_word(d, p.clone())?.rho(RhoMethod::Recursive))?;
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// Evaluates every labelled `area(arealb(a₁⋯aₙ₋₂), area(aₙ₋₁,aₙ))` and solves
/// for it in the span of the degree-`n` left bracketings. `generators` and
/// `target` count labellings, `rank` counts the solvable ones.
pub fn special_tree_reduction(n: usize, d: u32) -> Result<SpanReport> {
    if n < 4 {
        return Err(Error::Precondition("special trees need n ≥ 4".into()));
    }
    let basis = left_bracketings(d, n)?;
    let labellings = Word::all(d, n);
    let mut specials = Vec::with_capacity(labellings.len());
    for w in &labellings {
        let l = w.letters();
        let left = arealb_word(d, &w.slice(0, n - 2))?;
        let right = TensorElem::letter(d, l[n - 2])?.area(&TensorElem::letter(d, l[n - 1])?)?;
        specials.push(left.area(&right)?);
    }
    let mut all = basis.clone();
    all.extend(specials.iter().cloned());
    let (_, rows) = linalg::coordinates(&all);
    let gens = &rows[..basis.len()];
    let solvable = rows[basis.len()..].iter().filter(|t| linalg::solve_in_span(gens, t).is_some()).count();
    Ok(SpanReport::new(d, n, labellings.len(), solvable, labellings.len()))
}

/// Writes an element of `ℝ ⊕ 𝒜` as a constant plus a combination of
/// labelled area trees, degree by degree.
pub fn area_tree_expansion(x: &TensorElem) -> Result<(Scalar, Vec<(AreaTree, Scalar)>)> {
    if let AMembership::NotMember(why) = membership_a(&(x - &TensorElem::unit(x.alphabet()).scale(&x.empty_coeff()))) {
        return Err(Error::Precondition(format!("not in the span of areas: {why}")));
    }
    let d = x.alphabet();
    let mut out = Vec::new();
    for n in 1..=x.degree() {
        let part = x.proj(n);
        if part.is_zero() {
            continue;
        }
        let trees = crate::trees::enumerate_trees(d, n)?;
        let mut all: Vec<TensorElem> = trees.iter().map(|t| t.area_eval(d)).collect::<Result<_>>()?;
        all.push(part);
        let (_, rows) = linalg::coordinates(&all);
        let (target, gens) = rows.split_last().expect("target row present");
        let sol = linalg::solve_in_span(gens, target).ok_or_else(|| Error::Precondition(format!("degree {n} part is not spanned by areas")))?;
        out.extend(trees.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()));
    }
    Ok((x.empty_coeff(), out))
}

/// `rho(w) ∈ 𝒜`.
pub fn im_rho_in_a(d: u32, w: &Word) -> Result<bool> {
    Ok(membership_a(&TensorElem::from_word(d, w.clone())?.rho(RhoMethod::Recursive)).is_member())
}
