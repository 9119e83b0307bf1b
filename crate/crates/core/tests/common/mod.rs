#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tortkara_core::scalar::{int, q};
use tortkara_core::span::lyndon_bracketing;
use tortkara_core::{hall, AreaTree, Scalar, TensorElem, TimeSeries, Word};

pub fn el(d: u32, s: &str) -> TensorElem {
    TensorElem::parse(d, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn area_of(d: u32, tree: &str) -> TensorElem {
    AreaTree::parse(tree).unwrap().area_eval(d).unwrap()
}

/// Evaluates `[1,[1,2]]`-style bracket notation.
pub fn bracket(d: u32, s: &str) -> TensorElem {
    fn go(d: u32, b: &[u8], pos: &mut usize) -> TensorElem {
        if b[*pos] == b'[' {
            *pos += 1;
            let l = go(d, b, pos);
            assert_eq!(b[*pos], b',');
            *pos += 1;
            let r = go(d, b, pos);
            assert_eq!(b[*pos], b']');
            *pos += 1;
            l.lie_bracket(&r).unwrap()
        } else {
            let c = b[*pos] - b'0';
            *pos += 1;
            TensorElem::letter(d, c).unwrap()
        }
    }
    let b: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    go(d, &b, &mut 0)
}

/// `[[…[w₁,w₂],…],wₙ]`.
pub fn left_lie(d: u32, w: &Word) -> TensorElem {
    let l = w.letters();
    let mut acc = TensorElem::letter(d, l[0]).unwrap();
    for &c in &l[1..] {
        acc = acc.lie_bracket(&TensorElem::letter(d, c).unwrap()).unwrap();
    }
    acc
}

pub fn random_word(rng: &mut ChaCha8Rng, d: u32, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.gen_range(1..=d as u8)).collect())
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    q(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Random element with no `e` component and degree in `1..=max_degree`.
pub fn random_element(rng: &mut ChaCha8Rng, d: u32, max_degree: usize) -> TensorElem {
    loop {
        let mut x = TensorElem::zero(d);
        for _ in 0..rng.gen_range(1..=3) {
            let len = rng.gen_range(1..=max_degree);
            let w = random_word(rng, d, len);
            x.add_scaled(&TensorElem::from_word(d, w).unwrap(), &int(rng.gen_range(-3..=3)));
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random Lie polynomial on Lyndon brackets up to `level`.
pub fn random_lie(rng: &mut ChaCha8Rng, d: u32, level: usize) -> TensorElem {
    let mut x = TensorElem::zero(d);
    for n in 1..=level {
        for w in hall::lyndon_words(d, n) {
            if rng.gen_bool(0.5) {
                x.add_scaled(&lyndon_bracketing(d, &w).unwrap(), &small_rational(rng));
            }
        }
    }
    x
}

pub fn random_path(rng: &mut ChaCha8Rng, d: u32, segments: usize) -> TimeSeries {
    let mut pts = vec![vec![Scalar::from_integer(0.into()); d as usize]];
    for _ in 0..segments {
        let last = pts.last().unwrap().clone();
        pts.push(last.iter().map(|c| c + small_rational(rng)).collect());
    }
    TimeSeries::new(d, pts).unwrap()
}
