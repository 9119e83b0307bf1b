//! Exact linear algebra over the rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination on integer rows obtained by
//! clearing denominators. Solving and inversion use rational Gauss–Jordan.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::tensor::TensorElem;
use crate::word::Word;

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Scalar::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Coefficients `c` with `Σ c_i generators[i] = target`, if any.
pub fn solve_in_span(generators: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = generators.len();
    let dim = target.len();
    let mut m: Vec<Vec<Scalar>> = (0..dim)
        .map(|row| {
            let mut v: Vec<Scalar> = generators.iter().map(|g| g[row].clone()).collect();
            v.push(target[row].clone());
            v
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut sol = vec![Scalar::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        sol[c] = m[row][k].clone();
    }
    Some(sol)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(matrix: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = matrix.len();
    let mut m: Vec<Vec<Scalar>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            v
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Dense coordinates of `elems` over the union of their supports.
pub fn coordinates(elems: &[TensorElem]) -> (Vec<Word>, Vec<Vec<Scalar>>) {
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    for x in elems {
        for (w, _) in x.terms() {
            let next = index.len();
            index.entry(w.clone()).or_insert(next);
        }
    }
    let mut words: Vec<Word> = index.keys().cloned().collect();
    words.sort();
    let pos: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows = elems
        .iter()
        .map(|x| {
            let mut v = vec![Scalar::zero(); words.len()];
            for (w, c) in x.terms() {
                v[pos[w]] = c.clone();
            }
            v
        })
        .collect();
    (words, rows)
}

/// Rank of the span of `elems`.
pub fn span_rank(elems: &[TensorElem]) -> usize {
    rank(&coordinates(elems).1)
}
