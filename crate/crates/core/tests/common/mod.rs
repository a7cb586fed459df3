//! Reference implementations that share no code with the library beyond
//! reading entries out of its types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use supergeom::{AlgebraElement, Monomial, Signature, SuperMatrix};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

/// A term as explicit index lists, for the naive product.
type NaiveTerms = BTreeMap<(Vec<usize>, Vec<usize>), BigRational>;

fn naive(x: &AlgebraElement) -> NaiveTerms {
    x.terms()
        .map(|(m, c)| {
            (
                (m.even_indices().collect(), m.odd_indices().collect()),
                c.clone(),
            )
        })
        .collect()
}

type IndexMonomial = (Vec<usize>, Vec<usize>);

/// Concatenate the odd lists and bubble-sort them, counting swaps.
fn naive_monomial_product(
    (e1, o1): &IndexMonomial,
    (e2, o2): &IndexMonomial,
) -> Option<(IndexMonomial, bool)> {
    let mut evens: Vec<usize> = e1.iter().chain(e2).copied().collect();
    evens.sort_unstable();
    if evens.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut odds: Vec<usize> = o1.iter().chain(o2).copied().collect();
    let mut swaps = 0usize;
    for i in 0..odds.len() {
        for j in 0..odds.len() - 1 - i {
            if odds[j] > odds[j + 1] {
                odds.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if odds.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(((evens, odds), swaps % 2 == 1))
}

/// Product by explicit sorting, as an oracle for the bitset implementation.
pub fn naive_product(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out: NaiveTerms = BTreeMap::new();
    for (a, ca) in naive(x) {
        for (b, cb) in &naive(y) {
            if let Some((m, negative)) = naive_monomial_product(&a, b) {
                let c = &ca * cb;
                let entry = out.entry(m).or_insert_with(BigRational::zero);
                if negative {
                    *entry -= c;
                } else {
                    *entry += c;
                }
            }
        }
    }
    from_naive(x.signature(), out)
}

fn from_naive(sig: Signature, terms: NaiveTerms) -> AlgebraElement {
    let mut acc = AlgebraElement::zero(sig);
    for ((e, o), c) in terms {
        if c.is_zero() {
            continue;
        }
        let m = Monomial::from_indices(&e, &o).unwrap();
        acc = acc + AlgebraElement::monomial(sig, m, c).unwrap();
    }
    acc
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(n - 1) {
        // Insert n-1 at every position; inserting at k moves it past n-1-k
        // elements.
        for k in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(k, n - 1);
            out.push((p, odd ^ ((n - 1 - k) % 2 == 1)));
        }
    }
    out
}

/// Leibniz determinant over the even (commutative) subalgebra.
pub fn leibniz_det(m: &[Vec<AlgebraElement>], sig: Signature) -> AlgebraElement {
    let n = m.len();
    let mut acc = AlgebraElement::zero(sig);
    for (perm, odd) in permutations(n) {
        let mut term = AlgebraElement::one(sig);
        for (i, &j) in perm.iter().enumerate() {
            term = naive_product(&term, &m[i][j]);
        }
        acc = if odd { acc - term } else { acc + term };
    }
    acc
}

pub fn entries(
    g: &SuperMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Vec<Vec<AlgebraElement>> {
    rows.map(|i| cols.clone().map(|j| g.get(i, j).clone()).collect())
        .collect()
}

pub fn mat_mul(
    a: &[Vec<AlgebraElement>],
    b: &[Vec<AlgebraElement>],
    sig: Signature,
) -> Vec<Vec<AlgebraElement>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(AlgebraElement::zero(sig), |acc, k| {
                        acc + naive_product(&row[k], &b[k][j])
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_sub(a: &[Vec<AlgebraElement>], b: &[Vec<AlgebraElement>]) -> Vec<Vec<AlgebraElement>> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

/// Inverse of an element with nonzero body, by Newton iteration
/// `y ← y(2 − xy)`, which doubles the nilpotency order each step.
pub fn newton_inverse(x: &AlgebraElement) -> AlgebraElement {
    let sig = x.signature();
    let body = x.body();
    assert!(!body.is_zero());
    let mut y = AlgebraElement::constant(sig, body.recip());
    let two = AlgebraElement::from_int(sig, 2);
    for _ in 0..6 {
        y = naive_product(&y, &(&two - &naive_product(x, &y)));
    }
    assert!(naive_product(x, &y).is_one());
    y
}

/// Inverse of an even matrix by the cofactor formula with Leibniz minors.
pub fn cofactor_inverse(m: &[Vec<AlgebraElement>], sig: Signature) -> Vec<Vec<AlgebraElement>> {
    let n = m.len();
    let det_inv = newton_inverse(&leibniz_det(m, sig));
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<AlgebraElement>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != i)
                                .map(|c| m[r][c].clone())
                                .collect()
                        })
                        .collect();
                    let cof = leibniz_det(&minor, sig);
                    let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                    naive_product(&cof, &det_inv)
                })
                .collect()
        })
        .collect()
}

/// `det(p) · det(s − r p⁻¹ q)⁻¹`, evaluated with the oracles above.
pub fn berezinian_oracle(g: &SuperMatrix) -> AlgebraElement {
    let sig = g.signature();
    let m = g.row_shape().even;
    let n = g.nrows();
    let p = entries(g, 0..m, 0..m);
    let q = entries(g, 0..m, m..n);
    let r = entries(g, m..n, 0..m);
    let s = entries(g, m..n, m..n);
    let p_inv = cofactor_inverse(&p, sig);
    let schur = mat_sub(&s, &mat_mul(&mat_mul(&r, &p_inv, sig), &q, sig));
    naive_product(
        &leibniz_det(&p, sig),
        &newton_inverse(&leibniz_det(&schur, sig)),
    )
}

/// Determinant of a rational matrix by the Leibniz formula.
pub fn rational_det(m: &[Vec<BigRational>]) -> BigRational {
    permutations(m.len())
        .into_iter()
        .map(|(perm, odd)| {
            let t = perm
                .iter()
                .enumerate()
                .fold(BigRational::one(), |acc, (i, &j)| acc * &m[i][j]);
            if odd {
                -t
            } else {
                t
            }
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn body_block(
    g: &SuperMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Vec<Vec<BigRational>> {
    rows.map(|i| cols.clone().map(|j| g.get(i, j).body()).collect())
        .collect()
}

/// Big-cell coordinates from explicit 2×2 formulas, and the second-chart
/// `B = V Y⁻¹`.
pub struct ChartOracle {
    pub a: Vec<Vec<AlgebraElement>>,
    pub alpha: Vec<AlgebraElement>,
    pub beta: Vec<AlgebraElement>,
    pub b: Vec<Vec<AlgebraElement>>,
}

fn inverse_2x2(m: &[Vec<AlgebraElement>]) -> Vec<Vec<AlgebraElement>> {
    let det = naive_product(&m[0][0], &m[1][1]) - naive_product(&m[0][1], &m[1][0]);
    let inv = newton_inverse(&det);
    let scale = |x: &AlgebraElement| naive_product(x, &inv);
    vec![
        vec![scale(&m[1][1]), scale(&-&m[0][1])],
        vec![scale(&-&m[1][0]), scale(&m[0][0])],
    ]
}

pub fn chart_oracle(g: &SuperMatrix) -> ChartOracle {
    let sig = g.signature();
    let z = entries(g, 0..2, 0..2);
    let w = entries(g, 2..4, 0..2);
    let rho = entries(g, 4..5, 0..2);
    let tau1 = entries(g, 0..2, 4..5);
    let tau2 = entries(g, 2..4, 4..5);
    let g55 = g.get(4, 4).clone();
    let z_inv = inverse_2x2(&z);
    let a = mat_mul(&w, &z_inv, sig);
    let alpha = mat_mul(&rho, &z_inv, sig).remove(0);
    let rzt = mat_mul(&mat_mul(&rho, &z_inv, sig), &tau1, sig)[0][0].clone();
    let d = newton_inverse(&(&g55 - &rzt));
    let beta: Vec<AlgebraElement> = mat_sub(&tau2, &mat_mul(&a, &tau1, sig))
        .into_iter()
        .map(|row| naive_product(&row[0], &d))
        .collect();
    let g55_inv = newton_inverse(&g55);
    let scaled = |m: Vec<Vec<AlgebraElement>>| -> Vec<Vec<AlgebraElement>> {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| naive_product(&g55_inv, &x)).collect())
            .collect()
    };
    let v = mat_sub(&w, &scaled(mat_mul(&tau2, &rho, sig)));
    let y = mat_sub(&z, &scaled(mat_mul(&tau1, &rho, sig)));
    let b = mat_mul(&v, &inverse_2x2(&y), sig);
    ChartOracle { a, alpha, beta, b }
}
