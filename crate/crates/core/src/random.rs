//! Seeded generators for test populations.
//!
//! Every generator draws from a [`ChaCha8Rng`], so a seed reproduces the same
//! values on every platform. Coefficients are small rationals to keep exact
//! arithmetic cheap.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::RationalMatrix;
use crate::superalgebra::{AlgebraElement, AlgebraMorphism, Monomial, Parity, Signature};
use crate::supermatrix::{BlockShape, SuperMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn rng_from_seed_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Uniform integer in `[-bound, bound]`.
pub fn small_int(rng: &mut impl Rng, bound: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.random_range(-bound..=bound)))
}

/// Nonzero rational `n/d` with `|n| ≤ 4`, `1 ≤ d ≤ 3`.
pub fn nonzero_rational(rng: &mut impl Rng) -> BigRational {
    let n = loop {
        let n = rng.random_range(-4i64..=4);
        if n != 0 {
            break n;
        }
    };
    rational(n, rng.random_range(1i64..=3))
}

/// A random monomial of the requested parity with nonzero degree, or `None`
/// when `sig` has none.
pub fn soul_monomial(rng: &mut impl Rng, sig: Signature, parity: Parity) -> Option<Monomial> {
    let (p, q) = (sig.even_count(), sig.odd_count());
    let odd_choices: Vec<usize> = match parity {
        Parity::Odd => [1, 3].into_iter().filter(|&k| k <= q).collect(),
        Parity::Even => [0, 2].into_iter().filter(|&k| k <= q).collect(),
    };
    let mut options: Vec<(usize, usize)> = Vec::new();
    for &k in &odd_choices {
        for e in 0..=p.min(1) {
            if e + k > 0 {
                options.push((e, k));
            }
        }
    }
    let &(e, k) = options.as_slice().choose(rng)?;
    let mut evens: Vec<usize> = (0..p).collect();
    evens.shuffle(rng);
    let mut evens = evens[..e].to_vec();
    evens.sort_unstable();
    let mut odds: Vec<usize> = (0..q).collect();
    odds.shuffle(rng);
    let mut odds = odds[..k].to_vec();
    odds.sort_unstable();
    Monomial::from_indices(&evens, &odds)
}

/// Homogeneous element with zero body and up to `terms` terms.
pub fn soul(rng: &mut impl Rng, sig: Signature, parity: Parity, terms: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(sig);
    for _ in 0..terms {
        if let Some(m) = soul_monomial(rng, sig, parity) {
            out = out + AlgebraElement::monomial(sig, m, nonzero_rational(rng)).expect("fits");
        }
    }
    out
}

/// A random invertible `n×n` integer matrix with entries in `[-2, 2]`.
pub fn invertible_rational(rng: &mut impl Rng, n: usize) -> RationalMatrix {
    loop {
        let m = RationalMatrix::from_fn(n, n, |_, _| small_int(rng, 2));
        if !num_traits::Zero::is_zero(&m.det()) {
            return m;
        }
    }
}

/// Graded matrix with the given body on even positions plus random souls
/// everywhere (`terms` terms per entry).
pub fn graded_matrix_with_body(
    rng: &mut impl Rng,
    sig: Signature,
    rows: BlockShape,
    cols: BlockShape,
    body: &RationalMatrix,
    terms: usize,
) -> SuperMatrix {
    SuperMatrix::from_fn(sig, rows, cols, |i, j| {
        let parity = rows.parity(i) + cols.parity(j);
        let s = soul(rng, sig, parity, terms);
        match parity {
            Parity::Even => AlgebraElement::constant(sig, body[(i, j)].clone()) + s,
            Parity::Odd => s,
        }
    })
    .expect("graded by construction")
}

/// Graded matrix with small integer bodies on the even blocks (possibly
/// singular) and random souls.
pub fn graded_matrix(
    rng: &mut impl Rng,
    sig: Signature,
    rows: BlockShape,
    cols: BlockShape,
    body_bound: i64,
    terms: usize,
) -> SuperMatrix {
    let body = RationalMatrix::from_fn(rows.total(), cols.total(), |i, j| {
        if rows.parity(i) == cols.parity(j) {
            small_int(rng, body_bound)
        } else {
            num_traits::Zero::zero()
        }
    });
    graded_matrix_with_body(rng, sig, rows, cols, &body, terms)
}

/// Graded square matrix whose `p` and `s` bodies are invertible.
pub fn invertible_graded_matrix(
    rng: &mut impl Rng,
    sig: Signature,
    shape: BlockShape,
    terms: usize,
) -> SuperMatrix {
    let p = invertible_rational(rng, shape.even);
    let s = invertible_rational(rng, shape.odd);
    let body = block_diagonal(&p, &s);
    graded_matrix_with_body(rng, sig, shape, shape, &body, terms)
}

pub fn block_diagonal(p: &RationalMatrix, s: &RationalMatrix) -> RationalMatrix {
    let m = p.rows();
    RationalMatrix::from_fn(m + s.rows(), m + s.cols(), |i, j| match (i < m, j < m) {
        (true, true) => p[(i, j)].clone(),
        (false, false) => s[(i - m, j - m)].clone(),
        _ => num_traits::Zero::zero(),
    })
}

/// A valid morphism `source → target`. Odd generators go to random odd
/// elements; even generators go to `monomial · (even element)`, which squares
/// to zero.
pub fn morphism(rng: &mut impl Rng, source: Signature, target: Signature) -> AlgebraMorphism {
    let odd_images = (0..source.odd_count())
        .map(|_| {
            let terms = rng.random_range(1..=3);
            soul(rng, target, Parity::Odd, terms)
        })
        .collect();
    let even_images = (0..source.even_count())
        .map(|_| match soul_monomial(rng, target, Parity::Even) {
            Some(m) => {
                let head =
                    AlgebraElement::monomial(target, m, nonzero_rational(rng)).expect("fits");
                let tail = AlgebraElement::constant(target, nonzero_rational(rng))
                    + soul(rng, target, Parity::Even, 2);
                head * tail
            }
            None => AlgebraElement::zero(target),
        })
        .collect();
    AlgebraMorphism::new(source, target, even_images, odd_images)
        .expect("generator images satisfy the morphism constraints")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_deterministic() {
        let sig = Signature::new(1, 4).unwrap();
        let shape = BlockShape::new(2, 2);
        let a = invertible_graded_matrix(&mut rng_from_seed(7), sig, shape, 2);
        let b = invertible_graded_matrix(&mut rng_from_seed(7), sig, shape, 2);
        assert_eq!(a, b);
        assert!(a.is_graded());
    }

    #[test]
    fn random_morphisms_validate() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let phi = morphism(
                &mut rng,
                Signature::new(2, 3).unwrap(),
                Signature::new(1, 5).unwrap(),
            );
            assert!(phi.validate().is_valid());
        }
    }

    #[test]
    fn soul_monomials_respect_parity() {
        let mut rng = rng_from_seed(11);
        let sig = Signature::new(0, 1).unwrap();
        assert!(soul_monomial(&mut rng, sig, Parity::Even).is_none());
        assert_eq!(
            soul_monomial(&mut rng, sig, Parity::Odd),
            Some(Monomial::odd_generator(0))
        );
    }
}
