//! Graded matrices over `Λ(p,q)`.
//!
//! A matrix with row shape `(m|n)` and column shape `(m'|n')` has its even
//! rows (columns) first. Entry `(i,j)` must be even when row `i` and column
//! `j` have the same parity and odd otherwise; zero is allowed everywhere.
//! In block form
//!
//! ```text
//!     [ p  q ]     p: m×m'  even     q: m×n'  odd
//! g = [ r  s ]     r: n×m'  odd      s: n×n'  even
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Range, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Block, Error, Result};
use crate::linalg::RationalMatrix;
use crate::superalgebra::{AlgebraElement, AlgebraMorphism, Parity, Signature};

/// Numbers of even and odd basis vectors, `(m|n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BlockShape {
    pub even: usize,
    pub odd: usize,
}

impl BlockShape {
    pub const fn new(even: usize, odd: usize) -> Self {
        BlockShape { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    /// Parity of basis index `i`.
    pub fn parity(&self, i: usize) -> Parity {
        Parity::from_odd(i >= self.even)
    }

    /// Shape of the contiguous index range `range`.
    fn of_range(&self, range: &Range<usize>) -> BlockShape {
        let even = range.end.min(self.even).saturating_sub(range.start);
        BlockShape {
            even,
            odd: range.len() - even,
        }
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    sig: Signature,
    rows: BlockShape,
    cols: BlockShape,
    entries: Vec<AlgebraElement>,
}

/// The four blocks `p, q, r, s` of a supermatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub p: SuperMatrix,
    pub q: SuperMatrix,
    pub r: SuperMatrix,
    pub s: SuperMatrix,
}

impl BlockDecomposition {
    /// Reassemble `[[p, q], [r, s]]`.
    pub fn assemble(&self) -> Result<SuperMatrix> {
        let (p, q, r, s) = (&self.p, &self.q, &self.r, &self.s);
        let conformable = p.rows == q.rows
            && r.rows == s.rows
            && p.cols == r.cols
            && q.cols == s.cols
            && p.rows.odd == 0
            && r.rows.even == 0
            && p.cols.odd == 0
            && q.cols.even == 0;
        if !conformable {
            return Err(Error::ShapeMismatch {
                op: "assemble",
                left: format!("p {}x{}, q {}x{}", p.rows, p.cols, q.rows, q.cols),
                right: format!("r {}x{}, s {}x{}", r.rows, r.cols, s.rows, s.cols),
            });
        }
        let sig = p.sig;
        for b in [q, r, s] {
            if b.sig != sig {
                return Err(Error::SignatureMismatch {
                    left: sig,
                    right: b.sig,
                });
            }
        }
        let rows = BlockShape::new(p.rows.even, r.rows.odd);
        let cols = BlockShape::new(p.cols.even, q.cols.odd);
        SuperMatrix::from_fn(sig, rows, cols, |i, j| Self::pick(p, q, r, s, i, j))
    }

    fn pick(
        p: &SuperMatrix,
        q: &SuperMatrix,
        r: &SuperMatrix,
        s: &SuperMatrix,
        i: usize,
        j: usize,
    ) -> AlgebraElement {
        let (m, m2) = (p.nrows(), p.ncols());
        match (i < m, j < m2) {
            (true, true) => p.get(i, j).clone(),
            (true, false) => q.get(i, j - m2).clone(),
            (false, true) => r.get(i - m, j).clone(),
            (false, false) => s.get(i - m, j - m2).clone(),
        }
    }

    fn assemble_unchecked(&self) -> SuperMatrix {
        let rows = BlockShape::new(self.p.rows.even, self.r.rows.odd);
        let cols = BlockShape::new(self.p.cols.even, self.q.cols.odd);
        SuperMatrix::from_fn_unchecked(self.p.sig, rows, cols, |i, j| {
            Self::pick(&self.p, &self.q, &self.r, &self.s, i, j)
        })
    }
}

fn expected_parity(rows: BlockShape, cols: BlockShape, i: usize, j: usize) -> Parity {
    rows.parity(i) + cols.parity(j)
}

impl SuperMatrix {
    /// Build from row-major nested entries, checking dimensions, signature and
    /// grading.
    pub fn new(
        sig: Signature,
        rows: BlockShape,
        cols: BlockShape,
        entries: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self> {
        if entries.len() != rows.total() || entries.iter().any(|r| r.len() != cols.total()) {
            return Err(Error::ShapeMismatch {
                op: "new",
                left: format!("{rows}x{cols}"),
                right: format!(
                    "{} rows of lengths {:?}",
                    entries.len(),
                    entries.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        let flat: Vec<AlgebraElement> = entries.into_iter().flatten().collect();
        let mut it = flat.into_iter();
        Self::from_fn(sig, rows, cols, |_, _| it.next().expect("length checked"))
    }

    /// Build entry by entry, checking signature and grading.
    pub fn from_fn(
        sig: Signature,
        rows: BlockShape,
        cols: BlockShape,
        mut f: impl FnMut(usize, usize) -> AlgebraElement,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.total() * cols.total());
        for i in 0..rows.total() {
            for j in 0..cols.total() {
                let e = f(i, j);
                if e.signature() != sig {
                    return Err(Error::SignatureMismatch {
                        left: sig,
                        right: e.signature(),
                    });
                }
                if !e.has_parity(expected_parity(rows, cols, i, j)) {
                    return Err(Error::GradingViolation { row: i, col: j });
                }
                entries.push(e);
            }
        }
        Ok(SuperMatrix {
            sig,
            rows,
            cols,
            entries,
        })
    }

    /// For intermediates that are known to be graded, or deliberately are not
    /// (odd forms).
    pub(crate) fn from_fn_unchecked(
        sig: Signature,
        rows: BlockShape,
        cols: BlockShape,
        mut f: impl FnMut(usize, usize) -> AlgebraElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows.total() * cols.total());
        for i in 0..rows.total() {
            for j in 0..cols.total() {
                entries.push(f(i, j));
            }
        }
        SuperMatrix {
            sig,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(sig: Signature, rows: BlockShape, cols: BlockShape) -> Self {
        Self::from_fn_unchecked(sig, rows, cols, |_, _| AlgebraElement::zero(sig))
    }

    pub fn identity(sig: Signature, shape: BlockShape) -> Self {
        Self::from_fn_unchecked(sig, shape, shape, |i, j| {
            if i == j {
                AlgebraElement::one(sig)
            } else {
                AlgebraElement::zero(sig)
            }
        })
    }

    /// A rational matrix viewed over `sig`; entries at odd positions must be
    /// zero.
    pub fn from_rational(
        sig: Signature,
        rows: BlockShape,
        cols: BlockShape,
        m: &RationalMatrix,
    ) -> Result<Self> {
        if m.rows() != rows.total() || m.cols() != cols.total() {
            return Err(Error::ShapeMismatch {
                op: "from_rational",
                left: format!("{rows}x{cols}"),
                right: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        Self::from_fn(sig, rows, cols, |i, j| {
            AlgebraElement::constant(sig, m[(i, j)].clone())
        })
    }

    /// Like [`SuperMatrix::from_rational`] but with integer entries.
    pub fn from_integers(
        sig: Signature,
        rows: BlockShape,
        cols: BlockShape,
        values: &[&[i64]],
    ) -> Result<Self> {
        Self::from_rational(sig, rows, cols, &RationalMatrix::from_integers(values))
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn row_shape(&self) -> BlockShape {
        self.rows
    }

    pub fn col_shape(&self) -> BlockShape {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.total()
    }

    pub fn ncols(&self) -> usize {
        self.cols.total()
    }

    /// Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        assert!(
            i < self.nrows() && j < self.ncols(),
            "index ({i},{j}) out of range"
        );
        &self.entries[i * self.ncols() + j]
    }

    /// Copy with entry `(i,j)` replaced, grading checked.
    pub fn with_entry(&self, i: usize, j: usize, value: AlgebraElement) -> Result<Self> {
        if value.signature() != self.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: value.signature(),
            });
        }
        if !value.has_parity(expected_parity(self.rows, self.cols, i, j)) {
            return Err(Error::GradingViolation { row: i, col: j });
        }
        let mut out = self.clone();
        let n = self.ncols();
        out.entries[i * n + j] = value;
        Ok(out)
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[AlgebraElement]> {
        self.entries.chunks(self.ncols().max(1)).take(self.nrows())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    /// First entry violating the grading, if any.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        (0..self.nrows())
            .flat_map(|i| (0..self.ncols()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                !self
                    .get(i, j)
                    .has_parity(expected_parity(self.rows, self.cols, i, j))
            })
    }

    pub fn is_graded(&self) -> bool {
        self.grading_violation().is_none()
    }

    /// Row and column shapes coincide.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_sig(&self, other: &SuperMatrix) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_sig(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let inner = self.ncols();
        Ok(Self::from_fn_unchecked(
            self.sig,
            self.rows,
            other.cols,
            |i, j| {
                let mut acc = AlgebraElement::zero(self.sig);
                for k in 0..inner {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            },
        ))
    }

    fn zip_with(
        &self,
        other: &SuperMatrix,
        op: &'static str,
        f: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    ) -> Result<SuperMatrix> {
        self.check_sig(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                op,
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(SuperMatrix {
            sig: self.sig,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    /// `c · self`, multiplying every entry on the left.
    pub fn scale(&self, c: &AlgebraElement) -> SuperMatrix {
        self.map(|e| c * e)
    }

    pub fn scale_rational(&self, c: &BigRational) -> SuperMatrix {
        self.map(|e| e.scale(c))
    }

    fn map(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> SuperMatrix {
        SuperMatrix {
            sig: self.sig,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise image under a superalgebra morphism.
    pub fn map_entries(&self, phi: &AlgebraMorphism) -> Result<SuperMatrix> {
        if phi.source() != self.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: phi.source(),
            });
        }
        let images = self
            .entries
            .iter()
            .map(|e| phi.apply(e))
            .collect::<Result<Vec<_>>>()?;
        let mut it = images.into_iter();
        Self::from_fn(phi.target(), self.rows, self.cols, |_, _| {
            it.next().expect("sized")
        })
    }

    /// The same matrix over a signature with more generators.
    pub fn embed(&self, target: Signature) -> Result<SuperMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<_>>()?;
        Ok(SuperMatrix {
            sig: target,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise bodies.
    pub fn body(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.nrows(), self.ncols(), |i, j| self.get(i, j).body())
    }

    /// Every entry has zero body.
    pub fn first_nonzero_body(&self) -> Option<(usize, usize)> {
        (0..self.nrows())
            .flat_map(|i| (0..self.ncols()).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j).body().is_zero())
    }

    /// Contiguous sub-block; the shape follows from the parities of the
    /// selected rows and columns.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> SuperMatrix {
        let rs = self.rows.of_range(&rows);
        let cs = self.cols.of_range(&cols);
        Self::from_fn_unchecked(self.sig, rs, cs, |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn blocks(&self) -> BlockDecomposition {
        let (m, n) = (self.rows.even, self.nrows());
        let (m2, n2) = (self.cols.even, self.ncols());
        BlockDecomposition {
            p: self.block(0..m, 0..m2),
            q: self.block(0..m, m2..n2),
            r: self.block(m..n, 0..m2),
            s: self.block(m..n, m2..n2),
        }
    }

    /// Plain transpose, with the row and column shapes swapped. Only graded
    /// for matrices whose entries are all even.
    pub fn transpose(&self) -> SuperMatrix {
        Self::from_fn_unchecked(self.sig, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// `[[p, q], [r, s]] ↦ [[pᵀ, rᵀ], [−qᵀ, sᵀ]]`.
    pub fn supertranspose(&self) -> SuperMatrix {
        Self::from_fn_unchecked(self.sig, self.cols, self.rows, |i, j| {
            let e = self.get(j, i);
            if self.rows.parity(j) == Parity::Even && self.cols.parity(i) == Parity::Odd {
                -e
            } else {
                e.clone()
            }
        })
    }

    /// `tr(p) − tr(s)`.
    pub fn supertrace(&self) -> Result<AlgebraElement> {
        self.require_square()?;
        let mut acc = AlgebraElement::zero(self.sig);
        for i in 0..self.nrows() {
            acc = match self.rows.parity(i) {
                Parity::Even => &acc + self.get(i, i),
                Parity::Odd => &acc - self.get(i, i),
            };
        }
        Ok(acc)
    }

    fn require_even_entries(&self) -> Result<()> {
        if self.nrows() != self.ncols() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if !self.get(i, j).has_parity(Parity::Even) {
                    return Err(Error::NotEven { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Determinant of a square matrix with even entries, by Laplace expansion
    /// along rows with memoization over column subsets (division free).
    pub fn det_even(&self) -> Result<AlgebraElement> {
        self.require_even_entries()?;
        Ok(self.laplace_det(
            &(0..self.nrows()).collect::<Vec<_>>(),
            &(0..self.ncols()).collect::<Vec<_>>(),
        ))
    }

    /// Laplace determinant of the submatrix on the given rows and columns.
    fn laplace_det(&self, rows: &[usize], cols: &[usize]) -> AlgebraElement {
        let n = rows.len();
        debug_assert_eq!(n, cols.len());
        assert!(n <= 20, "determinant of a {n}x{n} matrix is out of reach");
        // memo[mask] = det(rows[n - |mask|..], cols selected by mask)
        let mut memo: Vec<AlgebraElement> = Vec::with_capacity(1 << n);
        memo.push(AlgebraElement::one(self.sig));
        for mask in 1usize..(1 << n) {
            let row = rows[n - mask.count_ones() as usize];
            let mut acc = AlgebraElement::zero(self.sig);
            let mut position = 0;
            for (k, &col) in cols.iter().enumerate() {
                if mask & (1 << k) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                let minor = &memo[mask & !(1 << k)];
                if !entry.is_zero() && !minor.is_zero() {
                    let term = entry * minor;
                    acc = if position % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                position += 1;
            }
            memo.push(acc);
        }
        memo.pop().expect("nonempty memo")
    }

    /// Inverse of a square matrix with even entries as `adj(M)·det(M)⁻¹`.
    pub fn inverse_even(&self) -> Result<SuperMatrix> {
        self.require_even_entries()?;
        let n = self.nrows();
        let det = self.laplace_det(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        let det_inv = det.inv().map_err(|_| Error::NotInvertible {
            block: Block::Whole,
        })?;
        Ok(Self::from_fn_unchecked(
            self.sig,
            self.cols,
            self.rows,
            |i, j| {
                // adj(M)[i][j] = (−1)^{i+j} det(M without row j, column i)
                let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                let minor = self.laplace_det(&rows, &cols);
                let cofactor = if (i + j) % 2 == 0 { minor } else { -minor };
                &cofactor * &det_inv
            },
        ))
    }

    fn require_invertible_blocks(&self, b: &BlockDecomposition) -> Result<()> {
        if b.p.det_even()?.body().is_zero() {
            return Err(Error::NotInvertible { block: Block::P });
        }
        if b.s.det_even()?.body().is_zero() {
            return Err(Error::NotInvertible { block: Block::S });
        }
        Ok(())
    }

    /// Two-sided inverse via the Schur complement `p − q s⁻¹ r`. Exists iff
    /// the bodies of `p` and `s` are invertible.
    pub fn inverse(&self) -> Result<SuperMatrix> {
        self.require_square()?;
        let b = self.blocks();
        self.require_invertible_blocks(&b)?;
        let s_inv = b.s.inverse_even()?;
        let q_sinv = &b.q * &s_inv;
        let schur = &b.p - &(&q_sinv * &b.r);
        let schur_inv = schur.inverse_even()?;
        let sinv_r = &s_inv * &b.r;
        let blocks = BlockDecomposition {
            q: -(&schur_inv * &q_sinv),
            r: -(&sinv_r * &schur_inv),
            s: &s_inv + &(&(&sinv_r * &schur_inv) * &q_sinv),
            p: schur_inv,
        };
        Ok(blocks.assemble_unchecked())
    }

    /// `Ber(g) = det(p − q s⁻¹ r) · det(s)⁻¹`.
    pub fn berezinian(&self) -> Result<AlgebraElement> {
        self.require_square()?;
        let b = self.blocks();
        self.require_invertible_blocks(&b)?;
        let s_inv = b.s.inverse_even()?;
        let schur = &b.p - &(&(&b.q * &s_inv) * &b.r);
        Ok(&schur.det_even()? * &b.s.det_even()?.inv()?)
    }

    /// `det(p) · det(s − r p⁻¹ q)⁻¹`, the complementary closed form of the
    /// Berezinian.
    pub fn berezinian_by_p_complement(&self) -> Result<AlgebraElement> {
        self.require_square()?;
        let b = self.blocks();
        self.require_invertible_blocks(&b)?;
        let p_inv = b.p.inverse_even()?;
        let schur = &b.s - &(&(&b.r * &p_inv) * &b.q);
        Ok(&b.p.det_even()? * &schur.det_even()?.inv()?)
    }

    /// `Σ Xᵏ/k!` for a matrix whose entries all have zero body; the series
    /// terminates by nilpotency.
    pub fn exp_nilpotent(&self) -> Result<SuperMatrix> {
        self.require_square()?;
        if let Some((row, col)) = self.first_nonzero_body() {
            return Err(Error::BodyNotZero { row, col });
        }
        let mut term = SuperMatrix::identity(self.sig, self.rows);
        let mut sum = term.clone();
        for k in 1u32.. {
            term =
                (&term * self).scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.sig)?;
        for i in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols())
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

macro_rules! matrix_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&SuperMatrix> for &SuperMatrix {
            type Output = SuperMatrix;

            /// Panics on a shape or signature mismatch; see the `try_` variant.
            fn $method(self, rhs: &SuperMatrix) -> SuperMatrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<SuperMatrix> for SuperMatrix {
            type Output = SuperMatrix;

            fn $method(self, rhs: SuperMatrix) -> SuperMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

matrix_binop!(Add, add, try_add);
matrix_binop!(Sub, sub, try_sub);
matrix_binop!(Mul, mul, try_mul);

impl Neg for &SuperMatrix {
    type Output = SuperMatrix;

    fn neg(self) -> SuperMatrix {
        self.map(|e| -e)
    }
}

impl Neg for SuperMatrix {
    type Output = SuperMatrix;

    fn neg(self) -> SuperMatrix {
        -&self
    }
}

impl SuperMatrix {
    /// Count of stored terms over all entries.
    pub fn term_count(&self) -> usize {
        self.entries.iter().map(AlgebraElement::term_count).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::Signature;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn int(s: Signature, v: i64) -> AlgebraElement {
        AlgebraElement::from_int(s, v)
    }

    fn th(s: Signature, j: usize) -> AlgebraElement {
        AlgebraElement::odd_generator(s, j).unwrap()
    }

    fn one_one(s: Signature, e: [[AlgebraElement; 2]; 2]) -> SuperMatrix {
        let [[a, b], [c, d]] = e;
        let shape = BlockShape::new(1, 1);
        SuperMatrix::new(s, shape, shape, vec![vec![a, b], vec![c, d]]).unwrap()
    }

    #[test]
    fn product_in_one_one() {
        let s = sig(0, 2);
        let g = one_one(s, [[int(s, 1), th(s, 0)], [int(s, 0), int(s, 1)]]);
        let h = one_one(s, [[int(s, 1), int(s, 0)], [th(s, 1), int(s, 1)]]);
        let expected = one_one(
            s,
            [
                [int(s, 1) + th(s, 0) * th(s, 1), th(s, 0)],
                [th(s, 1), int(s, 1)],
            ],
        );
        assert_eq!(&g * &h, expected);
        let id = SuperMatrix::identity(s, BlockShape::new(1, 1));
        assert_eq!(&id * &g, g);
    }

    #[test]
    fn grading_is_checked() {
        let s = sig(0, 2);
        let shape = BlockShape::new(1, 1);
        let bad = SuperMatrix::new(
            s,
            shape,
            shape,
            vec![vec![th(s, 0), int(s, 0)], vec![int(s, 0), int(s, 1)]],
        );
        assert_eq!(bad, Err(Error::GradingViolation { row: 0, col: 0 }));
        let mixed = SuperMatrix::new(
            s,
            shape,
            shape,
            vec![
                vec![int(s, 1), int(s, 1) + th(s, 0)],
                vec![int(s, 0), int(s, 1)],
            ],
        );
        assert_eq!(mixed, Err(Error::GradingViolation { row: 0, col: 1 }));
    }

    #[test]
    fn det_even_examples() {
        let s = sig(1, 4);
        let eps = AlgebraElement::even_generator(s, 0).unwrap();
        let shape = BlockShape::new(2, 0);
        let d = SuperMatrix::new(
            s,
            shape,
            shape,
            vec![
                vec![int(s, 1) + &eps, int(s, 0)],
                vec![int(s, 0), int(s, 1)],
            ],
        )
        .unwrap();
        assert_eq!(d.det_even().unwrap(), int(s, 1) + &eps);

        let t12 = th(s, 0) * th(s, 1);
        let t34 = th(s, 2) * th(s, 3);
        let m = SuperMatrix::new(
            s,
            shape,
            shape,
            vec![vec![int(s, 1), t12.clone()], vec![t34.clone(), int(s, 1)]],
        )
        .unwrap();
        assert_eq!(m.det_even().unwrap(), int(s, 1) - &t12 * &t34);

        let odd = one_one(s, [[int(s, 1), th(s, 0)], [int(s, 0), int(s, 1)]]);
        assert_eq!(odd.det_even(), Err(Error::NotEven { row: 0, col: 1 }));
        let rect = SuperMatrix::zeros(s, BlockShape::new(2, 0), BlockShape::new(1, 0));
        assert!(matches!(rect.det_even(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_examples() {
        let s = sig(0, 2);
        let shape = BlockShape::new(1, 1);
        let id = SuperMatrix::identity(s, shape);
        assert_eq!(id.inverse().unwrap(), id);

        let g = one_one(s, [[int(s, 2), th(s, 0)], [th(s, 1), int(s, 1)]]);
        let gi = g.inverse().unwrap();
        assert_eq!(&g * &gi, id);
        assert_eq!(&gi * &g, id);
        assert!(gi.is_graded());

        let singular = one_one(s, [[int(s, 1), th(s, 0)], [th(s, 1), int(s, 0)]]);
        assert_eq!(
            singular.inverse(),
            Err(Error::NotInvertible { block: Block::S })
        );
    }

    #[test]
    fn berezinian_examples() {
        let s = sig(0, 2);
        assert!(SuperMatrix::identity(s, BlockShape::new(2, 2))
            .berezinian()
            .unwrap()
            .is_one());
        let g = one_one(s, [[int(s, 2), th(s, 0)], [th(s, 1), int(s, 1)]]);
        // (2 − θ1·1·θ2)·1
        assert_eq!(g.berezinian().unwrap(), int(s, 2) - th(s, 0) * th(s, 1));
        assert_eq!(
            g.berezinian_by_p_complement().unwrap(),
            g.berezinian().unwrap()
        );
    }

    #[test]
    fn supertranspose_and_supertrace() {
        let s = sig(0, 2);
        let id = SuperMatrix::identity(s, BlockShape::new(3, 2));
        assert_eq!(id.supertrace().unwrap(), int(s, 1));
        let g = one_one(s, [[int(s, 2), th(s, 0)], [th(s, 1), int(s, 5)]]);
        let st = one_one(s, [[int(s, 2), th(s, 1)], [-th(s, 0), int(s, 5)]]);
        assert_eq!(g.supertranspose(), st);
        assert_eq!(g.supertrace().unwrap(), int(s, -3));
        let rect = SuperMatrix::zeros(s, BlockShape::new(1, 1), BlockShape::new(1, 0));
        assert!(rect.supertrace().is_err());
    }

    #[test]
    fn exp_examples() {
        let s = sig(0, 2);
        let shape = BlockShape::new(1, 1);
        let zero = SuperMatrix::zeros(s, shape, shape);
        assert_eq!(
            zero.exp_nilpotent().unwrap(),
            SuperMatrix::identity(s, shape)
        );
        let x = one_one(s, [[int(s, 0), th(s, 0)], [int(s, 0), int(s, 0)]]);
        assert_eq!(
            x.exp_nilpotent().unwrap(),
            &SuperMatrix::identity(s, shape) + &x
        );
        let y = one_one(s, [[int(s, 1), int(s, 0)], [int(s, 0), int(s, 0)]]);
        assert_eq!(
            y.exp_nilpotent(),
            Err(Error::BodyNotZero { row: 0, col: 0 })
        );
    }

    #[test]
    fn blocks_roundtrip() {
        let s = sig(0, 2);
        let g = one_one(s, [[int(s, 2), th(s, 0)], [th(s, 1), int(s, 1)]]);
        assert_eq!(g.blocks().assemble().unwrap(), g);
        let shape = BlockShape::new(2, 1);
        let id = SuperMatrix::identity(s, shape);
        let b = id.blocks();
        assert_eq!(b.p.row_shape(), BlockShape::new(2, 0));
        assert_eq!(b.q.col_shape(), BlockShape::new(0, 1));
        assert_eq!(b.assemble().unwrap(), id);
    }
}
