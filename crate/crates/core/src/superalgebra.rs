//! Weil superalgebras `Λ(p,q) = k[ε₁..ε_p]/(εᵢ²) ⊗ Λ(θ₁..θ_q)` over the rationals.
//!
//! An element is a sparse sum of square-free monomials with exact rational
//! coefficients. Even generators commute with everything and square to zero;
//! odd generators anticommute. The body (coefficient of the empty monomial)
//! is the image under the unique character to `k`, the soul is nilpotent.
//!
//! Generator indices are 0-based in the API and 1-based when printed or
//! serialized, so `odd_generator(sig, 0)` is written `θ1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Maximum number of generators of each parity.
pub const MAX_GENERATORS: usize = 16;

/// Shape of a Weil superalgebra: `p` square-zero even generators and `q`
/// odd generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    even: u8,
    odd: u8,
}

impl Signature {
    pub fn new(even_count: usize, odd_count: usize) -> Result<Self> {
        if even_count > MAX_GENERATORS || odd_count > MAX_GENERATORS {
            return Err(Error::SignatureTooLarge {
                even: even_count,
                odd: odd_count,
                cap: MAX_GENERATORS,
            });
        }
        Ok(Signature {
            even: even_count as u8,
            odd: odd_count as u8,
        })
    }

    /// The ground field `Λ(0,0) = k`.
    pub const fn scalars() -> Self {
        Signature { even: 0, odd: 0 }
    }

    pub fn even_count(&self) -> usize {
        self.even as usize
    }

    pub fn odd_count(&self) -> usize {
        self.odd as usize
    }

    /// Adjoin extra generators after the existing ones.
    pub fn extended(&self, extra_even: usize, extra_odd: usize) -> Result<Self> {
        Signature::new(self.even_count() + extra_even, self.odd_count() + extra_odd)
    }

    /// True if every generator of `self` is also a generator of `other`.
    pub fn embeds_in(&self, other: &Signature) -> bool {
        self.even <= other.even && self.odd <= other.odd
    }

    /// Nilpotency index bound: every soul raised to this power vanishes.
    pub fn nilpotency_bound(&self) -> usize {
        self.even_count() + self.odd_count() + 1
    }

    fn even_mask(&self) -> u16 {
        mask(self.even)
    }

    fn odd_mask(&self) -> u16 {
        mask(self.odd)
    }
}

fn mask(n: u8) -> u16 {
    if n as usize >= MAX_GENERATORS {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ({},{})", self.even, self.odd)
    }
}

/// Z/2 degree of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() ^ rhs.is_odd())
    }
}

/// Parity of an arbitrary (possibly inhomogeneous) element. Zero is `Even`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityTag {
    Even,
    Odd,
    Mixed,
}

impl ParityTag {
    pub fn parity(self) -> Option<Parity> {
        match self {
            ParityTag::Even => Some(Parity::Even),
            ParityTag::Odd => Some(Parity::Odd),
            ParityTag::Mixed => None,
        }
    }
}

impl fmt::Display for ParityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParityTag::Even => f.write_str("even"),
            ParityTag::Odd => f.write_str("odd"),
            ParityTag::Mixed => f.write_str("mixed"),
        }
    }
}

/// A square-free monomial `ε_{i1}..ε_{ik} θ_{j1}..θ_{jl}` with increasing
/// indices, stored as two bit sets (bit `i` is generator `i`, 0-based).
///
/// Ordering is lexicographic on the index lists: first the even list, then
/// the odd list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    evens: u16,
    odds: u16,
}

impl Monomial {
    /// The empty monomial (the unit).
    pub const ONE: Monomial = Monomial { evens: 0, odds: 0 };

    pub const fn from_bits(evens: u16, odds: u16) -> Self {
        Monomial { evens, odds }
    }

    /// Build from strictly increasing 0-based index lists. Returns `None` on a
    /// repeated, unsorted or out-of-range index.
    pub fn from_indices(evens: &[usize], odds: &[usize]) -> Option<Self> {
        Some(Monomial {
            evens: bits_from_sorted(evens)?,
            odds: bits_from_sorted(odds)?,
        })
    }

    pub fn even_generator(i: usize) -> Self {
        Monomial {
            evens: 1 << i,
            odds: 0,
        }
    }

    pub fn odd_generator(j: usize) -> Self {
        Monomial {
            evens: 0,
            odds: 1 << j,
        }
    }

    pub fn even_bits(&self) -> u16 {
        self.evens
    }

    pub fn odd_bits(&self) -> u16 {
        self.odds
    }

    pub fn even_indices(&self) -> impl Iterator<Item = usize> {
        bit_indices(self.evens)
    }

    pub fn odd_indices(&self) -> impl Iterator<Item = usize> {
        bit_indices(self.odds)
    }

    pub fn degree(&self) -> usize {
        (self.evens.count_ones() + self.odds.count_ones()) as usize
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd(self.odds.count_ones() % 2 == 1)
    }

    pub fn is_one(&self) -> bool {
        self.evens == 0 && self.odds == 0
    }

    pub fn fits(&self, sig: &Signature) -> bool {
        self.evens & !sig.even_mask() == 0 && self.odds & !sig.odd_mask() == 0
    }

    /// Product of two monomials: `None` if a generator repeats, otherwise the
    /// product and whether the Koszul sign is negative.
    pub fn product(self, other: Monomial) -> Option<(Monomial, bool)> {
        if self.evens & other.evens != 0 || self.odds & other.odds != 0 {
            return None;
        }
        // Each odd index of `other` hops over the odd indices of `self`
        // that are larger than it.
        let mut swaps = 0u32;
        let mut rest = other.odds;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let above = if j >= 15 { 0 } else { !((2u16 << j) - 1) };
            swaps += (self.odds & above).count_ones();
            rest &= rest - 1;
        }
        Some((
            Monomial {
                evens: self.evens | other.evens,
                odds: self.odds | other.odds,
            },
            swaps % 2 == 1,
        ))
    }
}

fn bits_from_sorted(indices: &[usize]) -> Option<u16> {
    let mut bits = 0u16;
    let mut prev: Option<usize> = None;
    for &i in indices {
        if i >= MAX_GENERATORS || prev.is_some_and(|p| p >= i) {
            return None;
        }
        bits |= 1 << i;
        prev = Some(i);
    }
    Some(bits)
}

fn bit_indices(mut bits: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// Lexicographic comparison of the sorted index lists encoded by two bit sets.
fn cmp_index_lists(a: u16, b: u16) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let k = diff.trailing_zeros();
    let above = if k >= 15 { 0 } else { !((2u16 << k) - 1) };
    // The lists agree below k; exactly one of them contains k.
    if a & (1 << k) != 0 {
        // b continues with something larger than k, or ends (prefix of a).
        if b & above != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a & above != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_index_lists(self.evens, other.evens)
            .then_with(|| cmp_index_lists(self.odds, other.odds))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for i in self.even_indices() {
            write!(f, "ε{}", i + 1)?;
        }
        for j in self.odd_indices() {
            write!(f, "θ{}", j + 1)?;
        }
        Ok(())
    }
}

/// An element of `Λ(p,q)` in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    sig: Signature,
    terms: BTreeMap<Monomial, BigRational>,
}

impl AlgebraElement {
    pub fn zero(sig: Signature) -> Self {
        AlgebraElement {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::constant(sig, BigRational::one())
    }

    pub fn constant(sig: Signature, value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::ONE, value);
        }
        AlgebraElement { sig, terms }
    }

    pub fn from_int(sig: Signature, value: i64) -> Self {
        Self::constant(sig, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn even_generator(sig: Signature, i: usize) -> Result<Self> {
        if i >= sig.even_count() {
            return Err(Error::GeneratorOutOfRange { index: i, sig });
        }
        Ok(Self::monomial_unchecked(
            sig,
            Monomial::even_generator(i),
            BigRational::one(),
        ))
    }

    pub fn odd_generator(sig: Signature, j: usize) -> Result<Self> {
        if j >= sig.odd_count() {
            return Err(Error::GeneratorOutOfRange { index: j, sig });
        }
        Ok(Self::monomial_unchecked(
            sig,
            Monomial::odd_generator(j),
            BigRational::one(),
        ))
    }

    /// `coeff · m`, rejecting monomials that use generators outside `sig`.
    pub fn monomial(sig: Signature, m: Monomial, coeff: BigRational) -> Result<Self> {
        if !m.fits(&sig) {
            return Err(Error::GeneratorOutOfRange {
                index: (15 - (m.even_bits() | m.odd_bits()).leading_zeros()) as usize,
                sig,
            });
        }
        Ok(Self::monomial_unchecked(sig, m, coeff))
    }

    fn monomial_unchecked(sig: Signature, m: Monomial, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        AlgebraElement { sig, terms }
    }

    /// Sum of the given terms; repeated monomials are combined.
    pub fn from_terms<I>(sig: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = AlgebraElement::zero(sig);
        for (m, c) in terms {
            if !m.fits(&sig) {
                return Err(Error::GeneratorOutOfRange {
                    index: (15 - (m.even_bits() | m.odd_bits()).leading_zeros()) as usize,
                    sig,
                });
            }
            out.accumulate(m, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn body(&self) -> BigRational {
        self.coefficient(&Monomial::ONE)
    }

    pub fn soul(&self) -> AlgebraElement {
        let mut s = self.clone();
        s.terms.remove(&Monomial::ONE);
        s
    }

    pub fn parity_tag(&self) -> ParityTag {
        let mut seen_even = false;
        let mut seen_odd = false;
        for m in self.terms.keys() {
            match m.parity() {
                Parity::Even => seen_even = true,
                Parity::Odd => seen_odd = true,
            }
        }
        match (seen_even, seen_odd) {
            (_, false) => ParityTag::Even,
            (false, true) => ParityTag::Odd,
            (true, true) => ParityTag::Mixed,
        }
    }

    /// `(body, soul, parity)` with `body + soul = self`.
    pub fn body_soul_parity(&self) -> (BigRational, AlgebraElement, ParityTag) {
        (self.body(), self.soul(), self.parity_tag())
    }

    /// True if zero or homogeneous of the given parity.
    pub fn has_parity(&self, parity: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == parity)
    }

    fn check_sig(&self, other: &AlgebraElement) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_sig(other)?;
        let mut out = AlgebraElement::zero(self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.product(*mb) {
                    let c = ca * cb;
                    out.accumulate(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, factor: &BigRational) -> AlgebraElement {
        if factor.is_zero() {
            return AlgebraElement::zero(self.sig);
        }
        AlgebraElement {
            sig: self.sig,
            terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> AlgebraElement {
        let mut base = self.clone();
        let mut acc = AlgebraElement::one(self.sig);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse, `b⁻¹ Σ_k (−soul/b)^k` with `b` the body; the
    /// series is finite because the soul is nilpotent.
    pub fn inv(&self) -> Result<AlgebraElement> {
        let body = self.body();
        if body.is_zero() {
            return Err(Error::BodyZero);
        }
        let body_inv = body.recip();
        let step = self.soul().scale(&-body_inv.clone());
        let mut power = AlgebraElement::one(self.sig);
        let mut sum = AlgebraElement::one(self.sig);
        loop {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&body_inv))
    }

    /// The same element viewed in a signature with at least as many
    /// generators of each parity.
    pub fn embed(&self, target: Signature) -> Result<AlgebraElement> {
        if !self.sig.embeds_in(&target) {
            return Err(Error::SignatureMismatch {
                left: self.sig,
                right: target,
            });
        }
        Ok(AlgebraElement {
            sig: target,
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}·{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;

            /// Panics on a signature mismatch; see the `try_` variant.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;

            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;

            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                (&self).$method(rhs)
            }
        }

        impl $trait<AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;

            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            sig: self.sig,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// A generator of `Λ(p,q)`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Even(usize),
    Odd(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Even(i) => write!(f, "ε{}", i + 1),
            Generator::Odd(j) => write!(f, "θ{}", j + 1),
        }
    }
}

/// A violated constraint of an [`AlgebraMorphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    ImageCount {
        parity: Parity,
        expected: usize,
        found: usize,
    },
    WrongSignature {
        generator: Generator,
        found: Signature,
    },
    WrongParity {
        generator: Generator,
        found: ParityTag,
    },
    NonzeroBody {
        generator: Generator,
    },
    NonzeroSquare {
        generator: Generator,
    },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::ImageCount {
                parity,
                expected,
                found,
            } => write!(f, "expected {expected} {parity:?} images, found {found}"),
            MorphismViolation::WrongSignature { generator, found } => {
                write!(f, "image of {generator} lives in {found}")
            }
            MorphismViolation::WrongParity { generator, found } => {
                write!(f, "image of {generator} has {found} parity")
            }
            MorphismViolation::NonzeroBody { generator } => {
                write!(f, "image of {generator} has nonzero body")
            }
            MorphismViolation::NonzeroSquare { generator } => {
                write!(f, "image of {generator} does not square to zero")
            }
        }
    }
}

/// Outcome of [`AlgebraMorphism::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub violations: Vec<MorphismViolation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A unital, parity-preserving morphism `Λ(p,q) → Λ(p',q')`, fixed by the
/// images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Signature,
    target: Signature,
    even_images: Vec<AlgebraElement>,
    odd_images: Vec<AlgebraElement>,
}

impl AlgebraMorphism {
    pub fn new(
        source: Signature,
        target: Signature,
        even_images: Vec<AlgebraElement>,
        odd_images: Vec<AlgebraElement>,
    ) -> Result<Self> {
        let phi = Self::new_unchecked(source, target, even_images, odd_images);
        let report = phi.validate();
        if report.is_valid() {
            Ok(phi)
        } else {
            Err(Error::InvalidMorphism(report.violations))
        }
    }

    /// Skips validation; pair with [`AlgebraMorphism::validate`].
    pub fn new_unchecked(
        source: Signature,
        target: Signature,
        even_images: Vec<AlgebraElement>,
        odd_images: Vec<AlgebraElement>,
    ) -> Self {
        AlgebraMorphism {
            source,
            target,
            even_images,
            odd_images,
        }
    }

    pub fn identity(sig: Signature) -> Self {
        Self::inclusion(sig, sig).expect("a signature embeds in itself")
    }

    /// Generators map to themselves in a larger signature.
    pub fn inclusion(source: Signature, target: Signature) -> Result<Self> {
        if !source.embeds_in(&target) {
            return Err(Error::SignatureMismatch {
                left: source,
                right: target,
            });
        }
        let evens = (0..source.even_count())
            .map(|i| AlgebraElement::even_generator(target, i))
            .collect::<Result<_>>()?;
        let odds = (0..source.odd_count())
            .map(|j| AlgebraElement::odd_generator(target, j))
            .collect::<Result<_>>()?;
        Ok(Self::new_unchecked(source, target, evens, odds))
    }

    /// Every generator maps to zero: the projection onto the body.
    pub fn body_projection(source: Signature, target: Signature) -> Self {
        Self::new_unchecked(
            source,
            target,
            vec![AlgebraElement::zero(target); source.even_count()],
            vec![AlgebraElement::zero(target); source.odd_count()],
        )
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    pub fn even_images(&self) -> &[AlgebraElement] {
        &self.even_images
    }

    pub fn odd_images(&self) -> &[AlgebraElement] {
        &self.odd_images
    }

    /// Every violated constraint, in generator order.
    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        if self.even_images.len() != self.source.even_count() {
            violations.push(MorphismViolation::ImageCount {
                parity: Parity::Even,
                expected: self.source.even_count(),
                found: self.even_images.len(),
            });
        }
        if self.odd_images.len() != self.source.odd_count() {
            violations.push(MorphismViolation::ImageCount {
                parity: Parity::Odd,
                expected: self.source.odd_count(),
                found: self.odd_images.len(),
            });
        }
        for (i, img) in self.even_images.iter().enumerate() {
            let generator = Generator::Even(i);
            if img.signature() != self.target {
                violations.push(MorphismViolation::WrongSignature {
                    generator,
                    found: img.signature(),
                });
                continue;
            }
            if !img.has_parity(Parity::Even) {
                violations.push(MorphismViolation::WrongParity {
                    generator,
                    found: img.parity_tag(),
                });
            }
            if !img.body().is_zero() {
                violations.push(MorphismViolation::NonzeroBody { generator });
            }
            if !(img * img).is_zero() {
                violations.push(MorphismViolation::NonzeroSquare { generator });
            }
        }
        for (j, img) in self.odd_images.iter().enumerate() {
            let generator = Generator::Odd(j);
            if img.signature() != self.target {
                violations.push(MorphismViolation::WrongSignature {
                    generator,
                    found: img.signature(),
                });
                continue;
            }
            if !img.has_parity(Parity::Odd) {
                violations.push(MorphismViolation::WrongParity {
                    generator,
                    found: img.parity_tag(),
                });
            }
            if !img.body().is_zero() {
                violations.push(MorphismViolation::NonzeroBody { generator });
            }
        }
        ValidityReport { violations }
    }

    /// The unital multiplicative linear extension of the generator images.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.signature() != self.source {
            return Err(Error::SignatureMismatch {
                left: x.signature(),
                right: self.source,
            });
        }
        let mut out = AlgebraElement::zero(self.target);
        for (m, c) in x.terms() {
            let mut image = AlgebraElement::constant(self.target, c.clone());
            for i in m.even_indices() {
                image = &image * &self.even_images[i];
            }
            for j in m.odd_indices() {
                if image.is_zero() {
                    break;
                }
                image = &image * &self.odd_images[j];
            }
            out = &out + &image;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn th(s: Signature, j: usize) -> AlgebraElement {
        AlgebraElement::odd_generator(s, j).unwrap()
    }

    fn ep(s: Signature, i: usize) -> AlgebraElement {
        AlgebraElement::even_generator(s, i).unwrap()
    }

    fn int(s: Signature, v: i64) -> AlgebraElement {
        AlgebraElement::from_int(s, v)
    }

    #[test]
    fn signature_cap() {
        assert!(Signature::new(16, 16).is_ok());
        assert!(matches!(
            Signature::new(0, 17),
            Err(Error::SignatureTooLarge { .. })
        ));
    }

    #[test]
    fn add_cancels_and_canonicalizes() {
        let s = sig(0, 2);
        let a = int(s, 1) + th(s, 0);
        let b = int(s, 1) - th(s, 0);
        assert_eq!(a + b, int(s, 2));

        let x = th(s, 0) * th(s, 1) + int(s, 3);
        assert_eq!(&x + &AlgebraElement::zero(s), x);

        let t12 = th(s, 0) * th(s, 1);
        let sum = &t12 + &(-&t12);
        assert!(sum.is_zero());
        assert_eq!(sum.term_count(), 0);
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = int(sig(0, 1), 1);
        let b = int(sig(0, 2), 1);
        assert!(matches!(
            a.try_add(&b),
            Err(Error::SignatureMismatch { .. })
        ));
        assert!(matches!(
            a.try_mul(&b),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn odd_generators_anticommute() {
        let s = sig(0, 2);
        let t12 =
            AlgebraElement::monomial(s, Monomial::from_indices(&[], &[0, 1]).unwrap(), q(1, 1))
                .unwrap();
        assert_eq!(th(s, 0) * th(s, 1), t12);
        assert_eq!(th(s, 1) * th(s, 0), -t12);
        assert_eq!((int(s, 1) + th(s, 0)) * (int(s, 1) - th(s, 0)), int(s, 1));
    }

    #[test]
    fn square_of_even_plus_bivector() {
        // (ε1 + θ1θ2)² = 2 ε1θ1θ2
        let s = sig(1, 2);
        let x = ep(s, 0) + th(s, 0) * th(s, 1);
        let expected =
            AlgebraElement::monomial(s, Monomial::from_indices(&[0], &[0, 1]).unwrap(), q(2, 1))
                .unwrap();
        assert_eq!(&x * &x, expected);
    }

    #[test]
    fn inverse_examples() {
        let s = sig(0, 2);
        assert_eq!(
            int(s, 2).inv().unwrap(),
            AlgebraElement::constant(s, q(1, 2))
        );
        let t12 = th(s, 0) * th(s, 1);
        assert_eq!((int(s, 1) + &t12).inv().unwrap(), int(s, 1) - &t12);
        assert_eq!(th(s, 0).inv(), Err(Error::BodyZero));
    }

    #[test]
    fn body_soul_parity_examples() {
        let s = sig(0, 3);
        let t12 = th(s, 0) * th(s, 1);
        let (b, soul, tag) = (int(s, 3) + &t12).body_soul_parity();
        assert_eq!((b, soul, tag), (q(3, 1), t12.clone(), ParityTag::Even));

        let x = th(s, 0) + &t12 * th(s, 2);
        let (b, soul, tag) = x.body_soul_parity();
        assert_eq!((b, soul, tag), (q(0, 1), x.clone(), ParityTag::Odd));

        let y = int(s, 1) + th(s, 0);
        assert_eq!(y.body_soul_parity(), (q(1, 1), th(s, 0), ParityTag::Mixed));
        assert_eq!(AlgebraElement::zero(s).parity_tag(), ParityTag::Even);
    }

    #[test]
    fn monomial_order_is_lexicographic_on_index_lists() {
        let m = |e: &[usize], o: &[usize]| Monomial::from_indices(e, o).unwrap();
        let mut v = vec![
            m(&[1], &[]),
            m(&[0, 1], &[]),
            m(&[], &[2]),
            m(&[], &[]),
            m(&[0], &[]),
            m(&[], &[0, 2]),
            m(&[], &[0]),
            m(&[0], &[1]),
        ];
        v.sort();
        let expected = vec![
            m(&[], &[]),
            m(&[], &[0]),
            m(&[], &[0, 2]),
            m(&[], &[2]),
            m(&[0], &[]),
            m(&[0], &[1]),
            m(&[0, 1], &[]),
            m(&[1], &[]),
        ];
        assert_eq!(v, expected);
        assert!(Monomial::from_indices(&[], &[1, 1]).is_none());
        assert!(Monomial::from_indices(&[], &[2, 1]).is_none());
        assert!(Monomial::from_indices(&[], &[16]).is_none());
    }

    #[test]
    fn morphism_apply_examples() {
        let s = sig(0, 3);
        let t12 = th(s, 0) * th(s, 1);
        let x = int(s, 2) + &t12;
        assert_eq!(AlgebraMorphism::identity(s).apply(&x).unwrap(), x);
        assert_eq!(
            AlgebraMorphism::body_projection(s, s).apply(&x).unwrap(),
            int(s, 2)
        );

        // θ1 ↦ θ1, θ2 ↦ θ2 + θ1θ2θ3 into Λ(0,3)
        let src = sig(0, 2);
        let phi = AlgebraMorphism::new(src, s, vec![], vec![th(s, 0), th(s, 1) + &t12 * th(s, 2)])
            .unwrap();
        let y = th(src, 0) * th(src, 1);
        assert_eq!(phi.apply(&y).unwrap(), t12);
        assert!(matches!(
            phi.apply(&x),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn morphism_validation() {
        let s = sig(2, 0);
        assert!(AlgebraMorphism::identity(s).validate().is_valid());

        let bad = AlgebraMorphism::new_unchecked(s, s, vec![ep(s, 0) + ep(s, 1), ep(s, 1)], vec![]);
        assert_eq!(
            bad.validate().violations,
            vec![MorphismViolation::NonzeroSquare {
                generator: Generator::Even(0)
            }]
        );

        let t = sig(0, 1);
        let shifted = AlgebraMorphism::new_unchecked(t, t, vec![], vec![int(t, 1) + th(t, 0)]);
        let v = shifted.validate().violations;
        assert!(v.contains(&MorphismViolation::NonzeroBody {
            generator: Generator::Odd(0)
        }));
        assert!(AlgebraMorphism::new(t, t, vec![], vec![int(t, 1) + th(t, 0)]).is_err());
    }

    #[test]
    fn display() {
        let s = sig(1, 2);
        let x = int(s, 2) - th(s, 0) * th(s, 1) + (ep(s, 0) * th(s, 1)).scale(&q(3, 2));
        assert_eq!(x.to_string(), "2 - θ1θ2 + 3/2·ε1θ2");
    }
}
