//! JSON wire formats.
//!
//! Output is compact with a fixed key order, so serializing a parsed
//! canonical payload reproduces it byte for byte. Parsing is strict: unknown
//! keys, unsorted index lists, out-of-order terms, unreduced or zero
//! coefficients and grading violations are rejected with the JSON path of
//! the offending item.
//!
//! Generator indices are 1-based on the wire (`θ1` is `"o": [1]`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::linalg::RationalMatrix;
use crate::superalgebra::{AlgebraElement, Monomial, Signature};
use crate::superflag::{BigCellPoint, JacobianBasis, JacobianReport, PoincareElement};
use crate::supermatrix::{BlockShape, SuperMatrix};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureJson {
    pub even: usize,
    pub odd: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub e: Vec<usize>,
    pub o: Vec<usize>,
    pub c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub sig: SignatureJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: SignatureJson,
    pub cols: SignatureJson,
    pub entries: Vec<Vec<ElementJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    pub alpha: MatrixJson,
    pub beta: MatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoincareJson {
    #[serde(rename = "L")]
    pub l: MatrixJson,
    #[serde(rename = "R")]
    pub r: MatrixJson,
    #[serde(rename = "N")]
    pub n: MatrixJson,
    pub chi: MatrixJson,
    pub phi: MatrixJson,
    pub d: ElementJson,
}

/// Input of `compute act`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActJson {
    #[serde(rename = "P")]
    pub p: PoincareJson,
    pub point: PointJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobianJson {
    pub basis: String,
    pub even_rank: usize,
    pub odd_rank: usize,
    pub even_matrix: Vec<Vec<String>>,
    pub odd_matrix: Vec<Vec<String>>,
}

/// Parse `text` as `T`, reporting the JSON path of structural errors.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        ParseError::new(
            if path == "." {
                "$".to_string()
            } else {
                format!("$.{path}")
            },
            e.into_inner().to_string(),
        )
    })?;
    de.end().map_err(|e| ParseError::new("$", e.to_string()))?;
    Ok(value)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire types always serialize")
}

fn err(path: &str, message: impl Into<String>) -> ParseError {
    ParseError::new(path, message)
}

/// `n` or `n/d` in lowest terms with `d > 1`.
pub fn rational_to_string(q: &BigRational) -> String {
    q.to_string()
}

/// Inverse of [`rational_to_string`]; rejects anything non-canonical.
pub fn parse_rational(text: &str, path: &str) -> Result<BigRational, ParseError> {
    let bad = || err(path, format!("'{text}' is not a canonical fraction"));
    let digits_ok = |s: &str, allow_zero: bool| {
        !s.is_empty()
            && s.bytes().all(|b| b.is_ascii_digit())
            && (s == "0" && allow_zero || !s.starts_with('0'))
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let magnitude = num.strip_prefix('-').unwrap_or(num);
    if !digits_ok(magnitude, den.is_none() && !num.starts_with('-')) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let Some(den) = den else {
        return Ok(BigRational::from_integer(n));
    };
    if !digits_ok(den, false) {
        return Err(bad());
    }
    let d: BigInt = den.parse().map_err(|_| bad())?;
    let q = BigRational::new(n.clone(), d.clone());
    if d.is_one() || n.is_zero() || *q.numer() != n || *q.denom() != d {
        return Err(bad());
    }
    Ok(q)
}

fn signature_json(sig: Signature) -> SignatureJson {
    SignatureJson {
        even: sig.even_count(),
        odd: sig.odd_count(),
    }
}

fn signature_from(json: &SignatureJson, path: &str) -> Result<Signature, ParseError> {
    Signature::new(json.even, json.odd).map_err(|e| err(path, e.to_string()))
}

fn shape_json(shape: BlockShape) -> SignatureJson {
    SignatureJson {
        even: shape.even,
        odd: shape.odd,
    }
}

fn shape_from(json: &SignatureJson) -> BlockShape {
    BlockShape::new(json.even, json.odd)
}

pub fn element_json(x: &AlgebraElement) -> ElementJson {
    ElementJson {
        sig: signature_json(x.signature()),
        terms: x
            .terms()
            .map(|(m, c)| TermJson {
                e: m.even_indices().map(|i| i + 1).collect(),
                o: m.odd_indices().map(|j| j + 1).collect(),
                c: rational_to_string(c),
            })
            .collect(),
    }
}

fn indices_from(list: &[usize], count: usize, path: &str) -> Result<Vec<usize>, ParseError> {
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err(path, "indices must be strictly increasing"));
    }
    if let Some(&bad) = list.iter().find(|&&i| i == 0 || i > count) {
        return Err(err(path, format!("index {bad} is outside 1..={count}")));
    }
    Ok(list.iter().map(|i| i - 1).collect())
}

pub fn element_from(json: &ElementJson, path: &str) -> Result<AlgebraElement, ParseError> {
    let sig = signature_from(&json.sig, &format!("{path}.sig"))?;
    let mut previous: Option<Monomial> = None;
    let mut terms = Vec::with_capacity(json.terms.len());
    for (k, t) in json.terms.iter().enumerate() {
        let at = format!("{path}.terms[{k}]");
        let e = indices_from(&t.e, sig.even_count(), &format!("{at}.e"))?;
        let o = indices_from(&t.o, sig.odd_count(), &format!("{at}.o"))?;
        let m = Monomial::from_indices(&e, &o).ok_or_else(|| err(&at, "invalid monomial"))?;
        if previous.is_some_and(|p| p >= m) {
            return Err(err(&at, "terms are not in canonical order"));
        }
        previous = Some(m);
        let c = parse_rational(&t.c, &format!("{at}.c"))?;
        if c.is_zero() {
            return Err(err(&format!("{at}.c"), "zero coefficients are not stored"));
        }
        terms.push((m, c));
    }
    AlgebraElement::from_terms(sig, terms).map_err(|e| err(path, e.to_string()))
}

pub fn matrix_json(m: &SuperMatrix) -> MatrixJson {
    MatrixJson {
        rows: shape_json(m.row_shape()),
        cols: shape_json(m.col_shape()),
        entries: m
            .rows_iter()
            .map(|row| row.iter().map(element_json).collect())
            .collect(),
    }
}

pub fn matrix_from(json: &MatrixJson, path: &str) -> Result<SuperMatrix, ParseError> {
    let rows = shape_from(&json.rows);
    let cols = shape_from(&json.cols);
    if json.entries.len() != rows.total() {
        return Err(err(
            &format!("{path}.entries"),
            format!(
                "expected {} rows, found {}",
                rows.total(),
                json.entries.len()
            ),
        ));
    }
    let mut parsed = Vec::with_capacity(rows.total());
    for (i, row) in json.entries.iter().enumerate() {
        if row.len() != cols.total() {
            return Err(err(
                &format!("{path}.entries[{i}]"),
                format!("expected {} entries, found {}", cols.total(), row.len()),
            ));
        }
        let row = row
            .iter()
            .enumerate()
            .map(|(j, e)| element_from(e, &format!("{path}.entries[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(row);
    }
    let sig = match parsed.iter().flatten().next() {
        Some(e) => e.signature(),
        None => Signature::scalars(),
    };
    for (i, row) in parsed.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let at = format!("{path}.entries[{i}][{j}]");
            if e.signature() != sig {
                return Err(err(
                    &at,
                    format!("signature {} differs from {sig}", e.signature()),
                ));
            }
            if !e.has_parity(rows.parity(i) + cols.parity(j)) {
                return Err(err(&at, "entry violates the grading"));
            }
        }
    }
    SuperMatrix::new(sig, rows, cols, parsed).map_err(|e| err(path, e.to_string()))
}

pub fn point_json(pt: &BigCellPoint) -> PointJson {
    PointJson {
        a: matrix_json(pt.a()),
        alpha: matrix_json(pt.alpha()),
        beta: matrix_json(pt.beta()),
    }
}

pub fn point_from(json: &PointJson, path: &str) -> Result<BigCellPoint, ParseError> {
    BigCellPoint::new(
        matrix_from(&json.a, &format!("{path}.A"))?,
        matrix_from(&json.alpha, &format!("{path}.alpha"))?,
        matrix_from(&json.beta, &format!("{path}.beta"))?,
    )
    .map_err(|e| err(path, e.to_string()))
}

pub fn poincare_json(p: &PoincareElement) -> PoincareJson {
    PoincareJson {
        l: matrix_json(p.l()),
        r: matrix_json(p.r()),
        n: matrix_json(p.n()),
        chi: matrix_json(p.chi()),
        phi: matrix_json(p.phi()),
        d: element_json(p.d()),
    }
}

pub fn poincare_from(json: &PoincareJson, path: &str) -> Result<PoincareElement, ParseError> {
    PoincareElement::new(
        matrix_from(&json.l, &format!("{path}.L"))?,
        matrix_from(&json.r, &format!("{path}.R"))?,
        matrix_from(&json.n, &format!("{path}.N"))?,
        matrix_from(&json.chi, &format!("{path}.chi"))?,
        matrix_from(&json.phi, &format!("{path}.phi"))?,
        element_from(&json.d, &format!("{path}.d"))?,
    )
    .map_err(|e| err(path, e.to_string()))
}

fn rational_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rational_to_string).collect())
        .collect()
}

fn rational_matrix_from(rows: &[Vec<String>], path: &str) -> Result<RationalMatrix, ParseError> {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(err(&format!("{path}[{i}]"), "ragged rows"));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, c)| parse_rational(c, &format!("{path}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(RationalMatrix::from_rows(out))
}

pub fn jacobian_json(r: &JacobianReport) -> JacobianJson {
    JacobianJson {
        basis: r.basis.name().to_string(),
        even_rank: r.even_rank,
        odd_rank: r.odd_rank,
        even_matrix: rational_rows(&r.even_matrix),
        odd_matrix: rational_rows(&r.odd_matrix),
    }
}

pub fn jacobian_from(json: &JacobianJson, path: &str) -> Result<JacobianReport, ParseError> {
    let basis = JacobianBasis::from_name(&json.basis).ok_or_else(|| {
        err(
            &format!("{path}.basis"),
            format!("unknown basis '{}'", json.basis),
        )
    })?;
    let even_matrix = rational_matrix_from(&json.even_matrix, &format!("{path}.even_matrix"))?;
    let odd_matrix = rational_matrix_from(&json.odd_matrix, &format!("{path}.odd_matrix"))?;
    if even_matrix.rank() != json.even_rank {
        return Err(err(
            &format!("{path}.even_rank"),
            "rank does not match even_matrix",
        ));
    }
    if odd_matrix.rank() != json.odd_rank {
        return Err(err(
            &format!("{path}.odd_rank"),
            "rank does not match odd_matrix",
        ));
    }
    Ok(JacobianReport {
        basis,
        even_rank: json.even_rank,
        odd_rank: json.odd_rank,
        even_matrix,
        odd_matrix,
    })
}

/// Values with a wire format.
pub trait Wire: Sized {
    type Json: Serialize + DeserializeOwned;

    fn to_wire(&self) -> Self::Json;
    fn from_wire(json: &Self::Json, path: &str) -> Result<Self, ParseError>;

    fn to_json_string(&self) -> String {
        to_json(&self.to_wire())
    }

    fn from_json_str(text: &str) -> Result<Self, ParseError> {
        Self::from_wire(&parse_json(text)?, "$")
    }
}

impl Wire for AlgebraElement {
    type Json = ElementJson;

    fn to_wire(&self) -> ElementJson {
        element_json(self)
    }

    fn from_wire(json: &ElementJson, path: &str) -> Result<Self, ParseError> {
        element_from(json, path)
    }
}

impl Wire for SuperMatrix {
    type Json = MatrixJson;

    fn to_wire(&self) -> MatrixJson {
        matrix_json(self)
    }

    fn from_wire(json: &MatrixJson, path: &str) -> Result<Self, ParseError> {
        matrix_from(json, path)
    }
}

impl Wire for BigCellPoint {
    type Json = PointJson;

    fn to_wire(&self) -> PointJson {
        point_json(self)
    }

    fn from_wire(json: &PointJson, path: &str) -> Result<Self, ParseError> {
        point_from(json, path)
    }
}

impl Wire for PoincareElement {
    type Json = PoincareJson;

    fn to_wire(&self) -> PoincareJson {
        poincare_json(self)
    }

    fn from_wire(json: &PoincareJson, path: &str) -> Result<Self, ParseError> {
        poincare_from(json, path)
    }
}

impl Wire for JacobianReport {
    type Json = JacobianJson;

    fn to_wire(&self) -> JacobianJson {
        jacobian_json(self)
    }

    fn from_wire(json: &JacobianJson, path: &str) -> Result<Self, ParseError> {
        jacobian_from(json, path)
    }
}

/// Parse the `compute act` payload `{"P": …, "point": …}`.
pub fn act_from_str(text: &str) -> Result<(PoincareElement, BigCellPoint), ParseError> {
    let json: ActJson = parse_json(text)?;
    Ok((
        poincare_from(&json.p, "$.P")?,
        point_from(&json.point, "$.point")?,
    ))
}

pub fn act_to_string(p: &PoincareElement, pt: &BigCellPoint) -> String {
    to_json(&ActJson {
        p: poincare_json(p),
        point: point_json(pt),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn element_roundtrip_is_byte_stable() {
        let text = r#"{"sig":{"even":1,"odd":2},"terms":[{"e":[],"o":[],"c":"2"},{"e":[],"o":[1,2],"c":"-1"},{"e":[1],"o":[2],"c":"3/2"}]}"#;
        let x = AlgebraElement::from_json_str(text).unwrap();
        assert_eq!(x.to_json_string(), text);
        assert_eq!(x.to_string(), "2 - θ1θ2 + 3/2·ε1θ2");
    }

    #[test]
    fn rejects_non_canonical_elements() {
        let cases = [
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[1,2],"c":"1"},{"e":[],"o":[],"c":"1"}]}"#,
                "$.terms[1]",
            ),
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[2,1],"c":"1"}]}"#,
                "$.terms[0].o",
            ),
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[3],"c":"1"}]}"#,
                "$.terms[0].o",
            ),
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[],"c":"2/4"}]}"#,
                "$.terms[0].c",
            ),
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[],"c":"0"}]}"#,
                "$.terms[0].c",
            ),
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[],"c":"1.5"}]}"#,
                "$.terms[0].c",
            ),
            (
                r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[],"c":"4/1"}]}"#,
                "$.terms[0].c",
            ),
            (r#"{"sig":{"even":0,"odd":99},"terms":[]}"#, "$.sig"),
        ];
        for (text, path) in cases {
            let e = AlgebraElement::from_json_str(text).unwrap_err();
            assert_eq!(e.path, path, "{text}: {e}");
        }
        let e = AlgebraElement::from_json_str(
            r#"{"sig":{"even":0,"odd":2},"terms":[{"e":[],"o":[],"c":1}]}"#,
        )
        .unwrap_err();
        assert_eq!(e.path, "$.terms[0].c");
        let e = AlgebraElement::from_json_str(r#"{"sig":{"even":0,"odd":2},"terms":[],"x":1}"#)
            .unwrap_err();
        assert!(e.message.contains("unknown field"), "{e}");
    }

    #[test]
    fn rational_strings() {
        for s in [
            "0",
            "1",
            "-3",
            "7/2",
            "-7/2",
            "123456789012345678901234567890",
        ] {
            assert_eq!(rational_to_string(&parse_rational(s, "$").unwrap()), s);
        }
        for s in [
            "", "-", "01", "-0", "1/0", "1/-2", "+1", "1/01", " 1", "0/3",
        ] {
            assert!(parse_rational(s, "$").is_err(), "{s}");
        }
    }

    #[test]
    fn matrix_grading_violation_names_the_entry() {
        let one = r#"{"sig":{"even":0,"odd":1},"terms":[{"e":[],"o":[],"c":"1"}]}"#;
        let zero = r#"{"sig":{"even":0,"odd":1},"terms":[]}"#;
        let text = format!(
            r#"{{"rows":{{"even":1,"odd":1}},"cols":{{"even":1,"odd":1}},"entries":[[{one},{one}],[{zero},{one}]]}}"#
        );
        let e = SuperMatrix::from_json_str(&text).unwrap_err();
        assert_eq!(e.path, "$.entries[0][1]");
    }

    #[test]
    fn composite_roundtrips() {
        let s = sig(1, 4);
        let mut rng = random::rng_from_seed(12);
        let g = random::invertible_graded_matrix(&mut rng, s, BlockShape::new(2, 2), 2);
        let text = g.to_json_string();
        assert_eq!(SuperMatrix::from_json_str(&text).unwrap(), g);
        let pt = crate::superflag::random_big_cell_point(&mut rng, s);
        assert_eq!(
            BigCellPoint::from_json_str(&pt.to_json_string()).unwrap(),
            pt
        );
        let p = crate::superflag::random_poincare(&mut rng, s);
        let text = p.to_json_string();
        assert_eq!(
            PoincareElement::from_json_str(&text)
                .unwrap()
                .to_json_string(),
            text
        );
        let (p2, pt2) = act_from_str(&act_to_string(&p, &pt)).unwrap();
        assert_eq!((p2, pt2), (p, pt));
        let r = crate::superflag::jacobian_at_identity(JacobianBasis::Sl);
        assert_eq!(
            JacobianReport::from_json_str(&r.to_json_string()).unwrap(),
            r
        );
    }
}
