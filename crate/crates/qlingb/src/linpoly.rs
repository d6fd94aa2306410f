//! The ring of q-linearized polynomials `f(x) = Σ a_i x^{[i]}` over GF(q^m),
//! with `[i] = q^i`, under addition and composition.
//!
//! Coefficients are stored densely in ascending order of the q-degree i; the
//! vector is empty for the zero polynomial and otherwise ends in a nonzero
//! coefficient. Composition twists coefficients through the Frobenius:
//! `(f∘g)_k = Σ_{i+j=k} a_i · b_j^{[i]}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

/// A q-linearized polynomial. `coeffs[i]` is the coefficient of `x^{[i]}`.
#[derive(Clone)]
pub struct LinearizedPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for LinearizedPoly {}

impl std::hash::Hash for LinearizedPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl LinearizedPoly {
    pub fn zero(field: &Field) -> Self {
        LinearizedPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    /// The composition identity `x^{[0]} = x`.
    pub fn identity(field: &Field) -> Self {
        Self::monomial(field.one(), 0)
    }

    /// The monomial `x^{[exp]}`.
    pub fn x_power(field: &Field, exp: usize) -> Self {
        Self::monomial(field.one(), exp)
    }

    /// The monomial `coeff·x^{[exp]}`; the zero polynomial if coeff is zero.
    pub fn monomial(coeff: FieldElement, exp: usize) -> Self {
        let field = coeff.field().clone();
        if coeff.is_zero() {
            return Self::zero(&field);
        }
        let mut coeffs = vec![field.zero(); exp + 1];
        coeffs[exp] = coeff;
        LinearizedPoly { field, coeffs }
    }

    /// Build from coefficients in ascending q-degree order; trailing zeros are
    /// stripped.
    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            if !c.field().same_field(field) {
                return Err(Error::ParamsMismatch);
            }
        }
        let mut p = LinearizedPoly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// q-degree: the largest i with a_i ≠ 0, or `None` for the zero
    /// polynomial. `None` sorts below every `Some`, which is exactly the
    /// minus-infinity convention comparisons rely on.
    pub fn qdeg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading term (coefficient, q-degree) of a nonzero polynomial.
    pub fn leading_term(&self) -> Result<(FieldElement, usize)> {
        match self.coeffs.last() {
            Some(c) => Ok((c.clone(), self.coeffs.len() - 1)),
            None => Err(Error::ZeroPolynomial),
        }
    }

    /// Coefficient of `x^{[i]}` (zero when i exceeds the q-degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn check_same(&self, other: &LinearizedPoly) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.check_same(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i))?);
        }
        let mut out = LinearizedPoly {
            field: self.field.clone(),
            coeffs,
        };
        out.normalize();
        Ok(out)
    }

    pub fn neg(&self) -> LinearizedPoly {
        LinearizedPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.add(&other.neg())
    }

    /// Left scaling c·f, i.e. `(c x^{[0]}) ∘ f`: multiplies every coefficient
    /// by c.
    pub fn scale(&self, c: &FieldElement) -> Result<LinearizedPoly> {
        if !c.field().same_field(&self.field) {
            return Err(Error::ParamsMismatch);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(c.mul(a)?);
        }
        let mut out = LinearizedPoly {
            field: self.field.clone(),
            coeffs,
        };
        out.normalize();
        Ok(out)
    }

    /// Composition (f∘g)(x) = f(g(x)). For nonzero operands the q-degrees
    /// add; the ring has no zero divisors.
    pub fn compose(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let twisted = a.mul(&b.frobenius(i as u64))?;
                coeffs[i + j] = coeffs[i + j].add(&twisted)?;
            }
        }
        let mut out = LinearizedPoly {
            field: self.field.clone(),
            coeffs,
        };
        out.normalize();
        Ok(out)
    }

    /// Monomial composition law: `(b x^{[a]}) ∘ (c x^{[k]}) = b·c^{[a]} x^{[a+k]}`.
    pub fn monomial_compose(
        b: &FieldElement,
        a: usize,
        c: &FieldElement,
        k: usize,
    ) -> Result<LinearizedPoly> {
        let coeff = b.mul(&c.frobenius(a as u64))?;
        Ok(Self::monomial(coeff, a + k))
    }

    /// Evaluate the q-linear map at a point: `f(α) = Σ a_i α^{[i]}`.
    pub fn eval(&self, alpha: &FieldElement) -> Result<FieldElement> {
        if !alpha.field().same_field(&self.field) {
            return Err(Error::ParamsMismatch);
        }
        let mut acc = self.field.zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&a.mul(&alpha.frobenius(i as u64))?)?;
        }
        Ok(acc)
    }

    /// Parse the `(coeff)*X^[i] + ...` grammar; `0` is the zero polynomial.
    pub fn parse(field: &Field, text: &str) -> Result<LinearizedPoly> {
        parse_at(field, text, 1, 1)
    }
}

/// Cap on exponents accepted by the parsers; keeps dense storage sane.
pub(crate) const MAX_PARSED_EXP: usize = 1 << 20;

/// Parser shared with the problem-file front end; `line`/`col0` locate the
/// text inside a larger document for error reporting.
pub(crate) fn parse_at(
    field: &Field,
    text: &str,
    line: usize,
    col0: usize,
) -> Result<LinearizedPoly> {
    let err = |off: usize, msg: String| Error::Parse {
        line,
        col: col0 + off,
        msg,
    };
    if text.trim().is_empty() {
        return Err(err(0, "empty polynomial".into()));
    }
    if text.trim() == "0" {
        return Ok(LinearizedPoly::zero(field));
    }
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut coeffs: Vec<FieldElement> = Vec::new();
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() || bytes[pos] != b'(' {
            return Err(err(pos, "expected `(` starting a coefficient".into()));
        }
        let open = pos;
        let close = text[open..]
            .find(')')
            .map(|k| open + k)
            .ok_or_else(|| err(open, "unterminated coefficient".into()))?;
        let coeff_text = &text[open + 1..close];
        let raw = crate::ff::parse_poly_in_z(coeff_text, line, col0 + open + 1)?;
        let coeff = field.element(&raw);
        pos = close + 1;
        let tail = &text[pos..];
        let Some(rest) = tail.strip_prefix("*X^[") else {
            return Err(err(pos, "expected `*X^[` after the coefficient".into()));
        };
        let digits_end = rest
            .find(']')
            .ok_or_else(|| err(pos, "unterminated exponent".into()))?;
        let exp: usize = rest[..digits_end].parse().map_err(|_| {
            err(
                pos + 4,
                format!("invalid exponent `{}`", &rest[..digits_end]),
            )
        })?;
        if exp > MAX_PARSED_EXP {
            return Err(err(pos + 4, format!("exponent {exp} is too large")));
        }
        pos += 4 + digits_end + 1;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, field.zero());
        }
        coeffs[exp] = coeffs[exp].add(&coeff).expect("same field");
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'+' {
            return Err(err(pos, "expected `+` between terms".into()));
        }
        pos += 1;
    }
    LinearizedPoly::from_coeffs(field, coeffs)
}

/// Canonical form: strictly decreasing exponents, coefficients always
/// parenthesized, e.g. `(z+1)*X^[2] + (1)*X^[0]`; zero prints `0`.
impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*X^[{i}]")?;
        }
        Ok(())
    }
}
