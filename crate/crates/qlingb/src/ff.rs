//! Exact arithmetic in the tower GF(p) ⊂ GF(q) ⊂ GF(q^m), where q = p^s.
//!
//! The top field is realized as `GF(p)[z]/(g(z))` for a monic irreducible g of
//! degree s·m. Elements are dense coefficient vectors of length exactly s·m
//! in ascending degree order, fully reduced mod p. `frobenius` computes the
//! q-power map a ↦ a^{q^j}, which fixes GF(q) pointwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// GF(p)[z] helpers on dense coefficient vectors, ascending degree order
// ---------------------------------------------------------------------------

pub(crate) mod zpoly {
    /// Strip trailing zero coefficients.
    pub fn norm(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(v: &[u64]) -> Option<usize> {
        let mut d = v.len();
        while d > 0 && v[d - 1] == 0 {
            d -= 1;
        }
        d.checked_sub(1)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        norm(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if deg(a).is_none() || deg(b).is_none() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        norm(out)
    }

    /// Inverse of `a` mod the prime `p`, by extended Euclid on integers.
    pub fn modinv_int(a: u64, p: u64) -> u64 {
        let (mut r0, mut r1) = (p as i128, (a % p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "inverse of non-unit mod p");
        t0.rem_euclid(p as i128) as u64
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = deg(b).expect("division by zero polynomial");
        let lead_inv = modinv_int(b[db], p);
        let mut rem = norm(a.to_vec());
        let mut quo = vec![0u64; a.len().saturating_sub(db)];
        while let Some(dr) = deg(&rem) {
            if dr < db {
                break;
            }
            let c = rem[dr] * lead_inv % p;
            let shift = dr - db;
            quo[shift] = c;
            for (j, &bj) in b.iter().enumerate().take(db + 1) {
                rem[shift + j] = (rem[shift + j] + p - c * bj % p) % p;
            }
            rem = norm(rem);
        }
        (norm(quo), rem)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divmod(a, b, p).1
    }

    /// Extended Euclid: returns `(gcd, u)` with `u·a ≡ gcd (mod b)`.
    pub fn egcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (norm(a.to_vec()), norm(b.to_vec()));
        let (mut u0, mut u1) = (vec![1u64], Vec::new());
        while deg(&r1).is_some() {
            let (q, r) = divmod(&r0, &r1, p);
            (r0, r1) = (r1, r);
            let qu1 = mul(&q, &u1, p);
            (u0, u1) = (u1, sub(&u0, &qu1, p));
        }
        (r0, u0)
    }

    /// Monic polynomial of degree `d` whose coefficient vector is the `idx`-th
    /// in ascending-coefficient lex order (constant coefficient most
    /// significant, so the last coefficient varies fastest).
    pub fn monic_by_lex_index(idx: u128, d: usize, p: u64) -> Vec<u64> {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        let mut k = idx;
        for i in (0..d).rev() {
            coeffs[i] = (k % p as u128) as u64;
            k /= p as u128;
        }
        // after the division chain, coeffs[0] took the most significant digit
        coeffs
    }

    /// Trial division by every monic polynomial of degree 1..=⌊d/2⌋, in
    /// degree-ascending lex order. Returns the first factor found.
    pub fn find_factor(g: &[u64], p: u64) -> Option<Vec<u64>> {
        let d = deg(g)?;
        for e in 1..=d / 2 {
            let count = (p as u128).pow(e as u32);
            for idx in 0..count {
                let h = monic_by_lex_index(idx, e, p);
                if deg(&rem(g, &h, p)).is_none() {
                    return Some(h);
                }
            }
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Field parameters
// ---------------------------------------------------------------------------

/// Parameters of the tower GF(p) ⊂ GF(p^s) ⊂ GF(p^{s·m}).
#[derive(Debug)]
pub(crate) struct FieldParams {
    p: u64,
    s: usize,
    m: usize,
    /// Monic irreducible over GF(p), s·m+1 coefficients, ascending degree.
    modulus: Vec<u64>,
    /// Lazily built q-power tables: `frob_tables[j][i]` holds the coefficients
    /// of (z^i)^{q^j}. Caching only; equality ignores it.
    frob_tables: std::sync::OnceLock<Vec<Vec<Vec<u64>>>>,
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.s == other.s
            && self.m == other.m
            && self.modulus == other.modulus
    }
}

impl Eq for FieldParams {}

/// Shared, immutable handle to a field. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    inner: Arc<FieldParams>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(p={}, s={}, m={}, mod={})",
            self.p(),
            self.s(),
            self.m(),
            poly_in_z_string(self.modulus(), self.p())
        )
    }
}

impl Field {
    /// Build the field `GF(p)[z]/(g(z))` with deg g = s·m.
    ///
    /// If `modulus` is omitted, the lexicographically least monic irreducible
    /// of degree s·m is found by exhaustive search (ascending-coefficient lex,
    /// constant coefficient compared first), with irreducibility decided by
    /// trial division by all monic polynomials of degree ≤ ⌊s·m/2⌋.
    pub fn new(p: u64, s: usize, m: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::TooLarge(format!("p = {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 || m == 0 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                got: 1,
            });
        }
        // the order p^{s·m} must fit in a u128
        let d = s
            .checked_mul(m)
            .filter(|&d| u32::try_from(d).is_ok_and(|d32| (p as u128).checked_pow(d32).is_some()))
            .ok_or_else(|| Error::TooLarge(format!("p^(s·m) = {p}^({s}·{m}) overflows")))?;
        let modulus = match modulus {
            Some(raw) => {
                if raw.len() != d + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: d + 1,
                        got: raw.len(),
                    });
                }
                let reduced: Vec<u64> = raw.iter().map(|&c| c % p).collect();
                if reduced[d] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: d + 1,
                        got: zpoly::deg(&reduced).map_or(0, |e| e + 1),
                    });
                }
                if let Some(factor) = zpoly::find_factor(&reduced, p) {
                    return Err(Error::ReducibleModulus {
                        factor: poly_in_z_string(&factor, p),
                    });
                }
                reduced
            }
            None => Self::least_irreducible(p, d),
        };
        Ok(Field {
            inner: Arc::new(FieldParams {
                p,
                s,
                m,
                modulus,
                frob_tables: std::sync::OnceLock::new(),
            }),
        })
    }

    fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
        let count = (p as u128)
            .checked_pow(d as u32)
            .expect("modulus search space overflow");
        for idx in 0..count {
            let g = zpoly::monic_by_lex_index(idx, d, p);
            if zpoly::find_factor(&g, p).is_none() {
                return g;
            }
        }
        unreachable!("an irreducible of every degree exists over GF(p)")
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn s(&self) -> usize {
        self.inner.s
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    /// Extension degree s·m of the top field over GF(p).
    pub fn ext_degree(&self) -> usize {
        self.inner.s * self.inner.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Number of elements, p^{s·m}.
    pub fn order(&self) -> u128 {
        (self.p() as u128).pow(self.ext_degree() as u32)
    }

    /// Size of the base subfield GF(q), q = p^s.
    pub fn q(&self) -> u128 {
        (self.p() as u128).pow(self.s() as u32)
    }

    pub fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }

    /// Coefficients of (z^i)^{q^j} for j in 0..m, built on first use by
    /// repeated p-th powering of the monomial basis.
    fn frob_tables(&self) -> &[Vec<Vec<u64>>] {
        self.inner.frob_tables.get_or_init(|| {
            let d = self.ext_degree();
            let mut basis: Vec<FieldElement> = (0..d)
                .map(|i| {
                    let mut coeffs = vec![0u64; d];
                    coeffs[i] = 1;
                    FieldElement {
                        field: self.clone(),
                        coeffs,
                    }
                })
                .collect();
            let mut tables = Vec::with_capacity(self.m());
            for _ in 0..self.m() {
                tables.push(basis.iter().map(|e| e.coeffs.clone()).collect());
                for e in &mut basis {
                    for _ in 0..self.s() {
                        *e = e.pow_char();
                    }
                }
            }
            tables
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.ext_degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.ext_degree()];
        coeffs[0] = 1;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Residue class of the generator z.
    pub fn gen(&self) -> FieldElement {
        self.element(&[0, 1])
    }

    /// Residue class of an arbitrary representative (any length, any values;
    /// reduced mod p and mod the modulus).
    pub fn element(&self, representative: &[u64]) -> FieldElement {
        let p = self.p();
        let reduced: Vec<u64> = representative.iter().map(|&c| c % p).collect();
        let rem = zpoly::rem(&reduced, self.modulus(), p);
        self.reduced_element(rem)
    }

    fn reduced_element(&self, mut coeffs: Vec<u64>) -> FieldElement {
        coeffs.resize(self.ext_degree(), 0);
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The `idx`-th element, with coefficients as base-p digits of `idx`
    /// (constant coefficient least significant).
    pub fn element_from_index(&self, idx: u128) -> FieldElement {
        let p = self.p() as u128;
        let mut coeffs = vec![0u64; self.ext_degree()];
        let mut k = idx;
        for c in coeffs.iter_mut() {
            *c = (k % p) as u64;
            k /= p;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// All elements of the field in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_from_index(i))
    }

    /// Parse an element in the polynomial-in-z grammar, e.g. `z^2+z+1`.
    ///
    /// Terms may appear in any order and repeat (they are summed); the
    /// representative is reduced mod p and mod the modulus.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let raw = parse_poly_in_z(text, 1, 1)?;
        Ok(self.element(&raw))
    }
}

/// Parse a polynomial in z over the nonnegative integers; used both for field
/// element literals and for the `mod=` clause of a field description. `line`
/// and `col0` locate the text for error reporting.
pub(crate) fn parse_poly_in_z(text: &str, line: usize, col0: usize) -> Result<Vec<u64>> {
    let err = |off: usize, msg: &str| Error::Parse {
        line,
        col: col0 + off,
        msg: msg.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let base = text.find(trimmed.chars().next().unwrap()).unwrap_or(0);
    for (toff, term) in split_terms(trimmed) {
        let term = term.trim();
        if term.is_empty() {
            return Err(err(base + toff, "empty term"));
        }
        let (coeff_text, var_part) = match term.find('z') {
            Some(zpos) => (&term[..zpos], &term[zpos..]),
            None => (term, ""),
        };
        let coeff_text = coeff_text.trim().trim_end_matches('*').trim();
        let coeff: u64 = if coeff_text.is_empty() {
            if var_part.is_empty() {
                return Err(err(base + toff, "term without coefficient or variable"));
            }
            1
        } else {
            coeff_text
                .parse()
                .map_err(|_| err(base + toff, &format!("invalid coefficient `{coeff_text}`")))?
        };
        // p is below 2^32, so larger literals are never canonical; rejecting
        // them keeps repeated-term sums exact
        if coeff >= 1 << 32 {
            return Err(err(
                base + toff,
                &format!("coefficient {coeff} is too large"),
            ));
        }
        let exp: usize = if var_part.is_empty() {
            0
        } else if var_part == "z" {
            1
        } else {
            let rest = &var_part[1..];
            let Some(exp_text) = rest.strip_prefix('^') else {
                return Err(err(base + toff, &format!("malformed term `{term}`")));
            };
            exp_text
                .trim()
                .parse()
                .map_err(|_| err(base + toff, &format!("invalid exponent `{exp_text}`")))?
        };
        if exp > crate::linpoly::MAX_PARSED_EXP {
            return Err(err(base + toff, &format!("exponent {exp} is too large")));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += coeff;
    }
    Ok(coeffs)
}

/// Split on top-level `+`; returns (byte offset, term text) pairs.
fn split_terms(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == '+' {
            out.push((start, &s[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Canonical polynomial-in-z text: descending degree, zero terms omitted,
/// `c*z^k` with the coefficient elided when 1 and the exponent when ≤ 1.
pub(crate) fn poly_in_z_string(coeffs: &[u64], _p: u64) -> String {
    let mut parts: Vec<String> = Vec::new();
    for i in (0..coeffs.len()).rev() {
        let c = coeffs[i];
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{i}"),
        };
        let part = if i == 0 {
            format!("{c}")
        } else if c == 1 {
            var
        } else {
            format!("{c}*{var}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An element of `GF(p)[z]/(g(z))`: exactly s·m coefficients, reduced mod p.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_in_z_string(&self.coeffs, self.field.p()))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.field.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let p = self.field.p();
        let prod = zpoly::mul(&self.coeffs, &other.coeffs, p);
        let rem = zpoly::rem(&prod, self.field.modulus(), p);
        Ok(self.field.reduced_element(rem))
    }

    /// Multiplicative inverse, by extended Euclid against the modulus.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p();
        let (gcd, u) = zpoly::egcd(&self.coeffs, self.field.modulus(), p);
        // the modulus is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(zpoly::deg(&gcd), Some(0));
        let scale = zpoly::modinv_int(gcd[0], p);
        let inv = zpoly::mul(&u, &[scale], p);
        let rem = zpoly::rem(&inv, self.field.modulus(), p);
        Ok(self.field.reduced_element(rem))
    }

    /// p-th power, by square-and-multiply on the exponent p.
    fn pow_char(&self) -> FieldElement {
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut e = self.field.p();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        result
    }

    /// The q-power Frobenius iterate a ↦ a^{q^j}.
    ///
    /// Since a^{p^{s·m}} = a on the whole field, only j mod m matters. The
    /// map is GF(p)-linear in the coefficients (they are fixed by every p-th
    /// powering), so it is applied through the per-field q-power table of the
    /// monomial basis, itself built by repeated p-th powering.
    pub fn frobenius(&self, j: u64) -> FieldElement {
        let m = self.field.m() as u64;
        let jm = (j % m) as usize;
        if jm == 0 {
            return self.clone();
        }
        let p = self.field.p();
        let table = &self.field.frob_tables()[jm];
        let mut out = vec![0u64; self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (k, &t) in table[i].iter().enumerate() {
                if t != 0 {
                    out[k] = (out[k] + a * t) % p;
                }
            }
        }
        FieldElement {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// True iff the element lies in GF(q), the fixed field of `frobenius`.
    pub fn is_in_base_subfield(&self) -> bool {
        self.frobenius(1) == *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 1, 2, Some(vec![1, 1, 1])).unwrap()
    }

    // Full multiplication table of F_4 = {0, 1, z, z+1}, derived by hand from
    // z^2 = z + 1 and frozen. Index = c0 + 2*c1.
    const F4_MUL: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

    #[test]
    fn f4_matches_frozen_multiplication_table() {
        let f = f4();
        let elems: Vec<FieldElement> = f.elements().collect();
        for i in 0..4 {
            for j in 0..4 {
                let got = elems[i].mul(&elems[j]).unwrap();
                assert_eq!(got, elems[F4_MUL[i][j]], "{} * {}", elems[i], elems[j]);
            }
        }
    }

    #[test]
    fn build_field_examples() {
        assert!(Field::new(2, 1, 2, Some(vec![1, 1, 1])).is_ok());
        let f2 = Field::new(2, 1, 1, None).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]); // z is the least monic of degree 1
        assert_eq!(Field::new(4, 1, 1, None), Err(Error::NotPrime(4)));
    }

    #[test]
    fn build_field_finds_least_irreducible() {
        let f = Field::new(2, 1, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]); // z^2+z+1
        let f = Field::new(2, 1, 3, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]); // z^3+z^2+1 precedes z^3+z+1 in lex
        let f = Field::new(3, 1, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]); // z^2+1 is irreducible over GF(3)
    }

    #[test]
    fn default_modulus_is_lex_least_among_all_irreducibles() {
        // Independent route: collect every reducible monic polynomial as a
        // product of two smaller monic factors, then take the lex-least of
        // the complement and compare against the search result.
        for (p, max_d) in [(2u64, 8usize), (3, 4)] {
            for d in 1..=max_d {
                let mut reducible = std::collections::HashSet::new();
                for du in 1..d {
                    let dv = d - du;
                    for iu in 0..(p as u128).pow(du as u32) {
                        let u = zpoly::monic_by_lex_index(iu, du, p);
                        for iv in 0..(p as u128).pow(dv as u32) {
                            let v = zpoly::monic_by_lex_index(iv, dv, p);
                            reducible.insert(zpoly::mul(&u, &v, p));
                        }
                    }
                }
                let expected = (0..(p as u128).pow(d as u32))
                    .map(|idx| zpoly::monic_by_lex_index(idx, d, p))
                    .find(|g| !reducible.contains(g))
                    .unwrap();
                let found = Field::new(p, 1, d, None).unwrap();
                assert_eq!(found.modulus(), expected, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn element_indexing_is_a_bijection() {
        for f in [
            Field::new(2, 1, 3, None).unwrap(),
            Field::new(3, 1, 2, None).unwrap(),
            Field::new(5, 1, 1, None).unwrap(),
        ] {
            let all: std::collections::HashSet<FieldElement> = f.elements().collect();
            assert_eq!(all.len() as u128, f.order());
        }
    }

    #[test]
    fn build_field_rejects_bad_moduli() {
        // z^2+1 = (z+1)^2 over GF(2)
        assert!(matches!(
            Field::new(2, 1, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert_eq!(
            Field::new(2, 1, 2, Some(vec![1, 1])),
            Err(Error::DegreeMismatch {
                expected: 3,
                got: 2
            })
        );
        // not monic: leading coefficient 2 over GF(3)
        assert!(Field::new(3, 1, 1, Some(vec![1, 2])).is_err());
    }

    #[test]
    fn rejects_every_reducible_modulus_up_to_degree_6() {
        // Independent oracle: enumerate all products u*v with deg u + deg v = d,
        // both monic of degree >= 1, using a local multiply.
        let p = 2u64;
        for d in 2..=6usize {
            let count = 1u128 << d;
            let mut reducible = std::collections::HashSet::new();
            for du in 1..d {
                let dv = d - du;
                for iu in 0..(1u128 << du) {
                    let u = zpoly::monic_by_lex_index(iu, du, p);
                    for iv in 0..(1u128 << dv) {
                        let v = zpoly::monic_by_lex_index(iv, dv, p);
                        reducible.insert(zpoly::mul(&u, &v, p));
                    }
                }
            }
            for idx in 0..count {
                let g = zpoly::monic_by_lex_index(idx, d, p);
                let accepted = Field::new(2, 1, d, Some(g.clone())).is_ok();
                assert_eq!(
                    accepted,
                    !reducible.contains(&g),
                    "degree {d} candidate {:?}",
                    g
                );
            }
        }
    }

    #[test]
    fn addition_and_negation() {
        let f = f4();
        let z = f.gen();
        assert!(z.add(&z).unwrap().is_zero()); // characteristic 2
        assert_eq!(z.neg(), z);
        let f9 = Field::new(3, 1, 2, None).unwrap();
        let a = f9.element(&[2, 1]);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn multiplication_examples() {
        let f = f4();
        let z = f.gen();
        let z1 = f.element(&[1, 1]);
        assert_eq!(z.mul(&z).unwrap(), z1); // z^2 = z+1
        assert!(z.mul(&z1).unwrap().is_one()); // z(z+1) = 1
    }

    #[test]
    fn inversion() {
        let f = f4();
        assert!(f.one().inv().unwrap().is_one());
        assert_eq!(f.gen().inv().unwrap(), f.element(&[1, 1]));
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        // spot-check a bigger field: every nonzero element inverts
        let f = Field::new(5, 1, 2, None).unwrap();
        for a in f.elements().skip(1) {
            assert!(a.mul(&a.inv().unwrap()).unwrap().is_one(), "a = {a}");
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = f4();
        assert!(f.zero().frobenius(5).is_zero());
        assert_eq!(f.gen().frobenius(1), f.element(&[1, 1])); // z^2 = z+1
        for a in f.elements() {
            assert_eq!(a.frobenius(f.m() as u64), a);
        }
    }

    #[test]
    fn frobenius_table_matches_direct_exponentiation() {
        // Independent route: a^{q^j} by square-and-multiply on the integer
        // exponent q^j.
        fn pow(a: &FieldElement, mut e: u128) -> FieldElement {
            let mut result = a.field().one();
            let mut base = a.clone();
            while e > 0 {
                if e & 1 == 1 {
                    result = result.mul(&base).unwrap();
                }
                base = base.mul(&base).unwrap();
                e >>= 1;
            }
            result
        }
        for f in [
            Field::new(2, 1, 3, None).unwrap(),
            Field::new(2, 2, 2, None).unwrap(),
            Field::new(3, 1, 2, None).unwrap(),
            Field::new(3, 2, 1, None).unwrap(),
        ] {
            for a in f.elements() {
                for j in 0..(2 * f.m() as u64) {
                    let direct = pow(&a, f.q().pow(j as u32));
                    assert_eq!(a.frobenius(j), direct, "a = {a}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn frobenius_composes_additively() {
        let f = Field::new(2, 2, 2, None).unwrap(); // GF(16) with q = 4
        for a in f.elements() {
            assert_eq!(a.frobenius(0), a);
            for i in 0..4u64 {
                for j in 0..4u64 {
                    assert_eq!(a.frobenius(i).frobenius(j), a.frobenius(i + j));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for f in [
            Field::new(2, 1, 4, None).unwrap(),
            Field::new(3, 1, 2, None).unwrap(),
            Field::new(2, 2, 2, None).unwrap(),
        ] {
            for a in f.elements() {
                for b in f.elements() {
                    let sum = a.add(&b).unwrap().frobenius(1);
                    assert_eq!(sum, a.frobenius(1).add(&b.frobenius(1)).unwrap());
                    let prod = a.mul(&b).unwrap().frobenius(1);
                    assert_eq!(prod, a.frobenius(1).mul(&b.frobenius(1)).unwrap());
                }
            }
        }
    }

    #[test]
    fn base_subfield_membership() {
        let f = f4();
        assert!(f.one().is_in_base_subfield());
        assert!(f.zero().is_in_base_subfield());
        assert!(!f.gen().is_in_base_subfield()); // z^2 = z+1 != z
                                                 // with q = 4 on GF(16), exactly 4 elements are fixed
        let f16 = Field::new(2, 2, 2, None).unwrap();
        let fixed = f16.elements().filter(|a| a.is_in_base_subfield()).count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for f in [
            Field::new(2, 1, 2, None).unwrap(),
            Field::new(2, 1, 3, None).unwrap(),
            Field::new(3, 1, 2, None).unwrap(),
            Field::new(2, 2, 2, None).unwrap(),
            Field::new(13, 1, 1, None).unwrap(),
        ] {
            let elems: Vec<FieldElement> = f.elements().collect();
            for a in &elems {
                assert_eq!(a.add(&f.zero()).unwrap(), *a);
                assert_eq!(a.mul(&f.one()).unwrap(), *a);
                assert!(a.add(&a.neg()).unwrap().is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
                for b in &elems {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &elems {
                        assert_eq!(
                            a.add(b).unwrap().add(c).unwrap(),
                            a.add(&b.add(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(b).unwrap().mul(c).unwrap(),
                            a.mul(&b.mul(c).unwrap()).unwrap()
                        );
                        assert_eq!(
                            a.mul(&b.add(c).unwrap()).unwrap(),
                            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn params_mismatch_is_rejected() {
        let a = f4().gen();
        let b = Field::new(2, 1, 3, None).unwrap().gen();
        assert_eq!(a.add(&b), Err(Error::ParamsMismatch));
        assert_eq!(a.mul(&b), Err(Error::ParamsMismatch));
    }

    #[test]
    fn element_text_roundtrip() {
        let f = f4();
        for (text, canonical) in [
            ("z^2+z+1", "0"), // the modulus reduces to zero
            ("z+1", "z+1"),
            ("1", "1"),
            ("0", "0"),
            ("z + z", "0"),
        ] {
            let e = f.parse_element(text).unwrap();
            let printed = e.to_string();
            assert_eq!(printed, canonical, "input {text}");
            assert_eq!(f.parse_element(&printed).unwrap(), e);
        }
        // z^2 = z+1, z^3 = z^2+z = 1, z^4 = z, z^5 = z^2 = z+1
        assert_eq!(f.parse_element("z^5").unwrap(), f.element(&[1, 1]));

        let f13 = Field::new(13, 1, 1, None).unwrap();
        let e = f13.parse_element("12").unwrap();
        assert_eq!(e.to_string(), "12");
        let f27 = Field::new(3, 1, 3, None).unwrap();
        let e = f27.parse_element("2*z^2+z").unwrap();
        assert_eq!(e.to_string(), "2*z^2+z");
        assert_eq!(f27.parse_element("2z^2 + z").unwrap(), e);
    }

    #[test]
    fn field_values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Field>();
        assert_send_sync::<FieldElement>();
        let f = f4();
        let handle = std::thread::spawn({
            let f = f.clone();
            move || f.gen().frobenius(1)
        });
        assert_eq!(handle.join().unwrap(), f.element(&[1, 1]));
    }

    #[test]
    fn element_parse_errors() {
        let f = f4();
        assert!(matches!(f.parse_element(""), Err(Error::Parse { .. })));
        assert!(matches!(f.parse_element("z^"), Err(Error::Parse { .. })));
        assert!(matches!(f.parse_element("q+1"), Err(Error::Parse { .. })));
        assert!(matches!(f.parse_element("z+"), Err(Error::Parse { .. })));
        // guards against degenerate inputs
        assert!(matches!(
            f.parse_element("4294967296"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            f.parse_element("z^99999999"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn oversized_parameters_are_rejected() {
        assert!(matches!(
            Field::new(2, 1 << 40, 1 << 40, None),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            Field::new((1 << 32) + 1, 1, 1, None),
            Err(Error::TooLarge(_))
        ));
    }
}
