//! The free left module of length-ℓ vectors of linearized polynomials, its
//! monomials `x^{[k]}e_i`, and weighted term-over-position monomial orders.
//!
//! A monomial `x^{[k]}e_i` compares by `k+w_i` first; ties between distinct
//! positions are broken by the declared tie-break side. Both monomial-order
//! axioms (compatibility with left composition by `x^{[j]}`) hold for every
//! member of this family.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::linpoly::LinearizedPoly;

/// The monomial `x^{[exp]} e_pos`. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub pos: usize,
    pub exp: usize,
}

impl Monomial {
    pub fn new(pos: usize, exp: usize) -> Self {
        Monomial { pos, exp }
    }

    /// Left composition by `x^{[j]}`: adds j to the exponent.
    pub fn shift(&self, j: usize) -> Monomial {
        Monomial {
            pos: self.pos,
            exp: self.exp + j,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^[{}]e_{}", self.exp, self.pos)
    }
}

/// A coefficiented monomial; the coefficient is nonzero by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElement,
    pub mon: Monomial,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*{}", self.coeff, self.mon)
    }
}

/// Which position wins when weighted exponents tie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// The lower position index is greater (e_1 greatest).
    First,
    /// The higher position index is greater (e_ℓ greatest).
    Last,
}

impl TieBreak {
    pub fn as_str(self) -> &'static str {
        match self {
            TieBreak::First => "first",
            TieBreak::Last => "last",
        }
    }
}

/// Weighted term-over-position order: `x^{[k]}e_i < x^{[k']}e_{i'}` iff
/// `k+w_i < k'+w_{i'}`, with the tie-break deciding between distinct positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopOrder {
    weights: Vec<u64>,
    tiebreak: TieBreak,
}

impl TopOrder {
    pub fn new(weights: Vec<u64>, tiebreak: TieBreak) -> Result<TopOrder> {
        if weights.is_empty() {
            return Err(Error::ShapeMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(TopOrder { weights, tiebreak })
    }

    /// All-zero weights with e_1 greatest on ties.
    pub fn default_for(l: usize) -> TopOrder {
        TopOrder {
            weights: vec![0; l],
            tiebreak: TieBreak::First,
        }
    }

    pub fn l(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn tiebreak(&self) -> TieBreak {
        self.tiebreak
    }

    /// Total order on monomials; equality only for identical monomials.
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        for mon in [u, v] {
            if mon.pos == 0 || mon.pos > self.weights.len() {
                return Err(Error::PositionOutOfRange {
                    pos: mon.pos,
                    len: self.weights.len(),
                });
            }
        }
        let wu = u.exp as u128 + self.weights[u.pos - 1] as u128;
        let wv = v.exp as u128 + self.weights[v.pos - 1] as u128;
        Ok(wu.cmp(&wv).then_with(|| match self.tiebreak {
            TieBreak::First => v.pos.cmp(&u.pos),
            TieBreak::Last => u.pos.cmp(&v.pos),
        }))
    }
}

/// An element of the free module: exactly ℓ linearized polynomials.
#[derive(Clone)]
pub struct ModuleVector {
    field: Field,
    entries: Vec<LinearizedPoly>,
}

impl PartialEq for ModuleVector {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.entries == other.entries
    }
}

impl Eq for ModuleVector {}

impl std::hash::Hash for ModuleVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl ModuleVector {
    pub fn new(field: &Field, entries: Vec<LinearizedPoly>) -> Result<ModuleVector> {
        if entries.is_empty() {
            return Err(Error::ShapeMismatch {
                expected: 1,
                got: 0,
            });
        }
        for e in &entries {
            if !e.field().same_field(field) {
                return Err(Error::ParamsMismatch);
            }
        }
        Ok(ModuleVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn zero(field: &Field, l: usize) -> ModuleVector {
        ModuleVector {
            field: field.clone(),
            entries: vec![LinearizedPoly::zero(field); l],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn l(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[LinearizedPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_shape(&self, other: &ModuleVector) -> Result<()> {
        if !self.field.same_field(&other.field) {
            return Err(Error::ParamsMismatch);
        }
        if self.l() != other.l() {
            return Err(Error::ShapeMismatch {
                expected: self.l(),
                got: other.l(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(ModuleVector {
            field: self.field.clone(),
            entries,
        })
    }

    pub fn neg(&self) -> ModuleVector {
        ModuleVector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.add(&other.neg())
    }

    /// The left operation h ∘ f: applies h to every entry.
    pub fn compose_left(&self, h: &LinearizedPoly) -> Result<ModuleVector> {
        if !h.field().same_field(&self.field) {
            return Err(Error::ParamsMismatch);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| h.compose(e))
            .collect::<Result<_>>()?;
        Ok(ModuleVector {
            field: self.field.clone(),
            entries,
        })
    }

    /// All terms of the vector: coefficiented monomials `x^{[k]}e_i` with
    /// nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.entries.iter().enumerate().flat_map(|(i, e)| {
            e.coeffs().iter().enumerate().filter_map(move |(k, c)| {
                if c.is_zero() {
                    None
                } else {
                    Some(Term {
                        coeff: c.clone(),
                        mon: Monomial::new(i + 1, k),
                    })
                }
            })
        })
    }

    fn check_order(&self, order: &TopOrder) -> Result<()> {
        if order.l() != self.l() {
            return Err(Error::ShapeMismatch {
                expected: self.l(),
                got: order.l(),
            });
        }
        Ok(())
    }

    /// Leading term under the order; errors on the zero vector.
    pub fn leading_term(&self, order: &TopOrder) -> Result<Term> {
        self.check_order(order)?;
        let mut best: Option<Term> = None;
        for t in self.terms() {
            best = match best {
                None => Some(t),
                Some(cur) => {
                    if order.compare(&t.mon, &cur.mon)? == Ordering::Greater {
                        Some(t)
                    } else {
                        Some(cur)
                    }
                }
            };
        }
        best.ok_or(Error::ZeroVector)
    }

    /// Leading monomial: the greatest monomial of the vector.
    pub fn leading_monomial(&self, order: &TopOrder) -> Result<Monomial> {
        Ok(self.leading_term(order)?.mon)
    }

    /// Leading position: the coordinate of the leading monomial.
    pub fn leading_position(&self, order: &TopOrder) -> Result<usize> {
        Ok(self.leading_term(order)?.mon.pos)
    }

    /// Parse the `[ <linpoly> ; ... ]` grammar.
    pub fn parse(field: &Field, text: &str) -> Result<ModuleVector> {
        parse_at(field, text, 1, 1)
    }
}

pub(crate) fn parse_at(
    field: &Field,
    text: &str,
    line: usize,
    col0: usize,
) -> Result<ModuleVector> {
    let err = |off: usize, msg: &str| Error::Parse {
        line,
        col: col0 + off,
        msg: msg.to_string(),
    };
    let trimmed = text.trim();
    if !trimmed.starts_with('[') {
        return Err(err(0, "expected `[` opening a vector"));
    }
    if !trimmed.ends_with(']') {
        return Err(err(text.len(), "expected `]` closing the vector"));
    }
    let open = text.find('[').unwrap();
    let close = text.rfind(']').unwrap();
    let interior = &text[open + 1..close];
    let mut entries = Vec::new();
    let mut start = 0usize;
    for piece in interior.split(';') {
        let off = open + 1 + start;
        entries.push(crate::linpoly::parse_at(field, piece, line, col0 + off)?);
        start += piece.len() + 1;
    }
    ModuleVector::new(field, entries)
}

/// Canonical form: `[ <linpoly> ; ... ]` with single spaces around entries.
impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[ ")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(" ]")
    }
}
