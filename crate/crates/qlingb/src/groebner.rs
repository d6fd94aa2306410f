//! Reduction modulo a set with exact quotient certificates, minimal Gröbner
//! basis computation, membership testing, and leading-monomial prediction
//! for left submodules of the free module of linearized-polynomial vectors.
//!
//! Reduction cancels the leading term of f against a single reducer g at the
//! same leading position: with `lt(f) = c x^{[n]}e_j` and `lt(g) = d x^{[p]}e_j`,
//! the step subtracts `(b x^{[a]}) ∘ g` where `a = n−p` and `b = c / d^{[a]}`.
//! Minimization reduces pairs of elements sharing a leading position until
//! all leading positions are distinct; distinct leading positions make the
//! set a minimal basis, and a minimal basis is a minimal Gröbner basis.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linpoly::LinearizedPoly;
use crate::modvec::{ModuleVector, Monomial, TopOrder};

/// One reduction step: subtracted `(coeff · x^{[exp]}) ∘ reducers[reducer]`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub reducer: usize,
    pub exp: usize,
    pub coeff: crate::ff::FieldElement,
}

/// Outcome of a full reduction. The certificate identity
/// `input = Σ quotients[i] ∘ reducers[i] + remainder` holds exactly.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub remainder: ModuleVector,
    pub quotients: Vec<LinearizedPoly>,
    pub steps: Vec<ReductionStep>,
}

impl ReductionResult {
    /// Recompute the certificate identity against the original input.
    pub fn verifies(&self, input: &ModuleVector, reducers: &[ModuleVector]) -> Result<bool> {
        let mut acc = self.remainder.clone();
        for (q, r) in self.quotients.iter().zip(reducers) {
            acc = acc.add(&r.compose_left(q)?)?;
        }
        Ok(acc == *input)
    }
}

/// Indices of reducers applicable to lt(f): same leading position, leading
/// exponent not exceeding f's. Empty iff f is minimal with respect to the set.
pub fn find_reducers(
    f: &ModuleVector,
    reducers: &[ModuleVector],
    order: &TopOrder,
) -> Result<Vec<usize>> {
    let lt_f = f.leading_term(order)?;
    let mut out = Vec::new();
    for (i, g) in reducers.iter().enumerate() {
        let lt_g = g.leading_term(order)?;
        if lt_g.mon.pos == lt_f.mon.pos && lt_g.mon.exp <= lt_f.mon.exp {
            out.push(i);
        }
    }
    Ok(out)
}

/// One reduction step by the eligible reducer of smallest index, together
/// with the step record. The leading monomial strictly decreases (or the
/// result is zero).
fn single_step(
    f: &ModuleVector,
    reducers: &[ModuleVector],
    order: &TopOrder,
) -> Result<(ModuleVector, ReductionStep)> {
    let eligible = find_reducers(f, reducers, order)?;
    let Some(&idx) = eligible.first() else {
        return Err(Error::NotReducible);
    };
    let g = &reducers[idx];
    let lt_f = f.leading_term(order)?;
    let lt_g = g.leading_term(order)?;
    let a = lt_f.mon.exp - lt_g.mon.exp;
    let b = lt_f.coeff.mul(&lt_g.coeff.frobenius(a as u64).inv()?)?;
    let h = f.sub(&g.compose_left(&LinearizedPoly::monomial(b.clone(), a))?)?;
    debug_assert!(
        h.is_zero()
            || order
                .compare(&h.leading_monomial(order)?, &lt_f.mon)?
                .is_lt(),
        "reduction step must strictly decrease the leading monomial"
    );
    Ok((
        h,
        ReductionStep {
            reducer: idx,
            exp: a,
            coeff: b,
        },
    ))
}

/// One reduction step; errors with `NotReducible` when no reducer applies.
pub fn reduce_step(
    f: &ModuleVector,
    reducers: &[ModuleVector],
    order: &TopOrder,
) -> Result<ModuleVector> {
    Ok(single_step(f, reducers, order)?.0)
}

/// Reduce until minimal with respect to the reducer set, accumulating the
/// quotient certificate. Terminates by well-ordering of the monomial order.
pub fn reduce_full(
    f: &ModuleVector,
    reducers: &[ModuleVector],
    order: &TopOrder,
) -> Result<ReductionResult> {
    let field = f.field().clone();
    let mut quotients = vec![LinearizedPoly::zero(&field); reducers.len()];
    let mut steps = Vec::new();
    let mut remainder = f.clone();
    while !remainder.is_zero() {
        if find_reducers(&remainder, reducers, order)?.is_empty() {
            break;
        }
        let (next, step) = single_step(&remainder, reducers, order)?;
        let mono = LinearizedPoly::monomial(step.coeff.clone(), step.exp);
        quotients[step.reducer] = quotients[step.reducer].add(&mono)?;
        steps.push(step);
        remainder = next;
    }
    let result = ReductionResult {
        remainder,
        quotients,
        steps,
    };
    debug_assert!(result.verifies(f, reducers)?, "certificate identity");
    Ok(result)
}

/// A minimal Gröbner basis: monic elements with pairwise distinct leading
/// positions, sorted by ascending leading position, each carrying its
/// expression over the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<ModuleVector>,
    order: TopOrder,
    certificates: Vec<Vec<LinearizedPoly>>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    pub fn order(&self) -> &TopOrder {
        &self.order
    }

    /// Row i expresses `elements[i]` as a left combination of the original
    /// generators: `elements[i] = Σ_j certificates[i][j] ∘ g_j`.
    pub fn certificates(&self) -> &[Vec<LinearizedPoly>] {
        &self.certificates
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Recompute every certificate identity against the generators.
    pub fn certificates_verify(&self, generators: &[ModuleVector]) -> Result<bool> {
        for (elem, cert) in self.elements.iter().zip(&self.certificates) {
            if cert.len() != generators.len() {
                return Ok(false);
            }
            let mut acc = ModuleVector::zero(elem.field(), elem.l());
            for (q, g) in cert.iter().zip(generators) {
                acc = acc.add(&g.compose_left(q)?)?;
            }
            if acc != *elem {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct WorkItem {
    vec: ModuleVector,
    cert: Vec<LinearizedPoly>,
}

/// Compute a minimal Gröbner basis of the module generated by `generators`.
///
/// Zero generators are discarded; an all-zero input yields the empty basis
/// (the zero module). While two elements share a leading position, the one
/// with the greater leading monomial is reduced one step by the other and
/// discarded if it vanishes. On termination all leading positions are
/// distinct; elements are made monic by composing the inverted leading
/// coefficient on the left and sorted by leading position.
pub fn minimal_groebner_basis(
    generators: &[ModuleVector],
    order: &TopOrder,
) -> Result<GroebnerBasis> {
    for g in generators {
        if g.l() != order.l() {
            return Err(Error::ShapeMismatch {
                expected: order.l(),
                got: g.l(),
            });
        }
        if !g.field().same_field(generators[0].field()) {
            return Err(Error::ParamsMismatch);
        }
    }
    let mut items: Vec<WorkItem> = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let field = g.field();
        let mut cert = vec![LinearizedPoly::zero(field); generators.len()];
        cert[j] = LinearizedPoly::identity(field);
        items.push(WorkItem {
            vec: g.clone(),
            cert,
        });
    }

    'descent: loop {
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let pos_i = items[i].vec.leading_position(order)?;
                let pos_j = items[j].vec.leading_position(order)?;
                if pos_i != pos_j {
                    continue;
                }
                let lm_i = items[i].vec.leading_monomial(order)?;
                let lm_j = items[j].vec.leading_monomial(order)?;
                // the greater one is reduced; on equal monomials the later
                // element is reduced by the earlier
                let (target, other) = match order.compare(&lm_i, &lm_j)? {
                    Ordering::Greater => (i, j),
                    _ => (j, i),
                };
                let reducer_vec = items[other].vec.clone();
                let (h, step) = single_step(
                    &items[target].vec,
                    std::slice::from_ref(&reducer_vec),
                    order,
                )?;
                let mono = LinearizedPoly::monomial(step.coeff, step.exp);
                let mut new_cert = Vec::with_capacity(items[target].cert.len());
                for (t, o) in items[target].cert.iter().zip(&items[other].cert) {
                    new_cert.push(t.sub(&mono.compose(o)?)?);
                }
                if h.is_zero() {
                    items.remove(target);
                } else {
                    items[target] = WorkItem {
                        vec: h,
                        cert: new_cert,
                    };
                }
                continue 'descent;
            }
        }
        break;
    }

    // monic normalization: compose c^{-1} x^[0] on the left
    for item in &mut items {
        let lt = item.vec.leading_term(order)?;
        if lt.coeff.is_one() {
            continue;
        }
        let scale = LinearizedPoly::monomial(lt.coeff.inv()?, 0);
        item.vec = item.vec.compose_left(&scale)?;
        for c in &mut item.cert {
            *c = scale.compose(c)?;
        }
    }

    let mut keyed: Vec<(usize, WorkItem)> = Vec::with_capacity(items.len());
    for item in items {
        keyed.push((item.vec.leading_position(order)?, item));
    }
    keyed.sort_by_key(|(pos, _)| *pos);

    let mut elements = Vec::with_capacity(keyed.len());
    let mut certificates = Vec::with_capacity(keyed.len());
    for (_, item) in keyed {
        elements.push(item.vec);
        certificates.push(item.cert);
    }
    Ok(GroebnerBasis {
        elements,
        order: order.clone(),
        certificates,
    })
}

/// Membership decision with certificate: the reduction quotients when the
/// remainder vanishes, the minimal nonzero remainder otherwise.
#[derive(Clone, Debug)]
pub struct Membership {
    pub is_member: bool,
    pub reduction: ReductionResult,
}

/// Decide membership of f in the module spanned by a minimal Gröbner basis.
pub fn membership(f: &ModuleVector, basis: &GroebnerBasis) -> Result<Membership> {
    if f.l() != basis.order.l() {
        return Err(Error::ShapeMismatch {
            expected: basis.order.l(),
            got: f.l(),
        });
    }
    let reduction = reduce_full(f, &basis.elements, &basis.order)?;
    Ok(Membership {
        is_member: reduction.remainder.is_zero(),
        reduction,
    })
}

/// Predicted leading monomial of `Σ coeffs[i] ∘ basis[i]` over a minimal basis:
/// the maximum of the basis leading monomials shifted by the coefficient
/// q-degrees. Equals the leading monomial of the actual combination.
pub fn plm_predict(coeffs: &[LinearizedPoly], basis: &GroebnerBasis) -> Result<Monomial> {
    if coeffs.len() != basis.elements.len() {
        return Err(Error::ShapeMismatch {
            expected: basis.elements.len(),
            got: coeffs.len(),
        });
    }
    let mut best: Option<Monomial> = None;
    for (a, b) in coeffs.iter().zip(&basis.elements) {
        let Some(deg) = a.qdeg() else {
            continue;
        };
        let candidate = b.leading_monomial(&basis.order)?.shift(deg);
        best = match best {
            None => Some(candidate),
            Some(cur) => {
                if basis.order.compare(&candidate, &cur)? == Ordering::Greater {
                    Some(candidate)
                } else {
                    Some(cur)
                }
            }
        };
    }
    best.ok_or(Error::AllZeroCoefficients)
}
