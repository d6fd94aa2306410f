//! Independent brute-force verifier: enumerates the degree-D truncation of a
//! module exhaustively from its generators and checks Gröbner-basis claims
//! against it.
//!
//! The enumeration is built from ff/linpoly/modvec arithmetic only, never
//! from the reduction engine. Claims are checked on the truncation
//! { Σ a_i ∘ g_i : qdeg a_i ≤ D or a_i = 0 }; a basis element whose
//! certificate degrees exceed D is reported as unverifiable at D rather than
//! as a failure.

use std::collections::{BTreeMap, HashSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::groebner::{membership, GroebnerBasis};
use crate::linpoly::LinearizedPoly;
use crate::modvec::{ModuleVector, Monomial, TopOrder};

/// Guard on the number of coefficient tuples the enumeration may visit.
const MAX_COMBINATIONS: u128 = 1 << 24;

/// Fixed seed for the random non-element samples; the verifier is
/// deterministic for a given instance.
const SAMPLE_SEED: u64 = 0x0051_ba5e_d0c5;

/// The degree-D truncation of the module generated by `generators`.
#[derive(Clone, Debug)]
pub struct EnumeratedModule {
    field: Field,
    l: usize,
    degree_bound: usize,
    generators: Vec<ModuleVector>,
    elements: Vec<ModuleVector>,
    index: HashSet<ModuleVector>,
}

/// Exhaustively enumerate { Σ a_i ∘ g_i : qdeg a_i ≤ degree_bound or a_i = 0 },
/// deduplicated. The zero vector is always present (all a_i = 0).
pub fn enumerate_combinations(
    field: &Field,
    l: usize,
    generators: &[ModuleVector],
    degree_bound: usize,
) -> Result<EnumeratedModule> {
    for g in generators {
        if g.l() != l {
            return Err(Error::ShapeMismatch {
                expected: l,
                got: g.l(),
            });
        }
        if !g.field().same_field(field) {
            return Err(Error::ParamsMismatch);
        }
    }
    let q = field.order();
    let digits = (degree_bound + 1) * generators.len();
    let total = q
        .checked_pow(digits as u32)
        .filter(|&t| t <= MAX_COMBINATIONS)
        .ok_or_else(|| Error::TooLarge(format!("|F|^((D+1)·|G|) = {q}^{digits} exceeds 2^24")))?;

    let mut index = HashSet::new();
    let mut elements = Vec::new();
    for idx in 0..total {
        let mut k = idx;
        let mut combo = ModuleVector::zero(field, l);
        for g in generators {
            let mut coeffs = Vec::with_capacity(degree_bound + 1);
            for _ in 0..=degree_bound {
                coeffs.push(field.element_from_index(k % q));
                k /= q;
            }
            let a = LinearizedPoly::from_coeffs(field, coeffs)?;
            if a.is_zero() {
                continue;
            }
            combo = combo.add(&g.compose_left(&a)?)?;
        }
        if index.insert(combo.clone()) {
            elements.push(combo);
        }
    }
    elements.sort_by_key(|v| v.to_string());
    Ok(EnumeratedModule {
        field: field.clone(),
        l,
        degree_bound,
        generators: generators.to_vec(),
        elements,
        index,
    })
}

impl EnumeratedModule {
    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    pub fn generators(&self) -> &[ModuleVector] {
        &self.generators
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.index.contains(v)
    }

    /// For every position occupied by a nonzero element, the minimal leading
    /// monomial among elements leading at that position.
    pub fn min_lm_per_position(&self, order: &TopOrder) -> Result<BTreeMap<usize, Monomial>> {
        let mut out: BTreeMap<usize, Monomial> = BTreeMap::new();
        for v in &self.elements {
            if v.is_zero() {
                continue;
            }
            let lm = v.leading_monomial(order)?;
            match out.get(&lm.pos) {
                Some(cur) if order.compare(&lm, cur)?.is_ge() => {}
                _ => {
                    out.insert(lm.pos, lm);
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of the brute-force verification.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    /// Every nonzero enumerated element's leading term is divisible by the
    /// basis leading term at the same position.
    pub lt_division_ok: bool,
    /// Every basis element with certificate degrees ≤ D appears in the
    /// enumerated set.
    pub basis_containment_ok: bool,
    /// Membership agrees with set inclusion on all enumerated elements and
    /// on the sampled non-elements.
    pub membership_agreement_ok: bool,
    /// Basis indices whose certificate degrees exceed D (not failures).
    pub unverifiable: Vec<usize>,
    pub counterexample: Option<String>,
    pub elements_checked: usize,
    pub non_elements_checked: usize,
    /// Sampled vectors proven in the module beyond the truncation bound
    /// (possible only when the sampling bound is not sound; not failures).
    pub truncation_gaps: usize,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.lt_division_ok && self.basis_containment_ok && self.membership_agreement_ok
    }
}

/// Check a claimed minimal Gröbner basis for `generators` against the
/// exhaustive degree-D truncation. `order` must be the basis's order.
pub fn verify_groebner(
    basis: &GroebnerBasis,
    generators: &[ModuleVector],
    degree_bound: usize,
    order: &TopOrder,
) -> Result<VerifyReport> {
    if basis.order() != order {
        return Err(Error::ParamsMismatch);
    }
    let mut report = VerifyReport {
        lt_division_ok: true,
        basis_containment_ok: true,
        membership_agreement_ok: true,
        unverifiable: Vec::new(),
        counterexample: None,
        elements_checked: 0,
        non_elements_checked: 0,
        truncation_gaps: 0,
    };
    let Some(field) = generators
        .first()
        .map(|g| g.field().clone())
        .or_else(|| basis.elements().first().map(|b| b.field().clone()))
    else {
        return Ok(report); // nothing to verify: the zero module with no data
    };
    let l = order.l();
    let enumerated = enumerate_combinations(&field, l, generators, degree_bound)?;

    // leading monomials of the basis, per position
    let mut basis_lm: BTreeMap<usize, Monomial> = BTreeMap::new();
    for b in basis.elements() {
        let lm = b.leading_monomial(order)?;
        basis_lm.insert(lm.pos, lm);
    }

    // (a) every nonzero element's leading term is divisible at its position
    for v in enumerated.elements() {
        if v.is_zero() {
            continue;
        }
        let lm = v.leading_monomial(order)?;
        let divisible = basis_lm.get(&lm.pos).is_some_and(|blm| blm.exp <= lm.exp);
        if !divisible {
            report.lt_division_ok = false;
            report.counterexample = Some(format!(
                "enumerated element {v} has leading monomial {lm} not divisible by any basis leading term"
            ));
            break;
        }
    }

    // (b) basis elements with certificate degrees within the bound are in the set
    for (i, b) in basis.elements().iter().enumerate() {
        let cert_deg = basis.certificates()[i]
            .iter()
            .filter_map(|c| c.qdeg())
            .max()
            .unwrap_or(0);
        if cert_deg > degree_bound {
            report.unverifiable.push(i);
            continue;
        }
        if !enumerated.contains(b) {
            report.basis_containment_ok = false;
            if report.counterexample.is_none() {
                report.counterexample = Some(format!(
                    "basis element {b} (certificate degree {cert_deg}) is missing from the enumeration"
                ));
            }
        }
    }

    // (c) membership agrees with set inclusion
    for v in enumerated.elements() {
        report.elements_checked += 1;
        let m = membership(v, basis)?;
        if !m.is_member {
            report.membership_agreement_ok = false;
            if report.counterexample.is_none() {
                report.counterexample =
                    Some(format!("enumerated element {v} was rejected by membership"));
            }
            break;
        }
    }

    // Sampling bound for random non-elements. A membership certificate with
    // quotient degrees bounded by exp(lm(f)) rewrites over the generators
    // with degrees at most exp(lm(f)) + slack, where slack is the worst
    // certificate excess over a basis leading exponent. Below that bound,
    // "in the module" and "in the truncation" coincide, so a membership
    // acceptance of a non-element is a genuine failure.
    let mut slack: Option<i64> = None;
    for (i, b) in basis.elements().iter().enumerate() {
        let lm_exp = b.leading_monomial(order)?.exp as i64;
        for c in &basis.certificates()[i] {
            if let Some(d) = c.qdeg() {
                let s = d as i64 - lm_exp;
                slack = Some(slack.map_or(s, |cur| cur.max(s)));
            }
        }
    }
    let (cap, sound) = match slack {
        None => (degree_bound, true), // empty basis: the zero module
        Some(s) => {
            let e = degree_bound as i64 - s;
            if e >= 0 {
                (e.min(degree_bound as i64 + 2) as usize, true)
            } else {
                (degree_bound, false)
            }
        }
    };

    let mut rng = StdRng::seed_from_u64(SAMPLE_SEED);
    let q = field.order();
    let mut attempts = 0usize;
    while report.non_elements_checked < 100 && attempts < 10_000 {
        attempts += 1;
        let mut entries = Vec::with_capacity(l);
        for _ in 0..l {
            let mut coeffs = Vec::with_capacity(cap + 1);
            for _ in 0..=cap {
                let pick = rng.random_range(0..q);
                coeffs.push(field.element_from_index(pick));
            }
            entries.push(LinearizedPoly::from_coeffs(&field, coeffs)?);
        }
        let v = ModuleVector::new(&field, entries)?;
        if enumerated.contains(&v) {
            continue;
        }
        report.non_elements_checked += 1;
        let m = membership(&v, basis)?;
        if m.is_member {
            if !sound && m.reduction.verifies(&v, basis.elements())? {
                // genuinely in the module, just beyond the truncation
                report.truncation_gaps += 1;
                continue;
            }
            report.membership_agreement_ok = false;
            if report.counterexample.is_none() {
                report.counterexample = Some(format!(
                    "sampled non-element {v} was accepted by membership"
                ));
            }
            break;
        }
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::minimal_groebner_basis;
    use crate::modvec::TopOrder;

    fn gf2() -> Field {
        Field::new(2, 1, 1, None).unwrap()
    }

    fn v2(field: &Field, a: &[u64], b: &[u64]) -> ModuleVector {
        let mk = |row: &[u64]| {
            LinearizedPoly::from_coeffs(field, row.iter().map(|&c| field.element(&[c])).collect())
                .unwrap()
        };
        ModuleVector::new(field, vec![mk(a), mk(b)]).unwrap()
    }

    #[test]
    fn enumerate_counts() {
        let f = gf2();
        let g1 = v2(&f, &[1], &[]);
        let g2 = v2(&f, &[], &[1]);
        let e = enumerate_combinations(&f, 2, &[g1, g2], 0).unwrap();
        assert_eq!(e.len(), 4); // two 0/1 coefficient choices per generator

        let empty = enumerate_combinations(&f, 2, &[], 3).unwrap();
        assert_eq!(empty.elements(), &[ModuleVector::zero(&f, 2)]);

        let zero_gen = enumerate_combinations(&f, 2, &[ModuleVector::zero(&f, 2)], 1).unwrap();
        assert_eq!(zero_gen.len(), 1);
        assert!(zero_gen.contains(&ModuleVector::zero(&f, 2)));
    }

    #[test]
    fn enumerate_guard() {
        let f = gf2();
        let g = v2(&f, &[1], &[]);
        assert!(matches!(
            enumerate_combinations(&f, 2, &[g], 24),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn enumeration_is_closed_under_addition_and_shifts() {
        let f = gf2();
        let g1 = v2(&f, &[0, 1], &[1]);
        let g2 = v2(&f, &[1, 1], &[0, 1]);
        let d = 2usize;
        let at_d = enumerate_combinations(&f, 2, &[g1.clone(), g2.clone()], d).unwrap();
        for a in at_d.elements() {
            for b in at_d.elements() {
                assert!(at_d.contains(&a.add(b).unwrap()));
            }
        }
        // x^{[j]} ∘ (truncation at D-j) lands inside the truncation at D
        for j in 1..=d {
            let smaller = enumerate_combinations(&f, 2, &[g1.clone(), g2.clone()], d - j).unwrap();
            let xj = LinearizedPoly::x_power(&f, j);
            for v in smaller.elements() {
                assert!(at_d.contains(&v.compose_left(&xj).unwrap()));
            }
        }
    }

    #[test]
    fn min_lm_examples() {
        let f = gf2();
        let o = TopOrder::default_for(2);
        let g = v2(&f, &[0, 1], &[]);
        let e = enumerate_combinations(&f, 2, &[g], 2).unwrap();
        let mins = e.min_lm_per_position(&o).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[&1], Monomial::new(1, 1));

        let empty = enumerate_combinations(&f, 2, &[], 2).unwrap();
        assert!(empty.min_lm_per_position(&o).unwrap().is_empty());

        let o1 = TopOrder::default_for(1);
        let full = ModuleVector::new(&f, vec![LinearizedPoly::identity(&f)]).unwrap();
        let e = enumerate_combinations(&f, 1, &[full], 2).unwrap();
        let mins = e.min_lm_per_position(&o1).unwrap();
        assert_eq!(mins[&1], Monomial::new(1, 0));
    }

    #[test]
    fn verify_passes_on_minimized_bases() {
        let f = gf2();
        let o = TopOrder::default_for(2);
        let sets: Vec<Vec<ModuleVector>> = vec![
            vec![v2(&f, &[0, 1], &[1]), v2(&f, &[1], &[0, 1])],
            vec![v2(&f, &[0, 1], &[]), v2(&f, &[1, 1], &[])],
            vec![ModuleVector::zero(&f, 2)],
        ];
        for gens in sets {
            let basis = minimal_groebner_basis(&gens, &o).unwrap();
            let report = verify_groebner(&basis, &gens, 2, &o).unwrap();
            assert!(report.pass(), "report: {report:?}");
            assert!(report.counterexample.is_none());
        }
    }

    #[test]
    fn verify_passes_at_degree_zero() {
        let f = gf2();
        let o = TopOrder::default_for(2);
        let gens = vec![v2(&f, &[1], &[])];
        let basis = minimal_groebner_basis(&gens, &o).unwrap();
        let report = verify_groebner(&basis, &gens, 0, &o).unwrap();
        assert!(report.pass(), "report: {report:?}");
    }

    #[test]
    fn verify_agrees_on_randomized_wider_instances() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let fields = [gf2(), Field::new(2, 1, 2, None).unwrap()];
        let o = TopOrder::default_for(2);
        let mut rng = StdRng::seed_from_u64(42);
        for t in 0..25 {
            let field = &fields[t % 2];
            // keep the enumeration small: 2^(3·3) resp. 4^(3·2) tuples
            let max_gens = if field.order() == 2 { 3 } else { 2 };
            let count = rng.random_range(1..=max_gens);
            let gens: Vec<ModuleVector> = (0..count)
                .map(|_| {
                    let entries = (0..2)
                        .map(|_| {
                            let len = rng.random_range(0..=3);
                            let coeffs = (0..len)
                                .map(|_| {
                                    field.element_from_index(rng.random_range(0..field.order()))
                                })
                                .collect();
                            LinearizedPoly::from_coeffs(field, coeffs).unwrap()
                        })
                        .collect();
                    ModuleVector::new(field, entries).unwrap()
                })
                .collect();
            let basis = minimal_groebner_basis(&gens, &o).unwrap();
            let report = verify_groebner(&basis, &gens, 2, &o).unwrap();
            assert!(report.pass(), "instance {t}: {report:?}");
        }
    }

    #[test]
    fn verify_fails_when_a_position_is_missing() {
        let f = gf2();
        let o = TopOrder::default_for(2);
        let g1 = v2(&f, &[0, 1], &[]);
        let g2 = v2(&f, &[], &[0, 1]);
        // basis computed from g1 alone cannot cover position 2
        let partial = minimal_groebner_basis(std::slice::from_ref(&g1), &o).unwrap();
        let report = verify_groebner(&partial, &[g1, g2], 2, &o).unwrap();
        assert!(!report.pass());
        assert!(!report.lt_division_ok);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn gb_example_span_coincides_with_generators() {
        // G = {[x^[1], 0], [x^[1]+x^[0], 0]} minimizes to B = {[x^[0], 0]}.
        // Truncated spans coincide: combinations of B at degree D rewrite
        // over G at degree D, and combinations of G at degree D rewrite over
        // B at degree D+1 (certificate degrees are at most 1).
        let f = gf2();
        let o = TopOrder::default_for(2);
        let gens = vec![v2(&f, &[0, 1], &[]), v2(&f, &[1, 1], &[])];
        let basis = minimal_groebner_basis(&gens, &o).unwrap();
        assert_eq!(basis.elements(), &[v2(&f, &[1], &[])]);
        let from_gens = enumerate_combinations(&f, 2, &gens, 2).unwrap();
        let from_basis = enumerate_combinations(&f, 2, basis.elements(), 2).unwrap();
        let from_basis_wide = enumerate_combinations(&f, 2, basis.elements(), 3).unwrap();
        for v in from_basis.elements() {
            assert!(from_gens.contains(v));
        }
        for v in from_gens.elements() {
            assert!(from_basis_wide.contains(v));
        }
    }

    #[test]
    fn min_lm_matches_basis_leading_monomials() {
        let f = gf2();
        let o = TopOrder::default_for(2);
        let gens = vec![v2(&f, &[0, 1], &[1, 1]), v2(&f, &[1], &[0, 1])];
        let basis = minimal_groebner_basis(&gens, &o).unwrap();
        let e = enumerate_combinations(&f, 2, &gens, 2).unwrap();
        let mins = e.min_lm_per_position(&o).unwrap();
        let basis_lms: BTreeMap<usize, Monomial> = basis
            .elements()
            .iter()
            .map(|b| {
                let lm = b.leading_monomial(&o).unwrap();
                (lm.pos, lm)
            })
            .collect();
        assert_eq!(mins, basis_lms);
    }
}
