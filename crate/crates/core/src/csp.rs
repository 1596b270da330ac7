//! Candidate sieving polynomials and exact verification of sieving triples.
//!
//! A triple `(X, C, f)` sieves when, for every `d` dividing the group order,
//! `f` at a primitive `d`-th root of unity equals the number of members of
//! `X` fixed by an element of order `d`. [`verify`] checks this for one
//! element per divisor, which suffices because every element of order `d`
//! generates the same subgroup and so fixes the same sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::actions::{self, CyclicAction};
use crate::bigint_serde;
use crate::error::{invalid, Error, Result};
use crate::indep::IndepFamily;
use crate::qpoly::{binomial, gauss, q_int, IntLaurentPoly};

/// `[n]/[n-rk] · gauss(n-rk, k)`, the candidate for `I_k(C_n^r)` under rotation.
/// Requires `(r+1)k <= n`; `k = 0` gives 1.
pub fn cycle_power_poly(n: usize, r: usize, k: usize) -> Result<IntLaurentPoly> {
    if n == 0 || (r + 1) * k > n {
        return Err(invalid(format!(
            "cycle power polynomial needs n >= 1 and (r+1)k <= n, got n = {n}, r = {r}, k = {k}"
        )));
    }
    if k == 0 {
        return Ok(IntLaurentPoly::one());
    }
    let m = n - r * k;
    (q_int(n as u32) * gauss(m as i64, k as i64)).exact_div(&q_int(m as u32))
}

/// [`cycle_power_poly`] extended by zero where `(r+1)k > n`; no independent
/// `k`-set of `C_n^r` exists there.
pub fn cycle_power_poly_or_zero(n: usize, r: usize, k: usize) -> Result<IntLaurentPoly> {
    if n > 0 && (r + 1) * k > n {
        return Ok(IntLaurentPoly::zero());
    }
    cycle_power_poly(n, r, k)
}

/// `gauss(n - rk + r, k)`, the generating function of `I_k(P_n^r)`.
/// Zero once `k` exceeds the largest independent set.
pub fn path_power_poly(n: usize, r: usize, k: usize) -> IntLaurentPoly {
    gauss(n as i64 + r as i64 - (r * k) as i64, k as i64)
}

/// `Σ_{j=0..k} f_j · gauss(n-j, k-j)` from sieving polynomials `f_j` for
/// `I_j(G)` on an `n`-vertex graph with a free action.
pub fn whisker_poly(base_polys: &[IntLaurentPoly], n: usize, k: usize) -> Result<IntLaurentPoly> {
    if base_polys.len() <= k {
        return Err(invalid(format!(
            "whisker polynomial needs f_0..f_{k}, got {} polynomials",
            base_polys.len()
        )));
    }
    Ok(whisker_terms(base_polys, n, k).into_iter().sum())
}

/// The individual summands `f_j · gauss(n-j, k-j)`, indexed by `j`.
pub fn whisker_terms(base_polys: &[IntLaurentPoly], n: usize, k: usize) -> Vec<IntLaurentPoly> {
    (0..=k)
        .map(|j| &base_polys[j] * &gauss(n as i64 - j as i64, (k - j) as i64))
        .collect()
}

/// Candidate for `I_k(G)` from candidates `a` for `I_k(G \ x)` and `b` for
/// `I_{k-1}(G \ N[x])`, where `x` is a fixed point of the action.
pub fn recursion_combine(a: &IntLaurentPoly, b: &IntLaurentPoly) -> IntLaurentPoly {
    a + b
}

fn gauss_u(n: usize, k: i64) -> IntLaurentPoly {
    gauss(n as i64, k)
}

/// `[2n]/[2n-k] gauss(2n-k, k) + gauss(n, k-1)` for the gear graph `G_n`.
pub fn gear_poly(n: usize, k: usize) -> Result<IntLaurentPoly> {
    if n < 2 {
        return Err(invalid(format!("gear polynomial needs n >= 2, got {n}")));
    }
    let outer = cycle_power_poly_or_zero(2 * n, 1, k)?;
    Ok(recursion_combine(&outer, &gauss_u(n, k as i64 - 1)))
}

/// `gauss(n, k-1) + Σ_j [n]/[n-j] gauss(n-j, j) gauss(n-j, k-j)` for the helm `H_n`.
/// Summands with `2j > n` vanish.
pub fn helm_poly(n: usize, k: usize) -> Result<IntLaurentPoly> {
    if n < 3 {
        return Err(invalid(format!("helm polynomial needs n >= 3, got {n}")));
    }
    let f = cycle_power_series(n, 1, k)?;
    let whiskered = whisker_poly(&f, n, k)?;
    Ok(recursion_combine(&whiskered, &gauss_u(n, k as i64 - 1)))
}

/// `2 gauss(n, k-1) + Σ_j gauss(n, j) gauss(n-j, k-j)` for the book `B_n`.
pub fn book_poly(n: usize, k: usize) -> Result<IntLaurentPoly> {
    if n < 1 {
        return Err(invalid("book polynomial needs n >= 1"));
    }
    let f: Vec<IntLaurentPoly> = (0..=k).map(|j| gauss_u(n, j as i64)).collect();
    let pages = whisker_poly(&f, n, k)?;
    let spine = gauss_u(n, k as i64 - 1).scale_shift(&BigInt::from(2), 0);
    Ok(recursion_combine(&pages, &spine))
}

/// `f_0, ..., f_k` with `f_j` the (zero-extended) cycle-power candidate.
pub fn cycle_power_series(n: usize, r: usize, k: usize) -> Result<Vec<IntLaurentPoly>> {
    (0..=k).map(|j| cycle_power_poly_or_zero(n, r, j)).collect()
}

/// `|I_k(C_n^r)| = n/(n-rk) · C(n-rk, k)`. Requires `(r+1)k <= n`.
pub fn count_closed_form(n: usize, r: usize, k: usize) -> Result<BigInt> {
    if n == 0 || (r + 1) * k > n {
        return Err(invalid(format!(
            "closed-form count needs n >= 1 and (r+1)k <= n, got n = {n}, r = {r}, k = {k}"
        )));
    }
    let m = n - r * k;
    let (q, rem) = (BigInt::from(n) * binomial(m as u64, k as u64)).div_rem(&BigInt::from(m));
    if !rem.is_zero() {
        return Err(Error::NotDivisible);
    }
    Ok(q)
}

/// Number of sets in `I_k(C_n^r)` fixed by a rotation of order `d`:
/// `count_closed_form(n/d, r, k/d)` when `d | k`, else 0. Requires `d | n`.
pub fn fixed_count_closed_form(n: usize, r: usize, k: usize, d: usize) -> Result<BigInt> {
    if d == 0 || n % d != 0 {
        return Err(invalid(format!("order {d} does not divide {n}")));
    }
    if k % d != 0 {
        return Ok(BigInt::zero());
    }
    count_closed_form(n / d, r, k / d)
}

/// Describes parameters satisfying `(r+1)k <= n` but not `(k+1)r <= n`.
pub fn hypothesis_note(n: usize, r: usize, k: usize) -> Option<String> {
    ((r + 1) * k <= n && n < (k + 1) * r).then(|| {
        format!(
            "(r+1)k = {} <= n = {n} < (k+1)r = {}",
            (r + 1) * k,
            (k + 1) * r
        )
    })
}

/// A candidate sieving triple: a family of sets, a cyclic action, a polynomial.
#[derive(Clone, Debug)]
pub struct CspInstance {
    pub family: IndepFamily,
    pub action: CyclicAction,
    pub candidate: IntLaurentPoly,
    pub label: String,
    pub notes: Vec<String>,
}

impl CspInstance {
    /// Checks that the action lives on the family's graph and maps the family
    /// onto itself.
    pub fn new(
        family: IndepFamily,
        action: CyclicAction,
        candidate: IntLaurentPoly,
        label: impl Into<String>,
    ) -> Result<Self> {
        let same_graph = std::sync::Arc::ptr_eq(family.graph(), action.graph())
            || family.graph().same_structure(action.graph());
        if !same_graph {
            return Err(invalid("action and family live on different graphs"));
        }
        if !family.is_invariant_under(action.generator()) {
            return Err(invalid("family is not invariant under the action"));
        }
        Ok(Self {
            family,
            action,
            candidate,
            label: label.into(),
            notes: Vec::new(),
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// One divisor's comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspRow {
    pub d: usize,
    /// The element checked is `generator^element`.
    pub element: usize,
    /// `None` when the candidate is not an integer at primitive `d`-th roots.
    #[serde(with = "bigint_serde::option")]
    pub poly_value: Option<BigInt>,
    pub fixed_count: u64,
    pub quotient_count: Option<u64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspReport {
    pub label: String,
    pub group_order: usize,
    pub rows: Vec<CspRow>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CspReport {
    pub fn row(&self, d: usize) -> Option<&CspRow> {
        self.rows.iter().find(|r| r.d == d)
    }
}

/// Checks a triple at every divisor of the group order.
///
/// Fixed sets come from orbit composition. When the family is all of
/// `I_k(G)` and the chosen element generates a free subgroup, the quotient
/// count is computed as a third route and must agree too.
pub fn verify(instance: &CspInstance) -> CspReport {
    let action = &instance.action;
    let family = &instance.family;
    let graph = action.graph();
    let k = family.k();
    let rows: Vec<CspRow> = action
        .divisor_representatives()
        .into_iter()
        .map(|(d, t)| {
            let element = action.element(t as i64);
            let poly_value = instance.candidate.eval_at_root(d as u32).ok();
            let fixed = actions::fixed_independent_sets(graph, &element, k)
                .expect("group elements are automorphisms");
            let fixed_count = if family.is_complete() {
                fixed.len()
            } else {
                fixed.iter().filter(|s| family.contains(s)).count()
            } as u64;
            let quotient_count = (family.is_complete() && element.acts_freely()).then(|| {
                actions::fixed_count_via_quotient(action, t as i64, k)
                    .expect("free subgroup checked above")
            });
            let pass = poly_value.as_ref().and_then(ToPrimitive::to_u64) == Some(fixed_count)
                && quotient_count.map_or(true, |q| q == fixed_count);
            CspRow {
                d,
                element: t,
                poly_value,
                fixed_count,
                quotient_count,
                pass,
            }
        })
        .collect();
    CspReport {
        label: instance.label.clone(),
        group_order: action.order(),
        pass: rows.iter().all(|r| r.pass),
        rows,
        notes: instance.notes.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{gear_action, rotation_action, whisker_extend};
    use crate::graphs::{cycle_power, gear, path_power, whisker};
    use crate::indep::enumerate;
    use std::sync::Arc;

    fn p(c: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_i64_coeffs(0, c)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cycle_power_poly_examples() {
        let f = cycle_power_poly(12, 2, 3).unwrap();
        // residue mod q^12 - 1 is 3[12] + 1 + q^3 + q^6 + q^9
        let expected = q_int(12).scale_shift(&big(3), 0) + p(&[1, 0, 0, 1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(f.fold_mod(12), expected);
        assert_eq!(f.coefficient_sum(), big(40));
        for n in 1..10 {
            for k in 0..=n {
                assert_eq!(
                    cycle_power_poly(n, 0, k).unwrap(),
                    gauss(n as i64, k as i64)
                );
            }
        }
        assert!(cycle_power_poly(6, 2, 3).is_err());
        assert_eq!(cycle_power_poly(5, 1, 0).unwrap(), IntLaurentPoly::one());
    }

    #[test]
    fn path_power_poly_examples() {
        assert_eq!(path_power_poly(5, 2, 2), p(&[1, 1, 1]));
        assert_eq!(path_power_poly(7, 3, 0), IntLaurentPoly::one());
        let f = path_power_poly(8, 1, 3);
        assert_eq!(f, gauss(6, 3));
        assert_eq!(
            f.coefficient_sum(),
            big(enumerate(&Arc::new(path_power(8, 1)), 3).len() as i64)
        );
        assert!(path_power_poly(5, 2, 3).is_zero());
        assert_eq!(path_power_poly(0, 1, 0), IntLaurentPoly::one());
        assert!(path_power_poly(0, 1, 1).is_zero());
    }

    #[test]
    fn whisker_poly_examples() {
        let g = |n, k| gauss(n, k);
        let over = |b: u32, f: IntLaurentPoly| (q_int(6) * f).exact_div(&q_int(b)).unwrap();
        let expected =
            g(6, 3) + over(5, g(5, 1) * g(5, 2)) + over(4, g(4, 2) * g(4, 1)) + over(3, g(3, 3));
        let f = whisker_poly(&cycle_power_series(6, 1, 3).unwrap(), 6, 3).unwrap();
        assert_eq!(f, expected);
        assert_eq!(f.eval_at_root(3).unwrap(), big(4));
        assert_eq!(f.eval_at_root(2).unwrap(), big(0));
        assert_eq!(f.eval_at_root(6).unwrap(), big(0));
        assert_eq!(
            whisker_poly(&[IntLaurentPoly::one()], 5, 0).unwrap(),
            IntLaurentPoly::one()
        );
        assert!(whisker_poly(&[IntLaurentPoly::one()], 5, 2).is_err());
    }

    #[test]
    fn recursion_examples() {
        let a = cycle_power_poly(6, 1, 3).unwrap();
        let b = gauss(3, 2);
        assert_eq!(recursion_combine(&a, &b), p(&[2, 1, 1, 1]));
        assert_eq!(gear_poly(3, 3).unwrap(), p(&[2, 1, 1, 1]));
        assert_eq!(recursion_combine(&a, &IntLaurentPoly::zero()), a);
    }

    #[test]
    fn family_poly_examples() {
        let gear3 = gear_poly(3, 3).unwrap();
        assert_eq!(gear3.eval_at_root(3).unwrap(), big(2));
        assert_eq!(gear3.eval_at_root(1).unwrap(), big(5));

        let helm6 = helm_poly(6, 3).unwrap();
        // the half-turn fixes the center plus one of three pendant pairs
        assert_eq!(helm6.eval_at_root(2).unwrap(), big(3));
        assert_eq!(helm6.eval_at_root(3).unwrap(), big(4));
        assert_eq!(helm6.eval_at_root(6).unwrap(), big(0));
        // term-by-term expansion
        let over = |b: u32, f: IntLaurentPoly| (q_int(6) * f).exact_div(&q_int(b)).unwrap();
        let explicit = gauss(6, 2)
            + gauss(6, 3)
            + over(5, gauss(5, 1) * gauss(5, 2))
            + over(4, gauss(4, 2) * gauss(4, 1))
            + over(3, gauss(3, 3));
        assert_eq!(helm6, explicit);

        let book4 = book_poly(4, 3).unwrap();
        assert_eq!(book4.eval_at_root(2).unwrap(), big(4));
        assert_eq!(book4.eval_at_root(4).unwrap(), big(0));
        let explicit = gauss(4, 2).scale_shift(&big(2), 0)
            + gauss(4, 0) * gauss(4, 3)
            + gauss(4, 1) * gauss(3, 2)
            + gauss(4, 2) * gauss(2, 1)
            + gauss(4, 3);
        assert_eq!(book4, explicit);

        assert!(gear_poly(1, 1).is_err());
        assert!(helm_poly(2, 1).is_err());
        assert!(book_poly(0, 1).is_err());
    }

    #[test]
    fn count_closed_form_examples() {
        assert_eq!(count_closed_form(12, 2, 3).unwrap(), big(40));
        assert_eq!(count_closed_form(6, 1, 2).unwrap(), big(9));
        assert_eq!(enumerate(&Arc::new(cycle_power(6, 1).unwrap()), 2).len(), 9);
        for n in 1..12 {
            for k in 0..=n {
                assert_eq!(
                    count_closed_form(n, 0, k).unwrap(),
                    binomial(n as u64, k as u64)
                );
            }
        }
        assert!(count_closed_form(6, 2, 3).is_err());
    }

    #[test]
    fn hypothesis_boundary() {
        assert!(hypothesis_note(8, 3, 2).is_some());
        assert!(hypothesis_note(12, 2, 3).is_none());
    }

    #[test]
    fn verify_examples() {
        let g = Arc::new(cycle_power(12, 2).unwrap());
        let action = rotation_action(12, g.clone()).unwrap();
        let fam = enumerate(&g, 3);
        let inst = CspInstance::new(
            fam.clone(),
            action.clone(),
            cycle_power_poly(12, 2, 3).unwrap(),
            "C_12^2 k=3",
        )
        .unwrap();
        let report = verify(&inst);
        assert!(report.pass, "{report:?}");
        assert_eq!(report.rows.len(), 6);
        let row3 = report.row(3).unwrap();
        assert_eq!(row3.poly_value, Some(big(4)));
        assert_eq!(row3.fixed_count, 4);
        assert_eq!(row3.quotient_count, Some(4));
        assert_eq!(row3.element, 4);

        let wrong = CspInstance::new(fam, action, gauss(12, 3), "wrong").unwrap();
        let report = verify(&wrong);
        assert!(!report.pass);
        assert!(report.rows.iter().any(|r| !r.pass));

        let c6 = Arc::new(cycle_power(6, 1).unwrap());
        let w = Arc::new(whisker(&c6));
        let wa = whisker_extend(&rotation_action(6, c6).unwrap(), w.clone()).unwrap();
        let f = whisker_poly(&cycle_power_series(6, 1, 3).unwrap(), 6, 3).unwrap();
        let report = verify(&CspInstance::new(enumerate(&w, 3), wa, f, "w(C_6)").unwrap());
        assert!(report.pass);
        assert_eq!(report.row(2).unwrap().poly_value, Some(big(0)));
        assert_eq!(report.row(6).unwrap().poly_value, Some(big(0)));
        assert_eq!(report.row(3).unwrap().poly_value, Some(big(4)));
    }

    #[test]
    fn verify_records_non_integer_values() {
        let g = Arc::new(gear(3).unwrap());
        let a = gear_action(3, g.clone()).unwrap();
        // q alone is not an integer at a primitive cube root
        let inst =
            CspInstance::new(enumerate(&g, 3), a, IntLaurentPoly::monomial(5, 1), "bad").unwrap();
        let report = verify(&inst);
        assert!(!report.pass);
        assert_eq!(report.row(3).unwrap().poly_value, None);
        assert!(report.row(1).unwrap().pass);
        // the hub is fixed, so only the identity has a quotient count
        assert_eq!(report.row(3).unwrap().quotient_count, None);
        assert_eq!(report.row(1).unwrap().quotient_count, Some(5));
    }

    #[test]
    fn instance_checks() {
        let g = Arc::new(cycle_power(6, 1).unwrap());
        let other = Arc::new(cycle_power(7, 1).unwrap());
        let a = rotation_action(7, other).unwrap();
        assert!(CspInstance::new(enumerate(&g, 2), a, IntLaurentPoly::one(), "x").is_err());
        let a6 = rotation_action(6, g.clone()).unwrap();
        let not_invariant = enumerate(&g, 2).subfamily(|s| s.contains(0));
        assert!(CspInstance::new(not_invariant, a6, IntLaurentPoly::one(), "x").is_err());
    }

    #[test]
    fn report_json_shape() {
        let report = CspReport {
            label: "x".into(),
            group_order: 2,
            rows: vec![CspRow {
                d: 2,
                element: 1,
                poly_value: None,
                fixed_count: 0,
                quotient_count: Some(0),
                pass: false,
            }],
            pass: false,
            notes: vec![],
        };
        let s = serde_json::to_string(&report).unwrap();
        assert_eq!(
            s,
            r#"{"label":"x","group_order":2,"rows":[{"d":2,"element":1,"poly_value":null,"fixed_count":0,"quotient_count":0,"pass":false}],"pass":false}"#
        );
        assert_eq!(serde_json::from_str::<CspReport>(&s).unwrap(), report);
    }
}
