//! Exact verification of tame words and construction plans.

use std::fmt;

use crate::construct::{
    build_step2, theorem_threshold, ConstructError, ConstructionPlan, Parameters, TargetTriple,
    UCoefficients,
};
use crate::poly::{binomial, Degree, Monomial, Polynomial, Var};
use crate::rational::Rational;
use crate::word::{
    apply_word, expand_word, invert_word, jacobian_det, maps_equal_probabilistic, multidegree,
    Multidegree, PolyMap, TameWord,
};

/// Outcome of a check that only some plans carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Pass,
    Fail,
    NotApplicable,
}

impl Check {
    fn from_bool(ok: bool) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Check::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Multidegree of the expanded word, if every coordinate is nonzero.
    pub multidegree: Option<Multidegree>,
    pub expected: Option<Multidegree>,
    pub multidegree_ok: bool,
    /// The Jacobian determinant when it is a constant.
    pub jacobian_constant: Option<Rational>,
    pub jacobian_ok: bool,
    pub inverse_identity_ok: bool,
    pub cancellation_ok: Check,
    pub leading_term_ok: Check,
    pub details: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.multidegree_ok
            && self.jacobian_ok
            && self.inverse_identity_ok
            && !self.cancellation_ok.is_fail()
            && !self.leading_term_ok.is_fail()
    }
}

/// Checks an arbitrary word: multidegree (against `expected` when given),
/// constant nonzero Jacobian, and that the word followed by its inverse
/// expands to the identity. Returns the expanded map when expansion succeeds.
pub fn verify_word(
    word: &TameWord,
    expected: Option<Multidegree>,
) -> (VerificationReport, Option<PolyMap>) {
    let mut report = VerificationReport {
        multidegree: None,
        expected,
        multidegree_ok: false,
        jacobian_constant: None,
        jacobian_ok: false,
        inverse_identity_ok: false,
        cancellation_ok: Check::NotApplicable,
        leading_term_ok: Check::NotApplicable,
        details: Vec::new(),
    };
    let map = match expand_word(word) {
        Ok(map) => map,
        Err(err) => {
            report.details.push(format!("word does not expand: {err}"));
            return (report, None);
        }
    };

    match multidegree(&map) {
        Ok(md) => {
            report.multidegree = Some(md);
            report.multidegree_ok = expected.map_or(true, |want| want == md);
            match expected {
                Some(want) if want != md => report
                    .details
                    .push(format!("multidegree {md} differs from expected {want}")),
                _ => report.details.push(format!("multidegree {md}")),
            }
        }
        Err(err) => report.details.push(format!("no multidegree: {err}")),
    }

    let jac = jacobian_det(&map);
    report.jacobian_constant = jac.constant_value();
    let want_det = word.linear_det_product();
    report.jacobian_ok = match &report.jacobian_constant {
        Some(c) if c.is_zero() => {
            report.details.push("Jacobian determinant is 0".into());
            false
        }
        Some(c) if *c != want_det => {
            report.details.push(format!(
                "Jacobian determinant {c} differs from product of linear determinants {want_det}"
            ));
            false
        }
        Some(c) => {
            report.details.push(format!("Jacobian determinant is the constant {c}"));
            true
        }
        None => {
            report
                .details
                .push(format!("Jacobian determinant is not constant (degree {})", jac.total_degree()));
            false
        }
    };

    report.inverse_identity_ok = match invert_word(word) {
        Ok(inv) => match apply_word(map.clone(), &inv) {
            Ok(round) => {
                // cheap rejection first; exact term comparison decides
                let ok = maps_equal_probabilistic(&round, &PolyMap::identity(), 2, 0x5eed)
                    && round.is_identity();
                if !ok {
                    report
                        .details
                        .push("word followed by its inverse is not the identity".into());
                }
                ok
            }
            Err(err) => {
                report.details.push(format!("inverse does not expand: {err}"));
                false
            }
        },
        Err(err) => {
            report.details.push(format!("word is not invertible: {err}"));
            false
        }
    };

    (report, Some(map))
}

/// Verifies a construction plan against the sorted target triple. On top of
/// [`verify_word`], checks the predicted multidegree and the case-specific
/// claims: vanishing of the `x^i z^(e - i a)` coefficients for the cancelling
/// construction and the leading coefficient `e/a` for the leading-term one.
pub fn verify_plan(plan: &ConstructionPlan, target: &TargetTriple) -> VerificationReport {
    verify_plan_with_map(plan, target).0
}

/// [`verify_plan`] also returning the expanded map of the sorted word.
pub fn verify_plan_with_map(
    plan: &ConstructionPlan,
    target: &TargetTriple,
) -> (VerificationReport, Option<PolyMap>) {
    let want = target.sorted();
    let (mut report, map) = verify_word(&plan.word, Some(want));
    if plan.predicted != want {
        report.multidegree_ok = false;
        report
            .details
            .push(format!("predicted multidegree {} differs from target {want}", plan.predicted));
    }
    let Some(map) = map else {
        return (report, None);
    };
    let (a, b, c) = (target.a, target.b, target.c);
    match &plan.params {
        Parameters::Step2 { e, u, .. } => {
            let third = &map.coords[2];
            let mut in_map = true;
            for i in 1..=(b / a) {
                let coeff = third.coeff(&Monomial::new(i, 0, e - i * a));
                if !coeff.is_zero() {
                    in_map = false;
                    report.details.push(format!(
                        "coefficient of x^{i}*z^{} is {coeff}, expected 0",
                        e - i * a
                    ));
                }
            }
            let independent = match cancellation_check(a, b, u) {
                Ok(ok) => ok,
                Err(err) => {
                    report.details.push(format!("cancellation check failed: {err}"));
                    false
                }
            };
            report.cancellation_ok = Check::from_bool(in_map && independent);
            if in_map && independent {
                report
                    .details
                    .push(format!("x^i*z^({e}-{a}i) coefficients vanish for 1 <= i <= {}", b / a));
            }
        }
        Parameters::Step1 { e, k, m } if *m > 0 => {
            let ok = step1_leading_term(a, b, *e, *k, *m, c, &map, &mut report.details);
            report.leading_term_ok = Check::from_bool(ok);
        }
        _ => {}
    }
    (report, Some(map))
}

/// With `v = (x + z^a + z^m)^(e/a) - (y + z^b)^(e/b)`, the top monomial of
/// `v` is `(e/a) z^(m + e - a)`, and so the third coordinate leads with
/// `(e/a) z^c`.
#[allow(clippy::too_many_arguments)]
fn step1_leading_term(
    a: u32,
    b: u32,
    e: u32,
    k: u32,
    m: u32,
    c: u32,
    map: &PolyMap,
    details: &mut Vec<String>,
) -> bool {
    let z = Polynomial::var(Var::Z);
    let sx = &(&Polynomial::var(Var::X) + &z.pow(a)) + &z.pow(m);
    let sy = &Polynomial::var(Var::Y) + &z.pow(b);
    let v = &sx.pow(e / a) - &sy.pow(e / b);
    let top = m + e - a;
    let ea = Rational::from((e / a) as i64);
    let mut ok = true;
    if v.total_degree() != Degree::Finite(top) {
        details.push(format!("deg v is {}, expected {top}", v.total_degree()));
        ok = false;
    }
    let lead = v.coeff(&Monomial::new(0, 0, top));
    if lead != ea {
        details.push(format!("coefficient of z^{top} in v is {lead}, expected {ea}"));
        ok = false;
    }
    if k * a + top != c {
        details.push(format!("k*a + m + e - a = {} differs from c = {c}", k * a + top));
        ok = false;
    }
    let third = map.coords[2].coeff(&Monomial::new(0, 0, c));
    if third != ea {
        details.push(format!("coefficient of z^{c} in F3 is {third}, expected {ea}"));
        ok = false;
    }
    if ok {
        details.push(format!("leading term of v is {ea}*z^{top}"));
    }
    ok
}

/// Expands `v1 - v2` in full and checks that the coefficient of
/// `x^i z^(e - i a)` vanishes for every `1 <= i <= ⌊b/a⌋`, where
///
/// * `v1 = Σ_{i=1}^{e/a} C(e/a, i) x^i z^(e - i a)`
/// * `v2 = Σ_{j=1}^{e/b} C(e/b, j) (y + u(x, z))^j z^(e - j b)`
///
/// The `z^m` shift in the second coordinate only produces monomials with a
/// lower `z` exponent, so it is left out here.
pub fn cancellation_check(a: u32, b: u32, u: &UCoefficients) -> Result<bool, ConstructError> {
    let th = theorem_threshold(a, b)?;
    let n = b / a;
    if u.0.len() != n as usize {
        return Err(ConstructError::Precondition(format!(
            "expected {n} u coefficients, got {}",
            u.0.len()
        )));
    }
    let e = th.e;
    let (ea, eb) = (e / a, e / b);
    let mut v1 = Polynomial::zero();
    for i in 1..=ea {
        let c = Rational::from(binomial(ea as u64, i as u64));
        v1 = &v1 + &Polynomial::term(Monomial::new(i, 0, e - i * a), c);
    }
    let w = &Polynomial::var(Var::Y) + &u.polynomial(a, b);
    let mut v2 = Polynomial::zero();
    let mut w_pow = Polynomial::one();
    for j in 1..=eb {
        w_pow = &w_pow * &w;
        let c = Rational::from(binomial(eb as u64, j as u64));
        let shift = Polynomial::term(Monomial::new(0, 0, e - j * b), c);
        v2 = &v2 + &(&w_pow * &shift);
    }
    let diff = &v1 - &v2;
    Ok((1..=n).all(|i| diff.coeff(&Monomial::new(i, 0, e - i * a)).is_zero()))
}

/// For `c` in the cancelling range, checks that
/// `max{e - b + 1, e - (a - 1)(⌊b/a⌋ + 1), m + e - b}` with `m = b + c - e`
/// equals `c` and equals the degree of the expanded third coordinate.
pub fn degree_formula_check(a: u32, b: u32, c: u32) -> Result<bool, ConstructError> {
    let th = theorem_threshold(a, b)?;
    if !(th.step2_start() <= c && c < th.step1_start(a)) {
        return Err(ConstructError::Precondition(format!(
            "({a},{b},{c}) is outside the range {}..{}",
            th.step2_start(),
            th.step1_start(a)
        )));
    }
    let e = th.e;
    let m = b + c - e;
    let formula = (e - b + 1)
        .max(e - (a - 1) * (b / a + 1))
        .max(m + e - b);
    let plan = build_step2(a, b, c)?;
    let map = expand_word(&plan.word)?;
    Ok(formula == c && map.coords[2].total_degree() == Degree::Finite(c))
}
