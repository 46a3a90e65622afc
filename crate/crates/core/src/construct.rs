//! Explicit tame automorphisms with a prescribed multidegree `(a, b, c)`.
//!
//! Cases, in dispatch order for a sorted triple `a <= b <= c`:
//!
//! * `a <= 2`: every `c` is handled by the divisible or semigroup words.
//! * `a | b`: `(x, y + x^d, z) ∘ (x + y^a, y, z + y^c)` with `b = d a`.
//! * `c = k a + l b`: `(x, y, z + x^k y^l) ∘ (x + z^a, y + z^b, z)`.
//! * `c >= lcm(a, b) - a`: the leading-term construction ([`build_step1`]).
//! * `c0 <= c < lcm(a, b) - a`: the cancelling construction ([`build_step2`]),
//!   whose correction polynomial `u(x, z)` comes from [`compute_u`].
//!
//! Anything else is reported as [`Outcome::Unknown`], which never claims that
//! no automorphism exists.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::poly::{binomial, Polynomial, Var};
use crate::rational::Rational;
use crate::verify::{verify_plan, VerificationReport};
use crate::word::{Factor, Matrix3, Multidegree, TameWord, WordError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructError {
    #[error("all degrees must be positive integers")]
    NonPositive,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree arithmetic overflowed")]
    Overflow,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("constructed plan for {target} failed verification")]
    VerificationFailed {
        target: Multidegree,
        report: Box<VerificationReport>,
    },
}

fn precondition(msg: impl Into<String>) -> ConstructError {
    ConstructError::Precondition(msg.into())
}

/// A requested multidegree, normalized to `a <= b <= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TargetTriple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    /// `permutation[j]` is the input position of sorted entry `j`.
    pub permutation: [usize; 3],
}

impl TargetTriple {
    pub fn from_input(input: [u32; 3]) -> Result<Self, ConstructError> {
        if input.contains(&0) {
            return Err(ConstructError::NonPositive);
        }
        let mut perm = [0, 1, 2];
        // stable, so equal degrees keep input order
        perm.sort_by_key(|&i| input[i]);
        Ok(TargetTriple {
            a: input[perm[0]],
            b: input[perm[1]],
            c: input[perm[2]],
            permutation: perm,
        })
    }

    /// An already sorted triple.
    pub fn sorted_triple(a: u32, b: u32, c: u32) -> Result<Self, ConstructError> {
        if a == 0 {
            return Err(ConstructError::NonPositive);
        }
        if !(a <= b && b <= c) {
            return Err(precondition(format!("({a},{b},{c}) is not sorted")));
        }
        Ok(TargetTriple {
            a,
            b,
            c,
            permutation: [0, 1, 2],
        })
    }

    pub fn sorted(&self) -> Multidegree {
        Multidegree([self.a, self.b, self.c])
    }

    pub fn input(&self) -> Multidegree {
        let s = [self.a, self.b, self.c];
        let mut out = [0; 3];
        for (j, &p) in self.permutation.iter().enumerate() {
            out[p] = s[j];
        }
        Multidegree(out)
    }

    pub fn is_permuted(&self) -> bool {
        self.permutation != [0, 1, 2]
    }
}

impl fmt::Display for TargetTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sorted().fmt(f)
    }
}

/// `k a + l b = c` with `k, l >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SemigroupWitness {
    pub k: u32,
    pub l: u32,
}

/// Thresholds for a pair `b > a > 2` with `a ∤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThresholdInfo {
    pub e: u32,
    pub r: u32,
    pub c0: u32,
    pub remark1_applied: bool,
}

impl ThresholdInfo {
    /// Smallest `c` handled by [`build_step2`].
    pub fn step2_start(&self) -> u32 {
        self.e - self.r
    }

    /// Smallest `c` handled by [`build_step1`].
    pub fn step1_start(&self, a: u32) -> u32 {
        self.e - a
    }
}

/// `u_1, ..., u_{⌊b/a⌋}`, the coefficients of `u(x,z) = Σ u_k x^k z^(b - k a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UCoefficients(pub Vec<Rational>);

impl UCoefficients {
    /// `u(x, z)` for the pair `(a, b)`.
    pub fn polynomial(&self, a: u32, b: u32) -> Polynomial {
        Polynomial::from_terms(self.0.iter().enumerate().map(|(i, u)| {
            let k = i as u32 + 1;
            (
                crate::poly::Monomial::new(k, 0, b - k * a),
                u.clone(),
            )
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Fact1Semigroup,
    Fact1Divisible,
    Step1,
    Step1DegenerateM0,
    Step2,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::Fact1Semigroup => "Fact1Semigroup",
            Case::Fact1Divisible => "Fact1Divisible",
            Case::Step1 => "Step1",
            Case::Step1DegenerateM0 => "Step1DegenerateM0",
            Case::Step2 => "Step2",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parameters {
    Semigroup(SemigroupWitness),
    Divisible { d: u32 },
    /// `c = e + (k - 1) a + m`.
    Step1 { e: u32, k: u32, m: u32 },
    /// `m = b + c - e`.
    Step2 { e: u32, m: u32, u: UCoefficients },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub case: Case,
    pub params: Parameters,
    /// Word for the sorted triple.
    pub word: TameWord,
    pub predicted: Multidegree,
    pub target: TargetTriple,
}

impl ConstructionPlan {
    /// The word followed by the coordinate permutation restoring the input
    /// order of the requested degrees.
    pub fn word_in_input_order(&self) -> TameWord {
        let mut w = self.word.clone();
        if self.target.is_permuted() {
            let p = Matrix3::permutation(self.target.permutation);
            w.push(Factor::Linear(p));
        }
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Constructed(Box<ConstructionPlan>),
    Unknown(TargetTriple),
}

impl Outcome {
    pub fn plan(&self) -> Option<&ConstructionPlan> {
        match self {
            Outcome::Constructed(p) => Some(p),
            Outcome::Unknown(_) => None,
        }
    }
}

fn x() -> Polynomial {
    Polynomial::var(Var::X)
}
fn y() -> Polynomial {
    Polynomial::var(Var::Y)
}
fn z() -> Polynomial {
    Polynomial::var(Var::Z)
}

fn elementary(axis: Var, g: Polynomial) -> Factor {
    Factor::elementary(axis, g).expect("construction factors never use their own axis")
}

fn lcm(a: u32, b: u32) -> Result<u32, ConstructError> {
    let e = (a as u64).lcm(&(b as u64));
    u32::try_from(e).map_err(|_| ConstructError::Overflow)
}

/// Minimal-`l` solution of `k a + l b = c`, if any.
pub fn semigroup_decompose(a: u32, b: u32, c: u32) -> Option<SemigroupWitness> {
    if a == 0 || b == 0 {
        return None;
    }
    (0..=c / b).find_map(|l| {
        let rest = c - l * b;
        (rest % a == 0).then_some(SemigroupWitness { k: rest / a, l })
    })
}

/// `(a - 1)(b - 1)`: every `c` at or above it lies in the semigroup `<a, b>`.
pub fn sylvester_bound(a: u32, b: u32) -> Result<u32, ConstructError> {
    if a.gcd(&b) != 1 {
        return Err(precondition(format!("gcd({a},{b}) != 1")));
    }
    if !(b > a && a > 2) {
        return Err(precondition(format!("need b > a > 2, got ({a},{b})")));
    }
    (a - 1)
        .checked_mul(b - 1)
        .ok_or(ConstructError::Overflow)
}

fn check_theorem_pair(a: u32, b: u32) -> Result<(), ConstructError> {
    if !(b > a && a > 2) {
        return Err(precondition(format!("need b > a > 2, got ({a},{b})")));
    }
    if b % a == 0 {
        return Err(precondition(format!("{a} divides {b}")));
    }
    Ok(())
}

pub fn theorem_threshold(a: u32, b: u32) -> Result<ThresholdInfo, ConstructError> {
    check_theorem_pair(a, b)?;
    let e = lcm(a, b)?;
    let r = (b - 1).min((a - 1) * (b / a + 1));
    let remark1_applied = r == b - 1;
    // b | e - b, so e - b itself is in the semigroup
    let c0 = if remark1_applied { e - b } else { e - r };
    Ok(ThresholdInfo {
        e,
        r,
        c0,
        remark1_applied,
    })
}

pub fn build_fact1_semigroup(
    a: u32,
    b: u32,
    w: SemigroupWitness,
) -> Result<TameWord, ConstructError> {
    if w.k == 0 && w.l == 0 {
        return Err(precondition("witness k = l = 0 gives c = 0"));
    }
    Ok(TameWord::new(vec![
        elementary(Var::X, z().pow(a)),
        elementary(Var::Y, z().pow(b)),
        elementary(Var::Z, Polynomial::monomial(w.k, w.l, 0)),
    ]))
}

/// Realizes `(a, d a, c)`: coordinates `(x + y^a, y + (x + y^a)^d, z + y^c)`.
pub fn build_fact1_divisible(a: u32, d: u32, c: u32) -> Result<TameWord, ConstructError> {
    if a == 0 || d == 0 || c == 0 {
        return Err(ConstructError::NonPositive);
    }
    Ok(TameWord::new(vec![
        elementary(Var::X, y().pow(a)),
        elementary(Var::Z, y().pow(c)),
        elementary(Var::Y, x().pow(d)),
    ]))
}

fn semigroup_plan(
    target: TargetTriple,
    w: SemigroupWitness,
) -> Result<ConstructionPlan, ConstructError> {
    let (a, b, c) = (target.a, target.b, target.c);
    if w.k as u64 * a as u64 + w.l as u64 * b as u64 != c as u64 {
        return Err(precondition(format!(
            "witness (k={}, l={}) does not give c={c}",
            w.k, w.l
        )));
    }
    Ok(ConstructionPlan {
        case: Case::Fact1Semigroup,
        params: Parameters::Semigroup(w),
        word: build_fact1_semigroup(a, b, w)?,
        predicted: target.sorted(),
        target,
    })
}

fn divisible_plan(target: TargetTriple) -> Result<ConstructionPlan, ConstructError> {
    let d = target.b / target.a;
    Ok(ConstructionPlan {
        case: Case::Fact1Divisible,
        params: Parameters::Divisible { d },
        word: build_fact1_divisible(target.a, d, target.c)?,
        predicted: target.sorted(),
        target,
    })
}

pub fn dispatch_small_a(a: u32, b: u32, c: u32) -> Result<ConstructionPlan, ConstructError> {
    dispatch_small(TargetTriple::sorted_triple(a, b, c)?)
}

fn dispatch_small(t: TargetTriple) -> Result<ConstructionPlan, ConstructError> {
    match t.a {
        1 => semigroup_plan(t, SemigroupWitness { k: t.c, l: 0 }),
        2 if t.b % 2 == 0 => divisible_plan(t),
        2 => {
            // b odd: exactly one of c - b, c is even
            let w = if (t.c - t.b) % 2 == 0 {
                SemigroupWitness {
                    k: (t.c - t.b) / 2,
                    l: 1,
                }
            } else {
                SemigroupWitness { k: t.c / 2, l: 0 }
            };
            semigroup_plan(t, w)
        }
        _ => Err(precondition(format!("dispatch_small_a needs a <= 2, got {}", t.a))),
    }
}

pub fn build_step1(a: u32, b: u32, c: u32) -> Result<ConstructionPlan, ConstructError> {
    step1_plan(TargetTriple::sorted_triple(a, b, c)?)
}

fn step1_plan(t: TargetTriple) -> Result<ConstructionPlan, ConstructError> {
    let (a, b, c) = (t.a, t.b, t.c);
    check_theorem_pair(a, b)?;
    let e = lcm(a, b)?;
    if c < e - a {
        return Err(precondition(format!("Step 1 needs c >= {}, got {c}", e - a)));
    }
    let (k, m) = (c - (e - a)).div_rem(&a);
    let (ea, eb) = (e / a, e / b);
    if m == 0 {
        // c = (e/a + k - 1) a
        let w = SemigroupWitness {
            k: ea + k - 1,
            l: 0,
        };
        return Ok(ConstructionPlan {
            case: Case::Step1DegenerateM0,
            params: Parameters::Step1 { e, k, m },
            word: build_fact1_semigroup(a, b, w)?,
            predicted: t.sorted(),
            target: t,
        });
    }
    // (x + z^a + z^m, y + z^b, z) then z += x^k (x^(e/a) - y^(e/b))
    let g = &Polynomial::monomial(k, 0, 0)
        * &(&Polynomial::monomial(ea, 0, 0) - &Polynomial::monomial(0, eb, 0));
    let word = TameWord::new(vec![
        elementary(Var::X, &z().pow(a) + &z().pow(m)),
        elementary(Var::Y, z().pow(b)),
        elementary(Var::Z, g),
    ]);
    Ok(ConstructionPlan {
        case: Case::Step1,
        params: Parameters::Step1 { e, k, m },
        word,
        predicted: t.sorted(),
        target: t,
    })
}

/// Solves for `u_1, ..., u_{⌊b/a⌋}` so that the terms `x^i z^(e - i a)` cancel.
///
/// With `P_j(i)` the sum over ordered tuples `k_1 + ... + k_j = i` of
/// `u_{k_1} ... u_{k_j}`, the coefficient of `x^i z^(e - i a)` in `v1 - v2` is
/// `C(e/a, i) - Σ_j C(e/b, j) P_j(i)`. Since `P_1(i) = u_i` and `P_j(i)` for
/// `j >= 2` only involves `u_k` with `k < i`, each `u_i` is determined in turn.
pub fn compute_u(a: u32, b: u32) -> Result<UCoefficients, ConstructError> {
    check_theorem_pair(a, b)?;
    let e = lcm(a, b)?;
    let n = (b / a) as usize;
    let (ea, eb) = ((e / a) as u64, (e / b) as u64);
    let b_over_e = Rational::new(b as i64, e as i64).expect("e > 0");

    let mut u: Vec<Rational> = Vec::with_capacity(n);
    // compositions[j][i] = P_j(i) for j >= 1, i <= n; index 0 unused
    let mut compositions: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n + 1]; n + 1];
    for i in 1..=n {
        // P_j(i) for j >= 2 from already known u_1..u_{i-1}
        for j in 2..=i {
            let mut s = Rational::zero();
            for k in 1..=(i - j + 1) {
                s += &(&u[k - 1] * &compositions[j - 1][i - k]);
            }
            compositions[j][i] = s;
        }
        let mut rhs = Rational::from(binomial(ea, i as u64));
        for j in 2..=i {
            let bin = binomial(eb, j as u64);
            if bin == 0.into() {
                continue;
            }
            rhs -= &(&Rational::from(bin) * &compositions[j][i]);
        }
        let ui = &b_over_e * &rhs;
        compositions[1][i] = ui.clone();
        u.push(ui);
    }
    Ok(UCoefficients(u))
}

pub fn build_step2(a: u32, b: u32, c: u32) -> Result<ConstructionPlan, ConstructError> {
    let u = compute_u(a, b)?;
    build_step2_with_u(a, b, c, u)
}

/// [`build_step2`] with caller-supplied `u` coefficients.
pub fn build_step2_with_u(
    a: u32,
    b: u32,
    c: u32,
    u: UCoefficients,
) -> Result<ConstructionPlan, ConstructError> {
    step2_plan(TargetTriple::sorted_triple(a, b, c)?, u)
}

fn step2_plan(t: TargetTriple, u: UCoefficients) -> Result<ConstructionPlan, ConstructError> {
    let (a, b, c) = (t.a, t.b, t.c);
    let th = theorem_threshold(a, b)?;
    let e = th.e;
    if !(th.step2_start() <= c && c < th.step1_start(a)) {
        return Err(precondition(format!(
            "Step 2 needs {} <= c < {}, got {c}",
            th.step2_start(),
            th.step1_start(a)
        )));
    }
    if u.0.len() != (b / a) as usize {
        return Err(precondition(format!(
            "expected {} u coefficients, got {}",
            b / a,
            u.0.len()
        )));
    }
    let m = b + c - e;
    debug_assert!(0 < m && m < b);
    // y + z^b + z^m + u(x, z) must see the original x, so it is applied
    // before x + z^a
    let gy = &(&z().pow(b) + &z().pow(m)) + &u.polynomial(a, b);
    let gz = &Polynomial::monomial(e / a, 0, 0) - &Polynomial::monomial(0, e / b, 0);
    let word = TameWord::new(vec![
        elementary(Var::Y, gy),
        elementary(Var::X, z().pow(a)),
        elementary(Var::Z, gz),
    ]);
    Ok(ConstructionPlan {
        case: Case::Step2,
        params: Parameters::Step2 { e, m, u },
        word,
        predicted: t.sorted(),
        target: t,
    })
}

/// Picks the first applicable construction without verifying it.
pub fn plan(a: u32, b: u32, c: u32) -> Result<Outcome, ConstructError> {
    plan_target(TargetTriple::from_input([a, b, c])?)
}

fn plan_target(t: TargetTriple) -> Result<Outcome, ConstructError> {
    let (a, b, c) = (t.a, t.b, t.c);
    let built = if a <= 2 {
        dispatch_small(t)?
    } else if b % a == 0 {
        divisible_plan(t)?
    } else if let Some(w) = semigroup_decompose(a, b, c) {
        semigroup_plan(t, w)?
    } else {
        let th = theorem_threshold(a, b)?;
        if c >= th.step1_start(a) {
            step1_plan(t)?
        } else if c >= th.step2_start() {
            step2_plan(t, compute_u(a, b)?)?
        } else {
            return Ok(Outcome::Unknown(t));
        }
    };
    Ok(Outcome::Constructed(Box::new(built)))
}

/// Builds a plan for `(a, b, c)` in any order and verifies it before
/// returning. A plan that fails verification is an error, never an outcome.
pub fn construct(a: u32, b: u32, c: u32) -> Result<Outcome, ConstructError> {
    construct_with_report(a, b, c).map(|(o, _)| o)
}

/// [`construct`] together with the verification report of the emitted plan.
pub fn construct_with_report(
    a: u32,
    b: u32,
    c: u32,
) -> Result<(Outcome, Option<VerificationReport>), ConstructError> {
    let outcome = plan(a, b, c)?;
    let Outcome::Constructed(p) = &outcome else {
        return Ok((outcome, None));
    };
    let report = verify_plan(p, &p.target);
    if !report.passed() {
        return Err(ConstructError::VerificationFailed {
            target: p.target.sorted(),
            report: Box::new(report),
        });
    }
    Ok((outcome, Some(report)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamePairReport {
    pub a: u32,
    pub b: u32,
    /// `None` for `a <= 2`, where every `c` is covered without a threshold.
    pub threshold: Option<ThresholdInfo>,
    /// Every `c` with `b < c <= window_end` was tried.
    pub window_end: u32,
    pub covered: Vec<(u32, Case)>,
    pub uncovered: Vec<u32>,
}

impl TamePairReport {
    /// Every `c` below the threshold was constructed, and the theorem covers
    /// every `c` at or above it.
    pub fn certified(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// Effective threshold: the smallest `c` from which coverage is guaranteed.
    pub fn c0(&self) -> u32 {
        self.threshold.map_or(self.b + 1, |t| t.c0)
    }
}

/// Tries every `c` in `(b, max(c0, b + 1) + probe_limit]`.
pub fn certify_pair(a: u32, b: u32, probe_limit: u32) -> Result<TamePairReport, ConstructError> {
    if a == 0 {
        return Err(ConstructError::NonPositive);
    }
    if a >= b || b % a == 0 {
        return Err(precondition(format!("need a < b and a ∤ b, got ({a},{b})")));
    }
    let threshold = if a <= 2 {
        None
    } else {
        Some(theorem_threshold(a, b)?)
    };
    let c0 = threshold.map_or(b + 1, |t| t.c0);
    let window_end = c0
        .max(b + 1)
        .checked_add(probe_limit)
        .ok_or(ConstructError::Overflow)?;
    let results: Vec<(u32, Option<Case>)> = ((b + 1)..=window_end)
        .into_par_iter()
        .map(|c| {
            construct(a, b, c).map(|o| (c, o.plan().map(|p| p.case)))
        })
        .collect::<Result<_, _>>()?;
    let mut covered = Vec::new();
    let mut uncovered = Vec::new();
    for (c, case) in results {
        match case {
            Some(case) => covered.push((c, case)),
            None => uncovered.push(c),
        }
    }
    Ok(TamePairReport {
        a,
        b,
        threshold,
        window_end,
        covered,
        uncovered,
    })
}
