//! Polynomial maps of 3-space and tame words.
//!
//! A [`TameWord`] `[f1, f2, ..., fn]` denotes `fn ∘ ... ∘ f2 ∘ f1`: the first
//! factor in the list is applied first.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Degree, Polynomial, Var};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("factor polynomial uses its own axis `{0}`")]
    OwnAxis(Var),
    #[error("singular linear factor")]
    SingularLinear,
    #[error("coordinate {0} is the zero polynomial")]
    ZeroCoordinate(usize),
}

/// A polynomial map `(F1, F2, F3)`, the images of `x`, `y`, `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub coords: [Polynomial; 3],
}

impl PolyMap {
    pub fn new(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> Self {
        PolyMap {
            coords: [f1, f2, f3],
        }
    }

    pub fn identity() -> Self {
        PolyMap::new(
            Polynomial::var(Var::X),
            Polynomial::var(Var::Y),
            Polynomial::var(Var::Z),
        )
    }

    pub fn coord(&self, v: Var) -> &Polynomial {
        &self.coords[v.index()]
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMap::identity()
    }

    /// `self ∘ inner`: substitutes the coordinates of `inner` into `self`.
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        compose_maps(self, inner)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// `(deg F1, deg F2, deg F3)` in coordinate order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub [u32; 3]);

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// Row-major 3×3 rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix3(pub [[Rational; 3]; 3]);

impl Matrix3 {
    pub fn identity() -> Self {
        Matrix3::from_fn(|i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Rational) -> Self {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Matrix sending coordinate `j` to position `target[j]`.
    pub fn permutation(target: [usize; 3]) -> Self {
        Matrix3::from_fn(|i, j| {
            if target[j] == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    fn at(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    fn minor(&self, i: usize, j: usize) -> Rational {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        self.at(rows[0], cols[0]) * self.at(rows[1], cols[1])
            - self.at(rows[0], cols[1]) * self.at(rows[1], cols[0])
    }

    fn cofactor(&self, i: usize, j: usize) -> Rational {
        let m = self.minor(i, j);
        if (i + j) % 2 == 0 {
            m
        } else {
            -m
        }
    }

    pub fn det(&self) -> Rational {
        (0..3).fold(Rational::zero(), |acc, j| {
            acc + self.at(0, j) * &self.cofactor(0, j)
        })
    }

    /// Inverse via the adjugate; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix3> {
        let inv_det = self.det().recip()?;
        Some(Matrix3::from_fn(|i, j| &self.cofactor(j, i) * &inv_det))
    }
}

/// One generator of the tame group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `axis ↦ axis + g`, the other variables fixed. `g` never involves `axis`.
    Elementary { axis: Var, g: Polynomial },
    /// `v ↦ M v`, with `M` invertible.
    Linear(Matrix3),
}

impl Factor {
    pub fn elementary(axis: Var, g: Polynomial) -> Result<Factor, WordError> {
        if g.involves(axis) {
            return Err(WordError::OwnAxis(axis));
        }
        Ok(Factor::Elementary { axis, g })
    }

    pub fn linear(m: Matrix3) -> Result<Factor, WordError> {
        if m.det().is_zero() {
            return Err(WordError::SingularLinear);
        }
        Ok(Factor::Linear(m))
    }

    pub fn validate(&self) -> Result<(), WordError> {
        match self {
            Factor::Elementary { axis, g } if g.involves(*axis) => Err(WordError::OwnAxis(*axis)),
            Factor::Linear(m) if m.det().is_zero() => Err(WordError::SingularLinear),
            _ => Ok(()),
        }
    }

    pub fn inverse(&self) -> Result<Factor, WordError> {
        match self {
            Factor::Elementary { axis, g } => Ok(Factor::Elementary {
                axis: *axis,
                g: -g,
            }),
            Factor::Linear(m) => m
                .inverse()
                .map(Factor::Linear)
                .ok_or(WordError::SingularLinear),
        }
    }

    pub fn is_elementary(&self) -> bool {
        matches!(self, Factor::Elementary { .. })
    }
}

pub fn expand_factor(f: &Factor) -> Result<PolyMap, WordError> {
    f.validate()?;
    match f {
        Factor::Elementary { axis, g } => {
            let mut map = PolyMap::identity();
            let slot = &mut map.coords[axis.index()];
            *slot = &*slot + g;
            Ok(map)
        }
        Factor::Linear(m) => {
            let coords = std::array::from_fn(|i| {
                Polynomial::from_terms(Var::ALL.iter().map(|&v| {
                    (
                        crate::poly::Monomial::var(v),
                        m.0[i][v.index()].clone(),
                    )
                }))
            });
            Ok(PolyMap { coords })
        }
    }
}

/// `outer ∘ inner`.
pub fn compose_maps(outer: &PolyMap, inner: &PolyMap) -> PolyMap {
    let [sx, sy, sz] = &inner.coords;
    PolyMap {
        coords: std::array::from_fn(|i| outer.coords[i].substitute(sx, sy, sz)),
    }
}

/// Applies an elementary factor to an already expanded map without building
/// the factor's own map first: only one coordinate changes.
fn apply_factor(f: &Factor, map: &PolyMap) -> Result<PolyMap, WordError> {
    match f {
        Factor::Elementary { axis, g } => {
            f.validate()?;
            let [sx, sy, sz] = &map.coords;
            let mut out = map.clone();
            let i = axis.index();
            out.coords[i] = &out.coords[i] + &g.substitute(sx, sy, sz);
            Ok(out)
        }
        Factor::Linear(_) => Ok(compose_maps(&expand_factor(f)?, map)),
    }
}

/// An ordered list of factors; the first is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TameWord {
    pub factors: Vec<Factor>,
}

impl TameWord {
    pub fn new(factors: Vec<Factor>) -> Self {
        TameWord { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, f: Factor) {
        self.factors.push(f);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &TameWord) -> TameWord {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        TameWord { factors }
    }

    pub fn all_elementary(&self) -> bool {
        self.factors.iter().all(Factor::is_elementary)
    }

    /// Product of the linear factors' determinants (1 for none).
    pub fn linear_det_product(&self) -> Rational {
        self.factors.iter().fold(Rational::one(), |acc, f| match f {
            Factor::Linear(m) => acc * m.det(),
            Factor::Elementary { .. } => acc,
        })
    }
}

pub fn expand_word(w: &TameWord) -> Result<PolyMap, WordError> {
    apply_word(PolyMap::identity(), w)
}

/// `expand(w) ∘ start`.
pub fn apply_word(start: PolyMap, w: &TameWord) -> Result<PolyMap, WordError> {
    w.factors
        .iter()
        .try_fold(start, |acc, f| apply_factor(f, &acc))
}

pub fn invert_word(w: &TameWord) -> Result<TameWord, WordError> {
    let factors = w
        .factors
        .iter()
        .rev()
        .map(Factor::inverse)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TameWord { factors })
}

pub fn multidegree(f: &PolyMap) -> Result<Multidegree, WordError> {
    let mut out = [0; 3];
    for (i, c) in f.coords.iter().enumerate() {
        match c.total_degree() {
            Degree::Finite(d) => out[i] = d,
            Degree::MinusInfinity => return Err(WordError::ZeroCoordinate(i)),
        }
    }
    Ok(Multidegree(out))
}

/// Determinant of the Jacobian matrix `∂Fi/∂xj`.
pub fn jacobian_det(f: &PolyMap) -> Polynomial {
    let j: [[Polynomial; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|k| f.coords[i].partial(Var::ALL[k])));
    let minor = |c0: usize, c1: usize| &(&j[1][c0] * &j[2][c1]) - &(&j[1][c1] * &j[2][c0]);
    let t0 = &j[0][0] * &minor(1, 2);
    let t1 = &j[0][1] * &minor(0, 2);
    let t2 = &j[0][2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// Compares `f` and `g` at `trials` pseudo-random rational points derived from
/// `seed`. A `false` answer is definitive; `true` is only probable.
pub fn maps_equal_probabilistic(f: &PolyMap, g: &PolyMap, trials: u32, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).all(|_| {
        let point: [Rational; 3] = std::array::from_fn(|_| {
            let n: i64 = rng.gen_range(-1000..=1000);
            let d: i64 = rng.gen_range(1..=97);
            Rational::new(n, d).expect("nonzero denominator")
        });
        (0..3).all(|i| f.coords[i].eval(&point) == g.coords[i].eval(&point))
    })
}
