//! Sparse polynomials in `x`, `y`, `z` with exact rational coefficients.
//!
//! Terms are kept in a map keyed by exponent triple, ordered graded
//! lexicographically with `x > y > z`. Zero coefficients are never stored, so
//! structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::Rational;

/// One of the three coordinate variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        Var::ALL.get(i).copied()
    }

    pub fn from_char(c: char) -> Option<Var> {
        match c {
            'x' => Some(Var::X),
            'y' => Some(Var::Y),
            'z' => Some(Var::Z),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent triple `x^i y^j z^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(ex: u32, ey: u32, ez: u32) -> Self {
        Monomial([ex, ey, ez])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then `x`, `y`, `z` exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Total degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree of a product.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// `x^i y^j z^k` with coefficient 1.
    pub fn monomial(ex: u32, ey: u32, ez: u32) -> Self {
        Polynomial::term(Monomial::new(ex, ey, ez), Rational::one())
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if this polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn total_degree(&self) -> Degree {
        // grlex puts the highest total degree last
        match self.terms.keys().next_back() {
            Some(m) => Degree::Finite(m.total_degree()),
            None => Degree::MinusInfinity,
        }
    }

    /// Largest exponent of `v` across all terms, 0 for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        if n == 0 {
            return Polynomial::one();
        }
        // repeated multiplication by a sparse base beats squaring here
        let mut acc = self.clone();
        for _ in 1..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Polynomial {
        let i = v.index();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.0;
            d[i] -= 1;
            terms.insert(Monomial(d), c * &Rational::from(e as i64));
        }
        Polynomial { terms }
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut caches: [Vec<Rational>; 3] = Default::default();
        for v in Var::ALL {
            let i = v.index();
            let max = self.degree_in(v) as usize;
            let mut pows = Vec::with_capacity(max + 1);
            pows.push(Rational::one());
            for k in 1..=max {
                let next = &pows[k - 1] * &point[i];
                pows.push(next);
            }
            caches[i] = pows;
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let [ex, ey, ez] = m.0;
            let t = c * &caches[0][ex as usize];
            let t = t * &caches[1][ey as usize];
            let t = t * &caches[2][ez as usize];
            acc += &t;
        }
        acc
    }

    /// Replaces `x`, `y`, `z` simultaneously by `sx`, `sy`, `sz`.
    pub fn substitute(&self, sx: &Polynomial, sy: &Polynomial, sz: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut px = PowerCache::new(sx);
        let mut py = PowerCache::new(sy);
        let mut pz = PowerCache::new(sz);

        // Group terms by their (x, y) exponents so each group costs one
        // product with the cached x/y powers.
        let mut groups: BTreeMap<(u32, u32), Vec<(u32, &Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry((m.0[0], m.0[1])).or_default().push((m.0[2], c));
        }

        let mut out = Polynomial::zero();
        for ((ex, ey), zs) in groups {
            let mut inner = Polynomial::zero();
            for (ez, c) in zs {
                inner.add_scaled(pz.get(ez), c);
            }
            if inner.is_zero() {
                continue;
            }
            let xy = match (ex, ey) {
                (0, 0) => inner,
                (ex, 0) => px.get(ex) * &inner,
                (0, ey) => py.get(ey) * &inner,
                (ex, ey) => &(px.get(ex) * py.get(ey)) * &inner,
            };
            out.add_assign(&xy);
        }
        out
    }

    fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        for (m, k) in &other.terms {
            self.add_term(*m, &(k * c));
        }
    }

    fn add_assign(&mut self, other: &Polynomial) {
        for (m, k) in &other.terms {
            self.add_term(*m, k);
        }
    }
}

/// Memoized powers `p^0, p^1, ...` of one substitution polynomial.
struct PowerCache<'a> {
    base: &'a Polynomial,
    powers: Vec<Polynomial>,
}

impl<'a> PowerCache<'a> {
    fn new(base: &'a Polynomial) -> Self {
        PowerCache {
            base,
            powers: vec![Polynomial::one()],
        }
    }

    fn get(&mut self, n: u32) -> &Polynomial {
        let n = n as usize;
        while self.powers.len() <= n {
            let next = self.powers.last().expect("nonempty") * self.base;
            self.powers.push(next);
        }
        &self.powers[n]
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, k) in &rhs.terms {
            out.add_term(*m, &-k);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        match small.len() {
            0 => Polynomial::zero(),
            1 => {
                let (m, c) = small.terms.iter().next().expect("one term");
                large.mul_term(m, c)
            }
            _ => {
                let mut out = Polynomial::zero();
                for (m1, c1) in &small.terms {
                    for (m2, c2) in &large.terms {
                        out.add_term(m1.mul(m2), &(c1 * c2));
                    }
                }
                out
            }
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $trait::$method(&self, rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(Rational::from(c))
    }
}

impl fmt::Display for Polynomial {
    /// Graded-lex descending, e.g. `x^3 - 3/2*x*z^2 + 1`. Parses back to the
    /// same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Var::X)
    }
    fn y() -> Polynomial {
        Polynomial::var(Var::Y)
    }
    fn z() -> Polynomial {
        Polynomial::var(Var::Z)
    }
    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = &x() + &(-&x());
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn add_disjoint_and_fractions() {
        let p = &x().pow(3) + &y().pow(2);
        assert_eq!(p.to_string(), "x^3 + y^2");
        let xz2 = Polynomial::monomial(1, 0, 2);
        let s = &xz2.scale(&q(3, 2)) + &xz2.scale(&q(1, 2));
        assert_eq!(s, xz2.scale(&q(2, 1)));
        assert_eq!(s.to_string(), "2*x*z^2");
    }

    #[test]
    fn mul_examples() {
        assert!((&x() * &Polynomial::zero()).is_zero());
        let p = &(&x() + &z().pow(3)) * &(&y() + &z().pow(5));
        let want = Polynomial::from_terms([
            (Monomial::new(1, 1, 0), Rational::one()),
            (Monomial::new(1, 0, 5), Rational::one()),
            (Monomial::new(0, 1, 3), Rational::one()),
            (Monomial::new(0, 0, 8), Rational::one()),
        ]);
        assert_eq!(p, want);
        let s = &(&x() + &z()) * &(&x() + &z());
        assert_eq!(s.to_string(), "x^2 + 2*x*z + z^2");
    }

    #[test]
    fn pow_examples() {
        assert_eq!(x().pow(0), Polynomial::one());
        assert!(Polynomial::zero().pow(5).is_zero());
        assert_eq!(Polynomial::zero().pow(0), Polynomial::one());
        let p = (&x() + &z().pow(4)).pow(3);
        assert_eq!(p.to_string(), "z^12 + 3*x*z^8 + 3*x^2*z^4 + x^3");
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(x().substitute(&x(), &y(), &z()), x());
        // z + x^3 - y^2 under (x+z^4, y+z^6, z)
        let p = &(&z() + &x().pow(3)) - &y().pow(2);
        let sx = &x() + &z().pow(4);
        let sy = &y() + &z().pow(6);
        let got = p.substitute(&sx, &sy, &z());
        let want = &(&z() + &sx.pow(3)) - &sy.pow(2);
        assert_eq!(got, want);
        // x^k y^l under (x+z^a, y+z^b, z) has degree ka+lb
        for (k, l, a, b) in [(2u32, 1u32, 3u32, 5u32), (0, 3, 4, 7), (5, 0, 3, 3)] {
            let m = Polynomial::monomial(k, l, 0);
            let s = m.substitute(&(&x() + &z().pow(a)), &(&y() + &z().pow(b)), &z());
            assert_eq!(s.total_degree(), Degree::Finite(k * a + l * b));
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Polynomial::zero().total_degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        let p = &(&(&z() + &x().pow(3)) - &y().pow(2)) + &z().pow(7).scale(&q(2, 1));
        assert_eq!(p.total_degree(), Degree::Finite(7));
        assert_eq!(Polynomial::one().total_degree(), Degree::Finite(0));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(x().pow(3).partial(Var::X), x().pow(2).scale(&q(3, 1)));
        let p = &z() + &(&x().pow(4) * &y());
        assert_eq!(p.partial(Var::Z), Polynomial::one());
        let s = (&y() + &z().pow(6)).pow(2).partial(Var::Y);
        assert_eq!(s, &y().scale(&q(2, 1)) + &z().pow(6).scale(&q(2, 1)));
    }

    #[test]
    fn eval_examples() {
        let pt = [q(1, 1), q(2, 1), q(3, 1)];
        assert_eq!(Polynomial::zero().eval(&pt), Rational::zero());
        assert_eq!((&(&x() + &y()) + &z()).eval(&pt), q(6, 1));
        let p = (&x() + &z().pow(4)).pow(3);
        assert_eq!(p.eval(&[q(1, 1), q(0, 1), q(1, 1)]), q(8, 1));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(9, 0), BigInt::from(1));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(7, 2), BigInt::from(21));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn constant_value() {
        assert_eq!(Polynomial::zero().constant_value(), Some(Rational::zero()));
        assert_eq!(Polynomial::from(5).constant_value(), Some(q(5, 1)));
        assert_eq!(x().constant_value(), None);
    }
}
