//! Exact truncated power series in the variables `t, u, v, y` over
//! arbitrary-precision rationals.
//!
//! A series lives in the quotient ring obtained by discarding every
//! monomial in which any variable exceeds the truncation order `N`; all
//! arithmetic is exact ring arithmetic in that quotient, with no floating
//! point anywhere. Division is legal exactly when the divisor has a
//! nonzero constant coefficient.
//!
//! On top of the ring sit the generating functions of the five families:
//! the counting series `p_series` (Fishburn numbers), the primitive-count
//! series `k_series`, the bounded-run series `bk_series`, and the three
//! statistic-refined series `g_u1yt`, `g_full` and `g_primitive`, all built
//! from the kernel quantities `Δ_k` and `Γ_k`. Infinite sums are truncated
//! by order in `t` (each summand of the counting series has `t`-order at
//! least `n`) or in the marker variable (`Γ_k` carries a factor of the
//! marker), so `N + 1` summands are always sufficient.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The four series variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    U,
    V,
    Y,
}

/// Exponent quadruple `t^t u^u v^v y^y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub t: u16,
    pub u: u16,
    pub v: u16,
    pub y: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        t: 0,
        u: 0,
        v: 0,
        y: 0,
    };

    pub fn new(t: usize, u: usize, v: usize, y: usize) -> Self {
        debug_assert!(t.max(u).max(v).max(y) <= u16::MAX as usize);
        Monomial {
            t: t as u16,
            u: u as u16,
            v: v as u16,
            y: y as u16,
        }
    }

    pub fn exponent(&self, var: Var) -> u16 {
        match var {
            Var::T => self.t,
            Var::U => self.u,
            Var::V => self.v,
            Var::Y => self.y,
        }
    }

    fn with_exponent(mut self, var: Var, e: u16) -> Self {
        match var {
            Var::T => self.t = e,
            Var::U => self.u = e,
            Var::V => self.v = e,
            Var::Y => self.y = e,
        }
        self
    }

    fn checked_mul(self, o: Monomial, cap: u16) -> Option<Monomial> {
        let m = Monomial {
            t: self.t + o.t,
            u: self.u + o.u,
            v: self.v + o.v,
            y: self.y + o.y,
        };
        (m.t <= cap && m.u <= cap && m.v <= cap && m.y <= cap).then_some(m)
    }

    fn within(&self, cap: u16) -> bool {
        self.t <= cap && self.u <= cap && self.v <= cap && self.y <= cap
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, e) in [("t", self.t), ("u", self.u), ("v", self.v), ("y", self.y)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A truncated series: sparse coefficient table keyed by monomial, with no
/// zero coefficient stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: BTreeMap<Monomial, BigRational>,
}

fn rat_pow(base: &BigRational, e: u16) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn constant(order: usize, value: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !value.is_zero() {
            coeffs.insert(Monomial::ONE, value);
        }
        TruncatedSeries { order, coeffs }
    }

    pub fn variable(order: usize, var: Var) -> Self {
        let m = Monomial::ONE.with_exponent(var, 1);
        TruncatedSeries {
            order,
            coeffs: BTreeMap::from([(m, BigRational::one())]),
        }
    }

    /// Series with a single term; errors if an exponent exceeds the order.
    pub fn monomial(order: usize, m: Monomial, value: BigRational) -> Result<Self> {
        if !m.within(order as u16) {
            return Err(Error::ExponentOutOfBounds { order });
        }
        Ok(TruncatedSeries {
            order,
            coeffs: if value.is_zero() {
                BTreeMap::new()
            } else {
                BTreeMap::from([(m, value)])
            },
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn cap(&self) -> u16 {
        self.order as u16
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    /// Exact coefficient of `m`, zero when absent; errors if an exponent
    /// exceeds the truncation order (the value there is unknown, not zero).
    pub fn coefficient(&self, m: Monomial) -> Result<BigRational> {
        if !m.within(self.cap()) {
            return Err(Error::ExponentOutOfBounds { order: self.order });
        }
        Ok(self
            .coeffs
            .get(&m)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    /// The sub-series multiplying `var^exp`, with that variable removed
    /// from the keys.
    pub fn coefficient_of(&self, var: Var, exp: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(m, _)| m.exponent(var) as usize == exp)
            .map(|(m, c)| (m.with_exponent(var, 0), c.clone()))
            .collect();
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "truncation orders must match");
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &o.coeffs {
            let entry = coeffs.entry(*m).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(m);
            }
        }
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order, "truncation orders must match");
        let cap = self.cap();
        // keys sort by t first, so the surviving partners of m1 form a prefix
        let (outer, inner) = if self.coeffs.len() <= o.coeffs.len() {
            (&self.coeffs, &o.coeffs)
        } else {
            (&o.coeffs, &self.coeffs)
        };
        let mut coeffs: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in outer {
            let upper = Monomial {
                t: cap - m1.t,
                u: u16::MAX,
                v: u16::MAX,
                y: u16::MAX,
            };
            for (m2, c2) in inner.range(..=upper) {
                if let Some(m) = m1.checked_mul(*m2, cap) {
                    let entry = coeffs.entry(m).or_insert_with(BigRational::zero);
                    *entry += c1 * c2;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant coefficient must be nonzero.
    /// Solved layer by layer in the `t`-degree: with `s = Σ_a t^a s_a` and
    /// `X = Σ_a t^a X_a`, the layer equations are `s_0 X_0 = 1` and
    /// `X_a = -X_0 Σ_{b>=1} s_b X_{a-b}`. The `t`-free base inverse is a
    /// geometric sum, which terminates because its remainder has no
    /// constant term and so is nilpotent in the quotient ring.
    pub fn inv(&self) -> Result<Self> {
        if !self.coeffs.contains_key(&Monomial::ONE) {
            return Err(Error::DivisionByNonUnit);
        }
        let max_t = self.coeffs.keys().map(|m| m.t).max().unwrap_or(0) as usize;
        let mut s_layers = vec![Self::zero(self.order); max_t + 1];
        for (m, c) in &self.coeffs {
            s_layers[m.t as usize]
                .coeffs
                .insert(m.with_exponent(Var::T, 0), c.clone());
        }
        let base = s_layers[0].inv_t_free()?;
        let mut x_layers = vec![base.clone()];
        for a in 1..=self.order {
            let mut acc = Self::zero(self.order);
            for b in 1..=a.min(max_t) {
                if !s_layers[b].is_zero() {
                    acc = acc.add(&s_layers[b].mul(&x_layers[a - b]));
                }
            }
            x_layers.push(base.mul(&acc).neg());
        }
        let mut coeffs = BTreeMap::new();
        for (a, layer) in x_layers.into_iter().enumerate() {
            for (m, c) in layer.coeffs {
                coeffs.insert(m.with_exponent(Var::T, a as u16), c);
            }
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    fn inv_t_free(&self) -> Result<Self> {
        let c0 = self
            .coeffs
            .get(&Monomial::ONE)
            .cloned()
            .ok_or(Error::DivisionByNonUnit)?;
        // r = 1 - self/c0: negate, then drop the constant -1
        let mut r = self.scale(&(-c0.recip()));
        r.coeffs.remove(&Monomial::ONE);
        let mut acc = Self::one(self.order);
        let mut term = Self::one(self.order);
        loop {
            term = term.mul(&r);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.scale(&c0.recip()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Substitutes `g` for `t` in a series univariate in `t`; `g` must have
    /// zero constant term.
    pub fn compose_t(&self, g: &Self) -> Result<Self> {
        assert_eq!(self.order, g.order, "truncation orders must match");
        if self.coeffs.keys().any(|m| m.u != 0 || m.v != 0 || m.y != 0) {
            return Err(Error::NotUnivariate);
        }
        if g.coeffs.contains_key(&Monomial::ONE) {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::zero(self.order);
        for a in (0..=self.order).rev() {
            acc = acc.mul(g);
            let c = self
                .coeffs
                .get(&Monomial::new(a, 0, 0, 0))
                .cloned()
                .unwrap_or_else(BigRational::zero);
            acc = acc.add(&Self::constant(self.order, c));
        }
        Ok(acc)
    }

    /// Substitutes a rational constant for one variable.
    pub fn eval_var(&self, var: Var, value: &BigRational) -> Self {
        let mut coeffs: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in &self.coeffs {
            let e = m.exponent(var);
            let scaled = if e == 0 {
                c.clone()
            } else if value.is_zero() {
                continue;
            } else {
                c * rat_pow(value, e)
            };
            let key = m.with_exponent(var, 0);
            let entry = coeffs.entry(key).or_insert_with(BigRational::zero);
            *entry += scaled;
            if entry.is_zero() {
                coeffs.remove(&key);
            }
        }
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Substitutes a series for `v`, by Horner over the `v`-degree.
    pub fn substitute_v(&self, repl: &Self) -> Self {
        let max_v = self.coeffs.keys().map(|m| m.v as usize).max().unwrap_or(0);
        let mut acc = Self::zero(self.order);
        for c in (0..=max_v).rev() {
            acc = acc.mul(repl);
            acc = acc.add(&self.coefficient_of(Var::V, c));
        }
        acc
    }

    /// Replaces `u^b` by `(uv)^b`; the series must not mention `v`.
    pub fn substitute_u_with_uv(&self) -> Result<Self> {
        if self.coeffs.keys().any(|m| m.v != 0) {
            return Err(Error::VariablePresent('v'));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| (m.with_exponent(Var::V, m.u), c.clone()))
            .collect();
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Re-truncates to a smaller order.
    pub fn truncated(&self, new_order: usize) -> Self {
        assert!(new_order <= self.order);
        TruncatedSeries {
            order: new_order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.within(new_order as u16))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True when every stored coefficient is a nonnegative integer.
    pub fn has_nonnegative_integer_coefficients(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                TruncatedSeries::$method(self, rhs)
            }
        }
    };
}
series_binop!(Add, add);
series_binop!(Sub, sub);
series_binop!(Mul, mul);

impl std::ops::Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

/// Counting series of all five families: `Σ_{n≥0} Π_{i=1}^n (1 − (1−t)^i)`.
/// Its coefficients are the Fishburn numbers.
pub fn p_series(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let one_minus_t = &one - &t;
    let mut power = one.clone();
    let mut product = one.clone();
    let mut sum = TruncatedSeries::zero(order);
    for i in 0..=order {
        if i > 0 {
            power = &power * &one_minus_t;
            product = &product * &(&one - &power);
        }
        sum = &sum + &product;
    }
    sum
}

/// Counting series of primitive (run-length 1) objects:
/// `Σ_{n≥0} Π_{i=1}^n (1 − (1+x)^{-i})`. The product starts at `i = 1`; a
/// product starting at `i = 0` would make every summand vanish.
pub fn k_series(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let inv_one_plus_t = (&one + &t).inv().expect("1 + x is a unit");
    let mut power = one.clone();
    let mut product = one.clone();
    let mut sum = TruncatedSeries::zero(order);
    for i in 0..=order {
        if i > 0 {
            power = &power * &inv_one_plus_t;
            product = &product * &(&one - &power);
        }
        sum = &sum + &product;
    }
    sum
}

/// Counting series of objects with run statistic at most `k`:
/// `Σ_{n≥0} Π_{i=1}^n (1 − ((1−x)/(1−x^{k+1}))^i)`, `k >= 1`.
pub fn bk_series(order: usize, k: usize) -> TruncatedSeries {
    assert!(k >= 1);
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let denom = &one - &t.pow(k + 1);
    let ratio = (&one - &t).div(&denom).expect("denominator is a unit");
    let mut power = one.clone();
    let mut product = one.clone();
    let mut sum = TruncatedSeries::zero(order);
    for i in 0..=order {
        if i > 0 {
            power = &power * &ratio;
            product = &product * &(&one - &power);
        }
        sum = &sum + &product;
    }
    sum
}

/// The first `count` kernel fractions `(1 − m) Π_{i=1}^n Γ_i / (Δ_n
/// Δ_{n+1})`, where `Δ_k = base1^k (1 − m) + m base2^k` and `Γ_k = m
/// base2^k / Δ_k` with marker `m`. `Δ_0 = 1` falls out of the formula.
/// Fraction `n` has marker-order at least `n`.
fn kernel_fractions(
    order: usize,
    base1: &TruncatedSeries,
    base2: &TruncatedSeries,
    marker: &TruncatedSeries,
    count: usize,
) -> Vec<TruncatedSeries> {
    let one = TruncatedSeries::one(order);
    let one_minus_marker = &one - marker;
    let mut b1_pow = one.clone();
    let mut b2_pow = one.clone();
    let mut inv_deltas: Vec<TruncatedSeries> = Vec::with_capacity(count + 1);
    let mut b2_powers: Vec<TruncatedSeries> = Vec::with_capacity(count + 1);
    for k in 0..=count {
        if k > 0 {
            b1_pow = &b1_pow * base1;
            b2_pow = &b2_pow * base2;
        }
        b2_powers.push(b2_pow.clone());
        let delta = &(&b1_pow * &one_minus_marker) + &(marker * &b2_pow);
        inv_deltas.push(delta.inv().expect("Δ_k has constant coefficient 1"));
    }
    let mut gamma_product = one.clone();
    let mut pieces = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            gamma_product = &gamma_product * &(&(marker * &b2_powers[n]) * &inv_deltas[n]);
        }
        pieces.push(&(&one_minus_marker * &gamma_product) * &(&inv_deltas[n] * &inv_deltas[n + 1]));
    }
    pieces
}

/// The series refined by the ascent and equal-pair statistics (the
/// last-value variable set to 1):
/// `1 + Σ_{n≥0} t (1−u) (1−ty)^n (1+t−ty)^n Π Γ_i / (Δ_n Δ_{n+1})`.
pub fn g_u1yt(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let u = TruncatedSeries::variable(order, Var::U);
    let y = TruncatedSeries::variable(order, Var::Y);
    let base1 = &one - &(&t * &y);
    let base2 = &(&one + &t) - &(&t * &y);
    let pieces = kernel_fractions(order, &base1, &base2, &u, order + 1);
    let base12 = &base1 * &base2;
    let mut pow12 = one.clone();
    let mut sum = TruncatedSeries::zero(order);
    for (n, piece) in pieces.iter().enumerate() {
        if n > 0 {
            pow12 = &pow12 * &base12;
        }
        sum = &sum + &(&pow12 * piece);
    }
    &one + &(&t * &sum)
}

/// Specialization to primitive objects (`y = 0`), built from its own kernel
/// quantities `δ_k = (1−u) + u(1+t)^k` and `γ_k = u(1+t)^k/δ_k`.
pub fn g_primitive(order: usize) -> TruncatedSeries {
    g_primitive_summands(order, order + 1)
}

/// Same construction cut off after `max_row + 1` summands. Summand `n`
/// has `u`-order at least `n`, so the result agrees with [`g_primitive`]
/// on every `u`-row up to `max_row`; higher rows are incomplete. Useful
/// when only the first few rows are wanted at a large `t`-order.
pub fn g_primitive_rows(order: usize, max_row: usize) -> TruncatedSeries {
    g_primitive_summands(order, max_row.min(order) + 1)
}

fn g_primitive_summands(order: usize, count: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let u = TruncatedSeries::variable(order, Var::U);
    let base2 = &one + &t;
    let pieces = kernel_fractions(order, &one, &base2, &u, count);
    let mut pow2 = one.clone();
    let mut sum = TruncatedSeries::zero(order);
    for (n, piece) in pieces.iter().enumerate() {
        if n > 0 {
            pow2 = &pow2 * &base2;
        }
        sum = &sum + &(&pow2 * piece);
    }
    &one + &(&t * &sum)
}

/// The kernel of the defining recurrence: `v − 1 − t − tyv + ty + tuv`.
/// Its constant coefficient is −1, so it is invertible.
pub fn kernel_polynomial(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let u = TruncatedSeries::variable(order, Var::U);
    let v = TruncatedSeries::variable(order, Var::V);
    let y = TruncatedSeries::variable(order, Var::Y);
    let ty = &t * &y;
    &(&(&(&v - &one) - &t) - &(&ty * &v)) + &(&ty + &(&(&t * &u) * &v))
}

/// The full four-variable series refined by all three statistics:
/// `1 + t/kernel · (v − 1 − t Σ_n (1−ty)^n (1+t−ty)^n {(1−u)ΠΓ_i/(Δ_nΔ_{n+1})
/// − uv²(1−uv)ΠΓ̄_i/(Δ̄_nΔ̄_{n+1})})`, where the barred quantities use the
/// marker `uv` in place of `u`.
pub fn g_full(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let u = TruncatedSeries::variable(order, Var::U);
    let v = TruncatedSeries::variable(order, Var::V);
    let y = TruncatedSeries::variable(order, Var::Y);
    let base1 = &one - &(&t * &y);
    let base2 = &(&one + &t) - &(&t * &y);
    let uv = &u * &v;
    let pieces_u = kernel_fractions(order, &base1, &base2, &u, order + 1);
    let pieces_uv = kernel_fractions(order, &base1, &base2, &uv, order + 1);
    let uv2 = &u * &(&v * &v);
    let base12 = &base1 * &base2;
    let mut pow12 = one.clone();
    let mut sum = TruncatedSeries::zero(order);
    for n in 0..=order {
        if n > 0 {
            pow12 = &pow12 * &base12;
        }
        let inner = &pieces_u[n] - &(&uv2 * &pieces_uv[n]);
        sum = &sum + &(&pow12 * &inner);
    }
    let kernel = kernel_polynomial(order);
    let numerator = &(&v - &one) - &(&t * &sum);
    &one + &(&(&t * &numerator) * &kernel.inv().expect("kernel constant is -1"))
}

/// The root of the kernel in `v`: `W = (1+t−ty)/(1+tu−ty)`. Substituting it
/// for `v` annihilates the kernel.
pub fn kernel_root(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let u = TruncatedSeries::variable(order, Var::U);
    let y = TruncatedSeries::variable(order, Var::Y);
    let ty = &t * &y;
    let numerator = &(&one + &t) - &ty;
    let denominator = &(&one + &(&t * &u)) - &ty;
    numerator.div(&denominator).expect("denominator is a unit")
}

/// Left side minus right side of the defining recurrence
/// `H(u,v,y,t)·kernel = t(v−1) − tH(u,1,y,t) + tuv²H(uv,1,y,t)` with
/// `H = g_full − 1`. Identically zero when the closed forms are consistent.
pub fn recurrence_residual(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let t = TruncatedSeries::variable(order, Var::T);
    let u = TruncatedSeries::variable(order, Var::U);
    let v = TruncatedSeries::variable(order, Var::V);
    let h = &g_full(order) - &one;
    let lhs = &h * &kernel_polynomial(order);
    let h_v1 = h.eval_var(Var::V, &BigRational::one());
    let h_uv = h_v1
        .substitute_u_with_uv()
        .expect("H(u,1,y,t) is free of v");
    let tuv2 = &(&t * &u) * &(&v * &v);
    let rhs = &(&(&t * &(&v - &one)) - &(&t * &h_v1)) + &(&tuv2 * &h_uv);
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn coeff(s: &TruncatedSeries, t: usize, u: usize, v: usize, y: usize) -> i64 {
        let c = s.coefficient(Monomial::new(t, u, v, y)).unwrap();
        assert!(c.is_integer(), "expected integer coefficient, got {c}");
        let i: BigInt = c.to_integer();
        i64::try_from(i).unwrap()
    }

    /// Series from `(coefficient, t-exponent, y-exponent)` triples.
    fn poly_ty(order: usize, terms: &[(i64, usize, usize)]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        for &(c, a, d) in terms {
            s = s
                .add(&TruncatedSeries::monomial(order, Monomial::new(a, 0, 0, d), rat(c)).unwrap());
        }
        s
    }

    #[test]
    fn ring_identities() {
        let n = 8;
        let one = TruncatedSeries::one(n);
        let t = TruncatedSeries::variable(n, Var::T);
        let geom = (0..=n).fold(TruncatedSeries::zero(n), |acc, a| {
            acc.add(&TruncatedSeries::monomial(n, Monomial::new(a, 0, 0, 0), rat(1)).unwrap())
        });
        assert_eq!(&(&one - &t) * &geom, one);
        assert_eq!(one.div(&(&one - &t)).unwrap(), geom);
        assert_eq!(coeff(&(&one + &t).pow(3), 2, 0, 0, 0), 3);
    }

    #[test]
    fn division_requires_a_unit() {
        let n = 4;
        let t = TruncatedSeries::variable(n, Var::T);
        assert_eq!(t.inv(), Err(Error::DivisionByNonUnit));
        assert_eq!(
            TruncatedSeries::one(n).div(&t),
            Err(Error::DivisionByNonUnit)
        );
    }

    #[test]
    fn inverse_handles_constant_free_variables() {
        // 1/(1-u) must truncate in u alone
        let n = 5;
        let one = TruncatedSeries::one(n);
        let u = TruncatedSeries::variable(n, Var::U);
        let inv = (&one - &u).inv().unwrap();
        for b in 0..=n {
            assert_eq!(coeff(&inv, 0, b, 0, 0), 1);
        }
    }

    #[test]
    fn composition_point_checks() {
        let n = 8;
        let one = TruncatedSeries::one(n);
        let t = TruncatedSeries::variable(n, Var::T);
        let g = t.div(&(&one - &t)).unwrap(); // t/(1-t)
        assert_eq!(k_series(n).compose_t(&g).unwrap(), p_series(n));
        let h = t.div(&(&one + &t)).unwrap(); // x/(1+x)
        assert_eq!(p_series(n).compose_t(&h).unwrap(), k_series(n));
        assert_eq!(p_series(n).compose_t(&t).unwrap(), p_series(n));
        assert_eq!(p_series(n).compose_t(&one), Err(Error::NonzeroConstantTerm));
        assert_eq!(
            g_u1yt(4).compose_t(&TruncatedSeries::variable(4, Var::T)),
            Err(Error::NotUnivariate)
        );
    }

    #[test]
    fn counting_series_prefixes() {
        let p = p_series(8);
        let expected = [1, 1, 2, 5, 15, 53, 217, 1014, 5335];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(coeff(&p, n, 0, 0, 0), e);
        }

        let k = k_series(7);
        let expected = [1, 1, 1, 2, 5, 16, 61, 271];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(coeff(&k, n, 0, 0, 0), e);
        }
    }

    #[test]
    fn bounded_run_series() {
        assert_eq!(coeff(&bk_series(4, 2), 4, 0, 0, 0), 12);
        assert_eq!(bk_series(7, 1), k_series(7));
        // for k >= n the bound is vacuous
        let p = p_series(6);
        let b = bk_series(6, 6);
        for n in 0..=6 {
            assert_eq!(
                b.coefficient(Monomial::new(n, 0, 0, 0)).unwrap(),
                p.coefficient(Monomial::new(n, 0, 0, 0)).unwrap()
            );
        }
    }

    #[test]
    fn refined_series_low_order_rows() {
        let n = 10;
        let g = g_u1yt(n);
        let one = TruncatedSeries::one(n);
        let t = TruncatedSeries::variable(n, Var::T);
        let y = TruncatedSeries::variable(n, Var::Y);
        let one_minus_ty = &one - &(&t * &y);
        // u^1 row: (t^2(1-ty) + t^3)/(1-ty)^3
        let p1 = &(&(&t * &t) * &one_minus_ty) + &t.pow(3);
        let expected = p1.div(&one_minus_ty.pow(3)).unwrap();
        assert_eq!(g.coefficient_of(Var::U, 1), expected);
        // u^2 row
        let p2 = poly_ty(
            n,
            &[
                (1, 3, 0),
                (4, 4, 0),
                (4, 5, 0),
                (1, 6, 0),
                (-3, 4, 1),
                (-8, 5, 1),
                (-4, 6, 1),
                (3, 5, 2),
                (4, 6, 2),
                (-1, 6, 3),
            ],
        );
        let expected = p2.div(&one_minus_ty.pow(6)).unwrap();
        assert_eq!(g.coefficient_of(Var::U, 2), expected);
    }

    #[test]
    fn refined_series_sums_to_counting_series() {
        let n = 7;
        let counts = g_u1yt(n)
            .eval_var(Var::Y, &BigRational::one())
            .eval_var(Var::U, &BigRational::one());
        let p = p_series(n);
        for a in 0..=n {
            assert_eq!(
                counts.coefficient(Monomial::new(a, 0, 0, 0)).unwrap(),
                p.coefficient(Monomial::new(a, 0, 0, 0)).unwrap()
            );
        }
    }

    #[test]
    fn full_series_pinned_coefficients() {
        let g = g_full(4);
        // t^2 row: uv + y
        assert_eq!(coeff(&g, 2, 1, 1, 0), 1);
        assert_eq!(coeff(&g, 2, 0, 0, 1), 1);
        assert_eq!(
            g.coefficient_of(Var::T, 2).iter().count(),
            2,
            "exactly two monomials at t^2"
        );
        // t^3 row: u + u^2 v^2 + 2uvy + y^2
        assert_eq!(coeff(&g, 3, 1, 0, 0), 1);
        assert_eq!(coeff(&g, 3, 2, 2, 0), 1);
        assert_eq!(coeff(&g, 3, 1, 1, 1), 2);
        assert_eq!(coeff(&g, 3, 0, 0, 2), 1);
        // t^4 row: u^2 + 2u^2v + u^2v^2 + u^3v^3 + 3uy + 3u^2v^2y + 3uvy^2 + y^3
        assert_eq!(coeff(&g, 4, 2, 0, 0), 1);
        assert_eq!(coeff(&g, 4, 2, 1, 0), 2);
        assert_eq!(coeff(&g, 4, 2, 2, 0), 1);
        assert_eq!(coeff(&g, 4, 3, 3, 0), 1);
        assert_eq!(coeff(&g, 4, 1, 0, 1), 3);
        assert_eq!(coeff(&g, 4, 2, 2, 1), 3);
        assert_eq!(coeff(&g, 4, 1, 1, 2), 3);
        assert_eq!(coeff(&g, 4, 0, 0, 3), 1);
        assert_eq!(g.coefficient_of(Var::T, 4).iter().count(), 8);
    }

    #[test]
    fn full_series_specializes_to_three_variables() {
        let n = 6;
        let g = g_full(n).eval_var(Var::V, &BigRational::one());
        assert_eq!(g, g_u1yt(n).eval_var(Var::V, &BigRational::one()));
    }

    #[test]
    fn full_series_degrees_and_integrality() {
        let g = g_full(6);
        assert!(g.has_nonnegative_integer_coefficients());
        for (m, _) in g.iter() {
            assert!(m.u <= m.t && m.v <= m.t && m.y <= m.t);
        }
    }

    #[test]
    fn primitive_series_rows() {
        let g = g_primitive(15);
        // q_0 = t
        let q0 = g.coefficient_of(Var::U, 0);
        assert_eq!(coeff(&q0, 0, 0, 0, 0), 1, "constant 1 plus q_0");
        assert_eq!(coeff(&q0, 1, 0, 0, 0), 1);
        assert!((2..=15).all(|a| coeff(&q0, a, 0, 0, 0) == 0));
        // q_2 = t^3 + 4t^4 + 4t^5 + t^6
        let q2 = g.coefficient_of(Var::U, 2);
        let expected = poly_ty(15, &[(1, 3, 0), (4, 4, 0), (4, 5, 0), (1, 6, 0)]);
        assert_eq!(q2, expected);
        // q_4 ends ... + 13t^14 + t^15
        let q4 = g.coefficient_of(Var::U, 4);
        assert_eq!(coeff(&q4, 14, 0, 0, 0), 13);
        assert_eq!(coeff(&q4, 15, 0, 0, 0), 1);

        assert_eq!(
            g_u1yt(8).eval_var(Var::Y, &BigRational::zero()),
            g_primitive(8)
        );
    }

    #[test]
    fn row_bounded_primitive_series_agrees_on_low_rows() {
        let full = g_primitive(10);
        let bounded = g_primitive_rows(10, 3);
        for i in 0..=3 {
            assert_eq!(
                bounded.coefficient_of(Var::U, i),
                full.coefficient_of(Var::U, i)
            );
        }
    }

    #[test]
    fn kernel_root_annihilates_the_kernel() {
        let n = 8;
        let w = kernel_root(n);
        assert!(kernel_polynomial(n).substitute_v(&w).is_zero());
        assert_eq!(
            w.eval_var(Var::U, &BigRational::one()),
            TruncatedSeries::one(n)
        );
        assert!(recurrence_residual(8).is_zero());
        assert_eq!(
            g_full(4).substitute_u_with_uv(),
            Err(Error::VariablePresent('v'))
        );
    }

    #[test]
    fn coefficient_access() {
        let p = p_series(8);
        assert_eq!(coeff(&p, 6, 0, 0, 0), 217);
        assert_eq!(coeff(&g_full(4), 2, 1, 1, 0), 1);
        assert_eq!(
            TruncatedSeries::zero(4)
                .coefficient(Monomial::new(3, 0, 0, 0))
                .unwrap(),
            BigRational::zero()
        );
        assert_eq!(
            p.coefficient(Monomial::new(9, 0, 0, 0)),
            Err(Error::ExponentOutOfBounds { order: 8 })
        );
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(
            (
                0..=order,
                0..=order,
                0..=order,
                0..=order,
                -4i64..=4,
                1i64..=3,
            ),
            0..6,
        )
        .prop_map(move |terms| {
            let mut s = TruncatedSeries::zero(order);
            for (a, b, c, d, num, den) in terms {
                let term = TruncatedSeries::monomial(
                    order,
                    Monomial::new(a, b, c, d),
                    BigRational::new(BigInt::from(num), BigInt::from(den)),
                )
                .unwrap();
                s = s.add(&term);
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(a in arb_series(3), b in arb_series(3), c in arb_series(3)) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), TruncatedSeries::zero(3));
        }

        #[test]
        fn units_invert(a in arb_series(3)) {
            let unit = a.add(&TruncatedSeries::one(3)).sub(
                &TruncatedSeries::constant(3, a.coefficient(Monomial::ONE).unwrap()),
            );
            let inv = unit.inv().unwrap();
            prop_assert_eq!(unit.mul(&inv), TruncatedSeries::one(3));
        }
    }
}
