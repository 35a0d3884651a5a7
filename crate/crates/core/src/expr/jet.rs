//! Truncated Taylor arithmetic.
//!
//! `Taylor<N>` holds the normalized coefficients `c[k] = f^(k)(x0) / k!` of a
//! function of one variable around `x0`, truncated after `N` terms. Every
//! elementary function is propagated with the usual coefficient recurrences
//! so the derivatives that come out are exact up to rounding.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::fresnel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor<const N: usize>(pub [f64; N]);

impl<const N: usize> Taylor<N> {
    pub fn constant(c: f64) -> Self {
        let mut a = [0.0; N];
        a[0] = c;
        Taylor(a)
    }

    /// The seed variable `x` expanded around `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut a = [0.0; N];
        a[0] = x0;
        if N > 1 {
            a[1] = 1.0;
        }
        Taylor(a)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `k`-th derivative, i.e. `k! * c[k]`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scale(self, k: f64) -> Self {
        Taylor(self.0.map(|c| c * k))
    }

    /// `sum_{j=1..k} j u_j w_{k-j} / k`, the recurrence shared by every
    /// function whose derivative is `w * u'`.
    fn chain_term(u: &[f64; N], w: &[f64; N], k: usize) -> f64 {
        (1..=k).map(|j| j as f64 * u[j] * w[k - j]).sum::<f64>() / k as f64
    }

    /// Caller guarantees `self.value() != 0`.
    pub fn recip(self) -> Self {
        Taylor::constant(1.0) / self
    }

    pub fn exp(self) -> Self {
        let u = &self.0;
        let mut e = [0.0; N];
        e[0] = u[0].exp();
        for k in 1..N {
            e[k] = Self::chain_term(u, &e, k);
        }
        Taylor(e)
    }

    /// Caller guarantees `self.value() > 0`.
    pub fn ln(self) -> Self {
        let u = &self.0;
        let mut l = [0.0; N];
        l[0] = u[0].ln();
        for k in 1..N {
            let acc: f64 = (1..k).map(|j| j as f64 * l[j] * u[k - j]).sum::<f64>() / k as f64;
            l[k] = (u[k] - acc) / u[0];
        }
        Taylor(l)
    }

    pub fn sin_cos(self) -> (Self, Self) {
        let u = &self.0;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        (s[0], c[0]) = u[0].sin_cos();
        for k in 1..N {
            s[k] = Self::chain_term(u, &c, k);
            c[k] = -Self::chain_term(u, &s, k);
        }
        (Taylor(s), Taylor(c))
    }

    pub fn sinh_cosh(self) -> (Self, Self) {
        let u = &self.0;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = u[0].sinh();
        c[0] = u[0].cosh();
        for k in 1..N {
            s[k] = Self::chain_term(u, &c, k);
            c[k] = Self::chain_term(u, &s, k);
        }
        (Taylor(s), Taylor(c))
    }

    /// Caller guarantees `cos(self.value()) != 0`.
    pub fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    /// Caller guarantees `self.value() > 0` (or `>= 0` when `N == 1`).
    pub fn sqrt(self) -> Self {
        let u = &self.0;
        let mut r = [0.0; N];
        r[0] = u[0].sqrt();
        for k in 1..N {
            let acc: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (u[k] - acc) / (2.0 * r[0]);
        }
        Taylor(r)
    }

    /// Integer power by repeated squaring; negative exponents need a
    /// non-zero value.
    pub fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Taylor::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Real power with a positive base.
    pub fn powf(self, a: f64) -> Self {
        let u = &self.0;
        let mut p = [0.0; N];
        p[0] = u[0].powf(a);
        for k in 1..N {
            let acc: f64 = (0..k)
                .map(|j| (a * (k - j) as f64 - j as f64) * u[k - j] * p[j])
                .sum();
            p[k] = acc / (k as f64 * u[0]);
        }
        Taylor(p)
    }

    /// `sign(u) * u`, with `sign(0) = +1`.
    pub fn abs(self) -> Self {
        if self.0[0] < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Fresnel sine integral composed with `self`; its derivative is
    /// `sin(pi u^2 / 2) u'`.
    pub fn fresnel_s(self) -> Self {
        let (w, _) = (self * self).scale(FRAC_PI_2).sin_cos();
        self.integrate_chain(fresnel::fresnel_s(self.0[0]), &w)
    }

    /// Fresnel cosine integral composed with `self`; its derivative is
    /// `cos(pi u^2 / 2) u'`.
    pub fn fresnel_c(self) -> Self {
        let (_, w) = (self * self).scale(FRAC_PI_2).sin_cos();
        self.integrate_chain(fresnel::fresnel_c(self.0[0]), &w)
    }

    fn integrate_chain(self, value: f64, w: &Self) -> Self {
        let mut out = [0.0; N];
        out[0] = value;
        for k in 1..N {
            out[k] = Self::chain_term(&self.0, &w.0, k);
        }
        Taylor(out)
    }
}

impl<const N: usize> Add for Taylor<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(rhs.0) {
            *x += y;
        }
        Taylor(a)
    }
}

impl<const N: usize> Sub for Taylor<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(rhs.0) {
            *x -= y;
        }
        Taylor(a)
    }
}

impl<const N: usize> Neg for Taylor<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Taylor(self.0.map(|c| -c))
    }
}

impl<const N: usize> Mul for Taylor<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut w = [0.0; N];
        for (k, wk) in w.iter_mut().enumerate() {
            *wk = (0..=k).map(|j| self.0[j] * rhs.0[k - j]).sum();
        }
        Taylor(w)
    }
}

impl<const N: usize> Mul<f64> for Taylor<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Div for Taylor<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let b = &rhs.0;
        let mut q = [0.0; N];
        for k in 0..N {
            let acc: f64 = (0..k).map(|j| q[j] * b[k - j]).sum();
            q[k] = (self.0[k] - acc) / b[0];
        }
        Taylor(q)
    }
}

/// Value and first three derivatives of an expression with respect to one
/// variable at one point.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Jet3 {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl From<Taylor<4>> for Jet3 {
    fn from(t: Taylor<4>) -> Self {
        Jet3 {
            c0: t.derivative(0),
            c1: t.derivative(1),
            c2: t.derivative(2),
            c3: t.derivative(3),
        }
    }
}

impl From<Jet3> for Taylor<4> {
    fn from(j: Jet3) -> Self {
        Taylor([j.c0, j.c1, j.c2 / 2.0, j.c3 / 6.0])
    }
}
