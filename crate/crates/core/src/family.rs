//! The family `f(x) = x(x^s - a)^t` with `st = q^m - 1` over `F_{q^n}`:
//! permutation criterion, compositional inverse (pointwise and in the
//! `x(A g(x) h(x))^t` closed form), the linearized binomial `x^(q^m) - a x`,
//! and the gcd identity that drives the `t = 2` case split.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::intmath;
use crate::poly::{self, DensePoly, SparsePoly};

/// Validated family parameters `(m, s, t)` over a field, with the derived
/// `d = gcd(m, n)`, `s_bar = gcd(s, Q - 1)` and `u = gcd(t, (Q - 1)/s_bar)`.
#[derive(Clone, Debug)]
pub struct PPParams {
    ctx: Arc<FieldCtx>,
    m: u32,
    s: u64,
    t: u64,
    d: u32,
    s_bar: u64,
    u: u64,
    /// `(Q - 1)/s_bar`
    criterion_exp: u64,
    /// `(q^n - 1)/(q^d - 1)`
    norm_exp: u64,
    /// `(q^(im) - 1)/(q^m - 1)` for `i = 1..=n/d`.
    coeff_exps: Vec<BigUint>,
    /// `(q^((i-1)m) - 1)/t` for `i = 1..=n/d`.
    power_exps: Vec<BigUint>,
}

impl PPParams {
    /// Checks `1 <= m <= n`, `s, t >= 1` and `st = q^m - 1`.
    pub fn new(ctx: Arc<FieldCtx>, m: u32, s: u64, t: u64) -> Result<Self> {
        let n = ctx.n();
        if m == 0 || m > n {
            return Err(Error::MOutOfRange { m, max: n });
        }
        if s == 0 || t == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = ctx.q();
        let qm = intmath::big_pow(q, m as u64);
        let target = &qm - 1u32;
        if BigUint::from(s) * t != target {
            return Err(Error::RelationViolated {
                s,
                t,
                expected: target.to_string(),
            });
        }

        let group = ctx.order() - 1;
        let d = m.gcd(&n);
        let s_bar = s.gcd(&group);
        let u = t.gcd(&(group / s_bar));
        let norm_exp = ctx
            .norm_exponent(d)?
            .to_u64()
            .expect("norm exponent below Q");

        let terms = (n / d) as u64;
        let coeff_exps: Vec<BigUint> = (1..=terms)
            .map(|i| intmath::geometric_sum(q, m as u64, i))
            .collect();
        let power_exps: Vec<BigUint> = (1..=terms)
            .map(|i| {
                let num = intmath::big_pow(q, (i - 1) * m as u64) - 1u32;
                let (quot, rem) = num.div_rem(&BigUint::from(t));
                assert!(rem.is_zero(), "t must divide q^((i-1)m) - 1");
                quot
            })
            .collect();

        debug_assert_eq!(m % d, 0);
        debug_assert_eq!(group % s_bar, 0);
        debug_assert_eq!(t % u, 0);
        Ok(PPParams {
            ctx,
            m,
            s,
            t,
            d,
            s_bar,
            u,
            criterion_exp: group / s_bar,
            norm_exp,
            coeff_exps,
            power_exps,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn s_bar(&self) -> u64 {
        self.s_bar
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    /// Number of terms `n/d` in `h`.
    pub fn h_terms(&self) -> usize {
        self.coeff_exps.len()
    }

    /// `(Q - 1)/s_bar`, the exponent in the criterion.
    pub fn criterion_exponent(&self) -> u64 {
        self.criterion_exp
    }

    /// `N_{q^n/q^d}(a)`.
    pub fn norm(&self, a: Elem) -> Elem {
        self.ctx.pow_u64(a, self.norm_exp)
    }

    /// `a^((Q-1)/s_bar)`; the family permutes the field iff this is not 1.
    pub fn criterion_value(&self, a: Elem) -> Elem {
        self.ctx.pow_u64(a, self.criterion_exp)
    }

    pub fn is_pp(&self, a: Elem) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(self.criterion_value(a) != Elem::ONE)
    }

    /// `x (x^s - a)^t`.
    pub fn eval_f(&self, a: Elem, x: Elem) -> Elem {
        let ctx = &*self.ctx;
        let inner = ctx.sub(ctx.pow_u64(x, self.s), a);
        ctx.mul(x, ctx.pow_u64(inner, self.t))
    }

    fn require_pp(&self, a: Elem) -> Result<()> {
        if self.is_pp(a)? {
            Ok(())
        } else {
            Err(Error::NotPermutation {
                s: self.s,
                t: self.t,
                a: a.index(),
            })
        }
    }

    /// `a^(-(q^(im)-1)/(q^m-1))` for `i = 1..=n/d`.
    fn h_coefficients(&self, a: Elem) -> Result<Vec<Elem>> {
        let a_inv = self.ctx.inv(a)?;
        Ok(self
            .coeff_exps
            .iter()
            .map(|e| self.ctx.pow(a_inv, e))
            .collect())
    }

    /// `h(x) = sum_{i=1}^{n/d} a^(-(q^(im)-1)/(q^m-1)) x^((q^((i-1)m)-1)/t)`.
    pub fn h_eval(&self, a: Elem, x: Elem) -> Result<Elem> {
        let ctx = &*self.ctx;
        let coeffs = self.h_coefficients(a)?;
        Ok(coeffs
            .iter()
            .zip(&self.power_exps)
            .fold(Elem::ZERO, |acc, (&c, k)| {
                ctx.add(acc, ctx.mul(c, ctx.pow(x, k)))
            }))
    }

    /// Precomputes everything in the pointwise inverse that depends only on `a`.
    pub fn prepare_inverse(&self, a: Elem) -> Result<PointwiseInverse<'_>> {
        self.require_pp(a)?;
        let power_exps = self
            .power_exps
            .iter()
            .map(|e| self.ctx.reduce_exponent(e))
            .collect();
        Ok(PointwiseInverse {
            params: self,
            norm_a: self.norm(a),
            coeffs: self.h_coefficients(a)?,
            power_exps,
        })
    }

    /// `f^{-1}(y) = y (N(a)/(N(y^s) - N(a)) * sum_i a^(-(q^(im)-1)/(q^m-1)) y^((q^((i-1)m)-1)/t))^t`
    /// with `N = N_{q^n/q^d}`.
    pub fn inverse_pointwise(&self, a: Elem, y: Elem) -> Result<Elem> {
        self.prepare_inverse(a)?.eval(y)
    }

    /// The components `A`, `g`, `h` of `f^{-1}(x) = x (A g(x) h(x))^t`.
    pub fn build_closed_inverse(&self, a: Elem) -> Result<ClosedInverse> {
        self.require_pp(a)?;
        let ctx = &*self.ctx;
        let norm_a = self.norm(a);
        let big_a = ctx.div(norm_a, ctx.sub(Elem::ONE, self.criterion_value(a)))?;

        // g: exponents (q^n-1)/(q^d-1) * s * (l-1), coefficients N(a)^(u-l)
        let step = BigUint::from(self.norm_exp) * self.s;
        let g = SparsePoly::from_terms(
            ctx,
            (1..=self.u).map(|l| (&step * (l - 1), ctx.pow_u64(norm_a, self.u - l))),
        );
        let h = SparsePoly::from_terms(
            ctx,
            self.power_exps.iter().cloned().zip(self.h_coefficients(a)?),
        );
        Ok(ClosedInverse {
            ctx: self.ctx.clone(),
            a,
            big_a,
            g,
            h,
            t: self.t,
        })
    }

    /// The closed-form inverse expanded and reduced mod `x^Q - x`.
    pub fn closed_inverse_poly(&self, a: Elem) -> Result<DensePoly> {
        self.build_closed_inverse(a)?.to_poly()
    }
}

/// `f^{-1}` for a fixed `a`, ready for repeated pointwise evaluation.
#[derive(Clone, Debug)]
pub struct PointwiseInverse<'a> {
    params: &'a PPParams,
    norm_a: Elem,
    coeffs: Vec<Elem>,
    power_exps: Vec<u64>,
}

impl PointwiseInverse<'_> {
    pub fn eval(&self, y: Elem) -> Result<Elem> {
        let ctx = &*self.params.ctx;
        let norm_ys = self.params.norm(ctx.pow_u64(y, self.params.s));
        let factor = ctx.div(self.norm_a, ctx.sub(norm_ys, self.norm_a))?;
        let sum = self
            .coeffs
            .iter()
            .zip(&self.power_exps)
            .fold(Elem::ZERO, |acc, (&c, &k)| {
                ctx.add(acc, ctx.mul(c, ctx.pow_u64(y, k)))
            });
        Ok(ctx.mul(y, ctx.pow_u64(ctx.mul(factor, sum), self.params.t)))
    }
}

/// `f^{-1}(x) = x (A g(x) h(x))^t`.
#[derive(Clone, Debug)]
pub struct ClosedInverse {
    ctx: Arc<FieldCtx>,
    a: Elem,
    big_a: Elem,
    g: SparsePoly,
    h: SparsePoly,
    t: u64,
}

impl ClosedInverse {
    pub fn a(&self) -> Elem {
        self.a
    }

    /// `A = N(a) / (1 - a^((Q-1)/s_bar))`.
    pub fn big_a(&self) -> Elem {
        self.big_a
    }

    pub fn g(&self) -> &SparsePoly {
        &self.g
    }

    pub fn h(&self) -> &SparsePoly {
        &self.h
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn eval(&self, y: Elem) -> Elem {
        let ctx = &*self.ctx;
        let inner = ctx.mul(
            self.big_a,
            ctx.mul(self.g.eval(ctx, y), self.h.eval(ctx, y)),
        );
        ctx.mul(y, ctx.pow_u64(inner, self.t))
    }

    pub fn to_poly(&self) -> Result<DensePoly> {
        let ctx = &*self.ctx;
        let gh = poly::mul_mod(ctx, &self.g.to_dense(ctx), &self.h.to_dense(ctx));
        let inner = poly::scale(ctx, &gh, self.big_a);
        let powered = poly::pow_mod(ctx, &inner, &BigUint::from(self.t));
        Ok(poly::mul_mod(ctx, &DensePoly::x(), &powered))
    }
}

pub fn eval_closed_inverse(ci: &ClosedInverse, y: Elem) -> Elem {
    ci.eval(y)
}

/// Every `(m, s, t)` with `1 <= m <= n` and `st = q^m - 1`, ordered by `m` then `s`.
pub fn all_params(ctx: &Arc<FieldCtx>) -> Vec<PPParams> {
    let mut out = Vec::new();
    for m in 1..=ctx.n() {
        let target = ctx.q().pow(m) - 1;
        for s in intmath::divisors(target) {
            out.push(PPParams::new(ctx.clone(), m, s, target / s).expect("divisor pair"));
        }
    }
    out
}

// ---- linearized binomial x^(q^m) - a x ----

/// Range policy for the linearized binomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinearizedOptions {
    /// Also accept `m = n`, where `L(x) = (1 - a) x`.
    pub allow_full_degree: bool,
}

fn check_linearized_range(ctx: &FieldCtx, m: u32, opts: LinearizedOptions) -> Result<()> {
    let max = if opts.allow_full_degree {
        ctx.n()
    } else {
        ctx.n() - 1
    };
    if m == 0 || m > max {
        return Err(Error::MOutOfRange { m, max });
    }
    Ok(())
}

/// `L(x) = x^(q^m) - a x`, reduced.
pub fn lin_binomial(ctx: &FieldCtx, m: u32, a: Elem) -> DensePoly {
    let top = intmath::big_pow(ctx.q(), m as u64);
    let one = BigUint::one();
    DensePoly::from_terms(ctx, [(&top, Elem::ONE), (&one, ctx.neg(a))])
}

/// `L` permutes `F_{q^n}` iff `N_{q^n/q^d}(a) != 1`, `d = gcd(m, n)`.
pub fn lin_binomial_is_pp(
    ctx: &FieldCtx,
    m: u32,
    a: Elem,
    opts: LinearizedOptions,
) -> Result<bool> {
    check_linearized_range(ctx, m, opts)?;
    if a.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    Ok(ctx.norm(a, m.gcd(&ctx.n()))? != Elem::ONE)
}

/// `L^{-1}(x) = N/(1 - N) * sum_{i=1}^{n/d} a^(-(q^(im)-1)/(q^m-1)) x^(q^((i-1)m))`, `N = N_{q^n/q^d}(a)`.
pub fn lin_binomial_inverse(
    ctx: &FieldCtx,
    m: u32,
    a: Elem,
    opts: LinearizedOptions,
) -> Result<SparsePoly> {
    if !lin_binomial_is_pp(ctx, m, a, opts)? {
        return Err(Error::LinearizedNotPermutation { m, a: a.index() });
    }
    let d = m.gcd(&ctx.n());
    let norm = ctx.norm(a, d)?;
    let lead = ctx.div(norm, ctx.sub(Elem::ONE, norm))?;
    let a_inv = ctx.inv(a)?;
    let q = ctx.q();
    let terms = (1..=(ctx.n() / d) as u64).map(|i| {
        let coeff = ctx.pow(a_inv, &intmath::geometric_sum(q, m as u64, i));
        (
            intmath::big_pow(q, (i - 1) * m as u64),
            ctx.mul(lead, coeff),
        )
    });
    Ok(SparsePoly::from_terms(ctx, terms))
}

// ---- gcd identity ----

/// `gcd((b^m - 1)/2, b^n - 1)` for odd `b >= 3` in closed form:
/// `b^d - 1` when `m/d` is even, `(b^d - 1)/2` when `m/d` is odd, `d = gcd(m, n)`.
pub fn gcd_halfpower(base: u64, m: u32, n: u32) -> Result<BigUint> {
    if base < 3 || base.is_multiple_of(2) {
        return Err(Error::BadOddBase(base));
    }
    if m == 0 || n == 0 {
        return Err(Error::ZeroDegree { e: m, n });
    }
    let d = m.gcd(&n);
    let full = intmath::big_pow(base, d as u64) - 1u32;
    Ok(if (m / d).is_multiple_of(2) {
        full
    } else {
        full >> 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, e: u32, n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, e, n).unwrap())
    }

    /// Inverse by exhaustive search, independent of every formula above.
    fn brute_inverse(params: &PPParams, a: Elem, y: Elem) -> Elem {
        let mut hits = params
            .ctx()
            .elements()
            .filter(|&x| params.eval_f(a, x) == y);
        let x = hits.next().expect("y has a preimage");
        assert!(hits.next().is_none(), "f is not injective");
        x
    }

    #[test]
    fn validate_examples() {
        let f49 = field(7, 1, 2);
        let p = PPParams::new(f49, 1, 3, 2).unwrap();
        assert_eq!((p.d(), p.s_bar(), p.u()), (1, 3, 2));

        let f25 = field(5, 1, 2);
        assert!(matches!(
            PPParams::new(f25.clone(), 1, 2, 3),
            Err(Error::RelationViolated { .. })
        ));
        let p = PPParams::new(f25.clone(), 1, 4, 1).unwrap();
        assert_eq!((p.d(), p.s_bar(), p.u()), (1, 4, 1));

        assert_eq!(
            PPParams::new(f25.clone(), 0, 4, 1).unwrap_err(),
            Error::MOutOfRange { m: 0, max: 2 }
        );
        assert_eq!(
            PPParams::new(f25.clone(), 3, 4, 1).unwrap_err(),
            Error::MOutOfRange { m: 3, max: 2 }
        );
        assert_eq!(
            PPParams::new(f25, 1, 0, 4).unwrap_err(),
            Error::ZeroExponent
        );
    }

    #[test]
    fn criterion_examples() {
        let f5 = field(5, 1, 1);
        let p = PPParams::new(f5.clone(), 1, 2, 2).unwrap();
        assert!(p.is_pp(f5.from_int(2)).unwrap());
        assert!(!p.is_pp(f5.from_int(4)).unwrap());
        assert_eq!(p.is_pp(Elem::ZERO), Err(Error::ZeroCoefficient));
        for params in all_params(&field(3, 1, 3)) {
            assert!(!params.is_pp(Elem::ONE).unwrap());
        }
    }

    #[test]
    fn eval_f_examples() {
        let f5 = field(5, 1, 1);
        let p = PPParams::new(f5.clone(), 1, 2, 2).unwrap();
        assert_eq!(p.eval_f(f5.from_int(2), f5.from_int(2)), f5.from_int(3));
        let f7 = field(7, 1, 1);
        let p = PPParams::new(f7.clone(), 1, 2, 3).unwrap();
        assert_eq!(p.eval_f(f7.from_int(3), f7.from_int(6)), f7.from_int(1));
        for params in all_params(&f7) {
            for a in f7.nonzero_elements() {
                assert_eq!(params.eval_f(a, Elem::ZERO), Elem::ZERO);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let f5 = field(5, 1, 1);
        let p = PPParams::new(f5.clone(), 1, 2, 2).unwrap();
        let a = f5.from_int(2);
        assert_eq!(
            p.inverse_pointwise(a, f5.from_int(3)).unwrap(),
            f5.from_int(2)
        );
        assert_eq!(p.inverse_pointwise(a, Elem::ZERO).unwrap(), Elem::ZERO);
        assert!(matches!(
            p.inverse_pointwise(f5.from_int(4), Elem::ONE),
            Err(Error::NotPermutation { .. })
        ));

        let f7 = field(7, 1, 1);
        let p = PPParams::new(f7.clone(), 1, 3, 2).unwrap();
        assert_eq!(
            p.inverse_pointwise(f7.from_int(2), f7.from_int(6)).unwrap(),
            f7.from_int(3)
        );
    }

    #[test]
    fn closed_inverse_components_f5() {
        let f5 = field(5, 1, 1);
        let p = PPParams::new(f5.clone(), 1, 2, 2).unwrap();
        let ci = p.build_closed_inverse(f5.from_int(2)).unwrap();
        assert_eq!(ci.big_a(), Elem::ONE);
        assert_eq!(ci.g().terms(), &[(0, f5.from_int(2)), (2, Elem::ONE)]);
        assert_eq!(ci.h().terms(), &[(0, f5.from_int(3))]);
        let mut cube = vec![Elem::ZERO; 4];
        cube[3] = Elem::ONE;
        assert_eq!(ci.to_poly().unwrap(), DensePoly::from_coeffs(cube));
        for y in f5.elements() {
            assert_eq!(
                eval_closed_inverse(&ci, y),
                brute_inverse(&p, f5.from_int(2), y)
            );
        }
    }

    #[test]
    fn closed_inverse_term_counts() {
        for ctx in [
            field(3, 1, 4),
            field(2, 2, 3),
            field(5, 1, 2),
            field(7, 1, 2),
        ] {
            for params in all_params(&ctx) {
                if let Some(a) = ctx.nonzero_elements().find(|&a| params.is_pp(a).unwrap()) {
                    let ci = params.build_closed_inverse(a).unwrap();
                    assert_eq!(ci.g().len() as u64, params.u());
                    assert_eq!(ci.h().len(), params.h_terms());
                }
            }
        }
    }

    #[test]
    fn inverse_matches_brute_force_f27() {
        let ctx = field(3, 1, 3);
        for params in all_params(&ctx) {
            for a in ctx.nonzero_elements() {
                if !params.is_pp(a).unwrap() {
                    continue;
                }
                let inv = params.prepare_inverse(a).unwrap();
                let ci = params.build_closed_inverse(a).unwrap();
                for y in ctx.elements() {
                    let want = brute_inverse(&params, a, y);
                    assert_eq!(inv.eval(y).unwrap(), want);
                    assert_eq!(ci.eval(y), want);
                }
            }
        }
    }

    #[test]
    fn full_degree_m_equal_n() {
        // m = n: d = n and h has a single term
        let ctx = field(2, 2, 2);
        let params = PPParams::new(ctx.clone(), 2, 5, 3).unwrap();
        assert_eq!(params.d(), 2);
        assert_eq!(params.h_terms(), 1);
        for a in ctx.nonzero_elements().filter(|&a| params.is_pp(a).unwrap()) {
            for y in ctx.elements() {
                assert_eq!(
                    params.inverse_pointwise(a, y).unwrap(),
                    brute_inverse(&params, a, y)
                );
            }
        }
    }

    #[test]
    fn linearized_f9_example() {
        let ctx = field(3, 1, 2);
        let opts = LinearizedOptions::default();
        let a = ctx.from_coeffs(&[1, 1]).unwrap();
        assert!(lin_binomial_is_pp(&ctx, 1, a, opts).unwrap());
        let inv = lin_binomial_inverse(&ctx, 1, a, opts).unwrap();
        let two_plus_i = ctx.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(inv.terms(), &[(1, two_plus_i), (3, ctx.from_int(2))]);
        let l = lin_binomial(&ctx, 1, a);
        assert_eq!(
            poly::eval(&ctx, &inv.to_dense(&ctx), poly::eval(&ctx, &l, Elem::ONE)),
            Elem::ONE
        );

        let i = ctx.from_coeffs(&[0, 1]).unwrap();
        assert!(!lin_binomial_is_pp(&ctx, 1, i, opts).unwrap());
        assert!(matches!(
            lin_binomial_inverse(&ctx, 1, i, opts),
            Err(Error::LinearizedNotPermutation { .. })
        ));
    }

    #[test]
    fn linearized_range_flag() {
        let ctx = field(3, 1, 2);
        let a = ctx.from_int(2);
        let strict = LinearizedOptions::default();
        assert_eq!(
            lin_binomial_is_pp(&ctx, 2, a, strict),
            Err(Error::MOutOfRange { m: 2, max: 1 })
        );
        assert_eq!(
            lin_binomial_is_pp(&ctx, 0, a, strict),
            Err(Error::MOutOfRange { m: 0, max: 1 })
        );
        let full = LinearizedOptions {
            allow_full_degree: true,
        };
        // m = n: L(x) = (1 - a)x, inverse x/(1 - a)
        let inv = lin_binomial_inverse(&ctx, 2, a, full).unwrap();
        let want = ctx.inv(ctx.sub(Elem::ONE, a)).unwrap();
        assert_eq!(inv.terms(), &[(1, want)]);
        assert!(!lin_binomial_is_pp(&ctx, 2, Elem::ONE, full).unwrap());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_halfpower(3, 2, 4).unwrap(), BigUint::from(4u32));
        assert_eq!(gcd_halfpower(3, 2, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(gcd_halfpower(3, 1, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(gcd_halfpower(4, 1, 1), Err(Error::BadOddBase(4)));
        assert_eq!(gcd_halfpower(1, 1, 1), Err(Error::BadOddBase(1)));
    }
}
