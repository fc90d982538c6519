//! Explicit inverses for `t = 2` and for the small-characteristic families
//! `x(x^2 - a)^2` over `F_{5^n}`, `x(x^3 - a)^2` and `x(x^2 - a)^3` over `F_{7^n}`.
//!
//! Each form is written out term by term, including the multinomial tables,
//! and never calls into the general inverse in [`crate::family`]; the two are
//! compared against each other in the tests.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::PPParams;
use crate::field::{Elem, FieldCtx};
use crate::intmath;

/// Multinomial coefficients for expanding a square or a cube of a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultinomialTable {
    Square,
    Cube,
}

impl MultinomialTable {
    pub fn arity(self) -> usize {
        match self {
            MultinomialTable::Square => 2,
            MultinomialTable::Cube => 3,
        }
    }

    pub fn get(self, idx: &[u32]) -> Result<u32> {
        if idx.len() != self.arity() {
            return Err(Error::Parse(format!(
                "expected {} indices, got {}",
                self.arity(),
                idx.len()
            )));
        }
        match self {
            MultinomialTable::Square => b2(idx[0], idx[1]),
            MultinomialTable::Cube => b3(idx[0], idx[1], idx[2]),
        }
    }

    /// Nondecreasing index tuples over `1..=len`, in lexicographic order.
    pub fn tuples(self, len: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.arity());
        push_tuples(self.arity(), 1, len, &mut cur, &mut out);
        out
    }
}

fn push_tuples(arity: usize, from: u32, len: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == arity {
        out.push(cur.clone());
        return;
    }
    for i in from..=len {
        cur.push(i);
        push_tuples(arity, i, len, cur, out);
        cur.pop();
    }
}

/// 1 if `i = j`, 2 if `i < j`.
pub fn b2(i: u32, j: u32) -> Result<u32> {
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => Ok(1),
        std::cmp::Ordering::Less => Ok(2),
        std::cmp::Ordering::Greater => Err(Error::DecreasingIndices(vec![i, j])),
    }
}

/// 1 if `i = j = k`, 3 if exactly two coincide, 6 if `i < j < k`.
pub fn b3(i: u32, j: u32, k: u32) -> Result<u32> {
    if i > j || j > k {
        return Err(Error::DecreasingIndices(vec![i, j, k]));
    }
    Ok(match (i == j, j == k) {
        (true, true) => 1,
        (false, false) => 6,
        _ => 3,
    })
}

fn exact_div(num: BigUint, den: u64) -> BigUint {
    let (quot, rem) = num.div_rem(&BigUint::from(den));
    assert!(rem.is_zero(), "exponent must be an integer");
    quot
}

fn pow_big(base: u64, exp: u64) -> BigUint {
    intmath::big_pow(base, exp)
}

fn require_char(ctx: &FieldCtx, form: &'static str, p: u64) -> Result<()> {
    if ctx.p() != p || ctx.e() != 1 {
        return Err(Error::SpecialFormInapplicable {
            form,
            requirement: format!("the field F_{p}^n written as {p}^1^n (got {})", ctx.spec()),
        });
    }
    Ok(())
}

fn require_nonzero(a: Elem) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroCoefficient)
    } else {
        Ok(())
    }
}

/// One term `coeff * x^exp` of a materialized sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Term {
    coeff: Elem,
    exp: u64,
}

fn eval_terms(ctx: &FieldCtx, terms: &[Term], x: Elem) -> Elem {
    terms.iter().fold(Elem::ZERO, |acc, t| {
        ctx.add(acc, ctx.mul(t.coeff, ctx.pow_u64(x, t.exp)))
    })
}

// ---- t = 2 ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `h_2(x) = sum_{1<=i<=j<=n/d} a^(-(q^(im)+q^(jm)-2)/(q^m-1)) b_ij x^((q^((i-1)m)+q^((j-1)m))/2)`.
fn h2_terms(ctx: &FieldCtx, m: u32, a: Elem) -> Result<Vec<Term>> {
    let a_inv = ctx.inv(a)?;
    let (q, m64) = (ctx.q(), m as u64);
    let len = ctx.n() / m.gcd(&ctx.n());
    let qm1 = ctx.q().pow(m) - 1;
    let mut terms = Vec::new();
    for idx in MultinomialTable::Square.tuples(len) {
        let (i, j) = (idx[0] as u64, idx[1] as u64);
        let b = ctx.from_int(b2(idx[0], idx[1])? as i64);
        let a_exp = exact_div(pow_big(q, i * m64) + pow_big(q, j * m64) - 2u32, qm1);
        let x_exp = exact_div(pow_big(q, (i - 1) * m64) + pow_big(q, (j - 1) * m64), 2);
        terms.push(Term {
            coeff: ctx.mul(ctx.pow(a_inv, &a_exp), b),
            exp: ctx.reduce_exponent(&x_exp),
        });
    }
    Ok(terms)
}

fn check_t2_domain(ctx: &FieldCtx, m: u32) -> Result<()> {
    if ctx.q().is_multiple_of(2) {
        return Err(Error::SpecialFormInapplicable {
            form: "thm31",
            requirement: "odd q".into(),
        });
    }
    if m == 0 || m >= ctx.n() {
        return Err(Error::MOutOfRange {
            m,
            max: ctx.n() - 1,
        });
    }
    Ok(())
}

/// `h_2(x)` on its own, for checking it against `x h(x)^2`.
pub fn h2_eval(ctx: &FieldCtx, m: u32, a: Elem, x: Elem) -> Result<Elem> {
    check_t2_domain(ctx, m)?;
    require_nonzero(a)?;
    Ok(eval_terms(ctx, &h2_terms(ctx, m, a)?, x))
}

/// Inverse of `x^(q^m) - 2a x^((q^m+1)/2) + a^2 x = x(x^((q^m-1)/2) - a)^2`, `q` odd.
#[derive(Clone, Debug)]
pub struct T2Inverse<'a> {
    ctx: &'a FieldCtx,
    parity: Parity,
    prefactor: Elem,
    norm_a: Elem,
    norm_a2: Elem,
    half: BigUint,
    h2: Vec<Term>,
}

impl<'a> T2Inverse<'a> {
    pub fn new(ctx: &'a FieldCtx, m: u32, a: Elem) -> Result<Self> {
        check_t2_domain(ctx, m)?;
        require_nonzero(a)?;
        let d = m.gcd(&ctx.n());
        let parity = if (m / d).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        };
        let norm_a = ctx.norm(a, d)?;
        let norm_a2 = ctx.norm(ctx.mul(a, a), d)?;
        let one = Elem::ONE;
        let fail = Error::SpecialCriterionFailed {
            form: "thm31",
            a: a.index(),
        };
        let prefactor = match parity {
            // N(a^2) / (1 - N(a))^2
            Parity::Even => {
                if norm_a == one {
                    return Err(fail);
                }
                let den = ctx.sub(one, norm_a);
                ctx.div(norm_a2, ctx.mul(den, den))?
            }
            // N(a^2) / (1 - N(a^2))^2
            Parity::Odd => {
                if norm_a2 == one {
                    return Err(fail);
                }
                let den = ctx.sub(one, norm_a2);
                ctx.div(norm_a2, ctx.mul(den, den))?
            }
        };
        Ok(T2Inverse {
            ctx,
            parity,
            prefactor,
            norm_a,
            norm_a2,
            half: (ctx.order_big() - 1u32) >> 1,
            h2: h2_terms(ctx, m, a)?,
        })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `g_2(x) = N(a^2) + 1 + 2 N(a) x^((q^n-1)/2)`.
    pub fn g2(&self, x: Elem) -> Elem {
        let ctx = self.ctx;
        let two = ctx.from_int(2);
        let tail = ctx.mul(ctx.mul(two, self.norm_a), ctx.pow(x, &self.half));
        ctx.add(ctx.add(self.norm_a2, Elem::ONE), tail)
    }

    pub fn h2(&self, x: Elem) -> Elem {
        eval_terms(self.ctx, &self.h2, x)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let ctx = self.ctx;
        match self.parity {
            Parity::Even => ctx.mul(self.prefactor, self.h2(x)),
            Parity::Odd => ctx.mul(self.prefactor, ctx.mul(self.g2(x), self.h2(x))),
        }
    }
}

pub fn t2_inverse_eval(ctx: &FieldCtx, m: u32, a: Elem, x: Elem) -> Result<Elem> {
    Ok(T2Inverse::new(ctx, m, a)?.eval(x))
}

// ---- x(x^2 - a)^2 over F_{5^n} ----

/// `f^{-1}(x) = 2 a^((5^n-1)/4) x^((5^n-1)/2) sum_{1<=i<=j<=n} a^(-(5^i+5^j-2)/4) b_ij x^((5^(i-1)+5^(j-1))/2)`.
#[derive(Clone, Debug)]
pub struct Cor3Inverse<'a> {
    ctx: &'a FieldCtx,
    lead: Elem,
    half: BigUint,
    terms: Vec<Term>,
}

impl<'a> Cor3Inverse<'a> {
    pub fn new(ctx: &'a FieldCtx, a: Elem) -> Result<Self> {
        require_char(ctx, "cor3", 5)?;
        require_nonzero(a)?;
        let n = ctx.n() as u64;
        let q_minus_1 = pow_big(5, n) - 1u32;
        // a^((5^n-1)/2) = -1
        if ctx.pow(a, &exact_div(q_minus_1.clone(), 2)) != ctx.from_int(-1) {
            return Err(Error::SpecialCriterionFailed {
                form: "cor3",
                a: a.index(),
            });
        }
        let lead = ctx.mul(
            ctx.from_int(2),
            ctx.pow(a, &exact_div(q_minus_1.clone(), 4)),
        );
        let a_inv = ctx.inv(a)?;
        let mut terms = Vec::new();
        for idx in MultinomialTable::Square.tuples(n as u32) {
            let (i, j) = (idx[0] as u64, idx[1] as u64);
            let b = ctx.from_int(b2(idx[0], idx[1])? as i64);
            let a_exp = exact_div(pow_big(5, i) + pow_big(5, j) - 2u32, 4);
            let x_exp = exact_div(pow_big(5, i - 1) + pow_big(5, j - 1), 2);
            terms.push(Term {
                coeff: ctx.mul(ctx.pow(a_inv, &a_exp), b),
                exp: ctx.reduce_exponent(&x_exp),
            });
        }
        Ok(Cor3Inverse {
            ctx,
            lead,
            half: exact_div(q_minus_1, 2),
            terms,
        })
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let ctx = self.ctx;
        let front = ctx.mul(self.lead, ctx.pow(x, &self.half));
        ctx.mul(front, eval_terms(ctx, &self.terms, x))
    }
}

pub fn cor3_inverse_eval(ctx: &FieldCtx, a: Elem, x: Elem) -> Result<Elem> {
    Ok(Cor3Inverse::new(ctx, a)?.eval(x))
}

// ---- x(x^3 - a)^2 over F_{7^n} ----

/// `f^{-1}(x) = (4 a^((7^n-1)/6) x^((7^n-1)/2) - 2 a^(-(7^n-1)/3)) sum_{1<=i<=j<=n} a^(-(7^i+7^j-2)/6) b_ij x^((7^(i-1)+7^(j-1))/2)`.
#[derive(Clone, Debug)]
pub struct Cor4Inverse<'a> {
    ctx: &'a FieldCtx,
    /// `4 a^((7^n-1)/6)`
    c1: Elem,
    /// `-2 a^(-(7^n-1)/3)`
    c0: Elem,
    half: BigUint,
    terms: Vec<Term>,
}

impl<'a> Cor4Inverse<'a> {
    pub fn new(ctx: &'a FieldCtx, a: Elem) -> Result<Self> {
        require_char(ctx, "cor4", 7)?;
        require_nonzero(a)?;
        let n = ctx.n() as u64;
        let q_minus_1 = pow_big(7, n) - 1u32;
        let third = exact_div(q_minus_1.clone(), 3);
        // a^((7^n-1)/3) != 1
        if ctx.pow(a, &third) == Elem::ONE {
            return Err(Error::SpecialCriterionFailed {
                form: "cor4",
                a: a.index(),
            });
        }
        let a_inv = ctx.inv(a)?;
        let c1 = ctx.mul(
            ctx.from_int(4),
            ctx.pow(a, &exact_div(q_minus_1.clone(), 6)),
        );
        let c0 = ctx.mul(ctx.from_int(-2), ctx.pow(a_inv, &third));
        let mut terms = Vec::new();
        for idx in MultinomialTable::Square.tuples(n as u32) {
            let (i, j) = (idx[0] as u64, idx[1] as u64);
            let b = ctx.from_int(b2(idx[0], idx[1])? as i64);
            let a_exp = exact_div(pow_big(7, i) + pow_big(7, j) - 2u32, 6);
            let x_exp = exact_div(pow_big(7, i - 1) + pow_big(7, j - 1), 2);
            terms.push(Term {
                coeff: ctx.mul(ctx.pow(a_inv, &a_exp), b),
                exp: ctx.reduce_exponent(&x_exp),
            });
        }
        Ok(Cor4Inverse {
            ctx,
            c1,
            c0,
            half: exact_div(q_minus_1, 2),
            terms,
        })
    }

    pub fn prefactor(&self, x: Elem) -> Elem {
        let ctx = self.ctx;
        ctx.add(ctx.mul(self.c1, ctx.pow(x, &self.half)), self.c0)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.ctx
            .mul(self.prefactor(x), eval_terms(self.ctx, &self.terms, x))
    }
}

pub fn cor4_inverse_eval(ctx: &FieldCtx, a: Elem, x: Elem) -> Result<Elem> {
    Ok(Cor4Inverse::new(ctx, a)?.eval(x))
}

// ---- x(x^2 - a)^3 over F_{7^n} ----

/// `h_3(x) = sum_{1<=i<=j<=k<=n} a^(-(7^i+7^j+7^k-3)/6) b_ijk x^((7^(i-1)+7^(j-1)+7^(k-1))/3)`.
fn h3_terms(ctx: &FieldCtx, a: Elem) -> Result<Vec<Term>> {
    let a_inv = ctx.inv(a)?;
    let mut terms = Vec::new();
    for idx in MultinomialTable::Cube.tuples(ctx.n()) {
        let (i, j, k) = (idx[0] as u64, idx[1] as u64, idx[2] as u64);
        let b = ctx.from_int(b3(idx[0], idx[1], idx[2])? as i64);
        let a_exp = exact_div(pow_big(7, i) + pow_big(7, j) + pow_big(7, k) - 3u32, 6);
        let x_exp = exact_div(pow_big(7, i - 1) + pow_big(7, j - 1) + pow_big(7, k - 1), 3);
        terms.push(Term {
            coeff: ctx.mul(ctx.pow(a_inv, &a_exp), b),
            exp: ctx.reduce_exponent(&x_exp),
        });
    }
    Ok(terms)
}

pub fn h3_eval(ctx: &FieldCtx, a: Elem, x: Elem) -> Result<Elem> {
    require_char(ctx, "cor5", 7)?;
    require_nonzero(a)?;
    Ok(eval_terms(ctx, &h3_terms(ctx, a)?, x))
}

/// `f^{-1}(x) = (3 (a x^4)^((7^n-1)/6) - 3 (a x)^((7^n-1)/3) - 2) h_3(x)`.
#[derive(Clone, Debug)]
pub struct Cor5Inverse<'a> {
    ctx: &'a FieldCtx,
    a: Elem,
    sixth: BigUint,
    third: BigUint,
    terms: Vec<Term>,
}

impl<'a> Cor5Inverse<'a> {
    pub fn new(ctx: &'a FieldCtx, a: Elem) -> Result<Self> {
        require_char(ctx, "cor5", 7)?;
        require_nonzero(a)?;
        let q_minus_1 = pow_big(7, ctx.n() as u64) - 1u32;
        // a^((7^n-1)/2) = -1
        if ctx.pow(a, &exact_div(q_minus_1.clone(), 2)) != ctx.from_int(-1) {
            return Err(Error::SpecialCriterionFailed {
                form: "cor5",
                a: a.index(),
            });
        }
        Ok(Cor5Inverse {
            ctx,
            a,
            sixth: exact_div(q_minus_1.clone(), 6),
            third: exact_div(q_minus_1, 3),
            terms: h3_terms(ctx, a)?,
        })
    }

    pub fn prefactor(&self, x: Elem) -> Elem {
        let ctx = self.ctx;
        let three = ctx.from_int(3);
        let x4 = ctx.pow_u64(x, 4);
        let first = ctx.mul(three, ctx.pow(ctx.mul(self.a, x4), &self.sixth));
        let second = ctx.mul(three, ctx.pow(ctx.mul(self.a, x), &self.third));
        ctx.sub(ctx.sub(first, second), ctx.from_int(2))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.ctx
            .mul(self.prefactor(x), eval_terms(self.ctx, &self.terms, x))
    }
}

pub fn cor5_inverse_eval(ctx: &FieldCtx, a: Elem, x: Elem) -> Result<Elem> {
    Ok(Cor5Inverse::new(ctx, a)?.eval(x))
}

// ---- dispatch ----

/// Which explicit form to route an inverse through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialForm {
    Thm31,
    Cor3,
    Cor4,
    Cor5,
}

impl SpecialForm {
    pub fn name(self) -> &'static str {
        match self {
            SpecialForm::Thm31 => "thm31",
            SpecialForm::Cor3 => "cor3",
            SpecialForm::Cor4 => "cor4",
            SpecialForm::Cor5 => "cor5",
        }
    }

    /// Cor3/4/5 when `(p, e, s, t)` match exactly, else Thm31 for `t = 2`, odd `q`
    /// and `m < n`, else none.
    pub fn auto(params: &PPParams) -> Option<SpecialForm> {
        let ctx = params.ctx();
        match (ctx.p(), ctx.e(), params.s(), params.t()) {
            (5, 1, 2, 2) => Some(SpecialForm::Cor3),
            (7, 1, 3, 2) => Some(SpecialForm::Cor4),
            (7, 1, 2, 3) => Some(SpecialForm::Cor5),
            (_, _, _, 2) if ctx.q() % 2 == 1 && params.m() < ctx.n() => Some(SpecialForm::Thm31),
            _ => None,
        }
    }

    /// Checks that this form describes the family `params` and prepares it for `a`.
    pub fn prepare<'a>(self, params: &'a PPParams, a: Elem) -> Result<SpecialInverse<'a>> {
        let ctx = &**params.ctx();
        let mismatch = |requirement: String| Error::SpecialFormInapplicable {
            form: self.name(),
            requirement,
        };
        let exact = |p: u64, s: u64, t: u64| {
            if ctx.p() == p && ctx.e() == 1 && params.s() == s && params.t() == t {
                Ok(())
            } else {
                Err(mismatch(format!("p = {p}, e = 1, s = {s}, t = {t}")))
            }
        };
        Ok(match self {
            SpecialForm::Thm31 => {
                if params.t() != 2 {
                    return Err(mismatch("t = 2".into()));
                }
                SpecialInverse::Thm31(T2Inverse::new(ctx, params.m(), a)?)
            }
            SpecialForm::Cor3 => {
                exact(5, 2, 2)?;
                SpecialInverse::Cor3(Cor3Inverse::new(ctx, a)?)
            }
            SpecialForm::Cor4 => {
                exact(7, 3, 2)?;
                SpecialInverse::Cor4(Cor4Inverse::new(ctx, a)?)
            }
            SpecialForm::Cor5 => {
                exact(7, 2, 3)?;
                SpecialInverse::Cor5(Cor5Inverse::new(ctx, a)?)
            }
        })
    }
}

impl fmt::Display for SpecialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm31" => Ok(SpecialForm::Thm31),
            "cor3" => Ok(SpecialForm::Cor3),
            "cor4" => Ok(SpecialForm::Cor4),
            "cor5" => Ok(SpecialForm::Cor5),
            other => Err(Error::Parse(format!("unknown special form {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SpecialInverse<'a> {
    Thm31(T2Inverse<'a>),
    Cor3(Cor3Inverse<'a>),
    Cor4(Cor4Inverse<'a>),
    Cor5(Cor5Inverse<'a>),
}

impl SpecialInverse<'_> {
    pub fn eval(&self, x: Elem) -> Elem {
        match self {
            SpecialInverse::Thm31(f) => f.eval(x),
            SpecialInverse::Cor3(f) => f.eval(x),
            SpecialInverse::Cor4(f) => f.eval(x),
            SpecialInverse::Cor5(f) => f.eval(x),
        }
    }
}
