//! Dense polynomials over a [`FieldCtx`], reduced modulo `x^Q - x`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::PPParams;
use crate::field::{Elem, FieldCtx};
use crate::intmath;

/// Coefficients little-endian: `coeffs[k]` multiplies `x^k`. Trailing zeros are trimmed,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DensePoly {
    coeffs: Vec<Elem>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        DensePoly::from_coeffs(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        DensePoly::from_coeffs(vec![Elem::ZERO, Elem::ONE])
    }

    pub fn from_coeffs(coeffs: Vec<Elem>) -> Self {
        let mut p = DensePoly { coeffs };
        p.trim();
        p
    }

    /// `sum c_k x^(e_k)` reduced mod `x^Q - x`; repeated exponents accumulate.
    pub fn from_terms<'a, I>(ctx: &FieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a BigUint, Elem)>,
    {
        let mut coeffs = Vec::new();
        for (exp, c) in terms {
            let k = ctx.reduce_exponent(exp) as usize;
            accumulate(ctx, &mut coeffs, k, c);
        }
        DensePoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `(exponent, coefficient)` for every nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Comma-separated coefficient indices, little-endian; the zero polynomial is `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for part in text.split(',') {
            let idx: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))?;
            coeffs.push(ctx.elem(idx)?);
        }
        Ok(DensePoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn accumulate(ctx: &FieldCtx, coeffs: &mut Vec<Elem>, k: usize, c: Elem) {
    if c.is_zero() {
        return;
    }
    if coeffs.len() <= k {
        coeffs.resize(k + 1, Elem::ZERO);
    }
    coeffs[k] = ctx.add(coeffs[k], c);
}

/// Reduced slot of exponent `k`: exponents at or above `Q` wrap to `((k-1) mod (Q-1)) + 1`.
fn slot(ctx: &FieldCtx, k: usize) -> usize {
    let q = ctx.order() as usize;
    if k < q {
        k
    } else {
        (k - 1) % (q - 1) + 1
    }
}

/// Horner evaluation.
pub fn eval(ctx: &FieldCtx, poly: &DensePoly, x: Elem) -> Elem {
    poly.coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

pub fn reduce(ctx: &FieldCtx, a: &DensePoly) -> DensePoly {
    if a.coeffs.len() <= ctx.order() as usize {
        return a.clone();
    }
    let mut out = vec![Elem::ZERO; ctx.order() as usize];
    for (k, c) in a.terms() {
        let s = slot(ctx, k);
        out[s] = ctx.add(out[s], c);
    }
    DensePoly::from_coeffs(out)
}

pub fn add(ctx: &FieldCtx, a: &DensePoly, b: &DensePoly) -> DensePoly {
    let len = a.coeffs.len().max(b.coeffs.len());
    DensePoly::from_coeffs((0..len).map(|k| ctx.add(a.coeff(k), b.coeff(k))).collect())
}

pub fn scale(ctx: &FieldCtx, a: &DensePoly, c: Elem) -> DensePoly {
    DensePoly::from_coeffs(a.coeffs.iter().map(|&x| ctx.mul(x, c)).collect())
}

/// Product reduced mod `x^Q - x`. Zero coefficients of either factor are skipped,
/// so sparse operands are cheap.
pub fn mul_mod(ctx: &FieldCtx, a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_zero() || b.is_zero() {
        return DensePoly::zero();
    }
    let (a, b) = (reduce(ctx, a), reduce(ctx, b));
    let len = (a.coeffs.len() + b.coeffs.len() - 1).min(ctx.order() as usize);
    let mut out = vec![Elem::ZERO; len];
    let rhs: Vec<(usize, Elem)> = b.terms().collect();
    for (i, x) in a.terms() {
        for &(j, y) in &rhs {
            let s = slot(ctx, i + j);
            out[s] = ctx.add(out[s], ctx.mul(x, y));
        }
    }
    DensePoly::from_coeffs(out)
}

/// `a^p` in characteristic `p`: `(sum c_k x^k)^p = sum c_k^p x^(kp)`.
fn frobenius(ctx: &FieldCtx, a: &DensePoly) -> DensePoly {
    let p = ctx.p();
    let mut out = Vec::new();
    for (k, c) in a.terms() {
        let exp = BigUint::from(k as u64) * p;
        accumulate(
            ctx,
            &mut out,
            ctx.reduce_exponent(&exp) as usize,
            ctx.pow_u64(c, p),
        );
    }
    DensePoly::from_coeffs(out)
}

/// `a^k` reduced mod `x^Q - x`, with `a^0 = 1`. The exponent is consumed in base `p`,
/// with each digit position reached by a coefficient-wise Frobenius map.
pub fn pow_mod(ctx: &FieldCtx, a: &DensePoly, k: &BigUint) -> DensePoly {
    let p = ctx.p();
    let mut acc = DensePoly::constant(Elem::ONE);
    let mut base = reduce(ctx, a);
    let mut digits = k.to_radix_le(p as u32);
    // to_radix_le(0) yields [0]
    while digits.last() == Some(&0) {
        digits.pop();
    }
    for (pos, &digit) in digits.iter().enumerate() {
        if pos > 0 {
            base = frobenius(ctx, &base);
        }
        if digit > 0 {
            acc = mul_mod(ctx, &acc, &pow_small(ctx, &base, digit as u64));
        }
    }
    acc
}

fn pow_small(ctx: &FieldCtx, a: &DensePoly, mut k: u64) -> DensePoly {
    let mut acc = DensePoly::constant(Elem::ONE);
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(ctx, &acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul_mod(ctx, &base, &base);
        }
    }
    acc
}

/// `outer(inner(x))` reduced mod `x^Q - x`.
pub fn compose_mod(ctx: &FieldCtx, outer: &DensePoly, inner: &DensePoly) -> DensePoly {
    let outer = reduce(ctx, outer);
    let inner = reduce(ctx, inner);
    let mut acc = DensePoly::zero();
    // power = inner^prev, advanced by one multiplication for consecutive
    // exponents and recomputed from scratch across gaps.
    let mut prev = 0usize;
    let mut power = DensePoly::constant(Elem::ONE);
    for (k, c) in outer.terms() {
        if k == prev + 1 {
            power = mul_mod(ctx, &power, &inner);
        } else if k != prev {
            power = pow_mod(ctx, &inner, &BigUint::from(k as u64));
        }
        prev = k;
        acc = add(ctx, &acc, &scale(ctx, &power, c));
    }
    acc
}

/// Interpolates a full evaluation table, one pair per field element in any order.
///
/// Over the whole field the Lagrange basis polynomial at `c` is
/// `1 - (x - c)^(Q-1)`, and `(x - c)^(Q-1) = sum_k c^(Q-1-k) x^k`, so the
/// interpolant has constant term `y_0` and `x^k` coefficient
/// `-sum_c y_c c^(Q-1-k)` for `1 <= k <= Q-1`.
pub fn lagrange_interpolate(ctx: &FieldCtx, table: &[(Elem, Elem)]) -> Result<DensePoly> {
    let q = ctx.order();
    let mut seen = vec![false; q as usize];
    for &(x, _) in table {
        let idx = ctx.index_of(x);
        if idx >= q {
            return Err(Error::IndexOutOfRange {
                index: idx,
                order: q,
            });
        }
        if std::mem::replace(&mut seen[idx as usize], true) {
            return Err(Error::DuplicateAbscissa(idx));
        }
    }
    if table.len() as u64 != q {
        return Err(Error::IncompleteTable {
            got: table.len() as u64,
            order: q,
        });
    }

    let mut coeffs = vec![Elem::ZERO; q as usize];
    for &(x, y) in table {
        if y.is_zero() {
            continue;
        }
        if x.is_zero() {
            coeffs[0] = ctx.add(coeffs[0], y);
            // c = 0 only contributes through 0^0 at k = Q-1
            let top = q as usize - 1;
            coeffs[top] = ctx.sub(coeffs[top], y);
            continue;
        }
        // walk c^(Q-1-k) downward from k = Q-1 (c^0) to k = 1 (c^(Q-2))
        let mut power = y;
        for k in (1..q as usize).rev() {
            coeffs[k] = ctx.sub(coeffs[k], power);
            power = ctx.mul(power, x);
        }
    }
    Ok(DensePoly::from_coeffs(coeffs))
}

/// Coefficients of `x (x^s - a)^t` by the binomial theorem. The degree is
/// `q^m <= Q`, so the result only differs from its reduction when `m = n`,
/// where the leading `x^Q` folds onto `x`; pass it through [`reduce`] for the
/// canonical form.
pub fn expand_family(ctx: &FieldCtx, params: &PPParams, a: Elem) -> Result<DensePoly> {
    if a.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    let (s, t) = (params.s(), params.t());
    let minus_a = ctx.neg(a);
    let mut coeffs = Vec::new();
    for j in 0..=t {
        let binom = ctx.from_int(intmath::binomial_mod_p(t, j, ctx.p()) as i64);
        let c = ctx.mul(binom, ctx.pow_u64(minus_a, t - j));
        accumulate(ctx, &mut coeffs, (s * j + 1) as usize, c);
    }
    Ok(DensePoly::from_coeffs(coeffs))
}

/// A polynomial kept as a short list of reduced `(exponent, coefficient)` terms,
/// for closed forms whose dense expansion would have `Q` slots.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SparsePoly {
    terms: Vec<(u64, Elem)>,
}

impl SparsePoly {
    /// Exponents are reduced mod `x^Q - x` and like terms merged; zero terms are dropped.
    pub fn from_terms<I>(ctx: &FieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, Elem)>,
    {
        let mut merged: Vec<(u64, Elem)> = Vec::new();
        for (exp, c) in terms {
            let k = ctx.reduce_exponent(&exp);
            match merged.iter_mut().find(|(e, _)| *e == k) {
                Some(slot) => slot.1 = ctx.add(slot.1, c),
                None => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by_key(|&(e, _)| e);
        SparsePoly { terms: merged }
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, &(e, c)| {
            ctx.add(acc, ctx.mul(c, ctx.pow_u64(x, e)))
        })
    }

    pub fn to_dense(&self, ctx: &FieldCtx) -> DensePoly {
        let mut coeffs = Vec::new();
        for &(e, c) in &self.terms {
            accumulate(ctx, &mut coeffs, e as usize, c);
        }
        DensePoly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> FieldCtx {
        FieldCtx::new(5, 1, 1).unwrap()
    }

    fn ints(ctx: &FieldCtx, v: &[i64]) -> DensePoly {
        DensePoly::from_coeffs(v.iter().map(|&c| ctx.from_int(c)).collect())
    }

    fn monomial(ctx: &FieldCtx, k: usize) -> DensePoly {
        let mut v = vec![0i64; k + 1];
        v[k] = 1;
        ints(ctx, &v)
    }

    /// Textbook Lagrange: sum_i y_i prod_{j != i} (x - x_j) / (x_i - x_j), expanded
    /// without any reduction. Independent of `lagrange_interpolate`.
    fn lagrange_product_form(ctx: &FieldCtx, table: &[(Elem, Elem)]) -> DensePoly {
        let mut total = vec![Elem::ZERO; table.len()];
        for (i, &(xi, yi)) in table.iter().enumerate() {
            let mut basis = vec![Elem::ONE];
            let mut denom = Elem::ONE;
            for (j, &(xj, _)) in table.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Elem::ZERO; basis.len() + 1];
                for (k, &b) in basis.iter().enumerate() {
                    next[k + 1] = ctx.add(next[k + 1], b);
                    next[k] = ctx.sub(next[k], ctx.mul(b, xj));
                }
                basis = next;
                denom = ctx.mul(denom, ctx.sub(xi, xj));
            }
            let w = ctx.div(yi, denom).unwrap();
            for (k, &b) in basis.iter().enumerate() {
                total[k] = ctx.add(total[k], ctx.mul(b, w));
            }
        }
        DensePoly::from_coeffs(total)
    }

    fn table_of(ctx: &FieldCtx, f: impl Fn(Elem) -> Elem) -> Vec<(Elem, Elem)> {
        ctx.elements().map(|x| (x, f(x))).collect()
    }

    #[test]
    fn eval_examples() {
        let ctx = f5();
        let f = ints(&ctx, &[0, 4, 0, 1, 0, 1]);
        assert_eq!(eval(&ctx, &f, ctx.from_int(2)), ctx.from_int(3));
        assert_eq!(
            eval(&ctx, &DensePoly::constant(ctx.from_int(3)), ctx.from_int(4)),
            ctx.from_int(3)
        );
        for a in ctx.elements() {
            assert_eq!(eval(&ctx, &DensePoly::x(), a), a);
            assert_eq!(eval(&ctx, &DensePoly::zero(), a), Elem::ZERO);
        }
    }

    #[test]
    fn reduction_rule() {
        let ctx = f5();
        assert_eq!(reduce(&ctx, &monomial(&ctx, 5)), DensePoly::x());
        assert_eq!(reduce(&ctx, &monomial(&ctx, 4)), monomial(&ctx, 4));
        let cube = monomial(&ctx, 3);
        assert_eq!(mul_mod(&ctx, &cube, &cube), monomial(&ctx, 2));
        for x in ctx.elements() {
            assert_eq!(ctx.pow_u64(x, 6), ctx.pow_u64(x, 2));
        }
    }

    #[test]
    fn compose_examples() {
        let ctx = f5();
        let f = ints(&ctx, &[0, 4, 0, 1, 0, 1]);
        assert_eq!(compose_mod(&ctx, &DensePoly::x(), &f), reduce(&ctx, &f));
        assert_eq!(reduce(&ctx, &f), monomial(&ctx, 3));
        let cube = monomial(&ctx, 3);
        assert_eq!(compose_mod(&ctx, &cube, &cube), DensePoly::x());
        // x^5 + x^3 + 4x inverts to x^3 on F_5
        assert_eq!(compose_mod(&ctx, &cube, &f), DensePoly::x());
    }

    #[test]
    fn interpolation_examples() {
        let ctx = f5();
        assert_eq!(
            lagrange_interpolate(&ctx, &table_of(&ctx, |a| a)).unwrap(),
            DensePoly::x()
        );
        let c = ctx.from_int(3);
        assert_eq!(
            lagrange_interpolate(&ctx, &table_of(&ctx, |_| c)).unwrap(),
            DensePoly::constant(c)
        );
        assert_eq!(
            lagrange_interpolate(&ctx, &table_of(&ctx, |a| ctx.pow_u64(a, 3))).unwrap(),
            monomial(&ctx, 3)
        );
    }

    #[test]
    fn interpolation_rejects_bad_tables() {
        let ctx = f5();
        let mut t = table_of(&ctx, |a| a);
        t.pop();
        assert!(matches!(
            lagrange_interpolate(&ctx, &t),
            Err(Error::IncompleteTable { .. })
        ));
        t.push((Elem::ZERO, Elem::ONE));
        assert_eq!(
            lagrange_interpolate(&ctx, &t),
            Err(Error::DuplicateAbscissa(0))
        );
    }

    #[test]
    fn interpolation_matches_product_form() {
        for (p, e, n) in [(2, 1, 3), (3, 1, 2), (5, 1, 1), (2, 2, 2), (7, 1, 1)] {
            let ctx = FieldCtx::new(p, e, n).unwrap();
            let q = ctx.order();
            let f = |x: Elem| ctx.elem((x.index() * 7 + 3) % q).unwrap();
            let table = table_of(&ctx, f);
            let got = lagrange_interpolate(&ctx, &table).unwrap();
            assert_eq!(
                got,
                lagrange_product_form(&ctx, &table),
                "field {p}^{e}^{n}"
            );
        }
    }

    #[test]
    fn expand_family_examples() {
        use crate::family::PPParams;
        use std::sync::Arc;
        let f5 = Arc::new(f5());
        let params = PPParams::new(f5.clone(), 1, 2, 2).unwrap();
        let f = expand_family(&f5, &params, f5.from_int(2)).unwrap();
        assert_eq!(f, ints(&f5, &[0, 4, 0, 1, 0, 1]));
        for x in f5.elements() {
            assert_eq!(eval(&f5, &f, x), params.eval_f(f5.from_int(2), x));
        }

        let f7 = Arc::new(FieldCtx::new(7, 1, 1).unwrap());
        let params = PPParams::new(f7.clone(), 1, 3, 2).unwrap();
        assert_eq!(
            expand_family(&f7, &params, f7.from_int(2)).unwrap(),
            ints(&f7, &[0, 4, 0, 0, 3, 0, 0, 1])
        );

        // t = 1: x^(q^m) - a x, here over F_9 with m = 1
        let f9 = Arc::new(FieldCtx::new(3, 1, 2).unwrap());
        let params = PPParams::new(f9.clone(), 1, 2, 1).unwrap();
        let a = f9.elem(4).unwrap();
        let mut want = vec![Elem::ZERO; 4];
        want[1] = f9.neg(a);
        want[3] = Elem::ONE;
        assert_eq!(
            expand_family(&f9, &params, a).unwrap(),
            DensePoly::from_coeffs(want)
        );
        assert_eq!(
            expand_family(&f9, &params, Elem::ZERO),
            Err(Error::ZeroCoefficient)
        );
    }

    #[test]
    fn text_form() {
        let ctx = f5();
        let f = ints(&ctx, &[4, 0, 1, 0, 0, 1]);
        assert_eq!(f.to_text(), "4,0,1,0,0,1");
        assert_eq!(DensePoly::parse(&ctx, "4,0,1,0,0,1").unwrap(), f);
        assert_eq!(DensePoly::zero().to_text(), "0");
        assert_eq!(DensePoly::parse(&ctx, "0").unwrap(), DensePoly::zero());
        assert!(DensePoly::parse(&ctx, "1,5").is_err());
        assert!(DensePoly::parse(&ctx, "1,,2").is_err());
    }

    #[test]
    fn sparse_matches_dense() {
        let ctx = FieldCtx::new(3, 1, 2).unwrap();
        let terms = vec![
            (BigUint::from(0u32), ctx.elem(2).unwrap()),
            (BigUint::from(9u32), ctx.elem(4).unwrap()), // wraps to x^1
            (BigUint::from(1u32), ctx.elem(1).unwrap()),
            (BigUint::from(16u32), ctx.elem(7).unwrap()), // wraps to x^8
        ];
        let sparse = SparsePoly::from_terms(&ctx, terms.clone());
        assert_eq!(sparse.len(), 3);
        let dense = DensePoly::from_terms(&ctx, terms.iter().map(|(e, c)| (e, *c)));
        assert_eq!(sparse.to_dense(&ctx), dense);
        for x in ctx.elements() {
            assert_eq!(sparse.eval(&ctx, x), eval(&ctx, &dense, x));
        }
    }

    fn small_fields() -> Vec<FieldCtx> {
        [(2, 1, 3), (3, 1, 2), (5, 1, 1), (2, 2, 2), (7, 1, 1)]
            .into_iter()
            .map(|(p, e, n)| FieldCtx::new(p, e, n).unwrap())
            .collect()
    }

    fn arb_poly(ctx: &FieldCtx, raw: &[u64]) -> DensePoly {
        DensePoly::from_coeffs(
            raw.iter()
                .map(|&r| ctx.elem(r % ctx.order()).unwrap())
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn reduce_preserves_function(which in 0usize..5, raw in prop::collection::vec(any::<u64>(), 0..40)) {
            let ctx = &small_fields()[which];
            let f = arb_poly(ctx, &raw);
            let r = reduce(ctx, &f);
            prop_assert!(r.coeffs().len() <= ctx.order() as usize);
            for x in ctx.elements() {
                prop_assert_eq!(eval(ctx, &r, x), eval(ctx, &f, x));
            }
        }

        #[test]
        fn interpolation_round_trip(which in 0usize..5, raw in prop::collection::vec(any::<u64>(), 0..9)) {
            let ctx = &small_fields()[which];
            let mut f = arb_poly(ctx, &raw);
            f = reduce(ctx, &f);
            let table = table_of(ctx, |x| eval(ctx, &f, x));
            prop_assert_eq!(lagrange_interpolate(ctx, &table).unwrap(), f);
        }

        #[test]
        fn compose_and_pow_agree_pointwise(
            which in 0usize..5,
            a in prop::collection::vec(any::<u64>(), 0..12),
            b in prop::collection::vec(any::<u64>(), 0..12),
            k in 0u64..200,
        ) {
            let ctx = &small_fields()[which];
            let (f, g) = (arb_poly(ctx, &a), arb_poly(ctx, &b));
            let fg = compose_mod(ctx, &f, &g);
            let prod = mul_mod(ctx, &f, &g);
            let pw = pow_mod(ctx, &f, &BigUint::from(k));
            for x in ctx.elements() {
                let (fx, gx) = (eval(ctx, &f, x), eval(ctx, &g, x));
                prop_assert_eq!(eval(ctx, &fg, x), eval(ctx, &f, gx));
                prop_assert_eq!(eval(ctx, &prod, x), ctx.mul(fx, gx));
                prop_assert_eq!(eval(ctx, &pw, x), ctx.pow_u64(fx, k));
            }
            let r = reduce(ctx, &f);
            prop_assert_eq!(compose_mod(ctx, &f, &DensePoly::x()), r.clone());
            prop_assert_eq!(compose_mod(ctx, &DensePoly::x(), &f), r);
        }
    }
}
