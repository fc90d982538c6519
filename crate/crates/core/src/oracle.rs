//! Brute-force ground truth for small fields: full evaluation tables,
//! bijectivity by occupancy, inversion by table lookup, and inverse
//! polynomials by interpolation.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::poly::{self, DensePoly};

pub const DEFAULT_ORACLE_CAP: u64 = 1 << 16;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "PPINV_ORACLE_CAP";

/// Largest field order the exhaustive routines will touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCap(pub u64);

impl Default for OracleCap {
    fn default() -> Self {
        OracleCap(DEFAULT_ORACLE_CAP)
    }
}

impl OracleCap {
    /// The cap from `PPINV_ORACLE_CAP` if set, else the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ORACLE_CAP_ENV) {
            Ok(raw) => {
                raw.trim().parse().map(OracleCap).map_err(|_| {
                    Error::Parse(format!("{ORACLE_CAP_ENV}={raw:?} is not an integer"))
                })
            }
            Err(_) => Ok(OracleCap::default()),
        }
    }

    pub fn check(self, ctx: &FieldCtx) -> Result<()> {
        if ctx.order() > self.0 {
            return Err(Error::OracleCapExceeded {
                order: ctx.order(),
                cap: self.0,
            });
        }
        Ok(())
    }
}

/// `images[index_of(x)] = index_of(f(x))` for every `x`, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermTable {
    images: Vec<u64>,
}

impl PermTable {
    pub fn from_images(ctx: &FieldCtx, images: Vec<u64>) -> Result<Self> {
        if images.len() as u64 != ctx.order() {
            return Err(Error::TableLength {
                got: images.len(),
                order: ctx.order(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= ctx.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: ctx.order(),
            });
        }
        Ok(PermTable { images })
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, x: Elem) -> Elem {
        // entries were range-checked at construction
        Elem::from_index_unchecked(self.images[x.index() as usize])
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &y in &self.images {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn invert(&self) -> Result<PermTable> {
        if !self.is_bijection() {
            return Err(Error::NotBijective);
        }
        let mut inv = vec![0u64; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u64;
        }
        Ok(PermTable { images: inv })
    }

    /// `(x, f(x))` pairs in enumeration order.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        self.images
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                (
                    Elem::from_index_unchecked(x as u64),
                    Elem::from_index_unchecked(y),
                )
            })
            .collect()
    }

    /// One `index,image` line per element, after an `index,image` header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
        w.write_record(["index", "image"]).map_err(io)?;
        for (x, y) in self.images.iter().enumerate() {
            w.write_record([x.to_string(), y.to_string()]).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Parse(format!("csv write failed: {e}")))?;
        Ok(())
    }
}

pub fn tabulate<F>(ctx: &FieldCtx, cap: OracleCap, f: F) -> Result<PermTable>
where
    F: Fn(Elem) -> Elem,
{
    cap.check(ctx)?;
    Ok(PermTable {
        images: ctx.elements().map(|x| f(x).index()).collect(),
    })
}

/// [`tabulate`] with the enumeration split across the rayon pool.
pub fn tabulate_par<F>(ctx: &FieldCtx, cap: OracleCap, f: F) -> Result<PermTable>
where
    F: Fn(Elem) -> Elem + Sync,
{
    cap.check(ctx)?;
    let images = (0..ctx.order())
        .into_par_iter()
        .map(|k| f(ctx.elem(k).expect("index below order")).index())
        .collect();
    Ok(PermTable { images })
}

pub fn is_bijection(table: &PermTable) -> bool {
    table.is_bijection()
}

pub fn invert_table(table: &PermTable) -> Result<PermTable> {
    table.invert()
}

/// The reduced polynomial inducing the inverse permutation.
pub fn inverse_poly_by_interpolation(ctx: &FieldCtx, table: &PermTable) -> Result<DensePoly> {
    let inv = table.invert()?;
    poly::lagrange_interpolate(ctx, &inv.pairs())
}

/// Whether `g(f(x)) = x` for every `x`.
pub fn check_composition_identity<F, G>(ctx: &FieldCtx, cap: OracleCap, f: F, g: G) -> Result<bool>
where
    F: Fn(Elem) -> Elem,
    G: Fn(Elem) -> Elem,
{
    cap.check(ctx)?;
    Ok(ctx.elements().all(|x| g(f(x)) == x))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::family::PPParams;

    fn field(p: u64, e: u32, n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, e, n).unwrap())
    }

    #[test]
    fn identity_table() {
        let ctx = field(3, 1, 2);
        let t = tabulate(&ctx, OracleCap::default(), |x| x).unwrap();
        assert!(t.is_bijection());
        assert_eq!(t.invert().unwrap(), t);
        let p = inverse_poly_by_interpolation(&ctx, &t).unwrap();
        assert_eq!(p, DensePoly::x());
    }

    #[test]
    fn f5_instance_is_involution() {
        let ctx = field(5, 1, 1);
        let params = PPParams::new(ctx.clone(), 1, 2, 2).unwrap();
        let a = ctx.from_int(2);
        let t = tabulate(&ctx, OracleCap::default(), |x| params.eval_f(a, x)).unwrap();
        assert_eq!(t.images(), &[0, 1, 3, 2, 4]);
        assert_eq!(t.invert().unwrap(), t);
    }

    #[test]
    fn constant_is_not_bijective() {
        let ctx = field(7, 1, 1);
        let t = tabulate(&ctx, OracleCap::default(), |_| Elem::ZERO).unwrap();
        assert!(!is_bijection(&t));
        assert_eq!(invert_table(&t), Err(Error::NotBijective));
        assert_eq!(
            inverse_poly_by_interpolation(&ctx, &t),
            Err(Error::NotBijective)
        );
    }

    #[test]
    fn double_inversion_and_parallel_agree() {
        let ctx = field(2, 1, 6);
        let f = |x| ctx.pow_u64(x, 5);
        let t = tabulate(&ctx, OracleCap::default(), f).unwrap();
        assert_eq!(tabulate_par(&ctx, OracleCap::default(), f).unwrap(), t);
        assert!(t.is_bijection());
        assert_eq!(t.invert().unwrap().invert().unwrap(), t);
    }

    #[test]
    fn interpolated_inverse_composes_to_identity() {
        let ctx = field(7, 1, 1);
        let params = PPParams::new(ctx.clone(), 1, 3, 2).unwrap();
        let a = ctx.from_int(2);
        assert!(params.is_pp(a).unwrap());
        let t = tabulate(&ctx, OracleCap::default(), |x| params.eval_f(a, x)).unwrap();
        let inv = inverse_poly_by_interpolation(&ctx, &t).unwrap();
        let f = poly::expand_family(&ctx, &params, a).unwrap();
        assert_eq!(poly::compose_mod(&ctx, &inv, &f), DensePoly::x());
        let ok = check_composition_identity(
            &ctx,
            OracleCap::default(),
            |x| params.eval_f(a, x),
            |y| poly::eval(&ctx, &inv, y),
        )
        .unwrap();
        assert!(ok);
    }

    #[test]
    fn cap_is_enforced() {
        let ctx = field(3, 1, 4);
        let err = tabulate(&ctx, OracleCap(80), |x| x).unwrap_err();
        assert_eq!(err, Error::OracleCapExceeded { order: 81, cap: 80 });
        assert!(check_composition_identity(&ctx, OracleCap(10), |x| x, |x| x).is_err());
        assert!(tabulate(&ctx, OracleCap(81), |x| x).is_ok());
    }

    #[test]
    fn from_images_validates() {
        let ctx = field(2, 1, 2);
        assert!(PermTable::from_images(&ctx, vec![0, 1, 2]).is_err());
        assert!(PermTable::from_images(&ctx, vec![0, 1, 2, 4]).is_err());
        let t = PermTable::from_images(&ctx, vec![3, 2, 1, 0]).unwrap();
        assert_eq!(t.image(Elem::ZERO).index(), 3);
    }

    #[test]
    fn csv_layout() {
        let ctx = field(3, 1, 1);
        let t = PermTable::from_images(&ctx, vec![0, 2, 1]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "index,image\n0,0\n1,2\n2,1\n"
        );
    }
}
