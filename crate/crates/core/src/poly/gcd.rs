//! Gcd, exact division and resultants of bivariate polynomials, viewing
//! `K[x, y]` as `K[x][y]`.

use crate::field::{Field, UniPoly};

use super::BiPoly;

type Dense = Vec<UniPoly>;

fn to_dense(f: &BiPoly) -> Dense {
    let field = f.field();
    let dy = f.degree_in_y().unwrap_or(0) as usize;
    let mut rows: Vec<Vec<_>> = vec![Vec::new(); dy + 1];
    for (&(a, b), c) in f.terms() {
        let row = &mut rows[b as usize];
        if row.len() <= a as usize {
            row.resize(a as usize + 1, field.zero());
        }
        row[a as usize] = c.clone();
    }
    let mut out: Dense = rows
        .into_iter()
        .map(|r| UniPoly::new(field.clone(), r, "x"))
        .collect();
    trim(&mut out);
    out
}

fn from_dense(d: &Dense, field: &Field) -> BiPoly {
    let mut terms = Vec::new();
    for (b, p) in d.iter().enumerate() {
        for (a, c) in p.coeffs().iter().enumerate() {
            terms.push(((a as u32, b as u32), c.clone()));
        }
    }
    BiPoly::from_terms(field, terms)
}

fn trim(d: &mut Dense) {
    while d.last().is_some_and(|p| p.is_zero()) {
        d.pop();
    }
}

fn content(d: &Dense, field: &Field) -> UniPoly {
    d.iter().fold(UniPoly::zero(field, "x"), |g, p| g.gcd(p))
}

fn primitive(d: &Dense, field: &Field) -> Dense {
    let c = content(d, field);
    d.iter().map(|p| p.exact_div(&c)).collect()
}

/// `lc(b)^k · a` reduced modulo `b` in `y`, with `k` the number of steps.
fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r[r.len() - 1].clone();
        for p in r.iter_mut() {
            *p = p.mul(&lb);
        }
        for (i, q) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&q.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

fn normalize(f: &BiPoly) -> BiPoly {
    match f.terms.iter().max_by_key(|(&(a, b), _)| (b, a)) {
        Some((_, lc)) => f.scale(&lc.inv().expect("nonzero leading coefficient")),
        None => f.clone(),
    }
}

pub(super) fn bivariate_gcd(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let field = f.field().clone();
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    let (df, dg) = (to_dense(f), to_dense(g));
    let cont = content(&df, &field).gcd(&content(&dg, &field));
    let mut a = primitive(&df, &field);
    let mut b = primitive(&dg, &field);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() {
            r
        } else {
            primitive(&r, &field)
        };
    }
    let mut out: Dense = if a.len() <= 1 {
        vec![UniPoly::constant(field.one(), "x")]
    } else {
        a
    };
    for p in out.iter_mut() {
        *p = p.mul(&cont);
    }
    normalize(&from_dense(&out, &field))
}

pub(super) fn bivariate_div(f: &BiPoly, d: &BiPoly) -> Option<BiPoly> {
    assert!(!d.is_zero(), "division by the zero polynomial");
    let key = |e: &(u32, u32)| (e.1, e.0);
    let (&lt_d, lc_d) = d.terms.iter().max_by_key(|(e, _)| key(e))?;
    let lc_inv = lc_d.inv().ok()?;
    let mut r = f.clone();
    let mut q = BiPoly::zero(f.field());
    while let Some((&lt_r, lc_r)) = r.terms.iter().max_by_key(|(e, _)| key(e)) {
        if lt_r.0 < lt_d.0 || lt_r.1 < lt_d.1 {
            return None;
        }
        let t = BiPoly::monomial(lc_r * &lc_inv, lt_r.0 - lt_d.0, lt_r.1 - lt_d.1);
        r = r.sub(&t.mul(d).with_vars(r.vars()));
        q = q.add(&t);
    }
    Some(q)
}

/// Resultant of `f` and `g` with respect to `y`, as a polynomial in `x`.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let field = f.field().clone();
    if f.is_zero() || g.is_zero() {
        return UniPoly::zero(&field, "x");
    }
    let (df, dg) = (to_dense(f), to_dense(g));
    let (m, n) = (df.len() - 1, dg.len() - 1);
    if m == 0 {
        return df[0].pow(n as u32);
    }
    if n == 0 {
        return dg[0].pow(m as u32);
    }
    let size = m + n;
    let zero = UniPoly::zero(&field, "x");
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in dg.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat, &field)
}

fn bareiss_det(mut mat: Vec<Vec<UniPoly>>, field: &Field) -> UniPoly {
    let size = mat.len();
    let mut sign = false;
    let mut prev = UniPoly::constant(field.one(), "x");
    for k in 0..size {
        let Some(p) = (k..size).find(|&i| !mat[i][k].is_zero()) else {
            return UniPoly::zero(field, "x");
        };
        if p != k {
            mat.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.exact_div(&prev);
            }
            mat[i][k] = UniPoly::zero(field, "x");
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        BiPoly::parse(s, &Field::rationals()).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let q = Field::rationals();
        // Res_y(y - x, y + x) = -2x up to the Sylvester sign convention
        let r = resultant_y(&p("y-x"), &p("y+x"));
        assert_eq!(
            r,
            UniPoly::new(q.clone(), vec![q.zero(), q.from_i64(2)], "x")
        );
        // Res_y(y^2 - x^3, y) = -x^3
        let r = resultant_y(&p("y^2-x^3"), &p("y"));
        assert_eq!(r.degree(), Some(3));
        let r = resultant_y(&p("x*y-1"), &p("y^2-x"));
        assert_eq!(r.degree(), Some(3));
    }

    #[test]
    fn gcd_content_cases() {
        assert_eq!(p("x^2*y").gcd(&p("x*y^2")), p("x*y"));
        assert_eq!(p("x^2-1").gcd(&p("x*y+y")), p("x+1"));
        assert_eq!(p("0").gcd(&p("2*x")), p("x"));
    }
}
