//! Univariate polynomials over F_p: division, gcd, squarefree decomposition,
//! distinct-degree plus equal-degree (Cantor–Zassenhaus) factorization, and
//! minimal polynomials of matrices. Equal-degree splitting assumes odd p,
//! which session validation guarantees.

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::mat::{solve, Matrix, Solve};
use crate::rng::Rng;
use std::fmt;

/// Coefficients low-to-high; canonical form has no trailing zeros, the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    fp: Fp,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(fp: Fp, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| fp.reduce(c)).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { fp, coeffs }
    }

    pub fn zero(fp: Fp) -> Self {
        Poly { fp, coeffs: vec![] }
    }

    pub fn one(fp: Fp) -> Self {
        Poly::new(fp, vec![1])
    }

    pub fn x(fp: Fp) -> Self {
        Poly::new(fp, vec![0, 1])
    }

    pub fn constant(fp: Fp, c: u64) -> Self {
        Poly::new(fp, vec![c])
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.fp.add(self.coeff(i), other.coeff(i));
        }
        Poly::new(self.fp, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.fp.sub(self.coeff(i), other.coeff(i));
        }
        Poly::new(self.fp, out)
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(
            self.fp,
            self.coeffs.iter().map(|&a| self.fp.mul(a, c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.fp);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.fp.add(out[i + j], self.fp.mul(a, b));
            }
        }
        Poly::new(self.fp, out)
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let fp = self.fp;
        let dd = divisor.degree().unwrap();
        let lead_inv = fp
            .inv(divisor.leading())
            .expect("leading coefficient nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = fp.mul(*rem.last().unwrap(), lead_inv);
            if c != 0 {
                quot[k] = c;
                for (i, &b) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = fp.sub(rem[k + i], fp.mul(c, b));
                }
            }
            rem.pop();
        }
        (Poly::new(fp, quot), Poly::new(fp, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.fp.inv(self.leading()).unwrap())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s·self + t·other = g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let fp = self.fp;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(fp), Poly::zero(fp));
        let (mut t0, mut t1) = (Poly::zero(fp), Poly::one(fp));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead_inv = fp.inv(r0.leading()).unwrap();
        (r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.fp);
        }
        let out: Vec<u64> = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| self.fp.mul(c, (i as u64 + 1) % self.fp.p()))
            .collect();
        Poly::new(self.fp, out)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.fp.add(self.fp.mul(acc, x), c);
        }
        acc
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(self.fp);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Evaluate at a square matrix, with `unit` standing in for t^0 (the unit
    /// of a subalgebra when working inside an idempotent corner).
    pub fn eval_matrix(&self, m: &Matrix, unit: &Matrix) -> Matrix {
        let mut acc = Matrix::zero(m.fp(), m.rows(), m.cols());
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&unit.scale(c));
        }
        acc
    }
}

/// A full factorization: `constant * prod_i factor_i^multiplicity_i`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub constant: u64,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self, fp: Fp) -> Poly {
        let mut acc = Poly::constant(fp, self.constant);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Factor into monic irreducibles. Requires odd p for equal-degree splitting.
pub fn factor(f: &Poly, rng: &mut Rng) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fp = f.fp();
    let constant = f.leading();
    let monic = f.monic();
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (sq, mult) in squarefree_decomposition(&monic) {
        for irr in factor_squarefree(&sq, rng)? {
            merge(&mut factors, irr, mult);
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    let result = Factorization { constant, factors };
    debug_assert_eq!(result.product(fp), *f);
    Ok(result)
}

fn merge(factors: &mut Vec<(Poly, usize)>, f: Poly, mult: usize) {
    for entry in factors.iter_mut() {
        if entry.0 == f {
            entry.1 += mult;
            return;
        }
    }
    factors.push((f, mult));
}

/// Squarefree decomposition in characteristic p, peeling off p-th powers via
/// the Frobenius (coefficients are already p-th powers in F_p).
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let fp = f.fp();
    if f.degree() == Some(0) || f.is_zero() {
        return vec![];
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = pth_root(f);
        return squarefree_decomposition(&root)
            .into_iter()
            .map(|(g, m)| (g, m * fp.p() as usize))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&deriv);
    let mut w = f.div_rem(&c).0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() {
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * fp.p() as usize));
        }
    }
    out
}

fn pth_root(f: &Poly) -> Poly {
    let p = f.fp().p() as usize;
    let coeffs: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
    Poly::new(f.fp(), coeffs)
}

fn factor_squarefree(f: &Poly, rng: &mut Rng) -> Result<Vec<Poly>> {
    let fp = f.fp();
    let mut out = Vec::new();
    let mut g = f.clone();
    // Distinct-degree: strip the product of all degree-d irreducible factors.
    let mut frob = Poly::x(fp).pow_mod(fp.p(), &g);
    let mut d = 1usize;
    while let Some(deg) = g.degree() {
        if deg == 0 {
            break;
        }
        if 2 * d > deg {
            out.push(g.monic());
            break;
        }
        let gd = frob.sub(&Poly::x(fp)).gcd(&g);
        if !gd.is_one() {
            equal_degree(&gd, d, rng, &mut out)?;
            g = g.div_rem(&gd).0;
            frob = frob.rem(&g);
        }
        frob = frob.pow_mod(fp.p(), &g);
        d += 1;
    }
    Ok(out)
}

/// Cantor–Zassenhaus equal-degree splitting for odd p: every irreducible
/// factor of `f` has degree exactly `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut Rng, out: &mut Vec<Poly>) -> Result<()> {
    let fp = f.fp();
    if fp.p() == 2 {
        return Err(Error::Internal(
            "equal-degree splitting requires odd characteristic".into(),
        ));
    }
    if f.degree() == Some(d) {
        out.push(f.monic());
        return Ok(());
    }
    loop {
        let deg = f.degree().unwrap();
        let mut coeffs = vec![0u64; deg];
        for c in coeffs.iter_mut() {
            *c = fp.reduce(rng.next_u64());
        }
        let a = Poly::new(fp, coeffs);
        if a.is_zero() {
            continue;
        }
        let common = a.gcd(f);
        if !common.is_one() && common.degree() != f.degree() {
            equal_degree(&common, d, rng, out)?;
            equal_degree(&f.div_rem(&common).0, d, rng, out)?;
            return Ok(());
        }
        // b = a^((p^d-1)/2) mod f, computed as Norm(a)^((p-1)/2) to keep
        // exponents inside u64 for any d.
        let mut norm = a.rem(f);
        let mut cur = a.rem(f);
        for _ in 1..d {
            cur = cur.pow_mod(fp.p(), f);
            norm = norm.mul(&cur).rem(f);
        }
        let b = norm.pow_mod((fp.p() - 1) / 2, f);
        let split = b.sub(&Poly::one(fp)).gcd(f);
        if !split.is_one() && split.degree() != f.degree() {
            equal_degree(&split, d, rng, out)?;
            equal_degree(&f.div_rem(&split).0, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Deterministic irreducibility test: f of degree n is irreducible iff
/// x^(p^n) = x mod f and gcd(x^(p^k) - x, f) = 1 for every proper divisor
/// k of n.
pub fn is_irreducible(f: &Poly) -> bool {
    let fp = f.fp();
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let x = Poly::x(fp);
    let mut frob = x.clone();
    let mut frobs = Vec::with_capacity(n);
    for _ in 0..n {
        frob = frob.pow_mod(fp.p(), f);
        frobs.push(frob.clone());
    }
    if frobs[n - 1] != x.rem(f) {
        return false;
    }
    for k in 1..n {
        if n % k == 0 && !frobs[k - 1].sub(&x).gcd(f).is_one() {
            return false;
        }
    }
    true
}

/// Monic minimal polynomial of a square matrix.
pub fn min_poly(m: &Matrix) -> Poly {
    min_poly_with_unit(m, &Matrix::identity(m.fp(), m.rows()))
}

/// Monic minimal polynomial of `m` inside the corner algebra whose unit is
/// `unit` (so t^0 evaluates to `unit`). With `unit = I` this is the usual
/// minimal polynomial.
pub fn min_poly_with_unit(m: &Matrix, unit: &Matrix) -> Poly {
    let fp = m.fp();
    assert!(m.is_square() && unit.rows() == m.rows() && unit.cols() == m.cols());
    let dim2 = m.rows() * m.cols();
    let mut powers: Vec<Matrix> = vec![unit.clone()];
    loop {
        let k = powers.len();
        // Columns are the flattened powers unit, m, m^2, ..., m^(k-1).
        let mut a = Matrix::zero(fp, dim2, k);
        for (j, pw) in powers.iter().enumerate() {
            for (i, &v) in pw.flatten_row().iter().enumerate() {
                a.set(i, j, v);
            }
        }
        let next = powers.last().unwrap().mul(m);
        let mut b = Matrix::zero(fp, dim2, 1);
        for (i, &v) in next.flatten_row().iter().enumerate() {
            b.set(i, 0, v);
        }
        if let Solve::Solution { particular, .. } = solve(&a, &b).expect("shapes agree") {
            // m^k = sum c_i m^i, so the minimal polynomial is t^k - sum c_i t^i.
            let mut coeffs = vec![0u64; k + 1];
            for i in 0..k {
                coeffs[i] = fp.neg(particular.at(i, 0));
            }
            coeffs[k] = 1;
            let mp = Poly::new(fp, coeffs);
            debug_assert!(mp.eval_matrix(m, unit).is_zero());
            return mp;
        }
        powers.push(next);
        assert!(
            powers.len() <= dim2 + 1,
            "minimal polynomial search overran"
        );
    }
}
