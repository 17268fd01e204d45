//! Dense univariate polynomials over an exact field, with just enough
//! factorization machinery to split semisimple endomorphism rings:
//! squarefree decomposition, rational/prime-field root extraction,
//! quadratic splitting, and Berlekamp–Cantor–Zassenhaus over F_p.

use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use rand::Rng;

/// Monic-or-zero polynomial, coefficients low degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub field: FieldSpec,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map_or(false, Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![field.one()] }
    }

    pub fn x_minus(field: FieldSpec, c: &Scalar) -> Self {
        Poly::new(field, vec![c.neg(), field.one()])
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.coeffs.last().unwrap().inv().unwrap();
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul(&lead)).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, out)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(self.field), self.clone());
        }
        let lead_inv = divisor.coeffs.last().unwrap().inv().unwrap();
        let mut quot = vec![self.field.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for j in 0..=d {
                rem[i - d + j] = rem[i - d + j].sub(&c.mul(&divisor.coeffs[j]));
            }
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
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

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&self.field.from_i64(i as i64)))
                .collect(),
        )
    }

    /// x^e mod self, by square and multiply.
    pub fn pow_x_mod(&self, e: u64) -> Poly {
        let mut base = Poly::new(self.field, vec![self.field.zero(), self.field.one()]).rem(self);
        let mut acc = Poly::one(self.field).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, base: &Poly, e: u64) -> Poly {
        let mut b = base.rem(self);
        let mut acc = Poly::one(self.field).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        acc
    }
}

/// Minimal polynomial of a square matrix, via the first linear dependence
/// among its powers applied deterministically.
pub fn min_poly(m: &Matrix) -> Poly {
    assert_eq!(m.rows, m.cols);
    let f = m.field;
    let n = m.rows;
    if n == 0 {
        return Poly::one(f);
    }
    // Vectorize powers of m and look for the first dependence.
    let mut powers: Vec<Vec<Scalar>> = Vec::new();
    let mut current = Matrix::identity(f, n);
    loop {
        let flat: Vec<Scalar> = (0..n * n)
            .map(|k| current.at(k / n, k % n).clone())
            .collect();
        // Solve: flat = sum c_i * powers[i]?
        if !powers.is_empty() {
            let basis = crate::linalg::rows_matrix(f, n * n, &powers).transpose();
            let b = Matrix::from_fn(f, n * n, 1, |i, _| flat[i].clone());
            if let Ok(Some(x)) = basis.solve(&b) {
                let mut coeffs: Vec<Scalar> = (0..powers.len()).map(|i| x.at(i, 0).neg()).collect();
                coeffs.push(f.one());
                return Poly::new(f, coeffs);
            }
        }
        powers.push(flat);
        current = current.mul(m);
        assert!(powers.len() <= n + 1, "minimal polynomial search overran");
    }
}

/// A nontrivial coprime factorization `(f, g)` with `self = f·g`,
/// when one is found. Tries, in order: squarefree splitting, linear
/// factors, quadratic discriminants, and (over F_p) Berlekamp.
pub fn coprime_split<R: Rng>(p: &Poly, rng: &mut R) -> Option<(Poly, Poly)> {
    let deg = p.degree()?;
    if deg < 2 {
        return None;
    }
    // Squarefree split: p = u·v with u squarefree kernel, gcd-based.
    let d = p.derivative();
    if !d.is_zero() {
        let g = p.gcd(&d);
        if !g.is_constant() {
            // p = g·h; strip the common part until coprime.
            let mut f1 = p.div_rem(&g).0; // squarefree-ish part
            let mut f2 = g;
            // Move shared factors of f1 into f2 until gcd(f1, f2) = 1.
            loop {
                let c = f1.gcd(&f2);
                if c.is_constant() {
                    break;
                }
                f1 = f1.div_rem(&c).0;
                f2 = f2.mul(&c);
            }
            if !f1.is_constant() && !f2.is_constant() {
                return Some((f1.monic(), f2.monic()));
            }
        }
    }
    // Root extraction.
    if let Some(root) = find_root(p, rng) {
        let lin = Poly::x_minus(p.field, &root);
        let mut f = Poly::one(p.field);
        let mut rest = p.monic();
        while rest.rem(&lin).is_zero() {
            rest = rest.div_rem(&lin).0;
            f = f.mul(&lin);
        }
        if !rest.is_constant() {
            return Some((f, rest));
        }
        // p = (x-root)^deg: no coprime split from this root.
    }
    // Quadratic: split via discriminant square root.
    if deg == 2 {
        return None; // root search above already covers the reducible case
    }
    // Berlekamp over F_p for squarefree polynomials.
    if let FieldSpec::Prime(_) = p.field {
        let d = p.derivative();
        if !d.is_zero() && p.gcd(&d).is_constant() {
            if let Some((f, g)) = berlekamp_split(p, rng) {
                return Some((f, g));
            }
        }
    }
    None
}

/// A root of `p` in the base field, if any.
fn find_root<R: Rng>(p: &Poly, rng: &mut R) -> Option<Scalar> {
    let f = p.field;
    match f {
        FieldSpec::Prime(q) if q <= 4096 => {
            (0..q).map(|v| f.from_i64(v as i64)).find(|x| p.eval(x).is_zero())
        }
        FieldSpec::Prime(q) => {
            // Random probing plus the distinct-root gcd with x^q − x.
            for _ in 0..64 {
                let x = f.from_i64(rng.gen_range(0..q) as i64);
                if p.eval(&x).is_zero() {
                    return Some(x);
                }
            }
            // Linear factors of p: gcd(p, x^q − x).
            let xq = p.pow_x_mod(q);
            let x = Poly::new(f, vec![f.zero(), f.one()]);
            let lin = p.gcd(&xq.mul(&Poly::one(f)).rem(p).sub_poly(&x.rem(p)));
            if let Some(d) = lin.degree() {
                if d >= 1 {
                    // Equal-degree split down to one linear factor.
                    return linear_of_product(&lin, rng);
                }
            }
            None
        }
        FieldSpec::Rationals => rational_roots(p).into_iter().next(),
    }
}

impl Poly {
    pub fn add_poly(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        Poly::new(self.field, out)
    }

    pub fn sub_poly(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![self.field.zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] = out[i].sub(c);
        }
        Poly::new(self.field, out)
    }
}

/// One linear factor's root from a product of distinct linear factors over F_p.
fn linear_of_product<R: Rng>(p: &Poly, rng: &mut R) -> Option<Scalar> {
    let FieldSpec::Prime(q) = p.field else { return None };
    let f = p.field;
    let mut cur = p.monic();
    for _ in 0..200 {
        match cur.degree() {
            Some(1) => {
                return Some(cur.coeffs[0].neg());
            }
            Some(d) if d >= 2 => {
                if q == 2 {
                    for v in 0..2 {
                        let x = f.from_i64(v);
                        if cur.eval(&x).is_zero() {
                            return Some(x);
                        }
                    }
                    return None;
                }
                let c = f.from_i64(rng.gen_range(0..q) as i64);
                let shifted = Poly::new(f, vec![c, f.one()]);
                let probe = cur.pow_mod(&shifted, (q - 1) / 2);
                let probe = probe.sub_poly(&Poly::one(f));
                let g = cur.gcd(&probe);
                if let Some(gd) = g.degree() {
                    if gd >= 1 && gd < d {
                        cur = if gd <= d - gd { g } else { cur.div_rem(&g).0 };
                    }
                }
            }
            _ => return None,
        }
    }
    None
}

/// All rational roots of a polynomial with rational coefficients, by the
/// rational root theorem on the primitive integer form.
pub fn rational_roots(p: &Poly) -> Vec<Scalar> {
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::{One, Signed, Zero};

    let Some(deg) = p.degree() else { return vec![] };
    if deg == 0 {
        return vec![];
    }
    // Clear denominators.
    let mut denom_lcm = BigInt::one();
    for c in &p.coeffs {
        if let Scalar::Rat(r) = c {
            let d = r.denom();
            let g = num::integer::gcd(denom_lcm.clone(), d.clone());
            denom_lcm = denom_lcm * d / g;
        }
    }
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => (r * BigRational::from(denom_lcm.clone())).to_integer(),
            _ => unreachable!(),
        })
        .collect();
    let mut roots = Vec::new();
    // Root at zero.
    if ints[0].is_zero() {
        roots.push(p.field.zero());
    }
    let a0 = ints.iter().find(|c| !c.is_zero()).unwrap().abs();
    let an = ints.last().unwrap().abs();
    let nums = small_divisors(&a0);
    let dens = small_divisors(&an);
    for n in &nums {
        for d in &dens {
            for sign in [1i64, -1] {
                let cand = Scalar::Rat(BigRational::new(n * BigInt::from(sign), d.clone()));
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Divisors of |n|, exhaustive for moderate n, else divisors up to a bound
/// (sufficient for the structured minimal polynomials arising here).
fn small_divisors(n: &num::bigint::BigInt) -> Vec<num::bigint::BigInt> {
    use num::bigint::BigInt;
    use num::{One, Zero};
    let mut out = vec![BigInt::one()];
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2u32);
    let cap = BigInt::from(1_000_000u64);
    let mut remaining = n.clone();
    while &d * &d <= remaining && d <= cap {
        while (&remaining % &d).is_zero() {
            let mut extended = Vec::new();
            for e in &out {
                let val = e * &d;
                if !out.contains(&val) && !extended.contains(&val) {
                    extended.push(val);
                }
            }
            out.extend(extended);
            remaining /= &d;
        }
        d += 1;
    }
    if remaining > BigInt::one() {
        let mut extended = Vec::new();
        for e in &out {
            let val = e * &remaining;
            if !out.contains(&val) && !extended.contains(&val) {
                extended.push(val);
            }
        }
        out.extend(extended);
    }
    out.sort();
    out.dedup();
    out
}

/// Berlekamp splitting of a squarefree polynomial over F_p into two
/// nontrivial coprime factors.
fn berlekamp_split<R: Rng>(p: &Poly, rng: &mut R) -> Option<(Poly, Poly)> {
    let FieldSpec::Prime(q) = p.field else { return None };
    let f = p.field;
    let n = p.degree()?;
    if n < 2 {
        return None;
    }
    // Berlekamp matrix: rows are x^{iq} mod p in the monomial basis.
    let mut frob = Matrix::zero(f, n, n);
    let mut xq_pow = Poly::one(f);
    let xq = p.pow_x_mod(q);
    for i in 0..n {
        for (j, c) in xq_pow.coeffs.iter().enumerate() {
            frob.set(j, i, c.clone());
        }
        xq_pow = xq_pow.mul(&xq).rem(p);
    }
    let q_minus_id = frob.sub(&Matrix::identity(f, n));
    let kernel = q_minus_id.kernel_basis();
    if kernel.len() < 2 {
        return None; // irreducible
    }
    // Cantor–Zassenhaus on random kernel combinations.
    for _ in 0..200 {
        let mut coeffs = vec![f.zero(); n];
        for v in &kernel {
            let c = f.random_small(rng);
            for (i, x) in v.iter().enumerate() {
                coeffs[i] = coeffs[i].add(&c.mul(x));
            }
        }
        let w = Poly::new(f, coeffs);
        if w.is_constant() {
            continue;
        }
        let candidates = if q == 2 {
            vec![w.clone(), w.sub_poly(&Poly::one(f))]
        } else {
            let e = (q - 1) / 2;
            let we = p.pow_mod(&w, e);
            vec![we.sub_poly(&Poly::one(f)), w.clone()]
        };
        for cand in candidates {
            let g = p.gcd(&cand);
            if let Some(d) = g.degree() {
                if d >= 1 && d < n {
                    let h = p.div_rem(&g).0;
                    if g.gcd(&h).is_constant() {
                        return Some((g.monic(), h.monic()));
                    }
                }
            }
        }
    }
    None
}

/// Bezout coefficients: (u, v) with u·f + v·g = gcd(f, g) (monic).
pub fn extended_gcd(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    let field = f.field;
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub_poly(&q.mul(&s1));
        let t = t0.sub_poly(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    // Normalize to monic gcd.
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let lead = r0.coeffs.last().unwrap().inv().unwrap();
    let scale = |p: &Poly| Poly::new(field, p.coeffs.iter().map(|c| c.mul(&lead)).collect());
    (scale(&r0), scale(&s0), scale(&t0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn poly(coeffs: Vec<i64>) -> Poly {
        Poly::new(q(), coeffs.into_iter().map(|c| q().from_i64(c)).collect())
    }

    #[test]
    fn min_poly_of_projection() {
        // diag(1, 1, 0) has minimal polynomial T(T−1).
        let f = q();
        let mut m = Matrix::zero(f, 3, 3);
        m.set(0, 0, f.one());
        m.set(1, 1, f.one());
        let mu = min_poly(&m);
        assert_eq!(mu, poly(vec![0, -1, 1]));
    }

    #[test]
    fn coprime_split_linear_times_quadratic() {
        // (T − 2)(T² + 1)
        let p = poly(vec![-2, 1]).mul(&poly(vec![1, 0, 1]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (f, g) = coprime_split(&p, &mut rng).unwrap();
        assert_eq!(f.mul(&g).monic(), p.monic());
        assert!(f.gcd(&g).is_constant());
    }

    #[test]
    fn coprime_split_squarefree_berlekamp() {
        // (T² + 1)(T² + T + 2) over F_3: both irreducible over F_3.
        let f3 = FieldSpec::prime(3).unwrap();
        let a = Poly::new(f3, vec![f3.one(), f3.zero(), f3.one()]);
        let b = Poly::new(f3, vec![f3.from_i64(2), f3.one(), f3.one()]);
        let p = a.mul(&b);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let (u, v) = coprime_split(&p, &mut rng).unwrap();
        assert_eq!(u.mul(&v).monic(), p.monic());
        assert!(u.gcd(&v).is_constant());
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = poly(vec![-1, 1]); // T − 1
        let g = poly(vec![1, 1]); // T + 1
        let (d, u, v) = extended_gcd(&f, &g);
        assert!(d.is_constant());
        let lhs = u.mul(&f).add_poly(&v.mul(&g));
        // u·f + v·g = gcd = 1
        assert_eq!(lhs, Poly::one(q()));
    }
}
