//! Dense linear algebra and polynomial arithmetic over a prime field F_p,
//! sized for class-matrix eigenspace splitting (a few hundred dimensions).

/// Prime field context. All values are in [0, p).
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let factors = crate::cyclotomic::prime_factors(self.p - 1);
        'outer: for g in 2..self.p {
            for &(q, _) in &factors {
                if self.pow(g, (self.p - 1) / q) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("no primitive root found");
    }
}

/// Is n prime? Trial division; n stays small here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p = 1 mod m with p > lower.
pub fn find_prime(m: u64, lower: u64) -> u64 {
    let mut p = (lower / m + 1) * m + 1;
    loop {
        if is_prime(p) {
            return p;
        }
        p += m;
    }
}

// ---- polynomials over F_p, low-degree-first, trimmed ----

pub fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn poly_mul(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(out)
}

pub fn poly_rem(f: &Fp, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]);
    while r.len() > dm {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for j in 0..=dm {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, m[j]));
            }
        }
        r.pop();
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    poly_trim(r)
}

pub fn poly_gcd(f: &Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut r0, mut r1) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !r1.is_empty() {
        let r = poly_rem(f, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if let Some(&lead) = r0.last() {
        let li = f.inv(lead);
        for c in r0.iter_mut() {
            *c = f.mul(*c, li);
        }
    }
    r0
}

pub fn poly_powmod(f: &Fp, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &sq), m);
        }
        sq = poly_rem(f, &poly_mul(f, &sq, &sq), m);
        e >>= 1;
    }
    acc
}

/// All roots in F_p of a polynomial that splits into distinct linear factors
/// over F_p (callers guarantee this). Deterministic: fixed-seed splitting.
pub fn roots_of_split_poly(f: &Fp, poly: &[u64]) -> Vec<u64> {
    let mut poly = poly_trim(poly.to_vec());
    if let Some(&lead) = poly.last() {
        let li = f.inv(lead);
        for c in poly.iter_mut() {
            *c = f.mul(*c, li);
        }
    }
    // keep only the split square-free part: gcd with x^p - x
    let xp = poly_powmod(f, &[0, 1], f.p, &poly);
    let mut xp_minus_x = xp;
    if xp_minus_x.len() < 2 {
        xp_minus_x.resize(2, 0);
    }
    xp_minus_x[1] = f.sub(xp_minus_x[1], 1);
    let sf = poly_gcd(f, &poly, &poly_trim(xp_minus_x));
    let mut out = Vec::new();
    let mut seed = 0x5eed_cafe_f00du64;
    let mut stack = vec![sf];
    while let Some(g) = stack.pop() {
        if g.len() <= 1 {
            continue;
        }
        if g.len() == 2 {
            // x + c = 0
            out.push(f.sub(0, f.mul(g[0], f.inv(g[1]))));
            continue;
        }
        // random shift split: gcd((x+d)^((p-1)/2) - 1, g)
        loop {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let d = (seed >> 16) % f.p;
            let mut h = poly_powmod(f, &[d, 1], (f.p - 1) / 2, &g);
            if h.is_empty() {
                h = vec![0];
            }
            h[0] = f.sub(h[0], 1);
            let g1 = poly_gcd(f, &g, &poly_trim(h.clone()));
            if g1.len() > 1 && g1.len() < g.len() {
                // divide out
                let g2 = poly_div_exact(f, &g, &g1);
                stack.push(g1);
                stack.push(g2);
                break;
            }
        }
    }
    out.sort_unstable();
    out
}

fn poly_div_exact(f: &Fp, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let lead_inv = f.inv(den[dd]);
    let mut q = vec![0u64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = f.mul(r[i + dd], lead_inv);
        q[i] = c;
        if c != 0 {
            for j in 0..=dd {
                r[i + j] = f.sub(r[i + j], f.mul(c, den[j]));
            }
        }
    }
    poly_trim(q)
}

// ---- matrices over F_p (row-major dense) ----

#[derive(Clone)]
pub struct MatFp {
    pub n: usize,
    pub m: usize,
    pub a: Vec<u64>, // n rows, m cols
}

impl MatFp {
    pub fn zero(n: usize, m: usize) -> Self {
        MatFp {
            n,
            m,
            a: vec![0; n * m],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.m + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.m + j] = v;
    }
}

/// Characteristic polynomial of a square matrix via Hessenberg reduction.
pub fn charpoly(f: &Fp, mat: &MatFp) -> Vec<u64> {
    let n = mat.n;
    assert_eq!(mat.n, mat.m);
    let mut h = mat.clone();
    // reduce to upper Hessenberg by similarity transforms
    for c in 0..n.saturating_sub(2) {
        // find pivot in column c below row c+1
        let piv = ((c + 1)..n).find(|&r| h.at(r, c) != 0);
        let Some(piv) = piv else { continue };
        if piv != c + 1 {
            // swap rows and columns
            for j in 0..n {
                let (x, y) = (h.at(piv, j), h.at(c + 1, j));
                h.set(piv, j, y);
                h.set(c + 1, j, x);
            }
            for i in 0..n {
                let (x, y) = (h.at(i, piv), h.at(i, c + 1));
                h.set(i, piv, y);
                h.set(i, c + 1, x);
            }
        }
        let inv = f.inv(h.at(c + 1, c));
        for r in (c + 2)..n {
            let factor = f.mul(h.at(r, c), inv);
            if factor == 0 {
                continue;
            }
            // row r -= factor * row c+1 ; col c+1 += factor * col r
            for j in 0..n {
                let v = f.sub(h.at(r, j), f.mul(factor, h.at(c + 1, j)));
                h.set(r, j, v);
            }
            for i in 0..n {
                let v = f.add(h.at(i, c + 1), f.mul(factor, h.at(i, r)));
                h.set(i, c + 1, v);
            }
        }
    }
    // charpoly of Hessenberg by the standard recurrence:
    // p_0 = 1, p_k = (x - h[k-1][k-1]) p_{k-1}
    //              - sum_{i<k-1} h[i][k-1] (prod_{j=i+1}^{k-1} h[j][j-1]) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        // (x - h_{k-1,k-1}) * p_{k-1}
        let prev = &polys[k - 1];
        let mut cur = vec![0u64; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            cur[i + 1] = f.add(cur[i + 1], c);
            cur[i] = f.sub(cur[i], f.mul(h.at(k - 1, k - 1), c));
        }
        let mut prod = 1u64;
        for i in (0..k.saturating_sub(1)).rev() {
            prod = f.mul(prod, h.at(i + 1, i));
            if prod == 0 {
                break;
            }
            let coef = f.mul(h.at(i, k - 1), prod);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i].iter().enumerate() {
                cur[j] = f.sub(cur[j], f.mul(coef, c));
            }
        }
        polys.push(poly_trim_keep(cur));
    }
    polys.pop().unwrap()
}

fn poly_trim_keep(v: Vec<u64>) -> Vec<u64> {
    // keep at least the constant term
    let mut v = v;
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &Fp, mat: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let nrows = mat.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, pr);
        let inv = f.inv(mat[row][col]);
        for j in col..ncols {
            mat[row][j] = f.mul(mat[row][j], inv);
        }
        for r in 0..nrows {
            if r != row && mat[r][col] != 0 {
                let factor = mat[r][col];
                for j in col..ncols {
                    let v = f.sub(mat[r][j], f.mul(factor, mat[row][j]));
                    mat[r][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    pivots
}

/// Basis of the null space of (mat - lambda I) restricted to square mat.
pub fn eigenspace(f: &Fp, mat: &MatFp, lambda: u64) -> Vec<Vec<u64>> {
    let n = mat.n;
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        f.sub(mat.at(i, j), lambda)
                    } else {
                        mat.at(i, j)
                    }
                })
                .collect()
        })
        .collect();
    let pivots = rref(f, &mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(rows[r][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        let f = Fp::new(101);
        // [[2,1],[0,3]] -> (x-2)(x-3) = x^2 - 5x + 6
        let mut m = MatFp::zero(2, 2);
        m.set(0, 0, 2);
        m.set(0, 1, 1);
        m.set(1, 1, 3);
        let cp = charpoly(&f, &m);
        assert_eq!(cp, vec![6, 101 - 5, 1]);
    }

    #[test]
    fn roots_simple() {
        let f = Fp::new(13);
        // (x-3)(x-5)(x-7) mod 13
        let poly = poly_mul(
            &f,
            &poly_mul(&f, &[13 - 3, 1], &[13 - 5, 1]),
            &[13 - 7, 1],
        );
        let mut r = roots_of_split_poly(&f, &poly);
        r.sort_unstable();
        assert_eq!(r, vec![3, 5, 7]);
    }

    #[test]
    fn eigenspace_small() {
        let f = Fp::new(7);
        let mut m = MatFp::zero(2, 2);
        m.set(0, 0, 2);
        m.set(1, 1, 2);
        let b = eigenspace(&f, &m, 2);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn find_prime_works() {
        let p = find_prime(12, 100);
        assert!(p > 100 && p % 12 == 1 && is_prime(p));
    }
}
