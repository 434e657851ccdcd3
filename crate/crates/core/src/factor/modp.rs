//! Distinct-degree factorization over small prime fields, used only to
//! bound the possible degrees of integer factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Dense polynomial over GF(p), low to high, no trailing zeros.
type Pm = Vec<u64>;

fn trim(mut a: Pm) -> Pm {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &Pm) -> usize {
    a.len().saturating_sub(1)
}

fn reduce(f: &IntPoly, p: u64) -> Pm {
    let pb = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits")).collect())
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn sub(a: &Pm, b: &Pm, p: u64) -> Pm {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mul(a: &Pm, b: &Pm, p: u64) -> Pm {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn div_rem(a: &Pm, b: &Pm, p: u64) -> (Pm, Pm) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = pow_mod(*b.last().unwrap(), p - 2, p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for s in (0..q.len()).rev() {
        let c = r[s + b.len() - 1] * inv % p;
        q[s] = c;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[s + j] = (r[s + j] + p - c * bj % p) % p;
            }
        }
    }
    (trim(q), trim(r))
}

fn gcd(a: &Pm, b: &Pm, p: u64) -> Pm {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = div_rem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = pow_mod(l, p - 2, p);
        a.iter_mut().for_each(|c| *c = *c * inv % p);
    }
    a
}

fn derivative(a: &Pm, p: u64) -> Pm {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect())
}

fn pow_mod_poly(b: &Pm, mut e: u64, f: &Pm, p: u64) -> Pm {
    let mut result: Pm = vec![1];
    let mut base = div_rem(b, f, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = div_rem(&mul(&result, &base, p), f, p).1;
        }
        base = div_rem(&mul(&base, &base, p), f, p).1;
        e >>= 1;
    }
    result
}

/// True when monic `f` is squarefree modulo one of the first few primes,
/// which implies it is squarefree over ℚ.
pub fn squarefree_mod_some_prime(f: &IntPoly) -> bool {
    PRIMES.iter().take(12).any(|&p| {
        let g = reduce(f, p);
        deg(&g) == f.degree() && deg(&gcd(&g, &derivative(&g, p), p)) == 0
    })
}

/// Degrees of the irreducible factors of monic `f` modulo `p`, or `None`
/// when `f` is not squarefree mod `p`.
pub fn ddf_degrees(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let mut g = reduce(f, p);
    if deg(&g) != f.degree() {
        return None;
    }
    if deg(&gcd(&g, &derivative(&g, p), p)) > 0 {
        return None;
    }
    let x: Pm = vec![0, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while 2 * (d + 1) <= deg(&g) {
        d += 1;
        h = pow_mod_poly(&h, p, &g, p);
        let common = gcd(&g, &sub(&h, &x, p), p);
        let cd = deg(&common);
        if cd > 0 {
            out.extend(std::iter::repeat(d).take(cd / d));
            g = div_rem(&g, &common, p).0;
            h = div_rem(&h, &g, p).1;
        }
    }
    if deg(&g) > 0 {
        out.push(deg(&g));
    }
    Some(out)
}

fn subset_sums(degrees: &[usize], total: usize) -> Vec<bool> {
    let mut can = vec![false; total + 1];
    can[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

/// `out[k]` is false when no factor of degree `k` over ℤ is possible:
/// every integer factor reduces to a product of factors mod each `p`.
pub fn admissible_degrees(f: &IntPoly, rounds: usize) -> Vec<bool> {
    let n = f.degree();
    let mut adm = vec![true; n + 1];
    let mut used = 0;
    for &p in PRIMES.iter() {
        if used == rounds {
            break;
        }
        if let Some(ds) = ddf_degrees(f, p) {
            let s = subset_sums(&ds, n);
            adm.iter_mut().zip(s).for_each(|(a, b)| *a &= b);
            used += 1;
        }
    }
    adm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn ddf_small() {
        // x^2 + 1 splits mod 5, is irreducible mod 3
        let f = Poly::from_i64(&[1, 0, 1]);
        assert_eq!(ddf_degrees(&f, 5), Some(vec![1, 1]));
        assert_eq!(ddf_degrees(&f, 3), Some(vec![2]));
        // x^2 - 1 has a double root mod 2 only; mod 3 it splits
        assert_eq!(ddf_degrees(&Poly::from_i64(&[-1, 0, 1]), 3), Some(vec![1, 1]));
        assert_eq!(ddf_degrees(&Poly::from_i64(&[1, 2, 1]), 7), None);
    }

    #[test]
    fn degrees_total() {
        let f = Poly::from_i64(&[1, 1, -1, 0, -1, -3, 1]);
        for p in PRIMES {
            if let Some(ds) = ddf_degrees(&f, p) {
                assert_eq!(ds.iter().sum::<usize>(), 6);
            }
        }
    }

    #[test]
    fn admissible_excludes_impossible() {
        // (x^2 - 3x + 1)(x^2 - x - 1): degree 2 must stay admissible
        let f = Poly::from_i64(&[1, -3, 1]).mul(&Poly::from_i64(&[-1, -1, 1]));
        let adm = admissible_degrees(&f, 8);
        assert!(adm[2]);
        // x^4 + 1 is reducible mod every prime but irreducible over ℤ;
        // the test can only ever rule degrees out, never in.
        let g = Poly::from_i64(&[1, 0, 0, 0, 1]);
        assert!(admissible_degrees(&g, 8)[2]);
    }
}
