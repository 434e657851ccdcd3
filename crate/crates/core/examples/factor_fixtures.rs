use num_bigint::BigInt;
use penner::factor::factor_monic;
use penner::poly::Poly;
use penner::spectral::largest_real_root;

fn main() -> penner::Result<()> {
    let polys = [
        Poly::from_i64(&[1, 1, -1, 0, -1, -3, 1]),
        Poly::from_i64(&[-1, -1, 1, -1, -3, 1]),
        // reducible: (x^2 - 3x + 1)(x^2 - x - 1)
        Poly::from_i64(&[-1, 2, 3, -4, 1]),
        // irreducible over Z, reducible mod every prime
        Poly::from_i64(&[1, 0, 0, 0, 1]),
    ];
    for p in &polys {
        let fac = factor_monic(p);
        let parts: Vec<String> = fac.factors.iter().map(|(f, m)| format!("({f})^{m}")).collect();
        println!("{p}\n  = {}  certified: {}", parts.join(" "), fac.certified);
        let bound = p.coeffs().iter().map(|c| c.magnitude().clone()).max().unwrap() + 1u32;
        if let Ok(r) = largest_real_root(p, &BigInt::from(bound), 20) {
            println!("  largest real root {}", r.to_decimal(12));
        }
    }
    Ok(())
}
