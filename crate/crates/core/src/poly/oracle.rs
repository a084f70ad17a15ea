//! Schubert polynomials from divided differences, independent of pipe dreams.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Monomial, MultiPoly};
use crate::perm::Permutation;

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`, computed monomial by monomial.
pub fn divided_difference(f: &MultiPoly, i: i64) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, c) in f.terms() {
        let a = m.x.get(&i).copied().unwrap_or(0);
        let b = m.x.get(&(i + 1)).copied().unwrap_or(0);
        if a == b {
            continue;
        }
        let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
        // (x_i^a x_{i+1}^b - x_i^b x_{i+1}^a) / (x_i - x_{i+1})
        for t in 0..hi - lo {
            let mut m2 = m.clone();
            set_exponent(&mut m2.x, i, hi - 1 - t);
            set_exponent(&mut m2.x, i + 1, lo + t);
            out = &out + &MultiPoly::term(c * BigInt::from(sign), m2);
        }
    }
    out
}

fn set_exponent(map: &mut BTreeMap<i64, u32>, k: i64, e: u32) {
    if e == 0 {
        map.remove(&k);
    } else {
        map.insert(k, e);
    }
}

/// `𝔖_w` via `𝔖_{w0} = x_1^{n-1} ⋯ x_{n-1}` and `𝔖_w = ∂_i 𝔖_{w s_i}` for ascents `i`.
pub fn divided_difference_schubert(w: &Permutation) -> MultiPoly {
    let n = w.size();
    schubert_in(w, n)
}

fn schubert_in(w: &Permutation, n: usize) -> MultiPoly {
    match (1..n as u32).find(|&i| !w.has_descent(i)) {
        Some(i) => divided_difference(&schubert_in(&w.times_simple(i), n), i as i64),
        None => {
            let mut m = Monomial::one();
            for i in 1..n {
                m.x.insert(i as i64, (n - i) as u32);
            }
            MultiPoly::term(BigInt::from(1), m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_schubert_polynomials() {
        let x = MultiPoly::x;
        let s = |w: &str| divided_difference_schubert(&w.parse().unwrap());
        assert_eq!(s("132"), &x(1) + &x(2));
        assert_eq!(s("231"), &x(1) * &x(2));
        assert_eq!(s("312"), x(1).pow(2));
        assert_eq!(s("213"), x(1));
        assert_eq!(s("123"), MultiPoly::one());
    }
}
