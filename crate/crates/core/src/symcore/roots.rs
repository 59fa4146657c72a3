//! Integer roots of rational polynomials by divisor enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::SymError;

/// Integer roots with multiplicities, keyed by root.
pub type IntegerRoots = BTreeMap<i64, usize>;

/// Returns exactly the integer roots of `p` with their multiplicities.
///
/// Denominators are cleared, zero roots are split off, and every divisor of
/// the trailing coefficient inside the Fujiwara bound is tested by exact
/// evaluation; confirmed roots are deflated to count multiplicity.
pub fn integer_roots(p: &Polynomial) -> Result<IntegerRoots, SymError> {
    if p.is_zero() {
        return Err(SymError::ZeroPolynomial);
    }
    let mut coeffs = p.primitive_integer_coeffs();
    let mut roots = IntegerRoots::new();

    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.insert(0, zeros);
        coeffs.drain(..zeros);
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }

    let bound = fujiwara_bound(&coeffs);
    let trailing = coeffs[0].abs();
    for d in divisors_up_to(&trailing, &bound) {
        for cand in [d.clone(), -d] {
            let mut mult = 0;
            while coeffs.len() > 1 && eval_int(&coeffs, &cand).is_zero() {
                coeffs = deflate(&coeffs, &cand);
                mult += 1;
            }
            if mult > 0 {
                let r = cand.to_i64().ok_or(SymError::RootOutOfRange)?;
                roots.insert(r, mult);
            }
        }
        if coeffs.len() <= 1 {
            break;
        }
    }
    Ok(roots)
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(x - root)`; the caller guarantees exactness.
fn deflate(coeffs: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &coeffs[i + 1] + carry * root;
        out[i] = carry.clone();
    }
    out
}

/// `2 * max_i |a_{n-i} / a_n|^{1/i}`, rounded up, as an integer bound on
/// root magnitudes.
fn fujiwara_bound(coeffs: &[BigInt]) -> BigInt {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let mut best = BigInt::one();
    for i in 1..=n {
        let a = coeffs[n - i].abs();
        if a.is_zero() {
            continue;
        }
        // ceil((a / lead)^{1/i}) <= nth_root(ceil(a / lead)) + 1
        let q = a.div_ceil(&lead);
        let mut r = q.nth_root(i as u32);
        if r.pow(i as u32) < q {
            r += 1;
        }
        if r > best {
            best = r;
        }
    }
    best * 2
}

/// Positive divisors of `n` not exceeding `bound`, ascending. Uses a linear
/// scan or trial factorization, whichever is cheaper.
fn divisors_up_to(n: &BigInt, bound: &BigInt) -> Vec<BigInt> {
    let root = n.sqrt();
    let mut out = Vec::new();
    if bound <= &root {
        let mut d = BigInt::one();
        while &d <= bound {
            if (n % &d).is_zero() {
                out.push(d.clone());
            }
            d += 1;
        }
        return out;
    }
    let mut d = BigInt::one();
    let mut large = Vec::new();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if &d <= bound {
                out.push(d.clone());
            }
            if other != d && &other <= bound {
                large.push(other);
            }
        }
        d += 1;
    }
    large.reverse();
    out.extend(large);
    out
}
