//! Cantor pairing over arbitrary-precision integers.

use num_bigint::BigUint;

/// `π(x, y) = (x + y)(x + y + 1)/2 + y`.
pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair`].
pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2) is the diagonal holding z
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - &t;
    let x = &w - &y;
    (x, y)
}

/// Right-nested tuple code `⟨a, b, c⟩ = π(a, π(b, c))`. A 1-tuple encodes as
/// its single element.
///
/// # Panics
/// On an empty slice.
pub fn pair_tuple(values: &[BigUint]) -> BigUint {
    let (last, init) = values.split_last().expect("tuple must not be empty");
    init.iter().rev().fold(last.clone(), |acc, v| pair(v, &acc))
}

/// Inverse of [`pair_tuple`] for a known arity.
pub fn unpair_tuple(z: &BigUint, arity: usize) -> Vec<BigUint> {
    assert!(arity >= 1, "arity must be at least 1");
    let mut out = Vec::with_capacity(arity);
    let mut rest = z.clone();
    for _ in 1..arity {
        let (head, tail) = unpair(&rest);
        out.push(head);
        rest = tail;
    }
    out.push(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&n(0), &n(0)), n(0));
        assert_eq!(pair(&n(1), &n(2)), n(8));
        assert_eq!(pair(&n(2), &n(1)), n(7));
    }

    #[test]
    fn unpair_inverts_pair_below_1024() {
        for x in 0..1024u64 {
            for y in 0..1024u64 {
                assert_eq!(unpair(&pair(&n(x), &n(y))), (n(x), n(y)));
            }
        }
    }

    #[test]
    fn pair_enumerates_naturals_in_order() {
        // walking the Cantor diagonals must hit 0, 1, 2, ... in sequence
        let mut expected = 0u64;
        for d in 0..60u64 {
            for y in 0..=d {
                assert_eq!(pair(&n(d - y), &n(y)), n(expected));
                expected += 1;
            }
        }
    }

    #[test]
    fn tuples_round_trip_with_huge_values() {
        let big = BigUint::from(u64::MAX) * BigUint::from(u64::MAX);
        let t = vec![n(3), big.clone(), n(0), big];
        let z = pair_tuple(&t);
        assert_eq!(unpair_tuple(&z, 4), t);
        assert_eq!(pair_tuple(&[n(5)]), n(5));
        assert_eq!(pair_tuple(&[n(1), n(2), n(3)]), pair(&n(1), &pair(&n(2), &n(3))));
    }
}
