//! Sign bookkeeping for Clifford monomials stored as bitsets. Everything is
//! derived from transposition counts against the order ω₁ < ω₂ < ⋯.

/// Number of pairs (i ∈ a, j ∈ b) with i > j: the transpositions needed to
/// sort the concatenated word ω^a ω^b.
pub fn inversions(a: u64, b: u64) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        count += (a >> j >> 1).count_ones();
    }
    count
}

pub fn parity_sign(count: u32) -> i8 {
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// ω^a ∧ ω^b = sign · ω^{a∪b}, or `None` when they share a generator.
pub fn wedge(a: u64, b: u64) -> Option<(i8, u64)> {
    if a & b != 0 {
        None
    } else {
        Some((parity_sign(inversions(a, b)), a | b))
    }
}

/// The Clifford product with ω_i² = 1: ω^a ⋆ ω^b = sign · ω^{a△b}.
pub fn product(a: u64, b: u64) -> (i8, u64) {
    (parity_sign(inversions(a, b)), a ^ b)
}

/// Left derivative ∂/∂ω_{i+1} of ω^a (bit index `i`).
pub fn left_derivative(a: u64, i: usize) -> Option<(i8, u64)> {
    if a >> i & 1 == 0 {
        return None;
    }
    let below = (a & ((1u64 << i) - 1)).count_ones();
    Some((parity_sign(below), a & !(1 << i)))
}

/// Sign of reversing the order of a word of length `len`: (−1)^{len(len−1)/2}.
pub fn reversal_sign(len: u32) -> i8 {
    parity_sign(len * len.saturating_sub(1) / 2)
}

/// Bitset of the first `n` generators.
pub fn full(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_of_generators() {
        assert_eq!(product(0b1, 0b1), (1, 0));
        assert_eq!(product(0b10, 0b01), (-1, 0b11));
        assert_eq!(product(0b01, 0b10), (1, 0b11));
        // (ω₁ω₂)(ω₁ω₂) = −1
        assert_eq!(product(0b11, 0b11), (-1, 0));
    }

    #[test]
    fn wedge_vanishes_on_overlap() {
        assert_eq!(wedge(0b1, 0b1), None);
        assert_eq!(wedge(0b100, 0b011), Some((1, 0b111)));
        assert_eq!(wedge(0b010, 0b101), Some((-1, 0b111)));
    }

    #[test]
    fn derivative_signs() {
        assert_eq!(left_derivative(0b110, 2), Some((-1, 0b010)));
        assert_eq!(left_derivative(0b110, 1), Some((1, 0b100)));
        assert_eq!(left_derivative(0b110, 0), None);
    }

    #[test]
    fn product_is_associative() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                for c in 0..16u64 {
                    let (s1, ab) = product(a, b);
                    let (s2, l) = product(ab, c);
                    let (s3, bc) = product(b, c);
                    let (s4, r) = product(a, bc);
                    assert_eq!((s1 * s2, l), (s3 * s4, r));
                }
            }
        }
    }
}
