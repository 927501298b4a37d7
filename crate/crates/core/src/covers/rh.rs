//! Riemann-Hurwitz bookkeeping for branched translation covers.

/// Euler characteristic of a degree-d cover of a surface with
/// characteristic `chi`, ramified with the given indices.
pub fn cover_chi(degree: i64, chi: i64, ramification: &[i64]) -> i64 {
    degree * chi - ramification.iter().map(|e| e - 1).sum::<i64>()
}

/// Genus from an even Euler characteristic.
pub fn genus_of_chi(chi: i64) -> Option<i64> {
    (chi % 2 == 0 && chi <= 2).then_some(1 - chi / 2)
}

/// Lower bound forced on the genus of a branched cover: g' > 1 + d(g - 1).
pub fn branched_genus_exceeds(g_cover: i64, degree: i64, g: i64) -> bool {
    g_cover > 1 + degree * (g - 1)
}

/// Whether a cover of degree d can be branched over one point only, with
/// the given ramification indices above it. The indices must sum to d and
/// the resulting characteristic must be even.
pub fn single_branch_possible(degree: i64, chi: i64, ramification: &[i64]) -> bool {
    ramification.iter().sum::<i64>() == degree
        && ramification.iter().any(|&e| e > 1)
        && genus_of_chi(cover_chi(degree, chi, ramification)).is_some()
}

/// Whether k copies of a corner of angle `numer/denom`·π fit around a
/// vertex of a tiled polygon without closing up or exceeding a full turn.
pub fn multiplier_fits(k: u32, numer: u32, denom: u32) -> bool {
    (k * numer) < 2 * denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_triple_cover() {
        let chi = cover_chi(3, -2, &[3]);
        assert_eq!(chi, -8);
        assert_eq!(genus_of_chi(chi), Some(5));
        assert!(branched_genus_exceeds(5, 3, 2));
    }

    #[test]
    fn double_cover_cannot_branch_once() {
        // one simple branch point leaves an odd characteristic
        assert!(!single_branch_possible(2, -2, &[2]));
        assert!(single_branch_possible(3, -2, &[3]));
        assert!(!single_branch_possible(2, -2, &[2, 2]));
    }

    #[test]
    fn seven_twelfths_corner_takes_at_most_three_copies() {
        assert!(multiplier_fits(3, 7, 12));
        assert!(!multiplier_fits(4, 7, 12));
    }
}
