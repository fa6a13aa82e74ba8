use crate::error::{Error, Result};

/// `(u, v) -> (i, j)` with `i = u - 2v + (w+k)/2`, `j = 2u - 2v + (3w+k-2)/2`.
pub fn grading_map(u: i64, v: i64, w: i64, k: i64) -> Result<(i64, i64)> {
    if (w + k).rem_euclid(2) != 0 {
        return Err(Error::Invariant(format!("w + k = {} is odd", w + k)));
    }
    Ok((u - 2 * v + (w + k) / 2, 2 * u - 2 * v + (3 * w + k - 2) / 2))
}

/// `(i, j) -> (u, v)` with `u = j - i - w + 1`, `v = j/2 - i - (w-k-2)/4`.
pub fn grading_map_inverse(i: i64, j: i64, w: i64, k: i64) -> Result<(i64, i64)> {
    let num = 2 * j - 4 * i - (w - k - 2);
    if num.rem_euclid(4) != 0 {
        return Err(Error::Invariant(format!("({i}, {j}) is not in the image of the grading map")));
    }
    Ok((j - i - w + 1, num / 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trefoil4_values() {
        assert_eq!(grading_map(2, 2, -4, 4).unwrap(), (-2, -5));
        assert_eq!(grading_map(-1, 1, -4, 4).unwrap(), (-3, -9));
        assert!(grading_map(0, 0, -3, 4).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(u in -20i64..20, v in -20i64..20, w in -20i64..20, half in -20i64..20) {
            let k = 2 * half - w;
            let (i, j) = grading_map(u, v, w, k).unwrap();
            prop_assert_eq!(grading_map_inverse(i, j, w, k).unwrap(), (u, v));
        }
    }
}
