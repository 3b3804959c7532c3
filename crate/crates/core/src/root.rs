//! Plain bisection on a bracketed sign change.

/// Bracket width at which bisection stops.
pub const BRACKET_WIDTH: f64 = 1e-14;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub width: f64,
}

/// Bisects `f` on `[lo, hi]`; the caller guarantees `f(lo)` and `f(hi)`
/// have opposite signs. Returns `None` if `f` fails at an interior point.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, f_lo: f64) -> Option<Root>
where
    F: FnMut(f64) -> Option<f64>,
{
    let lo_positive = f_lo > 0.0;
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= BRACKET_WIDTH || mid == lo || mid == hi {
            break;
        }
        let v = f(mid)?;
        if v == 0.0 {
            return Some(Root { x: mid, width: 0.0 });
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(Root { x: 0.5 * (lo + hi), width: (hi - lo).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| Some(x * x - 2.0), 1.0, 2.0, -1.0).unwrap();
        assert!((r.x - std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(r.width <= BRACKET_WIDTH);
    }

    #[test]
    fn decreasing_function() {
        let r = bisect(|x| Some(0.3 - x), -1.0, 1.0, 1.3).unwrap();
        assert!((r.x - 0.3).abs() < 1e-14);
    }

    #[test]
    fn failure_propagates() {
        assert!(bisect(|x| if x > 0.4 { None } else { Some(x - 0.7) }, 0.0, 1.0, -0.7).is_none());
    }
}
