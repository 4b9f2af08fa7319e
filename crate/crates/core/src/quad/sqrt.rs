use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::QuadElement;
use crate::arith::rational_sqrt;

/// Square root of `alpha` in its field, if one exists.
///
/// The returned root has nonnegative first coordinate, and nonnegative second
/// coordinate when the first vanishes.
pub fn sqrt_in_field(alpha: &QuadElement) -> Option<QuadElement> {
    if alpha.is_zero() {
        return Some(alpha.clone());
    }
    let field = alpha.field();
    let root = if alpha.is_rational() {
        let q = alpha.x();
        if let Some(r) = rational_sqrt(&q) {
            QuadElement::from_rational(field, &r)
        } else {
            // alpha = r^2 d
            let r = rational_sqrt(&(q / BigRational::from_integer(field.d().into())))?;
            QuadElement::sqrt_disc(field).scale_rational(&r)
        }
    } else {
        // (alpha + s)^2 = alpha (Tr(alpha) + 2s) when s^2 = Nm(alpha)
        let s = rational_sqrt(&alpha.norm())?;
        let tr = alpha.trace();
        let two = BigRational::from_integer(2.into());
        [s.clone(), -s].into_iter().find_map(|s| {
            let tt = &tr + &two * &s;
            if tt.is_zero() {
                return None;
            }
            let t = rational_sqrt(&tt)?;
            let num = alpha + &QuadElement::from_rational(field, &s);
            Some(num.scale_rational(&t.recip()))
        })?
    };
    debug_assert_eq!(&(&root * &root), alpha);
    let (x, y, _) = root.parts();
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        Some(-root)
    } else {
        Some(root)
    }
}

/// Whether `alpha` is a nonzero square in its field.
pub fn is_square(alpha: &QuadElement) -> bool {
    !alpha.is_zero() && sqrt_in_field(alpha).is_some()
}
