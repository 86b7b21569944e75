use serde::{Deserialize, Serialize};

use super::WallError;
use crate::field::Field;

/// Affine type of h(s^2 + u^2) - 2g s u - 2c s = 0 in a single (s, u) plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicType {
    Parabola,
    Ellipse,
    Cone,
    RightHyperbola,
    LeftHyperbola,
}

/// 4(g^2 - h^2).
pub fn conic_discriminant<F: Field>(h: &F, g: &F) -> F {
    F::from_i64(4) * (g.square() - h.square())
}

/// P = -2c/(g^2 - h^2) (h, g), the second point of the conic on the line through the origin.
pub fn conic_apex<F: Field>(h: &F, g: &F, c2: &F) -> Option<(F, F)> {
    let den = g.square() - h.square();
    if den.is_zero() {
        return None;
    }
    let k = -(F::from_i64(2) * c2.clone()) / den;
    Some((k.clone() * h.clone(), k * g.clone()))
}

/// Table lookup on the sign of the discriminant and of c2. Left and right hyperbolas are told
/// apart by the side of the apex. Inputs the table does not cover give `Unclassified`.
pub fn classify_conic<F: Field + PartialOrd>(h: &F, g: &F, c2: &F) -> Result<ConicType, WallError> {
    let zero = F::zero();
    if h.is_zero() && g.is_zero() && c2.is_zero() {
        return Err(WallError::Invalid("all coefficients vanish".into()));
    }
    if h.is_zero() {
        // s (h s - 2 g u - 2 c) degenerates to a line pair through the origin only when c = 0.
        return if c2.is_zero() { Ok(ConicType::Cone) } else { Err(WallError::Unclassified) };
    }
    let delta = conic_discriminant(h, g);
    if delta.is_zero() {
        return if *c2 > zero { Ok(ConicType::Parabola) } else { Err(WallError::Unclassified) };
    }
    if delta < zero {
        return if *c2 > zero { Ok(ConicType::Ellipse) } else { Err(WallError::Unclassified) };
    }
    if c2.is_zero() {
        return Ok(ConicType::Cone);
    }
    let (p1, _) = conic_apex(h, g, c2).ok_or(WallError::Unclassified)?;
    if p1 > zero {
        Ok(ConicType::RightHyperbola)
    } else {
        Ok(ConicType::LeftHyperbola)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    #[test]
    fn table_rows() {
        assert_eq!(classify_conic(&-1.0, &2f64.sqrt(), &-0.5), Ok(ConicType::LeftHyperbola));
        assert_eq!(classify_conic(&1.0, &0.0, &1.0), Ok(ConicType::Ellipse));
        assert_eq!(classify_conic(&1.0, &2.0, &0.0), Ok(ConicType::Cone));
        assert_eq!(classify_conic(&int(1), &int(1), &int(3)), Ok(ConicType::Parabola));
        assert_eq!(classify_conic(&int(1), &int(2), &rat(1, 2)), Ok(ConicType::LeftHyperbola));
        assert_eq!(classify_conic(&int(-1), &int(2), &rat(1, 2)), Ok(ConicType::RightHyperbola));
    }

    #[test]
    fn outside_table() {
        assert_eq!(classify_conic(&1.0, &0.0, &-1.0), Err(WallError::Unclassified));
        assert_eq!(classify_conic(&1.0, &1.0, &0.0), Err(WallError::Unclassified));
        assert_eq!(classify_conic(&0.0, &1.0, &1.0), Err(WallError::Unclassified));
        assert!(matches!(classify_conic(&0.0, &0.0, &0.0), Err(WallError::Invalid(_))));
    }

    #[test]
    fn apex_on_conic() {
        let (h, g, c) = (-1.0, 3.0, 0.7);
        let (s, u) = conic_apex(&h, &g, &c).unwrap();
        let val = h * (s * s + u * u) - 2.0 * g * s * u - 2.0 * c * s;
        assert!(val.abs() < 1e-12);
    }
}
