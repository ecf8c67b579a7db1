//! Divisors `ι: Z → X` described by pull-back data.

use num_traits::Zero;

use super::{RingElement, Space, SpaceKind};
use crate::error::{GwError, Result};
use crate::rational::Rational;

/// A divisor together with the restriction map, its Poincaré dual class in the
/// ambient space and the first Chern class of its normal bundle.
#[derive(Debug, Clone)]
pub struct DivisorDescriptor {
    ambient: Space,
    divisor: Space,
    /// `restriction[i] = ι^* e_i` for every ambient basis class.
    restriction: Vec<RingElement>,
    divisor_class: RingElement,
    normal_c1: RingElement,
    /// User-asserted positivity of the normal bundle on holomorphic spheres.
    positive: bool,
    name: String,
}

impl DivisorDescriptor {
    /// Validates degree preservation, ring compatibility of `ι^*` on all basis
    /// pairs, `∫_X [Z] ∪ α = ∫_Z ι^*α`, and `normal_c1 = ι^*[Z]`.
    pub fn new(
        name: impl Into<String>,
        ambient: Space,
        divisor: Space,
        restriction: Vec<RingElement>,
        divisor_class: RingElement,
        positive: bool,
    ) -> Result<DivisorDescriptor> {
        let name = name.into();
        if restriction.len() != ambient.rank() {
            return Err(GwError::Parameter(format!("{name}: restriction needs {} images", ambient.rank())));
        }
        if divisor.complex_dimension() + 1 != ambient.complex_dimension() {
            return Err(GwError::Parameter(format!("{name}: divisor must have codimension one")));
        }
        if divisor_class.space() != &ambient || (!divisor_class.is_zero() && divisor_class.degree() != Some(2)) {
            return Err(GwError::Parameter(format!("{name}: [Z] must be a degree-2 ambient class")));
        }
        for (i, img) in restriction.iter().enumerate() {
            if img.space() != &divisor {
                return Err(GwError::Parameter(format!("{name}: restriction lands outside the divisor")));
            }
            if !img.is_zero() && img.degree() != Some(ambient.basis()[i].real_degree) {
                return Err(GwError::Parameter(format!("{name}: restriction of basis {i} changes degree")));
            }
        }
        let mut d = DivisorDescriptor {
            normal_c1: divisor.zero(),
            ambient,
            divisor,
            restriction,
            divisor_class,
            positive,
            name,
        };
        let n = d.ambient.rank();
        for i in 0..n {
            for j in 0..n {
                let a = RingElement::basis(&d.ambient, i);
                let b = RingElement::basis(&d.ambient, j);
                let lhs = d.restrict(&a.cup(&b)?)?;
                let rhs = d.restrict(&a)?.cup(&d.restrict(&b)?)?;
                if lhs != rhs {
                    return Err(GwError::Parameter(format!("{}: restriction is not multiplicative", d.name)));
                }
            }
            let a = RingElement::basis(&d.ambient, i);
            if d.divisor_class.cup(&a)?.integrate() != d.restrict(&a)?.integrate() {
                return Err(GwError::Parameter(format!("{}: [Z] does not represent the restriction", d.name)));
            }
        }
        d.normal_c1 = d.restrict(&d.divisor_class)?;
        Ok(d)
    }

    /// Hyperplane `P^{n-1} ⊂ P^n`; for `n = 1` the divisor is a point.
    pub fn hyperplane(n: u32) -> Result<DivisorDescriptor> {
        let ambient = Space::projective(n)?;
        let divisor = if n == 1 { Space::point() } else { Space::projective(n - 1)? };
        let restriction = (0..ambient.rank())
            .map(|i| if i < divisor.rank() { RingElement::basis(&divisor, i) } else { divisor.zero() })
            .collect();
        let h = ambient.parse_class("h")?;
        let name = if n == 1 { "p1-pt".to_string() } else if n == 2 { "p2-line".to_string() } else { format!("p{n}-hyperplane") };
        DivisorDescriptor::new(name, ambient, divisor, restriction, h, true)
    }

    /// Smooth conic `P^1 ⊂ P^2`, normal bundle of degree 4.
    pub fn plane_conic() -> Result<DivisorDescriptor> {
        let ambient = Space::projective(2)?;
        let divisor = Space::projective(1)?;
        let restriction = vec![
            divisor.unit(),
            divisor.point_class().scale(&Rational::from_integer(2.into())),
            divisor.zero(),
        ];
        let class = ambient.parse_class("2*h")?;
        DivisorDescriptor::new("p2-conic", ambient, divisor, restriction, class, true)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Space {
        &self.ambient
    }

    pub fn divisor(&self) -> &Space {
        &self.divisor
    }

    pub fn divisor_class(&self) -> &RingElement {
        &self.divisor_class
    }

    pub fn normal_c1(&self) -> &RingElement {
        &self.normal_c1
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// `ι^*`.
    pub fn restrict(&self, a: &RingElement) -> Result<RingElement> {
        if a.space() != &self.ambient {
            return Err(GwError::SpaceMismatch(a.space().to_string(), self.ambient.to_string()));
        }
        let mut out = self.divisor.zero();
        for (i, c) in a.terms() {
            out = out.add(&self.restriction[i].scale(c))?;
        }
        Ok(out)
    }

    /// `ι^!`: the ambient class with `∫_X ι^!(β) ∪ α = ∫_Z β ∪ ι^*α` for every basis `α`.
    pub fn shriek(&self, beta: &RingElement) -> Result<RingElement> {
        if beta.space() != &self.divisor {
            return Err(GwError::SpaceMismatch(beta.space().to_string(), self.divisor.to_string()));
        }
        let mut coeffs = Vec::new();
        for b in 0..self.ambient.rank() {
            let v = beta.cup(&self.restriction[b])?.integrate();
            if !v.is_zero() {
                coeffs.push((self.ambient.dual_index(b), v));
            }
        }
        Ok(RingElement::from_coefficients(&self.ambient, coeffs))
    }

    /// `Z · L` for the ambient curve generator `L`.
    pub fn intersection_degree(&self) -> i64 {
        coefficient_of_generator(&self.divisor_class)
    }

    /// Multiple of the ambient generator represented by `ι_*` of the divisor's
    /// generator; zero when the divisor has no curve classes.
    pub fn pushforward_degree(&self) -> i64 {
        match (self.ambient.divisor_index(), self.divisor.kind()) {
            (_, SpaceKind::Point) => 0,
            (Some(h), _) => coefficient_of_generator(&self.restriction[h]),
            (None, _) => 0,
        }
    }

    /// `c_1(N_{Z|X})` evaluated on the divisor's generator.
    pub fn normal_degree(&self) -> i64 {
        coefficient_of_generator(&self.normal_c1)
    }
}

/// Value of a degree-2 class on the curve generator of its space.
pub fn coefficient_of_generator(c: &RingElement) -> i64 {
    match c.space().divisor_index() {
        Some(i) => {
            let v = c.coefficient(i);
            assert!(v.is_integer(), "non-integral degree-2 coefficient");
            i64::try_from(v.to_integer()).expect("small degree")
        }
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_in_plane_shriek() {
        let d = DivisorDescriptor::hyperplane(2).unwrap();
        let z = d.divisor().clone();
        let x = d.ambient().clone();
        assert_eq!(d.shriek(&z.unit()).unwrap(), x.parse_class("h").unwrap());
        assert_eq!(d.shriek(&z.point_class()).unwrap(), x.parse_class("h^2").unwrap());
        assert!(d.shriek(&z.zero()).unwrap().is_zero());
        assert_eq!(d.intersection_degree(), 1);
        assert_eq!(d.pushforward_degree(), 1);
        assert_eq!(d.normal_degree(), 1);
    }

    #[test]
    fn point_in_line() {
        let d = DivisorDescriptor::hyperplane(1).unwrap();
        assert_eq!(d.divisor().kind(), SpaceKind::Point);
        assert_eq!(d.shriek(&d.divisor().unit()).unwrap(), d.ambient().point_class());
        assert_eq!(d.normal_degree(), 0);
        assert_eq!(d.pushforward_degree(), 0);
    }

    #[test]
    fn conic_data() {
        let d = DivisorDescriptor::plane_conic().unwrap();
        assert_eq!(d.shriek(&d.divisor().unit()).unwrap(), d.ambient().parse_class("2*h").unwrap());
        assert_eq!(d.normal_degree(), 4);
        assert_eq!(d.pushforward_degree(), 2);
        assert_eq!(d.intersection_degree(), 2);
    }

    #[test]
    fn projection_formula_exhaustive() {
        for d in [
            DivisorDescriptor::hyperplane(1).unwrap(),
            DivisorDescriptor::hyperplane(2).unwrap(),
            DivisorDescriptor::hyperplane(4).unwrap(),
            DivisorDescriptor::plane_conic().unwrap(),
        ] {
            for bi in 0..d.divisor().rank() {
                let beta = RingElement::basis(d.divisor(), bi);
                let up = d.shriek(&beta).unwrap();
                assert_eq!(up.degree(), Some(beta.degree().unwrap() + 2));
                for ai in 0..d.ambient().rank() {
                    let alpha = RingElement::basis(d.ambient(), ai);
                    let lhs = up.cup(&alpha).unwrap().integrate();
                    let rhs = beta.cup(&d.restrict(&alpha).unwrap()).unwrap().integrate();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rejects_non_multiplicative_restriction() {
        let x = Space::projective(2).unwrap();
        let z = Space::projective(1).unwrap();
        // h ↦ 0 but h^0 ↦ 1 and [Z] = h: pairing identity fails.
        let r = vec![z.unit(), z.zero(), z.zero()];
        let err = DivisorDescriptor::new("bad", x.clone(), z, r, x.parse_class("h").unwrap(), true);
        assert!(err.is_err());
    }
}
