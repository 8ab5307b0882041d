//! Graded vector spaces of homogeneous polynomials.

use super::{span_dimension, PolyError, Polynomial, RingRef};

/// A finite-dimensional graded subspace given by a homogeneous basis. The
/// basis is checked for linear independence at construction; the dimension
/// sequence counts basis elements per degree.
#[derive(Clone, Debug)]
pub struct GradedVectorSpace {
    ring: RingRef,
    basis: Vec<Polynomial>,
    dims: Vec<usize>,
}

impl GradedVectorSpace {
    /// The zero space.
    pub fn empty(ring: &RingRef) -> Self {
        GradedVectorSpace {
            ring: ring.clone(),
            basis: vec![],
            dims: vec![],
        }
    }

    pub fn new(ring: &RingRef, basis: Vec<Polynomial>) -> Result<Self, PolyError> {
        let mut max_deg = 0u64;
        for b in &basis {
            if !super::RingContext::same_ring(ring, b.ring()) {
                return Err(PolyError::RingMismatch);
            }
            match b.homogeneous_degree() {
                Some(d) if d > 0 => max_deg = max_deg.max(d),
                _ => {
                    return Err(PolyError::DegreeError(format!(
                        "basis element `{}` is not homogeneous of positive degree",
                        b
                    )))
                }
            }
        }
        if span_dimension(&basis)? != basis.len() {
            return Err(PolyError::DimensionMismatch(
                "basis is linearly dependent".into(),
            ));
        }
        let mut dims = vec![0usize; max_deg as usize];
        for b in &basis {
            dims[(b.homogeneous_degree().unwrap() - 1) as usize] += 1;
        }
        Ok(GradedVectorSpace {
            ring: ring.clone(),
            basis,
            dims,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Dimension sequence: entry i is the count in degree i+1.
    pub fn dimension_sequence(&self) -> &[usize] {
        &self.dims
    }

    /// Basis elements of one degree.
    pub fn graded_piece(&self, degree: u64) -> Vec<Polynomial> {
        self.basis
            .iter()
            .filter(|b| b.homogeneous_degree() == Some(degree))
            .cloned()
            .collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.dims.len() as u64
    }

    /// Membership of `f` in the K-span of the basis.
    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        let mut polys = self.basis.clone();
        polys.push(f.clone());
        span_dimension(&polys).map(|r| r == self.basis.len()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingContext};
    use crate::scalar::FieldDescriptor;

    #[test]
    fn dimension_sequence_counts_by_degree() {
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        let v = GradedVectorSpace::new(
            &r,
            vec![
                parse_polynomial("x", &r).unwrap(),
                parse_polynomial("y", &r).unwrap(),
                parse_polynomial("x^2 + y^2", &r).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(v.dimension_sequence(), &[2, 1]);
        assert!(v.contains(&parse_polynomial("x + y", &r).unwrap()));
        assert!(!v.contains(&parse_polynomial("x*y", &r).unwrap()));
    }

    #[test]
    fn rejects_dependent_or_inhomogeneous_bases() {
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        assert!(GradedVectorSpace::new(
            &r,
            vec![
                parse_polynomial("x", &r).unwrap(),
                parse_polynomial("2*x", &r).unwrap()
            ]
        )
        .is_err());
        assert!(GradedVectorSpace::new(
            &r,
            vec![parse_polynomial("x + 1", &r).unwrap()]
        )
        .is_err());
    }
}
