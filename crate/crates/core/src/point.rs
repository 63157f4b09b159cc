use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of projective space, scaled so that its first nonzero coordinate is 1.
/// It doubles as the linear form with the same coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let first = coords.iter().find(|x| !x.is_zero()).cloned().ok_or_else(|| Error::Dimension("the zero vector is not a projective point".into()))?;
        if first.is_one() {
            return Ok(ProjectivePoint { coords });
        }
        let inv = Scalar::one() / first;
        Ok(ProjectivePoint { coords: coords.into_iter().map(|x| x * &inv).collect() })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// True if the vectors are nonzero multiples of each other.
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    match (ProjectivePoint::new(a.to_vec()), ProjectivePoint::new(b.to_vec())) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}
