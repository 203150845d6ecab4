//! Cochains with rational coefficients, cocycle and coboundary tests, and
//! cohomology dimensions.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::numerics::{in_span, nullspace_basis, primitive_integer_vector, rank, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("a {degree}-cochain needs {expected} values, got {found}")]
    WrongLength { degree: usize, expected: usize, found: usize },
}

/// A k-cochain: one rational value per k-simplex, in canonical simplex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain<'a> {
    complex: &'a SimplicialComplex,
    degree: usize,
    values: Vec<Rational>,
}

impl<'a> Cochain<'a> {
    pub fn new(complex: &'a SimplicialComplex, degree: usize, values: Vec<Rational>) -> Result<Self, CohomologyError> {
        let expected = complex.count(degree);
        if values.len() != expected {
            return Err(CohomologyError::WrongLength { degree, expected, found: values.len() });
        }
        Ok(Cochain { complex, degree, values })
    }

    pub fn zero(complex: &'a SimplicialComplex, degree: usize) -> Self {
        Cochain { complex, degree, values: vec![Rational::zero(); complex.count(degree)] }
    }

    /// Evaluates `f` on every k-simplex.
    pub fn from_fn(complex: &'a SimplicialComplex, degree: usize, f: impl FnMut(&[usize]) -> Rational) -> Self {
        let values = complex.simplices(degree).iter().map(|s| s.as_slice()).map(f).collect();
        Cochain { complex, degree, values }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// Value on a simplex of the right dimension.
    pub fn get(&self, simplex: &[usize]) -> Option<&Rational> {
        if simplex.len() != self.degree + 1 {
            return None;
        }
        self.complex.position(simplex).map(|i| &self.values[i])
    }

    /// The (k+1)-cochain `δc`.
    pub fn coboundary(&self) -> Cochain<'a> {
        let values = self
            .complex
            .coboundary_matrix(self.degree)
            .mul_vec(&self.values)
            .expect("cochain length matches the complex");
        Cochain { complex: self.complex, degree: self.degree + 1, values }
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().values.iter().all(Zero::is_zero)
    }

    /// A (k-1)-cochain `f` with `δf = self`, or `None` when `self` is not a
    /// coboundary. Among all such `f` this is the one whose free coordinates
    /// (in the row reduction of `δ_{k-1}`) are zero. Degree-0 cochains have
    /// no preimage and always give `None`.
    pub fn coboundary_witness(&self) -> Option<Cochain<'a>> {
        let below = self.degree.checked_sub(1)?;
        let columns = self.complex.coboundary_matrix(below).columns();
        let coefficients = in_span(&columns, &self.values).expect("column length matches the cochain");
        coefficients.map(|values| Cochain { complex: self.complex, degree: below, values })
    }
}

/// Dimension bookkeeping for one degree of cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDims {
    pub degree: usize,
    /// |X_k|
    pub cochains: usize,
    /// dim ker δ_k
    pub cocycles: usize,
    /// rank δ_{k-1}
    pub coboundaries: usize,
}

impl CohomologyDims {
    pub fn dim(&self) -> usize {
        self.cocycles - self.coboundaries
    }
}

/// Cocycle, coboundary and cohomology dimensions in degree `k` over the
/// rationals. For `k = 0` there are no coboundaries and the result counts
/// connected components.
pub fn cohomology(complex: &SimplicialComplex, k: usize) -> CohomologyDims {
    let cochains = complex.count(k);
    let cocycles = cochains - rank(&complex.coboundary_matrix(k));
    let coboundaries = match k.checked_sub(1) {
        Some(below) => rank(&complex.coboundary_matrix(below)),
        None => 0,
    };
    CohomologyDims { degree: k, cochains, cocycles, coboundaries }
}

/// `dim H^k(X; Q) = (|X_k| - rank δ_k) - rank δ_{k-1}`.
pub fn cohomology_dim(complex: &SimplicialComplex, k: usize) -> usize {
    cohomology(complex, k).dim()
}

/// An integer 1-cocycle that is not a coboundary, or `None` when H¹ vanishes.
///
/// Scans the canonical kernel basis of δ_1 and keeps the first vector outside
/// the image of δ_0, rescaled to coprime integers with a positive leading
/// entry.
pub fn noncoboundary_cocycle(complex: &SimplicialComplex) -> Option<Cochain<'_>> {
    let images = complex.coboundary_matrix(0).columns();
    nullspace_basis(&complex.coboundary_matrix(1))
        .into_iter()
        .find(|v| in_span(&images, v).expect("edge-indexed vectors").is_none())
        .map(|v| {
            let values = primitive_integer_vector(&v).into_iter().map(Rational::from_integer).collect();
            Cochain { complex, degree: 1, values }
        })
}

/// Integer values of a cochain whose entries are all integral.
pub fn integer_values(cochain: &Cochain<'_>) -> Option<Vec<BigInt>> {
    cochain.values().iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
}
