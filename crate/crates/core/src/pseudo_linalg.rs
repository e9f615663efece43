//! Pseudo-Euclidean vectors for the forms of signature (2, n-1) and (1, n).
//!
//! Time coordinates come first: the AdS form is `-x1^2 - x2^2 + x3^2 + ...` and
//! the dS form is `-x0^2 + x1^2 + ...`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use crate::dense::solve;
use crate::error::{GeometryError, Result};
use crate::scalar::Real;
use crate::tolerances::{TOL_NULL, TOL_PROJ};

/// Number of negative squares and total dimension of the ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    negatives: usize,
    dimension: usize,
}

impl Signature {
    pub fn new(negatives: usize, dimension: usize) -> Result<Self> {
        if !(1..=2).contains(&negatives) {
            return Err(GeometryError::InvalidInput(format!(
                "signature needs 1 or 2 negative squares, got {negatives}"
            )));
        }
        if dimension < 3 {
            return Err(GeometryError::InvalidInput(format!(
                "ambient dimension must be at least 3, got {dimension}"
            )));
        }
        Ok(Self { negatives, dimension })
    }

    /// Ambient space of `AdS_n`: signature (2, n-1) on `R^{n+1}`.
    pub fn ads(n: usize) -> Result<Self> {
        Self::new(2, n + 1)
    }

    /// Ambient space of `dS_n`: signature (1, n) on `R^{n+1}`.
    pub fn ds(n: usize) -> Result<Self> {
        Self::new(1, n + 1)
    }

    pub fn negatives(&self) -> usize {
        self.negatives
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Value of the form on points of the model quadric: -1 for AdS, +1 for dS.
    pub fn quadric_level<T: Real>(&self) -> T {
        if self.negatives == 2 {
            -T::one()
        } else {
            T::one()
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.negatives, self.dimension - self.negatives)
    }
}

/// Causal character of a nonzero vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Timelike,
    Null,
    Spacelike,
}

/// A vector of `R^{n+1}` tagged with its quadratic form.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientVector<T> {
    coords: Vec<T>,
    sig: Signature,
}

impl<T: Real> AmbientVector<T> {
    /// Builds a vector, checking length and finiteness.
    pub fn new(sig: Signature, coords: Vec<T>) -> Result<Self> {
        if coords.len() != sig.dimension {
            return Err(GeometryError::InvalidInput(format!(
                "expected {} coordinates, got {}",
                sig.dimension,
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::InvalidInput("non-finite coordinate".into()));
        }
        Ok(Self { coords, sig })
    }

    pub(crate) fn from_parts(sig: Signature, coords: Vec<T>) -> Self {
        debug_assert_eq!(coords.len(), sig.dimension);
        Self { coords, sig }
    }

    pub fn zeros(sig: Signature) -> Self {
        Self { coords: vec![T::zero(); sig.dimension], sig }
    }

    /// The `i`-th standard basis vector (zero-based).
    pub fn basis(sig: Signature, i: usize) -> Self {
        let mut v = Self::zeros(sig);
        v.coords[i] = T::one();
        v
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Pseudo-scalar product without the signature check.
    #[inline]
    pub fn ip(&self, other: &Self) -> T {
        debug_assert_eq!(self.sig, other.sig);
        let k = self.sig.negatives;
        let mut neg = T::zero();
        for i in 0..k {
            neg = neg + self.coords[i] * other.coords[i];
        }
        let mut pos = T::zero();
        for i in k..self.coords.len() {
            pos = pos + self.coords[i] * other.coords[i];
        }
        pos - neg
    }

    /// Value of the quadratic form.
    #[inline]
    pub fn q(&self) -> T {
        self.ip(self)
    }

    /// Euclidean dot product of the coordinates.
    pub fn euclid_dot(&self, other: &Self) -> T {
        self.coords.iter().zip(&other.coords).map(|(&a, &b)| a * b).sum()
    }

    pub fn euclid_norm(&self) -> T {
        self.euclid_dot(self).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: T) -> Self {
        Self { coords: self.coords.iter().map(|&c| c * s).collect(), sig: self.sig }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: T, other: &Self) -> Self {
        debug_assert_eq!(self.sig, other.sig);
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + s * b).collect();
        Self { coords, sig: self.sig }
    }

    /// `a * x + b * y`.
    pub fn combine(a: T, x: &Self, b: T, y: &Self) -> Self {
        debug_assert_eq!(x.sig, y.sig);
        let coords = x.coords.iter().zip(&y.coords).map(|(&p, &q)| a * p + b * q).collect();
        Self { coords, sig: x.sig }
    }

    /// Representative of unit Euclidean norm in the same positive ray.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.euclid_norm();
        if n.is_zero() {
            return Err(GeometryError::InvalidInput("zero vector has no direction".into()));
        }
        Ok(self.scale(n.recip()))
    }

    /// Rescales so that `q(self) = level` (level must share the sign of `q`).
    pub fn rescaled_to(&self, level: T) -> Option<Self> {
        let r = self.q() / level;
        (r > T::zero() && r.is_finite()).then(|| self.scale(r.sqrt().recip()))
    }
}

impl<T> Index<usize> for AmbientVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: Real> Add for &AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn add(self, rhs: Self) -> AmbientVector<T> {
        self.axpy(T::one(), rhs)
    }
}

impl<T: Real> Sub for &AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn sub(self, rhs: Self) -> AmbientVector<T> {
        self.axpy(-T::one(), rhs)
    }
}

impl<T: Real> Add for AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn add(self, rhs: Self) -> AmbientVector<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn sub(self, rhs: Self) -> AmbientVector<T> {
        &self - &rhs
    }
}

impl<T: Real> AddAssign<&AmbientVector<T>> for AmbientVector<T> {
    fn add_assign(&mut self, rhs: &AmbientVector<T>) {
        for (a, &b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a = *a + b;
        }
    }
}

impl<T: Real> SubAssign<&AmbientVector<T>> for AmbientVector<T> {
    fn sub_assign(&mut self, rhs: &AmbientVector<T>) {
        for (a, &b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a = *a - b;
        }
    }
}

impl<T: Real> Mul<T> for &AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn mul(self, s: T) -> AmbientVector<T> {
        self.scale(s)
    }
}

impl<T: Real> Mul<T> for AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn mul(self, s: T) -> AmbientVector<T> {
        self.scale(s)
    }
}

impl<T: Real> Neg for &AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn neg(self) -> AmbientVector<T> {
        self.scale(-T::one())
    }
}

impl<T: Real> Neg for AmbientVector<T> {
    type Output = AmbientVector<T>;
    fn neg(self) -> AmbientVector<T> {
        self.scale(-T::one())
    }
}

fn check_same<T: Real>(x: &AmbientVector<T>, y: &AmbientVector<T>) -> Result<()> {
    if x.sig != y.sig {
        return Err(GeometryError::SignatureMismatch {
            left: x.sig.to_string(),
            right: y.sig.to_string(),
        });
    }
    Ok(())
}

/// Pseudo-scalar product `<x|y>`.
pub fn inner<T: Real>(x: &AmbientVector<T>, y: &AmbientVector<T>) -> Result<T> {
    check_same(x, y)?;
    Ok(x.ip(y))
}

/// Sign of the form with a relative band of width `TOL_NULL`.
pub fn classify<T: Real>(x: &AmbientVector<T>) -> Result<CausalCharacter> {
    if x.is_zero() {
        return Err(GeometryError::InvalidInput("cannot classify the zero vector".into()));
    }
    let scale = x.euclid_dot(x);
    let q = x.q();
    let band = T::lit(TOL_NULL) * scale;
    Ok(if q < -band {
        CausalCharacter::Timelike
    } else if q > band {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Null
    })
}

/// Equality in the sphere of rays: `y = λ x` with `λ > 0`.
pub fn projective_equal<T: Real>(x: &AmbientVector<T>, y: &AmbientVector<T>) -> Result<bool> {
    check_same(x, y)?;
    let a = x.normalized()?;
    let b = y.normalized()?;
    let tol = T::lit(TOL_PROJ);
    Ok(a.coords.iter().zip(&b.coords).all(|(&p, &q)| (p - q).abs() <= tol))
}

/// Orthogonal decomposition of `x` against `span(basis)` for the pseudo-scalar product.
///
/// Returns the coefficients of the projection in the given basis and the projection itself,
/// or `None` when the Gram matrix is singular.
pub fn project_onto_span<T: Real>(
    x: &AmbientVector<T>,
    basis: &[&AmbientVector<T>],
) -> Option<(Vec<T>, AmbientVector<T>)> {
    let k = basis.len();
    let mut gram = vec![vec![T::zero(); k]; k];
    let mut rhs = vec![T::zero(); k];
    for i in 0..k {
        for j in i..k {
            let g = basis[i].ip(basis[j]);
            gram[i][j] = g;
            gram[j][i] = g;
        }
        rhs[i] = basis[i].ip(x);
    }
    let coeffs = solve(gram, rhs)?;
    let mut proj = AmbientVector::zeros(x.sig);
    for (c, b) in coeffs.iter().zip(basis) {
        proj = proj.axpy(*c, b);
    }
    Some((coeffs, proj))
}

/// Orthonormal basis (for the form) of the orthogonal complement of `span(fixed)`.
///
/// `fixed` must span a nondegenerate subspace; the complement must be definite
/// (as for tangent spaces of spacelike hypersurfaces).
pub fn orthonormal_complement<T: Real>(fixed: &[&AmbientVector<T>]) -> Option<Vec<AmbientVector<T>>> {
    let sig = fixed.first()?.sig;
    let dim = sig.dimension;
    let mut out: Vec<AmbientVector<T>> = Vec::new();
    let target = dim - fixed.len();
    for i in 0..dim {
        if out.len() == target {
            break;
        }
        let mut v = AmbientVector::basis(sig, i);
        if let Some((_, p)) = project_onto_span(&v, fixed) {
            v = &v - &p;
        } else {
            return None;
        }
        // Two passes of Gram-Schmidt for stability.
        for _ in 0..2 {
            for e in &out {
                let c = v.ip(e) / e.q();
                v = v.axpy(-c, e);
            }
        }
        let q = v.q();
        if q.abs() > T::lit(1e-6) {
            out.push(v.scale(q.abs().sqrt().recip()));
        }
    }
    (out.len() == target).then_some(out)
}
