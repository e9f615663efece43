//! Facts shared by the two model spaces: geodesics, time orientation and time reflection.

use crate::error::Result;
use crate::pseudo_linalg::{AmbientVector, Signature};
use crate::scalar::Real;

/// Which constant curvature Lorentzian space a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacetime {
    /// `AdS_n`: quadric `Q_{2,n-1} = -1`.
    AntiDeSitter,
    /// `dS_n`: quadric `Q_{1,n} = +1`.
    DeSitter,
}

impl Spacetime {
    pub fn signature(self, n: usize) -> Result<Signature> {
        match self {
            Spacetime::AntiDeSitter => Signature::ads(n),
            Spacetime::DeSitter => Signature::ds(n),
        }
    }

    pub fn of(sig: Signature) -> Self {
        if sig.negatives() == 2 {
            Spacetime::AntiDeSitter
        } else {
            Spacetime::DeSitter
        }
    }

    /// Value of the form on the model quadric.
    pub fn level<T: Real>(self) -> T {
        match self {
            Spacetime::AntiDeSitter => -T::one(),
            Spacetime::DeSitter => T::one(),
        }
    }

    /// Coefficient of the foot along a unit speed timelike geodesic (`cos` or `cosh`).
    pub fn c<T: Real>(self, s: T) -> T {
        match self {
            Spacetime::AntiDeSitter => s.cos(),
            Spacetime::DeSitter => s.cosh(),
        }
    }

    /// Coefficient of the initial velocity (`sin` or `sinh`).
    pub fn s<T: Real>(self, s: T) -> T {
        match self {
            Spacetime::AntiDeSitter => s.sin(),
            Spacetime::DeSitter => s.sinh(),
        }
    }

    /// Point at parameter `s` of the timelike geodesic leaving `p` with unit velocity `v`.
    pub fn geodesic<T: Real>(self, p: &AmbientVector<T>, v: &AmbientVector<T>, s: T) -> AmbientVector<T> {
        AmbientVector::combine(self.c(s), p, self.s(s), v)
    }

    /// Velocity at parameter `s` of the same geodesic.
    pub fn geodesic_velocity<T: Real>(self, p: &AmbientVector<T>, v: &AmbientVector<T>, s: T) -> AmbientVector<T> {
        match self {
            Spacetime::AntiDeSitter => AmbientVector::combine(-s.sin(), p, s.cos(), v),
            Spacetime::DeSitter => AmbientVector::combine(s.sinh(), p, s.cosh(), v),
        }
    }

    /// A vector `r` such that a timelike tangent vector `v` at `x` is future iff `<v|r> < 0`.
    ///
    /// For AdS this is the rotation generator `(-x2, x1, 0, ...)`; for dS it is `e0`.
    pub fn future_reference<T: Real>(self, x: &AmbientVector<T>) -> AmbientVector<T> {
        let sig = x.signature();
        match self {
            Spacetime::AntiDeSitter => {
                let mut c = vec![T::zero(); sig.dimension()];
                c[0] = -x[1];
                c[1] = x[0];
                AmbientVector::from_parts(sig, c)
            }
            Spacetime::DeSitter => AmbientVector::basis(sig, 0),
        }
    }

    /// Whether the timelike tangent vector `v` at `x` points to the future.
    pub fn is_future<T: Real>(self, x: &AmbientVector<T>, v: &AmbientVector<T>) -> bool {
        v.ip(&self.future_reference(x)) < T::zero()
    }

    /// Time-reversing isometry: `x2 -> -x2` in AdS, `x0 -> -x0` in dS.
    pub fn reflect<T: Real>(self, x: &AmbientVector<T>) -> AmbientVector<T> {
        let k = match self {
            Spacetime::AntiDeSitter => 1,
            Spacetime::DeSitter => 0,
        };
        let mut c = x.coords().to_vec();
        c[k] = -c[k];
        AmbientVector::from_parts(x.signature(), c)
    }

    /// Pushes an ambient point back onto the model quadric by positive rescaling.
    pub fn project_to_quadric<T: Real>(self, x: &AmbientVector<T>) -> Option<AmbientVector<T>> {
        x.rescaled_to(self.level())
    }
}
