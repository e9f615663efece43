//! Hypersurfaces given as zero sets of a function that grows toward the future.

use crate::ads::domain::AdsDomain;
use crate::ds::domain::DsBoundarySet;
use crate::foliation::UmbilicalLeaf;
use crate::pseudo_linalg::AmbientVector;
use crate::scalar::Real;
use crate::spacetime::Spacetime;
use crate::support::decompose;

/// Zero set of `defining` on the model quadric, with `defining > 0` to its future.
pub trait LevelSurface<T: Real>: Sync {
    fn spacetime(&self) -> Spacetime;
    /// `None` where the function is undefined (for example outside a domain).
    fn defining(&self, x: &AmbientVector<T>) -> Option<T>;
}

impl<T: Real> LevelSurface<T> for UmbilicalLeaf<T> {
    fn spacetime(&self) -> Spacetime {
        Spacetime::DeSitter
    }

    fn defining(&self, x: &AmbientVector<T>) -> Option<T> {
        Some(UmbilicalLeaf::defining(self, x))
    }
}

/// Future distance sphere `{d(center, x) = radius}`.
#[derive(Clone, Debug)]
pub struct DistanceSphere<T> {
    pub spacetime: Spacetime,
    pub center: AmbientVector<T>,
    pub radius: T,
}

impl<T: Real> DistanceSphere<T> {
    /// `-cot r` in AdS, `-coth r` in dS.
    pub fn mean_curvature(&self) -> T {
        match self.spacetime {
            Spacetime::AntiDeSitter => -self.radius.tan().recip(),
            Spacetime::DeSitter => -self.radius.tanh().recip(),
        }
    }

    /// Point at distance `radius` along the unit future direction `v` at the center.
    pub fn point(&self, v: &AmbientVector<T>) -> AmbientVector<T> {
        self.spacetime.geodesic(&self.center, v, self.radius)
    }
}

impl<T: Real> LevelSurface<T> for DistanceSphere<T> {
    fn spacetime(&self) -> Spacetime {
        self.spacetime
    }

    fn defining(&self, x: &AmbientVector<T>) -> Option<T> {
        // <x|c> equals level * C(d); it increases with the distance on both models.
        let st = self.spacetime;
        Some(x.ip(&self.center) - st.level::<T>() * st.c(self.radius))
    }
}

/// Which null constraints cut out a cosmological level.
#[derive(Clone, Copy, Debug)]
pub enum DomainRef<'a, T> {
    Ads(&'a AdsDomain<T>),
    Ds(&'a DsBoundarySet<T>),
}

impl<'a, T: Real> DomainRef<'a, T> {
    pub fn spacetime(&self) -> Spacetime {
        match self {
            DomainRef::Ads(_) => Spacetime::AntiDeSitter,
            DomainRef::Ds(_) => Spacetime::DeSitter,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            DomainRef::Ads(d) => d.n(),
            DomainRef::Ds(d) => d.n(),
        }
    }

    pub fn nulls(&self) -> &'a [AmbientVector<T>] {
        match self {
            DomainRef::Ads(d) => d.nulls(),
            DomainRef::Ds(d) => d.nulls(),
        }
    }
}

/// Level `{τ = a}` of the cosmological time of the domain `{<x|u_i> < 0}`, evaluated
/// exactly. `hint` is the active set of a nearby point and is tried first.
#[derive(Clone, Debug)]
pub struct CosmoLevel<'a, T> {
    pub spacetime: Spacetime,
    pub nulls: &'a [AmbientVector<T>],
    pub level: T,
    pub hint: Vec<usize>,
}

impl<'a, T: Real> CosmoLevel<'a, T> {
    pub fn new(domain: DomainRef<'a, T>, level: T, hint: Vec<usize>) -> Self {
        Self { spacetime: domain.spacetime(), nulls: domain.nulls(), level, hint }
    }

    pub fn time(&self, x: &AmbientVector<T>) -> Option<T> {
        if self.nulls.iter().any(|u| x.ip(u) >= T::zero()) {
            return None;
        }
        let hint = (!self.hint.is_empty()).then_some(self.hint.as_slice());
        decompose(self.spacetime, x, self.nulls, hint).ok().flatten().map(|d| d.time)
    }
}

impl<T: Real> LevelSurface<T> for CosmoLevel<'_, T> {
    fn spacetime(&self) -> Spacetime {
        self.spacetime
    }

    fn defining(&self, x: &AmbientVector<T>) -> Option<T> {
        Some(self.time(x)? - self.level)
    }
}

/// Image of a surface under the time-reversing reflection. The future side of the
/// image is the reflection of the past side of the original.
#[derive(Clone, Debug)]
pub struct Reflected<S>(pub S);

impl<T: Real, S: LevelSurface<T>> LevelSurface<T> for Reflected<S> {
    fn spacetime(&self) -> Spacetime {
        self.0.spacetime()
    }

    fn defining(&self, x: &AmbientVector<T>) -> Option<T> {
        Some(-self.0.defining(&self.0.spacetime().reflect(x))?)
    }
}
