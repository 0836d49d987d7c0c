use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::Subspace;
use crate::point::ProjPoint;

/// Component label: the pair `{i, j}` of a kernel intersection (1-based), or
/// a running index for numerically found points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComponentLabel {
    Pair([usize; 2]),
    Index(usize),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Pair([i, j]) => write!(f, "{i}{j}"),
            ComponentLabel::Index(k) => write!(f, "#{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Exact linear subspace of the affine cone.
    Subspace(Subspace),
    /// A single projective point, exact or numeric.
    Point(ProjPoint),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusComponent {
    pub label: ComponentLabel,
    pub geometry: Geometry,
    pub projective_dim: isize,
    pub exact: bool,
    pub residual: f64,
    pub multiplicity: usize,
    pub real: bool,
}

impl LocusComponent {
    pub fn exact_subspace(label: ComponentLabel, s: Subspace) -> Self {
        let projective_dim = s.projective_dim();
        let geometry = match s.point() {
            Some(p) => Geometry::Point(ProjPoint::Exact(p)),
            None => Geometry::Subspace(s),
        };
        LocusComponent {
            label,
            geometry,
            projective_dim,
            exact: true,
            residual: 0.0,
            multiplicity: 1,
            real: true,
        }
    }

    /// The component as an exact subspace, when it is one.
    pub fn subspace(&self) -> Option<Subspace> {
        match &self.geometry {
            Geometry::Subspace(s) => Some(s.clone()),
            Geometry::Point(ProjPoint::Exact(v)) => Subspace::from_vectors(v.len(), std::slice::from_ref(v)).ok(),
            Geometry::Point(ProjPoint::Numeric(_)) => None,
        }
    }

    /// The component as a projective point, when it is zero-dimensional.
    pub fn point(&self) -> Option<&ProjPoint> {
        match &self.geometry {
            Geometry::Point(p) => Some(p),
            Geometry::Subspace(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusResult {
    /// Ambient vector-space dimension `m` (the locus lives in `P^{m-1}`).
    pub m: usize,
    pub components: Vec<LocusComponent>,
    /// Number of components counted with multiplicity.
    pub degree: usize,
    pub all_real: bool,
}

impl LocusResult {
    pub fn new(m: usize, components: Vec<LocusComponent>) -> Self {
        let degree = components.iter().map(|c| c.multiplicity).sum();
        let all_real = components.iter().all(|c| c.real);
        LocusResult {
            m,
            components,
            degree,
            all_real,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(|c| c.exact)
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.components.iter().filter_map(|c| c.point().cloned()).collect()
    }

    pub fn subspaces(&self) -> Vec<Subspace> {
        self.components.iter().filter_map(LocusComponent::subspace).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.components.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn real_points(&self) -> Vec<ProjPoint> {
        self.components
            .iter()
            .filter(|c| c.real)
            .filter_map(|c| c.point().cloned())
            .collect()
    }
}
