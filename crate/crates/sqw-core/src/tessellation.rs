//! Polygons and tessellations.
//!
//! A polygon is a clique of the walked graph carrying a unit vector of
//! nonzero complex amplitudes over its vertices. A tessellation is a
//! list of pairwise vertex-disjoint polygons; it is *partial* when some
//! vertices stay uncovered, which is how marked vertices enter the
//! generalized model.

use std::collections::BTreeSet;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Result, SqwError};
use crate::graph::Graph;

/// Structural checks (disjointness, cliques) are exact; these two are
/// the numeric tiers: construction-grade and verification-grade.
pub const TOL_CONSTRUCT: f64 = 1e-12;
pub const TOL_VERIFY: f64 = 1e-10;

/// A clique with a unit amplitude vector over its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl Polygon {
    /// Builds a polygon, sorting vertices and renormalizing the
    /// amplitude vector. Zero amplitudes and duplicate vertices are
    /// rejected; zero total norm is unrecoverable.
    pub fn new(vertices: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(SqwError::EmptyPolygon);
        }
        if vertices.len() != amplitudes.len() {
            return Err(SqwError::AmplitudeCount {
                expected: vertices.len(),
                got: amplitudes.len(),
            });
        }
        let mut paired: Vec<(usize, Complex64)> =
            vertices.into_iter().zip(amplitudes).collect();
        paired.sort_unstable_by_key(|&(v, _)| v);
        for w in paired.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SqwError::OverlappingPolygons(w[0].0));
            }
        }
        for &(v, a) in &paired {
            if a == Complex64::ZERO {
                return Err(SqwError::ZeroAmplitude(v));
            }
        }
        let norm = paired.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(SqwError::ZeroNorm);
        }
        let (vertices, amplitudes) = paired
            .into_iter()
            .map(|(v, a)| (v, a / norm))
            .unzip();
        Ok(Polygon { vertices, amplitudes })
    }

    /// Uniform amplitudes 1/sqrt(|polygon|), the default in every worked
    /// example.
    pub fn uniform(vertices: Vec<usize>) -> Result<Self> {
        let amp = Complex64::new(1.0 / (vertices.len().max(1) as f64).sqrt(), 0.0);
        Polygon::new(vertices.clone(), vec![amp; vertices.len()])
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Sorted vertex indices.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Amplitude at vertex `v`, zero outside the polygon.
    pub fn amplitude_at(&self, v: usize) -> Complex64 {
        match self.vertices.binary_search(&v) {
            Ok(i) => self.amplitudes[i],
            Err(_) => Complex64::ZERO,
        }
    }

    /// The polygon as a unit vector in the full vertex space.
    pub fn state(&self, n: usize) -> DVector<Complex64> {
        let mut out = DVector::zeros(n);
        for (&v, &a) in self.vertices.iter().zip(&self.amplitudes) {
            out[v] = a;
        }
        out
    }
}

/// An ordered list of disjoint polygons over a fixed vertex count.
#[derive(Debug, Clone, PartialEq)]
pub struct Tessellation {
    n: usize,
    polygons: Vec<Polygon>,
    partial: bool,
}

impl Tessellation {
    /// Builds a tessellation over `n` vertices. Polygons must be
    /// pairwise vertex-disjoint and in range; the partial flag is
    /// derived from coverage.
    pub fn new(n: usize, polygons: Vec<Polygon>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &polygons {
            for &v in p.vertices() {
                if v >= n {
                    return Err(SqwError::VertexOutOfRange { vertex: v, n });
                }
                if !seen.insert(v) {
                    return Err(SqwError::OverlappingPolygons(v));
                }
            }
        }
        let partial = seen.len() < n;
        Ok(Tessellation { n, polygons, partial })
    }

    /// Uniform-amplitude tessellation from vertex sets, checked to be
    /// cliques of `g`.
    pub fn uniform(g: &Graph, sets: &[Vec<usize>]) -> Result<Self> {
        let mut polygons = Vec::with_capacity(sets.len());
        for set in sets {
            if !g.is_clique(set) {
                return Err(SqwError::NotAClique(set.clone()));
            }
            polygons.push(Polygon::uniform(set.clone())?);
        }
        Tessellation::new(g.n_vertices(), polygons)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, k: usize) -> &Polygon {
        &self.polygons[k]
    }

    /// Vertices covered by some polygon.
    pub fn covered(&self) -> BTreeSet<usize> {
        self.polygons.iter().flat_map(|p| p.vertices().iter().copied()).collect()
    }

    /// Vertices in no polygon.
    pub fn uncovered(&self) -> BTreeSet<usize> {
        let covered = self.covered();
        (0..self.n).filter(|v| !covered.contains(v)).collect()
    }

    /// Index of the polygon containing `v`, if any. Disjointness makes
    /// it unique.
    pub fn polygon_of(&self, v: usize) -> Option<usize> {
        self.polygons.iter().position(|p| p.contains(v))
    }

    /// True if some polygon contains both endpoints.
    pub fn edge_inside(&self, a: usize, b: usize) -> bool {
        self.polygons.iter().any(|p| p.contains(a) && p.contains(b))
    }
}

/// One defect found while validating a tessellation family.
#[derive(Debug, Clone, PartialEq)]
pub enum TessellationViolation {
    /// Polygon is not a clique of the graph.
    NotAClique { tessellation: usize, polygon: usize },
    /// Tessellation leaves vertices uncovered but is not flagged partial
    /// (cannot happen for constructed values; guards loaded data).
    CoverageMismatch { tessellation: usize },
    /// Polygon vector norm deviates from 1 beyond construction tolerance.
    NotNormalized { tessellation: usize, polygon: usize, norm: f64 },
    /// An edge of the graph lies inside no polygon of any tessellation.
    EdgeUncovered { edge: (usize, usize) },
    /// Tessellation is defined over the wrong vertex count.
    WrongVertexCount { tessellation: usize, expected: usize, got: usize },
}

/// Validation report for a family of tessellations over one graph.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub violations: Vec<TessellationViolation>,
    /// Edges covered by no polygon. Only a violation for full families;
    /// reported informationally when any member is partial.
    pub uncovered_edges: Vec<(usize, usize)>,
    /// Vertices missing from at least one tessellation (the marked ones).
    pub marked: BTreeSet<usize>,
    /// Largest polygon-intersection cardinality across tessellation
    /// pairs; 2 or more rules out a Szegedy form.
    pub max_intersection: usize,
}

impl FamilyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validates each tessellation against the graph plus the family
/// condition that every edge lies inside some polygon. The edge-cover
/// check is skipped (and reported informationally) as soon as any member
/// is partial, since the generalized model only requires vertex cover.
pub fn validate_tessellation_family(g: &Graph, family: &[Tessellation]) -> Result<FamilyReport> {
    if family.len() < 2 {
        return Err(SqwError::FamilyTooSmall(family.len()));
    }
    let mut violations = Vec::new();
    for (ti, t) in family.iter().enumerate() {
        if t.n_vertices() != g.n_vertices() {
            violations.push(TessellationViolation::WrongVertexCount {
                tessellation: ti,
                expected: g.n_vertices(),
                got: t.n_vertices(),
            });
            continue;
        }
        for (pi, p) in t.polygons().iter().enumerate() {
            if !g.is_clique(p.vertices()) {
                violations.push(TessellationViolation::NotAClique { tessellation: ti, polygon: pi });
            }
            let norm = p.amplitudes().iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > TOL_CONSTRUCT {
                violations.push(TessellationViolation::NotNormalized {
                    tessellation: ti,
                    polygon: pi,
                    norm,
                });
            }
        }
        if t.is_partial() != !t.uncovered().is_empty() {
            violations.push(TessellationViolation::CoverageMismatch { tessellation: ti });
        }
    }

    let uncovered_edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(a, b)| !family.iter().any(|t| t.edge_inside(a, b)))
        .collect();
    let any_partial = family.iter().any(Tessellation::is_partial);
    if !any_partial {
        for &edge in &uncovered_edges {
            violations.push(TessellationViolation::EdgeUncovered { edge });
        }
    }

    let mut max_intersection = 0;
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if a.n_vertices() == b.n_vertices() {
                max_intersection = max_intersection.max(polygon_intersections(a, b).max_cardinality);
            }
        }
    }

    Ok(FamilyReport {
        violations,
        uncovered_edges,
        marked: marked_vertices(g, family),
        max_intersection,
    })
}

/// Pairwise polygon intersections between two tessellations.
#[derive(Debug, Clone)]
pub struct IntersectionTable {
    /// Entry (k, k') = sorted vertices of alpha_k intersected with
    /// beta_k'.
    pub sets: Vec<Vec<Vec<usize>>>,
    pub max_cardinality: usize,
}

impl IntersectionTable {
    pub fn get(&self, k: usize, kp: usize) -> &[usize] {
        &self.sets[k][kp]
    }
}

pub fn polygon_intersections(a: &Tessellation, b: &Tessellation) -> IntersectionTable {
    let mut max_cardinality = 0;
    let sets = a
        .polygons()
        .iter()
        .map(|pa| {
            b.polygons()
                .iter()
                .map(|pb| {
                    let shared: Vec<usize> = pa
                        .vertices()
                        .iter()
                        .filter(|v| pb.contains(**v))
                        .copied()
                        .collect();
                    max_cardinality = max_cardinality.max(shared.len());
                    shared
                })
                .collect()
        })
        .collect();
    IntersectionTable { sets, max_cardinality }
}

/// Vertices not covered by every tessellation of the family: the marked
/// ones in the generalized model.
pub fn marked_vertices(g: &Graph, family: &[Tessellation]) -> BTreeSet<usize> {
    let mut marked = BTreeSet::new();
    for t in family {
        if t.n_vertices() != g.n_vertices() {
            continue;
        }
        marked.extend(t.uncovered());
    }
    marked
}
