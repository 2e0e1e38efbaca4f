//! Reflection and evolution operators of the staggered walk.
//!
//! Each tessellation induces the unitary Hermitian reflection
//! `2 * sum_k |poly_k><poly_k| - I`; the walk operator is the ordered
//! product of the reflections, first tessellation applied first. Marked
//! vertices enter through the interlaced reflection `R_M`.

use std::collections::BTreeSet;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::dynamics::StateVector;
use crate::error::{Result, SqwError};
use crate::graph::Graph;
use crate::linalg::{self, CMat, CVec};
use crate::tessellation::{Polygon, Tessellation, TOL_VERIFY};

/// Eigenvalue clustering width used when classifying reflections.
pub const EIG_CLUSTER_TOL: f64 = 1e-8;
/// Hermiticity is a construction-grade property of reflections.
pub const TOL_HERMITIAN: f64 = 1e-12;

/// Dense square operator on the vertex space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: CMat,
}

impl Operator {
    pub fn from_matrix(mat: CMat) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "operators are square");
        Operator { mat }
    }

    pub fn identity(n: usize) -> Self {
        Operator { mat: CMat::identity(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn into_matrix(self) -> CMat {
        self.mat
    }

    /// Max-norm of U†U - I.
    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.mat)
    }

    /// Max-norm of U - U†.
    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.mat)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Composition: `self * rhs` (rhs applied first).
    pub fn compose(&self, rhs: &Operator) -> Operator {
        Operator { mat: linalg::matmul(&self.mat, &rhs.mat) }
    }

    /// U^k by repeated multiplication.
    pub fn power(&self, k: usize) -> Operator {
        let mut out = Operator::identity(self.dim());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn apply_vec(&self, x: &CVec) -> CVec {
        linalg::matvec(&self.mat, x)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        linalg::max_abs_diff(&self.mat, &other.mat)
    }
}

/// Reflection `2 * sum_k |poly_k><poly_k| - I` of a tessellation.
/// Uncovered vertices of a partial tessellation pick up the bare `-1`,
/// which is exactly the generalized model's marking mechanism.
pub fn reflection_operator(t: &Tessellation) -> Operator {
    let n = t.n_vertices();
    let mut mat = CMat::identity(n, n) * Complex64::new(-1.0, 0.0);
    for p in t.polygons() {
        for (&u, &au) in p.vertices().iter().zip(p.amplitudes()) {
            for (&v, &av) in p.vertices().iter().zip(p.amplitudes()) {
                mat[(u, v)] += 2.0 * au * av.conj();
            }
        }
    }
    Operator { mat }
}

/// Ordered product of the tessellation reflections: with tessellations
/// `[t0, t1, ..]` the walk is `U = .. U1 U0`, `U0` applied first.
pub fn evolution_operator(family: &[Tessellation]) -> Result<Operator> {
    if family.len() < 2 {
        return Err(SqwError::FamilyTooSmall(family.len()));
    }
    let n = family[0].n_vertices();
    for t in family {
        if t.n_vertices() != n {
            return Err(SqwError::DimensionMismatch { expected: n, got: t.n_vertices() });
        }
    }
    let mut u = reflection_operator(&family[0]);
    for t in &family[1..] {
        u = reflection_operator(t).compose(&u);
    }
    Ok(u)
}

/// Expands `U|k>` directly from the polygon amplitudes as the four-term
/// combination over polygon vectors. Exists as an independent route to
/// the evolution operator's columns; the two must agree.
pub fn expand_basis_state(
    alpha: &Tessellation,
    beta: &Tessellation,
    k: usize,
) -> Result<StateVector> {
    if alpha.is_partial() || beta.is_partial() {
        return Err(SqwError::PartialTessellation);
    }
    let n = alpha.n_vertices();
    if beta.n_vertices() != n {
        return Err(SqwError::DimensionMismatch { expected: n, got: beta.n_vertices() });
    }
    if k >= n {
        return Err(SqwError::VertexOutOfRange { vertex: k, n });
    }

    // Overlap matrix D[k'][k''] = <alpha_k' | beta_k''>.
    let overlaps: Vec<Vec<Complex64>> = alpha
        .polygons()
        .iter()
        .map(|pa| {
            beta.polygons()
                .iter()
                .map(|pb| {
                    pa.vertices()
                        .iter()
                        .map(|&v| pa.amplitude_at(v).conj() * pb.amplitude_at(v))
                        .sum()
                })
                .collect()
        })
        .collect();

    let mut psi = CVec::zeros(n);
    psi[k] = Complex64::ONE;
    for (kp, pa) in alpha.polygons().iter().enumerate() {
        let a_conj = pa.amplitude_at(k).conj();
        if a_conj == Complex64::ZERO {
            continue;
        }
        psi -= pa.state(n) * (2.0 * a_conj);
        for (kpp, pb) in beta.polygons().iter().enumerate() {
            let d_conj = overlaps[kp][kpp].conj();
            if d_conj == Complex64::ZERO {
                continue;
            }
            psi += pb.state(n) * (4.0 * d_conj * a_conj);
        }
    }
    for pb in beta.polygons() {
        let b_conj = pb.amplitude_at(k).conj();
        if b_conj != Complex64::ZERO {
            psi -= pb.state(n) * (2.0 * b_conj);
        }
    }
    StateVector::from_evolved(psi)
}

/// Outcome of testing an operator against the orthogonal-reflection
/// definition: unitary, Hermitian, and a +1 eigenspace admitting an
/// orthonormal basis with pairwise disjoint supports that jointly touch
/// every vertex.
#[derive(Debug, Clone)]
pub struct ReflectionClassification {
    pub is_orthogonal_reflection: bool,
    /// The tessellation induced by the +1 eigenspace, one polygon per
    /// support component, fixed to leading-entry-positive phase.
    pub recovered_polygons: Vec<Polygon>,
    pub failure_reason: Option<String>,
}

impl ReflectionClassification {
    fn negative(reason: String) -> Self {
        ReflectionClassification {
            is_orthogonal_reflection: false,
            recovered_polygons: Vec::new(),
            failure_reason: Some(reason),
        }
    }
}

/// Tests the orthogonal-reflection definition in the vertex basis and
/// recovers the induced polygons. `tol` is the entry/zero threshold;
/// eigenvalues are clustered at [`EIG_CLUSTER_TOL`].
pub fn classify_orthogonal_reflection(u: &Operator, tol: f64) -> ReflectionClassification {
    if !(tol > 0.0 && tol.is_finite()) {
        return ReflectionClassification::negative("tolerance must be positive".into());
    }
    let defect = u.unitarity_defect();
    if defect > TOL_VERIFY {
        return ReflectionClassification::negative(format!("not unitary (defect {defect:.3e})"));
    }
    let defect = u.hermiticity_defect();
    if defect > TOL_HERMITIAN {
        return ReflectionClassification::negative(format!("not Hermitian (defect {defect:.3e})"));
    }

    let n = u.dim();
    let eig = SymmetricEigen::new(u.matrix().clone());
    let mut plus_cols: Vec<usize> = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if (lambda - 1.0).abs() <= EIG_CLUSTER_TOL {
            plus_cols.push(i);
        } else if (lambda + 1.0).abs() > EIG_CLUSTER_TOL {
            return ReflectionClassification::negative(format!(
                "eigenvalue {lambda} is neither +1 nor -1; operator is not an involution"
            ));
        }
    }
    if plus_cols.is_empty() {
        return ReflectionClassification::negative("no +1 eigenspace".into());
    }

    // Projector onto the +1 eigenspace; its nonzero pattern is basis
    // data, not a choice of eigenbasis.
    let mut proj = CMat::zeros(n, n);
    for &i in &plus_cols {
        let col = eig.eigenvectors.column(i);
        proj += &col * col.adjoint();
    }

    for v in 0..n {
        if proj[(v, v)].re <= tol {
            return ReflectionClassification::negative(format!(
                "the +1 eigenvectors have no weight at vertex {v}"
            ));
        }
    }

    // Connected components of the support pattern |P_ij| > tol.
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for w in 0..n {
                if component[w] == usize::MAX && proj[(v, w)].norm() > tol {
                    component[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }

    let mut polygons = Vec::with_capacity(components.len());
    for members in &components {
        let trace: f64 = members.iter().map(|&v| proj[(v, v)].re).sum();
        if (trace - 1.0).abs() > 0.1 {
            return ReflectionClassification::negative(format!(
                "support component {members:?} spans rank {} of the +1 eigenspace; \
                 no disjoint-support eigenbasis exists",
                trace.round() as i64
            ));
        }
        // Rank-one block: any strong column is the polygon vector.
        let &pivot = members
            .iter()
            .max_by(|&&a, &&b| proj[(a, a)].re.total_cmp(&proj[(b, b)].re))
            .expect("components are nonempty");
        let scale = proj[(pivot, pivot)].re.sqrt();
        let mut amps: Vec<Complex64> =
            members.iter().map(|&v| proj[(v, pivot)] / scale).collect();
        // Residual of the rank-one model on this block.
        let mut residual = 0.0f64;
        for (i, &vi) in members.iter().enumerate() {
            for (j, &vj) in members.iter().enumerate() {
                residual = residual.max((proj[(vi, vj)] - amps[i] * amps[j].conj()).norm());
            }
        }
        if residual > 100.0 * tol.max(EIG_CLUSTER_TOL) {
            return ReflectionClassification::negative(format!(
                "support component {members:?} is not rank-one (residual {residual:.3e})"
            ));
        }
        let phase = amps[0] / amps[0].norm();
        for a in &mut amps {
            *a /= phase;
        }
        match Polygon::new(members.clone(), amps) {
            Ok(p) => polygons.push(p),
            Err(e) => {
                return ReflectionClassification::negative(format!(
                    "recovered vector is not a polygon: {e}"
                ))
            }
        }
    }

    ReflectionClassification {
        is_orthogonal_reflection: true,
        recovered_polygons: polygons,
        failure_reason: None,
    }
}

/// `R_M = 2 sum_{m in M} |m><m| - I`: +1 on marked vertices, -1
/// elsewhere.
pub fn marked_reflection(marked: &BTreeSet<usize>, n: usize) -> Result<Operator> {
    let mut mat = CMat::identity(n, n) * Complex64::new(-1.0, 0.0);
    for &m in marked {
        if m >= n {
            return Err(SqwError::VertexOutOfRange { vertex: m, n });
        }
        mat[(m, m)] = Complex64::ONE;
    }
    Ok(Operator { mat })
}

/// Applies `R_M` to every polygon vector of `beta`: polygons disjoint
/// from the marked set are globally negated, the rest get entrywise
/// signs (+1 on marked vertices, -1 on the others).
pub fn modified_beta(beta: &Tessellation, marked: &BTreeSet<usize>) -> Tessellation {
    let polygons = beta
        .polygons()
        .iter()
        .map(|p| {
            let flipped = if p.vertices().iter().all(|v| !marked.contains(v)) {
                p.amplitudes().iter().map(|a| -a).collect()
            } else {
                p.vertices()
                    .iter()
                    .zip(p.amplitudes())
                    .map(|(v, a)| if marked.contains(v) { *a } else { -a })
                    .collect()
            };
            Polygon::new(p.vertices().to_vec(), flipped).expect("sign flips preserve validity")
        })
        .collect();
    Tessellation::new(beta.n_vertices(), polygons).expect("supports unchanged")
}

/// Search operator `U_M = R_M U_1 R_M U_0`. Also computed in the
/// two-reflection form `U'_1 U_0` with `|beta'_k> = R_M |beta_k>`; the
/// two routes must agree to construction precision.
pub fn search_operator(
    alpha: &Tessellation,
    beta: &Tessellation,
    marked: &BTreeSet<usize>,
) -> Result<Operator> {
    let n = alpha.n_vertices();
    if beta.n_vertices() != n {
        return Err(SqwError::DimensionMismatch { expected: n, got: beta.n_vertices() });
    }
    let r_m = marked_reflection(marked, n)?;
    let u0 = reflection_operator(alpha);
    let u1 = reflection_operator(beta);
    let u_m = r_m.compose(&u1).compose(&r_m).compose(&u0);

    let u1_prime = reflection_operator(&modified_beta(beta, marked));
    let two_reflection = u1_prime.compose(&u0);
    let defect = u_m.max_abs_diff(&two_reflection);
    if defect > 1e-12 {
        return Err(SqwError::CrossCheck { context: "search operator two-reflection form", defect });
    }
    Ok(u_m)
}

/// Grover's algorithm as a generalized staggered walk on the complete
/// graph: singleton polygons over the non-marked vertices versus one
/// uniform all-vertex polygon.
pub fn grover_instance(
    n: usize,
    marked: &BTreeSet<usize>,
) -> Result<(Graph, Tessellation, Tessellation)> {
    if marked.is_empty() || marked.len() >= n {
        return Err(SqwError::InvalidMarkedSet);
    }
    if let Some(&m) = marked.iter().find(|&&m| m >= n) {
        return Err(SqwError::VertexOutOfRange { vertex: m, n });
    }
    let g = Graph::complete(n);
    let singletons: Vec<Vec<usize>> =
        (0..n).filter(|v| !marked.contains(v)).map(|v| vec![v]).collect();
    let alpha = Tessellation::uniform(&g, &singletons)?;
    let beta = Tessellation::uniform(&g, &[(0..n).collect()])?;
    Ok((g, alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessellation::tests::cycle10_family;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Uniform tessellations of the glued-K4 graph; the walk operator is
    /// the worked 6x6 example with period six.
    pub(crate) fn glued_k4_family() -> (Graph, Tessellation, Tessellation) {
        let g = crate::graph::tests::glued_k4();
        let alpha = Tessellation::uniform(&g, &[vec![0, 1, 2, 3], vec![4, 5]]).unwrap();
        let beta = Tessellation::uniform(&g, &[vec![0, 1], vec![2, 3, 4, 5]]).unwrap();
        (g, alpha, beta)
    }

    /// Two connected vertices; alpha uniform, beta at polar angle theta
    /// on the Bloch sphere.
    pub(crate) fn two_vertex_family(theta: f64) -> (Tessellation, Tessellation) {
        let alpha = Tessellation::new(2, vec![Polygon::uniform(vec![0, 1]).unwrap()]).unwrap();
        let beta = Tessellation::new(
            2,
            vec![Polygon::new(
                vec![0, 1],
                vec![c((theta / 2.0).cos(), 0.0), c((theta / 2.0).sin(), 0.0)],
            )
            .unwrap()],
        )
        .unwrap();
        (alpha, beta)
    }

    pub(crate) fn two_vertex_expected(theta: f64) -> CMat {
        CMat::from_row_slice(
            2,
            2,
            &[
                c(theta.sin(), 0.0),
                c(theta.cos(), 0.0),
                c(-theta.cos(), 0.0),
                c(theta.sin(), 0.0),
            ],
        )
    }

    #[test]
    fn singleton_reflection_is_identity() {
        let g = Graph::new(4, &[]).unwrap();
        let t = Tessellation::uniform(&g, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let r = reflection_operator(&t);
        assert!(linalg::identity_defect(r.matrix()) < 1e-15);
    }

    #[test]
    fn uniform_pair_reflection_is_swap() {
        let t = Tessellation::new(2, vec![Polygon::uniform(vec![0, 1]).unwrap()]).unwrap();
        let r = reflection_operator(&t);
        let swap = CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        assert!(linalg::max_abs_diff(r.matrix(), &swap) < 1e-15);
    }

    #[test]
    fn glued_k4_blue_reflection_block() {
        let (_, alpha, _) = glued_k4_family();
        let r = reflection_operator(&alpha);
        assert!(r.is_hermitian(1e-15));
        assert!(r.is_unitary(1e-14));
        assert!(r.power(2).max_abs_diff(&Operator::identity(6)) < 1e-14);
        // 4x4 uniform block: off-diagonal 1/2, diagonal -1/2.
        assert!((r.matrix()[(0, 1)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((r.matrix()[(0, 0)] - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((r.matrix()[(4, 5)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(r.matrix()[(0, 4)].norm() < 1e-15);
    }

    #[test]
    fn two_vertex_closed_form() {
        for theta in [0.3, 1.0, 2.2] {
            let (alpha, beta) = two_vertex_family(theta);
            let u = evolution_operator(&[alpha, beta]).unwrap();
            assert!(linalg::max_abs_diff(u.matrix(), &two_vertex_expected(theta)) < 1e-14);
        }
    }

    #[test]
    fn equal_tessellations_walk_identically() {
        let (_, alpha, _) = cycle10_family();
        let u = evolution_operator(&[alpha.clone(), alpha]).unwrap();
        assert!(linalg::identity_defect(u.matrix()) < 1e-14);
    }

    #[test]
    fn expansion_matches_operator_columns() {
        let (_, alpha, beta) = glued_k4_family();
        let u = evolution_operator(&[alpha.clone(), beta.clone()]).unwrap();
        for k in 0..6 {
            let psi = expand_basis_state(&alpha, &beta, k).unwrap();
            let col = u.matrix().column(k).into_owned();
            assert!((psi.amplitudes() - col).norm() < 1e-10, "column {k}");
        }
        // Column 4 is listed explicitly in the worked example.
        let psi = expand_basis_state(&alpha, &beta, 4).unwrap();
        let expect = [0.0, 0.0, 0.5, 0.5, 0.5, -0.5];
        for (a, e) in psi.amplitudes().iter().zip(expect) {
            assert!((a - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn expansion_on_two_vertex_example() {
        let theta = 1.3;
        let (alpha, beta) = two_vertex_family(theta);
        let psi = expand_basis_state(&alpha, &beta, 0).unwrap();
        assert!((psi.amplitudes()[0] - c(theta.sin(), 0.0)).norm() < 1e-12);
        assert!((psi.amplitudes()[1] - c(-theta.cos(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn expansion_rejects_partial() {
        let g = Graph::complete(3);
        let partial = Tessellation::uniform(&g, &[vec![0, 1]]).unwrap();
        let full = Tessellation::uniform(&g, &[vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            expand_basis_state(&partial, &full, 0),
            Err(SqwError::PartialTessellation)
        ));
    }

    #[test]
    fn classification_roundtrip() {
        let (_, alpha, beta) = cycle10_family();
        for t in [&alpha, &beta] {
            let r = reflection_operator(t);
            let cls = classify_orthogonal_reflection(&r, 1e-10);
            assert!(cls.is_orthogonal_reflection, "{:?}", cls.failure_reason);
            assert_eq!(cls.recovered_polygons.len(), t.len());
            for (rec, orig) in cls.recovered_polygons.iter().zip(t.polygons()) {
                assert_eq!(rec.vertices(), orig.vertices());
                // Recovered amplitudes match up to a global phase.
                let ratio = orig.amplitudes()[0] / rec.amplitudes()[0];
                for (a, b) in rec.amplitudes().iter().zip(orig.amplitudes()) {
                    assert!((a * ratio - b).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn minus_identity_is_not_a_reflection() {
        let m = Operator::from_matrix(CMat::identity(3, 3) * c(-1.0, 0.0));
        let cls = classify_orthogonal_reflection(&m, 1e-10);
        assert!(!cls.is_orthogonal_reflection);
        assert!(cls.failure_reason.unwrap().contains("+1"));
    }

    #[test]
    fn identity_recovers_singletons() {
        let cls = classify_orthogonal_reflection(&Operator::identity(4), 1e-10);
        assert!(cls.is_orthogonal_reflection);
        assert_eq!(cls.recovered_polygons.len(), 4);
    }

    #[test]
    fn interlaced_reflection_is_orthogonal_reflection() {
        let (_, _, beta) = glued_k4_family();
        let marked = BTreeSet::from([0, 2]);
        let r_m = marked_reflection(&marked, 6).unwrap();
        let u1_prime = r_m.compose(&reflection_operator(&beta)).compose(&r_m);
        let cls = classify_orthogonal_reflection(&u1_prime, 1e-10);
        assert!(cls.is_orthogonal_reflection, "{:?}", cls.failure_reason);
    }

    #[test]
    fn marked_reflection_cases() {
        let none = marked_reflection(&BTreeSet::new(), 3).unwrap();
        assert!(none.max_abs_diff(&Operator::from_matrix(CMat::identity(3, 3) * c(-1., 0.))) < 1e-15);
        let all = marked_reflection(&BTreeSet::from([0, 1, 2]), 3).unwrap();
        assert!(linalg::identity_defect(all.matrix()) < 1e-15);
        let one = marked_reflection(&BTreeSet::from([1]), 3).unwrap();
        for (i, want) in [(0, -1.0), (1, 1.0), (2, -1.0)] {
            assert_eq!(one.matrix()[(i, i)], c(want, 0.0));
        }
    }

    #[test]
    fn modified_beta_signs() {
        let (_, _, beta) = glued_k4_family();
        // Empty marked set: global negation.
        let negated = modified_beta(&beta, &BTreeSet::new());
        for (p, q) in negated.polygons().iter().zip(beta.polygons()) {
            for (a, b) in p.amplitudes().iter().zip(q.amplitudes()) {
                assert_eq!(*a, -b);
            }
        }
        // Fully marked polygon: unchanged.
        let covered = modified_beta(&beta, &BTreeSet::from([0, 1]));
        assert_eq!(covered.polygon(0), beta.polygon(0));
        // Half-marked pair flips the unmarked sign.
        let half = modified_beta(&beta, &BTreeSet::from([0]));
        assert_eq!(half.polygon(0).amplitude_at(0), beta.polygon(0).amplitude_at(0));
        assert_eq!(half.polygon(0).amplitude_at(1), -beta.polygon(0).amplitude_at(1));
    }

    #[test]
    fn search_with_no_marks_is_plain_walk() {
        let (_, alpha, beta) = glued_k4_family();
        let u = evolution_operator(&[alpha.clone(), beta.clone()]).unwrap();
        let u_m = search_operator(&alpha, &beta, &BTreeSet::new()).unwrap();
        assert!(u_m.max_abs_diff(&u) < 1e-15);
    }

    #[test]
    fn marked_beta_polygon_is_invisible() {
        let (_, alpha, beta) = glued_k4_family();
        let u = evolution_operator(&[alpha.clone(), beta.clone()]).unwrap();
        let u_m = search_operator(&alpha, &beta, &BTreeSet::from([0, 1])).unwrap();
        assert!(u_m.max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn marked_alpha_polygon_gives_similarity() {
        let (_, alpha, beta) = glued_k4_family();
        let marked = BTreeSet::from([4, 5]);
        let u = evolution_operator(&[alpha.clone(), beta.clone()]).unwrap();
        let u_m = search_operator(&alpha, &beta, &marked).unwrap();
        let r_m = marked_reflection(&marked, 6).unwrap();
        let similar = r_m.compose(&u).compose(&r_m);
        assert!(u_m.max_abs_diff(&similar) < 1e-12);
    }

    #[test]
    fn grover_structure_on_k4() {
        let (_, alpha, beta) = grover_instance(4, &BTreeSet::from([0])).unwrap();
        let u0 = reflection_operator(&alpha);
        for (i, want) in [(0, -1.0), (1, 1.0), (2, 1.0), (3, 1.0)] {
            assert_eq!(u0.matrix()[(i, i)], c(want, 0.0));
        }
        let u1 = reflection_operator(&beta);
        // Diffusion: 2/N off-diagonal, 2/N - 1 diagonal.
        assert!((u1.matrix()[(0, 1)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((u1.matrix()[(0, 0)] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn grover_on_two_vertices_has_quarter_phases() {
        let (_, alpha, beta) = grover_instance(2, &BTreeSet::from([0])).unwrap();
        let u = evolution_operator(&[alpha, beta]).unwrap();
        // U = [[0,1],[-1,0]]: eigenvalues are +-i.
        let expect = CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(-1., 0.), c(0., 0.)]);
        assert!(linalg::max_abs_diff(u.matrix(), &expect) < 1e-14);
    }

    #[test]
    fn grover_rejects_total_marking() {
        assert!(matches!(
            grover_instance(1, &BTreeSet::from([0])),
            Err(SqwError::InvalidMarkedSet)
        ));
    }
}
