//! Szegedy walks and the conversions to and from the staggered model.
//!
//! A Szegedy walk lives on the product space of a bipartite graph and is
//! driven by two right-stochastic matrices (optionally with per-edge
//! phases). It is always equivalent to a staggered walk on the line
//! graph of the bipartite graph; the converse holds exactly when every
//! polygon intersection has at most one vertex.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::StateVector;
use crate::error::{ConversionObstruction, Result, SqwError};
use crate::graph::{BipartiteGraph, EdgeBijection, Graph};
use crate::linalg::{CMat, CVec};
use crate::operator::{reflection_operator, Operator};
use crate::tessellation::{
    polygon_intersections, validate_tessellation_family, Polygon, Tessellation,
};

const STOCHASTIC_TOL: f64 = 1e-12;

/// Bipartite graph plus right-stochastic maps in both directions and
/// optional phase matrices (the extended model).
#[derive(Debug, Clone, PartialEq)]
pub struct SzegedyInstance {
    bipartite: BipartiteGraph,
    p: DMatrix<f64>,
    q: DMatrix<f64>,
    theta: Option<DMatrix<f64>>,
    theta_prime: Option<DMatrix<f64>>,
}

fn check_stochastic(m: &DMatrix<f64>) -> Result<()> {
    for r in 0..m.nrows() {
        let mut sum = 0.0;
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            if v < 0.0 {
                return Err(SqwError::NegativeEntry { row: r, col: c, value: v });
            }
            sum += v;
        }
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(SqwError::NotStochastic { row: r, sum });
        }
    }
    Ok(())
}

impl SzegedyInstance {
    /// Builds and validates an instance. `p` maps X to Y (m rows), `q`
    /// maps Y to X (n rows); both supports must coincide with the edge
    /// set.
    pub fn new(
        bipartite: BipartiteGraph,
        p: DMatrix<f64>,
        q: DMatrix<f64>,
        theta: Option<DMatrix<f64>>,
        theta_prime: Option<DMatrix<f64>>,
    ) -> Result<Self> {
        let (m, n) = (bipartite.x_count(), bipartite.y_count());
        if p.nrows() != m || p.ncols() != n {
            return Err(SqwError::DimensionMismatch { expected: m * n, got: p.nrows() * p.ncols() });
        }
        if q.nrows() != n || q.ncols() != m {
            return Err(SqwError::DimensionMismatch { expected: m * n, got: q.nrows() * q.ncols() });
        }
        check_stochastic(&p)?;
        check_stochastic(&q)?;
        for x in 0..m {
            for y in 0..n {
                let edge = bipartite.has_edge(x, y);
                if (p[(x, y)] > 0.0) != edge || (q[(y, x)] > 0.0) != edge {
                    return Err(SqwError::SupportMismatch { x, y });
                }
            }
        }
        for phases in [&theta, &theta_prime].into_iter().flatten() {
            if phases.nrows() != m || phases.ncols() != n {
                return Err(SqwError::DimensionMismatch {
                    expected: m * n,
                    got: phases.nrows() * phases.ncols(),
                });
            }
        }
        Ok(SzegedyInstance { bipartite, p, q, theta, theta_prime })
    }

    /// Derives the bipartite graph from the support of `p` and validates
    /// `q` against it. This is how instances arrive from serialized
    /// form, where only the matrices are stored.
    pub fn from_matrices(
        p: DMatrix<f64>,
        q: DMatrix<f64>,
        theta: Option<DMatrix<f64>>,
        theta_prime: Option<DMatrix<f64>>,
    ) -> Result<Self> {
        let mut edges = Vec::new();
        for x in 0..p.nrows() {
            for y in 0..p.ncols() {
                if p[(x, y)] > 0.0 {
                    edges.push((x, y));
                }
            }
        }
        let bipartite = BipartiteGraph::new(p.nrows(), p.ncols(), &edges)?;
        SzegedyInstance::new(bipartite, p, q, theta, theta_prime)
    }

    /// Uniform stochastic rows over the incident edges in both
    /// directions.
    pub fn uniform(bipartite: BipartiteGraph) -> Result<Self> {
        let (m, n) = (bipartite.x_count(), bipartite.y_count());
        let mut p = DMatrix::zeros(m, n);
        let mut q = DMatrix::zeros(n, m);
        let mut deg_x = vec![0usize; m];
        let mut deg_y = vec![0usize; n];
        for (x, y) in bipartite.edges() {
            deg_x[x] += 1;
            deg_y[y] += 1;
        }
        for (x, y) in bipartite.edges() {
            p[(x, y)] = 1.0 / deg_x[x] as f64;
            q[(y, x)] = 1.0 / deg_y[y] as f64;
        }
        SzegedyInstance::new(bipartite, p, q, None, None)
    }

    pub fn bipartite(&self) -> &BipartiteGraph {
        &self.bipartite
    }

    pub fn x_count(&self) -> usize {
        self.bipartite.x_count()
    }

    pub fn y_count(&self) -> usize {
        self.bipartite.y_count()
    }

    pub fn p(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn theta(&self) -> Option<&DMatrix<f64>> {
        self.theta.as_ref()
    }

    pub fn theta_prime(&self) -> Option<&DMatrix<f64>> {
        self.theta_prime.as_ref()
    }

    /// Index of |x,y> in the product space.
    pub fn product_index(&self, x: usize, y: usize) -> usize {
        x * self.y_count() + y
    }
}

fn phase_at(phases: Option<&DMatrix<f64>>, x: usize, y: usize) -> Complex64 {
    match phases {
        Some(t) => Complex64::from_polar(1.0, t[(x, y)]),
        None => Complex64::ONE,
    }
}

/// The vectors |phi_x> (over the rows of `p`) and |psi_y> (rows of `q`)
/// as partial tessellations of the product space: supports are disjoint
/// by construction, one polygon per row.
fn product_tessellations(
    m: usize,
    n: usize,
    p: &DMatrix<f64>,
    q: &DMatrix<f64>,
    theta: Option<&DMatrix<f64>>,
    theta_prime: Option<&DMatrix<f64>>,
    skip_x: &BTreeSet<usize>,
    skip_y: &BTreeSet<usize>,
) -> Result<(Tessellation, Tessellation)> {
    let dim = m * n;
    let mut phi = Vec::new();
    for x in 0..m {
        if skip_x.contains(&x) {
            continue;
        }
        let mut verts = Vec::new();
        let mut amps = Vec::new();
        for y in 0..n {
            if p[(x, y)] > 0.0 {
                verts.push(x * n + y);
                amps.push(p[(x, y)].sqrt() * phase_at(theta, x, y));
            }
        }
        phi.push(Polygon::new(verts, amps)?);
    }
    let mut psi = Vec::new();
    for y in 0..n {
        if skip_y.contains(&y) {
            continue;
        }
        let mut verts = Vec::new();
        let mut amps = Vec::new();
        for x in 0..m {
            if q[(y, x)] > 0.0 {
                verts.push(x * n + y);
                amps.push(q[(y, x)].sqrt() * phase_at(theta_prime, x, y));
            }
        }
        psi.push(Polygon::new(verts, amps)?);
    }
    Ok((Tessellation::new(dim, phi)?, Tessellation::new(dim, psi)?))
}

/// Walk operator W = R1 R0 on the full product space. Kets outside the
/// edge set are fixed points of W.
pub fn szegedy_operator(inst: &SzegedyInstance) -> Result<Operator> {
    let (m, n) = (inst.x_count(), inst.y_count());
    let (t_phi, t_psi) = product_tessellations(
        m,
        n,
        &inst.p,
        &inst.q,
        inst.theta(),
        inst.theta_prime(),
        &BTreeSet::new(),
        &BTreeSet::new(),
    )?;
    let r0 = reflection_operator(&t_phi);
    let r1 = reflection_operator(&t_psi);
    Ok(r1.compose(&r0))
}

/// Expands `W |x,y>` directly from the stochastic entries as the
/// four-term combination over the |phi> and |psi> vectors. Serves as an
/// independent route to the operator columns. Off-edge kets are fixed
/// points and are reported, not expanded.
pub fn szegedy_expand(inst: &SzegedyInstance, x: usize, y: usize) -> Result<StateVector> {
    let (m, n) = (inst.x_count(), inst.y_count());
    if x >= m || y >= n {
        return Err(SqwError::VertexOutOfRange { vertex: x.max(y), n: m.max(n) });
    }
    if !inst.bipartite.has_edge(x, y) {
        return Err(SqwError::SupportMismatch { x, y });
    }
    let (t_phi, t_psi) = product_tessellations(
        m,
        n,
        &inst.p,
        &inst.q,
        inst.theta(),
        inst.theta_prime(),
        &BTreeSet::new(),
        &BTreeSet::new(),
    )?;
    let dim = m * n;
    let phi_x = t_phi.polygon(x).state(dim);
    let p_conj = (inst.p[(x, y)]).sqrt() * phase_at(inst.theta(), x, y).conj();
    let q_conj = (inst.q[(y, x)]).sqrt() * phase_at(inst.theta_prime(), x, y).conj();

    let mut out = CVec::zeros(dim);
    out[inst.product_index(x, y)] = Complex64::ONE;
    out -= &phi_x * (2.0 * p_conj);
    out -= t_psi.polygon(y).state(dim) * (2.0 * q_conj);
    for yp in 0..n {
        let psi_yp = t_psi.polygon(yp).state(dim);
        let overlap = psi_yp.dotc(&phi_x); // C_{y'x} = <psi_y'|phi_x>
        if overlap != Complex64::ZERO {
            out += psi_yp * (4.0 * p_conj * overlap);
        }
    }
    StateVector::from_evolved(out)
}

/// The staggered walk equivalent to a Szegedy instance: tessellations of
/// the line graph of the bipartite graph, with amplitudes carried over
/// from the stochastic rows.
#[derive(Debug, Clone)]
pub struct StaggeredForm {
    pub line_graph: Graph,
    pub alpha: Tessellation,
    pub beta: Tessellation,
    pub bijection: EdgeBijection,
}

impl StaggeredForm {
    pub fn operator(&self) -> Result<Operator> {
        crate::operator::evolution_operator(&[self.alpha.clone(), self.beta.clone()])
    }
}

/// Converts a Szegedy instance into its staggered form on the line
/// graph. Requires a connected bipartite graph.
pub fn szegedy_to_staggered(inst: &SzegedyInstance) -> Result<StaggeredForm> {
    if !inst.bipartite.is_connected() {
        return Err(SqwError::Disconnected);
    }
    let (line_graph, bijection) = inst.bipartite.line_graph()?;
    let n_line = line_graph.n_vertices();

    let (m, n) = (inst.x_count(), inst.y_count());
    let mut alpha_polys = Vec::with_capacity(m);
    for x in 0..m {
        let mut verts = Vec::new();
        let mut amps = Vec::new();
        for y in 0..n {
            if inst.p[(x, y)] > 0.0 {
                verts.push(bijection.index_of((x, y)).expect("support edge is labelled"));
                amps.push(inst.p[(x, y)].sqrt() * phase_at(inst.theta(), x, y));
            }
        }
        alpha_polys.push(Polygon::new(verts, amps)?);
    }
    let mut beta_polys = Vec::with_capacity(n);
    for y in 0..n {
        let mut verts = Vec::new();
        let mut amps = Vec::new();
        for x in 0..m {
            if inst.q[(y, x)] > 0.0 {
                verts.push(bijection.index_of((x, y)).expect("support edge is labelled"));
                amps.push(inst.q[(y, x)].sqrt() * phase_at(inst.theta_prime(), x, y));
            }
        }
        beta_polys.push(Polygon::new(verts, amps)?);
    }

    Ok(StaggeredForm {
        line_graph,
        alpha: Tessellation::new(n_line, alpha_polys)?,
        beta: Tessellation::new(n_line, beta_polys)?,
        bijection,
    })
}

/// Converts a staggered walk into an extended Szegedy instance, provided
/// every polygon intersection has at most one vertex. The bijection maps
/// each recovered bipartite edge `(k, k')` to the graph vertex shared by
/// `alpha_k` and `beta_k'`. A two-vertex intersection is returned as the
/// conversion obstruction naming the offending pair.
pub fn staggered_to_szegedy(
    g: &Graph,
    alpha: &Tessellation,
    beta: &Tessellation,
) -> Result<(SzegedyInstance, EdgeBijection)> {
    if alpha.is_partial() || beta.is_partial() {
        return Err(SqwError::PartialTessellation);
    }
    let report = validate_tessellation_family(g, &[alpha.clone(), beta.clone()])?;
    if !report.is_valid() {
        return Err(SqwError::InvalidFamily(format!("{:?}", report.violations[0])));
    }

    let table = polygon_intersections(alpha, beta);
    for (k, row) in table.sets.iter().enumerate() {
        for (kp, shared) in row.iter().enumerate() {
            if shared.len() >= 2 {
                return Err(SqwError::Obstructed(ConversionObstruction {
                    alpha_index: k,
                    beta_index: kp,
                    shared: shared.clone(),
                }));
            }
        }
    }

    let (m, n) = (alpha.len(), beta.len());
    let nv = g.n_vertices();
    let mut p = DMatrix::zeros(m, n);
    let mut q = DMatrix::zeros(n, m);
    let mut theta = DMatrix::zeros(m, n);
    let mut theta_prime = DMatrix::zeros(m, n);
    let mut labelled = Vec::with_capacity(nv);
    for v in 0..nv {
        // Full coverage + disjointness puts every vertex in exactly one
        // polygon per tessellation.
        let k = alpha.polygon_of(v).expect("full tessellation covers v");
        let kp = beta.polygon_of(v).expect("full tessellation covers v");
        let a = alpha.polygon(k).amplitude_at(v);
        let b = beta.polygon(kp).amplitude_at(v);
        p[(k, kp)] = a.norm_sqr();
        q[(kp, k)] = b.norm_sqr();
        theta[(k, kp)] = a.arg();
        theta_prime[(k, kp)] = b.arg();
        labelled.push(((k, kp), v));
    }
    labelled.sort_unstable();
    let edges: Vec<(usize, usize)> = labelled.iter().map(|&(e, _)| e).collect();
    let bipartite = BipartiteGraph::new(m, n, &edges)?;

    let trivial_phases = theta.iter().all(|&t| t == 0.0) && theta_prime.iter().all(|&t| t == 0.0);
    let (theta, theta_prime) =
        if trivial_phases { (None, None) } else { (Some(theta), Some(theta_prime)) };
    let inst = SzegedyInstance::new(bipartite, p, q, theta, theta_prime)?;

    // backward[v] = (k, k'); labels are the graph's own vertex indices.
    let mut backward = vec![(0, 0); nv];
    for (e, v) in labelled {
        backward[v] = e;
    }
    Ok((inst, EdgeBijection::from_pairs(backward)))
}

/// Everything produced by the sink construction for searching: the
/// duplicated bipartite graph with marked-copy edges, the absorbing
/// stochastic matrices, the equivalent generalized staggered walk on the
/// line graph, and the initial state.
#[derive(Debug, Clone)]
pub struct SzegedySearchInstance {
    pub bipartite: BipartiteGraph,
    pub p_prime: DMatrix<f64>,
    pub q_prime: DMatrix<f64>,
    pub line_graph: Graph,
    /// Partial: polygons only for unmarked X vertices.
    pub alpha: Tessellation,
    /// Partial: polygons only for unmarked copies.
    pub beta: Tessellation,
    pub bijection: EdgeBijection,
    /// (1/sqrt(n)) * sum_{xy} sqrt(p_xy) |f(x,y)>, built from the
    /// *unmodified* chain and normalized explicitly.
    pub initial_state: StateVector,
    /// Relative deviation of the formula normalizer 1/sqrt(n) from the
    /// exact one; zero whenever every row of `p` sums to 1.
    pub normalizer_deviation: f64,
}

impl SzegedySearchInstance {
    /// W' = R1 R0 on the product space, built from the absorbing
    /// matrices with every row present (marked rows are deterministic
    /// hops onto the partner copy).
    pub fn walk_operator(&self) -> Result<Operator> {
        let n = self.p_prime.nrows();
        let (t_phi, t_psi) = product_tessellations(
            n,
            n,
            &self.p_prime,
            &self.q_prime,
            None,
            None,
            &BTreeSet::new(),
            &BTreeSet::new(),
        )?;
        Ok(reflection_operator(&t_psi).compose(&reflection_operator(&t_phi)))
    }

    /// The generalized staggered walk on the line graph.
    pub fn staggered_operator(&self) -> Result<Operator> {
        let u0 = reflection_operator(&self.alpha);
        let u1 = reflection_operator(&self.beta);
        Ok(u1.compose(&u0))
    }
}

/// Builds the directed search construction from a graph, a stochastic
/// matrix supported on its edges, and a marked vertex set: X is
/// duplicated, out-edges of marked vertices are dropped, and each marked
/// vertex is wired to its own copy with weight one.
pub fn szegedy_search_instance(
    g: &Graph,
    p: &DMatrix<f64>,
    marked: &BTreeSet<usize>,
) -> Result<SzegedySearchInstance> {
    let n = g.n_vertices();
    if p.nrows() != n || p.ncols() != n {
        return Err(SqwError::DimensionMismatch { expected: n * n, got: p.nrows() * p.ncols() });
    }
    check_stochastic(p)?;
    for x in 0..n {
        for y in 0..n {
            if (p[(x, y)] > 0.0) != g.has_edge(x, y) {
                return Err(SqwError::SupportMismatch { x, y });
            }
        }
    }
    if marked.is_empty() || marked.len() >= n {
        return Err(SqwError::InvalidMarkedSet);
    }
    if let Some(&m) = marked.iter().find(|&&m| m >= n) {
        return Err(SqwError::VertexOutOfRange { vertex: m, n });
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p[(x, y)] > 0.0 {
                edges.push((x, y));
            }
        }
    }
    for &m in marked {
        edges.push((m, m));
    }
    let bipartite = BipartiteGraph::new(n, n, &edges)?;

    let mut p_prime = p.clone();
    for &m in marked {
        for y in 0..n {
            p_prime[(m, y)] = 0.0;
        }
        p_prime[(m, m)] = 1.0;
    }
    let q_prime = p_prime.clone();

    let (line_graph, bijection) = bipartite.line_graph()?;
    let dim = line_graph.n_vertices();

    let mut alpha_polys = Vec::new();
    for x in (0..n).filter(|x| !marked.contains(x)) {
        let mut verts = Vec::new();
        let mut amps = Vec::new();
        for y in 0..n {
            if p_prime[(x, y)] > 0.0 {
                verts.push(bijection.index_of((x, y)).expect("edge labelled"));
                amps.push(Complex64::new(p_prime[(x, y)].sqrt(), 0.0));
            }
        }
        alpha_polys.push(Polygon::new(verts, amps)?);
    }
    let mut beta_polys = Vec::new();
    for y in (0..n).filter(|y| !marked.contains(y)) {
        let mut verts = Vec::new();
        let mut amps = Vec::new();
        for x in 0..n {
            if q_prime[(y, x)] > 0.0 {
                verts.push(bijection.index_of((x, y)).expect("edge labelled"));
                amps.push(Complex64::new(q_prime[(y, x)].sqrt(), 0.0));
            }
        }
        beta_polys.push(Polygon::new(verts, amps)?);
    }

    let mut raw = CVec::zeros(dim);
    for x in 0..n {
        for y in 0..n {
            if p[(x, y)] > 0.0 {
                raw[bijection.index_of((x, y)).expect("edge labelled")] =
                    Complex64::new(p[(x, y)].sqrt(), 0.0);
            }
        }
    }
    let formula_norm = (n as f64).sqrt();
    let normalizer_deviation = (raw.norm() - formula_norm).abs() / formula_norm;
    let initial_state = StateVector::new(raw)?;

    Ok(SzegedySearchInstance {
        bipartite,
        p_prime,
        q_prime,
        line_graph,
        alpha: Tessellation::new(dim, alpha_polys)?,
        beta: Tessellation::new(dim, beta_polys)?,
        bijection,
        initial_state,
        normalizer_deviation,
    })
}

/// Probabilities of the polygon-label observable: one projector per
/// polygon support plus the leftover mass on vertices covered by no
/// polygon (the missing polygons are the search targets).
#[derive(Debug, Clone)]
pub struct PolygonDistribution {
    pub probabilities: Vec<f64>,
    pub remainder: f64,
}

pub fn polygon_observable_measure(
    state: &StateVector,
    alpha: &Tessellation,
) -> Result<PolygonDistribution> {
    if state.dim() != alpha.n_vertices() {
        return Err(SqwError::DimensionMismatch { expected: alpha.n_vertices(), got: state.dim() });
    }
    let amps = state.amplitudes();
    let probabilities: Vec<f64> = alpha
        .polygons()
        .iter()
        .map(|p| p.vertices().iter().map(|&v| amps[v].norm_sqr()).sum())
        .collect();
    let remainder = alpha.uncovered().iter().map(|&v| amps[v].norm_sqr()).sum();
    Ok(PolygonDistribution { probabilities, remainder })
}
