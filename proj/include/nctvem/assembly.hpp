#pragma once

#include "nctvem/edge_basis.hpp"
#include "nctvem/mesh.hpp"
#include "nctvem/wave_space.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <iosfwd>
#include <vector>

namespace nctvem {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// g(x, outward normal) on the outer boundary.
using ImpedanceDatum = std::function<Complex(const Point&, const Point&)>;

/// Matrices of one element. Local DOFs run over the element's edges in loop
/// order and, within an edge, over its orthonormal basis.
struct LocalElementMatrices
{
    CMatrix G;
    CMatrix D;
    CMatrix B;
    CMatrix PiStar;
    CMatrix Pi;
    Eigen::VectorXd S;
    CMatrix A;
    double condition = 0;
};

/// Edges of one polygon in loop order with their outward normals.
struct ElementGeometry
{
    std::vector<Segment> edges;
    std::vector<Point> normals;

    static ElementGeometry of(const PolygonMesh& mesh, int element);
    /// Counter-clockwise polygon.
    static ElementGeometry of(const std::vector<Point>& polygon);
};

/// Edge bases of an element in loop order.
using LocalEdgeBases = std::vector<const OrthogonalEdgeBasis*>;

LocalEdgeBases gather_edge_bases(const PolygonMesh& mesh, int element, const std::vector<OrthogonalEdgeBasis>& edges);

/// T(l, a) = integral over the edge of w_l conj(w_hat_a), one row per element wave.
CMatrix edge_moments(const ElementWaveBasis& basis, const OrthogonalEdgeBasis& edge);

/// G(j, l) = a(w_l, w_j), reduced to boundary integrals.
CMatrix local_G(const ElementGeometry& geometry, const ElementWaveBasis& basis);
CMatrix local_G(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis);

/// D((i, a), l) = dof_(i, a)(w_l).
CMatrix local_D(const ElementGeometry& geometry, const ElementWaveBasis& basis, const LocalEdgeBases& edges);
CMatrix local_D(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis,
                const std::vector<OrthogonalEdgeBasis>& edges);

/// B(j, (i, a)) = a(phi_(i, a), w_j).
CMatrix local_B(const ElementGeometry& geometry, const ElementWaveBasis& basis, const LocalEdgeBases& edges);
CMatrix local_B(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis,
                const std::vector<OrthogonalEdgeBasis>& edges);

struct Projectors
{
    CMatrix PiStar;
    CMatrix Pi;
    double condition = 0;
};

/// Bound on the condition estimate of G; G is factored in long double, so this
/// leaves about two correct digits in the worst case.
inline constexpr double default_max_condition = 1e17;

/// PiStar = G^-1 B, Pi = D PiStar. Throws SingularMatrixError when the condition
/// estimate of G exceeds max_condition.
Projectors projector_matrices(const CMatrix& G, const CMatrix& B, const CMatrix& D, double max_condition = default_max_condition,
                              int element = -1);

/// Diagonal entries a(Pi phi_i, Pi phi_i).
Eigen::VectorXd stabilization(const CMatrix& G, const CMatrix& PiStar);

/// A(i, j) = a_h(phi_j, phi_i).
CMatrix element_matrix(const CMatrix& G, const CMatrix& PiStar, const CMatrix& Pi, const Eigen::VectorXd& S);

LocalElementMatrices local_matrices(const ElementGeometry& geometry, const ElementWaveBasis& basis,
                                    const LocalEdgeBases& edges, double max_condition = default_max_condition, int element = -1);
LocalElementMatrices local_matrices(const PolygonMesh& mesh, int element, const ElementWaveBasis& basis,
                                    const std::vector<OrthogonalEdgeBasis>& edges, double max_condition = default_max_condition);

/// Gauss points used for the load vector on an edge of length h in an element with wavenumber k.
int rhs_quadrature_points(double k, double h);

/// F(a) = h * integral over the edge of g conj(w_hat_a); edges crossing y = 0 are integrated piecewise.
CVector robin_rhs(const OrthogonalEdgeBasis& edge, const Point& normal, double k, const ImpedanceDatum& g,
                  int n_points = 0);

struct DofMap
{
    std::vector<int> offset;
    int n_dofs = 0;

    int global(int edge, int local) const { return offset[edge] + local; }
};

DofMap make_dof_map(const std::vector<OrthogonalEdgeBasis>& edges);

/// Global indices of the local DOFs of an element.
std::vector<int> element_dofs(const PolygonMesh& mesh, int element, const DofMap& dofs,
                              const std::vector<OrthogonalEdgeBasis>& edges);

struct SolveOptions
{
    double sigma = 1e-13;
    double max_condition = default_max_condition;
    double max_residual = 1e-8;
};

struct DiscreteSolution
{
    std::vector<ElementWaveBasis> element_bases;
    std::vector<OrthogonalEdgeBasis> edge_bases;
    DofMap dofs;
    std::vector<LocalElementMatrices> locals;
    SparseCMatrix matrix;
    CVector rhs;
    CVector x;
    int dofs_raw = 0;
    double residual = 0;

    /// Coefficients of Pi u_h over the wave basis of an element.
    CVector projected_coefficients(const PolygonMesh& mesh, int element) const;
};

/// Builds edge bases, local matrices and the sparse system, then solves it by sparse LU.
DiscreteSolution assemble_and_solve(const PolygonMesh& mesh, std::vector<ElementWaveBasis> element_bases,
                                    const ImpedanceDatum& g, const SolveOptions& options = {});

/// Coordinate listing "i j re im" of the matrix followed by "i re im" rows of the right-hand side.
void write_system(std::ostream& out, const DiscreteSolution& solution);

/// CSV rows: edge, local, global.
void write_dof_map(std::ostream& out, const DiscreteSolution& solution);

} // namespace nctvem
