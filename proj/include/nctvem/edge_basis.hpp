#pragma once

#include "nctvem/mesh.hpp"
#include "nctvem/wave_space.hpp"

#include <iosfwd>
#include <vector>

namespace nctvem {

struct EdgeCandidate
{
    int element = -1;
    WaveFunction wave;
};

/// Traces of the waves of all elements adjacent to one edge.
struct EdgeCandidateSet
{
    int edge = -1;
    std::vector<EdgeCandidate> candidates;

    int size() const { return static_cast<int>(candidates.size()); }
};

/// Orthonormal combinations w_hat_a = sum_r Q(r, a) nu_r of the candidate traces on one edge.
struct OrthogonalEdgeBasis
{
    int edge = -1;
    Segment segment;
    std::vector<WaveFunction> candidates;
    /// rho x p_hat, long double so that combinations of nearly dependent traces keep their digits.
    ComplexMatrix<long double> Q;
    /// Retained Gram eigenvalues, ascending.
    std::vector<double> eigenvalues;
    int n_dropped = 0;

    int dim() const { return static_cast<int>(Q.cols()); }
    int n_candidates() const { return static_cast<int>(candidates.size()); }

    template <typename Real>
    std::complex<Real> eval_as(int a, const Point& x) const
    {
        std::complex<Real> sum(0);
        for (int r = 0; r < n_candidates(); ++r)
            sum += scalar::widen<Real>(Q(r, a)) * candidates[r].template eval_as<Real>(x);
        return sum;
    }
};

std::vector<EdgeCandidateSet> build_candidates(const PolygonMesh& mesh, const std::vector<ElementWaveBasis>& bases);

/// Gram matrix G0(s, r) = integral of nu_r conj(nu_s), computed in quad precision.
DenseArray<std::complex<quad>> edge_gram(const std::vector<WaveFunction>& waves, const Segment& segment);

/// Drops Gram eigenvalues with |lambda| <= sigma and rescales the rest to an orthonormal basis,
/// followed by re-orthonormalization against the quad precision Gram matrix.
OrthogonalEdgeBasis orthogonalize_filter(const std::vector<WaveFunction>& candidates, const Segment& segment,
                                         double sigma = 1e-13, int edge = -1);

OrthogonalEdgeBasis orthogonalize_filter(const EdgeCandidateSet& set, const Segment& segment, double sigma = 1e-13);

/// max |(w_hat_a, w_hat_b) - delta_ab| over the basis.
double orthonormality_defect(const OrthogonalEdgeBasis& basis);

std::vector<OrthogonalEdgeBasis> build_edge_bases(const PolygonMesh& mesh, const std::vector<ElementWaveBasis>& bases,
                                                  double sigma = 1e-13);

/// CSV rows: edge, kind, rho, p_hat, dropped, lambda_min, lambda_max.
void write_edge_diagnostics(std::ostream& out, const PolygonMesh& mesh, const std::vector<OrthogonalEdgeBasis>& bases);

} // namespace nctvem
