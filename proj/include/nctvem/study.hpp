#pragma once

#include "nctvem/config.hpp"
#include "nctvem/mesh.hpp"
#include "nctvem/postprocess.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nctvem {

struct RunRecord
{
    int run_id = 0;
    std::string mesh;
    double h = 0;
    int n_layers = 0;
    int q1 = 0;
    int q2 = 0;
    int qt2 = 0;
    double mu = 0;
    int dofs_raw = 0;
    int dofs_filtered = 0;
    double err_h1_rel = 0;
    double err_l2_rel = 0;
    double residual = 0;
    double seconds = 0;
};

/// One mesh of a configured family, with a short descriptor such as "cartesian-8".
struct NamedMesh
{
    std::string name;
    PolygonMesh mesh;
};

std::vector<NamedMesh> study_meshes(const StudyConfig& config);

std::vector<ElementDegrees> element_degrees(const PolygonMesh& mesh, const StudyConfig& config);

struct CaseResult
{
    RunRecord record;
    DiscreteSolution solution;
    std::vector<ElementExpansion> projected;
    ErrorReport errors;
};

/// Solves one configuration on one mesh and measures the error against the exact solution.
CaseResult run_case(const StudyConfig& config, const NamedMesh& mesh, int run_id = 0);

std::vector<RunRecord> run_h_study(const StudyConfig& config);
/// Sweeps config.sweep over config.sweep_values on the first mesh.
std::vector<RunRecord> run_p_study(const StudyConfig& config);
/// Graded meshes with an hp degree policy, one row per refinement.
std::vector<RunRecord> run_hp_study(const StudyConfig& config);

/// Convergence rates between consecutive rows, log(e0 / e1) / log(h0 / h1).
std::vector<double> observed_rates(const std::vector<double>& h, const std::vector<double>& err);

enum class CsvExtras { None, Rates, SqrtDofs };

/// Header comment with the config hash, then the schema columns plus any extras.
void write_csv(std::ostream& out, const std::vector<RunRecord>& rows, const std::string& hash,
               CsvExtras extras = CsvExtras::None);

struct LinearFit
{
    double slope = 0;
    double intercept = 0;
    double r = 0;
};

/// Least-squares line and Pearson correlation.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace nctvem
