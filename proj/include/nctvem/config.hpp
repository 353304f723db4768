#pragma once

#include "nctvem/analytic.hpp"
#include "nctvem/wave_space.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nctvem {

enum class MeshFamily { Cartesian, GradedIso, GradedAniso, File };
enum class DegreePolicy { Constant, UniformHp, GradedHp };

struct StudyConfig
{
    InterfaceProblem problem;

    MeshFamily family = MeshFamily::Cartesian;
    /// Elements per side (cartesian) or refinement steps (graded).
    std::vector<int> refinements{4};
    std::vector<std::string> files;
    double grading = 1.0 / 3;

    DegreePolicy policy = DegreePolicy::Constant;
    int q1 = 4;
    int q2 = 4;
    int qt2 = 0;
    double mu = 2;
    /// p-study sweep: which degree varies ("q2" or "qt2") and how q1 follows
    /// ("equal": q1 = q2, "double": q1 = 2 (q2 + qt2), "fixed").
    std::string sweep = "q2";
    std::vector<int> sweep_values{2, 3, 4, 5, 6, 7, 8};
    std::string q1_rule = "equal";

    double sigma_filter = 1e-13;
    CutWavenumber cut = CutWavenumber::Average;
    double rotation_deg = 0;
    double max_condition = 1e17;
    double max_residual = 1e-8;
    int quadrature_order = 20;

    std::string csv = "results.csv";
    std::string output_dir = ".";
    bool deterministic = false;
    int raster = 0;
    bool dump_edges = false;
    bool dump_system = false;

    void validate() const;
};

/// Sections [problem] [mesh] [degrees] [solver] [output] with "key = value" lines; '#' starts a comment.
StudyConfig parse_config(std::istream& in);
/// Reads a config file; relative mesh file paths are resolved against its directory.
StudyConfig load_config(const std::string& path);

/// Every field written out, defaults included; parse_config reads it back unchanged.
std::string resolved_config(const StudyConfig& config);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);

std::string config_hash(const StudyConfig& config);

const char* to_string(MeshFamily f);
const char* to_string(DegreePolicy p);

} // namespace nctvem
