#include "nctvem/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace nctvem {

const char* to_string(MeshFamily f)
{
    switch (f) {
    case MeshFamily::Cartesian: return "cartesian";
    case MeshFamily::GradedIso: return "graded_iso";
    case MeshFamily::GradedAniso: return "graded_aniso";
    case MeshFamily::File: return "file";
    }
    return "?";
}

const char* to_string(DegreePolicy p)
{
    switch (p) {
    case DegreePolicy::Constant: return "constant";
    case DegreePolicy::UniformHp: return "uniform_hp";
    case DegreePolicy::GradedHp: return "graded_hp";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v)
{
    const double x = to_double(key, v);
    if (x != std::floor(x))
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> words(const std::string& v)
{
    std::istringstream ss(v);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w)
        out.push_back(w);
    return out;
}

std::vector<int> to_ints(const std::string& key, const std::string& v)
{
    std::vector<int> out;
    for (const std::string& w : words(v))
        out.push_back(to_int(key, w));
    return out;
}

std::string join(const std::vector<int>& v)
{
    std::ostringstream ss;
    for (size_t i = 0; i < v.size(); ++i)
        ss << (i ? " " : "") << v[i];
    return ss.str();
}

std::string join(const std::vector<std::string>& v)
{
    std::ostringstream ss;
    for (size_t i = 0; i < v.size(); ++i)
        ss << (i ? " " : "") << v[i];
    return ss.str();
}

} // namespace

void StudyConfig::validate() const
{
    problem.validate();
    if (family == MeshFamily::File ? files.empty() : refinements.empty())
        throw ConfigError("mesh: empty refinement list");
    for (int r : refinements)
        if (r < 1)
            throw ConfigError("mesh: refinements must be >= 1");
    if (!(grading > 0 && grading < 1))
        throw ConfigError("mesh: sigma must lie in (0, 1)");
    if (policy == DegreePolicy::Constant) {
        if (q1 < 0 || q2 < 0 || qt2 < 0)
            throw ConfigError("degrees: q1, q2, qt2 must be nonnegative");
    } else if (!(mu > 0)) {
        throw ConfigError("degrees: mu must be positive");
    }
    if (policy == DegreePolicy::GradedHp && family != MeshFamily::GradedIso)
        throw ConfigError("degrees: graded_hp needs a graded_iso mesh family");
    if (sweep != "q2" && sweep != "qt2")
        throw ConfigError("degrees: sweep must be q2 or qt2");
    if (q1_rule != "equal" && q1_rule != "double" && q1_rule != "fixed")
        throw ConfigError("degrees: q1_rule must be equal, double or fixed");
    if (!(sigma_filter > 0))
        throw ConfigError("solver: sigma_filter must be positive");
    if (quadrature_order < 1)
        throw ConfigError("solver: quadrature_order must be >= 1");
}

StudyConfig parse_config(std::istream& in)
{
    StudyConfig c;
    std::string section, line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;

        if (full == "problem.k")
            c.problem.k = to_double(full, v);
        else if (full == "problem.n1")
            c.problem.n1 = to_double(full, v);
        else if (full == "problem.n2")
            c.problem.n2 = to_double(full, v);
        else if (full == "problem.theta_deg")
            c.problem.theta_inc = to_double(full, v) * pi / 180;
        else if (full == "mesh.family") {
            if (v == "cartesian")
                c.family = MeshFamily::Cartesian;
            else if (v == "graded_iso")
                c.family = MeshFamily::GradedIso;
            else if (v == "graded_aniso")
                c.family = MeshFamily::GradedAniso;
            else if (v == "file")
                c.family = MeshFamily::File;
            else
                throw ConfigError(full + ": unknown mesh family '" + v + "'");
        } else if (full == "mesh.refinements")
            c.refinements = to_ints(full, v);
        else if (full == "mesh.files")
            c.files = words(v);
        else if (full == "mesh.sigma")
            c.grading = to_double(full, v);
        else if (full == "degrees.policy") {
            if (v == "constant")
                c.policy = DegreePolicy::Constant;
            else if (v == "uniform_hp")
                c.policy = DegreePolicy::UniformHp;
            else if (v == "graded_hp")
                c.policy = DegreePolicy::GradedHp;
            else
                throw ConfigError(full + ": unknown degree policy '" + v + "'");
        } else if (full == "degrees.q1")
            c.q1 = to_int(full, v);
        else if (full == "degrees.q2")
            c.q2 = to_int(full, v);
        else if (full == "degrees.qt2")
            c.qt2 = to_int(full, v);
        else if (full == "degrees.mu")
            c.mu = to_double(full, v);
        else if (full == "degrees.sweep")
            c.sweep = v;
        else if (full == "degrees.sweep_values")
            c.sweep_values = to_ints(full, v);
        else if (full == "degrees.q1_rule")
            c.q1_rule = v;
        else if (full == "solver.sigma_filter")
            c.sigma_filter = to_double(full, v);
        else if (full == "solver.cut_wavenumber") {
            if (v == "average")
                c.cut = CutWavenumber::Average;
            else if (v == "max")
                c.cut = CutWavenumber::Max;
            else
                throw ConfigError(full + ": expected average or max");
        } else if (full == "solver.rotation_deg")
            c.rotation_deg = to_double(full, v);
        else if (full == "solver.max_condition")
            c.max_condition = to_double(full, v);
        else if (full == "solver.max_residual")
            c.max_residual = to_double(full, v);
        else if (full == "solver.quadrature_order")
            c.quadrature_order = to_int(full, v);
        else if (full == "output.csv")
            c.csv = v;
        else if (full == "output.dir")
            c.output_dir = v;
        else if (full == "output.deterministic")
            c.deterministic = to_bool(full, v);
        else if (full == "output.raster")
            c.raster = to_int(full, v);
        else if (full == "output.dump_edges")
            c.dump_edges = to_bool(full, v);
        else if (full == "output.dump_system")
            c.dump_system = to_bool(full, v);
        else
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + full + "'");
    }
    c.validate();
    return c;
}

StudyConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    StudyConfig c = parse_config(in);
    // mesh files are named relative to the config file
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    for (std::string& f : c.files)
        if (std::filesystem::path(f).is_relative())
            f = (base / f).lexically_normal().string();
    return c;
}

std::string resolved_config(const StudyConfig& c)
{
    std::ostringstream o;
    o << std::setprecision(17);
    o << "[problem]\n";
    o << "k = " << c.problem.k << '\n';
    o << "n1 = " << c.problem.n1 << '\n';
    o << "n2 = " << c.problem.n2 << '\n';
    o << "theta_deg = " << c.problem.theta_inc * 180 / pi << '\n';
    o << "\n[mesh]\n";
    o << "family = " << to_string(c.family) << '\n';
    o << "refinements = " << join(c.refinements) << '\n';
    o << "files = " << join(c.files) << '\n';
    o << "sigma = " << c.grading << '\n';
    o << "\n[degrees]\n";
    o << "policy = " << to_string(c.policy) << '\n';
    o << "q1 = " << c.q1 << '\n';
    o << "q2 = " << c.q2 << '\n';
    o << "qt2 = " << c.qt2 << '\n';
    o << "mu = " << c.mu << '\n';
    o << "sweep = " << c.sweep << '\n';
    o << "sweep_values = " << join(c.sweep_values) << '\n';
    o << "q1_rule = " << c.q1_rule << '\n';
    o << "\n[solver]\n";
    o << "sigma_filter = " << c.sigma_filter << '\n';
    o << "cut_wavenumber = " << (c.cut == CutWavenumber::Max ? "max" : "average") << '\n';
    o << "rotation_deg = " << c.rotation_deg << '\n';
    o << "max_condition = " << c.max_condition << '\n';
    o << "max_residual = " << c.max_residual << '\n';
    o << "quadrature_order = " << c.quadrature_order << '\n';
    o << "\n[output]\n";
    o << "csv = " << c.csv << '\n';
    o << "dir = " << c.output_dir << '\n';
    o << "deterministic = " << (c.deterministic ? "true" : "false") << '\n';
    o << "raster = " << c.raster << '\n';
    o << "dump_edges = " << (c.dump_edges ? "true" : "false") << '\n';
    o << "dump_system = " << (c.dump_system ? "true" : "false") << '\n';
    return o.str();
}

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const StudyConfig& config)
{
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << fnv1a(resolved_config(config));
    return o.str();
}

} // namespace nctvem
