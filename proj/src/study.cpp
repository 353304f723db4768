#include "nctvem/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace nctvem {

std::vector<NamedMesh> study_meshes(const StudyConfig& config)
{
    std::vector<NamedMesh> out;
    switch (config.family) {
    case MeshFamily::Cartesian:
        for (int m : config.refinements)
            out.push_back({"cartesian-" + std::to_string(m), generate_cartesian(m)});
        break;
    case MeshFamily::GradedIso:
        for (int n : config.refinements)
            out.push_back({"graded_iso-" + std::to_string(n), generate_graded_iso(n, config.grading)});
        break;
    case MeshFamily::GradedAniso:
        for (int n : config.refinements)
            out.push_back({"graded_aniso-" + std::to_string(n), generate_graded_aniso(n, config.grading)});
        break;
    case MeshFamily::File:
        for (const std::string& f : config.files) {
            const auto slash = f.find_last_of('/');
            out.push_back({slash == std::string::npos ? f : f.substr(slash + 1), load_mesh_file(f)});
        }
        break;
    }
    return out;
}

std::vector<ElementDegrees> element_degrees(const PolygonMesh& mesh, const StudyConfig& config)
{
    switch (config.policy) {
    case DegreePolicy::Constant: return constant_degrees(mesh, config.q1, config.q2, config.qt2);
    case DegreePolicy::UniformHp: return uniform_hp_degrees(mesh, config.mu);
    case DegreePolicy::GradedHp: return graded_hp_degrees(mesh, config.mu);
    }
    return {};
}

CaseResult run_case(const StudyConfig& config, const NamedMesh& named, int run_id)
{
    const auto start = std::chrono::steady_clock::now();
    const PolygonMesh& mesh = named.mesh;
    const ExactSolution exact(config.problem);

    WaveSpaceOptions wopt;
    wopt.cut = config.cut;
    wopt.rotation = config.rotation_deg * pi / 180;
    const std::vector<ElementDegrees> degrees = element_degrees(mesh, config);
    auto bases = build_element_bases(mesh, degrees, config.problem, wopt);

    SolveOptions sopt;
    sopt.sigma = config.sigma_filter;
    sopt.max_condition = config.max_condition;
    sopt.max_residual = config.max_residual;
    const ImpedanceDatum g = [&exact](const Point& x, const Point& n) { return exact.impedance_datum(x, n); };

    CaseResult out;
    try {
        out.solution = assemble_and_solve(mesh, std::move(bases), g, sopt);
    } catch (const Error& e) {
        throw Error("run " + std::to_string(run_id) + " on " + named.name + ": " + e.what());
    }
    out.projected = projected_solution(mesh, out.solution);
    out.errors = compute_errors(mesh, out.projected, exact, config.quadrature_order);

    RunRecord& r = out.record;
    r.run_id = run_id;
    r.mesh = named.name;
    r.h = mesh.mesh_size();
    r.n_layers = mesh.n_layers();
    r.q1 = r.q2 = r.qt2 = 0;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        const Subdomain s = mesh.element(e).subdomain;
        if (s != Subdomain::Omega2)
            r.q1 = std::max(r.q1, degrees[e].q);
        if (s != Subdomain::Omega1)
            r.q2 = std::max(r.q2, degrees[e].q);
        if (s == Subdomain::Omega2)
            r.qt2 = std::max(r.qt2, degrees[e].qt);
    }
    r.mu = config.policy == DegreePolicy::Constant ? 0 : config.mu;
    r.dofs_raw = out.solution.dofs_raw;
    r.dofs_filtered = out.solution.dofs.n_dofs;
    r.err_h1_rel = out.errors.err_h1_rel;
    r.err_l2_rel = out.errors.err_l2_rel;
    r.residual = out.solution.residual;
    r.seconds = config.deterministic
                    ? 0
                    : std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::vector<RunRecord> run_h_study(const StudyConfig& config)
{
    std::vector<RunRecord> rows;
    int id = 0;
    for (const NamedMesh& m : study_meshes(config))
        rows.push_back(run_case(config, m, id++).record);
    return rows;
}

std::vector<RunRecord> run_p_study(const StudyConfig& config)
{
    const std::vector<NamedMesh> meshes = study_meshes(config);
    std::vector<RunRecord> rows;
    int id = 0;
    for (int v : config.sweep_values) {
        StudyConfig c = config;
        c.policy = DegreePolicy::Constant;
        if (config.sweep == "q2")
            c.q2 = v;
        else
            c.qt2 = v;
        if (config.q1_rule == "equal")
            c.q1 = c.q2;
        else if (config.q1_rule == "double")
            c.q1 = 2 * (c.q2 + c.qt2);
        rows.push_back(run_case(c, meshes.front(), id++).record);
    }
    return rows;
}

std::vector<RunRecord> run_hp_study(const StudyConfig& config)
{
    if (config.family != MeshFamily::GradedIso && config.family != MeshFamily::GradedAniso)
        throw ConfigError("hp study needs a graded mesh family");
    if (config.policy == DegreePolicy::Constant)
        throw ConfigError("hp study needs the uniform_hp or graded_hp degree policy");
    return run_h_study(config);
}

std::vector<double> observed_rates(const std::vector<double>& h, const std::vector<double>& err)
{
    std::vector<double> out;
    for (size_t i = 1; i < h.size(); ++i)
        out.push_back(std::log(err[i - 1] / err[i]) / std::log(h[i - 1] / h[i]));
    return out;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& rows, const std::string& hash, CsvExtras extras)
{
    if (extras == CsvExtras::Rates && rows.size() < 2)
        extras = CsvExtras::None;
    std::vector<double> rh1, rl2;
    if (extras == CsvExtras::Rates) {
        std::vector<double> h, e1, e0;
        for (const RunRecord& r : rows) {
            h.push_back(r.h);
            e1.push_back(r.err_h1_rel);
            e0.push_back(r.err_l2_rel);
        }
        rh1 = observed_rates(h, e1);
        rl2 = observed_rates(h, e0);
    }

    out << "# config_hash=" << hash << '\n';
    out << "run_id,mesh,h,n_layers,q1,q2,qt2,mu,dofs_raw,dofs_filtered,err_h1_rel,err_l2_rel,residual,seconds";
    if (extras == CsvExtras::Rates)
        out << ",rate_h1,rate_l2";
    if (extras == CsvExtras::SqrtDofs)
        out << ",sqrt_dofs";
    out << '\n';
    out << std::setprecision(10);
    for (size_t i = 0; i < rows.size(); ++i) {
        const RunRecord& r = rows[i];
        out << r.run_id << ',' << r.mesh << ',' << r.h << ',' << r.n_layers << ',' << r.q1 << ',' << r.q2 << ','
            << r.qt2 << ',' << r.mu << ',' << r.dofs_raw << ',' << r.dofs_filtered << ',' << r.err_h1_rel << ','
            << r.err_l2_rel << ',' << r.residual << ',' << r.seconds;
        if (extras == CsvExtras::Rates) {
            if (i == 0)
                out << ",,";
            else
                out << ',' << rh1[i - 1] << ',' << rl2[i - 1];
        }
        if (extras == CsvExtras::SqrtDofs)
            out << ',' << std::sqrt(static_cast<double>(r.dofs_filtered));
        out << '\n';
    }
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r = sxy / std::sqrt(sxx * syy);
    return f;
}

} // namespace nctvem
