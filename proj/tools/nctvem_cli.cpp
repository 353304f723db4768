// Command line driver: single solves, h/p/hp studies and mesh utilities.

#include "nctvem/config.hpp"
#include "nctvem/edge_basis.hpp"
#include "nctvem/mesh.hpp"
#include "nctvem/study.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace nctvem;

namespace {

std::string output_path(const StudyConfig& c, const std::string& name)
{
    std::filesystem::create_directories(c.output_dir);
    return (std::filesystem::path(c.output_dir) / name).string();
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    return out;
}

void write_resolved(const StudyConfig& config, const std::string& hash)
{
    std::ofstream echo = open_out(output_path(config, "resolved_config.ini"));
    echo << "# config_hash=" << hash << '\n' << resolved_config(config);
}

int run_study(const std::string& kind, const std::string& config_path)
{
    const StudyConfig config = load_config(config_path);
    std::vector<RunRecord> rows;
    CsvExtras extras = CsvExtras::None;
    if (kind == "study-h") {
        rows = run_h_study(config);
        extras = CsvExtras::Rates;
    } else if (kind == "study-p") {
        rows = run_p_study(config);
    } else {
        rows = run_hp_study(config);
        extras = CsvExtras::SqrtDofs;
    }
    const std::string path = output_path(config, config.csv);
    std::ofstream out = open_out(path);
    write_csv(out, rows, config_hash(config), extras);
    write_resolved(config, config_hash(config));
    std::cout << "wrote " << rows.size() << " rows to " << path << '\n';
    return 0;
}

int run_solve(const std::string& config_path)
{
    const StudyConfig config = load_config(config_path);
    const std::vector<NamedMesh> meshes = study_meshes(config);
    const CaseResult res = run_case(config, meshes.front());
    const std::string hash = config_hash(config);

    std::ofstream csv = open_out(output_path(config, config.csv));
    write_csv(csv, {res.record}, hash);
    write_resolved(config, hash);

    const PolygonMesh& mesh = meshes.front().mesh;
    if (config.raster > 0) {
        std::ofstream out = open_out(output_path(config, "raster.csv"));
        write_raster(out, mesh, res.projected, ExactSolution(config.problem), config.raster, config.raster);
    }
    if (config.dump_edges) {
        std::ofstream out = open_out(output_path(config, "edges.csv"));
        write_edge_diagnostics(out, mesh, res.solution.edge_bases);
    }
    if (config.dump_system) {
        std::ofstream sys = open_out(output_path(config, "system.txt"));
        write_system(sys, res.solution);
        std::ofstream dofs = open_out(output_path(config, "dofs.csv"));
        write_dof_map(dofs, res.solution);
    }
    const RunRecord& r = res.record;
    std::cout << r.mesh << ": dofs " << r.dofs_filtered << " (raw " << r.dofs_raw << "), H1 error " << r.err_h1_rel
              << ", L2 error " << r.err_l2_rel << ", residual " << r.residual << '\n';
    return 0;
}

void print_mesh_summary(const PolygonMesh& mesh)
{
    int counts[3] = {0, 0, 0};
    for (const Element& el : mesh.elements())
        ++counts[static_cast<int>(el.subdomain)];
    int interface = 0, boundary = 0;
    for (const Edge& e : mesh.edges()) {
        interface += e.kind == EdgeKind::Interface;
        boundary += e.kind == EdgeKind::Boundary;
    }
    std::cout << "vertices " << mesh.vertices().size() << "\nelements " << mesh.n_elements() << " (Omega1 "
              << counts[0] << ", Omega2 " << counts[1] << ", Cut " << counts[2] << ")\nedges " << mesh.n_edges()
              << " (interface " << interface << ", boundary " << boundary << ")\nh " << mesh.mesh_size()
              << "\nlayers";
    for (int c : mesh.layer_counts())
        std::cout << ' ' << c;
    std::cout << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nonconforming Trefftz virtual elements for the Helmholtz interface problem"};
    app.require_subcommand(1);

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "solve one configuration and write results");
    solve->add_option("config", config_path, "config file")->required();
    auto* study_h = app.add_subcommand("study-h", "h-convergence study over the mesh list");
    study_h->add_option("config", config_path, "config file")->required();
    auto* study_p = app.add_subcommand("study-p", "p-convergence study over the degree sweep");
    study_p->add_option("config", config_path, "config file")->required();
    auto* study_hp = app.add_subcommand("study-hp", "hp study on graded meshes");
    study_hp->add_option("config", config_path, "config file")->required();

    auto* mesh_cmd = app.add_subcommand("mesh", "mesh utilities");
    mesh_cmd->require_subcommand(1);
    std::string family, out_path, in_path;
    int param = 0;
    double sigma = 1.0 / 3;
    auto* gen = mesh_cmd->add_subcommand("gen", "generate a mesh file");
    gen->add_option("family", family, "cartesian | graded_iso | graded_aniso")->required();
    gen->add_option("n", param, "elements per side or refinement steps")->required();
    gen->add_option("--sigma", sigma, "grading parameter");
    gen->add_option("-o,--output", out_path, "output file")->required();
    auto* check = mesh_cmd->add_subcommand("check", "validate a mesh file and print a summary");
    check->add_option("file", in_path, "mesh file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return run_solve(config_path);
        if (study_h->parsed())
            return run_study("study-h", config_path);
        if (study_p->parsed())
            return run_study("study-p", config_path);
        if (study_hp->parsed())
            return run_study("study-hp", config_path);
        if (gen->parsed()) {
            PolygonMesh mesh;
            if (family == "cartesian")
                mesh = generate_cartesian(param);
            else if (family == "graded_iso")
                mesh = generate_graded_iso(param, sigma);
            else if (family == "graded_aniso")
                mesh = generate_graded_aniso(param, sigma);
            else
                throw ConfigError("unknown mesh family '" + family + "'");
            save_mesh_file(mesh, out_path);
            print_mesh_summary(mesh);
            return 0;
        }
        if (check->parsed()) {
            print_mesh_summary(load_mesh_file(in_path));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
