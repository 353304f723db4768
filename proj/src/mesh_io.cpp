#include "nctvem/mesh.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nctvem {

namespace {

std::string next_line(std::istream& in, int& line_no)
{
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return line;
    }
    throw MeshError("unexpected end of mesh file after line " + std::to_string(line_no));
}

[[noreturn]] void malformed(int line_no, const std::string& what)
{
    throw MeshError("mesh file line " + std::to_string(line_no) + ": " + what);
}

int read_count(std::istream& in, int& line_no, const std::string& keyword)
{
    std::istringstream ss(next_line(in, line_no));
    std::string word;
    long long n = -1;
    if (!(ss >> word >> n) || word != keyword || n < 0)
        malformed(line_no, "expected '" + keyword + " <count>'");
    return static_cast<int>(n);
}

} // namespace

PolygonMesh load_mesh(std::istream& in)
{
    int line_no = 0;
    {
        std::istringstream ss(next_line(in, line_no));
        std::string magic;
        int version = 0;
        if (!(ss >> magic >> version) || magic != "ncvem-mesh" || version != 1)
            malformed(line_no, "expected header 'ncvem-mesh 1'");
    }
    const int nv = read_count(in, line_no, "vertices");
    std::vector<Point> vertices(nv);
    for (int i = 0; i < nv; ++i) {
        std::istringstream ss(next_line(in, line_no));
        double x, y;
        if (!(ss >> x >> y))
            malformed(line_no, "expected 'x y'");
        vertices[i] = {x, y};
    }
    const int ne = read_count(in, line_no, "elements");
    std::vector<std::vector<int>> loops(ne);
    for (int i = 0; i < ne; ++i) {
        std::istringstream ss(next_line(in, line_no));
        int k;
        if (!(ss >> k) || k < 3)
            malformed(line_no, "expected vertex count >= 3");
        loops[i].resize(k);
        for (int& v : loops[i])
            if (!(ss >> v))
                malformed(line_no, "expected " + std::to_string(k) + " vertex indices");
    }
    return PolygonMesh::build(std::move(vertices), std::move(loops));
}

PolygonMesh load_mesh_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw MeshError("cannot open mesh file " + path);
    return load_mesh(in);
}

void save_mesh(const PolygonMesh& mesh, std::ostream& out)
{
    out << "ncvem-mesh 1\n";
    out << "vertices " << mesh.vertices().size() << '\n';
    out << std::setprecision(17);
    for (const Point& p : mesh.vertices())
        out << p.x() << ' ' << p.y() << '\n';
    out << "elements " << mesh.n_elements() << '\n';
    for (const Element& el : mesh.elements()) {
        out << el.vertices.size();
        for (int v : el.vertices)
            out << ' ' << v;
        out << '\n';
    }
}

void save_mesh_file(const PolygonMesh& mesh, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw MeshError("cannot write mesh file " + path);
    save_mesh(mesh, out);
}

} // namespace nctvem
