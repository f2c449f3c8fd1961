#include "fdfsi/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdfsi {

namespace {

std::string format_g(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

}  // namespace

void compute_accelerations(std::vector<TimeSeriesRecord>& r) {
    const std::size_t n = r.size();
    if (n < 2) return;
    auto diff = [&](std::size_t a, std::size_t b, double va, double vb) {
        return (vb - va) / (r[b].t - r[a].t);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = (i == 0) ? 0 : i - 1;
        const std::size_t b = (i + 1 == n) ? i : i + 1;
        r[i].ax = diff(a, b, r[a].u, r[b].u);
        r[i].ay = diff(a, b, r[a].v, r[b].v);
        r[i].alpha = diff(a, b, r[a].omega, r[b].omega);
    }
}

void write_time_series_csv(const std::string& path, const std::vector<TimeSeriesRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_time_series_csv: cannot open " + path);
    out << "t,x,y,theta,u,v,omega,ax,ay,alpha,Fx,Fy,Mz,div_res\n";
    for (const auto& r : records) {
        out << format_g(r.t, 12) << ',' << format_g(r.x, 12) << ',' << format_g(r.y, 12) << ','
            << format_g(r.theta, 12) << ',' << format_g(r.u, 12) << ',' << format_g(r.v, 12) << ','
            << format_g(r.omega, 12) << ',' << format_g(r.ax, 12) << ',' << format_g(r.ay, 12)
            << ',' << format_g(r.alpha, 12) << ',' << format_g(r.fx, 12) << ','
            << format_g(r.fy, 12) << ',' << format_g(r.mz, 12) << ',' << format_g(r.div_res, 12)
            << '\n';
    }
    if (!out) throw std::runtime_error("write_time_series_csv: write failed for " + path);
}

std::vector<TimeSeriesRecord> read_time_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_time_series_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_time_series_csv: empty file");
    std::vector<TimeSeriesRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        TimeSeriesRecord r;
        ss >> r.t >> r.x >> r.y >> r.theta >> r.u >> r.v >> r.omega >> r.ax >> r.ay >> r.alpha >>
            r.fx >> r.fy >> r.mz >> r.div_res;
        if (!ss) throw std::runtime_error("read_time_series_csv: malformed row in " + path);
        out.push_back(r);
    }
    return out;
}

FieldSnapshot make_snapshot(const Grid& g, double time, const FaceField& vel, const CellField& p,
                            const CellField& phi, const CellField& psi, const CellField& rho) {
    FieldSnapshot s;
    s.nx = g.nx;
    s.ny = g.ny;
    s.lx = g.lx;
    s.ly = g.ly;
    s.time = time;
    s.u.reserve(static_cast<std::size_t>(g.nx + 1) * g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) s.u.push_back(vel.u(i, j));
    s.v.reserve(static_cast<std::size_t>(g.nx) * (g.ny + 1));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s.v.push_back(vel.v(i, j));
    auto cells = [&](const CellField& f, std::vector<double>& dst) {
        dst.reserve(static_cast<std::size_t>(g.nx) * g.ny);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) dst.push_back(f(i, j));
    };
    cells(p, s.p);
    cells(phi, s.phi);
    cells(psi, s.psi);
    cells(rho, s.rho);
    return s;
}

namespace {

void write_block(std::ofstream& out, const char* name, const std::vector<double>& v, int per_row) {
    out << name << '\n';
    for (std::size_t k = 0; k < v.size(); ++k) {
        out << format_g(v[k], 17);
        out << (((k + 1) % static_cast<std::size_t>(per_row) == 0) ? '\n' : ' ');
    }
    if (v.size() % static_cast<std::size_t>(per_row) != 0) out << '\n';
}

void read_block(std::ifstream& in, const char* name, std::vector<double>& v, std::size_t count) {
    std::string tag;
    in >> tag;
    if (tag != name)
        throw std::runtime_error(std::string("read_field_dump: expected block ") + name);
    v.resize(count);
    for (std::size_t k = 0; k < count; ++k) in >> v[k];
    if (!in) throw std::runtime_error(std::string("read_field_dump: truncated block ") + name);
}

}  // namespace

void write_field_dump(const std::string& path, const FieldSnapshot& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_dump: cannot open " + path);
    out << "fdfsi-fields 1\n";
    out << s.nx << ' ' << s.ny << ' ' << format_g(s.lx, 17) << ' ' << format_g(s.ly, 17) << ' '
        << format_g(s.time, 17) << '\n';
    write_block(out, "u", s.u, s.nx + 1);
    write_block(out, "v", s.v, s.nx);
    write_block(out, "p", s.p, s.nx);
    write_block(out, "phi", s.phi, s.nx);
    write_block(out, "psi", s.psi, s.nx);
    write_block(out, "rho", s.rho, s.nx);
    if (!out) throw std::runtime_error("write_field_dump: write failed for " + path);
}

FieldSnapshot read_field_dump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field_dump: cannot open " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "fdfsi-fields" || version != 1)
        throw std::runtime_error("read_field_dump: bad header in " + path);
    FieldSnapshot s;
    in >> s.nx >> s.ny >> s.lx >> s.ly >> s.time;
    if (!in || s.nx <= 0 || s.ny <= 0)
        throw std::runtime_error("read_field_dump: bad dimensions in " + path);
    const auto nxy = static_cast<std::size_t>(s.nx) * s.ny;
    read_block(in, "u", s.u, static_cast<std::size_t>(s.nx + 1) * s.ny);
    read_block(in, "v", s.v, static_cast<std::size_t>(s.nx) * (s.ny + 1));
    read_block(in, "p", s.p, nxy);
    read_block(in, "phi", s.phi, nxy);
    read_block(in, "psi", s.psi, nxy);
    read_block(in, "rho", s.rho, nxy);
    return s;
}

}  // namespace fdfsi
