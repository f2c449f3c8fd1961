#pragma once

#include <string>
#include <vector>

#include "fdfsi/grid.hpp"

namespace fdfsi {

struct TimeSeriesRecord {
    double t = 0.0;
    double x = 0.0, y = 0.0, theta = 0.0;
    double u = 0.0, v = 0.0, omega = 0.0;
    double ax = 0.0, ay = 0.0, alpha = 0.0;
    double fx = 0.0, fy = 0.0, mz = 0.0;
    double div_res = 0.0;
};

/// Central finite differences of the recorded velocities (one-sided at the
/// ends); fills ax, ay, alpha in place.
void compute_accelerations(std::vector<TimeSeriesRecord>& records);

/// CSV with the fixed header t,x,y,theta,u,v,omega,ax,ay,alpha,Fx,Fy,Mz,div_res.
void write_time_series_csv(const std::string& path, const std::vector<TimeSeriesRecord>& records);

std::vector<TimeSeriesRecord> read_time_series_csv(const std::string& path);

struct FieldSnapshot {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0, time = 0.0;
    std::vector<double> u;    // (nx+1) x ny, row-major (j outer)
    std::vector<double> v;    // nx x (ny+1)
    std::vector<double> p;    // nx x ny
    std::vector<double> phi;  // nx x ny
    std::vector<double> psi;  // nx x ny
    std::vector<double> rho;  // nx x ny
};

FieldSnapshot make_snapshot(const Grid& g, double time, const FaceField& vel, const CellField& p,
                            const CellField& phi, const CellField& psi, const CellField& rho);

/// Plain-text structured-grid dump: a dimensions header followed by row-major
/// values per variable (u, v, p, phi, psi, rho). Values round-trip bit-exactly.
void write_field_dump(const std::string& path, const FieldSnapshot& snap);

FieldSnapshot read_field_dump(const std::string& path);

}  // namespace fdfsi
