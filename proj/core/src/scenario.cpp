#include "fdfsi/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fdfsi/fsi_ib.hpp"

namespace fdfsi {

std::vector<std::string> preset_names() { return {"wedge", "inclined-wedge", "cylinder"}; }

std::string preset_description(const std::string& name) {
    if (name == "wedge")
        return "free-falling straight wedge (L=1.2 m, 25 deg deadrise, rho_s=466.6), "
               "vertical DOF free; reference grid 1200x300, dt=6.25e-5 s";
    if (name == "inclined-wedge")
        return "free-falling wedge heeled 5 deg (L=0.61 m, 20 deg deadrise, M=124 kg, "
               "I=8.85 kg m^2), all DOFs free; reference grid 488x320, dt=2.5e-5 s";
    if (name == "cylinder")
        return "half-buoyant falling cylinder (D=0.11 m, rho_s=500), vertical DOF free; "
               "reference grid 880x528, dt=1e-5 s";
    throw std::invalid_argument("unknown preset: " + name);
}

SimulationConfig make_preset(const std::string& name) {
    SimulationConfig cfg;
    cfg.materials = MaterialTable{};  // water/air defaults
    if (name == "wedge") {
        const double L = 1.2;
        cfg.scenario = ScenarioKind::Wedge;
        cfg.nx = 1200;
        cfg.ny = 300;
        cfg.lx = 10.0 * L;
        cfg.ly = 2.5 * L;
        cfg.dt = 6.25e-5;
        cfg.end_time = 1.25;
        cfg.water_depth = 2.5 * L / 3.0;
        cfg.body = BodyKind::Wedge;
        cfg.body_x = 5.0 * L;
        cfg.body_y = 23.0 * L / 12.0;
        cfg.body_length = L;
        cfg.body_deadrise_deg = 25.0;
        cfg.materials.rho_s = 466.6;
        cfg.locks = {true, false, true};
        cfg.out_dir = "out_wedge";
    } else if (name == "inclined-wedge") {
        const double L = 0.61;
        cfg.scenario = ScenarioKind::InclinedWedge;
        cfg.nx = 488;
        cfg.ny = 320;
        cfg.lx = 4.0 * L;
        cfg.ly = 2.62 * L;
        cfg.dt = 2.5e-5;
        cfg.end_time = 0.5;
        cfg.water_depth = 0.225;
        cfg.body = BodyKind::Wedge;
        cfg.body_x = 2.0 * L;
        cfg.body_y = cfg.water_depth + 0.61;  // free-fall height 0.61 m above the surface
        cfg.body_length = L;
        cfg.body_deadrise_deg = 20.0;
        cfg.body_heel_deg = 5.0;
        cfg.body_com_offset = 0.216;
        cfg.body_mass = 124.0;
        cfg.body_inertia = 8.85;
        // interior density consistent with the given mass over the wedge area
        const double h = 0.5 * L * std::tan(20.0 * M_PI / 180.0);
        cfg.materials.rho_s = cfg.body_mass / (0.5 * L * h);
        cfg.locks = {false, false, false};
        cfg.out_dir = "out_inclined_wedge";
    } else if (name == "cylinder") {
        const double D = 0.11;
        cfg.scenario = ScenarioKind::Cylinder;
        cfg.nx = 880;
        cfg.ny = 528;
        cfg.lx = 20.0 * D;
        cfg.ly = 12.0 * D;
        cfg.dt = 1e-5;
        cfg.end_time = 0.35;
        cfg.water_depth = 3.0 * D;
        cfg.body = BodyKind::Circle;
        cfg.body_x = 10.0 * D;
        cfg.body_y = 8.05 * D;
        cfg.body_diameter = D;
        cfg.materials.rho_s = 500.0;
        cfg.locks = {true, false, true};
        cfg.out_dir = "out_cylinder";
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return cfg;
}

void apply_grid_scale(SimulationConfig& cfg, double scale) {
    if (scale <= 0.0) throw std::invalid_argument("grid scale must be positive");
    cfg.nx = static_cast<int>(std::lround(cfg.nx * scale));
    cfg.ny = static_cast<int>(std::lround(cfg.ny * scale));
    cfg.dt /= scale;
    cfg.grid_scale = scale;
}

namespace {

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("expected boolean, got '" + v + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_line(SimulationConfig& cfg, const std::string& key, const std::string& value) {
    using Setter = std::function<void(SimulationConfig&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"scenario",
         [](SimulationConfig& c, const std::string& v) {
             if (v == "wedge")
                 c.scenario = ScenarioKind::Wedge;
             else if (v == "inclined-wedge")
                 c.scenario = ScenarioKind::InclinedWedge;
             else if (v == "cylinder")
                 c.scenario = ScenarioKind::Cylinder;
             else if (v == "custom")
                 c.scenario = ScenarioKind::Custom;
             else
                 throw std::invalid_argument("unknown scenario '" + v + "'");
         }},
        {"coupling",
         [](SimulationConfig& c, const std::string& v) {
             if (v == "bp")
                 c.coupling = Coupling::BP;
             else if (v == "ib")
                 c.coupling = Coupling::IB;
             else
                 throw std::invalid_argument("coupling must be 'bp' or 'ib'");
         }},
        {"nx", [](SimulationConfig& c, const std::string& v) { c.nx = std::stoi(v); }},
        {"ny", [](SimulationConfig& c, const std::string& v) { c.ny = std::stoi(v); }},
        {"lx", [](SimulationConfig& c, const std::string& v) { c.lx = std::stod(v); }},
        {"ly", [](SimulationConfig& c, const std::string& v) { c.ly = std::stod(v); }},
        {"dt", [](SimulationConfig& c, const std::string& v) { c.dt = std::stod(v); }},
        {"end_time", [](SimulationConfig& c, const std::string& v) { c.end_time = std::stod(v); }},
        {"max_steps", [](SimulationConfig& c, const std::string& v) { c.max_steps = std::stol(v); }},
        {"n_cycles", [](SimulationConfig& c, const std::string& v) { c.n_cycles = std::stoi(v); }},
        {"rho_liquid",
         [](SimulationConfig& c, const std::string& v) { c.materials.rho_l = std::stod(v); }},
        {"rho_gas",
         [](SimulationConfig& c, const std::string& v) { c.materials.rho_g = std::stod(v); }},
        {"rho_solid",
         [](SimulationConfig& c, const std::string& v) { c.materials.rho_s = std::stod(v); }},
        {"mu_liquid",
         [](SimulationConfig& c, const std::string& v) {
             c.materials.mu_l = std::stod(v);
             c.materials.mu_s = c.materials.mu_l;
         }},
        {"mu_gas",
         [](SimulationConfig& c, const std::string& v) { c.materials.mu_g = std::stod(v); }},
        {"mu_solid",
         [](SimulationConfig& c, const std::string& v) { c.materials.mu_s = std::stod(v); }},
        {"n_cells",
         [](SimulationConfig& c, const std::string& v) { c.materials.n_cells = std::stoi(v); }},
        {"permeability",
         [](SimulationConfig& c, const std::string& v) { c.permeability = std::stod(v); }},
        {"chi_binary",
         [](SimulationConfig& c, const std::string& v) { c.chi_binary = parse_bool(v); }},
        {"gravity", [](SimulationConfig& c, const std::string& v) { c.gravity = std::stod(v); }},
        {"water_depth",
         [](SimulationConfig& c, const std::string& v) { c.water_depth = std::stod(v); }},
        {"body",
         [](SimulationConfig& c, const std::string& v) {
             if (v == "none")
                 c.body = BodyKind::None;
             else if (v == "circle")
                 c.body = BodyKind::Circle;
             else if (v == "wedge")
                 c.body = BodyKind::Wedge;
             else
                 throw std::invalid_argument("body must be none|circle|wedge");
         }},
        {"body_x", [](SimulationConfig& c, const std::string& v) { c.body_x = std::stod(v); }},
        {"body_y", [](SimulationConfig& c, const std::string& v) { c.body_y = std::stod(v); }},
        {"body_diameter",
         [](SimulationConfig& c, const std::string& v) { c.body_diameter = std::stod(v); }},
        {"body_length",
         [](SimulationConfig& c, const std::string& v) { c.body_length = std::stod(v); }},
        {"body_deadrise_deg",
         [](SimulationConfig& c, const std::string& v) { c.body_deadrise_deg = std::stod(v); }},
        {"body_heel_deg",
         [](SimulationConfig& c, const std::string& v) { c.body_heel_deg = std::stod(v); }},
        {"body_com_offset",
         [](SimulationConfig& c, const std::string& v) { c.body_com_offset = std::stod(v); }},
        {"body_mass", [](SimulationConfig& c, const std::string& v) { c.body_mass = std::stod(v); }},
        {"body_inertia",
         [](SimulationConfig& c, const std::string& v) { c.body_inertia = std::stod(v); }},
        {"lock_x", [](SimulationConfig& c, const std::string& v) { c.locks.x = parse_bool(v); }},
        {"lock_y", [](SimulationConfig& c, const std::string& v) { c.locks.y = parse_bool(v); }},
        {"lock_rotation",
         [](SimulationConfig& c, const std::string& v) { c.locks.rotation = parse_bool(v); }},
        {"motion",
         [](SimulationConfig& c, const std::string& v) {
             if (v == "free")
                 c.motion = MotionKind::Free;
             else if (v == "prescribed")
                 c.motion = MotionKind::Prescribed;
             else
                 throw std::invalid_argument("motion must be free|prescribed");
         }},
        {"marker_spacing_factor",
         [](SimulationConfig& c, const std::string& v) { c.marker_spacing_factor = std::stod(v); }},
        {"psi_numeric",
         [](SimulationConfig& c, const std::string& v) { c.psi_numeric = parse_bool(v); }},
        {"out_dir", [](SimulationConfig& c, const std::string& v) { c.out_dir = v; }},
        {"record_interval",
         [](SimulationConfig& c, const std::string& v) { c.record_interval = std::stoi(v); }},
        {"field_interval",
         [](SimulationConfig& c, const std::string& v) { c.field_interval = std::stoi(v); }},
        {"helmholtz_rtol",
         [](SimulationConfig& c, const std::string& v) { c.helmholtz_rtol = std::stod(v); }},
        {"poisson_rtol",
         [](SimulationConfig& c, const std::string& v) { c.poisson_rtol = std::stod(v); }},
        {"poisson_atol",
         [](SimulationConfig& c, const std::string& v) { c.poisson_atol = std::stod(v); }},
        {"timers", [](SimulationConfig& c, const std::string& v) { c.timers = parse_bool(v); }},
        {"grid_scale",
         [](SimulationConfig& c, const std::string& v) { apply_grid_scale(c, std::stod(v)); }},
    };
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    it->second(cfg, value);
}

SimulationConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    SimulationConfig cfg;
    bool scenario_seen = false;
    std::string line;
    int lineno = 0;
    // two passes so that "scenario=" presets load first and later keys override
    std::vector<std::pair<std::string, std::string>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "scenario" && value != "custom") {
            cfg = make_preset(value);
            scenario_seen = true;
            continue;
        }
        entries.emplace_back(key, value);
    }
    (void)scenario_seen;
    for (const auto& [key, value] : entries) {
        try {
            apply_config_line(cfg, key, value);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": key '" + key + "': " + e.what());
        }
    }
    return cfg;
}

BodySetup build_body(const SimulationConfig& cfg) {
    if (cfg.body == BodyKind::None) throw std::invalid_argument("build_body: no body configured");
    BodySetup setup;
    double com_offset = 0.0;  // apex (or center) to COM along the body axis

    if (cfg.body == BodyKind::Circle) {
        const double r = 0.5 * cfg.body_diameter;
        if (r <= 0.0) throw std::invalid_argument("body_diameter must be positive");
        setup.ref_shape = CircleShape{{0.0, 0.0}, r};
        setup.shape_area = M_PI * r * r;
        setup.state.x_com = {cfg.body_x, cfg.body_y};
    } else {
        const double L = cfg.body_length;
        if (L <= 0.0) throw std::invalid_argument("body_length must be positive");
        const double h = 0.5 * L * std::tan(cfg.body_deadrise_deg * M_PI / 180.0);
        if (h <= 0.0) throw std::invalid_argument("deadrise angle must be positive");
        com_offset = (cfg.body_com_offset >= 0.0) ? cfg.body_com_offset : 2.0 * h / 3.0;
        // apex-down isosceles triangle in the body frame, COM at the origin
        PolygonShape tri;
        tri.vertices = {{0.0, -com_offset}, {0.5 * L, h - com_offset}, {-0.5 * L, h - com_offset}};
        setup.ref_shape = tri;
        setup.shape_area = 0.5 * L * h;
        const double heel = cfg.body_heel_deg * M_PI / 180.0;
        // the configured (body_x, body_y) is the initial apex location;
        // COM = apex + R(heel) * (0, com_offset)
        const double c = std::cos(heel), s = std::sin(heel);
        setup.state.x_com = {cfg.body_x - s * com_offset, cfg.body_y + c * com_offset};
        setup.state.q = Quaternion::from_z_rotation(heel);
    }

    auto& b = setup.state;
    b.locks = cfg.locks;
    b.kind = cfg.motion;
    if (cfg.body_mass > 0.0) {
        b.mass = cfg.body_mass;
        b.inertia = cfg.body_inertia > 0.0 ? cfg.body_inertia : 0.0;
        if (b.inertia <= 0.0)
            throw std::invalid_argument("body_inertia must accompany body_mass");
    } else {
        const auto geom = body_geometry_properties(setup.ref_shape, cfg.materials.rho_s);
        b.mass = geom.mass;
        // parallel axis when the configured COM differs from the shape centroid
        const double dx = geom.com[0], dy = geom.com[1];
        b.inertia = geom.inertia + geom.mass * (dx * dx + dy * dy);
    }
    return setup;
}

GravityMode gravity_mode_for(const SimulationConfig& cfg) {
    if (cfg.coupling == Coupling::IB && cfg.motion == MotionKind::Free &&
        cfg.body != BodyKind::None)
        return GravityMode::Full;
    return GravityMode::FlowOnly;
}

std::vector<CheckResult> run_config_checks(const SimulationConfig& cfg) {
    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, bool pass, const std::string& msg) {
        out.push_back({name, pass, msg});
    };

    const bool grid_ok = cfg.nx > 0 && cfg.ny > 0 && cfg.lx > 0 && cfg.ly > 0 && cfg.dt > 0;
    add("grid", grid_ok, grid_ok ? "dimensions and step positive" : "bad grid/step configuration");
    if (!grid_ok) return out;

    const Grid g(cfg.nx, cfg.ny, cfg.lx, cfg.ly);
    {
        const double ratio = g.dx / g.dy;
        const bool ok = ratio > 0.8 && ratio < 1.25;
        std::ostringstream m;
        m << "dx=" << g.dx << " dy=" << g.dy;
        add("cells-near-square", ok, m.str());
    }
    {
        const bool ok = cfg.water_depth > 0.0 && cfg.water_depth < cfg.ly;
        add("water-depth", ok, "water surface inside the domain");
    }
    {
        const bool ok = cfg.materials.rho_l > 0 && cfg.materials.rho_g > 0 &&
                        cfg.materials.rho_s > 0 && cfg.permeability > 0;
        add("material-table", ok, "densities and permeability positive");
    }

    double fall_height = cfg.ly;
    if (cfg.body != BodyKind::None) {
        const auto setup = build_body(cfg);
        fall_height = std::max(0.0, setup.state.x_com[1] - cfg.water_depth);
        // body must sit a few smearing widths inside the domain
        const auto bbxy = [&]() {
            double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
            if (std::holds_alternative<CircleShape>(setup.ref_shape)) {
                const auto& c = std::get<CircleShape>(setup.ref_shape);
                lo_x = setup.state.x_com[0] - c.radius;
                hi_x = setup.state.x_com[0] + c.radius;
                lo_y = setup.state.x_com[1] - c.radius;
                hi_y = setup.state.x_com[1] + c.radius;
            } else if (std::holds_alternative<PolygonShape>(setup.ref_shape)) {
                for (const auto& v : std::get<PolygonShape>(setup.ref_shape).vertices) {
                    const auto w = setup.state.q.rotate2d(v);
                    lo_x = std::min(lo_x, setup.state.x_com[0] + w[0]);
                    hi_x = std::max(hi_x, setup.state.x_com[0] + w[0]);
                    lo_y = std::min(lo_y, setup.state.x_com[1] + w[1]);
                    hi_y = std::max(hi_y, setup.state.x_com[1] + w[1]);
                }
            }
            return std::array<double, 4>{lo_x, hi_x, lo_y, hi_y};
        }();
        const double margin = (cfg.materials.n_cells + 2) * g.min_spacing();
        const bool ok = bbxy[0] > margin && bbxy[1] < cfg.lx - margin && bbxy[2] > margin &&
                        bbxy[3] < cfg.ly - margin;
        add("body-in-domain", ok, "initial body bounding box clears the walls");

        if (cfg.coupling == Coupling::IB) {
            const auto mesh =
                generate_markers(setup.ref_shape, {0.0, 0.0}, g, cfg.marker_spacing_factor);
            const double rel =
                std::abs(mesh.total_weight() - setup.shape_area) / setup.shape_area;
            std::ostringstream m;
            m << mesh.size() << " markers, weight error " << rel * 100.0 << "%";
            add("marker-coverage", rel <= 0.02, m.str());
            if (mesh.coarse_spacing_warning)
                add("marker-spacing", false, "spacing factor > 1: leakage risk");
        }
    }
    {
        const double v_est = 1.2 * std::sqrt(2.0 * cfg.gravity * std::max(fall_height, 1e-12));
        const double cfl = v_est * cfg.dt / g.min_spacing();
        std::ostringstream m;
        m << "free-fall terminal estimate v=" << v_est << " m/s -> CFL " << cfl;
        add("startup-cfl", cfl <= 0.5, m.str());
    }
    {
        const CellField phi = init_signed_distance(HalfPlaneShape{cfg.water_depth}, g);
        const double res = eikonal_residual(phi, g, cfg.materials.n_cells + 2.0);
        std::ostringstream m;
        m << "initial |grad phi|-1 residual " << res;
        add("signed-distance-init", res < 0.05, m.str());
    }
    return out;
}

}  // namespace fdfsi
