#include "hdgwave/harness/case_file.hpp"
#include "hdgwave/dae/integrators.hpp"
#include "hdgwave/maxwell/cavity_case.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hdgwave::harness {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& v)
{
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x))
        throw ConfigError("expected a number, got '" + v + "'");
    return x;
}

int to_int(const std::string& v)
{
    std::size_t used = 0;
    long x = 0;
    try {
        x = std::stol(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'");
    }
    if (used != v.size() || x < -1000000000L || x > 1000000000L)
        throw ConfigError("expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool to_bool(const std::string& v)
{
    if (v == "true" || v == "yes" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "off" || v == "0")
        return false;
    throw ConfigError("expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (const std::string t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

double to_length(const std::string& v)
{
    // accepts "0.25" and "1/4"
    if (const auto slash = v.find('/'); slash != std::string::npos) {
        const double den = to_double(trim(v.substr(slash + 1)));
        if (den == 0.0)
            throw ConfigError("zero denominator in '" + v + "'");
        return to_double(trim(v.substr(0, slash))) / den;
    }
    return to_double(v);
}

TraceVariant parse_trace(const std::string& v)
{
    if (v == "hdg")
        return TraceVariant::hdg;
    if (v == "edg")
        return TraceVariant::edg;
    if (v == "iedg")
        return TraceVariant::iedg;
    if (v == "tangential")
        return TraceVariant::maxwell_tangential;
    throw ConfigError("unknown trace variant '" + v + "' (hdg, edg, iedg, tangential)");
}

SeriesKind parse_series(const std::string& v)
{
    if (v == "energy")
        return SeriesKind::energy;
    if (v == "divergence")
        return SeriesKind::divergence;
    throw ConfigError("unknown series '" + v + "' (energy, divergence)");
}

using Setter = std::function<void(CaseFile&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"case.name", [](CaseFile& c, const std::string& v) { c.name = v; }},
        {"case.physics", [](CaseFile& c, const std::string& v) { c.physics = parse_physics(v); }},
        {"case.data",
         [](CaseFile& c, const std::string& v) {
             if (v == "exact")
                 c.homogeneous = false;
             else if (v == "homogeneous")
                 c.homogeneous = true;
             else
                 throw ConfigError("unknown data mode '" + v + "' (exact, homogeneous)");
         }},
        {"discretization.degree", [](CaseFile& c, const std::string& v) { c.degree = to_int(v); }},
        {"discretization.trace", [](CaseFile& c, const std::string& v) { c.trace = parse_trace(v); }},
        {"discretization.refinements",
         [](CaseFile& c, const std::string& v) {
             c.refinements.clear();
             for (const std::string& item : split_list(v))
                 c.refinements.push_back(to_length(item));
         }},
        {"discretization.quadrature", [](CaseFile& c, const std::string& v) { c.quadrature = to_int(v); }},
        {"time.scheme", [](CaseFile& c, const std::string& v) { c.scheme = v; }},
        {"time.dt", [](CaseFile& c, const std::string& v) { c.dt = to_length(v); }},
        {"time.final", [](CaseFile& c, const std::string& v) { c.final_time = to_double(v); }},
        {"time.predictor", [](CaseFile& c, const std::string& v) { c.predictor = to_int(v); }},
        {"material.lambda", [](CaseFile& c, const std::string& v) { c.material.lambda = to_double(v); }},
        {"material.mu", [](CaseFile& c, const std::string& v) { c.material.mu = to_double(v); }},
        {"material.rho", [](CaseFile& c, const std::string& v) { c.material.rho = to_double(v); }},
        {"stabilization.speed",
         [](CaseFile& c, const std::string& v) {
             if (v == "shear")
                 c.stabilization.mode = ImpedanceMode::shear;
             else if (v == "compressional")
                 c.stabilization.mode = ImpedanceMode::compressional;
             else
                 throw ConfigError("unknown wave speed '" + v + "' (shear, compressional)");
         }},
        {"stabilization.factor", [](CaseFile& c, const std::string& v) { c.stabilization.factor = to_double(v); }},
        {"plate.amplitude", [](CaseFile& c, const std::string& v) { c.amplitude = to_double(v); }},
        {"plate.thickness", [](CaseFile& c, const std::string& v) { c.thickness = to_double(v); }},
        {"maxwell.epsilon", [](CaseFile& c, const std::string& v) { c.em.epsilon = to_double(v); }},
        {"maxwell.mu", [](CaseFile& c, const std::string& v) { c.em.mu = to_double(v); }},
        {"maxwell.epsilon0", [](CaseFile& c, const std::string& v) { c.em.epsilon0 = to_double(v); }},
        {"maxwell.omega", [](CaseFile& c, const std::string& v) { c.omega = to_double(v); }},
        {"maxwell.alpha1", [](CaseFile& c, const std::string& v) { c.glm.alpha1 = to_double(v); }},
        {"maxwell.alpha2", [](CaseFile& c, const std::string& v) { c.glm.alpha2 = to_double(v); }},
        {"maxwell.alpha3", [](CaseFile& c, const std::string& v) { c.glm.alpha3 = to_double(v); }},
        {"maxwell.tau", [](CaseFile& c, const std::string& v) { c.glm.tau = to_double(v); }},
        {"maxwell.distortion", [](CaseFile& c, const std::string& v) { c.distortion = to_double(v); }},
        {"solver.newton_abs_tol", [](CaseFile& c, const std::string& v) { c.newton.abs_tol = to_double(v); }},
        {"solver.newton_rel_tol", [](CaseFile& c, const std::string& v) { c.newton.rel_tol = to_double(v); }},
        {"solver.newton_max_iterations",
         [](CaseFile& c, const std::string& v) { c.newton.max_iterations = to_int(v); }},
        {"solver.gmres_tol", [](CaseFile& c, const std::string& v) { c.gmres_tolerance = to_double(v); }},
        {"solver.gmres_restart", [](CaseFile& c, const std::string& v) { c.gmres_restart = to_int(v); }},
        {"solver.gmres_max_iterations",
         [](CaseFile& c, const std::string& v) { c.gmres_max_iterations = to_int(v); }},
        {"solver.subdomains", [](CaseFile& c, const std::string& v) { c.ras.subdomains = to_int(v); }},
        {"solver.overlap", [](CaseFile& c, const std::string& v) { c.ras.overlap = to_int(v); }},
        {"solver.subdomain_solver",
         [](CaseFile& c, const std::string& v) {
             if (v == "bilu0")
                 c.ras.solver = krylov::SubdomainSolver::bilu0;
             else if (v == "lu")
                 c.ras.solver = krylov::SubdomainSolver::exact_lu;
             else
                 throw ConfigError("unknown subdomain solver '" + v + "' (bilu0, lu)");
         }},
        {"solver.mdf", [](CaseFile& c, const std::string& v) { c.ras.mdf = to_bool(v); }},
        {"solver.share_operators", [](CaseFile& c, const std::string& v) { c.share_operators = to_bool(v); }},
        {"solver.threads", [](CaseFile& c, const std::string& v) { c.threads = to_int(v); }},
        {"output.directory", [](CaseFile& c, const std::string& v) { c.output_directory = v; }},
        {"output.series",
         [](CaseFile& c, const std::string& v) {
             c.series.clear();
             for (const std::string& item : split_list(v))
                 if (item != "none")
                     c.series.push_back(parse_series(item));
         }},
        {"output.sample_every", [](CaseFile& c, const std::string& v) { c.sample_every = to_int(v); }},
    };
    return table;
}

void assign(CaseFile& c, const std::string& key, const std::string& value)
{
    const auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("unknown key '" + key + "'");
    if (value.empty())
        throw ConfigError("empty value for '" + key + "'");
    try {
        it->second(c, value);
    } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

}

std::string to_string(Physics p)
{
    switch (p) {
    case Physics::linear_elastodyn:
        return "linear-elastodyn";
    case Physics::svk_elastodyn:
        return "svk-elastodyn";
    case Physics::maxwell_glm:
        return "maxwell-glm";
    case Physics::maxwell_uncorrected:
        return "maxwell-uncorrected";
    }
    return "?";
}

Physics parse_physics(const std::string& name)
{
    for (Physics p : {Physics::linear_elastodyn, Physics::svk_elastodyn, Physics::maxwell_glm,
                      Physics::maxwell_uncorrected})
        if (to_string(p) == name)
            return p;
    throw ConfigError("unknown physics '" + name +
                      "' (linear-elastodyn, svk-elastodyn, maxwell-glm, maxwell-uncorrected)");
}

bool is_maxwell(Physics p) { return p == Physics::maxwell_glm || p == Physics::maxwell_uncorrected; }

std::string to_string(SeriesKind s) { return s == SeriesKind::energy ? "energy" : "divergence"; }

void CaseFile::validate() const
{
    if (refinements.empty())
        throw ConfigError("discretization.refinements must list at least one mesh size");
    for (double h : refinements)
        if (!(h > 0.0) || h > 1.0)
            throw ConfigError("mesh sizes must lie in (0, 1]");
    for (std::size_t i = 1; i < refinements.size(); ++i)
        if (!(refinements[i] < refinements[i - 1]))
            throw ConfigError("mesh sizes must decrease strictly");
    for (double h : refinements) {
        const double n = 1.0 / h;
        if (std::abs(n - std::round(n)) > 1e-2)
            throw ConfigError("mesh sizes must be reciprocals of integers");
    }
    if (degree < 1 || degree > 8)
        throw ConfigError("discretization.degree must lie in [1, 8]");
    if (quadrature != -1 && quadrature < degree + 1)
        throw ConfigError("discretization.quadrature must be -1 (default) or at least degree + 1");
    if (is_maxwell(physics) && trace != TraceVariant::maxwell_tangential)
        throw ConfigError("Maxwell cases need discretization.trace = tangential");
    if (!is_maxwell(physics) && trace == TraceVariant::maxwell_tangential)
        throw ConfigError("the tangential trace is only available for Maxwell cases");
    TimeScheme::parse(scheme);
    if (!(dt > 0.0))
        throw ConfigError("time.dt must be positive");
    if (!(final_time > 0.0))
        throw ConfigError("time.final must be positive");
    const double steps = final_time / dt;
    if (std::abs(steps - std::round(steps)) > 1e-8 * std::max(1.0, steps))
        throw ConfigError("time.final must be a whole number of time steps");
    if (predictor < 0 || predictor > 3)
        throw ConfigError("time.predictor must lie in [0, 3]");
    if (is_maxwell(physics)) {
        CavityCase{em, glm, omega, distortion}.validate();
    } else {
        material.validate();
        if (!(stabilization.factor > 0.0))
            throw ConfigError("stabilization.factor must be positive");
        if (!(thickness > 0.0) || thickness > 1.0)
            throw ConfigError("plate.thickness must lie in (0, 1]");
        if (!std::isfinite(amplitude))
            throw ConfigError("plate.amplitude must be finite");
        if (distortion != 0.0)
            throw ConfigError("maxwell.distortion applies to Maxwell cases only");
    }
    if (!(newton.abs_tol > 0.0) || !(newton.rel_tol > 0.0) || newton.max_iterations < 1)
        throw ConfigError("Newton tolerances and iteration limit must be positive");
    if (!(gmres_tolerance > 0.0) || gmres_restart < 1 || gmres_max_iterations < 1)
        throw ConfigError("GMRES tolerance, restart and iteration limit must be positive");
    if (ras.subdomains < 1 || ras.overlap < 0)
        throw ConfigError("solver.subdomains must be >= 1 and solver.overlap >= 0");
    if (threads < 1)
        throw ConfigError("solver.threads must be >= 1");
    if (sample_every < 1)
        throw ConfigError("output.sample_every must be >= 1");
    if (output_directory.empty())
        throw ConfigError("output.directory must not be empty");
    if (name.empty() || name.find_first_of("/\\") != std::string::npos)
        throw ConfigError("case.name must be a plain file stem");
    std::set<SeriesKind> seen;
    for (SeriesKind s : series) {
        if (!seen.insert(s).second)
            throw ConfigError("output.series lists '" + to_string(s) + "' twice");
        if (s == SeriesKind::divergence && !is_maxwell(physics))
            throw ConfigError("the divergence series is only available for Maxwell cases");
    }
}

HdgOptions CaseFile::hdg_options() const
{
    HdgOptions opt;
    opt.degree = degree;
    opt.variant = trace;
    opt.quad_points = quadrature;
    opt.newton = newton;
    opt.gmres.tolerance = gmres_tolerance;
    opt.gmres.restart = gmres_restart;
    opt.gmres.max_iterations = gmres_max_iterations;
    opt.ras = ras;
    opt.share_operators = share_operators;
    opt.threads = threads;
    return opt;
}

int CaseFile::num_steps() const { return static_cast<int>(std::lround(final_time / dt)); }

std::vector<Entry> read_entries(const std::string& text)
{
    std::vector<Entry> out;
    std::set<std::string> seen;
    std::stringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(where + "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + "expected key = value");
        if (section.empty())
            throw ConfigError(where + "key outside of a section");
        const std::string key = section + "." + trim(line.substr(0, eq));
        if (!seen.insert(key).second)
            throw ConfigError(where + "duplicate key '" + key + "'");
        out.push_back({key, trim(line.substr(eq + 1)), lineno});
    }
    return out;
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CaseFile parse_case(const std::string& text)
{
    CaseFile c;
    std::set<std::string> sections;
    for (const auto& [key, setter] : setters())
        sections.insert(key.substr(0, key.find('.')));
    bool physics = false, dt = false, trace = false;
    for (const Entry& e : read_entries(text)) {
        const std::string where = "line " + std::to_string(e.line) + ": ";
        if (!sections.count(e.key.substr(0, e.key.find('.'))))
            throw ConfigError(where + "unknown section [" + e.key.substr(0, e.key.find('.')) + "]");
        try {
            assign(c, e.key, e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(where + err.what());
        }
        physics = physics || e.key == "case.physics";
        dt = dt || e.key == "time.dt";
        trace = trace || e.key == "discretization.trace";
    }
    if (!physics)
        throw ConfigError("missing case.physics");
    if (!dt)
        throw ConfigError("missing time.dt");
    if (!trace && is_maxwell(c.physics))
        c.trace = TraceVariant::maxwell_tangential;
    c.validate();
    return c;
}

CaseFile load_case(const std::string& path)
{
    const std::string text = read_text(path);
    try {
        return parse_case(text);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}
void apply_override(CaseFile& c, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
    assign(c, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    c.validate();
}

std::vector<std::string> case_keys()
{
    std::vector<std::string> keys;
    for (const auto& [key, setter] : setters())
        keys.push_back(key);
    return keys;
}

}
