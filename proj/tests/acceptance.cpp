// Acceptance checks, one per criterion. `acceptance N` runs criterion N and
// prints one PASS/FAIL line; without arguments all criteria run in order.

#include "hdgwave/dae/dense_dae.hpp"
#include "hdgwave/dae/integrators.hpp"
#include "hdgwave/dae/schemes.hpp"
#include "hdgwave/elastodyn/monitors.hpp"
#include "hdgwave/elastodyn/plate_case.hpp"
#include "hdgwave/harness/runner.hpp"
#include "hdgwave/krylov/bilu0.hpp"
#include "hdgwave/krylov/ras.hpp"
#include "hdgwave/maxwell/cavity_case.hpp"
#include "test_models.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace hdgwave;
using namespace hdgwave::harness;

namespace {

const std::string cases_dir = HDGWAVE_CASES;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

/// Collects individual checks of one criterion.
class Verdict {
public:
    void check(bool ok, const std::string& what)
    {
        fmt::print("  [{}] {}\n", ok ? "ok" : "FAIL", what);
        std::fflush(stdout);
        if (!ok)
            ++failures_;
    }
    void note(const std::string& what)
    {
        fmt::print("  {}\n", what);
        std::fflush(stdout);
    }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep = ',')
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!trim(item).empty())
            out.push_back(trim(item));
    return out;
}

double parse_number(const std::string& s)
{
    const auto slash = s.find('/');
    if (slash != std::string::npos)
        return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    return std::stod(s);
}

/// Entries of a `.check` file; keys outside `allowed` are rejected.
std::map<std::string, std::string> load_check(const std::string& file, const std::set<std::string>& allowed)
{
    std::map<std::string, std::string> out;
    for (const Entry& e : read_entries(read_text(cases_dir + "/" + file))) {
        if (e.key != "check.criterion" && !allowed.count(e.key))
            throw ConfigError(file + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
        out[e.key] = e.value;
    }
    for (const std::string& key : allowed)
        if (!out.count(key))
            throw ConfigError(file + ": missing key '" + key + "'");
    return out;
}

RunResult run_logged(const CaseFile& c)
{
    RunOptions opt;
    opt.log = [](const std::string& line) {
        if (line.rfind("event=level_end", 0) == 0)
            fmt::print("    {}\n", line);
        std::fflush(stdout);
    };
    fmt::print("    running {} ({})\n", c.name, to_string(c.physics));
    std::fflush(stdout);
    return run_case(c, opt);
}

double finest_order(const ConvergenceReport& r, const std::string& field)
{
    return r.order(field, r.rows.size() - 1).value_or(-1.0);
}

double max_orthogonality_loss(const ConvergenceReport& r)
{
    double loss = 0.0;
    for (const ReportRow& row : r.rows)
        loss = std::max(loss, row.stats.max_orthogonality_loss);
    return loss;
}

// criterion 1 --------------------------------------------------------------

double relative(const Vector& a, const Vector& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

/// condensed Newton correction against a dense solve of the stage Jacobian
std::pair<double, double> condensation_mismatch(HdgSystem& sys, const Vector& u, const Vector& v, double alpha)
{
    const double t = 0.25;
    Vector h, g, du, dv;
    sys.residual(alpha, Vector(), t, u, v, h, g);
    sys.correction(alpha, t, u, v, h, g, du, dv);
    Vector r(h.size() + g.size());
    r << h, g;
    const Vector x = -sys.dense_jacobian(alpha, t, u, v).partialPivLu().solve(r);
    return {relative(du, x.head(h.size())), relative(dv, x.tail(g.size()))};
}

TraceVariant parse_trace(const std::string& s)
{
    if (s == "hdg")
        return TraceVariant::hdg;
    if (s == "edg")
        return TraceVariant::edg;
    if (s == "iedg")
        return TraceVariant::iedg;
    throw ConfigError("unknown trace '" + s + "'");
}

void criterion1(Verdict& v)
{
    const auto chk = load_check("c1_condensation.check", {"check.physics", "check.traces", "discretization.degree",
                                                          "discretization.cells", "time.alpha"});
    const auto start = Clock::now();
    const int degree = std::stoi(chk.at("discretization.degree"));
    const auto cells = split_list(chk.at("discretization.cells"));
    const double alpha = std::stod(chk.at("time.alpha"));
    const std::array<int, 3> n{std::stoi(cells.at(0)), std::stoi(cells.at(1)), std::stoi(cells.at(2))};
    const std::array<double, 3> ext{1.0, 1.0, 0.5};
    const Mesh mesh = build_structured_box(ext, n, 1);
    unsigned seed = 1;
    for (const std::string& name : split_list(chk.at("check.physics"))) {
        const Physics p = parse_physics(name);
        std::vector<TraceVariant> traces;
        if (is_maxwell(p))
            traces = {TraceVariant::maxwell_tangential};
        else
            for (const std::string& t : split_list(chk.at("check.traces")))
                traces.push_back(parse_trace(t));
        for (TraceVariant trace : traces) {
            HdgOptions opt;
            opt.degree = degree;
            opt.variant = trace;
            opt.gmres.tolerance = 1e-14;
            opt.gmres.restart = 500;
            std::unique_ptr<PhysicsModel> model;
            const PlateCase plate{{1.5, 1.0, 1.0}, p == Physics::svk_elastodyn, 0.4, 0.5};
            if (p == Physics::linear_elastodyn)
                model = std::make_unique<LinearElastodynamics>(plate.material, Stabilization{}, plate.data());
            else if (p == Physics::svk_elastodyn)
                model = std::make_unique<SvkElastodynamics>(plate.material, Stabilization{}, plate.data());
            else
                model = std::make_unique<MaxwellModel>(EmMaterial{}, GlmParameters{}, CavityCase{}.data(),
                                                       p == Physics::maxwell_glm);
            HdgSystem sys(mesh, *model, opt);
            const Vector u = p == Physics::svk_elastodyn ? testing::random_elasto_state(sys, seed, 0.2)
                                                         : testing::random_vector(sys.local_size(), seed);
            const Vector tr = testing::random_vector(sys.trace_size(), seed + 1, 0.2);
            seed += 2;
            const auto [eu, ev] = condensation_mismatch(sys, u, tr, alpha);
            v.check(eu <= 1e-9 && ev <= 1e-9,
                    fmt::format("{} / {} trace ({} trace dofs): du rel {:.2e}, dv rel {:.2e} (<= 1e-9)", name,
                                trace == TraceVariant::maxwell_tangential ? "tangential"
                                : trace == TraceVariant::hdg              ? "hdg"
                                : trace == TraceVariant::edg              ? "edg"
                                                                          : "iedg",
                                sys.trace_size(), eu, ev));
        }
    }
    const double wall = seconds_since(start);
    v.check(wall < 10.0, fmt::format("runtime {:.2f} s (< 10 s)", wall));
}

// criterion 2 --------------------------------------------------------------

void criterion2(Verdict& v)
{
    const auto chk = load_check("c2_temporal_orders.check",
                                {"dae.lambda", "dae.initial", "time.schemes", "time.dt", "time.halvings", "time.final"});
    const auto start = Clock::now();
    const double lambda = std::stod(chk.at("dae.lambda")), u0 = std::stod(chk.at("dae.initial"));
    const double dt0 = parse_number(chk.at("time.dt")), final = parse_number(chk.at("time.final"));
    const int halvings = std::stoi(chk.at("time.halvings"));
    const std::map<std::string, double> expected = {{"bdf1", 1.0}, {"bdf2", 2.0}, {"bdf3", 3.0}, {"dirk33", 3.0}};
    for (const std::string& scheme : split_list(chk.at("time.schemes"))) {
        std::vector<double> err;
        for (int level = 0; level <= halvings; ++level) {
            const double dt = dt0 / (1 << level);
            DenseDae dae(
                Matrix::Identity(1, 1), 1, [&](const Vector& u, const Vector&, double) { return Vector(-lambda * u); },
                [](const Vector& u, const Vector& tr, double) { return Vector(tr - u); });
            TimeIntegrator ti(dae, TimeScheme::parse(scheme), dt);
            ti.initialize(0.0, Vector::Constant(1, u0), Vector::Constant(1, u0));
            const int steps = static_cast<int>(std::lround(final / dt));
            for (int n = 0; n < steps; ++n)
                ti.step();
            err.push_back(std::abs(ti.u()(0) - u0 * std::exp(lambda * final)));
        }
        const double p = expected.at(scheme);
        std::string orders;
        bool ok = true;
        for (int level = 1; level <= halvings; ++level) {
            const double q = std::log2(err[level - 1] / err[level]);
            orders += fmt::format(" {:.3f}", q);
            ok = ok && std::abs(q - p) <= 0.15;
        }
        v.check(ok, fmt::format("{}: observed orders{} (expected {} +- 0.15)", scheme, orders, p));
    }
    const double wall = seconds_since(start);
    v.check(wall < 5.0, fmt::format("runtime {:.2f} s (< 5 s)", wall));
}

// criteria 3 and 4 -------------------------------------------------------------

struct TableEntry {
    double v, f;
};

// rows h = 1/2, 1/3, 1/4, 1/6, 1/8; columns k = 1, 2, 3
const TableEntry linear_table[5][3] = {
    {{1.91e-2, 1.38e-1}, {1.74e-3, 1.46e-2}, {1.29e-4, 2.16e-3}},
    {{9.96e-3, 6.76e-2}, {4.60e-4, 4.40e-3}, {4.07e-5, 4.14e-4}},
    {{5.90e-3, 3.92e-2}, {1.91e-4, 1.56e-3}, {1.64e-5, 7.41e-5}},
    {{2.71e-3, 1.77e-2}, {6.19e-5, 2.26e-4}, {2.86e-6, 1.06e-5}},
    {{1.54e-3, 1.01e-2}, {2.60e-5, 9.30e-5}, {9.08e-7, 3.23e-6}},
};

const TableEntry svk_table[5][3] = {
    {{6.25e-3, 4.06e-2}, {2.37e-3, 1.14e-2}, {8.85e-4, 3.49e-3}},
    {{7.00e-3, 3.90e-2}, {8.47e-4, 4.31e-3}, {2.78e-4, 8.61e-4}},
    {{4.02e-3, 2.75e-2}, {4.06e-4, 1.99e-3}, {1.18e-4, 3.56e-4}},
    {{1.65e-3, 1.50e-2}, {1.47e-4, 7.26e-3}, {2.45e-5, 6.86e-5}},
    {{8.71e-4, 9.91e-3}, {6.26e-5, 3.41e-4}, {8.65e-6, 2.40e-5}},
};

int table_row(double h)
{
    const double hs[5] = {1.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 6, 1.0 / 8};
    for (int i = 0; i < 5; ++i)
        if (std::abs(h - hs[i]) < 1e-12)
            return i;
    return -1;
}

void criterion3(Verdict& v)
{
    for (int k = 1; k <= 3; ++k) {
        const CaseFile c = load_case(fmt::format("{}/c3_linear_plate_k{}.case", cases_dir, k));
        const auto start = Clock::now();
        const RunResult r = run_logged(c);
        const double ov = finest_order(r.report, "v_l2"), of = finest_order(r.report, "F_l2");
        v.check(ov >= k + 0.8, fmt::format("k={}: v e.o.c. {:.3f} on the finest pair (>= {})", k, ov, k + 0.8));
        v.check(of >= k + 0.8, fmt::format("k={}: F e.o.c. {:.3f} on the finest pair (>= {})", k, of, k + 0.8));
        double worst_v = 1.0, worst_f = 1.0;
        for (const ReportRow& row : r.report.rows) {
            const int i = table_row(row.h);
            if (i < 0)
                continue;
            auto worst = [](double a, double b) { return std::max(a, 1.0 / a) > std::max(b, 1.0 / b) ? a : b; };
            worst_v = worst(row.errors[0] / linear_table[i][k - 1].v, worst_v);
            worst_f = worst(row.errors[1] / linear_table[i][k - 1].f, worst_f);
        }
        v.check(std::max(worst_v, 1.0 / worst_v) <= 3.0 && std::max(worst_f, 1.0 / worst_f) <= 3.0,
                fmt::format("k={}: error / table ratio furthest from 1: v {:.3f}, F {:.3f} (within 3x)", k, worst_v,
                            worst_f));
        v.note(fmt::format("k={}: {:.1f} s", k, seconds_since(start)));
    }
}

void criterion4(Verdict& v)
{
    for (int k = 1; k <= 3; ++k) {
        const CaseFile c = load_case(fmt::format("{}/c4_svk_plate_k{}.case", cases_dir, k));
        const auto start = Clock::now();
        const RunResult r = run_logged(c);
        const double ov = finest_order(r.report, "v_l2"), of = finest_order(r.report, "F_l2");
        v.check(ov >= k + 0.8, fmt::format("k={}: v e.o.c. {:.3f} on the finest pair (>= {})", k, ov, k + 0.8));
        v.check(of >= k + 0.3, fmt::format("k={}: F e.o.c. {:.3f} on the finest pair (>= {})", k, of, k + 0.3));
        int newton = 0;
        for (const ReportRow& row : r.report.rows)
            newton = std::max(newton, row.stats.max_newton_iterations);
        v.check(newton <= 10 && c.stabilization.factor == 2.0,
                fmt::format("k={}: at most {} Newton iterations per stage with alpha = {} (<= 10)", k, newton,
                            c.stabilization.factor));
        for (const ReportRow& row : r.report.rows) {
            const int i = table_row(row.h);
            if (i >= 0)
                v.note(fmt::format("k={} h={:.4f}: v {:.3e} (table {:.2e}), F {:.3e} (table {:.2e})", k, row.h,
                                   row.errors[0], svk_table[i][k - 1].v, row.errors[1], svk_table[i][k - 1].f));
        }
        v.note(fmt::format("k={}: {:.1f} s", k, seconds_since(start)));
    }
}

// criterion 5 --------------------------------------------------------------

void criterion5(Verdict& v)
{
    for (int k = 1; k <= 3; ++k) {
        const CaseFile c = load_case(fmt::format("{}/c5_cavity_glm_k{}.case", cases_dir, k));
        const auto start = Clock::now();
        const RunResult r = run_logged(c);
        for (const char* field : {"e_l2", "h_l2", "phi_l2"}) {
            const double o = finest_order(r.report, field);
            v.check(o >= k + 0.8, fmt::format("k={}: {} e.o.c. {:.3f} on the finest pair (>= {})", k, field, o, k + 0.8));
        }
        for (const char* field : {"e_hcurl", "h_hcurl"}) {
            const double o = finest_order(r.report, field);
            v.check(o >= k - 0.2, fmt::format("k={}: {} e.o.c. {:.3f} on the finest pair (>= {})", k, field, o, k - 0.2));
        }
        v.note(fmt::format("k={}: {:.1f} s", k, seconds_since(start)));
    }
}

// criterion 6 --------------------------------------------------------------

void criterion6(Verdict& v)
{
    CaseFile glm = load_case(cases_dir + "/c6_divergence.case");
    CaseFile plain = glm;
    apply_override(glm, "case.physics=maxwell-glm");
    apply_override(plain, "case.physics=maxwell-uncorrected");
    const TimeSeries a = run_logged(glm).series.at(0).at(0);
    const TimeSeries b = run_logged(plain).series.at(0).at(0);
    v.check(a.name == "divergence" && a.times == b.times && a.times.back() >= 1.0 - 1e-12,
            fmt::format("{} matching divergence samples over [0, {}]", a.times.size(), a.times.back()));
    std::size_t below = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        below += a.values[i] <= b.values[i];
    const double fraction = static_cast<double>(below) / a.values.size();
    v.note(fmt::format("final divergence: corrected {:.3e}, uncorrected {:.3e}", a.values.back(), b.values.back()));
    v.check(fraction >= 0.95,
            fmt::format("corrected <= uncorrected at {}/{} samples ({:.1f}%, >= 95%)", below, a.values.size(),
                        100.0 * fraction));
}

// criterion 7 --------------------------------------------------------------

void check_energy(Verdict& v, CaseFile c, const std::string& physics)
{
    apply_override(c, "case.physics=" + physics);
    if (c.sample_every != 1)
        throw ConfigError(c.name + ": energy checks need every step sampled");
    const RunResult r = run_logged(c);
    for (std::size_t level = 0; level < r.series.size(); ++level)
        for (const TimeSeries& s : r.series[level]) {
            if (s.name != "energy")
                continue;
            double worst = -1.0;
            for (std::size_t i = 1; i < s.values.size(); ++i)
                worst = std::max(worst, (s.values[i] - s.values[i - 1]) / s.values[i - 1]);
            v.check(worst <= 1e-8 && s.values.back() > 0.0,
                    fmt::format("{}: {} steps, E from {:.6e} to {:.6e}, largest relative step change {:.3e} (<= 1e-8)",
                                physics, s.values.size() - 1, s.values.front(), s.values.back(), worst));
        }
}

void criterion7(Verdict& v)
{
    const CaseFile plate = load_case(cases_dir + "/c7_energy_plate.case");
    const CaseFile cavity = load_case(cases_dir + "/c7_energy_cavity.case");
    check_energy(v, plate, "linear-elastodyn");
    check_energy(v, plate, "svk-elastodyn");
    check_energy(v, cavity, "maxwell-glm");
    check_energy(v, cavity, "maxwell-uncorrected");
}

// criterion 8 --------------------------------------------------------------

krylov::BlockCsrMatrix block_tridiagonal(Index n, int bs, unsigned seed)
{
    std::vector<std::vector<Index>> adj(n);
    for (Index i = 0; i < n; ++i) {
        if (i > 0)
            adj[i].push_back(i - 1);
        if (i + 1 < n)
            adj[i].push_back(i + 1);
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    krylov::BlockCsrMatrix k = krylov::BlockCsrMatrix::from_adjacency(bs, adj);
    for (Index i = 0; i < n; ++i)
        for (Index p = k.row_ptr()[i]; p < k.row_ptr()[i + 1]; ++p) {
            auto b = k.block(p);
            for (int r = 0; r < bs; ++r)
                for (int c = 0; c < bs; ++c)
                    b(r, c) = u(rng);
            if (k.cols()[p] == i)
                b += 4.0 * bs * Matrix::Identity(bs, bs);
        }
    return k;
}

/// GMRES iterations of the first Newton correction of a DIRK stage on the plate
CorrectionReport plate_correction(const CaseFile& c, double h, const krylov::RasOptions& ras)
{
    HdgOptions opt = c.hdg_options();
    opt.ras = ras;
    const PlateCase pc{c.material, false, c.amplitude, c.thickness};
    const Mesh mesh = pc.mesh(h);
    const LinearElastodynamics model(c.material, c.stabilization, pc.data());
    HdgSystem sys(mesh, model, opt);
    const Vector u = project_elasto_state(
        sys, [&](const Point& x) { return pc.gradient(x, 0.0); }, [&](const Point& x) { return pc.velocity(x, 0.0); });
    const Vector tr = Vector::Zero(sys.trace_size());
    const double alpha = 1.0 / (dirk33_gamma() * c.dt);
    Vector res, g, du, dv;
    sys.residual(alpha, Vector(), c.dt, u, tr, res, g);
    return sys.correction(alpha, c.dt, u, tr, res, g, du, dv);
}

void criterion8(Verdict& v)
{
    const auto chk = load_check("c8_solver.check", {"check.case", "check.refinement", "check.subdomains",
                                                    "check.orthogonality", "bilu.blocks", "bilu.block_size"});
    double loss = 0.0;
    for (const std::string& file : split_list(chk.at("check.orthogonality"))) {
        const RunResult r = run_logged(load_case(cases_dir + "/" + file));
        const double l = max_orthogonality_loss(r.report);
        v.note(fmt::format("{}: max |V'V - I| = {:.3e}", file, l));
        loss = std::max(loss, l);
    }

    const CaseFile c = load_case(cases_dir + "/" + chk.at("check.case"));
    const double h = parse_number(chk.at("check.refinement"));
    const int parts = std::stoi(chk.at("check.subdomains"));

    krylov::RasOptions exact;
    exact.subdomains = 1;
    exact.overlap = 0;
    exact.solver = krylov::SubdomainSolver::exact_lu;
    const CorrectionReport one = plate_correction(c, h, exact);
    loss = std::max(loss, one.orthogonality_loss);
    v.check(one.gmres_converged && one.gmres_iterations == 1,
            fmt::format("plate k={} h={:.4f}: N=1 exact-LU RAS converges in {} GMRES iteration(s) (== 1)", c.degree, h,
                        one.gmres_iterations));

    int iters[2] = {0, 0};
    for (int delta = 0; delta <= 1; ++delta) {
        krylov::RasOptions ras = c.ras;
        ras.subdomains = parts;
        ras.overlap = delta;
        const CorrectionReport r = plate_correction(c, h, ras);
        loss = std::max(loss, r.orthogonality_loss);
        iters[delta] = r.gmres_converged ? r.gmres_iterations : -1;
    }
    v.check(iters[0] > 0 && iters[1] > 0 && iters[1] <= iters[0],
            fmt::format("plate k={} h={:.4f}, N={}: GMRES iterations delta=1 {} <= delta=0 {}", c.degree, h, parts,
                        iters[1], iters[0]));

    const krylov::BlockCsrMatrix k =
        block_tridiagonal(std::stoi(chk.at("bilu.blocks")), std::stoi(chk.at("bilu.block_size")), 8);
    double worst = 0.0;
    for (bool mdf : {false, true}) {
        std::vector<Index> order(k.block_rows());
        std::iota(order.begin(), order.end(), 0);
        if (mdf)
            order = krylov::mdf_order(k);
        const krylov::Bilu0 f(k, order);
        const Matrix kp = k.extract(order).to_dense();
        worst = std::max(worst, (f.product_dense() - kp).norm() / kp.norm());
    }
    krylov::RasOptions ras;
    ras.subdomains = 1;
    ras.overlap = 0;
    const krylov::RasPreconditioner p(k, ras);
    const Vector b = Vector::LinSpaced(k.size(), -1.0, 1.0);
    const krylov::GmresResult g = krylov::gmres(k, b, &p, krylov::GmresOptions{});
    loss = std::max(loss, g.orthogonality_loss);
    v.check(worst < 1e-14 && g.iterations == 1,
            fmt::format("block-tridiagonal BILU(0): |LU - K| / |K| = {:.2e}, preconditioned GMRES iterations {}", worst,
                        g.iterations));
    v.check(loss < 1e-10, fmt::format("ICGS orthogonality loss over all runs {:.3e} (< 1e-10)", loss));
}

// criterion 9 --------------------------------------------------------------

/// true if some trace node location lies on two or more interior faces, i.e.
/// the interior-continuous trace merges DOFs that the discontinuous one keeps
bool interior_faces_share_nodes(const Mesh& mesh, int k)
{
    const GeometricMap map(mesh);
    const ElementBasis basis(3, k);
    std::map<std::array<long long, 3>, int> seen;
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        if (mesh.face(f).is_boundary())
            continue;
        const FaceSide& s = mesh.face(f).left;
        for (int j = 0; j < basis.num_face_nodes(); ++j) {
            const Point x = map.point(s.element, basis.nodes()[basis.face_volume_nodes(s.local_face)[j]]);
            const std::array<long long, 3> key{std::llround(x[0] * 1e9), std::llround(x[1] * 1e9),
                                               std::llround(x[2] * 1e9)};
            if (++seen[key] > 1)
                return true;
        }
    }
    return false;
}

void criterion9(Verdict& v)
{
    const auto chk = load_check("c9_trace_taxonomy.check", {"check.degrees", "check.components", "check.meshes"});
    const int comps = std::stoi(chk.at("check.components"));
    for (const std::string& degree : split_list(chk.at("check.degrees"))) {
        const int k = std::stoi(degree);
        for (const std::string& spec : split_list(chk.at("check.meshes"))) {
            const auto n = split_list(spec, 'x');
            const std::array<int, 3> cells{std::stoi(n.at(0)), std::stoi(n.at(1)), std::stoi(n.at(2))};
            const std::array<double, 3> ext{1.0, 1.0, 1.0};
            const Mesh mesh = build_structured_box(ext, cells, 1);
            const Index hdg = TraceSpace(mesh, k, comps, TraceVariant::hdg).num_dofs();
            const Index iedg = TraceSpace(mesh, k, comps, TraceVariant::iedg).num_dofs();
            const Index edg = TraceSpace(mesh, k, comps, TraceVariant::edg).num_dofs();
            const bool degenerate = !interior_faces_share_nodes(mesh, k);
            const bool ok = hdg >= iedg && iedg > edg && (hdg == iedg) == degenerate;
            v.check(ok, fmt::format("k={} mesh {}: HDG {} {} IEDG {} > EDG {}{}", k, spec, hdg, hdg == iedg ? "==" : ">",
                                    iedg, edg, degenerate ? " (no node shared by two interior faces)" : ""));
        }
    }
}

const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
    {"static condensation matches the monolithic solve", criterion1},
    {"temporal orders of BDF1, BDF2 and DIRK(3,3)", criterion2},
    {"linear elastodynamics convergence on the plate", criterion3},
    {"SVK elastodynamics convergence on the plate", criterion4},
    {"GLM-Maxwell convergence in the cavity", criterion5},
    {"divergence correction", criterion6},
    {"energy decay with homogeneous data", criterion7},
    {"Krylov and Schwarz solver properties", criterion8},
    {"trace-space taxonomy", criterion9},
};

bool run(int n)
{
    const auto& [title, fn] = criteria.at(n - 1);
    fmt::print("criterion {}: {}\n", n, title);
    std::fflush(stdout);
    Verdict v;
    const auto start = Clock::now();
    try {
        fn(v);
    } catch (const std::exception& e) {
        v.check(false, std::string("aborted: ") + e.what());
    }
    const bool ok = v.failures() == 0;
    fmt::print("criterion {}: {} ({} failed checks, {:.1f} s)\n", n, ok ? "PASS" : "FAIL", v.failures(),
               seconds_since(start));
    std::fflush(stdout);
    return ok;
}

}

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            fmt::print(stderr, "usage: acceptance [criterion 1-{}]...\n", criteria.size());
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty())
        for (int n = 1; n <= static_cast<int>(criteria.size()); ++n)
            selected.push_back(n);
    int failed = 0;
    for (int n : selected)
        failed += !run(n);
    return failed == 0 ? 0 : 1;
}
