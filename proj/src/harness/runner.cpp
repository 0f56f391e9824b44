#include "hdgwave/harness/runner.hpp"

#include "hdgwave/dae/integrators.hpp"
#include "hdgwave/elastodyn/monitors.hpp"
#include "hdgwave/elastodyn/plate_case.hpp"
#include "hdgwave/maxwell/cavity_case.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <sstream>

namespace hdgwave::harness {

namespace {

using Sampler = std::function<double(const Vector& u)>;

struct Integration {
    Vector u;
    IterationStats stats;
    std::vector<TimeSeries> series;
};

std::string describe(double h, std::size_t level)
{
    std::ostringstream s;
    s << "refinement h=" << format_number(h) << " (level " << level << ")";
    return s.str();
}

std::string describe_failure(const StepFailure& f)
{
    const NewtonReport& r = f.report();
    std::ostringstream s;
    s << "stage " << f.stage() << " at t=" << format_number(f.time()) << ": Newton stopped after " << r.iterations
      << " iterations with residual "
      << (r.residuals.empty() ? std::string("n/a") : format_number(r.residuals.back()));
    return s.str();
}

Integration integrate(const CaseFile& c, HdgSystem& sys, const Vector& u0, std::size_t level, double h,
                      const std::map<SeriesKind, Sampler>& samplers, const RunOptions& opt)
{
    Integration out;
    for (SeriesKind kind : c.series)
        out.series.push_back({to_string(kind), {}, {}});
    auto sample = [&](double t, const Vector& u) {
        for (std::size_t i = 0; i < c.series.size(); ++i) {
            out.series[i].times.push_back(t);
            out.series[i].values.push_back(samplers.at(c.series[i])(u));
        }
    };

    Vector v0 = Vector::Zero(sys.trace_size());
    try {
        const NewtonReport r = sys.solve_constraint(u0, 0.0, v0);
        if (!r.converged)
            throw CaseFailure(describe(h, level) + ", initial trace: Newton did not converge", level, 0);
    } catch (const CaseFailure&) {
        throw;
    } catch (const SolverError& e) {
        throw CaseFailure(describe(h, level) + ", initial trace: " + e.what(), level, 0);
    }

    Predictor predictor(c.predictor);
    TimeIntegrator integ(sys, TimeScheme::parse(c.scheme), c.dt, {&predictor, false});
    integ.initialize(0.0, u0, v0);
    sample(0.0, u0);
    const int steps = c.num_steps();
    for (int n = 1; n <= steps; ++n) {
        const long g0 = sys.statistics().gmres_iterations;
        try {
            const StepResult& r = integ.step();
            if (opt.log && opt.step_log) {
                int newton = 0;
                double residual = 0.0;
                for (const NewtonReport& s : r.solves) {
                    newton += s.iterations;
                    if (!s.residuals.empty())
                        residual = std::max(residual, s.residuals.back());
                }
                std::ostringstream s;
                s << "event=step level=" << level << " step=" << n << " t=" << format_number(integ.time())
                  << " newton=" << newton << " gmres=" << sys.statistics().gmres_iterations - g0
                  << " residual=" << format_number(residual);
                opt.log(s.str());
            }
        } catch (const StepFailure& f) {
            throw CaseFailure(describe(h, level) + ", step " + std::to_string(n) + ", " + describe_failure(f), level,
                              n);
        } catch (const SolverError& e) {
            throw CaseFailure(describe(h, level) + ", step " + std::to_string(n) + ": " + e.what(), level, n);
        }
        if (n % c.sample_every == 0 || n == steps)
            sample(integ.time(), integ.u());
    }
    out.u = integ.u();
    const SolveStatistics& st = sys.statistics();
    out.stats = {steps,
                 st.newton_iterations,
                 st.max_newton_iterations,
                 st.gmres_iterations,
                 st.max_gmres_iterations,
                 st.max_orthogonality_loss};
    return out;
}

ReportRow run_plate(const CaseFile& c, double h, std::size_t level, const RunOptions& opt,
                    std::vector<TimeSeries>& series)
{
    const bool nonlinear = c.physics == Physics::svk_elastodyn;
    const PlateCase pc{c.material, nonlinear, c.amplitude, c.thickness};
    const Mesh mesh = pc.mesh(h);
    ElastoData data = pc.data();
    if (c.homogeneous)
        data = ElastoData{data.boundary, {}, {}, {}};
    std::unique_ptr<ElastodynamicsModel> model;
    if (nonlinear)
        model = std::make_unique<SvkElastodynamics>(c.material, c.stabilization, data);
    else
        model = std::make_unique<LinearElastodynamics>(c.material, c.stabilization, data);
    HdgSystem sys(mesh, *model, c.hdg_options());
    const Vector u0 = project_elasto_state(
        sys, [&](const Point& x) { return pc.gradient(x, 0.0); }, [&](const Point& x) { return pc.velocity(x, 0.0); });
    std::map<SeriesKind, Sampler> samplers = {
        {SeriesKind::energy, [&](const Vector& u) { return elasto_energy(sys, *model, u).total(); }}};
    Integration run = integrate(c, sys, u0, level, h, samplers, opt);
    series = std::move(run.series);
    ReportRow row;
    row.h = h;
    row.stats = run.stats;
    if (c.homogeneous)
        return row;
    const double t = c.num_steps() * c.dt;
    const ElastoErrors err = elasto_errors(
        sys, run.u, [&](const Point& x) { return pc.gradient(x, t); }, [&](const Point& x) { return pc.velocity(x, t); });
    row.errors = {err.velocity, err.gradient};
    return row;
}

ReportRow run_cavity(const CaseFile& c, double h, std::size_t level, const RunOptions& opt,
                     std::vector<TimeSeries>& series)
{
    const bool corrected = c.physics == Physics::maxwell_glm;
    const CavityCase cc{c.em, c.glm, c.omega, c.distortion};
    const Mesh mesh = cc.mesh(h);
    const MaxwellModel model(c.em, c.glm, c.homogeneous ? MaxwellData{} : cc.data(), corrected);
    HdgSystem sys(mesh, model, c.hdg_options());
    Vector u0 = Vector::Zero(sys.local_size());
    interpolate(sys.map(), sys.basis(), sys.layout(0), [&](const Point& x) { return Vector(cc.magnetic(x, 0.0)); },
                u0, Projection::l2);
    interpolate(sys.map(), sys.basis(), sys.layout(1), [&](const Point& x) { return Vector(cc.electric(x, 0.0)); },
                u0, Projection::l2);
    std::map<SeriesKind, Sampler> samplers = {
        {SeriesKind::energy, [&](const Vector& u) { return em_energy(sys, model, u); }},
        {SeriesKind::divergence, [&](const Vector& u) { return divergence_norm(sys, u); }}};
    Integration run = integrate(c, sys, u0, level, h, samplers, opt);
    series = std::move(run.series);
    ReportRow row;
    row.h = h;
    row.stats = run.stats;
    if (c.homogeneous)
        return row;
    const double t = c.num_steps() * c.dt;
    row.errors.push_back(l2_error(sys.map(), sys.basis(), sys.layout(0), run.u,
                                  [&](const Point& x) { return Vector(cc.magnetic(x, t)); }));
    row.errors.push_back(l2_error(sys.map(), sys.basis(), sys.layout(1), run.u,
                                  [&](const Point& x) { return Vector(cc.electric(x, t)); }));
    if (corrected)
        row.errors.push_back(l2_error(sys.map(), sys.basis(), sys.layout(2), run.u,
                                      [](const Point&) { return Vector(Vector::Zero(1)); }));
    row.errors.push_back(hcurl_error(
        sys, run.u, 0, [&](const Point& x) { return cc.magnetic(x, t); },
        [&](const Point& x) { return cc.magnetic_curl(x, t); }));
    row.errors.push_back(hcurl_error(
        sys, run.u, 1, [&](const Point& x) { return cc.electric(x, t); },
        [&](const Point& x) { return cc.electric_curl(x, t); }));
    return row;
}

}

std::vector<std::string> error_fields(Physics p)
{
    switch (p) {
    case Physics::linear_elastodyn:
    case Physics::svk_elastodyn:
        return {"v_l2", "F_l2"};
    case Physics::maxwell_glm:
        return {"h_l2", "e_l2", "phi_l2", "h_hcurl", "e_hcurl"};
    case Physics::maxwell_uncorrected:
        return {"h_l2", "e_l2", "h_hcurl", "e_hcurl"};
    }
    return {};
}

RunResult run_case(const CaseFile& c, const RunOptions& opt)
{
    c.validate();
    RunResult result;
    result.report.physics = to_string(c.physics);
    result.report.degree = c.degree;
    if (!c.homogeneous)
        result.report.fields = error_fields(c.physics);
    for (std::size_t level = 0; level < c.refinements.size(); ++level) {
        const double h = c.refinements[level];
        if (opt.log) {
            std::ostringstream s;
            s << "event=level_start case=" << c.name << " physics=" << result.report.physics << " k=" << c.degree
              << " level=" << level << " h=" << format_number(h) << " dt=" << format_number(c.dt)
              << " steps=" << c.num_steps();
            opt.log(s.str());
        }
        const auto start = std::chrono::steady_clock::now();
        std::vector<TimeSeries> series;
        ReportRow row = is_maxwell(c.physics) ? run_cavity(c, h, level, opt, series) : run_plate(c, h, level, opt, series);
        row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.report.add_row(std::move(row));
        result.series.push_back(std::move(series));
        if (opt.log) {
            const ReportRow& r = result.report.rows.back();
            std::ostringstream s;
            s << "event=level_end level=" << level << " h=" << format_number(h);
            for (std::size_t f = 0; f < r.errors.size(); ++f) {
                s << " " << result.report.fields[f] << "=" << format_number(r.errors[f]);
                if (!r.orders.empty() && r.orders[f])
                    s << " " << result.report.fields[f] << "_eoc=" << format_number(*r.orders[f]);
            }
            s << " newton=" << r.stats.newton_iterations << " max_newton=" << r.stats.max_newton_iterations
              << " gmres=" << r.stats.gmres_iterations << " max_gmres=" << r.stats.max_gmres_iterations
              << " wall=" << format_number(r.wall_time);
            opt.log(s.str());
        }
    }
    return result;
}

std::vector<std::string> write_outputs(const CaseFile& c, const RunResult& result, const std::string& directory)
{
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + directory + "': " + ec.message());
    std::vector<std::string> written;
    const std::filesystem::path dir(directory);
    const std::string report = (dir / (c.name + ".csv")).string();
    write_file(report, report_csv(result.report));
    written.push_back(report);
    for (std::size_t level = 0; level < result.series.size(); ++level)
        for (const TimeSeries& s : result.series[level]) {
            const std::string path = (dir / (c.name + "_" + s.name + "_" + std::to_string(level) + ".csv")).string();
            write_file(path, series_csv(s));
            written.push_back(path);
        }
    return written;
}

}
