#include "hdgwave/hdg/hdg_system.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace hdgwave {

namespace {

TraceSpace make_trace(const Mesh& mesh, const PhysicsModel& model, const HdgOptions& opt)
{
    const bool tangential = opt.variant == TraceVariant::maxwell_tangential;
    if (tangential != model.tangential_trace())
        throw ConfigError(model.name() + (tangential ? " does not use a tangential trace space"
                                                     : " requires the tangential trace space"));
    return TraceSpace(mesh, opt.degree, model.trace_components(), opt.variant);
}

class StageProblem : public NewtonProblem {
public:
    StageProblem(HdgSystem& sys, double alpha, const Vector& rhs, double t)
        : sys_(sys), alpha_(alpha), rhs_(rhs), t_(t)
    {
    }

    double residual(const Vector& u, const Vector& v) override
    {
        sys_.residual(alpha_, rhs_, t_, u, v, h_, g_);
        return std::sqrt(h_.squaredNorm() + g_.squaredNorm());
    }

    int correction(const Vector& u, const Vector& v, Vector& du, Vector& dv) override
    {
        return sys_.correction(alpha_, t_, u, v, h_, g_, du, dv).gmres_iterations;
    }

private:
    HdgSystem& sys_;
    double alpha_;
    const Vector& rhs_;
    double t_;
    Vector h_, g_;
};

class ConstraintProblem : public NewtonProblem {
public:
    ConstraintProblem(HdgSystem& sys, double t) : sys_(sys), t_(t) {}

    double residual(const Vector& u, const Vector& v) override
    {
        sys_.residual(0.0, Vector(), t_, u, v, h_, g_);
        return g_.norm();
    }

    int correction(const Vector& u, const Vector& v, Vector& du, Vector& dv) override
    {
        du = Vector::Zero(u.size());
        return sys_.trace_correction(t_, u, v, g_, dv).gmres_iterations;
    }

private:
    HdgSystem& sys_;
    double t_;
    Vector h_, g_;
};

}

HdgSystem::HdgSystem(const Mesh& mesh, const PhysicsModel& model, HdgOptions options)
    : mesh_(&mesh), model_(&model), options_(options), map_(mesh),
      basis_(mesh.dim(), options.degree, options.quad_points), trace_(make_trace(mesh, model, options)),
      condensed_(trace_)
{
    for (Index f : mesh.boundary_faces())
        model.check_boundary_tag(mesh.face(f).boundary_tag);
    const Index nn = basis_.num_nodes();
    for (const FieldSpec& f : model.fields()) {
        field_offsets_.push_back(element_size_);
        field_mass_.push_back(f.mass);
        element_size_ += f.components * nn;
    }
    contexts_.reserve(mesh.num_elements());
    mass_.reserve(mesh.num_elements());
    for (Index e = 0; e < mesh.num_elements(); ++e) {
        contexts_.emplace_back(map_, basis_, trace_, e);
        mass_.push_back(contexts_.back().mass());
    }
    build_classes();
}

FieldLayout HdgSystem::layout(int field) const
{
    return {element_size_, field_offsets_[field], model_->fields()[field].components};
}

void HdgSystem::build_classes()
{
    const Index ne = mesh_->num_elements();
    class_of_.assign(ne, 0);
    class_rep_.clear();
    if (!options_.share_operators || !model_->linear()) {
        for (Index e = 0; e < ne; ++e) {
            class_of_[e] = e;
            class_rep_.push_back(e);
        }
        num_classes_ = ne;
        return;
    }
    double scale = 0.0;
    for (Index i = 0; i < mesh_->num_nodes(); ++i)
        scale = std::max(scale, mesh_->node(i).cwiseAbs().maxCoeff());
    const double quantum = 1e-10 * std::max(scale, 1.0);
    std::map<std::vector<long long>, Index> seen;
    for (Index e = 0; e < ne; ++e) {
        std::vector<long long> key;
        const auto& nodes = mesh_->element_nodes(e);
        const Point origin = mesh_->node(nodes[0]);
        for (Index n : nodes)
            for (int d = 0; d < 3; ++d)
                key.push_back(std::llround((mesh_->node(n)(d) - origin(d)) / quantum));
        for (const FaceContext& fc : contexts_[e].faces) {
            key.push_back(fc.boundary ? fc.tag : -1);
            key.push_back(fc.left ? 1 : 0);
        }
        auto [it, inserted] = seen.emplace(std::move(key), static_cast<Index>(class_rep_.size()));
        if (inserted)
            class_rep_.push_back(e);
        class_of_[e] = it->second;
    }
    num_classes_ = static_cast<Index>(class_rep_.size());
}

template <class Fn>
void HdgSystem::for_each_element(Index n, Fn&& fn) const
{
    const int nt = std::max(1, options_.threads);
    if (nt == 1 || n < 2) {
        for (Index i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex guard;
    std::vector<std::thread> pool;
    for (int k = 0; k < nt; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (Index i = k; i < n; i += nt)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

void HdgSystem::add_mass(double alpha, Index e, const Vector& ue, Vector& he) const
{
    const Index nn = basis_.num_nodes();
    const auto& fields = model_->fields();
    for (std::size_t f = 0; f < fields.size(); ++f) {
        const double m = alpha * field_mass_[f];
        if (m == 0.0)
            continue;
        for (int c = 0; c < fields[f].components; ++c) {
            const Index off = field_offsets_[f] + c * nn;
            he.segment(off, nn).noalias() += m * (mass_[e] * ue.segment(off, nn));
        }
    }
}

void HdgSystem::apply_mass(const Vector& u, Vector& mu) const
{
    mu = Vector::Zero(u.size());
    for (Index e = 0; e < mesh_->num_elements(); ++e) {
        Vector me = Vector::Zero(element_size_);
        add_mass(1.0, e, u.segment(e * element_size_, element_size_), me);
        mu.segment(e * element_size_, element_size_) = me;
    }
}

void HdgSystem::residual(double alpha, const Vector& rhs, double t, const Vector& u, const Vector& v, Vector& h,
                         Vector& g) const
{
    const Index ne = mesh_->num_elements();
    h.resize(local_size());
    std::vector<Vector> ge(ne);
    for_each_element(ne, [&](Index e) {
        Vector ve, he;
        condensed_.gather(e, v, ve);
        const Vector ue = u.segment(e * element_size_, element_size_);
        model_->residual(contexts_[e], t, ue, ve, he, ge[e]);
        add_mass(alpha, e, ue, he);
        if (rhs.size() > 0)
            he -= rhs.segment(e * element_size_, element_size_);
        h.segment(e * element_size_, element_size_) = he;
    });
    g = Vector::Zero(trace_size());
    for (Index e = 0; e < ne; ++e)
        condensed_.scatter(e, ge[e], g);
}

void HdgSystem::element_jacobian(Index e, double alpha, double t, const Vector& u, const Vector& v, Matrix& a,
                                 Matrix& b, Matrix& c, Matrix& d) const
{
    Vector ve;
    condensed_.gather(e, v, ve);
    const Vector ue = u.segment(e * element_size_, element_size_);
    model_->jacobian(contexts_[e], t, ue, ve, a, b, c, d);
    const Index nn = basis_.num_nodes();
    const auto& fields = model_->fields();
    for (std::size_t f = 0; f < fields.size(); ++f) {
        const double m = alpha * field_mass_[f];
        if (m == 0.0)
            continue;
        for (int k = 0; k < fields[f].components; ++k) {
            const Index off = field_offsets_[f] + k * nn;
            a.block(off, off, nn, nn) += m * mass_[e];
        }
    }
}

Matrix HdgSystem::dense_jacobian(double alpha, double t, const Vector& u, const Vector& v) const
{
    const Index nl = local_size(), nt = trace_size();
    Matrix j = Matrix::Zero(nl + nt, nl + nt);
    Matrix a, b, c, d;
    for (Index e = 0; e < mesh_->num_elements(); ++e) {
        element_jacobian(e, alpha, t, u, v, a, b, c, d);
        const auto dofs = trace_.element_dofs(e);
        const Index off = e * element_size_;
        j.block(off, off, element_size_, element_size_) = a;
        for (std::size_t q = 0; q < dofs.size(); ++q) {
            const Index gq = nl + dofs[q];
            j.block(off, gq, element_size_, 1) += b.col(q);
            j.block(gq, off, 1, element_size_) += c.row(q);
            for (std::size_t p = 0; p < dofs.size(); ++p)
                j(nl + dofs[p], gq) += d(p, q);
        }
    }
    return j;
}

void HdgSystem::prepare_element(ElementCache& cache, Index e, double alpha, double t, const Vector& u,
                                const Vector& v) const
{
    Matrix a, b, d;
    element_jacobian(e, alpha, t, u, v, a, b, cache.c, d);
    cache.lu.factor(a, e, model_->decoupled_leading_components(), basis_.num_nodes());
    condense_element(cache.lu, b, cache.c, d, cache.ainv_b, cache.k);
}

CorrectionReport HdgSystem::solve_trace(const krylov::BlockCsrMatrix& k, krylov::RasPreconditioner& ras,
                                        const Vector& r, Vector& dv)
{
    const Vector rhs = -r;
    krylov::GmresResult res = krylov::gmres(k, rhs, &ras, options_.gmres);
    dv = std::move(res.x);
    CorrectionReport rep{res.iterations, res.converged, res.orthogonality_loss};
    ++stats_.gmres_solves;
    stats_.gmres_iterations += res.iterations;
    stats_.max_gmres_iterations = std::max(stats_.max_gmres_iterations, res.iterations);
    stats_.max_orthogonality_loss = std::max(stats_.max_orthogonality_loss, res.orthogonality_loss);
    return rep;
}

CorrectionReport HdgSystem::correction(double alpha, double t, const Vector& u, const Vector& v, const Vector& h,
                                       const Vector& g, Vector& du, Vector& dv)
{
    const Index ne = mesh_->num_elements();
    const bool linear = model_->linear();
    std::vector<ElementCache>* caches;
    const krylov::BlockCsrMatrix* k;
    krylov::RasPreconditioner* ras;
    if (linear) {
        auto [it, inserted] = linear_cache_.try_emplace(alpha);
        LinearCache& lc = it->second;
        if (inserted) {
            lc.classes.resize(num_classes_);
            for_each_element(num_classes_,
                             [&](Index cl) { prepare_element(lc.classes[cl], class_rep_[cl], alpha, t, u, v); });
            condensed_.clear_matrix();
            for (Index e = 0; e < ne; ++e)
                condensed_.add_matrix(e, lc.classes[class_of_[e]].k);
            lc.k = condensed_.matrix();
            lc.ras = std::make_unique<krylov::RasPreconditioner>(lc.k, options_.ras);
        }
        caches = &lc.classes;
        k = &lc.k;
        ras = lc.ras.get();
    } else {
        element_cache_.resize(ne);
        for_each_element(ne, [&](Index e) { prepare_element(element_cache_[e], e, alpha, t, u, v); });
        condensed_.clear_matrix();
        for (Index e = 0; e < ne; ++e)
            condensed_.add_matrix(e, element_cache_[e].k);
        if (ras_)
            ras_->refactor(condensed_.matrix());
        else
            ras_ = std::make_unique<krylov::RasPreconditioner>(condensed_.matrix(), options_.ras);
        caches = &element_cache_;
        k = &condensed_.matrix();
        ras = ras_.get();
    }
    auto cache_of = [&](Index e) -> const ElementCache& { return (*caches)[linear ? class_of_[e] : e]; };

    std::vector<Vector> ainv_h(ne), re(ne);
    for_each_element(ne, [&](Index e) {
        const ElementCache& ec = cache_of(e);
        condense_residual(ec.lu, ec.c, h.segment(e * element_size_, element_size_), Vector::Zero(ec.c.rows()),
                          ainv_h[e], re[e]);
    });
    Vector r = g;
    for (Index e = 0; e < ne; ++e)
        condensed_.scatter(e, re[e], r);

    const CorrectionReport rep = solve_trace(*k, *ras, r, dv);

    du.resize(local_size());
    for_each_element(ne, [&](Index e) {
        Vector dve, due;
        condensed_.gather(e, dv, dve);
        recover_local(ainv_h[e], cache_of(e).ainv_b, dve, due);
        du.segment(e * element_size_, element_size_) = due;
    });
    return rep;
}

CorrectionReport HdgSystem::trace_correction(double t, const Vector& u, const Vector& v, const Vector& g,
                                             Vector& dv)
{
    const Index ne = mesh_->num_elements();
    const bool linear = model_->linear();
    auto element_d = [&](Index e, Matrix& d) {
        Matrix a, b, c;
        element_jacobian(e, 0.0, t, u, v, a, b, c, d);
    };
    if (linear && trace_cache_ready_)
        return solve_trace(trace_cache_.k, *trace_cache_.ras, g, dv);

    std::vector<Matrix> ds(linear ? num_classes_ : ne);
    for_each_element(static_cast<Index>(ds.size()), [&](Index i) { element_d(linear ? class_rep_[i] : i, ds[i]); });
    condensed_.clear_matrix();
    for (Index e = 0; e < ne; ++e)
        condensed_.add_matrix(e, ds[linear ? class_of_[e] : e]);
    if (linear) {
        trace_cache_.k = condensed_.matrix();
        trace_cache_.ras = std::make_unique<krylov::RasPreconditioner>(trace_cache_.k, options_.ras);
        trace_cache_ready_ = true;
        return solve_trace(trace_cache_.k, *trace_cache_.ras, g, dv);
    }
    krylov::RasPreconditioner ras(condensed_.matrix(), options_.ras);
    return solve_trace(condensed_.matrix(), ras, g, dv);
}

NewtonReport HdgSystem::solve_stage(double alpha, const Vector& rhs, double t, Vector& u, Vector& v)
{
    StageProblem problem(*this, alpha, rhs, t);
    NewtonReport rep = newton_solve(problem, u, v, options_.newton);
    ++stats_.newton_solves;
    stats_.newton_iterations += rep.iterations;
    stats_.max_newton_iterations = std::max(stats_.max_newton_iterations, rep.iterations);
    return rep;
}

NewtonReport HdgSystem::solve_constraint(const Vector& u, double t, Vector& v)
{
    ConstraintProblem problem(*this, t);
    Vector uu = u;
    return newton_solve(problem, uu, v, options_.newton);
}

}
