#pragma once

#include "hdgwave/dae/dae_system.hpp"
#include "hdgwave/hdg/condensation.hpp"
#include "hdgwave/hdg/element_context.hpp"
#include "hdgwave/hdg/local_operator.hpp"
#include "hdgwave/hdg/physics_model.hpp"
#include "hdgwave/krylov/gmres.hpp"
#include "hdgwave/krylov/ras.hpp"
#include "hdgwave/spaces/fields.hpp"

#include <map>
#include <memory>
#include <vector>

namespace hdgwave {

struct HdgOptions {
    int degree = 1;
    TraceVariant variant = TraceVariant::hdg;
    /// Gauss points per axis, default degree + 2
    int quad_points = -1;
    NewtonOptions newton;
    krylov::GmresOptions gmres{200, 1e-10, 0.0, 2000};
    krylov::RasOptions ras;
    /// linear models: share factorisations between geometrically identical elements
    bool share_operators = true;
    int threads = 1;
};

struct SolveStatistics {
    long newton_solves = 0;
    long newton_iterations = 0;
    long gmres_solves = 0;
    long gmres_iterations = 0;
    int max_newton_iterations = 0;
    int max_gmres_iterations = 0;
    double max_orthogonality_loss = 0.0;
};

/// Result of one condensed linear solve.
struct CorrectionReport {
    int gmres_iterations = 0;
    bool gmres_converged = false;
    double orthogonality_loss = 0.0;
};

/// Hybridised discretisation of a physics model written as the DAE
///   M du/dt + f(u, v, t) = 0,  g(u, v, t) = 0
/// with u the element unknowns (element-major) and v the trace unknowns.
/// Every Newton iteration assembles the element blocks, condenses them onto
/// the trace, solves the trace system with preconditioned GMRES and recovers
/// the element unknowns.
class HdgSystem : public DaeSystem {
public:
    HdgSystem(const Mesh& mesh, const PhysicsModel& model, HdgOptions options);

    Index local_size() const override { return mesh_->num_elements() * element_size_; }
    Index trace_size() const override { return trace_.num_dofs(); }
    void apply_mass(const Vector& u, Vector& mu) const override;
    NewtonReport solve_stage(double alpha, const Vector& rhs, double t, Vector& u, Vector& v) override;
    NewtonReport solve_constraint(const Vector& u, double t, Vector& v) override;

    const Mesh& mesh() const { return *mesh_; }
    const PhysicsModel& model() const { return *model_; }
    const HdgOptions& options() const { return options_; }
    const GeometricMap& map() const { return map_; }
    const ElementBasis& basis() const { return basis_; }
    const TraceSpace& trace_space() const { return trace_; }
    const ElementContext& context(Index e) const { return contexts_[e]; }
    const CondensedSystem& condensed() const { return condensed_; }

    Index element_size() const { return element_size_; }
    Index field_offset(int field) const { return field_offsets_[field]; }
    FieldLayout layout(int field) const;
    /// classes of elements sharing operators (linear models)
    Index num_operator_classes() const { return num_classes_; }

    /// Stage residual: h = alpha M u + f(u, v, t) - rhs, g = g(u, v, t). An
    /// empty rhs counts as zero.
    void residual(double alpha, const Vector& rhs, double t, const Vector& u, const Vector& v, Vector& h,
                  Vector& g) const;
    /// Element blocks of the stage Jacobian (mass term included in A).
    void element_jacobian(Index e, double alpha, double t, const Vector& u, const Vector& v, Matrix& a, Matrix& b,
                          Matrix& c, Matrix& d) const;
    /// Dense monolithic stage Jacobian [A B; C D] (small meshes only).
    Matrix dense_jacobian(double alpha, double t, const Vector& u, const Vector& v) const;

    /// Newton correction at (u, v) for the residual (h, g) through static
    /// condensation.
    CorrectionReport correction(double alpha, double t, const Vector& u, const Vector& v, const Vector& h,
                                const Vector& g, Vector& du, Vector& dv);
    /// Trace-only correction D dv = -g with u frozen.
    CorrectionReport trace_correction(double t, const Vector& u, const Vector& v, const Vector& g, Vector& dv);

    const SolveStatistics& statistics() const { return stats_; }
    void reset_statistics() { stats_ = {}; }

private:
    struct ElementCache {
        LocalOperator lu;
        Matrix ainv_b, c, k;
    };
    struct LinearCache {
        std::vector<ElementCache> classes;
        std::unique_ptr<krylov::RasPreconditioner> ras;
        krylov::BlockCsrMatrix k;
    };

    void build_classes();
    void add_mass(double alpha, Index e, const Vector& ue, Vector& he) const;
    void prepare_element(ElementCache& cache, Index e, double alpha, double t, const Vector& u, const Vector& v) const;
    CorrectionReport solve_trace(const krylov::BlockCsrMatrix& k, krylov::RasPreconditioner& ras, const Vector& r,
                                 Vector& dv);
    template <class Fn>
    void for_each_element(Index n, Fn&& fn) const;

    const Mesh* mesh_;
    const PhysicsModel* model_;
    HdgOptions options_;
    GeometricMap map_;
    ElementBasis basis_;
    TraceSpace trace_;
    CondensedSystem condensed_;
    std::vector<ElementContext> contexts_;
    std::vector<Matrix> mass_;
    Index element_size_ = 0;
    std::vector<Index> field_offsets_;
    std::vector<double> field_mass_;
    std::vector<Index> class_of_;
    std::vector<Index> class_rep_;
    Index num_classes_ = 0;

    std::map<double, LinearCache> linear_cache_;
    LinearCache trace_cache_;
    bool trace_cache_ready_ = false;
    std::vector<ElementCache> element_cache_;
    std::unique_ptr<krylov::RasPreconditioner> ras_;
    SolveStatistics stats_;
};

}
