#include "hdgwave/elastodyn/monitors.hpp"

namespace hdgwave {

namespace {

Vector flatten(const Tensor& f)
{
    Vector out(9);
    for (int c = 0; c < 9; ++c)
        out(c) = f(c / 3, c % 3);
    return out;
}

}

Vector project_elasto_state(const HdgSystem& sys, const TensorFunction& gradient, const PointFunction& velocity)
{
    Vector u = Vector::Zero(sys.local_size());
    interpolate(sys.map(), sys.basis(), sys.layout(0), [&](const Point& x) { return flatten(gradient(x)); }, u,
                Projection::l2);
    interpolate(sys.map(), sys.basis(), sys.layout(1), [&](const Point& x) { return Vector(velocity(x)); }, u,
                Projection::l2);
    return u;
}

ElastoErrors elasto_errors(const HdgSystem& sys, const Vector& u, const TensorFunction& gradient,
                           const PointFunction& velocity)
{
    ElastoErrors err;
    err.gradient = l2_error(sys.map(), sys.basis(), sys.layout(0), u,
                            [&](const Point& x) { return flatten(gradient(x)); });
    err.velocity = l2_error(sys.map(), sys.basis(), sys.layout(1), u,
                            [&](const Point& x) { return Vector(velocity(x)); });
    return err;
}

ElastoEnergy elasto_energy(const HdgSystem& sys, const ElastodynamicsModel& model, const Vector& u)
{
    ElastoEnergy en;
    const int nn = sys.basis().num_nodes();
    const double rho = model.material().rho;
    for (Index e = 0; e < sys.mesh().num_elements(); ++e) {
        const ElementContext& ctx = sys.context(e);
        const Vector ue = u.segment(e * sys.element_size(), sys.element_size());
        const Matrix fq = ctx.values() * element_gradient_coefficients(ue, nn);
        const Matrix vq = ctx.values() * Eigen::Map<const Matrix>(ue.data() + 9 * nn, nn, 3);
        for (int q = 0; q < ctx.num_quad; ++q) {
            Tensor f;
            for (int c = 0; c < 9; ++c)
                f(c / 3, c % 3) = fq(q, c);
            en.kinetic += 0.5 * rho * ctx.wdet(q) * vq.row(q).squaredNorm();
            en.potential += ctx.wdet(q) * model.energy_density(f);
        }
    }
    return en;
}

double jump_dissipation(const HdgSystem& sys, const ElastodynamicsModel& model, const Vector& u, const Vector& v)
{
    double total = 0.0;
    const int nn = sys.basis().num_nodes();
    Vector ve;
    for (Index e = 0; e < sys.mesh().num_elements(); ++e) {
        const ElementContext& ctx = sys.context(e);
        sys.condensed().gather(e, v, ve);
        const Eigen::Map<const Matrix> vco(u.data() + e * sys.element_size() + 9 * nn, nn, 3);
        for (std::size_t f = 0; f < ctx.faces.size(); ++f) {
            const Matrix jump = ctx.face_values(static_cast<int>(f)) * vco - ctx.trace_at_quad(static_cast<int>(f), ve).transpose();
            total += model.stabilization() * ctx.faces[f].wdet.dot(jump.rowwise().squaredNorm());
        }
    }
    return total;
}

}
