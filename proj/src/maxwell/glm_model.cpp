#include "hdgwave/maxwell/glm_model.hpp"

#include <cmath>
#include <utility>

namespace hdgwave {

namespace {

/// Levi-Civita symbol
double levi(int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); }

Point column(const Matrix& m, int q) { return m.col(q); }

}

void EmMaterial::validate() const
{
    if (!(epsilon > 0.0) || !(mu > 0.0) || !(epsilon0 > 0.0))
        throw ConfigError("permittivity and permeability must be positive");
}

void GlmParameters::validate() const
{
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0) || !(alpha3 > 0.0))
        throw ConfigError("GLM coefficients must be positive");
    if (!(tau > 0.0))
        throw ConfigError("stabilisation parameter must be positive");
}

MaxwellModel::MaxwellModel(EmMaterial material, GlmParameters glm, MaxwellData data, bool corrected)
    : material_(material), glm_(glm), data_(std::move(data)), corrected_(corrected)
{
    material_.validate();
    glm_.validate();
    fields_ = {{"h", 3, material_.mu}, {"e", 3, material_.epsilon}};
    if (corrected_)
        fields_.push_back({"phi", 1, 1.0 / (glm_.alpha1 * glm_.alpha1)});
}

void MaxwellModel::residual(const ElementContext& ctx, double t, const Vector& u, const Vector& trace, Vector& h,
                            Vector& g) const
{
    const int nn = ctx.num_nodes, nq = ctx.num_quad, nqf = ctx.num_face_quad, nfn = ctx.num_face_nodes;
    const Index oe = 3 * nn, op = 6 * nn;
    const double tau = glm_.tau;
    const Matrix& phi = ctx.values();
    const Matrix& psi = ctx.trace_values();
    h = Vector::Zero(u.size());
    g = Vector::Zero(ctx.trace_size());
    const Eigen::Map<const Matrix> hco(u.data(), nn, 3), eco(u.data() + oe, nn, 3);
    const Matrix hq = phi * hco, eq = phi * eco;
    Vector pq;
    if (corrected_)
        pq = phi * u.segment(op, nn);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vector ch = Vector::Zero(nq), ce = Vector::Zero(nq);
            for (int m = 0; m < 3; ++m) {
                const double s = levi(m, j, i);
                if (s != 0.0) {
                    ch += s * hq.col(m);
                    ce += s * eq.col(m);
                }
            }
            h.segment(oe + i * nn, nn).noalias() -= ctx.grad[j].transpose() * ctx.wdet.cwiseProduct(ch);
            h.segment(i * nn, nn).noalias() += ctx.grad[j].transpose() * ctx.wdet.cwiseProduct(ce);
        }
    if (data_.current) {
        Matrix jq(nq, 3);
        for (int q = 0; q < nq; ++q)
            jq.row(q) = data_.current(ctx.points.col(q), t).transpose();
        for (int i = 0; i < 3; ++i)
            h.segment(oe + i * nn, nn).noalias() += phi.transpose() * ctx.wdet.cwiseProduct(jq.col(i));
    }
    if (corrected_) {
        const Vector wp = ctx.wdet.cwiseProduct(pq);
        for (int i = 0; i < 3; ++i)
            h.segment(oe + i * nn, nn).noalias() -= ctx.grad[i].transpose() * wp;
        Vector div = Vector::Zero(nq);
        for (int i = 0; i < 3; ++i)
            div.noalias() += ctx.grad[i] * eco.col(i);
        Vector src = div + pq / (glm_.alpha2 * glm_.alpha2);
        if (data_.charge)
            for (int q = 0; q < nq; ++q)
                src(q) -= data_.charge(ctx.points.col(q), t) / material_.epsilon0;
        h.segment(op, nn).noalias() += phi.transpose() * ctx.wdet.cwiseProduct(src);
    }

    for (std::size_t fi = 0; fi < ctx.faces.size(); ++fi) {
        const int f = static_cast<int>(fi);
        const FaceContext& fc = ctx.faces[f];
        const Matrix& phif = ctx.face_values(f);
        const Matrix hf = phif * hco, ef = phif * eco;
        const Matrix ehat = ctx.trace_at_quad(f, trace);
        Matrix le(nqf, 3), lh(nqf, 3);
        Matrix gq(nqf, 3);
        for (int q = 0; q < nqf; ++q) {
            const Point n = column(fc.normal, q);
            const Point hv = hf.row(q).transpose(), ev = ef.row(q).transpose(), eh = column(ehat, q);
            const Point nxh = n.cross(hv);
            const Point jump = ev - ev.dot(n) * n - eh;
            le.row(q) = (tau * jump - nxh).transpose();
            lh.row(q) = n.cross(eh).transpose();
            if (fc.boundary) {
                Point r = eh;
                if (data_.incident)
                    r += data_.incident(column(fc.points, q), t);
                gq.row(q) = r.transpose();
            } else {
                gq.row(q) = (nxh - tau * jump).transpose();
            }
        }
        for (int i = 0; i < 3; ++i) {
            h.segment(oe + i * nn, nn).noalias() += phif.transpose() * fc.wdet.cwiseProduct(le.col(i));
            h.segment(i * nn, nn).noalias() += phif.transpose() * fc.wdet.cwiseProduct(lh.col(i));
        }
        if (corrected_)
            h.segment(op, nn).noalias() +=
                phif.transpose() * fc.wdet.cwiseProduct(phif * u.segment(op, nn)) / (glm_.alpha3 * glm_.alpha3);
        for (int s = 0; s < 2; ++s) {
            const Vector proj = (gq.transpose().cwiseProduct(fc.directions[s])).colwise().sum().transpose();
            g.segment(ctx.trace_offset(f, s), nfn).noalias() += psi.transpose() * fc.wdet.cwiseProduct(proj);
        }
    }
}

void MaxwellModel::jacobian(const ElementContext& ctx, double, const Vector& u, const Vector&, Matrix& a, Matrix& b,
                            Matrix& c, Matrix& d) const
{
    const int nn = ctx.num_nodes, nfn = ctx.num_face_nodes, nqf = ctx.num_face_quad;
    const Index oe = 3 * nn, op = 6 * nn;
    const Index nl = u.size(), nt = ctx.trace_size();
    const double tau = glm_.tau;
    const Matrix& phi = ctx.values();
    const Matrix& psi = ctx.trace_values();
    a = Matrix::Zero(nl, nl);
    b = Matrix::Zero(nl, nt);
    c = Matrix::Zero(nt, nl);
    d = Matrix::Zero(nt, nt);

    const Matrix wphi = ctx.wdet.asDiagonal() * phi;
    std::array<Matrix, 3> gw;
    for (int j = 0; j < 3; ++j)
        gw[j] = ctx.grad[j].transpose() * wphi;
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m)
            for (int j = 0; j < 3; ++j) {
                const double s = levi(m, j, i);
                if (s == 0.0)
                    continue;
                a.block(oe + i * nn, m * nn, nn, nn) -= s * gw[j];
                a.block(i * nn, oe + m * nn, nn, nn) += s * gw[j];
            }
    if (corrected_) {
        const double a2 = 1.0 / (glm_.alpha2 * glm_.alpha2), a3 = 1.0 / (glm_.alpha3 * glm_.alpha3);
        for (int i = 0; i < 3; ++i) {
            a.block(oe + i * nn, op, nn, nn) = -gw[i];
            a.block(op, oe + i * nn, nn, nn) = gw[i].transpose();
        }
        a.block(op, op, nn, nn) = a2 * (phi.transpose() * wphi);
        for (std::size_t f = 0; f < ctx.faces.size(); ++f) {
            const Matrix& phif = ctx.face_values(static_cast<int>(f));
            a.block(op, op, nn, nn).noalias() += a3 * (phif.transpose() * ctx.faces[f].wdet.asDiagonal() * phif);
        }
    }

    for (std::size_t fi = 0; fi < ctx.faces.size(); ++fi) {
        const int f = static_cast<int>(fi);
        const FaceContext& fc = ctx.faces[f];
        const Matrix& phif = ctx.face_values(f);
        const Matrix& n = fc.normal;
        const Vector& w = fc.wdet;
        auto vol = [&](const Vector& coef) { return Matrix(phif.transpose() * w.cwiseProduct(coef).asDiagonal() * phif); };
        auto mixed = [&](const Vector& coef) { return Matrix(phif.transpose() * w.cwiseProduct(coef).asDiagonal() * psi); };
        auto trace = [&](const Vector& coef) { return Matrix(psi.transpose() * w.cwiseProduct(coef).asDiagonal() * psi); };
        for (int i = 0; i < 3; ++i)
            for (int m = 0; m < 3; ++m) {
                // (n x h)_i = sum_k levi(i,k,m) n_k h_m
                Vector nx = Vector::Zero(nqf);
                for (int k = 0; k < 3; ++k)
                    if (levi(i, k, m) != 0.0)
                        nx += levi(i, k, m) * n.row(k).transpose();
                a.block(oe + i * nn, m * nn, nn, nn) -= vol(nx);
                Vector proj = -n.row(i).transpose().cwiseProduct(n.row(m).transpose());
                if (i == m)
                    proj.array() += 1.0;
                a.block(oe + i * nn, oe + m * nn, nn, nn) += tau * vol(proj);
            }
        for (int s = 0; s < 2; ++s) {
            const Matrix& ts = fc.directions[s];
            Matrix nxt(3, nqf), txn(3, nqf);
            for (int q = 0; q < nqf; ++q) {
                nxt.col(q) = column(n, q).cross(column(ts, q));
                txn.col(q) = -nxt.col(q);
            }
            const Index off = ctx.trace_offset(f, s);
            for (int i = 0; i < 3; ++i) {
                b.block(oe + i * nn, off, nn, nfn) = -tau * mixed(ts.row(i).transpose());
                b.block(i * nn, off, nn, nfn) = mixed(nxt.row(i).transpose());
            }
            for (int r = 0; r < 2; ++r) {
                const Vector tt = (ts.cwiseProduct(fc.directions[r])).colwise().sum().transpose();
                d.block(off, ctx.trace_offset(f, r), nfn, nfn) = (fc.boundary ? 1.0 : tau) * trace(tt);
            }
            if (!fc.boundary)
                for (int m = 0; m < 3; ++m) {
                    c.block(off, m * nn, nfn, nn) = mixed(txn.row(m).transpose()).transpose();
                    c.block(off, oe + m * nn, nfn, nn) = -tau * mixed(ts.row(m).transpose()).transpose();
                }
        }
    }
}

PhiElimination::PhiElimination(const Matrix& a, Index phi_size) : nu_(a.rows() - phi_size), np_(phi_size)
{
    app_.compute(a.bottomRightCorner(np_, np_));
    aup_ = a.topRightCorner(nu_, np_);
    apu_ = a.bottomLeftCorner(np_, nu_);
    reduced_ = a.topLeftCorner(nu_, nu_);
    reduced_.noalias() -= aup_ * app_.solve(apu_);
}

Vector PhiElimination::reduce(const Vector& r) const
{
    Vector out = r.head(nu_);
    out.noalias() -= aup_ * app_.solve(r.tail(np_));
    return out;
}

Vector PhiElimination::recover(const Vector& r, const Vector& xu) const
{
    return app_.solve(r.tail(np_) - apu_ * xu);
}

double divergence_norm(const HdgSystem& sys, const Vector& u)
{
    const FieldLayout lay = sys.layout(1);
    const int nn = sys.basis().num_nodes();
    double sum = 0.0;
    for (Index e = 0; e < sys.mesh().num_elements(); ++e) {
        const ElementContext& ctx = sys.context(e);
        const Eigen::Map<const Matrix> eco(u.data() + e * lay.stride + lay.offset, nn, 3);
        Vector div = Vector::Zero(ctx.num_quad);
        for (int i = 0; i < 3; ++i)
            div.noalias() += ctx.grad[i] * eco.col(i);
        sum += ctx.wdet.dot(div.cwiseAbs2());
    }
    return std::sqrt(sum);
}

double em_energy(const HdgSystem& sys, const MaxwellModel& model, const Vector& u)
{
    const int nn = sys.basis().num_nodes();
    const double coef[3] = {model.material().mu, model.material().epsilon,
                            1.0 / (model.glm().alpha1 * model.glm().alpha1)};
    double sum = 0.0;
    for (Index e = 0; e < sys.mesh().num_elements(); ++e) {
        const ElementContext& ctx = sys.context(e);
        for (std::size_t fld = 0; fld < model.fields().size(); ++fld) {
            const FieldLayout lay = sys.layout(static_cast<int>(fld));
            const Eigen::Map<const Matrix> co(u.data() + e * lay.stride + lay.offset, nn, lay.components);
            const Matrix vq = ctx.values() * co;
            sum += 0.5 * coef[fld] * ctx.wdet.dot(vq.rowwise().squaredNorm());
        }
    }
    return sum;
}

double hcurl_error(const HdgSystem& sys, const Vector& u, int field, const std::function<Point(const Point&)>& exact,
                   const std::function<Point(const Point&)>& exact_curl)
{
    const FieldLayout lay = sys.layout(field);
    const int nn = sys.basis().num_nodes();
    double sum = 0.0;
    for (Index e = 0; e < sys.mesh().num_elements(); ++e) {
        const ElementContext& ctx = sys.context(e);
        const Eigen::Map<const Matrix> co(u.data() + e * lay.stride + lay.offset, nn, 3);
        const Matrix vq = ctx.values() * co;
        std::array<Matrix, 3> dq;
        for (int j = 0; j < 3; ++j)
            dq[j] = ctx.grad[j] * co;
        for (int q = 0; q < ctx.num_quad; ++q) {
            const Point x = ctx.points.col(q);
            const Point curl(dq[1](q, 2) - dq[2](q, 1), dq[2](q, 0) - dq[0](q, 2), dq[0](q, 1) - dq[1](q, 0));
            const Point val = vq.row(q).transpose();
            sum += ctx.wdet(q) * ((val - exact(x)).squaredNorm() + (curl - exact_curl(x)).squaredNorm());
        }
    }
    return std::sqrt(sum);
}

}
