#include "hdgwave/spaces/trace_space.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hdgwave {

int tangent_axis(const Point& n)
{
    const double tie = 1e-8 * n.norm();
    int k = 0;
    for (int a = 1; a < 3; ++a)
        if (std::abs(n[a]) < std::abs(n[k]) - tie)
            k = a;
    return k;
}

std::pair<Point, Point> tangent_frame(const Point& n) { return tangent_frame(n, tangent_axis(n)); }

std::pair<Point, Point> tangent_frame(const Point& n, int axis)
{
    Point e = Point::Zero();
    e[axis] = 1.0;
    Point t1 = e - e.dot(n) * n;
    t1.normalize();
    Point t2 = n.cross(t1);
    return {t1, t2};
}

namespace {

// Topological key of a canonical face node: entity kind, ids and position.
using NodeKey = std::array<Index, 4>;

NodeKey node_key(const Mesh& mesh, Index f, int degree, int node, bool shared)
{
    const int n1 = degree + 1;
    if (!shared || degree == 0)
        return {3, f, node, 0};
    const Face& face = mesh.face(f);
    const auto& c = face.vertices;
    if (mesh.dim() == 2) {
        if (node == 0)
            return {0, c[0], 0, 0};
        if (node == degree)
            return {0, c[1], 0, 0};
        return {3, f, node, 0};
    }
    const int i = node % n1, j = node / n1;
    const bool ei = (i == 0 || i == degree), ej = (j == 0 || j == degree);
    if (ei && ej) {
        const int corner = (i == degree ? 1 : 0) + (j == degree ? 2 : 0);
        return {0, c[corner], 0, 0};
    }
    if (ei || ej) {
        Index from, to;
        int pos;
        if (j == 0) {
            from = c[0], to = c[1], pos = i;
        }
        else if (j == degree) {
            from = c[2], to = c[3], pos = i;
        }
        else if (i == 0) {
            from = c[0], to = c[2], pos = j;
        }
        else {
            from = c[1], to = c[3], pos = j;
        }
        if (from > to) {
            std::swap(from, to);
            pos = degree - pos;
        }
        return {1, from, to, pos};
    }
    return {3, f, node, 0};
}

}

TraceSpace::TraceSpace(const Mesh& mesh, int degree, int components, TraceVariant variant)
    : mesh_(&mesh), variant_(variant), degree_(degree), components_(components), stored_(components)
{
    if (degree < 0)
        throw std::invalid_argument("TraceSpace: degree must be non-negative");
    if (components < 1)
        throw std::invalid_argument("TraceSpace: need at least one component");
    const int dim = mesh.dim();
    if (variant == TraceVariant::maxwell_tangential) {
        if (components != dim)
            throw std::invalid_argument("TraceSpace: tangential traces need as many components as dimensions");
        stored_ = dim - 1;
    }
    const int n1 = degree + 1;
    nfn_ = dim == 3 ? n1 * n1 : n1;

    SkeletonRule rule = SkeletonRule::none;
    if (variant == TraceVariant::edg)
        rule = SkeletonRule::all;
    else if (variant == TraceVariant::iedg)
        rule = SkeletonRule::interior_only;
    continuous_ = classify_skeleton(mesh, rule);

    perms_.resize(8);
    for (int code = 0; code < 8; ++code)
        perms_[code] = face_permutation(dim, code, n1);

    const Index nf = mesh.num_faces();
    const bool per_face = (rule == SkeletonRule::none);
    face_dofs_.resize(static_cast<std::size_t>(nf) * stored_ * nfn_);

    if (per_face) {
        block_size_ = stored_ * nfn_;
        num_nodes_ = nf * nfn_;
        for (Index f = 0; f < nf; ++f)
            for (int c = 0; c < stored_; ++c)
                for (int j = 0; j < nfn_; ++j) {
                    const Index idx = (f * stored_ + c) * nfn_ + j;
                    face_dofs_[idx] = f * block_size_ + c * nfn_ + j;
                }
        num_dofs_ = nf * block_size_;
        coupled_dofs_ = num_dofs_;
    }
    else {
        block_size_ = stored_;
        std::map<NodeKey, Index> ids;
        std::vector<Index> node_of(static_cast<std::size_t>(nf) * nfn_);
        std::vector<char> on_continuous;
        for (Index f = 0; f < nf; ++f)
            for (int j = 0; j < nfn_; ++j) {
                const NodeKey key = node_key(mesh, f, degree, j, continuous_[f] != 0);
                auto [it, inserted] = ids.emplace(key, static_cast<Index>(ids.size()));
                if (inserted)
                    on_continuous.push_back(0);
                if (continuous_[f])
                    on_continuous[it->second] = 1;
                node_of[f * nfn_ + j] = it->second;
            }
        num_nodes_ = static_cast<Index>(ids.size());
        for (Index f = 0; f < nf; ++f)
            for (int c = 0; c < stored_; ++c)
                for (int j = 0; j < nfn_; ++j)
                    face_dofs_[(f * stored_ + c) * nfn_ + j] = node_of[f * nfn_ + j] * stored_ + c;
        num_dofs_ = num_nodes_ * stored_;
        Index coupled_nodes = 0;
        for (char flag : on_continuous)
            coupled_nodes += flag;
        coupled_dofs_ = variant == TraceVariant::iedg ? coupled_nodes * stored_ : num_dofs_;
    }

    const int nfe = mesh.faces_per_element();
    element_dofs_.resize(static_cast<std::size_t>(mesh.num_elements()) * element_trace_size());
    for (Index e = 0; e < mesh.num_elements(); ++e)
        for (int lf = 0; lf < nfe; ++lf) {
            const Index f = mesh.element_face(e, lf);
            const Face& face = mesh.face(f);
            const FaceSide& side = face.left.element == e && face.left.local_face == lf ? face.left : face.right;
            const auto& perm = perms_[side.orientation];
            for (int c = 0; c < stored_; ++c)
                for (int j = 0; j < nfn_; ++j)
                    element_dofs_[static_cast<std::size_t>(e) * element_trace_size() + (lf * stored_ + c) * nfn_ + j] =
                        face_dofs_[(f * stored_ + c) * nfn_ + perm[j]];
        }
}

std::span<const Index> TraceSpace::element_dofs(Index e) const
{
    const std::size_t n = element_trace_size();
    return {element_dofs_.data() + e * n, n};
}

std::span<const Index> TraceSpace::face_dofs(Index f) const
{
    const std::size_t n = static_cast<std::size_t>(stored_) * nfn_;
    return {face_dofs_.data() + f * n, n};
}

}
