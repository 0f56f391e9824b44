#include "hdgwave/mesh/mesh.hpp"
#include "hdgwave/mesh/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace hdgwave {

std::array<double, 2> apply_orientation(int code, double s, double t)
{
    double a = s, b = t;
    if (code & 1)
        std::swap(a, b);
    if (code & 2)
        a = -a;
    if (code & 4)
        b = -b;
    return {a, b};
}

std::array<double, 2> invert_orientation(int code, double s, double t)
{
    double a = s, b = t;
    if (code & 2)
        a = -a;
    if (code & 4)
        b = -b;
    if (code & 1)
        std::swap(a, b);
    return {a, b};
}

std::vector<int> face_permutation(int dim, int code, int n1)
{
    const int m = n1 - 1;
    if (dim == 2) {
        std::vector<int> perm(n1);
        for (int i = 0; i < n1; ++i)
            perm[i] = (code & 2) ? m - i : i;
        return perm;
    }
    std::vector<int> perm(n1 * n1);
    for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n1; ++i) {
            // integer coordinates symmetric about the centre: 2i - m
            const auto c = apply_orientation(code, 2 * i - m, 2 * j - m);
            const int ci = (static_cast<int>(c[0]) + m) / 2;
            const int cj = (static_cast<int>(c[1]) + m) / 2;
            perm[i + n1 * j] = ci + n1 * cj;
        }
    return perm;
}

Mesh::Mesh(int dim, int geometric_degree, std::vector<Point> nodes,
           std::vector<std::vector<Index>> element_nodes, const BoundaryTagger& tagger)
    : dim_(dim), p_(geometric_degree), nodes_(std::move(nodes)), elements_(std::move(element_nodes))
{
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("Mesh: dimension must be 2 or 3");
    if (geometric_degree < 1)
        throw std::invalid_argument("Mesh: geometric degree must be at least 1");
    std::size_t expected = 1;
    for (int a = 0; a < dim; ++a)
        expected *= static_cast<std::size_t>(geometric_degree + 1);
    for (const auto& el : elements_) {
        if (el.size() != expected)
            throw std::invalid_argument("Mesh: wrong number of geometric nodes per element");
        for (Index n : el)
            if (n < 0 || n >= num_nodes())
                throw std::invalid_argument("Mesh: node index out of range");
    }
    build_faces(tagger);

    const GeometricMap map(*this);
    for (Index e = 0; e < num_elements(); ++e)
        for (int v = 0; v < vertices_per_element(); ++v) {
            Point xi = Point::Zero();
            for (int a = 0; a < dim; ++a)
                xi[a] = (v >> a) & 1 ? 1.0 : -1.0;
            if (map.jacobian(e, xi).determinant() <= 0.0)
                throw std::invalid_argument("Mesh: element " + std::to_string(e) +
                                            " has a non-positive Jacobian determinant");
        }
}

Index Mesh::element_vertex(Index e, int v) const
{
    const int n1 = p_ + 1;
    const int i = (v & 1) ? p_ : 0;
    const int j = (v & 2) ? p_ : 0;
    const int k = (v & 4) ? p_ : 0;
    return elements_[e][i + n1 * (j + n1 * k)];
}

int Mesh::face_vertex(int dim, int f, int a, int b)
{
    const int axis = f / 2;
    int bits[3] = {0, 0, 0};
    bits[axis] = f % 2;
    int used = 0;
    const int vals[2] = {a, b};
    for (int ax = 0; ax < dim; ++ax)
        if (ax != axis)
            bits[ax] = vals[used++];
    return bits[0] | (bits[1] << 1) | (bits[2] << 2);
}

namespace {

struct PendingSide {
    Index element;
    int local_face;
};

// local corner coordinates (in {-1,1}) of face corner (a, b)
std::array<double, 2> corner_param(int a, int b) { return {2.0 * a - 1.0, 2.0 * b - 1.0}; }

}

void Mesh::build_faces(const BoundaryTagger& tagger)
{
    const int nfv = dim_ == 3 ? 4 : 2;
    const int nb = dim_ == 3 ? 2 : 1;
    std::map<std::array<Index, 4>, std::vector<PendingSide>> by_key;
    std::vector<std::array<Index, 4>> key_order;

    for (Index e = 0; e < num_elements(); ++e)
        for (int f = 0; f < faces_per_element(); ++f) {
            std::array<Index, 4> key{-1, -1, -1, -1};
            int c = 0;
            for (int b = 0; b < nb; ++b)
                for (int a = 0; a < 2; ++a)
                    key[c++] = element_vertex(e, face_vertex(dim_, f, a, b));
            std::sort(key.begin(), key.begin() + nfv);
            auto& sides = by_key[key];
            if (sides.empty())
                key_order.push_back(key);
            sides.push_back({e, f});
            if (sides.size() > 2)
                throw std::invalid_argument("Mesh: face shared by more than two elements");
        }

    element_faces_.assign(num_elements(), {-1, -1, -1, -1, -1, -1});
    const GeometricMap map(*this);
    for (const auto& key : key_order) {
        const auto& sides = by_key[key];
        Face face;
        const PendingSide& l = sides[0];

        // local corner ids of the left side
        Index local_ids[2][2];
        for (int b = 0; b < nb; ++b)
            for (int a = 0; a < 2; ++a)
                local_ids[a][b] = element_vertex(l.element, face_vertex(dim_, l.local_face, a, b));

        // canonical corner order from global vertex ids
        if (dim_ == 2) {
            face.vertices = {std::min(local_ids[0][0], local_ids[1][0]),
                             std::max(local_ids[0][0], local_ids[1][0]), -1, -1};
        }
        else {
            int a0 = 0, b0 = 0;
            for (int b = 0; b < 2; ++b)
                for (int a = 0; a < 2; ++a)
                    if (local_ids[a][b] < local_ids[a0][b0]) {
                        a0 = a;
                        b0 = b;
                    }
            Index n1 = local_ids[1 - a0][b0];
            Index n2 = local_ids[a0][1 - b0];
            if (n2 < n1)
                std::swap(n1, n2);
            face.vertices = {local_ids[a0][b0], n1, n2, local_ids[1 - a0][1 - b0]};
        }

        auto canonical_of = [&](Index vid) -> std::array<double, 2> {
            static const std::array<double, 2> cc[4] = {{-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
            for (int i = 0; i < nfv; ++i)
                if (face.vertices[i] == vid)
                    return cc[i];
            throw std::logic_error("Mesh: vertex not on face");
        };
        auto orientation_of = [&](const PendingSide& s) {
            for (int code = 0; code < 8; ++code) {
                if (dim_ == 2 && (code & 5))
                    continue;
                bool ok = true;
                for (int b = 0; b < nb && ok; ++b)
                    for (int a = 0; a < 2 && ok; ++a) {
                        const Index vid = element_vertex(s.element, face_vertex(dim_, s.local_face, a, b));
                        const auto lp = corner_param(a, b);
                        const auto mapped = apply_orientation(code, lp[0], lp[1]);
                        const auto target = canonical_of(vid);
                        ok = mapped[0] == target[0] && (dim_ == 2 || mapped[1] == target[1]);
                    }
                if (ok)
                    return code;
            }
            throw std::invalid_argument("Mesh: inconsistent face orientation");
        };

        face.left = {l.element, l.local_face, orientation_of(l)};
        if (sides.size() == 2)
            face.right = {sides[1].element, sides[1].local_face, orientation_of(sides[1])};

        const Index id = static_cast<Index>(faces_.size());
        element_faces_[l.element][l.local_face] = id;
        if (sides.size() == 2)
            element_faces_[sides[1].element][sides[1].local_face] = id;

        if (face.is_boundary()) {
            face.boundary_tag = 0;
            if (tagger) {
                const FaceGeometry g = element_face_geometry(map, l.element, l.local_face, {Point::Zero()});
                face.boundary_tag = tagger(g.points[0], g.normals[0]);
            }
        }
        faces_.push_back(face);
    }
}

std::vector<Index> Mesh::boundary_faces() const
{
    std::vector<Index> out;
    for (Index f = 0; f < num_faces(); ++f)
        if (faces_[f].is_boundary())
            out.push_back(f);
    return out;
}

std::vector<Index> Mesh::interior_faces() const
{
    std::vector<Index> out;
    for (Index f = 0; f < num_faces(); ++f)
        if (!faces_[f].is_boundary())
            out.push_back(f);
    return out;
}

std::vector<Index> Mesh::faces_with_tag(int tag) const
{
    std::vector<Index> out;
    for (Index f = 0; f < num_faces(); ++f)
        if (faces_[f].is_boundary() && faces_[f].boundary_tag == tag)
            out.push_back(f);
    return out;
}

Mesh build_structured_box(std::span<const double> extent, std::span<const int> cells, int p, const Point& origin)
{
    const int dim = static_cast<int>(extent.size());
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("build_structured_box: dimension must be 2 or 3");
    if (cells.size() != extent.size())
        throw std::invalid_argument("build_structured_box: extent and cell counts differ in length");
    for (int a = 0; a < dim; ++a) {
        if (!(extent[a] > 0.0))
            throw std::invalid_argument("build_structured_box: extents must be positive");
        if (cells[a] <= 0)
            throw std::invalid_argument("build_structured_box: cell counts must be positive");
    }
    if (p < 1)
        throw std::invalid_argument("build_structured_box: geometric degree must be at least 1");

    const std::vector<double> gll = p == 1 ? std::vector<double>{-1.0, 1.0} : gauss_lobatto_nodes(p + 1);
    int nn[3] = {1, 1, 1};
    for (int a = 0; a < dim; ++a)
        nn[a] = cells[a] * p + 1;

    auto coord = [&](int a, int idx) {
        const int cell = std::min(idx / p, cells[a] - 1);
        const int local = idx - cell * p;
        const double h = extent[a] / cells[a];
        const double x0 = origin[a] + extent[a] * cell / cells[a];
        return x0 + 0.5 * (gll[local] + 1.0) * h;
    };

    std::vector<Point> nodes;
    nodes.reserve(static_cast<std::size_t>(nn[0]) * nn[1] * nn[2]);
    for (int k = 0; k < nn[2]; ++k)
        for (int j = 0; j < nn[1]; ++j)
            for (int i = 0; i < nn[0]; ++i) {
                Point x = Point::Zero();
                x[0] = coord(0, i);
                x[1] = coord(1, j);
                if (dim == 3)
                    x[2] = coord(2, k);
                nodes.push_back(x);
            }

    const int c2 = dim == 3 ? cells[2] : 1;
    const int q2 = dim == 3 ? p + 1 : 1;
    std::vector<std::vector<Index>> elements;
    for (int ck = 0; ck < c2; ++ck)
        for (int cj = 0; cj < cells[1]; ++cj)
            for (int ci = 0; ci < cells[0]; ++ci) {
                std::vector<Index> el;
                for (int k = 0; k < q2; ++k)
                    for (int j = 0; j <= p; ++j)
                        for (int i = 0; i <= p; ++i) {
                            const Index gi = ci * p + i, gj = cj * p + j, gk = ck * p + k;
                            el.push_back(gi + nn[0] * (gj + static_cast<Index>(nn[1]) * gk));
                        }
                elements.push_back(std::move(el));
            }

    Point lo = origin, hi = origin;
    for (int a = 0; a < dim; ++a)
        hi[a] += extent[a];
    auto tagger = [dim, lo, hi, extent](const Point& c, const Point&) {
        int best = 0;
        double best_dist = 1e300;
        for (int a = 0; a < dim; ++a) {
            const double dl = std::abs(c[a] - lo[a]) / extent[a];
            const double dh = std::abs(c[a] - hi[a]) / extent[a];
            if (dl < best_dist) {
                best_dist = dl;
                best = 2 * a;
            }
            if (dh < best_dist) {
                best_dist = dh;
                best = 2 * a + 1;
            }
        }
        return best;
    };
    return Mesh(dim, p, std::move(nodes), std::move(elements), tagger);
}

std::vector<char> classify_skeleton(const Mesh& mesh, SkeletonRule rule)
{
    std::vector<char> flags(mesh.num_faces(), 0);
    for (Index f = 0; f < mesh.num_faces(); ++f) {
        switch (rule) {
        case SkeletonRule::none: flags[f] = 0; break;
        case SkeletonRule::all: flags[f] = 1; break;
        case SkeletonRule::interior_only: flags[f] = mesh.face(f).is_boundary() ? 0 : 1; break;
        }
    }
    return flags;
}

}
