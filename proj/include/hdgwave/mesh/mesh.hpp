#pragma once

#include "hdgwave/common.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace hdgwave {

/// One element's view of a face: the element, its local face number and the
/// orientation code taking the element's local face parameters to the
/// canonical face parameters.
struct FaceSide {
    Index element = -1;
    int local_face = -1;
    int orientation = 0;
};

struct Face {
    FaceSide left;
    FaceSide right; // element < 0 on the boundary
    int boundary_tag = -1;
    /// corner vertices in canonical order: origin, end of first axis, end of
    /// second axis, opposite corner (2D: origin, end)
    std::array<Index, 4> vertices{-1, -1, -1, -1};

    bool is_boundary() const { return right.element < 0; }
};

/// Orientation codes: bit 0 swaps the two face parameters, bit 1 negates the
/// first and bit 2 the second (after the swap). In 2D only bit 1 is used.
std::array<double, 2> apply_orientation(int code, double s, double t);
std::array<double, 2> invert_orientation(int code, double s, double t);

/// Permutation of a symmetric tensor point set on a face: entry i is the
/// canonical index of the point with local index i. `n1` points per direction.
std::vector<int> face_permutation(int dim, int code, int n1);

/// Conforming mesh of quadrilaterals (2D) or hexahedra (3D) with Lagrange
/// geometry of degree p on Gauss-Lobatto nodes.
class Mesh {
public:
    using BoundaryTagger = std::function<int(const Point& centroid, const Point& normal)>;

    /// `element_nodes[e]` lists the (p+1)^dim geometric nodes of element e in
    /// lexicographic order (x fastest).
    Mesh(int dim, int geometric_degree, std::vector<Point> nodes,
         std::vector<std::vector<Index>> element_nodes, const BoundaryTagger& tagger = {});

    int dim() const { return dim_; }
    int geometric_degree() const { return p_; }
    int faces_per_element() const { return 2 * dim_; }
    int vertices_per_element() const { return 1 << dim_; }

    Index num_elements() const { return static_cast<Index>(elements_.size()); }
    Index num_faces() const { return static_cast<Index>(faces_.size()); }
    Index num_nodes() const { return static_cast<Index>(nodes_.size()); }

    const Point& node(Index i) const { return nodes_[i]; }
    const std::vector<Index>& element_nodes(Index e) const { return elements_[e]; }
    /// global id of local vertex v (bits: x, y, z) of element e
    Index element_vertex(Index e, int v) const;
    /// local vertex of element e for local face f and face corner (a, b)
    static int face_vertex(int dim, int f, int a, int b);

    const Face& face(Index f) const { return faces_[f]; }
    Index element_face(Index e, int local_face) const { return element_faces_[e][local_face]; }

    std::vector<Index> boundary_faces() const;
    std::vector<Index> interior_faces() const;

    /// Ids of boundary faces carrying `tag`.
    std::vector<Index> faces_with_tag(int tag) const;

private:
    void build_faces(const BoundaryTagger& tagger);

    int dim_;
    int p_;
    std::vector<Point> nodes_;
    std::vector<std::vector<Index>> elements_;
    std::vector<Face> faces_;
    std::vector<std::array<Index, 6>> element_faces_;
};

/// Structured box [origin, origin+extent] split into `cells` elements per
/// axis. Boundary faces are tagged 2*axis + side (side 0 at the lower end).
Mesh build_structured_box(std::span<const double> extent, std::span<const int> cells,
                          int geometric_degree = 1, const Point& origin = Point::Zero());

enum class SkeletonRule { none, all, interior_only };

/// Flags the faces on which the trace space is continuous.
std::vector<char> classify_skeleton(const Mesh& mesh, SkeletonRule rule);

}
