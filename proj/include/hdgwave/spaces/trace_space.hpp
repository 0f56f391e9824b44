#pragma once

#include "hdgwave/mesh/mesh.hpp"

#include <span>
#include <vector>

namespace hdgwave {

enum class TraceVariant {
    hdg,               // discontinuous on every face
    edg,               // continuous on every face
    iedg,              // continuous on interior faces, discontinuous on the boundary
    maxwell_tangential // discontinuous, tangential vector components only
};

/// Reference axis for a tangent frame: the one with the smallest |n_k|, with
/// components within 1e-8 |n| treated as ties (lowest index wins).
int tangent_axis(const Point& n);
/// Orthonormal tangent pair (t1, t2) for a unit normal n, t2 = n x t1, with t1
/// the normalised projection of the reference axis.
std::pair<Point, Point> tangent_frame(const Point& n);
std::pair<Point, Point> tangent_frame(const Point& n, int axis);

/// Nodal trace space on the mesh skeleton, using Gauss-Lobatto nodes of
/// degree k on each face. DOFs of face f in canonical order are laid out
/// component-major: [component][canonical node].
class TraceSpace {
public:
    TraceSpace(const Mesh& mesh, int degree, int components, TraceVariant variant);

    const Mesh& mesh() const { return *mesh_; }
    TraceVariant variant() const { return variant_; }
    int degree() const { return degree_; }
    /// physical components of the traced field
    int components() const { return components_; }
    /// components stored per node (dim-1 for the tangential variant)
    int stored_components() const { return stored_; }
    int nodes_per_face() const { return nfn_; }

    Index num_dofs() const { return num_dofs_; }
    int block_size() const { return block_size_; }
    Index num_blocks() const { return num_dofs_ / block_size_; }
    Index num_trace_nodes() const { return num_nodes_; }
    /// DOFs that stay coupled globally: for the interior-continuous variant
    /// only the ones attached to interior faces, otherwise all.
    Index globally_coupled_dofs() const { return coupled_dofs_; }

    const std::vector<char>& continuous_faces() const { return continuous_; }

    int element_trace_size() const { return mesh_->faces_per_element() * stored_ * nfn_; }
    /// global DOFs in element-trace order [local face][component][local face node]
    std::span<const Index> element_dofs(Index e) const;
    std::span<const Index> face_dofs(Index f) const;
    /// local -> canonical face node map for an orientation code
    const std::vector<int>& permutation(int code) const { return perms_[code]; }

private:
    const Mesh* mesh_;
    TraceVariant variant_;
    int degree_;
    int components_;
    int stored_;
    int nfn_;
    int block_size_ = 1;
    Index num_dofs_ = 0;
    Index num_nodes_ = 0;
    Index coupled_dofs_ = 0;
    std::vector<char> continuous_;
    std::vector<Index> face_dofs_;
    std::vector<Index> element_dofs_;
    std::vector<std::vector<int>> perms_;
};

}
