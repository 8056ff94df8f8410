#pragma once

#include "bellnet/behavior.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bellnet {

enum class VertexKind { Local, HybridNs, Ns };
enum class BoundKind { Local, HybridNs, Declared };

struct VertexSet {
    Scenario scenario;
    std::vector<Behavior> vertices;
    VertexKind kind = VertexKind::Local;
};

/// Linear functional on behaviors, same index convention as Behavior::table.
struct BellFunctional {
    Scenario scenario;
    std::vector<double> coeffs;
    double bound = 0.0;
    BoundKind bound_kind = BoundKind::Declared;
};

struct MembershipVerdict {
    double v_star = 0.0;
    bool member = true;
    std::optional<BellFunctional> certificate;  // separating functional when non-member
};

// Visibility values are capped here; behaviors at or extremely close to the
// uniform point would otherwise make the LP unbounded.
inline constexpr double kVisibilityCap = 128.0;
inline constexpr double kMembershipTol = 1e-9;

/// All products of deterministic single-party response functions.
VertexSet deterministic_vertices(const Scenario& s);

/// The 24 extreme points of the (2,2,2) no-signalling polytope: 16
/// deterministic vertices plus the 8 PR-box variants.
VertexSet ns_vertices_222();

/// Products of a single-party deterministic vertex with a bipartite
/// no-signalling vertex, over the 3 bipartitions of (3,2,2): 288 vertices.
VertexSet hybrid_vertices_3party();

/// Critical visibility of b against the vertex set: the largest v such that
/// v*b + (1-v)*uniform is a convex combination of the vertices. member iff
/// v* >= 1 - 1e-9; a dual separating functional is attached when it is not.
MembershipVerdict membership(const Behavior& b, const VertexSet& v);

/// Dual functional of the visibility LP at its optimum, available regardless
/// of membership. Useful as a search direction.
struct MembershipAnalysis {
    MembershipVerdict verdict;
    BellFunctional exit_facet;
};
MembershipAnalysis membership_with_facet(const Behavior& b, const VertexSet& v);

}  // namespace bellnet
