#pragma once

#include "bellnet/behavior.hpp"
#include "bellnet/polytope.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bellnet {

double evaluate(const BellFunctional& f, const Behavior& b);
double bound_over(const BellFunctional& f, const VertexSet& v);

/// Functional with coefficients w(x) * prod_i (-1)^{a_i} (r = 2).
BellFunctional functional_from_correlators(const Scenario& scenario,
                                           const std::vector<double>& context_weights,
                                           double bound, BoundKind kind);

/// The k post-selecting parties, their fixed settings and required outcomes.
struct PostSelection {
    std::vector<int> parties;
    std::vector<int> settings;
    std::vector<int> outcomes;
};

/// Observation-style lifting: coefficients of f are placed on joint events
/// with the post-selected outcome, minus the local bound times the indicator
/// of that outcome expressed through reference settings x0 on the tested
/// parties. Declared bound 0.
BellFunctional lift(const BellFunctional& f, const PostSelection& ps, int full_parties,
                    const std::vector<int>& ref_settings);

BellFunctional chsh();
BellFunctional mermin(int n);
BellFunctional svetlichny();
BellFunctional cglmp(int d);

/// Correlator functional with K equatorial settings per party at angles
/// pi*x/K and weights cos(sum of angles)/K^n; local bound from exhaustive
/// sign search (n <= 3, K <= 8).
BellFunctional plane_functional(int n, int K);

struct CatalogParams {
    int n = 0;
    int d = 0;
    int settings = 0;
};
BellFunctional catalog(const std::string& name, const CatalogParams& params);

/// Equatorial projective settings matching plane_functional.
MeasurementAssignment plane_assignment(int n, int K);

/// Fourier-basis qudit measurements for the CGLMP functional.
MeasurementAssignment cglmp_fourier_assignment(int d, const std::array<double, 4>& phases);
inline constexpr std::array<double, 4> kCglmpCanonicalPhases{0.0, 0.5, 0.25, -0.25};

/// Coordinate refinement of the Fourier phases on the maximally entangled
/// state; returns the best phases found and the functional value they reach.
struct CglmpSearchResult {
    std::array<double, 4> phases;
    double value;
};
CglmpSearchResult cglmp_optimize_phases(int d, int rounds = 3);

struct SeesawOptions {
    int restarts = 20;
    unsigned long seed = 0;
    int max_sweeps = 400;
    double plateau_tol = 1e-8;
    const MeasurementAssignment* warm_start = nullptr;
};

struct SeesawResult {
    MeasurementAssignment assignment;
    double value = 0.0;
};

/// Alternating per-party optimization of dichotomic measurements for a fixed
/// state and functional. Monotone per update; best over random restarts. No
/// global-optimality claim.
SeesawResult seesaw(const DensityState& state, const Scenario& scenario,
                    const BellFunctional& f, const SeesawOptions& opts = {});

struct SearchOptions {
    int outer_iterations = 40;
    int seesaw_restarts = 10;
    unsigned long seed = 0;
    double target_v_star = 1.0 - 1e-3;
};

struct SearchResult {
    MeasurementAssignment assignment;
    Behavior behavior;
    MembershipVerdict verdict;
    int iterations = 0;
};

/// Alternates seesaw over a functional with the membership LP: the dual exit
/// facet of the current behavior becomes the next seesaw objective. Stops
/// when v* drops below the target or the iteration budget runs out.
SearchResult nonlocality_search(const DensityState& state, const Scenario& scenario,
                                const VertexSet& vertices, const BellFunctional& start,
                                const SearchOptions& opts = {});

}  // namespace bellnet
