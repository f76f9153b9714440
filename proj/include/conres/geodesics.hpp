#pragma once

#include <functional>
#include <vector>

#include "conres/scene.hpp"

namespace conres {

struct GeodesicSegment {
    int from_cone = -1;
    int to_cone = -1;
    std::vector<int> reflection_edges;  // ordered edge indices; empty = straight
    double length = 0.0;
    // Angles measured at the respective vertex from the wall v -> next(v),
    // rotating into the exterior wedge; values in [0, w] (0 or w = grazing).
    double departure_angle = 0.0;
    double arrival_angle = 0.0;
};

struct DiffractiveChain {
    std::vector<GeodesicSegment> segments;
    bool closed = false;
    double total_length = 0.0;
    // One entry per diffracting junction; for a closed chain the junction
    // at the shared first/last cone is included (counted once).
    std::vector<double> link_separations;
    std::vector<double> junction_rhos;  // link length at each junction
    int n_gamma = 0;
};

// All straight segments between distinct vertices whose open interior
// avoids the open polygon interior (grazing along an edge is allowed).
// One segment per unordered pair, from_cone < to_cone, sorted by
// (length, from, to).
std::vector<GeodesicSegment> visibility_geodesics(const PolygonScene& scene);

// Straight plus billiard-reflected segments found by unfolding the
// exterior across edge sequences of length <= max_reflections. Hard limit
// 12 (CapExceeded above it); default cap used by callers is 3.
std::vector<GeodesicSegment> reflected_geodesics(const PolygonScene& scene,
                                                 int max_reflections);

inline constexpr int kDefaultReflectionCap = 3;
inline constexpr int kHardReflectionCap = 12;

// Link-circle distance on the doubled cone between the arrival and
// departure directions: d = min(theta_in + theta_out, 2w - theta_in -
// theta_out), in (0, rho/2]. Angles must lie in the open wedge (0, w).
double link_separation(const ConePoint& cone, double arrival_angle,
                       double departure_angle);

// Maximum length over the supplied segments (a lower bound for the true
// supremum when enumeration is capped).
double d_max(const std::vector<GeodesicSegment>& segments);

// Assemble consecutive segments into a chain, computing per-junction link
// separations and the diffraction count n_gamma (interior junctions, plus
// one when the chain closes up).
DiffractiveChain build_chain(const PolygonScene& scene,
                             const std::vector<GeodesicSegment>& segments);

struct Digraph {
    int node_count = 0;
    struct Edge {
        int from = 0, to = 0;
        double weight = 0.0;
    };
    std::vector<Edge> edges;
};

struct MeanCycle {
    double mean = 0.0;
    std::vector<Digraph::Edge> cycle;
};

// Maximum mean-weight directed cycle (Karp) with a witness cycle.
// Throws NoCycle when the graph is acyclic.
MeanCycle max_mean_cycle(const Digraph& graph);

// Decides whether a junction with link length rho and separation s keeps
// a chain inside SD+ (strictly diffractive with nonzero kernel).
using JunctionPredicate = std::function<bool(double rho, double s)>;

// sup t/N over closed chains through admissible junctions, computed as
// the max cycle mean on the graph of directed segments (edge weight =
// successor length, one diffraction per edge). Returns -infinity when no
// admissible cycle exists.
double d_plus_max(const PolygonScene& scene,
                  const std::vector<GeodesicSegment>& segments,
                  const JunctionPredicate& admissible);

}  // namespace conres
