#include "conres/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace conres {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double scene_scale(const PolygonScene& scene) {
    Vec2 lo = scene.vertices.front(), hi = lo;
    for (const auto& v : scene.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return std::max((hi - lo).norm(), 1.0);
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

bool on_boundary(const Vec2& p, const std::vector<Vec2>& verts, double tol) {
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_segment_distance(p, verts[i], verts[(i + 1) % n]) < tol)
            return true;
    return false;
}

bool strictly_inside(const Vec2& p, const std::vector<Vec2>& verts, double tol) {
    if (on_boundary(p, verts, tol)) return false;
    // crossing parity
    bool inside = false;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = verts[i];
        const Vec2& b = verts[(i + 1) % n];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double xint = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
            if (p.x() < xint) inside = !inside;
        }
    }
    return inside;
}

// The open segment a->b avoids the open polygon interior. Cut the segment
// at every edge-line crossing and test one point per piece.
bool leg_avoids_interior(const Vec2& a, const Vec2& b,
                         const std::vector<Vec2>& verts, double tol) {
    std::vector<double> cuts = {0.0, 1.0};
    const Vec2 d = b - a;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = verts[i];
        const Vec2 e = verts[(i + 1) % n] - p;
        const double denom = cross(d, e);
        if (std::abs(denom) < 1e-15) continue;
        const double t = cross(p - a, e) / denom;
        const double u = cross(p - a, d) / denom;
        if (t > 0.0 && t < 1.0 && u > -0.05 && u < 1.05) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-12) continue;
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (strictly_inside(a + mid * d, verts, tol)) return false;
    }
    return true;
}

// A leg running exactly through some other vertex makes the geodesic
// non-generic; such candidates are dropped.
bool hits_third_cone(const Vec2& a, const Vec2& b,
                     const std::vector<Vec2>& verts, double tol) {
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    for (const auto& v : verts) {
        if ((v - a).norm() < tol || (v - b).norm() < tol) continue;
        const double t = (v - a).dot(d) / len2;
        if (t <= 0.0 || t >= 1.0) continue;
        if ((v - (a + t * d)).norm() < tol) return true;
    }
    return false;
}

// Angle of direction u at vertex i, measured from the wall toward the
// next vertex, rotating into the exterior wedge. Exterior directions land
// in [0, w].
double wedge_angle_of(const PolygonScene& scene, std::size_t i, const Vec2& u) {
    const std::size_t n = scene.vertices.size();
    const Vec2 wall = scene.vertices[(i + 1) % n] - scene.vertices[i];
    double a = std::atan2(wall.y(), wall.x()) - std::atan2(u.y(), u.x());
    while (a < 0.0) a += 2.0 * kPi;
    while (a >= 2.0 * kPi) a -= 2.0 * kPi;
    return a;
}

bool angle_in_wedge(double a, double w, double tol) {
    return a >= -tol && a <= w + tol;
}

Vec2 reflect_point(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 d = (b - a).normalized();
    const Vec2 r = p - a;
    return a + 2.0 * r.dot(d) * d - r;
}

Vec2 reflect_dir(const Vec2& u, const Vec2& a, const Vec2& b) {
    const Vec2 d = (b - a).normalized();
    return 2.0 * u.dot(d) * d - u;
}

struct LegPath {
    std::vector<Vec2> points;  // vertex, bounce points..., vertex
    double length = 0.0;
    Vec2 first_dir, last_dir;
};

// Ray-trace the folded-back candidate for edge sequence seq between
// vertices i and j. Returns false when any geometric check fails.
bool trace_reflected(const PolygonScene& scene, std::size_t i, std::size_t j,
                     const std::vector<int>& seq, double tol, LegPath& out) {
    const auto& verts = scene.vertices;
    const std::size_t n = verts.size();

    // Unfolded target: reflect j's vertex through the sequence back-to-front.
    Vec2 target = verts[j];
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        const Vec2& a = verts[*it];
        const Vec2& b = verts[(*it + 1) % n];
        target = reflect_point(target, a, b);
    }
    const Vec2 start = verts[i];
    const double total = (target - start).norm();
    if (total < tol) return false;

    Vec2 pos = start;
    Vec2 dir = (target - start) / total;
    out.points = {start};
    out.first_dir = dir;
    double travelled = 0.0;

    for (int e : seq) {
        const Vec2& a = verts[e];
        const Vec2 edge = verts[(e + 1) % n] - a;
        const double denom = cross(dir, edge);
        if (std::abs(denom) < 1e-14) return false;  // parallel: no bounce
        const double t = cross(a - pos, edge) / denom;
        const double u = cross(a - pos, dir) / denom;
        if (t < tol) return false;                        // bounce behind us
        const double edge_len = edge.norm();
        if (u * edge_len < tol || (1.0 - u) * edge_len < tol)
            return false;  // bounce at or beyond an edge endpoint
        const Vec2 hit = pos + t * dir;
        travelled += t;
        out.points.push_back(hit);
        pos = hit;
        dir = reflect_dir(dir, a, verts[(e + 1) % n]);
    }

    const double rest = (verts[j] - pos).norm();
    if (std::abs(travelled + rest - total) > tol) return false;
    if (rest < tol) return false;
    if ((verts[j] - pos).dot(dir) < 0.0) return false;
    if (((pos + rest * dir) - verts[j]).norm() > tol) return false;
    out.points.push_back(verts[j]);
    out.last_dir = dir;
    out.length = total;

    for (std::size_t k = 0; k + 1 < out.points.size(); ++k) {
        if (!leg_avoids_interior(out.points[k], out.points[k + 1], verts, tol))
            return false;
        if (hits_third_cone(out.points[k], out.points[k + 1], verts, tol))
            return false;
    }
    return true;
}

void sort_segments(std::vector<GeodesicSegment>& segs) {
    std::sort(segs.begin(), segs.end(),
              [](const GeodesicSegment& a, const GeodesicSegment& b) {
                  if (a.length != b.length) return a.length < b.length;
                  if (a.from_cone != b.from_cone) return a.from_cone < b.from_cone;
                  if (a.to_cone != b.to_cone) return a.to_cone < b.to_cone;
                  return a.reflection_edges < b.reflection_edges;
              });
}

GeodesicSegment reversed(const GeodesicSegment& s) {
    GeodesicSegment r = s;
    std::swap(r.from_cone, r.to_cone);
    std::swap(r.departure_angle, r.arrival_angle);
    std::reverse(r.reflection_edges.begin(), r.reflection_edges.end());
    return r;
}

}  // namespace

std::vector<GeodesicSegment> visibility_geodesics(const PolygonScene& scene) {
    const auto& verts = scene.vertices;
    const std::size_t n = verts.size();
    const double tol = 1e-9 * scene_scale(scene);
    const auto cones = cone_points(scene);

    std::vector<GeodesicSegment> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!leg_avoids_interior(verts[i], verts[j], verts, tol)) continue;
            if (hits_third_cone(verts[i], verts[j], verts, tol)) continue;
            const Vec2 d = verts[j] - verts[i];
            GeodesicSegment s;
            s.from_cone = static_cast<int>(i);
            s.to_cone = static_cast<int>(j);
            s.length = d.norm();
            s.departure_angle = wedge_angle_of(scene, i, d);
            s.arrival_angle = wedge_angle_of(scene, j, -d);
            if (!angle_in_wedge(s.departure_angle, cones[i].wedge_angle, tol) ||
                !angle_in_wedge(s.arrival_angle, cones[j].wedge_angle, tol))
                continue;
            out.push_back(std::move(s));
        }
    }
    sort_segments(out);
    return out;
}

std::vector<GeodesicSegment> reflected_geodesics(const PolygonScene& scene,
                                                 int max_reflections) {
    if (max_reflections > kHardReflectionCap)
        throw CapExceeded("reflection depth exceeds hard limit 12");
    if (max_reflections < 0)
        throw InvariantViolation("reflection cap must be nonnegative");

    auto out = visibility_geodesics(scene);
    const auto& verts = scene.vertices;
    const std::size_t n = verts.size();
    const double tol = 1e-9 * scene_scale(scene);
    const auto cones = cone_points(scene);

    // Edge sequences with consecutive entries distinct, depth-first.
    std::vector<int> seq;
    auto visit = [&](auto&& self) -> void {
        if (!seq.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    // Canonical representative: a path and its reversal are
                    // the same undirected segment.
                    const std::vector<int> rev(seq.rbegin(), seq.rend());
                    if (j < i || (j == i && rev < seq)) continue;
                    LegPath path;
                    if (!trace_reflected(scene, i, j, seq, tol, path)) continue;
                    GeodesicSegment s;
                    s.from_cone = static_cast<int>(i);
                    s.to_cone = static_cast<int>(j);
                    s.reflection_edges = seq;
                    s.length = path.length;
                    s.departure_angle = wedge_angle_of(scene, i, path.first_dir);
                    s.arrival_angle = wedge_angle_of(scene, j, -path.last_dir);
                    if (!angle_in_wedge(s.departure_angle, cones[i].wedge_angle, tol) ||
                        !angle_in_wedge(s.arrival_angle, cones[j].wedge_angle, tol))
                        continue;
                    out.push_back(std::move(s));
                }
            }
        }
        if (static_cast<int>(seq.size()) >= max_reflections) return;
        for (std::size_t e = 0; e < n; ++e) {
            if (!seq.empty() && seq.back() == static_cast<int>(e)) continue;
            seq.push_back(static_cast<int>(e));
            self(self);
            seq.pop_back();
        }
    };
    visit(visit);

    sort_segments(out);
    return out;
}

double link_separation(const ConePoint& cone, double arrival_angle,
                       double departure_angle) {
    const double w = cone.wedge_angle;
    if (!(arrival_angle > 0.0 && arrival_angle < w))
        throw AngleOutOfRange("arrival angle outside the open wedge");
    if (!(departure_angle > 0.0 && departure_angle < w))
        throw AngleOutOfRange("departure angle outside the open wedge");
    const double sum = arrival_angle + departure_angle;
    return std::min(sum, 2.0 * w - sum);
}

double d_max(const std::vector<GeodesicSegment>& segments) {
    if (segments.empty()) throw EmptyInput("no geodesic segments supplied");
    double best = 0.0;
    for (const auto& s : segments) best = std::max(best, s.length);
    return best;
}

DiffractiveChain build_chain(const PolygonScene& scene,
                             const std::vector<GeodesicSegment>& segments) {
    if (segments.empty()) throw EmptyInput("chain needs at least one segment");
    const auto cones = cone_points(scene);

    DiffractiveChain chain;
    chain.segments = segments;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
        if (segments[i].to_cone != segments[i + 1].from_cone)
            throw BrokenChain("segment endpoints do not chain");

    chain.closed = segments.back().to_cone == segments.front().from_cone;
    for (const auto& s : segments) chain.total_length += s.length;

    auto add_junction = [&](const GeodesicSegment& in, const GeodesicSegment& next) {
        const ConePoint& cone = cones.at(in.to_cone);
        chain.link_separations.push_back(
            link_separation(cone, in.arrival_angle, next.departure_angle));
        chain.junction_rhos.push_back(cone.link_length);
    };
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
        add_junction(segments[i], segments[i + 1]);
    if (chain.closed) add_junction(segments.back(), segments.front());

    chain.n_gamma = static_cast<int>(segments.size()) - 1 + (chain.closed ? 1 : 0);
    return chain;
}

MeanCycle max_mean_cycle(const Digraph& graph) {
    const int n = graph.node_count;
    if (n <= 0 || graph.edges.empty()) throw NoCycle("graph has no edges");
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    // F[k][v]: best walk of exactly k edges ending at v, any start.
    std::vector<std::vector<double>> F(n + 1, std::vector<double>(n, kNegInf));
    std::vector<std::vector<int>> parent(n + 1, std::vector<int>(n, -1));
    for (int v = 0; v < n; ++v) F[0][v] = 0.0;
    for (int k = 1; k <= n; ++k) {
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            const auto& ed = graph.edges[e];
            if (F[k - 1][ed.from] == kNegInf) continue;
            const double cand = F[k - 1][ed.from] + ed.weight;
            if (cand > F[k][ed.to]) {
                F[k][ed.to] = cand;
                parent[k][ed.to] = static_cast<int>(e);
            }
        }
    }

    double best = kNegInf;
    std::vector<std::pair<double, int>> per_vertex;  // (karp value, v)
    for (int v = 0; v < n; ++v) {
        if (F[n][v] == kNegInf) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            if (F[k][v] == kNegInf) continue;
            worst = std::min(worst, (F[n][v] - F[k][v]) / (n - k));
        }
        per_vertex.emplace_back(worst, v);
        best = std::max(best, worst);
    }
    if (per_vertex.empty()) throw NoCycle("graph is acyclic");

    std::sort(per_vertex.rbegin(), per_vertex.rend());
    const double tol = 1e-9 * std::max(1.0, std::abs(best));

    // Walk parents from a critical vertex; every repeat closes a cycle,
    // and one of them attains the optimal mean.
    for (const auto& [val, v0] : per_vertex) {
        if (val < best - tol) break;
        std::vector<int> walk_edges;
        int v = v0;
        for (int k = n; k >= 1; --k) {
            const int e = parent[k][v];
            if (e < 0) break;
            walk_edges.push_back(e);
            v = graph.edges[e].from;
        }
        // walk_edges is reversed (end to start); scan for node repeats.
        std::vector<int> nodes;
        nodes.push_back(v0);
        for (int e : walk_edges) nodes.push_back(graph.edges[e].from);
        for (std::size_t a = 0; a < nodes.size(); ++a) {
            for (std::size_t b = a + 1; b < nodes.size(); ++b) {
                if (nodes[a] != nodes[b]) continue;
                double total = 0.0;
                std::vector<Digraph::Edge> cyc;
                for (std::size_t e = a; e < b; ++e) {
                    cyc.push_back(graph.edges[walk_edges[e]]);
                    total += graph.edges[walk_edges[e]].weight;
                }
                const double mean = total / static_cast<double>(b - a);
                if (std::abs(mean - best) <= tol) {
                    std::reverse(cyc.begin(), cyc.end());
                    return {best, cyc};
                }
            }
        }
    }
    throw NumericalError("no witness cycle attains the optimal mean");
}

double d_plus_max(const PolygonScene& scene,
                  const std::vector<GeodesicSegment>& segments,
                  const JunctionPredicate& admissible) {
    const auto cones = cone_points(scene);

    // Nodes: both orientations of every segment.
    std::vector<GeodesicSegment> directed;
    for (const auto& s : segments) {
        directed.push_back(s);
        GeodesicSegment r = reversed(s);
        directed.push_back(std::move(r));
    }

    Digraph g;
    g.node_count = static_cast<int>(directed.size());
    for (int a = 0; a < g.node_count; ++a) {
        for (int b = 0; b < g.node_count; ++b) {
            const auto& in = directed[a];
            const auto& next = directed[b];
            if (in.to_cone != next.from_cone) continue;
            const ConePoint& cone = cones.at(in.to_cone);
            double d;
            try {
                d = link_separation(cone, in.arrival_angle, next.departure_angle);
            } catch (const AngleOutOfRange&) {
                continue;  // grazing junction: not diffractive
            }
            if (std::abs(d - kPi) < 1e-9) continue;  // geometric passage
            if (!admissible(cone.link_length, d)) continue;
            g.edges.push_back({a, b, next.length});
        }
    }

    try {
        return max_mean_cycle(g).mean;
    } catch (const NoCycle&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace conres
