#include "dotgroup/skeleton.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>

#include <json.hpp>

namespace dotgroup {

std::string to_string(EventKind kind) { return kind == EventKind::edge ? "edge" : "split"; }

KineticPolygon shrinking_polygon(const SimplePolygon& polygon) {
    const auto& pts = polygon.vertices();
    const std::size_t n = pts.size();
    KineticPolygon out;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = pts[(i + n - 1) % n];
        const Point2 next = pts[(i + 1) % n];
        MovingVertex v =
            make_moving_vertex(pts[i], normalized(pts[i] - prev), normalized(next - pts[i]), 0.0);
        v.tree_node = static_cast<int>(i);
        out.vertices.push_back(v);
    }
    return out;
}

KineticPolygon growing_polygon(const SliverPolygon& sliver) { return {sliver.vertices, 0.0}; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Roots of a + b s + c s^2 = 0, ascending.
std::vector<double> real_roots(double a, double b, double c) {
    std::vector<double> r;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) {
        return r;
    }
    if (std::abs(c) <= 1e-14 * scale) {
        if (std::abs(b) > 1e-14 * scale) {
            r.push_back(-a / b);
        }
        return r;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        if (disc > -1e-12 * b * b) {
            r.push_back(-b / (2.0 * c));
        }
        return r;
    }
    // Numerically stable pair.
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q != 0.0) {
        r.push_back(q / c);
        r.push_back(a / q);
    } else {
        r.push_back(0.0);
    }
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

std::optional<TimedPoint> edge_event_time(const MovingVertex& v, const MovingVertex& w,
                                          double t_now) {
    const Point2 pv = v.position(t_now);
    const Point2 pw = w.position(t_now);
    const Vec2 dp = pw - pv;
    const Vec2 dv = w.velocity() - v.velocity();
    const double tol = kGeomEps * std::max({1.0, norm(dp), norm(pv.vec())});
    const double dv2 = dot(dv, dv);
    if (norm(dp) <= tol) {
        return TimedPoint{t_now, pv};
    }
    if (dv2 <= 1e-24) {
        return std::nullopt;
    }
    const double s = -dot(dp, dv) / dv2;
    if (s < 0.0) {
        return std::nullopt;
    }
    const Vec2 gap = dp + dv * s;
    if (norm(gap) > tol) {
        return std::nullopt;
    }
    const double t = t_now + s;
    const Point2 a = v.position(t);
    const Point2 b = w.position(t);
    return TimedPoint{t, Point2(0.5 * (a.x() + b.x()), 0.5 * (a.y() + b.y()))};
}

std::optional<TimedPoint> split_event_time(const MovingVertex& v, const MovingVertex& edge_start,
                                           const MovingVertex& edge_end, double t_now) {
    if (!v.is_reflex()) {
        return std::nullopt;
    }
    const Point2 a0 = edge_start.position(t_now);
    const Point2 b0 = edge_end.position(t_now);
    const Point2 p0 = v.position(t_now);
    const Vec2 e0 = b0 - a0;
    const Vec2 ev = edge_end.velocity() - edge_start.velocity();
    const Vec2 f0 = p0 - a0;
    const Vec2 fv = v.velocity() - edge_start.velocity();
    const double scale = std::max({1.0, norm(e0), norm(f0)});
    const double tol = 1e-9 * scale;

    auto inside = [&](double s) {
        const Vec2 e = e0 + ev * s;
        const Vec2 f = f0 + fv * s;
        const double len2 = dot(e, e);
        if (std::abs(cross(e, f)) > tol * std::max(1.0, std::sqrt(len2))) {
            return false;
        }
        const double along = dot(f, e);
        return along >= -tol * std::sqrt(len2) && along <= len2 + tol * std::sqrt(len2);
    };

    std::vector<double> candidates{0.0};
    const double c0 = cross(e0, f0);
    const double c1 = cross(e0, fv) + cross(ev, f0);
    const double c2 = cross(ev, fv);
    if (std::max({std::abs(c0), std::abs(c1), std::abs(c2)}) <= tol * tol) {
        // The vertex runs along the supporting line; only the span matters.
        for (double r : real_roots(dot(f0, e0), dot(f0, ev) + dot(fv, e0), dot(fv, ev))) {
            candidates.push_back(r);
        }
        const Vec2 g0 = e0 - f0;
        const Vec2 gv = ev - fv;
        for (double r : real_roots(dot(g0, e0), dot(g0, ev) + dot(gv, e0), dot(gv, ev))) {
            candidates.push_back(r);
        }
    } else {
        for (double r : real_roots(c0, c1, c2)) {
            candidates.push_back(r);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    for (double s : candidates) {
        if (s < 0.0) {
            continue;
        }
        if (inside(s)) {
            return TimedPoint{t_now + s, v.position(t_now + s)};
        }
    }
    return std::nullopt;
}

namespace {

struct Line {
    Vec2 dir;
    Vec2 normal;
    double offset = 0.0;  // normal . x == offset + t
};

struct SplitCandidate {
    double time = kInf;
    int a = kNoVertex;  // hit edge runs a -> b
    int b = kNoVertex;
};

struct Node {
    int prev = kNoVertex;
    int next = kNoVertex;
    int comp = -1;
    int in_line = -1;
    int out_line = -1;
    bool alive = false;
    std::uint32_t edge_stamp = 0;
    std::uint32_t split_stamp = 0;
    SplitCandidate split;
};

struct QueueItem {
    double time;
    int kind;  // 0 split, 1 edge: splits win ties
    int vertex;
    std::uint32_t stamp;

    bool operator>(const QueueItem& o) const {
        if (time != o.time) return time > o.time;
        if (kind != o.kind) return kind > o.kind;
        return vertex > o.vertex;
    }
};

class Simulation {
public:
    explicit Simulation(const KineticPolygon& input);
    OffsetPolygonSet run();

private:
    Point2 pos(int x, double t) const { return out_.vertices[x].position(t); }
    Vec2 vel(int x) const { return out_.vertices[x].velocity(); }
    bool collapsed(int x) const { return out_.vertices[x].is_collapsed(); }

    int new_vertex(Point2 at, int in_line, int out_line, double t, int pi_a, int pi_b);
    void kill(int x, double t);
    std::vector<int> walk(int start) const;

    double edge_time(int x) const;
    SplitCandidate best_split_against(int r, int a) const;
    void schedule_edge(int x);
    void schedule_split_full(int r);
    void offer_split(int r, int a);
    void refresh_component(int start, std::span<const int> changed_edges, std::span<const int> dead);

    void handle_edge(int x, double t);
    void handle_split(int x, const SplitCandidate& c, double t);
    void settle(std::vector<int> chain, double t, int event);

    OffsetPolygonSet out_;
    std::vector<Node> nodes_;
    std::vector<Line> lines_;
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue_;
    double now_ = 0.0;
    double len_eps_ = kGeomEps;
    double pinch_eps_ = 1e-7;
    double extent_ = 1.0;
    int next_comp_ = 1;
};

Simulation::Simulation(const KineticPolygon& input) {
    const std::size_t m = input.vertices.size();
    if (m < 3) {
        throw GeometryError("kinetic polygon needs at least 3 vertices");
    }
    now_ = input.creation_time;
    out_.vertices = input.vertices;
    out_.initial_count = m;
    nodes_.resize(m);

    double extent = 1.0;
    for (const MovingVertex& v : input.vertices) {
        const Point2 p = v.position(now_);
        extent = std::max({extent, std::abs(p.x()), std::abs(p.y())});
    }
    len_eps_ = kGeomEps * extent;
    pinch_eps_ = 1e-7 * extent;
    extent_ = extent;

    for (std::size_t i = 0; i < m; ++i) {
        const MovingVertex& v = input.vertices[i];
        Line l;
        l.dir = v.out_dir;
        l.normal = left_normal(l.dir);
        l.offset = dot(l.normal, v.position(now_).vec()) - now_;
        lines_.push_back(l);
        Node& nd = nodes_[i];
        nd.prev = static_cast<int>((i + m - 1) % m);
        nd.next = static_cast<int>((i + 1) % m);
        nd.comp = 0;
        nd.alive = true;
        nd.out_line = static_cast<int>(i);
        nd.in_line = static_cast<int>((i + m - 1) % m);
    }
}

int Simulation::new_vertex(Point2 at, int in_line, int out_line, double t, int pi_a, int pi_b) {
    MovingVertex v = make_moving_vertex(at, lines_[in_line].dir, lines_[out_line].dir, t);
    v.pi_a = pi_a;
    v.pi_b = pi_b;
    out_.vertices.push_back(v);
    Node nd;
    nd.in_line = in_line;
    nd.out_line = out_line;
    nd.alive = true;
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size() - 1);
}

void Simulation::kill(int x, double t) {
    nodes_[x].alive = false;
    const MovingVertex& v = out_.vertices[x];
    const Point2 end = v.position(t);
    if (distance(v.origin, end) > len_eps_) {
        out_.skeleton_arcs.push_back({v.origin, end});
    }
}

std::vector<int> Simulation::walk(int start) const {
    std::vector<int> ring;
    int x = start;
    do {
        ring.push_back(x);
        x = nodes_[x].next;
    } while (x != start);
    return ring;
}

double Simulation::edge_time(int x) const {
    const int y = nodes_[x].next;
    const Line& l = lines_[nodes_[x].out_line];
    const double len0 = dot(pos(y, now_) - pos(x, now_), l.dir);
    const double rate = dot(vel(y) - vel(x), l.dir);
    double t = kInf;
    if (len0 <= len_eps_) {
        if (len0 < -len_eps_ || rate <= 0.0) {
            t = now_;
        }
    } else if (rate < -1e-12) {
        t = now_ + len0 / -rate;
    }
    if (t != kInf && (collapsed(x) || collapsed(y)) && t > now_ + kEventTimeEps) {
        // A collapsed vertex only closes out what coincides with it right now.
        t = kInf;
    }
    return t;
}

SplitCandidate Simulation::best_split_against(int r, int a) const {
    const int b = nodes_[a].next;
    const Node& nr = nodes_[r];
    if (a == r || b == r) {
        return {};
    }
    const Line& l = lines_[nodes_[a].out_line];
    const double d0 = dot(l.normal, pos(r, now_).vec()) - (l.offset + now_);
    const double rate = dot(l.normal, vel(r)) - 1.0;
    if (d0 < -len_eps_ || rate >= -1e-12) {
        return {};
    }
    const double t = d0 <= 0.0 ? now_ : now_ + d0 / -rate;
    if (!std::isfinite(t)) {
        throw GeometryError("non-finite split event time");
    }
    const Point2 q = pos(r, t);
    const Point2 pa = pos(a, t);
    const Point2 pb = pos(b, t);
    const double len = dot(pb - pa, l.dir);
    if (len < -len_eps_) {
        return {};
    }
    const double along = dot(q - pa, l.dir);
    if (along < -pinch_eps_ || along > len + pinch_eps_) {
        return {};
    }
    const bool at_a = distance(q, pa) <= pinch_eps_;
    const bool at_b = distance(q, pb) <= pinch_eps_;
    // Touching a neighbour's far end is that neighbour's edge event.
    if ((a == nr.next && at_a) || (b == nr.prev && at_b)) {
        return {};
    }
    if (t - now_ <= kEventTimeEps && (at_a || at_b)) {
        // Vertices that coincide right now (tree nodes of the sliver, say) only
        // collide if r is about to move inside the edge's span.
        const double dt = 1e-6 * extent_;
        const Point2 q2 = pos(r, now_ + dt);
        const Point2 pa2 = pos(a, now_ + dt);
        const double along2 = dot(q2 - pa2, l.dir);
        const double len2 = dot(pos(b, now_ + dt) - pa2, l.dir);
        const double margin = 1e-2 * dt;
        if ((at_a && along2 <= margin) || (at_b && along2 >= len2 - margin)) {
            return {};
        }
    }
    return {t, a, b};
}

void Simulation::schedule_edge(int x) {
    Node& nd = nodes_[x];
    ++nd.edge_stamp;
    const double t = edge_time(x);
    if (!std::isfinite(t)) {
        if (t != kInf) {
            throw GeometryError("non-finite edge event time");
        }
        return;
    }
    queue_.push({t, 1, x, nd.edge_stamp});
}

void Simulation::schedule_split_full(int r) {
    Node& nr = nodes_[r];
    ++nr.split_stamp;
    nr.split = {};
    if (!out_.vertices[r].is_reflex()) {
        return;
    }
    for (int a = nr.next; a != nr.prev; a = nodes_[a].next) {
        const SplitCandidate c = best_split_against(r, a);
        if (c.time < nr.split.time || (c.time == nr.split.time && c.a < nr.split.a)) {
            nr.split = c;
        }
    }
    if (nr.split.time != kInf) {
        queue_.push({nr.split.time, 0, r, nr.split_stamp});
    }
}

void Simulation::offer_split(int r, int a) {
    Node& nr = nodes_[r];
    const int b = nodes_[a].next;
    if (a == r || b == r) {
        return;
    }
    const SplitCandidate c = best_split_against(r, a);
    if (c.time < nr.split.time || (c.time == nr.split.time && c.a < nr.split.a)) {
        nr.split = c;
        ++nr.split_stamp;
        queue_.push({c.time, 0, r, nr.split_stamp});
    }
}

void Simulation::refresh_component(int start, std::span<const int> changed_edges,
                                   std::span<const int> dead) {
    const int comp = nodes_[start].comp;
    for (int r : walk(start)) {
        if (!out_.vertices[r].is_reflex()) {
            continue;
        }
        const SplitCandidate& c = nodes_[r].split;
        bool stale = false;
        if (c.time != kInf) {
            stale = !nodes_[c.a].alive || !nodes_[c.b].alive || nodes_[c.a].next != c.b ||
                    nodes_[c.a].comp != comp;
            for (int d : dead) {
                stale = stale || c.a == d || c.b == d;
            }
            for (int e : changed_edges) {
                stale = stale || c.a == e;
            }
        }
        if (stale) {
            schedule_split_full(r);
            continue;
        }
        for (int e : changed_edges) {
            offer_split(r, e);
        }
    }
}

void Simulation::settle(std::vector<int> chain, double t, int event) {
    const int k = static_cast<int>(chain.size());
    for (int i = 0; i < k; ++i) {
        nodes_[chain[i]].next = chain[(i + 1) % k];
        nodes_[chain[i]].prev = chain[(i + k - 1) % k];
    }
    if (k < 3) {
        for (int x : chain) {
            kill(x, t);
        }
        if (k == 2) {
            const Point2 a = pos(chain[0], t);
            const Point2 b = pos(chain[1], t);
            if (distance(a, b) > len_eps_) {
                out_.skeleton_arcs.push_back({a, b});
            }
        }
        return;
    }
    const int comp = next_comp_++;
    for (int x : chain) {
        nodes_[x].comp = comp;
    }
    out_.polygons.push_back({chain, t, event});
}

void Simulation::handle_edge(int x, double t) {
    const int y = nodes_[x].next;
    const int p = nodes_[x].prev;
    const int s = nodes_[y].next;
    const Point2 a = pos(x, t);
    const Point2 b = pos(y, t);
    const Point2 at(0.5 * (a.x() + b.x()), 0.5 * (a.y() + b.y()));

    const int nx = new_vertex(at, nodes_[x].in_line, nodes_[y].out_line, t, x, y);
    out_.events.push_back({t, EventKind::edge, {x, y}, {nx}, at});
    const int event = static_cast<int>(out_.events.size() - 1);
    kill(x, t);
    kill(y, t);

    std::vector<int> chain{nx};
    if (s != x) {
        for (int z = s; z != x; z = nodes_[z].next) {
            chain.push_back(z);
        }
    }
    // chain = nx, s, ..., p
    settle(chain, t, event);
    if (chain.size() < 3) {
        return;
    }
    schedule_edge(p);
    schedule_edge(nx);
    schedule_split_full(nx);
    const std::array<int, 2> changed{p, nx};
    const std::array<int, 2> dead{x, y};
    refresh_component(nx, changed, dead);
}

void Simulation::handle_split(int x, const SplitCandidate& c, double t) {
    const int u = nodes_[x].prev;
    const int w = nodes_[x].next;
    const Point2 q = pos(x, t);

    int hit = kNoVertex;
    const bool near_a = c.a != w && distance(q, pos(c.a, t)) <= pinch_eps_;
    const bool near_b = c.b != u && distance(q, pos(c.b, t)) <= pinch_eps_;
    if (near_a && near_b) {
        hit = std::min(c.a, c.b);
    } else if (near_a) {
        hit = c.a;
    } else if (near_b) {
        hit = c.b;
    }

    std::vector<int> left;
    std::vector<int> right;
    std::vector<int> dead{x};
    Event ev;
    ev.time = t;
    ev.kind = EventKind::split;
    ev.location = q;
    if (hit != kNoVertex) {
        // Two wavefront vertices meet: pinch the polygon at the shared point.
        const int l1 = new_vertex(q, nodes_[hit].in_line, nodes_[x].out_line, t, hit, x);
        const int r1 = new_vertex(q, nodes_[x].in_line, nodes_[hit].out_line, t, x, hit);
        left.push_back(l1);
        for (int z = w; z != hit; z = nodes_[z].next) left.push_back(z);
        right.push_back(r1);
        for (int z = nodes_[hit].next; z != x; z = nodes_[z].next) right.push_back(z);
        ev.participants = {x, hit};
        ev.created = {l1, r1};
        dead.push_back(hit);
    } else {
        const int l1 = new_vertex(q, nodes_[c.a].out_line, nodes_[x].out_line, t, x, kNoVertex);
        const int r1 = new_vertex(q, nodes_[x].in_line, nodes_[c.a].out_line, t, x, kNoVertex);
        left.push_back(l1);
        for (int z = w; z != c.b; z = nodes_[z].next) left.push_back(z);
        right.push_back(r1);
        for (int z = c.b; z != x; z = nodes_[z].next) right.push_back(z);
        ev.participants = {x, c.a, c.b};
        ev.created = {l1, r1};
    }
    out_.events.push_back(ev);
    const int event = static_cast<int>(out_.events.size() - 1);
    for (int d : dead) {
        kill(d, t);
    }

    for (std::vector<int>* part : {&left, &right}) {
        const int head = part->front();
        const int tail = part->back();
        settle(*part, t, event);
        if (part->size() < 3) {
            continue;
        }
        schedule_edge(tail);
        schedule_edge(head);
        schedule_split_full(head);
        const std::array<int, 2> changed{tail, head};
        refresh_component(head, changed, dead);
    }
}

OffsetPolygonSet Simulation::run() {
    const int m = static_cast<int>(out_.initial_count);
    {
        std::vector<int> ring(m);
        for (int i = 0; i < m; ++i) ring[i] = i;
        out_.polygons.push_back({ring, now_, -1});
    }
    for (int i = 0; i < m; ++i) {
        schedule_edge(i);
    }
    for (int i = 0; i < m; ++i) {
        schedule_split_full(i);
    }

    const std::size_t limit = 8 * static_cast<std::size_t>(m) + 64;
    while (!queue_.empty()) {
        // Gather everything due within the tie window, then take the best.
        std::vector<QueueItem> due;
        const double head = queue_.top().time;
        while (!queue_.empty() && queue_.top().time <= head + kEventTimeEps) {
            const QueueItem it = queue_.top();
            queue_.pop();
            const Node& nd = nodes_[it.vertex];
            const bool valid =
                nd.alive && (it.kind == 1 ? nd.edge_stamp == it.stamp : nd.split_stamp == it.stamp);
            if (valid) {
                due.push_back(it);
            }
        }
        if (due.empty()) {
            continue;
        }
        auto best = std::min_element(due.begin(), due.end(), [](const QueueItem& a, const QueueItem& b) {
            if (a.kind != b.kind) return a.kind < b.kind;
            return a.vertex < b.vertex;
        });
        const QueueItem it = *best;
        due.erase(best);
        for (const QueueItem& rest : due) {
            queue_.push(rest);
        }

        if (!std::isfinite(it.time)) {
            throw GeometryError("non-finite event time");
        }
        now_ = std::max(now_, it.time);
        if (it.kind == 1) {
            handle_edge(it.vertex, now_);
        } else {
            const SplitCandidate c = nodes_[it.vertex].split;
            const bool ok = nodes_[c.a].alive && nodes_[c.b].alive && nodes_[c.a].next == c.b &&
                            nodes_[c.a].comp == nodes_[it.vertex].comp;
            if (!ok) {
                schedule_split_full(it.vertex);
                continue;
            }
            handle_split(it.vertex, c, now_);
        }
        if (out_.events.size() > limit) {
            throw GeometryError("event limit exceeded; kinetic polygon is inconsistent");
        }
    }

    // Unbounded vertices are only traced up to the last event.
    const double end = now_;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].alive && out_.vertices[i].birth_time < end) {
            const MovingVertex& v = out_.vertices[i];
            const Point2 p = v.position(end);
            if (distance(v.origin, p) > len_eps_) {
                out_.skeleton_arcs.push_back({v.origin, p});
            }
        }
    }
    return std::move(out_);
}

}  // namespace

OffsetPolygonSet offset_polygons(const KineticPolygon& polygon) {
    Simulation sim(polygon);
    return sim.run();
}

std::vector<SkeletonArc> straight_skeleton(const KineticPolygon& polygon) {
    return offset_polygons(polygon).skeleton_arcs;
}

void write_event_log(std::ostream& out, const OffsetPolygonSet& result) {
    for (const Event& e : result.events) {
        nlohmann::ordered_json j;
        j["time"] = e.time;
        j["kind"] = to_string(e.kind);
        j["participants"] = e.participants;
        j["created"] = e.created;
        j["location"] = {e.location.x(), e.location.y()};
        out << j.dump() << '\n';
    }
}

}  // namespace dotgroup
