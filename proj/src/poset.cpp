#include "poset.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace birow {

namespace {
constexpr int kMaxElements = 10000;

void reachability_dfs(int v, const std::vector<std::vector<int>>& adj, std::vector<bool>& seen) {
    for (int u : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = true;
            reachability_dfs(u, adj, seen);
        }
    }
}
}  // namespace

/// Shared builder: validates the edge list as a DAG, transitively reduces it,
/// and fills every derived table.
Poset poset_from_edges(std::vector<std::string> names,
                       const std::vector<std::pair<int, int>>& edges) {
    const int n = static_cast<int>(names.size());
    if (n > kMaxElements) throw std::invalid_argument("poset too large: limit is 10000 elements");
    {
        std::set<std::string> uniq(names.begin(), names.end());
        if (static_cast<int>(uniq.size()) != n)
            throw std::invalid_argument("duplicate element names");
    }

    std::vector<std::set<int>> raw(static_cast<std::size_t>(n));
    for (auto [x, y] : edges) {
        if (x < 0 || x >= n || y < 0 || y >= n) throw std::invalid_argument("edge endpoint out of range");
        if (x == y) throw std::invalid_argument("cycle detected: self-relation on " + names[static_cast<std::size_t>(x)]);
        raw[static_cast<std::size_t>(x)].insert(y);
    }

    // Kahn cycle check on the raw digraph.
    {
        std::vector<int> indeg(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v)
            for (int u : raw[static_cast<std::size_t>(v)]) ++indeg[static_cast<std::size_t>(u)];
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
        int taken = 0;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++taken;
            for (int u : raw[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(u)] == 0) queue.push_back(u);
        }
        if (taken != n) throw std::invalid_argument("cycle detected in cover relations");
    }

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)].assign(raw[static_cast<std::size_t>(v)].begin(), raw[static_cast<std::size_t>(v)].end());

    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        seen[static_cast<std::size_t>(v)] = true;
        reachability_dfs(v, adj, seen);
        leq[static_cast<std::size_t>(v)] = std::move(seen);
    }

    Poset P;
    P.n_ = n;
    P.names_ = std::move(names);
    P.up_.assign(static_cast<std::size_t>(n), {});
    P.down_.assign(static_cast<std::size_t>(n), {});
    P.leq_ = std::move(leq);
    for (int x = 0; x < n; ++x) {
        for (int y : adj[static_cast<std::size_t>(x)]) {
            // (x,y) is a cover unless some other successor of x lies below y.
            bool implied = false;
            for (int z : adj[static_cast<std::size_t>(x)]) {
                if (z != y && P.leq_[static_cast<std::size_t>(z)][static_cast<std::size_t>(y)]) {
                    implied = true;
                    break;
                }
            }
            if (!implied) {
                P.up_[static_cast<std::size_t>(x)].push_back(y);
                P.down_[static_cast<std::size_t>(y)].push_back(x);
            }
        }
    }
    for (auto& lst : P.up_) std::sort(lst.begin(), lst.end());
    for (auto& lst : P.down_) std::sort(lst.begin(), lst.end());
    return P;
}

int Poset::index_of(const std::string& name) const {
    for (int v = 0; v < n_; ++v)
        if (names_[static_cast<std::size_t>(v)] == name) return v;
    return -1;
}

bool Poset::is_cover(int x, int y) const {
    const auto& ups = up_covers(x);
    return std::find(ups.begin(), ups.end(), y) != ups.end();
}

std::vector<int> Poset::minimal_elements() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (down_[static_cast<std::size_t>(v)].empty()) out.push_back(v);
    return out;
}

std::vector<int> Poset::maximal_elements() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (up_[static_cast<std::size_t>(v)].empty()) out.push_back(v);
    return out;
}

std::vector<int> Poset::linear_extension() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
    for (int v = 0; v < n_; ++v) indeg[static_cast<std::size_t>(v)] = static_cast<int>(down_[static_cast<std::size_t>(v)].size());
    // Available ids keyed by name so the pick is deterministic.
    std::map<std::string, int> ready;
    for (int v = 0; v < n_; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) ready.emplace(names_[static_cast<std::size_t>(v)], v);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n_));
    while (!ready.empty()) {
        int v = ready.begin()->second;
        ready.erase(ready.begin());
        out.push_back(v);
        for (int u : up_[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(u)] == 0) ready.emplace(names_[static_cast<std::size_t>(u)], u);
    }
    return out;
}

std::vector<std::vector<int>> Poset::all_linear_extensions(long cap, bool* truncated) const {
    std::vector<std::vector<int>> out;
    if (truncated) *truncated = false;
    std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
    for (int v = 0; v < n_; ++v) indeg[static_cast<std::size_t>(v)] = static_cast<int>(down_[static_cast<std::size_t>(v)].size());
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(n_));
    bool stop = false;

    auto recurse = [&](auto&& self) -> void {
        if (stop) return;
        if (static_cast<int>(prefix.size()) == n_) {
            if (static_cast<long>(out.size()) == cap) {
                if (truncated) *truncated = true;
                stop = true;
                return;
            }
            out.push_back(prefix);
            return;
        }
        std::map<std::string, int> ready;
        for (int v = 0; v < n_; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) ready.emplace(names_[static_cast<std::size_t>(v)], v);
        for (const auto& [name, v] : ready) {
            (void)name;
            prefix.push_back(v);
            indeg[static_cast<std::size_t>(v)] = -1;
            for (int u : up_[static_cast<std::size_t>(v)]) --indeg[static_cast<std::size_t>(u)];
            self(self);
            for (int u : up_[static_cast<std::size_t>(v)]) ++indeg[static_cast<std::size_t>(u)];
            indeg[static_cast<std::size_t>(v)] = 0;
            prefix.pop_back();
            if (stop) return;
        }
    };
    recurse(recurse);
    return out;
}

bool Poset::is_linear_extension(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != n_) return false;
    std::vector<int> pos(static_cast<std::size_t>(n_), -1);
    for (int i = 0; i < n_; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n_ || pos[static_cast<std::size_t>(v)] != -1) return false;
        pos[static_cast<std::size_t>(v)] = i;
    }
    for (int v = 0; v < n_; ++v)
        for (int u : up_[static_cast<std::size_t>(v)])
            if (pos[static_cast<std::size_t>(v)] > pos[static_cast<std::size_t>(u)]) return false;
    return true;
}

nlohmann::json Poset::to_json() const {
    nlohmann::json j;
    j["elements"] = names_;
    nlohmann::json covers = nlohmann::json::array();
    for (int v = 0; v < n_; ++v)
        for (int u : up_[static_cast<std::size_t>(v)])
            covers.push_back({names_[static_cast<std::size_t>(v)], names_[static_cast<std::size_t>(u)]});
    j["covers"] = covers;
    return j;
}

Poset Poset::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array())
        throw std::invalid_argument("poset json: missing \"elements\" array");
    if (!j.contains("covers") || !j.at("covers").is_array())
        throw std::invalid_argument("poset json: missing \"covers\" array");
    std::vector<std::string> names;
    for (const auto& e : j.at("elements")) {
        if (!e.is_string()) throw std::invalid_argument("poset json: \"elements\" entries must be strings");
        names.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : j.at("covers")) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
            throw std::invalid_argument("poset json: \"covers\" entries must be [x, y] name pairs");
        covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
    return from_covers(names, covers);
}

Poset Poset::from_covers(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
    std::map<std::string, int> id;
    for (int v = 0; v < static_cast<int>(names.size()); ++v) {
        if (!id.emplace(names[static_cast<std::size_t>(v)], v).second)
            throw std::invalid_argument("duplicate element name '" + names[static_cast<std::size_t>(v)] + "'");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [x, y] : covers) {
        auto ix = id.find(x), iy = id.find(y);
        if (ix == id.end()) throw std::invalid_argument("cover mentions unknown element '" + x + "'");
        if (iy == id.end()) throw std::invalid_argument("cover mentions unknown element '" + y + "'");
        edges.emplace_back(ix->second, iy->second);
    }
    return poset_from_edges(names, edges);
}

namespace {

std::string coord_name(int i, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(k) + ")";
}

/// Induced subposet of [p] x [p] on the coordinates passing pred, with the
/// full comparability relation handed to the builder for reduction.
template <typename Pred>
Poset grid_subposet(int p, Pred pred) {
    std::vector<std::pair<int, int>> coords;
    for (int i = 1; i <= p; ++i)
        for (int k = 1; k <= p; ++k)
            if (pred(i, k)) coords.emplace_back(i, k);
    std::vector<std::string> names;
    names.reserve(coords.size());
    for (auto [i, k] : coords) names.push_back(coord_name(i, k));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < static_cast<int>(coords.size()); ++a)
        for (int b = 0; b < static_cast<int>(coords.size()); ++b)
            if (a != b && coords[static_cast<std::size_t>(a)].first <= coords[static_cast<std::size_t>(b)].first &&
                coords[static_cast<std::size_t>(a)].second <= coords[static_cast<std::size_t>(b)].second)
                edges.emplace_back(a, b);
    return poset_from_edges(std::move(names), edges);
}

}  // namespace

int rect_id(int p, int q, int i, int j) {
    if (i < 1 || i > p || j < 1 || j > q) throw std::invalid_argument("rectangle coordinate out of range");
    return (i - 1) * q + (j - 1);
}

Poset rectangle(int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("rectangle: p and q must be >= 1");
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(p) * q);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) {
            names.push_back(coord_name(i, j));
            if (i < p) edges.emplace_back(rect_id(p, q, i, j), rect_id(p, q, i + 1, j));
            if (j < q) edges.emplace_back(rect_id(p, q, i, j), rect_id(p, q, i, j + 1));
        }
    return poset_from_edges(std::move(names), edges);
}

Poset triangle_delta(int p) {
    if (p < 1) throw std::invalid_argument("triangle_delta: p must be >= 1");
    return grid_subposet(p, [p](int i, int k) { return i + k > p + 1; });
}

Poset triangle_nabla(int p) {
    if (p < 1) throw std::invalid_argument("triangle_nabla: p must be >= 1");
    return grid_subposet(p, [p](int i, int k) { return i + k < p + 1; });
}

Poset triangle_right(int p) {
    if (p < 1) throw std::invalid_argument("triangle_right: p must be >= 1");
    return grid_subposet(p, [](int i, int k) { return i <= k; });
}

Poset trapezoid(int p, int s) {
    if (p <= 1) throw std::invalid_argument("trapezoid: p must be > 1");
    if (s < 0) throw std::invalid_argument("trapezoid: s must be >= 0");
    return grid_subposet(p, [p, s](int i, int k) { return i + k > p + 1 && i <= k && k >= s; });
}

Poset claw() {
    return Poset::from_covers({"p", "q1", "q2", "q3"}, {{"p", "q1"}, {"p", "q2"}, {"p", "q3"}});
}

Poset random_poset(std::uint64_t seed, int max_n) {
    if (max_n < 2) throw std::invalid_argument("random_poset: max_n must be >= 2");
    SplitMix64 rng(seed);
    int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) names.push_back("x" + std::to_string(v));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.below(2) == 0) edges.emplace_back(i, j);
    return poset_from_edges(std::move(names), edges);
}

std::pair<int, int> antipode(int p, int q, std::pair<int, int> x) {
    auto [i, j] = x;
    if (i < 1 || i > p || j < 1 || j > q) throw std::invalid_argument("antipode: coordinate out of range");
    return {p + 1 - i, q + 1 - j};
}

Poset Poset::from_spec(const std::string& spec) {
    const auto bad = [&spec](const std::string& why) {
        return std::invalid_argument("bad poset spec '" + spec + "': " + why);
    };
    const auto int_after = [&](std::size_t from, std::size_t to) -> long {
        const std::string part = spec.substr(from, to - from);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw bad("expected a nonnegative integer, got '" + part + "'");
        return std::stol(part);
    };
    if (spec == "claw") return claw();
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw bad("expected rect:PxQ | delta:P | nabla:P | tria:P | trap:P,S | claw");
    const std::string family = spec.substr(0, colon);
    if (family == "rect") {
        auto x = spec.find('x', colon + 1);
        if (x == std::string::npos) throw bad("expected rect:PxQ");
        long p = int_after(colon + 1, x), q = int_after(x + 1, spec.size());
        if (p < 1 || q < 1) throw bad("rectangle sides must be >= 1");
        return rectangle(static_cast<int>(p), static_cast<int>(q));
    }
    if (family == "delta" || family == "nabla" || family == "tria") {
        long p = int_after(colon + 1, spec.size());
        if (p < 1) throw bad("p must be >= 1");
        if (family == "delta") return triangle_delta(static_cast<int>(p));
        if (family == "nabla") return triangle_nabla(static_cast<int>(p));
        return triangle_right(static_cast<int>(p));
    }
    if (family == "trap") {
        auto comma = spec.find(',', colon + 1);
        if (comma == std::string::npos) throw bad("expected trap:P,S");
        long p = int_after(colon + 1, comma), s = int_after(comma + 1, spec.size());
        if (p <= 1) throw bad("trapezoid needs p > 1");
        return trapezoid(static_cast<int>(p), static_cast<int>(s));
    }
    throw bad("unknown family '" + family + "'");
}

ExtendedPoset::ExtendedPoset(const Poset& base) : base_(&base) {
    const int n = base.size();
    up_.assign(static_cast<std::size_t>(n) + 2, {});
    down_.assign(static_cast<std::size_t>(n) + 2, {});
    for (int v = 0; v < n; ++v) {
        up_[static_cast<std::size_t>(v)] = base.up_covers(v);
        down_[static_cast<std::size_t>(v)] = base.down_covers(v);
        if (base.up_covers(v).empty()) {
            up_[static_cast<std::size_t>(v)].push_back(top());
            down_[static_cast<std::size_t>(top())].push_back(v);
        }
        if (base.down_covers(v).empty()) {
            down_[static_cast<std::size_t>(v)].push_back(bot());
            up_[static_cast<std::size_t>(bot())].push_back(v);
        }
    }
    if (n == 0) {
        up_[static_cast<std::size_t>(bot())].push_back(top());
        down_[static_cast<std::size_t>(top())].push_back(bot());
    }
}

std::string ExtendedPoset::name(int v) const {
    if (v == bot()) return "BOT";
    if (v == top()) return "TOP";
    return base_->name(v);
}

bool ExtendedPoset::leq(int x, int y) const {
    if (x == y) return true;
    if (x == bot() || y == top()) return true;
    if (x == top() || y == bot()) return false;
    return base_->leq(x, y);
}

std::vector<std::pair<int, int>> ExtendedPoset::cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < size(); ++v)
        for (int u : up_[static_cast<std::size_t>(v)]) out.emplace_back(v, u);
    return out;
}

}  // namespace birow
