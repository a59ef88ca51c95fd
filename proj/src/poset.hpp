#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace birow {

/// Finite poset on dense ids 0..n-1 with display names. The cover digraph is
/// always acyclic and transitively reduced; up_covers/down_covers are sorted
/// and mutually transposed.
class Poset {
public:
    Poset() = default;

    int size() const { return n_; }
    const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }
    /// Id of the named element, or -1.
    int index_of(const std::string& name) const;

    const std::vector<int>& up_covers(int v) const { return up_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& down_covers(int v) const { return down_.at(static_cast<std::size_t>(v)); }
    bool leq(int x, int y) const { return leq_.at(static_cast<std::size_t>(x)).at(static_cast<std::size_t>(y)); }
    bool is_cover(int x, int y) const;  // x covered by y
    bool incomparable(int x, int y) const { return !leq(x, y) && !leq(y, x); }

    std::vector<int> minimal_elements() const;
    std::vector<int> maximal_elements() const;

    /// Kahn's algorithm with smallest-name tie-break; deterministic.
    std::vector<int> linear_extension() const;
    /// Backtracking enumeration, lexicographic by name at each step. Stops
    /// after cap extensions and sets *truncated when it does.
    std::vector<std::vector<int>> all_linear_extensions(long cap, bool* truncated = nullptr) const;
    bool is_linear_extension(const std::vector<int>& order) const;

    nlohmann::json to_json() const;
    static Poset from_json(const nlohmann::json& j);
    /// Builds from named cover pairs (x covered by y). The input may contain
    /// transitively implied pairs, which are dropped; cycles and duplicate
    /// names are rejected.
    static Poset from_covers(const std::vector<std::string>& names,
                             const std::vector<std::pair<std::string, std::string>>& covers);
    /// Family specs: rect:PxQ | delta:P | nabla:P | tria:P | trap:P,S | claw.
    static Poset from_spec(const std::string& spec);

private:
    friend Poset poset_from_edges(std::vector<std::string> names,
                                  const std::vector<std::pair<int, int>>& edges);
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> up_, down_;
    std::vector<std::vector<bool>> leq_;
};

/// [p] x [q] with entrywise order; element (i,j) has id (i-1)*q + (j-1) and
/// name "(i,j)". Covers are exactly (i,j) < (i+1,j) and (i,j) < (i,j+1).
Poset rectangle(int p, int q);
int rect_id(int p, int q, int i, int j);

/// Induced subposets of [p] x [p]: delta is {i+k > p+1} (empty when p = 1),
/// nabla is {i+k < p+1}, tria is {i <= k}.
Poset triangle_delta(int p);
Poset triangle_nabla(int p);
Poset triangle_right(int p);

/// {(i,k) in [p] x [p] : i+k > p+1, i <= k, k >= s}; requires p > 1.
Poset trapezoid(int p, int s);

/// One minimum p below pairwise-incomparable maxima q1, q2, q3.
Poset claw();

/// Seeded poset on up to max_n elements: random DAG edges on an id order,
/// transitively reduced. Deterministic in seed.
Poset random_poset(std::uint64_t seed, int max_n);

/// Antipode (p+1-i, q+1-j) of (i,j) in [p] x [q]; an involution.
std::pair<int, int> antipode(int p, int q, std::pair<int, int> x);

/// P with sentinels BOT (id n) and TOP (id n+1) adjoined: BOT is covered by
/// the minimal elements, TOP covers the maximal ones, and BOT is covered by
/// TOP directly when P is empty. Holds a pointer to the base poset, which
/// must outlive the view.
class ExtendedPoset {
public:
    explicit ExtendedPoset(const Poset& base);
    explicit ExtendedPoset(Poset&&) = delete;  // the view must not outlive its base

    const Poset& base() const { return *base_; }
    int size() const { return base_->size() + 2; }
    int bot() const { return base_->size(); }
    int top() const { return base_->size() + 1; }
    bool is_sentinel(int v) const { return v >= base_->size(); }
    std::string name(int v) const;

    const std::vector<int>& up_covers(int v) const { return up_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& down_covers(int v) const { return down_.at(static_cast<std::size_t>(v)); }
    bool leq(int x, int y) const;
    /// All cover pairs (x, y) with x covered by y, in id order.
    std::vector<std::pair<int, int>> cover_pairs() const;

private:
    const Poset* base_;
    std::vector<std::vector<int>> up_, down_;
};

}  // namespace birow
